use a2wc::algebra::Rat;
use a2wc::engine::{apply, orbit, ModuliState, Via, Word};
use a2wc::lattice::{word_map, Generator};
use a2wc::params::{act_nu, ParamVector};
use a2wc::sampling::{random_nu_w3_stable, random_w3_point, trial_rng};
use a2wc::surface::MPoint;

fn state(q: i64, p: i64) -> ModuliState {
    ModuliState {
        nu: ParamVector::generic_fixture(),
        point: MPoint::from_chart1(Rat::int(q), Rat::int(p)).unwrap(),
    }
}

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

#[test]
fn w1_relabels_exponents_only() {
    let s = state(2, 3);
    let out = apply(&word("w1"), &s, Via::Surface).unwrap();
    assert_eq!(out.point, s.point);
    assert_eq!(out.nu.get(1, 1), s.nu.get(1, 2));
    assert_eq!(out.nu.get(1, 2), s.nu.get(1, 1));
}

#[test]
fn two_paths_agree_on_random_states() {
    let mut agreed = 0;
    for trial in 0..100 {
        let mut rng = trial_rng(2024, 0, trial);
        let nu = random_nu_w3_stable(&mut rng).unwrap();
        let point = random_w3_point(&mut rng, &nu).unwrap();
        let s = ModuliState { nu, point };
        let a = apply(&word("w3"), &s, Via::Surface).unwrap();
        let b = apply(&word("w3"), &s, Via::Mc).unwrap();
        assert_eq!(a, b, "trial {trial}");
        agreed += 1;
    }
    assert_eq!(agreed, 100);
}

#[test]
fn mixed_words_agree_between_paths() {
    let s = state(2, 3);
    for w in ["w3 s1", "s2 w3 w1", "w2 w3 w2", "w3 w4 w3 w6"] {
        match (apply(&word(w), &s, Via::Surface), apply(&word(w), &s, Via::Mc)) {
            (Ok(a), Ok(b)) => assert_eq!(a, b, "{w}"),
            (a, b) => assert!(a.is_err() || b.is_err(), "{w}"),
        }
    }
}

#[test]
fn braid_relation_at_state_level() {
    let s = state(2, 3);
    let lhs = apply(&word("w3 w2 w3"), &s, Via::Surface).unwrap();
    let rhs = apply(&word("w2 w3 w2"), &s, Via::Surface).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn finite_order_words_give_periodic_orbits() {
    let s = state(2, 3);
    let w = word("s1 s2");
    assert!(word_map(&w.0).compose(&word_map(&w.0)).compose(&word_map(&w.0)).is_identity());
    let o = orbit(&w, &s, 6, Via::Surface);
    assert!(o.stopped.is_none());
    assert_eq!(o.states[3], s);
    assert_eq!(o.states[6], s);
    assert_ne!(o.states[1], s);
}

#[test]
fn translation_orbit_is_recorded() {
    // a Coxeter element has infinite order; distinct states are expected but only logged
    let s = state(2, 3);
    let w = word("w0 w1 w2 w3 w4 w5 w6");
    let mut m = word_map(&w.0);
    for _ in 0..6 {
        assert!(!m.is_identity());
        m = m.compose(&word_map(&w.0));
    }
    let o = orbit(&w, &s, 3, Via::Surface);
    assert!(o.states.len() > 1 || o.stopped.is_some());
    for (k, st) in o.states.iter().enumerate() {
        for later in &o.states[k + 1..] {
            if st == later {
                eprintln!("translation orbit revisits a state at step {k}");
            }
        }
    }
}

#[test]
fn failures_stop_the_orbit_with_a_record() {
    // the documentation fixture is only in N0, so the convolution refuses at the first step
    let s = ModuliState { nu: ParamVector::fixture(), ..state(2, 3) };
    let o = orbit(&word("w3"), &s, 4, Via::Mc);
    assert_eq!(o.states.len(), 1);
    let stop = o.stopped.unwrap();
    assert_eq!((stop.step, stop.error.position), (1, 0));
    assert_eq!(stop.error.code, "not_in_n00");
    assert_eq!(act_nu(Generator::W(3), &s.nu).membership(), a2wc::params::Membership::N0);
}
