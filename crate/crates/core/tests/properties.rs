use a2wc::algebra::{interpolate_quadratic, Mat3, PPoint, Poly, Rat};
use a2wc::connection::{admissible_gauge, chart_transfer, normal_form_u0, normalize_split_frame, Chart, ConnectionForm};
use a2wc::convolution::mc_pair;
use a2wc::lattice::{word_map, Generator, PicClass, ROOTS};
use a2wc::params::{act_nu, act_word, Membership, ParamVector};
use a2wc::sampling::w3_admissible;
use a2wc::surface::{eval_map, phi_generator, MPoint};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rat> {
    (-60i64..=60, 1i64..=40).prop_map(|(n, d)| Rat::new(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    rat().prop_filter("nonzero", |r| !r.is_zero())
}

fn nu() -> impl Strategy<Value = ParamVector> {
    prop::array::uniform3(prop::array::uniform2(rat())).prop_map(ParamVector::from_free)
}

fn nu_in(min: Membership) -> impl Strategy<Value = ParamVector> {
    nu().prop_filter("membership", move |v| v.membership() >= min)
}

fn generator() -> impl Strategy<Value = Generator> {
    prop::sample::select(Generator::ALL.to_vec())
}

fn class() -> impl Strategy<Value = PicClass> {
    prop::array::uniform10(-5i64..=5).prop_map(PicClass)
}

proptest! {
    #[test]
    fn rational_field_identities(a in rat(), b in rat(), c in nonzero_rat()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&(&a / &c) * &c), &a);
        prop_assert_eq!(&a - &a, Rat::zero());
        prop_assert_eq!(a.to_string().parse::<Rat>().unwrap(), a);
    }

    #[test]
    fn quadratic_interpolation(v0 in rat(), v1 in rat(), lead in rat()) {
        let p = interpolate_quadratic(&v0, &v1, &lead);
        prop_assert_eq!(p.eval(&Rat::zero()), v0);
        prop_assert_eq!(p.eval(&Rat::one()), v1);
        prop_assert_eq!(p.coeff(2), lead);
    }

    #[test]
    fn polynomial_division(a in prop::collection::vec(rat(), 0..6), b in prop::collection::vec(rat(), 1..4)) {
        let (a, b) = (Poly::from_coeffs(a), Poly::from_coeffs(b));
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn projective_points_ignore_scale(x in prop::array::uniform3(rat()), s in nonzero_rat()) {
        prop_assume!(x.iter().any(|c| !c.is_zero()));
        let p = PPoint::from_array(x.clone()).unwrap();
        let scaled = PPoint::from_array(x.map(|c| &c * &s)).unwrap();
        prop_assert_eq!(p, scaled);
    }

    #[test]
    fn words_are_isometries_fixing_delta(word in prop::collection::vec(generator(), 0..8), d in class()) {
        let m = word_map(&word);
        prop_assert!(m.is_isometry());
        let delta = ROOTS.iter().zip(a2wc::lattice::MARKS).fold(PicClass::zero(), |acc, (r, k)| acc + k * *r);
        prop_assert_eq!(m.apply(&delta), delta);
        prop_assert_eq!(
            a2wc::lattice::intersect(&m.apply(&d), &m.apply(&delta)),
            a2wc::lattice::intersect(&d, &delta)
        );
    }

    #[test]
    fn parameter_action_is_an_involution(v in nu(), g in generator()) {
        prop_assert_eq!(act_nu(g, &act_nu(g, &v)), v.clone());
        let image = act_nu(g, &v);
        prop_assert_eq!(image.membership() >= Membership::N, v.membership() >= Membership::N);
    }

    #[test]
    fn word_action_matches_lattice_order(word in prop::collection::vec(generator(), 1..6), v in nu()) {
        // a word acting trivially on the lattice acts trivially on ν
        let mut doubled = word.clone();
        doubled.extend(word.iter().rev());
        prop_assert!(word_map(&doubled).is_identity());
        prop_assert_eq!(act_word(&doubled, &v), v);
    }

    #[test]
    fn plane_maps_undo_themselves(v in nu_in(Membership::N0), q in rat(), p in rat(), g in generator()) {
        prop_assume!(g != Generator::W(3) || !v.gamma().is_zero());
        let Ok(m) = MPoint::from_chart1(q, p) else { return Ok(()) };
        let forth = phi_generator(g, &v).unwrap();
        let back = phi_generator(g, &act_nu(g, &v)).unwrap();
        if let Ok(y) = eval_map(&forth, m.point()) {
            if let Ok(z) = eval_map(&back, &y) {
                prop_assert_eq!(&z, m.point());
            }
        }
    }

    #[test]
    fn gauge_round_trip(
        v in nu_in(Membership::N0),
        q in rat(),
        p in rat(),
        u in nonzero_rat(),
        phi in prop::array::uniform2(prop::array::uniform2(rat())),
        c in prop::array::uniform2(prop::array::uniform2(rat())),
    ) {
        prop_assume!(!q.is_zero() && !q.is_one());
        let Some(g) = admissible_gauge(u, phi, c) else { return Ok(()) };
        let a = normal_form_u0(&q, &p, &v).unwrap();
        let n = normalize_split_frame(&a.gauge(&g).unwrap()).unwrap();
        prop_assert_eq!(n.matrix, a);
        prop_assert_eq!((n.q, n.p), (q, p));
    }

    #[test]
    fn chart_transfer_is_an_involution(v in nu_in(Membership::N0), q in rat(), p in rat()) {
        prop_assume!(!q.is_zero() && !q.is_one());
        let conn = ConnectionForm { chart: Chart::U0, degree: -2, matrix: normal_form_u0(&q, &p, &v).unwrap() };
        let there = chart_transfer(&conn).unwrap();
        prop_assert_eq!(chart_transfer(&there).unwrap(), conn);
    }

    #[test]
    fn gauge_by_identity_is_trivial(v in nu(), q in rat(), p in rat()) {
        prop_assume!(!q.is_zero() && !q.is_one());
        let a = normal_form_u0(&q, &p, &v).unwrap();
        prop_assert_eq!(a.gauge(&Mat3::identity()).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn convolution_is_an_involution(v in nu_in(Membership::N00), q in rat(), p in rat()) {
        prop_assume!(act_nu(Generator::W(3), &v).membership() == Membership::N00);
        let Ok(m) = MPoint::from_chart1(q.clone(), p.clone()) else { return Ok(()) };
        prop_assume!(w3_admissible(&v, m.point()));
        let r = mc_pair(&q, &p, &v).unwrap();
        let back = mc_pair(&r.qbar, &r.pbar, &r.nu_out).unwrap();
        prop_assert_eq!((back.qbar, back.pbar, back.nu_out), (q, p, v));
    }
}
