//! The statistical and structural suites behind `check`: every realization of the group action is
//! compared against the others in exact arithmetic.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Mat3, PPoint, Rat};
use crate::connection::{
    apparent_pair, build_normal_form, chart_transfer, exponent_check, fuchs_sum, normal_form_u0,
    normalize_split_frame, realize_sigma, admissible_gauge, Chart, ConnectionForm,
};
use crate::convolution::mc_pair;
use crate::engine::{apply, ModuliState, Via, Word};
use crate::lattice::{adjacency, node_permutation, sublattice_report, verify_coxeter, Generator, ROOTS};
use crate::params::{
    act_nu, act_word, chi, chi_delta, derive_action_from_chi, Membership, ParamVector, SignConvention,
};
use crate::report::{Report, SuiteReport};
use crate::sampling::{
    nonzero_rational, random_nu, random_nu_w3_stable, random_point, random_w3_point, rational, trial_rng,
};
use crate::surface::{
    base_point, eval_map, on_triangle, phi_generator, point_on_line, unique_anticanonical_cubic, BirationalMap,
    ContractedLine, MPoint, NinePoints, SurfaceError,
};

/// Suite names in report order; `check --suite` accepts these and `all`.
pub const SUITES: [&str; 10] = [
    "coxeter", "params", "points", "cubic", "normal", "theorem", "strong", "exponents", "sigma", "engine",
];

/// An equality between two words in the extended group.
#[derive(Debug, Clone)]
pub struct Relation {
    pub name: String,
    pub lhs: Vec<Generator>,
    pub rhs: Vec<Generator>,
}

/// The defining relations: involutions, braid and commutation pairs, and diagram conjugations.
pub fn presentation() -> Vec<Relation> {
    let adj = adjacency();
    let w = |i: usize| Generator::W(i as u8);
    let rel = |name: String, lhs: Vec<Generator>, rhs: Vec<Generator>| Relation { name, lhs, rhs };
    let mut out = Vec::new();
    for i in 0..7 {
        out.push(rel(format!("w{i}^2"), vec![w(i), w(i)], vec![]));
    }
    for i in 0..7 {
        for j in (i + 1)..7 {
            if adj[i][j] {
                out.push(rel(format!("(w{i} w{j})^3"), [w(i), w(j)].repeat(3), vec![]));
            } else {
                out.push(rel(format!("w{i} w{j} = w{j} w{i}"), vec![w(i), w(j)], vec![w(j), w(i)]));
            }
        }
    }
    for s in [Generator::S1, Generator::S2] {
        out.push(rel(format!("{s}^2"), vec![s, s], vec![]));
        let perm = node_permutation(s).expect("diagram automorphism");
        for (i, &j) in perm.iter().enumerate() {
            out.push(rel(format!("{s} w{i} {s} = w{j}"), vec![s, w(i), s], vec![w(j)]));
        }
    }
    out.push(rel("(s1 s2)^3".into(), [Generator::S1, Generator::S2].repeat(3), vec![]));
    out
}

struct Ctx {
    seed: u64,
    suite: u32,
}

impl Ctx {
    fn rng(&self, trial: u32) -> ChaCha8Rng {
        trial_rng(self.seed, self.suite, trial)
    }
}

fn coxeter_suite() -> SuiteReport {
    let mut s = SuiteReport::new("coxeter", 0);
    let report = verify_coxeter();
    for r in &report.relations {
        s.check(None, &r.relation, r.holds, || "matrix identity fails".into());
    }
    let sub = sublattice_report();
    s.check(None, "root and triangle lattices meet in Z delta", sub.intersection_is_z_delta, || {
        format!("{sub:?}")
    });
    s.notes.push(format!("s1 on nodes: {}", report.sigma1_nodes));
    s.notes.push(format!("s2 on nodes: {}", report.sigma2_nodes));
    s.notes.push(format!(
        "root lattice + triangle lattice has rank {} (intersection rank {})",
        sub.sum_rank, sub.intersection_rank
    ));
    s
}

fn params_suite(ctx: &Ctx, trials: u32) -> SuiteReport {
    let mut s = SuiteReport::new("params", trials);
    let relations = presentation();
    let mut opposite_failures = 0u64;
    for t in 0..trials {
        let mut rng = ctx.rng(t);
        let Some(nu) = random_nu(&mut rng, Membership::None) else {
            s.skipped += 1;
            continue;
        };
        let tr = Some(t);
        for r in &relations {
            let (l, rr) = (act_word(&r.lhs, &nu), act_word(&r.rhs, &nu));
            s.check(tr, &r.name, l == rr, || format!("nu = {nu}: {l} vs {rr}"));
        }
        s.check(tr, "chi(delta) = -1", chi_delta(&nu, SignConvention::Calibrated) == Rat::int(-1), || {
            format!("nu = {nu}")
        });
        for g in Generator::ALL {
            let image = act_nu(g, &nu);
            for i in 0..3 {
                let sum: Rat = image.row(i).iter().sum();
                s.check(tr, &format!("{g} keeps row sum {i}"), sum == ParamVector::row_sum_target(i), || {
                    format!("nu = {nu}, sum {sum}")
                });
            }
            match derive_action_from_chi(g, &nu, SignConvention::Calibrated) {
                Ok(derived) => s.check(tr, &format!("{g} from chi"), derived == image, || {
                    format!("nu = {nu}: chi gives {derived}, table gives {image}")
                }),
                Err(e) => s.fail(tr, &format!("{g} from chi"), e.to_string()),
            }
            // χ(α, gν) = χ(g α, ν) on every simple root, and its failure count under the opposite sign
            let map = g.lattice_map();
            for (i, root) in ROOTS.iter().enumerate() {
                let equivariant = |sign| {
                    let lhs = chi(root, &image, sign);
                    let rhs = chi(&map.apply(root), &nu, sign);
                    matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b)
                };
                s.check(tr, &format!("chi equivariance {g} a{i}"), equivariant(SignConvention::Calibrated), || {
                    format!("nu = {nu}")
                });
                if !equivariant(SignConvention::Opposite) {
                    opposite_failures += 1;
                }
            }
        }
    }
    if trials > 0 {
        s.notes.push(format!(
            "opposite chi sign: {opposite_failures} equivariance failures (expected nonzero; informational)"
        ));
    }
    s
}

fn points_for_generator(s: &mut SuiteReport, t: u32, g: Generator, nu: &ParamVector, rng: &mut ChaCha8Rng) {
    let tr = Some(t);
    let label = |what: &str| format!("{g} {what}");
    let map = match phi_generator(g, nu) {
        Ok(m) => m,
        Err(e) => return s.fail(tr, &label("map"), format!("nu = {nu}: {e}")),
    };
    let target = act_nu(g, nu);
    for i in 1..=9 {
        let Some(j) = g.exceptional_image(i) else { continue };
        let want = base_point(j, &target);
        match eval_map(&map, &base_point(i, nu)) {
            Ok(got) => s.check(tr, &label(&format!("p{i} -> p{j}")), got == want, || {
                format!("nu = {nu}: got {got}, want {want}")
            }),
            Err(e) => s.fail(tr, &label(&format!("p{i} -> p{j}")), format!("nu = {nu}: {e}")),
        }
    }
    if let BirationalMap::Quadratic { data } = &map {
        for (line, k) in [(ContractedLine::F14, 6), (ContractedLine::F16, 4), (ContractedLine::F46, 1)] {
            let want = base_point(k, &target);
            let mut done = false;
            for _ in 0..20 {
                let x = point_on_line(data, line, &rational(rng));
                if on_triangle(&x) {
                    continue;
                }
                match eval_map(&map, &x) {
                    Err(SurfaceError::ContractedToBoundary { target: tk, image, .. }) => {
                        s.check(tr, &label(&format!("{line} contracts to p{k}")), tk == k && image == want, || {
                            format!("nu = {nu}: p{tk} = {image}")
                        });
                        done = true;
                        break;
                    }
                    Err(SurfaceError::IndeterminatePoint { .. }) => continue,
                    other => {
                        s.fail(tr, &label(&format!("{line} contracts to p{k}")), format!("nu = {nu}: {other:?}"));
                        done = true;
                        break;
                    }
                }
            }
            if !done {
                s.skipped += 1;
            }
        }
    }
    // the map at gν undoes the map at ν
    let back = match phi_generator(g, &target) {
        Ok(m) => m,
        Err(e) => return s.fail(tr, &label("inverse map"), e.to_string()),
    };
    let x = random_point(rng);
    if let Ok(y) = eval_map(&map, x.point()) {
        match eval_map(&back, &y) {
            Ok(z) => s.check(tr, &label("involution"), &z == x.point(), || format!("nu = {nu}, x = {x:?}")),
            Err(_) => s.skipped += 1,
        }
    } else {
        s.skipped += 1;
    }
}

fn points_suite(ctx: &Ctx, trials: u32) -> SuiteReport {
    let mut s = SuiteReport::new("points", trials);
    for t in 0..trials {
        let mut rng = ctx.rng(t);
        let Some(nu) = random_nu(&mut rng, Membership::N0) else {
            s.skipped += 1;
            continue;
        };
        for g in Generator::ALL {
            if g == Generator::W(3) && nu.gamma().is_zero() {
                continue;
            }
            points_for_generator(&mut s, t, g, &nu, &mut rng);
        }
    }
    s
}

fn cubic_suite(ctx: &Ctx, trials: u32) -> SuiteReport {
    let mut s = SuiteReport::new("cubic", trials);
    for t in 0..trials {
        let mut rng = ctx.rng(t);
        let Some(nu) = random_nu(&mut rng, Membership::N) else {
            s.skipped += 1;
            continue;
        };
        match unique_anticanonical_cubic(&NinePoints::from_nu(&nu)) {
            Ok(r) => s.check(Some(t), "unique cubic is the triangle", r.kernel_dim == 1 && r.is_triangle, || {
                format!("nu = {nu}: {r:?}")
            }),
            Err(e) => s.fail(Some(t), "unique cubic is the triangle", format!("nu = {nu}: {e}")),
        }
    }
    s
}

fn normal_suite(ctx: &Ctx, trials: u32) -> SuiteReport {
    let mut s = SuiteReport::new("normal", trials);
    for t in 0..trials {
        let mut rng = ctx.rng(t);
        let Some(nu) = random_nu(&mut rng, Membership::N0) else {
            s.skipped += 1;
            continue;
        };
        let m = random_point(&mut rng);
        let tr = Some(t);
        let ctx_str = || format!("nu = {nu}, (q, p) = {:?}", m.chart1());
        let (u0, uinf) = match build_normal_form(&m, &nu) {
            Ok(pair) => pair,
            Err(e) => {
                s.fail(tr, "normal form", format!("{}: {e}", ctx_str()));
                continue;
            }
        };
        s.check(tr, "(q, p) round trip", apparent_pair(&u0).ok() == Some(m.chart1()), ctx_str);
        let (q, p) = m.chart1();
        let expected2 = (q.recip().expect("q != 0"), &p / &q);
        s.check(tr, "(q', p') = (1/q, p/q)", apparent_pair(&uinf).ok() == Some(expected2.clone()), ctx_str);
        s.check(tr, "chart2 coordinates", m.chart2() == expected2, ctx_str);
        for conn in [&u0, &uinf] {
            let chart = format!("{:?}", conn.chart);
            match exponent_check(conn, nu.rows()) {
                Ok(ok) => s.check(tr, &format!("residue exponents in {chart}"), ok == [true; 3], || {
                    format!("{}: {ok:?}", ctx_str())
                }),
                Err(e) => s.fail(tr, &format!("residue exponents in {chart}"), e.to_string()),
            }
        }
        s.check(tr, "Fuchs sum", fuchs_sum(&nu, -2).is_zero(), ctx_str);
        match chart_transfer(&uinf).and_then(|c| normalize_split_frame(&c.matrix)) {
            Ok(n) => s.check(tr, "transfer then normalize", n.matrix == u0.matrix && (n.q, n.p) == (q, p), ctx_str),
            Err(e) => s.fail(tr, "transfer then normalize", e.to_string()),
        }
        match chart_transfer(&u0).and_then(|c| chart_transfer(&c)) {
            Ok(back) => s.check(tr, "transfer is an involution", back == u0, ctx_str),
            Err(e) => s.fail(tr, "transfer is an involution", e.to_string()),
        }
    }
    s
}

/// A sample for the central reflection: ν and its image in N00, and a point mapped to a point.
fn w3_sample(rng: &mut ChaCha8Rng) -> Option<(ParamVector, MPoint)> {
    let nu = random_nu_w3_stable(rng)?;
    let m = random_w3_point(rng, &nu)?;
    Some((nu, m))
}

/// Runs `body` on each trial with a central-reflection sample; samples whose convolution fails are failures.
fn w3_suite(
    ctx: &Ctx,
    name: &str,
    trials: u32,
    mut body: impl FnMut(&mut SuiteReport, u32, &ParamVector, &MPoint),
) -> SuiteReport {
    let mut s = SuiteReport::new(name, trials);
    for t in 0..trials {
        let mut rng = ctx.rng(t);
        match w3_sample(&mut rng) {
            Some((nu, m)) => body(&mut s, t, &nu, &m),
            None => s.skipped += 1,
        }
    }
    s
}

fn theorem_body(s: &mut SuiteReport, t: u32, nu: &ParamVector, m: &MPoint) {
    let tr = Some(t);
    let (q, p) = m.chart1();
    let ctx_str = || format!("nu = {nu}, (q, p) = ({q}, {p})");
    let r = match mc_pair(&q, &p, nu) {
        Ok(r) => r,
        Err(e) => return s.fail(tr, "mc_pair", format!("{}: {e}", ctx_str())),
    };
    let surface = phi_generator(Generator::W(3), nu).and_then(|map| eval_map(&map, m.point()));
    match surface {
        Ok(image) => s.check(tr, "mc = quadratic map", image == PPoint::affine(r.qbar.clone(), r.pbar.clone()), || {
            format!("{}: mc ({}, {}), surface {image}", ctx_str(), r.qbar, r.pbar)
        }),
        Err(e) => s.fail(tr, "mc = quadratic map", format!("{}: {e}", ctx_str())),
    }
    s.check(tr, "closed form of (qbar, pbar)", r.qbar == r.xi.qbar_closed && r.pbar == r.xi.pbar_closed, ctx_str);
    s.check(tr, "nu image", r.nu_out == act_nu(Generator::W(3), nu), ctx_str);
    match mc_pair(&r.qbar, &r.pbar, &r.nu_out) {
        Ok(back) => s.check(tr, "mc involution", (&back.qbar, &back.pbar, &back.nu_out) == (&q, &p, nu), ctx_str),
        Err(e) => s.fail(tr, "mc involution", format!("{}: {e}", ctx_str())),
    }
}

fn strong_body(s: &mut SuiteReport, t: u32, nu: &ParamVector, m: &MPoint) {
    let tr = Some(t);
    let (q, p) = m.chart1();
    let ctx_str = || format!("nu = {nu}, (q, p) = ({q}, {p})");
    let r = match mc_pair(&q, &p, nu) {
        Ok(r) => r,
        Err(e) => return s.fail(tr, "mc_pair", format!("{}: {e}", ctx_str())),
    };
    s.check(tr, "calibrated slot = alpha_inf", r.gm.calibrated_slot == r.gm.alpha_inf, ctx_str);
    match MPoint::from_chart1(r.qbar.clone(), r.pbar.clone()).and_then(|img| {
        build_normal_form(&img, &r.nu_out).map_err(|_| SurfaceError::BadChart { q: r.qbar.clone() })
    }) {
        Ok((u0, _)) => s.check(tr, "xi frame = normal form", r.xi.matrix == u0.matrix, ctx_str),
        Err(e) => s.fail(tr, "xi frame = normal form", format!("{}: {e}", ctx_str())),
    }
}

fn exponents_body(s: &mut SuiteReport, t: u32, nu: &ParamVector, m: &MPoint) {
    let tr = Some(t);
    let (q, p) = m.chart1();
    let ctx_str = || format!("nu = {nu}, (q, p) = ({q}, {p})");
    let r = match mc_pair(&q, &p, nu) {
        Ok(r) => r,
        Err(e) => return s.fail(tr, "mc_pair", format!("{}: {e}", ctx_str())),
    };
    let pred = &r.gm.prediction;
    s.check(tr, "rank preserved", pred.rank == 3 && pred.delta == 0, ctx_str);
    let table: Option<[[Rat; 3]; 3]> = (pred.exponents.iter().all(|row| row.len() == 3))
        .then(|| std::array::from_fn(|i| std::array::from_fn(|j| pred.exponents[i][j].clone())));
    let Some(table) = table else {
        return s.fail(tr, "prediction shape", ctx_str());
    };
    // the convolved connection before the final twist has degree 1
    let conv = ConnectionForm { chart: Chart::U0, degree: 1, matrix: r.gm.matrix.clone() };
    match exponent_check(&conv, &table) {
        Ok(ok) => s.check(tr, "predicted = residue eigenvalues", ok == [true; 3], || format!("{}: {ok:?}", ctx_str())),
        Err(e) => s.fail(tr, "predicted = residue eigenvalues", e.to_string()),
    }
    // ν_{i,0} - 2γ/3 and ν_{i,j} + γ/3 at the finite points
    let g = nu.gamma();
    for i in 0..2 {
        let want = [
            nu.get(i, 0) - &(&g * &Rat::new(2, 3)),
            nu.get(i, 1) + &(&g * &Rat::new(1, 3)),
            nu.get(i, 2) + &(&g * &Rat::new(1, 3)),
        ];
        s.check(tr, &format!("table row {i}"), table[i] == want, ctx_str);
    }
    s.check(tr, "twisted exponents = w3(nu)", &r.exponents_out == r.nu_out.rows(), ctx_str);
    let out = ConnectionForm { chart: Chart::U0, degree: -2, matrix: r.xi.matrix.clone() };
    match exponent_check(&out, r.nu_out.rows()) {
        Ok(ok) => s.check(tr, "output residues", ok == [true; 3], ctx_str),
        Err(e) => s.fail(tr, "output residues", e.to_string()),
    }
}

fn random_gauge(rng: &mut ChaCha8Rng) -> Mat3 {
    loop {
        let phi = [[rational(rng), rational(rng)], [rational(rng), rational(rng)]];
        let c = [[rational(rng), rational(rng)], [rational(rng), rational(rng)]];
        if let Some(g) = admissible_gauge(nonzero_rational(rng), phi, c) {
            return g;
        }
    }
}

fn sigma_suite(ctx: &Ctx, trials: u32) -> SuiteReport {
    let mut s = SuiteReport::new("sigma", trials);
    for t in 0..trials {
        let mut rng = ctx.rng(t);
        let Some(nu) = random_nu(&mut rng, Membership::N0) else {
            s.skipped += 1;
            continue;
        };
        let m = random_point(&mut rng);
        let (q, p) = m.chart1();
        let tr = Some(t);
        let ctx_str = || format!("nu = {nu}, (q, p) = ({q}, {p})");
        let conn = match build_normal_form(&m, &nu) {
            Ok((u0, _)) => u0,
            Err(e) => {
                s.fail(tr, "normal form", e.to_string());
                continue;
            }
        };
        match realize_sigma(Generator::S1, &conn, &nu) {
            Ok((n, nu1)) => {
                let want = (Rat::one() - &q, -&p);
                s.check(tr, "s1 gives (1 - q, -p)", (n.q.clone(), n.p.clone()) == want, ctx_str);
                let nf = normal_form_u0(&want.0, &want.1, &nu1);
                s.check(tr, "s1 normal form", nf.as_ref() == Ok(&n.matrix), ctx_str);
            }
            Err(e) => s.fail(tr, "s1 realization", e.to_string()),
        }
        let surface = phi_generator(Generator::S2, &nu)
            .and_then(|map| eval_map(&map, m.point()))
            .and_then(MPoint::new);
        match (realize_sigma(Generator::S2, &conn, &nu), surface) {
            (Ok((n, nu2)), Ok(img)) => {
                s.check(tr, "s2 matches its plane map", (n.q.clone(), n.p.clone()) == img.chart1(), ctx_str);
                let nf = normal_form_u0(&n.q, &n.p, &nu2);
                s.check(tr, "s2 normal form", nf.as_ref() == Ok(&n.matrix), ctx_str);
            }
            (Err(e), _) => s.fail(tr, "s2 realization", e.to_string()),
            (_, Err(e)) => s.fail(tr, "s2 plane map", e.to_string()),
        }
        let g = random_gauge(&mut rng);
        match conn.matrix.gauge(&g).map_err(|e| e.to_string()).and_then(|moved| {
            normalize_split_frame(&moved).map_err(|e| e.to_string())
        }) {
            Ok(n) => s.check(tr, "gauge round trip", n.matrix == conn.matrix && (n.q, n.p) == (q.clone(), p.clone()), ctx_str),
            Err(e) => s.fail(tr, "gauge round trip", e),
        }
    }
    s
}

fn random_word_with_w3(rng: &mut ChaCha8Rng) -> Word {
    let len = rng.gen_range(1..=5);
    let mut tokens: Vec<Generator> = (0..len).map(|_| *Generator::ALL.choose(rng).expect("nonempty")).collect();
    if !tokens.contains(&Generator::W(3)) {
        let at = rng.gen_range(0..=tokens.len());
        tokens.insert(at, Generator::W(3));
    }
    Word(tokens)
}

fn engine_suite(ctx: &Ctx, trials: u32) -> SuiteReport {
    let mut s = SuiteReport::new("engine", trials);
    let relations: Vec<Relation> = presentation()
        .into_iter()
        .filter(|r| r.lhs.contains(&Generator::W(3)) || r.lhs.contains(&Generator::S1) || r.lhs.contains(&Generator::S2))
        .collect();
    let mut undefined = 0u64;
    for t in 0..trials {
        let mut rng = ctx.rng(t);
        let Some((nu, point)) = w3_sample(&mut rng) else {
            s.skipped += 1;
            continue;
        };
        let tr = Some(t);
        let state = ModuliState { nu, point };
        let word = random_word_with_w3(&mut rng);
        match (apply(&word, &state, Via::Surface), apply(&word, &state, Via::Mc)) {
            (Ok(a), Ok(b)) => s.check(tr, "surface = mc", a == b, || format!("word {word}, state {state:?}")),
            _ => undefined += 1,
        }
        for r in &relations {
            let (l, rr) = (Word(r.lhs.clone()), Word(r.rhs.clone()));
            match (apply(&l, &state, Via::Surface), apply(&rr, &state, Via::Surface)) {
                (Ok(a), Ok(b)) => s.check(tr, &r.name, a == b, || format!("state {state:?}")),
                _ => s.skipped += 1,
            }
        }
    }
    if trials > 0 {
        s.notes.push(format!("{undefined} random words left the domain of one path"));
    }
    s
}

/// Runs one suite by name; `None` for an unknown name.
pub fn run_suite(name: &str, trials: u32, seed: u64) -> Option<SuiteReport> {
    let index = SUITES.iter().position(|&n| n == name)? as u32;
    let ctx = Ctx { seed, suite: index };
    Some(match name {
        "coxeter" => coxeter_suite(),
        "params" => params_suite(&ctx, trials),
        "points" => points_suite(&ctx, trials),
        "cubic" => cubic_suite(&ctx, trials),
        "normal" => normal_suite(&ctx, trials),
        "theorem" => w3_suite(&ctx, "theorem", trials, theorem_body),
        "strong" => w3_suite(&ctx, "strong", trials, strong_body),
        "exponents" => w3_suite(&ctx, "exponents", trials, exponents_body),
        "sigma" => sigma_suite(&ctx, trials),
        "engine" => engine_suite(&ctx, trials),
        _ => unreachable!("listed in SUITES"),
    })
}

/// The named suites, in report order.
pub fn verify(names: &[&str], trials: u32, seed: u64) -> Option<Report> {
    let suites = names
        .iter()
        .map(|n| run_suite(n, trials, seed))
        .collect::<Option<Vec<_>>>()?;
    Some(Report::new(seed, trials, suites))
}

pub fn verify_all(trials: u32, seed: u64) -> Report {
    verify(&SUITES, trials, seed).expect("known suites")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_size() {
        // 7 involutions, 21 pairs, 2 × (1 + 7) diagram relations, one for s1 s2
        assert_eq!(presentation().len(), 7 + 21 + 16 + 1);
        assert_eq!(crate::lattice::delta(), ROOTS.iter().zip(crate::lattice::MARKS).fold(
            crate::lattice::PicClass::zero(),
            |acc, (r, m)| acc + m * *r,
        ));
    }

    #[test]
    fn zero_trials_keeps_structural_checks() {
        let r = verify_all(0, 0);
        assert!(r.all_pass, "{r:#?}");
        assert!(r.suite("coxeter").unwrap().checks > 0);
        assert_eq!(r.suite("theorem").unwrap().checks, 0);
    }

    #[test]
    fn every_suite_passes_on_a_few_trials() {
        let r = verify_all(3, 11);
        for s in &r.suites {
            assert!(s.passed(), "{s:#?}");
        }
        assert_eq!(r, verify_all(3, 11));
    }
}
