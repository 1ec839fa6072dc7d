//! Rank-3 logarithmic connections `d + A(z) dz/(z(z-1))` in split frames, their normal forms and residues.

use serde::{Deserialize, Serialize};

use crate::algebra::{
    char_poly_matches, interpolate_quadratic, residue_of_form, AlgebraError, FinitePole, Mat3,
    Poly, Rat, RatMat3, RatMatrix,
};
use crate::lattice::Generator;
use crate::params::{act_nu, ParamVector};
use crate::surface::MPoint;

/// Which affine chart of the base `P^1` the matrix is written in: `z` or `w = 1/z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    U0,
    Uinf,
}

/// `∇ = d + A dz/(z(z-1))` on `O(k) ⊕ O(k-1) ⊕ O(k-1)` with `3k - 2 = degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionForm {
    pub chart: Chart,
    pub degree: i64,
    pub matrix: Mat3,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum ConnectionError {
    #[error("entry ({row}, {col}) breaks the normal shape: {reason}")]
    ShapeMismatch { row: usize, col: usize, reason: String },
    #[error("no admissible gauge reaches the normal shape: {reason}")]
    NoGauge { reason: String },
    #[error("the pole at infinity is not logarithmic in this frame")]
    NotLogarithmic,
    #[error("apparent coordinate {q} is 0 or 1, outside this chart")]
    ChartUnavailable { q: Rat },
    #[error("degree {degree} does not split as O(k) + O(k-1) + O(k-1)")]
    SplittingUndefined { degree: i64 },
}

impl From<AlgebraError> for ConnectionError {
    fn from(e: AlgebraError) -> Self {
        ConnectionError::NoGauge {
            reason: e.to_string(),
        }
    }
}

/// The three poles, named by their `z` value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pole {
    Zero,
    One,
    Infinity,
}

impl Pole {
    pub const ALL: [Pole; 3] = [Pole::Zero, Pole::One, Pole::Infinity];

    /// Row of ν holding the exponents at this pole.
    pub fn row(self) -> usize {
        match self {
            Pole::Zero => 0,
            Pole::One => 1,
            Pole::Infinity => 2,
        }
    }
}

fn e2(v: &[Rat; 3]) -> Rat {
    &v[0] * &v[1] + &v[1] * &v[2] + &v[2] * &v[0]
}

fn prod_shifted(v: &[Rat; 3], shift: &Rat, sign: i64) -> Rat {
    let s = Rat::int(sign);
    v.iter().map(|x| shift + &(&s * x)).product()
}

/// `z(z-1)`.
fn zz1() -> Poly {
    Poly::from_coeffs(vec![Rat::zero(), Rat::int(-1), Rat::one()])
}

/// The splitting type `(k, k-1, k-1)` of a bundle of the given degree.
pub fn splitting(degree: i64) -> Result<[i64; 3], ConnectionError> {
    if (degree + 2).rem_euclid(3) != 0 {
        return Err(ConnectionError::SplittingUndefined { degree });
    }
    let k = (degree + 2).div_euclid(3);
    Ok([k, k - 1, k - 1])
}

/// The normal form on `U0` at `(q, p)`.
pub fn normal_form_u0(q: &Rat, p: &Rat, nu: &ParamVector) -> Result<Mat3, ConnectionError> {
    if q.is_zero() || q.is_one() {
        return Err(ConnectionError::ChartUnavailable { q: q.clone() });
    }
    let (n0, n1, ni) = (nu.row(0), nu.row(1), nu.row(2));
    let p2 = p * p;
    let a12 = interpolate_quadratic(&(-&p2 - e2(n0)), &(-&p2 - e2(n1)), &(Rat::one() - e2(ni)));
    let a13 = interpolate_quadratic(
        &(prod_shifted(n0, p, 1) / q),
        &(prod_shifted(n1, p, -1) / &(q - &Rat::one())),
        &prod_shifted(ni, &Rat::one(), -1),
    );
    let c = |x: Rat| Poly::constant(x);
    Ok(Mat3([
        [Poly::zero(), a12, a13],
        [c(Rat::one()), c(-p), Poly::zero()],
        [Poly::zero(), Poly::linear(Rat::one(), -q), c(p.clone())],
    ]))
}

/// The normal form on `U∞` at `(q', p')`, in the variable `w = 1/z`.
pub fn normal_form_uinf(q2: &Rat, p2: &Rat, nu: &ParamVector) -> Result<Mat3, ConnectionError> {
    if q2.is_zero() || q2.is_one() {
        return Err(ConnectionError::ChartUnavailable { q: q2.clone() });
    }
    let (n0, n1, ni) = (nu.row(0), nu.row(1), nu.row(2));
    let pp = p2 * p2;
    let b12 = interpolate_quadratic(&(Rat::one() - &pp - e2(ni)), &(-&pp - e2(n1)), &(-e2(n0)));
    let b13 = interpolate_quadratic(
        &(prod_shifted(ni, &(p2 - &Rat::one()), 1) / q2),
        &(prod_shifted(n1, p2, -1) / &(q2 - &Rat::one())),
        // with the other sign the two charts are not gauge equivalent
        &(-(n0.iter().product::<Rat>())),
    );
    let one = Rat::one();
    Ok(Mat3([
        [Poly::zero(), b12, b13],
        [Poly::constant(one.clone()), Poly::linear(one.clone(), -&one - p2), Poly::zero()],
        [Poly::zero(), Poly::linear(one.clone(), -q2), Poly::linear(one.clone(), p2 - &one)],
    ]))
}

/// Both chart normal forms of the connection attached to `point`.
pub fn build_normal_form(
    point: &MPoint,
    nu: &ParamVector,
) -> Result<(ConnectionForm, ConnectionForm), ConnectionError> {
    let (q, p) = point.chart1();
    let (q2, p2) = point.chart2();
    Ok((
        ConnectionForm {
            chart: Chart::U0,
            degree: -2,
            matrix: normal_form_u0(&q, &p, nu)?,
        },
        ConnectionForm {
            chart: Chart::Uinf,
            degree: -2,
            matrix: normal_form_uinf(&q2, &p2, nu)?,
        },
    ))
}

fn shape_err(row: usize, col: usize, reason: &str) -> ConnectionError {
    ConnectionError::ShapeMismatch {
        row: row + 1,
        col: col + 1,
        reason: reason.to_string(),
    }
}

/// Reads `(q, p)` off a matrix in normal shape; in the `U∞` chart this is `(q', p')`.
pub fn apparent_pair(conn: &ConnectionForm) -> Result<(Rat, Rat), ConnectionError> {
    let a = &conn.matrix;
    // U∞ carries an extra (w - 1) on the lower diagonal
    let diag_shift = match conn.chart {
        Chart::U0 => Poly::zero(),
        Chart::Uinf => Poly::linear(Rat::one(), Rat::int(-1)),
    };
    if !a[(0, 0)].is_zero() {
        return Err(shape_err(0, 0, "must be 0"));
    }
    if a[(1, 0)] != Poly::one() {
        return Err(shape_err(1, 0, "must be 1"));
    }
    if !a[(2, 0)].is_zero() {
        return Err(shape_err(2, 0, "must be 0"));
    }
    if !a[(1, 2)].is_zero() {
        return Err(shape_err(1, 2, "must be 0"));
    }
    let e32 = &a[(2, 1)];
    if e32.degree() != Some(1) || !e32.leading().is_one() {
        return Err(shape_err(2, 1, "must be monic linear"));
    }
    let q = -e32.coeff(0);
    let d22 = &a[(1, 1)] - &diag_shift;
    let d33 = &a[(2, 2)] - &diag_shift;
    let p = d33
        .as_constant()
        .ok_or_else(|| shape_err(2, 2, "must be constant up to the chart shift"))?;
    if d22 != Poly::constant(-&p) {
        return Err(shape_err(1, 1, "must be the negative of entry (3, 3)"));
    }
    for j in 1..3 {
        if a[(0, j)].degree().is_some_and(|d| d > 2) {
            return Err(shape_err(0, j, "must have degree at most 2"));
        }
    }
    Ok((q, p))
}

/// Rewrites the connection in the other chart: twist by the splitting, then `w A~(1/w)`.
///
/// The same formula maps back, so this is an involution.
pub fn chart_transfer(conn: &ConnectionForm) -> Result<ConnectionForm, ConnectionError> {
    let d = splitting(conn.degree)?;
    let mut out = Mat3::zero();
    for i in 0..3 {
        for j in 0..3 {
            let s = d[j] - d[i];
            let p = &conn.matrix[(i, j)];
            // w^{1-s} P(1/w) = Σ c_k w^{1-s-k}
            let mut coeffs = Vec::new();
            for (k, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let e = 1 - s - k as i64;
                if e < 0 {
                    return Err(ConnectionError::NotLogarithmic);
                }
                let e = e as usize;
                if coeffs.len() <= e {
                    coeffs.resize(e + 1, Rat::zero());
                }
                coeffs[e] += c;
            }
            let mut entry = Poly::from_coeffs(coeffs);
            if i == j && d[i] != 0 {
                let di = Rat::int(d[i]);
                entry = &entry + &Poly::linear(-&di, di);
            }
            out[(i, j)] = entry;
        }
    }
    Ok(ConnectionForm {
        chart: match conn.chart {
            Chart::U0 => Chart::Uinf,
            Chart::Uinf => Chart::U0,
        },
        degree: conn.degree,
        matrix: out,
    })
}

/// Residue at the far pole of the chart (`z = ∞` for `U0`), for a frame with splitting `d`.
pub fn residue_at_far_pole(a: &Mat3, d: [i64; 3]) -> Result<RatMat3, ConnectionError> {
    // minus the z^1 coefficient of z^{d_j - d_i} A_ij + δ_ij d_i (z - 1), after checking nothing higher survives
    let mut r = RatMat3::zero();
    for i in 0..3 {
        for j in 0..3 {
            let s = d[j] - d[i];
            let p = &a[(i, j)];
            if let Some(deg) = p.degree() {
                if deg as i64 + s > 1 {
                    return Err(ConnectionError::NotLogarithmic);
                }
            }
            let k = 1 - s;
            let mut c = if k >= 0 { p.coeff(k as usize) } else { Rat::zero() };
            if i == j {
                c += &Rat::int(d[i]);
            }
            r[(i, j)] = -c;
        }
    }
    Ok(r)
}

/// Residue at a pole, named by its `z` value, whatever the chart.
pub fn residue(conn: &ConnectionForm, pole: Pole) -> Result<RatMat3, ConnectionError> {
    let a = &conn.matrix;
    let d = splitting(conn.degree)?;
    Ok(match (conn.chart, pole) {
        (Chart::U0, Pole::Zero) | (Chart::Uinf, Pole::Infinity) => {
            residue_of_form(a, FinitePole::Zero)
        }
        (_, Pole::One) => residue_of_form(a, FinitePole::One),
        (Chart::U0, Pole::Infinity) | (Chart::Uinf, Pole::Zero) => residue_at_far_pole(a, d)?,
    })
}

/// Whether each residue has characteristic polynomial `∏(t - e)` over the given exponent row.
pub fn exponent_check(
    conn: &ConnectionForm,
    exponents: &[[Rat; 3]; 3],
) -> Result<[bool; 3], ConnectionError> {
    let mut out = [false; 3];
    for pole in Pole::ALL {
        out[pole.row()] = char_poly_matches(&residue(conn, pole)?, &exponents[pole.row()]);
    }
    Ok(out)
}

/// `Σ ν + degree`.
pub fn fuchs_sum(nu: &ParamVector, degree: i64) -> Rat {
    nu.rows().iter().flatten().sum::<Rat>() + Rat::int(degree)
}

/// `Σ exponents + degree` for a raw exponent table.
pub fn fuchs_sum_raw(exponents: &[[Rat; 3]; 3], degree: i64) -> Rat {
    exponents.iter().flatten().sum::<Rat>() + Rat::int(degree)
}

/// Result of bringing a split-frame connection to normal shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Normalized {
    pub gauge: Mat3,
    pub matrix: Mat3,
    pub q: Rat,
    pub p: Rat,
}

fn lower(v: &[Poly; 3]) -> [Poly; 2] {
    [v[1].clone(), v[2].clone()]
}

/// `A v + z(z-1) v'`.
fn covariant(a: &Mat3, v: &[Poly; 3]) -> [Poly; 3] {
    let av = a.mul_vec(v);
    let zz = zz1();
    std::array::from_fn(|i| &av[i] + &(&zz * &v[i].derivative()))
}

/// Gauge on `O ⊕ O(-1) ⊕ O(-1)` to the normal shape, by building the filtration frame `(e1, ∇e1, g3)`.
pub fn normalize_split_frame(a: &Mat3) -> Result<Normalized, ConnectionError> {
    let no = |reason: &str| ConnectionError::NoGauge {
        reason: reason.to_string(),
    };
    let g1: [Poly; 3] = [Poly::one(), Poly::zero(), Poly::zero()];
    let g2 = a.column(0);
    if !g2[1].is_constant() || !g2[2].is_constant() {
        return Err(no("first column must have a constant lower block"));
    }
    if g2[0].degree().is_some_and(|d| d > 1) {
        return Err(no("first column must have a linear top entry"));
    }
    let r2 = covariant(a, &g2);
    let low = lower(&r2);
    if low.iter().any(|p| p.degree().is_some_and(|d| d > 1)) {
        return Err(no("the induced map O(-1) -> O(-1)^2 is not linear"));
    }
    let c = [low[0].coeff(1), low[1].coeff(1)];
    let c0 = [low[0].coeff(0), low[1].coeff(0)];
    let g2low = [g2[1].coeff(0), g2[2].coeff(0)];
    // c0 + p g2low + q c = 0
    let m = RatMatrix::from_rows(vec![
        vec![c[0].clone(), g2low[0].clone()],
        vec![c[1].clone(), g2low[1].clone()],
    ]);
    let qp = m
        .solve_unique(&[-&c0[0], -&c0[1]])
        .ok_or_else(|| no("apparent pair is not determined"))?;
    let (q, p) = (qp[0].clone(), qp[1].clone());

    // g3 = (f0 + f1 z, c); lower rows of ∇g3 - p g3 vanish identically
    let basis = |f: [Rat; 2]| -> [Poly; 3] {
        [
            Poly::linear(f[1].clone(), f[0].clone()),
            Poly::constant(c[0].clone()),
            Poly::constant(c[1].clone()),
        ]
    };
    let residual = |v: &[Poly; 3]| -> [Poly; 2] {
        let r = covariant(a, v);
        [&r[1] - &v[1].scale(&p), &r[2] - &v[2].scale(&p)]
    };
    let base = residual(&basis([Rat::zero(), Rat::zero()]));
    let d0 = residual(&basis([Rat::one(), Rat::zero()]));
    let d1 = residual(&basis([Rat::zero(), Rat::one()]));
    let max_deg = base
        .iter()
        .chain(&d0)
        .chain(&d1)
        .filter_map(Poly::degree)
        .max()
        .unwrap_or(0);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for k in 0..2 {
        let e0 = &d0[k] - &base[k];
        let e1 = &d1[k] - &base[k];
        for deg in 0..=max_deg {
            rows.push(vec![e0.coeff(deg), e1.coeff(deg)]);
            rhs.push(-base[k].coeff(deg));
        }
    }
    let f = RatMatrix::from_rows(rows)
        .solve(&rhs)
        .ok_or_else(|| no("third frame vector does not exist"))?
        .0;
    let g3 = basis([f[0].clone(), f[1].clone()]);
    let gauge = Mat3::from_columns([g1, g2, g3]);
    let matrix = a.gauge(&gauge)?;
    let probe = ConnectionForm {
        chart: Chart::U0,
        degree: -2,
        matrix: matrix.clone(),
    };
    let (q2, p2) = apparent_pair(&probe)?;
    if q2 != q || p2 != p {
        return Err(no("normalized matrix disagrees with the solved pair"));
    }
    Ok(Normalized { gauge, matrix, q, p })
}

/// The connection-level realization of a diagram automorphism, returned in normal form with its new ν.
pub fn realize_sigma(
    which: Generator,
    conn: &ConnectionForm,
    nu: &ParamVector,
) -> Result<(Normalized, ParamVector), ConnectionError> {
    let new_nu = act_nu(which, nu);
    let a = &conn.matrix;
    let pulled = match which {
        Generator::S1 => {
            // z ↦ 1 - z flips the sign of dz/(z(z-1)); diag(-1, 1, 1) restores the frame
            let flipped = -&a.compose_affine(&Rat::int(-1), &Rat::one());
            let d = Mat3::from(RatMat3::diag([Rat::int(-1), Rat::one(), Rat::one()]));
            &(&d * &flipped) * &d
        }
        Generator::S2 => {
            let moved = chart_transfer(conn)?.matrix;
            // tensor with d - (2/3) dz/z, which reads -(2/3)(w - 1) dw/(w(w-1)) in the new variable
            let twist = Poly::linear(Rat::new(-2, 3), Rat::new(2, 3));
            &moved + &Mat3::identity().scale_poly(&twist)
        }
        Generator::W(_) => panic!("realize_sigma takes s1 or s2"),
    };
    Ok((normalize_split_frame(&pulled)?, new_nu))
}

/// An admissible gauge `[[u, φ1, φ2], [0, C]]` with linear `φ` and constant invertible `C`.
pub fn admissible_gauge(u: Rat, phi: [[Rat; 2]; 2], c: [[Rat; 2]; 2]) -> Option<Mat3> {
    if u.is_zero() || (&c[0][0] * &c[1][1] - &c[0][1] * &c[1][0]).is_zero() {
        return None;
    }
    let k = |x: &Rat| Poly::constant(x.clone());
    Some(Mat3([
        [
            k(&u),
            Poly::linear(phi[0][1].clone(), phi[0][0].clone()),
            Poly::linear(phi[1][1].clone(), phi[1][0].clone()),
        ],
        [Poly::zero(), k(&c[0][0]), k(&c[0][1])],
        [Poly::zero(), k(&c[1][0]), k(&c[1][1])],
    ]))
}
