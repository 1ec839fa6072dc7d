//! The middle convolution realizing the central reflection: β data, exponent prediction,
//! the Gauss–Manin matrix and the ξ frame.

use serde::Serialize;

use crate::algebra::{char_poly_matches, residue_of_form, FinitePole, Mat3, Poly, Rat, RatMat3, RatMatrix};
use crate::connection::{
    normal_form_u0, normalize_split_frame, residue_at_far_pole, splitting, ConnectionError,
};
use crate::lattice::Generator;
use crate::params::{act_nu, Membership, ParamVector};
use crate::surface::QuadMapData;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum ConvolutionError {
    #[error("nu is in {membership}, the convolution needs N00")]
    NotInN00 { membership: Membership },
    #[error("hypothesis violated at point {point}: {condition} (value {value})")]
    HypothesisViolated {
        point: usize,
        condition: String,
        value: Rat,
    },
    #[error("q = {q} must avoid 0 and 1")]
    BadChart { q: Rat },
    #[error("residue constraints do not determine the free slot: {reason}")]
    CalibrationFailed { reason: String },
    #[error("calibrated slot {slot} differs from alpha_inf = {alpha_inf}")]
    SlotMismatch { slot: Rat, alpha_inf: Rat },
    #[error("f14 vanishes at the input; its image is on an exceptional curve")]
    OnContractedLine,
    #[error("image apparent coordinate {qbar} is 0 or 1")]
    BoundaryImage { qbar: Rat },
    #[error(transparent)]
    #[serde(untagged)]
    Connection(#[from] ConnectionError),
}

/// Residues of the twisting form along the horizontal, vertical and exceptional divisors and the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaForm {
    pub h: Vec<Rat>,
    pub v: Vec<Rat>,
    pub u: Vec<Rat>,
    pub t: Rat,
}

impl BetaForm {
    /// `[βT + Σ βH, βT + Σ βV]` and the per-point defects `βU - βH - βV - βT`; all zero when consistent.
    pub fn relation_defects(&self) -> Vec<Rat> {
        let mut out = vec![
            &self.t + &self.h.iter().sum::<Rat>(),
            &self.t + &self.v.iter().sum::<Rat>(),
        ];
        for i in 0..self.h.len() {
            out.push(&self.u[i] - &self.h[i] - &self.v[i] - &self.t);
        }
        out
    }

    pub fn is_consistent(&self) -> bool {
        self.relation_defects().iter().all(Rat::is_zero)
    }
}

/// β for the exponents `μ_{i,j} = ν_{i,j} - δ_{i,∞}` of `E ⊗ O(1)`.
pub fn build_beta(nu: &ParamVector) -> BetaForm {
    let mu = nu.mu();
    let gamma = nu.gamma();
    let shift = &gamma * &Rat::new(2, 3);
    let h: Vec<Rat> = mu.iter().map(|r| -&r[0]).collect();
    let v: Vec<Rat> = mu.iter().map(|r| &r[0] - &shift).collect();
    let u = (0..3).map(|i| &h[i] + &v[i] + &gamma).collect();
    BetaForm { h, v, u, t: gamma }
}

/// Rank and local exponents of the convolved connection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentPrediction {
    pub rank: i64,
    pub delta: i64,
    /// `m_i(-βH_i)` per point.
    pub hits: Vec<usize>,
    pub exponents: Vec<Vec<Rat>>,
}

fn multiplicity(xs: &[Rat], x: &Rat) -> usize {
    xs.iter().filter(|y| *y == x).count()
}

fn violated(point: usize, condition: &str, value: Rat) -> ConvolutionError {
    ConvolutionError::HypothesisViolated {
        point,
        condition: condition.to_string(),
        value,
    }
}

/// Checks the side conditions on the input exponents.
pub fn check_hypotheses(beta: &BetaForm, mu: &[Vec<Rat>]) -> Result<(), ConvolutionError> {
    if beta.t.is_integer() {
        return Err(violated(0, "beta_T must not be an integer", beta.t.clone()));
    }
    for (i, row) in mu.iter().enumerate() {
        for a in row {
            for b in row {
                let d = a - b;
                if !d.is_zero() && d.is_integer() {
                    return Err(violated(i, "exponents differ by a nonzero integer", d));
                }
            }
            let s = a + &beta.h[i] + &beta.t;
            if s.is_integer() {
                return Err(violated(i, "mu + beta_H + beta_T is an integer", s));
            }
            let s = a + &beta.h[i];
            if !s.is_zero() && s.is_integer() {
                return Err(violated(i, "mu + beta_H is a nonzero integer", s));
            }
        }
    }
    Ok(())
}

/// Rank `r + δ` and exponent divisors `(m_i(-βH_i) + δ)[βV_i] + Σ_{μ+βH_i≠0} m_i(μ)[μ + βU_i]`.
pub fn predict_exponents(
    beta: &BetaForm,
    mu: &[Vec<Rat>],
    r: i64,
    n: i64,
) -> Result<ExponentPrediction, ConvolutionError> {
    assert_eq!(mu.len(), n as usize, "one exponent multiset per point");
    check_hypotheses(beta, mu)?;
    let hits: Vec<usize> = mu
        .iter()
        .enumerate()
        .map(|(i, row)| multiplicity(row, &-&beta.h[i]))
        .collect();
    let delta = (n - 2) * r - hits.iter().map(|&m| m as i64).sum::<i64>();
    let mut exponents = Vec::new();
    for (i, row) in mu.iter().enumerate() {
        let mut out = Vec::new();
        let copies = hits[i] as i64 + delta;
        for _ in 0..copies.max(0) {
            out.push(beta.v[i].clone());
        }
        for m in row {
            if !(m + &beta.h[i]).is_zero() {
                out.push(m + &beta.u[i]);
            }
        }
        exponents.push(out);
    }
    Ok(ExponentPrediction {
        rank: r + delta,
        delta,
        hits,
        exponents,
    })
}

fn require_n00(nu: &ParamVector) -> Result<(), ConvolutionError> {
    match nu.membership() {
        Membership::N00 => Ok(()),
        membership => Err(ConvolutionError::NotInN00 { membership }),
    }
}

fn as_triple(v: &[Rat]) -> [Rat; 3] {
    std::array::from_fn(|k| v[k].clone())
}

/// Gauss–Manin data of the convolved connection in the basis `[η7], [η4], [η2]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GMData {
    pub alpha0: Rat,
    pub alpha1: Rat,
    pub alpha_inf: Rat,
    /// Coefficient of the first spanning vector of the image at ∞.
    pub image_first: Rat,
    pub calibrated_slot: Rat,
    pub matrix: Mat3,
    pub prediction: ExponentPrediction,
}

/// Image of `res_∞ ∇_G + βH_∞` written as the span of `(x, 1, 0)` and `(y, 0, 1)`.
fn image_coefficients(m: &RatMat3) -> Result<(Rat, Rat), ConvolutionError> {
    let fail = |reason: &str| ConvolutionError::CalibrationFailed {
        reason: reason.to_string(),
    };
    let mut coeff = Vec::new();
    for target in [1usize, 2] {
        // unknowns (v0, v1, v2, x): M v - x e0 = e_target
        let mut rows = Vec::new();
        for i in 0..3 {
            let mut r: Vec<Rat> = m.0[i].to_vec();
            r.push(if i == 0 { Rat::int(-1) } else { Rat::zero() });
            rows.push(r);
        }
        let rhs: Vec<Rat> = (0..3).map(|i| if i == target { Rat::one() } else { Rat::zero() }).collect();
        let (x, kernel) = RatMatrix::from_rows(rows)
            .solve(&rhs)
            .ok_or_else(|| fail("image at infinity misses a spanning vector"))?;
        if kernel.iter().any(|k| !k[3].is_zero()) {
            return Err(fail("image coefficient at infinity is not unique"));
        }
        coeff.push(x[3].clone());
    }
    Ok((coeff[0].clone(), coeff[1].clone()))
}

/// The Gauss–Manin matrix with the free `(1,3)` slot left as `x`.
fn gm_template(q: &Rat, p: &Rat, nu: &ParamVector, a0: &Rat, a1: &Rat, ainf: &Rat, x: &Rat) -> Mat3 {
    let bt = nu.gamma();
    let (n00, n10) = (nu.get(0, 0), nu.get(1, 0));
    let third = &bt * &Rat::new(1, 3);
    let two_thirds = &bt * &Rat::new(2, 3);
    let zm1 = Poly::linear(Rat::one(), Rat::int(-1));
    let lin = |a: Rat, b: Rat| Poly::linear(a, b);
    let k = |c: Rat| Poly::constant(c);
    let one = Rat::one();
    Mat3([
        [
            lin(&two_thirds - n00 - n10, -p + n00 - &third),
            (&Poly::z() * &(&zm1.scale(ainf) + &k(a1.clone()))).scale(&-&bt),
            (&lin(x.clone(), a0.clone()) * &zm1).scale(&-&bt),
        ],
        [
            k(&(q - &one) / &bt),
            lin(-&third + p + n00, -n00 + &two_thirds),
            zm1.scale(&(p - n10)),
        ],
        [
            k(-q / &bt),
            lin(-(p + n00), Rat::zero()),
            lin(-&third - p + n10, p - &third),
        ],
    ])
}

/// Builds `A(z)` for the convolved connection and calibrates its free slot from the residue at ∞.
pub fn gm_matrix(q: &Rat, p: &Rat, nu: &ParamVector) -> Result<GMData, ConvolutionError> {
    require_n00(nu)?;
    if q.is_zero() || q.is_one() {
        return Err(ConvolutionError::BadChart { q: q.clone() });
    }
    let beta = build_beta(nu);
    let mu: Vec<Vec<Rat>> = nu.mu().iter().map(|r| r.to_vec()).collect();
    let prediction = predict_exponents(&beta, &mu, 3, 3)?;

    let (n0, n1) = (nu.row(0), nu.row(1));
    let alpha0 = &(p + &n0[1]) * &(p + &n0[2]) / q;
    let alpha1 = &(p - &n1[1]) * &(p - &n1[2]) / &(q - &Rat::one());

    // α∞ from the residue at ∞ of ∇_G, whose U0 matrix is the normal form itself
    let g = normal_form_u0(q, p, nu)?;
    let g_split = splitting(1)?;
    let res_g = residue_at_far_pole(&g, g_split)?;
    let shifted = &res_g + &RatMat3::scalar(beta.h[2].clone());
    let (image_first, alpha_inf) = image_coefficients(&shifted)?;

    let fail = |reason: String| ConvolutionError::CalibrationFailed { reason };
    let build = |x: &Rat| gm_template(q, p, nu, &alpha0, &alpha1, &alpha_inf, x);
    let pred: Vec<[Rat; 3]> = prediction.exponents.iter().map(|e| as_triple(e)).collect();

    let probe = build(&Rat::zero());
    if !char_poly_matches(&residue_of_form(&probe, FinitePole::Zero), &pred[0]) {
        return Err(fail("residue at 0 misses the predicted exponents".into()));
    }
    if !char_poly_matches(&residue_of_form(&probe, FinitePole::One), &pred[1]) {
        return Err(fail("residue at 1 misses the predicted exponents".into()));
    }
    // the characteristic polynomial at ∞ is affine in the slot
    let c0 = residue_at_far_pole(&probe, g_split)?.char_poly();
    let c1 = residue_at_far_pole(&build(&Rat::one()), g_split)?.char_poly();
    let e = &pred[2];
    let target = [
        -(&e[0] * &e[1] * &e[2]),
        &e[0] * &e[1] + &e[1] * &e[2] + &e[2] * &e[0],
        -(&e[0] + &e[1] + &e[2]),
    ];
    let mut slot: Option<Rat> = None;
    for k in 0..3 {
        let slope = &c1[k] - &c0[k];
        let gap = &target[k] - &c0[k];
        if slope.is_zero() {
            if !gap.is_zero() {
                return Err(fail(format!("coefficient t^{k} at infinity cannot be matched")));
            }
            continue;
        }
        let x = gap / slope;
        match &slot {
            Some(prev) if *prev != x => {
                return Err(fail("coefficients at infinity disagree on the slot".into()))
            }
            _ => slot = Some(x),
        }
    }
    let slot = slot.ok_or_else(|| fail("slot does not enter the residue at infinity".into()))?;
    if slot != alpha_inf {
        return Err(ConvolutionError::SlotMismatch {
            slot,
            alpha_inf,
        });
    }
    Ok(GMData {
        matrix: build(&slot),
        alpha0,
        alpha1,
        alpha_inf,
        image_first,
        calibrated_slot: slot,
        prediction,
    })
}

/// The convolved connection read in the ξ basis and brought to normal shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XiFrame {
    /// `A(z)` in the basis `[η7], [ξ4], [ξ2]/βT`.
    pub raw: Mat3,
    pub matrix: Mat3,
    pub qbar: Rat,
    pub pbar: Rat,
    /// `q f16 / f14` and `c(q̄)`, computed independently of the gauge.
    pub qbar_closed: Rat,
    pub pbar_closed: Rat,
}

/// `c(z) = (-βT f14 z + (3p - βT) f14 - 3qpβT + 3qβT ν10) / (3 f14)`.
pub fn c_of_z(q: &Rat, p: &Rat, nu: &ParamVector, f14: &Rat) -> Poly {
    let bt = nu.gamma();
    let three = Rat::int(3);
    let denom = &three * f14;
    let slope = -(&bt * f14) / &denom;
    let constant = ((&three * p - &bt) * f14 - &three * q * p * &bt + &three * q * &bt * nu.get(1, 0)) / denom;
    Poly::linear(slope, constant)
}

pub fn xi_frame(gm: &GMData, q: &Rat, p: &Rat, nu: &ParamVector) -> Result<XiFrame, ConvolutionError> {
    let quad = QuadMapData::new(nu);
    let x = [q.clone(), p.clone(), Rat::one()];
    let (f14, f16) = (quad.f14(&x), quad.f16(&x));
    if f14.is_zero() {
        return Err(ConvolutionError::OnContractedLine);
    }
    let bt = nu.gamma();
    let a = &gm.matrix;
    let g1 = [Poly::one(), Poly::zero(), Poly::zero()];
    let g2 = a.column(0);
    let scale = bt.recip().expect("gamma is nonzero on N0");
    let g3 = [
        Poly::zero(),
        Poly::constant(-(p - nu.get(1, 0)) * &scale),
        Poly::constant((p + nu.get(0, 0)) * &scale),
    ];
    let raw = a
        .gauge(&Mat3::from_columns([g1, g2, g3]))
        .map_err(ConnectionError::from)?;
    let qbar_closed = q * &f16 / &f14;
    let pbar_closed = c_of_z(q, p, nu, &f14).eval(&qbar_closed);
    if qbar_closed.is_zero() || qbar_closed.is_one() {
        return Err(ConvolutionError::BoundaryImage { qbar: qbar_closed });
    }
    let n = normalize_split_frame(&raw)?;
    Ok(XiFrame {
        raw,
        matrix: n.matrix,
        qbar: n.q,
        pbar: n.p,
        qbar_closed,
        pbar_closed,
    })
}

/// The full pipeline `⊗_- ∘ mc_β ∘ ⊗_+` on a moduli point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct McResult {
    pub beta: BetaForm,
    pub gm: GMData,
    pub xi: XiFrame,
    pub qbar: Rat,
    pub pbar: Rat,
    pub nu_out: ParamVector,
    /// Exponents of `E'` after undoing the twist, rows `0, 1, ∞`.
    pub exponents_out: [[Rat; 3]; 3],
}

pub fn mc_pair(q: &Rat, p: &Rat, nu: &ParamVector) -> Result<McResult, ConvolutionError> {
    require_n00(nu)?;
    let beta = build_beta(nu);
    let gm = gm_matrix(q, p, nu)?;
    let xi = xi_frame(&gm, q, p, nu)?;
    // ⊗_- restores degree -2 and adds 1 to each exponent at ∞
    let mut exponents_out: [[Rat; 3]; 3] =
        std::array::from_fn(|i| as_triple(&gm.prediction.exponents[i]));
    for e in exponents_out[2].iter_mut() {
        *e += &Rat::one();
    }
    Ok(McResult {
        qbar: xi.qbar.clone(),
        pbar: xi.pbar.clone(),
        nu_out: act_nu(Generator::W(3), nu),
        beta,
        gm,
        xi,
        exponents_out,
    })
}
