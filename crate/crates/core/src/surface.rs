//! Nine points on the anticanonical triangle, the cubic lemma, and the plane maps realizing each generator.

use serde::{Deserialize, Serialize};

use crate::algebra::{PPoint, Rat, RatMat3, RatMatrix};
use crate::lattice::Generator;
use crate::params::{act_nu, exceptional_slot, ParamVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum SurfaceError {
    #[error("point {point} lies on the triangle x0 (x0 - x2) x2 = 0")]
    OnTriangle { point: PPoint },
    #[error("chart coordinate q = {q} must avoid 0 and 1")]
    BadChart { q: Rat },
    #[error("point {point} is a base point of the map")]
    IndeterminatePoint { point: PPoint },
    #[error("line {line} = 0 through {point} is contracted to p{target} of the target configuration")]
    ContractedToBoundary {
        point: PPoint,
        line: ContractedLine,
        target: usize,
        image: PPoint,
    },
    #[error("cubics through the nine points form a space of dimension {dim}, expected 1")]
    KernelDimension { dim: usize },
    #[error("sum of the configuration coordinates is zero; no normalizing shear exists")]
    DegenerateConfiguration,
    #[error("central reflection needs gamma != 0")]
    GammaZero,
    #[error("no shear matches the point correspondence for s2")]
    NoShear,
}

/// One of the three lines joining two of the base points `p1, p4, p6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContractedLine {
    F14,
    F16,
    F46,
}

impl std::fmt::Display for ContractedLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ContractedLine::F14 => "f14",
            ContractedLine::F16 => "f16",
            ContractedLine::F46 => "f46",
        })
    }
}

/// `x0 (x0 - x2) x2`.
pub fn triangle_value(x: &[Rat; 3]) -> Rat {
    &x[0] * &(&x[0] - &x[2]) * &x[2]
}

pub fn on_triangle(p: &PPoint) -> bool {
    triangle_value(p.coords()).is_zero()
}

/// A point of the plane off the triangle, i.e. a point of the moduli space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PPoint", into = "PPoint")]
pub struct MPoint(PPoint);

impl MPoint {
    pub fn new(point: PPoint) -> Result<Self, SurfaceError> {
        if on_triangle(&point) {
            Err(SurfaceError::OnTriangle { point })
        } else {
            Ok(MPoint(point))
        }
    }

    /// The point `(q : p : 1)`.
    pub fn from_chart1(q: Rat, p: Rat) -> Result<Self, SurfaceError> {
        if q.is_zero() || q.is_one() {
            return Err(SurfaceError::BadChart { q });
        }
        Ok(MPoint(PPoint::affine(q, p)))
    }

    /// The point `(1 : p' : q')`.
    pub fn from_chart2(q2: Rat, p2: Rat) -> Result<Self, SurfaceError> {
        if q2.is_zero() || q2.is_one() {
            return Err(SurfaceError::BadChart { q: q2 });
        }
        Ok(MPoint(
            PPoint::new(Rat::one(), p2, q2).expect("first coordinate is 1"),
        ))
    }

    pub fn point(&self) -> &PPoint {
        &self.0
    }

    /// `(q, p) = (x0/x2, x1/x2)`.
    pub fn chart1(&self) -> (Rat, Rat) {
        let x = self.0.coords();
        (&x[0] / &x[2], &x[1] / &x[2])
    }

    /// `(q', p') = (x2/x0, x1/x0)`.
    pub fn chart2(&self) -> (Rat, Rat) {
        let x = self.0.coords();
        (&x[2] / &x[0], &x[1] / &x[0])
    }
}

impl TryFrom<PPoint> for MPoint {
    type Error = SurfaceError;
    fn try_from(p: PPoint) -> Result<Self, SurfaceError> {
        MPoint::new(p)
    }
}

impl From<MPoint> for PPoint {
    fn from(m: MPoint) -> Self {
        m.0
    }
}

/// `p_k(ν)` for `k` in `1..=9`.
pub fn base_point(k: usize, nu: &ParamVector) -> PPoint {
    let (row, col) = exceptional_slot(k);
    let v = nu.get(row, col);
    let x = match row {
        1 => [Rat::one(), v.clone(), Rat::one()],
        0 => [Rat::zero(), -v, Rat::one()],
        _ => [Rat::one(), Rat::one() - v, Rat::zero()],
    };
    PPoint::from_array(x).expect("nonzero")
}

/// Nine points on the triangle, stored in index order `p1, …, p9`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NinePoints(pub [PPoint; 9]);

impl NinePoints {
    pub fn from_nu(nu: &ParamVector) -> Self {
        NinePoints(std::array::from_fn(|i| base_point(i + 1, nu)))
    }

    /// Points `(1 : -a : 1)`, `(0 : a : 1)`, `(1 : a : 0)` on `D1`, `D0`, `D2`; `a[k-1]` belongs to `p_k`.
    pub fn from_config(a: &[Rat; 9]) -> Self {
        NinePoints(std::array::from_fn(|i| {
            let x = match i + 1 {
                1..=3 => [Rat::one(), -&a[i], Rat::one()],
                4 | 5 | 9 => [Rat::zero(), a[i].clone(), Rat::one()],
                _ => [Rat::one(), a[i].clone(), Rat::zero()],
            };
            PPoint::from_array(x).expect("nonzero")
        }))
    }

    pub fn get(&self, k: usize) -> &PPoint {
        &self.0[k - 1]
    }
}

/// The configuration coordinates `a_k` of `p_k(ν)`.
pub fn config_of_nu(nu: &ParamVector) -> [Rat; 9] {
    std::array::from_fn(|i| {
        let (row, col) = exceptional_slot(i + 1);
        let v = nu.get(row, col);
        match row {
            1 | 0 => -v,
            _ => Rat::one() - v,
        }
    })
}

fn cubic_monomials(x: &[Rat; 3]) -> [Rat; 10] {
    let [a, b, c] = x;
    [
        a * a * a,
        a * a * b,
        a * a * c,
        a * b * b,
        a * b * c,
        a * c * c,
        b * b * b,
        b * b * c,
        b * c * c,
        c * c * c,
    ]
}

/// Coefficients of `x0 (x0 - x2) x2` in the monomial order of `cubic_monomials`.
pub fn triangle_cubic() -> [Rat; 10] {
    let mut t: [Rat; 10] = Default::default();
    t[2] = Rat::one();
    t[5] = Rat::int(-1);
    t
}

/// The unique cubic through the nine points, checked to be the triangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubicReport {
    pub kernel_dim: usize,
    pub cubic: [Rat; 10],
    pub is_triangle: bool,
}

pub fn cubic_kernel(points: &NinePoints) -> Vec<Vec<Rat>> {
    let rows = points
        .0
        .iter()
        .map(|p| cubic_monomials(p.coords()).to_vec())
        .collect();
    RatMatrix::from_rows(rows).nullspace()
}

pub fn unique_anticanonical_cubic(points: &NinePoints) -> Result<CubicReport, SurfaceError> {
    let kernel = cubic_kernel(points);
    if kernel.len() != 1 {
        return Err(SurfaceError::KernelDimension { dim: kernel.len() });
    }
    let v = &kernel[0];
    let t = triangle_cubic();
    let scale = &v[2] / &t[2];
    let is_triangle = v.iter().zip(&t).all(|(a, b)| *a == b * &scale);
    Ok(CubicReport {
        kernel_dim: 1,
        cubic: std::array::from_fn(|i| v[i].clone()),
        is_triangle,
    })
}

/// Shear `(x0 : x1 : x2) ↦ (x0 : μ x0 + ν x1 + η x2 : x2)` normalizing a configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Shear {
    pub mu: Rat,
    pub nu: Rat,
    pub eta: Rat,
}

impl Shear {
    pub fn identity() -> Self {
        Shear {
            mu: Rat::zero(),
            nu: Rat::one(),
            eta: Rat::zero(),
        }
    }

    pub fn matrix(&self) -> RatMat3 {
        RatMat3([
            [Rat::one(), Rat::zero(), Rat::zero()],
            [self.mu.clone(), self.nu.clone(), self.eta.clone()],
            [Rat::zero(), Rat::zero(), Rat::one()],
        ])
    }
}

/// Finds the shear making `a1+a2+a3 = a4+a5+a9 = 0`, `a6+a7+a8 = 1`, and the new coordinates.
pub fn normalize_configuration(a: &[Rat; 9]) -> Result<(Shear, [Rat; 9]), SurfaceError> {
    let group_sum = |idx: &[usize]| idx.iter().map(|&k| &a[k - 1]).sum::<Rat>();
    let (s1, s0, s2) = (group_sum(&[1, 2, 3]), group_sum(&[4, 5, 9]), group_sum(&[6, 7, 8]));
    let scale = (&s1 + &s0 + &s2)
        .recip()
        .ok_or(SurfaceError::DegenerateConfiguration)?;
    let third = Rat::new(1, 3);
    let eta = -(&scale * &s0) * &third;
    let mu = (Rat::one() - &scale * &s2) * &third;
    let normalized = std::array::from_fn(|i| {
        let scaled = &scale * &a[i];
        match i + 1 {
            1..=3 => scaled - &mu - &eta,
            4 | 5 | 9 => scaled + &eta,
            _ => scaled + &mu,
        }
    });
    Ok((Shear { mu, nu: scale, eta }, normalized))
}

/// Data of the quadratic transformation based at `p1, p4, p6`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadMapData {
    pub gamma: Rat,
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub f14: [Rat; 3],
    pub f16: [Rat; 3],
    pub f46: [Rat; 3],
}

fn linear_form(f: &[Rat; 3], x: &[Rat; 3]) -> Rat {
    f.iter().zip(x).map(|(a, b)| a * b).sum()
}

impl QuadMapData {
    pub fn new(nu: &ParamVector) -> Self {
        let (n10, n00, ninf) = (nu.get(1, 0), nu.get(0, 0), nu.get(2, 0));
        let b0 = ninf - &Rat::one();
        let gamma = nu.gamma();
        let shift = &gamma * &Rat::new(2, 3);
        QuadMapData {
            a: n10 - &shift,
            b: &b0 - &shift,
            c: n00 - &shift,
            f14: [n10 + n00, Rat::int(-1), -n00],
            f16: [-&b0, Rat::int(-1), n10 + &b0],
            f46: [b0.clone(), Rat::one(), n00.clone()],
            gamma,
        }
    }

    pub fn f14(&self, x: &[Rat; 3]) -> Rat {
        linear_form(&self.f14, x)
    }

    pub fn f16(&self, x: &[Rat; 3]) -> Rat {
        linear_form(&self.f16, x)
    }

    pub fn f46(&self, x: &[Rat; 3]) -> Rat {
        linear_form(&self.f46, x)
    }

    /// The unnormalized image coordinates.
    pub fn image(&self, x: &[Rat; 3]) -> [Rat; 3] {
        let (f14, f16, f46) = (self.f14(x), self.f16(x), self.f46(x));
        [
            &self.gamma * &x[0] * &f16,
            &self.a * &f14 * &f16 - &self.b * &f16 * &f46 - &self.c * &f14 * &f46,
            &self.gamma * &x[2] * &f14,
        ]
    }
}

/// A plane map realizing one generator on the surfaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BirationalMap {
    Identity,
    Linear { matrix: RatMat3 },
    Quadratic { data: QuadMapData },
}

pub fn sigma1_matrix() -> RatMat3 {
    RatMat3::from_i64([[-1, 0, 1], [0, -1, 0], [0, 0, 1]])
}

/// `(x2 : s x0 + x1 + t x2 : x0)`.
pub fn sigma2_matrix(s: &Rat, t: &Rat) -> RatMat3 {
    RatMat3([
        [Rat::zero(), Rat::zero(), Rat::one()],
        [s.clone(), Rat::one(), t.clone()],
        [Rat::one(), Rat::zero(), Rat::zero()],
    ])
}

/// Solves for the shear `(s, t)` of the `s2` map from `φ(p_i(ν)) = p_{σ2(i)}(σ2 ν)` at all nine points.
pub fn sigma2_shear(nu: &ParamVector) -> Result<(Rat, Rat), SurfaceError> {
    let target_nu = act_nu(Generator::S2, nu);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 1..=9 {
        let j = Generator::S2.exceptional_image(i).expect("permutation");
        let x = base_point(i, nu);
        let y = base_point(j, &target_nu);
        let (x, y) = (x.coords(), y.coords());
        // image (x2 : s x0 + x1 + t x2 : x0) must be λ y; λ comes from a known coordinate
        let lambda = if !y[0].is_zero() { &x[2] / &y[0] } else { &x[0] / &y[2] };
        if &lambda * &y[0] != x[2] || &lambda * &y[2] != x[0] {
            return Err(SurfaceError::NoShear);
        }
        rows.push(vec![x[0].clone(), x[2].clone()]);
        rhs.push(&lambda * &y[1] - &x[1]);
    }
    let sol = RatMatrix::from_rows(rows)
        .solve_unique(&rhs)
        .ok_or(SurfaceError::NoShear)?;
    Ok((sol[0].clone(), sol[1].clone()))
}

/// The map `φ_g: P^2 ⇢ P^2` from the configuration of `ν` to that of `g ν`.
pub fn phi_generator(g: Generator, nu: &ParamVector) -> Result<BirationalMap, SurfaceError> {
    Ok(match g {
        Generator::W(3) => {
            if nu.gamma().is_zero() {
                return Err(SurfaceError::GammaZero);
            }
            BirationalMap::Quadratic {
                data: QuadMapData::new(nu),
            }
        }
        Generator::W(_) => BirationalMap::Identity,
        Generator::S1 => BirationalMap::Linear {
            matrix: sigma1_matrix(),
        },
        Generator::S2 => {
            let (s, t) = sigma2_shear(nu)?;
            BirationalMap::Linear {
                matrix: sigma2_matrix(&s, &t),
            }
        }
    })
}

pub fn eval_map(map: &BirationalMap, x: &PPoint) -> Result<PPoint, SurfaceError> {
    let c = x.coords();
    let raw = match map {
        BirationalMap::Identity => return Ok(x.clone()),
        BirationalMap::Linear { matrix } => matrix.mul_vec(c),
        BirationalMap::Quadratic { data } => data.image(c),
    };
    let image = PPoint::from_array(raw)
        .map_err(|_| SurfaceError::IndeterminatePoint { point: x.clone() })?;
    if let BirationalMap::Quadratic { data } = map {
        if !on_triangle(x) && on_triangle(&image) {
            let (line, target) = if data.f46(c).is_zero() {
                (ContractedLine::F46, 1)
            } else if data.f16(c).is_zero() {
                (ContractedLine::F16, 4)
            } else {
                (ContractedLine::F14, 6)
            };
            return Err(SurfaceError::ContractedToBoundary {
                point: x.clone(),
                line,
                target,
                image,
            });
        }
    }
    Ok(image)
}

/// A point of the line `line = 0` with `x0 = 1`, `x2 = s`.
pub fn point_on_line(data: &QuadMapData, line: ContractedLine, s: &Rat) -> PPoint {
    let f = match line {
        ContractedLine::F14 => &data.f14,
        ContractedLine::F16 => &data.f16,
        ContractedLine::F46 => &data.f46,
    };
    // f0 + f1 x1 + f2 s = 0, and f1 = ±1 for all three lines
    let x1 = -(&f[0] + &(&f[2] * s)) / &f[1];
    PPoint::new(Rat::one(), x1, s.clone()).expect("nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn fixture_cubic_is_the_triangle() {
        let nu = ParamVector::fixture();
        let r = unique_anticanonical_cubic(&NinePoints::from_nu(&nu)).unwrap();
        assert!(r.is_triangle);
    }

    #[test]
    fn degenerate_configuration_has_a_pencil() {
        let mut a = config_of_nu(&ParamVector::fixture());
        // make a6 + a7 + a8 = 0 so that the total vanishes
        a[7] = -(&a[5] + &a[6]);
        let err = unique_anticanonical_cubic(&NinePoints::from_config(&a)).unwrap_err();
        assert!(matches!(err, SurfaceError::KernelDimension { dim } if dim >= 2));
        assert_eq!(normalize_configuration(&a), Err(SurfaceError::DegenerateConfiguration));
    }

    #[test]
    fn configuration_normalization() {
        let a = config_of_nu(&ParamVector::fixture());
        let (shear, b) = normalize_configuration(&a).unwrap();
        assert_eq!(shear, Shear::identity());
        assert_eq!(b, a);

        // x1 ↦ x1 + x0 moves D1 points by -1 and D2 points by +1
        let shifted: [Rat; 9] = std::array::from_fn(|i| match i + 1 {
            1..=3 => &a[i] - &Rat::one(),
            4 | 5 | 9 => a[i].clone(),
            _ => &a[i] + &Rat::one(),
        });
        let (shear, b) = normalize_configuration(&shifted).unwrap();
        assert_eq!(shear, Shear { mu: Rat::int(-1), nu: Rat::one(), eta: Rat::zero() });
        assert_eq!(b, a);
    }

    #[test]
    fn normalized_points_are_the_sheared_points() {
        let a: [Rat; 9] = std::array::from_fn(|i| rat(i as i64 * 3 - 7, i as i64 + 2));
        let (shear, b) = normalize_configuration(&a).unwrap();
        let before = NinePoints::from_config(&a);
        let after = NinePoints::from_config(&b);
        let m = shear.matrix();
        for k in 1..=9 {
            let moved = PPoint::from_array(m.mul_vec(before.get(k).coords())).unwrap();
            assert_eq!(&moved, after.get(k), "p{k}");
        }
        let sum = |idx: &[usize]| idx.iter().map(|&k| &b[k - 1]).sum::<Rat>();
        assert_eq!(sum(&[1, 2, 3]), Rat::zero());
        assert_eq!(sum(&[4, 5, 9]), Rat::zero());
        assert_eq!(sum(&[6, 7, 8]), Rat::one());
    }

    #[test]
    fn sigma_maps() {
        let nu = ParamVector::fixture();
        let s1 = phi_generator(Generator::S1, &nu).unwrap();
        let x = PPoint::new(Rat::int(2), Rat::int(3), Rat::one()).unwrap();
        assert_eq!(
            eval_map(&s1, &x).unwrap(),
            PPoint::new(Rat::int(-1), Rat::int(-3), Rat::one()).unwrap()
        );
        let target = act_nu(Generator::S1, &nu);
        assert_eq!(eval_map(&s1, &base_point(1, &nu)).unwrap(), base_point(4, &target));
        assert_eq!(sigma2_shear(&nu).unwrap(), (rat(-1, 3), rat(1, 3)));
    }

    #[test]
    fn central_reflection_points() {
        let nu = ParamVector::fixture();
        let map = phi_generator(Generator::W(3), &nu).unwrap();
        let target = act_nu(Generator::W(3), &nu);
        assert_eq!(eval_map(&map, &base_point(2, &nu)).unwrap(), base_point(2, &target));
        assert!(matches!(
            eval_map(&map, &base_point(1, &nu)),
            Err(SurfaceError::IndeterminatePoint { .. })
        ));
        let BirationalMap::Quadratic { data } = &map else { panic!() };
        let x = point_on_line(data, ContractedLine::F46, &rat(5, 3));
        match eval_map(&map, &x) {
            Err(SurfaceError::ContractedToBoundary { line, target: t, image, .. }) => {
                assert_eq!((line, t), (ContractedLine::F46, 1));
                assert_eq!(image, base_point(1, &target));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn chart_relation() {
        let m = MPoint::from_chart1(Rat::int(2), Rat::int(3)).unwrap();
        assert_eq!(m.chart2(), (rat(1, 2), rat(3, 2)));
        assert!(MPoint::from_chart1(Rat::one(), Rat::zero()).is_err());
    }
}
