use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{AlgebraError, Poly, Rat, RatMatrix};

/// A constant 3×3 matrix.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct RatMat3(pub [[Rat; 3]; 3]);

/// A 3×3 matrix of polynomials in `z`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Mat3(pub [[Poly; 3]; 3]);

/// The two finite poles of `dz/(z(z-1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FinitePole {
    Zero,
    One,
}

impl RatMat3 {
    pub fn from_fn(f: impl Fn(usize, usize) -> Rat) -> Self {
        RatMat3(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(Rat::one())
    }

    pub fn scalar(s: Rat) -> Self {
        Self::from_fn(|i, j| if i == j { s.clone() } else { Rat::zero() })
    }

    pub fn diag(d: [Rat; 3]) -> Self {
        Self::from_fn(|i, j| if i == j { d[i].clone() } else { Rat::zero() })
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        Self::from_fn(|i, j| Rat::int(rows[i][j]))
    }

    pub fn det(&self) -> Rat {
        let m = &self.0;
        &m[0][0] * &(&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * &(&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * &(&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    pub fn trace(&self) -> Rat {
        (0..3).map(|i| &self.0[i][i]).sum()
    }

    /// Sum of the principal 2×2 minors.
    fn minor_sum(&self) -> Rat {
        let m = &self.0;
        let minor = |a: usize, b: usize| &m[a][a] * &m[b][b] - &m[a][b] * &m[b][a];
        minor(0, 1) + minor(0, 2) + minor(1, 2)
    }

    /// `[c0, c1, c2]` with `det(tI - M) = t^3 + c2 t^2 + c1 t + c0`.
    pub fn char_poly(&self) -> [Rat; 3] {
        [-self.det(), self.minor_sum(), -self.trace()]
    }

    pub fn inverse(&self) -> Option<RatMat3> {
        let d = self.det().recip()?;
        let m = &self.0;
        let cof = |i: usize, j: usize| {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
        };
        Some(Self::from_fn(|i, j| cof(i, j) * &d))
    }

    pub fn scale(&self, s: &Rat) -> RatMat3 {
        Self::from_fn(|i, j| &self.0[i][j] * s)
    }

    pub fn to_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(self.0.iter().map(|r| r.to_vec()).collect())
    }

    pub fn mul_vec(&self, v: &[Rat; 3]) -> [Rat; 3] {
        std::array::from_fn(|i| (0..3).map(|k| &self.0[i][k] * &v[k]).sum())
    }
}

/// Whether `det(tI - m)` equals `∏(t - λ)` over the given multiset.
pub fn char_poly_matches(m: &RatMat3, eigs: &[Rat; 3]) -> bool {
    let e1: Rat = eigs.iter().sum();
    let e2 = &eigs[0] * &eigs[1] + &eigs[1] * &eigs[2] + &eigs[2] * &eigs[0];
    let e3 = &eigs[0] * &eigs[1] * &eigs[2];
    m.char_poly() == [-e3, e2, -e1]
}

/// Residue of `A(z) dz/(z(z-1))`: `-A(0)` at 0 and `A(1)` at 1.
pub fn residue_of_form(a: &Mat3, at: FinitePole) -> RatMat3 {
    match at {
        FinitePole::Zero => -&a.eval(&Rat::zero()),
        FinitePole::One => a.eval(&Rat::one()),
    }
}

impl Mat3 {
    pub fn from_fn(f: impl Fn(usize, usize) -> Poly) -> Self {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::from(RatMat3::identity())
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.0[i][j]
    }

    pub fn column(&self, j: usize) -> [Poly; 3] {
        std::array::from_fn(|i| self.0[i][j].clone())
    }

    pub fn from_columns(cols: [[Poly; 3]; 3]) -> Self {
        Self::from_fn(|i, j| cols[j][i].clone())
    }

    pub fn eval(&self, x: &Rat) -> RatMat3 {
        RatMat3::from_fn(|i, j| self.0[i][j].eval(x))
    }

    /// The matrix of `z^k` coefficients.
    pub fn coeff(&self, k: usize) -> RatMat3 {
        RatMat3::from_fn(|i, j| self.0[i][j].coeff(k))
    }

    /// Largest entry degree; `None` for the zero matrix.
    pub fn degree(&self) -> Option<usize> {
        self.0.iter().flatten().filter_map(Poly::degree).max()
    }

    pub fn derivative(&self) -> Mat3 {
        Self::from_fn(|i, j| self.0[i][j].derivative())
    }

    pub fn scale(&self, s: &Rat) -> Mat3 {
        Self::from_fn(|i, j| self.0[i][j].scale(s))
    }

    pub fn scale_poly(&self, s: &Poly) -> Mat3 {
        Self::from_fn(|i, j| s * &self.0[i][j])
    }

    pub fn compose_affine(&self, a: &Rat, b: &Rat) -> Mat3 {
        Self::from_fn(|i, j| self.0[i][j].compose_affine(a, b))
    }

    pub fn mul_vec(&self, v: &[Poly; 3]) -> [Poly; 3] {
        std::array::from_fn(|i| {
            (0..3).fold(Poly::zero(), |acc, k| &acc + &(&self.0[i][k] * &v[k]))
        })
    }

    pub fn det(&self) -> Poly {
        let m = &self.0;
        let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
            &(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0])
        };
        let t0 = &m[0][0] * &minor(1, 2, 1, 2);
        let t1 = &m[0][1] * &minor(1, 2, 0, 2);
        let t2 = &m[0][2] * &minor(1, 2, 0, 1);
        &(&t0 - &t1) + &t2
    }

    /// Inverse over the polynomial ring; requires a nonzero constant determinant.
    pub fn inverse(&self) -> Result<Mat3, AlgebraError> {
        let d = self
            .det()
            .as_constant()
            .and_then(|c| c.recip())
            .ok_or(AlgebraError::SingularGauge)?;
        let m = &self.0;
        let cof = |i: usize, j: usize| {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            &(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0])
        };
        Ok(Self::from_fn(|i, j| cof(i, j).scale(&d)))
    }

    /// Gauge transform of `d + A dz/(z(z-1))` by `g`: `g^{-1}(A g + z(z-1) g')`.
    pub fn gauge(&self, g: &Mat3) -> Result<Mat3, AlgebraError> {
        let ginv = g.inverse()?;
        let zz1 = Poly::from_coeffs(vec![Rat::zero(), Rat::int(-1), Rat::one()]);
        Ok(&ginv * &(&(self * g) + &g.derivative().scale_poly(&zz1)))
    }
}

impl From<RatMat3> for Mat3 {
    fn from(m: RatMat3) -> Self {
        Mat3::from_fn(|i, j| Poly::constant(m.0[i][j].clone()))
    }
}

impl Index<(usize, usize)> for RatMat3 {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for RatMat3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.0[i][j]
    }
}

impl Index<(usize, usize)> for Mat3 {
    type Output = Poly;
    fn index(&self, (i, j): (usize, usize)) -> &Poly {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Poly {
        &mut self.0[i][j]
    }
}

macro_rules! matrix_ops {
    ($t:ident, $zero:expr) => {
        impl Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                $t::from_fn(|i, j| &self.0[i][j] + &rhs.0[i][j])
            }
        }
        impl Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                $t::from_fn(|i, j| &self.0[i][j] - &rhs.0[i][j])
            }
        }
        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t::from_fn(|i, j| -&self.0[i][j])
            }
        }
        impl Mul for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                $t::from_fn(|i, j| {
                    (0..3).fold($zero, |acc, k| &acc + &(&self.0[i][k] * &rhs.0[k][j]))
                })
            }
        }
    };
}

matrix_ops!(RatMat3, Rat::zero());
matrix_ops!(Mat3, Poly::zero());

impl fmt::Debug for RatMat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_residues() {
        let id = Mat3::identity();
        assert_eq!(residue_of_form(&id, FinitePole::Zero), -&RatMat3::identity());
        assert_eq!(residue_of_form(&id, FinitePole::One), RatMat3::identity());
    }

    #[test]
    fn characteristic_polynomial() {
        let d = RatMat3::diag([Rat::int(1), Rat::int(2), Rat::int(3)]);
        assert!(char_poly_matches(&d, &[Rat::int(3), Rat::int(1), Rat::int(2)]));
        assert!(!char_poly_matches(&d, &[Rat::int(1), Rat::int(1), Rat::int(3)]));
        let m = RatMat3::from_i64([[2, 1, 0], [0, 2, 0], [1, 1, 5]]);
        assert!(char_poly_matches(&m, &[Rat::int(2), Rat::int(2), Rat::int(5)]));
    }

    #[test]
    fn inverses() {
        let m = RatMat3::from_i64([[2, 1, 0], [1, 3, 1], [0, 1, 4]]);
        assert_eq!(&m * &m.inverse().unwrap(), RatMat3::identity());
        let mut g = Mat3::identity();
        g[(0, 1)] = Poly::z();
        g[(0, 2)] = Poly::linear(Rat::int(2), Rat::int(-1));
        assert_eq!(&g * &g.inverse().unwrap(), Mat3::identity());
        g[(1, 1)] = Poly::z();
        assert_eq!(g.inverse(), Err(AlgebraError::SingularGauge));
    }

    #[test]
    fn gauge_by_identity_is_trivial() {
        let a = Mat3::from_fn(|i, j| Poly::linear(Rat::int(i as i64), Rat::int(j as i64)));
        assert_eq!(a.gauge(&Mat3::identity()).unwrap(), a);
    }
}
