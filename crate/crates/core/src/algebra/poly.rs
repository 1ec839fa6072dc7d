//! Dense univariate polynomials over `Rat`, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rat;

/// A polynomial in one variable with no trailing zero coefficient.
///
/// The zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The variable itself.
    pub fn z() -> Self {
        Poly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    /// `c * z^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.push(c);
        Poly::from_coeffs(coeffs)
    }

    /// `a*z + b`.
    pub fn linear(a: Rat, b: Rat) -> Self {
        Poly::from_coeffs(vec![b, a])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `z^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The constant value, if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Rat> {
        self.is_constant().then(|| self.coeff(0))
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `P(a*z + b)`.
    pub fn compose_affine(&self, a: &Rat, b: &Rat) -> Poly {
        let inner = Poly::linear(a.clone(), b.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * &inner) + &Poly::constant(c.clone()))
    }

    /// Exact division by a monic-or-not divisor; returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &(&c * dc);
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Rat::is_zero) {
                rem.pop();
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }
}

/// The unique `P` with `deg P ≤ 2`, `P(0) = v0`, `P(1) = v1` and `z^2`-coefficient `vlead`.
pub fn interpolate_quadratic(v0: &Rat, v1: &Rat, vlead: &Rat) -> Poly {
    let middle = v1 - v0 - vlead;
    Poly::from_coeffs(vec![v0.clone(), middle, vlead.clone()])
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_poly_ops {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

owned_poly_ops!(Add, add);
owned_poly_ops!(Sub, sub);
owned_poly_ops!(Mul, mul);

impl From<Rat> for Poly {
    fn from(c: Rat) -> Self {
        Poly::constant(c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "({mag})z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "({mag})z^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Poly::from_coeffs(Vec::<Rat>::deserialize(deserializer)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn interpolation_examples() {
        let p = interpolate_quadratic(&Rat::int(1), &Rat::int(2), &Rat::int(3));
        assert_eq!(p, Poly::from_coeffs(vec![Rat::int(1), Rat::int(-2), Rat::int(3)]));
        assert!(interpolate_quadratic(&Rat::zero(), &Rat::zero(), &Rat::zero()).is_zero());
    }

    #[test]
    fn canonical_degree() {
        let p = Poly::from_coeffs(vec![Rat::int(1), Rat::zero(), Rat::zero()]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Poly::zero().degree(), None);
        assert!((&Poly::z() - &Poly::z()).is_zero());
    }

    #[test]
    fn affine_substitution() {
        // (z^2 + 1) at 1 - z is z^2 - 2z + 2
        let p = Poly::from_coeffs(vec![Rat::int(1), Rat::zero(), Rat::int(1)]);
        let q = p.compose_affine(&Rat::int(-1), &Rat::int(1));
        assert_eq!(q, Poly::from_coeffs(vec![Rat::int(2), Rat::int(-2), Rat::int(1)]));
    }

    #[test]
    fn division() {
        let num = &(&Poly::z() - &Poly::constant(rat(1, 2))) * &Poly::linear(Rat::int(3), Rat::int(4));
        let (q, r) = num.div_rem(&Poly::linear(Rat::int(3), Rat::int(4)));
        assert!(r.is_zero());
        assert_eq!(q, &Poly::z() - &Poly::constant(rat(1, 2)));
        let (_, r) = Poly::monomial(Rat::one(), 2).div_rem(&Poly::linear(Rat::one(), Rat::int(-2)));
        assert_eq!(r, Poly::constant(Rat::int(4)));
    }

    #[test]
    fn display() {
        let p = Poly::from_coeffs(vec![Rat::int(1), Rat::int(-2), Rat::int(3)]);
        assert_eq!(p.to_string(), "(3)z^2 - (2)z + 1");
    }
}
