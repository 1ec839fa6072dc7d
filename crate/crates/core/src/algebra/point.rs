use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{AlgebraError, Rat};

/// A point of the projective plane, stored with its first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PPoint([Rat; 3]);

impl PPoint {
    pub fn new(x0: Rat, x1: Rat, x2: Rat) -> Result<Self, AlgebraError> {
        Self::from_array([x0, x1, x2])
    }

    pub fn from_array(x: [Rat; 3]) -> Result<Self, AlgebraError> {
        let lead = x
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or(AlgebraError::ZeroPoint)?;
        Ok(PPoint(x.map(|c| c / &lead)))
    }

    /// The affine point `(q : p : 1)`.
    pub fn affine(q: Rat, p: Rat) -> Self {
        PPoint([q, p, Rat::one()]).canonical()
    }

    fn canonical(self) -> Self {
        Self::from_array(self.0).expect("nonzero by construction")
    }

    pub fn coords(&self) -> &[Rat; 3] {
        &self.0
    }

    pub fn x(&self, k: usize) -> &Rat {
        &self.0[k]
    }
}

impl fmt::Display for PPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Debug for PPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for PPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let x = <[Rat; 3]>::deserialize(deserializer)?;
        PPoint::from_array(x).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn canonical_representative() {
        let a = PPoint::new(Rat::int(0), Rat::int(-4), Rat::int(2)).unwrap();
        assert_eq!(a.coords(), &[Rat::zero(), Rat::one(), rat(-1, 2)]);
        let b = PPoint::new(Rat::zero(), Rat::int(2), Rat::int(-1)).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            PPoint::new(Rat::zero(), Rat::zero(), Rat::zero()),
            Err(AlgebraError::ZeroPoint)
        );
    }

    #[test]
    fn json_is_an_array_of_strings() {
        let a = PPoint::affine(Rat::int(2), rat(3, 4));
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"["1","3/8","1/2"]"#);
        let back: PPoint = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
