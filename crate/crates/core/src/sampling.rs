//! Seeded random rationals, parameters and moduli points for the statistical suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{PPoint, Rat};
use crate::lattice::Generator;
use crate::params::{act_nu, Membership, ParamVector};
use crate::surface::{MPoint, QuadMapData};

/// Retries before a sampler gives up on a rejection condition.
pub const MAX_RETRIES: usize = 10_000;

/// The stream for one trial of one suite; independent of scheduling.
pub fn trial_rng(seed: u64, suite: u32, trial: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((u64::from(suite) << 32) | u64::from(trial));
    rng
}

pub fn rational(rng: &mut impl Rng) -> Rat {
    Rat::new(rng.gen_range(-40..=40), rng.gen_range(1..=30))
}

pub fn nonzero_rational(rng: &mut impl Rng) -> Rat {
    loop {
        let r = rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// A ν at least as generic as `min`.
pub fn random_nu(rng: &mut impl Rng, min: Membership) -> Option<ParamVector> {
    (0..MAX_RETRIES).find_map(|_| {
        let free = std::array::from_fn(|_| [rational(rng), rational(rng)]);
        let nu = ParamVector::from_free(free);
        (nu.membership() >= min).then_some(nu)
    })
}

/// A ν in N00 whose image under the central reflection is also in N00.
pub fn random_nu_w3_stable(rng: &mut impl Rng) -> Option<ParamVector> {
    (0..MAX_RETRIES).find_map(|_| {
        let nu = random_nu(rng, Membership::N00)?;
        (act_nu(Generator::W(3), &nu).membership() == Membership::N00).then_some(nu)
    })
}

pub fn random_point(rng: &mut impl Rng) -> MPoint {
    loop {
        if let Ok(m) = MPoint::from_chart1(rational(rng), rational(rng)) {
            return m;
        }
    }
}

/// Whether the central reflection at `ν` sends `x` to another moduli point.
pub fn w3_admissible(nu: &ParamVector, x: &PPoint) -> bool {
    let quad = QuadMapData::new(nu);
    let c = x.coords();
    if quad.f14(c).is_zero() || quad.f16(c).is_zero() || quad.f46(c).is_zero() {
        return false;
    }
    let image = quad.image(c);
    // off the triangle and with q̄ ≠ 1
    !image[0].is_zero() && !image[2].is_zero() && image[0] != image[2]
}

/// A moduli point the central reflection keeps inside the moduli space.
pub fn random_w3_point(rng: &mut impl Rng, nu: &ParamVector) -> Option<MPoint> {
    (0..MAX_RETRIES).find_map(|_| {
        let m = random_point(rng);
        w3_admissible(nu, m.point()).then_some(m)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<Rat> = (0..5).map(|_| rational(&mut trial_rng(7, 1, 2))).collect();
        let b: Vec<Rat> = (0..5).map(|_| rational(&mut trial_rng(7, 1, 2))).collect();
        assert_eq!(a, b);
        let mut r1 = trial_rng(7, 1, 2);
        let mut r2 = trial_rng(7, 1, 3);
        let x: Vec<Rat> = (0..8).map(|_| rational(&mut r1)).collect();
        let y: Vec<Rat> = (0..8).map(|_| rational(&mut r2)).collect();
        assert_ne!(x, y);
    }

    #[test]
    fn samplers_respect_their_conditions() {
        let mut rng = trial_rng(0, 0, 0);
        for _ in 0..20 {
            let nu = random_nu_w3_stable(&mut rng).unwrap();
            assert_eq!(nu.membership(), Membership::N00);
            let m = random_w3_point(&mut rng, &nu).unwrap();
            assert!(w3_admissible(&nu, m.point()));
        }
    }
}
