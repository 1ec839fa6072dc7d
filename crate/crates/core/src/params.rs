//! Local exponents ν, the strata N ⊃ N0 ⊃ N00, the period map χ and the generator action on ν.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, Rat, RatMatrix};
use crate::lattice::{Generator, PicClass, MARKS, RANK, ROOTS};

/// Row labels of ν, in storage order.
pub const ROW_NAMES: [&str; 3] = ["0", "1", "inf"];

/// The 3×3 exponent array, rows for the poles 0, 1, ∞.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[[Rat; 3]; 3]", into = "[[Rat; 3]; 3]")]
pub struct ParamVector([[Rat; 3]; 3]);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamError {
    #[error("row {row} of nu sums to {sum}, expected {expected}")]
    RowSum { row: &'static str, sum: Rat, expected: Rat },
    #[error("nu needs 9 entries, got {0}")]
    EntryCount(usize),
    #[error("nu entry {index}: {source}")]
    Entry { index: usize, source: AlgebraError },
    #[error("class {0} is not in the root lattice")]
    NotInRootLattice(PicClass),
    #[error("the linear system for {0} is singular")]
    SingularSystem(Generator),
}

/// The strongest of the nested parameter sets containing ν.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Membership {
    None,
    N,
    N0,
    N00,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::None => "none",
            Membership::N => "N",
            Membership::N0 => "N0",
            Membership::N00 => "N00",
        })
    }
}

impl ParamVector {
    /// Validates the row sums `0, 0, 2`.
    pub fn new(rows: [[Rat; 3]; 3]) -> Result<Self, ParamError> {
        for (i, row) in rows.iter().enumerate() {
            let sum: Rat = row.iter().sum();
            let expected = Self::row_sum_target(i);
            if sum != expected {
                return Err(ParamError::RowSum {
                    row: ROW_NAMES[i],
                    sum,
                    expected,
                });
            }
        }
        Ok(ParamVector(rows))
    }

    /// Builds ν from the first two entries of each row; the third is forced by the row sum.
    pub fn from_free(free: [[Rat; 2]; 3]) -> Self {
        ParamVector(std::array::from_fn(|i| {
            let [a, b] = free[i].clone();
            let c = Self::row_sum_target(i) - &a - &b;
            [a, b, c]
        }))
    }

    pub fn row_sum_target(i: usize) -> Rat {
        if i == 2 {
            Rat::int(2)
        } else {
            Rat::zero()
        }
    }

    pub fn rows(&self) -> &[[Rat; 3]; 3] {
        &self.0
    }

    pub fn row(&self, i: usize) -> &[Rat; 3] {
        &self.0[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.0[i][j]
    }

    /// Flat order `ν_{0,0}, ν_{0,1}, …, ν_{∞,2}`.
    pub fn flat(&self) -> [Rat; 9] {
        std::array::from_fn(|k| self.0[k / 3][k % 3].clone())
    }

    pub fn gamma(&self) -> Rat {
        &self.0[0][0] + &self.0[1][0] + &self.0[2][0] - Rat::one()
    }

    /// The exponents at ∞ after twisting by `O(1)`: `ν_{∞,j} - 1`.
    pub fn mu(&self) -> [[Rat; 3]; 3] {
        let mut m = self.0.clone();
        for x in m[2].iter_mut() {
            *x -= &Rat::one();
        }
        m
    }

    pub fn membership(&self) -> Membership {
        let rows_distinct = self
            .0
            .iter()
            .all(|r| r[0] != r[1] && r[1] != r[2] && r[2] != r[0]);
        if !rows_distinct {
            return Membership::None;
        }
        let mut triple_integral = false;
        for a in &self.0[0] {
            for b in &self.0[1] {
                for c in &self.0[2] {
                    triple_integral |= (a + b + c).is_integer();
                }
            }
        }
        if triple_integral {
            return Membership::N;
        }
        let integral_gap = self.0.iter().any(|r| {
            (0..3).any(|j| (0..3).any(|k| j != k && (&r[j] - &r[k]).is_integer()))
        });
        if integral_gap {
            Membership::N0
        } else {
            Membership::N00
        }
    }

    /// The fixed sample point used in documentation and tests.
    pub fn fixture() -> Self {
        use crate::algebra::rat;
        ParamVector::new([
            [rat(1, 5), rat(2, 5), rat(-3, 5)],
            [rat(1, 7), rat(2, 7), rat(-3, 7)],
            [rat(1, 2), rat(5, 6), rat(2, 3)],
        ])
        .expect("fixture satisfies the row sums")
    }

    /// A point of N00 differing from `fixture` only in row 0.
    pub fn generic_fixture() -> Self {
        use crate::algebra::rat;
        ParamVector::new([
            [rat(1, 5), rat(3, 10), rat(-1, 2)],
            [rat(1, 7), rat(2, 7), rat(-3, 7)],
            [rat(1, 2), rat(5, 6), rat(2, 3)],
        ])
        .expect("fixture satisfies the row sums")
    }
}

impl TryFrom<[[Rat; 3]; 3]> for ParamVector {
    type Error = ParamError;
    fn try_from(rows: [[Rat; 3]; 3]) -> Result<Self, ParamError> {
        ParamVector::new(rows)
    }
}

impl From<ParamVector> for [[Rat; 3]; 3] {
    fn from(v: ParamVector) -> Self {
        v.0
    }
}

/// Parses nine rationals separated by commas or whitespace, row order `0, 1, ∞`.
impl FromStr for ParamVector {
    type Err = ParamError;

    fn from_str(s: &str) -> Result<Self, ParamError> {
        let cleaned: String = s
            .chars()
            .map(|c| if matches!(c, '[' | ']' | '"' | ';') { ' ' } else { c })
            .collect();
        let tokens: Vec<&str> = cleaned
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.len() != 9 {
            return Err(ParamError::EntryCount(tokens.len()));
        }
        let mut vals = Vec::with_capacity(9);
        for (index, t) in tokens.iter().enumerate() {
            vals.push(t.parse::<Rat>().map_err(|source| ParamError::Entry { index, source })?);
        }
        ParamVector::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| vals[3 * i + j].clone())
        }))
    }
}

impl fmt::Display for ParamVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| format!("{}, {}, {}", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl fmt::Debug for ParamVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `(row, column)` of ν attached to the exceptional class `E_k`, `k ≥ 1`.
pub fn exceptional_slot(k: usize) -> (usize, usize) {
    match k {
        1..=3 => (1, k - 1),
        4 => (0, 0),
        5 => (0, 1),
        9 => (0, 2),
        6..=8 => (2, k - 6),
        _ => panic!("E{k} has no exponent slot"),
    }
}

/// Applies a generator to ν.
pub fn act_nu(g: Generator, nu: &ParamVector) -> ParamVector {
    let mut m = nu.0.clone();
    match g {
        Generator::W(3) => {
            let gamma = nu.gamma();
            let two_thirds = &gamma * &Rat::new(2, 3);
            let third = &gamma * &Rat::new(1, 3);
            for row in m.iter_mut() {
                row[0] -= &two_thirds;
                row[1] += &third;
                row[2] += &third;
            }
        }
        Generator::W(i) => {
            // each remaining simple root is E_a - E_b; swap the two slots it names
            let root = ROOTS[i as usize];
            let a = (1..RANK).find(|&k| root.0[k] == 1).expect("difference root");
            let b = (1..RANK).find(|&k| root.0[k] == -1).expect("difference root");
            let ((ra, ca), (rb, cb)) = (exceptional_slot(a), exceptional_slot(b));
            debug_assert_eq!(ra, rb);
            m[ra].swap(ca, cb);
        }
        Generator::S1 => m.swap(0, 1),
        Generator::S2 => {
            let shift = Rat::new(2, 3);
            let [r0, r1, rinf] = m;
            m = [
                rinf.map(|x| x - &shift),
                r1,
                r0.map(|x| x + &shift),
            ];
        }
    }
    ParamVector(m)
}

pub fn act_word(word: &[Generator], nu: &ParamVector) -> ParamVector {
    word.iter().fold(nu.clone(), |acc, &g| act_nu(g, &acc))
}

/// Global sign applied to χ on the difference roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SignConvention {
    /// `χ(E_a - E_b) = -(ν_a - ν_b)`; the only choice compatible with the central reflection.
    #[default]
    Calibrated,
    /// `χ(E_a - E_b) = +(ν_a - ν_b)`, kept for comparison.
    Opposite,
}

impl SignConvention {
    fn factor(self) -> Rat {
        match self {
            SignConvention::Calibrated => Rat::int(-1),
            SignConvention::Opposite => Rat::one(),
        }
    }
}

/// An affine function of the nine flat ν entries.
#[derive(Debug, Clone, PartialEq, Eq)]
struct AffineForm {
    coeffs: [Rat; 9],
    constant: Rat,
}

impl AffineForm {
    fn zero() -> Self {
        AffineForm {
            coeffs: Default::default(),
            constant: Rat::zero(),
        }
    }

    fn eval(&self, nu: &ParamVector) -> Rat {
        let flat = nu.flat();
        self.coeffs.iter().zip(&flat).map(|(a, b)| a * b).sum::<Rat>() + &self.constant
    }

    fn add_scaled(&mut self, other: &AffineForm, s: &Rat) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += &(b * s);
        }
        self.constant += &(&other.constant * s);
    }
}

/// χ on the simple root with node label `i`, as an affine form in ν.
fn chi_simple(i: usize, sign: SignConvention) -> AffineForm {
    let mut f = AffineForm::zero();
    if i == 3 {
        for row in 0..3 {
            f.coeffs[3 * row] = Rat::one();
        }
        f.constant = Rat::int(-1);
        return f;
    }
    let root = ROOTS[i];
    let s = sign.factor();
    for k in 1..RANK {
        let c = root.0[k];
        if c != 0 {
            let (r, col) = exceptional_slot(k);
            f.coeffs[3 * r + col] = &s * &Rat::int(c);
        }
    }
    f
}

/// Seven rows of the root matrix forming an invertible block, and the inverse of that block.
fn root_block_inverse() -> &'static (Vec<usize>, RatMatrix) {
    static CELL: OnceLock<(Vec<usize>, RatMatrix)> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut rows: Vec<usize> = Vec::new();
        for i in 0..RANK {
            let mut candidate = rows.clone();
            candidate.push(i);
            let m = RatMatrix::from_rows(
                candidate.iter().map(|&r| ROOTS.iter().map(|a| Rat::int(a.0[r])).collect()).collect(),
            );
            if m.rank() == candidate.len() {
                rows = candidate;
            }
        }
        assert_eq!(rows.len(), 7, "simple roots are independent");
        let block = RatMatrix::from_rows(
            rows.iter().map(|&r| ROOTS.iter().map(|a| Rat::int(a.0[r])).collect()).collect(),
        );
        let mut inv = RatMatrix::zeros(7, 7);
        for j in 0..7 {
            let e: Vec<Rat> = (0..7).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect();
            let col = block.solve_unique(&e).expect("invertible block");
            for i in 0..7 {
                inv[(i, j)] = col[i].clone();
            }
        }
        (rows, inv)
    })
}

/// Coordinates of a class in the simple-root basis, if it lies in the root lattice.
pub fn root_coordinates(class: &PicClass) -> Option<[i64; 7]> {
    let (rows, inv) = root_block_inverse();
    let b: Vec<Rat> = rows.iter().map(|&r| Rat::int(class.0[r])).collect();
    let x = inv.mul_vec(&b);
    let mut out = [0; 7];
    for (o, v) in out.iter_mut().zip(&x) {
        if !v.is_integer() {
            return None;
        }
        *o = i64::try_from(v.numer()).ok()?;
    }
    // the remaining three rows decide membership
    let back = (1..7).fold(out[0] * ROOTS[0], |acc, i| acc + out[i] * ROOTS[i]);
    (back == *class).then_some(out)
}

fn chi_form(class: &PicClass, sign: SignConvention) -> Result<AffineForm, ParamError> {
    let coords = root_coordinates(class).ok_or(ParamError::NotInRootLattice(*class))?;
    let mut f = AffineForm::zero();
    for (i, &c) in coords.iter().enumerate() {
        if c != 0 {
            f.add_scaled(&chi_simple(i, sign), &Rat::int(c));
        }
    }
    Ok(f)
}

/// The period map on the root lattice.
pub fn chi(class: &PicClass, nu: &ParamVector, sign: SignConvention) -> Result<Rat, ParamError> {
    Ok(chi_form(class, sign)?.eval(nu))
}

/// `Σ marks_i χ(α_i)`, which is a constant under either convention only if it collapses.
pub fn chi_delta(nu: &ParamVector, sign: SignConvention) -> Rat {
    (0..7)
        .map(|i| chi_simple(i, sign).eval(nu) * Rat::int(MARKS[i]))
        .sum()
}

/// Solves `χ(α_i, ν') = χ(g(α_i), ν)` together with the row sums for `ν'`.
pub fn derive_action_from_chi(
    g: Generator,
    nu: &ParamVector,
    sign: SignConvention,
) -> Result<ParamVector, ParamError> {
    let map = g.lattice_map();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (i, root) in ROOTS.iter().enumerate() {
        let lhs = chi_simple(i, sign);
        let target = chi(&map.apply(root), nu, sign)?;
        rows.push(lhs.coeffs.to_vec());
        rhs.push(target - &lhs.constant);
    }
    for i in 0..3 {
        let mut r = vec![Rat::zero(); 9];
        for j in 0..3 {
            r[3 * i + j] = Rat::one();
        }
        rows.push(r);
        rhs.push(ParamVector::row_sum_target(i));
    }
    let sol = RatMatrix::from_rows(rows)
        .solve_unique(&rhs)
        .ok_or(ParamError::SingularSystem(g))?;
    ParamVector::new(std::array::from_fn(|i| {
        std::array::from_fn(|j| sol[3 * i + j].clone())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::lattice::{delta, root};

    #[test]
    fn fixture_memberships() {
        // ν_{0,1} - ν_{0,2} = 1 keeps the documentation fixture out of N00
        assert_eq!(ParamVector::fixture().membership(), Membership::N0);
        assert_eq!(ParamVector::generic_fixture().membership(), Membership::N00);
    }

    #[test]
    fn integral_triple_sum_is_not_n0() {
        let nu = ParamVector::new([
            [Rat::zero(), Rat::one(), Rat::int(-1)],
            [rat(1, 2), rat(1, 3), rat(-5, 6)],
            [rat(1, 2), rat(5, 6), rat(2, 3)],
        ])
        .unwrap();
        // 0 + 1/2 + 1/2 is an integer
        assert_eq!(nu.membership(), Membership::N);
        let repeated = ParamVector::new([
            [rat(1, 5), rat(1, 5), rat(-2, 5)],
            [rat(1, 7), rat(2, 7), rat(-3, 7)],
            [rat(1, 2), rat(5, 6), rat(2, 3)],
        ])
        .unwrap();
        assert_eq!(repeated.membership(), Membership::None);
    }

    #[test]
    fn row_sums_are_enforced() {
        let bad = ParamVector::new([
            [Rat::one(), Rat::zero(), Rat::zero()],
            [Rat::zero(), Rat::zero(), Rat::zero()],
            [Rat::zero(), Rat::zero(), Rat::int(2)],
        ]);
        assert!(matches!(bad, Err(ParamError::RowSum { row: "0", .. })));
    }

    #[test]
    fn central_reflection_on_fixture() {
        let nu = ParamVector::fixture();
        let gamma = nu.gamma();
        assert_eq!(gamma, rat(-11, 70));
        let w = act_nu(Generator::W(3), &nu);
        for i in 0..3 {
            assert_eq!(w.get(i, 0), &(nu.get(i, 0) + &rat(11, 105)));
            assert_eq!(w.get(i, 1), &(nu.get(i, 1) - &rat(11, 210)));
            assert_eq!(w.get(i, 2), &(nu.get(i, 2) - &rat(11, 210)));
        }
    }

    #[test]
    fn diagram_automorphisms_on_fixture() {
        let nu = ParamVector::fixture();
        let s1 = act_nu(Generator::S1, &nu);
        assert_eq!(s1.row(0), nu.row(1));
        assert_eq!(s1.row(1), nu.row(0));
        assert_eq!(s1.row(2), nu.row(2));
        let s2 = act_nu(Generator::S2, &nu);
        assert_eq!(s2.get(0, 0), &(nu.get(2, 0) - &rat(2, 3)));
        assert_eq!(s2.get(2, 1), &(nu.get(0, 1) + &rat(2, 3)));
    }

    #[test]
    fn chi_examples() {
        let nu = ParamVector::fixture();
        let c = SignConvention::Calibrated;
        assert_eq!(chi(&root(3), &nu, c).unwrap(), rat(-11, 70));
        assert_eq!(chi(&root(2), &nu, c).unwrap(), rat(1, 7));
        assert_eq!(chi(&root(2), &nu, SignConvention::Opposite).unwrap(), rat(-1, 7));
        assert_eq!(chi(&delta(), &nu, c).unwrap(), Rat::int(-1));
        assert_eq!(chi_delta(&nu, c), Rat::int(-1));
        assert!(matches!(
            chi(&PicClass::e(1), &nu, c),
            Err(ParamError::NotInRootLattice(_))
        ));
    }

    #[test]
    fn chi_oracle_matches_table_on_fixture() {
        let nu = ParamVector::fixture();
        for g in Generator::ALL {
            let derived = derive_action_from_chi(g, &nu, SignConvention::Calibrated).unwrap();
            assert_eq!(derived, act_nu(g, &nu), "{g}");
        }
    }

    #[test]
    fn parsing() {
        let nu: ParamVector = "1/5,2/5,-3/5, 1/7 2/7 -3/7, 1/2,5/6,2/3".parse().unwrap();
        assert_eq!(nu, ParamVector::fixture());
        let json = serde_json::to_string(&nu).unwrap();
        assert_eq!(json.parse::<ParamVector>().unwrap(), nu);
        assert!(matches!("1,2".parse::<ParamVector>(), Err(ParamError::EntryCount(2))));
        assert!(matches!(
            "1,x,-1,0,0,0,1,1,0".parse::<ParamVector>(),
            Err(ParamError::Entry { index: 1, .. })
        ));
    }
}
