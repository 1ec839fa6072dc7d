//! The Picard lattice of the blown-up plane, its E6^(1) root data and the generator action.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{Rat, RatMatrix};

pub const RANK: usize = 10;

/// A class `Σ c_i E_i` in the basis `E_0, …, E_9`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PicClass(pub [i64; RANK]);

impl PicClass {
    pub const fn zero() -> Self {
        PicClass([0; RANK])
    }

    pub const fn e(i: usize) -> Self {
        let mut c = [0; RANK];
        c[i] = 1;
        PicClass(c)
    }

    /// `E_0 - E_a - E_b - E_c`.
    pub const fn line_through(a: usize, b: usize, c: usize) -> Self {
        let mut v = [0; RANK];
        v[0] = 1;
        v[a] = -1;
        v[b] = -1;
        v[c] = -1;
        PicClass(v)
    }

    /// `E_a - E_b`.
    pub const fn diff(a: usize, b: usize) -> Self {
        let mut v = [0; RANK];
        v[a] = 1;
        v[b] = -1;
        PicClass(v)
    }

    /// If this is a basis exceptional class `E_i` with `i ≥ 1`, its index.
    pub fn as_exceptional(&self) -> Option<usize> {
        (1..RANK).find(|&i| *self == PicClass::e(i))
    }
}

/// The intersection form `E_0^2 = 1`, `E_i^2 = -1` for `i ≥ 1`.
pub fn intersect(a: &PicClass, b: &PicClass) -> i64 {
    a.0[0] * b.0[0] - (1..RANK).map(|i| a.0[i] * b.0[i]).sum::<i64>()
}

impl Add for PicClass {
    type Output = PicClass;
    fn add(self, rhs: PicClass) -> PicClass {
        PicClass(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for PicClass {
    type Output = PicClass;
    fn sub(self, rhs: PicClass) -> PicClass {
        PicClass(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for PicClass {
    type Output = PicClass;
    fn neg(self) -> PicClass {
        PicClass(self.0.map(|c| -c))
    }
}

impl Mul<PicClass> for i64 {
    type Output = PicClass;
    fn mul(self, rhs: PicClass) -> PicClass {
        PicClass(rhs.0.map(|c| self * c))
    }
}

impl fmt::Display for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}E{i}")?;
            } else {
                write!(f, "{sign}{mag}E{i}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Simple roots indexed by node label 0..=6.
pub const ROOTS: [PicClass; 7] = [
    PicClass::diff(5, 9),
    PicClass::diff(2, 3),
    PicClass::diff(1, 2),
    PicClass::line_through(1, 4, 6),
    PicClass::diff(6, 7),
    PicClass::diff(7, 8),
    PicClass::diff(4, 5),
];

/// Coefficients of the null root in the simple roots, by node label.
pub const MARKS: [i64; 7] = [1, 1, 2, 3, 2, 1, 2];

/// The three lines of the anticanonical triangle, `D_0, D_1, D_2`.
pub const TRIANGLE: [PicClass; 3] = [
    PicClass::line_through(4, 5, 9),
    PicClass::line_through(1, 2, 3),
    PicClass::line_through(6, 7, 8),
];

pub fn delta() -> PicClass {
    TRIANGLE[0] + TRIANGLE[1] + TRIANGLE[2]
}

pub fn root(i: usize) -> PicClass {
    ROOTS[i]
}

/// Index permutations of the basis classes under the two diagram automorphisms.
const SIGMA1_PERM: [usize; RANK] = [0, 4, 5, 9, 1, 2, 6, 7, 8, 3];
const SIGMA2_PERM: [usize; RANK] = [0, 1, 2, 3, 6, 7, 4, 5, 9, 8];

/// A generator of the extended affine Weyl group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    /// Reflection in the simple root with the given node label.
    W(u8),
    S1,
    S2,
}

impl Generator {
    pub const ALL: [Generator; 9] = [
        Generator::W(0),
        Generator::W(1),
        Generator::W(2),
        Generator::W(3),
        Generator::W(4),
        Generator::W(5),
        Generator::W(6),
        Generator::S1,
        Generator::S2,
    ];

    pub fn reflections() -> impl Iterator<Item = Generator> {
        (0..7).map(Generator::W)
    }

    /// The root this generator reflects in, if it is a reflection.
    pub fn root(&self) -> Option<PicClass> {
        match *self {
            Generator::W(i) => Some(ROOTS[i as usize]),
            _ => None,
        }
    }

    pub fn lattice_map(&self) -> LatticeMap {
        match *self {
            Generator::W(i) => LatticeMap::reflection(&ROOTS[i as usize]),
            Generator::S1 => LatticeMap::permutation(&SIGMA1_PERM),
            Generator::S2 => LatticeMap::permutation(&SIGMA2_PERM),
        }
    }

    /// `j` with `g(E_i) = E_j`, or `None` when `E_i` is sent to a non-basis class.
    pub fn exceptional_image(&self, i: usize) -> Option<usize> {
        self.lattice_map().apply(&PicClass::e(i)).as_exceptional()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::W(i) => write!(f, "w{i}"),
            Generator::S1 => write!(f, "s1"),
            Generator::S2 => write!(f, "s2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("unknown generator token {0:?}; expected w0..w6, s1 or s2")]
    UnknownGenerator(String),
    #[error("class {0} has self-intersection {1}, not -2")]
    NotARoot(PicClass, i64),
}

impl FromStr for Generator {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        let b = t.as_bytes();
        if b.len() != 2 {
            return Err(LatticeError::UnknownGenerator(s.to_string()));
        }
        match (b[0], b[1]) {
            (b'w', d @ b'0'..=b'6') => Ok(Generator::W(d - b'0')),
            (b's', b'1') => Ok(Generator::S1),
            (b's', b'2') => Ok(Generator::S2),
            _ => Err(LatticeError::UnknownGenerator(s.to_string())),
        }
    }
}

/// `d + (d·root) root`.
pub fn reflect(root: &PicClass, d: &PicClass) -> Result<PicClass, LatticeError> {
    let self_int = intersect(root, root);
    if self_int != -2 {
        return Err(LatticeError::NotARoot(*root, self_int));
    }
    Ok(*d + intersect(d, root) * *root)
}

/// A linear endomorphism of Pic; column `j` is the image of `E_j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeMap(pub [[i64; RANK]; RANK]);

impl LatticeMap {
    pub fn identity() -> Self {
        Self::permutation(&std::array::from_fn(|i| i))
    }

    pub fn from_images(images: [PicClass; RANK]) -> Self {
        LatticeMap(std::array::from_fn(|i| std::array::from_fn(|j| images[j].0[i])))
    }

    pub fn reflection(root: &PicClass) -> Self {
        Self::from_images(std::array::from_fn(|j| {
            reflect(root, &PicClass::e(j)).expect("simple roots square to -2")
        }))
    }

    /// `E_i ↦ E_{perm[i]}`.
    pub fn permutation(perm: &[usize; RANK]) -> Self {
        Self::from_images(std::array::from_fn(|j| PicClass::e(perm[j])))
    }

    pub fn apply(&self, d: &PicClass) -> PicClass {
        PicClass(std::array::from_fn(|i| {
            (0..RANK).map(|j| self.0[i][j] * d.0[j]).sum()
        }))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LatticeMap) -> LatticeMap {
        LatticeMap(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..RANK).map(|k| self.0[i][k] * other.0[k][j]).sum())
        }))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Whether the map preserves the intersection form on basis pairs.
    pub fn is_isometry(&self) -> bool {
        (0..RANK).all(|i| {
            (0..RANK).all(|j| {
                let (a, b) = (PicClass::e(i), PicClass::e(j));
                intersect(&self.apply(&a), &self.apply(&b)) == intersect(&a, &b)
            })
        })
    }
}

impl fmt::Debug for LatticeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Composition of a word, leftmost generator applied first.
pub fn word_map(word: &[Generator]) -> LatticeMap {
    word.iter()
        .fold(LatticeMap::identity(), |acc, g| g.lattice_map().compose(&acc))
}

pub fn diagram_automorphism(which: Generator) -> LatticeMap {
    assert!(matches!(which, Generator::S1 | Generator::S2), "not a diagram automorphism");
    which.lattice_map()
}

/// Nodes joined in the Dynkin diagram, read off from `α_i·α_j = 1`.
pub fn adjacency() -> [[bool; 7]; 7] {
    std::array::from_fn(|i| std::array::from_fn(|j| i != j && intersect(&ROOTS[i], &ROOTS[j]) == 1))
}

/// The permutation of node labels induced by a diagram automorphism, if it permutes the roots.
pub fn node_permutation(which: Generator) -> Option<[usize; 7]> {
    let m = which.lattice_map();
    let mut perm = [0; 7];
    for (i, slot) in perm.iter_mut().enumerate() {
        let image = m.apply(&ROOTS[i]);
        *slot = ROOTS.iter().position(|r| *r == image)?;
    }
    Some(perm)
}

/// Cycle notation for a node permutation, fixed points omitted.
pub fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            cycle.push(k.to_string());
            k = perm[k];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoxeterReport {
    pub relations: Vec<RelationCheck>,
    pub sigma1_nodes: String,
    pub sigma2_nodes: String,
    pub all_hold: bool,
}

impl CoxeterReport {
    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.relations.iter().filter(|r| !r.holds)
    }
}

/// Checks the presentation of the extended affine Weyl group as 10×10 matrix identities.
pub fn verify_coxeter() -> CoxeterReport {
    let mut relations = Vec::new();
    let mut check = |relation: String, holds: bool| relations.push(RelationCheck { relation, holds });
    let w: Vec<LatticeMap> = Generator::reflections().map(|g| g.lattice_map()).collect();
    let adj = adjacency();

    for (i, root) in ROOTS.iter().enumerate() {
        check(format!("a{i}.a{i} = -2"), intersect(root, root) == -2);
        check(format!("w{i}^2 = 1"), w[i].compose(&w[i]).is_identity());
    }
    for i in 0..7 {
        for j in (i + 1)..7 {
            let pairing = intersect(&ROOTS[i], &ROOTS[j]);
            check(format!("a{i}.a{j} in {{0, 1}}"), pairing == 0 || pairing == 1);
            let wij = w[i].compose(&w[j]);
            if adj[i][j] {
                let braid = wij.compose(&wij).compose(&wij);
                check(format!("(w{i} w{j})^3 = 1"), braid.is_identity());
            } else {
                check(format!("w{i} w{j} = w{j} w{i}"), wij == w[j].compose(&w[i]));
            }
        }
    }
    let d = delta();
    let marked = (0..7).fold(PicClass::zero(), |acc, i| acc + MARKS[i] * ROOTS[i]);
    check("mark-weighted root sum = D0 + D1 + D2".into(), marked == d);

    let mut node_names = Vec::new();
    for s in [Generator::S1, Generator::S2] {
        let m = s.lattice_map();
        check(format!("{s}^2 = 1"), m.compose(&m).is_identity());
        match node_permutation(s) {
            Some(perm) => {
                for i in 0..7 {
                    let conj = m.compose(&w[i]).compose(&m);
                    check(format!("{s} w{i} {s} = w{}", perm[i]), conj == w[perm[i]]);
                }
                node_names.push(cycle_notation(&perm));
            }
            None => {
                check(format!("{s} permutes the simple roots"), false);
                node_names.push("not a diagram automorphism".into());
            }
        }
    }
    let s12 = Generator::S1.lattice_map().compose(&Generator::S2.lattice_map());
    check("(s1 s2)^3 = 1".into(), s12.compose(&s12).compose(&s12).is_identity());

    for g in Generator::ALL {
        let m = g.lattice_map();
        check(format!("{g} preserves the form"), m.is_isometry());
        check(format!("{g} fixes delta"), m.apply(&d) == d);
    }

    let all_hold = relations.iter().all(|r| r.holds);
    let mut names = node_names.into_iter();
    CoxeterReport {
        relations,
        sigma1_nodes: names.next().unwrap_or_default(),
        sigma2_nodes: names.next().unwrap_or_default(),
        all_hold,
    }
}

/// Ranks of the root lattice, the triangle lattice, their sum and their intersection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SublatticeReport {
    pub root_rank: usize,
    pub triangle_rank: usize,
    pub sum_rank: usize,
    pub intersection_rank: usize,
    /// The rational intersection is spanned by the null root, with coprime coordinates in both bases.
    pub intersection_is_z_delta: bool,
}

fn class_matrix(classes: &[PicClass]) -> RatMatrix {
    let mut m = RatMatrix::zeros(RANK, classes.len());
    for (j, c) in classes.iter().enumerate() {
        for i in 0..RANK {
            m[(i, j)] = Rat::int(c.0[i]);
        }
    }
    m
}

pub fn sublattice_report() -> SublatticeReport {
    let roots = class_matrix(&ROOTS);
    let tri = class_matrix(&TRIANGLE);
    let both: Vec<PicClass> = ROOTS.iter().chain(TRIANGLE.iter()).copied().collect();
    let sum = class_matrix(&both);
    let (root_rank, triangle_rank, sum_rank) = (roots.rank(), tri.rank(), sum.rank());
    let intersection_rank = root_rank + triangle_rank - sum_rank;

    // a kernel vector (x, y) of [roots | triangle] gives the common class Σ x_i α_i = -Σ y_k D_k
    let kernel = sum.nullspace();
    let intersection_is_z_delta = kernel.len() == 1 && {
        let v = &kernel[0];
        let scale = -&v[7];
        let x: Vec<Rat> = v[..7].iter().map(|c| c / &scale).collect();
        let y: Vec<Rat> = v[7..].iter().map(|c| -c / &scale).collect();
        x == MARKS.iter().map(|&m| Rat::int(m)).collect::<Vec<_>>()
            && y.iter().all(Rat::is_one)
    };
    SublatticeReport {
        root_rank,
        triangle_rank,
        sum_rank,
        intersection_rank,
        intersection_is_z_delta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_examples() {
        assert_eq!(intersect(&delta(), &delta()), 0);
        assert_eq!(intersect(&root(3), &root(2)), 1);
        for r in ROOTS {
            assert_eq!(intersect(&r, &r), -2);
        }
    }

    #[test]
    fn reflection_examples() {
        assert_eq!(reflect(&root(1), &PicClass::e(2)).unwrap(), PicClass::e(3));
        assert_eq!(
            reflect(&root(3), &PicClass::e(1)).unwrap(),
            PicClass::e(0) - PicClass::e(4) - PicClass::e(6)
        );
        for r in ROOTS {
            assert_eq!(reflect(&r, &delta()).unwrap(), delta());
        }
        assert!(matches!(
            reflect(&PicClass::e(1), &PicClass::e(2)),
            Err(LatticeError::NotARoot(_, -1))
        ));
    }

    #[test]
    fn central_reflection_table() {
        let w3 = Generator::W(3).lattice_map();
        let e = PicClass::e;
        let expected = [
            2 * e(0) - e(1) - e(4) - e(6),
            e(0) - e(4) - e(6),
            e(2),
            e(3),
            e(0) - e(1) - e(6),
            e(5),
            e(0) - e(1) - e(4),
            e(7),
            e(8),
            e(9),
        ];
        for (j, want) in expected.iter().enumerate() {
            assert_eq!(w3.apply(&e(j)), *want, "image of E{j}");
        }
    }

    #[test]
    fn diagram_automorphism_examples() {
        let s1 = diagram_automorphism(Generator::S1);
        assert_eq!(s1.apply(&root(1)), root(0));
        assert_eq!(s1.apply(&delta()), delta());
        assert_eq!(diagram_automorphism(Generator::S2).apply(&root(3)), root(3));
    }

    #[test]
    fn full_presentation_holds() {
        let report = verify_coxeter();
        let failed: Vec<_> = report.failures().collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(report.sigma1_nodes, "(0 1)(2 6)");
        assert_eq!(report.sigma2_nodes, "(0 5)(4 6)");
    }

    #[test]
    fn adjacency_is_the_e6_star() {
        let adj = adjacency();
        let edges: Vec<(usize, usize)> = (0..7)
            .flat_map(|i| ((i + 1)..7).map(move |j| (i, j)))
            .filter(|&(i, j)| adj[i][j])
            .collect();
        assert_eq!(edges, vec![(0, 6), (1, 2), (2, 3), (3, 4), (3, 6), (4, 5)]);
    }

    #[test]
    fn sublattices() {
        let r = sublattice_report();
        assert_eq!((r.root_rank, r.triangle_rank), (7, 3));
        assert_eq!(r.intersection_rank, 1);
        assert!(r.intersection_is_z_delta);
        // one short of the full rank: the sum is not all of Pic
        assert_eq!(r.sum_rank, 9);
    }

    #[test]
    fn generator_tokens() {
        assert_eq!("W3".parse::<Generator>().unwrap(), Generator::W(3));
        assert_eq!("s2".parse::<Generator>().unwrap(), Generator::S2);
        assert!("w7".parse::<Generator>().is_err());
        assert!("s3".parse::<Generator>().is_err());
    }

    #[test]
    fn exceptional_images() {
        assert_eq!(Generator::W(1).exceptional_image(2), Some(3));
        assert_eq!(Generator::W(3).exceptional_image(1), None);
        assert_eq!(Generator::S2.exceptional_image(4), Some(6));
    }
}
