//! Irreducible decomposition of the Rumin complex on `S^{2n+1}` and the exact
//! spectrum of the Rumin Laplacian.
//!
//! Every summand `Ψ^{(s,t)}_{(q,j,i,p)}` of the bidegree space `E^{s,t}` is an
//! [`IrrepBlock`]. The Laplacian acts on it by the scalar returned from
//! [`eigenvalue_formula`], which depends on the label only through its highest
//! weight. Degrees above `n` are obtained from the Hodge-star mirror
//! `k ↦ 2n+1-k`.

mod norms;

pub use norms::{
    case_v_mixed_eigenvalue, lie_derivative_eigenvalue, norm_constants, norm_ratio_operator_norms,
    norm_route_eigenvalue, operator_norm_squares, squared_norm, MixedRoute, NormConstants,
    OperatorNormSquares,
};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::weights::{label_to_weight, weyl_dimension, LabelCase, RuminLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("sphere index n must be at least 1")]
    InvalidSphere,
    #[error("bidegree ({s},{t}) has degree above n={n}; use the mirror degree")]
    MirrorRequired { n: u32, s: u32, t: u32 },
    #[error("degree {degree} is outside 0..={max} for n={n}", max = 2 * n + 1)]
    DegreeOutOfRange { n: u32, degree: u32 },
    #[error("label {0} is not in Case II or Case V")]
    NotCaseIIOrV(RuminLabel),
    #[error("label {0} does not satisfy i + j = n - 1 with p, q >= 1")]
    NotCaseV(RuminLabel),
    #[error("no norm formula for label {label} in bidegree {bidegree}")]
    NormOutOfRange { label: RuminLabel, bidegree: Bidegree },
}

/// An exact nonnegative eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Eigenvalue(Ratio<i128>);

impl Eigenvalue {
    pub const ZERO: Eigenvalue = Eigenvalue(Ratio::new_raw(0, 1));

    pub fn new(value: Ratio<i128>) -> Self {
        debug_assert!(value >= Ratio::zero());
        Self(value)
    }

    pub fn ratio(&self) -> Ratio<i128> {
        self.0
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

/// Holomorphic/antiholomorphic bidegree `(s, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bidegree {
    pub s: u32,
    pub t: u32,
}

impl Bidegree {
    pub const fn new(s: u32, t: u32) -> Self {
        Self { s, t }
    }

    pub const fn degree(&self) -> u32 {
        self.s + self.t
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.t)
    }
}

/// `((p+i)(q+n-i) + (q+j)(p+n-j))^2 / (4 (n-i-j)^2)`.
pub fn eigenvalue_formula(label: &RuminLabel) -> Eigenvalue {
    let n = i128::from(label.n());
    let (q, p) = (i128::from(label.q()), i128::from(label.p()));
    let (j, i) = (i128::from(label.j()), i128::from(label.i()));
    let x = (p + i) * (q + n - i) + (q + j) * (p + n - j);
    let d = n - i - j;
    Eigenvalue(Ratio::new(x * x, 4 * d * d))
}

/// Bidegrees `(s,t)` with `Ψ^{(s,t)}_label ≠ 0`, listed per label case.
pub fn blocks_of_label(label: &RuminLabel) -> Vec<Bidegree> {
    let (n, i, j) = (label.n(), label.i(), label.j());
    let b = Bidegree::new;
    match label.case() {
        LabelCase::I => alloc::vec![b(0, 0)],
        LabelCase::II => alloc::vec![b(i, j), b(i + 1, j), b(i, j + 1), b(i + 1, j + 1)],
        LabelCase::III => alloc::vec![b(i, 0), b(i + 1, 0)],
        LabelCase::IV => alloc::vec![b(0, j), b(0, j + 1)],
        LabelCase::V => alloc::vec![b(i, j), b(i + 1, j), b(i, j + 1)],
        LabelCase::VI => alloc::vec![b(n, 0)],
        LabelCase::VII => alloc::vec![b(0, n)],
    }
}

/// One summand `Ψ^{(s,t)}_{(q,j,i,p)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrepBlock {
    pub label: RuminLabel,
    pub bidegree: Bidegree,
    pub eigenvalue: Eigenvalue,
    pub dimension: BigUint,
}

impl IrrepBlock {
    pub fn new(label: RuminLabel, bidegree: Bidegree) -> Self {
        Self {
            label,
            bidegree,
            eigenvalue: eigenvalue_formula(&label),
            dimension: weyl_dimension(&label_to_weight(&label)),
        }
    }

    pub fn degree(&self) -> u32 {
        self.bidegree.degree()
    }
}

/// A label parameter inside a [`LabelFamily`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    /// Structurally pinned (the `0` and `-1` values of the boundary cases).
    Fixed(i64),
    /// Ranges over `from, from+1, …`; truncated at the level `N`.
    Free { from: i64 },
}

impl Param {
    pub fn is_free(&self) -> bool {
        matches!(self, Param::Free { .. })
    }

    fn values(&self, max: u32) -> impl Iterator<Item = i64> + Clone {
        let (lo, hi) = match *self {
            Param::Fixed(v) => (v, v),
            Param::Free { from } => (from, i64::from(max)),
        };
        lo..=hi
    }

    fn contains(&self, x: i64) -> bool {
        match *self {
            Param::Fixed(v) => x == v,
            Param::Free { from } => x >= from,
        }
    }

    fn representative(&self) -> i64 {
        match *self {
            Param::Fixed(v) => v,
            Param::Free { from } => from,
        }
    }
}

/// An infinite family of labels contributing to one bidegree space, all in a
/// single label case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelFamily {
    pub n: u32,
    pub j: u32,
    pub i: u32,
    pub q: Param,
    pub p: Param,
    /// The bidegree the family contributes to.
    pub bidegree: Bidegree,
    /// Which of the seven bidegree types `E^{s,t}` is.
    pub bidegree_case: LabelCase,
    /// The case of every label in the family.
    pub label_case: LabelCase,
}

impl LabelFamily {
    /// Materialise the labels with free parameters `≤ max`, `q` outermost.
    pub fn labels(&self, max: u32) -> impl Iterator<Item = RuminLabel> + '_ {
        let ps = self.p.values(max);
        self.q.values(max).flat_map(move |q| {
            ps.clone().map(move |p| {
                RuminLabel::new(self.n, q, self.j, self.i, p)
                    .expect("family parameters stay inside the label ranges")
            })
        })
    }

    pub fn contains(&self, label: &RuminLabel) -> bool {
        label.n() == self.n
            && label.j() == self.j
            && label.i() == self.i
            && self.q.contains(label.q())
            && self.p.contains(label.p())
    }

    pub fn free_parameters(&self) -> usize {
        usize::from(self.q.is_free()) + usize::from(self.p.is_free())
    }
}

/// Which of the seven types the bidegree space `E^{s,t}` belongs to.
pub fn bidegree_case(n: u32, bidegree: Bidegree) -> Result<LabelCase, SpectrumError> {
    if n == 0 {
        return Err(SpectrumError::InvalidSphere);
    }
    let Bidegree { s, t } = bidegree;
    if s + t > n {
        return Err(SpectrumError::MirrorRequired { n, s, t });
    }
    Ok(match (s, t) {
        (0, 0) => LabelCase::I,
        (s, 0) if s == n => LabelCase::VI,
        (0, t) if t == n => LabelCase::VII,
        (_, 0) => LabelCase::III,
        (0, _) => LabelCase::IV,
        (s, t) if s + t == n => LabelCase::V,
        _ => LabelCase::II,
    })
}

/// Label families whose blocks contain bidegree `(s, t)`, `s + t ≤ n`.
///
/// Families are split so that each carries one label case; together they list
/// every irreducible of `E^{s,t}` exactly once.
pub fn decompose(n: u32, s: u32, t: u32) -> Result<Vec<LabelFamily>, SpectrumError> {
    let bidegree = Bidegree::new(s, t);
    let case = bidegree_case(n, bidegree)?;
    // (j, i, lowest q, lowest p) of each summand family.
    let pieces: Vec<(u32, u32, i64, i64)> = match case {
        LabelCase::I => alloc::vec![(0, 0, 0, 0)],
        LabelCase::II => alloc::vec![(t, s, 1, 1), (t, s - 1, 1, 1), (t - 1, s, 1, 1), (t - 1, s - 1, 1, 1)],
        LabelCase::III => alloc::vec![(0, s, 0, 1), (0, s - 1, 0, 1)],
        LabelCase::IV => alloc::vec![(t, 0, 1, 0), (t - 1, 0, 1, 0)],
        LabelCase::V => alloc::vec![(t, s - 1, 1, 1), (t - 1, s, 1, 1), (t - 1, s - 1, 1, 1)],
        LabelCase::VI => alloc::vec![(0, n - 1, -1, 1)],
        LabelCase::VII => alloc::vec![(n - 1, 0, 1, -1)],
    };

    let mut families = Vec::new();
    for (j, i, q_min, p_min) in pieces {
        for q in split_range(q_min) {
            for p in split_range(p_min) {
                let label_case =
                    LabelCase::classify(n, q.representative(), j, i, p.representative())
                        .expect("decomposition pieces consist of valid labels");
                families.push(LabelFamily {
                    n,
                    j,
                    i,
                    q,
                    p,
                    bidegree,
                    bidegree_case: case,
                    label_case,
                });
            }
        }
    }
    Ok(families)
}

// {min, …} → pinned boundary values below 1, then the free tail from 1.
fn split_range(min: i64) -> impl Iterator<Item = Param> {
    (min..1)
        .map(Param::Fixed)
        .chain(core::iter::once(Param::Free { from: 1 }))
}

/// Everything that aggregated into one eigenvalue of a slice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Contributor {
    pub label: RuminLabel,
    /// Bidegree in the canonical degree `≤ n`.
    pub bidegree: Bidegree,
    pub bidegree_case: LabelCase,
}

/// The multiset of eigenvalues of the Laplacian on degree-`k` forms, truncated
/// at level `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumSlice {
    pub n: u32,
    pub degree: u32,
    pub truncation: u32,
    entries: BTreeMap<Eigenvalue, BigUint>,
    contributors: BTreeMap<Eigenvalue, Vec<Contributor>>,
}

impl SpectrumSlice {
    pub fn empty(n: u32, degree: u32, truncation: u32) -> Self {
        Self {
            n,
            degree,
            truncation,
            entries: BTreeMap::new(),
            contributors: BTreeMap::new(),
        }
    }

    /// The degree `≤ n` whose blocks produced this slice.
    pub fn canonical_degree(&self) -> u32 {
        canonical_degree(self.n, self.degree)
    }

    pub fn entries(&self) -> &BTreeMap<Eigenvalue, BigUint> {
        &self.entries
    }

    pub fn contributors(&self, eigenvalue: &Eigenvalue) -> &[Contributor] {
        self.contributors
            .get(eigenvalue)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn multiplicity(&self, eigenvalue: &Eigenvalue) -> BigUint {
        self.entries.get(eigenvalue).cloned().unwrap_or_default()
    }

    pub fn kernel_dimension(&self) -> BigUint {
        self.multiplicity(&Eigenvalue::ZERO)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Equal eigenvalue/multiplicity maps, ignoring provenance and degree.
    pub fn same_spectrum(&self, other: &SpectrumSlice) -> bool {
        self.entries == other.entries
    }

    pub fn insert(&mut self, block: &IrrepBlock, bidegree_case: LabelCase) {
        *self.entries.entry(block.eigenvalue).or_default() += &block.dimension;
        self.contributors
            .entry(block.eigenvalue)
            .or_default()
            .push(Contributor {
                label: block.label,
                bidegree: block.bidegree,
                bidegree_case,
            });
    }

    /// Combine two partial slices of the same `(n, degree, N)`; associative
    /// and commutative up to contributor order, which is normalised.
    pub fn merge(mut self, other: SpectrumSlice) -> SpectrumSlice {
        debug_assert_eq!((self.n, self.degree), (other.n, other.degree));
        for (mu, m) in other.entries {
            *self.entries.entry(mu).or_default() += m;
        }
        for (mu, list) in other.contributors {
            self.contributors.entry(mu).or_default().extend(list);
        }
        for list in self.contributors.values_mut() {
            list.sort();
        }
        self
    }
}

/// `min(k, 2n+1-k)`.
pub fn canonical_degree(n: u32, degree: u32) -> u32 {
    if degree > n {
        2 * n + 1 - degree
    } else {
        degree
    }
}

/// Families contributing to degree `k ≤ n`, in bidegree order `s = 0..=k`.
pub fn families_in_degree(n: u32, k: u32) -> Result<Vec<LabelFamily>, SpectrumError> {
    if n == 0 {
        return Err(SpectrumError::InvalidSphere);
    }
    if k > n {
        return Err(SpectrumError::MirrorRequired { n, s: k, t: 0 });
    }
    let mut out = Vec::new();
    for s in 0..=k {
        out.extend(decompose(n, s, k - s)?);
    }
    Ok(out)
}

pub fn spectrum_slice(n: u32, degree: u32, truncation: u32) -> Result<SpectrumSlice, SpectrumError> {
    if n == 0 {
        return Err(SpectrumError::InvalidSphere);
    }
    if degree > 2 * n + 1 {
        return Err(SpectrumError::DegreeOutOfRange { n, degree });
    }
    let k = canonical_degree(n, degree);
    let mut slice = SpectrumSlice::empty(n, degree, truncation);
    for family in families_in_degree(n, k)? {
        for label in family.labels(truncation) {
            slice.insert(&IrrepBlock::new(label, family.bidegree), family.bidegree_case);
        }
    }
    Ok(slice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn label(n: u32, q: i64, j: u32, i: u32, p: i64) -> RuminLabel {
        RuminLabel::new(n, q, j, i, p).unwrap()
    }

    fn ev(num: i128, den: i128) -> Eigenvalue {
        Eigenvalue::new(Ratio::new(num, den))
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(eigenvalue_formula(&label(1, 1, 0, 0, 1)), ev(4, 1));
        assert_eq!(eigenvalue_formula(&label(1, -1, 0, 0, 1)), ev(1, 1));
        assert_eq!(eigenvalue_formula(&label(1, 0, 0, 0, 0)), Eigenvalue::ZERO);
        assert_eq!(ev(6, 4).to_string(), "3/2");
    }

    #[test]
    fn decompose_low_degree() {
        let fams = decompose(1, 0, 0).unwrap();
        assert!(fams.iter().all(|f| f.bidegree_case == LabelCase::I));
        let cases: BTreeSet<_> = fams.iter().map(|f| f.label_case).collect();
        // n = 1 has no Case II; (q,0,0,p) with p, q >= 1 is Case V.
        assert_eq!(
            cases,
            [LabelCase::I, LabelCase::III, LabelCase::IV, LabelCase::V].into_iter().collect()
        );

        let fams = decompose(2, 1, 1).unwrap();
        assert_eq!(fams.len(), 3);
        assert!(fams.iter().all(|f| f.bidegree_case == LabelCase::V));
        let shapes: BTreeSet<_> = fams.iter().map(|f| (f.j, f.i)).collect();
        assert_eq!(shapes, [(1, 0), (0, 1), (0, 0)].into_iter().collect());
        assert!(fams
            .iter()
            .all(|f| f.q == Param::Free { from: 1 } && f.p == Param::Free { from: 1 }));

        let fams = decompose(1, 1, 0).unwrap();
        let got: BTreeSet<_> = fams.iter().map(|f| (f.label_case, f.q)).collect();
        assert_eq!(
            got,
            [
                (LabelCase::VI, Param::Fixed(-1)),
                (LabelCase::III, Param::Fixed(0)),
                (LabelCase::V, Param::Free { from: 1 }),
            ]
            .into_iter()
            .collect()
        );
    }

    #[test]
    fn decompose_rejects_upper_half() {
        assert_eq!(
            decompose(2, 2, 1),
            Err(SpectrumError::MirrorRequired { n: 2, s: 2, t: 1 })
        );
    }

    #[test]
    fn decompose_agrees_with_label_blocks() {
        let max = 4;
        for n in 1..=5u32 {
            let mut from_bidegrees = BTreeSet::new();
            for k in 0..=n {
                for s in 0..=k {
                    for fam in decompose(n, s, k - s).unwrap() {
                        for l in fam.labels(max) {
                            // multiplicity one inside each E^{s,t}
                            assert!(from_bidegrees.insert((l, fam.bidegree)));
                            assert_eq!(l.case(), fam.label_case);
                        }
                    }
                }
            }
            let mut from_labels = BTreeSet::new();
            for &(l, _) in &from_bidegrees {
                for b in blocks_of_label(&l) {
                    from_labels.insert((l, b));
                }
            }
            assert_eq!(from_bidegrees, from_labels, "n = {n}");
        }
    }

    #[test]
    fn slice_n1_degree0_level1() {
        let slice = spectrum_slice(1, 0, 1).unwrap();
        let got: Vec<_> = slice
            .entries()
            .iter()
            .map(|(mu, m)| (*mu, m.to_u64().unwrap()))
            .collect();
        // (0,0,0,0); (0,0,0,1) ⊕ (1,0,0,0) with dim 2 each at 1/4; (1,0,0,1) with dim 3 at 4.
        assert_eq!(got, alloc::vec![(Eigenvalue::ZERO, 1), (ev(1, 4), 4), (ev(4, 1), 3)]);
    }

    #[test]
    fn slice_n2_degree1_quarter() {
        let slice = spectrum_slice(2, 1, 1).unwrap();
        assert_eq!(slice.multiplicity(&ev(1, 4)), BigUint::from(6u32));
    }

    #[test]
    fn mirror_is_verbatim() {
        let a = spectrum_slice(1, 3, 7).unwrap();
        let b = spectrum_slice(1, 0, 7).unwrap();
        assert!(a.same_spectrum(&b));
        assert_eq!(a.degree, 3);
        assert_eq!(a.canonical_degree(), 0);
        assert_eq!(
            spectrum_slice(2, 6, 1),
            Err(SpectrumError::DegreeOutOfRange { n: 2, degree: 6 })
        );
    }

    #[test]
    fn merge_is_order_independent() {
        let blocks: Vec<_> = families_in_degree(2, 1)
            .unwrap()
            .into_iter()
            .flat_map(|f| {
                f.labels(3)
                    .map(|l| (IrrepBlock::new(l, f.bidegree), f.bidegree_case))
                    .collect::<Vec<_>>()
            })
            .collect();
        let (left, right) = blocks.split_at(blocks.len() / 3);
        let fill = |part: &[(IrrepBlock, LabelCase)]| {
            let mut s = SpectrumSlice::empty(2, 1, 3);
            for (b, c) in part {
                s.insert(b, *c);
            }
            s
        };
        let ab = fill(left).merge(fill(right));
        let ba = fill(right).merge(fill(left));
        assert_eq!(ab, ba);
        assert!(ab.same_spectrum(&spectrum_slice(2, 1, 3).unwrap()));
    }
}
