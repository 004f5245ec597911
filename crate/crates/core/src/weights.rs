//! Highest-weight bookkeeping for `U(m)`.
//!
//! A highest weight is a nonincreasing integer tuple. The representations that
//! occur on the Rumin complex of `S^{2n+1}` are labelled by four integers
//! `(q, j, i, p)` and carry the weight
//! `(q, 1 repeated j times, 0 repeated n-1-i-j times, -1 repeated i times, -p)`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Largest `n` accepted by [`RuminLabel::new`].
pub const MAX_SPHERE_INDEX: u32 = 1 << 12;

/// Largest `|q|`, `|p|` accepted by [`RuminLabel::new`]; keeps every exact
/// eigenvalue inside `i128`.
pub const MAX_LABEL_PARAMETER: i64 = 1 << 24;

/// Default work budget of the Gelfand–Tsetlin oracle, in patterns visited.
pub const DEFAULT_GT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("a highest weight needs at least one entry")]
    Empty,
    #[error("highest weight entries must be nonincreasing (position {position})")]
    NotNonincreasing { position: usize },
    #[error("(n={n}, q={q}, j={j}, i={i}, p={p}) is not a label of the Rumin complex")]
    InvalidLabel { n: u32, q: i64, j: u32, i: u32, p: i64 },
    #[error("special dimension requires n >= 1, i <= n and p >= 1 (got n={n}, i={i}, p={p})")]
    InvalidSpecialDimension { n: u32, i: u32, p: i64 },
    #[error("Gelfand-Tsetlin enumeration exceeded its budget of {budget} patterns")]
    BudgetExceeded { budget: u64 },
}

/// A dominant weight `λ_1 ≥ λ_2 ≥ … ≥ λ_m` of `U(m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HighestWeight(Vec<i64>);

impl HighestWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self, WeightError> {
        if entries.is_empty() {
            return Err(WeightError::Empty);
        }
        if let Some(position) = entries.windows(2).position(|w| w[0] < w[1]) {
            return Err(WeightError::NotNonincreasing {
                position: position + 1,
            });
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// The `m` of `U(m)`.
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Tensor with the `c`-th power of the determinant.
    pub fn twist(&self, c: i64) -> Self {
        Self(self.0.iter().map(|x| x + c).collect())
    }

    /// Highest weight of the contragredient representation, `-reverse(λ)`.
    pub fn dual(&self) -> Self {
        Self(self.0.iter().rev().map(|x| -x).collect())
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// The seven parameter families a label can belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelCase {
    /// `q = j = i = p = 0`: the constants.
    I,
    /// `i + j ≤ n - 2`, `p, q ≥ 1`.
    II,
    /// `i ≤ n - 1`, `j = 0`, `q = 0`, `p ≥ 1`.
    III,
    /// `i = 0`, `j ≤ n - 1`, `p = 0`, `q ≥ 1`.
    IV,
    /// `i + j = n - 1`, `p, q ≥ 1`.
    V,
    /// `i = n - 1`, `j = 0`, `q = -1`, `p ≥ 1`.
    VI,
    /// `i = 0`, `j = n - 1`, `p = -1`, `q ≥ 1`.
    VII,
}

impl LabelCase {
    pub const ALL: [LabelCase; 7] = [
        LabelCase::I,
        LabelCase::II,
        LabelCase::III,
        LabelCase::IV,
        LabelCase::V,
        LabelCase::VI,
        LabelCase::VII,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LabelCase::I => "I",
            LabelCase::II => "II",
            LabelCase::III => "III",
            LabelCase::IV => "IV",
            LabelCase::V => "V",
            LabelCase::VI => "VI",
            LabelCase::VII => "VII",
        }
    }

    /// Classify raw parameters, or `None` if they are not a label.
    pub fn classify(n: u32, q: i64, j: u32, i: u32, p: i64) -> Option<LabelCase> {
        if n == 0 || i + j >= n {
            return None;
        }
        let (n, i, j) = (i64::from(n), i64::from(i), i64::from(j));
        let case = if q == 0 && j == 0 && i == 0 && p == 0 {
            LabelCase::I
        } else if p >= 1 && q >= 1 && i + j <= n - 2 {
            LabelCase::II
        } else if p >= 1 && q >= 1 && i + j == n - 1 {
            LabelCase::V
        } else if j == 0 && q == 0 && p >= 1 {
            LabelCase::III
        } else if i == 0 && p == 0 && q >= 1 {
            LabelCase::IV
        } else if i == n - 1 && j == 0 && q == -1 && p >= 1 {
            LabelCase::VI
        } else if i == 0 && j == n - 1 && p == -1 && q >= 1 {
            LabelCase::VII
        } else {
            return None;
        };
        Some(case)
    }
}

impl fmt::Display for LabelCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A label `(q, j, i, p)` of an irreducible summand of the Rumin complex on
/// `S^{2n+1}`. Construction validates it against the seven families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuminLabel {
    n: u32,
    q: i64,
    j: u32,
    i: u32,
    p: i64,
    case: LabelCase,
}

impl RuminLabel {
    pub fn new(n: u32, q: i64, j: u32, i: u32, p: i64) -> Result<Self, WeightError> {
        let invalid = WeightError::InvalidLabel { n, q, j, i, p };
        if n > MAX_SPHERE_INDEX || q.abs() > MAX_LABEL_PARAMETER || p.abs() > MAX_LABEL_PARAMETER {
            return Err(invalid);
        }
        let case = LabelCase::classify(n, q, j, i, p).ok_or(invalid)?;
        Ok(Self { n, q, j, i, p, case })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn case(&self) -> LabelCase {
        self.case
    }

    /// The complex-conjugate label `(p, i, j, q)`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.n, self.p, self.i, self.j, self.q)
            .expect("conjugation preserves the label families")
    }

    pub fn weight(&self) -> HighestWeight {
        label_to_weight(self)
    }
}

impl fmt::Display for RuminLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(q={}, j={}, i={}, p={}; n={})",
            self.q, self.j, self.i, self.p, self.n
        )
    }
}

/// Every valid label on `S^{2n+1}` with `p, q ≤ max`, ordered by `(i, j, q, p)`.
pub fn labels_up_to(n: u32, max: u32) -> Vec<RuminLabel> {
    let mut out = Vec::new();
    let max = i64::from(max);
    for i in 0..n {
        for j in 0..n - i {
            for q in -1..=max {
                for p in -1..=max {
                    if let Ok(l) = RuminLabel::new(n, q, j, i, p) {
                        out.push(l);
                    }
                }
            }
        }
    }
    out
}

/// Expand a label into its length-`(n+1)` highest weight.
pub fn label_to_weight(label: &RuminLabel) -> HighestWeight {
    let n = label.n as usize;
    let (j, i) = (label.j as usize, label.i as usize);
    let zeros = n - 1 - i - j;
    let mut entries = Vec::with_capacity(n + 1);
    entries.push(label.q);
    entries.extend(core::iter::repeat(1).take(j));
    entries.extend(core::iter::repeat(0).take(zeros));
    entries.extend(core::iter::repeat(-1).take(i));
    entries.push(-label.p);
    HighestWeight::new(entries).expect("valid labels expand to dominant weights")
}

/// `∏_{a<b} (λ_a - λ_b + b - a) / (b - a)`, exactly.
pub fn weyl_dimension(w: &HighestWeight) -> BigUint {
    let lambda = w.entries();
    let m = lambda.len();

    // Fast path: both products fit in u128.
    let mut num: Option<u128> = Some(1);
    let mut den: Option<u128> = Some(1);
    for a in 0..m {
        for b in a + 1..m {
            let top = (lambda[a] - lambda[b]) as u128 + (b - a) as u128;
            num = num.and_then(|x| x.checked_mul(top));
            den = den.and_then(|x| x.checked_mul((b - a) as u128));
        }
    }
    if let (Some(num), Some(den)) = (num, den) {
        assert_eq!(num % den, 0, "Weyl product is not an integer for {w}");
        return BigUint::from(num / den);
    }

    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for a in 0..m {
        for b in a + 1..m {
            let top = (lambda[a] - lambda[b]) as u128 + (b - a) as u128;
            num *= BigUint::from(top);
            den *= BigUint::from((b - a) as u64);
        }
    }
    assert!(
        (&num % &den).is_zero(),
        "Weyl product is not an integer for {w}"
    );
    num / den
}

/// Counts Gelfand–Tsetlin patterns by explicit depth-first enumeration.
///
/// Deliberately shares nothing with [`weyl_dimension`]: every pattern is
/// visited, so the cost is linear in the dimension.
#[derive(Debug, Clone, Copy)]
pub struct GtOracle {
    budget: u64,
}

impl Default for GtOracle {
    fn default() -> Self {
        Self {
            budget: DEFAULT_GT_BUDGET,
        }
    }
}

impl GtOracle {
    pub fn with_budget(budget: u64) -> Self {
        Self { budget }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn count(&self, w: &HighestWeight) -> Result<u64, WeightError> {
        let mut visited = 0u64;
        self.descend(w.entries(), &mut visited)?;
        Ok(visited)
    }

    fn descend(&self, row: &[i64], visited: &mut u64) -> Result<(), WeightError> {
        if row.len() == 1 {
            *visited += 1;
            if *visited > self.budget {
                return Err(WeightError::BudgetExceeded {
                    budget: self.budget,
                });
            }
            return Ok(());
        }
        let mut next = Vec::with_capacity(row.len() - 1);
        self.fill(row, &mut next, visited)
    }

    // Chooses row[a] >= next[a] >= row[a+1] one position at a time.
    fn fill(&self, row: &[i64], next: &mut Vec<i64>, visited: &mut u64) -> Result<(), WeightError> {
        let a = next.len();
        if a == row.len() - 1 {
            let below = next.clone();
            return self.descend(&below, visited);
        }
        for v in row[a + 1]..=row[a] {
            next.push(v);
            self.fill(row, next, visited)?;
            next.pop();
        }
        Ok(())
    }
}

/// Number of Gelfand–Tsetlin patterns with top row `w`, using the default budget.
pub fn gt_pattern_count(w: &HighestWeight) -> Result<u64, WeightError> {
    GtOracle::default().count(w)
}

/// `dim V(0 repeated n-i times, -1 repeated i times, -p) = p/(p+i) · C(n,i) · C(p+n,n)`.
pub fn special_dimension(n: u32, i: u32, p: i64) -> Result<BigUint, WeightError> {
    if n == 0 || i > n || p < 1 {
        return Err(WeightError::InvalidSpecialDimension { n, i, p });
    }
    let n_big = BigUint::from(n);
    let p_big = BigUint::from(p as u64);
    let numerator = &p_big
        * num_integer::binomial(n_big.clone(), BigUint::from(i))
        * num_integer::binomial(&p_big + &n_big, n_big);
    let denominator = p_big + BigUint::from(i);
    assert!((&numerator % &denominator).is_zero());
    Ok(numerator / denominator)
}

/// Lossy conversion used by the floating-point summation routes.
pub(crate) fn dimension_to_f64(d: &BigUint) -> f64 {
    d.to_f64().unwrap_or(f64::INFINITY)
}
