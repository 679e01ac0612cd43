//! Closed-form weight distributions.
//!
//! None of these functions checks that a code with the given parameters
//! exists. Parameters no code realizes can produce negative entries; those
//! are returned (or reported) as they come out of the formula.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

use crate::code::{CodeParameters, WeightDistribution};
use crate::matrix::{binom, RationalMatrix};
use crate::moments::{integral_values, MomentSystem, RowLabel, SolveError, SystemKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClosedFormError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("A_{index} = {value} is negative: no code has these parameters and seeds")]
    NegativeEntry { index: usize, value: BigInt },
    #[error("nu = {nu} outside ({low}, {high}]")]
    RangeViolation { nu: usize, low: usize, high: usize },
    #[error("no tried selection of relations was nonsingular for m = {m}")]
    SingularSelection { m: usize },
    #[error("extremal solution fails a check: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// `1` when `a == b`, else `0`.
pub fn kronecker_delta(a: usize, b: usize) -> BigInt {
    if a == b {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

fn pow(q: u32, e: usize) -> BigInt {
    Pow::pow(&BigInt::from(q), e as u32)
}

fn signed(term: BigInt, negative: bool) -> BigInt {
    if negative {
        -term
    } else {
        term
    }
}

fn distribution(n: usize, k: usize, q: u32, counts: Vec<BigInt>) -> WeightDistribution {
    WeightDistribution::new(n, k, q, counts).expect("length n + 1 by construction")
}

/// Weight distribution of an `[n, k, n - k + 1]_q` MDS code:
/// `A_w = binom(n, w) sum_{j=0}^{w-d} (-1)^j binom(w, j) (q^(w-d+1-j) - 1)`.
pub fn mds_distribution(n: usize, k: usize, q: u32) -> Result<WeightDistribution, ClosedFormError> {
    if k == 0 || k > n || q < 2 {
        return Err(ClosedFormError::InvalidParameters(format!(
            "need 1 <= k <= n and q >= 2, got n = {n}, k = {k}, q = {q}"
        )));
    }
    let d = n - k + 1;
    let mut counts = vec![BigInt::zero(); n + 1];
    counts[0] = BigInt::one();
    for (w, slot) in counts.iter_mut().enumerate().skip(d) {
        let sum: BigInt = (0..=w - d)
            .map(|j| signed(binom(w as i64, j as i64) * (pow(q, w - d + 1 - j) - 1), j % 2 == 1))
            .sum();
        *slot = binom(n as i64, w as i64) * sum;
    }
    Ok(distribution(n, k, q, counts))
}

/// Weight distribution of an `[n, k, n - k]_q` near-MDS code from `A_{n-k}`.
pub fn nmds_distribution(n: usize, k: usize, q: u32, a_d: &BigInt) -> Result<WeightDistribution, ClosedFormError> {
    if k == 0 || k >= n || q < 2 {
        return Err(ClosedFormError::InvalidParameters(format!(
            "need 0 < k < n and q >= 2, got n = {n}, k = {k}, q = {q}"
        )));
    }
    if a_d.is_negative() {
        return Err(ClosedFormError::InvalidParameters(format!("A_(n-k) = {a_d} is negative")));
    }
    let d = n - k;
    let (ni, ki) = (n as i64, k as i64);
    let mut counts = vec![BigInt::zero(); n + 1];
    counts[0] = BigInt::one();
    counts[d] = a_d.clone();
    for i in 1..=k {
        let sum: BigInt = (0..i)
            .map(|j| signed(binom((d + i) as i64, j as i64) * (pow(q, i - j) - 1), j % 2 == 1))
            .sum();
        counts[d + i] = binom(ni, ki - i as i64) * sum + signed(binom(ki, i as i64) * a_d, i % 2 == 1);
    }
    Ok(distribution(n, k, q, counts))
}

/// Parameters of an almost-MDS code `[n, k, n - k]_q` whose dual has
/// distance `k - sigma + 2`, together with the `sigma - 1` weights
/// `A_{n-k}, ..., A_{n-k+sigma-2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmdsInput {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub sigma: usize,
    pub seed_weights: Vec<BigInt>,
}

impl AmdsInput {
    fn validate(&self) -> Result<(), ClosedFormError> {
        let bad = |msg: String| Err(ClosedFormError::InvalidParameters(msg));
        if self.k == 0 || self.k >= self.n || self.q < 2 {
            return bad(format!("need 0 < k < n and q >= 2, got n = {}, k = {}", self.n, self.k));
        }
        if self.sigma < 2 || self.sigma > self.k + 1 {
            return bad(format!("sigma = {} outside 2..={}", self.sigma, self.k + 1));
        }
        if self.seed_weights.len() != self.sigma - 1 {
            return bad(format!(
                "{} seed weights for sigma = {} (need {})",
                self.seed_weights.len(),
                self.sigma,
                self.sigma - 1
            ));
        }
        if let Some(s) = self.seed_weights.iter().find(|s| s.is_negative()) {
            return bad(format!("seed weight {s} is negative"));
        }
        Ok(())
    }
}

/// Almost-MDS distribution from the `sigma - 1` lowest nonzero weights, by
/// the explicit inverse of the lower-triangular Pascal block.
pub fn amds_distribution(input: &AmdsInput) -> Result<WeightDistribution, ClosedFormError> {
    input.validate()?;
    let AmdsInput { n, k, q, sigma, .. } = *input;
    let seeds = &input.seed_weights;
    let d = n - k;
    let top = k - sigma + 1;
    let (ni, ki) = (n as i64, k as i64);

    // right-hand side b_j of the triangular system
    let b: Vec<BigInt> = (0..=top)
        .map(|j| {
            let seeded: BigInt = (0..=sigma - 2)
                .map(|h| binom(ki - h as i64, (sigma - 1 + j) as i64 - h as i64) * &seeds[h])
                .sum();
            binom(ni, (d + sigma - 1 + j) as i64) * (pow(q, j + sigma - 1) - 1) - seeded
        })
        .collect();

    let mut counts = vec![BigInt::zero(); n + 1];
    counts[0] = BigInt::one();
    for (h, s) in seeds.iter().enumerate() {
        counts[d + h] = s.clone();
    }
    for i in 0..=top {
        counts[d + sigma - 1 + i] = (0..=i)
            .map(|j| signed(binom((top - j) as i64, (i - j) as i64) * &b[j], (i - j) % 2 == 1))
            .sum();
    }
    if let Some(index) = (0..=n).find(|&i| counts[i].is_negative()) {
        return Err(ClosedFormError::NegativeEntry {
            index,
            value: counts[index].clone(),
        });
    }
    Ok(distribution(n, k, q, counts))
}

/// The lower-triangular block `[binom(k - sigma + 1 - j, i - j)]`, `i, j = 0..=k-sigma+1`.
pub fn amds_pascal(k: usize, sigma: usize) -> RationalMatrix {
    let top = (k + 1 - sigma) as i64;
    let size = k + 2 - sigma;
    RationalMatrix::from_fn(size, size, |i, j| {
        BigRational::from_integer(binom(top - j as i64, i as i64 - j as i64))
    })
}

/// Explicit inverse `[(-1)^(i-j) binom(k - sigma + 1 - j, i - j)]` of [`amds_pascal`].
pub fn pascal_inverse(size: usize, k: usize, sigma: usize) -> Result<RationalMatrix, ClosedFormError> {
    if sigma > k + 1 || size != k + 2 - sigma {
        return Err(ClosedFormError::InvalidParameters(format!(
            "size must be k - sigma + 2, got size = {size}, k = {k}, sigma = {sigma}"
        )));
    }
    let top = (k + 1 - sigma) as i64;
    Ok(RationalMatrix::from_fn(size, size, |i, j| {
        let v = binom(top - j as i64, i as i64 - j as i64);
        BigRational::from_integer(signed(v, (i + j) % 2 == 1))
    }))
}

/// Length, dimension and distance of the extremal doubly-even self-dual
/// binary code `[24m, 12m, 4m + 4]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtremalParams {
    pub m: usize,
}

impl ExtremalParams {
    pub fn new(m: usize) -> Result<Self, ClosedFormError> {
        if m == 0 {
            return Err(ClosedFormError::InvalidParameters("m must be positive".into()));
        }
        Ok(ExtremalParams { m })
    }

    pub fn n(&self) -> usize {
        24 * self.m
    }

    pub fn k(&self) -> usize {
        12 * self.m
    }

    pub fn d(&self) -> usize {
        4 * self.m + 4
    }

    /// Unknown weights `4m + 4l`, `l = 1..=4m-1`.
    pub fn unknown_weights(&self) -> Vec<usize> {
        (1..4 * self.m).map(|l| 4 * self.m + 4 * l).collect()
    }

    /// Valid relation indices `20m - 4 < nu <= 24m`.
    pub fn nu_range(&self) -> std::ops::RangeInclusive<usize> {
        20 * self.m - 3..=24 * self.m
    }

    pub fn code_parameters(&self) -> CodeParameters {
        CodeParameters::new(self.n(), self.k(), 2, self.d(), self.d()).expect("extremal parameters are valid")
    }
}

/// Relations on `A_{4m+4}, ..., A_{20m}` for the given `nu` values, optionally
/// with the `2m - 1` symmetry rows `A_{4m+4l} = A_{20m-4l}`.
pub fn extremal_system(m: usize, nu_set: &[usize], include_symmetry: bool) -> Result<MomentSystem, ClosedFormError> {
    let ep = ExtremalParams::new(m)?;
    let range = ep.nu_range();
    if let Some(&nu) = nu_set.iter().find(|nu| !range.contains(nu)) {
        return Err(ClosedFormError::RangeViolation {
            nu,
            low: range.start() - 1,
            high: *range.end(),
        });
    }
    let weights = ep.unknown_weights();
    let n = ep.n();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut rhs = Vec::new();
    let mut labels = Vec::new();
    for &nu in nu_set {
        rows.push(
            weights
                .iter()
                .map(|&w| binom((n - w) as i64, nu as i64 - w as i64))
                .collect(),
        );
        let r = binom(n as i64, nu as i64) * (pow(2, nu - ep.k()) - 1) - kronecker_delta(n, nu);
        rhs.push(BigRational::from_integer(r));
        labels.push(RowLabel::Nu(nu));
    }
    if include_symmetry {
        for l in 1..2 * m {
            let (low, high) = (4 * m + 4 * l, 20 * m - 4 * l);
            rows.push(
                weights
                    .iter()
                    .map(|&w| {
                        if w == low {
                            BigInt::one()
                        } else if w == high {
                            -BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect(),
            );
            rhs.push(BigRational::zero());
            labels.push(RowLabel::Symmetry { low, high });
        }
    }
    let matrix = if rows.is_empty() {
        RationalMatrix::zeros(0, weights.len())
    } else {
        RationalMatrix::from_integer_rows(&rows).expect("rectangular")
    };
    Ok(MomentSystem {
        kind: SystemKind::Extremal,
        matrix,
        rhs,
        row_labels: labels,
        col_labels: weights,
        params: ep.code_parameters(),
    })
}

fn extremal_full(ep: &ExtremalParams, values: &BTreeMap<usize, BigInt>) -> WeightDistribution {
    let n = ep.n();
    let mut counts = vec![BigInt::zero(); n + 1];
    counts[0] = BigInt::one();
    counts[n] = BigInt::one();
    for (&w, v) in values {
        counts[w] = v.clone();
    }
    distribution(n, ep.k(), 2, counts)
}

/// Candidate relation selections: the `4m - 1` largest `nu` first, then the
/// other windows of consecutive `nu`.
fn extremal_selections(ep: &ExtremalParams) -> Vec<Vec<usize>> {
    let all: Vec<usize> = ep.nu_range().collect();
    let width = 4 * ep.m - 1;
    (0..=all.len() - width)
        .rev()
        .map(|start| all[start..start + width].to_vec())
        .collect()
}

/// Extremal weight distribution solved from `4m - 1` relations and verified
/// against all `4m + 4` relations, the symmetry pattern and the total.
pub fn extremal_distribution(m: usize) -> Result<WeightDistribution, ClosedFormError> {
    let ep = ExtremalParams::new(m)?;
    for selection in extremal_selections(&ep) {
        let system = extremal_system(m, &selection, false)?;
        let values = match system.solve(&BTreeMap::new()) {
            Ok(v) => v,
            Err(SolveError::SingularReducedSystem { .. }) => continue,
            Err(e) => return Err(e.into()),
        };
        let values = match integral_values(&values) {
            Ok(v) => v,
            Err(SolveError::NegativeSolution { .. }) => values.into_iter().map(|(w, v)| (w, v.to_integer())).collect(),
            Err(e) => return Err(e.into()),
        };
        let a = extremal_full(&ep, &values);
        verify_extremal(&ep, &a)?;
        return Ok(a);
    }
    Err(ClosedFormError::SingularSelection { m })
}

/// Checks every relation, the zero pattern, symmetry and `sum A_i = 2^(12m)`.
pub fn verify_extremal(ep: &ExtremalParams, a: &WeightDistribution) -> Result<(), ClosedFormError> {
    let n = ep.n();
    let fail = |msg: String| Err(ClosedFormError::VerificationFailed(msg));
    let all: Vec<usize> = ep.nu_range().collect();
    let system = extremal_system(ep.m, &all, true)?;
    if !system.satisfied_by(a) {
        return fail("a relation is violated".into());
    }
    for i in 0..=n {
        if i % 4 != 0 && !a.get(i).is_zero() {
            return fail(format!("A_{i} is nonzero but {i} is not a multiple of 4"));
        }
        if a.get(i) != a.get(n - i) {
            return fail(format!("A_{i} != A_{}", n - i));
        }
    }
    if (1..ep.d()).any(|i| !a.get(i).is_zero()) {
        return fail("nonzero weight below the minimum distance".into());
    }
    if a.total() != pow(2, ep.k()) {
        return fail(format!("total {} is not 2^{}", a.total(), ep.k()));
    }
    Ok(())
}
