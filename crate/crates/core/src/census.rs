//! Column-subset rank census `N_M(nu, r)` and the identities built on it.
//!
//! For a parity-check matrix `H` of an `[n, k]_q` code and `1 <= nu <= n`,
//!
//! ```text
//! sum_{s=0}^{nu} binom(n - s, nu - s) A_s  =  sum_{r=0}^{nu} N_H(nu, r) q^(nu - r)
//! ```
//!
//! Both sides count pairs (column subset `I` of size `nu`, kernel vector of
//! `H_[I]`), once through the kernels and once through the codewords whose
//! support lies in `I`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{Pow, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::code::{LinearCode, WeightDistribution};
use crate::field::Field;
use crate::matrix::{binom, binom_u, CodeMatrix};

/// Default cap on the number of column subsets a census may visit.
pub const DEFAULT_CENSUS_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("census over {needed} column subsets exceeds budget {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("nu = {nu} outside 1..={cols}")]
    InvalidNu { nu: usize, cols: usize },
    #[error("nu = {nu} is not above n - d_perp = {bound}")]
    RegimeViolation { nu: usize, bound: i64 },
    #[error("distribution has length {dist} but the code has length {code}")]
    LengthMismatch { dist: usize, code: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    pub budget: u64,
    /// Worker threads; `0` uses the global rayon pool.
    pub workers: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            budget: DEFAULT_CENSUS_BUDGET,
            workers: 0,
        }
    }
}

/// Number of `nu`-column submatrices of each rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCensus {
    pub nu: usize,
    /// rank -> count; ranks with no submatrix are absent.
    pub counts: BTreeMap<usize, BigUint>,
    pub rows: usize,
    pub cols: usize,
}

impl RankCensus {
    pub fn count(&self, rank: usize) -> BigUint {
        self.counts.get(&rank).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// `binom(cols, nu)`, the number of subsets that were censused.
    pub fn expected_total(&self) -> BigUint {
        binom_u(self.cols as u64, self.nu as u64)
    }
}

/// Incrementally reduced column basis over GF(q). Every stored vector is
/// monic at its pivot and zero at all earlier pivots.
struct ColumnBasis<'a> {
    field: &'a Field,
    vectors: Vec<(usize, Vec<u32>)>,
}

impl<'a> ColumnBasis<'a> {
    fn new(field: &'a Field) -> Self {
        ColumnBasis {
            field,
            vectors: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Reduces `col` against the basis; pushes it and returns true when independent.
    fn push(&mut self, mut col: Vec<u32>) -> bool {
        let f = self.field;
        for (piv, v) in &self.vectors {
            let factor = col[*piv];
            if factor != 0 {
                for (x, &y) in col.iter_mut().zip(v) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        match col.iter().position(|&x| x != 0) {
            Some(piv) => {
                let inv = f.inv(col[piv]).expect("pivot is nonzero");
                col.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                self.vectors.push((piv, col));
                true
            }
            None => false,
        }
    }

    fn pop(&mut self) {
        self.vectors.pop();
    }
}

struct CensusWalk<'a> {
    columns: &'a [Vec<u32>],
    rows: usize,
    nu: usize,
    binoms: &'a [Vec<u64>],
}

impl CensusWalk<'_> {
    /// Counts ranks of all completions of the current partial subset.
    fn descend(&self, basis: &mut ColumnBasis, start: usize, depth: usize, counts: &mut [u64]) {
        let remaining = self.nu - depth;
        if remaining == 0 {
            counts[basis.rank()] += 1;
            return;
        }
        let cols = self.columns.len();
        if basis.rank() == self.rows {
            // already full row rank: every completion keeps it
            counts[self.rows] += self.binoms[cols - start][remaining];
            return;
        }
        for c in start..=cols - remaining {
            let independent = basis.push(self.columns[c].clone());
            self.descend(basis, c + 1, depth + 1, counts);
            if independent {
                basis.pop();
            }
        }
    }
}

/// Exhaustive rank census of the `nu`-column submatrices of `m`.
pub fn census(m: &CodeMatrix, nu: usize, opts: &CensusOptions) -> Result<RankCensus, CensusError> {
    let cols = m.cols();
    if nu == 0 || nu > cols {
        return Err(CensusError::InvalidNu { nu, cols });
    }
    let subsets = binom_u(cols as u64, nu as u64);
    if subsets > BigUint::from(opts.budget) {
        return Err(CensusError::BudgetExceeded {
            needed: subsets.to_string(),
            budget: opts.budget,
        });
    }
    let columns: Vec<Vec<u32>> = (0..cols).map(|c| m.column(c)).collect();
    let binoms: Vec<Vec<u64>> = (0..=cols)
        .map(|a| {
            (0..=nu)
                .map(|b| binom_u(a as u64, b as u64).to_u64().expect("within budget"))
                .collect()
        })
        .collect();
    let walk = CensusWalk {
        columns: &columns,
        rows: m.rows(),
        nu,
        binoms: &binoms,
    };
    let field = m.field();
    let max_rank = m.rows().min(nu);

    let run_first = |first: usize| -> Vec<u64> {
        let mut counts = vec![0u64; max_rank + 1];
        let mut basis = ColumnBasis::new(field);
        if m.rows() == 0 {
            // every submatrix of an empty matrix has rank 0
            if first == 0 {
                counts[0] = binoms[cols][nu];
            }
            return counts;
        }
        basis.push(columns[first].clone());
        walk.descend(&mut basis, first + 1, 1, &mut counts);
        counts
    };
    let run_all = || -> Vec<Vec<u64>> { (0..=cols - nu).into_par_iter().map(run_first).collect() };
    let partials = if opts.workers == 0 {
        run_all()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .expect("thread pool construction")
            .install(run_all)
    };

    let mut counts = BTreeMap::new();
    for part in partials {
        for (r, c) in part.into_iter().enumerate().filter(|(_, c)| *c > 0) {
            *counts.entry(r).or_insert_with(BigUint::zero) += c;
        }
    }
    Ok(RankCensus {
        nu,
        counts,
        rows: m.rows(),
        cols,
    })
}

/// Per-`nu` census memo for one matrix.
pub struct CensusCache<'a> {
    matrix: &'a CodeMatrix,
    opts: CensusOptions,
    entries: HashMap<usize, RankCensus>,
}

impl<'a> CensusCache<'a> {
    pub fn new(matrix: &'a CodeMatrix, opts: CensusOptions) -> Self {
        CensusCache {
            matrix,
            opts,
            entries: HashMap::new(),
        }
    }

    pub fn get(&mut self, nu: usize) -> Result<&RankCensus, CensusError> {
        if !self.entries.contains_key(&nu) {
            let c = census(self.matrix, nu, &self.opts)?;
            self.entries.insert(nu, c);
        }
        Ok(&self.entries[&nu])
    }
}

/// Both sides of the counting identity at one `nu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub nu: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
}

/// Left side, from the weight distribution alone.
pub fn identity_lhs(a: &WeightDistribution, nu: usize) -> BigInt {
    let n = a.n() as i64;
    (0..=nu)
        .map(|s| binom(n - s as i64, (nu - s) as i64) * a.get(s))
        .sum()
}

/// Right side, from a census of the parity-check matrix alone.
pub fn identity_rhs(census: &RankCensus, q: u32) -> BigInt {
    let q = BigInt::from(q);
    census
        .counts
        .iter()
        .map(|(&r, count)| BigInt::from(count.clone()) * Pow::pow(&q, (census.nu - r) as u32))
        .sum()
}

pub fn verify_counting_identity(
    code: &LinearCode,
    a: &WeightDistribution,
    nu: usize,
    opts: &CensusOptions,
) -> Result<IdentityCheck, CensusError> {
    let mut cache = CensusCache::new(code.parity_check(), *opts);
    verify_counting_identity_cached(&mut cache, code.q(), a, nu)
}

/// Same as [`verify_counting_identity`], reusing censuses across calls.
pub fn verify_counting_identity_cached(
    cache: &mut CensusCache,
    q: u32,
    a: &WeightDistribution,
    nu: usize,
) -> Result<IdentityCheck, CensusError> {
    let n = cache.matrix.cols();
    if a.n() != n {
        return Err(CensusError::LengthMismatch { dist: a.n(), code: n });
    }
    if nu == 0 || nu > n {
        return Err(CensusError::InvalidNu { nu, cols: n });
    }
    let lhs = identity_lhs(a, nu);
    let rhs = identity_rhs(cache.get(nu)?, q);
    Ok(IdentityCheck {
        nu,
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

/// True when every `nu`-column submatrix of `H` has full rank `n - k`.
/// Only defined for `nu > n - d_perp`.
pub fn check_full_rank_regime(
    code: &LinearCode,
    nu: usize,
    d_perp: usize,
    opts: &CensusOptions,
) -> Result<bool, CensusError> {
    let n = code.n();
    let bound = n as i64 - d_perp as i64;
    if (nu as i64) <= bound {
        return Err(CensusError::RegimeViolation { nu, bound });
    }
    let c = census(code.parity_check(), nu, opts)?;
    Ok(regime_holds(&c, n - code.k()))
}

/// The census is concentrated at rank `full`.
pub fn regime_holds(c: &RankCensus, full: usize) -> bool {
    c.counts.len() == 1 && c.count(full) == c.expected_total()
}
