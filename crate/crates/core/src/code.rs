//! Linear codes, their weight distributions and the exhaustive enumerator
//! that every other computation in the crate is checked against.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::matrix::{binom, CodeMatrix, MatrixError};

/// Default cap on the number of codewords a single enumeration may visit.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CodeError {
    #[error("generator has rank {rank} but {rows} rows")]
    RankDeficientGenerator { rank: usize, rows: usize },
    #[error("enumeration needs {needed} codewords, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("the zero code has no nonzero codeword")]
    ZeroCode,
    #[error("transform produced a non-integral count at index {index}")]
    NonIntegralResult { index: usize },
    #[error("invalid weight distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid code parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Enumeration limits and parallelism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub budget: u64,
    /// Worker threads; `0` uses the global rayon pool.
    pub workers: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            budget: DEFAULT_ENUMERATION_BUDGET,
            workers: 0,
        }
    }
}

impl EnumerationOptions {
    pub fn with_budget(budget: u64) -> Self {
        EnumerationOptions {
            budget,
            ..Default::default()
        }
    }
}

/// Counts `A_0..A_n` of codewords by Hamming weight.
///
/// Counts are signed so that closed-form evaluations at parameters no code
/// realizes can report negative entries instead of hiding them.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    n: usize,
    k: usize,
    q: u32,
    counts: Vec<BigInt>,
}

impl fmt::Debug for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]_{} {{", self.n, self.k, self.q)?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl WeightDistribution {
    pub fn new(n: usize, k: usize, q: u32, counts: Vec<BigInt>) -> Result<Self, CodeError> {
        if counts.len() != n + 1 {
            return Err(CodeError::InvalidDistribution(format!(
                "{} counts for length {n}",
                counts.len()
            )));
        }
        if k > n {
            return Err(CodeError::InvalidParameters(format!("k = {k} exceeds n = {n}")));
        }
        Ok(WeightDistribution { n, k, q, counts })
    }

    pub fn from_u64(n: usize, k: usize, q: u32, counts: &[u64]) -> Result<Self, CodeError> {
        Self::new(n, k, q, counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.counts[i]
    }

    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    /// Smallest nonzero weight carrying a codeword.
    pub fn min_distance(&self) -> Option<usize> {
        (1..=self.n).find(|&i| self.counts[i].is_positive())
    }

    pub fn negative_entries(&self) -> Vec<usize> {
        (0..=self.n).filter(|&i| self.counts[i].is_negative()).collect()
    }

    /// Checks `A_0 = 1`, nonnegativity and `sum A_i = q^k`; returns the
    /// violated conditions.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.counts[0].is_one() {
            out.push(format!("A_0 = {} (expected 1)", self.counts[0]));
        }
        for i in self.negative_entries() {
            out.push(format!("A_{i} = {} is negative", self.counts[i]));
        }
        let expected = BigInt::from(self.q).pow(self.k as u32);
        if self.total() != expected {
            out.push(format!("sum = {} (expected q^k = {expected})", self.total()));
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }
}

/// n, k, d, d-perp and the sum of Singleton defects `sigma = n + 2 - d - d_perp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CodeParameters {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub d: usize,
    pub d_perp: usize,
}

impl CodeParameters {
    pub fn new(n: usize, k: usize, q: u32, d: usize, d_perp: usize) -> Result<Self, CodeError> {
        let bad = |msg: String| Err(CodeError::InvalidParameters(msg));
        if q < 2 {
            return bad(format!("q = {q}"));
        }
        if k > n || n == 0 {
            return bad(format!("n = {n}, k = {k}"));
        }
        if d < 1 || d > n - k + 1 {
            return bad(format!("d = {d} violates 1 <= d <= n - k + 1 = {}", n - k + 1));
        }
        if d_perp < 1 || d_perp > k + 1 {
            return bad(format!("d_perp = {d_perp} violates 1 <= d_perp <= k + 1 = {}", k + 1));
        }
        Ok(CodeParameters { n, k, q, d, d_perp })
    }

    /// Singleton defect of the code.
    pub fn defect(&self) -> usize {
        self.n - self.k + 1 - self.d
    }

    /// Singleton defect of the dual.
    pub fn dual_defect(&self) -> usize {
        self.k + 1 - self.d_perp
    }

    pub fn sigma(&self) -> usize {
        self.defect() + self.dual_defect()
    }

    /// Minimum number of known `A_i` that pins the distribution: `n - d_perp + 1`.
    pub fn required_knowns(&self) -> usize {
        self.n + 1 - self.d_perp
    }
}

/// A linear `[n, k]` code with generator `G` and parity-check matrix `H`,
/// `G H^T = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    field: Field,
    n: usize,
    k: usize,
    generator: CodeMatrix,
    parity_check: CodeMatrix,
}

impl LinearCode {
    /// Builds a code from a full-rank generator; `H` is a kernel basis of `G`.
    pub fn from_generator(generator: CodeMatrix) -> Result<Self, CodeError> {
        let rank = generator.rank();
        if rank != generator.rows() {
            return Err(CodeError::RankDeficientGenerator {
                rank,
                rows: generator.rows(),
            });
        }
        let parity_check = generator.kernel_basis();
        Ok(LinearCode {
            field: generator.field().clone(),
            n: generator.cols(),
            k: generator.rows(),
            generator,
            parity_check,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn generator(&self) -> &CodeMatrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &CodeMatrix {
        &self.parity_check
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode {
            field: self.field.clone(),
            n: self.n,
            k: self.n - self.k,
            generator: self.parity_check.clone(),
            parity_check: self.generator.clone(),
        }
    }

    pub fn encode(&self, message: &[u32]) -> Vec<u32> {
        self.generator.left_mul(message)
    }

    /// `q^k`, or `None` if it does not fit in 128 bits.
    pub fn size(&self) -> Option<u128> {
        (self.q() as u128).checked_pow(self.k as u32)
    }
}

fn check_budget(code: &LinearCode, budget: u64) -> Result<(), CodeError> {
    match code.size() {
        Some(s) if s <= budget as u128 => Ok(()),
        other => Err(CodeError::BudgetExceeded {
            needed: other.map_or_else(|| format!("{}^{}", code.q(), code.k), |s| s.to_string()),
            budget,
        }),
    }
}

/// Exact weight distribution by enumerating all `q^k` codewords.
pub fn brute_weight_distribution(code: &LinearCode) -> Result<WeightDistribution, CodeError> {
    brute_weight_distribution_with(code, &EnumerationOptions::default())
}

pub fn brute_weight_distribution_with(
    code: &LinearCode,
    opts: &EnumerationOptions,
) -> Result<WeightDistribution, CodeError> {
    check_budget(code, opts.budget)?;
    let hist = if opts.workers == 0 {
        enumerate_weights(code)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .expect("thread pool construction");
        pool.install(|| enumerate_weights(code))
    };
    WeightDistribution::from_u64(code.n, code.k, code.q(), &hist)
}

/// Enumeration kernel.
///
/// Codewords are `c + beta * g` where `g` is the last generator row and `c`
/// runs over the span of the others. The span is walked as a GF(p)-vector
/// space with an odometer over base-`p` digits, each step adding one basis
/// vector (`p` additions of the same vector cancel, so carries need no
/// subtraction). For a fixed `c` the weights of all `q` codewords
/// `c + beta * g` are read off at once: a coordinate with `g_j != 0` vanishes
/// for exactly one `beta`, namely `-c_j / g_j`.
fn enumerate_weights(code: &LinearCode) -> Vec<u64> {
    let n = code.n;
    let mut hist = vec![0u64; n + 1];
    if code.k == 0 {
        hist[0] = 1;
        return hist;
    }
    let f = &code.field;
    let (p, m) = (f.characteristic(), f.degree());
    let q = f.order();
    let g = code.generator.row(code.k - 1).to_vec();
    // position -> multiplier giving the vanishing beta, or None where g_j = 0
    let vanish: Vec<Option<u32>> = g
        .iter()
        .map(|&gj| f.inv(gj).map(|inv| f.neg(inv)))
        .collect();
    let nonzero_g = vanish.iter().filter(|v| v.is_some()).count();

    // GF(p)-basis of the span of rows 0..k-1: alpha^t * row_i, alpha^t encoded as p^t
    let mut basis: Vec<Vec<u32>> = Vec::with_capacity((code.k - 1) * m as usize);
    for i in 0..code.k - 1 {
        let row = code.generator.row(i);
        for t in 0..m {
            let scalar = p.pow(t);
            basis.push(row.iter().map(|&x| f.mul(scalar, x)).collect());
        }
    }

    // split the top digits into independent chunks
    let total_digits = basis.len();
    let mut split = 0;
    let mut chunks: u64 = 1;
    while split < total_digits && chunks < 64 {
        split += 1;
        chunks *= p as u64;
    }
    let (low, high) = basis.split_at(total_digits - split);

    let process = |chunk: u64| -> Vec<u64> {
        let mut local = vec![0u64; n + 1];
        let mut tally = vec![0u32; q as usize];
        let mut c = vec![0u32; n];
        let mut rest = chunk;
        for v in high {
            let digit = (rest % p as u64) as u32;
            rest /= p as u64;
            // digits lie in the prime subfield, encoded as themselves
            for (x, &y) in c.iter_mut().zip(v) {
                *x = f.add(*x, f.mul(digit, y));
            }
        }
        let mut digits = vec![0u32; low.len()];
        loop {
            let mut fixed = 0usize;
            for (&cj, vj) in c.iter().zip(&vanish) {
                match vj {
                    Some(mult) => tally[f.mul(cj, *mult) as usize] += 1,
                    None => fixed += (cj != 0) as usize,
                }
            }
            let base = fixed + nonzero_g;
            let mut touched = 0u64;
            for (&cj, vj) in c.iter().zip(&vanish) {
                if let Some(mult) = vj {
                    let beta = f.mul(cj, *mult) as usize;
                    let hits = tally[beta];
                    if hits > 0 {
                        local[base - hits as usize] += 1;
                        touched += 1;
                        tally[beta] = 0;
                    }
                }
            }
            local[base] += q as u64 - touched;

            let mut i = 0;
            loop {
                if i == low.len() {
                    return local;
                }
                for (x, &y) in c.iter_mut().zip(&low[i]) {
                    *x = f.add(*x, y);
                }
                digits[i] += 1;
                if digits[i] == p {
                    digits[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    };

    let partials: Vec<Vec<u64>> = (0..chunks).into_par_iter().map(process).collect();
    for part in partials {
        for (h, x) in hist.iter_mut().zip(part) {
            *h += x;
        }
    }
    hist
}

/// Straightforward enumeration (message by message, `v * G`), kept as a
/// reference for the optimized kernel.
pub fn naive_weight_distribution(code: &LinearCode, budget: u64) -> Result<WeightDistribution, CodeError> {
    check_budget(code, budget)?;
    let q = code.q();
    let mut hist = vec![0u64; code.n + 1];
    let mut msg = vec![0u32; code.k];
    loop {
        let w = code.encode(&msg).iter().filter(|&&x| x != 0).count();
        hist[w] += 1;
        let Some(i) = msg.iter().position(|&x| x + 1 < q) else {
            break;
        };
        msg[i] += 1;
        msg[..i].iter_mut().for_each(|x| *x = 0);
    }
    WeightDistribution::from_u64(code.n, code.k, q, &hist)
}

/// Minimum distance from the enumerated distribution.
pub fn min_distance(code: &LinearCode, opts: &EnumerationOptions) -> Result<usize, CodeError> {
    if code.k == 0 {
        return Err(CodeError::ZeroCode);
    }
    let a = brute_weight_distribution_with(code, opts)?;
    Ok(a.min_distance().expect("a nonzero code has a nonzero codeword"))
}

/// Parameters from a distribution: `d` directly, `d_perp` via the MacWilliams
/// transform. The dual of the full space is the zero code, whose distance is
/// taken as `n + 1`.
pub fn parameters_from_distribution(a: &WeightDistribution) -> Result<CodeParameters, CodeError> {
    if a.k() == 0 {
        return Err(CodeError::ZeroCode);
    }
    let d = a
        .min_distance()
        .ok_or_else(|| CodeError::InvalidDistribution("no nonzero codeword".into()))?;
    let b = macwilliams_transform(a)?;
    let d_perp = b.min_distance().unwrap_or(a.n() + 1);
    CodeParameters::new(a.n(), a.k(), a.q(), d, d_perp)
}

pub fn parameters(code: &LinearCode, opts: &EnumerationOptions) -> Result<CodeParameters, CodeError> {
    if code.k == 0 {
        return Err(CodeError::ZeroCode);
    }
    parameters_from_distribution(&brute_weight_distribution_with(code, opts)?)
}

/// Krawtchouk polynomial `K_j(i)` for length `n` over GF(q).
pub fn krawtchouk(n: usize, q: u32, j: usize, i: usize) -> BigInt {
    let qm1 = BigInt::from(q - 1);
    (0..=j)
        .map(|l| {
            let term = binom(i as i64, l as i64)
                * binom((n - i) as i64, (j - l) as i64)
                * Pow::pow(&qm1, (j - l) as u32);
            if l % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum()
}

/// Dual distribution `B_j = q^{-k} sum_i A_i K_j(i)`.
pub fn macwilliams_transform(a: &WeightDistribution) -> Result<WeightDistribution, CodeError> {
    let n = a.n();
    let q = a.q();
    let scale = Pow::pow(&BigInt::from(q), a.k() as u32);
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let s: BigInt = (0..=n)
            .filter(|&i| !a.get(i).is_zero())
            .map(|i| a.get(i) * krawtchouk(n, q, j, i))
            .sum();
        let (quot, rem) = s.div_rem(&scale);
        if !rem.is_zero() {
            return Err(CodeError::NonIntegralResult { index: j });
        }
        if quot.is_negative() {
            return Err(CodeError::InvalidDistribution(format!("B_{j} = {quot} is negative")));
        }
        out.push(quot);
    }
    WeightDistribution::new(n, n - a.k(), q, out)
}

/// Random `[n, k]` code: generator entries uniform, resampled until full rank.
pub fn random_code(field: &Field, n: usize, k: usize, seed: u64) -> Result<LinearCode, CodeError> {
    if k == 0 || k >= n {
        return Err(CodeError::InvalidParameters(format!("need 0 < k < n, got n = {n}, k = {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = field.order();
    loop {
        let data: Vec<u32> = (0..n * k).map(|_| rng.gen_range(0..q)).collect();
        let g = CodeMatrix::new(field, k, n, data)?;
        if g.rank() == k {
            return LinearCode::from_generator(g);
        }
    }
}

/// Reed-Solomon `[n, k]` code: polynomials of degree `< k` evaluated at the
/// field elements encoded `0..n`.
pub fn reed_solomon(field: &Field, n: usize, k: usize) -> Result<LinearCode, CodeError> {
    if n as u64 > field.order() as u64 || k == 0 || k > n {
        return Err(CodeError::InvalidParameters(format!(
            "Reed-Solomon needs 1 <= k <= n <= q, got n = {n}, k = {k}, q = {}",
            field.order()
        )));
    }
    let mut data = Vec::with_capacity(n * k);
    for i in 0..k {
        for x in 0..n as u32 {
            data.push(field.pow(x, i as i64).expect("nonnegative exponent"));
        }
    }
    LinearCode::from_generator(CodeMatrix::new(field, k, n, data)?)
}

/// Converts a count to `u64` where it fits; convenience for tests and tables.
pub fn count_u64(v: &BigInt) -> Option<u64> {
    v.to_u64()
}
