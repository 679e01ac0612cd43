//! Linear constraints on weight distributions and their exact solution.
//!
//! Two families of `d_perp` equations in the unknowns `A_0..A_n`:
//!
//! * the truncated-Pascal system, one row per `n - d_perp < nu <= n`:
//!   `sum_s binom(n - s, nu - s) A_s = binom(n, nu) q^(nu + k - n)`;
//! * the Pless moments, one row per `0 <= nu < d_perp`:
//!   `sum_i binom(i, nu) A_i = q^(k - nu) binom(n, nu) (q - 1)^nu`.
//!
//! Every `d_perp x d_perp` minor of either coefficient matrix is nonzero, so
//! fixing any `n - d_perp + 1` of the `A_i` leaves a uniquely solvable system.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};
use thiserror::Error;

use crate::code::{CodeError, CodeParameters, WeightDistribution};
use crate::matrix::{binom, solve_exact, MatrixError, RationalMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemKind {
    /// Truncated-Pascal rows for `nu` in `(n - d_perp, n]`.
    Pascal,
    /// Pless moments for `nu` in `[0, d_perp)`.
    Pless,
    /// Extremal doubly-even self-dual relations in the multiples of four.
    Extremal,
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemKind::Pascal => "pascal",
            SystemKind::Pless => "pless",
            SystemKind::Extremal => "extremal",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowLabel {
    Nu(usize),
    /// `A_low - A_high = 0`.
    Symmetry { low: usize, high: usize },
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowLabel::Nu(nu) => write!(f, "nu={nu}"),
            RowLabel::Symmetry { low, high } => write!(f, "A_{low}=A_{high}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("{have} knowns supplied, at least {need} needed")]
    TooFewKnowns { have: usize, need: usize },
    #[error("known index {0} is not an unknown of this system")]
    UnknownIndex(usize),
    #[error("known A_{index} = {value} is negative")]
    NegativeKnown { index: usize, value: BigInt },
    #[error("reduced system is singular: rank {rank} for {unknowns} unknowns")]
    SingularReducedSystem {
        rank: usize,
        unknowns: usize,
        /// Kernel direction over the unknown columns.
        kernel: Vec<BigRational>,
    },
    #[error("row {row} is inconsistent with the solution")]
    Inconsistent { row: RowLabel },
    #[error("A_{index} = {value} is not an integer")]
    NonIntegralSolution { index: usize, value: BigRational },
    #[error("A_{index} = {value} is negative")]
    NegativeSolution { index: usize, value: BigInt },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// A linear system over weight-distribution entries.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSystem {
    pub kind: SystemKind,
    pub matrix: RationalMatrix,
    pub rhs: Vec<BigRational>,
    pub row_labels: Vec<RowLabel>,
    /// Weight index carried by each column.
    pub col_labels: Vec<usize>,
    pub params: CodeParameters,
}

fn int(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

fn pow_int(base: u32, e: usize) -> BigInt {
    Pow::pow(&BigInt::from(base), e as u32)
}

/// Truncated-Pascal system: `d_perp` rows, `n + 1` columns.
pub fn build_pascal_system(params: &CodeParameters) -> MomentSystem {
    let CodeParameters { n, k, q, d_perp, .. } = *params;
    let nus: Vec<usize> = (n + 1 - d_perp..=n).collect();
    let matrix = RationalMatrix::from_fn(nus.len(), n + 1, |i, s| {
        let nu = nus[i] as i64;
        int(binom(n as i64 - s as i64, nu - s as i64))
    });
    let rhs = nus
        .iter()
        .map(|&nu| int(binom(n as i64, nu as i64) * pow_int(q, nu + k - n)))
        .collect();
    MomentSystem {
        kind: SystemKind::Pascal,
        matrix,
        rhs,
        row_labels: nus.into_iter().map(RowLabel::Nu).collect(),
        col_labels: (0..=n).collect(),
        params: *params,
    }
}

/// Pless moment system: `d_perp` rows, `n + 1` columns.
pub fn build_pless_system(params: &CodeParameters) -> MomentSystem {
    let CodeParameters { n, k, q, d_perp, .. } = *params;
    let nus: Vec<usize> = (0..d_perp).collect();
    let matrix = RationalMatrix::from_fn(nus.len(), n + 1, |i, s| int(binom(s as i64, nus[i] as i64)));
    let rhs = nus
        .iter()
        .map(|&nu| int(pow_int(q, k - nu) * binom(n as i64, nu as i64) * pow_int(q - 1, nu)))
        .collect();
    MomentSystem {
        kind: SystemKind::Pless,
        matrix,
        rhs,
        row_labels: nus.into_iter().map(RowLabel::Nu).collect(),
        col_labels: (0..=n).collect(),
        params: *params,
    }
}

impl MomentSystem {
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    /// `matrix * x - rhs` for values indexed like the columns.
    pub fn residuals(&self, values: &[BigInt]) -> Vec<BigRational> {
        let x: Vec<BigRational> = values.iter().cloned().map(int).collect();
        let lhs = self.matrix.mul_vec(&x).expect("one value per column");
        lhs.into_iter().zip(&self.rhs).map(|(l, r)| l - r).collect()
    }

    /// True when the full distribution satisfies every row.
    pub fn satisfied_by(&self, a: &WeightDistribution) -> bool {
        let values: Vec<BigInt> = self.col_labels.iter().map(|&i| a.get(i).clone()).collect();
        self.residuals(&values).iter().all(Zero::is_zero)
    }

    /// Solves for every column after substituting `knowns` (weight index ->
    /// value). Surplus equations are used as consistency checks.
    pub fn solve(&self, knowns: &BTreeMap<usize, BigInt>) -> Result<BTreeMap<usize, BigRational>, SolveError> {
        let position: BTreeMap<usize, usize> =
            self.col_labels.iter().enumerate().map(|(c, &l)| (l, c)).collect();
        for (&idx, value) in knowns {
            if !position.contains_key(&idx) {
                return Err(SolveError::UnknownIndex(idx));
            }
            if value.is_negative() {
                return Err(SolveError::NegativeKnown {
                    index: idx,
                    value: value.clone(),
                });
            }
        }
        let unknown_cols: Vec<usize> = (0..self.col_labels.len())
            .filter(|c| !knowns.contains_key(&self.col_labels[*c]))
            .collect();
        if unknown_cols.len() > self.rows() {
            return Err(SolveError::TooFewKnowns {
                have: knowns.len(),
                need: self.col_labels.len() - self.rows(),
            });
        }

        let reduced_rhs: Vec<BigRational> = (0..self.rows())
            .map(|i| {
                knowns.iter().fold(self.rhs[i].clone(), |acc, (idx, v)| {
                    acc - self.matrix.get(i, position[idx]) * int(v.clone())
                })
            })
            .collect();
        let reduced = self.matrix.select_cols(&unknown_cols);

        // greedy maximal independent row set
        let mut chosen: Vec<usize> = Vec::new();
        for i in 0..self.rows() {
            if chosen.len() == unknown_cols.len() {
                break;
            }
            let mut trial = chosen.clone();
            trial.push(i);
            if reduced.select_rows(&trial).rank() == trial.len() {
                chosen = trial;
            }
        }
        if chosen.len() < unknown_cols.len() {
            let kernel = reduced.kernel_vector().expect("rank-deficient columns have a kernel");
            return Err(SolveError::SingularReducedSystem {
                rank: chosen.len(),
                unknowns: unknown_cols.len(),
                kernel,
            });
        }

        let square = reduced.select_rows(&chosen);
        let square_rhs: Vec<BigRational> = chosen.iter().map(|&i| reduced_rhs[i].clone()).collect();
        let x = solve_exact(&square, &square_rhs)?;

        let check = reduced.mul_vec(&x)?;
        for i in 0..self.rows() {
            if check[i] != reduced_rhs[i] {
                return Err(SolveError::Inconsistent {
                    row: self.row_labels[i],
                });
            }
        }

        let mut out: BTreeMap<usize, BigRational> =
            knowns.iter().map(|(&i, v)| (i, int(v.clone()))).collect();
        for (c, v) in unknown_cols.into_iter().zip(x) {
            out.insert(self.col_labels[c], v);
        }
        Ok(out)
    }
}

/// Converts solved values into integers, flagging fractions and negatives.
pub fn integral_values(values: &BTreeMap<usize, BigRational>) -> Result<BTreeMap<usize, BigInt>, SolveError> {
    let mut out = BTreeMap::new();
    for (&i, v) in values {
        if !v.is_integer() {
            return Err(SolveError::NonIntegralSolution {
                index: i,
                value: v.clone(),
            });
        }
        let v = v.to_integer();
        if v.is_negative() {
            return Err(SolveError::NegativeSolution { index: i, value: v });
        }
        out.insert(i, v);
    }
    Ok(out)
}

/// `A_0 = 1` and `A_i = 0` for `1 <= i < d`.
pub fn trivial_knowns(d: usize) -> BTreeMap<usize, BigInt> {
    (0..d)
        .map(|i| (i, if i == 0 { BigInt::from(1) } else { BigInt::zero() }))
        .collect()
}

/// Full distribution from a Pascal or Pless system and enough known entries.
pub fn solve_with_knowns(
    system: &MomentSystem,
    knowns: &BTreeMap<usize, BigInt>,
) -> Result<WeightDistribution, SolveError> {
    let p = system.params;
    debug_assert_eq!(system.col_labels, (0..=p.n).collect::<Vec<_>>());
    let values = integral_values(&system.solve(knowns)?)?;
    Ok(WeightDistribution::new(p.n, p.k, p.q, values.into_values().collect())?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossCheck {
    pub pascal: WeightDistribution,
    pub pless: WeightDistribution,
    pub agree: bool,
}

/// Solves both systems from the same knowns and compares.
pub fn cross_check_systems(
    params: &CodeParameters,
    knowns: &BTreeMap<usize, BigInt>,
) -> Result<CrossCheck, SolveError> {
    let pascal = solve_with_knowns(&build_pascal_system(params), knowns)?;
    let pless = solve_with_knowns(&build_pless_system(params), knowns)?;
    Ok(CrossCheck {
        agree: pascal == pless,
        pascal,
        pless,
    })
}

/// Both sides of the full Pless identity at one `nu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlessCheck {
    pub nu: usize,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub holds: bool,
}

/// `sum_{i>=nu} binom(i, nu) A_i = q^(k - nu) sum_{j<=nu} (-1)^j binom(n - j, n - nu) (q - 1)^(nu - j) B_j`.
pub fn verify_pless_full(a: &WeightDistribution, b: &WeightDistribution, nu: usize) -> PlessCheck {
    let n = a.n() as i64;
    let q = a.q();
    let lhs: BigInt = (nu..=a.n()).map(|i| binom(i as i64, nu as i64) * a.get(i)).sum();
    let inner: BigInt = (0..=nu.min(b.n()))
        .map(|j| {
            let term = binom(n - j as i64, n - nu as i64) * pow_int(q - 1, nu - j) * b.get(j);
            if j % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum();
    let shift = a.k() as i64 - nu as i64;
    let scale = if shift >= 0 {
        int(pow_int(q, shift as usize))
    } else {
        int(pow_int(q, (-shift) as usize)).recip()
    };
    let rhs = scale * int(inner);
    let lhs = int(lhs);
    PlessCheck {
        nu,
        holds: lhs == rhs,
        lhs,
        rhs,
    }
}

/// Individual and stacked ranks of the two systems for one parameter set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub params: CodeParameters,
    pub pascal_rows: usize,
    pub pless_rows: usize,
    pub pascal_rank: usize,
    pub pless_rank: usize,
    pub joint_rank: usize,
    /// Rank of the stacked augmented matrix `[M | b]`; equals `joint_rank`
    /// exactly when the stacked system is consistent.
    pub joint_augmented_rank: usize,
}

fn augmented(s: &MomentSystem) -> RationalMatrix {
    let cols = s.matrix.cols();
    RationalMatrix::from_fn(s.rows(), cols + 1, |i, j| {
        if j < cols {
            s.matrix.get(i, j).clone()
        } else {
            s.rhs[i].clone()
        }
    })
}

pub fn rank_relationship_report(params: &CodeParameters) -> RankReport {
    let pascal = build_pascal_system(params);
    let pless = build_pless_system(params);
    let joint = pascal.matrix.vstack(&pless.matrix).expect("same column count");
    let joint_aug = augmented(&pascal).vstack(&augmented(&pless)).expect("same column count");
    RankReport {
        params: *params,
        pascal_rows: pascal.rows(),
        pless_rows: pless.rows(),
        pascal_rank: pascal.matrix.rank(),
        pless_rank: pless.matrix.rank(),
        joint_rank: joint.rank(),
        joint_augmented_rank: joint_aug.rank(),
    }
}
