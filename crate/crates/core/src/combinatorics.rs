//! Exact integer and rational primitives, plus the alternating-sum and
//! composition power-sum identities that the leading-coefficient argument
//! rests on.
//!
//! Conventions used throughout the crate:
//!
//! * `0^0 = 1`.
//! * `C(n, k) = 0` whenever `k < 0` or `k > n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::lattice_enum::compositions;

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type ExactRat = BigRational;

/// Binomial coefficient `C(n, k)`. Negative `n` is rejected; `k` outside
/// `[0, n]` yields zero.
pub fn binomial(n: i64, k: i64) -> Result<ExactInt> {
    if n < 0 {
        return invalid(format!("binomial: negative upper index {n}"));
    }
    Ok(choose(n as u64, k))
}

/// Infallible binomial for a nonnegative upper index.
pub fn choose(n: u64, k: i64) -> ExactInt {
    if k < 0 || k as u64 > n {
        return ExactInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = ExactInt::one();
    for step in 0..k {
        acc *= n - step;
        acc /= step + 1;
    }
    acc
}

pub fn factorial(n: u64) -> ExactInt {
    (1..=n).fold(ExactInt::one(), |acc, f| acc * f)
}

/// `base^exp` with `0^0 = 1`.
pub(crate) fn ipow(base: &ExactInt, exp: u32) -> ExactInt {
    num_traits::pow::pow(base.clone(), exp as usize)
}

fn sign(t: u64) -> ExactInt {
    if t.is_multiple_of(2) {
        ExactInt::one()
    } else {
        -ExactInt::one()
    }
}

/// `Σ_{t=0}^{k} (-1)^t C(k,t) t^j` for `0 ≤ j ≤ k`.
///
/// Vanishes for `j < k` and equals `(-1)^k k!` at `j = k`.
pub fn finite_difference(k: u32, j: u32) -> Result<ExactInt> {
    if j > k {
        return invalid(format!("finite_difference: j = {j} exceeds k = {k}"));
    }
    Ok((0..=k as u64)
        .map(|t| sign(t) * choose(k as u64, t as i64) * ipow(&ExactInt::from(t), j))
        .sum())
}

/// `Σ_{t=0}^{k} (-1)^t C(k,t) (k+i-t)^k`, which is `k!` for every `i ≥ 0`.
pub fn shifted_difference(k: u32, i: u64) -> Result<ExactInt> {
    if k == 0 {
        return invalid("shifted_difference: k must be positive");
    }
    let k64 = k as u64;
    Ok((0..=k64)
        .map(|t| sign(t) * choose(k64, t as i64) * ipow(&ExactInt::from(k64 + i - t), k))
        .sum())
}

/// Brute-force `Σ_{m₁+⋯+m_i=j} m₁^k` over all compositions of `j` into `i`
/// nonnegative parts.
pub fn power_sum_compositions(i: usize, j: u32, k: u32) -> Result<ExactInt> {
    if i == 0 {
        return invalid("power_sum_compositions: need at least one part");
    }
    Ok(compositions(i, j)
        .map(|c| ipow(&ExactInt::from(c.parts()[0]), k))
        .sum())
}

/// Coefficients `u₁..u_{k-1}` of the binomial expansion
///
/// ```text
/// Σ_{m₁+⋯+m_i=j} m₁^k = C(i+j+k-2, i+k-1) + Σ_s u_s C(i+j+k-2-s, i+k-1)
/// ```
///
/// together with the degree `k` they belong to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombLemmaCoeffs {
    k: u32,
    u: Vec<ExactInt>,
}

impl CombLemmaCoeffs {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn u(&self) -> &[ExactInt] {
        &self.u
    }

    /// `1 + Σ u_s`; equals `k!` for every valid instance.
    pub fn weight(&self) -> ExactInt {
        self.u.iter().fold(ExactInt::one(), |acc, x| acc + x)
    }

    /// Evaluates the right-hand side of the expansion for `i` parts summing to `j`.
    pub fn expansion(&self, i: usize, j: u32) -> ExactInt {
        debug_assert!(i >= 1);
        let top = (i + j as usize + self.k as usize - 2) as u64;
        let bottom = (i + self.k as usize - 1) as i64;
        self.u
            .iter()
            .enumerate()
            .fold(choose(top, bottom), |acc, (idx, us)| {
                acc + us * choose(top - (idx as u64 + 1), bottom)
            })
    }
}

/// Recovers the expansion coefficients for degree `k` by solving the linear
/// system that brute-force power sums impose, once on the sample `i = 1` and
/// once on the disjoint sample `i = 2`. The two solutions must agree and must
/// satisfy `1 + Σu = k!`.
pub fn comb_lemma_coefficients(k: u32) -> Result<CombLemmaCoeffs> {
    if k == 0 {
        return invalid("comb_lemma_coefficients: k must be positive");
    }
    let first = solve_lemma_sample(k, 1)?;
    let second = solve_lemma_sample(k, 2)?;
    if first != second {
        return Err(Error::Internal(format!(
            "expansion coefficients for k = {k} depend on the sample: {first:?} vs {second:?}"
        )));
    }
    let coeffs = CombLemmaCoeffs { k, u: first };
    if coeffs.weight() != factorial(k as u64) {
        return Err(Error::Internal(format!(
            "1 + Σu = {} differs from {k}! for k = {k}",
            coeffs.weight()
        )));
    }
    Ok(coeffs)
}

fn solve_lemma_sample(k: u32, parts: usize) -> Result<Vec<ExactInt>> {
    let unknowns = (k - 1) as usize;
    let bottom = parts as i64 + k as i64 - 1;
    let rows: Vec<Vec<ExactRat>> = (0..=2 * k + 2)
        .map(|j| {
            let top = parts as i64 + j as i64 + k as i64 - 2;
            let mut row: Vec<ExactRat> = (1..=unknowns as i64)
                .map(|s| ExactRat::from_integer(choose((top - s) as u64, bottom)))
                .collect();
            let target = power_sum_compositions(parts, j, k)? - choose(top as u64, bottom);
            row.push(ExactRat::from_integer(target));
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let solution = solve_overdetermined(rows, unknowns)?;
    solution
        .into_iter()
        .map(|x| {
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(Error::Internal(format!(
                    "non-integral expansion coefficient {x}"
                )))
            }
        })
        .collect()
}

/// Gaussian elimination on an augmented matrix with possibly more rows than
/// unknowns. Fails unless the system has exactly one solution.
pub(crate) fn solve_overdetermined(
    mut rows: Vec<Vec<ExactRat>>,
    unknowns: usize,
) -> Result<Vec<ExactRat>> {
    let mut pivot_row = 0;
    for col in 0..unknowns {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            return Err(Error::Internal(format!("rank deficient in column {col}")));
        };
        rows.swap(pivot_row, found);
        let inv = rows[pivot_row][col].recip();
        for entry in rows[pivot_row].iter_mut() {
            *entry *= &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (entry, p) in row.iter_mut().zip(&pivot) {
                *entry -= &factor * p;
            }
        }
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|row| !row[unknowns].is_zero()) {
        return Err(Error::Internal("inconsistent linear system".into()));
    }
    Ok(rows[..unknowns]
        .iter()
        .map(|row| row[unknowns].clone())
        .collect())
}
