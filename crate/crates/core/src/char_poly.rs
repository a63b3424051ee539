//! Partial sums of powers of twist degrees over graded pieces, their
//! interpolation as polynomials in `r`, and leading-coefficient extraction.
//!
//! The top-degree term of the Chern character of `O_X / I^r` is
//! `(1/p!) Σ_{i<r} Σ_{|m|=i} (m·a)^p`, a polynomial of degree `n` in `r`.
//! Its leading coefficient times `n!` is the exponent-set sum `Σ_T a^t`.
//! The `J`-adic analogue has leading coefficient proportional to the same sum
//! taken over the prefix-doubled vector.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinatorics::{factorial, ipow, ExactInt, ExactRat};
use crate::error::{invalid, Result};
use crate::graded_model::Geometry;
use crate::lattice_enum::{compositions, weighted_compositions, DoublingPattern};

/// Univariate polynomial with exact rational coefficients; `coeffs[i]` is the
/// coefficient of `r^i`. Trailing zeros are always trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<ExactRat>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<ExactRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[ExactRat] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `r^power` (zero past the degree).
    pub fn coeff(&self, power: usize) -> ExactRat {
        self.coeffs
            .get(power)
            .cloned()
            .unwrap_or_else(ExactRat::zero)
    }

    pub fn leading(&self) -> ExactRat {
        self.coeffs.last().cloned().unwrap_or_else(ExactRat::zero)
    }

    pub fn eval(&self, r: &ExactRat) -> ExactRat {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRat::zero(), |acc, c| acc * r + c)
    }

    pub fn eval_int(&self, r: i64) -> ExactRat {
        self.eval(&ExactRat::from_integer(r.into()))
    }

    fn mul_linear(&self, root: &ExactRat) -> RationalPolynomial {
        // (r - root) · self
        let mut out = vec![ExactRat::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * root;
        }
        RationalPolynomial::new(out)
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match power {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·r")?,
                _ => write!(f, "({c})·r^{power}")?,
            }
        }
        Ok(())
    }
}

/// Lagrange interpolation through `(r, value)` samples with distinct nodes.
pub fn interpolate(samples: &[(i64, ExactRat)]) -> Result<RationalPolynomial> {
    if samples.is_empty() {
        return invalid("interpolate: no samples");
    }
    for (idx, (r, _)) in samples.iter().enumerate() {
        if samples[..idx].iter().any(|(s, _)| s == r) {
            return invalid(format!("interpolate: duplicate node r = {r}"));
        }
    }
    let nodes: Vec<ExactRat> = samples
        .iter()
        .map(|(r, _)| ExactRat::from_integer((*r).into()))
        .collect();
    let mut acc = vec![ExactRat::zero(); samples.len()];
    for (i, (_, value)) in samples.iter().enumerate() {
        if value.is_zero() {
            continue;
        }
        let mut basis = RationalPolynomial::new(vec![ExactRat::one()]);
        let mut denom = ExactRat::one();
        for (j, node) in nodes.iter().enumerate() {
            if i != j {
                basis = basis.mul_linear(node);
                denom *= &nodes[i] - node;
            }
        }
        let scale = value / denom;
        for (slot, c) in acc.iter_mut().zip(basis.coeffs()) {
            *slot += c * &scale;
        }
    }
    Ok(RationalPolynomial::new(acc))
}

fn check_power(g: &Geometry, j: usize) -> Result<()> {
    if j < 1 || j > g.p() {
        return invalid(format!("power j = {j} outside 1..={}", g.p()));
    }
    Ok(())
}

fn level_sum(
    stream: impl Iterator<Item = crate::lattice_enum::Composition>,
    a: &[i64],
    j: u32,
) -> ExactInt {
    stream.map(|m| ipow(&ExactInt::from(m.dot(a)), j)).sum()
}

/// `(1/j!) Σ_{i<r} Σ_{|m|=i} (m·a)^j` for every `r` in `0..=rmax`.
pub fn partial_sums_i(g: &Geometry, j: usize, rmax: u32) -> Result<Vec<ExactRat>> {
    check_power(g, j)?;
    let levels: Vec<ExactInt> = (0..rmax)
        .into_par_iter()
        .map(|i| level_sum(compositions(g.codim(), i), g.degrees(), j as u32))
        .collect();
    Ok(prefix_sums(levels, j))
}

pub fn partial_sum_i(g: &Geometry, j: usize, r: u32) -> Result<ExactRat> {
    Ok(partial_sums_i(g, j, r)?
        .pop()
        .unwrap_or_else(ExactRat::zero))
}

/// `(1/j!) Σ_{q<2r} Σ_{m∈B(q)} (m·a)^j` for every `r` in `0..=rmax`, where
/// `B(q)` carries weight 1 on the first `h` coordinates and 2 after.
pub fn partial_sums_j(g: &Geometry, h: usize, j: usize, rmax: u32) -> Result<Vec<ExactRat>> {
    g.check_cut(h)?;
    check_power(g, j)?;
    let levels: Vec<ExactInt> = (0..2 * rmax)
        .into_par_iter()
        .map(|q| {
            weighted_compositions(DoublingPattern::Prefix(h), g.codim(), q)
                .map(|s| level_sum(s, g.degrees(), j as u32))
        })
        .collect::<Result<_>>()?;
    // two weighted levels per step in r
    let paired: Vec<ExactInt> = levels.chunks(2).map(|c| c.iter().sum()).collect();
    Ok(prefix_sums(paired, j))
}

pub fn partial_sum_j(g: &Geometry, h: usize, j: usize, r: u32) -> Result<ExactRat> {
    Ok(partial_sums_j(g, h, j, r)?
        .pop()
        .unwrap_or_else(ExactRat::zero))
}

fn prefix_sums(levels: Vec<ExactInt>, j: usize) -> Vec<ExactRat> {
    let scale = ExactRat::from_integer(factorial(j as u64)).recip();
    let mut out = Vec::with_capacity(levels.len() + 1);
    let mut running = ExactInt::zero();
    out.push(ExactRat::zero());
    for level in levels {
        running += level;
        out.push(ExactRat::from_integer(running.clone()) * &scale);
    }
    out
}

fn fit(values: Vec<ExactRat>) -> Result<RationalPolynomial> {
    let samples: Vec<(i64, ExactRat)> = values
        .into_iter()
        .enumerate()
        .map(|(r, v)| (r as i64, v))
        .collect();
    interpolate(&samples)
}

/// The degree-`n` polynomial in `r` carrying the top Chern-character term of
/// `O_X / I^r`, interpolated from `r = 0..=n`.
pub fn top_term_polynomial_i(g: &Geometry) -> Result<RationalPolynomial> {
    fit(partial_sums_i(g, g.p(), g.n() as u32)?)
}

/// As [`top_term_polynomial_i`] for `O_X / J^r` with `J` cut at step `h`.
pub fn top_term_polynomial_j(g: &Geometry, h: usize) -> Result<RationalPolynomial> {
    fit(partial_sums_j(g, h, g.p(), g.n() as u32)?)
}

/// Coefficient of `r^n`; satisfies `n! · result = Σ_T a^t`.
pub fn leading_coeff_i(g: &Geometry) -> Result<ExactRat> {
    Ok(top_term_polynomial_i(g)?.coeff(g.n()))
}

/// Coefficient of `r^n` in the `J`-adic analogue.
pub fn leading_coeff_j(g: &Geometry, h: usize) -> Result<ExactRat> {
    Ok(top_term_polynomial_j(g, h)?.coeff(g.n()))
}
