//! Identity suites run by `exckit verify`.
//!
//! Each suite checks a closed-form identity against exact evaluation over a
//! finite range and reports how many instances it checked together with the
//! first counterexample, if any.

use std::fmt;
use std::str::FromStr;

use crate::admissibility::theorem_sum;
use crate::char_poly::leading_coeff_i;
use crate::combinatorics::{
    comb_lemma_coefficients, factorial, finite_difference, power_sum_compositions,
    shifted_difference, ExactInt, ExactRat,
};
use crate::error::{invalid, Error, Result};
use crate::graded_model::{graded_piece_j, graded_piece_j_by_filtration, Geometry, Level};
use crate::lattice_enum::DoublingPattern;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    FiniteDifference,
    ShiftedDifference,
    CombLemma,
    Filtration,
    LeadingCoeff,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::FiniteDifference,
        Suite::ShiftedDifference,
        Suite::CombLemma,
        Suite::Filtration,
        Suite::LeadingCoeff,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FiniteDifference => "finite-difference",
            Suite::ShiftedDifference => "shifted-difference",
            Suite::CombLemma => "comb-lemma",
            Suite::Filtration => "filtration",
            Suite::LeadingCoeff => "leading-coeff",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .map_or_else(|| invalid(format!("unknown suite {s:?}")), Ok)
    }
}

/// Ranges for the suites. `kmax` bounds the degree parameter of the three
/// combinatorial suites; `None` picks each suite's default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Ranges {
    pub kmax: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checked: u64,
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

struct Tally {
    suite: Suite,
    checked: u64,
    counterexample: Option<String>,
}

impl Tally {
    fn new(suite: Suite) -> Self {
        Tally {
            suite,
            checked: 0,
            counterexample: None,
        }
    }

    // returns false once a counterexample has been recorded
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !ok {
            self.counterexample = Some(describe());
        }
        ok
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            suite: self.suite,
            checked: self.checked,
            counterexample: self.counterexample,
        }
    }
}

pub fn run_suite(suite: Suite, ranges: Ranges) -> Result<SuiteReport> {
    match suite {
        Suite::FiniteDifference => finite_difference_suite(ranges.kmax.unwrap_or(10)),
        Suite::ShiftedDifference => shifted_difference_suite(ranges.kmax.unwrap_or(8), 8),
        Suite::CombLemma => comb_lemma_suite(ranges.kmax.unwrap_or(5), 6, 8),
        Suite::Filtration => filtration_suite(4, 5, 2),
        Suite::LeadingCoeff => leading_coeff_suite(3, 3, 2),
    }
}

pub fn finite_difference_suite(kmax: u32) -> Result<SuiteReport> {
    let mut tally = Tally::new(Suite::FiniteDifference);
    'outer: for k in 0..=kmax {
        for j in 0..=k {
            let got = finite_difference(k, j)?;
            let expected = if j < k {
                ExactInt::from(0)
            } else if k % 2 == 0 {
                factorial(k as u64)
            } else {
                -factorial(k as u64)
            };
            if !tally.record(got == expected, || {
                format!("k={k} j={j}: got {got}, expected {expected}")
            }) {
                break 'outer;
            }
        }
    }
    Ok(tally.finish())
}

pub fn shifted_difference_suite(kmax: u32, imax: u64) -> Result<SuiteReport> {
    let mut tally = Tally::new(Suite::ShiftedDifference);
    'outer: for k in 1..=kmax {
        let expected = factorial(k as u64);
        for i in 0..=imax {
            let got = shifted_difference(k, i)?;
            if !tally.record(got == expected, || {
                format!("k={k} i={i}: got {got}, expected {expected}")
            }) {
                break 'outer;
            }
        }
    }
    Ok(tally.finish())
}

pub fn comb_lemma_suite(kmax: u32, imax: usize, jmax: u32) -> Result<SuiteReport> {
    let mut tally = Tally::new(Suite::CombLemma);
    for k in 1..=kmax {
        let coeffs = match comb_lemma_coefficients(k) {
            Ok(c) => c,
            Err(Error::Internal(msg)) => {
                tally.record(false, || format!("k={k}: {msg}"));
                return Ok(tally.finish());
            }
            Err(e) => return Err(e),
        };
        if !tally.record(coeffs.weight() == factorial(k as u64), || {
            format!("k={k}: 1 + Σu = {}", coeffs.weight())
        }) {
            return Ok(tally.finish());
        }
        for i in 1..=imax {
            for j in 0..=jmax {
                let brute = power_sum_compositions(i, j, k)?;
                let closed = coeffs.expansion(i, j);
                if !tally.record(brute == closed, || {
                    format!("i={i} j={j} k={k}: brute force {brute}, expansion {closed}")
                }) {
                    return Ok(tally.finish());
                }
            }
        }
    }
    Ok(tally.finish())
}

// All degree vectors in [-amax, amax]^codim, lexicographic.
fn box_vectors(codim: usize, amax: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..codim {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-amax..=amax).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Graded pieces of the `J`-filtration agree with their assembly from
/// symmetric powers of the two halves of the conormal bundle.
pub fn filtration_suite(codim_max: usize, rmax: u32, amax: i64) -> Result<SuiteReport> {
    let mut tally = Tally::new(Suite::Filtration);
    for codim in 2..=codim_max {
        for a in box_vectors(codim, amax) {
            let g = Geometry::from_degrees(1, a)?;
            for h in 1..codim {
                for r in 0..=rmax {
                    for level in [Level::Even, Level::Odd] {
                        let direct = graded_piece_j(&g, h, r, level)?;
                        let assembled = graded_piece_j_by_filtration(&g, h, r, level)?;
                        if !tally.record(direct == assembled, || {
                            format!(
                                "a={:?} h={h} r={r} {level:?}: {direct} vs {assembled}",
                                g.degrees()
                            )
                        }) {
                            return Ok(tally.finish());
                        }
                    }
                }
            }
        }
    }
    Ok(tally.finish())
}

/// `n! · (leading coefficient of the interpolated top term) = Σ_T a^t`.
pub fn leading_coeff_suite(pmax: usize, codim_max: usize, amax: i64) -> Result<SuiteReport> {
    let mut tally = Tally::new(Suite::LeadingCoeff);
    for p in 1..=pmax {
        for codim in 2..=codim_max {
            for a in box_vectors(codim, amax) {
                let g = Geometry::from_degrees(p, a)?;
                let scaled = leading_coeff_i(&g)? * ExactRat::from_integer(factorial(g.n() as u64));
                let sum = theorem_sum(g.degrees(), DoublingPattern::Prefix(0), p as u32)?;
                let expected = ExactRat::from_integer(sum);
                if !tally.record(scaled == expected, || {
                    format!(
                        "p={p} a={:?}: n!·lc = {scaled}, Σ_T = {expected}",
                        g.degrees()
                    )
                }) {
                    return Ok(tally.finish());
                }
            }
        }
    }
    Ok(tally.finish())
}
