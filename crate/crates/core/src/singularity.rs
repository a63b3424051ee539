//! Hilbert function and embedding dimension at the image point of a
//! contracted `ℙᵖ` with split normal bundle `⊕ O(-aᵢ)`, `aᵢ ≥ 0`.
//!
//! With nonnegative `aᵢ` the graded pieces `m^r / m^{r+1}` are the global
//! sections of `S^r` of the conormal bundle, so
//! `h(r) = Σ_{|i|=r} C(p + Σ iₛaₛ, p)`.

use std::collections::HashMap;

use num_traits::Zero;

use crate::combinatorics::{choose, ExactInt};
use crate::error::{invalid, Error, Result};
use crate::lattice_enum::compositions;

pub const MAX_PROFILE_R: u32 = 50;

fn check_hypothesis(a: &[i64], p: u32) -> Result<()> {
    if p < 1 {
        return invalid("p must be at least 1");
    }
    if a.is_empty() {
        return invalid("degree vector must be nonempty");
    }
    if let Some(bad) = a.iter().find(|&&x| x < 0) {
        return Err(Error::HypothesisViolated(format!(
            "Hilbert function formula requires all aᵢ ≥ 0, found {bad}"
        )));
    }
    Ok(())
}

/// `dim m^r / m^{r+1}`.
pub fn hilbert_value(a: &[i64], p: u32, r: u32) -> Result<ExactInt> {
    check_hypothesis(a, p)?;
    let mut cache: HashMap<i64, ExactInt> = HashMap::new();
    let mut total = ExactInt::zero();
    for m in compositions(a.len(), r) {
        let d = m.dot(a);
        total += &*cache
            .entry(d)
            .or_insert_with(|| choose((p as i64 + d) as u64, p as i64));
    }
    Ok(total)
}

/// `Σᵢ C(p + aᵢ, aᵢ)`, the value `h(1)`.
pub fn embedding_dimension(a: &[i64], p: u32) -> Result<ExactInt> {
    check_hypothesis(a, p)?;
    Ok(a.iter().map(|&x| choose((p as i64 + x) as u64, x)).sum())
}

/// True when rationality of the singularity is established (all `aᵢ ≥ 0`).
/// False means "not established", never "irrational".
pub fn rationality_flag(a: &[i64]) -> bool {
    a.iter().all(|&x| x >= 0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertProfile {
    pub a: Vec<i64>,
    pub p: u32,
    /// `h(0), …, h(rmax)`.
    pub values: Vec<ExactInt>,
    pub embedding_dimension: ExactInt,
    pub rational: bool,
}

pub fn hilbert_profile(a: &[i64], p: u32, rmax: u32) -> Result<HilbertProfile> {
    check_hypothesis(a, p)?;
    if rmax > MAX_PROFILE_R {
        return Err(Error::GuardExceeded(format!(
            "rmax = {rmax} exceeds {MAX_PROFILE_R}"
        )));
    }
    let values = (0..=rmax)
        .map(|r| hilbert_value(a, p, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(HilbertProfile {
        a: a.to_vec(),
        p,
        values,
        embedding_dimension: embedding_dimension(a, p)?,
        rational: rationality_flag(a),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_model::{graded_piece_i, Geometry};
    use num_bigint::BigUint;

    fn int(x: i64) -> ExactInt {
        ExactInt::from(x)
    }

    fn ints(xs: &[i64]) -> Vec<ExactInt> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn hilbert_value_examples() {
        assert_eq!(hilbert_value(&[5, 1], 2, 1).unwrap(), int(21 + 3));
        assert_eq!(hilbert_value(&[3, 0, 2], 4, 0).unwrap(), int(1));
        assert_eq!(hilbert_value(&[1, 1], 1, 2).unwrap(), int(9));
        assert!(matches!(
            hilbert_value(&[-1, 3], 1, 1),
            Err(Error::HypothesisViolated(_))
        ));
        assert!(matches!(
            hilbert_value(&[1, 1], 0, 1),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn embedding_dimension_examples() {
        assert_eq!(embedding_dimension(&[5, 1], 2).unwrap(), int(24));
        assert_eq!(embedding_dimension(&[1, 1], 1).unwrap(), int(4));
        assert_eq!(embedding_dimension(&[0, 0, 0], 3).unwrap(), int(3));
        assert!(embedding_dimension(&[2, -1], 3).is_err());
    }

    #[test]
    fn rationality_examples() {
        assert!(rationality_flag(&[5, 1]));
        assert!(rationality_flag(&[0, 0]));
        assert!(!rationality_flag(&[-1, 3]));
    }

    #[test]
    fn profile_examples() {
        let prof = hilbert_profile(&[1, 1], 1, 3).unwrap();
        assert_eq!(prof.values, ints(&[1, 4, 9, 16]));
        assert!(prof.rational);
        let prof = hilbert_profile(&[5, 1], 2, 1).unwrap();
        assert_eq!(prof.values, ints(&[1, 24]));
        assert_eq!(prof.embedding_dimension, int(24));
        let prof = hilbert_profile(&[0, 0], 5, 2).unwrap();
        assert_eq!(prof.values, ints(&[1, 2, 3]));
        assert!(hilbert_profile(&[1, 1], 1, 51).is_err());
    }

    #[test]
    fn conifold_matches_hypersurface() {
        for r in 0..=10u64 {
            let expected = choose(r + 3, 3) - choose(r + 1, 3);
            assert_eq!(hilbert_value(&[1, 1], 1, r as u32).unwrap(), expected);
            assert_eq!(expected, int(((r + 1) * (r + 1)) as i64));
        }
    }

    #[test]
    fn embedding_dimension_is_first_value() {
        for a in [vec![0, 3], vec![1, 2, 5], vec![4, 4], vec![0, 0, 0, 7]] {
            for p in 1..=4 {
                assert_eq!(
                    embedding_dimension(&a, p).unwrap(),
                    hilbert_value(&a, p, 1).unwrap()
                );
            }
        }
    }

    #[test]
    fn monotone_for_positive_degrees() {
        for a in [vec![1, 1], vec![2, 1, 3], vec![1, 5]] {
            for p in 1..=3 {
                let prof = hilbert_profile(&a, p, 8).unwrap();
                assert!(prof.values.windows(2).all(|w| w[1] >= w[0]));
            }
        }
    }

    #[test]
    fn matches_sections_of_graded_piece() {
        for a in [vec![5, 1], vec![0, 2, 3], vec![1, 1, 1, 1]] {
            for p in 1..=3usize {
                let g = Geometry::from_degrees(p, a.clone()).unwrap();
                for r in 0..=5 {
                    let piece = graded_piece_i(&g, r);
                    let via_piece: ExactInt = piece
                        .iter()
                        .map(|(d, m)| {
                            choose((p as i64 + d) as u64, p as i64)
                                * ExactInt::from(BigUint::clone(m))
                        })
                        .sum();
                    assert_eq!(hilbert_value(&a, p as u32, r).unwrap(), via_piece);
                }
            }
        }
    }
}
