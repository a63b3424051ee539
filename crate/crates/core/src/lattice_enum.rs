//! Lattice-point streams: compositions of an integer into a fixed number of
//! nonnegative parts, optionally with per-coordinate weights.
//!
//! All streams run in ascending lexicographic order. The last coordinate is
//! always determined by the others, so the odometer only walks the leading
//! `len - 1` coordinates.

use std::fmt;

use crate::error::{invalid, Result};

/// An ordered tuple of nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    /// `Σ mᵢ dᵢ` for a degree vector of the same length.
    pub fn dot(&self, degrees: &[i64]) -> i64 {
        debug_assert_eq!(self.0.len(), degrees.len());
        self.0
            .iter()
            .zip(degrees)
            .map(|(&m, &d)| m as i64 * d)
            .sum()
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, x) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Which coordinates of a degree vector get doubled.
///
/// `Prefix(h)` doubles the first `h` coordinates, matching an ordered
/// filtration cut at step `h`. `Subset(mask)` doubles every coordinate whose
/// bit is set (bit `i` is coordinate `i + 1` in one-based terms) and is only
/// meaningful for split bundles, where summands can be reordered freely.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DoublingPattern {
    Prefix(usize),
    Subset(u32),
}

pub const MAX_SUBSET_LEN: usize = 16;

impl DoublingPattern {
    pub fn validate(&self, len: usize) -> Result<()> {
        match *self {
            DoublingPattern::Prefix(h) if h > len => {
                invalid(format!("prefix h = {h} exceeds vector length {len}"))
            }
            DoublingPattern::Subset(_) if len > MAX_SUBSET_LEN => invalid(format!(
                "subset patterns support at most {MAX_SUBSET_LEN} coordinates"
            )),
            DoublingPattern::Subset(mask) if len < 32 && mask >> len != 0 => invalid(format!(
                "subset mask {mask:#b} has bits beyond length {len}"
            )),
            _ => Ok(()),
        }
    }

    /// Whether zero-based coordinate `idx` is doubled.
    pub fn doubles(&self, idx: usize) -> bool {
        match *self {
            DoublingPattern::Prefix(h) => idx < h,
            DoublingPattern::Subset(mask) => idx < 32 && mask & (1 << idx) != 0,
        }
    }

    /// One-based indices of the doubled coordinates for a vector of length `len`.
    pub fn doubled_indices(&self, len: usize) -> Vec<usize> {
        (0..len)
            .filter(|&i| self.doubles(i))
            .map(|i| i + 1)
            .collect()
    }

    /// The vector with the doubled coordinates multiplied by two.
    pub fn apply(&self, a: &[i64]) -> Vec<i64> {
        a.iter()
            .enumerate()
            .map(|(i, &x)| if self.doubles(i) { 2 * x } else { x })
            .collect()
    }
}

impl fmt::Display for DoublingPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DoublingPattern::Prefix(h) => write!(f, "prefix h={h}"),
            DoublingPattern::Subset(mask) => {
                let idx: Vec<String> = (0..32)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| (i + 1).to_string())
                    .collect();
                write!(f, "subset {{{}}}", idx.join(","))
            }
        }
    }
}

/// Stream of nonnegative integer vectors `m` with `Σ wᵢ mᵢ = total`, in
/// lexicographic order. Weights must be positive.
#[derive(Debug, Clone)]
pub struct WeightedCompositions {
    weights: Vec<u32>,
    total: u64,
    current: Vec<u32>,
    // weighted sum of current[..len-1]
    used: u64,
    done: bool,
    // true until the first candidate has been inspected
    fresh: bool,
}

impl WeightedCompositions {
    pub fn new(weights: Vec<u32>, total: u32) -> Self {
        assert!(!weights.is_empty(), "at least one part is required");
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        let len = weights.len();
        WeightedCompositions {
            weights,
            total: total as u64,
            current: vec![0; len],
            used: 0,
            done: false,
            fresh: true,
        }
    }

    // Moves the leading len-1 coordinates to the next point of the odometer
    // whose weighted sum stays within budget.
    fn advance(&mut self) -> bool {
        let free = self.weights.len() - 1;
        let mut pos = free;
        while pos > 0 {
            let idx = pos - 1;
            let w = self.weights[idx] as u64;
            if self.used + w <= self.total {
                self.current[idx] += 1;
                self.used += w;
                return true;
            }
            self.used -= w * self.current[idx] as u64;
            self.current[idx] = 0;
            pos -= 1;
        }
        false
    }

    fn settle_last(&mut self) -> bool {
        let last = self.weights.len() - 1;
        let rest = self.total - self.used;
        let w = self.weights[last] as u64;
        if rest.is_multiple_of(w) {
            self.current[last] = (rest / w) as u32;
            true
        } else {
            false
        }
    }
}

impl Iterator for WeightedCompositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.done {
            return None;
        }
        loop {
            if self.fresh {
                self.fresh = false;
            } else if !self.advance() {
                self.done = true;
                return None;
            }
            if self.settle_last() {
                return Some(Composition(self.current.clone()));
            }
        }
    }
}

/// All compositions of `total` into `parts` nonnegative parts.
///
/// There are `C(total + parts - 1, parts - 1)` of them.
pub fn compositions(parts: usize, total: u32) -> WeightedCompositions {
    WeightedCompositions::new(vec![1; parts], total)
}

/// Weights for the prefix pattern: 1 on the first `h` coordinates, 2 after.
pub fn prefix_weights(h: usize, parts: usize) -> Vec<u32> {
    (0..parts).map(|i| if i < h { 1 } else { 2 }).collect()
}

/// Vectors with `(m₁+⋯+m_h) + 2(m_{h+1}+⋯+m_parts) = r`.
pub fn weighted_compositions(
    pattern: DoublingPattern,
    parts: usize,
    r: u32,
) -> Result<WeightedCompositions> {
    if parts == 0 {
        return invalid("weighted_compositions: need at least one part");
    }
    match pattern {
        DoublingPattern::Prefix(h) if h <= parts => {
            Ok(WeightedCompositions::new(prefix_weights(h, parts), r))
        }
        DoublingPattern::Prefix(h) => invalid(format!("prefix h = {h} exceeds {parts} parts")),
        DoublingPattern::Subset(_) => {
            invalid("weighted_compositions is defined for prefix patterns only")
        }
    }
}

/// The exponent set: compositions of `p` into `parts` parts.
pub fn exponent_set(parts: usize, p: u32) -> WeightedCompositions {
    compositions(parts, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn collect(it: impl Iterator<Item = Composition>) -> Vec<Vec<u32>> {
        it.map(Composition::into_inner).collect()
    }

    // Nested-loop oracle over the full box [0, total]^parts.
    fn box_oracle(weights: &[u32], total: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; weights.len()];
        loop {
            let s: u32 = cur.iter().zip(weights).map(|(m, w)| m * w).sum();
            if s == total {
                out.push(cur.clone());
            }
            let mut i = weights.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < total {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    #[test]
    fn composition_examples() {
        assert_eq!(
            collect(compositions(2, 2)),
            vec![vec![0, 2], vec![1, 1], vec![2, 0]]
        );
        assert_eq!(collect(compositions(4, 0)), vec![vec![0, 0, 0, 0]]);
        assert_eq!(collect(compositions(1, 5)), vec![vec![5]]);
    }

    #[test]
    fn weighted_examples() {
        let got: BTreeSet<_> =
            collect(weighted_compositions(DoublingPattern::Prefix(1), 2, 2).unwrap())
                .into_iter()
                .collect();
        assert_eq!(got, BTreeSet::from([vec![2, 0], vec![0, 1]]));
        assert_eq!(
            collect(weighted_compositions(DoublingPattern::Prefix(1), 2, 1).unwrap()),
            vec![vec![1, 0]]
        );
        assert_eq!(
            collect(weighted_compositions(DoublingPattern::Prefix(3), 3, 4).unwrap()),
            collect(compositions(3, 4))
        );
        // all weight 2: odd totals are unreachable
        assert_eq!(
            collect(weighted_compositions(DoublingPattern::Prefix(0), 2, 3).unwrap()).len(),
            0
        );
        assert!(weighted_compositions(DoublingPattern::Prefix(3), 2, 1).is_err());
        assert!(weighted_compositions(DoublingPattern::Subset(1), 2, 1).is_err());
    }

    #[test]
    fn exponent_set_examples() {
        assert_eq!(collect(exponent_set(2, 1)), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(exponent_set(3, 2).count(), 6);
        assert_eq!(
            collect(exponent_set(2, 3)),
            vec![vec![0, 3], vec![1, 2], vec![2, 1], vec![3, 0]]
        );
    }

    #[test]
    fn counts_match_binomial() {
        for parts in 1..=6usize {
            for total in 0..=12u32 {
                let expected = crate::combinatorics::choose(
                    (total as usize + parts - 1) as u64,
                    parts as i64 - 1,
                );
                assert_eq!(
                    crate::combinatorics::ExactInt::from(compositions(parts, total).count()),
                    expected
                );
            }
        }
    }

    #[test]
    fn weighted_union_is_bounded_region() {
        for parts in 1..=4usize {
            for h in 0..=parts {
                for r in 1..=4u32 {
                    let mut seen = BTreeSet::new();
                    let mut count = 0;
                    for q in 0..2 * r {
                        for m in
                            weighted_compositions(DoublingPattern::Prefix(h), parts, q).unwrap()
                        {
                            count += 1;
                            seen.insert(m.into_inner());
                        }
                    }
                    assert_eq!(count, seen.len(), "duplicates for parts={parts} h={h}");
                    let w = prefix_weights(h, parts);
                    let region: BTreeSet<_> = (0..2 * r).flat_map(|q| box_oracle(&w, q)).collect();
                    assert_eq!(seen, region);
                }
            }
        }
    }

    #[test]
    fn pattern_helpers() {
        assert_eq!(DoublingPattern::Prefix(2).apply(&[1, 2, 3]), vec![2, 4, 3]);
        assert_eq!(
            DoublingPattern::Subset(0b101).apply(&[1, 2, 3]),
            vec![2, 2, 6]
        );
        assert_eq!(
            DoublingPattern::Subset(0b101).doubled_indices(3),
            vec![1, 3]
        );
        assert!(DoublingPattern::Subset(0b1000).validate(3).is_err());
        assert!(DoublingPattern::Prefix(4).validate(3).is_err());
        assert!(DoublingPattern::Prefix(3).validate(3).is_ok());
        assert_eq!(DoublingPattern::Subset(0b11).to_string(), "subset {1,2}");
    }

    proptest! {
        #[test]
        fn matches_box_oracle_in_order(
            weights in proptest::collection::vec(1u32..=3, 1..=4),
            total in 0u32..=8,
        ) {
            let got = collect(WeightedCompositions::new(weights.clone(), total));
            prop_assert_eq!(got, box_oracle(&weights, total));
        }

        #[test]
        fn deterministic(parts in 1usize..=5, total in 0u32..=7) {
            prop_assert_eq!(collect(compositions(parts, total)), collect(compositions(parts, total)));
        }
    }
}
