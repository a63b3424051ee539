//! Graded pieces of ideal powers, kept up to numerical equivalence.
//!
//! A graded piece is a direct sum of line bundles `O_Z(d)`; all that survives
//! numerical equivalence is the multiset of twists `d`, so that is what
//! [`TwistMultiset`] stores. [`NumericalClass`] then extracts the length and
//! the Chern classes `c₁..c_p` as elementary symmetric functions of the twists.
//!
//! Sign convention: `a` holds the conormal filtration degrees, so the normal
//! bundle of a split example is `⊕ O(-aᵢ)`. Callers holding normal-bundle
//! degrees must negate them first.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::combinatorics::{choose, ExactInt};
use crate::error::{invalid, Result};
use crate::lattice_enum::{compositions, weighted_compositions, DoublingPattern};

/// Ambient dimension `n`, exceptional-set dimension `p`, and conormal degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Geometry {
    n: usize,
    p: usize,
    a: Vec<i64>,
}

impl Geometry {
    pub fn new(n: usize, p: usize, a: Vec<i64>) -> Result<Self> {
        if p < 1 {
            return invalid("exceptional set dimension p must be at least 1");
        }
        if n < p + 2 {
            return invalid(format!(
                "codimension n - p must be at least 2 (n = {n}, p = {p})"
            ));
        }
        if a.len() != n - p {
            return invalid(format!(
                "degree vector has length {} but n - p = {}",
                a.len(),
                n - p
            ));
        }
        Ok(Geometry { n, p, a })
    }

    /// Builds a geometry from `p` and the degree vector, inferring `n`.
    pub fn from_degrees(p: usize, a: Vec<i64>) -> Result<Self> {
        Geometry::new(p + a.len(), p, a)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn codim(&self) -> usize {
        self.n - self.p
    }

    pub fn degrees(&self) -> &[i64] {
        &self.a
    }

    pub(crate) fn check_cut(&self, h: usize) -> Result<()> {
        if h < 1 || h > self.codim() - 1 {
            return invalid(format!(
                "filtration cut h = {h} outside 1..={}",
                self.codim() - 1
            ));
        }
        Ok(())
    }
}

/// Formal sum `⊕ O_Z(d)^{mult(d)}`. Only positive multiplicities are stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwistMultiset(BTreeMap<i64, BigUint>);

impl TwistMultiset {
    pub fn empty() -> Self {
        TwistMultiset(BTreeMap::new())
    }

    /// The structure sheaf `O_Z`, the unit for [`tensor`].
    pub fn unit() -> Self {
        TwistMultiset::single(0, 1u32)
    }

    pub fn single(degree: i64, mult: impl Into<BigUint>) -> Self {
        let mut out = TwistMultiset::empty();
        out.add(degree, mult.into());
        out
    }

    pub fn from_pairs<M: Into<BigUint>>(pairs: impl IntoIterator<Item = (i64, M)>) -> Self {
        let mut out = TwistMultiset::empty();
        for (d, m) in pairs {
            out.add(d, m.into());
        }
        out
    }

    pub fn add(&mut self, degree: i64, mult: BigUint) {
        if mult.is_zero() {
            return;
        }
        *self.0.entry(degree).or_default() += mult;
    }

    /// Multiset sum (direct sum of bundles).
    pub fn merge(&mut self, other: &TwistMultiset) {
        for (&d, m) in &other.0 {
            self.add(d, m.clone());
        }
    }

    pub fn multiplicity(&self, degree: i64) -> BigUint {
        self.0.get(&degree).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigUint)> {
        self.0.iter().map(|(&d, m)| (d, m))
    }

    /// Total multiplicity, i.e. the rank of the represented bundle.
    pub fn length(&self) -> BigUint {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for TwistMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, (d, m)) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}↦{m}")?;
        }
        write!(f, "}}")
    }
}

/// `S^r` of `⊕ O(dᵢ)`: one twist `Σ mᵢdᵢ` per composition `m` of `r`.
pub fn symmetric_power(degrees: &[i64], r: u32) -> TwistMultiset {
    if degrees.is_empty() {
        // S^0 of the zero bundle is O; higher powers vanish
        return if r == 0 {
            TwistMultiset::unit()
        } else {
            TwistMultiset::empty()
        };
    }
    let mut out = TwistMultiset::empty();
    for m in compositions(degrees.len(), r) {
        out.add(m.dot(degrees), BigUint::one());
    }
    out
}

/// Tensor product: degree-additive convolution of multiplicities.
pub fn tensor(x: &TwistMultiset, y: &TwistMultiset) -> TwistMultiset {
    let mut out = TwistMultiset::empty();
    for (dx, mx) in x.iter() {
        for (dy, my) in y.iter() {
            out.add(dx + dy, mx * my);
        }
    }
    out
}

/// `I^r / I^{r+1}`: twists indexed by compositions of `r` into `n - p` parts.
pub fn graded_piece_i(g: &Geometry, r: u32) -> TwistMultiset {
    symmetric_power(g.degrees(), r)
}

/// Parity of a graded step in the `J`-adic filtration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// `J^r / I·J^r`, indexed by weighted degree `2r`.
    Even,
    /// `I·J^r / J^{r+1}`, indexed by weighted degree `2r + 1`.
    Odd,
}

impl Level {
    pub fn weighted_degree(self, r: u32) -> u32 {
        match self {
            Level::Even => 2 * r,
            Level::Odd => 2 * r + 1,
        }
    }
}

/// Graded piece of the `J`-filtration, `J` being the cut at step `h`.
///
/// Sums `O(Σ mᵢaᵢ)` over vectors with `(m₁+⋯+m_h) + 2(m_{h+1}+⋯) = 2r` or
/// `2r + 1` depending on `level`.
pub fn graded_piece_j(g: &Geometry, h: usize, r: u32, level: Level) -> Result<TwistMultiset> {
    g.check_cut(h)?;
    let mut out = TwistMultiset::empty();
    let stream = weighted_compositions(
        DoublingPattern::Prefix(h),
        g.codim(),
        level.weighted_degree(r),
    )?;
    for m in stream {
        out.add(m.dot(g.degrees()), BigUint::one());
    }
    Ok(out)
}

/// The same graded piece assembled from its finer filtration:
/// `⊕_k S^{2k+ε}(a_{≤h}) ⊗ S^{r-k}(a_{>h})` with `ε = 0` or `1`.
pub fn graded_piece_j_by_filtration(
    g: &Geometry,
    h: usize,
    r: u32,
    level: Level,
) -> Result<TwistMultiset> {
    g.check_cut(h)?;
    let (head, tail) = g.degrees().split_at(h);
    let offset = match level {
        Level::Even => 0,
        Level::Odd => 1,
    };
    let mut out = TwistMultiset::empty();
    for k in 0..=r {
        out.merge(&tensor(
            &symmetric_power(head, 2 * k + offset),
            &symmetric_power(tail, r - k),
        ));
    }
    Ok(out)
}

/// Length and Chern classes `c₁..c_p` of a twist multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalClass {
    pub length: BigUint,
    pub chern: Vec<ExactInt>,
}

/// `cᵢ` is the `i`-th elementary symmetric function of the twists, counted
/// with multiplicity; computed as the coefficients of `Π (1 + d x)^{mult}`
/// truncated at `x^p`.
pub fn numerical_class(x: &TwistMultiset, p: usize) -> NumericalClass {
    let mut total = vec![ExactInt::zero(); p + 1];
    total[0] = ExactInt::one();
    for (d, mult) in x.iter() {
        let d = ExactInt::from(d);
        // (1 + d x)^mult, truncated
        let factor: Vec<ExactInt> = (0..=p)
            .map(|k| binomial_big(mult, k) * num_traits::pow::pow(d.clone(), k))
            .collect();
        let mut next = vec![ExactInt::zero(); p + 1];
        for (i, ti) in total.iter().enumerate() {
            if ti.is_zero() {
                continue;
            }
            for (j, fj) in factor.iter().enumerate().take(p + 1 - i) {
                next[i + j] += ti * fj;
            }
        }
        total = next;
    }
    NumericalClass {
        length: x.length(),
        chern: total.into_iter().skip(1).collect(),
    }
}

fn binomial_big(n: &BigUint, k: usize) -> ExactInt {
    if let Ok(small) = u64::try_from(n) {
        return choose(small, k as i64);
    }
    let n = ExactInt::from(n.clone());
    let mut acc = ExactInt::one();
    for step in 0..k {
        acc = acc * (&n - step) / (step + 1);
    }
    acc
}
