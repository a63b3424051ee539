//! Necessary conditions on the degrees of a filtered or split conormal bundle
//! of an exceptional set.
//!
//! Every condition has the form `Σ_{t∈T} Π a′ᵢ^{tᵢ} ≥ 0`, where `T` is the set
//! of compositions of `p` into `n - p` parts and `a′` is `a` with some
//! coordinates doubled. For an ordered filtration the doubled coordinates are
//! a prefix; for a split bundle any subset may be doubled.
//!
//! Vectors passing these checks are *admissible*, not known to be realizable.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::combinatorics::{ipow, ExactInt};
use crate::error::{invalid, Error, Result};
use crate::graded_model::Geometry;
use crate::lattice_enum::{DoublingPattern, MAX_SUBSET_LEN};

/// `Σ_{t∈T} Π a′ᵢ^{tᵢ}`, the complete homogeneous symmetric polynomial of
/// degree `p` in the pattern-doubled vector.
pub fn theorem_sum(a: &[i64], pattern: DoublingPattern, p: u32) -> Result<ExactInt> {
    pattern.validate(a.len())?;
    let doubled = pattern.apply(a);
    // h_k(x₁..x_j) = h_k(x₁..x_{j-1}) + x_j h_{k-1}(x₁..x_j)
    let mut h = vec![ExactInt::zero(); p as usize + 1];
    h[0] = ExactInt::one();
    for x in doubled {
        let x = ExactInt::from(x);
        for k in 1..=p as usize {
            let carry = &x * &h[k - 1];
            h[k] += carry;
        }
    }
    Ok(h.pop().expect("nonempty"))
}

/// One evaluated inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternRecord {
    pub pattern: DoublingPattern,
    pub value: ExactInt,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityReport {
    records: Vec<PatternRecord>,
    overall: bool,
}

impl InequalityReport {
    fn from_values(values: Vec<(DoublingPattern, ExactInt)>) -> Self {
        let records: Vec<PatternRecord> = values
            .into_iter()
            .map(|(pattern, value)| PatternRecord {
                pass: !value.is_negative(),
                pattern,
                value,
            })
            .collect();
        let overall = records.iter().all(|r| r.pass);
        InequalityReport { records, overall }
    }

    pub fn records(&self) -> &[PatternRecord] {
        &self.records
    }

    pub fn overall(&self) -> bool {
        self.overall
    }

    pub fn failures(&self) -> impl Iterator<Item = &PatternRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

/// Base inequality (`h = 0`) plus every prefix doubling `h = 1..n-p-1`.
pub fn check_filtration(g: &Geometry) -> InequalityReport {
    let values = (0..g.codim())
        .map(|h| {
            let pattern = DoublingPattern::Prefix(h);
            let v = theorem_sum(g.degrees(), pattern, g.p() as u32).expect("prefix in range");
            (pattern, v)
        })
        .collect();
    InequalityReport::from_values(values)
}

/// All `2^{n-p}` subset doublings of a split bundle.
pub fn check_split(g: &Geometry) -> Result<InequalityReport> {
    let len = g.codim();
    if len > MAX_SUBSET_LEN {
        return Err(Error::GuardExceeded(format!(
            "split check over {len} summands exceeds the limit of {MAX_SUBSET_LEN}"
        )));
    }
    let values = (0..1u32 << len)
        .map(|mask| {
            let pattern = DoublingPattern::Subset(mask);
            theorem_sum(g.degrees(), pattern, g.p() as u32).map(|v| (pattern, v))
        })
        .collect::<Result<_>>()?;
    Ok(InequalityReport::from_values(values))
}

/// The rational-curve linear form `2(a₁+⋯+a_h) + (a_{h+1}+⋯)`.
pub fn p1_specialization(a: &[i64], h: usize) -> Result<ExactInt> {
    if h > a.len() {
        return invalid(format!("h = {h} exceeds vector length {}", a.len()));
    }
    let (head, tail) = a.split_at(h);
    let head: ExactInt = head.iter().map(|&x| ExactInt::from(x)).sum();
    let tail: ExactInt = tail.iter().map(|&x| ExactInt::from(x)).sum();
    Ok(head * 2 + tail)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Codim2Check {
    /// `Σ_{i=0}^{p} a₁^i a₂^{p-i} = (a₁+a₂) Σ_i a₁^{2i} a₂^{p-1-2i}` held exactly.
    pub factored_ok: bool,
    /// Passing the split system forced `a₁+a₂`, `2a₁+a₂`, `a₁+2a₂` nonnegative
    /// (vacuously true when the split system fails).
    pub implied: bool,
}

/// Codimension-two check for odd `p`.
pub fn codim2_odd_check(a1: i64, a2: i64, p: u32) -> Result<Codim2Check> {
    if p.is_multiple_of(2) {
        return invalid(format!("codim-2 factorization needs odd p, got {p}"));
    }
    let (x, y) = (ExactInt::from(a1), ExactInt::from(a2));
    let full: ExactInt = (0..=p).map(|i| ipow(&x, i) * ipow(&y, p - i)).sum();
    let even: ExactInt = (0..=(p - 1) / 2)
        .map(|i| ipow(&x, 2 * i) * ipow(&y, p - 1 - 2 * i))
        .sum();
    let factored_ok = full == (&x + &y) * even;

    let g = Geometry::from_degrees(p as usize, vec![a1, a2])?;
    let passes = check_split(&g)?.overall();
    let implied = !passes || (a1 + a2 >= 0 && 2 * a1 + a2 >= 0 && a1 + 2 * a2 >= 0);
    Ok(Codim2Check {
        factored_ok,
        implied,
    })
}

/// `Σaᵢ = p + 1`, the constraint a crepant small resolution of a point with
/// exceptional set `ℙᵖ` imposes through adjunction.
pub fn crepant_filter(a: &[i64], p: u32) -> bool {
    a.iter().sum::<i64>() == p as i64 + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum System {
    /// Ordered filtration: base inequality plus prefix doublings.
    Filtration,
    /// Split bundle: every subset doubling.
    Split,
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::Filtration => "filtration",
            System::Split => "split",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Filter {
    /// `Σaᵢ = p + 1`.
    Crepant,
    /// All `aᵢ ≥ 0`.
    Nonnegative,
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Filter::Crepant => "crepant",
            Filter::Nonnegative => "nonnegative",
        })
    }
}

pub const MAX_ENUM_CODIM: usize = 6;
pub const MAX_ENUM_BOUND: i64 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationRequest {
    pub p: u32,
    pub codim: usize,
    pub bound: i64,
    pub system: System,
    pub filters: BTreeSet<Filter>,
}

/// Admissible degree vectors in a box, each listed once in nondecreasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleCatalog {
    pub request: EnumerationRequest,
    pub vectors: Vec<Vec<i64>>,
    /// Number of nondecreasing vectors inspected.
    pub examined: u64,
}

fn admits(a: &[i64], req: &EnumerationRequest) -> bool {
    for filter in &req.filters {
        let ok = match filter {
            Filter::Crepant => crepant_filter(a, req.p),
            Filter::Nonnegative => a.iter().all(|&x| x >= 0),
        };
        if !ok {
            return false;
        }
    }
    let g = Geometry::from_degrees(req.p as usize, a.to_vec()).expect("validated request");
    match req.system {
        System::Filtration => check_filtration(&g).overall(),
        System::Split => check_split(&g).expect("codim within guard").overall(),
    }
}

// Nondecreasing tails of length `len` with entries in [lo, hi], in lex order.
fn for_each_tail(prefix: &mut Vec<i64>, len: usize, lo: i64, hi: i64, f: &mut impl FnMut(&[i64])) {
    if prefix.len() == len {
        f(prefix);
        return;
    }
    for x in lo..=hi {
        prefix.push(x);
        for_each_tail(prefix, len, x, hi, f);
        prefix.pop();
    }
}

/// Searches the box `[-bound, bound]^codim` for nondecreasing vectors passing
/// the requested system and filters. Work is split by leading coordinate; the
/// merge preserves lexicographic order.
pub fn enumerate_admissible(req: &EnumerationRequest) -> Result<AdmissibleCatalog> {
    if req.p < 1 {
        return invalid("p must be at least 1");
    }
    if req.codim < 2 || req.codim > MAX_ENUM_CODIM {
        return Err(Error::GuardExceeded(format!(
            "codim must lie in 2..={MAX_ENUM_CODIM}, got {}",
            req.codim
        )));
    }
    if req.bound < 0 || req.bound > MAX_ENUM_BOUND {
        return Err(Error::GuardExceeded(format!(
            "bound must lie in 0..={MAX_ENUM_BOUND}, got {}",
            req.bound
        )));
    }
    let b = req.bound;
    let parts: Vec<(Vec<Vec<i64>>, u64)> = (-b..=b)
        .into_par_iter()
        .map(|lead| {
            let mut found = Vec::new();
            let mut examined = 0u64;
            let mut prefix = vec![lead];
            for_each_tail(&mut prefix, req.codim, lead, b, &mut |a| {
                examined += 1;
                if admits(a, req) {
                    found.push(a.to_vec());
                }
            });
            (found, examined)
        })
        .collect();
    let examined = parts.iter().map(|(_, e)| e).sum();
    let vectors = parts.into_iter().flat_map(|(v, _)| v).collect();
    Ok(AdmissibleCatalog {
        request: req.clone(),
        vectors,
        examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_enum::exponent_set;
    use proptest::prelude::*;

    fn int(x: i64) -> ExactInt {
        ExactInt::from(x)
    }

    // Σ over the explicit exponent set
    fn theorem_sum_oracle(a: &[i64], pattern: DoublingPattern, p: u32) -> ExactInt {
        let d = pattern.apply(a);
        exponent_set(a.len(), p)
            .map(|t| {
                t.parts()
                    .iter()
                    .zip(&d)
                    .fold(ExactInt::one(), |acc, (&e, &x)| acc * ipow(&int(x), e))
            })
            .sum()
    }

    fn values(report: &InequalityReport) -> Vec<i64> {
        report
            .records()
            .iter()
            .map(|r| r.value.to_string().parse().unwrap())
            .collect()
    }

    #[test]
    fn theorem_sum_examples() {
        assert_eq!(
            theorem_sum(&[1, 1], DoublingPattern::Prefix(0), 1).unwrap(),
            int(2)
        );
        assert_eq!(
            theorem_sum(&[1, 1], DoublingPattern::Prefix(1), 1).unwrap(),
            int(3)
        );
        assert_eq!(
            theorem_sum(&[0, 0, 0], DoublingPattern::Subset(0b101), 3).unwrap(),
            int(0)
        );
        assert_eq!(
            theorem_sum(&[5, 1], DoublingPattern::Prefix(0), 2).unwrap(),
            int(31)
        );
        assert!(theorem_sum(&[1, 1], DoublingPattern::Prefix(3), 1).is_err());
    }

    #[test]
    fn filtration_examples() {
        let r = check_filtration(&Geometry::from_degrees(1, vec![1, 1]).unwrap());
        assert!(r.overall());
        assert_eq!(values(&r), vec![2, 3]);
        let r = check_filtration(&Geometry::from_degrees(1, vec![-1, 1]).unwrap());
        assert!(!r.overall());
        assert_eq!(values(&r), vec![0, -1]);
        assert!(r.records()[0].pass);
        let r = check_filtration(&Geometry::from_degrees(3, vec![0, 0, 0]).unwrap());
        assert!(r.overall());
        assert!(values(&r).iter().all(|&v| v == 0));
    }

    #[test]
    fn split_examples() {
        let r = check_split(&Geometry::from_degrees(2, vec![5, 1]).unwrap()).unwrap();
        assert_eq!(r.records().len(), 4);
        assert!(r.overall());
        let r = check_split(&Geometry::from_degrees(1, vec![-1, 3]).unwrap()).unwrap();
        assert!(r.overall());
        assert_eq!(values(&r), vec![2, 1, 5, 4]);
        let r = check_split(&Geometry::from_degrees(1, vec![-1, 1]).unwrap()).unwrap();
        assert!(!r.overall());
        let failing: Vec<_> = r.failures().map(|f| f.pattern).collect();
        assert_eq!(failing, vec![DoublingPattern::Subset(0b01)]);
        assert!(matches!(
            check_split(&Geometry::from_degrees(1, vec![0; 17]).unwrap()),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn p1_examples() {
        assert_eq!(p1_specialization(&[1, 1], 1).unwrap(), int(3));
        assert_eq!(p1_specialization(&[4, -2, 7], 0).unwrap(), int(9));
        assert_eq!(p1_specialization(&[-1, 3], 1).unwrap(), int(1));
        assert!(p1_specialization(&[1], 2).is_err());
    }

    #[test]
    fn codim2_examples() {
        let c = codim2_odd_check(1, 1, 3).unwrap();
        assert!(c.factored_ok && c.implied);
        let c = codim2_odd_check(4, -4, 5).unwrap();
        assert!(c.factored_ok);
        assert!(codim2_odd_check(1, 1, 2).is_err());
        for a1 in -6..=6 {
            for a2 in -6..=6 {
                let c = codim2_odd_check(a1, a2, 3).unwrap();
                assert!(c.factored_ok && c.implied, "({a1},{a2})");
            }
        }
    }

    #[test]
    fn crepant_examples() {
        assert!(crepant_filter(&[1, 1], 1));
        assert!(crepant_filter(&[-1, 3], 1));
        assert!(!crepant_filter(&[5, 1], 2));
    }

    fn request(
        p: u32,
        codim: usize,
        bound: i64,
        system: System,
        filters: &[Filter],
    ) -> EnumerationRequest {
        EnumerationRequest {
            p,
            codim,
            bound,
            system,
            filters: filters.iter().copied().collect(),
        }
    }

    #[test]
    fn enumeration_examples() {
        let cat =
            enumerate_admissible(&request(1, 2, 3, System::Split, &[Filter::Crepant])).unwrap();
        assert_eq!(cat.vectors, vec![vec![-1, 3], vec![0, 2], vec![1, 1]]);
        // nondecreasing pairs in [-3,3]²
        assert_eq!(cat.examined, 28);
        let cat = enumerate_admissible(&request(2, 3, 0, System::Split, &[])).unwrap();
        assert_eq!(cat.vectors, vec![vec![0, 0, 0]]);
        let cat =
            enumerate_admissible(&request(2, 3, 0, System::Split, &[Filter::Crepant])).unwrap();
        assert!(cat.vectors.is_empty());
        assert!(enumerate_admissible(&request(1, 7, 1, System::Split, &[])).is_err());
        assert!(enumerate_admissible(&request(1, 1, 1, System::Split, &[])).is_err());
        assert!(enumerate_admissible(&request(1, 2, 13, System::Split, &[])).is_err());
    }

    #[test]
    fn enumeration_is_deterministic_and_sorted() {
        let req = request(2, 3, 4, System::Filtration, &[Filter::Nonnegative]);
        let x = enumerate_admissible(&req).unwrap();
        let y = enumerate_admissible(&req).unwrap();
        assert_eq!(x, y);
        assert!(x.vectors.windows(2).all(|w| w[0] < w[1]));
        assert!(x.vectors.iter().all(|v| v.windows(2).all(|p| p[0] <= p[1])));
    }

    #[test]
    fn subset_doublings_are_prefix_orbit() {
        fn permutations(v: &[i64]) -> Vec<Vec<i64>> {
            if v.len() <= 1 {
                return vec![v.to_vec()];
            }
            let mut out = Vec::new();
            for i in 0..v.len() {
                let mut rest = v.to_vec();
                let x = rest.remove(i);
                for mut tail in permutations(&rest) {
                    tail.insert(0, x);
                    out.push(tail);
                }
            }
            out
        }
        for a in [vec![-1, 3], vec![2, -3, 1], vec![-2, 0, 1, 4]] {
            for p in 1..=3 {
                let subsets: BTreeSet<ExactInt> = (0..1u32 << a.len())
                    .map(|m| theorem_sum(&a, DoublingPattern::Subset(m), p).unwrap())
                    .collect();
                let prefixes: BTreeSet<ExactInt> = permutations(&a)
                    .iter()
                    .flat_map(|b| {
                        (0..=b.len())
                            .map(move |h| theorem_sum(b, DoublingPattern::Prefix(h), p).unwrap())
                    })
                    .collect();
                assert_eq!(subsets, prefixes);
            }
        }
    }

    proptest! {
        #[test]
        fn matches_exponent_set_oracle(
            a in proptest::collection::vec(-5i64..=5, 1..=4),
            p in 1u32..=4,
            mask in 0u32..16,
        ) {
            let mask = mask & ((1 << a.len()) - 1);
            let pattern = DoublingPattern::Subset(mask);
            prop_assert_eq!(theorem_sum(&a, pattern, p).unwrap(), theorem_sum_oracle(&a, pattern, p));
        }

        #[test]
        fn specializes_to_linear_form(
            a in proptest::collection::vec(-5i64..=5, 1..=4),
            h in 0usize..=4,
        ) {
            let h = h.min(a.len());
            prop_assert_eq!(
                theorem_sum(&a, DoublingPattern::Prefix(h), 1).unwrap(),
                p1_specialization(&a, h).unwrap()
            );
        }

        #[test]
        fn permutation_covariance(
            a in proptest::collection::vec(-5i64..=5, 2..=4),
            p in 1u32..=4,
            mask in 0u32..16,
            shift in 0usize..4,
        ) {
            let len = a.len();
            let mask = mask & ((1 << len) - 1);
            let sigma: Vec<usize> = (0..len).map(|i| (i + shift) % len).collect();
            let b: Vec<i64> = sigma.iter().map(|&s| a[s]).collect();
            let permuted_mask = (0..len)
                .filter(|&i| mask & (1 << sigma[i]) != 0)
                .fold(0u32, |m, i| m | (1 << i));
            prop_assert_eq!(
                theorem_sum(&a, DoublingPattern::Subset(mask), p).unwrap(),
                theorem_sum(&b, DoublingPattern::Subset(permuted_mask), p).unwrap()
            );
            let ga = Geometry::from_degrees(p as usize, a).unwrap();
            let gb = Geometry::from_degrees(p as usize, b).unwrap();
            prop_assert_eq!(check_split(&ga).unwrap().overall(), check_split(&gb).unwrap().overall());
        }
    }
}
