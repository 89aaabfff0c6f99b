//! Exhaustive enumeration of uf-partitions of `1/ι` of a fixed length.
//!
//! The search walks ascending tuples `a_1 ≤ … ≤ a_n`, tracking the remaining
//! fraction `p/q` in lowest terms. With `m` slots left and previous part
//! `lo`, the next part ranges over
//!
//! ```text
//! max(lo, ⌊q/p⌋ + 1) ≤ a ≤ ⌊m·q/p⌋
//! ```
//!
//! since `1/a < p/q` (more slots follow) and `m/a ≥ p/q` (the largest
//! remaining reciprocal is `1/a`). The last slot is solved directly.
//!
//! The top of the tree is split into independent prefixes. With the
//! `parallel` feature the prefixes are searched on the rayon pool; results
//! are merged in prefix order, so the report is identical to a sequential
//! run.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{lcm_many, BigRat};
use crate::error::{Error, Result};
use crate::sylvester::{partition_product_bound, sharpness_extremizers};
use crate::ufp::{q_of_a, RegionViolation, UfPartition};
use crate::weights::WeightSystem;

/// Default node budget.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Depth of the prefix split used to create independent work items.
const SPLIT_DEPTH: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses the rayon pool when the `parallel` feature is enabled and falls
    /// back to sequential execution otherwise.
    #[default]
    Parallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub budget: u64,
    pub execution: Execution,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig { budget: DEFAULT_BUDGET, execution: Execution::default() }
    }
}

impl EnumerationConfig {
    pub fn sequential() -> Self {
        EnumerationConfig { execution: Execution::Sequential, ..Default::default() }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

/// How the largest head product compares with `2t_{ι,n−1}²/ι`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundStatus {
    Matches,
    Exceeds,
    Below,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub iota: u64,
    pub n: usize,
    /// All partitions, lexicographically ascending.
    pub partitions: Vec<UfPartition>,
    /// Largest `a_1⋯a_{n−1}`.
    pub max_product: BigInt,
    pub extremizers: Vec<UfPartition>,
    pub bound_value: BigRat,
    pub bound_status: BoundStatus,
    /// Search-tree nodes visited.
    pub nodes: u64,
}

impl EnumerationReport {
    pub fn count(&self) -> usize {
        self.partitions.len()
    }
}

/// Enumerates with the default configuration.
pub fn enumerate(iota: u64, n: usize) -> Result<EnumerationReport> {
    enumerate_with(iota, n, &EnumerationConfig::default())
}

pub fn enumerate_with(iota: u64, n: usize, config: &EnumerationConfig) -> Result<EnumerationReport> {
    if iota == 0 {
        return Err(Error::OutOfRange("iota must be positive".into()));
    }
    if n < 2 {
        return Err(Error::OutOfRange(format!("need length n >= 2, got {n}")));
    }
    let (raw, nodes) = search(iota, n, config)?;
    let iota_big = BigInt::from(iota);
    let partitions = raw
        .into_iter()
        .map(|parts| UfPartition::new(iota_big.clone(), parts.into_iter().map(BigInt::from).collect()))
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(partitions.windows(2).all(|w| w[0] < w[1]));

    let products: Vec<BigInt> = partitions.iter().map(UfPartition::head_product).collect();
    let max_product = products.iter().max().cloned().unwrap_or_else(BigInt::zero);
    let extremizers = partitions
        .iter()
        .zip(&products)
        .filter(|(_, p)| **p == max_product)
        .map(|(a, _)| a.clone())
        .collect();
    let bound_value = partition_product_bound(iota, n)?;
    let bound_status = match BigRat::from_integer(max_product.clone()).cmp(&bound_value) {
        std::cmp::Ordering::Less => BoundStatus::Below,
        std::cmp::Ordering::Equal => BoundStatus::Matches,
        std::cmp::Ordering::Greater => BoundStatus::Exceeds,
    };
    Ok(EnumerationReport {
        iota,
        n,
        partitions,
        max_product,
        extremizers,
        bound_value,
        bound_status,
        nodes,
    })
}

/// Remaining fraction `p/q` with the prefix that produced it.
#[derive(Debug, Clone)]
struct Frontier {
    prefix: Vec<u128>,
    p: u128,
    q: u128,
}

struct Budget<'a> {
    limit: u64,
    used: &'a AtomicU64,
}

impl Budget<'_> {
    fn tick(&self, prefix: &[u128]) -> Result<()> {
        if self.used.fetch_add(1, Ordering::Relaxed) >= self.limit {
            return Err(Error::BudgetExceeded { budget: self.limit, frontier: to_u64(prefix) });
        }
        Ok(())
    }
}

fn to_u64(prefix: &[u128]) -> Vec<u64> {
    prefix.iter().map(|&a| u64::try_from(a).unwrap_or(u64::MAX)).collect()
}

fn overflow(prefix: &[u128]) -> Error {
    Error::Overflow { frontier: to_u64(prefix) }
}

/// Candidate range for the next part, or `None` if empty.
fn candidate_range(p: u128, q: u128, slots: u128, lo: u128, prefix: &[u128]) -> Result<Option<(u128, u128)>> {
    let start = lo.max(q / p + 1);
    let end = slots.checked_mul(q).ok_or_else(|| overflow(prefix))? / p;
    Ok((start <= end).then_some((start, end)))
}

/// `p/q − 1/a` in lowest terms; positive because `a > q/p`.
fn subtract_unit(p: u128, q: u128, a: u128, prefix: &[u128]) -> Result<(u128, u128)> {
    let pa = p.checked_mul(a).ok_or_else(|| overflow(prefix))?;
    let qa = q.checked_mul(a).ok_or_else(|| overflow(prefix))?;
    let np = pa - q;
    let g = np.gcd(&qa);
    Ok((np / g, qa / g))
}

fn search(iota: u64, n: usize, config: &EnumerationConfig) -> Result<(Vec<Vec<u128>>, u64)> {
    let used = AtomicU64::new(0);
    let budget = Budget { limit: config.budget, used: &used };
    let tasks = split(iota, n, &budget)?;
    let run = |task: &Frontier| -> Result<Vec<Vec<u128>>> {
        let mut out = Vec::new();
        let mut prefix = task.prefix.clone();
        descend(task.p, task.q, n - prefix.len(), &mut prefix, &mut out, &budget)?;
        Ok(out)
    };
    let chunks: Vec<Result<Vec<Vec<u128>>>> = match config.execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            tasks.par_iter().map(run).collect()
        }
        _ => tasks.iter().map(run).collect(),
    };
    let mut all = Vec::new();
    for chunk in chunks {
        all.extend(chunk?);
    }
    Ok((all, used.load(Ordering::Relaxed)))
}

/// Expands the first levels of the tree breadth-first, in lexicographic
/// order. Frontiers that already fill all slots but one stay whole.
fn split(iota: u64, n: usize, budget: &Budget<'_>) -> Result<Vec<Frontier>> {
    let mut level = vec![Frontier { prefix: Vec::new(), p: 1, q: iota as u128 }];
    for _ in 0..SPLIT_DEPTH.min(n - 1) {
        let mut next = Vec::new();
        for f in level {
            budget.tick(&f.prefix)?;
            let slots = (n - f.prefix.len()) as u128;
            let lo = f.prefix.last().copied().unwrap_or(1);
            let Some((start, end)) = candidate_range(f.p, f.q, slots, lo, &f.prefix)? else {
                continue;
            };
            for a in start..=end {
                let (p, q) = subtract_unit(f.p, f.q, a, &f.prefix)?;
                let mut prefix = f.prefix.clone();
                prefix.push(a);
                next.push(Frontier { prefix, p, q });
            }
        }
        level = next;
    }
    Ok(level)
}

fn descend(
    p: u128,
    q: u128,
    slots: usize,
    prefix: &mut Vec<u128>,
    out: &mut Vec<Vec<u128>>,
    budget: &Budget<'_>,
) -> Result<()> {
    budget.tick(prefix)?;
    let lo = prefix.last().copied().unwrap_or(1);
    if slots == 1 {
        if p == 1 && q >= lo {
            let mut parts = prefix.clone();
            parts.push(q);
            out.push(parts);
        }
        return Ok(());
    }
    let Some((start, end)) = candidate_range(p, q, slots as u128, lo, prefix)? else {
        return Ok(());
    };
    for a in start..=end {
        let (np, nq) = subtract_unit(p, q, a, prefix)?;
        prefix.push(a);
        let r = descend(np, nq, slots - 1, prefix, out, budget);
        prefix.pop();
        r?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SharpnessStatus {
    /// Maximum equals the bound and the extremizers are exactly the
    /// classified ones.
    Confirmed,
    /// `(ι, n) = (1, 3)`: outside the classification; the maximum exceeds
    /// the bound.
    DocumentedException,
    Mismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharpnessVerdict {
    pub report: EnumerationReport,
    /// `None` where the classification does not apply.
    pub expected_extremizers: Option<Vec<UfPartition>>,
    pub status: SharpnessStatus,
}

/// Enumerates and checks `a_1⋯a_{n−1} ≤ 2t_{ι,n−1}²/ι` together with the
/// exact set of partitions attaining it.
pub fn verify_sharpness(iota: u64, n: usize, config: &EnumerationConfig) -> Result<SharpnessVerdict> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("need n >= 3, got {n}")));
    }
    let report = enumerate_with(iota, n, config)?;
    let expected = sharpness_extremizers(iota, n)?;
    let status = match &expected {
        None => {
            if report.bound_status == BoundStatus::Exceeds {
                SharpnessStatus::DocumentedException
            } else {
                SharpnessStatus::Mismatch(format!(
                    "expected the maximum {} to exceed the bound {}",
                    report.max_product, report.bound_value
                ))
            }
        }
        Some(expected) => {
            if report.bound_status != BoundStatus::Matches {
                SharpnessStatus::Mismatch(format!(
                    "maximum {} vs bound {} ({:?})",
                    report.max_product, report.bound_value, report.bound_status
                ))
            } else if &report.extremizers != expected {
                SharpnessStatus::Mismatch(format!(
                    "extremizers {:?} differ from expected {:?}",
                    report.extremizers, expected
                ))
            } else {
                SharpnessStatus::Confirmed
            }
        }
    };
    Ok(SharpnessVerdict { report, expected_extremizers: expected, status })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionVerdict {
    pub checked: usize,
    pub failures: Vec<(UfPartition, Vec<RegionViolation>)>,
}

impl RegionVerdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Region conditions for every partition in an existing report.
pub fn verify_region_report(report: &EnumerationReport) -> RegionVerdict {
    let failures = report
        .partitions
        .iter()
        .filter_map(|a| {
            let v = a.region_violations();
            (!v.is_empty()).then(|| (a.clone(), v))
        })
        .collect();
    RegionVerdict { checked: report.partitions.len(), failures }
}

pub fn verify_region(iota: u64, n: usize, config: &EnumerationConfig) -> Result<RegionVerdict> {
    Ok(verify_region_report(&enumerate_with(iota, n, config)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeMaximum {
    pub iota: u64,
    pub dim: usize,
    /// `max ∏a_k / (ι^d · lcm(a))` over all partitions of length `d + 1`.
    pub value: BigRat,
    pub witnesses: Vec<UfPartition>,
    /// Reduced witnesses, each with its weight system `Q(A)`.
    pub reduced: Vec<(UfPartition, WeightSystem)>,
    /// Witnesses with `λ_A > 1`; they correspond to no weighted projective
    /// space of index `ι`.
    pub discarded: Vec<UfPartition>,
}

/// Maximizes the degree bound `∏a_k / (ι^d · lcm)` over all uf-partitions
/// of length `d + 1`.
pub fn max_degree_over_partitions(iota: u64, dim: usize, config: &EnumerationConfig) -> Result<DegreeMaximum> {
    if dim < 1 {
        return Err(Error::OutOfRange("dimension must be at least 1".into()));
    }
    let report = enumerate_with(iota, dim + 1, config)?;
    let iota_pow = num_traits::Pow::pow(BigInt::from(iota), dim as u32);
    let values: Vec<BigRat> = report
        .partitions
        .iter()
        .map(|a| {
            let prod: BigInt = a.parts().iter().product();
            let lcm = lcm_many(a.parts()).expect("positive");
            BigRat::new(prod, lcm * &iota_pow)
        })
        .collect();
    let value = values.iter().max().cloned().unwrap_or_else(BigRat::zero);
    let witnesses: Vec<UfPartition> = report
        .partitions
        .iter()
        .zip(&values)
        .filter(|(_, v)| **v == value)
        .map(|(a, _)| a.clone())
        .collect();
    let (reduced, discarded): (Vec<_>, Vec<_>) = witnesses.iter().cloned().partition(|a| a.factor().is_one());
    let reduced = reduced.into_iter().map(|a| {
        let q = q_of_a(&a);
        (a, q)
    });
    Ok(DegreeMaximum { iota, dim, value, witnesses, reduced: reduced.collect(), discarded })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ufp(iota: u64, parts: &[u64]) -> UfPartition {
        UfPartition::from_u64(iota, parts).unwrap()
    }

    #[test]
    fn small_cases() {
        let r = enumerate(1, 3).unwrap();
        assert_eq!(r.partitions, vec![ufp(1, &[2, 3, 6]), ufp(1, &[2, 4, 4]), ufp(1, &[3, 3, 3])]);
        assert_eq!(r.max_product, 9.into());
        assert_eq!(r.bound_status, BoundStatus::Exceeds);

        let r = enumerate(2, 3).unwrap();
        assert_eq!(r.count(), 10);
        assert!(r.partitions.contains(&ufp(2, &[3, 12, 12])));
        assert!(r.partitions.contains(&ufp(2, &[6, 6, 6])));

        assert_eq!(enumerate(1, 4).unwrap().count(), 14);
        assert_eq!(enumerate(1, 5).unwrap().count(), 147);
    }

    #[test]
    fn length_two() {
        let r = enumerate(1, 2).unwrap();
        assert_eq!(r.partitions, vec![ufp(1, &[2, 2])]);
        let r = enumerate(2, 2).unwrap();
        assert_eq!(r.partitions, vec![ufp(2, &[3, 6]), ufp(2, &[4, 4])]);
    }

    #[test]
    fn modes_agree() {
        for (iota, n) in [(1, 5), (2, 4), (3, 4)] {
            let seq = enumerate_with(iota, n, &EnumerationConfig::sequential()).unwrap();
            let par = enumerate_with(iota, n, &EnumerationConfig::default()).unwrap();
            assert_eq!(seq, par);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = EnumerationConfig::sequential().with_budget(50);
        match enumerate_with(1, 5, &cfg) {
            Err(Error::BudgetExceeded { budget, frontier }) => {
                assert_eq!(budget, 50);
                assert!(!frontier.is_empty());
            }
            other => panic!("expected budget error, got {other:?}"),
        }
        let nodes = enumerate(1, 4).unwrap().nodes;
        assert!(enumerate_with(1, 4, &EnumerationConfig::default().with_budget(nodes)).is_ok());
        assert!(enumerate_with(1, 4, &EnumerationConfig::default().with_budget(nodes - 1)).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(enumerate(0, 3).is_err());
        assert!(enumerate(1, 1).is_err());
        assert!(verify_sharpness(1, 2, &EnumerationConfig::default()).is_err());
    }

    #[test]
    fn sharpness_examples() {
        let cfg = EnumerationConfig::default();
        let v = verify_sharpness(1, 4, &cfg).unwrap();
        assert_eq!(v.status, SharpnessStatus::Confirmed);
        assert_eq!(v.report.max_product, 72.into());
        assert_eq!(v.report.extremizers, vec![ufp(1, &[2, 3, 12, 12]), ufp(1, &[2, 6, 6, 6])]);

        let v = verify_sharpness(2, 3, &cfg).unwrap();
        assert_eq!(v.status, SharpnessStatus::Confirmed);
        assert_eq!(v.report.max_product, 36.into());

        let v = verify_sharpness(1, 3, &cfg).unwrap();
        assert_eq!(v.status, SharpnessStatus::DocumentedException);
        assert_eq!(v.report.bound_value, BigRat::from_integer(8.into()));

        let v = verify_sharpness(3, 3, &cfg).unwrap();
        assert_eq!(v.status, SharpnessStatus::Confirmed);
        assert_eq!(v.report.extremizers, vec![ufp(3, &[4, 24, 24])]);
        assert_eq!(v.report.max_product, 96.into());
    }

    #[test]
    fn region_examples() {
        let cfg = EnumerationConfig::default();
        let v = verify_region(1, 4, &cfg).unwrap();
        assert_eq!((v.checked, v.passed()), (14, true));
        let v = verify_region(2, 3, &cfg).unwrap();
        assert_eq!((v.checked, v.passed()), (10, true));
    }

    #[test]
    fn degree_maximum_examples() {
        let cfg = EnumerationConfig::default();
        let m = max_degree_over_partitions(1, 3, &cfg).unwrap();
        assert_eq!(m.value, BigRat::from_integer(72.into()));
        assert_eq!(m.witnesses, vec![ufp(1, &[2, 3, 12, 12]), ufp(1, &[2, 6, 6, 6])]);
        assert!(m.discarded.is_empty());

        let m = max_degree_over_partitions(2, 2, &cfg).unwrap();
        assert_eq!(m.value, BigRat::from_integer(9.into()));
        assert_eq!(m.discarded, vec![ufp(2, &[6, 6, 6])]);
        assert_eq!(m.reduced.len(), 1);
        assert_eq!(m.reduced[0].1, WeightSystem::from_u64(&[4, 1, 1]).unwrap());

        let m = max_degree_over_partitions(1, 2, &cfg).unwrap();
        assert_eq!(m.value, BigRat::from_integer(9.into()));
        assert_eq!(m.reduced[0].1, WeightSystem::from_u64(&[1, 1, 1]).unwrap());
    }
}
