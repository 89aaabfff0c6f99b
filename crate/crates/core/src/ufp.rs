//! Unit-fraction partitions of `1/ι` and their correspondence with weight
//! systems.
//!
//! A uf-partition of `ι` is a tuple `A = (a_1, …, a_n)` of positive integers
//! with `Σ 1/a_k = 1/ι`. Parts are stored ascending. The correspondence with
//! weight systems is
//!
//! ```text
//! A(Q) = (ι_Q·|Q|/q_0, …, ι_Q·|Q|/q_d)      Q(A) = (t_A/a_1, …, t_A/a_n)
//! ```
//!
//! with `t_A = lcm(A)`; both land on reduced objects.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{det_exact, lcm_many, BigRat, IntMatrix};
use crate::error::{Error, Result};
use crate::weights::WeightSystem;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UfPartition {
    iota: BigInt,
    parts: Vec<BigInt>,
}

impl UfPartition {
    /// Validates `Σ 1/a_k = 1/iota` exactly and stores the parts ascending.
    /// Length-one tuples are rejected.
    pub fn new(iota: BigInt, mut parts: Vec<BigInt>) -> Result<Self> {
        if !iota.is_positive() {
            return Err(Error::OutOfRange(format!("iota must be positive, got {iota}")));
        }
        if parts.len() < 2 {
            return Err(Error::OutOfRange(format!(
                "a uf-partition needs at least two parts, got {}",
                parts.len()
            )));
        }
        if parts.iter().any(|a| !a.is_positive()) {
            return Err(Error::ZeroEntry);
        }
        if reciprocal_sum(&parts) != BigRat::new(BigInt::one(), iota.clone()) {
            return Err(Error::NotUfPartition { iota });
        }
        parts.sort();
        Ok(UfPartition { iota, parts })
    }

    pub fn from_u64(iota: u64, parts: &[u64]) -> Result<Self> {
        Self::new(iota.into(), parts.iter().map(|&a| BigInt::from(a)).collect())
    }

    /// Builds a partition from parts already known to be ascending and valid.
    pub(crate) fn new_unchecked(iota: BigInt, parts: Vec<BigInt>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] <= w[1]));
        UfPartition { iota, parts }
    }

    pub fn iota(&self) -> &BigInt {
        &self.iota
    }

    pub fn parts(&self) -> &[BigInt] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `t_A = lcm(a_1, …, a_n)`
    pub fn total_weight(&self) -> BigInt {
        lcm_many(&self.parts).expect("parts are positive")
    }

    /// `λ_A = gcd(ι, a_1, …, a_n)`
    pub fn factor(&self) -> BigInt {
        let mut g = self.iota.clone();
        for a in &self.parts {
            g = g.gcd(a);
        }
        g
    }

    pub fn is_reduced(&self) -> bool {
        self.factor().is_one()
    }

    /// `A_red = A/λ_A`, a uf-partition of `ι/λ_A`.
    pub fn reduce(&self) -> UfPartition {
        let g = self.factor();
        UfPartition {
            iota: &self.iota / &g,
            parts: self.parts.iter().map(|a| a / &g).collect(),
        }
    }

    /// True iff every part divides the lcm of the others.
    pub fn is_well_formed(&self) -> bool {
        (0..self.parts.len()).all(|skip| {
            let mut l = BigInt::one();
            for (i, a) in self.parts.iter().enumerate() {
                if i != skip {
                    l = l.lcm(a);
                }
            }
            l.is_multiple_of(&self.parts[skip])
        })
    }

    /// Product `a_1 ⋯ a_{n-1}` of all parts but the largest.
    pub fn head_product(&self) -> BigInt {
        self.parts[..self.parts.len() - 1].iter().product()
    }

    /// `a_1 ⋯ a_n / lcm(a_1, …, a_n)`, an integer.
    pub fn product_over_lcm(&self) -> BigInt {
        let p: BigInt = self.parts.iter().product();
        p / self.total_weight()
    }

    /// Checks the region conditions on the reciprocal tuple
    /// `x = (1/a_1, …, 1/a_n)`:
    ///
    /// * A1: `x_1 ≥ … ≥ x_n ≥ 0`
    /// * A2: `x_1 + … + x_n = 1/ι`
    /// * A3: `x_1 ⋯ x_k ≤ ι (x_{k+1} + … + x_n)` for `k = 1, …, n-1`
    pub fn region_violations(&self) -> Vec<RegionViolation> {
        region_violations(&self.iota, &self.parts)
    }
}

impl fmt::Display for UfPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for UfPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UfPartition[iota={}]{self}", self.iota)
    }
}

fn reciprocal_sum(parts: &[BigInt]) -> BigRat {
    parts
        .iter()
        .map(|a| BigRat::new(BigInt::one(), a.clone()))
        .fold(BigRat::zero(), |acc, x| acc + x)
}

/// A failed region condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionViolation {
    /// Reciprocals not descending (or a non-positive part).
    Ordering,
    /// Reciprocal sum differs from `1/ι`.
    Sum,
    /// The product condition fails at the given `k` (1-based).
    Product { k: usize },
}

impl fmt::Display for RegionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionViolation::Ordering => write!(f, "A1"),
            RegionViolation::Sum => write!(f, "A2"),
            RegionViolation::Product { k } => write!(f, "A3 at k={k}"),
        }
    }
}

/// Region conditions for an arbitrary tuple of positive integers, in exact
/// arithmetic. An empty result means the reciprocal tuple lies in the region.
pub fn region_violations(iota: &BigInt, parts: &[BigInt]) -> Vec<RegionViolation> {
    let mut out = Vec::new();
    if parts.iter().any(|a| !a.is_positive()) || parts.windows(2).any(|w| w[0] > w[1]) {
        out.push(RegionViolation::Ordering);
        return out;
    }
    let iota_r = BigRat::from_integer(iota.clone());
    if reciprocal_sum(parts) != BigRat::new(BigInt::one(), iota.clone()) {
        out.push(RegionViolation::Sum);
    }
    let mut head = BigRat::one();
    for k in 1..parts.len() {
        head /= BigRat::from_integer(parts[k - 1].clone());
        let tail = reciprocal_sum(&parts[k..]);
        if head > &iota_r * tail {
            out.push(RegionViolation::Product { k });
        }
    }
    out
}

/// `A(Q)` with parts paired to the weights, i.e. entry `i` is `ι_Q·|Q|/q_i`.
pub fn a_of_q_paired(q: &WeightSystem) -> (BigInt, Vec<BigInt>) {
    let iota = q.index();
    let scaled = &iota * q.total_weight();
    let parts = q
        .weights()
        .iter()
        .map(|w| {
            debug_assert!(scaled.is_multiple_of(w));
            &scaled / w
        })
        .collect();
    (iota, parts)
}

/// `A(Q)`, sorted ascending. Always reduced.
pub fn a_of_q(q: &WeightSystem) -> UfPartition {
    let (iota, mut parts) = a_of_q_paired(q);
    parts.sort();
    debug_assert!(UfPartition::new(iota.clone(), parts.clone()).is_ok());
    UfPartition::new_unchecked(iota, parts)
}

/// `Q(A) = (t_A/a_1, …, t_A/a_n)` in the order of the (ascending) parts, so
/// the weights come out descending.
pub fn q_of_a(a: &UfPartition) -> WeightSystem {
    let t = a.total_weight();
    WeightSystem::new(a.parts().iter().map(|p| &t / p).collect())
        .expect("quotients of the lcm are positive")
}

/// Closed form of `det G(ι; a_1, …, a_n)`:
/// `a_1⋯a_n − ι Σ_i Π_{j≠i} a_j`.
pub fn det_g_closed(iota: &BigInt, parts: &[BigInt]) -> BigInt {
    let full: BigInt = parts.iter().product();
    let mut sum = BigInt::zero();
    for i in 0..parts.len() {
        let p: BigInt = parts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, a)| a)
            .product();
        sum += p;
    }
    full - iota * sum
}

/// `G(ι; a_1, …, a_n)`: diagonal `a_k − ι`, off-diagonal `−ι`.
pub fn g_matrix(iota: &BigInt, parts: &[BigInt]) -> Result<IntMatrix> {
    let n = parts.len();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(if i == j { &parts[i] - iota } else { -iota.clone() });
        }
    }
    IntMatrix::new(n, n, entries)
}

/// `det G(ι; a_1, …, a_n)` by explicit elimination.
pub fn det_g_matrix(iota: &BigInt, parts: &[BigInt]) -> Result<BigInt> {
    det_exact(&g_matrix(iota, parts)?)
}
