//! Sylvester-type sequences and the extremal objects built from them.
//!
//! For `ι ≥ 1`:
//!
//! ```text
//! s_{ι,1} = ι + 1,   s_{ι,k+1} = s_{ι,k}(s_{ι,k} − 1) + 1,   t_{ι,k} = s_{ι,k} − 1
//! ```
//!
//! so that `t_{ι,k} = ι·s_{ι,1}⋯s_{ι,k−1}`. The enlarged Sylvester partition
//! `syl_{ι,n} = (s_{ι,1}, …, s_{ι,n−2}, 2t_{ι,n−1}, 2t_{ι,n−1})` and the weight
//! system `Q_{ι,d} = Q(syl_{ι,d+1})` (also written `Q_d^ι`) realize the sharp
//! degree bound for fake weighted projective spaces of Gorenstein index `ι`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::arith::BigRat;
use crate::error::{Error, Result};
use crate::ufp::{q_of_a, UfPartition};
use crate::weights::WeightSystem;

/// Memoized terms `s_{ι,1}, s_{ι,2}, …`, extended on demand.
#[derive(Debug)]
pub struct SylvesterSeq {
    iota: u64,
    terms: RwLock<Vec<BigInt>>,
}

impl SylvesterSeq {
    pub fn new(iota: u64) -> Result<Self> {
        if iota == 0 {
            return Err(Error::OutOfRange("iota must be positive".into()));
        }
        Ok(SylvesterSeq {
            iota,
            terms: RwLock::new(vec![BigInt::from(iota) + 1]),
        })
    }

    /// Shared, process-wide sequence for `iota`.
    pub fn shared(iota: u64) -> Result<Arc<SylvesterSeq>> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<SylvesterSeq>>>> = OnceLock::new();
        if iota == 0 {
            return Err(Error::OutOfRange("iota must be positive".into()));
        }
        let mut cache = CACHE.get_or_init(Default::default).lock().expect("poisoned");
        Ok(cache
            .entry(iota)
            .or_insert_with(|| Arc::new(SylvesterSeq::new(iota).expect("iota checked")))
            .clone())
    }

    pub fn iota(&self) -> u64 {
        self.iota
    }

    /// `s_{ι,k}` for `k ≥ 1`.
    pub fn s(&self, k: usize) -> BigInt {
        assert!(k >= 1, "sequence is indexed from 1");
        if let Some(v) = self.terms.read().expect("poisoned").get(k - 1) {
            return v.clone();
        }
        let mut terms = self.terms.write().expect("poisoned");
        while terms.len() < k {
            let last = terms.last().expect("seeded");
            let next = last * (last - 1u32) + 1u32;
            terms.push(next);
        }
        terms[k - 1].clone()
    }

    /// `t_{ι,k} = s_{ι,k} − 1`.
    pub fn t(&self, k: usize) -> BigInt {
        self.s(k) - 1u32
    }

    /// `t_{ι,k}` via the product form `ι·s_{ι,1}⋯s_{ι,k−1}`.
    pub fn t_product(&self, k: usize) -> BigInt {
        assert!(k >= 1);
        (1..k).map(|j| self.s(j)).fold(BigInt::from(self.iota), |acc, s| acc * s)
    }

    /// `s_{ι,1}, …, s_{ι,count}`.
    pub fn terms(&self, count: usize) -> Vec<BigInt> {
        if count > 0 {
            self.s(count);
        }
        self.terms.read().expect("poisoned")[..count].to_vec()
    }
}

/// `syl_{ι,n}` for `n ≥ 3`.
pub fn syl_partition(iota: u64, n: usize) -> Result<UfPartition> {
    if n < 3 {
        return Err(Error::OutOfRange(format!(
            "the enlarged Sylvester partition needs length n >= 3, got {n}"
        )));
    }
    let seq = SylvesterSeq::shared(iota)?;
    let mut parts: Vec<BigInt> = (1..=n - 2).map(|k| seq.s(k)).collect();
    let tail = seq.t(n - 1) * 2u32;
    parts.push(tail.clone());
    parts.push(tail);
    UfPartition::new(iota.into(), parts)
}

/// `Q_{ι,d} = (2t_{ι,d}/s_{ι,1}, …, 2t_{ι,d}/s_{ι,d−1}, 1, 1)` for `d ≥ 2`.
///
/// Computed from the closed form and cross-checked against `Q(syl_{ι,d+1})`.
pub fn extremal_weights(iota: u64, d: usize) -> Result<WeightSystem> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("dimension must be at least 2, got {d}")));
    }
    let seq = SylvesterSeq::shared(iota)?;
    let two_t = seq.t(d) * 2u32;
    let mut weights: Vec<BigInt> = (1..d).map(|k| &two_t / seq.s(k)).collect();
    weights.push(BigInt::one());
    weights.push(BigInt::one());
    let closed = WeightSystem::new(weights)?;
    let via_partition = q_of_a(&syl_partition(iota, d + 1)?);
    if closed != via_partition {
        return Err(Error::InvariantViolation(format!(
            "closed form {closed} disagrees with Q(syl) = {via_partition}"
        )));
    }
    Ok(closed)
}

/// Sharp upper bound on the anticanonical degree of a `d`-dimensional fake
/// weighted projective space of Gorenstein index `ι`:
///
/// | d | ι | bound |
/// |---|---|-------|
/// | 1 | any | 2 |
/// | 2 | 1 | 9 |
/// | otherwise | | `2 t_{ι,d}² / ι^{d+1}` |
pub fn degree_bound(iota: u64, d: usize) -> Result<BigRat> {
    if iota == 0 || d == 0 {
        return Err(Error::OutOfRange(format!("need iota >= 1 and d >= 1, got ({iota}, {d})")));
    }
    if d == 1 {
        return Ok(BigRat::from_integer(2.into()));
    }
    if iota == 1 && d == 2 {
        return Ok(BigRat::from_integer(9.into()));
    }
    let t = SylvesterSeq::shared(iota)?.t(d);
    let numer = Pow::pow(&t, 2u32) * 2u32;
    let denom: BigInt = Pow::pow(BigInt::from(iota), (d + 1) as u32);
    Ok(BigRat::new(numer, denom))
}

/// The weight systems attaining [`degree_bound`], exactly as in the table.
pub fn attainers(iota: u64, d: usize) -> Result<Vec<WeightSystem>> {
    if iota == 0 || d == 0 {
        return Err(Error::OutOfRange(format!("need iota >= 1 and d >= 1, got ({iota}, {d})")));
    }
    match (iota, d) {
        (_, 1) => Ok(vec![WeightSystem::from_u64(&[1, 1])?]),
        (1, 2) => Ok(vec![WeightSystem::from_u64(&[1, 1, 1])?]),
        (1, 3) => Ok(vec![
            WeightSystem::from_u64(&[3, 1, 1, 1])?,
            WeightSystem::from_u64(&[6, 4, 1, 1])?,
        ]),
        _ => Ok(vec![extremal_weights(iota, d)?]),
    }
}

/// Right-hand side of the partition inequality `a_1⋯a_{n−1} ≤ 2t_{ι,n−1}²/ι`.
pub fn partition_product_bound(iota: u64, n: usize) -> Result<BigRat> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("need n >= 2, got {n}")));
    }
    let t = SylvesterSeq::shared(iota)?.t(n - 1);
    Ok(BigRat::new(Pow::pow(&t, 2u32) * 2u32, BigInt::from(iota)))
}

/// The ascending partitions attaining `a_1⋯a_{n−1} = 2t_{ι,n−1}²/ι`, as
/// classified for `n ≥ 3`. Returns `None` for `(ι, n) = (1, 3)`, which the
/// classification excludes.
pub fn sharpness_extremizers(iota: u64, n: usize) -> Result<Option<Vec<UfPartition>>> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("need n >= 3, got {n}")));
    }
    if (iota, n) == (1, 3) {
        return Ok(None);
    }
    let mut out = vec![syl_partition(iota, n)?];
    match (iota, n) {
        (2, 3) => out.push(UfPartition::from_u64(2, &[6, 6, 6])?),
        (1, 4) => out.push(UfPartition::from_u64(1, &[2, 6, 6, 6])?),
        _ => {}
    }
    out.sort();
    Ok(Some(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductClass {
    Strict,
    Equality,
    /// The left side exceeds the right side.
    Exception,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCheck {
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub class: ProductClass,
}

/// Compares `(r+1)^r · t_{ι,n−r+1}^{r+1}` with `2·t_{ι,n}²` exactly.
pub fn check_product_inequality(iota: u64, n: usize, r: usize) -> Result<ProductCheck> {
    if r < 1 || r > n {
        return Err(Error::OutOfRange(format!("need 1 <= r <= n, got r={r}, n={n}")));
    }
    let seq = SylvesterSeq::shared(iota)?;
    let lhs: BigInt =
        Pow::pow(BigInt::from(r + 1), r as u32) * Pow::pow(&seq.t(n - r + 1), (r + 1) as u32);
    let rhs: BigInt = Pow::pow(&seq.t(n), 2u32) * 2u32;
    let class = match lhs.cmp(&rhs) {
        std::cmp::Ordering::Less => ProductClass::Strict,
        std::cmp::Ordering::Equal => ProductClass::Equality,
        std::cmp::Ordering::Greater => ProductClass::Exception,
    };
    Ok(ProductCheck { lhs, rhs, class })
}

/// The classification predicted for [`check_product_inequality`]: equality iff
/// `r = 1`, `(1,3,2)` or `(2,2,2)`; failure only at `(1,2,2)`.
pub fn expected_product_class(iota: u64, n: usize, r: usize) -> ProductClass {
    match (iota, n, r) {
        (1, 2, 2) => ProductClass::Exception,
        (_, _, 1) | (1, 3, 2) | (2, 2, 2) => ProductClass::Equality,
        _ => ProductClass::Strict,
    }
}
