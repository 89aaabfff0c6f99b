//! Weight systems `Q = (q_0, …, q_d)` and their invariants.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed};

use crate::arith::{gcd_many, lcm_many, BigRat};
use crate::error::{Error, Result};

/// An ordered tuple of positive integer weights of length at least two.
///
/// Order is significant: weight `q_i` is paired with vertex `v_i` of the
/// associated simplex. Use [`WeightSystem::sorted_desc`] for comparisons up
/// to permutation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightSystem {
    weights: Vec<BigInt>,
}

impl WeightSystem {
    pub fn new(weights: Vec<BigInt>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidWeights(format!(
                "need at least two weights, got {}",
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::InvalidWeights(format!("weight {w} is not positive")));
        }
        Ok(WeightSystem { weights })
    }

    pub fn from_u64(weights: &[u64]) -> Result<Self> {
        Self::new(weights.iter().map(|&w| BigInt::from(w)).collect())
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    /// Always false; a weight system has at least two entries.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Dimension `d` of the associated weighted projective space.
    pub fn dim(&self) -> usize {
        self.weights.len() - 1
    }

    /// `|Q| = q_0 + … + q_d`
    pub fn total_weight(&self) -> BigInt {
        self.weights.iter().sum()
    }

    /// `λ_Q = gcd(Q)`
    pub fn factor(&self) -> BigInt {
        gcd_many(&self.weights).expect("nonempty")
    }

    pub fn reduce(&self) -> WeightSystem {
        let g = self.factor();
        WeightSystem {
            weights: self.weights.iter().map(|w| w / &g).collect(),
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.factor().is_one()
    }

    /// True iff every `d` of the weights are coprime.
    pub fn is_well_formed(&self) -> bool {
        (0..self.len()).all(|skip| {
            let mut g = BigInt::default();
            for (i, w) in self.weights.iter().enumerate() {
                if i != skip {
                    g = g.gcd(w);
                }
            }
            g.is_one()
        })
    }

    /// The index `ι_Q`: the least `k ≥ 1` with `q_i | k·|Q|` for every `i`.
    /// Computed as `lcm_i(q_i / gcd(q_i, |Q|))`.
    pub fn index(&self) -> BigInt {
        let total = self.total_weight();
        let parts: Vec<BigInt> = self.weights.iter().map(|q| q / q.gcd(&total)).collect();
        lcm_many(&parts).expect("weights are positive")
    }

    /// Anticanonical degree `|Q_red|^d / (λ · ∏ (Q_red)_i)` with
    /// `λ = lambda_p · λ_Q`.
    ///
    /// For a reduced weight system and `lambda_p = 1` this is the degree of
    /// `P(q_0, …, q_d)`; a fake quotient with multiplicity `λ` has degree
    /// divided by `λ`.
    pub fn degree(&self, lambda_p: &BigInt) -> Result<BigRat> {
        if !lambda_p.is_positive() {
            return Err(Error::OutOfRange(format!("lambda must be positive, got {lambda_p}")));
        }
        let lambda_q = self.factor();
        let reduced = self.reduce();
        let numer: BigInt = Pow::pow(&reduced.total_weight(), self.dim() as u32);
        let prod: BigInt = reduced.weights.iter().product();
        Ok(BigRat::new(numer, lambda_p * lambda_q * prod))
    }

    pub fn sorted_desc(&self) -> WeightSystem {
        let mut weights = self.weights.clone();
        weights.sort_by(|a, b| b.cmp(a));
        WeightSystem { weights }
    }

    pub fn same_up_to_permutation(&self, other: &WeightSystem) -> bool {
        self.sorted_desc() == other.sorted_desc()
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightSystem{self}")
    }
}

/// Parses a comma-separated list, optionally wrapped in parentheses.
impl FromStr for WeightSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WeightSystem::new(parse_int_list(s)?)
    }
}

pub(crate) fn parse_int_list(s: &str) -> Result<Vec<BigInt>> {
    let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
    if trimmed.trim().is_empty() {
        return Err(Error::EmptyInput);
    }
    trimmed
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidWeights(format!("cannot parse {:?} as an integer", t.trim())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ws(w: &[u64]) -> WeightSystem {
        WeightSystem::from_u64(w).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRat {
        BigRat::new(n.into(), d.into())
    }

    /// Definitional scan for the index.
    fn index_by_scan(q: &WeightSystem) -> BigInt {
        let total = q.total_weight();
        let mut k = BigInt::one();
        loop {
            if q.weights().iter().all(|w| (&k * &total).is_multiple_of(w)) {
                return k;
            }
            k += 1;
        }
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(WeightSystem::from_u64(&[1]).is_err());
        assert!(WeightSystem::from_u64(&[1, 0, 2]).is_err());
        assert!("1,-1".parse::<WeightSystem>().is_err());
        assert!("1,x".parse::<WeightSystem>().is_err());
        assert!("".parse::<WeightSystem>().is_err());
        assert_eq!("(6, 4,1,1)".parse::<WeightSystem>().unwrap(), ws(&[6, 4, 1, 1]));
    }

    #[test]
    fn total_weight_examples() {
        assert_eq!(ws(&[1, 1, 1]).total_weight(), 3.into());
        assert_eq!(ws(&[6, 4, 1, 1]).total_weight(), 12.into());
        assert_eq!(ws(&[28, 12, 1, 1]).total_weight(), 42.into());
    }

    #[test]
    fn factor_and_reduce() {
        assert_eq!(ws(&[2, 4, 6]).factor(), 2.into());
        assert_eq!(ws(&[2, 4, 6]).reduce(), ws(&[1, 2, 3]));
        assert_eq!(ws(&[4, 2, 2]).factor(), 2.into());
        assert_eq!(ws(&[4, 2, 2]).reduce(), ws(&[2, 1, 1]));
        assert_eq!(ws(&[6, 6, 6]).factor(), 6.into());
        assert_eq!(ws(&[6, 6, 6]).reduce(), ws(&[1, 1, 1]));
        assert!(ws(&[2, 4, 6]).reduce().is_reduced());
    }

    #[test]
    fn well_formedness() {
        assert!(ws(&[6, 4, 1, 1]).is_well_formed());
        assert!(!ws(&[2, 2, 1]).is_well_formed());
        assert!(ws(&[1, 1, 1, 1, 1]).is_well_formed());
        assert!(!ws(&[6, 10, 15]).reduce().is_well_formed());
        assert!(ws(&[1, 2, 3]).is_well_formed());
    }

    #[test]
    fn index_examples() {
        assert_eq!(ws(&[1, 1, 1]).index(), 1.into());
        assert_eq!(ws(&[3, 1, 1, 1]).index(), 1.into());
        assert_eq!(ws(&[28, 12, 1, 1]).index(), 2.into());
        assert_eq!(ws(&[4, 1, 1]).index(), 2.into());
    }

    #[test]
    fn index_matches_scan() {
        for a in 1..=9u64 {
            for b in 1..=a {
                for c in 1..=b {
                    let q = ws(&[a, b, c]);
                    assert_eq!(q.index(), index_by_scan(&q), "{q}");
                    let q = ws(&[a, b, c, 1]);
                    assert_eq!(q.index(), index_by_scan(&q), "{q}");
                }
            }
        }
    }

    #[test]
    fn degree_examples() {
        let one = BigInt::one();
        assert_eq!(ws(&[1, 1, 1]).degree(&one).unwrap(), rat(9, 1));
        assert_eq!(ws(&[6, 4, 1, 1]).degree(&one).unwrap(), rat(72, 1));
        assert_eq!(ws(&[28, 12, 1, 1]).degree(&one).unwrap(), rat(441, 2));
        assert_eq!(ws(&[4, 2, 2]).degree(&one).unwrap(), rat(4, 1));
        assert_eq!(ws(&[2, 1, 1]).degree(&BigInt::from(2)).unwrap(), rat(4, 1));
        assert!(ws(&[1, 1]).degree(&BigInt::from(0)).is_err());
    }

    #[test]
    fn degree_scales_with_lambda() {
        let q = ws(&[5, 3, 2, 1]);
        let base = q.degree(&BigInt::one()).unwrap();
        for l in 1..6 {
            let l = BigInt::from(l);
            assert_eq!(q.degree(&l).unwrap() * BigRat::from_integer(l), base);
        }
    }

    #[test]
    fn permutation_utility() {
        assert!(ws(&[1, 4, 6, 1]).same_up_to_permutation(&ws(&[6, 4, 1, 1])));
        assert!(!ws(&[1, 4, 6]).same_up_to_permutation(&ws(&[6, 4, 1, 1])));
        assert_eq!(ws(&[6, 4, 1, 1]).to_string(), "(6,4,1,1)");
    }
}
