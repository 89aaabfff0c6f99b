//! Lattice simplices containing the origin in their interior, their duals,
//! and the invariants of the associated fake weighted projective space.
//!
//! A simplex `P = conv(v_0, …, v_d) ⊂ Z^d` is stored by its vertices. Its
//! weight system is `q_i = |det(v_j ; j ≠ i)|`, so that `Σ q_i v_i = 0`; the
//! factor `λ_P = gcd(Q_P)` is the index of the sublattice spanned by the
//! vertices. The dual simplex has one vertex `u_F` per facet `F`, the linear
//! form with `⟨u_F, v⟩ = −1` on `F`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::arith::{det_exact, gcd_many, kernel_complement, lcm_many, solve_exact, BigRat, IntMatrix};
use crate::error::{Error, Result};
use crate::ufp::{a_of_q, UfPartition};
use crate::weights::WeightSystem;

#[derive(Clone, PartialEq, Eq)]
pub struct LatticeSimplex {
    vertices: Vec<Vec<BigInt>>,
    /// `(-1)^i det(v_j ; j ≠ i)`, all nonzero with a common sign.
    signed_weights: Vec<BigInt>,
}

impl LatticeSimplex {
    /// Validates a list of `d + 1` vertices in `Z^d`: the simplex must be
    /// full-dimensional with the origin in its interior.
    pub fn new(vertices: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = vertices.len();
        if n < 2 {
            return Err(Error::DegenerateSimplex(format!("need at least 2 vertices, got {n}")));
        }
        let d = n - 1;
        if let Some(v) = vertices.iter().find(|v| v.len() != d) {
            return Err(Error::DegenerateSimplex(format!(
                "{n} vertices need {d} coordinates each, found a vertex with {}",
                v.len()
            )));
        }
        let columns = vertex_matrix(&vertices);
        let mut signed_weights = Vec::with_capacity(n);
        for i in 0..n {
            let minor = det_exact(&columns.without_column(i))?;
            signed_weights.push(if i % 2 == 0 { minor } else { -minor });
        }
        let affine_det: BigInt = signed_weights.iter().sum();
        if affine_det.is_zero() {
            return Err(Error::DegenerateSimplex("vertices are affinely dependent".into()));
        }
        let positive = signed_weights[0].is_positive();
        if signed_weights.iter().any(|c| c.is_zero() || c.is_positive() != positive) {
            return Err(Error::OriginNotInterior);
        }
        Ok(LatticeSimplex { vertices, signed_weights })
    }

    pub fn from_i64(vertices: &[&[i64]]) -> Result<Self> {
        Self::new(
            vertices
                .iter()
                .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// The simplex `P_Q` of a reduced, well-formed weight system: its vertices
    /// are the columns of a basis of the lattice orthogonal to `Q`. Unique up
    /// to lattice isomorphism.
    pub fn from_weights(q: &WeightSystem) -> Result<Self> {
        if !q.is_reduced() {
            return Err(Error::NotReduced);
        }
        if !q.is_well_formed() {
            return Err(Error::NotWellFormed);
        }
        let b = kernel_complement(q.weights())?;
        let vertices = (0..b.cols()).map(|j| b.column(j)).collect();
        Self::new(vertices)
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Vec<BigInt>] {
        &self.vertices
    }

    /// False if some vertex is a proper multiple of a lattice point.
    pub fn has_primitive_vertices(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| gcd_many(v).map(|g| g.is_one()).unwrap_or(false))
    }

    /// Image of the simplex under the linear map `m`.
    pub fn transform(&self, m: &IntMatrix) -> Result<LatticeSimplex> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| m.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        LatticeSimplex::new(vertices)
    }

    /// The (unreduced) weight system `Q_P`.
    pub fn weights(&self) -> WeightSystem {
        WeightSystem::new(self.signed_weights.iter().map(|c| c.abs()).collect())
            .expect("interior origin gives positive weights")
    }

    /// `λ_P = gcd(Q_P)`.
    pub fn lambda(&self) -> BigInt {
        self.weights().factor()
    }

    pub fn dual(&self) -> Result<DualSimplex> {
        let d = self.dim();
        let rhs = vec![-BigInt::one(); d];
        let mut normals = Vec::with_capacity(d + 1);
        for i in 0..=d {
            let rows: Vec<Vec<BigInt>> = self
                .vertices
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.clone())
                .collect();
            normals.push(solve_exact(&IntMatrix::from_rows(rows)?, &rhs)?);
        }
        let dual = DualSimplex { normals };
        for (i, u) in dual.normals.iter().enumerate() {
            if pair(u, &self.vertices[i]) <= -BigRat::one() {
                return Err(Error::OriginNotInterior);
            }
        }
        Ok(dual)
    }

    /// Gorenstein index `ι_P`: the least `k` with `k·P*` a lattice polytope.
    pub fn gorenstein_index(&self) -> Result<BigInt> {
        Ok(self.dual()?.index())
    }

    /// Anticanonical degree, i.e. the normalized volume of the dual simplex.
    pub fn degree(&self) -> Result<BigRat> {
        self.dual()?.normalized_volume()
    }

    /// `A(P) = (ι_P|Q_P|/q_0, …, ι_P|Q_P|/q_d)`, sorted ascending. Also checks
    /// `A(P)_red = A(Q_P)` and `ι_P·|Q_P| = λ_P·t_{A(P)}`.
    pub fn uf_partition(&self) -> Result<SimplexPartition> {
        let iota = self.gorenstein_index()?;
        let q = self.weights();
        let scaled = &iota * q.total_weight();
        let mut paired = Vec::with_capacity(q.len());
        for w in q.weights() {
            if !scaled.is_multiple_of(w) {
                return Err(Error::InvariantViolation(format!(
                    "ι|Q| = {scaled} is not divisible by weight {w}"
                )));
            }
            paired.push(&scaled / w);
        }
        let partition = UfPartition::new(iota.clone(), paired.clone())
            .map_err(|e| Error::InvariantViolation(format!("A(P) is not a uf-partition: {e}")))?;
        if partition.reduce() != a_of_q(&q) {
            return Err(Error::InvariantViolation(format!(
                "A(P)_red = {} differs from A(Q_P) = {}",
                partition.reduce(),
                a_of_q(&q)
            )));
        }
        if scaled != self.lambda() * partition.total_weight() {
            return Err(Error::InvariantViolation(format!(
                "ι_P|Q_P| = {scaled} differs from λ_P·t_A"
            )));
        }
        Ok(SimplexPartition { partition, paired })
    }

    /// Compares `λ_P·ι_P^d·Vol(P*)` with `a_0⋯a_d / lcm(a_0, …, a_d)` for
    /// `A = A(P)`.
    pub fn check_volume_formula(&self) -> Result<VolumeFormulaReport> {
        let lambda = self.lambda();
        let iota = self.gorenstein_index()?;
        let volume = self.degree()?;
        let iota_pow: BigInt = Pow::pow(&iota, self.dim() as u32);
        let lhs = volume * BigRat::from_integer(lambda * iota_pow);
        let a = self.uf_partition()?.partition;
        let rhs = BigRat::from_integer(a.product_over_lcm());
        Ok(VolumeFormulaReport { holds: lhs == rhs, lhs, rhs })
    }

    /// All invariants in one pass.
    pub fn analyze(&self) -> Result<SimplexAnalysis> {
        let dual = self.dual()?;
        let weights = self.weights();
        let lambda = weights.factor();
        let iota = dual.index();
        let degree = dual.normalized_volume()?;
        let degree_from_weights = weights.reduce().degree(&lambda)?;
        if degree != degree_from_weights {
            return Err(Error::InvariantViolation(format!(
                "geometric degree {degree} differs from weight formula {degree_from_weights}"
            )));
        }
        let partition = self.uf_partition()?;
        let volume_formula = self.check_volume_formula()?;
        Ok(SimplexAnalysis {
            weights,
            lambda,
            iota,
            degree,
            normals: dual.normals,
            partition,
            volume_formula,
            primitive: self.has_primitive_vertices(),
        })
    }
}

fn vertex_matrix(vertices: &[Vec<BigInt>]) -> IntMatrix {
    let d = vertices.len() - 1;
    let mut rows = vec![Vec::with_capacity(d + 1); d];
    for v in vertices {
        for (r, x) in rows.iter_mut().zip(v) {
            r.push(x.clone());
        }
    }
    IntMatrix::from_rows(rows).expect("d x (d+1)")
}

fn pair(u: &[BigRat], v: &[BigInt]) -> BigRat {
    u.iter()
        .zip(v)
        .map(|(a, b)| a * BigRat::from_integer(b.clone()))
        .fold(BigRat::zero(), |acc, x| acc + x)
}

impl fmt::Display for LatticeSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            let coords: Vec<String> = v.iter().map(ToString::to_string).collect();
            write!(f, "{}", coords.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LatticeSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticeSimplex[{self}]")
    }
}

/// Parses `"x,y;x,y;…"`: vertices separated by semicolons, coordinates by
/// commas.
impl FromStr for LatticeSimplex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let vertices = s
            .split(';')
            .map(|v| {
                v.split(',')
                    .map(|x| {
                        x.trim().parse::<BigInt>().map_err(|_| {
                            Error::DegenerateSimplex(format!("cannot parse coordinate {:?}", x.trim()))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LatticeSimplex::new(vertices)
    }
}

/// Facet normals `u_{F_0}, …, u_{F_d}` where `F_i` omits vertex `v_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSimplex {
    normals: Vec<Vec<BigRat>>,
}

impl DualSimplex {
    pub fn normals(&self) -> &[Vec<BigRat>] {
        &self.normals
    }

    /// Lcm of all coordinate denominators.
    pub fn index(&self) -> BigInt {
        let denoms: Vec<BigInt> = self
            .normals
            .iter()
            .flatten()
            .map(|x| x.denom().clone())
            .collect();
        lcm_many(&denoms).expect("denominators are positive")
    }

    /// `|det(u_1 − u_0, …, u_d − u_0)|`.
    pub fn normalized_volume(&self) -> Result<BigRat> {
        let scale = self.index();
        let base = &self.normals[0];
        let mut rows = Vec::with_capacity(self.normals.len() - 1);
        for u in &self.normals[1..] {
            let row = u
                .iter()
                .zip(base)
                .map(|(a, b)| {
                    let x = (a - b) * BigRat::from_integer(scale.clone());
                    debug_assert!(x.is_integer());
                    x.to_integer()
                })
                .collect();
            rows.push(row);
        }
        let det = det_exact(&IntMatrix::from_rows(rows)?)?;
        let scale_pow: BigInt = Pow::pow(&scale, (self.normals.len() - 1) as u32);
        Ok(BigRat::new(det.abs(), scale_pow))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexPartition {
    /// `A(P)` sorted ascending.
    pub partition: UfPartition,
    /// `A(P)` in vertex order.
    pub paired: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeFormulaReport {
    pub lhs: BigRat,
    pub rhs: BigRat,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexAnalysis {
    pub weights: WeightSystem,
    pub lambda: BigInt,
    pub iota: BigInt,
    pub degree: BigRat,
    pub normals: Vec<Vec<BigRat>>,
    pub partition: SimplexPartition,
    pub volume_formula: VolumeFormulaReport,
    pub primitive: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::bigints;

    fn rat(n: i64, d: i64) -> BigRat {
        BigRat::new(n.into(), d.into())
    }

    fn p2() -> LatticeSimplex {
        LatticeSimplex::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap()
    }

    fn fake() -> LatticeSimplex {
        LatticeSimplex::from_i64(&[&[1, 0], &[-1, 2], &[-1, -2]]).unwrap()
    }

    fn ws(w: &[u64]) -> WeightSystem {
        WeightSystem::from_u64(w).unwrap()
    }

    #[test]
    fn rejects_bad_simplices() {
        assert!(matches!(
            LatticeSimplex::from_i64(&[&[1, 0], &[2, 0], &[3, 0]]),
            Err(Error::DegenerateSimplex(_))
        ));
        assert_eq!(
            LatticeSimplex::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]),
            Err(Error::OriginNotInterior)
        );
        // origin on an edge
        assert_eq!(
            LatticeSimplex::from_i64(&[&[1, 0], &[-1, 0], &[0, 1]]),
            Err(Error::OriginNotInterior)
        );
        assert!(LatticeSimplex::from_i64(&[&[1, 0], &[0, 1]]).is_err());
        assert!("1,0;0,1;x,1".parse::<LatticeSimplex>().is_err());
    }

    #[test]
    fn weights_examples() {
        assert_eq!(p2().weights(), ws(&[1, 1, 1]));
        assert_eq!(p2().lambda(), 1.into());
        assert_eq!(fake().weights(), ws(&[4, 2, 2]));
        assert_eq!(fake().lambda(), 2.into());
        let p = LatticeSimplex::from_i64(&[&[1, 0], &[0, 1], &[-2, -3]]).unwrap();
        let q = p.weights();
        assert_eq!(q, ws(&[2, 3, 1]));
        let mut sum = vec![BigInt::zero(); 2];
        for (w, v) in q.weights().iter().zip(p.vertices()) {
            for (s, x) in sum.iter_mut().zip(v) {
                *s += w * x;
            }
        }
        assert!(sum.iter().all(Zero::is_zero));
    }

    #[test]
    fn dual_examples() {
        let dual = p2().dual().unwrap();
        assert_eq!(dual.normals()[0], vec![rat(2, 1), rat(-1, 1)]);
        let dual = fake().dual().unwrap();
        assert_eq!(
            dual.normals(),
            &[
                vec![rat(1, 1), rat(0, 1)],
                vec![rat(-1, 1), rat(1, 1)],
                vec![rat(-1, 1), rat(-1, 1)]
            ]
        );
        for p in [p2(), fake()] {
            let dual = p.dual().unwrap();
            for (i, u) in dual.normals().iter().enumerate() {
                for (j, v) in p.vertices().iter().enumerate() {
                    if i != j {
                        assert_eq!(pair(u, v), -BigRat::one());
                    }
                }
            }
        }
    }

    #[test]
    fn index_and_degree() {
        assert_eq!(p2().gorenstein_index().unwrap(), 1.into());
        assert_eq!(p2().degree().unwrap(), rat(9, 1));
        assert_eq!(fake().gorenstein_index().unwrap(), 1.into());
        assert_eq!(fake().degree().unwrap(), rat(4, 1));
        let p = LatticeSimplex::from_weights(&ws(&[4, 1, 1])).unwrap();
        assert_eq!(p.gorenstein_index().unwrap(), ws(&[4, 1, 1]).index());
        assert_eq!(p.degree().unwrap(), rat(9, 1));
        let p = LatticeSimplex::from_weights(&ws(&[6, 4, 1, 1])).unwrap();
        assert_eq!(p.degree().unwrap(), rat(72, 1));
    }

    #[test]
    fn from_weights_round_trip() {
        for w in [&[1u64, 1, 1][..], &[2, 1, 1], &[3, 1, 1, 1], &[6, 4, 1, 1], &[4, 1, 1], &[28, 12, 1, 1]] {
            let q = ws(w);
            let p = LatticeSimplex::from_weights(&q).unwrap();
            assert_eq!(p.weights(), q);
            assert!(p.has_primitive_vertices());
        }
        assert_eq!(LatticeSimplex::from_weights(&ws(&[2, 2, 2])), Err(Error::NotReduced));
        assert_eq!(LatticeSimplex::from_weights(&ws(&[2, 2, 1])), Err(Error::NotWellFormed));
    }

    #[test]
    fn partition_examples() {
        assert_eq!(p2().uf_partition().unwrap().partition, UfPartition::from_u64(1, &[3, 3, 3]).unwrap());
        let sp = fake().uf_partition().unwrap();
        assert_eq!(sp.partition, UfPartition::from_u64(1, &[2, 4, 4]).unwrap());
        assert_eq!(sp.paired, bigints(&[2, 4, 4]));
        let p = LatticeSimplex::from_weights(&ws(&[3, 1, 1, 1])).unwrap();
        assert_eq!(p.uf_partition().unwrap().partition, UfPartition::from_u64(1, &[2, 6, 6, 6]).unwrap());
    }

    #[test]
    fn volume_formula_examples() {
        let r = fake().check_volume_formula().unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs, rat(8, 1));
        let r = p2().check_volume_formula().unwrap();
        assert_eq!((r.lhs, r.rhs), (rat(9, 1), rat(9, 1)));
        let p = LatticeSimplex::from_weights(&ws(&[28, 12, 1, 1])).unwrap();
        let r = p.check_volume_formula().unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs, rat(1764, 1));
    }

    #[test]
    fn non_primitive_is_flagged_not_rejected() {
        let p = LatticeSimplex::from_i64(&[&[2, 0], &[0, 1], &[-2, -1]]).unwrap();
        assert!(!p.has_primitive_vertices());
        let a = p.analyze().unwrap();
        assert!(!a.primitive);
        assert!(a.volume_formula.holds);
    }

    #[test]
    fn parse_and_display() {
        let p: LatticeSimplex = "1,0;-1,2;-1,-2".parse().unwrap();
        assert_eq!(p, fake());
        assert_eq!(p.to_string(), "1,0;-1,2;-1,-2");
    }
}
