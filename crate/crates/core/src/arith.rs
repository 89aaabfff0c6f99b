//! Exact integer and rational arithmetic, plus the small amount of integer
//! linear algebra the geometry needs: fraction-free determinants, exact
//! solves and lattice complements of a primitive vector.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type BigRat = BigRational;

/// Greatest common divisor of a nonempty list. The gcd of all zeros is zero.
pub fn gcd_many(values: &[BigInt]) -> Result<BigInt> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut g = BigInt::zero();
    for v in values {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    Ok(g)
}

/// Least common multiple of a nonempty list of positive integers.
pub fn lcm_many(values: &[BigInt]) -> Result<BigInt> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut l = BigInt::one();
    for v in values {
        if !v.is_positive() {
            return Err(Error::ZeroEntry);
        }
        l = l.lcm(v);
    }
    Ok(l)
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyInput);
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(n, m, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor for small literal matrices.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        IntMatrix { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        IntMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                entries.push((0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum());
            }
        }
        Ok(IntMatrix { rows: self.rows, cols: other.cols, entries })
    }

    /// Square submatrix obtained by deleting column `skip` (rows must equal cols - 1).
    pub fn without_column(&self, skip: usize) -> IntMatrix {
        let mut entries = Vec::with_capacity(self.rows * (self.cols - 1));
        for i in 0..self.rows {
            for (j, x) in self.row(i).iter().enumerate() {
                if j != skip {
                    entries.push(x.clone());
                }
            }
        }
        IntMatrix { rows: self.rows, cols: self.cols - 1, entries }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row[target] -= factor * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = factor * self.get(source, j);
            *self.get_mut(target, j) -= delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = self.get_mut(i, j);
            *x = -std::mem::take(x);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                self.row(i).iter().map(ToString::to_string).collect::<Vec<_>>()
            }))
            .finish()
    }
}

/// Exact determinant by Bareiss fraction-free elimination. Every
/// intermediate value is an integer and every division is exact.
pub fn det_exact(m: &IntMatrix) -> Result<BigInt> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                *a.get_mut(i, j) = v;
            }
        }
        prev = a.get(k, k).clone();
    }
    let d = a.get(n - 1, n - 1).clone();
    Ok(if negate { -d } else { d })
}

/// Solves `m · x = rhs` exactly for a nonsingular square `m`.
///
/// Forward elimination is fraction-free (Bareiss) on the augmented matrix;
/// only the back substitution works in rationals.
pub fn solve_exact(m: &IntMatrix, rhs: &[BigInt]) -> Result<Vec<BigRat>> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if rhs.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for a {n}x{n} system",
            rhs.len()
        )));
    }
    let mut entries = Vec::with_capacity(n * (n + 1));
    for (i, b) in rhs.iter().enumerate() {
        entries.extend(m.row(i).iter().cloned());
        entries.push(b.clone());
    }
    let mut a = IntMatrix { rows: n, cols: n + 1, entries };
    let mut prev = BigInt::one();
    for k in 0..n {
        if a.get(k, k).is_zero() {
            let i = (k + 1..n)
                .find(|&i| !a.get(i, k).is_zero())
                .ok_or(Error::Singular)?;
            a.swap_rows(k, i);
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                *a.get_mut(i, j) = v;
            }
            *a.get_mut(i, k) = BigInt::zero();
        }
        prev = a.get(k, k).clone();
    }
    let mut x = vec![BigRat::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRat::from_integer(a.get(i, n).clone());
        for j in i + 1..n {
            acc -= BigRat::from_integer(a.get(i, j).clone()) * &x[j];
        }
        x[i] = acc / BigRat::from_integer(a.get(i, i).clone());
    }
    Ok(x)
}

/// Row Hermite normal form of a matrix with full row rank: pivots positive,
/// entries above each pivot reduced into `[0, pivot)`. The result is a
/// canonical basis of the row lattice.
pub fn row_hermite_form(m: &IntMatrix) -> Result<IntMatrix> {
    let mut a = m.clone();
    let mut pivot_row = 0;
    for col in 0..a.cols {
        if pivot_row == a.rows {
            break;
        }
        // Euclid on the column below pivot_row.
        loop {
            let best = (pivot_row..a.rows)
                .filter(|&i| !a.get(i, col).is_zero())
                .min_by(|&i, &j| a.get(i, col).abs().cmp(&a.get(j, col).abs()));
            let Some(best) = best else { break };
            a.swap_rows(pivot_row, best);
            let mut done = true;
            for i in pivot_row + 1..a.rows {
                if !a.get(i, col).is_zero() {
                    let q = a.get(i, col).div_floor(a.get(pivot_row, col));
                    a.sub_row_multiple(i, pivot_row, &q);
                    if !a.get(i, col).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a.get(pivot_row, col).is_zero() {
            continue;
        }
        if a.get(pivot_row, col).is_negative() {
            a.negate_row(pivot_row);
        }
        let p = a.get(pivot_row, col).clone();
        for i in 0..pivot_row {
            let q = a.get(i, col).div_floor(&p);
            a.sub_row_multiple(i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    if pivot_row < a.rows {
        return Err(Error::Singular);
    }
    Ok(a)
}

/// For a primitive vector `q` of length `d + 1`, returns a `d × (d+1)` integer
/// matrix `B` whose rows form a basis of the lattice `{x ∈ Z^{d+1} : x·q = 0}`.
/// Equivalently `B·qᵀ = 0` and `B` maps `Z^{d+1}` onto `Z^d`. The basis is
/// returned in row Hermite normal form, so the output is deterministic.
pub fn kernel_complement(q: &[BigInt]) -> Result<IntMatrix> {
    if q.len() < 2 {
        return Err(Error::DimensionMismatch(
            "need a vector of length at least 2".into(),
        ));
    }
    if !gcd_many(q)?.is_one() {
        return Err(Error::NotReduced);
    }
    let n = q.len();
    // Unimodular U with U·q = ±e_0, built from row operations on q.
    let mut v = q.to_vec();
    let mut u = IntMatrix::identity(n);
    loop {
        let best = (0..n)
            .filter(|&i| !v[i].is_zero())
            .min_by(|&i, &j| v[i].abs().cmp(&v[j].abs()))
            .expect("primitive vector is nonzero");
        v.swap(0, best);
        u.swap_rows(0, best);
        let mut done = true;
        for i in 1..n {
            if !v[i].is_zero() {
                let f = v[i].div_floor(&v[0]);
                let delta = &f * &v[0];
                v[i] -= delta;
                u.sub_row_multiple(i, 0, &f);
                if !v[i].is_zero() {
                    done = false;
                }
            }
        }
        if done {
            break;
        }
    }
    let rest: Vec<BigInt> = u.entries[n..].to_vec();
    let b = IntMatrix::new(n - 1, n, rest)?;
    row_hermite_form(&b)
}

/// Gcd of all maximal minors of a `k × n` matrix with `k ≤ n`.
pub fn maximal_minor_gcd(m: &IntMatrix) -> Result<BigInt> {
    let k = m.rows;
    let n = m.cols;
    if k > n {
        return Err(Error::DimensionMismatch("more rows than columns".into()));
    }
    let mut g = BigInt::zero();
    let mut cols: Vec<usize> = (0..k).collect();
    loop {
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            for &j in &cols {
                entries.push(m.get(i, j).clone());
            }
        }
        g = g.gcd(&det_exact(&IntMatrix { rows: k, cols: k, entries })?);
        // next k-combination of 0..n
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(g);
            }
            i -= 1;
            if cols[i] < n - k + i {
                cols[i] += 1;
                for j in i + 1..k {
                    cols[j] = cols[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
pub(crate) fn bigints(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|&x| BigInt::from(x)).collect()
}
