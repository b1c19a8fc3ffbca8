use std::fmt;

use serde::{Deserialize, Serialize};

use super::arith::{add_mod, from_i128, inv_mod, mul_mod, sub_mod};
use super::scalar::{PadicScalar, Ring};
use crate::error::{Error, Result};

/// Dense row-major matrix over `F_p` or `Z/p^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ExactMatrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let m = ring.modulus();
        let data = data.into_iter().map(|x| x % m).collect();
        Ok(ExactMatrix { ring, rows, cols, data })
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        ExactMatrix { ring, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % ring.modulus();
        }
        m
    }

    pub fn from_i64_rows(ring: Ring, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let m = ring.modulus();
        let data = rows.iter().flatten().map(|&x| from_i128(x as i128, m)).collect();
        Ok(ExactMatrix { ring, rows: r, cols: c, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ring: Ring, rows: usize, columns: &[Vec<u64>]) -> Result<Self> {
        let mut m = Self::zeros(ring, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Dimension("column length".into()));
            }
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x % self.ring.modulus();
    }

    pub fn entry(&self, i: usize, j: usize) -> PadicScalar {
        PadicScalar::from_ring(self.ring, self.get(i, j) as i128)
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let m = self.ring.modulus();
        let mut out = Self::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    if b != 0 {
                        *d = add_mod(*d, mul_mod(a, b, m), m);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension("vector length".into()));
        }
        let m = self.ring.modulus();
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| add_mod(acc, mul_mod(a, b, m), m))
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, add_mod)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, sub_mod)
    }

    fn zip_with(&self, other: &Self, f: fn(u64, u64, u64) -> u64) -> Result<Self> {
        self.same_ring(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        let m = self.ring.modulus();
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b, m)).collect();
        Ok(ExactMatrix { data, ..*self })
    }

    pub fn scale(&self, s: u64) -> Self {
        let m = self.ring.modulus();
        let data = self.data.iter().map(|&a| mul_mod(a, s % m, m)).collect();
        ExactMatrix { data, ..*self }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    /// Reduction `Z/p^N -> F_p` (identity on `F_p` matrices).
    pub fn reduce_mod_p(&self) -> Self {
        let p = self.ring.prime();
        ExactMatrix {
            ring: Ring::Fp { p },
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x % p).collect(),
        }
    }

    fn expect_fp(&self) -> Result<u64> {
        match self.ring {
            Ring::Fp { p } => Ok(p),
            Ring::Zpn { .. } => Err(Error::ExpectedFp),
        }
    }

    /// Reduced row echelon form over `F_p` with the pivot columns.
    ///
    /// Columns are scanned left to right; within a column the first row at or
    /// below the current one with a nonzero entry becomes the pivot.
    pub fn rref_fp(&self) -> Result<(ExactMatrix, Vec<usize>)> {
        let p = self.expect_fp()?;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = inv_mod(m.get(r, c), p).expect("nonzero in a field");
            for j in c..m.cols {
                let x = m.get(r, j);
                m.data[r * m.cols + j] = mul_mod(x, inv, p);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let t = mul_mod(f, m.get(r, j), p);
                    let x = m.get(i, j);
                    m.data[i * m.cols + j] = sub_mod(x, t, p);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((m, pivots))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{} {}x{}]", self.ring, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u64::to_string).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Rank over `F_p` by Gaussian elimination.
pub fn mat_rank_fp(m: &ExactMatrix) -> Result<usize> {
    Ok(m.rref_fp()?.1.len())
}

/// Basis of the right kernel `{v : m v = 0}` over `F_p`.
pub fn mat_kernel_fp(m: &ExactMatrix) -> Result<Vec<Vec<u64>>> {
    let p = m.expect_fp()?;
    let (r, pivots) = m.rref_fp()?;
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    Ok(free
        .iter()
        .map(|&f| {
            let mut v = vec![0u64; m.cols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - r.get(row, f)) % p;
            }
            v
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_i64_rows(Ring::fp(p).unwrap(), rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        let id = ExactMatrix::identity(Ring::fp(5).unwrap(), 4);
        assert_eq!(mat_rank_fp(&id).unwrap(), 4);
        assert_eq!(mat_rank_fp(&fp(2, &[vec![1, 1], vec![1, 1]])).unwrap(), 1);
        let z = ExactMatrix::zeros(Ring::fp(3).unwrap(), 3, 7);
        assert_eq!(mat_rank_fp(&z).unwrap(), 0);
    }

    #[test]
    fn kernel_examples() {
        let id = ExactMatrix::identity(Ring::fp(7).unwrap(), 3);
        assert!(mat_kernel_fp(&id).unwrap().is_empty());
        let k = mat_kernel_fp(&fp(2, &[vec![1, 1], vec![1, 1]])).unwrap();
        assert_eq!(k, vec![vec![1, 1]]);
        let z = ExactMatrix::zeros(Ring::fp(5).unwrap(), 2, 3);
        let k = mat_kernel_fp(&z).unwrap();
        assert_eq!(k.len(), 3);
        assert_eq!(mat_rank_fp(&fp(5, &[k[0].iter().map(|&x| x as i64).collect()])).unwrap(), 1);
    }

    #[test]
    fn wrong_ring_tag() {
        let m = ExactMatrix::identity(Ring::zpn(5, 3).unwrap(), 2);
        assert_eq!(mat_rank_fp(&m), Err(Error::ExpectedFp));
        assert_eq!(mat_kernel_fp(&m), Err(Error::ExpectedFp));
    }

    #[test]
    fn product_shapes_and_rings() {
        let a = fp(5, &[vec![1, 2, 3], vec![0, 1, 4]]);
        let b = fp(5, &[vec![1], vec![1], vec![1]]);
        assert_eq!(a.mul(&b).unwrap().data(), &[1, 0]);
        assert!(b.mul(&b).is_err());
        let c = ExactMatrix::identity(Ring::fp(7).unwrap(), 3);
        assert!(matches!(a.mul(&c), Err(Error::RingMismatch(_))));
    }
}
