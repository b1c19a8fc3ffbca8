//! Subspaces of `F_p^n` kept in reduced row echelon form.

use super::arith::{inv_mod, mul_mod, sub_mod};
use crate::error::{Error, Result};

/// A subspace of `F_p^ambient` stored as RREF rows.
///
/// Coordinates of a member vector with respect to the stored rows are just
/// its entries at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    p: u64,
    ambient: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u64, ambient: usize) -> Self {
        Subspace { p, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(p: u64, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { p, ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn from_vectors<I, V>(p: u64, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[u64]>,
    {
        let mut s = Self::zero(p, ambient);
        for v in vectors {
            s.insert(v.as_ref());
        }
        s
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Ambient indices that are not pivots; their unit vectors span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }

    /// Remainder of `v` after clearing all pivot columns.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut r = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = r[pc];
            if f == 0 {
                continue;
            }
            for (x, &y) in r.iter_mut().zip(row) {
                if y != 0 {
                    *x = sub_mod(*x, mul_mod(f, y, p), p);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates with respect to [`Subspace::basis`], or `None` if `v` is outside.
    pub fn coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let p = self.p;
        let mut r = self.reduce(v);
        let Some(lead) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(r[lead], p).expect("nonzero in a field");
        for x in r.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for row in self.rows.iter_mut() {
            let f = row[lead];
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&r) {
                if y != 0 {
                    *x = sub_mod(*x, mul_mod(f, y, p), p);
                }
            }
        }
        let at = self.pivots.partition_point(|&c| c < lead);
        self.rows.insert(at, r);
        self.pivots.insert(at, lead);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v);
        }
        s
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }
}

/// A fixed (not necessarily echelon) basis with a coordinate solver.
#[derive(Clone, Debug)]
pub struct Basis {
    p: u64,
    vectors: Vec<Vec<u64>>,
    span: Subspace,
    // RREF row t = sum_k combos[t][k] * vectors[k]
    combos: Vec<Vec<u64>>,
}

impl Basis {
    pub fn new(p: u64, ambient: usize, vectors: Vec<Vec<u64>>) -> Result<Self> {
        let r = vectors.len();
        // Augment each vector with a unit tag and eliminate on the original block.
        let aug: Vec<Vec<u64>> = vectors
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let mut a = v.clone();
                a.extend((0..r).map(|j| u64::from(j == k)));
                a
            })
            .collect();
        let full = Subspace::from_vectors(p, ambient + r, &aug);
        if full.pivots.iter().any(|&c| c >= ambient) || full.dim() != r {
            return Err(Error::Dimension("basis vectors are linearly dependent".into()));
        }
        let combos = full.rows.iter().map(|row| row[ambient..].to_vec()).collect();
        let span = Subspace {
            p,
            ambient,
            rows: full.rows.iter().map(|row| row[..ambient].to_vec()).collect(),
            pivots: full.pivots.clone(),
        };
        Ok(Basis { p, vectors, span, combos })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<u64>] {
        &self.vectors
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        let c = self.span.coords(v)?;
        let p = self.p;
        let mut out = vec![0u64; self.vectors.len()];
        for (t, &ct) in c.iter().enumerate() {
            if ct == 0 {
                continue;
            }
            for (o, &k) in out.iter_mut().zip(&self.combos[t]) {
                *o = (*o + mul_mod(ct, k, p)) % p;
            }
        }
        Some(out)
    }
}
