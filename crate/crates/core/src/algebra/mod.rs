//! Finite-dimensional split basic algebras over `F_p` given by structure
//! constants, and the module-theoretic computations run on them.

mod group;
mod module;
mod structure;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::exactring::arith::{add_mod, mul_mod};
use crate::exactring::{arith, ExactMatrix, Ring, Subspace};
use crate::error::{Error, Result};

pub use group::{group_algebra_from_table, group_algebra_from_table_with, symmetric_group_table, cyclic_group_table};
pub use module::{intertwiners, LeftModule};
pub use structure::{
    cartan_matrix, check_algebra, check_algebra_with, ext1_dim, is_isomorphic, is_local_module,
    loewy_length, omega_orbit_period, radical_series, syzygy, AlgebraReport, OmegaPeriod,
    RadicalSeries,
};

/// An algebra with basis `b_0..b_{d-1}` and products `b_i b_j = sum_k c[i][j][k] b_k`.
///
/// Vertex idempotents and radical generators are coordinate vectors. For
/// quiver-style constructions they are unit vectors; the group-algebra oracle
/// produces general ones.
#[derive(Clone, Debug)]
pub struct BasisAlgebra {
    p: u64,
    dim: usize,
    table: Vec<u64>,
    unit: Vec<u64>,
    vertices: Vec<Vec<u64>>,
    radical_generators: Vec<Vec<u64>>,
    radical: OnceLock<Subspace>,
}

impl BasisAlgebra {
    pub fn new(
        p: u64,
        dim: usize,
        table: Vec<Vec<Vec<u64>>>,
        unit: Vec<u64>,
        vertices: Vec<Vec<u64>>,
        radical_generators: Vec<Vec<u64>>,
    ) -> Result<Self> {
        if table.len() != dim || table.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::Dimension("structure table must be dim x dim x dim".into()));
        }
        let flat = table.into_iter().flatten().flatten().collect();
        Self::from_flat(p, dim, flat, unit, vertices, radical_generators)
    }

    pub(crate) fn from_flat(
        p: u64,
        dim: usize,
        table: Vec<u64>,
        unit: Vec<u64>,
        vertices: Vec<Vec<u64>>,
        radical_generators: Vec<Vec<u64>>,
    ) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if table.len() != dim * dim * dim {
            return Err(Error::Dimension("structure table size".into()));
        }
        if unit.len() != dim
            || vertices.iter().chain(&radical_generators).any(|v| v.len() != dim)
        {
            return Err(Error::Dimension("coordinate vector length must equal dim".into()));
        }
        let red = |v: Vec<u64>| v.into_iter().map(|x| x % p).collect::<Vec<_>>();
        Ok(BasisAlgebra {
            p,
            dim,
            table: red(table),
            unit: red(unit),
            vertices: vertices.into_iter().map(red).collect(),
            radical_generators: radical_generators.into_iter().map(red).collect(),
            radical: OnceLock::new(),
        })
    }

    /// The field `F_p` as a one-dimensional algebra.
    pub fn ground_field(p: u64) -> Result<Self> {
        Self::from_flat(p, 1, vec![1], vec![1], vec![vec![1]], vec![])
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn ring(&self) -> Ring {
        Ring::Fp { p: self.p }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[u64] {
        &self.unit
    }

    pub fn vertices(&self) -> &[Vec<u64>] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn radical_generators(&self) -> &[Vec<u64>] {
        &self.radical_generators
    }

    /// Coordinates of `b_i b_j`.
    #[inline]
    pub fn basis_product(&self, i: usize, j: usize) -> &[u64] {
        let d = self.dim;
        &self.table[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0u64; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let f = mul_mod(xi, yj, p);
                for (o, &c) in out.iter_mut().zip(self.basis_product(i, j)) {
                    if c != 0 {
                        *o = add_mod(*o, mul_mod(f, c, p), p);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(&a, &b)| add_mod(a, b, self.p)).collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(&a, &b)| arith::sub_mod(a, b, self.p)).collect()
    }

    pub fn scale(&self, s: u64, x: &[u64]) -> Vec<u64> {
        x.iter().map(|&a| mul_mod(a, s, self.p)).collect()
    }

    /// Matrix of `y -> x y` on the basis.
    pub fn left_mult(&self, x: &[u64]) -> ExactMatrix {
        let cols: Vec<Vec<u64>> = (0..self.dim).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        ExactMatrix::from_columns(self.ring(), self.dim, &cols).expect("square")
    }

    /// Left multiplication by a basis element, read straight from the table.
    pub fn left_mult_basis(&self, i: usize) -> ExactMatrix {
        let d = self.dim;
        let mut m = ExactMatrix::zeros(self.ring(), d, d);
        for j in 0..d {
            for (k, &c) in self.basis_product(i, j).iter().enumerate() {
                if c != 0 {
                    m.set(k, j, c);
                }
            }
        }
        m
    }

    /// Two-sided ideal generated by the given vectors.
    pub fn two_sided_ideal<V: AsRef<[u64]>>(&self, gens: &[V]) -> Subspace {
        let mut span = Subspace::zero(self.p, self.dim);
        let mut work: Vec<Vec<u64>> = Vec::new();
        for g in gens {
            if span.insert(g.as_ref()) {
                work.push(g.as_ref().to_vec());
            }
        }
        while let Some(v) = work.pop() {
            for i in 0..self.dim {
                let b = self.basis_vector(i);
                for w in [self.mul(&b, &v), self.mul(&v, &b)] {
                    if span.insert(&w) {
                        work.push(w);
                    }
                }
            }
        }
        span
    }

    /// Product `I J` of two subspaces (span of pairwise products).
    pub fn product_space(&self, left: &Subspace, right: &Subspace) -> Subspace {
        let mut s = Subspace::zero(self.p, self.dim);
        for x in left.basis() {
            for y in right.basis() {
                s.insert(&self.mul(x, y));
            }
        }
        s
    }

    /// Whether the ideal is nilpotent; returns the nilpotency index if so.
    pub fn nilpotency_index(&self, ideal: &Subspace) -> Option<usize> {
        let mut power = ideal.clone();
        let mut k = 1;
        while !power.is_zero() {
            let next = self.product_space(&power, ideal);
            if next.dim() == power.dim() {
                return None;
            }
            power = next;
            k += 1;
        }
        Some(k)
    }

    /// The ideal generated by the radical generators (cached).
    pub fn radical(&self) -> &Subspace {
        self.radical.get_or_init(|| self.two_sided_ideal(&self.radical_generators))
    }

    /// `x = e x e` projection for a sum of vertex idempotents `e`.
    pub fn sandwich(&self, e: &[u64], x: &[u64]) -> Vec<u64> {
        self.mul(&self.mul(e, x), e)
    }

    pub fn to_document(&self) -> AlgebraDocument {
        let d = self.dim;
        let table = (0..d)
            .map(|i| (0..d).map(|j| self.basis_product(i, j).to_vec()).collect())
            .collect();
        AlgebraDocument {
            p: self.p,
            dim: d,
            unit: self.unit.clone(),
            vertices: self.vertices.clone(),
            radical_generators: self.radical_generators.clone(),
            table,
        }
    }

    pub fn from_document(doc: AlgebraDocument) -> Result<Self> {
        Self::new(doc.p, doc.dim, doc.table, doc.unit, doc.vertices, doc.radical_generators)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_document())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_document(serde_json::from_str(s)?)
    }
}

/// JSON form of a [`BasisAlgebra`]. `vertices` and `radical_generators` are
/// coordinate vectors of length `dim`; `table[i][j]` is the coordinate vector
/// of `b_i b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub p: u64,
    pub dim: usize,
    pub unit: Vec<u64>,
    pub vertices: Vec<Vec<u64>>,
    pub radical_generators: Vec<Vec<u64>>,
    pub table: Vec<Vec<Vec<u64>>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_field_json_round_trip() {
        let a = BasisAlgebra::ground_field(5).unwrap();
        let s = a.to_json().unwrap();
        assert_eq!(
            s,
            r#"{"p":5,"dim":1,"unit":[1],"vertices":[[1]],"radical_generators":[],"table":[[[1]]]}"#
        );
        let b = BasisAlgebra::from_json(&s).unwrap();
        assert_eq!(b.to_document(), a.to_document());
    }

    #[test]
    fn malformed_documents() {
        assert!(BasisAlgebra::from_json(r#"{"p":4,"dim":1,"unit":[1],"vertices":[[1]],"radical_generators":[],"table":[[[1]]]}"#).is_err());
        assert!(BasisAlgebra::from_json(r#"{"p":5,"dim":2,"unit":[1],"vertices":[[1]],"radical_generators":[],"table":[[[1]]]}"#).is_err());
        assert!(BasisAlgebra::from_json(r#"{"p":5}"#).is_err());
    }
}
