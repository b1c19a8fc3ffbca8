//! Idempotent calculus: the corner `eAe` and the quotient `A / AeA` for a sum
//! `e` of vertex idempotents, with the vertex-count bookkeeping that ties them
//! to `A`.

use serde::Serialize;

use crate::algebra::{cartan_matrix, check_algebra, AlgebraReport, BasisAlgebra};
use crate::exactring::{Basis, Subspace};
use crate::error::{Error, Result};

/// A nonempty proper set of vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentSelection {
    vertices: Vec<usize>,
}

impl IdempotentSelection {
    pub fn new(a: &BasisAlgebra, mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        let n = a.vertex_count();
        if let Some(&v) = vertices.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, count: n });
        }
        if vertices.is_empty() || vertices.len() == n {
            return Err(Error::InvalidSelection(format!(
                "selection must be nonempty and proper ({} of {n} vertices)",
                vertices.len()
            )));
        }
        Ok(IdempotentSelection { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn complement(&self, a: &BasisAlgebra) -> Self {
        IdempotentSelection {
            vertices: (0..a.vertex_count()).filter(|v| !self.vertices.contains(v)).collect(),
        }
    }

    /// `e = Σ e_v` over the selection.
    pub fn idempotent(&self, a: &BasisAlgebra) -> Vec<u64> {
        self.vertices.iter().fold(vec![0; a.dim()], |acc, &v| a.add(&acc, &a.vertices()[v]))
    }
}

/// `eAe`. Its basis is the set of basis elements fixed by `x ↦ exe` when
/// those span `eAe`, and an echelon basis of the projection image otherwise.
pub fn corner_algebra(a: &BasisAlgebra, s: &IdempotentSelection) -> Result<BasisAlgebra> {
    let p = a.prime();
    let d = a.dim();
    let e = s.idempotent(a);
    let proj: Vec<Vec<u64>> = (0..d).map(|i| a.sandwich(&e, &a.basis_vector(i))).collect();
    let image = Subspace::from_vectors(p, d, &proj);
    let fixed: Vec<Vec<u64>> = (0..d).filter(|&i| proj[i] == a.basis_vector(i)).map(|i| proj[i].clone()).collect();
    let vectors = if fixed.len() == image.dim() { fixed } else { image.basis().to_vec() };
    let basis = Basis::new(p, d, vectors)?;
    let coords = |v: &[u64]| {
        basis.coords(v).ok_or_else(|| Error::Construction("corner is not closed under the product".into()))
    };
    let k = basis.len();
    let mut table = vec![0u64; k * k * k];
    for (i, x) in basis.vectors().iter().enumerate() {
        for (j, y) in basis.vectors().iter().enumerate() {
            let c = coords(&a.mul(x, y))?;
            table[(i * k + j) * k..(i * k + j + 1) * k].copy_from_slice(&c);
        }
    }
    let vertices = s.vertices().iter().map(|&v| coords(&a.vertices()[v])).collect::<Result<Vec<_>>>()?;
    let rad = Subspace::from_vectors(p, d, a.radical().basis().iter().map(|r| a.sandwich(&e, r)));
    let radical_generators = rad.basis().iter().map(|r| coords(r)).collect::<Result<Vec<_>>>()?;
    BasisAlgebra::from_flat(p, k, table, coords(&e)?, vertices, radical_generators)
}

/// `A / AeA`, on the basis elements outside the pivots of the ideal.
pub fn quotient_by_trace_ideal(a: &BasisAlgebra, s: &IdempotentSelection) -> Result<BasisAlgebra> {
    let p = a.prime();
    let e = s.idempotent(a);
    let ideal = a.two_sided_ideal(&[&e]);
    let keep = ideal.complement_indices();
    let k = keep.len();
    let restrict = |v: &[u64]| {
        let r = ideal.reduce(v);
        keep.iter().map(|&i| r[i]).collect::<Vec<u64>>()
    };
    let mut table = vec![0u64; k * k * k];
    for (i, &bi) in keep.iter().enumerate() {
        for (j, &bj) in keep.iter().enumerate() {
            let c = restrict(a.basis_product(bi, bj));
            table[(i * k + j) * k..(i * k + j + 1) * k].copy_from_slice(&c);
        }
    }
    let nonzero = |v: Vec<u64>| v.iter().any(|&x| x != 0).then_some(v);
    let vertices = s.complement(a).vertices().iter().filter_map(|&v| nonzero(restrict(&a.vertices()[v]))).collect();
    let radical_generators = a.radical().basis().iter().filter_map(|r| nonzero(restrict(r))).collect();
    BasisAlgebra::from_flat(p, k, table, restrict(a.unit()), vertices, radical_generators)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecollementReport {
    pub vertices: usize,
    pub corner_vertices: usize,
    /// Simples of `A / AeA`: `dim Q - dim rad Q`.
    pub quotient_simples: usize,
    pub additive: bool,
    pub corner_dim: usize,
    pub quotient_dim: usize,
    pub corner_check: AlgebraReport,
    pub quotient_check: AlgebraReport,
    pub corner_cartan: Vec<Vec<usize>>,
    pub quotient_cartan: Vec<Vec<usize>>,
}

impl RecollementReport {
    pub fn all_pass(&self) -> bool {
        self.additive && self.corner_check.all_pass() && self.quotient_check.all_pass()
    }
}

/// Builds both pieces and checks `#vertices(A) = #vertices(eAe) + #simples(A/AeA)`.
pub fn recollement_check(a: &BasisAlgebra, s: &IdempotentSelection) -> Result<RecollementReport> {
    let corner = corner_algebra(a, s)?;
    let quotient = quotient_by_trace_ideal(a, s)?;
    let quotient_simples = quotient.dim() - quotient.radical().dim();
    let corner_check = check_algebra(&corner);
    let quotient_check = check_algebra(&quotient);
    Ok(RecollementReport {
        vertices: a.vertex_count(),
        corner_vertices: corner.vertex_count(),
        quotient_simples,
        additive: a.vertex_count() == corner.vertex_count() + quotient_simples,
        corner_dim: corner.dim(),
        quotient_dim: quotient.dim(),
        corner_cartan: if corner_check.all_pass() { cartan_matrix(&corner)? } else { vec![] },
        quotient_cartan: if quotient_check.all_pass() { cartan_matrix(&quotient)? } else { vec![] },
        corner_check,
        quotient_check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{loewy_length, LeftModule};
    use crate::brauer_tree::{predicted_cartan, to_algebra, BrauerTree};

    fn stem(n: usize) -> BasisAlgebra {
        to_algebra(&BrauerTree::stem(n).unwrap()).unwrap()
    }

    #[test]
    fn cut_leaf_corner() {
        let a = stem(5);
        let s = IdempotentSelection::new(&a, (1..5).collect()).unwrap();
        let c = corner_algebra(&a, &s).unwrap();
        assert_eq!(c.dim(), 14);
        assert!(check_algebra(&c).all_pass());
        assert_eq!(cartan_matrix(&c).unwrap(), predicted_cartan(&BrauerTree::stem(4).unwrap()));
        assert_eq!(loewy_length(&c, &LeftModule::regular(&c)).unwrap(), 3);
        assert_eq!(quotient_by_trace_ideal(&a, &s).unwrap().dim(), 1);
        let r = recollement_check(&a, &s).unwrap();
        assert!(r.all_pass());
        assert_eq!((r.vertices, r.corner_vertices, r.quotient_simples), (5, 4, 1));
    }

    #[test]
    fn stem_two() {
        let a = stem(2);
        let leaf = IdempotentSelection::new(&a, vec![0]).unwrap();
        let c = corner_algebra(&a, &leaf).unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(cartan_matrix(&c).unwrap(), vec![vec![2]]);
        let s = IdempotentSelection::new(&a, vec![1]).unwrap();
        assert_eq!(quotient_by_trace_ideal(&a, &s).unwrap().dim(), 1);
        assert_eq!(quotient_by_trace_ideal(&a, &s.complement(&a)).unwrap().dim(), 1);
        let r = recollement_check(&a, &s).unwrap();
        assert_eq!((r.vertices, r.corner_vertices, r.quotient_simples), (2, 1, 1));
    }

    #[test]
    fn selection_must_be_proper() {
        let a = stem(3);
        assert!(matches!(IdempotentSelection::new(&a, vec![0, 1, 2]), Err(Error::InvalidSelection(_))));
        assert!(matches!(IdempotentSelection::new(&a, vec![]), Err(Error::InvalidSelection(_))));
        assert!(matches!(IdempotentSelection::new(&a, vec![7]), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn corner_of_reduced_order() {
        let spec = crate::green::GreenOrderSpec::lambda0(3, 4).unwrap();
        let a = crate::green::reduce_mod_p(&spec).unwrap();
        let s = IdempotentSelection::new(&a, vec![1, 2]).unwrap();
        let r = recollement_check(&a, &s).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.corner_cartan, predicted_cartan(&BrauerTree::stem(2).unwrap()));
    }
}
