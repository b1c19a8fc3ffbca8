use crate::exactring::arith::{add_mod, mul_mod};
use crate::exactring::{mat_kernel_fp, ExactMatrix, Ring, Subspace};
use crate::error::{Error, Result};

use super::BasisAlgebra;

/// A finite-dimensional left module: one action matrix per algebra basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftModule {
    p: u64,
    dim: usize,
    actions: Vec<ExactMatrix>,
}

impl LeftModule {
    pub fn new(p: u64, dim: usize, actions: Vec<ExactMatrix>) -> Result<Self> {
        for a in &actions {
            if a.ring() != (Ring::Fp { p }) || a.rows() != dim || a.cols() != dim {
                return Err(Error::Dimension(format!("action must be a {dim}x{dim} matrix over F_{p}")));
            }
        }
        Ok(LeftModule { p, dim, actions })
    }

    pub fn zero(a: &BasisAlgebra) -> Self {
        let ring = a.ring();
        LeftModule { p: a.prime(), dim: 0, actions: vec![ExactMatrix::zeros(ring, 0, 0); a.dim()] }
    }

    /// The regular module `A` acting on itself from the left.
    pub fn regular(a: &BasisAlgebra) -> Self {
        LeftModule {
            p: a.prime(),
            dim: a.dim(),
            actions: (0..a.dim()).map(|i| a.left_mult_basis(i)).collect(),
        }
    }

    /// The indecomposable projective `A e_i` (as a subspace of `A`).
    pub fn projective_subspace(a: &BasisAlgebra, vertex: usize) -> Result<Subspace> {
        let e = a
            .vertices()
            .get(vertex)
            .ok_or(Error::VertexOutOfRange { vertex, count: a.vertex_count() })?;
        Ok(Subspace::from_vectors(
            a.prime(),
            a.dim(),
            (0..a.dim()).map(|j| a.mul(&a.basis_vector(j), e)),
        ))
    }

    pub fn projective(a: &BasisAlgebra, vertex: usize) -> Result<Self> {
        Self::regular(a).submodule(&Self::projective_subspace(a, vertex)?)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn actions(&self) -> &[ExactMatrix] {
        &self.actions
    }

    fn ring(&self) -> Ring {
        Ring::Fp { p: self.p }
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn act(&self, x: &[u64]) -> ExactMatrix {
        let p = self.p;
        let mut data = vec![0u64; self.dim * self.dim];
        for (k, &xk) in x.iter().enumerate() {
            if xk == 0 {
                continue;
            }
            for (o, &a) in data.iter_mut().zip(self.actions[k].data()) {
                if a != 0 {
                    *o = add_mod(*o, mul_mod(xk, a, p), p);
                }
            }
        }
        ExactMatrix::new(self.ring(), self.dim, self.dim, data).expect("square")
    }

    /// Restriction to an invariant subspace; the new basis is the subspace's RREF basis.
    pub fn submodule(&self, sub: &Subspace) -> Result<Self> {
        let basis = sub.basis();
        let k = basis.len();
        let mut actions = Vec::with_capacity(self.actions.len());
        for a in &self.actions {
            let mut m = ExactMatrix::zeros(self.ring(), k, k);
            for (c, w) in basis.iter().enumerate() {
                let img = a.mul_vec(w)?;
                let coords = sub
                    .coords(&img)
                    .ok_or_else(|| Error::NotAModule("subspace is not invariant".into()))?;
                for (r, x) in coords.into_iter().enumerate() {
                    m.set(r, c, x);
                }
            }
            actions.push(m);
        }
        Ok(LeftModule { p: self.p, dim: k, actions })
    }

    /// Quotient by an invariant subspace, on the complement spanned by non-pivot unit vectors.
    pub fn quotient(&self, sub: &Subspace) -> Result<Self> {
        let keep = sub.complement_indices();
        let k = keep.len();
        let mut actions = Vec::with_capacity(self.actions.len());
        for a in &self.actions {
            let mut m = ExactMatrix::zeros(self.ring(), k, k);
            for (c, &j) in keep.iter().enumerate() {
                let img = sub.reduce(&a.column(j));
                for (r, &i) in keep.iter().enumerate() {
                    m.set(r, c, img[i]);
                }
            }
            actions.push(m);
        }
        // Invariance: the image of the subspace must stay inside it.
        for a in &self.actions {
            for w in sub.basis() {
                if !sub.contains(&a.mul_vec(w)?) {
                    return Err(Error::NotAModule("subspace is not invariant".into()));
                }
            }
        }
        Ok(LeftModule { p: self.p, dim: k, actions })
    }

    pub fn direct_sum(parts: &[LeftModule]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Dimension("empty direct sum".into()))?;
        let n_act = first.actions.len();
        let dim: usize = parts.iter().map(|m| m.dim).sum();
        let mut actions = vec![ExactMatrix::zeros(first.ring(), dim, dim); n_act];
        let mut off = 0;
        for m in parts {
            if m.actions.len() != n_act || m.p != first.p {
                return Err(Error::Dimension("summands over different algebras".into()));
            }
            for (big, small) in actions.iter_mut().zip(&m.actions) {
                for i in 0..m.dim {
                    for j in 0..m.dim {
                        big.set(off + i, off + j, small.get(i, j));
                    }
                }
            }
            off += m.dim;
        }
        Ok(LeftModule { p: first.p, dim, actions })
    }

    /// Checks `act(b_i) act(b_j) = sum_k c_ijk act(b_k)` and `act(1) = I`.
    pub fn check_axioms(&self, a: &BasisAlgebra) -> Result<()> {
        if self.actions.len() != a.dim() || self.p != a.prime() {
            return Err(Error::NotAModule(format!(
                "{} action matrices for an algebra of dimension {}",
                self.actions.len(),
                a.dim()
            )));
        }
        if self.dim == 0 {
            return Ok(());
        }
        if self.act(a.unit()) != ExactMatrix::identity(self.ring(), self.dim) {
            return Err(Error::NotAModule("unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.actions[i].mul(&self.actions[j])?;
                let rhs = self.act(a.basis_product(i, j));
                if lhs != rhs {
                    return Err(Error::NotAModule(format!("action fails on b_{i} b_{j}")));
                }
            }
        }
        Ok(())
    }

    /// `J V` for the given subspace `V` and the algebra radical `J`.
    pub fn radical_image(&self, a: &BasisAlgebra, v: &Subspace) -> Subspace {
        let mut out = Subspace::zero(self.p, self.dim);
        for j in a.radical().basis() {
            let m = self.act(j);
            for w in v.basis() {
                out.insert(&m.mul_vec(w).expect("shape"));
            }
        }
        out
    }
}

/// Basis of `Hom_A(m, n)` as `n.dim x m.dim` matrices.
///
/// The constraints `X act_m(x) = act_n(x) X` are imposed generator by
/// generator, shrinking the solution space each time.
pub fn intertwiners(a: &BasisAlgebra, m: &LeftModule, n: &LeftModule) -> Result<Vec<ExactMatrix>> {
    let p = m.p;
    let ring = Ring::Fp { p };
    let (md, nd) = (m.dim, n.dim);
    let unknowns = md * nd;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    // Current solution space: columns of `sol` (unknowns x s).
    let mut sol: Vec<Vec<u64>> = (0..unknowns)
        .map(|i| {
            let mut v = vec![0; unknowns];
            v[i] = 1;
            v
        })
        .collect();
    let gens: Vec<(ExactMatrix, ExactMatrix)> = a
        .vertices()
        .iter()
        .map(|e| (m.act(e), n.act(e)))
        .chain(m.actions.iter().cloned().zip(n.actions.iter().cloned()))
        .collect();
    for (am, an) in gens {
        if sol.is_empty() {
            break;
        }
        // Evaluate the residual X am - an X on each current solution vector.
        let s = sol.len();
        let mut residuals = ExactMatrix::zeros(ring, unknowns, s);
        for (c, x) in sol.iter().enumerate() {
            let xm = ExactMatrix::new(ring, nd, md, x.clone())?;
            let r = xm.mul(&am)?.sub(&an.mul(&xm)?)?;
            for (i, &v) in r.data().iter().enumerate() {
                if v != 0 {
                    residuals.set(i, c, v);
                }
            }
        }
        if residuals.is_zero() {
            continue;
        }
        let ker = mat_kernel_fp(&residuals)?;
        sol = ker
            .iter()
            .map(|k| {
                let mut v = vec![0u64; unknowns];
                for (coef, base) in k.iter().zip(&sol) {
                    if *coef == 0 {
                        continue;
                    }
                    for (o, &b) in v.iter_mut().zip(base) {
                        *o = add_mod(*o, mul_mod(*coef, b, p), p);
                    }
                }
                v
            })
            .collect();
    }
    sol.into_iter().map(|x| ExactMatrix::new(ring, nd, md, x)).collect()
}

pub(crate) fn combine(p: u64, coeffs: &[u64], mats: &[ExactMatrix]) -> ExactMatrix {
    let mut data = vec![0u64; mats[0].data().len()];
    for (&c, m) in coeffs.iter().zip(mats) {
        if c == 0 {
            continue;
        }
        for (o, &x) in data.iter_mut().zip(m.data()) {
            *o = add_mod(*o, mul_mod(c, x, p), p);
        }
    }
    ExactMatrix::new(mats[0].ring(), mats[0].rows(), mats[0].cols(), data).expect("shape")
}

pub(crate) fn is_nilpotent_matrix(m: &ExactMatrix) -> bool {
    let n = m.rows();
    let mut pw = m.clone();
    for _ in 0..n {
        if pw.is_zero() {
            return true;
        }
        pw = pw.mul(m).expect("square");
    }
    pw.is_zero()
}
