use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactring::{mat_rank_fp, Subspace};
use crate::error::{Error, Result};
use crate::par::{self, Exec};

use super::module::{combine, intertwiners, is_nilpotent_matrix};
use super::{BasisAlgebra, LeftModule};

/// Outcome of [`check_algebra`]. `failures` explains every `false` flag.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub associative: bool,
    pub unit: bool,
    pub idempotents: bool,
    pub radical_nilpotent: bool,
    pub split_basic: bool,
    pub failures: Vec<String>,
}

impl AlgebraReport {
    pub fn all_pass(&self) -> bool {
        self.associative && self.unit && self.idempotents && self.radical_nilpotent && self.split_basic
    }
}

pub fn check_algebra(a: &BasisAlgebra) -> AlgebraReport {
    check_algebra_with(a, Exec::default())
}

pub fn check_algebra_with(a: &BasisAlgebra, exec: Exec) -> AlgebraReport {
    let d = a.dim();
    let p = a.prime();
    let mut rep = AlgebraReport::default();

    // (b_i b_j) b_k = b_i (b_j b_k), one row of triples per i.
    let bad: Vec<Option<(usize, usize, usize)>> = par::map_range(exec, d, |i| {
        for j in 0..d {
            let ij = a.basis_product(i, j);
            for k in 0..d {
                let jk = a.basis_product(j, k);
                let mut lhs = vec![0u64; d];
                let mut rhs = vec![0u64; d];
                for l in 0..d {
                    if ij[l] != 0 {
                        for (o, &c) in lhs.iter_mut().zip(a.basis_product(l, k)) {
                            *o = (*o + ij[l] * c) % p;
                        }
                    }
                    if jk[l] != 0 {
                        for (o, &c) in rhs.iter_mut().zip(a.basis_product(i, l)) {
                            *o = (*o + jk[l] * c) % p;
                        }
                    }
                }
                if lhs != rhs {
                    return Some((i, j, k));
                }
            }
        }
        None
    });
    rep.associative = true;
    if let Some((i, j, k)) = bad.into_iter().flatten().next() {
        rep.associative = false;
        rep.failures.push(format!("associativity fails on (b_{i} b_{j}) b_{k}"));
    }

    rep.unit = (0..d).all(|j| {
        let b = a.basis_vector(j);
        a.mul(a.unit(), &b) == b && a.mul(&b, a.unit()) == b
    });
    if !rep.unit {
        rep.failures.push("unit is not a two-sided identity".into());
    }

    let verts = a.vertices();
    let zero = vec![0u64; d];
    let mut idem_ok = !verts.is_empty();
    let mut sum = zero.clone();
    for (i, e) in verts.iter().enumerate() {
        sum = a.add(&sum, e);
        if *e == zero {
            idem_ok = false;
            rep.failures.push(format!("vertex idempotent {i} is zero"));
        }
        for (j, f) in verts.iter().enumerate() {
            let ef = a.mul(e, f);
            let expect = if i == j { e } else { &zero };
            if ef != *expect {
                idem_ok = false;
                rep.failures.push(format!("vertex idempotents {i},{j} not orthogonal idempotents"));
            }
        }
    }
    if sum != a.unit() {
        idem_ok = false;
        rep.failures.push("vertex idempotents do not sum to the unit".into());
    }
    rep.idempotents = idem_ok;

    let rad = a.radical();
    rep.radical_nilpotent = a.nilpotency_index(rad).is_some();
    if !rep.radical_nilpotent {
        rep.failures.push("ideal generated by the radical generators is not nilpotent".into());
    }

    let with_vertices = verts.iter().fold(rad.clone(), |mut s, e| {
        s.insert(e);
        s
    });
    rep.split_basic = d - rad.dim() == verts.len() && with_vertices.dim() == d;
    if !rep.split_basic {
        rep.failures.push(format!(
            "quotient by the radical has dimension {} but there are {} vertices",
            d - rad.dim(),
            verts.len()
        ));
    }
    rep
}

/// Radical layers of a module. `dims[k] = dim rad^k(M)`, ending with 0;
/// `layers[k][i]` is the multiplicity of the simple at vertex `i` in
/// `rad^k(M) / rad^(k+1)(M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalSeries {
    pub dims: Vec<usize>,
    pub layers: Vec<Vec<usize>>,
}

impl RadicalSeries {
    pub fn loewy_length(&self) -> usize {
        self.layers.len()
    }

    pub fn composition_factors(&self) -> Vec<usize> {
        let n = self.layers.first().map_or(0, Vec::len);
        (0..n).map(|i| self.layers.iter().map(|l| l[i]).sum()).collect()
    }

    pub fn top(&self) -> Vec<usize> {
        self.layers.first().cloned().unwrap_or_default()
    }
}

fn image_dim(m: &LeftModule, e: &[u64], v: &Subspace) -> usize {
    let act = m.act(e);
    Subspace::from_vectors(m.prime(), m.dim(), v.basis().iter().map(|w| act.mul_vec(w).expect("shape")))
        .dim()
}

pub(crate) fn radical_chain(a: &BasisAlgebra, m: &LeftModule) -> Result<Vec<Subspace>> {
    let mut chain = vec![Subspace::full(m.prime(), m.dim())];
    loop {
        let last = chain.last().expect("nonempty");
        if last.is_zero() {
            return Ok(chain);
        }
        let next = m.radical_image(a, last);
        if next.dim() == last.dim() {
            return Err(Error::Construction("radical does not act nilpotently".into()));
        }
        chain.push(next);
    }
}

pub fn radical_series(a: &BasisAlgebra, m: &LeftModule) -> Result<RadicalSeries> {
    m.check_axioms(a)?;
    radical_series_unchecked(a, m)
}

pub(crate) fn radical_series_unchecked(a: &BasisAlgebra, m: &LeftModule) -> Result<RadicalSeries> {
    let chain = radical_chain(a, m)?;
    let verts = a.vertices();
    let img: Vec<Vec<usize>> = chain
        .iter()
        .map(|v| verts.iter().map(|e| image_dim(m, e, v)).collect())
        .collect();
    let layers = (0..chain.len() - 1)
        .map(|k| (0..verts.len()).map(|i| img[k][i] - img[k + 1][i]).collect())
        .collect();
    Ok(RadicalSeries { dims: chain.iter().map(Subspace::dim).collect(), layers })
}

pub fn loewy_length(a: &BasisAlgebra, m: &LeftModule) -> Result<usize> {
    Ok(radical_series(a, m)?.loewy_length())
}

/// `C[i][j]` = multiplicity of the simple `S_j` in the projective `P_i = A e_i`.
pub fn cartan_matrix(a: &BasisAlgebra) -> Result<Vec<Vec<usize>>> {
    (0..a.vertex_count())
        .map(|i| {
            let proj = LeftModule::projective(a, i)?;
            Ok(radical_series_unchecked(a, &proj)?.composition_factors())
        })
        .collect()
}

/// `dim Ext^1(S_i, S_j)`: multiplicity of `S_j` in `rad P_i / rad^2 P_i`.
pub fn ext1_dim(a: &BasisAlgebra, i: usize, j: usize) -> Result<usize> {
    let count = a.vertex_count();
    for v in [i, j] {
        if v >= count {
            return Err(Error::VertexOutOfRange { vertex: v, count });
        }
    }
    let series = radical_series_unchecked(a, &LeftModule::projective(a, i)?)?;
    Ok(series.layers.get(1).map_or(0, |l| l[j]))
}

pub(crate) fn simple_module(a: &BasisAlgebra, i: usize) -> Result<LeftModule> {
    let proj = LeftModule::projective(a, i)?;
    let rad = proj.radical_image(a, &Subspace::full(proj.prime(), proj.dim()));
    proj.quotient(&rad)
}

/// Kernel of the projective cover `P(m) -> m`.
///
/// Projective summands of `m` are not stripped first, so `syzygy(P)` of a
/// projective `P` is the zero module but `syzygy(P ⊕ X)` need not be minimal.
pub fn syzygy(a: &BasisAlgebra, m: &LeftModule) -> Result<LeftModule> {
    m.check_axioms(a)?;
    syzygy_unchecked(a, m)
}

fn syzygy_unchecked(a: &BasisAlgebra, m: &LeftModule) -> Result<LeftModule> {
    let p = m.prime();
    if m.is_zero() {
        return Ok(LeftModule::zero(a));
    }
    let rad = m.radical_image(a, &Subspace::full(p, m.dim()));
    // Generators: lift a basis of the top, vertex by vertex.
    let mut spanned = rad.clone();
    let mut gens: Vec<(usize, Vec<u64>)> = Vec::new();
    for (i, e) in a.vertices().iter().enumerate() {
        let act = m.act(e);
        for c in 0..m.dim() {
            let v = act.column(c);
            if spanned.insert(&v) {
                gens.push((i, v));
            }
        }
    }
    if spanned.dim() != m.dim() {
        return Err(Error::Construction("vertex components do not generate the top".into()));
    }
    let mut parts = Vec::new();
    let mut images: Vec<Vec<u64>> = Vec::new();
    for (i, v) in &gens {
        let sub = LeftModule::projective_subspace(a, *i)?;
        for x in sub.basis() {
            images.push(m.act(x).mul_vec(v)?);
        }
        parts.push(LeftModule::regular(a).submodule(&sub)?);
    }
    let cover = LeftModule::direct_sum(&parts)?;
    let phi = crate::exactring::ExactMatrix::from_columns(a.ring(), m.dim(), &images)?;
    if mat_rank_fp(&phi)? != m.dim() {
        return Err(Error::Construction("projective cover map is not onto".into()));
    }
    let ker = crate::exactring::mat_kernel_fp(&phi)?;
    cover.submodule(&Subspace::from_vectors(p, cover.dim(), &ker))
}

/// Whether two modules are isomorphic: layer data first, then a search for
/// an invertible intertwiner.
pub fn is_isomorphic(a: &BasisAlgebra, m: &LeftModule, n: &LeftModule) -> Result<bool> {
    if m.dim() != n.dim() {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    if radical_series(a, m)? != radical_series(a, n)? {
        return Ok(false);
    }
    let homs = intertwiners(a, m, n)?;
    Ok(find_matching(m.prime(), &homs, |x| mat_rank_fp(x).map(|r| r == m.dim()).unwrap_or(false)))
}

// Exhaustive over the span when it has at most 2^16 elements, otherwise
// 256 seeded random combinations.
fn find_matching<F>(p: u64, mats: &[crate::exactring::ExactMatrix], pred: F) -> bool
where
    F: Fn(&crate::exactring::ExactMatrix) -> bool,
{
    if mats.is_empty() {
        return false;
    }
    let s = mats.len() as u32;
    let total = (p as u128).checked_pow(s).unwrap_or(u128::MAX);
    if total <= 1 << 16 {
        let mut coeffs = vec![0u64; mats.len()];
        for _ in 1..total {
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c == p {
                    *c = 0;
                } else {
                    break;
                }
            }
            if pred(&combine(p, &coeffs, mats)) {
                return true;
            }
        }
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    (0..256).any(|_| {
        let coeffs: Vec<u64> = (0..mats.len()).map(|_| rng.gen_range(0..p)).collect();
        pred(&combine(p, &coeffs, mats))
    })
}

/// Whether `End_A(m)` is local: every endomorphism is nilpotent or invertible.
///
/// Enumerates the endomorphism ring, so it refuses rings with more than
/// `10^5` elements.
pub fn is_local_module(a: &BasisAlgebra, m: &LeftModule) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let p = m.prime();
    let ends = intertwiners(a, m, m)?;
    let s = ends.len() as u32;
    let total = (p as u128).checked_pow(s).unwrap_or(u128::MAX);
    if total > 100_000 {
        return Err(Error::BudgetExceeded(format!("endomorphism ring has {p}^{s} elements")));
    }
    let mut coeffs = vec![0u64; ends.len()];
    for _ in 1..total {
        for c in coeffs.iter_mut() {
            *c += 1;
            if *c == p {
                *c = 0;
            } else {
                break;
            }
        }
        let x = combine(p, &coeffs, &ends);
        let invertible = mat_rank_fp(&x)? == m.dim();
        if !invertible && !is_nilpotent_matrix(&x) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OmegaPeriod {
    /// Least `t` with `Ω^t(S) ≅ S`; `0` when `Ω(S)` is already zero.
    Finite(usize),
    ExceedsBound,
}

pub fn omega_orbit_period(a: &BasisAlgebra, vertex: usize, bound: usize) -> Result<OmegaPeriod> {
    if vertex >= a.vertex_count() {
        return Err(Error::VertexOutOfRange { vertex, count: a.vertex_count() });
    }
    let simple = simple_module(a, vertex)?;
    let mut m = simple.clone();
    for t in 1..=bound {
        m = syzygy_unchecked(a, &m)?;
        if m.is_zero() {
            return Ok(OmegaPeriod::Finite(0));
        }
        if is_isomorphic(a, &m, &simple)? {
            return Ok(OmegaPeriod::Finite(t));
        }
    }
    Ok(OmegaPeriod::ExceedsBound)
}
