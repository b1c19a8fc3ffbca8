//! Column lattices: the indecomposable projectives `Λ e_k` and the kernels of
//! the maps between neighbouring projectives.

use serde::Serialize;

use crate::algebra::{is_local_module, radical_series, BasisAlgebra, LeftModule};
use crate::exactring::{smith_form, ExactMatrix, Lattice, Valuation};
use crate::error::{Error, Result};

use super::reduce::{basis_elements, reduce_mod_p};
use super::{mul_unchecked, GreenOrderElement, GreenOrderSpec};

/// A `Λ`-lattice inside the ambient `Z_p`-module of slot vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnLattice {
    pub label: String,
    /// Rational components meeting the lattice: the leading scalar (when
    /// present) is component 0, then the blocks, then the trailing scalar.
    pub components: Vec<usize>,
    pub rank: usize,
    /// `Z_p`-basis as slot vectors mod `p^N`.
    pub basis: Vec<Vec<u64>>,
    /// Multiplicities of the simples in the top of `L / pL`.
    pub top: Vec<usize>,
    /// Whether `End(L / pL)` over the reduced algebra is local.
    pub end_local: bool,
}

fn component_of_slot(spec: &GreenOrderSpec, slot: usize) -> usize {
    let off = usize::from(spec.leading);
    if slot < off {
        0
    } else {
        off + ((slot - off) / 4).min(spec.m)
    }
}

fn left_act(spec: &GreenOrderSpec, x: &GreenOrderElement, v: &[u64]) -> Result<Vec<u64>> {
    let e = GreenOrderElement::from_slots(spec, &v.iter().map(|&s| s as i128).collect::<Vec<_>>())?;
    Ok(mul_unchecked(spec, x, &e)?.slots())
}

fn describe(
    spec: &GreenOrderSpec,
    reduced: &BasisAlgebra,
    basis: &[GreenOrderElement],
    label: String,
    lat: &Lattice,
) -> Result<ColumnLattice> {
    let p = spec.p;
    let r = lat.rank();
    let fp = reduced.ring();
    let mut actions = Vec::with_capacity(basis.len());
    for b in basis {
        let mut cols = Vec::with_capacity(r);
        for v in lat.basis() {
            cols.push(lat.coords_mod_p(&left_act(spec, b, v)?)?);
        }
        actions.push(ExactMatrix::from_columns(fp, r, &cols)?);
    }
    let module = LeftModule::new(p, r, actions)?;
    let series = radical_series(reduced, &module)?;
    let mut components: Vec<usize> = lat
        .basis()
        .iter()
        .flat_map(|v| v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| component_of_slot(spec, i)))
        .collect();
    components.sort_unstable();
    components.dedup();
    Ok(ColumnLattice {
        label,
        components,
        rank: r,
        basis: lat.basis().to_vec(),
        top: series.top(),
        end_local: is_local_module(reduced, &module)?,
    })
}

fn projective_raw(spec: &GreenOrderSpec, basis: &[GreenOrderElement], k: usize) -> Result<Lattice> {
    let e = &basis[k];
    let gens = basis
        .iter()
        .map(|b| Ok(mul_unchecked(spec, b, e)?.slots()))
        .collect::<Result<Vec<_>>>()?;
    Lattice::from_generators(spec.ring(), spec.slot_count(), &gens)
}

/// The projectives `Λ e_k`, one per vertex.
pub fn projective_lattices(spec: &GreenOrderSpec) -> Result<Vec<ColumnLattice>> {
    let reduced = reduce_mod_p(spec)?;
    let basis = basis_elements(spec);
    (0..spec.vertex_count())
        .map(|k| describe(spec, &reduced, &basis, format!("P{k}"), &projective_raw(spec, &basis, k)?))
        .collect()
}

/// Kernels of the maps `P_i -> P_j`, `y ↦ y x`, for neighbours `i, j` and `x`
/// spanning `e_i Λ e_j`. Listed as `i -> i+1` then `i+1 -> i` per edge.
pub fn kernel_lattices(spec: &GreenOrderSpec) -> Result<Vec<ColumnLattice>> {
    let reduced = reduce_mod_p(spec)?;
    let basis = basis_elements(spec);
    let ring = spec.ring();
    let nv = spec.vertex_count();
    let mut out = Vec::with_capacity(2 * (nv - 1));
    for i in 0..nv - 1 {
        for (s, t) in [(i, i + 1), (i + 1, i)] {
            let (es, et) = (&basis[s], &basis[t]);
            let x = basis[nv..]
                .iter()
                .find(|b| {
                    let c = mul_unchecked(spec, &mul_unchecked(spec, es, b).expect("shape"), et).expect("shape");
                    c == **b
                })
                .ok_or_else(|| Error::Construction(format!("no map from P{s} to P{t}")))?;
            let src = projective_raw(spec, &basis, s)?;
            let images = src
                .basis()
                .iter()
                .map(|v| {
                    let y = GreenOrderElement::from_slots(spec, &v.iter().map(|&z| z as i128).collect::<Vec<_>>())?;
                    Ok(mul_unchecked(spec, &y, x)?.slots())
                })
                .collect::<Result<Vec<_>>>()?;
            let sf = smith_form(&ExactMatrix::from_columns(ring, spec.slot_count(), &images)?)?;
            // kernel vectors are only determined modulo p^(N - v), v the largest divisor
            let v = sf
                .exponents
                .iter()
                .filter_map(|e| match e {
                    Valuation::Finite(v) => Some(*v),
                    Valuation::AtLeast(_) => None,
                })
                .max()
                .unwrap_or(0);
            let low = spec.with_precision(spec.precision - v).map_err(|_| {
                Error::Hypothesis(format!("precision {} too low for kernel of P{s}→P{t}", spec.precision))
            })?;
            let q = low.ring().modulus();
            let kernel: Vec<Vec<u64>> = (0..src.rank())
                .filter(|&j| !matches!(sf.exponents.get(j), Some(Valuation::Finite(_))))
                .map(|j| {
                    let mut w = vec![0u64; spec.slot_count()];
                    for (c, b) in src.basis().iter().enumerate() {
                        let coef = sf.right.get(c, j) % q;
                        for (o, &z) in w.iter_mut().zip(b) {
                            *o = (*o + coef * (z % q)) % q;
                        }
                    }
                    w
                })
                .collect();
            let lat = Lattice::from_generators(low.ring(), spec.slot_count(), &kernel)?;
            out.push(describe(&low, &reduced, &basis_elements(&low), format!("ker(P{s}→P{t})"), &lat)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_ranks() {
        for (p, want) in [(3u64, vec![3, 4, 3]), (5, vec![3, 4, 4, 4, 3])] {
            let spec = GreenOrderSpec::lambda0(p, 4).unwrap();
            let ls = projective_lattices(&spec).unwrap();
            assert_eq!(ls.iter().map(|l| l.rank).collect::<Vec<_>>(), want);
            assert_eq!(ls.iter().map(|l| l.rank).sum::<usize>(), 4 * p as usize - 2);
            for (k, l) in ls.iter().enumerate() {
                assert!(l.end_local);
                let mut top = vec![0; p as usize];
                top[k] = 1;
                assert_eq!(l.top, top);
            }
        }
    }

    #[test]
    fn kernel_census() {
        for p in [2u64, 3, 5] {
            let spec = GreenOrderSpec::lambda0(p, 4).unwrap();
            let ks = kernel_lattices(&spec).unwrap();
            assert_eq!(ks.len(), 2 * (p as usize - 1));
            assert!(ks.iter().all(|k| k.end_local && k.rank > 0));
            let mut keys: Vec<_> = ks.iter().map(|k| (k.components.clone(), k.top.clone())).collect();
            keys.sort();
            keys.dedup();
            assert_eq!(keys.len(), ks.len(), "p = {p}");
        }
    }
}
