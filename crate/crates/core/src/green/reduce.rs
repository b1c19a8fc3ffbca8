//! The `Z_p`-basis of the order, its reduction mod `p`, and the central
//! idempotents of the rational hull.

use crate::algebra::BasisAlgebra;
use crate::error::{Error, Result};

use super::{mul_unchecked, GreenOrderElement, GreenOrderSpec};

/// Slot indices of a vertex: `(first, Some(second))` for a glued pair.
pub(crate) fn vertex_slots(spec: &GreenOrderSpec) -> Vec<(usize, Option<usize>)> {
    let off = usize::from(spec.leading);
    let a = |j: usize| off + 4 * j;
    let d = |j: usize| off + 4 * j + 3;
    let mut out = Vec::with_capacity(spec.m + 1);
    out.push(if spec.leading { (0, Some(d(0))) } else { (d(0), None) });
    for j in 0..spec.m - 1 {
        out.push((a(j), Some(d(j + 1))));
    }
    out.push((a(spec.m - 1), Some(off + 4 * spec.m)));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum BasisKind {
    /// Vertex idempotent: 1 in both slots of the pair.
    Idem(usize),
    /// `p^x` in the first slot of a glued pair.
    Gap(usize),
    /// `E_12` of a block.
    Upper(usize),
    /// `p^x E_21` of a block.
    Lower(usize),
}

pub(crate) fn basis_kinds(spec: &GreenOrderSpec) -> Vec<BasisKind> {
    let verts = vertex_slots(spec);
    let mut out: Vec<BasisKind> = (0..verts.len()).map(BasisKind::Idem).collect();
    out.extend((0..verts.len()).filter(|&k| verts[k].1.is_some()).map(BasisKind::Gap));
    out.extend((0..spec.m).map(BasisKind::Upper));
    out.extend((0..spec.m).map(BasisKind::Lower));
    out
}

/// Names of the reduced basis, in order: vertex idempotents `e0..`, the
/// `p^x` gap elements `g*`, upper entries `u1..um`, lower entries `l1..lm`.
pub fn reduced_basis_labels(spec: &GreenOrderSpec) -> Vec<String> {
    basis_kinds(spec)
        .into_iter()
        .map(|k| match k {
            BasisKind::Idem(v) => format!("e{v}"),
            BasisKind::Gap(v) => format!("g{v}"),
            BasisKind::Upper(j) => format!("u{}", j + 1),
            BasisKind::Lower(j) => format!("l{}", j + 1),
        })
        .collect()
}

/// The `Z_p`-basis as elements at the order's precision.
pub(crate) fn basis_elements(spec: &GreenOrderSpec) -> Vec<GreenOrderElement> {
    let verts = vertex_slots(spec);
    let off = usize::from(spec.leading);
    let px = spec.px() as i128;
    basis_kinds(spec)
        .into_iter()
        .map(|k| {
            let mut s = vec![0i128; spec.slot_count()];
            match k {
                BasisKind::Idem(v) => {
                    s[verts[v].0] = 1;
                    if let Some(t) = verts[v].1 {
                        s[t] = 1;
                    }
                }
                BasisKind::Gap(v) => s[verts[v].0] = px,
                BasisKind::Upper(j) => s[off + 4 * j + 1] = 1,
                BasisKind::Lower(j) => s[off + 4 * j + 2] = px,
            }
            GreenOrderElement::from_slots(spec, &s).expect("shape")
        })
        .collect()
}

/// Coordinates of a member in the `Z_p`-basis, reduced mod `p`.
pub(crate) fn coords_mod_p(spec: &GreenOrderSpec, slots: &[u64]) -> Result<Vec<u64>> {
    let p = spec.p;
    let q = spec.ring().modulus();
    let px = spec.px();
    let verts = vertex_slots(spec);
    let off = usize::from(spec.leading);
    let exact_div = |v: u64, what: &str| -> Result<u64> {
        if !v.is_multiple_of(px) {
            return Err(Error::Construction(format!("{what} is not divisible by p^x")));
        }
        Ok((v / px) % p)
    };
    basis_kinds(spec)
        .into_iter()
        .map(|k| match k {
            BasisKind::Idem(v) => Ok(slots[verts[v].1.unwrap_or(verts[v].0)] % p),
            BasisKind::Gap(v) => {
                let (s1, s2) = (verts[v].0, verts[v].1.expect("glued"));
                exact_div((slots[s1] + q - slots[s2]) % q, "a glued difference")
            }
            BasisKind::Upper(j) => Ok(slots[off + 4 * j + 1] % p),
            BasisKind::Lower(j) => exact_div(slots[off + 4 * j + 2], "a lower entry"),
        })
        .collect()
}

/// `F_p ⊗ Λ` on the reduced `Z_p`-basis.
///
/// Products of basis elements are formed at precision `x + 1`, one digit past
/// the congruence exponent, so that the `p^x`-scaled coordinates survive the
/// exact division.
pub fn reduce_mod_p(spec: &GreenOrderSpec) -> Result<BasisAlgebra> {
    let lifted = spec.with_precision(spec.x + 1)?;
    let basis = basis_elements(&lifted);
    let d = basis.len();
    let mut table = vec![0u64; d * d * d];
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            let prod = mul_unchecked(&lifted, bi, bj)?;
            let c = coords_mod_p(&lifted, &prod.slots())?;
            table[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(&c);
        }
    }
    let nv = spec.vertex_count();
    let unit_vec = |i: usize| {
        let mut v = vec![0u64; d];
        v[i] = 1;
        v
    };
    let unit = coords_mod_p(&lifted, &GreenOrderElement::identity(&lifted).slots())?;
    BasisAlgebra::from_flat(
        spec.p,
        d,
        table,
        unit,
        (0..nv).map(unit_vec).collect(),
        (nv..d).map(unit_vec).collect(),
    )
}

/// Number of simple components of `Q_p ⊗ Λ`, witnessed by their central
/// idempotents (one per end scalar and one per block).
///
/// The idempotents are checked to be orthogonal, complete and central
/// against the `Z_p`-basis, which spans the rational hull.
pub fn rational_components(spec: &GreenOrderSpec) -> Result<usize> {
    let n = spec.slot_count();
    let off = usize::from(spec.leading);
    let mut supports: Vec<Vec<usize>> = Vec::new();
    if spec.leading {
        supports.push(vec![0]);
    }
    supports.extend((0..spec.m).map(|j| vec![off + 4 * j, off + 4 * j + 3]));
    supports.push(vec![off + 4 * spec.m]);
    let idems: Vec<GreenOrderElement> = supports
        .iter()
        .map(|s| {
            let mut v = vec![0i128; n];
            for &i in s {
                v[i] = 1;
            }
            GreenOrderElement::from_slots(spec, &v).expect("shape")
        })
        .collect();
    let zero = GreenOrderElement::zero(spec);
    let mut sum = vec![0u64; n];
    for (i, e) in idems.iter().enumerate() {
        for (j, f) in idems.iter().enumerate() {
            let ef = mul_unchecked(spec, e, f)?;
            if ef != if i == j { e.clone() } else { zero.clone() } {
                return Err(Error::Construction(format!("component idempotents {i},{j} not orthogonal")));
            }
        }
        for b in basis_elements(spec) {
            if mul_unchecked(spec, e, &b)? != mul_unchecked(spec, &b, e)? {
                return Err(Error::Construction(format!("component idempotent {i} is not central")));
            }
        }
        for (o, v) in sum.iter_mut().zip(e.slots()) {
            *o += v;
        }
    }
    if sum != GreenOrderElement::identity(spec).slots() {
        return Err(Error::Construction("component idempotents do not sum to 1".into()));
    }
    Ok(idems.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cartan_matrix, check_algebra};
    use crate::brauer_tree::{cartan_of, predicted_cartan, schur_basic_prediction, BrauerTree};

    #[test]
    fn component_counts() {
        assert_eq!(rational_components(&GreenOrderSpec::lambda0(5, 4).unwrap()).unwrap(), 6);
        assert_eq!(rational_components(&GreenOrderSpec::lambda0(7, 4).unwrap()).unwrap(), 8);
        assert_eq!(rational_components(&GreenOrderSpec::schur_variant(5, 4).unwrap()).unwrap(), 5);
    }

    #[test]
    fn reduction_is_the_stem_algebra() {
        for p in [2, 3, 5] {
            let spec = GreenOrderSpec::lambda0(p, 4).unwrap();
            let a = reduce_mod_p(&spec).unwrap();
            assert!(check_algebra(&a).all_pass(), "p = {p}");
            assert_eq!(a.dim(), 4 * p as usize - 2);
            assert_eq!(cartan_matrix(&a).unwrap(), predicted_cartan(&BrauerTree::stem(p as usize).unwrap()));
        }
    }

    #[test]
    fn schur_variant_reduction() {
        let spec = GreenOrderSpec::schur_variant(5, 4).unwrap();
        let a = reduce_mod_p(&spec).unwrap();
        assert!(check_algebra(&a).all_pass());
        assert_eq!(a.dim(), 17);
        // vertex 0 here is the unpaired end, which the prediction lists last
        let mut c = cartan_matrix(&a).unwrap();
        c.reverse();
        for row in c.iter_mut() {
            row.reverse();
        }
        assert_eq!(c, cartan_of(&schur_basic_prediction(5).unwrap(), 5));
    }

    #[test]
    fn labels_match_basis() {
        let spec = GreenOrderSpec::lambda0(3, 4).unwrap();
        assert_eq!(
            reduced_basis_labels(&spec),
            ["e0", "e1", "e2", "g0", "g1", "g2", "u1", "u2", "l1", "l2"]
        );
    }
}
