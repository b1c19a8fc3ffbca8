//! Group algebras `F_p G` from a multiplication table, with the radical and
//! the vertex idempotents found by brute force. Nothing here knows about
//! trees or quivers, which is the point: it is an independent oracle.

use crate::exactring::arith::{add_mod, mul_mod, sub_mod};
use crate::exactring::Subspace;
use crate::error::{Error, Result};
use crate::par::{self, Exec};

use super::BasisAlgebra;

const SEARCH_BUDGET: u128 = 1_000_000;
const LIFT_CAP: usize = 64;

pub fn group_algebra_from_table(table: &[Vec<usize>], p: u64) -> Result<BasisAlgebra> {
    group_algebra_from_table_with(table, p, Exec::default())
}

/// Builds `F_p G` on the group-element basis.
///
/// The radical is the span of every element whose two-sided ideal is
/// nilpotent, found by enumerating all `p^|G|` elements. Vertex idempotents
/// are primitive idempotents of `A/J`, found by enumeration and lifted to `A`.
pub fn group_algebra_from_table_with(table: &[Vec<usize>], p: u64, exec: Exec) -> Result<BasisAlgebra> {
    let n = table.len();
    let identity = check_group(table)?;
    let total = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > SEARCH_BUDGET {
        return Err(Error::BudgetExceeded(format!("{p}^{n} elements exceeds 10^6")));
    }
    let mut flat = vec![0u64; n * n * n];
    for (g, row) in table.iter().enumerate() {
        for (h, &gh) in row.iter().enumerate() {
            flat[(g * n + h) * n + gh] = 1;
        }
    }
    let mut unit = vec![0u64; n];
    unit[identity] = 1;
    let bare = BasisAlgebra::from_flat(p, n, flat.clone(), unit.clone(), vec![unit.clone()], vec![])?;

    let nilpotent = par::map_range(exec, total as usize, |idx| {
        let x = digits(idx, p, n);
        if x.iter().all(|&c| c == 0) {
            return None;
        }
        let ideal = bare.two_sided_ideal(&[&x]);
        bare.nilpotency_index(&ideal).map(|_| x)
    });
    let rad = Subspace::from_vectors(p, n, nilpotent.into_iter().flatten());

    let vertices = lift_primitive_idempotents(&bare, &rad, exec)?;
    BasisAlgebra::from_flat(p, n, flat, unit, vertices, rad.basis().to_vec())
}

fn digits(mut idx: usize, p: u64, n: usize) -> Vec<u64> {
    let mut v = vec![0u64; n];
    for c in v.iter_mut() {
        *c = (idx as u64) % p;
        idx /= p as usize;
    }
    v
}

/// Validates the table and returns the index of the identity.
fn check_group(table: &[Vec<usize>]) -> Result<usize> {
    let n = table.len();
    if n == 0 {
        return Err(Error::NotAGroup("empty table".into()));
    }
    for row in table {
        if row.len() != n || row.iter().any(|&x| x >= n) {
            return Err(Error::NotAGroup("table must be n x n with entries below n".into()));
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
    for g in 0..n {
        if !(0..n).any(|h| table[g][h] == identity && table[h][g] == identity) {
            return Err(Error::NotAGroup(format!("element {g} has no inverse")));
        }
        for h in 0..n {
            for k in 0..n {
                if table[table[g][h]][k] != table[g][table[h][k]] {
                    return Err(Error::NotAGroup(format!("associativity fails on ({g},{h},{k})")));
                }
            }
        }
    }
    Ok(identity)
}

fn lin(p: u64, terms: &[(u64, &[u64])]) -> Vec<u64> {
    let mut out = vec![0u64; terms[0].1.len()];
    for &(c, v) in terms {
        for (o, &x) in out.iter_mut().zip(v) {
            *o = add_mod(*o, mul_mod(c, x, p), p);
        }
    }
    out
}

fn lift_primitive_idempotents(a: &BasisAlgebra, rad: &Subspace, exec: Exec) -> Result<Vec<Vec<u64>>> {
    let p = a.prime();
    let d = a.dim();
    let free = rad.complement_indices();
    let q = free.len();
    let count = (p as usize).pow(q as u32);
    let candidates: Vec<Vec<u64>> = (1..count)
        .map(|idx| {
            let mut v = vec![0u64; d];
            for (&i, c) in free.iter().zip(digits(idx, p, q)) {
                v[i] = c;
            }
            v
        })
        .collect();
    let eq_mod = |x: &[u64], y: &[u64]| rad.reduce(x) == rad.reduce(y);
    // dim (A x + J) / J
    let left_ideal_dim = |x: &[u64]| {
        let s = (0..d).fold(rad.clone(), |mut s, i| {
            s.insert(&a.mul(&a.basis_vector(i), x));
            s
        });
        s.dim() - rad.dim()
    };

    let mut found: Vec<Vec<u64>> = Vec::new();
    let mut used = vec![0u64; d];
    loop {
        let f = a.sub(a.unit(), &used);
        if rad.contains(&f) {
            break;
        }
        let scored = par::map_slice(exec, &candidates, |x| {
            let inside = eq_mod(&a.mul(&f, x), x) && eq_mod(&a.mul(x, &f), x);
            (inside && eq_mod(&a.mul(x, x), x)).then(|| left_ideal_dim(x))
        });
        let (best, dim) = scored
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.map(|k| (i, k)))
            .min_by_key(|&(i, k)| (k, i))
            .ok_or_else(|| Error::Construction("no idempotent in the remaining corner".into()))?;
        if dim == left_ideal_dim(&f) {
            found.push(f);
            break;
        }
        let x = a.sandwich(&f, &candidates[best]);
        let e = lift_idempotent(a, x)?;
        used = a.add(&used, &e);
        found.push(e);
    }
    Ok(found)
}

/// Iterates `x <- 3x^2 - 2x^3` until `x^2 = x`.
fn lift_idempotent(a: &BasisAlgebra, mut x: Vec<u64>) -> Result<Vec<u64>> {
    let p = a.prime();
    for _ in 0..LIFT_CAP {
        let x2 = a.mul(&x, &x);
        if x2 == x {
            return Ok(x);
        }
        let x3 = a.mul(&x2, &x);
        x = lin(p, &[(3 % p, &x2), (sub_mod(0, 2 % p, p), &x3)]);
    }
    Err(Error::LiftingDiverged(LIFT_CAP))
}

/// Multiplication table of the symmetric group on `n` letters; element 0 is
/// the identity and permutations are listed in lexicographic order.
pub fn symmetric_group_table(n: usize) -> Vec<Vec<usize>> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        perms.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    let index = |q: &[usize]| perms.iter().position(|r| r == q).expect("closed");
    perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .map(|t| index(&(0..n).map(|k| s[t[k]]).collect::<Vec<_>>()))
                .collect()
        })
        .collect()
}

pub fn cyclic_group_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect()
}
