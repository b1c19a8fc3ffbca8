//! Partition counts behind the lattice and simple-module census.

use serde::Serialize;

use crate::error::{Error, Result};

use super::is_prime_or_err;

/// All partitions of `n`, parts in non-increasing order, in reverse
/// lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `ρ(n)`, by enumeration.
pub fn partition_count(n: usize) -> usize {
    partitions(n).len()
}

/// Partitions of `n` in which no part occurs `p` or more times.
pub fn p_regular_count(n: usize, p: usize) -> usize {
    partitions(n)
        .iter()
        .filter(|l| l.chunk_by(|a, b| a == b).all(|run| run.len() < p))
        .count()
}

/// `(a, 1, ..., 1)`.
pub fn is_hook(l: &[usize]) -> bool {
    l.iter().skip(1).all(|&x| x == 1)
}

pub fn hook_count(n: usize) -> usize {
    partitions(n).iter().filter(|l| is_hook(l)).count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeCount {
    pub total: usize,
    pub projective: usize,
    pub nonprojective: usize,
    /// `3p - 2`: the projectives and kernels of the Green order.
    pub green_part: usize,
    /// `Σ_{k=2}^{p-1} ρ(k)`: one lattice per commutative factor.
    pub commutative_part: usize,
}

/// Indecomposable lattices: `3p - 2 + Σ_{k=2}^{p-1} ρ(k)`, of which
/// `p + Σρ(k)` are projective and `2(p - 1)` are not.
pub fn lattice_count(p: u64) -> Result<LatticeCount> {
    is_prime_or_err(p)?;
    let k = p as usize;
    let commutative_part: usize = (2..k).map(partition_count).sum();
    let green_part = 3 * k - 2;
    let projective = k + commutative_part;
    let nonprojective = 2 * (k - 1);
    let total = green_part + commutative_part;
    if projective + nonprojective != total {
        return Err(Error::Construction("lattice breakdown does not add up".into()));
    }
    Ok(LatticeCount { total, projective, nonprojective, green_part, commutative_part })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CommutativeFactors {
    pub total: usize,
    /// `Σ_{i=2}^{p-1} ρ(i)`.
    pub low_degree: usize,
    /// `(Σ_{i=1}^{p-1} ρ_p(i)) - 1`, counted independently from p-regular partitions.
    pub low_degree_regular: usize,
    /// Partitions of `p` that are not hooks.
    pub non_hooks: usize,
    pub hooks: usize,
}

/// Commutative factors: one per simple of degree `2..p-1`, plus one per
/// non-hook partition of `p`. Both counts of the first summand must agree,
/// and `p` must have exactly `p` hooks.
pub fn commutative_factor_count(p: u64) -> Result<CommutativeFactors> {
    is_prime_or_err(p)?;
    if p < 5 {
        return Err(Error::InvalidParam(format!("p = {p}; need p >= 5")));
    }
    let k = p as usize;
    let low_degree: usize = (2..k).map(partition_count).sum();
    let low_degree_regular = (1..k).map(|i| p_regular_count(i, k)).sum::<usize>() - 1;
    if low_degree != low_degree_regular {
        return Err(Error::Construction(format!(
            "degree counts disagree: {low_degree} vs {low_degree_regular}"
        )));
    }
    let hooks = hook_count(k);
    if hooks != k {
        return Err(Error::Construction(format!("{k} has {hooks} hooks")));
    }
    let non_hooks = partition_count(k) - hooks;
    Ok(CommutativeFactors { total: low_degree + non_hooks, low_degree, low_degree_regular, non_hooks, hooks })
}

/// `(commutative factors + p, Σ_{n=1}^{p} ρ_p(n))`; the two should agree.
pub fn simple_count_identity(p: u64) -> Result<(usize, usize)> {
    let c = commutative_factor_count(p)?;
    let k = p as usize;
    Ok((c.total + k, (1..=k).map(|n| p_regular_count(n, k)).sum()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_enumeration() {
        assert_eq!((1..=7).map(partition_count).collect::<Vec<_>>(), [1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!((1..=5).map(|n| p_regular_count(n, 5)).collect::<Vec<_>>(), [1, 2, 3, 5, 6]);
        assert_eq!(hook_count(5), 5);
        assert!(is_hook(&[3, 1, 1]) && !is_hook(&[2, 2, 1]));
    }

    #[test]
    fn lattice_counts() {
        assert_eq!(lattice_count(5).unwrap().total, 23);
        assert_eq!(lattice_count(3).unwrap().total, 9);
        let two = lattice_count(2).unwrap();
        assert_eq!((two.total, two.projective, two.nonprojective), (4, 2, 2));
        let five = lattice_count(5).unwrap();
        assert_eq!((five.projective, five.nonprojective), (15, 8));
        assert!(lattice_count(6).is_err());
    }

    #[test]
    fn commutative_factors() {
        let c = commutative_factor_count(5).unwrap();
        assert_eq!((c.total, c.low_degree, c.non_hooks), (12, 10, 2));
        assert_eq!(commutative_factor_count(7).unwrap().total, 36);
        for p in [5, 7, 11] {
            let c = commutative_factor_count(p).unwrap();
            assert_eq!(c.low_degree, c.low_degree_regular);
        }
        assert_eq!(simple_count_identity(5).unwrap(), (17, 17));
        assert_eq!(simple_count_identity(7).unwrap(), (43, 43));
        assert!(commutative_factor_count(3).is_err());
    }
}
