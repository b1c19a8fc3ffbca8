//! Concrete polynomial functors on free modules: dimensions, cross effects,
//! matrix actions, and randomized checks of their reduction mod `p`.
//!
//! Cross effects are taken at all-`Z` slots: `c_j = dim F^{(j-1)}(Z|...|Z)`,
//! obtained by inverting `dim F(Z^k) = F(0) + Σ_{j>=1} C(k, j) c_j`. Constant
//! summands show up only in the offset `F(0)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactring::arith::{self, add_mod, inv_mod, mul_mod, sub_mod};
use crate::exactring::{ExactMatrix, IntMatrix, Ring};
use crate::error::{Error, Result};
use crate::par::{self, Exec};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PolyFunctorSpec {
    Identity,
    Constant,
    TensorPower(usize),
    SymPower(usize),
    ExtPower(usize),
    /// `R[Hom(Z^m, -)] / I^(n+1)`.
    Linearization { m: usize, n: usize },
    DirectSum(Vec<PolyFunctorSpec>),
}

impl fmt::Display for PolyFunctorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PolyFunctorSpec::*;
        match self {
            Identity => write!(f, "id"),
            Constant => write!(f, "const"),
            TensorPower(n) => write!(f, "tensor:{n}"),
            SymPower(n) => write!(f, "sym:{n}"),
            ExtPower(n) => write!(f, "ext:{n}"),
            Linearization { m, n } => write!(f, "lin:{m}:{n}"),
            DirectSum(parts) => {
                write!(f, "sum(")?;
                for (i, s) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Grammar: `id | const | tensor:n | sym:n | ext:n | lin:m:n | sum(spec,spec,...)`.
impl FromStr for PolyFunctorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (spec, rest) = parse_spec(s.trim())?;
        if !rest.trim().is_empty() {
            return Err(Error::Parse(format!("trailing input `{rest}`")));
        }
        Ok(spec)
    }
}

fn parse_spec(s: &str) -> Result<(PolyFunctorSpec, &str)> {
    let s = s.trim_start();
    if let Some(body) = s.strip_prefix("sum(") {
        let mut parts = Vec::new();
        let mut rest = body;
        loop {
            let (part, r) = parse_spec(rest)?;
            parts.push(part);
            let r = r.trim_start();
            if let Some(r) = r.strip_prefix(',') {
                rest = r;
            } else if let Some(r) = r.strip_prefix(')') {
                return Ok((PolyFunctorSpec::DirectSum(parts), r));
            } else {
                return Err(Error::Parse(format!("expected `,` or `)` at `{r}`")));
            }
        }
    }
    let end = s.find([',', ')']).unwrap_or(s.len());
    let (tok, rest) = s.split_at(end);
    let fields: Vec<&str> = tok.trim().split(':').collect();
    let num = |x: &str| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad number `{x}` in `{tok}`")));
    let spec = match fields.as_slice() {
        ["id"] => PolyFunctorSpec::Identity,
        ["const"] => PolyFunctorSpec::Constant,
        ["tensor", n] => PolyFunctorSpec::TensorPower(num(n)?),
        ["sym", n] => PolyFunctorSpec::SymPower(num(n)?),
        ["ext", n] => PolyFunctorSpec::ExtPower(num(n)?),
        ["lin", m, n] => {
            let m = num(m)?;
            if m < 1 {
                return Err(Error::Parse("lin:m:n needs m >= 1".into()));
            }
            PolyFunctorSpec::Linearization { m, n: num(n)? }
        }
        _ => return Err(Error::Parse(format!("unknown functor `{tok}`"))),
    };
    Ok((spec, rest))
}

impl PolyFunctorSpec {
    /// Largest degree parameter in the expression; an upper bound for the
    /// degree, used as the scan bound.
    pub fn degree_bound(&self) -> usize {
        use PolyFunctorSpec::*;
        match self {
            Identity => 1,
            Constant => 0,
            TensorPower(n) | SymPower(n) | ExtPower(n) | Linearization { n, .. } => *n,
            DirectSum(parts) => parts.iter().map(Self::degree_bound).max().unwrap_or(0),
        }
    }
}

fn overflow(what: &str) -> Error {
    Error::Overflow(what.into())
}

fn binom(n: u64, k: u64) -> Result<u128> {
    arith::binomial(n, k).ok_or_else(|| overflow("binomial"))
}

/// `dim F(Z^k)`.
pub fn dim_at(f: &PolyFunctorSpec, k: usize) -> Result<u128> {
    use PolyFunctorSpec::*;
    let k64 = k as u64;
    match f {
        Identity => Ok(k as u128),
        Constant => Ok(1),
        TensorPower(n) => (k as u128).checked_pow(*n as u32).ok_or_else(|| overflow("k^n")),
        SymPower(n) => {
            if k == 0 {
                Ok(u128::from(*n == 0))
            } else {
                binom(k64 + *n as u64 - 1, *n as u64)
            }
        }
        ExtPower(n) => binom(k64, *n as u64),
        Linearization { m, n } => binom(*m as u64 * k64 + *n as u64, *n as u64),
        DirectSum(parts) => parts
            .iter()
            .try_fold(0u128, |acc, g| acc.checked_add(dim_at(g, k)?).ok_or_else(|| overflow("sum"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossEffectTable {
    pub functor: String,
    /// `dim F(0)`, the constant part.
    pub offset: u128,
    /// `c_1..c_J`.
    pub values: Vec<u128>,
}

impl CrossEffectTable {
    /// `c_j` for `j >= 1` (zero past the table).
    pub fn c(&self, j: usize) -> u128 {
        self.values.get(j.wrapping_sub(1)).copied().unwrap_or(0)
    }
}

/// `c_j = Σ_{i=0}^{j} (-1)^{j-i} C(j, i) dim F(Z^i)` for `j = 1..J`, followed by
/// a re-check of `dim F(Z^k) = F(0) + Σ_j C(k, j) c_j` for `k <= J`.
pub fn cross_effect_dims(f: &PolyFunctorSpec, j_max: usize) -> Result<CrossEffectTable> {
    if j_max < 1 {
        return Err(Error::InvalidParam("need at least one slot".into()));
    }
    let dims: Vec<i128> = (0..=j_max)
        .map(|k| dim_at(f, k).and_then(|d| i128::try_from(d).map_err(|_| overflow("dimension"))))
        .collect::<Result<_>>()?;
    let mut values = Vec::with_capacity(j_max);
    for j in 1..=j_max {
        let mut c: i128 = 0;
        for (i, &d) in dims.iter().enumerate().take(j + 1) {
            let b = binom(j as u64, i as u64)? as i128;
            let term = b.checked_mul(d).ok_or_else(|| overflow("cross effect"))?;
            c = if (j - i) % 2 == 0 { c.checked_add(term) } else { c.checked_sub(term) }
                .ok_or_else(|| overflow("cross effect"))?;
        }
        values.push(u128::try_from(c).map_err(|_| Error::Construction(format!("c_{j} = {c} < 0 for {f}")))?);
    }
    let table = CrossEffectTable { functor: f.to_string(), offset: dims[0] as u128, values };
    for (k, &d) in dims.iter().enumerate() {
        if recombine(&table, k)? != d as u128 {
            return Err(Error::Construction(format!("cross effects of {f} do not recombine at k = {k}")));
        }
    }
    Ok(table)
}

/// `F(0) + Σ_{j=1}^{k} C(k, j) c_j`.
pub fn recombine(t: &CrossEffectTable, k: usize) -> Result<u128> {
    (1..=k).try_fold(t.offset, |acc, j| {
        let term = binom(k as u64, j as u64)?.checked_mul(t.c(j)).ok_or_else(|| overflow("recombine"))?;
        acc.checked_add(term).ok_or_else(|| overflow("recombine"))
    })
}

/// Largest `j <= bound` with `c_j != 0`, or 0.
pub fn degree_of(f: &PolyFunctorSpec, bound: usize) -> Result<usize> {
    if bound == 0 {
        return Ok(0);
    }
    let t = cross_effect_dims(f, bound)?;
    Ok((1..=bound).rev().find(|&j| t.c(j) != 0).unwrap_or(0))
}

fn degree(f: &PolyFunctorSpec) -> Result<usize> {
    degree_of(f, f.degree_bound())
}

/// `F(A)` on the standard basis of `F(Z^k)`: words for tensor powers,
/// non-decreasing index tuples for symmetric powers, increasing ones for
/// exterior powers, all in lexicographic order.
pub fn matrix_action(f: &PolyFunctorSpec, a: &IntMatrix) -> Result<IntMatrix> {
    use PolyFunctorSpec::*;
    if !a.is_square() {
        return Err(Error::Dimension("matrix action needs a square matrix".into()));
    }
    let k = a.rows();
    match f {
        Identity => Ok(a.clone()),
        Constant => Ok(IntMatrix::identity(1)),
        TensorPower(n) => {
            let mut out = IntMatrix::identity(1);
            for _ in 0..*n {
                out = kronecker(&out, a)?;
            }
            Ok(out)
        }
        SymPower(n) => sym_action(a, *n),
        ExtPower(n) => {
            let subsets = index_tuples(k, *n, Tuples::Increasing);
            let s = subsets.len();
            let mut out = IntMatrix::zeros(s, s);
            for (c, cols) in subsets.iter().enumerate() {
                for (r, rows) in subsets.iter().enumerate() {
                    out.set(r, c, a.minor(rows, cols).det()?);
                }
            }
            Ok(out)
        }
        Linearization { .. } => Err(Error::Unsupported("matrix action of a linearization functor".into())),
        DirectSum(parts) => {
            let blocks = parts.iter().map(|g| matrix_action(g, a)).collect::<Result<Vec<_>>>()?;
            let n: usize = blocks.iter().map(IntMatrix::rows).sum();
            let mut out = IntMatrix::zeros(n, n);
            let mut off = 0;
            for b in &blocks {
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        out.set(off + i, off + j, b.get(i, j));
                    }
                }
                off += b.rows();
            }
            Ok(out)
        }
    }
}

/// `F(A)` reduced mod `p`.
pub fn matrix_action_fp(f: &PolyFunctorSpec, a: &IntMatrix, p: u64) -> Result<ExactMatrix> {
    Ok(matrix_action(f, a)?.to_exact(Ring::fp(p)?))
}

fn kronecker(x: &IntMatrix, y: &IntMatrix) -> Result<IntMatrix> {
    let (r, c) = (x.rows() * y.rows(), x.cols() * y.cols());
    let mut out = IntMatrix::zeros(r, c);
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            let xij = x.get(i, j);
            if xij == 0 {
                continue;
            }
            for u in 0..y.rows() {
                for v in 0..y.cols() {
                    let z = xij.checked_mul(y.get(u, v)).ok_or_else(|| overflow("kronecker"))?;
                    out.set(i * y.rows() + u, j * y.cols() + v, z);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Tuples {
    NonDecreasing,
    Increasing,
}

fn index_tuples(k: usize, n: usize, kind: Tuples) -> Vec<Vec<usize>> {
    fn go(k: usize, n: usize, start: usize, kind: Tuples, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            go(k, n, if kind == Tuples::Increasing { i + 1 } else { i }, kind, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, n, 0, kind, &mut Vec::new(), &mut out);
    out
}

// x_j ↦ Σ_i a_ij x_i, expanded monomial by monomial.
fn sym_action(a: &IntMatrix, n: usize) -> Result<IntMatrix> {
    let k = a.rows();
    let monos = index_tuples(k, n, Tuples::NonDecreasing);
    let index: HashMap<&[usize], usize> = monos.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let s = monos.len();
    let mut out = IntMatrix::zeros(s, s);
    for (c, cols) in monos.iter().enumerate() {
        // running product as a sparse polynomial keyed by sorted index tuple
        let mut poly: HashMap<Vec<usize>, i128> = HashMap::from([(Vec::new(), 1)]);
        for &j in cols {
            let mut next: HashMap<Vec<usize>, i128> = HashMap::new();
            for (mono, coef) in &poly {
                for i in 0..k {
                    let aij = a.get(i, j);
                    if aij == 0 {
                        continue;
                    }
                    let mut m = mono.clone();
                    let pos = m.partition_point(|&x| x <= i);
                    m.insert(pos, i);
                    let term = coef.checked_mul(aij).ok_or_else(|| overflow("sym power"))?;
                    let e = next.entry(m).or_insert(0);
                    *e = e.checked_add(term).ok_or_else(|| overflow("sym power"))?;
                }
            }
            poly = next;
        }
        for (mono, coef) in poly {
            out.set(index[mono.as_slice()], c, coef);
        }
    }
    Ok(out)
}

fn require_mod_p_hypotheses(f: &PolyFunctorSpec, p: u64) -> Result<()> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if degree(f)? as u64 >= p {
        return Err(Error::Hypothesis("degree ≥ p".into()));
    }
    Ok(())
}

/// Outcome of a single mod-`p` check; a failure carries the first offending entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub holds: bool,
    pub witness: Option<(usize, usize, u64)>,
}

fn zero_witness(m: &ExactMatrix) -> CheckOutcome {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if m.get(i, j) != 0 {
                return CheckOutcome { holds: false, witness: Some((i, j, m.get(i, j))) };
            }
        }
    }
    CheckOutcome { holds: true, witness: None }
}

/// `F(p A) ≡ 0 (mod p)` for `F` of degree `< p` with `F(0) = 0`.
pub fn check_p_alpha_vanishes(f: &PolyFunctorSpec, a: &IntMatrix, p: u64) -> Result<CheckOutcome> {
    require_mod_p_hypotheses(f, p)?;
    if dim_at(f, 0)? != 0 {
        return Err(Error::Hypothesis("F(0) ≠ 0".into()));
    }
    Ok(zero_witness(&matrix_action_fp(f, &a.scale(p as i128)?, p)?))
}

/// `F(A + p G) ≡ F(A) (mod p)` for `F` of degree `< p`.
pub fn check_mod_p_invariance(f: &PolyFunctorSpec, a: &IntMatrix, g: &IntMatrix, p: u64) -> Result<CheckOutcome> {
    require_mod_p_hypotheses(f, p)?;
    let lhs = matrix_action_fp(f, &a.add(&g.scale(p as i128)?)?, p)?;
    let rhs = matrix_action_fp(f, a, p)?;
    Ok(zero_witness(&lhs.sub(&rhs)?))
}

/// `dim F(Z^m) = F(0) + Σ_j C(m, j) c_j(F)` for `F` of degree at most `n`:
/// the dimension shadow of `Hom(proj_n^m, F) ≅ F(Z^m)`.
pub fn hom_dim_projectivity_identity(n: usize, m: usize, f: &PolyFunctorSpec) -> Result<bool> {
    let deg = degree(f)?;
    if deg > n {
        return Err(Error::Hypothesis(format!("degree {deg} exceeds {n}")));
    }
    let t = cross_effect_dims(f, m.max(n).max(1))?;
    Ok(dim_at(f, m)? == recombine(&t, m)?)
}

/// Expected `dim Hom(R ⊗ id^{⊗n}, G)`, read off the constructors.
pub fn declared_hom_target(n: usize, g: &PolyFunctorSpec) -> Result<u128> {
    use PolyFunctorSpec::*;
    Ok(match g {
        Identity => u128::from(n == 1),
        Constant => u128::from(n == 0),
        TensorPower(d) if *d == n => arith::factorial(n as u64).ok_or_else(|| overflow("n!"))?,
        SymPower(d) | ExtPower(d) if *d == n => 1,
        Linearization { m, n: d } if *d == n => (*m as u128).checked_pow(n as u32).ok_or_else(|| overflow("m^n"))?,
        TensorPower(d) | SymPower(d) | ExtPower(d) | Linearization { n: d, .. } if *d < n => 0,
        DirectSum(parts) => parts.iter().map(|h| declared_hom_target(n, h)).sum::<Result<u128>>()?,
        _ => return Err(Error::Hypothesis(format!("degree of {g} exceeds {n}"))),
    })
}

/// `c_n(G)` equals the declared Hom dimension.
pub fn cross_effect_hom_identity(n: usize, g: &PolyFunctorSpec) -> Result<bool> {
    let deg = degree(g)?;
    if deg > n {
        return Err(Error::Hypothesis(format!("degree {deg} exceeds {n}")));
    }
    if n == 0 {
        return Ok(true);
    }
    Ok(cross_effect_dims(g, n)?.c(n) == declared_hom_target(n, g)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct P0Bookkeeping {
    pub dim_m: u128,
    pub dim_l: u128,
}

/// Dimensions at `Z^k` of the uniserial middle summand `M` of the degree-`p`
/// linearization in one variable, and of its heart `L`:
/// `dim M = C(k+p, p) - 1 - Σ_{i=2}^{p-1} C(k+i-1, i)` and `dim L = dim M - 2k`.
pub fn structure_of_p0_bookkeeping(p: u64, k: usize) -> Result<P0Bookkeeping> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let k64 = k as u64;
    let total = binom(k64 + p, p)? as i128;
    let simples: i128 = (2..p)
        .map(|i| dim_at(&PolyFunctorSpec::SymPower(i as usize), k).map(|d| d as i128))
        .sum::<Result<i128>>()?;
    let dim_m = total - 1 - simples;
    let dim_l = dim_m - 2 * k as i128;
    if dim_m < 0 || dim_l < 0 {
        return Err(Error::Construction(format!("negative dimension at p = {p}, k = {k}")));
    }
    Ok(P0Bookkeeping { dim_m: dim_m as u128, dim_l: dim_l as u128 })
}

/// `Σ_{i=0}^{p-1} dim Sym^i(Z^k) = C(k+p-1, p-1)`.
pub fn hockey_stick_holds(p: u64, k: usize) -> Result<bool> {
    let lhs = (0..p as usize).map(|i| dim_at(&PolyFunctorSpec::SymPower(i), k)).sum::<Result<u128>>()?;
    Ok(lhs == binom(k as u64 + p - 1, p - 1)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorEnd {
    pub dim: usize,
    pub warning: Option<String>,
}

/// Dimension of the commutant of `{A^{⊗n}}` on `(F_p^k)^{⊗n}`, `A` running
/// over generators of the monoid of all `k × k` matrices: diagonal matrices
/// `diag(.., λ, ..)` for `λ = 0, 2, .., p-1`, then transvections `I + E_ij`.
pub fn tensor_end_dim(n: usize, k: usize, p: u64) -> Result<TensorEnd> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidParam("k must be positive".into()));
    }
    let size = k.checked_pow(n as u32).filter(|&s| s <= 4096).ok_or_else(|| {
        Error::BudgetExceeded(format!("{k}^{n} tensor coordinates"))
    })?;
    let words: Vec<Vec<usize>> = (0..size)
        .map(|mut w| {
            let mut v = vec![0; n];
            for x in v.iter_mut().rev() {
                *x = w % k;
                w /= k;
            }
            v
        })
        .collect();
    // diagonal generators act on basis words by scalars; X_uv survives iff they agree
    let mut lambdas: Vec<u64> = vec![0];
    lambdas.extend(2..p);
    let weight = |w: &[usize], i: usize, l: u64| {
        let c = w.iter().filter(|&&x| x == i).count() as u64;
        arith::pow_mod(l, c, p)
    };
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    for u in 0..size {
        for v in 0..size {
            if (0..k).all(|i| lambdas.iter().all(|&l| weight(&words[u], i, l) == weight(&words[v], i, l))) {
                unknowns.push((u, v));
            }
        }
    }
    // solutions: sparse matrices, initially one per surviving entry
    let mut sol: Vec<HashMap<(usize, usize), u64>> =
        unknowns.iter().map(|&uv| HashMap::from([(uv, 1u64)])).collect();
    for i in 0..k {
        for j in 0..k {
            if i == j || sol.is_empty() {
                continue;
            }
            let t = transvection_power(&words, k, i, j);
            let residuals: Vec<HashMap<usize, u64>> = sol.iter().map(|x| commutator(x, &t, size, p)).collect();
            let ker = sparse_kernel(&residuals, p);
            sol = ker
                .iter()
                .map(|combo| {
                    let mut m: HashMap<(usize, usize), u64> = HashMap::new();
                    for &(idx, c) in combo {
                        for (&uv, &x) in &sol[idx] {
                            let e = m.entry(uv).or_insert(0);
                            *e = add_mod(*e, mul_mod(c, x, p), p);
                        }
                    }
                    m.retain(|_, x| *x != 0);
                    m
                })
                .collect();
        }
    }
    let warning = (k < n).then(|| format!("pre-stable range: k = {k} < n = {n}"));
    Ok(TensorEnd { dim: sol.len(), warning })
}

/// Nonzero entries of `(I + E_ij)^{⊗n}` as `(row, col)` pairs (all entries are 1).
fn transvection_power(words: &[Vec<usize>], k: usize, i: usize, j: usize) -> Vec<(usize, usize)> {
    let index = |w: &[usize]| w.iter().fold(0, |acc, &x| acc * k + x);
    let mut out = Vec::new();
    for w in words {
        // column w: each letter j may stay j or become i
        let js: Vec<usize> = (0..w.len()).filter(|&t| w[t] == j).collect();
        for mask in 0..1usize << js.len() {
            let mut r = w.clone();
            for (b, &t) in js.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    r[t] = i;
                }
            }
            out.push((index(&r), index(w)));
        }
    }
    out
}

// X T - T X as a sparse vector over flattened (row, col).
fn commutator(x: &HashMap<(usize, usize), u64>, t: &[(usize, usize)], size: usize, p: u64) -> HashMap<usize, u64> {
    let mut by_row: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut by_col: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(r, c) in t {
        by_row.entry(r).or_default().push(c);
        by_col.entry(c).or_default().push(r);
    }
    let mut out: HashMap<usize, u64> = HashMap::new();
    for (&(u, v), &val) in x {
        for &w in by_row.get(&v).into_iter().flatten() {
            let e = out.entry(u * size + w).or_insert(0);
            *e = add_mod(*e, val, p);
        }
        for &r in by_col.get(&u).into_iter().flatten() {
            let e = out.entry(r * size + v).or_insert(0);
            *e = sub_mod(*e, val, p);
        }
    }
    out.retain(|_, x| *x != 0);
    out
}

/// Kernel of the map `e_c ↦ cols[c]`, as sparse combinations of column indices.
fn sparse_kernel(cols: &[HashMap<usize, u64>], p: u64) -> Vec<Vec<(usize, u64)>> {
    type Sparse = HashMap<usize, u64>;
    // echelon rows: (pivot, reduced vector, combination)
    let mut pivots: Vec<(usize, Sparse, Sparse)> = Vec::new();
    let mut kernel = Vec::new();
    for (c, col) in cols.iter().enumerate() {
        let mut v = col.clone();
        let mut combo: HashMap<usize, u64> = HashMap::from([(c, 1)]);
        for (piv, row, rc) in &pivots {
            let Some(&f) = v.get(piv) else { continue };
            for (&i, &x) in row {
                let e = v.entry(i).or_insert(0);
                *e = sub_mod(*e, mul_mod(f, x, p), p);
            }
            for (&i, &x) in rc {
                let e = combo.entry(i).or_insert(0);
                *e = sub_mod(*e, mul_mod(f, x, p), p);
            }
            v.retain(|_, x| *x != 0);
        }
        match v.keys().min().copied() {
            None => {
                combo.retain(|_, x| *x != 0);
                let mut k: Vec<(usize, u64)> = combo.into_iter().collect();
                k.sort_unstable();
                kernel.push(k);
            }
            Some(piv) => {
                let inv = inv_mod(v[&piv], p).expect("field");
                for x in v.values_mut() {
                    *x = mul_mod(*x, inv, p);
                }
                for x in combo.values_mut() {
                    *x = mul_mod(*x, inv, p);
                }
                pivots.push((piv, v, combo));
            }
        }
    }
    kernel
}

/// Functors of degree `1..=p-1` with `F(0) = 0` used by the randomized checks.
pub fn welldefined_family(p: u64) -> Vec<PolyFunctorSpec> {
    use PolyFunctorSpec::*;
    let top = p as usize - 1;
    let mut out = vec![Identity];
    for n in 1..=top {
        out.extend([TensorPower(n), SymPower(n), ExtPower(n)]);
    }
    out.push(DirectSum(vec![SymPower(top), ExtPower(top.min(2)), Identity]));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WelldefinedOutcome {
    pub p: u64,
    pub trials: usize,
    pub checks: usize,
    pub failures: usize,
    /// Functor, `A`, `G` and the offending entry of the first failure.
    pub witness: Option<String>,
}

const ACTION_DIM_CAP: u128 = 400;

fn random_int_matrix<R: Rng>(rng: &mut R, k: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_rows(
        &(0..k).map(|_| (0..k).map(|_| rng.gen_range(-bound..=bound)).collect()).collect::<Vec<_>>(),
    )
    .expect("square")
}

/// `trials` seeded rounds; each round draws `k ∈ 1..=3`, integer `A`, `G` and
/// runs both mod-`p` checks on every functor of [`welldefined_family`], on
/// the leading `k' × k'` blocks with `dim F(Z^k') <= 400`.
pub fn verify_welldefined(p: u64, trials: usize, seed: u64, exec: Exec) -> Result<WelldefinedOutcome> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let family = welldefined_family(p);
    let rounds = par::map_range(exec, trials, |t| -> Result<(usize, Option<String>)> {
        let mut rng = ChaCha8Rng::seed_from_u64(par::trial_seed(seed, t));
        let k = rng.gen_range(1..=3);
        let a = random_int_matrix(&mut rng, k, p as i64);
        let g = random_int_matrix(&mut rng, k, p as i64);
        let mut checks = 0;
        for f in &family {
            // leading square blocks keep F(Z^k) below the size cap
            let mut kf = k;
            while kf > 1 && dim_at(f, kf)? > ACTION_DIM_CAP {
                kf -= 1;
            }
            let idx: Vec<usize> = (0..kf).collect();
            let (a, g) = (a.minor(&idx, &idx), g.minor(&idx, &idx));
            for (name, out) in [
                ("p-alpha", check_p_alpha_vanishes(f, &a, p)?),
                ("mod-p", check_mod_p_invariance(f, &a, &g, p)?),
            ] {
                checks += 1;
                if !out.holds {
                    return Ok((checks, Some(format!("{name} {f} A={a:?} G={g:?} entry={:?}", out.witness))));
                }
            }
        }
        Ok((checks, None))
    });
    let mut out = WelldefinedOutcome { p, trials, checks: 0, failures: 0, witness: None };
    for r in rounds {
        let (c, w) = r?;
        out.checks += c;
        if let Some(w) = w {
            out.failures += 1;
            out.witness.get_or_insert(w);
        }
    }
    Ok(out)
}
