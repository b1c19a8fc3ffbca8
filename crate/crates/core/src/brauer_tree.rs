//! Brauer trees, their walk-basis algebras, and the projective layer
//! structure the tree predicts.
//!
//! Edges are the simples. At a vertex `v` with cyclic edge order `σ_v` and
//! multiplicity `μ_v`, put `L_v = μ_v |E_v|`. The projective `P_e` has top and
//! socle `S_e`, and between them one uniserial strand per endpoint `v` of `e`
//! whose `i`-th factor is `S_{σ_v^i(e)}` for `1 <= i < L_v`.

use serde::{Deserialize, Serialize};

use crate::algebra::{check_algebra, BasisAlgebra};
use crate::exactring::arith;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exceptional {
    pub vertex: usize,
    pub multiplicity: u32,
}

/// A planar tree with an optional exceptional vertex.
///
/// `cyclic[v]` lists the edges at `v` in their cyclic order; `σ_v` sends each
/// entry to the next one, wrapping around.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerTree {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    cyclic: Vec<Vec<usize>>,
    exceptional: Option<Exceptional>,
}

/// JSON form of a [`BrauerTree`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDocument {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub cyclic: Vec<Vec<usize>>,
    #[serde(default)]
    pub exceptional: Option<Exceptional>,
}

impl BrauerTree {
    pub fn new(
        vertices: usize,
        edges: Vec<(usize, usize)>,
        cyclic: Vec<Vec<usize>>,
        exceptional: Option<Exceptional>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidTree(m));
        if edges.is_empty() {
            return bad("a tree needs at least one edge".into());
        }
        if vertices != edges.len() + 1 {
            return bad(format!("{} edges on {vertices} vertices cannot form a tree", edges.len()));
        }
        if cyclic.len() != vertices {
            return bad("one cyclic order per vertex is required".into());
        }
        let mut seen = std::collections::BTreeSet::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices || v >= vertices {
                return bad(format!("edge {i} has an endpoint out of range"));
            }
            if u == v {
                return bad(format!("edge {i} is a loop"));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return bad(format!("edge {i} is a multiple edge"));
            }
        }
        // n - 1 distinct edges on n vertices: a tree iff connected
        let mut comp: Vec<usize> = (0..vertices).collect();
        fn root(c: &mut [usize], mut x: usize) -> usize {
            while c[x] != x {
                c[x] = c[c[x]];
                x = c[x];
            }
            x
        }
        for &(u, v) in &edges {
            let (a, b) = (root(&mut comp, u), root(&mut comp, v));
            if a == b {
                return bad("the graph has a cycle".into());
            }
            comp[a] = b;
        }
        for (v, order) in cyclic.iter().enumerate() {
            let mut incident: Vec<usize> =
                (0..edges.len()).filter(|&e| edges[e].0 == v || edges[e].1 == v).collect();
            let mut listed = order.clone();
            incident.sort_unstable();
            listed.sort_unstable();
            if incident != listed {
                return bad(format!("cyclic order at vertex {v} is not a cycle on its edges"));
            }
        }
        let exceptional = match exceptional {
            Some(x) if x.vertex >= vertices => return bad("exceptional vertex out of range".into()),
            Some(x) if x.multiplicity == 0 => return bad("multiplicity must be at least 1".into()),
            Some(x) if x.multiplicity == 1 => None,
            other => other,
        };
        Ok(BrauerTree { vertices, edges, cyclic, exceptional })
    }

    /// The path with `n` edges; edge `i` joins vertices `i` and `i + 1`.
    pub fn stem(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidTree("a stem needs at least one edge".into()));
        }
        let edges = (0..n).map(|i| (i, i + 1)).collect();
        let cyclic = (0..=n)
            .map(|v| (v.saturating_sub(1)..=v.min(n - 1)).collect())
            .collect();
        Self::new(n + 1, edges, cyclic, None)
    }

    /// `k` edges at a common center (vertex 0), in order `0..k`.
    pub fn star(k: usize, exceptional: Option<Exceptional>) -> Result<Self> {
        let edges = (0..k).map(|i| (0, i + 1)).collect();
        let mut cyclic = vec![(0..k).collect::<Vec<_>>()];
        cyclic.extend((0..k).map(|i| vec![i]));
        Self::new(k + 1, edges, cyclic, exceptional)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn exceptional(&self) -> Option<Exceptional> {
        self.exceptional
    }

    pub fn multiplicity(&self, v: usize) -> u32 {
        match self.exceptional {
            Some(x) if x.vertex == v => x.multiplicity,
            _ => 1,
        }
    }

    /// `L_v = μ_v |E_v|`, the length of the full cycle around `v`.
    pub fn cycle_length(&self, v: usize) -> usize {
        self.multiplicity(v) as usize * self.cyclic[v].len()
    }

    /// `σ_v^steps(e)`.
    pub fn sigma(&self, v: usize, e: usize, steps: usize) -> usize {
        let order = &self.cyclic[v];
        let pos = order.iter().position(|&x| x == e).expect("edge incident to vertex");
        order[(pos + steps) % order.len()]
    }

    fn ends(&self, e: usize) -> [usize; 2] {
        let (u, v) = self.edges[e];
        [u, v]
    }

    pub fn to_document(&self) -> TreeDocument {
        TreeDocument {
            vertices: self.vertices,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            cyclic: self.cyclic.clone(),
            exceptional: self.exceptional,
        }
    }

    pub fn from_document(doc: TreeDocument) -> Result<Self> {
        Self::new(doc.vertices, doc.edges.into_iter().map(|[u, v]| (u, v)).collect(), doc.cyclic, doc.exceptional)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_document())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_document(serde_json::from_str(s)?)
    }
}

/// Predicted structure of one projective: top, uniserial strands, socle.
/// Simples are indexed by edge (for Brauer trees) or vertex (otherwise).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectivePrediction {
    pub top: usize,
    pub strands: Vec<Vec<usize>>,
    pub socle: Option<usize>,
}

impl ProjectivePrediction {
    pub fn strand_lengths(&self) -> Vec<usize> {
        self.strands.iter().map(Vec::len).collect()
    }

    pub fn composition_length(&self) -> usize {
        1 + self.strands.iter().map(Vec::len).sum::<usize>() + usize::from(self.socle.is_some())
    }

    /// Radical layers as multiplicity vectors over `simples` simples.
    pub fn layers(&self, simples: usize) -> Vec<Vec<usize>> {
        let depth = self.strands.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![vec![0; simples]; 1 + depth + usize::from(self.socle.is_some())];
        out[0][self.top] += 1;
        for s in &self.strands {
            for (i, &f) in s.iter().enumerate() {
                out[i + 1][f] += 1;
            }
        }
        if let Some(s) = self.socle {
            out[depth + 1][s] += 1;
        }
        out
    }

    pub fn factor_counts(&self, simples: usize) -> Vec<usize> {
        let mut c = vec![0; simples];
        for l in self.layers(simples) {
            for (o, x) in c.iter_mut().zip(l) {
                *o += x;
            }
        }
        c
    }
}

/// One prediction per edge, strands ordered as the edge's endpoints.
pub fn predict_projectives(t: &BrauerTree) -> Vec<ProjectivePrediction> {
    (0..t.edge_count())
        .map(|e| ProjectivePrediction {
            top: e,
            strands: t
                .ends(e)
                .iter()
                .map(|&v| (1..t.cycle_length(v)).map(|i| t.sigma(v, e, i)).collect())
                .collect(),
            socle: Some(e),
        })
        .collect()
}

pub fn predicted_cartan(t: &BrauerTree) -> Vec<Vec<usize>> {
    cartan_of(&predict_projectives(t), t.edge_count())
}

pub fn cartan_of(preds: &[ProjectivePrediction], simples: usize) -> Vec<Vec<usize>> {
    preds.iter().map(|p| p.factor_counts(simples)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BasisElem {
    Idem(usize),
    /// Walk of length `l` around `v` whose right end is `e`.
    Walk { e: usize, v: usize, l: usize },
    Socle(usize),
}

/// The walk-basis algebra of the tree.
///
/// Basis: one idempotent per edge (indices `0..n`, the vertex idempotents),
/// then for each edge its walks around both endpoints and its socle element.
/// All non-idempotent basis elements are radical generators. The structure
/// constants are 0/1, so the algebra is defined over every prime; this one is
/// over `F_2`.
pub fn to_algebra(t: &BrauerTree) -> Result<BasisAlgebra> {
    to_algebra_over(t, 2)
}

/// As [`to_algebra`], over `F_p`.
pub fn to_algebra_over(t: &BrauerTree, p: u64) -> Result<BasisAlgebra> {
    let n = t.edge_count();
    let mut basis: Vec<BasisElem> = (0..n).map(BasisElem::Idem).collect();
    for e in 0..n {
        for v in t.ends(e) {
            basis.extend((1..t.cycle_length(v)).map(|l| BasisElem::Walk { e, v, l }));
        }
        basis.push(BasisElem::Socle(e));
    }
    let d = basis.len();
    let index = |x: BasisElem| basis.iter().position(|&y| y == x).expect("basis element");
    // left and right ends: x = e_left x e_right
    let ends = |x: BasisElem| match x {
        BasisElem::Idem(e) | BasisElem::Socle(e) => (e, e),
        BasisElem::Walk { e, v, l } => (t.sigma(v, e, l), e),
    };
    let product = |x: BasisElem, y: BasisElem| -> Option<BasisElem> {
        if ends(x).1 != ends(y).0 {
            return None;
        }
        match (x, y) {
            (BasisElem::Idem(_), _) => Some(y),
            (_, BasisElem::Idem(_)) => Some(x),
            (BasisElem::Walk { v: u, l: k, .. }, BasisElem::Walk { e, v, l }) if u == v => {
                let total = l + k;
                let full = t.cycle_length(v);
                match total.cmp(&full) {
                    std::cmp::Ordering::Less => Some(BasisElem::Walk { e, v, l: total }),
                    std::cmp::Ordering::Equal => Some(BasisElem::Socle(e)),
                    std::cmp::Ordering::Greater => None,
                }
            }
            _ => None,
        }
    };
    let mut table = vec![0u64; d * d * d];
    for (i, &x) in basis.iter().enumerate() {
        for (j, &y) in basis.iter().enumerate() {
            if let Some(z) = product(x, y) {
                table[(i * d + j) * d + index(z)] = 1;
            }
        }
    }
    let unit_vec = |idx: usize| {
        let mut v = vec![0u64; d];
        v[idx] = 1;
        v
    };
    let mut unit = vec![0u64; d];
    unit[..n].fill(1);
    let vertices = (0..n).map(unit_vec).collect();
    let radical_generators = (n..d).map(unit_vec).collect();
    let a = BasisAlgebra::from_flat(p, d, table, unit, vertices, radical_generators)?;
    let report = check_algebra(&a);
    if !report.all_pass() {
        return Err(Error::Construction(report.failures.join("; ")));
    }
    Ok(a)
}

/// Projectives of the basic algebra of the degree-`p` Schur algebra: a stem
/// whose last projective is cut down to `[S_p; S_{p-1}]`.
pub fn schur_basic_prediction(p: u64) -> Result<Vec<ProjectivePrediction>> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::InvalidParam(format!("p = {p}; need p >= 5")));
    }
    let k = p as usize;
    let mut out: Vec<ProjectivePrediction> = predict_projectives(&BrauerTree::stem(k - 1)?)
        .into_iter()
        .map(|mut pr| {
            pr.strands.retain(|s| !s.is_empty());
            pr
        })
        .collect();
    // the last stem projective also meets the new vertex
    out[k - 2].strands.push(vec![k - 1]);
    out.push(ProjectivePrediction { top: k - 1, strands: vec![vec![k - 2]], socle: None });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cartan_matrix, radical_series, LeftModule};

    fn tridiagonal(n: usize) -> Vec<Vec<usize>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 2 } else { usize::from(i.abs_diff(j) == 1) }).collect())
            .collect()
    }

    #[test]
    fn stem_shapes() {
        let t = BrauerTree::stem(5).unwrap();
        assert_eq!((t.edge_count(), t.vertex_count()), (5, 6));
        assert_eq!(BrauerTree::stem(4).unwrap().edge_count(), 4);
        assert!(BrauerTree::stem(0).is_err());
        assert_eq!(predicted_cartan(&BrauerTree::stem(1).unwrap()), vec![vec![2]]);
        assert_eq!(predicted_cartan(&t), tridiagonal(5));
    }

    #[test]
    fn layer_predictions() {
        let p = predict_projectives(&BrauerTree::stem(2).unwrap());
        assert_eq!(p[0].layers(2), vec![vec![1, 0], vec![0, 1], vec![1, 0]]);
        let p = predict_projectives(&BrauerTree::stem(3).unwrap());
        assert_eq!(p[1].strands, vec![vec![0], vec![2]]);
        assert_eq!(p[1].composition_length(), 4);
        let ex = BrauerTree::star(1, Some(Exceptional { vertex: 0, multiplicity: 2 })).unwrap();
        let p = predict_projectives(&ex);
        assert_eq!(p[0].strand_lengths(), vec![1, 0]);
        assert_eq!(p[0].layers(1), vec![vec![1], vec![1], vec![1]]);
    }

    #[test]
    fn star_cartan() {
        let t = BrauerTree::star(3, None).unwrap();
        let c = predicted_cartan(&t);
        assert_eq!(c, vec![vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]]);
        assert_eq!(cartan_matrix(&to_algebra(&t).unwrap()).unwrap(), c);
    }

    #[test]
    fn algebra_round_trip() {
        for n in 1..=5 {
            let t = BrauerTree::stem(n).unwrap();
            let a = to_algebra(&t).unwrap();
            assert_eq!(a.dim(), if n == 1 { 2 } else { 4 * n - 2 });
            for (e, pr) in predict_projectives(&t).iter().enumerate() {
                let s = radical_series(&a, &LeftModule::projective(&a, e).unwrap()).unwrap();
                assert_eq!(s.layers, pr.layers(n));
            }
        }
        let ex = BrauerTree::star(2, Some(Exceptional { vertex: 0, multiplicity: 3 })).unwrap();
        let a = to_algebra(&ex).unwrap();
        assert_eq!(cartan_matrix(&a).unwrap(), predicted_cartan(&ex));
    }

    #[test]
    fn leaf_projective_of_stem_two() {
        let a = to_algebra(&BrauerTree::stem(2).unwrap()).unwrap();
        let s = radical_series(&a, &LeftModule::projective(&a, 0).unwrap()).unwrap();
        assert_eq!(s.dims, vec![3, 2, 1, 0]);
    }

    #[test]
    fn schur_prediction() {
        let pr = schur_basic_prediction(5).unwrap();
        let c = cartan_of(&pr, 5);
        assert_eq!(pr.iter().map(ProjectivePrediction::composition_length).sum::<usize>(), 17);
        assert_eq!(c[4][4], 1);
        assert_eq!(c[0][0], 2);
        assert_eq!(pr[4].layers(5), vec![vec![0, 0, 0, 0, 1], vec![0, 0, 0, 1, 0]]);
        assert!(schur_basic_prediction(3).is_err());
    }

    #[test]
    fn invalid_trees() {
        assert!(BrauerTree::new(3, vec![(0, 1), (0, 1)], vec![vec![0, 1], vec![0, 1], vec![]], None).is_err());
        assert!(BrauerTree::new(3, vec![(0, 1), (1, 2)], vec![vec![0], vec![0], vec![1]], None).is_err());
        assert!(BrauerTree::new(2, vec![(0, 0)], vec![vec![0], vec![]], None).is_err());
        let t = BrauerTree::star(2, Some(Exceptional { vertex: 0, multiplicity: 1 })).unwrap();
        assert_eq!(t.exceptional(), None);
    }

    #[test]
    fn json_round_trip() {
        let t = BrauerTree::star(3, Some(Exceptional { vertex: 0, multiplicity: 2 })).unwrap();
        let s = t.to_json().unwrap();
        assert_eq!(BrauerTree::from_json(&s).unwrap(), t);
        let stem = BrauerTree::from_json(r#"{"vertices":3,"edges":[[0,1],[1,2]],"cyclic":[[0],[0,1],[1]]}"#).unwrap();
        assert_eq!(stem, BrauerTree::stem(2).unwrap());
    }
}
