use gol_core::algebra::{
    cartan_matrix, check_algebra, ext1_dim, radical_series, syzygy, LeftModule,
};
use gol_core::brauer_tree::{predict_projectives, predicted_cartan, to_algebra, to_algebra_over, BrauerTree, Exceptional};
use gol_core::recollement::{recollement_check, IdempotentSelection};
use proptest::prelude::*;

/// A planar tree from parent choices and per-vertex rotations of the edge order.
fn tree(parents: &[usize], rotations: &[usize], exceptional: Option<(usize, u32)>) -> BrauerTree {
    let n = parents.len();
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (parents[i] % (i + 1), i + 1)).collect();
    let mut cyclic: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (e, &(u, v)) in edges.iter().enumerate() {
        cyclic[u].push(e);
        cyclic[v].push(e);
    }
    for (v, c) in cyclic.iter_mut().enumerate() {
        if !c.is_empty() {
            let r = rotations[v] % c.len();
            c.rotate_left(r);
            if rotations[v] % 2 == 1 {
                c.reverse();
            }
        }
    }
    let exc = exceptional.map(|(v, m)| Exceptional { vertex: v % (n + 1), multiplicity: m });
    BrauerTree::new(n + 1, edges, cyclic, exc).unwrap()
}

fn arb_tree() -> impl Strategy<Value = BrauerTree> {
    (1..5usize)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(any::<usize>(), n),
                prop::collection::vec(any::<usize>(), n + 1),
                prop::option::of((any::<usize>(), 2..4u32)),
            )
        })
        .prop_map(|(parents, rot, exc)| tree(&parents, &rot, exc))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tree_algebras_match_predictions(t in arb_tree()) {
        let a = to_algebra(&t).unwrap();
        prop_assert!(check_algebra(&a).all_pass());
        let c = cartan_matrix(&a).unwrap();
        prop_assert_eq!(&c, &predicted_cartan(&t));
        // symmetric Cartan matrix and top ≅ socle
        for (i, row) in c.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                prop_assert_eq!(x, c[j][i]);
            }
        }
        let preds = predict_projectives(&t);
        let mut total = 0;
        for (e, pred) in preds.iter().enumerate() {
            let proj = LeftModule::projective(&a, e).unwrap();
            let series = radical_series(&a, &proj).unwrap();
            prop_assert_eq!(&series.layers, &pred.layers(t.edge_count()));
            prop_assert_eq!(series.layers.first(), series.layers.last());
            prop_assert_eq!(c[e].iter().sum::<usize>(), proj.dim());
            total += proj.dim();
            // Ext^1 reads off the second radical layer
            for j in 0..t.edge_count() {
                let second = series.layers.get(1).map_or(0, |l| l[j]);
                prop_assert_eq!(ext1_dim(&a, e, j).unwrap(), second);
            }
        }
        prop_assert_eq!(total, a.dim());
    }

    #[test]
    fn syzygy_dimension(t in arb_tree(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let a = to_algebra_over(&t, p).unwrap();
        for e in 0..t.edge_count() {
            let mut m = LeftModule::projective(&a, e).unwrap();
            // radicals and their syzygies, a few steps deep
            m = m.submodule(&m.radical_image(&a, &gol_core::exactring::Subspace::full(p, m.dim()))).unwrap();
            for _ in 0..3 {
                if m.is_zero() {
                    break;
                }
                let top = radical_series(&a, &m).unwrap().top();
                let cover: usize = top.iter().enumerate().map(|(i, &k)| k * LeftModule::projective(&a, i).unwrap().dim()).sum();
                let next = syzygy(&a, &m).unwrap();
                prop_assert_eq!(next.dim(), cover - m.dim());
                m = next;
            }
        }
    }

    #[test]
    fn recollement_counts_add_up(n in 2..7usize, mask in 1..63u32) {
        let a = to_algebra(&BrauerTree::stem(n).unwrap()).unwrap();
        let verts: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        prop_assume!(!verts.is_empty() && verts.len() < n);
        let r = recollement_check(&a, &IdempotentSelection::new(&a, verts).unwrap()).unwrap();
        prop_assert!(r.all_pass());
        prop_assert_eq!(r.vertices, r.corner_vertices + r.quotient_simples);
    }
}

#[test]
fn stem_dimensions() {
    for n in 1..=8 {
        assert_eq!(to_algebra(&BrauerTree::stem(n).unwrap()).unwrap().dim(), 4 * n - 2);
    }
}
