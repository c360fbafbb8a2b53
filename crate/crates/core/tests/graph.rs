mod common;

use common::*;
use itertools::Itertools;
use pep2gi::{export_unweighted, refine, wdg_iso, Field, MatrixFq, Permutation, WeightedDigraph};
use rand::Rng;

fn random_digraph(rng: &mut impl Rng, f: &Field, n: usize, density: f64) -> WeightedDigraph {
    let q = f.order() as u64;
    let rows: Vec<Vec<u64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| if rng.gen_bool(density) { rng.gen_range(1..q) } else { 0 })
                .collect()
        })
        .collect();
    WeightedDigraph::new(MatrixFq::from_ints(f, &rows).unwrap()).unwrap()
}

/// Moves one nonzero weight to a zero position, keeping the weight multiset.
fn perturb(rng: &mut impl Rng, g: &WeightedDigraph) -> WeightedDigraph {
    let n = g.order();
    let mut m = g.adjacency().clone();
    let cells: Vec<(usize, usize)> = (0..n).cartesian_product(0..n).collect();
    let full: Vec<_> = cells.iter().filter(|&&(i, j)| !m.get(i, j).is_zero()).collect();
    let empty: Vec<_> = cells.iter().filter(|&&(i, j)| m.get(i, j).is_zero()).collect();
    if full.is_empty() || empty.is_empty() {
        return g.clone();
    }
    let &&(i, j) = &full[rng.gen_range(0..full.len())];
    let &&(k, l) = &empty[rng.gen_range(0..empty.len())];
    let w = m.get(i, j);
    m.set(i, j, m.get(k, l));
    m.set(k, l, w);
    WeightedDigraph::new(m).unwrap()
}

fn exhaustive_iso(a: &WeightedDigraph, b: &WeightedDigraph) -> Option<Permutation> {
    let n = a.order();
    (0..n)
        .permutations(n)
        .map(|img| Permutation::new(img).unwrap())
        .find(|p| a.relabel(p).unwrap() == *b)
}

#[test]
fn solver_agrees_with_exhaustive_search_for_small_graphs() {
    let f = field(3);
    let mut rng = rng(11);
    for trial in 0..600 {
        let n = 1 + trial % 5;
        let a = random_digraph(&mut rng, &f, n, 0.4);
        let b = match trial % 3 {
            0 => a.relabel(&random_perm(&mut rng, n)).unwrap(),
            1 => perturb(&mut rng, &a),
            _ => random_digraph(&mut rng, &f, n, 0.4),
        };
        let found = wdg_iso(&a, &b);
        assert_eq!(found.is_some(), exhaustive_iso(&a, &b).is_some(), "{a:?} vs {b:?}");
        if let Some(p) = found {
            assert_eq!(a.relabel(&p).unwrap(), b);
        }
    }
}

#[test]
fn solver_handles_highly_symmetric_graphs() {
    let f = field(5);
    // complete digraph with constant weights, and the identity, at n = 9
    let n = 9;
    let rows: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i != j)).collect()).collect();
    let k = WeightedDigraph::new(MatrixFq::from_ints(&f, &rows).unwrap()).unwrap();
    assert!(wdg_iso(&k, &k).is_some());
    let id = WeightedDigraph::new(MatrixFq::identity(&f, n)).unwrap();
    assert!(wdg_iso(&id, &id).is_some());
    assert!(wdg_iso(&k, &id).is_none());
    // two directed 6-cycles vs one directed 12-cycle: refinement alone cannot tell
    let cycle = |lens: &[usize]| {
        let total: usize = lens.iter().sum();
        let mut rows = vec![vec![0u64; total]; total];
        let mut start = 0;
        for &l in lens {
            for i in 0..l {
                rows[start + i][start + (i + 1) % l] = 1;
            }
            start += l;
        }
        WeightedDigraph::new(MatrixFq::from_ints(&f, &rows).unwrap()).unwrap()
    };
    assert!(wdg_iso(&cycle(&[6, 6]), &cycle(&[12])).is_none());
    let mut rng = rng(3);
    let c = cycle(&[4, 4, 4]);
    let p = random_perm(&mut rng, 12);
    assert!(wdg_iso(&c, &c.relabel(&p).unwrap()).is_some());
}

#[test]
fn refinement_histograms_are_relabeling_invariant() {
    let mut rng = rng(5);
    for q in [3, 5, 9] {
        let f = field(q);
        for _ in 0..50 {
            let n = rng.gen_range(1..9);
            let a = random_digraph(&mut rng, &f, n, 0.3);
            let b = a.relabel(&random_perm(&mut rng, n)).unwrap();
            let mut h1 = refine(&a, None).histogram();
            let mut h2 = refine(&b, None).histogram();
            h1.sort_unstable();
            h2.sort_unstable();
            assert_eq!(h1, h2);
        }
    }
}

#[test]
fn refinement_is_equitable() {
    let mut rng = rng(6);
    let f = field(5);
    for _ in 0..50 {
        let n = rng.gen_range(1..9);
        let a = random_digraph(&mut rng, &f, n, 0.3);
        let st = refine(&a, None);
        assert!(st.stable);
        let adj = a.adjacency();
        let sig = |v: usize| {
            let mut out: Vec<_> = (0..n).filter(|&u| u != v).map(|u| (adj.get(v, u), st.colors[u])).collect();
            let mut inc: Vec<_> = (0..n).filter(|&u| u != v).map(|u| (adj.get(u, v), st.colors[u])).collect();
            out.sort();
            inc.sort();
            (adj.get(v, v), out, inc)
        };
        for u in 0..n {
            for v in 0..n {
                if st.colors[u] == st.colors[v] {
                    assert_eq!(sig(u), sig(v));
                }
            }
        }
    }
}

#[test]
fn export_preserves_and_reflects_isomorphism() {
    let mut rng = rng(21);
    for trial in 0..60 {
        let q = if trial % 2 == 0 { 3 } else { 5 };
        let f = field(q);
        let n = rng.gen_range(1..6);
        let a = random_digraph(&mut rng, &f, n, 0.35);
        let b = if trial % 3 == 0 {
            perturb(&mut rng, &a)
        } else {
            a.relabel(&random_perm(&mut rng, n)).unwrap()
        };
        let weighted = wdg_iso(&a, &b).is_some();
        let plain = plain_graphs_isomorphic(&export_unweighted(&a), &export_unweighted(&b));
        assert_eq!(weighted, plain, "{a:?} vs {b:?}");
    }
}

#[test]
fn export_separates_high_bit_weights_over_large_fields() {
    // single arcs of weight 8 and 16 over F_27 use only high bit layers
    let f = field(27);
    let arc = |w: u64| {
        WeightedDigraph::new(MatrixFq::from_ints(&f, &[vec![0, w], vec![0, 0]]).unwrap()).unwrap()
    };
    assert!(!plain_graphs_isomorphic(&export_unweighted(&arc(8)), &export_unweighted(&arc(16))));
    assert!(plain_graphs_isomorphic(&export_unweighted(&arc(8)), &export_unweighted(&arc(8))));
}
