#![allow(dead_code)]

use pep2gi::{Field, FieldElement, LinearCode, MatrixFq, Permutation, PlainGraph, StructureParams};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(q: u64) -> Field {
    Field::of_order(q).unwrap()
}

pub fn random_matrix(rng: &mut impl Rng, f: &Field, rows: usize, cols: usize) -> MatrixFq {
    let q = f.order() as u64;
    let data: Vec<Vec<u64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(0..q)).collect())
        .collect();
    if rows == 0 {
        return MatrixFq::zeros(f, 0, cols);
    }
    MatrixFq::from_ints(f, &data).unwrap()
}

/// Random code of exactly dimension `k` (resamples rank-deficient draws).
pub fn random_code(rng: &mut impl Rng, f: &Field, n: usize, k: usize) -> LinearCode {
    loop {
        let c = LinearCode::new(random_matrix(rng, f, k.max(1), n)).unwrap();
        if k == 0 {
            return LinearCode::zero(f, n);
        }
        if c.dim() == k {
            return c;
        }
    }
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Permutation {
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(rng);
    Permutation::new(image).unwrap()
}

pub fn random_params(rng: &mut impl Rng, f: &Field, n: usize) -> StructureParams {
    loop {
        let a = f.element(rng.gen_range(1..f.order() as u64)).unwrap();
        let b = f.element(rng.gen_range(0..f.order() as u64)).unwrap();
        if let Ok(p) = StructureParams::new(f, a, b, n) {
            return p;
        }
    }
}

pub fn random_invertible(rng: &mut impl Rng, f: &Field, n: usize) -> MatrixFq {
    loop {
        let m = random_matrix(rng, f, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

pub fn elems(f: &Field, xs: &[u64]) -> Vec<FieldElement> {
    xs.iter().map(|&x| f.element(x).unwrap()).collect()
}

/// Exhaustive isomorphism test for plain graphs: backtracking over vertex
/// images with degree and adjacency consistency checks.
pub fn plain_graphs_isomorphic(g1: &PlainGraph, g2: &PlainGraph) -> bool {
    if g1.n != g2.n || g1.edges.len() != g2.edges.len() {
        return false;
    }
    let adj = |g: &PlainGraph| {
        let mut a = vec![vec![false; g.n]; g.n];
        for &(u, v) in &g.edges {
            a[u][v] = true;
            a[v][u] = true;
        }
        a
    };
    let (a1, a2) = (adj(g1), adj(g2));
    let (d1, d2) = (g1.degrees(), g2.degrees());
    let mut s1 = d1.clone();
    let mut s2 = d2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return false;
    }
    // visit vertices of g1 in BFS order so adjacency constraints bite early
    let mut order = Vec::with_capacity(g1.n);
    let mut seen = vec![false; g1.n];
    for s in 0..g1.n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for v in 0..g1.n {
                if a1[u][v] && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    fn extend(
        depth: usize,
        order: &[usize],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        a1: &[Vec<bool>],
        a2: &[Vec<bool>],
        d1: &[usize],
        d2: &[usize],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let u = order[depth];
        for w in 0..a2.len() {
            if used[w] || d1[u] != d2[w] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&v| a1[u][v] == a2[w][map[v].unwrap()]);
            if !consistent {
                continue;
            }
            map[u] = Some(w);
            used[w] = true;
            if extend(depth + 1, order, map, used, a1, a2, d1, d2) {
                return true;
            }
            map[u] = None;
            used[w] = false;
        }
        false
    }
    let mut map = vec![None; g1.n];
    let mut used = vec![false; g1.n];
    extend(0, &order, &mut map, &mut used, &a1, &a2, &d1, &d2)
}
