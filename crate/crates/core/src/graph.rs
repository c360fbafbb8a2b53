//! Edge-weighted digraphs over F_q, an exact isomorphism solver and an
//! encoding into plain undirected graphs.
//!
//! The solver is 1-dimensional colour refinement run jointly on both
//! graphs (so colour ids are comparable), followed by individualisation
//! and backtracking. It is exact and deterministic.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::code::Permutation;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::matrix::MatrixFq;

/// `adj[i][j]` is the weight of the arc `i → j`; diagonal entries are loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    adj: MatrixFq,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub field: FieldSpec,
    pub n: usize,
    pub adj: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorRefinementState {
    pub colors: Vec<usize>,
    pub stable: bool,
}

impl ColorRefinementState {
    pub fn num_classes(&self) -> usize {
        self.colors.iter().max().map_or(0, |&c| c + 1)
    }

    /// Class sizes indexed by colour.
    pub fn histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.num_classes()];
        for &c in &self.colors {
            h[c] += 1;
        }
        h
    }
}

impl WeightedDigraph {
    pub fn new(adj: MatrixFq) -> Result<Self> {
        if !adj.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "adjacency must be square, got {}x{}",
                adj.rows(),
                adj.cols()
            )));
        }
        Ok(Self { adj })
    }

    pub fn adjacency(&self) -> &MatrixFq {
        &self.adj
    }

    pub fn field(&self) -> &Field {
        self.adj.field()
    }

    pub fn order(&self) -> usize {
        self.adj.rows()
    }

    /// `P_πᵀ A P_π`.
    pub fn relabel(&self, perm: &Permutation) -> Result<Self> {
        Ok(Self {
            adj: perm.conjugate(&self.adj)?,
        })
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            field: self.field().spec().clone(),
            n: self.order(),
            adj: self.adj.to_ints(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        let field = Field::from_spec(&json.field)?;
        if json.adj.len() != json.n || json.adj.iter().any(|r| r.len() != json.n) {
            return Err(Error::Parse(format!("adjacency is not {0}x{0}", json.n)));
        }
        let adj = if json.n == 0 {
            MatrixFq::zeros(&field, 0, 0)
        } else {
            MatrixFq::from_ints(&field, &json.adj)?
        };
        Self::new(adj)
    }
}

type Signature = (usize, usize, Vec<(usize, usize)>, Vec<(usize, usize)>);

fn signature(g: &WeightedDigraph, colors: &[usize], v: usize) -> Signature {
    let a = g.adjacency();
    let n = g.order();
    let mut out: Vec<(usize, usize)> = (0..n)
        .filter(|&u| u != v && !a.get(v, u).is_zero())
        .map(|u| (a.get(v, u).index(), colors[u]))
        .collect();
    let mut inc: Vec<(usize, usize)> = (0..n)
        .filter(|&u| u != v && !a.get(u, v).is_zero())
        .map(|u| (a.get(u, v).index(), colors[u]))
        .collect();
    out.sort_unstable();
    inc.sort_unstable();
    (colors[v], a.get(v, v).index(), out, inc)
}

/// One refinement round over several graphs with a shared colour space.
/// New colour ids are ranks of the signatures in sorted order, so they do
/// not depend on vertex numbering.
fn refine_round(graphs: &[&WeightedDigraph], colors: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let sigs: Vec<Vec<Signature>> = graphs
        .iter()
        .zip(colors)
        .map(|(g, c)| (0..g.order()).map(|v| signature(g, c, v)).collect())
        .collect();
    let mut ids: BTreeMap<&Signature, usize> = BTreeMap::new();
    for s in sigs.iter().flatten() {
        ids.insert(s, 0);
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i;
    }
    sigs.iter()
        .map(|row| row.iter().map(|s| ids[s]).collect())
        .collect()
}

fn count_classes(colors: &[Vec<usize>]) -> usize {
    let mut all: Vec<usize> = colors.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Refine jointly to the coarsest common equitable partition.
fn refine_jointly(graphs: &[&WeightedDigraph], mut colors: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut classes = count_classes(&colors);
    loop {
        let next = refine_round(graphs, &colors);
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn histogram(colors: &[usize], size: usize) -> Vec<usize> {
    let mut h = vec![0; size];
    for &c in colors {
        h[c] += 1;
    }
    h
}

/// Colour refinement to a fixpoint. Classes are renumbered by first
/// occurrence in vertex order.
pub fn refine(g: &WeightedDigraph, initial: Option<&[usize]>) -> ColorRefinementState {
    let start = match initial {
        Some(c) => c.to_vec(),
        None => vec![0; g.order()],
    };
    let refined = refine_jointly(&[g], vec![start]).pop().unwrap();
    let mut renumber = BTreeMap::new();
    let colors = refined
        .iter()
        .map(|&c| {
            let next = renumber.len();
            *renumber.entry(c).or_insert(next)
        })
        .collect();
    ColorRefinementState {
        colors,
        stable: true,
    }
}

struct Search<'a> {
    g1: &'a WeightedDigraph,
    g2: &'a WeightedDigraph,
}

impl Search<'_> {
    fn run(&self, c1: Vec<usize>, c2: Vec<usize>) -> Option<Permutation> {
        let refined = refine_jointly(&[self.g1, self.g2], vec![c1, c2]);
        let (c1, c2) = (&refined[0], &refined[1]);
        let size = c1.iter().chain(c2).max().map_or(0, |&m| m + 1);
        let h1 = histogram(c1, size);
        if h1 != histogram(c2, size) {
            return None;
        }
        // smallest non-singleton cell, lowest colour id on ties
        let target = h1
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s > 1)
            .min_by_key(|&(c, &s)| (s, c))
            .map(|(c, _)| c);
        let Some(cell) = target else {
            return self.leaf(c1, c2);
        };
        let v = c1.iter().position(|&c| c == cell).unwrap();
        let fresh = size;
        for w in (0..c2.len()).filter(|&w| c2[w] == cell) {
            let mut n1 = c1.clone();
            let mut n2 = c2.clone();
            n1[v] = fresh;
            n2[w] = fresh;
            if let Some(p) = self.run(n1, n2) {
                return Some(p);
            }
        }
        None
    }

    fn leaf(&self, c1: &[usize], c2: &[usize]) -> Option<Permutation> {
        let mut by_color = vec![0; c2.len()];
        for (w, &c) in c2.iter().enumerate() {
            by_color[c] = w;
        }
        let image: Vec<usize> = c1.iter().map(|&c| by_color[c]).collect();
        let perm = Permutation::new(image).ok()?;
        let mapped = perm.conjugate(self.g1.adjacency()).ok()?;
        (mapped == *self.g2.adjacency()).then_some(perm)
    }
}

/// Finds `π` with `A₂ = P_πᵀ A₁ P_π`, i.e. `A₂[π(i)][π(j)] = A₁[i][j]`.
pub fn wdg_iso(g1: &WeightedDigraph, g2: &WeightedDigraph) -> Option<Permutation> {
    if g1.order() != g2.order() || g1.field() != g2.field() {
        return None;
    }
    let n = g1.order();
    let mut w1: Vec<usize> = (0..n * n).map(|i| g1.adj.get(i / n, i % n).index()).collect();
    let mut w2: Vec<usize> = (0..n * n).map(|i| g2.adj.get(i / n, i % n).index()).collect();
    w1.sort_unstable();
    w2.sort_unstable();
    if w1 != w2 {
        return None;
    }
    Search { g1, g2 }.run(vec![0; n], vec![0; n])
}

/// Simple undirected graph, 0-based vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl PlainGraph {
    /// `"n m"` header followed by one `"u v"` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for (u, v) in &self.edges {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let parse_pair = |lineno: usize, l: &str| -> Result<(usize, usize)> {
            let nums: Vec<usize> = l
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            match nums[..] {
                [a, b] => Ok((a, b)),
                _ => Err(Error::Parse(format!("line {}: expected two integers", lineno + 1))),
            }
        };
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::Parse("empty edge list".into()))?;
        let (n, m) = parse_pair(hl, header)?;
        let edges = lines
            .map(|(i, l)| {
                let (u, v) = parse_pair(i, l)?;
                if u >= n || v >= n {
                    return Err(Error::Parse(format!("line {}: vertex out of range", i + 1)));
                }
                Ok((u, v))
            })
            .collect::<Result<Vec<_>>>()?;
        if edges.len() != m {
            return Err(Error::Parse(format!("header declares {m} edges, found {}", edges.len())));
        }
        Ok(Self { n, edges })
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }
}

/// Number of bits needed for weight indices `0..q`.
fn weight_bits(q: usize) -> usize {
    (usize::BITS - (q - 1).leading_zeros()) as usize
}

/// Index of the top ladder layer used by [`export_unweighted`] for F_q.
pub fn ladder_top(q: usize) -> usize {
    let bits = weight_bits(q);
    (bits + 1).max((2 * bits).saturating_sub(2))
}

/// Encodes a weighted digraph as a plain graph such that two weighted
/// digraphs are isomorphic iff their encodings are.
///
/// Each vertex `v` becomes a path `v⁰ — v¹ — … — v^L` with a 2-vertex tail
/// hanging off `v⁰` and a 3-vertex tail off `v^L`. An arc `i → j` whose
/// weight index has bit `ℓ` set adds fresh vertices `s, t` with the path
/// `i^ℓ — s — t — j^ℓ` and a pendant leaf on `s`, marking the tail end.
///
/// Vertex numbering: ladder vertex `v^ℓ` is `v·(L+1) + ℓ`; tails follow
/// in vertex order; gadgets follow in `(i, j, ℓ)` order.
pub fn export_unweighted(g: &WeightedDigraph) -> PlainGraph {
    let n = g.order();
    let top = ladder_top(g.field().order());
    let rung = |v: usize, l: usize| v * (top + 1) + l;
    let mut next = n * (top + 1);
    let mut edges = Vec::new();
    let mut fresh = || {
        next += 1;
        next - 1
    };
    for v in 0..n {
        for l in 0..top {
            edges.push((rung(v, l), rung(v, l + 1)));
        }
    }
    for v in 0..n {
        let (a, b) = (fresh(), fresh());
        edges.extend([(rung(v, 0), a), (a, b)]);
        let (a, b, c) = (fresh(), fresh(), fresh());
        edges.extend([(rung(v, top), a), (a, b), (b, c)]);
    }
    let adj = g.adjacency();
    for i in 0..n {
        for j in 0..n {
            let w = adj.get(i, j).index();
            for l in 0..weight_bits(g.field().order()) {
                if w >> l & 1 == 1 {
                    let (s, t, leaf) = (fresh(), fresh(), fresh());
                    edges.extend([(rung(i, l), s), (s, t), (t, rung(j, l)), (s, leaf)]);
                }
            }
        }
    }
    PlainGraph { n: next, edges }
}
