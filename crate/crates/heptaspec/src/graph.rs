//! Construction of the linear heptagonal chain graph H_n and its Laplacian.
//!
//! H_n consists of two horizontal paths of 4n+1 vertices (top and bottom),
//! vertical rung edges joining them at positions 1, 5, 9, ..., 4n+1, and n
//! bar vertices, the s-th of which is adjacent to the top and bottom
//! vertices at position 4s-1. The result is a chain of 2n heptagons:
//! 9n+2 vertices and 11n+1 edges, connected, with a vertical mirror
//! symmetry that fixes every bar vertex.
//!
//! Vertex order everywhere in this crate: bars first (s = 1..n), then the
//! top path (i = 1..4n+1), then the bottom path (i = 1..4n+1). This order is
//! part of the public interface: block extraction, exports, and the
//! orthogonal transform all rely on it.

use std::fmt;

use serde::Serialize;

use crate::arith::{int, Int};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;

/// A vertex of H_n, with 1-based position labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexId {
    /// Bar vertex s, 1 <= s <= n.
    Bar(usize),
    /// Top-path vertex i, 1 <= i <= 4n+1.
    Top(usize),
    /// Bottom-path vertex i, 1 <= i <= 4n+1.
    Bottom(usize),
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Bar(s) => write!(f, "bar:{s}"),
            VertexId::Top(i) => write!(f, "top:{i}"),
            VertexId::Bottom(i) => write!(f, "bot:{i}"),
        }
    }
}

/// The mirror automorphism: fixes every bar vertex and swaps `top:i` with
/// `bot:i`. Stored as a permutation of vertex indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Automorphism {
    perm: Vec<usize>,
}

impl Automorphism {
    pub fn apply(&self, idx: usize) -> usize {
        self.perm[idx]
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn is_involution(&self) -> bool {
        (0..self.perm.len()).all(|i| self.perm[self.perm[i]] == i)
    }

    /// 0/1 permutation matrix P with `P[pi(i)][i] = 1`.
    pub fn permutation_matrix(&self) -> ExactMatrix<Int> {
        let n = self.perm.len();
        let mut p = ExactMatrix::zeros(n, n);
        for (i, &j) in self.perm.iter().enumerate() {
            p.set(j, i, int(1));
        }
        p
    }
}

/// The chain graph H_n with its canonical vertex order and edge list.
#[derive(Clone, Debug, PartialEq)]
pub struct HeptagonalChain {
    n: usize,
    vertices: Vec<VertexId>,
    /// Index pairs `(u, v)` with `u < v`, in construction order: top path,
    /// bottom path, rungs, bar arms.
    edges: Vec<(usize, usize)>,
}

/// Build H_n. Errors for `n == 0`.
pub fn build_chain(n: usize) -> Result<HeptagonalChain> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let path = 4 * n + 1;
    let mut vertices = Vec::with_capacity(9 * n + 2);
    for s in 1..=n {
        vertices.push(VertexId::Bar(s));
    }
    for i in 1..=path {
        vertices.push(VertexId::Top(i));
    }
    for i in 1..=path {
        vertices.push(VertexId::Bottom(i));
    }

    let bar = |s: usize| s - 1;
    let top = |i: usize| n + i - 1;
    let bot = |i: usize| n + path + i - 1;

    let mut edges = Vec::with_capacity(11 * n + 1);
    let mut push = |a: usize, b: usize| edges.push((a.min(b), a.max(b)));
    for i in 1..path {
        push(top(i), top(i + 1));
    }
    for i in 1..path {
        push(bot(i), bot(i + 1));
    }
    for z in 0..=n {
        push(top(4 * z + 1), bot(4 * z + 1));
    }
    for s in 1..=n {
        push(bar(s), top(4 * s - 1));
        push(bar(s), bot(4 * s - 1));
    }

    let chain = HeptagonalChain { n, vertices, edges };
    debug_assert_eq!(chain.vertex_count(), 9 * n + 2);
    debug_assert_eq!(chain.edge_count(), 11 * n + 1);
    debug_assert!(chain.is_connected());
    Ok(chain)
}

impl HeptagonalChain {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Edges as index pairs `(u, v)`, `u < v`, in canonical order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Index of a vertex in the canonical order, if it exists in this chain.
    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        let path = 4 * self.n + 1;
        match v {
            VertexId::Bar(s) if (1..=self.n).contains(&s) => Some(s - 1),
            VertexId::Top(i) if (1..=path).contains(&i) => Some(self.n + i - 1),
            VertexId::Bottom(i) if (1..=path).contains(&i) => Some(self.n + path + i - 1),
            _ => None,
        }
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.edges.iter().filter(|&&(u, v)| u == idx || v == idx).count()
    }

    fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let nv = self.vertex_count();
        if nv == 0 {
            return true;
        }
        let adj = self.adjacency_lists();
        let mut seen = vec![false; nv];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == nv
    }

    /// The combinatorial Laplacian L = D - A over the integers, rows and
    /// columns in canonical vertex order.
    pub fn laplacian(&self) -> ExactMatrix<Int> {
        let nv = self.vertex_count();
        let mut l = ExactMatrix::zeros(nv, nv);
        for &(u, v) in &self.edges {
            l.set(u, v, int(-1));
            l.set(v, u, int(-1));
            let du = l.get(u, u).clone() + int(1);
            l.set(u, u, du);
            let dv = l.get(v, v).clone() + int(1);
            l.set(v, v, dv);
        }
        l
    }

    /// The mirror automorphism pi (top/bottom swap, bars fixed).
    pub fn automorphism_pi(&self) -> Automorphism {
        let path = 4 * self.n + 1;
        let mut perm: Vec<usize> = (0..self.vertex_count()).collect();
        for i in 0..path {
            perm.swap(self.n + i, self.n + path + i);
        }
        let auto = Automorphism { perm };
        debug_assert!(auto.is_involution());
        debug_assert!(self.preserves_edges(&auto));
        auto
    }

    /// Does the permutation send the edge set onto itself?
    pub fn preserves_edges(&self, auto: &Automorphism) -> bool {
        if auto.len() != self.vertex_count() {
            return false;
        }
        let mut image: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (auto.apply(u), auto.apply(v));
                (a.min(b), a.max(b))
            })
            .collect();
        image.sort_unstable();
        let mut orig = self.edges.clone();
        orig.sort_unstable();
        image == orig
    }

    /// Plain-text edge list: one `u v` pair of labels per line, in canonical
    /// edge order.
    pub fn to_edge_list_text(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", self.vertices[u], self.vertices[v]));
        }
        out
    }

    /// JSON document `{ "n": ..., "vertices": [...], "edges": [[u, v], ...] }`
    /// with vertices and edges as label strings in canonical order.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct ChainDoc {
            n: usize,
            vertices: Vec<String>,
            edges: Vec<(String, String)>,
        }
        let doc = ChainDoc {
            n: self.n,
            vertices: self.vertices.iter().map(|v| v.to_string()).collect(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| (self.vertices[u].to_string(), self.vertices[v].to_string()))
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("chain document serializes")
    }

    /// Count of chordless 7-cycles, by exhaustive search over 7-vertex
    /// subsets whose induced subgraph is a cycle. Exponential; intended for
    /// small-n structural tests only.
    pub fn count_chordless_seven_cycles(&self) -> usize {
        let nv = self.vertex_count();
        let adj: Vec<Vec<bool>> = {
            let mut a = vec![vec![false; nv]; nv];
            for &(u, v) in &self.edges {
                a[u][v] = true;
                a[v][u] = true;
            }
            a
        };
        let mut count = 0;
        let mut subset = [0usize; 7];
        fn rec(
            adj: &[Vec<bool>],
            nv: usize,
            subset: &mut [usize; 7],
            depth: usize,
            start: usize,
            count: &mut usize,
        ) {
            if depth == 7 {
                // induced subgraph is a 7-cycle iff every chosen vertex has
                // exactly two neighbours inside the subset and there are
                // exactly 7 induced edges (connectivity then follows)
                let mut edges = 0;
                for a in 0..7 {
                    let mut deg = 0;
                    for b in 0..7 {
                        if a != b && adj[subset[a]][subset[b]] {
                            deg += 1;
                        }
                    }
                    if deg != 2 {
                        return;
                    }
                    edges += deg;
                }
                if edges == 14 {
                    *count += 1;
                }
                return;
            }
            for v in start..nv {
                subset[depth] = v;
                rec(adj, nv, subset, depth + 1, v + 1, count);
            }
        }
        rec(&adj, nv, &mut subset, 0, 0, &mut count);
        count
    }
}
