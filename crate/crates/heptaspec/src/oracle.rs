//! Independent oracles: effective resistances by exact elimination,
//! spanning trees by matrix-tree cofactors and by brute enumeration, and
//! floating-point spectra. Nothing in this module knows about the symmetry
//! decomposition or the closed forms — these are the values everything else
//! is audited against.

use nalgebra::DMatrix;
use num_traits::{Signed, Zero};

use crate::arith::{rational_to_f64, Int, Rational};
use crate::error::{Error, Result};
use crate::graph::{HeptagonalChain, VertexId};
use crate::matrix::ExactMatrix;

/// Hard cap for the brute-force spanning-tree enumerator.
pub const ENUMERATION_EDGE_LIMIT: usize = 25;

/// A plain undirected simple graph on vertices `0..vertex_count`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::IndexRange(format!(
                    "edge ({u}, {v}) outside 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::IndexRange(format!("loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::IndexRange(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(SimpleGraph { vertex_count, edges })
    }

    pub fn from_chain(chain: &HeptagonalChain) -> Self {
        SimpleGraph { vertex_count: chain.vertex_count(), edges: chain.edges().to_vec() }
    }

    /// Complete graph on `k` vertices.
    pub fn complete(k: usize) -> Self {
        let edges = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
        SimpleGraph { vertex_count: k, edges }
    }

    /// Cycle on `k >= 3` vertices.
    pub fn cycle(k: usize) -> Self {
        let edges = (0..k).map(|u| (u, (u + 1) % k)).map(|(u, v)| (u.min(v), u.max(v))).collect();
        SimpleGraph { vertex_count: k, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn laplacian(&self) -> ExactMatrix<Int> {
        let n = self.vertex_count;
        let mut l = ExactMatrix::zeros(n, n);
        for &(u, v) in &self.edges {
            l.set(u, v, Int::from(-1));
            l.set(v, u, Int::from(-1));
            let du = l.get(u, u).clone() + Int::from(1);
            l.set(u, u, du);
            let dv = l.get(v, v).clone() + Int::from(1);
            l.set(v, v, dv);
        }
        l
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.vertex_count];
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
        count == self.vertex_count
    }
}

/// Exact pairwise effective resistances, held in scaled-integer form: the
/// grounded Laplacian's adjugate and determinant. Individual resistances
/// are produced on demand as reduced rationals.
#[derive(Clone, Debug)]
pub struct ResistanceTable {
    vertex_count: usize,
    ground: usize,
    adj: ExactMatrix<Int>,
    det: Int,
}

impl ResistanceTable {
    /// Row/column index into the grounded matrix for vertex `v`, or `None`
    /// for the ground vertex itself.
    fn grounded_index(&self, v: usize) -> Option<usize> {
        match v.cmp(&self.ground) {
            std::cmp::Ordering::Less => Some(v),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(v - 1),
        }
    }

    /// Scaled resistance: `resistance(u, v) * det`, all integer.
    fn scaled(&self, u: usize, v: usize) -> Int {
        if u == v {
            return Int::zero();
        }
        match (self.grounded_index(u), self.grounded_index(v)) {
            (Some(i), Some(j)) => {
                self.adj.get(i, i) + self.adj.get(j, j) - self.adj.get(i, j) - self.adj.get(j, i)
            }
            (None, Some(j)) | (Some(j), None) => self.adj.get(j, j).clone(),
            (None, None) => unreachable!("u == v was handled above"),
        }
    }

    /// Effective resistance between two vertices, exact and reduced.
    pub fn resistance(&self, u: usize, v: usize) -> Rational {
        Rational::new(self.scaled(u, v), self.det.clone())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Kirchhoff index: the sum of resistances over unordered pairs.
    pub fn kirchhoff_index(&self) -> Rational {
        let mut total = Int::zero();
        for u in 0..self.vertex_count {
            for v in u + 1..self.vertex_count {
                total += self.scaled(u, v);
            }
        }
        Rational::new(total, self.det.clone())
    }

    /// Sum of resistances over a specific edge set (Foster-style sums).
    pub fn sum_over_edges(&self, edges: &[(usize, usize)]) -> Rational {
        let mut total = Int::zero();
        for &(u, v) in edges {
            total += self.scaled(u, v);
        }
        Rational::new(total, self.det.clone())
    }

    /// Full symmetric matrix of exact resistance strings, CSV rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for u in 0..self.vertex_count {
            let row: Vec<String> =
                (0..self.vertex_count).map(|v| self.resistance(u, v).to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Exact resistance table for an arbitrary connected graph, grounding the
/// given vertex. Entirely integer arithmetic (Montante elimination).
pub fn resistance_table_graph(g: &SimpleGraph, ground: usize) -> Result<ResistanceTable> {
    if ground >= g.vertex_count() {
        return Err(Error::IndexRange(format!("ground vertex {ground} out of range")));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let grounded = g.laplacian().delete_rows_cols(&[ground]);
    let (adj, det) = grounded.adjugate_inverse()?;
    debug_assert!(det.is_positive());
    Ok(ResistanceTable { vertex_count: g.vertex_count(), ground, adj, det })
}

/// Resistance table for a chain, grounded at `top:1` by convention.
pub fn resistance_table(chain: &HeptagonalChain) -> Result<ResistanceTable> {
    let ground = chain.index_of(VertexId::Top(1)).expect("top:1 exists in every chain");
    resistance_table_graph(&SimpleGraph::from_chain(chain), ground)
}

/// Kirchhoff index of a chain by exact effective resistances. Independent
/// of the symmetry decomposition and of every closed form.
pub fn kirchhoff_resistance(chain: &HeptagonalChain) -> Result<Rational> {
    Ok(resistance_table(chain)?.kirchhoff_index())
}

/// Eigenvalues of a symmetric exact matrix in floating point, with the
/// worst eigenpair residual `max |A v - lambda v|` recorded.
#[derive(Clone, Debug)]
pub struct SpectralSummary {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub max_residual: f64,
}

impl SpectralSummary {
    /// Eigenvalues with `|lambda| <= tol`, where `tol` is relative to the
    /// largest magnitude present.
    pub fn near_zero_count(&self) -> usize {
        let tol = self.zero_tolerance();
        self.eigenvalues.iter().filter(|l| l.abs() <= tol).count()
    }

    fn zero_tolerance(&self) -> f64 {
        let scale = self.eigenvalues.iter().fold(1.0f64, |m, l| m.max(l.abs()));
        scale * 1e-9
    }

    /// Sum of reciprocals of the eigenvalues bounded away from zero.
    pub fn reciprocal_sum_nonzero(&self) -> f64 {
        let tol = self.zero_tolerance();
        self.eigenvalues.iter().filter(|l| l.abs() > tol).map(|l| 1.0 / l).sum()
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }
}

/// Dense symmetric eigensolve of an f64 matrix.
pub fn numeric_spectrum_f64(m: &DMatrix<f64>) -> Result<SpectralSummary> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    let sym = nalgebra::SymmetricEigen::new(m.clone());
    let residual_m =
        m * &sym.eigenvectors - &sym.eigenvectors * DMatrix::from_diagonal(&sym.eigenvalues);
    let max_residual = residual_m.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut eigenvalues: Vec<f64> = sym.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(SpectralSummary { eigenvalues, max_residual })
}

/// Convert an exact integer matrix to f64.
pub fn int_matrix_to_f64(m: &ExactMatrix<Int>) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        rational_to_f64(&Rational::from(m.get(i, j).clone()))
    })
}

/// Numeric spectrum of a symmetric integer matrix.
pub fn numeric_spectrum(m: &ExactMatrix<Int>) -> Result<SpectralSummary> {
    numeric_spectrum_f64(&int_matrix_to_f64(m))
}

/// Kirchhoff index by Laplacian eigenvalues in floating point:
/// `N * sum(1/lambda)` over the nonzero spectrum.
pub fn kirchhoff_spectral_graph(g: &SimpleGraph) -> Result<f64> {
    let spec = numeric_spectrum(&g.laplacian())?;
    if spec.near_zero_count() != 1 {
        return Err(Error::Disconnected);
    }
    Ok(g.vertex_count() as f64 * spec.reciprocal_sum_nonzero())
}

pub fn kirchhoff_spectral(chain: &HeptagonalChain) -> Result<f64> {
    kirchhoff_spectral_graph(&SimpleGraph::from_chain(chain))
}

/// Spanning-tree count as a Laplacian cofactor (matrix-tree theorem),
/// exact.
pub fn spanning_trees_matrix_tree_graph(g: &SimpleGraph) -> Result<Int> {
    if g.vertex_count() == 0 {
        return Err(Error::InvalidOrder(0));
    }
    if g.vertex_count() == 1 {
        return Ok(Int::from(1));
    }
    g.laplacian().delete_rows_cols(&[0]).det_bareiss()
}

pub fn spanning_trees_matrix_tree(chain: &HeptagonalChain) -> Result<Int> {
    spanning_trees_matrix_tree_graph(&SimpleGraph::from_chain(chain))
}

/// Spanning-tree count by brute-force enumeration of edge subsets with a
/// union-find acyclicity check. Guarded by [`ENUMERATION_EDGE_LIMIT`].
pub fn spanning_trees_enumerate_graph(g: &SimpleGraph) -> Result<Int> {
    let ne = g.edges().len();
    if ne > ENUMERATION_EDGE_LIMIT {
        return Err(Error::TooManyEdges { edges: ne, limit: ENUMERATION_EDGE_LIMIT });
    }
    let nv = g.vertex_count();
    if nv == 0 {
        return Err(Error::InvalidOrder(0));
    }
    if nv == 1 {
        return Ok(Int::from(1));
    }
    let need = nv - 1;
    if ne < need {
        return Ok(Int::zero());
    }

    struct UnionFind {
        parent: Vec<usize>,
    }
    impl UnionFind {
        fn find(&mut self, x: usize) -> usize {
            if self.parent[x] != x {
                let root = self.find(self.parent[x]);
                self.parent[x] = root;
            }
            self.parent[x]
        }
        fn union(&mut self, a: usize, b: usize) -> bool {
            let (ra, rb) = (self.find(a), self.find(b));
            if ra == rb {
                return false;
            }
            self.parent[ra] = rb;
            true
        }
    }

    let mut count: u64 = 0;
    let mut chosen = Vec::with_capacity(need);
    fn rec(
        edges: &[(usize, usize)],
        nv: usize,
        need: usize,
        start: usize,
        chosen: &mut Vec<(usize, usize)>,
        count: &mut u64,
    ) {
        if chosen.len() == need {
            let mut uf = UnionFind { parent: (0..nv).collect() };
            if chosen.iter().all(|&(u, v)| uf.union(u, v)) {
                *count += 1;
            }
            return;
        }
        let remaining = need - chosen.len();
        for i in start..=edges.len().saturating_sub(remaining) {
            chosen.push(edges[i]);
            rec(edges, nv, need, i + 1, chosen, count);
            chosen.pop();
        }
    }
    rec(g.edges(), nv, need, 0, &mut chosen, &mut count);
    Ok(Int::from(count))
}

pub fn spanning_trees_enumerate(chain: &HeptagonalChain) -> Result<Int> {
    spanning_trees_enumerate_graph(&SimpleGraph::from_chain(chain))
}

/// Merge two ascending spectra into one ascending list.
pub fn sorted_union(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = a.iter().chain(b.iter()).copied().collect();
    out.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    out
}

/// Largest absolute difference between two equally long sorted lists.
pub fn max_pairwise_gap(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "spectra of lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(x.iter().zip(y).fold(0.0f64, |m, (a, b)| m.max((a - b).abs())))
}
