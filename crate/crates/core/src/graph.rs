//! Base multigraphs, circulant fibers, foliation specs, and their expansion
//! into explicit graphs.
//!
//! Vertices are 0-based everywhere in this module. Vertex `(k, v_i)` of an
//! expanded graph (layer `k` in `0..n`, base vertex `i` in `0..m`) has index
//! `i * n + k`, so the Laplacian comes out in the block layout with one
//! `n x n` circulant block per base vertex.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::algebra::IntegerMatrix;
use crate::{Error, Result};

/// Loop-free multigraph stored as a symmetric multiplicity matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseGraph {
    order: usize,
    mult: Vec<u32>,
}

impl BaseGraph {
    /// Validates a multiplicity matrix: square, zero diagonal, symmetric.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::EmptyBase);
        }
        let mut mult = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotSquare {
                    rows: order,
                    row: r,
                    len: row.len(),
                });
            }
            mult.extend_from_slice(row);
        }
        let g = BaseGraph { order, mult };
        for i in 0..order {
            if g.multiplicity(i, i) != 0 {
                return Err(Error::LoopInBase { vertex: i });
            }
            for j in 0..i {
                if g.multiplicity(i, j) != g.multiplicity(j, i) {
                    return Err(Error::AsymmetricBase { i, j });
                }
            }
        }
        Ok(g)
    }

    /// Builds a graph on `order` vertices from `(i, j, multiplicity)` triples.
    /// Repeated pairs accumulate.
    pub fn from_edges(order: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyBase);
        }
        let mut rows = vec![vec![0u32; order]; order];
        for &(i, j, m) in edges {
            if i >= order || j >= order {
                return Err(Error::NotSquare {
                    rows: order,
                    row: i.max(j),
                    len: order,
                });
            }
            if i == j {
                if m != 0 {
                    return Err(Error::LoopInBase { vertex: i });
                }
                continue;
            }
            rows[i][j] += m;
            rows[j][i] += m;
        }
        Self::new(rows)
    }

    pub fn single_vertex() -> Self {
        BaseGraph {
            order: 1,
            mult: vec![0],
        }
    }

    pub fn path(order: usize) -> Result<Self> {
        let edges: Vec<_> = (1..order).map(|i| (i - 1, i, 1)).collect();
        Self::from_edges(order, &edges)
    }

    /// The cycle `C_m`; needs at least three vertices.
    pub fn cycle(order: usize) -> Result<Self> {
        if order < 3 {
            return Err(Error::BadArity {
                family: "cycle",
                expected: "at least 3 vertices",
                found: order,
            });
        }
        let edges: Vec<_> = (0..order).map(|i| (i, (i + 1) % order, 1)).collect();
        Self::from_edges(order, &edges)
    }

    pub fn complete(order: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..order {
            for j in i + 1..order {
                edges.push((i, j, 1));
            }
        }
        Self::from_edges(order, &edges)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        self.mult[i * self.order + j]
    }

    /// `d_i`, the number of edges at `i` counted with multiplicity.
    pub fn degree(&self, i: usize) -> u32 {
        (0..self.order).map(|j| self.multiplicity(i, j)).sum()
    }

    /// Edges `(i, j, multiplicity)` with `i < j` and nonzero multiplicity.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.order).flat_map(move |i| {
            (i + 1..self.order).filter_map(move |j| {
                let m = self.multiplicity(i, j);
                (m > 0).then_some((i, j, m))
            })
        })
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edges().map(|(_, _, m)| u64::from(m)).sum()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.order];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (u, flag) in seen.iter_mut().enumerate() {
                if !*flag && self.multiplicity(v, u) > 0 {
                    *flag = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Generalized Laplacian `diag(x) - A` restricted to `vertices`.
    pub fn generalized_laplacian(&self, vertices: &[usize], diag: &[BigInt]) -> IntegerMatrix {
        IntegerMatrix::from_fn(vertices.len(), |r, c| {
            if r == c {
                diag[r].clone()
            } else {
                -BigInt::from(self.multiplicity(vertices[r], vertices[c]))
            }
        })
    }

    /// `I + L(H)`.
    pub fn forest_matrix(&self) -> IntegerMatrix {
        let all: Vec<usize> = (0..self.order).collect();
        let diag: Vec<BigInt> = all
            .iter()
            .map(|&i| BigInt::from(self.degree(i) + 1))
            .collect();
        self.generalized_laplacian(&all, &diag)
    }
}

/// Jump set of a circulant fiber `C_n(s_1, ..., s_k)`; empty for `C_n(∅)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberSpec {
    jumps: Vec<u32>,
}

impl FiberSpec {
    pub fn new(jumps: Vec<u32>) -> Result<Self> {
        if jumps.contains(&0) {
            return Err(Error::ZeroJump);
        }
        if jumps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NonIncreasingJumps {
                jumps: format!("{jumps:?}"),
            });
        }
        Ok(FiberSpec { jumps })
    }

    pub fn empty() -> Self {
        FiberSpec::default()
    }

    pub fn jumps(&self) -> &[u32] {
        &self.jumps
    }

    pub fn is_empty(&self) -> bool {
        self.jumps.is_empty()
    }

    /// Largest jump, 0 for the empty fiber.
    pub fn max_jump(&self) -> u32 {
        self.jumps.last().copied().unwrap_or(0)
    }

    /// Jump list with the empty-fiber convention applied: `[0]` when empty.
    pub fn effective_jumps(&self) -> Vec<u32> {
        if self.is_empty() {
            vec![0]
        } else {
            self.jumps.clone()
        }
    }

    /// Number of odd jumps.
    pub fn odd_count(&self) -> u32 {
        self.jumps.iter().filter(|&&s| s % 2 == 1).count() as u32
    }
}

/// A base graph with one circulant fiber per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FoliationSpec {
    base: BaseGraph,
    fibers: Vec<FiberSpec>,
    degrees: Vec<u32>,
}

/// Checks the fiber count and base connectivity, then caches vertex degrees.
pub fn make_foliation(base: BaseGraph, fibers: Vec<FiberSpec>) -> Result<FoliationSpec> {
    FoliationSpec::with_options(base, fibers, false)
}

impl FoliationSpec {
    pub fn new(base: BaseGraph, fibers: Vec<FiberSpec>) -> Result<Self> {
        make_foliation(base, fibers)
    }

    /// Like [`make_foliation`]; `allow_disconnected` skips the connectivity check.
    pub fn with_options(
        base: BaseGraph,
        fibers: Vec<FiberSpec>,
        allow_disconnected: bool,
    ) -> Result<Self> {
        if fibers.len() != base.order() {
            return Err(Error::FiberCountMismatch {
                vertices: base.order(),
                fibers: fibers.len(),
            });
        }
        if !allow_disconnected && !base.is_connected() {
            return Err(Error::DisconnectedBase);
        }
        let degrees = (0..base.order()).map(|i| base.degree(i)).collect();
        Ok(FoliationSpec {
            base,
            fibers,
            degrees,
        })
    }

    pub fn base(&self) -> &BaseGraph {
        &self.base
    }

    pub fn fibers(&self) -> &[FiberSpec] {
        &self.fibers
    }

    pub fn vertex_count(&self) -> usize {
        self.base.order()
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Largest jump over all fibers, 0 when every fiber is empty.
    pub fn max_jump(&self) -> u32 {
        self.fibers
            .iter()
            .map(FiberSpec::max_jump)
            .max()
            .unwrap_or(0)
    }

    /// `s`, the sum of the largest jump of each fiber.
    pub fn shift(&self) -> usize {
        self.fibers.iter().map(|f| f.max_jump() as usize).sum()
    }

    /// Indices of vertices carrying the empty fiber.
    pub fn empty_fiber_vertices(&self) -> Vec<usize> {
        (0..self.fibers.len())
            .filter(|&i| self.fibers[i].is_empty())
            .collect()
    }

    /// Whether `n` admits a genuine graph, i.e. `n > 2 * max_jump`.
    pub fn admits(&self, n: u64) -> bool {
        n >= 1 && n > 2 * u64::from(self.max_jump())
    }

    /// Smallest `n` that admits a graph.
    pub fn min_n(&self) -> u64 {
        2 * u64::from(self.max_jump()) + 1
    }
}

/// The foliation `H_n` written out as an explicit multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedGraph {
    n: usize,
    m: usize,
    edges: BTreeMap<(usize, usize), u32>,
}

impl ExpandedGraph {
    pub fn layers(&self) -> usize {
        self.n
    }

    pub fn base_order(&self) -> usize {
        self.m
    }

    pub fn vertex_count(&self) -> usize {
        self.n * self.m
    }

    pub fn index(&self, layer: usize, vertex: usize) -> usize {
        vertex * self.n + layer
    }

    /// `(layer, base vertex)` of a vertex index.
    pub fn label(&self, index: usize) -> (usize, usize) {
        (index % self.n, index / self.n)
    }

    /// Edges `(u, v, multiplicity)` with `u < v`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.edges.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edges.values().map(|&m| u64::from(m)).sum()
    }

    pub fn degree(&self, v: usize) -> u64 {
        self.edges
            .iter()
            .filter(|(&(a, b), _)| a == v || b == v)
            .map(|(_, &m)| u64::from(m))
            .sum()
    }

    /// One line `k,i<TAB>k',i'<TAB>multiplicity` per edge, labels 1-based.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v, m) in self.edges() {
            let ((ku, iu), (kv, iv)) = (self.label(u), self.label(v));
            out += &format!("{},{}\t{},{}\t{m}\n", ku + 1, iu + 1, kv + 1, iv + 1);
        }
        out
    }

    /// Graphviz text: one node per `(k, i)`, parallel edges repeated.
    pub fn to_graph_text(&self) -> String {
        let mut out = String::from("graph foliation {\n");
        for v in 0..self.vertex_count() {
            let (k, i) = self.label(v);
            out += &format!("  \"{},{}\";\n", k + 1, i + 1);
        }
        for (u, v, m) in self.edges() {
            let ((ku, iu), (kv, iv)) = (self.label(u), self.label(v));
            for _ in 0..m {
                out += &format!(
                    "  \"{},{}\" -- \"{},{}\";\n",
                    ku + 1,
                    iu + 1,
                    kv + 1,
                    iv + 1
                );
            }
        }
        out.push_str("}\n");
        out
    }

    fn add_edge(&mut self, u: usize, v: usize, m: u32) {
        let key = if u < v { (u, v) } else { (v, u) };
        *self.edges.entry(key).or_insert(0) += m;
    }
}

/// Expands a spec at a concrete `n`. Requires `n > 2 * max_jump`.
pub fn expand(spec: &FoliationSpec, n: u64) -> Result<ExpandedGraph> {
    if n == 0 {
        return Err(Error::InvalidN);
    }
    if !spec.admits(n) {
        return Err(Error::JumpTooLargeForN {
            n,
            max_jump: spec.max_jump(),
        });
    }
    let n = n as usize;
    let mut g = ExpandedGraph {
        n,
        m: spec.vertex_count(),
        edges: BTreeMap::new(),
    };
    for (i, j, mult) in spec.base().edges() {
        for k in 0..n {
            let (u, v) = (g.index(k, i), g.index(k, j));
            g.add_edge(u, v, mult);
        }
    }
    for (i, fiber) in spec.fibers().iter().enumerate() {
        for &s in fiber.jumps() {
            for k in 0..n {
                let (u, v) = (g.index(k, i), g.index((k + s as usize) % n, i));
                g.add_edge(u, v, 1);
            }
        }
    }
    Ok(g)
}

/// `L = D - A` of an expanded graph.
pub fn laplacian(g: &ExpandedGraph) -> IntegerMatrix {
    let order = g.vertex_count();
    let mut l = IntegerMatrix::zeros(order);
    for (u, v, m) in g.edges() {
        let m = BigInt::from(m);
        l.set(u, v, l.get(u, v) - &m);
        l.set(v, u, l.get(v, u) - &m);
        l.set(u, u, l.get(u, u) + &m);
        l.set(v, v, l.get(v, v) + &m);
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn fiber(j: &[u32]) -> FiberSpec {
        FiberSpec::new(j.to_vec()).unwrap()
    }

    #[test]
    fn export_formats() {
        let spec =
            FoliationSpec::new(BaseGraph::path(2).unwrap(), vec![fiber(&[]), fiber(&[])]).unwrap();
        let g = expand(&spec, 2).unwrap();
        assert_eq!(g.to_edge_list(), "1,1\t1,2\t1\n2,1\t2,2\t1\n");
        let dot = g.to_graph_text();
        assert!(dot.starts_with("graph foliation {\n"));
        assert_eq!(dot.matches(" -- ").count(), 2);
        assert_eq!(
            dot.lines()
                .filter(|l| l.ends_with("\";") && !l.contains(" -- "))
                .count(),
            4
        );
    }

    fn petersen_spec() -> FoliationSpec {
        make_foliation(BaseGraph::path(2).unwrap(), vec![fiber(&[2]), fiber(&[1])]).unwrap()
    }

    #[test]
    fn one_point_foliation() {
        let spec = make_foliation(BaseGraph::single_vertex(), vec![FiberSpec::empty()]).unwrap();
        assert_eq!(spec.max_jump(), 0);
        assert_eq!(spec.shift(), 0);
        let g = expand(&spec, 7).unwrap();
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 0);
        let l = laplacian(&expand(&spec, 1).unwrap());
        assert_eq!(l.order(), 1);
        assert!(l.get(0, 0).is_zero());
    }

    #[test]
    fn base_validation_errors() {
        assert_eq!(
            BaseGraph::new(vec![vec![1]]),
            Err(Error::LoopInBase { vertex: 0 })
        );
        assert_eq!(
            BaseGraph::new(vec![vec![0, 1], vec![2, 0]]),
            Err(Error::AsymmetricBase { i: 1, j: 0 })
        );
        assert_eq!(BaseGraph::new(vec![]), Err(Error::EmptyBase));
        let two = BaseGraph::new(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(
            make_foliation(two.clone(), vec![FiberSpec::empty(); 2]),
            Err(Error::DisconnectedBase)
        );
        assert!(FoliationSpec::with_options(two, vec![FiberSpec::empty(); 2], true).is_ok());
        assert_eq!(
            make_foliation(BaseGraph::path(2).unwrap(), vec![FiberSpec::empty()]),
            Err(Error::FiberCountMismatch {
                vertices: 2,
                fibers: 1
            })
        );
    }

    #[test]
    fn fiber_validation_errors() {
        assert!(matches!(
            FiberSpec::new(vec![2, 1]),
            Err(Error::NonIncreasingJumps { .. })
        ));
        assert!(matches!(
            FiberSpec::new(vec![1, 1]),
            Err(Error::NonIncreasingJumps { .. })
        ));
        assert_eq!(FiberSpec::new(vec![0, 1]), Err(Error::ZeroJump));
        assert_eq!(fiber(&[1, 2, 3]).odd_count(), 2);
        assert_eq!(FiberSpec::empty().effective_jumps(), vec![0]);
    }

    #[test]
    fn y_spec_has_star_base() {
        let star = BaseGraph::from_edges(4, &[(0, 3, 1), (1, 3, 1), (2, 3, 1)]).unwrap();
        let spec = make_foliation(
            star,
            vec![fiber(&[1]), fiber(&[1]), fiber(&[1]), FiberSpec::empty()],
        )
        .unwrap();
        assert_eq!(spec.degrees(), &[1, 1, 1, 3]);
        assert_eq!(spec.shift(), 3);
        assert_eq!(spec.empty_fiber_vertices(), vec![3]);
    }

    #[test]
    fn petersen_graph() {
        let g = expand(&petersen_spec(), 5).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
        // outer 5-cycle on the C(1) fiber, inner pentagram on the C(2) fiber, spokes
        let mut expected = Vec::new();
        for k in 0..5 {
            expected.push((g.index(k, 1), g.index((k + 1) % 5, 1)));
            expected.push((g.index(k, 0), g.index((k + 2) % 5, 0)));
            expected.push((g.index(k, 0), g.index(k, 1)));
        }
        for (u, v) in expected {
            let key = (u.min(v), u.max(v));
            assert_eq!(g.edges.get(&key), Some(&1), "missing {key:?}");
        }
        let l = laplacian(&g);
        assert!(l.is_symmetric());
        assert!(l.row_sums().iter().all(Zero::is_zero));
        assert!((0..10).all(|i| l.get(i, i) == &BigInt::from(3)));
    }

    #[test]
    fn four_cycle_and_triangle() {
        let cyc = make_foliation(BaseGraph::single_vertex(), vec![fiber(&[1])]).unwrap();
        let c4 = expand(&cyc, 4).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert!((0..4).all(|v| c4.degree(v) == 2));
        let l = laplacian(&expand(&cyc, 3).unwrap());
        let expected =
            IntegerMatrix::from_rows(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]])
                .unwrap();
        assert_eq!(l, expected);
    }

    #[test]
    fn torus_three_by_three_is_four_regular() {
        let spec = make_foliation(BaseGraph::cycle(3).unwrap(), vec![fiber(&[1]); 3]).unwrap();
        let g = expand(&spec, 3).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert!((0..9).all(|v| g.degree(v) == 4));
    }

    #[test]
    fn small_n_is_rejected() {
        assert_eq!(
            expand(&petersen_spec(), 4),
            Err(Error::JumpTooLargeForN { n: 4, max_jump: 2 })
        );
        assert_eq!(expand(&petersen_spec(), 0), Err(Error::InvalidN));
    }

    #[test]
    fn multigraph_edges_keep_multiplicity() {
        let base = BaseGraph::from_edges(2, &[(0, 1, 3)]).unwrap();
        let spec = make_foliation(base, vec![fiber(&[1]), FiberSpec::empty()]).unwrap();
        let g = expand(&spec, 4).unwrap();
        assert_eq!(g.edge_count(), 4 * 3 + 4);
        assert_eq!(g.degree(g.index(0, 0)), 5);
        assert_eq!(g.degree(g.index(0, 1)), 3);
        assert_eq!(g.label(g.index(2, 1)), (2, 1));
        let forest = laplacian(&g).add_scalar_identity(&BigInt::one()).det();
        assert!(forest > BigInt::zero());
    }
}
