//! Signed graphs: balance, rank, incidence matrices, signed cliques and
//! clique graphs.
//!
//! Nodes are 0-based in the API (`v_1` is node `0`); the text format uses
//! 1-based labels.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

/// Multigraph with signed edges and no loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGraph {
    nodes: usize,
    edges: Vec<Edge>,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    /// Parts as sorted node lists, ordered by smallest member.
    pub(crate) fn parts(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            let r = self.find(v);
            by_root[r].push(v);
        }
        by_root.into_iter().filter(|p| !p.is_empty()).collect()
    }
}

impl SignedGraph {
    pub fn new(nodes: usize, edges: Vec<Edge>) -> Result<Self> {
        for e in &edges {
            if e.u == e.v {
                return Err(Error::InvalidArgument(format!("loop at node {}", e.u + 1)));
            }
            if e.u >= nodes || e.v >= nodes {
                return Err(Error::InvalidArgument(format!(
                    "edge ({}, {}) out of range for {nodes} nodes",
                    e.u + 1,
                    e.v + 1
                )));
            }
        }
        Ok(SignedGraph { nodes, edges })
    }

    pub fn empty(nodes: usize) -> Self {
        SignedGraph { nodes, edges: Vec::new() }
    }

    /// Convenience constructor from 0-based `(u, v, sign)` triples; panics on invalid input.
    pub fn from_edges(nodes: usize, edges: &[(usize, usize, Sign)]) -> Self {
        let edges = edges.iter().map(|&(u, v, sign)| Edge { u, v, sign }).collect();
        SignedGraph::new(nodes, edges).expect("valid signed graph")
    }

    /// Every edge of both signs between every pair of nodes.
    pub fn complete_link(nodes: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..nodes {
            for v in u + 1..nodes {
                edges.push(Edge { u, v, sign: Sign::Pos });
                edges.push(Edge { u, v, sign: Sign::Neg });
            }
        }
        SignedGraph { nodes, edges }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, nodes: usize, edge_count: usize) -> Self {
        assert!(nodes >= 2 || edge_count == 0, "edges need two nodes");
        let edges = (0..edge_count)
            .map(|_| {
                let u = rng.gen_range(0..nodes);
                let mut v = rng.gen_range(0..nodes - 1);
                if v >= u {
                    v += 1;
                }
                let sign = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
                Edge { u, v, sign }
            })
            .collect();
        SignedGraph { nodes, edges }
    }

    /// A uniformly random-ish signed spanning tree (random attachment).
    pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, nodes: usize) -> Self {
        let edges = (1..nodes)
            .map(|v| Edge { u: rng.gen_range(0..v), v, sign: if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg } })
            .collect();
        SignedGraph { nodes, edges }
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Spanning subgraph on the edges of one sign.
    pub fn part(&self, sign: Sign) -> SignedGraph {
        SignedGraph { nodes: self.nodes, edges: self.edges.iter().copied().filter(|e| e.sign == sign).collect() }
    }

    /// Node sets of the connected components of the underlying graph.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.nodes);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        uf.parts()
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, Sign)>> {
        let mut adj = vec![Vec::new(); self.nodes];
        for e in &self.edges {
            adj[e.u].push((e.v, e.sign));
            adj[e.v].push((e.u, e.sign));
        }
        adj
    }

    /// For each component (in [`components`](Self::components) order),
    /// whether it is balanced, i.e. has no negative circle. A component is
    /// balanced iff some switching function makes every edge positive.
    pub fn balanced_components(&self) -> Vec<(Vec<usize>, bool)> {
        let adj = self.adjacency();
        let mut switch: Vec<Option<i8>> = vec![None; self.nodes];
        self.components()
            .into_iter()
            .map(|comp| {
                let mut ok = true;
                let start = comp[0];
                switch[start] = Some(1);
                let mut queue = VecDeque::from([start]);
                while let Some(u) = queue.pop_front() {
                    let su = switch[u].expect("visited");
                    for &(v, sign) in &adj[u] {
                        let want = su * sign.value();
                        match switch[v] {
                            None => {
                                switch[v] = Some(want);
                                queue.push_back(v);
                            }
                            Some(sv) if sv != want => ok = false,
                            _ => {}
                        }
                    }
                }
                (comp, ok)
            })
            .collect()
    }

    /// Number of balanced components, `b(Σ)`.
    pub fn balanced_count(&self) -> usize {
        self.balanced_components().iter().filter(|(_, ok)| *ok).count()
    }

    /// `rk(Σ) = |N| − b(Σ)`.
    pub fn rank(&self) -> usize {
        self.nodes - self.balanced_count()
    }

    /// Rank of the underlying graph with every edge read as positive,
    /// `|N| − c(Σ)`. This is the rank used for `Σ⁺` and `Σ⁻` in clique counts.
    pub fn graphic_rank(&self) -> usize {
        self.nodes - self.component_count()
    }

    /// Cyclomatic number `|E| − |N| + c(Σ)`.
    pub fn cyclomatic(&self) -> usize {
        self.edges.len() + self.component_count() - self.nodes
    }

    /// Node × edge matrix with `η(u,e)·η(v,e) = −σ(e)`. A positive edge has
    /// `+1` at its smaller endpoint and `−1` at the larger; a negative edge
    /// has `+1` at both.
    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let mut rows = vec![vec![0i8; self.edges.len()]; self.nodes];
        for (k, e) in self.edges.iter().enumerate() {
            let (lo, hi) = (e.u.min(e.v), e.u.max(e.v));
            rows[lo][k] = 1;
            rows[hi][k] = match e.sign {
                Sign::Pos => -1,
                Sign::Neg => 1,
            };
        }
        IncidenceMatrix { rows, cols: self.edges.len() }
    }

    /// Positive and negative cliques: components of `Σ⁺` and `Σ⁻` as
    /// spanning subgraphs, so isolated nodes give one singleton of each sign.
    pub fn signed_cliques(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        (self.part(Sign::Pos).components(), self.part(Sign::Neg).components())
    }

    pub fn clique_graph(&self) -> CliqueGraph {
        let (pos, neg) = self.signed_cliques();
        let mut left_of = vec![0; self.nodes];
        let mut right_of = vec![0; self.nodes];
        for (k, a) in pos.iter().enumerate() {
            a.iter().for_each(|&v| left_of[v] = k);
        }
        for (l, b) in neg.iter().enumerate() {
            b.iter().for_each(|&v| right_of[v] = l);
        }
        let edges = (0..self.nodes).map(|v| (left_of[v], right_of[v])).collect();
        CliqueGraph { left: pos, right: neg, edges }
    }

    /// Drops redundant edges until both sign classes are forests, keeping the
    /// earliest edge wherever there is a choice. Signed cliques are unchanged.
    pub fn irredundant_reduction(&self) -> SignedGraph {
        let mut pos = UnionFind::new(self.nodes);
        let mut neg = UnionFind::new(self.nodes);
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| match e.sign {
                Sign::Pos => pos.union(e.u, e.v),
                Sign::Neg => neg.union(e.u, e.v),
            })
            .collect();
        SignedGraph { nodes: self.nodes, edges }
    }

    pub fn is_irredundant(&self) -> bool {
        self.irredundant_reduction().edge_count() == self.edge_count()
    }

    /// Whether every component has exactly one circle and that circle is
    /// negative. Isolated nodes disqualify the graph.
    pub fn is_negative_one_forest(&self) -> bool {
        let mut edges_in = vec![0usize; self.nodes];
        let mut uf = UnionFind::new(self.nodes);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        for e in &self.edges {
            edges_in[uf.find(e.u)] += 1;
        }
        self.balanced_components().iter().all(|(comp, balanced)| {
            let root = uf.find(comp[0]);
            !balanced && edges_in[root] == comp.len()
        })
    }
}

impl fmt::Display for SignedGraph {
    /// The text format: node count, then one `i j ±` line per edge.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.nodes)?;
        for e in &self.edges {
            writeln!(f, "{} {} {}", e.u + 1, e.v + 1, e.sign.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for SignedGraph {
    type Err = Error;

    /// Parses the text format. Blank lines and `#` comments are skipped.
    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line, msg: String| Error::Parse { line, msg };
        let (line, head) = lines.next().ok_or_else(|| err(0, "missing node count".into()))?;
        let nodes: usize = head.parse().map_err(|e| err(line, format!("node count {head:?}: {e}")))?;
        let mut edges = Vec::new();
        for (line, text) in lines {
            let toks: Vec<&str> = text.split_whitespace().collect();
            let [i, j, sign] = toks[..] else {
                return Err(err(line, format!("expected `i j +|-`, got {text:?}")));
            };
            let idx = |t: &str| -> Result<usize> {
                let v: usize = t.parse().map_err(|e| err(line, format!("node {t:?}: {e}")))?;
                if v == 0 || v > nodes {
                    return Err(err(line, format!("node {v} out of range 1..={nodes}")));
                }
                Ok(v - 1)
            };
            let sign = match sign {
                "+" => Sign::Pos,
                "-" | "−" => Sign::Neg,
                other => return Err(err(line, format!("sign {other:?}"))),
            };
            let (u, v) = (idx(i)?, idx(j)?);
            if u == v {
                return Err(err(line, format!("loop at node {}", u + 1)));
            }
            edges.push(Edge { u, v, sign });
        }
        SignedGraph::new(nodes, edges)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: Vec<Vec<i8>>,
    cols: usize,
}

impl IncidenceMatrix {
    pub fn from_rows(rows: Vec<Vec<i8>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        IncidenceMatrix { rows, cols }
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn column(&self, k: usize) -> Vec<i8> {
        self.rows.iter().map(|r| r[k]).collect()
    }

    pub fn to_rational(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|r| r.iter().map(|&v| int(v as i64)).collect()).collect()
    }

    pub fn exact_rank(&self) -> usize {
        if self.cols == 0 {
            return 0;
        }
        linalg::rank(&self.to_rational())
    }

    pub fn determinant(&self) -> Rational {
        linalg::determinant(&self.to_rational())
    }
}

/// Bipartite graph of positive cliques (left) against negative cliques
/// (right), with one edge per original node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueGraph {
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
    /// `edges[i] = (k, l)`: node `i` lies in `left[k]` and `right[l]`.
    pub edges: Vec<(usize, usize)>,
}

impl CliqueGraph {
    /// Builds a clique graph straight from its edge list.
    pub fn from_edges(left: usize, right: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut l = vec![Vec::new(); left];
        let mut r = vec![Vec::new(); right];
        for (i, &(k, m)) in edges.iter().enumerate() {
            l[k].push(i);
            r[m].push(i);
        }
        CliqueGraph { left: l, right: r, edges }
    }

    pub fn node_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Exchanges the roles of the two sides.
    pub fn swapped(&self) -> CliqueGraph {
        CliqueGraph {
            left: self.right.clone(),
            right: self.left.clone(),
            edges: self.edges.iter().map(|&(k, l)| (l, k)).collect(),
        }
    }

    /// `±C`: each edge `v_i` becomes a positive edge `v_i^x` and a negative
    /// edge `v_i^y`. Left cliques are nodes `0..left`, right cliques follow.
    /// All `x` edges come first (edge `i`), then all `y` edges (edge `q + i`).
    pub fn double_signed(&self) -> SignedGraph {
        let off = self.left.len();
        let mut edges: Vec<Edge> =
            self.edges.iter().map(|&(k, l)| Edge { u: k, v: off + l, sign: Sign::Pos }).collect();
        edges.extend(self.edges.iter().map(|&(k, l)| Edge { u: k, v: off + l, sign: Sign::Neg }));
        SignedGraph { nodes: self.node_count(), edges }
    }
}

impl fmt::Display for CliqueGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |set: &Vec<usize>| set.iter().map(|v| format!("v{}", v + 1)).collect::<Vec<_>>().join(",");
        for (k, a) in self.left.iter().enumerate() {
            writeln!(f, "A{} = {{{}}}", k + 1, names(a))?;
        }
        for (l, b) in self.right.iter().enumerate() {
            writeln!(f, "B{} = {{{}}}", l + 1, names(b))?;
        }
        for (i, (k, l)) in self.edges.iter().enumerate() {
            writeln!(f, "v{}: A{} - B{}", i + 1, k + 1, l + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use Sign::{Neg, Pos};

    fn digon(a: Sign, b: Sign) -> SignedGraph {
        SignedGraph::from_edges(2, &[(0, 1, a), (0, 1, b)])
    }

    #[test]
    fn components_examples() {
        assert_eq!(SignedGraph::empty(3).component_count(), 3);
        let path = SignedGraph::from_edges(3, &[(0, 1, Pos), (1, 2, Neg)]);
        assert_eq!(path.component_count(), 1);
        assert_eq!(SignedGraph::from_edges(4, &[(0, 1, Pos)]).component_count(), 3);
    }

    #[test]
    fn rank_examples() {
        let tree = SignedGraph::from_edges(3, &[(0, 1, Pos), (1, 2, Pos)]);
        assert_eq!(tree.rank(), 2);
        let d = digon(Pos, Neg);
        assert_eq!(d.rank(), 2);
        assert_eq!(d.incidence_matrix().exact_rank(), 2);
        assert_eq!(SignedGraph::from_edges(2, &[(0, 1, Neg)]).rank(), 1);
        // negative triangle: one negative edge
        let tri = SignedGraph::from_edges(3, &[(0, 1, Pos), (1, 2, Pos), (0, 2, Neg)]);
        assert_eq!(tri.balanced_count(), 0);
        assert_eq!(tri.rank(), 3);
        // two negatives make the triangle positive
        let tri = SignedGraph::from_edges(3, &[(0, 1, Neg), (1, 2, Pos), (0, 2, Neg)]);
        assert_eq!(tri.rank(), 2);
    }

    #[test]
    fn incidence_examples() {
        let m = SignedGraph::from_edges(2, &[(1, 0, Pos)]).incidence_matrix();
        assert_eq!(m.column(0), vec![1, -1]);
        let m = SignedGraph::from_edges(2, &[(0, 1, Neg)]).incidence_matrix();
        assert_eq!(m.column(0), vec![1, 1]);
        let m = SignedGraph::empty(3).incidence_matrix();
        assert_eq!((m.row_count(), m.col_count()), (3, 0));
        assert_eq!(m.exact_rank(), 0);
    }

    #[test]
    fn clique_examples() {
        let (a, b) = SignedGraph::empty(1).signed_cliques();
        assert_eq!((a, b), (vec![vec![0]], vec![vec![0]]));
        let g = SignedGraph::from_edges(3, &[(0, 1, Pos), (1, 2, Neg)]);
        let (a, b) = g.signed_cliques();
        assert_eq!(a, vec![vec![0, 1], vec![2]]);
        assert_eq!(b, vec![vec![0], vec![1, 2]]);
        let c = g.clique_graph();
        assert_eq!((c.left.len(), c.right.len(), c.edges.len()), (2, 2, 3));
        assert_eq!(c.edges, vec![(0, 0), (0, 1), (1, 1)]);
        let c1 = SignedGraph::empty(1).clique_graph();
        assert_eq!(c1.edges, vec![(0, 0)]);
    }

    #[test]
    fn signed_trees_have_q_plus_one_cliques() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in 1..=10 {
            let t = SignedGraph::random_tree(&mut rng, q);
            let (a, b) = t.signed_cliques();
            assert_eq!(a.len() + b.len(), q + 1);
            assert!(t.is_irredundant());
            assert_eq!(t.irredundant_reduction(), t);
        }
    }

    #[test]
    fn reduction_examples() {
        let tri = SignedGraph::from_edges(3, &[(0, 1, Pos), (1, 2, Pos), (0, 2, Pos)]);
        assert_eq!(tri.irredundant_reduction().edge_count(), 2);
        let full = SignedGraph::complete_link(3);
        assert_eq!(full.edge_count(), 6);
        let r = full.irredundant_reduction();
        assert_eq!(r.edge_count(), 4);
        assert_eq!(r.part(Pos).component_count(), 1);
        assert_eq!(r.part(Neg).component_count(), 1);
    }

    #[test]
    fn one_forest_examples() {
        assert!(digon(Pos, Neg).is_negative_one_forest());
        assert!(!digon(Pos, Pos).is_negative_one_forest());
        let tree = SignedGraph::from_edges(3, &[(0, 1, Neg), (1, 2, Pos)]);
        assert!(!tree.is_negative_one_forest());
        // a negative digon plus an isolated node is not spanning
        let g = SignedGraph::from_edges(3, &[(0, 1, Pos), (0, 1, Neg)]);
        assert!(!g.is_negative_one_forest());
        // negative triangle with a pendant edge: one negative circle
        let g = SignedGraph::from_edges(4, &[(0, 1, Pos), (1, 2, Pos), (0, 2, Neg), (2, 3, Pos)]);
        assert!(g.is_negative_one_forest());
        assert_ne!(g.incidence_matrix().determinant(), int(0));
    }

    #[test]
    fn cyclomatic_examples() {
        assert_eq!(SignedGraph::random_tree(&mut ChaCha8Rng::seed_from_u64(1), 6).cyclomatic(), 0);
        assert_eq!(digon(Pos, Neg).cyclomatic(), 1);
        let two_triangles =
            SignedGraph::from_edges(6, &[(0, 1, Pos), (1, 2, Pos), (0, 2, Neg), (3, 4, Neg), (4, 5, Neg), (3, 5, Neg)]);
        assert_eq!(two_triangles.cyclomatic(), 2);
    }

    #[test]
    fn double_signing() {
        let c = CliqueGraph::from_edges(1, 1, vec![(0, 0)]);
        let d = c.double_signed();
        assert_eq!(d, digon(Pos, Neg));
        let empty = CliqueGraph::from_edges(0, 0, vec![]);
        assert_eq!(empty.double_signed(), SignedGraph::empty(0));
    }

    #[test]
    fn text_format() {
        let g: SignedGraph = "# a tree\n3\n1 2 +\n2 3 -\n".parse().unwrap();
        assert_eq!(g, SignedGraph::from_edges(3, &[(0, 1, Pos), (1, 2, Neg)]));
        assert_eq!(g.to_string().parse::<SignedGraph>().unwrap(), g);
        assert!("2\n1 1 +".parse::<SignedGraph>().is_err());
        assert!("2\n1 3 +".parse::<SignedGraph>().is_err());
        assert!("2\n1 2 *".parse::<SignedGraph>().is_err());
        assert!(matches!("x".parse::<SignedGraph>(), Err(Error::Parse { line: 1, .. })));
    }

    mod props {
        use super::*;
        use num_traits::Signed;
        use proptest::prelude::*;

        fn arb_graph() -> impl Strategy<Value = SignedGraph> {
            (1usize..=8).prop_flat_map(|q| {
                let edge = (0..q, 0..q, any::<bool>());
                proptest::collection::vec(edge, 0..=20).prop_map(move |es| {
                    let edges = es
                        .into_iter()
                        .filter(|(u, v, _)| u != v)
                        .map(|(u, v, s)| Edge { u, v, sign: if s { Pos } else { Neg } })
                        .collect();
                    SignedGraph::new(q, edges).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn rank_formula_matches_incidence_rank(g in arb_graph()) {
                prop_assert_eq!(g.rank(), g.incidence_matrix().exact_rank());
            }

            #[test]
            fn incidence_columns_follow_sign_rule(g in arb_graph()) {
                let m = g.incidence_matrix();
                for (k, e) in g.edges().iter().enumerate() {
                    let col = m.column(k);
                    prop_assert_eq!(col.iter().filter(|&&x| x != 0).count(), 2);
                    prop_assert_eq!(col[e.u] * col[e.v], -e.sign.value());
                }
            }

            #[test]
            fn clique_count_identity(g in arb_graph()) {
                let q = g.node_count();
                let (a, b) = g.signed_cliques();
                prop_assert_eq!(a.len() + b.len(), 2 * q - g.part(Pos).graphic_rank() - g.part(Neg).graphic_rank());
                let c = g.clique_graph();
                prop_assert_eq!(c.edges.len(), q);
                for v in 0..q {
                    prop_assert_eq!(a.iter().filter(|s| s.contains(&v)).count(), 1);
                    prop_assert_eq!(b.iter().filter(|s| s.contains(&v)).count(), 1);
                }
            }

            #[test]
            fn reduction_preserves_cliques(g in arb_graph()) {
                let r = g.irredundant_reduction();
                let (a, b) = g.signed_cliques();
                prop_assert_eq!(r.signed_cliques(), (a.clone(), b.clone()));
                prop_assert_eq!(r.edge_count(), 2 * g.node_count() - a.len() - b.len());
                prop_assert!(r.is_irredundant());
            }

            #[test]
            fn square_one_forest_iff_nonsingular(g in arb_graph()) {
                if g.edge_count() == g.node_count() {
                    let det = g.incidence_matrix().determinant();
                    prop_assert_eq!(g.is_negative_one_forest(), det != int(0));
                    if g.is_negative_one_forest() {
                        // |det| = 2^(number of components)
                        let expect = 1i64 << g.component_count();
                        prop_assert_eq!(det.abs(), int(expect));
                    }
                }
            }
        }
    }
}
