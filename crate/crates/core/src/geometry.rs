//! The bishops move arrangement in `R^{2q}`: codimension through signed-graph
//! ranks, exhaustive lattice-vertex enumeration on the unit cube, and the
//! clique-graph solve that explains why every such vertex is half-integral.
//!
//! Public point and normal vectors are interleaved, `(x_1, y_1, …, x_q, y_q)`.
//! The clique-graph solve works internally in block order `(x_1..x_q, y_1..y_q)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{self, Solution};
use crate::rational::{self, int, Rational};
use crate::signed_graph::{CliqueGraph, Edge, IncidenceMatrix, Sign, SignedGraph, UnionFind};

pub const DEFAULT_VERTEX_BOUND: usize = 3;
pub const DEFAULT_MATROID_BOUND: usize = 4;

/// `H⁺_ij: x_i − y_i = x_j − y_j` or `H⁻_ij: x_i + y_i = x_j + y_j`, with
/// 0-based `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BishopHyperplane {
    i: usize,
    j: usize,
    sign: Sign,
}

impl BishopHyperplane {
    pub fn new(a: usize, b: usize, sign: Sign) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidArgument(format!("hyperplane needs two pieces, got {a} twice")));
        }
        Ok(BishopHyperplane { i: a.min(b), j: a.max(b), sign })
    }

    pub fn pieces(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }
}

impl fmt::Display for BishopHyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Pos => '+',
            Sign::Neg => '-',
        };
        write!(f, "H{s}({},{})", self.i + 1, self.j + 1)
    }
}

/// All `2·C(q,2)` bishops hyperplanes, `H⁺_ij` before `H⁻_ij`, pairs in
/// lexicographic order.
pub fn arrangement(q: usize) -> Vec<BishopHyperplane> {
    let mut out = Vec::with_capacity(q * q.saturating_sub(1));
    for i in 0..q {
        for j in i + 1..q {
            out.push(BishopHyperplane { i, j, sign: Sign::Pos });
            out.push(BishopHyperplane { i, j, sign: Sign::Neg });
        }
    }
    out
}

/// Coefficient vector of the hyperplane's equation, interleaved order.
pub fn hyperplane_normal(h: &BishopHyperplane, q: usize) -> Vec<i64> {
    assert!(h.j < q, "hyperplane {h} does not fit q = {q}");
    let mut v = vec![0; 2 * q];
    let s = h.sign.value() as i64;
    v[2 * h.i] = 1;
    v[2 * h.i + 1] = -s;
    v[2 * h.j] = -1;
    v[2 * h.j + 1] = s;
    v
}

/// The signed graph with one edge per hyperplane.
pub fn signed_graph_of(hs: &[BishopHyperplane], q: usize) -> SignedGraph {
    let edges = hs.iter().map(|h| Edge { u: h.i, v: h.j, sign: h.sign }).collect();
    SignedGraph::new(q, edges).expect("hyperplane indices within q")
}

fn normals_matrix(hs: &[BishopHyperplane], q: usize) -> Vec<Vec<Rational>> {
    hs.iter().map(|h| hyperplane_normal(h, q).into_iter().map(int).collect()).collect()
}

/// Codimension of `⋂ hs`, computed both as the exact rank of the stacked
/// normals and as `rk(Σ⁺) + rk(Σ⁻)`.
///
/// # Panics
///
/// If the two computations disagree.
pub fn codim_of_subset(hs: &[BishopHyperplane], q: usize) -> usize {
    let by_matrix = if hs.is_empty() { 0 } else { linalg::rank(&normals_matrix(hs, q)) };
    let g = signed_graph_of(hs, q);
    let by_graph = g.part(Sign::Pos).graphic_rank() + g.part(Sign::Neg).graphic_rank();
    assert_eq!(by_matrix, by_graph, "matrix codimension {by_matrix} != rk(Σ⁺) + rk(Σ⁻) = {by_graph} for {hs:?}");
    by_matrix
}

/// The intersection subspace of a set of bishops hyperplanes, described by
/// the signed graph of all hyperplanes containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BishopsSubspace {
    graph: SignedGraph,
}

impl BishopsSubspace {
    /// Closes `hs` under containment: `H^ε_ij ⊇ U` iff `i` and `j` share an
    /// `ε`-clique.
    pub fn from_hyperplanes(hs: &[BishopHyperplane], q: usize) -> Self {
        let g = signed_graph_of(hs, q);
        let (pos, neg) = g.signed_cliques();
        let mut edges = Vec::new();
        for (cliques, sign) in [(pos, Sign::Pos), (neg, Sign::Neg)] {
            for c in cliques {
                for (a, &u) in c.iter().enumerate() {
                    for &v in &c[a + 1..] {
                        edges.push(Edge { u, v, sign });
                    }
                }
            }
        }
        edges.sort();
        BishopsSubspace { graph: SignedGraph::new(q, edges).expect("valid") }
    }

    pub fn graph(&self) -> &SignedGraph {
        &self.graph
    }

    pub fn hyperplanes(&self) -> Vec<BishopHyperplane> {
        self.graph.edges().iter().map(|e| BishopHyperplane { i: e.u, j: e.v, sign: e.sign }).collect()
    }

    /// `|Α(Σ(U))| + |Β(Σ(U))|`.
    pub fn dim(&self) -> usize {
        let (a, b) = self.graph.signed_cliques();
        a.len() + b.len()
    }

    pub fn codim(&self) -> usize {
        codim_of_subset(&self.hyperplanes(), self.graph.node_count())
    }
}

/// Checks, for every subset of the arrangement, that its codimension is the
/// sum of the cycle-matroid ranks of its positive and negative edges in `K_q`.
pub fn matroid_check(q: usize, bound: usize, exec: Exec) -> Result<bool> {
    if q > bound {
        return Err(Error::BoundExceeded { q, bound });
    }
    let all = arrangement(q);
    let m = all.len();
    let cycle_rank = |edges: &mut dyn Iterator<Item = (usize, usize)>| {
        let mut uf = UnionFind::new(q);
        edges.filter(|&(a, b)| uf.union(a, b)).count()
    };
    let masks: Vec<u64> = (0..1u64 << m).collect();
    let ok = exec.map(masks, |mask| {
        let subset: Vec<BishopHyperplane> = (0..m).filter(|k| mask >> k & 1 == 1).map(|k| all[k]).collect();
        let codim = codim_of_subset(&subset, q);
        let of_sign = |s: Sign| subset.iter().filter(move |h| h.sign == s).map(|h| (h.i, h.j));
        codim == cycle_rank(&mut of_sign(Sign::Pos)) + cycle_rank(&mut of_sign(Sign::Neg))
    });
    Ok(ok.into_iter().all(|b| b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    X(usize),
    Y(usize),
}

impl Coord {
    pub fn piece(self) -> usize {
        match self {
            Coord::X(i) | Coord::Y(i) => i,
        }
    }

    /// Position in the interleaved vector.
    pub fn interleaved(self) -> usize {
        match self {
            Coord::X(i) => 2 * i,
            Coord::Y(i) => 2 * i + 1,
        }
    }

    fn all(q: usize) -> Vec<Coord> {
        (0..q).flat_map(|i| [Coord::X(i), Coord::Y(i)]).collect()
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::X(i) => write!(f, "x_{}", i + 1),
            Coord::Y(i) => write!(f, "y_{}", i + 1),
        }
    }
}

/// `x_i = c` or `y_i = d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fixation {
    pub coord: Coord,
    pub value: Rational,
}

impl Fixation {
    pub fn new(coord: Coord, value: impl Into<BigInt>) -> Self {
        Fixation { coord, value: Rational::from_integer(value.into()) }
    }
}

impl fmt::Display for Fixation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.coord, self.value)
    }
}

/// A point of `R^{2q}` together with one set of equations that determines it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeVertex {
    pub point: Vec<Rational>,
    pub hyperplanes: Vec<BishopHyperplane>,
    pub fixations: Vec<Fixation>,
}

impl LatticeVertex {
    pub fn q(&self) -> usize {
        self.point.len() / 2
    }

    pub fn defining_set(&self) -> String {
        self.hyperplanes
            .iter()
            .map(ToString::to_string)
            .chain(self.fixations.iter().map(ToString::to_string))
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// Checks that the defining equations have this point as unique solution.
    pub fn is_determined(&self) -> bool {
        let q = self.q();
        let mut rows = normals_matrix(&self.hyperplanes, q);
        let mut rhs = vec![Rational::zero(); rows.len()];
        for fx in &self.fixations {
            let mut r = vec![Rational::zero(); 2 * q];
            r[fx.coord.interleaved()] = Rational::one();
            rows.push(r);
            rhs.push(fx.value.clone());
        }
        rows.len() == 2 * q && linalg::solve(&rows, &rhs) == Solution::Unique(self.point.clone())
    }
}

#[derive(Serialize)]
struct VertexJson {
    point: Vec<String>,
    defining_set: String,
}

pub fn vertices_to_json(vs: &[LatticeVertex]) -> serde_json::Value {
    let list: Vec<VertexJson> = vs
        .iter()
        .map(|v| VertexJson {
            point: v.point.iter().map(rational::to_string).collect(),
            defining_set: v.defining_set(),
        })
        .collect();
    serde_json::to_value(list).expect("serializes")
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// All points of `[0,1]^{2q}` that are the unique solution of `k` bishops
/// equations and `2q − k` cube-facet fixations (`x_i, y_i ∈ {0,1}`),
/// sorted by point. Each vertex keeps the first defining set found in
/// enumeration order.
pub fn enumerate_lattice_vertices(q: usize, bound: usize, exec: Exec) -> Result<Vec<LatticeVertex>> {
    if q > bound {
        return Err(Error::BoundExceeded { q, bound });
    }
    let dim = 2 * q;
    let all = arrangement(q);
    let coords = Coord::all(q);

    // Independent hyperplane subsets of size ≤ 2q; a dependent subset can
    // never be completed to a nonsingular system.
    let subsets: Vec<Vec<usize>> = (0..=dim.min(all.len()))
        .flat_map(|k| combinations(all.len(), k))
        .filter(|s| {
            s.is_empty() || {
                let hs: Vec<_> = s.iter().map(|&k| all[k]).collect();
                linalg::rank(&normals_matrix(&hs, q)) == s.len()
            }
        })
        .collect();

    let found = exec.map(subsets, |subset| {
        let hs: Vec<BishopHyperplane> = subset.iter().map(|&k| all[k]).collect();
        let normals = normals_matrix(&hs, q);
        let free = dim - hs.len();
        let mut out = Vec::new();
        for fixed in combinations(dim, free) {
            let mut rows = normals.clone();
            for &c in &fixed {
                let mut r = vec![Rational::zero(); dim];
                r[coords[c].interleaved()] = Rational::one();
                rows.push(r);
            }
            let Some(inv) = linalg::inverse(&rows) else { continue };
            // point = inv · (0, …, 0, values); only the fixation columns matter
            for bits in 0u32..1 << free {
                let point: Vec<Rational> = (0..dim)
                    .map(|r| {
                        (0..free)
                            .filter(|t| bits >> t & 1 == 1)
                            .fold(Rational::zero(), |acc, t| acc + &inv[r][hs.len() + t])
                    })
                    .collect();
                if point.iter().all(|v| *v >= Rational::zero() && *v <= Rational::one()) {
                    let fixations = fixed
                        .iter()
                        .enumerate()
                        .map(|(t, &c)| Fixation::new(coords[c], (bits >> t & 1) as i64))
                        .collect();
                    out.push(LatticeVertex { point, hyperplanes: hs.clone(), fixations });
                }
            }
        }
        out
    });

    let mut merged: BTreeMap<Vec<Rational>, LatticeVertex> = BTreeMap::new();
    for v in found.into_iter().flatten() {
        merged.entry(v.point.clone()).or_insert(v);
    }
    Ok(merged.into_values().collect())
}

/// Every coordinate has denominator 1 or 2, and within each `z_i` both
/// coordinates are integers or both are strict half-integers.
pub fn verify_half_integrality(vs: &[LatticeVertex]) -> bool {
    vs.iter().all(|v| point_is_half_integral(&v.point))
}

pub fn point_is_half_integral(point: &[Rational]) -> bool {
    point.chunks(2).all(|z| {
        let (x, y) = (&z[0], &z[1]);
        (x.is_integer() && y.is_integer()) || (rational::is_strict_half(x) && rational::is_strict_half(y))
    })
}

pub fn denominator_lcm(vs: &[LatticeVertex]) -> BigInt {
    vs.iter().flat_map(|v| v.point.iter()).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Lcm of vertex denominators; the counting quasipolynomial's period divides it.
pub fn period_upper_bound(q: usize, bound: usize, exec: Exec) -> Result<BigInt> {
    Ok(denominator_lcm(&enumerate_lattice_vertices(q, bound, exec)?))
}

/// Intermediate record of a clique-graph solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSolve {
    /// Interleaved `(x_1, y_1, …)`.
    pub point: Vec<Rational>,
    /// `x_i + y_i` on each left clique.
    pub a: Vec<BigInt>,
    /// `y_i − x_i` on each right clique.
    pub b: Vec<BigInt>,
    /// The fixation edges of `±C` as a signed graph on the clique nodes.
    pub psi: SignedGraph,
    /// `Η(Ψ)`: rows are cliques (left then right), columns are fixations.
    pub m: IncidenceMatrix,
}

impl CliqueSolve {
    /// Nodes `i` whose `z_i` came out integral.
    pub fn integral_nodes(&self) -> Vec<usize> {
        (0..self.point.len() / 2)
            .filter(|&i| self.point[2 * i].is_integer() && self.point[2 * i + 1].is_integer())
            .collect()
    }
}

fn fixation_edge(coord: Coord, q: usize) -> usize {
    match coord {
        Coord::X(i) => i,
        Coord::Y(i) => q + i,
    }
}

/// The fixation subgraph `Ψ ⊆ ±C` selected by a list of fixation coordinates,
/// in fixation order.
pub fn fixation_graph(cg: &CliqueGraph, coords: &[Coord]) -> Result<SignedGraph> {
    let q = cg.edges.len();
    let doubled = cg.double_signed();
    let edges = coords
        .iter()
        .map(|c| {
            if c.piece() >= q {
                return Err(Error::InvalidArgument(format!("fixation {c} outside {q} nodes")));
            }
            Ok(doubled.edges()[fixation_edge(*c, q)])
        })
        .collect::<Result<Vec<_>>>()?;
    SignedGraph::new(cg.node_count(), edges)
}

/// Solves `Mᵀ w = v` for the incidence matrix `M` of a signed graph.
/// Returns `None` unless `M` is square and nonsingular.
pub fn solve_transposed_incidence(m: &IncidenceMatrix, v: &[Rational]) -> Option<Vec<Rational>> {
    if m.row_count() != m.col_count() || v.len() != m.col_count() {
        return None;
    }
    let mt = linalg::transpose(&m.to_rational());
    if mt.is_empty() {
        return Some(Vec::new());
    }
    match linalg::solve(&mt, v) {
        Solution::Unique(w) => Some(w),
        _ => None,
    }
}

/// Solves the fixation system on a clique graph whose left cliques carry
/// `a = x + y` and right cliques carry `b = y − x`.
///
/// The fixations select edges of `±C` (`x_i` the positive edge `v_i^x`,
/// `y_i` the negative edge `v_i^y`); they must form a spanning negative
/// 1-forest, which makes `M = Η(Ψ)` nonsingular. Then `Mᵀ(a;b) = 2(c;d)`
/// and `(x;y) = ½·Η(±C)ᵀ(a;b)`.
pub fn solve_on_clique_graph(cg: &CliqueGraph, fixations: &[Fixation]) -> Result<CliqueSolve> {
    if let Some(f) = fixations.iter().find(|f| !f.value.is_integer()) {
        return Err(Error::NonIntegerFixation(rational::to_string(&f.value)));
    }
    let q = cg.edges.len();
    let coords: Vec<Coord> = fixations.iter().map(|f| f.coord).collect();
    let psi = fixation_graph(cg, &coords)?;
    if !psi.is_negative_one_forest() {
        return Err(Error::SingularFixation);
    }
    let m = psi.incidence_matrix();
    let rhs: Vec<Rational> = fixations.iter().map(|f| &f.value * int(2)).collect();
    let w = solve_transposed_incidence(&m, &rhs).expect("negative 1-forest has a nonsingular incidence matrix");
    let integral = |v: &Rational| {
        assert!(v.is_integer(), "clique value {v} is not integral");
        v.to_integer()
    };
    let left = cg.left.len();
    let a: Vec<BigInt> = w[..left].iter().map(integral).collect();
    let b: Vec<BigInt> = w[left..].iter().map(integral).collect();

    // (x; y) = ½ Η(±C)ᵀ (a; b), block order
    let doubled = cg.double_signed().incidence_matrix();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let block: Vec<Rational> = (0..2 * q)
        .map(|e| {
            let col = doubled.column(e);
            let s = col.iter().zip(&w).fold(Rational::zero(), |acc, (&c, wv)| acc + wv * int(c as i64));
            s * &half
        })
        .collect();
    let point = (0..q).flat_map(|i| [block[i].clone(), block[q + i].clone()]).collect();
    Ok(CliqueSolve { point, a, b, psi, m })
}

/// The linear map `(c; d) ↦ (x; y) = Η(±C)ᵀ (M⁻¹)ᵀ (c; d)` from fixation
/// values to the block-ordered point, as a `2q × #fixations` matrix.
pub fn determination_matrix(cg: &CliqueGraph, coords: &[Coord]) -> Result<Vec<Vec<Rational>>> {
    let psi = fixation_graph(cg, coords)?;
    if !psi.is_negative_one_forest() {
        return Err(Error::SingularFixation);
    }
    let m_inv = linalg::inverse(&psi.incidence_matrix().to_rational()).ok_or(Error::SingularFixation)?;
    let ht = linalg::transpose(&cg.double_signed().incidence_matrix().to_rational());
    Ok(linalg::mul(&ht, &linalg::transpose(&m_inv)))
}

/// Solves for the point fixed by `fixations` inside the subspace given by the
/// signed graph `s` (positive edge: `x_i − y_i = x_j − y_j`; negative edge:
/// `x_i + y_i = x_j + y_j`).
///
/// `x + y` is constant on negative cliques and `y − x` on positive cliques,
/// so the negative cliques take the `a` side of the clique graph.
pub fn solve_via_clique_graph(s: &SignedGraph, fixations: &[Fixation]) -> Result<CliqueSolve> {
    let cg = s.clique_graph().swapped();
    let solved = solve_on_clique_graph(&cg, fixations)?;
    let q = s.node_count();
    let hs: Vec<BishopHyperplane> =
        s.edges().iter().map(|e| BishopHyperplane { i: e.u.min(e.v), j: e.u.max(e.v), sign: e.sign }).collect();
    for h in &hs {
        let lhs =
            hyperplane_normal(h, q).iter().zip(&solved.point).fold(Rational::zero(), |acc, (&c, p)| acc + p * int(c));
        assert!(lhs.is_zero(), "solution violates {h}");
    }
    for f in fixations {
        assert_eq!(solved.point[f.coord.interleaved()], f.value, "solution violates {f}");
    }
    Ok(solved)
}

/// Parses the signed-graph text format extended with `fix x_i = v` /
/// `fix y_i = v` lines.
pub fn parse_fixture(text: &str) -> Result<(SignedGraph, Vec<Fixation>)> {
    let mut graph_lines = Vec::new();
    let mut fixations = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        let Some(rest) = body.strip_prefix("fix") else {
            graph_lines.push(line);
            continue;
        };
        graph_lines.push("");
        let err = |msg: String| Error::Parse { line: n + 1, msg };
        let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err(format!("expected `fix x_i = v`, got {body:?}")))?;
        let lhs = lhs.trim();
        let (axis, idx) = lhs.split_once('_').ok_or_else(|| err(format!("coordinate {lhs:?}")))?;
        let i: usize = idx.trim().parse().map_err(|e| err(format!("index {idx:?}: {e}")))?;
        if i == 0 {
            return Err(err("coordinates are 1-based".into()));
        }
        let coord = match axis.trim() {
            "x" => Coord::X(i - 1),
            "y" => Coord::Y(i - 1),
            other => return Err(err(format!("axis {other:?}"))),
        };
        let value = rational::parse(rhs).map_err(|_| err(format!("value {:?}", rhs.trim())))?;
        fixations.push(Fixation { coord, value });
    }
    let graph: SignedGraph = graph_lines.join("\n").parse()?;
    if let Some(f) = fixations.iter().find(|f| f.coord.piece() >= graph.node_count()) {
        return Err(Error::InvalidArgument(format!("fixation {f} outside {} nodes", graph.node_count())));
    }
    Ok((graph, fixations))
}
