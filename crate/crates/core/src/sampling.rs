//! Random instances for the property checks shared by the test suites and
//! the `selfcheck` subcommand.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::geometry::{self, Coord, Fixation};
use crate::rational::Rational;
use crate::signed_graph::{Edge, Sign, SignedGraph};

/// Whether `g` can still be extended to a spanning negative 1-forest: every
/// component has at most as many edges as nodes, and a component with equal
/// counts is unbalanced.
fn is_negative_one_subforest(g: &SignedGraph) -> bool {
    let comps = g.balanced_components();
    let mut owner = vec![0; g.node_count()];
    for (c, (nodes, _)) in comps.iter().enumerate() {
        nodes.iter().for_each(|&v| owner[v] = c);
    }
    let mut edges = vec![0usize; comps.len()];
    g.edges().iter().for_each(|e| edges[owner[e.u]] += 1);
    comps.iter().zip(&edges).all(|((nodes, balanced), &m)| m < nodes.len() || (m == nodes.len() && !balanced))
}

/// Greedily picks edges of `candidates` in random order while the selection
/// stays a negative 1-subforest. Returns indices into `candidates`.
pub fn random_negative_one_forest_in<R: Rng + ?Sized>(rng: &mut R, nodes: usize, candidates: &[Edge]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.shuffle(rng);
    let mut chosen: Vec<usize> = Vec::new();
    for k in order {
        let mut edges: Vec<Edge> = chosen.iter().map(|&c| candidates[c]).collect();
        edges.push(candidates[k]);
        let g = SignedGraph::new(nodes, edges).expect("candidate edges are valid");
        if is_negative_one_subforest(&g) {
            chosen.push(k);
        }
    }
    chosen
}

/// A random spanning negative 1-forest on `nodes ≥ 1` nodes, drawn from a
/// random multigraph that contains a negative digon on every consecutive pair.
pub fn random_negative_one_forest<R: Rng + ?Sized>(rng: &mut R, nodes: usize) -> SignedGraph {
    assert!(nodes >= 2, "a 1-forest needs at least two nodes without loops");
    let mut pool = SignedGraph::random(rng, nodes, 3 * nodes).edges().to_vec();
    for u in 0..nodes - 1 {
        pool.push(Edge { u, v: u + 1, sign: Sign::Pos });
        pool.push(Edge { u, v: u + 1, sign: Sign::Neg });
    }
    let pick = random_negative_one_forest_in(rng, nodes, &pool);
    let g = SignedGraph::new(nodes, pick.into_iter().map(|k| pool[k]).collect()).expect("valid");
    debug_assert!(g.is_negative_one_forest());
    g
}

/// A random clique-graph solve instance: a signed graph on `q` nodes with at
/// most `max_cliques` signed cliques and a valid fixation set with integer
/// values in `-range..=range`.
pub fn random_solve_instance<R: Rng + ?Sized>(
    rng: &mut R,
    max_cliques: usize,
    range: i64,
) -> (SignedGraph, Vec<Fixation>) {
    loop {
        let q = rng.gen_range(1..=max_cliques.max(2) - 1);
        let m = if q >= 2 { rng.gen_range(0..=2 * q) } else { 0 };
        let s = SignedGraph::random(rng, q, m);
        let (a, b) = s.signed_cliques();
        if a.len() + b.len() > max_cliques {
            continue;
        }
        let cg = s.clique_graph().swapped();
        let doubled = cg.double_signed();
        let pick = random_negative_one_forest_in(rng, cg.node_count(), doubled.edges());
        let fixations = pick
            .into_iter()
            .map(|e| {
                let coord = if e < q { Coord::X(e) } else { Coord::Y(e - q) };
                Fixation { coord, value: Rational::from_integer(BigInt::from(rng.gen_range(-range..=range))) }
            })
            .collect();
        return (s, fixations);
    }
}

/// A random nonsingular square signed incidence matrix with a random
/// integer right-hand side, as `(graph, v)`.
pub fn random_incidence_system<R: Rng + ?Sized>(
    rng: &mut R,
    max_nodes: usize,
    range: i64,
) -> (SignedGraph, Vec<BigInt>) {
    let nodes = rng.gen_range(2..=max_nodes.max(2));
    let g = random_negative_one_forest(rng, nodes);
    let v = (0..nodes).map(|_| BigInt::from(rng.gen_range(-range..=range))).collect();
    (g, v)
}

/// Checks one clique-graph solve instance: equations and fixations hold,
/// clique values are integers, and each `z_i` is integral or a pair of
/// strict half-integers. Panics inside the solver signal a violated invariant.
pub fn check_solve_instance(s: &SignedGraph, fixations: &[Fixation]) -> bool {
    match geometry::solve_via_clique_graph(s, fixations) {
        Ok(r) => geometry::point_is_half_integral(&r.point),
        Err(_) => false,
    }
}

/// Solves `Mᵀw = v` and `Mᵀw = 2v`; the first must be weakly half-integral
/// and the second integral.
pub fn check_incidence_system(g: &SignedGraph, v: &[BigInt]) -> bool {
    let m = g.incidence_matrix();
    let as_rat = |k: i64| -> Vec<Rational> { v.iter().map(|x| Rational::from_integer(x * BigInt::from(k))).collect() };
    let (Some(w), Some(w2)) =
        (geometry::solve_transposed_incidence(&m, &as_rat(1)), geometry::solve_transposed_incidence(&m, &as_rat(2)))
    else {
        return false;
    };
    w.iter().all(crate::rational::is_weak_half) && w2.iter().all(|x| x.is_integer())
}
