//! Densities, maximum subgraph density and (strict) balancedness.
//!
//! Only induced subgraphs need to be enumerated: deleting edges from a
//! subgraph while keeping its vertex set lowers `e/v`, so for every vertex
//! set the induced subgraph is the densest subgraph on it. A proper subgraph
//! that keeps every vertex of `G` loses at least one edge and so is strictly
//! sparser than `G`; strict balance therefore reduces to the proper nonempty
//! vertex subsets.

use super::flow::{FlowNetwork, INF};
use super::{Graph, GraphError};
use crate::rational::Rational;

/// Graphs up to this many vertices are scanned subset by subset; larger
/// graphs go through the parametric max-flow path.
pub const SUBSET_SCAN_LIMIT: usize = 20;

/// `e(G)/v(G)` in lowest terms.
pub fn density(g: &Graph) -> Result<Rational, GraphError> {
    if g.vertex_count() == 0 {
        return Err(GraphError::Empty);
    }
    Ok(Rational::new(g.edge_count() as i64, g.vertex_count() as i64))
}

/// `max{ρ(H) : H ⊆ G}`, exact.
pub fn max_subgraph_density(g: &Graph) -> Result<Rational, GraphError> {
    if g.vertex_count() <= SUBSET_SCAN_LIMIT {
        max_subgraph_density_subsets(g)
    } else {
        max_subgraph_density_flow(g)
    }
}

/// Edge counts of all induced subgraphs, indexed by vertex bitmask.
fn subset_edge_counts(g: &Graph) -> Vec<u16> {
    let n = g.vertex_count();
    let masks = g.adjacency_masks().expect("subset scan needs <= 64 vertices");
    let mut counts = vec![0u16; 1usize << n];
    for mask in 1usize..counts.len() {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        counts[mask] = counts[rest] + (masks[low] & rest as u64).count_ones() as u16;
    }
    counts
}

fn check_scan_size(g: &Graph) -> Result<(), GraphError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(GraphError::Empty);
    }
    if n > 26 {
        return Err(GraphError::CapExceeded {
            what: "subset scan",
            size: n,
            cap: 26,
        });
    }
    Ok(())
}

/// Exhaustive scan over every nonempty vertex subset.
pub fn max_subgraph_density_subsets(g: &Graph) -> Result<Rational, GraphError> {
    check_scan_size(g)?;
    let counts = subset_edge_counts(g);
    let (mut best_e, mut best_v) = (0u64, 1u64);
    for (mask, &e) in counts.iter().enumerate().skip(1) {
        let v = mask.count_ones() as u64;
        if e as u64 * best_v > best_e * v {
            best_e = e as u64;
            best_v = v;
        }
    }
    Ok(Rational::new(best_e as i64, best_v as i64))
}

/// For `guess = a/b`, a vertex set maximizing `b·e(S) − a·|S|`, found as a
/// maximum-weight closure: edge nodes carry profit `b`, vertex nodes cost `a`,
/// and choosing an edge forces both endpoints.
fn best_closure(g: &Graph, a: i64, b: i64) -> Vec<usize> {
    let n = g.vertex_count();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let m = edges.len();
    let source = n + m;
    let sink = source + 1;
    let mut net = FlowNetwork::new(n + m + 2);
    for (i, &(u, v)) in edges.iter().enumerate() {
        net.add_arc(source, n + i, b);
        net.add_arc(n + i, u, INF);
        net.add_arc(n + i, v, INF);
    }
    for v in 0..n {
        net.add_arc(v, sink, a);
    }
    net.max_flow(source, sink);
    let side = net.source_side(source);
    (0..n).filter(|&v| side[v]).collect()
}

/// Exact densest subgraph by Dinkelbach iteration over min-cut closures.
/// Each round strictly increases the candidate density, which ranges over a
/// finite set of fractions, so the loop terminates.
pub fn max_subgraph_density_flow(g: &Graph) -> Result<Rational, GraphError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let (mut e, mut v) = (g.edge_count() as i64, n as i64);
    loop {
        let set = best_closure(g, e, v);
        if set.is_empty() {
            break;
        }
        let se = g.edges_within(&set) as i64;
        let sv = set.len() as i64;
        if v * se - e * sv > 0 {
            e = se;
            v = sv;
        } else {
            break;
        }
    }
    Ok(Rational::new(e, v))
}

/// `ρ(H) ≤ ρ(G)` for every subgraph `H`.
pub fn is_balanced(g: &Graph) -> Result<bool, GraphError> {
    Ok(max_subgraph_density(g)? == density(g)?)
}

/// `ρ(H) < ρ(G)` for every proper subgraph `H`. Needs at least 2 vertices.
pub fn is_strictly_balanced(g: &Graph) -> Result<bool, GraphError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(GraphError::Domain(
            "strict balance needs at least 2 vertices".into(),
        ));
    }
    let m = g.edge_count() as u64;
    if n <= SUBSET_SCAN_LIMIT {
        let counts = subset_edge_counts(g);
        let full = counts.len() - 1;
        return Ok(counts[1..full]
            .iter()
            .enumerate()
            .all(|(i, &e)| {
                let mask = i + 1;
                (e as u64) * (n as u64) < m * mask.count_ones() as u64
            }));
    }
    // Every proper vertex subset misses some vertex x, so it suffices to
    // bound the densest subgraph of each G − x.
    let whole = density(g)?;
    for x in 0..n {
        let keep: Vec<usize> = (0..n).filter(|&v| v != x).collect();
        if max_subgraph_density_flow(&g.induced(&keep))? >= whole {
            return Ok(false);
        }
    }
    Ok(true)
}
