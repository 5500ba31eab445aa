//! Brute-force canonical forms and isomorphism classes of tiny graphs.

use std::collections::BTreeSet;

use super::Graph;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    heap_permutations(n, &mut perm, &mut out);
    out
}

fn heap_permutations(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(perm.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(k - 1, perm, out);
        let j = if k % 2 == 0 { i } else { 0 };
        perm.swap(j, k - 1);
    }
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

/// Lexicographically smallest edge bitmask over all relabelings.
/// Intended for graphs with at most 8 vertices.
pub fn canonical_form(g: &Graph) -> (usize, u64) {
    let n = g.vertex_count();
    assert!(n <= 11, "canonical_form is brute force");
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let best = permutations(n)
        .iter()
        .map(|p| {
            edges
                .iter()
                .fold(0u64, |m, &(a, b)| m | 1u64 << pair_index(n, p[a], p[b]))
        })
        .min()
        .unwrap_or(0);
    (n, best)
}

/// One representative per isomorphism class of graphs on exactly `n`
/// vertices (`n <= 6`), ordered by edge count and then canonical mask.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "enumeration is brute force");
    let pairs = n * n.saturating_sub(1) / 2;
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for bits in 0u64..(1u64 << pairs) {
        let canon = perms
            .iter()
            .map(|p| {
                let mut m = 0u64;
                for a in 0..n {
                    for b in a + 1..n {
                        if bits >> pair_index(n, a, b) & 1 == 1 {
                            m |= 1 << pair_index(n, p[a], p[b]);
                        }
                    }
                }
                m
            })
            .min()
            .unwrap_or(0);
        if seen.insert(canon) {
            let mut g = Graph::empty(n);
            for a in 0..n {
                for b in a + 1..n {
                    if canon >> pair_index(n, a, b) & 1 == 1 {
                        g.add_edge(a, b).expect("fresh edge");
                    }
                }
            }
            reps.push(g);
        }
    }
    reps.sort_by_key(|g| (g.edge_count(), canonical_form(g).1));
    reps
}
