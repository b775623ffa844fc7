//! Graph isomorphism preserving positions and framings. The graphs
//! in scope are tiny (a dozen vertices), so a signature-pruned
//! backtracking matcher is plenty.

use alloc::vec::Vec;

use super::{FtcyGraph, LatticeVector, OrientedEdge};

type Signature = Vec<(LatticeVector, Option<LatticeVector>, usize)>;

/// Local view of a vertex: sorted incident oriented data (incoming
/// position, incoming framing, valence of the far endpoint).
fn signature(g: &FtcyGraph, v: usize) -> Signature {
    let mut sig: Signature = g
        .incoming(v)
        .into_iter()
        .map(|e| (g.position(e), g.framing(e), g.valence(g.v0(e))))
        .collect();
    sig.sort();
    sig
}

/// Checks the candidate vertex bijection edge by edge: every oriented
/// edge of `a` must have a matching oriented edge of `b` with equal
/// positions and framings, counted with multiplicity.
fn edges_match(a: &FtcyGraph, b: &FtcyGraph, map: &[usize]) -> bool {
    if a.edge_count() != b.edge_count() {
        return false;
    }
    let mut used = alloc::vec![false; b.edge_count()];
    'outer: for ka in 0..a.edge_count() {
        let ea = OrientedEdge::fwd(ka);
        let key = (
            map[a.v0(ea)],
            map[a.v1(ea)],
            a.position(ea),
            a.framing(ea),
            a.framing(ea.rev()),
        );
        for kb in 0..b.edge_count() {
            if used[kb] {
                continue;
            }
            for eb in [OrientedEdge::fwd(kb), OrientedEdge::fwd(kb).rev()] {
                if key == (
                    b.v0(eb),
                    b.v1(eb),
                    b.position(eb),
                    b.framing(eb),
                    b.framing(eb.rev()),
                ) {
                    used[kb] = true;
                    continue 'outer;
                }
            }
        }
        return false;
    }
    true
}

/// Whether the two graphs differ only by renaming vertices and edges.
pub fn is_isomorphic(a: &FtcyGraph, b: &FtcyGraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.vertex_count();
    let sig_a: Vec<Signature> = (0..n).map(|v| signature(a, v)).collect();
    let sig_b: Vec<Signature> = (0..n).map(|v| signature(b, v)).collect();
    let mut map = alloc::vec![usize::MAX; n];
    let mut taken = alloc::vec![false; n];
    fn go(
        v: usize,
        a: &FtcyGraph,
        b: &FtcyGraph,
        sig_a: &[Signature],
        sig_b: &[Signature],
        map: &mut [usize],
        taken: &mut [bool],
    ) -> bool {
        if v == map.len() {
            return edges_match(a, b, map);
        }
        for w in 0..map.len() {
            if taken[w] || sig_a[v] != sig_b[w] {
                continue;
            }
            map[v] = w;
            taken[w] = true;
            if go(v + 1, a, b, sig_a, sig_b, map, taken) {
                return true;
            }
            taken[w] = false;
            map[v] = usize::MAX;
        }
        false
    }
    go(0, a, b, &sig_a, &sig_b, &mut map, &mut taken)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeled_graphs_match() {
        let g = FtcyGraph::standard_vertex([1, -1, 0]);
        let mut h = FtcyGraph::new();
        // same graph, vertices declared in a different order with
        // different names
        let u3 = h.add_vertex("a");
        let u1 = h.add_vertex("b");
        let center = h.add_vertex("c");
        let u2 = h.add_vertex("d");
        let w = [
            LatticeVector::new(1, 0),
            LatticeVector::new(0, 1),
            LatticeVector::new(-1, -1),
        ];
        let n = [1i64, -1, 0];
        let targets = [u1, u2, u3];
        for i in [2usize, 0, 1] {
            let next = w[(i + 1) % 3];
            let f = LatticeVector::new(next.x - n[i] * w[i].x, next.y - n[i] * w[i].y);
            h.add_edge(alloc::format!("x{i}"), center, targets[i], w[i], Some(f), None);
        }
        assert!(is_isomorphic(&g, &h));
        assert!(!is_isomorphic(&g, &FtcyGraph::standard_vertex([0, 0, 0])));
        assert!(!is_isomorphic(&g, &FtcyGraph::standard_vertex([-1, 1, 0])));
    }
}
