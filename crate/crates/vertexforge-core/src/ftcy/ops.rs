//! The four surgeries on FTCY graphs: smoothing, degeneration,
//! normalization and gluing, plus the full smoothing / resolution
//! along every bivalent vertex. Every operation returns a freshly
//! validated graph together with the relabeling maps.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{EdgeRecord, FtcyGraph, IndexMaps, LatticeVector, OrientedEdge, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FtcyError {
    NotBivalent { vertex: String },
    NotUnivalent { vertex: String },
    LoopVertex { vertex: String },
    NotPrimitive { edge: String, framing: LatticeVector },
    PositionMismatch { left: LatticeVector, right: LatticeVector },
    FramingMismatch { left: LatticeVector, right: LatticeVector },
    Invalid(Vec<Violation>),
}

impl fmt::Display for FtcyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FtcyError::NotBivalent { vertex } => write!(f, "vertex {vertex} is not bivalent"),
            FtcyError::NotUnivalent { vertex } => write!(f, "vertex {vertex} is not univalent"),
            FtcyError::LoopVertex { vertex } => {
                write!(f, "vertex {vertex} joins an edge to itself")
            }
            FtcyError::NotPrimitive { edge, framing } => write!(
                f,
                "framing {framing} is not primitive against edge {edge}: wedge must be 1"
            ),
            FtcyError::PositionMismatch { left, right } => write!(
                f,
                "position mismatch: {left} is not the negative of {right}"
            ),
            FtcyError::FramingMismatch { left, right } => write!(
                f,
                "framing mismatch: {left} is not the negative of {right}"
            ),
            FtcyError::Invalid(violations) => {
                write!(f, "operation produced an invalid graph:")?;
                for v in violations {
                    write!(f, " [{v}]")?;
                }
                Ok(())
            }
        }
    }
}

/// Rebuilds a graph keeping the vertices for which `keep` is true,
/// remapping edge endpoints accordingly. Edges must not reference
/// dropped vertices.
fn drop_vertices(g: &FtcyGraph, keep: impl Fn(usize) -> bool) -> (FtcyGraph, Vec<usize>) {
    let mut out = FtcyGraph::new();
    let mut remap = alloc::vec![usize::MAX; g.vertex_count()];
    for v in 0..g.vertex_count() {
        if keep(v) {
            remap[v] = out.add_vertex(g.vertex_id(v));
        }
    }
    for rec in 0..g.edge_count() {
        let r = g.edge_record(rec);
        out.add_edge(
            r.id.clone(),
            remap[r.from],
            remap[r.to],
            r.position,
            r.framing_fwd,
            r.framing_rev,
        );
    }
    (out, remap)
}

fn validated(g: FtcyGraph) -> Result<FtcyGraph, FtcyError> {
    match g.validate() {
        Ok(()) => Ok(g),
        Err(v) => Err(FtcyError::Invalid(v)),
    }
}

impl FtcyGraph {
    /// Removes a bivalent vertex and merges its two edges into one.
    pub fn smooth(&self, v: usize) -> Result<(FtcyGraph, IndexMaps), FtcyError> {
        if self.valence(v) != 2 {
            return Err(FtcyError::NotBivalent {
                vertex: String::from(self.vertex_id(v)),
            });
        }
        let inc = self.incoming(v);
        let (e1, e2) = (inc[0], inc[1]);
        if e1.edge == e2.edge {
            return Err(FtcyError::LoopVertex {
                vertex: String::from(self.vertex_id(v)),
            });
        }
        let merged = EdgeRecord {
            id: self.edge_record(e1.edge).id.clone(),
            from: self.v0(e1),
            to: self.v0(e2),
            position: self.position(e1),
            framing_fwd: self.framing(e2.rev()),
            framing_rev: self.framing(e1.rev()),
        };
        let mut work = self.clone();
        let lo = e1.edge.min(e2.edge);
        let hi = e1.edge.max(e2.edge);
        work.edges_mut()[lo] = merged.clone();
        work.edges_mut().remove(hi);
        let (out, _) = drop_vertices(&work, |u| u != v);
        let mut maps = IndexMaps::default();
        for rec in 0..self.edge_count() {
            let old = self.edge_record(rec).id.clone();
            if rec == e1.edge || rec == e2.edge {
                maps.edges.insert(old, merged.id.clone());
            } else {
                maps.edges.insert(old.clone(), old);
            }
        }
        for u in 0..self.vertex_count() {
            if u != v {
                let id = String::from(self.vertex_id(u));
                maps.vertices.insert(id.clone(), id);
            }
        }
        Ok((validated(out)?, maps))
    }

    /// Splits an edge at a new bivalent vertex with framing f0 (and
    /// -f0 on the far side). Inverse of smoothing at that vertex.
    pub fn degenerate(
        &self,
        e: OrientedEdge,
        f0: LatticeVector,
    ) -> Result<FtcyGraph, FtcyError> {
        if self.position(e).wedge(f0) != 1 {
            return Err(FtcyError::NotPrimitive {
                edge: self.oriented_id(e),
                framing: f0,
            });
        }
        let mut out = self.clone();
        let base = self.edge_record(e.edge).id.clone();
        let mid_id = out.fresh_vertex_id(&format!("{base}_v"));
        let mid = out.add_vertex(mid_id);
        let id_a = out.fresh_edge_id(&format!("{base}a"));
        let id_b = out.fresh_edge_id(&format!("{base}b"));
        let near = EdgeRecord {
            id: id_a,
            from: self.v0(e),
            to: mid,
            position: self.position(e),
            framing_fwd: Some(f0),
            framing_rev: self.framing(e.rev()),
        };
        let far = EdgeRecord {
            id: id_b,
            from: self.v1(e),
            to: mid,
            position: -self.position(e),
            framing_fwd: Some(-f0),
            framing_rev: self.framing(e),
        };
        out.edges_mut()[e.edge] = near;
        out.edges_mut().push(far);
        validated(out)
    }

    /// Splits a bivalent vertex into two univalent vertices, keeping
    /// the framings.
    pub fn normalize(&self, v: usize) -> Result<(FtcyGraph, IndexMaps), FtcyError> {
        if self.valence(v) != 2 {
            return Err(FtcyError::NotBivalent {
                vertex: String::from(self.vertex_id(v)),
            });
        }
        let inc = self.incoming(v);
        let (e1, e2) = (inc[0], inc[1]);
        let mut work = self.clone();
        let base = String::from(self.vertex_id(v));
        let id_a = work.fresh_vertex_id(&format!("{base}a"));
        let va = work.add_vertex(id_a.clone());
        let id_b = work.fresh_vertex_id(&format!("{base}b"));
        let vb = work.add_vertex(id_b.clone());
        let retarget = |work: &mut FtcyGraph, e: OrientedEdge, nv: usize| {
            let rec = &mut work.edges_mut()[e.edge];
            if e.forward {
                rec.to = nv;
            } else {
                rec.from = nv;
            }
        };
        retarget(&mut work, e1, va);
        retarget(&mut work, e2, vb);
        let (out, _) = drop_vertices(&work, |u| u != v);
        let mut maps = IndexMaps::default();
        for u in 0..self.vertex_count() {
            if u != v {
                let id = String::from(self.vertex_id(u));
                maps.vertices.insert(id.clone(), id);
            }
        }
        maps.vertices.insert(id_a, base.clone());
        maps.vertices.insert(id_b, base);
        for rec in 0..self.edge_count() {
            let id = self.edge_record(rec).id.clone();
            maps.edges.insert(id.clone(), id);
        }
        Ok((validated(out)?, maps))
    }

    /// Identifies two univalent vertices into one bivalent vertex.
    /// Requires opposite positions and opposite framings on the two
    /// incoming edges.
    pub fn glue(&self, va: usize, vb: usize) -> Result<FtcyGraph, FtcyError> {
        for v in [va, vb] {
            if self.valence(v) != 1 {
                return Err(FtcyError::NotUnivalent {
                    vertex: String::from(self.vertex_id(v)),
                });
            }
        }
        let e1 = self.incoming(va)[0];
        let e2 = self.incoming(vb)[0];
        let (p1, p2) = (self.position(e1), self.position(e2));
        if p1 + p2 != LatticeVector::default() {
            return Err(FtcyError::PositionMismatch { left: p1, right: p2 });
        }
        let (f1, f2) = (
            self.framing(e1).expect("univalent terminal edge is framed"),
            self.framing(e2).expect("univalent terminal edge is framed"),
        );
        if f1 + f2 != LatticeVector::default() {
            return Err(FtcyError::FramingMismatch { left: f1, right: f2 });
        }
        let mut work = self.clone();
        let rec = &mut work.edges_mut()[e2.edge];
        if e2.forward {
            rec.to = va;
        } else {
            rec.from = va;
        }
        let (out, _) = drop_vertices(&work, |u| u != vb);
        validated(out)
    }

    /// Smooths every bivalent vertex; the edge map records which
    /// surviving edge each original edge folded into.
    pub fn full_smoothing(&self) -> Result<(FtcyGraph, IndexMaps), FtcyError> {
        let mut g = self.clone();
        let mut maps = identity_maps(self);
        loop {
            let Some(&v) = g.bivalent_vertices().first() else {
                return Ok((g, maps));
            };
            let (next, step) = g.smooth(v)?;
            maps = compose(&maps, &step);
            g = next;
        }
    }

    /// Normalizes every bivalent vertex; the vertex map sends each
    /// new univalent vertex back to the bivalent vertex it came from.
    pub fn full_resolution(&self) -> Result<(FtcyGraph, IndexMaps), FtcyError> {
        let mut g = self.clone();
        let mut maps = identity_maps(self);
        loop {
            let Some(&v) = g.bivalent_vertices().first() else {
                return Ok((g, maps));
            };
            let (next, step) = g.normalize(v)?;
            maps = compose_resolution(&maps, &step);
            g = next;
        }
    }
}

fn identity_maps(g: &FtcyGraph) -> IndexMaps {
    let mut maps = IndexMaps::default();
    for v in 0..g.vertex_count() {
        let id = String::from(g.vertex_id(v));
        maps.vertices.insert(id.clone(), id);
    }
    for e in 0..g.edge_count() {
        let id = g.edge_record(e).id.clone();
        maps.edges.insert(id.clone(), id);
    }
    maps
}

/// Chains smoothing steps: old edge -> intermediate -> newest.
fn compose(acc: &IndexMaps, step: &IndexMaps) -> IndexMaps {
    let mut out = IndexMaps::default();
    for (old, mid) in &acc.edges {
        if let Some(newest) = step.edges.get(mid) {
            out.edges.insert(old.clone(), newest.clone());
        }
    }
    for (old, mid) in &acc.vertices {
        if let Some(newest) = step.vertices.get(mid) {
            out.vertices.insert(old.clone(), newest.clone());
        }
    }
    out
}

/// Chains normalization steps; vertex maps point backwards (new id to
/// original id), so the step map is applied on the left.
fn compose_resolution(acc: &IndexMaps, step: &IndexMaps) -> IndexMaps {
    let mut out = IndexMaps::default();
    for (new_id, mid) in &step.vertices {
        let orig = acc.vertices.get(mid).cloned().unwrap_or_else(|| mid.clone());
        out.vertices.insert(new_id.clone(), orig);
    }
    for (old, mid) in &acc.edges {
        if let Some(newest) = step.edges.get(mid) {
            out.edges.insert(old.clone(), newest.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ftcy::iso::is_isomorphic;

    fn lv(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    #[test]
    fn degenerate_then_smooth_round_trips() {
        let g = FtcyGraph::standard_vertex([0, 0, 0]);
        for k in 0..3 {
            let e = OrientedEdge::fwd(k);
            // any primitive partner of p(e) works as f0
            let f0 = g.framing(e).unwrap();
            let d = g.degenerate(e, f0).unwrap();
            assert_eq!(d.bivalent_vertices().len(), 1);
            let v = d.bivalent_vertices()[0];
            let (s, _) = d.smooth(v).unwrap();
            assert!(is_isomorphic(&s, &g));
        }
    }

    #[test]
    fn normalize_then_glue_round_trips() {
        let g = FtcyGraph::standard_vertex([1, 0, -1]);
        let d = g.degenerate(OrientedEdge::fwd(0), g.framing(OrientedEdge::fwd(0)).unwrap())
            .unwrap();
        let v = d.bivalent_vertices()[0];
        let (n, maps) = d.normalize(v).unwrap();
        assert_eq!(n.bivalent_vertices().len(), 0);
        assert_eq!(n.univalent_vertices().len(), d.univalent_vertices().len() + 2);
        // the two new univalent vertices map back to v
        let back: Vec<_> = maps
            .vertices
            .iter()
            .filter(|(_, orig)| orig.as_str() == d.vertex_id(v))
            .collect();
        assert_eq!(back.len(), 2);
        let va = n.vertex_index(back[0].0).unwrap();
        let vb = n.vertex_index(back[1].0).unwrap();
        let glued = n.glue(va, vb).unwrap();
        assert!(is_isomorphic(&glued, &d));
    }

    #[test]
    fn glue_mismatch_is_an_error() {
        let g = FtcyGraph::standard_vertex([0, 0, 0]);
        // legs 1 and 2 have non-opposite positions
        let u1 = g.vertex_index("u1").unwrap();
        let u2 = g.vertex_index("u2").unwrap();
        assert!(matches!(
            g.glue(u1, u2),
            Err(FtcyError::PositionMismatch { .. })
        ));
    }

    #[test]
    fn degenerate_rejects_non_primitive_framing() {
        let g = FtcyGraph::standard_vertex([0, 0, 0]);
        let e = OrientedEdge::fwd(0);
        assert!(matches!(
            g.degenerate(e, lv(2, 0)),
            Err(FtcyError::NotPrimitive { .. })
        ));
        assert!(matches!(
            g.degenerate(e, lv(1, -1)),
            Err(FtcyError::NotPrimitive { .. })
        ));
    }

    #[test]
    fn full_smoothing_clears_bivalent_vertices() {
        let g = FtcyGraph::standard_vertex([0, 0, 0]);
        let d = g
            .degenerate(OrientedEdge::fwd(0), g.framing(OrientedEdge::fwd(0)).unwrap())
            .unwrap();
        let d2 = d
            .degenerate(OrientedEdge::fwd(1), d.framing(OrientedEdge::fwd(1)).unwrap())
            .unwrap();
        assert_eq!(d2.bivalent_vertices().len(), 2);
        let (s, maps) = d2.full_smoothing().unwrap();
        assert!(s.is_regular());
        assert!(is_isomorphic(&s, &g));
        // every original edge lands on some surviving edge
        assert_eq!(maps.edges.len(), d2.edge_count());
        let (r, rmaps) = d2.full_resolution().unwrap();
        assert!(r.is_regular());
        assert_eq!(r.vertex_count(), d2.vertex_count() + 2);
        assert_eq!(rmaps.vertices.len(), r.vertex_count());
        // regular graphs are fixed points
        let (s2, _) = g.full_smoothing().unwrap();
        assert_eq!(s2, g);
    }
}
