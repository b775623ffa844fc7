//! FTCY (formal toric Calabi-Yau) graphs: weakly trivalent graphs
//! carrying lattice position and framing data, the axioms T1-T3, the
//! derived maps l0/l1/n, graph surgeries, and effective classes.

pub mod classes;
pub mod format;
pub mod iso;
pub mod ops;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

/// A vector in the rank-two lattice Z u1 + Z u2.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticeVector {
    pub x: i64,
    pub y: i64,
}

impl LatticeVector {
    pub fn new(x: i64, y: i64) -> Self {
        LatticeVector { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// The orientation pairing a1 b2 - a2 b1; a value of 1 means
    /// "a wedge b = u1 wedge u2".
    pub fn wedge(self, other: LatticeVector) -> i64 {
        self.x * other.y - self.y * other.x
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, o: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, o: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector::new(-self.x, -self.y)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// One unoriented edge, stored through its forward orientation. The
/// reverse orientation has position -p and swaps the framing slots,
/// so axiom T1 holds by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRecord {
    pub id: String,
    pub from: usize,
    pub to: usize,
    pub position: LatticeVector,
    /// Framing of the forward orientation, meaningful when the
    /// terminal (`to`) vertex is uni- or bivalent.
    pub framing_fwd: Option<LatticeVector>,
    /// Framing of the reverse orientation (terminal vertex `from`).
    pub framing_rev: Option<LatticeVector>,
}

/// Handle to one of the two orientations of an edge.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OrientedEdge {
    pub edge: usize,
    pub forward: bool,
}

impl OrientedEdge {
    pub fn fwd(edge: usize) -> Self {
        OrientedEdge {
            edge,
            forward: true,
        }
    }

    /// The fixed-point-free involution: same edge, other orientation.
    pub fn rev(self) -> Self {
        OrientedEdge {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FtcyGraph {
    vertices: Vec<String>,
    edges: Vec<EdgeRecord>,
}

/// One failed axiom check: which rule, and which element broke it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub element: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.axiom, self.element, self.detail)
    }
}

/// Failure to compute the derived maps for an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivedError {
    MissingFraming { edge: String },
    NoWedgePartner { edge: String },
    NotParallel { edge: String },
}

impl fmt::Display for DerivedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivedError::MissingFraming { edge } => {
                write!(f, "missing framing on E^f edge {edge}")
            }
            DerivedError::NoWedgePartner { edge } => {
                write!(f, "no unique wedge-one neighbor for edge {edge}")
            }
            DerivedError::NotParallel { edge } => {
                write!(f, "l1 - l0 is not an integer multiple of p on edge {edge}")
            }
        }
    }
}

impl FtcyGraph {
    pub fn new() -> Self {
        FtcyGraph::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> usize {
        self.vertices.push(id.into());
        self.vertices.len() - 1
    }

    #[allow(clippy::too_many_arguments)]
    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        from: usize,
        to: usize,
        position: LatticeVector,
        framing_fwd: Option<LatticeVector>,
        framing_rev: Option<LatticeVector>,
    ) -> usize {
        self.edges.push(EdgeRecord {
            id: id.into(),
            from,
            to,
            position,
            framing_fwd,
            framing_rev,
        });
        self.edges.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|s| s == id)
    }

    pub fn edge_record(&self, e: usize) -> &EdgeRecord {
        &self.edges[e]
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Initial vertex of an oriented edge.
    pub fn v0(&self, e: OrientedEdge) -> usize {
        let r = &self.edges[e.edge];
        if e.forward {
            r.from
        } else {
            r.to
        }
    }

    /// Terminal vertex of an oriented edge.
    pub fn v1(&self, e: OrientedEdge) -> usize {
        self.v0(e.rev())
    }

    pub fn position(&self, e: OrientedEdge) -> LatticeVector {
        let r = &self.edges[e.edge];
        if e.forward {
            r.position
        } else {
            -r.position
        }
    }

    pub fn framing(&self, e: OrientedEdge) -> Option<LatticeVector> {
        let r = &self.edges[e.edge];
        if e.forward {
            r.framing_fwd
        } else {
            r.framing_rev
        }
    }

    /// A printable name for an oriented edge.
    pub fn oriented_id(&self, e: OrientedEdge) -> String {
        let id = &self.edges[e.edge].id;
        if e.forward {
            id.clone()
        } else {
            format!("-{id}")
        }
    }

    pub fn oriented_edges(&self) -> impl Iterator<Item = OrientedEdge> + '_ {
        (0..self.edges.len()).flat_map(|k| [OrientedEdge::fwd(k), OrientedEdge::fwd(k).rev()])
    }

    /// Oriented edges with terminal vertex v (the set v1^-1(v)).
    pub fn incoming(&self, v: usize) -> Vec<OrientedEdge> {
        self.oriented_edges().filter(|&e| self.v1(e) == v).collect()
    }

    /// Oriented edges with initial vertex v (the set v0^-1(v)).
    pub fn outgoing(&self, v: usize) -> Vec<OrientedEdge> {
        self.oriented_edges().filter(|&e| self.v0(e) == v).collect()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.outgoing(v).len()
    }

    pub fn is_trivalent(&self, v: usize) -> bool {
        self.valence(v) == 3
    }

    pub fn univalent_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.valence(v) == 1)
            .collect()
    }

    pub fn bivalent_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.valence(v) == 2)
            .collect()
    }

    pub fn trivalent_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.valence(v) == 3)
            .collect()
    }

    /// A graph with no bivalent vertices is regular.
    pub fn is_regular(&self) -> bool {
        self.bivalent_vertices().is_empty()
    }

    fn violation(axiom: &str, element: impl Into<String>, detail: impl Into<String>) -> Violation {
        Violation {
            axiom: String::from(axiom),
            element: element.into(),
            detail: detail.into(),
        }
    }

    /// Checks the axioms of an FTCY graph plus the divisibility the
    /// derived framing integers need. Returns every violation found.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        for v in 0..self.vertices.len() {
            let val = self.valence(v);
            if val == 0 || val > 3 {
                out.push(Self::violation(
                    "weakly trivalent",
                    self.vertex_id(v),
                    format!("valence {val} is outside 1..3"),
                ));
            }
        }
        for rec in &self.edges {
            if rec.position.is_zero() {
                out.push(Self::violation(
                    "position nonzero",
                    &rec.id,
                    "position vector is zero",
                ));
            }
        }
        // framing domain: exactly the oriented edges with a non-
        // trivalent terminal vertex
        for e in self.oriented_edges() {
            let terminal = self.v1(e);
            let name = self.oriented_id(e);
            match (self.is_trivalent(terminal), self.framing(e)) {
                (false, None) => out.push(Self::violation(
                    "framing domain",
                    name,
                    "missing framing on E^f edge",
                )),
                (true, Some(_)) => out.push(Self::violation(
                    "framing domain",
                    name,
                    "framing given on an edge into a trivalent vertex",
                )),
                (false, Some(f)) => {
                    if f.is_zero() {
                        out.push(Self::violation(
                            "framing nonzero",
                            name,
                            "framing vector is zero",
                        ));
                    } else if self.position(e).wedge(f) != 1 {
                        out.push(Self::violation(
                            "T3 primitive",
                            name,
                            format!(
                                "p wedge f = {} instead of 1",
                                self.position(e).wedge(f)
                            ),
                        ));
                    }
                }
                (true, None) => {}
            }
        }
        for &v in &self.bivalent_vertices() {
            let inc = self.incoming(v);
            let [e1, e2] = [inc[0], inc[1]];
            let psum = self.position(e1) + self.position(e2);
            if !psum.is_zero() {
                out.push(Self::violation(
                    "T2 balanced",
                    self.vertex_id(v),
                    format!("positions into the bivalent vertex sum to {psum}"),
                ));
            }
            if let (Some(f1), Some(f2)) = (self.framing(e1), self.framing(e2)) {
                let fsum = f1 + f2;
                if !fsum.is_zero() {
                    out.push(Self::violation(
                        "T2 balanced",
                        self.vertex_id(v),
                        format!("framings into the bivalent vertex sum to {fsum}"),
                    ));
                }
            }
        }
        for &v in &self.trivalent_vertices() {
            let outs = self.outgoing(v);
            let psum = outs
                .iter()
                .fold(LatticeVector::default(), |a, &e| a + self.position(e));
            if !psum.is_zero() {
                out.push(Self::violation(
                    "T2 balanced",
                    self.vertex_id(v),
                    format!("outgoing positions sum to {psum}"),
                ));
            }
            for i in 0..outs.len() {
                for j in (i + 1)..outs.len() {
                    let w = self.position(outs[i]).wedge(self.position(outs[j]));
                    if w.abs() != 1 {
                        out.push(Self::violation(
                            "T3 primitive",
                            self.vertex_id(v),
                            format!(
                                "positions of {} and {} have wedge {w}, not a Z-basis",
                                self.oriented_id(outs[i]),
                                self.oriented_id(outs[j])
                            ),
                        ));
                    }
                }
            }
        }
        if out.is_empty() {
            // derived-map divisibility only makes sense once the
            // structural axioms hold
            for e in self.oriented_edges() {
                if let Err(err) = self.derived_maps(e) {
                    out.push(Self::violation(
                        "derived framing",
                        self.oriented_id(e),
                        format!("{err}"),
                    ));
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// The unique outgoing edge at `v` whose position has wedge 1
    /// against `p`.
    fn wedge_partner(&self, v: usize, p: LatticeVector) -> Option<OrientedEdge> {
        let mut found = None;
        for e in self.outgoing(v) {
            if p.wedge(self.position(e)) == 1 {
                if found.is_some() {
                    return None;
                }
                found = Some(e);
            }
        }
        found
    }

    /// The weights l0(e), l1(e) and the framing integer n^e.
    pub fn derived_maps(
        &self,
        e: OrientedEdge,
    ) -> Result<(LatticeVector, LatticeVector, i64), DerivedError> {
        let name = || self.oriented_id(e);
        let l0 = if self.is_trivalent(self.v0(e)) {
            let partner = self
                .wedge_partner(self.v0(e), self.position(e))
                .ok_or_else(|| DerivedError::NoWedgePartner { edge: name() })?;
            self.position(partner)
        } else {
            -self
                .framing(e.rev())
                .ok_or_else(|| DerivedError::MissingFraming {
                    edge: self.oriented_id(e.rev()),
                })?
        };
        let terminal_trivalent = self.is_trivalent(self.v1(e));
        let l1 = if terminal_trivalent {
            let partner = self
                .wedge_partner(self.v1(e), self.position(e))
                .ok_or_else(|| DerivedError::NoWedgePartner { edge: name() })?;
            self.position(partner)
        } else {
            self.framing(e)
                .ok_or_else(|| DerivedError::MissingFraming { edge: name() })?
        };
        let delta = l1 - l0;
        let p = self.position(e);
        let c = if p.x != 0 {
            if delta.x % p.x != 0 {
                return Err(DerivedError::NotParallel { edge: name() });
            }
            delta.x / p.x
        } else {
            if p.y == 0 || delta.y % p.y != 0 {
                return Err(DerivedError::NotParallel { edge: name() });
            }
            delta.y / p.y
        };
        if LatticeVector::new(c * p.x, c * p.y) != delta {
            return Err(DerivedError::NotParallel { edge: name() });
        }
        let n = if terminal_trivalent { 1 - c } else { -c };
        Ok((l0, l1, n))
    }

    /// Just the framing integer n^e.
    pub fn framing_number(&self, e: OrientedEdge) -> Result<i64, DerivedError> {
        self.derived_maps(e).map(|(_, _, n)| n)
    }

    /// Picks an id not already used by a vertex, derived from `base`.
    fn fresh_vertex_id(&self, base: &str) -> String {
        if self.vertex_index(base).is_none() {
            return String::from(base);
        }
        let mut k = 1;
        loop {
            let cand = format!("{base}_{k}");
            if self.vertex_index(&cand).is_none() {
                return cand;
            }
            k += 1;
        }
    }

    fn fresh_edge_id(&self, base: &str) -> String {
        if self.edge_index(base).is_none() {
            return String::from(base);
        }
        let mut k = 1;
        loop {
            let cand = format!("{base}_{k}");
            if self.edge_index(&cand).is_none() {
                return cand;
            }
            k += 1;
        }
    }

    /// The standard vertex graph with framing twists n = (n1,n2,n3):
    /// one trivalent vertex with legs at positions (1,0), (0,1) and
    /// (-1,-1), framings w_{i+1} - n_i w_i.
    pub fn standard_vertex(n: [i64; 3]) -> FtcyGraph {
        let w = [
            LatticeVector::new(1, 0),
            LatticeVector::new(0, 1),
            LatticeVector::new(-1, -1),
        ];
        let mut g = FtcyGraph::new();
        let center = g.add_vertex("v0");
        for i in 0..3 {
            let u = g.add_vertex(format!("u{}", i + 1));
            let next = w[(i + 1) % 3];
            let f = LatticeVector::new(next.x - n[i] * w[i].x, next.y - n[i] * w[i].y);
            g.add_edge(format!("e{}", i + 1), center, u, w[i], Some(f), None);
        }
        g
    }

    pub(crate) fn edges_mut(&mut self) -> &mut Vec<EdgeRecord> {
        &mut self.edges
    }
}

/// Keyed maps describing how smoothing and normalization relabel a
/// graph: `edges` sends old edge ids to the surviving edge id, and
/// `vertices` sends new vertex ids to the vertex they came from.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexMaps {
    pub edges: BTreeMap<String, String>,
    pub vertices: BTreeMap<String, String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_vector_wedge() {
        let u1 = LatticeVector::new(1, 0);
        let u2 = LatticeVector::new(0, 1);
        assert_eq!(u1.wedge(u2), 1);
        assert_eq!(u2.wedge(u1), -1);
        assert_eq!(u1.wedge(u1), 0);
    }

    #[test]
    fn standard_vertex_valid_and_framed() {
        for n1 in -2..=2 {
            for n2 in -2..=2 {
                for n3 in -2..=2 {
                    let g = FtcyGraph::standard_vertex([n1, n2, n3]);
                    assert!(g.validate().is_ok(), "n=({n1},{n2},{n3})");
                    for (i, ni) in [n1, n2, n3].into_iter().enumerate() {
                        let e = OrientedEdge::fwd(i);
                        assert_eq!(g.framing_number(e).unwrap(), ni);
                        assert_eq!(g.framing_number(e.rev()).unwrap(), -ni);
                    }
                }
            }
        }
        // standard framing n = 0: f(e_i) = p(e_{i+1})
        let g = FtcyGraph::standard_vertex([0, 0, 0]);
        for i in 0..3 {
            let e = OrientedEdge::fwd(i);
            let next = OrientedEdge::fwd((i + 1) % 3);
            assert_eq!(g.framing(e).unwrap(), g.position(next));
        }
        assert_eq!(g.trivalent_vertices().len(), 1);
        assert_eq!(g.univalent_vertices().len(), 3);
        assert!(g.is_regular());
    }

    #[test]
    fn validate_catches_unbalanced_trivalent() {
        let mut g = FtcyGraph::standard_vertex([0, 0, 0]);
        g.edges_mut()[2].position = LatticeVector::new(-1, -2);
        let errs = g.validate().unwrap_err();
        assert!(errs.iter().any(|v| v.axiom == "T2 balanced"));
    }

    #[test]
    fn validate_catches_bad_framing_wedge() {
        let mut g = FtcyGraph::standard_vertex([0, 0, 0]);
        g.edges_mut()[0].framing_fwd = Some(LatticeVector::new(0, -1));
        let errs = g.validate().unwrap_err();
        assert!(errs.iter().any(|v| v.axiom == "T3 primitive"));
    }

    #[test]
    fn validate_catches_missing_framing() {
        let mut g = FtcyGraph::standard_vertex([0, 0, 0]);
        g.edges_mut()[0].framing_fwd = None;
        let errs = g.validate().unwrap_err();
        assert!(errs
            .iter()
            .any(|v| v.detail.contains("missing framing on E^f edge")));
    }
}
