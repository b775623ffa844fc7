//! Endpoint formulas: framed vertex amplitudes, formal relative
//! invariants of FTCY graphs via the gluing rules, truncated partition
//! functions, and the Hodge-integral generating functions.
//!
//! Everything is expressed in q = e^(sqrt(-1) lambda), so an amplitude
//! is a single `ExactScalar` rather than a lambda-series: every
//! exponential entering the gluing sum has a half-integer multiple of
//! lambda in its exponent.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_rational::{BigRational, Ratio};

use crate::exact::ExactScalar;
use crate::ftcy::classes::EffectiveClass;
use crate::ftcy::ops::FtcyError;
use crate::ftcy::{DerivedError, FtcyGraph, OrientedEdge};
use crate::partition::{Partition, PartitionTriple};
use crate::vertex::VertexCtx;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmplitudeError {
    /// The graph has bivalent vertices; use `f_graph_general`.
    NotRegular,
    /// The effective class does not fit the graph.
    InvalidClass(String),
    /// A framing integer could not be derived.
    Derived(DerivedError),
    /// A graph operation failed while resolving bivalent vertices.
    Graph(FtcyError),
    /// One of w1, w2, w3 = -w1-w2 vanishes.
    DegenerateWeight,
    /// The Hodge generating functions need at least one nonempty
    /// partition.
    EmptyTriple,
}

impl fmt::Display for AmplitudeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmplitudeError::NotRegular => {
                write!(f, "graph has bivalent vertices; use f_graph_general")
            }
            AmplitudeError::InvalidClass(detail) => {
                write!(f, "class does not fit the graph: {detail}")
            }
            AmplitudeError::Derived(e) => write!(f, "{e}"),
            AmplitudeError::Graph(e) => write!(f, "{e}"),
            AmplitudeError::DegenerateWeight => write!(f, "degenerate weight"),
            AmplitudeError::EmptyTriple => {
                write!(f, "at least one partition must be nonempty")
            }
        }
    }
}

impl From<DerivedError> for AmplitudeError {
    fn from(e: DerivedError) -> Self {
        AmplitudeError::Derived(e)
    }
}

impl From<FtcyError> for AmplitudeError {
    fn from(e: FtcyError) -> Self {
        AmplitudeError::Graph(e)
    }
}

/// The trivalent vertex amplitude Ct, taken to be Wt computationally.
pub fn c_tilde(ctx: &mut VertexCtx, mu: &PartitionTriple) -> ExactScalar {
    ctx.w_tilde(mu)
}

/// Ct with framing twists: q^((sum kappa_i n_i)/2) Ct.
pub fn c_tilde_framed(ctx: &mut VertexCtx, mu: &PartitionTriple, n: [i64; 3]) -> ExactScalar {
    let twist: i64 = (0..3).map(|i| mu.0[i].kappa() * n[i]).sum();
    &ExactScalar::q_power(Ratio::new(twist, 2)) * &c_tilde(ctx, mu)
}

fn triples(sizes: [u32; 3]) -> Vec<PartitionTriple> {
    let mut out = Vec::new();
    for a in Partition::enumerate(sizes[0]) {
        for b in Partition::enumerate(sizes[1]) {
            for c in Partition::enumerate(sizes[2]) {
                out.push(PartitionTriple::new(a.clone(), b.clone(), c));
            }
        }
    }
    out
}

/// The one-vertex amplitude F in the winding basis: the sign- and
/// i-dressed character transform of the framed Ct.
pub fn f_vertex(ctx: &mut VertexCtx, mu: &PartitionTriple, n: [i64; 3]) -> ExactScalar {
    let d: Vec<u64> = mu.0.iter().map(Partition::size).collect();
    let sign_exp: i64 = (0..3).map(|i| (n[i] - 1) * d[i] as i64).sum();
    let sign = if sign_exp.rem_euclid(2) == 0 { 1 } else { -1 };
    let dress = &ExactScalar::from_int(sign) * &ExactScalar::i_power(-(mu.len() as i64));
    let mut acc = ExactScalar::zero();
    for nu in triples([d[0] as u32, d[1] as u32, d[2] as u32]) {
        let mut coeff = BigRational::from_integer(1.into());
        let mut vanished = false;
        for i in 0..3 {
            let chi = ctx.sym.character(&nu.0[i], &mu.0[i]).expect("sizes match");
            if chi == 0 {
                vanished = true;
                break;
            }
            coeff *= BigRational::new(chi.into(), (mu.0[i].z() as i64).into());
        }
        if vanished {
            continue;
        }
        acc = &acc + &(&c_tilde_framed(ctx, &nu, n) * &coeff);
    }
    &dress * &acc
}

/// An assignment of a partition to every oriented edge with
/// `label(-e) = label(e)^t`, plus the boundary data of the class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLabeling {
    /// Label carried by the forward orientation of each edge, indexed
    /// by edge index.
    forward: Vec<Partition>,
}

impl EdgeLabeling {
    /// The partition on an oriented edge; the reverse orientation
    /// carries the transpose.
    pub fn label(&self, e: OrientedEdge) -> Partition {
        if e.forward {
            self.forward[e.edge].clone()
        } else {
            self.forward[e.edge].transpose()
        }
    }

    /// All labelings of the graph compatible with the class degrees.
    /// Deterministic order: the odometer advances the lowest edge
    /// index fastest, partitions in enumeration order.
    pub fn enumerate(g: &FtcyGraph, class: &EffectiveClass) -> Vec<EdgeLabeling> {
        let choices: Vec<Vec<Partition>> = (0..g.edge_count())
            .map(|k| {
                let d = class.degrees.get(&g.edge_record(k).id).copied().unwrap_or(0);
                Partition::enumerate(d)
            })
            .collect();
        let mut out = Vec::new();
        let mut pick = alloc::vec![0usize; choices.len()];
        loop {
            out.push(EdgeLabeling {
                forward: choices
                    .iter()
                    .zip(&pick)
                    .map(|(opts, &c)| opts[c].clone())
                    .collect(),
            });
            let mut i = 0;
            loop {
                if i == pick.len() {
                    return out;
                }
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
        }
    }
}

fn check_class(g: &FtcyGraph, class: &EffectiveClass) -> Result<(), AmplitudeError> {
    for id in class.degrees.keys() {
        if g.edge_index(id).is_none() {
            return Err(AmplitudeError::InvalidClass(alloc::format!(
                "unknown edge {id:?}"
            )));
        }
    }
    for k in 0..g.edge_count() {
        let id = &g.edge_record(k).id;
        if !class.degrees.contains_key(id) {
            return Err(AmplitudeError::InvalidClass(alloc::format!(
                "edge {id:?} has no degree"
            )));
        }
    }
    for (id, mu) in &class.boundary {
        let Some(v) = g.vertex_index(id) else {
            return Err(AmplitudeError::InvalidClass(alloc::format!(
                "unknown vertex {id:?}"
            )));
        };
        if g.valence(v) != 1 {
            return Err(AmplitudeError::InvalidClass(alloc::format!(
                "vertex {id:?} is not univalent"
            )));
        }
        let e = g.incoming(v)[0];
        let d = class.degrees[&g.edge_record(e.edge).id];
        if mu.size() != d as u64 {
            return Err(AmplitudeError::InvalidClass(alloc::format!(
                "boundary at {id:?} has size {} but the edge has degree {d}",
                mu.size()
            )));
        }
    }
    for &v in &g.univalent_vertices() {
        if !class.boundary.contains_key(g.vertex_id(v)) {
            return Err(AmplitudeError::InvalidClass(alloc::format!(
                "vertex {:?} has no boundary partition",
                g.vertex_id(v)
            )));
        }
    }
    for &v in &g.bivalent_vertices() {
        let inc = g.incoming(v);
        let d0 = class.degrees[&g.edge_record(inc[0].edge).id];
        let d1 = class.degrees[&g.edge_record(inc[1].edge).id];
        if d0 != d1 {
            return Err(AmplitudeError::InvalidClass(alloc::format!(
                "unequal degrees across bivalent vertex {:?}",
                g.vertex_id(v)
            )));
        }
    }
    Ok(())
}

/// The three outgoing edges of a trivalent vertex in wedge-positive
/// cyclic order, starting from the smallest edge index.
fn ordered_outgoing(g: &FtcyGraph, v: usize) -> [OrientedEdge; 3] {
    let mut out = g.outgoing(v);
    out.sort_by_key(|e| (e.edge, !e.forward));
    let first = out[0];
    let p = g.position(first);
    let (second, third) = if p.wedge(g.position(out[1])) == 1 {
        (out[1], out[2])
    } else {
        (out[2], out[1])
    };
    [first, second, third]
}

/// The formal relative invariant of a regular FTCY graph as a sum
/// over edge labelings: for each edge a factor
/// (-1)^((n+1)d) q^(kappa n / 2) in the label of the orientation
/// pointing out of a trivalent vertex, for each trivalent vertex Ct of
/// the outgoing labels in cyclic order, and for each univalent vertex
/// the character of its incoming label against the boundary partition,
/// divided by i^l z.
pub fn f_graph_regular(
    ctx: &mut VertexCtx,
    g: &FtcyGraph,
    class: &EffectiveClass,
) -> Result<ExactScalar, AmplitudeError> {
    if !g.is_regular() {
        return Err(AmplitudeError::NotRegular);
    }
    check_class(g, class)?;
    let degrees: Vec<u32> = (0..g.edge_count())
        .map(|k| class.degrees[&g.edge_record(k).id])
        .collect();
    let framing_numbers: Vec<i64> = (0..g.edge_count())
        .map(|k| g.framing_number(OrientedEdge::fwd(k)))
        .collect::<Result<_, _>>()?;
    let trivalent: Vec<[OrientedEdge; 3]> = g
        .trivalent_vertices()
        .into_iter()
        .map(|v| ordered_outgoing(g, v))
        .collect();
    // boundary factor, constant across labelings
    let univalent: Vec<(OrientedEdge, &Partition)> = g
        .univalent_vertices()
        .into_iter()
        .map(|v| {
            let e = g.incoming(v)[0];
            (e, &class.boundary[g.vertex_id(v)])
        })
        .collect();
    let mut constant = ExactScalar::one();
    for (_, mu) in &univalent {
        let zc = BigRational::new(1.into(), (mu.z() as i64).into());
        constant = &(&constant * &ExactScalar::i_power(-(mu.len() as i64))) * &zc;
    }
    let mut acc = ExactScalar::zero();
    'labelings: for labeling in EdgeLabeling::enumerate(g, class) {
        let mut coeff = BigRational::from_integer(1.into());
        for (e, mu) in &univalent {
            let chi = ctx
                .sym
                .character(&labeling.label(*e), mu)
                .expect("sizes match by construction");
            if chi == 0 {
                continue 'labelings;
            }
            coeff *= BigRational::from_integer(chi.into());
        }
        let mut term = ExactScalar::from_rational(coeff);
        for k in 0..g.edge_count() {
            let (d, n) = (degrees[k] as i64, framing_numbers[k]);
            if ((n + 1) * d).rem_euclid(2) == 1 {
                term = &term * &ExactScalar::from_int(-1);
            }
            let kappa = labeling.forward[k].kappa();
            term = &term * &ExactScalar::q_power(Ratio::new(kappa * n, 2));
        }
        for edges in &trivalent {
            let nu = PartitionTriple::new(
                labeling.label(edges[0]),
                labeling.label(edges[1]),
                labeling.label(edges[2]),
            );
            term = &term * &c_tilde(ctx, &nu);
            if term.is_zero() {
                continue 'labelings;
            }
        }
        acc = &acc + &term;
    }
    Ok(&constant * &acc)
}

/// The formal relative invariant of an arbitrary FTCY graph: sum over
/// splitting types sigma of z_sigma times the regular-graph invariant
/// of the full resolution with boundary mu joined with sigma.
pub fn f_graph_general(
    ctx: &mut VertexCtx,
    g: &FtcyGraph,
    class: &EffectiveClass,
) -> Result<ExactScalar, AmplitudeError> {
    check_class(g, class)?;
    let (resolved, maps) = g.full_resolution()?;
    let degrees: BTreeMap<String, u32> = class
        .degrees
        .iter()
        .map(|(old, &d)| (maps.edges[old].clone(), d))
        .collect();
    let mut acc = ExactScalar::zero();
    for split in g.splitting_types(class) {
        let mut boundary = BTreeMap::new();
        for &v in &resolved.univalent_vertices() {
            let new_id = resolved.vertex_id(v);
            let old_id = &maps.vertices[new_id];
            let mu = class
                .boundary
                .get(old_id)
                .or_else(|| split.assignment.get(old_id))
                .expect("every resolved univalent vertex comes from V1 or V2");
            boundary.insert(String::from(new_id), mu.clone());
        }
        let piece = EffectiveClass {
            degrees: degrees.clone(),
            boundary,
        };
        let z = BigRational::from_integer((split.z() as i64).into());
        acc = &acc + &(&f_graph_regular(ctx, &resolved, &piece)? * &z);
    }
    Ok(acc)
}

/// The truncated formal relative partition function: one amplitude per
/// effective class within the caps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmplitudeTable {
    pub entries: BTreeMap<EffectiveClass, ExactScalar>,
}

fn bracketed(mu: &Partition) -> String {
    if mu.is_empty() {
        String::from("[]")
    } else {
        alloc::format!("[{mu}]")
    }
}

impl fmt::Display for AmplitudeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (class, value) in &self.entries {
            write!(f, "d=(")?;
            for (i, (id, d)) in class.degrees.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{id}={d}")?;
            }
            write!(f, ") mu=(")?;
            for (i, (id, mu)) in class.boundary.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{id}={}", bracketed(mu))?;
            }
            writeln!(f, ") -> {value}")?;
        }
        Ok(())
    }
}

pub fn partition_function(
    ctx: &mut VertexCtx,
    g: &FtcyGraph,
    caps: &BTreeMap<String, u32>,
) -> Result<AmplitudeTable, AmplitudeError> {
    if !g.is_regular() {
        return Err(AmplitudeError::NotRegular);
    }
    let mut entries = BTreeMap::new();
    for class in g.effective_classes(caps) {
        let value = f_graph_regular(ctx, g, &class)?;
        entries.insert(class, value);
    }
    Ok(AmplitudeTable { entries })
}

/// Whether an amplitude has purely rational coefficients, with no
/// Gaussian-imaginary part surviving the i-power dressings. Observed
/// on all computed graph amplitudes; reported as a diagnostic rather
/// than asserted.
pub fn is_rational(s: &ExactScalar) -> bool {
    s.numerator()
        .coeffs()
        .iter()
        .chain(s.denominator().coeffs())
        .all(|c| num_traits::Zero::is_zero(&c.im))
}

fn weights(w: (Ratio<i64>, Ratio<i64>)) -> Result<[Ratio<i64>; 3], AmplitudeError> {
    let (w1, w2) = w;
    let w3 = -w1 - w2;
    if w1 == Ratio::new(0, 1) || w2 == Ratio::new(0, 1) || w3 == Ratio::new(0, 1) {
        return Err(AmplitudeError::DegenerateWeight);
    }
    Ok([w1, w2, w3])
}

fn hodge_sum(
    ctx: &mut VertexCtx,
    mu: &PartitionTriple,
    w: (Ratio<i64>, Ratio<i64>),
    tilde: bool,
) -> Result<ExactScalar, AmplitudeError> {
    let w = weights(w)?;
    if mu.is_empty() {
        return Err(AmplitudeError::EmptyTriple);
    }
    let ratios: [Ratio<i64>; 3] = core::array::from_fn(|i| w[(i + 1) % 3] / w[i]);
    let d: Vec<u32> = mu.0.iter().map(|p| p.size() as u32).collect();
    let mut acc = ExactScalar::zero();
    for nu in triples([d[0], d[1], d[2]]) {
        let mut coeff = BigRational::from_integer(1.into());
        let mut exponent = Ratio::new(0, 1);
        let mut vanished = false;
        for i in 0..3 {
            let chi = ctx.sym.character(&nu.0[i], &mu.0[i]).expect("sizes match");
            if chi == 0 {
                vanished = true;
                break;
            }
            coeff *= BigRational::new(chi.into(), (mu.0[i].z() as i64).into());
            // kappa is even, so kappa/2 stays integral
            exponent += ratios[i] * Ratio::new(nu.0[i].kappa() / 2, 1);
        }
        if vanished {
            continue;
        }
        let w_part = if tilde {
            ctx.w_tilde(&nu)
        } else {
            ctx.w_three(&nu)
        };
        let term = &(&ExactScalar::q_power(exponent) * &w_part) * &coeff;
        acc = &acc + &term;
    }
    Ok(acc)
}

/// One-partition Hodge integral generating function at weights
/// (w1, w2, -w1-w2).
pub fn g_one(
    ctx: &mut VertexCtx,
    mu: &Partition,
    w: (Ratio<i64>, Ratio<i64>),
) -> Result<ExactScalar, AmplitudeError> {
    let triple = PartitionTriple::new(mu.clone(), Partition::empty(), Partition::empty());
    hodge_sum(ctx, &triple, w, false)
}

/// Two-partition Hodge integral generating function.
pub fn g_two(
    ctx: &mut VertexCtx,
    mu1: &Partition,
    mu2: &Partition,
    w: (Ratio<i64>, Ratio<i64>),
) -> Result<ExactScalar, AmplitudeError> {
    let triple = PartitionTriple::new(mu1.clone(), mu2.clone(), Partition::empty());
    hodge_sum(ctx, &triple, w, false)
}

/// Three-partition Hodge integral generating function, built on Wt.
pub fn g_three(
    ctx: &mut VertexCtx,
    mu: &PartitionTriple,
    w: (Ratio<i64>, Ratio<i64>),
) -> Result<ExactScalar, AmplitudeError> {
    hodge_sum(ctx, mu, w, true)
}
