//! Effective classes (edge degrees plus boundary partitions) and
//! splitting types at bivalent vertices.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::partition::Partition;

use super::FtcyGraph;

/// A curve class on an FTCY graph: a degree for every unoriented edge
/// and a boundary partition at every univalent vertex, with sizes
/// matching the adjacent degree and equal degrees across bivalent
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EffectiveClass {
    /// Edge id to degree d.
    pub degrees: BTreeMap<String, u32>,
    /// Univalent vertex id to boundary partition, |mu| = adjacent d.
    pub boundary: BTreeMap<String, Partition>,
}

/// A choice of partition at every bivalent vertex, sized by the
/// adjacent edge degree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SplittingType {
    pub assignment: BTreeMap<String, Partition>,
}

impl SplittingType {
    /// z of the splitting type: the product of z over its partitions.
    pub fn z(&self) -> u64 {
        self.assignment.values().map(Partition::z).product()
    }
}

impl FtcyGraph {
    /// Groups unoriented edges into classes forced to share a degree:
    /// the two edges at each bivalent vertex are linked. Returns a
    /// representative index for each edge.
    fn degree_classes(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.edge_count()).collect();
        fn find(parent: &mut [usize], mut k: usize) -> usize {
            while parent[k] != k {
                parent[k] = parent[parent[k]];
                k = parent[k];
            }
            k
        }
        for &v in &self.bivalent_vertices() {
            let inc = self.incoming(v);
            let (a, b) = (
                find(&mut parent, inc[0].edge),
                find(&mut parent, inc[1].edge),
            );
            let lo = a.min(b);
            let hi = a.max(b);
            parent[hi] = lo;
        }
        (0..self.edge_count())
            .map(|k| find(&mut parent, k))
            .collect()
    }

    /// Every effective class under the per-edge degree caps.
    /// Deterministic order: degree vectors counted up with the lowest
    /// class index fastest, boundary partitions in enumeration order.
    pub fn effective_classes(&self, caps: &BTreeMap<String, u32>) -> Vec<EffectiveClass> {
        let class_of = self.degree_classes();
        let mut reps: Vec<usize> = class_of.clone();
        reps.sort_unstable();
        reps.dedup();
        // a class is capped by the tightest cap among its edges
        let class_cap: Vec<u32> = reps
            .iter()
            .map(|&r| {
                (0..self.edge_count())
                    .filter(|&k| class_of[k] == r)
                    .map(|k| {
                        caps.get(&self.edge_record(k).id)
                            .copied()
                            .unwrap_or(0)
                    })
                    .min()
                    .unwrap_or(0)
            })
            .collect();
        let boundary_vertices = self.univalent_vertices();
        let mut out = Vec::new();
        let mut degrees = alloc::vec![0u32; reps.len()];
        loop {
            // expand this degree vector into per-edge degrees
            let mut degree_map = BTreeMap::new();
            for k in 0..self.edge_count() {
                let slot = reps.iter().position(|&r| r == class_of[k]).unwrap();
                degree_map.insert(self.edge_record(k).id.clone(), degrees[slot]);
            }
            // cartesian product of boundary partitions
            let choices: Vec<Vec<Partition>> = boundary_vertices
                .iter()
                .map(|&v| {
                    let e = self.incoming(v)[0];
                    let slot = reps.iter().position(|&r| r == class_of[e.edge]).unwrap();
                    Partition::enumerate(degrees[slot])
                })
                .collect();
            let mut pick = alloc::vec![0usize; choices.len()];
            loop {
                let boundary: BTreeMap<String, Partition> = boundary_vertices
                    .iter()
                    .zip(&pick)
                    .map(|(&v, &c)| {
                        (String::from(self.vertex_id(v)), choices
                            [boundary_vertices.iter().position(|&u| u == v).unwrap()][c]
                            .clone())
                    })
                    .collect();
                out.push(EffectiveClass {
                    degrees: degree_map.clone(),
                    boundary,
                });
                // advance the partition picks
                let mut i = 0;
                loop {
                    if i == pick.len() {
                        break;
                    }
                    pick[i] += 1;
                    if pick[i] < choices[i].len() {
                        break;
                    }
                    pick[i] = 0;
                    i += 1;
                }
                if i == pick.len() {
                    break;
                }
            }
            // advance the degree vector
            let mut i = 0;
            loop {
                if i == degrees.len() {
                    return out;
                }
                degrees[i] += 1;
                if degrees[i] <= class_cap[i] {
                    break;
                }
                degrees[i] = 0;
                i += 1;
            }
        }
    }

    /// All splitting types of an effective class: one partition per
    /// bivalent vertex, sized by the adjacent degree.
    pub fn splitting_types(&self, class: &EffectiveClass) -> Vec<SplittingType> {
        let bivalent = self.bivalent_vertices();
        let choices: Vec<(String, Vec<Partition>)> = bivalent
            .iter()
            .map(|&v| {
                let e = self.incoming(v)[0];
                let d = class.degrees[&self.edge_record(e.edge).id];
                (String::from(self.vertex_id(v)), Partition::enumerate(d))
            })
            .collect();
        let mut out = Vec::new();
        let mut pick = alloc::vec![0usize; choices.len()];
        loop {
            out.push(SplittingType {
                assignment: choices
                    .iter()
                    .zip(&pick)
                    .map(|((id, opts), &c)| (id.clone(), opts[c].clone()))
                    .collect(),
            });
            let mut i = 0;
            loop {
                if i == pick.len() {
                    return out;
                }
                pick[i] += 1;
                if pick[i] < choices[i].1.len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ftcy::{FtcyGraph, OrientedEdge};

    fn caps_all(g: &FtcyGraph, cap: u32) -> BTreeMap<String, u32> {
        (0..g.edge_count())
            .map(|k| (g.edge_record(k).id.clone(), cap))
            .collect()
    }

    #[test]
    fn standard_vertex_caps_one() {
        let g = FtcyGraph::standard_vertex([0, 0, 0]);
        let classes = g.effective_classes(&caps_all(&g, 1));
        assert_eq!(classes.len(), 8);
        // all-zero class exists and has empty boundaries
        assert!(classes.iter().any(|c| {
            c.degrees.values().all(|&d| d == 0)
                && c.boundary.values().all(Partition::is_empty)
        }));
        let caps0 = caps_all(&g, 0);
        assert_eq!(g.effective_classes(&caps0).len(), 1);
        // degree 2 on one leg brings both partitions of 2
        let classes = g.effective_classes(&caps_all(&g, 2));
        assert_eq!(classes.len(), 4 * 4 * 4 / (4 * 4) * 16); // 4 options per leg
        assert_eq!(classes.len(), 64);
    }

    #[test]
    fn bivalent_link_forces_equal_degrees() {
        let g = FtcyGraph::standard_vertex([0, 0, 0]);
        let e = OrientedEdge::fwd(0);
        let d = g.degenerate(e, g.framing(e).unwrap()).unwrap();
        // unequal caps across the bivalent vertex: min wins
        let mut caps = caps_all(&d, 3);
        let half_id = {
            let v = d.bivalent_vertices()[0];
            let inc = d.incoming(v);
            d.edge_record(inc[0].edge).id.clone()
        };
        caps.insert(half_id.clone(), 1);
        for class in d.effective_classes(&caps) {
            let linked = class.degrees[&half_id];
            assert!(linked <= 1);
            let v = d.bivalent_vertices()[0];
            let inc = d.incoming(v);
            let other = d.edge_record(inc[1].edge).id.clone();
            assert_eq!(class.degrees[&other], linked);
        }
    }

    #[test]
    fn splitting_types_sizes() {
        let g = FtcyGraph::standard_vertex([0, 0, 0]);
        let e = OrientedEdge::fwd(0);
        let d = g.degenerate(e, g.framing(e).unwrap()).unwrap();
        let caps = caps_all(&d, 2);
        let classes = d.effective_classes(&caps);
        for class in &classes {
            let splits = d.splitting_types(class);
            let v = d.bivalent_vertices()[0];
            let inc = d.incoming(v);
            let deg = class.degrees[&d.edge_record(inc[0].edge).id];
            assert_eq!(splits.len(), Partition::enumerate(deg).len());
            for s in &splits {
                assert_eq!(
                    s.assignment[d.vertex_id(v)].size(),
                    deg as u64
                );
            }
        }
        // z of a splitting type multiplies over vertices
        let mut st = SplittingType {
            assignment: BTreeMap::new(),
        };
        st.assignment
            .insert(String::from("a"), Partition::new([2, 1]));
        st.assignment
            .insert(String::from("b"), Partition::new([1, 1]));
        assert_eq!(st.z(), 4);
    }
}
