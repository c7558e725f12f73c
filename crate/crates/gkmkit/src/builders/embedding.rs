//! GKM graphs of projective group embeddings from their combinatorial
//! shadow: a finite reflection group acting on `Δ`, the rank-one and
//! rank-two idempotent data, and one closed-orbit graph (over `Δ⊕Δ`) per
//! element of `Λ_1`, labeled by pairs `(f, u)`.
//!
//! Edges come in two layers: the closed-orbit graphs contribute their own
//! edges, and each rank-two idempotent `f` contributes, for every group
//! element `u`, an edge between the vertices labeled `(f_1, u)` and
//! `(f_2, u)` with weight `(a, a ∘ int(u))`, where `a` is the root of the
//! associated reflection or the character cut out by `f`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exp_ring::linalg::mat_vec_i64;
use crate::exp_ring::ExponentVector;
use crate::gkm_graph::{GkmGraph, Vertex};

use super::weyl::{Mat, WeylGroup};

/// Per-face data of a rank-two idempotent, following the two congruence
/// branches: either a reflection with its root, or a nonzero character.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Branch {
    Reflection { root: ExponentVector, matrix: Mat },
    Character { chi: ExponentVector },
}

/// A rank-two idempotent with its two lower rank-one idempotents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct E2Element {
    pub name: String,
    pub f1: usize,
    pub f2: usize,
    pub branch: Branch,
}

/// Combinatorial shadow of a reductive monoid, sufficient to assemble the
/// GKM graph of its projectivization over `Δ⊕Δ`.
#[derive(Clone, Debug)]
pub struct EmbeddingDatum {
    /// The unit-group Weyl group, realized on `Δ`.
    pub weyl: WeylGroup,
    /// Names of the rank-one idempotents.
    pub e1: Vec<String>,
    /// For each rank-one idempotent, the index (into `lambda1`) of its orbit.
    pub e1_orbit: Vec<usize>,
    /// Orbit representatives: indices into `e1`.
    pub lambda1: Vec<usize>,
    /// Conjugation action of each Weyl generator on `e1` (image indices).
    pub e1_action: Vec<Vec<usize>>,
    /// Rank-two idempotents with branch data.
    pub e2: Vec<E2Element>,
    /// One GKM graph over `Δ⊕Δ` per `lambda1` entry.
    pub closed_orbit_graphs: Vec<GkmGraph>,
    /// Vertex labeling: `(e1 index, weyl element index) -> vertex id`.
    pub labeling: BTreeMap<(usize, usize), String>,
}

impl EmbeddingDatum {
    /// Extend the generator action on `e1` to the whole group, via the
    /// canonical words of the enumeration.
    pub fn element_action(&self, w: usize) -> Vec<usize> {
        let mut act: Vec<usize> = (0..self.e1.len()).collect();
        // act(s_{i1} ... s_{ik}) = a_{i1} ∘ ... ∘ a_{ik}
        for &g in self.weyl.word(w).iter().rev() {
            act = act.iter().map(|&f| self.e1_action[g][f]).collect();
        }
        act
    }

    fn validate(&self) -> Result<()> {
        let n = self.e1.len();
        if self.e1_orbit.len() != n {
            return Err(Error::InvalidDatum("e1_orbit length != |E1|".into()));
        }
        if self.e1_action.len() != self.weyl.generators().len() {
            return Err(Error::InvalidDatum(
                "e1_action must list one permutation per Weyl generator".into(),
            ));
        }
        for (g, act) in self.e1_action.iter().enumerate() {
            let mut seen = vec![false; n];
            if act.len() != n {
                return Err(Error::InvalidDatum(format!(
                    "e1_action[{g}] length != |E1|"
                )));
            }
            for &img in act {
                if img >= n || seen[img] {
                    return Err(Error::InvalidDatum(format!(
                        "e1_action[{g}] is not a permutation"
                    )));
                }
                seen[img] = true;
            }
        }
        if self.closed_orbit_graphs.len() != self.lambda1.len() {
            return Err(Error::InvalidDatum(
                "need one closed-orbit graph per lambda1 element".into(),
            ));
        }
        for (&rep, orbit) in self.lambda1.iter().zip(0..) {
            if rep >= n || self.e1_orbit[rep] != orbit {
                return Err(Error::InvalidDatum(format!(
                    "lambda1[{orbit}] is not a representative of its orbit"
                )));
            }
        }
        // orbit labeling must be W-stable
        for w in 0..self.weyl.order() {
            let act = self.element_action(w);
            for f in 0..n {
                if self.e1_orbit[act[f]] != self.e1_orbit[f] {
                    return Err(Error::InvalidDatum(
                        "e1_orbit is not constant on W-orbits".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Assemble the embedding's GKM graph over `Δ⊕Δ`.
pub fn build_group_embedding(datum: &EmbeddingDatum) -> Result<GkmGraph> {
    datum.validate()?;
    let r = datum.weyl.rank();
    let rank2 = 2 * r;

    // vertices: disjoint union of the closed-orbit graphs
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut owner: BTreeMap<String, usize> = BTreeMap::new();
    for (oi, g) in datum.closed_orbit_graphs.iter().enumerate() {
        if g.rank() != rank2 {
            return Err(Error::InvalidDatum(format!(
                "closed-orbit graph {oi} has rank {}, expected {rank2}",
                g.rank()
            )));
        }
        for v in g.vertices() {
            if owner.insert(v.id.clone(), oi).is_some() {
                return Err(Error::InvalidDatum(format!(
                    "vertex id `{}` appears in two closed-orbit graphs",
                    v.id
                )));
            }
            vertices.push(v.clone());
        }
    }

    // labeling must cover E1 x W, land in the right orbit graph, and be
    // surjective onto the vertex union (labels biject with R_1)
    let mut covered: BTreeSet<&String> = BTreeSet::new();
    for f in 0..datum.e1.len() {
        for w in 0..datum.weyl.order() {
            let vid = datum.labeling.get(&(f, w)).ok_or_else(|| {
                Error::InvalidDatum(format!(
                    "labeling misses ({}, element {w})",
                    datum.e1[f]
                ))
            })?;
            match owner.get(vid) {
                None => {
                    return Err(Error::InvalidDatum(format!(
                        "labeling target `{vid}` is not a closed-orbit vertex"
                    )))
                }
                Some(&oi) if oi != datum.e1_orbit[f] => {
                    return Err(Error::InvalidDatum(format!(
                        "labeling sends ({}, element {w}) outside its orbit graph",
                        datum.e1[f]
                    )))
                }
                Some(_) => {}
            }
            covered.insert(vid);
        }
    }
    if covered.len() != vertices.len() {
        return Err(Error::InvalidDatum(
            "labeling is not surjective onto the fixed-point set".into(),
        ));
    }

    // type 1/2 edges: those of the closed-orbit graphs
    let mut edges: Vec<(String, String, Option<ExponentVector>)> = Vec::new();
    for g in &datum.closed_orbit_graphs {
        for e in g.edges() {
            edges.push((e.u.clone(), e.v.clone(), e.weight.clone()));
        }
    }

    // type 3 edges: one per (f in E2, u in W), merged over u when the
    // vertex pair and the weight direction coincide (keeping the smallest
    // multiple, which imposes the strongest congruence)
    let mut type3: BTreeMap<(String, String, ExponentVector), ExponentVector> = BTreeMap::new();
    for f in datum.e2.iter() {
        if f.f1 >= datum.e1.len() || f.f2 >= datum.e1.len() {
            return Err(Error::InvalidDatum(format!(
                "E2 element `{}` references a missing rank-one idempotent",
                f.name
            )));
        }
        let a = match &f.branch {
            Branch::Reflection { root, matrix } => {
                if root.rank() != r || root.is_zero() {
                    return Err(Error::InvalidDatum(format!(
                        "E2 element `{}`: reflection root must be a nonzero vector in Δ",
                        f.name
                    )));
                }
                let s = datum.weyl.index_of(matrix).ok_or_else(|| {
                    Error::InvalidDatum(format!(
                        "E2 element `{}`: reflection matrix is not a group element",
                        f.name
                    ))
                })?;
                // the reflection negates its root and swaps the two lower
                // idempotents by conjugation
                if datum.weyl.apply(s, root) != root.negated() {
                    return Err(Error::InvalidDatum(format!(
                        "E2 element `{}`: matrix does not negate the root",
                        f.name
                    )));
                }
                if datum.element_action(s)[f.f1] != f.f2 {
                    return Err(Error::InvalidDatum(format!(
                        "E2 element `{}`: f2 != s·f1·s",
                        f.name
                    )));
                }
                root.clone()
            }
            Branch::Character { chi } => {
                if chi.rank() != r || chi.is_zero() {
                    return Err(Error::InvalidDatum(format!(
                        "E2 element `{}`: character must be a nonzero vector in Δ",
                        f.name
                    )));
                }
                chi.clone()
            }
        };
        for u in 0..datum.weyl.order() {
            let v1 = datum.labeling[&(f.f1, u)].clone();
            let v2 = datum.labeling[&(f.f2, u)].clone();
            if v1 == v2 {
                return Err(Error::InvalidDatum(format!(
                    "E2 element `{}`: type-3 edge collapses to a loop at `{v1}`",
                    f.name
                )));
            }
            // a ∘ int(u) is the u^{-1}-transform of a
            let uinv = datum.weyl.inverse(u);
            let twisted = mat_vec_i64(datum.weyl.element(uinv), &a.0);
            let weight = ExponentVector(a.0.iter().chain(twisted.iter()).copied().collect());
            let (p, q) = if v1 <= v2 { (v1, v2) } else { (v2, v1) };
            let dir = weight.primitive_direction()?;
            let key = (p, q, dir);
            match type3.get(&key) {
                Some(existing) if existing.content() <= weight.content() => {}
                _ => {
                    type3.insert(key, weight.sign_normalized());
                }
            }
        }
    }
    for ((u, v, _), w) in type3 {
        edges.push((u, v, Some(w)));
    }
    GkmGraph::new(rank2, vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkm_graph::Vertex;

    fn trivial_weyl(rank: usize) -> WeylGroup {
        WeylGroup::from_generators(rank, vec![], 10).unwrap()
    }

    #[test]
    fn empty_e2_is_disjoint_union() {
        // two orbits, each a single loopless vertex, no E2: graph is the
        // disjoint union of the closed-orbit graphs
        let weyl = trivial_weyl(1);
        let g0 = GkmGraph::new(2, vec![Vertex::new("a")], vec![]).unwrap();
        let g1 = GkmGraph::new(2, vec![Vertex::new("b")], vec![]).unwrap();
        let datum = EmbeddingDatum {
            weyl,
            e1: vec!["e".into(), "f".into()],
            e1_orbit: vec![0, 1],
            lambda1: vec![0, 1],
            e1_action: vec![],
            e2: vec![],
            closed_orbit_graphs: vec![g0, g1],
            labeling: [((0, 0), "a".to_string()), ((1, 0), "b".to_string())].into(),
        };
        let g = build_group_embedding(&datum).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 0);
    }

    #[test]
    fn synthetic_branch_b_single_edge() {
        // trivial W, one E2 element in branch (b): a single type-3 edge
        // with weight (λ, λ)
        let weyl = trivial_weyl(1);
        let g0 = GkmGraph::new(
            2,
            vec![Vertex::new("x"), Vertex::new("y")],
            vec![],
        )
        .unwrap();
        let datum = EmbeddingDatum {
            weyl,
            e1: vec!["f1".into(), "f2".into()],
            e1_orbit: vec![0, 0],
            lambda1: vec![0],
            e1_action: vec![],
            e2: vec![E2Element {
                name: "f".into(),
                f1: 0,
                f2: 1,
                branch: Branch::Character {
                    chi: ExponentVector(vec![2]),
                },
            }],
            closed_orbit_graphs: vec![g0],
            labeling: [((0, 0), "x".to_string()), ((1, 0), "y".to_string())].into(),
        };
        let g = build_group_embedding(&datum).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.edges()[0].weight.as_ref().unwrap().0, vec![2, 2]);
    }

    #[test]
    fn branch_a_invariant_enforced() {
        // S_2 on Z^2 by coordinate swap, but the E2 element claims the
        // reflection fixes f1 -- rejected
        let swap = vec![vec![0, 1], vec![1, 0]];
        let weyl = WeylGroup::from_generators(2, vec![swap.clone()], 10).unwrap();
        let g0 = GkmGraph::new(
            4,
            vec![Vertex::new("x"), Vertex::new("y")],
            vec![],
        )
        .unwrap();
        let datum = EmbeddingDatum {
            weyl,
            e1: vec!["f1".into(), "f2".into()],
            e1_orbit: vec![0, 0],
            lambda1: vec![0],
            e1_action: vec![vec![0, 1]], // swap acts trivially: violates f2 = s f1 s
            e2: vec![E2Element {
                name: "f".into(),
                f1: 0,
                f2: 1,
                branch: Branch::Reflection {
                    root: ExponentVector(vec![1, -1]),
                    matrix: swap,
                },
            }],
            closed_orbit_graphs: vec![g0],
            labeling: [
                ((0, 0), "x".to_string()),
                ((0, 1), "y".to_string()),
                ((1, 0), "y".to_string()),
                ((1, 1), "x".to_string()),
            ]
            .into(),
        };
        assert!(matches!(
            build_group_embedding(&datum),
            Err(Error::InvalidDatum(_))
        ));
    }
}
