//! GKM graphs: fixed points as vertices, invariant curves as edges labeled
//! by characters defined up to sign. Loops (curves with a single fixed
//! point) are allowed and carry no weight.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exp_ring::linalg::{is_unimodular, mat_vec_i64};
use crate::exp_ring::{Character, ExponentVector};

/// A torus-fixed point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vertex {
    pub id: String,
    pub metadata: BTreeMap<String, String>,
}

impl Vertex {
    pub fn new(id: impl Into<String>) -> Self {
        Vertex {
            id: id.into(),
            metadata: BTreeMap::new(),
        }
    }
}

/// An invariant curve. `u == v` encodes a loop, which has no weight;
/// a non-loop edge carries a nonzero character, stored sign-normalized
/// (semantics are sign-blind).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Edge {
    pub u: String,
    pub v: String,
    pub weight: Option<ExponentVector>,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn character(&self) -> Option<Character> {
        self.weight
            .as_ref()
            .map(|w| Character::new(w.clone()).expect("non-loop weight is nonzero"))
    }
}

/// The GKM graph of a T-skeletal variety. Immutable after construction;
/// construction enforces all type invariants.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GkmGraph {
    rank: usize,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    index: BTreeMap<String, usize>,
}

impl GkmGraph {
    /// Build a graph, checking id uniqueness, endpoint existence, weight
    /// rank and the loop/weight discipline. Vertices are sorted by id,
    /// edges canonically; weights are sign-normalized for storage.
    pub fn new(
        rank: usize,
        mut vertices: Vec<Vertex>,
        edges: Vec<(String, String, Option<ExponentVector>)>,
    ) -> Result<Self> {
        vertices.sort_by(|a, b| a.id.cmp(&b.id));
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.id.clone()));
            }
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v, weight) in edges {
            if !index.contains_key(&u) {
                return Err(Error::UnknownVertex(u));
            }
            if !index.contains_key(&v) {
                return Err(Error::UnknownVertex(v));
            }
            let is_loop = u == v;
            let weight = match (is_loop, weight) {
                (true, None) => None,
                (true, Some(_)) => {
                    return Err(Error::InvalidEdge {
                        u,
                        v,
                        reason: "loops carry no weight".into(),
                    })
                }
                (false, None) => {
                    return Err(Error::InvalidEdge {
                        u,
                        v,
                        reason: "non-loop edge without weight".into(),
                    })
                }
                (false, Some(w)) => {
                    if w.rank() != rank {
                        return Err(Error::RankMismatch {
                            left: rank,
                            right: w.rank(),
                        });
                    }
                    if w.is_zero() {
                        return Err(Error::InvalidEdge {
                            u,
                            v,
                            reason: "zero weight on non-loop edge".into(),
                        });
                    }
                    Some(w.sign_normalized())
                }
            };
            let (u, v) = if u <= v { (u, v) } else { (v, u) };
            normalized.push(Edge { u, v, weight });
        }
        normalized.sort();
        Ok(GkmGraph {
            rank,
            vertices,
            edges: normalized,
            index,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = &str> {
        self.vertices.iter().map(|v| v.id.as_str())
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains_vertex(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Recompute the summary used by the `validate` pipeline: counts plus
    /// the multiset of primitive edge directions.
    pub fn validate(&self) -> ValidationReport {
        let mut directions: BTreeMap<ExponentVector, usize> = BTreeMap::new();
        let mut loops = 0;
        for e in &self.edges {
            match &e.weight {
                None => loops += 1,
                Some(w) => {
                    let dir = w.primitive_direction().expect("nonzero weight");
                    *directions.entry(dir).or_insert(0) += 1;
                }
            }
        }
        ValidationReport {
            vertex_count: self.vertices.len(),
            edge_count: self.edges.len(),
            loop_count: loops,
            directions,
        }
    }

    /// Group non-loop edges by primitive direction (up to sign); each class
    /// is returned as the subgraph on the full vertex set carrying only
    /// that class's edges — the graph model of a codimension-one fixed
    /// locus `X^{ker π}`.
    pub fn cs_partition(&self) -> BTreeMap<ExponentVector, GkmGraph> {
        let mut classes: BTreeMap<ExponentVector, Vec<(String, String, Option<ExponentVector>)>> =
            BTreeMap::new();
        for e in &self.edges {
            if let Some(w) = &e.weight {
                let dir = w.primitive_direction().expect("nonzero weight");
                classes
                    .entry(dir)
                    .or_default()
                    .push((e.u.clone(), e.v.clone(), Some(w.clone())));
            }
        }
        classes
            .into_iter()
            .map(|(dir, edges)| {
                let g = GkmGraph::new(self.rank, self.vertices.clone(), edges)
                    .expect("class subgraph inherits validity");
                (dir, g)
            })
            .collect()
    }

    /// The GKM graph of a product, over the direct sum of the two lattices.
    /// Vertex `(u, v)` gets id `"(u,v)"`.
    pub fn product(&self, other: &GkmGraph) -> GkmGraph {
        let rank = self.rank + other.rank;
        let pair = |a: &str, b: &str| format!("({a},{b})");
        let vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .flat_map(|u| {
                other
                    .vertices
                    .iter()
                    .map(move |v| Vertex::new(pair(&u.id, &v.id)))
            })
            .collect();
        let mut edges = Vec::new();
        for e in &self.edges {
            for v in &other.vertices {
                let w = e
                    .weight
                    .as_ref()
                    .map(|w| ExponentVector(w.0.iter().chain(vec![0; other.rank].iter()).copied().collect()));
                edges.push((pair(&e.u, &v.id), pair(&e.v, &v.id), w));
            }
        }
        for e in &other.edges {
            for u in &self.vertices {
                let w = e
                    .weight
                    .as_ref()
                    .map(|w| ExponentVector(vec![0; self.rank].iter().chain(w.0.iter()).copied().collect()));
                edges.push((pair(&u.id, &e.u), pair(&u.id, &e.v), w));
            }
        }
        GkmGraph::new(rank, vertices, edges).expect("product of valid graphs is valid")
    }

    /// Subgraph on a vertex subset, keeping exactly the edges with both
    /// endpoints inside.
    pub fn induced_subgraph(&self, vs: &BTreeSet<String>) -> Result<GkmGraph> {
        for id in vs {
            if !self.index.contains_key(id) {
                return Err(Error::UnknownVertex(id.clone()));
            }
        }
        let vertices = self
            .vertices
            .iter()
            .filter(|v| vs.contains(&v.id))
            .cloned()
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| vs.contains(&e.u) && vs.contains(&e.v))
            .map(|e| (e.u.clone(), e.v.clone(), e.weight.clone()))
            .collect();
        GkmGraph::new(self.rank, vertices, edges)
    }

    /// Verify that an action's generators are graph automorphisms mapping
    /// each edge weight to ± the image edge's weight, and return a handle
    /// usable by the invariant-basis computation.
    pub fn register_action(&self, action: GraphAction) -> Result<CheckedAction> {
        for (k, g) in action.generators.iter().enumerate() {
            if g.lattice_map.len() != self.rank
                || g.lattice_map.iter().any(|row| row.len() != self.rank)
            {
                return Err(Error::InvalidAction(format!(
                    "generator {k}: lattice map is not {r}x{r}",
                    r = self.rank
                )));
            }
            if !is_unimodular(&g.lattice_map) {
                return Err(Error::InvalidAction(format!(
                    "generator {k}: lattice map is not unimodular"
                )));
            }
            // vertex_map must be a bijection of the vertex set
            let mut seen = BTreeSet::new();
            for v in &self.vertices {
                let img = g.vertex_map.get(&v.id).ok_or_else(|| {
                    Error::InvalidAction(format!("generator {k}: no image for vertex `{}`", v.id))
                })?;
                if !self.index.contains_key(img) {
                    return Err(Error::InvalidAction(format!(
                        "generator {k}: image `{img}` is not a vertex"
                    )));
                }
                if !seen.insert(img.clone()) {
                    return Err(Error::InvalidAction(format!(
                        "generator {k}: vertex map is not injective at `{img}`"
                    )));
                }
            }
            // edge multiset must be preserved, with weights mapped up to sign
            let canon = |e: &Edge| -> (String, String, Option<ExponentVector>) {
                let (u, v) = if e.u <= e.v {
                    (e.u.clone(), e.v.clone())
                } else {
                    (e.v.clone(), e.u.clone())
                };
                (u, v, e.weight.as_ref().map(|w| w.sign_normalized()))
            };
            let mut original: BTreeMap<_, isize> = BTreeMap::new();
            for e in &self.edges {
                *original.entry(canon(e)).or_insert(0) += 1;
            }
            for e in &self.edges {
                let iu = g.vertex_map[&e.u].clone();
                let iv = g.vertex_map[&e.v].clone();
                let iw = e
                    .weight
                    .as_ref()
                    .map(|w| ExponentVector(mat_vec_i64(&g.lattice_map, &w.0)).sign_normalized());
                let image = Edge {
                    u: iu,
                    v: iv,
                    weight: iw,
                };
                let entry = original.entry(canon(&image)).or_insert(0);
                *entry -= 1;
                if *entry < 0 {
                    return Err(Error::InvalidAction(format!(
                        "generator {k}: edge {} -- {} does not map onto the edge multiset",
                        e.u, e.v
                    )));
                }
            }
        }
        Ok(CheckedAction {
            action,
            rank: self.rank,
            vertex_ids: self.vertex_ids().map(str::to_owned).collect(),
        })
    }
}

/// Summary produced by [`GkmGraph::validate`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValidationReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub loop_count: usize,
    /// primitive sign-normalized direction -> number of edges in that class
    pub directions: BTreeMap<ExponentVector, usize>,
}

/// One symmetry generator: a vertex permutation together with a compatible
/// unimodular lattice automorphism (`w(e^λ) = e^{wλ}`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ActionGenerator {
    pub vertex_map: BTreeMap<String, String>,
    pub lattice_map: Vec<Vec<i64>>,
}

/// A finite list of generators for a symmetry group of a GKM graph.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GraphAction {
    pub generators: Vec<ActionGenerator>,
}

/// An action verified against a specific graph by
/// [`GkmGraph::register_action`].
#[derive(Clone, Debug)]
pub struct CheckedAction {
    action: GraphAction,
    rank: usize,
    vertex_ids: Vec<String>,
}

impl CheckedAction {
    pub fn generators(&self) -> &[ActionGenerator] {
        &self.action.generators
    }

    /// Fails unless the handle was registered against this exact graph.
    pub fn check_graph(&self, g: &GkmGraph) -> Result<()> {
        if self.rank != g.rank()
            || self.vertex_ids.len() != g.num_vertices()
            || !self
                .vertex_ids
                .iter()
                .zip(g.vertex_ids())
                .all(|(a, b)| a == b)
        {
            return Err(Error::UnregisteredAction(
                "handle was registered for a different graph".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp_ring::ExponentVector;

    fn ev(coords: &[i64]) -> ExponentVector {
        ExponentVector(coords.to_vec())
    }

    /// The P^1 graph: two vertices joined by one edge of weight (1).
    pub(crate) fn p1_graph() -> GkmGraph {
        GkmGraph::new(
            1,
            vec![Vertex::new("0"), Vertex::new("inf")],
            vec![("0".into(), "inf".into(), Some(ev(&[1])))],
        )
        .unwrap()
    }

    #[test]
    fn validate_p1() {
        let g = p1_graph();
        let r = g.validate();
        assert_eq!(r.vertex_count, 2);
        assert_eq!(r.edge_count, 1);
        assert_eq!(r.loop_count, 0);
        assert_eq!(r.directions.len(), 1);
        assert_eq!(r.directions[&ev(&[1])], 1);
    }

    #[test]
    fn validate_loop_graph() {
        let g = GkmGraph::new(
            1,
            vec![Vertex::new("x")],
            vec![("x".into(), "x".into(), None)],
        )
        .unwrap();
        let r = g.validate();
        assert_eq!((r.vertex_count, r.edge_count, r.loop_count), (1, 1, 1));
        assert!(r.directions.is_empty());
    }

    #[test]
    fn zero_weight_rejected() {
        let err = GkmGraph::new(
            1,
            vec![Vertex::new("a"), Vertex::new("b")],
            vec![("a".into(), "b".into(), Some(ev(&[0])))],
        );
        assert!(err.is_err());
    }

    #[test]
    fn dangling_endpoint_rejected() {
        let err = GkmGraph::new(
            1,
            vec![Vertex::new("a")],
            vec![("a".into(), "b".into(), Some(ev(&[1])))],
        );
        assert!(matches!(err, Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn cs_partition_gcd_normalization() {
        let g = GkmGraph::new(
            2,
            vec![Vertex::new("a"), Vertex::new("b"), Vertex::new("c")],
            vec![
                ("a".into(), "b".into(), Some(ev(&[2, 0]))),
                ("b".into(), "c".into(), Some(ev(&[1, 0]))),
            ],
        )
        .unwrap();
        let classes = g.cs_partition();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[&ev(&[1, 0])].num_edges(), 2);
    }

    #[test]
    fn cs_partition_p1() {
        let classes = p1_graph().cs_partition();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[&ev(&[1])].num_edges(), 1);
    }

    #[test]
    fn product_p1_p1() {
        let g = p1_graph().product(&p1_graph());
        assert_eq!(g.num_vertices(), 4);
        assert_eq!(g.num_edges(), 4);
        let r = g.validate();
        assert_eq!(r.directions[&ev(&[1, 0])], 2);
        assert_eq!(r.directions[&ev(&[0, 1])], 2);
    }

    #[test]
    fn product_with_point() {
        let point = GkmGraph::new(0, vec![Vertex::new("pt")], vec![]).unwrap();
        let g = p1_graph().product(&point);
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.rank(), 1);
    }

    #[test]
    fn induced_subgraph_cases() {
        let g = p1_graph();
        let all: BTreeSet<String> = g.vertex_ids().map(str::to_owned).collect();
        assert_eq!(g.induced_subgraph(&all).unwrap(), g);

        let one: BTreeSet<String> = ["0".to_string()].into();
        let sub = g.induced_subgraph(&one).unwrap();
        assert_eq!((sub.num_vertices(), sub.num_edges()), (1, 0));

        let bad: BTreeSet<String> = ["nope".to_string()].into();
        assert!(g.induced_subgraph(&bad).is_err());
    }

    #[test]
    fn p1_swap_action_accepted() {
        let g = p1_graph();
        let action = GraphAction {
            generators: vec![ActionGenerator {
                vertex_map: [("0".into(), "inf".into()), ("inf".into(), "0".into())].into(),
                lattice_map: vec![vec![-1]],
            }],
        };
        let handle = g.register_action(action).unwrap();
        handle.check_graph(&g).unwrap();
    }

    #[test]
    fn identity_action_accepted() {
        let g = p1_graph();
        let action = GraphAction {
            generators: vec![ActionGenerator {
                vertex_map: g.vertex_ids().map(|v| (v.to_owned(), v.to_owned())).collect(),
                lattice_map: vec![vec![1]],
            }],
        };
        assert!(g.register_action(action).is_ok());
    }

    #[test]
    fn bad_action_rejected() {
        let g = p1_graph();
        // swapping vertices while fixing the lattice does not respect weights
        // here it does respect them (weight (1) -> (1) = ±(1)), so use a
        // non-bijective map instead
        let action = GraphAction {
            generators: vec![ActionGenerator {
                vertex_map: [("0".into(), "0".into()), ("inf".into(), "0".into())].into(),
                lattice_map: vec![vec![1]],
            }],
        };
        assert!(g.register_action(action).is_err());

        // weight image mismatch: P^1 x point with lattice map that breaks the weight
        let g2 = p1_graph().product(&p1_graph());
        let action = GraphAction {
            generators: vec![ActionGenerator {
                vertex_map: g2
                    .vertex_ids()
                    .map(|v| (v.to_owned(), v.to_owned()))
                    .collect(),
                lattice_map: vec![vec![1, 1], vec![0, 1]],
            }],
        };
        assert!(g2.register_action(action).is_err());
    }
}
