//! GKM graphs of smooth complete toric varieties from their fans:
//! maximal cones are the fixed points, shared walls the invariant curves,
//! and the wall's primitive annihilator in the dual lattice is the weight.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exp_ring::linalg::{determinant, integer_kernel_i64};
use crate::exp_ring::ExponentVector;
use crate::gkm_graph::{GkmGraph, Vertex};
use num_traits::{One, Signed};

/// A rational fan given by primitive rays and full-dimensional simplicial
/// maximal cones (as ray-index sets).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fan {
    pub rank: usize,
    pub rays: Vec<ExponentVector>,
    pub maximal_cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(
        rank: usize,
        rays: Vec<ExponentVector>,
        maximal_cones: Vec<Vec<usize>>,
    ) -> Result<Self> {
        for (i, r) in rays.iter().enumerate() {
            if r.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: r.rank(),
                });
            }
            if r.is_zero() || r.content() != 1 {
                return Err(Error::InvalidFan(format!("ray {i} is not primitive")));
            }
            if rays[..i].contains(r) {
                return Err(Error::InvalidFan(format!("ray {i} repeats an earlier ray")));
            }
        }
        let mut cones = Vec::with_capacity(maximal_cones.len());
        for (ci, cone) in maximal_cones.into_iter().enumerate() {
            let mut cone = cone;
            cone.sort_unstable();
            cone.dedup();
            if cone.len() != rank {
                return Err(Error::InvalidFan(format!(
                    "cone {ci} does not have {rank} distinct rays"
                )));
            }
            if cone.iter().any(|&r| r >= rays.len()) {
                return Err(Error::InvalidFan(format!("cone {ci} references a missing ray")));
            }
            cones.push(cone);
        }
        Ok(Fan {
            rank,
            rays,
            maximal_cones: cones,
        })
    }
}

/// Build the GKM graph of the toric variety of a smooth fan whose walls
/// each bound exactly two maximal cones (a necessary, not sufficient,
/// proxy for completeness; wall-connectivity of the cones is checked too).
///
/// Vertex `sigma{i}` is the `i`-th maximal cone; the graph lattice is the
/// dual lattice `M`.
pub fn build_toric(fan: &Fan) -> Result<GkmGraph> {
    let n = fan.rank;
    // smoothness: each maximal cone's rays form a Z-basis
    for (ci, cone) in fan.maximal_cones.iter().enumerate() {
        let m: Vec<Vec<i64>> = cone.iter().map(|&r| fan.rays[r].0.clone()).collect();
        let det = determinant(&m);
        if det == BigInt::from(0) {
            return Err(Error::InvalidFan(format!("cone {ci} is not simplicial")));
        }
        if !det.abs().is_one() {
            return Err(Error::InvalidFan(format!(
                "cone {ci} is not smooth (|det| = {})",
                det.abs()
            )));
        }
    }
    // walls: facets obtained by dropping one ray of a maximal cone
    let mut walls: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (ci, cone) in fan.maximal_cones.iter().enumerate() {
        for drop in 0..cone.len() {
            let facet: Vec<usize> = cone
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != drop)
                .map(|(_, &r)| r)
                .collect();
            walls.entry(facet).or_default().push(ci);
        }
    }
    for (facet, cones) in &walls {
        if cones.len() != 2 {
            return Err(Error::InvalidFan(format!(
                "wall {facet:?} is shared by {} maximal cones, expected 2",
                cones.len()
            )));
        }
    }
    // wall-connectivity of the cone set
    if !fan.maximal_cones.is_empty() {
        let mut seen = vec![false; fan.maximal_cones.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for cones in walls.values() {
                if cones.contains(&c) {
                    for &d in cones {
                        if !seen[d] {
                            seen[d] = true;
                            stack.push(d);
                        }
                    }
                }
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::InvalidFan(
                "maximal cones are not connected through walls".into(),
            ));
        }
    }

    let vertex_id = |ci: usize| format!("sigma{ci}");
    let vertices: Vec<Vertex> = (0..fan.maximal_cones.len())
        .map(|ci| Vertex::new(vertex_id(ci)))
        .collect();
    let mut edges = Vec::new();
    for (facet, cones) in &walls {
        // weight: primitive generator of { m in M : m ⊥ span(wall) }
        let rows: Vec<Vec<i64>> = facet.iter().map(|&r| fan.rays[r].0.clone()).collect();
        let kernel = integer_kernel_i64(&rows, n);
        if kernel.len() != 1 {
            return Err(Error::InvalidFan(format!(
                "wall {facet:?} does not span a hyperplane"
            )));
        }
        let weight: Vec<i64> = kernel[0]
            .iter()
            .map(|c| i64::try_from(c).expect("small annihilator"))
            .collect();
        edges.push((
            vertex_id(cones[0]),
            vertex_id(cones[1]),
            Some(ExponentVector(weight).sign_normalized()),
        ));
    }
    GkmGraph::new(n, vertices, edges)
}

/// The fan of `P^1`: rays `±e_1`, two maximal cones.
pub fn p1_fan() -> Fan {
    Fan::new(
        1,
        vec![ExponentVector(vec![1]), ExponentVector(vec![-1])],
        vec![vec![0], vec![1]],
    )
    .unwrap()
}

/// The fan of `P^2`: rays `e_1`, `e_2`, `-e_1-e_2`, three maximal cones.
pub fn p2_fan() -> Fan {
    Fan::new(
        2,
        vec![
            ExponentVector(vec![1, 0]),
            ExponentVector(vec![0, 1]),
            ExponentVector(vec![-1, -1]),
        ],
        vec![vec![0, 1], vec![1, 2], vec![2, 0]],
    )
    .unwrap()
}

/// The fan of `P^1 x P^1`: rays `±e_1`, `±e_2`, four quadrant cones.
pub fn p1xp1_fan() -> Fan {
    Fan::new(
        2,
        vec![
            ExponentVector(vec![1, 0]),
            ExponentVector(vec![-1, 0]),
            ExponentVector(vec![0, 1]),
            ExponentVector(vec![0, -1]),
        ],
        vec![vec![0, 2], vec![2, 1], vec![1, 3], vec![3, 0]],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1_graph_from_fan() {
        let g = build_toric(&p1_fan()).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.edges()[0].weight.as_ref().unwrap().0, vec![1]);
    }

    #[test]
    fn p2_graph_from_fan() {
        let g = build_toric(&p2_fan()).unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_edges(), 3);
        let weights: Vec<Vec<i64>> = g
            .edges()
            .iter()
            .map(|e| e.weight.as_ref().unwrap().0.clone())
            .collect();
        assert!(weights.contains(&vec![1, 0]));
        assert!(weights.contains(&vec![0, 1]));
        assert!(weights.contains(&vec![1, -1]));
    }

    #[test]
    fn p1xp1_matches_product() {
        let g = build_toric(&p1xp1_fan()).unwrap();
        let p1 = build_toric(&p1_fan()).unwrap();
        let prod = p1.product(&p1);
        assert_eq!(g.num_vertices(), prod.num_vertices());
        assert_eq!(g.num_edges(), prod.num_edges());
        assert_eq!(g.validate().directions, prod.validate().directions);
        // every vertex meets one edge of each coordinate direction
        for v in g.vertex_ids() {
            let mut dirs: Vec<Vec<i64>> = g
                .edges()
                .iter()
                .filter(|e| e.u == v || e.v == v)
                .map(|e| e.weight.as_ref().unwrap().0.clone())
                .collect();
            dirs.sort();
            assert_eq!(dirs, vec![vec![0, 1], vec![1, 0]]);
        }
    }

    #[test]
    fn weights_annihilate_their_walls() {
        let g = build_toric(&p2_fan()).unwrap();
        let fan = p2_fan();
        for e in g.edges() {
            let w = e.weight.as_ref().unwrap();
            assert_eq!(w.content(), 1, "weight is primitive");
            // weight is orthogonal to the shared wall's ray
            let shared = fan
                .rays
                .iter()
                .filter(|r| {
                    let dot: i64 = r.0.iter().zip(&w.0).map(|(a, b)| a * b).sum();
                    dot == 0
                })
                .count();
            assert!(shared >= 1);
        }
    }

    #[test]
    fn incomplete_fan_rejected() {
        let fan = Fan::new(
            2,
            vec![ExponentVector(vec![1, 0]), ExponentVector(vec![0, 1])],
            vec![vec![0, 1]],
        )
        .unwrap();
        assert!(matches!(build_toric(&fan), Err(Error::InvalidFan(_))));
    }

    #[test]
    fn non_smooth_cone_rejected() {
        let fan = Fan::new(
            2,
            vec![
                ExponentVector(vec![1, 0]),
                ExponentVector(vec![1, 2]),
                ExponentVector(vec![-1, -1]),
            ],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        assert!(matches!(build_toric(&fan), Err(Error::InvalidFan(_))));
    }

    #[test]
    fn non_primitive_ray_rejected() {
        assert!(Fan::new(1, vec![ExponentVector(vec![2])], vec![vec![0]]).is_err());
    }
}
