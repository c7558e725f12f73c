//! The rook monoid family: the Renner monoid of `n x n` matrices, whose
//! projectivization is the `P^{n^2-1}` embedding of `PGL_n`. Fixed points
//! are the rank-one partial permutations (the cells of an `n x n` grid);
//! the closed orbit is a product of two projective-space graphs, and the
//! rank-two idempotents `E_ii + E_jj` contribute the cross edges.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exp_ring::ExponentVector;
use crate::gkm_graph::{GkmGraph, Vertex};

use super::embedding::{build_group_embedding, Branch, E2Element, EmbeddingDatum};
use super::weyl::{Mat, WeylGroup};

fn permutation_matrix(n: usize, perm: &[usize]) -> Mat {
    // column a carries e_{perm[a]}
    let mut m = vec![vec![0i64; n]; n];
    for (a, &pa) in perm.iter().enumerate() {
        m[pa][a] = 1;
    }
    m
}

fn transposition(n: usize, i: usize, j: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(i, j);
    p
}

/// Read a permutation back off its matrix: `perm[a]` is the row of the 1
/// in column `a`.
fn matrix_permutation(m: &Mat) -> Vec<usize> {
    (0..m.len())
        .map(|a| (0..m.len()).find(|&r| m[r][a] == 1).expect("permutation matrix"))
        .collect()
}

fn cell_id(i: usize, j: usize) -> String {
    format!("E{i}_{j}")
}

/// The GKM graph of `P^{n-1}` with the full torus of rank `n`: the
/// complete graph on the coordinate points, edge `{a, b}` weighted
/// `ε_a - ε_b`.
pub fn projective_space_graph(n: usize) -> GkmGraph {
    let vertices: Vec<Vertex> = (1..=n).map(|a| Vertex::new(format!("p{a}"))).collect();
    let mut edges = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let mut w = vec![0i64; n];
            w[a - 1] = 1;
            w[b - 1] = -1;
            edges.push((
                format!("p{a}"),
                format!("p{b}"),
                Some(ExponentVector(w)),
            ));
        }
    }
    GkmGraph::new(n, vertices, edges).expect("complete graph on coordinate points")
}

/// The combinatorial shadow of the rook monoid of rank `n`.
pub fn rook_datum(n: usize) -> Result<EmbeddingDatum> {
    if n < 1 {
        return Err(Error::InvalidDatum("rook datum needs n >= 1".into()));
    }
    // W = S_n on Z^n via adjacent transpositions
    let generators: Vec<Mat> = (0..n.saturating_sub(1))
        .map(|k| permutation_matrix(n, &transposition(n, k, k + 1)))
        .collect();
    let weyl = WeylGroup::from_generators(n, generators, 1_000_000)?;

    let e1: Vec<String> = (1..=n).map(|i| format!("E{i}{i}")).collect();
    let e1_orbit = vec![0; n];
    let lambda1 = vec![0];
    // conjugation s E_ii s = E_{s(i)s(i)}
    let e1_action: Vec<Vec<usize>> = (0..n.saturating_sub(1))
        .map(|k| {
            let t = transposition(n, k, k + 1);
            (0..n).map(|i| t[i]).collect()
        })
        .collect();

    // closed orbit G[E_11]G: product of a row P^{n-1} (left torus factor)
    // and a column P^{n-1} (right factor), with vertices renamed to cells
    let mut vertices = Vec::new();
    let mut edges: Vec<(String, String, Option<ExponentVector>)> = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            vertices.push(Vertex::new(cell_id(i, j)));
        }
    }
    let weight = |left: bool, a: usize, b: usize| -> ExponentVector {
        let mut w = vec![0i64; 2 * n];
        let off = if left { 0 } else { n };
        w[off + a - 1] = 1;
        w[off + b - 1] = -1;
        ExponentVector(w)
    };
    for j in 1..=n {
        for a in 1..=n {
            for b in a + 1..=n {
                edges.push((cell_id(a, j), cell_id(b, j), Some(weight(true, a, b))));
            }
        }
    }
    for i in 1..=n {
        for a in 1..=n {
            for b in a + 1..=n {
                edges.push((cell_id(i, a), cell_id(i, b), Some(weight(false, a, b))));
            }
        }
    }
    let closed_orbit = GkmGraph::new(2 * n, vertices, edges)?;

    // E2 = { E_ii + E_jj : i < j }, branch (a): reflection (i j) with
    // root ε_i - ε_j
    let mut e2 = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let mut root = vec![0i64; n];
            root[i - 1] = 1;
            root[j - 1] = -1;
            e2.push(E2Element {
                name: format!("E{i}{i}+E{j}{j}"),
                f1: i - 1,
                f2: j - 1,
                branch: Branch::Reflection {
                    root: ExponentVector(root),
                    matrix: permutation_matrix(n, &transposition(n, i - 1, j - 1)),
                },
            });
        }
    }

    // stabilizer identification: (E_ii, u) lands on cell (i, u^{-1}(i))
    let mut labeling = BTreeMap::new();
    for w in 0..weyl.order() {
        let perm = matrix_permutation(weyl.element(w));
        let mut inv = vec![0usize; n];
        for (a, &pa) in perm.iter().enumerate() {
            inv[pa] = a;
        }
        for i in 0..n {
            labeling.insert((i, w), cell_id(i + 1, inv[i] + 1));
        }
    }

    Ok(EmbeddingDatum {
        weyl,
        e1,
        e1_orbit,
        lambda1,
        e1_action,
        e2,
        closed_orbit_graphs: vec![closed_orbit],
        labeling,
    })
}

/// Build the GKM graph of the rook embedding `P(M_n)` over `Δ⊕Δ`,
/// `Δ = Z^n`.
pub fn build_rook_embedding(n: usize) -> Result<GkmGraph> {
    build_group_embedding(&rook_datum(n)?)
}
