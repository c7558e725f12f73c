//! GKM graphs of Schubert varieties: vertices are the Bruhat interval
//! `[1, w]`, edges join `x` and `s_α x` with weight `α` whenever both lie
//! in the interval.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gkm_graph::{ActionGenerator, GkmGraph, GraphAction, Vertex};

use super::weyl::RootDatum;

/// Human-readable label for a group element: digits of its canonical word
/// (1-based generator indices), or `e` for the identity.
pub fn element_label(rd: &RootDatum, i: usize) -> String {
    let word = rd.weyl().word(i);
    if word.is_empty() {
        "e".to_string()
    } else if rd.rank() < 10 {
        word.iter().map(|g| (g + 1).to_string()).collect()
    } else {
        word.iter()
            .map(|g| (g + 1).to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// The Bruhat interval `[1, w]` for `w` given by a reduced word, via the
/// subword property: scan the word once, closing the element set under
/// right multiplication by each letter.
pub fn bruhat_interval(rd: &RootDatum, word: &[usize]) -> Result<BTreeSet<usize>> {
    let weyl = rd.weyl();
    let w = weyl.product_of(word)?;
    if weyl.length(w) != word.len() {
        return Err(Error::NotReduced(word.iter().map(|g| g + 1).collect()));
    }
    let mut interval: BTreeSet<usize> = [0usize].into();
    for &letter in word {
        let gen = &weyl.generators()[letter];
        let extra: Vec<usize> = interval
            .iter()
            .map(|&x| {
                let m = crate::exp_ring::linalg::mat_mul_i64(weyl.element(x), gen);
                weyl.index_of(&m).expect("closed under generators")
            })
            .collect();
        interval.extend(extra);
    }
    Ok(interval)
}

/// Build the GKM graph of the Schubert variety `X(w)` over the root
/// lattice, for `w` given by a reduced word in 0-based generator indices.
pub fn build_schubert(rd: &RootDatum, word: &[usize]) -> Result<GkmGraph> {
    for &g in word {
        if g >= rd.rank() {
            return Err(Error::InvalidRootDatum(format!(
                "generator index {} out of range 1..={}",
                g + 1,
                rd.rank()
            )));
        }
    }
    let interval = bruhat_interval(rd, word)?;
    let weyl = rd.weyl();
    let vertices: Vec<Vertex> = interval
        .iter()
        .map(|&x| Vertex::new(element_label(rd, x)))
        .collect();
    let mut edges = Vec::new();
    for (alpha, refl) in rd.positive_roots() {
        for &x in &interval {
            let tx = crate::exp_ring::linalg::mat_mul_i64(&refl, weyl.element(x));
            let y = weyl.index_of(&tx).expect("group is closed");
            // one edge per unordered pair per reflection
            if y > x && interval.contains(&y) {
                edges.push((
                    element_label(rd, x),
                    element_label(rd, y),
                    Some(alpha.clone()),
                ));
            }
        }
    }
    GkmGraph::new(rd.rank(), vertices, edges)
}

/// The left `W`-action on the full flag graph (`w = w_0`): generator `s_i`
/// permutes vertices by left multiplication and acts on the root lattice
/// by its reflection matrix.
pub fn left_weyl_action(rd: &RootDatum) -> GraphAction {
    let weyl = rd.weyl();
    let generators = (0..rd.rank())
        .map(|i| {
            let gen = &weyl.generators()[i];
            let vertex_map = (0..weyl.order())
                .map(|x| {
                    let m = crate::exp_ring::linalg::mat_mul_i64(gen, weyl.element(x));
                    let y = weyl.index_of(&m).expect("closed");
                    (element_label(rd, x), element_label(rd, y))
                })
                .collect();
            ActionGenerator {
                vertex_map,
                lattice_map: gen.clone(),
            }
        })
        .collect();
    GraphAction { generators }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::weyl::cartan_of_type;

    fn datum(letter: char, rank: usize) -> RootDatum {
        RootDatum::new(cartan_of_type(letter, rank).unwrap()).unwrap()
    }

    #[test]
    fn a1_point_and_line() {
        let rd = datum('A', 1);
        let g = build_schubert(&rd, &[0]).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 1);
        assert_eq!(
            g.edges()[0].weight.as_ref().unwrap().0,
            vec![1],
            "weight is the simple root"
        );
    }

    #[test]
    fn a2_longest_element() {
        let rd = datum('A', 2);
        let g = build_schubert(&rd, &[0, 1, 0]).unwrap();
        assert_eq!(g.num_vertices(), 6);
        assert_eq!(g.num_edges(), 9);
        // 3 edges per positive root direction
        let report = g.validate();
        assert_eq!(report.directions.len(), 3);
        assert!(report.directions.values().all(|&n| n == 3));
    }

    #[test]
    fn a2_single_reflection_interval() {
        let rd = datum('A', 2);
        let g = build_schubert(&rd, &[0]).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn non_reduced_word_rejected() {
        let rd = datum('A', 2);
        assert!(matches!(
            build_schubert(&rd, &[0, 0]),
            Err(Error::NotReduced(_))
        ));
    }

    #[test]
    fn interval_against_covering_relations() {
        // cross-check the subword interval with the covering
        // characterization y = t x, l(y) = l(x) + 1, on all of A2 and B2
        for (letter, rank) in [('A', 2), ('B', 2)] {
            let rd = datum(letter, rank);
            let weyl = rd.weyl();
            let w0 = (0..weyl.order())
                .max_by_key(|&i| weyl.length(i))
                .unwrap();
            let word = weyl.word(w0).to_vec();
            let interval = bruhat_interval(&rd, &word).unwrap();
            assert_eq!(interval.len(), weyl.order(), "[1, w0] is all of W");

            // order ideal generated by covers below each element
            for &x in &interval {
                for (_, refl) in rd.positive_roots() {
                    let tx = crate::exp_ring::linalg::mat_mul_i64(&refl, weyl.element(x));
                    let y = weyl.index_of(&tx).unwrap();
                    if weyl.length(y) + 1 == weyl.length(x) {
                        // y is covered by x, so any interval containing x
                        // contains y; check on a proper subinterval too
                        let sub = bruhat_interval(&rd, &weyl.word(x).to_vec()).unwrap();
                        assert!(sub.contains(&y));
                    }
                }
            }
        }
    }

    #[test]
    fn flag_graph_closed_under_left_action() {
        let rd = datum('A', 2);
        let g = build_schubert(&rd, &[0, 1, 0]).unwrap();
        let action = left_weyl_action(&rd);
        assert!(g.register_action(action).is_ok());
    }
}
