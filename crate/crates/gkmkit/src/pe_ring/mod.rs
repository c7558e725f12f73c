//! The ring of piecewise exponential functions attached to a GKM graph:
//! tuples of group-ring elements indexed by vertices, congruent modulo
//! `1 - e^{-χ}` across every edge of weight `χ`.
//!
//! Edge conditions are independent of one another, so membership checks
//! and constraint assembly iterate over edges in parallel when the
//! `parallel` feature is on; outputs are identical to the sequential path.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exp_ring::linalg::{integer_kernel, mat_vec_i64};
use crate::exp_ring::{
    quotient_reduce_with, smith_presentation, ExponentVector, LaurentElement,
    QuotientPresentation,
};
use crate::gkm_graph::{CheckedAction, Edge, GkmGraph};

/// A candidate member of `PE_T(X)`: one group-ring element per vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeTuple {
    rank: usize,
    values: BTreeMap<String, LaurentElement>,
}

impl PeTuple {
    pub fn new(rank: usize, values: BTreeMap<String, LaurentElement>) -> Result<Self> {
        for v in values.values() {
            if v.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: v.rank(),
                });
            }
        }
        Ok(PeTuple { rank, values })
    }

    /// The constant tuple `(f, …, f)`.
    pub fn constant(g: &GkmGraph, f: LaurentElement) -> Result<Self> {
        if f.rank() != g.rank() {
            return Err(Error::RankMismatch {
                left: g.rank(),
                right: f.rank(),
            });
        }
        Ok(PeTuple {
            rank: g.rank(),
            values: g.vertex_ids().map(|v| (v.to_owned(), f.clone())).collect(),
        })
    }

    /// The delta tuple: 1 at `vertex`, 0 elsewhere.
    pub fn delta(g: &GkmGraph, vertex: &str) -> Result<Self> {
        if !g.contains_vertex(vertex) {
            return Err(Error::UnknownVertex(vertex.to_owned()));
        }
        let one = LaurentElement::one(g.rank());
        let zero = LaurentElement::zero(g.rank());
        Ok(PeTuple {
            rank: g.rank(),
            values: g
                .vertex_ids()
                .map(|v| {
                    let val = if v == vertex { one.clone() } else { zero.clone() };
                    (v.to_owned(), val)
                })
                .collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn values(&self) -> &BTreeMap<String, LaurentElement> {
        &self.values
    }

    pub fn value(&self, vertex: &str) -> Result<&LaurentElement> {
        self.values
            .get(vertex)
            .ok_or_else(|| Error::MissingValue(vertex.to_owned()))
    }

    /// Pointwise sum.
    pub fn add(&self, other: &PeTuple) -> Result<PeTuple> {
        self.zip_with(other, |a, b| a + b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &PeTuple) -> Result<PeTuple> {
        self.zip_with(other, |a, b| a * b)
    }

    /// Multiply every component by a fixed scalar from `R(T)`.
    pub fn scale(&self, f: &LaurentElement) -> Result<PeTuple> {
        if f.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: f.rank(),
            });
        }
        Ok(PeTuple {
            rank: self.rank,
            values: self
                .values
                .iter()
                .map(|(v, a)| (v.clone(), a * f))
                .collect(),
        })
    }

    fn zip_with(
        &self,
        other: &PeTuple,
        op: impl Fn(&LaurentElement, &LaurentElement) -> LaurentElement,
    ) -> Result<PeTuple> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut values = BTreeMap::new();
        for (v, a) in &self.values {
            let b = other.value(v)?;
            values.insert(v.clone(), op(a, b));
        }
        Ok(PeTuple {
            rank: self.rank,
            values,
        })
    }

    /// Restriction to a vertex subset, living on the induced subgraph.
    pub fn restrict(&self, vs: &BTreeSet<String>) -> Result<PeTuple> {
        let mut values = BTreeMap::new();
        for v in vs {
            values.insert(v.clone(), self.value(v)?.clone());
        }
        Ok(PeTuple {
            rank: self.rank,
            values,
        })
    }

    /// Image of the tuple under one action generator:
    /// `(w·t)[x] = w·t[w^{-1}x]` with `w·e^λ = e^{wλ}`.
    pub fn apply_generator(
        &self,
        vertex_map: &BTreeMap<String, String>,
        lattice_map: &[Vec<i64>],
    ) -> Result<PeTuple> {
        let mut values = BTreeMap::new();
        for (x, f) in &self.values {
            let image = vertex_map
                .get(x)
                .ok_or_else(|| Error::UnknownVertex(x.clone()))?;
            let moved = LaurentElement::from_terms(
                self.rank,
                f.terms()
                    .map(|(e, c)| (ExponentVector(mat_vec_i64(lattice_map, &e.0)), c.clone())),
            )?;
            values.insert(image.clone(), moved);
        }
        Ok(PeTuple {
            rank: self.rank,
            values,
        })
    }
}

fn edge_presentation(e: &Edge) -> QuotientPresentation {
    let chi = e.character().expect("non-loop edge");
    smith_presentation(&chi).expect("nonzero character")
}

fn edge_holds(t: &PeTuple, e: &Edge) -> Result<bool> {
    let fu = t.value(&e.u)?;
    let fv = t.value(&e.v)?;
    let pres = edge_presentation(e);
    Ok(quotient_reduce_with(&(fu - fv), &pres)?.is_zero())
}

/// Exactly the non-loop edges whose congruence fails; empty iff the tuple
/// is a member. Deterministic edge order regardless of scheduling.
pub fn failing_edges(g: &GkmGraph, t: &PeTuple) -> Result<Vec<Edge>> {
    for v in g.vertex_ids() {
        t.value(v)?;
    }
    let nonloop: Vec<&Edge> = g.edges().iter().filter(|e| !e.is_loop()).collect();

    #[cfg(feature = "parallel")]
    let verdicts: Result<Vec<bool>> = nonloop.par_iter().map(|e| edge_holds(t, e)).collect();
    #[cfg(not(feature = "parallel"))]
    let verdicts: Result<Vec<bool>> = nonloop.iter().map(|e| edge_holds(t, e)).collect();

    Ok(nonloop
        .into_iter()
        .zip(verdicts?)
        .filter(|(_, ok)| !ok)
        .map(|(e, _)| e.clone())
        .collect())
}

/// Always-sequential membership check; the reference path for benchmarks
/// and for the parallel/sequential agreement tests.
pub fn member_sequential(g: &GkmGraph, t: &PeTuple) -> Result<bool> {
    for v in g.vertex_ids() {
        t.value(v)?;
    }
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        if !edge_holds(t, e)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `true` iff every non-loop edge congruence holds; loops impose nothing.
pub fn member(g: &GkmGraph, t: &PeTuple) -> Result<bool> {
    #[cfg(feature = "parallel")]
    {
        for v in g.vertex_ids() {
            t.value(v)?;
        }
        let nonloop: Vec<&Edge> = g.edges().iter().filter(|e| !e.is_loop()).collect();
        let verdicts: Result<Vec<bool>> = nonloop.par_iter().map(|e| edge_holds(t, e)).collect();
        Ok(verdicts?.into_iter().all(|ok| ok))
    }
    #[cfg(not(feature = "parallel"))]
    {
        member_sequential(g, t)
    }
}

/// The product of all edge factors `1 - e^{-χ_e}` (sign-normalized `χ_e`)
/// together with the scaled tuple `d·t`, which is always a member.
pub fn clear_denominators(g: &GkmGraph, t: &PeTuple) -> Result<(LaurentElement, PeTuple)> {
    let mut d = LaurentElement::one(g.rank());
    for e in g.edges() {
        if let Some(chi) = e.character() {
            d = &d * &LaurentElement::edge_factor(&chi.sign_normalized());
        }
    }
    let scaled = t.scale(&d)?;
    Ok((d, scaled))
}

/// A finite truncation window: per-coordinate integer intervals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SupportBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl SupportBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        assert_eq!(lo.len(), hi.len());
        for (i, (&l, &h)) in lo.iter().zip(&hi).enumerate() {
            if l > h {
                return Err(Error::EmptyBox(i));
            }
        }
        Ok(SupportBox { lo, hi })
    }

    /// Uniform box `[lo, hi]^rank`.
    pub fn cube(rank: usize, lo: i64, hi: i64) -> Result<Self> {
        Self::new(vec![lo; rank], vec![hi; rank])
    }

    pub fn rank(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, e: &ExponentVector) -> bool {
        e.0.len() == self.lo.len()
            && e.0
                .iter()
                .enumerate()
                .all(|(i, &c)| self.lo[i] <= c && c <= self.hi[i])
    }

    /// All lattice points of the box, in lexicographic order.
    pub fn exponents(&self) -> Vec<ExponentVector> {
        let mut out = vec![Vec::new()];
        for i in 0..self.lo.len() {
            let mut next = Vec::new();
            for prefix in &out {
                for c in self.lo[i]..=self.hi[i] {
                    let mut v = prefix.clone();
                    v.push(c);
                    next.push(v);
                }
            }
            out = next;
        }
        let mut exps: Vec<ExponentVector> = out.into_iter().map(ExponentVector).collect();
        exps.sort();
        exps
    }
}

/// Index layout for truncated coefficient vectors: vertex-major (vertices
/// in id order), exponent-minor (lexicographic).
struct VarIndex<'a> {
    vertices: Vec<&'a str>,
    exps: Vec<ExponentVector>,
    exp_index: BTreeMap<ExponentVector, usize>,
}

impl<'a> VarIndex<'a> {
    fn new(g: &'a GkmGraph, boxx: &SupportBox) -> Self {
        let exps = boxx.exponents();
        let exp_index = exps
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        VarIndex {
            vertices: g.vertex_ids().collect(),
            exps,
            exp_index,
        }
    }

    fn ncols(&self) -> usize {
        self.vertices.len() * self.exps.len()
    }

    fn col(&self, vertex_pos: usize, exp_pos: usize) -> usize {
        vertex_pos * self.exps.len() + exp_pos
    }

    fn vertex_pos(&self, id: &str) -> usize {
        self.vertices.binary_search(&id).expect("known vertex")
    }

    fn tuple_from_coeffs(&self, rank: usize, coeffs: &[BigInt]) -> PeTuple {
        let mut values = BTreeMap::new();
        for (vp, v) in self.vertices.iter().enumerate() {
            let f = LaurentElement::from_terms(
                rank,
                self.exps
                    .iter()
                    .enumerate()
                    .map(|(ep, e)| (e.clone(), coeffs[self.col(vp, ep)].clone())),
            )
            .expect("box exponents have graph rank");
            values.insert((*v).to_owned(), f);
        }
        PeTuple { rank, values }
    }
}

/// Rows expressing the congruence of one edge on box-supported tuples:
/// for each residue class of box exponents in `Δ/Zχ`, the class sums of
/// the two endpoint components must agree.
fn edge_rows(idx: &VarIndex<'_>, e: &Edge) -> Vec<Vec<BigInt>> {
    let pres = edge_presentation(e);
    let mut classes: BTreeMap<ExponentVector, Vec<usize>> = BTreeMap::new();
    for (ep, exp) in idx.exps.iter().enumerate() {
        classes.entry(pres.reduce_exponent(exp)).or_default().push(ep);
    }
    let up = idx.vertex_pos(&e.u);
    let vp = idx.vertex_pos(&e.v);
    classes
        .values()
        .map(|eps| {
            let mut row = vec![BigInt::zero(); idx.ncols()];
            for &ep in eps {
                row[idx.col(up, ep)] += 1;
                row[idx.col(vp, ep)] -= 1;
            }
            row
        })
        .collect()
}

fn kernel_tuples(g: &GkmGraph, idx: &VarIndex<'_>, rows: Vec<Vec<BigInt>>) -> Vec<PeTuple> {
    let mut basis: Vec<Vec<BigInt>> = integer_kernel(&rows, idx.ncols());
    basis.sort();
    basis
        .into_iter()
        .map(|coeffs| idx.tuple_from_coeffs(g.rank(), &coeffs))
        .collect()
}

fn membership_rows(g: &GkmGraph, idx: &VarIndex<'_>) -> Vec<Vec<BigInt>> {
    let nonloop: Vec<&Edge> = g.edges().iter().filter(|e| !e.is_loop()).collect();
    #[cfg(feature = "parallel")]
    let rows: Vec<Vec<Vec<BigInt>>> = nonloop.par_iter().map(|e| edge_rows(idx, e)).collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Vec<Vec<BigInt>>> = nonloop.iter().map(|e| edge_rows(idx, e)).collect();
    rows.into_iter().flatten().collect()
}

/// A `Z`-basis of the box-truncated members
/// `{t : member(t), supp(t[x]) ⊆ box for all x}`.
pub fn truncated_basis(g: &GkmGraph, boxx: &SupportBox) -> Result<Vec<PeTuple>> {
    if boxx.rank() != g.rank() {
        return Err(Error::RankMismatch {
            left: g.rank(),
            right: boxx.rank(),
        });
    }
    let idx = VarIndex::new(g, boxx);
    let rows = membership_rows(g, &idx);
    Ok(kernel_tuples(g, &idx, rows))
}

/// A `Z`-basis of the box-truncated members fixed by every generator of a
/// registered action. The box must be stable under every generator's
/// lattice map.
pub fn invariant_basis(
    g: &GkmGraph,
    action: &CheckedAction,
    boxx: &SupportBox,
) -> Result<Vec<PeTuple>> {
    action.check_graph(g)?;
    if boxx.rank() != g.rank() {
        return Err(Error::RankMismatch {
            left: g.rank(),
            right: boxx.rank(),
        });
    }
    let idx = VarIndex::new(g, boxx);
    for (k, gen) in action.generators().iter().enumerate() {
        for e in &idx.exps {
            let image = ExponentVector(mat_vec_i64(&gen.lattice_map, &e.0));
            if !boxx.contains(&image) {
                return Err(Error::UnstableBox { generator: k });
            }
        }
    }

    let mut rows = membership_rows(g, &idx);
    // fixed-point conditions: coefficient at (w^{-1}x, e) equals the
    // coefficient at (x, M e), for every generator (x, e)
    for gen in action.generators() {
        let inv_vertex: BTreeMap<&str, &str> = gen
            .vertex_map
            .iter()
            .map(|(a, b)| (b.as_str(), a.as_str()))
            .collect();
        for (xp, x) in idx.vertices.iter().enumerate() {
            let wx = idx.vertex_pos(inv_vertex[x]);
            for (ep, e) in idx.exps.iter().enumerate() {
                let me = ExponentVector(mat_vec_i64(&gen.lattice_map, &e.0));
                let mep = idx.exp_index[&me];
                let (a, b) = (idx.col(wx, ep), idx.col(xp, mep));
                if a == b {
                    continue;
                }
                let mut row = vec![BigInt::zero(); idx.ncols()];
                row[a] += 1;
                row[b] -= 1;
                rows.push(row);
            }
        }
    }
    Ok(kernel_tuples(g, &idx, rows))
}

/// Restriction of a tuple to the induced subgraph on `vs`; members
/// restrict to members (the conditions are a subset).
pub fn restrict_tuple(g: &GkmGraph, t: &PeTuple, vs: &BTreeSet<String>) -> Result<(GkmGraph, PeTuple)> {
    let sub = g.induced_subgraph(vs)?;
    let restricted = t.restrict(vs)?;
    Ok((sub, restricted))
}
