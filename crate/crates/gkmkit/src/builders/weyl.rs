//! Finite reflection groups realized as unimodular matrices on a lattice,
//! and root data given by a finite-type Cartan matrix with simple roots
//! the standard basis of the root lattice.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exp_ring::linalg::{identity_i64, inverse_unimodular, is_unimodular, mat_mul_i64};
use crate::exp_ring::ExponentVector;

pub type Mat = Vec<Vec<i64>>;

/// Default cap on group enumeration; anything larger than this is treated
/// as not of finite type.
pub const DEFAULT_GROUP_CAP: usize = 200_000;

/// A finite matrix group with a chosen generating set, enumerated
/// breadth-first. `elements[0]` is the identity; `words[i]` is a shortest
/// word for `elements[i]` (lexicographically least among shortest), so
/// `words[i].len()` is the length function.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rank: usize,
    generators: Vec<Mat>,
    elements: Vec<Mat>,
    words: Vec<Vec<usize>>,
    index: BTreeMap<Mat, usize>,
}

impl WeylGroup {
    /// Enumerate the group generated by involutive unimodular matrices.
    pub fn from_generators(rank: usize, generators: Vec<Mat>, cap: usize) -> Result<Self> {
        let id = identity_i64(rank);
        for (i, g) in generators.iter().enumerate() {
            if g.len() != rank || g.iter().any(|r| r.len() != rank) {
                return Err(Error::InvalidRootDatum(format!(
                    "generator {i} is not {rank}x{rank}"
                )));
            }
            if !is_unimodular(g) {
                return Err(Error::InvalidRootDatum(format!(
                    "generator {i} is not unimodular"
                )));
            }
            if mat_mul_i64(g, g) != id {
                return Err(Error::InvalidRootDatum(format!(
                    "generator {i} is not an involution"
                )));
            }
        }
        let mut elements = vec![id.clone()];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut index = BTreeMap::new();
        index.insert(id, 0usize);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &e in &frontier {
                for (gi, g) in generators.iter().enumerate() {
                    let m = mat_mul_i64(&elements[e], g);
                    if !index.contains_key(&m) {
                        let mut w = words[e].clone();
                        w.push(gi);
                        index.insert(m.clone(), elements.len());
                        next.push(elements.len());
                        elements.push(m);
                        words.push(w);
                        if elements.len() > cap {
                            return Err(Error::GroupTooLarge { cap });
                        }
                    }
                }
            }
            frontier = next;
        }
        Ok(WeylGroup {
            rank,
            generators,
            elements,
            words,
            index,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }

    pub fn element(&self, i: usize) -> &Mat {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn index_of(&self, m: &Mat) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn length(&self, i: usize) -> usize {
        self.words[i].len()
    }

    pub fn inverse(&self, i: usize) -> usize {
        let inv = inverse_unimodular(&self.elements[i]).expect("group elements are unimodular");
        self.index[&inv]
    }

    /// Index of the product of the listed generators (empty = identity).
    pub fn product_of(&self, word: &[usize]) -> Result<usize> {
        let mut m = identity_i64(self.rank);
        for &g in word {
            if g >= self.generators.len() {
                return Err(Error::InvalidRootDatum(format!(
                    "generator index {g} out of range"
                )));
            }
            m = mat_mul_i64(&m, &self.generators[g]);
        }
        self.index
            .get(&m)
            .copied()
            .ok_or_else(|| Error::InvalidRootDatum("word leaves the enumerated group".into()))
    }

    pub fn apply(&self, i: usize, v: &ExponentVector) -> ExponentVector {
        ExponentVector(crate::exp_ring::linalg::mat_vec_i64(&self.elements[i], &v.0))
    }
}

/// A root datum of finite type: Cartan matrix, simple roots as the
/// standard basis of the root lattice, and the Weyl group realized on it.
#[derive(Clone, Debug)]
pub struct RootDatum {
    cartan: Mat,
    weyl: WeylGroup,
}

impl RootDatum {
    pub fn new(cartan: Mat) -> Result<Self> {
        Self::with_cap(cartan, DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(cartan: Mat, cap: usize) -> Result<Self> {
        let n = cartan.len();
        if cartan.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidRootDatum("Cartan matrix is not square".into()));
        }
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidRootDatum(format!(
                    "diagonal entry ({i},{i}) must be 2"
                )));
            }
            for j in 0..n {
                if i != j {
                    if cartan[i][j] > 0 {
                        return Err(Error::InvalidRootDatum(format!(
                            "off-diagonal entry ({i},{j}) must be <= 0"
                        )));
                    }
                    if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                        return Err(Error::InvalidRootDatum(format!(
                            "entries ({i},{j}) and ({j},{i}) must vanish together"
                        )));
                    }
                }
            }
        }
        // simple reflection s_i on the root lattice: s_i(α_j) = α_j - a_{ij} α_i
        let mut generators = Vec::with_capacity(n);
        for i in 0..n {
            let mut m = identity_i64(n);
            for j in 0..n {
                m[i][j] -= cartan[i][j];
            }
            generators.push(m);
        }
        let weyl = WeylGroup::from_generators(n, generators, cap)?;
        Ok(RootDatum { cartan, weyl })
    }

    pub fn cartan(&self) -> &Mat {
        &self.cartan
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn simple_root(&self, i: usize) -> ExponentVector {
        let mut v = vec![0i64; self.rank()];
        v[i] = 1;
        ExponentVector(v)
    }

    /// The positive roots (vectors with nonnegative simple-root
    /// coordinates in the `W`-orbit of the simple roots), each paired with
    /// the matrix of its reflection `s_α = w s_i w^{-1}`.
    pub fn positive_roots(&self) -> Vec<(ExponentVector, Mat)> {
        let mut out: BTreeMap<ExponentVector, Mat> = BTreeMap::new();
        for w in 0..self.weyl.order() {
            for i in 0..self.rank() {
                let alpha = self.weyl.apply(w, &self.simple_root(i));
                if alpha.0.iter().all(|&c| c >= 0) && !out.contains_key(&alpha) {
                    let wi = self.weyl.inverse(w);
                    let si = &self.weyl.generators()[i];
                    let refl =
                        mat_mul_i64(&mat_mul_i64(self.weyl.element(w), si), self.weyl.element(wi));
                    out.insert(alpha, refl);
                }
            }
        }
        out.into_iter().collect()
    }
}

/// Cartan matrix for the named finite type (`A`, `B`, `C`, `D`, `E`, `F`,
/// `G` with the usual rank constraints).
pub fn cartan_of_type(letter: char, rank: usize) -> Result<Mat> {
    let bad = |msg: &str| Err(Error::InvalidRootDatum(msg.into()));
    let n = rank;
    let chain = |n: usize| -> Mat {
        let mut m = identity_i64(n);
        for i in 0..n {
            m[i][i] = 2;
            if i + 1 < n {
                m[i][i + 1] = -1;
                m[i + 1][i] = -1;
            }
        }
        m
    };
    match letter.to_ascii_uppercase() {
        'A' if n >= 1 => Ok(chain(n)),
        'B' if n >= 2 => {
            let mut m = chain(n);
            m[n - 2][n - 1] = -2;
            Ok(m)
        }
        'C' if n >= 2 => {
            let mut m = chain(n);
            m[n - 1][n - 2] = -2;
            Ok(m)
        }
        'D' if n >= 3 => {
            let mut m = chain(n - 1);
            for row in m.iter_mut() {
                row.push(0);
            }
            let mut last = vec![0i64; n];
            last[n - 1] = 2;
            m.push(last);
            m[n - 3][n - 1] = -1;
            m[n - 1][n - 3] = -1;
            Ok(m)
        }
        'E' if (6..=8).contains(&n) => {
            // Bourbaki numbering: node 2 hangs off node 4 of the A-chain
            // 1-3-4-5-6(-7)(-8)
            let mut m = identity_i64(n);
            for i in 0..n {
                m[i][i] = 2;
            }
            let link = |a: usize, b: usize, m: &mut Mat| {
                m[a][b] = -1;
                m[b][a] = -1;
            };
            link(0, 2, &mut m);
            link(1, 3, &mut m);
            for i in 2..n - 1 {
                link(i, i + 1, &mut m);
            }
            Ok(m)
        }
        'F' if n == 4 => {
            let mut m = chain(4);
            m[1][2] = -2;
            m[2][1] = -1;
            Ok(m)
        }
        'G' if n == 2 => Ok(vec![vec![2, -3], vec![-1, 2]]),
        _ => bad(&format!("unsupported type {letter}{n}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_group_and_roots() {
        let rd = RootDatum::new(cartan_of_type('A', 2).unwrap()).unwrap();
        assert_eq!(rd.weyl().order(), 6);
        let roots = rd.positive_roots();
        assert_eq!(roots.len(), 3);
        let dirs: Vec<Vec<i64>> = roots.iter().map(|(a, _)| a.0.clone()).collect();
        assert!(dirs.contains(&vec![1, 0]));
        assert!(dirs.contains(&vec![0, 1]));
        assert!(dirs.contains(&vec![1, 1]));
        // each reflection is an involution fixing its root's negative
        for (alpha, refl) in &roots {
            assert_eq!(mat_mul_i64(refl, refl), identity_i64(2));
            let img = crate::exp_ring::linalg::mat_vec_i64(refl, &alpha.0);
            assert_eq!(img, alpha.negated().0);
        }
    }

    #[test]
    fn orders_of_small_types() {
        for (letter, rank, order) in [('A', 1, 2), ('A', 3, 24), ('B', 2, 8), ('G', 2, 12)] {
            let rd = RootDatum::new(cartan_of_type(letter, rank).unwrap()).unwrap();
            assert_eq!(rd.weyl().order(), order, "type {letter}{rank}");
        }
    }

    #[test]
    fn infinite_type_hits_cap() {
        // affine A1: the group generated is infinite
        let cartan = vec![vec![2, -2], vec![-2, 2]];
        let err = RootDatum::with_cap(cartan, 100);
        assert!(matches!(err, Err(Error::GroupTooLarge { .. })));
    }

    #[test]
    fn length_matches_word() {
        let rd = RootDatum::new(cartan_of_type('A', 2).unwrap()).unwrap();
        let w0 = rd.weyl().product_of(&[0, 1, 0]).unwrap();
        assert_eq!(rd.weyl().length(w0), 3);
        assert_eq!(rd.weyl().product_of(&[1, 0, 1]).unwrap(), w0);
    }
}
