//! Exact arithmetic in the group ring `Z[Δ]` of a free abelian character
//! lattice `Δ ≅ Z^r`, together with congruence testing modulo the principal
//! ideals `(1 - e^{-χ})` via integer normal forms.

pub mod linalg;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The ambient character lattice; only its rank matters.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Lattice {
    pub rank: usize,
}

impl Lattice {
    pub fn new(rank: usize) -> Self {
        Lattice { rank }
    }
}

/// An element of the character lattice, as an integer coordinate vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn zero(rank: usize) -> Self {
        ExponentVector(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn added(&self, other: &ExponentVector) -> ExponentVector {
        assert_eq!(self.rank(), other.rank(), "exponent rank mismatch");
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn negated(&self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|c| -c).collect())
    }

    /// gcd of the entries; 0 for the zero vector.
    pub fn content(&self) -> i64 {
        self.0
            .iter()
            .fold(0i64, |g, &c| num_integer::gcd(g, c.abs()))
    }

    /// Flip the sign so the first nonzero coordinate is positive.
    pub fn sign_normalized(&self) -> ExponentVector {
        match self.0.iter().find(|&&c| c != 0) {
            Some(&c) if c < 0 => self.negated(),
            _ => self.clone(),
        }
    }

    /// The primitive, sign-normalized direction of a nonzero vector.
    pub fn primitive_direction(&self) -> Result<ExponentVector> {
        let g = self.content();
        if g == 0 {
            return Err(Error::ZeroCharacter);
        }
        Ok(ExponentVector(self.0.iter().map(|c| c / g).collect()).sign_normalized())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A nonzero character of the torus; edge labels are of this kind.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Character(ExponentVector);

impl Character {
    pub fn new(vector: ExponentVector) -> Result<Self> {
        if vector.is_zero() {
            return Err(Error::ZeroCharacter);
        }
        Ok(Character(vector))
    }

    pub fn vector(&self) -> &ExponentVector {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn negated(&self) -> Character {
        Character(self.0.negated())
    }

    pub fn sign_normalized(&self) -> Character {
        Character(self.0.sign_normalized())
    }
}

/// A finitely supported `Z`-linear combination of exponentials `e^χ`:
/// an element of `R(T) ≅ Z[Δ]`.
///
/// Terms are kept canonical: exponents sorted lexicographically, no zero
/// coefficients stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentElement {
    rank: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl LaurentElement {
    pub fn zero(rank: usize) -> Self {
        LaurentElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(ExponentVector::zero(rank))
    }

    /// The single term `e^χ`.
    pub fn monomial(exp: ExponentVector) -> Self {
        Self::term(exp, BigInt::one())
    }

    /// The single term `c · e^χ`.
    pub fn term(exp: ExponentVector, coeff: BigInt) -> Self {
        let rank = exp.rank();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentElement { rank, terms }
    }

    pub fn constant(rank: usize, c: impl Into<BigInt>) -> Self {
        Self::term(ExponentVector::zero(rank), c.into())
    }

    pub fn from_terms<I>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, BigInt)>,
    {
        let mut out = LaurentElement::zero(rank);
        for (exp, coeff) in terms {
            if exp.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: exp.rank(),
                });
            }
            out.add_term(exp, coeff);
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, exp: ExponentVector, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &LaurentElement) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    /// Coefficientwise sum; fails on lattice rank mismatch.
    pub fn checked_add(&self, other: &LaurentElement) -> Result<LaurentElement> {
        self.check_rank(other)?;
        Ok(self + other)
    }

    /// Convolution product `e^χ · e^μ = e^{χ+μ}`; fails on rank mismatch.
    pub fn checked_mul(&self, other: &LaurentElement) -> Result<LaurentElement> {
        self.check_rank(other)?;
        Ok(self * other)
    }

    /// Sum of all coefficients, i.e. the image under the augmentation
    /// `e^χ ↦ 1`.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// `1 - e^{-χ}`, the edge factor attached to a character.
    pub fn edge_factor(chi: &Character) -> LaurentElement {
        let rank = chi.rank();
        let mut out = LaurentElement::one(rank);
        out.add_term(chi.vector().negated(), -BigInt::one());
        out
    }
}

impl Add for &LaurentElement {
    type Output = LaurentElement;
    fn add(self, rhs: &LaurentElement) -> LaurentElement {
        assert_eq!(self.rank, rhs.rank, "lattice rank mismatch");
        let mut out = self.clone();
        for (exp, coeff) in &rhs.terms {
            out.add_term(exp.clone(), coeff.clone());
        }
        out
    }
}

impl Sub for &LaurentElement {
    type Output = LaurentElement;
    fn sub(self, rhs: &LaurentElement) -> LaurentElement {
        assert_eq!(self.rank, rhs.rank, "lattice rank mismatch");
        let mut out = self.clone();
        for (exp, coeff) in &rhs.terms {
            out.add_term(exp.clone(), -coeff.clone());
        }
        out
    }
}

impl Neg for &LaurentElement {
    type Output = LaurentElement;
    fn neg(self) -> LaurentElement {
        LaurentElement {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &LaurentElement {
    type Output = LaurentElement;
    fn mul(self, rhs: &LaurentElement) -> LaurentElement {
        assert_eq!(self.rank, rhs.rank, "lattice rank mismatch");
        let mut out = LaurentElement::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.added(eb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (exp, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if exp.is_zero() {
                write!(f, "{coeff}")?;
            } else if coeff.is_one() {
                write!(f, "e^{exp}")?;
            } else {
                write!(f, "{coeff}*e^{exp}")?;
            }
        }
        Ok(())
    }
}

/// A unimodular change of coordinates realizing `Δ/Zχ ≅ Z/d ⊕ Z^{r-1}`.
///
/// `transform` maps the source character `χ` to `(d, 0, …, 0)` with
/// `d = gcd(entries of χ) > 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientPresentation {
    pub transform: Vec<Vec<i64>>,
    pub torsion_modulus: i64,
}

impl QuotientPresentation {
    /// Image of a lattice vector in the transformed coordinates of the
    /// quotient: apply `U`, then reduce the first coordinate mod `d`.
    pub fn reduce_exponent(&self, e: &ExponentVector) -> ExponentVector {
        let mut v = linalg::mat_vec_i64(&self.transform, &e.0);
        v[0] = v[0].rem_euclid(self.torsion_modulus);
        ExponentVector(v)
    }
}

/// Compute a unimodular `U` with `Uχ = (d, 0, …, 0)`, `d = gcd(χ) > 0`.
///
/// Row reduction with minimal-absolute-value pivoting, so the entries of
/// `U` stay small on the inputs this crate sees.
pub fn smith_presentation(chi: &Character) -> Result<QuotientPresentation> {
    let r = chi.rank();
    let mut v: Vec<i64> = chi.vector().0.clone();
    let mut u: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();

    loop {
        // pivot: nonzero entry of minimal absolute value
        let p = match v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .min_by_key(|(_, &c)| c.abs())
        {
            Some((i, _)) => i,
            None => return Err(Error::ZeroCharacter),
        };
        let mut done = true;
        for i in 0..r {
            if i == p || v[i] == 0 {
                continue;
            }
            let q = v[i].div_euclid(v[p]);
            v[i] -= q * v[p];
            for k in 0..r {
                let sub = q * u[p][k];
                u[i][k] -= sub;
            }
            if v[i] != 0 {
                done = false;
            }
        }
        if done {
            // single nonzero entry left, at p
            if p != 0 {
                v.swap(0, p);
                u.swap(0, p);
            }
            if v[0] < 0 {
                v[0] = -v[0];
                for c in u[0].iter_mut() {
                    *c = -*c;
                }
            }
            return Ok(QuotientPresentation {
                transform: u,
                torsion_modulus: v[0],
            });
        }
    }
}

/// The image of a group-ring element in `Z[Δ/Zχ]`, in the coordinates of a
/// fixed [`QuotientPresentation`]: first coordinate lives in `Z/d`, the
/// rest in `Z^{r-1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientElement {
    modulus: i64,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl QuotientElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, exp: ExponentVector, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &QuotientElement) -> QuotientElement {
        assert_eq!(self.modulus, other.modulus, "quotient modulus mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// Convolution in the quotient group ring: first coordinates add mod d.
    pub fn mul(&self, other: &QuotientElement) -> QuotientElement {
        assert_eq!(self.modulus, other.modulus, "quotient modulus mismatch");
        let mut out = QuotientElement {
            modulus: self.modulus,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = ea.added(eb);
                e.0[0] = e.0[0].rem_euclid(self.modulus);
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

/// Image of `f` in the group ring of `Δ/Zχ`; zero iff `f ∈ (1 - e^{-χ})`.
pub fn quotient_reduce(f: &LaurentElement, chi: &Character) -> Result<QuotientElement> {
    let pres = smith_presentation(chi)?;
    quotient_reduce_with(f, &pres)
}

/// Same as [`quotient_reduce`] but against an already computed presentation
/// (reused across the terms of many elements along one edge).
pub fn quotient_reduce_with(
    f: &LaurentElement,
    pres: &QuotientPresentation,
) -> Result<QuotientElement> {
    if f.rank() != pres.transform.len() {
        return Err(Error::RankMismatch {
            left: f.rank(),
            right: pres.transform.len(),
        });
    }
    let mut out = QuotientElement {
        modulus: pres.torsion_modulus,
        terms: BTreeMap::new(),
    };
    for (exp, coeff) in f.terms() {
        out.add_term(pres.reduce_exponent(exp), coeff.clone());
    }
    Ok(out)
}

/// `true` iff `f - g ∈ (1 - e^{-χ})`, i.e. `f ≡ g mod 1 - e^{-χ}`.
pub fn congruent_mod(f: &LaurentElement, g: &LaurentElement, chi: &Character) -> Result<bool> {
    f.check_rank(g)?;
    if f.rank() != chi.rank() {
        return Err(Error::RankMismatch {
            left: f.rank(),
            right: chi.rank(),
        });
    }
    Ok(quotient_reduce(&(f - g), chi)?.is_zero())
}
