//! Canonical exterior-algebra bases and sparse forms.
//!
//! A monomial is a set of generator indices stored as a bit mask; the
//! canonical representative is the wedge of its generators in increasing
//! index order. In complex mode generators `0..m` are the holomorphic
//! coframe `φ¹..φᵐ` and `m..2m` their conjugates, so "holomorphic before
//! antiholomorphic" is simply increasing index order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Upper bound on the number of generators (bit-mask width and dense tables).
pub const MAX_GENERATORS: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub u32);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn generator(i: usize) -> Self {
        Monomial(1 << i)
    }

    /// Builds a monomial from distinct indices given in any order and returns
    /// it with the sign of the sorting permutation, or `None` on a repeat.
    pub fn from_indices(indices: &[usize]) -> Option<(Monomial, i32)> {
        let mut acc = Monomial::ONE;
        let mut sign = 1;
        for &i in indices {
            let g = Monomial::generator(i);
            let s = acc.wedge_sign(g)?;
            sign *= s;
            acc = Monomial(acc.0 | g.0);
        }
        Some((acc, sign))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        let mut bits = self.0;
        while bits != 0 {
            out.push(bits.trailing_zeros() as usize);
            bits &= bits - 1;
        }
        out
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    /// `(p, q)` with `p` counting indices below `m`.
    pub fn bidegree(self, m: usize) -> (usize, usize) {
        let low = (1u32 << m) - 1;
        ((self.0 & low).count_ones() as usize, (self.0 & !low).count_ones() as usize)
    }

    /// Sign of `self ∧ other` relative to the canonical monomial of the union,
    /// `None` when they share a generator.
    pub fn wedge_sign(self, other: Monomial) -> Option<i32> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // Each generator of `other` must pass every larger generator of `self`.
        let mut swaps = 0u32;
        let mut bits = other.0;
        while bits != 0 {
            let j = bits.trailing_zeros();
            swaps += (self.0 >> (j + 1)).count_ones();
            bits &= bits - 1;
        }
        Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
    }

    pub fn union(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }

    /// Conjugate monomial in complex mode: swaps `i ↔ i ± m`. Returns the
    /// canonical monomial and the reordering sign.
    pub fn conjugate(self, m: usize) -> (Monomial, i32) {
        let swapped: Vec<usize> = self.indices().into_iter().map(|i| if i < m { i + m } else { i - m }).collect();
        Monomial::from_indices(&swapped).expect("conjugation is a bijection on generators")
    }
}

impl Ord for Monomial {
    /// Degree first, then lexicographic order of the sorted index lists.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let first = diff.trailing_zeros();
        if self.0 & (1 << first) != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let s: Vec<String> = self.indices().iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "e{}", s.join("."))
    }
}

/// Degree-indexed canonical bases of `Λ(V*)` with `dim V = n`.
#[derive(Clone, Debug)]
pub struct ExteriorAlgebra {
    n: usize,
    basis: Vec<Vec<Monomial>>,
    position: Vec<u32>,
}

impl ExteriorAlgebra {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_GENERATORS, "at most {MAX_GENERATORS} generators supported");
        let mut all: Vec<Monomial> = (0..(1u32 << n)).map(Monomial).collect();
        all.sort();
        let mut basis = vec![Vec::new(); n + 1];
        let mut position = vec![0u32; 1 << n];
        for mono in all {
            let k = mono.degree();
            position[mono.0 as usize] = basis[k].len() as u32;
            basis[k].push(mono);
        }
        ExteriorAlgebra { n, basis, position }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn basis(&self, k: usize) -> &[Monomial] {
        self.basis.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dim(&self, k: usize) -> usize {
        self.basis(k).len()
    }

    /// Position of `mono` inside the basis of its own degree.
    pub fn position(&self, mono: Monomial) -> usize {
        self.position[mono.0 as usize] as usize
    }

    pub fn to_coords(&self, form: &FormVector) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim(form.degree)];
        for (mono, c) in &form.terms {
            out[self.position(*mono)] = c.clone();
        }
        out
    }

    pub fn from_coords(&self, k: usize, coords: &[Scalar]) -> FormVector {
        let mut f = FormVector::zero(self.n, k);
        for (mono, c) in self.basis(k).iter().zip(coords) {
            f.add_term(*mono, c.clone());
        }
        f
    }
}

/// Bases of the bidegree pieces `A^{p,q}` of the complex exterior algebra on
/// `m` holomorphic and `m` antiholomorphic generators.
#[derive(Clone, Debug)]
pub struct Bigrading {
    m: usize,
    basis: Vec<Vec<Vec<Monomial>>>,
    position: Vec<u32>,
}

impl Bigrading {
    pub fn new(m: usize) -> Self {
        assert!(2 * m <= MAX_GENERATORS);
        let n = 2 * m;
        let mut all: Vec<Monomial> = (0..(1u32 << n)).map(Monomial).collect();
        all.sort();
        let mut basis = vec![vec![Vec::new(); m + 1]; m + 1];
        let mut position = vec![0u32; 1 << n];
        for mono in all {
            let (p, q) = mono.bidegree(m);
            position[mono.0 as usize] = basis[p][q].len() as u32;
            basis[p][q].push(mono);
        }
        Bigrading { m, basis, position }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Basis of `A^{p,q}`; empty outside `0..=m`.
    pub fn basis(&self, p: i64, q: i64) -> &[Monomial] {
        if p < 0 || q < 0 || p as usize > self.m || q as usize > self.m {
            return &[];
        }
        &self.basis[p as usize][q as usize]
    }

    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.basis(p, q).len()
    }

    pub fn position(&self, mono: Monomial) -> usize {
        self.position[mono.0 as usize] as usize
    }

    /// Coordinates of a form that must lie in `A^{p,q}`.
    pub fn to_coords(&self, p: i64, q: i64, form: &FormVector) -> Result<Vec<Scalar>> {
        let mut out = vec![Scalar::zero(); self.dim(p, q)];
        for (mono, c) in &form.terms {
            let (a, b) = mono.bidegree(self.m);
            if a as i64 != p || b as i64 != q {
                return Err(Error::Config(format!("form has a term {mono:?} outside bidegree ({p},{q})")));
            }
            out[self.position(*mono)] = c.clone();
        }
        Ok(out)
    }

    pub fn from_coords(&self, p: i64, q: i64, coords: &[Scalar]) -> FormVector {
        let mut f = FormVector::zero(2 * self.m, (p + q).max(0) as usize);
        for (mono, c) in self.basis(p, q).iter().zip(coords) {
            f.add_term(*mono, c.clone());
        }
        f
    }
}

/// Sparse homogeneous form. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormVector {
    generators: usize,
    degree: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl FormVector {
    pub fn zero(generators: usize, degree: usize) -> Self {
        FormVector { generators, degree, terms: BTreeMap::new() }
    }

    pub fn constant(generators: usize, c: Scalar) -> Self {
        let mut f = FormVector::zero(generators, 0);
        f.add_term(Monomial::ONE, c);
        f
    }

    pub fn generator(generators: usize, i: usize) -> Self {
        Self::monomial(generators, Monomial::generator(i), Scalar::one())
    }

    pub fn monomial(generators: usize, mono: Monomial, c: Scalar) -> Self {
        let mut f = FormVector::zero(generators, mono.degree());
        f.add_term(mono, c);
        f
    }

    /// Parses indices given 1-based in any order, e.g. `&[2, 1]` → `−e¹²`.
    pub fn basis_form(generators: usize, one_based: &[usize]) -> Self {
        let idx: Vec<usize> = one_based.iter().map(|i| i - 1).collect();
        match Monomial::from_indices(&idx) {
            Some((mono, s)) => Self::monomial(generators, mono, Scalar::from_int(s as i64)),
            None => FormVector::zero(generators, idx.len()),
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: Monomial) -> Scalar {
        self.terms.get(&mono).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: Monomial, c: Scalar) {
        debug_assert_eq!(mono.degree(), self.degree, "term outside declared degree");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = FormVector::zero(self.generators, self.degree);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(*m, v * c);
        }
        out
    }

    pub fn add(&self, other: &FormVector) -> Result<Self> {
        self.check_same(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Config(format!("cannot add forms of degree {} and {}", self.degree, other.degree)));
        }
        let mut out = if self.is_zero() { other.clone() } else { self.clone() };
        if !self.is_zero() {
            for (m, c) in &other.terms {
                out.add_term(*m, c.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FormVector) -> Result<Self> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    fn check_same(&self, other: &FormVector) -> Result<()> {
        if self.generators != other.generators {
            return Err(Error::Config(format!("forms over {} and {} generators", self.generators, other.generators)));
        }
        Ok(())
    }

    pub fn wedge(&self, other: &FormVector) -> Result<Self> {
        self.check_same(other)?;
        let mut out = FormVector::zero(self.generators, self.degree + other.degree);
        if out.degree > self.generators {
            return Ok(out);
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(s) = ma.wedge_sign(*mb) {
                    let c = ca * cb;
                    out.add_term(ma.union(*mb), if s < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Complex conjugate in complex mode (`generators = 2m`).
    pub fn conjugate(&self) -> Self {
        let m = self.generators / 2;
        let mut out = FormVector::zero(self.generators, self.degree);
        for (mono, c) in &self.terms {
            let (cm, s) = mono.conjugate(m);
            let v = c.conj();
            out.add_term(cm, if s < 0 { -v } else { v });
        }
        out
    }

    /// `Some((p, q))` if every term has that bidegree (zero forms report `None`).
    pub fn bidegree(&self, m: usize) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|k| k.bidegree(m));
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    /// Splits the form into its bidegree components.
    pub fn bigraded_parts(&self, m: usize) -> BTreeMap<(usize, usize), FormVector> {
        let mut out: BTreeMap<(usize, usize), FormVector> = BTreeMap::new();
        for (mono, c) in &self.terms {
            out.entry(mono.bidegree(m))
                .or_insert_with(|| FormVector::zero(self.generators, self.degree))
                .add_term(*mono, c.clone());
        }
        out
    }
}
