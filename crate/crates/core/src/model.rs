//! Finite models: a fixed basis of twisted words closed under the structure maps.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::character::Character;
use crate::error::Error;
use crate::exterior::{degree, Element, Kind, Term, Universe, Word};
use crate::scalar::Scalar;
use crate::sparse::SparseVec;

/// Positions of the set bits, the word read as an index sequence.
pub fn word_indices(w: Word) -> Vec<usize> {
    (0..64).filter(|i| w >> i & 1 == 1).collect()
}

/// Basis order: bidegree, then the word as an index sequence, then the twist.
pub fn basis_cmp(u: &Universe, a: &Term, b: &Term) -> core::cmp::Ordering {
    u.bidegree(a.word)
        .cmp(&u.bidegree(b.word))
        .then_with(|| word_indices(a.word).cmp(&word_indices(b.word)))
        .then_with(|| a.twist.cmp(&b.twist))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// polyvectors with (0,1)-forms, differential ∂̄
    Polyvector,
    /// forms of type (p,q), differential ∂̄
    Dolbeault,
    /// complexified de Rham forms, differential d
    DeRham,
}

#[derive(Clone, Debug)]
pub struct FiniteDGA {
    pub label: String,
    pub flavor: Flavor,
    universe: Universe,
    basis: Vec<Term>,
    index: BTreeMap<Term, usize>,
    bigrades: Vec<(usize, usize)>,
    diff: Vec<SparseVec<Scalar>>,
    /// character making each generator a left-invariant frame element
    nu: Vec<Character>,
    orthonormal: bool,
    pub canonical_frame: Option<String>,
    pub metadata: Vec<(String, String)>,
}

impl FiniteDGA {
    /// Sorts and deduplicates `terms`, then computes the differential and
    /// checks that it stays inside the span and squares to zero.
    pub fn new(
        label: impl Into<String>,
        flavor: Flavor,
        universe: Universe,
        terms: Vec<Term>,
        nu: Vec<Character>,
    ) -> Result<Self, Error> {
        if nu.len() != universe.len() {
            return Err(Error::Dimension { expected: universe.len(), found: nu.len() });
        }
        let mut basis = terms;
        basis.sort_by(|a, b| basis_cmp(&universe, a, b));
        basis.dedup();
        let index: BTreeMap<Term, usize> = basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let bigrades = basis.iter().map(|t| universe.bidegree(t.word)).collect();
        let mut m = FiniteDGA {
            label: label.into(),
            flavor,
            universe,
            basis,
            index,
            bigrades,
            diff: Vec::new(),
            nu,
            orthonormal: false,
            canonical_frame: None,
            metadata: Vec::new(),
        };
        let mut diff = Vec::with_capacity(m.basis.len());
        for t in &m.basis {
            let d = m.universe.differential(&Element::monomial(t.word, t.twist.clone(), Scalar::one()))?;
            diff.push(m.coordinates(&d).map_err(|_| {
                Error::Escapes(alloc::format!("differential of {}", m.universe.fmt_term(t)))
            })?);
        }
        m.diff = diff;
        for i in 0..m.basis.len() {
            let mut dd = SparseVec::new();
            for (j, c) in &m.diff[i] {
                crate::sparse::axpy(&mut dd, c, &m.diff[*j]);
            }
            if !dd.is_empty() {
                return Err(Error::Structural(alloc::format!(
                    "d∘d ≠ 0 on {}",
                    m.universe.fmt_term(&m.basis[i])
                )));
            }
        }
        m.orthonormal = m.basis.iter().all(|t| m.unitary_factor(t).is_unitary());
        Ok(m)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Term] {
        &self.basis
    }

    pub fn term(&self, i: usize) -> &Term {
        &self.basis[i]
    }

    pub fn index_of(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn bigrade(&self, i: usize) -> (usize, usize) {
        self.bigrades[i]
    }

    pub fn degree_of(&self, i: usize) -> usize {
        degree(self.basis[i].word)
    }

    pub fn nu(&self) -> &[Character] {
        &self.nu
    }

    pub fn is_orthonormal(&self) -> bool {
        self.orthonormal
    }

    pub fn max_degree(&self) -> usize {
        self.basis.iter().map(|t| degree(t.word)).max().unwrap_or(0)
    }

    /// Basis indices of total degree `k`, ascending.
    pub fn degree_indices(&self, k: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree_of(i) == k).collect()
    }

    pub fn bigrade_indices(&self, p: usize, q: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.bigrades[i] == (p, q)).collect()
    }

    /// Dimension table keyed by bidegree.
    pub fn bigrade_dims(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for g in &self.bigrades {
            *out.entry(*g).or_insert(0) += 1;
        }
        out
    }

    pub fn degree_dims(&self) -> Vec<usize> {
        let top = self.universe.len();
        let mut out = alloc::vec![0; top + 1];
        for t in &self.basis {
            out[degree(t.word)] += 1;
        }
        out
    }

    /// Character of the invariant frame word underlying `w`.
    pub fn frame_twist(&self, w: Word) -> Character {
        let mut c = self.universe.identity_twist();
        for i in word_indices(w) {
            c = c.mul_unchecked(&self.nu[i]);
        }
        c
    }

    /// `c / ν_w`: the function multiplying the invariant frame word.
    pub fn unitary_factor(&self, t: &Term) -> Character {
        t.twist.mul_unchecked(&self.frame_twist(t.word).inv())
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let t = &self.basis[i];
        Element::monomial(t.word, t.twist.clone(), Scalar::one())
    }

    pub fn element(&self, v: &SparseVec<Scalar>) -> Element {
        let mut e = Element::zero();
        for (i, c) in v {
            e.add_term(self.basis[*i].clone(), c.clone());
        }
        e
    }

    /// Coordinates in the basis; fails when a term lies outside the span.
    pub fn coordinates(&self, e: &Element) -> Result<SparseVec<Scalar>, Error> {
        let mut out = SparseVec::new();
        for (t, c) in e.terms() {
            let i = self
                .index
                .get(t)
                .ok_or_else(|| Error::Escapes(alloc::format!("term {}", self.universe.fmt_term(t))))?;
            out.insert(*i, c.clone());
        }
        Ok(out)
    }

    /// Differential of basis vector `i`.
    pub fn diff_of(&self, i: usize) -> &SparseVec<Scalar> {
        &self.diff[i]
    }

    pub fn apply_diff(&self, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        let mut out = SparseVec::new();
        for (i, c) in v {
            crate::sparse::axpy(&mut out, c, &self.diff[*i]);
        }
        out
    }

    pub fn has_zero_differential(&self) -> bool {
        self.diff.iter().all(|d| d.is_empty())
    }

    /// Bracket of two basis vectors in coordinates.
    pub fn bracket(&self, i: usize, j: usize) -> Result<SparseVec<Scalar>, Error> {
        let e = self.universe.schouten(&self.basis_element(i), &self.basis_element(j));
        self.coordinates(&e).map_err(|_| {
            Error::Escapes(alloc::format!(
                "bracket [{} • {}]",
                self.universe.fmt_term(&self.basis[i]),
                self.universe.fmt_term(&self.basis[j])
            ))
        })
    }

    pub fn apply_bracket(&self, a: &SparseVec<Scalar>, b: &SparseVec<Scalar>) -> Result<SparseVec<Scalar>, Error> {
        let mut out = SparseVec::new();
        for (i, ci) in a {
            for (j, cj) in b {
                let w = self.bracket(*i, *j)?;
                crate::sparse::axpy(&mut out, &(ci * cj), &w);
            }
        }
        Ok(out)
    }

    /// Wedge product of two basis vectors in coordinates.
    pub fn product(&self, i: usize, j: usize) -> Result<SparseVec<Scalar>, Error> {
        let e = self.basis_element(i).wedge(&self.basis_element(j));
        self.coordinates(&e)
    }

    /// Exhaustive closure check of bracket and product over basis pairs whose
    /// degrees add up to at most `max_degree`.
    pub fn check_closure(&self, max_degree: usize) -> Result<(), Error> {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if self.degree_of(i) + self.degree_of(j) > max_degree {
                    continue;
                }
                self.bracket(i, j)?;
                self.product(i, j).map_err(|_| {
                    Error::Escapes(alloc::format!(
                        "product {} ∧ {}",
                        self.universe.fmt_term(&self.basis[i]),
                        self.universe.fmt_term(&self.basis[j])
                    ))
                })?;
            }
        }
        Ok(())
    }

    /// True when every bracket of basis vectors vanishes.
    pub fn bracket_is_trivial(&self) -> Result<bool, Error> {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if !self.bracket(i, j)?.is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn fmt_vector(&self, v: &SparseVec<Scalar>) -> String {
        self.universe.fmt_element(&self.element(v))
    }

    pub fn fmt_basis(&self, i: usize) -> String {
        self.universe.fmt_term(&self.basis[i])
    }

    /// Vector part of a basis word: the (1,0) vector generators it contains.
    pub fn vector_part(&self, w: Word) -> Word {
        w & self.universe.mask_of(Kind::Vector10)
    }
}
