//! Hodge theory on a star-closed model with an orthonormal basis.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::character::Character;
use crate::error::Error;
use crate::exterior::{wedge_words, Term, Word};
use crate::linalg::{Field, Matrix, PivotOrder};
use crate::model::FiniteDGA;
use crate::scalar::Scalar;
use crate::sparse::{self, SparseVec};

#[derive(Clone, Debug)]
struct Block {
    ids: Vec<usize>,
    /// harmonic ids of the kernel columns
    harmonic: Vec<usize>,
    /// `(K†K)⁻¹K†`; `None` when the whole block is harmonic
    coefficients: Option<Matrix<Scalar>>,
    /// `None` when the Laplacian vanishes on the block
    green: Option<Matrix<Scalar>>,
    projection: Option<Matrix<Scalar>>,
}

#[derive(Clone, Debug)]
pub struct Harmonic {
    pub degree: usize,
    pub vector: SparseVec<Scalar>,
}

#[derive(Clone, Debug)]
pub struct HodgePackage<'a> {
    model: &'a FiniteDGA,
    star: Vec<(usize, Scalar)>,
    adjoint: Vec<SparseVec<Scalar>>,
    blocks: Vec<Block>,
    block_of: Vec<(usize, usize)>,
    harmonic: Vec<Harmonic>,
}

fn dense_block(ids: &[usize], local: &BTreeMap<usize, usize>, f: impl Fn(usize) -> SparseVec<Scalar>) -> Matrix<Scalar> {
    let mut m = Matrix::zeros(ids.len(), ids.len());
    for (c, &g) in ids.iter().enumerate() {
        for (j, x) in f(g) {
            m.set(local[&j], c, x);
        }
    }
    m
}

fn to_dense(v: &SparseVec<Scalar>, ids: &[usize], local: &BTreeMap<usize, usize>) -> Vec<Scalar> {
    let mut out = alloc::vec![Scalar::zero(); ids.len()];
    for (g, x) in v {
        out[local[g]] = x.clone();
    }
    out
}

fn from_dense(v: &[Scalar], ids: &[usize]) -> SparseVec<Scalar> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(l, x)| (ids[l], x.clone())).collect()
}

impl<'a> HodgePackage<'a> {
    /// Builds the star, the adjoint, and per-block Laplacian data.
    pub fn new(model: &'a FiniteDGA) -> Result<Self, Error> {
        if !model.is_orthonormal() {
            return Err(Error::Unsupported(alloc::format!("{} has no orthonormal basis", model.label)));
        }
        if model.canonical_frame.is_none() {
            return Err(Error::Unsupported(alloc::format!("{} has no canonical frame", model.label)));
        }
        let star = compute_star(model)?;
        let n = model.dim();
        let mut adjoint = alloc::vec![SparseVec::new(); n];
        for j in 0..n {
            for (i, c) in model.diff_of(j) {
                adjoint[*i].insert(j, c.conj());
            }
        }
        let mut pkg = HodgePackage { model, star, adjoint, blocks: Vec::new(), block_of: alloc::vec![(0, 0); n], harmonic: Vec::new() };
        pkg.build_blocks()?;
        Ok(pkg)
    }

    fn build_blocks(&mut self) -> Result<(), Error> {
        let m = self.model;
        let mut groups: BTreeMap<(usize, usize, Character), Vec<usize>> = BTreeMap::new();
        for i in 0..m.dim() {
            let (p, q) = m.bigrade(i);
            groups.entry((p, q, m.term(i).twist.clone())).or_default().push(i);
        }
        let mut found: Vec<(usize, usize, usize, SparseVec<Scalar>)> = Vec::new();
        for (_, ids) in groups {
            let b = self.blocks.len();
            let local: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(l, &g)| (g, l)).collect();
            for (l, &g) in ids.iter().enumerate() {
                self.block_of[g] = (b, l);
            }
            let zero = ids.iter().all(|&g| m.diff_of(g).is_empty() && self.adjoint[g].is_empty());
            let k = ids.len();
            if zero {
                // every word is harmonic; no dense data needed
                for (c, &g) in ids.iter().enumerate() {
                    found.push((m.degree_of(g), b, c, [(g, Scalar::one())].into_iter().collect()));
                }
                self.blocks.push(Block { ids, harmonic: alloc::vec![0; k], coefficients: None, green: None, projection: None });
                continue;
            }
            let lap = dense_block(&ids, &local, |g| self.laplacian(&[(g, Scalar::one())].into_iter().collect()));
            let kern = lap.kernel();
            let kernel = Matrix::from_cols(k, &kern);
            let proj = if kern.is_empty() {
                Matrix::zeros(k, k)
            } else {
                let kd = kernel.adjoint();
                let gram = kd.mul(&kernel).inverse().ok_or_else(|| Error::Singular("harmonic Gram matrix".into()))?;
                kernel.mul(&gram).mul(&kd)
            };
            let inv = lap.add(&proj).inverse().ok_or_else(|| Error::Singular("□ + H is not invertible".into()))?;
            let (green, projection) = (Some(inv.sub(&proj)), Some(proj));
            let coefficients = if kernel.cols() == 0 {
                Matrix::zeros(0, k)
            } else {
                kernel.left_inverse().ok_or_else(|| Error::Singular("harmonic basis".into()))?
            };
            for c in 0..kernel.cols() {
                let v = from_dense(&kernel.col(c), &ids);
                found.push((m.degree_of(ids[0]), b, c, v));
            }
            self.blocks.push(Block { ids, harmonic: alloc::vec![0; kernel.cols()], coefficients: Some(coefficients), green, projection });
        }
        found.sort_by(|a, b| (a.0, a.3.keys().next()).cmp(&(b.0, b.3.keys().next())));
        for (h, (degree, b, c, v)) in found.into_iter().enumerate() {
            self.blocks[b].harmonic[c] = h;
            self.harmonic.push(Harmonic { degree, vector: v });
        }
        Ok(())
    }

    pub fn model(&self) -> &FiniteDGA {
        self.model
    }

    /// `⋆̄ e_i = c e_j`.
    pub fn star_of(&self, i: usize) -> (usize, &Scalar) {
        (self.star[i].0, &self.star[i].1)
    }

    /// Conjugate-linear star on a vector.
    pub fn star(&self, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        let mut out = SparseVec::new();
        for (i, c) in v {
            let (j, s) = &self.star[*i];
            sparse::axpy(&mut out, &c.conj().mul(s), &[(*j, Scalar::one())].into_iter().collect());
        }
        out
    }

    pub fn adjoint(&self, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        let mut out = SparseVec::new();
        for (i, c) in v {
            sparse::axpy(&mut out, c, &self.adjoint[*i]);
        }
        out
    }

    pub fn adjoint_of(&self, i: usize) -> &SparseVec<Scalar> {
        &self.adjoint[i]
    }

    pub fn laplacian(&self, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        let mut out = self.adjoint(&self.model.apply_diff(v));
        let b = self.model.apply_diff(&self.adjoint(v));
        sparse::axpy(&mut out, &Scalar::one(), &b);
        out
    }

    fn blockwise(&self, v: &SparseVec<Scalar>, f: impl Fn(&Block, &[Scalar]) -> Option<Vec<Scalar>>) -> SparseVec<Scalar> {
        let mut parts: BTreeMap<usize, SparseVec<Scalar>> = BTreeMap::new();
        for (i, c) in v {
            parts.entry(self.block_of[*i].0).or_default().insert(*i, c.clone());
        }
        let mut out = SparseVec::new();
        for (b, part) in parts {
            let blk = &self.blocks[b];
            let local: BTreeMap<usize, usize> = blk.ids.iter().enumerate().map(|(l, &g)| (g, l)).collect();
            if let Some(w) = f(blk, &to_dense(&part, &blk.ids, &local)) {
                sparse::axpy(&mut out, &Scalar::one(), &from_dense(&w, &blk.ids));
            }
        }
        out
    }

    /// Green operator: inverse of □ on the orthogonal complement of the harmonic space.
    pub fn green(&self, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        self.blockwise(v, |b, x| b.green.as_ref().map(|g| g.mul_vec(x)))
    }

    pub fn harmonic_projection(&self, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        self.blockwise(v, |b, x| match &b.projection {
            None => Some(x.to_vec()),
            Some(p) => Some(p.mul_vec(x)),
        })
    }

    /// Coordinates of `H v` in the harmonic basis.
    pub fn harmonic_coefficients(&self, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        let mut parts: BTreeMap<usize, SparseVec<Scalar>> = BTreeMap::new();
        for (i, c) in v {
            parts.entry(self.block_of[*i].0).or_default().insert(*i, c.clone());
        }
        let mut out = SparseVec::new();
        for (b, part) in parts {
            let blk = &self.blocks[b];
            if blk.harmonic.is_empty() {
                continue;
            }
            let Some(coefficients) = &blk.coefficients else {
                for (g, x) in part {
                    out.insert(blk.harmonic[self.block_of[g].1], x);
                }
                continue;
            };
            let local: BTreeMap<usize, usize> = blk.ids.iter().enumerate().map(|(l, &g)| (g, l)).collect();
            let c = coefficients.mul_vec(&to_dense(&part, &blk.ids, &local));
            for (k, x) in c.into_iter().enumerate() {
                if !x.is_zero() {
                    out.insert(blk.harmonic[k], x);
                }
            }
        }
        out
    }

    pub fn harmonic_all(&self) -> &[Harmonic] {
        &self.harmonic
    }

    /// Harmonic ids and vectors of degree `k`, in basis order.
    pub fn harmonic(&self, k: usize) -> Vec<(usize, &SparseVec<Scalar>)> {
        self.harmonic.iter().enumerate().filter(|(_, h)| h.degree == k).map(|(i, h)| (i, &h.vector)).collect()
    }

    pub fn harmonic_vector(&self, id: usize) -> &SparseVec<Scalar> {
        &self.harmonic[id].vector
    }

    /// Per degree: `(dim Ker □, rank ∂̄ into k, rank ∂̄* into k, dim C^k)`; the
    /// first three must add up to the last, with the three spaces orthogonal.
    pub fn decomposition(&self) -> Result<Vec<(usize, usize, usize, usize)>, Error> {
        let m = self.model;
        let mut out = Vec::new();
        for k in 0..=m.max_degree() {
            let ids = m.degree_indices(k);
            let harm: Vec<SparseVec<Scalar>> = self.harmonic(k).into_iter().map(|(_, v)| v.clone()).collect();
            let exact: Vec<SparseVec<Scalar>> = if k == 0 {
                Vec::new()
            } else {
                m.degree_indices(k - 1).into_iter().map(|i| m.diff_of(i).clone()).collect()
            };
            let coexact: Vec<SparseVec<Scalar>> =
                m.degree_indices(k + 1).into_iter().map(|i| self.adjoint[i].clone()).collect();
            let (h, e, c) = (
                sparse::rank(&harm, PivotOrder::Forward),
                sparse::rank(&exact, PivotOrder::Forward),
                sparse::rank(&coexact, PivotOrder::Forward),
            );
            if h + e + c != ids.len() {
                return Err(Error::Structural(alloc::format!(
                    "degree {k}: {h} + {e} + {c} ≠ {}",
                    ids.len()
                )));
            }
            for (xs, ys, what) in [(&harm, &exact, "harmonic/exact"), (&harm, &coexact, "harmonic/coexact"), (&exact, &coexact, "exact/coexact")] {
                for x in xs.iter() {
                    for y in ys.iter() {
                        if !inner(x, y).is_zero() {
                            return Err(Error::Structural(alloc::format!("degree {k}: {what} not orthogonal")));
                        }
                    }
                }
            }
            out.push((h, e, c, ids.len()));
        }
        Ok(out)
    }

    /// Checks `⋆̄⋆̄ = ±1` and `∂̄* = ±⋆̄∂̄⋆̄` with one sign per bidegree.
    pub fn check_star(&self) -> Result<(), Error> {
        let m = self.model;
        for i in 0..m.dim() {
            let e: SparseVec<Scalar> = [(i, Scalar::one())].into_iter().collect();
            let ss = self.star(&self.star(&e));
            let ok = ss.len() == 1 && ss.get(&i).is_some_and(|c| c.is_one() || (-c).is_one());
            if !ok {
                return Err(Error::StarClosure(alloc::format!("⋆̄⋆̄ {} = {}", m.fmt_basis(i), m.fmt_vector(&ss))));
            }
        }
        let mut signs: BTreeMap<(usize, usize), bool> = BTreeMap::new();
        for i in 0..m.dim() {
            let e: SparseVec<Scalar> = [(i, Scalar::one())].into_iter().collect();
            let lhs = self.adjoint(&e);
            let rhs = self.star(&m.apply_diff(&self.star(&e)));
            if lhs.is_empty() && rhs.is_empty() {
                continue;
            }
            let neg = if lhs == rhs {
                false
            } else if lhs == sparse::scale(&rhs, &Scalar::int(-1)) {
                true
            } else {
                return Err(Error::StarClosure(alloc::format!(
                    "∂̄* {} = {} but ⋆̄∂̄⋆̄ gives {}",
                    m.fmt_basis(i),
                    m.fmt_vector(&lhs),
                    m.fmt_vector(&rhs)
                )));
            };
            if *signs.entry(m.bigrade(i)).or_insert(neg) != neg {
                return Err(Error::StarClosure(alloc::format!("sign of ⋆̄∂̄⋆̄ varies in bidegree {:?}", m.bigrade(i))));
            }
        }
        Ok(())
    }
}

/// Hermitian inner product in an orthonormal basis.
pub fn inner(a: &SparseVec<Scalar>, b: &SparseVec<Scalar>) -> Scalar {
    let mut s = Scalar::zero();
    for (i, x) in a {
        if let Some(y) = b.get(i) {
            s += &x.mul(&y.conj());
        }
    }
    s
}

/// `c·w ↦ conj(c/ν_w)·ν_{w'}·σ·w'` with `w ∧ w' = σ·top` over the generators the model uses.
fn compute_star(m: &FiniteDGA) -> Result<Vec<(usize, Scalar)>, Error> {
    let top: Word = m.basis().iter().fold(0, |a, t| a | t.word);
    let mut out = Vec::with_capacity(m.dim());
    for i in 0..m.dim() {
        let t = m.term(i);
        let comp = top & !t.word;
        let (neg, _) = wedge_words(t.word, comp).expect("disjoint words");
        let u = m.unitary_factor(t);
        let twist = u.conj().mul_unchecked(&m.frame_twist(comp));
        let image = Term::new(comp, twist);
        let j = m.index_of(&image).ok_or_else(|| {
            Error::StarClosure(alloc::format!("⋆̄ {} = {}", m.fmt_basis(i), m.universe().fmt_term(&image)))
        })?;
        out.push((j, if neg { Scalar::int(-1) } else { Scalar::one() }));
    }
    Ok(out)
}
