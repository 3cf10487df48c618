//! Shared fixtures and a dense brute-force Hodge oracle.
//!
//! The oracle never touches the star operator or the block structure of the
//! engine: adjoints are conjugate transposes in the orthonormal word basis,
//! Laplacians are assembled per degree, kernels come from a local Gauss
//! elimination and the Green operator is a linear solve followed by an
//! orthogonal projection off the kernel.

#![allow(dead_code)]

pub mod ce;
pub mod identities;
pub mod schouten;

use std::collections::BTreeMap;

use gerst_core::builders::*;
use gerst_core::poly::{Monomial, Poly};
use gerst_core::registry;
use gerst_core::{FiniteDGA, Scalar};

pub type Dense = Vec<Vec<Scalar>>;

pub fn zeros(r: usize, c: usize) -> Dense {
    vec![vec![Scalar::zero(); c]; r]
}

pub fn conj_t(m: &Dense, rows: usize, cols: usize) -> Dense {
    let mut out = zeros(cols, rows);
    for i in 0..rows {
        for j in 0..cols {
            out[j][i] = m[i][j].conj();
        }
    }
    out
}

pub fn matmul(a: &Dense, b: &Dense, n: usize, k: usize, m: usize) -> Dense {
    let mut out = zeros(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

pub fn matvec(a: &Dense, v: &[Scalar]) -> Vec<Scalar> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Scalar::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Pivot {
    LowFirst,
    HighFirst,
}

/// Reduced row echelon form; returns pivot columns.
pub fn rref(m: &mut Dense, cols: usize, order: Pivot) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    let col_order: Vec<usize> = match order {
        Pivot::LowFirst => (0..cols).collect(),
        Pivot::HighFirst => (0..cols).rev().collect(),
    };
    for &c in &col_order {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&row) {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn kernel(m: &Dense, cols: usize, order: Pivot) -> Vec<Vec<Scalar>> {
    let mut a = m.clone();
    let pivots = rref(&mut a, cols, order);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&a[r][f];
            }
            v
        })
        .collect()
}

pub fn rank(m: &Dense, cols: usize, order: Pivot) -> usize {
    rref(&mut m.clone(), cols, order).len()
}

/// Some solution of `a x = b`, or `None`.
pub fn solve(a: &Dense, b: &[Scalar], cols: usize, order: Pivot) -> Option<Vec<Scalar>> {
    let mut aug: Dense = a.iter().zip(b).map(|(row, y)| {
        let mut r = row.clone();
        r.push(y.clone());
        r
    }).collect();
    // pivot on the coefficient columns only; rows carry the right-hand side along
    let pivots = rref(&mut aug, cols, order);
    if aug[pivots.len()..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn herm(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * &y.conj())
}

/// Dense Hodge theory of one degree.
pub struct DenseDegree {
    pub ids: Vec<usize>,
    pub laplacian: Dense,
    pub kernel: Vec<Vec<Scalar>>,
}

pub struct DenseHodge<'a> {
    pub model: &'a FiniteDGA,
    pub order: Pivot,
    pub degrees: Vec<DenseDegree>,
    pos: Vec<usize>,
    // column i of the transpose of the differential
    transpose: Vec<Vec<(usize, Scalar)>>,
}

impl<'a> DenseHodge<'a> {
    pub fn new(model: &'a FiniteDGA, order: Pivot) -> Self {
        let top = model.max_degree();
        let ids: Vec<Vec<usize>> = (0..=top + 1).map(|k| model.degree_indices(k)).collect();
        let mut pos = vec![0; model.dim()];
        for block in &ids {
            for (l, &g) in block.iter().enumerate() {
                pos[g] = l;
            }
        }
        // d_k: degree k -> degree k+1
        let d: Vec<Dense> = (0..=top)
            .map(|k| {
                let mut m = zeros(ids[k + 1].len(), ids[k].len());
                for (j, &g) in ids[k].iter().enumerate() {
                    for (i, c) in model.diff_of(g) {
                        m[pos[*i]][j] = c.clone();
                    }
                }
                m
            })
            .collect();
        let mut degrees = Vec::new();
        for k in 0..=top {
            let n = ids[k].len();
            let up = &d[k];
            let mut lap = matmul(&conj_t(up, ids[k + 1].len(), n), up, n, ids[k + 1].len(), n);
            if k > 0 {
                let down = &d[k - 1];
                let m = ids[k - 1].len();
                let dd = matmul(down, &conj_t(down, n, m), n, m, n);
                for i in 0..n {
                    for j in 0..n {
                        lap[i][j] += &dd[i][j];
                    }
                }
            }
            let kernel = kernel(&lap, n, order);
            degrees.push(DenseDegree { ids: ids[k].clone(), laplacian: lap, kernel });
        }
        let mut transpose = vec![Vec::new(); model.dim()];
        for g in 0..model.dim() {
            for (i, c) in model.diff_of(g) {
                transpose[*i].push((g, c.conj()));
            }
        }
        DenseHodge { model, order, degrees, pos, transpose }
    }

    pub fn to_dense(&self, v: &gerst_core::sparse::SparseVec<Scalar>) -> (usize, Vec<Scalar>) {
        let k = v.keys().next().map(|&i| self.model.degree_of(i)).unwrap_or(0);
        let mut out = vec![Scalar::zero(); self.degrees[k].ids.len()];
        for (i, c) in v {
            assert_eq!(self.model.degree_of(*i), k, "inhomogeneous vector");
            out[self.pos[*i]] = c.clone();
        }
        (k, out)
    }

    pub fn to_sparse(&self, k: usize, v: &[Scalar]) -> gerst_core::sparse::SparseVec<Scalar> {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| (self.degrees[k].ids[l], c.clone()))
            .collect()
    }

    /// Orthogonal projection onto the kernel of the Laplacian in degree `k`.
    pub fn project(&self, k: usize, v: &[Scalar]) -> Vec<Scalar> {
        self.coefficients(k, v)
            .iter()
            .zip(&self.degrees[k].kernel)
            .fold(vec![Scalar::zero(); v.len()], |mut acc, (c, b)| {
                for (x, y) in acc.iter_mut().zip(b) {
                    *x += &(c * y);
                }
                acc
            })
    }

    /// Coordinates of the harmonic part of `v` in this oracle's kernel basis.
    pub fn coefficients(&self, k: usize, v: &[Scalar]) -> Vec<Scalar> {
        let ker = &self.degrees[k].kernel;
        let r = ker.len();
        if r == 0 {
            return Vec::new();
        }
        let gram: Dense = (0..r).map(|i| (0..r).map(|j| herm(&ker[j], &ker[i])).collect()).collect();
        let rhs: Vec<Scalar> = (0..r).map(|i| herm(v, &ker[i])).collect();
        solve(&gram, &rhs, r, self.order).expect("gram matrix is invertible")
    }

    pub fn green(&self, k: usize, v: &[Scalar]) -> Vec<Scalar> {
        let h = self.project(k, v);
        let rhs: Vec<Scalar> = v.iter().zip(&h).map(|(a, b)| a - b).collect();
        let n = rhs.len();
        let x = solve(&self.degrees[k].laplacian, &rhs, n, self.order).expect("v - Hv is in the image");
        let hx = self.project(k, &x);
        x.iter().zip(&hx).map(|(a, b)| a - b).collect()
    }

    /// `∂̄*` as the conjugate transpose in the orthonormal basis.
    pub fn adjoint(&self, v: &gerst_core::sparse::SparseVec<Scalar>) -> gerst_core::sparse::SparseVec<Scalar> {
        let mut out = gerst_core::sparse::SparseVec::new();
        for (i, c) in v {
            for (g, x) in &self.transpose[*i] {
                let e: gerst_core::sparse::SparseVec<Scalar> = [(*g, x.clone())].into_iter().collect();
                gerst_core::sparse::axpy(&mut out, c, &e);
            }
        }
        out
    }
}

pub type Series = BTreeMap<Vec<u32>, gerst_core::sparse::SparseVec<Scalar>>;

fn bracket_series(m: &FiniteDGA, a: &Series, b: &Series) -> Series {
    let mut out: Series = BTreeMap::new();
    for (ma, va) in a {
        for (mb, vb) in b {
            let key: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let br = m.apply_bracket(va, vb).unwrap();
            let e = out.entry(key).or_default();
            gerst_core::sparse::axpy(e, &Scalar::one(), &br);
        }
    }
    out.retain(|_, v| !v.is_empty());
    out
}

pub struct OracleKuranishi {
    pub orders: Vec<Series>,
    /// one polynomial per oracle kernel vector of degree 3
    pub obstructions: Vec<Poly>,
}

/// The recursion with dense operators and the engine's parameter carriers.
pub fn oracle_kuranishi(h: &DenseHodge, carriers: &[gerst_core::sparse::SparseVec<Scalar>], orders: usize) -> OracleKuranishi {
    let m = h.model;
    let k = carriers.len();
    let mut phi1: Series = BTreeMap::new();
    for (i, v) in carriers.iter().enumerate() {
        let mut e = vec![0; k];
        e[i] = 1;
        phi1.insert(e, v.clone());
    }
    let mut all = vec![phi1];
    while all.len() < orders {
        let r = all.len() + 1;
        let mut acc: Series = BTreeMap::new();
        for s in 1..r {
            for (mono, v) in bracket_series(m, &all[s - 1], &all[r - s - 1]) {
                gerst_core::sparse::axpy(acc.entry(mono).or_default(), &Scalar::one(), &v);
            }
        }
        let mut next: Series = BTreeMap::new();
        for (mono, v) in acc {
            if v.is_empty() {
                continue;
            }
            let (deg, dv) = h.to_dense(&v);
            let g = h.to_sparse(deg, &h.green(deg, &dv));
            let out = gerst_core::sparse::scale(&h.adjoint(&g), &Scalar::rat(-1, 2));
            if !out.is_empty() {
                next.insert(mono, out);
            }
        }
        all.push(next);
    }
    let mut phi: Series = BTreeMap::new();
    for o in &all {
        for (mono, v) in o {
            gerst_core::sparse::axpy(phi.entry(mono.clone()).or_default(), &Scalar::one(), v);
        }
    }
    let sq = bracket_series(m, &phi, &phi);
    let r = h.degrees.get(3).map(|d| d.kernel.len()).unwrap_or(0);
    let mut obstructions = vec![Poly::zero(); r];
    for (mono, v) in sq {
        let (deg, dv) = h.to_dense(&v);
        assert_eq!(deg, 3);
        for (i, c) in h.coefficients(3, &dv).into_iter().enumerate() {
            let mut p = Poly::zero();
            p.add_term(Monomial(mono.clone()), c);
            obstructions[i] = obstructions[i].add(&p);
        }
    }
    OracleKuranishi { orders: all, obstructions }
}

/// Quadratic (or any fixed-degree) polynomials as coefficient rows, reduced to a basis.
pub fn poly_span(polys: &[Poly]) -> (Vec<Monomial>, usize) {
    let mut monos: Vec<Monomial> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let rows: Dense = polys
        .iter()
        .map(|p| monos.iter().map(|m| p.coefficient(m)).collect())
        .collect();
    let r = if rows.is_empty() { 0 } else { rank(&rows, monos.len(), Pivot::LowFirst) };
    (monos, r)
}

/// Whether two polynomial lists span the same space.
pub fn same_span(a: &[Poly], b: &[Poly]) -> bool {
    let both: Vec<Poly> = a.iter().chain(b).cloned().collect();
    let (_, ra) = poly_span(a);
    let (_, rb) = poly_span(b);
    let (_, rab) = poly_span(&both);
    ra == rb && ra == rab
}

/// Models on which the structural identities are checked.
pub fn builtin_models() -> Vec<FiniteDGA> {
    let mut out = Vec::new();
    for key in ["heisenberg-c", "iwasawa", "torus-2"] {
        let s = registry::lookup(key, &Default::default()).unwrap();
        out.push(build_nilmanifold_model(&s).unwrap());
    }
    out.push(build_de_rham_model(&registry::iwasawa()).unwrap());
    let (b, c) = build_splitting_models(&registry::cxn1n2(1, 2).unwrap()).unwrap();
    out.push(b);
    out.push(c);
    for pi in [false, true] {
        let (b, c) = build_parallelizable_models(&registry::nakamura(pi).unwrap()).unwrap();
        out.push(b);
        out.push(c);
    }
    let s = build_symplectic_models(&registry::nak(&[1]).unwrap()).unwrap();
    out.push(s.a);
    out.push(s.d);
    out.push(build_splitting_c(&registry::nak(&[1, 2]).unwrap()).unwrap());
    out
}

/// `[X1, X2] = X3, [X1, X3] = X4`: a 3-step nilpotent complex Lie algebra.
pub fn three_step() -> ManifoldSpec {
    let mut s = registry::iwasawa();
    s.name = "filiform-4".into();
    s.fiber = ["X1", "X2", "X3", "X4"]
        .iter()
        .map(|n| FiberGenerator { name: n.to_string(), alpha: gerst_core::Character::identity(0) })
        .collect();
    s.brackets = vec![(0, 1, vec![(2, Scalar::one())]), (0, 2, vec![(3, Scalar::one())])];
    s
}
