//! Cohomology of finite cochain complexes over Gaussian rationals.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;
use crate::linalg::PivotOrder;
use crate::model::FiniteDGA;
use crate::scalar::Scalar;
use crate::sparse::{self, Echelon, SparseVec};

/// A graded space with one operator of degree `+1`, both given on global ids.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    grade: Vec<usize>,
    op: Vec<SparseVec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCohomology {
    pub chain_dim: usize,
    pub dim: usize,
    /// cocycles, in global ids, spanning a complement of the coboundaries
    pub representatives: Vec<SparseVec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub degrees: Vec<DegreeCohomology>,
}

impl CohomologyTable {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating(self.degrees.iter().map(|d| d.dim))
    }

    pub fn chain_euler_characteristic(&self) -> i64 {
        alternating(self.degrees.iter().map(|d| d.chain_dim))
    }
}

fn alternating(it: impl Iterator<Item = usize>) -> i64 {
    it.enumerate().map(|(k, d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
}

impl CochainComplex {
    /// `op[i]` is the image of global id `i`; it must raise `grade` by one.
    pub fn new(grade: Vec<usize>, op: Vec<SparseVec<Scalar>>) -> Result<Self, Error> {
        if grade.len() != op.len() {
            return Err(Error::Dimension { expected: grade.len(), found: op.len() });
        }
        for (i, col) in op.iter().enumerate() {
            if let Some(j) = col.keys().find(|&&j| grade[j] != grade[i] + 1) {
                return Err(Error::Structural(alloc::format!(
                    "operator sends {i} (grade {}) to {j} (grade {})",
                    grade[i],
                    grade[*j]
                )));
            }
        }
        let cx = CochainComplex { grade, op };
        for i in 0..cx.len() {
            let dd = cx.apply(&cx.op[i]);
            if !dd.is_empty() {
                return Err(Error::Structural(alloc::format!("d∘d ≠ 0 on basis vector {i}")));
            }
        }
        Ok(cx)
    }

    /// The model with its differential, graded by total degree.
    pub fn from_model(m: &FiniteDGA) -> Result<Self, Error> {
        let grade = (0..m.dim()).map(|i| m.degree_of(i)).collect();
        Self::new(grade, (0..m.dim()).map(|i| m.diff_of(i).clone()).collect())
    }

    pub fn len(&self) -> usize {
        self.grade.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grade.is_empty()
    }

    pub fn grade(&self, i: usize) -> usize {
        self.grade[i]
    }

    pub fn op(&self, i: usize) -> &SparseVec<Scalar> {
        &self.op[i]
    }

    pub fn apply(&self, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        let mut out = SparseVec::new();
        for (i, c) in v {
            sparse::axpy(&mut out, c, &self.op[*i]);
        }
        out
    }

    pub fn max_grade(&self) -> usize {
        self.grade.iter().copied().max().unwrap_or(0)
    }

    fn ids_of(&self, k: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.grade[i] == k).collect()
    }

    /// Rank of the operator out of grade `k`.
    pub fn rank(&self, k: usize, order: PivotOrder) -> usize {
        let cols: Vec<SparseVec<Scalar>> = self.ids_of(k).into_iter().map(|i| self.op[i].clone()).collect();
        sparse::rank(&cols, order)
    }

    /// Dimensions by rank–nullity with the given pivot order.
    pub fn dims_with(&self, order: PivotOrder, top: usize) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=top).map(|k| self.rank(k, order)).collect();
        (0..=top)
            .map(|k| {
                let n = self.ids_of(k).len();
                n - ranks[k] - if k == 0 { 0 } else { ranks[k - 1] }
            })
            .collect()
    }
}

/// Exact cohomology with representatives; dimensions are checked against a
/// second elimination with the reversed pivot order.
pub fn cohomology(cx: &CochainComplex) -> Result<CohomologyTable, Error> {
    cohomology_upto(cx, cx.max_grade())
}

pub fn cohomology_upto(cx: &CochainComplex, top: usize) -> Result<CohomologyTable, Error> {
    let mut degrees = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let ids = cx.ids_of(k);
        // kernel of op restricted to grade k, in local coordinates
        let cols: Vec<SparseVec<Scalar>> = ids.iter().map(|&i| cx.op[i].clone()).collect();
        let kernel = sparse::kernel(&cols, cx.len());
        let mut ech = Echelon::new(PivotOrder::Forward);
        if k > 0 {
            for i in cx.ids_of(k - 1) {
                ech.insert(cx.op[i].clone());
            }
        }
        let mut reps = Vec::new();
        for v in kernel {
            let global: SparseVec<Scalar> = v.into_iter().map(|(j, c)| (ids[j], c)).collect();
            if let Some(r) = ech.insert(global) {
                reps.push(r);
            }
        }
        degrees.push(DegreeCohomology { chain_dim: ids.len(), dim: reps.len(), representatives: reps });
    }
    let table = CohomologyTable { degrees };
    let alt = cx.dims_with(PivotOrder::Reversed, top);
    if alt != table.dims() {
        return Err(Error::Structural(alloc::format!(
            "pivot orders disagree: {:?} vs {:?}",
            table.dims(),
            alt
        )));
    }
    Ok(table)
}

/// `H^{p,q}` of a bigraded model whose differential has bidegree `(0,1)`.
pub fn dolbeault_table(m: &FiniteDGA) -> Result<BTreeMap<(usize, usize), DegreeCohomology>, Error> {
    let mut out = BTreeMap::new();
    let ps: alloc::collections::BTreeSet<usize> = (0..m.dim()).map(|i| m.bigrade(i).0).collect();
    for p in ps {
        let ids: Vec<usize> = (0..m.dim()).filter(|&i| m.bigrade(i).0 == p).collect();
        let local: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(l, &g)| (g, l)).collect();
        let mut op = Vec::with_capacity(ids.len());
        for &g in &ids {
            let mut col = SparseVec::new();
            for (j, c) in m.diff_of(g) {
                let l = local.get(j).ok_or_else(|| {
                    Error::Structural(alloc::format!("differential of {} changes p", m.fmt_basis(g)))
                })?;
                col.insert(*l, c.clone());
            }
            op.push(col);
        }
        let grade = ids.iter().map(|&g| m.bigrade(g).1).collect();
        let t = cohomology(&CochainComplex::new(grade, op)?)?;
        for (q, mut d) in t.degrees.into_iter().enumerate() {
            for r in &mut d.representatives {
                *r = r.iter().map(|(l, c)| (ids[*l], c.clone())).collect();
            }
            out.insert((p, q), d);
        }
    }
    Ok(out)
}

/// Single complex of `∂̄ + L` on total degree, with `L` of bidegree `(1,0)`.
pub fn total_complex(m: &FiniteDGA, l: &[SparseVec<Scalar>]) -> Result<CochainComplex, Error> {
    if l.len() != m.dim() {
        return Err(Error::Dimension { expected: m.dim(), found: l.len() });
    }
    for i in 0..m.dim() {
        let (p, q) = m.bigrade(i);
        if let Some(j) = l[i].keys().find(|&&j| m.bigrade(j) != (p + 1, q)) {
            return Err(Error::Structural(alloc::format!(
                "operator sends {} to {} outside bidegree ({}, {q})",
                m.fmt_basis(i),
                m.fmt_basis(*j),
                p + 1
            )));
        }
    }
    let apply = |op: &dyn Fn(usize) -> SparseVec<Scalar>, v: &SparseVec<Scalar>| {
        let mut out = SparseVec::new();
        for (i, c) in v {
            sparse::axpy(&mut out, c, &op(*i));
        }
        out
    };
    let dbar = |i: usize| m.diff_of(i).clone();
    let lop = |i: usize| l[i].clone();
    for i in 0..m.dim() {
        let mut anti = apply(&dbar, &l[i]);
        let ld = apply(&lop, m.diff_of(i));
        sparse::axpy(&mut anti, &Scalar::one(), &ld);
        if !anti.is_empty() {
            return Err(Error::Structural(alloc::format!(
                "∂̄L + L∂̄ ≠ 0 on {}: {}",
                m.fmt_basis(i),
                m.fmt_vector(&anti)
            )));
        }
        let ll = apply(&lop, &l[i]);
        if !ll.is_empty() {
            return Err(Error::Structural(alloc::format!("L² ≠ 0 on {}", m.fmt_basis(i))));
        }
    }
    let op = (0..m.dim())
        .map(|i| {
            let mut c = m.diff_of(i).clone();
            sparse::axpy(&mut c, &Scalar::one(), &l[i]);
            c
        })
        .collect();
    CochainComplex::new((0..m.dim()).map(|i| m.degree_of(i)).collect(), op)
}

/// Cohomology of the total complex of `(m, ∂̄, L)`.
pub fn total_cohomology(m: &FiniteDGA, l: &[SparseVec<Scalar>]) -> Result<CohomologyTable, Error> {
    cohomology(&total_complex(m, l)?)
}
