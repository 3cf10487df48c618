//! Sparse vectors and incremental echelon bases.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::linalg::{Field, PivotOrder};

pub type SparseVec<T> = BTreeMap<usize, T>;

/// `v += c·w`, dropping entries that cancel.
pub fn axpy<T: Field>(v: &mut SparseVec<T>, c: &T, w: &SparseVec<T>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in w {
        let add = c.mul(x);
        match v.entry(*k) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(add);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&add);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

pub fn scale<T: Field>(v: &SparseVec<T>, c: &T) -> SparseVec<T> {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (*k, x.mul(c))).collect()
}

pub fn dense<T: Field>(v: &SparseVec<T>, len: usize) -> Vec<T> {
    let mut out = alloc::vec![T::zero(); len];
    for (k, x) in v {
        out[*k] = x.clone();
    }
    out
}

pub fn from_dense<T: Field>(v: &[T]) -> SparseVec<T> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect()
}

/// Row-echelon basis grown one vector at a time.
///
/// With `Forward` every stored row vanishes below its pivot, with
/// `Reversed` above it, so a single sweep reduces a new vector.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    order: PivotOrder,
    rows: BTreeMap<usize, SparseVec<T>>,
}

impl<T: Field> Echelon<T> {
    pub fn new(order: PivotOrder) -> Self {
        Echelon { order, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &usize> {
        self.rows.keys()
    }

    fn next_pivot(&self, v: &SparseVec<T>, after: Option<usize>) -> Option<usize> {
        match self.order {
            PivotOrder::Forward => {
                let start = after.map_or(0, |a| a + 1);
                v.range(start..).map(|(k, _)| *k).find(|k| self.rows.contains_key(k))
            }
            PivotOrder::Reversed => {
                let mut it: alloc::boxed::Box<dyn Iterator<Item = (&usize, &T)>> = match after {
                    None => alloc::boxed::Box::new(v.iter().rev()),
                    Some(0) => return None,
                    Some(a) => alloc::boxed::Box::new(v.range(..a).rev()),
                };
                it.find(|(k, _)| self.rows.contains_key(k)).map(|(k, _)| *k)
            }
        }
    }

    /// Remainder of `v` after eliminating every stored pivot.
    pub fn reduce(&self, mut v: SparseVec<T>) -> SparseVec<T> {
        let mut cursor = None;
        while let Some(p) = self.next_pivot(&v, cursor) {
            let c = v[&p].neg();
            axpy(&mut v, &c, &self.rows[&p]);
            cursor = Some(p);
        }
        v
    }

    fn lead(&self, v: &SparseVec<T>) -> Option<usize> {
        match self.order {
            PivotOrder::Forward => v.keys().next().copied(),
            PivotOrder::Reversed => v.keys().next_back().copied(),
        }
    }

    /// Adds `v` when independent; returns the normalized new row.
    pub fn insert(&mut self, v: SparseVec<T>) -> Option<SparseVec<T>> {
        let r = self.reduce(v);
        let p = self.lead(&r)?;
        let inv = r[&p].inv().expect("nonzero lead");
        let r = scale(&r, &inv);
        self.rows.insert(p, r.clone());
        Some(r)
    }

    pub fn contains(&self, v: &SparseVec<T>) -> bool {
        self.reduce(v.clone()).is_empty()
    }
}

/// Rank of the span of `vectors`.
pub fn rank<T: Field>(vectors: &[SparseVec<T>], order: PivotOrder) -> usize {
    let mut e = Echelon::new(order);
    for v in vectors {
        e.insert(v.clone());
    }
    e.rank()
}

/// Kernel of the map sending basis vector `j` to `cols[j]` (all indices
/// below `rows`). Vectors come out in the order the elimination finds them.
pub fn kernel<T: Field>(cols: &[SparseVec<T>], rows: usize) -> Vec<SparseVec<T>> {
    let mut e = Echelon::new(PivotOrder::Forward);
    let mut out = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        let mut v = c.clone();
        v.insert(rows + j, T::one());
        if let Some(r) = e.insert(v) {
            if r.keys().next().is_some_and(|&k| k >= rows) {
                out.push(r.into_iter().map(|(k, x)| (k - rows, x)).collect());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn sv(entries: &[(usize, i64)]) -> SparseVec<Scalar> {
        entries.iter().map(|&(k, x)| (k, Scalar::int(x))).collect()
    }

    #[test]
    fn ranks_agree_across_orders() {
        let vs = [sv(&[(0, 1), (2, 1)]), sv(&[(1, 1), (2, 1)]), sv(&[(0, 1), (1, 1), (2, 2)]), sv(&[(3, 5)])];
        assert_eq!(rank(&vs, PivotOrder::Forward), 3);
        assert_eq!(rank(&vs, PivotOrder::Reversed), 3);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let cols = [sv(&[(0, 1)]), sv(&[(0, 2)]), sv(&[(1, 1)]), sv(&[(0, 1), (1, 1)])];
        let k = kernel(&cols, 2);
        assert_eq!(k.len(), 2);
        for v in &k {
            let mut img = SparseVec::new();
            for (j, c) in v {
                axpy(&mut img, c, &cols[*j]);
            }
            assert!(img.is_empty());
        }
    }

    #[test]
    fn reduce_is_idempotent() {
        let mut e = Echelon::new(PivotOrder::Reversed);
        e.insert(sv(&[(0, 1), (4, 2)]));
        e.insert(sv(&[(1, 3), (4, 1)]));
        let r = e.reduce(sv(&[(0, 1), (1, 1), (4, 7)]));
        assert_eq!(e.reduce(r.clone()), r);
        assert!(e.contains(&sv(&[(0, 3), (1, 3), (4, 7)])));
    }
}
