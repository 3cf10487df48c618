//! Exhaustive graded identities on basis words of low total degree.

use gerst_core::sparse::{self, SparseVec};
use gerst_core::{FiniteDGA, Scalar};

type V = SparseVec<Scalar>;

fn e(i: usize) -> V {
    [(i, Scalar::one())].into_iter().collect()
}

fn sign(k: usize) -> Scalar {
    if k.is_multiple_of(2) { Scalar::one() } else { -Scalar::one() }
}

fn add(a: &V, s: &Scalar, b: &V) -> V {
    let mut out = a.clone();
    sparse::axpy(&mut out, s, b);
    out
}

fn wedge(m: &FiniteDGA, a: &V, b: &V) -> V {
    let mut out = V::new();
    for (i, x) in a {
        for (j, y) in b {
            sparse::axpy(&mut out, &(x * y), &m.product(*i, *j).unwrap());
        }
    }
    out
}

fn br(m: &FiniteDGA, a: &V, b: &V) -> V {
    m.apply_bracket(a, b).unwrap()
}

fn ids_upto(m: &FiniteDGA, top: usize) -> Vec<usize> {
    (0..m.dim()).filter(|&i| (1..=top).contains(&m.degree_of(i))).collect()
}

/// Panics on the first failing identity.
pub fn check_model(m: &FiniteDGA, pair_top: usize, triple_top: usize) {
    for i in 0..m.dim() {
        assert!(m.apply_diff(m.diff_of(i)).is_empty(), "{}: d² ≠ 0 on {}", m.label, m.fmt_basis(i));
    }
    let ids = ids_upto(m, pair_top);
    for &i in &ids {
        let a = e(i);
        let da = m.apply_diff(&a);
        let p = m.degree_of(i);
        for &j in &ids {
            let q = m.degree_of(j);
            if p + q > pair_top {
                continue;
            }
            let b = e(j);
            let db = m.apply_diff(&b);
            let ab = wedge(m, &a, &b);
            assert_eq!(ab, sparse::scale(&wedge(m, &b, &a), &sign(p * q)), "{}: wedge commutativity", m.label);
            // d(a∧b) = da∧b + (−1)^{|a|} a∧db
            let rhs = add(&wedge(m, &da, &b), &sign(p), &wedge(m, &a, &db));
            assert_eq!(m.apply_diff(&ab), rhs, "{}: Leibniz on {} ∧ {}", m.label, m.fmt_basis(i), m.fmt_basis(j));
            let bab = br(m, &a, &b);
            let bba = br(m, &b, &a);
            assert_eq!(bab, sparse::scale(&bba, &-sign((p + 1) * (q + 1))), "{}: antisymmetry", m.label);
            // ∂̄[a•b] = [∂̄a•b] + (−1)^{|a|+1}[a•∂̄b]
            let rhs = add(&br(m, &da, &b), &sign(p + 1), &br(m, &a, &db));
            assert_eq!(
                m.apply_diff(&bab),
                rhs,
                "{}: derivation on [{} • {}]",
                m.label,
                m.fmt_basis(i),
                m.fmt_basis(j)
            );
        }
    }
    let ids = ids_upto(m, triple_top);
    for &i in &ids {
        let a = e(i);
        let p = m.degree_of(i);
        for &j in &ids {
            let q = m.degree_of(j);
            if p + q >= triple_top {
                continue;
            }
            let b = e(j);
            let ab = br(m, &a, &b);
            for &k in &ids {
                let r = m.degree_of(k);
                if p + q + r > triple_top {
                    continue;
                }
                let c = e(k);
                // [a•[b•c]] = [[a•b]•c] + (−1)^{(|a|−1)(|b|−1)}[b•[a•c]]
                let lhs = br(m, &a, &br(m, &b, &c));
                let rhs = add(&br(m, &ab, &c), &sign((p + 1) * (q + 1)), &br(m, &b, &br(m, &a, &c)));
                assert_eq!(lhs, rhs, "{}: Jacobi on {}, {}, {}", m.label, m.fmt_basis(i), m.fmt_basis(j), m.fmt_basis(k));
                // [a•b∧c] = [a•b]∧c + (−1)^{(|a|−1)|b|} b∧[a•c]
                let lhs = br(m, &a, &wedge(m, &b, &c));
                let rhs = add(&wedge(m, &ab, &c), &sign((p + 1) * q), &wedge(m, &b, &br(m, &a, &c)));
                assert_eq!(lhs, rhs, "{}: bracket Leibniz on {}, {}, {}", m.label, m.fmt_basis(i), m.fmt_basis(j), m.fmt_basis(k));
            }
        }
    }
}
