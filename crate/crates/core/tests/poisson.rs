//! Poisson structures: acceptance, rejection and total cohomology.

mod common;

use common::schouten::{nakamura_pi_oracle_dims, schouten, Poly};
use gerst_core::builders::*;
use gerst_core::cohomology::*;
use gerst_core::error::Error;
use gerst_core::poisson::*;
use gerst_core::registry;
use gerst_core::sparse::{axpy, SparseVec};
use gerst_core::{FiniteDGA, Scalar};

fn mu_of(m: &FiniteDGA, spec: &ManifoldSpec) -> gerst_core::exterior::Element {
    named_element(m.universe(), spec.mu.as_ref().unwrap()).unwrap()
}

fn names(m: &FiniteDGA, words: &[&[&str]]) -> gerst_core::exterior::Element {
    let terms: Vec<NamedTerm> = words
        .iter()
        .map(|w| NamedTerm { word: w.iter().map(|s| s.to_string()).collect(), twist: None, coef: Scalar::one() })
        .collect();
    named_element(m.universe(), &terms).unwrap()
}

#[test]
fn heisenberg_symplectic_bivector() {
    let spec = registry::heisenberg_c();
    let m = build_nilmanifold_model(&spec).unwrap();
    let ps = verify_poisson(&m, &mu_of(&m, &spec)).unwrap();
    assert!(!operator_is_zero(&ps));
    let t = poisson_cohomology(&m, &ps).unwrap();
    let de_rham = build_de_rham_model(&spec).unwrap();
    let betti = cohomology(&CochainComplex::from_model(&de_rham).unwrap()).unwrap().dims();
    assert_eq!(t.dims(), betti);
    assert_eq!(t.euler_characteristic(), 0);
}

#[test]
fn non_poisson_bivector_is_rejected() {
    let m = build_nilmanifold_model(&registry::heisenberg_c()).unwrap();
    match verify_poisson(&m, &names(&m, &[&["X", "Y"]])) {
        Err(Error::NotPoisson { condition, residual }) => {
            assert_eq!(condition, "bracket");
            let printed = format!("{residual:?}");
            assert!(!residual.is_zero());
            let z = m.universe().index_of("Z").unwrap();
            assert!(residual.terms().any(|(t, _)| t.word & (1 << z) != 0), "{printed}");
        }
        other => panic!("expected rejection, got {other:?}"),
    }
}

#[test]
fn zero_bivector_gives_dolbeault_table() {
    let m = build_nilmanifold_model(&registry::iwasawa()).unwrap();
    let ps = verify_poisson(&m, &gerst_core::exterior::Element::zero()).unwrap();
    assert!(operator_is_zero(&ps));
    let t = poisson_cohomology(&m, &ps).unwrap();
    let table = dolbeault_table(&m).unwrap();
    for (k, d) in t.dims().iter().enumerate() {
        let sum: usize = table.iter().filter(|((p, q), _)| p + q == k).map(|(_, v)| v.dim).sum();
        assert_eq!(*d, sum);
    }
}

#[test]
fn wrong_bidegree_is_input_error() {
    let m = build_nilmanifold_model(&registry::iwasawa()).unwrap();
    let e = names(&m, &[&["X"]]);
    assert!(matches!(verify_poisson(&m, &e), Err(Error::Input(_))));
}

#[test]
fn operator_anticommutes_with_dbar() {
    let mut cases = vec![];
    let spec = registry::heisenberg_c();
    cases.push((build_nilmanifold_model(&spec).unwrap(), spec));
    for pi in [false, true] {
        let spec = registry::nakamura(pi).unwrap();
        cases.push((build_parallelizable_models(&spec).unwrap().1, spec));
    }
    let spec = registry::nak_poisson(&[1]).unwrap();
    cases.push((build_splitting_c(&spec).unwrap(), spec));
    for (m, spec) in &cases {
        let ps = verify_poisson(m, &mu_of(m, spec)).unwrap();
        for i in 0..m.dim() {
            let l = &ps.operator[i];
            let dl = m.apply_diff(l);
            let ld = apply(&ps.operator, m.diff_of(i));
            let mut sum = dl.clone();
            axpy(&mut sum, &Scalar::one(), &ld);
            assert!(sum.is_empty(), "{}: dbar L + L dbar on {}", m.label, m.fmt_basis(i));
            assert!(apply(&ps.operator, l).is_empty(), "{}: L^2 on {}", m.label, m.fmt_basis(i));
        }
    }
}

fn apply(op: &[SparseVec<Scalar>], v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
    let mut out = SparseVec::new();
    for (i, c) in v {
        axpy(&mut out, c, &op[*i]);
    }
    out
}

#[test]
fn nak_poisson_bivector_acts_trivially() {
    let spec = registry::nak_poisson(&[1]).unwrap();
    let m = build_splitting_c(&spec).unwrap();
    let ps = verify_poisson(&m, &mu_of(&m, &spec)).unwrap();
    assert!(operator_is_zero(&ps));
    let t = poisson_cohomology(&m, &ps).unwrap();
    let table = dolbeault_table(&m).unwrap();
    for (k, d) in t.dims().iter().enumerate() {
        let sum: usize = table.iter().filter(|((p, q), _)| p + q == k).map(|(_, v)| v.dim).sum();
        assert_eq!(*d, sum);
    }
}

#[test]
fn schouten_oracle_self_bracket_vanishes() {
    let mu: Poly = [((1, 0b011), 1)].into_iter().collect();
    assert!(schouten(&mu, 2, &mu, 2).is_empty());
}

#[test]
fn nakamura_pi_poisson_cohomology() {
    let spec = registry::nakamura(true).unwrap();
    let (_, c) = build_parallelizable_models(&spec).unwrap();
    let ps = verify_poisson(&c, &mu_of(&c, &spec)).unwrap();
    let t = poisson_cohomology(&c, &ps).unwrap();
    let oracle = nakamura_pi_oracle_dims();
    assert_eq!(oracle, vec![1, 2, 4, 6, 3, 0, 0]);
    assert_eq!(t.dims(), oracle);
    assert_eq!(t.euler_characteristic(), 0);
}
