//! Self-mirror comparisons on pseudo-Kähler examples.

use gerst_core::builders::*;
use gerst_core::hodge::HodgePackage;
use gerst_core::kuranishi::{kuranishi_expand, nilpotency_certificate, DEFAULT_MAX_ORDER};
use gerst_core::mirror::*;
use gerst_core::registry;

fn rigged_nak() -> ManifoldSpec {
    let mut s = registry::nak(&[1]).unwrap();
    // e^{iy} declared trivial: the unitary character of W1 dies on the lattice
    s.oracle = registry::xy_oracle(1, vec![vec![0, 1]]).unwrap();
    s
}

#[test]
fn nak_is_self_mirror() {
    for a in [vec![1], vec![1, 2]] {
        let spec = registry::nak(&a).unwrap();
        let r = mirror_compare(&spec).unwrap();
        assert!(r.matched, "{:?}", r.witness);
        assert_eq!(r.path, MirrorPath::Full);
        assert_eq!(r.dims_left, r.dims_right);
        assert_eq!(r.map.len(), r.dims_left.iter().sum::<usize>());
        assert_eq!(r.quadruples_checked, 1 << (4 * a.len()));
    }
    let r = mirror_compare(&registry::nak(&[1, 2]).unwrap()).unwrap();
    assert_eq!(r.dims_left, [1, 2, 9, 20, 34, 44, 34, 20, 9, 2, 1]);
    assert_eq!(r.map.len(), 176);
}

#[test]
fn tyy_is_self_mirror() {
    for (n, size, path) in [(1, 280, MirrorPath::Full), (2, 5536, MirrorPath::Full), (3, 1810, MirrorPath::Structural)] {
        let r = mirror_compare(&registry::tyy(n).unwrap()).unwrap();
        assert!(r.matched, "tyy {n}: {:?}", r.witness);
        assert_eq!(r.path, path);
        assert_eq!(r.map.len(), size, "tyy {n}");
        assert_eq!(r.dims_left, r.dims_right);
    }
}

#[test]
fn map_is_a_bijection_onto_words() {
    let r = mirror_compare(&registry::nak(&[1]).unwrap()).unwrap();
    let mut left: Vec<&String> = r.map.iter().map(|p| &p.0).collect();
    let mut right: Vec<&String> = r.map.iter().map(|p| &p.1).collect();
    left.sort();
    left.dedup();
    right.sort();
    right.dedup();
    assert_eq!(left.len(), r.map.len());
    assert_eq!(right.len(), r.map.len());
}

#[test]
fn torus_maps_words_to_words() {
    let r = mirror_compare(&registry::kahler_torus(1).unwrap()).unwrap();
    assert!(r.matched);
    assert_eq!(r.dims_left, [1, 2, 1]);
    assert_eq!(r.map.len(), 4);
}

#[test]
fn rigged_oracle_gives_witness() {
    let spec = rigged_nak();
    let r = mirror_compare(&spec).unwrap();
    assert!(!r.matched);
    assert!(r.witness.is_some());
    assert!(r.quadruple.is_some());
    assert!(r.map.is_empty());
    assert!(!smss_hypothesis(&spec).unwrap().holds);
}

#[test]
fn non_symplectic_input_is_rejected() {
    assert!(mirror_compare(&registry::iwasawa()).is_err());
    assert!(mirror_compare(&registry::cxn1n2(1, 2).unwrap()).is_err());
}

#[test]
fn hypothesis_models_are_smooth() {
    for spec in [registry::nak(&[1]).unwrap(), registry::nak(&[1, 2]).unwrap(), registry::tyy(1).unwrap()] {
        assert!(smss_hypothesis(&spec).unwrap().holds, "{}", spec.name);
        let c = build_splitting_c(&spec).unwrap();
        assert!(c.bracket_is_trivial().unwrap(), "{}", spec.name);
        assert!(c.has_zero_differential());
        let nil = nilpotency_certificate(&spec).unwrap();
        let r = kuranishi_expand(&HodgePackage::new(&c).unwrap(), nil, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(r.smooth, Some(true), "{}", spec.name);
        assert!(r.obstructions.is_empty());
    }
    for n in [2, 3] {
        let spec = registry::tyy(n).unwrap();
        assert!(smss_hypothesis(&spec).unwrap().holds);
        // matched on either path means the C bracket and ∂̄ vanish
        assert!(mirror_compare(&spec).unwrap().matched);
    }
}
