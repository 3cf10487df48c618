//! Field laws, the character group and the triviality oracle.

use gerst_core::character::{OracleMode, Rule, TrivialityOracle};
use gerst_core::exterior::{Element, Kind, Term, UniverseBuilder};
use gerst_core::poly::Poly;
use gerst_core::{Character, Scalar};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=5, -6i64..=6, 1i64..=5).prop_map(|(a, b, c, d)| {
        Scalar::rat(a, b) + Scalar::rat(c, d) * Scalar::i()
    })
}

fn character(n: usize) -> impl Strategy<Value = Character> {
    (proptest::collection::vec(scalar(), n), proptest::collection::vec(scalar(), n))
        .prop_map(|(a, b)| Character::new(a, b).unwrap())
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::int(x)).collect()
}

proptest! {
    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn scalar_display_round_trips(a in scalar()) {
        let text = format!("{a}");
        prop_assert_eq!(text.parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn characters_form_a_group(a in character(2), b in character(2), c in character(2)) {
        let id = Character::identity(2);
        prop_assert_eq!(a.mul(&id).unwrap(), a.clone());
        prop_assert!(a.mul(&a.inv()).unwrap().is_identity());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul(&b).unwrap().conj(), a.conj().mul(&b.conj()).unwrap());
    }

    #[test]
    fn unitary_part_splits_off_a_holomorphic_factor(a in character(2), b in character(2)) {
        let u = a.unitary_part();
        prop_assert!(u.is_unitary());
        prop_assert!(a.div(&u).unwrap().is_holomorphic());
        prop_assert_eq!(u.unitary_part(), u.clone());
        prop_assert_eq!(a.mul(&b).unwrap().unitary_part(), u.mul(&b.unitary_part()).unwrap());
        // holomorphic characters have trivial unitary part
        prop_assert!(a.div(&u).unwrap().unitary_part().is_identity());
    }

    #[test]
    fn real_exponentials(k in -5i64..=5, l in -5i64..=5) {
        let x = Character::exp_x(&ints(&[k, l]));
        prop_assert!(x.is_real());
        prop_assert_eq!(x.unitary_part(), Character::exp_iy(&ints(&[-k, -l])));
        prop_assert!(Character::exp_iy(&ints(&[k, l])).is_unitary());
        prop_assert_eq!(Character::exp_z(&ints(&[k, 0])), Character::exp_x(&ints(&[k, 0])).mul(&Character::exp_iy(&ints(&[k, 0]))).unwrap());
    }

    #[test]
    fn oracle_decides_a_subgroup(e1 in proptest::collection::vec(-4i64..=4, 2), e2 in proptest::collection::vec(-4i64..=4, 2)) {
        // generators e^x, e^{iy}; e^{2iy} trivial
        let gens = vec![Character::exp_x(&ints(&[1])), Character::exp_iy(&ints(&[1]))];
        let o = TrivialityOracle::new(gens.clone(), OracleMode::Sublattice { trivial: vec![vec![0, 2]] }).unwrap();
        let make = |e: &[i64]| gens[0].pow(e[0]).mul(&gens[1].pow(e[1])).unwrap();
        let (a, b) = (make(&e1), make(&e2));
        let exps: Vec<i64> = o.exponents(&a).unwrap().iter().map(|x| i64::try_from(x).unwrap()).collect();
        prop_assert_eq!(exps, e1.clone());
        let expected = e1[0] == 0 && e1[1] % 2 == 0;
        prop_assert_eq!(o.is_trivial(&a).unwrap(), expected);
        if o.is_trivial(&a).unwrap() && o.is_trivial(&b).unwrap() {
            prop_assert!(o.is_trivial(&a.mul(&b).unwrap()).unwrap());
        }
        prop_assert_eq!(o.is_trivial(&a).unwrap(), o.is_trivial(&a.inv()).unwrap());
    }

    #[test]
    fn wedge_is_graded_commutative_and_associative(
        ca in proptest::collection::vec((0u64..64, -3i64..=3), 1..4),
        cb in proptest::collection::vec((0u64..64, -3i64..=3), 1..4),
        cc in proptest::collection::vec((0u64..64, -3i64..=3), 1..4),
    ) {
        let mut b = UniverseBuilder::new(0);
        for (name, kind) in [("X", Kind::Vector10), ("Y", Kind::Vector10), ("Z", Kind::Vector10), ("xb", Kind::Covector01), ("yb", Kind::Covector01), ("zb", Kind::Covector01)] {
            b.generator(name, kind, None, None);
        }
        let u = b.build().unwrap();
        let mk = |cs: &[(u64, i64)]| {
            let mut e = Element::zero();
            for (w, c) in cs {
                e.add_term(Term::new(*w, u.identity_twist()), Scalar::int(*c));
            }
            e
        };
        let (a, bb, c) = (mk(&ca), mk(&cb), mk(&cc));
        prop_assert_eq!(a.wedge(&bb).wedge(&c), a.wedge(&bb.wedge(&c)));
        for p in 0..=6 {
            for q in 0..=6 {
                let (x, y) = (a.degree_part(p), bb.degree_part(q));
                let s = if (p * q) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                prop_assert_eq!(x.wedge(&y), y.wedge(&x).scale(&s));
            }
        }
    }

    #[test]
    fn polynomial_ring_laws(c in proptest::collection::vec((0u32..3, 0u32..3, -4i64..=4), 0..5),
                            d in proptest::collection::vec((0u32..3, 0u32..3, -4i64..=4), 0..5)) {
        let mk = |cs: &[(u32, u32, i64)]| {
            let mut p = Poly::zero();
            for (a, b, k) in cs {
                p.add_term(gerst_core::poly::Monomial(vec![*a, *b]), Scalar::int(*k));
            }
            p
        };
        let (p, q) = (mk(&c), mk(&d));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.add(&q).sub(&q), p.clone());
        let names = vec!["s".to_string(), "t".to_string()];
        prop_assert_eq!(Poly::parse(&p.format(&names), &names).unwrap(), p.clone());
        let n = p.normalized();
        prop_assert_eq!(n.normalized(), n.clone());
        if let Some((_, lead)) = n.leading() {
            prop_assert!(lead.is_one());
        }
    }
}

#[test]
fn rule_table_oracle() {
    let gens = vec![Character::exp_x(&ints(&[1])), Character::exp_iy(&ints(&[1]))];
    let o = TrivialityOracle::new(gens, OracleMode::RuleTable { rules: vec![Rule::Never, Rule::Modulo(3)] }).unwrap();
    assert!(o.is_trivial(&Character::exp_iy(&ints(&[3]))).unwrap());
    assert!(!o.is_trivial(&Character::exp_iy(&ints(&[2]))).unwrap());
    assert!(!o.is_trivial(&Character::exp_x(&ints(&[3]))).unwrap());
    // e^{z/2} is not an integer combination of the generators
    assert!(o.is_trivial(&Character::exp_z(&[Scalar::rat(1, 2)])).is_err());
}

#[test]
fn dependent_generators_are_rejected() {
    let gens = vec![Character::exp_x(&ints(&[1])), Character::exp_x(&ints(&[2]))];
    assert!(TrivialityOracle::new(gens, OracleMode::Sublattice { trivial: vec![] }).is_err());
}
