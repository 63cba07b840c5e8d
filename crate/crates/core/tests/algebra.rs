use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use dynatomic_core::exactalg::{int, UniPoly};
use dynatomic_core::form::{resultant2, QForm};
use dynatomic_core::mpoly::MPoly;
use dynatomic_core::numfield::{modulus, nf_invert, NFElem};
use dynatomic_core::ratmap::{KPoint, Pgl2};

const VARS: [&str; 4] = ["a", "b", "c", "d"];

/// Up to 6 terms in the first `nv` variables, total degree ≤ 4 (so products stay ≤ 8).
fn mpoly(nv: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, nv), -4i64..=4), 1..6).prop_map(move |ts| {
        let vars: Vec<String> = VARS[..nv].iter().map(|s| s.to_string()).collect();
        let terms = ts.into_iter().map(|(e, c)| (e, BigRational::from_integer(c.into())));
        MPoly::from_terms(&vars, terms).unwrap()
    })
}

fn roster() -> impl Strategy<Value = usize> {
    1usize..=4
}

fn form(d: usize) -> impl Strategy<Value = QForm> {
    prop::collection::vec(-5i64..=5, d + 1).prop_map(|c| QForm::new(c.into_iter().map(int).collect()))
}

fn swapped(f: &QForm) -> QForm {
    QForm::new(f.coeffs().iter().rev().cloned().collect())
}

fn is_homogeneous(f: &QForm) -> bool {
    f.is_zero() || f.to_mpoly().homogeneous_degree_in(&["x", "y"]) == Some(f.degree() as u32)
}

fn nf(m: &std::sync::Arc<UniPoly>, c: &[i64]) -> NFElem {
    NFElem::new(m, &UniPoly::from_ints(c)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn exact_division_undoes_multiplication((a, b) in roster().prop_flat_map(|n| (mpoly(n), mpoly(n)))) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn specialization_is_a_ring_map(p in mpoly(3), q in mpoly(3), s in mpoly(2), c in -3i64..=3) {
        let binds = [("a", s), ("c", MPoly::from_int(c))];
        let lhs = (&p * &q).specialize(&binds).unwrap();
        let rhs = &p.specialize(&binds).unwrap() * &q.specialize(&binds).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = (&p + &q).specialize(&binds).unwrap();
        prop_assert_eq!(lhs, &p.specialize(&binds).unwrap() + &q.specialize(&binds).unwrap());
    }

    #[test]
    fn resultant_survives_swapping_variables(f in form(3), g in form(3)) {
        let r = resultant2(&f, &g).unwrap();
        let s = resultant2(&swapped(&f), &swapped(&g)).unwrap();
        prop_assert!(r == s || r == -s.clone());
    }

    #[test]
    fn forms_stay_homogeneous(f in form(3), g in form(2), l1 in form(1), l2 in form(1)) {
        prop_assert!(is_homogeneous(&f.mul(&g)));
        prop_assert!(is_homogeneous(&f.add(&f.scale(&int(2)))));
        let c = f.compose(&l1, &l2);
        prop_assert_eq!(c.degree(), 3);
        prop_assert!(is_homogeneous(&c));
    }

    #[test]
    fn number_field_ring_laws(a in prop::collection::vec(-9i64..=9, 3), b in prop::collection::vec(-9i64..=9, 3), c in prop::collection::vec(-9i64..=9, 3)) {
        let m = modulus(&UniPoly::from_ints(&[-1, -1, 0, 1])).unwrap();
        let (x, y, z) = (nf(&m, &a), nf(&m, &b), nf(&m, &c));
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y.add(&z).unwrap()).unwrap(), x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap());
        if let Ok(inv) = nf_invert(&x) {
            prop_assert_eq!(inv.mul(&x).unwrap(), NFElem::from_rational(&m, BigRational::one()));
        }
    }

    #[test]
    fn inverses_in_a_reducible_quotient(a in prop::collection::vec(-9i64..=9, 2)) {
        // t² − 1: zero divisors exist, so inversion may fail, but never wrongly succeeds
        let m = modulus(&UniPoly::from_ints(&[-1, 0, 1])).unwrap();
        let x = nf(&m, &a);
        if let Ok(inv) = nf_invert(&x) {
            prop_assert_eq!(inv.mul(&x).unwrap(), NFElem::from_rational(&m, BigRational::one()));
        }
    }
}

#[test]
fn derivative_at_a_fixed_point_of_h_is_a_primitive_root_of_unity() {
    let f = Pgl2::parse("y, x").unwrap().as_map();
    for z in [1, -1] {
        let l = f.taylor_at(&KPoint::normalized(int(z), int(1)).unwrap(), 1).unwrap()[1].clone();
        assert_eq!(l, int(-1));
    }
    let g = Pgl2::parse("x - y, x").unwrap().as_map();
    let m = modulus(&UniPoly::from_ints(&[1, -1, 1])).unwrap();
    let t = NFElem::generator(&m).unwrap();
    let q = KPoint { x: t.clone(), y: NFElem::from_rational(&m, BigRational::one()) };
    let l = g.taylor_at(&q, 1).unwrap()[1].clone();
    let one = NFElem::from_rational(&m, BigRational::one());
    assert_ne!(l, one);
    assert_eq!(l.mul(&l).unwrap().mul(&l).unwrap(), one);
}
