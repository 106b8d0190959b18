use std::collections::BTreeMap;
use std::sync::Arc;

use chromatic_hopf::ring::Substitution;
use chromatic_hopf::{rat, Error, LaurentPoly, Rational, VarRegistry};
use proptest::prelude::*;

fn reg() -> Arc<VarRegistry> {
    VarRegistry::new(["q", "l", "m"]).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=20, 1i64..=7, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

fn poly(reg: Arc<VarRegistry>) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-3i32..=3, 3), rational()), 0..5)
        .prop_map(move |terms| LaurentPoly::from_terms(&reg, terms))
}

fn point() -> impl Strategy<Value = BTreeMap<String, Rational>> {
    (nonzero_rational(), nonzero_rational(), nonzero_rational())
        .prop_map(|(a, b, c)| BTreeMap::from([("q".into(), a), ("l".into(), b), ("m".into(), c)]))
}

proptest! {
    #[test]
    fn commutative_ring_axioms(a in poly(reg()), b in poly(reg()), c in poly(reg())) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(&reg()), a.clone());
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly(reg()), b in poly(reg()), at in point()) {
        let ev = |p: &LaurentPoly| p.evaluate(&at).unwrap();
        prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
    }

    #[test]
    fn monomial_substitution_is_a_ring_map(a in poly(reg()), b in poly(reg()), c in nonzero_rational(), e in -2i32..=2) {
        let r = reg();
        let image = LaurentPoly::monomial(&r, c, vec![0, e, 1]);
        let s = Substitution::new().monomial("l", image).unwrap();
        let f = |p: &LaurentPoly| p.substitute(&s).unwrap();
        prop_assert_eq!(f(&(&a * &b)), &f(&a) * &f(&b));
        prop_assert_eq!(f(&(&a + &b)), &f(&a) + &f(&b));
    }

    #[test]
    fn monomials_invert(c in nonzero_rational(), exps in prop::collection::vec(-4i32..=4, 3)) {
        let r = reg();
        let m = LaurentPoly::monomial(&r, c, exps);
        prop_assert!((&m * &m.invert().unwrap()).is_one());
    }
}

#[test]
fn sums_are_not_units() {
    let r = reg();
    let q = LaurentPoly::var(&r, "q").unwrap();
    let p = &q + &LaurentPoly::one(&r);
    assert_eq!(p.invert(), Err(Error::NotAUnit));
}

#[test]
fn q_minus_q_inverse_squared() {
    let r = reg();
    let q = LaurentPoly::var(&r, "q").unwrap();
    let d = &q - &q.invert().unwrap();
    let want = LaurentPoly::from_terms(
        &r,
        [
            (vec![2, 0, 0], rat(1, 1)),
            (vec![0, 0, 0], rat(-2, 1)),
            (vec![-2, 0, 0], rat(1, 1)),
        ],
    );
    assert_eq!(&d * &d, want);
}
