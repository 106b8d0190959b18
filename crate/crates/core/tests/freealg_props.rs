use std::sync::Arc;

use chromatic_hopf::pairing::{rho_apply, rho_lower};
use chromatic_hopf::{cp_mul, rat, ColourTag, FreeElem, LaurentPoly, Letter, VarRegistry, Word};
use proptest::prelude::*;

fn reg() -> Arc<VarRegistry> {
    VarRegistry::new(["q", "l", "m", "n"]).unwrap()
}

fn colour() -> impl Strategy<Value = ColourTag> {
    prop_oneof![
        Just(ColourTag::one()),
        Just(ColourTag::var("l").unwrap()),
        Just(ColourTag::var("m").unwrap()),
        Just(ColourTag::var("n").unwrap().inv()),
        (1i64..=9, 1i64..=9).prop_map(|(a, b)| ColourTag::rational(rat(a, b)).unwrap()),
    ]
}

fn word_of(colour: ColourTag, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1u8..=2, 1u8..=2), 0..=max_len).prop_map(move |ix| {
        Word(
            ix.into_iter()
                .map(|(i, j)| Letter::new(i, j, colour.clone()).unwrap())
                .collect(),
        )
    })
}

fn elem(colour: ColourTag) -> impl Strategy<Value = FreeElem> {
    prop::collection::vec((word_of(colour, 3), -3i64..=3), 1..4).prop_map(|terms| {
        let r = reg();
        terms.into_iter().fold(FreeElem::zero(&r), |acc, (w, c)| {
            acc.checked_add(&FreeElem::term(w, LaurentPoly::from_int(&r, c)))
                .unwrap()
        })
    })
}

/// `(c_j/c_i)(ν)` with `c = (ν, 1)`, multiplied over the word.
fn expected_factor(w: &Word, nu: &ColourTag) -> ColourTag {
    w.letters().iter().fold(ColourTag::one(), |acc, l| {
        let e = |k: u8| if k == 1 { 1 } else { 0 };
        acc.mul(&nu.pow(e(l.j) - e(l.i)))
    })
}

proptest! {
    #[test]
    fn rho_is_a_group_action(x in elem(ColourTag::one()), a in colour(), b in colour()) {
        let lhs = rho_apply(&a, &rho_apply(&b, &x).unwrap()).unwrap();
        let rhs = rho_apply(&a.mul(&b), &x).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(rho_apply(&ColourTag::one(), &x).unwrap(), x.clone());
        prop_assert_eq!(rho_lower(&a, &rho_apply(&a, &x).unwrap()).unwrap(), x);
    }

    #[test]
    fn rho_scales_words_by_column_over_row(w in word_of(ColourTag::one(), 4), nu in colour()) {
        let r = reg();
        let out = rho_apply(&nu, &FreeElem::word(&r, w.clone())).unwrap();
        let moved = Word(w.letters().iter().map(|l| Letter::new(l.i, l.j, l.colour.mul(&nu)).unwrap()).collect());
        let want = FreeElem::term(moved, expected_factor(&w, &nu).to_poly(&r).unwrap());
        prop_assert_eq!(out, want);
    }

    #[test]
    fn coloured_product_is_associative_and_retags(
        x in elem(ColourTag::var("l").unwrap()),
        y in elem(ColourTag::var("m").unwrap()),
        nu in colour(),
    ) {
        let p = cp_mul(&x, &y, &nu).unwrap();
        prop_assert_eq!(p.result_colour(), Some(&nu));
        for (w, _) in p.terms() {
            prop_assert!(w.letters().iter().all(|l| l.colour == nu));
        }
        let z = FreeElem::letter(&reg(), 2, 1, ColourTag::var("n").unwrap()).unwrap();
        let left = cp_mul(&p, &z, &nu).unwrap();
        let right = cp_mul(&x, &cp_mul(&y, &z, &nu).unwrap(), &nu).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn unit_colour_product_is_concatenation(x in elem(ColourTag::one()), y in elem(ColourTag::one())) {
        prop_assert_eq!(cp_mul(&x, &y, &ColourTag::one()).unwrap(), x.concat(&y).unwrap());
    }
}

#[test]
fn coloured_product_example() {
    let r = reg();
    let (l, m, n) = (
        ColourTag::var("l").unwrap(),
        ColourTag::var("m").unwrap(),
        ColourTag::var("n").unwrap(),
    );
    let got = cp_mul(
        &FreeElem::letter(&r, 1, 2, l.clone()).unwrap(),
        &FreeElem::letter(&r, 2, 1, m.clone()).unwrap(),
        &n,
    )
    .unwrap();
    let w = Word(vec![
        Letter::new(1, 2, n.clone()).unwrap(),
        Letter::new(2, 1, n).unwrap(),
    ]);
    assert_eq!(got, FreeElem::term(w, l.mul(&m.inv()).to_poly(&r).unwrap()));
}
