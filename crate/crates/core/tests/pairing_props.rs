use chromatic_hopf::model::standard_registry;
use chromatic_hopf::pairing::{
    gram_matrix, pair, pair_word_pbw, pair_word_uword, truncated_t_check, words_up_to, PbwMonomial,
};
use chromatic_hopf::{
    rat, ColourTag, Exec, FreeElem, LaurentPoly, Letter, ModelSpec, Rational, Word,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn model() -> ModelSpec {
    ModelSpec::slq2_colour(&standard_registry()).unwrap()
}

fn word(ix: &[(u8, u8)]) -> Word {
    Word(
        ix.iter()
            .map(|&(i, j)| Letter::new(i, j, ColourTag::one()).unwrap())
            .collect(),
    )
}

fn word_strategy(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1u8..=2, 1u8..=2), 0..=max).prop_map(|ix| word(&ix))
}

fn pbw_strategy(d: u32) -> impl Strategy<Value = PbwMonomial> {
    let all = PbwMonomial::all_up_to(d);
    (0..all.len()).prop_map(move |i| all[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pairing_turns_products_into_coproducts(w1 in word_strategy(2), w2 in word_strategy(2), x in pbw_strategy(2)) {
        let m = model();
        let direct = pair_word_pbw(&m, &w1.concat(&w2), &x).unwrap();
        let mut expanded = LaurentPoly::zero(m.registry());
        for t in m.coproduct_word(&x.as_uword()) {
            let a = pair_word_uword(&m, &w1, &t.left).unwrap();
            let b = pair_word_uword(&m, &w2, &t.right).unwrap();
            expanded = &expanded + &(&t.coeff * &(&a * &b));
        }
        prop_assert_eq!(direct, expanded);
    }
}

#[test]
fn unit_pairing_is_counit_tilde() {
    let m = model();
    for i in 1..=2 {
        for j in 1..=2 {
            let v = pair_word_pbw(&m, &word(&[(i, j)]), &PbwMonomial::UNIT).unwrap();
            let want = if i == j {
                LaurentPoly::one(m.registry())
            } else {
                LaurentPoly::zero(m.registry())
            };
            assert_eq!(v, want);
        }
    }
}

const P: i64 = 1_000_000_007;

fn mod_p(x: &Rational) -> i64 {
    let p = BigInt::from(P);
    let n = ((x.numer() % &p) + &p) % &p;
    let d = ((x.denom() % &p) + &p) % &p;
    let inv = d.modpow(&(&p - 2), &p);
    let v: BigInt = (n * inv) % &p;
    i64::try_from(v).unwrap()
}

/// Rank over `GF(p)` by plain elimination; never exceeds the rational rank.
fn rank_mod_p(m: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(mod_p).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = BigInt::from(a[rank][c]).modpow(&BigInt::from(P - 2), &BigInt::from(P));
        let inv = i64::try_from(inv).unwrap();
        for i in 0..a.len() {
            if i != rank && a[i][c] != 0 {
                let f = (a[i][c] as i128 * inv as i128 % P as i128) as i64;
                let pivot = a[rank].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot) {
                    *x = (*x as i128 - f as i128 * *p as i128).rem_euclid(P as i128) as i64;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn gram_rank_agrees_with_modular_oracle() {
    let m = model();
    for (d, q) in [
        (1, rat(3, 2)),
        (2, rat(3, 2)),
        (2, rat(5, 3)),
        (3, rat(3, 2)),
    ] {
        let g = gram_matrix(&m, d, Some(&q), Exec::Sequential).unwrap();
        assert_eq!(
            g.rank(),
            Some(rank_mod_p(g.evaluated().unwrap())),
            "d={d} q={q}"
        );
    }
}

#[test]
fn gram_sizes_and_ranks() {
    let m = model();
    let q = rat(3, 2);
    let g2 = gram_matrix(&m, 2, Some(&q), Exec::Parallel).unwrap();
    assert_eq!(
        (g2.rows.len(), g2.cols.len(), g2.rank()),
        (21, 14, Some(14))
    );
    let seq = gram_matrix(&m, 2, Some(&q), Exec::Sequential).unwrap();
    assert_eq!(seq, g2);
    assert!(g2.evaluated().unwrap()[0][0].is_one());
}

/// `t11 t22 − q⁻¹ t12 t21 − 1` as a word combination.
fn det_q_minus_one(m: &ModelSpec) -> FreeElem {
    let reg = m.registry();
    let q = LaurentPoly::var(reg, "q").unwrap();
    let terms = [
        (word(&[(1, 1), (2, 2)]), LaurentPoly::one(reg)),
        (word(&[(1, 2), (2, 1)]), -q.invert().unwrap()),
        (Word::unit(), -LaurentPoly::one(reg)),
    ];
    terms.into_iter().fold(FreeElem::zero(reg), |acc, (w, c)| {
        acc.checked_add(&FreeElem::term(w, c)).unwrap()
    })
}

#[test]
fn quantum_determinant_minus_one_pairs_to_zero_symbolically() {
    let m = model();
    let x = det_q_minus_one(&m);
    for pbw in PbwMonomial::all_up_to(2) {
        assert!(
            pair(&m, &x, &pbw.as_uelem(m.registry())).unwrap().is_zero(),
            "{pbw}"
        );
    }
}

#[test]
fn degree_two_kernel_is_rtt_plus_determinant() {
    let m = model();
    let out = truncated_t_check(&m, 2, &rat(3, 2), Exec::Sequential).unwrap();
    assert_eq!(out.kernel_dim, 7);
    assert_eq!(out.rtt_span_dim, 6);
    assert!(out.rtt_in_kernel);
    assert!(!out.kernel_spanned_by_rtt);
    let reg = m.registry();
    let at = std::collections::BTreeMap::from([("q".to_string(), rat(3, 2))]);
    let det = det_q_minus_one(&m);
    let c = &out.complement[0];
    let ratio = c.coeff_of(&Word::unit()).evaluate(&at).unwrap()
        / det.coeff_of(&Word::unit()).evaluate(&at).unwrap();
    for (w, coeff) in det.terms() {
        let want = coeff.evaluate(&at).unwrap() * &ratio;
        assert_eq!(c.coeff_of(w), LaurentPoly::constant(reg, want), "{w}");
    }
    assert!(!ratio.is_zero());
}

#[test]
fn word_enumeration_is_ordered() {
    let ws = words_up_to(2, &ColourTag::one());
    assert!(ws.windows(2).all(|p| p[0] < p[1]));
    assert_eq!(ws[1], word(&[(1, 1)]));
    assert_eq!(ws[5], word(&[(1, 1), (1, 1)]));
}
