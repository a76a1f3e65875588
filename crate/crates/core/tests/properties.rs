use std::sync::OnceLock;

use proptest::prelude::*;
use relhom::nu::loop_subset_check;
use relhom::perm::Sign;
use relhom::words::Letter;
use relhom::zlinalg::check_smith_form;
use relhom::{
    magnus, smith_normal_form, AffineSimplexMap, IntMatrix, NuEvaluator, Permutation, RationalPoint, Word,
    WordCombination,
};

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn word(g: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=g, any::<bool>()), 0..=max_len).prop_map(|ls| {
        Word::from_letters(
            ls.into_iter()
                .map(|(x, inv)| Letter::new(x, inv).unwrap())
                .collect(),
        )
    })
}

fn positive_word(g: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=g, 0..=max_len).prop_map(|gs| Word::from_generators(&gs).unwrap())
}

/// Points of `Δ^n` with coordinates `0 ≤ x_1 ≤ ⋯ ≤ x_n ≤ 1`, denominator 12.
fn simplex_point(n: usize) -> impl Strategy<Value = RationalPoint> {
    prop::collection::vec(0i64..=12, n).prop_map(|mut v| {
        v.sort_unstable();
        RationalPoint::from_fractions(&v, 12)
    })
}

fn evaluator(n: usize, g: usize) -> &'static NuEvaluator {
    static CACHE: OnceLock<Vec<Vec<NuEvaluator>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        (1..=2)
            .map(|n| (1..=2).map(|g| NuEvaluator::new(n, g).unwrap()).collect())
            .collect()
    });
    &cache[n - 1][g - 1]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(a in permutation(5), b in permutation(5), c in permutation(5)) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn sign_is_multiplicative(a in permutation(6), b in permutation(6)) {
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ab.sign(), a.sign() * b.sign());
        prop_assert_eq!(a.inverse().sign(), a.sign());
        prop_assert_eq!(a.compose(&a.inverse()).unwrap(), Permutation::identity(6));
    }

    #[test]
    fn pullback_is_contravariant(a in permutation(4), b in permutation(4)) {
        let x = vec!['p', 'q', 'r', 's'];
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ab.pullback(&x), b.pullback(&a.pullback(&x)));
    }

    #[test]
    fn face_extension_has_the_expected_sign(s in permutation(4), i in 0usize..=5) {
        let t = s.face_extension(i).unwrap();
        let flip = if (1..=4).contains(&i) { Sign::from_parity(s.apply(i).abs_diff(i)) } else { Sign::Pos };
        prop_assert_eq!(t.degree(), 5);
        prop_assert_eq!(t.sign(), s.sign() * flip);
    }

    #[test]
    fn affine_composition_agrees_with_evaluation(
        v in prop::collection::vec(0i64..3, 2),
        s in permutation(2),
        face in 0usize..=2,
        x in simplex_point(1),
    ) {
        let piece = AffineSimplexMap::subdivision_piece(&v, &s, 3).unwrap();
        let d = AffineSimplexMap::face(2, face).unwrap();
        let composite = piece.compose(&d).unwrap();
        prop_assert_eq!(composite.apply(&x).unwrap(), piece.apply(&d.apply(&x).unwrap()).unwrap());
    }

    #[test]
    fn reduction_is_idempotent_and_preserves_magnus(w in word(2, 8)) {
        let r = w.reduce();
        prop_assert_eq!(r.reduce(), r.clone());
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(magnus(&w, 3, 2).unwrap(), magnus(&r, 3, 2).unwrap());
    }

    #[test]
    fn magnus_is_multiplicative(u in word(2, 5), v in word(2, 5)) {
        let uv = magnus(&u.concat(&v), 3, 2).unwrap();
        prop_assert_eq!(uv, magnus(&u, 3, 2).unwrap().mul(&magnus(&v, 3, 2).unwrap()));
        let unit = magnus(&u.concat(&u.inverse()), 3, 2).unwrap();
        prop_assert_eq!(unit, relhom::TruncatedTensorElement::one(3));
    }

    #[test]
    fn nu_depends_only_on_the_group_element(w in word(2, 4), n in 1usize..=2) {
        let e = evaluator(n, 2);
        prop_assert_eq!(e.eval_word(&w).unwrap(), e.eval_word(&w.reduce()).unwrap());
    }

    #[test]
    fn alternating_subset_sums_vanish(
        gamma in positive_word(2, 3),
        alphas in prop::collection::vec(positive_word(2, 2), 3),
    ) {
        let e = evaluator(2, 2);
        prop_assert!(loop_subset_check(e, &gamma, &alphas).unwrap().vanishes());
    }

    #[test]
    fn nu_vanishes_on_high_powers_of_the_augmentation_ideal(
        gamma in word(2, 3),
        alphas in prop::collection::vec(word(2, 2), 3),
    ) {
        let e = evaluator(2, 2);
        let mut combo = WordCombination::from_word(gamma);
        for a in &alphas {
            let step = WordCombination::from_terms([(a.clone(), 1), (Word::empty(), -1)]);
            combo = step.mul(&combo);
        }
        prop_assert!(e.eval(&combo).unwrap().is_zero());
    }

    #[test]
    fn powers_of_a_loop_differ_by_a_polynomial(m in 0usize..6, n in 1usize..=2) {
        let e = evaluator(n, 1);
        let x = Word::from_generators(&[1]).unwrap();
        let mut diff = WordCombination::zero();
        for j in 0..=n + 1 {
            let c = binomial(n + 1, j) * if (n + 1 - j) % 2 == 0 { 1 } else { -1 };
            diff.add_term(x.pow(m + j), c);
        }
        prop_assert!(e.eval(&diff).unwrap().is_zero());
    }

    #[test]
    fn positive_words_map_to_cycles(w in positive_word(2, 4)) {
        let e = evaluator(2, 2);
        let v = e.chain_of(&WordCombination::from_word(w)).unwrap();
        let d = e.complex().boundary(2).unwrap();
        let image = d.mul_vec(&v.iter().map(|&x| x.into()).collect::<Vec<_>>()).unwrap();
        prop_assert!(image.iter().all(|x| *x == 0.into()));
    }

    #[test]
    fn smith_form_contract(
        rows in 1usize..7,
        cols in 1usize..7,
        entries in prop::collection::vec(-20i64..=20, 36),
    ) {
        let data: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * 6..i * 6 + cols].to_vec()).collect();
        let a = IntMatrix::from_rows(&data).unwrap();
        let s = smith_normal_form(&a);
        prop_assert_eq!(check_smith_form(&a, &s), Ok(()));
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}
