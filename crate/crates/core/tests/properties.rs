use std::collections::BTreeSet;

use morphalg_core::grading::{is_rotation_primitive, longest_ap, weight_sums};
use morphalg_core::interleave::{
    graded_nilpotent_base, locate_pattern, DifferenceOrder, InterleaveSpec, UniversalSequence,
};
use morphalg_core::monalg::{freeness_check, int, AlgebraView, NcPolynomial};
use morphalg_core::rowen::{coefficient, evaluate_word, thue_morse_bit, thue_morse_stream};
use morphalg_core::words::{
    factors, incidence_matrix, parikh, weight, Alphabet, Letter, Morphism, PrefixStream, Word,
};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn xy_yyx() -> Morphism {
    Morphism::from_strs("xy", &["xy", "yyx"]).unwrap()
}

fn xy_yyx_view() -> AlgebraView {
    AlgebraView::factors_of(&mut PrefixStream::morphic(xy_yyx(), 0).unwrap(), 50_000).unwrap()
}

fn word_over(d: u8, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..d, 0..=max_len)
}

fn morphism_strategy() -> impl Strategy<Value = Morphism> {
    (2u8..=4).prop_flat_map(|d| {
        prop::collection::vec(word_over(d, 4), d as usize).prop_map(move |images| {
            let letters: String = "abcd".chars().take(d as usize).collect();
            Morphism::new(Alphabet::from_chars(&letters).unwrap(), images).unwrap()
        })
    })
}

/// Morphisms prolongable on letter 0 with no erasing images.
fn prolongable_strategy() -> impl Strategy<Value = Morphism> {
    (2u8..=3).prop_flat_map(|d| {
        let first = prop::collection::vec(0..d, 1..=3).prop_map(|mut t| {
            t.insert(0, 0);
            t
        });
        let rest = prop::collection::vec(prop::collection::vec(0..d, 1..=3), d as usize - 1);
        (first, rest).prop_map(move |(f, r)| {
            let letters: String = "abc".chars().take(d as usize).collect();
            let mut images = vec![f];
            images.extend(r);
            Morphism::new(Alphabet::from_chars(&letters).unwrap(), images).unwrap()
        })
    })
}

fn poly_strategy(d: u8) -> impl Strategy<Value = NcPolynomial> {
    prop::collection::vec((word_over(d, 3), -3i64..=3), 0..=5)
        .prop_map(|terms| NcPolynomial::from_terms(terms.into_iter().map(|(w, c)| (w, int(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parikh_follows_incidence(m in morphism_strategy(), seed in word_over(4, 6), n in 0u32..4) {
        let d = m.alphabet().len();
        let u: Word = seed.into_iter().map(|l| l % d as Letter).collect();
        let lhs: Vec<i64> = parikh(&m.iterate(&u, n as usize), d).into_iter().map(|x| x as i64).collect();
        let theta: Vec<i64> = parikh(&u, d).into_iter().map(|x| x as i64).collect();
        prop_assert_eq!(lhs, incidence_matrix(&m).pow(n).mul_vec(&theta));
    }

    #[test]
    fn prefixes_are_stable(m in prolongable_strategy(), n in 0usize..300, extra in 0usize..300) {
        let mut long = PrefixStream::morphic(m.clone(), 0).unwrap();
        let w = long.take(n + extra).unwrap();
        let mut short = PrefixStream::morphic(m, 0).unwrap();
        prop_assert_eq!(short.prefix(n).unwrap(), &w[..n]);
    }

    #[test]
    fn factor_sets_are_subword_closed(m in prolongable_strategy()) {
        let mut s = PrefixStream::morphic(m, 0).unwrap();
        let f = factors(&mut s, 6, 500).unwrap();
        for v in &f.factors {
            for i in 0..v.len() {
                for j in i..=v.len() {
                    prop_assert!(f.contains(&v[i..j]));
                }
            }
        }
    }

    #[test]
    fn weight_is_additive(u in word_over(3, 20), v in word_over(3, 20), p in prop::collection::vec(1u64..10, 3)) {
        let mut uv = u.clone();
        uv.extend(&v);
        prop_assert_eq!(weight(&uv, &p), weight(&u, &p) + weight(&v, &p));
    }

    #[test]
    fn longest_ap_matches_brute_force(
        raw in prop::collection::btree_set(0u64..2000, 0..500),
        d in 1u64..12,
    ) {
        let set: Vec<u64> = raw.iter().copied().collect();
        let brute = set
            .iter()
            .map(|&t| (0..).take_while(|k| raw.contains(&(t + k * d))).count())
            .max()
            .unwrap_or(0);
        prop_assert_eq!(longest_ap(&set, d), brute);
    }

    #[test]
    fn rotation_primitivity_matches_brute_force(tuple in prop::collection::vec(1u64..=3, 1..=8)) {
        let q = tuple.len();
        let rotations: BTreeSet<Vec<u64>> = (0..q)
            .map(|m| tuple[m..].iter().chain(&tuple[..m]).copied().collect())
            .collect();
        prop_assert_eq!(is_rotation_primitive(&tuple), rotations.len() == q);
    }

    #[test]
    fn reduce_is_idempotent_and_linear(p in poly_strategy(2), q in poly_strategy(2), c in -4i64..=4) {
        for view in [AlgebraView::cube_free(Alphabet::from_chars("xy").unwrap()), xy_yyx_view()] {
            let r = view.reduce(&p);
            let rr = view.reduce(&r);
            prop_assert!(rr.terms().eq(r.terms()));
            let lhs = view.reduce(&p.add(&q.scale(&int(c))));
            let rhs = view.reduce(&p).add(&view.reduce(&q).scale(&int(c)));
            prop_assert!(lhs.terms().eq(rhs.terms()));
        }
    }

    #[test]
    fn multiply_is_associative(p in poly_strategy(2), q in poly_strategy(2), r in poly_strategy(2)) {
        let view = AlgebraView::cube_free(Alphabet::from_chars("xy").unwrap());
        let (p, q, r) = (view.reduce(&p), view.reduce(&q), view.reduce(&r));
        let left = view.multiply(&view.multiply(&p, &q), &r);
        let right = view.multiply(&p, &view.multiply(&q, &r));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn freeness_is_monotone(
        gens in prop::collection::vec(prop::collection::vec(word_over(2, 2).prop_filter("nonempty", |w| !w.is_empty()), 1..=3), 1..=2),
        l in 1usize..=3,
    ) {
        let view = AlgebraView::cube_free(Alphabet::from_chars("xy").unwrap());
        let gens: Vec<NcPolynomial> = gens
            .iter()
            .map(|ws| NcPolynomial::from_words(&ws.iter().map(Vec::as_slice).collect::<Vec<_>>()))
            .collect();
        let short = freeness_check(&view, &gens, l).unwrap();
        let long = freeness_check(&view, &gens, l + 1).unwrap();
        prop_assert!(short.independent() || !long.independent());
    }

    #[test]
    fn evaluate_word_is_multiplicative(u in word_over(2, 6), v in word_over(2, 6)) {
        let mut uv = u.clone();
        uv.extend(&v);
        let n = 160;
        let product = evaluate_word(&u, n, 64).unwrap().checked_mul(&evaluate_word(&v, n, 64).unwrap()).unwrap();
        prop_assert_eq!(evaluate_word(&uv, n, 64).unwrap(), product);
    }
}

#[test]
fn monomial_ideal_closure() {
    let views = [
        AlgebraView::cube_free(Alphabet::from_chars("xy").unwrap()),
        xy_yyx_view(),
    ];
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for view in &views {
        let mut checked = 0;
        while checked < 200 {
            let (u, m, v) = (word_over(2, 4), word_over(2, 8), word_over(2, 4))
                .new_tree(&mut runner)
                .unwrap()
                .current();
            if !view.is_zero_monomial(&m) {
                continue;
            }
            let mut umv = u.clone();
            umv.extend(&m);
            umv.extend(&v);
            assert!(view.is_zero_monomial(&umv), "{u:?} {m:?} {v:?}");
            checked += 1;
        }
    }
}

fn compositions_up_to(sum: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        for a in 1..=rest {
            prefix.push(a);
            go(rest - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(sum, &mut Vec::new(), &mut out);
    out
}

#[test]
fn every_small_sequence_is_located() {
    let all = compositions_up_to(8);
    assert_eq!(all.len(), 255);
    let mut seq = UniversalSequence::new(DifferenceOrder::Canonical);
    for a in &all {
        let m = locate_pattern(&mut seq, a).expect("located");
        seq.ensure_differences(m + a.len());
        let diffs = seq.differences().to_vec();
        assert_eq!(&diffs[m..m + a.len()], a.as_slice());
        let first = diffs
            .windows(a.len())
            .position(|w| w == a.as_slice())
            .unwrap();
        assert_eq!(m, first, "{a:?}");
    }
}

#[test]
fn universal_sequence_is_reproducible() {
    let mut a = UniversalSequence::new(DifferenceOrder::Canonical);
    let mut b = UniversalSequence::new(DifferenceOrder::Canonical);
    a.ensure_differences(5000);
    b.ensure_differences(100);
    b.ensure_differences(5000);
    assert_eq!(a.positions()[..5001], b.positions()[..5001]);
}

/// Alternating patterns `X^{i₁}Y^{j₁}⋯` with positive exponents.
fn alternating_patterns(max_total: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, next: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !prefix.is_empty() && next == 0 {
            out.push(prefix.clone());
        }
        for e in 1..=rest {
            let before = prefix.len();
            prefix.extend(std::iter::repeat_n(next, e));
            go(rest - e, 1 - next, prefix, out);
            prefix.truncate(before);
        }
    }
    let mut out = Vec::new();
    go(max_total, 0, &mut Vec::new(), &mut out);
    out
}

#[test]
fn alternating_patterns_survive_in_interleaved_word() {
    let (m, b) = graded_nilpotent_base();
    let base = PrefixStream::morphic(m, b).unwrap();
    let mut tilde = InterleaveSpec::new(base, DifferenceOrder::Canonical).into_stream();
    let view = AlgebraView::factors_of(&mut tilde, 1_000_000).unwrap();
    let gens = [
        NcPolynomial::from_words(&[&[0], &[1]]),
        NcPolynomial::from_words(&[&[2], &[3]]),
    ];
    let patterns = alternating_patterns(10);
    assert!(patterns.len() > 200);
    for p in &patterns {
        assert!(!view.substitute(p, &gens).unwrap().is_zero(), "{p:?}");
    }
}

#[test]
fn coefficient_matches_matrix_entry() {
    let n = 200;
    for len in 1..=8usize {
        for bits in 0..1u32 << len {
            let v: Word = (0..len).map(|j| ((bits >> j) & 1) as Letter).collect();
            let op = evaluate_word(&v, n, 64).unwrap();
            for t in 1..=100 {
                assert_eq!(
                    op.entry(t, t + len),
                    coefficient(&v, t) as i64,
                    "{v:?} t={t}"
                );
            }
        }
    }
}

#[test]
fn thue_morse_definitions_agree() {
    let w = thue_morse_stream().take(100_000).unwrap();
    for (i, &l) in w.iter().enumerate() {
        assert_eq!(thue_morse_bit(i + 1), l, "position {}", i + 1);
    }
}

#[test]
fn progressions_match_factor_products() {
    // A product of L monomials of degree D is a nonzero monomial of A_w
    // iff the weight-sum set holds t, t + D, …, t + L·D.
    let p = [1u64, 2];
    let w = PrefixStream::morphic(xy_yyx(), 0)
        .unwrap()
        .take(3000)
        .unwrap();
    let sums = weight_sums(&w, &p);
    for d in 1..=6u64 {
        for l in 1..=6usize {
            let by_ap = longest_ap(sums.sums(), d) > l;
            let by_factor = (0..w.len()).any(|i| {
                let mut acc = 0;
                let mut hits = 0;
                for &c in &w[i..] {
                    acc += p[c as usize];
                    if acc % d == 0 && acc / d == hits as u64 + 1 {
                        hits += 1;
                        if hits == l {
                            return true;
                        }
                    } else if acc > d * (hits as u64 + 1) {
                        return false;
                    }
                }
                false
            });
            assert_eq!(by_ap, by_factor, "D={d} L={l}");
        }
    }
}
