use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use parastacks_core::analysis::{self, SeriesId};
use parastacks_core::arches::{self, ArchSystem};
use parastacks_core::machine::{self, OpWord, Permutation};
use parastacks_core::{equations, walks, LatticeWalk, Step, TruncatedSeries, Var};
use proptest::prelude::*;

fn s_and_sprim(n: usize) -> (TruncatedSeries<BigInt>, TruncatedSeries<BigInt>) {
    let (sp, s) = equations::solve_sprim_via_q(&walks::quarter_loop_series(n), n).unwrap();
    (s.series, sp.series)
}

/// A valid word of size `n` built by picking among the allowed letters.
fn valid_word(max: usize) -> impl Strategy<Value = OpWord> {
    (0..=max, prop::collection::vec(any::<u8>(), 2 * max)).prop_map(|(n, picks)| {
        let (mut ins, mut open) = (0, [0usize; 2]);
        let mut steps = Vec::new();
        for &pick in picks.iter().take(2 * n) {
            let allowed: Vec<Step> = Step::ALL
                .into_iter()
                .filter(|s| {
                    let k = (s.stack() - 1) as usize;
                    if s.is_input() {
                        ins < n
                    } else {
                        open[k] > 0
                    }
                })
                .collect();
            let s = allowed[pick as usize % allowed.len()];
            let k = (s.stack() - 1) as usize;
            if s.is_input() {
                ins += 1;
                open[k] += 1;
            } else {
                open[k] -= 1;
            }
            steps.push(s);
        }
        OpWord::new(steps)
    })
}

#[test]
fn s_is_supermultiplicative() {
    let (s, _) = s_and_sprim(30);
    for m in 1..=15 {
        for n in 1..=30 - m {
            assert!(s.coeff(m + n) >= &(s.coeff(m) * s.coeff(n)), "m={m} n={n}");
        }
    }
}

#[test]
fn s_is_one_over_one_minus_sprim() {
    let (s, sp) = s_and_sprim(25);
    let one = TruncatedSeries::one(Var::T, 25);
    assert_eq!((&one - &sp).inverse().unwrap(), s);
}

#[test]
fn counting_series_are_nonnegative_integers() {
    let n = 14;
    let q = walks::quarter_loop_series(n);
    let c = equations::solve_c(&q, n).unwrap();
    let st = equations::solve_s_tilde(&c, n).unwrap();
    let (s, sp) = s_and_sprim(n);
    for k in 0..=n {
        assert!(c.series.coeff(k).min_coeff() >= BigInt::from(0));
        assert!(c.series.coeff(k).degree().is_none_or(|d| d < k.max(1)));
        for x in [&s, &sp, &st.series] {
            assert!(x.coeff(k) >= &BigInt::from(0));
        }
    }
}

#[test]
fn stilde_matches_standard_words() {
    let c = equations::solve_c(&walks::quarter_loop_series(6), 6).unwrap();
    let st = equations::solve_s_tilde(&c, 6).unwrap().series;
    for n in 0..=6 {
        assert_eq!(st.coeff(n), &BigInt::from(arches::count_standard_words(n)), "n={n}");
    }
}

#[test]
fn connected_systems_are_primitive() {
    for n in 1..=6 {
        machine::for_each_valid_word(n, |steps| {
            let w = OpWord::new(steps.to_vec());
            let x = ArchSystem::from_opword(&w).unwrap();
            if x.components().len() == 1 {
                assert_eq!(arches::primitive_factorization(&w).unwrap().len(), 1, "{w}");
            }
        });
    }
}

#[test]
fn canonicalize_preserves_output_exhaustively() {
    for n in 0..=6 {
        machine::for_each_valid_word(n, |steps| {
            let w = OpWord::new(steps.to_vec());
            let c = arches::canonicalize(&w).unwrap();
            assert_eq!(machine::execute(&c).unwrap(), machine::execute(&w).unwrap(), "{w}");
        });
    }
}

#[test]
fn canonical_counts_equal_achievable_counts() {
    for n in 0..=6 {
        assert_eq!(arches::count_canonical_words(n), machine::enumerate_achievable(n, 6).unwrap());
    }
}

type Corners = Vec<(usize, usize)>;

#[test]
fn involution_equidistribution_in_shuffle_classes() {
    // all words of length <= 8, grouped by both projections
    for len in 0..=8u32 {
        let mut classes: BTreeMap<(Vec<Step>, Vec<Step>), (Corners, Corners)> = BTreeMap::new();
        for code in 0..4u64.pow(len) {
            let steps: Vec<Step> = (0..len).map(|i| Step::ALL[(code >> (2 * i) & 3) as usize]).collect();
            let w = LatticeWalk::from(OpWord::new(steps));
            let es = w.count_factor(Step::E, Step::S);
            let entry = classes.entry(w.projections()).or_default();
            entry.0.push((w.count_factor(Step::N, Step::W), es));
            entry.1.push((w.count_factor(Step::W, Step::N), es));
        }
        for (_, (mut nw, mut wn)) in classes {
            nw.sort();
            wn.sort();
            assert_eq!(nw, wn);
        }
    }
}

#[test]
fn radius_estimates_respect_the_lower_bound() {
    let grid: Vec<BigRational> = [0, 1, 2, 4].iter().map(|&k| BigRational::new(k.into(), 2.into())).collect();
    for r in analysis::radius_scan(&grid, &[100]).unwrap() {
        assert!(r.ratio >= 0.95 * r.conjectured_radius, "a={} ratio={}", r.a, r.ratio);
    }
    // ratio at a = 1 within 5% of 1/16
    let at1 = analysis::radius_scan(&[BigRational::from_integer(1.into())], &[100]).unwrap();
    assert!((at1[0].ratio - 1.0 / 16.0).abs() <= 0.05 / 16.0);
}

#[test]
fn ratio_estimates_decrease_in_a() {
    let grid: Vec<BigRational> = (0..=8).map(|k| BigRational::new(k.into(), 4.into())).collect();
    let rows = analysis::radius_scan(&grid, &[60]).unwrap();
    assert!(rows.windows(2).all(|w| w[0].ratio >= w[1].ratio));
}

#[test]
fn tc_brackets_are_nested() {
    let b40 = analysis::tc_bracket(40, 1e-5).unwrap();
    let b70 = analysis::tc_bracket(70, 1e-5).unwrap();
    assert!(b40.a_low <= b70.a_low && b70.a_high <= b40.a_high);
    assert!(b70.a_high - b70.a_low < b40.a_high - b40.a_low);
}

#[test]
fn growth_bounds_are_ordered_at_forty() {
    let (s, sp) = s_and_sprim(40);
    let g = analysis::growth_bounds(&s, &sp, 40).unwrap();
    assert!(g.nth_roots_increasing);
    assert!(g.nth_roots[39] <= g.truncation_bound && g.truncation_bound <= 8.29);
    assert!((analysis::standard_growth_constant() - 13.3).abs() < 0.05);
}

#[test]
fn prop4_normalized_ratios_tend_to_one() {
    let r = analysis::prop4_asymptotics_check(60).unwrap();
    let last = |v: &[f64]| (v[59] / v[58] - 1.0).abs();
    assert!(last(&r.normalized_at_1) < 0.01 && last(&r.normalized_at_minus1) < 0.01);
}

#[test]
fn p1_holds_for_bilateral_paths_to_four() {
    let r = analysis::p1_check(4, 4).unwrap();
    assert!(r.failures.is_empty(), "{:?}", r.failures);
}

#[test]
fn p2_holds_for_dyck_projections_to_four() {
    let words = analysis::p2_default_words(4);
    assert_eq!(words.len(), 1 + 2 + 5 + 14);
    for r in analysis::p2_check(&words, 8).unwrap() {
        assert!(r.passes(), "{}", r.series);
    }
}

#[test]
fn positivity_reports_are_recomputable() {
    let r = analysis::positivity_check(&SeriesId::Q, 12).unwrap();
    let q = walks::quarter_loop_series(12);
    for (k, m) in r.min_coeffs.iter().enumerate() {
        assert_eq!(m, &walks::to_a_plus_one(q.coeff(k)).min_coeff());
    }
    assert!(r.passes());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn execute_outputs_a_permutation(w in valid_word(12)) {
        let p = machine::execute(&w).unwrap();
        let mut e = p.entries().to_vec();
        e.sort();
        prop_assert_eq!(e, (1..=w.len() / 2).collect::<Vec<_>>());
    }

    #[test]
    fn canonical_words_are_eager_and_standard(w in valid_word(12)) {
        let p = machine::execute(&w).unwrap();
        let c = machine::canonical_sequence(&p).unwrap();
        prop_assert_eq!(machine::execute(&c).unwrap(), p);
        prop_assert!(c.outputs_eagerly());
        prop_assert!(ArchSystem::from_opword(&c).unwrap().is_standard());
    }

    #[test]
    fn patterns_of_achievable_permutations_are_achievable(
        w in valid_word(8),
        mask in any::<u8>(),
    ) {
        let p = machine::execute(&w).unwrap();
        let positions: Vec<usize> = (0..p.len()).filter(|i| mask >> i & 1 == 1).collect();
        let sub: Permutation = p.pattern_at(&positions);
        prop_assert!(machine::is_achievable(&sub));
    }

    #[test]
    fn crossing_graph_is_bipartite_by_colour(w in valid_word(12)) {
        let x = ArchSystem::from_opword(&w).unwrap();
        let g = x.crossing_graph();
        for (i, nbrs) in g.adj.iter().enumerate() {
            for &j in nbrs {
                prop_assert!(x.arches()[i].colour != x.arches()[j].colour);
            }
        }
    }

    #[test]
    fn radius_branches_meet_and_decrease(a in -1.0f64..3.0, h in 1e-6f64..1e-3) {
        let f = |x: f64| analysis::conjectured_radius(x).unwrap();
        prop_assert!(f(a + h) <= f(a) + 1e-12);
        prop_assert!((f(-0.5 - h) - f(-0.5 + h)).abs() < 10.0 * h);
    }

    #[test]
    fn loop_coefficients_are_a_plus_one_positive(n in 0usize..18) {
        let q = walks::quarter_loop_series(n);
        let p = walks::to_a_plus_one(q.coeff(n));
        prop_assert!(p.min_coeff() >= BigInt::from(0));
        prop_assert!(q.coeff(n).degree().is_none_or(|d| d < n.max(1)));
    }
}
