use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::sample::subsequence;

use superchar::characters::{path_side, simple_character};
use superchar::diagrams::{build_diagram, cap_matching, classify, components, Symbol};
use superchar::lattice::{dominant_rearrangement, is_regular, rho, ShiftedWeight, WeylElement};
use superchar::paths::{enumerate_p_lambda, enumerate_paths, theta, trivial_path};
use superchar::pdc::{c_count, w_r_elements, AtypicalFrame};
use superchar::series::{f_w, weyl_denominator, weyl_denominator_inverse, CharacterSeries};
use superchar::{HalfInt, Shape};

fn weight(m: usize, n: usize, lo: i64, hi: i64) -> impl Strategy<Value = ShiftedWeight> {
    let pool: Vec<i64> = (lo..=hi).collect();
    (subsequence(pool.clone(), m), subsequence(pool, n)).prop_map(|(mut a, b)| {
        a.reverse();
        ShiftedWeight::from_ints(&a, &b).unwrap()
    })
}

/// Entries sorted into dominant order; lies above every W-image of ν.
fn sorted_top(nu: &ShiftedWeight) -> ShiftedWeight {
    let mut a = nu.a().to_vec();
    let mut b = nu.b().to_vec();
    a.sort_by(|x, y| y.cmp(x));
    b.sort();
    ShiftedWeight::new(a, b).unwrap()
}

fn any_weight() -> impl Strategy<Value = ShiftedWeight> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| weight(m, n, -3, 5))
}

/// Weights with many shared entries, so atypical ones are common.
fn atypical_weight() -> impl Strategy<Value = ShiftedWeight> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| weight(m, n, 0, 4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_display_round_trip(w in any_weight()) {
        prop_assert_eq!(w.to_string().parse::<ShiftedWeight>().unwrap(), w);
    }

    #[test]
    fn translation_moves_the_whole_picture(w in atypical_weight(), t in -4i64..4) {
        let shifted = w.shift_all(HalfInt::from_int(t));
        let d = build_diagram(&w).unwrap();
        let e = build_diagram(&shifted).unwrap();
        prop_assert_eq!(d.translate(t), e.clone());
        let caps: Vec<(i64, i64)> = cap_matching(&d).unwrap().caps.iter().map(|c| (c.0 + t, c.1 + t)).collect();
        prop_assert_eq!(caps, cap_matching(&e).unwrap().caps);
        prop_assert_eq!(classify(&d), classify(&e));
        prop_assert_eq!(components(&d).t, components(&e).t);
    }

    #[test]
    fn caps_are_a_non_crossing_matching(w in any_weight()) {
        let d = build_diagram(&w).unwrap();
        let caps = cap_matching(&d).unwrap();
        prop_assert_eq!(caps.caps.len(), d.atypicality());
        prop_assert!(caps.is_non_crossing());
        let ends: BTreeSet<i64> = caps.caps.iter().map(|c| c.1).collect();
        prop_assert_eq!(ends.len(), caps.caps.len());
        for &(v, e) in &caps.caps {
            prop_assert_eq!(d.symbol_at(v), Symbol::Vee);
            prop_assert_eq!(d.symbol_at(e), Symbol::Wedge);
            prop_assert!(v < e);
            // no free ∧ strictly under a cap
            for p in v + 1..e {
                if d.symbol_at(p) == Symbol::Wedge {
                    prop_assert!(ends.contains(&p));
                }
            }
        }
    }

    #[test]
    fn classes_match_cap_shapes(w in atypical_weight()) {
        let d = build_diagram(&w).unwrap();
        let caps = cap_matching(&d).unwrap();
        let f = classify(&d);
        prop_assert_eq!(f.totally_connected, caps.is_rainbow());
        prop_assert_eq!(f.totally_disconnected, caps.is_flat());
        prop_assert_eq!(f.pdc, caps.siblings_nested());
        if f.totally_connected || f.totally_disconnected {
            prop_assert!(f.pdc);
        }
        let dec = components(&d);
        prop_assert_eq!(dec.t.iter().sum::<usize>(), d.atypicality());
    }

    #[test]
    fn path_laws(w in atypical_weight()) {
        for mu in enumerate_p_lambda(&w, 6).unwrap() {
            let paths = enumerate_paths(&mu, &w).unwrap();
            prop_assert!(!paths.is_empty());
            let longest = trivial_path(&mu, &w).unwrap();
            prop_assert!(paths.contains(&longest));
            let sigmas: BTreeSet<_> = paths.iter().map(theta).collect();
            prop_assert_eq!(sigmas.len(), paths.len());
            for p in &paths {
                prop_assert_eq!(p.length() % 2, longest.length() % 2);
                prop_assert!(p.length() <= longest.length());
                prop_assert!(p.moves().windows(2).all(|x| x[0] <= x[1]));
                prop_assert_eq!(p.endpoint.to_diagram(), build_diagram(&w).unwrap());
            }
            if classify(&build_diagram(&w).unwrap()).totally_connected {
                prop_assert_eq!(paths.len(), 1);
            }
        }
    }

    #[test]
    fn rewrite_sum_with_w_r(w in atypical_weight()) {
        let frame = AtypicalFrame::new(&w).unwrap();
        prop_assume!(frame.pdc);
        for mu in enumerate_p_lambda(&w, 4).unwrap() {
            let nu = superchar::pdc::mu_bar(&w, &mu).unwrap();
            let (c, elements) = c_count(&w, &nu).unwrap();
            prop_assert_eq!(c, elements.len());
            // the dominant rearrangement sits above the whole orbit
            let (top, _) = dominant_rearrangement(&nu).unwrap();
            let mut lhs = CharacterSeries::zero(top.clone(), 40);
            for el in &elements {
                lhs.add_term(&el.apply(&nu).unwrap(), 1);
            }
            prop_assert_eq!(lhs.coefficient_sum(), c as i64);
            let rhs = CharacterSeries::monomial(&nu, 40).rebase(&top).unwrap().scale(c as i64);
            prop_assert_eq!(f_w(&lhs).differences(&f_w(&rhs)).unwrap(), vec![]);
        }
        prop_assert!(w_r_elements(&frame).iter().all(|x| x.sign() == 1));
    }

    #[test]
    fn f_w_kills_repeated_entries(w in any_weight(), i in 0usize..3, j in 0usize..3) {
        let shape = w.shape();
        let mut a: Vec<HalfInt> = w.a().to_vec();
        let mut b: Vec<HalfInt> = w.b().to_vec();
        if shape.m >= 2 {
            a[(i % shape.m + 1) % shape.m] = a[i % shape.m];
        } else if shape.n >= 2 {
            b[(j % shape.n + 1) % shape.n] = b[j % shape.n];
        } else {
            return Ok(());
        }
        let nu = ShiftedWeight::new(a, b).unwrap();
        prop_assert!(!is_regular(&nu));
        let top = sorted_top(&nu);
        let mut x = CharacterSeries::zero(top, 40);
        prop_assert!(x.add_term(&nu, 1));
        prop_assert!(f_w(&x).is_empty());
    }

    #[test]
    fn f_w_output_is_skew(w in any_weight()) {
        let x = CharacterSeries::monomial(&w, 6);
        let y = f_w(&x);
        for g in WeylElement::simple_reflections(w.shape()) {
            for (nu, &c) in y.terms() {
                let image = g.apply(nu).unwrap();
                if y.height_of(&image).is_some() {
                    prop_assert_eq!(y.coefficient(&image), -c);
                }
            }
        }
    }

    #[test]
    fn multiplication_is_commutative_and_associative(
        m in 1usize..=2, n in 1usize..=2, cut in 0u32..5,
        ks in proptest::collection::vec((0i64..3, 0i64..3, -2i64..3), 3)
    ) {
        let shape = Shape::new(m, n).unwrap();
        let build = |(k1, k2, c): (i64, i64, i64)| {
            let d = weyl_denominator(shape, cut);
            let mut s = CharacterSeries::monomial(&rho(shape).scale(k1), cut).multiply(&d).unwrap().scale(c);
            s.add_term(&rho(shape).scale(k1), k2);
            s
        };
        let (x, y, z) = (build(ks[0]), build(ks[1]), build(ks[2]));
        prop_assert_eq!(x.multiply(&y).unwrap(), y.multiply(&x).unwrap());
        prop_assert_eq!(
            x.multiply(&y).unwrap().multiply(&z).unwrap(),
            x.multiply(&y.multiply(&z).unwrap()).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn denominator_inverse_is_inverse(m in 1usize..=3, n in 1usize..=3, cut in 0u32..=8) {
        let shape = Shape::new(m, n).unwrap();
        let p = weyl_denominator(shape, cut).multiply(&weyl_denominator_inverse(shape, cut)).unwrap();
        prop_assert_eq!(p, CharacterSeries::one(shape, cut));
    }

    #[test]
    fn path_side_is_skew(w in atypical_weight()) {
        let s = path_side(&w, 6).unwrap();
        for g in WeylElement::simple_reflections(w.shape()) {
            for (nu, &c) in s.terms() {
                let image = g.apply(nu).unwrap();
                if s.height_of(&image).is_some() {
                    prop_assert_eq!(s.coefficient(&image), -c);
                }
            }
        }
    }

    #[test]
    fn simple_characters_are_invariant_and_positive(w in (1usize..=2, 1usize..=2).prop_flat_map(|(m, n)| weight(m, n, 0, 3))) {
        let ch = simple_character(&w, 6).unwrap();
        prop_assert!(ch.is_w_invariant());
        prop_assert!(ch.is_nonnegative());
        let lambda = w.checked_sub(&rho(w.shape())).unwrap();
        prop_assert_eq!(ch.series.coefficient(&lambda), 1);
    }
}

#[test]
fn tdc_targets_reach_r_factorial_paths() {
    // the r! targets lie far below λ^ρ once the ∨'s are spread out
    for (s, height) in [("3,1|1,3", 12), ("5,3,1|1,3,5", 60), ("7,4,1|1,4,7", 60), ("6,3|0,3,6", 60)] {
        let lambda: ShiftedWeight = s.parse().unwrap();
        let d = build_diagram(&lambda).unwrap();
        assert!(classify(&d).totally_disconnected);
        let r = d.atypicality();
        let best = enumerate_p_lambda(&lambda, height)
            .unwrap()
            .iter()
            .map(|mu| enumerate_paths(mu, &lambda).unwrap().len())
            .max()
            .unwrap();
        assert_eq!(best, (1..=r).product::<usize>(), "{s}");
    }
}
