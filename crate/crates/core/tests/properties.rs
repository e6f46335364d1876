use std::sync::Arc;

use dwyerkit::fincat::{opposite, parse_category, print_category, FinCategory, FunctorSearch};
use dwyerkit::fixtures;
use dwyerkit::homology::{chains, homology, smith_normal_form, HomologyGroup};
use dwyerkit::pushout::{dwyer_pushout, verify_pushout_dwyer_closure};
use dwyerkit::random::{random_category, random_functor, random_span, rng};
use dwyerkit::sset::{nerve, nerve_of_functor, parse_sset, print_sset};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn category(seed: u64, max: usize) -> FinCategory {
    random_category(&mut rng(seed), max)
}

fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
            let t = BigInt::from(m[0][j]) * det(&minor);
            if j % 2 == 0 { t } else { -t }
        })
        .sum()
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-9i64..=9, cols), rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn snf_factors_divide_in_sequence(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c))) {
        let f = smith_normal_form(&m).factors;
        prop_assert!(f.len() <= m.len().min(m[0].len()));
        for w in f.windows(2) {
            prop_assert!(w[0].is_positive() && (&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn snf_product_is_abs_det(m in (1usize..5).prop_flat_map(|n| matrix(n, n))) {
        let f = smith_normal_form(&m).factors;
        let d = det(&m).abs();
        if d.is_zero() {
            prop_assert!(f.len() < m.len());
        } else {
            prop_assert_eq!(f.len(), m.len());
            prop_assert_eq!(f.iter().product::<BigInt>(), d);
        }
    }

    #[test]
    fn random_categories_are_valid(seed in any::<u64>()) {
        let c = category(seed, 6);
        prop_assert!(c.is_valid());
        prop_assert!(c.num_objects() >= 1 && c.num_objects() <= 6);
    }

    #[test]
    fn category_text_round_trips(seed in any::<u64>()) {
        let c = category(seed, 5);
        let text = print_category(&c);
        let back = parse_category(&text).unwrap();
        prop_assert_eq!(print_category(&back), text);
        let unique = c.obj_labels().iter().collect::<std::collections::HashSet<_>>().len() == c.num_objects();
        if unique {
            prop_assert_eq!(back, c);
        }
    }

    #[test]
    fn sset_text_round_trips(seed in any::<u64>()) {
        let c = category(seed, 3);
        let x = nerve(&c, 2).unwrap().sset;
        let text = print_sset(&x);
        let back = parse_sset(&text).unwrap();
        prop_assert_eq!(print_sset(&back), text);
        prop_assert_eq!(back.counts(), x.counts());
        for k in 1..=2 {
            for y in 0..x.count(k) {
                prop_assert_eq!(back.face_tuple(k, y), x.face_tuple(k, y));
            }
        }
    }

    #[test]
    fn nerve_counts_functors_from_ordinals(seed in any::<u64>()) {
        let c = category(seed, 4);
        let n = nerve(&c, 3).unwrap();
        for k in 0..=3 {
            let functors = FunctorSearch::new(&fixtures::ordinal(k), &c).count(usize::MAX);
            prop_assert_eq!(n.sset.count(k), functors);
        }
    }

    #[test]
    fn nerve_of_functor_is_mono_iff_faithful_embedding(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = Arc::new(random_category(&mut r, 3));
        let c = Arc::new(random_category(&mut r, 5));
        if let Some(f) = random_functor(&mut r, &a, &c, false) {
            let (_, _, map) = nerve_of_functor(&f, 2).unwrap();
            prop_assert_eq!(map.is_injective(), f.is_faithful() && f.is_injective_on_objects());
        }
    }

    #[test]
    fn boundary_squares_to_zero(seed in any::<u64>()) {
        let c = category(seed, 5);
        prop_assert!(chains(&nerve(&c, 3).unwrap().sset).check_dd().is_ok());
    }

    #[test]
    fn terminal_object_makes_nerve_acyclic(seed in any::<u64>()) {
        let c = category(seed, 5);
        prop_assume!(c.terminal_object().is_some());
        let h = homology(&nerve(&c, 3).unwrap().sset, 2).unwrap();
        prop_assert_eq!(h.groups, vec![HomologyGroup::free(1), HomologyGroup::free(0), HomologyGroup::free(0)]);
    }

    #[test]
    fn opposite_has_the_same_homology(seed in any::<u64>()) {
        let c = category(seed, 5);
        let h = homology(&nerve(&c, 3).unwrap().sset, 2).unwrap();
        let hop = homology(&nerve(&opposite(&c), 3).unwrap().sset, 2).unwrap();
        prop_assert_eq!(h.groups, hop.groups);
    }

    #[test]
    fn dwyer_pushouts_commute_and_stay_dwyer(seed in 0u64..10_000) {
        let s = random_span(seed, 6, false);
        let p = dwyer_pushout(&s.witness, &s.f).unwrap();
        prop_assert!(p.d.is_valid() && p.g.is_functor() && p.j.is_functor());
        let i = &s.witness.inclusion;
        prop_assert_eq!(i.then(&p.g).mor_map, s.f.then(&p.j).mor_map);
        prop_assert!(verify_pushout_dwyer_closure(&s.witness, &s.f).is_ok());
    }
}
