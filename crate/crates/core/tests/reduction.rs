mod common;

use std::collections::HashSet;

use hecke::{reduce, reduced_cycle_rotation_check, HeckeGroup, ProjForm, ProjMatrix};
use proptest::prelude::*;

fn is_rotation<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && (0..a.len()).any(|r| (0..a.len()).all(|i| a[(i + r) % a.len()] == b[i]))
}

fn random_form(seed: u64, max_len: usize) -> (HeckeGroup, ProjMatrix, ProjForm) {
    let mut rng = common::rng(seed);
    let g = common::random_group(&mut rng, 3..=12);
    let h = common::random_hyperbolic(&mut rng, &g, max_len);
    let f = ProjForm::psi2_inv(&h).unwrap();
    (g, h, f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn output_is_consistent(seed in any::<u64>()) {
        let (g, h, f) = random_form(seed, 14);
        let r = reduce(&f, &g).unwrap();
        prop_assert_eq!(&r.hyperbolic_element, &h);
        prop_assert_eq!(&r.preperiod[0], &f);

        let (last, early) = r.preperiod.split_last().unwrap();
        prop_assert!(last.is_reduced());
        for x in early.iter().skip(1) {
            prop_assert!(!x.is_reduced(), "{} reduced before the end of the preperiod", x);
        }
        prop_assert_eq!(&f.act(&r.conjugator.inverse()).unwrap(), last);

        prop_assert_eq!(r.period.len(), r.period_word.len());
        prop_assert_eq!(r.period.last().unwrap(), last);
        let distinct: HashSet<&ProjForm> = r.period.iter().collect();
        prop_assert_eq!(distinct.len(), r.period.len());
        let mut current = last.clone();
        for (x, &k) in r.period.iter().zip(&r.period_word) {
            prop_assert!(x.is_reduced());
            current = current.act(g.g(k)).unwrap();
            prop_assert_eq!(&current, x);
        }

        let primitive = r.period_word.iter().fold(g.identity(), |acc, &k| acc.compose(g.g_inv(k)));
        prop_assert_eq!(&primitive, &r.primitive);
        prop_assert_eq!(primitive.pow(r.level as i64).conjugate_by(&r.conjugator), h);
    }

    #[test]
    fn period_is_a_class_invariant(seed in any::<u64>()) {
        let (g, _, f) = random_form(seed, 12);
        let mut rng = common::rng(seed ^ 0x5eed);
        let x = common::random_element(&mut rng, &g, 12);
        let a = reduce(&f, &g).unwrap();
        let b = reduce(&f.act(&x).unwrap(), &g).unwrap();
        prop_assert!(is_rotation(&a.period, &b.period));
        prop_assert_eq!(a.level, b.level);
    }

    #[test]
    fn cycle_rotation_holds(seed in any::<u64>()) {
        let (g, _, f) = random_form(seed, 12);
        prop_assert!(reduced_cycle_rotation_check(&f, &g).unwrap());
    }

    #[test]
    fn level_of_powers(seed in any::<u64>(), n in 1u64..=4) {
        let (g, h, f) = random_form(seed, 10);
        let base = reduce(&f, &g).unwrap();
        let power = h.pow(n as i64);
        let r = reduce(&ProjForm::psi2_inv(&power).unwrap(), &g).unwrap();
        prop_assert_eq!(r.level, base.level * n);
        let zeros = |p: &[ProjForm]| p.iter().map(ProjForm::zeros).collect::<Vec<_>>();
        prop_assert!(is_rotation(&zeros(&r.period), &zeros(&base.period)));
        prop_assert_eq!(&r.period_word, &base.period_word);
        prop_assert_eq!(r.primitive.pow(r.level as i64).conjugate_by(&r.conjugator), power);
    }
}
