mod common;

use std::collections::{BTreeSet, HashSet};

use hecke::enumeration::word_length_cap;
use hecke::{
    cross_check_cycles, enumerate_reduced, enumerate_reduced_with, EnumerationOptions, HeckeGroup, ProjForm, Token,
    word_multiply,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn form_set(forms: &[hecke::EnumeratedForm]) -> BTreeSet<String> {
    forms.iter().map(|f| f.form.to_string()).collect()
}

#[test]
fn matches_unpruned_search() {
    for q in 3..=5 {
        let g = HeckeGroup::new(q).unwrap();
        for dmax in [int(5), int(12), BigRational::new(BigInt::from(29), BigInt::from(2))] {
            let report = enumerate_reduced(&dmax, &g);
            let n0 = word_length_cap(dmax.to_f64().unwrap(), q);
            assert_eq!(report.word_length_cap, n0);
            let oracle = common::brute_force_reduced(&g, &dmax, n0);
            assert_eq!(form_set(&report.forms), oracle, "q = {q}, dmax = {dmax}");
        }
    }
}

#[test]
fn emitted_words_reproduce_forms() {
    for q in 3..=7 {
        let g = HeckeGroup::new(q).unwrap();
        let report = enumerate_reduced(&int(20), &g);
        assert!(!report.forms.is_empty());
        for f in &report.forms {
            assert!(f.form.is_reduced());
            assert_eq!(f.form.discriminant(), f.discriminant);
            let word: Vec<Token> = f.word.iter().map(|&k| Token::GInv(k)).collect();
            assert_eq!(word_multiply(&word, &g).unwrap(), f.form.psi2().unwrap(), "{}", f.form);
        }
        assert!(cross_check_cycles(&report, &g).unwrap());
    }
}

#[test]
fn larger_bounds_only_add_forms() {
    for q in [3, 4, 6] {
        let g = HeckeGroup::new(q).unwrap();
        let mut previous = BTreeSet::new();
        for dmax in [1, 5, 8, 12, 20, 30] {
            let current = form_set(&enumerate_reduced(&int(dmax), &g).forms);
            assert!(previous.is_subset(&current), "q = {q}, dmax = {dmax}");
            previous = current;
        }
    }
}

#[test]
fn longer_words_add_nothing() {
    for q in 3..=8 {
        let g = HeckeGroup::new(q).unwrap();
        let report = enumerate_reduced(&int(30), &g);
        let options = EnumerationOptions { cap: Some(report.word_length_cap + 5), threads: 2 };
        let longer = enumerate_reduced_with(&int(30), &g, options);
        assert_eq!(longer.forms, report.forms, "q = {q}");
    }
}

#[test]
fn output_is_sorted_and_thread_independent() {
    let g = HeckeGroup::new(7).unwrap();
    let one = enumerate_reduced(&int(25), &g);
    for threads in [2, 3, 8] {
        let many = enumerate_reduced_with(&int(25), &g, EnumerationOptions { cap: None, threads });
        assert_eq!(many, one);
    }
    let keys: Vec<(usize, &Vec<u32>)> = one.forms.iter().map(|f| (f.word.len(), &f.word)).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    let distinct: HashSet<&ProjForm> = one.forms.iter().map(|f| &f.form).collect();
    assert_eq!(distinct.len(), one.forms.len());
}
