#![allow(dead_code)]

pub mod checks;

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use std::collections::BTreeMap;
use tate_core::multigraded::{Multidegree, RingSpec};
use tate_core::smodule::{line_bundle_sum, monomial_quotient, SPresentation};

/// Random test input together with a short description for failure output.
#[derive(Clone, Debug)]
pub struct Input {
    pub label: String,
    pub module: SPresentation,
}

pub fn spec_strategy() -> impl Strategy<Value = RingSpec> {
    prop_oneof![Just(RingSpec::product(&[1, 1])), Just(RingSpec::product(&[1, 2]))]
}

pub fn line_bundles(spec: RingSpec, max: usize, range: i64) -> impl Strategy<Value = Input> {
    let t = spec.t();
    prop::collection::vec(prop::collection::vec(-range..=range, t), 1..=max).prop_map(move |tw| {
        let twists: Vec<Multidegree> = tw.into_iter().map(Multidegree::from).collect();
        Input {
            label: format!("line bundles {:?}", twists.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
            module: line_bundle_sum(&spec, &twists),
        }
    })
}

/// `S / (m_1, …)` for one to three squarefree monomials.
pub fn monomial_quotients(spec: RingSpec) -> impl Strategy<Value = Input> {
    let nv = spec.nvars();
    prop::collection::vec(prop::collection::vec(0u32..=1, nv), 1..=3).prop_filter_map("nonzero monomials", move |ms| {
        let ms: Vec<Vec<u32>> = ms.into_iter().filter(|m| m.iter().any(|&e| e > 0)).collect();
        if ms.is_empty() {
            return None;
        }
        Some(Input { label: format!("monomial quotient {ms:?}"), module: monomial_quotient(&spec, &ms) })
    })
}

pub fn any_input() -> impl Strategy<Value = Input> {
    spec_strategy().prop_flat_map(|s| prop_oneof![line_bundles(s.clone(), 3, 2), monomial_quotients(s)])
}

fn binom(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

/// Cohomology of `O(a)` on `P^n`, as `(degree, dimension)`.
fn projective_space(n: i64, a: i64) -> Option<(i64, u64)> {
    if a >= 0 {
        Some((0, binom(a + n, n)))
    } else if a < -n {
        Some((n, binom(-a - 1, n)))
    } else {
        None
    }
}

/// Künneth: `h^*(O(c))` on the product as a map degree → dimension.
pub fn kunneth(n: &[usize], c: &[i64]) -> BTreeMap<i64, u64> {
    let mut acc: BTreeMap<i64, u64> = BTreeMap::from([(0, 1)]);
    for (&ni, &ci) in n.iter().zip(c) {
        let Some((k, v)) = projective_space(ni as i64, ci) else {
            return BTreeMap::new();
        };
        acc = acc.into_iter().map(|(kk, vv)| (kk + k, vv * v)).collect();
    }
    acc
}

/// `n` values drawn from `s`, reproducibly for a given seed.
pub fn samples<S: Strategy>(s: S, n: usize, seed: u8) -> Vec<S::Value> {
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    (0..n).map(|_| s.new_tree(&mut runner).unwrap().current()).collect()
}
