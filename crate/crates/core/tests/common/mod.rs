#![allow(dead_code)]

use gdalg::term::{d, op, var};
use gdalg::{Op, Term};
use proptest::prelude::*;

pub const CASES: u32 = 256;

pub fn config() -> ProptestConfig {
    ProptestConfig {
        cases: CASES,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Random terms over `ops` in the variables `x1..x{nvars}`.
pub fn terms(ops: &'static [Op], nvars: u32, with_d: bool, depth: u32) -> BoxedStrategy<Term> {
    let leaf = (1..=nvars).prop_map(var);
    leaf.prop_recursive(depth, 24, 2, move |inner| {
        let node = (prop::sample::select(ops), inner.clone(), inner.clone()).prop_map(|(o, l, r)| op(o, l, r));
        if with_d {
            prop_oneof![3 => node, 1 => inner.prop_map(d)].boxed()
        } else {
            node.boxed()
        }
    })
    .boxed()
}
