#![allow(dead_code)]

use std::fmt::Debug;

use inet_core::engine::Normalized;
use inet_core::systems::arith::{add_stage1, fib, int, is_even_agent};
use inet_core::systems::boolean::{and, f, if_then_else, lit, t};
use inet_core::systems::{ActivePair, InitialNet};
use inet_core::{new_name, Evaluator, ReadBack};

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

fn reordered<V: ReadBack>(mut net: InitialNet<V>, order: &[usize]) -> InitialNet<V> {
    assert_eq!(order.len(), net.pairs.len());
    let mut slots: Vec<Option<ActivePair>> = net.pairs.drain(..).map(Some).collect();
    net.pairs = order.iter().map(|&i| slots[i].take().unwrap()).collect();
    net
}

fn run<V: ReadBack>(net: InitialNet<V>, order: &[usize], eval: &Evaluator<'_>) -> Normalized<String>
where
    V::Value: Debug,
{
    let out = eval.reduce(reordered(net, order)).unwrap();
    Normalized {
        values: format!("{:?}", out.values),
        stats: out.stats,
    }
}

pub struct SmallNet {
    pub name: &'static str,
    pub pairs: usize,
    pub expected: &'static str,
    build: fn(&[usize], &Evaluator<'_>) -> Normalized<String>,
}

impl SmallNet {
    /// Reduces the net with its initial pairs queued in `order`.
    pub fn run(&self, order: &[usize], eval: &Evaluator<'_>) -> Normalized<String> {
        (self.build)(order, eval)
    }
}

/// `d = (T ∧ T) ? (T ∧ T) : F`, `out = d ∧ T`, six initial pairs.
fn and_if(order: &[usize], eval: &Evaluator<'_>) -> Normalized<String> {
    let (pa, na) = new_name();
    let (pb, nb) = new_name();
    let (pc, nc) = new_name();
    let (pd, nd) = new_name();
    let (pe, ne) = new_name();
    let (out, r) = new_name();
    let net = InitialNet {
        interface: vec![out],
        pairs: vec![
            ActivePair::new(t(), and(na, pb)),
            ActivePair::new(t(), nb),
            ActivePair::new(pa, if_then_else(nd, pc, lit(false))),
            ActivePair::new(t(), and(nc, lit(true))),
            ActivePair::new(pd, and(r, pe)),
            ActivePair::new(t(), ne),
        ],
    };
    run(net, order, eval)
}

/// Two outputs: `F ∧ x` with `x` never produced, and `T ∧ F`.
fn two_outputs(order: &[usize], eval: &Evaluator<'_>) -> Normalized<String> {
    let (o1, r1) = new_name();
    let (o2, r2) = new_name();
    let (px, nx) = new_name();
    let (py, ny) = new_name();
    let net = InitialNet {
        interface: vec![o1, o2],
        pairs: vec![
            ActivePair::new(f(), and(r1, px)),
            ActivePair::new(py, and(r2, f())),
            ActivePair::new(t(), ny),
            ActivePair::new(f(), nx),
        ],
    };
    run(net, order, eval)
}

/// `is_even(3 + 5)` through the two-stage adder.
fn parity_of_sum(order: &[usize], eval: &Evaluator<'_>) -> Normalized<String> {
    let (pa, na) = new_name();
    let (pb, nb) = new_name();
    let (ps, ns) = new_name();
    let (out, r) = new_name();
    let net = InitialNet {
        interface: vec![out],
        pairs: vec![
            ActivePair::new(int(3), na),
            ActivePair::new(pa, add_stage1(ns, pb)),
            ActivePair::new(int(5), nb),
            ActivePair::new(ps, is_even_agent(r)),
        ],
    };
    run(net, order, eval)
}

/// `fib(6) + fib(7)` with no cutoff, then its parity, and `fib(4)` alone.
fn fib_sum(order: &[usize], eval: &Evaluator<'_>) -> Normalized<String> {
    let (p1, n1) = new_name();
    let (p2, n2) = new_name();
    let (ps, ns) = new_name();
    let (sum, sum_in) = new_name();
    let (out, r) = new_name();
    let net = InitialNet {
        interface: vec![sum],
        pairs: vec![
            ActivePair::new(int(6), fib(0, n1)),
            ActivePair::new(int(7), fib(0, n2)),
            ActivePair::new(p1, add_stage1(ns, p2)),
            ActivePair::new(ps, add_stage1(sum_in, out)),
            ActivePair::new(int(4), fib(0, r)),
        ],
    };
    run(net, order, eval)
}

pub fn small_nets() -> Vec<SmallNet> {
    vec![
        SmallNet {
            name: "and-if",
            pairs: 6,
            expected: "[true]",
            build: and_if,
        },
        SmallNet {
            name: "two-outputs",
            pairs: 4,
            expected: "[false, false]",
            build: two_outputs,
        },
        SmallNet {
            name: "parity-of-sum",
            pairs: 4,
            expected: "[true]",
            build: parity_of_sum,
        },
        SmallNet {
            name: "fib-sum",
            pairs: 5,
            // fib(6) + fib(7) + fib(4)
            expected: "[24]",
            build: fib_sum,
        },
    ]
}
