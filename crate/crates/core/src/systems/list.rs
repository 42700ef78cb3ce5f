//! Integer lists with Quicksort and Mergesort nets.
//!
//! Elements are attributes of `Cons`, not separate `Int` agents.
//!
//! Quicksort uses the head as pivot; elements equal to the pivot go to the
//! lower partition. Mergesort splits by alternating elements between two
//! outputs and merges through `Merge`/`MergeHold`, which holds the head of
//! one list while waiting for the head of the other.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ActivePair, InitialNet, Rule};
use crate::engine::{Evaluator, RuleCtx, Rules};
use crate::net::{
    force, new_name, Agent, Neg, NetError, Node, Pos, ReadBack, Reader, Symbol, SymbolSignature,
    ValueType,
};

/// Value type of integer lists.
pub enum IntListTy {}

impl ValueType for IntListTy {
    const NAME: &'static str = "intlist";
    type PosSym = ListPos;
    type NegSym = ListNeg;
}

type PosList = Agent<IntListTy, Pos>;
type NegList = Agent<IntListTy, Neg>;

pub enum ListPos {
    Nil,
    Cons(i64, PosList),
}

pub enum ListNeg {
    /// Quicksort of the principal input into `result`.
    Qs(NegList),
    /// Partition around `pivot` into (`<= pivot`, `> pivot`).
    Part {
        pivot: i64,
        low: NegList,
        high: NegList,
    },
    /// Appends `suffix` to the principal input.
    App(NegList, PosList),
    /// Mergesort of the principal input into `result`.
    Ms(NegList),
    /// Mergesort that already consumed one element.
    MsHead(i64, NegList),
    /// Deals the principal input alternately to two outputs.
    Split(NegList, NegList),
    /// Merges the principal input with `other`.
    Merge(NegList, PosList),
    /// Holds the head of the first list; the principal port takes the other
    /// list, `rest` is the first list's tail.
    MergeHold {
        head: i64,
        result: NegList,
        rest: PosList,
    },
}

pub mod sig {
    use super::IntListTy;
    use crate::net::{PortType, ScalarKind, SymbolSignature, ValueType};

    const LIST: &str = IntListTy::NAME;
    const IN: PortType = PortType::neg(LIST);
    const OUT: PortType = PortType::pos(LIST);

    const fn agent(
        label: &'static str,
        principal: PortType,
        aux: &'static [PortType],
        attributes: &'static [ScalarKind],
    ) -> SymbolSignature {
        SymbolSignature {
            label,
            principal,
            aux,
            attributes,
        }
    }

    pub const NIL: SymbolSignature = agent("Nil", OUT, &[], &[]);
    pub const CONS: SymbolSignature = agent("Cons", OUT, &[IN], &[ScalarKind::Int]);
    pub const QS: SymbolSignature = agent("QS", IN, &[OUT], &[]);
    pub const PART: SymbolSignature = agent("Part", IN, &[OUT, OUT], &[ScalarKind::Int]);
    pub const APP: SymbolSignature = agent("App", IN, &[OUT, IN], &[]);
    pub const MS: SymbolSignature = agent("MS", IN, &[OUT], &[]);
    pub const MS_HEAD: SymbolSignature = agent("MSHead", IN, &[OUT], &[ScalarKind::Int]);
    pub const SPLIT: SymbolSignature = agent("Split", IN, &[OUT, OUT], &[]);
    pub const MERGE: SymbolSignature = agent("Merge", IN, &[OUT, IN], &[]);
    pub const MERGE_HOLD: SymbolSignature = agent("MergeHold", IN, &[OUT, IN], &[ScalarKind::Int]);
}

impl Symbol for ListPos {
    fn signature(&self) -> &'static SymbolSignature {
        match self {
            ListPos::Nil => &sig::NIL,
            ListPos::Cons(..) => &sig::CONS,
        }
    }

    fn attributes(&self) -> Vec<i64> {
        match self {
            ListPos::Nil => Vec::new(),
            ListPos::Cons(h, _) => vec![*h],
        }
    }

    fn aux(&self) -> Vec<&dyn Node> {
        match self {
            ListPos::Nil => Vec::new(),
            ListPos::Cons(_, tail) => vec![tail as &dyn Node],
        }
    }
}

impl Symbol for ListNeg {
    fn signature(&self) -> &'static SymbolSignature {
        match self {
            ListNeg::Qs(_) => &sig::QS,
            ListNeg::Part { .. } => &sig::PART,
            ListNeg::App(..) => &sig::APP,
            ListNeg::Ms(_) => &sig::MS,
            ListNeg::MsHead(..) => &sig::MS_HEAD,
            ListNeg::Split(..) => &sig::SPLIT,
            ListNeg::Merge(..) => &sig::MERGE,
            ListNeg::MergeHold { .. } => &sig::MERGE_HOLD,
        }
    }

    fn attributes(&self) -> Vec<i64> {
        match self {
            ListNeg::Part { pivot, .. } => vec![*pivot],
            ListNeg::MsHead(h, _) => vec![*h],
            ListNeg::MergeHold { head, .. } => vec![*head],
            _ => Vec::new(),
        }
    }

    fn aux(&self) -> Vec<&dyn Node> {
        match self {
            ListNeg::Qs(r) | ListNeg::Ms(r) | ListNeg::MsHead(_, r) => vec![r as &dyn Node],
            ListNeg::Part { low, high, .. } => vec![low as &dyn Node, high],
            ListNeg::App(r, s) | ListNeg::Merge(r, s) => vec![r as &dyn Node, s],
            ListNeg::Split(a, b) => vec![a as &dyn Node, b],
            ListNeg::MergeHold { result, rest, .. } => vec![result as &dyn Node, rest],
        }
    }
}

pub fn nil() -> PosList {
    Agent::sym(ListPos::Nil)
}

pub fn cons(head: i64, tail: PosList) -> PosList {
    Agent::sym(ListPos::Cons(head, tail))
}

pub fn qs(result: NegList) -> NegList {
    Agent::sym(ListNeg::Qs(result))
}

pub fn part(pivot: i64, low: NegList, high: NegList) -> NegList {
    Agent::sym(ListNeg::Part { pivot, low, high })
}

pub fn app(result: NegList, suffix: PosList) -> NegList {
    Agent::sym(ListNeg::App(result, suffix))
}

pub fn ms(result: NegList) -> NegList {
    Agent::sym(ListNeg::Ms(result))
}

pub fn ms_head(head: i64, result: NegList) -> NegList {
    Agent::sym(ListNeg::MsHead(head, result))
}

pub fn split(first: NegList, second: NegList) -> NegList {
    Agent::sym(ListNeg::Split(first, second))
}

pub fn merge(result: NegList, other: PosList) -> NegList {
    Agent::sym(ListNeg::Merge(result, other))
}

pub fn merge_hold(head: i64, result: NegList, rest: PosList) -> NegList {
    Agent::sym(ListNeg::MergeHold { head, result, rest })
}

impl Rules for IntListTy {
    type Label = Rule;

    fn apply(pos: ListPos, neg: ListNeg, cx: &RuleCtx<'_, Rule>) -> Rule {
        use ListNeg::*;
        use ListPos::{Cons, Nil};
        match (pos, neg) {
            (Nil, Qs(r)) => {
                cx.interact(nil(), r);
                Rule::QsNil
            }
            (Cons(h, t), Qs(r)) => {
                let (low, low_in) = new_name();
                let (high, high_in) = new_name();
                let (sorted_low, sorted_low_in) = new_name();
                let (sorted_high, sorted_high_in) = new_name();
                cx.interact(t, part(h, low_in, high_in));
                cx.interact(low, qs(sorted_low_in));
                cx.interact(high, qs(sorted_high_in));
                cx.interact(sorted_low, app(r, cons(h, sorted_high)));
                Rule::QsCons
            }
            (Nil, Part { low, high, .. }) => {
                cx.interact(nil(), low);
                cx.interact(nil(), high);
                Rule::PartNil
            }
            (Cons(x, t), Part { pivot, low, high }) if x <= pivot => {
                let (tail, tail_in) = new_name();
                cx.interact(cons(x, tail), low);
                cx.interact(t, part(pivot, tail_in, high));
                Rule::PartLow
            }
            (Cons(x, t), Part { pivot, low, high }) => {
                let (tail, tail_in) = new_name();
                cx.interact(cons(x, tail), high);
                cx.interact(t, part(pivot, low, tail_in));
                Rule::PartHigh
            }
            (Nil, App(r, suffix)) => {
                cx.interact(suffix, r);
                Rule::AppNil
            }
            (Cons(x, t), App(r, suffix)) => {
                let (tail, tail_in) = new_name();
                cx.interact(cons(x, tail), r);
                cx.interact(t, app(tail_in, suffix));
                Rule::AppCons
            }
            (Nil, Ms(r)) => {
                cx.interact(nil(), r);
                Rule::MsNil
            }
            (Cons(x, t), Ms(r)) => {
                cx.interact(t, ms_head(x, r));
                Rule::MsCons
            }
            (Nil, MsHead(x, r)) => {
                cx.interact(cons(x, nil()), r);
                Rule::MsHeadNil
            }
            (Cons(y, t), MsHead(x, r)) => {
                let (left, left_in) = new_name();
                let (right, right_in) = new_name();
                let (sorted_left, sorted_left_in) = new_name();
                let (sorted_right, sorted_right_in) = new_name();
                cx.interact(cons(x, cons(y, t)), split(left_in, right_in));
                cx.interact(left, ms(sorted_left_in));
                cx.interact(right, ms(sorted_right_in));
                cx.interact(sorted_left, merge(r, sorted_right));
                Rule::MsHeadCons
            }
            (Nil, Split(a, b)) => {
                cx.interact(nil(), a);
                cx.interact(nil(), b);
                Rule::SplitNil
            }
            (Cons(x, t), Split(a, b)) => {
                let (tail, tail_in) = new_name();
                cx.interact(cons(x, tail), a);
                cx.interact(t, split(b, tail_in));
                Rule::SplitCons
            }
            (Nil, Merge(r, other)) => {
                cx.interact(other, r);
                Rule::MergeNil
            }
            (Cons(x, t), Merge(r, other)) => {
                cx.interact(other, merge_hold(x, r, t));
                Rule::MergeCons
            }
            (Nil, MergeHold { head, result, rest }) => {
                cx.interact(cons(head, rest), result);
                Rule::HoldNil
            }
            (Cons(y, u), MergeHold { head, result, rest }) if head <= y => {
                let (tail, tail_in) = new_name();
                cx.interact(cons(head, tail), result);
                cx.interact(rest, merge(tail_in, cons(y, u)));
                Rule::HoldLeft
            }
            (Cons(y, u), MergeHold { head, result, rest }) => {
                let (tail, tail_in) = new_name();
                cx.interact(cons(y, tail), result);
                cx.interact(u, merge_hold(head, tail_in, rest));
                Rule::HoldRight
            }
        }
    }
}

impl ReadBack for IntListTy {
    type Value = Vec<i64>;

    fn read_symbol(mut sym: ListPos, reader: Reader) -> Result<Vec<i64>, NetError> {
        let mut out = Vec::new();
        loop {
            match sym {
                ListPos::Nil => return Ok(out),
                ListPos::Cons(h, tail) => {
                    out.push(h);
                    sym = force(tail, reader)?;
                }
            }
        }
    }
}

/// Builds the `Cons`/`Nil` chain for `xs`.
pub fn encode_list(xs: &[i64]) -> PosList {
    xs.iter().rev().fold(nil(), |tail, &h| cons(h, tail))
}

/// Reads a list agent back, waiting on names inside it.
pub fn decode_list(agent: PosList) -> Result<Vec<i64>, NetError> {
    crate::net::read_back(agent)
}

pub fn quicksort_initial(xs: &[i64]) -> InitialNet<IntListTy> {
    let (out, r) = new_name();
    InitialNet::single(out, ActivePair::new(encode_list(xs), qs(r)))
}

pub fn mergesort_initial(xs: &[i64]) -> InitialNet<IntListTy> {
    let (out, r) = new_name();
    InitialNet::single(out, ActivePair::new(encode_list(xs), ms(r)))
}

pub fn quicksort_net(xs: &[i64], eval: &Evaluator<'_>) -> Result<Vec<i64>, NetError> {
    Ok(eval.reduce(quicksort_initial(xs))?.values.remove(0))
}

pub fn mergesort_net(xs: &[i64], eval: &Evaluator<'_>) -> Result<Vec<i64>, NetError> {
    Ok(eval.reduce(mergesort_initial(xs))?.values.remove(0))
}

/// Deterministic pseudo-random input list for benchmarks and tests.
pub fn seeded_list(len: usize, seed: u64) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|_| rng.random_range(-10_000..10_000))
        .collect()
}
