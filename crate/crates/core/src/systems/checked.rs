//! Runtime registry of the shipped systems for dynamically checked nets.

use super::arith::{self, IntTy};
use super::boolean::{self, BoolTy};
use super::list::{self, IntListTy};
use super::Rule;
use crate::dynamic::{neg, next_aux, pos, Registry};

/// A read-back value of any shipped value type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ground {
    Bool(bool),
    Int(i64),
    List(Vec<i64>),
}

impl From<bool> for Ground {
    fn from(b: bool) -> Self {
        Ground::Bool(b)
    }
}

impl From<i64> for Ground {
    fn from(n: i64) -> Self {
        Ground::Int(n)
    }
}

impl From<Vec<i64>> for Ground {
    fn from(xs: Vec<i64>) -> Self {
        Ground::List(xs)
    }
}

pub type SystemRegistry = Registry<Rule, Ground>;

/// Every value type and symbol of the shipped systems.
pub fn registry() -> SystemRegistry {
    let mut r = Registry::new();
    r.register_type::<BoolTy>()
        .register_type::<IntTy>()
        .register_type::<IntListTy>();

    r.register_symbol(&boolean::sig::T, |_, _| pos(boolean::t()))
        .register_symbol(&boolean::sig::F, |_, _| pos(boolean::f()))
        .register_symbol(&boolean::sig::AND, |_, aux| {
            let mut it = aux.into_iter();
            let r = next_aux(&mut it);
            neg(boolean::and(r, next_aux(&mut it)))
        })
        .register_symbol(&boolean::sig::IF, |_, aux| {
            let mut it = aux.into_iter();
            let r = next_aux(&mut it);
            let then = next_aux(&mut it);
            neg(boolean::if_then_else(r, then, next_aux(&mut it)))
        });

    r.register_symbol(&arith::sig::INT_LIT, |a, _| pos(arith::int(a[0])))
        .register_symbol(&arith::sig::IS_EVEN, |_, aux| {
            neg(arith::is_even_agent(next_aux(&mut aux.into_iter())))
        })
        .register_symbol(&arith::sig::FIB, |a, aux| {
            neg(arith::fib(a[0], next_aux(&mut aux.into_iter())))
        })
        .register_symbol(&arith::sig::ADD_STAGE1, |_, aux| {
            let mut it = aux.into_iter();
            let r = next_aux(&mut it);
            neg(arith::add_stage1(r, next_aux(&mut it)))
        })
        .register_symbol(&arith::sig::ADD_STAGE2, |a, aux| {
            neg(arith::add_stage2(a[0], next_aux(&mut aux.into_iter())))
        });

    r.register_symbol(&list::sig::NIL, |_, _| pos(list::nil()))
        .register_symbol(&list::sig::CONS, |a, aux| {
            pos(list::cons(a[0], next_aux(&mut aux.into_iter())))
        })
        .register_symbol(&list::sig::QS, |_, aux| {
            neg(list::qs(next_aux(&mut aux.into_iter())))
        })
        .register_symbol(&list::sig::PART, |a, aux| {
            let mut it = aux.into_iter();
            let low = next_aux(&mut it);
            neg(list::part(a[0], low, next_aux(&mut it)))
        })
        .register_symbol(&list::sig::APP, |_, aux| {
            let mut it = aux.into_iter();
            let r = next_aux(&mut it);
            neg(list::app(r, next_aux(&mut it)))
        })
        .register_symbol(&list::sig::MS, |_, aux| {
            neg(list::ms(next_aux(&mut aux.into_iter())))
        })
        .register_symbol(&list::sig::MS_HEAD, |a, aux| {
            neg(list::ms_head(a[0], next_aux(&mut aux.into_iter())))
        })
        .register_symbol(&list::sig::SPLIT, |_, aux| {
            let mut it = aux.into_iter();
            let first = next_aux(&mut it);
            neg(list::split(first, next_aux(&mut it)))
        })
        .register_symbol(&list::sig::MERGE, |_, aux| {
            let mut it = aux.into_iter();
            let r = next_aux(&mut it);
            neg(list::merge(r, next_aux(&mut it)))
        })
        .register_symbol(&list::sig::MERGE_HOLD, |a, aux| {
            let mut it = aux.into_iter();
            let r = next_aux(&mut it);
            neg(list::merge_hold(a[0], r, next_aux(&mut it)))
        });
    r
}
