//! The shipped interaction systems.
//!
//! All systems share one rule-label type, [`Rule`], so a single net may mix
//! booleans, integers and lists (`IsEven` turns an integer into a boolean).

pub mod arith;
pub mod boolean;
pub mod checked;
pub mod list;

pub use arith::{fib_net, fib_sequential, is_even, IntNeg, IntPos, IntTy, DEFAULT_CUTOFF};
pub use boolean::{eval_and, BoolNeg, BoolPos, BoolTy};
pub use checked::{registry, Ground, SystemRegistry};
pub use list::{
    decode_list, encode_list, mergesort_net, quicksort_net, seeded_list, IntListTy, ListNeg,
    ListPos,
};

use crate::engine::{self, RuleLabel};

/// Evaluator-independent net of the shipped systems.
pub type InitialNet<V> = engine::InitialNet<Rule, V>;
pub type ActivePair = engine::ActivePair<Rule>;

macro_rules! rules {
    ($($variant:ident => $name:literal,)*) => {
        /// Rule labels of every shipped system.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Rule {
            $($variant,)*
        }

        impl RuleLabel for Rule {
            const ALL: &'static [Rule] = &[$(Rule::$variant,)*];

            fn index(self) -> usize {
                self as usize
            }

            fn name(self) -> &'static str {
                match self {
                    $(Rule::$variant => $name,)*
                }
            }
        }
    };
}

rules! {
    TAnd => "T-And",
    FAnd => "F-And",
    TIf => "T-If",
    FIf => "F-If",
    IsEvenEven => "Int-IsEven/even",
    IsEvenOdd => "Int-IsEven/odd",
    FibBase => "Int-Fib/base",
    FibSequential => "Int-Fib/seq",
    FibSplit => "Int-Fib/split",
    AddFirst => "Int-AddStage1",
    AddSecond => "Int-AddStage2",
    QsNil => "Nil-QS",
    QsCons => "Cons-QS",
    PartNil => "Nil-Part",
    PartLow => "Cons-Part/le",
    PartHigh => "Cons-Part/gt",
    AppNil => "Nil-App",
    AppCons => "Cons-App",
    MsNil => "Nil-MS",
    MsCons => "Cons-MS",
    MsHeadNil => "Nil-MSHead",
    MsHeadCons => "Cons-MSHead",
    SplitNil => "Nil-Split",
    SplitCons => "Cons-Split",
    MergeNil => "Nil-Merge",
    MergeCons => "Cons-Merge",
    HoldNil => "Nil-MergeHold",
    HoldLeft => "Cons-MergeHold/left",
    HoldRight => "Cons-MergeHold/right",
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn labels_are_dense_and_unique() {
        for (i, r) in Rule::ALL.iter().enumerate() {
            assert_eq!(r.index(), i);
        }
        let names: HashSet<_> = Rule::ALL.iter().map(|r| r.name()).collect();
        assert_eq!(names.len(), Rule::ALL.len());
    }
}
