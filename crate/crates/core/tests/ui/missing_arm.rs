use inet_core::engine::{RuleCtx, Rules};
use inet_core::net::{Node, Symbol, SymbolSignature};
use inet_core::systems::boolean::{BoolNeg, BoolPos};
use inet_core::systems::Rule;
use inet_core::ValueType;

pub enum MyBool {}

impl ValueType for MyBool {
    const NAME: &'static str = "mybool";
    type PosSym = BoolPos;
    type NegSym = BoolNeg;
}

impl Rules for MyBool {
    type Label = Rule;

    fn apply(pos: BoolPos, neg: BoolNeg, _cx: &RuleCtx<'_, Rule>) -> Rule {
        match (pos, neg) {
            (BoolPos::T, BoolNeg::And(..)) => Rule::TAnd,
            (BoolPos::F, BoolNeg::And(..)) => Rule::FAnd,
            (BoolPos::T, BoolNeg::If(..)) => Rule::TIf,
        }
    }
}

fn main() {
    let _ = |s: &BoolPos| -> (&'static SymbolSignature, Vec<&dyn Node>) { (s.signature(), s.aux()) };
}
