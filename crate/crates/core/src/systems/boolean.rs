//! Booleans: `T`, `F`, `And` and `If`.

use super::{ActivePair, InitialNet, Rule};
use crate::engine::{discard, Evaluator, RuleCtx, Rules};
use crate::net::{
    new_name, Agent, Neg, NetError, Node, Pos, ReadBack, Reader, Symbol, SymbolSignature, ValueType,
};

/// Value type of booleans.
pub enum BoolTy {}

impl ValueType for BoolTy {
    const NAME: &'static str = "bool";
    type PosSym = BoolPos;
    type NegSym = BoolNeg;
}

pub enum BoolPos {
    T,
    F,
}

pub enum BoolNeg {
    /// `And(result, second)`: the principal port takes the first operand.
    And(Agent<BoolTy, Neg>, Agent<BoolTy, Pos>),
    /// `If(result, then, else)`: the principal port takes the condition.
    If(Agent<BoolTy, Neg>, Agent<BoolTy, Pos>, Agent<BoolTy, Pos>),
}

const BOOL: &str = BoolTy::NAME;

pub mod sig {
    use super::BOOL;
    use crate::net::{PortType, SymbolSignature};

    pub const T: SymbolSignature = SymbolSignature {
        label: "T",
        principal: PortType::pos(BOOL),
        aux: &[],
        attributes: &[],
    };
    pub const F: SymbolSignature = SymbolSignature {
        label: "F",
        principal: PortType::pos(BOOL),
        aux: &[],
        attributes: &[],
    };
    pub const AND: SymbolSignature = SymbolSignature {
        label: "And",
        principal: PortType::neg(BOOL),
        aux: &[PortType::pos(BOOL), PortType::neg(BOOL)],
        attributes: &[],
    };
    pub const IF: SymbolSignature = SymbolSignature {
        label: "If",
        principal: PortType::neg(BOOL),
        aux: &[
            PortType::pos(BOOL),
            PortType::neg(BOOL),
            PortType::neg(BOOL),
        ],
        attributes: &[],
    };
}

impl Symbol for BoolPos {
    fn signature(&self) -> &'static SymbolSignature {
        match self {
            BoolPos::T => &sig::T,
            BoolPos::F => &sig::F,
        }
    }

    fn attributes(&self) -> Vec<i64> {
        Vec::new()
    }

    fn aux(&self) -> Vec<&dyn Node> {
        Vec::new()
    }
}

impl Symbol for BoolNeg {
    fn signature(&self) -> &'static SymbolSignature {
        match self {
            BoolNeg::And(..) => &sig::AND,
            BoolNeg::If(..) => &sig::IF,
        }
    }

    fn attributes(&self) -> Vec<i64> {
        Vec::new()
    }

    fn aux(&self) -> Vec<&dyn Node> {
        match self {
            BoolNeg::And(r, b) => vec![r as &dyn Node, b],
            BoolNeg::If(r, t, e) => vec![r as &dyn Node, t, e],
        }
    }
}

pub fn t() -> Agent<BoolTy, Pos> {
    Agent::sym(BoolPos::T)
}

pub fn f() -> Agent<BoolTy, Pos> {
    Agent::sym(BoolPos::F)
}

pub fn lit(b: bool) -> Agent<BoolTy, Pos> {
    if b {
        t()
    } else {
        f()
    }
}

pub fn and(result: Agent<BoolTy, Neg>, second: Agent<BoolTy, Pos>) -> Agent<BoolTy, Neg> {
    Agent::sym(BoolNeg::And(result, second))
}

pub fn if_then_else(
    result: Agent<BoolTy, Neg>,
    then: Agent<BoolTy, Pos>,
    otherwise: Agent<BoolTy, Pos>,
) -> Agent<BoolTy, Neg> {
    Agent::sym(BoolNeg::If(result, then, otherwise))
}

impl Rules for BoolTy {
    type Label = Rule;

    fn apply(pos: BoolPos, neg: BoolNeg, cx: &RuleCtx<'_, Rule>) -> Rule {
        match (pos, neg) {
            (BoolPos::T, BoolNeg::And(r, b)) => {
                cx.interact(b, r);
                Rule::TAnd
            }
            (BoolPos::F, BoolNeg::And(r, b)) => {
                discard(b);
                cx.interact(f(), r);
                Rule::FAnd
            }
            (BoolPos::T, BoolNeg::If(r, then, otherwise)) => {
                discard(otherwise);
                cx.interact(then, r);
                Rule::TIf
            }
            (BoolPos::F, BoolNeg::If(r, then, otherwise)) => {
                discard(then);
                cx.interact(otherwise, r);
                Rule::FIf
            }
        }
    }
}

impl ReadBack for BoolTy {
    type Value = bool;

    fn read_symbol(sym: BoolPos, _: Reader) -> Result<bool, NetError> {
        Ok(matches!(sym, BoolPos::T))
    }
}

/// `x ⋈ And(out, y)` with `out` as the interface.
pub fn and_net(x: bool, y: bool) -> InitialNet<BoolTy> {
    let (out, r) = new_name();
    InitialNet::single(out, ActivePair::new(lit(x), and(r, lit(y))))
}

/// Conjunction computed by reducing [`and_net`].
pub fn eval_and(x: bool, y: bool, eval: &Evaluator<'_>) -> Result<bool, NetError> {
    Ok(eval.reduce(and_net(x, y))?.values[0])
}
