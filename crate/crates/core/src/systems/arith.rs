//! Attributed integers: `Int[n]`, `IsEven`, `Fib[cutoff]` and the two-stage
//! adder used to join Fibonacci subresults.

use super::boolean::{f, t, BoolTy};
use super::{ActivePair, InitialNet, Rule};
use crate::engine::{Evaluator, RuleCtx, Rules};
use crate::net::{
    new_name, Agent, Neg, NetError, Node, Pos, ReadBack, Reader, Symbol, SymbolSignature, ValueType,
};

/// Inputs at or below this size are computed sequentially by `Fib`.
pub const DEFAULT_CUTOFF: i64 = 20;

/// Largest `n` whose Fibonacci number fits in an `i64`.
pub const MAX_FIB_INPUT: i64 = 92;

/// Value type of machine integers.
pub enum IntTy {}

impl ValueType for IntTy {
    const NAME: &'static str = "int";
    type PosSym = IntPos;
    type NegSym = IntNeg;
}

pub enum IntPos {
    Int(i64),
}

pub enum IntNeg {
    IsEven(Agent<BoolTy, Neg>),
    /// Computes the Fibonacci number of its principal input into `result`.
    Fib {
        cutoff: i64,
        result: Agent<IntTy, Neg>,
    },
    /// First stage of `a + b`: waits for `a` on the principal port.
    AddStage1(Agent<IntTy, Neg>, Agent<IntTy, Pos>),
    /// Second stage: holds `a` and waits for `b`.
    AddStage2(i64, Agent<IntTy, Neg>),
}

pub mod sig {
    use super::{BoolTy, IntTy};
    use crate::net::{PortType, ScalarKind, SymbolSignature, ValueType};

    const INT: &str = IntTy::NAME;

    pub const INT_LIT: SymbolSignature = SymbolSignature {
        label: "Int",
        principal: PortType::pos(INT),
        aux: &[],
        attributes: &[ScalarKind::Int],
    };
    pub const IS_EVEN: SymbolSignature = SymbolSignature {
        label: "IsEven",
        principal: PortType::neg(INT),
        aux: &[PortType::pos(BoolTy::NAME)],
        attributes: &[],
    };
    pub const FIB: SymbolSignature = SymbolSignature {
        label: "Fib",
        principal: PortType::neg(INT),
        aux: &[PortType::pos(INT)],
        attributes: &[ScalarKind::Int],
    };
    pub const ADD_STAGE1: SymbolSignature = SymbolSignature {
        label: "AddStage1",
        principal: PortType::neg(INT),
        aux: &[PortType::pos(INT), PortType::neg(INT)],
        attributes: &[],
    };
    pub const ADD_STAGE2: SymbolSignature = SymbolSignature {
        label: "AddStage2",
        principal: PortType::neg(INT),
        aux: &[PortType::pos(INT)],
        attributes: &[ScalarKind::Int],
    };
}

impl Symbol for IntPos {
    fn signature(&self) -> &'static SymbolSignature {
        &sig::INT_LIT
    }

    fn attributes(&self) -> Vec<i64> {
        let IntPos::Int(n) = self;
        vec![*n]
    }

    fn aux(&self) -> Vec<&dyn Node> {
        Vec::new()
    }
}

impl Symbol for IntNeg {
    fn signature(&self) -> &'static SymbolSignature {
        match self {
            IntNeg::IsEven(_) => &sig::IS_EVEN,
            IntNeg::Fib { .. } => &sig::FIB,
            IntNeg::AddStage1(..) => &sig::ADD_STAGE1,
            IntNeg::AddStage2(..) => &sig::ADD_STAGE2,
        }
    }

    fn attributes(&self) -> Vec<i64> {
        match self {
            IntNeg::Fib { cutoff, .. } => vec![*cutoff],
            IntNeg::AddStage2(m, _) => vec![*m],
            IntNeg::IsEven(_) | IntNeg::AddStage1(..) => Vec::new(),
        }
    }

    fn aux(&self) -> Vec<&dyn Node> {
        match self {
            IntNeg::IsEven(r) => vec![r as &dyn Node],
            IntNeg::Fib { result, .. } => vec![result as &dyn Node],
            IntNeg::AddStage1(r, y) => vec![r as &dyn Node, y],
            IntNeg::AddStage2(_, r) => vec![r as &dyn Node],
        }
    }
}

pub fn int(n: i64) -> Agent<IntTy, Pos> {
    Agent::sym(IntPos::Int(n))
}

pub fn is_even_agent(result: Agent<BoolTy, Neg>) -> Agent<IntTy, Neg> {
    Agent::sym(IntNeg::IsEven(result))
}

pub fn fib(cutoff: i64, result: Agent<IntTy, Neg>) -> Agent<IntTy, Neg> {
    Agent::sym(IntNeg::Fib { cutoff, result })
}

pub fn add_stage1(result: Agent<IntTy, Neg>, second: Agent<IntTy, Pos>) -> Agent<IntTy, Neg> {
    Agent::sym(IntNeg::AddStage1(result, second))
}

pub fn add_stage2(first: i64, result: Agent<IntTy, Neg>) -> Agent<IntTy, Neg> {
    Agent::sym(IntNeg::AddStage2(first, result))
}

/// Doubly recursive Fibonacci used below the cutoff. Deliberately the plain
/// exponential algorithm, so the cutoff trades net overhead for sequential
/// work without changing the amount of work.
pub fn fib_sequential(n: i64) -> i64 {
    if n < 2 {
        n
    } else {
        fib_sequential(n - 1) + fib_sequential(n - 2)
    }
}

impl Rules for IntTy {
    type Label = Rule;

    fn apply(pos: IntPos, neg: IntNeg, cx: &RuleCtx<'_, Rule>) -> Rule {
        match (pos, neg) {
            // The guarded arm must stay ahead of the fall-through.
            (IntPos::Int(n), IntNeg::IsEven(r)) if n % 2 == 0 => {
                cx.interact(t(), r);
                Rule::IsEvenEven
            }
            (IntPos::Int(_), IntNeg::IsEven(r)) => {
                cx.interact(f(), r);
                Rule::IsEvenOdd
            }
            (IntPos::Int(k), IntNeg::Fib { result, .. }) if k < 2 => {
                cx.interact(int(k), result);
                Rule::FibBase
            }
            (IntPos::Int(k), IntNeg::Fib { cutoff, result }) if k <= cutoff => {
                cx.interact(int(fib_sequential(k)), result);
                Rule::FibSequential
            }
            (IntPos::Int(k), IntNeg::Fib { cutoff, result }) => {
                let (a, a_in) = new_name();
                let (b, b_in) = new_name();
                cx.interact(int(k - 1), fib(cutoff, a_in));
                cx.interact(int(k - 2), fib(cutoff, b_in));
                cx.interact(a, add_stage1(result, b));
                Rule::FibSplit
            }
            (IntPos::Int(m), IntNeg::AddStage1(r, second)) => {
                cx.interact(second, add_stage2(m, r));
                Rule::AddFirst
            }
            (IntPos::Int(k), IntNeg::AddStage2(m, r)) => {
                cx.interact(int(m + k), r);
                Rule::AddSecond
            }
        }
    }
}

impl ReadBack for IntTy {
    type Value = i64;

    fn read_symbol(sym: IntPos, _: Reader) -> Result<i64, NetError> {
        let IntPos::Int(n) = sym;
        Ok(n)
    }
}

/// `Int[n] ⋈ IsEven(out)`.
pub fn is_even_net(n: i64) -> InitialNet<BoolTy> {
    let (out, r) = new_name();
    InitialNet::single(out, ActivePair::new(int(n), is_even_agent(r)))
}

pub fn is_even(n: i64, eval: &Evaluator<'_>) -> Result<bool, NetError> {
    Ok(eval.reduce(is_even_net(n))?.values[0])
}

/// `Int[n] ⋈ Fib[cutoff](out)`.
pub fn fib_initial(n: i64, cutoff: i64) -> Result<InitialNet<IntTy>, NetError> {
    if n < 0 {
        return Err(NetError::InvalidInput(format!(
            "Fibonacci input must be nonnegative, got {n}"
        )));
    }
    if n > MAX_FIB_INPUT {
        return Err(NetError::InvalidInput(format!(
            "Fibonacci input {n} overflows a 64-bit result (max {MAX_FIB_INPUT})"
        )));
    }
    let (out, r) = new_name();
    Ok(InitialNet::single(
        out,
        ActivePair::new(int(n), fib(cutoff, r)),
    ))
}

/// The `n`-th Fibonacci number (`fib(0) = 0`, `fib(1) = 1`) computed by a net.
pub fn fib_net(n: i64, eval: &Evaluator<'_>, cutoff: i64) -> Result<i64, NetError> {
    Ok(eval.reduce(fib_initial(n, cutoff)?)?.values[0])
}
