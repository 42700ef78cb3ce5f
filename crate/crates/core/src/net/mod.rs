//! Typed agent encoding.
//!
//! Every agent is an [`Agent<V, P>`]: a value denoting the agent's principal
//! port, typed by a value type `V` and a polarity `P`. The symbols of an
//! interaction system are ordinary enums, one per (value type, polarity)
//! combination, with one variant per symbol. A variant's fields are its
//! auxiliary connections and attributes, so arity is fixed structurally and
//! the compiler rejects ill-typed connections. The tags themselves are
//! uninhabited types and cost nothing at runtime.
//!
//! # Polarity inversion
//!
//! An auxiliary field stores *the agent connected to that port*, not the port
//! itself. Only opposite polarities connect, so each field carries the
//! polarity opposite to the port's drawn polarity. `And` has a positive
//! result port and a negative second-argument port in the usual diagrams; its
//! constructor therefore takes a **negative** agent for the result and a
//! **positive** agent for the argument:
//!
//! ```text
//! And : Agent<Bool, Neg> * Agent<Bool, Pos> -> Agent<Bool, Neg>
//! ```
//!
//! [`SymbolSignature`] records the drawn port types; [`PortType::connects`]
//! gives the stored ones.
//!
//! # Names
//!
//! Auxiliary ports cannot point at each other directly, so such links (and
//! the interface of a net) go through a pair of name agents created by
//! [`new_name`]. `NamePos` wraps the read end of a single-assignment cell and
//! `NameNeg` the write end.

mod dot;
pub(crate) mod readback;
mod signature;

pub use dot::{to_dot, Dot, Node, NodeView};
pub use readback::{force, read_back, ReadBack, Reader};
pub use signature::{PolarityTag, PortType, ScalarKind, SymbolSignature};

use std::fmt;

use crate::scheduler::{make_future, Promise, Resolver};

/// Positive polarity (outputs).
pub enum Pos {}

/// Negative polarity (inputs).
pub enum Neg {}

mod sealed {
    pub trait Sealed {}
    impl Sealed for super::Pos {}
    impl Sealed for super::Neg {}
}

/// A polarity tag. Implemented only by [`Pos`] and [`Neg`].
pub trait Polarity: sealed::Sealed + Sized + 'static {
    const TAG: PolarityTag;
    /// The symbol enum of value type `V` at this polarity.
    type Sym<V: ValueType>: Symbol + Send + 'static;
    /// The name agent payload: a promise for `Pos`, a resolver for `Neg`.
    type Name<V: ValueType>;

    #[doc(hidden)]
    fn name_view<V: ValueType>(name: &Self::Name<V>) -> NodeView<'_>;
}

impl Polarity for Pos {
    const TAG: PolarityTag = PolarityTag::Pos;
    type Sym<V: ValueType> = V::PosSym;
    type Name<V: ValueType> = Promise<Agent<V, Pos>>;

    fn name_view<V: ValueType>(name: &Self::Name<V>) -> NodeView<'_> {
        NodeView::NamePos {
            cell: name.cell_id(),
        }
    }
}

impl Polarity for Neg {
    const TAG: PolarityTag = PolarityTag::Neg;
    type Sym<V: ValueType> = V::NegSym;
    type Name<V: ValueType> = Resolver<Agent<V, Pos>>;

    fn name_view<V: ValueType>(name: &Self::Name<V>) -> NodeView<'_> {
        NodeView::NameNeg {
            cell: name.cell_id(),
        }
    }
}

/// A value-type tag, usually an uninhabited enum, naming the symbol enums
/// that live at each polarity.
pub trait ValueType: Sized + Send + 'static {
    const NAME: &'static str;
    type PosSym: Symbol + Send + 'static;
    type NegSym: Symbol + Send + 'static;
}

/// Symbol metadata for tooling and DOT output.
pub trait Symbol {
    fn signature(&self) -> &'static SymbolSignature;
    fn attributes(&self) -> Vec<i64>;
    /// Auxiliary connections in port order.
    fn aux(&self) -> Vec<&dyn Node>;
}

/// An agent of value type `V` and polarity `P`, seen through its principal
/// port.
pub enum Agent<V: ValueType, P: Polarity> {
    Sym(Box<P::Sym<V>>),
    Name(P::Name<V>),
}

impl<V: ValueType, P: Polarity> Agent<V, P> {
    /// Wraps a symbol of the matching enum.
    pub fn sym(sym: P::Sym<V>) -> Self {
        Agent::Sym(Box::new(sym))
    }

    pub fn port_type(&self) -> PortType {
        PortType::new(V::NAME, P::TAG)
    }

    pub fn is_name(&self) -> bool {
        matches!(self, Agent::Name(_))
    }

    /// Label of the agent: the symbol label, or `NamePos`/`NameNeg`.
    pub fn label(&self) -> &'static str {
        match self.view() {
            NodeView::Symbol { label, .. } => label,
            NodeView::NamePos { .. } => "NamePos",
            NodeView::NameNeg { .. } => "NameNeg",
        }
    }
}

impl<V: ValueType, P: Polarity> Node for Agent<V, P> {
    fn view(&self) -> NodeView<'_> {
        match self {
            Agent::Sym(s) => symbol_view(&**s),
            Agent::Name(n) => P::name_view::<V>(n),
        }
    }
}

fn symbol_view<S: Symbol>(s: &S) -> NodeView<'_> {
    NodeView::Symbol {
        label: s.signature().label,
        attrs: s.attributes(),
        aux: s.aux(),
    }
}

impl<V: ValueType, P: Polarity> fmt::Debug for Agent<V, P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", DebugNode(self))
    }
}

struct DebugNode<'a>(&'a dyn Node);

impl fmt::Display for DebugNode<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.view() {
            NodeView::Symbol { label, attrs, aux } => {
                write!(f, "{label}")?;
                if !attrs.is_empty() {
                    write!(f, "{attrs:?}")?;
                }
                if !aux.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in aux.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{}", DebugNode(*a))?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
            NodeView::NamePos { .. } => f.write_str("NamePos"),
            NodeView::NameNeg { .. } => f.write_str("NameNeg"),
        }
    }
}

/// Creates a fresh wire: `(NamePos, NameNeg)` over one promise/resolver cell.
///
/// A positive agent interacting with the `NameNeg` half resolves the cell;
/// whatever interacts with the `NamePos` half waits for that agent.
pub fn new_name<V: ValueType>() -> (Agent<V, Pos>, Agent<V, Neg>) {
    let (promise, resolver) = make_future();
    (Agent::Name(promise), Agent::Name(resolver))
}

/// Errors surfaced when observing a net.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NetError {
    #[error("stuck net: {0}")]
    Stuck(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
