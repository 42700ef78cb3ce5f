use std::fmt;

/// Runtime mirror of the polarity tags, used by signatures and the
/// dynamically checked mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolarityTag {
    Pos,
    Neg,
}

impl PolarityTag {
    pub fn inverted(self) -> Self {
        match self {
            PolarityTag::Pos => PolarityTag::Neg,
            PolarityTag::Neg => PolarityTag::Pos,
        }
    }
}

impl fmt::Display for PolarityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolarityTag::Pos => "pos",
            PolarityTag::Neg => "neg",
        })
    }
}

/// A (value type, polarity) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PortType {
    pub value: &'static str,
    pub polarity: PolarityTag,
}

impl PortType {
    pub const fn new(value: &'static str, polarity: PolarityTag) -> Self {
        PortType { value, polarity }
    }

    pub const fn pos(value: &'static str) -> Self {
        PortType::new(value, PolarityTag::Pos)
    }

    pub const fn neg(value: &'static str) -> Self {
        PortType::new(value, PolarityTag::Neg)
    }

    /// Type of an agent that may be plugged into a port of this type.
    pub fn connects(self) -> Self {
        PortType::new(self.value, self.polarity.inverted())
    }
}

impl fmt::Display for PortType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.value, self.polarity)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Int,
}

/// Static description of a symbol. Port types are the drawn ones: `aux[i]`
/// is the type of the i-th auxiliary port, and the agent stored in that slot
/// has type `aux[i].connects()`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolSignature {
    pub label: &'static str,
    pub principal: PortType,
    pub aux: &'static [PortType],
    pub attributes: &'static [ScalarKind],
}

impl SymbolSignature {
    pub fn arity(&self) -> usize {
        self.aux.len()
    }
}
