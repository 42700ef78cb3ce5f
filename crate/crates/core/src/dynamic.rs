//! Dynamically checked construction and dispatch.
//!
//! The typed API rejects ill-typed nets at compile time. This module serves
//! callers that only know symbols at runtime (parsers, tooling, enumeration
//! tests): a [`DynAgent`] carries its [`PortType`] as a runtime tag,
//! [`Registry::construct`] checks arity, attributes and every auxiliary port
//! against the symbol's signature, and [`Registry::pair`] accepts either
//! orientation of an active pair but refuses pairs no rule can match.
//!
//! Checked agents are converted back into typed agents before dispatch, so
//! both modes run exactly the same rule arms.

use std::any::Any;
use std::collections::BTreeMap;
use std::fmt;

use crate::engine::{ActivePair, Evaluator, Normalized, RuleLabel, Rules};
use crate::net::{
    new_name, Agent, Neg, NetError, Polarity, PolarityTag, PortType, Pos, ReadBack, Reader,
    SymbolSignature, ValueType,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("unknown value type {0:?}")]
    UnknownValueType(String),
    #[error("{symbol} takes {expected} auxiliary agents, got {found}")]
    Arity {
        symbol: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{symbol} takes {expected} attributes, got {found}")]
    Attributes {
        symbol: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{symbol} aux port {port}: expected an agent of type {expected}, got {found}")]
    Port {
        symbol: &'static str,
        port: usize,
        expected: PortType,
        found: PortType,
    },
    #[error("No rule for this pair: {left} ⋈ {right}")]
    NoRule { left: PortType, right: PortType },
}

/// An agent whose type is only known at runtime.
pub struct DynAgent {
    port: PortType,
    agent: Box<dyn Any + Send>,
}

impl DynAgent {
    pub fn new<V: ValueType, P: Polarity>(agent: Agent<V, P>) -> Self
    where
        Agent<V, P>: Send,
    {
        DynAgent {
            port: agent.port_type(),
            agent: Box::new(agent),
        }
    }

    pub fn port_type(&self) -> PortType {
        self.port
    }

    /// Recovers the typed agent.
    pub fn downcast<V: ValueType, P: Polarity>(self) -> Result<Agent<V, P>, DynAgent> {
        let port = self.port;
        self.agent
            .downcast::<Agent<V, P>>()
            .map(|b| *b)
            .map_err(|agent| DynAgent { port, agent })
    }

    /// Typed agent for a slot whose type was already checked.
    pub fn into_typed<V: ValueType, P: Polarity>(self) -> Agent<V, P> {
        match self.downcast() {
            Ok(a) => a,
            Err(d) => panic!(
                "checked agent of type {} is not an Agent<{}, {}>",
                d.port,
                V::NAME,
                P::TAG
            ),
        }
    }
}

impl fmt::Debug for DynAgent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DynAgent{}", self.port)
    }
}

/// Builds a typed agent from checked attributes and auxiliary agents.
pub type Builder = fn(&[i64], Vec<DynAgent>) -> DynAgent;

struct TypeEntry<L: RuleLabel, G> {
    new_name: fn() -> (DynAgent, DynAgent),
    pair: fn(DynAgent, DynAgent) -> ActivePair<L>,
    read_back: fn(DynAgent, Reader) -> Result<G, NetError>,
}

struct SymbolEntry {
    signature: &'static SymbolSignature,
    build: Builder,
}

/// Runtime table of value types and symbols for one rule system. `G` is the
/// ground-value type read-back produces.
pub struct Registry<L: RuleLabel, G> {
    types: BTreeMap<&'static str, TypeEntry<L, G>>,
    symbols: BTreeMap<&'static str, SymbolEntry>,
}

impl<L: RuleLabel, G> Default for Registry<L, G> {
    fn default() -> Self {
        Registry {
            types: BTreeMap::new(),
            symbols: BTreeMap::new(),
        }
    }
}

fn erased_name<V: ValueType>() -> (DynAgent, DynAgent) {
    let (p, n) = new_name::<V>();
    (DynAgent::new(p), DynAgent::new(n))
}

fn erased_pair<V: Rules>(pos: DynAgent, neg: DynAgent) -> ActivePair<V::Label> {
    ActivePair::new::<V>(pos.into_typed(), neg.into_typed())
}

fn erased_read_back<V, G>(agent: DynAgent, reader: Reader) -> Result<G, NetError>
where
    V: ReadBack,
    V::Value: Into<G>,
{
    let typed: Agent<V, Pos> = agent.into_typed();
    crate::net::readback::read_back_with(typed, reader).map(Into::into)
}

impl<L: RuleLabel, G> Registry<L, G> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register_type<V>(&mut self) -> &mut Self
    where
        V: Rules<Label = L> + ReadBack,
        V::Value: Into<G>,
    {
        self.types.insert(
            V::NAME,
            TypeEntry {
                new_name: erased_name::<V>,
                pair: erased_pair::<V>,
                read_back: erased_read_back::<V, G>,
            },
        );
        self
    }

    pub fn register_symbol(
        &mut self,
        signature: &'static SymbolSignature,
        build: Builder,
    ) -> &mut Self {
        self.symbols
            .insert(signature.label, SymbolEntry { signature, build });
        self
    }

    pub fn signature(&self, label: &str) -> Option<&'static SymbolSignature> {
        self.symbols.get(label).map(|e| e.signature)
    }

    /// All registered signatures, sorted by label.
    pub fn signatures(&self) -> impl Iterator<Item = &'static SymbolSignature> + '_ {
        self.symbols.values().map(|e| e.signature)
    }

    pub fn value_types(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.types.keys().copied()
    }

    /// Builds `label[attrs](aux...)` after checking it against the signature.
    pub fn construct(
        &self,
        label: &str,
        attrs: &[i64],
        aux: Vec<DynAgent>,
    ) -> Result<DynAgent, TypeError> {
        let entry = self
            .symbols
            .get(label)
            .ok_or_else(|| TypeError::UnknownSymbol(label.to_owned()))?;
        let sig = entry.signature;
        if aux.len() != sig.arity() {
            return Err(TypeError::Arity {
                symbol: sig.label,
                expected: sig.arity(),
                found: aux.len(),
            });
        }
        if attrs.len() != sig.attributes.len() {
            return Err(TypeError::Attributes {
                symbol: sig.label,
                expected: sig.attributes.len(),
                found: attrs.len(),
            });
        }
        for (port, (declared, agent)) in sig.aux.iter().zip(&aux).enumerate() {
            let expected = declared.connects();
            if agent.port != expected {
                return Err(TypeError::Port {
                    symbol: sig.label,
                    port,
                    expected,
                    found: agent.port,
                });
            }
        }
        Ok((entry.build)(attrs, aux))
    }

    /// Builds `label[attrs]` with a fresh name on every auxiliary port and
    /// returns it with the far ends of those names, in port order.
    pub fn with_fresh_names(
        &self,
        label: &str,
        attrs: &[i64],
    ) -> Result<(DynAgent, Vec<DynAgent>), TypeError> {
        let sig = self
            .signature(label)
            .ok_or_else(|| TypeError::UnknownSymbol(label.to_owned()))?;
        let mut aux = Vec::with_capacity(sig.arity());
        let mut ends = Vec::with_capacity(sig.arity());
        for port in sig.aux {
            let (p, n) = self.new_name(port.value)?;
            let (slot, end) = match port.connects().polarity {
                PolarityTag::Pos => (p, n),
                PolarityTag::Neg => (n, p),
            };
            aux.push(slot);
            ends.push(end);
        }
        Ok((self.construct(label, attrs, aux)?, ends))
    }

    /// Every (positive symbol, negative symbol) pair whose principal ports
    /// share a value type, i.e. every well-typed active pair of symbols.
    pub fn symbol_pairs(&self) -> Vec<(&'static SymbolSignature, &'static SymbolSignature)> {
        let sigs: Vec<_> = self.signatures().collect();
        let mut out = Vec::new();
        for a in &sigs {
            for b in &sigs {
                if a.principal.polarity == PolarityTag::Pos && a.principal.connects() == b.principal
                {
                    out.push((*a, *b));
                }
            }
        }
        out
    }

    /// A fresh `(NamePos, NameNeg)` pair of the named value type.
    pub fn new_name(&self, value_type: &str) -> Result<(DynAgent, DynAgent), TypeError> {
        let entry = self
            .types
            .get(value_type)
            .ok_or_else(|| TypeError::UnknownValueType(value_type.to_owned()))?;
        Ok((entry.new_name)())
    }

    /// An active pair in either orientation. Fails unless the principal
    /// ports have the same value type and opposite polarities.
    pub fn pair(&self, a: DynAgent, b: DynAgent) -> Result<ActivePair<L>, TypeError> {
        let no_rule = TypeError::NoRule {
            left: a.port,
            right: b.port,
        };
        if a.port.value != b.port.value || a.port.polarity == b.port.polarity {
            return Err(no_rule);
        }
        let entry = self.types.get(a.port.value).ok_or(no_rule)?;
        let (pos, neg) = match a.port.polarity {
            PolarityTag::Pos => (a, b),
            PolarityTag::Neg => (b, a),
        };
        Ok((entry.pair)(pos, neg))
    }

    pub fn read_back(&self, agent: DynAgent, reader: Reader) -> Result<G, NetError> {
        if agent.port.polarity != PolarityTag::Pos {
            return Err(NetError::Stuck(format!(
                "cannot read back a negative agent of type {}",
                agent.port
            )));
        }
        let entry = self.types.get(agent.port.value).ok_or_else(|| {
            NetError::Stuck(format!("unregistered value type {}", agent.port.value))
        })?;
        (entry.read_back)(agent, reader)
    }

    /// Reduces `pairs` and reads back each interface agent.
    pub fn normalize(
        &self,
        eval: &Evaluator<'_>,
        interface: Vec<DynAgent>,
        pairs: Vec<ActivePair<L>>,
    ) -> Result<Normalized<Vec<G>>, NetError> {
        eval.run(pairs, |reader| {
            interface
                .into_iter()
                .map(|a| self.read_back(a, reader))
                .collect()
        })
    }
}

/// Pops the next checked auxiliary agent, typed.
pub fn next_aux<V: ValueType, P: Polarity>(aux: &mut std::vec::IntoIter<DynAgent>) -> Agent<V, P> {
    aux.next()
        .expect("aux count checked against the signature")
        .into_typed()
}

/// Shorthand for wrapping typed constructors in builders.
pub fn pos<V: ValueType>(a: Agent<V, Pos>) -> DynAgent {
    DynAgent::new(a)
}

pub fn neg<V: ValueType>(a: Agent<V, Neg>) -> DynAgent {
    DynAgent::new(a)
}
