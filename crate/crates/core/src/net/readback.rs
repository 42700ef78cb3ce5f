use super::{Agent, NetError, Pos, ValueType};

/// How name agents are forced during read-back.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reader {
    /// Park on unresolved names. Only valid outside the pool.
    Block,
    /// Treat an unresolved name as a stuck net. Used once the net is known
    /// to be quiescent.
    Quiescent,
}

/// Value types whose positive agents denote ground values.
pub trait ReadBack: ValueType {
    type Value;

    fn read_symbol(sym: Self::PosSym, reader: Reader) -> Result<Self::Value, NetError>;
}

/// Follows name agents until a symbol is reached.
pub fn force<V: ValueType>(
    mut agent: Agent<V, Pos>,
    reader: Reader,
) -> Result<V::PosSym, NetError> {
    loop {
        match agent {
            Agent::Sym(s) => return Ok(*s),
            Agent::Name(p) => {
                agent = match reader {
                    Reader::Block => p.block().map_err(|e| NetError::Stuck(e.to_string()))?,
                    Reader::Quiescent => match p.try_take() {
                        Ok(v) => v.map_err(|e| NetError::Stuck(e.to_string()))?,
                        Err(_) => {
                            return Err(NetError::Stuck(format!(
                                "unresolved {} name after quiescence",
                                V::NAME
                            )))
                        }
                    },
                }
            }
        }
    }
}

/// Reads back the ground value a positive agent denotes, waiting on names
/// as needed. Must be called from outside the pool.
pub fn read_back<V: ReadBack>(agent: Agent<V, Pos>) -> Result<V::Value, NetError> {
    read_back_with(agent, Reader::Block)
}

pub(crate) fn read_back_with<V: ReadBack>(
    agent: Agent<V, Pos>,
    reader: Reader,
) -> Result<V::Value, NetError> {
    V::read_symbol(force(agent, reader)?, reader)
}
