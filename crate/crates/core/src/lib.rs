//! A typed interaction-net runtime.
//!
//! Agents are indexed by value type and polarity, so an active pair can only
//! be built between a positive and a negative agent of the same type. Names
//! are promise/resolver pairs; rules run on a worker pool (or sequentially)
//! and the per-rule interaction counts come back with the result.
//!
//! ```
//! use inet_core::{systems, Evaluator, WorkerPool};
//!
//! let pool = WorkerPool::new(2).unwrap();
//! let eval = Evaluator::parallel(&pool);
//! assert_eq!(systems::fib_net(20, &eval, systems::DEFAULT_CUTOFF).unwrap(), 6765);
//! ```

pub mod dynamic;
pub mod engine;
pub mod net;
pub mod reference;
pub mod scheduler;
pub mod systems;

pub use engine::{
    ActivePair, Evaluator, InitialNet, InteractionStats, Mode, Net, Normalized, RuleCtx, RuleLabel,
    Rules,
};
pub use net::{new_name, Agent, Neg, NetError, Polarity, PortType, Pos, ReadBack, ValueType};
pub use scheduler::{create_pool, PoolError, Promise, Resolver, WorkerPool};
