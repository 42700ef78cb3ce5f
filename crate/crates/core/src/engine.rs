//! Rule dispatch on active pairs and the evaluators that drive it.
//!
//! [`apply_rule`] takes a positive and a negative agent of the same value
//! type. Name agents are handled here, once for every system:
//!
//! * `NamePos p ⋈ a`: wait for `p`, then interact its value with `a`.
//! * `a ⋈ NameNeg r`: resolve `r` with `a`.
//!
//! Every other pair is two symbols, and goes to the system's
//! [`Rules::apply`]. That function matches on the two symbol enums without a
//! catch-all arm, so the compiler proves every well-typed pair has a rule.
//!
//! Only one orientation is expressible: the positive agent always comes
//! first. The dynamically checked entry point in [`crate::dynamic`] accepts
//! both orientations and swaps as needed.

use std::cell::RefCell;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Condvar, Mutex};

use crate::net::{Agent, Neg, NetError, Node, Pos, ReadBack, Reader, ValueType};
use crate::scheduler::{PoolHandle, WorkerPool};

/// Default number of consecutive rule applications a worker runs inline
/// before handing every new pair to the queue.
pub const DEFAULT_INLINE_BUDGET: usize = 512;

/// The rule labels of one interaction system, used as stat counter keys.
pub trait RuleLabel: Copy + Send + Sync + 'static {
    const ALL: &'static [Self];
    fn index(self) -> usize;
    fn name(self) -> &'static str;
}

/// The rules whose active pairs have principal ports of value type `Self`.
pub trait Rules: ValueType {
    type Label: RuleLabel;

    /// Fires the rule for one active pair of symbols and returns its label.
    /// New active pairs go through [`RuleCtx::interact`].
    fn apply(pos: Self::PosSym, neg: Self::NegSym, cx: &RuleCtx<'_, Self::Label>) -> Self::Label;
}

type Job<L> = Box<dyn FnOnce(&RuleCtx<'_, L>) + Send + 'static>;

/// Handle given to rule bodies while one job runs.
pub struct RuleCtx<'n, L: RuleLabel> {
    net: &'n Net<L>,
    pending: RefCell<Vec<Job<L>>>,
}

impl<'n, L: RuleLabel> RuleCtx<'n, L> {
    fn new(net: &'n Net<L>) -> Self {
        RuleCtx {
            net,
            pending: RefCell::new(Vec::new()),
        }
    }

    /// The `⋈` operator: schedules `apply_rule(a, b)`.
    pub fn interact<V: Rules<Label = L>>(&self, a: Agent<V, Pos>, b: Agent<V, Neg>) {
        self.pending
            .borrow_mut()
            .push(Box::new(move |cx: &RuleCtx<'_, L>| apply_rule(a, b, cx)));
    }

    pub fn net(&self) -> &'n Net<L> {
        self.net
    }
}

/// Applies the single rule matching an active pair.
pub fn apply_rule<V: Rules>(a: Agent<V, Pos>, b: Agent<V, Neg>, cx: &RuleCtx<'_, V::Label>) {
    match (a, b) {
        (Agent::Name(p), b) => {
            cx.net.inner.counters.bump(NAME_POS_SLOT);
            match p.try_take() {
                Ok(Ok(v)) => cx.interact(v, b),
                // The producer was discarded, so `b` can never fire.
                Ok(Err(_)) => drop(b),
                Err(p) => {
                    let net = cx.net.clone();
                    p.on_resolve(move |v| net.interact(v, b));
                }
            }
        }
        (a, Agent::Name(r)) => {
            cx.net.inner.counters.bump(NAME_NEG_SLOT);
            r.resolve(a);
        }
        (Agent::Sym(x), Agent::Sym(y)) => {
            let label = V::apply(*x, *y, cx);
            cx.net.inner.counters.bump(FIRST_RULE_SLOT + label.index());
        }
    }
}

/// Drops a subnet. Memory is reclaimed by ownership; name cells inside it
/// are released without being resolved.
pub fn discard<T>(subnet: T) {
    drop(subnet);
}

// ---------------------------------------------------------------------------
// Stats
// ---------------------------------------------------------------------------

const NAME_POS_SLOT: usize = 0;
const NAME_NEG_SLOT: usize = 1;
const FIRST_RULE_SLOT: usize = 2;
/// Label of the `NamePos` arm in stats dumps.
pub const NAME_POS_LABEL: &str = "NamePos";
/// Label of the `NameNeg` arm in stats dumps.
pub const NAME_NEG_LABEL: &str = "NameNeg";

const SHARDS: usize = 16;

static NEXT_SHARD: AtomicUsize = AtomicUsize::new(0);

thread_local! {
    static SHARD: usize = NEXT_SHARD.fetch_add(1, Ordering::Relaxed) % SHARDS;
}

/// Per-rule firing counters, sharded by thread to keep workers off each
/// other's cache lines.
struct Counters {
    shards: Vec<Box<[AtomicU64]>>,
}

impl Counters {
    fn new(slots: usize) -> Self {
        Counters {
            shards: (0..SHARDS)
                .map(|_| (0..slots).map(|_| AtomicU64::new(0)).collect())
                .collect(),
        }
    }

    fn bump(&self, slot: usize) {
        let shard = SHARD.with(|s| *s);
        self.shards[shard][slot].fetch_add(1, Ordering::Relaxed);
    }

    fn total(&self, slot: usize) -> u64 {
        self.shards
            .iter()
            .map(|s| s[slot].load(Ordering::Relaxed))
            .sum()
    }
}

/// Firing counts per rule label. Labels that never fired are omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InteractionStats {
    counts: BTreeMap<&'static str, u64>,
}

impl InteractionStats {
    pub fn get(&self, label: &str) -> u64 {
        self.counts.get(label).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, u64)> + '_ {
        self.counts.iter().map(|(k, v)| (*k, *v))
    }

    /// Sum of two snapshots.
    pub fn merged(mut self, other: &InteractionStats) -> Self {
        for (k, v) in other.iter() {
            *self.counts.entry(k).or_insert(0) += v;
        }
        self
    }
}

/// One `label<TAB>count` line per label, sorted by label.
impl fmt::Display for InteractionStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (label, count) in &self.counts {
            writeln!(f, "{label}\t{count}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Net
// ---------------------------------------------------------------------------

/// How a net is reduced.
#[derive(Clone, Copy, Debug)]
pub enum Mode<'a> {
    /// Rule applications run as tasks on a worker pool.
    Parallel(&'a WorkerPool),
    /// A single-threaded FIFO queue drained on the calling thread.
    Sequential,
}

enum Exec<L: RuleLabel> {
    Pool(PoolHandle),
    Queue(Mutex<VecDeque<Job<L>>>),
}

struct Inner<L: RuleLabel> {
    exec: Exec<L>,
    counters: Counters,
    inline_budget: usize,
    /// Jobs handed to the pool and not yet finished. Only used to know when
    /// the stat counters are final.
    outstanding: AtomicUsize,
    idle_lock: Mutex<()>,
    idle: Condvar,
}

/// A net under reduction: the executor its rules run on plus its counters.
pub struct Net<L: RuleLabel> {
    inner: Arc<Inner<L>>,
}

impl<L: RuleLabel> Clone for Net<L> {
    fn clone(&self) -> Self {
        Net {
            inner: Arc::clone(&self.inner),
        }
    }
}

impl<L: RuleLabel> Net<L> {
    fn with_exec(exec: Exec<L>, inline_budget: usize) -> Self {
        Net {
            inner: Arc::new(Inner {
                exec,
                counters: Counters::new(FIRST_RULE_SLOT + L::ALL.len()),
                inline_budget,
                outstanding: AtomicUsize::new(0),
                idle_lock: Mutex::new(()),
                idle: Condvar::new(),
            }),
        }
    }

    /// A net reduced on `pool`.
    pub fn parallel(pool: &PoolHandle, inline_budget: usize) -> Self {
        Self::with_exec(Exec::Pool(pool.clone()), inline_budget)
    }

    /// A net reduced by [`Net::run_until_quiescent`] on the calling thread.
    pub fn sequential() -> Self {
        Self::with_exec(Exec::Queue(Mutex::new(VecDeque::new())), 0)
    }

    pub fn for_mode(mode: Mode<'_>, inline_budget: usize) -> Self {
        match mode {
            Mode::Parallel(pool) => Self::parallel(pool.handle(), inline_budget),
            Mode::Sequential => Self::sequential(),
        }
    }

    /// Schedules `apply_rule(a, b)` from outside a rule body.
    pub fn interact<V: Rules<Label = L>>(&self, a: Agent<V, Pos>, b: Agent<V, Neg>) {
        self.submit(Box::new(move |cx: &RuleCtx<'_, L>| apply_rule(a, b, cx)));
    }

    fn submit(&self, job: Job<L>) {
        match &self.inner.exec {
            Exec::Pool(pool) => {
                self.inner.outstanding.fetch_add(1, Ordering::AcqRel);
                let net = self.clone();
                pool.run_async(move || net.run_on_worker(job));
            }
            Exec::Queue(q) => lock(q).push_back(job),
        }
    }

    /// Runs a job and then keeps going with the last pair it created, up to
    /// the inline budget; the other new pairs go back to the pool. The loop
    /// replaces recursion, so the budget bounds latency, not stack depth.
    fn run_on_worker(&self, job: Job<L>) {
        let _done = FinishGuard(self);
        let cx = RuleCtx::new(self);
        let mut next = Some(job);
        let mut streak = 0;
        while let Some(job) = next.take() {
            job(&cx);
            let mut pending = cx.pending.take();
            if streak < self.inner.inline_budget {
                next = pending.pop();
                streak += 1;
            }
            for j in pending {
                self.submit(j);
            }
        }
    }

    fn finish_one(&self) {
        if self.inner.outstanding.fetch_sub(1, Ordering::AcqRel) == 1 {
            let _g = lock(&self.inner.idle_lock);
            self.inner.idle.notify_all();
        }
    }

    /// Waits until no job of this net is queued or running.
    ///
    /// In parallel mode this is the point where the stat counters are final.
    /// In sequential mode it drains the queue on the calling thread.
    pub fn run_until_quiescent(&self) {
        match &self.inner.exec {
            Exec::Pool(_) => {
                let mut g = lock(&self.inner.idle_lock);
                while self.inner.outstanding.load(Ordering::Acquire) > 0 {
                    g = self.inner.idle.wait(g).unwrap_or_else(|e| e.into_inner());
                }
            }
            Exec::Queue(q) => loop {
                let Some(job) = lock(q).pop_front() else {
                    break;
                };
                let cx = RuleCtx::new(self);
                job(&cx);
                let pending = cx.pending.take();
                lock(q).extend(pending);
            },
        }
    }

    pub fn stats(&self) -> InteractionStats {
        let c = &self.inner.counters;
        let mut counts = BTreeMap::new();
        let named = [
            (NAME_POS_LABEL, NAME_POS_SLOT),
            (NAME_NEG_LABEL, NAME_NEG_SLOT),
        ];
        let rules = L::ALL
            .iter()
            .map(|l| (l.name(), FIRST_RULE_SLOT + l.index()));
        for (label, slot) in named.into_iter().chain(rules) {
            let n = c.total(slot);
            if n > 0 {
                counts.insert(label, n);
            }
        }
        InteractionStats { counts }
    }
}

struct FinishGuard<'a, L: RuleLabel>(&'a Net<L>);

impl<L: RuleLabel> Drop for FinishGuard<'_, L> {
    fn drop(&mut self) {
        self.0.finish_one();
    }
}

fn lock<T>(m: &Mutex<T>) -> std::sync::MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|e| e.into_inner())
}

// ---------------------------------------------------------------------------
// Active pairs and normalization
// ---------------------------------------------------------------------------

trait PairObj<L: RuleLabel>: Send {
    fn fire(self: Box<Self>, net: &Net<L>);
    fn nodes(&self) -> (&dyn Node, &dyn Node);
}

struct Typed<V: ValueType>(Agent<V, Pos>, Agent<V, Neg>);

impl<V: Rules> PairObj<V::Label> for Typed<V> {
    fn fire(self: Box<Self>, net: &Net<V::Label>) {
        let Typed(a, b) = *self;
        net.interact(a, b);
    }

    fn nodes(&self) -> (&dyn Node, &dyn Node) {
        (&self.0, &self.1)
    }
}

/// An initial active pair of any value type within one rule system.
pub struct ActivePair<L: RuleLabel> {
    inner: Box<dyn PairObj<L>>,
}

impl<L: RuleLabel> ActivePair<L> {
    pub fn new<V: Rules<Label = L>>(a: Agent<V, Pos>, b: Agent<V, Neg>) -> Self {
        ActivePair {
            inner: Box::new(Typed(a, b)),
        }
    }

    pub fn fire(self, net: &Net<L>) {
        self.inner.fire(net);
    }

    /// Both agents, for DOT snapshots.
    pub fn nodes(&self) -> (&dyn Node, &dyn Node) {
        self.inner.nodes()
    }
}

impl<L: RuleLabel> fmt::Debug for ActivePair<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.nodes();
        let label = |n: &dyn Node| match n.view() {
            crate::net::NodeView::Symbol { label, .. } => label,
            crate::net::NodeView::NamePos { .. } => NAME_POS_LABEL,
            crate::net::NodeView::NameNeg { .. } => NAME_NEG_LABEL,
        };
        write!(f, "ActivePair({} ⋈ {})", label(a), label(b))
    }
}

/// A net before reduction: its interface names plus its initial active pairs.
pub struct InitialNet<L: RuleLabel, V: ValueType> {
    pub interface: Vec<Agent<V, Pos>>,
    pub pairs: Vec<ActivePair<L>>,
}

impl<L: RuleLabel, V: ValueType> InitialNet<L, V> {
    /// A net with one interface name and one active pair.
    pub fn single(interface: Agent<V, Pos>, pair: ActivePair<L>) -> Self {
        InitialNet {
            interface: vec![interface],
            pairs: vec![pair],
        }
    }

    /// DOT snapshot of the unreduced net.
    pub fn to_dot(&self) -> String {
        let mut dot = crate::net::Dot::new();
        for p in &self.pairs {
            let (a, b) = p.nodes();
            dot = dot.pair(a, b);
        }
        for i in &self.interface {
            dot = dot.root(i);
        }
        dot.render()
    }
}

/// Result of a full reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized<T> {
    pub values: T,
    pub stats: InteractionStats,
}

/// Drives a net from its initial pairs to quiescence.
#[derive(Clone, Copy, Debug)]
pub struct Evaluator<'a> {
    mode: Mode<'a>,
    inline_budget: usize,
}

impl<'a> Evaluator<'a> {
    pub fn parallel(pool: &'a WorkerPool) -> Self {
        Evaluator {
            mode: Mode::Parallel(pool),
            inline_budget: DEFAULT_INLINE_BUDGET,
        }
    }

    pub fn sequential() -> Self {
        Evaluator {
            mode: Mode::Sequential,
            inline_budget: 0,
        }
    }

    pub fn with_inline_budget(mut self, budget: usize) -> Self {
        self.inline_budget = budget;
        self
    }

    pub fn mode(&self) -> Mode<'a> {
        self.mode
    }

    /// Fires `pairs`, waits for quiescence, then runs `observe` to read the
    /// interface. An interface name still unresolved at that point means the
    /// net is stuck and `observe` reports it.
    pub fn run<L: RuleLabel, T>(
        &self,
        pairs: Vec<ActivePair<L>>,
        observe: impl FnOnce(Reader) -> Result<T, NetError>,
    ) -> Result<Normalized<T>, NetError> {
        let net = Net::for_mode(self.mode, self.inline_budget);
        for pair in pairs {
            pair.fire(&net);
        }
        net.run_until_quiescent();
        let values = observe(Reader::Quiescent)?;
        Ok(Normalized {
            values,
            stats: net.stats(),
        })
    }

    /// Reduces `pairs` and reads back every interface agent.
    pub fn normalize<L: RuleLabel, V: ReadBack>(
        &self,
        interface: Vec<Agent<V, Pos>>,
        pairs: Vec<ActivePair<L>>,
    ) -> Result<Normalized<Vec<V::Value>>, NetError> {
        self.run(pairs, |reader| {
            interface
                .into_iter()
                .map(|a| crate::net::readback::read_back_with(a, reader))
                .collect()
        })
    }

    pub fn reduce<L: RuleLabel, V: ReadBack>(
        &self,
        net: InitialNet<L, V>,
    ) -> Result<Normalized<Vec<V::Value>>, NetError> {
        self.normalize(net.interface, net.pairs)
    }
}
