//! Worker pool and single-assignment promise/resolver cells.
//!
//! The API mirrors a minimal futures library: [`create_pool`], [`make_future`],
//! [`resolve`], [`await_then`], [`block`] and [`run_async`].
//!
//! `await` never parks a worker. An unresolved promise stores the rest of the
//! caller's work as a continuation, and [`Resolver::resolve`] schedules it back
//! onto the pool. A pool of `n` workers therefore cannot deadlock on `n`
//! outstanding awaits.

use std::cell::Cell as StdCell;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Condvar, Mutex, MutexGuard, OnceLock};
use std::thread::{self, JoinHandle};

use crossbeam_channel::{Receiver, Sender};

/// Environment variable holding the default worker count.
pub const POOL_SIZE_ENV: &str = "INET_POOL_SIZE";

const WORKER_STACK: usize = 16 << 20;

pub type Task = Box<dyn FnOnce() + Send + 'static>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PoolError {
    #[error("pool size must be at least 1, got {0}")]
    InvalidSize(usize),
    #[error("{POOL_SIZE_ENV} must be a positive decimal integer, got {0:?}")]
    InvalidEnv(String),
    #[error("failed to spawn worker thread: {0}")]
    Spawn(String),
}

/// The resolver was dropped before it produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("promise abandoned: its resolver was dropped without resolving")]
pub struct Abandoned;

static NEXT_POOL_ID: AtomicUsize = AtomicUsize::new(1);

thread_local! {
    static CURRENT_POOL: StdCell<usize> = const { StdCell::new(0) };
}

/// Returns true when the calling thread is a worker of any pool.
pub fn on_worker() -> bool {
    CURRENT_POOL.with(|c| c.get() != 0)
}

enum Message {
    Run(Task),
    Stop,
}

/// A fixed-size pool of worker threads consuming a shared FIFO queue.
///
/// Dropping the pool stops the workers after they drain the tasks queued
/// before the drop; anything enqueued afterwards is discarded.
pub struct WorkerPool {
    handle: PoolHandle,
    rx: Receiver<Message>,
    workers: Vec<JoinHandle<()>>,
    panics: Arc<AtomicUsize>,
}

/// A cloneable submission handle for a [`WorkerPool`].
#[derive(Clone)]
pub struct PoolHandle {
    tx: Sender<Message>,
    id: usize,
}

/// Creates a pool with `n` workers.
pub fn create_pool(n: usize) -> Result<WorkerPool, PoolError> {
    WorkerPool::new(n)
}

/// Worker count from `INET_POOL_SIZE`, or the number of hardware execution
/// units when the variable is unset.
pub fn default_pool_size() -> Result<usize, PoolError> {
    match std::env::var(POOL_SIZE_ENV) {
        Ok(raw) => parse_pool_size(&raw),
        Err(_) => Ok(thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn parse_pool_size(raw: &str) -> Result<usize, PoolError> {
    match raw.trim().parse::<usize>() {
        Ok(0) => Err(PoolError::InvalidSize(0)),
        Ok(n) => Ok(n),
        Err(_) => Err(PoolError::InvalidEnv(raw.to_owned())),
    }
}

impl WorkerPool {
    pub fn new(n: usize) -> Result<Self, PoolError> {
        if n == 0 {
            return Err(PoolError::InvalidSize(n));
        }
        let (tx, rx) = crossbeam_channel::unbounded::<Message>();
        let id = NEXT_POOL_ID.fetch_add(1, Ordering::Relaxed);
        let panics = Arc::new(AtomicUsize::new(0));
        let mut workers = Vec::with_capacity(n);
        for i in 0..n {
            let rx = rx.clone();
            let panics = Arc::clone(&panics);
            let worker = thread::Builder::new()
                .name(format!("inet-pool{id}-{i}"))
                .stack_size(WORKER_STACK)
                .spawn(move || worker_loop(id, rx, panics))
                .map_err(|e| PoolError::Spawn(e.to_string()))?;
            workers.push(worker);
        }
        Ok(WorkerPool {
            handle: PoolHandle { tx, id },
            rx,
            workers,
            panics,
        })
    }

    /// Pool sized by [`default_pool_size`].
    pub fn with_default_size() -> Result<Self, PoolError> {
        Self::new(default_pool_size()?)
    }

    pub fn size(&self) -> usize {
        self.workers.len()
    }

    pub fn handle(&self) -> &PoolHandle {
        &self.handle
    }

    pub fn run_async(&self, task: impl FnOnce() + Send + 'static) {
        self.handle.run_async(task);
    }

    /// Number of tasks that panicked on this pool's workers so far.
    pub fn panicked_tasks(&self) -> usize {
        self.panics.load(Ordering::Acquire)
    }

    /// Stops the workers after the currently queued tasks and waits for them.
    pub fn join(mut self) {
        self.shutdown();
    }

    fn shutdown(&mut self) {
        if self.workers.is_empty() {
            return;
        }
        for _ in 0..self.workers.len() {
            let _ = self.handle.tx.send(Message::Stop);
        }
        for w in self.workers.drain(..) {
            let _ = w.join();
        }
        // Tasks queued after the stop messages never run. Dropping them here
        // releases the handles they captured so the channel can be freed.
        while let Ok(msg) = self.rx.try_recv() {
            drop(msg);
        }
    }
}

impl Drop for WorkerPool {
    fn drop(&mut self) {
        self.shutdown();
    }
}

impl fmt::Debug for WorkerPool {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WorkerPool")
            .field("id", &self.handle.id)
            .field("workers", &self.workers.len())
            .finish()
    }
}

fn worker_loop(id: usize, rx: Receiver<Message>, panics: Arc<AtomicUsize>) {
    CURRENT_POOL.with(|c| c.set(id));
    while let Ok(msg) = rx.recv() {
        match msg {
            Message::Run(task) => {
                // A panicking task must not take the worker down with it; the
                // resolvers it owned are dropped during unwinding, which
                // abandons their cells and unblocks any driver waiting on them.
                if std::panic::catch_unwind(std::panic::AssertUnwindSafe(task)).is_err() {
                    panics.fetch_add(1, Ordering::AcqRel);
                }
            }
            Message::Stop => break,
        }
    }
}

impl PoolHandle {
    /// Enqueues `task`; it runs exactly once on some worker. Tasks submitted
    /// after the pool shut down are dropped.
    pub fn run_async(&self, task: impl FnOnce() + Send + 'static) {
        let _ = self.tx.send(Message::Run(Box::new(task)));
    }

    /// True when the calling thread is one of this pool's workers.
    pub fn is_current(&self) -> bool {
        CURRENT_POOL.with(|c| c.get() == self.id)
    }
}

impl fmt::Debug for PoolHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PoolHandle").field("id", &self.id).finish()
    }
}

/// Enqueues `task` on `pool`.
pub fn run_async(pool: &PoolHandle, task: impl FnOnce() + Send + 'static) {
    pool.run_async(task);
}

// ---------------------------------------------------------------------------
// Promise / resolver
// ---------------------------------------------------------------------------

type Waiter<T> = Box<dyn FnOnce(T) + Send + 'static>;

enum State<T> {
    Pending(Vec<Waiter<T>>),
    /// `None` once a non-cloneable value has been taken by its only reader.
    Resolved(Option<T>),
    Abandoned,
}

struct Shared<T> {
    state: Mutex<State<T>>,
    ready: Condvar,
    /// Set the first time a promise handle is cloned; only then can a cell
    /// have more than one reader.
    cloner: OnceLock<fn(&T) -> T>,
}

impl<T> Shared<T> {
    fn lock(&self) -> MutexGuard<'_, State<T>> {
        // Waiters run outside the lock, so a poisoned mutex only means a
        // panic happened between two plain state transitions.
        self.state.lock().unwrap_or_else(|e| e.into_inner())
    }

    fn hand_out(&self, slot: &mut Option<T>) -> Option<T> {
        match self.cloner.get() {
            Some(clone) => slot.as_ref().map(clone),
            None => slot.take(),
        }
    }
}

/// Read end of a single-assignment cell.
pub struct Promise<T> {
    shared: Arc<Shared<T>>,
}

/// Write end of a single-assignment cell. Dropping it without resolving
/// abandons the cell: blocked readers wake with [`Abandoned`] and registered
/// continuations are dropped unrun.
pub struct Resolver<T> {
    shared: Arc<Shared<T>>,
}

/// Creates a fresh empty cell and returns both of its ends.
pub fn make_future<T>() -> (Promise<T>, Resolver<T>) {
    let shared = Arc::new(Shared {
        state: Mutex::new(State::Pending(Vec::new())),
        ready: Condvar::new(),
        cloner: OnceLock::new(),
    });
    (
        Promise {
            shared: Arc::clone(&shared),
        },
        Resolver { shared },
    )
}

/// Resolves the cell behind `r`. Panics if it was already resolved.
pub fn resolve<T>(r: &Resolver<T>, value: T) {
    r.resolve(value);
}

/// Continuation-style await on `pool`; see [`Promise::await_then`].
pub fn await_then<T: Send + 'static>(
    p: Promise<T>,
    pool: &PoolHandle,
    k: impl FnOnce(T) + Send + 'static,
) {
    p.await_then(pool, k);
}

/// Parks the calling thread until `p` is resolved; see [`Promise::block`].
pub fn block<T>(p: Promise<T>) -> Result<T, Abandoned> {
    p.block()
}

impl<T> Promise<T> {
    /// Runs `k` with the value: immediately on the calling thread if the cell
    /// is already resolved, otherwise on whichever thread later resolves it.
    /// If the cell is abandoned, `k` is dropped without running.
    pub fn on_resolve(self, k: impl FnOnce(T) + Send + 'static) {
        let mut state = self.shared.lock();
        match &mut *state {
            State::Pending(waiters) => waiters.push(Box::new(k)),
            State::Resolved(slot) => {
                let value = self.shared.hand_out(slot);
                drop(state);
                k(value.expect("resolved value already taken"));
            }
            State::Abandoned => {}
        }
    }

    /// Continuation-style await. If the value is present `k` runs now;
    /// otherwise `k` is registered and, once the cell resolves, enqueued on
    /// `pool`. The calling worker is never held.
    pub fn await_then(self, pool: &PoolHandle, k: impl FnOnce(T) + Send + 'static)
    where
        T: Send + 'static,
    {
        let mut state = self.shared.lock();
        match &mut *state {
            State::Pending(waiters) => {
                let pool = pool.clone();
                waiters.push(Box::new(move |v| pool.run_async(move || k(v))));
            }
            State::Resolved(slot) => {
                let value = self.shared.hand_out(slot);
                drop(state);
                k(value.expect("resolved value already taken"));
            }
            State::Abandoned => {}
        }
    }

    /// Parks the calling thread until the cell is resolved.
    ///
    /// Must be called from outside the pool; a worker parked here is lost to
    /// every other task. Calling it from a pool worker panics.
    pub fn block(self) -> Result<T, Abandoned> {
        assert!(
            !on_worker(),
            "Promise::block called from a pool worker; use await_then instead"
        );
        let mut state = self.shared.lock();
        loop {
            match &mut *state {
                State::Pending(_) => {
                    state = self
                        .shared
                        .ready
                        .wait(state)
                        .unwrap_or_else(|e| e.into_inner());
                }
                State::Resolved(slot) => {
                    return Ok(self
                        .shared
                        .hand_out(slot)
                        .expect("resolved value already taken"))
                }
                State::Abandoned => return Err(Abandoned),
            }
        }
    }

    /// Takes the value without waiting. Returns the promise back if the cell
    /// is still pending.
    pub fn try_take(self) -> Result<Result<T, Abandoned>, Promise<T>> {
        let mut state = self.shared.lock();
        match &mut *state {
            State::Pending(_) => {
                drop(state);
                Err(self)
            }
            State::Resolved(slot) => Ok(Ok(self
                .shared
                .hand_out(slot)
                .expect("resolved value already taken"))),
            State::Abandoned => Ok(Err(Abandoned)),
        }
    }

    pub fn is_resolved(&self) -> bool {
        matches!(&*self.shared.lock(), State::Resolved(_))
    }

    /// Identity of the underlying cell, shared with its resolver.
    pub fn cell_id(&self) -> usize {
        Arc::as_ptr(&self.shared) as *const () as usize
    }
}

impl<T: Clone> Clone for Promise<T> {
    fn clone(&self) -> Self {
        let _ = self.shared.cloner.set(T::clone);
        Promise {
            shared: Arc::clone(&self.shared),
        }
    }
}

impl<T> Resolver<T> {
    /// Stores `value` and hands it to every registered continuation.
    ///
    /// Panics if the cell was already resolved: a second resolution is a
    /// programming error and is never silently ignored.
    pub fn resolve(&self, value: T) {
        if self.try_resolve(value).is_err() {
            panic!("single-assignment cell resolved twice");
        }
    }

    /// Like [`Resolver::resolve`] but hands the value back instead of
    /// panicking when the cell is already resolved.
    pub fn try_resolve(&self, value: T) -> Result<(), T> {
        let mut state = self.shared.lock();
        let waiters = match &mut *state {
            State::Pending(waiters) => std::mem::take(waiters),
            State::Resolved(_) | State::Abandoned => return Err(value),
        };
        if waiters.is_empty() {
            *state = State::Resolved(Some(value));
            drop(state);
            self.shared.ready.notify_all();
            return Ok(());
        }
        let mut slot = Some(value);
        let mut values = Vec::with_capacity(waiters.len());
        for _ in 1..waiters.len() {
            let clone = self
                .shared
                .cloner
                .get()
                .expect("several waiters on a promise that was never cloned");
            values.push(clone(slot.as_ref().unwrap()));
        }
        // The last waiter receives the original; later readers (possible only
        // through cloned handles) get clones of the retained copy.
        if self.shared.cloner.get().is_some() {
            values.push(clone_with(&self.shared, &slot));
            *state = State::Resolved(slot);
        } else {
            values.push(slot.take().unwrap());
            *state = State::Resolved(None);
        }
        drop(state);
        self.shared.ready.notify_all();
        for (waiter, v) in waiters.into_iter().zip(values) {
            waiter(v);
        }
        Ok(())
    }

    pub fn is_resolved(&self) -> bool {
        matches!(&*self.shared.lock(), State::Resolved(_))
    }

    pub fn cell_id(&self) -> usize {
        Arc::as_ptr(&self.shared) as *const () as usize
    }
}

fn clone_with<T>(shared: &Shared<T>, slot: &Option<T>) -> T {
    (shared.cloner.get().unwrap())(slot.as_ref().unwrap())
}

impl<T> Drop for Resolver<T> {
    fn drop(&mut self) {
        let mut state = self.shared.lock();
        if let State::Pending(waiters) = &mut *state {
            let waiters = std::mem::take(waiters);
            *state = State::Abandoned;
            drop(state);
            self.shared.ready.notify_all();
            drop(waiters);
        }
    }
}

impl<T> fmt::Debug for Promise<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Promise")
            .field("resolved", &self.is_resolved())
            .finish()
    }
}

impl<T> fmt::Debug for Resolver<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Resolver")
            .field("resolved", &self.is_resolved())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::AtomicU64;
    use std::time::Duration;

    #[test]
    fn zero_workers_is_rejected() {
        assert_eq!(create_pool(0).unwrap_err(), PoolError::InvalidSize(0));
    }

    #[test]
    fn pool_size_env_parsing() {
        assert_eq!(parse_pool_size("4"), Ok(4));
        assert_eq!(parse_pool_size(" 2\n"), Ok(2));
        assert_eq!(parse_pool_size("0"), Err(PoolError::InvalidSize(0)));
        assert!(matches!(
            parse_pool_size("four"),
            Err(PoolError::InvalidEnv(_))
        ));
        assert!(matches!(
            parse_pool_size("-1"),
            Err(PoolError::InvalidEnv(_))
        ));
    }

    #[test]
    fn counter_matches_serial_loop() {
        let pool = create_pool(8).unwrap();
        let counter = Arc::new(AtomicU64::new(0));
        for _ in 0..1000 {
            let c = Arc::clone(&counter);
            pool.run_async(move || {
                c.fetch_add(1, Ordering::Relaxed);
            });
        }
        pool.join();
        let mut serial = 0u64;
        for _ in 0..1000 {
            serial += 1;
        }
        assert_eq!(counter.load(Ordering::Relaxed), serial);
    }

    #[test]
    fn single_worker_runs_serially() {
        let pool = create_pool(1).unwrap();
        let log = Arc::new(Mutex::new(Vec::new()));
        for i in 0..50 {
            let log = Arc::clone(&log);
            pool.run_async(move || log.lock().unwrap().push(i));
        }
        pool.join();
        assert_eq!(*log.lock().unwrap(), (0..50).collect::<Vec<_>>());
    }

    #[test]
    fn reentrant_run_async() {
        let pool = create_pool(2).unwrap();
        let (p, r) = make_future::<&str>();
        let h = pool.handle().clone();
        pool.run_async(move || {
            h.run_async(move || r.resolve("inner"));
        });
        assert_eq!(p.block(), Ok("inner"));
    }

    #[test]
    fn resolve_then_block() {
        let (p, r) = make_future();
        resolve(&r, 5);
        assert_eq!(block(p), Ok(5));
    }

    #[test]
    fn fresh_cells_do_not_alias() {
        let (p1, r1) = make_future::<u8>();
        let (p2, _r2) = make_future::<u8>();
        r1.resolve(1);
        assert!(p1.is_resolved());
        assert!(!p2.is_resolved());
        assert_ne!(p1.cell_id(), p2.cell_id());
        assert_eq!(p1.cell_id(), r1.cell_id());
    }

    #[test]
    #[should_panic(expected = "resolved twice")]
    fn double_resolve_panics() {
        let (_p, r) = make_future();
        r.resolve(1);
        r.resolve(2);
    }

    #[test]
    fn double_resolve_keeps_first_value() {
        let (p, r) = make_future();
        r.resolve(1);
        assert_eq!(r.try_resolve(2), Err(2));
        assert_eq!(p.block(), Ok(1));
    }

    #[test]
    fn fan_out_to_three_awaiters() {
        let (p, r) = make_future::<u32>();
        let seen = Arc::new(Mutex::new(Vec::new()));
        for tag in 0..3 {
            let seen = Arc::clone(&seen);
            p.clone()
                .on_resolve(move |v| seen.lock().unwrap().push((tag, v)));
        }
        r.resolve(9);
        let mut seen = seen.lock().unwrap().clone();
        seen.sort();
        assert_eq!(seen, vec![(0, 9), (1, 9), (2, 9)]);
        // A late reader still observes the value.
        assert_eq!(p.block(), Ok(9));
    }

    #[test]
    fn await_on_resolved_runs_inline() {
        let pool = create_pool(1).unwrap();
        let (p, r) = make_future();
        r.resolve(7);
        let got = Arc::new(AtomicU64::new(0));
        let g = Arc::clone(&got);
        p.await_then(pool.handle(), move |v| g.store(v, Ordering::SeqCst));
        // Ran on this thread without touching the pool.
        assert_eq!(got.load(Ordering::SeqCst), 7);
    }

    #[test]
    fn blocked_driver_wakes_on_background_resolve() {
        let (p, r) = make_future::<String>();
        let t = thread::spawn(move || {
            thread::sleep(Duration::from_millis(10));
            r.resolve("x".to_owned());
        });
        assert_eq!(p.block().as_deref(), Ok("x"));
        t.join().unwrap();
    }

    #[test]
    fn dropped_resolver_abandons() {
        let (p, r) = make_future::<u8>();
        let ran = Arc::new(AtomicU64::new(0));
        let (p2, r2) = make_future::<u8>();
        let ran2 = Arc::clone(&ran);
        p2.on_resolve(move |_| {
            ran2.fetch_add(1, Ordering::SeqCst);
        });
        drop(r);
        drop(r2);
        assert_eq!(p.block(), Err(Abandoned));
        assert_eq!(ran.load(Ordering::SeqCst), 0);
    }

    #[test]
    fn single_worker_await_then_resolve_completes() {
        let pool = create_pool(1).unwrap();
        let (p, r) = make_future::<u32>();
        let (done_p, done_r) = make_future::<u32>();
        let h = pool.handle().clone();
        // Task A awaits p; task B resolves it afterwards on the same worker.
        pool.run_async(move || p.await_then(&h, move |v| done_r.resolve(v + 1)));
        pool.run_async(move || r.resolve(41));
        assert_eq!(done_p.block(), Ok(42));
    }

    #[test]
    #[should_panic(expected = "from a pool worker")]
    fn block_inside_worker_is_detected() {
        let pool = create_pool(1).unwrap();
        let (p, r) = make_future::<Result<(), String>>();
        pool.run_async(move || {
            let (inner, _keep) = make_future::<u8>();
            let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
                let _ = inner.block();
            }));
            r.resolve(outcome.map_err(|e| {
                e.downcast_ref::<&str>()
                    .map(|s| s.to_string())
                    .or_else(|| e.downcast_ref::<String>().cloned())
                    .unwrap_or_default()
            }));
        });
        if let Err(msg) = p.block().unwrap() {
            panic!("{msg}");
        }
    }

    #[test]
    fn panicking_task_does_not_kill_worker() {
        let pool = create_pool(1).unwrap();
        let (p, r) = make_future::<u8>();
        pool.run_async(|| panic!("boom"));
        pool.run_async(move || r.resolve(3));
        assert_eq!(p.block(), Ok(3));
        assert_eq!(pool.panicked_tasks(), 1);
    }
}
