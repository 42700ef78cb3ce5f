//! Independent oracles and the single-threaded evaluator used as the
//! correctness baseline.
//!
//! The sequential evaluator runs the very same rule arms as the parallel
//! one; only the executor differs (a FIFO queue drained on the calling
//! thread, names resolved by direct continuation calls).

use crate::engine::{Evaluator, InitialNet, Normalized, RuleLabel};
use crate::net::{NetError, ReadBack};

/// Iterative two-accumulator Fibonacci, `fib(0) = 0`, `fib(1) = 1`.
pub fn fib_oracle(n: i64) -> Result<i64, NetError> {
    if n < 0 {
        return Err(NetError::InvalidInput(format!(
            "Fibonacci input must be nonnegative, got {n}"
        )));
    }
    if n == 0 {
        return Ok(0);
    }
    let (mut a, mut b) = (0i64, 1i64);
    for _ in 1..n {
        let next = a
            .checked_add(b)
            .ok_or_else(|| NetError::InvalidInput(format!("fib({n}) overflows i64")))?;
        a = b;
        b = next;
    }
    Ok(b)
}

/// Ascending sort by the standard library.
pub fn sort_oracle(xs: &[i64]) -> Vec<i64> {
    let mut v = xs.to_vec();
    v.sort();
    v
}

/// Reduces `net` on the calling thread with a FIFO queue of active pairs.
pub fn reduce_sequential<L: RuleLabel, V: ReadBack>(
    net: InitialNet<L, V>,
) -> Result<Normalized<Vec<V::Value>>, NetError> {
    Evaluator::sequential().reduce(net)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fib_oracle_values() {
        assert_eq!(fib_oracle(0), Ok(0));
        assert_eq!(fib_oracle(1), Ok(1));
        assert_eq!(fib_oracle(2), Ok(1));
        assert_eq!(fib_oracle(20), Ok(6765));
        assert_eq!(fib_oracle(92), Ok(7_540_113_804_746_346_429));
        assert!(fib_oracle(93).is_err());
        assert!(matches!(fib_oracle(-1), Err(NetError::InvalidInput(_))));
    }

    #[test]
    fn fib_oracle_matches_recurrence() {
        for n in 2..60 {
            assert_eq!(
                fib_oracle(n).unwrap(),
                fib_oracle(n - 1).unwrap() + fib_oracle(n - 2).unwrap()
            );
        }
    }

    #[test]
    fn sort_oracle_basics() {
        assert_eq!(sort_oracle(&[]), Vec::<i64>::new());
        assert_eq!(sort_oracle(&[2, 1]), vec![1, 2]);
        let xs = crate::systems::seeded_list(500, 3);
        let sorted = sort_oracle(&xs);
        assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
        let mut a = xs.clone();
        let mut b = sorted.clone();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }
}
