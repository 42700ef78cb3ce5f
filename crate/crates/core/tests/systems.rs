use inet_core::reference::{fib_oracle, sort_oracle};
use inet_core::systems::{
    self, arith, boolean, decode_list, encode_list, eval_and, fib_net, is_even, list,
    mergesort_net, quicksort_net, seeded_list, DEFAULT_CUTOFF,
};
use inet_core::{Evaluator, NetError, WorkerPool};
use proptest::prelude::*;

fn with_engines(mut f: impl FnMut(&Evaluator<'_>)) {
    f(&Evaluator::sequential());
    let pool = WorkerPool::new(4).unwrap();
    f(&Evaluator::parallel(&pool));
}

#[test]
fn conjunction_truth_table() {
    with_engines(|e| {
        assert!(eval_and(true, true, e).unwrap());
        assert!(!eval_and(false, true, e).unwrap());
        assert!(!eval_and(true, false, e).unwrap());
        assert!(!eval_and(false, false, e).unwrap());
    });
}

#[test]
fn if_selects_a_branch() {
    use boolean::{if_then_else, lit};
    use inet_core::{new_name, InitialNet};
    for (cond, then, otherwise) in [
        (true, true, false),
        (false, true, false),
        (false, false, true),
    ] {
        let (out, r) = new_name();
        let net = InitialNet::single(
            out,
            systems::ActivePair::new(lit(cond), if_then_else(r, lit(then), lit(otherwise))),
        );
        let got = Evaluator::sequential().reduce(net).unwrap();
        assert_eq!(got.values, vec![if cond { then } else { otherwise }]);
        let label = if cond { "T-If" } else { "F-If" };
        assert_eq!(got.stats.get(label), 1);
    }
}

#[test]
fn parity_examples() {
    with_engines(|e| {
        assert!(is_even(0, e).unwrap());
        assert!(!is_even(3, e).unwrap());
        assert!(is_even(-4, e).unwrap());
        assert!(!is_even(-3, e).unwrap());
        assert!(is_even(4, e).unwrap());
    });
}

#[test]
fn evens_never_reach_the_fall_through() {
    for n in -50..50 {
        let out = Evaluator::sequential()
            .reduce(arith::is_even_net(n))
            .unwrap();
        let even = n.rem_euclid(2) == 0;
        assert_eq!(out.values, vec![even]);
        assert_eq!(out.stats.get("Int-IsEven/even"), even as u64);
        assert_eq!(out.stats.get("Int-IsEven/odd"), !even as u64);
    }
}

#[test]
fn fibonacci_examples() {
    with_engines(|e| {
        for (n, want) in [(0, 0), (1, 1), (10, 55), (20, 6765), (25, 75025)] {
            assert_eq!(fib_net(n, e, DEFAULT_CUTOFF).unwrap(), want, "fib({n})");
            assert_eq!(fib_net(n, e, 0).unwrap(), want, "fib({n}) without cutoff");
        }
    });
}

#[test]
fn fibonacci_rejects_bad_input() {
    let e = Evaluator::sequential();
    assert!(matches!(
        fib_net(-1, &e, 20),
        Err(NetError::InvalidInput(_))
    ));
    assert!(matches!(
        fib_net(93, &e, 20),
        Err(NetError::InvalidInput(_))
    ));
    assert!(arith::fib_initial(92, DEFAULT_CUTOFF).is_ok());
}

#[test]
fn fibonacci_split_counts() {
    // Without a cutoff every k >= 2 splits once; fib(10) has fib(11) - 1
    // internal nodes in its call tree and fib(11) leaves.
    let out = Evaluator::sequential()
        .reduce(arith::fib_initial(10, 0).unwrap())
        .unwrap();
    assert_eq!(out.values, vec![55]);
    let splits = out.stats.get("Int-Fib/split");
    assert_eq!(splits, fib_oracle(11).unwrap() as u64 - 1);
    assert_eq!(
        out.stats.get("Int-Fib/base"),
        fib_oracle(11).unwrap() as u64
    );
    assert_eq!(out.stats.get("Int-AddStage1"), splits);
    assert_eq!(out.stats.get("Int-AddStage2"), splits);
}

#[test]
fn quicksort_examples() {
    with_engines(|e| {
        assert_eq!(quicksort_net(&[], e).unwrap(), Vec::<i64>::new());
        assert_eq!(quicksort_net(&[3, 1, 2], e).unwrap(), vec![1, 2, 3]);
        let xs = seeded_list(1000, 42);
        assert_eq!(quicksort_net(&xs, e).unwrap(), sort_oracle(&xs));
    });
}

#[test]
fn mergesort_examples() {
    with_engines(|e| {
        assert_eq!(mergesort_net(&[], e).unwrap(), Vec::<i64>::new());
        assert_eq!(mergesort_net(&[5, 5, 1], e).unwrap(), vec![1, 5, 5]);
        let xs = seeded_list(1000, 42);
        assert_eq!(mergesort_net(&xs, e).unwrap(), sort_oracle(&xs));
    });
}

#[test]
fn sorts_preserve_the_multiset() {
    let e = Evaluator::sequential();
    let xs = seeded_list(300, 9);
    let mut counted = std::collections::BTreeMap::new();
    for x in &xs {
        *counted.entry(*x).or_insert(0) += 1;
    }
    for out in [
        quicksort_net(&xs, &e).unwrap(),
        mergesort_net(&xs, &e).unwrap(),
    ] {
        let mut c = std::collections::BTreeMap::new();
        for x in &out {
            *c.entry(*x).or_insert(0) += 1;
        }
        assert_eq!(c, counted);
    }
}

#[test]
fn list_encoding_shapes() {
    use inet_core::net::{Node, NodeView};
    let describe = |xs: &[i64]| {
        let a = encode_list(xs);
        let mut labels = Vec::new();
        let mut node: &dyn Node = &a;
        loop {
            match node.view() {
                NodeView::Symbol { label, attrs, aux } => {
                    labels.push(format!("{label}{attrs:?}"));
                    match aux.first() {
                        Some(next) => node = *next,
                        None => break,
                    }
                }
                _ => panic!("name inside an encoded list"),
            }
        }
        labels
    };
    assert_eq!(describe(&[]), vec!["Nil[]"]);
    assert_eq!(describe(&[1, 2]), vec!["Cons[1]", "Cons[2]", "Nil[]"]);
}

#[test]
fn decode_waits_on_names_inside_a_list() {
    let (p, r) = inet_core::new_name();
    let xs = list::cons(1, p);
    let t = std::thread::spawn(move || {
        std::thread::sleep(std::time::Duration::from_millis(10));
        if let inet_core::Agent::Name(r) = r {
            r.resolve(list::nil());
        }
    });
    assert_eq!(decode_list(xs).unwrap(), vec![1]);
    t.join().unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn list_round_trip(xs in proptest::collection::vec(any::<i64>(), 0..200)) {
        prop_assert_eq!(decode_list(encode_list(&xs)).unwrap(), xs);
    }

    #[test]
    fn sorts_match_the_oracle(xs in proptest::collection::vec(-50i64..50, 0..120)) {
        let e = Evaluator::sequential();
        let want = sort_oracle(&xs);
        prop_assert_eq!(&quicksort_net(&xs, &e).unwrap(), &want);
        prop_assert_eq!(&mergesort_net(&xs, &e).unwrap(), &want);
    }
}
