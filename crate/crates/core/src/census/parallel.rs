//! Strided row partitioning over scoped threads.

/// Folds rows `0..rows` into per-worker accumulators and merges them in
/// worker order. Worker `w` handles rows `w, w + workers, ...`, which keeps
/// the triangular pair loops balanced. Results are independent of `workers`
/// whenever `merge` is associative and commutative.
pub fn fold_rows<A, F, M>(rows: usize, workers: usize, init: impl Fn() -> A + Sync, fold: F, merge: M) -> A
where
    A: Send,
    F: Fn(&mut A, usize) + Sync,
    M: Fn(A, A) -> A,
{
    let workers = workers.clamp(1, rows.max(1));
    if workers == 1 {
        let mut acc = init();
        for r in 0..rows {
            fold(&mut acc, r);
        }
        return acc;
    }
    let parts: Vec<A> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let (init, fold) = (&init, &fold);
                scope.spawn(move || {
                    let mut acc = init();
                    for r in (w..rows).step_by(workers) {
                        fold(&mut acc, r);
                    }
                    acc
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    parts.into_iter().reduce(merge).expect("at least one worker")
}
