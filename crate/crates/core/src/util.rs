//! Small internal helpers shared across modules.

/// Whether the global rayon pool has more than one worker. Elementwise loops
/// consult this so that single-threaded runs (the default) skip rayon
/// dispatch entirely. Reductions are always performed sequentially in index
/// order so that diagnostics are bitwise reproducible regardless of the
/// thread count.
pub(crate) fn par_enabled() -> bool {
    rayon::current_num_threads() > 1
}

/// Sum of `f(element)` in strict index order (bitwise deterministic).
pub(crate) fn sum_seq<T, F>(items: &[T], mut f: F) -> f64
where
    F: FnMut(&T) -> f64,
{
    let mut acc = 0.0;
    for item in items {
        acc += f(item);
    }
    acc
}
