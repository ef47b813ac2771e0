//! Deterministic parallel map over index ranges. Thread count is capped by
//! the `RICCI_FORGE_THREADS` environment variable; results land in
//! preallocated slots so the output never depends on scheduling order.

use std::env;

pub fn thread_cap() -> usize {
    if let Ok(v) = env::var("RICCI_FORGE_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            return n.clamp(1, 64);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get().min(8))
        .unwrap_or(1)
}

/// Evaluate `f(i)` for `i in 0..n`, in parallel chunks, returning results in
/// index order.
pub fn parallel_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let threads = thread_cap().min(n.max(1));
    if threads <= 1 || n < 64 {
        return (0..n).map(f).collect();
    }
    let mut slots: Vec<Option<T>> = (0..n).map(|_| None).collect();
    let chunk = n.div_ceil(threads);
    std::thread::scope(|scope| {
        for (c, slice) in slots.chunks_mut(chunk).enumerate() {
            let f = &f;
            scope.spawn(move || {
                for (off, slot) in slice.iter_mut().enumerate() {
                    *slot = Some(f(c * chunk + off));
                }
            });
        }
    });
    slots.into_iter().map(|s| s.unwrap()).collect()
}
