//! Worker pool for independent replicas with results in replica order.

use rayon::prelude::*;

use crate::error::{LabError, Result};

/// Maps `f` over `0..count` on `threads` workers (all cores when `None`)
/// and returns the results in index order.
pub fn ordered_map<T, F>(threads: Option<usize>, count: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| LabError::Config(format!("worker pool: {e}")))?;
    pool.install(|| (0..count).into_par_iter().map(f).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_kept() {
        for threads in [Some(1), Some(3), None] {
            let v = ordered_map(threads, 100, |i| Ok(i * i)).unwrap();
            assert_eq!(v, (0..100).map(|i| i * i).collect::<Vec<_>>());
        }
    }

    #[test]
    fn first_error_surfaces() {
        let r = ordered_map(Some(2), 10, |i| {
            if i == 7 {
                Err(LabError::Config("boom".into()))
            } else {
                Ok(i)
            }
        });
        assert!(r.is_err());
    }
}
