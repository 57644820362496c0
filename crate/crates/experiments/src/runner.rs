use rayon::prelude::*;

use crate::{ExperimentError, Result};

/// Runs `attempt(i)` for `i = 0, 1, …` in parallel batches and returns the
/// first `wanted` results that are `Some`, in attempt order, together with
/// the number of attempts consumed.
pub(crate) fn collect_in_order<T, F>(
    wanted: usize,
    max_attempts: usize,
    attempt: F,
) -> Result<(Vec<(usize, T)>, usize)>
where
    T: Send,
    F: Fn(usize) -> Result<Option<T>> + Sync,
{
    let mut kept = Vec::with_capacity(wanted);
    let mut next = 0usize;
    while kept.len() < wanted {
        if next >= max_attempts {
            return Err(ExperimentError::TooFewSatisfiable {
                wanted,
                found: kept.len(),
                attempts: next,
            });
        }
        let batch = ((wanted - kept.len()) * 2).clamp(16, 4096).min(max_attempts - next);
        let results: Vec<Result<Option<T>>> =
            (next..next + batch).into_par_iter().map(&attempt).collect();
        for (offset, r) in results.into_iter().enumerate() {
            if kept.len() == wanted {
                // Later attempts in this batch are discarded, exactly as if
                // they had never been drawn.
                return Ok((kept, next + offset));
            }
            if let Some(v) = r? {
                kept.push((next + offset, v));
            }
        }
        next += batch;
    }
    Ok((kept, next))
}
