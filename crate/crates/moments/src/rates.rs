//! Entropy and binomial rate function.

use crate::{MomentsError, Result};

/// `χ(z) = −z ln z − (1−z) ln(1−z)`, with `χ(0) = χ(1) = 0`.
pub fn entropy(z: f64) -> f64 {
    assert!((0.0..=1.0).contains(&z), "entropy argument {z} outside [0,1]");
    xlogx(z) + xlogx(1.0 - z)
}

fn xlogx(z: f64) -> f64 {
    if z == 0.0 {
        0.0
    } else {
        -z * z.ln()
    }
}

/// `ψ(p, q) = −q ln(q/p) − (1−q) ln((1−q)/(1−p))`, the exponential rate at
/// which `Bin(n, p)` takes the value `qn`. Non-positive, zero iff `p = q`.
pub fn binom_rate(p: f64, q: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0) {
        return Err(MomentsError::Domain(format!(
            "binom_rate needs p, q in (0,1), got p={p}, q={q}"
        )));
    }
    Ok(binom_rate_unchecked(p, q))
}

/// [`binom_rate`] without the domain check, for inner loops whose arguments
/// are already known to be interior.
pub(crate) fn binom_rate_unchecked(p: f64, q: f64) -> f64 {
    let a = q * (q.ln() - p.ln());
    let b = (1.0 - q) * ((-q).ln_1p() - (-p).ln_1p());
    -(a + b)
}
