//! Fixtures shared by the criterion benchmarks.

use isotropy::oracle::tesseral::labels;
use isotropy::{CoeffVector, Parity};

/// Deterministic vector with every coefficient non-zero.
pub fn dense_vector(l: u32, parity: Option<Parity>) -> CoeffVector {
    let mut a = CoeffVector::zeros(l, parity);
    for (k, t) in labels(l).into_iter().enumerate() {
        a.set(t, (1.7 * k as f64 + 0.3).sin());
    }
    a
}
