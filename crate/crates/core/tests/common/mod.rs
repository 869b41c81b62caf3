//! Helpers shared by the integration-test targets.

use grover_noise::ComplexMatrix2;

pub fn mat_scale(m: ComplexMatrix2, k: f64) -> ComplexMatrix2 {
    ComplexMatrix2::new(m.m11 * k, m.m12 * k, m.m21 * k, m.m22 * k)
}

pub fn mat_add(a: ComplexMatrix2, b: ComplexMatrix2) -> ComplexMatrix2 {
    ComplexMatrix2::new(a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22)
}

pub fn entry_norm_sum(m: ComplexMatrix2) -> f64 {
    m.m11.norm() + m.m12.norm() + m.m21.norm() + m.m22.norm()
}

/// Independent matrix exponential by scaling and squaring a Taylor
/// series; the oracle the closed-form iteration power is judged
/// against.
pub fn expm_series(a: ComplexMatrix2) -> ComplexMatrix2 {
    let norm = entry_norm_sum(a);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let b = mat_scale(a, 0.5f64.powi(squarings));
    let mut term = ComplexMatrix2::identity();
    let mut sum = ComplexMatrix2::identity();
    for m in 1..80 {
        term = mat_scale(term * b, 1.0 / m as f64);
        sum = mat_add(sum, term);
        if entry_norm_sum(term) < 1e-24 {
            break;
        }
    }
    let mut result = sum;
    for _ in 0..squarings {
        result = result * result;
    }
    result
}
