//! Seeded stochastic Chebyshev trace estimation for sections past the
//! dense-eigensolver cap.
//!
//! Tr e^{−tΔ} is expanded in Chebyshev polynomials on [0, λ_max] with
//! λ_max from the Gershgorin bound; the coefficients of e^{−a x} are
//! scaled modified Bessel values 2(−1)^k e^{−a} I_k(a), so the whole
//! expansion is overflow-free. The trace is then estimated with
//! Rademacher probes (Hutchinson) driven by a ChaCha stream cipher for
//! reproducibility.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bessel::bessel_i_scaled;
use crate::sparse::SparseIntMatrix;

#[derive(Debug, Clone)]
pub struct TraceEstimate {
    pub value: f64,
    pub std_error: f64,
    pub probes: usize,
    pub terms: usize,
}

/// Chebyshev coefficients of e^{−tλ} on [0, λ_max], λ = λ_max (x+1)/2.
fn chebyshev_coefficients(t: f64, lambda_max: f64) -> Vec<f64> {
    let a = t * lambda_max / 2.0;
    let mut coeffs = vec![bessel_i_scaled(0, a)];
    let mut k = 1u32;
    loop {
        let c = bessel_i_scaled(k, a);
        if c < 1e-18 && k as f64 > a {
            break;
        }
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        coeffs.push(2.0 * sign * c);
        k += 1;
        if k > 100_000 {
            break;
        }
    }
    coeffs
}

/// Hutchinson estimate of Tr e^{−tΔ} for a symmetric PSD integer
/// matrix. Deterministic given the seed.
pub fn heat_trace_hutchinson(
    lap: &SparseIntMatrix,
    t: f64,
    probes: usize,
    seed: u64,
) -> TraceEstimate {
    let n = lap.nrows;
    let lambda_max = lap.norm_inf().max(1e-12);
    let coeffs = chebyshev_coefficients(t, lambda_max);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(probes);

    // x = 2Δ/λ_max − I; w_{k+1} = 2 x w_k − w_{k−1}.
    let apply_x = |v: &[f64], out: &mut [f64]| {
        out.iter_mut().for_each(|o| *o = 0.0);
        lap.matvec_add(v, out);
        for i in 0..n {
            out[i] = 2.0 * out[i] / lambda_max - v[i];
        }
    };

    for _ in 0..probes {
        let z: Vec<f64> = (0..n)
            .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
            .collect();
        let mut w_prev = z.clone();
        let mut w_curr = vec![0.0; n];
        apply_x(&z, &mut w_curr);
        let mut acc = coeffs[0] * dot(&z, &w_prev);
        if coeffs.len() > 1 {
            acc += coeffs[1] * dot(&z, &w_curr);
        }
        let mut w_next = vec![0.0; n];
        for c in coeffs.iter().skip(2) {
            apply_x(&w_curr, &mut w_next);
            for i in 0..n {
                w_next[i] = 2.0 * w_next[i] - w_prev[i];
            }
            acc += c * dot(&z, &w_next);
            std::mem::swap(&mut w_prev, &mut w_curr);
            std::mem::swap(&mut w_curr, &mut w_next);
        }
        samples.push(acc);
    }

    let mean = samples.iter().sum::<f64>() / probes as f64;
    let var = if probes > 1 {
        samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (probes as f64 - 1.0)
    } else {
        0.0
    };
    TraceEstimate {
        value: mean,
        std_error: (var / probes as f64).sqrt(),
        probes,
        terms: coeffs.len(),
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
