//! Modified Bessel functions I_n and the exact heat kernel of the ℤᵈ
//! lattice Laplacian.
//!
//! Everything is computed in scaled form e^{−x} I_n(x), which stays in
//! [0, 1] for all arguments. Two independent routes are used: the
//! ascending series for small x and a cosine-integral quadrature for
//! large x; the tests pin them against each other on the overlap.

use std::f64::consts::PI;

/// e^{−x} I_n(x) for x ≥ 0.
pub fn bessel_i_scaled(n: u32, x: f64) -> f64 {
    assert!(x >= 0.0, "bessel argument must be nonnegative");
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if x <= 30.0 {
        bessel_i_series(n, x) * (-x).exp()
    } else {
        bessel_i_scaled_quadrature(n, x)
    }
}

/// Unscaled I_n(x) by the ascending series Σ (x/2)^{n+2m} / (m! (n+m)!).
/// Accurate and overflow-safe for moderate x.
pub fn bessel_i_series(n: u32, x: f64) -> f64 {
    let half = x / 2.0;
    // first term: (x/2)^n / n!
    let mut term = 1.0;
    for k in 1..=n {
        term *= half / k as f64;
    }
    let mut sum = term;
    let mut m = 1.0;
    loop {
        term *= half * half / (m * (m + n as f64));
        sum += term;
        if term < sum * 1e-17 {
            return sum;
        }
        m += 1.0;
        if m > 500.0 {
            return sum;
        }
    }
}

/// e^{−x} I_n(x) = (1/π) ∫₀^π e^{x(cos φ − 1)} cos(nφ) dφ, trapezoid on
/// the smooth even-periodic integrand.
fn bessel_i_scaled_quadrature(n: u32, x: f64) -> f64 {
    let points = 256 + 8 * (x.sqrt() as usize) + 4 * n as usize;
    let h = PI / points as f64;
    let f = |phi: f64| (x * (phi.cos() - 1.0)).exp() * (n as f64 * phi).cos();
    let mut sum = 0.5 * (f(0.0) + f(PI));
    for k in 1..points {
        sum += f(k as f64 * h);
    }
    sum * h / PI
}

/// Heat kernel of the ℤᵈ graph Laplacian at time t between sites with
/// the given coordinate offset: Π_i e^{−2t} I_{|offset_i|}(2t).
pub fn lattice_heat_kernel(d: usize, t: f64, offset: &[i64]) -> f64 {
    assert!(t > 0.0, "time must be positive");
    assert_eq!(offset.len(), d, "offset arity must match dimension");
    offset
        .iter()
        .map(|&o| bessel_i_scaled(o.unsigned_abs() as u32, 2.0 * t))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_reference_values() {
        // I_0(2) = sum 1/(m!)^2 = 2.2795853...
        assert!((bessel_i_series(0, 2.0) - 2.279585302336067).abs() < 1e-12);
        // I_1(2) = 1.5906368...
        assert!((bessel_i_series(1, 2.0) - 1.590636854637329).abs() < 1e-12);
        assert!((bessel_i_series(3, 0.2) - 1.6708375023156418e-4).abs() < 1e-12);
    }

    #[test]
    fn scaled_matches_series_on_overlap() {
        for n in [0u32, 1, 2, 5, 9] {
            for x in [20.0, 25.0, 29.0, 31.0, 35.0, 40.0] {
                let quad = bessel_i_scaled_quadrature(n, x);
                let series = bessel_i_series(n, x) * (-x).exp();
                assert!(
                    (quad - series).abs() < 1e-12,
                    "n={n} x={x}: {quad} vs {series}"
                );
            }
        }
    }

    #[test]
    fn lattice_kernel_values() {
        // d=1, offset 0, t=1: e^{-2} I_0(2) = 0.308508...
        let v = lattice_heat_kernel(1, 1.0, &[0]);
        assert!((v - 0.30850832255367105).abs() < 1e-10);
        // d=2 product structure.
        let v2 = lattice_heat_kernel(2, 1.0, &[0, 0]);
        assert!((v2 - v * v).abs() < 1e-14);
        // rapid off-diagonal decay: e^{-0.2} I_3(0.2) = 1.36797e-4.
        let v3 = lattice_heat_kernel(1, 0.1, &[3]);
        assert!((v3 - 1.3679660465418196e-4).abs() < 1e-12);
        assert!(v3 < 2e-4);
    }

    #[test]
    fn kernel_row_sums_to_one() {
        // Σ_x e^{-2t} I_x(2t) = 1 (stochastic heat semigroup).
        for t in [0.3, 1.0, 5.0, 40.0] {
            let mut sum = bessel_i_scaled(0, 2.0 * t);
            for n in 1..400 {
                sum += 2.0 * bessel_i_scaled(n, 2.0 * t);
            }
            assert!((sum - 1.0).abs() < 1e-10, "t={t}: {sum}");
        }
    }

    #[test]
    fn kernel_decreasing_in_offset() {
        for t in [0.5, 1.0, 2.0] {
            let mut prev = lattice_heat_kernel(1, t, &[0]);
            for o in 1..=8i64 {
                let v = lattice_heat_kernel(1, t, &[o]);
                assert!(v < prev);
                prev = v;
            }
        }
    }
}
