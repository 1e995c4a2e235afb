//! The von Neumann side of every limit, computed independently of the
//! finite sections.
//!
//! For a free abelian deck group ℤᵈ, Fourier transform diagonalizes the
//! commutant: each boundary matrix over ℤ[ℤᵈ] becomes a matrix-valued
//! symbol on the torus, Δ_j(θ) = ∂_j(θ)*∂_j(θ) + ∂_{j+1}(θ)∂_{j+1}(θ)*,
//! and Γ-traces become torus integrals. Periodic integrands make the
//! uniform trapezoid rule spectrally accurate; Gauss–Legendre is kept
//! as a cross-check rule.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::complex::EquivariantChainComplex;
use crate::error::LabError;
use crate::group::{GroupElement, GroupFamily};
use crate::ring::RingMatrix;

/// One exponential term coeff · e^{i⟨freq, θ⟩}.
#[derive(Debug, Clone)]
struct SymbolTerm {
    coeff: f64,
    freq: Vec<i64>,
}

/// A matrix of trigonometric polynomials.
#[derive(Debug, Clone)]
struct SymbolMatrix {
    nrows: usize,
    ncols: usize,
    terms: Vec<Vec<SymbolTerm>>,
}

impl SymbolMatrix {
    fn from_ring_matrix(m: &RingMatrix, torus_dim: usize) -> Result<Self, LabError> {
        let mut terms = Vec::with_capacity(m.nrows * m.ncols);
        for r in 0..m.nrows {
            for c in 0..m.ncols {
                let mut entry = Vec::new();
                for (g, coeff) in m.get(r, c).iter() {
                    let GroupElement::Abelian(freq) = g else {
                        return Err(LabError::UnsupportedOracle {
                            family: "nonabelian".into(),
                        });
                    };
                    debug_assert_eq!(freq.len(), torus_dim);
                    entry.push(SymbolTerm {
                        coeff: coeff as f64,
                        freq: freq.clone(),
                    });
                }
                terms.push(entry);
            }
        }
        Ok(SymbolMatrix {
            nrows: m.nrows,
            ncols: m.ncols,
            terms,
        })
    }

    fn eval(&self, theta: &[f64]) -> DMatrix<Complex64> {
        let mut out = DMatrix::zeros(self.nrows, self.ncols);
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                let mut v = Complex64::new(0.0, 0.0);
                for term in &self.terms[r * self.ncols + c] {
                    let phase: f64 = term
                        .freq
                        .iter()
                        .zip(theta)
                        .map(|(&k, &th)| k as f64 * th)
                        .sum();
                    v += Complex64::from_polar(term.coeff.abs(), phase)
                        * if term.coeff < 0.0 { -1.0 } else { 1.0 };
                }
                out[(r, c)] = v;
            }
        }
        out
    }
}

/// Matrix-valued Fourier symbol of Δ_j for an abelian deck group.
#[derive(Debug, Clone)]
pub struct TorusSymbol {
    pub degree: usize,
    pub torus_dim: usize,
    /// Matrix size n_j.
    pub size: usize,
    down: Option<SymbolMatrix>,
    up: Option<SymbolMatrix>,
}

impl TorusSymbol {
    /// Hermitian PSD matrix Δ_j(θ).
    pub fn eval(&self, theta: &[f64]) -> DMatrix<Complex64> {
        assert_eq!(theta.len(), self.torus_dim);
        let mut out = DMatrix::zeros(self.size, self.size);
        if let Some(d) = &self.down {
            let m = d.eval(theta);
            out += m.adjoint() * &m;
        }
        if let Some(u) = &self.up {
            let m = u.eval(theta);
            out += &m * m.adjoint();
        }
        out
    }

    /// Ascending eigenvalues of Δ_j(θ).
    pub fn eigenvalues_at(&self, theta: &[f64]) -> Vec<f64> {
        let m = self.eval(theta);
        let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().cloned().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Crude bound on max_i ‖∂Δ/∂θ_i‖; eigenvalues of the symbol are
    /// Lipschitz in each θ coordinate with this constant.
    pub fn lipschitz_bound(&self) -> f64 {
        fn sup_and_slope(m: &SymbolMatrix) -> (f64, f64) {
            let mut sup = 0.0;
            let mut slope = 0.0;
            for entry in &m.terms {
                for t in entry {
                    sup += t.coeff.abs();
                    let max_freq = t
                        .freq
                        .iter()
                        .map(|f| f.unsigned_abs() as f64)
                        .fold(0.0, f64::max);
                    slope += t.coeff.abs() * max_freq;
                }
            }
            (sup, slope)
        }
        let mut total = 0.0;
        if let Some(d) = &self.down {
            let (s, l) = sup_and_slope(d);
            total += 2.0 * s * l;
        }
        if let Some(u) = &self.up {
            let (s, l) = sup_and_slope(u);
            total += 2.0 * s * l;
        }
        total
    }
}

/// Builds the symbol of Δ_j; errors for nonabelian deck groups.
pub fn symbol(x: &EquivariantChainComplex, j: usize) -> Result<TorusSymbol, LabError> {
    let GroupFamily::FreeAbelian(d) = x.spec.family else {
        return Err(LabError::UnsupportedOracle {
            family: x.spec.family.name(),
        });
    };
    let dim = x.dim();
    if j > dim {
        return Err(LabError::DegreeOutOfRange {
            degree: j,
            max: dim,
        });
    }
    let down = if j >= 1 {
        Some(SymbolMatrix::from_ring_matrix(x.boundary(j), d)?)
    } else {
        None
    };
    let up = if j < dim {
        Some(SymbolMatrix::from_ring_matrix(x.boundary(j + 1), d)?)
    } else {
        None
    };
    Ok(TorusSymbol {
        degree: j,
        torus_dim: d,
        size: x.orbit_counts[j],
        down,
        up,
    })
}

/// Quadrature rules on the torus [0, 2π)^d, normalized to total weight
/// one (i.e. the (2π)^{−d} prefactor is folded into the weights).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureRule {
    /// Uniform nodes offset by half a step: same spectral accuracy for
    /// periodic integrands, and the measure-zero kernel locus of the
    /// built-in symbols (θ components at 0) is never sampled.
    UniformTrapezoid,
    GaussLegendre,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadratureGrid {
    pub points_per_axis: usize,
    pub rule: QuadratureRule,
}

impl QuadratureGrid {
    pub fn new(points_per_axis: usize, rule: QuadratureRule) -> Result<Self, LabError> {
        if points_per_axis < 8 {
            return Err(LabError::Domain(
                "quadrature grids need at least 8 points per axis".into(),
            ));
        }
        Ok(QuadratureGrid {
            points_per_axis,
            rule,
        })
    }

    pub fn trapezoid(points_per_axis: usize) -> Result<Self, LabError> {
        QuadratureGrid::new(points_per_axis, QuadratureRule::UniformTrapezoid)
    }

    fn axis_nodes(&self) -> Vec<(f64, f64)> {
        let m = self.points_per_axis;
        match self.rule {
            QuadratureRule::UniformTrapezoid => (0..m)
                .map(|k| {
                    (
                        2.0 * std::f64::consts::PI * (k as f64 + 0.5) / m as f64,
                        1.0 / m as f64,
                    )
                })
                .collect(),
            QuadratureRule::GaussLegendre => gauss_legendre(m)
                .into_iter()
                .map(|(x, w)| {
                    // map [-1, 1] to [0, 2π); weights renormalized to sum 1
                    (std::f64::consts::PI * (x + 1.0), w / 2.0)
                })
                .collect(),
        }
    }

    /// Mean of `f` over the torus (weights sum to one).
    pub fn integrate<F: FnMut(&[f64]) -> f64>(&self, dim: usize, mut f: F) -> f64 {
        self.integrate_weighted(dim, |theta, _| f(theta))
    }

    /// Like [`integrate`](Self::integrate), exposing each node's weight
    /// to the integrand (for side accumulators).
    pub fn integrate_weighted<F: FnMut(&[f64], f64) -> f64>(&self, dim: usize, mut f: F) -> f64 {
        let axis = self.axis_nodes();
        let mut idx = vec![0usize; dim];
        let mut theta = vec![0.0f64; dim];
        let mut total = 0.0;
        loop {
            let mut w = 1.0;
            for (i, &k) in idx.iter().enumerate() {
                theta[i] = axis[k].0;
                w *= axis[k].1;
            }
            total += w * f(&theta, w);
            // mixed-radix increment
            let mut i = 0;
            loop {
                if i == dim {
                    return total;
                }
                idx[i] += 1;
                if idx[i] < axis.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev-like initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Legendre P_n(x) and derivative by recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let mut p0 = 1.0;
        let mut p1 = x;
        for k in 2..=n {
            let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((-x, w));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

fn kernel_tol(eigenvalues: &[f64]) -> f64 {
    let max = eigenvalues.iter().cloned().fold(0.0f64, f64::max);
    1e-8 * (1.0 + max)
}

/// Tr_Γ e^{−tΔ_j} = (2π)^{−d} ∫ tr e^{−tΔ_j(θ)} dθ.
pub fn vn_heat_trace(
    x: &EquivariantChainComplex,
    j: usize,
    t: f64,
    grid: &QuadratureGrid,
) -> Result<f64, LabError> {
    assert!(t > 0.0, "heat time must be positive");
    let sym = symbol(x, j)?;
    Ok(grid.integrate(sym.torus_dim, |theta| {
        sym.eigenvalues_at(theta)
            .iter()
            .map(|&mu| (-t * mu).exp())
            .sum()
    }))
}

/// Von Neumann spectral function N_{j,Γ}(λ): torus average of the
/// eigenvalue counting function of the symbol.
pub fn vn_spectral_function(
    x: &EquivariantChainComplex,
    j: usize,
    lambda: f64,
    grid: &QuadratureGrid,
) -> Result<f64, LabError> {
    let sym = symbol(x, j)?;
    Ok(grid.integrate(sym.torus_dim, |theta| {
        let ev = sym.eigenvalues_at(theta);
        let tol = kernel_tol(&ev);
        ev.iter().filter(|&&mu| mu <= lambda + tol).count() as f64
    }))
}

/// L² Betti estimate with rank diagnostics.
#[derive(Debug, Clone)]
pub struct L2BettiEstimate {
    /// Torus average of dim ker Δ_j(θ).
    pub value: f64,
    /// Kernel dimension attained on the generic (minimal-kernel) sample.
    pub generic_kernel_dim: usize,
    /// Smallest symbol rank seen over the grid.
    pub min_rank: usize,
    pub max_rank: usize,
}

/// b_{(2)}^j as the measure of the kernel bundle of the symbol,
/// detected sample-by-sample at the scaled tolerance.
pub fn l2_betti(
    x: &EquivariantChainComplex,
    j: usize,
    grid: &QuadratureGrid,
) -> Result<L2BettiEstimate, LabError> {
    let sym = symbol(x, j)?;
    let mut min_rank = usize::MAX;
    let mut max_rank = 0usize;
    let mut min_kernel = usize::MAX;
    let value = grid.integrate(sym.torus_dim, |theta| {
        let ev = sym.eigenvalues_at(theta);
        let tol = kernel_tol(&ev);
        let kernel = ev.iter().filter(|&&mu| mu < tol).count();
        let rank = sym.size - kernel;
        min_rank = min_rank.min(rank);
        max_rank = max_rank.max(rank);
        min_kernel = min_kernel.min(kernel);
        kernel as f64
    });
    Ok(L2BettiEstimate {
        value,
        generic_kernel_dim: min_kernel,
        min_rank,
        max_rank,
    })
}

/// L² Betti numbers that follow from the Euler-characteristic property
/// together with b⁰ = 0 for infinite deck groups (and duality in top
/// degree for 2-complexes). An independent route from quadrature.
pub fn l2_betti_from_euler(x: &EquivariantChainComplex, j: usize) -> Option<f64> {
    let dim = x.dim();
    if j > dim {
        return None;
    }
    match (dim, j) {
        (_, 0) => Some(0.0),
        (1, 1) => Some(-(x.euler_char as f64)),
        (2, 2) => Some(0.0),
        (2, 1) => Some(-(x.euler_char as f64)),
        _ => None,
    }
}

/// L² zeta value (2π)^{−d} ∫ tr[(Δ_j(θ) + λ)^{−s} − P_ker(θ) λ^{−s}] dθ.
pub fn vn_zeta(
    x: &EquivariantChainComplex,
    j: usize,
    s: Complex64,
    lambda: f64,
    grid: &QuadratureGrid,
) -> Result<Complex64, LabError> {
    assert!(lambda > 0.0, "zeta shift must be positive");
    let sym = symbol(x, j)?;
    // Kernel samples drop out: their (μ + λ)^{-s} cancels against the
    // P_ker λ^{-s} subtraction.
    let mut imag = 0.0;
    let real = grid.integrate_weighted(sym.torus_dim, |theta, w| {
        let ev = sym.eigenvalues_at(theta);
        let tol = kernel_tol(&ev);
        let mut acc = Complex64::new(0.0, 0.0);
        for &mu in &ev {
            if mu >= tol {
                acc += Complex64::new(mu + lambda, 0.0).powc(-s);
            }
        }
        imag += w * acc.im;
        acc.re
    });
    Ok(Complex64::new(real, imag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::bessel_i_scaled;
    use crate::complex::builtin_complex;

    fn grid(m: usize) -> QuadratureGrid {
        QuadratureGrid::trapezoid(m).unwrap()
    }

    #[test]
    fn circle_symbol_is_two_minus_two_cos() {
        let x = builtin_complex("circle_Z").unwrap();
        let sym = symbol(&x, 0).unwrap();
        for theta in [0.0, 0.4, 1.0, 2.5] {
            let m = sym.eval(&[theta]);
            assert_eq!(m.nrows(), 1);
            let expect = 2.0 - 2.0 * theta.cos();
            assert!((m[(0, 0)].re - expect).abs() < 1e-12);
            assert!(m[(0, 0)].im.abs() < 1e-12);
        }
    }

    #[test]
    fn torus_symbols() {
        let x = builtin_complex("torus2_Z2").unwrap();
        let s0 = symbol(&x, 0).unwrap();
        let s1 = symbol(&x, 1).unwrap();
        for theta in [[0.3f64, 1.1], [2.0, 0.2]] {
            let expect = 4.0 - 2.0 * theta[0].cos() - 2.0 * theta[1].cos();
            let m0 = s0.eval(&theta);
            assert!((m0[(0, 0)].re - expect).abs() < 1e-12);
            let m1 = s1.eval(&theta);
            let trace = m1[(0, 0)].re + m1[(1, 1)].re;
            assert!((trace - 2.0 * expect).abs() < 1e-12, "trace identity");
            // hermitian
            assert!((m1[(0, 1)] - m1[(1, 0)].conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn symbol_rejects_nonabelian() {
        let x = builtin_complex("heisenberg_manifold").unwrap();
        assert!(matches!(
            symbol(&x, 0),
            Err(LabError::UnsupportedOracle { .. })
        ));
    }

    #[test]
    fn heat_trace_matches_bessel_closed_form() {
        let circle = builtin_complex("circle_Z").unwrap();
        let torus = builtin_complex("torus2_Z2").unwrap();
        let g = grid(256);
        for t in [0.5, 1.0, 2.0] {
            let one_d = vn_heat_trace(&circle, 0, t, &g).unwrap();
            let bessel = bessel_i_scaled(0, 2.0 * t);
            assert!((one_d - bessel).abs() < 1e-8, "t={t}: {one_d} vs {bessel}");
            let two_d = vn_heat_trace(&torus, 0, t, &g).unwrap();
            assert!((two_d - bessel * bessel).abs() < 1e-8);
        }
        // frozen sample values
        assert!((vn_heat_trace(&circle, 0, 1.0, &g).unwrap() - 0.30851).abs() < 1e-5);
        assert!((vn_heat_trace(&torus, 0, 1.0, &g).unwrap() - 0.09518).abs() < 1e-5);
        // t -> infinity: kernel has measure zero, decay ~ 1/(4πt)
        let t30 = vn_heat_trace(&torus, 0, 30.0, &g).unwrap();
        let t60 = vn_heat_trace(&torus, 0, 60.0, &g).unwrap();
        assert!(t60 < t30 && t60 < 2e-3, "{t60} vs {t30}");
    }

    #[test]
    fn quadrature_rules_agree() {
        let x = builtin_complex("torus2_Z2").unwrap();
        let tr = vn_heat_trace(&x, 1, 0.7, &grid(64)).unwrap();
        let gl = vn_heat_trace(
            &x,
            1,
            0.7,
            &QuadratureGrid::new(64, QuadratureRule::GaussLegendre).unwrap(),
        )
        .unwrap();
        assert!((tr - gl).abs() < 1e-6, "{tr} vs {gl}");
    }

    #[test]
    fn grid_refinement_consistency() {
        // smooth integrands (heat, zeta, kernel measure): spectral
        // accuracy, m vs 2m within 1e-6
        let circle = builtin_complex("circle_Z").unwrap();
        let torus = builtin_complex("torus2_Z2").unwrap();
        for (m, t) in [(64usize, 0.5), (128, 1.0)] {
            let a = vn_heat_trace(&circle, 0, t, &grid(m)).unwrap();
            let b = vn_heat_trace(&circle, 0, t, &grid(2 * m)).unwrap();
            assert!((a - b).abs() < 1e-6);
        }
        for j in 0..=2 {
            let a = vn_heat_trace(&torus, j, 1.0, &grid(64)).unwrap();
            let b = vn_heat_trace(&torus, j, 1.0, &grid(128)).unwrap();
            assert!((a - b).abs() < 1e-6, "torus degree {j}");
        }
        let s = Complex64::new(2.0, 0.0);
        let a = vn_zeta(&circle, 0, s, 1.0, &grid(128)).unwrap();
        let b = vn_zeta(&circle, 0, s, 1.0, &grid(256)).unwrap();
        assert!((a - b).norm() < 1e-6);
        let a = l2_betti(&torus, 1, &grid(64)).unwrap().value;
        let b = l2_betti(&torus, 1, &grid(128)).unwrap().value;
        assert!((a - b).abs() < 1e-9);
        // The counting-function integrand is a step function of θ, so
        // refinement only converges at first order: O(1/m), not 1e-6.
        for lambda in [0.5, 1.0, 2.0] {
            let a = vn_spectral_function(&circle, 0, lambda, &grid(256)).unwrap();
            let b = vn_spectral_function(&circle, 0, lambda, &grid(512)).unwrap();
            assert!((a - b).abs() <= 2.0 / 256.0, "lambda={lambda}: {a} vs {b}");
        }
    }

    #[test]
    fn spectral_function_values() {
        let circle = builtin_complex("circle_Z").unwrap();
        let g = grid(4096);
        // measure of {2 - 2cosθ <= 2} is exactly one half
        let half = vn_spectral_function(&circle, 0, 2.0, &g).unwrap();
        assert!((half - 0.5).abs() < 1e-3, "{half}");
        // everything below the top of the band
        let all = vn_spectral_function(&circle, 0, 4.5, &g).unwrap();
        assert!((all - 1.0).abs() < 1e-12);
        // monotone in lambda
        let g = grid(256);
        let mut prev = 0.0;
        for lambda in [0.0, 0.5, 1.0, 2.0, 3.0, 4.0] {
            let v = vn_spectral_function(&circle, 0, lambda, &g).unwrap();
            assert!(v >= prev - 1e-12);
            prev = v;
        }
    }

    #[test]
    fn torus_weyl_law_near_zero() {
        // N(λ) ~ λ / (4π) for the flat torus symbol.
        let x = builtin_complex("torus2_Z2").unwrap();
        let g = grid(1024);
        for lambda in [0.05, 0.1] {
            let n = vn_spectral_function(&x, 0, lambda, &g).unwrap();
            let weyl = lambda / (4.0 * std::f64::consts::PI);
            assert!(
                (n / weyl - 1.0).abs() < 0.15,
                "lambda={lambda}: {n} vs {weyl}"
            );
        }
    }

    #[test]
    fn l2_betti_zero_for_circle_and_torus() {
        for name in ["circle_Z", "torus2_Z2"] {
            let x = builtin_complex(name).unwrap();
            let g = grid(64);
            for j in 0..=x.dim() {
                let est = l2_betti(&x, j, &g).unwrap();
                assert!(est.value < 1e-3, "{name} degree {j}: {}", est.value);
                assert_eq!(est.generic_kernel_dim, 0);
                assert_eq!(est.max_rank, x.orbit_counts[j]);
            }
        }
    }

    #[test]
    fn l2_betti_surface_kernel_bundle() {
        // The genus-2 symbol in degree 1 has a rank-2 kernel bundle:
        // quadrature and the Euler identity agree on b1 = 2.
        let x = builtin_complex("surface_genus2_Z4").unwrap();
        let g = grid(8);
        let est = l2_betti(&x, 1, &g).unwrap();
        assert!(
            (est.value - 2.0).abs() < 0.2,
            "quadrature got {}",
            est.value
        );
        assert_eq!(est.generic_kernel_dim, 2);
        assert_eq!(l2_betti_from_euler(&x, 1), Some(2.0));
        assert_eq!(l2_betti_from_euler(&x, 0), Some(0.0));
        assert_eq!(l2_betti_from_euler(&x, 2), Some(0.0));
    }

    #[test]
    fn l2_betti_euler_for_wedge() {
        let x = builtin_complex("wedge2_F2").unwrap();
        assert_eq!(l2_betti_from_euler(&x, 1), Some(1.0));
        assert_eq!(l2_betti_from_euler(&x, 0), Some(0.0));
    }

    #[test]
    fn zeta_closed_form_circle() {
        // (2π)^{-1} ∫ (3 - 2cosθ)^{-2} dθ = 3·5^{-3/2}
        let x = builtin_complex("circle_Z").unwrap();
        let z = vn_zeta(&x, 0, Complex64::new(2.0, 0.0), 1.0, &grid(256)).unwrap();
        let expect = 3.0 * 5f64.powf(-1.5);
        assert!((z.re - expect).abs() < 1e-8, "{} vs {expect}", z.re);
        assert!(z.im.abs() < 1e-12);
        // large-lambda asymptote n_j λ^{-s}
        let z = vn_zeta(&x, 0, Complex64::new(2.0, 0.0), 1e8, &grid(64)).unwrap();
        assert!((z.re - 1e-16).abs() < 1e-18);
    }

    #[test]
    fn symbol_supersymmetry_at_random_theta() {
        // positive spectra of Δ_j(θ) pair across adjacent degrees
        let x = builtin_complex("torus2_Z2").unwrap();
        let syms: Vec<TorusSymbol> = (0..=2).map(|j| symbol(&x, j).unwrap()).collect();
        for theta in [[0.7, 1.9], [2.9, 0.4], [1.0, 1.0]] {
            let spectra: Vec<Vec<f64>> = syms.iter().map(|s| s.eigenvalues_at(&theta)).collect();
            // fiberwise Hodge: every positive eigenvalue of Δ_0 appears in
            // Δ_1, and Δ_2's spectrum matches Δ_0's (Poincaré pairing).
            for &mu in &spectra[0] {
                assert!(
                    spectra[1].iter().any(|&nu| (nu - mu).abs() < 1e-9),
                    "missing pair for {mu}"
                );
            }
            for (&a, &b) in spectra[0].iter().zip(&spectra[2]) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }
}
