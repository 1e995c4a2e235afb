//! Laplacians, exact Betti numbers, spectra, heat traces, eigenvalue
//! clusters, supersymmetry pairing and finite zeta functions of a
//! section.
//!
//! Everything on the finite side of the limits lives here. Betti
//! numbers are exact integer ranks (never thresholded singular values);
//! spectra come from a dense symmetric eigensolver below the
//! configured cap, with a seeded stochastic Chebyshev trace estimator
//! past it.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::LabError;
use crate::rank;
use crate::section::{BoundaryCondition, SectionComplex};
use crate::sparse::SparseIntMatrix;
use crate::stochastic::{self, TraceEstimate};

/// Default dense-eigensolver cap (cells per degree).
pub const DEFAULT_DENSE_CAP: usize = 4000;

/// Relative scale for eigenvalue clustering and kernel detection:
/// tol = 1e-8 * (1 + ‖Δ‖₁).
pub const CLUSTER_TOL_SCALE: f64 = 1e-8;

/// Combinatorial Hodge Laplacian Δ_j = ∂_jᵀ∂_j + ∂_{j+1}∂_{j+1}ᵀ with
/// the identity inner product on cells; missing terms at the ends are
/// zero.
pub fn laplacian(s: &SectionComplex, j: usize) -> Result<SparseIntMatrix, LabError> {
    let dim = s.dim();
    if j > dim {
        return Err(LabError::DegreeOutOfRange {
            degree: j,
            max: dim,
        });
    }
    let n = s.num_cells(j);
    let mut acc = SparseIntMatrix::zeros(n, n);
    if j >= 1 {
        let b = s.boundary(j);
        acc = b.transpose().mul(b);
    }
    if j < dim {
        let b = s.boundary(j + 1);
        let up = b.mul(&b.transpose());
        let mut triplets: Vec<(u32, u32, i64)> = acc.triplets().to_vec();
        triplets.extend_from_slice(up.triplets());
        acc = SparseIntMatrix::from_triplets(n, n, triplets);
    }
    Ok(acc)
}

/// Eigenvalues of Δ_j with multiplicity, sorted ascending.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub degree: usize,
    pub eigenvalues: Vec<f64>,
    /// Clustering / kernel-detection tolerance used downstream.
    pub tolerance: f64,
}

impl SpectralData {
    /// Multiplicity of the zero cluster.
    pub fn kernel_dim(&self) -> usize {
        self.eigenvalues
            .iter()
            .take_while(|&&x| x <= self.tolerance)
            .count()
    }
}

/// Full eigendecomposition (kept for heat-kernel entries and the
/// supersymmetry pairing).
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub degree: usize,
    pub eigenvalues: Vec<f64>,
    /// Column i is the eigenvector of `eigenvalues[i]`.
    pub vectors: DMatrix<f64>,
    pub tolerance: f64,
}

impl EigenDecomposition {
    pub fn spectral_data(&self) -> SpectralData {
        SpectralData {
            degree: self.degree,
            eigenvalues: self.eigenvalues.clone(),
            tolerance: self.tolerance,
        }
    }
}

fn cluster_tolerance(lap: &SparseIntMatrix) -> f64 {
    CLUSTER_TOL_SCALE * (1.0 + lap.norm_inf())
}

/// Dense symmetric eigendecomposition of Δ_j; errors past the cap.
pub fn eigen_decomposition(
    s: &SectionComplex,
    j: usize,
    cap: usize,
) -> Result<EigenDecomposition, LabError> {
    let n = s.num_cells(j);
    if n > cap {
        return Err(LabError::CapExceeded {
            cells: n,
            degree: j,
            cap,
        });
    }
    let lap = laplacian(s, j)?;
    let tolerance = cluster_tolerance(&lap);
    let dense = lap.to_dense_f64();
    let eig = dense.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }
    // Δ is positive semidefinite; tiny negative values are roundoff.
    if let Some(&min) = eigenvalues.first() {
        if min < -tolerance {
            return Err(LabError::Domain(format!(
                "eigensolver returned {min} below -tolerance in degree {j}"
            )));
        }
    }
    Ok(EigenDecomposition {
        degree: j,
        eigenvalues,
        vectors,
        tolerance,
    })
}

/// Spectrum of Δ_j (dense path).
pub fn eigenvalues(s: &SectionComplex, j: usize, cap: usize) -> Result<SpectralData, LabError> {
    Ok(eigen_decomposition(s, j, cap)?.spectral_data())
}

/// Exact j-th Betti number: dim C_j − rank ∂_j − rank ∂_{j+1}.
pub fn betti(s: &SectionComplex, j: usize) -> Result<usize, LabError> {
    let dim = s.dim();
    if j > dim {
        return Err(LabError::DegreeOutOfRange {
            degree: j,
            max: dim,
        });
    }
    let n = s.num_cells(j);
    let r_down = if j >= 1 { rank::rank(s.boundary(j)) } else { 0 };
    let r_up = if j < dim {
        rank::rank(s.boundary(j + 1))
    } else {
        0
    };
    Ok(n - r_down - r_up)
}

/// Betti numbers in every degree; the alternating sum is checked
/// against the section's Euler characteristic.
#[derive(Debug, Clone)]
pub struct BettiVector {
    pub values: Vec<usize>,
    pub condition: BoundaryCondition,
}

pub fn betti_vector(s: &SectionComplex) -> Result<BettiVector, LabError> {
    let values: Vec<usize> = (0..=s.dim())
        .map(|j| betti(s, j))
        .collect::<Result<_, _>>()?;
    let alt: i64 = values
        .iter()
        .enumerate()
        .map(|(j, &b)| if j % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    let (_, chi) = s.cell_counts();
    if alt != chi {
        return Err(LabError::Validation(format!(
            "betti alternating sum {alt} != section Euler characteristic {chi}"
        )));
    }
    Ok(BettiVector {
        values,
        condition: s.condition,
    })
}

/// How a heat trace was computed.
#[derive(Debug, Clone, PartialEq)]
pub enum HeatTraceMethod {
    Dense,
    Stochastic {
        std_error: f64,
        probes: usize,
        terms: usize,
    },
}

#[derive(Debug, Clone)]
pub struct HeatTraceResult {
    pub value: f64,
    pub method: HeatTraceMethod,
}

#[derive(Debug, Clone, Copy)]
pub struct HeatOptions {
    pub dense_cap: usize,
    pub probes: usize,
    pub seed: u64,
}

impl Default for HeatOptions {
    fn default() -> Self {
        HeatOptions {
            dense_cap: DEFAULT_DENSE_CAP,
            probes: 64,
            seed: 0,
        }
    }
}

/// Tr e^{−tΔ_j}: dense spectrum when available, otherwise a seeded
/// stochastic Chebyshev estimate with reported standard error.
pub fn heat_trace(
    s: &SectionComplex,
    j: usize,
    t: f64,
    opts: &HeatOptions,
) -> Result<HeatTraceResult, LabError> {
    assert!(t > 0.0, "heat time must be positive");
    match eigenvalues(s, j, opts.dense_cap) {
        Ok(spec) => Ok(HeatTraceResult {
            value: heat_trace_from_spectrum(&spec, t),
            method: HeatTraceMethod::Dense,
        }),
        Err(LabError::CapExceeded { .. }) => {
            let lap = laplacian(s, j)?;
            let TraceEstimate {
                value,
                std_error,
                probes,
                terms,
            } = stochastic::heat_trace_hutchinson(&lap, t, opts.probes, opts.seed);
            Ok(HeatTraceResult {
                value,
                method: HeatTraceMethod::Stochastic {
                    std_error,
                    probes,
                    terms,
                },
            })
        }
        Err(e) => Err(e),
    }
}

pub fn heat_trace_from_spectrum(spec: &SpectralData, t: f64) -> f64 {
    spec.eigenvalues.iter().map(|&mu| (-t * mu).exp()).sum()
}

/// Matrix element of e^{−tΔ_j} between two cells (dense path).
pub fn heat_kernel_entry(eig: &EigenDecomposition, t: f64, x: usize, y: usize) -> f64 {
    let n = eig.eigenvalues.len();
    assert!(x < n && y < n, "cell index out of range");
    let mut sum = 0.0;
    for k in 0..n {
        sum += (-t * eig.eigenvalues[k]).exp() * eig.vectors[(x, k)] * eig.vectors[(y, k)];
    }
    sum
}

/// N_j(λ): number of eigenvalues ≤ λ (resolved at the clustering
/// tolerance, so N(0) equals the exact Betti number).
pub fn spectral_count(spec: &SpectralData, lambda: f64) -> usize {
    spec.eigenvalues
        .iter()
        .take_while(|&&mu| mu <= lambda + spec.tolerance)
        .count()
}

/// A positive eigenvalue cluster with its eigenspace dimension per
/// degree.
#[derive(Debug, Clone)]
pub struct EigenCluster {
    pub value: f64,
    pub dims: Vec<usize>,
    /// Set when single-linkage chaining stretched the cluster beyond
    /// the tolerance (two true clusters closer than the tolerance).
    pub ambiguous: bool,
}

/// Clusters the positive spectra of all degrees at the shared
/// tolerance. The zero cluster (kernel) is excluded.
pub fn cluster_positive(spectra: &[SpectralData]) -> Vec<EigenCluster> {
    let tol = spectra
        .iter()
        .map(|s| s.tolerance)
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let num_degrees = spectra.len();
    let mut tagged: Vec<(f64, usize)> = Vec::new();
    for s in spectra {
        for &mu in &s.eigenvalues {
            if mu > tol {
                tagged.push((mu, s.degree));
            }
        }
    }
    tagged.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut clusters = Vec::new();
    let mut start = 0usize;
    while start < tagged.len() {
        let mut end = start + 1;
        while end < tagged.len() && tagged[end].0 - tagged[end - 1].0 <= tol {
            end += 1;
        }
        let slice = &tagged[start..end];
        let mut dims = vec![0usize; num_degrees];
        for &(_, d) in slice {
            dims[d] += 1;
        }
        let spread = slice[slice.len() - 1].0 - slice[0].0;
        let value = slice.iter().map(|&(v, _)| v).sum::<f64>() / slice.len() as f64;
        clusters.push(EigenCluster {
            value,
            dims,
            ambiguous: spread > tol,
        });
        start = end;
    }
    clusters
}

/// Alternating eigenspace-dimension sum D^N(λ) = Σ_{j≤N} (−1)^{N−j}
/// dim E_λ^j for one positive cluster. Exactness of the eigenvalue
/// complex makes this nonnegative.
pub fn dsum(cluster: &EigenCluster, n: usize) -> Result<i64, LabError> {
    if cluster.ambiguous {
        return Err(LabError::AmbiguousClustering(format!(
            "cluster near {} is wider than the tolerance",
            cluster.value
        )));
    }
    let mut total = 0i64;
    for (j, &d) in cluster.dims.iter().enumerate().take(n + 1) {
        let sign = if (n - j).is_multiple_of(2) { 1 } else { -1 };
        total += sign * d as i64;
    }
    Ok(total)
}

/// One (cluster, degree) line of the supersymmetry report.
#[derive(Debug, Clone)]
pub struct SupersymmetryPair {
    pub cluster_value: f64,
    pub degree: usize,
    pub coexact_dim: usize,
    pub exact_dim_above: usize,
}

#[derive(Debug, Clone)]
pub struct SupersymmetryReport {
    pub pairs: Vec<SupersymmetryPair>,
    pub passed: bool,
}

fn restricted_rank(m: &DMatrix<f64>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let svd = m.clone().svd(false, false);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let eps = 1e-6 * (1.0 + sigma_max);
    svd.singular_values.iter().filter(|&&s| s > eps).count()
}

/// Exact/coexact pairing of positive spectra across adjacent degrees:
/// for every positive cluster λ and degree p, the coexact part of
/// E_λ^p maps isomorphically onto the exact part of E_λ^{p+1} under
/// the coboundary. Dimensions are computed independently via ranks of
/// ∂ restricted to the two eigenspaces.
pub fn supersymmetry_check(
    s: &SectionComplex,
    eigs: &[EigenDecomposition],
) -> Result<SupersymmetryReport, LabError> {
    let dim = s.dim();
    assert_eq!(
        eigs.len(),
        dim + 1,
        "need eigendecompositions in every degree"
    );
    let spectra: Vec<SpectralData> = eigs.iter().map(|e| e.spectral_data()).collect();
    let clusters = cluster_positive(&spectra);
    let mut pairs = Vec::new();
    let mut passed = true;
    let tol = spectra.iter().map(|s| s.tolerance).fold(0.0f64, f64::max);
    for cluster in &clusters {
        if cluster.ambiguous {
            return Err(LabError::AmbiguousClustering(format!(
                "cluster near {} is wider than the tolerance",
                cluster.value
            )));
        }
        for p in 0..dim {
            let coexact = {
                // rank of ∂_{p+1}ᵀ restricted to E_λ^p
                let v = eigenvector_block(&eigs[p], cluster.value, tol);
                if v.ncols() == 0 {
                    0
                } else {
                    let d = s.boundary(p + 1).to_dense_f64();
                    restricted_rank(&(d.transpose() * v))
                }
            };
            let exact_above = {
                // rank of ∂_{p+1} restricted to E_λ^{p+1}
                let w = eigenvector_block(&eigs[p + 1], cluster.value, tol);
                if w.ncols() == 0 {
                    0
                } else {
                    let d = s.boundary(p + 1).to_dense_f64();
                    restricted_rank(&(d * w))
                }
            };
            if coexact != exact_above {
                passed = false;
            }
            pairs.push(SupersymmetryPair {
                cluster_value: cluster.value,
                degree: p,
                coexact_dim: coexact,
                exact_dim_above: exact_above,
            });
        }
    }
    Ok(SupersymmetryReport { pairs, passed })
}

fn eigenvector_block(eig: &EigenDecomposition, value: f64, tol: f64) -> DMatrix<f64> {
    let cols: Vec<usize> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|&(_, &mu)| (mu - value).abs() <= tol)
        .map(|(i, _)| i)
        .collect();
    let n = eig.vectors.nrows();
    let mut block = DMatrix::zeros(n, cols.len());
    for (k, &i) in cols.iter().enumerate() {
        block.set_column(k, &eig.vectors.column(i));
    }
    block
}

/// Normalized finite zeta value (1/|F|) Σ_{μ>0} (μ + λ)^{−s} over the
/// positive spectrum of Δ_j.
pub fn zeta_finite(
    spec: &SpectralData,
    s_exponent: Complex64,
    lambda: f64,
    folner_size: usize,
) -> Complex64 {
    assert!(lambda > 0.0, "zeta shift must be positive");
    let mut sum = Complex64::new(0.0, 0.0);
    for &mu in &spec.eigenvalues {
        if mu > spec.tolerance {
            sum += Complex64::new(mu + lambda, 0.0).powc(-s_exponent);
        }
    }
    sum / folner_size as f64
}
