//! `nsfit`: power-law fit of the spectral density function near zero.
//! Log-log fit of the normalized counting function N(λ) − N(0) on a
//! small-λ window, for the largest-ladder sections and the symbol
//! oracle; the fitted exponent is the finite-scale stand-in for the
//! small-λ decay exponent.

use folnerlab_core::group::GroupFamily;
use folnerlab_core::oracle;
use folnerlab_core::spectral::spectral_count;
use folnerlab_core::LabError;

use crate::report::{linear_fit, sig12, CsvWriter};

use super::{Context, ExperimentError, ExperimentOutcome, SectionBundle};

const BASE_WINDOW: (f64, f64) = (0.01, 0.1);
const WIDENED_WINDOWS: [(f64, f64); 2] = [(0.01, 0.3), (0.01, 1.0)];
const SAMPLES: usize = 12;
const MIN_POINTS: usize = 4;

fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

struct Fit {
    beta: f64,
    intercept: f64,
    r2: f64,
    points: usize,
    window: (f64, f64),
    widened: bool,
}

/// Fit log(N(λ) − N(0)) against log λ, widening the window when too
/// few eigenvalues fall inside it.
fn fit_counting<F: Fn(f64) -> f64>(counting: &F) -> Option<Fit> {
    let mut widened = false;
    for window in std::iter::once(BASE_WINDOW).chain(WIDENED_WINDOWS) {
        let pts: Vec<(f64, f64)> = log_spaced(window.0, window.1, SAMPLES)
            .into_iter()
            .filter_map(|lambda| {
                let y = counting(lambda);
                (y > 0.0).then(|| (lambda.ln(), y.ln()))
            })
            .collect();
        // require distinct y-values too: a flat step carries no slope
        let distinct = {
            let mut ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
            ys.sort_by(f64::total_cmp);
            ys.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
            ys.len()
        };
        if pts.len() >= MIN_POINTS && distinct >= 2 {
            let (beta, intercept, r2) = linear_fit(&pts)?;
            return Some(Fit {
                beta,
                intercept,
                r2,
                points: pts.len(),
                window,
                widened,
            });
        }
        widened = true;
    }
    None
}

pub fn run(ctx: &Context) -> Result<ExperimentOutcome, ExperimentError> {
    let mut outcome = ExperimentOutcome::default();
    let x = ctx.config.load_complex()?;
    let GroupFamily::FreeAbelian(torus_dim) = x.spec.family else {
        return Err(ExperimentError::Lab(LabError::UnsupportedOracle {
            family: x.spec.family.name(),
        }));
    };
    let dim = x.dim();
    let degrees = ctx.config.degrees_for(dim);
    let side = *ctx.config.ladder.last().expect("validated ladder");
    let grid = super::oracle_grid(torus_dim, ctx.config.quadrature_points)?;

    let mut csv = CsvWriter::create(
        &ctx.out_dir,
        "nsfit.csv",
        "nsfit",
        &ctx.config_hash,
        &[
            "complex",
            "source",
            "degree",
            "L",
            "beta",
            "log_prefactor",
            "r2",
            "points",
            "window_lo",
            "window_hi",
            "widened",
        ],
    )?;
    csv.comment("beta is the fitted small-lambda exponent of the normalized spectral density")?;

    for &j in &degrees {
        // oracle side
        let n0 = oracle::vn_spectral_function(&x, j, 0.0, &grid)?;
        let counting = |lambda: f64| {
            oracle::vn_spectral_function(&x, j, lambda, &grid).unwrap_or(f64::NAN) - n0
        };
        match fit_counting(&counting) {
            Some(fit) => {
                if fit.widened {
                    csv.comment(&format!(
                        "oracle degree {j}: window widened to [{}, {}] (insufficient small-lambda mass)",
                        fit.window.0, fit.window.1
                    ))?;
                }
                csv.row(&[
                    x.name.clone(),
                    "oracle".into(),
                    j.to_string(),
                    String::new(),
                    sig12(fit.beta),
                    sig12(fit.intercept),
                    sig12(fit.r2),
                    fit.points.to_string(),
                    sig12(fit.window.0),
                    sig12(fit.window.1),
                    fit.widened.to_string(),
                ])?;
            }
            None => {
                csv.comment(&format!("oracle degree {j}: no usable fit window"))?;
                outcome.assert_that(
                    "nsfit-oracle-window",
                    false,
                    format!("degree {j}: oracle fit window empty even after widening"),
                );
            }
        }
    }

    for &condition in &ctx.config.conditions {
        let bundle = SectionBundle::build(&x, side, condition.to_core(), ctx.config.dense_cap)?;
        for &j in &degrees {
            let Some(spec) = &bundle.spectra[j] else {
                csv.comment(&format!(
                    "{condition:?} degree {j}: skipped (dense cap exceeded)"
                ))?;
                continue;
            };
            let size = bundle.folner_size() as f64;
            let n0 = spectral_count(spec, 0.0) as f64 / size;
            let counting = |lambda: f64| spectral_count(spec, lambda) as f64 / size - n0;
            match fit_counting(&counting) {
                Some(fit) => {
                    if fit.widened {
                        csv.comment(&format!(
                            "{condition:?} degree {j}: window widened to [{}, {}]",
                            fit.window.0, fit.window.1
                        ))?;
                    }
                    csv.row(&[
                        x.name.clone(),
                        format!("{condition:?}").to_lowercase(),
                        j.to_string(),
                        side.to_string(),
                        sig12(fit.beta),
                        sig12(fit.intercept),
                        sig12(fit.r2),
                        fit.points.to_string(),
                        sig12(fit.window.0),
                        sig12(fit.window.1),
                        fit.widened.to_string(),
                    ])?;
                }
                None => {
                    csv.comment(&format!(
                        "{condition:?} degree {j}: insufficient small-lambda eigenvalues even after widening; increase L"
                    ))?;
                }
            }
        }
    }

    outcome.csv_files.push(csv.finish()?);
    Ok(outcome)
}
