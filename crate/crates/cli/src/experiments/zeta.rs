//! `zeta`: normalized finite zeta values along the ladder against the
//! L² zeta oracle, on the half-plane Re s > d/2.

use num_complex::Complex64;
use rayon::prelude::*;

use folnerlab_core::group::GroupFamily;
use folnerlab_core::oracle;
use folnerlab_core::spectral::zeta_finite;
use folnerlab_core::LabError;

use crate::report::{sig12, CsvWriter};

use super::{Context, ExperimentError, ExperimentOutcome, SectionBundle};

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
    let lambda = ctx.config.zeta_lambda;
    let half_plane = torus_dim as f64 / 2.0;
    let (admissible, skipped): (Vec<f64>, Vec<f64>) =
        ctx.config.s_samples.iter().partition(|&&s| s > half_plane);

    let grid = super::oracle_grid(torus_dim, ctx.config.quadrature_points)?;
    let oracle_values: Vec<Vec<f64>> = degrees
        .iter()
        .map(|&j| {
            admissible
                .iter()
                .map(|&s| {
                    oracle::vn_zeta(&x, j, Complex64::new(s, 0.0), lambda, &grid).map(|z| z.re)
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;

    let jobs: Vec<(u32, crate::config::Condition)> = ctx
        .config
        .ladder
        .iter()
        .flat_map(|&l| ctx.config.conditions.iter().map(move |&c| (l, c)))
        .collect();
    let bundles: Vec<SectionBundle> = ctx.pool().install(|| {
        jobs.par_iter()
            .map(|&(side, condition)| {
                SectionBundle::build(&x, side, condition.to_core(), ctx.config.dense_cap)
            })
            .collect::<Result<Vec<_>, ExperimentError>>()
    })?;

    let mut csv = CsvWriter::create(
        &ctx.out_dir,
        "zeta.csv",
        "zeta",
        &ctx.config_hash,
        &[
            "complex",
            "L",
            "folner_size",
            "condition",
            "degree",
            "s",
            "lambda",
            "zeta_finite",
            "oracle",
            "gap",
        ],
    )?;
    for &s in &skipped {
        csv.comment(&format!(
            "skipped s={s}: outside the half-plane Re s > {half_plane}"
        ))?;
    }

    let mut max_gaps: Vec<(u32, String, usize, f64)> = Vec::new();
    for (bundle, &(side, condition)) in bundles.iter().zip(&jobs) {
        for (ji, &j) in degrees.iter().enumerate() {
            let Some(spec) = &bundle.spectra[j] else {
                csv.comment(&format!(
                    "L={side} degree {j}: skipped (dense cap exceeded)"
                ))?;
                continue;
            };
            let mut max_gap = 0.0f64;
            for (si, &s) in admissible.iter().enumerate() {
                let z = zeta_finite(spec, Complex64::new(s, 0.0), lambda, bundle.folner_size());
                let o = oracle_values[ji][si];
                let gap = (z.re - o).abs();
                max_gap = max_gap.max(gap);
                csv.row(&[
                    x.name.clone(),
                    side.to_string(),
                    bundle.folner_size().to_string(),
                    format!("{condition:?}").to_lowercase(),
                    j.to_string(),
                    sig12(s),
                    sig12(lambda),
                    sig12(z.re),
                    sig12(o),
                    sig12(gap),
                ])?;
            }
            max_gaps.push((side, format!("{condition:?}").to_lowercase(), j, max_gap));
        }
    }
    outcome.csv_files.push(csv.finish()?);

    // Uniformity proxy: max gap over the s segment per ladder point.
    let mut summary = CsvWriter::create(
        &ctx.out_dir,
        "zeta_max.csv",
        "zeta",
        &ctx.config_hash,
        &["complex", "condition", "degree", "L", "max_gap_over_s"],
    )?;
    for (side, condition, j, gap) in &max_gaps {
        summary.row(&[
            x.name.clone(),
            condition.clone(),
            j.to_string(),
            side.to_string(),
            sig12(*gap),
        ])?;
    }
    outcome.csv_files.push(summary.finish()?);
    Ok(outcome)
}
