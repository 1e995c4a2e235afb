//! `ids`: integrated density of states. Normalized eigenvalue counts
//! under both boundary conditions against the symbol-quadrature
//! oracle, the boundary-condition independence diagnostic, and the
//! spectrum-containment probe.

use rayon::prelude::*;

use folnerlab_core::group::GroupFamily;
use folnerlab_core::oracle::{self, TorusSymbol};
use folnerlab_core::section::BoundaryCondition;
use folnerlab_core::spectral::spectral_count;

use crate::report::{fmt_opt, sig12, CsvWriter};

use super::{Context, ExperimentError, ExperimentOutcome, SectionBundle};

pub fn run(ctx: &Context) -> Result<ExperimentOutcome, ExperimentError> {
    let mut outcome = ExperimentOutcome::default();
    let x = ctx.config.load_complex()?;
    let dim = x.dim();
    let degrees = ctx.config.degrees_for(dim);

    // Oracle: counting function of the symbol, plus the sampled
    // spectral support and its resolution (Lipschitz bound times the
    // grid mesh) for the containment probe.
    struct DegreeOracle {
        counts: Vec<Option<f64>>, // per lambda
        support: Vec<f64>,        // sorted sampled eigenvalues
        resolution: f64,
    }
    let oracles: Vec<Option<DegreeOracle>> = match x.spec.family {
        GroupFamily::FreeAbelian(d) => {
            let grid = super::oracle_grid(d, ctx.config.quadrature_points)?;
            degrees
                .iter()
                .map(|&j| {
                    let sym: TorusSymbol = oracle::symbol(&x, j).ok()?;
                    let counts = ctx
                        .config
                        .lambda_grid
                        .iter()
                        .map(|&l| oracle::vn_spectral_function(&x, j, l, &grid).ok())
                        .collect();
                    let mut support = Vec::new();
                    grid.integrate(d, |theta| {
                        support.extend(sym.eigenvalues_at(theta));
                        0.0
                    });
                    support.sort_by(f64::total_cmp);
                    let mesh = 2.0 * std::f64::consts::PI / grid.points_per_axis as f64;
                    let resolution = sym.lipschitz_bound() * mesh * d as f64 / 2.0 + 1e-8;
                    Some(DegreeOracle {
                        counts,
                        support,
                        resolution,
                    })
                })
                .collect()
        }
        _ => degrees.iter().map(|_| None).collect(),
    };

    // Both conditions are always computed: the experiment is about
    // their independence.
    let bundles: Vec<(SectionBundle, SectionBundle)> = ctx.pool().install(|| {
        ctx.config
            .ladder
            .par_iter()
            .map(|&side| {
                let rel = SectionBundle::build(
                    &x,
                    side,
                    BoundaryCondition::Relative,
                    ctx.config.dense_cap,
                )?;
                let abs = SectionBundle::build(
                    &x,
                    side,
                    BoundaryCondition::Absolute,
                    ctx.config.dense_cap,
                )?;
                Ok((rel, abs))
            })
            .collect::<Result<Vec<_>, ExperimentError>>()
    })?;

    let mut csv = CsvWriter::create(
        &ctx.out_dir,
        "ids.csv",
        "ids",
        &ctx.config_hash,
        &[
            "complex",
            "L",
            "folner_size",
            "degree",
            "lambda",
            "n_rel",
            "n_abs",
            "nrel_normalized",
            "nabs_normalized",
            "oracle",
            "gap_rel",
            "gap_abs",
            "bc_diff",
            "containment_ok",
        ],
    )?;

    for (rel, abs) in &bundles {
        let size = rel.folner_size() as f64;
        for (ji, &j) in degrees.iter().enumerate() {
            let (Some(rel_spec), Some(abs_spec)) = (&rel.spectra[j], &abs.spectra[j]) else {
                csv.comment(&format!(
                    "L={} degree {j}: skipped (dense cap exceeded)",
                    rel.side
                ))?;
                continue;
            };
            // containment: every finite eigenvalue lies within the
            // resolution of the sampled oracle support
            let containment = oracles[ji].as_ref().map(|o| {
                let within = |mu: f64| {
                    let idx = o.support.partition_point(|&s| s < mu);
                    let mut best = f64::INFINITY;
                    if idx < o.support.len() {
                        best = best.min((o.support[idx] - mu).abs());
                    }
                    if idx > 0 {
                        best = best.min((mu - o.support[idx - 1]).abs());
                    }
                    best <= o.resolution
                };
                rel_spec.eigenvalues.iter().all(|&mu| within(mu))
                    && abs_spec.eigenvalues.iter().all(|&mu| within(mu))
            });
            if let Some(ok) = containment {
                outcome.assert_that(
                    "spectrum-containment",
                    ok,
                    format!("L={} degree {j}", rel.side),
                );
            }
            for (li, &lambda) in ctx.config.lambda_grid.iter().enumerate() {
                let n_rel = spectral_count(rel_spec, lambda);
                let n_abs = spectral_count(abs_spec, lambda);
                let nr = n_rel as f64 / size;
                let na = n_abs as f64 / size;
                let oracle_v = oracles[ji].as_ref().and_then(|o| o.counts[li]);
                csv.row(&[
                    x.name.clone(),
                    rel.side.to_string(),
                    (size as usize).to_string(),
                    j.to_string(),
                    sig12(lambda),
                    n_rel.to_string(),
                    n_abs.to_string(),
                    sig12(nr),
                    sig12(na),
                    fmt_opt(oracle_v),
                    fmt_opt(oracle_v.map(|o| (nr - o).abs())),
                    fmt_opt(oracle_v.map(|o| (na - o).abs())),
                    sig12((nr - na).abs()),
                    containment.map(|b| b.to_string()).unwrap_or_default(),
                ])?;
            }
        }
    }
    outcome.csv_files.push(csv.finish()?);
    Ok(outcome)
}
