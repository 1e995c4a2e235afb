//! `euler`: normalized Euler characteristics of the sections against
//! χ(M), and the McKean–Singer residual over the t grid as a hard
//! assertion.

use rayon::prelude::*;

use crate::report::{sig12, CsvWriter};

use super::{heat_value, Context, ExperimentError, ExperimentOutcome, SectionBundle};

const MS_RESIDUAL_BOUND: f64 = 1e-8;

struct EulerRow {
    side: u32,
    condition: crate::config::Condition,
    folner_size: usize,
    chi_section: i64,
    ms_residual_max: f64,
}

pub fn run(ctx: &Context) -> Result<ExperimentOutcome, ExperimentError> {
    let mut outcome = ExperimentOutcome::default();
    let x = ctx.config.load_complex()?;
    let dim = x.dim();

    let jobs: Vec<(u32, crate::config::Condition)> = ctx
        .config
        .ladder
        .iter()
        .flat_map(|&l| ctx.config.conditions.iter().map(move |&c| (l, c)))
        .collect();

    let opts = ctx.heat_options();
    let rows: Vec<EulerRow> = ctx.pool().install(|| {
        jobs.par_iter()
            .map(|&(side, condition)| {
                let bundle =
                    SectionBundle::build(&x, side, condition.to_core(), ctx.config.dense_cap)?;
                let (_, chi) = bundle.section.cell_counts();
                let mut residual_max = 0.0f64;
                for &t in &ctx.config.t_grid {
                    let mut alt = 0.0;
                    for j in 0..=dim {
                        let (v, _) = heat_value(&bundle, j, t, &opts)?;
                        alt += if j % 2 == 0 { v } else { -v };
                    }
                    residual_max = residual_max.max((alt - chi as f64).abs());
                }
                Ok(EulerRow {
                    side,
                    condition,
                    folner_size: bundle.folner_size(),
                    chi_section: chi,
                    ms_residual_max: residual_max,
                })
            })
            .collect::<Result<Vec<_>, ExperimentError>>()
    })?;

    let mut csv = CsvWriter::create(
        &ctx.out_dir,
        "euler.csv",
        "euler",
        &ctx.config_hash,
        &[
            "complex",
            "L",
            "folner_size",
            "condition",
            "chi_section",
            "chi_normalized",
            "chi_base",
            "gap",
            "ms_residual_max",
        ],
    )?;
    for r in &rows {
        let normalized = r.chi_section as f64 / r.folner_size as f64;
        let gap = (normalized - x.euler_char as f64).abs();
        csv.row(&[
            x.name.clone(),
            r.side.to_string(),
            r.folner_size.to_string(),
            format!("{:?}", r.condition).to_lowercase(),
            r.chi_section.to_string(),
            sig12(normalized),
            x.euler_char.to_string(),
            sig12(gap),
            sig12(r.ms_residual_max),
        ])?;
        outcome.assert_that(
            "mckean-singer-residual",
            r.ms_residual_max <= MS_RESIDUAL_BOUND,
            format!(
                "{} L={} {:?}: residual {}",
                x.name, r.side, r.condition, r.ms_residual_max
            ),
        );
    }
    outcome.csv_files.push(csv.finish()?);
    Ok(outcome)
}
