//! `betti`: normalized Betti numbers along the Følner ladder against
//! the L² oracle, with the integer Morse partial-sum inequalities as
//! hard assertions and the free-group negative control.

use rayon::prelude::*;

use folnerlab_core::group::{cheeger_ratio, GroupFamily};

use crate::report::{fmt_opt, sig12, CsvWriter};

use super::{Context, ExperimentError, ExperimentOutcome, SectionBundle};

struct LadderPoint {
    side: u32,
    condition: crate::config::Condition,
    folner_size: usize,
    cheeger: f64,
    cells: Vec<usize>,
    betti: Vec<usize>,
    morse: Vec<i64>,
}

pub fn run(ctx: &Context) -> Result<ExperimentOutcome, ExperimentError> {
    let mut outcome = ExperimentOutcome::default();
    let x = ctx.config.load_complex()?;
    let dim = x.dim();
    let degrees = ctx.config.degrees_for(dim);

    // L² oracle per degree, computed once.
    let oracles: Vec<Option<f64>> = (0..=dim)
        .map(|j| super::l2_betti_oracle(&x, j, ctx.config.quadrature_points))
        .collect();

    let jobs: Vec<(u32, crate::config::Condition)> = ctx
        .config
        .ladder
        .iter()
        .flat_map(|&l| ctx.config.conditions.iter().map(move |&c| (l, c)))
        .collect();

    let points: Vec<LadderPoint> = ctx.pool().install(|| {
        jobs.par_iter()
            .map(|&(side, condition)| {
                let bundle =
                    SectionBundle::build(&x, side, condition.to_core(), ctx.config.dense_cap)?;
                let (cells, _) = bundle.section.cell_counts();
                // Integer Morse inequalities: alternating partial sums of
                // (cells_j - betti_j) are nonnegative for every N.
                let morse: Vec<i64> = (0..=dim)
                    .map(|n| {
                        (0..=n)
                            .map(|j| {
                                let sign = if (n - j) % 2 == 0 { 1 } else { -1 };
                                sign * (cells[j] as i64 - bundle.betti[j] as i64)
                            })
                            .sum()
                    })
                    .collect();
                Ok(LadderPoint {
                    side,
                    condition,
                    folner_size: bundle.folner_size(),
                    cheeger: cheeger_ratio(&bundle.folner)?,
                    cells,
                    betti: bundle.betti,
                    morse,
                })
            })
            .collect::<Result<Vec<_>, ExperimentError>>()
    })?;

    let mut csv = CsvWriter::create(
        &ctx.out_dir,
        "betti.csv",
        "betti",
        &ctx.config_hash,
        &[
            "complex",
            "L",
            "folner_size",
            "cheeger",
            "condition",
            "degree",
            "cells",
            "betti",
            "normalized",
            "oracle",
            "gap",
            "morse_partial",
            "morse_ok",
        ],
    )?;

    for p in &points {
        let morse_ok = p.morse.iter().all(|&m| m >= 0);
        outcome.assert_that(
            "morse-partial-sums",
            morse_ok,
            format!(
                "{} L={} {:?}: partial sums {:?}",
                x.name, p.side, p.condition, p.morse
            ),
        );
        for &j in &degrees {
            let normalized = p.betti[j] as f64 / p.folner_size as f64;
            let gap = oracles[j].map(|o| (normalized - o).abs());
            csv.row(&[
                x.name.clone(),
                p.side.to_string(),
                p.folner_size.to_string(),
                sig12(p.cheeger),
                format!("{:?}", p.condition).to_lowercase(),
                j.to_string(),
                p.cells[j].to_string(),
                p.betti[j].to_string(),
                sig12(normalized),
                fmt_opt(oracles[j]),
                fmt_opt(gap),
                p.morse[j].to_string(),
                morse_ok.to_string(),
            ])?;
        }
    }

    // Negative control: on the free-group tree the absolute sections
    // stay acyclic while b1_(2) = 1, and the Cheeger ratio stays away
    // from zero. The harness asserts the failure of convergence.
    if x.spec.family == GroupFamily::FreeGroup2 {
        let abs_points: Vec<&LadderPoint> = points
            .iter()
            .filter(|p| p.condition == crate::config::Condition::Absolute)
            .collect();
        if !abs_points.is_empty() {
            let oracle_b1 = oracles[1].unwrap_or(1.0);
            let persistent = abs_points.iter().all(|p| {
                let normalized = p.betti[1] as f64 / p.folner_size as f64;
                (normalized - oracle_b1).abs() >= 0.9
            });
            outcome.assert_that(
                "negative-control-gap",
                persistent,
                format!(
                    "absolute normalized b1 stays >= 0.9 away from b1_(2) = {oracle_b1} on every ball"
                ),
            );
            let min_cheeger = points
                .iter()
                .map(|p| p.cheeger)
                .fold(f64::INFINITY, f64::min);
            outcome.assert_that(
                "negative-control-cheeger",
                min_cheeger > 1.0,
                format!("min Cheeger ratio over ladder = {min_cheeger}"),
            );
        }
    }

    outcome.csv_files.push(csv.finish()?);
    Ok(outcome)
}
