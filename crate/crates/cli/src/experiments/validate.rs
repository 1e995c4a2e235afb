//! `validate`: loads the configured complex, checks ∂∘∂ = 0 over the
//! group ring and the Euler bookkeeping, then cuts smallest-ladder
//! sections under both conditions and re-checks the integer matrices.

use folnerlab_core::group::folner_box;
use folnerlab_core::section::{build_section, BoundaryCondition};

use super::{Context, ExperimentError, ExperimentOutcome};

pub fn run(ctx: &Context) -> Result<ExperimentOutcome, ExperimentError> {
    let mut outcome = ExperimentOutcome::default();
    let x = match ctx.config.load_complex() {
        Ok(x) => x,
        Err(e) => {
            outcome.assert_that("complex-loads", false, e.to_string());
            return Ok(outcome);
        }
    };
    outcome.assert_that(
        "complex-loads",
        true,
        format!(
            "{}: orbits {:?}, chi {}",
            x.name, x.orbit_counts, x.euler_char
        ),
    );

    let report = x.validate();
    outcome.assert_that(
        "group-ring-dd-zero",
        report.passed,
        report.messages.join("; "),
    );
    if !report.passed {
        return Ok(outcome);
    }

    let side = ctx.config.ladder[0];
    match folner_box(x.spec, side) {
        Ok(f) => {
            for bc in [BoundaryCondition::Relative, BoundaryCondition::Absolute] {
                match build_section(&x, &f, bc) {
                    Ok(s) => {
                        let (counts, chi) = s.cell_counts();
                        outcome.assert_that(
                            &format!("section-{}", bc.name()),
                            true,
                            format!("L={side}: cells {counts:?}, chi {chi}"),
                        );
                    }
                    Err(e) => {
                        outcome.assert_that(
                            &format!("section-{}", bc.name()),
                            false,
                            e.to_string(),
                        );
                    }
                }
            }
        }
        Err(e) => outcome.assert_that("folner-box", false, e.to_string()),
    }
    Ok(outcome)
}
