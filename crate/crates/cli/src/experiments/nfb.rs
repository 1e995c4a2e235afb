//! `nfb`: the not-feeling-the-boundary probe. Diagonal heat-kernel
//! entries of the finite section against the exact lattice kernel, at
//! cells graded by distance to the section's boundary layer, with a
//! least-squares decay fit of log-difference against D²/t.

use std::collections::{HashMap, VecDeque};

use folnerlab_core::bessel::lattice_heat_kernel;
use folnerlab_core::complex::EquivariantChainComplex;
use folnerlab_core::group::{GroupElement, GroupFamily};
use folnerlab_core::spectral::{eigen_decomposition, heat_kernel_entry};
use folnerlab_core::LabError;

use crate::report::{linear_fit, sig12, CsvWriter};

use super::{Context, ExperimentError, ExperimentOutcome, SectionBundle};

/// Fit window: differences below this are at the mercy of roundoff.
const DIFF_FLOOR: f64 = 1e-14;

/// The Bessel oracle is the degree-0 heat kernel of the standard ℤᵈ
/// Cayley graph, so the complex must have one vertex orbit and one
/// edge orbit per axis with boundary g_i − 1 (circle and 2-torus
/// shapes, whether built-in or loaded).
fn standard_lattice_dim(x: &EquivariantChainComplex) -> Option<usize> {
    let GroupFamily::FreeAbelian(d) = x.spec.family else {
        return None;
    };
    if d > 2 || x.orbit_counts[0] != 1 || x.orbit_counts.get(1) != Some(&d) {
        return None;
    }
    let b = x.boundary(1);
    let mut seen_axes = vec![false; d];
    for col in 0..d {
        let entry = b.get(0, col);
        if entry.support_len() != 2 || entry.coeff(&x.spec.identity()) != -1 {
            return None;
        }
        let axis = entry.iter().find_map(|(g, c)| {
            let GroupElement::Abelian(v) = g else { return None };
            let i = v.iter().position(|&x| x == 1)?;
            (c == 1 && v.iter().map(|c| c.unsigned_abs()).sum::<u64>() == 1).then_some(i)
        });
        match axis {
            Some(i) if !seen_axes[i] => seen_axes[i] = true,
            _ => return None,
        }
    }
    Some(d)
}

pub fn run(ctx: &Context) -> Result<ExperimentOutcome, ExperimentError> {
    let mut outcome = ExperimentOutcome::default();
    let x = ctx.config.load_complex()?;
    let Some(torus_dim) = standard_lattice_dim(&x) else {
        return Err(ExperimentError::Lab(LabError::Domain(
            "nfb needs a circle_Z or torus2_Z2 shaped complex (lattice heat-kernel oracle)"
                .into(),
        )));
    };
    let side = *ctx.config.ladder.last().expect("validated ladder");

    let mut csv = CsvWriter::create(
        &ctx.out_dir,
        "nfb.csv",
        "nfb",
        &ctx.config_hash,
        &[
            "complex",
            "condition",
            "L",
            "t",
            "cell",
            "distance",
            "finite_entry",
            "lattice_entry",
            "diff",
        ],
    )?;
    let mut fit_csv = CsvWriter::create(
        &ctx.out_dir,
        "nfb_fit.csv",
        "nfb",
        &ctx.config_hash,
        &[
            "complex",
            "condition",
            "L",
            "slope",
            "intercept",
            "r2",
            "points",
            "center_distance",
            "center_diff_t1",
        ],
    )?;

    for &condition in &ctx.config.conditions {
        let bundle = SectionBundle::build(&x, side, condition.to_core(), ctx.config.dense_cap)?;
        let s = &bundle.section;
        let eig = eigen_decomposition(s, 0, ctx.config.dense_cap)?;

        // Distance of every vertex cell to the section's boundary layer
        // (cells with a generator-translate outside the vertex set).
        let verts: Vec<&GroupElement> = s.cells(0).iter().map(|(_, g)| g).collect();
        let index: HashMap<&GroupElement, usize> =
            verts.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        let gens = x.spec.generators();
        let mut dist = vec![usize::MAX; verts.len()];
        let mut queue = VecDeque::new();
        for (i, g) in verts.iter().enumerate() {
            let boundary = gens
                .iter()
                .any(|s_| !index.contains_key(&x.spec.multiply(g, s_).expect("valid")));
            if boundary {
                dist[i] = 0;
                queue.push_back(i);
            }
        }
        while let Some(i) = queue.pop_front() {
            for s_ in &gens {
                let h = x.spec.multiply(verts[i], s_).expect("valid");
                if let Some(&k) = index.get(&h) {
                    if dist[k] == usize::MAX {
                        dist[k] = dist[i] + 1;
                        queue.push_back(k);
                    }
                }
            }
        }

        // One representative cell per positive distance (first in the
        // deterministic cell order).
        let mut reps: Vec<(usize, usize)> = Vec::new(); // (distance, cell index)
        let max_d = dist.iter().copied().max().unwrap_or(0);
        for d in 1..=max_d {
            if let Some(i) = (0..verts.len()).find(|&i| dist[i] == d) {
                reps.push((d, i));
            }
        }

        let lattice: HashMap<u64, f64> = ctx
            .config
            .t_grid
            .iter()
            .map(|&t| {
                (
                    t.to_bits(),
                    lattice_heat_kernel(torus_dim, t, &vec![0; torus_dim]),
                )
            })
            .collect();

        let mut points = Vec::new();
        for &t in &ctx.config.t_grid {
            let lat = lattice[&t.to_bits()];
            for &(d, i) in &reps {
                let fin = heat_kernel_entry(&eig, t, i, i);
                let diff = (fin - lat).abs();
                csv.row(&[
                    x.name.clone(),
                    format!("{condition:?}").to_lowercase(),
                    side.to_string(),
                    sig12(t),
                    format!("{}", verts[i]),
                    d.to_string(),
                    sig12(fin),
                    sig12(lat),
                    sig12(diff),
                ])?;
                if diff > DIFF_FLOOR {
                    points.push(((d * d) as f64 / t, diff.ln()));
                }
            }
        }

        let center = (0..verts.len()).max_by_key(|&i| dist[i]).expect("nonempty");
        let center_diff = {
            let lat = lattice_heat_kernel(torus_dim, 1.0, &vec![0; torus_dim]);
            (heat_kernel_entry(&eig, 1.0, center, center) - lat).abs()
        };

        match linear_fit(&points) {
            Some((slope, intercept, r2)) => {
                fit_csv.row(&[
                    x.name.clone(),
                    format!("{condition:?}").to_lowercase(),
                    side.to_string(),
                    sig12(slope),
                    sig12(intercept),
                    sig12(r2),
                    points.len().to_string(),
                    dist[center].to_string(),
                    sig12(center_diff),
                ])?;
                outcome.assert_that(
                    "nfb-decay-fit",
                    slope < 0.0,
                    format!("{condition:?}: slope {slope}, r2 {r2}"),
                );
            }
            None => {
                fit_csv.comment(&format!(
                    "{condition:?}: fit window empty (all differences below {DIFF_FLOOR:.0e}); rerun with smaller t values"
                ))?;
                outcome.assert_that(
                    "nfb-decay-fit",
                    false,
                    format!("{condition:?}: underflow window empty; reduce the t grid"),
                );
            }
        }
    }

    outcome.csv_files.push(csv.finish()?);
    outcome.csv_files.push(fit_csv.finish()?);
    Ok(outcome)
}
