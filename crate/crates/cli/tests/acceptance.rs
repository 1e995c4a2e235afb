//! Acceptance suite: one test per laboratory exit criterion, each at
//! its pinned tolerance, printing one pass/fail line (run with
//! `cargo test -p folnerlab-cli --test acceptance -- --nocapture`).

use std::fs;
use std::time::Instant;

use num_complex::Complex64;

use folnerlab_cli::config::load_config;
use folnerlab_cli::experiments::{self, Context, SectionBundle};
use folnerlab_core::bessel::{bessel_i_scaled, lattice_heat_kernel};
use folnerlab_core::complex::{builtin_complex, builtin_names};
use folnerlab_core::group::{cheeger_ratio, folner_box};
use folnerlab_core::oracle::{self, QuadratureGrid};
use folnerlab_core::section::{build_section, BoundaryCondition};
use folnerlab_core::spectral::{
    self, cluster_positive, dsum, eigen_decomposition, spectral_count, supersymmetry_check,
    zeta_finite, HeatOptions, SpectralData,
};

const CAP: usize = spectral::DEFAULT_DENSE_CAP;
const CONDITIONS: [BoundaryCondition; 2] =
    [BoundaryCondition::Relative, BoundaryCondition::Absolute];

fn report(number: usize, name: &str, passed: bool, detail: &str) {
    println!(
        "ACCEPTANCE {number} ({name}): {} — {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(
        passed,
        "acceptance criterion {number} ({name}) failed: {detail}"
    );
}

fn bundle(name: &str, side: u32, bc: BoundaryCondition) -> SectionBundle {
    let x = builtin_complex(name).unwrap();
    SectionBundle::build(&x, side, bc, CAP).unwrap()
}

#[test]
fn criterion_1_torus_heat_trace_convergence() {
    let x = builtin_complex("torus2_Z2").unwrap();
    let grid = QuadratureGrid::trapezoid(256).unwrap();
    let oracle = oracle::vn_heat_trace(&x, 0, 1.0, &grid).unwrap();
    let bessel = bessel_i_scaled(0, 2.0);
    assert!(
        (oracle - bessel * bessel).abs() < 1e-8,
        "oracle cross-check"
    );

    let mut detail = String::new();
    let mut ok = true;
    for bc in CONDITIONS {
        let start = Instant::now();
        let mut gaps = Vec::new();
        for side in [4u32, 8, 16] {
            let b = bundle("torus2_Z2", side, bc);
            let spec = b.spectra[0].as_ref().unwrap();
            let trace = spectral::heat_trace_from_spectrum(spec, 1.0);
            gaps.push((trace / b.folner_size() as f64 - oracle).abs());
        }
        let elapsed = start.elapsed().as_secs_f64();
        let decreasing = gaps[0] > gaps[1] && gaps[1] > gaps[2];
        let tight = gaps[2] <= 0.05;
        let fast = elapsed <= 60.0;
        ok &= decreasing && tight && fast;
        detail.push_str(&format!(
            "{}: gaps {:.4}/{:.4}/{:.4} at L=4/8/16, {:.1}s; ",
            bc.name(),
            gaps[0],
            gaps[1],
            gaps[2],
            elapsed
        ));
    }
    report(1, "torus heat-trace convergence", ok, &detail);
}

#[test]
fn criterion_2_betti_convergence_to_zero() {
    let mut ok = true;
    let mut detail = String::new();
    for name in ["circle_Z", "torus2_Z2"] {
        for bc in CONDITIONS {
            for side in [2u32, 4, 8, 16] {
                let b = bundle(name, side, bc);
                let size = b.folner_size() as u64;
                for (j, &bj) in b.betti.iter().enumerate() {
                    // normalized b^j <= 4/L, exact integer arithmetic
                    if (bj as u64) * u64::from(side) > 4 * size {
                        ok = false;
                        detail.push_str(&format!(
                            "violated at {name} {} L={side} degree {j} (b={bj}); ",
                            bc.name()
                        ));
                    }
                }
            }
        }
    }
    if ok {
        detail = "normalized b^j <= 4/L at every ladder point, both conditions, exact".into();
    }
    report(2, "betti convergence to zero", ok, &detail);
}

#[test]
fn criterion_3_surface_betti_convergence() {
    let start = Instant::now();
    let x = builtin_complex("surface_genus2_Z4").unwrap();
    let oracle = oracle::l2_betti_from_euler(&x, 1).unwrap();
    assert_eq!(oracle, 2.0, "Euler-identity oracle");

    let mut ok = true;
    let mut detail = format!("oracle b1 = {oracle}; ");
    for bc in CONDITIONS {
        let mut gaps = Vec::new();
        for side in [2u32, 3] {
            let b = bundle("surface_genus2_Z4", side, bc);
            let normalized = b.betti[1] as f64 / b.folner_size() as f64;
            gaps.push((normalized - oracle).abs());
        }
        let within = gaps[1] <= 0.75;
        // strictly closer when the coarser point is off; the relative
        // sections hit the oracle exactly at both ladder points
        let closer = if gaps[0] > 0.0 {
            gaps[1] < gaps[0]
        } else {
            gaps[1] <= gaps[0]
        };
        ok &= within && closer;
        detail.push_str(&format!(
            "{}: gaps {:.4} (L=2) -> {:.4} (L=3); ",
            bc.name(),
            gaps[0],
            gaps[1]
        ));
    }
    let elapsed = start.elapsed().as_secs_f64();
    ok &= elapsed <= 600.0;
    detail.push_str(&format!("{elapsed:.1}s"));
    report(3, "surface b1 convergence", ok, &detail);
}

#[test]
fn criterion_4_euler_index_identities() {
    let mut ok = true;
    let mut detail = String::new();

    // torus relative: chi/|F| = 0 exactly at every L
    for side in [2u32, 4, 8, 16] {
        let b = bundle("torus2_Z2", side, BoundaryCondition::Relative);
        let (_, chi) = b.section.cell_counts();
        if chi != 0 {
            ok = false;
            detail.push_str(&format!("torus relative chi = {chi} at L={side}; "));
        }
    }

    // surface: |chi/|F| + 2| <= 8/L
    for bc in CONDITIONS {
        for side in [2u32, 3] {
            let b = bundle("surface_genus2_Z4", side, bc);
            let (_, chi) = b.section.cell_counts();
            let gap = (chi as f64 / b.folner_size() as f64 + 2.0).abs();
            if gap > 8.0 / f64::from(side) {
                ok = false;
                detail.push_str(&format!(
                    "surface {} L={side}: |chi/|F| + 2| = {gap:.4}; ",
                    bc.name()
                ));
            }
        }
    }

    // McKean–Singer residual <= 1e-8 on every builtin at t in {0.1, 1, 10}
    let opts = HeatOptions::default();
    let mut worst: f64 = 0.0;
    for name in builtin_names() {
        for bc in CONDITIONS {
            let x = builtin_complex(name).unwrap();
            let f = folner_box(x.spec, 2).unwrap();
            let s = build_section(&x, &f, bc).unwrap();
            let (_, chi) = s.cell_counts();
            for t in [0.1, 1.0, 10.0] {
                let mut alt = 0.0;
                for j in 0..=s.dim() {
                    let v = spectral::heat_trace(&s, j, t, &opts).unwrap().value;
                    alt += if j % 2 == 0 { v } else { -v };
                }
                worst = worst.max((alt - chi as f64).abs());
            }
        }
    }
    if worst > 1e-8 {
        ok = false;
    }
    detail.push_str(&format!("max McKean-Singer residual {worst:.2e}"));
    report(4, "Euler/index identities", ok, &detail);
}

#[test]
fn criterion_5_ids_boundary_condition_independence() {
    let x = builtin_complex("torus2_Z2").unwrap();
    let grid = QuadratureGrid::trapezoid(256).unwrap();
    let rel = bundle("torus2_Z2", 16, BoundaryCondition::Relative);
    let abs = bundle("torus2_Z2", 16, BoundaryCondition::Absolute);
    let size = rel.folner_size() as f64;

    let mut failures = Vec::new();
    for j in 0..=2usize {
        let rel_spec = rel.spectra[j].as_ref().unwrap();
        let abs_spec = abs.spectra[j].as_ref().unwrap();
        for lambda in [0.5, 1.0, 2.0] {
            let oracle = oracle::vn_spectral_function(&x, j, lambda, &grid).unwrap();
            let nr = spectral_count(rel_spec, lambda) as f64 / size;
            let na = spectral_count(abs_spec, lambda) as f64 / size;
            println!(
                "  criterion 5 data: j={j} lambda={lambda}: N_rel/|F|={nr:.4} N_abs/|F|={na:.4} oracle={oracle:.4} |r-a|={:.4}",
                (nr - na).abs()
            );
            if (nr - na).abs() > 0.05 {
                failures.push(format!(
                    "j={j} λ={lambda}: |rel-abs| = {:.4}",
                    (nr - na).abs()
                ));
            }
            if (nr - oracle).abs() > 0.05 {
                failures.push(format!(
                    "j={j} λ={lambda}: rel gap {:.4}",
                    (nr - oracle).abs()
                ));
            }
            if (na - oracle).abs() > 0.05 {
                failures.push(format!(
                    "j={j} λ={lambda}: abs gap {:.4}",
                    (na - oracle).abs()
                ));
            }
        }
    }
    let ok = failures.is_empty();
    let detail = if ok {
        "all 27 sub-checks within 0.05".to_string()
    } else {
        format!(
            "{} of 27 sub-checks exceed 0.05: {} (Neumann-side boundary term ~|shell|/|F| = 13% at L=16; known red, see README)",
            failures.len(),
            failures.join("; ")
        )
    };
    report(5, "IDS boundary-condition independence", ok, &detail);
}

#[test]
fn criterion_6_not_feeling_the_boundary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("nfb.toml");
    fs::write(
        &cfg_path,
        "complex = \"circle_Z\"\nladder = [41]\nt_grid = [0.5, 1.0, 2.0]\n",
    )
    .unwrap();
    let (config, hash) = load_config(&cfg_path).unwrap();
    let ctx = Context::new(config, hash, dir.path().join("out"), 2);
    let outcome = experiments::nfb::run(&ctx).unwrap();
    let fit_csv = outcome
        .csv_files
        .iter()
        .find(|p| p.file_name().unwrap() == "nfb_fit.csv")
        .unwrap();
    let rows: Vec<Vec<String>> = fs::read_to_string(fit_csv)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|s| s.to_string()).collect())
        .collect();
    assert_eq!(rows.len(), 2, "one fit per condition");

    let mut ok = true;
    let mut detail = String::new();
    for row in &rows {
        let condition = &row[1];
        let slope: f64 = row[3].parse().unwrap();
        let r2: f64 = row[5].parse().unwrap();
        let center_diff: f64 = row[8].parse().unwrap();
        let good = slope < 0.0 && r2 >= 0.9 && center_diff <= 1e-6;
        ok &= good;
        detail.push_str(&format!(
            "{condition}: slope {slope:.3}, R² {r2:.3}, center diff {center_diff:.2e}; "
        ));
    }
    // independent Bessel cross-check of the center value at t=1
    let b = bundle("circle_Z", 41, BoundaryCondition::Relative);
    let eig = eigen_decomposition(&b.section, 0, CAP).unwrap();
    let center = b.section.num_cells(0) / 2;
    let diff = (spectral::heat_kernel_entry(&eig, 1.0, center, center)
        - lattice_heat_kernel(1, 1.0, &[0]))
    .abs();
    ok &= diff <= 1e-6;
    detail.push_str(&format!("bessel cross-check diff {diff:.2e}"));
    report(6, "not-feeling-the-boundary decay", ok, &detail);
}

#[test]
fn criterion_7_negative_control() {
    // the harness itself must assert the failure of convergence
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("wedge.toml");
    fs::write(
        &cfg_path,
        "complex = \"wedge2_F2\"\nladder = [1, 2, 3, 4, 5]\n",
    )
    .unwrap();
    let (config, hash) = load_config(&cfg_path).unwrap();
    let ctx = Context::new(config, hash, dir.path().join("out"), 2);
    let outcome = experiments::betti::run(&ctx).unwrap();

    let mut ok = true;
    let mut detail = String::new();
    for name in ["negative-control-gap", "negative-control-cheeger"] {
        let found = outcome.assertions.iter().find(|a| a.name == name);
        match found {
            Some(a) if a.passed => {}
            Some(a) => {
                ok = false;
                detail.push_str(&format!("harness assertion {name} failed: {}; ", a.detail));
            }
            None => {
                ok = false;
                detail.push_str(&format!("harness assertion {name} missing; "));
            }
        }
    }

    // direct re-check: absolute normalized b1 = 0 on every ball while
    // b1_(2) = 1, and the Cheeger ratio stays bounded away from zero
    let x = builtin_complex("wedge2_F2").unwrap();
    assert_eq!(oracle::l2_betti_from_euler(&x, 1), Some(1.0));
    let mut min_cheeger = f64::INFINITY;
    for r in 1..=5u32 {
        let f = folner_box(x.spec, r).unwrap();
        min_cheeger = min_cheeger.min(cheeger_ratio(&f).unwrap());
        let s = build_section(&x, &f, BoundaryCondition::Absolute).unwrap();
        let b1 = spectral::betti(&s, 1).unwrap();
        if b1 != 0 {
            ok = false;
            detail.push_str(&format!("b1 = {b1} at r={r}; "));
        }
    }
    // b1 = 0 everywhere makes the gap to b1_(2) = 1 exactly 1 >= 0.9;
    // nonamenability: the ratio never drops toward zero
    ok &= min_cheeger > 1.0;
    detail.push_str(&format!(
        "gap 1 >= 0.9 on every ball; min cheeger {min_cheeger:.3}"
    ));
    report(7, "negative control", ok, &detail);
}

#[test]
fn criterion_8_structural_property_suite() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    let mut ok = true;
    let mut detail = String::new();

    // dd = 0 exact on all builtins (both conditions) ...
    for name in builtin_names() {
        for bc in CONDITIONS {
            let x = builtin_complex(name).unwrap();
            let f = folner_box(x.spec, 2).unwrap();
            let s = build_section(&x, &f, bc).unwrap();
            if s.validate().is_err() {
                ok = false;
                detail.push_str(&format!("dd != 0 for {name} {}; ", bc.name()));
            }
        }
    }
    // ... and on 50 random sections
    let mut rng = StdRng::seed_from_u64(2024);
    let names = builtin_names();
    for _ in 0..50 {
        let name = names[rng.random_range(0..names.len())];
        let max_side = if name == "heisenberg_manifold" { 2 } else { 3 };
        let side = rng.random_range(1..=max_side);
        let bc = if rng.random_bool(0.5) {
            BoundaryCondition::Relative
        } else {
            BoundaryCondition::Absolute
        };
        let x = builtin_complex(name).unwrap();
        let f = folner_box(x.spec, side).unwrap();
        let s = build_section(&x, &f, bc).unwrap();
        if s.validate().is_err() {
            ok = false;
            detail.push_str(&format!(
                "dd != 0 for random {name} L={side} {}; ",
                bc.name()
            ));
        }
    }

    // dense-path sections: dsum >= 0 on every positive cluster, the
    // supersymmetry pairing holds, and ker-multiplicity equals exact betti
    for name in builtin_names() {
        for bc in CONDITIONS {
            let x = builtin_complex(name).unwrap();
            let f = folner_box(x.spec, 2).unwrap();
            let s = build_section(&x, &f, bc).unwrap();
            let eigs: Vec<_> = (0..=s.dim())
                .map(|j| eigen_decomposition(&s, j, CAP).unwrap())
                .collect();
            let spectra: Vec<SpectralData> = eigs.iter().map(|e| e.spectral_data()).collect();
            for (j, spec) in spectra.iter().enumerate() {
                let b = spectral::betti(&s, j).unwrap();
                if spec.kernel_dim() != b {
                    ok = false;
                    detail.push_str(&format!(
                        "kernel multiplicity != betti for {name} {} degree {j}; ",
                        bc.name()
                    ));
                }
            }
            for cluster in cluster_positive(&spectra) {
                for n in 0..=s.dim() {
                    match dsum(&cluster, n) {
                        Ok(v) if v >= 0 => {}
                        Ok(v) => {
                            ok = false;
                            detail.push_str(&format!(
                                "D^{n} = {v} < 0 at cluster {:.4} in {name} {}; ",
                                cluster.value,
                                bc.name()
                            ));
                        }
                        Err(e) => {
                            ok = false;
                            detail.push_str(&format!("{e}; "));
                        }
                    }
                }
            }
            match supersymmetry_check(&s, &eigs) {
                Ok(report) if report.passed => {}
                Ok(_) => {
                    ok = false;
                    detail.push_str(&format!("supersymmetry failed for {name} {}; ", bc.name()));
                }
                Err(e) => {
                    ok = false;
                    detail.push_str(&format!("supersymmetry {e}; "));
                }
            }
        }
    }

    if ok {
        detail = "dd=0 on builtins + 50 random sections; dsum >= 0; supersymmetry pairing; Hodge kernel = betti".into();
    }
    report(8, "structural property suite", ok, &detail);
}

#[test]
fn criterion_9_zeta_convergence() {
    let x = builtin_complex("circle_Z").unwrap();
    let grid = QuadratureGrid::trapezoid(256).unwrap();
    let lambda = 1.0;
    let samples = [1.5, 2.0, 3.0];
    let oracles: Vec<f64> = samples
        .iter()
        .map(|&s| {
            oracle::vn_zeta(&x, 0, Complex64::new(s, 0.0), lambda, &grid)
                .unwrap()
                .re
        })
        .collect();
    // closed-form cross-check at s=2
    assert!((oracles[1] - 3.0 * 5f64.powf(-1.5)).abs() < 1e-8);

    let mut ok = true;
    let mut detail = String::new();
    for bc in CONDITIONS {
        for (si, &s) in samples.iter().enumerate() {
            let mut gaps = Vec::new();
            for side in [16u32, 32, 64] {
                let b = bundle("circle_Z", side, bc);
                let spec = b.spectra[0].as_ref().unwrap();
                let z = zeta_finite(spec, Complex64::new(s, 0.0), lambda, b.folner_size());
                gaps.push((z.re - oracles[si]).abs());
            }
            let decreasing = gaps[0] > gaps[1] && gaps[1] > gaps[2];
            let tight = gaps[2] <= 0.01;
            if !(decreasing && tight) {
                ok = false;
            }
            detail.push_str(&format!(
                "{} s={s}: gaps {:.5}/{:.5}/{:.5}; ",
                bc.name(),
                gaps[0],
                gaps[1],
                gaps[2]
            ));
        }
    }
    report(9, "zeta convergence", ok, &detail);
}
