//! Suite execution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{Scenario, SpinBlock, StencilName, Suite};
use super::report::{fmt_value, ScenarioReport, Spectrum, SuiteReport};
use crate::clifford::{
    clifford_residual, fermion_rep, galilean_gammas, lorentz_gammas, spin_algebra_residual, spin_from_fermions,
};
use crate::dirac5d::{loglog_slope, pauli_vs_dirac_gap, weak_component_constant, DiracSpec};
use crate::error::Result;
use crate::galilean::{
    dispersion, invariance_residual_of, metric_conjugation, metric_invariance_residual, null_check, random_event,
    truncated_boost, GalileanBoost,
};
use crate::grid::{eigenvalues_hermitian, hermiticity_residual, Grid};
use crate::matrix::{C64, I};
use crate::pauli::{
    extra_field_consistency, h_pauli_ga, h_pauli_la, landau_spacing, Corrections, Frame, HamiltonianSpec, Stencil,
};
use crate::susy::variation::{derivative, max_abs_diff, Component, Trajectory, MAX_DEGREE};
use crate::susy::{build_supercharge, grading_operator, grading_residual, susy_algebra_residuals, SusySpec};

/// Runs the selected suites in canonical order.
pub fn run_scenario(s: &Scenario) -> ScenarioReport {
    let mut suites = s.suites.clone();
    suites.sort();
    suites.dedup();
    let grid = &s.config.grid;
    let axes: Vec<&str> = s.grid.axes().iter().map(|c| c.name()).collect();
    ScenarioReport {
        scenario: s.config.scenario.clone(),
        seed: s.config.seed,
        grid: format!("d={} n={} L={} axes={}", grid.d, grid.n, grid.length, axes.join(",")),
        suites: suites.into_iter().map(|suite| run_suite(s, suite)).collect(),
    }
}

pub fn run_suite(s: &Scenario, suite: Suite) -> SuiteReport {
    let mut r = SuiteReport::new(suite);
    match suite {
        Suite::Clifford => clifford_suite(s, &mut r),
        Suite::Galilean => galilean_suite(s, &mut r),
        Suite::Pauli => pauli_suite(s, &mut r),
        Suite::Dirac => dirac_suite(s, &mut r),
        Suite::Susy => susy_suite(s, &mut r),
        Suite::Consistency => consistency_suite(s, &mut r),
    }
    r
}

fn clifford_suite(s: &Scenario, r: &mut SuiteReport) {
    let tol = s.config.tolerances.clifford;
    r.at_most(
        "lorentz gamma anticommutators",
        "lorentz gamma representation",
        clifford_residual(&lorentz_gammas()),
        tol,
    );
    r.at_most(
        "galilean gamma anticommutators",
        "galilean gamma representation",
        clifford_residual(&galilean_gammas()),
        tol,
    );
    let rep = fermion_rep();
    let f = rep.residuals();
    r.at_most("fermion psi-psi", "fermion variables", f.psi_psi, tol);
    r.at_most("fermion xi-xi", "fermion variables", f.xi_xi, tol);
    r.at_most("fermion psi-xi", "fermion variables", f.psi_xi, tol);
    r.at_most("composite spin su(2)", "spin composite", spin_algebra_residual(&spin_from_fermions(&rep)), tol);
}

fn galilean_suite(s: &Scenario, r: &mut SuiteReport) {
    let (tol, cfg) = (&s.config.tolerances, &s.config.galilean);
    let mut rng = ChaCha8Rng::seed_from_u64(s.config.seed);
    let boosts: Vec<GalileanBoost> = (0..cfg.boosts).map(|_| GalileanBoost::random(&mut rng)).collect();
    let pairs: Vec<_> = (0..cfg.pairs).map(|_| (random_event(&mut rng), random_event(&mut rng))).collect();

    let anchor = "galilean group";
    let invariance: Result<f64> =
        boosts.iter().try_fold(0.0, |acc, b| Ok(f64::max(acc, metric_invariance_residual(b, &pairs)?)));
    match invariance {
        Ok(v) => r.at_most("metric invariance", anchor, v, tol.galilean),
        Err(e) => r.error("metric invariance", anchor, &e),
    }
    let control: Result<Vec<f64>> =
        boosts.iter().map(|b| invariance_residual_of(|e| truncated_boost(b, e), &pairs)).collect();
    match control {
        Ok(mut v) => {
            v.sort_by(f64::total_cmp);
            r.at_least("negative control (median over boosts)", anchor, v[v.len() / 2], tol.negative_control);
        }
        Err(e) => r.error("negative control (median over boosts)", anchor, &e),
    }
    let (kappa, residual) = metric_conjugation();
    r.info("light-cone metric factor", "light-cone map", fmt_value(kappa));
    r.at_most("light-cone metric conjugation", "light-cone map", residual, tol.galilean);

    let m = s.config.constants.m;
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for _ in 0..cfg.pairs {
        let p = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let v = dispersion(p, m).map(|energy| null_check(p, m, energy)).unwrap_or(f64::NAN);
        let p2: f64 = p.iter().map(|x| x * x).sum();
        ok &= v.abs() <= f64::EPSILON * p2;
        worst = worst.max(v.abs());
    }
    r.condition("dispersion null check", "massless five-momentum", worst, "exact up to rounding of p^2", ok);
}

fn stencil(s: &Scenario) -> Stencil {
    match s.config.pauli.stencil {
        StencilName::Compact => Stencil::Compact,
        StencilName::Composed => Stencil::Composed,
    }
}

fn pauli_spec(s: &Scenario, frame: Frame) -> Result<HamiltonianSpec> {
    let mut spec = HamiltonianSpec::new(frame, s.config.pauli.d, s.potential.clone(), s.grid.clone())?;
    spec.stencil = stencil(s);
    Ok(spec)
}

fn pauli_suite(s: &Scenario, r: &mut SuiteReport) {
    let tol = &s.config.tolerances;
    let la = pauli_spec(s, Frame::LorentzApproach).and_then(|spec| h_pauli_la(&spec));
    let la = match la {
        Ok(h) => h,
        Err(e) => {
            r.error("lorentz hamiltonian", "5d pauli reduction", &e);
            return;
        }
    };
    let scale = la.max_norm().unwrap_or(1.0).max(1.0);
    r.at_most(
        "lorentz hamiltonian hermiticity",
        "5d pauli reduction",
        hermiticity_residual(&la) / scale,
        tol.hermiticity,
    );

    let no_extra = s.potential.lambda().is_zero();
    let (check, corrections) = if no_extra {
        ("galilean equals lorentz sector", Corrections::NONE)
    } else {
        ("galilean with corrections equals lorentz", Corrections::GALILEAN)
    };
    let ga = pauli_spec(s, Frame::GalileanApproach)
        .and_then(|spec| spec.with_corrections(corrections))
        .and_then(|spec| h_pauli_ga(&spec))
        .and_then(|ga| ga.max_norm_diff(&la));
    match ga {
        Ok(v) => r.at_most(check, "galilean pauli hamiltonian", v, tol.sector),
        Err(e) => r.error(check, "galilean pauli hamiltonian", &e),
    }

    let block = match s.config.pauli.block {
        SpinBlock::Full => Ok(la),
        SpinBlock::Up => la.internal_block(2, 0, 0),
        SpinBlock::Down => la.internal_block(2, 1, 1),
    };
    let values = match block.and_then(|b| eigenvalues_hermitian(&b)) {
        Ok(v) => v,
        Err(e) => {
            r.error("spectrum", "5d pauli reduction", &e);
            return;
        }
    };
    r.info("lowest eigenvalue", "5d pauli reduction", fmt_value(values[0]));
    for (k, want) in s.config.pauli.expected_lowest.iter().enumerate() {
        let check = format!("level {k}");
        match values.get(k) {
            Some(v) => r.at_most(check, "analytic spectrum", (v - want).abs(), tol.levels),
            None => r.condition(check, "analytic spectrum", f64::NAN, "level exists", false),
        }
    }
    if let Some(unit) = s.config.pauli.landau_spacing {
        let check = "landau level spacing (relative error)";
        match landau_spacing(&values, unit, s.config.pauli.cluster_size) {
            Some(sp) => {
                r.info("landau level spacing", "landau levels", fmt_value(sp));
                r.at_most(check, "landau levels", (sp - unit).abs() / unit.abs(), tol.landau);
            }
            None => r.condition(check, "landau levels", f64::NAN, "two degenerate clusters", false),
        }
    }
    r.spectra.push(Spectrum {
        name: "pauli_eigenvalues".into(),
        columns: ["index".into(), "eigenvalue".into()],
        rows: values.iter().enumerate().map(|(k, v)| (k as f64, *v)).collect(),
    });
}

fn dirac_suite(s: &Scenario, r: &mut SuiteReport) {
    let tol = &s.config.tolerances;
    let masses = &s.config.dirac.masses;
    let records =
        DiracSpec::new(s.potential.clone(), s.grid.clone()).and_then(|spec| pauli_vs_dirac_gap(&spec, masses));
    let records = match records {
        Ok(v) => v,
        Err(e) => {
            r.error("dirac vs pauli gap", "nonrelativistic limit", &e);
            return;
        }
    };
    for g in &records {
        r.info(format!("gap m={}", g.m), "nonrelativistic limit", fmt_value(g.gap));
    }
    let gaps: Vec<f64> = records.iter().map(|g| g.gap).collect();
    let worst_ratio = gaps.windows(2).map(|w| w[1] / w[0]).fold(f64::NEG_INFINITY, f64::max);
    r.condition("gap decreases with mass", "nonrelativistic limit", worst_ratio, "max ratio < 1", worst_ratio < 1.0);
    let slope = loglog_slope(masses, &gaps);
    let free = (0..5).all(|mu| s.potential.components[mu].is_zero());
    if free {
        r.at_most("free gap log-log slope deviation from -3", "nonrelativistic limit", (slope + 3.0).abs(), tol.slope);
    } else {
        r.info("gap log-log slope", "nonrelativistic limit", fmt_value(slope));
    }
    r.info("weak component constant", "weak component", fmt_value(weak_component_constant(&records)));
    r.spectra.push(Spectrum {
        name: "dirac_gaps".into(),
        columns: ["mass".into(), "gap".into()],
        rows: records.iter().map(|g| (g.m, g.gap)).collect(),
    });
}

fn random_poly(rng: &mut ChaCha8Rng) -> Vec<C64> {
    (0..=MAX_DEGREE).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

fn susy_suite(s: &Scenario, r: &mut SuiteReport) {
    let tol = &s.config.tolerances;
    let anchor = "supercharge algebra";
    let p = &s.potential;
    let closes =
        p.vector(0).is_zero() && p.vector(1).is_zero() && p.vector(2).is_zero() && p.lambda().as_const().is_some();
    match SusySpec::new(p.clone(), s.grid.clone()) {
        Ok(spec) => {
            match susy_algebra_residuals(&spec) {
                Ok(res) if closes => {
                    r.at_most("2Q^2 - 2H", anchor, res.anticommutator, tol.susy);
                    r.at_most("[Q,H]", anchor, res.commutator, tol.susy);
                }
                Ok(res) => {
                    r.info("2Q^2 - 2H", anchor, fmt_value(res.anticommutator));
                    r.info("[Q,H]", anchor, fmt_value(res.commutator));
                }
                Err(e) => r.error("2Q^2 - 2H", anchor, &e),
            }
            match build_supercharge(&spec).and_then(|q| grading_residual(&q, &grading_operator(&s.grid))) {
                Ok(v) => r.at_most("grading anticommutes with Q", "grading operator", v, tol.susy),
                Err(e) => r.error("grading anticommutes with Q", "grading operator", &e),
            }
        }
        Err(e) => r.error("2Q^2 - 2H", anchor, &e),
    }
    r.info("charge xi-R factor", "supercharge", "(1-i)/2 taken verbatim");

    let mut rng = ChaCha8Rng::seed_from_u64(s.config.seed);
    let polys: Vec<Vec<C64>> = (0..8).map(|_| random_poly(&mut rng)).collect();
    let t = Trajectory::new([&polys[0], &polys[1], &polys[2]], [&polys[3], &polys[4], &polys[5]], &polys[6], &polys[7]);
    let anchor = "supersymmetry transformations";
    let t = match t {
        Ok(t) => t,
        Err(e) => {
            r.error("double variation", anchor, &e);
            return;
        }
    };
    let mismatch = |comps: &[Component], factor: C64| -> Result<f64> {
        let varied = crate::susy::double_variation(&t)?;
        Ok(comps.iter().fold(0.0, |acc, &c| {
            let mut want = derivative(&t.get(c).coefficient(0));
            want.iter_mut().for_each(|a| *a *= factor);
            acc.max(max_abs_diff(&varied.get(c).coefficient(0b11), &want))
        }))
    };
    let coords = [Component::X(0), Component::X(1), Component::X(2)];
    let psis = [Component::Psi(0), Component::Psi(1), Component::Psi(2)];
    for (name, comps, factor) in [("double variation x", &coords, I), ("double variation psi", &psis, I)] {
        match mismatch(comps, factor) {
            Ok(v) => r.at_most(name, anchor, v, tol.variation),
            Err(e) => r.error(name, anchor, &e),
        }
    }
    match mismatch(&[Component::Xi, Component::R], -I) {
        Ok(v) => r.info("double variation xi,R against -i d/dt", anchor, fmt_value(v)),
        Err(e) => r.error("double variation xi,R against -i d/dt", anchor, &e),
    }
}

fn consistency_suite(s: &Scenario, r: &mut SuiteReport) {
    let tol = s.config.tolerances.consistency;
    let c = s.config.constants;
    let anchor = "extra electric field corrections";
    for &d in &s.config.consistency.dims {
        let grid = match Grid::cube(d, s.config.grid.n, s.config.grid.length) {
            Ok(g) => g,
            Err(e) => {
                r.error(format!("grid d={d}"), anchor, &e);
                continue;
            }
        };
        for (src, omega) in &s.omegas {
            match extra_field_consistency(omega, d, &grid, c.m, c.e) {
                Ok((mr, or)) => {
                    r.at_most(format!("MR vs Mtz d={d} omega={src}"), anchor, mr, tol);
                    r.at_most(format!("OR vs Psch d={d} omega={src}"), anchor, or, tol);
                }
                Err(e) => r.error(format!("MR/OR d={d} omega={src}"), anchor, &e),
            }
        }
    }
}
