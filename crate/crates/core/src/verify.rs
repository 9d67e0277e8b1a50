//! The full verification suite as one deterministic report.

use std::f64::consts::SQRT_2;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bell::{
    appleby_grid_sup, best_deterministic_chsh, chsh_grid_max, chsh_value, fwt_bounds, fwt_direction_counts,
    fwt_satisfied_exact, lhv_chsh_monte_carlo, logical_bell, sequential_logical_bell, ChshAngles, LhvStrategy,
    LogicalAngles,
};
use crate::exact::VectorSet;
use crate::ks::{build_orth_structure, cabello_parity_witness, search_coloring};
use crate::logic::{check_heyting_laws, popper_instance, CheckMode, ContextLattice, ContextPoset, Variant};
use crate::meyer::{enumerate_pyth_points, verify_meyer_conditions};
use crate::mkc::{
    generate_anchored_family, generate_basis_family, simulate_sequence, valuation_frequency_test, MkcError,
};
use crate::quantum::{
    ks_single_generator, random_basis, random_density, real_vector, reconstruct_state, DensityOperator,
    ProjectionOp,
};
use crate::rng;

pub const SCHEMA: &str = "qfoundry/1";

const MKC_STATE_STREAM: u64 = 0x4d4b_4353;
const RECON_STREAM: u64 = 0x5245_434f;
const GENERATOR_STREAM: u64 = 0x4745_4e52;

/// Shot and sample counts used by the statistical checks.
pub const STATISTICAL_SAMPLES: u64 = 100_000;

/// Datasets the suite runs on; normally the embedded ones.
#[derive(Clone, Debug)]
pub struct VerifyInputs {
    pub peres33: VectorSet,
    pub cabello18: VectorSet,
}

impl Default for VerifyInputs {
    fn default() -> Self {
        Self {
            peres33: VectorSet::peres33(),
            cabello18: VectorSet::cabello18(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub details: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub seed: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(id: u8, name: &'static str, result: Result<(bool, Value), String>) -> CheckResult {
    match result {
        Ok((passed, details)) => CheckResult {
            id,
            name,
            passed,
            details,
        },
        Err(e) => CheckResult {
            id,
            name,
            passed: false,
            details: json!({ "error": e }),
        },
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

/// Run every check with the default datasets.
pub fn verify_all(seed: u64) -> VerifyReport {
    verify_with(seed, &VerifyInputs::default())
}

pub fn verify_with(seed: u64, inputs: &VerifyInputs) -> VerifyReport {
    let stochastic = stochastic_checks(seed);
    let rerun = stochastic_checks(seed);
    let checks = vec![
        check(1, "ks_uncolorability", ks_check(inputs)),
        check(2, "meyer_conditions", meyer_check()),
        check(3, "chsh", chsh_check(&stochastic)),
        check(4, "logical_bell", Ok(logical_check())),
        check(5, "mkc_statistics", mkc_check(&stochastic)),
        check(6, "reconstruction", reconstruction_check(seed)),
        check(7, "appleby_bound", Ok(appleby_check())),
        check(8, "free_will_bounds", fwt_check(inputs)),
        check(9, "heyting_laws", heyting_check()),
        check(10, "determinism", Ok(determinism_check(&stochastic, &rerun))),
    ];
    VerifyReport {
        schema: SCHEMA,
        seed: format!("{seed:#x}"),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn ks_check(inputs: &VerifyInputs) -> Result<(bool, Value), String> {
    let limit = Duration::from_secs(5);
    let mut details = serde_json::Map::new();
    let mut passed = true;
    for (name, set) in [("peres33", &inputs.peres33), ("cabello18", &inputs.cabello18)] {
        let (result, elapsed) = timed(|| {
            let s = build_orth_structure(set).map_err(|e| format!("{name}: {e}"))?;
            let o = search_coloring(&s);
            Ok::<_, String>((s, o))
        });
        let (structure, outcome) = result?;
        passed &= !outcome.is_colorable() && elapsed < limit;
        details.insert(
            name.into(),
            json!({
                "vectors": structure.vectors().len(),
                "bases": structure.bases().len(),
                "pairs": structure.pairs().len(),
                "colorable": outcome.is_colorable(),
                "nodes_explored": outcome.nodes_explored(),
                "within_time_limit": elapsed < limit,
            }),
        );
        if name == "cabello18" {
            match cabello_parity_witness(&structure) {
                Ok(w) => {
                    let all_two = w.membership_counts.iter().all(|&c| c == 2);
                    passed &= w.bases == 9 && all_two;
                    details.insert(
                        "parity".into(),
                        json!({ "bases": w.bases, "all_memberships_two": all_two, "bases_odd": w.bases_odd }),
                    );
                }
                Err(e) => {
                    passed = false;
                    details.insert("parity".into(), json!({ "error": e.to_string() }));
                }
            }
        }
    }
    Ok((passed, Value::Object(details)))
}

fn meyer_check() -> Result<(bool, Value), String> {
    let (report, elapsed) = timed(|| verify_meyer_conditions(&enumerate_pyth_points(25)));
    let within = elapsed < Duration::from_secs(10);
    Ok((
        report.passed() && within,
        json!({
            "max_n": 25,
            "rays": report.rays,
            "pairs": report.pairs,
            "triads": report.triads,
            "violations": report.violations.len(),
            "within_time_limit": within,
        }),
    ))
}

/// Monte Carlo results that the determinism check compares across reruns.
#[derive(Clone, Debug, Serialize)]
struct StochasticRuns {
    lhv: Vec<(String, crate::bell::LhvEstimate, f64)>,
    frequencies: Result<crate::mkc::FrequencyReport, String>,
    cabello: Result<(f64, u64, f64), String>,
}

fn stochastic_checks(seed: u64) -> StochasticRuns {
    let strategies = [
        ("anti_correlated", LhvStrategy::AntiCorrelated),
        ("random_response", LhvStrategy::RandomResponse),
        ("table_mixture", LhvStrategy::seeded_mixture(8, seed)),
    ];
    let lhv = strategies
        .iter()
        .map(|(name, s)| (name.to_string(), lhv_chsh_monte_carlo(s, STATISTICAL_SAMPLES, seed), s.exact_chsh()))
        .collect();

    let frequencies = (|| {
        let family = generate_basis_family(3, 16, seed)?;
        let rho = random_density(3, &mut rng::stream(seed, &[MKC_STATE_STREAM]));
        valuation_frequency_test(&rho, &family, STATISTICAL_SAMPLES, seed)
    })()
    .map_err(|e: MkcError| e.to_string());

    let cabello = cabello_sequence(seed).map_err(|e| e.to_string());
    StochasticRuns {
        lhv,
        frequencies,
        cabello,
    }
}

/// `P_{e1}` then `P_{e2}` on state `e1` for `e1 = (1,1,1)/√3`,
/// `e2 = (1,1,−1)/√3`, with both vectors placed in the family. Returns the
/// empirical frequency of reading 1 twice, its count and the exact value.
fn cabello_sequence(seed: u64) -> Result<(f64, u64, f64), MkcError> {
    let s = 1.0 / 3f64.sqrt();
    let e1 = real_vector(&[s, s, s]);
    let e2 = real_vector(&[s, s, -s]);
    let family = generate_anchored_family(3, 16, seed, &[vec![e1.clone()], vec![e2.clone()]])?;
    let rho = DensityOperator::pure(&e1)?;
    let program = [
        ProjectionOp::onto(&e1)?.into_matrix(),
        ProjectionOp::onto(&e2)?.into_matrix(),
    ];
    let stats = simulate_sequence(&rho, &program, &family, seed, STATISTICAL_SAMPLES)?;
    let row = stats
        .outcomes
        .iter()
        .find(|r| r.values.iter().all(|v| (v - 1.0).abs() < 1e-9))
        .ok_or(MkcError::SpectrumMismatch)?;
    Ok((row.empirical, row.count, row.exact))
}

fn chsh_check(runs: &StochasticRuns) -> Result<(bool, Value), String> {
    let at_max = chsh_value(ChshAngles::maximal());
    let grid = chsh_grid_max(360);
    let (best, table) = best_deterministic_chsh();
    let tsirelson = 2.0 * SQRT_2;
    let value_ok = (at_max - tsirelson).abs() <= 1e-12;
    let grid_ok = grid.value <= tsirelson + 1e-12;
    let table_ok = best == 2.0;
    let lhv: Vec<Value> = runs
        .lhv
        .iter()
        .map(|(name, e, exact)| {
            json!({
                "strategy": name,
                "value": e.value,
                "sigma": e.sigma,
                "exact": exact,
                "within_local_bound": e.within_local_bound(5.0),
            })
        })
        .collect();
    let lhv_ok = runs.lhv.iter().all(|(_, e, _)| e.within_local_bound(5.0));
    Ok((
        value_ok && grid_ok && table_ok && lhv_ok,
        json!({
            "value_at_maximal_angles": at_max,
            "grid_steps": grid.steps,
            "grid_max": grid.value,
            "grid_argmax": grid.angles,
            "best_deterministic": best,
            "best_table": table,
            "lhv_shots": STATISTICAL_SAMPLES,
            "lhv": lhv,
        }),
    ))
}

fn logical_check() -> (bool, Value) {
    let single = logical_bell(LogicalAngles::standard());
    let seq = sequential_logical_bell(LogicalAngles::standard());
    let passed = (single.lhs - 0.5).abs() <= 1e-12
        && (single.rhs - 0.375).abs() <= 1e-12
        && single.violated
        && (seq.bell.not_a2_not_b2 - 5.0 / 16.0).abs() <= 1e-12
        && !seq.bell.violated;
    (passed, json!({ "single": single, "sequential": seq }))
}

fn mkc_check(runs: &StochasticRuns) -> Result<(bool, Value), String> {
    let freq = runs.frequencies.as_ref().map_err(Clone::clone)?;
    let (empirical, count, exact) = *runs.cabello.as_ref().map_err(Clone::clone)?;
    let n = STATISTICAL_SAMPLES as f64;
    let sigma = (exact * (1.0 - exact) / n).sqrt();
    let cabello_ok = (empirical - 1.0 / 9.0).abs() <= 3.0 * sigma && (exact - 1.0 / 9.0).abs() <= 1e-12;
    let freq_ok = freq.max_projection_z <= 3.0 && freq.sum_rule_violations == 0;
    let joint_ok = freq.max_joint_z <= 3.0;
    Ok((
        freq_ok && joint_ok && cabello_ok,
        json!({
            "dimension": 3,
            "bases": 16,
            "samples": freq.samples,
            "projections_tested": freq.projections.len(),
            "max_projection_z": freq.max_projection_z,
            "joints_tested": freq.joints.len(),
            "max_joint_z": freq.max_joint_z,
            "sum_rule_violations": freq.sum_rule_violations,
            "cabello": {
                "shots": STATISTICAL_SAMPLES,
                "count": count,
                "empirical": empirical,
                "exact": exact,
                "sigma": sigma,
                "within_3_sigma": (empirical - 1.0 / 9.0).abs() <= 3.0 * sigma,
            },
        }),
    ))
}

fn reconstruction_check(seed: u64) -> Result<(bool, Value), String> {
    let mut max_error: f64 = 0.0;
    let mut per_dim = Vec::new();
    for dim in 2..=4usize {
        let mut dim_max: f64 = 0.0;
        for i in 0..100u64 {
            let mut r = rng::stream(seed, &[RECON_STREAM, dim as u64, i]);
            let rho = random_density(dim, &mut r);
            let basis = random_basis(dim, &mut r);
            let got = reconstruct_state(|a| rho.expectation(a).expect("same dimension"), &basis)
                .map_err(|e| e.to_string())?;
            dim_max = dim_max.max(got.matrix().max_entry_distance(rho.matrix()));
        }
        per_dim.push(json!({ "dimension": dim, "max_entry_error": dim_max }));
        max_error = max_error.max(dim_max);
    }
    let mut generator = Vec::new();
    let mut max_residual: f64 = 0.0;
    for n in 1..=5usize {
        let mut r = rng::stream(seed, &[GENERATOR_STREAM, n as u64]);
        let basis = random_basis(5, &mut r);
        let projections: Vec<ProjectionOp> = basis[..n]
            .iter()
            .map(ProjectionOp::onto)
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let g = ks_single_generator(&projections).map_err(|e| e.to_string())?;
        max_residual = max_residual.max(g.max_residual);
        generator.push(json!({ "projections": n, "max_residual": g.max_residual }));
    }
    Ok((
        max_error < 1e-10 && max_residual < 1e-8,
        json!({
            "seeds_per_dimension": 100,
            "reconstruction": per_dim,
            "max_entry_error": max_error,
            "generator": generator,
            "max_generator_residual": max_residual,
        }),
    ))
}

fn appleby_check() -> (bool, Value) {
    let sup = appleby_grid_sup(100);
    let on_boundary = sup.argmax.contains(&0.5);
    let passed = sup.sup <= 0.5 + 1e-9 && (0.5 - sup.sup).abs() <= 1e-3 && on_boundary;
    (passed, json!({ "grid": sup, "argmax_on_boundary": on_boundary }))
}

fn fwt_check(inputs: &VerifyInputs) -> Result<(bool, Value), String> {
    let structure = build_orth_structure(&inputs.peres33).map_err(|e| e.to_string())?;
    let counts = fwt_direction_counts(&structure).map_err(|e| e.to_string())?;
    let coefficient_ok = counts.coefficient == BigRational::new(BigInt::from(4), BigInt::from(55));
    let counts_ok = (counts.triads_total, counts.with_three, counts.with_two) == (40, 16, 24)
        && counts.joint_experiments == 1320;

    // points on and inside the line 3 ε_T + ε_S = 1/2900000
    let budget = BigRational::new(BigInt::from(1), BigInt::from(2_900_000));
    let mut exact_ok = true;
    let mut float_ok = true;
    let steps = 20i64;
    for k in 0..=steps {
        let t = BigRational::new(BigInt::from(k), BigInt::from(steps));
        let eps_t = &budget * &t / BigInt::from(3);
        let eps_s = &budget * (BigRational::from_integer(1.into()) - &t);
        exact_ok &= fwt_satisfied_exact(&eps_s, &eps_t);
        use num_traits::ToPrimitive;
        let b = fwt_bounds(eps_s.to_f64().unwrap_or(1.0), eps_t.to_f64().unwrap_or(1.0)).map_err(|e| e.to_string())?;
        float_ok &= b.satisfied;
    }
    Ok((
        coefficient_ok && counts_ok && exact_ok && float_ok,
        json!({
            "counts": counts,
            "budget_line_points": steps + 1,
            "bound_satisfied_exact": exact_ok,
            "bound_satisfied_float": float_ok,
        }),
    ))
}

fn heyting_check() -> Result<(bool, Value), String> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let poset = ContextPoset::generate(
        2,
        &[
            vec![real_vector(&[1.0, 0.0]), real_vector(&[0.0, 1.0])],
            vec![real_vector(&[s, s]), real_vector(&[s, -s])],
        ],
    )
    .map_err(|e| e.to_string())?;
    let lattice = ContextLattice::new(poset, Variant::L3);
    let report = check_heyting_laws(&lattice, CheckMode::Exhaustive).map_err(|e| e.to_string())?;
    let popper = popper_instance().map_err(|e| e.to_string())?;
    let popper_ok = !popper.distributive
        && (popper.lhs_probability_e1 - 0.5).abs() <= 1e-12
        && popper.rhs_probability_e1.abs() <= 1e-12;
    Ok((
        report.passed() && report.regular_elements == Some(2) && popper_ok,
        json!({ "l3": report, "popper": popper }),
    ))
}

fn determinism_check(first: &StochasticRuns, second: &StochasticRuns) -> (bool, Value) {
    let a = serde_json::to_string(first).unwrap_or_default();
    let b = serde_json::to_string(second).unwrap_or_default();
    (a == b, json!({ "stochastic_rerun_identical": a == b, "bytes": a.len() }))
}
