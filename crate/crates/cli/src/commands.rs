use std::f64::consts::SQRT_2;
use std::path::Path;
use std::str::FromStr;

use serde_json::{json, Value};

use qfoundry_core::bell::{
    appleby_grid_sup, best_deterministic_chsh, chsh_grid_max, chsh_value, fwt_bounds_with, fwt_direction_counts,
    lhv_chsh_monte_carlo, logical_bell, sequential_logical_bell, ChshAngles, LhvStrategy, LogicalAngles,
    F_MIN_ALTERNATE_DENOMINATOR, F_MIN_DENOMINATOR,
};
use qfoundry_core::exact::{BuiltinSet, VectorSet};
use qfoundry_core::ks::{
    build_orth_structure, cabello_parity_witness, complete_pairs_to_triads, count_colorings, search_coloring,
    SearchOutcome,
};
use qfoundry_core::logic::{check_heyting_laws, popper_instance, CheckMode, ContextLattice, ContextPoset, Variant};
use qfoundry_core::meyer::{enumerate_pyth_points, verify_meyer_conditions};
use qfoundry_core::mkc::{generate_basis_family, simulate_sequence, valuation_frequency_test};
use qfoundry_core::quantum::{
    ks_single_generator, random_basis, random_density, real_vector, reconstruct_state, CVector, ProjectionOp,
};
use qfoundry_core::rng;
use qfoundry_core::verify::{verify_with, VerifyInputs, SCHEMA, STATISTICAL_SAMPLES};

use crate::args::*;
use crate::error::CliError;
use crate::program::load_program;

/// A command's report and whether every check it makes passed.
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
    /// Names of failed checks, for the error stream.
    pub failures: Vec<String>,
}

impl Outcome {
    fn new(report: Value, passed: bool) -> Self {
        Self {
            report,
            passed,
            failures: Vec::new(),
        }
    }
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        let mut out = serde_json::Map::new();
        out.insert("schema".into(), json!(SCHEMA));
        out.append(map);
        return Value::Object(out);
    }
    v
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let seed = cli.seed;
    let shots = cli.shots.unwrap_or(STATISTICAL_SAMPLES);
    let tol = cli.tolerance;
    let out = match &cli.command {
        Command::Ks(c) => ks(c)?,
        Command::Meyer(MeyerCommand::Verify { max_n }) => {
            let r = verify_meyer_conditions(&enumerate_pyth_points(*max_n));
            let passed = r.passed();
            Outcome::new(json!({ "max_n": max_n, "report": r }), passed)
        }
        Command::Quantum(c) => quantum(c, seed, tol)?,
        Command::Mkc(c) => mkc(c, seed, shots)?,
        Command::Bell(c) => bell(c, seed, shots, tol)?,
        Command::Fwt(c) => fwt(c)?,
        Command::Logic(c) => logic(c, seed)?,
        Command::Data(DataCommand::Export { set, out }) => export(*set, out.as_deref())?,
        Command::VerifyAll(a) => verify(a, seed)?,
    };
    Ok(Outcome {
        report: with_schema(out.report),
        ..out
    })
}

/// A built-in set name or a path to a JSON vector set.
pub fn load_set(name: &str) -> Result<VectorSet, CliError> {
    if let Ok(b) = BuiltinSet::from_str(name) {
        return Ok(b.load());
    }
    let path = Path::new(name);
    if !path.is_file() {
        return Err(CliError::UnknownDataset(name.to_string()));
    }
    load_set_file(path)
}

fn load_set_file(path: &Path) -> Result<VectorSet, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    VectorSet::from_json(&text).map_err(|e| CliError::MalformedDataset {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn outcome_json(o: &SearchOutcome) -> Value {
    match o {
        SearchOutcome::Colorable { coloring, nodes_explored } => json!({
            "colorable": true,
            "nodes_explored": nodes_explored,
            "coloring": coloring.assignment(),
        }),
        SearchOutcome::Uncolorable(cert) => json!({
            "colorable": false,
            "nodes_explored": cert.nodes_explored,
            "max_depth": cert.max_depth,
        }),
    }
}

fn ks(c: &KsCommand) -> Result<Outcome, CliError> {
    Ok(match c {
        KsCommand::Check(SetArg { set }) => {
            let s = build_orth_structure(&load_set(set)?)?;
            let mut v = json!({
                "set": set,
                "vectors": s.vectors().len(),
                "bases": s.bases().len(),
                "pairs": s.pairs().len(),
            });
            merge(&mut v, outcome_json(&search_coloring(&s)));
            Outcome::new(v, true)
        }
        KsCommand::Count { set, without } => {
            let labels: Vec<&str> = without.iter().map(String::as_str).collect();
            let base = load_set(&set.set)?;
            for l in &labels {
                if base.position(l).is_none() {
                    return Err(CliError::Usage(format!("no vector labelled {l:?} in {}", set.set)));
                }
            }
            let s = build_orth_structure(&base.without_labels(&labels))?;
            let count = count_colorings(&s)?;
            Outcome::new(
                json!({ "set": set.set, "removed": without, "vectors": s.vectors().len(), "colorings": count.to_string() }),
                true,
            )
        }
        KsCommand::Parity(SetArg { set }) => {
            let s = build_orth_structure(&load_set(set)?)?;
            let w = cabello_parity_witness(&s)?;
            Outcome::new(json!({ "set": set, "witness": w }), true)
        }
        KsCommand::Triads(SetArg { set }) => {
            let s = complete_pairs_to_triads(&build_orth_structure(&load_set(set)?)?)?;
            let mut v = json!({
                "set": set,
                "vectors": s.vectors().len(),
                "bases": s.bases().len(),
                "pairs": s.pairs().len(),
            });
            merge(&mut v, outcome_json(&search_coloring(&s)));
            Outcome::new(v, true)
        }
    })
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn quantum(c: &QuantumCommand, seed: u64, tol: Option<f64>) -> Result<Outcome, CliError> {
    Ok(match *c {
        QuantumCommand::Reconstruct { dim } => {
            if !(1..=16).contains(&dim) {
                return Err(CliError::Usage(format!("dimension {dim} outside 1..=16")));
            }
            let mut r = rng::stream(seed, &[0x5245_434f, dim as u64]);
            let rho = random_density(dim, &mut r);
            let basis = random_basis(dim, &mut r);
            let got = reconstruct_state(|a| rho.expectation(a).expect("same dimension"), &basis)?;
            let err = got.matrix().max_entry_distance(rho.matrix());
            let limit = tol.unwrap_or(1e-10);
            Outcome::new(
                json!({ "dim": dim, "max_entry_error": err, "threshold": limit }),
                err < limit,
            )
        }
        QuantumCommand::Generator { n, dim } => {
            if n > dim || dim > 16 {
                return Err(CliError::Usage(format!("need n ≤ dim ≤ 16, got n={n}, dim={dim}")));
            }
            let mut r = rng::stream(seed, &[0x4745_4e52, n as u64]);
            let basis = random_basis(dim, &mut r);
            let projections: Vec<ProjectionOp> =
                basis[..n].iter().map(ProjectionOp::onto).collect::<Result<_, _>>()?;
            let g = ks_single_generator(&projections)?;
            let limit = tol.unwrap_or(1e-8);
            let passed = g.max_residual < limit;
            Outcome::new(json!({ "n": n, "dim": dim, "generator": g, "threshold": limit }), passed)
        }
    })
}

fn mkc(c: &MkcCommand, seed: u64, shots: u64) -> Result<Outcome, CliError> {
    Ok(match c {
        MkcCommand::Simulate { dim, bases, program } => {
            let p = load_program(program, *dim)?;
            let family = generate_basis_family(*dim, *bases, seed)?;
            let stats = simulate_sequence(&p.state, &p.observables, &family, seed, shots)?;
            Outcome::new(json!({ "dim": dim, "bases": bases, "seed": format!("{seed:#x}"), "stats": stats }), true)
        }
        MkcCommand::Frequencies { dim, bases } => {
            let family = generate_basis_family(*dim, *bases, seed)?;
            let rho = random_density(*dim, &mut rng::stream(seed, &[0x4d4b_4353]));
            let r = valuation_frequency_test(&rho, &family, shots, seed)?;
            let passed = r.within(3.0) && r.sum_rule_violations == 0;
            Outcome::new(
                json!({
                    "dim": dim,
                    "bases": bases,
                    "samples": r.samples,
                    "max_projection_z": r.max_projection_z,
                    "max_joint_z": r.max_joint_z,
                    "sum_rule_violations": r.sum_rule_violations,
                    "projections": r.projections,
                    "joints": r.joints,
                }),
                passed,
            )
        }
    })
}

fn four(v: &[f64]) -> Result<[f64; 4], CliError> {
    <[f64; 4]>::try_from(v).map_err(|_| CliError::Usage(format!("expected 4 angles, got {}", v.len())))
}

fn bell(c: &BellCommand, seed: u64, shots: u64, tol: Option<f64>) -> Result<Outcome, CliError> {
    Ok(match c {
        BellCommand::Chsh { angles, grid } => {
            let a = match angles {
                Some(v) => {
                    let [t1, t1p, t2, t2p] = four(v)?;
                    ChshAngles::new(t1, t1p, t2, t2p)
                }
                None => ChshAngles::maximal(),
            };
            let mut v = json!({ "angles": a, "value": chsh_value(a) });
            let mut passed = true;
            if *grid {
                let g = chsh_grid_max(360);
                passed = g.value <= 2.0 * SQRT_2 + tol.unwrap_or(1e-12);
                merge(&mut v, json!({ "grid": g }));
            }
            Outcome::new(v, passed)
        }
        BellCommand::Lhv { strategy } => {
            let s = match strategy {
                StrategyArg::Anti => LhvStrategy::AntiCorrelated,
                StrategyArg::Random => LhvStrategy::RandomResponse,
                StrategyArg::Mixture => LhvStrategy::seeded_mixture(8, seed),
            };
            let e = lhv_chsh_monte_carlo(&s, shots, seed);
            let (best, table) = best_deterministic_chsh();
            let passed = e.within_local_bound(5.0) && best == 2.0;
            Outcome::new(
                json!({
                    "strategy": s,
                    "estimate": e,
                    "exact": s.exact_chsh(),
                    "best_deterministic": best,
                    "best_table": table,
                }),
                passed,
            )
        }
        BellCommand::Logical { angles, sequential } => {
            let a = match angles {
                Some(v) => {
                    let [a1, a2, b1, b2] = four(v)?;
                    LogicalAngles::new(a1, a2, b1, b2)
                }
                None => LogicalAngles::standard(),
            };
            let report = if *sequential {
                to_value(&sequential_logical_bell(a))
            } else {
                to_value(&logical_bell(a))
            };
            Outcome::new(json!({ "angles": a, "sequential": sequential, "result": report }), true)
        }
        BellCommand::Appleby { steps } => {
            let g = appleby_grid_sup(*steps);
            let passed = g.sup <= 0.5 + tol.unwrap_or(1e-9);
            Outcome::new(json!({ "grid": g }), passed)
        }
    })
}

fn fwt(c: &FwtCommand) -> Result<Outcome, CliError> {
    Ok(match c {
        FwtCommand::Bounds { eps_s, eps_t, alternate } => {
            let d = if *alternate {
                F_MIN_ALTERNATE_DENOMINATOR
            } else {
                F_MIN_DENOMINATOR
            };
            let b = fwt_bounds_with(*eps_s, *eps_t, d)?;
            Outcome::new(json!({ "f_min_denominator": d, "bounds": b }), true)
        }
        FwtCommand::Counts(SetArg { set }) => {
            let s = build_orth_structure(&load_set(set)?)?;
            let counts = fwt_direction_counts(&s)?;
            Outcome::new(json!({ "set": set, "counts": counts }), true)
        }
    })
}

fn logic(c: &LogicCommand, seed: u64) -> Result<Outcome, CliError> {
    Ok(match *c {
        LogicCommand::Heyting {
            dim,
            bases,
            variant,
            exhaustive,
            triples,
        } => {
            if !(2..=3).contains(&dim) {
                return Err(CliError::Usage(format!("dimension {dim} not in 2..=3")));
            }
            if bases == 0 {
                return Err(CliError::Usage("need at least one basis".into()));
            }
            let generators = context_bases(dim, bases, seed);
            let poset = ContextPoset::generate(dim, &generators)?;
            let variant = match variant {
                VariantArg::L2 => Variant::L2,
                VariantArg::L3 => Variant::L3,
            };
            let lattice = ContextLattice::new(poset, variant);
            let mode = if exhaustive {
                CheckMode::Exhaustive
            } else {
                CheckMode::Sampled { triples, seed }
            };
            let r = check_heyting_laws(&lattice, mode)?;
            let passed = r.passed();
            Outcome::new(json!({ "dim": dim, "bases": bases, "report": r }), passed)
        }
        LogicCommand::Popper => {
            let r = popper_instance()?;
            let passed = !r.distributive;
            Outcome::new(json!({ "popper": r }), passed)
        }
    })
}

/// The standard basis, then (in dimension 2) the diagonal basis, then
/// seeded random bases.
fn context_bases(dim: usize, count: usize, seed: u64) -> Vec<Vec<CVector>> {
    let standard: Vec<CVector> = (0..dim)
        .map(|k| {
            let mut v = vec![0.0; dim];
            v[k] = 1.0;
            real_vector(&v)
        })
        .collect();
    let mut out = vec![standard];
    if dim == 2 && count > 1 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        out.push(vec![real_vector(&[s, s]), real_vector(&[s, -s])]);
    }
    let mut r = rng::stream(seed, &[0x4c4f_4743]);
    while out.len() < count {
        out.push(random_basis(dim, &mut r));
    }
    out
}

fn angle_sets() -> Value {
    json!({
        "chsh_maximal": ChshAngles::maximal(),
        "logical_bell": LogicalAngles::standard(),
    })
}

fn export(set: DatasetArg, out: Option<&Path>) -> Result<Outcome, CliError> {
    let data: Value = match set {
        DatasetArg::Peres33 => serde_json::from_str(BuiltinSet::Peres33.raw_json()).expect("embedded JSON"),
        DatasetArg::Cabello18 => serde_json::from_str(BuiltinSet::Cabello18.raw_json()).expect("embedded JSON"),
        DatasetArg::Angles => angle_sets(),
    };
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&data).expect("json") + "\n";
        std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        return Ok(Outcome::new(json!({ "written": path.display().to_string() }), true));
    }
    Ok(Outcome::new(json!({ "data": data }), true))
}

fn verify(a: &VerifyAllArgs, seed: u64) -> Result<Outcome, CliError> {
    let mut inputs = VerifyInputs::default();
    if let Some(p) = &a.peres33 {
        inputs.peres33 = load_set_file(p)?;
    }
    if let Some(p) = &a.cabello18 {
        inputs.cabello18 = load_set_file(p)?;
    }
    let report = verify_with(seed, &inputs);
    let failures = report.failed_checks().map(|c| format!("{} {}", c.id, c.name)).collect();
    Ok(Outcome {
        passed: report.passed,
        report: to_value(&report),
        failures,
    })
}
