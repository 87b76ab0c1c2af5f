// Copyright 2026 The lcu-ladder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use lcu_core::densmat::deviation;
use lcu_core::{
    apply_operator, deviation_fidelity, fidelity, ladder_matrix, lcu_circuit, run_walk, walk_statistics,
    Branch, DensityMatrix, LadderKind, PositionDistribution, RawState, StateVector, WalkConfig,
};
use log::info;
use serde_json::json;

use crate::error::{CliError, Result};
use crate::report::{
    write_distribution_file, ComparisonRow, FidelityRow, OracleRow, OutcomeRow, RunReport, WalkSummary,
};
use crate::spec::{pack, OperandSpec, StateSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Run the two-ancilla circuit and report all four readouts.
    Circuit,
    /// Multiply by the operator matrix directly.
    Oracle,
}

fn parse_kind(s: &str) -> std::result::Result<LadderKind, String> {
    s.parse()
}

#[derive(Clone, Debug, Args)]
pub struct LadderArgs {
    /// Work-register state (JSON state spec).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Circuit)]
    pub mode: Mode,
    /// Operator for oracle mode: add, sub, add_boundary, sub_boundary,
    /// bosonic_create, bosonic_annihilate.
    #[arg(long, value_parser = parse_kind)]
    pub kind: Option<LadderKind>,
    /// Reference state or density matrix to compare outputs against; repeatable.
    #[arg(long = "reference")]
    pub references: Vec<PathBuf>,
    /// Report path; printed to stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct QrwArgs {
    #[arg(long, default_value_t = 8)]
    pub walker_qubits: usize,
    #[arg(long, default_value_t = 128)]
    pub steps: usize,
    /// Coin rotation angle in degrees.
    #[arg(long = "coin-angle", default_value_t = 45.0)]
    pub coin_angle_deg: f64,
    /// Start position, or a JSON state spec for the walker register.
    #[arg(long, default_value = "128")]
    pub start: String,
    /// Initial coin: 0, 1, or a JSON state spec.
    #[arg(long, default_value = "0")]
    pub coin_init: String,
    /// Distribution CSV path.
    #[arg(long)]
    pub output: PathBuf,
    /// Report path; printed to stdout when omitted.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

impl Default for QrwArgs {
    fn default() -> Self {
        Self {
            walker_qubits: 8,
            steps: 128,
            coin_angle_deg: 45.0,
            start: "128".into(),
            coin_init: "0".into(),
            output: PathBuf::from("qrw.csv"),
            report: None,
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct FidelityArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    /// Evaluate on deviation matrices (rho - I/d) instead of the full matrices.
    #[arg(long)]
    pub deviation: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    /// |01> through the circuit.
    Table1,
    /// (|01> + |10>)/sqrt2 through the circuit.
    Table2,
    /// 128-step walk on 8 qubits from position 128.
    Fig7,
    /// The same walk from (|128> + |129>)/sqrt2.
    Fig8,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Table1 => "table1",
            Scenario::Table2 => "table2",
            Scenario::Fig7 => "fig7",
            Scenario::Fig8 => "fig8",
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct ReproduceArgs {
    #[arg(value_enum)]
    pub scenario: Scenario,
    #[arg(long, default_value = ".")]
    pub output_dir: PathBuf,
}

struct Reference {
    label: String,
    rho: DensityMatrix,
}

fn load_references(paths: &[PathBuf]) -> Result<Vec<Reference>> {
    paths
        .iter()
        .map(|p| {
            Ok(Reference {
                label: p.display().to_string(),
                rho: OperandSpec::read(p)?.to_density()?,
            })
        })
        .collect()
}

fn compare(reference: &Reference, branch: &str, state: &StateVector) -> Result<FidelityRow> {
    let rho = DensityMatrix::from_pure(state)?;
    if rho.dim() != reference.rho.dim() {
        return Err(CliError::Validation(format!(
            "reference {} has dimension {}, output has {}",
            reference.label,
            reference.rho.dim(),
            rho.dim()
        )));
    }
    Ok(FidelityRow {
        reference: reference.label.clone(),
        branch: branch.into(),
        fidelity: fidelity(&rho, &reference.rho)?,
        deviation_fidelity: deviation_fidelity(&deviation(&rho), &deviation(&reference.rho)).ok(),
    })
}

fn circuit_rows(work: &StateVector, references: &[Reference]) -> Result<(Vec<OutcomeRow>, Vec<FidelityRow>)> {
    let result = lcu_circuit(work)?;
    let mut outcomes = Vec::new();
    let mut fidelities = Vec::new();
    for b in &result.branches {
        let post = b.outcome.post_state.as_ref();
        outcomes.push(OutcomeRow {
            pattern: b.branch.bits().into(),
            operator: b.branch.operator().name().into(),
            probability: b.outcome.probability,
            post_state: post.map(|s| pack(s.amplitudes())),
        });
        if let Some(state) = post {
            for r in references {
                fidelities.push(compare(r, b.branch.bits(), state)?);
            }
        }
    }
    Ok((outcomes, fidelities))
}

/// `lcu ladder`: one state through the circuit or the operator matrix.
pub fn cmd_ladder(args: &LadderArgs, argv: &[String]) -> Result<RunReport> {
    let work = StateSpec::read(&args.input)?.to_state()?;
    let references = load_references(&args.references)?;
    let config = json!({
        "input": args.input.display().to_string(),
        "mode": format!("{:?}", args.mode).to_lowercase(),
        "kind": args.kind.map(LadderKind::name),
        "work_qubits": work.num_qubits(),
        "references": args.references.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
    });
    let mut report = RunReport::new(argv, config);
    match args.mode {
        Mode::Circuit => {
            if args.kind.is_some() {
                return Err(CliError::Usage("--kind only applies to --mode oracle".into()));
            }
            let (outcomes, fidelities) = circuit_rows(&work, &references)?;
            report.outcomes = outcomes;
            report.fidelities = fidelities;
        }
        Mode::Oracle => {
            let kind = args
                .kind
                .ok_or_else(|| CliError::Usage("--mode oracle requires --kind".into()))?;
            let op = ladder_matrix(work.dim(), kind)?;
            let out = RawState::new(work.num_qubits(), apply_operator(&op, work.amplitudes())?)?;
            if let Some(state) = out.normalize() {
                for r in &references {
                    report.fidelities.push(compare(r, "oracle", &state)?);
                }
            }
            report.oracle = Some(OracleRow {
                kind: kind.name().into(),
                norm: out.norm(),
                output: pack(out.amplitudes()),
            });
        }
    }
    report.validate()?;
    Ok(report)
}

fn parse_start(start: &str, walker_qubits: usize) -> Result<(StateVector, usize)> {
    if let Ok(position) = start.parse::<usize>() {
        return Ok((StateVector::basis(walker_qubits, position)?, position));
    }
    let state = StateSpec::read(Path::new(start))?.to_state()?;
    if state.num_qubits() != walker_qubits {
        return Err(CliError::Validation(format!(
            "start state has {} qubits, walker has {walker_qubits}",
            state.num_qubits()
        )));
    }
    // first position of maximal weight
    let probs = state.probabilities();
    let center = probs
        .iter()
        .enumerate()
        .fold(0, |best, (x, p)| if *p > probs[best] { x } else { best });
    Ok((state, center))
}

fn parse_coin(coin: &str) -> Result<StateVector> {
    let state = match coin {
        "0" => StateVector::basis(1, 0)?,
        "1" => StateVector::basis(1, 1)?,
        path => StateSpec::read(Path::new(path))?.to_state()?,
    };
    if state.num_qubits() != 1 {
        return Err(CliError::Validation("coin state must be a single qubit".into()));
    }
    Ok(state)
}

/// `lcu qrw`: run a walk, write the CSV, and return the distribution with its report.
pub fn cmd_qrw(args: &QrwArgs, argv: &[String]) -> Result<(PositionDistribution, RunReport)> {
    let (walker, center) = parse_start(&args.start, args.walker_qubits)?;
    let cfg = WalkConfig {
        walker_qubits: args.walker_qubits,
        steps: args.steps,
        coin_angle_deg: args.coin_angle_deg,
        initial_walker: walker,
        initial_coin: parse_coin(&args.coin_init)?,
    };
    let dist = run_walk(&cfg)?;
    write_distribution_file(&args.output, &dist)?;
    info!("wrote {} positions to {}", dist.len(), args.output.display());
    let stats = walk_statistics(&dist, center);
    let config = json!({
        "walker_qubits": args.walker_qubits,
        "steps": args.steps,
        "coin_angle_deg": args.coin_angle_deg,
        "start": args.start,
        "coin_init": args.coin_init,
    });
    let mut report = RunReport::new(argv, config);
    report.walk = Some(WalkSummary {
        csv: Some(args.output.display().to_string()),
        center,
        mean_displacement: stats.mean,
        stddev: stats.stddev,
        even_mass: dist.parity_mass(0),
        odd_mass: dist.parity_mass(1),
    });
    Ok((dist, report))
}

/// `lcu fidelity`: normalized-overlap fidelity between two files.
pub fn cmd_fidelity(args: &FidelityArgs) -> Result<f64> {
    let a = OperandSpec::read(&args.a)?.to_density()?;
    let b = OperandSpec::read(&args.b)?.to_density()?;
    if a.dim() != b.dim() {
        return Err(CliError::Validation(format!(
            "dimension mismatch: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(if args.deviation {
        deviation_fidelity(&deviation(&a), &deviation(&b))?
    } else {
        fidelity(&a, &b)?
    })
}

/// Ancilla readout probabilities and fidelities measured on hardware for the
/// two circuit scenarios: p(00), p(10), p(01)+p(11), F(00), F(10).
const TABLE1_MEASURED: [f64; 5] = [0.4956, 0.4951, 0.0093, 0.988, 0.983];
const TABLE2_MEASURED: [f64; 5] = [0.4884, 0.4979, 0.0138, 0.963, 0.970];

pub struct ReproduceOutput {
    pub files: Vec<PathBuf>,
    pub summary: String,
}

fn circuit_scenario(
    scenario: Scenario,
    input: StateVector,
    targets: [(&str, StateVector); 2],
    extra: Option<(&str, StateVector)>,
    measured: [f64; 5],
    argv: &[String],
) -> Result<RunReport> {
    let result = lcu_circuit(&input)?;
    let config = json!({
        "scenario": scenario.name(),
        "input": pack(input.amplitudes()),
    });
    let mut report = RunReport::new(argv, config);
    let (outcomes, _) = circuit_rows(&input, &[])?;
    report.outcomes = outcomes;

    let mut ideal_f = [0.0; 2];
    for (slot, (branch, (label, target))) in [Branch::Add, Branch::Sub].into_iter().zip(&targets).enumerate() {
        let post = result
            .post_state(branch)
            .ok_or_else(|| CliError::Validation(format!("branch {} vanished", branch.bits())))?;
        let reference = Reference {
            label: (*label).into(),
            rho: DensityMatrix::from_pure(target)?,
        };
        let row = compare(&reference, branch.bits(), post)?;
        ideal_f[slot] = row.fidelity;
        report.fidelities.push(row);
    }
    if let Some((label, target)) = extra {
        let reference = Reference {
            label: label.into(),
            rho: DensityMatrix::from_pure(&target)?,
        };
        let post = result.post_state(Branch::Sub).expect("checked above");
        report.fidelities.push(compare(&reference, Branch::Sub.bits(), post)?);
    }

    let p = |b| result.probability(b);
    let ideal = [
        p(Branch::Add),
        p(Branch::Sub),
        p(Branch::AddBoundary) + p(Branch::SubBoundary),
        ideal_f[0],
        ideal_f[1],
    ];
    let names = ["p(00)", "p(10)", "p(01)+p(11)", "F(00)", "F(10)"];
    report.comparison = names
        .iter()
        .zip(ideal.iter().zip(measured))
        .map(|(q, (&ideal, experimental))| ComparisonRow {
            quantity: (*q).into(),
            ideal,
            experimental,
        })
        .collect();
    report.validate()?;
    Ok(report)
}

fn walk_scenario(scenario: Scenario, dir: &Path, argv: &[String]) -> Result<(RunReport, PathBuf)> {
    let csv = dir.join(format!("{}.csv", scenario.name()));
    let start = match scenario {
        Scenario::Fig8 => {
            let spec = StateSpec::from_state(&StateVector::uniform_over(8, &[128, 129])?);
            let path = dir.join("fig8_start.json");
            std::fs::write(&path, serde_json::to_string_pretty(&spec)?).map_err(|e| CliError::io(&path, e))?;
            path.display().to_string()
        }
        _ => "128".into(),
    };
    let args = QrwArgs {
        start,
        output: csv.clone(),
        ..QrwArgs::default()
    };
    let (_, report) = cmd_qrw(&args, argv)?;
    Ok((report, csv))
}

/// `lcu reproduce`: run a named scenario and write its artifacts to `output_dir`.
pub fn cmd_reproduce(args: &ReproduceArgs, argv: &[String]) -> Result<ReproduceOutput> {
    let dir = &args.output_dir;
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut files = Vec::new();
    let report = match args.scenario {
        Scenario::Table1 => circuit_scenario(
            args.scenario,
            StateVector::basis(2, 1)?,
            [("|10>", StateVector::basis(2, 2)?), ("|00>", StateVector::basis(2, 0)?)],
            None,
            TABLE1_MEASURED,
            argv,
        )?,
        Scenario::Table2 => circuit_scenario(
            args.scenario,
            StateVector::from_real(2, &[0.0, h, h, 0.0])?,
            [
                ("(|10>+|11>)/sqrt2", StateVector::from_real(2, &[0.0, 0.0, h, h])?),
                ("(|00>+|01>)/sqrt2", StateVector::from_real(2, &[h, h, 0.0, 0.0])?),
            ],
            Some(("(|00>+|10>)/sqrt2", StateVector::from_real(2, &[h, 0.0, h, 0.0])?)),
            TABLE2_MEASURED,
            argv,
        )?,
        Scenario::Fig7 | Scenario::Fig8 => {
            let (report, csv) = walk_scenario(args.scenario, dir, argv)?;
            files.push(csv);
            report
        }
    };
    let json_path = dir.join(format!("{}.json", args.scenario.name()));
    report.write(&json_path)?;
    files.push(json_path);
    Ok(ReproduceOutput {
        summary: summarize(args.scenario, &report),
        files,
    })
}

fn summarize(scenario: Scenario, report: &RunReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "scenario {} (noiseless simulation)", scenario.name());
    if !report.comparison.is_empty() {
        let _ = writeln!(s, "{:<14} {:>10} {:>14}", "quantity", "ideal", "experimental");
        for row in &report.comparison {
            let _ = writeln!(
                s,
                "{:<14} {:>9.2}% {:>13.2}%",
                row.quantity,
                100.0 * row.ideal,
                100.0 * row.experimental
            );
        }
        for row in report.fidelities.iter().skip(2) {
            let _ = writeln!(s, "F({}, {}) = {:.12}", row.branch, row.reference, row.fidelity);
        }
    }
    if let Some(walk) = &report.walk {
        let _ = writeln!(
            s,
            "even mass {:.12}  odd mass {:.3e}  mean {:+.6}  stddev {:.6}",
            walk.even_mass, walk.odd_mass, walk.mean_displacement, walk.stddev
        );
    }
    s
}
