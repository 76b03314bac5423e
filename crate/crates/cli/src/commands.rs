use std::fmt;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use spinlab_core::designs::DESIGN_TOL;
use spinlab_core::spin_core::{state_residuals, subspace_residuals, CERT_TOL};
use spinlab_core::subspaces::RANK_TOL;
use spinlab_core::{
    anticoherence_order, construct_report, design_order, majorana_points, sample_joint_range,
    scan_dimensions, state_from_points, GroupFamily, SpinQuantum, SpinState, Subspace,
    SCAN_CSV_HEADER,
};

use crate::io::{
    is_csv, points_to_csv, range_to_csv, read_json, read_points, table_to_csv, to_json_string,
    write_file,
};
use crate::{Command, CommandResult, FamilyArgs, EXIT_CERTIFICATION, EXIT_IO, EXIT_VALIDATION};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad flags, values or input files.
    Validation(String),
    /// The output could not be written.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation(_) => EXIT_VALIDATION,
            Self::Io(_) => EXIT_IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Validation(m) | Self::Io(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

fn invalid(e: impl fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

fn parse_spin(text: &str) -> Result<SpinQuantum, CliError> {
    text.parse().map_err(invalid)
}

fn parse_family(args: &FamilyArgs) -> Result<GroupFamily, CliError> {
    GroupFamily::parse(&args.family, args.n).map_err(invalid)
}

fn check_tol(tol: f64) -> Result<f64, CliError> {
    if tol > 0.0 && tol < 1.0 {
        Ok(tol)
    } else {
        Err(invalid(format!("tolerance {tol} outside (0, 1)")))
    }
}

/// Sends `payload` to `out` when given, else to stdout, and routes `summary`
/// to whichever stream is left.
fn emit(payload: String, summary: String, out: Option<&Path>) -> Result<CommandResult, CliError> {
    match out {
        Some(path) => {
            write_file(path, &payload)?;
            Ok(CommandResult::ok(summary, String::new()))
        }
        None => Ok(CommandResult::ok(payload, summary)),
    }
}

pub fn execute(command: Command) -> Result<CommandResult, CliError> {
    match command {
        Command::Build { family, spin, out_path, tol } => build(&family, &spin, out_path, tol),
        Command::Check { path, t_max, tol, require_order } => check(&path, t_max, tol, require_order),
        Command::Scan { family, spin_min, spin_max, csv_out } => {
            scan(&family, &spin_min, &spin_max, csv_out)
        }
        Command::Majorana { state, points, spin, out_path } => {
            majorana(state, points, spin.as_deref(), out_path)
        }
        Command::Range { spin, count, seed, csv_out } => range(&spin, count, seed, csv_out),
    }
}

fn build(
    family: &FamilyArgs,
    spin: &str,
    out: Option<PathBuf>,
    tol: Option<f64>,
) -> Result<CommandResult, CliError> {
    let family = parse_family(family)?;
    let spin = parse_spin(spin)?;
    let tol = check_tol(tol.unwrap_or(RANK_TOL))?;
    let report = construct_report(family, spin, tol).map_err(invalid)?;
    let summary = format!("{}\n", report.summary_line());
    let mut result = emit(to_json_string(&report.to_json()), summary, out.as_deref())?;
    if report.is_deficient() {
        result.exit_code = EXIT_CERTIFICATION;
        result.stderr.push_str(&format!(
            "certified order {} is below the guaranteed order {}\n",
            report.certified_order, report.expected_order
        ));
    }
    Ok(result)
}

enum CheckInput {
    State(SpinState),
    Subspace(Subspace),
}

fn read_check_input(path: &Path) -> Result<CheckInput, CliError> {
    let value = read_json(path)?;
    let bad = |e: serde_json::Error| invalid(format!("{}: {e}", path.display()));
    if value.get("amps").is_some() {
        return serde_json::from_value(value).map(CheckInput::State).map_err(bad);
    }
    if value.get("basis").is_some() {
        return serde_json::from_value(value).map(CheckInput::Subspace).map_err(bad);
    }
    match value.get("subspace") {
        Some(Value::Null) => Err(invalid(format!("{}: report has no subspace", path.display()))),
        Some(sub) => serde_json::from_value(sub.clone()).map(CheckInput::Subspace).map_err(bad),
        None => Err(invalid(format!(
            "{}: expected a state, a subspace or a build report",
            path.display()
        ))),
    }
}

fn check(
    path: &Path,
    t_max: Option<usize>,
    tol: Option<f64>,
    require_order: Option<usize>,
) -> Result<CommandResult, CliError> {
    let tol = check_tol(tol.unwrap_or(CERT_TOL))?;
    let input = read_check_input(path)?;
    let (payload, order) = match input {
        CheckInput::State(state) => {
            let t_max = t_max.unwrap_or(state.spin().doubled() as usize);
            let order = anticoherence_order(&state, t_max, tol);
            let residuals = state_residuals(&state, t_max);
            let points = majorana_points(&state).map_err(invalid)?;
            let design = design_order(&points, state.spin().doubled().max(1), DESIGN_TOL);
            let payload = json!({
                "kind": "state",
                "doubled_spin": state.spin().doubled(),
                "order": order,
                "residuals": residuals,
                "points": points.points(),
                "design": design,
            });
            (payload, order)
        }
        CheckInput::Subspace(mut sub) => {
            let t_max = t_max.unwrap_or(sub.spin().doubled() as usize);
            let order = sub.certify(t_max, tol);
            let payload = json!({
                "kind": "subspace",
                "doubled_spin": sub.spin().doubled(),
                "dim": sub.dim(),
                "order": order,
                "residuals": subspace_residuals(&sub, t_max),
            });
            (payload, order)
        }
    };
    let mut result = CommandResult::ok(to_json_string(&payload), format!("order={order}\n"));
    if let Some(need) = require_order {
        if order < need {
            result.exit_code = EXIT_CERTIFICATION;
            result.stderr.push_str(&format!("required order {need}, certified {order}\n"));
        }
    }
    Ok(result)
}

fn scan(
    family: &FamilyArgs,
    spin_min: &str,
    spin_max: &str,
    out: Option<PathBuf>,
) -> Result<CommandResult, CliError> {
    let family = parse_family(family)?;
    let (lo, hi) = (parse_spin(spin_min)?, parse_spin(spin_max)?);
    if lo > hi {
        return Err(invalid(format!("empty spin range {lo}..{hi}")));
    }
    let reports = scan_dimensions(family, lo, hi).map_err(invalid)?;
    let rows: Vec<[String; 5]> = reports.iter().map(|r| r.csv_record()).collect();
    let nontrivial: Vec<String> = reports
        .iter()
        .filter(|r| r.is_nontrivial())
        .map(|r| r.spin.to_string())
        .collect();
    let summary = format!(
        "family={family} spins={} nontrivial={} at [{}]\n",
        reports.len(),
        nontrivial.len(),
        nontrivial.join(",")
    );
    emit(table_to_csv(&SCAN_CSV_HEADER, &rows), summary, out.as_deref())
}

fn majorana(
    state: Option<PathBuf>,
    points: Option<PathBuf>,
    spin: Option<&str>,
    out: Option<PathBuf>,
) -> Result<CommandResult, CliError> {
    let csv_out = out.as_deref().is_some_and(is_csv);
    if let Some(path) = state {
        let state: SpinState = serde_json::from_value(read_json(&path)?)
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        let pts = majorana_points(&state).map_err(invalid)?;
        let payload = if csv_out { points_to_csv(&pts) } else { to_json_string(&pts) };
        let summary = format!("doubled_spin={} points={}\n", state.spin().doubled(), pts.len());
        return emit(payload, summary, out.as_deref());
    }
    let path = points.expect("clap requires one input");
    let pts = read_points(&path)?;
    if let Some(spin) = spin {
        let want = parse_spin(spin)?.doubled() as usize;
        if pts.len() != want {
            return Err(invalid(format!("spin {spin} needs {want} points, found {}", pts.len())));
        }
    }
    if csv_out {
        return Err(invalid("states are written as JSON"));
    }
    let state = state_from_points(&pts).map_err(invalid)?;
    let summary = format!("doubled_spin={} points={}\n", state.spin().doubled(), pts.len());
    emit(to_json_string(&state), summary, out.as_deref())
}

fn range(spin: &str, count: usize, seed: u64, out: Option<PathBuf>) -> Result<CommandResult, CliError> {
    let spin = parse_spin(spin)?;
    if count == 0 {
        return Err(invalid("count must be at least 1"));
    }
    let sample = sample_joint_range(spin, count, seed);
    let summary = format!("max_norm={}\n", sample.max_norm());
    emit(range_to_csv(&sample.points), summary, out.as_deref())
}
