use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;
use zerosound::kinetic::{
    discrete_collective_root, evolve_initial_value, max_stable_step, spectral_peak, AngularGrid,
    AngularState, SpectralPeak, TimeSeries, Window,
};
use zerosound::{
    branch_scan, coupling_strength, high_frequency_branch, physical_frequency, solve_zero_sound,
    CouplingStrength, DispersionPoint, Error, ErrorKind, FermiParameters, GridSpec,
    InteractionModel, Result, ScanPoint, SolverConfig, Spacing,
};

use crate::args::{CompareArgs, Format, KineticArgs, ScanArgs, SimulateArgs, SolveArgs, SolverArgs};
use crate::output;

const SIMULATE_N_MU: usize = 128;
const COMPARE_N_MU: usize = 400;

fn solver_config(args: &SolverArgs) -> Result<SolverConfig> {
    SolverConfig::default().with_tolerance(args.tol)
}

fn load_params(args: &SolverArgs) -> Result<Option<FermiParameters>> {
    args.params_file
        .as_ref()
        .map(FermiParameters::from_preset_file)
        .transpose()
}

fn coupling(q0: f64, k_lambda: f64) -> Result<(InteractionModel, CouplingStrength)> {
    let model = InteractionModel::new(q0)?;
    Ok((model, coupling_strength(model, k_lambda)?))
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut line = serde_json::to_string(value).expect("plain data serializes");
    line.push('\n');
    line
}

pub fn solve(args: &SolveArgs) -> Result<()> {
    let cfg = solver_config(&args.solver)?;
    let params = load_params(&args.solver)?;
    let (_, a) = coupling(args.mode.q0, args.mode.k_lambda)?;
    let mut point = solve_zero_sound(&a, &cfg)?;
    if let Some(params) = &params {
        point = point.with_frequency(params)?;
    }
    output::emit(args.out.as_deref(), &json_line(&point))?;
    Ok(())
}

#[derive(Serialize)]
struct FailedRow<'a> {
    k_lambda_d: f64,
    #[serde(rename = "Q0")]
    q0: f64,
    #[serde(rename = "A")]
    coupling: f64,
    method: &'static str,
    error: &'static str,
    message: &'a str,
}

#[derive(Serialize)]
#[serde(untagged)]
enum ScanRow<'a> {
    Solved(&'a DispersionPoint),
    Failed(FailedRow<'a>),
}

pub fn scan(args: &ScanArgs) -> Result<()> {
    let cfg = solver_config(&args.solver)?;
    let params = load_params(&args.solver)?;
    let model = InteractionModel::new(args.q0)?;
    let spacing = if args.log {
        Spacing::Logarithmic
    } else {
        Spacing::Linear
    };
    let grid = GridSpec::new(args.k_min, args.k_max, args.points, spacing)?;
    let scan = branch_scan(model, &grid, &cfg, params.as_ref())?;

    let text = match args.format {
        Format::Csv => output::scan_csv(&scan),
        Format::Json => {
            let rows: Vec<ScanRow> = scan
                .points
                .iter()
                .map(|p| match p {
                    ScanPoint::Solved(p) => ScanRow::Solved(p),
                    ScanPoint::Failed(f) => ScanRow::Failed(FailedRow {
                        k_lambda_d: f.k_lambda_d,
                        q0: f.q0,
                        coupling: f.coupling,
                        method: "error",
                        error: f.kind.as_str(),
                        message: &f.message,
                    }),
                })
                .collect();
            json_line(&rows)
        }
    };
    output::emit(args.out.as_deref(), &text)?;
    Ok(())
}

struct KineticSetup {
    grid: AngularGrid,
    dt: f64,
    steps: usize,
    window: Window,
}

impl KineticSetup {
    fn new(args: &KineticArgs, a: f64, default_n_mu: usize) -> Result<Self> {
        let dt = args.dt.unwrap_or_else(|| max_stable_step(a));
        if !(dt.is_finite() && dt > 0.0) || dt > max_stable_step(a) {
            return Err(Error::InvalidArgument(format!(
                "dt = {dt} violates 0 < dt <= 0.1/(1 + A) = {}",
                max_stable_step(a)
            )));
        }
        if args.steps < 2 {
            return Err(Error::InvalidArgument(format!(
                "need at least 2 steps, got {}",
                args.steps
            )));
        }
        Ok(KineticSetup {
            grid: AngularGrid::gauss_legendre(args.n_mu.unwrap_or(default_n_mu))?,
            dt,
            steps: args.steps,
            window: args.window.into(),
        })
    }

    fn run(&self, a: &CouplingStrength, amplitude: f64) -> Result<(TimeSeries, SpectralPeak)> {
        let init = AngularState::isotropic(&self.grid, Complex64::new(amplitude, 0.0))?;
        let series = evolve_initial_value(a, &self.grid, &init, self.dt, self.steps)?;
        let peak = spectral_peak(&series, self.window)?;
        Ok((series, peak))
    }
}

#[derive(Serialize)]
struct SimulationSummary {
    #[serde(rename = "Q0")]
    q0: f64,
    k_lambda_d: f64,
    #[serde(rename = "A")]
    coupling: f64,
    n_mu: usize,
    dt: f64,
    steps: usize,
    window: Window,
    peak: SpectralPeak,
    analytic: DispersionPoint,
    deviation: f64,
    within_bin: bool,
    omega_peak: Option<f64>,
}

pub fn simulate(args: &SimulateArgs) -> Result<()> {
    let cfg = solver_config(&args.solver)?;
    let params = load_params(&args.solver)?;
    let (_, a) = coupling(args.mode.q0, args.mode.k_lambda)?;
    if !args.amplitude.is_finite() {
        return Err(Error::InvalidArgument("amplitude must be finite".into()));
    }
    let setup = KineticSetup::new(&args.kinetic, a.value(), SIMULATE_N_MU)?;
    let mut analytic = solve_zero_sound(&a, &cfg)?;
    let (series, peak) = setup.run(&a, args.amplitude)?;

    let omega_peak = match &params {
        Some(params) => {
            analytic = analytic.with_frequency(params)?;
            Some(physical_frequency(peak.frequency, a.k_lambda_d(), params)?)
        }
        None => None,
    };
    let deviation = (peak.frequency - 1.0) - analytic.s_minus_1;
    let summary = SimulationSummary {
        q0: a.q0(),
        k_lambda_d: a.k_lambda_d(),
        coupling: a.value(),
        n_mu: setup.grid.size(),
        dt: setup.dt,
        steps: setup.steps,
        window: setup.window,
        peak,
        analytic,
        deviation,
        within_bin: deviation.abs() <= peak.bin_width,
        omega_peak,
    };

    std::fs::write(&args.out, output::series_csv(&series))?;
    output::emit(args.summary.as_deref(), &json_line(&summary))?;
    Ok(())
}

pub const COMPARE_METHODS: [&str; 5] = [
    "exact",
    "weak-coupling",
    "high-frequency",
    "matrix-oracle",
    "time-domain",
];

#[derive(Debug, Serialize)]
pub struct CompareRow {
    method: &'static str,
    status: &'static str,
    #[serde(rename = "S")]
    s: Option<f64>,
    #[serde(rename = "S_minus_1")]
    s_minus_1: Option<f64>,
    detail: String,
}

impl CompareRow {
    fn ok(method: &'static str, s: f64, s_minus_1: f64, detail: String) -> Self {
        CompareRow {
            method,
            status: "ok",
            s: Some(s),
            s_minus_1: Some(s_minus_1),
            detail,
        }
    }

    fn failed(method: &'static str, err: &Error) -> Self {
        CompareRow {
            method,
            status: err.kind().as_str(),
            s: None,
            s_minus_1: None,
            detail: err.to_string(),
        }
    }

    fn from_point(method: &'static str, p: &DispersionPoint) -> Self {
        let mut detail = p.method.as_str().to_string();
        if !p.outside_continuum() {
            detail.push_str(" (S <= 1: outside validity)");
        }
        CompareRow::ok(method, p.s, p.s_minus_1, detail)
    }
}

#[derive(Serialize)]
struct CompareReport<'a> {
    #[serde(rename = "Q0")]
    q0: f64,
    k_lambda_d: f64,
    #[serde(rename = "A")]
    coupling: f64,
    rows: &'a [CompareRow],
    /// `deviations[a][b] = S_a − S_b`, computed from the excesses `S − 1`.
    deviations: BTreeMap<&'static str, BTreeMap<&'static str, f64>>,
}

fn compare_rows(args: &CompareArgs) -> Result<(CouplingStrength, Vec<CompareRow>)> {
    let cfg = solver_config(&args.solver)?;
    let params = load_params(&args.solver)?.unwrap_or_default();
    let (model, a) = coupling(args.mode.q0, args.mode.k_lambda)?;
    let setup = KineticSetup::new(&args.kinetic, a.value(), COMPARE_N_MU)?;

    let exact = match solve_zero_sound(&a, &cfg) {
        Ok(p) => CompareRow::from_point("exact", &p),
        Err(e) => CompareRow::failed("exact", &e),
    };
    let weak = match zerosound::asymptotic_zero_sound(&a) {
        Ok(p) => CompareRow::from_point("weak-coupling", &p),
        Err(e) => CompareRow::failed("weak-coupling", &e),
    };
    let strong = match high_frequency_branch(model, a.k_lambda_d(), args.mass_convention.into(), &params) {
        Ok(p) => CompareRow::from_point("high-frequency", &p),
        Err(e) => CompareRow::failed("high-frequency", &e),
    };
    let matrix = match discrete_collective_root(&a, &setup.grid) {
        Ok(s) => CompareRow::ok("matrix-oracle", s, s - 1.0, format!("n_mu={}", setup.grid.size())),
        Err(e) => CompareRow::failed("matrix-oracle", &e),
    };
    let time_domain = match a.value() > 0.0 {
        true => setup.run(&a, 1.0),
        false => Err(Error::NoUndampedRoot { coupling: a.value() }),
    };
    let time_domain = match time_domain {
        Ok((_, peak)) => CompareRow::ok(
            "time-domain",
            peak.frequency,
            peak.frequency - 1.0,
            format!("bin_width={}", output::number(peak.bin_width)),
        ),
        Err(e) => CompareRow::failed("time-domain", &e),
    };
    Ok((a, vec![exact, weak, strong, matrix, time_domain]))
}

pub fn compare(args: &CompareArgs) -> Result<()> {
    let (a, rows) = compare_rows(args)?;
    let deviation = |i: usize, j: usize| match (rows[i].s_minus_1, rows[j].s_minus_1) {
        (Some(x), Some(y)) => Some(x - y),
        _ => None,
    };

    let text = match args.format {
        Format::Csv => {
            let mut out = String::from("method,status,S,S_minus_1");
            for m in COMPARE_METHODS {
                let _ = write!(out, ",dev_{m}");
            }
            out.push_str(",detail\n");
            for (i, row) in rows.iter().enumerate() {
                let opt = |x: Option<f64>| x.map(output::number).unwrap_or_default();
                let _ = write!(out, "{},{},{},{}", row.method, row.status, opt(row.s), opt(row.s_minus_1));
                for j in 0..rows.len() {
                    let _ = write!(out, ",{}", opt(deviation(i, j)));
                }
                let _ = writeln!(out, ",{}", output::text(&row.detail));
            }
            out
        }
        Format::Json => {
            let mut deviations = BTreeMap::new();
            for (i, row) in rows.iter().enumerate() {
                let inner: BTreeMap<_, _> = (0..rows.len())
                    .filter(|&j| j != i)
                    .filter_map(|j| deviation(i, j).map(|d| (rows[j].method, d)))
                    .collect();
                deviations.insert(row.method, inner);
            }
            json_line(&CompareReport {
                q0: a.q0(),
                k_lambda_d: a.k_lambda_d(),
                coupling: a.value(),
                rows: &rows,
                deviations,
            })
        }
    };
    output::emit(args.out.as_deref(), &text)?;
    Ok(())
}

/// Process exit code for each failure kind.
pub fn exit_code(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::InvalidArgument | ErrorKind::Domain => 2,
        ErrorKind::NoUndampedRoot => 3,
        ErrorKind::Convergence => 4,
        ErrorKind::NoCollectivePeak => 5,
        ErrorKind::Io => 6,
        ErrorKind::NumericalBlowup => 7,
    }
}
