//! Command line surface for the capacity sweep.
//!
//! Subcommands: `table` reproduces the reference sweep as CSV, `curve`
//! emits dense curve data for plotting, `point` reports the entropy
//! breakdown at a single state, and `verify` runs the self-check suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use eacap::{
    bloch_to_density, capacity_record, make_amplitude_damping, mutual_information, verify,
    BlochVector, CapacityRecord, OptimizerConfig,
};

#[derive(Parser)]
#[command(name = "eacap", version, about = "Entanglement-assisted classical capacity of the amplitude damping channel")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the capacity sweep as CSV (eta, w3_opt, capacity, i_center, gap)
    Table {
        /// Comma-separated eta values; defaults to 0.04 .. 0.96 step 0.04
        #[arg(long, value_delimiter = ',')]
        etas: Option<Vec<f64>>,
        /// Write to a file (atomically) instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
        /// Decimal digits for the value columns (1 to 15)
        #[arg(long, default_value_t = 9)]
        precision: usize,
    },
    /// Emit a dense eta sweep of selected columns as CSV
    Curve {
        #[arg(long)]
        min: f64,
        #[arg(long)]
        max: f64,
        /// Number of rows, endpoints included
        #[arg(long)]
        steps: usize,
        /// Subset of w3_opt, capacity, i_center, gap; defaults to all
        #[arg(long, value_delimiter = ',')]
        columns: Option<Vec<Column>>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 9)]
        precision: usize,
    },
    /// Report the entropy breakdown of the damping channel at one state
    Point {
        #[arg(long)]
        eta: f64,
        /// Bloch vector as w1,w2,w3
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        w: Vec<f64>,
    },
    /// Run the self-check suites; nonzero exit on any failure
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Column {
    #[value(name = "w3_opt")]
    W3Opt,
    Capacity,
    #[value(name = "i_center")]
    ICenter,
    Gap,
}

impl Column {
    const ALL: [Column; 4] = [Column::W3Opt, Column::Capacity, Column::ICenter, Column::Gap];

    fn header(self) -> &'static str {
        match self {
            Column::W3Opt => "w3_opt",
            Column::Capacity => "capacity",
            Column::ICenter => "i_center",
            Column::Gap => "gap",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Table {
            etas,
            out,
            precision,
        } => {
            check_precision(precision)?;
            let mut etas = etas.unwrap_or_else(default_eta_grid);
            for &eta in &etas {
                check_eta(eta)?;
            }
            etas.sort_by(|a, b| a.partial_cmp(b).expect("finite eta"));
            let csv = render_table(&etas, precision)?;
            emit(&csv, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Curve {
            min,
            max,
            steps,
            columns,
            out,
            precision,
        } => {
            check_precision(precision)?;
            check_eta(min)?;
            check_eta(max)?;
            if min >= max {
                return Err(format!("empty range: min {min} must be below max {max}"));
            }
            if steps < 2 {
                return Err(format!("steps must be at least 2, got {steps}"));
            }
            let columns = canonical_columns(columns.unwrap_or_else(|| Column::ALL.to_vec()));
            let etas: Vec<f64> = (0..steps)
                .map(|i| {
                    if i == steps - 1 {
                        max
                    } else {
                        min + (max - min) * i as f64 / (steps - 1) as f64
                    }
                })
                .collect();
            let csv = render_curve(&etas, &columns, precision)?;
            emit(&csv, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Point { eta, w } => {
            check_eta(eta)?;
            if w.len() != 3 {
                return Err(format!("--w expects w1,w2,w3 (got {} values)", w.len()));
            }
            let w = BlochVector::new(w[0], w[1], w[2]);
            let report = render_point(eta, &w)?;
            print!("{report}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify => Ok(run_verify()),
    }
}

/// The sweep grid: eta = k/25 for k = 1..=24, i.e. 0.04 .. 0.96 step 0.04.
fn default_eta_grid() -> Vec<f64> {
    (1..=24).map(|k| k as f64 / 25.0).collect()
}

fn check_eta(eta: f64) -> Result<(), String> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(format!("eta = {eta} is outside [0, 1]"));
    }
    Ok(())
}

fn check_precision(precision: usize) -> Result<(), String> {
    if !(1..=15).contains(&precision) {
        return Err(format!("precision = {precision} is outside [1, 15]"));
    }
    Ok(())
}

fn canonical_columns(requested: Vec<Column>) -> Vec<Column> {
    Column::ALL
        .into_iter()
        .filter(|c| requested.contains(c))
        .collect()
}

fn sweep(etas: &[f64]) -> Result<Vec<CapacityRecord>, String> {
    let cfg = OptimizerConfig::default();
    etas.iter()
        .map(|&eta| capacity_record(eta, &cfg).map_err(|e| e.to_string()))
        .collect()
}

/// Column values for one record at fixed precision. The gap column is the
/// difference of the printed capacity and i_center columns, so the emitted
/// file is self-consistent under parsing.
fn formatted_columns(r: &CapacityRecord, precision: usize) -> [String; 4] {
    let fixed = |v: f64| format!("{v:.precision$}");
    let capacity = fixed(r.capacity);
    let i_center = fixed(r.i_center);
    let gap = fixed(
        capacity.parse::<f64>().expect("fixed-point is parseable")
            - i_center.parse::<f64>().expect("fixed-point is parseable"),
    );
    [fixed(r.w3_opt), capacity, i_center, gap]
}

fn render_table(etas: &[f64], precision: usize) -> Result<String, String> {
    let mut csv = String::from("eta,w3_opt,capacity,i_center,gap\n");
    for r in sweep(etas)? {
        let [w3, c, i0, gap] = formatted_columns(&r, precision);
        csv.push_str(&format!("{},{w3},{c},{i0},{gap}\n", r.eta));
    }
    Ok(csv)
}

fn render_curve(etas: &[f64], columns: &[Column], precision: usize) -> Result<String, String> {
    let mut csv = String::from("eta");
    for c in columns {
        csv.push(',');
        csv.push_str(c.header());
    }
    csv.push('\n');
    for r in sweep(etas)? {
        let [w3, c, i0, gap] = formatted_columns(&r, precision);
        csv.push_str(&format!("{}", r.eta));
        for col in columns {
            csv.push(',');
            csv.push_str(match col {
                Column::W3Opt => &w3,
                Column::Capacity => &c,
                Column::ICenter => &i0,
                Column::Gap => &gap,
            });
        }
        csv.push('\n');
    }
    Ok(csv)
}

fn render_point(eta: f64, w: &BlochVector) -> Result<String, String> {
    let ch = make_amplitude_damping(eta).map_err(|e| e.to_string())?;
    let rho = bloch_to_density(w).map_err(|e| e.to_string())?;
    let info = mutual_information(&ch, &rho).map_err(|e| e.to_string())?;
    Ok(format!(
        "eta         = {eta}\n\
         w           = ({}, {}, {})\n\
         S(rho)      = {:.12}\n\
         S(rho_out)  = {:.12}\n\
         S(exchange) = {:.12}\n\
         I           = {:.12}\n",
        w.w1, w.w2, w.w3, info.s_in, info.s_out, info.s_exchange, info.i
    ))
}

fn run_verify() -> ExitCode {
    let groups = verify::run_all();
    let mut all_passed = true;
    for g in &groups {
        println!(
            "{:<24} {} ({})",
            g.name,
            if g.passed { "PASS" } else { "FAIL" },
            g.detail
        );
        all_passed &= g.passed;
    }
    if all_passed {
        println!("all {} groups passed", groups.len());
        ExitCode::SUCCESS
    } else {
        println!("verification failed");
        ExitCode::from(1)
    }
}

fn emit(content: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => write_atomic(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
    }
}

/// Write through a temporary file in the target directory, then rename.
fn write_atomic(path: &Path, content: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))?;
    tmp.write_all(content.as_bytes())?;
    tmp.persist(path)?;
    Ok(())
}
