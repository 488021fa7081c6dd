use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use semi_hilbert::catalog::{registry, run_selected, CheckParams};
use semi_hilbert::{SweepConfig, DEFAULT_CHECK_TOL};
use semi_hilbert_harness::fuzz::generate_trial;
use semi_hilbert_harness::repro::evaluate_examples;
use semi_hilbert_harness::report::{Report, Row};
use semi_hilbert_harness::{fuzz, scan_sharpness, Bias, FuzzConfig, HarnessError, Instance, RankPolicy};

/// `println!` that ignores a closed stdout.
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_REPRO: u8 = 3;

#[derive(Parser)]
#[command(name = "semi-hilbert", version, about = "Check A-numerical radius inequalities on finite matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce the worked examples.
    Repro {
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run checks on an instance file.
    Check {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value = "all")]
        check_id: String,
        /// Relative tolerance; negative values demand strict slack.
        #[arg(long, default_value_t = DEFAULT_CHECK_TOL, allow_negative_numbers = true)]
        tol: f64,
        /// Exponent for thm_power_r.
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Seeded random trials over the catalog.
    Fuzz {
        #[command(flatten)]
        gen: GenArgs,
        /// Restrict to these checks (repeatable).
        #[arg(long = "check-id")]
        check_ids: Vec<String>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Rank trials by smallest relative slack for one check.
    ScanSharpness {
        #[arg(long)]
        check_id: String,
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long, default_value_t = 10)]
        top: usize,
        /// Write the instances of the top cases here.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = RankPolicy::Mixed)]
    rank_policy: RankPolicy,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_CHECK_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Bias::None)]
    bias: Bias,
    /// Use A = I.
    #[arg(long)]
    identity_metric: bool,
}

impl GenArgs {
    fn config(&self, checks: Option<Vec<String>>) -> FuzzConfig {
        FuzzConfig {
            n_min: self.n_min,
            n_max: self.n_max,
            rank_policy: self.rank_policy,
            trials: self.trials,
            master_seed: self.seed,
            tol: self.tol,
            checks,
            bias: self.bias,
            identity_metric: self.identity_metric,
            sweep: SweepConfig::default(),
        }
    }
}

/// `-` is stdout.
fn write_out(path: &Path, write: impl FnOnce(&mut dyn Write) -> Result<(), HarnessError>) -> Result<(), HarnessError> {
    if path == Path::new("-") {
        write(&mut std::io::stdout().lock())
    } else {
        let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
        write(&mut file)?;
        file.flush()?;
        Ok(())
    }
}

fn write_json(path: &Path, json: &str) -> Result<(), HarnessError> {
    write_out(path, |w| {
        writeln!(w, "{json}")?;
        Ok(())
    })
}

fn print_rows(rows: &[Row]) {
    for r in rows {
        let status = if r.skipped {
            "skip"
        } else if r.pass {
            "pass"
        } else {
            "FAIL"
        };
        match &r.error {
            Some(e) => out!("{:<20} {status:<4}  {e}", r.check_id),
            None => out!("{:<20} {status:<4}  lhs {:.12e}  rhs {:.12e}  slack {:.3e}", r.check_id, r.lhs, r.rhs, r.slack),
        }
    }
}

fn print_summary(report: &Report) {
    out!("{:<20} {:>6} {:>6} {:>6} {:>14}", "check", "eval", "skip", "viol", "min rel slack");
    for (id, s) in &report.summary.checks {
        let min = s.min_relative_slack.map_or("-".to_string(), |m| format!("{m:.3e}"));
        out!("{id:<20} {:>6} {:>6} {:>6} {min:>14}", s.evaluated, s.skipped, s.violations);
    }
    out!(
        "trials {}  rows {}  violations {}  skipped {}  errors {}",
        report.trials,
        report.rows.len(),
        report.summary.violations,
        report.summary.skipped,
        report.summary.errors
    );
}

fn verdict(report: &Report) -> ExitCode {
    if report.violations() > 0 {
        ExitCode::from(EXIT_VIOLATION)
    } else {
        ExitCode::SUCCESS
    }
}

fn repro(json: Option<PathBuf>) -> Result<ExitCode, HarnessError> {
    let report = evaluate_examples()?;
    for i in &report.items {
        out!(
            "({}) {:<40} expected {:<20} got {:<20} {}",
            i.example,
            i.quantity,
            i.expected,
            i.actual,
            if i.ok { "ok" } else { "MISMATCH" }
        );
    }
    if let Some(path) = json {
        write_json(&path, &serde_json::to_string_pretty(&report)?)?;
    }
    match report.into_result() {
        Ok(_) => Ok(ExitCode::SUCCESS),
        Err(e) => {
            eprintln!("error: {e}");
            Ok(ExitCode::from(EXIT_REPRO))
        }
    }
}

fn check(instance: &Path, check_id: &str, tol: f64, r: f64, json: Option<PathBuf>) -> Result<ExitCode, HarnessError> {
    if !tol.is_finite() {
        return Err(HarnessError::InvalidConfig(format!("bad tolerance {tol}")));
    }
    let inst = Instance::load(instance)?;
    let f = inst.validate()?;
    let ops = inst.operands()?;
    let ids: Vec<&str> = if check_id == "all" {
        registry().iter().map(|d| d.id).collect()
    } else {
        semi_hilbert::catalog::find(check_id)
            .ok_or_else(|| semi_hilbert::Error::UnknownCheckId(check_id.to_string()))?;
        vec![check_id]
    };
    let params = CheckParams { r, sample_seed: inst.seed, ..CheckParams::default() };
    let results = run_selected(&ids, &f, &ops, &params, &SweepConfig::default(), tol);
    let rows: Vec<Row> = results.iter().map(|res| Row::from_result(0, inst.seed, res)).collect();
    print_rows(&rows);
    let report = Report::assemble(inst.seed, 1, rows, 0);
    if let Some(path) = json {
        write_json(&path, &report.to_json()?)?;
    }
    Ok(verdict(&report))
}

fn run(cli: Cli) -> Result<ExitCode, HarnessError> {
    match cli.command {
        Command::Repro { json } => repro(json),
        Command::Check { instance, check_id, tol, r, json } => check(&instance, &check_id, tol, r, json),
        Command::Fuzz { gen, check_ids, json, csv } => {
            let checks = (!check_ids.is_empty()).then_some(check_ids);
            let report = fuzz(&gen.config(checks))?;
            print_summary(&report);
            if let Some(path) = json {
                write_json(&path, &report.to_json()?)?;
            }
            if let Some(path) = csv {
                write_out(&path, |w| report.write_csv(w))?;
            }
            Ok(verdict(&report))
        }
        Command::ScanSharpness { check_id, gen, top, dump_dir, json } => {
            let cfg = gen.config(Some(vec![check_id.clone()]));
            let report = scan_sharpness(&cfg, top)?;
            if let Some(s) = report.summary.checks.get(&check_id) {
                for (k, c) in s.top.iter().enumerate() {
                    out!("{:>3}  trial {:>6}  seed {:>20}  rel slack {:.3e}", k + 1, c.trial, c.seed, c.relative_slack);
                    if let Some(dir) = &dump_dir {
                        std::fs::create_dir_all(dir)?;
                        let t = generate_trial(&cfg, c.trial)?;
                        t.instance.save(&dir.join(format!("{check_id}-{:02}-trial{}.json", k + 1, c.trial)))?;
                    }
                }
            }
            print_summary(&report);
            if let Some(path) = json {
                write_json(&path, &report.to_json()?)?;
            }
            Ok(verdict(&report))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
