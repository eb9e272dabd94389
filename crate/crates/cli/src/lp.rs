use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::Result;
use clap::{Args, ValueEnum};
use flipcolor::lp::{
    check_feasible, check_trips, enumerate_extremal, gen_program, solve_exact, ProgramKind, MAX_SIZE,
};
use flipcolor::params::FlipParams;
use flipcolor::rational::{format_rational, rat};

use crate::inputs::{load_params, rational, write};
use crate::{Outcome, ParamArgs, Preset};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Action {
    /// Check candidate parameters against a program.
    Verify,
    /// Solve a reduced program exactly.
    Solve,
    /// List configurations whose bound is tight.
    Extremal,
    /// Check the side conditions that rule out tight configurations with r >= 3.
    Trips,
}

#[derive(Args, Debug)]
pub struct LpArgs {
    #[arg(value_enum)]
    pub action: Action,
    /// P, P_red, P* or P*_red.
    #[arg(default_value = "P*_red")]
    pub program: String,
    #[command(flatten)]
    pub params: ParamArgs,
    /// κ to test against; defaults to 161/88 for starred programs and 11/6 otherwise
    /// (11/6 for extremal).
    #[arg(long)]
    pub kappa: Option<String>,
    /// Largest configuration size r in P and P*.
    #[arg(long, default_value_t = 2)]
    pub rmax: usize,
    /// Largest configuration entry enumerated.
    #[arg(long, default_value_t = 8)]
    pub size_cap: usize,
    /// Certificate CSV (constraint id, slack).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the program in text form.
    #[arg(long)]
    pub export: Option<PathBuf>,
}

fn params_line(p: &FlipParams) -> String {
    (1..=MAX_SIZE.max(p.values().len()))
        .map(|l| format_rational(&p.get(l)))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn run(args: &LpArgs) -> Result<Outcome> {
    let kind = ProgramKind::from_str(&args.program)?;
    let default_preset = if kind.is_starred() { Preset::Optimal } else { Preset::Vigoda };
    let kappa = match (&args.kappa, args.action) {
        (Some(text), _) => rational(text)?,
        (None, Action::Extremal) => rat(11, 6),
        (None, _) if kind.is_starred() => rat(161, 88),
        (None, _) => rat(11, 6),
    };
    let needs_program = matches!(args.action, Action::Verify | Action::Solve) || args.export.is_some();
    let program = needs_program.then(|| gen_program(kind, args.rmax, args.size_cap));
    if let (Some(path), Some(program)) = (&args.export, &program) {
        write(path, &program.to_text())?;
    }

    match args.action {
        Action::Verify => {
            let p = load_params(&args.params, default_preset)?;
            let program = program.expect("built above");
            let report = check_feasible(&p, &kappa, &program);
            println!("program: {} ({} constraints)", kind.name(), program.constraints.len());
            println!("p: ({})", params_line(&p));
            println!("kappa: {}", format_rational(&kappa));
            println!("violated: {}", report.violations().len());
            for row in report.violations() {
                println!("  c{} {} slack {}", row.id, row.provenance, format_rational(&row.slack));
            }
            println!("tight: {}", report.tight().len());
            for row in report.tight().iter().take(20) {
                println!("  c{} {}", row.id, row.provenance);
            }
            if let Some(path) = &args.out {
                write(path, &report.to_csv())?;
            }
            Ok(if report.feasible() { Outcome::Pass } else { Outcome::Fail })
        }
        Action::Solve => {
            let program = program.expect("built above");
            let sol = solve_exact(&program)?;
            let report = check_feasible(&sol.params, &sol.kappa, &program);
            println!("program: {}", kind.name());
            println!("p: ({})", params_line(&sol.params));
            println!("kappa: {}", format_rational(&sol.kappa));
            println!("dual certificate: {}", if sol.certified { "verified" } else { "FAILED" });
            println!("feasible: {}", report.feasible());
            if let Some(path) = &args.out {
                let mut csv = report.to_csv();
                csv.push_str("# duals\n");
                for (i, y) in sol.duals.iter().enumerate() {
                    writeln!(csv, "# y{i},{}", format_rational(y))?;
                }
                write(path, &csv)?;
            }
            Ok(if sol.certified && report.feasible() { Outcome::Pass } else { Outcome::Fail })
        }
        Action::Extremal => {
            let p = load_params(&args.params, default_preset)?;
            let found = enumerate_extremal(&p, &kappa, args.size_cap)?;
            println!("p: ({})", params_line(&p));
            println!("kappa: {}", format_rational(&kappa));
            println!("extremal configurations (up to symmetry): {}", found.len());
            for c in &found {
                println!("  {}", c.label());
            }
            if let Some(path) = &args.out {
                let mut csv = String::from("r,configuration\n");
                for c in &found {
                    writeln!(csv, "{},\"{}\"", c.r(), c.label())?;
                }
                write(path, &csv)?;
            }
            Ok(Outcome::Pass)
        }
        Action::Trips => {
            let p = load_params(&args.params, default_preset)?;
            let check = check_trips(&p, &kappa);
            println!("p: ({})", params_line(&p));
            println!("kappa: {}", format_rational(&kappa));
            print!("{}", check.report());
            println!("result: {}", if check.passes() { "pass" } else { "FAIL" });
            Ok(if check.passes() { Outcome::Pass } else { Outcome::Fail })
        }
    }
}
