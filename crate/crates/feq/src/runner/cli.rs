//! The `feq` command-line interface.

use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::{
    emit_problem_files, load_solver_config, render_report, run, Mode, PipelineOptions,
    PipelineReport, ReportFormat, SolverConfig,
};
use crate::problem::{load_corpus, load_corpus_dir, Problem};
use crate::template::Template;

#[derive(Parser)]
#[command(
    name = "feq",
    about = "Find all solutions of real functional equations by polynomial templates and quantifier elimination"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve problems and report solved forms and check results
    Solve(SolveArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// A problem file, a directory of .feq files, or `corpus` for the
    /// bundled problems
    target: String,

    /// Pipeline mode; eager needs at least one configured solver and
    /// otherwise degrades to lazy
    #[arg(long, value_enum, default_value_t = ModeArg::Lazy)]
    mode: ModeArg,

    /// Restrict the run to one template
    #[arg(long, value_enum, default_value_t = TemplateArg::All)]
    template: TemplateArg,

    /// Directory for emitted solver inputs (.smt2 and .p files)
    #[arg(long, value_name = "DIR")]
    emit: Option<PathBuf>,

    /// External solver as NAME=CMD, with {file} as the query placeholder;
    /// repeatable
    #[arg(long = "solver", value_name = "NAME=CMD")]
    solvers: Vec<String>,

    /// Key-value file with solver commands and answer-token overrides
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Per-query timeout in seconds for external solvers
    #[arg(long, default_value_t = 60.0)]
    timeout: f64,

    /// Keep trying larger templates after the first nonempty solved form
    #[arg(long)]
    all_templates: bool,

    /// Inline the candidate into check queries instead of asserting its
    /// defining identity
    #[arg(long)]
    inline_check: bool,

    /// Report format
    #[arg(long, value_enum, default_value_t = ReportArg::Txt)]
    report: ReportArg,

    /// Also emit unit-equality tasks in the legacy sectioned format
    #[arg(long)]
    legacy_uniteq: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Eager,
    Lazy,
}

#[derive(Clone, Copy, ValueEnum)]
enum TemplateArg {
    All,
    Constant,
    Mlinear,
    Linear,
    Mquad,
    Quad,
}

impl TemplateArg {
    fn to_template(self) -> Option<Template> {
        match self {
            TemplateArg::All => None,
            TemplateArg::Constant => Some(Template::Constant),
            TemplateArg::Mlinear => Some(Template::MonomialLinear),
            TemplateArg::Linear => Some(Template::Linear),
            TemplateArg::Mquad => Some(Template::MonomialQuadratic),
            TemplateArg::Quad => Some(Template::Quadratic),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportArg {
    Txt,
    Csv,
}

/// Exit codes: 0 on success, 2 when every processed problem is outside the
/// supported fragment, 1 on an internal error.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve(args) => match solve(&args) {
            Ok(code) => code,
            Err(message) => {
                eprintln!("feq: {message}");
                1
            }
        },
    }
}

fn load_target(target: &str) -> Result<Vec<Problem>, String> {
    if target == "corpus" {
        return load_corpus().map_err(|e| e.to_string());
    }
    let path = PathBuf::from(target);
    if path.is_dir() {
        load_corpus_dir(&path).map_err(|e| e.to_string())
    } else {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| format!("{}: {e}", path.display()))?;
        let p = crate::expr::parse_problem(&text)
            .map_err(|e| format!("{}: {e}", path.display()))?;
        Ok(vec![p])
    }
}

fn solve(args: &SolveArgs) -> Result<i32, String> {
    if !args.timeout.is_finite() || args.timeout <= 0.0 {
        return Err("--timeout must be positive".to_string());
    }
    let timeout = Duration::from_secs_f64(args.timeout);
    let mut solvers: Vec<SolverConfig> = Vec::new();
    if let Some(config) = &args.config {
        solvers.extend(load_solver_config(config, timeout)?);
    }
    for spec in &args.solvers {
        solvers.push(SolverConfig::parse(spec, timeout)?);
    }

    let problems = load_target(&args.target)?;
    if problems.is_empty() {
        return Err(format!("no problems found in `{}`", args.target));
    }

    let opts = PipelineOptions {
        mode: match args.mode {
            ModeArg::Eager => Mode::Eager,
            ModeArg::Lazy => Mode::Lazy,
        },
        template: args.template.to_template(),
        all_templates: args.all_templates,
        solvers,
        inline_check: args.inline_check,
        legacy_uniteq: args.legacy_uniteq,
        emit_dir: args.emit.clone(),
    };

    let mut reports: Vec<PipelineReport> = Vec::new();
    for p in &problems {
        let report = run(p, &opts);
        if let Some(dir) = &opts.emit_dir {
            let written = emit_problem_files(p, &report, &opts, dir)
                .map_err(|e| format!("emitting {}: {e}", p.name))?;
            eprintln!("{}: wrote {} files under {}", p.name, written.len(), dir.display());
        }
        reports.push(report);
    }

    let format = match args.report {
        ReportArg::Txt => ReportFormat::Text,
        ReportArg::Csv => ReportFormat::Csv,
    };
    print!("{}", render_report(&reports, format));

    if reports.iter().all(|r| r.unsupported.is_some()) {
        Ok(2)
    } else {
        Ok(0)
    }
}
