//! Pipeline orchestration: eager and lazy solving over the template
//! catalogue, built-in solution checking, optional external-solver
//! dispatch, emission of prover inputs, and report rendering.

pub mod cli;
mod solver;

pub use solver::{
    external_solve, load_solver_config, resolve_binary, AnswerTokens, SolverConfig,
    SolverOutcome, SolverStatus,
};

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use crate::emit::{
    emit_check, emit_find, emit_prove, emit_template_verification, emit_uniqueness, emit_uniteq,
    Smt2Query,
};
use crate::poly::to_polynomial;
use crate::problem::{
    classify_fragment, Fragment, ParamDecl, Problem, SolutionCandidate, UnsupportedReason,
};
use crate::qe::{eliminate, CoefficientConstraint};
use crate::solved::{solve_constraint, NoSolvedForm, SolvedForm};
use crate::template::{inline, Template, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Verify the template first, then eliminate quantifiers.
    Eager,
    /// Eliminate first, then prove uniqueness of the solved form.
    Lazy,
}

impl Mode {
    pub fn tag(self) -> &'static str {
        match self {
            Mode::Eager => "eager",
            Mode::Lazy => "lazy",
        }
    }
}

/// Per-template verification status, mirroring the report marks
/// (proven, disproven, no answer).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TemplateStatus {
    Proven,
    Disproven,
    Unknown,
}

impl TemplateStatus {
    pub fn symbol(self) -> &'static str {
        match self {
            TemplateStatus::Proven => "✓",
            TemplateStatus::Disproven => "×",
            TemplateStatus::Unknown => "-",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Valid,
    Invalid,
    Unsupported(String),
}

impl CheckOutcome {
    pub fn symbol(&self) -> &'static str {
        match self {
            CheckOutcome::Valid => "✓",
            CheckOutcome::Invalid => "×",
            CheckOutcome::Unsupported(_) => "-",
        }
    }
}

/// Everything recorded about one template attempt.
#[derive(Debug, Clone)]
pub struct TemplateRun {
    pub template: Template,
    pub status: TemplateStatus,
    pub constraint: Option<CoefficientConstraint>,
    pub outcome: Option<Result<SolvedForm, NoSolvedForm>>,
    pub uniqueness: Option<SolverStatus>,
    pub micros: u128,
}

/// The result of running one problem through the pipeline.
#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub problem: String,
    pub mode: Mode,
    pub unsupported: Option<UnsupportedReason>,
    pub runs: Vec<TemplateRun>,
    /// Template whose solved form is reported, with the derived solution
    /// functions and their internal check results.
    pub selected: Option<Template>,
    pub disjunct_checks: Vec<(String, bool)>,
    /// Internal check of each handwritten expected solution.
    pub candidate_checks: Vec<(String, CheckOutcome)>,
    /// True only when an external solver certified coverage: a proven
    /// template in eager mode, or an unsat uniqueness query in lazy mode.
    pub verified: bool,
    pub total_micros: u128,
}

impl PipelineReport {
    fn new(p: &Problem, mode: Mode) -> PipelineReport {
        PipelineReport {
            problem: p.name.clone(),
            mode,
            unsupported: None,
            runs: Vec::new(),
            selected: None,
            disjunct_checks: Vec::new(),
            candidate_checks: Vec::new(),
            verified: false,
            total_micros: 0,
        }
    }

    pub fn solved_form(&self) -> Option<&SolvedForm> {
        let selected = self.selected?;
        self.runs
            .iter()
            .find(|r| r.template == selected)
            .and_then(|r| r.outcome.as_ref())
            .and_then(|o| o.as_ref().ok())
    }

    fn run_for(&self, t: Template) -> Option<&TemplateRun> {
        self.runs.iter().find(|r| r.template == t)
    }

    /// The solution functions read off the selected solved form.
    pub fn solutions(&self) -> Vec<String> {
        let Some(t) = self.selected else {
            return Vec::new();
        };
        let Some(sf) = self.solved_form() else {
            return Vec::new();
        };
        sf.disjuncts()
            .iter()
            .map(|d| {
                let body = t.solution_body("x", d);
                if d.free().is_empty() {
                    format!("f(x) = {}", body)
                } else {
                    let params: Vec<&str> = d.free().iter().map(String::as_str).collect();
                    format!("f(x) = {} ({} ∈ ℝ)", body, params.join(", "))
                }
            })
            .collect()
    }
}

/// Options shared by both pipeline modes.
#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub mode: Mode,
    /// Restrict the run to one template; `None` walks all of them
    /// smallest-first.
    pub template: Option<Template>,
    /// In lazy mode, keep trying larger templates after the first
    /// nonempty solved form; larger templates can reveal strictly larger
    /// solution classes.
    pub all_templates: bool,
    pub solvers: Vec<SolverConfig>,
    pub inline_check: bool,
    pub legacy_uniteq: bool,
    pub emit_dir: Option<PathBuf>,
}

impl Default for PipelineOptions {
    fn default() -> PipelineOptions {
        PipelineOptions {
            mode: Mode::Lazy,
            template: None,
            all_templates: false,
            solvers: Vec::new(),
            inline_check: false,
            legacy_uniteq: false,
            emit_dir: None,
        }
    }
}

impl PipelineOptions {
    fn templates(&self) -> Vec<Template> {
        match self.template {
            Some(t) => vec![t],
            None => Template::ALL.to_vec(),
        }
    }
}

/// Checks a proposed solution by polynomial identity: after inlining the
/// candidate, every equation must normalize to the zero polynomial. Free
/// parameters stay symbolic, so a true answer holds for all parameter
/// values.
pub fn check_solution(p: &Problem, s: &SolutionCandidate) -> Result<bool, UnsupportedReason> {
    match classify_fragment(p) {
        Fragment::Equational => {}
        Fragment::Unsupported(reason) => return Err(reason),
    }
    for eq in &p.equations {
        let inlined = s.inline_into(&eq.difference());
        let poly = to_polynomial(&inlined)
            .expect("inlining removes every application of the unknown function");
        if !poly.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn run(p: &Problem, opts: &PipelineOptions) -> PipelineReport {
    match opts.mode {
        Mode::Lazy => run_lazy(p, opts),
        Mode::Eager => run_eager(p, opts),
    }
}

fn check_candidates(p: &Problem) -> Vec<(String, CheckOutcome)> {
    p.solutions
        .iter()
        .map(|s| {
            let outcome = match check_solution(p, s) {
                Ok(true) => CheckOutcome::Valid,
                Ok(false) => CheckOutcome::Invalid,
                Err(reason) => CheckOutcome::Unsupported(reason.to_string()),
            };
            (s.describe(), outcome)
        })
        .collect()
}

fn problem_variables(p: &Problem) -> BTreeSet<String> {
    p.equations
        .iter()
        .flat_map(|eq| eq.vars.iter().cloned())
        .collect()
}

/// Runs one template through inline, eliminate and the postprocessor.
fn attempt_template(
    p: &Problem,
    t: Template,
    vars: &BTreeSet<String>,
) -> (CoefficientConstraint, Result<SolvedForm, NoSolvedForm>) {
    let inlined = inline(p, t).expect("caller checked the fragment");
    let constraint = eliminate(&inlined, vars);
    let solved = solve_constraint(&constraint, t.coefficients());
    (constraint, solved)
}

fn check_disjuncts(p: &Problem, t: Template, sf: &SolvedForm) -> Vec<(String, bool)> {
    sf.disjuncts()
        .iter()
        .map(|d| {
            let body = t.solution_body("x", d);
            let candidate = SolutionCandidate {
                var: "x".to_string(),
                body,
                params: d
                    .free()
                    .iter()
                    .map(|name| ParamDecl {
                        name: name.clone(),
                        constraint: None,
                    })
                    .collect(),
            };
            let ok = check_solution(p, &candidate).unwrap_or(false);
            (candidate.describe(), ok)
        })
        .collect()
}

/// Dispatches a query to every configured solver until one produces a
/// definite answer.
fn dispatch(query: &Smt2Query, solvers: &[SolverConfig]) -> Option<SolverStatus> {
    let mut last = None;
    for cfg in solvers {
        let outcome = external_solve(&query.text(), ".smt2", cfg);
        match outcome.status {
            SolverStatus::Sat | SolverStatus::Unsat => return Some(outcome.status),
            status => last = Some(status),
        }
    }
    last
}

/// Lazy pipeline: for each template smallest-first, inline, eliminate and
/// postprocess; a nonempty solved form has its disjuncts checked
/// internally and a uniqueness query emitted (dispatched when solvers are
/// configured; unsat marks the report verified). By default the walk stops
/// at the smallest template with a nonempty solved form.
pub fn run_lazy(p: &Problem, opts: &PipelineOptions) -> PipelineReport {
    let started = Instant::now();
    let mut report = PipelineReport::new(p, Mode::Lazy);
    report.candidate_checks = check_candidates(p);

    if let Fragment::Unsupported(reason) = classify_fragment(p) {
        report.unsupported = Some(reason);
        report.total_micros = started.elapsed().as_micros();
        return report;
    }

    let vars = problem_variables(p);
    for t in opts.templates() {
        let t_started = Instant::now();
        let (constraint, solved) = attempt_template(p, t, &vars);
        let mut run = TemplateRun {
            template: t,
            status: TemplateStatus::Unknown,
            constraint: Some(constraint),
            outcome: Some(solved.clone()),
            uniqueness: None,
            micros: 0,
        };
        let nonempty = matches!(&solved, Ok(sf) if !sf.is_bottom());
        if nonempty && report.selected.is_none() {
            let sf = solved.as_ref().unwrap();
            report.selected = Some(t);
            report.disjunct_checks = check_disjuncts(p, t, sf);
            if let Some(query) = emit_uniqueness(p, t, sf) {
                if !opts.solvers.is_empty() {
                    run.uniqueness = dispatch(&query, &opts.solvers);
                    if run.uniqueness == Some(SolverStatus::Unsat) {
                        report.verified = true;
                    }
                }
            }
        }
        run.micros = t_started.elapsed().as_micros();
        report.runs.push(run);
        if report.selected.is_some() && !opts.all_templates {
            break;
        }
    }
    report.total_micros = started.elapsed().as_micros();
    report
}

/// Eager pipeline: for each template smallest-first, dispatch both
/// verification-obligation variants; an unsat answer proves the template,
/// after which the lazy machinery extracts and checks the solved form.
/// The walk stops at the first proven template. With no solvers configured
/// the run degrades to the lazy pipeline.
pub fn run_eager(p: &Problem, opts: &PipelineOptions) -> PipelineReport {
    if opts.solvers.is_empty() {
        return run_lazy(p, opts);
    }
    let started = Instant::now();
    let mut report = PipelineReport::new(p, Mode::Eager);
    report.candidate_checks = check_candidates(p);

    let fragment = classify_fragment(p);
    let vars = problem_variables(p);
    for t in opts.templates() {
        let t_started = Instant::now();
        let mut status = TemplateStatus::Unknown;
        for variant in [Variant::Second, Variant::First] {
            let query = emit_template_verification(p, t, variant);
            match dispatch(&query, &opts.solvers) {
                Some(SolverStatus::Unsat) => {
                    status = TemplateStatus::Proven;
                    break;
                }
                Some(SolverStatus::Sat) => {
                    status = TemplateStatus::Disproven;
                    break;
                }
                _ => {}
            }
        }
        let mut run = TemplateRun {
            template: t,
            status,
            constraint: None,
            outcome: None,
            uniqueness: None,
            micros: 0,
        };
        if status == TemplateStatus::Proven && fragment == Fragment::Equational {
            let (constraint, solved) = attempt_template(p, t, &vars);
            if let Ok(sf) = &solved {
                report.selected = Some(t);
                report.disjunct_checks = check_disjuncts(p, t, sf);
                report.verified = true;
            }
            run.constraint = Some(constraint);
            run.outcome = Some(solved);
        }
        run.micros = t_started.elapsed().as_micros();
        let proven = run.status == TemplateStatus::Proven;
        report.runs.push(run);
        if proven {
            break;
        }
    }
    if let Fragment::Unsupported(reason) = fragment {
        report.unsupported = Some(reason);
    }
    report.total_micros = started.elapsed().as_micros();
    report
}

/// Writes every prover input for a problem into a directory: find, prove
/// and check queries, template-verification obligations for all templates
/// and variants, the uniqueness query of the selected solved form, and
/// unit-equality tasks for eligible templates. Returns the written paths.
pub fn emit_problem_files(
    p: &Problem,
    report: &PipelineReport,
    opts: &PipelineOptions,
    dir: &Path,
) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let write_query = |q: &Smt2Query| -> std::io::Result<PathBuf> {
        let path = dir.join(q.filename());
        std::fs::write(&path, q.text())?;
        Ok(path)
    };

    written.push(write_query(&emit_find(p))?);
    if !p.solutions.is_empty() {
        written.push(write_query(&emit_prove(p))?);
    }
    for i in 0..p.solutions.len() {
        written.push(write_query(&emit_check(p, i, opts.inline_check))?);
    }
    for t in Template::ALL {
        for v in [Variant::First, Variant::Second] {
            written.push(write_query(&emit_template_verification(p, t, v))?);
        }
    }
    if let (Some(t), Some(sf)) = (report.selected, report.solved_form()) {
        if let Some(q) = emit_uniqueness(p, t, sf) {
            written.push(write_query(&q)?);
        }
    }
    for t in Template::ALL {
        if let Ok(task) = emit_uniteq(p, t) {
            let path = dir.join(format!("{}.{}.p", p.name, t.tag()));
            std::fs::write(&path, task.to_tptp())?;
            written.push(path);
            if opts.legacy_uniteq {
                let path = dir.join(format!("{}.{}.w", p.name, t.tag()));
                std::fs::write(&path, task.to_sectioned())?;
                written.push(path);
            }
        }
    }
    Ok(written)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Csv,
}

/// Renders the template-status table and the prove/check table. Output is
/// deterministic: timings never appear.
pub fn render_report(reports: &[PipelineReport], format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => render_text(reports),
        ReportFormat::Csv => render_csv(reports),
    }
}

fn prove_symbol(r: &PipelineReport) -> &'static str {
    if r.verified {
        return "✓";
    }
    let selected_run = r.selected.and_then(|t| r.run_for(t));
    match selected_run.and_then(|run| run.uniqueness) {
        Some(SolverStatus::Sat) => "×",
        _ => "-",
    }
}

fn check_symbol(r: &PipelineReport) -> &'static str {
    if r.candidate_checks.is_empty() {
        return "✓";
    }
    if r.candidate_checks
        .iter()
        .any(|(_, o)| matches!(o, CheckOutcome::Invalid))
    {
        return "×";
    }
    if r.candidate_checks
        .iter()
        .all(|(_, o)| matches!(o, CheckOutcome::Valid))
    {
        return "✓";
    }
    "-"
}

fn render_text(reports: &[PipelineReport]) -> String {
    let mut out = String::new();
    out.push_str("Template status (✓ proven, × disproven, - no answer)\n");
    let headers: Vec<&str> = Template::TABLE_ORDER.iter().map(|t| t.shape()).collect();
    out.push_str(&format!(
        "{:<10} {:<3} {:<5} {:<9} {:<6} {:<15} solutions\n",
        "problem", headers[0], headers[1], headers[2], headers[3], headers[4]
    ));
    for r in reports {
        let marks: Vec<&str> = Template::TABLE_ORDER
            .iter()
            .map(|t| r.run_for(*t).map_or("-", |run| run.status.symbol()))
            .collect();
        let solutions = if let Some(reason) = &r.unsupported {
            format!("unsupported: {}", reason)
        } else {
            let sols = r.solutions();
            if sols.is_empty() {
                let all_failed = r
                    .runs
                    .iter()
                    .all(|run| matches!(&run.outcome, Some(Err(_)) | None));
                if !r.runs.is_empty() && all_failed {
                    "no solved form".to_string()
                } else {
                    "⊥ (no solutions in attempted templates)".to_string()
                }
            } else {
                let tag = r.selected.map(|t| t.tag()).unwrap_or("");
                format!("{} [{}{}]", sols.join(" ; "), tag, if r.verified { ", verified" } else { "" })
            }
        };
        out.push_str(&format!(
            "{:<10} {:<3} {:<5} {:<9} {:<6} {:<15} {}\n",
            r.problem, marks[0], marks[1], marks[2], marks[3], marks[4], solutions
        ));
    }
    out.push('\n');
    out.push_str("Prove/check\n");
    out.push_str(&format!("{:<10} {:<6} check\n", "problem", "prove"));
    for r in reports {
        out.push_str(&format!(
            "{:<10} {:<6} {}\n",
            r.problem,
            prove_symbol(r),
            check_symbol(r)
        ));
    }
    out.push('\n');
    for r in reports {
        render_text_details(r, &mut out);
    }
    out
}

fn render_text_details(r: &PipelineReport, out: &mut String) {
    out.push_str(&format!("== {} ({} mode) ==\n", r.problem, r.mode.tag()));
    if let Some(reason) = &r.unsupported {
        out.push_str(&format!("  unsupported for the internal pipeline: {}\n", reason));
    }
    for run in &r.runs {
        let mut line = format!("  template {}: ", run.template.shape());
        if let Some(c) = &run.constraint {
            line.push_str(&format!(
                "constraint {} (qe orientation {}); ",
                c,
                c.display_constant_first()
            ));
        }
        match &run.outcome {
            Some(Ok(sf)) => line.push_str(&format!("solved form {}", sf)),
            Some(Err(e)) => line.push_str(&format!("no solved form ({})", e)),
            None => line.push_str("not attempted"),
        }
        if let Some(status) = run.uniqueness {
            line.push_str(&format!("; uniqueness query: {}", status.symbol()));
        }
        line.push('\n');
        out.push_str(&line);
    }
    for (desc, ok) in &r.disjunct_checks {
        out.push_str(&format!(
            "  derived solution {}: {}\n",
            desc,
            if *ok { "✓" } else { "×" }
        ));
    }
    for (desc, outcome) in &r.candidate_checks {
        out.push_str(&format!("  expected solution {}: {}\n", desc, outcome.symbol()));
    }
    out.push('\n');
}

fn render_csv(reports: &[PipelineReport]) -> String {
    let mut out = String::new();
    out.push_str("problem,c,ax,ax+b,ax^2,ax^2+bx+c,solved_template,solutions\n");
    for r in reports {
        let marks: Vec<&str> = Template::TABLE_ORDER
            .iter()
            .map(|t| r.run_for(*t).map_or("-", |run| run.status.symbol()))
            .collect();
        let solutions = r.solutions().join("; ");
        out.push_str(&format!(
            "{},{},{},{},{},{},{},\"{}\"\n",
            r.problem,
            marks[0],
            marks[1],
            marks[2],
            marks[3],
            marks[4],
            r.selected.map(|t| t.tag()).unwrap_or(""),
            solutions
        ));
    }
    out.push('\n');
    out.push_str("problem,prove,check\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{}\n",
            r.problem,
            prove_symbol(r),
            check_symbol(r)
        ));
    }
    out
}

/// Entry point of the `feq` binary; returns the process exit code.
pub fn cli_main() -> i32 {
    cli::main()
}

/// Default per-query timeout for external solvers.
pub fn default_timeout() -> Duration {
    Duration::from_secs(60)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expression;
    use crate::problem::{corpus_problem, load_corpus};
    use std::os::unix::fs::PermissionsExt;

    fn lazy_with(template: Template) -> PipelineOptions {
        PipelineOptions {
            template: Some(template),
            ..PipelineOptions::default()
        }
    }

    fn solved_disjuncts(report: &PipelineReport) -> Vec<String> {
        report
            .solved_form()
            .map(|sf| sf.disjuncts().iter().map(|d| d.to_string()).collect())
            .unwrap_or_default()
    }

    #[test]
    fn check_solution_examples() {
        let u91 = corpus_problem("U91").unwrap();
        // f(x) = x + 1 solves U91
        let cand = SolutionCandidate {
            var: "x".to_string(),
            body: Expression::Sum(vec![Expression::var("x"), Expression::int(1)]),
            params: vec![],
        };
        assert_eq!(check_solution(&u91, &cand), Ok(true));

        // f(x) = x + b solves U3 for every b
        let u3 = corpus_problem("U3").unwrap();
        assert_eq!(check_solution(&u3, &u3.solutions[0]), Ok(true));

        // f(x) = x does not solve Eq1
        let eq1 = corpus_problem("Eq1").unwrap();
        let ident = SolutionCandidate {
            var: "x".to_string(),
            body: Expression::var("x"),
            params: vec![],
        };
        assert_eq!(check_solution(&eq1, &ident), Ok(false));
    }

    #[test]
    fn lazy_c1_finds_the_square_function() {
        let p = corpus_problem("C1").unwrap();
        let report = run_lazy(&p, &lazy_with(Template::MonomialQuadratic));
        assert_eq!(report.selected, Some(Template::MonomialQuadratic));
        assert_eq!(solved_disjuncts(&report), vec!["{a = 1}"]);
        assert_eq!(report.solutions(), vec!["f(x) = x^2"]);
        assert!(report.disjunct_checks.iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn lazy_u24_finds_constant_zero() {
        let p = corpus_problem("U24").unwrap();
        let report = run_lazy(&p, &lazy_with(Template::Constant));
        assert_eq!(solved_disjuncts(&report), vec!["{c = 0}"]);
        assert_eq!(report.solutions(), vec!["f(x) = 0"]);
    }

    #[test]
    fn lazy_c12_linear_finds_identity() {
        let p = corpus_problem("C12").unwrap();
        let report = run_lazy(&p, &lazy_with(Template::Linear));
        assert_eq!(solved_disjuncts(&report), vec!["{a = 1, b = 0}"]);
        assert_eq!(report.solutions(), vec!["f(x) = x"]);
    }

    #[test]
    fn lazy_default_walk_stops_at_smallest_nonempty_template() {
        let p = corpus_problem("C1").unwrap();
        let report = run_lazy(&p, &PipelineOptions::default());
        // Constant, monomial linear and monomial quadratic come first; the
        // first two have empty solved forms, so the walk stops at a*x^2.
        assert_eq!(report.selected, Some(Template::MonomialQuadratic));
        assert_eq!(report.runs.len(), 3);
    }

    #[test]
    fn lazy_all_templates_keeps_walking() {
        let p = corpus_problem("U3").unwrap();
        let opts = PipelineOptions {
            all_templates: true,
            ..PipelineOptions::default()
        };
        let report = run_lazy(&p, &opts);
        assert_eq!(report.runs.len(), 5);
        // Smallest nonempty is the monomial-linear {a = 1}; the linear
        // template later reveals the strictly larger class {a = 1, b free}.
        assert_eq!(report.selected, Some(Template::MonomialLinear));
        let linear = report.run_for(Template::Linear).unwrap();
        let sf = linear.outcome.as_ref().unwrap().as_ref().unwrap();
        assert_eq!(sf.to_string(), "{a = 1, b ∈ ℝ}");
    }

    #[test]
    fn unsupported_problem_reports_without_running() {
        let p = corpus_problem("U2").unwrap();
        let report = run_lazy(&p, &PipelineOptions::default());
        assert!(report.unsupported.is_some());
        assert!(report.runs.is_empty());
        assert_eq!(report.candidate_checks.len(), 1);
        assert!(matches!(
            report.candidate_checks[0].1,
            CheckOutcome::Unsupported(_)
        ));
    }

    #[test]
    fn eager_without_solvers_degrades_to_lazy() {
        let p = corpus_problem("Eq1").unwrap();
        let opts = PipelineOptions {
            mode: Mode::Eager,
            template: Some(Template::Linear),
            ..PipelineOptions::default()
        };
        let report = run(&p, &opts);
        assert_eq!(report.mode, Mode::Lazy);
        assert_eq!(solved_disjuncts(&report), vec!["{a = 0, b = 0}"]);
        assert_eq!(report.solutions(), vec!["f(x) = 0"]);
    }

    fn stub_solver(dir: &Path, name: &str, script: &str) -> SolverConfig {
        let path = dir.join(name);
        std::fs::write(&path, script).unwrap();
        let mut perms = std::fs::metadata(&path).unwrap().permissions();
        perms.set_mode(0o755);
        std::fs::set_permissions(&path, perms).unwrap();
        SolverConfig {
            name: name.to_string(),
            command: vec![path.to_string_lossy().into_owned(), "{file}".to_string()],
            timeout: Duration::from_secs(5),
            answers: AnswerTokens::default(),
        }
    }

    #[test]
    fn eager_with_an_unsat_solver_matches_lazy_solved_forms() {
        let dir = tempfile::tempdir().unwrap();
        let always_unsat = stub_solver(dir.path(), "unsat.sh", "#!/bin/sh\necho unsat\n");
        let p = corpus_problem("U91").unwrap();
        let opts = PipelineOptions {
            mode: Mode::Eager,
            template: Some(Template::Linear),
            solvers: vec![always_unsat],
            ..PipelineOptions::default()
        };
        let eager = run(&p, &opts);
        assert_eq!(eager.mode, Mode::Eager);
        assert!(eager.verified);
        assert_eq!(
            eager.run_for(Template::Linear).unwrap().status,
            TemplateStatus::Proven
        );

        let lazy = run_lazy(&p, &lazy_with(Template::Linear));
        assert_eq!(
            solved_disjuncts(&eager),
            solved_disjuncts(&lazy),
            "eager and lazy agree on the proven template"
        );
        assert_eq!(
            solved_disjuncts(&eager),
            vec!["{a = 1, b = 0}", "{a = 1, b = 1}"]
        );
    }

    #[test]
    fn eager_on_unsupported_problems_still_dispatches_obligations() {
        let dir = tempfile::tempdir().unwrap();
        let always_sat = stub_solver(dir.path(), "sat.sh", "#!/bin/sh\necho sat\n");
        let p = corpus_problem("U2").unwrap();
        let opts = PipelineOptions {
            mode: Mode::Eager,
            solvers: vec![always_sat],
            ..PipelineOptions::default()
        };
        let report = run_eager(&p, &opts);
        assert!(report.unsupported.is_some());
        // The obligations themselves are emitted and dispatched; a sat
        // answer disproves each template.
        assert_eq!(report.runs.len(), 5);
        assert!(report
            .runs
            .iter()
            .all(|r| r.status == TemplateStatus::Disproven));
        assert!(report.selected.is_none());
    }

    #[test]
    fn lazy_uniqueness_dispatch_marks_verified() {
        let dir = tempfile::tempdir().unwrap();
        let always_unsat = stub_solver(dir.path(), "unsat.sh", "#!/bin/sh\necho unsat\n");
        let p = corpus_problem("C1").unwrap();
        let opts = PipelineOptions {
            template: Some(Template::MonomialQuadratic),
            solvers: vec![always_unsat],
            ..PipelineOptions::default()
        };
        let report = run_lazy(&p, &opts);
        assert!(report.verified);
        assert_eq!(
            report.run_for(Template::MonomialQuadratic).unwrap().uniqueness,
            Some(SolverStatus::Unsat)
        );
    }

    #[test]
    fn every_solved_disjunct_passes_check_solution() {
        for p in load_corpus().unwrap() {
            if classify_fragment(&p) != Fragment::Equational {
                continue;
            }
            let opts = PipelineOptions {
                all_templates: true,
                ..PipelineOptions::default()
            };
            let report = run_lazy(&p, &opts);
            for run in &report.runs {
                if let Some(Ok(sf)) = &run.outcome {
                    for (desc, ok) in check_disjuncts(&p, run.template, sf) {
                        assert!(ok, "{}: {} fails its own check", p.name, desc);
                    }
                }
            }
        }
    }

    #[test]
    fn report_rendering_is_deterministic_and_headers_only_when_empty() {
        let empty = render_report(&[], ReportFormat::Text);
        assert!(empty.starts_with("Template status"));
        assert!(empty.contains("problem"));

        let reports: Vec<PipelineReport> = load_corpus()
            .unwrap()
            .iter()
            .map(|p| run_lazy(p, &PipelineOptions::default()))
            .collect();
        let a = render_report(&reports, ReportFormat::Text);
        let reports2: Vec<PipelineReport> = load_corpus()
            .unwrap()
            .iter()
            .map(|p| run_lazy(p, &PipelineOptions::default()))
            .collect();
        let b = render_report(&reports2, ReportFormat::Text);
        assert_eq!(a, b);
        assert!(a.contains("Prove/check"));

        let csv = render_report(&reports, ReportFormat::Csv);
        assert!(csv.starts_with("problem,c,ax,ax+b,ax^2,ax^2+bx+c"));
        assert!(csv.contains("U2,-,-,-,-,-,,\"\""));
    }

    #[test]
    fn emit_problem_files_writes_the_expected_names() {
        let dir = tempfile::tempdir().unwrap();
        let p = corpus_problem("U25").unwrap();
        let report = run_lazy(&p, &lazy_with(Template::MonomialLinear));
        let opts = PipelineOptions {
            legacy_uniteq: true,
            ..PipelineOptions::default()
        };
        let written = emit_problem_files(&p, &report, &opts, dir.path()).unwrap();
        let names: BTreeSet<String> = written
            .iter()
            .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
            .collect();
        for expected in [
            "U25.find.smt2",
            "U25.prove.smt2",
            "U25.check1.smt2",
            "U25.check2.smt2",
            "U25.linear.first.tv.smt2",
            "U25.linear.second.tv.smt2",
            "U25.unique.smt2",
            "U25.mlinear.p",
            "U25.mlinear.w",
        ] {
            assert!(names.contains(expected), "missing {expected}: {names:?}");
        }
        // Emitted SMT2 files parse with the bundled reader.
        for path in &written {
            if path.extension().is_some_and(|e| e == "smt2") {
                let text = std::fs::read_to_string(path).unwrap();
                crate::emit::parse_sexps(&text).expect("emitted file parses");
            }
        }
    }

    #[test]
    fn u2_emits_queries_even_though_unsupported() {
        let dir = tempfile::tempdir().unwrap();
        let p = corpus_problem("U2").unwrap();
        let report = run_lazy(&p, &PipelineOptions::default());
        assert!(report.unsupported.is_some());
        let written =
            emit_problem_files(&p, &report, &PipelineOptions::default(), dir.path()).unwrap();
        let names: Vec<String> = written
            .iter()
            .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
            .collect();
        assert!(names.contains(&"U2.find.smt2".to_string()));
        assert!(names.contains(&"U2.prove.smt2".to_string()));
        // No unit-equality task: the side condition is not a unit equation.
        assert!(!names.iter().any(|n| n.ends_with(".p")));
    }

    #[test]
    fn solved_forms_respect_candidate_values() {
        // U25 under the monomial linear template: {a = -1} ∨ {a = 1}.
        let p = corpus_problem("U25").unwrap();
        let report = run_lazy(&p, &lazy_with(Template::MonomialLinear));
        assert_eq!(
            solved_disjuncts(&report),
            vec!["{a = -1}", "{a = 1}"]
        );
        assert_eq!(
            report.solutions(),
            vec!["f(x) = -x", "f(x) = x"]
        );

        // U87: {a = 0} ∨ {a = 1}.
        let p = corpus_problem("U87").unwrap();
        let report = run_lazy(&p, &lazy_with(Template::MonomialLinear));
        assert_eq!(solved_disjuncts(&report), vec!["{a = 0}", "{a = 1}"]);
    }

    #[test]
    fn rational_valued_solved_forms_print_exactly() {
        // f(x+y) = f(x) + f(y) + 1 has the linear solutions a*x - 1.
        let text = "problem shifted\nassert forall x y . f(x+y) = f(x) + f(y) + 1\n";
        let p = crate::expr::parse_problem(text).unwrap();
        let report = run_lazy(&p, &lazy_with(Template::Linear));
        let sf = report.solved_form().unwrap();
        assert_eq!(sf.to_string(), "{a ∈ ℝ, b = -1}");
        assert_eq!(report.solutions(), vec!["f(x) = a*x - 1 (a ∈ ℝ)"]);
    }
}
