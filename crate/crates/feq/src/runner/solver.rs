//! External solver dispatch: temp-file handoff, process launch with a
//! timeout, and answer-token parsing.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

/// Tokens a solver prints for each verdict; completion-based provers can
/// override these (e.g. mapping `Proved` to unsat).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnswerTokens {
    pub sat: String,
    pub unsat: String,
    pub unknown: String,
}

impl Default for AnswerTokens {
    fn default() -> AnswerTokens {
        AnswerTokens {
            sat: "sat".to_string(),
            unsat: "unsat".to_string(),
            unknown: "unknown".to_string(),
        }
    }
}

/// A named external command with an argument template. `{file}` in the
/// arguments is replaced by the query file path; without a placeholder the
/// path is appended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub name: String,
    pub command: Vec<String>,
    pub timeout: Duration,
    pub answers: AnswerTokens,
}

impl SolverConfig {
    /// Parses a `NAME=CMD ARGS...` specification.
    pub fn parse(spec: &str, timeout: Duration) -> Result<SolverConfig, String> {
        let (name, cmd) = spec
            .split_once('=')
            .ok_or_else(|| format!("solver spec `{spec}` is not NAME=CMD"))?;
        let command: Vec<String> = cmd.split_whitespace().map(str::to_string).collect();
        if name.trim().is_empty() || command.is_empty() {
            return Err(format!("solver spec `{spec}` is missing a name or command"));
        }
        Ok(SolverConfig {
            name: name.trim().to_string(),
            command,
            timeout,
            answers: AnswerTokens::default(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverStatus {
    Sat,
    Unsat,
    Unknown,
    Timeout,
}

impl SolverStatus {
    pub fn symbol(self) -> &'static str {
        match self {
            SolverStatus::Sat => "sat",
            SolverStatus::Unsat => "unsat",
            SolverStatus::Unknown => "unknown",
            SolverStatus::Timeout => "timeout",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverOutcome {
    pub status: SolverStatus,
    pub diagnostic: Option<String>,
    pub elapsed: Duration,
}

impl SolverOutcome {
    fn unknown(diagnostic: String, elapsed: Duration) -> SolverOutcome {
        SolverOutcome {
            status: SolverStatus::Unknown,
            diagnostic: Some(diagnostic),
            elapsed,
        }
    }
}

/// Looks a bare command name up in `FEQ_SOLVER_PATH` (prepended) and then
/// `PATH`. Commands containing a path separator are used as given.
pub fn resolve_binary(name: &str) -> Option<PathBuf> {
    if name.contains('/') {
        let p = PathBuf::from(name);
        return p.is_file().then_some(p);
    }
    let mut dirs = Vec::new();
    if let Ok(extra) = std::env::var("FEQ_SOLVER_PATH") {
        dirs.extend(std::env::split_paths(&extra));
    }
    if let Ok(path) = std::env::var("PATH") {
        dirs.extend(std::env::split_paths(&path));
    }
    dirs.into_iter()
        .map(|d| d.join(name))
        .find(|candidate| candidate.is_file())
}

/// Runs one query through an external solver: the text goes to a temp file
/// with the given suffix, the process is launched with the configured
/// timeout, and the first line matching an answer token decides the
/// status. A missing binary or unparsable output is `Unknown` with a
/// diagnostic.
pub fn external_solve(query_text: &str, suffix: &str, cfg: &SolverConfig) -> SolverOutcome {
    let started = Instant::now();

    let mut file = match tempfile::Builder::new().suffix(suffix).tempfile() {
        Ok(f) => f,
        Err(e) => return SolverOutcome::unknown(format!("temp file: {e}"), started.elapsed()),
    };
    if let Err(e) = file.write_all(query_text.as_bytes()) {
        return SolverOutcome::unknown(format!("temp file: {e}"), started.elapsed());
    }

    let Some(binary) = resolve_binary(&cfg.command[0]) else {
        return SolverOutcome::unknown(
            format!("solver binary `{}` not found", cfg.command[0]),
            started.elapsed(),
        );
    };

    let mut args: Vec<String> = Vec::new();
    let mut file_placed = false;
    let file_path = file.path().to_string_lossy().into_owned();
    for arg in &cfg.command[1..] {
        if arg.contains("{file}") {
            args.push(arg.replace("{file}", &file_path));
            file_placed = true;
        } else {
            args.push(arg.clone());
        }
    }
    if !file_placed {
        args.push(file_path);
    }

    let mut child = match Command::new(&binary)
        .args(&args)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
    {
        Ok(c) => c,
        Err(e) => {
            return SolverOutcome::unknown(
                format!("spawning {}: {e}", binary.display()),
                started.elapsed(),
            );
        }
    };

    // Drain stdout on a separate thread so a chatty solver cannot block
    // on a full pipe while we wait for it.
    let stdout = child.stdout.take().expect("stdout is piped");
    let reader = std::thread::spawn(move || {
        use std::io::Read;
        let mut out = String::new();
        let mut stdout = stdout;
        let _ = stdout.read_to_string(&mut out);
        out
    });

    let deadline = started + cfg.timeout;
    let finished = loop {
        match child.try_wait() {
            Ok(Some(_)) => break true,
            Ok(None) => {
                if Instant::now() >= deadline {
                    break false;
                }
                std::thread::sleep(Duration::from_millis(5));
            }
            Err(e) => {
                let _ = child.kill();
                let _ = child.wait();
                return SolverOutcome::unknown(format!("waiting: {e}"), started.elapsed());
            }
        }
    };

    if !finished {
        let _ = child.kill();
        let _ = child.wait();
        // Detach the reader: a grandchild of the solver may keep the pipe
        // open past the kill, and the output is not needed anyway.
        drop(reader);
        return SolverOutcome {
            status: SolverStatus::Timeout,
            diagnostic: None,
            elapsed: started.elapsed(),
        };
    }

    let output = reader.join().unwrap_or_default();
    for line in output.lines() {
        let line = line.trim();
        let status = if line == cfg.answers.sat {
            Some(SolverStatus::Sat)
        } else if line == cfg.answers.unsat {
            Some(SolverStatus::Unsat)
        } else if line == cfg.answers.unknown {
            Some(SolverStatus::Unknown)
        } else {
            None
        };
        if let Some(status) = status {
            return SolverOutcome {
                status,
                diagnostic: None,
                elapsed: started.elapsed(),
            };
        }
    }
    let mut diagnostic = output.trim().to_string();
    diagnostic.truncate(200);
    SolverOutcome::unknown(
        format!("no answer token in output: `{diagnostic}`"),
        started.elapsed(),
    )
}

/// Loads solver configurations from a key-value text file. Plain
/// `NAME=CMD` lines define solvers; `NAME.sat=TOKEN`, `NAME.unsat=TOKEN`
/// and `NAME.unknown=TOKEN` override answer tokens. `#` starts a comment.
pub fn load_solver_config(path: &Path, timeout: Duration) -> Result<Vec<SolverConfig>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut solvers: Vec<SolverConfig> = Vec::new();
    let mut overrides: Vec<(String, String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected KEY=VALUE", lineno + 1))?;
        let key = key.trim();
        match key.split_once('.') {
            Some((name, field)) => {
                overrides.push((name.to_string(), field.to_string(), value.trim().to_string()));
            }
            None => {
                solvers.push(SolverConfig::parse(&format!("{key}={}", value.trim()), timeout)?);
            }
        }
    }
    for (name, field, token) in overrides {
        let solver = solvers
            .iter_mut()
            .find(|s| s.name == name)
            .ok_or_else(|| format!("answer-token override for unknown solver `{name}`"))?;
        match field.as_str() {
            "sat" => solver.answers.sat = token,
            "unsat" => solver.answers.unsat = token,
            "unknown" => solver.answers.unknown = token,
            other => return Err(format!("unknown solver field `{other}`")),
        }
    }
    Ok(solvers)
}
