//! Batch driver for `cantor-core`.
//!
//! Every command returns a [`Report`]: a machine-readable body (written to
//! `--out` or stdout), a one-line human summary and an exit code.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use cantor_core::cert::{family_export, Certificate, CertificateFile, DecompositionPayload, Lc2Payload};
use cantor_core::lab::{
    decompose, falsify_restriction, lc2_certificate, project_union, verify_witness, ImagePiece, Rect, RectUnion,
    TailSet,
};
use cantor_core::suite::{run_all, SuiteConfig};
use cantor_core::{Construction, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub depth: usize,
    pub n_max: usize,
    pub i_max: usize,
    pub truncation: usize,
    pub budget: usize,
    pub seed: u64,
    pub samples: usize,
    pub instances: usize,
    pub probes: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub inject_fault: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let suite = SuiteConfig::default();
        RunConfig {
            depth: suite.depth,
            n_max: suite.n_max,
            i_max: suite.i_max,
            truncation: suite.truncation,
            budget: suite.budget,
            seed: suite.seed,
            samples: suite.samples,
            instances: suite.instances,
            probes: suite.probes,
            out: None,
            format: Format::Json,
            inject_fault: false,
        }
    }
}

impl RunConfig {
    pub fn suite(&self) -> SuiteConfig {
        SuiteConfig {
            depth: self.depth,
            n_max: self.n_max,
            i_max: self.i_max,
            truncation: self.truncation,
            budget: self.budget,
            seed: self.seed,
            instances: self.instances,
            probes: self.probes,
            samples: self.samples,
            inject_fault: self.inject_fault,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub body: String,
    pub summary: String,
    pub code: i32,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExhausted { .. } => EXIT_BUDGET,
            Error::Certification(_) | Error::NonMonotone { .. } => EXIT_FAILED,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult = Result<Report, CliError>;

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Writes the body to `--out` (printing the summary) or returns what to print.
pub fn emit(cfg: &RunConfig, report: &Report) -> Result<String, CliError> {
    match &cfg.out {
        Some(path) => {
            fs::write(path, &report.body).map_err(|e| CliError {
                code: EXIT_FAILED,
                message: format!("{}: {e}", path.display()),
            })?;
            Ok(format!("{}\n", report.summary))
        }
        None => Ok(report.body.clone()),
    }
}

pub fn cmd_construct(cfg: &RunConfig) -> CliResult {
    let con = Construction::new();
    let export = family_export(&con, cfg.n_max, cfg.i_max);
    let ok = export.checks.all();
    let summary = format!(
        "{} dense pairs, {} approximants; constraint checks {}",
        export.dense_pairs.len(),
        export.approximants.len(),
        if ok { "pass" } else { "FAIL" }
    );
    let body = match cfg.format {
        Format::Json => json(&export),
        Format::Text => {
            let mut s = String::new();
            for p in &export.dense_pairs {
                let _ = writeln!(s, "a_{} = {}  b_{} = {}  B_{} = {}", p.n, p.a, p.n, p.b, p.n, export.enumeration[p.n].word);
            }
            let _ = writeln!(s, "{summary}");
            s
        }
    };
    Ok(Report {
        body,
        summary,
        code: if ok { EXIT_OK } else { EXIT_FAILED },
    })
}

fn describe_tail(t: &TailSet) -> String {
    let mut parts: Vec<String> = Vec::new();
    if !t.extra.is_empty() {
        let list: Vec<String> = t.extra.iter().map(|i| i.to_string()).collect();
        parts.push(format!("i ∈ {{{}}}", list.join(",")));
    }
    if let Some(from) = t.tail_from {
        parts.push(format!("i ≥ {from}"));
    }
    let mut s = format!("a_({},i) for {}", t.n, parts.join(" and "));
    if t.limit_removed {
        let _ = write!(s, ", and a_{}", t.n);
    }
    s
}

fn describe_piece(p: &ImagePiece) -> String {
    if p.removals.is_empty() {
        return p.hull.to_string();
    }
    let tails: Vec<String> = p.removals.iter().map(describe_tail).collect();
    format!("{} minus {}", p.hull, tails.join("; "))
}

pub fn cmd_image(cfg: &RunConfig, literal: &str) -> CliResult {
    if literal.trim().is_empty() {
        return Err(CliError::usage("empty rectangle-union literal"));
    }
    let union: RectUnion = literal.parse()?;
    let con = Construction::new();
    let image = project_union(&con, &union);
    let (dec, lc2) = match decompose(&con, &image).and_then(|d| Ok((d, lc2_certificate(&con, &image)?))) {
        Ok(v) => v,
        Err(e) => {
            return Ok(Report {
                body: format!("certification failed: {e}\n"),
                summary: format!("certification failed: {e}"),
                code: EXIT_FAILED,
            })
        }
    };
    let trace: Vec<String> = dec.open.trace(&con, cfg.depth).iter().map(|w| w.to_string()).collect();
    let summary = format!("S ∪ D certified with |D| = {}", dec.discrete.len());
    let body = match cfg.format {
        Format::Json => {
            let decomposition = CertificateFile::new(Certificate::Decomposition(DecompositionPayload {
                rect_union: union.clone(),
                image: image.canonical.clone(),
                decomposition: dec,
            }));
            let lc2 = CertificateFile::new(Certificate::Lc2(Lc2Payload {
                rect_union: union,
                image: image.canonical,
                certificate: lc2,
            }));
            json(&serde_json::json!({
                "decomposition": decomposition,
                "lc2": lc2,
                "s_trace": { "depth": cfg.depth, "cylinders": trace },
            }))
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "U      = {union}");
            let _ = writeln!(s, "π(U∩X) = {}", describe_piece(&image.canonical));
            let _ = writeln!(s, "S      = {}", describe_piece(&dec.open));
            if dec.discrete.is_empty() {
                let _ = writeln!(s, "D      = ∅");
            }
            for d in &dec.discrete {
                let _ = writeln!(s, "D  ∋ a_{} = {}  isolated by [{}]", d.n, d.point, d.separator);
            }
            let f2: Vec<String> = lc2.f2.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(s, "LC2    : L1 = S, O2 = {}, F2 = {{{}}}", lc2.o2, f2.join(", "));
            let _ = writeln!(s, "S-trace at depth {}: {}", cfg.depth, trace.join(","));
            s
        }
    };
    Ok(Report {
        body,
        summary,
        code: EXIT_OK,
    })
}

/// Verifies `cert` and reports the first failing clause.
fn verification_report(cfg: &RunConfig, file: CertificateFile) -> CliResult {
    let Certificate::Witness(cert) = &file.body else {
        return Err(CliError::usage("not a witness certificate"));
    };
    let verdict = verify_witness(&Construction::new(), cert, cfg.samples);
    let (summary, code) = match verdict.failed {
        None => (
            format!(
                "witness verified: n′ = {}, n″ = {}, {} samples",
                cert.n_prime,
                cert.n_double_prime,
                cert.samples.len()
            ),
            EXIT_OK,
        ),
        Some(clause) => (format!("verification failed: {clause}"), EXIT_FAILED),
    };
    let body = match cfg.format {
        Format::Json => file.to_json() + "\n",
        Format::Text => format!("{summary}\n"),
    };
    Ok(Report { body, summary, code })
}

pub fn cmd_falsify(cfg: &RunConfig, complement: &str, rect: &str) -> CliResult {
    let complement: RectUnion = complement.parse()?;
    let rect: Rect = rect.parse()?;
    let con = Construction::new();
    let cert = falsify_restriction(&con, &complement, &rect, cfg.budget, cfg.samples)?;
    verification_report(cfg, CertificateFile::new(Certificate::Witness(cert)))
}

pub fn cmd_verify(cfg: &RunConfig, text: &str) -> CliResult {
    let file = CertificateFile::from_json(text)?;
    verification_report(cfg, file)
}

pub fn cmd_check(cfg: &RunConfig) -> CliResult {
    let report = run_all(&cfg.suite());
    let failed: Vec<&str> = report.failed().map(|o| o.name.as_str()).collect();
    let summary = if failed.is_empty() {
        format!("all {} suites pass (seed {})", report.suites.len(), report.seed)
    } else {
        format!("failed: {} (seed {})", failed.join(", "), report.seed)
    };
    let body = match cfg.format {
        Format::Json => json(&report),
        Format::Text => {
            let mut s = String::new();
            for o in &report.suites {
                let _ = writeln!(
                    s,
                    "{} {:<36} {:>7}  {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.name,
                    o.cases,
                    o.detail
                );
            }
            let _ = writeln!(s, "{summary}");
            s
        }
    };
    Ok(Report {
        body,
        summary,
        code: if report.passed { EXIT_OK } else { EXIT_FAILED },
    })
}
