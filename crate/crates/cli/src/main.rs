use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use linemetric::certificates::{base_certificate, BaseName, EdgeCertificate, SynthesisOptions, Synthesizer};
use linemetric::edge_theory::{
    classify, edge_count_formula, enumerate_edges_at, non_edge_witness, verify_certificate, Condition,
    HalfLinePair, Margins, VerificationReport, VerifyOptions,
};
use linemetric::exhaust::{max_n_from_env, DEFAULT_MAX_N};
use linemetric::line_metrics::{first_short_entry, qn_facet_value, recover_embedding, separated_membership, spreading_check};
use linemetric::oracle::{oracle_classify_bounded, DEFAULT_ORACLE_MAX_N};
use linemetric::rat::{self, Rat};
use linemetric::{Error, Perm, SymZMat, Word};
use serde::Serialize;
use serde_json::{json, Value};

const EXIT_FAIL: u8 = 2;
const EXIT_NON_EDGE: u8 = 3;
const EXIT_USAGE: u8 = 64;

/// Largest n for `edges`, which never enumerates S(n) beyond one vertex.
const EDGES_MAX_N: usize = 24;

#[derive(Parser)]
#[command(name = "linemetric", version, about = "Exact geometry of separated line metrics")]
struct Cli {
    /// Print a JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timing in JSON reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the unbounded edges at a vertex, up to complement.
    Edges {
        n: usize,
        /// Vertex permutation, e.g. 2,1,3 (default: identity).
        #[arg(long)]
        at: Option<Perm>,
        #[arg(long)]
        count_only: bool,
    },
    /// Synthesize and verify a certificate, or verify one from a file.
    Certify {
        n: usize,
        #[arg(long)]
        pi: Option<Perm>,
        #[arg(long)]
        u: Word,
        /// Write the synthesized certificate as JSON.
        #[arg(long, conflicts_with = "verify_only")]
        emit: Option<PathBuf>,
        /// Verify a certificate or matrix JSON file instead of synthesizing.
        #[arg(long)]
        verify_only: Option<PathBuf>,
    },
    /// Print a tabulated base certificate as matrix JSON.
    Base {
        /// One of C_1001, C_11011, C_10110, C_10010, C_10101, C_101010.
        name: BaseName,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Membership in E_n and E_n^b, spreading and facet checks for a matrix.
    CheckMetric {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        spreading: bool,
        #[arg(long)]
        facet: bool,
        /// Separation bound; the matrix is divided by it before the checks.
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Sweep all canonical pairs against the oracle and/or the synthesizer.
    Crosscheck {
        n: usize,
        #[arg(long)]
        oracle: bool,
        /// Certify every edge pair and witness every non-edge pair.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    inputs: Value,
    results: Value,
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
}

struct Outcome {
    text: String,
    inputs: Value,
    results: Value,
    code: u8,
}

fn usage(msg: impl Into<String>) -> (u8, String) {
    (EXIT_USAGE, msg.into())
}

fn lib_err(e: Error) -> (u8, String) {
    let code = match e {
        Error::Solver(_) | Error::SearchExhausted { .. } => 1,
        _ => EXIT_USAGE,
    };
    (code, e.to_string())
}

fn exhaustion_bound() -> usize {
    max_n_from_env().unwrap_or(DEFAULT_MAX_N)
}

fn oracle_bound() -> usize {
    max_n_from_env().unwrap_or(DEFAULT_ORACLE_MAX_N)
}

fn check_n(n: usize, lo: usize, hi: usize) -> Result<(), (u8, String)> {
    if n < lo || n > hi {
        return Err(usage(format!("n must be between {lo} and {hi}, got {n}")));
    }
    Ok(())
}

fn margins_text(m: &Margins) -> String {
    let f = |v: &Option<Rat>| v.as_ref().map(rat::format).unwrap_or_else(|| "-".into());
    format!("perm_min {}, cut_min {}, target {}", f(&m.perm_min), f(&m.cut_min), rat::format(&m.target))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn cmd_edges(n: usize, at: Option<Perm>, count_only: bool) -> Result<Outcome, (u8, String)> {
    check_n(n, 3, max_n_from_env().unwrap_or(EDGES_MAX_N))?;
    let pi = at.unwrap_or_else(|| Perm::identity(n));
    if pi.n() != n {
        return Err(usage(format!("permutation {pi} has length {}, expected {n}", pi.n())));
    }
    let words = enumerate_edges_at(&pi).map_err(lib_err)?;
    let inputs = json!({ "n": n, "at": pi.to_string() });
    let mut text = String::new();
    let results = if count_only {
        if n >= 4 {
            writeln!(text, "{} (formula: {})", words.len(), edge_count_formula(n)).unwrap();
            json!({ "count": words.len(), "formula": edge_count_formula(n) })
        } else {
            writeln!(text, "{}", words.len()).unwrap();
            json!({ "count": words.len() })
        }
    } else {
        let mut verdicts = Vec::new();
        for u in words {
            let v = classify(&HalfLinePair { pi: pi.clone(), u: u.clone() });
            writeln!(text, "{u} ({})", v.reason).unwrap();
            verdicts.push(to_value(&v));
        }
        Value::Array(verdicts)
    };
    Ok(Outcome { text, inputs, results, code: 0 })
}

/// Reads either a certificate record or a bare matrix.
fn load_matrix(path: &Path) -> Result<SymZMat, (u8, String)> {
    let data = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if let Ok(cert) = serde_json::from_str::<EdgeCertificate>(&data) {
        return Ok(cert.matrix);
    }
    serde_json::from_str::<SymZMat>(&data).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), (u8, String)> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    std::fs::write(path, text + "\n").map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn report_line(r: &VerificationReport) -> String {
    let verdict = if r.pass { "pass" } else { "fail" };
    let mut line = format!("{}: {verdict} ({})", r.condition, margins_text(&r.margins));
    if let Some(f) = &r.failure {
        line.push_str(&format!("; {f}"));
    }
    line
}

fn cmd_certify(
    n: usize,
    pi: Option<Perm>,
    u: Word,
    emit: Option<PathBuf>,
    verify_only: Option<PathBuf>,
) -> Result<Outcome, (u8, String)> {
    let bound = exhaustion_bound();
    check_n(n, 2, bound)?;
    let pi = pi.unwrap_or_else(|| Perm::identity(n));
    if pi.n() != n || u.n() != n {
        return Err(usage(format!("pi and u must have length {n}")));
    }
    let pair = HalfLinePair::new(pi, u).map_err(|e| usage(e.to_string()))?;
    let inputs = json!({ "n": n, "pi": pair.pi.to_string(), "u": pair.u.to_string() });
    let opts = VerifyOptions { max_n: bound };

    if let Some(path) = verify_only {
        let d = load_matrix(&path)?;
        let mut text = String::new();
        let mut reports = Vec::new();
        for condition in [Condition::Plain, Condition::Farkas] {
            let r = verify_certificate(&d, &pair, condition, &opts).map_err(lib_err)?;
            writeln!(text, "{}", report_line(&r)).unwrap();
            let pass = r.pass;
            reports.push(r);
            if pass {
                break;
            }
        }
        let passed = reports.iter().find(|r| r.pass).map(|r| r.condition);
        match passed {
            Some(c) => writeln!(text, "pass ({c} condition)").unwrap(),
            None => writeln!(text, "fail").unwrap(),
        }
        let code = if passed.is_some() { 0 } else { EXIT_FAIL };
        return Ok(Outcome { text, inputs, results: to_value(&reports), code });
    }

    let verdict = classify(&pair);
    if !verdict.is_edge {
        let w = non_edge_witness(&pair).map_err(lib_err)?;
        let text = format!(
            "not an edge: {}\nwitness (k={}): {}\n",
            verdict.reason,
            w.k,
            w.identity_text()
        );
        let results = json!({ "verdict": verdict, "witness": w });
        return Ok(Outcome { text, inputs, results, code: EXIT_NON_EDGE });
    }
    let synth = Synthesizer::new(SynthesisOptions { max_n: bound, ..Default::default() });
    let cert = synth.synthesize(&pair).map_err(lib_err)?;
    let mut text = format!("pass ({} condition)\nmargins: {}\n", cert.condition, margins_text(&cert.margins));
    writeln!(text, "construction: {}", cert.construction.join(" | ")).unwrap();
    if let (Some(o), Some(e)) = (&cert.omega, &cert.epsilon) {
        writeln!(text, "omega: {}, epsilon: {}", rat::format(o), rat::format(e)).unwrap();
    }
    if let Some(path) = emit {
        write_json(&path, &cert)?;
        writeln!(text, "written: {}", path.display()).unwrap();
    }
    Ok(Outcome { text, inputs, results: to_value(&cert), code: 0 })
}

fn cmd_base(name: BaseName, emit: Option<PathBuf>) -> Result<Outcome, (u8, String)> {
    let b = base_certificate(name);
    let mut text = format!("{name} for {} ({} condition)\n{}", b.word, b.condition, b.matrix);
    if let Some(path) = emit {
        write_json(&path, &b.matrix)?;
        writeln!(text, "written: {}", path.display()).unwrap();
    }
    Ok(Outcome { text, inputs: json!({ "name": name }), results: to_value(&b), code: 0 })
}

fn cmd_check_metric(
    path: PathBuf,
    spreading: bool,
    facet: bool,
    epsilon: Option<String>,
) -> Result<Outcome, (u8, String)> {
    let mut m = load_matrix(&path)?;
    let eps = match &epsilon {
        Some(s) => {
            let e = rat::parse(s).map_err(|e| usage(e.to_string()))?;
            if e <= Rat::from_integer(0.into()) {
                return Err(usage("epsilon must be positive"));
            }
            e
        }
        None => rat::int(1),
    };
    if eps != rat::int(1) {
        m = m.scaled(&(rat::int(1) / &eps));
    }
    let n = m.n();
    let mut parts = Vec::new();
    let mut results = serde_json::Map::new();
    let rescale = |x: &[Rat]| -> Vec<Rat> { x.iter().map(|v| v * &eps).collect() };
    match separated_membership(&m) {
        Some((pi, x)) => {
            let x = rescale(&x);
            parts.push(format!("E_{n}^b: yes, pi={pi}, x={}", rat::format_vec(&x)));
            results.insert("in_e".into(), json!(true));
            results.insert("in_e_b".into(), json!(true));
            results.insert("pi".into(), json!(pi.to_string()));
            results.insert("x".into(), json!(x.iter().map(rat::format).collect::<Vec<_>>()));
        }
        None => match recover_embedding(&m) {
            Some(x) => {
                let x = rescale(&x);
                let detail = match first_short_entry(&m) {
                    Some((k, l, v)) => format!(" (entry ({k},{l})={} < 1)", rat::format(&(v * &eps))),
                    None => String::new(),
                };
                parts.push(format!("E_{n}: yes; E_{n}^b: no{detail}"));
                results.insert("in_e".into(), json!(true));
                results.insert("in_e_b".into(), json!(false));
                results.insert("x".into(), json!(x.iter().map(rat::format).collect::<Vec<_>>()));
            }
            None => {
                parts.push(format!("E_{n}: no"));
                results.insert("in_e".into(), json!(false));
                results.insert("in_e_b".into(), json!(false));
            }
        },
    }
    if spreading {
        let report = spreading_check(&m);
        match report.violations.first() {
            None => parts.push("spreading: ok".into()),
            Some(v) => parts.push(format!(
                "spreading: {} violations (first i={}, S={:?}: {} < {})",
                report.violations.len(),
                v.i,
                v.set,
                rat::format(&v.lhs),
                rat::format(&v.bound)
            )),
        }
        results.insert("spreading".into(), to_value(&report));
    }
    if facet {
        let slack = qn_facet_value(&m);
        parts.push(format!("facet slack: {}", rat::format(&slack)));
        results.insert("facet_slack".into(), json!(rat::format(&slack)));
    }
    let inputs = json!({ "matrix": path.display().to_string(), "epsilon": rat::format(&eps) });
    Ok(Outcome { text: parts.join("; ") + "\n", inputs, results: Value::Object(results), code: 0 })
}

fn cmd_crosscheck(n: usize, oracle: bool, full: bool) -> Result<Outcome, (u8, String)> {
    let oracle = oracle || !full;
    let bound = if oracle { oracle_bound() } else { exhaustion_bound() };
    check_n(n, 3, bound)?;
    let pairs = HalfLinePair::all_canonical(n);
    let mut text = String::new();
    let mut results = serde_json::Map::new();
    let mut ok = true;
    if oracle {
        let mut agree = 0;
        let mut disagreements = Vec::new();
        for hp in &pairs {
            let o = oracle_classify_bounded(hp, bound).map_err(lib_err)?;
            if o.is_edge == classify(hp).is_edge {
                agree += 1;
            } else {
                disagreements.push(hp.to_string());
            }
        }
        writeln!(text, "pairs: {} canonical; agree: {agree}/{}", pairs.len(), pairs.len()).unwrap();
        for d in &disagreements {
            writeln!(text, "disagree: {d}").unwrap();
        }
        ok &= disagreements.is_empty();
        results.insert("pairs".into(), json!(pairs.len()));
        results.insert("agree".into(), json!(agree));
        results.insert("disagreements".into(), json!(disagreements));
    }
    if full {
        let synth = Synthesizer::new(SynthesisOptions { max_n: exhaustion_bound(), ..Default::default() });
        let (mut edges, mut certified, mut non_edges, mut witnessed) = (0, 0, 0, 0);
        let mut failures = Vec::new();
        for hp in &pairs {
            if classify(hp).is_edge {
                edges += 1;
                match synth.synthesize(hp) {
                    Ok(_) => certified += 1,
                    Err(e) => failures.push(format!("{hp}: {e}")),
                }
            } else {
                non_edges += 1;
                match non_edge_witness(hp).and_then(|w| w.check()) {
                    Ok(true) => witnessed += 1,
                    Ok(false) => failures.push(format!("{hp}: identity fails")),
                    Err(e) => failures.push(format!("{hp}: {e}")),
                }
            }
        }
        writeln!(text, "edges: {certified}/{edges} certified; non-edges: {witnessed}/{non_edges} witnessed").unwrap();
        for f in &failures {
            writeln!(text, "failure: {f}").unwrap();
        }
        ok &= failures.is_empty();
        results.insert("edges".into(), json!({ "total": edges, "certified": certified }));
        results.insert("non_edges".into(), json!({ "total": non_edges, "witnessed": witnessed }));
        results.insert("failures".into(), json!(failures));
    }
    let per_vertex = enumerate_edges_at(&Perm::identity(n)).map_err(lib_err)?.len();
    writeln!(text, "edges per vertex: {per_vertex}").unwrap();
    results.insert("edges_per_vertex".into(), json!(per_vertex));
    let inputs = json!({ "n": n, "oracle": oracle, "full": full });
    Ok(Outcome { text, inputs, results: Value::Object(results), code: if ok { 0 } else { EXIT_FAIL } })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let (name, outcome) = match cli.command {
        Command::Edges { n, at, count_only } => ("edges", cmd_edges(n, at, count_only)),
        Command::Certify { n, pi, u, emit, verify_only } => ("certify", cmd_certify(n, pi, u, emit, verify_only)),
        Command::Base { name, emit } => ("base", cmd_base(name, emit)),
        Command::CheckMetric { matrix, spreading, facet, epsilon } => {
            ("check-metric", cmd_check_metric(matrix, spreading, facet, epsilon))
        }
        Command::Crosscheck { n, oracle, full } => ("crosscheck", cmd_crosscheck(n, oracle, full)),
    };
    match outcome {
        Ok(out) => {
            if cli.json {
                let report = RunReport {
                    command: name.to_string(),
                    inputs: out.inputs,
                    results: out.results,
                    version: env!("CARGO_PKG_VERSION"),
                    timing_ms: cli.timing.then(|| start.elapsed().as_millis()),
                };
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
