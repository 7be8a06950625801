//! `diffvt` — encode, decode, corrupt and verify words of
//! deletion/insertion-correcting codes.
//!
//! Word files hold one word per line (base-36 digits for alphabets up to 36,
//! space-separated decimals with a `#q=` header beyond); `#` starts a
//! comment. Every command echoes a JSON report on stdout with a stable key
//! order, and all randomized behavior is driven by an explicit seed (a fixed
//! default when the flag is absent), so runs are reproducible.
//!
//! Exit codes: 0 success; 1 a verification check failed; 2 invalid input or
//! capacity overrun; 3 undecodable input.

mod words_io;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diffvt::error_model::{apply, ErrorSpec, DEFAULT_CAP};
use diffvt::verify::{self, SuiteReport};
use diffvt::{BurstFixed, DiffSvt, DiffVt, Error, MarkerCode, Result, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

const DEFAULT_SEED: u64 = 1729;

#[derive(Parser)]
#[command(
    name = "diffvt",
    version,
    about = "Deletion/insertion-correcting codes: encode, decode, corrupt, verify"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Encode message words into codewords
    Encode(EncodeArgs),
    /// Decode received words, possibly shortened or lengthened by a burst
    Decode(DecodeArgs),
    /// Apply a deletion or insertion burst to each word of a file
    Corrupt(CorruptArgs),
    /// Run a brute-force verification suite
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CodeKind {
    /// Differential VT code (single deletion or insertion)
    Diffvt,
    /// Differential shifted VT code (single deletion in a known window)
    Diffsvt,
    /// Fixed-length burst code (exactly t consecutive deletions)
    Burst,
    /// Marker-based code (bursts of at most two deletions)
    Marker,
}

#[derive(Args)]
struct CodeArgs {
    /// Code family
    #[arg(long, value_enum)]
    code: CodeKind,
    /// Alphabet size
    #[arg(long)]
    q: u32,
    /// Codeword length (diffvt, diffsvt, burst)
    #[arg(long)]
    n: Option<usize>,
    /// Message length (marker)
    #[arg(long)]
    k: Option<usize>,
    /// Window parameter P (diffsvt, marker); with --ell, an explicit burst-code window
    #[arg(long)]
    p: Option<usize>,
    /// Burst length (burst)
    #[arg(long)]
    t: Option<usize>,
    /// First-row run-length bound override (burst; requires --p)
    #[arg(long)]
    ell: Option<usize>,
    /// Syndrome residue (diffvt, diffsvt)
    #[arg(long, default_value_t = 0)]
    a: u64,
    /// Sum residue (diffsvt, burst)
    #[arg(long, default_value_t = 0)]
    b: u64,
    /// First-row syndrome residue (burst)
    #[arg(long, default_value_t = 0)]
    a1: u64,
    /// Secondary-row syndrome residue (burst)
    #[arg(long, default_value_t = 0)]
    a2: u64,
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Input message file, one word per line
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Output codeword file
    #[arg(long = "out", value_name = "FILE")]
    output: PathBuf,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Lower end of the known burst window (diffsvt, marker)
    #[arg(long)]
    window_lo: Option<usize>,
    /// Upper end of the known burst window (diffsvt, marker)
    #[arg(long)]
    window_hi: Option<usize>,
    /// Input received-word file
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Output file (messages where the code is systematic, else codewords)
    #[arg(long = "out", value_name = "FILE")]
    output: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ErrKind {
    /// Burst deletion
    Del,
    /// Burst insertion
    Ins,
}

#[derive(Args)]
struct CorruptArgs {
    /// Alphabet size
    #[arg(long)]
    q: u32,
    /// Error kind
    #[arg(long, value_enum)]
    kind: ErrKind,
    /// Burst position (1-based first deleted symbol; insertions go after
    /// this position, 0 prepends). Drawn from the seed when absent.
    #[arg(long)]
    start: Option<usize>,
    /// Burst length (defaults to 1, or to the length of --symbols)
    #[arg(long)]
    len: Option<usize>,
    /// Symbols to insert (insertions only); random when absent
    #[arg(long)]
    symbols: Option<String>,
    /// Seed for random placement/symbols
    #[arg(long)]
    seed: Option<u64>,
    /// Input word file
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Output word file
    #[arg(long = "out", value_name = "FILE")]
    output: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteKind {
    /// Exhaustive single-deletion/insertion correction over all cosets
    Diffvt,
    /// Window confusability and windowed decoding, exhaustive
    Diffsvt,
    /// Fixed-length bursts: exhaustive over cosets, or seeded encoder
    /// round-trips when --samples is given
    BurstT,
    /// Bursts of at most 2: codebook + residual construction, ball oracle
    BurstLe2,
    /// Coset cardinality bounds and the generic correction oracle
    Baselines,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run
    #[arg(long, value_enum)]
    suite: SuiteKind,
    /// Alphabet size
    #[arg(long)]
    q: u32,
    /// Code length
    #[arg(long)]
    n: usize,
    /// Window parameter (diffsvt)
    #[arg(long)]
    p: Option<usize>,
    /// Burst length (burst-t)
    #[arg(long)]
    t: Option<usize>,
    /// Run-length bound override (burst-t; requires --p)
    #[arg(long)]
    ell: Option<usize>,
    /// Number of sampled messages (burst-t encoder mode)
    #[arg(long)]
    samples: Option<usize>,
    /// Seed for sampled sweeps
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Enumeration cap (overrides the DIFFVT_ENUM_CAP environment variable)
    #[arg(long)]
    cap: Option<u64>,
    /// Also write the JSON report to a file
    #[arg(long, value_name = "FILE")]
    json: Option<PathBuf>,
    /// Also write the checks as a CSV table
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
}

enum CodeInstance {
    Vt(DiffVt),
    Svt(DiffSvt),
    Burst(BurstFixed),
    Marker(MarkerCode),
}

fn require<T>(value: Option<T>, flag: &str, code: &str) -> Result<T> {
    value.ok_or_else(|| Error::Domain(format!("{flag} is required for --code {code}")))
}

fn build_code(args: &CodeArgs) -> Result<CodeInstance> {
    match args.code {
        CodeKind::Diffvt => {
            let n = require(args.n, "--n", "diffvt")?;
            Ok(CodeInstance::Vt(DiffVt::new(args.q, n, args.a)?))
        }
        CodeKind::Diffsvt => {
            let n = require(args.n, "--n", "diffsvt")?;
            let p = require(args.p, "--p", "diffsvt")?;
            Ok(CodeInstance::Svt(DiffSvt::new(args.q, n, p, args.a, args.b)?))
        }
        CodeKind::Burst => {
            let n = require(args.n, "--n", "burst")?;
            let t = require(args.t, "--t", "burst")?;
            let code = match (args.ell, args.p) {
                (Some(ell), Some(p)) => {
                    BurstFixed::with_limits(args.q, n, t, args.a1, args.a2, args.b, ell, p)?
                }
                (None, None) => BurstFixed::for_encoder(args.q, n, t, args.a1, args.a2, args.b)?,
                _ => {
                    return Err(Error::Domain(
                        "--ell and --p must be given together for the burst code".into(),
                    ))
                }
            };
            Ok(CodeInstance::Burst(code))
        }
        CodeKind::Marker => {
            let k = require(args.k, "--k", "marker")?;
            let p = require(args.p, "--p", "marker")?;
            Ok(CodeInstance::Marker(MarkerCode::new(args.q, k, p)?))
        }
    }
}

#[derive(Serialize)]
struct ParamsJson {
    code: &'static str,
    q: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ell: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a1: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a2: Option<u64>,
}

fn params_json(code: &CodeInstance) -> ParamsJson {
    let mut p = ParamsJson {
        code: "",
        q: 0,
        n: None,
        k: None,
        p: None,
        t: None,
        ell: None,
        a: None,
        b: None,
        a1: None,
        a2: None,
    };
    match code {
        CodeInstance::Vt(c) => {
            p.code = "diffvt";
            p.q = c.q();
            p.n = Some(c.n());
            p.a = Some(c.a());
        }
        CodeInstance::Svt(c) => {
            p.code = "diffsvt";
            p.q = c.q();
            p.n = Some(c.n());
            p.p = Some(c.window());
            p.a = Some(c.a());
            p.b = Some(c.b());
        }
        CodeInstance::Burst(c) => {
            p.code = "burst";
            p.q = c.q();
            p.n = Some(c.n());
            p.t = Some(c.t());
            p.ell = Some(c.run_bound());
            p.p = Some(c.window());
            p.a1 = Some(c.a1());
            p.a2 = Some(c.a2());
            p.b = Some(c.b());
        }
        CodeInstance::Marker(c) => {
            p.code = "marker";
            p.q = c.q();
            p.n = Some(c.n());
            p.k = Some(c.message_len());
            p.p = Some(c.window());
        }
    }
    p
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    command: &'static str,
    params: ParamsJson,
    words: Vec<T>,
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("report is serializable"));
}

#[derive(Serialize)]
struct EncodeEntry {
    line: usize,
    message: String,
    codeword: String,
}

fn cmd_encode(args: EncodeArgs) -> Result<()> {
    let code = build_code(&args.code)?;
    let messages = words_io::read_words(&args.input, args.code.q)?;
    let mut out = Vec::with_capacity(messages.len());
    let mut entries = Vec::with_capacity(messages.len());
    for (i, msg) in messages.iter().enumerate() {
        let cw = match &code {
            CodeInstance::Vt(c) => c.encode(msg)?,
            CodeInstance::Svt(c) => c.encode(msg)?,
            CodeInstance::Burst(c) => c.encode(msg)?,
            CodeInstance::Marker(c) => c.encode(msg)?,
        };
        entries.push(EncodeEntry {
            line: i + 1,
            message: msg.to_string(),
            codeword: cw.to_string(),
        });
        out.push(cw);
    }
    words_io::write_words(&args.output, &out, args.code.q)?;
    print_json(&Report { command: "encode", params: params_json(&code), words: entries });
    Ok(())
}

#[derive(Serialize)]
struct DecodeEntry {
    line: usize,
    received: String,
    /// What was written to the output file: the message where the code is
    /// systematic, otherwise the recovered codeword.
    output: String,
    codeword: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<String>,
    case_tag: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma: Option<u16>,
    #[serde(skip_serializing_if = "Option::is_none")]
    position: Option<usize>,
}

fn cmd_decode(args: DecodeArgs) -> Result<()> {
    let code = build_code(&args.code)?;
    let window = match (args.window_lo, args.window_hi) {
        (Some(lo), Some(hi)) => Some((lo, hi)),
        (None, None) => None,
        _ => {
            return Err(Error::Domain("--window-lo and --window-hi must be given together".into()))
        }
    };
    let received = words_io::read_words(&args.input, args.code.q)?;
    let mut out = Vec::with_capacity(received.len());
    let mut entries = Vec::with_capacity(received.len());
    for (i, r) in received.iter().enumerate() {
        let mut entry = DecodeEntry {
            line: i + 1,
            received: r.to_string(),
            output: String::new(),
            codeword: String::new(),
            message: None,
            case_tag: String::new(),
            delta: None,
            s: None,
            gamma: None,
            position: None,
        };
        let (codeword, message) = match &code {
            CodeInstance::Vt(c) => {
                let rep = c.decode(r)?;
                entry.case_tag = rep.case.to_string();
                entry.delta = rep.delta;
                entry.s = rep.s;
                entry.gamma = rep.gamma;
                entry.position = rep.position;
                let msg = c.extract_message(&rep.recovered).ok();
                (rep.recovered, msg)
            }
            CodeInstance::Svt(c) => {
                let cw = if r.len() == c.n() {
                    if !c.is_member(r)? {
                        return Err(Error::Decode(format!(
                            "line {}: full-length word is not a codeword",
                            i + 1
                        )));
                    }
                    entry.case_tag = "no_error".into();
                    r.clone()
                } else {
                    let (lo, hi) = window.ok_or_else(|| {
                        Error::Domain(
                            "decoding a shortened diffsvt word needs --window-lo/--window-hi"
                                .into(),
                        )
                    })?;
                    entry.case_tag = "windowed_deletion".into();
                    c.decode_windowed(r, lo, hi)?
                };
                let msg = c.extract_message(&cw).ok();
                (cw, msg)
            }
            CodeInstance::Burst(c) => {
                entry.case_tag =
                    if r.len() == c.n() { "no_error".into() } else { "burst_deletion".into() };
                let cw = c.decode(r)?;
                let msg = c.extract_message(&cw).ok();
                (cw, msg)
            }
            CodeInstance::Marker(c) => {
                entry.case_tag =
                    if r.len() == c.n() { "no_error".into() } else { "burst_deletion".into() };
                let msg = c.decode(r, window)?;
                (c.encode(&msg)?, Some(msg))
            }
        };
        entry.codeword = codeword.to_string();
        entry.message = message.as_ref().map(|m| m.to_string());
        let output = message.unwrap_or(codeword);
        entry.output = output.to_string();
        out.push(output);
        entries.push(entry);
    }
    words_io::write_words(&args.output, &out, args.code.q)?;
    print_json(&Report { command: "decode", params: params_json(&code), words: entries });
    Ok(())
}

#[derive(Serialize)]
struct CorruptEntry {
    line: usize,
    input: String,
    output: String,
    kind: &'static str,
    start: usize,
    length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    inserted: Option<String>,
}

#[derive(Serialize)]
struct CorruptParams {
    q: u32,
    seed: u64,
}

#[derive(Serialize)]
struct CorruptReport {
    command: &'static str,
    params: CorruptParams,
    words: Vec<CorruptEntry>,
}

fn cmd_corrupt(args: CorruptArgs) -> Result<()> {
    let q = args.q;
    let words = words_io::read_words(&args.input, q)?;
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let given_symbols = match &args.symbols {
        Some(text) => {
            if args.kind == ErrKind::Del {
                return Err(Error::Domain("--symbols only applies to insertions".into()));
            }
            let w = Word::parse(q, text)?;
            if let Some(len) = args.len {
                if len != w.len() {
                    return Err(Error::Domain(format!(
                        "--len {len} contradicts --symbols of length {}",
                        w.len()
                    )));
                }
            }
            Some(w.into_symbols())
        }
        None => None,
    };
    let length = args.len.unwrap_or_else(|| given_symbols.as_ref().map_or(1, Vec::len));
    if length == 0 {
        return Err(Error::Domain("burst length must be at least 1".into()));
    }

    let mut out = Vec::with_capacity(words.len());
    let mut entries = Vec::with_capacity(words.len());
    for (i, w) in words.iter().enumerate() {
        let spec = match args.kind {
            ErrKind::Del => {
                if w.len() < length {
                    return Err(Error::Domain(format!(
                        "line {}: cannot delete {length} symbols from a word of length {}",
                        i + 1,
                        w.len()
                    )));
                }
                let start = match args.start {
                    Some(s) => s,
                    None => rng.random_range(1..=w.len() - length + 1),
                };
                ErrorSpec::deletion(start, length)
            }
            ErrKind::Ins => {
                let start = match args.start {
                    Some(s) => s,
                    None => rng.random_range(0..=w.len()),
                };
                let symbols = match &given_symbols {
                    Some(s) => s.clone(),
                    None => (0..length).map(|_| rng.random_range(0..q) as u16).collect(),
                };
                ErrorSpec::insertion(start, symbols)
            }
        };
        let corrupted = apply(w, &spec)?;
        entries.push(CorruptEntry {
            line: i + 1,
            input: w.to_string(),
            output: corrupted.to_string(),
            kind: match args.kind {
                ErrKind::Del => "del",
                ErrKind::Ins => "ins",
            },
            start: spec.start,
            length: spec.length,
            inserted: if spec.inserted.is_empty() {
                None
            } else {
                Some(Word::new(q, spec.inserted.clone())?.to_string())
            },
        });
        out.push(corrupted);
    }
    words_io::write_words(&args.output, &out, q)?;
    print_json(&CorruptReport {
        command: "corrupt",
        params: CorruptParams { q, seed },
        words: entries,
    });
    Ok(())
}

#[derive(Serialize)]
struct VerifyParams {
    q: u32,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ell: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<usize>,
    seed: u64,
    cap: u64,
}

#[derive(Serialize)]
struct CheckJson<'a> {
    name: &'a str,
    passed: bool,
    detail: &'a str,
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    command: &'static str,
    suite: &'a str,
    params: VerifyParams,
    passed: bool,
    checks: Vec<CheckJson<'a>>,
}

fn resolve_cap(flag: Option<u64>) -> Result<u64> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("DIFFVT_ENUM_CAP") {
        Ok(value) => value.trim().parse().map_err(|_| {
            Error::Domain(format!("DIFFVT_ENUM_CAP is not a valid integer: {value:?}"))
        }),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<bool> {
    let cap = resolve_cap(args.cap)?;
    let report: SuiteReport = match args.suite {
        SuiteKind::Diffvt => verify::verify_diffvt(args.q, args.n, cap)?,
        SuiteKind::Diffsvt => {
            let p = require(args.p, "--p", "diffsvt")?;
            verify::verify_diffsvt(args.q, args.n, p, cap)?
        }
        SuiteKind::BurstT => {
            let t = require(args.t, "--t", "burst-t")?;
            match args.samples {
                Some(samples) => {
                    verify::verify_burst_encoded(args.q, args.n, t, samples, args.seed)?
                }
                None => {
                    let limits = match (args.ell, args.p) {
                        (Some(ell), Some(p)) => Some((ell, p)),
                        (None, None) => None,
                        _ => {
                            return Err(Error::Domain(
                                "--ell and --p must be given together".into(),
                            ))
                        }
                    };
                    verify::verify_burst_t(args.q, args.n, t, limits, cap)?
                }
            }
        }
        SuiteKind::BurstLe2 => verify::verify_burst_le2(args.q, args.n, cap)?,
        SuiteKind::Baselines => verify::verify_baselines(args.q, args.n, cap)?,
    };

    let json = VerifyJson {
        command: "verify",
        suite: &report.suite,
        params: VerifyParams {
            q: args.q,
            n: args.n,
            p: args.p,
            t: args.t,
            ell: args.ell,
            samples: args.samples,
            seed: args.seed,
            cap,
        },
        passed: report.passed(),
        checks: report
            .checks
            .iter()
            .map(|c| CheckJson { name: &c.name, passed: c.passed, detail: &c.detail })
            .collect(),
    };
    print_json(&json);
    if let Some(path) = &args.json {
        let text = serde_json::to_string_pretty(&json).expect("report is serializable");
        std::fs::write(path, text + "\n")
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
    }
    if let Some(path) = &args.csv {
        let mut text = String::from("suite,check,passed,detail\n");
        for c in &report.checks {
            text.push_str(&format!(
                "{},{},{},{}\n",
                csv_field(&report.suite),
                csv_field(&c.name),
                c.passed,
                csv_field(&c.detail)
            ));
        }
        std::fs::write(path, text)
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(report.passed())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Cmd::Encode(args) => cmd_encode(args).map(|()| true),
        Cmd::Decode(args) => cmd_decode(args).map(|()| true),
        Cmd::Corrupt(args) => cmd_corrupt(args).map(|()| true),
        Cmd::Verify(args) => cmd_verify(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Domain(_) | Error::Capacity(_) => ExitCode::from(2),
                Error::Decode(_) | Error::InternalInvariant(_) => ExitCode::from(3),
            }
        }
    }
}
