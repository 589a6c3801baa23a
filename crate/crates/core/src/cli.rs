//! Command-line frontend.
//!
//! Every subcommand produces either a text report or a JSON document with a
//! `schema_version` field. Exit codes: `0` success, `1` contract violation,
//! `2` usage error, `3` inconclusive (cap or budget exhausted).

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::breduce::{decompose, kuzmin_certificate, normal_form, run_batteries, BatteryConfig, BatteryReport, KuzminCertificate};
use crate::error::{Error, Result};
use crate::freealg::{parse_word, FreeElement, Word, MAX_LINEARIZATION_DEFAULT};
use crate::genmat::{chi_battery, ChiReport};
use crate::nilideal::{
    compute_beta, compute_d, crosscheck_main_inequality, default_beta_cap, default_d_cap, word_member, BetaReport,
    Caps, CheckStatus, CrosscheckReport, ExpressOutcome, ExpressReport, ExpressSolver, IndexReport, MemberVerdict,
    DEFAULT_BUDGET,
};
use crate::ring::{is_prime, Integers, PrimeField};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONTRACT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "NILBOUND_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "nilbound", version, about = "Exact computations for nil algebras of bounded index")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Maximum number of words in any single linear-algebra block.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Permit nil index above the default limit.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal form of a word in x, y modulo B.
    Reduce {
        word: String,
        #[arg(long)]
        n: usize,
        /// Reduce coefficients modulo this prime.
        #[arg(long)]
        p: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Membership of a word in the nil ideal.
    Member {
        word: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Nilpotency index d(n, m).
    Dnm {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Maximal degree of a minimal generator of the matrix invariants.
    Beta {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Compare d(n, m) with generator degrees and the known bounds.
    Crosscheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Degree cap of the index scan.
        #[arg(long)]
        cap: Option<usize>,
        /// Degree cap of both generator scans.
        #[arg(long)]
        beta_cap: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the Cayley-Hamilton expression on random elements.
    Chi {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Express the generic-matrix image of a word through invariants.
    Express {
        word: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Certificate that the Kuzmin word lies outside the nil ideal.
    Certify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Run the finite lemma-instance batteries.
    Lemmas {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cases per seeded battery.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// Validated parameters shared by all subcommands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub n: usize,
    pub m: usize,
    pub p: u64,
    pub cap: usize,
    pub budget: u128,
    pub format: Format,
    pub allow_large: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 {
            return Err(Error::usage("n and m must be at least 1"));
        }
        if !is_prime(self.p) {
            return Err(Error::usage(format!("p = {} is not prime", self.p)));
        }
        if self.cap == 0 {
            return Err(Error::usage("cap must be at least 1"));
        }
        if self.n > MAX_LINEARIZATION_DEFAULT && !self.allow_large {
            return Err(Error::usage(format!(
                "n = {} exceeds {MAX_LINEARIZATION_DEFAULT}; pass --allow-large",
                self.n
            )));
        }
        Ok(())
    }
}

fn config(n: usize, m: usize, p: u64, cap: usize, common: &Common) -> Result<RunConfig> {
    let cfg = RunConfig {
        n,
        m,
        p,
        cap,
        budget: common.budget,
        format: common.format,
        allow_large: common.allow_large,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// What a command run printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Rendered {
    name: &'static str,
    json: Value,
    text: String,
    code: i32,
}

fn envelope(name: &str, body: Value) -> Value {
    let mut doc = json!({ "schema_version": SCHEMA_VERSION, "command": name });
    if let (Some(out), Value::Object(fields)) = (doc.as_object_mut(), body) {
        out.extend(fields);
    }
    doc
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Parses `args` (without the program name) and runs the command, honouring
/// the thread cap in the environment.
pub fn run_with_args<S: AsRef<str>>(args: &[S]) -> CliOutcome {
    let argv = std::iter::once("nilbound").chain(args.iter().map(|s| s.as_ref()));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutcome { stdout: String::new(), stderr: text, code: EXIT_USAGE }
            } else {
                CliOutcome { stdout: text, stderr: String::new(), code: EXIT_OK }
            };
        }
    };
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(k) if k > 0 => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
                Ok(pool) => pool.install(|| execute(cli.command)),
                Err(e) => failure(Format::Text, "nilbound", &Error::usage(e.to_string())),
            },
            _ => failure(Format::Text, "nilbound", &Error::usage(format!("{THREADS_ENV} must be a positive integer"))),
        },
        Err(_) => execute(cli.command),
    }
}

/// Entry point for the binary: runs on the process arguments, prints, and
/// returns the exit code.
pub fn run() -> i32 {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let out = run_with_args(&args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

fn format_of(cmd: &Command) -> Format {
    match cmd {
        Command::Reduce { common, .. }
        | Command::Member { common, .. }
        | Command::Dnm { common, .. }
        | Command::Beta { common, .. }
        | Command::Crosscheck { common, .. }
        | Command::Chi { common, .. }
        | Command::Express { common, .. }
        | Command::Certify { common, .. }
        | Command::Lemmas { common, .. } => common.format,
    }
}

fn name_of(cmd: &Command) -> &'static str {
    match cmd {
        Command::Reduce { .. } => "reduce",
        Command::Member { .. } => "member",
        Command::Dnm { .. } => "dnm",
        Command::Beta { .. } => "beta",
        Command::Crosscheck { .. } => "crosscheck",
        Command::Chi { .. } => "chi",
        Command::Express { .. } => "express",
        Command::Certify { .. } => "certify",
        Command::Lemmas { .. } => "lemmas",
    }
}

fn execute(cmd: Command) -> CliOutcome {
    let format = format_of(&cmd);
    let name = name_of(&cmd);
    match dispatch(cmd) {
        Ok(r) => {
            let stdout = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&envelope(r.name, r.json)).expect("json");
                    s.push('\n');
                    s
                }
                Format::Text => r.text,
            };
            CliOutcome { stdout, stderr: String::new(), code: r.code }
        }
        Err(e) => failure(format, name, &e),
    }
}

fn failure(format: Format, name: &str, e: &Error) -> CliOutcome {
    let (status, code) = match e {
        Error::Budget { .. } => ("inconclusive", EXIT_INCONCLUSIVE),
        Error::Contract(_) => ("contract_violation", EXIT_CONTRACT),
        e if e.is_usage() => ("usage_error", EXIT_USAGE),
        _ => ("contract_violation", EXIT_CONTRACT),
    };
    let message = match e {
        Error::Budget { .. } => format!("inconclusive: budget ({e})"),
        _ => e.to_string(),
    };
    match format {
        Format::Json => {
            let doc = envelope(name, json!({ "status": status, "message": message }));
            let mut s = serde_json::to_string_pretty(&doc).expect("json");
            s.push('\n');
            let (stdout, stderr) = if code == EXIT_USAGE { (String::new(), s) } else { (s, String::new()) };
            CliOutcome { stdout, stderr, code }
        }
        Format::Text => {
            let line = format!("{message}\n");
            let (stdout, stderr) = if code == EXIT_USAGE { (String::new(), line) } else { (line, String::new()) };
            CliOutcome { stdout, stderr, code }
        }
    }
}

fn dispatch(cmd: Command) -> Result<Rendered> {
    match cmd {
        Command::Reduce { word, n, p, common } => {
            config(n, 2, p.unwrap_or(2), 1, &common)?;
            cmd_reduce(&word, n, p)
        }
        Command::Member { word, n, m, p, common } => {
            let cfg = config(n, m, p, 1, &common)?;
            cmd_member(&word, &cfg)
        }
        Command::Dnm { n, m, p, cap, common } => {
            let cfg = config(n, m, p, cap.unwrap_or_else(|| default_d_cap(m)), &common)?;
            cmd_dnm(&cfg)
        }
        Command::Beta { n, m, p, cap, common } => {
            let cfg = config(n, m, p, cap.unwrap_or_else(|| default_beta_cap(n, m)), &common)?;
            cmd_beta(&cfg)
        }
        Command::Crosscheck { n, m, p, cap, beta_cap, common } => {
            let cfg = config(n, m, p, cap.unwrap_or_else(|| default_d_cap(m)), &common)?;
            if beta_cap == Some(0) {
                return Err(Error::usage("beta cap must be at least 1"));
            }
            cmd_crosscheck(&cfg, beta_cap)
        }
        Command::Chi { n, m, p, degree, samples, seed, common } => {
            let cfg = config(n, m, p, degree.max(1), &common)?;
            if degree == 0 || samples == 0 {
                return Err(Error::usage("degree and samples must be at least 1"));
            }
            cmd_chi(&cfg, degree, samples, seed)
        }
        Command::Express { word, n, m, p, common } => {
            let cfg = config(n, m, p, 1, &common)?;
            cmd_express(&word, &cfg)
        }
        Command::Certify { n, seed, common } => {
            config(n, 2, 2, 1, &common)?;
            if n < 2 {
                return Err(Error::usage("certify needs n >= 2"));
            }
            cmd_certify(n, seed)
        }
        Command::Lemmas { seed, samples, .. } => cmd_lemmas(BatteryConfig { seed, cases: samples }),
    }
}

fn cmd_reduce(text: &str, n: usize, p: Option<u64>) -> Result<Rendered> {
    let w = parse_xy(text)?;
    let exps = decompose(&w)?;
    let f = FreeElement::from_word(Integers, 2, w.clone())?;
    let (nf, pairs) = match p {
        Some(p) => {
            let nf = normal_form(&f.reduce_mod(&PrimeField::new(p)?), n)?;
            (nf.to_string(), nf.to_pairs())
        }
        None => {
            let nf = normal_form(&f, n)?;
            (nf.to_string(), nf.to_pairs())
        }
    };
    let xy = w.to_xy().expect("two-letter word");
    let text = format!("word {xy}\nexponents {exps}\nnormal form {nf}\n");
    Ok(Rendered {
        name: "reduce",
        json: json!({
            "n": n,
            "p": p,
            "word": xy,
            "exponents": exps.entries(),
            "normal_form": pairs,
            "rendered": nf,
        }),
        text,
        code: EXIT_OK,
    })
}

/// Accepts `x`/`y` spelling as well as `x1 x2` spelling for two-letter words.
fn parse_xy(text: &str) -> Result<Word> {
    let t = text.trim();
    if !t.is_empty() && t.chars().all(|c| c == 'x' || c == 'y') {
        return Word::parse(t);
    }
    parse_word(t, Some(2))
}

fn cmd_member(text: &str, cfg: &RunConfig) -> Result<Rendered> {
    let w = parse_word(text, Some(cfg.m))?;
    let v: MemberVerdict = word_member(cfg.n, cfg.m, cfg.p, &w, cfg.budget)?;
    let verdict = if v.member { "member" } else { "non-member" };
    let text = format!(
        "word {}\nverdict {verdict}\nideal I_{{{},{}}} over F_{}\nblock multidegree ({}) rank {} of {}\n",
        v.word,
        v.n,
        v.m,
        v.p,
        v.multidegree.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
        v.block_rank,
        v.block_dim
    );
    let mut json = to_json(&v);
    json["verdict"] = json!(verdict);
    Ok(Rendered { name: "member", json, text, code: EXIT_OK })
}

fn cmd_dnm(cfg: &RunConfig) -> Result<Rendered> {
    let r: IndexReport = compute_d(cfg.n, cfg.m, cfg.p, cfg.cap, cfg.budget)?;
    let mut text = format!("d({},{}) over F_{}, cap {}\n", r.n, r.m, r.p, r.cap);
    text.push_str("D\twords\tmembers\n");
    for row in r.degrees.iter().chain(r.monotonicity.iter()) {
        let _ = writeln!(text, "{}\t{}\t{}", row.degree, row.words, row.members);
    }
    let code = match r.d {
        Some(d) => {
            let _ = writeln!(text, "d = {d}");
            EXIT_OK
        }
        None => {
            let _ = writeln!(text, "inconclusive: d > {}", r.cap);
            EXIT_INCONCLUSIVE
        }
    };
    Ok(Rendered { name: "dnm", json: to_json(&r), text, code })
}

fn cmd_beta(cfg: &RunConfig) -> Result<Rendered> {
    let r: BetaReport = compute_beta(cfg.n, cfg.m, cfg.p, cfg.cap, cfg.budget)?;
    let mut text = format!("beta({},{}) over F_{}, cap {}\n", r.n, r.m, r.p, r.cap);
    text.push_str("D\tcandidates\tnew_generators\n");
    for row in &r.degrees {
        let _ = writeln!(text, "{}\t{}\t{}", row.degree, row.candidates, row.new_generators);
    }
    for g in &r.generators {
        let _ = writeln!(text, "generator {g}");
    }
    let code = if r.exact {
        let _ = writeln!(text, "beta = {} (exact)", r.beta_estimate);
        EXIT_OK
    } else if r.stable {
        let _ = writeln!(text, "beta >= {} (stable)", r.beta_estimate);
        EXIT_OK
    } else {
        let _ = writeln!(text, "inconclusive: beta >= {}", r.beta_estimate);
        EXIT_INCONCLUSIVE
    };
    Ok(Rendered { name: "beta", json: to_json(&r), text, code })
}

fn cmd_crosscheck(cfg: &RunConfig, beta_cap: Option<usize>) -> Result<Rendered> {
    let caps = Caps {
        d_cap: cfg.cap,
        beta_cap_next: beta_cap.unwrap_or_else(|| default_beta_cap(cfg.n, cfg.m + 1)),
        beta_cap_same: beta_cap.unwrap_or_else(|| default_beta_cap(cfg.n, cfg.m)),
        budget: cfg.budget,
    };
    let r: CrosscheckReport = crosscheck_main_inequality(cfg.n, cfg.m, cfg.p, caps)?;
    let mut text = format!("crosscheck n={} m={} over F_{}\n", r.n, r.m, r.p);
    match r.d {
        Some(d) => {
            let _ = writeln!(text, "d = {d}");
        }
        None => {
            let _ = writeln!(text, "d > {}", r.d_cap);
        }
    }
    for b in [&r.beta_same, &r.beta_next] {
        let (rel, label) = if b.exact {
            ("=", "exact")
        } else if b.stable {
            (">=", "stable")
        } else {
            (">=", "lower bound")
        };
        let _ = writeln!(text, "beta({},{}) {rel} {} ({label}, cap {})", r.n, b.m, b.beta_estimate, b.cap);
    }
    for c in &r.checks {
        let _ = writeln!(text, "{:<12} {}: {}", status_word(c.status), c.name, c.detail);
    }
    let _ = writeln!(text, "status {}", status_word(r.status));
    let code = match r.status {
        CheckStatus::Pass => EXIT_OK,
        CheckStatus::Fail => EXIT_CONTRACT,
        CheckStatus::Inconclusive => EXIT_INCONCLUSIVE,
    };
    Ok(Rendered { name: "crosscheck", json: to_json(&r), text, code })
}

fn status_word(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Inconclusive => "inconclusive",
    }
}

fn cmd_chi(cfg: &RunConfig, degree: usize, samples: usize, seed: u64) -> Result<Rendered> {
    let r: ChiReport = chi_battery(cfg.n, cfg.m, degree, samples, seed, cfg.p)?;
    let mut text = format!(
        "chi_{} on {} random elements of degree <= {} in {} letters, seed {}, over Z and F_{}\n",
        r.n, r.samples, r.degree, r.m, r.seed, r.p
    );
    let code = if r.all_zero {
        let _ = writeln!(text, "all-zero: {} of {} cases", r.cases, r.cases);
        EXIT_OK
    } else {
        let _ = writeln!(text, "nonzero: {} of {} cases", r.nonzero, r.cases);
        if let Some(a) = &r.first_nonzero {
            let _ = writeln!(text, "first failure {a}");
        }
        EXIT_CONTRACT
    };
    Ok(Rendered { name: "chi", json: to_json(&r), text, code })
}

fn cmd_express(text: &str, cfg: &RunConfig) -> Result<Rendered> {
    let w = parse_word(text, Some(cfg.m))?;
    let r: ExpressReport = ExpressSolver::new(cfg.n, cfg.m, cfg.p, cfg.budget)?.solve(&w)?;
    let mut out = format!(
        "word {}\nambient dimension {}, candidates {}, span rank {}\n",
        r.word, r.ambient_dim, r.candidates, r.span_rank
    );
    match &r.outcome {
        ExpressOutcome::Expressed { terms } => {
            let _ = writeln!(out, "expressed with {} terms", terms.len());
            for t in terms {
                let _ = writeln!(out, "  {t}");
            }
        }
        ExpressOutcome::NoExpression => out.push_str("no expression\n"),
    }
    Ok(Rendered { name: "express", json: to_json(&r), text: out, code: EXIT_OK })
}

fn cmd_certify(n: usize, seed: u64) -> Result<Rendered> {
    let c: KuzminCertificate = kuzmin_certificate(n, seed)?;
    let nf = c
        .normal_form
        .iter()
        .map(|(label, coeff)| match coeff.as_str() {
            "1" => format!("+{label}"),
            "-1" => format!("-{label}"),
            c if c.starts_with('-') => format!("{c}{label}"),
            c => format!("+{c}{label}"),
        })
        .collect::<Vec<_>>()
        .join(" ");
    let text = format!(
        "word {}\ndegree {}\nnormal form {nf}\nspot checks {} all zero\nbound {}\n",
        c.word, c.degree, c.spot_checks.count, c.bound
    );
    Ok(Rendered { name: "certify", json: to_json(&c), text, code: EXIT_OK })
}

fn cmd_lemmas(cfg: BatteryConfig) -> Result<Rendered> {
    let reports: Vec<BatteryReport> = run_batteries(cfg);
    let mut text = String::new();
    for r in &reports {
        let verdict = if r.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(text, "{verdict} {}: {} instances, {} failures", r.name, r.instances, r.failures);
        if let Some(f) = &r.first_failure {
            let _ = writeln!(text, "  first failure {f}");
        }
    }
    let ok = reports.iter().all(BatteryReport::passed);
    let code = if ok { EXIT_OK } else { EXIT_CONTRACT };
    Ok(Rendered {
        name: "lemmas",
        json: json!({ "seed": cfg.seed, "cases": cfg.cases, "batteries": reports, "all_passed": ok }),
        text,
        code,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CliOutcome {
        run_with_args(args)
    }

    #[test]
    fn reduce_examples() {
        assert!(run(&["reduce", "--n", "3", "yxyxx"]).stdout.contains("normal form +[0,1,2]"));
        assert!(run(&["reduce", "--n", "2", "xx"]).stdout.contains("normal form 0"));
        assert!(run(&["reduce", "--n", "2", "xy"]).stdout.contains("normal form -[0,1]"));
        assert!(run(&["reduce", "--n", "2", "x2 x1"]).stdout.contains("normal form +[0,1]"));
    }

    #[test]
    fn parse_failure_is_usage() {
        let out = run(&["reduce", "--n", "2", "xq"]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.contains("position"));
    }

    #[test]
    fn member_examples() {
        assert!(run(&["member", "--n", "2", "--m", "2", "--p", "2", "x1 x2 x1"]).stdout.contains("verdict member"));
        assert!(run(&["member", "--n", "2", "--m", "2", "--p", "2", "x1 x2"]).stdout.contains("verdict non-member"));
    }

    #[test]
    fn budget_is_inconclusive() {
        let out = run(&["member", "--n", "2", "--m", "2", "--budget", "1", "x1 x2 x1 x2"]);
        assert_eq!(out.code, EXIT_INCONCLUSIVE);
        assert!(out.stdout.contains("inconclusive: budget"));
    }

    #[test]
    fn config_validation() {
        assert_eq!(run(&["dnm", "--n", "2", "--p", "4"]).code, EXIT_USAGE);
        assert_eq!(run(&["dnm", "--n", "0"]).code, EXIT_USAGE);
        assert_eq!(run(&["dnm", "--n", "2", "--cap", "0"]).code, EXIT_USAGE);
        assert_eq!(run(&["certify", "--n", "9"]).code, EXIT_USAGE);
        assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(run(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn json_has_schema_version() {
        let out = run(&["dnm", "--n", "2", "--m", "2", "--p", "2", "--format", "json"]);
        assert_eq!(out.code, EXIT_OK);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["schema_version"], json!(SCHEMA_VERSION));
        assert_eq!(v["d"], json!(3));
    }
}
