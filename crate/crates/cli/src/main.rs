use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use kframe::cocycle::{k_cocycle, tau1};
use kframe::expansion::{make_default_w3s, Expansion};
use kframe::mcg::parse_phi;
use kframe::qform::{from_expansion, morita_d, QuadraticForm};
use kframe::scalar::RingSpec;
use kframe::suite::{applicable, parse_identities, run_suite, Fixed, Report, SuiteConfig};
use kframe::word::{SurfaceSig, Word};

#[derive(Parser)]
#[command(name = "kframe", version, about = "Exact checks of framing and expansion cocycles on surfaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run seeded verification suites.
    Verify(VerifyArgs),
    /// Evaluate a single object.
    Eval {
        #[command(subcommand)]
        what: EvalCmd,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "Q")]
    ring: RingSpec,
    #[arg(long, default_value_t = 2)]
    g: usize,
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    cases: usize,
    /// Comma-separated identity names, or `all` for every one that applies.
    #[arg(long)]
    identities: String,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Expansion JSON file.
    #[arg(long)]
    theta: Option<PathBuf>,
    /// `d`, `default-theta` or a form JSON file.
    #[arg(long)]
    form: Option<String>,
    /// Mapping class, e.g. `twist_a:1 * twist_b:2^-1`.
    #[arg(long)]
    phi: Option<String>,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value = "Z")]
    ring: RingSpec,
    #[arg(long)]
    g: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Print a JSON string instead of plain text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum EvalCmd {
    /// Reduced form of a word.
    Word {
        #[arg(long)]
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// `θ(w)` up to the truncation degree.
    Expansion {
        /// `default` or an expansion JSON file.
        #[arg(long, default_value = "default")]
        theta: String,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// `q(w)`.
    Qform {
        #[arg(long)]
        form: String,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// `τ(φ)` as an element of `Hom(H, H⊗H)`.
    Tau {
        #[arg(long, default_value = "default")]
        theta: String,
        #[arg(long)]
        phi: String,
        #[command(flatten)]
        common: Common,
    },
    /// `k_q(φ)`.
    K {
        #[arg(long)]
        form: String,
        #[arg(long)]
        phi: String,
        #[command(flatten)]
        common: Common,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_theta(spec: &str, sig: SurfaceSig, ring: RingSpec) -> Result<Expansion> {
    if spec == "default" {
        return Ok(make_default_w3s(sig, ring)?);
    }
    Ok(Expansion::from_json(&read(Path::new(spec))?)?)
}

fn load_form(spec: &str, sig: SurfaceSig, ring: RingSpec) -> Result<QuadraticForm> {
    Ok(match spec {
        "d" => morita_d(sig, ring)?,
        "default-theta" => from_expansion(&make_default_w3s(sig, ring)?)?,
        path => QuadraticForm::from_json(&read(Path::new(path))?)?,
    })
}

/// Smallest `(g, n)` covering the generators named in words and twist
/// expressions.
fn infer_sig(exprs: &[&str]) -> (usize, usize) {
    let (mut g, mut n) = (1, 0);
    for tok in exprs.iter().flat_map(|e| e.split(|c: char| c.is_whitespace() || c == '*')) {
        let tok = tok.split('^').next().unwrap_or("").trim_end_matches('\'');
        if let Some((name, k)) = tok.split_once(':') {
            if let Ok(k) = k.parse::<usize>() {
                g = g.max(if name == "mix" { k + 1 } else { k });
            }
        } else if let (Some(c), Ok(k)) = (tok.chars().next(), tok.get(1..).unwrap_or("").parse::<usize>()) {
            match c {
                'a' | 'b' => g = g.max(k),
                'd' => n = n.max(k),
                _ => {}
            }
        }
    }
    (g, n)
}

fn file_sig(spec: &str) -> Option<SurfaceSig> {
    let text = fs::read_to_string(spec).ok()?;
    if let Ok(t) = Expansion::from_json(&text) {
        return Some(t.sig());
    }
    QuadraticForm::from_json(&text).ok().map(|q| q.sig())
}

/// Explicit `--g/--n`, else the signature of a loaded file, else inferred.
fn resolve_sig(c: &Common, files: &[&str], exprs: &[&str]) -> SurfaceSig {
    let from_file = files.iter().filter(|f| !matches!(**f, "d" | "default" | "default-theta")).find_map(|f| file_sig(f));
    let (ig, inn) = infer_sig(exprs);
    let base = from_file.unwrap_or(SurfaceSig::new(ig, inn));
    SurfaceSig::new(c.g.unwrap_or(base.g), c.n.unwrap_or(base.n))
}

fn eval(what: EvalCmd) -> Result<(String, bool)> {
    Ok(match what {
        EvalCmd::Word { word, common } => {
            let sig = resolve_sig(&common, &[], &[&word]);
            (Word::parse(sig, &word)?.to_string(), common.json)
        }
        EvalCmd::Expansion { theta, word, common } => {
            let sig = resolve_sig(&common, &[&theta], &[&word]);
            let th = load_theta(&theta, sig, common.ring)?;
            (th.eval(&Word::parse(th.sig(), &word)?)?.to_string(), common.json)
        }
        EvalCmd::Qform { form, word, common } => {
            let sig = resolve_sig(&common, &[&form], &[&word]);
            let q = load_form(&form, sig, common.ring)?;
            (q.eval(&Word::parse(q.sig(), &word)?)?.to_string(), common.json)
        }
        EvalCmd::Tau { theta, phi, common } => {
            let sig = resolve_sig(&common, &[&theta], &[&phi]);
            let th = load_theta(&theta, sig, common.ring)?;
            (tau1(&th, &parse_phi(th.sig(), &phi)?)?.to_string(), common.json)
        }
        EvalCmd::K { form, phi, common } => {
            let sig = resolve_sig(&common, &[&form], &[&phi]);
            let q = load_form(&form, sig, common.ring)?;
            (k_cocycle(&q, &parse_phi(q.sig(), &phi)?)?.to_string(), common.json)
        }
    })
}

fn summary(report: &Report) -> String {
    let mut lines = Vec::new();
    for id in &report.config.identities {
        let rs: Vec<_> = report.results.iter().filter(|r| r.identity == id.name()).collect();
        let ok = rs.iter().filter(|r| r.pass).count();
        let mut line = format!("{:<13} {ok}/{} pass", id.name(), rs.len());
        if let Some(bad) = rs.iter().find(|r| !r.pass) {
            line.push_str(&format!("  first failure: case {} defect {}", bad.case, bad.defect));
        } else if id.is_expected_failure() || id.name() == "certificate" {
            line.push_str(&format!("  case 0: {}", rs[0].defect));
        }
        lines.push(line);
    }
    lines.join("\n")
}

fn verify(a: VerifyArgs) -> Result<ExitCode> {
    let ids = if a.identities.trim() == "all" {
        applicable(a.ring, SurfaceSig::new(a.g, a.n))
    } else {
        parse_identities(&a.identities)?
    };
    let mut cfg = SuiteConfig::new(a.ring, a.g, a.n, a.seed, a.cases, ids)?;
    let sig = cfg.sig();
    let mut fixed = Fixed::default();
    if let Some(p) = &a.theta {
        fixed.theta = Some(Expansion::from_json(&read(p)?)?);
        cfg.theta = Some(p.display().to_string());
    }
    if let Some(f) = &a.form {
        fixed.form = Some(load_form(f, sig, a.ring)?);
        cfg.form = Some(f.clone());
    }
    if let Some(p) = &a.phi {
        fixed.phi = Some(parse_phi(sig, p)?);
        cfg.phi = Some(p.clone());
    }
    let report = run_suite(&cfg, &fixed)?;
    match &a.json {
        Some(path) => {
            fs::write(path, report.to_json()).with_context(|| format!("writing {}", path.display()))?;
            println!("{}", summary(&report));
        }
        None => println!("{}", report.to_json()),
    }
    if !report.all_pass() {
        eprintln!("verification failed");
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn run() -> Result<ExitCode> {
    match Cli::parse().cmd {
        Cmd::Verify(a) => verify(a),
        Cmd::Eval { what } => {
            let (value, json) = eval(what)?;
            if json {
                println!("{}", serde_json::to_string(&value)?);
            } else {
                println!("{value}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
