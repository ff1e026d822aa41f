//! `superchar` command-line front end.
//!
//! Exit codes: 0 ok, 1 mathematical mismatch or failed check, 2 usage or
//! input error.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use superchar::characters::{character_from_numerator, path_side, pdc_side, verify_main_theorem, SimpleCharacter};
use superchar::corpus::{classified, strictly_dominant_weights};
use superchar::diagrams::{build_diagram, diagram_report, render_ascii, uparrow};
use superchar::lemmas::{run_lemma, Lemma};
use superchar::paths::{enumerate_paths, kl_polynomial, KlPolynomial};
use superchar::{Error, Shape, ShiftedWeight};

#[derive(Parser, Debug)]
#[command(name = "superchar", version, about = "Exact gl(m|n) characters from cap diagrams, paths and the PDC formula")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Root height cut D for series and weight enumeration.
    #[arg(long, global = true, env = "SUPERCHAR_MAX_HEIGHT", default_value_t = 8)]
    height: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for --format json.
    #[arg(long, global = true)]
    json: bool,
    /// Weights are given as λ; ρ is added before use.
    #[arg(long, global = true)]
    unshifted: bool,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Paths,
    Pdc,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weight diagram, caps, components and classification of λ^ρ.
    Diagram {
        weight: Option<String>,
        #[arg(long = "weight", conflicts_with = "weight")]
        weight_flag: Option<String>,
    },
    /// Every strictly dominant λ^ρ in an entry window, with its flags.
    Corpus {
        /// m,n,lo,hi
        window: Option<String>,
        #[arg(long = "corpus", conflicts_with = "window")]
        corpus_flag: Option<String>,
        /// Only list PDC weights.
        #[arg(long)]
        pdc_only: bool,
    },
    /// All right-move paths from D_μ to D_λ.
    Paths {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// The polynomial Σ q^{length} over paths from D_μ to D_λ.
    Kl {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Character of L(λ) truncated at the height cut.
    Char {
        #[arg(long)]
        weight: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Compare the path formula with the closed formula, or run a lemma
    /// check. Emits one JSON line per weight.
    Verify {
        #[arg(long, conflicts_with = "corpus", required_unless_present = "corpus")]
        weight: Option<String>,
        /// m,n,lo,hi
        #[arg(long)]
        corpus: Option<String>,
        #[arg(long)]
        lemma: Option<String>,
    },
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Input(String),
    Check(String),
    /// stdout was closed early, e.g. by `head`
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) | Error::NonIntegerCoefficient { .. } => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Check(format!("write failed: {e}"))
    }
}

type CmdResult = Result<(), Failure>;

struct Ctx {
    height: u32,
    json: bool,
    unshifted: bool,
    jobs: usize,
}

impl Ctx {
    fn weight(&self, s: &str) -> Result<ShiftedWeight, Failure> {
        let w: ShiftedWeight = s.parse()?;
        Ok(if self.unshifted { ShiftedWeight::from_unshifted(&w)? } else { w })
    }
}

fn parse_window(s: &str) -> Result<(Shape, i64, i64), Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Failure::Input(format!("corpus window {s:?} must look like m,n,lo,hi"));
    if parts.len() != 4 {
        return Err(bad());
    }
    let m: usize = parts[0].parse().map_err(|_| bad())?;
    let n: usize = parts[1].parse().map_err(|_| bad())?;
    let lo: i64 = parts[2].parse().map_err(|_| bad())?;
    let hi: i64 = parts[3].parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(Failure::Input(format!("empty corpus window: lo = {lo} > hi = {hi}")));
    }
    Ok((Shape::new(m, n)?, lo, hi))
}

fn print_json(out: &mut impl Write, v: &Value) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string(v).expect("values serialize"))
}

fn cmd_diagram(ctx: &Ctx, weight: &str, out: &mut impl Write) -> CmdResult {
    let lambda = ctx.weight(weight)?;
    let report = diagram_report(&lambda)?;
    if ctx.json {
        print_json(out, &serde_json::to_value(&report).expect("report serializes"))?;
        return Ok(());
    }
    let d = build_diagram(&lambda)?;
    writeln!(out, "λ^ρ = {lambda}")?;
    write!(out, "{}", render_ascii(&d)?)?;
    let caps: Vec<String> = report.caps.iter().map(|[v, w]| format!("({v},{w})")).collect();
    writeln!(out, "caps: {}", if caps.is_empty() { "none".to_string() } else { caps.join(" ") })?;
    let comps = &report.components;
    if !comps.components.is_empty() {
        let t: Vec<String> = comps.t.iter().map(|x| x.to_string()).collect();
        let s: Vec<String> = comps.s.iter().map(|x| x.to_string()).collect();
        writeln!(
            out,
            "components: {}  t = ({})  s = ({})  t_λ = {}",
            comps.count(),
            t.join(","),
            s.join(","),
            comps.t_lambda
        )?;
    }
    writeln!(out, "flags: {}", report.flags)?;
    if report.flags.pdc {
        writeln!(out, "⇑ = {}", uparrow(&lambda)?)?;
    }
    Ok(())
}

fn cmd_corpus(ctx: &Ctx, window: &str, pdc_only: bool, out: &mut impl Write) -> CmdResult {
    let (shape, lo, hi) = parse_window(window)?;
    for (w, flags) in classified(shape, lo, hi)? {
        if pdc_only && !flags.pdc {
            continue;
        }
        if ctx.json {
            print_json(out, &json!({ "weight": w.to_string(), "flags": flags }))?;
        } else {
            writeln!(out, "{w}\t{flags}")?;
        }
    }
    Ok(())
}

fn cmd_paths(ctx: &Ctx, from: &str, to: &str, out: &mut impl Write) -> CmdResult {
    let (mu, lambda) = (ctx.weight(from)?, ctx.weight(to)?);
    let paths = enumerate_paths(&mu, &lambda)?;
    if ctx.json {
        print_json(
            out,
            &json!({
                "from": mu.to_string(),
                "to": lambda.to_string(),
                "paths": paths,
                "kl": KlPolynomial::from_paths(&paths).to_string(),
            }),
        )?;
        return Ok(());
    }
    for p in &paths {
        writeln!(out, "{p}")?;
    }
    writeln!(out, "{} path{}", paths.len(), if paths.len() == 1 { "" } else { "s" })?;
    Ok(())
}

fn cmd_kl(ctx: &Ctx, from: &str, to: &str, out: &mut impl Write) -> CmdResult {
    let (mu, lambda) = (ctx.weight(from)?, ctx.weight(to)?);
    let k = kl_polynomial(&lambda, &mu)?;
    if ctx.json {
        print_json(
            out,
            &json!({ "from": mu.to_string(), "to": lambda.to_string(), "kl": k.to_string(), "coefficients": k.coefficients }),
        )?;
    } else {
        writeln!(out, "{k}")?;
    }
    Ok(())
}

fn character_json(ch: &SimpleCharacter) -> Value {
    json!({ "terms": ch.series.records(), "complete": ch.complete, "dim": ch.dim })
}

fn write_character(out: &mut impl Write, label: &str, ch: &SimpleCharacter, height: u32) -> io::Result<()> {
    writeln!(out, "{label}")?;
    for t in ch.series.records() {
        writeln!(out, "  {:>4}  e^({})  height {}", t.coeff, t.weight, t.height)?;
    }
    match ch.dim {
        Some(d) => writeln!(out, "dim {d}"),
        None => writeln!(out, "dim incomplete at height {height}"),
    }
}

fn cmd_char(ctx: &Ctx, weight: &str, method: Method, out: &mut impl Write) -> CmdResult {
    let lambda = ctx.weight(weight)?;
    let lhs = matches!(method, Method::Paths | Method::Both).then(|| path_side(&lambda, ctx.height)).transpose()?;
    let rhs = matches!(method, Method::Pdc | Method::Both).then(|| pdc_side(&lambda, ctx.height)).transpose()?;
    let mismatches = match (&lhs, &rhs) {
        (Some(l), Some(r)) => l.differences(r)?,
        _ => Vec::new(),
    };
    let numerator = lhs.as_ref().or(rhs.as_ref()).expect("some method ran");
    let ch = character_from_numerator(&lambda, numerator)?;
    let method_name = format!("{method:?}").to_lowercase();
    let label = format!("ch L(λ), λ^ρ = {lambda}, height {}, method {method_name}", ctx.height);

    if ctx.json {
        let mut v = character_json(&ch);
        v["weight"] = json!(lambda.to_string());
        v["height"] = json!(ctx.height);
        v["method"] = json!(method_name);
        v["mismatches"] = json!(mismatches.iter().map(|(w, l, r)| json!([w.to_string(), l, r])).collect::<Vec<_>>());
        print_json(out, &v)?;
    } else {
        write_character(out, &label, &ch, ctx.height)?;
        if method == Method::Both {
            match mismatches.len() {
                0 => writeln!(out, "path side and closed formula agree")?,
                k => writeln!(out, "{k} coefficient mismatches between path side and closed formula")?,
            }
        }
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} mismatches for {lambda}", mismatches.len())))
    }
}

fn verify_one(lambda: &ShiftedWeight, lemma: Option<Lemma>, height: u32) -> (Value, bool) {
    let outcome = match lemma {
        Some(l) => run_lemma(l, lambda, height).map(|r| (serde_json::to_value(&r).expect("serializes"), r.passed())),
        None => {
            verify_main_theorem(lambda, height).map(|r| (serde_json::to_value(&r).expect("serializes"), r.verified()))
        }
    };
    match outcome {
        Ok(pair) => pair,
        Err(e) => (json!({ "weight": lambda.to_string(), "error": e.to_string() }), false),
    }
}

fn cmd_verify(
    ctx: &Ctx,
    weight: Option<&str>,
    corpus: Option<&str>,
    lemma: Option<&str>,
    out: &mut impl Write,
) -> CmdResult {
    let lemma = lemma.map(str::parse::<Lemma>).transpose()?;
    if let Some(s) = weight {
        let lambda = ctx.weight(s)?;
        // refuse non-PDC input up front so it reads as a usage error
        if lemma.is_none_or(Lemma::needs_pdc) && !superchar::diagrams::classify(&build_diagram(&lambda)?).pdc {
            return Err(Error::NotPdc(lambda.to_string()).into());
        }
        let (v, ok) = verify_one(&lambda, lemma, ctx.height);
        print_json(out, &v)?;
        return if ok { Ok(()) } else { Err(Failure::Check(format!("{lambda} failed"))) };
    }

    let (shape, lo, hi) = parse_window(corpus.expect("clap enforces one of the two"))?;
    let weights: Vec<ShiftedWeight> = if lemma.is_some_and(|l| !l.needs_pdc()) {
        strictly_dominant_weights(shape, lo, hi)?
    } else {
        classified(shape, lo, hi)?.into_iter().filter(|(_, f)| f.pdc).map(|(w, _)| w).collect()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(ctx.jobs)
        .build()
        .map_err(|e| Failure::Input(format!("cannot start {} workers: {e}", ctx.jobs)))?;
    let chunk = pool.current_num_threads().max(1) * 4;
    let mut failed = 0;
    for batch in weights.chunks(chunk) {
        let results: Vec<(Value, bool)> =
            pool.install(|| batch.par_iter().map(|w| verify_one(w, lemma, ctx.height)).collect());
        for (v, ok) in results {
            failed += usize::from(!ok);
            print_json(out, &v)?;
        }
        out.flush()?;
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{failed} of {} weights failed", weights.len())))
    }
}

fn run(cli: Cli) -> CmdResult {
    let ctx = Ctx {
        height: cli.opts.height,
        json: cli.opts.json || cli.opts.format == Format::Json,
        unshifted: cli.opts.unshifted,
        jobs: cli.opts.jobs,
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match &cli.command {
        Command::Diagram { weight, weight_flag } => {
            let w = weight
                .as_deref()
                .or(weight_flag.as_deref())
                .ok_or_else(|| Failure::Input("diagram needs a weight".into()))?;
            cmd_diagram(&ctx, w, &mut out)
        }
        Command::Corpus { window, corpus_flag, pdc_only } => {
            let w = window
                .as_deref()
                .or(corpus_flag.as_deref())
                .ok_or_else(|| Failure::Input("corpus needs a window m,n,lo,hi".into()))?;
            cmd_corpus(&ctx, w, *pdc_only, &mut out)
        }
        Command::Paths { from, to } => cmd_paths(&ctx, from, to, &mut out),
        Command::Kl { from, to } => cmd_kl(&ctx, from, to, &mut out),
        Command::Char { weight, method } => cmd_char(&ctx, weight, *method, &mut out),
        Command::Verify { weight, corpus, lemma } => {
            cmd_verify(&ctx, weight.as_deref(), corpus.as_deref(), lemma.as_deref(), &mut out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("failed: {msg}");
            ExitCode::from(1)
        }
    }
}
