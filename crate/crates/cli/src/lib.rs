//! Command-line frontend for `swordgen`.
//!
//! [`parse_and_dispatch`] is the whole program; `main` only wires it to the
//! process streams. Exit codes: 0 success, 1 negative verdict (or an
//! incomplete run under `--expect-complete`), 2 malformed input, 3 size limit.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use swordgen::algob::{run_algorithm_b_with, verify_sequence, GreedyConfig, HaltReason};
use swordgen::dot::{export_dot, DotPayload};
use swordgen::oracle::{self, formula_count};
use swordgen::patterns::parse_pattern_list;
use swordgen::stirling::{format_trace, generate_loopless, stirling_sequence, trace};
use swordgen::trees::{hamilton_path, kcatalan_word_to_tree, stirling_word_to_tree};
use swordgen::zigzag::{semantic_zigzag, syntactic_zigzag};
use swordgen::{
    classify_move, BumpMove, Error, GrayCodeReport, GrayCodeRun, LanguageSpec, Pattern, SWord,
    Shape, DEFAULT_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_SIZE_LIMIT: i32 = 3;

/// Version tag of every JSON document.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "swordgen",
    version,
    about = "Gray codes for pattern-avoiding s-words"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List a language in Gray-code order.
    Generate(GenerateArgs),
    /// Generate and check the Gray-code requirements.
    Verify(GenerateArgs),
    /// Count a language.
    Count(CountArgs),
    /// Print the variable trace of the loopless generator.
    Trace(TraceArgs),
    /// Test the zig-zag property of a pattern set.
    Zigzag(ZigzagArgs),
    /// Map the listing onto trees.
    Trees(TreesArgs),
    /// Print the inversion-vector Hamilton path.
    Path(PathArgs),
    /// Time the loopless generator.
    Bench(BenchArgs),
}

#[derive(Clone, Debug)]
struct PatternSet(Vec<Pattern>);

impl FromStr for PatternSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        parse_pattern_list(s).map(PatternSet)
    }
}

#[derive(Args, Debug)]
struct LanguageArgs {
    /// Multiplicities, e.g. 2,1,3 or 2^3.
    #[arg(long)]
    shape: Shape,
    /// Comma-separated patterns; empty for the full language.
    #[arg(long, default_value = "")]
    avoid: PatternSet,
    /// Enumeration cap (overrides SWORDGEN_CAP).
    #[arg(long)]
    cap: Option<usize>,
}

impl LanguageArgs {
    fn spec(&self) -> LanguageSpec {
        LanguageSpec::new(self.shape.clone(), self.avoid.0.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Greedy,
    Loopless,
    OracleLex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(flatten)]
    lang: LanguageArgs,
    #[arg(long, value_enum)]
    engine: Option<Engine>,
    /// Start word for the greedy engine.
    #[arg(long)]
    start: Option<SWord>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Exit 1 unless the run visits the whole language.
    #[arg(long)]
    expect_complete: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Oracle,
    Formula,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[command(flatten)]
    lang: LanguageArgs,
    #[arg(long, value_enum, default_value = "oracle")]
    method: Method,
}

#[derive(Args, Debug)]
struct TraceArgs {
    #[arg(long)]
    shape: Shape,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Semantic,
    Syntactic,
    Both,
}

#[derive(Args, Debug)]
struct ZigzagArgs {
    /// Needed by the semantic check only.
    #[arg(long)]
    shape: Option<Shape>,
    #[arg(long, default_value = "")]
    avoid: PatternSet,
    #[arg(long, value_enum, default_value = "both")]
    mode: Mode,
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TreeKind {
    Stirling,
    Kary,
}

#[derive(Args, Debug)]
struct TreesArgs {
    #[arg(long)]
    shape: Shape,
    #[arg(long, value_enum, default_value = "stirling")]
    kind: TreeKind,
    /// Arity for `kary`; defaults to the shape's multiplicity plus one.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args, Debug)]
struct PathArgs {
    #[arg(long)]
    shape: Shape,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long)]
    shape: Shape,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// The JSON form of a generated run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunDocument {
    pub format: u32,
    pub shape: Shape,
    pub patterns: Vec<Pattern>,
    pub engine: Engine,
    pub words: Vec<SWord>,
    /// Absent for the lexicographic oracle listing.
    pub moves: Option<Vec<BumpMove>>,
    pub complete: bool,
}

impl RunDocument {
    pub fn new(run: &GrayCodeRun, engine: Engine, with_moves: bool) -> Self {
        RunDocument {
            format: FORMAT_VERSION,
            shape: run.shape.clone(),
            patterns: run
                .spec
                .as_ref()
                .map(|s| s.patterns().to_vec())
                .unwrap_or_default(),
            engine,
            words: run.words.clone(),
            moves: with_moves.then(|| run.moves.clone()),
            complete: run.complete,
        }
    }
}

#[derive(Serialize)]
struct VerifyDocument<'a> {
    format: u32,
    shape: &'a Shape,
    patterns: &'a [Pattern],
    engine: Engine,
    words: usize,
    complete: bool,
    report: &'a GrayCodeReport,
    passed: bool,
}

#[derive(Serialize)]
struct TraceDocument<'a> {
    format: u32,
    shape: &'a Shape,
    rows: &'a [swordgen::stirling::TraceRow],
}

#[derive(Serialize)]
struct TreesDocument<'a> {
    format: u32,
    shape: &'a Shape,
    kind: &'a str,
    k: Option<usize>,
    words: &'a [SWord],
    trees: Vec<String>,
}

#[derive(Serialize)]
struct BenchTiming {
    seconds: f64,
    words_per_sec: f64,
}

#[derive(Serialize)]
struct BenchDocument<'a> {
    format: u32,
    shape: &'a Shape,
    words: u64,
    formula: String,
    timing: BenchTiming,
}

enum Failure {
    Negative,
    Lib(Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<(), Failure>;

/// Parses `argv` (program name first), runs the command and returns the
/// exit code.
pub fn parse_and_dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_MALFORMED
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Generate(a) => generate(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Count(a) => count(a, out),
        Command::Trace(a) => trace_cmd(a, out),
        Command::Zigzag(a) => zigzag(a, out),
        Command::Trees(a) => trees(a, out),
        Command::Path(a) => path(a, out),
        Command::Bench(a) => bench(a, out),
    };
    let _ = out.flush();
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Negative) => EXIT_NEGATIVE,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::SizeLimit { .. } => EXIT_SIZE_LIMIT,
                _ => EXIT_MALFORMED,
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_MALFORMED
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_MALFORMED
        }
    }
}

/// `--cap`, then `SWORDGEN_CAP`, then the library default.
fn resolve_cap(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("SWORDGEN_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("SWORDGEN_CAP is not a number: {v:?}"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn stirling_patterns() -> Vec<Pattern> {
    vec![Pattern::new(vec![2, 1, 2]).expect("212 is a pattern")]
}

/// Loopless when the patterns are exactly {212}, greedy otherwise.
pub fn default_engine(patterns: &[Pattern]) -> Engine {
    if patterns == stirling_patterns().as_slice() {
        Engine::Loopless
    } else {
        Engine::Greedy
    }
}

fn check_size(count: &BigUint, cap: usize) -> Result<(), Error> {
    if *count > BigUint::from(cap) {
        return Err(Error::SizeLimit {
            count: count.clone(),
            cap,
        });
    }
    Ok(())
}

/// The loopless listing as a run, with each step classified as a bump.
pub fn loopless_run(shape: &Shape, cap: usize) -> Result<GrayCodeRun, Error> {
    check_size(&oracle::stirling_count(shape), cap)?;
    let words = stirling_sequence(shape);
    let mut moves = Vec::with_capacity(words.len().saturating_sub(1));
    for pair in words.windows(2) {
        let mv = classify_move(&pair[0], &pair[1])?
            .ok_or_else(|| Error::Domain(format!("{} -> {} is not a bump", pair[0], pair[1])))?;
        moves.push(mv);
    }
    Ok(GrayCodeRun {
        shape: shape.clone(),
        spec: Some(LanguageSpec::new(shape.clone(), stirling_patterns())),
        words,
        moves,
        complete: true,
        halted: HaltReason::Exhausted,
    })
}

/// Runs the requested engine and returns the run with the engine used.
fn build_run(a: &GenerateArgs) -> Result<(GrayCodeRun, Engine), Failure> {
    let spec = a.lang.spec();
    let cap = resolve_cap(a.lang.cap)?;
    let engine = a.engine.unwrap_or_else(|| default_engine(spec.patterns()));
    if a.start.is_some() && engine != Engine::Greedy {
        return Err(Failure::Usage("--start requires the greedy engine".into()));
    }
    let run = match engine {
        Engine::Greedy => {
            let config = GreedyConfig {
                cap,
                ..GreedyConfig::default()
            };
            run_algorithm_b_with(&spec, a.start.as_ref(), &config)?
        }
        Engine::Loopless => {
            if !spec.patterns().is_empty() && !spec.is_stirling() {
                return Err(Failure::Usage(
                    "the loopless engine only generates the 212-avoiding language".into(),
                ));
            }
            loopless_run(&spec.shape, cap)?
        }
        Engine::OracleLex => {
            let lang = oracle::language(&spec, cap)?;
            GrayCodeRun {
                shape: spec.shape.clone(),
                spec: Some(spec),
                words: lang.words,
                moves: Vec::new(),
                complete: true,
                halted: HaltReason::Exhausted,
            }
        }
    };
    Ok((run, engine))
}

fn generate(a: &GenerateArgs, out: &mut dyn Write) -> Outcome {
    let (run, engine) = build_run(a)?;
    match a.format {
        Format::Text => {
            for w in &run.words {
                writeln!(out, "{w}")?;
            }
        }
        Format::Json => {
            let doc = RunDocument::new(&run, engine, engine != Engine::OracleLex);
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)?;
        }
        Format::Dot => out.write_all(export_dot(DotPayload::Run(&run)).as_bytes())?,
    }
    if a.expect_complete && !run.complete {
        return Err(Failure::Negative);
    }
    Ok(())
}

fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verify(a: &GenerateArgs, out: &mut dyn Write) -> Outcome {
    let (run, engine) = build_run(a)?;
    let spec = run.spec.clone().expect("built runs carry their spec");
    let cap = resolve_cap(a.lang.cap)?;
    let moves = (engine != Engine::OracleLex).then_some(run.moves.as_slice());
    let report = verify_sequence(&run.shape, &spec, &run.words, moves, cap);
    let passed = report.passed() && (!a.expect_complete || run.complete);
    match a.format {
        Format::Json => {
            let doc = VerifyDocument {
                format: FORMAT_VERSION,
                shape: &run.shape,
                patterns: spec.patterns(),
                engine,
                words: run.words.len(),
                complete: run.complete,
                report: &report,
                passed,
            };
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)?;
        }
        Format::Text | Format::Dot => {
            writeln!(out, "words: {}", run.words.len())?;
            writeln!(out, "complete: {}", flag(run.complete))?;
            writeln!(out, "all members: {}", flag(report.all_member))?;
            if let Some(k) = report.first_nonmember {
                writeln!(out, "  first non-member at {k}: {}", run.words[k])?;
            }
            writeln!(out, "all distinct: {}", flag(report.all_distinct))?;
            if let Some((j, k)) = report.first_duplicate {
                writeln!(out, "  {} repeats at {j} and {k}", run.words[k])?;
            }
            match report.exhaustive {
                Some(e) => writeln!(out, "exhaustive: {}", flag(e))?,
                None => writeln!(out, "exhaustive: unknown (language exceeds the cap)")?,
            }
            if let Some(w) = &report.first_missing {
                writeln!(out, "  missing: {w}")?;
            }
            writeln!(out, "single bumps: {}", flag(report.moves_valid))?;
            if let Some(k) = report.first_bad_move {
                writeln!(out, "  step {k}: {} -> {}", run.words[k], run.words[k + 1])?;
            }
            writeln!(
                out,
                "transpositions only: {}",
                flag(report.transpositions_only)
            )?;
            if let Some(k) = report.first_non_transposition {
                writeln!(
                    out,
                    "  first longer move at step {k}: {}",
                    run.moves.get(k).map_or(String::new(), |m| m.to_string())
                )?;
            }
            writeln!(out, "verdict: {}", if passed { "PASS" } else { "FAIL" })?;
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn count(a: &CountArgs, out: &mut dyn Write) -> Outcome {
    let spec = a.lang.spec();
    let n = match a.method {
        Method::Formula => formula_count(&spec)?,
        Method::Oracle => oracle::count(&spec),
    };
    writeln!(out, "{n}")?;
    Ok(())
}

fn trace_cmd(a: &TraceArgs, out: &mut dyn Write) -> Outcome {
    let rows = trace(&a.shape);
    match a.format {
        Format::Json => {
            let doc = TraceDocument {
                format: FORMAT_VERSION,
                shape: &a.shape,
                rows: &rows,
            };
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)?;
        }
        Format::Text => out.write_all(format_trace(&rows).as_bytes())?,
        Format::Dot => return Err(Failure::Usage("trace has no dot format".into())),
    }
    Ok(())
}

fn zigzag(a: &ZigzagArgs, out: &mut dyn Write) -> Outcome {
    let patterns = &a.avoid.0;
    let mut positive = true;
    if matches!(a.mode, Mode::Syntactic | Mode::Both) {
        let ok = syntactic_zigzag(patterns);
        writeln!(
            out,
            "syntactic: {}",
            if ok { "zig-zag" } else { "not zig-zag" }
        )?;
        positive &= ok;
    }
    if matches!(a.mode, Mode::Semantic | Mode::Both) {
        let shape = a
            .shape
            .clone()
            .ok_or_else(|| Failure::Usage("the semantic check needs --shape".into()))?;
        let spec = LanguageSpec::new(shape, patterns.clone());
        let verdict = semantic_zigzag(&spec, resolve_cap(a.cap)?)?;
        writeln!(
            out,
            "semantic: {}",
            if verdict.closed {
                "closed under maximum jumps"
            } else {
                "not closed"
            }
        )?;
        if let Some(c) = &verdict.counterexample {
            writeln!(
                out,
                "counterexample: {} jump {} at {} gives {}",
                c.word, c.dir, c.index, c.result
            )?;
        }
        positive &= verdict.closed;
    }
    if positive {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn kary_arity(shape: &Shape, k: Option<usize>) -> Result<usize, Failure> {
    let r = shape
        .regular_multiplicity()
        .ok_or_else(|| Failure::Usage(format!("shape {shape} is not of the form (k-1)^m")))?;
    match k {
        Some(k) if k != r + 1 => Err(Failure::Usage(format!(
            "shape {shape} has multiplicity {r}, which needs k = {}",
            r + 1
        ))),
        _ => Ok(r + 1),
    }
}

fn trees(a: &TreesArgs, out: &mut dyn Write) -> Outcome {
    let cap = resolve_cap(a.cap)?;
    let (words, k, rendered, payload_trees) = match a.kind {
        TreeKind::Stirling => {
            let run = loopless_run(&a.shape, cap)?;
            let trees = run
                .words
                .iter()
                .map(stirling_word_to_tree)
                .collect::<Result<Vec<_>, _>>()?;
            let rendered = trees.iter().map(|t| t.to_string()).collect();
            (run.words, None, rendered, Trees::S(trees))
        }
        TreeKind::Kary => {
            let k = kary_arity(&a.shape, a.k)?;
            let patterns = parse_pattern_list("121,132")?;
            let spec = LanguageSpec::new(a.shape.clone(), patterns);
            let config = GreedyConfig {
                cap,
                ..GreedyConfig::default()
            };
            let run = run_algorithm_b_with(&spec, None, &config)?;
            let trees = run
                .words
                .iter()
                .map(|w| kcatalan_word_to_tree(w, k))
                .collect::<Result<Vec<_>, _>>()?;
            let rendered = trees.iter().map(|t| t.render()).collect();
            (run.words, Some(k), rendered, Trees::K(trees))
        }
    };
    match a.format {
        Format::Text => {
            for (w, t) in words.iter().zip(&rendered) {
                writeln!(out, "{w} {t}")?;
            }
        }
        Format::Json => {
            let doc = TreesDocument {
                format: FORMAT_VERSION,
                shape: &a.shape,
                kind: match a.kind {
                    TreeKind::Stirling => "stirling",
                    TreeKind::Kary => "kary",
                },
                k,
                words: &words,
                trees: rendered,
            };
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)?;
        }
        Format::Dot => {
            let dot = match &payload_trees {
                Trees::S(t) => export_dot(DotPayload::STrees(t)),
                Trees::K(t) => export_dot(DotPayload::KTrees(t)),
            };
            out.write_all(dot.as_bytes())?;
        }
    }
    Ok(())
}

enum Trees {
    S(Vec<swordgen::trees::STree>),
    K(Vec<swordgen::trees::KTree>),
}

fn path(a: &PathArgs, out: &mut dyn Write) -> Outcome {
    let path = hamilton_path(&a.shape, resolve_cap(a.cap)?)?;
    match a.format {
        Format::Text => {
            for v in &path {
                writeln!(out, "{v}")?;
            }
        }
        Format::Json => {
            serde_json::to_writer(&mut *out, &path)?;
            writeln!(out)?;
        }
        Format::Dot => out.write_all(export_dot(DotPayload::Path(&path)).as_bytes())?,
    }
    Ok(())
}

fn bench(a: &BenchArgs, out: &mut dyn Write) -> Outcome {
    let formula = oracle::stirling_count(&a.shape);
    let started = Instant::now();
    let mut visits = 0u64;
    let reported = generate_loopless(&a.shape, |_| visits += 1);
    let seconds = started.elapsed().as_secs_f64();
    debug_assert_eq!(reported, visits);
    let rate = if seconds > 0.0 {
        visits as f64 / seconds
    } else {
        f64::INFINITY
    };
    match a.format {
        Format::Json => {
            let doc = BenchDocument {
                format: FORMAT_VERSION,
                shape: &a.shape,
                words: visits,
                formula: formula.to_string(),
                timing: BenchTiming {
                    seconds,
                    words_per_sec: rate,
                },
            };
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)?;
        }
        Format::Text | Format::Dot => {
            writeln!(out, "shape: {}", a.shape)?;
            writeln!(out, "words: {visits}")?;
            writeln!(out, "formula: {formula}")?;
            writeln!(out, "seconds: {seconds:.6}")?;
            writeln!(out, "words/sec: {rate:.0}")?;
        }
    }
    if formula == visits.into() {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn engine_defaults() {
        assert_eq!(default_engine(&stirling_patterns()), Engine::Loopless);
        assert_eq!(default_engine(&[]), Engine::Greedy);
        let both = parse_pattern_list("212,231").unwrap();
        assert_eq!(default_engine(&both), Engine::Greedy);
    }

    #[test]
    fn caps() {
        assert_eq!(resolve_cap(Some(7)).ok(), Some(7));
        assert!(check_size(&BigUint::from(10u8), 10).is_ok());
        assert!(matches!(
            check_size(&BigUint::from(11u8), 10),
            Err(Error::SizeLimit { cap: 10, .. })
        ));
    }

    #[test]
    fn loopless_moves_are_classified() {
        let run = loopless_run(&"2,1,3".parse().unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(run.moves.len(), 11);
        assert!(run.moves.iter().all(|m| m.distance == 1));
        assert!(matches!(
            loopless_run(&"2^6".parse().unwrap(), 10),
            Err(Error::SizeLimit { .. })
        ));
    }
}
