//! `gp`: command-line access to graph products of groups.
//!
//! Exit codes: 0 affirmative, 1 well-formed negative, 2 input error,
//! 3 resource limit.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gp_core::conjugacy::DEFAULT_BFS_LIMIT;
use gp_core::diagrams::file::DiagramFile;
use gp_core::diagrams::{CurveShape, Segment};
use gp_core::graph::dehn_class;
use gp_core::oracle::DEFAULT_CLF_CAP;
use gp_core::{
    ConjugacyError, GraphProduct, GroupSpecFile, Move, MoveKind, Oracle, OracleError, Word,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gp", version, about = "Word and conjugacy problems in graph products of groups")]
struct Cli {
    /// Group spec file. May also be given as the first positional argument.
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// Cap on states visited by the conjugacy shuffle search.
    #[arg(long, global = true)]
    limit_states: Option<usize>,
    /// Largest n accepted by clf-scan.
    #[arg(long, global = true)]
    oracle_cap: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Check a spec file and summarize it.
    Validate { args: Vec<String> },
    /// Graphically reduce a word.
    Reduce { args: Vec<String> },
    /// Canonical normal form of a word.
    Canon { args: Vec<String> },
    /// Decide whether two words are equal.
    Equal { args: Vec<String> },
    /// Decide conjugacy and print a verified conjugator.
    Conj { args: Vec<String> },
    /// Cyclic reduction with its conjugator and floating syllables.
    Cyclred { args: Vec<String> },
    /// Certified upper bound on the conjugacy length function at n.
    ClfBound { args: Vec<String> },
    /// Brute-force conjugacy length function for 1..=n against the bound.
    ClfScan {
        args: Vec<String>,
        /// Conjugator search radius; defaults to the certified bound.
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Symbolic Dehn function.
    Dehn { args: Vec<String> },
    /// Validate a diagram file and check the dual-curve laws.
    DiagramCheck {
        file: PathBuf,
        /// Outer boundary segment START:LEN for the crossing law.
        #[arg(long = "segment", value_parser = parse_segment)]
        segments: Vec<Segment>,
    },
    /// Apply an elementary move to a diagram file.
    DiagramMove {
        file: PathBuf,
        /// inversion, hexagonal, pentagonal, flip or square-reduction.
        kind: Option<String>,
        dart: Option<usize>,
        /// List the applicable moves instead.
        #[arg(long)]
        list: bool,
        /// Write the new diagram here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_segment(s: &str) -> Result<Segment, String> {
    let (a, b) = s.split_once(':').ok_or("expected START:LEN")?;
    let start = a.parse().map_err(|_| format!("bad start `{a}`"))?;
    let len = b.parse().map_err(|_| format!("bad length `{b}`"))?;
    Ok(Segment { start, len })
}

enum Failure {
    Input(String),
    Limit(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Limit(_) => 3,
        }
    }
}

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

/// Ordered key/value output. Text mode prints `key: value` lines, machine
/// mode one JSON object.
struct Output {
    fields: Vec<(String, Value)>,
    code: u8,
}

impl Output {
    fn new(verdict: &str, code: u8) -> Self {
        Self { fields: vec![("verdict".into(), json!(verdict))], code }
    }

    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    fn print(&self, format: Format) {
        match format {
            Format::Machine => {
                let map: serde_json::Map<String, Value> = self.fields.iter().cloned().collect();
                println!("{}", Value::Object(map));
            }
            Format::Text => {
                for (k, v) in &self.fields {
                    match v {
                        Value::String(s) => println!("{k}: {s}"),
                        Value::Array(items) if items.iter().all(Value::is_string) => {
                            println!("{k}:");
                            for i in items {
                                println!("  {}", i.as_str().unwrap_or_default());
                            }
                        }
                        other => println!("{k}: {other}"),
                    }
                }
            }
        }
    }
}

struct Ctx {
    product: GraphProduct,
    spec: GroupSpecFile,
    words: Vec<String>,
}

impl Ctx {
    fn word(&self, i: usize) -> Result<Word, Failure> {
        self.product.parse_word(&self.words[i]).map_err(|e| input(format!("word {}: {e}", i + 1)))
    }

    fn show(&self, w: &Word) -> String {
        self.product.format_word(w)
    }

    fn number(&self, i: usize) -> Result<u64, Failure> {
        self.words[i].parse().map_err(|_| input(format!("`{}` is not a non-negative integer", self.words[i])))
    }
}

fn load_spec(path: &Path) -> Result<(GroupSpecFile, GraphProduct), Failure> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let spec = GroupSpecFile::from_json(&text).map_err(input)?;
    let product = spec.build().map_err(input)?;
    Ok((spec, product))
}

/// Splits off the spec path (from `--spec` or the first positional) and
/// checks the remaining argument count.
fn context(cli_spec: &Option<PathBuf>, args: &[String], want: usize, usage: &str) -> Result<Ctx, Failure> {
    let (path, rest) = match cli_spec {
        Some(p) => (p.clone(), args.to_vec()),
        None => match args.split_first() {
            Some((p, rest)) => (PathBuf::from(p), rest.to_vec()),
            None => return Err(input(format!("missing spec file; usage: {usage}"))),
        },
    };
    if rest.len() != want {
        return Err(input(format!("expected {want} argument(s); usage: {usage}")));
    }
    let (spec, product) = load_spec(&path)?;
    Ok(Ctx { product, spec, words: rest })
}

fn conjugacy_failure(e: ConjugacyError) -> Failure {
    match e {
        ConjugacyError::BfsLimitExceeded { .. } => Failure::Limit(e.to_string()),
        other => Failure::Input(other.to_string()),
    }
}

fn oracle_failure(e: OracleError) -> Failure {
    match e {
        OracleError::CapExceeded { .. } => Failure::Limit(e.to_string()),
        OracleError::UnsupportedKind => Failure::Input(e.to_string()),
    }
}

fn vertex_names(p: &GraphProduct, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| p.graph().name(v).to_string()).collect()
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let bfs_limit = |ctx: &Ctx| cli.limit_states.or(ctx.spec.limits.bfs_states).unwrap_or(DEFAULT_BFS_LIMIT);
    match &cli.command {
        Command::Validate { args } => {
            let ctx = context(&cli.spec, args, 0, "gp validate SPEC")?;
            let g = ctx.product.graph();
            let groups: Vec<String> = (0..g.len())
                .map(|v| format!("{} {}", g.name(v), ctx.product.group(v).kind_name()))
                .collect();
            let edges: Vec<String> =
                g.edges().into_iter().map(|(u, v)| format!("{}-{}", g.name(u), g.name(v))).collect();
            Ok(Output::new("valid", 0)
                .with("vertices", groups)
                .with("edges", edges)
                .with("opposite-diameter", g.opposite_diameter()))
        }
        Command::Reduce { args } => {
            let ctx = context(&cli.spec, args, 1, "gp reduce SPEC WORD")?;
            let w = ctx.word(0)?;
            let r = ctx.product.reduce(&w);
            Ok(Output::new("reduced", 0)
                .with("reduced", ctx.show(&r))
                .with("length", ctx.product.reduced_length(&r)))
        }
        Command::Canon { args } => {
            let ctx = context(&cli.spec, args, 1, "gp canon SPEC WORD")?;
            let c = ctx.product.canonical_form(&ctx.word(0)?);
            Ok(Output::new("canonical", 0).with("canonical", ctx.show(c.as_word())))
        }
        Command::Equal { args } => {
            let ctx = context(&cli.spec, args, 2, "gp equal SPEC WORD1 WORD2")?;
            let (a, b) = (ctx.word(0)?, ctx.word(1)?);
            let (ca, cb) = (ctx.product.canonical_form(&a), ctx.product.canonical_form(&b));
            let equal = ca == cb;
            Ok(Output::new(if equal { "equal" } else { "not-equal" }, if equal { 0 } else { 1 })
                .with("canonical1", ctx.show(ca.as_word()))
                .with("canonical2", ctx.show(cb.as_word())))
        }
        Command::Conj { args } => {
            let ctx = context(&cli.spec, args, 2, "gp conj SPEC WORD1 WORD2")?;
            let (a, b) = (ctx.word(0)?, ctx.word(1)?);
            let p = &ctx.product;
            match p.are_conjugate(&a, &b, bfs_limit(&ctx)).map_err(conjugacy_failure)? {
                Some(wit) => {
                    // Re-parse the printed witness so the check covers the output.
                    let printed = ctx.show(&wit.conjugator);
                    let reparsed = p.parse_word(&printed).map_err(input)?;
                    if !p.verify_witness(&a, &b, &reparsed) {
                        return Err(input("internal: witness failed verification"));
                    }
                    Ok(Output::new("conjugate", 0)
                        .with("witness", printed)
                        .with("witness-length", p.reduced_length(&wit.conjugator))
                        .with("bound", wit.bound)
                        .with("floating", vertex_names(p, &wit.floating))
                        .with("verified", true))
                }
                None => Ok(Output::new("not-conjugate", 1)),
            }
        }
        Command::Cyclred { args } => {
            let ctx = context(&cli.spec, args, 1, "gp cyclred SPEC WORD")?;
            let p = &ctx.product;
            let w = ctx.word(0)?;
            let r = p.cyclically_reduce(&w);
            let f = p.floating_decomposition(&r.core).map_err(conjugacy_failure)?;
            let floats: Vec<String> = f.floats.iter().map(|s| p.format_syllable(s)).collect();
            Ok(Output::new("cyclically-reduced", 0)
                .with("conjugator", ctx.show(&r.conjugator))
                .with("core", ctx.show(&r.core))
                .with("non-floating", ctx.show(&f.core))
                .with("floats", floats)
                .with("floating", vertex_names(p, &f.float_vertices())))
        }
        Command::ClfBound { args } => {
            let ctx = context(&cli.spec, args, 1, "gp clf-bound SPEC N")?;
            let n = ctx.number(0)?;
            Ok(Output::new("bound", 0)
                .with("n", n)
                .with("opposite-diameter", ctx.product.graph().opposite_diameter())
                .with("bound", ctx.product.clf_upper_bound(n)))
        }
        Command::ClfScan { args, radius } => {
            let ctx = context(&cli.spec, args, 1, "gp clf-scan SPEC N")?;
            let n_max = ctx.number(0)?;
            let cap = cli.oracle_cap.or(ctx.spec.limits.oracle_cap).unwrap_or(DEFAULT_CLF_CAP);
            let oracle = Oracle::new(&ctx.product).with_clf_cap(cap);
            let mut rows = Vec::new();
            let mut within = true;
            for n in 1..=n_max {
                let bound = ctx.product.clf_upper_bound(n);
                let r = radius.unwrap_or(bound as usize);
                let measured = oracle.empirical_clf(n, r).map_err(oracle_failure)?;
                within &= measured <= bound;
                rows.push(format!("n={n} empirical={measured} bound={bound}"));
            }
            let (verdict, code) = if within { ("within-bound", 0) } else { ("bound-violated", 1) };
            Ok(Output::new(verdict, code).with("scan", rows))
        }
        Command::Dehn { args } => {
            let ctx = context(&cli.spec, args, 0, "gp dehn SPEC")?;
            let g = ctx.product.graph();
            let class = dehn_class(g, &ctx.product.infinite_flags());
            Ok(Output::new("classified", 0)
                .with("case", class.case.to_string())
                .with("dehn", class.expression(g)))
        }
        Command::DiagramCheck { file, segments } => diagram_check(file, segments),
        Command::DiagramMove { file, kind, dart, list, out } => {
            diagram_move(file, kind.as_deref(), *dart, *list, out.as_deref())
        }
    }
}

fn load_diagram(path: &Path) -> Result<DiagramFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    DiagramFile::from_json(&text).map_err(input)
}

fn diagram_check(path: &Path, segments: &[Segment]) -> Result<Output, Failure> {
    let file = load_diagram(path)?;
    let (product, diagram) = file.load_unchecked().map_err(input)?;
    if let Err(e) = diagram.validate(&product) {
        return Ok(Output::new("invalid", 1).with("reason", e.to_string()));
    }
    let report = diagram.check_dual_curve_laws(&product, segments);
    let curves = diagram.dual_curves();
    let count = |s: CurveShape| curves.iter().filter(|c| c.shape == s).count();
    let boundary = diagram.boundary_label();
    let laws: Vec<String> = report
        .results
        .iter()
        .map(|r| {
            let verdict = match (r.applicable, r.passed()) {
                (false, _) => "n/a".to_string(),
                (true, true) => "pass".to_string(),
                (true, false) => format!("FAIL ({})", r.violations.join("; ")),
            };
            format!("{}: {verdict}", r.law)
        })
        .collect();
    let (verdict, code) = if report.passed() { ("laws-hold", 0) } else { ("laws-violated", 1) };
    let mut out = Output::new(verdict, code)
        .with("vertices", diagram.vertex_count())
        .with("edges", diagram.edge_count())
        .with("faces", diagram.face_count())
        .with("outer-boundary", product.format_word(&boundary.outer));
    if let Some(inner) = &boundary.inner {
        out = out.with("inner-boundary", product.format_word(inner));
    }
    Ok(out
        .with("curves", curves.len())
        .with("trees", count(CurveShape::Tree))
        .with("circles", count(CurveShape::Circle))
        .with("other", count(CurveShape::Other))
        .with("laws", laws))
}

fn diagram_move(
    path: &Path,
    kind: Option<&str>,
    dart: Option<usize>,
    list: bool,
    out: Option<&Path>,
) -> Result<Output, Failure> {
    let file = load_diagram(path)?;
    let (product, diagram) = file.load().map_err(input)?;
    if list {
        let moves: Vec<String> = diagram.applicable_moves(&product).iter().map(Move::to_string).collect();
        return Ok(Output::new("moves", 0).with("moves", moves));
    }
    let (Some(kind), Some(dart)) = (kind, dart) else {
        return Err(input("usage: gp diagram-move FILE KIND DART | gp diagram-move FILE --list"));
    };
    let kind: MoveKind = kind.parse().map_err(input)?;
    let mv = Move::new(kind, dart);
    let moved = match diagram.apply_move(&product, mv) {
        Ok(d) => d,
        Err(e) => return Ok(Output::new("not-applicable", 1).with("reason", e.to_string())),
    };
    let doc = DiagramFile::of(&product, &moved);
    let mut result = Output::new("applied", 0)
        .with("move", mv.to_string())
        .with("faces", moved.face_count())
        .with("outer-boundary", product.format_word(&moved.boundary_label().outer));
    match out {
        Some(p) => {
            fs::write(p, doc.to_json() + "\n").map_err(|e| input(format!("{}: {e}", p.display())))?;
            result = result.with("written", p.display().to_string());
        }
        None => {
            result = result.with("diagram", serde_json::to_value(&doc).expect("serializable"));
        }
    }
    Ok(result)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            out.print(cli.format);
            ExitCode::from(out.code)
        }
        Err(f) => {
            let (kind, reason) = match &f {
                Failure::Input(r) => ("input", r),
                Failure::Limit(r) => ("resource-limit", r),
            };
            let reason = reason.replace('\n', " ");
            match cli.format {
                Format::Machine => println!("{}", json!({"error": kind, "reason": reason})),
                Format::Text => eprintln!("error: {kind}: {reason}"),
            }
            ExitCode::from(f.code())
        }
    }
}
