use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use coherence::decide::decide_equal;
use coherence::dsl::{parse_graph, parse_moves, parse_object, print_object, ParseError};
use coherence::expr::{validate, Doctrine, DoctrineKind, EdgeId, Graph, ObjectExpr, Orientation, Shape};
use coherence::index::{IndexMor, Perm, Rot};
use coherence::invariant::invariant;
use coherence::morph::{moves_to_string, MorphError, MorphTerm};
use coherence::oracle::{enumerate_component, suites, write_dot, OracleError};
use coherence::witness::{witness, WitnessError, WitnessTarget};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_UNREACHABLE: u8 = 4;

#[derive(Parser)]
#[command(name = "coherence", version, about = "Decide and witness equalities of formal coherence morphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Doctrine name, e.g. bicategory, symmetric, lax-functor.
    #[arg(long, default_value = "bicategory")]
    doctrine: String,
    /// Use the oplax orientation of a functor doctrine.
    #[arg(long)]
    oplax: bool,
    /// Graph file with lines `name: src -> tgt`. Without it every edge is a
    /// loop on one vertex.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an object, or a move list with --moves.
    Parse {
        #[command(flatten)]
        common: Common,
        /// Treat the input as a move list.
        #[arg(long)]
        moves: bool,
        input: String,
    },
    /// Decide whether two parallel morphisms are equal.
    Decide {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        dom: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Synthesize a morphism with the requested invariants.
    Witness {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        dom: String,
        /// Required codomain; defaults to the canonical form reached.
        #[arg(long)]
        cod: Option<String>,
        /// Comma-separated images, e.g. "2,1".
        #[arg(long)]
        target_perm: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        target_rot: Option<i64>,
        /// JSON index map, e.g. {"family":"delta","n":2,"k":1,"values":[1,1]}.
        #[arg(long)]
        target_support: Option<String>,
    },
    /// Print the invariants of a morphism.
    Invariant {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        dom: String,
        #[arg(long, default_value = "")]
        moves: String,
    },
    /// Enumerate the component of the canonical object on n edges.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        max_units: usize,
        /// Write the component as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run a verification suite: relations, counts, grothendieck, fullness or all.
    Verify {
        #[arg(long)]
        suite: String,
    },
}

struct Failure {
    code: u8,
    body: Value,
}

impl Failure {
    fn new(code: u8, kind: &str, message: impl Into<String>) -> Self {
        Failure { code, body: json!({"error": kind, "message": message.into()}) }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure { code: EXIT_PARSE, body: json!({"error": "parse", "message": e.to_string(), "offset": e.offset}) }
    }
}

impl From<MorphError> for Failure {
    fn from(e: MorphError) -> Self {
        Failure::new(EXIT_VALIDATION, "validation", e.to_string())
    }
}

impl From<WitnessError> for Failure {
    fn from(e: WitnessError) -> Self {
        match e {
            WitnessError::UnreachableTarget(_) => Failure::new(EXIT_UNREACHABLE, "unreachable", e.to_string()),
            WitnessError::FrontierMismatch(_) => Failure::new(EXIT_UNREACHABLE, "frontier_mismatch", e.to_string()),
            other => Failure::new(EXIT_VALIDATION, "validation", other.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BoundExceeded(_) => Failure::new(EXIT_NEGATIVE, "bound_exceeded", e.to_string()),
            other => Failure::new(EXIT_VALIDATION, "validation", other.to_string()),
        }
    }
}

fn validation(e: impl ToString) -> Failure {
    Failure::new(EXIT_VALIDATION, "validation", e.to_string())
}

fn doctrine(common: &Common) -> Result<Doctrine, Failure> {
    let kind: DoctrineKind = common.doctrine.parse().map_err(validation)?;
    let orientation = if common.oplax { Orientation::Oplax } else { Orientation::Lax };
    Ok(Doctrine { kind, orientation })
}

fn load_graph(common: &Common, edges: &[String]) -> Result<Graph, Failure> {
    match &common.graph {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::new(EXIT_VALIDATION, "io", format!("{}: {e}", path.display())))?;
            Ok(parse_graph(&text)?)
        }
        None => Ok(Graph::one_vertex(edges.iter().map(String::as_str))),
    }
}

fn object(common: &Common, d: Doctrine, text: &str) -> Result<(ObjectExpr, Graph), Failure> {
    let obj = parse_object(text)?;
    let names: Vec<String> = obj.edge_names().into_iter().collect();
    let graph = load_graph(common, &names)?;
    validate(&obj, &graph, d).map_err(validation)?;
    Ok((obj, graph))
}

fn term(common: &Common, d: Doctrine, dom: &str, moves: &str) -> Result<MorphTerm, Failure> {
    let (obj, graph) = object(common, d, dom)?;
    let t = MorphTerm::new(obj, parse_moves(moves)?);
    t.validate(&graph, d)?;
    Ok(t)
}

fn parse_perm(s: &str) -> Result<Perm, Failure> {
    let images = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::new(EXIT_PARSE, "parse", format!("bad permutation {s:?}: {e}")))?;
    Perm::from_images(images).map_err(|e| Failure::new(EXIT_PARSE, "parse", e.to_string()))
}

fn run(cli: Cli) -> Result<(Value, u8), Failure> {
    match cli.command {
        Command::Parse { common, moves, input } => {
            if moves {
                let mvs = parse_moves(&input)?;
                return Ok((json!({"moves": mvs, "printed": moves_to_string(&mvs)}), 0));
            }
            let d = doctrine(&common)?;
            let (obj, _) = object(&common, d, &input)?;
            Ok((json!({"ast": obj, "printed": print_object(&obj)}), 0))
        }
        Command::Decide { common, dom, f, g } => {
            let d = doctrine(&common)?;
            let (f, g) = (term(&common, d, &dom, &f)?, term(&common, d, &dom, &g)?);
            let decision = decide_equal(&f, &g, d).map_err(validation)?;
            let code = if decision.is_equal() { 0 } else { EXIT_NEGATIVE };
            Ok((json!(decision), code))
        }
        Command::Witness { common, dom, cod, target_perm, target_rot, target_support } => {
            let d = doctrine(&common)?;
            let (a, graph) = object(&common, d, &dom)?;
            let b = match &cod {
                Some(text) => {
                    let b = parse_object(text)?;
                    validate(&b, &graph, d).map_err(validation)?;
                    Some(b)
                }
                None => None,
            };
            let n = a.occurrences();
            let target = WitnessTarget {
                perm: target_perm.as_deref().map(parse_perm).transpose()?,
                rot: target_rot.map(|r| Rot::new(n, r)),
                support: target_support
                    .as_deref()
                    .map(serde_json::from_str::<IndexMor>)
                    .transpose()
                    .map_err(|e| Failure::new(EXIT_PARSE, "parse", format!("bad support: {e}")))?,
            };
            let w = witness(&a, b.as_ref(), &target, d)?;
            let inv = invariant(&w, d).map_err(validation)?;
            let codomain = w.codomain(d)?;
            Ok((
                json!({
                    "moves": moves_to_string(&w.moves),
                    "length": w.len(),
                    "codomain": print_object(&codomain),
                    "invariant": inv,
                }),
                0,
            ))
        }
        Command::Invariant { common, dom, moves } => {
            let d = doctrine(&common)?;
            let t = term(&common, d, &dom, &moves)?;
            let inv = invariant(&t, d).map_err(validation)?;
            let codomain = t.codomain(d)?;
            Ok((json!({"codomain": print_object(&codomain), "invariant": inv}), 0))
        }
        Command::Enumerate { common, n, max_units, dot } => {
            let d = doctrine(&common)?;
            let names: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
            let graph = match (&common.graph, d.one_object(), d.shape()) {
                (Some(_), _, _) | (None, true, _) => load_graph(&common, &names)?,
                (None, false, Shape::Shadow | Shape::ShadowFunctor) => Graph::cycle(n),
                (None, false, _) => Graph::chain(n),
            };
            let frontier: Vec<EdgeId> = names.iter().map(|s| EdgeId::new(s)).collect();
            let cg = enumerate_component(d, &graph, &frontier, max_units)?;
            if let Some(path) = &dot {
                write_dot(&cg, path).map_err(|e| Failure::new(EXIT_VALIDATION, "io", e.to_string()))?;
            }
            Ok((json!(cg.summary()), 0))
        }
        Command::Verify { suite } => {
            let names: Vec<&str> = if suite == "all" { suites::SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut reports = Vec::new();
            for name in names {
                let report = suites::run_suite(name)
                    .ok_or_else(|| Failure::new(EXIT_PARSE, "unknown_suite", format!("unknown suite {name:?}")))??;
                reports.push(report);
            }
            let passed = reports.iter().all(|r| r.passed);
            let body = if reports.len() == 1 { json!(reports[0]) } else { json!({"passed": passed, "suites": reports}) };
            Ok((body, if passed { 0 } else { EXIT_NEGATIVE }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (body, code) = match run(cli) {
        Ok(ok) => ok,
        Err(f) => (f.body, f.code),
    };
    println!("{}", serde_json::to_string_pretty(&body).expect("values serialize"));
    ExitCode::from(code)
}
