//! Command-line dispatch.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use finspace::causal::{tci_fence, DiscreteCausalModel};
use finspace::discovery::{
    classify_intervention_topology, learn_dag_antichain, learn_poset_genotypes, learn_poset_interventional,
    separability_check, DependenceOracle, ExactOracle, InterventionFamily,
};
use finspace::enumerate::{self, EnumerationResult, Limits, UpTo, KERNEL_MAX};
use finspace::graphs::{chain_graph_to_space, dag_to_space, hyper_to_space, space_to_dag, HasseDiagram};
use finspace::homotopy::core;
use finspace::FiniteSpace;
use serde_json::json;

use crate::dot::{dag_to_dot, hasse_to_dot, parse_dot};
use crate::error::{read_file, CliError};
use crate::genotypes::ingest_genotypes;
use crate::json::{parse_family, parse_hyper, parse_model, parse_space, space_to_json, space_to_json_line, value_to_json};
use crate::oracle::{SampledOracle, DEFAULT_ALPHA};
use crate::parallel;
use crate::report;

/// Environment variable overriding both enumeration caps.
pub const MAX_N_ENV: &str = "FINSPACE_MAX_N";

#[derive(Debug, Parser)]
#[command(name = "finspace", version, about = "Causal models as finite topological spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count or list finite topologies on n points.
    Enumerate(EnumerateArgs),
    /// Remove beat points down to the core.
    ReduceCore(ReduceArgs),
    /// Topological d-separation of U and V given Z.
    Dsep(DsepArgs),
    /// Learn a causal poset from interventions or genotype data.
    Learn(LearnArgs),
    /// Convert between DAG, space, Hasse, chain-graph and latent formats.
    Convert(ConvertArgs),
    /// Classify a family of intervention targets.
    ClassifyFamily(ClassifyArgs),
    /// Event pairs that no genotype tells apart.
    Separability(SeparabilityArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum UpToArg {
    Labeled,
    Homeo,
    Homotopy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Both,
    Json,
    Dot,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// Only T0 topologies (posets).
    #[arg(long)]
    t0: bool,
    #[arg(long, value_enum)]
    up_to: Option<UpToArg>,
    /// Stream one JSON space per line on stdout; counts go to stderr.
    #[arg(long)]
    list: bool,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    /// Space JSON, or a DAG in DOT.
    input: PathBuf,
    #[arg(long, value_enum, default_value = "both")]
    format: Format,
}

#[derive(Debug, Args)]
struct DsepArgs {
    /// Space JSON, or a DAG in DOT.
    input: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    u: Vec<String>,
    #[arg(long, value_delimiter = ',', required = true)]
    v: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    z: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Interventional,
    Observational,
}

#[derive(Debug, Args)]
struct LearnArgs {
    /// Causal model JSON used as ground truth.
    #[arg(long, conflicts_with = "data")]
    truth: Option<PathBuf>,
    /// Target sets JSON, or one of `closed`, `topogenous`, `singletons`,
    /// `antichain`.
    #[arg(long, requires = "truth")]
    family: Option<String>,
    /// Tumor-gene CSV.
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Use a sampling oracle with this many draws per experiment.
    #[arg(long)]
    sampled: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "both")]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum From {
    Dag,
    Space,
    Hasse,
    Chain,
    Hyper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum To {
    Space,
    Dag,
    Hasse,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    input: PathBuf,
    #[arg(long, value_enum)]
    from: From,
    #[arg(long, value_enum)]
    to: To,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    /// `[["a"], ["a","b"]]` or `{"universe": [...], "sets": [...]}`.
    input: PathBuf,
    /// Overrides the universe; defaults to the union of the sets.
    #[arg(long, value_delimiter = ',')]
    universe: Option<Vec<String>>,
}

#[derive(Debug, Args)]
struct SeparabilityArgs {
    input: PathBuf,
}

/// Parses `argv` (program name first) and runs the command. Returns the
/// exit code: 0 success, 1 domain or input error, 2 usage error.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

enum Failure {
    Usage(String),
    Domain(CliError),
}

impl<E: Into<CliError>> std::convert::From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.into())
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::Domain(CliError::io(Path::new("<stdout>"), e))
}

fn origin(path: &Path) -> String {
    path.display().to_string()
}

fn is_dot(path: &Path) -> bool {
    matches!(path.extension().and_then(|e| e.to_str()), Some("dot" | "gv"))
}

/// A space from JSON, or the space of a DOT DAG.
fn load_space(path: &Path) -> Result<FiniteSpace, CliError> {
    let text = read_file(path)?;
    if is_dot(path) {
        Ok(dag_to_space(&parse_dot(&text, &origin(path))?.to_dag(&origin(path))?))
    } else {
        parse_space(&text, &origin(path))
    }
}

fn limits() -> Result<Limits, Failure> {
    match std::env::var(MAX_N_ENV) {
        Err(_) => Ok(Limits::default()),
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("{MAX_N_ENV} must be a number, got `{v}`")))?;
            let n = n.min(KERNEL_MAX);
            Ok(Limits {
                max_poset_n: n,
                max_preorder_n: n,
            })
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Enumerate(a) => enumerate_cmd(a, out, err),
        Command::ReduceCore(a) => {
            let space = load_space(&a.input)?;
            let r = core(&space);
            let json = value_to_json(&report::core_report(&space, &r));
            emit(out, a.format, &json, || Ok(hasse_to_dot(&HasseDiagram::from_space(&r.core)?)))
        }
        Command::Dsep(a) => {
            let space = load_space(&a.input)?;
            let (sep, fence) = tci_fence(&space, &a.u, &a.v, &a.z)?;
            writeln!(out, "{sep}").map_err(io)?;
            if let Some(f) = fence {
                writeln!(out, "fence: {}", f.join(" -- ")).map_err(io)?;
            }
            Ok(())
        }
        Command::Learn(a) => learn_cmd(a, out),
        Command::Convert(a) => convert_cmd(a, out),
        Command::ClassifyFamily(a) => {
            let doc = parse_family(&read_file(&a.input)?, &origin(&a.input))?;
            let universe: Vec<String> = match (a.universe, doc.universe()) {
                (Some(u), _) => u,
                (None, Some(u)) => u.to_vec(),
                (None, None) => {
                    let mut u: Vec<String> = doc.sets().iter().flatten().cloned().collect();
                    u.sort();
                    u.dedup();
                    u
                }
            };
            let class = classify_intervention_topology(doc.sets(), &universe)?;
            write!(out, "{}", value_to_json(&report::family_report(&class))).map_err(io)
        }
        Command::Separability(a) => {
            let data = ingest_genotypes(&read_file(&a.input)?, &origin(&a.input))?;
            let pairs = separability_check(&data);
            let value = json!({
                "events": data.events(),
                "genotypes": data.genotypes().len(),
                "separable": pairs.is_empty(),
                "unseparated": pairs.iter().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
            });
            write!(out, "{}", value_to_json(&value)).map_err(io)
        }
    }
}

fn emit(
    out: &mut dyn Write,
    format: Format,
    json: &str,
    dot: impl FnOnce() -> Result<String, CliError>,
) -> Result<(), Failure> {
    if format != Format::Dot {
        write!(out, "{json}").map_err(io)?;
    }
    if format != Format::Json {
        let d = dot()?;
        if format == Format::Both {
            writeln!(out).map_err(io)?;
        }
        write!(out, "{d}").map_err(io)?;
    }
    Ok(())
}

fn summary(r: &EnumerationResult) -> String {
    let fields = [
        ("distinct", r.distinct),
        ("distinct_t0", r.distinct_t0),
        ("inequivalent", r.inequivalent),
        ("inequivalent_t0", r.inequivalent_t0),
        ("minimal_t0", r.minimal_t0),
        ("homotopy_classes", r.homotopy_classes),
    ];
    fields
        .iter()
        .filter_map(|(k, v)| v.map(|v| format!("{k}: {v}")))
        .collect::<Vec<_>>()
        .join(", ")
}

fn enumerate_cmd(a: EnumerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let limits = limits()?;
    let (n, t0) = (a.n, a.t0);
    limits.check(n, t0)?;
    let threads = a.threads.max(1);
    let mut r = EnumerationResult {
        n,
        ..Default::default()
    };
    let labeled = || {
        if t0 {
            parallel::count_labeled_posets(n, threads)
        } else {
            parallel::count_labeled_preorders(n, threads)
        }
    };
    let set_labeled = |r: &mut EnumerationResult, c: u64| {
        if t0 {
            r.distinct_t0 = Some(c)
        } else {
            r.distinct = Some(c)
        }
    };
    let classes = |up_to| enumerate::count_classes_with(n, t0, up_to, limits);
    match a.up_to {
        None => {
            set_labeled(&mut r, labeled());
            let h = classes(UpTo::Homeomorphism)?;
            r.inequivalent = h.inequivalent;
            r.inequivalent_t0 = h.inequivalent_t0;
        }
        Some(UpToArg::Labeled) => set_labeled(&mut r, labeled()),
        Some(UpToArg::Homeo) => {
            let h = classes(UpTo::Homeomorphism)?;
            r.inequivalent = h.inequivalent;
            r.inequivalent_t0 = h.inequivalent_t0;
            r.minimal_t0 = h.minimal_t0;
        }
        Some(UpToArg::Homotopy) => r.homotopy_classes = classes(UpTo::Homotopy)?.homotopy_classes,
    }
    if a.list {
        let spaces: Box<dyn Iterator<Item = FiniteSpace>> = match (a.up_to, t0) {
            (None | Some(UpToArg::Labeled), true) => Box::new(enumerate::enumerate_posets_with(n, limits)?),
            (None | Some(UpToArg::Labeled), false) => Box::new(enumerate::enumerate_preorders_with(n, limits)?),
            (Some(UpToArg::Homeo), _) => Box::new(enumerate::enumerate_unlabeled(n, t0, limits)?),
            (Some(UpToArg::Homotopy), _) => Box::new(enumerate::homotopy_representatives(n, t0, limits)?),
        };
        for s in spaces {
            writeln!(out, "{}", space_to_json_line(&s)).map_err(io)?;
        }
        writeln!(err, "{}", summary(&r)).map_err(io)?;
    } else {
        writeln!(out, "{}", summary(&r)).map_err(io)?;
    }
    Ok(())
}

fn named_family(name: &str, truth: &DiscreteCausalModel) -> Option<InterventionFamily> {
    let s = truth.space();
    match name {
        "closed" => Some(InterventionFamily::closed_sets(s)),
        "topogenous" => Some(InterventionFamily::topogenous_rows(s)),
        "singletons" => Some(InterventionFamily::singletons(s.len())),
        _ => None,
    }
}

fn learn_cmd(a: LearnArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if let Some(data) = &a.data {
        if a.mode != Some(Mode::Observational) {
            return Err(Failure::Usage("`--data` needs `--mode observational`".to_owned()));
        }
        let dataset = ingest_genotypes(&read_file(data)?, &origin(data))?;
        let learned = learn_poset_genotypes(&dataset)?;
        let json = value_to_json(&report::learned_report(&learned)?);
        return emit(out, a.format, &json, || Ok(hasse_to_dot(&HasseDiagram::from_space(&learned.space)?)));
    }
    let Some(truth_path) = &a.truth else {
        return Err(Failure::Usage("give `--truth` with `--family`, or `--data`".to_owned()));
    };
    if a.mode == Some(Mode::Observational) {
        return Err(Failure::Usage("`--truth` runs interventional learning".to_owned()));
    }
    let truth = parse_model(&read_file(truth_path)?, &origin(truth_path))?;
    let family_arg = a.family.as_deref().unwrap_or("closed");
    let mut oracle: Box<dyn DependenceOracle> = match a.sampled {
        Some(n) => Box::new(SampledOracle::new(n, a.alpha, a.seed)),
        None => Box::new(ExactOracle::default()),
    };
    if family_arg == "antichain" {
        let r = learn_dag_antichain(&truth, oracle.as_mut())?;
        let json = value_to_json(&report::antichain_report(&r));
        return emit(out, a.format, &json, || Ok(dag_to_dot(&r.dag)));
    }
    let family = match named_family(family_arg, &truth) {
        Some(f) => f,
        None => {
            let path = Path::new(family_arg);
            let doc = parse_family(&read_file(path)?, &origin(path))?;
            InterventionFamily::from_labels(truth.space(), doc.sets())?
        }
    };
    let learned = learn_poset_interventional(&truth, &family, oracle.as_mut())?;
    let json = value_to_json(&report::learned_report(&learned)?);
    emit(out, a.format, &json, || Ok(hasse_to_dot(&HasseDiagram::from_space(&learned.space)?)))
}

fn convert_cmd(a: ConvertArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let text = read_file(&a.input)?;
    let at = origin(&a.input);
    let dot_input = || parse_dot(&text, &at);
    let space = match a.from {
        From::Dag | From::Hasse => {
            let dag = dot_input()?.to_dag(&at)?;
            if a.to == To::Dag {
                return write!(out, "{}", dag_to_dot(&dag)).map_err(io);
            }
            dag_to_space(&dag)
        }
        From::Space => parse_space(&text, &at)?,
        From::Chain => chain_graph_to_space(&dot_input()?.to_chain_graph()?),
        From::Hyper => hyper_to_space(&parse_hyper(&text, &at)?),
    };
    let rendered = match a.to {
        To::Space => space_to_json(&space),
        To::Dag => dag_to_dot(&space_to_dag(&space)?),
        To::Hasse => hasse_to_dot(&HasseDiagram::from_space(&space)?),
    };
    write!(out, "{rendered}").map_err(io)
}
