//! The `frucht` command-line tool.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::aut::{
    decode, decode_consistency_exhaustive, lift, verify_realization, AutError, Permutation,
    RealizationReport, VerifyOptions, DEFAULT_BUDGET,
};
use crate::codec::{cantor_pair, cantor_unpair, finite_psi, xi_digit, xi_digits, zeta, CodecError, CodeWord};
use crate::frucht::{edge_list, materialize, to_dot, BuildManifest, FruchtError, FruchtGraph, GraphExport, Vertex};
use crate::gadget::{materialize_gadget, rigidity_report, GadgetError, GadgetGraph};
use crate::groups::{acceptance_catalog, FiniteGroup, GroupError, GroupSpec};
use crate::BigRational;

const EXIT_CODES: &str = "\
Exit status:
  0  success
  1  a verification check failed (realization, decode consistency)
  2  usage error
  3  I/O error
  4  invalid group or Cayley table
  5  codec error
  6  gadget error
  7  automorphism search budget exceeded
  8  malformed permutation file or decode input
  9  graph construction error

Environment:
  FRUCHT_SEED  seed for randomized decode trials (default 0)";

#[derive(Debug, Error)]
pub enum CliError {
    /// `--help` or `--version` output; not a failure.
    #[error("{0}")]
    Info(String),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error("{0}")]
    Decode(String),
    #[error(transparent)]
    Frucht(#[from] FruchtError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => 0,
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Group(_) => 4,
            CliError::Codec(_) => 5,
            CliError::Gadget(GadgetError::Search(AutError::SearchBudgetExceeded { .. })) => 7,
            CliError::Gadget(_) => 6,
            CliError::Aut(AutError::SearchBudgetExceeded { .. }) => 7,
            CliError::Aut(AutError::RealizationFailure { .. }) => 1,
            CliError::Aut(AutError::Group(_)) => 4,
            CliError::Aut(AutError::Frucht(FruchtError::Codec(_))) => 5,
            CliError::Aut(AutError::Frucht(_)) => 9,
            CliError::Aut(AutError::OrderTooLarge { .. }) => 2,
            CliError::Aut(_) | CliError::Decode(_) => 8,
            CliError::Frucht(FruchtError::Codec(_)) => 5,
            CliError::Frucht(FruchtError::ParseVertex(_)) => 8,
            CliError::Frucht(_) => 9,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "frucht", version, about = "Realize groups as automorphism groups of coded graphs")]
#[command(after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Args)]
struct GroupArgs {
    /// Catalog group, e.g. cyclic:6, dihedral:4, symmetric:3, quaternion8,
    /// trivial, direct_product(cyclic:2,cyclic:4)
    #[arg(long)]
    group: Option<String>,
    /// Cayley table as JSON: {"order": n, "table": [[...], ...]}
    #[arg(long)]
    cayley_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Automorphism search budget in backtrack nodes
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Randomized decode trials
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Largest group order accepted for verification
    #[arg(long, default_value_t = 8)]
    max_order: usize,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Materialize the graph of a group and export it
    Build {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = ExportFormat::Edgelist)]
        export_format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that the automorphism group of the graph is the group
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Materialize a single gadget from a bit string ending in 0
    Gadget {
        #[arg(long)]
        bits: String,
        #[arg(long, value_enum, default_value_t = ExportFormat::Edgelist)]
        export_format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also report anchored rigidity and the forcing order
        #[arg(long)]
        rigidity: bool,
    },
    /// Evaluate codec primitives
    Codec {
        #[command(subcommand)]
        op: CodecOp,
    },
    /// Decode a group element from a vertex permutation of a built graph
    Decode {
        #[command(flatten)]
        group: GroupArgs,
        /// JSON object (or array of pairs) mapping "x,y,k" to "x,y,k"
        #[arg(long)]
        perm: PathBuf,
        /// Probe vertex "x,y,0"; defaults to the least one
        #[arg(long)]
        probe: Option<String>,
    },
    /// Verify every catalog group up to --max-order
    Suite {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum CodecOp {
    /// Cantor pairing of two naturals
    Pair { m: String, n: String },
    /// Inverse Cantor pairing
    Unpair { p: String },
    /// Binary digit `i` of a rational "p/q" in [0, 1]
    XiDigit { x: String, i: u64 },
    /// First `count` binary digits of a rational
    XiDigits {
        x: String,
        #[arg(long, default_value_t = 64)]
        count: u64,
    },
    /// Indices below `len` set after re-indexing the given (m,n) cells
    Zeta {
        /// Cells "m,n" holding a one
        #[arg(long = "one")]
        ones: Vec<String>,
        #[arg(long, default_value_t = 64)]
        len: u64,
    },
    /// The code word of each element of a catalog group
    Psi {
        #[arg(long)]
        group: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Edgelist,
    Dot,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    Catalog(GroupSpec),
    CayleyFile(PathBuf),
}

impl GroupSource {
    fn label(&self) -> String {
        match self {
            GroupSource::Catalog(spec) => spec.to_string(),
            GroupSource::CayleyFile(path) => format!("cayley:{}", path.display()),
        }
    }

    fn load(&self) -> Result<FiniteGroup, CliError> {
        match self {
            GroupSource::Catalog(spec) => Ok(spec.build()?),
            GroupSource::CayleyFile(path) => Ok(FiniteGroup::from_json_str(&read(path)?)?),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Build,
    Verify,
    Gadget { bits: String, rigidity: bool },
    Codec(CodecOp),
    Decode { perm: PathBuf, probe: Option<String> },
    Suite,
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub group: Option<GroupSource>,
    pub export_format: ExportFormat,
    pub out: Option<PathBuf>,
    pub budget: u64,
    pub samples: usize,
    pub max_order: usize,
    pub seed: u64,
}

impl RunConfig {
    fn new(command: Command) -> Self {
        RunConfig {
            command,
            group: None,
            export_format: ExportFormat::Edgelist,
            out: None,
            budget: DEFAULT_BUDGET,
            samples: 100,
            max_order: 8,
            seed: 0,
        }
    }

    fn with_search(mut self, search: SearchArgs) -> Result<Self, CliError> {
        if search.budget == 0 {
            return Err(CliError::Usage("--budget must be positive".into()));
        }
        self.budget = search.budget;
        self.samples = search.samples;
        self.max_order = search.max_order;
        Ok(self)
    }
}

fn group_source(args: GroupArgs) -> Result<GroupSource, CliError> {
    match (args.group, args.cayley_file) {
        (Some(name), None) => Ok(GroupSource::Catalog(name.parse()?)),
        (None, Some(path)) => Ok(GroupSource::CayleyFile(path)),
        (Some(_), Some(_)) => Err(CliError::Usage("--group and --cayley-file are exclusive".into())),
        (None, None) => Err(CliError::Usage("missing --group (or --cayley-file)".into())),
    }
}

/// Parses `argv` (program name first) into a [`RunConfig`]. Reads the
/// `FRUCHT_SEED` environment variable.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            CliError::Info(e.to_string())
        }
        _ => CliError::Usage(e.to_string()),
    })?;
    let mut config = match cli.command {
        CliCommand::Build { group, export_format, out } => RunConfig {
            group: Some(group_source(group)?),
            export_format,
            out,
            ..RunConfig::new(Command::Build)
        },
        CliCommand::Verify { group, search, out } => RunConfig {
            group: Some(group_source(group)?),
            out,
            ..RunConfig::new(Command::Verify)
        }
        .with_search(search)?,
        CliCommand::Gadget { bits, export_format, out, rigidity } => {
            RunConfig { export_format, out, ..RunConfig::new(Command::Gadget { bits, rigidity }) }
        }
        CliCommand::Codec { op } => RunConfig::new(Command::Codec(op)),
        CliCommand::Decode { group, perm, probe } => RunConfig {
            group: Some(group_source(group)?),
            ..RunConfig::new(Command::Decode { perm, probe })
        },
        CliCommand::Suite { search, out } => {
            RunConfig { out, ..RunConfig::new(Command::Suite) }.with_search(search)?
        }
    };
    if let Ok(seed) = std::env::var("FRUCHT_SEED") {
        config.seed =
            seed.trim().parse().map_err(|_| CliError::Usage(format!("FRUCHT_SEED `{seed}` is not a u64")))?;
    }
    Ok(config)
}

/// Runs a parsed command, writing its primary output to `out` (or the
/// configured file). Returns the process exit status.
pub fn execute(config: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match &config.command {
        Command::Build => build(config, stdout),
        Command::Verify => verify(config, stdout),
        Command::Gadget { bits, rigidity } => gadget(config, bits, *rigidity, stdout),
        Command::Codec(op) => codec(op, stdout),
        Command::Decode { perm, probe } => decode_command(config, perm, probe.as_deref(), stdout),
        Command::Suite => suite(config, stdout),
    }
}

/// Entry point for the binary: parse, execute, report errors on stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match parse_args(argv) {
        Ok(config) => config,
        Err(CliError::Info(message)) => {
            print!("{message}");
            return 0;
        }
        Err(CliError::Usage(message)) => {
            eprint!("{message}");
            if !message.ends_with('\n') {
                eprintln!();
            }
            return 2;
        }
        Err(err) => {
            eprintln!("error: {err}");
            return err.exit_code();
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match execute(&config, &mut lock) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn emit(config: &RunConfig, stdout: &mut dyn Write, contents: &str) -> Result<(), CliError> {
    match &config.out {
        Some(path) => write_file(path, contents),
        None => stdout
            .write_all(contents.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn print(stdout: &mut dyn Write, contents: &str) -> Result<(), CliError> {
    stdout.write_all(contents.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

fn to_json_line(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

fn load_group(config: &RunConfig) -> Result<(String, FiniteGroup), CliError> {
    let source = config.group.as_ref().ok_or_else(|| CliError::Usage("missing --group".into()))?;
    Ok((source.label(), source.load()?))
}

fn build_graph(group: &FiniteGroup) -> Result<FruchtGraph, CliError> {
    Ok(materialize(group, &finite_psi(group))?)
}

fn build(config: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let (label, group) = load_group(config)?;
    let graph = build_graph(&group)?;
    let name = |i: usize| graph.vertex(i).to_string();
    let export = match config.export_format {
        ExportFormat::Edgelist => edge_list(graph.graph(), name),
        ExportFormat::Dot => to_dot(&label, graph.graph(), name),
        ExportFormat::Json => to_json_line(&GraphExport::new(&label, &graph)),
    };
    emit(config, stdout, &export)?;
    if let Some(path) = &config.out {
        let manifest = to_json_line(&BuildManifest::new(&label, &graph));
        let mut manifest_path = path.clone().into_os_string();
        manifest_path.push(".manifest.json");
        write_file(Path::new(&manifest_path), &manifest)?;
        print(stdout, &manifest)?;
    }
    Ok(0)
}

/// `trials` random `(g, probe)` pairs, checking `decode(lift(g), probe) = g`.
fn random_decode_trials(graph: &FruchtGraph, group: &FiniteGroup, trials: usize, rng: &mut ChaCha8Rng) -> bool {
    let probes: Vec<&Vertex<usize>> = graph.probes().collect();
    if probes.is_empty() {
        return true;
    }
    (0..trials).all(|_| {
        let g = rng.gen_range(0..group.order());
        let probe = probes.choose(rng).expect("non-empty");
        let f = lift(group, &g).expect("element of the group");
        decode(&f, group, probe).ok() == Some(g)
    })
}

fn verify_one(
    group: &FiniteGroup,
    config: &RunConfig,
    rng: &mut ChaCha8Rng,
) -> Result<RealizationReport, CliError> {
    let options = VerifyOptions { budget: config.budget, max_order: config.max_order };
    let mut report = match verify_realization(group, &finite_psi(group), options) {
        Ok(report) => report,
        Err(AutError::RealizationFailure { report, .. }) => *report,
        Err(err) => return Err(err.into()),
    };
    if config.samples > 0 {
        let graph = build_graph(group)?;
        report.decode_ok &= random_decode_trials(&graph, group, config.samples, rng);
    }
    Ok(report)
}

fn verify(config: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let (_, group) = load_group(config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let report = verify_one(&group, config, &mut rng)?;
    emit(config, stdout, &to_json_line(&report))?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn suite(config: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut entries = Vec::new();
    let mut all_passed = true;
    for spec in acceptance_catalog().into_iter().filter(|s| s.order() <= config.max_order) {
        let report = verify_one(&spec.build()?, config, &mut rng)?;
        all_passed &= report.passed();
        let mut entry = serde_json::to_value(&report).expect("serializable");
        entry["group"] = Value::String(spec.to_string());
        entry["passed"] = Value::Bool(report.passed());
        entries.push(entry);
    }
    emit(config, stdout, &to_json_line(&entries))?;
    Ok(if all_passed { 0 } else { 1 })
}

fn gadget(config: &RunConfig, bits: &str, rigidity: bool, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let code: CodeWord = bits.parse()?;
    let gadget = materialize_gadget(&code)?;
    let name = |i: usize| GadgetGraph::label(i).to_string();
    let export = match config.export_format {
        ExportFormat::Edgelist => edge_list(gadget.graph(), name),
        ExportFormat::Dot => to_dot(&format!("gadget {code}"), gadget.graph(), name),
        ExportFormat::Json => {
            let edges: Vec<(u64, u64)> =
                gadget.graph().edges().map(|(u, v)| (GadgetGraph::label(u), GadgetGraph::label(v))).collect();
            to_json_line(&json!({
                "code": code.to_string(),
                "vertices": gadget.labels().collect::<Vec<_>>(),
                "edges": edges,
            }))
        }
    };
    emit(config, stdout, &export)?;
    if rigidity {
        let report = rigidity_report(&gadget)?;
        print(stdout, &to_json_line(&json!({ "code": code.to_string(), "rigidity": report })))?;
        return Ok(if report.rigid { 0 } else { 1 });
    }
    Ok(0)
}

fn parse_natural(text: &str) -> Result<BigUint, CliError> {
    text.trim().parse().map_err(|_| CliError::Usage(format!("`{text}` is not a natural number")))
}

fn parse_rational(text: &str) -> Result<BigRational, CliError> {
    text.trim().parse().map_err(|_| CliError::Usage(format!("`{text}` is not a rational p/q")))
}

fn codec(op: &CodecOp, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let bit = |b: bool| u8::from(b);
    let line = match op {
        CodecOp::Pair { m, n } => {
            let (m, n) = (parse_natural(m)?, parse_natural(n)?);
            let p = cantor_pair(&m, &n)?;
            format!("{{\"m\": {m}, \"n\": {n}, \"p\": {p}}}\n")
        }
        CodecOp::Unpair { p } => {
            let p = parse_natural(p)?;
            let (m, n) = cantor_unpair(&p)?;
            format!("{{\"p\": {p}, \"m\": {m}, \"n\": {n}}}\n")
        }
        CodecOp::XiDigit { x, i } => {
            let x = parse_rational(x)?;
            to_json_line(&json!({ "x": x.to_string(), "i": i, "digit": bit(xi_digit(&x, *i)?) }))
        }
        CodecOp::XiDigits { x, count } => {
            let x = parse_rational(x)?;
            let digits: Vec<u8> = xi_digits(&x, *count)?.into_iter().map(bit).collect();
            to_json_line(&json!({ "x": x.to_string(), "digits": digits }))
        }
        CodecOp::Zeta { ones, len } => {
            let cells = ones
                .iter()
                .map(|cell| {
                    let bad = || CliError::Usage(format!("cell `{cell}` is not `m,n`"));
                    let (m, n) = cell.split_once(',').ok_or_else(bad)?;
                    Ok((m.trim().parse::<u64>().map_err(|_| bad())?, n.trim().parse::<u64>().map_err(|_| bad())?))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let oracle = zeta(move |m, n| cells.contains(&(m, n)));
            let indices: Vec<u64> = (0..*len).filter(|&p| oracle.bit(p)).collect();
            to_json_line(&json!({ "len": len, "indices": indices }))
        }
        CodecOp::Psi { group } => {
            let group = crate::groups::catalog(group)?;
            let words: Vec<String> = finite_psi(&group).words().iter().map(ToString::to_string).collect();
            to_json_line(&json!({ "order": group.order(), "words": words }))
        }
    };
    print(stdout, &line)?;
    Ok(0)
}

fn read_permutation(graph: &FruchtGraph, text: &str) -> Result<Permutation, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Decode(format!("permutation JSON: {e}")))?;
    let pairs: Vec<(String, String)> = match value {
        Value::Object(map) => map
            .into_iter()
            .map(|(k, v)| match v {
                Value::String(s) => Ok((k, s)),
                other => Err(CliError::Decode(format!("image of {k} is not a string: {other}"))),
            })
            .collect::<Result<_, _>>()?,
        Value::Array(items) => serde_json::from_value(Value::Array(items))
            .map_err(|e| CliError::Decode(format!("expected [[from, to], ...]: {e}")))?,
        _ => return Err(CliError::Decode("permutation must be a JSON object or array of pairs".into())),
    };
    let mut images = vec![usize::MAX; graph.vertices().len()];
    for (from, to) in &pairs {
        let index = |s: &str| -> Result<usize, CliError> {
            let v: Vertex<usize> = s.parse()?;
            graph.index_of(&v).ok_or_else(|| CliError::Decode(format!("vertex {s} is not in the graph")))
        };
        let (i, j) = (index(from)?, index(to)?);
        if images[i] != usize::MAX {
            return Err(CliError::Decode(format!("vertex {from} mapped twice")));
        }
        images[i] = j;
    }
    if let Some(missing) = images.iter().position(|&j| j == usize::MAX) {
        return Err(CliError::Decode(format!("no image for vertex {}", graph.vertex(missing))));
    }
    Permutation::new(images).map_err(|e| CliError::Decode(e.to_string()))
}

fn decode_command(
    config: &RunConfig,
    perm_path: &Path,
    probe: Option<&str>,
    stdout: &mut dyn Write,
) -> Result<i32, CliError> {
    let (_, group) = load_group(config)?;
    let graph = build_graph(&group)?;
    let permutation = read_permutation(&graph, &read(perm_path)?)?;
    let probe: Vertex<usize> = match probe {
        Some(text) => text.parse()?,
        None => graph
            .probes()
            .next()
            .cloned()
            .ok_or_else(|| CliError::Decode("the trivial group has no probe vertices".into()))?,
    };
    let map = crate::aut::PermutationMap { graph: &graph, permutation: &permutation };
    let element = decode(&map, &group, &probe)?;
    let is_automorphism = permutation.is_automorphism_of(graph.graph());
    let consistent = decode_consistency_exhaustive(&permutation, &graph, &group);
    let report = json!({
        "probe": probe.to_string(),
        "element": element,
        "is_automorphism": is_automorphism,
        "consistent": consistent,
    });
    print(stdout, &to_json_line(&report))?;
    Ok(if is_automorphism && consistent { 0 } else { 1 })
}
