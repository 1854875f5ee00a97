//! `rainbow`: build, color, verify and solve rainbow connection instances on
//! Cayley graphs of finite Abelian groups and recursive circulants.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rainbow_core::{
    bounds_report, build_cayley, build_circulant, canonical_word, color_count_upper_bound, diameter_formula, exact_rc,
    extend_to_supergraph, half_cycle_coloring, level_coloring, naf_word, theoretical_diameter, verify, word_to_path,
    CayleyGraph, Certificate, CirculantSpec, Corpus, EdgeColoring, GeneratorSet, GroupSpec, Instance, Mode, OracleCaps,
    OracleOutcome, PairScope, StepOrder,
};

/// `println!` that reports write errors instead of panicking.
macro_rules! out {
    ($($arg:tt)*) => {
        writeln!(std::io::stdout(), $($arg)*)?
    };
}

#[derive(Parser)]
#[command(name = "rainbow", version, about = "Rainbow connection of Cayley graphs and recursive circulants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a group and a generating set.
    Group {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(value_enum, default_value_t = GroupAction::Info)]
        action: GroupAction,
    },
    /// Export a Cayley graph or recursive circulant.
    Build {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Color an instance with one of the constructions and emit a certificate.
    Color {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate. Exits with status 1 when the check fails.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long, value_enum, default_value_t = VerifyMode::Strong)]
        mode: VerifyMode,
        /// Check from vertex 0 plus sampled sources only.
        #[arg(long)]
        vertex_transitive: bool,
        #[arg(long, default_value_t = 8)]
        spot_checks: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Canonical shortest word and vertex path from 0 in a recursive circulant.
    Route {
        #[arg(long)]
        circulant: CirculantSpec,
        #[arg(long)]
        to: u64,
    },
    /// Exact rc or src by exhaustive search, or an interval when caps are hit.
    Solve {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value_t = SolveMode::Rc)]
        mode: SolveMode,
        #[arg(long, default_value_t = OracleCaps::default().max_edges)]
        max_edges: usize,
        #[arg(long, default_value_t = OracleCaps::default().max_colors)]
        max_colors: u32,
        #[arg(long, default_value_t = OracleCaps::default().max_states)]
        max_states: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounds, constructions and verification for every corpus instance.
    Sweep {
        /// `default` or a path to a corpus TOML file.
        #[arg(long, default_value = "default")]
        corpus: String,
        /// Use sampled-source verification with this seed instead of checking all sources.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args)]
struct GroupArgs {
    /// Cyclic factor orders, e.g. `2,2,2`.
    #[arg(long)]
    moduli: GroupSpec,
    /// Generators as residue vectors, e.g. `1,0,0;0,1,0`. Defaults to the unit vectors.
    #[arg(long)]
    gens: Option<String>,
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long, conflicts_with = "circulant", required_unless_present = "circulant")]
    moduli: Option<GroupSpec>,
    #[arg(long, requires = "moduli")]
    gens: Option<String>,
    /// Recursive circulant `r:d:m`.
    #[arg(long)]
    circulant: Option<CirculantSpec>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupAction {
    Info,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Half-cycle coloring of each generator's cycles.
    Thm2,
    /// Level-wise coloring of a recursive circulant.
    Thm4,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyMode {
    Rainbow,
    Strong,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMode {
    Rc,
    Src,
}

impl From<VerifyMode> for Mode {
    fn from(m: VerifyMode) -> Self {
        match m {
            VerifyMode::Rainbow => Mode::Rainbow,
            VerifyMode::Strong => Mode::Strong,
        }
    }
}

impl From<SolveMode> for Mode {
    fn from(m: SolveMode) -> Self {
        match m {
            SolveMode::Rc => Mode::Rainbow,
            SolveMode::Src => Mode::Strong,
        }
    }
}

fn generators(group: &GroupSpec, gens: Option<&str>) -> Result<GeneratorSet> {
    Ok(match gens {
        Some(s) => group.parse_generators(s)?,
        None => group.standard_generators(),
    })
}

fn instance_of(args: &InstanceArgs) -> Result<Instance> {
    Ok(match (&args.moduli, &args.circulant) {
        (Some(group), None) => {
            let gens = generators(group, args.gens.as_deref())?.inverse_closure(group);
            Instance::Cayley { group: group.clone(), generators: gens }
        }
        (None, Some(spec)) => Instance::Circulant(*spec),
        _ => bail!("give either --moduli or --circulant"),
    })
}

fn build_instance(instance: &Instance) -> Result<CayleyGraph> {
    Ok(match instance {
        Instance::Cayley { group, generators } => build_cayley(group, generators)?,
        Instance::Circulant(spec) => build_circulant(spec)?,
    })
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}

fn run_group(args: &GroupArgs) -> Result<ExitCode> {
    let group = &args.moduli;
    let gens = generators(group, args.gens.as_deref())?;
    out!("group: {group} (order {})", group.order());
    for a in gens.pair_representatives(group) {
        out!("generator {a}: order {}", group.element_order(&a));
    }
    out!("generates: {}", group.generates(&gens));
    let subsets = group.minimal_generating_subsets(&gens)?;
    for s in &subsets {
        let members: Vec<String> = s.set.elements().iter().map(ToString::to_string).collect();
        let independent = group.check_independent_basis(&s.set).is_ok();
        out!("minimal subset {{{}}}: colors {}, independent {independent}", members.join(", "), s.score);
    }
    if let Some(best) = subsets.iter().min_by_key(|s| s.score) {
        out!("construction bound: {}", best.score);
    }
    Ok(ExitCode::SUCCESS)
}

fn half_cycle(group: &GroupSpec, gens: &GeneratorSet) -> Result<(CayleyGraph, EdgeColoring)> {
    let full = build_cayley(group, gens)?;
    let bound = color_count_upper_bound(group, gens)?;
    let basis = bound.basis.context("the generators do not generate the group")?;
    if basis.len() == full.generators().len() {
        let coloring = half_cycle_coloring(&full, &basis)?;
        return Ok((full, coloring));
    }
    // Color the spanning subgraph over the best minimal subset, reuse one of
    // its colors elsewhere. The result is rainbow connected.
    eprintln!("note: extending a coloring of a spanning subgraph; strong rainbow is not guaranteed");
    let sub = build_cayley(group, &basis.inverse_closure(group))?;
    let coloring = half_cycle_coloring(&sub, &basis)?;
    let extended = extend_to_supergraph(&sub, &coloring, &full)?;
    Ok((full, extended))
}

fn run_color(args: &InstanceArgs, method: Method, out: Option<&Path>) -> Result<ExitCode> {
    let (graph, coloring) = match (instance_of(args)?, method) {
        (Instance::Cayley { group, generators }, Method::Thm2) => half_cycle(&group, &generators)?,
        (Instance::Circulant(spec), Method::Thm4) => {
            let graph = build_circulant(&spec)?;
            let coloring = level_coloring(&spec, &graph)?;
            (graph, coloring)
        }
        (Instance::Circulant(spec), Method::Thm2) => {
            let graph = build_circulant(&spec)?;
            let gens = GeneratorSet::new(graph.group(), graph.generators().to_vec())?;
            half_cycle(graph.group(), &gens.inverse_closure(graph.group()))?
        }
        (Instance::Cayley { .. }, Method::Thm4) => bail!("--method thm4 needs --circulant"),
    };
    out!("colors: {}", coloring.num_colors());
    emit(&Certificate::new(graph.graph(), &coloring).to_json(), out)?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(cert: &Path, mode: Mode, scope: PairScope) -> Result<ExitCode> {
    let text = std::fs::read_to_string(cert).with_context(|| format!("reading {}", cert.display()))?;
    let (graph, coloring) = Certificate::from_json(&text)?.into_parts()?;
    let report = verify(&graph, &coloring, mode, scope)?;
    out!("{}", serde_json::to_string(&report)?);
    Ok(if report.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_route(spec: &CirculantSpec, to: u64) -> Result<ExitCode> {
    let word = if spec.d() == 2 { naf_word(spec.m(), to)? } else { canonical_word(spec, to)? };
    let path = word_to_path(spec, &word, 0, StepOrder::LevelAscending)?;
    let vertices: Vec<String> = path.iter().map(ToString::to_string).collect();
    out!("{word} | {}", vertices.join(" "));
    Ok(ExitCode::SUCCESS)
}

fn run_solve(args: &InstanceArgs, mode: Mode, caps: OracleCaps, out: Option<&Path>) -> Result<ExitCode> {
    let instance = instance_of(args)?;
    let graph = build_instance(&instance)?;
    let upper = match &instance {
        Instance::Cayley { group, generators } => color_count_upper_bound(group, generators)?.count,
        Instance::Circulant(spec) => rainbow_core::level_coloring_formula(spec),
    };
    // The constructions bound src, and therefore rc, from above.
    let hint = u32::try_from(upper).ok().filter(|&u| u > 0);
    let name = match mode {
        Mode::Rainbow => "rc",
        Mode::Strong => "src",
    };
    match exact_rc(graph.graph(), mode, caps, hint)? {
        OracleOutcome::Exact { value, witness } => {
            out!("{name}: {value}");
            if let Some(path) = out {
                emit(&Certificate::new(graph.graph(), &witness).to_json(), Some(path))?;
            }
        }
        OracleOutcome::Bounded { lower, upper } => out!("{name}: [{lower}, {upper}] (caps exceeded)"),
    }
    Ok(ExitCode::SUCCESS)
}

struct SweepRow {
    instance: String,
    diameter: u32,
    formula: String,
    lower: u64,
    construction: u64,
    verified: bool,
    oracle: String,
}

fn sweep_scope(seed: Option<u64>) -> PairScope {
    match seed {
        Some(seed) => PairScope::VertexTransitive { spot_checks: 8, seed },
        None => PairScope::All,
    }
}

fn run_sweep(corpus: &str, seed: Option<u64>) -> Result<ExitCode> {
    let corpus = if corpus == "default" {
        Corpus::default_corpus()
    } else {
        let text = std::fs::read_to_string(corpus).with_context(|| format!("reading {corpus}"))?;
        Corpus::parse(&text)?
    };
    let scope = sweep_scope(seed);
    let mut rows = Vec::new();
    for inst in &corpus.groups {
        let instance = Instance::Cayley { group: inst.group.clone(), generators: inst.generators() };
        let caps = inst.oracle.then(OracleCaps::default);
        let report = bounds_report(&instance, caps)?;
        let (graph, coloring) = half_cycle(&inst.group, &inst.generators())?;
        let verified = verify(graph.graph(), &coloring, Mode::Strong, scope)?.ok;
        let formula = theoretical_diameter(&inst.group, &inst.basis).map_or("-".into(), |d| d.to_string());
        rows.push(SweepRow {
            instance: inst.name.clone(),
            diameter: report.diameter,
            formula,
            lower: report.lower,
            construction: coloring.num_colors() as u64,
            verified,
            oracle: report.oracle.map_or("-".into(), |v| v.to_string()),
        });
    }
    for spec in corpus.all_circulants() {
        let report = bounds_report(&Instance::Circulant(spec), None)?;
        let graph = build_circulant(&spec)?;
        let coloring = level_coloring(&spec, &graph)?;
        let verified = verify(graph.graph(), &coloring, Mode::Strong, scope)?.ok;
        rows.push(SweepRow {
            instance: format!("{spec} r={}", spec.r()),
            diameter: report.diameter,
            formula: diameter_formula(&spec).to_string(),
            lower: report.lower,
            construction: coloring.num_colors() as u64,
            verified,
            oracle: "-".into(),
        });
    }
    out!(
        "{:<16} {:>8} {:>16} {:>6} {:>12} {:>8} {:>6}",
        "instance",
        "diameter",
        "formula-diameter",
        "lower",
        "construction",
        "verified",
        "oracle"
    );
    for r in &rows {
        out!(
            "{:<16} {:>8} {:>16} {:>6} {:>12} {:>8} {:>6}",
            r.instance,
            r.diameter,
            r.formula,
            r.lower,
            r.construction,
            r.verified,
            r.oracle
        );
    }
    let failed = rows.iter().filter(|r| !r.verified).count();
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Group { group, action: GroupAction::Info } => run_group(&group),
        Command::Build { instance, format, out } => {
            let graph = build_instance(&instance_of(&instance)?)?;
            let text = match format {
                Format::Json => graph.graph().to_json() + "\n",
                Format::Dot => graph.graph().to_dot(),
            };
            emit(&text, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Color { instance, method, out } => run_color(&instance, method, out.as_deref()),
        Command::Verify { cert, mode, vertex_transitive, spot_checks, seed } => {
            let scope =
                if vertex_transitive { PairScope::VertexTransitive { spot_checks, seed } } else { PairScope::All };
            run_verify(&cert, mode.into(), scope)
        }
        Command::Route { circulant, to } => run_route(&circulant, to),
        Command::Solve { instance, mode, max_edges, max_colors, max_states, out } => {
            run_solve(&instance, mode.into(), OracleCaps { max_edges, max_colors, max_states }, out.as_deref())
        }
        Command::Sweep { corpus, seed } => run_sweep(&corpus, seed),
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
