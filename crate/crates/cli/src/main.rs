//! `gemkit`: analyze, transform and enumerate colored graphs from the shell.

mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use gemkit::census::{self, Budget, Catalogue, CensusError, CensusParams, Filters};
use gemkit::invariants::{
    c_group_presentation, classify_small, fingerprint, full_presentation, g_degree, homology_h1, pi1_presentation,
    GroupPresentation, InvariantError, Target,
};
use gemkit::moves::{self, MoveError};
use gemkit::residues::ResidueId;
use gemkit::singularity::{chi_hat, sphere_status, BoundaryStructure, SingularityError, Verdict};
use gemkit::{dot, is_supercontracted, parse_gem, to_gem, Analysis, ColoredGraph, Equivalence, ParseError};

use report::{Format, Report};

#[derive(Debug, Parser)]
#[command(name = "gemkit", version, about = "Colored-graph representations of compact manifolds")]
struct Cli {
    /// Output style for reports.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// GEM file, or `-` for standard input.
    file: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GroupTarget {
    /// The manifold with boundary.
    M,
    /// The quasi-manifold obtained by coning the boundary.
    Hatm,
    /// The group generated by the edges of one color.
    CGroup,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EqArg {
    ColorPermuting,
    ColorPreserving,
}

impl From<EqArg> for Equivalence {
    fn from(e: EqArg) -> Self {
        match e {
            EqArg::ColorPermuting => Equivalence::ColorPermuting,
            EqArg::ColorPreserving => Equivalence::ColorPreserving,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a file holds a valid colored graph.
    Validate(Input),
    /// Residues, Euler characteristics, homology and boundary.
    Analyze(Input),
    /// Apply moves and print the resulting graph. Steps run in the order
    /// suspend, sum, inflate, internalize, simplify.
    Transform {
        #[command(flatten)]
        input: Input,
        /// Suspend along this color; repeatable.
        #[arg(long, value_name = "COLOR")]
        suspend: Vec<usize>,
        /// Graph connected-summed onto the input.
        #[arg(long, value_name = "FILE", requires_all = ["at", "with"])]
        sum: Option<PathBuf>,
        /// Vertex of the input used by `--sum`.
        #[arg(long, value_name = "V1", requires = "sum")]
        at: Option<usize>,
        /// Vertex of the summand used by `--sum`.
        #[arg(long, value_name = "V2", requires = "sum")]
        with: Option<usize>,
        /// Insert this many random proper dipoles.
        #[arg(long, value_name = "K")]
        inflate: Option<usize>,
        /// Seed for `--inflate`.
        #[arg(long, default_value_t = 0, requires = "inflate")]
        seed: u64,
        /// Make every vertex internal.
        #[arg(long)]
        internalize: bool,
        /// Cancel proper dipoles until none is left.
        #[arg(long)]
        simplify: bool,
    },
    /// Regular genera, G-degree and the five-color identities.
    Gdegree(Input),
    /// A presentation of a fundamental group.
    Group {
        #[command(flatten)]
        input: Input,
        /// Color whose edges generate; chosen automatically when omitted.
        #[arg(long)]
        color: Option<usize>,
        #[arg(long, value_enum, default_value_t = GroupTarget::M)]
        target: GroupTarget,
    },
    /// Name the manifold of a small graph.
    Classify(Input),
    /// Enumerate graphs of a given dimension and order.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        supercontracted: bool,
        #[arg(long, conflicts_with = "nonbipartite")]
        bipartite: bool,
        #[arg(long)]
        nonbipartite: bool,
        #[arg(long)]
        no_ordinary_dipoles: bool,
        #[arg(long = "eq", value_enum, default_value_t = EqArg::ColorPermuting)]
        equivalence: EqArg,
        /// Raise the order limit of the search.
        #[arg(long, default_value_t = Budget::default().max_order)]
        max_order: usize,
        /// Write the catalogue here and print only its summary.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Invariants of every entry of a catalogue.
    Report {
        /// Catalogue file, or `-` for standard input.
        catalogue: PathBuf,
    },
    /// Graphviz rendering with one edge style per color.
    ExportDot(Input),
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Unresolved(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Unresolved(_) => 3,
            CliError::Budget(_) => 4,
        }
    }
}

fn unresolved(id: ResidueId) -> CliError {
    CliError::Unresolved(format!("residue {}@{} could not be classified", id.colors, id.min_vertex))
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SingularityError> for CliError {
    fn from(e: SingularityError) -> Self {
        match e {
            SingularityError::UnresolvedResidue(id) => unresolved(id),
            other => CliError::Unresolved(other.to_string()),
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Unresolved(id) => unresolved(id),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<MoveError> for CliError {
    fn from(e: MoveError) -> Self {
        match e {
            MoveError::Unresolved(inner) => inner.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<CensusError> for CliError {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            CensusError::InvalidParams(_) => CliError::Usage(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

fn load_graph(path: &Path) -> Result<ColoredGraph, CliError> {
    let text = read_input(path)?;
    parse_gem(&text).map_err(|e: ParseError| CliError::Input(format!("{}: {e}", path.display())))
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Sphere => "sphere",
        Verdict::NotSphere => "not-sphere",
        Verdict::Unknown => "unknown",
    }
}

fn validate(g: &ColoredGraph) -> Report {
    let mut r = Report::new();
    r.line().field("valid", true).field("n", g.dim()).field("order", g.order());
    r
}

/// Fields that need no residue classification come first so that a partial
/// report can still be printed before failing with exit code 3.
fn analyze(g: &ColoredGraph, out: &mut String, format: Format) -> Result<(), CliError> {
    let mut r = Report::new();
    r.line().field("n", g.dim()).field("order", g.order());
    let degree = g_degree(g);
    {
        let mut line = r.line();
        line.field("bipartite", g.is_bipartite())
            .field("supercontracted", is_supercontracted(g))
            .field("chi_hatM", chi_hat(g));
        if let Some(w) = degree.omega_g_reduced {
            line.field("omega_G_reduced", w);
        }
    }
    r.line().field("omega_G", degree.omega_g);

    let analysis = Analysis::new(g);
    let f = match fingerprint(&analysis) {
        Ok(f) => f,
        Err(e) => {
            out.push_str(&r.render(format));
            return Err(e.into());
        }
    };
    let euler = analysis.euler_characteristics()?;
    r.line()
        .field("closed", analysis.is_closed())
        .field("singular_manifold", analysis.is_singular_manifold())
        .field("chi_M", f.chi_manifold)
        .field("chi_S", euler.singular_set);
    r.line()
        .field("H1", &f.h1)
        .field("boundary_components", f.boundary_components)
        .field(
            "singular_dimension",
            f.singular_dimension.map_or("none".to_string(), |d| d.to_string()),
        );
    let status = sphere_status(g);
    r.line()
        .field("sphere", verdict_str(status.verdict))
        .field("certificate", &status.certificate);
    if let Ok(name) = classify_small(g) {
        r.line().field("name", name);
    }
    if let Ok(components) = analysis.boundary_structure() {
        for b in components {
            let key = |s: &str| format!("boundary.{}.{s}", b.component);
            let mut line = r.line();
            match &b.structure {
                BoundaryStructure::Single(piece) => {
                    line.field(key("pieces"), 1)
                        .field(key("shared_faces"), 0)
                        .field(key("chi_hat"), piece.chi_hat)
                        .field(key("H1"), piece.h1.as_ref().map_or("unknown".into(), |h| h.to_string()));
                }
                BoundaryStructure::Glued { pieces, shared } => {
                    let h1s: Vec<String> = pieces
                        .iter()
                        .map(|p| p.h1.as_ref().map_or("unknown".into(), |h| h.to_string()))
                        .collect();
                    line.field(key("pieces"), pieces.len())
                        .field(key("shared_faces"), shared.len())
                        .field(key("piece_H1"), h1s.join(","));
                }
            }
        }
    }
    out.push_str(&r.render(format));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn transform(
    mut g: ColoredGraph,
    suspensions: &[usize],
    sum: Option<(ColoredGraph, usize, usize)>,
    inflate: Option<(usize, u64)>,
    internalize: bool,
    simplify: bool,
) -> Result<ColoredGraph, CliError> {
    for &c in suspensions {
        g = moves::suspend(&g, c)?;
    }
    if let Some((other, v1, v2)) = sum {
        g = moves::connected_sum(&g, v1, &other, v2)?;
    }
    if let Some((k, seed)) = inflate {
        g = moves::inflate(&g, k, seed);
    }
    if internalize {
        g = moves::internalize(&g)?;
    }
    if simplify {
        let s = moves::simplify(&g);
        if s.incomplete {
            eprintln!("warning: simplification stopped at an unclassified dipole");
        }
        g = s.graph;
    }
    Ok(g)
}

fn gdegree(g: &ColoredGraph) -> Report {
    let d = g_degree(g);
    let mut r = Report::new();
    for (eps, rho) in &d.per_permutation {
        let label: Vec<String> = eps.iter().map(|c| c.to_string()).collect();
        r.line().field(format!("rho.{}", label.join("-")), rho);
    }
    {
        let mut line = r.line();
        line.field("n", d.n).field("p", d.p).field("omega_G", d.omega_g);
        if let Some(w) = d.omega_g_reduced {
            line.field("omega_G_reduced", w);
        }
        if let Some(rho) = d.rho_g {
            line.field("rho_G", rho);
        }
    }
    if let Some(checks) = &d.checks {
        let per_color: Vec<&str> = checks.per_color.iter().map(|&b| if b { "ok" } else { "fail" }).collect();
        r.line()
            .field("check.multiple_of_three", checks.multiple_of_three)
            .field("check.closed_form", checks.closed_form)
            .field("check.subdegree", checks.subdegree)
            .field("check.per_color", per_color.join(","));
    }
    r
}

fn presentation(g: &ColoredGraph, color: Option<usize>, target: GroupTarget) -> Result<GroupPresentation, CliError> {
    let target = match target {
        GroupTarget::CGroup => return Ok(c_group_presentation(g, color.unwrap_or(0))?),
        GroupTarget::M if color.is_none() => return Ok(full_presentation(g)),
        GroupTarget::M => Target::Manifold,
        GroupTarget::Hatm => Target::QuasiManifold,
    };
    let analysis = Analysis::new(g);
    match color {
        Some(c) => Ok(pi1_presentation(&analysis, c, target)?),
        None => {
            let mut last = None;
            for c in 0..g.num_colors() {
                match pi1_presentation(&analysis, c, target) {
                    Ok(p) => return Ok(p),
                    Err(e) => last = Some(e),
                }
            }
            Err(last.expect("at least two colors").into())
        }
    }
}

fn group(p: &GroupPresentation, format: Format) -> String {
    match format {
        Format::Human => format!("{}# H1={}\n", p.to_text(), homology_h1(p)),
        Format::Records => {
            let mut r = Report::new();
            r.line()
                .field("generators", p.generators.len())
                .field("relators", p.relators.len())
                .field("killed", p.extra_killed.len())
                .field("H1", homology_h1(p));
            r.render(format)
        }
    }
}

fn catalogue_summary(cat: &Catalogue) -> Report {
    let (b, nb) = cat.bipartite_split();
    let mut r = Report::new();
    r.line()
        .field("n", cat.params.n)
        .field("order", cat.params.order)
        .field("eq", cat.params.equivalence.as_str())
        .field("filters", cat.params.filters);
    r.line().field("count", cat.len()).field("bipartite", b).field("nonbipartite", nb);
    r
}

fn census_report(cat: &Catalogue) -> Report {
    let rep = census::census_report(cat);
    let width = rep.entries.len().to_string().len();
    let mut r = Report::new();
    for (i, e) in rep.entries.iter().enumerate() {
        let key = |s: &str| format!("entry.{i:0width$}.{s}");
        let mut line = r.line();
        line.field(key("code"), &e.code)
            .field(key("bipartite"), e.bipartite)
            .field(key("closed"), e.closed)
            .field(key("singular_manifold"), e.singular_manifold);
        if let Some(w) = e.omega_reduced {
            line.field(key("omega_G_reduced"), w);
        }
        match &e.fingerprint {
            Some(f) => line
                .field(key("H1"), &f.h1)
                .field(key("boundary_components"), f.boundary_components),
            None => line.field(key("H1"), "unknown"),
        };
        if let Some(name) = &e.classification {
            line.field(key("name"), name);
        }
    }
    {
        let mut line = r.line();
        for (w, count) in &rep.omega_histogram {
            line.field(format!("omega_G_reduced.{w}"), count);
        }
    }
    r.line()
        .field("count", rep.entries.len())
        .field("closed", rep.closed)
        .field("singular_manifolds", rep.singular_manifolds)
        .field("unresolved", rep.unresolved);
    r.line()
        .field("defect_ok", rep.defect_ok)
        .field("gdegree_ok", rep.gdegree_ok)
        .field("parity_ok", rep.parity_ok);
    r
}

/// Runs one command, appending its standard output to `out`.
fn execute(cli: Cli, out: &mut String) -> Result<(), CliError> {
    let format = cli.format;
    match cli.command {
        Command::Validate(input) => out.push_str(&validate(&load_graph(&input.file)?).render(format)),
        Command::Analyze(input) => analyze(&load_graph(&input.file)?, out, format)?,
        Command::Transform {
            input,
            suspend,
            sum,
            at,
            with,
            inflate,
            seed,
            internalize,
            simplify,
        } => {
            let g = load_graph(&input.file)?;
            let sum = match sum {
                Some(path) => Some((load_graph(&path)?, at.unwrap_or(0), with.unwrap_or(0))),
                None => None,
            };
            let g = transform(g, &suspend, sum, inflate.map(|k| (k, seed)), internalize, simplify)?;
            out.push_str(&to_gem(&g));
        }
        Command::Gdegree(input) => out.push_str(&gdegree(&load_graph(&input.file)?).render(format)),
        Command::Group { input, color, target } => {
            let p = presentation(&load_graph(&input.file)?, color, target)?;
            out.push_str(&group(&p, format));
        }
        Command::Classify(input) => {
            let name = classify_small(&load_graph(&input.file)?)?;
            let mut r = Report::new();
            r.line().field("name", name);
            out.push_str(&r.render(format));
        }
        Command::Enumerate {
            n,
            order,
            supercontracted,
            bipartite,
            nonbipartite,
            no_ordinary_dipoles,
            equivalence,
            max_order,
            output,
        } => {
            let params = CensusParams {
                n,
                order,
                equivalence: equivalence.into(),
                filters: Filters {
                    bipartite_only: bipartite,
                    nonbipartite_only: nonbipartite,
                    supercontracted,
                    no_ordinary_dipoles,
                },
            };
            let budget = Budget {
                max_order,
                ..Budget::default()
            };
            let cat = census::enumerate_with_budget(&params, budget)?;
            match (output, format) {
                (Some(path), _) => {
                    fs::write(&path, cat.to_text()).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    out.push_str(&catalogue_summary(&cat).render(format));
                }
                (None, Format::Human) => out.push_str(&cat.to_text()),
                (None, Format::Records) => out.push_str(&catalogue_summary(&cat).render(format)),
            }
        }
        Command::Report { catalogue } => {
            let cat = Catalogue::parse_text(&read_input(&catalogue)?)?;
            out.push_str(&census_report(&cat).render(format));
        }
        Command::ExportDot(input) => out.push_str(&dot::export_dot(&load_graph(&input.file)?)),
    }
    Ok(())
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("GEMKIT_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("GEMKIT_THREADS must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let mut out = String::new();
    let result = configure_threads().and_then(|()| execute(cli, &mut out));
    let _ = io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gemkit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
