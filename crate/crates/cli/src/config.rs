//! Command-line grammar and its resolution into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knotdimer_core::knot::{builtin_knot, builtin_names, lookup_knot, parse_knot_table};
use knotdimer_core::twisted::{builtin_coloring_rep, find_coloring, parse_representation, trivial_rep, Representation};
use knotdimer_core::KnotDiagram;

use crate::error::CliError;

/// Environment variable naming a knot table file that replaces the builtin one.
pub const TABLE_ENV: &str = "KNOTDIMER_TABLE";

#[derive(Parser, Debug)]
#[command(name = "knotdimer", version, about = "Alexander and twisted Alexander polynomials by determinant, state sum and dimers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Alexander polynomial of a knot.
    Alexander {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, value_enum, default_value_t = Method::Det)]
        method: Method,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Twisted Alexander polynomial for an integer representation.
    Twisted {
        #[command(flatten)]
        knot: KnotArgs,
        /// `trivial`, `coloring:p:c1,c2,...`, `coloring:p` (first coloring found) or a file.
        #[arg(long, default_value = "trivial")]
        rep: String,
        #[arg(long, value_enum, default_value_t = Method::Det)]
        method: Method,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cross-check every route and invariant over the knot table.
    Verify {
        /// Run over the whole knot table.
        #[arg(long)]
        corpus: bool,
        /// Largest twisted matrix size (crossings times dimension) sent through the dimer route.
        #[arg(long, default_value_t = 21)]
        max_dimer_size: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write a graph in DOT format.
    Export {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, value_enum, default_value_t = GraphKind::Alexander)]
        graph: GraphKind,
        /// Representation for the twisted and planar graphs.
        #[arg(long, default_value = "trivial")]
        rep: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct KnotArgs {
    /// Name in the knot table.
    #[arg(long, group = "source")]
    pub knot: Option<String>,
    /// PD code such as `X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)`.
    #[arg(long, group = "source")]
    pub pd: Option<String>,
    /// File holding a PD code.
    #[arg(long, group = "source")]
    pub file: Option<PathBuf>,
    /// Bounded face whose column is deleted.
    #[arg(long)]
    pub face: Option<usize>,
    /// Face declared unbounded instead of the longest one.
    #[arg(long)]
    pub unbounded: Option<usize>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Det,
    Dimer,
    Statesum,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Record,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    /// Crossing/face incidence graph.
    Alexander,
    /// Gadget graph as drawn, before any crossing is removed.
    Twisted,
    /// Kasteleyn-signed plane graph after planarization.
    Planar,
}

/// A knot together with the name it is reported under.
#[derive(Debug, Clone)]
pub struct KnotInput {
    pub name: String,
    pub diagram: KnotDiagram,
    pub face: Option<usize>,
}

#[derive(Debug, Clone)]
pub enum RunConfig {
    Alexander { knot: KnotInput, method: Method, format: Format },
    Twisted { knot: KnotInput, rep: Representation, method: Method, format: Format },
    Verify { max_dimer_size: usize, format: Format },
    Export { knot: KnotInput, graph: GraphKind, rep: Representation },
}

impl RunConfig {
    pub fn resolve(command: Command) -> Result<Self, CliError> {
        Ok(match command {
            Command::Alexander { knot, method, output } => {
                RunConfig::Alexander { knot: load_knot(&knot)?, method, format: output.format }
            }
            Command::Twisted { knot, rep, method, output } => {
                if method == Method::Statesum {
                    return Err(CliError::Usage("method statesum is only available for alexander".into()));
                }
                let knot = load_knot(&knot)?;
                let rep = load_rep(&knot.diagram, &rep)?;
                RunConfig::Twisted { knot, rep, method, format: output.format }
            }
            Command::Verify { corpus, max_dimer_size, format } => {
                if !corpus {
                    return Err(CliError::Usage("verify needs --corpus".into()));
                }
                RunConfig::Verify { max_dimer_size, format }
            }
            Command::Export { knot, graph, rep } => {
                let knot = load_knot(&knot)?;
                let rep = load_rep(&knot.diagram, &rep)?;
                RunConfig::Export { knot, graph, rep }
            }
        })
    }
}

fn read_file(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Text of the table named by [`TABLE_ENV`], if set.
fn table_override() -> Result<Option<String>, CliError> {
    match std::env::var_os(TABLE_ENV) {
        Some(path) => read_file(path.as_ref()).map(Some),
        None => Ok(None),
    }
}

/// Every knot of the active table, in table order.
pub fn load_table() -> Result<Vec<(String, KnotDiagram)>, CliError> {
    match table_override()? {
        Some(text) => Ok(parse_knot_table(&text)?),
        None => Ok(builtin_names()
            .into_iter()
            .map(|name| builtin_knot(&name).map(|d| (name, d)))
            .collect::<Result<_, _>>()?),
    }
}

pub fn load_knot(args: &KnotArgs) -> Result<KnotInput, CliError> {
    let (name, diagram) = match (&args.knot, &args.pd, &args.file) {
        (Some(name), _, _) => {
            let d = match table_override()? {
                Some(text) => lookup_knot(&text, name)?,
                None => builtin_knot(name)?,
            };
            (name.clone(), d)
        }
        (_, Some(pd), _) => ("pd".to_string(), KnotDiagram::parse_pd(pd)?),
        (_, _, Some(path)) => {
            let text = read_file(path)?;
            let pd: Vec<&str> =
                text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()).collect();
            (path.display().to_string(), KnotDiagram::parse_pd(&pd.join(" "))?)
        }
        _ => return Err(CliError::Usage("one of --knot, --pd or --file is required".into())),
    };
    let diagram = match args.unbounded {
        Some(f) => diagram.with_unbounded_face(f)?,
        None => diagram,
    };
    Ok(KnotInput { name, diagram, face: args.face })
}

/// Resolves a `--rep` argument against the diagram it will be used with.
pub fn load_rep(d: &KnotDiagram, spec: &str) -> Result<Representation, CliError> {
    if spec == "trivial" {
        return Ok(trivial_rep(d));
    }
    if let Some(rest) = spec.strip_prefix("coloring:") {
        let bad = || CliError::Usage(format!("bad coloring shorthand '{spec}', expected coloring:p:c1,c2,..."));
        let (p, colors) = match rest.split_once(':') {
            Some((p, colors)) => (p, Some(colors)),
            None => (rest, None),
        };
        let p: u64 = p.parse().map_err(|_| bad())?;
        let colors = match colors {
            Some(list) => list.split(',').map(|c| c.trim().parse().map_err(|_| bad())).collect::<Result<Vec<u64>, _>>()?,
            None => find_coloring(d, p).ok_or_else(|| CliError::Usage(format!("no nontrivial {p}-coloring")))?,
        };
        return Ok(builtin_coloring_rep(d, p, &colors)?);
    }
    Ok(parse_representation(&read_file(spec.as_ref())?)?)
}
