//! Command-line front end. `run` returns the exit status and writes the
//! report to `out` and diagnostics to `err`.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::checks::{self, CheckConfig, CheckReport, Field, Property, Topology, Verdict};
use crate::complex::SimplicialComplex;
use crate::constructions::{self, Colouring};
use crate::error::{Error, Result};
use crate::graphs::{self, GorensteinInput, Graph, VwcVerdict};
use crate::ideals::{self, MonomialIdeal};
use crate::io::{self, Kind};
use crate::suite::{self, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
pub enum Format {
    #[default]
    Compact,
    Pretty,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PropertyArg {
    Sc,
    Pm,
    Shellable,
    Vd,
    Cm,
    Hsphere,
    Gorenstein,
}

impl From<PropertyArg> for Property {
    fn from(p: PropertyArg) -> Property {
        match p {
            PropertyArg::Sc => Property::StronglyConnected,
            PropertyArg::Pm => Property::Pseudomanifold,
            PropertyArg::Shellable => Property::Shellable,
            PropertyArg::Vd => Property::VertexDecomposable,
            PropertyArg::Cm => Property::CohenMacaulay,
            PropertyArg::Hsphere => Property::HomologySphere,
            PropertyArg::Gorenstein => Property::Gorenstein,
        }
    }
}

/// Independence complexes, Stanley-Reisner theory, balls and spheres.
///
/// Inputs are JSON files holding a complex ({"vertices","facets"}), a graph
/// ({"vertices","edges"}), an ideal ({"variables","generators"} or a compact
/// string such as "x^2, x*y, y^2") or a colouring ({"parts"}). Where a
/// complex is expected, a graph stands for its independence complex.
#[derive(Debug, Parser)]
#[command(name = "indball", version)]
pub struct Cli {
    /// Coefficient field characteristic: a prime, or 0 for the rationals.
    #[arg(long, global = true, default_value_t = 2)]
    pub field: u64,
    /// Search-node budget for shelling and vertex decomposition.
    #[arg(long, global = true, default_value_t = checks::DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Compact)]
    pub format: Format,
    /// Include wall-clock timings (output is then no longer byte-stable).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Independence complex of a complex or graph.
    Ind { file: PathBuf },
    /// Facet and Stanley-Reisner ideals of a complex, or the two complexes of a square-free ideal.
    Ideal { file: PathBuf },
    /// Polarization of a monomial ideal.
    Polarize { file: PathBuf },
    /// Generalized Bier complex of an artinian monomial ideal.
    Bier { file: PathBuf },
    /// Whiskering of a graph.
    Whisker {
        file: PathBuf,
        /// Prefix for the new vertex labels.
        #[arg(long, default_value = constructions::DEFAULT_FRESH_PREFIX)]
        prefix: String,
    },
    /// Coloured whiskering of a complex.
    #[command(name = "colour-whisker")]
    ColourWhisker {
        file: PathBuf,
        #[arg(long, conflicts_with = "singletons", required_unless_present = "singletons")]
        colouring: Option<PathBuf>,
        /// Use the colouring with one part per vertex.
        #[arg(long)]
        singletons: bool,
        #[arg(long, default_value = constructions::DEFAULT_FRESH_PREFIX)]
        prefix: String,
    },
    /// Decide whether a complex (or the facet complex of an ideal) is grafted.
    #[command(name = "graft-check")]
    GraftCheck { file: PathBuf },
    /// Check one property.
    Check {
        #[arg(long, value_enum)]
        property: PropertyArg,
        file: PathBuf,
    },
    /// Sphere / ball classification.
    Classify {
        file: PathBuf,
        /// Treat the input as a very well-covered graph and report all equivalent conditions.
        #[arg(long)]
        vwc: bool,
    },
    /// Gorenstein classification.
    Gorenstein {
        file: PathBuf,
        /// Use the complete-intersection test (certified input classes only).
        #[arg(long)]
        shortcut: bool,
    },
    /// Reduced homology.
    Homology { file: PathBuf },
    /// f-vector and profile.
    Fvector { file: PathBuf },
    /// Seeded randomized invariant batteries.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON file overriding battery sizes.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Run only the named batteries.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
}

/// Error plus the file it came from, if any.
struct Failure {
    error: Error,
    file: Option<PathBuf>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, file: None }
    }
}

type Outcome = std::result::Result<(Value, bool), Failure>;

fn read(path: &Path) -> std::result::Result<Value, Failure> {
    let at = |error| Failure {
        error,
        file: Some(path.to_path_buf()),
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| at(Error::input("", format!("cannot read {}: {e}", path.display()))))?;
    io::read_document(&text).map_err(at)
}

fn in_file<T>(path: &Path, r: Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|error| Failure {
        error,
        file: Some(path.to_path_buf()),
    })
}

enum Input {
    Complex(SimplicialComplex),
    Graph(Graph),
    Ideal(MonomialIdeal),
}

fn load(path: &Path) -> std::result::Result<Input, Failure> {
    let v = read(path)?;
    let kind = in_file(path, io::kind_of(&v))?;
    in_file(
        path,
        match kind {
            Kind::Complex => io::complex_from_json(&v).map(Input::Complex),
            Kind::Graph => io::graph_from_json(&v).map(Input::Graph),
            Kind::Ideal => io::ideal_from_json(&v).map(Input::Ideal),
            Kind::Colouring => Err(Error::input("", "expected a complex, graph or ideal, found a colouring")),
        },
    )
}

fn wrong_kind(path: &Path, want: &str) -> Failure {
    Failure {
        error: Error::input("", format!("expected {want}")),
        file: Some(path.to_path_buf()),
    }
}

/// A complex, or the independence complex of a graph.
fn load_complex(path: &Path) -> std::result::Result<SimplicialComplex, Failure> {
    match load(path)? {
        Input::Complex(c) => Ok(c),
        Input::Graph(g) => Ok(g.independence_complex()),
        Input::Ideal(_) => Err(wrong_kind(path, "a complex or graph")),
    }
}

fn load_graph(path: &Path) -> std::result::Result<Graph, Failure> {
    match load(path)? {
        Input::Graph(g) => Ok(g),
        _ => Err(wrong_kind(path, "a graph")),
    }
}

fn load_ideal(path: &Path) -> std::result::Result<MonomialIdeal, Failure> {
    match load(path)? {
        Input::Ideal(i) => Ok(i),
        _ => Err(wrong_kind(path, "an ideal")),
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn report(r: CheckReport, timing: bool) -> (Value, bool) {
    let unknown = r.verdict == Verdict::Unknown;
    let r = if timing { r } else { r.without_timing() };
    (to_value(&r), unknown)
}

fn topology_value(t: &Topology, config: &CheckConfig) -> Value {
    json!({
        "topology": t,
        "field": config.field,
        "budget": config.budget,
    })
}

fn execute(cli: &Cli, config: &CheckConfig) -> Outcome {
    let timing = cli.timing;
    let done = |v: Value| Ok((v, false));
    match &cli.command {
        Command::Ind { file } => {
            let c = load_complex(file)?;
            done(io::complex_to_json(&in_file(file, c.independence_complex())?))
        }
        Command::Ideal { file } => match load(file)? {
            Input::Complex(c) => {
                let ideals = in_file(file, ideals::complex_to_ideals(&c))?;
                done(json!({
                    "facet_ideal": io::ideal_to_json(&ideals.facet_ideal),
                    "sr_ideal": io::ideal_to_json(&ideals.sr_ideal),
                }))
            }
            Input::Graph(g) => done(json!({ "edge_ideal": io::ideal_to_json(&g.edge_ideal()) })),
            Input::Ideal(i) => {
                let cx = in_file(file, i.to_complexes())?;
                done(json!({
                    "facet_complex": io::complex_to_json(&cx.facet_complex),
                    "sr_complex": io::complex_to_json(&cx.sr_complex),
                }))
            }
        },
        Command::Polarize { file } => {
            let i = load_ideal(file)?;
            let p = in_file(file, i.polarize())?;
            done(json!({
                "polarized": io::ideal_to_json(&p.polarized),
                "map": p.map,
            }))
        }
        Command::Bier { file } => {
            let i = load_ideal(file)?;
            let out = in_file(file, constructions::bier(&i))?;
            let topology = checks::classify_topology(&out.complex, config)?;
            let unknown = matches!(topology, Topology::PseudomanifoldUnknown { .. });
            let dim = out.complex.dim();
            Ok((
                json!({
                    "predicted_type": out.predicted_type,
                    "predicted_dim": out.predicted_dim,
                    "dim": dim,
                    "facets": out.complex.facets().len(),
                    "vertices": out.complex.num_vertices(),
                    "complex": io::complex_to_json(&out.complex),
                    "polarized": io::ideal_to_json(&out.polarized),
                    "classification": topology_value(&topology, config),
                    "agrees": topology.name() == to_value(&out.predicted_type),
                }),
                unknown,
            ))
        }
        Command::Whisker { file, prefix } => {
            let g = load_graph(file)?;
            done(io::graph_to_json(&in_file(
                file,
                constructions::whisker_graph_with_prefix(&g, prefix),
            )?))
        }
        Command::ColourWhisker {
            file,
            colouring,
            singletons,
            prefix,
        } => {
            let c = load_complex(file)?;
            let chi = match (colouring, singletons) {
                (_, true) => Colouring::singletons(&c),
                (Some(path), false) => {
                    let v = read(path)?;
                    let chi = in_file(path, io::colouring_from_json(&v))?;
                    in_file(path, chi.resolve(&c))?;
                    chi
                }
                (None, false) => unreachable!("clap requires one of the two"),
            };
            let w = in_file(file, constructions::coloured_whisker_with_prefix(&c, &chi, prefix))?;
            done(io::complex_to_json(&w))
        }
        Command::GraftCheck { file } => {
            let c = match load(file)? {
                Input::Complex(c) => c,
                Input::Graph(g) => g.as_complex(),
                Input::Ideal(i) => in_file(file, i.to_complexes())?.facet_complex,
            };
            let cert = in_file(file, constructions::is_grafted(&c))?;
            done(json!({
                "grafted": cert.is_some(),
                "certificate": cert,
            }))
        }
        Command::Check { property, file } => {
            let property = Property::from(*property);
            let r = match (property, load(file)?) {
                (Property::Gorenstein, Input::Graph(g)) => {
                    graphs::gorenstein_classify(GorensteinInput::Graph(&g), config, false)
                }
                (_, Input::Complex(c)) => checks::check(&c, property, config),
                (_, Input::Graph(g)) => checks::check(&g.independence_complex(), property, config),
                (_, Input::Ideal(_)) => return Err(wrong_kind(file, "a complex or graph")),
            };
            Ok(report(in_file(file, r)?, timing))
        }
        Command::Classify { file, vwc } => {
            if *vwc {
                let g = load_graph(file)?;
                let cls = in_file(file, graphs::classify_vwc(&g, config))?;
                let unknown = cls.verdict == VwcVerdict::Unknown;
                let cls = if timing { cls } else { cls.without_timing() };
                return Ok((to_value(&cls), unknown));
            }
            let c = load_complex(file)?;
            let t = in_file(file, checks::classify_topology(&c, config))?;
            let unknown = matches!(t, Topology::PseudomanifoldUnknown { .. });
            Ok((topology_value(&t, config), unknown))
        }
        Command::Gorenstein { file, shortcut } => {
            let r = match load(file)? {
                Input::Graph(g) => graphs::gorenstein_classify(GorensteinInput::Graph(&g), config, *shortcut),
                Input::Complex(c) => graphs::gorenstein_classify(GorensteinInput::Complex(&c), config, *shortcut),
                Input::Ideal(_) => return Err(wrong_kind(file, "a complex or graph")),
            };
            Ok(report(in_file(file, r)?, timing))
        }
        Command::Homology { file } => {
            let c = load_complex(file)?;
            let betti = in_file(file, checks::reduced_homology(&c, config.field))?;
            done(json!({
                "dim": c.dim(),
                "betti": betti,
            }))
        }
        Command::Fvector { file } => {
            let c = load_complex(file)?;
            done(to_value(&in_file(file, c.profile())?))
        }
        Command::Suite { seed, config: path, only } => {
            let mut cfg = match path {
                Some(p) => {
                    let v = read(p)?;
                    in_file(
                        p,
                        serde_json::from_value::<SuiteConfig>(v)
                            .map_err(|e| Error::input("", format!("invalid suite config: {e}"))),
                    )?
                }
                None => SuiteConfig::default(),
            };
            if path.is_none() || cli.budget != checks::DEFAULT_BUDGET {
                cfg.budget = cli.budget;
            }
            if let Some(bad) = only.iter().find(|o| !suite::BATTERIES.contains(&o.as_str())) {
                return Err(Error::input(
                    "/only",
                    format!("unknown battery {bad:?}; known: {}", suite::BATTERIES.join(", ")),
                )
                .into());
            }
            let r = suite::run(*seed, &cfg, only);
            let unknown = r.has_inconclusive();
            let r = if timing { r } else { r.without_timing() };
            Ok((to_value(&r), unknown))
        }
    }
}

fn error_json(f: &Failure) -> Value {
    let mut v = match &f.error {
        Error::Input { pointer, message } => json!({
            "error": "input",
            "pointer": pointer,
            "message": message,
        }),
        Error::Domain(message) => json!({
            "error": "domain",
            "message": message,
        }),
    };
    if let Some(file) = &f.file {
        v["file"] = json!(file.display().to_string());
    }
    v
}

fn emit(w: &mut dyn Write, v: &Value, format: Format) {
    let text = match format {
        Format::Compact => serde_json::to_string(v),
        Format::Pretty => serde_json::to_string_pretty(v),
    }
    .expect("values serialize");
    let _ = writeln!(w, "{text}");
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = write!(err, "{e}");
            return EXIT_INPUT;
        }
    };
    let field = match Field::from_characteristic(cli.field) {
        Ok(f) => f,
        Err(e) => {
            emit(err, &error_json(&e.into()), Format::Compact);
            return EXIT_INPUT;
        }
    };
    let config = CheckConfig {
        field,
        budget: cli.budget,
    };
    let start = Instant::now();
    match execute(&cli, &config) {
        Ok((mut v, unknown)) => {
            if cli.timing {
                if let Some(obj) = v.as_object_mut() {
                    obj.insert("wall_ms".into(), json!(start.elapsed().as_secs_f64() * 1e3));
                }
            }
            emit(out, &v, cli.format);
            if unknown {
                EXIT_UNKNOWN
            } else {
                EXIT_OK
            }
        }
        Err(f) => {
            emit(err, &error_json(&f), Format::Compact);
            EXIT_INPUT
        }
    }
}
