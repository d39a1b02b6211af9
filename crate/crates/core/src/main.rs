//! Command-line interface: polygon decomposition, matching, the
//! brute-force oracle, level-set slices, pair approximations, and saved
//! query structures.
//!
//! Structured results go to stdout as line-delimited JSON with stable
//! field order; timings and progress go to stderr. Exit codes: 0 on
//! success, 2 for validation errors, 3 for precondition errors.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use polyoverlap::config::RunConfig;
use polyoverlap::decompose::{count_notches, decomposed};
use polyoverlap::error::Error;
use polyoverlap::geom::{ConvexPolygon, Point};
use polyoverlap::io::{polygon_from_wkt, read_polygon, write_polygon, write_svg};
use polyoverlap::matcher::{build_query_structure, match_polygons_with, QueryStructure};
use polyoverlap::oracle::grid_max_overlap;
use polyoverlap::overlap::{approx_convex_pair_variant, compute_slice};
use polyoverlap::SimplePolygon;

#[derive(Parser)]
#[command(
    name = "polyoverlap",
    about = "Approximate the translation maximizing the overlap of two polygons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// JSON config file; omitted fields use their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Approximation budget in (0,1); overrides the config file.
    #[arg(long)]
    eps: Option<f64>,
}

impl ConfigArgs {
    fn load(&self) -> Result<RunConfig, Error> {
        let mut cfg = match &self.config {
            None => RunConfig::default(),
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                serde_json::from_str(&text)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
            }
        };
        if let Some(eps) = self.eps {
            cfg.eps = eps;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a polygon into convex parts and write them back.
    Decompose {
        input: PathBuf,
        /// Output polygon file with parts attached (defaults to stdout).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Optional SVG rendering of the parts.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Treat the input as WKT POLYGON text instead of JSON.
        #[arg(long)]
        wkt: bool,
    },
    /// Find an approximately optimal overlap translation of two polygons.
    Match {
        file_p: PathBuf,
        file_q: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
        /// Save the query structure for later `query` runs.
        #[arg(long)]
        save_context: Option<PathBuf>,
        /// Optional SVG of Q placed at the optimum over P.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Brute-force grid search for the maximum overlap (ground truth).
    Oracle {
        file_p: PathBuf,
        file_q: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Trace the boundary of a superlevel set of the overlap function.
    Slice {
        file_x: PathBuf,
        file_y: PathBuf,
        /// Level of the slice (absolute overlap area).
        #[arg(long)]
        alpha: f64,
        /// Output file for the traced ring (defaults to stdout).
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Build one convex pair's approximation and dump its event polygons.
    PairApprox {
        file_x: PathBuf,
        file_y: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Evaluate a saved match context at query translations.
    Query {
        /// Context file produced by `match --save-context`.
        context: PathBuf,
        /// Translations "x,y" to evaluate.
        #[arg(long = "at", required = true, allow_hyphen_values = true)]
        at: Vec<String>,
        /// Locate by exhaustive scan instead of the slab structure.
        #[arg(long)]
        linear_scan: bool,
    },
}

/// The grid oracle needs convex parts; compute them when absent.
fn ensure_parts(p: SimplePolygon) -> Result<SimplePolygon, Error> {
    if p.parts().is_some() {
        Ok(p)
    } else {
        decomposed(&p)
    }
}

/// Input polygons must be convex for the pairwise commands.
fn as_convex(p: &SimplePolygon, which: &str) -> Result<ConvexPolygon, Error> {
    ConvexPolygon::new(p.ring().to_vec())
        .map_err(|_| Error::PreconditionViolated(format!("{which} polygon must be convex")))
}

fn parse_translation(text: &str) -> Result<Point, Error> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::BadParameter(format!(
            "expected \"x,y\", got {text:?}"
        )));
    }
    let x: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|e| Error::BadParameter(format!("bad x in {text:?}: {e}")))?;
    let y: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|e| Error::BadParameter(format!("bad y in {text:?}: {e}")))?;
    Ok(Point::new(x, y))
}

fn emit<T: Serialize>(record: &T) -> Result<(), Error> {
    use std::io::Write;
    let line = serde_json::to_string(record)?;
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            // Downstream consumer closed the pipe; not an error.
            std::process::exit(0);
        }
        return Err(Error::Io(e));
    }
    Ok(())
}

#[derive(Serialize)]
struct DecomposeRecord {
    vertices: usize,
    notches: usize,
    parts: usize,
}

#[derive(Serialize)]
struct MatchRecord {
    translation: [f64; 2],
    value: f64,
    epsilon: f64,
    pair_budget: f64,
    face_count: usize,
    pair_count: usize,
    event_polygons: usize,
    segments: usize,
}

#[derive(Serialize)]
struct OracleRecord {
    best_translation: [f64; 2],
    best_value: f64,
    grid_pitch: f64,
    refinement_levels: usize,
    value_slack_bound: f64,
}

#[derive(Serialize)]
struct SliceRecord {
    alpha: f64,
    ring: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct EventPolygonRecord {
    index: usize,
    kind: &'static str,
    ring: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct QueryRecord {
    t: [f64; 2],
    value: f64,
    face: Option<usize>,
}

fn ring_pairs(ring: &[Point]) -> Vec<[f64; 2]> {
    ring.iter().map(|p| [p.x, p.y]).collect()
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Decompose {
            input,
            output,
            svg,
            wkt,
        } => {
            let poly = if wkt {
                polygon_from_wkt(&std::fs::read_to_string(&input)?)?
            } else {
                read_polygon(&input)?
            };
            let with_parts = decomposed(&poly)?;
            let parts = with_parts.parts().unwrap();
            emit(&DecomposeRecord {
                vertices: with_parts.ring().len(),
                notches: count_notches(&with_parts),
                parts: parts.len(),
            })?;
            match output {
                Some(path) => write_polygon(&path, &with_parts)?,
                None => {
                    let file = polyoverlap::io::PolygonFile::from_polygon(&with_parts);
                    emit(&file)?;
                }
            }
            if let Some(path) = svg {
                let rings: Vec<Vec<Point>> =
                    parts.iter().map(|c| c.vertices().to_vec()).collect();
                write_svg(&path, &rings)?;
            }
            Ok(())
        }
        Command::Match {
            file_p,
            file_q,
            config,
            save_context,
            svg,
        } => {
            let cfg = config.load()?;
            let p = read_polygon(&file_p)?;
            let q = read_polygon(&file_q)?;
            let ctx = match_polygons_with(&p, &q, cfg.eps, &cfg.match_options())?;
            let r = &ctx.result;
            emit(&MatchRecord {
                translation: [r.translation.x, r.translation.y],
                value: r.value,
                epsilon: r.epsilon,
                pair_budget: r.pair_budget,
                face_count: r.face_count,
                pair_count: r.stats.pair_count,
                event_polygons: r.stats.event_polygon_count,
                segments: r.stats.segment_count,
            })?;
            eprintln!(
                "build {:.1} ms, maximize {:.1} ms",
                r.stats.build_ms, r.stats.maximize_ms
            );
            if let Some(path) = save_context {
                let qs = build_query_structure(&ctx);
                std::fs::write(&path, serde_json::to_string(&qs)?)?;
            }
            if let Some(path) = svg {
                let mut rings = vec![p.ring().to_vec()];
                rings.push(q.translate(r.translation).ring().to_vec());
                write_svg(&path, &rings)?;
            }
            Ok(())
        }
        Command::Oracle {
            file_p,
            file_q,
            config,
        } => {
            let cfg = config.load()?;
            let p = ensure_parts(read_polygon(&file_p)?)?;
            let q = ensure_parts(read_polygon(&file_q)?)?;
            let rep = grid_max_overlap(&p, &q, &cfg.grid)?;
            emit(&OracleRecord {
                best_translation: [rep.best_translation.x, rep.best_translation.y],
                best_value: rep.best_value,
                grid_pitch: rep.grid_pitch,
                refinement_levels: rep.refinement_levels,
                value_slack_bound: rep.value_slack_bound,
            })
        }
        Command::Slice {
            file_x,
            file_y,
            alpha,
            output,
            svg,
        } => {
            let x = as_convex(&read_polygon(&file_x)?, "first")?;
            let y = as_convex(&read_polygon(&file_y)?, "second")?;
            let seed = y.centroid() - x.centroid();
            let slice = compute_slice(&x, &y, alpha, -seed)?;
            let record = SliceRecord {
                alpha: slice.alpha,
                ring: ring_pairs(slice.boundary.vertices()),
            };
            match output {
                Some(path) => {
                    std::fs::write(&path, serde_json::to_string(&record)? + "\n")?
                }
                None => emit(&record)?,
            }
            if let Some(path) = svg {
                write_svg(&path, &[slice.boundary.vertices().to_vec()])?;
            }
            Ok(())
        }
        Command::PairApprox {
            file_x,
            file_y,
            config,
        } => {
            let cfg = config.load()?;
            let x = as_convex(&read_polygon(&file_x)?, "first")?;
            let y = as_convex(&read_polygon(&file_y)?, "second")?;
            let psi = approx_convex_pair_variant(
                &x,
                &y,
                cfg.eps,
                &cfg.constants,
                cfg.onion_slices,
            )?;
            for (i, (poly, kind)) in psi
                .event_polygons
                .iter()
                .zip(psi.kinds.iter())
                .enumerate()
            {
                emit(&EventPolygonRecord {
                    index: i,
                    kind: match kind {
                        polyoverlap::overlap::EventKind::GridPoint => "grid-point",
                        polyoverlap::overlap::EventKind::VertexRegion => "vertex-region",
                        polyoverlap::overlap::EventKind::SliceRing => "slice-ring",
                    },
                    ring: ring_pairs(poly.vertices()),
                })?;
            }
            Ok(())
        }
        Command::Query {
            context,
            at,
            linear_scan,
        } => {
            let text = std::fs::read_to_string(&context)?;
            let mut qs: QueryStructure = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("{}: {e}", context.display())))?;
            qs.linear_scan = linear_scan;
            for spec in &at {
                let t = parse_translation(spec)?;
                emit(&QueryRecord {
                    t: [t.x, t.y],
                    value: qs.query_overlap(t),
                    face: qs.locate(t),
                })?;
            }
            Ok(())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
