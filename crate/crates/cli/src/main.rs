//! `monsky`: command-line front end for constrained triangulations, area
//! polynomials and Monsky polynomials. Reports are JSON on stdout; errors go
//! to stderr. Exit codes: 0 ok, 1 domain error, 2 usage error.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use monsky_core::algebra::{EliminationOrder, Monomial, MultiPoly};
use monsky_core::areapoly::{area_polynomial_with, equidissection_obstruction, AreaPolynomial};
use monsky_core::io::{format_rational, load_ct, serialize_document, TriangulationDocument};
use monsky_core::model::{validate_ct, ConstrainedTriangulation};
use monsky_core::monsky::{canonical_monsky, is_positive, is_small};
use monsky_core::order::find_drawing_order;
use monsky_core::param::{area_system, build_parameterization, drawing_areas, sample_generic_drawing};
use monsky_core::valuation::{color, normalize_drawing, rainbow_triangles};
use monsky_core::{corpus, svg, Error};

#[derive(Parser)]
#[command(name = "monsky", version, about = "Area polynomials and Monsky polynomials of constrained triangulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
    Grevlex,
}

#[derive(Subcommand)]
enum Command {
    /// Check every invariant; exit 0 iff the document is valid.
    Validate { file: PathBuf },
    /// Drawing order, per-vertex freedoms and deformation dimension.
    Order { file: PathBuf },
    /// Area functions of the living triangles.
    Areas {
        file: PathBuf,
        /// Keep p, q, s as free parameters.
        #[arg(long)]
        free_corners: bool,
    },
    /// The area polynomial p.
    Areapoly {
        file: PathBuf,
        /// Elimination order.
        #[arg(long, value_enum, default_value = "grevlex")]
        order: OrderArg,
    },
    /// p, the canonical pair f and f̃, and their verdicts.
    Monsky { file: PathBuf },
    /// A generic drawing with exact coordinates.
    Sample {
        file: PathBuf,
        #[arg(long)]
        seed: u64,
        /// Write an SVG rendering here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// 2-adic coloring of a sampled drawing and a rainbow triangle.
    Color {
        file: PathBuf,
        #[arg(long)]
        seed: u64,
    },
    /// Built-in examples.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// The honest diagonal triangulation with N interior vertices.
    Diagonal { n: usize },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Names of the built-in examples.
    List,
    /// Print one example as a document.
    Emit { name: String },
}

enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// A report, and whether the command succeeded.
type Outcome = Result<(Value, bool), Failure>;

fn read(path: &Path) -> Result<ConstrainedTriangulation, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(load_ct(&text)?)
}

fn monomial_text(p: &MultiPoly, m: &Monomial) -> String {
    MultiPoly::from_terms(p.vars(), [(m.clone(), num_rational::BigRational::from_integer(1.into()))]).to_string()
}

fn areapoly_json(ap: &AreaPolynomial) -> Value {
    json!({
        "p": ap.p.to_string(),
        "degree": ap.d,
        "terms": ap.p.len(),
        "sign_witness": monomial_text(&ap.p, &ap.sign_witness),
    })
}

fn point_json(ct: &ConstrainedTriangulation, points: &[monsky_core::algebra::QPoint]) -> Value {
    let map: BTreeMap<&str, [String; 2]> = ct
        .vertex_names()
        .iter()
        .zip(points)
        .map(|(n, (x, y))| (n.as_str(), [format_rational(x), format_rational(y)]))
        .collect();
    json!(map)
}

fn living_ids(ct: &ConstrainedTriangulation) -> Vec<String> {
    ct.living().iter().map(|&t| ct.triangles()[t].id.clone()).collect()
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { file } => {
            let ct = read(&file)?;
            let report = validate_ct(&ct);
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| json!({"kind": v.kind(), "message": v.to_string()}))
                .collect();
            let ok = report.ok;
            Ok((
                json!({"command": "validate", "name": ct.name(), "ok": ok, "euler": report.euler, "violations": violations}),
                ok,
            ))
        }
        Command::Order { file } => {
            let ct = read(&file)?;
            validate_ct(&ct).into_result()?;
            let order = find_drawing_order(&ct)?;
            let alpha: BTreeMap<&str, u8> = order
                .sequence
                .iter()
                .map(|&v| (ct.vertex_name(v), order.alpha[v]))
                .collect();
            Ok((
                json!({
                    "command": "order",
                    "name": ct.name(),
                    "order": order.sequence_names(&ct),
                    "alpha": alpha,
                    "dimension": order.dimension(),
                }),
                true,
            ))
        }
        Command::Areas { file, free_corners } => {
            let ct = read(&file)?;
            validate_ct(&ct).into_result()?;
            let order = find_drawing_order(&ct)?;
            let par = build_parameterization(&ct, &order, !free_corners)?;
            let sys = area_system(&ct, &par);
            let areas: Vec<Value> = sys
                .ids
                .iter()
                .zip(&sys.w)
                .map(|(id, w)| json!({"id": id, "area": w.to_string()}))
                .collect();
            Ok((
                json!({
                    "command": "areas",
                    "name": ct.name(),
                    "free_corners": free_corners,
                    "parameters": par.params.iter().collect::<Vec<_>>(),
                    "areas": areas,
                    "sigma": sys.sigma.to_string(),
                }),
                true,
            ))
        }
        Command::Areapoly { file, order } => {
            let ct = read(&file)?;
            validate_ct(&ct).into_result()?;
            let how = match order {
                OrderArg::Lex => EliminationOrder::Lex,
                OrderArg::Grevlex => EliminationOrder::Block,
            };
            let start = Instant::now();
            let drawing = find_drawing_order(&ct)?;
            let ap = area_polynomial_with(&ct, &drawing, how)?;
            let mut report = areapoly_json(&ap);
            report["command"] = json!("areapoly");
            report["name"] = json!(ct.name());
            report["seconds"] = json!(start.elapsed().as_secs_f64());
            Ok((report, true))
        }
        Command::Monsky { file } => {
            let ct = read(&file)?;
            validate_ct(&ct).into_result()?;
            let start = Instant::now();
            let drawing = find_drawing_order(&ct)?;
            let ap = area_polynomial_with(&ct, &drawing, EliminationOrder::Block)?;
            let pair = canonical_monsky(&ap)?;
            let (small, small_bad) = is_small(&ap.p);
            let (f_pos, f_bad) = is_positive(&pair.f);
            let (ft_pos, ft_bad) = is_positive(&pair.f_tilde);
            let texts = |ms: &[Monomial]| ms.iter().map(|m| monomial_text(&ap.p, m)).collect::<Vec<_>>();
            let ob = equidissection_obstruction(&ap.p);
            Ok((
                json!({
                    "command": "monsky",
                    "name": ct.name(),
                    "p": ap.p.to_string(),
                    "degree": ap.d,
                    "f": pair.f.to_string(),
                    "f_tilde": pair.f_tilde.to_string(),
                    "terms": {"p": ap.p.len(), "f": pair.f.len(), "f_tilde": pair.f_tilde.len()},
                    "mod2": true,
                    "small": small,
                    "small_violations": texts(&small_bad),
                    "f_positive": f_pos,
                    "f_negative_terms": texts(&f_bad),
                    "f_tilde_positive": ft_pos,
                    "f_tilde_negative_terms": texts(&ft_bad),
                    "obstruction": {
                        "p_at_ones": ob.p_at_ones.to_string(),
                        "deformable_to_equal_areas": ob.deformable_to_equal_areas,
                    },
                    "seconds": start.elapsed().as_secs_f64(),
                }),
                true,
            ))
        }
        Command::Sample { file, seed, svg: out } => {
            let ct = read(&file)?;
            validate_ct(&ct).into_result()?;
            let d = sample_generic_drawing(&ct, seed)?;
            if let Some(path) = &out {
                fs::write(path, svg::render_svg(&ct, &d.points))
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            let areas: BTreeMap<String, String> = living_ids(&ct)
                .into_iter()
                .zip(drawing_areas(&ct, &d.points))
                .map(|(id, a)| (id, format_rational(&a)))
                .collect();
            Ok((
                json!({
                    "command": "sample",
                    "name": ct.name(),
                    "seed": seed,
                    "parameters": d.params.iter().map(format_rational).collect::<Vec<_>>(),
                    "points": point_json(&ct, &d.points),
                    "areas": areas,
                    "is_drawing": d.flags.is_drawing,
                    "is_generic": d.flags.is_generic,
                    "is_life_preserving": d.flags.is_life_preserving,
                }),
                true,
            ))
        }
        Command::Color { file, seed } => {
            let ct = read(&file)?;
            validate_ct(&ct).into_result()?;
            if !ct.is_honest() {
                return Err(Error::NotHonest.into());
            }
            let d = sample_generic_drawing(&ct, seed)?;
            let normalized = normalize_drawing(&ct, &d.points)?;
            let colors: BTreeMap<&str, String> = ct
                .vertex_names()
                .iter()
                .zip(&normalized)
                .map(|(n, p)| (n.as_str(), color(p).to_string()))
                .collect();
            let rainbows = rainbow_triangles(&ct, &d.points)?;
            let first = rainbows
                .first()
                .ok_or_else(|| Error::VerificationFailed("no rainbow triangle".into()))?;
            let t = &ct.triangles()[*first];
            let [a, b, c] = t.verts.map(|v| normalized[v].clone());
            let area = monsky_core::algebra::triangle_area(&a, &b, &c);
            Ok((
                json!({
                    "command": "color",
                    "name": ct.name(),
                    "seed": seed,
                    "points": point_json(&ct, &normalized),
                    "colors": colors,
                    "rainbow": t.id,
                    "rainbow_area": format_rational(&area),
                    "rainbow_count": rainbows.len(),
                }),
                true,
            ))
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => Ok((json!(corpus::names()), true)),
            CorpusAction::Emit { name } => {
                let ct = corpus::get(&name)?;
                let doc = TriangulationDocument::from_ct(&ct, None);
                Ok((serde_json::from_str(&serialize_document(&doc)).expect("document is JSON"), true))
            }
        },
        Command::Diagonal { n } => {
            if n == 0 {
                return Err(Failure::Usage("N must be at least 1".into()));
            }
            let doc = TriangulationDocument::from_ct(&corpus::diagonal(n), None);
            Ok((serde_json::from_str(&serialize_document(&doc)).expect("document is JSON"), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((report, ok)) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("report is JSON"));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
