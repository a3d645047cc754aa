use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use trop_core::doc::CurveModel;
use trop_core::elliptic::{extract_cycle, parse_divisor, reference_cubic, verify_group_axioms, CycleModel, CyclePoint};
use trop_core::exact::{fmt_rational, parse_point, Point2};
use trop_core::intersect::{
    mixed_area, stable_intersection, transversal_intersections, verify_bernstein_random, verify_bezout,
    IntersectionMultiset, SupportMode,
};
use trop_core::subdiv::EdgeKind;
use trop_core::svg::{render, write_svg, Overlays, Viewport};
use trop_core::{build_curve, Result, TropError, TropicalCurve, TropicalPolynomial};

#[derive(Parser)]
#[command(name = "trop", version, about = "Exact tropical plane curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a polynomial and list its terms
    Parse {
        poly: String,
        #[arg(long)]
        json: bool,
    },
    /// Build the curve and print a summary or a JSON document
    Curve {
        poly: String,
        #[arg(long, conflicts_with = "summary")]
        json: bool,
        #[arg(long)]
        summary: bool,
        /// Include the dual subdivision in the JSON document
        #[arg(long)]
        subdiv: bool,
    },
    /// Print the dual subdivision
    Subdiv {
        poly: String,
        #[arg(long)]
        json: bool,
    },
    /// Intersect two curves
    Intersect {
        f: String,
        g: String,
        #[arg(long, conflicts_with = "transversal")]
        stable: bool,
        #[arg(long)]
        transversal: bool,
        #[arg(long)]
        json: bool,
    },
    /// Group law on the cycle of an elliptic curve
    Group {
        poly: String,
        /// Base point "x,y" on the cycle (default: lowest-leftmost cycle vertex)
        #[arg(long)]
        origin: Option<String>,
        #[command(subcommand)]
        op: GroupOp,
    },
    /// Render an SVG
    Plot {
        poly: String,
        #[arg(short, long)]
        output: PathBuf,
        /// "x_min,y_min,x_max,y_max"
        #[arg(long, allow_hyphen_values = true)]
        viewport: Option<String>,
        /// Draw the dual subdivision as an inset
        #[arg(long)]
        subdivision: bool,
        /// Overlay a second curve and the stable intersection
        #[arg(long)]
        intersect: Option<String>,
        /// Overlay the line construction of P + Q
        #[arg(long, num_args = 2, value_names = ["P", "Q"], allow_hyphen_values = true)]
        add: Option<Vec<String>>,
        #[arg(long)]
        origin: Option<String>,
    },
    /// Run randomized verification of the counting theorems or the group axioms
    Verify {
        check: Check,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, env = "TROP_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_degree: i64,
        /// Curve for group-axioms (default: the reference cubic)
        #[arg(long)]
        poly: Option<String>,
    },
}

#[derive(Subcommand)]
enum GroupOp {
    /// P + Q
    Add {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// P + Q by two line constructions
    GeometricAdd {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// -P
    Neg {
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// Reduce a degree-0 divisor such as "(1,2)+(3,4)-2*O"
    Reduce {
        #[arg(allow_hyphen_values = true)]
        divisor: String,
    },
    /// Position of P
    Lambda {
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// The cycle: vertices, edge lengths and total length
    Cycle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Bezout,
    StrongBezout,
    Bernstein,
    GroupAxioms,
}

enum Outcome {
    Ok,
    VerificationFailed,
}

fn curve_of(text: &str) -> Result<TropicalCurve> {
    build_curve(&TropicalPolynomial::parse(text)?)
}

fn print_multiset(m: &IntersectionMultiset) {
    for e in &m.entries {
        println!("{} x{}", e.point, e.multiplicity);
    }
    println!("total {}", m.total);
}

fn cmd_parse(poly: &str, json: bool) -> Result<Outcome> {
    let f = TropicalPolynomial::parse(poly)?;
    if json {
        let terms: Vec<serde_json::Value> = f
            .terms()
            .iter()
            .map(|(e, c)| serde_json::json!({ "exponent": e, "coefficient": fmt_rational(c) }))
            .collect();
        let out = serde_json::json!({ "arity": f.arity(), "normalized": f.to_string(), "terms": terms });
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        println!("{:?} polynomial, {} terms", f.arity(), f.len());
        for (e, c) in f.terms() {
            println!("{:?} {}", e, c);
        }
        println!("normalized: {f}");
    }
    Ok(Outcome::Ok)
}

fn cmd_curve(poly: &str, json: bool, subdiv: bool) -> Result<Outcome> {
    let model = CurveModel::from_source(poly, subdiv)?;
    if json {
        println!("{}", model.to_json());
        return Ok(Outcome::Ok);
    }
    let c = &model.curve;
    let report = c.polynomial.curve_degree();
    println!("degree {}", report.degree);
    println!("full support {}", report.full_support);
    println!("smooth {}", c.is_smooth());
    match c.genus() {
        Ok(g) => println!("genus {g}"),
        Err(_) => println!("genus undefined (not smooth)"),
    }
    println!("balanced {}", c.check_balancing());
    println!("vertices {}", c.vertices.len());
    println!("bounded edges {}", c.bounded_edges.len());
    println!("rays {}", c.rays.len());
    if !c.lines.is_empty() {
        println!("lines {}", c.lines.len());
    }
    if let Some(m) = &model.cycle {
        println!("elliptic cycle of {} edges, length {}", m.len(), m.total_length);
    }
    Ok(Outcome::Ok)
}

fn cmd_subdiv(poly: &str, json: bool) -> Result<Outcome> {
    let c = curve_of(poly)?;
    let s = &c.subdivision;
    if json {
        println!("{}", serde_json::to_string_pretty(s).expect("json"));
        return Ok(Outcome::Ok);
    }
    println!("dimension {}", s.dimension);
    for cell in &s.cells {
        let corners: Vec<String> = cell.iter().map(|p| p.to_string()).collect();
        println!("cell {}", corners.join(" "));
    }
    for e in &s.edges {
        let kind = match e.kind {
            EdgeKind::Interior => "interior",
            EdgeKind::Boundary => "boundary",
        };
        println!("edge {} {} {kind}", e.a, e.b);
    }
    println!("unimodular {}", s.is_unimodular_triangulation());
    println!("interior lattice vertices {}", s.interior_lattice_vertex_count());
    Ok(Outcome::Ok)
}

fn cmd_intersect(f: &str, g: &str, transversal: bool, json: bool) -> Result<Outcome> {
    let (c, d) = (curve_of(f)?, curve_of(g)?);
    let meet = if transversal { transversal_intersections(&c, &d)? } else { stable_intersection(&c, &d) };
    if json {
        println!("{}", serde_json::to_string_pretty(&meet).expect("json"));
        return Ok(Outcome::Ok);
    }
    print_multiset(&meet);
    let (rc, rd) = (c.polynomial.curve_degree(), d.polynomial.curve_degree());
    let mut ok = true;
    if rc.full_support && rd.full_support {
        let expect = rc.degree * rd.degree;
        ok &= meet.total == expect;
        println!("bezout {}*{} = {} {}", rc.degree, rd.degree, expect, if meet.total == expect { "ok" } else { "MISMATCH" });
    }
    let area = mixed_area(&c.polynomial.newton_polygon(), &d.polynomial.newton_polygon());
    let bernstein = area == trop_core::exact::int(meet.total);
    println!("mixed area {} {}", area, if bernstein { "ok" } else { "MISMATCH" });
    ok &= bernstein;
    Ok(if ok { Outcome::Ok } else { Outcome::VerificationFailed })
}

fn cycle_with_origin(poly: &str, origin: Option<&str>) -> Result<CycleModel> {
    let m = extract_cycle(&curve_of(poly)?)?;
    match origin {
        Some(o) => m.set_origin(&parse_point(o)?),
        None => Ok(m),
    }
}

fn cycle_point(m: &CycleModel, text: &str) -> Result<CyclePoint> {
    if text.trim() == "O" {
        return Ok(m.origin.clone());
    }
    m.locate(&parse_point(text)?).ok_or(TropError::NotOnCycle)
}

fn print_cycle_point(m: &CycleModel, label: &str, p: &CyclePoint) {
    println!(
        "{label} edge {} t {} point {} lambda {}",
        p.edge,
        p.t,
        m.embed(p),
        m.lambda(p)
    );
}

fn cmd_group(poly: &str, origin: Option<&str>, op: &GroupOp) -> Result<Outcome> {
    let m = cycle_with_origin(poly, origin)?;
    match op {
        GroupOp::Add { p, q } => {
            let (p, q) = (cycle_point(&m, p)?, cycle_point(&m, q)?);
            print_cycle_point(&m, "P", &p);
            print_cycle_point(&m, "Q", &q);
            print_cycle_point(&m, "P+Q", &m.group_add(&p, &q));
        }
        GroupOp::GeometricAdd { p, q } => {
            let (p, q) = (cycle_point(&m, p)?, cycle_point(&m, q)?);
            let g = m.geometric_add_traced(&p, &q)?;
            println!("line 1 center {} (fallback steps {})", g.first.center, g.first.fallback_steps);
            print_cycle_point(&m, "R", &g.first.third);
            println!("line 2 center {} (fallback steps {})", g.second.center, g.second.fallback_steps);
            print_cycle_point(&m, "P+Q", &g.sum);
            let arithmetic = m.group_add(&p, &q);
            println!("agrees with arithmetic sum {}", g.sum == arithmetic);
            if g.sum != arithmetic {
                return Ok(Outcome::VerificationFailed);
            }
        }
        GroupOp::Neg { p } => {
            let p = cycle_point(&m, p)?;
            print_cycle_point(&m, "P", &p);
            print_cycle_point(&m, "-P", &m.group_neg(&p));
        }
        GroupOp::Reduce { divisor } => {
            let d = parse_divisor(divisor, &m.origin_point())?;
            print_cycle_point(&m, "P", &m.reduce_divisor(&d)?);
        }
        GroupOp::Lambda { p } => {
            print_cycle_point(&m, "P", &cycle_point(&m, p)?);
        }
        GroupOp::Cycle => {
            for i in 0..m.len() {
                println!(
                    "V{} {} direction {} length {}",
                    i + 1,
                    m.vertices[i],
                    m.directions[i],
                    m.lengths[i]
                );
            }
            println!("total length {}", m.total_length);
            print_cycle_point(&m, "O", &m.origin);
        }
    }
    Ok(Outcome::Ok)
}

#[allow(clippy::too_many_arguments)]
fn cmd_plot(
    poly: &str,
    output: &std::path::Path,
    viewport: Option<&str>,
    subdivision: bool,
    intersect: Option<&str>,
    add: Option<&[String]>,
    origin: Option<&str>,
) -> Result<Outcome> {
    let c = curve_of(poly)?;
    let cycle = match extract_cycle(&c) {
        Ok(m) => Some(match origin {
            Some(o) => m.set_origin(&parse_point(o)?)?,
            None => m,
        }),
        Err(e) if add.is_some() || origin.is_some() => return Err(e),
        Err(_) => None,
    };
    let second = intersect.map(curve_of).transpose()?;
    let meet = second.as_ref().map(|g| stable_intersection(&c, g));
    let sum = match (add, &cycle) {
        (Some(pq), Some(m)) => {
            let (p, q) = (cycle_point(m, &pq[0])?, cycle_point(m, &pq[1])?);
            Some(m.geometric_add_traced(&p, &q)?)
        }
        _ => None,
    };
    let vp = match viewport {
        Some(v) => Viewport::parse(v)?,
        None => {
            let mut pts: Vec<Point2> = c
                .vertices
                .iter()
                .map(|v| v.point.clone())
                .chain(c.lines.iter().map(|l| l.point.clone()))
                .collect();
            if let Some(meet) = &meet {
                pts.extend(meet.points().cloned());
            }
            if let Some(g) = &second {
                pts.extend(g.vertices.iter().map(|v| v.point.clone()));
            }
            if let Some(s) = &sum {
                pts.push(s.first.center.clone());
                pts.push(s.second.center.clone());
            }
            Viewport::fit(&pts)
        }
    };
    let overlays = Overlays {
        subdivision,
        cycle: cycle.as_ref(),
        intersection: second.as_ref().zip(meet.as_ref()),
        addition: sum.as_ref(),
    };
    write_svg(output, &render(&c, &vp, &overlays))?;
    println!("wrote {}", output.display());
    Ok(Outcome::Ok)
}

fn cmd_verify(check: Check, trials: usize, seed: u64, max_degree: i64, poly: Option<&str>) -> Result<Outcome> {
    let passed = match check {
        Check::Bezout | Check::StrongBezout => {
            let mode = if matches!(check, Check::Bezout) { SupportMode::BothFull } else { SupportMode::OneFull };
            let mut all = true;
            for c in 1..=max_degree {
                for d in 1..=max_degree {
                    let r = verify_bezout(c, d, trials, seed, mode);
                    print!("{}", r.to_text());
                    all &= r.passed();
                }
            }
            all
        }
        Check::Bernstein => {
            let r = verify_bernstein_random(trials, seed);
            print!("{}", r.to_text());
            r.passed()
        }
        Check::GroupAxioms => {
            let curve = match poly {
                Some(p) => curve_of(p)?,
                None => build_curve(&reference_cubic())?,
            };
            let r = verify_group_axioms(&extract_cycle(&curve)?, trials, seed);
            print!("{}", r.to_text());
            r.passed()
        }
    };
    Ok(if passed { Outcome::Ok } else { Outcome::VerificationFailed })
}

fn run(cli: Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Parse { poly, json } => cmd_parse(poly, *json),
        Command::Curve { poly, json, subdiv, .. } => cmd_curve(poly, *json, *subdiv),
        Command::Subdiv { poly, json } => cmd_subdiv(poly, *json),
        Command::Intersect { f, g, transversal, json, .. } => cmd_intersect(f, g, *transversal, *json),
        Command::Group { poly, origin, op } => cmd_group(poly, origin.as_deref(), op),
        Command::Plot { poly, output, viewport, subdivision, intersect, add, origin } => cmd_plot(
            poly,
            output,
            viewport.as_deref(),
            *subdivision,
            intersect.as_deref(),
            add.as_deref(),
            origin.as_deref(),
        ),
        Command::Verify { check, trials, seed, max_degree, poly } => {
            cmd_verify(*check, *trials, *seed, *max_degree, poly.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
