use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skewpbw::geometry::Geometry;
use skewpbw::parse::{format_point, parse_point, parse_polynomial, parse_polynomial_list};
use skewpbw::{
    center_generators, check_pbw_consistency, divide, is_member_left, is_normal, left_groebner,
    left_groebner_certified, load_presentation, two_sided_saturate, verify_sandwich, Algebra, Budget, Error,
    IdealHandle, IdealStatus, Membership, MonomialOrder, NormalityStatus, Point, Polynomial, SearchDomain, Verdict,
};

#[derive(Parser)]
#[command(name = "pbw", version, about = "Exact computations in skew PBW extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Presentation document (TOML)
    #[arg(long)]
    algebra: PathBuf,
    /// deglex, degrevlex or block:<vars>
    #[arg(long, default_value = "deglex")]
    order: String,
    #[arg(long, default_value_t = Budget::default().max_degree)]
    budget_degree: u32,
    #[arg(long, default_value_t = Budget::default().max_pairs)]
    budget_pairs: usize,
    #[arg(long, default_value_t = Budget::default().max_rounds)]
    budget_rounds: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Normal-order a polynomial
    Normalize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
    },
    /// Product f·g
    Mul {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Left division of f by a list of divisors
    Divide {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
        #[arg(long)]
        divisors: String,
    },
    /// Left Gröbner basis
    Gb {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        gens: String,
        /// Record cofactors expressing each basis element in the generators
        #[arg(long)]
        certify: bool,
    },
    /// Membership in the left (or two-sided) ideal generated by gens
    Member {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
        #[arg(long)]
        gens: String,
        #[arg(long)]
        two_sided: bool,
    },
    /// Left basis of the two-sided ideal generated by gens
    Saturate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        gens: String,
    },
    /// Is the point a root of f
    Root {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
        #[arg(long)]
        point: String,
    },
    /// Common roots of gens over a search domain
    Vanish {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        gens: String,
        #[arg(long, default_value = "grid:-2..2")]
        domain: String,
    },
    /// Truncated ideal of a finite point set, points separated by ';'
    PointsIdeal {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        points: String,
        #[arg(long, default_value_t = 3)]
        trunc_degree: u32,
    },
    /// Element vanishing exactly on a finite point set
    Witness {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        points: String,
    },
    /// Center of a root-of-unity quantum space
    Center {
        #[command(flatten)]
        common: Common,
    },
    /// Check the central Nullstellensatz inclusions for a two-sided ideal
    Sandwich {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        gens: String,
        #[arg(long, default_value = "grid:-2..2")]
        domain: String,
        #[arg(long, default_value_t = 4)]
        trunc_degree: u32,
        #[arg(long, default_value_t = 4)]
        max_power: u32,
    },
    /// Decide whether fA = Af
    Normal {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 0)]
        slack: u32,
    },
    /// Check the relations define a PBW extension
    Consistency {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Normalize { common, .. }
            | Command::Mul { common, .. }
            | Command::Divide { common, .. }
            | Command::Gb { common, .. }
            | Command::Member { common, .. }
            | Command::Saturate { common, .. }
            | Command::Root { common, .. }
            | Command::Vanish { common, .. }
            | Command::PointsIdeal { common, .. }
            | Command::Witness { common, .. }
            | Command::Center { common }
            | Command::Sandwich { common, .. }
            | Command::Normal { common, .. }
            | Command::Consistency { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Normalize { .. } => "normalize",
            Command::Mul { .. } => "mul",
            Command::Divide { .. } => "divide",
            Command::Gb { .. } => "gb",
            Command::Member { .. } => "member",
            Command::Saturate { .. } => "saturate",
            Command::Root { .. } => "root",
            Command::Vanish { .. } => "vanish",
            Command::PointsIdeal { .. } => "points-ideal",
            Command::Witness { .. } => "witness",
            Command::Center { .. } => "center",
            Command::Sandwich { .. } => "sandwich",
            Command::Normal { .. } => "normal",
            Command::Consistency { .. } => "consistency",
        }
    }
}

/// Computed answer: status string, whether it is Unknown, payload, text lines.
struct Outcome {
    status: String,
    unknown: bool,
    inputs: Value,
    result: Value,
    certificates: Value,
    text: Vec<String>,
}

impl Outcome {
    fn new(status: impl Into<String>, inputs: Value, result: Value) -> Outcome {
        Outcome { status: status.into(), unknown: false, inputs, result, certificates: Value::Null, text: Vec::new() }
    }
}

fn budget(c: &Common) -> Budget {
    Budget { max_degree: c.budget_degree, max_pairs: c.budget_pairs, max_rounds: c.budget_rounds }
}

fn parse_points(text: &str, alg: &Algebra) -> skewpbw::Result<Vec<Point>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let p = parse_point(s.trim_start_matches('(').trim_end_matches(')'), alg.field())?;
            if p.len() != alg.nvars() {
                return Err(Error::LengthMismatch(p.len(), alg.nvars()));
            }
            Ok(p)
        })
        .collect()
}

fn fmt_list(alg: &Algebra, ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| alg.format(p)).collect()
}

fn pt(p: &Point) -> String {
    format!("({})", format_point(p))
}

fn ideal_outcome(alg: &Algebra, order: &MonomialOrder, h: &IdealHandle, inputs: Value) -> Outcome {
    let doc = h.to_document(alg, order);
    let mut out = Outcome::new(h.status_str(), inputs, doc.clone());
    out.unknown = h.is_unknown();
    out.certificates = doc.get("certificates").cloned().unwrap_or(Value::Null);
    out.text.push(format!("status: {}", h.status_str()));
    match &h.status {
        IdealStatus::Proper(gb) => {
            for g in &gb.elements {
                out.text.push(alg.format(g));
            }
        }
        IdealStatus::ImproperUnit { .. } => out.text.push("1".into()),
        IdealStatus::Unknown(why) => out.text.push(format!("reason: {why}")),
    }
    out
}

fn membership_outcome(m: Membership, inputs: Value, result: Value) -> Outcome {
    let mut out = Outcome::new(m.as_str(), inputs, result);
    out.unknown = m == Membership::Unknown;
    out.text.push(m.as_str().to_string());
    out
}

fn run(cmd: &Command) -> skewpbw::Result<(Algebra, Outcome)> {
    let c = cmd.common();
    let doc = std::fs::read_to_string(&c.algebra)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", c.algebra.display())))?;
    let alg = Algebra::new(load_presentation(&doc)?);
    let order = MonomialOrder::parse(&c.order, alg.names())?;
    let b = budget(c);
    let out = match cmd {
        Command::Normalize { f, .. } => {
            let p = parse_polynomial(f, &alg)?;
            let s = alg.format(&p);
            let mut out = Outcome::new("ok", json!({ "f": f }), json!({ "polynomial": s }));
            out.text.push(s);
            out
        }
        Command::Mul { f, g, .. } => {
            let (pf, pg) = (parse_polynomial(f, &alg)?, parse_polynomial(g, &alg)?);
            let s = alg.format(&alg.multiply(&pf, &pg));
            let mut out = Outcome::new("ok", json!({ "f": f, "g": g }), json!({ "product": s }));
            out.text.push(s);
            out
        }
        Command::Divide { f, divisors, .. } => {
            let pf = parse_polynomial(f, &alg)?;
            let ds = parse_polynomial_list(divisors, &alg)?;
            let r = divide(&alg, &pf, &ds, &order)?;
            let verified = r.reassemble(&alg, &ds) == pf;
            let q = fmt_list(&alg, &r.quotients);
            let h = alg.format(&r.remainder);
            let mut out = Outcome::new(
                "ok",
                json!({ "f": f, "divisors": fmt_list(&alg, &ds), "order": order.describe(alg.names()) }),
                json!({ "quotients": q, "remainder": h }),
            );
            out.certificates = json!({ "identity_verified": verified });
            for (d, qi) in ds.iter().zip(&q) {
                out.text.push(format!("q[{}] = {qi}", alg.format(d)));
            }
            out.text.push(format!("remainder = {h}"));
            out.text.push(format!("identity verified: {verified}"));
            out
        }
        Command::Gb { gens, certify, .. } => {
            let gs = parse_polynomial_list(gens, &alg)?;
            let h = if *certify {
                left_groebner_certified(&alg, &gs, &order, b)?
            } else {
                left_groebner(&alg, &gs, &order, b)?
            };
            ideal_outcome(&alg, &order, &h, json!({ "gens": gens, "order": order.describe(alg.names()) }))
        }
        Command::Saturate { gens, .. } => {
            let gs = parse_polynomial_list(gens, &alg)?;
            let h = two_sided_saturate(&alg, &gs, &order, b)?;
            ideal_outcome(&alg, &order, &h, json!({ "gens": gens, "order": order.describe(alg.names()) }))
        }
        Command::Member { f, gens, two_sided, .. } => {
            let pf = parse_polynomial(f, &alg)?;
            let gs = parse_polynomial_list(gens, &alg)?;
            let h = if *two_sided {
                two_sided_saturate(&alg, &gs, &order, b)?
            } else {
                left_groebner(&alg, &gs, &order, b)?
            };
            let m = is_member_left(&alg, &pf, &h);
            membership_outcome(
                m,
                json!({ "f": f, "gens": gens, "two_sided": two_sided }),
                json!({ "member": m.as_str(), "ideal_status": h.status_str() }),
            )
        }
        Command::Root { f, point, .. } => {
            let pf = parse_polynomial(f, &alg)?;
            let z = parse_points(point, &alg)?;
            let [z] = z.as_slice() else {
                return Err(Error::Invalid("expected exactly one point".into()));
            };
            let geom = Geometry::new(alg.clone(), b);
            let m = geom.is_root(&pf, z)?;
            let degenerate = geom.point_ideal(z)?.is_degenerate();
            let mut out = membership_outcome(
                m,
                json!({ "f": f, "point": pt(z) }),
                json!({ "root": m.as_str(), "degenerate": degenerate }),
            );
            if degenerate {
                out.text.push("point ideal is the whole ring".into());
            }
            out
        }
        Command::Vanish { gens, domain, .. } => {
            let gs = parse_polynomial_list(gens, &alg)?;
            let dom = SearchDomain::parse(domain, alg.field(), alg.nvars())?;
            let geom = Geometry::new(alg.clone(), b);
            let v = geom.vanishing_set(&gs, &dom)?;
            let table: Vec<Value> = v.table.iter().map(|(p, s)| json!({ "point": pt(p), "status": s })).collect();
            let unknown = !v.unknown().is_empty();
            let mut out = Outcome::new(
                if unknown { "unknown" } else { "ok" },
                json!({ "gens": gens, "domain": domain }),
                json!({
                    "points": v.points().iter().map(pt).collect::<Vec<_>>(),
                    "degenerate": v.degenerate().iter().map(pt).collect::<Vec<_>>(),
                    "unknown": v.unknown().iter().map(pt).collect::<Vec<_>>(),
                    "table": table,
                }),
            );
            out.unknown = unknown;
            for (p, s) in &v.table {
                if s.is_member() || *s == skewpbw::PointStatus::Unknown {
                    out.text.push(format!("{} {}", pt(p), serde_json::to_value(s).unwrap().as_str().unwrap_or("")));
                }
            }
            out
        }
        Command::PointsIdeal { points, trunc_degree, .. } => {
            let xs = parse_points(points, &alg)?;
            let geom = Geometry::new(alg.clone(), b);
            let basis = geom.ideal_of_points(&xs, *trunc_degree)?;
            let s = fmt_list(&alg, &basis);
            let mut out = Outcome::new(
                "ok",
                json!({ "points": xs.iter().map(pt).collect::<Vec<_>>(), "trunc_degree": trunc_degree }),
                json!({ "basis": s }),
            );
            out.text = s;
            out
        }
        Command::Witness { points, .. } => {
            let xs = parse_points(points, &alg)?;
            let geom = Geometry::new(alg.clone(), b);
            let w = geom.algebraic_witness(&xs)?;
            let poly = w.polynomial.as_ref().map(|p| alg.format(p));
            let mut out = Outcome::new(
                if w.polynomial.is_some() { "ok" } else { "unknown" },
                json!({ "points": xs.iter().map(pt).collect::<Vec<_>>() }),
                json!({ "polynomial": poly, "diagnostic": w.diagnostic }),
            );
            out.unknown = w.polynomial.is_none();
            out.certificates = json!({ "verified": w.verified });
            out.text.push(poly.unwrap_or_else(|| "none".into()));
            if let Some(d) = &w.diagnostic {
                out.text.push(d.clone());
            }
            out
        }
        Command::Center { .. } => {
            let cd = center_generators(&alg)?;
            let gens = fmt_list(&alg, &cd.generators);
            let mut out = Outcome::new(
                "ok",
                json!({}),
                json!({ "generators": gens, "exponents": cd.exponents, "variables": cd.names() }),
            );
            out.certificates = json!({ "centrality_verified": cd.verified });
            for (u, g) in cd.names().iter().zip(&gens) {
                out.text.push(format!("{u} = {g}"));
            }
            out
        }
        Command::Sandwich { gens, domain, trunc_degree, max_power, .. } => {
            let gs = parse_polynomial_list(gens, &alg)?;
            let dom = SearchDomain::parse(domain, alg.field(), alg.nvars())?;
            let cd = center_generators(&alg)?;
            let h = two_sided_saturate(&alg, &gs, &MonomialOrder::Deglex, b)?;
            let geom = Geometry::new(alg.clone(), b);
            let r = verify_sandwich(&geom, &h, &cd, &dom, *trunc_degree, *max_power, b)?;
            let verdict = |v: &Verdict| serde_json::to_value(v).unwrap()["verdict"].as_str().unwrap_or("").to_string();
            let (v1, v2) = (verdict(&r.first_inclusion), verdict(&r.second_inclusion));
            let inconclusive = v1 == "inconclusive" || v2 == "inconclusive";
            let mut out = Outcome::new(
                if inconclusive {
                    "inconclusive"
                } else if v1 == "refuted" || v2 == "refuted" {
                    "refuted"
                } else {
                    "confirmed"
                },
                json!({ "gens": gens, "domain": domain, "trunc_degree": trunc_degree, "max_power": max_power }),
                serde_json::to_value(&r).unwrap(),
            );
            out.unknown = inconclusive;
            out.certificates = json!(r
                .radical_generators
                .iter()
                .filter_map(|g| g.nilpotency.map(|m| json!({ "element": g.lifted, "power": m })))
                .collect::<Vec<_>>());
            out.text.push(format!("J = {{{}}}", r.j_generators.join(", ")));
            for g in &r.radical_generators {
                let m = g.nilpotency.map(|m| format!(", m = {m}")).unwrap_or_default();
                out.text.push(format!("{} = {}: {:?}{m}", g.generator, g.lifted, g.status));
            }
            out.text.push(format!("first inclusion: {v1}"));
            out.text.push(format!("second inclusion: {v2}"));
            out
        }
        Command::Normal { f, slack, .. } => {
            let pf = parse_polynomial(f, &alg)?;
            let v = is_normal(&alg, &pf, *slack)?;
            let mut out = Outcome::new(v.status.as_str(), json!({ "f": f, "slack": slack }), v.to_document(&alg));
            out.unknown = v.status == NormalityStatus::Unknown;
            out.certificates = out.result["witnesses"].clone();
            out.text.push(v.status.as_str().to_string());
            if let Some(cw) = &v.counter {
                out.text.push(format!("counter-witness: generator {} ({:?} side)", cw.generator, cw.side));
            }
            out
        }
        Command::Consistency { degree, .. } => {
            let r = check_pbw_consistency(alg.presentation(), *degree);
            let mut out = Outcome::new(
                if r.consistent { "consistent" } else { "inconsistent" },
                json!({ "degree": degree }),
                json!({
                    "consistent": r.consistent,
                    "failing_triple": r.failing_triple,
                    "twist_violations": r.twist_violations,
                    "failing_monomials": r.failing_monomials.as_ref().map(|t| t.iter().map(|e| e.as_slice().to_vec()).collect::<Vec<_>>()),
                    "checked_triples": r.checked_triples,
                }),
            );
            out.text.push(out.status.clone());
            if let Some(t) = &r.failing_triple {
                out.text.push(format!("failing triple: {}", t.join(", ")));
            }
            out.text.extend(r.twist_violations.iter().cloned());
            out
        }
    };
    Ok((alg, out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.command.common().format;
    let name = cli.command.name();
    match run(&cli.command) {
        Ok((alg, out)) => {
            match format {
                Format::Json => {
                    let doc = json!({
                        "command": name,
                        "inputs": out.inputs,
                        "presentation_hash": alg.presentation().hash(),
                        "result": out.result,
                        "certificates": out.certificates,
                        "status": out.status,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                Format::Text => {
                    for line in &out.text {
                        println!("{line}");
                    }
                }
            }
            if out.unknown {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Error::UnknownIdeal(why)) => {
            emit_error(format, name, "unknown", &why);
            ExitCode::from(2)
        }
        Err(e) => {
            emit_error(format, name, "error", &e.to_string());
            ExitCode::from(1)
        }
    }
}

fn emit_error(format: Format, name: &str, status: &str, message: &str) {
    match format {
        Format::Json => println!("{}", json!({ "command": name, "status": status, "error": message })),
        Format::Text => eprintln!("{status}: {message}"),
    }
}
