mod input;
mod render;

use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use ordcone::cone::{certify_membership, is_order_unit, Caps, MembershipVerdict, OrderUnitVerdict};
use ordcone::experiment::{run_cancellation_experiment, Conclusion, Setting};
use ordcone::gallery::{gallery, gallery_all};
use ordcone::ideal::{dominate_linear, facet_decompose, in_order_ideal, zero_faces, OrderIdealGen};
use ordcone::structure::{recognize_simplex_product_with, simple_vertex_check, StructureVerdict};
use ordcone::toy::ToyRing;
use serde_json::json;

/// Exact positivity certificates and order-unit tools for polynomial rings
/// ordered by a finitely generated cone.
///
/// Exit codes: 0 pass / member / yes; 1 refuted / no / confirmed failure;
/// 2 unknown within the caps; 3 input error.
#[derive(Parser)]
#[command(name = "ordcone", version)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Largest certificate degree searched.
    #[arg(long, global = true, default_value_t = 8)]
    max_degree: u32,
    /// Largest multiplier M tried for order-ideal membership.
    #[arg(long, global = true, default_value_t = 64)]
    max_m: u64,
    /// Largest grid denominator used by admissible-point searches.
    #[arg(long, global = true, default_value_t = 64)]
    grid_denominator_cap: u64,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Args)]
struct FaceArgs {
    /// Facet indices defining the face, e.g. `0,1`.
    #[arg(long, conflicts_with = "vertex")]
    face: Option<String>,
    /// A vertex of the polytope, e.g. `0,0`, taken as a face.
    #[arg(long)]
    vertex: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a cone-membership certificate.
    Certify {
        /// Cone: JSON, JSON file, `disk`, or a polytope fixture name.
        #[arg(long)]
        cone: String,
        /// Polynomial: expression, JSON, or JSON file.
        #[arg(long)]
        poly: String,
        /// Skip the evaluation-based refutation rules.
        #[arg(long)]
        no_refute: bool,
    },
    /// Decide whether a polynomial is an order unit.
    Orderunit {
        #[arg(long)]
        cone: String,
        #[arg(long)]
        poly: String,
    },
    /// Test membership in the order ideal generated by positive elements.
    IdealMember {
        #[arg(long)]
        cone: String,
        /// Ideal generator (repeatable).
        #[arg(long = "gen", required = true)]
        generators: Vec<String>,
        #[arg(long)]
        poly: String,
    },
    /// Least integer M with M·beta − gamma positive as a linear form.
    Dominate {
        /// Polytope: JSON, JSON file, or fixture name.
        #[arg(long)]
        polytope: String,
        #[command(flatten)]
        face: FaceArgs,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        gamma: String,
    },
    /// Positive decomposition of beta over the facets containing a face.
    Decompose {
        #[arg(long)]
        polytope: String,
        #[command(flatten)]
        face: FaceArgs,
        #[arg(long)]
        beta: String,
    },
    /// Zero set of an ideal generated by monomials in the facet forms.
    Zerofaces {
        #[arg(long)]
        polytope: String,
        /// Exponent vector over the facets, e.g. `1,1,0,0` (repeatable).
        #[arg(long = "monomial", required = true)]
        monomials: Vec<String>,
    },
    /// Run an order-unit cancellation experiment.
    Cancel {
        /// `toy-r1`, `toy-r2`, or a cone as for `certify`.
        #[arg(long)]
        setting: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        a: String,
    },
    /// Recognize products of simplices.
    Structure {
        #[arg(long)]
        polytope: String,
    },
    /// Reproduce a named example (`all` for every case).
    Gallery { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn caps(o: &GlobalOpts) -> Caps {
    Caps {
        max_degree: o.max_degree,
        max_m: o.max_m,
        grid_denominator_cap: o.grid_denominator_cap,
        refute: true,
        parallel: !o.sequential && ordcone::par::default_parallel(),
    }
}

fn emit(json: bool, value: serde_json::Value, text: String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        );
    } else {
        println!("{text}");
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let o = &cli.opts;
    if o.max_m == 0 {
        bail!("--max-m must be at least 1");
    }
    let caps = caps(o);
    match &cli.command {
        Command::Certify {
            cone,
            poly,
            no_refute,
        } => {
            let cone = input::cone(cone)?;
            let f = input::poly(poly, cone.nvars())?;
            let caps = Caps {
                refute: !no_refute,
                ..caps
            };
            let v = certify_membership(&f, &cone, &caps)?;
            let code = match &v {
                MembershipVerdict::Member { .. } => 0,
                MembershipVerdict::Refuted { .. } => 1,
                MembershipVerdict::NotFoundUpTo { .. } => 2,
            };
            emit(o.json, json!(v), render::membership(&v, &cone));
            Ok(code)
        }
        Command::Orderunit { cone, poly } => {
            let cone = input::cone(cone)?;
            let f = input::poly(poly, cone.nvars())?;
            let v = is_order_unit(&f, &cone, &caps)?;
            let code = match &v {
                OrderUnitVerdict::Yes { .. } => 0,
                OrderUnitVerdict::No { .. } => 1,
                OrderUnitVerdict::Unknown { .. } => 2,
            };
            emit(o.json, json!(v), render::order_unit(&v, &cone));
            Ok(code)
        }
        Command::IdealMember {
            cone,
            generators,
            poly,
        } => {
            let cone = input::cone(cone)?;
            let gens = generators
                .iter()
                .map(|g| input::poly(g, cone.nvars()))
                .collect::<Result<Vec<_>>>()?;
            let r = input::poly(poly, cone.nvars())?;
            let ideal = OrderIdealGen::new(gens, &cone, &caps)?;
            let v = in_order_ideal(&r, &ideal, &caps)?;
            let code = if v.is_member() { 0 } else { 2 };
            emit(
                o.json,
                json!({"relative_order_unit": ideal.relative_order_unit(), "result": v}),
                render::ideal(&v, &ideal),
            );
            Ok(code)
        }
        Command::Dominate {
            polytope,
            face,
            beta,
            gamma,
        } => {
            let k = input::polytope(polytope)?;
            let g = input::face(&k, face.face.as_deref(), face.vertex.as_deref())?;
            let (b, c) = (input::form(beta, k.dim())?, input::form(gamma, k.dim())?);
            let d = dominate_linear(&k, &g, &b, &c)?;
            emit(o.json, json!(d), render::domination(&d, &k));
            Ok(0)
        }
        Command::Decompose {
            polytope,
            face,
            beta,
        } => {
            let k = input::polytope(polytope)?;
            let g = input::face(&k, face.face.as_deref(), face.vertex.as_deref())?;
            let b = input::form(beta, k.dim())?;
            let d = facet_decompose(&k, &g, &b)?;
            emit(o.json, json!(d), render::decomposition(&d, &k));
            Ok(0)
        }
        Command::Zerofaces {
            polytope,
            monomials,
        } => {
            let k = input::polytope(polytope)?;
            let gens = monomials
                .iter()
                .map(|m| input::exponent_list(m))
                .collect::<Result<Vec<_>>>()?;
            let z = zero_faces(&k, &gens)?;
            emit(o.json, json!(z), render::zero_faces(&z, &k));
            Ok(0)
        }
        Command::Cancel { setting, u, a } => {
            let setting = match ToyRing::parse(setting) {
                Some(t) => Setting::Toy(t),
                None => Setting::Cone(input::cone(setting)?),
            };
            let (u, a) = (
                input::poly(u, setting.nvars())?,
                input::poly(a, setting.nvars())?,
            );
            let r = run_cancellation_experiment(&setting, &u, &a, &caps)?;
            let code = match r.conclusion {
                Conclusion::Pass => 0,
                Conclusion::FailRefuted => 1,
                Conclusion::Inconclusive => 2,
            };
            emit(o.json, json!(r), render::experiment(&r));
            Ok(code)
        }
        Command::Structure { polytope } => {
            let k = input::polytope(polytope)?;
            let v = recognize_simplex_product_with(&k, caps.parallel)?;
            let s = simple_vertex_check(&k);
            let code = match v {
                StructureVerdict::Product { .. } => 0,
                StructureVerdict::NotProduct { .. } => 1,
            };
            emit(
                o.json,
                json!({"result": v, "simple": s}),
                render::structure(&v, &s, &k),
            );
            Ok(code)
        }
        Command::Gallery { name } => {
            let cases = if name == "all" {
                gallery_all(&caps)?
            } else {
                vec![gallery(name, &caps)?]
            };
            let ok = cases.iter().all(|c| c.passed);
            emit(o.json, json!(cases), render::gallery(&cases));
            Ok(if ok { 0 } else { 1 })
        }
    }
}
