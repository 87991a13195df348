//! Plain-text output.

use ordcone::cone::{GeneratedCone, MembershipVerdict, OrderUnitVerdict};
use ordcone::experiment::{ExperimentReport, Stage};
use ordcone::gallery::GalleryCase;
use ordcone::ideal::{Domination, FacetDecomposition, IdealVerdict, OrderIdealGen, ZeroFaces};
use ordcone::polytope::{Flat, Polytope};
use ordcone::rational::format_rational;
use ordcone::structure::{SimpleCheck, StructureVerdict};
use ordcone::Rational;

fn pt(p: &[Rational]) -> String {
    format!(
        "({})",
        p.iter().map(format_rational).collect::<Vec<_>>().join(", ")
    )
}

pub fn membership(v: &MembershipVerdict, cone: &GeneratedCone) -> String {
    match v {
        MembershipVerdict::Member {
            certificate,
            degree,
        } => format!("Member (degree {degree}): {}", certificate.describe(cone)),
        MembershipVerdict::NotFoundUpTo {
            degree,
            refutations,
        } => format!(
            "NotFoundUpTo {degree} ({} per-degree Farkas functionals)",
            refutations.len()
        ),
        MembershipVerdict::Refuted { refutation } => format!("Refuted: {}", refutation.describe()),
    }
}

pub fn order_unit(v: &OrderUnitVerdict, cone: &GeneratedCone) -> String {
    match v {
        OrderUnitVerdict::Yes {
            c,
            certificate,
            degree,
        } => format!(
            "Yes: f - {} = {} (degree {degree})",
            format_rational(c),
            certificate.describe(cone)
        ),
        OrderUnitVerdict::No { witness, value } => format!(
            "No: f = {} at admissible point {}",
            format_rational(value),
            pt(witness)
        ),
        OrderUnitVerdict::Unknown {
            max_degree,
            grid_denominator_cap,
        } => format!(
            "Unknown (degree cap {max_degree}, grid denominator cap {grid_denominator_cap})"
        ),
    }
}

pub fn ideal(v: &IdealVerdict, ideal: &OrderIdealGen) -> String {
    let cone = ideal.cone();
    let s = ideal.relative_order_unit();
    match v {
        IdealVerdict::Member { m, upper, lower } => format!(
            "Member with M = {m} (relative order unit {s})\n  M*s - r = {}\n  M*s + r = {}",
            upper.describe(cone),
            lower.describe(cone)
        ),
        IdealVerdict::NotFoundUpTo {
            max_m,
            max_degree,
            refuted,
        } => {
            let mut out =
                format!("NotFoundUpTo M = {max_m}, degree {max_degree} (relative order unit {s})");
            for r in refuted {
                out.push_str(&format!(
                    "\n  M = {} {:?} side refuted: {}",
                    r.m,
                    r.side,
                    r.refutation.describe()
                ));
            }
            out
        }
    }
}

pub fn domination(d: &Domination, k: &Polytope) -> String {
    let zero = Rational::from_integer(0.into());
    let mut terms: Vec<String> = Vec::new();
    if d.constant != zero {
        terms.push(format_rational(&d.constant));
    }
    for (f, c) in k.facets().iter().zip(&d.facet_coeffs) {
        if *c != zero {
            terms.push(format!("{}*({f})", format_rational(c)));
        }
    }
    if terms.is_empty() {
        terms.push("0".into());
    }
    let mut out = format!("M = {}\n  M*beta - gamma = {}", d.m, terms.join(" + "));
    if d.farkas_below.is_some() {
        out.push_str(&format!(
            "\n  M = {} is infeasible (Farkas certificate attached)",
            d.m - 1
        ));
    }
    out
}

pub fn decomposition(d: &FacetDecomposition, k: &Polytope) -> String {
    d.facets
        .iter()
        .zip(&d.coeffs)
        .map(|(&i, c)| format!("{}*({})", format_rational(c), k.facet(i)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn flat(f: &Flat) -> String {
    if f.dim() == 0 {
        format!("point {}", pt(&f.point))
    } else {
        format!(
            "{}-flat through {} along {}",
            f.dim(),
            pt(&f.point),
            f.directions
                .iter()
                .map(|d| pt(d))
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

pub fn zero_faces(z: &ZeroFaces, k: &Polytope) -> String {
    let mut out = String::from("Z ∩ K:");
    if z.faces.is_empty() {
        out.push_str(" empty");
    }
    for f in &z.faces {
        let verts: Vec<String> = f.vertices.iter().map(|&v| pt(&k.vertices()[v])).collect();
        out.push_str(&format!(
            "\n  face of dimension {} with vertices {}",
            f.dim,
            verts.join(" ")
        ));
    }
    out.push_str("\nZ:");
    if z.flats.is_empty() {
        out.push_str(" empty");
    }
    for f in &z.flats {
        out.push_str(&format!("\n  {}", flat(f)));
    }
    out
}

fn stage(s: &Option<Stage>) -> String {
    match s {
        None => "not run".into(),
        Some(Stage::Exact { holds }) => format!("exact: {holds}"),
        Some(Stage::OrderUnit { verdict }) => match verdict {
            OrderUnitVerdict::Yes { c, degree, .. } => {
                format!("yes, f >= {} (degree {degree})", format_rational(c))
            }
            OrderUnitVerdict::No { witness, .. } => format!("no, witness {}", pt(witness)),
            OrderUnitVerdict::Unknown { .. } => "unknown".into(),
        },
        Some(Stage::Membership { verdict }) => match verdict {
            MembershipVerdict::Member { degree, .. } => format!("member (degree {degree})"),
            MembershipVerdict::NotFoundUpTo { degree, .. } => {
                format!("not found up to degree {degree}")
            }
            MembershipVerdict::Refuted { refutation } => {
                format!("refuted: {}", refutation.describe())
            }
        },
    }
}

pub fn experiment(r: &ExperimentReport) -> String {
    let mut out = format!(
        "{}\n  setting: {}\n  u = {}, a = {}\n  u order unit: {}\n  u*a positive: {}\n  a positive: {}",
        r.conclusion.as_str(),
        r.setting,
        r.u,
        r.a,
        stage(&r.order_unit),
        stage(&r.product),
        stage(&r.target)
    );
    if let Some(e) = &r.error {
        out.push_str(&format!("\n  error: {e}"));
    }
    out.push_str(&format!("\n  time: {} ms", r.wall_time_ms));
    out
}

pub fn structure(v: &StructureVerdict, s: &SimpleCheck, k: &Polytope) -> String {
    let mut out = match v {
        StructureVerdict::Product { witness } => {
            let mut o = String::from("Product of simplices");
            for (c, a) in witness.classes.iter().zip(&witness.coeffs) {
                let terms: Vec<String> = c
                    .iter()
                    .zip(a)
                    .map(|(&i, x)| format!("{}*({})", format_rational(x), k.facet(i)))
                    .collect();
                o.push_str(&format!("\n  {} = 1", terms.join(" + ")));
            }
            o
        }
        StructureVerdict::NotProduct { reason, detail } => {
            format!("Not a product ({reason:?}): {detail}")
        }
    };
    out.push_str(&format!("\nsimple: {}", s.simple));
    for o in &s.offending {
        out.push_str(&format!(
            "\n  vertex {} lies on {} facets",
            pt(&o.point),
            o.facets
        ));
    }
    out
}

pub fn gallery(cases: &[GalleryCase]) -> String {
    let mut out = String::new();
    for c in cases {
        out.push_str(&format!(
            "{} [{}] {}\n",
            c.name,
            if c.passed { "ok" } else { "MISMATCH" },
            c.construction
        ));
        for ch in &c.checks {
            out.push_str(&format!(
                "  {} {}: {}\n",
                if ch.passed { "ok  " } else { "FAIL" },
                ch.name,
                if ch.passed {
                    ch.observed.clone()
                } else {
                    format!("expected {:?}, observed {:?}", ch.expected, ch.observed)
                }
            ));
        }
    }
    out.trim_end().to_string()
}
