//! Self-checking reproductions of the named examples.

use serde::Serialize;

use crate::cone::{
    certify_membership, is_order_unit, verify_certificate, zero_propagation_refute, Caps,
    GeneratedCone, MembershipVerdict, OrderUnitVerdict, Refutation, ZeroPropagation,
};
use crate::error::{Error, Result};
use crate::experiment::{run_cancellation_experiment, Setting};
use crate::fixtures;
use crate::ideal::{dominate_linear, face_ideal_generators, facet_decompose, zero_faces};
use crate::par;
use crate::poly::SparsePoly;
use crate::polytope::{face_of, LinearForm, Polytope};
use crate::rational::{format_rational, int, Rational};
use crate::structure::{recognize_simplex_product, simple_vertex_check, StructureVerdict};
use crate::toy::{toy_order_unit, toy_r1_member, toy_r2_member, ToyRing};

pub const GALLERY_NAMES: &[&str] = &[
    "toy-r1",
    "toy-r2",
    "disk",
    "trapezoid",
    "pyramid",
    "square-structure",
    "triangle-structure",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GalleryCheck {
    pub name: String,
    /// What the example asserts.
    pub claim: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GalleryCase {
    pub name: String,
    pub construction: String,
    pub checks: Vec<GalleryCheck>,
    pub passed: bool,
}

struct Builder {
    checks: Vec<GalleryCheck>,
}

impl Builder {
    fn check(&mut self, name: &str, claim: &str, expected: impl ToString, observed: impl ToString) {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        self.checks.push(GalleryCheck {
            name: name.into(),
            claim: claim.into(),
            passed: expected == observed,
            expected,
            observed,
        });
    }

    fn finish(self, name: &str, construction: &str) -> GalleryCase {
        GalleryCase {
            name: name.into(),
            construction: construction.into(),
            passed: self.checks.iter().all(|c| c.passed),
            checks: self.checks,
        }
    }
}

fn x(s: &str) -> Result<SparsePoly> {
    SparsePoly::parse(s, &["x"])
}

fn lf(k: &Polytope, s: &str) -> Result<LinearForm> {
    let vars = ["x", "y", "z"];
    LinearForm::parse(s, &vars[..k.dim()])
}

fn facet(k: &Polytope, s: &str) -> Result<usize> {
    k.facet_index(&lf(k, s)?)
        .ok_or_else(|| Error::Invalid(format!("{s} is not a facet")))
}

fn pt(p: &[Rational]) -> String {
    format!(
        "({})",
        p.iter().map(format_rational).collect::<Vec<_>>().join(", ")
    )
}

pub fn gallery(name: &str, caps: &Caps) -> Result<GalleryCase> {
    match name {
        "toy-r1" => toy_r1(caps),
        "toy-r2" => toy_r2(caps),
        "disk" => disk(caps),
        "trapezoid" => trapezoid(),
        "pyramid" => pyramid(),
        "square-structure" => square_structure(),
        "triangle-structure" => triangle_structure(),
        _ => Err(Error::Invalid(format!(
            "unknown gallery case {name:?}; expected one of {}",
            GALLERY_NAMES.join(", ")
        ))),
    }
}

/// Every case, in [`GALLERY_NAMES`] order.
pub fn gallery_all(caps: &Caps) -> Result<Vec<GalleryCase>> {
    par::map(GALLERY_NAMES, caps.parallel, |n| gallery(n, caps))
        .into_iter()
        .collect()
}

fn toy_r1(caps: &Caps) -> Result<GalleryCase> {
    let mut b = Builder { checks: vec![] };
    b.check(
        "x(1+x) in R1+",
        "x(1+x) is positive in R1",
        true,
        toy_r1_member(&x("x(1+x)")?)?,
    );
    b.check(
        "1+x order unit",
        "1 + x is an order unit of R1",
        true,
        toy_order_unit(&x("1 + x")?)?,
    );
    b.check(
        "x not in R1+",
        "x is not positive in R1",
        false,
        toy_r1_member(&x("x")?)?,
    );
    let r =
        run_cancellation_experiment(&Setting::Toy(ToyRing::ToyR1), &x("1 + x")?, &x("x")?, caps)?;
    b.check(
        "cancellation fails",
        "u = 1 + x, a = x violates order unit cancellation in R1",
        "FAIL_REFUTED",
        r.conclusion.as_str(),
    );
    Ok(b.finish(
        "toy-r1",
        "R[x] ordered by positivity on [0,1] plus x^j(1+x)f, j >= 1",
    ))
}

fn toy_r2(caps: &Caps) -> Result<GalleryCase> {
    let mut b = Builder { checks: vec![] };
    b.check(
        "x^2 in R2+",
        "x^j f with j = 2 is positive",
        true,
        toy_r2_member(&x("x^2")?)?,
    );
    b.check(
        "x not in R2+",
        "j = 1 is excluded",
        false,
        toy_r2_member(&x("x")?)?,
    );
    let mut first_member = None;
    for m in 1..=caps.max_m {
        let f = &x("x^2")?.scale(&int(m as i64)) - &x("x")?;
        if toy_r2_member(&f)? {
            first_member = Some(m);
            break;
        }
    }
    b.check(
        "x outside the order ideal of x^2",
        "M x^2 - x is never positive for M up to the cap",
        "none",
        first_member.map_or("none".to_string(), |m| format!("M = {m}")),
    );
    let r = run_cancellation_experiment(
        &Setting::Toy(ToyRing::ToyR2),
        &x("1 + x")?,
        &x("x^2")?,
        caps,
    )?;
    b.check(
        "cancellation sample",
        "R2 satisfies order unit cancellation (sample u = 1 + x, a = x^2)",
        "PASS",
        r.conclusion.as_str(),
    );
    Ok(b.finish(
        "toy-r2",
        "R[x] with cone x^j f, j = 0, 2, 3, ..., f > 0 on [0,1]",
    ))
}

fn disk(caps: &Caps) -> Result<GalleryCase> {
    let mut b = Builder { checks: vec![] };
    let cone: GeneratedCone = fixtures::disk_cone();
    let (u, a, alpha) = (
        fixtures::disk_u(),
        fixtures::disk_beta(),
        fixtures::disk_alpha(),
    );
    let xy = |s: &str| SparsePoly::parse(s, &["x", "y"]);
    let ua = &a * &u;
    b.check(
        "identity",
        "(1/5 - y)(y + 7/5) = alpha + x^2 + 6/5 x",
        "true",
        ua == &(&alpha + &xy("x^2")?) + &xy("6/5 x")?,
    );
    let unit = is_order_unit(&u, &cone, caps)?;
    b.check(
        "u order unit",
        "u = y + 7/5 is an order unit",
        "yes, c = 7/5",
        match &unit {
            OrderUnitVerdict::Yes { c, .. } => format!("yes, c = {}", format_rational(c)),
            OrderUnitVerdict::No { witness, .. } => format!("no at {}", pt(witness)),
            OrderUnitVerdict::Unknown { .. } => "unknown".into(),
        },
    );
    let prod = certify_membership(&ua, &cone, caps)?;
    b.check(
        "u·a certificate",
        "u·a = alpha + x^2 + 6/5 x lies in the cone",
        "member at degree 2, verified",
        match &prod {
            MembershipVerdict::Member {
                certificate,
                degree,
            } => format!(
                "member at degree {degree}, {}",
                if verify_certificate(&ua, certificate, &cone) {
                    "verified"
                } else {
                    "unverified"
                }
            ),
            MembershipVerdict::Refuted { .. } => "refuted".into(),
            MembershipVerdict::NotFoundUpTo { .. } => "not found".into(),
        },
    );
    let zp = zero_propagation_refute(&a, &cone, &fixtures::disk_p(), &fixtures::disk_q())?;
    b.check(
        "beta refuted",
        "a zero of a positive element at (0, 1/5) forces a zero at (0, -7/5)",
        "refuted, value 8/5 at (0, -7/5)",
        match &zp {
            ZeroPropagation::Refuted {
                refutation: Refutation::ZeroPropagation { q, value_at_q, .. },
            } => format!(
                "refuted, value {} at {}",
                format_rational(value_at_q),
                pt(q)
            ),
            other => format!("{other:?}"),
        },
    );
    let bu = is_order_unit(&a, &cone, caps)?;
    b.check(
        "beta not order unit",
        "beta = 1/5 - y vanishes at (0, 1/5)",
        "no at (0, 1/5)",
        match &bu {
            OrderUnitVerdict::No { witness, .. } => format!("no at {}", pt(witness)),
            other => format!("{other:?}"),
        },
    );
    Ok(b.finish(
        "disk",
        "cone generated by x, y and alpha = 1 - (x + 3/5)^2 - (y + 3/5)^2; u = y + 7/5, a = 1/5 - y",
    ))
}

fn trapezoid() -> Result<GalleryCase> {
    let mut b = Builder { checks: vec![] };
    let k = fixtures::trapezoid();
    let forms: Vec<String> = k.facets().iter().map(|f| f.to_string()).collect();
    b.check(
        "facets",
        "four facet forms",
        "x, y, 1 - y, 2 - x - y",
        forms.join(", "),
    );
    let (fx, fs) = (facet(&k, "x")?, facet(&k, "2 - x - y")?);
    let q = face_of(&k, &[fx, fs])?;
    b.check(
        "non-adjacent facets",
        "the two non-parallel sides do not meet in K",
        "empty face",
        if q.face.is_none() {
            "empty face"
        } else {
            "nonempty face"
        },
    );
    b.check(
        "hulls meet outside",
        "their affine hulls meet in a single point outside K",
        "point (0, 2), outside K",
        match &q.flat_meet {
            Some(f) if f.dim() == 0 => format!(
                "point {}, {}",
                pt(&f.point),
                if k.contains(&f.point) {
                    "inside K"
                } else {
                    "outside K"
                }
            ),
            other => format!("{other:?}"),
        },
    );
    let m = k.num_facets();
    let gens: Vec<Vec<u32>> = [fx, fs]
        .iter()
        .map(|&i| (0..m).map(|j| u32::from(i == j)).collect())
        .collect();
    let z = zero_faces(&k, &gens)?;
    b.check(
        "zero set",
        "the ideal generated by the two forms has no zeros in K",
        "Z∩K empty, Z = {(0, 2)}",
        format!(
            "Z∩K {}, Z = {{{}}}",
            if z.faces.is_empty() {
                "empty"
            } else {
                "nonempty"
            },
            z.flats
                .iter()
                .map(|f| pt(&f.point))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );
    b.check(
        "not a product",
        "a trapezoid that is not a parallelogram is no product of simplices",
        "not a product",
        verdict_word(&recognize_simplex_product(&k)?),
    );
    Ok(b.finish("trapezoid", "vertices (0,0), (2,0), (1,1), (0,1)"))
}

fn pyramid() -> Result<GalleryCase> {
    let mut b = Builder { checks: vec![] };
    let k = fixtures::pyramid();
    let apex = k
        .vertex_index(&[int(0), int(0), int(1)])
        .ok_or_else(|| Error::Invalid("apex missing".into()))?;
    let simple = simple_vertex_check(&k);
    b.check(
        "apex not simple",
        "the apex lies on four facets in dimension three",
        "apex on 4 facets",
        simple
            .offending
            .iter()
            .map(|o| {
                format!(
                    "{} on {} facets",
                    if o.index == apex { "apex" } else { "vertex" },
                    o.facets
                )
            })
            .collect::<Vec<_>>()
            .join(", "),
    );
    let g = k.vertex_face(apex);
    let fi = face_ideal_generators(&k, &g)?;
    b.check(
        "face ideal unit",
        "the sum of the forms through the apex is a relative order unit",
        "4 - 4*z",
        fi.order_unit.to_string(),
    );
    let d = facet_decompose(&k, &g, &lf(&k, "2 - 2z")?)?;
    b.check(
        "decomposition",
        "2 - 2z is a positive combination of the forms through the apex",
        "1/2, 1/2, 1/2, 1/2",
        d.coeffs
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(", "),
    );
    let q = face_of(&k, &[facet(&k, "1 - x - z")?, facet(&k, "1 + x - z")?])?;
    b.check(
        "opposite faces",
        "two opposite slanted facets meet only at the apex while their hulls meet in a line",
        "face dim 0, flat dim 1",
        format!(
            "face dim {}, flat dim {}",
            q.face.as_ref().map_or("none".into(), |f| f.dim.to_string()),
            q.flat_meet
                .as_ref()
                .map_or("none".into(), |f| f.dim().to_string())
        ),
    );
    b.check(
        "not a product",
        "a non-simple polytope is no product of simplices",
        "not a product",
        verdict_word(&recognize_simplex_product(&k)?),
    );
    Ok(b.finish("pyramid", "base [-1,1]^2 at z = 0, apex (0,0,1)"))
}

fn verdict_word(v: &StructureVerdict) -> String {
    match v {
        StructureVerdict::Product { witness } => format!(
            "product {}",
            serde_json::to_string(witness).unwrap_or_default()
        ),
        StructureVerdict::NotProduct { .. } => "not a product".into(),
    }
}

fn square_structure() -> Result<GalleryCase> {
    let mut b = Builder { checks: vec![] };
    let k = fixtures::square();
    b.check(
        "witness",
        "the square is a product of two segments",
        r#"product {"classes":[[0,2],[1,3]],"coeffs":[["1","1"],["1","1"]]}"#,
        verdict_word(&recognize_simplex_product(&k)?),
    );
    b.check(
        "simple",
        "every vertex lies on two facets",
        true,
        simple_vertex_check(&k).simple,
    );
    let g = k.vertex_face(0);
    let d = dominate_linear(&k, &g, &lf(&k, "x + y")?, &lf(&k, "3x + 2y")?)?;
    b.check(
        "domination",
        "3(x + y) - (3x + 2y) = y is positive, 2(x + y) - (3x + 2y) is not",
        "M = 3 with a certificate at M = 2",
        format!(
            "M = {}{}",
            d.m,
            if d.farkas_below.is_some() {
                " with a certificate at M = 2"
            } else {
                ""
            }
        ),
    );
    Ok(b.finish("square-structure", "unit square"))
}

fn triangle_structure() -> Result<GalleryCase> {
    let mut b = Builder { checks: vec![] };
    let k = fixtures::triangle();
    b.check(
        "witness",
        "the triangle is a simplex: x + y + (1 - x - y) = 1",
        r#"product {"classes":[[0,1,2]],"coeffs":[["1","1","1"]]}"#,
        verdict_word(&recognize_simplex_product(&k)?),
    );
    Ok(b.finish("triangle-structure", "standard 2-simplex"))
}
