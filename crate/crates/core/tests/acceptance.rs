//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report is printed on
//! every `cargo test` run. The process exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Signed;
use ordcone::cone::{
    certify_membership, enumerate_products, is_order_unit, verify_certificate, Caps, Certificate,
    GeneratedCone, MembershipVerdict, OrderUnitVerdict, Refutation,
};
use ordcone::experiment::{
    run_cancellation_experiment, Conclusion, ExperimentReport, Setting, Stage,
};
use ordcone::fixtures;
use ordcone::ideal::{dominate_linear, facet_decompose};
use ordcone::poly::{poly_arith, PolyOp, SparsePoly};
use ordcone::polytope::{face_of, facets_containing, LinearForm, Polytope};
use ordcone::structure::{recognize_simplex_product, StructureVerdict};
use ordcone::toy::{toy_order_unit, toy_r1_member, toy_r2_member};
use ordcone::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> Rational {
    q(n, 1)
}

const XY: &[&str] = &["x", "y"];
const XYZ: &[&str] = &["x", "y", "z"];

fn p2(s: &str) -> SparsePoly {
    SparsePoly::parse(s, XY).unwrap()
}

fn p1(s: &str) -> SparsePoly {
    SparsePoly::parse(s, &["x"]).unwrap()
}

/// Every verdict produced during the run, keyed by cone and polynomial.
#[derive(Default)]
struct Ledger {
    verdicts: BTreeMap<(String, String), Vec<&'static str>>,
    certificates: usize,
    witnesses: usize,
    failures: Vec<String>,
}

impl Ledger {
    fn key(f: &SparsePoly, cone: &GeneratedCone) -> (String, String) {
        let gens: Vec<String> = cone.generators().iter().map(|g| g.to_string()).collect();
        (gens.join(" ; "), f.to_string())
    }

    fn note(&mut self, f: &SparsePoly, cone: &GeneratedCone, kind: &'static str) {
        self.verdicts
            .entry(Self::key(f, cone))
            .or_default()
            .push(kind);
    }

    fn check_cert(&mut self, f: &SparsePoly, cert: &Certificate, cone: &GeneratedCone) {
        self.certificates += 1;
        if !verify_certificate(f, cert, cone) {
            self.failures
                .push(format!("certificate for {f} does not verify"));
        }
    }

    fn membership(&mut self, f: &SparsePoly, cone: &GeneratedCone, v: &MembershipVerdict) {
        match v {
            MembershipVerdict::Member { certificate, .. } => {
                self.note(f, cone, "member");
                self.check_cert(f, certificate, cone);
            }
            MembershipVerdict::Refuted { refutation } => {
                self.note(f, cone, "refuted");
                self.witnesses += 1;
                if !refutation.recheck(f, cone) {
                    self.failures
                        .push(format!("refutation of {f} does not recheck"));
                }
            }
            MembershipVerdict::NotFoundUpTo { refutations, .. } => {
                self.note(f, cone, "not_found");
                for r in refutations {
                    self.witnesses += 1;
                    if !r.recheck(f, cone) {
                        self.failures
                            .push(format!("degree refutation of {f} does not recheck"));
                    }
                }
            }
        }
    }

    fn order_unit(&mut self, f: &SparsePoly, cone: &GeneratedCone, v: &OrderUnitVerdict) {
        match v {
            OrderUnitVerdict::Yes { c, certificate, .. } => {
                let shifted = f - &SparsePoly::constant(f.nvars(), c.clone());
                self.check_cert(&shifted, certificate, cone);
                // f − c certified means f itself is a member
                self.note(f, cone, "member");
                self.note(&shifted, cone, "member");
            }
            OrderUnitVerdict::No { witness, value } => {
                self.witnesses += 1;
                let ok = cone.is_admissible(witness)
                    && f.evaluate(witness).is_ok_and(|v| v == *value)
                    && !value.is_positive();
                if !ok {
                    self.failures
                        .push(format!("order-unit witness for {f} does not recheck"));
                }
                if value.is_negative() {
                    self.note(f, cone, "refuted");
                }
            }
            OrderUnitVerdict::Unknown { .. } => {}
        }
    }

    fn report(
        &mut self,
        r: &ExperimentReport,
        cone: &GeneratedCone,
        u: &SparsePoly,
        a: &SparsePoly,
    ) {
        let ua = u * a;
        for (stage, f) in [(&r.order_unit, u), (&r.product, &ua), (&r.target, a)] {
            match stage {
                Some(Stage::Membership { verdict }) => self.membership(f, cone, verdict),
                Some(Stage::OrderUnit { verdict }) => self.order_unit(f, cone, verdict),
                _ => {}
            }
        }
    }

    fn conflicts(&self) -> Vec<String> {
        self.verdicts
            .iter()
            .filter(|(_, kinds)| kinds.contains(&"member") && kinds.contains(&"refuted"))
            .map(|((cone, f), _)| format!("{f} over [{cone}]"))
            .collect()
    }
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&mut Ledger) -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_1(_: &mut Ledger) -> Outcome {
    let lhs =
        poly_arith(&PolyOp::Mul, &[p2("1/5 - y"), p2("y + 7/5")]).map_err(|e| e.to_string())?;
    let rhs = poly_arith(
        &PolyOp::Add,
        &[fixtures::disk_alpha(), p2("x^2"), p2("x").scale(&q(6, 5))],
    )
    .map_err(|e| e.to_string())?;
    // expanded by hand: −y² − (6/5) y + 7/25
    let expected = [
        (vec![0, 0], q(7, 25)),
        (vec![0, 1], q(-6, 5)),
        (vec![0, 2], int(-1)),
    ];
    for side in [&lhs, &rhs] {
        ensure(side.num_terms() == 3, format!("{side} has extra terms"))?;
        for (e, c) in &expected {
            ensure(side.coeff(e) == *c, format!("coefficient {e:?} of {side}"))?;
        }
    }
    ensure(lhs == rhs, "sides differ")?;
    Ok(format!("both sides equal {lhs}"))
}

fn criterion_2(ledger: &mut Ledger) -> Outcome {
    let cone = fixtures::disk_cone();
    let (u, a) = (fixtures::disk_u(), fixtures::disk_beta());
    let caps = Caps::default();
    let ou = is_order_unit(&u, &cone, &caps).map_err(|e| e.to_string())?;
    ledger.order_unit(&u, &cone, &ou);
    match &ou {
        OrderUnitVerdict::Yes { c, .. } => ensure(*c == q(7, 5), format!("margin {c}"))?,
        other => return Err(format!("u: {other:?}")),
    }
    let ua = &u * &a;
    let prod = certify_membership(&ua, &cone, &caps).map_err(|e| e.to_string())?;
    ledger.membership(&ua, &cone, &prod);
    match &prod {
        MembershipVerdict::Member { degree, .. } => {
            ensure(*degree <= 2, format!("u·a at degree {degree}"))?
        }
        other => return Err(format!("u·a: {other:?}")),
    }
    let refuted = certify_membership(&a, &cone, &caps).map_err(|e| e.to_string())?;
    ledger.membership(&a, &cone, &refuted);
    match &refuted {
        MembershipVerdict::Refuted {
            refutation: Refutation::ZeroPropagation { p, q: qq, .. },
        } => ensure(
            *p == fixtures::disk_p() && *qq == fixtures::disk_q(),
            "refuted at another pair",
        )?,
        other => return Err(format!("a: {other:?}")),
    }
    let start = Instant::now();
    let lp = certify_membership(
        &a,
        &cone,
        &Caps::default().with_degree(6).without_refutation(),
    )
    .map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ledger.membership(&a, &cone, &lp);
    ensure(
        matches!(lp, MembershipVerdict::NotFoundUpTo { degree: 6, .. }),
        format!("degree-6 search: {lp:?}"),
    )?;
    ensure(
        took < Duration::from_secs(60),
        format!("degree-6 search took {took:?}"),
    )?;
    Ok(format!(
        "Yes(7/5), u·a certified, a refuted at ((0,1/5),(0,-7/5)), NotFoundUpTo(6) in {:.2} s",
        took.as_secs_f64()
    ))
}

fn criterion_3(_: &mut Ledger) -> Outcome {
    let t = |r: ordcone::Result<bool>| r.map_err(|e| e.to_string());
    ensure(
        t(toy_r1_member(&p1("x*(1 + x)")))?,
        "x(1+x) should be in R1+",
    )?;
    ensure(
        t(toy_order_unit(&p1("1 + x")))?,
        "1+x should be an order unit",
    )?;
    ensure(!t(toy_r1_member(&p1("x")))?, "x should not be in R1+")?;
    Ok("x(1+x) in R1+, 1+x order unit, x not in R1+".into())
}

fn criterion_4(_: &mut Ledger) -> Outcome {
    let t = |r: ordcone::Result<bool>| r.map_err(|e| e.to_string());
    ensure(t(toy_r2_member(&p1("x^2")))?, "x^2 should be in R2+")?;
    ensure(!t(toy_r2_member(&p1("x")))?, "x should not be in R2+")?;
    for m in 1..=64 {
        let f = &p1("x^2").scale(&int(m)) - &p1("x");
        ensure(!t(toy_r2_member(&f))?, format!("{f} accepted"))?;
    }
    Ok("x^2 in R2+, x and M*x^2 - x (M = 1..64) rejected".into())
}

fn criterion_5(ledger: &mut Ledger) -> Outcome {
    let cone = fixtures::interval_cone();
    let f = p1("x^2 - x + 1");
    let v = certify_membership(&f, &cone, &Caps::default().with_degree(2))
        .map_err(|e| e.to_string())?;
    ledger.membership(&f, &cone, &v);
    let MembershipVerdict::Member {
        certificate,
        degree,
    } = &v
    else {
        return Err(format!("{v:?}"));
    };
    ensure(*degree <= 2, format!("degree {degree}"))?;
    ensure(
        verify_certificate(&f, certificate, &cone),
        "certificate does not verify",
    )?;
    Ok(format!(
        "certificate {} at degree {degree}",
        certificate.describe(&cone)
    ))
}

fn facet(k: &Polytope, expr: &str, vars: &[&str]) -> usize {
    k.facet_index(&LinearForm::parse(expr, vars).unwrap())
        .unwrap()
}

fn e<T>(r: ordcone::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn criterion_6(_: &mut Ledger) -> Outcome {
    let square = fixtures::square();
    let corner = e(face_of(
        &square,
        &[facet(&square, "x", XY), facet(&square, "y", XY)],
    ))?
    .face
    .ok_or("empty corner")?;
    let beta = LinearForm::parse("2*x + 3*y", XY).unwrap();
    let dec = e(facet_decompose(&square, &corner, &beta))?;
    ensure(dec.recompose(&square) == beta, "square recomposition")?;
    let a: BTreeMap<usize, Rational> = dec.facets.iter().copied().zip(dec.coeffs.clone()).collect();
    ensure(
        a[&facet(&square, "x", XY)] == int(2) && a[&facet(&square, "y", XY)] == int(3),
        format!("square coefficients {:?}", dec.coeffs),
    )?;

    let pyr = fixtures::pyramid();
    let apex = pyr
        .vertex_index(&[int(0), int(0), int(1)])
        .ok_or("no apex")?;
    let g = pyr.vertex_face(apex);
    ensure(
        facets_containing(&pyr, &g).len() == 4,
        "apex lies on four facets",
    )?;
    let beta = LinearForm::parse("2 - 2*z", XYZ).unwrap();
    let dec = e(facet_decompose(&pyr, &g, &beta))?;
    ensure(dec.recompose(&pyr) == beta, "pyramid recomposition")?;
    ensure(
        dec.coeffs.iter().all(|c| *c == q(1, 2)),
        format!("pyramid coefficients {:?}", dec.coeffs),
    )?;

    let (b, c) = (
        LinearForm::parse("x + y", XY).unwrap(),
        LinearForm::parse("3*x + 2*y", XY).unwrap(),
    );
    let dom = e(dominate_linear(&square, &corner, &b, &c))?;
    ensure(dom.m == 3, format!("M = {}", dom.m))?;
    ensure(dom.farkas_below.is_some(), "no certificate at M = 2")?;
    ensure(dom.recheck(&square, &b, &c), "domination does not recheck")?;
    Ok("square a = (2,3), pyramid a_i = 1/2, M = 3 with Farkas multipliers at M = 2".into())
}

fn criterion_7(_: &mut Ledger) -> Outcome {
    let trap = fixtures::trapezoid();
    let qy = e(face_of(
        &trap,
        &[facet(&trap, "x", XY), facet(&trap, "2 - x - y", XY)],
    ))?;
    ensure(qy.face.is_none(), "trapezoid facets should not meet on K")?;
    let meet = qy.flat_meet.ok_or("hulls do not meet")?;
    ensure(
        meet.dim() == 0 && meet.point == vec![int(0), int(2)],
        format!("meet {meet:?}"),
    )?;

    let pyr = fixtures::pyramid();
    let apex = pyr
        .vertex_index(&[int(0), int(0), int(1)])
        .ok_or("no apex")?;
    let qy = e(face_of(
        &pyr,
        &[facet(&pyr, "1 + x - z", XYZ), facet(&pyr, "1 - x - z", XYZ)],
    ))?;
    let face = qy.face.ok_or("opposite slanted facets should meet")?;
    ensure(
        face.vertices == vec![apex] && face.dim == 0,
        "face is not the apex",
    )?;
    let line = qy.flat_meet.ok_or("hulls do not meet")?;
    ensure(
        line.dim() == 1,
        format!("hull meet has dimension {}", line.dim()),
    )?;
    Ok(
        "trapezoid: empty face, hulls meet at (0,2); pyramid: apex face, hulls meet in a line"
            .into(),
    )
}

fn affine_image(k: &Polytope, rng: &mut ChaCha8Rng) -> Polytope {
    let n = k.dim();
    loop {
        let m: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| int(rng.gen_range(-3..=3))).collect())
            .collect();
        let shift: Vec<Rational> = (0..n).map(|_| q(rng.gen_range(-6..=6), 2)).collect();
        let image: Vec<Vec<Rational>> = k
            .vertices()
            .iter()
            .map(|v| {
                (0..n)
                    .map(|i| m[i].iter().zip(v).map(|(a, b)| a * b).sum::<Rational>() + &shift[i])
                    .collect()
            })
            .collect();
        // a singular map collapses the vertex set
        if let Ok(p) = Polytope::from_vertices(&image) {
            if p.dim() == n && p.vertices().len() == k.vertices().len() {
                return p;
            }
        }
    }
}

fn criterion_8(_: &mut Ledger) -> Outcome {
    let verdict = |k: &Polytope| recognize_simplex_product(k).map_err(|e| e.to_string());
    let product_dims = |k: &Polytope, name: &str| -> Result<Vec<usize>, String> {
        match verdict(k)? {
            StructureVerdict::Product { witness } => {
                ensure(
                    witness.recheck(k),
                    format!("{name}: witness does not recheck"),
                )?;
                let mut d = witness.class_dims(k);
                d.sort();
                Ok(d)
            }
            other => Err(format!("{name}: {other:?}")),
        }
    };
    ensure(
        product_dims(&fixtures::square(), "square")? == [1, 1],
        "square dims",
    )?;
    ensure(
        product_dims(&fixtures::triangle(), "triangle")? == [2],
        "triangle dims",
    )?;
    ensure(
        product_dims(&fixtures::cube(), "cube")? == [1, 1, 1],
        "cube dims",
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (base, dims) in [
        (fixtures::square(), vec![1, 1]),
        (fixtures::prism(), vec![1, 2]),
    ] {
        for i in 0..5 {
            let k = affine_image(&base, &mut rng);
            ensure(
                product_dims(&k, &format!("image {i}"))? == dims,
                format!("image {i} dims"),
            )?;
        }
    }
    let pentagon = Polytope::from_vertices(
        &[(0, 0), (2, 0), (3, 2), (1, 3), (-1, 2)].map(|(x, y)| vec![int(x), int(y)]),
    )
    .map_err(|e| e.to_string())?;
    ensure(pentagon.vertices().len() == 5, "pentagon fixture")?;
    for (name, k) in [
        ("trapezoid", fixtures::trapezoid()),
        ("pentagon", pentagon),
        ("pyramid", fixtures::pyramid()),
    ] {
        ensure(
            matches!(verdict(&k)?, StructureVerdict::NotProduct { .. }),
            format!("{name} recognized as a product"),
        )?;
    }
    Ok("square, triangle, cube and 10 affine images recognized; trapezoid, pentagon, pyramid rejected".into())
}

/// A random order unit of degree at most two with a certificate found at
/// degree at most three.
fn sample_order_unit(
    cone: &GeneratedCone,
    rng: &mut ChaCha8Rng,
    ledger: &mut Ledger,
) -> SparsePoly {
    let n = cone.nvars();
    let caps = Caps::default().with_degree(3);
    loop {
        let mut terms = vec![(vec![0; n], q(rng.gen_range(1..=4), 1))];
        for _ in 0..3 {
            let mut e = vec![0u32; n];
            for _ in 0..rng.gen_range(1..=2) {
                e[rng.gen_range(0..n)] += 1;
            }
            terms.push((e, q(rng.gen_range(-3..=3), rng.gen_range(1..=3))));
        }
        let u = SparsePoly::from_terms(n, terms).unwrap();
        let v = is_order_unit(&u, cone, &caps).unwrap();
        ledger.order_unit(&u, cone, &v);
        if v.is_yes() {
            return u;
        }
    }
}

/// A random nonnegative combination of generator products of degree at
/// most two; certified positive by construction.
fn sample_positive(cone: &GeneratedCone, rng: &mut ChaCha8Rng) -> SparsePoly {
    let products = enumerate_products(cone, 2);
    let mut a = SparsePoly::zero(cone.nvars());
    while a.is_zero() {
        for _ in 0..rng.gen_range(1..=3) {
            let p = &products[rng.gen_range(0..products.len())];
            a = &a + &p.poly.scale(&q(rng.gen_range(1..=5), rng.gen_range(1..=3)));
        }
    }
    a
}

fn criterion_9(ledger: &mut Ledger) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let caps = Caps::default().with_degree(5);
    let mut summary = Vec::new();
    for (name, k) in [
        ("interval", fixtures::interval()),
        ("triangle", fixtures::triangle()),
        ("square", fixtures::square()),
    ] {
        let cone = GeneratedCone::from_polytope(&k);
        let setting = Setting::Cone(cone.clone());
        let mut inconclusive = 0;
        for trial in 0..50 {
            let u = sample_order_unit(&cone, &mut rng, ledger);
            let a = sample_positive(&cone, &mut rng);
            let r =
                run_cancellation_experiment(&setting, &u, &a, &caps).map_err(|e| e.to_string())?;
            ensure(
                r.recheck(&setting, &u, &a),
                format!("{name} trial {trial}: report does not recheck"),
            )?;
            ledger.report(&r, &cone, &u, &a);
            match r.conclusion {
                Conclusion::FailRefuted => {
                    return Err(format!("{name} trial {trial}: u = {u}, a = {a} refuted"))
                }
                Conclusion::Inconclusive => inconclusive += 1,
                Conclusion::Pass => {}
            }
        }
        summary.push(format!("{name} {inconclusive}/50"));
    }
    Ok(format!(
        "0 FAIL_REFUTED; INCONCLUSIVE rate: {}",
        summary.join(", ")
    ))
}

fn criterion_10(ledger: &mut Ledger) -> Outcome {
    // a sweep over random targets and several caps on top of everything
    // recorded by the earlier criteria
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let cones = [
        fixtures::interval_cone(),
        GeneratedCone::from_polytope(&fixtures::triangle()),
        GeneratedCone::from_polytope(&fixtures::square()),
        fixtures::disk_cone(),
    ];
    let all_caps = [
        Caps::default().with_degree(1),
        Caps::default().with_degree(3),
        Caps::default().with_degree(3).without_refutation(),
    ];
    let mut swept = 0;
    for cone in &cones {
        let n = cone.nvars();
        for _ in 0..12 {
            let terms: Vec<(Vec<u32>, Rational)> = (0..3)
                .map(|_| {
                    let e = (0..n).map(|_| rng.gen_range(0..=2)).collect();
                    (e, q(rng.gen_range(-3..=3), rng.gen_range(1..=2)))
                })
                .collect();
            let f = SparsePoly::from_terms(n, terms).unwrap();
            for caps in &all_caps {
                let v = certify_membership(&f, cone, caps).map_err(|e| e.to_string())?;
                ledger.membership(&f, cone, &v);
                swept += 1;
            }
            let v = is_order_unit(&f, cone, &all_caps[1]).map_err(|e| e.to_string())?;
            ledger.order_unit(&f, cone, &v);
        }
    }
    let conflicts = ledger.conflicts();
    ensure(
        conflicts.is_empty(),
        format!("conflicting verdicts: {conflicts:?}"),
    )?;
    ensure(ledger.failures.is_empty(), ledger.failures.join("; "))?;
    ensure(
        ledger.certificates > 0 && ledger.witnesses > 0,
        "empty ledger",
    )?;
    Ok(format!(
        "{} (f, cone) pairs, {} certificates verified, {} witnesses rechecked, {swept} sweep queries",
        ledger.verdicts.len(),
        ledger.certificates,
        ledger.witnesses
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("disk identity", criterion_1),
        ("disk counter-example end to end", criterion_2),
        ("toy ring cancellation failure", criterion_3),
        ("toy R2 consistency", criterion_4),
        ("certificate search recovery", criterion_5),
        ("facet decomposition and domination", criterion_6),
        ("trapezoid and pyramid geometry", criterion_7),
        ("structure recognition", criterion_8),
        ("cancellation property suite", criterion_9),
        ("soundness sweep", criterion_10),
    ];
    let mut ledger = Ledger::default();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| run(&mut ledger)))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name} ({secs:.2} s): {detail}",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.2} s): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
