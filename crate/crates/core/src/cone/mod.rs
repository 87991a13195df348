//! Finitely generated positive cones and their membership certificates.
//!
//! A cone is generated additively and multiplicatively by polynomials
//! `g_1..g_m` with positive rational scalars. A [`Certificate`] is a
//! nonnegative combination of generator products `Π g_i^{w_i}`; the empty
//! product is the constant 1. Membership is searched degree by degree as an
//! exact LP over coefficient matching, and refuted outright when a sound
//! evaluation argument applies.

mod json;
mod order_unit;
mod points;
mod refute;
mod search;

use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::poly::{Exponents, SparsePoly};
use crate::polytope::{Point, Polytope};
use crate::rational::{serde_rat, Rational};

pub use json::{ConeJson, PolyInput};
pub use order_unit::{is_order_unit, OrderUnitVerdict};
pub use points::{admissible, find_admissible};
pub use refute::{zero_propagation_refute, Refutation, ZeroPropagation};
pub use search::{certify_membership, DegreeRefutation, MembershipVerdict};

/// Search limits shared by the semi-decision procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_degree: u32,
    pub max_m: u64,
    pub grid_denominator_cap: u64,
    /// Apply the evaluation-based refutation rules before each LP search.
    pub refute: bool,
    /// Use the data-parallel code paths (needs the `parallel` feature).
    pub parallel: bool,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_degree: 8,
            max_m: 64,
            grid_denominator_cap: 64,
            refute: true,
            parallel: par::default_parallel(),
        }
    }
}

impl Caps {
    pub fn with_degree(mut self, d: u32) -> Self {
        self.max_degree = d;
        self
    }

    pub fn without_refutation(mut self) -> Self {
        self.refute = false;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedCone {
    nvars: usize,
    generators: Vec<SparsePoly>,
    names: Vec<String>,
    polytope: Option<Polytope>,
    point_pairs: Vec<(Point, Point)>,
    sample_points: Vec<Point>,
    search_box: Option<(Point, Point)>,
}

impl GeneratedCone {
    pub fn new(nvars: usize, generators: Vec<SparsePoly>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.nvars() != nvars {
                return Err(Error::Dimension(format!(
                    "generator {i} has {} variables, cone has {nvars}",
                    g.nvars()
                )));
            }
            if g.is_zero() {
                return Err(Error::Invalid(format!("generator {i} is zero")));
            }
        }
        let names = (0..generators.len()).map(|i| format!("g{i}")).collect();
        Ok(Self {
            nvars,
            generators,
            names,
            polytope: None,
            point_pairs: Vec::new(),
            sample_points: Vec::new(),
            search_box: None,
        })
    }

    /// The cone `R[K]⁺` generated by the normalized facet forms of `k`.
    pub fn from_polytope(k: &Polytope) -> Self {
        let generators = k.facets().iter().map(|f| f.to_poly()).collect();
        let mut cone = Self::new(k.dim(), generators).expect("facet forms are nonzero");
        cone.names = k.facets().iter().map(|f| f.to_string()).collect();
        cone.polytope = Some(k.clone());
        cone
    }

    /// Display names for the generators (used in reports).
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.generators.len() {
            return Err(Error::Dimension("one name per generator".into()));
        }
        self.names = names;
        Ok(self)
    }

    /// Attaches an admissible point pair for zero propagation; the
    /// precondition is checked here.
    pub fn with_point_pair(mut self, p: Point, q: Point) -> Result<Self> {
        refute::check_pair(&self, &p, &q)?;
        self.point_pairs.push((p, q));
        Ok(self)
    }

    /// Extra points offered to the admissible-point searches.
    pub fn with_sample_points(mut self, points: Vec<Point>) -> Result<Self> {
        if points.iter().any(|p| p.len() != self.nvars) {
            return Err(Error::Dimension("sample point dimension".into()));
        }
        self.sample_points.extend(points);
        Ok(self)
    }

    /// Box scanned by the rational grid search when no polytope is attached.
    pub fn with_search_box(mut self, lo: Point, hi: Point) -> Result<Self> {
        if lo.len() != self.nvars
            || hi.len() != self.nvars
            || lo.iter().zip(&hi).any(|(a, b)| a > b)
        {
            return Err(Error::Invalid("malformed search box".into()));
        }
        self.search_box = Some((lo, hi));
        Ok(self)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[SparsePoly] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn polytope(&self) -> Option<&Polytope> {
        self.polytope.as_ref()
    }

    pub fn point_pairs(&self) -> &[(Point, Point)] {
        &self.point_pairs
    }

    pub fn sample_points(&self) -> &[Point] {
        &self.sample_points
    }

    pub fn search_box(&self) -> Option<&(Point, Point)> {
        self.search_box.as_ref()
    }

    pub(crate) fn check_poly(&self, f: &SparsePoly) -> Result<()> {
        if f.nvars() != self.nvars {
            return Err(Error::Dimension(format!(
                "polynomial in {} variables for a cone in {}",
                f.nvars(),
                self.nvars
            )));
        }
        Ok(())
    }

    /// Generator values at a point.
    pub fn generator_values(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.generators.iter().map(|g| g.evaluate(point)).collect()
    }

    pub fn is_admissible(&self, point: &[Rational]) -> bool {
        admissible(self, point)
    }

    /// Human-readable rendering of a generator product.
    pub fn describe_product(&self, exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                let name = &self.names[i];
                let name = if name.contains(' ') {
                    format!("({name})")
                } else {
                    name.clone()
                };
                if k == 1 {
                    name
                } else {
                    format!("{name}^{k}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// One generator product with its expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct Product {
    pub exps: Exponents,
    pub poly: SparsePoly,
}

impl Product {
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

/// Total degree ascending, then exponent vectors descending.
pub fn product_order(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    da.cmp(&db).then_with(|| b.cmp(a))
}

fn exponents_of_degree(m: usize, d: u32) -> Vec<Exponents> {
    fn rec(i: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
    }
    if m == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; m], &mut out);
    out
}

/// Every product `Π g_i^{w_i}` with `Σ w_i ≤ d`, expanded, in
/// [`product_order`].
pub fn enumerate_products(cone: &GeneratedCone, d: u32) -> Vec<Product> {
    enumerate_products_with(cone, d, par::default_parallel())
}

pub fn enumerate_products_with(cone: &GeneratedCone, d: u32, parallel: bool) -> Vec<Product> {
    let mut table = ProductTable::new(cone);
    table.extend_to(d, parallel);
    table.products
}

/// Products grown one degree layer at a time, so that an escalating search
/// only expands what it reaches.
pub(crate) struct ProductTable<'a> {
    cone: &'a GeneratedCone,
    pub(crate) products: Vec<Product>,
    last_layer: HashMap<Exponents, usize>,
    degree: u32,
}

impl<'a> ProductTable<'a> {
    pub(crate) fn new(cone: &'a GeneratedCone) -> Self {
        let m = cone.num_generators();
        let mut last_layer = HashMap::new();
        last_layer.insert(vec![0; m], 0);
        Self {
            cone,
            products: vec![Product {
                exps: vec![0; m],
                poly: SparsePoly::one(cone.nvars),
            }],
            last_layer,
            degree: 0,
        }
    }

    pub(crate) fn extend_to(&mut self, d: u32, parallel: bool) {
        let m = self.cone.num_generators();
        while self.degree < d {
            let deg = self.degree + 1;
            let layer = exponents_of_degree(m, deg);
            let polys = {
                let (products, prev, gens) =
                    (&self.products, &self.last_layer, &self.cone.generators);
                par::map(&layer, parallel, |w| {
                    let i = w.iter().position(|&k| k > 0).expect("positive degree");
                    let mut parent = w.clone();
                    parent[i] -= 1;
                    &products[prev[&parent]].poly * &gens[i]
                })
            };
            let mut next = HashMap::with_capacity(layer.len());
            for (w, poly) in layer.into_iter().zip(polys) {
                next.insert(w.clone(), self.products.len());
                self.products.push(Product { exps: w, poly });
            }
            self.last_layer = next;
            self.degree = deg;
        }
    }

    /// Products of degree at most `d` (a prefix of the table).
    pub(crate) fn up_to(&self, d: u32) -> &[Product] {
        let end = self
            .products
            .iter()
            .position(|p| p.degree() > d)
            .unwrap_or(self.products.len());
        &self.products[..end]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertTerm {
    pub exps: Exponents,
    #[serde(with = "serde_rat")]
    pub coeff: Rational,
}

/// `Σ coeff · Π g_i^{exps_i}` with every coefficient positive.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub terms: Vec<CertTerm>,
}

impl Certificate {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds from (exponents, coefficient) pairs, dropping zero
    /// coefficients and sorting into product order.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Self {
        let mut terms: Vec<CertTerm> = terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exps, coeff)| CertTerm { exps, coeff })
            .collect();
        terms.sort_by(|a, b| product_order(&a.exps, &b.exps));
        Self { terms }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.exps.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn coeff_of(&self, exps: &[u32]) -> Rational {
        self.terms
            .iter()
            .find(|t| t.exps == exps)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Symbolic expansion over the cone's generators.
    pub fn expand(&self, cone: &GeneratedCone) -> Result<SparsePoly> {
        let mut acc = SparsePoly::zero(cone.nvars);
        for t in &self.terms {
            if t.exps.len() != cone.num_generators() {
                return Err(Error::Dimension(format!(
                    "certificate term over {} generators, cone has {}",
                    t.exps.len(),
                    cone.num_generators()
                )));
            }
            let mut prod = SparsePoly::constant(cone.nvars, t.coeff.clone());
            for (g, &k) in cone.generators.iter().zip(&t.exps) {
                if k > 0 {
                    prod = &prod * &g.pow(k);
                }
            }
            acc = &acc + &prod;
        }
        Ok(acc)
    }

    /// `f + c` as a certificate (adds `c` to the empty-product term).
    pub fn plus_constant(&self, m: usize, c: &Rational) -> Self {
        let zero = vec![0; m];
        let base = self.coeff_of(&zero);
        Self::from_terms(
            self.terms
                .iter()
                .filter(|t| t.exps != zero)
                .map(|t| (t.exps.clone(), t.coeff.clone()))
                .chain(std::iter::once((zero.clone(), base + c))),
        )
    }

    pub fn describe(&self, cone: &GeneratedCone) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|t| {
                format!(
                    "{}·{}",
                    crate::rational::format_rational(&t.coeff),
                    cone.describe_product(&t.exps)
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// True iff every coefficient is positive and the expansion equals `f`.
pub fn verify_certificate(f: &SparsePoly, cert: &Certificate, cone: &GeneratedCone) -> bool {
    cert.terms.iter().all(|t| t.coeff.is_positive())
        && f.nvars() == cone.nvars
        && cert.expand(cone).is_ok_and(|e| e == *f)
}
