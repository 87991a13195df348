//! Exact sparse multivariate polynomials over the rationals.

mod parse;
pub mod univariate;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, serde_rat, Rational};

pub use univariate::{exact_div, strictly_positive_on_unit_interval, sturm_count, x_valuation};

/// Exponent vector, one entry per variable.
pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

/// Arithmetic requested through [`poly_arith`].
#[derive(Debug, Clone, PartialEq)]
pub enum PolyOp {
    Add,
    Mul,
    Scale(Rational),
    Power(u32),
}

/// Applies `op` to the operands: `Add`/`Mul` fold over all of them,
/// `Scale`/`Power` take exactly one.
pub fn poly_arith(op: &PolyOp, operands: &[SparsePoly]) -> Result<SparsePoly> {
    let first = operands
        .first()
        .ok_or_else(|| Error::Invalid("poly_arith needs at least one operand".into()))?;
    match op {
        PolyOp::Add => operands[1..]
            .iter()
            .try_fold(first.clone(), |acc, p| acc.checked_add(p)),
        PolyOp::Mul => operands[1..]
            .iter()
            .try_fold(first.clone(), |acc, p| acc.checked_mul(p)),
        PolyOp::Scale(_) | PolyOp::Power(_) if operands.len() != 1 => Err(Error::Invalid(format!(
            "{op:?} takes one operand, got {}",
            operands.len()
        ))),
        PolyOp::Scale(c) => Ok(first.scale(c)),
        PolyOp::Power(k) => Ok(first.pow(*k)),
    }
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(
            i < nvars,
            "variable index {i} out of range for {nvars} variables"
        );
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exps: Exponents, c: Rational) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { nvars, terms }
    }

    /// Collects terms, merging repeated exponents and dropping zeros.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Exponents, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Dimension(format!(
                    "exponent vector {e:?} for {nvars} variables"
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Affine polynomial `constant + Σ coeffs[i] x_i`.
    pub fn affine(constant: &Rational, coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::constant(n, constant.clone());
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Parses an expression such as `"1/5 - y"` or `"(x+3/5)^2"` over the
    /// named variables.
    pub fn parse(expr: &str, vars: &[&str]) -> Result<Self> {
        parse::parse(expr, vars)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True when every monomial has total degree ≤ 1.
    pub fn is_affine(&self) -> bool {
        self.degree().unwrap_or(0) <= 1
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), -v)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "point of length {} for a polynomial in {} variables",
                point.len(),
                self.nvars
            )));
        }
        let max_exp = self
            .terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0) as usize;
        let powers: Vec<Vec<Rational>> = point
            .iter()
            .map(|v| {
                let mut ps = Vec::with_capacity(max_exp + 1);
                ps.push(Rational::one());
                for k in 1..=max_exp {
                    let next = &ps[k - 1] * v;
                    ps.push(next);
                }
                ps
            })
            .collect();
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= &powers[i][k as usize];
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Renders with the given variable names.
    pub fn display_with(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        // highest degree first reads more naturally
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        vars[i].clone()
                    } else {
                        format!("{}^{}", vars[i], p)
                    }
                })
                .collect();
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&format_rational(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&format_rational(&mag));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

/// Conventional names for `n` variables: `x, y, z, w` up to four, then
/// `x1, …, xn`.
pub fn default_var_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_var_names(self.nvars)))
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly({self})")
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&SparsePoly> for &SparsePoly {
            type Output = SparsePoly;
            /// Panics when the variable counts differ.
            fn $method(self, rhs: &SparsePoly) -> SparsePoly {
                self.$checked(rhs).expect("variable counts agree")
            }
        }
        impl std::ops::$trait<SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$checked(&rhs).expect("variable counts agree")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly::neg(self)
    }
}

/// JSON form: `{"vars":["x","y"], "terms":[{"coeff":"7/25","exps":[0,0]}]}`.
/// On input, `{"vars":[...], "expr":"..."}` is accepted as well.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    #[serde(with = "serde_rat")]
    pub coeff: Rational,
    pub exps: Exponents,
}

impl PolyJson {
    pub fn from_poly(p: &SparsePoly, vars: &[String]) -> Self {
        Self {
            vars: vars.to_vec(),
            terms: Some(
                p.terms()
                    .map(|(e, c)| TermJson {
                        coeff: c.clone(),
                        exps: e.clone(),
                    })
                    .collect(),
            ),
            expr: None,
        }
    }

    pub fn to_poly(&self) -> Result<SparsePoly> {
        let n = self.vars.len();
        match (&self.terms, &self.expr) {
            (Some(terms), None) => {
                SparsePoly::from_terms(n, terms.iter().map(|t| (t.exps.clone(), t.coeff.clone())))
            }
            (None, Some(expr)) => {
                let names: Vec<&str> = self.vars.iter().map(String::as_str).collect();
                SparsePoly::parse(expr, &names)
            }
            _ => Err(Error::Parse(
                "polynomial needs exactly one of \"terms\" or \"expr\"".into(),
            )),
        }
    }
}

impl Serialize for SparsePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson::from_poly(self, &default_var_names(self.nvars)).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparsePoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PolyJson::deserialize(d)?
            .to_poly()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p2(s: &str) -> SparsePoly {
        SparsePoly::parse(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn disk_product_expands() {
        let lhs = &p2("1/5 - y") * &p2("y + 7/5");
        assert_eq!(lhs, p2("7/25 - 6/5*y - y^2"));
        let alpha = p2("1 - (x+3/5)^2 - (y+3/5)^2");
        assert_eq!(lhs, &alpha + &p2("x^2 + 6/5 x"));
    }

    #[test]
    fn additive_identity_and_square() {
        let p = p2("3x^2 - y + 1/2");
        assert_eq!(&p + &SparsePoly::zero(2), p);
        assert_eq!(p2("(x+y)^2"), p2("x^2 + 2*x*y + y^2"));
    }

    #[test]
    fn poly_arith_ops() {
        let x = SparsePoly::var(2, 0);
        let y = SparsePoly::var(2, 1);
        let s = poly_arith(&PolyOp::Add, &[x.clone(), y.clone()]).unwrap();
        assert_eq!(poly_arith(&PolyOp::Power(2), &[s]).unwrap(), p2("(x+y)^2"));
        assert_eq!(
            poly_arith(&PolyOp::Scale(rat(1, 2)), std::slice::from_ref(&x)).unwrap(),
            p2("x/2")
        );
        let z = SparsePoly::var(3, 2);
        assert!(matches!(
            poly_arith(&PolyOp::Mul, &[x, z]),
            Err(Error::Dimension(_))
        ));
        assert!(poly_arith(&PolyOp::Power(2), &[y.clone(), y]).is_err());
    }

    #[test]
    fn evaluation() {
        let alpha = p2("1 - (x+3/5)^2 - (y+3/5)^2");
        assert_eq!(alpha.evaluate(&[int(0), rat(1, 5)]).unwrap(), int(0));
        assert_eq!(alpha.evaluate(&[int(0), rat(-7, 5)]).unwrap(), int(0));
        let p = p2("x*y - 4 + y^3");
        assert_eq!(p.evaluate(&[int(0), int(0)]).unwrap(), p.constant_term());
        assert!(p.evaluate(&[int(0)]).is_err());
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let p = &p2("x + y") - &p2("x");
        assert_eq!(p.num_terms(), 1);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn json_round_trip_and_expr_input() {
        let p = p2("7/25 - 6/5*y - y^2");
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"7/25\""));
        let back: SparsePoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let q: SparsePoly =
            serde_json::from_str(r#"{"vars":["x","y"],"expr":"7/25 - 6/5 y - y^2"}"#).unwrap();
        assert_eq!(q, p);
        let bad = serde_json::from_str::<SparsePoly>(
            r#"{"vars":["x"],"terms":[{"coeff":"1","exps":[0,1]}]}"#,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p2("7/25 - 6/5*y - y^2").to_string(), "-y^2 - 6/5*y + 7/25");
        assert_eq!(SparsePoly::zero(1).to_string(), "0");
    }
}
