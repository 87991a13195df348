use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::poly::SparsePoly;
use crate::rational::{common_denominator, format_rational, serde_rat, Rational};

/// Affine-linear form `constant + Σ coeffs[j] x_j`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearForm {
    #[serde(rename = "const", with = "serde_rat")]
    pub constant: Rational,
    #[serde(with = "serde_rat::vec")]
    pub coeffs: Vec<Rational>,
}

impl LinearForm {
    pub fn new(constant: Rational, coeffs: Vec<Rational>) -> Self {
        Self { constant, coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(Rational::zero(), vec![Rational::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Parses an affine expression such as `"2 - x - y"`.
    pub fn parse(expr: &str, vars: &[&str]) -> Result<Self> {
        Self::from_poly(&SparsePoly::parse(expr, vars)?)
    }

    pub fn from_poly(p: &SparsePoly) -> Result<Self> {
        if !p.is_affine() {
            return Err(Error::Invalid(format!("{p} is not affine-linear")));
        }
        let n = p.nvars();
        let coeffs = (0..n)
            .map(|j| {
                let mut e = vec![0; n];
                e[j] = 1;
                p.coeff(&e)
            })
            .collect();
        Ok(Self::new(p.constant_term(), coeffs))
    }

    pub fn to_poly(&self) -> SparsePoly {
        SparsePoly::affine(&self.constant, &self.coeffs)
    }

    /// Panics if the point has the wrong length.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.coeffs.len(), "point dimension");
        dot(&self.coeffs, point) + &self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn has_zero_linear_part(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(
            &self.constant * c,
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            &self.constant + &other.constant,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.constant, self.coeffs.iter().map(|a| -a).collect())
    }

    /// Coprime integer representative with the same sign; `None` for the zero
    /// form.
    pub fn normalized(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let all = || std::iter::once(&self.constant).chain(&self.coeffs);
        let den = Rational::from_integer(common_denominator(all()));
        let ints: Vec<BigInt> = all().map(|q| (q * &den).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        let scale = den / Rational::from_integer(g);
        Some(self.scale(&scale))
    }

    /// Entries as `[constant, coeffs...]`.
    pub fn as_row(&self) -> Vec<Rational> {
        std::iter::once(self.constant.clone())
            .chain(self.coeffs.iter().cloned())
            .collect()
    }

    /// Canonical order used for facet lists: constant ascending, then the
    /// first variable with a nonzero coefficient, then coefficients
    /// descending.
    pub(crate) fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        let lead = |f: &Self| f.coeffs.iter().position(|c| !c.is_zero());
        self.constant
            .cmp(&other.constant)
            .then_with(|| lead(self).cmp(&lead(other)))
            .then_with(|| other.coeffs.cmp(&self.coeffs))
    }

    pub fn is_nonnegative_at(&self, point: &[Rational]) -> bool {
        !self.eval(point).is_negative()
    }
}

/// Constant first: `2 - x - y`.
impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::poly::default_var_names(self.dim());
        let mut parts: Vec<(Rational, String)> = Vec::new();
        if !self.constant.is_zero() {
            parts.push((self.constant.clone(), String::new()));
        }
        for (c, v) in self.coeffs.iter().zip(names) {
            if !c.is_zero() {
                parts.push((c.clone(), v));
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, v)) in parts.iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if v.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{v}")?;
            } else {
                write!(f, "{}*{v}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearForm({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn normalization_is_coprime_and_sign_preserving() {
        let f = LinearForm::new(rat(1, 2), vec![rat(-1, 4), int(0)]);
        assert_eq!(
            f.normalized().unwrap(),
            LinearForm::new(int(2), vec![int(-1), int(0)])
        );
        let g = LinearForm::new(int(-6), vec![int(4), int(2)]);
        assert_eq!(
            g.normalized().unwrap(),
            LinearForm::new(int(-3), vec![int(2), int(1)])
        );
        assert!(LinearForm::zero(2).normalized().is_none());
    }

    #[test]
    fn json_shape() {
        let f = LinearForm::parse("1 - x - y", &["x", "y"]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"const":"1","coeffs":["-1","-1"]}"#);
        assert_eq!(serde_json::from_str::<LinearForm>(&s).unwrap(), f);
        assert!(LinearForm::parse("x*y", &["x", "y"]).is_err());
    }
}
