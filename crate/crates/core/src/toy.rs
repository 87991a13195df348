//! Exact decision procedures for the two univariate toy rings on `[0, 1]`.
//!
//! `R₁⁺` holds the polynomials strictly positive on `[0, 1]` together with
//! `x^j(1 + x)f` for `j ≥ 1` and `f` strictly positive on `[0, 1]`.
//! `R₂⁺` holds `x^j f` with `j ≠ 1` and `f` strictly positive on `[0, 1]`.
//! Both contain 0.

use crate::error::{Error, Result};
use crate::poly::{exact_div, strictly_positive_on_unit_interval, x_valuation, SparsePoly};

fn univariate(p: &SparsePoly) -> Result<()> {
    if p.nvars() != 1 {
        return Err(Error::Dimension(format!(
            "toy rings are univariate, got {} variables",
            p.nvars()
        )));
    }
    Ok(())
}

fn strip_x(p: &SparsePoly, j: u32) -> Result<SparsePoly> {
    let xj = SparsePoly::var(1, 0).pow(j);
    exact_div(p, &xj)?.ok_or_else(|| Error::Invalid("x-adic valuation mismatch".into()))
}

pub fn toy_order_unit(p: &SparsePoly) -> Result<bool> {
    univariate(p)?;
    strictly_positive_on_unit_interval(p)
}

pub fn toy_r1_member(p: &SparsePoly) -> Result<bool> {
    univariate(p)?;
    if p.is_zero() || strictly_positive_on_unit_interval(p)? {
        return Ok(true);
    }
    let Some(j) = x_valuation(p)? else {
        return Ok(true);
    };
    if j == 0 {
        return Ok(false);
    }
    let one_plus_x = SparsePoly::parse("1 + x", &["x"])?;
    match exact_div(&strip_x(p, j)?, &one_plus_x)? {
        Some(f) => strictly_positive_on_unit_interval(&f),
        None => Ok(false),
    }
}

pub fn toy_r2_member(p: &SparsePoly) -> Result<bool> {
    univariate(p)?;
    let Some(j) = x_valuation(p)? else {
        return Ok(true);
    };
    if j == 1 {
        return Ok(false);
    }
    strictly_positive_on_unit_interval(&strip_x(p, j)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ToyRing {
    ToyR1,
    ToyR2,
}

impl ToyRing {
    pub fn member(self, p: &SparsePoly) -> Result<bool> {
        match self {
            ToyRing::ToyR1 => toy_r1_member(p),
            ToyRing::ToyR2 => toy_r2_member(p),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ToyRing::ToyR1 => "toy-r1",
            ToyRing::ToyR2 => "toy-r2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "toy-r1" | "r1" => Some(ToyRing::ToyR1),
            "toy-r2" | "r2" => Some(ToyRing::ToyR2),
            _ => None,
        }
    }
}
