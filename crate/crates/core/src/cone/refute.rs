//! Sound refutation rules: a negative value at an admissible point, and zero
//! propagation between a point pair.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::SparsePoly;
use crate::polytope::Point;
use crate::rational::{format_rational, serde_rat, Rational};

use super::{admissible, GeneratedCone};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refutation {
    /// Every cone element is nonnegative at an admissible point.
    NegativeValue {
        #[serde(with = "serde_rat::vec")]
        point: Point,
        #[serde(with = "serde_rat")]
        value: Rational,
    },
    /// `f(p) = 0` but `f(q) ≠ 0`, where every generator vanishing at the
    /// admissible point `p` also vanishes at `q`.
    ZeroPropagation {
        #[serde(with = "serde_rat::vec")]
        p: Point,
        #[serde(with = "serde_rat::vec")]
        q: Point,
        #[serde(with = "serde_rat")]
        value_at_q: Rational,
    },
}

impl Refutation {
    /// Re-derives the refutation from scratch by exact evaluation.
    pub fn recheck(&self, f: &SparsePoly, cone: &GeneratedCone) -> bool {
        match self {
            Refutation::NegativeValue { point, value } => {
                admissible(cone, point)
                    && value.is_negative()
                    && f.evaluate(point).is_ok_and(|v| v == *value)
            }
            Refutation::ZeroPropagation { p, q, value_at_q } => {
                check_pair(cone, p, q).is_ok()
                    && f.evaluate(p).is_ok_and(|v| v.is_zero())
                    && !value_at_q.is_zero()
                    && f.evaluate(q).is_ok_and(|v| v == *value_at_q)
            }
        }
    }

    pub fn describe(&self) -> String {
        let pt = |p: &Point| {
            format!(
                "({})",
                p.iter().map(format_rational).collect::<Vec<_>>().join(", ")
            )
        };
        match self {
            Refutation::NegativeValue { point, value } => format!(
                "negative value {} at admissible point {}",
                format_rational(value),
                pt(point)
            ),
            Refutation::ZeroPropagation { p, q, value_at_q } => format!(
                "vanishes at {} but takes value {} at {}",
                pt(p),
                format_rational(value_at_q),
                pt(q)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ZeroPropagation {
    Refuted { refutation: Refutation },
    Inconclusive,
}

/// Checks that `p` is admissible and that every generator vanishing at `p`
/// vanishes at `q`. `q` itself need not be admissible.
pub(crate) fn check_pair(cone: &GeneratedCone, p: &[Rational], q: &[Rational]) -> Result<()> {
    if p.len() != cone.nvars() || q.len() != cone.nvars() {
        return Err(Error::Dimension(
            "point dimension differs from the cone".into(),
        ));
    }
    for (i, g) in cone.generators().iter().enumerate() {
        let gp = g.evaluate(p)?;
        if gp.is_negative() {
            return Err(Error::Precondition(format!(
                "generator {} is negative at p (value {})",
                cone.names()[i],
                format_rational(&gp)
            )));
        }
        if gp.is_zero() {
            let gq = g.evaluate(q)?;
            if !gq.is_zero() {
                return Err(Error::Precondition(format!(
                    "generator {} vanishes at p but not at q (value {})",
                    cone.names()[i],
                    format_rational(&gq)
                )));
            }
        }
    }
    Ok(())
}

/// Refuted when `f(p) = 0` and `f(q) ≠ 0`.
pub fn zero_propagation_refute(
    f: &SparsePoly,
    cone: &GeneratedCone,
    p: &[Rational],
    q: &[Rational],
) -> Result<ZeroPropagation> {
    cone.check_poly(f)?;
    check_pair(cone, p, q)?;
    let fq = f.evaluate(q)?;
    if f.evaluate(p)?.is_zero() && !fq.is_zero() {
        Ok(ZeroPropagation::Refuted {
            refutation: Refutation::ZeroPropagation {
                p: p.to_vec(),
                q: q.to_vec(),
                value_at_q: fq,
            },
        })
    } else {
        Ok(ZeroPropagation::Inconclusive)
    }
}

/// Zero propagation over every pair attached to the cone.
pub(crate) fn attached_pairs(f: &SparsePoly, cone: &GeneratedCone) -> Result<Option<Refutation>> {
    for (p, q) in cone.point_pairs() {
        if let ZeroPropagation::Refuted { refutation } = zero_propagation_refute(f, cone, p, q)? {
            return Ok(Some(refutation));
        }
    }
    Ok(None)
}
