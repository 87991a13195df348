//! Positivity through an order unit: if `u` is an order unit, `u·a ≥ 0`
//! and `a` lies in the order ideal of `u·a`, then `a ≥ 0`.

use serde::Serialize;

use crate::cone::{
    certify_membership, is_order_unit, Caps, Certificate, GeneratedCone, MembershipVerdict,
    OrderUnitVerdict,
};
use crate::error::{Error, Result};
use crate::poly::SparsePoly;

use super::{in_order_ideal, IdealVerdict, OrderIdealGen};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PositivityStage {
    ProductCertificate,
    IdealMembership,
    Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositivityTrace {
    pub order_unit: OrderUnitVerdict,
    pub product: Option<MembershipVerdict>,
    pub ideal: Option<IdealVerdict>,
    pub target: Option<MembershipVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PositivityOutcome {
    Positive {
        certificate: Certificate,
        trace: PositivityTrace,
    },
    Inconclusive {
        stalled_at: PositivityStage,
        trace: PositivityTrace,
    },
}

impl PositivityOutcome {
    pub fn trace(&self) -> &PositivityTrace {
        match self {
            PositivityOutcome::Positive { trace, .. }
            | PositivityOutcome::Inconclusive { trace, .. } => trace,
        }
    }
}

pub fn lemma2_positivity(
    u: &SparsePoly,
    a: &SparsePoly,
    cone: &GeneratedCone,
    caps: &Caps,
) -> Result<PositivityOutcome> {
    cone.check_poly(u)?;
    cone.check_poly(a)?;
    let order_unit = is_order_unit(u, cone, caps)?;
    match &order_unit {
        OrderUnitVerdict::Yes { .. } => {}
        OrderUnitVerdict::No { .. } => {
            return Err(Error::Precondition(format!("u = {u} is not an order unit")))
        }
        OrderUnitVerdict::Unknown { .. } => {
            return Err(Error::Precondition(format!(
                "u = {u} could not be confirmed as an order unit within the caps"
            )))
        }
    }
    let mut trace = PositivityTrace {
        order_unit,
        product: None,
        ideal: None,
        target: None,
    };
    let ua = u * a;
    let product = certify_membership(&ua, cone, caps)?;
    let stalled = |stage, trace| {
        Ok(PositivityOutcome::Inconclusive {
            stalled_at: stage,
            trace,
        })
    };
    let MembershipVerdict::Member { certificate, .. } = &product else {
        trace.product = Some(product);
        return stalled(PositivityStage::ProductCertificate, trace);
    };
    let ideal =
        OrderIdealGen::with_certificates(vec![ua.clone()], vec![certificate.clone()], cone)?;
    trace.product = Some(product);
    let membership = in_order_ideal(a, &ideal, caps)?;
    let is_member = membership.is_member();
    trace.ideal = Some(membership);
    if !is_member {
        return stalled(PositivityStage::IdealMembership, trace);
    }
    let target = certify_membership(a, cone, caps)?;
    let cert = target.certificate().cloned();
    trace.target = Some(target);
    match cert {
        Some(certificate) => Ok(PositivityOutcome::Positive { certificate, trace }),
        None => stalled(PositivityStage::Certificate, trace),
    }
}
