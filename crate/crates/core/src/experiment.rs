//! Order-unit cancellation experiments: with `u` an order unit and
//! `u·a ≥ 0`, is `a ≥ 0`?

use std::time::Instant;

use serde::Serialize;

use crate::cone::{
    certify_membership, is_order_unit, verify_certificate, Caps, GeneratedCone, MembershipVerdict,
    OrderUnitVerdict,
};
use crate::error::Result;
use crate::poly::SparsePoly;
use crate::toy::{toy_order_unit, ToyRing};

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Setting {
    Cone(GeneratedCone),
    Toy(ToyRing),
}

impl Setting {
    pub fn nvars(&self) -> usize {
        match self {
            Setting::Cone(c) => c.nvars(),
            Setting::Toy(_) => 1,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Setting::Cone(c) => {
                let names: Vec<String> = c.generators().iter().map(|g| g.to_string()).collect();
                format!("cone generated by {{{}}}", names.join(", "))
            }
            Setting::Toy(t) => t.name().to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL_REFUTED")]
    FailRefuted,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl Conclusion {
    pub fn as_str(self) -> &'static str {
        match self {
            Conclusion::Pass => "PASS",
            Conclusion::FailRefuted => "FAIL_REFUTED",
            Conclusion::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Stage {
    /// Exact decision (toy rings).
    Exact {
        holds: bool,
    },
    OrderUnit {
        verdict: OrderUnitVerdict,
    },
    Membership {
        verdict: MembershipVerdict,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub setting: String,
    pub u: String,
    pub a: String,
    pub caps: Caps,
    pub order_unit: Option<Stage>,
    pub product: Option<Stage>,
    pub target: Option<Stage>,
    pub error: Option<String>,
    pub conclusion: Conclusion,
    pub wall_time_ms: u128,
}

impl ExperimentReport {
    /// Re-verifies every certificate and refutation in the report.
    pub fn recheck(&self, setting: &Setting, u: &SparsePoly, a: &SparsePoly) -> bool {
        let Setting::Cone(cone) = setting else {
            return true;
        };
        let ua = u * a;
        let ok = |stage: &Option<Stage>, f: &SparsePoly| match stage {
            Some(Stage::Membership { verdict }) => match verdict {
                MembershipVerdict::Member { certificate, .. } => {
                    verify_certificate(f, certificate, cone)
                }
                MembershipVerdict::Refuted { refutation } => refutation.recheck(f, cone),
                MembershipVerdict::NotFoundUpTo { refutations, .. } => {
                    refutations.iter().all(|r| r.recheck(f, cone))
                }
            },
            Some(Stage::OrderUnit { verdict }) => match verdict {
                OrderUnitVerdict::Yes { c, certificate, .. } => verify_certificate(
                    &(f - &SparsePoly::constant(f.nvars(), c.clone())),
                    certificate,
                    cone,
                ),
                OrderUnitVerdict::No { witness, value } => {
                    cone.is_admissible(witness) && f.evaluate(witness).is_ok_and(|v| v == *value)
                }
                OrderUnitVerdict::Unknown { .. } => true,
            },
            _ => true,
        };
        ok(&self.order_unit, u) && ok(&self.product, &ua) && ok(&self.target, a)
    }
}

pub fn run_cancellation_experiment(
    setting: &Setting,
    u: &SparsePoly,
    a: &SparsePoly,
    caps: &Caps,
) -> Result<ExperimentReport> {
    let start = Instant::now();
    if let Setting::Cone(c) = setting {
        c.check_poly(u)?;
        c.check_poly(a)?;
    }
    let mut report = ExperimentReport {
        setting: setting.describe(),
        u: u.to_string(),
        a: a.to_string(),
        caps: *caps,
        order_unit: None,
        product: None,
        target: None,
        error: None,
        conclusion: Conclusion::Inconclusive,
        wall_time_ms: 0,
    };
    let ua = u * a;
    match setting {
        Setting::Toy(ring) => {
            let unit = toy_order_unit(u)?;
            report.order_unit = Some(Stage::Exact { holds: unit });
            if !unit {
                report.error = Some(format!("u = {u} is not an order unit"));
            } else {
                let prod = ring.member(&ua)?;
                report.product = Some(Stage::Exact { holds: prod });
                if prod {
                    let target = ring.member(a)?;
                    report.target = Some(Stage::Exact { holds: target });
                    report.conclusion = if target {
                        Conclusion::Pass
                    } else {
                        Conclusion::FailRefuted
                    };
                }
            }
        }
        Setting::Cone(cone) => {
            let unit = is_order_unit(u, cone, caps)?;
            let error = match &unit {
                OrderUnitVerdict::Yes { .. } => None,
                OrderUnitVerdict::No { .. } => Some(format!("u = {u} is not an order unit")),
                OrderUnitVerdict::Unknown { .. } => Some(format!(
                    "u = {u} could not be confirmed as an order unit within the caps"
                )),
            };
            report.order_unit = Some(Stage::OrderUnit { verdict: unit });
            if error.is_some() {
                report.error = error;
            } else {
                let prod = certify_membership(&ua, cone, caps)?;
                let prod_ok = prod.is_member();
                report.product = Some(Stage::Membership { verdict: prod });
                if prod_ok {
                    let target = certify_membership(a, cone, caps)?;
                    report.conclusion = match &target {
                        MembershipVerdict::Member { .. } => Conclusion::Pass,
                        MembershipVerdict::Refuted { .. } => Conclusion::FailRefuted,
                        MembershipVerdict::NotFoundUpTo { .. } => Conclusion::Inconclusive,
                    };
                    report.target = Some(Stage::Membership { verdict: target });
                }
            }
        }
    }
    report.wall_time_ms = start.elapsed().as_millis();
    Ok(report)
}
