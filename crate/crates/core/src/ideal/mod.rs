//! Order ideals presented by certified positive generators.

mod linear;
mod positivity;
mod zero;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cone::{
    certify_membership, verify_certificate, Caps, Certificate, GeneratedCone, MembershipVerdict,
    Refutation,
};
use crate::error::{Error, Result};
use crate::par;
use crate::poly::SparsePoly;
use crate::rational::Rational;

pub use linear::{
    dominate_linear, face_ideal_generators, facet_decompose, Domination, FaceIdeal,
    FacetDecomposition,
};
pub use positivity::{lemma2_positivity, PositivityOutcome, PositivityStage, PositivityTrace};
pub use zero::{zero_faces, ZeroFaces};

/// The order ideal `⟨T⟩` of a finite set of cone elements.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderIdealGen {
    generators: Vec<SparsePoly>,
    certificates: Vec<Certificate>,
    cone: GeneratedCone,
}

impl OrderIdealGen {
    /// Certifies each generator in the cone; fails on the first one that
    /// cannot be certified within the caps.
    pub fn new(generators: Vec<SparsePoly>, cone: &GeneratedCone, caps: &Caps) -> Result<Self> {
        let verdicts = par::map(&generators, caps.parallel, |t| {
            certify_membership(t, cone, caps)
        });
        let mut certificates = Vec::with_capacity(generators.len());
        for (i, v) in verdicts.into_iter().enumerate() {
            match v? {
                MembershipVerdict::Member { certificate, .. } => certificates.push(certificate),
                other => {
                    return Err(Error::Invalid(format!(
                        "generator {i} ({}) is not certified positive: {}",
                        generators[i],
                        verdict_word(&other)
                    )))
                }
            }
        }
        Ok(Self {
            generators,
            certificates,
            cone: cone.clone(),
        })
    }

    /// Uses supplied certificates, which must verify.
    pub fn with_certificates(
        generators: Vec<SparsePoly>,
        certificates: Vec<Certificate>,
        cone: &GeneratedCone,
    ) -> Result<Self> {
        if generators.len() != certificates.len() {
            return Err(Error::Dimension("one certificate per generator".into()));
        }
        for (i, (t, c)) in generators.iter().zip(&certificates).enumerate() {
            if !verify_certificate(t, c, cone) {
                return Err(Error::Invalid(format!("certificate {i} does not verify")));
            }
        }
        Ok(Self {
            generators,
            certificates,
            cone: cone.clone(),
        })
    }

    pub fn generators(&self) -> &[SparsePoly] {
        &self.generators
    }

    pub fn certificates(&self) -> &[Certificate] {
        &self.certificates
    }

    pub fn cone(&self) -> &GeneratedCone {
        &self.cone
    }

    /// `Σ T`.
    pub fn relative_order_unit(&self) -> SparsePoly {
        self.generators
            .iter()
            .fold(SparsePoly::zero(self.cone.nvars()), |acc, t| &acc + t)
    }
}

fn verdict_word(v: &MembershipVerdict) -> &'static str {
    match v {
        MembershipVerdict::Member { .. } => "member",
        MembershipVerdict::NotFoundUpTo { .. } => "no certificate within the degree cap",
        MembershipVerdict::Refuted { .. } => "refuted",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `M·Σt − r`
    Upper,
    /// `M·Σt + r`
    Lower,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideRefutation {
    pub m: u64,
    pub side: Side,
    pub refutation: Refutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IdealVerdict {
    /// `−M·Σt ≤ r ≤ M·Σt`, witnessed by certificates for `M·Σt − r`
    /// (`upper`) and `M·Σt + r` (`lower`).
    Member {
        m: u64,
        upper: Certificate,
        lower: Certificate,
    },
    /// No `M` in the escalation worked; refuted sides are listed.
    NotFoundUpTo {
        max_m: u64,
        max_degree: u32,
        refuted: Vec<SideRefutation>,
    },
}

impl IdealVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, IdealVerdict::Member { .. })
    }
}

/// `M = 1, 2, 4, ...` up to the cap.
pub fn m_sequence(cap: u64) -> Vec<u64> {
    std::iter::successors(Some(1u64), |m| m.checked_mul(2))
        .take_while(|&m| m <= cap.max(1))
        .collect()
}

enum Probe {
    Found(Certificate, Certificate),
    Failed(Vec<SideRefutation>),
}

/// Semi-decides `r ∈ ⟨T⟩`; the lowest successful `M` is reported.
pub fn in_order_ideal(r: &SparsePoly, ideal: &OrderIdealGen, caps: &Caps) -> Result<IdealVerdict> {
    ideal.cone.check_poly(r)?;
    let s = ideal.relative_order_unit();
    let ms = m_sequence(caps.max_m);
    let probes = par::map(&ms, caps.parallel, |&m| -> Result<Probe> {
        let ms = s.scale(&Rational::from_integer(BigInt::from(m)));
        let mut refuted = Vec::new();
        let upper = certify_membership(&(&ms - r), &ideal.cone, caps)?;
        if let MembershipVerdict::Refuted { refutation } = &upper {
            refuted.push(SideRefutation {
                m,
                side: Side::Upper,
                refutation: refutation.clone(),
            });
        }
        let lower = certify_membership(&(&ms + r), &ideal.cone, caps)?;
        if let MembershipVerdict::Refuted { refutation } = &lower {
            refuted.push(SideRefutation {
                m,
                side: Side::Lower,
                refutation: refutation.clone(),
            });
        }
        Ok(match (upper, lower) {
            (
                MembershipVerdict::Member { certificate: u, .. },
                MembershipVerdict::Member { certificate: l, .. },
            ) => Probe::Found(u, l),
            _ => Probe::Failed(refuted),
        })
    });
    let mut refuted = Vec::new();
    for (m, p) in ms.iter().zip(probes) {
        match p? {
            Probe::Found(upper, lower) => {
                return Ok(IdealVerdict::Member {
                    m: *m,
                    upper,
                    lower,
                })
            }
            Probe::Failed(r) => refuted.extend(r),
        }
    }
    Ok(IdealVerdict::NotFoundUpTo {
        max_m: ms.last().copied().unwrap_or(1),
        max_degree: caps.max_degree,
        refuted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::interval_cone;

    fn x(s: &str) -> SparsePoly {
        SparsePoly::parse(s, &["x"]).unwrap()
    }

    #[test]
    fn x_squared_in_ideal_of_x() {
        let cone = interval_cone();
        let caps = Caps::default();
        let ideal = OrderIdealGen::new(vec![x("x")], &cone, &caps).unwrap();
        let v = in_order_ideal(&x("x^2"), &ideal, &caps).unwrap();
        let IdealVerdict::Member { m, upper, lower } = v else {
            panic!()
        };
        assert_eq!(m, 1);
        assert!(verify_certificate(&x("x - x^2"), &upper, &cone));
        assert!(verify_certificate(&x("x + x^2"), &lower, &cone));
    }

    #[test]
    fn x_not_in_ideal_of_x_squared() {
        let cone = interval_cone();
        // The negative value of M·x² − x sits at x = 1/(2M).
        let caps = Caps {
            grid_denominator_cap: 128,
            ..Caps::default().with_degree(4)
        };
        let ideal = OrderIdealGen::new(vec![x("x^2")], &cone, &caps).unwrap();
        let v = in_order_ideal(&x("x"), &ideal, &caps).unwrap();
        let IdealVerdict::NotFoundUpTo { max_m, refuted, .. } = v else {
            panic!()
        };
        assert_eq!(max_m, 64);
        let uppers: Vec<u64> = refuted
            .iter()
            .filter(|r| r.side == Side::Upper)
            .map(|r| r.m)
            .collect();
        assert_eq!(uppers, m_sequence(64));
        for r in &refuted {
            let m = Rational::from_integer(BigInt::from(r.m));
            let f = &x("x^2").scale(&m) - &x("x");
            assert!(r.refutation.recheck(&f, &cone));
        }
    }

    #[test]
    fn zero_is_in_every_ideal() {
        let cone = interval_cone();
        let caps = Caps::default();
        let ideal = OrderIdealGen::new(vec![x("1 - x")], &cone, &caps).unwrap();
        let v = in_order_ideal(&SparsePoly::zero(1), &ideal, &caps).unwrap();
        assert!(matches!(v, IdealVerdict::Member { m: 1, .. }));
    }

    #[test]
    fn uncertified_generator_rejected() {
        let cone = interval_cone();
        assert!(OrderIdealGen::new(vec![x("x - 1/2")], &cone, &Caps::default()).is_err());
    }
}
