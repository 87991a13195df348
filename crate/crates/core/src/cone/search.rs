//! Degree-escalating certificate search by exact coefficient-matching LPs.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::Matrix;
use crate::lp::{lp_solve, LpOutcome, LpProblem, VarSign};
use crate::poly::{Exponents, SparsePoly};
use crate::rational::{serde_rat, Rational};

use super::points::find_admissible;
use super::refute::{attached_pairs, Refutation};
use super::{enumerate_products, Caps, Certificate, GeneratedCone, Product, ProductTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialWeight {
    pub monomial: Exponents,
    #[serde(with = "serde_rat")]
    pub value: Rational,
}

/// A linear functional on polynomial coefficients that is nonnegative on
/// every generator product of degree at most `degree` and negative on the
/// target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRefutation {
    pub degree: u32,
    pub functional: Vec<MonomialWeight>,
}

impl DegreeRefutation {
    pub fn apply(&self, p: &SparsePoly) -> Rational {
        self.functional
            .iter()
            .map(|w| p.coeff(&w.monomial) * &w.value)
            .sum()
    }

    pub fn recheck(&self, f: &SparsePoly, cone: &GeneratedCone) -> bool {
        self.apply(f).is_negative()
            && enumerate_products(cone, self.degree)
                .iter()
                .all(|p| !self.apply(&p.poly).is_negative())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MembershipVerdict {
    Member {
        certificate: Certificate,
        degree: u32,
    },
    NotFoundUpTo {
        degree: u32,
        refutations: Vec<DegreeRefutation>,
    },
    Refuted {
        refutation: Refutation,
    },
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipVerdict::Member { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, MembershipVerdict::Refuted { .. })
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            MembershipVerdict::Member { certificate, .. } => Some(certificate),
            _ => None,
        }
    }
}

/// Coefficient-matching system `Σ c_j · columns[j] = f`.
pub(crate) struct CoefficientSystem {
    pub a: Matrix,
    pub b: Vec<Rational>,
    pub monomials: Vec<Exponents>,
}

pub(crate) fn coefficient_system(f: &SparsePoly, columns: &[Product]) -> Result<CoefficientSystem> {
    let mut index: BTreeMap<Exponents, usize> = BTreeMap::new();
    for (e, _) in f.terms() {
        index.insert(e.clone(), 0);
    }
    for c in columns {
        for (e, _) in c.poly.terms() {
            index.insert(e.clone(), 0);
        }
    }
    let monomials: Vec<Exponents> = index.keys().cloned().collect();
    for (i, e) in monomials.iter().enumerate() {
        index.insert(e.clone(), i);
    }
    let mut rows = vec![vec![Rational::zero(); columns.len()]; monomials.len()];
    for (j, c) in columns.iter().enumerate() {
        for (e, v) in c.poly.terms() {
            rows[index[e]][j] = v.clone();
        }
    }
    let b = monomials.iter().map(|e| f.coeff(e)).collect();
    Ok(CoefficientSystem {
        a: Matrix::from_rows(rows, columns.len())?,
        b,
        monomials,
    })
}

pub(crate) fn certificate_from(columns: &[Product], x: &[Rational]) -> Certificate {
    Certificate::from_terms(
        columns
            .iter()
            .zip(x)
            .map(|(p, c)| (p.exps.clone(), c.clone())),
    )
}

/// Searches for a certificate of `f` at degrees `0..=caps.max_degree`.
///
/// With `caps.refute` set, a negative value at an admissible point or zero
/// propagation over an attached pair ends the search with `Refuted`.
pub fn certify_membership(
    f: &SparsePoly,
    cone: &GeneratedCone,
    caps: &Caps,
) -> Result<MembershipVerdict> {
    cone.check_poly(f)?;
    if f.is_zero() {
        return Ok(MembershipVerdict::Member {
            certificate: Certificate::empty(),
            degree: 0,
        });
    }
    let negative = |grid: bool| {
        find_admissible(
            cone,
            caps,
            grid,
            |p| f.evaluate(p).ok(),
            |v| v.is_negative(),
        )
        .map(|(point, value)| MembershipVerdict::Refuted {
            refutation: Refutation::NegativeValue { point, value },
        })
    };
    if caps.refute {
        if let Some(v) = negative(false) {
            return Ok(v);
        }
        if let Some(refutation) = attached_pairs(f, cone)? {
            return Ok(MembershipVerdict::Refuted { refutation });
        }
    }
    let mut table = ProductTable::new(cone);
    let mut refutations = Vec::new();
    for d in 0..=caps.max_degree {
        table.extend_to(d, caps.parallel);
        let columns = table.up_to(d);
        let sys = coefficient_system(f, columns)?;
        let problem =
            LpProblem::feasibility(sys.a, sys.b, vec![VarSign::NonNegative; columns.len()]);
        match lp_solve(&problem)? {
            LpOutcome::Feasible(x) => {
                return Ok(MembershipVerdict::Member {
                    certificate: certificate_from(columns, &x),
                    degree: d,
                })
            }
            LpOutcome::Infeasible(y) => refutations.push(DegreeRefutation {
                degree: d,
                functional: sys
                    .monomials
                    .into_iter()
                    .zip(y)
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(monomial, value)| MonomialWeight { monomial, value })
                    .collect(),
            }),
            LpOutcome::Unbounded { .. } => unreachable!("feasibility problem has no objective"),
        }
    }
    if caps.refute {
        if let Some(v) = negative(true) {
            return Ok(v);
        }
    }
    Ok(MembershipVerdict::NotFoundUpTo {
        degree: caps.max_degree,
        refutations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::verify_certificate;
    use crate::fixtures::{disk_alpha, disk_beta, disk_cone, interval_cone};
    use crate::rational::{int, rat};

    fn xy(s: &str) -> SparsePoly {
        SparsePoly::parse(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn disk_identity_certificate() {
        let cone = disk_cone();
        let f = &(&disk_alpha() + &xy("x^2")) + &xy("6/5 x");
        let v = certify_membership(&f, &cone, &Caps::default()).unwrap();
        let MembershipVerdict::Member {
            certificate,
            degree,
        } = v
        else {
            panic!("expected member, got {v:?}")
        };
        assert_eq!(degree, 2);
        assert!(verify_certificate(&f, &certificate, &cone));
        assert!(verify_certificate(
            &xy("7/25 - 6/5 y - y^2"),
            &certificate,
            &cone
        ));
        let expected = Certificate::from_terms([
            (vec![0, 0, 1], int(1)),
            (vec![2, 0, 0], int(1)),
            (vec![1, 0, 0], rat(6, 5)),
        ]);
        assert_eq!(certificate, expected);
    }

    #[test]
    fn interval_quadratic() {
        let cone = interval_cone();
        let f = SparsePoly::parse("x^2 - x + 1", &["x"]).unwrap();
        let v = certify_membership(&f, &cone, &Caps::default()).unwrap();
        let MembershipVerdict::Member {
            certificate,
            degree,
        } = v
        else {
            panic!()
        };
        assert_eq!(degree, 2);
        assert!(verify_certificate(&f, &certificate, &cone));
    }

    #[test]
    fn minus_one_is_refuted() {
        for cone in [interval_cone(), disk_cone()] {
            let f = SparsePoly::constant(cone.nvars(), int(-1));
            let v = certify_membership(&f, &cone, &Caps::default()).unwrap();
            let MembershipVerdict::Refuted { refutation } = v else {
                panic!()
            };
            assert!(refutation.recheck(&f, &cone));
        }
    }

    #[test]
    fn beta_refuted_by_zero_propagation() {
        let cone = disk_cone();
        let v = certify_membership(&disk_beta(), &cone, &Caps::default()).unwrap();
        let MembershipVerdict::Refuted { refutation } = v else {
            panic!()
        };
        assert!(matches!(refutation, Refutation::ZeroPropagation { .. }));
        assert!(refutation.recheck(&disk_beta(), &cone));
    }

    #[test]
    fn farkas_functionals_without_refutation_rules() {
        let cone = disk_cone();
        let caps = Caps::default().with_degree(3).without_refutation();
        let v = certify_membership(&disk_beta(), &cone, &caps).unwrap();
        let MembershipVerdict::NotFoundUpTo {
            degree,
            refutations,
        } = v
        else {
            panic!("{v:?}")
        };
        assert_eq!(degree, 3);
        assert_eq!(refutations.len(), 4);
        for r in &refutations {
            assert!(r.recheck(&disk_beta(), &cone));
        }
    }

    #[test]
    fn member_is_monotone_in_cap() {
        let cone = interval_cone();
        let f = SparsePoly::parse("x - x^2", &["x"]).unwrap();
        for cap in 2..5 {
            let v = certify_membership(&f, &cone, &Caps::default().with_degree(cap)).unwrap();
            assert!(matches!(v, MembershipVerdict::Member { degree: 2, .. }));
        }
        let low = certify_membership(
            &f,
            &cone,
            &Caps::default().with_degree(1).without_refutation(),
        )
        .unwrap();
        assert!(matches!(low, MembershipVerdict::NotFoundUpTo { .. }));
    }

    #[test]
    fn zero_is_member_and_dimension_checked() {
        let cone = interval_cone();
        let v = certify_membership(&SparsePoly::zero(1), &cone, &Caps::default()).unwrap();
        assert_eq!(
            v,
            MembershipVerdict::Member {
                certificate: Certificate::empty(),
                degree: 0
            }
        );
        assert!(certify_membership(&SparsePoly::zero(2), &cone, &Caps::default()).is_err());
    }
}
