//! Order-unit decision: a lower bound `f ≥ c > 0` certified in the cone, or
//! an admissible point where `f ≤ 0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lp::{lp_solve, LpOutcome, LpProblem, VarSign};
use crate::poly::SparsePoly;
use crate::polytope::Point;
use crate::rational::{serde_rat, Rational};

use super::points::find_admissible;
use super::search::{certificate_from, coefficient_system};
use super::{Caps, Certificate, GeneratedCone, ProductTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OrderUnitVerdict {
    /// `f − c` has the certificate, so `f ≥ c·1`.
    Yes {
        #[serde(with = "serde_rat")]
        c: Rational,
        certificate: Certificate,
        degree: u32,
    },
    /// An admissible point where `f ≤ 0`.
    No {
        #[serde(with = "serde_rat::vec")]
        witness: Point,
        #[serde(with = "serde_rat")]
        value: Rational,
    },
    Unknown {
        max_degree: u32,
        grid_denominator_cap: u64,
    },
}

impl OrderUnitVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, OrderUnitVerdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, OrderUnitVerdict::No { .. })
    }
}

/// Maximizes the empty-product coefficient at each degree; the first
/// positive optimum gives `Yes`.
pub fn is_order_unit(
    f: &SparsePoly,
    cone: &GeneratedCone,
    caps: &Caps,
) -> Result<OrderUnitVerdict> {
    cone.check_poly(f)?;
    let nonpositive = |grid: bool| {
        find_admissible(
            cone,
            caps,
            grid,
            |p| f.evaluate(p).ok(),
            |v| !v.is_positive(),
        )
        .map(|(witness, value)| OrderUnitVerdict::No { witness, value })
    };
    if let Some(v) = nonpositive(false) {
        return Ok(v);
    }
    let mut table = ProductTable::new(cone);
    for d in 0..=caps.max_degree {
        table.extend_to(d, caps.parallel);
        let columns = table.up_to(d);
        let sys = coefficient_system(f, columns)?;
        let mut objective = vec![Rational::zero(); columns.len()];
        objective[0] = -Rational::one();
        let problem =
            LpProblem::feasibility(sys.a, sys.b, vec![VarSign::NonNegative; columns.len()])
                .with_objective(objective);
        let x = match lp_solve(&problem)? {
            LpOutcome::Feasible(x) => x,
            LpOutcome::Infeasible(_) => continue,
            LpOutcome::Unbounded { point, ray } => {
                // -1 lies in the cone; move along the ray until c ≥ 1.
                let t = ((Rational::one() - &point[0]) / &ray[0])
                    .ceil()
                    .max(Rational::from_integer(BigInt::zero()));
                point.iter().zip(&ray).map(|(p, r)| p + r * &t).collect()
            }
        };
        if x[0].is_positive() {
            let mut rest = x.clone();
            rest[0] = Rational::zero();
            return Ok(OrderUnitVerdict::Yes {
                c: x[0].clone(),
                certificate: certificate_from(columns, &rest),
                degree: d,
            });
        }
    }
    if let Some(v) = nonpositive(true) {
        return Ok(v);
    }
    Ok(OrderUnitVerdict::Unknown {
        max_degree: caps.max_degree,
        grid_denominator_cap: caps.grid_denominator_cap,
    })
}
