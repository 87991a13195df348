//! Recognizing affine images of products of simplices.
//!
//! A polytope is such a product iff its facets split into classes, each
//! carrying strictly positive coefficients with `Σ a_j β_j ≡ 1`, whose
//! linear parts span independent subspaces of total dimension `n`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::combinations;
use crate::error::Result;
use crate::linalg::{rank_of, Matrix};
use crate::lp::{lp_solve, LpOutcome, LpProblem, VarSign};
use crate::par;
use crate::polytope::{LinearForm, Point, Polytope};
use crate::rational::{serde_rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexProductWitness {
    pub classes: Vec<Vec<usize>>,
    #[serde(with = "serde_rat::vec2")]
    pub coeffs: Vec<Vec<Rational>>,
}

impl SimplexProductWitness {
    /// Dimension of the span of each class's linear parts.
    pub fn class_dims(&self, k: &Polytope) -> Vec<usize> {
        self.classes
            .iter()
            .map(|c| rank_of(&linear_parts(k, c), k.dim()))
            .collect()
    }

    /// Each class combination is the constant 1 with positive coefficients,
    /// the classes partition the facets, and the spans are independent of
    /// total dimension `n`.
    pub fn recheck(&self, k: &Polytope) -> bool {
        let n = k.dim();
        let mut all: Vec<usize> = self.classes.concat();
        all.sort_unstable();
        let partition = all == (0..k.num_facets()).collect::<Vec<_>>();
        let one = LinearForm::new(Rational::one(), vec![Rational::zero(); n]);
        let sums_ok = self.classes.len() == self.coeffs.len()
            && self.classes.iter().zip(&self.coeffs).all(|(c, a)| {
                a.len() == c.len()
                    && a.iter().all(Signed::is_positive)
                    && c.iter().zip(a).fold(LinearForm::zero(n), |acc, (&i, v)| {
                        acc.add(&k.facet(i).scale(v))
                    }) == one
            });
        let dims = self.class_dims(k);
        let spans_ok = dims
            .iter()
            .zip(&self.classes)
            .all(|(d, c)| *d + 1 == c.len())
            && dims.iter().sum::<usize>() == n
            && rank_of(&linear_parts(k, &all), n) == n;
        partition && sums_ok && spans_ok
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NotProductReason {
    /// The facet count `m` violates `n + 1 ≤ m ≤ 2n`.
    FacetCount,
    /// No partition of the facets into classes with a positive constant
    /// combination.
    NoPositiveClassCover,
    /// Such partitions exist but their spans are not independent.
    SpanFailure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum StructureVerdict {
    Product {
        witness: SimplexProductWitness,
    },
    NotProduct {
        reason: NotProductReason,
        detail: String,
    },
}

impl StructureVerdict {
    pub fn witness(&self) -> Option<&SimplexProductWitness> {
        match self {
            StructureVerdict::Product { witness } => Some(witness),
            _ => None,
        }
    }
}

fn linear_parts(k: &Polytope, class: &[usize]) -> Vec<Vec<Rational>> {
    class.iter().map(|&i| k.facet(i).coeffs.clone()).collect()
}

/// Strictly positive `a` with `Σ a_j β_j ≡ 1` maximizing `min a_j`.
fn positive_unit_combination(k: &Polytope, class: &[usize]) -> Result<Option<Vec<Rational>>> {
    let n = k.dim();
    let rows: Vec<Vec<Rational>> = class.iter().map(|&i| k.facet(i).as_row()).collect();
    let s = class.len();
    // columns: t (free) with Σ β_j, then d_j ≥ 0 with β_j
    let mut a = vec![vec![Rational::zero(); s + 1]; n + 1];
    for r in 0..=n {
        a[r][0] = rows.iter().map(|c| &c[r]).sum();
        for j in 0..s {
            a[r][j + 1] = rows[j][r].clone();
        }
    }
    let mut b = vec![Rational::zero(); n + 1];
    b[0] = Rational::one();
    let mut signs = vec![VarSign::Free];
    signs.extend(vec![VarSign::NonNegative; s]);
    let mut obj = vec![Rational::zero(); s + 1];
    obj[0] = -Rational::one();
    let p = LpProblem::feasibility(Matrix::from_rows(a, s + 1)?, b, signs).with_objective(obj);
    Ok(match lp_solve(&p)? {
        LpOutcome::Feasible(x) if x[0].is_positive() => {
            Some(x[1..].iter().map(|d| d + &x[0]).collect())
        }
        _ => None,
    })
}

struct Class {
    members: Vec<usize>,
    coeffs: Vec<Rational>,
    rank: usize,
}

pub fn recognize_simplex_product(k: &Polytope) -> Result<StructureVerdict> {
    recognize_simplex_product_with(k, par::default_parallel())
}

pub fn recognize_simplex_product_with(k: &Polytope, parallel: bool) -> Result<StructureVerdict> {
    let (n, m) = (k.dim(), k.num_facets());
    if m < n + 1 || m > 2 * n {
        return Ok(StructureVerdict::NotProduct {
            reason: NotProductReason::FacetCount,
            detail: format!(
                "{m} facets in dimension {n}; a product needs between {} and {}",
                n + 1,
                2 * n
            ),
        });
    }
    let candidates: Vec<Vec<usize>> = (2..=(n + 1).min(m))
        .flat_map(|size| combinations(m, size))
        .collect();
    let solved = par::map(&candidates, parallel, |c| positive_unit_combination(k, c));
    let mut classes = Vec::new();
    for (c, a) in candidates.into_iter().zip(solved) {
        if let Some(coeffs) = a? {
            let rank = rank_of(&linear_parts(k, &c), n);
            classes.push(Class {
                members: c,
                coeffs,
                rank,
            });
        }
    }
    classes.sort_by(|a, b| a.members.cmp(&b.members));

    let mut any_cover = false;
    let mut chosen: Vec<usize> = Vec::new();
    let found = search(
        k,
        &classes,
        &mut vec![false; m],
        &mut chosen,
        &mut any_cover,
    );
    Ok(match found {
        Some(pick) => StructureVerdict::Product {
            witness: SimplexProductWitness {
                classes: pick.iter().map(|&i| classes[i].members.clone()).collect(),
                coeffs: pick.iter().map(|&i| classes[i].coeffs.clone()).collect(),
            },
        },
        None if any_cover => StructureVerdict::NotProduct {
            reason: NotProductReason::SpanFailure,
            detail: "every partition into positive unit classes has dependent spans".into(),
        },
        None => StructureVerdict::NotProduct {
            reason: NotProductReason::NoPositiveClassCover,
            detail: format!(
                "the facets admit no partition into classes with a positive constant combination ({} such classes)",
                classes.len()
            ),
        },
    })
}

/// Exact covers in canonical order: the class holding the lowest uncovered
/// facet is chosen first, classes in lexicographic order.
fn search(
    k: &Polytope,
    classes: &[Class],
    covered: &mut Vec<bool>,
    chosen: &mut Vec<usize>,
    any_cover: &mut bool,
) -> Option<Vec<usize>> {
    let Some(first) = covered.iter().position(|c| !c) else {
        *any_cover = true;
        let ok = chosen
            .iter()
            .all(|&i| classes[i].rank + 1 == classes[i].members.len())
            && chosen.iter().map(|&i| classes[i].rank).sum::<usize>() == k.dim()
            && rank_of(
                &linear_parts(k, &(0..k.num_facets()).collect::<Vec<_>>()),
                k.dim(),
            ) == k.dim();
        return ok.then(|| chosen.clone());
    };
    for (ci, c) in classes.iter().enumerate() {
        if c.members[0] != first || c.members.iter().any(|&i| covered[i]) {
            continue;
        }
        for &i in &c.members {
            covered[i] = true;
        }
        chosen.push(ci);
        let r = search(k, classes, covered, chosen, any_cover);
        chosen.pop();
        for &i in &c.members {
            covered[i] = false;
        }
        if r.is_some() {
            return r;
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OffendingVertex {
    pub index: usize,
    #[serde(with = "serde_rat::vec")]
    pub point: Point,
    pub facets: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleCheck {
    pub simple: bool,
    pub offending: Vec<OffendingVertex>,
}

/// Every vertex lies on exactly `n` facets.
pub fn simple_vertex_check(k: &Polytope) -> SimpleCheck {
    let offending: Vec<OffendingVertex> = (0..k.vertices().len())
        .filter_map(|v| {
            let count = k.facets_at_vertex(v).len();
            (count != k.dim()).then(|| OffendingVertex {
                index: v,
                point: k.vertices()[v].clone(),
                facets: count,
            })
        })
        .collect();
    SimpleCheck {
        simple: offending.is_empty(),
        offending,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cube, hexagon, prism, pyramid, square, trapezoid, triangle};
    use crate::rational::int;

    #[test]
    fn square_and_triangle() {
        let w = recognize_simplex_product(&square()).unwrap();
        let witness = w.witness().unwrap();
        assert_eq!(witness.classes, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(witness.coeffs, vec![vec![int(1), int(1)]; 2]);
        assert_eq!(
            serde_json::to_string(witness).unwrap(),
            r#"{"classes":[[0,2],[1,3]],"coeffs":[["1","1"],["1","1"]]}"#
        );
        let t = recognize_simplex_product(&triangle()).unwrap();
        assert_eq!(t.witness().unwrap().classes, vec![vec![0, 1, 2]]);
        assert_eq!(t.witness().unwrap().coeffs, vec![vec![int(1); 3]]);
    }

    #[test]
    fn products_in_three_dimensions() {
        for k in [cube(), prism()] {
            let v = recognize_simplex_product(&k).unwrap();
            let w = v.witness().expect("product");
            assert!(w.recheck(&k));
            let count: usize = w.classes.iter().map(Vec::len).product();
            assert_eq!(count, k.vertices().len());
        }
    }

    #[test]
    fn non_products() {
        let reason = |k: &Polytope| match recognize_simplex_product(k).unwrap() {
            StructureVerdict::NotProduct { reason, .. } => reason,
            other => panic!("{other:?}"),
        };
        assert_eq!(reason(&trapezoid()), NotProductReason::NoPositiveClassCover);
        assert_eq!(reason(&hexagon()), NotProductReason::FacetCount);
        assert_eq!(reason(&pyramid()), NotProductReason::NoPositiveClassCover);
    }

    #[test]
    fn parallel_agrees() {
        for k in [square(), trapezoid(), cube(), prism(), pyramid()] {
            assert_eq!(
                recognize_simplex_product_with(&k, true).unwrap(),
                recognize_simplex_product_with(&k, false).unwrap()
            );
        }
    }

    #[test]
    fn simple_vertices() {
        assert!(simple_vertex_check(&cube()).simple);
        let p = simple_vertex_check(&pyramid());
        assert!(!p.simple);
        assert_eq!(p.offending.len(), 1);
        assert_eq!(p.offending[0].point, vec![int(0), int(0), int(1)]);
        assert_eq!(p.offending[0].facets, 4);
        for k in [square(), triangle(), trapezoid(), hexagon()] {
            assert!(simple_vertex_check(&k).simple);
        }
    }
}
