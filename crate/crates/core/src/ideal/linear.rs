//! Face ideals and linear-form domination on a polytope.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::lp::{lp_solve, LpOutcome, LpProblem, VarSign};
use crate::polytope::{facets_containing, Face, LinearForm, Polytope};
use crate::rational::{serde_rat, Rational};

/// Generators `{β_i : G ⊆ F_i}` of the face ideal and their sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceIdeal {
    pub facets: Vec<usize>,
    pub generators: Vec<LinearForm>,
    pub order_unit: LinearForm,
}

pub fn face_ideal_generators(k: &Polytope, g: &Face) -> Result<FaceIdeal> {
    if g.is_whole(k) {
        return Err(Error::Invalid(
            "the face is the whole polytope, not a proper face".into(),
        ));
    }
    let facets = facets_containing(k, g);
    let generators: Vec<LinearForm> = facets.iter().map(|&i| k.facet(i).clone()).collect();
    let order_unit = generators
        .iter()
        .fold(LinearForm::zero(k.dim()), |acc, f| acc.add(f));
    for (v, p) in k.vertices().iter().enumerate() {
        let on_face = g.vertices.contains(&v);
        if order_unit.eval(p).is_zero() != on_face {
            return Err(Error::Invalid(format!(
                "sum of containing facet forms misbehaves at vertex {v}"
            )));
        }
    }
    Ok(FaceIdeal {
        facets,
        generators,
        order_unit,
    })
}

fn check_dim(k: &Polytope, f: &LinearForm, name: &str) -> Result<()> {
    if f.dim() != k.dim() {
        return Err(Error::Dimension(format!(
            "{name} has {} coefficients, polytope dimension is {}",
            f.dim(),
            k.dim()
        )));
    }
    Ok(())
}

/// Columns `[1, β_1, ..., β_m]` as rows of `n + 1` coefficients.
fn generator_columns(k: &Polytope) -> Vec<Vec<Rational>> {
    let mut one = vec![Rational::zero(); k.dim() + 1];
    one[0] = Rational::one();
    std::iter::once(one)
        .chain(k.facets().iter().map(LinearForm::as_row))
        .collect()
}

fn columns_matrix(cols: &[Vec<Rational>]) -> Result<Matrix> {
    let rows = cols[0].len();
    Matrix::from_rows(
        (0..rows)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect(),
        cols.len(),
    )
}

/// Nonnegative `λ` with `form = λ_0 + Σ λ_i β_i`, if any.
pub(crate) fn linear_certificate(k: &Polytope, form: &LinearForm) -> Result<LpOutcome> {
    let cols = generator_columns(k);
    let problem = LpProblem::feasibility(
        columns_matrix(&cols)?,
        form.as_row(),
        vec![VarSign::NonNegative; cols.len()],
    );
    lp_solve(&problem)
}

/// `Mβ − γ = constant + Σ facet_coeffs_i · β_i` with every coefficient
/// nonnegative, for the least positive integer `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Domination {
    pub m: u64,
    #[serde(with = "serde_rat")]
    pub constant: Rational,
    #[serde(with = "serde_rat::vec")]
    pub facet_coeffs: Vec<Rational>,
    /// Farkas multipliers proving `M − 1` fails (absent when `M = 1`).
    #[serde(with = "opt_vec")]
    pub farkas_below: Option<Vec<Rational>>,
}

mod opt_vec {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => crate::rational::serde_rat::vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }
}

impl Domination {
    /// Exact recheck of the combination and of the Farkas multipliers.
    pub fn recheck(&self, k: &Polytope, beta: &LinearForm, gamma: &LinearForm) -> bool {
        let m = Rational::from_integer(BigInt::from(self.m));
        let lhs = beta.scale(&m).add(&gamma.neg());
        let rhs = k.facets().iter().zip(&self.facet_coeffs).fold(
            LinearForm::new(self.constant.clone(), vec![Rational::zero(); k.dim()]),
            |acc, (f, c)| acc.add(&f.scale(c)),
        );
        let combo_ok = lhs == rhs
            && !self.constant.is_negative()
            && self.facet_coeffs.iter().all(|c| !c.is_negative());
        let below_ok = match (&self.farkas_below, self.m) {
            (None, 1) => true,
            (Some(y), m) if m > 1 => {
                let b = beta
                    .scale(&Rational::from_integer(BigInt::from(m - 1)))
                    .add(&gamma.neg())
                    .as_row();
                let cols = generator_columns(k);
                columns_matrix(&cols).is_ok_and(|a| {
                    LpProblem::feasibility(a, b, vec![VarSign::NonNegative; cols.len()])
                        .is_farkas_certificate(y)
                })
            }
            _ => false,
        };
        combo_ok && below_ok
    }
}

fn face_zero_set_matches(k: &Polytope, g: &Face, f: &LinearForm) -> bool {
    k.vertices()
        .iter()
        .enumerate()
        .all(|(v, p)| f.eval(p).is_zero() == g.vertices.contains(&v))
}

/// The least positive integer `M` with `Mβ − γ` a nonnegative combination of
/// `1` and the facet forms.
pub fn dominate_linear(
    k: &Polytope,
    g: &Face,
    beta: &LinearForm,
    gamma: &LinearForm,
) -> Result<Domination> {
    check_dim(k, beta, "beta")?;
    check_dim(k, gamma, "gamma")?;
    if !matches!(linear_certificate(k, beta)?, LpOutcome::Feasible(_)) {
        return Err(Error::Precondition(
            "beta is not a nonnegative combination of 1 and the facet forms".into(),
        ));
    }
    if !face_zero_set_matches(k, g, beta) {
        return Err(Error::Precondition(
            "the zero set of beta on K is not the given face".into(),
        ));
    }
    if !matches!(linear_certificate(k, gamma)?, LpOutcome::Feasible(_)) {
        return Err(Error::Precondition(
            "gamma is not a nonnegative combination of 1 and the facet forms".into(),
        ));
    }
    if g.vertices
        .iter()
        .any(|&v| !gamma.eval(&k.vertices()[v]).is_zero())
    {
        return Err(Error::Precondition(
            "gamma does not vanish on the face".into(),
        ));
    }

    // minimize M subject to M·β − λ_0 − Σ λ_i β_i = γ, M, λ ≥ 0
    let cols = generator_columns(k);
    let mut all = vec![beta.as_row()];
    all.extend(cols.iter().map(|c| c.iter().map(|v| -v).collect()));
    let mut objective = vec![Rational::zero(); all.len()];
    objective[0] = Rational::one();
    let problem = LpProblem::feasibility(
        columns_matrix(&all)?,
        gamma.as_row(),
        vec![VarSign::NonNegative; all.len()],
    )
    .with_objective(objective);
    let m_star = match lp_solve(&problem)? {
        LpOutcome::Feasible(x) => x[0].clone(),
        _ => return Err(Error::Invalid("no multiple of beta dominates gamma".into())),
    };
    let m_int = m_star.ceil().to_integer().max(BigInt::one());
    let m: u64 = m_int
        .try_into()
        .map_err(|_| Error::Invalid("dominating multiple does not fit in u64".into()))?;

    let at = |m: u64| -> Result<LpOutcome> {
        let target = beta
            .scale(&Rational::from_integer(BigInt::from(m)))
            .add(&gamma.neg());
        let problem = LpProblem::feasibility(
            columns_matrix(&cols)?,
            target.as_row(),
            vec![VarSign::NonNegative; cols.len()],
        );
        lp_solve(&problem)
    };
    let LpOutcome::Feasible(x) = at(m)? else {
        return Err(Error::Invalid(
            "dominating multiple failed to verify".into(),
        ));
    };
    let farkas_below = if m > 1 {
        match at(m - 1)? {
            LpOutcome::Infeasible(y) => Some(y),
            _ => {
                return Err(Error::Invalid(
                    "smaller multiple unexpectedly feasible".into(),
                ))
            }
        }
    } else {
        None
    };
    Ok(Domination {
        m,
        constant: x[0].clone(),
        facet_coeffs: x[1..].to_vec(),
        farkas_below,
    })
}

/// `β = Σ coeffs_j · β_{facets_j}` over the facets containing the face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetDecomposition {
    pub facets: Vec<usize>,
    #[serde(with = "serde_rat::vec")]
    pub coeffs: Vec<Rational>,
}

impl FacetDecomposition {
    pub fn recompose(&self, k: &Polytope) -> LinearForm {
        self.facets
            .iter()
            .zip(&self.coeffs)
            .fold(LinearForm::zero(k.dim()), |acc, (&i, c)| {
                acc.add(&k.facet(i).scale(c))
            })
    }
}

/// Strictly positive coefficients over the facets containing `g`.
///
/// Selection: maximize the smallest coefficient `t*`; among solutions with
/// every coefficient at least `t*`, minimize the sum, then minimize the
/// coefficients lexicographically.
pub fn facet_decompose(k: &Polytope, g: &Face, beta: &LinearForm) -> Result<FacetDecomposition> {
    check_dim(k, beta, "beta")?;
    let facets = facets_containing(k, g);
    if facets.is_empty() {
        return Err(Error::Invalid("no facet contains the face".into()));
    }
    let rows: Vec<Vec<Rational>> = facets.iter().map(|&i| k.facet(i).as_row()).collect();
    let s = facets.len();
    let no_solution = || {
        Error::Precondition(
            "beta has no strictly positive decomposition over the facets containing the face"
                .into(),
        )
    };

    // Stage 1: variables (t free, d_j ≥ 0), a_j = t + d_j.
    let sum_row: Vec<Rational> = (0..=k.dim())
        .map(|r| rows.iter().map(|c| &c[r]).sum())
        .collect();
    let mut cols = vec![sum_row.clone()];
    cols.extend(rows.iter().cloned());
    let mut signs = vec![VarSign::Free];
    signs.extend(vec![VarSign::NonNegative; s]);
    let mut objective = vec![Rational::zero(); s + 1];
    objective[0] = -Rational::one();
    let problem = LpProblem::feasibility(columns_matrix(&cols)?, beta.as_row(), signs)
        .with_objective(objective);
    let t_star = match lp_solve(&problem)? {
        LpOutcome::Feasible(x) => x[0].clone(),
        LpOutcome::Infeasible(_) => return Err(no_solution()),
        LpOutcome::Unbounded { .. } => {
            return Err(Error::Invalid(
                "positive facet combination vanishes identically".into(),
            ))
        }
    };
    if !t_star.is_positive() {
        return Err(no_solution());
    }

    // Stages 2 and 3 over d_j ≥ 0 with a_j = t* + d_j.
    let target: Vec<Rational> = beta
        .as_row()
        .iter()
        .zip(&sum_row)
        .map(|(b, c)| b - c * &t_star)
        .collect();
    let mut a_rows: Vec<Vec<Rational>> = (0..=k.dim())
        .map(|r| rows.iter().map(|c| c[r].clone()).collect())
        .collect();
    let mut b = target;
    let fix = |a_rows: &mut Vec<Vec<Rational>>,
               b: &mut Vec<Rational>,
               obj: Vec<Rational>|
     -> Result<()> {
        let p = LpProblem::feasibility(
            Matrix::from_rows(a_rows.clone(), s)?,
            b.clone(),
            vec![VarSign::NonNegative; s],
        )
        .with_objective(obj.clone());
        let LpOutcome::Feasible(x) = lp_solve(&p)? else {
            return Err(Error::Invalid(
                "decomposition stage lost feasibility".into(),
            ));
        };
        let value: Rational = obj.iter().zip(&x).map(|(c, v)| c * v).sum();
        a_rows.push(obj);
        b.push(value);
        Ok(())
    };
    fix(&mut a_rows, &mut b, vec![Rational::one(); s])?;
    for j in 0..s {
        let mut e = vec![Rational::zero(); s];
        e[j] = Rational::one();
        fix(&mut a_rows, &mut b, e)?;
    }
    let d: Vec<Rational> = b[b.len() - s..].to_vec();
    let coeffs: Vec<Rational> = d.iter().map(|v| v + &t_star).collect();
    let dec = FacetDecomposition { facets, coeffs };
    if dec.recompose(k) != *beta {
        return Err(Error::Invalid("decomposition failed to recompose".into()));
    }
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{pyramid, square, trapezoid, triangle};
    use crate::polytope::face_of;
    use crate::rational::{int, rat};

    fn lf(s: &str, n: usize) -> LinearForm {
        let vars = ["x", "y", "z"];
        LinearForm::parse(s, &vars[..n]).unwrap()
    }

    fn vertex_face(k: &Polytope, p: &[i64]) -> Face {
        let pt: Vec<Rational> = p.iter().map(|&v| int(v)).collect();
        k.vertex_face(k.vertex_index(&pt).unwrap())
    }

    #[test]
    fn face_ideals() {
        let sq = square();
        let fi = face_ideal_generators(&sq, &vertex_face(&sq, &[0, 0])).unwrap();
        assert_eq!(fi.generators, vec![lf("x", 2), lf("y", 2)]);
        assert_eq!(fi.order_unit, lf("x + y", 2));

        let py = pyramid();
        let fi = face_ideal_generators(&py, &vertex_face(&py, &[0, 0, 1])).unwrap();
        assert_eq!(fi.generators.len(), 4);
        assert_eq!(fi.order_unit, lf("4 - 4z", 3));

        let tr = triangle();
        let edge = face_of(&tr, &[tr.facet_index(&lf("x", 2)).unwrap()])
            .unwrap()
            .face
            .unwrap();
        let fi = face_ideal_generators(&tr, &edge).unwrap();
        assert_eq!(fi.order_unit, lf("x", 2));

        let whole = face_of(&tr, &[]).unwrap().face.unwrap();
        assert!(face_ideal_generators(&tr, &whole).is_err());
    }

    #[test]
    fn domination() {
        let tz = trapezoid();
        let g = vertex_face(&tz, &[0, 0]);
        let d = dominate_linear(&tz, &g, &lf("x + y", 2), &lf("x", 2)).unwrap();
        assert_eq!(d.m, 1);
        assert!(d.recheck(&tz, &lf("x + y", 2), &lf("x", 2)));

        let sq = square();
        let g = vertex_face(&sq, &[0, 0]);
        let (b, c) = (lf("x + y", 2), lf("3x + 2y", 2));
        let d = dominate_linear(&sq, &g, &b, &c).unwrap();
        assert_eq!(d.m, 3);
        assert!(d.farkas_below.is_some());
        assert!(d.recheck(&sq, &b, &c));

        let d = dominate_linear(&sq, &g, &b, &LinearForm::zero(2)).unwrap();
        assert_eq!(d.m, 1);
    }

    #[test]
    fn domination_preconditions() {
        let sq = square();
        let g = vertex_face(&sq, &[0, 0]);
        let err = dominate_linear(&sq, &g, &lf("x", 2), &lf("y", 2)).unwrap_err();
        assert!(matches!(err, Error::Precondition(m) if m.contains("zero set of beta")));
        let err = dominate_linear(&sq, &g, &lf("x + y", 2), &lf("1 - x", 2)).unwrap_err();
        assert!(matches!(err, Error::Precondition(m) if m.contains("vanish")));
        let err = dominate_linear(&sq, &g, &lf("x + y", 2), &lf("x - y", 2)).unwrap_err();
        assert!(matches!(err, Error::Precondition(m) if m.contains("gamma is not")));
    }

    #[test]
    fn decompositions() {
        let sq = square();
        let g = vertex_face(&sq, &[0, 0]);
        let d = facet_decompose(&sq, &g, &lf("x + y", 2)).unwrap();
        assert_eq!(d.coeffs, vec![int(1), int(1)]);
        let d = facet_decompose(&sq, &g, &lf("2x + 3y", 2)).unwrap();
        assert_eq!(d.coeffs, vec![int(2), int(3)]);

        let py = pyramid();
        let apex = vertex_face(&py, &[0, 0, 1]);
        let d = facet_decompose(&py, &apex, &lf("2 - 2z", 3)).unwrap();
        assert_eq!(d.coeffs, vec![rat(1, 2); 4]);
        assert_eq!(d.recompose(&py), lf("2 - 2z", 3));

        assert!(facet_decompose(&sq, &g, &lf("x", 2)).is_err());
    }
}
