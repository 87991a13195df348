//! Compact full-dimensional polytopes in dual representation.
//!
//! A [`Polytope`] keeps both its vertex list and its irredundant facet forms.
//! Facet forms are normalized to coprime integer coefficients, signed to be
//! nonnegative on the polytope, and listed in a canonical order.

mod face;
mod form;

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::combinations;
use crate::error::{Error, Result};
use crate::linalg::{linear_solve, nullspace, rank_of, Matrix, SolutionSet};
use crate::lp::{lp_solve, LpOutcome, LpProblem, VarSign};
use crate::rational::{format_rational, serde_rat, Rational};

pub use face::{face_of, facets_containing, Face, FaceQuery, Flat};
pub use form::LinearForm;

pub type Point = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<LinearForm>,
    /// `incidence[v][f]`: vertex `v` lies on facet `f`.
    incidence: Vec<Vec<bool>>,
}

impl Polytope {
    /// Convex hull of `points`, which must affinely span the ambient space.
    /// Non-extreme points are discarded.
    pub fn from_vertices(points: &[Point]) -> Result<Self> {
        let n = points
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::Invalid("no points given".into()))?;
        if n == 0 {
            return Err(Error::Invalid("points in zero dimensions".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(Error::Dimension(format!(
                "point of length {} among points of length {n}",
                p.len()
            )));
        }
        let pts: Vec<Point> = points
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();

        let lifted = |ids: &[usize]| {
            Matrix::from_rows(
                ids.iter()
                    .map(|&i| {
                        let mut r = pts[i].clone();
                        r.push(Rational::one());
                        r
                    })
                    .collect(),
                n + 1,
            )
            .expect("uniform length")
        };

        let all: Vec<usize> = (0..pts.len()).collect();
        if let Some(h) = nullspace(&lifted(&all)).into_iter().next() {
            let form = LinearForm::new(h[n].clone(), h[..n].to_vec());
            let form = form.normalized().unwrap_or(form);
            return Err(Error::NotFullDimensional {
                hyperplane: format!("{form} = 0"),
            });
        }

        let mut facets = BTreeSet::new();
        let mut found: Vec<LinearForm> = Vec::new();
        for subset in combinations(pts.len(), n) {
            let ns = nullspace(&lifted(&subset));
            if ns.len() != 1 {
                continue;
            }
            let h = &ns[0];
            let form = LinearForm::new(h[n].clone(), h[..n].to_vec());
            let (mut pos, mut neg) = (false, false);
            for p in &pts {
                let v = form.eval(p);
                pos |= v.is_positive();
                neg |= v.is_negative();
                if pos && neg {
                    break;
                }
            }
            if pos && neg {
                continue;
            }
            let oriented = if neg { form.neg() } else { form };
            let normal = oriented.normalized().expect("nonzero hyperplane");
            if facets.insert(normal.as_row()) {
                found.push(normal);
            }
        }
        found.sort_by(|a, b| a.canonical_cmp(b));

        // Keep points whose incident facet normals have full rank.
        let vertices: Vec<Point> = pts
            .into_iter()
            .filter(|p| {
                let normals: Vec<Vec<Rational>> = found
                    .iter()
                    .filter(|f| f.eval(p).is_zero())
                    .map(|f| f.coeffs.clone())
                    .collect();
                rank_of(&normals, n) == n
            })
            .collect();
        Ok(Self::assemble(n, vertices, found))
    }

    /// The region where every form is nonnegative, which must be bounded with
    /// nonempty interior. Redundant forms are dropped.
    pub fn from_halfspaces(forms: &[LinearForm]) -> Result<Self> {
        let n = forms
            .first()
            .map(LinearForm::dim)
            .ok_or_else(|| Error::Invalid("no halfspaces given".into()))?;
        if n == 0 || forms.iter().any(|f| f.dim() != n) {
            return Err(Error::Dimension(
                "halfspaces of inconsistent dimension".into(),
            ));
        }
        let m = forms.len();

        // Nonempty: A x - s = -c with x free, s ≥ 0.
        let mut rows = Vec::with_capacity(m);
        for (i, f) in forms.iter().enumerate() {
            let mut r = f.coeffs.clone();
            r.extend((0..m).map(|k| {
                if k == i {
                    -Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            rows.push(r);
        }
        let a = Matrix::from_rows(rows, n + m)?;
        let mut signs = vec![VarSign::Free; n];
        signs.extend(vec![VarSign::NonNegative; m]);
        let rhs: Vec<Rational> = forms.iter().map(|f| -&f.constant).collect();
        if let LpOutcome::Infeasible(y) =
            lp_solve(&LpProblem::feasibility(a.clone(), rhs, signs.clone()))?
        {
            return Err(Error::EmptyRegion {
                farkas: y.iter().map(format_rational).collect(),
            });
        }

        if let Some(ray) = recession_ray(forms, n)? {
            return Err(Error::Unbounded {
                ray: ray.iter().map(format_rational).collect(),
            });
        }

        let mut vertices = BTreeSet::new();
        for subset in combinations(m, n) {
            let sys =
                Matrix::from_rows(subset.iter().map(|&i| forms[i].coeffs.clone()).collect(), n)?;
            let b: Vec<Rational> = subset.iter().map(|&i| -&forms[i].constant).collect();
            if let SolutionSet::Affine {
                particular,
                nullspace,
            } = linear_solve(&sys, &b)?
            {
                if nullspace.is_empty() && forms.iter().all(|f| f.is_nonnegative_at(&particular)) {
                    vertices.insert(particular);
                }
            }
        }
        let vertices: Vec<Point> = vertices.into_iter().collect();
        Self::from_vertices(&vertices)
    }

    fn assemble(dim: usize, vertices: Vec<Point>, facets: Vec<LinearForm>) -> Self {
        let incidence = vertices
            .iter()
            .map(|v| facets.iter().map(|f| f.eval(v).is_zero()).collect())
            .collect();
        Self {
            dim,
            vertices,
            facets,
            incidence,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[LinearForm] {
        &self.facets
    }

    pub fn facet(&self, i: usize) -> &LinearForm {
        &self.facets[i]
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn incident(&self, vertex: usize, facet: usize) -> bool {
        self.incidence[vertex][facet]
    }

    /// Facets through the given vertex.
    pub fn facets_at_vertex(&self, vertex: usize) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&f| self.incidence[vertex][f])
            .collect()
    }

    /// Vertices on the given facet.
    pub fn vertices_on_facet(&self, facet: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.incidence[v][facet])
            .collect()
    }

    pub fn vertex_index(&self, point: &[Rational]) -> Option<usize> {
        self.vertices.iter().position(|v| v == point)
    }

    /// Index of the facet whose normalized form equals `form` up to positive
    /// scaling.
    pub fn facet_index(&self, form: &LinearForm) -> Option<usize> {
        let norm = form.normalized()?;
        self.facets.iter().position(|f| *f == norm)
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        point.len() == self.dim && self.facets.iter().all(|f| f.is_nonnegative_at(point))
    }

    /// The face consisting of a single vertex.
    pub fn vertex_face(&self, vertex: usize) -> Face {
        face_of(self, &self.facets_at_vertex(vertex))
            .expect("valid facet indices")
            .face
            .expect("vertex lies on its facets")
    }

    /// Centroid of the vertices; an interior point.
    pub fn centroid(&self) -> Point {
        centroid(self.vertices.iter())
    }
}

pub(crate) fn centroid<'a>(points: impl Iterator<Item = &'a Point>) -> Point {
    let pts: Vec<&Point> = points.collect();
    let k = Rational::from_integer(pts.len().into());
    let n = pts[0].len();
    (0..n)
        .map(|j| pts.iter().map(|p| &p[j]).sum::<Rational>() / &k)
        .collect()
}

/// A nonzero direction `d` with every linear part nonnegative on `d`, if one
/// exists.
fn recession_ray(forms: &[LinearForm], n: usize) -> Result<Option<Vec<Rational>>> {
    let m = forms.len();
    let mut rays: Vec<Vec<Rational>> = Vec::new();
    for j in 0..n {
        for s in [1i64, -1] {
            if rays.iter().any(|r| !r[j].is_zero()) {
                continue;
            }
            // rows: a_i·d - s_i = 0 ; d_j = s
            let mut rows = Vec::with_capacity(m + 1);
            for (i, f) in forms.iter().enumerate() {
                let mut r = f.coeffs.clone();
                r.extend((0..m).map(|k| {
                    if k == i {
                        -Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                rows.push(r);
            }
            let mut pin = vec![Rational::zero(); n + m];
            pin[j] = Rational::one();
            rows.push(pin);
            let mut b = vec![Rational::zero(); m];
            b.push(Rational::from_integer(s.into()));
            let mut signs = vec![VarSign::Free; n];
            signs.extend(vec![VarSign::NonNegative; m]);
            let p = LpProblem::feasibility(Matrix::from_rows(rows, n + m)?, b, signs);
            if let LpOutcome::Feasible(x) = lp_solve(&p)? {
                rays.push(x[..n].to_vec());
            }
        }
    }
    if rays.is_empty() {
        return Ok(None);
    }
    let sum: Vec<Rational> = (0..n).map(|j| rays.iter().map(|r| &r[j]).sum()).collect();
    Ok(Some(if sum.iter().all(Zero::is_zero) {
        rays.swap_remove(0)
    } else {
        sum
    }))
}

/// JSON input: `{"vertices": [["0","0"], ...]}` or
/// `{"halfspaces": [{"const":"1","coeffs":["-1","-1"]}, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeJson {
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_points")]
    pub vertices: Option<Vec<Point>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halfspaces: Option<Vec<LinearForm>>,
}

mod opt_points {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(transparent)]
    struct Pts(#[serde(with = "serde_rat::vec2")] Vec<Point>);

    pub fn serialize<S: Serializer>(v: &Option<Vec<Point>>, s: S) -> Result<S::Ok, S::Error> {
        v.clone().map(Pts).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Point>>, D::Error> {
        Ok(Option::<Pts>::deserialize(d)?.map(|p| p.0))
    }
}

impl PolytopeJson {
    pub fn build(&self) -> Result<Polytope> {
        match (&self.vertices, &self.halfspaces) {
            (Some(v), _) => Polytope::from_vertices(v),
            (None, Some(h)) => Polytope::from_halfspaces(h),
            (None, None) => Err(Error::Parse(
                "polytope needs \"vertices\" or \"halfspaces\"".into(),
            )),
        }
    }

    pub fn describe(k: &Polytope) -> Self {
        Self {
            vertices: Some(k.vertices.clone()),
            halfspaces: Some(k.facets.clone()),
        }
    }
}
