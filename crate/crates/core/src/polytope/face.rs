use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{centroid, Point, Polytope};
use crate::error::{Error, Result};
use crate::linalg::{linear_solve, rank_of, row_basis, Matrix, SolutionSet};
use crate::rational::{serde_rat, Rational};

/// Affine flat `point + span(directions)`, kept in a canonical form so that
/// equal flats compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Flat {
    #[serde(with = "serde_rat::vec")]
    pub point: Point,
    #[serde(with = "serde_rat::vec2")]
    pub directions: Vec<Vec<Rational>>,
}

impl Flat {
    pub fn new(point: Point, directions: &[Vec<Rational>]) -> Self {
        let n = point.len();
        let directions = row_basis(directions, n);
        let mut point = point;
        // Zero the point on each pivot coordinate of the reduced basis.
        for d in &directions {
            let pivot = d.iter().position(|v| !v.is_zero()).expect("nonzero row");
            let f = point[pivot].clone();
            if !f.is_zero() {
                for (p, v) in point.iter_mut().zip(d) {
                    *p -= v * &f;
                }
            }
        }
        Self { point, directions }
    }

    pub fn whole_space(n: usize) -> Self {
        let id = Matrix::identity(n);
        Self::new(
            vec![Rational::zero(); n],
            &(0..n).map(|i| id.row(i).to_vec()).collect::<Vec<_>>(),
        )
    }

    /// Affine hull of a nonempty point set.
    pub fn hull<'a>(points: impl IntoIterator<Item = &'a Point>) -> Self {
        let pts: Vec<&Point> = points.into_iter().collect();
        let base = pts[0].clone();
        let dirs: Vec<Vec<Rational>> = pts[1..]
            .iter()
            .map(|p| p.iter().zip(&base).map(|(a, b)| a - b).collect())
            .collect();
        Self::new(base, &dirs)
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.point.len()
    }

    pub fn contains_point(&self, p: &[Rational]) -> bool {
        let n = self.ambient_dim();
        let diff: Vec<Rational> = p.iter().zip(&self.point).map(|(a, b)| a - b).collect();
        let mut rows = self.directions.clone();
        let r = rows.len();
        rows.push(diff);
        rank_of(&rows, n) == r
    }

    pub fn contains_flat(&self, other: &Flat) -> bool {
        let n = self.ambient_dim();
        self.contains_point(&other.point) && {
            let mut rows = self.directions.clone();
            rows.extend(other.directions.iter().cloned());
            rank_of(&rows, n) == self.dim()
        }
    }
}

/// Nonempty face of a polytope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    /// Facet indices the face was requested from.
    pub facets: Vec<usize>,
    /// Indices of polytope vertices lying on every defining facet.
    pub vertices: Vec<usize>,
    pub dim: usize,
    pub hull: Flat,
    /// Vertex average; zero on the defining facets and positive on all others
    /// that do not contain the face.
    #[serde(with = "serde_rat::vec")]
    pub interior_point: Point,
}

/// Outcome of [`face_of`]: the face (if nonempty) and the intersection of
/// the hyperflats spanned by the chosen facets (if they meet at all).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceQuery {
    pub face: Option<Face>,
    pub flat_meet: Option<Flat>,
}

/// `∩_{i ∈ facets} F_i`, together with the intersection of the affine hulls
/// of those facets.
pub fn face_of(k: &Polytope, facets: &[usize]) -> Result<FaceQuery> {
    let mut ids = facets.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if let Some(&bad) = ids.iter().find(|&&i| i >= k.num_facets()) {
        return Err(Error::Invalid(format!(
            "facet index {bad} out of range ({} facets)",
            k.num_facets()
        )));
    }
    let n = k.dim();
    let flat_meet = if ids.is_empty() {
        Some(Flat::whole_space(n))
    } else {
        let sys = Matrix::from_rows(ids.iter().map(|&i| k.facet(i).coeffs.clone()).collect(), n)?;
        let b: Vec<Rational> = ids.iter().map(|&i| -&k.facet(i).constant).collect();
        match linear_solve(&sys, &b)? {
            SolutionSet::Inconsistent => None,
            SolutionSet::Affine {
                particular,
                nullspace,
            } => Some(Flat::new(particular, &nullspace)),
        }
    };
    let vertices: Vec<usize> = (0..k.vertices().len())
        .filter(|&v| ids.iter().all(|&f| k.incident(v, f)))
        .collect();
    let face = (!vertices.is_empty()).then(|| {
        let hull = Flat::hull(vertices.iter().map(|&v| &k.vertices()[v]));
        Face {
            facets: ids.clone(),
            dim: hull.dim(),
            interior_point: centroid(vertices.iter().map(|&v| &k.vertices()[v])),
            vertices,
            hull,
        }
    });
    Ok(FaceQuery { face, flat_meet })
}

/// Every facet containing the face.
pub fn facets_containing(k: &Polytope, g: &Face) -> Vec<usize> {
    (0..k.num_facets())
        .filter(|&f| g.vertices.iter().all(|&v| k.incident(v, f)))
        .collect()
}

impl Face {
    pub fn is_whole(&self, k: &Polytope) -> bool {
        self.dim == k.dim()
    }

    /// Checks the relative-interior property of `interior_point`.
    pub fn interior_point_is_relative_interior(&self, k: &Polytope) -> bool {
        let containing = facets_containing(k, self);
        k.facets().iter().enumerate().all(|(i, f)| {
            let v = f.eval(&self.interior_point);
            if containing.contains(&i) {
                v.is_zero()
            } else {
                v.is_positive()
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::LinearForm;
    use crate::rational::int;

    fn pts(v: &[&[i64]]) -> Vec<Point> {
        v.iter()
            .map(|p| p.iter().map(|&x| int(x)).collect())
            .collect()
    }

    fn idx(k: &Polytope, expr: &str, vars: &[&str]) -> usize {
        k.facet_index(&LinearForm::parse(expr, vars).unwrap())
            .unwrap()
    }

    fn pyramid() -> Polytope {
        Polytope::from_vertices(&pts(&[
            &[-1, -1, 0],
            &[1, -1, 0],
            &[-1, 1, 0],
            &[1, 1, 0],
            &[0, 0, 1],
        ]))
        .unwrap()
    }

    const XY: &[&str] = &["x", "y"];
    const XYZ: &[&str] = &["x", "y", "z"];

    #[test]
    fn triangle_edge() {
        let k = Polytope::from_vertices(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        let fx = idx(&k, "x", XY);
        let q = face_of(&k, &[fx]).unwrap();
        let g = q.face.unwrap();
        assert_eq!(g.dim, 1);
        assert!(g.hull.contains_point(&[int(0), int(7)]));
        assert!(!g.hull.contains_point(&[int(1), int(0)]));
        assert_eq!(q.flat_meet.unwrap(), g.hull);
        assert_eq!(facets_containing(&k, &g), vec![fx]);
    }

    #[test]
    fn square_corner() {
        let k = Polytope::from_vertices(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let s = [idx(&k, "x", XY), idx(&k, "y", XY)];
        let g = face_of(&k, &s).unwrap().face.unwrap();
        assert_eq!(g.dim, 0);
        assert_eq!(g.interior_point, vec![int(0), int(0)]);
        assert_eq!(facets_containing(&k, &g), s.to_vec());
    }

    #[test]
    fn trapezoid_nonadjacent_edges_meet_outside() {
        let k = Polytope::from_vertices(&pts(&[&[0, 0], &[2, 0], &[1, 1], &[0, 1]])).unwrap();
        let q = face_of(&k, &[idx(&k, "x", XY), idx(&k, "2 - x - y", XY)]).unwrap();
        assert!(q.face.is_none());
        let meet = q.flat_meet.unwrap();
        assert_eq!(meet.dim(), 0);
        assert_eq!(meet.point, vec![int(0), int(2)]);
        assert!(!k.contains(&meet.point));
    }

    #[test]
    fn pyramid_apex_facets_and_line_meet() {
        let k = pyramid();
        let apex = k.vertex_index(&[int(0), int(0), int(1)]).unwrap();
        let g = k.vertex_face(apex);
        let slanted: Vec<usize> = ["1 - x - z", "1 + x - z", "1 - y - z", "1 + y - z"]
            .iter()
            .map(|e| idx(&k, e, XYZ))
            .collect();
        let mut expect = slanted.clone();
        expect.sort();
        assert_eq!(facets_containing(&k, &g), expect);
        // opposite slanted faces meet only at the apex; their planes meet in a line
        let q = face_of(&k, &[slanted[0], slanted[1]]).unwrap();
        assert_eq!(q.face.unwrap().vertices, vec![apex]);
        let line = q.flat_meet.unwrap();
        assert_eq!(line.dim(), 1);
        assert!(line.contains_point(&[int(0), int(5), int(1)]));
    }

    #[test]
    fn interior_points_and_dimension_count() {
        let cube = Polytope::from_vertices(&pts(&[
            &[0, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[1, 1, 0],
            &[1, 0, 1],
            &[0, 1, 1],
            &[1, 1, 1],
        ]))
        .unwrap();
        for k in [cube, pyramid()] {
            let n = k.dim();
            for r in 0..=n {
                for s in crate::combinatorics::combinations(k.num_facets(), r) {
                    let Some(g) = face_of(&k, &s).unwrap().face else {
                        continue;
                    };
                    assert!(g.interior_point_is_relative_interior(&k));
                    let normals: Vec<Vec<Rational>> = facets_containing(&k, &g)
                        .iter()
                        .map(|&i| k.facet(i).coeffs.clone())
                        .collect();
                    assert_eq!(g.dim + rank_of(&normals, n), n);
                }
            }
        }
    }

    #[test]
    fn invalid_index() {
        let k = Polytope::from_vertices(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        assert!(face_of(&k, &[5]).is_err());
        let whole = face_of(&k, &[]).unwrap().face.unwrap();
        assert!(whole.is_whole(&k));
    }
}
