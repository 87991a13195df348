//! Zero sets of ideals generated by monomials in the facet forms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Exponents;
use crate::polytope::{face_of, Face, Flat, Polytope};

/// `Z ∩ K` as a union of maximal faces and `Z` as a union of maximal flats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroFaces {
    pub faces: Vec<Face>,
    pub flats: Vec<Flat>,
}

impl ZeroFaces {
    /// The affine hulls of the faces coincide with the flats.
    pub fn faces_span_flats(&self) -> bool {
        let mut hulls: Vec<Flat> = self.faces.iter().map(|f| f.hull.clone()).collect();
        let mut flats = self.flats.clone();
        let key = |f: &Flat| format!("{f:?}");
        hulls.sort_by_key(key);
        flats.sort_by_key(key);
        hulls == flats
    }
}

/// Each generator `Π β_i^{w_i}` vanishes on the union of the facets with
/// `w_i > 0`; the ideal vanishes on the intersection of those unions.
pub fn zero_faces(k: &Polytope, generators: &[Exponents]) -> Result<ZeroFaces> {
    let m = k.num_facets();
    let mut supports: Vec<Vec<usize>> = Vec::with_capacity(generators.len());
    for (g, w) in generators.iter().enumerate() {
        if w.len() != m {
            return Err(Error::Dimension(format!(
                "generator {g} has {} exponents for {m} facets",
                w.len()
            )));
        }
        supports.push((0..m).filter(|&i| w[i] > 0).collect());
    }
    let mut faces: Vec<Face> = Vec::new();
    let mut flats: Vec<Flat> = Vec::new();
    let mut choice = vec![0usize; supports.len()];
    if supports.iter().any(Vec::is_empty) {
        return Ok(ZeroFaces { faces, flats });
    }
    loop {
        let mut ids: Vec<usize> = choice.iter().zip(&supports).map(|(&c, s)| s[c]).collect();
        ids.sort_unstable();
        ids.dedup();
        let q = face_of(k, &ids)?;
        if let Some(f) = q.face {
            if !faces.iter().any(|g| g.vertices == f.vertices) {
                faces.push(f);
            }
        }
        if let Some(fl) = q.flat_meet {
            if !flats.contains(&fl) {
                flats.push(fl);
            }
        }
        let mut j = 0;
        loop {
            if j == choice.len() {
                return Ok(ZeroFaces {
                    faces: maximal_faces(faces),
                    flats: maximal_flats(flats),
                });
            }
            choice[j] += 1;
            if choice[j] < supports[j].len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
}

fn maximal_faces(faces: Vec<Face>) -> Vec<Face> {
    let mut out: Vec<Face> = faces
        .iter()
        .filter(|f| {
            !faces.iter().any(|g| {
                g.vertices.len() > f.vertices.len()
                    && f.vertices.iter().all(|v| g.vertices.contains(v))
            })
        })
        .cloned()
        .collect();
    out.sort_by(|a, b| a.facets.cmp(&b.facets));
    out
}

fn maximal_flats(flats: Vec<Flat>) -> Vec<Flat> {
    flats
        .iter()
        .filter(|f| !flats.iter().any(|g| g != *f && g.contains_flat(f)))
        .cloned()
        .collect()
}
