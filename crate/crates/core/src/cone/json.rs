//! JSON description of a generated cone.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{default_var_names, PolyJson, SparsePoly};
use crate::rational::{unwrap_rats, Rat};

use super::GeneratedCone;

/// A generator given either as an expression string or as polynomial JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyInput {
    Expr(String),
    Json(PolyJson),
}

impl PolyInput {
    pub fn to_poly(&self, vars: &[String]) -> Result<SparsePoly> {
        match self {
            PolyInput::Expr(e) => {
                let names: Vec<&str> = vars.iter().map(String::as_str).collect();
                SparsePoly::parse(e, &names)
            }
            PolyInput::Json(j) => {
                if j.vars.len() != vars.len() {
                    return Err(Error::Dimension(format!(
                        "polynomial over {} variables, expected {}",
                        j.vars.len(),
                        vars.len()
                    )));
                }
                j.to_poly()
            }
        }
    }
}

/// `{"vars":["x","y"], "generators":["x","y","1 - (x+3/5)^2 - (y+3/5)^2"],
///   "point_pairs":[[["0","1/5"],["0","-7/5"]]], "box":[["0","0"],["1","1"]]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nvars: Option<usize>,
    pub generators: Vec<PolyInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub point_pairs: Vec<(Vec<Rat>, Vec<Rat>)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sample_points: Vec<Vec<Rat>>,
    #[serde(default, rename = "box", skip_serializing_if = "Option::is_none")]
    pub search_box: Option<(Vec<Rat>, Vec<Rat>)>,
}

impl ConeJson {
    /// Variable names: explicit `vars`, else defaults for `nvars`, else
    /// inferred from the first JSON generator.
    pub fn var_names(&self) -> Result<Vec<String>> {
        if let Some(v) = &self.vars {
            return Ok(v.clone());
        }
        if let Some(n) = self.nvars {
            return Ok(default_var_names(n));
        }
        self.generators
            .iter()
            .find_map(|g| match g {
                PolyInput::Json(j) => Some(j.vars.clone()),
                PolyInput::Expr(_) => None,
            })
            .ok_or_else(|| Error::Parse("cone JSON needs \"vars\" or \"nvars\"".into()))
    }

    pub fn build(&self) -> Result<GeneratedCone> {
        let vars = self.var_names()?;
        let gens = self
            .generators
            .iter()
            .map(|g| g.to_poly(&vars))
            .collect::<Result<Vec<_>>>()?;
        let names = self
            .names
            .clone()
            .unwrap_or_else(|| gens.iter().map(|g| g.display_with(&vars)).collect());
        let mut cone = GeneratedCone::new(vars.len(), gens)?.with_names(names)?;
        if let Some((lo, hi)) = &self.search_box {
            cone = cone.with_search_box(unwrap_rats(lo), unwrap_rats(hi))?;
        }
        cone =
            cone.with_sample_points(self.sample_points.iter().map(|p| unwrap_rats(p)).collect())?;
        for (p, q) in &self.point_pairs {
            cone = cone.with_point_pair(unwrap_rats(p), unwrap_rats(q))?;
        }
        Ok(cone)
    }
}
