//! Resolving command-line arguments into core values.
//!
//! Structured arguments accept a fixture name, inline JSON, or a path to a
//! JSON file.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use ordcone::cone::{ConeJson, GeneratedCone};
use ordcone::fixtures;
use ordcone::poly::{default_var_names, PolyJson, SparsePoly};
use ordcone::polytope::{face_of, Face, LinearForm, Polytope, PolytopeJson};
use ordcone::rational::parse_rational;
use serde_json::Value;

/// Inline JSON or the contents of a JSON file, if `arg` is either.
fn json_text(arg: &str) -> Result<Option<String>> {
    let t = arg.trim();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(Some(t.to_string()));
    }
    let path = Path::new(t);
    if path.is_file() {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(Some(text));
    }
    Ok(None)
}

fn parse_value(arg: &str) -> Result<Option<Value>> {
    json_text(arg)?
        .map(|t| serde_json::from_str(&t).context("invalid JSON"))
        .transpose()
}

pub fn polytope(arg: &str) -> Result<Polytope> {
    if let Some(k) = fixtures::polytope_by_name(arg) {
        return Ok(k);
    }
    let Some(v) = parse_value(arg)? else {
        bail!(
            "unknown polytope {arg:?}: give JSON, a JSON file, or one of {}",
            fixtures::POLYTOPE_NAMES.join(", ")
        );
    };
    let pj: PolytopeJson = serde_json::from_value(v).context("invalid polytope JSON")?;
    Ok(pj.build()?)
}

pub fn cone(arg: &str) -> Result<GeneratedCone> {
    if arg == "disk" {
        return Ok(fixtures::disk_cone());
    }
    if let Some(k) = fixtures::polytope_by_name(arg) {
        return Ok(GeneratedCone::from_polytope(&k));
    }
    let Some(v) = parse_value(arg)? else {
        bail!("unknown cone {arg:?}: give JSON, a JSON file, \"disk\", or a polytope name");
    };
    if v.get("generators").is_some() {
        let cj: ConeJson = serde_json::from_value(v).context("invalid cone JSON")?;
        return Ok(cj.build()?);
    }
    let pj: PolytopeJson = serde_json::from_value(v).context("invalid polytope JSON")?;
    Ok(GeneratedCone::from_polytope(&pj.build()?))
}

/// Polynomial JSON, a JSON file, or an expression in the default variable
/// names for `nvars` variables.
pub fn poly(arg: &str, nvars: usize) -> Result<SparsePoly> {
    let p = match json_text(arg)? {
        Some(t) => {
            let pj: PolyJson = serde_json::from_str(&t).context("invalid polynomial JSON")?;
            pj.to_poly()?
        }
        None => {
            let names = default_var_names(nvars);
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            SparsePoly::parse(arg, &refs)?
        }
    };
    if p.nvars() != nvars {
        bail!("polynomial has {} variables, expected {nvars}", p.nvars());
    }
    Ok(p)
}

pub fn form(arg: &str, n: usize) -> Result<LinearForm> {
    match json_text(arg)? {
        Some(t) => {
            let f: LinearForm = serde_json::from_str(&t).context("invalid linear form JSON")?;
            if f.dim() != n {
                bail!("linear form has {} coefficients, expected {n}", f.dim());
            }
            Ok(f)
        }
        None => Ok(LinearForm::from_poly(&poly(arg, n)?)?),
    }
}

fn split_list(arg: &str) -> Vec<&str> {
    arg.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.trim_matches('"'))
        .collect()
}

pub fn index_list(arg: &str) -> Result<Vec<usize>> {
    split_list(arg)
        .into_iter()
        .map(|s| s.parse().map_err(|_| anyhow!("not an index: {s:?}")))
        .collect()
}

pub fn exponent_list(arg: &str) -> Result<Vec<u32>> {
    split_list(arg)
        .into_iter()
        .map(|s| s.parse().map_err(|_| anyhow!("not an exponent: {s:?}")))
        .collect()
}

pub fn point(arg: &str) -> Result<Vec<ordcone::Rational>> {
    Ok(split_list(arg)
        .into_iter()
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()?)
}

/// A face given by facet indices or by one of its vertices.
pub fn face(k: &Polytope, facets: Option<&str>, vertex: Option<&str>) -> Result<Face> {
    match (facets, vertex) {
        (Some(f), None) => face_of(k, &index_list(f)?)?
            .face
            .ok_or_else(|| anyhow!("the chosen facets do not meet in K")),
        (None, Some(v)) => {
            let p = point(v)?;
            let i = k
                .vertex_index(&p)
                .ok_or_else(|| anyhow!("{v} is not a vertex of the polytope"))?;
            Ok(k.vertex_face(i))
        }
        _ => bail!("give exactly one of --face or --vertex"),
    }
}
