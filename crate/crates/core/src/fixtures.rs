//! Named polytopes and cones used by the examples, the gallery and the tests.

use crate::cone::GeneratedCone;
use crate::poly::SparsePoly;
use crate::polytope::{Point, Polytope};
use crate::rational::{int, rat};

fn pts(raw: &[&[i64]]) -> Vec<Point> {
    raw.iter()
        .map(|p| p.iter().map(|&v| int(v)).collect())
        .collect()
}

fn build(raw: &[&[i64]]) -> Polytope {
    Polytope::from_vertices(&pts(raw)).expect("fixture is full-dimensional")
}

/// `[0, 1]`.
pub fn interval() -> Polytope {
    build(&[&[0], &[1]])
}

/// Standard 2-simplex.
pub fn triangle() -> Polytope {
    build(&[&[0, 0], &[1, 0], &[0, 1]])
}

/// Unit square.
pub fn square() -> Polytope {
    build(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
}

/// Trapezoid with parallel sides `y = 0` and `y = 1`; not a parallelogram.
pub fn trapezoid() -> Polytope {
    build(&[&[0, 0], &[2, 0], &[1, 1], &[0, 1]])
}

/// Unit cube.
pub fn cube() -> Polytope {
    build(&[
        &[0, 0, 0],
        &[1, 0, 0],
        &[0, 1, 0],
        &[0, 0, 1],
        &[1, 1, 0],
        &[1, 0, 1],
        &[0, 1, 1],
        &[1, 1, 1],
    ])
}

/// Pyramid over the square `[-1, 1]²` with apex `(0, 0, 1)`.
pub fn pyramid() -> Polytope {
    build(&[
        &[-1, -1, 0],
        &[1, -1, 0],
        &[-1, 1, 0],
        &[1, 1, 0],
        &[0, 0, 1],
    ])
}

/// Standard 3-simplex.
pub fn tetrahedron() -> Polytope {
    build(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
}

/// Triangular prism `Δ² × [0, 1]`.
pub fn prism() -> Polytope {
    build(&[
        &[0, 0, 0],
        &[1, 0, 0],
        &[0, 1, 0],
        &[0, 0, 1],
        &[1, 0, 1],
        &[0, 1, 1],
    ])
}

/// Regular-ish hexagon with rational vertices.
pub fn hexagon() -> Polytope {
    build(&[&[2, 0], &[1, 2], &[-1, 2], &[-2, 0], &[-1, -2], &[1, -2]])
}

/// Cone generated by `x` and `1 − x`.
pub fn interval_cone() -> GeneratedCone {
    GeneratedCone::from_polytope(&interval())
}

/// `1 − (x + 3/5)² − (y + 3/5)²`.
pub fn disk_alpha() -> SparsePoly {
    SparsePoly::parse("1 - (x + 3/5)^2 - (y + 3/5)^2", &["x", "y"]).expect("valid expression")
}

pub fn disk_p() -> Point {
    vec![int(0), rat(1, 5)]
}

pub fn disk_q() -> Point {
    vec![int(0), rat(-7, 5)]
}

/// The cone generated by `x`, `y` and the disk form `α`, with the point
/// pair `(0, 1/5)`, `(0, −7/5)` attached.
pub fn disk_cone() -> GeneratedCone {
    let gens = vec![SparsePoly::var(2, 0), SparsePoly::var(2, 1), disk_alpha()];
    GeneratedCone::new(2, gens)
        .and_then(|c| c.with_names(vec!["x".into(), "y".into(), "α".into()]))
        .and_then(|c| c.with_search_box(vec![int(0), int(0)], vec![int(1), int(1)]))
        .and_then(|c| c.with_point_pair(disk_p(), disk_q()))
        .expect("disk cone fixture")
}

/// `y + 7/5`.
pub fn disk_u() -> SparsePoly {
    SparsePoly::parse("y + 7/5", &["x", "y"]).expect("valid expression")
}

/// `1/5 − y`.
pub fn disk_beta() -> SparsePoly {
    SparsePoly::parse("1/5 - y", &["x", "y"]).expect("valid expression")
}

pub fn polytope_by_name(name: &str) -> Option<Polytope> {
    Some(match name {
        "interval" => interval(),
        "triangle" => triangle(),
        "square" => square(),
        "trapezoid" => trapezoid(),
        "cube" => cube(),
        "pyramid" => pyramid(),
        "tetrahedron" => tetrahedron(),
        "prism" => prism(),
        "hexagon" => hexagon(),
        _ => return None,
    })
}

pub const POLYTOPE_NAMES: &[&str] = &[
    "interval",
    "triangle",
    "square",
    "trapezoid",
    "cube",
    "pyramid",
    "tetrahedron",
    "prism",
    "hexagon",
];
