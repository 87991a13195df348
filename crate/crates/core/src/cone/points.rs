//! Admissible-point searches: attached points, vertices, midpoints, then a
//! rational grid with doubling denominators.

use num_traits::{Signed, ToPrimitive};

use crate::par;
use crate::polytope::Point;
use crate::rational::{int, Rational};

use super::{Caps, GeneratedCone};

/// Grid rounds stop once a round would exceed this many points.
const MAX_GRID_POINTS: usize = 1 << 17;

/// All generators are nonnegative at `point`.
pub fn admissible(cone: &GeneratedCone, point: &[Rational]) -> bool {
    point.len() == cone.nvars()
        && cone
            .generators()
            .iter()
            .all(|g| g.evaluate(point).is_ok_and(|v| !v.is_negative()))
}

/// Points tried before any grid: attached pairs and samples, polytope
/// vertices and centroid.
pub(crate) fn quick_points(cone: &GeneratedCone) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::new();
    for (p, q) in cone.point_pairs() {
        pts.push(p.clone());
        pts.push(q.clone());
    }
    pts.extend(cone.sample_points().iter().cloned());
    if let Some(k) = cone.polytope() {
        pts.extend(k.vertices().iter().cloned());
        pts.push(k.centroid());
    }
    dedup(pts)
}

/// Midpoints of all pairs among vertices and sample points.
pub(crate) fn midpoint_points(cone: &GeneratedCone) -> Vec<Point> {
    let mut base: Vec<Point> = cone.sample_points().to_vec();
    if let Some(k) = cone.polytope() {
        base.extend(k.vertices().iter().cloned());
    }
    let two = int(2);
    let mut pts = Vec::new();
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            pts.push(
                base[i]
                    .iter()
                    .zip(&base[j])
                    .map(|(a, b)| (a + b) / &two)
                    .collect(),
            );
        }
    }
    dedup(pts)
}

fn dedup(mut pts: Vec<Point>) -> Vec<Point> {
    let mut seen = std::collections::BTreeSet::new();
    pts.retain(|p| seen.insert(p.clone()));
    pts
}

/// The box scanned by grid rounds.
pub(crate) fn grid_box(cone: &GeneratedCone) -> (Point, Point) {
    if let Some(k) = cone.polytope() {
        let n = k.dim();
        let lo = (0..n)
            .map(|j| k.vertices().iter().map(|v| &v[j]).min().unwrap().clone())
            .collect();
        let hi = (0..n)
            .map(|j| k.vertices().iter().map(|v| &v[j]).max().unwrap().clone())
            .collect();
        return (lo, hi);
    }
    if let Some(b) = cone.search_box() {
        return b.clone();
    }
    (vec![int(-2); cone.nvars()], vec![int(2); cone.nvars()])
}

/// Grid points `lo + k/den` inside the box, or `None` when the round would
/// be too large.
pub(crate) fn grid_points(lo: &[Rational], hi: &[Rational], den: u64) -> Option<Vec<Point>> {
    let den_r = int(den as i64);
    let mut steps = Vec::with_capacity(lo.len());
    let mut total: usize = 1;
    for (a, b) in lo.iter().zip(hi) {
        let k = ((b - a) * &den_r).floor().to_integer().to_usize()? + 1;
        total = total.checked_mul(k)?;
        if total > MAX_GRID_POINTS {
            return None;
        }
        steps.push(k);
    }
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; lo.len()];
    loop {
        out.push(
            idx.iter()
                .zip(lo)
                .map(|(&k, a)| a + Rational::new((k as i64).into(), (den as i64).into()))
                .collect(),
        );
        let mut j = 0;
        loop {
            if j == idx.len() {
                return Some(out);
            }
            idx[j] += 1;
            if idx[j] < steps[j] {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Denominators `1, 2, 4, ...` up to the cap.
pub(crate) fn grid_denominators(caps: &Caps) -> impl Iterator<Item = u64> {
    let cap = caps.grid_denominator_cap.max(1);
    std::iter::successors(Some(1u64), move |d| d.checked_mul(2).filter(|n| *n <= cap))
}

/// First admissible point (in search order) where `pred(value_fn(point))`
/// holds; returns the point and the value.
pub fn find_admissible<V, F>(
    cone: &GeneratedCone,
    caps: &Caps,
    include_grid: bool,
    value_fn: V,
    pred: F,
) -> Option<(Point, Rational)>
where
    V: Fn(&[Rational]) -> Option<Rational> + Sync,
    F: Fn(&Rational) -> bool + Sync,
{
    let probe = |p: &Point| {
        let v = value_fn(p)?;
        (pred(&v) && admissible(cone, p)).then(|| (p.clone(), v))
    };
    for round in [quick_points(cone), midpoint_points(cone)] {
        if let Some(hit) = par::find_first(&round, caps.parallel, probe) {
            return Some(hit);
        }
    }
    if include_grid {
        let (lo, hi) = grid_box(cone);
        for den in grid_denominators(caps) {
            let Some(points) = grid_points(&lo, &hi, den) else {
                break;
            };
            if let Some(hit) = par::find_first(&points, caps.parallel, probe) {
                return Some(hit);
            }
        }
    }
    None
}
