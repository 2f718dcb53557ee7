//! Explicit configurations and the bound table.
//!
//! * [`simplex_clique`]: `d + 1` unit balls on a regular simplex plus a small
//!   ball at its centre, giving `d + 2` mutually tangent balls.
//! * [`kissing_configuration`]: a central unit ball with the known optimal
//!   number of tangent unit balls, realised from root systems.
//! * [`shrink_to_index`]: replaces the neighbours of a ball by copies of it
//!   touching at the same points.
//! * [`bounds_for_dimension`]: the clique lower bound, the kissing upper
//!   bound and the crude volume bound for one dimension.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Ball, Configuration, GeometryError, Point, Scalar, ScalarMode, TolerancePolicy};
use crate::tangency::{build_graph, TangencyError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error("unsupported simplex dimension {0} (need at least 2)")]
    SimplexDimension(usize),
    #[error("unsupported kissing dimension {0} (supported: 1, 2, 3, 4, 8)")]
    UnsupportedKissingDimension(usize),
    #[error("ball index {index} out of range for {len} balls")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("neighbour {neighbour} is smaller than ball {index}; shrinking would enlarge it")]
    SmallerNeighbour { index: usize, neighbour: usize },
    #[error("shrunk configuration failed validation: {0}")]
    ShrinkBroken(String),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("3^{0} does not fit in 128 bits")]
    Overflow(usize),
    #[error(transparent)]
    Tangency(#[from] TangencyError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Known kissing numbers, including the 24-dimensional value which is only
/// used in bound tables.
pub const KNOWN_KISSING: [(usize, u128); 6] = [(1, 2), (2, 6), (3, 12), (4, 24), (8, 240), (24, 196_560)];

/// Dimensions where the kissing arrangement is unique up to congruence.
pub const MAGIC_DIMENSIONS: [usize; 4] = [1, 2, 8, 24];

pub fn known_kissing_number(d: usize) -> Option<u128> {
    KNOWN_KISSING.iter().find(|&&(k, _)| k == d).map(|&(_, v)| v)
}

/// Vertices of a regular d-simplex with side 2, centroid at the origin.
///
/// The standard basis of R^(d+1), recentred, lies in the hyperplane
/// `sum x = 0`; coordinates are taken in the Helmert basis of that
/// hyperplane and scaled by sqrt(2).
pub fn regular_simplex_vertices(d: usize) -> Vec<Vec<f64>> {
    let m = d + 1;
    let scale = std::f64::consts::SQRT_2;
    (0..m)
        .map(|i| {
            (1..=d)
                .map(|k| {
                    // k-th Helmert vector: k ones, then -k, then zeros.
                    let norm = ((k * (k + 1)) as f64).sqrt();
                    let component = match i.cmp(&k) {
                        Ordering::Less => 1.0,
                        Ordering::Equal => -(k as f64),
                        Ordering::Greater => 0.0,
                    };
                    scale * component / norm
                })
                .collect()
        })
        .collect()
}

/// Radius of the ball at the centre of a side-2 regular d-simplex of unit
/// balls that touches all of them.
pub fn simplex_inner_radius(d: usize) -> f64 {
    (2.0 * d as f64 / (d as f64 + 1.0)).sqrt() - 1.0
}

/// `d + 2` mutually tangent balls in R^d.
pub fn simplex_clique(d: usize) -> Result<Configuration, ConstructionError> {
    if d < 2 {
        return Err(ConstructionError::SimplexDimension(d));
    }
    let mut balls = regular_simplex_vertices(d)
        .into_iter()
        .map(Ball::unit_f64)
        .collect::<Result<Vec<_>, _>>()?;
    balls.push(Ball::f64(vec![0.0; d], simplex_inner_radius(d))?);
    let n = balls.len();
    let declared = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Ok(Configuration::new(d, ScalarMode::F64, balls, TolerancePolicy::default(), Some(declared))?)
}

/// Central unit ball at the origin plus the kissing arrangement for
/// `d` in {1, 2, 3, 4, 8}.
pub fn kissing_configuration(d: usize) -> Result<Configuration, ConstructionError> {
    let centers: Vec<Vec<f64>> = match d {
        1 => vec![vec![-2.0], vec![2.0]],
        2 => (0..6)
            .map(|k| {
                let t = k as f64 * std::f64::consts::FRAC_PI_3;
                vec![2.0 * t.cos(), 2.0 * t.sin()]
            })
            .collect(),
        3 | 4 => scaled(d_n_roots(d)),
        8 => scaled(e8_roots()),
        other => return Err(ConstructionError::UnsupportedKissingDimension(other)),
    };
    let mut balls = vec![Ball::unit_f64(vec![0.0; d])?];
    for c in centers {
        balls.push(Ball::unit_f64(c)?);
    }
    let declared = (1..balls.len()).map(|j| (0, j)).collect();
    Ok(Configuration::new(d, ScalarMode::F64, balls, TolerancePolicy::default(), Some(declared))?)
}

fn scaled(roots: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    roots
        .into_iter()
        .map(|r| r.into_iter().map(|x| x * std::f64::consts::SQRT_2).collect())
        .collect()
}

/// Minimal vectors of D_n: all permutations of (±1, ±1, 0, ..., 0).
fn d_n_roots(n: usize) -> Vec<Vec<f64>> {
    let mut roots = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let mut v = vec![0.0; n];
                v[i] = si;
                v[j] = sj;
                roots.push(v);
            }
        }
    }
    roots
}

/// The 240 roots of E8: the 112 D8 roots and the 128 vectors (±1/2)^8 with
/// an even number of minus signs.
fn e8_roots() -> Vec<Vec<f64>> {
    let mut roots = d_n_roots(8);
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            roots.push((0..8).map(|b| if mask >> b & 1 == 1 { -0.5 } else { 0.5 }).collect());
        }
    }
    roots
}

/// Replaces every ball tangent to ball `index` by a ball of the same radius
/// as `index`, touching it at the same point, and drops all other balls.
///
/// The result keeps the original relative order. It is validated before it is
/// returned, so the claim that shrinking keeps the balls non-overlapping is
/// checked on every call.
pub fn shrink_to_index(cfg: &Configuration, index: usize) -> Result<Configuration, ConstructionError> {
    if index >= cfg.len() {
        return Err(ConstructionError::IndexOutOfRange { index, len: cfg.len() });
    }
    let graph = build_graph(cfg)?;
    let balls = cfg.balls();
    let pivot = &balls[index];
    for &w in graph.neighbours(index) {
        if balls[w].radius().try_cmp(pivot.radius())? == Ordering::Less {
            return Err(ConstructionError::SmallerNeighbour { index, neighbour: w });
        }
    }

    let mut kept = Vec::new();
    let mut new_index = 0;
    for (v, ball) in balls.iter().enumerate() {
        if v == index {
            new_index = kept.len();
            kept.push(pivot.clone());
        } else if graph.has_edge(index, v) {
            kept.push(shrink_toward(pivot, ball)?);
        }
    }
    let declared = (0..kept.len())
        .filter(|&j| j != new_index)
        .map(|j| (new_index.min(j), new_index.max(j)))
        .collect();
    let shrunk = Configuration::new(cfg.dimension(), cfg.mode(), kept, cfg.policy(), Some(declared))?;
    if let Err(e) = build_graph(&shrunk) {
        return Err(ConstructionError::ShrinkBroken(e.to_string()));
    }
    Ok(shrunk)
}

fn shrink_toward(pivot: &Ball, neighbour: &Ball) -> Result<Ball, ConstructionError> {
    match (pivot.center(), neighbour.center(), pivot.radius(), neighbour.radius()) {
        (Point::Rational(c), Point::Rational(w), Scalar::Rational(r), Scalar::Rational(rw)) => {
            // Tangent centres are exactly r + rw apart, so the new centre is rational.
            let t: BigRational = (r + r) / (r + rw);
            let center = c.iter().zip(w).map(|(a, b)| a + (b - a) * &t).collect();
            Ok(Ball::rational(center, r.clone())?)
        }
        (Point::F64(c), Point::F64(w), Scalar::F64(r), _) => {
            let dist = c.iter().zip(w).map(|(a, b)| (b - a) * (b - a)).sum::<f64>().sqrt();
            let center = c.iter().zip(w).map(|(a, b)| a + (b - a) * (2.0 * r / dist)).collect();
            Ok(Ball::f64(center, *r)?)
        }
        _ => Err(GeometryError::ModeMismatch {
            left: pivot.mode(),
            right: neighbour.mode(),
        }
        .into()),
    }
}

/// `3^d - 1`: at most that many unit balls can touch a unit ball, because the
/// whole arrangement fits in a concentric ball of radius 3.
pub fn volume_kissing_bound(d: usize) -> Result<u128, ConstructionError> {
    if d == 0 {
        return Err(ConstructionError::ZeroDimension);
    }
    pow3(d).map(|p| p - 1)
}

fn pow3(d: usize) -> Result<u128, ConstructionError> {
    u32::try_from(d)
        .ok()
        .and_then(|e| 3u128.checked_pow(e))
        .ok_or(ConstructionError::Overflow(d))
}

/// One row of the bound table for dimension `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub dimension: usize,
    /// `d + 2` from the simplex clique (2 in dimension 1).
    pub lower: u128,
    pub kappa: Option<u128>,
    pub kappa_crude: u128,
    /// `kappa + 1` when the kissing number is known, else `3^d`.
    pub upper: u128,
    pub chi_known: Option<u128>,
    /// `kappa` in the dimensions with a unique kissing arrangement.
    pub magic_upper: Option<u128>,
}

impl BoundsRow {
    /// Row invariants: lower <= upper, kappa <= crude bound, and any known or
    /// improved value sits inside [lower, upper].
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.lower > self.upper {
            out.push(format!("d={}: lower {} > upper {}", self.dimension, self.lower, self.upper));
        }
        if let Some(k) = self.kappa {
            if k > self.kappa_crude {
                out.push(format!("d={}: kappa {} > crude bound {}", self.dimension, k, self.kappa_crude));
            }
        }
        for (name, value) in [("chi_known", self.chi_known), ("magic_upper", self.magic_upper)] {
            if let Some(v) = value {
                if v < self.lower || v > self.upper {
                    out.push(format!("d={}: {name} {v} outside [{}, {}]", self.dimension, self.lower, self.upper));
                }
            }
        }
        out
    }

    pub fn holds(&self) -> bool {
        self.violations().is_empty()
    }
}

pub fn bounds_for_dimension(d: usize) -> Result<BoundsRow, ConstructionError> {
    let kappa_crude = volume_kissing_bound(d)?;
    let kappa = known_kissing_number(d);
    let upper = match kappa {
        Some(k) => k + 1,
        None => pow3(d)?,
    };
    let lower = if d == 1 { 2 } else { d as u128 + 2 };
    let chi_known = match d {
        1 => Some(2),
        2 => Some(4),
        _ => None,
    };
    let magic_upper = if MAGIC_DIMENSIONS.contains(&d) { kappa } else { None };
    Ok(BoundsRow {
        dimension: d,
        lower,
        kappa,
        kappa_crude,
        upper,
        chi_known,
        magic_upper,
    })
}

/// Aligned plain-text rendering of bound rows.
pub fn bounds_table(rows: &[BoundsRow]) -> String {
    let cell = |v: Option<u128>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>3} {:>6} {:>16} {:>8} {:>6} {:>12} {:>32}",
        "d", "lower", "upper", "chi", "magic", "kappa", "kappa_crude"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>3} {:>6} {:>16} {:>8} {:>6} {:>12} {:>32}",
            r.dimension,
            r.lower,
            r.upper,
            cell(r.chi_known),
            cell(r.magic_upper),
            cell(r.kappa),
            r.kappa_crude
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{chromatic_number, DEFAULT_BUDGET};
    use crate::geometry::validate_configuration;

    #[test]
    fn simplex_vertices_have_side_two_and_centroid_zero() {
        for d in 1..=8 {
            let vs = regular_simplex_vertices(d);
            assert_eq!(vs.len(), d + 1);
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    let dist2: f64 = vs[i].iter().zip(&vs[j]).map(|(a, b)| (a - b) * (a - b)).sum();
                    assert!((dist2 - 4.0).abs() < 1e-12, "d={d} side^2={dist2}");
                }
            }
            for axis in 0..d {
                let s: f64 = vs.iter().map(|v| v[axis]).sum();
                assert!(s.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn inner_radius_matches_centroid_distance() {
        // Brute force: distance from the centroid (origin) to any vertex, minus 1.
        for d in 2..=6 {
            let v = &regular_simplex_vertices(d)[0];
            let circumradius = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((circumradius - 1.0 - simplex_inner_radius(d)).abs() < 1e-12);
        }
        assert!((simplex_inner_radius(2) - 0.154_700_538_379_251_5).abs() < 1e-12);
        assert!((simplex_inner_radius(3) - 0.224_744_871_391_589).abs() < 1e-12);
    }

    #[test]
    fn simplex_clique_is_valid_and_complete() {
        for d in 2..=6 {
            let cfg = simplex_clique(d).unwrap();
            let report = validate_configuration(&cfg);
            assert!(report.is_valid(), "d={d}: {report:?}");
            assert_eq!(report.tangent_pairs, (d + 2) * (d + 1) / 2);
            let g = build_graph(&cfg).unwrap();
            assert_eq!(g.edge_count(), (d + 2) * (d + 1) / 2);
            let r = chromatic_number(&g, DEFAULT_BUDGET);
            assert!(r.exact);
            assert_eq!(r.upper, d + 2);
        }
        assert!(matches!(simplex_clique(1), Err(ConstructionError::SimplexDimension(1))));
    }

    #[test]
    fn kissing_counts() {
        for (d, kappa) in [(1, 2), (2, 6), (3, 12), (4, 24), (8, 240)] {
            let cfg = kissing_configuration(d).unwrap();
            assert_eq!(cfg.len(), kappa + 1);
            let g = build_graph(&cfg).unwrap();
            assert_eq!(g.degree(0), kappa, "d={d}");
        }
        assert!(kissing_configuration(24).is_err());
        assert!(kissing_configuration(5).is_err());
    }

    #[test]
    fn fcc_shell_is_a_cuboctahedron() {
        let g = build_graph(&kissing_configuration(3).unwrap()).unwrap();
        let shell: Vec<(usize, usize)> = g.edges().iter().copied().filter(|&(i, _)| i != 0).collect();
        assert_eq!(shell.len(), 24);
        assert!((1..13).all(|v| g.degree(v) == 5));
    }

    #[test]
    fn shrink_is_identity_on_kissing_centre() {
        let cfg = kissing_configuration(3).unwrap();
        let shrunk = shrink_to_index(&cfg, 0).unwrap();
        assert_eq!(shrunk.len(), 13);
        for (a, b) in shrunk.balls().iter().zip(cfg.balls()) {
            let (pa, pb) = (a.center().to_f64_vec(), b.center().to_f64_vec());
            assert!(pa.iter().zip(&pb).all(|(x, y)| (x - y).abs() < 1e-12));
            assert_eq!(a.radius(), b.radius());
        }
    }

    #[test]
    fn shrink_simplex_onto_inner_ball() {
        let cfg = simplex_clique(3).unwrap();
        let shrunk = shrink_to_index(&cfg, 4).unwrap();
        assert_eq!(shrunk.len(), 5);
        let r = simplex_inner_radius(3);
        assert!(shrunk.balls().iter().all(|b| (b.radius().to_f64() - r).abs() < 1e-15));
        let g = build_graph(&shrunk).unwrap();
        assert_eq!(g.degree(4), 4);
    }

    #[test]
    fn shrink_two_balls_exactly() {
        let q = |n: i64| BigRational::from_integer(n.into());
        let cfg = Configuration::new(
            2,
            ScalarMode::Rational,
            vec![
                Ball::rational(vec![q(0), q(0)], q(1)).unwrap(),
                Ball::rational(vec![q(6), q(0)], q(5)).unwrap(),
            ],
            TolerancePolicy::Exact,
            None,
        )
        .unwrap();
        let shrunk = shrink_to_index(&cfg, 0).unwrap();
        let moved = &shrunk.balls()[1];
        assert_eq!(moved.center(), &Point::Rational(vec![q(2), q(0)]));
        assert_eq!(moved.radius(), &Scalar::Rational(q(1)));
        assert!(matches!(
            shrink_to_index(&cfg, 1),
            Err(ConstructionError::SmallerNeighbour { index: 1, neighbour: 0 })
        ));
        assert!(matches!(shrink_to_index(&cfg, 2), Err(ConstructionError::IndexOutOfRange { .. })));
    }

    #[test]
    fn volume_bound_values() {
        assert_eq!(volume_kissing_bound(1).unwrap(), 2);
        assert_eq!(volume_kissing_bound(2).unwrap(), 8);
        assert_eq!(volume_kissing_bound(3).unwrap(), 26);
        assert!(volume_kissing_bound(0).is_err());
        assert!(volume_kissing_bound(81).is_err());
    }

    #[test]
    fn bound_rows() {
        let r3 = bounds_for_dimension(3).unwrap();
        assert_eq!((r3.lower, r3.upper), (5, 13));
        let r2 = bounds_for_dimension(2).unwrap();
        assert_eq!((r2.chi_known, r2.magic_upper, r2.upper), (Some(4), Some(6), 7));
        let r5 = bounds_for_dimension(5).unwrap();
        assert_eq!((r5.lower, r5.kappa, r5.upper), (7, None, 243));
        let r1 = bounds_for_dimension(1).unwrap();
        assert_eq!((r1.lower, r1.upper, r1.chi_known, r1.magic_upper), (2, 3, Some(2), Some(2)));
        let r8 = bounds_for_dimension(8).unwrap();
        assert_eq!(r8.magic_upper, Some(240));
        for d in 1..=64 {
            assert!(bounds_for_dimension(d).unwrap().holds(), "d={d}");
        }
    }
}
