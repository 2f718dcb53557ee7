use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Zero;

use super::{Ball, Configuration, GeometryError, Point, Scalar, ScalarMode, TolerancePolicy};

/// How two closed balls meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContactClass {
    /// The balls share interior points.
    Overlap,
    /// The balls meet in a single boundary point.
    Tangent,
    Disjoint,
}

/// Sum of squared coordinate differences, exact for rational points.
pub fn squared_distance(p: &Point, q: &Point) -> Result<Scalar, GeometryError> {
    if p.dimension() != q.dimension() {
        return Err(GeometryError::DimensionMismatch {
            left: p.dimension(),
            right: q.dimension(),
        });
    }
    match (p, q) {
        (Point::Rational(a), Point::Rational(b)) => Ok(Scalar::Rational(rational_distance2(a, b))),
        (Point::F64(a), Point::F64(b)) => {
            let d2 = f64_distance2(a, b);
            if d2.is_finite() {
                Ok(Scalar::F64(d2))
            } else {
                Err(GeometryError::NonFinite("squared distance"))
            }
        }
        _ => Err(GeometryError::ModeMismatch {
            left: p.mode(),
            right: q.mode(),
        }),
    }
}

/// Classifies the contact between two balls under a tolerance policy.
///
/// Exact mode compares the squared centre distance with the squared sum of
/// radii by strict trichotomy. Approximate mode treats relative differences
/// up to `rel_eps` (against the squared sum of radii) as tangency.
pub fn classify_pair(a: &Ball, b: &Ball, policy: TolerancePolicy) -> Result<ContactClass, GeometryError> {
    if a.dimension() != b.dimension() {
        return Err(GeometryError::DimensionMismatch {
            left: a.dimension(),
            right: b.dimension(),
        });
    }
    if a.mode() != b.mode() {
        return Err(GeometryError::ModeMismatch {
            left: a.mode(),
            right: b.mode(),
        });
    }
    if policy == TolerancePolicy::Exact && a.mode() != ScalarMode::Rational {
        return Err(GeometryError::ExactNeedsRational);
    }
    classify_cached(a, &Approx::of(a), b, &Approx::of(b), policy)
}

/// Binary64 shadow of a ball, used for approximate classification and as the
/// fast filter in front of exact rational comparisons.
pub(crate) struct Approx {
    center: Vec<f64>,
    radius: f64,
    magnitude: f64,
}

impl Approx {
    pub(crate) fn of(ball: &Ball) -> Approx {
        let center = ball.center().to_f64_vec();
        let radius = ball.radius().to_f64();
        let magnitude = center.iter().fold(radius.abs(), |m, x| m.max(x.abs()));
        Approx {
            center,
            radius,
            magnitude,
        }
    }
}

fn classify_cached(
    a: &Ball,
    aa: &Approx,
    b: &Ball,
    ab: &Approx,
    policy: TolerancePolicy,
) -> Result<ContactClass, GeometryError> {
    let d2 = f64_distance2(&aa.center, &ab.center);
    let s = aa.radius + ab.radius;
    let s2 = s * s;
    match policy {
        TolerancePolicy::Approximate { rel_eps } => classify_approximate(d2, s2, rel_eps),
        TolerancePolicy::Exact => {
            if let Some(class) = filtered_exact(d2, s2, aa.magnitude.max(ab.magnitude), aa.center.len()) {
                return Ok(class);
            }
            let (Point::Rational(ca), Scalar::Rational(ra)) = (a.center(), a.radius()) else {
                return Err(GeometryError::ExactNeedsRational);
            };
            let (Point::Rational(cb), Scalar::Rational(rb)) = (b.center(), b.radius()) else {
                return Err(GeometryError::ExactNeedsRational);
            };
            let sum = ra + rb;
            Ok(from_ordering(rational_distance2(ca, cb).cmp(&(&sum * &sum))))
        }
    }
}

/// Approximate classification on raw binary64 centres and radii.
pub(crate) fn classify_f64_parts(
    a: &[f64],
    ra: f64,
    b: &[f64],
    rb: f64,
    rel_eps: f64,
) -> Result<ContactClass, GeometryError> {
    let s = ra + rb;
    classify_approximate(f64_distance2(a, b), s * s, rel_eps)
}

fn classify_approximate(d2: f64, s2: f64, rel_eps: f64) -> Result<ContactClass, GeometryError> {
    if !d2.is_finite() || !s2.is_finite() {
        return Err(GeometryError::NonFinite("squared distance"));
    }
    if (d2 - s2).abs() <= rel_eps * s2 {
        Ok(ContactClass::Tangent)
    } else if d2 < (1.0 - rel_eps) * s2 {
        Ok(ContactClass::Overlap)
    } else {
        Ok(ContactClass::Disjoint)
    }
}

/// Decides `sign(d2 - s2)` from binary64 shadows when the gap exceeds a
/// conservative bound on the accumulated rounding error; `None` means the
/// caller must fall back to exact arithmetic.
fn filtered_exact(d2: f64, s2: f64, magnitude: f64, dimension: usize) -> Option<ContactClass> {
    if !(1e-100..=1e100).contains(&magnitude) || !d2.is_finite() || !s2.is_finite() {
        return None;
    }
    let terms = (dimension + 2) as f64;
    let bound = 128.0 * terms * terms * f64::EPSILON * magnitude * magnitude;
    let gap = d2 - s2;
    if gap > bound {
        Some(ContactClass::Disjoint)
    } else if gap < -bound {
        Some(ContactClass::Overlap)
    } else {
        None
    }
}

fn from_ordering(ord: Ordering) -> ContactClass {
    match ord {
        Ordering::Less => ContactClass::Overlap,
        Ordering::Equal => ContactClass::Tangent,
        Ordering::Greater => ContactClass::Disjoint,
    }
}

fn rational_distance2(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| {
        let d = x - y;
        acc + &d * &d
    })
}

fn f64_distance2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Result of a full pairwise scan over a configuration.
pub(crate) struct PairScan {
    /// Tangent pairs, lexicographically sorted.
    pub tangent: Vec<(usize, usize)>,
    /// Overlapping pairs, lexicographically sorted.
    pub overlaps: Vec<(usize, usize)>,
    pub disjoint: usize,
}

pub(crate) fn scan_pairs(cfg: &Configuration) -> Result<PairScan, GeometryError> {
    let balls = cfg.balls();
    let shadows: Vec<Approx> = balls.iter().map(Approx::of).collect();
    let mut scan = PairScan {
        tangent: Vec::new(),
        overlaps: Vec::new(),
        disjoint: 0,
    };
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            match classify_cached(&balls[i], &shadows[i], &balls[j], &shadows[j], cfg.policy())? {
                ContactClass::Tangent => scan.tangent.push((i, j)),
                ContactClass::Overlap => scan.overlaps.push((i, j)),
                ContactClass::Disjoint => scan.disjoint += 1,
            }
        }
    }
    Ok(scan)
}

/// Outcome of checking a configuration's pairwise invariants.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub pair_count: usize,
    pub tangent_pairs: usize,
    pub disjoint_pairs: usize,
    /// Every overlapping pair; must be empty for a valid configuration.
    pub overlaps: Vec<(usize, usize)>,
    /// Declared tangencies that did not classify as tangent.
    pub failed_declared: Vec<(usize, usize)>,
    /// Set when classification itself failed (e.g. overflow to infinity).
    pub classification_error: Option<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.overlaps.is_empty() && self.failed_declared.is_empty() && self.classification_error.is_none()
    }
}

pub fn validate_configuration(cfg: &Configuration) -> ValidationReport {
    let n = cfg.len();
    let mut report = ValidationReport {
        pair_count: n * n.saturating_sub(1) / 2,
        ..Default::default()
    };
    let scan = match scan_pairs(cfg) {
        Ok(scan) => scan,
        Err(e) => {
            report.classification_error = Some(e.to_string());
            return report;
        }
    };
    report.tangent_pairs = scan.tangent.len();
    report.disjoint_pairs = scan.disjoint;
    if let Some(declared) = cfg.declared_tangencies() {
        report.failed_declared = declared
            .iter()
            .filter(|p| scan.tangent.binary_search(p).is_err())
            .copied()
            .collect();
    }
    report.overlaps = scan.overlaps;
    report
}

/// Whether the tangency graph has a single component. The empty
/// configuration counts as connected.
pub fn is_connected(cfg: &Configuration) -> bool {
    let n = cfg.len();
    if n <= 1 {
        return true;
    }
    let Ok(scan) = scan_pairs(cfg) else {
        return false;
    };
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for (i, j) in scan.tangent {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
            components -= 1;
        }
    }
    components == 1
}
