//! Integral Apollonian gaskets in exact rational arithmetic.
//!
//! Circles are tracked by signed curvature `k` and the complex product
//! `w = k z` of curvature and centre. Replacing one circle of a mutually
//! tangent quadruple by the other circle tangent to the remaining three is
//! linear in both: `k' = 2(k1 + k2 + k3) - k4` and likewise for `w`.

use std::collections::BTreeSet;
use std::ops::{Add, Mul, Sub};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::geometry::{rational_sqrt, Ball, Configuration, GeometryError, Scalar, ScalarMode, TolerancePolicy};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DescartesError {
    #[error("negative discriminant k1k2 + k2k3 + k3k1 = {0}")]
    NegativeDiscriminant(String),
    #[error("square root of {0} is irrational; use binary64 curvatures")]
    IrrationalRoot(String),
    #[error("invalid root quadruple: {0}")]
    InvalidRoot(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// The two curvatures of circles tangent to three mutually tangent circles:
/// `k1 + k2 + k3 ± 2 sqrt(k1k2 + k2k3 + k3k1)`, larger first.
///
/// Rational inputs need a rational square root; binary64 inputs are computed
/// directly.
pub fn descartes_fourth_curvature(k1: &Scalar, k2: &Scalar, k3: &Scalar) -> Result<(Scalar, Scalar), DescartesError> {
    match (k1, k2, k3) {
        (Scalar::Rational(a), Scalar::Rational(b), Scalar::Rational(c)) => {
            let disc = a * b + b * c + c * a;
            if disc.is_negative() {
                return Err(DescartesError::NegativeDiscriminant(Scalar::Rational(disc).to_string()));
            }
            let root = rational_sqrt(&disc).ok_or_else(|| DescartesError::IrrationalRoot(Scalar::Rational(disc.clone()).to_string()))?;
            let sum = a + b + c;
            let two_root = &root + &root;
            Ok((Scalar::Rational(&sum + &two_root), Scalar::Rational(sum - two_root)))
        }
        (Scalar::F64(a), Scalar::F64(b), Scalar::F64(c)) => {
            let disc = a * b + b * c + c * a;
            if disc < 0.0 {
                return Err(DescartesError::NegativeDiscriminant(disc.to_string()));
            }
            let sum = a + b + c;
            let two_root = 2.0 * disc.sqrt();
            Ok((Scalar::F64(sum + two_root), Scalar::F64(sum - two_root)))
        }
        _ => Err(GeometryError::ModeMismatch {
            left: k1.mode(),
            right: if k2.mode() != k1.mode() { k2.mode() } else { k3.mode() },
        }
        .into()),
    }
}

/// Gaussian rational `re + im i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Complex {
    re: BigRational,
    im: BigRational,
}

impl Complex {
    fn zero() -> Complex {
        Complex {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn scale(&self, k: &BigRational) -> Complex {
        Complex {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    fn norm2(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact principal square root, when both parts are rational.
    fn sqrt(&self) -> Option<Complex> {
        let modulus = rational_sqrt(&self.norm2())?;
        let two = BigRational::from_integer(2.into());
        let re = rational_sqrt(&((&modulus + &self.re) / &two))?;
        let mut im = rational_sqrt(&((&modulus - &self.re) / &two))?;
        if self.im.is_negative() {
            im = -im;
        }
        Some(Complex { re, im })
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        Complex {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        Complex {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        Complex {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

#[derive(Debug, Clone)]
struct Circle {
    curvature: BigRational,
    /// curvature times centre
    weighted: Complex,
}

impl Circle {
    fn center(&self) -> Complex {
        self.weighted.scale(&self.curvature.recip())
    }
}

/// Signed curvature tangency: `|z_i - z_j| = |1/k_i + 1/k_j|`, which covers
/// internal tangency to the enclosing circle (negative curvature) too.
fn tangent(a: &Circle, b: &Circle) -> bool {
    let gap = (&a.center() - &b.center()).norm2();
    let reach = a.curvature.recip() + b.curvature.recip();
    gap == &reach * &reach
}

/// Four mutually tangent circles: curvatures and rational centres.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescartesQuadruple {
    pub curvatures: [BigRational; 4],
    pub centers: [(BigRational, BigRational); 4],
}

impl DescartesQuadruple {
    /// `(k1 + k2 + k3 + k4)^2 == 2 (k1^2 + k2^2 + k3^2 + k4^2)`, exactly.
    pub fn satisfies_descartes(&self) -> bool {
        let sum: BigRational = self.curvatures.iter().cloned().sum();
        let squares: BigRational = self.curvatures.iter().map(|k| k * k).sum();
        &sum * &sum == &squares + &squares
    }

    /// The complex form of the identity on `w = k z`.
    pub fn satisfies_complex_descartes(&self) -> bool {
        let w: Vec<Complex> = self
            .curvatures
            .iter()
            .zip(&self.centers)
            .map(|(k, (x, y))| Complex {
                re: k * x,
                im: k * y,
            })
            .collect();
        let sum = w.iter().fold(Complex::zero(), |acc, z| &acc + z);
        let squares = w.iter().fold(Complex::zero(), |acc, z| &acc + &(z * z));
        &sum * &sum == &squares + &squares
    }
}

/// Interior circles of a gasket as an exact configuration, plus every
/// quadruple visited while building it.
#[derive(Debug, Clone)]
pub struct Gasket {
    pub configuration: Configuration,
    /// Signed curvature of each configuration ball, in ball order.
    pub curvatures: Vec<BigRational>,
    pub quadruples: Vec<DescartesQuadruple>,
}

/// Builds the gasket generated by an integral root quadruple down to `depth`
/// levels of reflection.
///
/// Exactly one root curvature must be negative: that circle encloses the
/// rest. It is stored as the configuration's enclosing ball and takes no part
/// in contact checks. Depth 0 yields the three interior root circles; each
/// further level reflects every circle of each new quadruple except the one
/// just created.
pub fn apollonian_gasket(root: [i64; 4], depth: usize) -> Result<Gasket, DescartesError> {
    let curvatures = root.map(|k| BigRational::from_integer(k.into()));
    let negatives = curvatures.iter().filter(|k| k.is_negative()).count();
    if negatives != 1 || curvatures.iter().any(|k| k.is_zero()) {
        return Err(DescartesError::InvalidRoot(format!(
            "need exactly one negative curvature and no zero curvature, got {root:?}"
        )));
    }
    let probe = DescartesQuadruple {
        curvatures: curvatures.clone(),
        centers: std::array::from_fn(|_| (BigRational::zero(), BigRational::zero())),
    };
    if !probe.satisfies_descartes() {
        return Err(DescartesError::InvalidRoot(format!("{root:?} violates the Descartes identity")));
    }
    let mut ordered = curvatures.to_vec();
    let outer = ordered.iter().position(|k| k.is_negative()).expect("one negative");
    let enclosing = ordered.remove(outer);
    let mut circles = place_root(&enclosing, &ordered[0], &ordered[1], &ordered[2])?;

    let mut quadruples = Vec::new();
    let mut tangencies = BTreeSet::new();
    let mut frontier: Vec<([usize; 4], Option<usize>)> = vec![([0, 1, 2, 3], None)];
    record(&circles, [0, 1, 2, 3], &mut quadruples, &mut tangencies);
    for _ in 0..depth {
        let mut next = Vec::new();
        for (quad, fresh) in frontier {
            for slot in 0..4 {
                if Some(slot) == fresh {
                    continue;
                }
                let others: Vec<&Circle> = (0..4).filter(|&s| s != slot).map(|s| &circles[quad[s]]).collect();
                let old = &circles[quad[slot]];
                let ksum = others.iter().fold(BigRational::zero(), |acc, c| acc + &c.curvature);
                let wsum = others.iter().fold(Complex::zero(), |acc, c| &acc + &c.weighted);
                let curvature = &ksum + &ksum - &old.curvature;
                if !curvature.is_positive() {
                    return Err(DescartesError::InvalidRoot(format!(
                        "reflection produced non-positive curvature {}",
                        Scalar::Rational(curvature)
                    )));
                }
                let weighted = &(&wsum + &wsum) - &old.weighted;
                circles.push(Circle { curvature, weighted });
                let mut child = quad;
                child[slot] = circles.len() - 1;
                record(&circles, child, &mut quadruples, &mut tangencies);
                next.push((child, Some(slot)));
            }
        }
        frontier = next;
    }

    let mut balls = Vec::with_capacity(circles.len() - 1);
    let mut interior_curvatures = Vec::with_capacity(circles.len() - 1);
    for circle in &circles[1..] {
        let z = circle.center();
        balls.push(Ball::rational(vec![z.re, z.im], circle.curvature.recip())?);
        interior_curvatures.push(circle.curvature.clone());
    }
    let outer_circle = &circles[0];
    let outer_center = outer_circle.center();
    let enclosing_ball = Ball::rational(vec![outer_center.re, outer_center.im], outer_circle.curvature.recip().abs())?;
    let declared = tangencies.into_iter().collect();
    let configuration = Configuration::new(2, ScalarMode::Rational, balls, TolerancePolicy::Exact, Some(declared))?
        .with_enclosing(enclosing_ball)?;
    Ok(Gasket {
        configuration,
        curvatures: interior_curvatures,
        quadruples,
    })
}

/// Records a quadruple and the tangencies among its interior circles, as
/// configuration ball indices (circle id minus one).
fn record(
    circles: &[Circle],
    quad: [usize; 4],
    quadruples: &mut Vec<DescartesQuadruple>,
    tangencies: &mut BTreeSet<(usize, usize)>,
) {
    quadruples.push(DescartesQuadruple {
        curvatures: quad.map(|i| circles[i].curvature.clone()),
        centers: quad.map(|i| {
            let z = circles[i].center();
            (z.re, z.im)
        }),
    });
    for a in 0..4 {
        for b in a + 1..4 {
            let (i, j) = (quad[a].min(quad[b]), quad[a].max(quad[b]));
            if i > 0 {
                tangencies.insert((i - 1, j - 1));
            }
        }
    }
}

/// Places the root quadruple: enclosing circle at the origin, the first
/// interior circle on the positive real axis, the second in the upper half
/// plane, and the third from the complex Descartes relation.
fn place_root(
    enclosing: &BigRational,
    k2: &BigRational,
    k3: &BigRational,
    k4: &BigRational,
) -> Result<Vec<Circle>, DescartesError> {
    let irrational = || DescartesError::InvalidRoot("root circles have irrational centres".to_string());
    let r1 = enclosing.recip().abs();
    let (r2, r3) = (k2.recip(), k3.recip());
    let c = &r1 - &r2;
    if !c.is_positive() {
        return Err(DescartesError::InvalidRoot("interior circle fills the enclosing circle".to_string()));
    }
    // |z3| = r1 - r3 and |z3 - c| = r2 + r3.
    let a = &r1 - &r3;
    let b = &r2 + &r3;
    let two = BigRational::from_integer(2.into());
    let x = (&a * &a - &b * &b + &c * &c) / (&two * &c);
    let y = rational_sqrt(&(&a * &a - &x * &x)).ok_or_else(irrational)?;

    let at = |k: &BigRational, re: BigRational, im: BigRational| Circle {
        curvature: k.clone(),
        weighted: Complex { re, im }.scale(k),
    };
    let first = at(enclosing, BigRational::zero(), BigRational::zero());
    let second = at(k2, c, BigRational::zero());
    let third = at(k3, x, y);

    let w = [&first.weighted, &second.weighted, &third.weighted];
    let cross = &(&(w[0] * w[1]) + &(w[1] * w[2])) + &(w[2] * w[0]);
    let root = cross.sqrt().ok_or_else(irrational)?;
    let base = &(w[0] + w[1]) + w[2];
    let twice = &root + &root;
    for weighted in [&base + &twice, &base - &twice] {
        let candidate = Circle {
            curvature: k4.clone(),
            weighted,
        };
        if [&first, &second, &third].iter().all(|c| tangent(c, &candidate)) {
            return Ok(vec![first, second, third, candidate]);
        }
    }
    Err(DescartesError::InvalidRoot("no placement of the fourth root circle is tangent to the others".to_string()))
}
