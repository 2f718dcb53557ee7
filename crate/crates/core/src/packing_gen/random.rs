use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{classify_f64_parts, Ball, Configuration, ContactClass, GeometryError, ScalarMode, TolerancePolicy};

pub const DEFAULT_MAX_REJECTIONS: u32 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusLaw {
    Uniform { lo: f64, hi: f64 },
    Constant { r: f64 },
}

impl RadiusLaw {
    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match *self {
            RadiusLaw::Uniform { lo, hi } if lo < hi => rng.random_range(lo..=hi),
            RadiusLaw::Uniform { lo, .. } => lo,
            RadiusLaw::Constant { r } => r,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub dimension: usize,
    pub n: usize,
    pub seed: u64,
    pub radius_law: RadiusLaw,
    #[serde(default = "default_max_rejections")]
    pub max_rejections: u32,
}

fn default_max_rejections() -> u32 {
    DEFAULT_MAX_REJECTIONS
}

impl GeneratorParams {
    pub fn new(dimension: usize, n: usize, seed: u64, radius_law: RadiusLaw) -> GeneratorParams {
        GeneratorParams {
            dimension,
            n,
            seed,
            radius_law,
            max_rejections: DEFAULT_MAX_REJECTIONS,
        }
    }

    pub fn validate(&self) -> Result<(), GenerationError> {
        let bad = |msg: String| Err(GenerationError::InvalidParams(msg));
        if self.dimension == 0 {
            return bad("dimension must be at least 1".into());
        }
        if self.n == 0 {
            return bad("ball count must be at least 1".into());
        }
        if self.max_rejections == 0 {
            return bad("max_rejections must be positive".into());
        }
        match self.radius_law {
            RadiusLaw::Uniform { lo, hi } if !(lo > 0.0 && lo <= hi && hi.is_finite()) => {
                bad(format!("uniform radius law needs 0 < lo <= hi, got ({lo}, {hi})"))
            }
            RadiusLaw::Constant { r } if !(r > 0.0 && r.is_finite()) => bad(format!("constant radius must be positive, got {r}")),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenerationError {
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    /// Placement of ball `placed` failed `max_rejections` times; the balls
    /// placed so far are returned.
    #[error("generation stalled after {placed} of {target} balls")]
    Stalled {
        placed: usize,
        target: usize,
        partial: Box<Configuration>,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Random stream for ball `index`: one ChaCha key per seed, one stream per
/// ball, so each ball's draws do not depend on how many draws earlier balls
/// consumed.
fn ball_stream(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn unit_direction(rng: &mut ChaCha8Rng, dimension: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dimension).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Grows a packing from a ball at the origin. Every new ball is placed
/// tangent to a randomly chosen existing ball in a uniformly random
/// direction and rejected if it overlaps anything, so the result is valid and
/// connected.
pub fn random_tangent_packing(params: &GeneratorParams) -> Result<Configuration, GenerationError> {
    params.validate()?;
    let policy = TolerancePolicy::default();
    let rel_eps = policy.rel_eps().expect("approximate policy");
    let d = params.dimension;
    let mut centers: Vec<Vec<f64>> = Vec::with_capacity(params.n);
    let mut radii: Vec<f64> = Vec::with_capacity(params.n);
    let mut declared = Vec::new();

    let mut first = ball_stream(params.seed, 0);
    centers.push(vec![0.0; d]);
    radii.push(params.radius_law.sample(&mut first));

    for index in 1..params.n {
        let mut rng = ball_stream(params.seed, index);
        let mut placed = None;
        for _ in 0..params.max_rejections {
            let r = params.radius_law.sample(&mut rng);
            let anchor = rng.random_range(0..centers.len());
            let u = unit_direction(&mut rng, d);
            let reach = radii[anchor] + r;
            let c: Vec<f64> = centers[anchor].iter().zip(&u).map(|(a, x)| a + reach * x).collect();
            let mut clear = true;
            for (other, &ro) in centers.iter().zip(&radii) {
                if classify_f64_parts(&c, r, other, ro, rel_eps)? == ContactClass::Overlap {
                    clear = false;
                    break;
                }
            }
            if clear {
                placed = Some((c, r, anchor));
                break;
            }
        }
        match placed {
            Some((c, r, anchor)) => {
                declared.push((anchor, index));
                centers.push(c);
                radii.push(r);
            }
            None => {
                let partial = assemble(d, centers, radii, declared, policy)?;
                return Err(GenerationError::Stalled {
                    placed: index,
                    target: params.n,
                    partial: Box::new(partial),
                });
            }
        }
    }
    assemble(d, centers, radii, declared, policy)
}

fn assemble(
    dimension: usize,
    centers: Vec<Vec<f64>>,
    radii: Vec<f64>,
    declared: Vec<(usize, usize)>,
    policy: TolerancePolicy,
) -> Result<Configuration, GenerationError> {
    let balls = centers
        .into_iter()
        .zip(radii)
        .map(|(c, r)| Ball::f64(c, r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Configuration::new(dimension, ScalarMode::F64, balls, policy, Some(declared))?)
}
