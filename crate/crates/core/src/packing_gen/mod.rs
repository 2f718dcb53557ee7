//! Instance generators.
//!
//! [`random_tangent_packing`] grows a connected packing one tangent ball at a
//! time from a seeded counter-based stream, in any dimension.
//! [`apollonian_gasket`] builds integral Apollonian gaskets in exact rational
//! arithmetic.

mod apollonian;
mod random;

pub use apollonian::{
    apollonian_gasket, descartes_fourth_curvature, DescartesError, DescartesQuadruple, Gasket,
};
pub use random::{random_tangent_packing, GenerationError, GeneratorParams, RadiusLaw, DEFAULT_MAX_REJECTIONS};
