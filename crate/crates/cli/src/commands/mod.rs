pub mod adjust;
pub mod arc;
pub mod astro;
pub mod convert;
pub mod curvature;
pub mod datum;
pub mod fixtures;
pub mod orbit;
pub mod project;
pub mod reduce;
