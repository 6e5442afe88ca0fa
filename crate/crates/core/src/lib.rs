//! Geodesy and topography kernels: reference ellipsoids, Cartesian/geodetic conversion,
//! differential geometry of curves and surfaces, spherical astronomy, conformal projections
//! (Mercator, Gauss sphere, UTM, Lambert), distance reduction, Keplerian orbits and
//! least-squares adjustment.
//!
//! Everything is generic over a [`Real`] scalar; the aliases below fix it to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod angle;
pub mod cartgeo;
pub mod diffgeo;
pub mod error;
pub mod geocore;
pub mod linalg;
pub mod lsq;
pub mod orbits;
pub mod polyroots;
pub mod projmaps;
pub mod quad;
pub mod reduce;
pub mod scalar;
pub mod sphastro;
pub mod vec3;

pub use error::{GeoError, Result};
pub use scalar::Real;

pub type Angle64 = angle::Angle<f64>;
pub type Ellipsoid64 = geocore::Ellipsoid<f64>;
pub type GeodeticCoord64 = cartgeo::GeodeticCoord<f64>;
pub type Vec3d = vec3::Vec3<f64>;
pub type Matrix64 = linalg::Matrix<f64>;
pub type PlaneCoord64 = projmaps::PlaneCoord<f64>;
pub type LambertZone64 = projmaps::LambertZone<f64>;
pub type Orbit64 = orbits::Orbit<f64>;
