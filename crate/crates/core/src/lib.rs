//! Quantitative ping-pong for pseudo-Anosov classes acting on the
//! Teichmüller space of the torus, modelled as the upper half-plane.

pub mod cli;
pub mod error;
pub mod exact;
pub mod hyp2;
pub mod mcg;
pub mod numeric;
pub mod oracle;
pub mod pingpong;
pub mod projection;
pub mod torus_model;

pub use error::{Error, Result};
pub use hyp2::{BoundaryPoint, Geodesic, Mobius, Point};
pub use mcg::{AxisData, Classification, MappingClass};
pub use torus_model::{Slope, ThickParams};
