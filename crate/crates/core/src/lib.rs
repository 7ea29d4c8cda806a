#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod curves;
pub mod error;
pub mod family;
pub mod frontal;
pub mod gallery;
pub mod math;
pub mod series;
pub mod singularities;
pub mod vec3;

pub use error::{Error, Result};
pub use frontal::{build_front, FrontEvaluator, Quadruple};
pub use series::{Trig, TrigCurve3, TrigSeries};
pub use vec3::Vec3;
