//! Links of closed modular geodesics and their hyperbolic volumes.
//!
//! The pipeline runs from a squarefree radicand `m` to the narrow ideal
//! classes of `Q(√m)`, to cyclic words in the generators `x`, `y` of the
//! modular group, to a link diagram on the Lorenz template together with the
//! trefoil cusp, and finally to a hyperbolic volume computed from an ideal
//! triangulation of the complement.

#![no_std]

extern crate alloc;

pub mod arithmetic;
pub mod dilog;
pub mod drawing;
pub mod dt;
pub mod error;
pub mod gluing;
pub mod linalg;
pub mod moves;
pub mod link;
pub mod pd;
pub mod planarity;
pub mod solver;
pub mod survey;
pub mod template;
pub mod triangulation;
pub mod volume;
pub mod words;

pub use error::{Error, Result};
