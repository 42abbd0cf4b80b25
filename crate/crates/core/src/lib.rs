//! Exact arithmetic for residual perfections of complete discrete valuation
//! rings in characteristic p, ramification filtrations and Artin conductors.

#![no_std]

extern crate alloc;

pub mod conductor;
pub mod expr;
pub mod group;
pub mod perfection;
pub mod pfield;
pub mod ramification;
pub mod sample;
pub mod series;
pub mod witt;

pub use pfield::{PElem, PField, PfError};

/// Exact rationals for Herbrand functions and conductors.
pub type Q = num_rational::Ratio<i128>;
