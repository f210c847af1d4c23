//! Symbolic and numeric toolkit for mirror curves of toric Calabi-Yau
//! 3-orbifolds: extended stacky fans, secondary-fan wall crossings, framed
//! mirror curves, truncated disk-potential series, and numeric continuation
//! of curve branches across walls.

pub mod error;
pub mod exact;
pub mod fan;
pub mod gkz;
pub mod curve;
pub mod series;
pub mod numeric;
pub mod fixtures;

pub use error::{Error, Result};
