//! Zeta functions and prime geodesic counting for compact locally symmetric
//! spaces of SL(4,R), attached to the parabolic of type (2,2).

pub mod cartan;
pub mod euler_char;
pub mod inf_chars;
pub mod km_ring;
pub mod numeric;
pub mod spectrum;
pub mod zeta;
pub mod counting;
