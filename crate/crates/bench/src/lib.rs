//! Shared inputs for the benches.

use gdl_core::families::{symplectic_planes, SymplecticWhich};
use gdl_core::{Family, Space};

pub fn space(q: u32, n: usize) -> Space {
    Space::of(q, n).expect("valid field order")
}

/// Isotropic planes of the symplectic form on `F_q^6`.
pub fn isotropic_planes(q: u32) -> Family {
    symplectic_planes(&space(q, 6), SymplecticWhich::Isotropic).expect("n = 6 is supported").family
}
