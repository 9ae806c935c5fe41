//! Reference instances shipped with the crate.

/// Degree-3 Harnack curve (`n = 3`); its real part has two components.
pub const HARNACK_CUBIC: &str = include_str!("../data/harnack_cubic.inst");

/// Cubic surface (`n = 4`) on a full, non-unimodular triangulation with
/// f-vector `(20, 60, 64, 23)`; real part has Betti vector `(2, 1, 2)`.
pub const CUBIC_SURFACE_212: &str = include_str!("../data/cubic_surface_212.inst");
