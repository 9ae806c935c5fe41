//! Combinatorial patchworking of real tropical hypersurfaces.
//!
//! Given a homogeneous tropical polynomial supported on all lattice points
//! of a dilated simplex and a sign on each monomial, the pipeline computes
//! the Z/2 Betti numbers of the real part of the patchworked hypersurface:
//!
//! 1. the regular subdivision dual to the hypersurface ([`subdivision`]),
//! 2. the face poset of the compactified hypersurface ([`hypersurface`]),
//! 3. the cellular chain complex of its real part ([`phase`], [`homology`]),
//! 4. ranks of the boundary maps over GF(2).

pub mod data;
pub mod generators;
pub mod homology;
pub mod hypersurface;
pub mod instance;
mod linalg;
pub mod phase;
pub mod pipeline;
pub mod subdivision;

pub use generators::{GeneratorConfig, GeneratorError};
pub use homology::{BettiVector, RealPartComplex};
pub use hypersurface::{CompactCell, HypersurfacePoset};
pub use instance::{
    lattice_point_count, lattice_points, parse_instance, write_instance, ExponentVector, Instance,
    InstanceError, SignDistribution, Term, TropicalPolynomial,
};
pub use phase::{OrbitClass, Orthant, OrthantSet, PhaseStructure};
pub use pipeline::{betti_numbers, Patchwork, PipelineError};
pub use subdivision::{Face, FacePoset, RegularSubdivision, SubdivisionError};
