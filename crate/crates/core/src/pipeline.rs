//! End-to-end Betti computation for one polynomial and any number of sign
//! distributions.

use thiserror::Error;

use crate::homology::{BettiVector, HomologyError, RealPartComplex};
use crate::hypersurface::{HypersurfaceError, HypersurfacePoset};
use crate::instance::{Instance, TropicalPolynomial};
use crate::phase::{PhaseError, PhaseStructure};
use crate::subdivision::{RegularSubdivision, SubdivisionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error("induced subdivision is not a triangulation")]
    NotTriangulation,
    #[error("induced triangulation is not full: {unused} lattice point(s) unused")]
    NotFull { unused: usize },
    #[error(transparent)]
    Hypersurface(#[from] HypersurfaceError),
    #[error(transparent)]
    Phase(#[from] PhaseError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// A full regular triangulation with the face poset of its dual
/// hypersurface, ready to be paired with sign distributions.
#[derive(Clone, Debug)]
pub struct Patchwork {
    subdivision: RegularSubdivision,
    poset: HypersurfacePoset,
}

impl Patchwork {
    pub fn new(f: &TropicalPolynomial) -> Result<Self, PipelineError> {
        Self::from_subdivision(RegularSubdivision::from_polynomial(f)?)
    }

    pub fn from_subdivision(subdivision: RegularSubdivision) -> Result<Self, PipelineError> {
        if !subdivision.is_triangulation() {
            return Err(PipelineError::NotTriangulation);
        }
        if !subdivision.is_full() {
            let unused = subdivision.points().len() - subdivision.used_points().len();
            return Err(PipelineError::NotFull { unused });
        }
        let poset = HypersurfacePoset::new(&subdivision)?;
        Ok(Self { subdivision, poset })
    }

    pub fn subdivision(&self) -> &RegularSubdivision {
        &self.subdivision
    }

    pub fn poset(&self) -> &HypersurfacePoset {
        &self.poset
    }

    /// `signs` in canonical lattice-point order.
    pub fn complex(&self, signs: &[bool]) -> Result<RealPartComplex, PipelineError> {
        let phases = PhaseStructure::new(&self.poset, signs)?;
        Ok(RealPartComplex::new(&self.poset, &phases))
    }

    pub fn betti(&self, signs: &[bool]) -> Result<BettiVector, PipelineError> {
        Ok(self.complex(signs)?.betti()?)
    }
}

/// Betti numbers of the real part of a patchworked hypersurface.
pub fn betti_numbers(instance: &Instance) -> Result<BettiVector, PipelineError> {
    Patchwork::new(&instance.polynomial)?.betti(&instance.sign_bits())
}
