//! Regular subdivisions of `d * Delta_{n-1}` induced by the coefficients of
//! a tropical polynomial, and their face posets.
//!
//! Points are dehomogenized by dropping the last exponent coordinate. That
//! map is a lattice isomorphism of `{sum v = d}` onto `Z^{n-1}`, so
//! determinants computed there are normalized volumes.

mod faces;
pub(crate) mod hull;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::instance::{lattice_points, ExponentVector, InstanceError, TropicalPolynomial};
use crate::linalg;

pub use faces::{Face, FacePoset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubdivisionError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("subdivision is not a triangulation")]
    NotTriangulation,
}

/// The regular subdivision `S(f)`: maximal cells as sorted point-index sets.
///
/// A cell lists every configuration point on its lower face, so a
/// non-simplicial cell may carry points that are not vertices.
#[derive(Clone, Debug)]
pub struct RegularSubdivision {
    n: usize,
    d: u32,
    points: Vec<ExponentVector>,
    maximal_cells: Vec<Vec<usize>>,
    refinement: Vec<Vec<usize>>,
    used_points: BTreeSet<usize>,
}

/// Clears denominators; the positive scaling leaves every cell unchanged.
fn integer_heights(coefficients: &[BigRational]) -> Vec<BigInt> {
    let lcm = coefficients
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    coefficients
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect()
}

impl RegularSubdivision {
    /// Lower hull of the lifted lattice points `(v, c_v)`.
    pub fn from_polynomial(f: &TropicalPolynomial) -> Result<Self, SubdivisionError> {
        f.require_full_support()?;
        let coefficients: Vec<BigRational> = f.coefficients().cloned().collect();
        Ok(Self::from_heights(f.n(), f.degree(), &coefficients))
    }

    /// Heights given in canonical lattice-point order.
    pub fn from_heights(n: usize, d: u32, heights: &[BigRational]) -> Self {
        let points = lattice_points(n, d);
        assert_eq!(points.len(), heights.len(), "one height per lattice point");
        let heights = integer_heights(heights);
        let refinement = hull::perturbed_triangulation(&points, &heights);
        let maximal_cells = hull::coarsen(&points, &heights, &refinement);
        let used_points = maximal_cells.iter().flatten().copied().collect();
        Self {
            n,
            d,
            points,
            maximal_cells,
            refinement,
            used_points,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn points(&self) -> &[ExponentVector] {
        &self.points
    }

    pub fn maximal_cells(&self) -> &[Vec<usize>] {
        &self.maximal_cells
    }

    pub fn used_points(&self) -> &BTreeSet<usize> {
        &self.used_points
    }

    pub(crate) fn projected(&self, i: usize) -> Vec<i64> {
        let e = self.points[i].entries();
        e[..self.n - 1].iter().map(|&x| x as i64).collect()
    }

    /// Affine dimension of a set of configuration points.
    pub fn dimension_of(&self, point_set: &[usize]) -> usize {
        let coords: Vec<Vec<i64>> = point_set.iter().map(|&i| self.projected(i)).collect();
        let refs: Vec<&[i64]> = coords.iter().map(|c| c.as_slice()).collect();
        linalg::affine_dimension(&refs)
    }

    /// Absolute normalized volume of a full-dimensional simplex.
    pub fn simplex_volume(&self, simplex: &[usize]) -> u128 {
        let base = self.projected(simplex[0]);
        let rows: Vec<Vec<i64>> = simplex[1..]
            .iter()
            .map(|&i| {
                self.projected(i)
                    .iter()
                    .zip(&base)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        linalg::det(&rows).unsigned_abs()
    }

    /// Total normalized volume of the cells; equals `d^(n-1)` for a
    /// subdivision covering the simplex.
    pub fn total_volume(&self) -> u128 {
        self.refinement.iter().map(|s| self.simplex_volume(s)).sum()
    }

    pub fn is_triangulation(&self) -> bool {
        self.maximal_cells.iter().all(|c| c.len() == self.n)
    }

    /// Every configuration point is a vertex of the subdivision.
    pub fn is_full(&self) -> bool {
        if self.is_triangulation() {
            return self.used_points.len() == self.points.len();
        }
        let vertices = self.faces().into_iter().filter(|f| f.dim == 0).count();
        vertices == self.points.len()
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_triangulation()
            && self
                .maximal_cells
                .iter()
                .all(|c| self.simplex_volume(c) == 1)
    }

    /// Number of faces in each dimension `0..n-1`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.n];
        for face in self.faces() {
            f[face.dim] += 1;
        }
        f
    }

    /// Every face of the polyhedral complex (without cover relations).
    pub fn faces(&self) -> Vec<Face> {
        if self.is_triangulation() {
            faces::simplicial_faces(self)
        } else {
            faces::faces_by_intersection(self)
        }
    }

    /// Hasse diagram of the face lattice of a triangulation.
    pub fn face_poset(&self) -> Result<FacePoset, SubdivisionError> {
        if !self.is_triangulation() {
            return Err(SubdivisionError::NotTriangulation);
        }
        Ok(FacePoset::from_triangulation(self))
    }

    /// Faces of maximal dimension inside the coordinate face
    /// `{v_i = 0 : i in sedentarity}`.
    pub fn restricted_cells(&self, sedentarity: u32) -> Vec<Vec<usize>> {
        let target = self.n - 1 - sedentarity.count_ones() as usize;
        let mut out: Vec<Vec<usize>> = self
            .faces()
            .into_iter()
            .filter(|f| f.dim == target && f.support & sedentarity == 0)
            .map(|f| f.vertices)
            .collect();
        out.sort();
        out
    }
}
