//! Cellular chain complex of the real part over GF(2) and its Betti numbers.
//!
//! The `q`-chains are spanned by the orbit classes `[(cell, z)]` with
//! `dim cell = q` and `z` in the cell's phase set. The boundary of a class is
//! the sum of the classes `[(facet, z)]` over the facets of its cell;
//! incidences reached twice through the gluing cancel mod 2.

pub mod gf2;
mod union_find;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::hypersurface::HypersurfacePoset;
use crate::phase::{canonical_orthant, OrbitClass, PhaseStructure};

pub use gf2::BitMatrix;
pub(crate) use union_find::DisjointSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("boundary of boundary is nonzero in degree {0}")]
    BoundaryNotNilpotent(usize),
}

/// Z/2 Betti numbers `b_0, ..., b_{n-2}` and the Euler characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BettiVector {
    pub b: Vec<usize>,
    pub chi: i64,
}

impl BettiVector {
    pub fn new(b: Vec<usize>) -> Self {
        let chi = alternating_sum(&b);
        Self { b, chi }
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.b.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

fn alternating_sum(counts: &[usize]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(q, &c)| if q % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

#[derive(Clone, Debug)]
pub struct RealPartComplex {
    classes: Vec<Vec<OrbitClass>>,
    /// `boundaries[q][i]`: the `(q-1)`-classes met by the facets of class
    /// `i`, with multiplicity.
    boundaries: Vec<Vec<Vec<usize>>>,
}

impl RealPartComplex {
    pub fn new(poset: &HypersurfacePoset, phases: &PhaseStructure) -> Self {
        let top = poset.n() - 2;
        let mut classes: Vec<Vec<OrbitClass>> = vec![Vec::new(); top + 1];
        let mut index: Vec<HashMap<OrbitClass, usize>> = vec![HashMap::new(); top + 1];
        for (id, cell) in poset.cells().iter().enumerate() {
            for z in phases.of_cell(id).iter() {
                let class = OrbitClass {
                    cell: id,
                    rep: canonical_orthant(cell.sedentarity, z),
                };
                let members = &mut classes[cell.dim];
                index[cell.dim].entry(class).or_insert_with(|| {
                    members.push(class);
                    members.len() - 1
                });
            }
        }
        let mut boundaries = vec![Vec::new(); top + 1];
        for q in 1..=top {
            boundaries[q] = classes[q]
                .iter()
                .map(|class| {
                    poset
                        .facets_of(class.cell)
                        .iter()
                        .map(|&facet| {
                            let sed = poset.cell(facet).sedentarity;
                            let lower = OrbitClass {
                                cell: facet,
                                rep: canonical_orthant(sed, class.rep),
                            };
                            index[q - 1][&lower]
                        })
                        .collect()
                })
                .collect();
        }
        boundaries[0] = vec![Vec::new(); classes[0].len()];
        Self {
            classes,
            boundaries,
        }
    }

    /// Top dimension `n - 2`.
    pub fn dim(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn classes(&self, q: usize) -> &[OrbitClass] {
        &self.classes[q]
    }

    pub fn chain_ranks(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.len()).collect()
    }

    /// Facet classes of a `q`-class, with multiplicity.
    pub fn boundary(&self, q: usize, i: usize) -> &[usize] {
        &self.boundaries[q][i]
    }

    /// `sum (-1)^q dim C_q`.
    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.chain_ranks())
    }

    /// Boundary map `C_q -> C_{q-1}` with one row per `q`-class.
    pub fn boundary_matrix(&self, q: usize) -> BitMatrix {
        BitMatrix::from_sparse_rows(self.classes[q - 1].len(), &self.boundaries[q])
    }

    fn reduced(&self, q: usize, i: usize) -> Vec<usize> {
        let mut v = self.boundaries[q][i].clone();
        v.sort_unstable();
        let mut out: Vec<usize> = Vec::with_capacity(v.len());
        for x in v {
            if out.last() == Some(&x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        out
    }

    /// Checks that every composite boundary vanishes mod 2.
    pub fn check_boundary_squared(&self) -> Result<(), HomologyError> {
        for q in 2..=self.dim() {
            for i in 0..self.classes[q].len() {
                let mut acc: Vec<usize> = self
                    .reduced(q, i)
                    .into_iter()
                    .flat_map(|j| self.reduced(q - 1, j))
                    .collect();
                acc.sort_unstable();
                let odd = acc.chunk_by(|a, b| a == b).any(|run| run.len() % 2 == 1);
                if odd {
                    return Err(HomologyError::BoundaryNotNilpotent(q));
                }
            }
        }
        Ok(())
    }

    /// `b_q = dim C_q - rank d_q - rank d_{q+1}` over GF(2).
    pub fn betti(&self) -> Result<BettiVector, HomologyError> {
        self.check_boundary_squared()?;
        let top = self.dim();
        // ranks[q] = rank of d_q : C_q -> C_{q-1}, zero for q = 0 and q = top + 1
        let mut ranks = vec![0usize; top + 2];
        for (q, rank) in ranks.iter_mut().enumerate().take(top + 1).skip(1) {
            *rank = self.boundary_matrix(q).rank();
        }
        let b = (0..=top)
            .map(|q| self.classes[q].len() - ranks[q] - ranks[q + 1])
            .collect();
        Ok(BettiVector::new(b))
    }

    /// Connected components of the incidence graph of all classes.
    pub fn component_count(&self) -> usize {
        self.component_labels().0
    }

    /// Component index of every class, per dimension, with components
    /// numbered in order of first appearance.
    pub fn component_labels(&self) -> (usize, Vec<Vec<usize>>) {
        let offsets: Vec<usize> = self
            .classes
            .iter()
            .scan(0, |acc, c| {
                let start = *acc;
                *acc += c.len();
                Some(start)
            })
            .collect();
        let total: usize = self.classes.iter().map(|c| c.len()).sum();
        let mut ds = DisjointSet::new(total);
        for q in 1..=self.dim() {
            for (i, facets) in self.boundaries[q].iter().enumerate() {
                for &j in facets {
                    ds.union(offsets[q] + i, offsets[q - 1] + j);
                }
            }
        }
        let mut numbering: HashMap<usize, usize> = HashMap::new();
        let labels = self
            .classes
            .iter()
            .enumerate()
            .map(|(q, c)| {
                (0..c.len())
                    .map(|i| {
                        let root = ds.find(offsets[q] + i);
                        let next = numbering.len();
                        *numbering.entry(root).or_insert(next)
                    })
                    .collect()
            })
            .collect();
        (numbering.len(), labels)
    }
}
