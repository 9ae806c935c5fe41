//! Face poset of the tropical hypersurface `T(f)` compactified in the
//! tropical projective space.
//!
//! A cell is a pair `(I, G)`: `I` is the sedentarity (coordinates equal to
//! infinity) and `G` a face of `S(f)` of dimension at least one lying in the
//! coordinate face `{v_i = 0 : i in I}`. Its dimension is
//! `n - 1 - |I| - dim G`. The part of the closure of `T(f)` in stratum `I` is
//! the hypersurface of `f` with every monomial touching `I` removed, whose
//! cells are dual to the faces of `S(f)` inside that coordinate face.
//!
//! `(I', G')` is a facet of `(I, G)` iff either `I' = I` and `G'` covers `G`,
//! or `I' = I + {i}` and `G' = G`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::instance::{ExponentVector, TropicalPolynomial};
use crate::subdivision::{FacePoset, RegularSubdivision, SubdivisionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypersurfaceError {
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error("geometric realization is only available for n = 3 (got n = {0})")]
    UnsupportedDimension(usize),
    #[error("cell {0} lies at infinity")]
    BoundaryCell(usize),
}

/// A cell `(I, G)` of the compactified hypersurface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CompactCell {
    /// Bit `i` set iff `x_i = infinity` on the cell.
    pub sedentarity: u32,
    /// Id of the dual face in the [`FacePoset`].
    pub dual_face: usize,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct HypersurfacePoset {
    n: usize,
    points: Vec<ExponentVector>,
    faces: FacePoset,
    cells: Vec<CompactCell>,
    facets: Vec<Vec<usize>>,
    maximal: Vec<usize>,
    index: HashMap<(u32, usize), usize>,
}

impl HypersurfacePoset {
    /// Builds every cell `(I, G)` and its facet lists from a triangulation.
    pub fn new(s: &RegularSubdivision) -> Result<Self, HypersurfaceError> {
        let faces = s.face_poset()?;
        let n = s.n();
        let full: u32 = (1 << n) - 1;

        let mut keyed: Vec<CompactCell> = Vec::new();
        for (id, face) in faces.faces().iter().enumerate() {
            if face.dim == 0 {
                continue;
            }
            let free = full & !face.support;
            // every subset of the free coordinates
            let mut sub = free;
            loop {
                let used = sub.count_ones() as usize;
                if n > used + face.dim {
                    keyed.push(CompactCell {
                        sedentarity: sub,
                        dual_face: id,
                        dim: n - 1 - used - face.dim,
                    });
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
        }
        keyed.sort_by_key(|c| (c.dim, c.sedentarity, c.dual_face));
        let index: HashMap<(u32, usize), usize> = keyed
            .iter()
            .enumerate()
            .map(|(i, c)| ((c.sedentarity, c.dual_face), i))
            .collect();

        let mut facets = vec![Vec::new(); keyed.len()];
        for (id, cell) in keyed.iter().enumerate() {
            if cell.dim == 0 {
                continue;
            }
            for &upper in faces.cofacets_of(cell.dual_face) {
                if faces.face(upper).support & cell.sedentarity == 0 {
                    facets[id].push(index[&(cell.sedentarity, upper)]);
                }
            }
            let free = full & !faces.face(cell.dual_face).support & !cell.sedentarity;
            for i in 0..n {
                if free >> i & 1 == 1 {
                    facets[id].push(index[&(cell.sedentarity | 1 << i, cell.dual_face)]);
                }
            }
            facets[id].sort_unstable();
        }

        let maximal = keyed
            .iter()
            .enumerate()
            .filter(|(_, c)| c.sedentarity == 0 && faces.face(c.dual_face).dim == 1)
            .map(|(i, _)| i)
            .collect();

        Ok(Self {
            n,
            points: s.points().to_vec(),
            faces,
            cells: keyed,
            facets,
            maximal,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[ExponentVector] {
        &self.points
    }

    pub fn face_poset(&self) -> &FacePoset {
        &self.faces
    }

    pub fn cells(&self) -> &[CompactCell] {
        &self.cells
    }

    pub fn cell(&self, id: usize) -> &CompactCell {
        &self.cells[id]
    }

    /// Codimension-one faces of a cell.
    pub fn facets_of(&self, id: usize) -> &[usize] {
        &self.facets[id]
    }

    /// `(facet, cell)` pairs.
    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.facets
            .iter()
            .enumerate()
            .flat_map(|(c, fs)| fs.iter().map(move |&f| (f, c)))
    }

    /// Cells of dimension `n - 2` with `I` empty; their dual faces are edges.
    pub fn maximal_cells(&self) -> &[usize] {
        &self.maximal
    }

    pub fn id_of(&self, sedentarity: u32, dual_face: usize) -> Option<usize> {
        self.index.get(&(sedentarity, dual_face)).copied()
    }

    /// Vertices of the dual face of a cell.
    pub fn dual_vertices(&self, id: usize) -> &[usize] {
        &self.faces.face(self.cells[id].dual_face).vertices
    }

    pub fn count_by_dimension(&self) -> Vec<usize> {
        let mut out = vec![0; self.n - 1];
        for c in &self.cells {
            out[c.dim] += 1;
        }
        out
    }

    /// `(I', G') <= (I, G)` iff `I` is contained in `I'` and `G` in `G'`.
    pub fn is_face_of(&self, lower: usize, upper: usize) -> bool {
        let (lo, hi) = (&self.cells[lower], &self.cells[upper]);
        let lo_face = self.faces.face(lo.dual_face);
        let hi_face = self.faces.face(hi.dual_face);
        hi.sedentarity & !lo.sedentarity == 0 && is_subset(&hi_face.vertices, &lo_face.vertices)
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// Geometric description of an interior cell of a plane tropical curve in
/// the chart `x_3 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realization {
    Vertex(Vec<BigRational>),
    Segment(Vec<BigRational>, Vec<BigRational>),
    Ray {
        apex: Vec<BigRational>,
        /// Primitive integer direction, third coordinate zero.
        direction: Vec<i64>,
    },
}

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// The point where the three monomials of a triangle tie, with `x_3 = 0`.
fn triangle_vertex(f: &TropicalPolynomial, tri: [&ExponentVector; 3]) -> Vec<BigRational> {
    let c = |v: &ExponentVector| f.coefficient(v).expect("full support").clone();
    let e = |v: &ExponentVector, i: usize| v.entries()[i] as i64;
    let [a, b, t] = tri;
    // (a - b) . x = c_b - c_a, (a - t) . x = c_t - c_a, on the first two coordinates
    let m = [
        [e(a, 0) - e(b, 0), e(a, 1) - e(b, 1)],
        [e(a, 0) - e(t, 0), e(a, 1) - e(t, 1)],
    ];
    let rhs = [c(b) - c(a), c(t) - c(a)];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    assert!(det != 0, "dual triangle is degenerate");
    let det = rational(det);
    let x1 = (&rhs[0] * rational(m[1][1]) - &rhs[1] * rational(m[0][1])) / &det;
    let x2 = (&rhs[1] * rational(m[0][0]) - &rhs[0] * rational(m[1][0])) / &det;
    vec![x1, x2, BigRational::zero()]
}

/// Realizes an interior cell of a plane curve (`n = 3`).
pub fn realize(
    f: &TropicalPolynomial,
    poset: &HypersurfacePoset,
    cell: usize,
) -> Result<Realization, HypersurfaceError> {
    if poset.n() != 3 {
        return Err(HypersurfaceError::UnsupportedDimension(poset.n()));
    }
    let c = poset.cell(cell);
    if c.sedentarity != 0 {
        return Err(HypersurfaceError::BoundaryCell(cell));
    }
    let pts = poset.points();
    let faces = poset.face_poset();
    let verts = poset.dual_vertices(cell);
    let tri_vertex = |face: usize| {
        let v = &faces.face(face).vertices;
        triangle_vertex(f, [&pts[v[0]], &pts[v[1]], &pts[v[2]]])
    };
    if c.dim == 0 {
        return Ok(Realization::Vertex(tri_vertex(c.dual_face)));
    }
    let triangles = faces.cofacets_of(c.dual_face);
    match triangles {
        [t1, t2] => Ok(Realization::Segment(tri_vertex(*t1), tri_vertex(*t2))),
        [t] => {
            let (v, w) = (&pts[verts[0]], &pts[verts[1]]);
            let third = faces
                .face(*t)
                .vertices
                .iter()
                .copied()
                .find(|i| !verts.contains(i))
                .expect("triangle has a third vertex");
            let u = &pts[third];
            let e = |p: &ExponentVector, i: usize| p.entries()[i] as i64;
            let (dx, dy) = (e(v, 0) - e(w, 0), e(v, 1) - e(w, 1));
            let g = dx.gcd(&dy);
            let mut dir = [-dy / g, dx / g];
            // moving along the ray must price the third monomial out
            if dir[0] * (e(u, 0) - e(v, 0)) + dir[1] * (e(u, 1) - e(v, 1)) < 0 {
                dir = [-dir[0], -dir[1]];
            }
            Ok(Realization::Ray {
                apex: tri_vertex(*t),
                direction: vec![dir[0], dir[1], 0],
            })
        }
        _ => unreachable!("an edge of a plane triangulation lies in one or two triangles"),
    }
}
