use std::collections::{BTreeSet, HashMap};

use super::RegularSubdivision;

/// A face of the subdivision, as the configuration points it contains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
    /// Bit `i` set iff some point of the face has `v_i > 0`. The face lies
    /// in the coordinate face `{v_i = 0 : i in I}` iff `support & I == 0`.
    pub support: u32,
}

fn support_of(s: &RegularSubdivision, vertices: &[usize]) -> u32 {
    vertices
        .iter()
        .fold(0, |m, &i| m | s.points()[i].support_mask())
}

/// All nonempty subsets of the maximal simplices.
pub(super) fn simplicial_faces(s: &RegularSubdivision) -> Vec<Face> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for cell in s.maximal_cells() {
        let k = cell.len();
        for mask in 1u32..(1 << k) {
            let subset: Vec<usize> = (0..k)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| cell[b])
                .collect();
            seen.insert(subset);
        }
    }
    seen.into_iter()
        .map(|vertices| Face {
            dim: vertices.len() - 1,
            support: support_of(s, &vertices),
            vertices,
        })
        .collect()
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Faces of an arbitrary (possibly non-simplicial) subdivision.
///
/// Every face is the intersection of the maximal cells containing it with
/// the smallest coordinate face of the simplex containing it, so closing
/// `{cell} ∪ {cell ∩ coordinate face}` under pairwise intersection yields
/// exactly the face set.
pub(super) fn faces_by_intersection(s: &RegularSubdivision) -> Vec<Face> {
    let n = s.n();
    let mut family: BTreeSet<Vec<usize>> = BTreeSet::new();
    for cell in s.maximal_cells() {
        for sed in 0u32..(1 << n) - 1 {
            let part: Vec<usize> = cell
                .iter()
                .copied()
                .filter(|&i| s.points()[i].support_mask() & sed == 0)
                .collect();
            if !part.is_empty() {
                family.insert(part);
            }
        }
    }
    let mut frontier: Vec<Vec<usize>> = family.iter().cloned().collect();
    while !frontier.is_empty() {
        let current: Vec<Vec<usize>> = family.iter().cloned().collect();
        let mut next = Vec::new();
        for a in &frontier {
            for b in &current {
                let c = intersect(a, b);
                if !c.is_empty() && !family.contains(&c) {
                    family.insert(c.clone());
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    family
        .into_iter()
        .map(|vertices| Face {
            dim: s.dimension_of(&vertices),
            support: support_of(s, &vertices),
            vertices,
        })
        .collect()
}

/// Hasse diagram of the face lattice of a triangulation (empty face
/// omitted).
#[derive(Clone, Debug)]
pub struct FacePoset {
    faces: Vec<Face>,
    covers: Vec<(usize, usize)>,
    facets: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl FacePoset {
    pub(super) fn from_triangulation(s: &RegularSubdivision) -> Self {
        let mut faces = simplicial_faces(s);
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.cmp(&b.vertices)));
        let index: HashMap<Vec<usize>, usize> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.vertices.clone(), i))
            .collect();
        let mut covers = Vec::new();
        let mut facets = vec![Vec::new(); faces.len()];
        let mut cofacets = vec![Vec::new(); faces.len()];
        for (upper, face) in faces.iter().enumerate() {
            if face.dim == 0 {
                continue;
            }
            for skip in 0..face.vertices.len() {
                let mut sub = face.vertices.clone();
                sub.remove(skip);
                let lower = index[&sub];
                covers.push((lower, upper));
                facets[upper].push(lower);
                cofacets[lower].push(upper);
            }
        }
        Self {
            faces,
            covers,
            facets,
            cofacets,
            index,
        }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// `(lower, upper)` pairs with `dim upper = dim lower + 1`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn facets_of(&self, id: usize) -> &[usize] {
        &self.facets[id]
    }

    pub fn cofacets_of(&self, id: usize) -> &[usize] {
        &self.cofacets[id]
    }

    pub fn id_of(&self, vertices: &[usize]) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    pub fn counts_by_dimension(&self) -> Vec<usize> {
        let top = self.faces.iter().map(|f| f.dim).max().unwrap_or(0);
        let mut f = vec![0; top + 1];
        for face in &self.faces {
            f[face.dim] += 1;
        }
        f
    }
}
