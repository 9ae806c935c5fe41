//! Real phase structure induced by a sign distribution.
//!
//! An orthant `z` in `Z_2^n` is stored as an `n`-bit mask with bit `i`
//! holding `z_{i+1}`. The symmetrized sign of monomial `v` in orthant `z` is
//! `eps(v) + <z, v> mod 2`. A maximal cell dual to the edge `{v, w}` carries
//! the orthants where the two symmetrized signs differ; lower cells carry the
//! union over the maximal cells containing them.
//!
//! Pairs `(cell, z)` are identified with `(cell, z + delta)` for `delta`
//! supported on the cell's sedentarity and with `(cell, antipode(z))`.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::hypersurface::HypersurfacePoset;
use crate::instance::{ExponentVector, MAX_VARIABLES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PhaseError {
    #[error("orthant {orthant} is not in the phase set of cell {cell}")]
    NotInPhase { cell: usize, orthant: Orthant },
    #[error("cell {0} is not dual to an edge")]
    NotAnEdge(usize),
    #[error("sign vector has {found} entries, expected {expected}")]
    SignCount { found: usize, expected: usize },
}

/// An orthant `z` of `R^n`, standing for the sign vector `(-1)^z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Orthant {
    bits: u32,
    n: u8,
}

impl Orthant {
    pub fn new(bits: u32, n: usize) -> Self {
        assert!(n <= MAX_VARIABLES && bits >> n == 0, "orthant out of range");
        Self { bits, n: n as u8 }
    }

    pub fn from_signs(z: &[bool]) -> Self {
        let bits = z
            .iter()
            .enumerate()
            .fold(0, |m, (i, &b)| m | (u32::from(b) << i));
        Self::new(bits, z.len())
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    /// `z_{i+1}`.
    pub fn get(self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn antipode(self) -> Self {
        Self {
            bits: !self.bits & ((1 << self.n) - 1),
            n: self.n,
        }
    }

    pub fn clear(self, mask: u32) -> Self {
        Self {
            bits: self.bits & !mask,
            n: self.n,
        }
    }

    pub fn flip(self, mask: u32) -> Self {
        Self {
            bits: (self.bits ^ mask) & ((1 << self.n) - 1),
            n: self.n,
        }
    }

    /// All `2^n` orthants.
    pub fn all(n: usize) -> impl Iterator<Item = Orthant> {
        (0..1u32 << n).map(move |b| Orthant::new(b, n))
    }
}

/// Lexicographic on `(z_1, ..., z_n)`.
impl Ord for Orthant {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.n, other.n);
        (0..self.n())
            .map(|i| self.get(i).cmp(&other.get(i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for Orthant {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Orthant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.n() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, ")")
    }
}

/// A set of orthants as a `2^n`-bit mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrthantSet {
    n: usize,
    words: Vec<u64>,
}

impl OrthantSet {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            words: vec![0; (1usize << n).div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for z in Orthant::all(n) {
            s.insert(z);
        }
        s
    }

    pub fn insert(&mut self, z: Orthant) {
        let b = z.bits() as usize;
        self.words[b / 64] |= 1 << (b % 64);
    }

    pub fn contains(&self, z: Orthant) -> bool {
        let b = z.bits() as usize;
        self.words[b / 64] >> (b % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &OrthantSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_superset(&self, other: &OrthantSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| b & !a == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Orthant> + '_ {
        let n = self.n;
        Orthant::all(n).filter(move |&z| self.contains(z))
    }
}

/// `s_eps(z)(v) = eps(v) + <z, v> mod 2`.
pub fn symmetrized_sign(eps: bool, z: Orthant, v: &ExponentVector) -> bool {
    let dot = (z.bits() & v.parity_mask()).count_ones() & 1 == 1;
    eps ^ dot
}

/// Orthants where the symmetrized signs of `v` and `w` differ.
pub fn phase_of_edge(
    n: usize,
    (v, eps_v): (&ExponentVector, bool),
    (w, eps_w): (&ExponentVector, bool),
) -> OrthantSet {
    let parity = v.parity_mask() ^ w.parity_mask();
    let base = eps_v ^ eps_w;
    let mut set = OrthantSet::empty(n);
    for z in Orthant::all(n) {
        if base ^ ((z.bits() & parity).count_ones() & 1 == 1) {
            set.insert(z);
        }
    }
    set
}

/// An equivalence class of pairs `(cell, z)` under the gluing relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitClass {
    pub cell: usize,
    /// Lexicographic minimum of `z` and its antipode, both with the
    /// sedentarity bits cleared.
    pub rep: Orthant,
}

/// Canonical representative of the orbit of `z` for a cell with the given
/// sedentarity.
pub fn canonical_orthant(sedentarity: u32, z: Orthant) -> Orthant {
    let a = z.clear(sedentarity);
    let b = z.antipode().clear(sedentarity);
    a.min(b)
}

/// Phase sets of every cell of a hypersurface poset.
#[derive(Clone, Debug)]
pub struct PhaseStructure {
    n: usize,
    phases: Vec<OrthantSet>,
}

impl PhaseStructure {
    /// `signs` is aligned with the poset's points.
    pub fn new(poset: &HypersurfacePoset, signs: &[bool]) -> Result<Self, PhaseError> {
        let n = poset.n();
        let pts = poset.points();
        if signs.len() != pts.len() {
            return Err(PhaseError::SignCount {
                found: signs.len(),
                expected: pts.len(),
            });
        }
        let faces = poset.face_poset();
        // phase of every edge of S(f), keyed by face id
        let mut edge_phase: Vec<Option<OrthantSet>> = vec![None; faces.len()];
        for (id, face) in faces.faces().iter().enumerate() {
            if let [a, b] = face.vertices[..] {
                edge_phase[id] = Some(phase_of_edge(n, (&pts[a], signs[a]), (&pts[b], signs[b])));
            }
        }
        let phases = poset
            .cells()
            .iter()
            .map(|cell| {
                let verts = &faces.face(cell.dual_face).vertices;
                let mut set = OrthantSet::empty(n);
                for (i, &a) in verts.iter().enumerate() {
                    for &b in &verts[i + 1..] {
                        let edge = faces.id_of(&[a, b]).expect("simplex edges are faces");
                        set.union_with(edge_phase[edge].as_ref().expect("edge phase"));
                    }
                }
                set
            })
            .collect();
        Ok(Self { n, phases })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn of_cell(&self, cell: usize) -> &OrthantSet {
        &self.phases[cell]
    }

    /// Phase of a maximal cell; errors if the cell is not dual to an edge.
    pub fn of_maximal(
        &self,
        poset: &HypersurfacePoset,
        cell: usize,
    ) -> Result<&OrthantSet, PhaseError> {
        if poset.dual_vertices(cell).len() != 2 || poset.cell(cell).sedentarity != 0 {
            return Err(PhaseError::NotAnEdge(cell));
        }
        Ok(&self.phases[cell])
    }

    pub fn canonical_class(
        &self,
        poset: &HypersurfacePoset,
        cell: usize,
        z: Orthant,
    ) -> Result<OrbitClass, PhaseError> {
        if !self.phases[cell].contains(z) {
            return Err(PhaseError::NotInPhase { cell, orthant: z });
        }
        Ok(OrbitClass {
            cell,
            rep: canonical_orthant(poset.cell(cell).sedentarity, z),
        })
    }
}
