//! Exact lower hull of a lifted dilated-simplex configuration.
//!
//! The lower hull is computed by gift wrapping on the lift `h + eps` where
//! `eps_i = eps^(i+1)` for an infinitesimal `eps`. That lift is generic, so
//! wrapping only ever meets simplices, and its regular triangulation refines
//! the regular subdivision of `h`. Maximal cells of `h` are then recovered by
//! collecting, for each simplex, the points whose exact residual against the
//! simplex's supporting hyperplane vanishes.
//!
//! All predicates are linear in the heights with small integer cofactors
//! from the lattice coordinates, so heights are kept as `BigInt` and the
//! cofactors as `i128`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::instance::ExponentVector;
use crate::linalg;

/// Lattice points of a face of `d * Delta_{n-1}`, in projected coordinates.
///
/// The face is the set of points with `v_j = 0` for every `j` outside
/// `axes`; coordinates keep every axis but the last one of `axes`.
pub(crate) struct FaceChart {
    /// Global point indices of the members.
    pub members: Vec<usize>,
    /// Projected coordinates, indexed like `members`.
    pub coords: Vec<Vec<i64>>,
}

impl FaceChart {
    pub fn new(points: &[ExponentVector], axes: &[usize]) -> Self {
        let n = points.first().map_or(0, |p| p.len());
        let outside: Vec<usize> = (0..n).filter(|j| !axes.contains(j)).collect();
        let kept = &axes[..axes.len().saturating_sub(1)];
        let mut members = Vec::new();
        let mut coords = Vec::new();
        for (g, p) in points.iter().enumerate() {
            let e = p.entries();
            if outside.iter().all(|&j| e[j] == 0) {
                members.push(g);
                coords.push(kept.iter().map(|&k| e[k] as i64).collect());
            }
        }
        Self { members, coords }
    }

    fn diff(&self, a: usize, b: usize) -> Vec<i64> {
        self.coords[a]
            .iter()
            .zip(&self.coords[b])
            .map(|(x, y)| x - y)
            .collect()
    }

    /// Orientation of `q` against the hyperplane spanned by a ridge
    /// (one point fewer than a full simplex of the face).
    pub fn orientation(&self, ridge: &[usize], q: usize) -> i128 {
        let base = ridge[0];
        let mut rows: Vec<Vec<i64>> = ridge[1..].iter().map(|&r| self.diff(r, base)).collect();
        rows.push(self.diff(q, base));
        linalg::det(&rows)
    }

    /// Barycentric coordinates of `q` with respect to `simplex`, scaled by
    /// the simplex volume `D`. Returns `(D, [D*beta_0, ..., D*beta_m])`.
    fn scaled_barycentric(&self, simplex: &[usize], q: usize) -> (i128, Vec<i128>) {
        let base = simplex[0];
        let rows: Vec<Vec<i64>> = simplex[1..].iter().map(|&r| self.diff(r, base)).collect();
        let d = linalg::det(&rows);
        let target = self.diff(q, base);
        let mut lambdas = Vec::with_capacity(simplex.len());
        lambdas.push(0);
        for j in 0..rows.len() {
            let mut replaced = rows.clone();
            replaced[j] = target.clone();
            lambdas.push(linalg::det(&replaced));
        }
        lambdas[0] = d - lambdas[1..].iter().sum::<i128>();
        (d, lambdas)
    }
}

/// Heights on the global point set, scaled to integers.
pub(crate) struct Lift<'a> {
    pub heights: &'a [BigInt],
}

impl Lift<'_> {
    /// `D * (h(q) - l(q))` where `l` interpolates the heights on `simplex`,
    /// plus the cofactors of the perturbation terms.
    fn residual_terms(
        &self,
        chart: &FaceChart,
        simplex: &[usize],
        q: usize,
    ) -> (BigInt, i128, Vec<(usize, i128)>) {
        let (d, lambdas) = chart.scaled_barycentric(simplex, q);
        let mut value = BigInt::from(d) * &self.heights[chart.members[q]];
        let mut terms = Vec::with_capacity(simplex.len() + 1);
        terms.push((chart.members[q], d));
        for (&a, &l) in simplex.iter().zip(&lambdas) {
            if l != 0 {
                value -= BigInt::from(l) * &self.heights[chart.members[a]];
                terms.push((chart.members[a], -l));
            }
        }
        (value, d, terms)
    }

    /// Sign of `h(q) - l(q)` for the exact heights.
    pub fn exact_residual(&self, chart: &FaceChart, simplex: &[usize], q: usize) -> Ordering {
        let (value, d, _) = self.residual_terms(chart, simplex, q);
        sign_of(&value, d)
    }

    /// Sign of the residual under the infinitesimal perturbation; never
    /// `Equal` for `q` outside the simplex.
    pub fn perturbed_residual(&self, chart: &FaceChart, simplex: &[usize], q: usize) -> Ordering {
        let (value, d, terms) = self.residual_terms(chart, simplex, q);
        if !value.is_zero() {
            return sign_of(&value, d);
        }
        let lead = terms
            .iter()
            .filter(|(_, c)| *c != 0)
            .min_by_key(|(g, _)| *g)
            .map(|&(_, c)| c)
            .expect("simplex is nondegenerate");
        let s = lead.signum() * d.signum();
        s.cmp(&0)
    }
}

fn sign_of(value: &BigInt, d: i128) -> Ordering {
    let s = if value.is_positive() {
        1
    } else if value.is_negative() {
        -1
    } else {
        0
    };
    (s * d.signum() as i32).cmp(&0)
}

/// Adds the far-side point to `ridge` that gives the lowest supporting
/// hyperplane.
fn wrap(lift: &Lift<'_>, chart: &FaceChart, ridge: &[usize], candidates: &[usize]) -> Vec<usize> {
    let mut simplex = ridge.to_vec();
    simplex.push(candidates[0]);
    let last = simplex.len() - 1;
    for &q in &candidates[1..] {
        if lift.perturbed_residual(chart, &simplex, q) == Ordering::Less {
            simplex[last] = q;
        }
    }
    simplex
}

/// One simplex of the perturbed triangulation of the face spanned by
/// `axes`, as global indices.
fn initial_simplex(points: &[ExponentVector], lift: &Lift<'_>, axes: &[usize]) -> Vec<usize> {
    let chart = FaceChart::new(points, axes);
    if axes.len() == 1 {
        return chart.members;
    }
    let ridge_global = initial_simplex(points, lift, &axes[..axes.len() - 1]);
    let local_of = |g: usize| {
        chart
            .members
            .binary_search(&g)
            .expect("ridge lies in the face")
    };
    let ridge: Vec<usize> = ridge_global.iter().map(|&g| local_of(g)).collect();
    let lead = *axes.last().unwrap();
    let candidates: Vec<usize> = (0..chart.members.len())
        .filter(|&l| points[chart.members[l]].entries()[lead] > 0)
        .collect();
    wrap(lift, &chart, &ridge, &candidates)
        .into_iter()
        .map(|l| chart.members[l])
        .collect()
}

/// Regular triangulation of the perturbed lift of all of `points`, which
/// must be the full lattice-point set of a dilated simplex. Simplices are
/// sorted global index lists.
pub(crate) fn perturbed_triangulation(
    points: &[ExponentVector],
    heights: &[BigInt],
) -> Vec<Vec<usize>> {
    let n = points[0].len();
    let axes: Vec<usize> = (0..n).collect();
    let lift = Lift { heights };
    let chart = FaceChart::new(points, &axes);
    debug_assert_eq!(chart.members.len(), points.len());

    let mut start = initial_simplex(points, &lift, &axes);
    start.sort_unstable();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut out = Vec::new();

    while let Some(simplex) = queue.pop_front() {
        for drop in 0..simplex.len() {
            let apex = simplex[drop];
            let ridge: Vec<usize> = simplex
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != drop)
                .map(|(_, &g)| g)
                .collect();
            let side = chart.orientation(&ridge, apex).signum();
            let candidates: Vec<usize> = (0..points.len())
                .filter(|&q| chart.orientation(&ridge, q).signum() == -side)
                .collect();
            if candidates.is_empty() {
                continue;
            }
            let mut next = wrap(&lift, &chart, &ridge, &candidates);
            next.sort_unstable();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        out.push(simplex);
    }
    out.sort();
    out
}

/// Maximal cells of the exact lift: for each simplex of the perturbed
/// triangulation, every point on its exact supporting hyperplane.
pub(crate) fn coarsen(
    points: &[ExponentVector],
    heights: &[BigInt],
    simplices: &[Vec<usize>],
) -> Vec<Vec<usize>> {
    let n = points[0].len();
    let axes: Vec<usize> = (0..n).collect();
    let chart = FaceChart::new(points, &axes);
    let lift = Lift { heights };
    let mut cells = BTreeSet::new();
    for s in simplices {
        let cell: Vec<usize> = (0..points.len())
            .filter(|q| {
                s.binary_search(q).is_ok() || lift.exact_residual(&chart, s, *q) == Ordering::Equal
            })
            .collect();
        cells.insert(cell);
    }
    cells.into_iter().collect()
}
