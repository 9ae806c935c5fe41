//! Independent reference computations used to cross-check the pipeline.
//!
//! None of these go through the hull, poset, phase or homology code; they
//! only share the instance types and the lattice-point ordering.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use patchwork::hypersurface::{realize, Realization};
use patchwork::{
    lattice_points, BettiVector, ExponentVector, HypersurfacePoset, Patchwork, RegularSubdivision,
    TropicalPolynomial,
};

pub fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Solves `a x = b` over the rationals; `None` if `a` is singular.
fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let m = a.len();
    for col in 0..m {
        let pivot = (col..m).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..m {
            if r != col && !a[r][col].is_zero() {
                let factor = &a[r][col] / &a[col][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &factor * y;
                }
                let delta = &factor * &b[col];
                b[r] -= delta;
            }
        }
    }
    Some((0..m).map(|i| &b[i] / &a[i][i]).collect())
}

fn subsets(k: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            go(i + 1, k, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, size, &mut Vec::new(), &mut out);
    out
}

/// Maximal cells of the lower hull of `(coords[i], heights[i])` for points
/// spanning `R^m`, by trying every affinely independent `(m+1)`-subset as a
/// candidate facet.
pub fn brute_force_lower_hull(
    coords: &[Vec<i64>],
    heights: &[BigRational],
) -> BTreeSet<Vec<usize>> {
    let m = coords[0].len();
    let mut cells = BTreeSet::new();
    for subset in subsets(coords.len(), m + 1) {
        // l(x) = a . x + c through the chosen lifted points
        let rows: Vec<Vec<BigRational>> = subset
            .iter()
            .map(|&i| {
                coords[i]
                    .iter()
                    .map(|&x| q(x))
                    .chain(std::iter::once(BigRational::one()))
                    .collect()
            })
            .collect();
        let rhs: Vec<BigRational> = subset.iter().map(|&i| heights[i].clone()).collect();
        let Some(sol) = solve(rows, rhs) else {
            continue;
        };
        let affine = |p: &[i64]| -> BigRational {
            p.iter()
                .zip(&sol)
                .map(|(&x, a)| q(x) * a)
                .sum::<BigRational>()
                + &sol[m]
        };
        let residuals: Vec<BigRational> = coords
            .iter()
            .zip(heights)
            .map(|(p, h)| h - affine(p))
            .collect();
        if residuals.iter().any(|r| r.is_negative()) {
            continue;
        }
        cells.insert(
            (0..coords.len())
                .filter(|&i| residuals[i].is_zero())
                .collect(),
        );
    }
    cells
}

/// Indices of the points supported on the coordinates in `axes`, with
/// coordinates on all but the last axis.
pub fn face_chart(points: &[ExponentVector], axes: &[usize]) -> (Vec<usize>, Vec<Vec<i64>>) {
    let mut members = Vec::new();
    let mut coords = Vec::new();
    for (g, p) in points.iter().enumerate() {
        let e = p.entries();
        if (0..e.len()).all(|j| axes.contains(&j) || e[j] == 0) {
            members.push(g);
            coords.push(
                axes[..axes.len() - 1]
                    .iter()
                    .map(|&a| e[a] as i64)
                    .collect(),
            );
        }
    }
    (members, coords)
}

pub fn random_heights(n: usize, d: u32, range: i64, rng: &mut ChaCha8Rng) -> Vec<BigRational> {
    lattice_points(n, d)
        .iter()
        .map(|_| q(rng.gen_range(0..=range)))
        .collect()
}

pub fn random_bits(k: usize, rng: &mut ChaCha8Rng) -> Vec<bool> {
    (0..k).map(|_| rng.gen()).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Real part of a patchworked plane curve built directly in the four
/// quadrant copies of the Newton triangle: one node per sign-changing edge
/// copy (with the gluing of the copies along the axes and the antipodal
/// gluing of the outer side), one arc per sign-changing triangle copy.
/// Returns `(components, cycle rank, every node has degree 2)`.
pub fn curve_oracle(s: &RegularSubdivision, signs: &[bool]) -> (usize, usize, bool) {
    assert_eq!(s.n(), 3);
    let pts = s.points();
    let sign = |v: usize, copy: u32| {
        let e = pts[v].entries();
        let flip = (copy & 1 == 1 && e[0] % 2 == 1) ^ (copy & 2 == 2 && e[1] % 2 == 1);
        signs[v] ^ flip
    };
    let node_of = |a: usize, b: usize, copy: u32| {
        let (ea, eb) = (pts[a].entries(), pts[b].entries());
        let mut c = copy;
        if ea[0] == 0 && eb[0] == 0 {
            c &= !1;
        }
        if ea[1] == 0 && eb[1] == 0 {
            c &= !2;
        }
        if ea[2] == 0 && eb[2] == 0 {
            c = c.min(c ^ 3);
        }
        (a.min(b), a.max(b), c)
    };
    let mut nodes: HashMap<(usize, usize, u32), usize> = HashMap::new();
    let mut arcs = Vec::new();
    for tri in s.maximal_cells() {
        for copy in 0..4u32 {
            let changing: Vec<(usize, usize, u32)> = [(0, 1), (1, 2), (0, 2)]
                .iter()
                .filter(|&&(i, j)| sign(tri[i], copy) != sign(tri[j], copy))
                .map(|&(i, j)| node_of(tri[i], tri[j], copy))
                .collect();
            if changing.is_empty() {
                continue;
            }
            assert_eq!(changing.len(), 2);
            let ids: Vec<usize> = changing
                .into_iter()
                .map(|key| {
                    let next = nodes.len();
                    *nodes.entry(key).or_insert(next)
                })
                .collect();
            arcs.push((ids[0], ids[1]));
        }
    }
    let v = nodes.len();
    let mut degree = vec![0; v];
    let mut parent: Vec<usize> = (0..v).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(a, b) in &arcs {
        degree[a] += 1;
        degree[b] += 1;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let components = (0..v).filter(|&i| find(&mut parent, i) == i).count();
    let cycle_rank = arcs.len() + components - v;
    (components, cycle_rank, degree.iter().all(|&k| k == 2))
}

/// A point in the relative interior of an interior cell of a plane curve.
pub fn interior_point(
    f: &TropicalPolynomial,
    poset: &HypersurfacePoset,
    cell: usize,
) -> Vec<BigRational> {
    match realize(f, poset, cell).expect("interior cell of a plane curve") {
        Realization::Vertex(p) => p,
        Realization::Segment(a, b) => a.iter().zip(&b).map(|(x, y)| (x + y) / q(2)).collect(),
        Realization::Ray { apex, direction } => apex
            .iter()
            .zip(&direction)
            .map(|(x, &r)| x + q(r))
            .collect(),
    }
}

/// Argmin of `f` along `x + t e_i` at a few increasing times, the last one
/// beyond every breakpoint.
pub fn argmins_along(f: &TropicalPolynomial, x: &[BigRational], i: usize) -> Vec<Vec<usize>> {
    let spread: BigRational = f
        .coefficients()
        .map(|c| c.abs())
        .fold(BigRational::zero(), |a, b| a + b)
        + x.iter()
            .map(|c| c.abs())
            .fold(BigRational::zero(), |a, b| a + b)
            * q(f.degree() as i64);
    let far = spread * q(4) + q(1);
    [q(0), BigRational::new(1.into(), 3.into()), q(1), q(5), far]
        .into_iter()
        .map(|t| {
            let mut y = x.to_vec();
            y[i] += t;
            let (_, mut arg) = f.evaluate_with_argmin(&y).unwrap();
            arg.sort_unstable();
            arg
        })
        .collect()
}

/// Polynomial and signs with coordinates permuted: the new coefficient of
/// `u` is the old one of `v` where `u_j = v_{perm[j]}`.
pub fn permuted(
    f: &TropicalPolynomial,
    signs: &[bool],
    perm: &[usize],
) -> (TropicalPolynomial, Vec<bool>) {
    let pts = lattice_points(f.n(), f.degree());
    let index: HashMap<&ExponentVector, usize> =
        pts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let coeffs: Vec<BigRational> = f.coefficients().cloned().collect();
    let mut new_coeffs = vec![BigRational::zero(); pts.len()];
    let mut new_signs = vec![false; pts.len()];
    for (i, v) in pts.iter().enumerate() {
        let u = ExponentVector::new(perm.iter().map(|&p| v.entries()[p]).collect());
        let j = index[&u];
        new_coeffs[j] = coeffs[i].clone();
        new_signs[j] = signs[i];
    }
    (
        TropicalPolynomial::from_coefficients(f.n(), f.degree(), new_coeffs).unwrap(),
        new_signs,
    )
}

/// `eps_v + <z0, v>` mod 2.
pub fn gauged(n: usize, d: u32, signs: &[bool], z0: u32) -> Vec<bool> {
    lattice_points(n, d)
        .iter()
        .zip(signs)
        .map(|(v, &e)| {
            let dot: u32 = (0..n)
                .filter(|&i| z0 >> i & 1 == 1)
                .map(|i| v.entries()[i])
                .sum();
            e ^ (dot % 2 == 1)
        })
        .collect()
}

/// Every boundary facet claimed for an interior edge of a plane curve is
/// the limit of marching along the corresponding axis, and no other axis
/// keeps the edge's argmin.
pub fn check_sedentarity(f: &TropicalPolynomial) -> Result<(), String> {
    let s = RegularSubdivision::from_polynomial(f).map_err(|e| e.to_string())?;
    let poset = HypersurfacePoset::new(&s).map_err(|e| e.to_string())?;
    let faces = poset.face_poset();
    for (id, cell) in poset.cells().iter().enumerate() {
        if cell.sedentarity != 0 || cell.dim != 1 {
            continue;
        }
        let x = interior_point(f, &poset, id);
        let dual = faces.face(cell.dual_face);
        let boundary: Vec<usize> = poset
            .facets_of(id)
            .iter()
            .copied()
            .filter(|&c| poset.cell(c).sedentarity != 0)
            .collect();
        for &c in &boundary {
            let b = poset.cell(c);
            if b.dual_face != cell.dual_face
                || b.sedentarity.count_ones() != 1
                || dual.support & b.sedentarity != 0
            {
                return Err(format!("cell {id}: malformed boundary facet {c}"));
            }
        }
        for i in 0..3 {
            let along = argmins_along(f, &x, i);
            let claimed = boundary
                .iter()
                .any(|&c| poset.cell(c).sedentarity == 1 << i);
            let stays = along.iter().all(|a| *a == dual.vertices);
            let ends_in_cell = along.last() == Some(&dual.vertices);
            if claimed && !stays {
                return Err(format!(
                    "cell {id}: marching along axis {i} leaves the cell: {along:?}"
                ));
            }
            if !claimed && ends_in_cell {
                return Err(format!("cell {id}: missing boundary facet at axis {i}"));
            }
        }
    }
    Ok(())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    permutations(n - 1)
        .into_iter()
        .flat_map(|p| {
            (0..n).map(move |pos| {
                let mut v = p.clone();
                v.insert(pos, n - 1);
                v
            })
        })
        .collect()
}

/// Structural checks on one complex: nilpotent boundary, `b_0` equal to the
/// component count, and chain-level Euler characteristic.
pub fn check_structure(p: &Patchwork, signs: &[bool]) -> Result<BettiVector, String> {
    let c = p.complex(signs).map_err(|e| e.to_string())?;
    c.check_boundary_squared().map_err(|e| e.to_string())?;
    let b = c.betti().map_err(|e| e.to_string())?;
    if c.component_count() != b.b[0] {
        return Err(format!(
            "{} components but b0 = {}",
            c.component_count(),
            b.b[0]
        ));
    }
    if c.euler_characteristic() != b.chi {
        return Err(format!(
            "chain Euler characteristic {} but chi = {}",
            c.euler_characteristic(),
            b.chi
        ));
    }
    Ok(b)
}

/// Betti numbers are unchanged by permuting coordinates, by five random
/// gauges `eps + <z0, .>` and by flipping every sign.
pub fn check_symmetries(
    f: &TropicalPolynomial,
    signs: &[bool],
    r: &mut ChaCha8Rng,
) -> Result<(), String> {
    let (n, d) = (f.n(), f.degree());
    let p = Patchwork::new(f).map_err(|e| e.to_string())?;
    let base = check_structure(&p, signs)?;
    for perm in permutations(n) {
        let (g, s) = permuted(f, signs, &perm);
        let pg = Patchwork::new(&g).map_err(|e| e.to_string())?;
        let b = check_structure(&pg, &s)?;
        if b != base {
            return Err(format!("permutation {perm:?}: {b} instead of {base}"));
        }
    }
    for _ in 0..5 {
        let z0: u32 = r.gen_range(0..1 << n);
        let b = check_structure(&p, &gauged(n, d, signs, z0))?;
        if b != base {
            return Err(format!("gauge {z0:b}: {b} instead of {base}"));
        }
    }
    let flipped: Vec<bool> = signs.iter().map(|b| !b).collect();
    let b = check_structure(&p, &flipped)?;
    if b != base {
        return Err(format!("global flip: {b} instead of {base}"));
    }
    Ok(())
}
