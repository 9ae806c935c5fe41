//! Small exact integer linear algebra on lattice coordinates.

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination.
pub(crate) fn det(rows: &[Vec<i64>]) -> i128 {
    let m = rows.len();
    if m == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            debug_assert_eq!(r.len(), m);
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..m {
        if a[k][k] == 0 {
            match (k + 1..m).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let v = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                    .expect("determinant overflow");
                a[i][j] = v / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[m - 1][m - 1]
}

/// Rank of an integer matrix (rows need not be square).
pub(crate) fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c] != 0 {
                let (f, g) = (a[r][c], a[i][c]);
                let (top, rest) = a.split_at_mut(i);
                for (x, &y) in rest[0][c..cols].iter_mut().zip(&top[r][c..cols]) {
                    *x = *x * f - y * g;
                }
                let gcd = a[i].iter().fold(0i128, |acc, &x| gcd(acc, x));
                if gcd > 1 {
                    a[i].iter_mut().for_each(|x| *x /= gcd);
                }
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Affine rank (dimension of the affine hull) of a point set.
pub(crate) fn affine_dimension(points: &[&[i64]]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = points[0];
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs)
}
