//! Integer row reduction: Hermite normal form and integer kernels.
//!
//! All routines use unimodular row operations only, so row lattices are
//! preserved exactly. Entries are `i128`; the lattices handled here are
//! tiny (rank ≤ a handful) and never come near overflow.

use num_integer::Integer;

/// Reduces the first `ncols` columns of `mat` to row echelon form with
/// positive pivots and entries above each pivot reduced into `[0, pivot)`.
/// Columns past `ncols` ride along. Returns the pivot columns.
pub(crate) fn echelonize(mat: &mut [Vec<i128>], ncols: usize) -> Vec<usize> {
    let nrows = mat.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= nrows {
            break;
        }
        // gather the gcd of the column (rows row..) into `row`
        for r in row + 1..nrows {
            if mat[r][col] == 0 {
                continue;
            }
            let a = mat[row][col];
            let b = mat[r][col];
            let g = a.extended_gcd(&b);
            // [x y; -b/g a/g] has determinant 1
            let (x, y) = (g.x, g.y);
            let (bg, ag) = (b / g.gcd, a / g.gcd);
            let width = mat[row].len();
            for c in 0..width {
                let u = mat[row][c];
                let v = mat[r][c];
                mat[row][c] = x * u + y * v;
                mat[r][c] = -bg * u + ag * v;
            }
        }
        if mat[row][col] == 0 {
            continue;
        }
        if mat[row][col] < 0 {
            for v in mat[row].iter_mut() {
                *v = -*v;
            }
        }
        let p = mat[row][col];
        for r in 0..row {
            let q = Integer::div_floor(&mat[r][col], &p);
            if q != 0 {
                let width = mat[r].len();
                for c in 0..width {
                    let sub = q * mat[row][c];
                    mat[r][c] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Hermite normal form basis of the row lattice spanned by `rows`.
pub fn hnf_rows(rows: &[Vec<i128>], ncols: usize) -> Vec<Vec<i128>> {
    let mut mat: Vec<Vec<i128>> = rows.to_vec();
    let rank = echelonize(&mut mat, ncols).len();
    mat.truncate(rank);
    mat
}

/// HNF basis of `{v ∈ Z^ncols : row · v = 0 for every row}`.
pub fn integer_kernel(rows: &[Vec<i128>], ncols: usize) -> Vec<Vec<i128>> {
    // transpose augmented with the identity: [A^T | I]
    let mut mat: Vec<Vec<i128>> = (0..ncols)
        .map(|c| {
            let mut line: Vec<i128> = rows.iter().map(|r| r[c]).collect();
            line.extend((0..ncols).map(|k| i128::from(k == c)));
            line
        })
        .collect();
    let m = rows.len();
    let rank = echelonize(&mut mat, m).len();
    let kernel: Vec<Vec<i128>> = mat[rank..].iter().map(|line| line[m..].to_vec()).collect();
    hnf_rows(&kernel, ncols)
}

/// Solves `a · x = b` over the rationals for a small dense system; returns
/// `None` when inconsistent. Free variables are set to zero.
pub(crate) fn solve_rational(
    a: &[Vec<crate::num::Rational>],
    b: &[crate::num::Rational],
    ncols: usize,
) -> Option<Vec<crate::num::Rational>> {
    use crate::num::Rational;
    use num_traits::Zero;
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in 0..=ncols {
                    let sub = f * m[row][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols];
    }
    Some(x)
}
