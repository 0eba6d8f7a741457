//! Exact Gaussian elimination on small square matrices.

use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect()
}

pub fn multiply(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn determinant(a: &Matrix) -> Scalar {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Gauss–Jordan inverse; `None` for a singular matrix.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut m = a.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot, col);
        inv.swap(pivot, col);
        let p = m[col][col].recip()?;
        for c in 0..n {
            m[col][c] *= &p;
            inv[col][c] *= &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in 0..n {
                let dm = &factor * &m[col][c];
                m[r][c] -= dm;
                let di = &factor * &inv[col][c];
                inv[r][c] -= di;
            }
        }
    }
    Some(inv)
}

/// Counts of (positive, negative, zero) pivots of a symmetric matrix under
/// congruence diagonalisation. By Sylvester's law this is the signature.
pub fn signature(a: &Matrix) -> (usize, usize, usize) {
    let n = a.len();
    let mut m = a.clone();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..n {
        if let Some(p) = (k..n).find(|&i| !m[i][i].is_zero()) {
            swap_sym(&mut m, k, p);
        } else {
            // All remaining diagonal entries vanish: borrow an off-diagonal
            // entry by adding row/column j to row/column i.
            let pair = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .find(|&(i, j)| i != j && !m[i][j].is_zero());
            let Some((i, j)) = pair else {
                break;
            };
            for c in 0..n {
                let v = m[j][c].clone();
                m[i][c] += v;
            }
            for r in 0..n {
                let v = m[r][j].clone();
                m[r][i] += v;
            }
            swap_sym(&mut m, k, i);
        }
        let p = m[k][k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let factor = &m[r][k] / &p;
            for c in k..n {
                let d = &factor * &m[k][c];
                m[r][c] -= d;
            }
            for rr in k..n {
                let d = &factor * &m[rr][k];
                m[rr][r] -= d;
            }
        }
    }
    (pos, neg, n - pos - neg)
}

fn swap_sym(m: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    m.swap(a, b);
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}
