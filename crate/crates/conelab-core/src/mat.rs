//! Small dense matrices with the handful of factorizations the crate
//! needs: Gaussian elimination, one-sided Jacobi SVD (high relative
//! accuracy for rank decisions) and cyclic Jacobi symmetric
//! eigendecomposition. Dimensions stay below ~20, so everything is
//! O(n^3) without blocking.

use alloc::vec::Vec;

use crate::vec::Vector;
#[allow(unused_imports)] // unused only when a std build shadows these
use crate::float::FloatExt;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Build from row slices; all rows must share a length.
    pub fn from_rows(rows: &[Vector]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Mat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            debug_assert_eq!(row.len(), c);
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matvec(&self, x: &[f64]) -> Vector {
        debug_assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| crate::vec::dot(self.row(i), x))
            .collect()
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// `x^T A y` for a square matrix.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        crate::vec::dot(x, &self.matvec(y))
    }

    /// Symmetrize in place: `(A + A^T)/2`.
    pub fn symmetrized(&self) -> Mat {
        let mut s = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                s[(i, j)] = 0.5 * (self[(i, j)] + self[(j, i)]);
            }
        }
        s
    }

    pub fn scaled(&self, s: f64) -> Mat {
        let mut m = self.clone();
        for v in m.data.iter_mut() {
            *v *= s;
        }
        m
    }

    pub fn add(&self, other: &Mat) -> Mat {
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Outer product `x y^T`.
    pub fn outer(x: &[f64], y: &[f64]) -> Mat {
        let mut m = Mat::zeros(x.len(), y.len());
        for i in 0..x.len() {
            for j in 0..y.len() {
                m[(i, j)] = x[i] * y[j];
            }
        }
        m
    }
}

impl core::ops::Index<(usize, usize)> for Mat {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Solve `A x = b` for square `A` by Gaussian elimination with partial
/// pivoting. Returns `None` if `A` is numerically singular.
pub fn solve(a: &Mat, b: &[f64]) -> Option<Vector> {
    debug_assert_eq!(a.rows, a.cols);
    debug_assert_eq!(a.rows, b.len());
    let n = a.rows;
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    for k in 0..n {
        let (piv, pmax) = (k..n)
            .map(|i| (i, m[(i, k)].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))?;
        if pmax < 1e-300 {
            return None;
        }
        if piv != k {
            for j in 0..n {
                let t = m[(k, j)];
                m[(k, j)] = m[(piv, j)];
                m[(piv, j)] = t;
            }
            rhs.swap(k, piv);
        }
        for i in (k + 1)..n {
            let f = m[(i, k)] / m[(k, k)];
            if f == 0.0 {
                continue;
            }
            for j in k..n {
                m[(i, j)] -= f * m[(k, j)];
            }
            rhs[i] -= f * rhs[k];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        for j in (i + 1)..n {
            s -= m[(i, j)] * x[j];
        }
        if m[(i, i)].abs() < 1e-300 {
            return None;
        }
        x[i] = s / m[(i, i)];
    }
    Some(x)
}

/// Thin SVD `A = U diag(sigma) V^T` via one-sided Jacobi on the columns
/// of `A`. `U` is `rows x cols`, `V` is `cols x cols`, singular values
/// are sorted descending. Columns of `U` with zero singular value are
/// left as zero vectors.
pub struct Svd {
    pub u: Mat,
    pub sigma: Vector,
    pub v: Mat,
}

pub fn svd(a: &Mat) -> Svd {
    let m = a.rows;
    let n = a.cols;
    let mut b = a.clone();
    let mut v = Mat::identity(n);
    let eps = 1e-15;
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = 0.0;
                for i in 0..m {
                    let bp = b[(i, p)];
                    let bq = b[(i, q)];
                    alpha += bp * bp;
                    beta += bq * bq;
                    gamma += bp * bq;
                }
                if gamma.abs() <= eps * (alpha * beta).sqrt() || alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = 1.0_f64.copysign(zeta) / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let bp = b[(i, p)];
                    let bq = b[(i, q)];
                    b[(i, p)] = c * bp - s * bq;
                    b[(i, q)] = s * bp + c * bq;
                }
                for i in 0..n {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = c * vp - s * vq;
                    v[(i, q)] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n)
        .map(|j| (0..m).map(|i| b[(i, j)] * b[(i, j)]).sum::<f64>().sqrt())
        .collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));
    let mut u = Mat::zeros(m, n);
    let mut vv = Mat::zeros(n, n);
    let mut sigma = vec![0.0; n];
    for (jj, &j) in order.iter().enumerate() {
        sigma[jj] = norms[j];
        if norms[j] > 0.0 {
            for i in 0..m {
                u[(i, jj)] = b[(i, j)] / norms[j];
            }
        }
        for i in 0..n {
            vv[(i, jj)] = v[(i, j)];
        }
    }
    Svd { u, sigma, v: vv }
}

/// Symmetric eigendecomposition `A = Q diag(lambda) Q^T` by cyclic
/// Jacobi. Eigenvalues are sorted descending; `Q` columns are the
/// eigenvectors.
pub fn sym_eig(a: &Mat) -> (Vector, Mat) {
    debug_assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut m = a.symmetrized();
    let mut q = Mat::identity(n);
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m[(i, j)] * m[(i, j)];
            }
        }
        if off.sqrt() <= 1e-15 * (1.0 + m.frobenius_norm()) {
            break;
        }
        for p in 0..n {
            for q_ in (p + 1)..n {
                let apq = m[(p, q_)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (m[(q_, q_)] - m[(p, p)]) / (2.0 * apq);
                let t = 1.0_f64.copysign(theta) / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q_)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q_)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q_, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q_, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let qkp = q[(k, p)];
                    let qkq = q[(k, q_)];
                    q[(k, p)] = c * qkp - s * qkq;
                    q[(k, q_)] = s * qkp + c * qkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[(y, y)].total_cmp(&m[(x, x)]));
    let mut lambda = vec![0.0; n];
    let mut qq = Mat::zeros(n, n);
    for (jj, &j) in order.iter().enumerate() {
        lambda[jj] = m[(j, j)];
        for i in 0..n {
            qq[(i, jj)] = q[(i, j)];
        }
    }
    (lambda, qq)
}

/// Minimum-norm least-squares solution of `A x = b` via the SVD, with
/// singular values below `tol_rank * sigma_max` treated as zero.
pub fn lstsq(a: &Mat, b: &[f64], tol_rank: f64) -> Vector {
    let Svd { u, sigma, v } = svd(a);
    let smax = sigma.first().copied().unwrap_or(0.0);
    let mut x = vec![0.0; a.cols];
    for j in 0..a.cols {
        if sigma[j] <= tol_rank * smax || sigma[j] == 0.0 {
            continue;
        }
        let uj = u.col(j);
        let coeff = crate::vec::dot(&uj, b) / sigma[j];
        for i in 0..a.cols {
            x[i] += coeff * v[(i, j)];
        }
    }
    x
}

/// Symmetric PD square root and inverse square root via eigendecomposition.
pub fn sym_sqrt_and_inv_sqrt(a: &Mat) -> (Mat, Mat) {
    let (lambda, q) = sym_eig(a);
    let n = a.rows;
    let mut s = Mat::zeros(n, n);
    let mut si = Mat::zeros(n, n);
    for k in 0..n {
        let l = lambda[k].max(0.0);
        let r = l.sqrt();
        let ri = if r > 0.0 { 1.0 / r } else { 0.0 };
        for i in 0..n {
            for j in 0..n {
                s[(i, j)] += r * q[(i, k)] * q[(j, k)];
                si[(i, j)] += ri * q[(i, k)] * q[(j, k)];
            }
        }
    }
    (s, si)
}

/// Inverse of a symmetric PD matrix via eigendecomposition.
pub fn sym_inv(a: &Mat) -> Mat {
    let (lambda, q) = sym_eig(a);
    let n = a.rows;
    let mut inv = Mat::zeros(n, n);
    for k in 0..n {
        let li = if lambda[k].abs() > 0.0 { 1.0 / lambda[k] } else { 0.0 };
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] += li * q[(i, k)] * q[(j, k)];
            }
        }
    }
    inv
}
