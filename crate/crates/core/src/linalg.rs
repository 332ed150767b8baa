//! Dense helpers shared by the rest of the crate.
//!
//! All matrices are stored with complex entries. Routines that take a
//! [`FieldTag`] run in real arithmetic when the tag is `Real`, so real
//! inputs always produce real outputs (imaginary parts exactly zero).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::subspace::FieldTag;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Thin SVD `m = u · diag(sigma) · vᴴ`, singular values sorted descending.
pub(crate) struct Svd {
    pub u: CMatrix,
    pub sigma: Vec<f64>,
    pub v: CMatrix,
}

pub(crate) fn to_real(m: &CMatrix) -> DMatrix<f64> {
    m.map(|z| z.re)
}

pub(crate) fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(|x| C64::new(x, 0.0))
}

pub(crate) fn svd(m: &CMatrix, field: FieldTag) -> Svd {
    let (rows, cols) = m.shape();
    let k = rows.min(cols);
    if k == 0 {
        return Svd {
            u: CMatrix::zeros(rows, 0),
            sigma: Vec::new(),
            v: CMatrix::zeros(cols, 0),
        };
    }
    let (u, sigma, v) = match field {
        FieldTag::Real => {
            let a = faer::Mat::<f64>::from_fn(rows, cols, |i, j| m[(i, j)].re);
            let s = a.thin_svd().expect("SVD did not converge");
            let u = CMatrix::from_fn(rows, k, |i, j| C64::new(s.U()[(i, j)], 0.0));
            let v = CMatrix::from_fn(cols, k, |i, j| C64::new(s.V()[(i, j)], 0.0));
            let d = s.S().column_vector();
            (u, (0..k).map(|i| d[i]).collect::<Vec<f64>>(), v)
        }
        FieldTag::Complex => {
            let a = faer::Mat::<faer::c64>::from_fn(rows, cols, |i, j| {
                let z = m[(i, j)];
                faer::c64::new(z.re, z.im)
            });
            let s = a.thin_svd().expect("SVD did not converge");
            let conv = |z: faer::c64| C64::new(z.re, z.im);
            let u = CMatrix::from_fn(rows, k, |i, j| conv(s.U()[(i, j)]));
            let v = CMatrix::from_fn(cols, k, |i, j| conv(s.V()[(i, j)]));
            let d = s.S().column_vector();
            (u, (0..k).map(|i| d[i].re).collect::<Vec<f64>>(), v)
        }
    };
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| sigma[b].total_cmp(&sigma[a]));
    Svd {
        u: select_columns(&u, &order),
        sigma: order.iter().map(|&i| sigma[i]).collect(),
        v: select_columns(&v, &order),
    }
}

pub(crate) fn select_columns(m: &CMatrix, cols: &[usize]) -> CMatrix {
    CMatrix::from_fn(m.nrows(), cols.len(), |i, j| m[(i, cols[j])])
}

pub(crate) fn hcat(a: &CMatrix, b: &CMatrix) -> CMatrix {
    debug_assert_eq!(a.nrows(), b.nrows());
    let mut out = CMatrix::zeros(a.nrows(), a.ncols() + b.ncols());
    out.columns_mut(0, a.ncols()).copy_from(a);
    out.columns_mut(a.ncols(), b.ncols()).copy_from(b);
    out
}

/// Default relative cutoff for numerical rank decisions.
pub(crate) fn default_rank_rel(rows: usize, cols: usize) -> f64 {
    rows.max(cols).max(1) as f64 * f64::EPSILON
}

/// Orthonormal basis of the column space of `m`, with rank decided by a
/// relative singular-value cutoff.
pub(crate) fn orthonormal_range(m: &CMatrix, field: FieldTag, rank_rel: Option<f64>) -> CMatrix {
    let s = svd(m, field);
    let rel = rank_rel.unwrap_or_else(|| default_rank_rel(m.nrows(), m.ncols()));
    let rank = numerical_rank(&s.sigma, rel);
    s.u.columns(0, rank).into_owned()
}

pub(crate) fn numerical_rank(sigma: &[f64], rel: f64) -> usize {
    let Some(&max) = sigma.first() else { return 0 };
    if max <= 0.0 {
        return 0;
    }
    sigma.iter().filter(|&&s| s > rel * max).count()
}

/// Orthonormal basis of the orthogonal complement of the span of the
/// orthonormal columns `q` (an `n × (n − k)` matrix).
pub(crate) fn complement_basis(q: &CMatrix, field: FieldTag) -> CMatrix {
    let n = q.nrows();
    let k = q.ncols();
    if k == 0 {
        return CMatrix::identity(n, n);
    }
    if k >= n {
        return CMatrix::zeros(n, 0);
    }
    let projector = CMatrix::identity(n, n) - q * q.adjoint();
    let s = svd(&projector, field);
    s.u.columns(0, n - k).into_owned()
}

/// Re-orthonormalizes columns that are already (nearly) independent,
/// preserving their span. Householder QR.
pub(crate) fn qr_orthonormalize(m: &CMatrix, field: FieldTag) -> CMatrix {
    let (rows, cols) = m.shape();
    if cols == 0 || rows == 0 {
        return CMatrix::zeros(rows, 0);
    }
    match field {
        FieldTag::Real => to_complex(&to_real(m).qr().q()),
        FieldTag::Complex => m.clone().qr().q(),
    }
}

/// `ln |det m|`, via LU. Returns `-inf` for a singular matrix and `0` for
/// an empty one.
pub(crate) fn log_abs_det(m: &CMatrix) -> f64 {
    assert!(m.is_square(), "determinant of a non-square matrix");
    if m.nrows() == 0 {
        return 0.0;
    }
    let lu = m.clone().lu();
    let u = lu.u();
    (0..u.nrows()).map(|i| u[(i, i)].norm().ln()).sum()
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub(crate) fn hermitian_eigenvalues(m: &CMatrix, field: FieldTag) -> Vec<f64> {
    assert!(m.is_square(), "eigenvalues of a non-square matrix");
    if m.nrows() == 0 {
        return Vec::new();
    }
    let n = m.nrows();
    match field {
        FieldTag::Real => faer::Mat::<f64>::from_fn(n, n, |i, j| m[(i, j)].re)
            .self_adjoint_eigenvalues(faer::Side::Lower)
            .expect("eigendecomposition did not converge"),
        FieldTag::Complex => faer::Mat::<faer::c64>::from_fn(n, n, |i, j| faer::c64::new(m[(i, j)].re, m[(i, j)].im))
            .self_adjoint_eigenvalues(faer::Side::Lower)
            .expect("eigendecomposition did not converge"),
    }
}

/// `1 − det(I − g)` for Hermitian `0 ⪯ g ⪯ I`, accurate when `g` is small.
pub(crate) fn one_minus_det_identity_minus(g: &CMatrix, field: FieldTag) -> f64 {
    let log_det: f64 = hermitian_eigenvalues(g, field)
        .into_iter()
        .map(|mu| (-mu.clamp(0.0, 1.0)).ln_1p())
        .sum();
    -log_det.exp_m1()
}

/// Minimum-norm least-squares solution of `m x = b`, or `None` when `m`
/// is numerically zero.
pub(crate) fn least_squares(m: &CMatrix, b: &CVector, field: FieldTag) -> Option<CVector> {
    let s = svd(m, field);
    let rank = numerical_rank(&s.sigma, default_rank_rel(m.nrows(), m.ncols()));
    if rank == 0 {
        return None;
    }
    let ub = s.u.columns(0, rank).adjoint() * b;
    let scaled = CVector::from_iterator(rank, (0..rank).map(|i| ub[i] / s.sigma[i]));
    Some(s.v.columns(0, rank) * scaled)
}

/// Largest absolute entry of `aᴴa − I`.
pub(crate) fn orthonormality_error(a: &CMatrix) -> f64 {
    let gram = a.adjoint() * a;
    let k = gram.nrows();
    let mut worst = 0.0_f64;
    for i in 0..k {
        for j in 0..k {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((gram[(i, j)] - target).norm());
        }
    }
    worst
}

pub(crate) fn max_imag(m: &CMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.im.abs()))
}

pub fn real_vector(values: &[f64]) -> CVector {
    CVector::from_iterator(values.len(), values.iter().map(|&x| C64::new(x, 0.0)))
}

pub fn real_matrix_from_columns(rows: usize, columns: &[Vec<f64>]) -> CMatrix {
    CMatrix::from_fn(rows, columns.len(), |i, j| C64::new(columns[j][i], 0.0))
}

pub fn complex_matrix_from_columns(rows: usize, columns: &[Vec<C64>]) -> CMatrix {
    CMatrix::from_fn(rows, columns.len(), |i, j| columns[j][i])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svd_of_real_input_stays_real() {
        let m = real_matrix_from_columns(3, &[vec![2.0, -1.0, 0.0], vec![2.0, 0.0, 1.0]]);
        let s = svd(&m, FieldTag::Real);
        assert_eq!(max_imag(&s.u), 0.0);
        assert!(s.sigma[0] >= s.sigma[1]);
        let rebuilt = &s.u * CMatrix::from_diagonal(&real_vector(&s.sigma)) * s.v.adjoint();
        assert!((rebuilt - m).norm() < 1e-12);
    }

    #[test]
    fn empty_shapes() {
        let m = CMatrix::zeros(4, 0);
        assert_eq!(orthonormal_range(&m, FieldTag::Real, None).shape(), (4, 0));
        assert_eq!(complement_basis(&m, FieldTag::Complex).shape(), (4, 4));
        assert_eq!(log_abs_det(&CMatrix::zeros(0, 0)), 0.0);
    }

    #[test]
    fn log_det_matches_direct() {
        let m = real_matrix_from_columns(2, &[vec![5.0, 4.0], vec![4.0, 5.0]]);
        assert!((log_abs_det(&m) - 9f64.ln()).abs() < 1e-14);
        let singular = real_matrix_from_columns(2, &[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(log_abs_det(&singular) < -30.0);
    }
}
