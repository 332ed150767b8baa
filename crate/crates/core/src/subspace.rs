//! The [`Subspace`] value type and the operations that only need
//! orthonormal bases and principal angles.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, C64};
use crate::principal::principal_decomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Real,
    Complex,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldTag::Real => "real",
            FieldTag::Complex => "complex",
        })
    }
}

/// Numerical thresholds used by rank decisions and predicates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceProfile {
    /// Relative singular-value cutoff; `None` means `max(rows, cols) · ε`.
    pub rank_rel: Option<f64>,
    /// Radians; angles below this count as zero, above `π/2 − angle_tol` as right angles.
    pub angle_tol: f64,
    pub dist_tol: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        ToleranceProfile {
            rank_rel: None,
            angle_tol: 1e-8,
            dist_tol: 1e-9,
        }
    }
}

/// Maximum deviation of `basisᴴ·basis` from the identity that a stored
/// basis may have.
pub const ORTHONORMAL_TOL: f64 = 1e-12;

/// A linear subspace `V ⊂ 𝔽ⁿ`, stored as an `n × p` matrix with
/// orthonormal columns. `p = 0` is the zero subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient: usize,
    field: FieldTag,
    basis: CMatrix,
}

impl Subspace {
    pub fn zero(ambient: usize, field: FieldTag) -> Self {
        Subspace {
            ambient,
            field,
            basis: CMatrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize, field: FieldTag) -> Self {
        Subspace {
            ambient,
            field,
            basis: CMatrix::identity(ambient, ambient),
        }
    }

    /// Span of the columns of `vectors`. The dimension is the numerical
    /// rank under `tol.rank_rel`; the stored basis is re-orthonormalized.
    pub fn from_spanning(vectors: &CMatrix, field: FieldTag, tol: &ToleranceProfile) -> Result<Self> {
        if vectors.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        if field == FieldTag::Real && linalg::max_imag(vectors) != 0.0 {
            return Err(Error::FieldMismatch(FieldTag::Real, FieldTag::Complex));
        }
        let basis = linalg::orthonormal_range(vectors, field, tol.rank_rel);
        Ok(Subspace {
            ambient: vectors.nrows(),
            field,
            basis,
        })
    }

    /// Like [`Subspace::from_spanning`], but checks the row count against
    /// an expected ambient dimension.
    pub fn from_spanning_in(
        ambient: usize,
        vectors: &CMatrix,
        field: FieldTag,
        tol: &ToleranceProfile,
    ) -> Result<Self> {
        if vectors.nrows() != ambient {
            return Err(Error::AmbientMismatch(ambient, vectors.nrows()));
        }
        Self::from_spanning(vectors, field, tol)
    }

    pub fn from_real_columns(ambient: usize, columns: &[Vec<f64>]) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != ambient) {
            return Err(Error::AmbientMismatch(ambient, bad.len()));
        }
        let m = linalg::real_matrix_from_columns(ambient, columns);
        Self::from_spanning(&m, FieldTag::Real, &ToleranceProfile::default())
    }

    pub fn from_complex_columns(ambient: usize, columns: &[Vec<C64>]) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != ambient) {
            return Err(Error::AmbientMismatch(ambient, bad.len()));
        }
        let m = linalg::complex_matrix_from_columns(ambient, columns);
        Self::from_spanning(&m, FieldTag::Complex, &ToleranceProfile::default())
    }

    /// Wraps a basis that is already orthonormal, keeping it verbatim.
    pub fn from_orthonormal(basis: CMatrix, field: FieldTag) -> Result<Self> {
        if basis.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        if field == FieldTag::Real && linalg::max_imag(&basis) != 0.0 {
            return Err(Error::FieldMismatch(FieldTag::Real, FieldTag::Complex));
        }
        if basis.ncols() > basis.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "{} columns in ambient dimension {}",
                basis.ncols(),
                basis.nrows()
            )));
        }
        let err = linalg::orthonormality_error(&basis);
        if err > ORTHONORMAL_TOL {
            return Err(Error::NotOrthonormal(err));
        }
        Ok(Subspace {
            ambient: basis.nrows(),
            field,
            basis,
        })
    }

    /// Span of a frame whose columns are known to be independent (and
    /// usually nearly orthonormal already).
    pub(crate) fn from_frame(frame: &CMatrix, field: FieldTag) -> Self {
        let basis = if linalg::orthonormality_error(frame) <= 1e-14 {
            frame.clone()
        } else {
            linalg::qr_orthonormalize(frame, field)
        };
        Subspace {
            ambient: frame.nrows(),
            field,
            basis,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Errors unless both live in the same ambient space over the same field.
    pub fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn projector(&self) -> CMatrix {
        &self.basis * self.basis.adjoint()
    }

    /// `V⊥`.
    pub fn complement(&self) -> Subspace {
        Subspace {
            ambient: self.ambient,
            field: self.field,
            basis: linalg::complement_basis(&self.basis, self.field),
        }
    }

    /// Orthogonal projection `P_W x`.
    pub fn project_vector(&self, x: &CVector) -> Result<CVector> {
        if x.len() != self.ambient {
            return Err(Error::AmbientMismatch(self.ambient, x.len()));
        }
        if self.field == FieldTag::Real && x.iter().any(|z| z.im != 0.0) {
            return Err(Error::FieldMismatch(FieldTag::Real, FieldTag::Complex));
        }
        Ok(&self.basis * (self.basis.adjoint() * x))
    }

    /// `P_W(V)`, the image of `other` under the projection onto `self`,
    /// spanned by the principal vectors of `W` whose angle to `V` is below
    /// `π/2 − angle_tol`.
    pub fn image_of(&self, other: &Subspace) -> Result<Subspace> {
        let tol = ToleranceProfile::default();
        let pd = principal_decomposition(other, self)?;
        let k = pd.angles().iter().filter(|&&a| a < FRAC_PI_2 - tol.angle_tol).count();
        let frame = pd.f_basis().columns(0, k).into_owned();
        Ok(Subspace::from_frame(&frame, self.field))
    }

    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        self.intersection_dim_tol(other, &ToleranceProfile::default())
    }

    /// Number of principal angles below `tol.angle_tol`.
    pub fn intersection_dim_tol(&self, other: &Subspace, tol: &ToleranceProfile) -> Result<usize> {
        let pd = principal_decomposition(self, other)?;
        Ok(pd.angles().iter().filter(|&&a| a < tol.angle_tol).count())
    }

    /// `V ∩ W`, spanned by the principal vectors with (numerically) zero angle.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        let tol = ToleranceProfile::default();
        let pd = principal_decomposition(self, other)?;
        let k = pd.angles().iter().filter(|&&a| a < tol.angle_tol).count();
        let frame = pd.e_basis().columns(0, k).into_owned();
        Ok(Subspace::from_frame(&frame, self.field))
    }

    /// `self ⊇ other`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.contains_tol(other, &ToleranceProfile::default())
    }

    pub fn contains_tol(&self, other: &Subspace, tol: &ToleranceProfile) -> Result<bool> {
        self.check_compatible(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(other.intersection_dim_tol(self, tol)? == other.dim())
    }

    /// Same span, up to `angle_tol`.
    pub fn same_span(&self, other: &Subspace) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.contains(other)?)
    }

    /// `V ∂⊥ W`: `V` has a nonzero vector orthogonal to `W`.
    pub fn is_partially_orthogonal(&self, other: &Subspace) -> Result<bool> {
        self.is_partially_orthogonal_tol(other, &ToleranceProfile::default())
    }

    pub fn is_partially_orthogonal_tol(&self, other: &Subspace, tol: &ToleranceProfile) -> Result<bool> {
        self.check_compatible(other)?;
        if self.dim() > other.dim() {
            return Ok(true);
        }
        if self.dim() == 0 {
            return Ok(false);
        }
        let pd = principal_decomposition(self, other)?;
        let largest = pd.angles().last().copied().unwrap_or(0.0);
        Ok(largest >= FRAC_PI_2 - tol.angle_tol)
    }

    /// Every vector of `self` is orthogonal to `other` (all principal
    /// angles are right angles).
    pub fn is_orthogonal_to(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        let tol = ToleranceProfile::default();
        if self.is_zero() || other.is_zero() {
            return Ok(true);
        }
        let cross = self.basis.adjoint() * other.basis();
        Ok(cross.iter().all(|z| z.norm() < tol.angle_tol))
    }

    /// A `min(p, q)`-subspace of `self` (= `W`) containing `P_W(V)`:
    /// the span of the first `min(p, q)` principal vectors of `W` with
    /// respect to `V`.
    pub fn projection_subspace(&self, v: &Subspace) -> Result<Subspace> {
        let pd = principal_decomposition(v, self)?;
        let m = v.dim().min(self.dim());
        let frame = pd.f_basis().columns(0, m).into_owned();
        Ok(Subspace::from_frame(&frame, self.field))
    }

    /// Underlying real subspace of `ℝ²ⁿ`, spanned by `v` and `iv` for each
    /// basis vector. Coordinates are interleaved as `(x₁, y₁, …, xₙ, yₙ)`.
    pub fn realify(&self) -> Result<Subspace> {
        if self.field != FieldTag::Complex {
            return Err(Error::FieldMismatch(FieldTag::Complex, self.field));
        }
        let n = self.ambient;
        let p = self.dim();
        let mut frame = CMatrix::zeros(2 * n, 2 * p);
        for j in 0..p {
            for i in 0..n {
                let z = self.basis[(i, j)];
                // v
                frame[(2 * i, 2 * j)] = C64::new(z.re, 0.0);
                frame[(2 * i + 1, 2 * j)] = C64::new(z.im, 0.0);
                // i·v = (−y, x)
                frame[(2 * i, 2 * j + 1)] = C64::new(-z.im, 0.0);
                frame[(2 * i + 1, 2 * j + 1)] = C64::new(z.re, 0.0);
            }
        }
        Ok(Subspace::from_frame(&frame, FieldTag::Real))
    }

    /// `V ⊕ X` for orthogonal `V` and `X`.
    pub fn direct_sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if !self.is_orthogonal_to(other)? {
            return Err(Error::InvalidArgument(
                "direct sum requires orthogonal summands".into(),
            ));
        }
        let frame = linalg::hcat(&self.basis, &other.basis);
        Ok(Subspace::from_frame(&frame, self.field))
    }

    /// `self ∩ other⊥`.
    pub fn minus(&self, other: &Subspace) -> Result<Subspace> {
        self.intersection(&other.complement())
    }
}

pub fn real_vector(values: &[f64]) -> CVector {
    linalg::real_vector(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::random::{random_subspace, rng_for};

    fn e(n: usize, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    }

    #[test]
    fn spanning_coordinate_plane() {
        let v = Subspace::from_real_columns(3, &[e(3, 0), e(3, 1)]).unwrap();
        assert_eq!(v.dim(), 2);
        assert!(linalg::orthonormality_error(v.basis()) < 1e-15);
        assert_eq!(v.basis()[(2, 0)].norm() + v.basis()[(2, 1)].norm(), 0.0);
    }

    #[test]
    fn spanning_dependent_columns() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = Subspace::from_real_columns(2, &[vec![s, s], vec![2.0 * s, 2.0 * s]]).unwrap();
        assert_eq!(v.dim(), 1);
    }

    #[test]
    fn spanning_rejects_bad_input() {
        let bad = linalg::real_matrix_from_columns(2, &[vec![f64::NAN, 0.0]]);
        assert_eq!(
            Subspace::from_spanning(&bad, FieldTag::Real, &ToleranceProfile::default()),
            Err(Error::NonFinite)
        );
        let m = linalg::real_matrix_from_columns(2, &[vec![1.0, 0.0]]);
        assert!(matches!(
            Subspace::from_spanning_in(3, &m, FieldTag::Real, &ToleranceProfile::default()),
            Err(Error::AmbientMismatch(3, 2))
        ));
        assert!(Subspace::from_real_columns(3, &[vec![1.0, 0.0]]).is_err());
    }

    #[test]
    fn spanning_example_vectors_in_r5() {
        let v1 = vec![2.0, -1.0, 0.0, 0.0, 0.0];
        let v2 = vec![2.0, 0.0, 1.0, 0.0, 0.0];
        let v = Subspace::from_real_columns(5, &[v1.clone(), v2.clone()]).unwrap();
        assert_eq!(v.dim(), 2);
        for x in [v1, v2] {
            let x = real_vector(&x);
            let px = v.project_vector(&x).unwrap();
            assert!((px - x).norm() < 1e-12);
        }
    }

    #[test]
    fn complement_examples() {
        let line = Subspace::from_real_columns(3, &[e(3, 0)]).unwrap();
        let c = line.complement();
        assert_eq!(c.dim(), 2);
        let plane = Subspace::from_real_columns(3, &[e(3, 1), e(3, 2)]).unwrap();
        assert!(c.same_span(&plane).unwrap());
        let z = Subspace::zero(4, FieldTag::Complex);
        assert!(z.complement().is_full());
        assert!(Subspace::full(4, FieldTag::Real).complement().is_zero());
    }

    #[test]
    fn complement_is_involutive_and_orthogonal() {
        let mut rng = rng_for(11, 0);
        for field in [FieldTag::Real, FieldTag::Complex] {
            for p in 0..=6 {
                let v = random_subspace(&mut rng, 6, p, field);
                let c = v.complement();
                assert_eq!(c.dim(), 6 - p);
                let cross = v.basis().adjoint() * c.basis();
                assert!(cross.iter().all(|z| z.norm() < 1e-12));
                let cc = c.complement();
                assert_eq!(v.intersection_dim(&cc).unwrap(), p);
            }
        }
    }

    #[test]
    fn projection_basics() {
        let w = Subspace::from_real_columns(3, &[e(3, 0), e(3, 1)]).unwrap();
        let inside = real_vector(&[0.3, -2.0, 0.0]);
        assert!((w.project_vector(&inside).unwrap() - &inside).norm() < 1e-15);
        let normal = real_vector(&[0.0, 0.0, 5.0]);
        assert!(w.project_vector(&normal).unwrap().norm() < 1e-15);
        assert!(w.project_vector(&real_vector(&[1.0, 2.0])).is_err());
    }

    #[test]
    fn intersection_dim_with_planted_block() {
        let mut rng = rng_for(5, 1);
        for field in [FieldTag::Real, FieldTag::Complex] {
            for k in 0..=2 {
                let frame = random_subspace(&mut rng, 8, 6, field);
                // shared k columns, then 2 private columns each
                let b = frame.basis();
                let v = Subspace::from_frame(&linalg::hcat(&b.columns(0, k).into_owned(), &b.columns(k, 2).into_owned()), field);
                let w = Subspace::from_frame(&linalg::hcat(&b.columns(0, k).into_owned(), &b.columns(k + 2, 2).into_owned()), field);
                assert_eq!(v.intersection_dim(&w).unwrap(), k);
                assert_eq!(v.intersection(&w).unwrap().dim(), k);
            }
        }
    }

    #[test]
    fn contains_and_perturbation() {
        let w = Subspace::from_real_columns(3, &[e(3, 0), e(3, 1)]).unwrap();
        let v = Subspace::from_real_columns(3, &[vec![1.0, 1.0, 0.0]]).unwrap();
        assert!(w.contains(&v).unwrap());
        let perp = Subspace::from_real_columns(3, &[e(3, 2)]).unwrap();
        assert!(!w.contains(&perp).unwrap());
        let a = 2.0 * ToleranceProfile::default().angle_tol;
        let tilted = Subspace::from_real_columns(3, &[vec![a.cos(), 0.0, a.sin()]]).unwrap();
        assert!(!w.contains(&tilted).unwrap());
        let barely = Subspace::from_real_columns(3, &[vec![1.0, 0.0, 1e-12]]).unwrap();
        assert!(w.contains(&barely).unwrap());
    }

    #[test]
    fn partial_orthogonality() {
        let plane = Subspace::from_real_columns(3, &[e(3, 0), e(3, 1)]).unwrap();
        let line = Subspace::from_real_columns(3, &[vec![1.0, 0.0, 1.0]]).unwrap();
        assert!(plane.is_partially_orthogonal(&line).unwrap());
        assert!(!line.is_partially_orthogonal(&plane).unwrap());
        assert!(!plane.is_partially_orthogonal(&plane).unwrap());
    }

    #[test]
    fn projection_subspace_cases() {
        let mut rng = rng_for(9, 2);
        let w = random_subspace(&mut rng, 6, 3, FieldTag::Real);
        // V ⊂ W
        let v = Subspace::from_frame(&w.basis().columns(0, 2).into_owned(), FieldTag::Real);
        let wp = w.projection_subspace(&v).unwrap();
        assert_eq!(wp.dim(), 2);
        assert!(wp.contains(&v).unwrap());
        // p > q returns W
        let big = random_subspace(&mut rng, 6, 4, FieldTag::Real);
        assert!(w.projection_subspace(&big).unwrap().same_span(&w).unwrap());
        // zero W
        let z = Subspace::zero(6, FieldTag::Real);
        assert!(z.projection_subspace(&big).unwrap().is_zero());
    }

    #[test]
    fn realify_layout() {
        let i = C64::new(0.0, 1.0);
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let v = Subspace::from_complex_columns(3, &[vec![one, zero, i]]).unwrap();
        let vr = v.realify().unwrap();
        assert_eq!(vr.ambient(), 6);
        assert_eq!(vr.dim(), 2);
        let expected = Subspace::from_real_columns(
            6,
            &[vec![1.0, 0.0, 0.0, 0.0, 0.0, 1.0], vec![0.0, 1.0, 0.0, 0.0, -1.0, 0.0]],
        )
        .unwrap();
        assert!(vr.same_span(&expected).unwrap());
        assert!(Subspace::zero(3, FieldTag::Complex).realify().unwrap().is_zero());
        assert!(Subspace::zero(3, FieldTag::Real).realify().is_err());
    }

    #[test]
    fn direct_sums() {
        let x = Subspace::from_real_columns(3, &[e(3, 0)]).unwrap();
        let y = Subspace::from_real_columns(3, &[e(3, 1)]).unwrap();
        let xy = x.direct_sum(&y).unwrap();
        assert!(xy.same_span(&Subspace::from_real_columns(3, &[e(3, 0), e(3, 1)]).unwrap()).unwrap());
        assert!(x.direct_sum(&Subspace::zero(3, FieldTag::Real)).unwrap().same_span(&x).unwrap());
        let slanted = Subspace::from_real_columns(3, &[vec![1.0, 1.0, 0.0]]).unwrap();
        assert!(x.direct_sum(&slanted).is_err());
        let mut rng = rng_for(3, 3);
        let v = random_subspace(&mut rng, 5, 2, FieldTag::Complex);
        assert!(v.direct_sum(&v.complement()).unwrap().is_full());
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Subspace::full(2, FieldTag::Real);
        let b = Subspace::full(2, FieldTag::Complex);
        assert!(matches!(a.intersection_dim(&b), Err(Error::FieldMismatch(..))));
        assert!(matches!(a.intersection_dim(&Subspace::full(3, FieldTag::Real)), Err(Error::AmbientMismatch(2, 3))));
    }
}
