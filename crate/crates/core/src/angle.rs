//! The asymmetric angle `Θ(V, W)`: how much `p`-volumes of `V` shrink when
//! projected onto `W`, computed along five independent routes.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{blade_of, project_multivector, Blade};
use crate::linalg::{self, CMatrix};
use crate::metrics::{cos_product, one_minus_cos2_product};
use crate::principal::principal_decomposition;
use crate::subspace::{FieldTag, Subspace, ToleranceProfile};

/// Negative round-off tolerated in a computed cosine.
const NEGATIVE_COS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Route {
    Principal,
    Contraction,
    Gram,
    ProjectionDeterminant,
    MultivectorProjection,
}

impl Route {
    pub const ALL: [Route; 5] = [
        Route::Principal,
        Route::Contraction,
        Route::Gram,
        Route::ProjectionDeterminant,
        Route::MultivectorProjection,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleReport {
    pub theta: f64,
    pub cos_theta: f64,
    pub route: Route,
    /// Independent cosine from the equal-dimension shortcut of a route,
    /// when it applies.
    pub check_cos: Option<f64>,
}

impl AngleReport {
    fn from_cos(cos: f64, route: Route) -> Result<Self> {
        if !cos.is_finite() || cos < -NEGATIVE_COS_TOL || cos > 1.0 + 1e-8 {
            return Err(Error::Numerical(format!("cosine {cos} outside [0, 1]")));
        }
        let cos = cos.clamp(0.0, 1.0);
        Ok(AngleReport {
            theta: cos.acos(),
            cos_theta: cos,
            route,
            check_cos: None,
        })
    }

    /// Angle from a cosine and an independently computed sine; the sine
    /// keeps small angles accurate where `acos` would not.
    fn from_cos_sin(cos: f64, sin: f64, route: Route) -> Result<Self> {
        let mut r = Self::from_cos(cos, route)?;
        if !sin.is_finite() {
            return Err(Error::Numerical(format!("sine {sin} is not finite")));
        }
        r.theta = sin.max(0.0).atan2(r.cos_theta);
        Ok(r)
    }

    fn exact(theta: f64, cos: f64, route: Route) -> Self {
        AngleReport {
            theta,
            cos_theta: cos,
            route,
            check_cos: None,
        }
    }

    fn with_check(mut self, check: Option<f64>) -> Self {
        self.check_cos = check;
        self
    }
}

/// `Θ(V, W)` by the default route.
pub fn angle(v: &Subspace, w: &Subspace) -> Result<AngleReport> {
    angle_via_principal(v, w)
}

/// `Θ(V, W)` along the given route, starting from subspaces.
pub fn angle_via(route: Route, v: &Subspace, w: &Subspace) -> Result<AngleReport> {
    match route {
        Route::Principal => angle_via_principal(v, w),
        Route::Contraction => {
            v.check_compatible(w)?;
            angle_via_contraction(&blade_of(v)?, &blade_of(w)?)
        }
        Route::Gram => {
            v.check_compatible(w)?;
            angle_via_gram(v.basis(), w.basis(), v.field())
        }
        Route::ProjectionDeterminant => angle_via_projection_det(v, w),
        Route::MultivectorProjection => angle_via_multivector_projection(v, w),
    }
}

/// `arccos Π cos θ_i` over the principal angles; `π/2` when `p > q`.
pub fn angle_via_principal(v: &Subspace, w: &Subspace) -> Result<AngleReport> {
    let pd = principal_decomposition(v, w)?;
    let (p, q) = (v.dim(), w.dim());
    if p == 0 {
        return Ok(AngleReport::exact(0.0, 1.0, Route::Principal));
    }
    if p > q {
        return Ok(AngleReport::exact(FRAC_PI_2, 0.0, Route::Principal));
    }
    let cos = cos_product(pd.angles());
    let sin = one_minus_cos2_product(pd.angles()).sqrt();
    Ok(AngleReport::exact(sin.atan2(cos), cos, Route::Principal))
}

/// `cos Θ = ‖A⌟B‖ / (‖A‖‖B‖)` for blades with `[A] = V`, `[B] = W`.
/// The sine is the relative size of the part of `A` outside `⋀[B]`, using
/// `(A⌟B)⌟B = (−1)^{p(q−p)} ‖B‖² P_W A`.
pub fn angle_via_contraction(a: &Blade, b: &Blade) -> Result<AngleReport> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidArgument("zero blade".into()));
    }
    let (am, bm) = (a.multivector(), b.multivector());
    let denom = a.norm() * b.norm();
    let ab = am.contraction(bm)?;
    let cos = ab.norm() / denom;
    let (p, q) = (a.grade(), b.grade());
    let sin = if p > q {
        1.0
    } else {
        let sign = if (p * (q - p)) % 2 == 0 { 1.0 } else { -1.0 };
        let bb = b.norm() * b.norm();
        let projected = ab.contraction(bm)?.scale(linalg::C64::new(sign / bb, 0.0));
        am.sub(&projected)?.norm() / a.norm()
    };
    let check = (p == q).then(|| am.inner(bm).map(|z| z.norm() / denom)).transpose()?;
    Ok(AngleReport::from_cos_sin(cos, sin, Route::Contraction)?.with_check(check))
}

/// Gram-determinant route on arbitrary (not necessarily orthonormal)
/// bases: with `A = VᴴV`, `B = WᴴW`, `C = WᴴV`,
/// `cos² Θ = det(Cᴴ B⁻¹ C) / det A`. The sine comes from the residual
/// `R = V − W B⁻¹C`: `sin² Θ = 1 − det(I − A⁻¹RᴴR)`.
pub fn angle_via_gram(basis_v: &CMatrix, basis_w: &CMatrix, field: FieldTag) -> Result<AngleReport> {
    if basis_v.nrows() != basis_w.nrows() {
        return Err(Error::AmbientMismatch(basis_v.nrows(), basis_w.nrows()));
    }
    for (name, m) in [("V", basis_v), ("W", basis_w)] {
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let s = linalg::svd(m, field);
        let rel = linalg::default_rank_rel(m.nrows(), m.ncols());
        if linalg::numerical_rank(&s.sigma, rel) < m.ncols() {
            return Err(Error::RankDeficient(format!("basis of {name} is not full column rank")));
        }
    }
    let (p, q) = (basis_v.ncols(), basis_w.ncols());
    if p == 0 {
        return Ok(AngleReport::exact(0.0, 1.0, Route::Gram));
    }
    if p > q {
        return Ok(AngleReport::exact(FRAC_PI_2, 0.0, Route::Gram));
    }
    let a = basis_v.adjoint() * basis_v;
    let b = basis_w.adjoint() * basis_w;
    let c = basis_w.adjoint() * basis_v;
    let chol = b
        .clone()
        .cholesky()
        .ok_or_else(|| Error::RankDeficient("Gram matrix of W is not positive definite".into()))?;
    let x = chol.solve(&c);
    let n = c.adjoint() * &x;
    let log_cos2 = linalg::log_abs_det(&n) - linalg::log_abs_det(&a);
    let cos = (0.5 * log_cos2).exp();
    let residual = basis_v - basis_w * &x;
    let la = a
        .clone()
        .cholesky()
        .ok_or_else(|| Error::RankDeficient("Gram matrix of V is not positive definite".into()))?
        .l();
    let half = la
        .solve_lower_triangular(&(residual.adjoint() * &residual))
        .ok_or_else(|| Error::Numerical("singular Cholesky factor".into()))?;
    let g = la
        .solve_lower_triangular(&half.adjoint())
        .ok_or_else(|| Error::Numerical("singular Cholesky factor".into()))?;
    let g = (&g + g.adjoint()) * linalg::C64::new(0.5, 0.0);
    let sin = linalg::one_minus_det_identity_minus(&g, field).max(0.0).sqrt();
    let check = (p == q).then(|| {
        (linalg::log_abs_det(&c) - 0.5 * (linalg::log_abs_det(&a) + linalg::log_abs_det(&b))).exp()
    });
    Ok(AngleReport::from_cos_sin(cos, sin, Route::Gram)?.with_check(check))
}

/// `cos² Θ = det(PᴴP)` for the `q × p` matrix `P` of the orthogonal
/// projection `V → W` in orthonormal bases. The sine uses
/// `PᴴP = I − RᴴR` with `R = Q_V − Q_W P`.
pub fn angle_via_projection_det(v: &Subspace, w: &Subspace) -> Result<AngleReport> {
    v.check_compatible(w)?;
    let (p, q) = (v.dim(), w.dim());
    if p == 0 {
        return Ok(AngleReport::exact(0.0, 1.0, Route::ProjectionDeterminant));
    }
    if p > q {
        return Ok(AngleReport::exact(FRAC_PI_2, 0.0, Route::ProjectionDeterminant));
    }
    let proj = w.basis().adjoint() * v.basis();
    let cos = (0.5 * linalg::log_abs_det(&(proj.adjoint() * &proj))).exp();
    let residual = v.basis() - w.basis() * &proj;
    let sin = linalg::one_minus_det_identity_minus(&(residual.adjoint() * &residual), v.field())
        .max(0.0)
        .sqrt();
    let check = (p == q).then(|| linalg::log_abs_det(&proj).exp());
    Ok(AngleReport::from_cos_sin(cos, sin, Route::ProjectionDeterminant)?.with_check(check))
}

/// `cos Θ = ‖P_W A‖ / ‖A‖` and `sin Θ = ‖A − P_W A‖ / ‖A‖` for the unit
/// blade `A` of `V`.
pub fn angle_via_multivector_projection(v: &Subspace, w: &Subspace) -> Result<AngleReport> {
    v.check_compatible(w)?;
    let a = blade_of(v)?;
    let projected = project_multivector(w, a.multivector())?;
    let sin = a.multivector().sub(&projected)?.norm() / a.norm();
    AngleReport::from_cos_sin(projected.norm() / a.norm(), sin, Route::MultivectorProjection)
}

/// `π_{V,W}`, the factor by which `p`-volumes of `V` scale under `P_W`
/// (volumes measured over the underlying real space): `cos Θ` over `ℝ`,
/// `cos² Θ` over `ℂ`.
pub fn projection_factor(v: &Subspace, w: &Subspace) -> Result<f64> {
    let c = angle_via_principal(v, w)?.cos_theta;
    Ok(match v.field() {
        FieldTag::Real => c,
        FieldTag::Complex => c * c,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BcTerm {
    /// 0-based positions in `beta` of the vectors spanning the coordinate
    /// subspace.
    pub indices: Vec<usize>,
    pub factor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BcDecomposition {
    pub terms: Vec<BcTerm>,
    /// `Σ π²` over `ℝ`, `Σ π` over `ℂ`; equals `d_BC(V, W)²`.
    pub total: f64,
}

/// Projection factors of `V` onto every coordinate `p`-subspace of the
/// orthogonal basis `beta` that is not contained in `W`, where the first
/// `q` vectors of `beta` span `W`.
pub fn bc_coordinate_decomposition(v: &Subspace, w: &Subspace, beta: &CMatrix) -> Result<BcDecomposition> {
    v.check_compatible(w)?;
    let n = v.ambient();
    if beta.nrows() != n || beta.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "beta must be {n}x{n}, got {}x{}",
            beta.nrows(),
            beta.ncols()
        )));
    }
    let mut unit = beta.clone();
    for mut col in unit.column_iter_mut() {
        let norm = col.norm();
        if norm == 0.0 {
            return Err(Error::InvalidArgument("beta has a zero vector".into()));
        }
        col /= linalg::C64::new(norm, 0.0);
    }
    let err = linalg::orthonormality_error(&unit);
    if err > 1e-10 {
        return Err(Error::NotOrthonormal(err));
    }
    let q = w.dim();
    let head = Subspace::from_frame(&unit.columns(0, q).into_owned(), w.field());
    if !head.same_span(w)? {
        return Err(Error::InvalidArgument("the first q vectors of beta do not span W".into()));
    }
    let p = v.dim();
    let mut terms = Vec::new();
    let mut total = 0.0;
    for indices in combinations(n, p) {
        if indices.iter().all(|&i| i < q) {
            continue;
        }
        let sub = linalg::select_columns(&unit, &indices);
        let cos = linalg::log_abs_det(&(sub.adjoint() * v.basis())).exp();
        let factor = match v.field() {
            FieldTag::Real => cos,
            FieldTag::Complex => cos * cos,
        };
        total += match v.field() {
            FieldTag::Real => factor * factor,
            FieldTag::Complex => factor,
        };
        terms.push(BcTerm { indices, factor });
    }
    Ok(BcDecomposition { terms, total })
}

/// Increasing `k`-subsets of `0..n`, in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// `Θ(V, W) = π/2` up to `angle_tol`.
pub fn is_right_angle(report: &AngleReport, tol: &ToleranceProfile) -> bool {
    report.theta >= FRAC_PI_2 - tol.angle_tol
}
