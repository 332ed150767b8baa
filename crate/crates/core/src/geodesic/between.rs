//! Between-points: `U` with `d(V, W) = d(V, U) + d(U, W)`, recognised
//! structurally for `d_g` and `d_FS`, plus segment existence for `d_FS`
//! and the aligned-vector construction behind it.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::angle::angle;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, C64};
use crate::metrics::{asym_distance, MetricKind};
use crate::subspace::{FieldTag, Subspace, ToleranceProfile};

/// Tolerance on the `G_p` additivity check inside the `d_g` predicate and
/// on least-squares residuals in the `d_FS` predicate.
const STRUCTURE_TOL: f64 = 1e-8;

/// Which structural case made `U` a between-point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BetweenCase {
    /// `U = V` or `U = W`.
    Endpoint,
    I,
    II,
    III,
}

impl BetweenCase {
    pub fn label(self) -> &'static str {
        match self {
            BetweenCase::Endpoint => "endpoint",
            BetweenCase::I => "i",
            BetweenCase::II => "ii",
            BetweenCase::III => "iii",
        }
    }
}

fn endpoint(u: &Subspace, v: &Subspace, w: &Subspace) -> Result<bool> {
    Ok(u.same_span(v)? || u.same_span(w)?)
}

/// Structural test of `d_g(V, W) = d_g(V, U) + d_g(U, W)`.
///
/// * i: `r ≤ q < p` and `U ⊂ W`;
/// * ii: `r < p ≤ q`, `U ⊂ W` and every vector of `V` is orthogonal to `W`;
/// * iii: `p ≤ r ≤ q`, with projection subspaces `U′` of `U` and `W′` of
///   `W` (w.r.t. `V`) such that `U′` lies on a minimal geodesic of `G_p`
///   from `V` to `W′` and `U′⊥ ∩ U ⊂ W′⊥ ∩ W`.
///
/// For case iii only canonical choices are tried: `U′` spanned by the
/// principal vectors of `U` towards `V`, and `W′` the projection subspace
/// of `W ∩ (U′⊥ ∩ U)⊥` towards `V` or towards `U′`. When principal angles
/// repeat, projection subspaces are not unique, and a non-canonical pair
/// could satisfy the condition when these do not.
pub fn is_between_dg(u: &Subspace, v: &Subspace, w: &Subspace) -> Result<Option<BetweenCase>> {
    u.check_compatible(v)?;
    v.check_compatible(w)?;
    if endpoint(u, v, w)? {
        return Ok(Some(BetweenCase::Endpoint));
    }
    let (r, p, q) = (u.dim(), v.dim(), w.dim());
    if r <= q && q < p {
        return Ok(w.contains(u)?.then_some(BetweenCase::I));
    }
    if r < p && p <= q {
        let ok = w.contains(u)? && v.is_orthogonal_to(w)?;
        return Ok(ok.then_some(BetweenCase::II));
    }
    if p <= r && r <= q {
        return Ok(dg_case_three(u, v, w)?.then_some(BetweenCase::III));
    }
    Ok(None)
}

fn dg_case_three(u: &Subspace, v: &Subspace, w: &Subspace) -> Result<bool> {
    let u_proj = u.projection_subspace(v)?;
    let tail = u.minus(&u_proj)?;
    if tail.dim() != u.dim() - v.dim() || !w.contains(&tail)? {
        return Ok(false);
    }
    let room = w.minus(&tail)?;
    let dg = |a: &Subspace, b: &Subspace| asym_distance(MetricKind::Geodesic, a, b);
    let target = dg(v, w)?;
    let first = dg(v, &u_proj)?;
    for w_proj in [room.projection_subspace(v)?, room.projection_subspace(&u_proj)?] {
        if w_proj.dim() != v.dim() {
            continue;
        }
        let direct = dg(v, &w_proj)?;
        if (direct - target).abs() > STRUCTURE_TOL {
            continue;
        }
        if (first + dg(&u_proj, &w_proj)? - direct).abs() > STRUCTURE_TOL {
            continue;
        }
        if tail.is_orthogonal_to(&w_proj)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Structural test of `d_FS(V, W) = d_FS(V, U) + d_FS(U, W)`.
///
/// * i: `U ⊂ W`, with `V ∂⊥ W` or `P_W(V) ⊂ U`;
/// * ii: `V ⊂ U`, with `V ∂⊥ W` or `V⊥ ∩ U ⊂ W`;
/// * iii: `V = [v] ⊕ R`, `U = [u] ⊕ S`, `W = [w] ⊕ T` with `R ⊂ S ⊂ T` and
///   aligned nonzero `u, v, w ∈ T⊥`, `u = κv + λw`, `κ, λ > 0`.
pub fn is_between_dfs(u: &Subspace, v: &Subspace, w: &Subspace) -> Result<Option<BetweenCase>> {
    u.check_compatible(v)?;
    v.check_compatible(w)?;
    if endpoint(u, v, w)? {
        return Ok(Some(BetweenCase::Endpoint));
    }
    let v_perp_w = v.is_partially_orthogonal(w)?;
    if w.contains(u)? && (v_perp_w || u.contains(&w.image_of(v)?)?) {
        return Ok(Some(BetweenCase::I));
    }
    if u.contains(v)? && (v_perp_w || w.contains(&u.minus(v)?)?) {
        return Ok(Some(BetweenCase::II));
    }
    Ok(dfs_case_three(u, v, w)?.then_some(BetweenCase::III))
}

fn unit_column(s: &Subspace) -> CVector {
    s.basis().column(0).into_owned()
}

fn dfs_case_three(u: &Subspace, v: &Subspace, w: &Subspace) -> Result<bool> {
    let tol = ToleranceProfile::default();
    let (t_vu, t_uw) = (angle(v, u)?.theta, angle(u, w)?.theta);
    let strictly_inside = |t: f64| t > tol.angle_tol && t < FRAC_PI_2 - tol.angle_tol;
    if !strictly_inside(t_vu) || !strictly_inside(t_uw) {
        return Ok(false);
    }
    let p = v.dim();
    let u_proj = u.image_of(v)?;
    let w_proj = w.image_of(&u_proj)?;
    if u_proj.dim() != p || w_proj.dim() != p {
        return Ok(false);
    }
    let common = v.intersection(&u_proj)?.intersection(&w_proj)?;
    if common.dim() + 1 != p {
        return Ok(false);
    }
    let (vv, uu, ww) = (
        unit_column(&v.minus(&common)?),
        unit_column(&u_proj.minus(&common)?),
        unit_column(&w_proj.minus(&common)?),
    );
    let Some((a, b)) = combination_of(&uu, &vv, &ww, v.field()) else {
        return Ok(false);
    };
    if a.norm() < tol.angle_tol || b.norm() < tol.angle_tol {
        return Ok(false);
    }
    let v_al = &vv * (a / a.norm());
    let w_al = &ww * (b / b.norm());
    let ip: C64 = v_al.dotc(&w_al);
    if ip.re < -STRUCTURE_TOL || ip.im.abs() > STRUCTURE_TOL {
        return Ok(false);
    }
    let extra = u.minus(&u_proj)?;
    if !w.contains(&extra)? {
        return Ok(false);
    }
    let w_line = line_of(&w_al, w.field())?;
    let orthogonal_to = |x: &CVector, s: &Subspace| (s.basis().adjoint() * x).norm() < tol.angle_tol;
    if !orthogonal_to(&v_al, &extra) || !orthogonal_to(&w_al, &extra) {
        return Ok(false);
    }
    let inner = w_line.direct_sum(&common)?.direct_sum(&extra)?;
    let rest = w.minus(&inner)?;
    if inner.dim() + rest.dim() != w.dim() {
        return Ok(false);
    }
    Ok(orthogonal_to(&uu, &rest) && orthogonal_to(&v_al, &rest))
}

/// Least-squares `u = a·v + b·w`, or `None` if the residual is not small.
fn combination_of(u: &CVector, v: &CVector, w: &CVector, field: FieldTag) -> Option<(C64, C64)> {
    let m = CMatrix::from_columns(&[v.clone(), w.clone()]);
    let x = linalg::least_squares(&m, u, field)?;
    let residual = (&m * &x - u).norm();
    (residual < STRUCTURE_TOL).then(|| (x[0], x[1]))
}

fn line_of(x: &CVector, field: FieldTag) -> Result<Subspace> {
    let norm = x.norm();
    if norm == 0.0 {
        return Err(Error::InvalidArgument("zero vector".into()));
    }
    Ok(Subspace::from_frame(&CMatrix::from_columns(&[x / C64::new(norm, 0.0)]), field))
}

/// Whether `d_FS` has a segment from `V` to `W`: `V ∂⊥ W` or
/// `p ≤ dim(V ∩ W) + 1`.
pub fn segment_exists_dfs(v: &Subspace, w: &Subspace) -> Result<bool> {
    if v.is_partially_orthogonal(w)? {
        return Ok(true);
    }
    Ok(v.dim() <= v.intersection_dim(w)? + 1)
}

/// The line `J = span{κv + λw}` for unit `v ∈ K`, `w ∈ L` aligned so that
/// `⟨v, w⟩ ≥ 0`; then `θ(K, L) = θ(K, J) + θ(J, L)`. Returns `K` when
/// `K = L`.
pub fn line_between_construct(k: &Subspace, l: &Subspace, kappa: f64, lambda: f64) -> Result<Subspace> {
    k.check_compatible(l)?;
    if k.dim() != 1 || l.dim() != 1 {
        return Err(Error::DimensionMismatch("both arguments must be lines".into()));
    }
    if !(kappa > 0.0 && lambda > 0.0 && kappa.is_finite() && lambda.is_finite()) {
        return Err(Error::InvalidArgument("kappa and lambda must be positive".into()));
    }
    if k.same_span(l)? {
        return Ok(k.clone());
    }
    let (v, w) = aligned_pair(&unit_column(k), &unit_column(l));
    let j = v * C64::new(kappa, 0.0) + w * C64::new(lambda, 0.0);
    line_of(&j, k.field())
}

/// Rephases `w` so that `⟨v, w⟩` is real and non-negative.
fn aligned_pair(v: &CVector, w: &CVector) -> (CVector, CVector) {
    let ip: C64 = v.dotc(w);
    let r = ip.norm();
    let w = if r > 0.0 { w * (ip.conj() / r) } else { w.clone() };
    (v.clone(), w)
}

/// For `V, W ∈ G_p` with `dim(V ∩ W) = p − 1`: `V = [v] ⊕ R`,
/// `W = [w] ⊕ R` with aligned `v, w ⊥ R`, and the result is
/// `U = [κv + λw] ⊕ R`, a `d_FS` between-point.
pub fn lift_between(v: &Subspace, w: &Subspace, kappa: f64, lambda: f64) -> Result<Subspace> {
    v.check_compatible(w)?;
    let p = v.dim();
    if w.dim() != p || p == 0 {
        return Err(Error::DimensionMismatch("V and W must have the same positive dimension".into()));
    }
    let common = v.intersection(w)?;
    if common.dim() + 1 != p {
        return Err(Error::InvalidArgument(format!(
            "dim(V ∩ W) must be p - 1 = {}, got {}",
            p - 1,
            common.dim()
        )));
    }
    let k = v.minus(&common)?;
    let l = w.minus(&common)?;
    let j = line_between_construct(&k, &l, kappa, lambda)?;
    j.direct_sum(&common)
}
