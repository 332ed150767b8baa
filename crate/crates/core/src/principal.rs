//! Principal angles and aligned principal bases.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, C64};
use crate::subspace::{FieldTag, Subspace};

/// Cosines may exceed 1 by this much before it is treated as an error
/// rather than rounding.
const COSINE_OVERSHOOT: f64 = 1e-8;

/// Principal angles `θ₁ ≤ … ≤ θ_m` (`m = min(p, q)`) between `V` and `W`,
/// with full principal bases of both.
///
/// `e_basis` is `n × p` and `f_basis` is `n × q`. The first `m` columns
/// of each are paired: `⟨e_i, f_j⟩ = δ_ij cos θ_i` with the diagonal real
/// and nonnegative. The remaining columns complete each basis and are
/// orthogonal to the other subspace's paired vectors.
#[derive(Debug, Clone)]
pub struct PrincipalDecomposition {
    angles: Vec<f64>,
    e_basis: CMatrix,
    f_basis: CMatrix,
    field: FieldTag,
}

impl PrincipalDecomposition {
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn m(&self) -> usize {
        self.angles.len()
    }

    pub fn e_basis(&self) -> &CMatrix {
        &self.e_basis
    }

    pub fn f_basis(&self) -> &CMatrix {
        &self.f_basis
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn cosines(&self) -> Vec<f64> {
        self.angles.iter().map(|t| t.cos()).collect()
    }

    pub fn sines(&self) -> Vec<f64> {
        self.angles.iter().map(|t| t.sin()).collect()
    }

    pub fn e(&self, i: usize) -> CVector {
        self.e_basis.column(i).into_owned()
    }

    pub fn f(&self, i: usize) -> CVector {
        self.f_basis.column(i).into_owned()
    }

    /// Largest angle, or `None` when `m = 0`.
    pub fn largest(&self) -> Option<f64> {
        self.angles.last().copied()
    }
}

pub fn principal_decomposition(v: &Subspace, w: &Subspace) -> Result<PrincipalDecomposition> {
    v.check_compatible(w)?;
    let field = v.field();
    let (qv, qw) = (v.basis(), w.basis());
    let (p, q) = (qv.ncols(), qw.ncols());
    let m = p.min(q);

    let cross = qv.adjoint() * qw;
    let s = linalg::svd(&cross, field);
    if let Some(&top) = s.sigma.first() {
        if top > 1.0 + COSINE_OVERSHOOT {
            return Err(Error::Numerical(format!("singular value {top} exceeds 1")));
        }
    }

    // Sines: singular values of (I − Q_V Q_Vᴴ) Q_W; the smallest m pair with
    // the m largest cosines.
    let mut sines = if m > 0 {
        let residual = qw - qv * &cross;
        let mut sv = linalg::svd(&residual, field).sigma;
        sv.reverse();
        sv.truncate(m);
        sv
    } else {
        Vec::new()
    };
    sines.resize(m, 0.0);

    let mut angles = Vec::with_capacity(m);
    let mut running = 0.0_f64;
    for i in 0..m {
        let c = s.sigma[i].clamp(0.0, 1.0);
        let theta = if c > FRAC_1_SQRT_2 {
            sines[i].clamp(0.0, 1.0).asin()
        } else {
            c.acos()
        };
        running = running.max(theta.clamp(0.0, FRAC_PI_2));
        angles.push(running);
    }

    let u_full = extend_to_unitary(&s.u, p, field);
    let w_full = extend_to_unitary(&s.v, q, field);
    let e_basis = qv * u_full;
    let mut f_basis = qw * w_full;

    for i in 0..m {
        let ip = e_basis.column(i).dotc(&f_basis.column(i));
        let r = ip.norm();
        if r > 0.0 {
            let phase = ip.conj() / r;
            let mut col = f_basis.column_mut(i);
            col *= phase;
        }
    }

    Ok(PrincipalDecomposition {
        angles,
        e_basis,
        f_basis,
        field,
    })
}

/// Completes the orthonormal columns of `u` (`k × m`) to a `k × k` unitary.
fn extend_to_unitary(u: &CMatrix, k: usize, field: FieldTag) -> CMatrix {
    let u = if u.nrows() == k { u.clone() } else { CMatrix::zeros(k, 0) };
    let rest = linalg::complement_basis(&u, field);
    linalg::hcat(&u, &rest)
}

/// Angle `θ_{v,w} = arccos(Re⟨v,w⟩ / ‖v‖‖w‖) ∈ [0, π]`, with the
/// asymmetric conventions `θ_{0,w} = 0` and `θ_{v,0} = π/2` for `v ≠ 0`.
pub fn vector_angle(v: &CVector, w: &CVector) -> Result<f64> {
    if v.len() != w.len() {
        return Err(Error::AmbientMismatch(v.len(), w.len()));
    }
    let nv = v.norm();
    let nw = w.norm();
    if nv == 0.0 {
        return Ok(0.0);
    }
    if nw == 0.0 {
        return Ok(FRAC_PI_2);
    }
    let re: C64 = v.dotc(w);
    Ok((re.re / (nv * nw)).clamp(-1.0, 1.0).acos())
}
