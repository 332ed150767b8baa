//! Asymmetric metrics between subspaces of any dimensions, their
//! diameters and symmetrizations, plus older comparison distances.

use std::f64::consts::{FRAC_PI_2, SQRT_2};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::principal::{principal_decomposition, PrincipalDecomposition};
use crate::subspace::{Subspace, ToleranceProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    L2,
    Wedge,
    Max,
}

/// The nine asymmetric metrics. Each extends a metric `d_p` on `G_p`
/// given by a formula `f_p(θ₁, …, θ_p)` in the principal angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MetricKind {
    Geodesic,
    ChordalFrobenius,
    ProjectionFrobenius,
    FubiniStudy,
    ChordalWedge,
    BinetCauchy,
    Asimov,
    Chordal2,
    Projection2,
}

impl MetricKind {
    pub const ALL: [MetricKind; 9] = [
        MetricKind::Geodesic,
        MetricKind::ChordalFrobenius,
        MetricKind::ProjectionFrobenius,
        MetricKind::FubiniStudy,
        MetricKind::ChordalWedge,
        MetricKind::BinetCauchy,
        MetricKind::Asimov,
        MetricKind::Chordal2,
        MetricKind::Projection2,
    ];

    pub fn family(self) -> Family {
        use MetricKind::*;
        match self {
            Geodesic | ChordalFrobenius | ProjectionFrobenius => Family::L2,
            FubiniStudy | ChordalWedge | BinetCauchy => Family::Wedge,
            Asimov | Chordal2 | Projection2 => Family::Max,
        }
    }

    pub fn symbol(self) -> &'static str {
        use MetricKind::*;
        match self {
            Geodesic => "d_g",
            ChordalFrobenius => "d_cF",
            ProjectionFrobenius => "d_pF",
            FubiniStudy => "d_FS",
            ChordalWedge => "d_cw",
            BinetCauchy => "d_BC",
            Asimov => "d_A",
            Chordal2 => "d_c2",
            Projection2 => "d_p2",
        }
    }

    /// `Δ_p`, the diameter of `G_p` for this metric (`Δ_0 = 0`).
    pub fn diameter(self, p: usize) -> f64 {
        diameter(self, p)
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim();
        let key = key.strip_prefix("d_").or_else(|| key.strip_prefix("d-")).unwrap_or(key);
        use MetricKind::*;
        let kind = match key {
            "g" | "geodesic" => Geodesic,
            "cF" | "cf" | "chordal-frobenius" => ChordalFrobenius,
            "pF" | "pf" | "projection-frobenius" => ProjectionFrobenius,
            "FS" | "fs" | "fubini-study" => FubiniStudy,
            "cw" | "c∧" | "cwedge" | "chordal-wedge" => ChordalWedge,
            "BC" | "bc" | "binet-cauchy" => BinetCauchy,
            "A" | "a" | "asimov" => Asimov,
            "c2" | "chordal-2" => Chordal2,
            "p2" | "projection-2" => Projection2,
            _ => return Err(Error::Parse(format!("unknown metric '{s}'"))),
        };
        Ok(kind)
    }
}

pub fn diameter(kind: MetricKind, p: usize) -> f64 {
    if p == 0 {
        return 0.0;
    }
    let pf = p as f64;
    use MetricKind::*;
    match kind {
        Geodesic => FRAC_PI_2 * pf.sqrt(),
        ChordalFrobenius => (2.0 * pf).sqrt(),
        ProjectionFrobenius => pf.sqrt(),
        FubiniStudy | Asimov => FRAC_PI_2,
        ChordalWedge | Chordal2 => SQRT_2,
        BinetCauchy | Projection2 => 1.0,
    }
}

/// `1 − Π cos² θ_i`, accurate when the product is close to 1.
pub(crate) fn one_minus_cos2_product(angles: &[f64]) -> f64 {
    let log_sum: f64 = angles.iter().map(|t| (-t.sin().powi(2)).ln_1p()).sum();
    (-log_sum.exp_m1()).clamp(0.0, 1.0)
}

pub(crate) fn cos_product(angles: &[f64]) -> f64 {
    angles.iter().map(|t| t.cos().max(0.0)).product()
}

/// `f_p(θ₁, …, θ_p)` for ascending angles in `[0, π/2]`.
pub fn formula(kind: MetricKind, angles: &[f64]) -> f64 {
    use MetricKind::*;
    if angles.is_empty() {
        return 0.0;
    }
    let largest = angles.iter().copied().fold(0.0_f64, f64::max);
    match kind {
        Geodesic => angles.iter().map(|t| t * t).sum::<f64>().sqrt(),
        ChordalFrobenius => 2.0 * angles.iter().map(|t| (t / 2.0).sin().powi(2)).sum::<f64>().sqrt(),
        ProjectionFrobenius => angles.iter().map(|t| t.sin().powi(2)).sum::<f64>().sqrt(),
        FubiniStudy => fubini_study_angle(angles),
        ChordalWedge => 2.0 * (fubini_study_angle(angles) / 2.0).sin(),
        BinetCauchy => one_minus_cos2_product(angles).sqrt(),
        Asimov => largest,
        Chordal2 => 2.0 * (largest / 2.0).sin(),
        Projection2 => largest.sin(),
    }
}

fn fubini_study_angle(angles: &[f64]) -> f64 {
    one_minus_cos2_product(angles).sqrt().atan2(cos_product(angles))
}

/// Interval in which the infimum over `G_p(W)` is taken; it decides the
/// value when `dim V > dim W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum InfimumRange {
    /// `[0, Δ_p]`: `d(V, W) = Δ_p` when `p > q`.
    #[default]
    Diameter,
    /// `[0, Δ_n]`: `d(V, W) = Δ_n` when `p > q`.
    AmbientDiameter,
    /// `[0, ∞]`: `d(V, W) = ∞` when `p > q`.
    Unbounded,
}

/// Distance from the dimensions and principal angles of a pair.
pub fn distance_from_angles(kind: MetricKind, p: usize, q: usize, angles: &[f64]) -> f64 {
    distance_from_angles_with(kind, p, q, angles, InfimumRange::Diameter, 0)
}

pub fn distance_from_angles_with(
    kind: MetricKind,
    p: usize,
    q: usize,
    angles: &[f64],
    range: InfimumRange,
    ambient: usize,
) -> f64 {
    if p == 0 {
        return 0.0;
    }
    if p > q {
        return match range {
            InfimumRange::Diameter => diameter(kind, p),
            InfimumRange::AmbientDiameter => diameter(kind, ambient),
            InfimumRange::Unbounded => f64::INFINITY,
        };
    }
    formula(kind, angles)
}

/// `d(V, W)`: how far `V` is from being contained in `W`.
pub fn asym_distance(kind: MetricKind, v: &Subspace, w: &Subspace) -> Result<f64> {
    asym_distance_with(kind, v, w, InfimumRange::Diameter)
}

pub fn asym_distance_with(kind: MetricKind, v: &Subspace, w: &Subspace, range: InfimumRange) -> Result<f64> {
    let pd = principal_decomposition(v, w)?;
    Ok(distance_from_angles_with(kind, v.dim(), w.dim(), pd.angles(), range, v.ambient()))
}

/// All nine distances from one principal decomposition, in
/// [`MetricKind::ALL`] order.
pub fn all_distances(v: &Subspace, w: &Subspace) -> Result<[f64; 9]> {
    let pd = principal_decomposition(v, w)?;
    Ok(MetricKind::ALL.map(|k| distance_from_angles(k, v.dim(), w.dim(), pd.angles())))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Symmetrization {
    Max,
    /// Not a metric: the triangle inequality fails.
    Min,
    /// `(d(V,W)^s + d(W,V)^s)^{1/s}` for `s ≥ 1`.
    Norm(f64),
}

impl Symmetrization {
    pub fn is_metric(self) -> bool {
        !matches!(self, Symmetrization::Min)
    }

    pub fn combine(self, a: f64, b: f64) -> Result<f64> {
        match self {
            Symmetrization::Max => Ok(a.max(b)),
            Symmetrization::Min => Ok(a.min(b)),
            Symmetrization::Norm(s) if s.is_infinite() && s > 0.0 => Ok(a.max(b)),
            Symmetrization::Norm(s) if s >= 1.0 => {
                let m = a.max(b);
                if m == 0.0 || m.is_infinite() {
                    return Ok(m);
                }
                Ok(m * ((a / m).powf(s) + (b / m).powf(s)).powf(1.0 / s))
            }
            Symmetrization::Norm(s) => Err(Error::InvalidArgument(format!("l^s symmetrization needs s >= 1, got {s}"))),
        }
    }
}

pub fn symmetrize(kind: MetricKind, mode: Symmetrization, v: &Subspace, w: &Subspace) -> Result<f64> {
    let a = asym_distance(kind, v, w)?;
    let b = asym_distance(kind, w, v)?;
    mode.combine(a, b)
}

/// Distances used before the asymmetric ones, kept for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LegacyKind {
    /// `√(|p−q| + Σ sin² θ_i)`.
    Symmetric,
    /// `√(|p−q|/2 + Σ sin² θ_i)`, i.e. `‖P_V − P_W‖_F / √2`.
    ExtendedProjectionFrobenius,
    /// `√(max(0, p−q) + Σ sin² θ_i)`.
    Directional,
    /// `sin θ_p` if `p ≤ q`, else 1.
    ContainmentGap,
    /// `max` of the containment gap both ways.
    Gap,
    /// `arccos Π cos θ_i` if `p = q`, else `π/2`.
    ExtendedFubiniStudy,
    /// `√Σ sin² θ_i` over the `min(p,q)` angles.
    NaiveProjectionFrobenius,
    /// `sin θ₁`.
    MaxCorrelation,
    /// `√(−log Π cos² θ_i)`.
    Martin,
}

impl LegacyKind {
    pub const ALL: [LegacyKind; 9] = [
        LegacyKind::Symmetric,
        LegacyKind::ExtendedProjectionFrobenius,
        LegacyKind::Directional,
        LegacyKind::ContainmentGap,
        LegacyKind::Gap,
        LegacyKind::ExtendedFubiniStudy,
        LegacyKind::NaiveProjectionFrobenius,
        LegacyKind::MaxCorrelation,
        LegacyKind::Martin,
    ];

    pub fn symbol(self) -> &'static str {
        use LegacyKind::*;
        match self {
            Symmetric => "d_s",
            ExtendedProjectionFrobenius => "d_pF_ext",
            Directional => "d_dir",
            ContainmentGap => "delta",
            Gap => "delta_hat",
            ExtendedFubiniStudy => "d_FS_ext",
            NaiveProjectionFrobenius => "d_pF_naive",
            MaxCorrelation => "max_corr",
            Martin => "martin",
        }
    }

    /// `Some(true)` for metrics, `Some(false)` when a triangle inequality
    /// counterexample is known, `None` when it is open (directional).
    pub fn satisfies_triangle(self) -> Option<bool> {
        use LegacyKind::*;
        match self {
            Symmetric | ExtendedProjectionFrobenius | ContainmentGap | Gap | ExtendedFubiniStudy => Some(true),
            NaiveProjectionFrobenius | MaxCorrelation | Martin => Some(false),
            Directional => None,
        }
    }
}

impl fmt::Display for LegacyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Legacy distance from dimensions and the `min(p,q)` principal angles.
///
/// Conventions where the classical formula is silent: max-correlation
/// with no angles is 0 if `p = q` (both zero) and 1 otherwise; Martin is
/// `+∞` when `p ≠ q` or some angle is a right angle.
pub fn legacy_from_angles(kind: LegacyKind, p: usize, q: usize, angles: &[f64]) -> f64 {
    use LegacyKind::*;
    let sin2: f64 = angles.iter().map(|t| t.sin().powi(2)).sum();
    let gap = |p: usize, q: usize| -> f64 {
        if p > q {
            1.0
        } else if p == 0 {
            0.0
        } else {
            angles.last().map_or(0.0, |t| t.sin())
        }
    };
    match kind {
        Symmetric => ((p.abs_diff(q)) as f64 + sin2).sqrt(),
        ExtendedProjectionFrobenius => ((p.abs_diff(q)) as f64 / 2.0 + sin2).sqrt(),
        Directional => ((p.saturating_sub(q)) as f64 + sin2).sqrt(),
        ContainmentGap => gap(p, q),
        Gap => gap(p, q).max(gap(q, p)),
        ExtendedFubiniStudy => {
            if p == q {
                fubini_study_angle(angles)
            } else {
                FRAC_PI_2
            }
        }
        NaiveProjectionFrobenius => sin2.sqrt(),
        MaxCorrelation => match angles.first() {
            Some(t) => t.sin(),
            None if p == q => 0.0,
            None => 1.0,
        },
        Martin => {
            if p != q {
                return f64::INFINITY;
            }
            let log_sum: f64 = angles.iter().map(|t| (-t.sin().powi(2)).ln_1p()).sum();
            (-log_sum).max(0.0).sqrt()
        }
    }
}

pub fn legacy_distance(kind: LegacyKind, v: &Subspace, w: &Subspace) -> Result<f64> {
    let pd = principal_decomposition(v, w)?;
    Ok(legacy_from_angles(kind, v.dim(), w.dim(), pd.angles()))
}

fn check_nested(inner: &Subspace, outer: &Subspace, what: &str) -> Result<()> {
    inner.check_compatible(outer)?;
    if !outer.contains(inner)? {
        return Err(Error::InvalidArgument(format!("{what} must be a subspace of the larger argument")));
    }
    Ok(())
}

fn all_right_angles(pd: &PrincipalDecomposition, tol: &ToleranceProfile) -> bool {
    pd.angles().iter().all(|&t| t >= FRAC_PI_2 - tol.angle_tol)
}

/// Structural test for `d_g(V, W′) = d_g(V, W)` with `W′ ⊂ W`:
/// `p ≤ q′` and `P_W(V) ⊂ W′`; or `q′ < p ≤ q` and every principal
/// angle of `(V, W)` is a right angle; or `p > q`.
pub fn geodesic_target_equality(v: &Subspace, w: &Subspace, w_sub: &Subspace) -> Result<bool> {
    check_nested(w_sub, w, "W'")?;
    let (p, q, q1) = (v.dim(), w.dim(), w_sub.dim());
    if p > q || p == 0 {
        return Ok(true);
    }
    if p <= q1 {
        return w_sub.contains(&w.image_of(v)?);
    }
    let pd = principal_decomposition(v, w)?;
    Ok(all_right_angles(&pd, &ToleranceProfile::default()))
}

/// Structural test for `d_g(V′, W) = d_g(V, W)` with `V′ ⊂ V`:
/// `p ≤ q` and `V′⊥ ∩ V ⊂ W`; or `p′ = p > q`.
pub fn geodesic_source_equality(v: &Subspace, v_sub: &Subspace, w: &Subspace) -> Result<bool> {
    check_nested(v_sub, v, "V'")?;
    let (p, q, p1) = (v.dim(), w.dim(), v_sub.dim());
    if p <= q {
        return w.contains(&v.minus(v_sub)?);
    }
    Ok(p1 == p)
}

/// Structural test for `d_FS(V, W′) = d_FS(V, W)` with `W′ ⊂ W`:
/// `V ∂⊥ W` or `P_W(V) ⊂ W′`.
pub fn fubini_study_target_equality(v: &Subspace, w: &Subspace, w_sub: &Subspace) -> Result<bool> {
    check_nested(w_sub, w, "W'")?;
    if v.is_partially_orthogonal(w)? {
        return Ok(true);
    }
    w_sub.contains(&w.image_of(v)?)
}

/// Structural test for `d_FS(V′, W) = d_FS(V, W)` with `V′ ⊂ V`:
/// `V′ ∂⊥ W` or `V′⊥ ∩ V ⊂ W`.
pub fn fubini_study_source_equality(v: &Subspace, v_sub: &Subspace, w: &Subspace) -> Result<bool> {
    check_nested(v_sub, v, "V'")?;
    if v_sub.is_partially_orthogonal(w)? {
        return Ok(true);
    }
    w.contains(&v.minus(v_sub)?)
}
