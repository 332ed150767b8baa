//! Individual property checks. A check is a pure function of its input
//! subspaces (and matrices), so a stored input replays to the same bits.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::angle::{angle_via, angle_via_principal, bc_coordinate_decomposition, Route};
use crate::error::{Error, Result};
use crate::geodesic::{
    intrinsic_distance, is_between_dfs, is_between_dg, minimal_geodesic, type1_path, BetweenCase, Topology,
};
use crate::linalg::CMatrix;
use crate::metrics::{
    asym_distance, diameter, fubini_study_source_equality, fubini_study_target_equality,
    geodesic_source_equality, geodesic_target_equality, legacy_distance, LegacyKind, MetricKind,
};
use crate::principal::principal_decomposition;
use crate::subspace::{Subspace, ToleranceProfile};

pub const TRIANGLE_TOL: f64 = 1e-9;
pub const CHAIN_MARGIN: f64 = 1e-12;
pub const CHAIN_EQUAL_TOL: f64 = 1e-10;
pub const INTERLACING_TOL: f64 = 1e-10;
pub const ROUTE_TOL: f64 = 1e-9;
pub const LENGTH_TOL: f64 = 1e-10;
pub const ESTIMATOR_TOL: f64 = 1e-6;
pub const ESTIMATOR_SAMPLES: usize = 1000;
pub const ADDITIVITY_TOL: f64 = 1e-9;
pub const GENERIC_SLACK: f64 = 1e-6;
pub const BC_TOL: f64 = 1e-10;

/// Which equality condition of the monotonicity inequalities is tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EqualityKind {
    /// `d_g(V, W′) = d_g(V, W)`, `W′ ⊂ W`.
    GeodesicTarget,
    /// `d_g(V′, W) = d_g(V, W)`, `V′ ⊂ V`.
    GeodesicSource,
    FubiniStudyTarget,
    FubiniStudySource,
}

/// The chains of inequalities between the metrics on `G_p`, as
/// `(top, middle, bottom)` in `c·bottom ≥ top > middle > bottom`.
pub const SAME_DIM_CHAINS: [[MetricKind; 3]; 3] = [
    [MetricKind::Geodesic, MetricKind::ChordalFrobenius, MetricKind::ProjectionFrobenius],
    [MetricKind::FubiniStudy, MetricKind::ChordalWedge, MetricKind::BinetCauchy],
    [MetricKind::Asimov, MetricKind::Chordal2, MetricKind::Projection2],
];

/// `√p·bottom ≥ top > middle > bottom`, strict only when
/// `dim(V ∩ W) < p − 1`; when the largest angle is a right angle the
/// last two are equal regardless.
pub const INTERSECTION_CHAINS: [[MetricKind; 3]; 3] = [
    [MetricKind::Geodesic, MetricKind::FubiniStudy, MetricKind::Asimov],
    [MetricKind::ChordalFrobenius, MetricKind::ChordalWedge, MetricKind::Chordal2],
    [MetricKind::ProjectionFrobenius, MetricKind::BinetCauchy, MetricKind::Projection2],
];

/// A property of a tuple of subspaces. The comment on each variant lists
/// the expected inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum Check {
    /// `[X, Y, Z]`: `d(X, Z) ≤ d(X, Y) + d(Y, Z)`.
    Triangle { metric: MetricKind },
    /// `[X, Y, Z]`, for a legacy distance. Infinite distances never count
    /// as violations.
    LegacyTriangle { metric: LegacyKind },
    /// `[V, W]`: `d(V, W) < dist_tol` exactly when `V ⊂ W`, and both
    /// directions small only for equal subspaces.
    Separation { metric: MetricKind },
    /// `[V′, V, W′, W]` with `V′ ⊂ V`, `W′ ⊂ W`:
    /// `d(V′, W) ≤ d(V, W) ≤ d(V, W′)`.
    Monotone { metric: MetricKind },
    /// `[V, W, S]` with `S ⊂ W` (target) or `S ⊂ V` (source): the
    /// structural predicate agrees with numeric equality.
    EqualityPredicate { which: EqualityKind },
    /// `[V, W]`: `d(V, W) = d(W⊥, V⊥)`.
    Duality { metric: MetricKind },
    /// `[V, W]`, equal dimensions: row of [`SAME_DIM_CHAINS`].
    SameDimChain { row: usize },
    /// `[V, W]`, equal dimensions: row of [`INTERSECTION_CHAINS`].
    IntersectionChain { row: usize },
    /// `[V, W, W′]`, `W′ ⊂ W`: `θ_i ≤ θ′_i ≤ θ_{i+q−r}`.
    Interlacing,
    /// `[V, W]`: `W′` spanned by the first (or last) `r` principal vectors
    /// of `W` has angles `θ_i` (or `θ_{i+q−r}`).
    PrincipalSubset { r: usize, last: bool },
    /// `[V, W]`: a route agrees with the principal-angle route.
    RouteAgreement { route: Route },
    /// `[V, W]`, `p ≤ q`: the type I path starts at `V` and ends at `W`.
    GeodesicEndpoints { topology: Topology },
    /// `[V, W]`, `p ≤ q`: the type I path has length `d_g(V, W)`.
    GeodesicLength,
    /// `[V, W]`, `p ≤ q`: the sampled length of the type I path is close
    /// to its exact length.
    GeodesicEstimate { samples: usize },
    /// `[V, W]`: the minimal geodesic has length `min{d_g, Δ_p}`.
    IntrinsicDistance { metric: MetricKind },
    /// `[V, U, W]`: going through `U` is never shorter.
    Perturbation { metric: MetricKind },
    /// `[U, V, W]`: the `d_g` between predicate; `planted` is the case the
    /// input was built for, `None` for a generic triple.
    BetweenGeodesic { planted: Option<BetweenCase> },
    /// `[U, V, W]`, as above for `d_FS`.
    BetweenFubiniStudy { planted: Option<BetweenCase> },
    /// `[V, W]` and `beta`: the coordinate decomposition sums to `d_BC²`.
    BcDecomposition,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let case = |c: &Option<BetweenCase>| c.map_or("generic", |c| c.label());
        match self {
            Check::Triangle { metric } => write!(f, "triangle {metric}"),
            Check::LegacyTriangle { metric } => write!(f, "legacy-triangle {metric}"),
            Check::Separation { metric } => write!(f, "separation {metric}"),
            Check::Monotone { metric } => write!(f, "monotone {metric}"),
            Check::EqualityPredicate { which } => write!(f, "equality-predicate {which:?}"),
            Check::Duality { metric } => write!(f, "duality {metric}"),
            Check::SameDimChain { row } => write!(f, "same-dim-chain {row}"),
            Check::IntersectionChain { row } => write!(f, "intersection-chain {row}"),
            Check::Interlacing => write!(f, "interlacing"),
            Check::PrincipalSubset { r, last } => {
                write!(f, "principal-subset {} {r}", if *last { "last" } else { "first" })
            }
            Check::RouteAgreement { route } => write!(f, "route {route:?}"),
            Check::GeodesicEndpoints { topology } => write!(f, "geodesic-endpoints {topology:?}"),
            Check::GeodesicLength => write!(f, "geodesic-length"),
            Check::GeodesicEstimate { samples } => write!(f, "geodesic-estimate {samples}"),
            Check::IntrinsicDistance { metric } => write!(f, "intrinsic-distance {metric}"),
            Check::Perturbation { metric } => write!(f, "perturbation {metric}"),
            Check::BetweenGeodesic { planted } => write!(f, "between-dg {}", case(planted)),
            Check::BetweenFubiniStudy { planted } => write!(f, "between-dfs {}", case(planted)),
            Check::BcDecomposition => write!(f, "bc-decomposition"),
        }
    }
}

/// Result of one check. `slack` is the signed amount by which the
/// property is missed (positive is bad); `violated` applies the check's
/// own tolerance or structural condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub slack: f64,
    pub violated: bool,
    pub detail: String,
}

impl Outcome {
    fn by_tol(slack: f64, tol: f64, detail: String) -> Self {
        Outcome {
            slack,
            violated: !(slack <= tol),
            detail,
        }
    }
}

fn arity(check: &Check, subs: &[Subspace], want: usize) -> Result<()> {
    if subs.len() != want {
        return Err(Error::InvalidArgument(format!(
            "{check} takes {want} subspaces, got {}",
            subs.len()
        )));
    }
    Ok(())
}

/// Evaluates `check`. With `injected` the outcome is forced to a
/// violation; this is the hook used to exercise failure reporting.
pub fn evaluate(check: &Check, subs: &[Subspace], mats: &[CMatrix], injected: bool) -> Result<Outcome> {
    let mut out = evaluate_plain(check, subs, mats)?;
    if injected {
        out.slack += 1.0;
        out.violated = true;
        out.detail.push_str(" [injected]");
    }
    Ok(out)
}

fn evaluate_plain(check: &Check, subs: &[Subspace], mats: &[CMatrix]) -> Result<Outcome> {
    let d = |k: MetricKind, a: &Subspace, b: &Subspace| asym_distance(k, a, b);
    match *check {
        Check::Triangle { metric } => {
            arity(check, subs, 3)?;
            let (xz, xy, yz) = (d(metric, &subs[0], &subs[2])?, d(metric, &subs[0], &subs[1])?, d(metric, &subs[1], &subs[2])?);
            Ok(Outcome::by_tol(xz - xy - yz, TRIANGLE_TOL, format!("d(X,Z)={xz:e} d(X,Y)={xy:e} d(Y,Z)={yz:e}")))
        }
        Check::LegacyTriangle { metric } => {
            arity(check, subs, 3)?;
            let l = |a: &Subspace, b: &Subspace| legacy_distance(metric, a, b);
            let (xz, xy, yz) = (l(&subs[0], &subs[2])?, l(&subs[0], &subs[1])?, l(&subs[1], &subs[2])?);
            let slack = xz - xy - yz;
            Ok(Outcome {
                slack,
                violated: slack.is_finite() && slack > TRIANGLE_TOL,
                detail: format!("d(X,Z)={xz:e} d(X,Y)={xy:e} d(Y,Z)={yz:e}"),
            })
        }
        Check::Separation { metric } => {
            arity(check, subs, 2)?;
            let (v, w) = (&subs[0], &subs[1]);
            let tol = ToleranceProfile::default().dist_tol;
            let (vw, wv) = (d(metric, v, w)?, d(metric, w, v)?);
            let inside = w.contains(v)?;
            let mut slack = if inside { vw - tol } else { tol - vw };
            let mut detail = format!("d(V,W)={vw:e} d(W,V)={wv:e} contained={inside}");
            if vw < tol && wv < tol && !v.same_span(w)? {
                slack = slack.max(1.0);
                detail.push_str(" both directions zero for distinct subspaces");
            }
            Ok(Outcome::by_tol(slack, 0.0, detail))
        }
        Check::Monotone { metric } => {
            arity(check, subs, 4)?;
            let (v1, v, w1, w) = (&subs[0], &subs[1], &subs[2], &subs[3]);
            let (a, b, c) = (d(metric, v1, w)?, d(metric, v, w)?, d(metric, v, w1)?);
            Ok(Outcome::by_tol(
                (a - b).max(b - c),
                TRIANGLE_TOL,
                format!("d(V',W)={a:e} d(V,W)={b:e} d(V,W')={c:e}"),
            ))
        }
        Check::EqualityPredicate { which } => {
            arity(check, subs, 3)?;
            let (v, w, s) = (&subs[0], &subs[1], &subs[2]);
            let (kind, predicate, base, other) = match which {
                EqualityKind::GeodesicTarget => {
                    (MetricKind::Geodesic, geodesic_target_equality(v, w, s)?, (v, w), (v, s))
                }
                EqualityKind::GeodesicSource => {
                    (MetricKind::Geodesic, geodesic_source_equality(v, s, w)?, (v, w), (s, w))
                }
                EqualityKind::FubiniStudyTarget => {
                    (MetricKind::FubiniStudy, fubini_study_target_equality(v, w, s)?, (v, w), (v, s))
                }
                EqualityKind::FubiniStudySource => {
                    (MetricKind::FubiniStudy, fubini_study_source_equality(v, s, w)?, (v, w), (s, w))
                }
            };
            let gap = (d(kind, other.0, other.1)? - d(kind, base.0, base.1)?).abs();
            let numeric = gap <= TRIANGLE_TOL;
            let slack = if predicate { gap - TRIANGLE_TOL } else { TRIANGLE_TOL - gap };
            Ok(Outcome {
                slack,
                violated: predicate != numeric,
                detail: format!("predicate={predicate} gap={gap:e}"),
            })
        }
        Check::Duality { metric } => {
            arity(check, subs, 2)?;
            let (v, w) = (&subs[0], &subs[1]);
            let a = d(metric, v, w)?;
            let b = d(metric, &w.complement(), &v.complement())?;
            Ok(Outcome::by_tol((a - b).abs(), TRIANGLE_TOL, format!("d(V,W)={a:e} d(W',V')={b:e}")))
        }
        Check::SameDimChain { row } => {
            arity(check, subs, 2)?;
            let [top, mid, bottom] = *SAME_DIM_CHAINS
                .get(row)
                .ok_or_else(|| Error::InvalidArgument(format!("no chain row {row}")))?;
            chain(subs, top, mid, bottom, FRAC_PI_2, [true, true])
        }
        Check::IntersectionChain { row } => {
            arity(check, subs, 2)?;
            let [top, mid, bottom] = *INTERSECTION_CHAINS
                .get(row)
                .ok_or_else(|| Error::InvalidArgument(format!("no chain row {row}")))?;
            let (v, w) = (&subs[0], &subs[1]);
            let p = v.dim();
            let strict = v.intersection_dim(w)? + 1 < p;
            // a right angle makes the last two equal however many angles vanish
            let right = principal_decomposition(v, w)?
                .largest()
                .is_some_and(|t| t >= FRAC_PI_2 - ToleranceProfile::default().angle_tol);
            chain(subs, top, mid, bottom, (p as f64).sqrt(), [strict, strict && !right])
        }
        Check::Interlacing => {
            arity(check, subs, 3)?;
            let (v, w, w1) = (&subs[0], &subs[1], &subs[2]);
            let (q, r) = (w.dim(), w1.dim());
            let full = principal_decomposition(v, w)?;
            let sub = principal_decomposition(v, w1)?;
            let theta = |i: usize| full.angles().get(i).copied().unwrap_or(FRAC_PI_2);
            let mut slack = f64::NEG_INFINITY;
            for (i, &t) in sub.angles().iter().enumerate() {
                slack = slack.max(theta(i) - t).max(t - theta(i + q - r));
            }
            Ok(Outcome::by_tol(slack, INTERLACING_TOL, format!("angles {:?} vs {:?}", full.angles(), sub.angles())))
        }
        Check::PrincipalSubset { r, last } => {
            arity(check, subs, 2)?;
            let (v, w) = (&subs[0], &subs[1]);
            let q = w.dim();
            if r == 0 || r > q {
                return Err(Error::InvalidArgument(format!("r = {r} outside 1..={q}")));
            }
            let full = principal_decomposition(v, w)?;
            let start = if last { q - r } else { 0 };
            let frame = full.f_basis().columns(start, r).into_owned();
            let w1 = Subspace::from_frame(&frame, w.field());
            let sub = principal_decomposition(v, &w1)?;
            let theta = |i: usize| full.angles().get(i).copied().unwrap_or(FRAC_PI_2);
            let slack = sub
                .angles()
                .iter()
                .enumerate()
                .map(|(i, &t)| (t - theta(i + start)).abs())
                .fold(0.0, f64::max);
            Ok(Outcome::by_tol(slack, INTERLACING_TOL, format!("angles {:?} vs {:?}", full.angles(), sub.angles())))
        }
        Check::RouteAgreement { route } => {
            arity(check, subs, 2)?;
            let reference = angle_via_principal(&subs[0], &subs[1])?.theta;
            let other = angle_via(route, &subs[0], &subs[1])?.theta;
            Ok(Outcome::by_tol(
                (other - reference).abs(),
                ROUTE_TOL,
                format!("principal={reference:e} {route:?}={other:e}"),
            ))
        }
        Check::GeodesicEndpoints { topology } => {
            arity(check, subs, 2)?;
            let (v, w) = (&subs[0], &subs[1]);
            let path = type1_path(v, w, MetricKind::Geodesic, topology)?;
            let spans = |s: &Subspace, target: &Subspace| -> Result<bool> {
                Ok(s.dim() == target.dim() && s.intersection_dim(target)? == target.dim())
            };
            let (a, b) = (path.eval(0.0)?, path.eval(1.0)?);
            let misses = [!spans(&a, v)?, !spans(&b, w)?].iter().filter(|&&m| m).count();
            Ok(Outcome::by_tol(
                misses as f64,
                0.0,
                format!("start dim {} end dim {}", a.dim(), b.dim()),
            ))
        }
        Check::GeodesicLength => {
            arity(check, subs, 2)?;
            let (v, w) = (&subs[0], &subs[1]);
            let exact = d(MetricKind::Geodesic, v, w)?;
            let mut slack = 0.0_f64;
            for topology in [Topology::Backward, Topology::Forward] {
                let len = type1_path(v, w, MetricKind::Geodesic, topology)?.length();
                slack = slack.max((len - exact).abs());
            }
            Ok(Outcome::by_tol(slack, LENGTH_TOL, format!("d_g={exact:e}")))
        }
        Check::GeodesicEstimate { samples } => {
            arity(check, subs, 2)?;
            let path = type1_path(&subs[0], &subs[1], MetricKind::Geodesic, Topology::Backward)?;
            let (exact, est) = (path.length(), path.sampled_length(samples)?);
            Ok(Outcome::by_tol((est - exact).abs(), ESTIMATOR_TOL, format!("exact={exact:e} sampled={est:e}")))
        }
        Check::IntrinsicDistance { metric } => {
            arity(check, subs, 2)?;
            let (v, w) = (&subs[0], &subs[1]);
            let expected = d(MetricKind::Geodesic, v, w)?.min(diameter(metric, v.dim()));
            let reported = intrinsic_distance(metric, v, w)?;
            let mut slack = (reported - expected).abs();
            for topology in [Topology::Backward, Topology::Forward] {
                let path = minimal_geodesic(metric, v, w, topology)?;
                slack = slack.max((path.length() - expected).abs());
            }
            Ok(Outcome::by_tol(slack, LENGTH_TOL, format!("min(d_g, diameter)={expected:e} reported={reported:e}")))
        }
        Check::Perturbation { metric } => {
            arity(check, subs, 3)?;
            let (v, u, w) = (&subs[0], &subs[1], &subs[2]);
            let best = intrinsic_distance(metric, v, w)?;
            let first = minimal_geodesic(metric, v, u, Topology::Backward)?;
            let second = minimal_geodesic(metric, u, w, Topology::Backward)?;
            let len = first.concat(&second)?.length();
            Ok(Outcome::by_tol(best - len, TRIANGLE_TOL, format!("minimal={best:e} through U={len:e}")))
        }
        Check::BetweenGeodesic { planted } => {
            arity(check, subs, 3)?;
            let found = is_between_dg(&subs[0], &subs[1], &subs[2])?;
            between(MetricKind::Geodesic, subs, planted, found)
        }
        Check::BetweenFubiniStudy { planted } => {
            arity(check, subs, 3)?;
            let found = is_between_dfs(&subs[0], &subs[1], &subs[2])?;
            between(MetricKind::FubiniStudy, subs, planted, found)
        }
        Check::BcDecomposition => {
            arity(check, subs, 2)?;
            let beta = mats
                .first()
                .ok_or_else(|| Error::InvalidArgument("bc-decomposition needs a basis matrix".into()))?;
            let (v, w) = (&subs[0], &subs[1]);
            let dec = bc_coordinate_decomposition(v, w, beta)?;
            let dbc = d(MetricKind::BinetCauchy, v, w)?;
            let oracle = if v.dim() <= w.dim() {
                let cos2: f64 = principal_decomposition(v, w)?.cosines().iter().map(|c| c * c).product();
                1.0 - cos2
            } else {
                1.0
            };
            let slack = (dec.total - dbc * dbc).abs().max((dec.total - oracle).abs());
            Ok(Outcome::by_tol(
                slack,
                BC_TOL,
                format!("total={:e} d_BC^2={:e} 1-prod cos^2={oracle:e}", dec.total, dbc * dbc),
            ))
        }
    }
}

/// `c·bottom ≥ top`, then `top > middle` and `middle > bottom` with margin
/// where `strict` says so and equal otherwise. For `V = W` everything is
/// zero.
fn chain(
    subs: &[Subspace],
    top: MetricKind,
    mid: MetricKind,
    bottom: MetricKind,
    c: f64,
    strict: [bool; 2],
) -> Result<Outcome> {
    let (v, w) = (&subs[0], &subs[1]);
    if v.dim() != w.dim() {
        return Err(Error::DimensionMismatch("chains compare subspaces of equal dimension".into()));
    }
    let (a, b, x) = (asym_distance(top, v, w)?, asym_distance(mid, v, w)?, asym_distance(bottom, v, w)?);
    let detail = format!("{top}={a:e} {mid}={b:e} {bottom}={x:e} strict={strict:?}");
    let upper = a - c * x;
    if v.same_span(w)? {
        let slack = upper.max(a.abs()).max(b.abs()).max(x.abs());
        return Ok(Outcome::by_tol(slack, CHAIN_MARGIN, detail));
    }
    let mut violated = !(upper <= CHAIN_MARGIN);
    let mut slack = upper;
    for (strict, hi, lo) in [(strict[0], a, b), (strict[1], b, x)] {
        if strict {
            violated |= !(hi - lo > CHAIN_MARGIN);
            slack = slack.max(lo - hi);
        } else {
            violated |= !((hi - lo).abs() <= CHAIN_EQUAL_TOL);
            slack = slack.max((hi - lo).abs());
        }
    }
    Ok(Outcome {
        slack,
        violated,
        detail,
    })
}

fn between(kind: MetricKind, subs: &[Subspace], planted: Option<BetweenCase>, found: Option<BetweenCase>) -> Result<Outcome> {
    let (u, v, w) = (&subs[0], &subs[1], &subs[2]);
    let excess = asym_distance(kind, v, u)? + asym_distance(kind, u, w)? - asym_distance(kind, v, w)?;
    let detail = format!("predicate={} excess={excess:e}", found.map_or("none", |c| c.label()));
    Ok(match planted {
        Some(case) => Outcome {
            slack: excess.abs(),
            violated: found != Some(case) || !(excess.abs() <= ADDITIVITY_TOL),
            detail,
        },
        None => Outcome {
            slack: GENERIC_SLACK - excess,
            violated: found.is_some() || !(excess > GENERIC_SLACK),
            detail,
        },
    })
}
