//! Structured paths in the total Grassmannian: constant pieces, rotation
//! legs inside one Grassmannian, and instantaneous dimension jumps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64};
use crate::metrics::{asym_distance, diameter, Family, MetricKind};
use crate::principal::principal_decomposition;
use crate::subspace::Subspace;

/// Below this sine a principal direction is treated as already aligned.
const FROZEN_SINE: f64 = 1e-13;

/// Which side of a jump the path takes at the jump instant. `Backward`
/// is the topology in which limits are contained in the value
/// (`φ(c)` is the larger side); `Forward` is the reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    #[default]
    Backward,
    Forward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathKind {
    /// A single rotation inside one Grassmannian.
    Grassmannian,
    /// Rotation to a projection subspace plus a null expansion.
    TypeI,
    /// Contraction to `{0}` followed by expansion.
    TypeII,
    /// Piecewise constant with expansions only.
    Null,
    /// A concatenation of other paths.
    Composite,
}

impl PathKind {
    pub fn tag(self) -> &'static str {
        match self {
            PathKind::Grassmannian => "G",
            PathKind::TypeI => "I",
            PathKind::TypeII => "II",
            PathKind::Null => "null",
            PathKind::Composite => "composite",
        }
    }
}

/// `φ(t) = span{cos(sθᵢ)eᵢ + sin(sθᵢ)gᵢ} ⊕ X` with `s = (t − a)/(b − a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationLeg {
    start: f64,
    end: f64,
    frame: CMatrix,
    directions: CMatrix,
    angles: Vec<f64>,
    static_sum: Subspace,
    from: Subspace,
    to: Subspace,
}

impl RotationLeg {
    /// Leg from `V ⊕ X` to `W ⊕ X` for `dim V = dim W`, with `X`
    /// orthogonal to both.
    fn between(v: &Subspace, w: &Subspace, static_sum: Subspace, start: f64, end: f64) -> Result<Self> {
        let p = v.dim();
        let pd = principal_decomposition(v, w)?;
        let frame = pd.e_basis().columns(0, p).into_owned();
        let mut directions = CMatrix::zeros(v.ambient(), p);
        let mut angles = Vec::with_capacity(p);
        for i in 0..p {
            let theta = pd.angles()[i];
            let e = pd.e(i);
            let residual = pd.f(i) - e * C64::new(theta.cos(), 0.0);
            let norm = residual.norm();
            if theta.sin() < FROZEN_SINE || norm == 0.0 {
                angles.push(0.0);
                continue;
            }
            directions.set_column(i, &(residual / C64::new(norm, 0.0)));
            angles.push(theta);
        }
        let from = v.direct_sum(&static_sum)?;
        let to = w.direct_sum(&static_sum)?;
        Ok(RotationLeg {
            start,
            end,
            frame,
            directions,
            angles,
            static_sum,
            from,
            to,
        })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn from(&self) -> &Subspace {
        &self.from
    }

    pub fn to(&self) -> &Subspace {
        &self.to
    }

    pub fn static_sum(&self) -> &Subspace {
        &self.static_sum
    }

    /// `√Σθᵢ²`; the same for every l² and ∧ metric.
    pub fn length(&self) -> f64 {
        self.angles.iter().map(|t| t * t).sum::<f64>().sqrt()
    }

    /// The moving `p`-frame at `t` (without the static summand).
    pub fn frame_at(&self, t: f64) -> CMatrix {
        let span = self.end - self.start;
        let s = if span > 0.0 { ((t - self.start) / span).clamp(0.0, 1.0) } else { 1.0 };
        let mut out = self.frame.clone();
        for (i, &theta) in self.angles.iter().enumerate() {
            if theta == 0.0 {
                continue;
            }
            let (sin, cos) = (s * theta).sin_cos();
            let col = self.frame.column(i) * C64::new(cos, 0.0) + self.directions.column(i) * C64::new(sin, 0.0);
            out.set_column(i, &col);
        }
        out
    }

    pub fn eval(&self, t: f64) -> Subspace {
        let frame = linalg::hcat(&self.frame_at(t), self.static_sum.basis());
        Subspace::from_frame(&frame, self.static_sum.field())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Expand,
    Contract,
}

/// An instantaneous jump from `before` to `after` at parameter `at`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathEvent {
    pub at: f64,
    pub kind: EventKind,
    pub before: Subspace,
    pub after: Subspace,
    /// Length added by the jump: `0` for an expansion, the diameter of
    /// `dim before` for a contraction.
    pub penalty: f64,
}

impl PathEvent {
    fn new(at: f64, before: Subspace, after: Subspace, metric: MetricKind) -> Result<Self> {
        let kind = if before.dim() < after.dim() && after.contains(&before)? {
            EventKind::Expand
        } else if before.dim() > after.dim() && before.contains(&after)? {
            EventKind::Contract
        } else {
            return Err(Error::InvalidArgument("a jump must be a strict expansion or contraction".into()));
        };
        let penalty = match kind {
            EventKind::Expand => 0.0,
            EventKind::Contract => diameter(metric, before.dim()),
        };
        Ok(PathEvent {
            at,
            kind,
            before,
            after,
            penalty,
        })
    }

    fn value(&self, topology: Topology) -> &Subspace {
        let larger_is_after = self.kind == EventKind::Expand;
        match (topology, larger_is_after) {
            (Topology::Backward, true) | (Topology::Forward, false) => &self.after,
            _ => &self.before,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PathPiece {
    Constant { start: f64, end: f64, value: Subspace },
    Rotation(RotationLeg),
    Event(PathEvent),
}

impl PathPiece {
    fn span(&self) -> (f64, f64) {
        match self {
            PathPiece::Constant { start, end, .. } => (*start, *end),
            PathPiece::Rotation(leg) => (leg.start, leg.end),
            PathPiece::Event(e) => (e.at, e.at),
        }
    }

    fn shifted(&self, by: f64) -> PathPiece {
        match self {
            PathPiece::Constant { start, end, value } => PathPiece::Constant {
                start: start + by,
                end: end + by,
                value: value.clone(),
            },
            PathPiece::Rotation(leg) => PathPiece::Rotation(RotationLeg {
                start: leg.start + by,
                end: leg.end + by,
                ..leg.clone()
            }),
            PathPiece::Event(e) => PathPiece::Event(PathEvent { at: e.at + by, ..e.clone() }),
        }
    }
}

/// A path `φ : [a, b] → Gⁿ` stored by structure. Pieces are ordered by
/// parameter and cover `[a, b]`; events sit at single instants.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    metric: MetricKind,
    topology: Topology,
    kind: PathKind,
    start: f64,
    end: f64,
    pieces: Vec<PathPiece>,
}

impl Path {
    pub fn metric(&self) -> MetricKind {
        self.metric
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn kind(&self) -> PathKind {
        self.kind
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.start, self.end)
    }

    pub fn pieces(&self) -> &[PathPiece] {
        &self.pieces
    }

    pub fn events(&self) -> impl Iterator<Item = &PathEvent> {
        self.pieces.iter().filter_map(|p| match p {
            PathPiece::Event(e) => Some(e),
            _ => None,
        })
    }

    /// Exact length: rotation lengths plus contraction penalties.
    pub fn length(&self) -> f64 {
        self.pieces
            .iter()
            .map(|p| match p {
                PathPiece::Constant { .. } => 0.0,
                PathPiece::Rotation(leg) => leg.length(),
                PathPiece::Event(e) => e.penalty,
            })
            .sum()
    }

    /// `φ(t)`. At a jump instant the topology picks the side.
    pub fn eval(&self, t: f64) -> Result<Subspace> {
        if !t.is_finite() || t < self.start || t > self.end {
            return Err(Error::InvalidArgument(format!(
                "parameter {t} outside [{}, {}]",
                self.start, self.end
            )));
        }
        if let Some(e) = self.events().find(|e| e.at == t) {
            return Ok(e.value(self.topology).clone());
        }
        for piece in &self.pieces {
            let (a, b) = piece.span();
            if t < a || t > b {
                continue;
            }
            match piece {
                PathPiece::Constant { value, .. } => return Ok(value.clone()),
                PathPiece::Rotation(leg) => return Ok(leg.eval(t)),
                PathPiece::Event(_) => {}
            }
        }
        Err(Error::Numerical(format!("no piece of the path covers {t}")))
    }

    /// `φ` at `k ≥ 2` uniformly spaced parameters, both ends included.
    pub fn sample(&self, k: usize) -> Result<Vec<(f64, Subspace)>> {
        if k < 2 {
            return Err(Error::InvalidArgument("at least 2 samples are needed".into()));
        }
        (0..k)
            .map(|i| {
                let t = if i + 1 == k {
                    self.end
                } else {
                    self.start + (self.end - self.start) * i as f64 / (k - 1) as f64
                };
                Ok((t, self.eval(t)?))
            })
            .collect()
    }

    /// `Σ d(φ(tᵢ), φ(tᵢ₊₁))` over `k` uniform samples, a lower estimate of
    /// the length.
    pub fn sampled_length(&self, k: usize) -> Result<f64> {
        let samples = self.sample(k)?;
        let mut total = 0.0;
        for pair in samples.windows(2) {
            total += asym_distance(self.metric, &pair[0].1, &pair[1].1)?;
        }
        Ok(total)
    }

    /// `self` followed by `next`, shifted to start where `self` ends.
    pub fn concat(&self, next: &Path) -> Result<Path> {
        if self.metric != next.metric || self.topology != next.topology {
            return Err(Error::InvalidArgument("concatenated paths must share metric and topology".into()));
        }
        let last = self.final_value();
        let first = next.initial_value();
        if !last.same_span(first)? {
            return Err(Error::InvalidArgument("paths do not meet".into()));
        }
        let shift = self.end - next.start;
        let mut pieces = self.pieces.clone();
        pieces.extend(next.pieces.iter().map(|p| p.shifted(shift)));
        Ok(Path {
            metric: self.metric,
            topology: self.topology,
            kind: PathKind::Composite,
            start: self.start,
            end: next.end + shift,
            pieces,
        })
    }

    /// The subspace the path starts from, before any jump at `a`.
    pub fn initial_value(&self) -> &Subspace {
        match &self.pieces[0] {
            PathPiece::Constant { value, .. } => value,
            PathPiece::Rotation(leg) => &leg.from,
            PathPiece::Event(e) => &e.before,
        }
    }

    /// The subspace the path ends at, after any jump at `b`.
    pub fn final_value(&self) -> &Subspace {
        match self.pieces.last().expect("paths are never empty") {
            PathPiece::Constant { value, .. } => value,
            PathPiece::Rotation(leg) => &leg.to,
            PathPiece::Event(e) => &e.after,
        }
    }
}

fn check_metric(metric: MetricKind) -> Result<()> {
    if metric.family() == Family::Max {
        return Err(Error::UnsupportedMetric(
            metric.symbol(),
            "geodesics are only available for l2 and wedge metrics",
        ));
    }
    Ok(())
}

fn same_dims(v: &Subspace, w: &Subspace) -> Result<()> {
    v.check_compatible(w)?;
    if v.dim() != w.dim() {
        return Err(Error::DimensionMismatch(format!(
            "a Grassmannian geodesic needs equal dimensions, got {} and {}",
            v.dim(),
            w.dim()
        )));
    }
    Ok(())
}

/// Constant-speed rotation from `V` to `W` in `G_p` on `[0, 1]`, driven
/// by the computed principal bases. Its length is `d_g(V, W)`.
pub fn grassmannian_geodesic(v: &Subspace, w: &Subspace) -> Result<Path> {
    same_dims(v, w)?;
    let leg = RotationLeg::between(v, w, Subspace::zero(v.ambient(), v.field()), 0.0, 1.0)?;
    Ok(Path {
        metric: MetricKind::Geodesic,
        topology: Topology::Backward,
        kind: PathKind::Grassmannian,
        start: 0.0,
        end: 1.0,
        pieces: vec![PathPiece::Rotation(leg)],
    })
}

/// Null path from `V` to `W ⊃ V` on `[0, 1]`: constant, with one
/// expansion at `1` (backward) or `0` (forward).
pub fn null_path(v: &Subspace, w: &Subspace, metric: MetricKind, topology: Topology) -> Result<Path> {
    check_metric(metric)?;
    v.check_compatible(w)?;
    if !w.contains(v)? {
        return Err(Error::InvalidArgument("a null path can only expand".into()));
    }
    let pieces = if v.dim() == w.dim() {
        vec![PathPiece::Constant {
            start: 0.0,
            end: 1.0,
            value: v.clone(),
        }]
    } else {
        let jump = PathEvent::new(0.0, v.clone(), w.clone(), metric)?;
        match topology {
            Topology::Backward => vec![
                PathPiece::Constant {
                    start: 0.0,
                    end: 1.0,
                    value: v.clone(),
                },
                PathPiece::Event(PathEvent { at: 1.0, ..jump }),
            ],
            Topology::Forward => vec![
                PathPiece::Event(jump),
                PathPiece::Constant {
                    start: 0.0,
                    end: 1.0,
                    value: w.clone(),
                },
            ],
        }
    };
    Ok(Path {
        metric,
        topology,
        kind: PathKind::Null,
        start: 0.0,
        end: 1.0,
        pieces,
    })
}

/// Type I path on `[0, 1]` for `p ≤ q`: `V` rotates to the projection
/// subspace `W′` spanned by the first `p` principal vectors of `W`, and
/// the rest `X = W′⊥ ∩ W` is added by a single expansion, at the end
/// (backward) or at the start (forward). Length `d_g(V, W)`.
pub fn type1_path(v: &Subspace, w: &Subspace, metric: MetricKind, topology: Topology) -> Result<Path> {
    check_metric(metric)?;
    v.check_compatible(w)?;
    let (p, q) = (v.dim(), w.dim());
    if p > q {
        return Err(Error::DimensionMismatch(format!("type I paths need dim V <= dim W, got {p} > {q}")));
    }
    let pd = principal_decomposition(v, w)?;
    let field = v.field();
    let w_proj = Subspace::from_frame(&pd.f_basis().columns(0, p).into_owned(), field);
    let rest = Subspace::from_frame(&pd.f_basis().columns(p, q - p).into_owned(), field);
    let zero = Subspace::zero(v.ambient(), field);
    let mut pieces = Vec::new();
    if rest.is_zero() {
        pieces.push(PathPiece::Rotation(RotationLeg::between(v, &w_proj, zero, 0.0, 1.0)?));
    } else {
        match topology {
            Topology::Backward => {
                let leg = RotationLeg::between(v, &w_proj, zero, 0.0, 1.0)?;
                let before = leg.to.clone();
                pieces.push(PathPiece::Rotation(leg));
                pieces.push(PathPiece::Event(PathEvent::new(1.0, before, w.clone(), metric)?));
            }
            Topology::Forward => {
                let leg = RotationLeg::between(v, &w_proj, rest, 0.0, 1.0)?;
                pieces.push(PathPiece::Event(PathEvent::new(0.0, v.clone(), leg.from.clone(), metric)?));
                pieces.push(PathPiece::Rotation(leg));
            }
        }
    }
    Ok(Path {
        metric,
        topology,
        kind: PathKind::TypeI,
        start: 0.0,
        end: 1.0,
        pieces,
    })
}

/// Type II path on `[0, 1]`: constant at `V`, contraction to `{0}` at
/// `1/3`, expansion to `W` at `2/3`. Length `Δ_p` of the metric.
pub fn type2_path(v: &Subspace, w: &Subspace, metric: MetricKind, topology: Topology) -> Result<Path> {
    check_metric(metric)?;
    v.check_compatible(w)?;
    if v.is_zero() {
        return Err(Error::InvalidArgument("type II paths need V != {0}".into()));
    }
    let zero = Subspace::zero(v.ambient(), v.field());
    let (c1, c2) = (1.0 / 3.0, 2.0 / 3.0);
    let mut pieces = vec![
        PathPiece::Constant {
            start: 0.0,
            end: c1,
            value: v.clone(),
        },
        PathPiece::Event(PathEvent::new(c1, v.clone(), zero.clone(), metric)?),
    ];
    if w.is_zero() {
        pieces.push(PathPiece::Constant {
            start: c1,
            end: 1.0,
            value: zero,
        });
    } else {
        pieces.push(PathPiece::Constant {
            start: c1,
            end: c2,
            value: zero.clone(),
        });
        pieces.push(PathPiece::Event(PathEvent::new(c2, zero, w.clone(), metric)?));
        pieces.push(PathPiece::Constant {
            start: c2,
            end: 1.0,
            value: w.clone(),
        });
    }
    Ok(Path {
        metric,
        topology,
        kind: PathKind::TypeII,
        start: 0.0,
        end: 1.0,
        pieces,
    })
}

/// `D(V, W) = min{d_g(V, W), Δ_p}`, the infimum of path lengths, with
/// `Δ_p` taken for `metric`.
pub fn intrinsic_distance(metric: MetricKind, v: &Subspace, w: &Subspace) -> Result<f64> {
    check_metric(metric)?;
    let dg = asym_distance(MetricKind::Geodesic, v, w)?;
    Ok(dg.min(diameter(metric, v.dim())))
}

/// A minimal geodesic from `V` to `W`: type I when `p ≤ q` and
/// `d_g(V, W) ≤ Δ_p`, type II otherwise.
pub fn minimal_geodesic(metric: MetricKind, v: &Subspace, w: &Subspace, topology: Topology) -> Result<Path> {
    check_metric(metric)?;
    v.check_compatible(w)?;
    let (p, q) = (v.dim(), w.dim());
    if p <= q && asym_distance(MetricKind::Geodesic, v, w)? <= diameter(metric, p) {
        type1_path(v, w, metric, topology)
    } else {
        type2_path(v, w, metric, topology)
    }
}

/// Largest deviation from orthonormality of the moving frame, over `k`
/// samples of each rotation leg.
pub fn frame_error(path: &Path, k: usize) -> f64 {
    let mut worst = 0.0_f64;
    for piece in path.pieces() {
        if let PathPiece::Rotation(leg) = piece {
            for i in 0..k.max(2) {
                let t = leg.start + (leg.end - leg.start) * i as f64 / (k.max(2) - 1) as f64;
                let frame = linalg::hcat(&leg.frame_at(t), leg.static_sum.basis());
                worst = worst.max(linalg::orthonormality_error(&frame));
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::random::{random_subspace, random_subspace_of, rng_for};
    use crate::subspace::FieldTag;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};

    fn line(n: usize, coords: &[f64]) -> Subspace {
        Subspace::from_real_columns(n, &[coords.to_vec()]).unwrap()
    }

    #[test]
    fn rotation_of_lines_in_the_plane() {
        let v = line(2, &[1.0, 0.0]);
        let w = line(2, &[FRAC_PI_3.cos(), FRAC_PI_3.sin()]);
        let path = grassmannian_geodesic(&v, &w).unwrap();
        let mid = path.eval(0.5).unwrap();
        let to_v = asym_distance(MetricKind::Geodesic, &mid, &v).unwrap();
        let to_w = asym_distance(MetricKind::Geodesic, &mid, &w).unwrap();
        assert!((to_v - FRAC_PI_6).abs() < 1e-12 && (to_w - FRAC_PI_6).abs() < 1e-12);
        assert!((path.length() - FRAC_PI_3).abs() < 1e-12);
        let still = grassmannian_geodesic(&v, &v).unwrap();
        assert!(still.length() < 1e-12);
        assert!(grassmannian_geodesic(&v, &Subspace::full(2, FieldTag::Real)).is_err());
    }

    #[test]
    fn geodesic_is_additive_along_samples() {
        let mut rng = rng_for(51, 0);
        for field in [FieldTag::Real, FieldTag::Complex] {
            let v = random_subspace(&mut rng, 6, 3, field);
            let w = random_subspace(&mut rng, 6, 3, field);
            let path = grassmannian_geodesic(&v, &w).unwrap();
            let d = asym_distance(MetricKind::Geodesic, &v, &w).unwrap();
            assert!((path.length() - d).abs() < 1e-12);
            assert!((path.sampled_length(1000).unwrap() - d).abs() < 1e-9);
            assert!(path.eval(0.0).unwrap().same_span(&v).unwrap());
            assert!(path.eval(1.0).unwrap().same_span(&w).unwrap());
            assert!(frame_error(&path, 50) < 1e-10);
        }
    }

    #[test]
    fn type1_line_into_plane() {
        let v = line(3, &[1.0, 0.0, 1.0]);
        let w = Subspace::from_real_columns(3, &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        for topology in [Topology::Backward, Topology::Forward] {
            let path = type1_path(&v, &w, MetricKind::FubiniStudy, topology).unwrap();
            assert!((path.length() - PI / 4.0).abs() < 1e-12);
            assert!(path.eval(0.0).unwrap().same_span(&v).unwrap());
            assert!(path.eval(1.0).unwrap().same_span(&w).unwrap());
            assert_eq!(path.events().count(), 1);
        }
        let back = type1_path(&v, &w, MetricKind::FubiniStudy, Topology::Backward).unwrap();
        assert_eq!(back.eval(0.5).unwrap().dim(), 1);
        let fwd = type1_path(&v, &w, MetricKind::FubiniStudy, Topology::Forward).unwrap();
        assert_eq!(fwd.eval(0.5).unwrap().dim(), 2);
        assert!(type1_path(&w, &v, MetricKind::FubiniStudy, Topology::Backward).is_err());
    }

    #[test]
    fn type1_of_nested_pair_is_null() {
        let mut rng = rng_for(52, 0);
        let w = random_subspace(&mut rng, 5, 3, FieldTag::Real);
        let v = random_subspace_of(&mut rng, &w, 2);
        let path = type1_path(&v, &w, MetricKind::Geodesic, Topology::Backward).unwrap();
        assert!(path.length() < 1e-12);
        assert!(path.sampled_length(20).unwrap() < 1e-12);
    }

    #[test]
    fn type2_lengths_are_diameters() {
        let mut rng = rng_for(53, 0);
        let plane = random_subspace(&mut rng, 3, 2, FieldTag::Real);
        let l = random_subspace(&mut rng, 3, 1, FieldTag::Real);
        for kind in [MetricKind::Geodesic, MetricKind::FubiniStudy, MetricKind::ChordalFrobenius] {
            let path = type2_path(&plane, &l, kind, Topology::Backward).unwrap();
            assert!((path.length() - diameter(kind, 2)).abs() < 1e-15);
            assert!((path.sampled_length(10).unwrap() - diameter(kind, 2)).abs() < 1e-12);
        }
        let v3 = random_subspace(&mut rng, 5, 3, FieldTag::Real);
        let path = type2_path(&v3, &l.complement(), MetricKind::BinetCauchy, Topology::Forward);
        assert!(path.is_err(), "ambient mismatch");
        let w5 = random_subspace(&mut rng, 5, 2, FieldTag::Real);
        let bc = type2_path(&v3, &w5, MetricKind::BinetCauchy, Topology::Forward).unwrap();
        assert_eq!(bc.length(), 1.0);
        let v4 = random_subspace(&mut rng, 6, 4, FieldTag::Real);
        let w6 = random_subspace(&mut rng, 6, 4, FieldTag::Real);
        assert!((type2_path(&v4, &w6, MetricKind::Geodesic, Topology::Backward).unwrap().length() - PI).abs() < 1e-15);
        assert!(type2_path(&Subspace::zero(3, FieldTag::Real), &l, MetricKind::Geodesic, Topology::Backward).is_err());
    }

    #[test]
    fn event_instants_follow_topology() {
        let mut rng = rng_for(54, 0);
        let v = random_subspace(&mut rng, 4, 2, FieldTag::Real);
        let w = random_subspace(&mut rng, 4, 1, FieldTag::Real);
        let back = type2_path(&v, &w, MetricKind::FubiniStudy, Topology::Backward).unwrap();
        let fwd = type2_path(&v, &w, MetricKind::FubiniStudy, Topology::Forward).unwrap();
        let c1 = 1.0 / 3.0;
        assert!(back.eval(c1).unwrap().same_span(&v).unwrap());
        assert!(fwd.eval(c1).unwrap().is_zero());
        assert!(back.eval(2.0 / 3.0).unwrap().same_span(&w).unwrap());
        assert!(fwd.eval(2.0 / 3.0).unwrap().is_zero());
        assert!(back.eval(0.5).unwrap().is_zero());
        assert!(back.eval(1.0).unwrap().same_span(&w).unwrap());
        assert!(back.eval(1.5).is_err());
    }

    #[test]
    fn minimal_geodesic_selection() {
        let v = line(3, &[1.0, 0.0, 0.2]);
        let w = Subspace::from_real_columns(3, &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        let small = minimal_geodesic(MetricKind::FubiniStudy, &v, &w, Topology::Backward).unwrap();
        assert_eq!(small.kind(), PathKind::TypeI);
        let down = minimal_geodesic(MetricKind::FubiniStudy, &w, &v, Topology::Backward).unwrap();
        assert_eq!(down.kind(), PathKind::TypeII);
        assert_eq!(down.length(), FRAC_PI_2);

        let a = Subspace::from_real_columns(4, &[vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0]]).unwrap();
        let b = a.complement();
        let perp = minimal_geodesic(MetricKind::FubiniStudy, &a, &b, Topology::Backward).unwrap();
        assert_eq!(perp.kind(), PathKind::TypeII);
        assert_eq!(intrinsic_distance(MetricKind::FubiniStudy, &a, &b).unwrap(), FRAC_PI_2);
        let theta = intrinsic_distance(MetricKind::FubiniStudy, &v, &w).unwrap();
        assert!((theta - 0.2f64.atan()).abs() < 1e-12);
        assert!(matches!(
            minimal_geodesic(MetricKind::Asimov, &v, &w, Topology::Backward),
            Err(Error::UnsupportedMetric(..))
        ));
    }

    #[test]
    fn null_paths_have_zero_length() {
        let mut rng = rng_for(55, 0);
        let w = random_subspace(&mut rng, 5, 4, FieldTag::Complex);
        let u = random_subspace_of(&mut rng, &w, 2);
        let v = random_subspace_of(&mut rng, &u, 1);
        for topology in [Topology::Backward, Topology::Forward] {
            let path = null_path(&v, &u, MetricKind::ChordalWedge, topology)
                .unwrap()
                .concat(&null_path(&u, &w, MetricKind::ChordalWedge, topology).unwrap())
                .unwrap();
            assert_eq!(path.length(), 0.0);
            assert!(path.sampled_length(25).unwrap() < 1e-12);
            assert_eq!(path.domain(), (0.0, 2.0));
            assert!(path.eval(2.0).unwrap().same_span(&w).unwrap());
        }
        assert!(null_path(&w, &v, MetricKind::Geodesic, Topology::Backward).is_err());
    }

    #[test]
    fn wedge_estimator_converges_from_below() {
        let mut rng = rng_for(56, 0);
        let v = random_subspace(&mut rng, 6, 2, FieldTag::Real);
        let w = random_subspace(&mut rng, 6, 3, FieldTag::Real);
        let path = type1_path(&v, &w, MetricKind::FubiniStudy, Topology::Backward).unwrap();
        let exact = path.length();
        let coarse = path.sampled_length(10).unwrap();
        let fine = path.sampled_length(1000).unwrap();
        assert!(coarse <= fine + 1e-12 && fine <= exact + 1e-12);
        assert!(exact - fine < 1e-5);
    }
}
