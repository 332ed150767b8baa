//! Input generators for the named suites.

use rand::Rng;

use super::checks::{EqualityKind, ESTIMATOR_SAMPLES, INTERSECTION_CHAINS, SAME_DIM_CHAINS};
use super::random::{gaussian_matrix, random_orthogonal_to, random_subspace, random_subspace_of};
use super::{Case, Check, Finding, Requirement};
use crate::angle::Route;
use crate::error::Result;
use crate::geodesic::{line_between_construct, type1_path, BetweenCase, Topology};
use crate::linalg::{self, CMatrix, C64};
use crate::metrics::{Family, LegacyKind, MetricKind};
use crate::subspace::{FieldTag, Subspace, ToleranceProfile};

const FIELDS: [FieldTag; 2] = [FieldTag::Real, FieldTag::Complex];

/// Share of inputs built with a planted containment or orthogonality.
const PLANTED: f64 = 0.25;

/// Perturbed paths per random pair in the geodesic suite.
const PERTURBATIONS: usize = 100;

const REQUIRED_SLACK: f64 = 0.1;

fn path_metrics() -> impl Iterator<Item = MetricKind> {
    MetricKind::ALL.into_iter().filter(|k| k.family() != Family::Max)
}

fn dim(rng: &mut impl Rng, lo: usize, hi: usize) -> usize {
    if hi <= lo {
        lo
    } else {
        rng.random_range(lo..=hi)
    }
}

fn any(rng: &mut impl Rng, n: usize, field: FieldTag) -> Subspace {
    let p = dim(rng, 0, n);
    random_subspace(rng, n, p, field)
}

/// Random subspace of `s` of random dimension in `lo..=dim s`.
fn sub(rng: &mut impl Rng, s: &Subspace, lo: usize) -> Subspace {
    let k = dim(rng, lo.min(s.dim()), s.dim());
    random_subspace_of(rng, s, k)
}

fn orth(rng: &mut impl Rng, s: &Subspace) -> Subspace {
    let k = dim(rng, 0, s.ambient() - s.dim());
    random_orthogonal_to(rng, s, k)
}

/// Same span, fresh basis.
fn rebasis(rng: &mut impl Rng, s: &Subspace) -> Subspace {
    random_subspace_of(rng, s, s.dim())
}

/// `(X, Y, Z)` for `d(X, Z) ≤ d(X, Y) + d(Y, Z)`.
fn triple(rng: &mut impl Rng, n: usize, field: FieldTag) -> Result<[Subspace; 3]> {
    if !rng.random_bool(PLANTED) {
        return Ok([any(rng, n, field), any(rng, n, field), any(rng, n, field)]);
    }
    Ok(match rng.random_range(0..6) {
        0 => {
            let z = any(rng, n, field);
            let y = sub(rng, &z, 0);
            [any(rng, n, field), y, z]
        }
        1 => {
            let y = any(rng, n, field);
            let x = sub(rng, &y, 0);
            [x, y, any(rng, n, field)]
        }
        2 => {
            let z = any(rng, n, field);
            let y = orth(rng, &z);
            [any(rng, n, field), y, z]
        }
        3 => {
            let y = any(rng, n, field);
            let x = orth(rng, &y);
            [x, y, any(rng, n, field)]
        }
        4 => {
            let z = any(rng, n, field);
            let x = sub(rng, &z, 0);
            let extra = sub(rng, &z.minus(&x)?, 0);
            let y = x.direct_sum(&extra)?;
            [x, y, z]
        }
        _ => {
            let (x, z) = (any(rng, n, field), any(rng, n, field));
            let y = if rng.random_bool(0.5) { rebasis(rng, &x) } else { rebasis(rng, &z) };
            [x, y, z]
        }
    })
}

fn pair(rng: &mut impl Rng, n: usize, field: FieldTag) -> [Subspace; 2] {
    if !rng.random_bool(PLANTED) {
        return [any(rng, n, field), any(rng, n, field)];
    }
    match rng.random_range(0..4) {
        0 => {
            let w = any(rng, n, field);
            [sub(rng, &w, 0), w]
        }
        1 => {
            let v = any(rng, n, field);
            let w = sub(rng, &v, 0);
            [v, w]
        }
        2 => {
            let v = any(rng, n, field);
            let w = orth(rng, &v);
            [v, w]
        }
        _ => {
            let v = any(rng, n, field);
            let w = rebasis(rng, &v);
            [v, w]
        }
    }
}

/// Two distinct subspaces of equal dimension `1 ≤ p ≤ n − 1` (`n ≥ 2`).
/// Planted inputs share a subspace of dimension `shared(p)` or are
/// orthogonal.
fn equal_dim_pair(
    rng: &mut impl Rng,
    n: usize,
    field: FieldTag,
    shared: impl Fn(&mut dyn rand::RngCore, usize) -> usize,
) -> Result<[Subspace; 2]> {
    let p = dim(rng, 1, n - 1);
    if !rng.random_bool(PLANTED) {
        return Ok([random_subspace(rng, n, p, field), random_subspace(rng, n, p, field)]);
    }
    if 2 * p <= n && rng.random_bool(0.25) {
        let v = random_subspace(rng, n, p, field);
        let w = random_orthogonal_to(rng, &v, p);
        return Ok([v, w]);
    }
    let k = shared(rng, p).min(p - 1);
    let r = random_subspace(rng, n, k, field);
    let x = random_orthogonal_to(rng, &r, p - k);
    let y = random_orthogonal_to(rng, &r, p - k);
    Ok([r.direct_sum(&x)?, r.direct_sum(&y)?])
}

fn perturb(rng: &mut impl Rng, s: &Subspace, eps: f64) -> Result<Subspace> {
    if eps == 0.0 || s.is_zero() {
        return Ok(s.clone());
    }
    let g = gaussian_matrix(rng, s.ambient(), s.dim(), s.field());
    let m = s.basis() + g * C64::new(eps, 0.0);
    Subspace::from_spanning(&m, s.field(), &ToleranceProfile::default())
}

fn unitary(rng: &mut impl Rng, k: usize, field: FieldTag) -> CMatrix {
    random_subspace(rng, k, k, field).basis().clone()
}

pub(crate) fn generate(suite: &str, rng: &mut impl Rng, trial: u64, n_max: usize) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for field in FIELDS {
        match suite {
            "triangle" => triangle(rng, n_max, field, &mut cases)?,
            "t0" => separation(rng, n_max, field, &mut cases)?,
            "monotonicity" => monotonicity(rng, n_max, field, &mut cases)?,
            "duality" => {
                let n = dim(rng, 1, n_max);
                let [v, w] = pair(rng, n, field);
                for metric in MetricKind::ALL {
                    let check = Check::Duality { metric };
                    let subs = vec![v.clone(), w.clone()];
                    cases.push(match metric.family() {
                        Family::L2 => Case::search(check, subs),
                        _ => Case::holds(check, subs),
                    });
                }
            }
            "chainB1" => {
                let n = dim(rng, 2, n_max.max(2));
                let [v, w] = equal_dim_pair(rng, n, field, |r, p| r.random_range(0..p))?;
                for row in 0..SAME_DIM_CHAINS.len() {
                    cases.push(Case::holds(Check::SameDimChain { row }, vec![v.clone(), w.clone()]));
                }
            }
            "chainB2" => {
                let n = dim(rng, 2, n_max.max(2));
                let shared = |r: &mut dyn rand::RngCore, p: usize| {
                    if p >= 2 && r.random_bool(0.5) {
                        r.random_range(0..p - 1)
                    } else {
                        p - 1
                    }
                };
                let [v, w] = equal_dim_pair(rng, n, field, shared)?;
                for row in 0..INTERSECTION_CHAINS.len() {
                    cases.push(Case::holds(Check::IntersectionChain { row }, vec![v.clone(), w.clone()]));
                }
            }
            "interlacing" => {
                let n = dim(rng, 1, n_max);
                let (p, q) = (dim(rng, 1, n), dim(rng, 1, n));
                let v = random_subspace(rng, n, p, field);
                let w = random_subspace(rng, n, q, field);
                let r = dim(rng, 1, q);
                let w1 = random_subspace_of(rng, &w, r);
                cases.push(Case::holds(Check::Interlacing, vec![v.clone(), w.clone(), w1]));
                for last in [false, true] {
                    cases.push(Case::holds(Check::PrincipalSubset { r, last }, vec![v.clone(), w.clone()]));
                }
            }
            "route-agreement" => {
                let n = dim(rng, 1, n_max);
                let [v, w] = pair(rng, n, field);
                for route in Route::ALL.into_iter().filter(|&r| r != Route::Principal) {
                    cases.push(Case::holds(Check::RouteAgreement { route }, vec![v.clone(), w.clone()]));
                }
            }
            "geodesic-length" => geodesics(rng, n_max, field, &mut cases)?,
            "between-dg" => between_dg(rng, n_max, field, &mut cases)?,
            "between-dfs" => between_dfs(rng, n_max, field, &mut cases)?,
            "bc-decomposition" => {
                let n = dim(rng, 1, n_max.min(8));
                let [v, w] = pair(rng, n, field);
                let q = w.dim();
                let head = w.basis() * unitary(rng, q, field);
                let tail = w.complement().basis() * unitary(rng, n - q, field);
                let mut beta = linalg::hcat(&head, &tail);
                for mut col in beta.column_iter_mut() {
                    col *= C64::new(rng.random_range(0.5..2.0), 0.0);
                }
                cases.push(Case {
                    check: Check::BcDecomposition,
                    subs: vec![v, w],
                    mats: vec![beta],
                    expect: super::Expect::Holds,
                });
            }
            "nonmetric-demos" => nonmetric(rng, trial, n_max, field, &mut cases)?,
            other => unreachable!("suite names are checked by run_suite: {other}"),
        }
    }
    Ok(cases)
}

fn triangle(rng: &mut impl Rng, n: usize, field: FieldTag, cases: &mut Vec<Case>) -> Result<()> {
    let [x, y, z] = triple(rng, n, field)?;
    for metric in MetricKind::ALL {
        cases.push(Case::holds(Check::Triangle { metric }, vec![x.clone(), y.clone(), z.clone()]));
    }
    Ok(())
}

fn separation(rng: &mut impl Rng, n_max: usize, field: FieldTag, cases: &mut Vec<Case>) -> Result<()> {
    let n = dim(rng, 1, n_max);
    let [v, w] = match rng.random_range(0..4) {
        0 => [any(rng, n, field), any(rng, n, field)],
        1 => {
            let w = any(rng, n, field);
            [sub(rng, &w, 0), w]
        }
        2 => {
            let v = any(rng, n, field);
            let w = rebasis(rng, &v);
            [v, w]
        }
        _ => {
            let v = any(rng, n, field);
            let w = sub(rng, &v, 0);
            [v, w]
        }
    };
    for metric in MetricKind::ALL {
        cases.push(Case::holds(Check::Separation { metric }, vec![v.clone(), w.clone()]));
    }
    Ok(())
}

fn monotonicity(rng: &mut impl Rng, n_max: usize, field: FieldTag, cases: &mut Vec<Case>) -> Result<()> {
    let n = dim(rng, 1, n_max);
    let [v, w] = pair(rng, n, field);
    let (v1, w1) = (sub(rng, &v, 0), sub(rng, &w, 0));
    for metric in MetricKind::ALL {
        cases.push(Case::holds(Check::Monotone { metric }, vec![v1.clone(), v.clone(), w1.clone(), w.clone()]));
    }

    // Equality conditions: one planted positive and one random subspace.
    let p = dim(rng, 0, n);
    let v = random_subspace(rng, n, p, field);
    let q = dim(rng, p, n);
    let w = random_subspace(rng, n, q, field);
    let image = w.image_of(&v)?;
    let planted_target = image.direct_sum(&sub(rng, &w.minus(&image)?, 0))?;
    let random_target = sub(rng, &w, 0);

    let q2 = dim(rng, 0, n);
    let w2 = random_subspace(rng, n, q2, field);
    let x = sub(rng, &w2, 0);
    let j = dim(rng, 0, (n - x.dim()).min(q2 - x.dim()));
    let v_sub = random_orthogonal_to(rng, &x, j);
    let v2 = v_sub.direct_sum(&x)?;
    let v3 = any(rng, n, field);
    let v3_sub = sub(rng, &v3, 0);

    for (target, source) in [
        (EqualityKind::GeodesicTarget, EqualityKind::GeodesicSource),
        (EqualityKind::FubiniStudyTarget, EqualityKind::FubiniStudySource),
    ] {
        for s in [&planted_target, &random_target] {
            cases.push(Case::holds(Check::EqualityPredicate { which: target }, vec![v.clone(), w.clone(), s.clone()]));
        }
        cases.push(Case::holds(
            Check::EqualityPredicate { which: source },
            vec![v2.clone(), w2.clone(), v_sub.clone()],
        ));
        cases.push(Case::holds(
            Check::EqualityPredicate { which: source },
            vec![v3.clone(), w2.clone(), v3_sub.clone()],
        ));
    }
    Ok(())
}

fn geodesics(rng: &mut impl Rng, n_max: usize, field: FieldTag, cases: &mut Vec<Case>) -> Result<()> {
    let n = dim(rng, 1, n_max);
    let p = dim(rng, 0, n);
    let [v, w] = if rng.random_bool(PLANTED) {
        if rng.random_bool(0.5) || 2 * p > n {
            let k = dim(rng, p, n);
            let w = random_subspace(rng, n, k, field);
            [random_subspace_of(rng, &w, p), w]
        } else {
            let v = random_subspace(rng, n, p, field);
            let k = dim(rng, p, n - p);
            let w = random_orthogonal_to(rng, &v, k);
            [v, w]
        }
    } else {
        let q = dim(rng, p, n);
        [random_subspace(rng, n, p, field), random_subspace(rng, n, q, field)]
    };
    let vw = vec![v.clone(), w.clone()];
    for topology in [Topology::Backward, Topology::Forward] {
        cases.push(Case::holds(Check::GeodesicEndpoints { topology }, vw.clone()));
    }
    cases.push(Case::holds(Check::GeodesicLength, vw.clone()));
    cases.push(Case::holds(Check::GeodesicEstimate { samples: ESTIMATOR_SAMPLES }, vw.clone()));
    let wv = vec![w.clone(), v.clone()];
    for metric in path_metrics() {
        cases.push(Case::holds(Check::IntrinsicDistance { metric }, vw.clone()));
        cases.push(Case::holds(Check::IntrinsicDistance { metric }, wv.clone()));
    }

    let path = type1_path(&v, &w, MetricKind::Geodesic, Topology::Backward)?;
    for i in 0..PERTURBATIONS + PERTURBATIONS / 5 {
        let u = if rng.random_bool(PLANTED) {
            let on_path = path.eval(rng.random_range(0.0..=1.0))?;
            let eps = [0.0, 1e-6, 1e-3][rng.random_range(0..3)];
            perturb(rng, &on_path, eps)?
        } else {
            any(rng, n, field)
        };
        // the first PERTURBATIONS go from V to W, the rest back
        let (a, b) = if i < PERTURBATIONS { (&v, &w) } else { (&w, &v) };
        for metric in path_metrics() {
            cases.push(Case::holds(Check::Perturbation { metric }, vec![a.clone(), u.clone(), b.clone()]));
        }
    }
    Ok(())
}

fn generic_triple(rng: &mut impl Rng, n_max: usize, field: FieldTag) -> [Subspace; 3] {
    let n = dim(rng, 3, n_max.max(3));
    let mut draw = || {
        let k = dim(rng, 1, n - 1);
        random_subspace(rng, n, k, field)
    };
    [draw(), draw(), draw()]
}

fn between_dg(rng: &mut impl Rng, n_max: usize, field: FieldTag, cases: &mut Vec<Case>) -> Result<()> {
    let n = dim(rng, 3, n_max.max(3));
    let planted = |c| Check::BetweenGeodesic { planted: Some(c) };

    // i: r ≤ q < p, U ⊂ W
    let p = dim(rng, 2, n);
    let q = dim(rng, 1, p - 1);
    let (v, w) = (random_subspace(rng, n, p, field), random_subspace(rng, n, q, field));
    let k = dim(rng, 0, q - 1);
    let u = random_subspace_of(rng, &w, k);
    cases.push(Case::holds(planted(BetweenCase::I), vec![u, v, w]));

    // ii: r < p ≤ q, U ⊂ W, V ⊥ W
    let p = dim(rng, 1, n / 2);
    let v = random_subspace(rng, n, p, field);
    let k = dim(rng, p, n - p);
    let w = random_orthogonal_to(rng, &v, k);
    let k = dim(rng, 0, p - 1);
    let u = random_subspace_of(rng, &w, k);
    cases.push(Case::holds(planted(BetweenCase::II), vec![u, v, w]));

    // iii: a point of the geodesic from V to its projection subspace in W,
    // plus part of the rest of W
    let p = dim(rng, 1, n - 1);
    let q = dim(rng, p, n - 1);
    let (v, w) = (random_subspace(rng, n, p, field), random_subspace(rng, n, q, field));
    let w_proj = w.projection_subspace(&v)?;
    let mid = crate::geodesic::grassmannian_geodesic(&v, &w_proj)?.eval(rng.random_range(0.05..0.95))?;
    let tail = sub(rng, &w.minus(&w_proj)?, 0);
    let u = mid.direct_sum(&tail)?;
    cases.push(Case::holds(planted(BetweenCase::III), vec![u, v, w]));

    let [u, v, w] = generic_triple(rng, n_max, field);
    cases.push(Case::holds(Check::BetweenGeodesic { planted: None }, vec![u, v, w]));
    Ok(())
}

/// `X ⊕ Y` with `X ≠ {0}` orthogonal to `w`, so that `V ∂⊥ W`.
fn partially_orthogonal(rng: &mut impl Rng, w: &Subspace, max_dim: usize) -> Result<Subspace> {
    let n = w.ambient();
    let a = dim(rng, 1, (n - w.dim()).min(max_dim));
    let x = random_orthogonal_to(rng, w, a);
    let k = dim(rng, 0, max_dim - a);
    let y = random_orthogonal_to(rng, &x, k);
    x.direct_sum(&y)
}

fn between_dfs(rng: &mut impl Rng, n_max: usize, field: FieldTag, cases: &mut Vec<Case>) -> Result<()> {
    let n = dim(rng, 3, n_max.max(3));
    let planted = |c| Check::BetweenFubiniStudy { planted: Some(c) };

    // i: U ⊂ W containing P_W(V), or any U ⊂ W when V ∂⊥ W
    let (u, v, w) = if rng.random_bool(0.5) {
        let p = dim(rng, 1, n - 2);
        let q = dim(rng, p + 1, n - 1);
        let (v, w) = (random_subspace(rng, n, p, field), random_subspace(rng, n, q, field));
        let image = w.image_of(&v)?;
        let k = dim(rng, 0, q - p - 1);
        let extra = random_subspace_of(rng, &w.minus(&image)?, k);
        (image.direct_sum(&extra)?, v, w)
    } else {
        let k = dim(rng, 1, n - 1);
        let w = random_subspace(rng, n, k, field);
        let v = partially_orthogonal(rng, &w, n - 1)?;
        let k = dim(rng, 0, w.dim() - 1);
        let u = random_subspace_of(rng, &w, k);
        (u, v, w)
    };
    cases.push(Case::holds(planted(BetweenCase::I), vec![u, v, w]));

    // ii: V ⊂ U with V⊥ ∩ U ⊂ W, or any U ⊃ V when V ∂⊥ W
    let (u, v, w) = if rng.random_bool(0.5) {
        let p = dim(rng, 1, n - 2);
        let q = dim(rng, p + 1, n - 1);
        let (v, w) = (random_subspace(rng, n, p, field), random_subspace(rng, n, q, field));
        let k = dim(rng, 1, q - p);
        let x = random_subspace_of(rng, &w.minus(&v)?, k);
        (v.direct_sum(&x)?, v, w)
    } else {
        let k = dim(rng, 1, n - 2);
        let w = random_subspace(rng, n, k, field);
        let v = partially_orthogonal(rng, &w, n - 1)?;
        let k = dim(rng, 1, n - v.dim());
        let z = random_orthogonal_to(rng, &v, k);
        (v.direct_sum(&z)?, v, w)
    };
    cases.push(Case::holds(planted(BetweenCase::II), vec![u, v, w]));

    // iii: V = K ⊕ R, U = J ⊕ S, W = L ⊕ T with R ⊂ S ⊂ T and J a
    // between-line of the lines K, L ⊥ T
    let q = dim(rng, 1, n - 1);
    let p = dim(rng, 1, q);
    let r = dim(rng, p, q);
    let t = random_subspace(rng, n, q - 1, field);
    let r_sub = random_subspace_of(rng, &t, p - 1);
    let s = r_sub.direct_sum(&random_subspace_of(rng, &t.minus(&r_sub)?, r - p))?;
    let t_perp = t.complement();
    let k = random_subspace_of(rng, &t_perp, 1);
    let l = random_subspace_of(rng, &t_perp, 1);
    let j = line_between_construct(&k, &l, rng.random_range(0.2..2.0), rng.random_range(0.2..2.0))?;
    let (v, u, w) = (k.direct_sum(&r_sub)?, j.direct_sum(&s)?, l.direct_sum(&t)?);
    cases.push(Case::holds(planted(BetweenCase::III), vec![u, v, w]));

    let [u, v, w] = generic_triple(rng, n_max, field);
    cases.push(Case::holds(Check::BetweenFubiniStudy { planted: None }, vec![u, v, w]));
    Ok(())
}

fn real_line(angle: f64) -> Result<Subspace> {
    Subspace::from_real_columns(2, &[vec![angle.cos(), angle.sin()]])
}

fn nonmetric(rng: &mut impl Rng, trial: u64, n_max: usize, field: FieldTag, cases: &mut Vec<Case>) -> Result<()> {
    let naive = Check::LegacyTriangle {
        metric: LegacyKind::NaiveProjectionFrobenius,
    };
    let martin = Check::LegacyTriangle {
        metric: LegacyKind::Martin,
    };
    if trial == 0 && field == FieldTag::Real {
        // two lines and the plane they span
        let k = Subspace::from_real_columns(3, &[vec![1.0, 0.0, 0.0]])?;
        let l = Subspace::from_real_columns(3, &[vec![0.0, 1.0, 0.0]])?;
        let plane = Subspace::from_real_columns(3, &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]])?;
        cases.push(Case::search(naive, vec![k, plane, l]));
        // three lines of the plane at 0, 0.7 and 1.4 rad
        cases.push(Case::search(martin, vec![real_line(0.0)?, real_line(0.7)?, real_line(1.4)?]));
    }

    let n = dim(rng, 2, n_max.max(2));
    let k = random_subspace(rng, n, 1, field);
    let l = random_subspace(rng, n, 1, field);
    let plane = k.direct_sum(&l.minus(&k)?)?;
    cases.push(Case::search(naive, vec![k, plane, l]));

    if field == FieldTag::Real {
        let a = rng.random_range(0.0..std::f64::consts::PI);
        let step = rng.random_range(0.3..0.75);
        cases.push(Case::search(martin, vec![real_line(a)?, real_line(a + step)?, real_line(a + 2.0 * step)?]));
    }

    let [x, y, z] = triple(rng, n_max, field)?;
    for metric in LegacyKind::ALL {
        let check = Check::LegacyTriangle { metric };
        let subs = vec![x.clone(), y.clone(), z.clone()];
        cases.push(match metric.satisfies_triangle() {
            Some(true) => Case::holds(check, subs),
            _ => Case::search(check, subs),
        });
    }
    Ok(())
}

fn found_with(found: &[Finding], pred: impl Fn(&Check) -> bool, min_slack: f64) -> bool {
    found.iter().any(|f| pred(&f.fixture.check) && f.slack > min_slack)
}

pub(crate) fn requirements(suite: &str, found: &[Finding]) -> Vec<Requirement> {
    match suite {
        "duality" => vec![Requirement {
            description: "an l2 metric pair with d(V,W) != d(W^perp,V^perp)".into(),
            found: found_with(
                found,
                |c| matches!(c, Check::Duality { metric } if metric.family() == Family::L2),
                super::checks::TRIANGLE_TOL,
            ),
        }],
        "nonmetric-demos" => [LegacyKind::NaiveProjectionFrobenius, LegacyKind::Martin]
            .into_iter()
            .map(|kind| Requirement {
                description: format!("triangle counterexample for {kind} with slack > {REQUIRED_SLACK}"),
                found: found_with(
                    found,
                    |c| matches!(c, Check::LegacyTriangle { metric } if *metric == kind),
                    REQUIRED_SLACK,
                ),
            })
            .collect(),
        _ => Vec::new(),
    }
}
