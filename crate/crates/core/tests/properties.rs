use proptest::prelude::*;

use subspace_geometry::angle::{angle, angle_via, Route};
use subspace_geometry::exterior::Multivector;
use subspace_geometry::harness::random::{random_subspace, rng_for};
use subspace_geometry::io::SubspaceFile;
use subspace_geometry::metrics::{asym_distance, diameter, MetricKind};
use subspace_geometry::principal::principal_decomposition;
use subspace_geometry::{CMatrix, FieldTag, Subspace, ToleranceProfile, C64};

fn field_strategy() -> impl Strategy<Value = FieldTag> {
    prop_oneof![Just(FieldTag::Real), Just(FieldTag::Complex)]
}

/// `(n, p, q, field, seed)` with `p, q ≤ n`.
fn pair_shape(n_max: usize) -> impl Strategy<Value = (usize, usize, usize, FieldTag, u64)> {
    (1..=n_max)
        .prop_flat_map(|n| (Just(n), 0..=n, 0..=n, field_strategy(), any::<u64>()))
}

fn pair(n: usize, p: usize, q: usize, field: FieldTag, seed: u64) -> (Subspace, Subspace) {
    let mut rng = rng_for(seed, 0);
    (random_subspace(&mut rng, n, p, field), random_subspace(&mut rng, n, q, field))
}

fn max_entry(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

fn random_multivector(n: usize, field: FieldTag, grade: usize, seed: u64) -> Multivector {
    let mut rng = rng_for(seed, 1);
    let mut out = Multivector::zero(n, field).unwrap();
    let s = random_subspace(&mut rng, n, grade.min(n), field);
    for j in 0..s.dim() {
        let col = s.basis().column(j).into_owned();
        let v = Multivector::from_vector(&col, field).unwrap();
        out = if j == 0 { v } else { out.wedge(&v).unwrap() };
    }
    let extra = random_subspace(&mut rng, n, 1, field);
    let w = Multivector::from_vector(&extra.basis().column(0).into_owned(), field).unwrap();
    if grade == 1 {
        out.add(&w).unwrap()
    } else {
        out
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn basis_is_orthonormal((n, p, _q, field, seed) in pair_shape(9)) {
        let (v, _) = pair(n, p, 0, field, seed);
        let b = v.basis();
        let err = max_entry(&(b.adjoint() * b - CMatrix::identity(p, p)));
        prop_assert!(err <= 1e-12, "err {err}");
        prop_assert_eq!(v.dim(), p);
    }

    #[test]
    fn angles_are_symmetric_sorted_and_match_trace((n, p, q, field, seed) in pair_shape(9)) {
        let (v, w) = pair(n, p, q, field, seed);
        let a = principal_decomposition(&v, &w).unwrap();
        let b = principal_decomposition(&w, &v).unwrap();
        prop_assert_eq!(a.angles().len(), p.min(q));
        for (x, y) in a.angles().iter().zip(b.angles()) {
            prop_assert!((x - y).abs() <= 1e-10, "{x} vs {y}");
        }
        for t in a.angles().windows(2) {
            prop_assert!(t[0] <= t[1]);
        }
        prop_assert!(a.angles().iter().all(|t| (0.0..=std::f64::consts::FRAC_PI_2).contains(t)));
        // Σ cos²θᵢ = ‖V*W‖²_F
        let trace: f64 = a.cosines().iter().map(|c| c * c).sum();
        let frob = (v.basis().adjoint() * w.basis()).norm_squared();
        prop_assert!((trace - frob).abs() <= 1e-10, "{trace} vs {frob}");
    }

    #[test]
    fn complement_is_orthogonal_and_fills((n, p, _q, field, seed) in pair_shape(9)) {
        let (v, _) = pair(n, p, 0, field, seed);
        let c = v.complement();
        prop_assert_eq!(c.dim(), n - p);
        prop_assert!(max_entry(&(v.basis().adjoint() * c.basis())) <= 1e-12);
        let sum = v.projector() + c.projector();
        prop_assert!(max_entry(&(sum - CMatrix::identity(n, n))) <= 1e-12);
    }

    #[test]
    fn complement_keeps_nonzero_angles((n, p, q, field, seed) in pair_shape(8)) {
        let (v, w) = pair(n, p, q, field, seed);
        let (vc, wc) = (v.complement(), w.complement());
        let nonzero = |s: &[f64]| {
            let mut out: Vec<f64> = s.iter().copied().filter(|t| *t > 1e-6).collect();
            out.sort_by(f64::total_cmp);
            out
        };
        let a = nonzero(principal_decomposition(&v, &w).unwrap().angles());
        let b = nonzero(principal_decomposition(&wc, &vc).unwrap().angles());
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-9, "{x} vs {y}");
        }
    }

    #[test]
    fn wedge_is_graded_antisymmetric_and_associative(
        n in 1usize..=6,
        j in 0usize..=3,
        k in 0usize..=3,
        l in 0usize..=2,
        field in field_strategy(),
        seed in any::<u64>(),
    ) {
        let a = random_multivector(n, field, j, seed);
        let b = random_multivector(n, field, k, seed ^ 0x9e37);
        let c = random_multivector(n, field, l, seed ^ 0x7f4a);
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert!(left.distance_max(&right).unwrap() <= 1e-12);
        if let (Some(ga), Some(gb)) = (a.grade(), b.grade()) {
            let sign = if (ga * gb) % 2 == 0 { 1.0 } else { -1.0 };
            let ab = a.wedge(&b).unwrap();
            let ba = b.wedge(&a).unwrap().scale(C64::new(sign, 0.0));
            prop_assert!(ab.distance_max(&ba).unwrap() <= 1e-12);
        }
        if j == 1 {
            prop_assert!(a.wedge(&a).unwrap().norm() <= 1e-12);
        }
    }

    #[test]
    fn oriented_triangle_inequality(
        n in 1usize..=6,
        dims in (0usize..=6, 0usize..=6, 0usize..=6),
        field in field_strategy(),
        seed in any::<u64>(),
    ) {
        let (p, q, r) = (dims.0.min(n), dims.1.min(n), dims.2.min(n));
        let mut rng = rng_for(seed, 2);
        let x = random_subspace(&mut rng, n, p, field);
        let y = random_subspace(&mut rng, n, q, field);
        let z = random_subspace(&mut rng, n, r, field);
        for kind in MetricKind::ALL {
            let xz = asym_distance(kind, &x, &z).unwrap();
            let xy = asym_distance(kind, &x, &y).unwrap();
            let yz = asym_distance(kind, &y, &z).unwrap();
            prop_assert!(xz <= xy + yz + 1e-9, "{kind}: {xz} > {xy} + {yz}");
        }
    }

    #[test]
    fn distances_lie_in_range_and_vanish_on_containment((n, p, q, field, seed) in pair_shape(8)) {
        let (v, w) = pair(n, p, q, field, seed);
        for kind in MetricKind::ALL {
            let d = asym_distance(kind, &v, &w).unwrap();
            prop_assert!(d >= 0.0 && d <= diameter(kind, p) + 1e-12, "{kind}: {d}");
            if p > q {
                prop_assert_eq!(d, diameter(kind, p));
            }
            let full = Subspace::full(n, field);
            prop_assert!(asym_distance(kind, &v, &full).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn subspace_file_round_trip((n, p, _q, field, seed) in pair_shape(8)) {
        let (v, _) = pair(n, p, 0, field, seed);
        let text = SubspaceFile::from_subspace(&v).to_json();
        let back = SubspaceFile::parse(&text).unwrap().to_subspace(&ToleranceProfile::default()).unwrap();
        prop_assert_eq!(back.dim(), p);
        prop_assert_eq!(back.field(), field);
        prop_assert_eq!(v.intersection_dim(&back).unwrap(), p);
    }

    #[test]
    fn angle_routes_agree((n, p, q, field, seed) in pair_shape(7)) {
        let (v, w) = pair(n, p, q, field, seed);
        let base = angle(&v, &w).unwrap();
        for route in Route::ALL {
            let r = angle_via(route, &v, &w).unwrap();
            prop_assert!((r.theta - base.theta).abs() <= 1e-9, "{route:?}: {} vs {}", r.theta, base.theta);
        }
    }

    #[test]
    fn projection_subspace_keeps_angles((n, p, q, field, seed) in pair_shape(8)) {
        let (v, w) = pair(n, p, q, field, seed);
        let wp = w.projection_subspace(&v).unwrap();
        prop_assert_eq!(wp.dim(), p.min(q));
        prop_assert!(w.contains(&wp).unwrap());
        let a = principal_decomposition(&v, &w).unwrap();
        let b = principal_decomposition(&v, &wp).unwrap();
        for (x, y) in a.angles().iter().zip(b.angles()) {
            prop_assert!((x - y).abs() <= 1e-9, "{x} vs {y}");
        }
    }
}
