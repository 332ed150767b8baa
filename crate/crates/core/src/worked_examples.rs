//! Three small worked examples with closed-form answers, recomputed and
//! compared against those answers.
//!
//! * `ℝ⁵`: a plane tilted against a coordinate 3-space (principal angles
//!   30° and 45°) and its Binet–Cauchy coordinate decomposition.
//! * `ℝ⁵`: a plane and a 3-space given by non-orthonormal bases, through
//!   Gram determinants and through blades.
//! * `ℂ³`: a line and a plane, and the same pair realified in `ℝ⁶`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

use serde::Serialize;

use crate::angle::{angle, angle_via_contraction, angle_via_gram, bc_coordinate_decomposition, projection_factor};
use crate::error::Result;
use crate::exterior::{Blade, Multivector};
use crate::linalg::{complex_matrix_from_columns, real_matrix_from_columns, CMatrix, C64};
use crate::metrics::{asym_distance, MetricKind};
use crate::principal::principal_decomposition;
use crate::subspace::{FieldTag, Subspace, ToleranceProfile};

#[derive(Debug, Clone, Serialize)]
pub struct ExampleCheck {
    pub example: &'static str,
    pub quantity: String,
    pub computed: f64,
    pub expected: f64,
    /// `true` when the value must match bit for bit.
    pub exact: bool,
    pub pass: bool,
}

impl ExampleCheck {
    pub fn error(&self) -> f64 {
        (self.computed - self.expected).abs()
    }
}

struct Checks {
    tol: f64,
    example: &'static str,
    out: Vec<ExampleCheck>,
}

impl Checks {
    fn push(&mut self, quantity: impl Into<String>, computed: f64, expected: f64) {
        let pass = (computed - expected).abs() <= self.tol;
        self.out.push(ExampleCheck {
            example: self.example,
            quantity: quantity.into(),
            computed,
            expected,
            exact: false,
            pass,
        });
    }

    fn push_exact(&mut self, quantity: impl Into<String>, computed: f64, expected: f64) {
        self.out.push(ExampleCheck {
            example: self.example,
            quantity: quantity.into(),
            computed,
            expected,
            exact: true,
            pass: computed == expected,
        });
    }
}

/// `V = span{(√3f₁ + f₄)/2, (f₂ + f₅)/√2}`, `W = span{f₁, f₂, f₃}` in `ℝ⁵`.
pub fn tilted_plane_pair() -> (Subspace, Subspace) {
    let (s3, s2) = (3f64.sqrt(), 2f64.sqrt());
    let v = Subspace::from_real_columns(5, &[vec![s3 / 2.0, 0.0, 0.0, 0.5, 0.0], vec![0.0, 1.0 / s2, 0.0, 0.0, 1.0 / s2]])
        .expect("valid example");
    let w = Subspace::from_real_columns(5, &[vec![1.0, 0.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0, 0.0], vec![0.0, 0.0, 1.0, 0.0, 0.0]])
        .expect("valid example");
    (v, w)
}

/// Raw bases `(v₁, v₂)` and `(w₁, w₂, w₃)` in `ℝ⁵`:
/// `v₁ = 2u₁ − u₂`, `v₂ = 2u₁ + u₃`, `w₁ = u₂ + u₅`, `w₂ = u₃ − u₄`, `w₃ = u₄`.
pub fn gram_bases() -> (CMatrix, CMatrix) {
    let v = real_matrix_from_columns(5, &[vec![2.0, -1.0, 0.0, 0.0, 0.0], vec![2.0, 0.0, 1.0, 0.0, 0.0]]);
    let w = real_matrix_from_columns(
        5,
        &[vec![0.0, 1.0, 0.0, 0.0, 1.0], vec![0.0, 0.0, 1.0, -1.0, 0.0], vec![0.0, 0.0, 0.0, 1.0, 0.0]],
    );
    (v, w)
}

/// Raw bases `v = (1, 0, i)` and `w₁ = (1, 0, 0)`, `w₂ = (i, 1, 0)` in `ℂ³`.
pub fn complex_bases() -> (CMatrix, CMatrix) {
    let (o, z, i) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 1.0));
    let v = complex_matrix_from_columns(3, &[vec![o, z, i]]);
    let w = complex_matrix_from_columns(3, &[vec![o, z, z], vec![i, o, z]]);
    (v, w)
}

/// Recomputes every quantity of the three examples; a check passes when
/// it is within `tol` of its closed form (or equal, for exact checks).
pub fn run_worked_examples(tol: f64) -> Result<Vec<ExampleCheck>> {
    let mut out = Vec::new();
    out.extend(tilted_plane(tol)?);
    out.extend(gram_and_blades(tol)?);
    out.extend(complex_line(tol)?);
    Ok(out)
}

fn tilted_plane(tol: f64) -> Result<Vec<ExampleCheck>> {
    let mut c = Checks {
        tol,
        example: "tilted plane in R^5",
        out: Vec::new(),
    };
    let (v, w) = tilted_plane_pair();
    let pd = principal_decomposition(&v, &w)?;
    c.push("theta_1", pd.angles()[0], FRAC_PI_6);
    c.push("theta_2", pd.angles()[1], FRAC_PI_4);
    let cos = 6f64.sqrt() / 4.0;
    c.push("Theta(V,W)", angle(&v, &w)?.theta, cos.acos());
    c.push_exact("Theta(W,V)", angle(&w, &v)?.theta, FRAC_PI_2);
    c.push("pi(V,W)", projection_factor(&v, &w)?, cos);
    c.push("d_BC(V,W)", asym_distance(MetricKind::BinetCauchy, &v, &w)?, (5.0f64 / 8.0).sqrt());
    let bc = bc_coordinate_decomposition(&v, &w, &CMatrix::identity(5, 5))?;
    let expected = [
        ([0, 4], cos),
        ([1, 3], 2f64.sqrt() / 4.0),
        ([3, 4], 2f64.sqrt() / 4.0),
        ([0, 3], 0.0),
        ([1, 4], 0.0),
        ([2, 3], 0.0),
        ([2, 4], 0.0),
    ];
    for (idx, value) in expected {
        let factor = bc
            .terms
            .iter()
            .find(|t| t.indices == idx)
            .map(|t| t.factor)
            .unwrap_or(f64::NAN);
        c.push(format!("pi(V,[f{} f{}])", idx[0] + 1, idx[1] + 1), factor, value);
    }
    c.push("sum of squared factors", bc.total, 5.0 / 8.0);
    Ok(c.out)
}

fn gram_and_blades(tol: f64) -> Result<Vec<ExampleCheck>> {
    let mut c = Checks {
        tol,
        example: "raw bases in R^5",
        out: Vec::new(),
    };
    let (bv, bw) = gram_bases();
    let gram = |x: &CMatrix, y: &CMatrix| x.adjoint() * y;
    let (ga, gb, gc) = (gram(&bv, &bv), gram(&bw, &bw), gram(&bw, &bv));
    let a_expected = [[5.0, 4.0], [4.0, 5.0]];
    let b_expected = [[2.0, 0.0, 0.0], [0.0, 2.0, -1.0], [0.0, -1.0, 1.0]];
    let c_expected = [[-1.0, 0.0], [0.0, 1.0], [0.0, 0.0]];
    for (name, m, e) in [
        ("A", &ga, a_expected.iter().map(|r| r.to_vec()).collect::<Vec<_>>()),
        ("B", &gb, b_expected.iter().map(|r| r.to_vec()).collect()),
        ("C", &gc, c_expected.iter().map(|r| r.to_vec()).collect()),
    ] {
        let worst = (0..m.nrows())
            .flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
            .map(|(i, j)| (m[(i, j)] - C64::new(e[i][j], 0.0)).norm())
            .fold(0.0, f64::max);
        c.push(format!("Gram matrix {name} (max entry error)"), worst, 0.0);
    }
    let cos = 1.0 / (3.0 * 2f64.sqrt());
    let g = angle_via_gram(&bv, &bw, FieldTag::Real)?;
    c.push("cos Theta(V,W), Gram route", g.cos_theta, cos);
    c.push_exact("Theta(W,V), Gram route", angle_via_gram(&bw, &bv, FieldTag::Real)?.theta, FRAC_PI_2);

    let a = Blade::from_vectors(&bv, FieldTag::Real)?;
    let b = Blade::from_vectors(&bw, FieldTag::Real)?;
    let am = a.multivector();
    c.push("A coefficient u12", am.coefficient(&[0, 1]).re, 2.0);
    c.push("A coefficient u13", am.coefficient(&[0, 2]).re, 2.0);
    c.push("A coefficient u23", am.coefficient(&[1, 2]).re, -1.0);
    c.push("B coefficient u234", b.multivector().coefficient(&[1, 2, 3]).re, 1.0);
    c.push("B coefficient u345", b.multivector().coefficient(&[2, 3, 4]).re, 1.0);
    c.push("|A|", a.norm(), 3.0);
    c.push("|B|", b.norm(), 2f64.sqrt());
    let ab = am.contraction(b.multivector())?;
    c.push("A contracted on B, coefficient u4", ab.coefficient(&[3]).re, -1.0);
    let u4 = Multivector::basis_blade(5, FieldTag::Real, &[3])?;
    c.push("|A contracted on B + u4|", ab.add(&u4)?.norm(), 0.0);
    c.push("|B contracted on A|", b.multivector().contraction(am)?.norm(), 0.0);
    let e = angle_via_contraction(&a, &b)?;
    c.push("cos Theta(V,W), exterior route", e.cos_theta, cos);
    c.push_exact("Theta(W,V), exterior route", angle_via_contraction(&b, &a)?.theta, FRAC_PI_2);
    Ok(c.out)
}

fn complex_line(tol: f64) -> Result<Vec<ExampleCheck>> {
    let mut c = Checks {
        tol,
        example: "line and plane in C^3",
        out: Vec::new(),
    };
    let (bv, bw) = complex_bases();
    let g = angle_via_gram(&bv, &bw, FieldTag::Complex)?;
    c.push("Theta(V,W)", g.theta, FRAC_PI_4);
    let cos = 2f64.sqrt() / 2.0;
    c.push("cos Theta(V,W)", g.cos_theta, cos);
    let tol_profile = ToleranceProfile::default();
    let v = Subspace::from_spanning(&bv, FieldTag::Complex, &tol_profile)?;
    let w = Subspace::from_spanning(&bw, FieldTag::Complex, &tol_profile)?;
    c.push("Theta(V,W), principal route", angle(&v, &w)?.theta, FRAC_PI_4);
    let (vr, wr) = (v.realify()?, w.realify()?);
    c.push("Theta(V_R,W_R)", angle(&vr, &wr)?.theta, FRAC_PI_3);
    c.push("Theta(V_R,W_R), Gram route", angle_via_gram(vr.basis(), wr.basis(), FieldTag::Real)?.theta, FRAC_PI_3);
    c.push("pi(V,W)", projection_factor(&v, &w)?, 0.5);
    c.push("pi(V_R,W_R)", projection_factor(&vr, &wr)?, 0.5);
    Ok(c.out)
}
