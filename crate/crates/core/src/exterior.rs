//! Exterior algebra `⋀𝔽ⁿ` with dense coefficient maps.
//!
//! A basis blade `e_I = e_{i₁} ∧ … ∧ e_{i_k}` (`i₁ < … < i_k`) is keyed by
//! the bitset of `I`, so the ambient dimension is capped at 32. The inner
//! product is conjugate-linear in its first argument, and the contraction
//! is its adjoint: `⟨C, A⌟B⟩ = ⟨A ∧ C, B⟩`.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, C64, ZERO};
use crate::subspace::{FieldTag, Subspace};

pub const MAX_AMBIENT: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    ambient: usize,
    field: FieldTag,
    terms: BTreeMap<u32, C64>,
}

/// Sign of `e_I ∧ e_J` relative to `e_{I∪J}`, for disjoint `I`, `J`.
fn wedge_sign(i: u32, j: u32) -> f64 {
    let mut swaps = 0u32;
    let mut rest = j;
    while rest != 0 {
        let b = rest.trailing_zeros();
        rest &= rest - 1;
        // elements of I above b must pass over it
        swaps += (i >> b >> 1).count_ones();
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn indices_to_mask(indices: &[usize]) -> u32 {
    indices.iter().fold(0u32, |m, &i| m | (1u32 << i))
}

pub fn mask_to_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask & (1u32 << i) != 0).collect()
}

fn check_ambient(ambient: usize) -> Result<()> {
    if ambient > MAX_AMBIENT {
        Err(Error::RepresentationLimit(ambient))
    } else {
        Ok(())
    }
}

impl Multivector {
    pub fn zero(ambient: usize, field: FieldTag) -> Result<Self> {
        check_ambient(ambient)?;
        Ok(Multivector {
            ambient,
            field,
            terms: BTreeMap::new(),
        })
    }

    pub fn scalar(ambient: usize, field: FieldTag, value: C64) -> Result<Self> {
        let mut m = Self::zero(ambient, field)?;
        m.add_term(0, value);
        Ok(m)
    }

    /// `e_I` for 0-based indices in increasing order.
    pub fn basis_blade(ambient: usize, field: FieldTag, indices: &[usize]) -> Result<Self> {
        check_ambient(ambient)?;
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i >= ambient) {
            return Err(Error::InvalidArgument(format!("bad blade indices {indices:?}")));
        }
        let mut m = Self::zero(ambient, field)?;
        m.add_term(indices_to_mask(indices), C64::new(1.0, 0.0));
        Ok(m)
    }

    pub fn from_vector(v: &CVector, field: FieldTag) -> Result<Self> {
        let mut m = Self::zero(v.len(), field)?;
        for (i, &c) in v.iter().enumerate() {
            m.add_term(1u32 << i, c);
        }
        Ok(m)
    }

    /// Builds a multivector from `(indices, coefficient)` pairs.
    pub fn from_terms(ambient: usize, field: FieldTag, terms: &[(&[usize], C64)]) -> Result<Self> {
        let mut m = Self::zero(ambient, field)?;
        for (idx, c) in terms {
            let b = Self::basis_blade(ambient, field, idx)?;
            m = m.add(&b.scale(*c))?;
        }
        Ok(m)
    }

    fn add_term(&mut self, key: u32, value: C64) {
        if value == ZERO {
            return;
        }
        let entry = self.terms.entry(key).or_insert(ZERO);
        *entry += value;
        if *entry == ZERO {
            self.terms.remove(&key);
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, C64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn coefficient(&self, indices: &[usize]) -> C64 {
        self.terms.get(&indices_to_mask(indices)).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The grade if every term has the same grade (`Some(0)` for zero).
    pub fn grade(&self) -> Option<usize> {
        let mut grades = self.terms.keys().map(|k| k.count_ones() as usize);
        let first = grades.next().unwrap_or(0);
        grades.all(|g| g == first).then_some(first)
    }

    pub fn grade_part(&self, k: usize) -> Multivector {
        Multivector {
            ambient: self.ambient,
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(key, _)| key.count_ones() as usize == k)
                .map(|(&key, &v)| (key, v))
                .collect(),
        }
    }

    fn check(&self, other: &Multivector) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn add(&self, other: &Multivector) -> Result<Multivector> {
        self.check(other)?;
        let mut out = self.clone();
        for (&k, &v) in &other.terms {
            out.add_term(k, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Multivector) -> Result<Multivector> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: C64) -> Multivector {
        let mut out = Multivector {
            ambient: self.ambient,
            field: self.field,
            terms: BTreeMap::new(),
        };
        for (&k, &v) in &self.terms {
            out.add_term(k, v * s);
        }
        out
    }

    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        self.check(other)?;
        let mut out = Multivector {
            ambient: self.ambient,
            field: self.field,
            terms: BTreeMap::new(),
        };
        for (&i, &a) in &self.terms {
            for (&j, &b) in &other.terms {
                if i & j != 0 {
                    continue;
                }
                out.add_term(i | j, a * b * wedge_sign(i, j));
            }
        }
        Ok(out)
    }

    /// `⟨A, B⟩ = Σ conj(a_I) b_I`.
    pub fn inner(&self, other: &Multivector) -> Result<C64> {
        self.check(other)?;
        Ok(self
            .terms
            .iter()
            .filter_map(|(k, a)| other.terms.get(k).map(|b| a.conj() * b))
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Left contraction `A⌟B = Σ conj(a_I) b_J σ(I, J∖I) e_{J∖I}` over
    /// `I ⊆ J`, where `e_J = σ(I, J∖I) e_I ∧ e_{J∖I}`.
    pub fn contraction(&self, other: &Multivector) -> Result<Multivector> {
        self.check(other)?;
        let mut out = Multivector {
            ambient: self.ambient,
            field: self.field,
            terms: BTreeMap::new(),
        };
        for (&i, &a) in &self.terms {
            for (&j, &b) in &other.terms {
                if i & j != i {
                    continue;
                }
                let rest = j & !i;
                out.add_term(rest, a.conj() * b * wedge_sign(i, rest));
            }
        }
        Ok(out)
    }

    /// Maximum coefficient difference.
    pub fn distance_max(&self, other: &Multivector) -> Result<f64> {
        let d = self.sub(other)?;
        Ok(d.terms.values().fold(0.0_f64, |m, c| m.max(c.norm())))
    }
}

/// `P_W` extended to `⋀𝔽ⁿ`: `e_I ↦ P_W e_{i₁} ∧ … ∧ P_W e_{i_k}`.
pub fn project_multivector(w: &Subspace, a: &Multivector) -> Result<Multivector> {
    if w.ambient() != a.ambient() {
        return Err(Error::AmbientMismatch(w.ambient(), a.ambient()));
    }
    if w.field() != a.field() {
        return Err(Error::FieldMismatch(w.field(), a.field()));
    }
    let n = a.ambient();
    let proj = w.projector();
    let columns: Vec<Multivector> = (0..n)
        .map(|i| Multivector::from_vector(&proj.column(i).into_owned(), a.field()))
        .collect::<Result<_>>()?;
    let mut memo: HashMap<u32, Multivector> = HashMap::new();
    memo.insert(0, Multivector::scalar(n, a.field(), C64::new(1.0, 0.0))?);

    fn projected(key: u32, columns: &[Multivector], memo: &mut HashMap<u32, Multivector>) -> Result<Multivector> {
        if let Some(m) = memo.get(&key) {
            return Ok(m.clone());
        }
        let low = key.trailing_zeros() as usize;
        let rest = projected(key & (key - 1), columns, memo)?;
        let m = columns[low].wedge(&rest)?;
        memo.insert(key, m.clone());
        Ok(m)
    }

    let mut out = Multivector::zero(n, a.field())?;
    for (key, c) in a.terms() {
        let pi = projected(key, &columns, &mut memo)?;
        out = out.add(&pi.scale(c))?;
    }
    Ok(out)
}

/// A decomposable multivector `v₁ ∧ … ∧ v_p`.
#[derive(Debug, Clone)]
pub struct Blade {
    mv: Multivector,
    grade: usize,
    span: OnceLock<Subspace>,
}

impl PartialEq for Blade {
    fn eq(&self, other: &Self) -> bool {
        self.mv == other.mv && self.grade == other.grade
    }
}

impl Blade {
    /// Wedge of the columns of `vectors`, in order.
    pub fn from_vectors(vectors: &CMatrix, field: FieldTag) -> Result<Self> {
        let n = vectors.nrows();
        let mut mv = Multivector::scalar(n, field, C64::new(1.0, 0.0))?;
        for j in 0..vectors.ncols() {
            let v = Multivector::from_vector(&vectors.column(j).into_owned(), field)?;
            mv = mv.wedge(&v)?;
        }
        Ok(Blade {
            mv,
            grade: vectors.ncols(),
            span: OnceLock::new(),
        })
    }

    pub fn multivector(&self) -> &Multivector {
        &self.mv
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn norm(&self) -> f64 {
        self.mv.norm()
    }

    pub fn is_zero(&self) -> bool {
        self.mv.is_zero()
    }

    /// `[B] = {v : v ∧ B = 0}`.
    pub fn span(&self) -> Result<Subspace> {
        if let Some(s) = self.span.get() {
            return Ok(s.clone());
        }
        let s = blade_span(&self.mv)?;
        Ok(self.span.get_or_init(|| s).clone())
    }
}

fn blade_span(b: &Multivector) -> Result<Subspace> {
    let n = b.ambient();
    let field = b.field();
    if b.is_zero() {
        return Ok(Subspace::full(n, field));
    }
    // Column i holds the coefficients of e_i ∧ B.
    let mut images = Vec::with_capacity(n);
    let mut keys = std::collections::BTreeSet::new();
    for i in 0..n {
        let ei = Multivector::basis_blade(n, field, &[i])?;
        let m = ei.wedge(b)?;
        keys.extend(m.terms.keys().copied());
        images.push(m);
    }
    let keys: Vec<u32> = keys.into_iter().collect();
    let map = CMatrix::from_fn(keys.len(), n, |r, c| images[c].terms.get(&keys[r]).copied().unwrap_or(ZERO));
    // null(map) = range(mapᴴ)⊥
    let row_space = linalg::orthonormal_range(&map.adjoint(), field, Some(1e-10));
    let null = linalg::complement_basis(&row_space, field);
    Ok(Subspace::from_frame(&null, field))
}

/// Unit blade of an orthonormal basis of `V`; `{0}` gives the scalar 1.
pub fn blade_of(v: &Subspace) -> Result<Blade> {
    check_ambient(v.ambient())?;
    let b = Blade::from_vectors(v.basis(), v.field())?;
    b.span.get_or_init(|| v.clone());
    Ok(b)
}

/// `A⌟B` by the expansion over the factors of `B = w₁ ∧ … ∧ w_q`:
/// `A⌟B = Σ_i ε_i ⟨A, B_i⟩ B_{i′}`, with `i` running over increasing
/// `p`-tuples of factor positions, `i′` the complementary positions and
/// `ε_i = (−1)^{p(p+1)/2 + i₁ + … + i_p}` (1-based positions).
pub fn contraction_by_factors(a: &Multivector, factors: &CMatrix, field: FieldTag) -> Result<Multivector> {
    let p = a.grade().ok_or_else(|| Error::InvalidArgument("contraction expansion needs a homogeneous A".into()))?;
    let q = factors.ncols();
    let n = a.ambient();
    if factors.nrows() != n {
        return Err(Error::AmbientMismatch(n, factors.nrows()));
    }
    let mut out = Multivector::zero(n, field)?;
    if p > q {
        return Ok(out);
    }
    if q > MAX_AMBIENT {
        return Err(Error::RepresentationLimit(q));
    }
    for pick in 0u32..(1u32 << q) {
        if pick.count_ones() as usize != p {
            continue;
        }
        let chosen = mask_to_indices(pick);
        let others: Vec<usize> = (0..q).filter(|i| pick & (1 << i) == 0).collect();
        let bi = Blade::from_vectors(&linalg::select_columns(factors, &chosen), field)?;
        let bi_rest = Blade::from_vectors(&linalg::select_columns(factors, &others), field)?;
        let exponent = p * (p + 1) / 2 + chosen.iter().map(|i| i + 1).sum::<usize>();
        let eps = if exponent % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = a.inner(bi.multivector())? * eps;
        out = out.add(&bi_rest.multivector().scale(coeff))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::random::{random_subspace, rng_for};
    use crate::linalg::real_matrix_from_columns;
    use crate::subspace::ToleranceProfile;
    use rand::Rng;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn ex58() -> (CMatrix, CMatrix) {
        let v = real_matrix_from_columns(5, &[vec![2.0, -1.0, 0.0, 0.0, 0.0], vec![2.0, 0.0, 1.0, 0.0, 0.0]]);
        let w = real_matrix_from_columns(
            5,
            &[vec![0.0, 1.0, 0.0, 0.0, 1.0], vec![0.0, 0.0, 1.0, -1.0, 0.0], vec![0.0, 0.0, 0.0, 1.0, 0.0]],
        );
        (v, w)
    }

    fn random_mv(rng: &mut impl Rng, n: usize, field: FieldTag, grade: Option<usize>) -> Multivector {
        let mut m = Multivector::zero(n, field).unwrap();
        for key in 0u32..(1 << n) {
            if let Some(g) = grade {
                if key.count_ones() as usize != g {
                    continue;
                }
            }
            let re: f64 = rng.random_range(-1.0..1.0);
            let im: f64 = if field == FieldTag::Complex { rng.random_range(-1.0..1.0) } else { 0.0 };
            m.add_term(key, C64::new(re, im));
        }
        m
    }

    #[test]
    fn wedge_basics() {
        let f = FieldTag::Real;
        let u1 = Multivector::basis_blade(3, f, &[0]).unwrap();
        let u2 = Multivector::basis_blade(3, f, &[1]).unwrap();
        assert!(u1.wedge(&u1).unwrap().is_zero());
        let u21 = u2.wedge(&u1).unwrap();
        assert_eq!(u21.coefficient(&[0, 1]), c(-1.0));
    }

    #[test]
    fn worked_example_blades() {
        let (v, w) = ex58();
        let a = Blade::from_vectors(&v, FieldTag::Real).unwrap();
        let b = Blade::from_vectors(&w, FieldTag::Real).unwrap();
        let expected = Multivector::from_terms(5, FieldTag::Real, &[(&[0, 1], c(2.0)), (&[0, 2], c(2.0)), (&[1, 2], c(-1.0))]).unwrap();
        assert_eq!(a.multivector(), &expected);
        assert!((a.norm() - 3.0).abs() < 1e-15);
        let expected_b = Multivector::from_terms(5, FieldTag::Real, &[(&[1, 2, 3], c(1.0)), (&[2, 3, 4], c(1.0))]).unwrap();
        assert_eq!(b.multivector(), &expected_b);
        assert!((b.norm() - 2f64.sqrt()).abs() < 1e-15);
        let ab = a.multivector().contraction(b.multivector()).unwrap();
        let minus_u4 = Multivector::basis_blade(5, FieldTag::Real, &[3]).unwrap().scale(c(-1.0));
        assert!(ab.distance_max(&minus_u4).unwrap() < 1e-12);
        assert!(b.multivector().contraction(a.multivector()).unwrap().is_zero());
    }

    #[test]
    fn inner_examples() {
        let f = FieldTag::Real;
        let u12 = Multivector::basis_blade(3, f, &[0, 1]).unwrap();
        let u13 = Multivector::basis_blade(3, f, &[0, 2]).unwrap();
        assert_eq!(u12.inner(&u13).unwrap(), ZERO);
        assert_eq!(u12.inner(&u12).unwrap(), c(1.0));
    }

    #[test]
    fn inner_matches_gram_determinant() {
        let mut rng = rng_for(21, 0);
        for field in [FieldTag::Real, FieldTag::Complex] {
            let v = random_subspace(&mut rng, 5, 5, field).basis().clone();
            let a = v.columns(0, 3).into_owned() * c(1.3);
            let b = v.columns(1, 3).into_owned() + v.columns(0, 3).into_owned() * c(0.4);
            let ab = Blade::from_vectors(&a, field).unwrap().multivector().inner(Blade::from_vectors(&b, field).unwrap().multivector()).unwrap();
            let gram = a.adjoint() * &b;
            let det = gram.determinant();
            assert!((ab - det).norm() < 1e-12);
        }
    }

    #[test]
    fn contraction_grade_rules() {
        let mut rng = rng_for(22, 0);
        let a = random_mv(&mut rng, 5, FieldTag::Complex, Some(2));
        let b = random_mv(&mut rng, 5, FieldTag::Complex, Some(3));
        assert_eq!(a.contraction(&b).unwrap().grade(), Some(1));
        assert!(b.contraction(&a).unwrap().is_zero());
        let b2 = random_mv(&mut rng, 5, FieldTag::Complex, Some(2));
        let scalar = a.contraction(&b2).unwrap();
        assert!((scalar.coefficient(&[]) - a.inner(&b2).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn contraction_adjoint_identity_exhaustive() {
        let mut rng = rng_for(23, 0);
        for field in [FieldTag::Real, FieldTag::Complex] {
            for n in 1..=6 {
                let a = random_mv(&mut rng, n, field, None);
                let b = random_mv(&mut rng, n, field, None);
                let ab = a.contraction(&b).unwrap();
                for key in 0u32..(1 << n) {
                    let cb = Multivector::basis_blade(n, field, &mask_to_indices(key)).unwrap();
                    let lhs = cb.inner(&ab).unwrap();
                    let rhs = a.wedge(&cb).unwrap().inner(&b).unwrap();
                    assert!((lhs - rhs).norm() < 1e-12, "n={n} key={key:b}");
                }
            }
        }
    }

    #[test]
    fn contraction_expansion_agrees_with_coordinate_rule() {
        let mut rng = rng_for(24, 0);
        for field in [FieldTag::Real, FieldTag::Complex] {
            for (p, q) in [(1, 2), (1, 3), (2, 3), (2, 4), (3, 5), (2, 2), (0, 3)] {
                let n = 6;
                let w = random_subspace(&mut rng, n, q, field);
                // non-orthonormal factors
                let mut factors = w.basis().clone();
                for j in 1..q {
                    let prev = factors.column(j - 1).into_owned();
                    let mut col = factors.column_mut(j);
                    col += prev * c(0.7);
                }
                let b = Blade::from_vectors(&factors, field).unwrap();
                let a = random_mv(&mut rng, n, field, Some(p));
                let direct = a.contraction(b.multivector()).unwrap();
                let expanded = contraction_by_factors(&a, &factors, field).unwrap();
                assert!(direct.distance_max(&expanded).unwrap() < 1e-12, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn blades_of_subspaces() {
        let f = FieldTag::Real;
        let plane = Subspace::from_real_columns(3, &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        let b = blade_of(&plane).unwrap();
        assert!((b.norm() - 1.0).abs() < 1e-12);
        assert!((b.multivector().coefficient(&[0, 1]).norm() - 1.0).abs() < 1e-12);
        let z = blade_of(&Subspace::zero(3, f)).unwrap();
        assert_eq!(z.multivector(), &Multivector::scalar(3, f, c(1.0)).unwrap());
        let (_, w) = ex58();
        let ws = Subspace::from_spanning(&w, f, &ToleranceProfile::default()).unwrap();
        let bw = blade_of(&ws).unwrap();
        let raw = Blade::from_vectors(&w, f).unwrap();
        let ratio = raw.multivector().inner(bw.multivector()).unwrap().norm();
        assert!((ratio - 2f64.sqrt()).abs() < 1e-12);
        assert!(blade_of(&Subspace::zero(33, f)).is_err());
    }

    #[test]
    fn blade_span_recovers_subspace() {
        let mut rng = rng_for(25, 0);
        for field in [FieldTag::Real, FieldTag::Complex] {
            for p in 0..=5 {
                let v = random_subspace(&mut rng, 5, p, field);
                let raw = Blade::from_vectors(v.basis(), field).unwrap();
                let s = raw.span().unwrap();
                assert_eq!(s.dim(), p);
                assert!(s.same_span(&v).unwrap());
            }
        }
    }

    #[test]
    fn disjoint_and_overlapping_wedges() {
        let mut rng = rng_for(26, 0);
        for field in [FieldTag::Real, FieldTag::Complex] {
            let frame = random_subspace(&mut rng, 6, 5, field);
            let b = frame.basis();
            let x = Blade::from_vectors(&b.columns(0, 2).into_owned(), field).unwrap();
            let y = Blade::from_vectors(&b.columns(2, 3).into_owned(), field).unwrap();
            let xy = x.multivector().wedge(y.multivector()).unwrap();
            assert!(!xy.is_zero());
            let span = Blade { mv: xy, grade: 5, span: OnceLock::new() }.span().unwrap();
            assert!(span.same_span(&frame).unwrap());
            let overlap = Blade::from_vectors(&b.columns(1, 2).into_owned(), field).unwrap();
            let zero = x.multivector().wedge(overlap.multivector()).unwrap();
            assert!(zero.norm() < 1e-12);
        }
    }

    #[test]
    fn projection_of_blades() {
        let s3 = 3f64.sqrt();
        let s2 = 2f64.sqrt();
        let v = Subspace::from_real_columns(5, &[vec![s3 / 2.0, 0.0, 0.0, 0.5, 0.0], vec![0.0, 1.0 / s2, 0.0, 0.0, 1.0 / s2]]).unwrap();
        let w = Subspace::from_real_columns(5, &[vec![1.0, 0.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0, 0.0], vec![0.0, 0.0, 1.0, 0.0, 0.0]]).unwrap();
        let a = blade_of(&v).unwrap();
        let pa = project_multivector(&w, a.multivector()).unwrap();
        assert!((pa.norm() - 6f64.sqrt() / 4.0).abs() < 1e-12);
        // members of ⋀W are fixed, projection is idempotent
        let bw = blade_of(&w).unwrap();
        assert!(project_multivector(&w, bw.multivector()).unwrap().distance_max(bw.multivector()).unwrap() < 1e-12);
        let ppa = project_multivector(&w, &pa).unwrap();
        assert!(ppa.distance_max(&pa).unwrap() < 1e-12);
        // grade above dim W projects to zero
        let line = Subspace::from_real_columns(5, &[vec![1.0, 0.0, 0.0, 0.0, 0.0]]).unwrap();
        assert!(project_multivector(&line, a.multivector()).unwrap().norm() < 1e-12);
    }

    #[test]
    fn projection_is_norm_nonincreasing_on_general_multivectors() {
        let mut rng = rng_for(27, 0);
        for field in [FieldTag::Real, FieldTag::Complex] {
            let w = random_subspace(&mut rng, 5, 3, field);
            let a = random_mv(&mut rng, 5, field, None);
            let pa = project_multivector(&w, &a).unwrap();
            assert!(pa.norm() <= a.norm() + 1e-12);
            assert!(project_multivector(&w, &pa).unwrap().distance_max(&pa).unwrap() < 1e-12);
        }
    }

    #[test]
    fn mismatched_operands() {
        let a = Multivector::basis_blade(3, FieldTag::Real, &[0]).unwrap();
        let b = Multivector::basis_blade(4, FieldTag::Real, &[0]).unwrap();
        assert!(matches!(a.wedge(&b), Err(Error::AmbientMismatch(3, 4))));
        let cplx = Multivector::basis_blade(3, FieldTag::Complex, &[0]).unwrap();
        assert!(matches!(a.inner(&cplx), Err(Error::FieldMismatch(..))));
        assert!(Multivector::basis_blade(3, FieldTag::Real, &[1, 0]).is_err());
    }
}
