//! Seeded Haar-distributed random subspaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64};
use crate::subspace::{FieldTag, Subspace};

/// Generator for trial `stream` of a run seeded with `seed`. Streams are
/// independent, so trials can run in any order or in parallel.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize, field: FieldTag) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = match field {
            FieldTag::Real => 0.0,
            FieldTag::Complex => rng.sample(StandardNormal),
        };
        C64::new(re, im)
    })
}

/// Uniformly distributed `p`-subspace of `𝔽ⁿ`: the span of a Gaussian
/// `n × p` matrix, orthonormalized by QR. Panics if `p > n`; see
/// [`try_random_subspace`].
pub fn random_subspace(rng: &mut impl Rng, n: usize, p: usize, field: FieldTag) -> Subspace {
    try_random_subspace(rng, n, p, field).expect("p <= n")
}

pub fn try_random_subspace(rng: &mut impl Rng, n: usize, p: usize, field: FieldTag) -> Result<Subspace> {
    if p > n {
        return Err(Error::InvalidArgument(format!("cannot draw a {p}-subspace of a {n}-space")));
    }
    if p == 0 {
        return Ok(Subspace::zero(n, field));
    }
    let g = gaussian_matrix(rng, n, p, field);
    Ok(Subspace::from_frame(&linalg::qr_orthonormalize(&g, field), field))
}

/// [`random_subspace`] with a fixed seed.
pub fn random_subspace_seeded(n: usize, p: usize, field: FieldTag, seed: u64) -> Result<Subspace> {
    try_random_subspace(&mut rng_for(seed, 0), n, p, field)
}

/// Uniform random `k`-subspace of `V`.
pub fn random_subspace_of(rng: &mut impl Rng, v: &Subspace, k: usize) -> Subspace {
    let inner = random_subspace(rng, v.dim(), k, v.field());
    Subspace::from_frame(&(v.basis() * inner.basis()), v.field())
}

/// Uniform random `k`-subspace of `V⊥`.
pub fn random_orthogonal_to(rng: &mut impl Rng, v: &Subspace, k: usize) -> Subspace {
    random_subspace_of(rng, &v.complement(), k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_dimensions() {
        let mut rng = rng_for(1, 0);
        assert!(random_subspace(&mut rng, 3, 0, FieldTag::Real).is_zero());
        assert!(random_subspace(&mut rng, 3, 3, FieldTag::Complex).is_full());
        assert!(try_random_subspace(&mut rng, 3, 4, FieldTag::Real).is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let a = random_subspace_seeded(6, 3, FieldTag::Complex, 42).unwrap();
        let b = random_subspace_seeded(6, 3, FieldTag::Complex, 42).unwrap();
        assert_eq!(a.basis(), b.basis());
        let c = random_subspace_seeded(6, 3, FieldTag::Complex, 43).unwrap();
        assert_ne!(a.basis(), c.basis());
    }

    #[test]
    fn nested_draws() {
        let mut rng = rng_for(2, 0);
        let v = random_subspace(&mut rng, 7, 4, FieldTag::Complex);
        let sub = random_subspace_of(&mut rng, &v, 2);
        assert!(v.contains(&sub).unwrap());
        let perp = random_orthogonal_to(&mut rng, &v, 3);
        assert!(perp.is_orthogonal_to(&v).unwrap());
    }

    #[test]
    fn real_draws_are_real() {
        let mut rng = rng_for(3, 0);
        let v = random_subspace(&mut rng, 5, 2, FieldTag::Real);
        assert_eq!(linalg::max_imag(v.basis()), 0.0);
    }
}
