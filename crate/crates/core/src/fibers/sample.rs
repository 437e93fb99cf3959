//! Deterministic random samplers over `Ω_n` and its fibers.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::jordan::{lemma6_realization, JordanBlockGroup, JordanRealization, JordanSpec};
use crate::error::{Error, Result};
use crate::linalg::{vec_norm, CMatrix};

/// Condition bound used by samplers that do not take one explicitly.
pub const DEFAULT_COND_BOUND: f64 = 10.0;

/// Seeded generator used by every sampler in the crate.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn gaussian_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let data = (0..n * n).map(|_| gaussian_c64(rng)).collect();
    CMatrix::from_row_major(n, data).expect("gaussian entries are finite")
}

/// Haar-like unitary matrix from modified Gram–Schmidt on a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    loop {
        let g = gaussian_matrix(n, rng);
        let mut q: Vec<Vec<C64>> = Vec::with_capacity(n);
        let mut ok = true;
        for j in 0..n {
            let mut v = g.column(j);
            for u in &q {
                let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
            let len = vec_norm(&v);
            if len < 1e-8 {
                ok = false;
                break;
            }
            q.push(v.into_iter().map(|x| x / len).collect());
        }
        if ok {
            return CMatrix::from_columns(&q).expect("orthonormal columns");
        }
    }
}

/// Random basis `U·diag(s)·W` whose 2-norm condition number is log-uniform in `[1, cond_bound]`.
pub fn random_basis<R: Rng + ?Sized>(n: usize, cond_bound: f64, rng: &mut R) -> CMatrix {
    let u = random_unitary(n, rng);
    let w = random_unitary(n, rng);
    let kappa = if cond_bound > 1.0 {
        (rng.random::<f64>() * cond_bound.ln()).exp()
    } else {
        1.0
    };
    let mut s: Vec<f64> = (0..n)
        .map(|i| match i {
            0 => 1.0,
            i if i == n - 1 => kappa,
            _ => (rng.random::<f64>() * kappa.ln()).exp(),
        })
        .collect();
    s.sort_by(f64::total_cmp);
    let d = CMatrix::diag(&s.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>());
    &(&u * &d) * &w
}

/// Uniform point of the disc of the given radius.
pub fn disc_point<R: Rng + ?Sized>(radius: f64, rng: &mut R) -> C64 {
    let r = radius * rng.random::<f64>().sqrt();
    C64::from_polar(r, 2.0 * PI * rng.random::<f64>())
}

/// `count` points uniform in the disc, pairwise at least `min_sep` apart (relaxed if crowded).
pub fn separated_disc_points<R: Rng + ?Sized>(
    count: usize,
    radius: f64,
    min_sep: f64,
    rng: &mut R,
) -> Vec<C64> {
    let mut sep = min_sep;
    let mut pts: Vec<C64> = Vec::with_capacity(count);
    let mut misses = 0;
    while pts.len() < count {
        let p = disc_point(radius, rng);
        if pts.iter().all(|q| (p - q).norm() >= sep) {
            pts.push(p);
        } else {
            misses += 1;
            if misses % 1000 == 0 {
                sep *= 0.5;
            }
        }
    }
    pts
}

/// Random partition of `m` into descending parts.
pub fn random_partition<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = m;
    while left > 0 {
        let p = rng.random_range(1..=left);
        parts.push(p);
        left -= p;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Random multiplicity pattern for `n` eigenvalues: half the time all simple, otherwise
/// a random composition of `n`.
fn random_multiplicities<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    if rng.random::<bool>() {
        return vec![1; n];
    }
    let mut mults = Vec::new();
    let mut left = n;
    while left > 0 {
        let m = rng.random_range(1..=left);
        mults.push(m);
        left -= m;
    }
    mults
}

fn min_separation(radius: f64) -> f64 {
    0.1 * radius
}

/// Random Jordan spec with eigenvalues uniform in the disc of radius `radius`.
pub fn random_spec<R: Rng + ?Sized>(n: usize, radius: f64, rng: &mut R) -> JordanSpec {
    let mults = random_multiplicities(n, rng);
    let eigs = separated_disc_points(mults.len(), radius, min_separation(radius), rng);
    let groups = mults
        .iter()
        .zip(eigs)
        .map(|(&m, lambda)| JordanBlockGroup::new(lambda, random_partition(m, rng)))
        .collect();
    JordanSpec::new(groups).expect("random spec is valid")
}

/// Random nilpotent spec with at least one block of size ≥ 2.
pub fn random_nilpotent_spec<R: Rng + ?Sized>(n: usize, rng: &mut R) -> JordanSpec {
    let sizes = loop {
        let p = random_partition(n, rng);
        if p[0] >= 2 {
            break p;
        }
    };
    JordanSpec::new(vec![JordanBlockGroup::new(C64::new(0.0, 0.0), sizes)])
        .expect("nilpotent spec is valid")
}

/// Random spec in which at least one eigenvalue carries two or more blocks.
pub fn random_derogatory_spec<R: Rng + ?Sized>(n: usize, radius: f64, rng: &mut R) -> JordanSpec {
    loop {
        let spec = random_spec(n, radius, rng);
        if !spec.is_nonderogatory() {
            return spec;
        }
    }
}

/// Realization of `spec` in a random basis with condition number at most `cond_bound`.
pub fn random_realization<R: Rng + ?Sized>(
    spec: JordanSpec,
    cond_bound: f64,
    rng: &mut R,
) -> JordanRealization {
    let n = spec.n();
    let basis = random_basis(n, cond_bound, rng);
    JordanRealization::new(spec, basis).expect("random basis is well conditioned")
}

fn check_radius(radius: f64) -> Result<()> {
    if radius > 0.0 && radius < 1.0 {
        Ok(())
    } else {
        Err(Error::input(format!(
            "sampling radius must lie in (0, 1), got {radius}"
        )))
    }
}

/// Random element of `Ω_n` together with its chain basis.
pub fn random_realization_in_omega(
    n: usize,
    seed: u64,
    radius: f64,
    cond_bound: f64,
) -> Result<JordanRealization> {
    check_radius(radius)?;
    if n < 2 {
        return Err(Error::input(format!(
            "dimension must be at least 2, got {n}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let spec = random_spec(n, radius, &mut rng);
    Ok(random_realization(spec, cond_bound, &mut rng))
}

/// Random element of `Ω_n`: eigenvalues uniform in the disc of radius `radius`, random Jordan
/// structure, random basis with condition number at most `cond_bound`.
pub fn random_in_omega(n: usize, seed: u64, radius: f64, cond_bound: f64) -> Result<CMatrix> {
    Ok(random_realization_in_omega(n, seed, radius, cond_bound)?.realize())
}

/// Random non-derogatory element of `T_{π_n(ζ)}`.
pub fn random_in_fiber(zetas: &[C64], seed: u64) -> Result<CMatrix> {
    let mut rng = rng_from_seed(seed);
    let basis = random_basis(zetas.len().max(2), DEFAULT_COND_BOUND, &mut rng);
    Ok(lemma6_realization(zetas, &basis)?.realize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::inverse;
    use crate::spectral::{in_omega, pi_n, sigma};

    #[test]
    fn samplers_are_deterministic() {
        let a = random_in_omega(4, 17, 0.9, 10.0).unwrap();
        let b = random_in_omega(4, 17, 0.9, 10.0).unwrap();
        assert_eq!(a.as_slice(), b.as_slice());
        let c = random_in_omega(4, 18, 0.9, 10.0).unwrap();
        assert_ne!(a.as_slice(), c.as_slice());
    }

    #[test]
    fn basis_condition_is_bounded() {
        let mut rng = rng_from_seed(5);
        for _ in 0..20 {
            let s = random_basis(5, 100.0, &mut rng);
            let cond_f = s.frobenius_norm() * inverse(&s).unwrap().frobenius_norm();
            // ‖·‖_F-condition is at most n times the 2-norm condition.
            assert!(cond_f <= 5.0 * 100.0 * (1.0 + 1e-9));
        }
    }

    #[test]
    fn fiber_sampler_hits_fiber() {
        let zetas = [C64::new(0.2, 0.1), C64::new(0.2, 0.1), C64::new(-0.5, 0.3)];
        let a = random_in_fiber(&zetas, 3).unwrap();
        assert!(sigma(&a).max_abs_diff(&pi_n(&zetas).unwrap()) < 1e-9);
    }

    #[test]
    fn omega_samples_are_members() {
        for seed in 0..1000 {
            let a = random_in_omega(3, seed, 0.9, DEFAULT_COND_BOUND).unwrap();
            assert!(in_omega(&a, 0.0).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn radius_is_validated() {
        assert!(random_in_omega(3, 0, 1.0, 10.0).is_err());
        assert!(random_in_omega(3, 0, 0.0, 10.0).is_err());
    }
}
