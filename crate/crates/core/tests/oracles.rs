//! Cross-module checks against independent computations.

use rand::Rng;
use spectral_ball::calculus::{
    apply_exact, apply_series, equivariance_residual, CalculusMethod, DiscMap,
    DEFAULT_SERIES_MAX_TERMS,
};
use spectral_ball::fibers::{
    gaussian_matrix, random_basis, random_in_fiber, random_in_omega, random_realization,
    random_spec, rng_from_seed,
};
use spectral_ball::linalg::{determinant, eigenvalues};
use spectral_ball::spectral::{in_gn, in_jn, in_omega, pi_n, sigma, sigma_jacobian};
use spectral_ball::{CMatrix, C64};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn minor(a: &CMatrix, r: usize, s: usize) -> CMatrix {
    let n = a.n();
    let rows: Vec<Vec<C64>> = (0..n)
        .filter(|&i| i != r)
        .map(|i| (0..n).filter(|&j| j != s).map(|j| a[(i, j)]).collect())
        .collect();
    CMatrix::from_rows(&rows).unwrap()
}

#[test]
fn determinant_gradient_is_the_cofactor_matrix() {
    let mut rng = rng_from_seed(3);
    for _ in 0..20 {
        let a = gaussian_matrix(3, &mut rng);
        let jac = sigma_jacobian(&a);
        for r in 0..3 {
            for s in 0..3 {
                let sign = if (r + s) % 2 == 0 { 1.0 } else { -1.0 };
                let cof = determinant(&minor(&a, r, s)) * sign;
                assert!((jac.entry(3, r, s) - cof).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn jacobian_matches_central_differences_in_all_real_directions() {
    let mut rng = rng_from_seed(4);
    let a = gaussian_matrix(4, &mut rng).scale_real(0.5);
    let jac = sigma_jacobian(&a);
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    let mut big: f64 = 0.0;
    for r in 0..4 {
        for s in 0..4 {
            for dir in [c(1.0, 0.0), c(0.0, 1.0)] {
                let e = CMatrix::elementary(4, r, s).scale(dir * h);
                let plus = sigma(&(&a + &e));
                let minus = sigma(&(&a - &e));
                for j in 1..=4 {
                    let fd = (plus.coords()[j - 1] - minus.coords()[j - 1]) / (2.0 * h);
                    // Holomorphic in each entry, so the directional derivative is J·dir.
                    let an = jac.entry(j, r, s) * dir;
                    worst = worst.max((fd - an).norm());
                    big = big.max(an.norm());
                }
            }
        }
    }
    assert!(worst / big < 1e-6, "{}", worst / big);
}

#[test]
fn elementary_symmetric_of_eigenvalues_is_sigma() {
    let mut rng = rng_from_seed(5);
    for _ in 0..200 {
        let a = gaussian_matrix(5, &mut rng).scale_real(0.3);
        let z = sigma(&a);
        let e = pi_n(&eigenvalues(&a, 1e-8).unwrap()).unwrap();
        assert!(z.max_abs_diff(&e) < 1e-8 * z.max_abs().max(1.0));
    }
}

#[test]
fn membership_agrees_through_sigma() {
    let mut rng = rng_from_seed(6);
    for i in 0..500 {
        let n = 2 + i % 5;
        let a = gaussian_matrix(n, &mut rng).scale_real(rng.random_range(0.05..0.8));
        assert_eq!(in_omega(&a, 0.0).unwrap(), in_gn(&sigma(&a), 0.0).unwrap());
    }
}

#[test]
fn huge_nilpotent_stays_inside() {
    let big = CMatrix::elementary(3, 0, 2).scale_real(1e6);
    assert!(in_omega(&big, 0.0).unwrap());
    assert!(in_gn(&sigma(&big), 0.0).unwrap());
}

#[test]
fn duplicated_zeta_lands_in_discriminant_set() {
    let mut rng = rng_from_seed(7);
    for _ in 0..50 {
        let mut zetas: Vec<C64> = (0..4)
            .map(|_| {
                C64::from_polar(
                    rng.random_range(0.0..0.9),
                    rng.random_range(0.0..std::f64::consts::TAU),
                )
            })
            .collect();
        zetas[3] = zetas[1];
        assert!(in_jn(&pi_n(&zetas).unwrap(), 1e-6).unwrap());
    }
    assert!(!in_jn(&pi_n(&[c(0.1, 0.0), c(0.2, 0.0)]).unwrap(), 1e-6).unwrap());
}

#[test]
fn random_points_of_gn_avoid_the_discriminant_set() {
    let mut rng = rng_from_seed(10);
    let mut hits = 0;
    for i in 0..2000 {
        let n = 2 + i % 5;
        let zetas: Vec<C64> = (0..n)
            .map(|_| {
                C64::from_polar(
                    rng.random::<f64>().sqrt() * 0.95,
                    rng.random_range(0.0..std::f64::consts::TAU),
                )
            })
            .collect();
        let z = pi_n(&zetas).unwrap();
        assert!(in_gn(&z, 0.0).unwrap());
        if in_jn(&z, 1e-6).unwrap() {
            hits += 1;
        }
    }
    assert!(hits <= 2, "{hits} of 2000 samples fell in J_n");
}

#[test]
fn fiber_samples_hit_their_fiber() {
    let zetas = [c(0.5, 0.0), c(0.5, 0.0), c(-0.3, 0.2), c(0.1, -0.6)];
    for seed in 0..50 {
        let a = random_in_fiber(&zetas, seed).unwrap();
        assert!(sigma(&a).max_abs_diff(&pi_n(&zetas).unwrap()) < 1e-9);
    }
}

#[test]
fn omega_samples_are_members() {
    for seed in 0..1000 {
        let a = random_in_omega(3, seed, 0.9, 10.0).unwrap();
        assert!(in_omega(&a, 0.0).unwrap());
    }
}

#[test]
fn series_agrees_with_interpolation() {
    let mut rng = rng_from_seed(8);
    for i in 0..100 {
        let n = 2 + i % 4;
        let spec = random_spec(n, 0.8, &mut rng);
        let r = random_realization(spec, 10.0, &mut rng);
        let f = DiscMap::blaschke(vec![c(0.3, -0.2), c(-0.5, 0.1)], 0.7).unwrap();
        let exact = apply_exact(&f, &r).unwrap();
        let series = apply_series(&f, &r.realize(), 1e-15, DEFAULT_SERIES_MAX_TERMS).unwrap();
        assert!(exact.max_abs_diff(&series) < 1e-6);
    }
}

#[test]
fn mobius_equivariance_on_a_jordan_block() {
    let a = CMatrix::jordan_block(3, c(0.2, 0.0));
    let f = DiscMap::mobius(c(0.4, -0.1), 1.1).unwrap();
    assert!(equivariance_residual(&f, &a, CalculusMethod::Exact).unwrap() < 1e-8);
}

#[test]
fn origin_fixing_map_keeps_nilpotents_nilpotent() {
    let mut rng = rng_from_seed(9);
    let f = DiscMap::series(vec![c(0.0, 0.0), c(0.5, 0.0), c(0.5, 0.0)]).unwrap();
    for n in 2..=6 {
        let s = random_basis(n, 10.0, &mut rng);
        let a = &(&s * &CMatrix::jordan_block(n, c(0.0, 0.0)).scale_real(0.5))
            * &spectral_ball::linalg::inverse(&s).unwrap();
        let fa = apply_exact(&f, &a).unwrap();
        assert!(sigma(&fa).max_abs() < 1e-10);
    }
}
