//! Holomorphic self-maps of the unit disc: Möbius automorphisms, finite Blaschke products and
//! polynomial series.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rand::Rng;

use super::jet::Taylor;
use crate::error::{Error, Result};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Radius of the circle on which series maps are checked.
pub const SERIES_GUARD_RADIUS: f64 = 0.99;
/// Number of samples on that circle.
pub const SERIES_GUARD_SAMPLES: usize = 720;

fn finite(c: C64) -> bool {
    c.re.is_finite() && c.im.is_finite()
}

fn check_in_disc(a: C64, what: &str) -> Result<()> {
    if !finite(a) || a.norm() >= 1.0 {
        return Err(Error::input(format!(
            "{what} must lie in the open unit disc, got {a}"
        )));
    }
    Ok(())
}

fn check_phase(theta: f64) -> Result<()> {
    if theta.is_finite() {
        Ok(())
    } else {
        Err(Error::input("phase must be finite"))
    }
}

/// `λ ↦ e^{iθ} (λ − c) / (1 − c̄ λ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mobius {
    c: C64,
    theta: f64,
}

impl Mobius {
    pub fn new(c: C64, theta: f64) -> Result<Self> {
        check_in_disc(c, "Möbius center")?;
        check_phase(theta)?;
        Ok(Mobius { c, theta })
    }

    pub fn identity() -> Self {
        Mobius {
            c: ZERO,
            theta: 0.0,
        }
    }

    pub fn c(&self) -> C64 {
        self.c
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    fn phase(&self) -> C64 {
        C64::from_polar(1.0, self.theta)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.phase() * (z - self.c) / (1.0 - self.c.conj() * z)
    }

    /// The inverse map `e^{−iθ}(w + c e^{iθ})/(1 + c̄ e^{−iθ} w)`.
    pub fn inverse(&self) -> Mobius {
        Mobius {
            c: -self.c * self.phase(),
            theta: -self.theta,
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Mobius) -> Mobius {
        // Act by 2×2 matrices [[e^{iθ}, −e^{iθ}c], [−c̄, 1]] and renormalize.
        let m = |m: &Mobius| {
            let p = m.phase();
            [[p, -p * m.c], [-m.c.conj(), ONE]]
        };
        let (a, b) = (m(self), m(inner));
        let prod = [
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ];
        let c = -prod[0][1] / prod[0][0];
        let theta = (prod[0][0] / prod[1][1]).arg();
        Mobius { c, theta }
    }

    fn local_taylor(&self, lambda: C64, m: usize) -> Taylor {
        factor_taylor(self.c, lambda, m).scale(self.phase())
    }
}

/// `(t + λ − a) / (1 − ā(t + λ))` as a truncated series in `t`.
fn factor_taylor(a: C64, lambda: C64, m: usize) -> Taylor {
    let t = Taylor::variable(lambda, m);
    let num = t.add_const(-a);
    let den = t.scale(-a.conj()).add_const(ONE);
    num.div(&den)
}

/// Finite Blaschke product `e^{iθ} Π_j (λ − a_j)/(1 − ā_j λ)` of degree ≥ 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Blaschke {
    zeros: Vec<C64>,
    theta: f64,
}

impl Blaschke {
    pub fn new(zeros: Vec<C64>, theta: f64) -> Result<Self> {
        if zeros.is_empty() {
            return Err(Error::input("a Blaschke product needs at least one zero"));
        }
        for &a in &zeros {
            check_in_disc(a, "Blaschke zero")?;
        }
        check_phase(theta)?;
        Ok(Blaschke { zeros, theta })
    }

    pub fn zeros(&self) -> &[C64] {
        &self.zeros
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.zeros
            .iter()
            .fold(C64::from_polar(1.0, self.theta), |acc, &a| {
                acc * (z - a) / (1.0 - a.conj() * z)
            })
    }

    /// `max_k | |B(e^{iθ_k})| − 1 |` over `samples` equally spaced points of the unit circle.
    pub fn boundary_modulus_deviation(&self, samples: usize) -> f64 {
        (0..samples)
            .map(|k| {
                let z = C64::from_polar(1.0, 2.0 * PI * k as f64 / samples as f64);
                (self.eval(z).norm() - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Polynomial `Σ c_k λ^k` checked to stay in the closed disc on a guard circle.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<C64>,
    radius_guard: f64,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        Self::with_guard(coeffs, SERIES_GUARD_RADIUS)
    }

    /// Heuristic check only: `max |f|` over 720 points of `|λ| = radius_guard` must be ≤ 1.
    pub fn with_guard(mut coeffs: Vec<C64>, radius_guard: f64) -> Result<Self> {
        if !(radius_guard > 0.0 && radius_guard < 1.0) {
            return Err(Error::input(format!(
                "series guard radius must lie in (0, 1), got {radius_guard}"
            )));
        }
        if coeffs.iter().any(|&c| !finite(c)) {
            return Err(Error::input("series coefficients must be finite"));
        }
        while coeffs.len() > 1 && coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(ZERO);
        }
        let s = PowerSeries {
            coeffs,
            radius_guard,
        };
        let sup = s.sampled_sup(radius_guard, SERIES_GUARD_SAMPLES);
        if sup > 1.0 {
            return Err(Error::input(format!(
                "series is not a self-map of the disc: |f| reaches {sup:.6} on |λ| = {radius_guard}"
            )));
        }
        Ok(s)
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn radius_guard(&self) -> f64 {
        self.radius_guard
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn sampled_sup(&self, radius: f64, samples: usize) -> f64 {
        (0..samples)
            .map(|k| {
                self.eval(C64::from_polar(
                    radius,
                    2.0 * PI * k as f64 / samples as f64,
                ))
                .norm()
            })
            .fold(0.0, f64::max)
    }
}

/// A holomorphic self-map `f` of the unit disc.
#[derive(Clone, Debug, PartialEq)]
pub enum DiscMap {
    Mobius(Mobius),
    Blaschke(Blaschke),
    Series(PowerSeries),
}

impl DiscMap {
    pub fn mobius(c: C64, theta: f64) -> Result<Self> {
        Ok(DiscMap::Mobius(Mobius::new(c, theta)?))
    }

    pub fn blaschke(zeros: Vec<C64>, theta: f64) -> Result<Self> {
        Ok(DiscMap::Blaschke(Blaschke::new(zeros, theta)?))
    }

    pub fn series(coeffs: Vec<C64>) -> Result<Self> {
        Ok(DiscMap::Series(PowerSeries::new(coeffs)?))
    }

    pub fn identity() -> Self {
        DiscMap::Mobius(Mobius::identity())
    }

    /// `λ ↦ λ²`, the degree-2 Blaschke product with a double zero at the origin.
    pub fn square() -> Self {
        DiscMap::Blaschke(Blaschke {
            zeros: vec![ZERO, ZERO],
            theta: 0.0,
        })
    }

    pub fn eval(&self, z: C64) -> C64 {
        match self {
            DiscMap::Mobius(m) => m.eval(z),
            DiscMap::Blaschke(b) => b.eval(z),
            DiscMap::Series(s) => s.eval(z),
        }
    }

    /// Truncated Taylor expansion of `f` around `λ` with `m` terms.
    pub(crate) fn local_taylor(&self, lambda: C64, m: usize) -> Taylor {
        match self {
            DiscMap::Mobius(mo) => mo.local_taylor(lambda, m),
            DiscMap::Blaschke(b) => b.zeros.iter().fold(
                Taylor::constant(C64::from_polar(1.0, b.theta), m),
                |acc, &a| acc.mul(&factor_taylor(a, lambda, m)),
            ),
            DiscMap::Series(s) => {
                let t = Taylor::variable(lambda, m);
                s.coeffs
                    .iter()
                    .rev()
                    .fold(Taylor::constant(ZERO, m), |acc, &c| {
                        acc.mul(&t).add_const(c)
                    })
            }
        }
    }

    /// The first `count` Taylor coefficients `f^{(k)}(0)/k!`.
    pub fn taylor_coeffs(&self, count: usize) -> Vec<C64> {
        let mut out = vec![ZERO; count];
        if count == 0 {
            return out;
        }
        match self {
            DiscMap::Mobius(m) => {
                let ph = m.phase();
                out[0] = -m.c * ph;
                let cb = m.c.conj();
                let mut t = ph * (1.0 - m.c.norm_sqr());
                for o in out.iter_mut().skip(1) {
                    *o = t;
                    t *= cb;
                }
            }
            DiscMap::Blaschke(b) => {
                out[0] = C64::from_polar(1.0, b.theta);
                for &a in &b.zeros {
                    // Multiply by (λ − a), then divide by (1 − āλ).
                    for k in (0..count).rev() {
                        let prev = if k > 0 { out[k - 1] } else { ZERO };
                        out[k] = prev - a * out[k];
                    }
                    let ab = a.conj();
                    for k in 1..count {
                        let prev = out[k - 1];
                        out[k] += ab * prev;
                    }
                }
            }
            DiscMap::Series(s) => {
                for (o, &c) in out.iter_mut().zip(&s.coeffs) {
                    *o = c;
                }
            }
        }
        out
    }

    /// Monomial coefficients when `f` is a polynomial.
    pub fn polynomial_coeffs(&self) -> Option<Vec<C64>> {
        match self {
            DiscMap::Mobius(m) if m.c == ZERO => Some(vec![ZERO, m.phase()]),
            DiscMap::Blaschke(b) if b.zeros.iter().all(|&a| a == ZERO) => {
                let mut v = vec![ZERO; b.degree() + 1];
                v[b.degree()] = C64::from_polar(1.0, b.theta);
                Some(v)
            }
            DiscMap::Series(s) => Some(s.coeffs.clone()),
            _ => None,
        }
    }

    /// `self ∘ inner` for two Möbius maps.
    pub fn compose_mobius(&self, inner: &DiscMap) -> Result<DiscMap> {
        match (self, inner) {
            (DiscMap::Mobius(a), DiscMap::Mobius(b)) => Ok(DiscMap::Mobius(a.compose(b))),
            _ => Err(Error::input(
                "composition is only closed-form for Möbius maps",
            )),
        }
    }
}

/// Random Möbius map with `|c| < max_c` and uniform phase.
pub fn random_mobius<R: Rng + ?Sized>(max_c: f64, rng: &mut R) -> Mobius {
    let c = C64::from_polar(
        max_c * rng.random::<f64>().sqrt(),
        2.0 * PI * rng.random::<f64>(),
    );
    Mobius::new(c, 2.0 * PI * rng.random::<f64>() - PI).expect("center inside disc")
}

/// Random Blaschke product of the given degree with zeros of modulus below `max_zero`.
pub fn random_blaschke<R: Rng + ?Sized>(degree: usize, max_zero: f64, rng: &mut R) -> Blaschke {
    let zeros = (0..degree.max(1))
        .map(|_| {
            C64::from_polar(
                max_zero * rng.random::<f64>().sqrt(),
                2.0 * PI * rng.random::<f64>(),
            )
        })
        .collect();
    Blaschke::new(zeros, 2.0 * PI * rng.random::<f64>() - PI).expect("zeros inside disc")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibers::rng_from_seed;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn taylor_coeffs_sum_to_value() {
        let maps = [
            DiscMap::mobius(c(0.3, 0.4), 1.0).unwrap(),
            DiscMap::blaschke(vec![c(0.2, 0.0), c(-0.1, 0.5), c(0.0, 0.0)], -0.4).unwrap(),
        ];
        let z = c(0.3, -0.2);
        for f in &maps {
            let t = f.taylor_coeffs(200);
            let s = t.iter().rev().fold(ZERO, |acc, &a| acc * z + a);
            assert!((s - f.eval(z)).norm() < 1e-14);
        }
    }

    #[test]
    fn mobius_inverse_and_compose() {
        let m = Mobius::new(c(0.5, -0.3), 2.1).unwrap();
        let z = c(-0.2, 0.7);
        assert!((m.inverse().eval(m.eval(z)) - z).norm() < 1e-14);
        let k = Mobius::new(c(-0.1, 0.6), -0.9).unwrap();
        assert!((m.compose(&k).eval(z) - m.eval(k.eval(z))).norm() < 1e-14);
        let id = m.compose(&m.inverse());
        assert!(id.c().norm() < 1e-15);
    }

    #[test]
    fn blaschke_boundary_is_unimodular() {
        let mut rng = rng_from_seed(9);
        for d in 1..=5 {
            let b = random_blaschke(d, 0.95, &mut rng);
            assert!(b.boundary_modulus_deviation(360) < 1e-12);
        }
    }

    #[test]
    fn series_guard() {
        assert!(DiscMap::series(vec![c(0.0, 0.0), c(0.5, 0.0), c(0.5, 0.0)]).is_ok());
        assert!(DiscMap::series(vec![c(0.0, 0.0), c(1.2, 0.0)]).is_err());
        assert!(DiscMap::series(vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn invalid_parameters() {
        assert!(DiscMap::mobius(c(1.0, 0.0), 0.0).is_err());
        assert!(DiscMap::blaschke(vec![], 0.0).is_err());
        assert!(DiscMap::blaschke(vec![c(0.0, -1.0)], 0.0).is_err());
    }
}
