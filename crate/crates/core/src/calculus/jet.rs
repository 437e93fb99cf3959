//! Truncated Taylor arithmetic and derivative jets.

use num_complex::Complex64 as C64;

use super::discmap::DiscMap;
use crate::error::{Error, Result};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Truncated power series `a_0 + a_1 t + … + a_{m−1} t^{m−1}` in a local variable `t`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Taylor(pub(crate) Vec<C64>);

impl Taylor {
    pub(crate) fn constant(c: C64, m: usize) -> Self {
        let mut v = vec![ZERO; m];
        v[0] = c;
        Taylor(v)
    }

    /// `λ + t`.
    pub(crate) fn variable(center: C64, m: usize) -> Self {
        let mut t = Taylor::constant(center, m);
        if m > 1 {
            t.0[1] = ONE;
        }
        t
    }

    pub(crate) fn order(&self) -> usize {
        self.0.len()
    }

    pub(crate) fn scale(&self, c: C64) -> Self {
        Taylor(self.0.iter().map(|a| a * c).collect())
    }

    pub(crate) fn add_const(&self, c: C64) -> Self {
        let mut out = self.clone();
        out.0[0] += c;
        out
    }

    pub(crate) fn mul(&self, o: &Taylor) -> Self {
        let m = self.order();
        let mut out = vec![ZERO; m];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0[..m - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Taylor(out)
    }

    /// `self / o`; requires `o.0[0] ≠ 0`.
    pub(crate) fn div(&self, o: &Taylor) -> Self {
        let m = self.order();
        let d0 = o.0[0];
        let mut q = vec![ZERO; m];
        for k in 0..m {
            let mut acc = self.0[k];
            for j in 1..=k {
                acc -= o.0[j] * q[k - j];
            }
            q[k] = acc / d0;
        }
        Taylor(q)
    }
}

/// Value and derivatives `f(λ), f′(λ), …, f^{(m−1)}(λ)` at a center `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub center: C64,
    pub values: Vec<C64>,
}

impl Jet {
    pub(crate) fn from_taylor(center: C64, t: &Taylor) -> Self {
        let mut fact = 1.0;
        let values =
            t.0.iter()
                .enumerate()
                .map(|(k, a)| {
                    if k > 0 {
                        fact *= k as f64;
                    }
                    a * fact
                })
                .collect();
        Jet { center, values }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self) -> C64 {
        self.values[0]
    }

    /// `f^{(k)}(λ)`.
    pub fn derivative(&self, k: usize) -> C64 {
        self.values[k]
    }

    /// Normalized coefficients `f^{(k)}(λ)/k!`.
    pub fn taylor_coeffs(&self) -> Vec<C64> {
        let mut fact = 1.0;
        self.values
            .iter()
            .enumerate()
            .map(|(k, v)| {
                if k > 0 {
                    fact *= k as f64;
                }
                v / fact
            })
            .collect()
    }
}

/// Jet of order `m` of `f` at `λ` in the open unit disc.
pub fn eval_jet(f: &DiscMap, lambda: C64, m: usize) -> Result<Jet> {
    if m == 0 {
        return Err(Error::input("jet order must be at least 1"));
    }
    if !lambda.re.is_finite() || !lambda.im.is_finite() || lambda.norm() >= 1.0 {
        return Err(Error::input(format!(
            "jet center must lie in the open unit disc, got {lambda}"
        )));
    }
    Ok(Jet::from_taylor(lambda, &f.local_taylor(lambda, m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn square_jet() {
        let f = DiscMap::series(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let j = eval_jet(&f, c(0.5, 0.0), 3).unwrap();
        assert_eq!(j.values, vec![c(0.25, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
    }

    #[test]
    fn mobius_jet_at_zero() {
        let cc = c(0.3, -0.2);
        let theta: f64 = 0.7;
        let f = DiscMap::mobius(cc, theta).unwrap();
        let j = eval_jet(&f, c(0.0, 0.0), 2).unwrap();
        let ph = C64::from_polar(1.0, theta);
        assert!((j.values[0] + ph * cc).norm() < 1e-15);
        assert!((j.values[1] - ph * (1.0 - cc.norm_sqr())).norm() < 1e-15);
    }

    #[test]
    fn blaschke_at_origin_zero() {
        let theta: f64 = -1.1;
        let f = DiscMap::blaschke(vec![c(0.0, 0.0)], theta).unwrap();
        let ph = C64::from_polar(1.0, theta);
        let lam = c(0.2, 0.4);
        let j = eval_jet(&f, lam, 4).unwrap();
        assert!((j.values[0] - ph * lam).norm() < 1e-15);
        assert!((j.values[1] - ph).norm() < 1e-15);
        assert_eq!(&j.values[2..], &[c(0.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn mobius_derivatives_match_closed_form() {
        // f^{(k)}(λ) = e^{iθ} k! (1−|c|²) c̄^{k−1} / (1 − c̄λ)^{k+1} for k ≥ 1.
        let cc = c(-0.4, 0.25);
        let f = DiscMap::mobius(cc, 0.3).unwrap();
        let lam = c(0.1, -0.6);
        let j = eval_jet(&f, lam, 5).unwrap();
        let ph = C64::from_polar(1.0, 0.3);
        let den = 1.0 - cc.conj() * lam;
        let mut fact = 1.0;
        for k in 1..5 {
            fact *= k as f64;
            let want = ph * fact * (1.0 - cc.norm_sqr()) * cc.conj().powi(k as i32 - 1)
                / den.powi(k as i32 + 1);
            assert!((j.values[k] - want).norm() < 1e-12 * want.norm().max(1.0));
        }
    }

    #[test]
    fn outside_disc_rejected() {
        let f = DiscMap::identity();
        assert!(eval_jet(&f, c(1.0, 0.0), 2).is_err());
        assert!(eval_jet(&f, c(0.0, 0.0), 0).is_err());
    }
}
