//! The nilpotent cone `T_0`: a linearly independent spanning family and the two-vector
//! witness built on a Jordan chain of a nonzero nilpotent matrix.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{inverse, null_space_scaled, vec_norm, CMatrix, DEFAULT_RANK_TOL};
use crate::spectral::sigma;

/// The `n² − n` off-diagonal elementary matrices followed by the nilpotent matrix with
/// `a_{11} = 1, a_{12} = −1, a_{21} = 1, a_{22} = −1`.
pub fn t0_spanning_set(n: usize) -> Result<Vec<CMatrix>> {
    if n < 2 {
        return Err(Error::input(format!(
            "dimension must be at least 2, got {n}"
        )));
    }
    let mut out = Vec::with_capacity(n * n - n + 1);
    for r in 0..n {
        for s in 0..n {
            if r != s {
                out.push(CMatrix::elementary(n, r, s));
            }
        }
    }
    let mut m = CMatrix::zeros(n);
    m[(0, 0)] = C64::new(1.0, 0.0);
    m[(0, 1)] = C64::new(-1.0, 0.0);
    m[(1, 0)] = C64::new(1.0, 0.0);
    m[(1, 1)] = C64::new(-1.0, 0.0);
    out.push(m);
    Ok(out)
}

/// Relative tolerance for `σ(A) ≈ 0` in [`lemma4_witness`]: `|σ_j| ≤ tol·‖A‖_F^j`.
pub const NILPOTENT_TOL: f64 = 1e-8;

/// Output of [`lemma4_witness`].
#[derive(Clone, Debug)]
pub struct Lemma4Witness {
    /// `V` with `V·v_2 = v_1`, `V·v_1 = v_2` and `V·v_j = 0` for `j ≥ 3`.
    pub v: CMatrix,
    /// Columns `v_1, …, v_n`, where `A·v_2 = v_1` and `A·v_1 = 0`.
    pub basis: CMatrix,
}

impl Lemma4Witness {
    pub fn v1(&self) -> Vec<C64> {
        self.basis.column(0)
    }

    pub fn v2(&self) -> Vec<C64> {
        self.basis.column(1)
    }
}

/// Builds the witness `V` for a nonzero nilpotent `A`.
///
/// `v_2` is the normalized null vector of `A²` maximizing `‖A·v‖` (lowest index on ties),
/// `v_1 = A·v_2`, and the basis is completed by unit vectors chosen greedily by largest
/// residual against the span already built. Then `(A + ζV)²·v_j = ζ(1+ζ)·v_j` for `j = 1, 2`.
pub fn lemma4_witness(a: &CMatrix) -> Result<Lemma4Witness> {
    let n = a.n();
    let norm = a.frobenius_norm();
    if norm == 0.0 {
        return Err(Error::input("the witness needs a nonzero nilpotent matrix"));
    }
    let z = sigma(a);
    if let Some((j, zj)) = z
        .coords()
        .iter()
        .enumerate()
        .find(|(j, zj)| zj.norm() > NILPOTENT_TOL * norm.powi(*j as i32 + 1))
    {
        return Err(Error::input(format!(
            "matrix is not nilpotent: σ_{} = {zj}",
            j + 1
        )));
    }

    let a2 = a * a;
    let mut best: Option<(f64, Vec<C64>)> = None;
    for cand in null_space_scaled(&a2, DEFAULT_RANK_TOL, norm * norm) {
        let len = vec_norm(&cand);
        let v: Vec<C64> = cand.iter().map(|x| x / len).collect();
        let image = vec_norm(&a.matvec(&v));
        if best.as_ref().is_none_or(|(b, _)| image > *b) {
            best = Some((image, v));
        }
    }
    let (image, v2) = best.ok_or_else(|| {
        Error::numerical("A² has trivial null space; matrix is not nilpotent", 0.0)
    })?;
    if image <= DEFAULT_RANK_TOL * norm {
        return Err(Error::numerical(
            "no Jordan chain of length ≥ 2 found in the null space of A²",
            image,
        ));
    }
    let v1 = a.matvec(&v2);

    let mut cols = vec![v1.clone(), v2.clone()];
    let mut ortho: Vec<Vec<C64>> = Vec::new();
    for v in [&v1, &v2] {
        push_orthonormal(&mut ortho, v);
    }
    while cols.len() < n {
        let mut pick: Option<(usize, f64, Vec<C64>)> = None;
        for k in 0..n {
            let mut e = vec![C64::new(0.0, 0.0); n];
            e[k] = C64::new(1.0, 0.0);
            let r = residual(&ortho, &e);
            let rn = vec_norm(&r);
            if pick.as_ref().is_none_or(|(_, b, _)| rn > *b) {
                pick = Some((k, rn, e));
            }
        }
        let (_, _, e) = pick.expect("n ≥ 2 candidates");
        push_orthonormal(&mut ortho, &e);
        cols.push(e);
    }
    let basis = CMatrix::from_columns(&cols)?;
    let mut swap = CMatrix::zeros(n);
    swap[(0, 1)] = C64::new(1.0, 0.0);
    swap[(1, 0)] = C64::new(1.0, 0.0);
    let v = &basis * &(&swap * &inverse(&basis)?);
    Ok(Lemma4Witness { v, basis })
}

fn residual(ortho: &[Vec<C64>], v: &[C64]) -> Vec<C64> {
    let mut r = v.to_vec();
    for q in ortho {
        let proj: C64 = q.iter().zip(&r).map(|(a, b)| a.conj() * b).sum();
        for (ri, qi) in r.iter_mut().zip(q) {
            *ri -= proj * qi;
        }
    }
    r
}

fn push_orthonormal(ortho: &mut Vec<Vec<C64>>, v: &[C64]) {
    let r = residual(ortho, v);
    let len = vec_norm(&r);
    if len > 0.0 {
        ortho.push(r.into_iter().map(|x| x / len).collect());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use crate::linalg::RectMatrix;
    use crate::spectral::spectral_radius;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn spanning_set_n2() {
        let s = t0_spanning_set(2).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[0], CMatrix::elementary(2, 0, 1));
        assert_eq!(s[1], CMatrix::elementary(2, 1, 0));
        assert_eq!(s[2], CMatrix::from_real(&[&[1.0, -1.0], &[1.0, -1.0]]));
        for m in &s {
            assert_eq!(spectral_radius(m).unwrap(), 0.0);
            assert!(sigma(m).coords().iter().all(|z| *z == c(0.0, 0.0)));
        }
        let rows: Vec<Vec<C64>> = s.iter().map(CMatrix::vectorize).collect();
        assert_eq!(
            rank(
                &RectMatrix::from_row_vectors(&rows).unwrap(),
                DEFAULT_RANK_TOL
            ),
            3
        );
    }

    #[test]
    fn spanning_set_n4_rank() {
        let s = t0_spanning_set(4).unwrap();
        assert_eq!(s.len(), 13);
        let rows: Vec<Vec<C64>> = s.iter().map(CMatrix::vectorize).collect();
        assert_eq!(
            rank(
                &RectMatrix::from_row_vectors(&rows).unwrap(),
                DEFAULT_RANK_TOL
            ),
            13
        );
        assert!(t0_spanning_set(1).is_err());
    }

    #[test]
    fn canonical_witness() {
        let a = CMatrix::elementary(2, 0, 1);
        let w = lemma4_witness(&a).unwrap();
        assert_eq!(w.basis, CMatrix::identity(2));
        assert_eq!(w.v, CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]));
        for zeta in [c(0.25, 0.0), c(-0.1, 0.3), c(0.0, 0.5)] {
            let m = &a + &w.v.scale(zeta);
            let rho = spectral_radius(&m).unwrap();
            let bound = zeta.norm() * (C64::new(1.0, 0.0) + zeta).norm();
            assert!((rho * rho - bound).abs() < 1e-14);
        }
    }

    #[test]
    fn witness_rejects_bad_input() {
        assert!(matches!(
            lemma4_witness(&CMatrix::zeros(3)),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            lemma4_witness(&CMatrix::identity(3)),
            Err(Error::Input(_))
        ));
    }
}
