//! Jordan specifications, explicit chain-basis realizations, the block-merging perturbation
//! and the chain parametrization of non-derogatory fiber elements.

use std::ops::Range;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{inverse, CMatrix};
use crate::spectral::SymPoint;

/// Eigenvalue together with the sizes of its Jordan blocks, largest first.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanBlockGroup {
    pub eigenvalue: C64,
    pub sizes: Vec<usize>,
}

impl JordanBlockGroup {
    pub fn new(eigenvalue: C64, sizes: Vec<usize>) -> Self {
        JordanBlockGroup { eigenvalue, sizes }
    }

    pub fn multiplicity(&self) -> usize {
        self.sizes.iter().sum()
    }
}

/// Jordan data of an `n × n` matrix: distinct eigenvalues with descending block sizes.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanSpec {
    groups: Vec<JordanBlockGroup>,
}

impl JordanSpec {
    pub fn new(groups: Vec<JordanBlockGroup>) -> Result<Self> {
        for (i, g) in groups.iter().enumerate() {
            if !g.eigenvalue.re.is_finite() || !g.eigenvalue.im.is_finite() {
                return Err(Error::input("Jordan eigenvalues must be finite"));
            }
            if g.sizes.is_empty() || g.sizes.contains(&0) {
                return Err(Error::input(
                    "every eigenvalue needs at least one positive block size",
                ));
            }
            if g.sizes.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::input(
                    "block sizes must be sorted in descending order",
                ));
            }
            if groups[..i].iter().any(|h| h.eigenvalue == g.eigenvalue) {
                return Err(Error::input(
                    "eigenvalues of a Jordan spec must be pairwise distinct",
                ));
            }
        }
        let n: usize = groups.iter().map(JordanBlockGroup::multiplicity).sum();
        if n < 2 {
            return Err(Error::input(format!(
                "Jordan spec must describe a matrix of size at least 2, got {n}"
            )));
        }
        Ok(JordanSpec { groups })
    }

    /// One block per distinct value, of size equal to its multiplicity; equal values are grouped
    /// wherever they occur, in order of first appearance.
    pub fn nonderogatory_from_values(values: &[C64]) -> Result<Self> {
        let mut groups: Vec<JordanBlockGroup> = Vec::new();
        for &z in values {
            match groups.iter_mut().find(|g| g.eigenvalue == z) {
                Some(g) => g.sizes[0] += 1,
                None => groups.push(JordanBlockGroup::new(z, vec![1])),
            }
        }
        Self::new(groups)
    }

    pub fn groups(&self) -> &[JordanBlockGroup] {
        &self.groups
    }

    pub fn n(&self) -> usize {
        self.groups.iter().map(JordanBlockGroup::multiplicity).sum()
    }

    /// Eigenvalues repeated according to algebraic multiplicity.
    pub fn eigenvalues(&self) -> Vec<C64> {
        self.groups
            .iter()
            .flat_map(|g| std::iter::repeat_n(g.eigenvalue, g.multiplicity()))
            .collect()
    }

    pub fn is_nonderogatory(&self) -> bool {
        self.groups.iter().all(|g| g.sizes.len() == 1)
    }

    pub fn block_count(&self) -> usize {
        self.groups.iter().map(|g| g.sizes.len()).sum()
    }

    pub fn group_index(&self, lambda: C64) -> Option<usize> {
        self.groups.iter().position(|g| g.eigenvalue == lambda)
    }

    /// The Jordan matrix: `λ` on the diagonal and ones on the superdiagonal inside each chain.
    pub fn jordan_matrix(&self) -> CMatrix {
        let mut j = CMatrix::zeros(self.n());
        let mut col = 0;
        for g in &self.groups {
            for &size in &g.sizes {
                for t in 0..size {
                    j[(col + t, col + t)] = g.eigenvalue;
                    if t > 0 {
                        j[(col + t - 1, col + t)] = C64::new(1.0, 0.0);
                    }
                }
                col += size;
            }
        }
        j
    }

    /// Column range of block `block` of group `group` in the chain basis.
    pub fn chain_columns(&self, group: usize, block: usize) -> Range<usize> {
        let before: usize = self.groups[..group]
            .iter()
            .map(JordanBlockGroup::multiplicity)
            .sum();
        let start = before + self.groups[group].sizes[..block].iter().sum::<usize>();
        start..start + self.groups[group].sizes[block]
    }
}

/// A matrix given by a Jordan spec and an explicit chain basis, `A = S·J·S⁻¹`.
///
/// The inverse of the basis is carried along and updated by the same column operations as
/// the basis, so realizations obtained by block merging stay accurate even though their
/// chain bases become badly scaled.
#[derive(Clone, Debug)]
pub struct JordanRealization {
    spec: JordanSpec,
    basis: CMatrix,
    basis_inv: CMatrix,
}

impl JordanRealization {
    pub fn new(spec: JordanSpec, basis: CMatrix) -> Result<Self> {
        if basis.n() != spec.n() {
            return Err(Error::input(format!(
                "basis is {}×{} but the Jordan spec has size {}",
                basis.n(),
                basis.n(),
                spec.n()
            )));
        }
        let basis_inv = inverse(&basis)
            .map_err(|_| Error::input("chain basis is singular to working precision"))?;
        Ok(JordanRealization {
            spec,
            basis,
            basis_inv,
        })
    }

    pub fn spec(&self) -> &JordanSpec {
        &self.spec
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn basis_inverse(&self) -> &CMatrix {
        &self.basis_inv
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    /// `S·J·S⁻¹`.
    pub fn realize(&self) -> CMatrix {
        &self.basis * &(&self.spec.jordan_matrix() * &self.basis_inv)
    }

    /// `S·X·S⁻¹` for a matrix `X` written in chain coordinates.
    pub fn from_chain_coords(&self, x: &CMatrix) -> CMatrix {
        &self.basis * &(x * &self.basis_inv)
    }

    /// `‖S‖_F·‖S⁻¹‖_F`, the distortion of the chain basis.
    pub fn distortion(&self) -> f64 {
        self.basis.frobenius_norm() * self.basis_inv.frobenius_norm()
    }
}

/// Assembles `A` with `A·v_t = λ·v_t + v_{t−1}` inside each chain and `A·v = λ·v` at chain starts.
pub fn jordan_assemble(spec: JordanSpec, basis: CMatrix) -> Result<(CMatrix, JordanRealization)> {
    let r = JordanRealization::new(spec, basis)?;
    Ok((r.realize(), r))
}

/// One step of the density construction: fuses the two largest blocks at `lambda`.
///
/// With `v_1..v_k` the largest chain and `w_1..w_l` the second largest, the new matrix `B`
/// agrees with `A` on every basis vector except `B·v_1 = λ·v_1 + ε·w_l`. The chain
/// `w_1, …, w_l, v_1/ε, …, v_k/ε` is then a single Jordan chain of length `k + l` for `B`.
pub fn lemma5_perturb(r: &JordanRealization, lambda: C64, eps: f64) -> Result<JordanRealization> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::input(format!(
            "perturbation size must be positive, got {eps}"
        )));
    }
    let spec = r.spec();
    let gi = spec
        .group_index(lambda)
        .ok_or_else(|| Error::input(format!("{lambda} is not an eigenvalue of the realization")))?;
    let group = &spec.groups()[gi];
    if group.sizes.len() < 2 {
        return Err(Error::input(format!(
            "eigenvalue {lambda} has a single Jordan block; nothing to merge"
        )));
    }
    let v_cols = spec.chain_columns(gi, 0);
    let w_cols = spec.chain_columns(gi, 1);
    let n = spec.n();

    // New column order: everything before the group, fused chain, remaining blocks, rest.
    let group_cols = v_cols.start..spec.chain_columns(gi, group.sizes.len() - 1).end;
    let mut order: Vec<(usize, f64)> = (0..group_cols.start).map(|c| (c, 1.0)).collect();
    order.extend(w_cols.clone().map(|c| (c, 1.0)));
    order.extend(v_cols.clone().map(|c| (c, 1.0 / eps)));
    order.extend((w_cols.end..group_cols.end).map(|c| (c, 1.0)));
    order.extend((group_cols.end..n).map(|c| (c, 1.0)));

    let mut basis = CMatrix::zeros(n);
    let mut basis_inv = CMatrix::zeros(n);
    for (new_c, &(old_c, s)) in order.iter().enumerate() {
        for i in 0..n {
            basis[(i, new_c)] = r.basis[(i, old_c)] * s;
            basis_inv[(new_c, i)] = r.basis_inv[(old_c, i)] / s;
        }
    }

    let mut groups = spec.groups().to_vec();
    let sizes = &mut groups[gi].sizes;
    let fused = sizes[0] + sizes[1];
    sizes.drain(0..2);
    sizes.insert(0, fused);

    Ok(JordanRealization {
        spec: JordanSpec::new(groups)?,
        basis,
        basis_inv,
    })
}

/// Repeats [`lemma5_perturb`] (two largest blocks first, eigenvalues in spec order) until the
/// realization is non-derogatory. Returns every intermediate realization, starting with `r`.
pub fn lemma5_merge_all(r: &JordanRealization, eps: f64) -> Result<Vec<JordanRealization>> {
    let mut path = vec![r.clone()];
    loop {
        let current = path.last().expect("path starts non-empty");
        let Some(g) = current.spec().groups().iter().find(|g| g.sizes.len() >= 2) else {
            return Ok(path);
        };
        let next = lemma5_perturb(current, g.eigenvalue, eps)?;
        path.push(next);
    }
}

/// The non-derogatory element of `T_{π_n(ζ)}` determined by `basis`: one chain per distinct
/// `ζ`, of length equal to its multiplicity.
pub fn lemma6_sample(zetas: &[C64], basis: &CMatrix) -> Result<CMatrix> {
    Ok(lemma6_realization(zetas, basis)?.realize())
}

pub fn lemma6_realization(zetas: &[C64], basis: &CMatrix) -> Result<JordanRealization> {
    if let Some(z) = zetas.iter().find(|z| z.norm().is_nan() || z.norm() >= 1.0) {
        return Err(Error::input(format!(
            "fiber parameters must lie in the open unit disc, got {z}"
        )));
    }
    let spec = JordanSpec::nonderogatory_from_values(zetas)?;
    JordanRealization::new(spec, basis.clone())
}

/// [`lemma6_sample`] for a point `z` of `G_n`, through the roots of its polynomial.
pub fn lemma6_sample_from_point(z: &SymPoint, basis: &CMatrix) -> Result<CMatrix> {
    let zetas = z.roots(crate::linalg::DEFAULT_ROOT_TOL)?;
    lemma6_sample(&zetas, basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{pi_n, sigma};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn spec_validation() {
        let g = |l: f64, s: Vec<usize>| JordanBlockGroup::new(c(l, 0.0), s);
        assert!(JordanSpec::new(vec![g(0.1, vec![1, 2])]).is_err());
        assert!(JordanSpec::new(vec![g(0.1, vec![1]), g(0.1, vec![1])]).is_err());
        assert!(JordanSpec::new(vec![g(0.1, vec![1])]).is_err());
        assert!(JordanSpec::new(vec![g(0.1, vec![])]).is_err());
        assert!(JordanSpec::new(vec![g(0.1, vec![2, 1]), g(0.2, vec![1])]).is_ok());
    }

    #[test]
    fn assemble_bidiagonal_example() {
        let spec = JordanSpec::new(vec![
            JordanBlockGroup::new(c(0.5, 0.0), vec![2]),
            JordanBlockGroup::new(c(-0.3, 0.0), vec![1]),
        ])
        .unwrap();
        let (a, _) = jordan_assemble(spec, CMatrix::identity(3)).unwrap();
        let want = CMatrix::from_real(&[&[0.5, 1.0, 0.0], &[0.0, 0.5, 0.0], &[0.0, 0.0, -0.3]]);
        assert_eq!(a, want);
        let z = sigma(&a);
        for (g, w) in z.coords().iter().zip([0.7, -0.05, -0.075]) {
            assert!((g - c(w, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn singular_basis_is_rejected() {
        let spec = JordanSpec::nonderogatory_from_values(&[c(0.1, 0.0), c(0.2, 0.0)]).unwrap();
        let s = CMatrix::from_real(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(matches!(jordan_assemble(spec, s), Err(Error::Input(_))));
    }

    #[test]
    fn merge_zero_matrix() {
        let spec = JordanSpec::new(vec![JordanBlockGroup::new(c(0.0, 0.0), vec![1, 1])]).unwrap();
        let r = JordanRealization::new(spec, CMatrix::identity(2)).unwrap();
        let b = lemma5_perturb(&r, c(0.0, 0.0), 0.1).unwrap();
        assert_eq!(b.spec().groups()[0].sizes, vec![2]);
        let m = b.realize();
        let want = CMatrix::elementary(2, 1, 0).scale_real(0.1);
        assert!(m.max_abs_diff(&want) < 1e-16);
    }

    #[test]
    fn merge_two_plus_one() {
        let lambda = c(0.3, 0.0);
        let spec = JordanSpec::new(vec![JordanBlockGroup::new(lambda, vec![2, 1])]).unwrap();
        let r = JordanRealization::new(spec, CMatrix::identity(3)).unwrap();
        let b = lemma5_perturb(&r, lambda, 1e-3).unwrap();
        assert_eq!(b.spec().groups()[0].sizes, vec![3]);
        let bm = b.realize();
        // B differs from A only in column v_1 = e_1, which gains ε·w_l = ε·e_3.
        let mut want = r.realize();
        want[(2, 0)] = c(1e-3, 0.0);
        assert!(bm.max_abs_diff(&want) < 1e-15);
        // Fused 3-chain: det(λI − B) = (λ − 0.3)³.
        let s = sigma(&bm);
        let expected = pi_n(&[lambda; 3]).unwrap();
        assert!(s.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn merge_rejects_bad_arguments() {
        let spec = JordanSpec::nonderogatory_from_values(&[c(0.1, 0.0), c(0.2, 0.0)]).unwrap();
        let r = JordanRealization::new(spec, CMatrix::identity(2)).unwrap();
        assert!(lemma5_perturb(&r, c(0.1, 0.0), 0.1).is_err());
        assert!(lemma5_perturb(&r, c(0.7, 0.0), 0.1).is_err());
        let spec = JordanSpec::new(vec![JordanBlockGroup::new(c(0.0, 0.0), vec![1, 1])]).unwrap();
        let r = JordanRealization::new(spec, CMatrix::identity(2)).unwrap();
        assert!(lemma5_perturb(&r, c(0.0, 0.0), 0.0).is_err());
        assert!(lemma5_perturb(&r, c(0.0, 0.0), -1.0).is_err());
    }

    #[test]
    fn lemma6_examples() {
        let z = [c(0.5, 0.0), c(0.5, 0.0), c(-0.3, 0.0)];
        let a = lemma6_sample(&z, &CMatrix::identity(3)).unwrap();
        let s = sigma(&a);
        for (g, w) in s.coords().iter().zip([0.7, -0.05, -0.075]) {
            assert!((g - c(w, 0.0)).norm() < 1e-15);
        }
        let zero = lemma6_sample(&[c(0.0, 0.0); 4], &CMatrix::identity(4)).unwrap();
        assert_eq!(zero, CMatrix::jordan_block(4, c(0.0, 0.0)));
        assert!(lemma6_sample(&[c(1.0, 0.0), c(0.0, 0.0)], &CMatrix::identity(2)).is_err());
    }
}
