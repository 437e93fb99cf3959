//! Jordan structure from rank sequences, non-derogatory tests and fiber tangent dimensions.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, rank, rank_scaled, CMatrix, DEFAULT_RANK_TOL, DEFAULT_ROOT_TOL};
use crate::spectral::sigma_jacobian;

/// Tolerances for structure detection. `cluster_tol = None` means `1e−7 · max(1, ‖A‖_F)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StructureTols {
    pub cluster_tol: Option<f64>,
    pub rank_tol: f64,
}

impl Default for StructureTols {
    fn default() -> Self {
        StructureTols {
            cluster_tol: None,
            rank_tol: DEFAULT_RANK_TOL,
        }
    }
}

impl StructureTols {
    pub fn new(cluster_tol: f64, rank_tol: f64) -> Self {
        StructureTols {
            cluster_tol: Some(cluster_tol),
            rank_tol,
        }
    }

    fn cluster_tol_for(&self, a: &CMatrix) -> f64 {
        self.cluster_tol
            .unwrap_or_else(|| 1e-7 * a.frobenius_norm().max(1.0))
    }
}

/// One eigenvalue cluster with its Weyr characteristic.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenCluster {
    pub center: C64,
    pub algebraic_mult: usize,
    /// `w_k = rank((A−λI)^{k−1}) − rank((A−λI)^k)`, the number of blocks of size ≥ k.
    pub weyr: Vec<usize>,
    /// Jordan block sizes, descending; the conjugate partition of `weyr`.
    pub block_sizes: Vec<usize>,
}

impl EigenCluster {
    pub fn geometric_mult(&self) -> usize {
        self.weyr.first().copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenStructure {
    pub clusters: Vec<EigenCluster>,
}

impl EigenStructure {
    pub fn is_nonderogatory(&self) -> bool {
        self.clusters.iter().all(|c| c.block_sizes.len() == 1)
    }

    /// Largest block size at each cluster center.
    pub fn hermite_nodes(&self) -> Vec<(C64, usize)> {
        self.clusters
            .iter()
            .map(|c| (c.center, c.block_sizes[0]))
            .collect()
    }
}

/// Conjugate partition of a non-increasing sequence.
pub(crate) fn conjugate_partition(parts: &[usize]) -> Vec<usize> {
    let top = parts.first().copied().unwrap_or(0);
    (0..top)
        .map(|b| parts.iter().filter(|&&p| p > b).count())
        .collect()
}

/// Groups values whose distance is below `tol`, by transitive closure.
pub(crate) fn cluster_values(values: &[C64], tol: f64) -> Vec<Vec<C64>> {
    let mut clusters: Vec<Vec<C64>> = Vec::new();
    for &v in values {
        let hits: Vec<usize> = clusters
            .iter()
            .enumerate()
            .filter(|(_, cl)| cl.iter().any(|w| (w - v).norm() < tol))
            .map(|(i, _)| i)
            .collect();
        match hits.split_first() {
            None => clusters.push(vec![v]),
            Some((&first, rest)) => {
                for &i in rest.iter().rev() {
                    let moved = clusters.remove(i);
                    clusters[first].extend(moved);
                }
                clusters[first].push(v);
            }
        }
    }
    clusters
}

/// Eigenvalue clusters and Jordan block sizes of `A` recovered from rank sequences.
pub fn eigen_structure(a: &CMatrix, tols: StructureTols) -> Result<EigenStructure> {
    let n = a.n();
    let eig = eigenvalues(a, DEFAULT_ROOT_TOL)?;
    let groups = cluster_values(&eig, tols.cluster_tol_for(a));
    let mut clusters = Vec::with_capacity(groups.len());
    for g in groups {
        let mult = g.len();
        let center = g.iter().sum::<C64>() / mult as f64;
        let shifted = a.shift(-center);
        let mut power = CMatrix::identity(n);
        let mut prev_rank = n;
        let mut weyr = Vec::new();
        let base = shifted.frobenius_norm().max(a.frobenius_norm());
        for k in 1..=mult {
            power = &power * &shifted;
            let r = rank_scaled(&power, tols.rank_tol, base.powi(k as i32));
            if r >= prev_rank {
                break;
            }
            weyr.push(prev_rank - r);
            prev_rank = r;
            if r + mult <= n {
                break;
            }
        }
        let nullity = n - prev_rank;
        if nullity != mult || weyr.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::numerical(
                format!(
                    "inconsistent Jordan structure at {center}: algebraic multiplicity {mult} \
                     but rank sequence gives {nullity}; try a larger cluster tolerance"
                ),
                nullity.abs_diff(mult) as f64,
            ));
        }
        let block_sizes = conjugate_partition(&weyr);
        clusters.push(EigenCluster {
            center,
            algebraic_mult: mult,
            weyr,
            block_sizes,
        });
    }
    Ok(EigenStructure { clusters })
}

/// Every eigenvalue carries a single Jordan block, i.e. `rank(A − λI) = n − 1`.
pub fn is_nonderogatory(a: &CMatrix, tols: StructureTols) -> Result<bool> {
    Ok(eigen_structure(a, tols)?.is_nonderogatory())
}

/// Non-derogatory test through the Jacobian: `rank σ′(A) = n`.
pub fn nonderogatory_via_jacobian(a: &CMatrix, rank_tol: f64) -> bool {
    sigma_jacobian(a).rank(rank_tol) == a.n()
}

/// `n² − rank σ′(A)`: the dimension of the fiber `T_{σ(A)}` at a regular point.
pub fn fiber_tangent_dim(a: &CMatrix) -> usize {
    fiber_tangent_dim_tol(a, DEFAULT_RANK_TOL)
}

pub fn fiber_tangent_dim_tol(a: &CMatrix, rank_tol: f64) -> usize {
    let n = a.n();
    n * n - sigma_jacobian(a).rank(rank_tol)
}

/// Geometric multiplicity `n − rank(A − λI)` of a known eigenvalue.
pub fn geometric_multiplicity(a: &CMatrix, lambda: C64, rank_tol: f64) -> usize {
    a.n() - rank(&a.shift(-lambda), rank_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibers::jordan::{jordan_assemble, JordanBlockGroup, JordanSpec};
    use crate::linalg::inverse;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn conjugate_partitions() {
        assert_eq!(conjugate_partition(&[2, 1]), vec![2, 1]);
        assert_eq!(conjugate_partition(&[3]), vec![1, 1, 1]);
        assert_eq!(conjugate_partition(&[1, 1, 1]), vec![3]);
        assert_eq!(conjugate_partition(&[2, 2, 1]), vec![3, 2]);
    }

    #[test]
    fn diagonal_distinct() {
        let a = CMatrix::diag(&[c(0.1, 0.0), c(0.2, 0.0), c(0.3, 0.0)]);
        let s = eigen_structure(&a, StructureTols::default()).unwrap();
        assert_eq!(s.clusters.len(), 3);
        assert!(s.clusters.iter().all(|cl| cl.block_sizes == vec![1]));
        assert!(s.is_nonderogatory());
    }

    #[test]
    fn single_jordan_block() {
        let s = eigen_structure(
            &CMatrix::jordan_block(3, c(0.5, 0.0)),
            StructureTols::default(),
        )
        .unwrap();
        assert_eq!(s.clusters.len(), 1);
        assert_eq!(s.clusters[0].block_sizes, vec![3]);
        assert_eq!(s.clusters[0].weyr, vec![1, 1, 1]);
        for n in 2..7 {
            let j = CMatrix::jordan_block(n, c(-0.2, 0.4));
            assert!(is_nonderogatory(&j, StructureTols::default()).unwrap());
        }
    }

    #[test]
    fn conjugated_two_plus_one() {
        let spec = JordanSpec::new(vec![JordanBlockGroup::new(c(0.5, 0.0), vec![2, 1])]).unwrap();
        let s = CMatrix::from_rows(&[
            vec![c(1.0, 0.2), c(0.3, 0.0), c(-0.5, 0.1)],
            vec![c(0.0, -0.4), c(1.2, 0.0), c(0.2, 0.2)],
            vec![c(0.6, 0.0), c(-0.1, 0.3), c(0.9, 0.0)],
        ])
        .unwrap();
        assert!(inverse(&s).is_ok());
        let (a, _) = jordan_assemble(spec, s).unwrap();
        let st = eigen_structure(&a, StructureTols::default()).unwrap();
        assert_eq!(st.clusters.len(), 1);
        assert_eq!(st.clusters[0].block_sizes, vec![2, 1]);
        assert!((st.clusters[0].center - c(0.5, 0.0)).norm() < 1e-6);
        assert!(!st.is_nonderogatory());
    }

    #[test]
    fn nonderogatory_examples() {
        let tols = StructureTols::default();
        assert!(is_nonderogatory(&CMatrix::diag(&[c(0.1, 0.0), c(-0.4, 0.2)]), tols).unwrap());
        let rep = CMatrix::diag(&[c(0.5, 0.0), c(0.5, 0.0)]);
        assert!(!is_nonderogatory(&rep, tols).unwrap());
        assert!(!nonderogatory_via_jacobian(&rep, DEFAULT_RANK_TOL));
        assert!(nonderogatory_via_jacobian(
            &CMatrix::jordan_block(2, c(0.0, 0.0)),
            DEFAULT_RANK_TOL
        ));
        assert!(!nonderogatory_via_jacobian(
            &CMatrix::zeros(2),
            DEFAULT_RANK_TOL
        ));
    }

    #[test]
    fn tangent_dimensions() {
        assert_eq!(fiber_tangent_dim(&CMatrix::jordan_block(2, c(0.0, 0.0))), 2);
        assert_eq!(fiber_tangent_dim(&CMatrix::zeros(2)), 3);
        let d = CMatrix::diag(&[c(0.1, 0.0), c(0.5, 0.0), c(-0.6, 0.0)]);
        assert_eq!(fiber_tangent_dim(&d), 6);
    }
}
