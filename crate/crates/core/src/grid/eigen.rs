//! Dense eigensolving and hermiticity checks at desk scale.

use faer::Side;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linop::{inner, norm, LinOp, DENSE_LIMIT};
use super::StateVector;
use crate::error::{Error, Result};
use crate::matrix::C64;

/// Number of random vector pairs used by the matrix-free hermiticity probe.
pub const HERMITIAN_PROBES: usize = 20;
const PROBE_SEED: u64 = 0x5EED;
/// Above this dimension the hermiticity check switches to random probes.
const EXACT_CHECK_LIMIT: usize = 2048;

#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: C64,
    pub vector: StateVector,
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<C64> {
    let v: Vec<C64> = (0..dim).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let n = norm(&v);
    v.into_iter().map(|a| a / n).collect()
}

/// Deviation of `op` from its adjoint.
///
/// Exact max-entry norm of `A − A†` when the operator is small enough to
/// materialize; otherwise the max over random unit pairs of
/// `|⟨u, A v⟩ − ⟨A u, v⟩|`.
pub fn hermiticity_residual(op: &LinOp) -> f64 {
    if op.dim() <= EXACT_CHECK_LIMIT {
        let a = op.to_dense().expect("below dense limit");
        return a.hermiticity_residual();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..HERMITIAN_PROBES {
        let u = random_unit(&mut rng, op.dim());
        let v = random_unit(&mut rng, op.dim());
        let lhs = inner(&u, &op.apply(&v));
        let rhs = inner(&op.apply(&u), &v);
        worst = worst.max((lhs - rhs).norm());
    }
    worst
}

fn check_dense(op: &LinOp) -> Result<()> {
    if op.dim() > DENSE_LIMIT {
        return Err(Error::DimensionTooLarge { dim: op.dim(), limit: DENSE_LIMIT });
    }
    Ok(())
}

fn is_hermitian(op: &LinOp, scale: f64) -> bool {
    hermiticity_residual(op) <= 1e-10 * scale.max(1.0)
}

/// The `k` eigenpairs with the lowest real part, eigenvectors normalized.
///
/// Hermitian operators go through the self-adjoint solver and have exactly
/// real eigenvalues; everything else uses the general complex solver.
pub fn eigensolve(op: &LinOp, internal_dim: usize, k: usize) -> Result<Vec<EigenPair>> {
    check_dense(op)?;
    if k > op.dim() {
        return Err(Error::InvalidArgument(format!("requested {k} eigenpairs of a {}-dimensional operator", op.dim())));
    }
    if internal_dim == 0 || !op.dim().is_multiple_of(internal_dim) {
        return Err(Error::DimensionMismatch(format!(
            "internal dimension {internal_dim} does not divide {}",
            op.dim()
        )));
    }
    let dense = op.to_dense()?;
    let mat = dense.to_faer();
    let n = op.dim();
    let mut pairs: Vec<EigenPair> = if is_hermitian(op, dense.max_norm()) {
        let evd = mat.self_adjoint_eigen(Side::Lower).map_err(|_| Error::NonConvergence)?;
        let s = evd.S().column_vector();
        let u = evd.U();
        (0..k)
            .map(|j| EigenPair {
                value: C64::new(s[j].re, 0.0),
                vector: StateVector::new((0..n).map(|i| u[(i, j)]).collect(), internal_dim),
            })
            .collect()
    } else {
        let evd = mat.eigen().map_err(|_| Error::NonConvergence)?;
        let s = evd.S().column_vector();
        let u = evd.U();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| s[a].re.total_cmp(&s[b].re).then(s[a].im.total_cmp(&s[b].im)));
        order
            .into_iter()
            .take(k)
            .map(|j| {
                let v: Vec<C64> = (0..n).map(|i| u[(i, j)]).collect();
                let nv = norm(&v);
                EigenPair {
                    value: s[j],
                    vector: StateVector::new(v.into_iter().map(|a| a / nv).collect(), internal_dim),
                }
            })
            .collect()
    };
    pairs.sort_by(|a, b| a.value.re.total_cmp(&b.value.re));
    Ok(pairs)
}

/// All eigenvalues of a hermitian operator, ascending.
pub fn eigenvalues_hermitian(op: &LinOp) -> Result<Vec<f64>> {
    check_dense(op)?;
    let dense = op.to_dense()?;
    let residual = hermiticity_residual(op);
    if residual > 1e-10 * dense.max_norm().max(1.0) {
        return Err(Error::ConditionViolated(format!("operator is not hermitian (residual {residual:e})")));
    }
    let vals = dense.to_faer().self_adjoint_eigenvalues(Side::Lower).map_err(|_| Error::NonConvergence)?;
    Ok(vals)
}
