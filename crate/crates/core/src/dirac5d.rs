//! Stationary five-dimensional Dirac problem after dimensional reduction.
//!
//! States live on `grid ⊗ C⁴` with the upper two components `χ₁` and the
//! lower two `χ₂`. The operator is
//!
//! ```text
//! H_D = [[ m,  K ],
//!        [ K†, −m ]],   K = σ^i (p_i + eA_i) + ieΛ
//! ```
//!
//! so that eliminating `χ₂` at large `m` leaves `ε ≈ m + KK†/2m` on `χ₁`.

use crate::clifford::sigmas;
use crate::error::{Error, Result};
use crate::fieldexpr::Coord;
use crate::fields::Potential5D;
use crate::grid::{covariant_momentum, eigensolve, multiply_op, Grid, LinOp};
use crate::matrix::{ComplexMatrix, I};

/// Pauli energies below this are treated as zero-momentum levels.
pub const ZERO_LEVEL_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct DiracSpec {
    pub potential: Potential5D,
    pub grid: Grid,
}

impl DiracSpec {
    pub fn new(potential: Potential5D, grid: Grid) -> Result<Self> {
        if !potential.is_static || !potential.w_independent {
            return Err(Error::ConditionViolated(
                "the reduced Dirac problem needs a static, w-independent potential".into(),
            ));
        }
        if !potential.a0().is_zero() {
            return Err(Error::ConditionViolated("the reduced Dirac problem needs A0 = 0".into()));
        }
        Ok(Self { potential, grid })
    }

    pub fn m(&self) -> f64 {
        self.potential.mass
    }

    pub fn with_mass(&self, m: f64) -> Result<Self> {
        let mut p = self.potential.clone();
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::InvalidArgument(format!("mass must be positive, got {m}")));
        }
        p.mass = m;
        Ok(Self { potential: p, grid: self.grid.clone() })
    }
}

/// `p_i + eA_i` for each usual axis; axes without a grid direction keep only `eA_i`.
fn covariant_momenta(spec: &DiracSpec) -> Result<[LinOp; 3]> {
    let (g, p) = (&spec.grid, &spec.potential);
    let e = p.charge;
    let mut out = Vec::with_capacity(3);
    for i in 0..3 {
        let a = p.vector(i);
        out.push(match g.axis_of(Coord::spatial(i)) {
            Some(axis) => covariant_momentum(g, axis, a, -e, 0.0)?,
            None => multiply_op(g, &a.scale(e), 0.0)?,
        });
    }
    Ok(out.try_into().expect("three axes"))
}

/// The off-diagonal block `K` acting on `grid ⊗ C²`.
pub fn k_block(spec: &DiracSpec) -> Result<LinOp> {
    let e = spec.potential.charge;
    let mut terms: Vec<LinOp> =
        covariant_momenta(spec)?.iter().zip(sigmas().iter()).map(|(d, s)| LinOp::kron(d, s)).collect();
    let lambda = multiply_op(&spec.grid, spec.potential.lambda(), 0.0)?;
    terms.push(LinOp::kron(&lambda, &ComplexMatrix::identity(2).scale(I * e)));
    Ok(LinOp::sum(terms))
}

fn embed(tl: &ComplexMatrix, tr: &ComplexMatrix, bl: &ComplexMatrix, br: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(4, |i, j| {
        let (ii, jj) = (i % 2, j % 2);
        match (i / 2, j / 2) {
            (0, 0) => tl[(ii, jj)],
            (0, 1) => tr[(ii, jj)],
            (1, 0) => bl[(ii, jj)],
            _ => br[(ii, jj)],
        }
    })
}

pub fn h_dirac_reduced(spec: &DiracSpec) -> Result<LinOp> {
    let (m, e) = (spec.m(), spec.potential.charge);
    let z = ComplexMatrix::zeros(2);
    let id = ComplexMatrix::identity(2);
    let sites = spec.grid.num_sites();
    let mut terms = vec![LinOp::kron(&LinOp::identity(sites), &embed(&id.scale_real(m), &z, &z, &id.scale_real(-m)))];
    for (d, s) in covariant_momenta(spec)?.iter().zip(sigmas().iter()) {
        terms.push(LinOp::kron(d, &embed(&z, s, s, &z)));
    }
    let lambda = multiply_op(&spec.grid, spec.potential.lambda(), 0.0)?;
    let ie = id.scale(I * e);
    terms.push(LinOp::kron(&lambda, &embed(&z, &ie, &-&ie, &z)));
    Ok(LinOp::sum(terms))
}

/// `KK†/2m` on `grid ⊗ C²`, the Pauli operator left after eliminating `χ₂`.
pub fn pauli_reference(spec: &DiracSpec) -> Result<LinOp> {
    let k = k_block(spec)?;
    Ok(k.compose(&k.adjoint()).scale_real(1.0 / (2.0 * spec.m())))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapRecord {
    pub m: f64,
    /// Index of the compared level in the sorted positive branch.
    pub level: usize,
    pub dirac: f64,
    pub pauli: f64,
    /// `|(ε_D − m) − E_P|`.
    pub gap: f64,
    /// `‖χ₂‖ / ‖χ₁‖` of the compared Dirac eigenvector.
    pub weak_ratio: f64,
}

/// Positive-branch eigenpairs of `H_D` and the spectrum of `KK†/2m` at one mass.
pub fn compare_at_mass(spec: &DiracSpec) -> Result<GapRecord> {
    let m = spec.m();
    let h = h_dirac_reduced(spec)?;
    let pairs = eigensolve(&h, 4, h.dim())?;
    let positive: Vec<_> = pairs.into_iter().filter(|p| p.value.re > 0.0).collect();
    if let Some(low) = positive.first() {
        if low.value.re <= 0.5 * m {
            return Err(Error::ConditionViolated(format!(
                "lowest positive eigenvalue {} is below m/2 = {}",
                low.value.re,
                0.5 * m
            )));
        }
    }
    let pauli = crate::grid::eigenvalues_hermitian(&pauli_reference(spec)?)?;
    let level = pauli
        .iter()
        .position(|&e| e > ZERO_LEVEL_TOL)
        .ok_or_else(|| Error::ConditionViolated("reference spectrum has no nonzero level".into()))?;
    let pair = positive.get(level).ok_or(Error::NonConvergence)?;
    let dirac = pair.value.re;
    let chi1 = pair.vector.component_norm(0..2);
    let chi2 = pair.vector.component_norm(2..4);
    Ok(GapRecord {
        m,
        level,
        dirac,
        pauli: pauli[level],
        gap: ((dirac - m) - pauli[level]).abs(),
        weak_ratio: chi2 / chi1,
    })
}

/// Gap between the Dirac positive branch and the Pauli reference at each mass.
///
/// The compared state is the lowest level whose Pauli energy is nonzero:
/// since `H_D² = diag(m² + KK†, m² + K†K)`, levels with `KK† = 0` sit at
/// exactly `ε = m` and carry no information.
pub fn pauli_vs_dirac_gap(spec: &DiracSpec, masses: &[f64]) -> Result<Vec<GapRecord>> {
    if masses.len() < 2 {
        return Err(Error::InvalidArgument("need at least two masses".into()));
    }
    if masses.iter().any(|&m| m.is_nan() || m <= 0.0) || masses.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("masses must be positive and increasing".into()));
    }
    masses.iter().map(|&m| compare_at_mass(&spec.with_mass(m)?)).collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

/// Smallest `C` with `weak_ratio ≤ C/m` over the records.
pub fn weak_component_constant(records: &[GapRecord]) -> f64 {
    records.iter().map(|r| r.weak_ratio * r.m).fold(0.0, f64::max)
}
