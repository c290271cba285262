//! Gamma-matrix representations, the fermionic variables of the
//! supersymmetric model, and the spin operators built from them.
//!
//! Two 4×4 representations are provided:
//!
//! * [`lorentz_gammas`]: Γ^μ, μ = 0..4, with metric diag(+,−,−,−,−).
//!   Γ^4 = iΓ^5; only Γ^4 is exposed.
//! * [`galilean_gammas`]: γ^μ, μ = 1,2,3,t,s, with the light-cone metric
//!   (spatial +1, g^{ts} = g^{st} = −1).

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, SQRT_2};

use crate::error::{Error, Result};
use crate::galilean;
use crate::matrix::{ComplexMatrix, C64, I, ONE, ZERO};

/// Totally antisymmetric symbol on {0,1,2}.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Standard Pauli matrix σ^i for i ∈ {1,2,3}.
pub fn pauli_matrix(i: usize) -> Result<ComplexMatrix> {
    let m = match i {
        1 => ComplexMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]]),
        2 => ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]),
        3 => ComplexMatrix::from_rows(&[[ONE, ZERO], [ZERO, -ONE]]),
        _ => return Err(Error::IndexOutOfRange { index: i, expected: "1, 2 or 3" }),
    };
    Ok(m)
}

/// The three Pauli matrices in order σ^1, σ^2, σ^3.
pub fn sigmas() -> [ComplexMatrix; 3] {
    [1, 2, 3].map(|i| pauli_matrix(i).expect("valid index"))
}

fn blocks(tl: &ComplexMatrix, tr: &ComplexMatrix, bl: &ComplexMatrix, br: &ComplexMatrix) -> ComplexMatrix {
    let n = tl.dim();
    ComplexMatrix::from_fn(2 * n, |i, j| {
        let (bi, bj) = (i / n, j / n);
        let (ii, jj) = (i % n, j % n);
        match (bi, bj) {
            (0, 0) => tl[(ii, jj)],
            (0, 1) => tr[(ii, jj)],
            (1, 0) => bl[(ii, jj)],
            _ => br[(ii, jj)],
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaKind {
    Lorentz5D,
    Galilean5D,
}

#[derive(Debug, Clone)]
pub struct GammaRep {
    pub kind: GammaKind,
    pub labels: [&'static str; 5],
    pub matrices: [ComplexMatrix; 5],
    /// Contravariant metric g^{μν}.
    pub metric: [[f64; 5]; 5],
}

impl GammaRep {
    pub fn get(&self, label: &str) -> Option<&ComplexMatrix> {
        self.labels.iter().position(|&l| l == label).map(|k| &self.matrices[k])
    }
}

pub fn lorentz_gammas() -> GammaRep {
    let id = ComplexMatrix::identity(2);
    let zero = ComplexMatrix::zeros(2);
    let [s1, s2, s3] = sigmas();
    let spatial = |s: &ComplexMatrix| blocks(&zero, s, &-s, &zero);
    let i2 = id.scale(I);
    let g0 = blocks(&id, &zero, &zero, &-&id);
    let g4 = blocks(&zero, &i2, &i2, &zero);
    let mut metric = [[0.0; 5]; 5];
    metric[0][0] = 1.0;
    for (k, row) in metric.iter_mut().enumerate().skip(1) {
        row[k] = -1.0;
    }
    GammaRep {
        kind: GammaKind::Lorentz5D,
        labels: ["0", "1", "2", "3", "4"],
        matrices: [g0, spatial(&s1), spatial(&s2), spatial(&s3), g4],
        metric,
    }
}

pub fn galilean_gammas() -> GammaRep {
    let id = ComplexMatrix::identity(2);
    let zero = ComplexMatrix::zeros(2);
    let [s1, s2, s3] = sigmas();
    let spatial = |s: &ComplexMatrix| blocks(s, &zero, &zero, &-s);
    let gt = blocks(&zero, &zero, &-&id, &zero).scale_real(SQRT_2);
    let gs = blocks(&zero, &id, &zero, &zero).scale_real(SQRT_2);
    GammaRep {
        kind: GammaKind::Galilean5D,
        labels: ["1", "2", "3", "t", "s"],
        matrices: [spatial(&s1), spatial(&s2), spatial(&s3), gt, gs],
        metric: galilean::galilean_metric(),
    }
}

/// η₍₊₎ = (−i/√2)(γ^s + γ^t) and η₍₋₎ = (−i/√2)(γ^s − γ^t) of the Galilean representation.
pub fn galilean_eta(rep: &GammaRep) -> (ComplexMatrix, ComplexMatrix) {
    let gt = rep.get("t").expect("galilean representation carries γ^t");
    let gs = rep.get("s").expect("galilean representation carries γ^s");
    let c = C64::new(0.0, -FRAC_1_SQRT_2);
    ((gs + gt).scale(c), (gs - gt).scale(c))
}

/// Max-entry deviation of {γ^μ, γ^ν} from 2g^{μν}·Id over all pairs.
pub fn clifford_residual(rep: &GammaRep) -> f64 {
    let dim = rep.matrices[0].dim();
    let id = ComplexMatrix::identity(dim);
    let mut worst: f64 = 0.0;
    for mu in 0..5 {
        for nu in 0..5 {
            let ac = rep.matrices[mu].anticommutator(&rep.matrices[nu]);
            let target = id.scale_real(2.0 * rep.metric[mu][nu]);
            worst = worst.max((&ac - &target).max_norm());
        }
    }
    worst
}

/// Fermionic variables ψ_1, ψ_2, ψ_3 and ξ.
#[derive(Debug, Clone)]
pub struct FermionRep {
    pub psi: [ComplexMatrix; 3],
    pub xi: ComplexMatrix,
    pub dim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FermionResiduals {
    /// max ‖{ψ_i, ψ_j} − δ_ij‖
    pub psi_psi: f64,
    /// ‖{ξ, ξ} + 2i‖
    pub xi_xi: f64,
    /// max ‖{ψ_i, ξ}‖
    pub psi_xi: f64,
}

impl FermionResiduals {
    pub fn max(&self) -> f64 {
        self.psi_psi.max(self.xi_xi).max(self.psi_xi)
    }
}

impl FermionRep {
    pub fn residuals(&self) -> FermionResiduals {
        let id = ComplexMatrix::identity(self.dim);
        let mut psi_psi: f64 = 0.0;
        let mut psi_xi: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { id.clone() } else { ComplexMatrix::zeros(self.dim) };
                psi_psi = psi_psi.max((&self.psi[i].anticommutator(&self.psi[j]) - &target).max_norm());
            }
            psi_xi = psi_xi.max(self.psi[i].anticommutator(&self.xi).max_norm());
        }
        let xi_xi = (&self.xi.anticommutator(&self.xi) - &id.scale(C64::new(0.0, -2.0))).max_norm();
        FermionResiduals { psi_psi, xi_xi, psi_xi }
    }
}

/// ψ_i = (σ_i ⊗ σ_3)/√2, ξ = e^{−iπ/4}(Id ⊗ σ_1).
///
/// ξ squares to −i·Id, so it cannot be self-adjoint.
pub fn fermion_rep() -> FermionRep {
    let [s1, s2, s3] = sigmas();
    let id = ComplexMatrix::identity(2);
    let psi = [&s1, &s2, &s3].map(|s| s.kron(&s3).scale_real(FRAC_1_SQRT_2));
    let xi = id.kron(&s1).scale(C64::from_polar(1.0, -FRAC_PI_4));
    FermionRep { psi, xi, dim: 4 }
}

/// S_i = −(i/2) ε_{ijk} ψ_j ψ_k.
pub fn spin_from_fermions(rep: &FermionRep) -> [ComplexMatrix; 3] {
    std::array::from_fn(|i| {
        let mut s = ComplexMatrix::zeros(rep.dim);
        for j in 0..3 {
            for k in 0..3 {
                let eps = levi_civita(i, j, k);
                if eps != 0.0 {
                    s = &s + &(&rep.psi[j] * &rep.psi[k]).scale(C64::new(0.0, -0.5 * eps));
                }
            }
        }
        s
    })
}

/// max over (i, j) of ‖[S_i, S_j] − iε_{ijk}S_k‖.
pub fn spin_algebra_residual(spin: &[ComplexMatrix; 3]) -> f64 {
    let dim = spin[0].dim();
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let mut rhs = ComplexMatrix::zeros(dim);
            for (k, sk) in spin.iter().enumerate() {
                rhs = &rhs + &sk.scale(C64::new(0.0, levi_civita(i, j, k)));
            }
            worst = worst.max((&spin[i].commutator(&spin[j]) - &rhs).max_norm());
        }
    }
    worst
}
