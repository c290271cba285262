//! Supersymmetric component Hamiltonian and supercharge on `grid ⊗ C⁴`.
//!
//! The internal factor carries the fermionic variables of
//! [`fermion_rep`](crate::clifford::fermion_rep): spin ⊗ ξ-sector. The
//! velocity `ẋ_i` is realized as `p_i − eA_i` (unit mass) and the auxiliary
//! field is eliminated as `R = eΛ`, so the charge becomes
//!
//! ```text
//! Q = Σ_i ψ_i ⊗ (p_i − eA_i) − e(1+i)/2 · ξ ⊗ Λ
//! ```

pub mod variation;

use crate::clifford::{fermion_rep, levi_civita, FermionRep};
use crate::error::{Error, Result};
use crate::fieldexpr::{Coord, FieldExpr};
use crate::fields::Potential5D;
use crate::grid::{covariant_momentum, multiply_op, Grid, LinOp, DENSE_LIMIT};
use crate::matrix::{ComplexMatrix, C64, I};

pub use variation::{commutator_coefficient, double_variation, Component, GrassmannPoly, Poly, Trajectory, MAX_DEGREE};

#[derive(Debug, Clone)]
pub struct SusySpec {
    pub potential: Potential5D,
    pub grid: Grid,
}

impl SusySpec {
    /// The construction uses unit mass; other masses are rejected.
    pub fn new(potential: Potential5D, grid: Grid) -> Result<Self> {
        if potential.mass != 1.0 {
            return Err(Error::InvalidArgument(format!(
                "the supersymmetric model has unit mass, got {}",
                potential.mass
            )));
        }
        Ok(Self { potential, grid })
    }

    fn e(&self) -> f64 {
        self.potential.charge
    }
}

/// Coefficient of `ξΛ` in the charge: `e(1−i)/2 − e`.
pub fn xi_lambda_coefficient(e: f64) -> C64 {
    C64::new(-0.5 * e, -0.5 * e)
}

/// `p_i − eA_i` on the grid for i = x, y, z.
fn velocities(spec: &SusySpec) -> Result<[LinOp; 3]> {
    let (g, p) = (&spec.grid, &spec.potential);
    let e = spec.e();
    let mut out = Vec::with_capacity(3);
    for i in 0..3 {
        let a = p.vector(i);
        out.push(match g.axis_of(Coord::spatial(i)) {
            Some(axis) => covariant_momentum(g, axis, a, e, 0.0)?,
            None => multiply_op(g, &a.scale(-e), 0.0)?,
        });
    }
    Ok(out.try_into().expect("three axes"))
}

pub fn build_supercharge(spec: &SusySpec) -> Result<LinOp> {
    let rep = fermion_rep();
    let mut terms: Vec<LinOp> = velocities(spec)?.iter().zip(&rep.psi).map(|(v, psi)| LinOp::kron(v, psi)).collect();
    let lambda = multiply_op(&spec.grid, spec.potential.lambda(), 0.0)?;
    terms.push(LinOp::kron(&lambda, &rep.xi.scale(xi_lambda_coefficient(spec.e()))));
    Ok(LinOp::sum(terms))
}

fn field_times(grid: &Grid, f: &FieldExpr, m: &ComplexMatrix) -> Result<LinOp> {
    Ok(LinOp::kron(&multiply_op(grid, f, 0.0)?, m))
}

fn pp(rep: &FermionRep, a: usize, b: usize) -> ComplexMatrix {
    &rep.psi[a] * &rep.psi[b]
}

/// The eight terms of the component Hamiltonian, in printed order.
pub fn h_susy_terms(spec: &SusySpec) -> Result<Vec<(&'static str, LinOp)>> {
    let rep = fermion_rep();
    let (g, p) = (&spec.grid, &spec.potential);
    let e = spec.e();
    let id4 = ComplexMatrix::identity(4);
    let vel = velocities(spec)?;
    let b = p.magnetic_exprs();
    let sb = p.script_b_exprs();
    let x: [FieldExpr; 3] = std::array::from_fn(|i| FieldExpr::var(Coord::spatial(i)));
    let mut t1 = Vec::new();
    let mut t2 = Vec::new();
    let mut t3 = Vec::new();
    let mut t4 = Vec::new();
    let mut t5 = Vec::new();
    let mut t6 = Vec::new();
    let mut t7 = FieldExpr::zero();
    for i in 0..3 {
        t1.push(vel[i].compose(&vel[i]));
        t5.push(field_times(g, &sb[i], &(&rep.xi * &rep.psi[i]).scale(I * e))?);
        for j in 0..3 {
            for k in 0..3 {
                let eps = levi_civita(i, j, k);
                if eps != 0.0 {
                    t2.push(field_times(g, &b[k], &pp(&rep, i, j).scale(I * (0.5 * e * eps)))?);
                    t3.push(field_times(g, &sb[i], &pp(&rep, j, k).scale(I * (-0.5 * e * eps)))?);
                }
                // ε_{jki} 𝓑_j x_k (p_i − eA_i), function to the left
                let eps_jki = levi_civita(j, k, i);
                if eps_jki != 0.0 {
                    let f = (sb[j].clone() * x[k].clone()).scale(-0.5 * e * eps_jki);
                    t6.push(LinOp::kron(&multiply_op(g, &f, 0.0)?.compose(&vel[i]), &id4));
                }
            }
        }
    }
    // −(ie/2) ε_{rji} (∂_r 𝓑_k) x_j ψ_k ψ_i
    for r in 0..3 {
        for j in 0..3 {
            for i in 0..3 {
                let eps = levi_civita(r, j, i);
                if eps == 0.0 {
                    continue;
                }
                for k in 0..3 {
                    let f = sb[k].diff(Coord::spatial(r)) * x[j].clone();
                    t4.push(field_times(g, &f, &pp(&rep, k, i).scale(I * (-0.5 * e * eps)))?);
                }
            }
        }
    }
    // (e²/8) ε_{jki} ε_{rni} 𝓑_j 𝓑_r x_k x_n
    for i in 0..3 {
        for (j, k) in [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)] {
            let e1 = levi_civita(j, k, i);
            if e1 == 0.0 {
                continue;
            }
            for (r, n) in [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)] {
                let e2 = levi_civita(r, n, i);
                if e2 == 0.0 {
                    continue;
                }
                let f = sb[j].clone() * sb[r].clone() * x[k].clone() * x[n].clone();
                t7 = t7 + f.scale(e * e / 8.0 * e1 * e2);
            }
        }
    }
    let t8 = FieldExpr::pow(p.lambda().clone(), 2).scale(e * e / 2.0);
    let sites = g.num_sites();
    let kin = LinOp::kron(&LinOp::sum(t1), &id4).scale_real(0.5);
    let sum_or_zero = |v: Vec<LinOp>| if v.is_empty() { LinOp::zero(4 * sites) } else { LinOp::sum(v) };
    Ok(vec![
        ("kinetic", kin),
        ("magnetic spin", sum_or_zero(t2)),
        ("extra-field spin", sum_or_zero(t3)),
        ("extra-field gradient spin", sum_or_zero(t4)),
        ("xi-psi coupling", sum_or_zero(t5)),
        ("extra-field orbital", sum_or_zero(t6)),
        ("extra-field quadratic", field_times(g, &t7, &id4)?),
        ("extra-component square", field_times(g, &t8, &id4)?),
    ])
}

pub fn build_h_susy(spec: &SusySpec) -> Result<LinOp> {
    Ok(LinOp::sum(h_susy_terms(spec)?.into_iter().map(|(_, t)| t).collect()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusyResiduals {
    /// `‖2Q² − 2H‖`.
    pub anticommutator: f64,
    /// `‖[Q, H]‖`.
    pub commutator: f64,
}

/// Dense max-entry residuals of `{Q,Q} = 2H` and `[Q,H] = 0`.
pub fn susy_algebra_residuals(spec: &SusySpec) -> Result<SusyResiduals> {
    let q = build_supercharge(spec)?;
    let h = build_h_susy(spec)?;
    if q.dim() > DENSE_LIMIT {
        return Err(Error::DimensionTooLarge { dim: q.dim(), limit: DENSE_LIMIT });
    }
    let anticommutator = q.compose(&q).scale_real(2.0).max_norm_diff(&h.scale_real(2.0))?;
    let commutator = q.compose(&h).max_norm_diff(&h.compose(&q))?;
    Ok(SusyResiduals { anticommutator, commutator })
}

/// `Id ⊗ (1 ⊗ σ²)`, which anticommutes with every ψ_i and with ξ.
pub fn grading_operator(grid: &Grid) -> LinOp {
    let id = ComplexMatrix::identity(2);
    let s2 = crate::clifford::pauli_matrix(2).expect("valid index");
    LinOp::kron(&LinOp::identity(grid.num_sites()), &id.kron(&s2))
}

/// Max-entry norm of `{Q, Γ}` for the given grading.
pub fn grading_residual(q: &LinOp, grading: &LinOp) -> Result<f64> {
    q.compose(grading).add(&grading.compose(q)).max_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::pauli_matrix;
    use crate::grid::eigenvalues_hermitian;
    use crate::pauli::{h_pauli_la, Frame, HamiltonianSpec, Stencil};

    fn expr(s: &str) -> FieldExpr {
        FieldExpr::parse(s).unwrap()
    }

    fn spec(a: [&str; 5], grid: Grid) -> SusySpec {
        let p = Potential5D::new(a.map(expr), 1.0, 1.0).unwrap();
        SusySpec::new(p, grid).unwrap()
    }

    fn zgrid(n: usize) -> Grid {
        Grid::new(&[Coord::Z], n, 10.0).unwrap()
    }

    #[test]
    fn requires_unit_mass() {
        let p = Potential5D::zero(1.0, 2.0).unwrap();
        assert!(SusySpec::new(p, zgrid(16)).is_err());
    }

    #[test]
    fn free_case_closes() {
        for n in [16, 32] {
            let s = spec(["0"; 5], zgrid(n));
            let r = susy_algebra_residuals(&s).unwrap();
            assert!(r.anticommutator <= 1e-12 && r.commutator <= 1e-12, "{r:?}");
        }
        let s = spec(["0"; 5], Grid::cube(3, 4, 6.0).unwrap());
        let r = susy_algebra_residuals(&s).unwrap();
        assert!(r.anticommutator <= 1e-12 && r.commutator <= 1e-12, "{r:?}");
    }

    #[test]
    fn free_hamiltonian_is_half_p_squared() {
        let g = zgrid(16);
        let h = build_h_susy(&spec(["0"; 5], g.clone())).unwrap();
        let p = covariant_momentum(&g, 0, &FieldExpr::zero(), 1.0, 0.0).unwrap();
        let expected = LinOp::kron(&p.compose(&p), &ComplexMatrix::identity(4)).scale_real(0.5);
        assert_eq!(h.max_norm_diff(&expected).unwrap(), 0.0);
    }

    #[test]
    fn neutral_charge_leaves_free_charge() {
        let g = zgrid(16);
        let p = Potential5D::new(["0", "x", "0", "0", "z^2"].map(expr), 0.0, 1.0).unwrap();
        let q = build_supercharge(&SusySpec::new(p, g.clone()).unwrap()).unwrap();
        let free = build_supercharge(&spec(["0"; 5], g)).unwrap();
        assert_eq!(q.max_norm_diff(&free).unwrap(), 0.0);
    }

    #[test]
    fn constant_lambda_adds_multiple_of_xi() {
        let g = zgrid(16);
        let c = 0.7;
        let q = build_supercharge(&spec(["0", "0", "0", "0", "0.7"], g.clone())).unwrap();
        let free = build_supercharge(&spec(["0"; 5], g.clone())).unwrap();
        let xi = LinOp::kron(&LinOp::identity(16), &fermion_rep().xi).scale(xi_lambda_coefficient(1.0) * c);
        assert!(q.sub(&free).max_norm_diff(&xi).unwrap() < 1e-15);

        // only kinetic, magnetic spin and the constant shift survive
        let terms = h_susy_terms(&spec(["0", "-y", "0", "0", "0.7"], g)).unwrap();
        for (name, t) in &terms {
            let n = t.max_norm().unwrap();
            match *name {
                "kinetic" | "magnetic spin" | "extra-component square" => assert!(n > 0.0, "{name}"),
                _ => assert_eq!(n, 0.0, "{name}"),
            }
        }
        let shift = &terms[7].1;
        assert!(shift.max_norm_diff(&LinOp::identity(64).scale_real(0.49 / 2.0)).unwrap() < 1e-15);
    }

    #[test]
    fn xi_psi_term_for_linear_lambda() {
        let g = zgrid(8);
        let terms = h_susy_terms(&spec(["0", "0", "0", "0", "0.3*z"], g)).unwrap();
        let rep = fermion_rep();
        // 𝓑 = (0, 0, −0.3)
        let m = (&rep.xi * &rep.psi[2]).scale(I * -0.3);
        let expected = LinOp::kron(&LinOp::identity(8), &m);
        assert!(terms[4].1.max_norm_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn grading_choice() {
        let rep = fermion_rep();
        let s3 = pauli_matrix(3).unwrap();
        let naive = ComplexMatrix::identity(2).kron(&s3);
        // 1⊗σ³ commutes with every ψ_i, so it cannot grade the charge
        for psi in &rep.psi {
            assert_eq!(psi.commutator(&naive).max_norm(), 0.0);
        }
        let g = zgrid(16);
        let grading = grading_operator(&g);
        for a in [["0"; 5], ["0", "0", "0", "0", "0.4*z"]] {
            let q = build_supercharge(&spec(a, g.clone())).unwrap();
            assert!(grading_residual(&q, &grading).unwrap() <= 1e-15);
        }
    }

    #[test]
    fn lambda_sector_matches_lorentz_terms() {
        let g = zgrid(32);
        let s = spec(["0", "0", "0", "0", "0.3*z + 0.05*z^2"], g.clone());
        let terms = h_susy_terms(&s).unwrap();
        let susy = terms[0].1.add(&terms[2].1).add(&terms[7].1);
        let mut la_spec = HamiltonianSpec::new(
            Frame::LorentzApproach,
            3,
            s.potential.clone().with_flags(true, true, 10.0).unwrap(),
            g,
        )
        .unwrap();
        la_spec.stencil = Stencil::Composed;
        let la = h_pauli_la(&la_spec).unwrap();
        let a = eigenvalues_hermitian(&susy).unwrap();
        let b = eigenvalues_hermitian(&la).unwrap();
        for (k, v) in b.iter().enumerate() {
            assert!((a[2 * k] - v).abs() <= 1e-9 && (a[2 * k + 1] - v).abs() <= 1e-9);
        }
    }
}
