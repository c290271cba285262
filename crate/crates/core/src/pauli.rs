//! Pauli-type Hamiltonians and the extra-dimension correction operators.
//!
//! Spinor states live on `grid ⊗ C²` with the spin index fastest.

use crate::clifford::{pauli_matrix, sigmas};
use crate::error::{Error, Result};
use crate::fieldexpr::{Coord, FieldExpr};
use crate::fields::{extra_electric_field, OperatorField, Potential5D};
use crate::grid::{covariant_kinetic, covariant_momentum, momentum_op, multiply_op, Grid, LinOp};
use crate::matrix::{ComplexMatrix, C64, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    LorentzApproach,
    GalileanApproach,
    TwoPlusOne,
}

/// Discretization of `(p − eA)²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Stencil {
    /// Three-point covariant Laplacian with link phases.
    #[default]
    Compact,
    /// Square of the covariant central difference.
    Composed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Corrections {
    pub psch: bool,
    pub mtz: bool,
    pub mr: bool,
    pub or_: bool,
}

impl Corrections {
    pub const NONE: Corrections = Corrections { psch: false, mtz: false, mr: false, or_: false };
    pub const LORENTZ: Corrections = Corrections { psch: true, mtz: true, mr: false, or_: false };
    pub const GALILEAN: Corrections = Corrections { psch: false, mtz: false, mr: true, or_: true };
}

/// Which printed form of the Lorentz-approach Hamiltonian to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LaForm {
    /// Spin form `(p−eA)²/2m + (e/m)S·B − (e/m)𝓑·S + e²Λ²/2m` with `S = σ/2`.
    #[default]
    SpinForm,
    /// Sigma form with the Zeeman term `−(e/2m)σ·B` and the Psch/Mtz operators.
    SigmaForm,
}

#[derive(Debug, Clone)]
pub struct HamiltonianSpec {
    pub frame: Frame,
    /// Usual-space dimension of the theory; the grid may resolve fewer axes.
    pub d: usize,
    pub potential: Potential5D,
    pub grid: Grid,
    pub corrections: Corrections,
    pub stencil: Stencil,
    pub la_form: LaForm,
}

impl HamiltonianSpec {
    pub fn new(frame: Frame, d: usize, potential: Potential5D, grid: Grid) -> Result<Self> {
        if !(1..=3).contains(&d) {
            return Err(Error::UnsupportedDimension(d));
        }
        if grid.d() > d {
            return Err(Error::DimensionMismatch(format!(
                "a {}-dimensional grid for a {d}-dimensional theory",
                grid.d()
            )));
        }
        let corrections = match frame {
            Frame::LorentzApproach => Corrections::LORENTZ,
            _ => Corrections::NONE,
        };
        Ok(Self { frame, d, potential, grid, corrections, stencil: Stencil::Compact, la_form: LaForm::SpinForm })
    }

    pub fn with_corrections(mut self, corrections: Corrections) -> Result<Self> {
        let allowed = match self.frame {
            Frame::LorentzApproach => !corrections.mr && !corrections.or_,
            Frame::GalileanApproach => !corrections.psch && !corrections.mtz,
            Frame::TwoPlusOne => corrections == Corrections::NONE,
        };
        if !allowed {
            return Err(Error::InvalidArgument(format!(
                "corrections {corrections:?} are not defined in the {:?} frame",
                self.frame
            )));
        }
        self.corrections = corrections;
        Ok(self)
    }

    fn expect_frame(&self, frame: Frame) -> Result<()> {
        if self.frame != frame {
            return Err(Error::InvalidArgument(format!("expected the {frame:?} frame, got {:?}", self.frame)));
        }
        Ok(())
    }

    fn m(&self) -> f64 {
        self.potential.mass
    }

    fn e(&self) -> f64 {
        self.potential.charge
    }
}

fn spin(op: &LinOp, m: &ComplexMatrix) -> LinOp {
    LinOp::kron(op, m)
}

fn spin_id(op: &LinOp) -> LinOp {
    LinOp::kron(op, &ComplexMatrix::identity(2))
}

/// Scalar `(p − qA)²` on the grid. Vector-potential components without a
/// grid axis contribute `q²A_i²`.
pub fn kinetic_op(grid: &Grid, potential: &Potential5D, charge: f64, stencil: Stencil) -> Result<LinOp> {
    let mut terms = Vec::new();
    for i in 0..3 {
        let a = potential.vector(i);
        match grid.axis_of(Coord::spatial(i)) {
            Some(axis) => terms.push(match stencil {
                Stencil::Compact => covariant_kinetic(grid, axis, a, charge, 0.0)?,
                Stencil::Composed => {
                    let d = covariant_momentum(grid, axis, a, charge, 0.0)?;
                    d.compose(&d)
                }
            }),
            None if !a.is_zero() => {
                let a2 = FieldExpr::pow(a.clone(), 2).scale(charge * charge);
                terms.push(multiply_op(grid, &a2, 0.0)?);
            }
            None => {}
        }
    }
    if terms.is_empty() {
        return Ok(LinOp::zero(grid.num_sites()));
    }
    Ok(LinOp::sum(terms))
}

/// `Σ_k B_k ⊗ σ^k` with `B = ∇ × A` evaluated on the grid.
fn sigma_dot_b(grid: &Grid, potential: &Potential5D) -> Result<LinOp> {
    let b = potential.magnetic_exprs();
    let terms =
        sigmas().iter().zip(&b).map(|(s, bk)| Ok(spin(&multiply_op(grid, bk, 0.0)?, s))).collect::<Result<Vec<_>>>()?;
    Ok(LinOp::sum(terms))
}

/// `Σ_i 𝓑_i ⊗ σ^i` with `𝓑 = −∇Λ`.
fn sigma_dot_script_b(grid: &Grid, potential: &Potential5D) -> Result<LinOp> {
    let sb = potential.script_b_exprs();
    let terms =
        sigmas().iter().zip(&sb).map(|(s, f)| Ok(spin(&multiply_op(grid, f, 0.0)?, s))).collect::<Result<Vec<_>>>()?;
    Ok(LinOp::sum(terms))
}

fn check_static_no_a0(p: &Potential5D, what: &str) -> Result<()> {
    if !p.is_static {
        return Err(Error::ConditionViolated(format!("{what} needs a static potential")));
    }
    if !p.a0().is_zero() {
        return Err(Error::ConditionViolated(format!("{what} needs A0 = 0")));
    }
    Ok(())
}

/// Standard-sign (1+2)-dimensional Pauli Hamiltonian on scalar states:
/// `−∇²/2m + (ie/2m)(∇∘A + A∘∇) + e²|A|²/2m + eφ`, `φ = −A0`.
pub fn h_pauli_2plus1(spec: &HamiltonianSpec) -> Result<LinOp> {
    let (kin, coupling, a2, phi) = two_plus_one_terms(spec)?;
    let (m, e) = (spec.m(), spec.e());
    Ok(LinOp::sum(vec![
        kin.scale_real(-1.0 / (2.0 * m)),
        coupling.scale(I * (e / (2.0 * m))),
        a2.scale_real(e * e / (2.0 * m)),
        phi.scale_real(e),
    ]))
}

/// The (1+2)-dimensional Hamiltonian with every sign as printed:
/// `∇²/2m − (ie/2m)(∇·A) − (ie/m)A·∇ − e²|A|²/2m − eφ`, with `∇·A` the
/// divergence. Up to the product-rule discretization error this is
/// `−h_pauli_2plus1`.
pub fn h_pauli_2plus1_as_printed(spec: &HamiltonianSpec) -> Result<LinOp> {
    let (kin, _, a2, phi) = two_plus_one_terms(spec)?;
    let (m, e) = (spec.m(), spec.e());
    let grid = &spec.grid;
    let mut div = FieldExpr::zero();
    let mut a_grad = Vec::new();
    for (axis, c) in grid.axes().iter().enumerate() {
        let a = spec.potential.vector(c.index());
        div = div + a.diff(*c);
        let grad = momentum_op(grid, axis)?.scale(I);
        a_grad.push(multiply_op(grid, a, 0.0)?.compose(&grad));
    }
    Ok(LinOp::sum(vec![
        kin.scale_real(1.0 / (2.0 * m)),
        multiply_op(grid, &div, 0.0)?.scale(-I * (e / (2.0 * m))),
        LinOp::sum(a_grad).scale(-I * (e / m)),
        a2.scale_real(-e * e / (2.0 * m)),
        phi.scale_real(-e),
    ]))
}

/// Laplacian, `∇∘A + A∘∇`, `|A|²` and `φ` for the (1+2)-dimensional form.
fn two_plus_one_terms(spec: &HamiltonianSpec) -> Result<(LinOp, LinOp, LinOp, LinOp)> {
    spec.expect_frame(Frame::TwoPlusOne)?;
    let grid = &spec.grid;
    if spec.d != 2 || grid.d() != 2 {
        return Err(Error::UnsupportedDimension(grid.d()));
    }
    let p = &spec.potential;
    for c in Coord::SPATIAL {
        if p.vector(c.index()).is_zero() {
            continue;
        }
        if grid.axis_of(c).is_none() {
            return Err(Error::ConditionViolated(format!("A along {c} has no grid axis")));
        }
    }
    if !p.lambda().is_zero() {
        return Err(Error::ConditionViolated("the (1+2)-dimensional form has no extra component".into()));
    }
    let free = Potential5D::zero(0.0, 1.0)?;
    let laplacian = kinetic_op(grid, &free, 0.0, Stencil::Compact)?.scale_real(-1.0);
    let mut coupling = Vec::new();
    let mut a2 = FieldExpr::zero();
    for (axis, c) in grid.axes().iter().enumerate() {
        let a = p.vector(c.index());
        a2 = a2 + FieldExpr::pow(a.clone(), 2);
        let grad = momentum_op(grid, axis)?.scale(I);
        let am = multiply_op(grid, a, 0.0)?;
        coupling.push(grad.compose(&am).add(&am.compose(&grad)));
    }
    let phi = -p.a0().clone();
    Ok((laplacian, LinOp::sum(coupling), multiply_op(grid, &a2, 0.0)?, multiply_op(grid, &phi, 0.0)?))
}

/// Spin-gradient term of the extra component, per usual-space dimension:
/// `d ∈ {1,2}`: `(ie/2m) Σ_i σ³σ^i ∂_iΩ`; `d = 3`: `−(e/2m) Σ_i σ^i ∂_iΩ`.
pub fn psch_op(d: usize, omega: &FieldExpr, grid: &Grid, m: f64, e: f64) -> Result<LinOp> {
    if !(1..=3).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    let s3 = pauli_matrix(3)?;
    let mut terms = Vec::with_capacity(d);
    for i in 1..=d {
        let si = pauli_matrix(i)?;
        let (matrix, coeff) =
            if d == 3 { (si, C64::new(-e / (2.0 * m), 0.0)) } else { (&s3 * &si, I * (e / (2.0 * m))) };
        let grad = omega.diff(Coord::spatial(i - 1));
        terms.push(spin(&multiply_op(grid, &grad, 0.0)?, &matrix.scale(coeff)));
    }
    Ok(LinOp::sum(terms))
}

/// `(e²/2m) Ω² ⊗ Id₂`.
pub fn mtz_op(omega: &FieldExpr, grid: &Grid, m: f64, e: f64) -> Result<LinOp> {
    let sq = FieldExpr::pow(omega.clone(), 2).scale(e * e / (2.0 * m));
    Ok(spin_id(&multiply_op(grid, &sq, 0.0)?))
}

/// `(e²/32m³) Σ_i E^i E^i`.
pub fn mr_op(field: &OperatorField, grid: &Grid, m: f64, e: f64) -> Result<LinOp> {
    let c = e * e / (32.0 * m.powi(3));
    let terms = field
        .components
        .iter()
        .map(|f| {
            let sq = FieldExpr::pow(f.profile.clone(), 2).scale(c);
            Ok(spin(&multiply_op(grid, &sq, 0.0)?, &(&f.matrix * &f.matrix)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinOp::sum(terms))
}

/// `factor · (e/8m²) ∇·E`, with each profile differentiated along its own axis.
/// The factor is `√d` for the extra field and 1 for an ordinary field.
pub fn or_op(field: &OperatorField, factor: f64, grid: &Grid, m: f64, e: f64) -> Result<LinOp> {
    let c = factor * e / (8.0 * m * m);
    let terms = field
        .components
        .iter()
        .map(|f| Ok(spin(&multiply_op(grid, &f.profile.diff(f.axis).scale(c), 0.0)?, &f.matrix)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LinOp::sum(terms))
}

/// The `√d` factor multiplying OR for the extra field.
pub fn extra_or_factor(d: usize) -> f64 {
    (d as f64).sqrt()
}

/// `(‖MR(E_extra) − Mtz‖, ‖OR(E_extra) − Psch‖)` as dense max-entry norms.
pub fn extra_field_consistency(omega: &FieldExpr, d: usize, grid: &Grid, m: f64, e: f64) -> Result<(f64, f64)> {
    let field = extra_electric_field(omega, d, m)?;
    let mr = mr_op(&field, grid, m, e)?;
    let or = or_op(&field, extra_or_factor(d), grid, m, e)?;
    let r_mr = mr.max_norm_diff(&mtz_op(omega, grid, m, e)?)?;
    let r_or = or.max_norm_diff(&psch_op(d, omega, grid, m, e)?)?;
    Ok((r_mr, r_or))
}

/// Lorentz-approach Pauli Hamiltonian on `grid ⊗ C²`.
pub fn h_pauli_la(spec: &HamiltonianSpec) -> Result<LinOp> {
    spec.expect_frame(Frame::LorentzApproach)?;
    let p = &spec.potential;
    check_static_no_a0(p, "the Lorentz-approach Hamiltonian")?;
    if !p.w_independent {
        return Err(Error::ConditionViolated(
            "the Lorentz-approach Hamiltonian needs a w-independent potential".into(),
        ));
    }
    let (m, e) = (spec.m(), spec.e());
    let grid = &spec.grid;
    let kinetic = spin_id(&kinetic_op(grid, p, e, spec.stencil)?).scale_real(1.0 / (2.0 * m));
    let mut terms = vec![kinetic];
    match spec.la_form {
        LaForm::SpinForm => {
            let half = |op: LinOp| op.scale_real(0.5);
            terms.push(half(sigma_dot_b(grid, p)?).scale_real(e / m));
            if spec.corrections.psch {
                terms.push(half(sigma_dot_script_b(grid, p)?).scale_real(-e / m));
            }
            if spec.corrections.mtz {
                let l2 = FieldExpr::pow(p.lambda().clone(), 2).scale(e * e / (2.0 * m));
                terms.push(spin_id(&multiply_op(grid, &l2, 0.0)?));
            }
        }
        LaForm::SigmaForm => {
            terms.push(sigma_dot_b(grid, p)?.scale_real(-e / (2.0 * m)));
            let omega = p.omega();
            if spec.corrections.psch {
                terms.push(psch_op(3, &omega, grid, m, e)?);
            }
            if spec.corrections.mtz {
                terms.push(mtz_op(&omega, grid, m, e)?);
            }
        }
    }
    Ok(LinOp::sum(terms))
}

/// Galilean-approach Pauli Hamiltonian `(p−eA)²/2m + (e/m)S·B`, acting on
/// either light-cone component, plus MR and OR built from the extra field of
/// `Ω = −Λ` when enabled.
pub fn h_pauli_ga(spec: &HamiltonianSpec) -> Result<LinOp> {
    spec.expect_frame(Frame::GalileanApproach)?;
    let p = &spec.potential;
    check_static_no_a0(p, "the Galilean-approach Hamiltonian")?;
    let (m, e) = (spec.m(), spec.e());
    let grid = &spec.grid;
    let mut terms = vec![
        spin_id(&kinetic_op(grid, p, e, spec.stencil)?).scale_real(1.0 / (2.0 * m)),
        sigma_dot_b(grid, p)?.scale_real(e / (2.0 * m)),
    ];
    if spec.corrections.mr || spec.corrections.or_ {
        let field = extra_electric_field(&p.omega(), spec.d, m)?;
        if spec.corrections.mr {
            terms.push(mr_op(&field, grid, m, e)?);
        }
        if spec.corrections.or_ {
            terms.push(or_op(&field, extra_or_factor(spec.d), grid, m, e)?);
        }
    }
    Ok(LinOp::sum(terms))
}

/// Degenerate runs in a sorted spectrum: maximal stretches whose consecutive
/// gaps stay below `gap`, kept when at least `min_size` long. Returns the
/// median of each run.
pub fn level_clusters(sorted: &[f64], gap: f64, min_size: usize) -> Vec<f64> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i] - sorted[i - 1] >= gap {
            if i - start >= min_size.max(1) {
                out.push(sorted[start + (i - start) / 2]);
            }
            start = i;
        }
    }
    out
}

/// Distance between the first two degenerate runs, the Landau spacing on a
/// finite box. `unit` is the expected spacing and sets the gap scale.
pub fn landau_spacing(sorted: &[f64], unit: f64, min_size: usize) -> Option<f64> {
    let c = level_clusters(sorted, 1e-3 * unit.abs(), min_size);
    (c.len() >= 2).then(|| c[1] - c[0])
}
