//! Five-potentials, their field strengths, and operator-valued electric fields.
//!
//! `A1..A3` are configured as the components of the vector potential that
//! enter `p − eA`; the covariant five-vector is `(A0, −A1, −A2, −A3, Λ)` over
//! the coordinates `(t, x, y, z, w)`. `Λ = A_4` and `Ω = −Λ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::{levi_civita, pauli_matrix};
use crate::error::{Error, Result};
use crate::fieldexpr::{Coord, EvalError, FieldExpr, Point};
use crate::matrix::{ComplexMatrix, I};

/// Seed for the random sample points of invariant checks.
pub const SAMPLE_SEED: u64 = 0x5EED;
pub const SAMPLE_COUNT: usize = 100;

#[derive(Debug, Clone)]
pub struct Potential5D {
    /// `A0, A1, A2, A3, Λ`.
    pub components: [FieldExpr; 5],
    pub charge: f64,
    pub mass: f64,
    pub is_static: bool,
    pub w_independent: bool,
}

/// Coordinate carried by each covariant index 0..4.
const INDEX_COORD: [Coord; 5] = [Coord::T, Coord::X, Coord::Y, Coord::Z, Coord::W];

impl Potential5D {
    pub fn new(components: [FieldExpr; 5], charge: f64, mass: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidArgument(format!("mass must be positive, got {mass}")));
        }
        if !charge.is_finite() {
            return Err(Error::InvalidArgument(format!("charge must be finite, got {charge}")));
        }
        Ok(Self { components, charge, mass, is_static: false, w_independent: false })
    }

    pub fn zero(charge: f64, mass: f64) -> Result<Self> {
        Self::new(std::array::from_fn(|_| FieldExpr::zero()), charge, mass)
    }

    /// Potential with only `Λ` set.
    pub fn lambda_only(lambda: FieldExpr, charge: f64, mass: f64) -> Result<Self> {
        let mut p = Self::zero(charge, mass)?;
        p.components[4] = lambda;
        Ok(p)
    }

    /// Sets the static and w-independent flags after checking them at the
    /// sample points of a box of side `length`.
    pub fn with_flags(mut self, is_static: bool, w_independent: bool, length: f64) -> Result<Self> {
        let points = sample_points(length, SAMPLE_COUNT, SAMPLE_SEED);
        let check = |var: Coord, what: &str| -> Result<()> {
            for (mu, a) in self.components.iter().enumerate() {
                let d = a.diff(var);
                for p in &points {
                    if d.eval(p)? != 0.0 {
                        return Err(Error::ConditionViolated(format!("component {mu} is not {what}")));
                    }
                }
            }
            Ok(())
        };
        if is_static {
            check(Coord::T, "static")?;
        }
        if w_independent {
            check(Coord::W, "independent of w")?;
        }
        self.is_static = is_static;
        self.w_independent = w_independent;
        Ok(self)
    }

    pub fn a0(&self) -> &FieldExpr {
        &self.components[0]
    }

    /// Vector-potential component `A^i`, `i ∈ {0,1,2}` for x, y, z.
    pub fn vector(&self, i: usize) -> &FieldExpr {
        &self.components[1 + i]
    }

    pub fn lambda(&self) -> &FieldExpr {
        &self.components[4]
    }

    pub fn omega(&self) -> FieldExpr {
        -self.lambda().clone()
    }

    fn covariant(&self, mu: usize) -> FieldExpr {
        match mu {
            1..=3 => -self.components[mu].clone(),
            _ => self.components[mu].clone(),
        }
    }

    /// `F_{μν} = ∂_μ A_ν − ∂_ν A_μ` as expressions.
    pub fn field_tensor_exprs(&self) -> [[FieldExpr; 5]; 5] {
        std::array::from_fn(|mu| {
            std::array::from_fn(|nu| {
                self.covariant(nu).diff(INDEX_COORD[mu]) - self.covariant(mu).diff(INDEX_COORD[nu])
            })
        })
    }

    /// `B^k = ε_{kij} ∂_i A^j`.
    pub fn magnetic_exprs(&self) -> [FieldExpr; 3] {
        std::array::from_fn(|k| {
            let mut acc = FieldExpr::zero();
            for i in 0..3 {
                for j in 0..3 {
                    let eps = levi_civita(k, i, j);
                    if eps != 0.0 {
                        acc = acc + self.vector(j).diff(Coord::spatial(i)).scale(eps);
                    }
                }
            }
            acc
        })
    }

    /// `𝓑_i = −∂_i Λ`.
    pub fn script_b_exprs(&self) -> [FieldExpr; 3] {
        std::array::from_fn(|i| -self.lambda().diff(Coord::spatial(i)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldStrength {
    pub e: [f64; 3],
    pub b: [f64; 3],
    pub script_e: f64,
    pub script_b: [f64; 3],
}

pub fn field_tensor(p: &Potential5D, point: &Point) -> Result<[[f64; 5]; 5], EvalError> {
    let f = p.field_tensor_exprs();
    let mut out = [[0.0; 5]; 5];
    for mu in 0..5 {
        for nu in 0..5 {
            out[mu][nu] = f[mu][nu].eval(point)?;
        }
    }
    Ok(out)
}

pub fn field_strength(p: &Potential5D, point: &Point) -> Result<FieldStrength, EvalError> {
    let f = field_tensor(p, point)?;
    let e = std::array::from_fn(|i| f[0][1 + i]);
    let b = std::array::from_fn(|k| {
        let mut acc = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                acc -= 0.5 * levi_civita(i, j, k) * f[1 + i][1 + j];
            }
        }
        acc
    });
    Ok(FieldStrength { e, b, script_e: f[0][4], script_b: std::array::from_fn(|i| f[4][1 + i]) })
}

/// Uniform random points with every coordinate in `[−L/2, L/2)`.
pub fn sample_points(length: f64, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| std::array::from_fn(|_| length * (rng.gen::<f64>() - 0.5))).collect()
}

/// One component of an operator-valued field: `profile(x) · matrix`,
/// associated with a spatial axis for the divergence.
#[derive(Debug, Clone)]
pub struct FieldComponent {
    pub axis: Coord,
    pub profile: FieldExpr,
    pub matrix: ComplexMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Pseudo,
    Vector,
    /// An ordinary electric field acting as a multiple of the identity on spin.
    Usual,
}

#[derive(Debug, Clone)]
pub struct OperatorField {
    pub kind: FieldKind,
    pub components: Vec<FieldComponent>,
}

impl OperatorField {
    pub fn d(&self) -> usize {
        self.components.len()
    }

    /// An ordinary electric field `E_i ⊗ Id₂` over the first `profiles.len()` axes.
    pub fn usual(profiles: &[FieldExpr]) -> Result<Self> {
        if profiles.is_empty() || profiles.len() > 3 {
            return Err(Error::UnsupportedDimension(profiles.len()));
        }
        let components = profiles
            .iter()
            .enumerate()
            .map(|(i, p)| FieldComponent {
                axis: Coord::spatial(i),
                profile: p.clone(),
                matrix: ComplexMatrix::identity(2),
            })
            .collect();
        Ok(Self { kind: FieldKind::Usual, components })
    }

    /// `Σ_i E^i E^i` at a point, as a spin matrix.
    pub fn square_at(&self, point: &Point) -> Result<ComplexMatrix, EvalError> {
        let mut acc = ComplexMatrix::zeros(2);
        for c in &self.components {
            let v = c.profile.eval(point)?;
            acc = &acc + &(&c.matrix * &c.matrix).scale_real(v * v);
        }
        Ok(acc)
    }
}

/// The extra electric field built from `Ω` in `d` usual dimensions.
///
/// `d ∈ {1,2}`: `E^i = (4m/√d) Ω · iσ³σ^i`; `d = 3`: `E^i = (4m/√3) Ω · (−σ^i)`.
pub fn extra_electric_field(omega: &FieldExpr, d: usize, m: f64) -> Result<OperatorField> {
    if !(1..=3).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    if m.is_nan() || m <= 0.0 {
        return Err(Error::InvalidArgument(format!("mass must be positive, got {m}")));
    }
    let prefactor = 4.0 * m / (d as f64).sqrt();
    let s3 = pauli_matrix(3)?;
    let mut components = Vec::with_capacity(d);
    for i in 1..=d {
        let si = pauli_matrix(i)?;
        let matrix = if d == 3 { -&si } else { (&s3 * &si).scale(I) };
        components.push(FieldComponent { axis: Coord::spatial(i - 1), profile: omega.scale(prefactor), matrix });
    }
    let kind = if d == 3 { FieldKind::Vector } else { FieldKind::Pseudo };
    Ok(OperatorField { kind, components })
}
