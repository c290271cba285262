//! Supersymmetry variations of polynomial trajectories.
//!
//! Each component of the trajectory is a polynomial in t (degree at most
//! [`MAX_DEGREE`]) with coefficients in the Grassmann algebra generated by
//! the two parameters ε₁, ε₂. Monomials are stored as bitmasks in ascending
//! order (bit k−1 for ε_k).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::{C64, I, ONE, ZERO};

pub const MAX_DEGREE: usize = 4;

/// Coefficients of `1, t, …, t⁴`.
pub type Poly = [C64; MAX_DEGREE + 1];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Component {
    X(usize),
    Psi(usize),
    Xi,
    R,
}

impl Component {
    pub const ALL: [Component; 8] = [
        Component::X(0),
        Component::X(1),
        Component::X(2),
        Component::Psi(0),
        Component::Psi(1),
        Component::Psi(2),
        Component::Xi,
        Component::R,
    ];

    fn slot(self) -> usize {
        match self {
            Component::X(i) => i,
            Component::Psi(i) => 3 + i,
            Component::Xi => 6,
            Component::R => 7,
        }
    }

    pub fn name(self) -> String {
        match self {
            Component::X(i) => format!("x{}", i + 1),
            Component::Psi(i) => format!("psi{}", i + 1),
            Component::Xi => "xi".into(),
            Component::R => "R".into(),
        }
    }
}

pub fn poly_from(coeffs: &[C64]) -> Result<Poly> {
    let degree = coeffs.iter().rposition(|c| *c != ZERO).unwrap_or(0);
    if degree > MAX_DEGREE {
        return Err(Error::InvalidArgument(format!("trajectory degree {degree} exceeds {MAX_DEGREE}")));
    }
    let mut p = [ZERO; MAX_DEGREE + 1];
    for (k, c) in coeffs.iter().take(MAX_DEGREE + 1).enumerate() {
        p[k] = *c;
    }
    Ok(p)
}

pub fn derivative(p: &Poly) -> Poly {
    let mut d = [ZERO; MAX_DEGREE + 1];
    for k in 1..=MAX_DEGREE {
        d[k - 1] = p[k] * k as f64;
    }
    d
}

fn add_scaled(acc: &mut Poly, p: &Poly, c: C64) {
    for (a, b) in acc.iter_mut().zip(p) {
        *a += c * b;
    }
}

pub fn max_abs_diff(a: &Poly, b: &Poly) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Grassmann-valued polynomial: monomial bitmask to coefficient polynomial.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GrassmannPoly(pub BTreeMap<u8, Poly>);

impl GrassmannPoly {
    pub fn body(p: Poly) -> Self {
        Self(BTreeMap::from([(0, p)]))
    }

    pub fn coefficient(&self, mask: u8) -> Poly {
        self.0.get(&mask).copied().unwrap_or([ZERO; MAX_DEGREE + 1])
    }

    pub fn derivative(&self) -> Self {
        Self(self.0.iter().map(|(m, p)| (*m, derivative(p))).collect())
    }

    /// `c · ε_k · self`, reordering ε_k into its ascending position.
    fn times_epsilon(&self, k: usize, c: C64) -> Self {
        let bit = 1u8 << (k - 1);
        let mut out = BTreeMap::new();
        for (&m, p) in &self.0 {
            if m & bit != 0 {
                continue;
            }
            let below = (m & (bit - 1)).count_ones();
            let sign = if below.is_multiple_of(2) { 1.0 } else { -1.0 };
            let mut q = [ZERO; MAX_DEGREE + 1];
            add_scaled(&mut q, p, c * sign);
            out.insert(m | bit, q);
        }
        Self(out)
    }

    fn add_assign(&mut self, other: &Self) {
        for (m, p) in &other.0 {
            add_scaled(self.0.entry(*m).or_insert([ZERO; MAX_DEGREE + 1]), p, ONE);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    components: [GrassmannPoly; 8],
}

impl Trajectory {
    /// Bosonic-body trajectory from coefficient lists for x₁..₃, ψ₁..₃, ξ, R.
    pub fn new(x: [&[C64]; 3], psi: [&[C64]; 3], xi: &[C64], r: &[C64]) -> Result<Self> {
        let mut parts = Vec::with_capacity(8);
        for c in x.iter().chain(&psi).chain([&xi, &r]) {
            parts.push(GrassmannPoly::body(poly_from(c)?));
        }
        Ok(Self { components: parts.try_into().expect("eight components") })
    }

    pub fn get(&self, c: Component) -> &GrassmannPoly {
        &self.components[c.slot()]
    }

    /// One variation with parameter ε_k (k = 1 or 2):
    /// δx = −iεψ, δψ = εẋ, δξ = −iεR, δR = −εξ̇.
    pub fn vary(&self, k: usize) -> Result<Self> {
        if !(1..=2).contains(&k) {
            return Err(Error::IndexOutOfRange { index: k, expected: "1 or 2" });
        }
        let mut next = self.clone();
        for i in 0..3 {
            let dx = self.get(Component::Psi(i)).times_epsilon(k, -I);
            let dpsi = self.get(Component::X(i)).derivative().times_epsilon(k, ONE);
            next.components[Component::X(i).slot()].add_assign(&dx);
            next.components[Component::Psi(i).slot()].add_assign(&dpsi);
        }
        let dxi = self.get(Component::R).times_epsilon(k, -I);
        let dr = self.get(Component::Xi).derivative().times_epsilon(k, -ONE);
        next.components[Component::Xi.slot()].add_assign(&dxi);
        next.components[Component::R.slot()].add_assign(&dr);
        Ok(next)
    }
}

/// δ₂ applied after δ₁.
pub fn double_variation(t: &Trajectory) -> Result<Trajectory> {
    t.vary(1)?.vary(2)
}

/// The ε₁ε₂ coefficient of a component after [`double_variation`].
pub fn commutator_coefficient(t: &Trajectory, c: Component) -> Result<Poly> {
    Ok(double_variation(t)?.get(c).coefficient(0b11))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sample() -> Trajectory {
        Trajectory::new(
            [
                &[c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(0.2, 0.0)],
                &[c(0.0, 0.0), c(1.0, 0.0)],
                &[c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.1, 0.0)],
            ],
            [&[c(0.3, 0.1)], &[c(0.0, 0.0), c(0.7, 0.0)], &[]],
            &[c(0.0, 1.0), c(1.0, 0.0), c(0.25, 0.0)],
            &[c(1.5, 0.0), c(0.0, 0.0), c(0.0, -2.0)],
        )
        .unwrap()
    }

    #[test]
    fn linear_path_single_variation() {
        let z: [C64; 0] = [];
        let t = Trajectory::new([&[ZERO, ONE], &z, &z], [&z, &z, &z], &z, &z).unwrap();
        let v = t.vary(1).unwrap();
        let mut one = [ZERO; MAX_DEGREE + 1];
        one[0] = ONE;
        assert_eq!(v.get(Component::Psi(0)).coefficient(0b01), one);
        assert_eq!(v.get(Component::X(0)).coefficient(0b01), [ZERO; MAX_DEGREE + 1]);
    }

    #[test]
    fn rejects_high_degree() {
        let z = [ZERO; 6];
        let mut high = z;
        high[5] = ONE;
        assert!(Trajectory::new([&high, &z, &z], [&z, &z, &z], &z, &z).is_err());
        assert!(sample().vary(3).is_err());
    }

    #[test]
    fn epsilon_squares_to_zero() {
        let twice = sample().vary(1).unwrap().vary(1).unwrap();
        for comp in Component::ALL {
            assert!(twice.get(comp).0.keys().all(|&m| m <= 1), "{}", comp.name());
        }
    }

    #[test]
    fn coordinate_commutator_is_a_time_translation() {
        let t = sample();
        for i in 0..3 {
            let got = commutator_coefficient(&t, Component::X(i)).unwrap();
            let mut want = derivative(&t.get(Component::X(i)).coefficient(0));
            want.iter_mut().for_each(|a| *a *= I);
            assert!(max_abs_diff(&got, &want) <= 1e-12);
            let got = commutator_coefficient(&t, Component::Psi(i)).unwrap();
            let mut want = derivative(&t.get(Component::Psi(i)).coefficient(0));
            want.iter_mut().for_each(|a| *a *= I);
            assert!(max_abs_diff(&got, &want) <= 1e-12);
        }
    }

    #[test]
    fn auxiliary_pair_has_opposite_sign() {
        let t = sample();
        for comp in [Component::Xi, Component::R] {
            let got = commutator_coefficient(&t, comp).unwrap();
            let mut want = derivative(&t.get(comp).coefficient(0));
            want.iter_mut().for_each(|a| *a *= -I);
            assert!(max_abs_diff(&got, &want) <= 1e-12);
        }
    }

    #[test]
    fn order_reversal_flips_the_coefficient() {
        let t = sample();
        let a = commutator_coefficient(&t, Component::X(0)).unwrap();
        let b = t.vary(2).unwrap().vary(1).unwrap().get(Component::X(0)).coefficient(0b11);
        let sum: Poly = std::array::from_fn(|k| a[k] + b[k]);
        assert!(max_abs_diff(&sum, &[ZERO; MAX_DEGREE + 1]) <= 1e-15);
    }
}
