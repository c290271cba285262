//! Light-cone embedding of Galilean kinematics in five dimensions.
//!
//! Events carry three spatial coordinates plus either the extended Cartesian
//! pair `(x4, x5)` or the light-cone pair `(t, s)`. The light-cone map is
//! taken real: `t = (x4 − x5)/√2`, `s = (x4 + x5)/√2`. Including an overall
//! factor `i` in both coordinates would flip the sign of every quadratic form
//! in `(t, s)` and nothing else.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Matrix3, Matrix5, Quaternion, UnitQuaternion, Vector3};
use rand::Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// `(x1, x2, x3, x4, x5)` with metric diag(−1,−1,−1,+1,−1).
    Cartesian,
    /// `(x1, x2, x3, t, s)` with the light-cone metric.
    LightCone,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event5 {
    pub basis: Basis,
    pub x: Vector3<f64>,
    /// `x4` or `t`, depending on the basis.
    pub a: f64,
    /// `x5` or `s`, depending on the basis.
    pub b: f64,
}

impl Event5 {
    pub fn cartesian(x: [f64; 3], x4: f64, x5: f64) -> Self {
        Self { basis: Basis::Cartesian, x: Vector3::from(x), a: x4, b: x5 }
    }

    pub fn light_cone(x: [f64; 3], t: f64, s: f64) -> Self {
        Self { basis: Basis::LightCone, x: Vector3::from(x), a: t, b: s }
    }

    pub fn t(&self) -> f64 {
        self.a
    }

    pub fn s(&self) -> f64 {
        self.b
    }

    pub fn components(&self) -> [f64; 5] {
        [self.x[0], self.x[1], self.x[2], self.a, self.b]
    }

    fn expect(&self, basis: Basis) -> Result<()> {
        if self.basis != basis {
            return Err(Error::InvalidArgument(format!(
                "expected an event in the {basis:?} basis, got {:?}",
                self.basis
            )));
        }
        Ok(())
    }
}

/// The real 5×5 matrix taking Cartesian components to light-cone components.
pub fn lightcone_matrix() -> Matrix5<f64> {
    let mut m = Matrix5::identity();
    let c = FRAC_1_SQRT_2;
    m[(3, 3)] = c;
    m[(3, 4)] = -c;
    m[(4, 3)] = c;
    m[(4, 4)] = c;
    m
}

pub fn lightcone_map(e: &Event5) -> Result<Event5> {
    e.expect(Basis::Cartesian)?;
    let c = FRAC_1_SQRT_2;
    Ok(Event5 { basis: Basis::LightCone, x: e.x, a: c * (e.a - e.b), b: c * (e.a + e.b) })
}

pub fn lightcone_inverse(e: &Event5) -> Result<Event5> {
    e.expect(Basis::LightCone)?;
    let c = FRAC_1_SQRT_2;
    Ok(Event5 { basis: Basis::Cartesian, x: e.x, a: c * (e.b + e.a), b: c * (e.b - e.a) })
}

/// Contravariant light-cone metric: spatial identity, `g^{ts} = g^{st} = −1`.
pub fn galilean_metric() -> [[f64; 5]; 5] {
    let mut g = [[0.0; 5]; 5];
    for (k, row) in g.iter_mut().enumerate().take(3) {
        row[k] = 1.0;
    }
    g[3][4] = -1.0;
    g[4][3] = -1.0;
    g
}

pub fn cartesian_metric() -> [[f64; 5]; 5] {
    let mut g = [[0.0; 5]; 5];
    for (k, v) in [-1.0, -1.0, -1.0, 1.0, -1.0].into_iter().enumerate() {
        g[k][k] = v;
    }
    g
}

fn to_matrix(g: &[[f64; 5]; 5]) -> Matrix5<f64> {
    Matrix5::from_fn(|i, j| g[i][j])
}

/// Returns `κ` and the residual of `M g_cart Mᵀ = κ g_lc`.
pub fn metric_conjugation() -> (f64, f64) {
    let m = lightcone_matrix();
    let conj = m * to_matrix(&cartesian_metric()) * m.transpose();
    let g = to_matrix(&galilean_metric());
    let kappa = conj[(0, 0)] / g[(0, 0)];
    (kappa, (conj - g * kappa).abs().max())
}

/// `g_{μν} dx^μ dx^ν = |dx|² − 2 dt ds`.
pub fn interval(dx: &[f64; 5]) -> f64 {
    let g = galilean_metric();
    let mut acc = 0.0;
    for i in 0..5 {
        for j in 0..5 {
            acc += g[i][j] * dx[i] * dx[j];
        }
    }
    acc
}

/// Element of the Galilean group acting on light-cone events:
/// `x' = Rx + vt + a`, `t' = t + b`, `s' = s + (Rx)·v + v²t/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GalileanBoost {
    pub r: Matrix3<f64>,
    pub v: Vector3<f64>,
    pub a: Vector3<f64>,
    pub b: f64,
}

impl GalileanBoost {
    pub fn new(r: Matrix3<f64>, v: Vector3<f64>, a: Vector3<f64>, b: f64) -> Result<Self> {
        let orth = (r.transpose() * r - Matrix3::identity()).abs().max();
        let det = r.determinant();
        if orth > 1e-12 || (det - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "not a proper rotation (orthogonality defect {orth:e}, determinant {det})"
            )));
        }
        Ok(Self { r, v, a, b })
    }

    pub fn identity() -> Self {
        Self { r: Matrix3::identity(), v: Vector3::zeros(), a: Vector3::zeros(), b: 0.0 }
    }

    /// Uniformly random rotation with velocity, translation and time shift in `[-1, 1)`.
    pub fn random(rng: &mut impl Rng) -> Self {
        let q = loop {
            let q = Quaternion::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let n = q.norm();
            if n > 1e-3 && n <= 1.0 {
                break q;
            }
        };
        let r = UnitQuaternion::from_quaternion(q).to_rotation_matrix().into_inner();
        let mut vec3 = || Vector3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let v = vec3();
        let a = vec3();
        let b = rng.gen_range(-1.0..1.0);
        Self { r, v, a, b }
    }

    pub fn as_affine(&self) -> AffineMap5 {
        AffineMap5 { boost: *self, c: 0.0 }
    }
}

pub fn apply_boost(t: &GalileanBoost, e: &Event5) -> Result<Event5> {
    t.as_affine().apply(e)
}

/// A boost followed by a constant shift of `s`. These close under
/// composition, while bare boosts close only up to that shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap5 {
    pub boost: GalileanBoost,
    pub c: f64,
}

impl AffineMap5 {
    pub fn apply(&self, e: &Event5) -> Result<Event5> {
        e.expect(Basis::LightCone)?;
        let GalileanBoost { r, v, a, b } = self.boost;
        let rx = r * e.x;
        Ok(Event5 {
            basis: Basis::LightCone,
            x: rx + v * e.t() + a,
            a: e.t() + b,
            b: e.s() + rx.dot(&v) + 0.5 * v.norm_squared() * e.t() + self.c,
        })
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &AffineMap5) -> AffineMap5 {
        let (t2, t1) = (&self.boost, &first.boost);
        let boost = GalileanBoost {
            r: t2.r * t1.r,
            v: t2.r * t1.v + t2.v,
            a: t2.r * t1.a + t2.v * t1.b + t2.a,
            b: t1.b + t2.b,
        };
        let c = first.c + self.c + (t2.r * t1.a).dot(&t2.v) + 0.5 * t2.v.norm_squared() * t1.b;
        AffineMap5 { boost, c }
    }
}

fn diff(p: &Event5, q: &Event5) -> [f64; 5] {
    let (p, q) = (p.components(), q.components());
    std::array::from_fn(|k| p[k] - q[k])
}

/// Max over pairs of `|g(dx', dx') − g(dx, dx)|` under an arbitrary event map.
pub fn invariance_residual_of(map: impl Fn(&Event5) -> Result<Event5>, pairs: &[(Event5, Event5)]) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::InvalidArgument("need at least one event pair".into()));
    }
    let mut worst: f64 = 0.0;
    for (p, q) in pairs {
        let before = interval(&diff(p, q));
        let after = interval(&diff(&map(p)?, &map(q)?));
        worst = worst.max((after - before).abs());
    }
    Ok(worst)
}

pub fn metric_invariance_residual(t: &GalileanBoost, pairs: &[(Event5, Event5)]) -> Result<f64> {
    invariance_residual_of(|e| apply_boost(t, e), pairs)
}

/// The boost with the `v²t/2` term of `s'` removed; not a symmetry.
pub fn truncated_boost(t: &GalileanBoost, e: &Event5) -> Result<Event5> {
    let mut out = apply_boost(t, e)?;
    out.b -= 0.5 * t.v.norm_squared() * e.t();
    Ok(out)
}

pub fn random_event(rng: &mut impl Rng) -> Event5 {
    let mut c = || rng.gen_range(-1.0..1.0);
    Event5::light_cone([c(), c(), c()], c(), c())
}

/// Non-relativistic energy `p²/2m` from the massless five-momentum condition.
pub fn dispersion(p: [f64; 3], m: f64) -> Result<f64> {
    if m.is_nan() || m <= 0.0 {
        return Err(Error::InvalidArgument(format!("mass must be positive, got {m}")));
    }
    Ok(Vector3::from(p).norm_squared() / (2.0 * m))
}

/// `p^μ p_μ = −2 p_s p_t + p²` with `p_s = −m`, `p_t = −𝓔`.
pub fn null_check(p: [f64; 3], m: f64, energy: f64) -> f64 {
    let (ps, pt) = (-m, -energy);
    -2.0 * ps * pt + Vector3::from(p).norm_squared()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn metric_entries() {
        let g = galilean_metric();
        assert_eq!(g[0][0], 1.0);
        assert_eq!(g[3][3], 0.0);
        assert_eq!(g[3][4], -1.0);
        assert_eq!(g[4][3], -1.0);
    }

    #[test]
    fn lightcone_values_and_round_trip() {
        let e = lightcone_map(&Event5::cartesian([0.0; 3], 0.0, 0.0)).unwrap();
        assert_eq!((e.t(), e.s()), (0.0, 0.0));
        let e = lightcone_map(&Event5::cartesian([0.0; 3], 1.0, 0.0)).unwrap();
        assert_eq!((e.t(), e.s()), (FRAC_1_SQRT_2, FRAC_1_SQRT_2));
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        for _ in 0..100 {
            let mut c = || rng.gen_range(-1.0..1.0);
            let e = Event5::cartesian([c(), c(), c()], c(), c());
            let back = lightcone_inverse(&lightcone_map(&e).unwrap()).unwrap();
            for (u, v) in back.components().iter().zip(e.components()) {
                assert!((u - v).abs() <= 1e-15);
            }
        }
        assert!(lightcone_map(&Event5::light_cone([0.0; 3], 0.0, 0.0)).is_err());
        assert!(lightcone_inverse(&Event5::cartesian([0.0; 3], 0.0, 0.0)).is_err());
    }

    #[test]
    fn metric_conjugation_is_minus_one() {
        let (kappa, residual) = metric_conjugation();
        assert_eq!(kappa, -1.0);
        assert!(residual < 1e-15);
    }

    #[test]
    fn boost_examples() {
        let e = Event5::light_cone([0.3, -0.2, 1.0], 0.7, -0.4);
        assert_eq!(apply_boost(&GalileanBoost::identity(), &e).unwrap(), e);

        let shift =
            GalileanBoost::new(Matrix3::identity(), Vector3::zeros(), Vector3::new(1.0, 2.0, 3.0), 0.0).unwrap();
        let out = apply_boost(&shift, &e).unwrap();
        assert_eq!(out.x, e.x + Vector3::new(1.0, 2.0, 3.0));
        assert_eq!(out.s(), e.s());

        let boost =
            GalileanBoost::new(Matrix3::identity(), Vector3::new(1.0, 0.0, 0.0), Vector3::zeros(), 0.0).unwrap();
        let out = apply_boost(&boost, &Event5::light_cone([1.0, 0.0, 0.0], 2.0, 0.5)).unwrap();
        assert_eq!(out.x, Vector3::new(3.0, 0.0, 0.0));
        assert_eq!(out.s(), 2.5);
    }

    #[test]
    fn rejects_improper_rotations() {
        let reflect = Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0));
        assert!(GalileanBoost::new(reflect, Vector3::zeros(), Vector3::zeros(), 0.0).is_err());
        assert!(GalileanBoost::new(Matrix3::identity() * 2.0, Vector3::zeros(), Vector3::zeros(), 0.0).is_err());
    }

    #[test]
    fn invariance_and_negative_control() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        let pairs: Vec<_> = (0..100).map(|_| (random_event(&mut rng), random_event(&mut rng))).collect();
        assert_eq!(metric_invariance_residual(&GalileanBoost::identity(), &pairs).unwrap(), 0.0);
        for _ in 0..10 {
            let t = GalileanBoost::random(&mut rng);
            GalileanBoost::new(t.r, t.v, t.a, t.b).unwrap();
            assert!(metric_invariance_residual(&t, &pairs).unwrap() <= 1e-10);
            assert!(invariance_residual_of(|e| truncated_boost(&t, e), &pairs).unwrap() > 1e-3);
        }
        assert!(metric_invariance_residual(&GalileanBoost::identity(), &[]).is_err());
    }

    #[test]
    fn composition_closes_with_s_shift() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let t1 = GalileanBoost::random(&mut rng).as_affine();
            let t2 = GalileanBoost::random(&mut rng).as_affine();
            let composed = t2.after(&t1);
            let e = random_event(&mut rng);
            let direct = t2.apply(&t1.apply(&e).unwrap()).unwrap();
            let via = composed.apply(&e).unwrap();
            for (u, v) in direct.components().iter().zip(via.components()) {
                assert!((u - v).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn bare_boosts_do_not_close() {
        let t1 = GalileanBoost::new(Matrix3::identity(), Vector3::zeros(), Vector3::new(1.0, 0.0, 0.0), 0.0).unwrap();
        let t2 = GalileanBoost::new(Matrix3::identity(), Vector3::new(1.0, 0.0, 0.0), Vector3::zeros(), 0.0).unwrap();
        let composed = t2.as_affine().after(&t1.as_affine());
        assert_eq!(composed.c, 1.0);
    }

    #[test]
    fn dispersion_examples() {
        assert_eq!(dispersion([0.0; 3], 1.0).unwrap(), 0.0);
        assert_eq!(dispersion([1.0, 0.0, 0.0], 2.0).unwrap(), 0.25);
        assert!(dispersion([1.0, 0.0, 0.0], 0.0).is_err());
        let p = [0.3, -1.2, 0.5];
        let e = dispersion(p, 1.7).unwrap();
        assert_eq!(null_check(p, 1.7, e), 0.0);
    }
}
