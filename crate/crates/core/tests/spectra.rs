use xdlab::fieldexpr::{Coord, FieldExpr};
use xdlab::grid::{covariant_kinetic, eigensolve, eigenvalues_hermitian, momentum_op, multiply_op, plane_wave, Grid};

fn oscillator() -> Vec<f64> {
    let g = Grid::cube(1, 256, 20.0).unwrap();
    let h = covariant_kinetic(&g, 0, &FieldExpr::zero(), 0.0, 0.0)
        .unwrap()
        .scale_real(0.5)
        .add(&multiply_op(&g, &FieldExpr::parse("x^2/2").unwrap(), 0.0).unwrap());
    eigenvalues_hermitian(&h).unwrap()
}

#[test]
fn harmonic_oscillator_lowest_levels() {
    let e = oscillator();
    assert!((e[0] - 0.5).abs() <= 1e-3, "{}", e[0]);
    assert!((e[1] - 1.5).abs() <= 1e-3, "{}", e[1]);
    // second-order stencil error grows like the level index squared
    assert!((e[2] - 2.5).abs() <= 3e-3, "{}", e[2]);
}

#[test]
fn oscillator_eigenvectors_are_normalized_and_even_odd() {
    let g = Grid::cube(1, 128, 16.0).unwrap();
    let h = covariant_kinetic(&g, 0, &FieldExpr::zero(), 0.0, 0.0)
        .unwrap()
        .scale_real(0.5)
        .add(&multiply_op(&g, &FieldExpr::parse("x^2/2").unwrap(), 0.0).unwrap());
    let pairs = eigensolve(&h, 1, 2).unwrap();
    for (k, p) in pairs.iter().enumerate() {
        assert!((p.vector.norm() - 1.0).abs() < 1e-12);
        // site j mirrors to 128 - j about x = 0
        let a = &p.vector.amplitudes;
        let parity = if k == 0 { 1.0 } else { -1.0 };
        let worst = (1..64).map(|j| (a[j] - a[128 - j] * parity).norm()).fold(0.0, f64::max);
        assert!(worst < 1e-8, "level {k}: {worst}");
    }
}

#[test]
fn plane_waves_diagonalize_momentum() {
    let g = Grid::new(&[Coord::Y], 32, 7.0).unwrap();
    let p = momentum_op(&g, 0).unwrap();
    for k in [-3, 0, 5] {
        let v = plane_wave(&g, 0, k);
        let pv = p.apply(&v);
        let lambda = (2.0 * std::f64::consts::PI * k as f64 / 32.0).sin() / g.spacing();
        let worst = pv.iter().zip(&v).map(|(a, b)| (a - b * lambda).norm()).fold(0.0, f64::max);
        assert!(worst < 1e-12);
    }
}
