use proptest::prelude::*;

use xdlab::fieldexpr::{Coord, FieldExpr, Point};
use xdlab::galilean::{metric_invariance_residual, Event5, GalileanBoost};
use xdlab::grid::{covariant_momentum, inner, multiply_op, Grid, LinOp};
use xdlab::matrix::ComplexMatrix;
use xdlab::C64;

fn arb_expr() -> impl Strategy<Value = FieldExpr> {
    let leaf = prop_oneof![
        (-3.0..3.0f64).prop_map(|c| FieldExpr::constant((c * 100.0).round() / 100.0)),
        prop::sample::select(Coord::ALL.to_vec()).prop_map(FieldExpr::var),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), 0..4i32).prop_map(|(a, k)| FieldExpr::pow(a, k)),
            inner.clone().prop_map(|a| -a),
            inner.clone().prop_map(FieldExpr::sin),
            inner.clone().prop_map(FieldExpr::cos),
            inner.prop_map(|a| FieldExpr::exp(a.scale(0.1))),
        ]
    })
}

fn arb_point() -> impl Strategy<Value = Point> {
    prop::array::uniform5(-1.0..1.0f64)
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

fn arb_vec(dim: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64).prop_map(|(r, i)| C64::new(r, i)), dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn printing_round_trips(e in arb_expr(), p in arb_point()) {
        let back = FieldExpr::parse(&e.to_string()).unwrap();
        prop_assert!(close(e.eval(&p).unwrap(), back.eval(&p).unwrap(), 1e-12));
    }

    #[test]
    fn derivative_is_linear(a in arb_expr(), b in arb_expr(), p in arb_point(), c in -2.0..2.0f64) {
        for v in Coord::ALL {
            let lhs = (a.clone() + b.clone().scale(c)).diff(v).eval(&p).unwrap();
            let rhs = a.diff(v).eval(&p).unwrap() + c * b.diff(v).eval(&p).unwrap();
            prop_assert!(close(lhs, rhs, 1e-10));
        }
    }

    #[test]
    fn mixed_partials_commute(e in arb_expr(), p in arb_point()) {
        let xy = e.diff(Coord::X).diff(Coord::Y).eval(&p).unwrap();
        let yx = e.diff(Coord::Y).diff(Coord::X).eval(&p).unwrap();
        prop_assert!(close(xy, yx, 1e-9));
    }

    #[test]
    fn parser_never_panics(s in "[xyzwt0-9.+*/^()sincoexp -]{0,32}") {
        if let Ok(e) = FieldExpr::parse(&s) {
            let _ = e.eval(&[0.3; 5]);
            let _ = e.diff(Coord::Z);
        }
    }

    #[test]
    fn operators_are_linear(u in arb_vec(32), v in arb_vec(32), a in -2.0..2.0f64, b in -2.0..2.0f64) {
        let g = Grid::cube(1, 16, 5.0).unwrap();
        let field = FieldExpr::parse("0.4*x + sin(x)").unwrap();
        let op = LinOp::kron(&covariant_momentum(&g, 0, &field, 1.0, 0.0).unwrap(), &ComplexMatrix::identity(2))
            .add(&LinOp::kron(&multiply_op(&g, &field, 0.0).unwrap(), &xdlab::clifford::pauli_matrix(2).unwrap()));
        let (a, b) = (C64::new(a, 0.3), C64::new(b, -0.1));
        let mix: Vec<C64> = u.iter().zip(&v).map(|(x, y)| a * x + b * y).collect();
        let lhs = op.apply(&mix);
        let (ou, ov) = (op.apply(&u), op.apply(&v));
        let scale = lhs.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for i in 0..32 {
            prop_assert!((lhs[i] - (a * ou[i] + b * ov[i])).norm() <= 1e-12 * scale);
        }
        // the dense form acts the same way, and the adjoint is the inner-product adjoint
        let dense = op.to_dense().unwrap().mul_vec(&u);
        prop_assert!(dense.iter().zip(&ou).all(|(x, y)| (x - y).norm() <= 1e-12 * scale));
        let lhs = inner(&v, &op.apply(&u));
        let rhs = inner(&op.apply_adjoint(&v), &u);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * scale * 32.0);
    }

    #[test]
    fn galilean_boosts_preserve_intervals(seed in any::<u64>(), pts in prop::collection::vec(prop::array::uniform5(-3.0..3.0f64), 2..8)) {
        use rand::SeedableRng;
        let boost = GalileanBoost::random(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let ev = |c: &[f64; 5]| Event5::light_cone([c[0], c[1], c[2]], c[3], c[4]);
        let pairs: Vec<_> = pts.windows(2).map(|w| (ev(&w[0]), ev(&w[1]))).collect();
        prop_assert!(metric_invariance_residual(&boost, &pairs).unwrap() <= 1e-12);
    }
}
