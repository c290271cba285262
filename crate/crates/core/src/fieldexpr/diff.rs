use super::{Coord, FieldExpr, Func, Node};

pub(super) fn diff(e: &FieldExpr, var: Coord) -> FieldExpr {
    use FieldExpr as E;
    match e.node() {
        Node::Const(_) => E::zero(),
        Node::Var(c) => E::constant(if *c == var { 1.0 } else { 0.0 }),
        Node::Add(a, b) => E::sum(diff(a, var), diff(b, var)),
        Node::Sub(a, b) => E::difference(diff(a, var), diff(b, var)),
        Node::Mul(a, b) => E::sum(E::product(diff(a, var), b.clone()), E::product(a.clone(), diff(b, var))),
        Node::Div(a, b) => {
            let num = E::difference(E::product(diff(a, var), b.clone()), E::product(a.clone(), diff(b, var)));
            E::quotient(num, E::pow(b.clone(), 2))
        }
        Node::Pow(a, n) => {
            if *n == 0 {
                return E::zero();
            }
            let outer = E::product(E::constant(*n as f64), E::pow(a.clone(), n - 1));
            E::product(outer, diff(a, var))
        }
        Node::Neg(a) => E::negate(diff(a, var)),
        Node::Call(f, a) => {
            let inner = diff(a, var);
            let outer = match f {
                Func::Sin => E::cos(a.clone()),
                Func::Cos => E::negate(E::sin(a.clone())),
                Func::Exp => e.clone(),
            };
            E::product(outer, inner)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(src: &str, v: Coord) -> FieldExpr {
        FieldExpr::parse(src).unwrap().diff(v)
    }

    #[test]
    fn linear_derivative_is_the_slope() {
        assert_eq!(d("0.3*z", Coord::Z).as_const(), Some(0.3));
        assert_eq!(d("x^2+y", Coord::Y).as_const(), Some(1.0));
        assert_eq!(d("x^2+y", Coord::W).as_const(), Some(0.0));
    }

    #[test]
    fn sine_derivative_at_origin() {
        assert_eq!(d("sin(x)", Coord::X).eval(&[0.0; 5]).unwrap(), 1.0);
    }

    #[test]
    fn quotient_rule() {
        // d/dx (x / (1 + x^2)) = (1 - x^2) / (1 + x^2)^2
        let e = d("x/(1 + x^2)", Coord::X);
        let x = 0.7_f64;
        let expected = (1.0 - x * x) / (1.0 + x * x).powi(2);
        assert!((e.eval(&[x, 0.0, 0.0, 0.0, 0.0]).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn negative_powers() {
        let e = d("x^-2", Coord::X);
        let x = 1.5_f64;
        assert!((e.eval(&[x, 0.0, 0.0, 0.0, 0.0]).unwrap() + 2.0 / x.powi(3)).abs() < 1e-15);
    }
}
