//! Scalar field expressions over the coordinates (x, y, z, w, t).
//!
//! Potentials are configured as infix strings, parsed into [`FieldExpr`]
//! trees, evaluated pointwise, and differentiated symbolically so that every
//! gradient, curl and divergence used by the Hamiltonians is exact before the
//! grid is applied.

mod diff;
mod parse;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

pub use parse::{ParseError, ParseErrorKind};

/// One of the five coordinates a field may depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    X,
    Y,
    Z,
    W,
    T,
}

impl Coord {
    pub const ALL: [Coord; 5] = [Coord::X, Coord::Y, Coord::Z, Coord::W, Coord::T];
    pub const SPATIAL: [Coord; 3] = [Coord::X, Coord::Y, Coord::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Coord::X => "x",
            Coord::Y => "y",
            Coord::Z => "z",
            Coord::W => "w",
            Coord::T => "t",
        }
    }

    pub fn from_name(name: &str) -> Option<Coord> {
        Coord::ALL.into_iter().find(|c| c.name() == name)
    }

    /// Spatial coordinate for a 0-based spatial index.
    pub fn spatial(i: usize) -> Coord {
        Coord::SPATIAL[i]
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A point (x, y, z, w, t).
pub type Point = [f64; 5];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
        }
    }

    fn apply(self, v: f64) -> f64 {
        match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Exp => v.exp(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Const(f64),
    Var(Coord),
    Add(FieldExpr, FieldExpr),
    Sub(FieldExpr, FieldExpr),
    Mul(FieldExpr, FieldExpr),
    Div(FieldExpr, FieldExpr),
    Pow(FieldExpr, i32),
    Neg(FieldExpr),
    Call(Func, FieldExpr),
}

/// Immutable, cheaply clonable expression tree.
#[derive(Clone, PartialEq)]
pub struct FieldExpr(Arc<Node>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalErrorKind {
    DivisionByZero,
    NonFinite,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{}: in subexpression `{subtree}`", match .kind {
    EvalErrorKind::DivisionByZero => "division by zero",
    EvalErrorKind::NonFinite => "non-finite value",
})]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub subtree: String,
}

impl FieldExpr {
    pub fn parse(source: &str) -> Result<FieldExpr, ParseError> {
        parse::parse(source)
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    fn raw(node: Node) -> FieldExpr {
        FieldExpr(Arc::new(node))
    }

    pub fn constant(v: f64) -> FieldExpr {
        Self::raw(Node::Const(v))
    }

    pub fn var(c: Coord) -> FieldExpr {
        Self::raw(Node::Var(c))
    }

    pub fn zero() -> FieldExpr {
        Self::constant(0.0)
    }

    pub fn as_const(&self) -> Option<f64> {
        match *self.0 {
            Node::Const(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_const() == Some(0.0)
    }

    fn is_one(&self) -> bool {
        self.as_const() == Some(1.0)
    }

    // Smart constructors fold constant operands and drop neutral elements.
    // Folding only happens when the folded value is finite.

    fn fold(v: f64, otherwise: impl FnOnce() -> Node) -> FieldExpr {
        if v.is_finite() {
            Self::constant(v)
        } else {
            Self::raw(otherwise())
        }
    }

    pub fn sum(a: FieldExpr, b: FieldExpr) -> FieldExpr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => Self::fold(x + y, || Node::Add(a, b)),
            (Some(0.0), _) => b,
            (_, Some(0.0)) => a,
            _ => Self::raw(Node::Add(a, b)),
        }
    }

    pub fn difference(a: FieldExpr, b: FieldExpr) -> FieldExpr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => Self::fold(x - y, || Node::Sub(a, b)),
            (Some(0.0), _) => Self::negate(b),
            (_, Some(0.0)) => a,
            _ => Self::raw(Node::Sub(a, b)),
        }
    }

    pub fn product(a: FieldExpr, b: FieldExpr) -> FieldExpr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => Self::fold(x * y, || Node::Mul(a, b)),
            (Some(0.0), _) => Self::zero(),
            (_, Some(0.0)) => Self::zero(),
            _ if a.is_one() => b,
            _ if b.is_one() => a,
            _ => Self::raw(Node::Mul(a, b)),
        }
    }

    pub fn quotient(a: FieldExpr, b: FieldExpr) -> FieldExpr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) if y != 0.0 => Self::fold(x / y, || Node::Div(a, b)),
            _ if b.is_one() => a,
            _ => Self::raw(Node::Div(a, b)),
        }
    }

    pub fn pow(base: FieldExpr, exponent: i32) -> FieldExpr {
        match (base.as_const(), exponent) {
            (_, 0) => Self::constant(1.0),
            (_, 1) => base,
            (Some(x), n) if x != 0.0 || n > 0 => Self::fold(x.powi(n), || Node::Pow(base, n)),
            _ => Self::raw(Node::Pow(base, exponent)),
        }
    }

    pub fn negate(a: FieldExpr) -> FieldExpr {
        match a.as_const() {
            Some(x) => Self::constant(-x),
            None => Self::raw(Node::Neg(a)),
        }
    }

    pub fn call(f: Func, a: FieldExpr) -> FieldExpr {
        match a.as_const() {
            Some(x) => Self::fold(f.apply(x), || Node::Call(f, a)),
            None => Self::raw(Node::Call(f, a)),
        }
    }

    pub fn sin(a: FieldExpr) -> FieldExpr {
        Self::call(Func::Sin, a)
    }

    pub fn cos(a: FieldExpr) -> FieldExpr {
        Self::call(Func::Cos, a)
    }

    pub fn exp(a: FieldExpr) -> FieldExpr {
        Self::call(Func::Exp, a)
    }

    pub fn scale(&self, c: f64) -> FieldExpr {
        Self::product(Self::constant(c), self.clone())
    }

    /// Evaluates the expression at `p`.
    pub fn eval(&self, p: &Point) -> Result<f64, EvalError> {
        let v = match self.node() {
            Node::Const(c) => *c,
            Node::Var(c) => p[c.index()],
            Node::Add(a, b) => a.eval(p)? + b.eval(p)?,
            Node::Sub(a, b) => a.eval(p)? - b.eval(p)?,
            Node::Mul(a, b) => a.eval(p)? * b.eval(p)?,
            Node::Div(a, b) => {
                let num = a.eval(p)?;
                let den = b.eval(p)?;
                if den == 0.0 {
                    return Err(self.eval_error(EvalErrorKind::DivisionByZero));
                }
                num / den
            }
            Node::Pow(a, n) => {
                let base = a.eval(p)?;
                if base == 0.0 && *n < 0 {
                    return Err(self.eval_error(EvalErrorKind::DivisionByZero));
                }
                base.powi(*n)
            }
            Node::Neg(a) => -a.eval(p)?,
            Node::Call(f, a) => f.apply(a.eval(p)?),
        };
        if !v.is_finite() {
            return Err(self.eval_error(EvalErrorKind::NonFinite));
        }
        Ok(v)
    }

    fn eval_error(&self, kind: EvalErrorKind) -> EvalError {
        EvalError { kind, subtree: self.to_string() }
    }

    /// Exact derivative with respect to `var`.
    pub fn diff(&self, var: Coord) -> FieldExpr {
        diff::diff(self, var)
    }

    /// Whether `var` occurs anywhere in the tree.
    pub fn depends_on(&self, var: Coord) -> bool {
        match self.node() {
            Node::Const(_) => false,
            Node::Var(c) => *c == var,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                a.depends_on(var) || b.depends_on(var)
            }
            Node::Pow(a, _) | Node::Neg(a) | Node::Call(_, a) => a.depends_on(var),
        }
    }

    // Precedence levels used by the printer: 1 additive, 2 multiplicative,
    // 3 unary minus, 4 power, 5 atom.
    fn precedence(&self) -> u8 {
        match self.node() {
            Node::Const(c) if c.is_sign_negative() => 3,
            Node::Const(_) | Node::Var(_) | Node::Call(..) => 5,
            Node::Add(..) | Node::Sub(..) => 1,
            Node::Mul(..) | Node::Div(..) => 2,
            Node::Neg(_) => 3,
            Node::Pow(..) => 4,
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() >= min {
            write!(f, "{self}")
        } else {
            write!(f, "({self})")
        }
    }
}

impl fmt::Display for FieldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binary = |f: &mut fmt::Formatter<'_>, a: &FieldExpr, op: &str, b: &FieldExpr, lp: u8| {
            a.write_child(f, lp)?;
            f.write_str(op)?;
            b.write_child(f, lp + 1)
        };
        match self.node() {
            Node::Const(c) => write!(f, "{c}"),
            Node::Var(c) => write!(f, "{c}"),
            Node::Add(a, b) => binary(f, a, " + ", b, 1),
            Node::Sub(a, b) => binary(f, a, " - ", b, 1),
            Node::Mul(a, b) => binary(f, a, "*", b, 2),
            Node::Div(a, b) => binary(f, a, "/", b, 2),
            Node::Pow(a, n) => {
                a.write_child(f, 5)?;
                write!(f, "^{n}")
            }
            Node::Neg(a) => {
                f.write_str("-")?;
                a.write_child(f, 3)
            }
            Node::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

impl fmt::Debug for FieldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldExpr({self})")
    }
}

impl Add for FieldExpr {
    type Output = FieldExpr;
    fn add(self, rhs: FieldExpr) -> FieldExpr {
        FieldExpr::sum(self, rhs)
    }
}

impl Sub for FieldExpr {
    type Output = FieldExpr;
    fn sub(self, rhs: FieldExpr) -> FieldExpr {
        FieldExpr::difference(self, rhs)
    }
}

impl Mul for FieldExpr {
    type Output = FieldExpr;
    fn mul(self, rhs: FieldExpr) -> FieldExpr {
        FieldExpr::product(self, rhs)
    }
}

impl Div for FieldExpr {
    type Output = FieldExpr;
    fn div(self, rhs: FieldExpr) -> FieldExpr {
        FieldExpr::quotient(self, rhs)
    }
}

impl Neg for FieldExpr {
    type Output = FieldExpr;
    fn neg(self) -> FieldExpr {
        FieldExpr::negate(self)
    }
}

pub fn parse_expr(source: &str) -> Result<FieldExpr, ParseError> {
    FieldExpr::parse(source)
}

pub fn eval_expr(e: &FieldExpr, point: &Point) -> Result<f64, EvalError> {
    e.eval(point)
}

pub fn diff_expr(e: &FieldExpr, var: Coord) -> FieldExpr {
    e.diff(var)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(x: f64, y: f64, z: f64) -> Point {
        [x, y, z, 0.0, 0.0]
    }

    #[test]
    fn constant_evaluates_everywhere() {
        let e = FieldExpr::parse("7").unwrap();
        assert_eq!(e.eval(&at(1.0, -2.0, 3.0)).unwrap(), 7.0);
        assert_eq!(e.eval(&at(0.0, 0.0, 0.0)).unwrap(), 7.0);
    }

    #[test]
    fn arithmetic_evaluation() {
        let e = FieldExpr::parse("x+2*y").unwrap();
        assert_eq!(e.eval(&at(1.0, 3.0, 0.0)).unwrap(), 7.0);
        assert_eq!(FieldExpr::parse("exp(0)").unwrap().eval(&at(0.0, 0.0, 0.0)).unwrap(), 1.0);
        let e = FieldExpr::parse("sin(x)*cos(y)").unwrap();
        assert_eq!(e.eval(&at(0.0, 0.0, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn division_by_zero_names_subtree() {
        let e = FieldExpr::parse("1 + 1/x").unwrap();
        let err = e.eval(&at(0.0, 0.0, 0.0)).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::DivisionByZero);
        assert_eq!(err.subtree, "1/x");
        let err = FieldExpr::parse("x^-2").unwrap().eval(&at(0.0, 1.0, 1.0)).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::DivisionByZero);
    }

    #[test]
    fn overflow_is_reported() {
        let e = FieldExpr::parse("exp(x)").unwrap();
        let err = e.eval(&at(1000.0, 0.0, 0.0)).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::NonFinite);
    }

    #[test]
    fn printer_keeps_tree_shape() {
        for src in ["x - (y - z)", "x/(y*z)", "-(x + y)", "(-x)^2", "-x^2", "x*-y", "(x^2)^3", "2 - -x"] {
            let e = FieldExpr::parse(src).unwrap();
            let again = FieldExpr::parse(&e.to_string()).unwrap();
            assert_eq!(e, again, "{src} printed as {e}");
        }
    }

    #[test]
    fn depends_on_tracks_variables() {
        let e = FieldExpr::parse("0.3*z + sin(t)").unwrap();
        assert!(e.depends_on(Coord::Z));
        assert!(e.depends_on(Coord::T));
        assert!(!e.depends_on(Coord::W));
    }

    #[test]
    fn constant_folding_in_constructors() {
        let e = FieldExpr::constant(2.0) * FieldExpr::constant(3.0) + FieldExpr::var(Coord::X) * FieldExpr::zero();
        assert_eq!(e.as_const(), Some(6.0));
    }
}
