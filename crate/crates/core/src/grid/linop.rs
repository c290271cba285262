//! Matrix-free complex linear operators.
//!
//! Operators are immutable expression trees over a handful of primitive
//! actions (diagonal, periodic hopping, dense, Kronecker with an internal
//! matrix). State vectors on `grid ⊗ internal` are stored site-major with the
//! internal index fastest: `index = site * s + a`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, ONE, ZERO};

/// Largest dimension for which dense materialization is allowed.
pub const DENSE_LIMIT: usize = 8192;

#[derive(Clone)]
pub struct LinOp {
    dim: usize,
    node: Arc<Node>,
}

/// Periodic hops along one grid axis: `y[j] += w[j] * x[neighbor(j, shift)]`.
#[derive(Clone, Debug)]
pub struct Hop {
    pub n: usize,
    pub stride: usize,
    pub terms: Vec<(isize, Vec<C64>)>,
}

impl Hop {
    fn neighbor(&self, site: usize, shift: isize) -> usize {
        let along = (site / self.stride) % self.n;
        let moved = (along as isize + shift).rem_euclid(self.n as isize) as usize;
        site + moved * self.stride - along * self.stride
    }
}

enum Node {
    Zero,
    Identity,
    Diagonal(Vec<C64>),
    Hop(Hop),
    Dense(ComplexMatrix),
    Kron {
        space: LinOp,
        internal: ComplexMatrix,
    },
    Sum(Vec<LinOp>),
    /// `[A, B, C]` acts as `A ∘ B ∘ C`.
    Product(Vec<LinOp>),
    Scaled(C64, LinOp),
    Adjoint(LinOp),
    /// Internal block `(a, b)` of an operator on `space ⊗ C^s`.
    Block {
        op: LinOp,
        s: usize,
        a: usize,
        b: usize,
    },
}

impl LinOp {
    fn new(dim: usize, node: Node) -> Self {
        Self { dim, node: Arc::new(node) }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(dim, Node::Zero)
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(dim, Node::Identity)
    }

    pub fn diagonal(entries: Vec<C64>) -> Self {
        Self::new(entries.len(), Node::Diagonal(entries))
    }

    pub fn real_diagonal(entries: impl IntoIterator<Item = f64>) -> Self {
        Self::diagonal(entries.into_iter().map(|v| C64::new(v, 0.0)).collect())
    }

    pub fn hop(dim: usize, hop: Hop) -> Self {
        assert!(hop.terms.iter().all(|(_, w)| w.len() == dim), "hop weights must cover every site");
        Self::new(dim, Node::Hop(hop))
    }

    pub fn dense(m: ComplexMatrix) -> Self {
        Self::new(m.dim(), Node::Dense(m))
    }

    /// `space ⊗ internal` without materializing the product.
    pub fn kron(space: &LinOp, internal: &ComplexMatrix) -> Self {
        Self::new(space.dim * internal.dim(), Node::Kron { space: space.clone(), internal: internal.clone() })
    }

    pub fn sum(terms: Vec<LinOp>) -> Self {
        assert!(!terms.is_empty(), "empty operator sum");
        let dim = terms[0].dim;
        assert!(terms.iter().all(|t| t.dim == dim), "dimension mismatch in operator sum");
        let terms: Vec<LinOp> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        match terms.len() {
            0 => Self::zero(dim),
            1 => terms.into_iter().next().unwrap(),
            _ => Self::new(dim, Node::Sum(terms)),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinOp) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in operator product");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.dim);
        }
        if matches!(*self.node, Node::Identity) {
            return other.clone();
        }
        if matches!(*other.node, Node::Identity) {
            return self.clone();
        }
        Self::new(self.dim, Node::Product(vec![self.clone(), other.clone()]))
    }

    pub fn scale(&self, c: C64) -> Self {
        if c == ZERO || self.is_zero() {
            return Self::zero(self.dim);
        }
        if c == ONE {
            return self.clone();
        }
        Self::new(self.dim, Node::Scaled(c, self.clone()))
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    pub fn add(&self, other: &LinOp) -> Self {
        Self::sum(vec![self.clone(), other.clone()])
    }

    pub fn sub(&self, other: &LinOp) -> Self {
        Self::sum(vec![self.clone(), other.scale_real(-1.0)])
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.dim, Node::Adjoint(self.clone()))
    }

    /// The block `⟨a| op |b⟩` acting on the space factor, for an operator on `space ⊗ C^s`.
    pub fn internal_block(&self, s: usize, a: usize, b: usize) -> Result<Self> {
        if s == 0 || !self.dim.is_multiple_of(s) || a >= s || b >= s {
            return Err(Error::DimensionMismatch(format!(
                "block ({a}, {b}) of internal dimension {s} in {}",
                self.dim
            )));
        }
        Ok(Self::new(self.dim / s, Node::Block { op: self.clone(), s, a, b }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        matches!(*self.node, Node::Zero)
    }

    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        let mut y = vec![ZERO; self.dim];
        self.apply_into(x, &mut y, false);
        y
    }

    pub fn apply_adjoint(&self, x: &[C64]) -> Vec<C64> {
        let mut y = vec![ZERO; self.dim];
        self.apply_into(x, &mut y, true);
        y
    }

    /// Accumulates `op x` (or `op† x`) into `y`.
    fn apply_into(&self, x: &[C64], y: &mut [C64], adjoint: bool) {
        assert_eq!(x.len(), self.dim, "state length does not match operator dimension");
        match &*self.node {
            Node::Zero => {}
            Node::Identity => y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += xi),
            Node::Diagonal(d) => {
                for ((yi, xi), di) in y.iter_mut().zip(x).zip(d) {
                    *yi += if adjoint { di.conj() } else { *di } * xi;
                }
            }
            Node::Hop(h) => {
                for (shift, w) in &h.terms {
                    for (j, wj) in w.iter().enumerate() {
                        if *wj == ZERO {
                            continue;
                        }
                        let k = h.neighbor(j, *shift);
                        if adjoint {
                            y[k] += wj.conj() * x[j];
                        } else {
                            y[j] += wj * x[k];
                        }
                    }
                }
            }
            Node::Dense(m) => {
                let n = m.dim();
                for i in 0..n {
                    for j in 0..n {
                        if adjoint {
                            y[j] += m[(i, j)].conj() * x[i];
                        } else {
                            y[i] += m[(i, j)] * x[j];
                        }
                    }
                }
            }
            Node::Kron { space, internal } => kron_apply(space, internal, x, y, adjoint),
            Node::Sum(terms) => terms.iter().for_each(|t| t.apply_into(x, y, adjoint)),
            Node::Product(factors) => {
                let mut v = x.to_vec();
                let order: Box<dyn Iterator<Item = &LinOp>> =
                    if adjoint { Box::new(factors.iter()) } else { Box::new(factors.iter().rev()) };
                for f in order {
                    let mut next = vec![ZERO; self.dim];
                    f.apply_into(&v, &mut next, adjoint);
                    v = next;
                }
                y.iter_mut().zip(v).for_each(|(yi, vi)| *yi += vi);
            }
            Node::Scaled(c, op) => {
                let c = if adjoint { c.conj() } else { *c };
                let mut tmp = vec![ZERO; self.dim];
                op.apply_into(x, &mut tmp, adjoint);
                y.iter_mut().zip(tmp).for_each(|(yi, ti)| *yi += c * ti);
            }
            Node::Adjoint(op) => op.apply_into(x, y, !adjoint),
            Node::Block { op, s, a, b } => {
                let (from, to) = if adjoint { (*a, *b) } else { (*b, *a) };
                let mut full = vec![ZERO; op.dim];
                for (site, xi) in x.iter().enumerate() {
                    full[site * s + from] = *xi;
                }
                let mut out = vec![ZERO; op.dim];
                op.apply_into(&full, &mut out, adjoint);
                for (site, yi) in y.iter_mut().enumerate() {
                    *yi += out[site * s + to];
                }
            }
        }
    }

    /// Calls `f(j, column_j)` for every column of the operator.
    pub fn for_each_column(&self, mut f: impl FnMut(usize, &[C64])) {
        let mut e = vec![ZERO; self.dim];
        for j in 0..self.dim {
            e[j] = ONE;
            let col = self.apply(&e);
            e[j] = ZERO;
            f(j, &col);
        }
    }

    /// Dense materialization, available up to [`DENSE_LIMIT`].
    pub fn to_dense(&self) -> Result<ComplexMatrix> {
        if self.dim > DENSE_LIMIT {
            return Err(Error::DimensionTooLarge { dim: self.dim, limit: DENSE_LIMIT });
        }
        let mut m = ComplexMatrix::zeros(self.dim);
        self.for_each_column(|j, col| {
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = *v;
            }
        });
        Ok(m)
    }

    /// Per-site blocks when the operator never couples different sites.
    ///
    /// Returns the block size `s` and the `dim / s` diagonal blocks; every
    /// entry outside them is zero. `None` for hopping, dense or sliced nodes.
    pub fn site_blocks(&self) -> Option<(usize, Vec<ComplexMatrix>)> {
        let unit =
            |f: &dyn Fn(usize) -> C64| Some((1, (0..self.dim).map(|i| ComplexMatrix::diagonal(&[f(i)])).collect()));
        match &*self.node {
            Node::Zero => unit(&|_| ZERO),
            Node::Identity => unit(&|_| ONE),
            Node::Diagonal(d) => unit(&|i| d[i]),
            Node::Kron { space, internal } => {
                let (t, blocks) = space.site_blocks()?;
                Some((t * internal.dim(), blocks.iter().map(|b| b.kron(internal)).collect()))
            }
            Node::Scaled(c, op) => op.site_blocks().map(|(s, b)| (s, b.iter().map(|m| m.scale(*c)).collect())),
            Node::Adjoint(op) => op.site_blocks().map(|(s, b)| (s, b.iter().map(ComplexMatrix::adjoint).collect())),
            Node::Sum(terms) | Node::Product(terms) => {
                let parts: Vec<_> = terms.iter().map(LinOp::site_blocks).collect::<Option<_>>()?;
                let s = parts.iter().fold(1, |acc, (s, _)| lcm(acc, *s));
                if !self.dim.is_multiple_of(s) {
                    return None;
                }
                let mut parts = parts.into_iter().map(|(from, b)| regroup(&b, from, s));
                let first = parts.next()?;
                let is_sum = matches!(*self.node, Node::Sum(_));
                let out = parts.fold(first, |acc, next| {
                    acc.iter().zip(&next).map(|(a, b)| if is_sum { a + b } else { a * b }).collect()
                });
                Some((s, out))
            }
            Node::Hop(_) | Node::Dense(_) | Node::Block { .. } => None,
        }
    }

    /// Max-entry norm of the dense matrix, from site blocks when available
    /// and otherwise one column at a time.
    pub fn max_norm(&self) -> Result<f64> {
        if self.dim > DENSE_LIMIT {
            return Err(Error::DimensionTooLarge { dim: self.dim, limit: DENSE_LIMIT });
        }
        if let Some((_, blocks)) = self.site_blocks() {
            return Ok(blocks.iter().map(ComplexMatrix::max_norm).fold(0.0, f64::max));
        }
        let mut worst: f64 = 0.0;
        self.for_each_column(|_, col| {
            worst = col.iter().map(|v| v.norm()).fold(worst, f64::max);
        });
        Ok(worst)
    }

    /// Max-entry norm of `self − other` as dense matrices.
    pub fn max_norm_diff(&self, other: &LinOp) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.dim, other.dim)));
        }
        self.sub(other).max_norm()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Merges consecutive blocks of size `from` into block-diagonal blocks of size `to`.
fn regroup(blocks: &[ComplexMatrix], from: usize, to: usize) -> Vec<ComplexMatrix> {
    if from == to {
        return blocks.to_vec();
    }
    blocks
        .chunks(to / from)
        .map(|chunk| {
            let mut m = ComplexMatrix::zeros(to);
            for (k, b) in chunk.iter().enumerate() {
                for i in 0..from {
                    for j in 0..from {
                        m[(k * from + i, k * from + j)] = b[(i, j)];
                    }
                }
            }
            m
        })
        .collect()
}

fn kron_apply(space: &LinOp, internal: &ComplexMatrix, x: &[C64], y: &mut [C64], adjoint: bool) {
    let s = internal.dim();
    let sites = space.dim;
    let coeff = |a: usize, b: usize| if adjoint { internal[(b, a)].conj() } else { internal[(a, b)] };
    match &*space.node {
        Node::Zero => {}
        Node::Identity | Node::Diagonal(_) => {
            let diag = match &*space.node {
                Node::Diagonal(d) => Some(d),
                _ => None,
            };
            for site in 0..sites {
                let w = match diag {
                    Some(d) if adjoint => d[site].conj(),
                    Some(d) => d[site],
                    None => ONE,
                };
                if w == ZERO {
                    continue;
                }
                let xs = &x[site * s..(site + 1) * s];
                for a in 0..s {
                    let mut acc = ZERO;
                    for (b, xb) in xs.iter().enumerate() {
                        acc += coeff(a, b) * xb;
                    }
                    y[site * s + a] += w * acc;
                }
            }
        }
        _ => {
            let mut comp = vec![ZERO; sites];
            for b in 0..s {
                if (0..s).all(|a| coeff(a, b) == ZERO) {
                    continue;
                }
                for site in 0..sites {
                    comp[site] = x[site * s + b];
                }
                let mut z = vec![ZERO; sites];
                space.apply_into(&comp, &mut z, adjoint);
                for a in 0..s {
                    let c = coeff(a, b);
                    if c == ZERO {
                        continue;
                    }
                    for site in 0..sites {
                        y[site * s + a] += c * z[site];
                    }
                }
            }
        }
    }
}

impl fmt::Debug for LinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &*self.node {
            Node::Zero => "zero",
            Node::Identity => "identity",
            Node::Diagonal(_) => "diagonal",
            Node::Hop(_) => "hop",
            Node::Dense(_) => "dense",
            Node::Kron { .. } => "kron",
            Node::Sum(_) => "sum",
            Node::Product(_) => "product",
            Node::Scaled(..) => "scaled",
            Node::Adjoint(_) => "adjoint",
            Node::Block { .. } => "block",
        };
        write!(f, "LinOp({kind}, dim={})", self.dim)
    }
}

/// ⟨u, v⟩ = Σ conj(u_i) v_i
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}
