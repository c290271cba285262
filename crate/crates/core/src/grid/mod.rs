//! Periodic spatial grids and the operators that live on them.
//!
//! A [`Grid`] carries `d ∈ {1,2,3}` axes, each labelled by the spatial
//! coordinate it discretizes. Coordinates without an axis are pinned to 0,
//! which is how reduced problems (for example a single z-line) are set up.
//! Site coordinates are centred: `x_j = −L/2 + j·h`, `h = L/n`.

mod eigen;
mod linop;

use std::f64::consts::PI;

pub use eigen::{eigensolve, eigenvalues_hermitian, hermiticity_residual, EigenPair, HERMITIAN_PROBES};
pub use linop::{inner, norm, Hop, LinOp, DENSE_LIMIT};

use crate::error::{Error, Result};
use crate::fieldexpr::{Coord, EvalError, FieldExpr, Point};
use crate::matrix::{ComplexMatrix, C64, I};

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    axes: Vec<Coord>,
    n: usize,
    length: f64,
}

impl Grid {
    /// Grid over the given spatial coordinates, `n` points per axis, box length `length`.
    pub fn new(axes: &[Coord], n: usize, length: f64) -> Result<Grid> {
        if axes.is_empty() || axes.len() > 3 {
            return Err(Error::UnsupportedDimension(axes.len()));
        }
        for (k, a) in axes.iter().enumerate() {
            if !Coord::SPATIAL.contains(a) {
                return Err(Error::InvalidArgument(format!("grid axis must be x, y or z, got {a}")));
            }
            if axes[..k].contains(a) {
                return Err(Error::InvalidArgument(format!("grid axis {a} repeated")));
            }
        }
        if n < 3 {
            return Err(Error::InvalidArgument(format!("need at least 3 points per axis, got {n}")));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidArgument(format!("box length must be positive, got {length}")));
        }
        Ok(Grid { axes: axes.to_vec(), n, length })
    }

    /// Grid over the first `d` of (x, y, z).
    pub fn cube(d: usize, n: usize, length: f64) -> Result<Grid> {
        if !(1..=3).contains(&d) {
            return Err(Error::UnsupportedDimension(d));
        }
        Grid::new(&Coord::SPATIAL[..d], n, length)
    }

    pub fn d(&self) -> usize {
        self.axes.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn axes(&self) -> &[Coord] {
        &self.axes
    }

    pub fn num_sites(&self) -> usize {
        self.n.pow(self.d() as u32)
    }

    pub fn axis_of(&self, c: Coord) -> Option<usize> {
        self.axes.iter().position(|&a| a == c)
    }

    pub fn coordinate(&self, j: usize) -> f64 {
        -0.5 * self.length + j as f64 * self.spacing()
    }

    fn stride(&self, axis: usize) -> usize {
        self.n.pow((self.d() - 1 - axis) as u32)
    }

    fn index_along(&self, site: usize, axis: usize) -> usize {
        (site / self.stride(axis)) % self.n
    }

    /// The point of a site at time `t`; coordinates without an axis are 0.
    pub fn site_point(&self, site: usize, t: f64) -> Point {
        let mut p = [0.0; 5];
        for (axis, c) in self.axes.iter().enumerate() {
            p[c.index()] = self.coordinate(self.index_along(site, axis));
        }
        p[Coord::T.index()] = t;
        p
    }

    fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.d() {
            return Err(Error::IndexOutOfRange { index: axis, expected: "an axis below the grid dimension" });
        }
        Ok(())
    }

    /// Evaluates `f` at every site.
    pub fn sample(&self, f: &FieldExpr, t: f64) -> Result<Vec<f64>, EvalError> {
        (0..self.num_sites()).map(|s| f.eval(&self.site_point(s, t))).collect()
    }

    /// Forward link phases `exp(−i q ∫A)` from each site to its +1 neighbour
    /// along `axis`, with the integral taken at the link midpoint.
    fn link_phases(&self, axis: usize, a: &FieldExpr, charge: f64, t: f64) -> Result<Vec<C64>, EvalError> {
        let h = self.spacing();
        let coord = self.axes[axis].index();
        (0..self.num_sites())
            .map(|s| {
                let mut p = self.site_point(s, t);
                p[coord] += 0.5 * h;
                Ok(C64::from_polar(1.0, -charge * a.eval(&p)? * h))
            })
            .collect()
    }

    fn backward_phases(&self, axis: usize, forward: &[C64]) -> Vec<C64> {
        let stride = self.stride(axis);
        (0..self.num_sites())
            .map(|s| {
                let along = self.index_along(s, axis);
                let prev = if along == 0 { s + (self.n - 1) * stride } else { s - stride };
                forward[prev].conj()
            })
            .collect()
    }
}

/// Plane wave `exp(i 2π k x / L)` along one axis, constant along the others.
pub fn plane_wave(grid: &Grid, axis: usize, k: i64) -> Vec<C64> {
    (0..grid.num_sites())
        .map(|s| {
            let j = grid.index_along(s, axis) as f64;
            C64::from_polar(1.0, 2.0 * PI * k as f64 * j / grid.n as f64)
        })
        .collect()
}

/// Central-difference momentum `(pψ)_j = −i(ψ_{j+1} − ψ_{j−1})/(2h)`, periodic.
pub fn momentum_op(grid: &Grid, axis: usize) -> Result<LinOp> {
    covariant_momentum(grid, axis, &FieldExpr::zero(), 0.0, 0.0)
}

/// Gauge-covariant central difference approximating `p − qA` along `axis`,
/// with the potential entering through link phases. Reduces to
/// [`momentum_op`] when `A = 0`.
pub fn covariant_momentum(grid: &Grid, axis: usize, a: &FieldExpr, charge: f64, t: f64) -> Result<LinOp> {
    grid.check_axis(axis)?;
    let h = grid.spacing();
    let fwd = grid.link_phases(axis, a, charge, t)?;
    let bwd = grid.backward_phases(axis, &fwd);
    let c = I / (2.0 * h);
    let hop = Hop {
        n: grid.n,
        stride: grid.stride(axis),
        terms: vec![(1, fwd.iter().map(|u| -c * u).collect()), (-1, bwd.iter().map(|u| c * u).collect())],
    };
    Ok(LinOp::hop(grid.num_sites(), hop))
}

/// Compact three-point discretization of `(p − qA)²` along `axis`:
/// `(2ψ_j − U_{j,j+1}ψ_{j+1} − U_{j,j−1}ψ_{j−1}) / h²`.
pub fn covariant_kinetic(grid: &Grid, axis: usize, a: &FieldExpr, charge: f64, t: f64) -> Result<LinOp> {
    grid.check_axis(axis)?;
    let h2 = grid.spacing().powi(2);
    let fwd = grid.link_phases(axis, a, charge, t)?;
    let bwd = grid.backward_phases(axis, &fwd);
    let hop = Hop {
        n: grid.n,
        stride: grid.stride(axis),
        terms: vec![
            (0, vec![C64::new(2.0 / h2, 0.0); grid.num_sites()]),
            (1, fwd.iter().map(|u| -u / h2).collect()),
            (-1, bwd.iter().map(|u| -u / h2).collect()),
        ],
    };
    Ok(LinOp::hop(grid.num_sites(), hop))
}

/// Diagonal operator with entries `f(site)` at time `t`.
pub fn multiply_op(grid: &Grid, f: &FieldExpr, t: f64) -> Result<LinOp, EvalError> {
    if let Some(c) = f.as_const() {
        if c == 0.0 {
            return Ok(LinOp::zero(grid.num_sites()));
        }
        if c == 1.0 {
            return Ok(LinOp::identity(grid.num_sites()));
        }
    }
    Ok(LinOp::real_diagonal(grid.sample(f, t)?))
}

/// Multiplication by a spatial coordinate (zero when the grid has no axis for it).
pub fn position_op(grid: &Grid, c: Coord) -> LinOp {
    multiply_op(grid, &FieldExpr::var(c), 0.0).expect("coordinates evaluate everywhere")
}

/// `op_space ⊗ op_internal`, checked against the grid size.
pub fn tensor_with_internal(grid: &Grid, op_space: &LinOp, op_internal: &ComplexMatrix) -> Result<LinOp> {
    if op_space.dim() != grid.num_sites() {
        return Err(Error::DimensionMismatch(format!(
            "space operator has dimension {} but the grid has {} sites",
            op_space.dim(),
            grid.num_sites()
        )));
    }
    if op_internal.dim() == 0 {
        return Err(Error::DimensionMismatch("empty internal matrix".into()));
    }
    Ok(LinOp::kron(op_space, op_internal))
}

/// Amplitudes on `grid ⊗ C^s`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub amplitudes: Vec<C64>,
    pub internal_dim: usize,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>, internal_dim: usize) -> Self {
        assert!(internal_dim > 0 && amplitudes.len().is_multiple_of(internal_dim));
        Self { amplitudes, internal_dim }
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    /// Norm of the internal components in `range` summed over all sites.
    pub fn component_norm(&self, range: std::ops::Range<usize>) -> f64 {
        self.amplitudes
            .chunks(self.internal_dim)
            .flat_map(|c| c[range.clone()].iter())
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}
