//! Uniform 1D grids and sampled complex functions.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Symmetric grid on `[-L, L]` with an odd number of points, so `x = 0` is a node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub half_width: f64,
    pub n_points: usize,
}

impl GridSpec {
    pub const MIN_POINTS: usize = 201;

    pub fn new(half_width: f64, n_points: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "half width must be positive, got {half_width}"
            )));
        }
        if n_points < Self::MIN_POINTS || n_points.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "point count must be odd and at least {}, got {n_points}",
                Self::MIN_POINTS
            )));
        }
        Ok(Self {
            half_width,
            n_points,
        })
    }

    /// L = 20, 4001 points (h = 0.01).
    pub fn reference() -> Self {
        Self {
            half_width: 20.0,
            n_points: 4001,
        }
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.n_points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.spacing()
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.x(i))
    }

    /// Same domain, spacing halved.
    pub fn refined(&self) -> Self {
        Self {
            half_width: self.half_width,
            n_points: 2 * self.n_points - 1,
        }
    }

    pub fn sample<F: Fn(f64) -> Complex64>(&self, f: F) -> GridFunction {
        GridFunction {
            x_min: -self.half_width,
            x_max: self.half_width,
            values: self.xs().map(f).collect(),
        }
    }
}

/// Complex samples on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    pub x_min: f64,
    pub x_max: f64,
    pub values: Vec<Complex64>,
}

impl GridFunction {
    pub fn from_fn<F: Fn(f64) -> Complex64>(x_min: f64, x_max: f64, n_points: usize, f: F) -> Result<Self> {
        if n_points < 3 || !(x_max > x_min) {
            return Err(Error::InvalidGrid(format!(
                "need x_max > x_min and at least 3 points (got [{x_min}, {x_max}], {n_points})"
            )));
        }
        let h = (x_max - x_min) / (n_points - 1) as f64;
        Ok(Self {
            x_min,
            x_max,
            values: (0..n_points).map(|i| f(x_min + i as f64 * h)).collect(),
        })
    }

    pub fn n_points(&self) -> usize {
        self.values.len()
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.values.len() - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.spacing()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.values.iter().enumerate().map(|(i, v)| (self.x(i), *v))
    }

    pub fn max_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}
