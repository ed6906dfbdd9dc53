use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::MonicPolynomial;

/// Axis-aligned sampling box with `resolution` nodes per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub resolution: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            x_min: -1.5,
            x_max: 1.5,
            y_min: -1.5,
            y_max: 1.5,
            resolution: 1001,
        }
    }
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, resolution: usize) -> Result<Self> {
        let finite = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite());
        if !finite || x_min >= x_max || y_min >= y_max {
            return Err(Error::InvalidParameter(format!(
                "grid box [{x_min}, {x_max}] x [{y_min}, {y_max}] is empty or not finite"
            )));
        }
        if resolution < 3 {
            return Err(Error::InvalidParameter(format!(
                "grid resolution must be >= 3, got {resolution}"
            )));
        }
        Ok(GridSpec {
            x_min,
            x_max,
            y_min,
            y_max,
            resolution,
        })
    }

    /// `[-half, half]^2`.
    pub fn square(half: f64, resolution: usize) -> Result<Self> {
        Self::new(-half, half, -half, half, resolution)
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.resolution - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / (self.resolution - 1) as f64
    }

    pub fn cell_diagonal(&self) -> f64 {
        self.dx().hypot(self.dy())
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y_min + j as f64 * self.dy()
    }

    pub fn point(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.x(i), self.y(j))
    }

    pub(crate) fn index(&self, i: usize, j: usize) -> usize {
        j * self.resolution + i
    }

    /// Nearest node to `z`, if `z` lies in the box.
    pub fn nearest_node(&self, z: Complex64) -> Option<(usize, usize)> {
        if z.re < self.x_min || z.re > self.x_max || z.im < self.y_min || z.im > self.y_max {
            return None;
        }
        let i = ((z.re - self.x_min) / self.dx()).round() as usize;
        let j = ((z.im - self.y_min) / self.dy()).round() as usize;
        Some((i.min(self.resolution - 1), j.min(self.resolution - 1)))
    }
}

/// `|p|` sampled on every node of a grid; reusable across levels.
#[derive(Debug, Clone)]
pub struct Field {
    spec: GridSpec,
    values: Vec<f64>,
    max: f64,
    min: f64,
}

impl Field {
    pub fn sample(p: &MonicPolynomial, spec: GridSpec) -> Self {
        let n = spec.resolution;
        let mut values = Vec::with_capacity(n * n);
        for j in 0..n {
            let y = spec.y(j);
            for i in 0..n {
                values.push(p.eval(Complex64::new(spec.x(i), y)).norm());
            }
        }
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        Field {
            spec,
            values,
            max,
            min,
        }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.spec.index(i, j)]
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub(crate) fn check_level(&self, level: f64) -> Result<()> {
        if !(level > 0.0) || !level.is_finite() {
            return Err(Error::InvalidParameter(format!("level must be positive, got {level}")));
        }
        if level >= self.max || level < self.min {
            return Err(Error::EmptyContour { level });
        }
        Ok(())
    }
}
