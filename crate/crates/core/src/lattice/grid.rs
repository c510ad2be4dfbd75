use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A uniform grid of `points_per_dim` nodes per axis on `[−L, L]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGrid", into = "RawGrid")]
pub struct GridConfig {
    points_per_dim: usize,
    half_width: f64,
}

#[derive(Serialize, Deserialize)]
struct RawGrid {
    points_per_dim: usize,
    half_width: f64,
}

impl TryFrom<RawGrid> for GridConfig {
    type Error = Error;
    fn try_from(r: RawGrid) -> Result<Self> {
        Self::new(r.points_per_dim, r.half_width)
    }
}

impl From<GridConfig> for RawGrid {
    fn from(g: GridConfig) -> Self {
        Self {
            points_per_dim: g.points_per_dim,
            half_width: g.half_width,
        }
    }
}

impl Default for GridConfig {
    /// 512 points on `[−8, 8]`.
    fn default() -> Self {
        Self {
            points_per_dim: 512,
            half_width: 8.0,
        }
    }
}

impl GridConfig {
    /// `points_per_dim` must be even and at least 16.
    pub fn new(points_per_dim: usize, half_width: f64) -> Result<Self> {
        if points_per_dim < 16 || !points_per_dim.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "point count {points_per_dim} must be even and >= 16"
            )));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "half width {half_width} must be positive"
            )));
        }
        Ok(Self {
            points_per_dim,
            half_width,
        })
    }

    /// Grid with spacing `a` and `points_per_dim` points, so `L = n a / 2`.
    pub fn with_spacing(points_per_dim: usize, spacing: f64) -> Result<Self> {
        Self::new(points_per_dim, points_per_dim as f64 * spacing / 2.0)
    }

    pub fn points_per_dim(&self) -> usize {
        self.points_per_dim
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points_per_dim as f64
    }

    pub fn dimension(&self) -> usize {
        self.points_per_dim * self.points_per_dim
    }

    pub fn node(&self, j: usize) -> f64 {
        -self.half_width + (j as f64 + 0.5) * self.spacing()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.points_per_dim).map(|j| self.node(j)).collect()
    }
}
