//! Parameter rectangles, excluded discs and sampling grids in `(u, v)`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Closed rectangle `[u0, u1] × [v0, v1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
}

impl Rect {
    pub fn new(u0: f64, u1: f64, v0: f64, v1: f64) -> Result<Self> {
        let ok = [u0, u1, v0, v1].iter().all(|x| x.is_finite()) && u0 < u1 && v0 < v1;
        if !ok {
            return Err(Error::Precondition(format!(
                "degenerate rectangle [{u0}, {u1}] x [{v0}, {v1}]"
            )));
        }
        Ok(Rect { u0, u1, v0, v1 })
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        u >= self.u0 && u <= self.u1 && v >= self.v0 && v <= self.v1
    }

    pub fn center(&self) -> (f64, f64) {
        (0.5 * (self.u0 + self.u1), 0.5 * (self.v0 + self.v1))
    }

    /// The rectangle shrunk by `margin` on every side.
    pub fn inset(&self, margin: f64) -> Result<Self> {
        Rect::new(
            self.u0 + margin,
            self.u1 - margin,
            self.v0 + margin,
            self.v1 - margin,
        )
    }
}

/// Open disc removed from a domain (around a pole, for instance).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disc {
    pub center: (f64, f64),
    pub radius: f64,
}

/// A rectangle minus finitely many open discs.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    pub rect: Rect,
    pub excluded: Vec<Disc>,
}

impl Domain {
    pub fn rect(rect: Rect) -> Self {
        Domain {
            rect,
            excluded: Vec::new(),
        }
    }

    pub fn excluding(mut self, center: (f64, f64), radius: f64) -> Self {
        self.excluded.push(Disc { center, radius });
        self
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        self.rect.contains(u, v)
            && self.excluded.iter().all(|d| {
                let (du, dv) = (u - d.center.0, v - d.center.1);
                du * du + dv * dv >= d.radius * d.radius
            })
    }
}

/// `nu × nv` samples of a rectangle, endpoints included.
///
/// Points are ordered with `u` as the outer index: point `k` has
/// `i = k / nv`, `j = k % nv`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub rect: Rect,
    pub nu: usize,
    pub nv: usize,
}

impl Grid {
    pub fn new(rect: Rect, nu: usize, nv: usize) -> Result<Self> {
        if nu < 2 || nv < 2 {
            return Err(Error::Precondition(format!(
                "grid dimensions must be at least 2, got {nu}x{nv}"
            )));
        }
        Ok(Grid { rect, nu, nv })
    }

    pub fn len(&self) -> usize {
        self.nu * self.nv
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, i: usize, j: usize) -> (f64, f64) {
        let r = &self.rect;
        let s = i as f64 / (self.nu - 1) as f64;
        let t = j as f64 / (self.nv - 1) as f64;
        (r.u0 + s * (r.u1 - r.u0), r.v0 + t * (r.v1 - r.v0))
    }

    pub fn point_at(&self, k: usize) -> (f64, f64) {
        self.point(k / self.nv, k % self.nv)
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (0..self.len()).map(move |k| self.point_at(k))
    }

    /// Quads `(a, b, c, d)` of vertex indices with consistent winding.
    pub fn quads(&self) -> Vec<[usize; 4]> {
        let mut q = Vec::with_capacity((self.nu - 1) * (self.nv - 1));
        for i in 0..self.nu - 1 {
            for j in 0..self.nv - 1 {
                let a = i * self.nv + j;
                q.push([a, a + self.nv, a + self.nv + 1, a + 1]);
            }
        }
        q
    }
}
