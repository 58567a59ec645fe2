//! Complete rational fans, as produced by normal fans of full-dimensional
//! lattice polytopes.
//!
//! Only the data the intersection-theory machinery needs is stored: the
//! primitive ray generators and the maximal cones (as sorted ray-index sets).
//! Lower-dimensional cones are implicit: in a complete simplicial fan a set
//! of rays spans a cone exactly when it is contained in some maximal cone.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::zlinalg::{IntMat, IntVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<IntVec>,
    max_cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Build a fan from primitive rays and maximal cones (ray-index sets).
    /// Structural validation only; smoothness is checked separately by
    /// [`Fan::require_smooth`].
    pub fn new(dim: usize, rays: Vec<IntVec>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::input("fan dimension must be positive"));
        }
        if rays.is_empty() || max_cones.is_empty() {
            return Err(Error::input("fan needs rays and maximal cones"));
        }
        for r in &rays {
            if r.len() != dim {
                return Err(Error::input("ray of wrong dimension"));
            }
            if r.is_zero() {
                return Err(Error::input("zero ray"));
            }
            if !r.content().is_one() {
                return Err(Error::input(format!("ray {r} is not primitive")));
            }
        }
        for i in 0..rays.len() {
            for j in i + 1..rays.len() {
                if rays[i] == rays[j] {
                    return Err(Error::input(format!("duplicate ray {}", rays[i])));
                }
            }
        }
        let mut used = vec![false; rays.len()];
        let mut cones = Vec::with_capacity(max_cones.len());
        for mut cone in max_cones {
            cone.sort_unstable();
            cone.dedup();
            if cone.iter().any(|&i| i >= rays.len()) {
                return Err(Error::input("cone refers to nonexistent ray"));
            }
            for &i in &cone {
                used[i] = true;
            }
            cones.push(cone);
        }
        if used.iter().any(|u| !u) {
            return Err(Error::input("ray not used by any maximal cone"));
        }
        Ok(Fan { dim, rays, max_cones: cones })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// Check the Delzant condition: every maximal cone is spanned by exactly
    /// `dim` rays forming a basis of Z^dim.
    pub fn require_smooth(&self) -> Result<()> {
        for cone in &self.max_cones {
            if cone.len() != self.dim {
                return Err(Error::input(
                    "fan is not simplicial: maximal cone with wrong ray count",
                ));
            }
            let rows: Vec<IntVec> = cone.iter().map(|&i| self.rays[i].clone()).collect();
            let det = IntMat::from_rows(&rows).det();
            if !det.abs().is_one() {
                return Err(Error::input(
                    "fan is not smooth: maximal cone is not unimodular",
                ));
            }
        }
        Ok(())
    }

    /// Do the given rays span a cone of the fan? `ray_indices` must be
    /// sorted. Valid because the fans here are complete and simplicial, so
    /// every cone is a face of a maximal cone.
    pub fn has_cone(&self, ray_indices: &[usize]) -> bool {
        self.max_cones.iter().any(|cone| {
            ray_indices
                .iter()
                .all(|i| cone.binary_search(i).is_ok())
        })
    }
}
