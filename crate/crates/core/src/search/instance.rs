use crate::error::{Error, Result};
use crate::scalar::{count, tol, Real};

/// One unstructured-search problem: `N` vertices, a marked vertex, the walk
/// jumping rate `γ` and the adiabatic schedule slack `ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchInstance<T> {
    n: u64,
    marked: u64,
    gamma: T,
    eps: T,
}

impl<T: Real> SearchInstance<T> {
    /// `N` vertices, marked vertex 1, `γ = 1/N`, `ε = 1`.
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInstance(format!(
                "N must be at least 2, got {n}"
            )));
        }
        Ok(Self {
            n,
            marked: 1,
            gamma: count::<T>(n).recip(),
            eps: T::one(),
        })
    }

    /// Marked vertex index in `1..=N`.
    pub fn with_marked(mut self, w: u64) -> Result<Self> {
        if w == 0 || w > self.n {
            return Err(Error::InvalidInstance(format!(
                "marked vertex {w} outside 1..={}",
                self.n
            )));
        }
        self.marked = w;
        Ok(self)
    }

    pub fn with_gamma(mut self, gamma: T) -> Result<Self> {
        if !(gamma > T::zero()) || !gamma.is_finite() {
            return Err(Error::InvalidInstance(format!(
                "jumping rate must be positive, got {gamma}"
            )));
        }
        self.gamma = gamma;
        Ok(self)
    }

    pub fn with_eps(mut self, eps: T) -> Result<Self> {
        if !(eps > T::zero()) || !eps.is_finite() {
            return Err(Error::InvalidInstance(format!(
                "schedule slack must be positive, got {eps}"
            )));
        }
        self.eps = eps;
        Ok(self)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `N` as a scalar.
    pub fn size(&self) -> T {
        count(self.n)
    }

    pub fn marked(&self) -> u64 {
        self.marked
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn eps(&self) -> T {
        self.eps
    }

    /// `√(N−1)`.
    pub fn root_unmarked(&self) -> T {
        count::<T>(self.n - 1).sqrt()
    }

    /// False when `γ ≠ 1/N`; the walk is then not the optimal search.
    pub fn rate_is_canonical(&self) -> bool {
        let canonical = self.size().recip();
        (self.gamma - canonical).abs() <= tol::<T>(1e-12) * canonical
    }
}
