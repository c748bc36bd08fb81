use std::ops::{Add, Mul, Sub};

use num_complex::Complex;

use super::state::SubspaceState;
use crate::error::{Error, Result};
use crate::scalar::{lit, precision, tol, Real};

/// General complex 2×2 matrix in the `{|w⟩, |r⟩}` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2<T> {
    pub m: [[Complex<T>; 2]; 2],
}

impl<T: Real> Matrix2<T> {
    pub fn new(m: [[Complex<T>; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn real(a: T, b: T, c: T, d: T) -> Self {
        let z = T::zero();
        Self::new([
            [Complex::new(a, z), Complex::new(b, z)],
            [Complex::new(c, z), Complex::new(d, z)],
        ])
    }

    pub fn identity() -> Self {
        Self::real(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let mut out = [[Complex::new(T::zero(), T::zero()); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.m[i][0] * rhs.m[0][j] + self.m[i][1] * rhs.m[1][j];
            }
        }
        Self::new(out)
    }

    pub fn apply(&self, psi: &SubspaceState<T>) -> SubspaceState<T> {
        let (w, r) = (psi.a_w(), psi.a_r());
        SubspaceState::from_amplitudes(
            self.m[0][0] * w + self.m[0][1] * r,
            self.m[1][0] * w + self.m[1][1] * r,
        )
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self::new([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.m[i][j] - other.m[i][j]).norm());
            }
        }
        worst
    }
}

/// Hermitian 2×2 operator (ħ = 1).
///
/// Only the independent entries are stored, so Hermiticity holds by
/// construction; [`Hermitian2::from_entries`] validates arbitrary input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hermitian2<T> {
    h11: T,
    h12: Complex<T>,
    h22: T,
}

impl<T: Real> Hermitian2<T> {
    pub fn new(h11: T, h12: Complex<T>, h22: T) -> Self {
        Self { h11, h12, h22 }
    }

    pub fn real(h11: T, h12: T, h22: T) -> Self {
        Self::new(h11, Complex::new(h12, T::zero()), h22)
    }

    pub fn diag(h11: T, h22: T) -> Self {
        Self::real(h11, T::zero(), h22)
    }

    pub fn zero() -> Self {
        Self::diag(T::zero(), T::zero())
    }

    pub fn identity() -> Self {
        Self::diag(T::one(), T::one())
    }

    /// Validates the four entries against `h21 = conj(h12)` and real diagonal.
    pub fn from_entries(m: [[Complex<T>; 2]; 2]) -> Result<Self> {
        let scale = T::one().max(
            m.iter()
                .flatten()
                .fold(T::zero(), |acc, z| acc.max(z.norm())),
        );
        let deviation = (m[1][0] - m[0][1].conj())
            .norm()
            .max(m[0][0].im.abs())
            .max(m[1][1].im.abs());
        if deviation > tol::<T>(1e-12) * scale {
            return Err(Error::NotHermitian {
                deviation: deviation.to_f64().unwrap_or(f64::NAN),
            });
        }
        let half = lit::<T>(0.5);
        Ok(Self::new(
            m[0][0].re,
            (m[0][1] + m[1][0].conj()) * half,
            m[1][1].re,
        ))
    }

    /// `λ0 |v0⟩⟨v0| + λ1 |v1⟩⟨v1|` for an orthonormal pair.
    pub fn from_spectrum(l0: T, v0: &SubspaceState<T>, l1: T, v1: &SubspaceState<T>) -> Self {
        let p0 = Self::projector(v0);
        let p1 = Self::projector(v1);
        p0 * l0 + p1 * l1
    }

    /// `|v⟩⟨v| / ⟨v|v⟩`.
    pub fn projector(v: &SubspaceState<T>) -> Self {
        let n2 = v.norm_sqr();
        let (a, b) = (v.a_w(), v.a_r());
        Self::new(
            a.norm_sqr() / n2,
            (a * b.conj()).unscale(n2),
            b.norm_sqr() / n2,
        )
    }

    pub fn h11(&self) -> T {
        self.h11
    }

    pub fn h12(&self) -> Complex<T> {
        self.h12
    }

    pub fn h21(&self) -> Complex<T> {
        self.h12.conj()
    }

    pub fn h22(&self) -> T {
        self.h22
    }

    /// Entry `(i, j)` with zero-based indices; index 0 is `|w⟩`.
    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        self.to_matrix().m[i][j]
    }

    pub fn to_matrix(&self) -> Matrix2<T> {
        let z = T::zero();
        Matrix2::new([
            [Complex::new(self.h11, z), self.h12],
            [self.h12.conj(), Complex::new(self.h22, z)],
        ])
    }

    /// Coefficients `(a0, ax, ay, az)` of `a0·I + ax·X + ay·Y + az·Z`.
    pub fn pauli(&self) -> (T, T, T, T) {
        let half = lit::<T>(0.5);
        (
            (self.h11 + self.h22) * half,
            self.h12.re,
            -self.h12.im,
            (self.h11 - self.h22) * half,
        )
    }

    pub fn trace(&self) -> T {
        self.h11 + self.h22
    }

    pub fn apply(&self, psi: &SubspaceState<T>) -> SubspaceState<T> {
        self.to_matrix().apply(psi)
    }

    /// `⟨ψ|H|ψ⟩ / ⟨ψ|ψ⟩`.
    pub fn expectation(&self, psi: &SubspaceState<T>) -> T {
        psi.inner(&self.apply(psi)).re / psi.norm_sqr()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.to_matrix().max_abs_diff(&other.to_matrix())
    }

    pub fn max_abs_entry(&self) -> T {
        self.h11.abs().max(self.h22.abs()).max(self.h12.norm())
    }

    /// True when every entry has imaginary part below 1e-12 (scaled to `T`).
    pub fn is_real(&self) -> bool {
        self.h12.im.abs() < tol(1e-12)
    }

    /// Operator norm, the largest eigenvalue magnitude.
    pub fn spectral_norm(&self) -> T {
        let (a0, ax, ay, az) = self.pauli();
        let r = (ax * ax + ay * ay + az * az).sqrt();
        a0.abs() + r
    }

    /// Adds `c·I`.
    pub fn shifted(&self, c: T) -> Self {
        Self::new(self.h11 + c, self.h12, self.h22 + c)
    }
}

impl<T: Real> Add for Hermitian2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.h11 + rhs.h11, self.h12 + rhs.h12, self.h22 + rhs.h22)
    }
}

impl<T: Real> Sub for Hermitian2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.h11 - rhs.h11, self.h12 - rhs.h12, self.h22 - rhs.h22)
    }
}

impl<T: Real> Mul<T> for Hermitian2<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        Self::new(self.h11 * k, self.h12.scale(k), self.h22 * k)
    }
}

/// Eigen-decomposition of a [`Hermitian2`], ground energy first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenDecomposition2<T> {
    pub ground_energy: T,
    pub excited_energy: T,
    pub ground: SubspaceState<T>,
    pub excited: SubspaceState<T>,
    /// Set when the two eigenvalues coincide; the eigenvectors are then the
    /// computational basis and carry no information.
    pub degenerate: bool,
}

impl<T: Real> EigenDecomposition2<T> {
    pub fn gap(&self) -> T {
        self.excited_energy - self.ground_energy
    }

    pub fn reconstruct(&self) -> Hermitian2<T> {
        Hermitian2::from_spectrum(
            self.ground_energy,
            &self.ground,
            self.excited_energy,
            &self.excited,
        )
    }
}

/// Closed-form eigensolve via the Pauli decomposition.
pub fn eigen2<T: Real>(h: &Hermitian2<T>) -> EigenDecomposition2<T> {
    let (a0, ax, ay, az) = h.pauli();
    let r = (ax * ax + ay * ay + az * az).sqrt();
    let scale = T::one().max(h.max_abs_entry());
    if r <= precision::<T>() * scale {
        return EigenDecomposition2 {
            ground_energy: a0,
            excited_energy: a0,
            ground: SubspaceState::marked(),
            excited: SubspaceState::rest(),
            degenerate: true,
        };
    }
    let ground = eigenvector(h, az, r, false);
    let excited = eigenvector(h, az, r, true);
    EigenDecomposition2 {
        ground_energy: a0 - r,
        excited_energy: a0 + r,
        ground,
        excited,
        degenerate: false,
    }
}

// Of the two null vectors of H − λ, (h12, λ − h11) and (λ − h22, conj h12),
// pick the one that does not cancel.
fn eigenvector<T: Real>(h: &Hermitian2<T>, az: T, r: T, excited: bool) -> SubspaceState<T> {
    let z = T::zero();
    let sign = if excited { T::one() } else { -T::one() };
    // λ − h11 = sign·r − az, λ − h22 = sign·r + az
    let d11 = sign * r - az;
    let d22 = sign * r + az;
    let (a_w, a_r) = if d11.abs() >= d22.abs() {
        (h.h12(), Complex::new(d11, z))
    } else {
        (Complex::new(d22, z), h.h12().conj())
    };
    super::state::make_state(a_w, a_r).expect("nonzero eigenvector for a split spectrum")
}
