use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{count, tol, Real};

/// A pure state in the plane spanned by the marked vertex `|w⟩` and the
/// uniform superposition `|r⟩` of the unmarked vertices.
///
/// Propagators return raw amplitudes (no silent renormalisation); use
/// [`make_state`] or [`SubspaceState::canonical`] to fix the global phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubspaceState<T> {
    a_w: Complex<T>,
    a_r: Complex<T>,
}

/// Normalises `(a_w, a_r)` and fixes the global phase so that `a_r` is real
/// and non-negative, or, when `a_r` vanishes, `a_w` is.
pub fn make_state<T: Real>(a_w: Complex<T>, a_r: Complex<T>) -> Result<SubspaceState<T>> {
    let norm_sqr = a_w.norm_sqr() + a_r.norm_sqr();
    if !norm_sqr.is_finite() {
        return Err(Error::InvalidState("non-finite amplitude".into()));
    }
    if norm_sqr <= T::zero() {
        return Err(Error::InvalidState("zero vector".into()));
    }
    let norm = norm_sqr.sqrt();
    Ok(SubspaceState::from_amplitudes(a_w.unscale(norm), a_r.unscale(norm)).canonical())
}

/// Maps a state to the Bloch sphere with `|w⟩` at the North Pole.
pub fn bloch_coords<T: Real>(state: &SubspaceState<T>) -> BlochPoint<T> {
    state.bloch()
}

/// `|⟨a|b⟩|²`, insensitive to the global phase of either argument.
pub fn fidelity<T: Real>(a: &SubspaceState<T>, b: &SubspaceState<T>) -> T {
    let overlap = a.inner(b).norm_sqr();
    let denom = a.norm_sqr() * b.norm_sqr();
    let f = overlap / denom;
    if f > T::one() {
        T::one()
    } else {
        f
    }
}

impl<T: Real> SubspaceState<T> {
    /// Same as [`make_state`].
    pub fn new(a_w: Complex<T>, a_r: Complex<T>) -> Result<Self> {
        make_state(a_w, a_r)
    }

    pub(crate) fn from_amplitudes(a_w: Complex<T>, a_r: Complex<T>) -> Self {
        Self { a_w, a_r }
    }

    /// Real amplitudes, normalised and phase fixed.
    pub fn from_real(a_w: T, a_r: T) -> Result<Self> {
        make_state(Complex::new(a_w, T::zero()), Complex::new(a_r, T::zero()))
    }

    /// `|w⟩`, the North Pole.
    pub fn marked() -> Self {
        Self::from_amplitudes(
            Complex::new(T::one(), T::zero()),
            Complex::new(T::zero(), T::zero()),
        )
    }

    /// `|r⟩`, the South Pole.
    pub fn rest() -> Self {
        Self::from_amplitudes(
            Complex::new(T::zero(), T::zero()),
            Complex::new(T::one(), T::zero()),
        )
    }

    /// The equal superposition `|s⟩ = (1/√N)|w⟩ + √((N−1)/N)|r⟩`.
    pub fn uniform(n: u64) -> Self {
        let nf = count::<T>(n);
        let a_w = nf.sqrt().recip();
        let a_r = ((nf - T::one()) / nf).sqrt();
        Self::from_amplitudes(Complex::new(a_w, T::zero()), Complex::new(a_r, T::zero()))
    }

    /// `|s⊥⟩ = √((N−1)/N)|w⟩ − (1/√N)|r⟩`, orthogonal to [`Self::uniform`].
    pub fn uniform_perp(n: u64) -> Self {
        let s = Self::uniform(n);
        Self::from_amplitudes(s.a_r, -s.a_w)
    }

    pub fn a_w(&self) -> Complex<T> {
        self.a_w
    }

    pub fn a_r(&self) -> Complex<T> {
        self.a_r
    }

    pub fn norm_sqr(&self) -> T {
        self.a_w.norm_sqr() + self.a_r.norm_sqr()
    }

    /// Distance of the norm from one.
    pub fn norm_drift(&self) -> T {
        (self.norm_sqr().sqrt() - T::one()).abs()
    }

    pub fn is_normalized(&self) -> bool {
        self.norm_drift() <= tol(1e-12)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.a_w.conj() * other.a_w + self.a_r.conj() * other.a_r
    }

    /// `|⟨w|ψ⟩|²`.
    pub fn success_probability(&self) -> T {
        self.a_w.norm_sqr() / self.norm_sqr()
    }

    /// Multiplies by a global phase factor `e^{iφ}`.
    pub fn with_phase(&self, phi: T) -> Self {
        let p = Complex::from_polar(T::one(), phi);
        Self::from_amplitudes(self.a_w * p, self.a_r * p)
    }

    /// Applies the phase convention of [`make_state`] without renormalising.
    pub fn canonical(&self) -> Self {
        let pivot = if self.a_r.norm_sqr() > T::zero() {
            self.a_r
        } else {
            self.a_w
        };
        let mag = pivot.norm();
        if mag <= T::zero() {
            return *self;
        }
        let rot = pivot.conj().unscale(mag);
        let mut out = Self::from_amplitudes(self.a_w * rot, self.a_r * rot);
        if self.a_r.norm_sqr() > T::zero() {
            out.a_r = Complex::new(mag, T::zero());
        } else {
            out.a_w = Complex::new(mag, T::zero());
        }
        out
    }

    /// The orthogonal state `(conj a_r, −conj a_w)`.
    pub fn orthogonal(&self) -> Self {
        Self::from_amplitudes(self.a_r.conj(), -self.a_w.conj())
    }

    pub fn bloch(&self) -> BlochPoint<T> {
        let n2 = self.norm_sqr();
        let cross = self.a_w * self.a_r.conj();
        let two = T::one() + T::one();
        BlochPoint {
            x: two * cross.re / n2,
            y: two * cross.im / n2,
            z: (self.a_w.norm_sqr() - self.a_r.norm_sqr()) / n2,
        }
    }
}

/// A point on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochPoint<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> BlochPoint<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn north() -> Self {
        Self::new(T::zero(), T::zero(), T::one())
    }

    pub fn dot(&self, other: &Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn radius(&self) -> T {
        self.dot(self).sqrt()
    }

    /// Great-circle angle in radians.
    ///
    /// Uses `atan2(|a×b|, a·b)`, which stays accurate for nearly coincident
    /// points where `acos` of a clamped dot product loses half its digits.
    pub fn angle_to(&self, other: &Self) -> T {
        let c = self.cross(other).radius();
        c.atan2(self.dot(other))
    }

    /// Euclidean chord length.
    pub fn distance(&self, other: &Self) -> T {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn make_state_examples() {
        let r = make_state(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(r, SubspaceState::rest());

        let n = 4.0_f64;
        let s = make_state(c(1.0 / n.sqrt(), 0.0), c(((n - 1.0) / n).sqrt(), 0.0)).unwrap();
        assert!((s.a_w().re - 0.5).abs() < 1e-12);
        assert!((s.a_r().re - 3f64.sqrt() / 2.0).abs() < 1e-12);

        let w = make_state(c(0.0, 2.0), c(0.0, 0.0)).unwrap();
        assert!((w.a_w() - c(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(w.a_r(), c(0.0, 0.0));
    }

    #[test]
    fn make_state_rejects_zero() {
        assert!(matches!(
            make_state::<f64>(c(0.0, 0.0), c(0.0, 0.0)),
            Err(Error::InvalidState(_))
        ));
        assert!(make_state::<f64>(c(f64::NAN, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn phase_convention() {
        let st = make_state(c(0.3, -0.2), c(-0.5, 0.7)).unwrap();
        assert_eq!(st.a_r().im, 0.0);
        assert!(st.a_r().re > 0.0);
        assert!(st.is_normalized());
    }

    #[test]
    fn bloch_examples() {
        let p = bloch_coords(&SubspaceState::<f64>::marked());
        assert_eq!((p.x, p.y, p.z), (0.0, 0.0, 1.0));
        let p = bloch_coords(&SubspaceState::<f64>::rest());
        assert_eq!(p.z, -1.0);

        let n = 1024.0_f64;
        let p = bloch_coords(&SubspaceState::<f64>::uniform(1024));
        assert!((p.z - (2.0 - n) / n).abs() < 1e-15);
        assert!((p.z + 0.998046875).abs() < 1e-15);
        assert!((p.x - 2.0 * (n - 1.0).sqrt() / n).abs() < 1e-15);
        assert!((p.x - 0.0624695).abs() < 1e-7);
        assert_eq!(p.y, 0.0);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let st = make_state(c(h, 0.0), c(0.0, h)).unwrap();
        assert!((st.a_w() - c(0.0, -h)).norm() < 1e-15);
        assert!((st.a_r() - c(h, 0.0)).norm() < 1e-15);
        let p = st.bloch();
        assert!(p.x.abs() < 1e-15 && (p.y + 1.0).abs() < 1e-15 && p.z.abs() < 1e-15);
    }

    #[test]
    fn fidelity_examples() {
        let w = SubspaceState::<f64>::marked();
        let r = SubspaceState::<f64>::rest();
        assert_eq!(fidelity(&w, &w), 1.0);
        assert_eq!(fidelity(&w, &r), 0.0);
        let s = SubspaceState::<f64>::uniform(16);
        assert!((fidelity(&s, &w) - 1.0 / 16.0).abs() < 1e-15);
        assert!((fidelity(&s, &s.with_phase(1.234)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn uniform_perp_is_orthogonal() {
        let s = SubspaceState::<f64>::uniform(37);
        let p = SubspaceState::<f64>::uniform_perp(37);
        assert!(s.inner(&p).norm() < 1e-15);
        assert!(s.inner(&s.orthogonal()).norm() < 1e-15);
    }

    #[test]
    fn angle_between_points() {
        let a = BlochPoint::new(1.0, 0.0, 0.0);
        let b = BlochPoint::new(0.0, 1.0, 0.0);
        assert!((a.angle_to(&b) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!(a.angle_to(&a), 0.0);
    }
}
