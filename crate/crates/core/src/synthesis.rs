//! The inverse problem: given a path of states, build the time-dependent
//! Hamiltonian whose instantaneous ground state is that path, and the
//! closed-form three-term Hamiltonian whose ground state tracks the
//! complete-graph walk.

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::scalar::{count, lit, precision, tol, Real};
use crate::search::{
    fenner_hamiltonian, fg_hamiltonian, fg_state, rc_hamiltonian, ScheduleKind, SchedulePoint,
    SearchInstance,
};
use crate::subspace::{eigen2, Hermitian2, SubspaceState};

type EnergyFn<T> = Box<dyn Fn(T) -> T + Send + Sync>;

/// How the two eigenvalues of a synthesised Hamiltonian are chosen.
///
/// Energy functions receive the same parameter as the path (usually `t`).
pub enum SpectralGauge<T> {
    /// `λ0 = −λ1`, with `λ1 ≥ 0` given.
    Symmetric(EnergyFn<T>),
    /// Arbitrary `(λ0, λ1)` with `λ1 ≥ λ0`.
    Custom {
        ground: EnergyFn<T>,
        excited: EnergyFn<T>,
    },
}

impl<T: Real> SpectralGauge<T> {
    pub fn symmetric(excited: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        Self::Symmetric(Box::new(excited))
    }

    pub fn symmetric_constant(excited: T) -> Self {
        Self::symmetric(move |_| excited)
    }

    pub fn custom(
        ground: impl Fn(T) -> T + Send + Sync + 'static,
        excited: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        Self::Custom {
            ground: Box::new(ground),
            excited: Box::new(excited),
        }
    }

    pub fn constant(ground: T, excited: T) -> Self {
        Self::custom(move |_| ground, move |_| excited)
    }

    /// `(λ0, λ1)` at `param`.
    pub fn energies(&self, param: T) -> Result<(T, T)> {
        let (l0, l1) = match self {
            Self::Symmetric(f) => {
                let l1 = f(param);
                if l1 < T::zero() {
                    return Err(Error::InvalidGauge(format!(
                        "symmetric gauge needs λ1 ≥ 0, got {l1}"
                    )));
                }
                (-l1, l1)
            }
            Self::Custom { ground, excited } => (ground(param), excited(param)),
        };
        if !(l1 >= l0) {
            return Err(Error::InvalidGauge(format!(
                "need λ1 ≥ λ0, got λ0 = {l0}, λ1 = {l1}"
            )));
        }
        Ok((l0, l1))
    }
}

/// A synthesised Hamiltonian and its prescribed spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Synthesis<T> {
    pub hamiltonian: Hermitian2<T>,
    pub ground_energy: T,
    pub excited_energy: T,
    /// `λ0 = λ1`: the result is a multiple of the identity and has no gap.
    pub degenerate: bool,
}

/// `λ0|ψ0⟩⟨ψ0| + λ1|ψ1⟩⟨ψ1|` with `ψ0 = path(t)` and `ψ1` its orthogonal
/// complement `(conj β, −conj α)`.
pub fn synth_from_path<T, P>(path: P, gauge: &SpectralGauge<T>, t: T) -> Result<Synthesis<T>>
where
    T: Real,
    P: Fn(T) -> SubspaceState<T>,
{
    let psi0 = path(t);
    if psi0.norm_drift() > tol(1e-10) {
        return Err(Error::InvalidState(format!(
            "path state not normalised (drift {})",
            psi0.norm_drift()
        )));
    }
    let (l0, l1) = gauge.energies(t)?;
    let hamiltonian = Hermitian2::from_spectrum(l0, &psi0, l1, &psi0.orthogonal());
    let scale = T::one().max(l0.abs()).max(l1.abs());
    Ok(Synthesis {
        hamiltonian,
        ground_energy: l0,
        excited_energy: l1,
        degenerate: (l1 - l0) <= tol::<T>(1e-12) * scale,
    })
}

/// The beginning, final and extra Hamiltonians of the walk-following
/// interpolation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeTermDecomposition<T> {
    /// `|s⊥⟩⟨s⊥| − |s⟩⟨s|`.
    pub h0: Hermitian2<T>,
    /// `|r⟩⟨r| − |w⟩⟨w|`.
    pub hf: Hermitian2<T>,
    /// `2i√((N−1)/N)(|r⟩⟨w| − |w⟩⟨r|)`.
    pub he: Hermitian2<T>,
}

impl<T: Real> ThreeTermDecomposition<T> {
    pub fn new(inst: &SearchInstance<T>) -> Self {
        let n = inst.size();
        let two = lit::<T>(2.0);
        let r = inst.root_unmarked();
        let d = (n - two) / n;
        Self {
            h0: Hermitian2::real(d, -two * r / n, -d),
            hf: Hermitian2::diag(-T::one(), T::one()),
            he: Hermitian2::new(
                T::zero(),
                Complex::new(T::zero(), -two * ((n - T::one()) / n).sqrt()),
                T::zero(),
            ),
        }
    }

    /// `(1−s)H0 + s·Hf + √(s(1−s))·He`, without the prefactor.
    pub fn interpolate(&self, s: T) -> Hermitian2<T> {
        let u = T::one() - s;
        self.h0 * u + self.hf * s + self.he * (s * u).sqrt()
    }
}

fn check_s<T: Real>(s: T) -> Result<()> {
    if s >= T::zero() && s <= T::one() {
        Ok(())
    } else {
        Err(domain("s", s, "[0, 1]"))
    }
}

/// `λ1(s) = (s(1−s)/(4ε²N))^{1/4}`.
pub fn walk_follower_prefactor<T: Real>(s: T, inst: &SearchInstance<T>) -> T {
    let eps = inst.eps();
    let x = s * (T::one() - s) / (lit::<T>(4.0) * eps * eps * inst.size());
    x.max(T::zero()).sqrt().sqrt()
}

/// Gap demanded by the local adiabatic condition along `s = sin²(t/√N)`:
/// `√(2√(s(1−s))/(ε√N))`, equal to `2λ1(s)`.
pub fn walk_follower_gap<T: Real>(s: T, inst: &SearchInstance<T>) -> T {
    let two = lit::<T>(2.0);
    (two * (s * (T::one() - s)).max(T::zero()).sqrt() / (inst.eps() * inst.size().sqrt())).sqrt()
}

/// The adiabatic Hamiltonian whose ground state follows the walk.
///
/// Zero at `s ∈ {0, 1}`, where the prefactor vanishes.
pub fn walk_follower_hamiltonian<T: Real>(s: T, inst: &SearchInstance<T>) -> Result<Hermitian2<T>> {
    check_s(s)?;
    Ok(ThreeTermDecomposition::new(inst).interpolate(s) * walk_follower_prefactor(s, inst))
}

/// `s = sin²(t/√N)` for `t ∈ [0, π√N/2]`.
pub fn walk_follower_schedule<T: Real>(t: T, inst: &SearchInstance<T>) -> Result<SchedulePoint<T>> {
    let root_n = inst.size().sqrt();
    let end = T::FRAC_PI_2() * root_n;
    if !(t >= T::zero() && t <= end * (T::one() + lit::<T>(4.0) * precision::<T>())) {
        return Err(domain("t", t, "[0, pi sqrt(N)/2]"));
    }
    let sin = (t / root_n).sin();
    Ok(SchedulePoint {
        s: (sin * sin).min(T::one()),
        t,
        kind: ScheduleKind::SineSquared,
    })
}

/// Inverse of [`walk_follower_schedule`]: `t = √N·arcsin(√s)`.
pub fn walk_follower_time<T: Real>(s: T, inst: &SearchInstance<T>) -> Result<T> {
    check_s(s)?;
    Ok(inst.size().sqrt() * s.sqrt().asin())
}

/// Ground state of [`walk_follower_hamiltonian`]; at the endpoints, where the
/// Hamiltonian vanishes, the limit along the walk path is returned.
pub fn walk_follower_ground_state<T: Real>(
    s: T,
    inst: &SearchInstance<T>,
) -> Result<SubspaceState<T>> {
    let e = eigen2(&walk_follower_hamiltonian(s, inst)?);
    if e.degenerate {
        let canonical = SearchInstance::new(inst.n())?;
        return Ok(fg_state(walk_follower_time(s, inst)?, &canonical));
    }
    Ok(e.ground)
}

/// Whether an operator has any imaginary entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reality {
    Real,
    Complex,
}

/// Real iff every entry has imaginary part below 1e-12.
pub fn reality_classifier<T: Real>(h: &Hermitian2<T>) -> Reality {
    if h.is_real() {
        Reality::Real
    } else {
        Reality::Complex
    }
}

/// Hamiltonian families compared by their norm scaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamiltonianFamily {
    WalkFollower,
    LocalAdiabatic,
    Fenner,
    CompleteGraphWalk,
}

impl HamiltonianFamily {
    /// Member at schedule value `s` (ignored by the time-independent families).
    pub fn hamiltonian<T: Real>(self, s: T, inst: &SearchInstance<T>) -> Result<Hermitian2<T>> {
        match self {
            Self::WalkFollower => walk_follower_hamiltonian(s, inst),
            Self::LocalAdiabatic => rc_hamiltonian(s, inst),
            Self::Fenner => Ok(fenner_hamiltonian(inst)),
            Self::CompleteGraphWalk => Ok(fg_hamiltonian(inst)),
        }
    }
}

/// Where along the schedule a norm is measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbePoint<T> {
    At(T),
    /// Largest norm over the whole interpolation, scanned on a grid of
    /// 2001 points including both endpoints and `s = 1/2`.
    Supremum,
}

/// Norm of one family member.
pub fn family_norm<T: Real>(
    family: HamiltonianFamily,
    point: ProbePoint<T>,
    inst: &SearchInstance<T>,
) -> Result<T> {
    match point {
        ProbePoint::At(s) => Ok(family.hamiltonian(s, inst)?.spectral_norm()),
        ProbePoint::Supremum => {
            const GRID: u64 = 2000;
            let mut best = T::zero();
            for k in 0..=GRID {
                let s = count::<T>(k) / count::<T>(GRID);
                best = best.max(family.hamiltonian(s, inst)?.spectral_norm());
            }
            Ok(best)
        }
    }
}

/// Log-log fit of operator norm against `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport<T> {
    pub family: HamiltonianFamily,
    /// `(N, ‖H‖)` pairs in input order.
    pub points: Vec<(u64, T)>,
    pub slope: T,
    pub intercept: T,
}

/// Fits `log‖H(s; N)‖ = slope·log N + intercept` by least squares.
///
/// Needs at least three sizes spanning two decades.
pub fn norm_scaling_probe<T: Real>(
    family: HamiltonianFamily,
    point: ProbePoint<T>,
    eps: T,
    sizes: &[u64],
) -> Result<ScalingReport<T>> {
    if sizes.len() < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: sizes.len(),
        });
    }
    let lo = *sizes.iter().min().expect("non-empty");
    let hi = *sizes.iter().max().expect("non-empty");
    if (hi as f64) < 100.0 * lo as f64 {
        return Err(Error::Mismatch(format!(
            "sizes must span two decades, got {lo}..{hi}"
        )));
    }
    let mut points = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let inst = SearchInstance::new(n)?.with_eps(eps)?;
        points.push((n, family_norm(family, point, &inst)?));
    }
    let (slope, intercept) = least_squares(
        points
            .iter()
            .map(|&(n, norm)| (count::<T>(n).ln(), norm.ln())),
    );
    Ok(ScalingReport {
        family,
        points,
        slope,
        intercept,
    })
}

fn least_squares<T: Real>(xy: impl Iterator<Item = (T, T)> + Clone) -> (T, T) {
    let mut k = T::zero();
    let (mut sx, mut sy) = (T::zero(), T::zero());
    for (x, y) in xy.clone() {
        k = k + T::one();
        sx = sx + x;
        sy = sy + y;
    }
    let (mx, my) = (sx / k, sy / k);
    let (mut sxy, mut sxx) = (T::zero(), T::zero());
    for (x, y) in xy {
        sxy = sxy + (x - mx) * (y - my);
        sxx = sxx + (x - mx) * (x - mx);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Gap of `H(s)/‖H(s)‖` for the walk follower: independent of `N` and `s`,
/// so a norm-one rescaling would keep a constant gap.
pub fn walk_follower_normalized_gap<T: Real>(s: T, inst: &SearchInstance<T>) -> Result<T> {
    let h = walk_follower_hamiltonian(s, inst)?;
    let e = eigen2(&h);
    if e.degenerate {
        return Err(domain("s", s, "(0, 1)"));
    }
    Ok(e.gap() / h.spectral_norm())
}
