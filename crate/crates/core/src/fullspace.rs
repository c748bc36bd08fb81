//! N-dimensional realisations of the search Hamiltonians, applied
//! matrix-free, used to check the two-dimensional reductions.

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::scalar::{count, lit, tol, Real};
use crate::search::SearchInstance;
use crate::subspace::{Hermitian2, SubspaceState, NORM_DRIFT_LIMIT};

type C<T> = Complex<T>;

fn czero<T: Real>() -> C<T> {
    C::new(T::zero(), T::zero())
}

fn dimension<T: Real>(inst: &SearchInstance<T>) -> Result<usize> {
    usize::try_from(inst.n())
        .map_err(|_| Error::InvalidInstance(format!("N = {} does not fit in memory", inst.n())))
}

/// Row-major dense complex matrix, used for small-`N` oracles and for the
/// chirality analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    n: usize,
    data: Vec<C<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![czero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, C::new(T::one(), T::zero()));
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> C<T>) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> C<T> {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C<T>) {
        self.data[i * self.n + j] = v;
    }

    pub fn apply(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(v)
                    .fold(czero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn max_abs_entry(&self) -> T {
        self.data.iter().fold(T::zero(), |m, a| m.max(a.norm()))
    }

    /// `max |H − H†|`.
    pub fn hermiticity_deviation(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }
}

impl<T: Real> From<&Hermitian2<T>> for DenseMatrix<T> {
    fn from(h: &Hermitian2<T>) -> Self {
        Self::from_fn(2, |i, j| h.entry(i, j))
    }
}

/// Which search Hamiltonian a [`FullOperator`] realises.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OperatorKind<T> {
    /// `−γA − |w⟩⟨w|` with `A` the complete-graph adjacency matrix.
    CompleteGraphWalk { gamma: T },
    /// `(1−s)(I − |s⟩⟨s|) + s(I − |w⟩⟨w|)`.
    RcInterpolation { s: T },
    /// Directed star centred on `|w⟩` with weights `±i/N`.
    FennerStar,
}

/// A Hermitian operator on `C^N` applied without forming the matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FullOperator<T> {
    n: usize,
    marked: usize,
    kind: OperatorKind<T>,
    extra: Vec<(usize, usize, C<T>)>,
}

/// `−γA − |w⟩⟨w|` on the complete graph.
pub fn complete_graph_walk<T: Real>(inst: &SearchInstance<T>) -> Result<FullOperator<T>> {
    FullOperator::new(
        inst,
        OperatorKind::CompleteGraphWalk {
            gamma: inst.gamma(),
        },
    )
}

/// The star graph: `H|w⟩ = (−i/N)Σ_{j≠w}|j⟩`, `H|j⟩ = (i/N)|w⟩`.
pub fn fenner_star<T: Real>(inst: &SearchInstance<T>) -> Result<FullOperator<T>> {
    FullOperator::new(inst, OperatorKind::FennerStar)
}

/// The local adiabatic interpolation at `s ∈ [0, 1]`.
pub fn rc_full<T: Real>(s: T, inst: &SearchInstance<T>) -> Result<FullOperator<T>> {
    if !(s >= T::zero() && s <= T::one()) {
        return Err(domain("s", s, "[0, 1]"));
    }
    FullOperator::new(inst, OperatorKind::RcInterpolation { s })
}

impl<T: Real> FullOperator<T> {
    pub fn new(inst: &SearchInstance<T>, kind: OperatorKind<T>) -> Result<Self> {
        Ok(Self {
            n: dimension(inst)?,
            marked: (inst.marked() - 1) as usize,
            kind,
            extra: Vec::new(),
        })
    }

    /// Adds `v|i⟩⟨j| + conj(v)|j⟩⟨i|` (0-based indices).
    pub fn with_coupling(mut self, i: usize, j: usize, v: C<T>) -> Result<Self> {
        if i >= self.n || j >= self.n {
            return Err(Error::InvalidInstance(format!(
                "coupling ({i}, {j}) outside dimension {}",
                self.n
            )));
        }
        if i == j {
            self.extra.push((i, i, C::new(v.re, T::zero())));
        } else {
            self.extra.push((i, j, v));
            self.extra.push((j, i, v.conj()));
        }
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// 0-based index of the marked vertex.
    pub fn marked_index(&self) -> usize {
        self.marked
    }

    pub fn kind(&self) -> OperatorKind<T> {
        self.kind
    }

    pub fn apply(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        let n = count::<T>(self.n as u64);
        let w = self.marked;
        let mut out: Vec<C<T>> = match self.kind {
            OperatorKind::CompleteGraphWalk { gamma } => {
                let sum = sum(v);
                v.iter()
                    .enumerate()
                    .map(|(i, &vi)| {
                        let hop = (sum - vi) * (-gamma);
                        if i == w {
                            hop - vi
                        } else {
                            hop
                        }
                    })
                    .collect()
            }
            OperatorKind::RcInterpolation { s } => {
                let mean = sum(v).unscale(n);
                let u = T::one() - s;
                v.iter()
                    .enumerate()
                    .map(|(i, &vi)| {
                        let begin = (vi - mean) * u;
                        if i == w {
                            begin
                        } else {
                            begin + vi * s
                        }
                    })
                    .collect()
            }
            OperatorKind::FennerStar => {
                let k = n.recip();
                let rest = sum(v) - v[w];
                let mut out: Vec<C<T>> = vec![v[w] * C::new(T::zero(), -k); self.n];
                out[w] = rest * C::new(T::zero(), k);
                out
            }
        };
        for &(i, j, c) in &self.extra {
            out[i] = out[i] + c * v[j];
        }
        out
    }

    /// The dense matrix, built column by column from [`Self::apply`].
    pub fn dense(&self) -> DenseMatrix<T> {
        let mut m = DenseMatrix::zeros(self.n);
        let mut e = vec![czero(); self.n];
        for j in 0..self.n {
            e[j] = C::new(T::one(), T::zero());
            for (i, x) in self.apply(&e).into_iter().enumerate() {
                m.set(i, j, x);
            }
            e[j] = czero();
        }
        m
    }
}

/// Neumaier-compensated sum, per component. Plain accumulation loses
/// `O(N ε)` relative accuracy, which shows up as spurious leakage out of the
/// plane for large `N`.
fn sum<T: Real>(v: &[C<T>]) -> C<T> {
    let compensated = |part: fn(&C<T>) -> T| {
        let (mut total, mut carry) = (T::zero(), T::zero());
        for x in v.iter().map(part) {
            let t = total + x;
            carry = carry
                + if total.abs() >= x.abs() {
                    (total - t) + x
                } else {
                    (x - t) + total
                };
            total = t;
        }
        total + carry
    };
    C::new(compensated(|c| c.re), compensated(|c| c.im))
}

fn dot<T: Real>(a: &[C<T>], b: &[C<T>]) -> C<T> {
    let products: Vec<C<T>> = a.iter().zip(b).map(|(x, y)| x.conj() * y).collect();
    sum(&products)
}

fn norm<T: Real>(v: &[C<T>]) -> T {
    v.iter().fold(T::zero(), |acc, x| acc + x.norm_sqr()).sqrt()
}

/// A state on the `N` vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct FullState<T> {
    amps: Vec<C<T>>,
}

impl<T: Real> FullState<T> {
    /// Wraps amplitudes; rejects a norm off by more than 1e-10.
    pub fn new(amps: Vec<C<T>>) -> Result<Self> {
        let drift = (norm(&amps) - T::one()).abs();
        if !(drift <= tol(1e-10)) {
            return Err(Error::InvalidState(format!("norm off by {drift}")));
        }
        Ok(Self { amps })
    }

    pub fn uniform(n: usize) -> Self {
        let a = count::<T>(n as u64).sqrt().recip();
        Self {
            amps: vec![C::new(a, T::zero()); n],
        }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut amps = vec![czero(); n];
        amps[i] = C::new(T::one(), T::zero());
        Self { amps }
    }

    /// `a_w|w⟩ + a_r|r⟩` written on the vertices.
    pub fn embed(state: &SubspaceState<T>, inst: &SearchInstance<T>) -> Result<Self> {
        let n = dimension(inst)?;
        let w = (inst.marked() - 1) as usize;
        let spread = state.a_r().unscale(inst.root_unmarked());
        let mut amps = vec![spread; n];
        amps[w] = state.a_w();
        Ok(Self { amps })
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm(&self) -> T {
        norm(&self.amps)
    }

    pub fn inner(&self, other: &Self) -> C<T> {
        dot(&self.amps, &other.amps)
    }

    /// `|⟨a|b⟩|²`, insensitive to global phase.
    pub fn fidelity(&self, other: &Self) -> T {
        let d = self.inner(other).norm_sqr();
        let f = d / (self.norm() * self.norm() * other.norm() * other.norm());
        // `min` would swallow NaN.
        if f > T::one() {
            T::one()
        } else {
            f
        }
    }

    /// Probability of measuring vertex `i`.
    pub fn probability(&self, i: usize) -> T {
        self.amps[i].norm_sqr()
    }
}

/// The basis vectors `|w⟩` and `|r⟩` on the vertices.
fn plane_basis<T: Real>(n: usize, w: usize) -> (Vec<C<T>>, Vec<C<T>>) {
    let mut ew = vec![czero(); n];
    ew[w] = C::new(T::one(), T::zero());
    let a = count::<T>(n as u64 - 1).sqrt().recip();
    let mut er = vec![C::new(a, T::zero()); n];
    er[w] = czero();
    (ew, er)
}

/// Compression onto `span{|w⟩, |r⟩}` and how much the operator leaks out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reduction<T> {
    pub hamiltonian: Hermitian2<T>,
    /// Largest norm, over `|w⟩` and `|r⟩`, of the part of `H|b⟩` outside
    /// the plane.
    pub leakage: T,
}

pub fn reduce_to_subspace<T: Real>(
    op: &FullOperator<T>,
    inst: &SearchInstance<T>,
) -> Result<Reduction<T>> {
    let n = dimension(inst)?;
    if n != op.dim() || (inst.marked() - 1) as usize != op.marked_index() {
        return Err(Error::Mismatch(
            "operator and instance disagree on N or w".into(),
        ));
    }
    let (ew, er) = plane_basis::<T>(n, op.marked_index());
    let hw = op.apply(&ew);
    let hr = op.apply(&er);
    let entries = [
        [dot(&ew, &hw), dot(&ew, &hr)],
        [dot(&er, &hw), dot(&er, &hr)],
    ];
    let residual = |hb: &[C<T>], cw: C<T>, cr: C<T>| {
        let out: Vec<C<T>> = hb
            .iter()
            .zip(ew.iter().zip(&er))
            .map(|(h, (a, b))| h - a * cw - b * cr)
            .collect();
        norm(&out)
    };
    let leakage = residual(&hw, entries[0][0], entries[1][0]).max(residual(
        &hr,
        entries[0][1],
        entries[1][1],
    ));
    Ok(Reduction {
        hamiltonian: Hermitian2::from_entries(entries)?,
        leakage,
    })
}

/// Operator norm of a full operator with its block structure exposed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullNorm<T> {
    /// Largest `|λ|` from power iteration on `H²`.
    pub norm: T,
    pub iterations: usize,
    /// Norm of the compression onto the plane.
    pub subspace_norm: T,
    /// Eigenvalue on the orthogonal complement (`None` when `N = 2`).
    pub complement_eigenvalue: Option<T>,
}

/// Power iteration on `H²` until the Rayleigh quotient changes by less than
/// 1e-10 relative, from a fixed start vector.
pub fn spectral_norm_full<T: Real>(
    op: &FullOperator<T>,
    inst: &SearchInstance<T>,
) -> Result<FullNorm<T>> {
    const MAX_ITER: usize = 10_000;
    let n = op.dim();
    let golden = lit::<T>(0.618_033_988_749_894_8);
    let mut v: Vec<C<T>> = (0..n)
        .map(|i| {
            let x = count::<T>(i as u64 + 1) * golden;
            C::new(T::one() + (x - x.floor()), (x * lit(7.0)).sin() * lit(0.5))
        })
        .collect();
    let scale = norm(&v);
    v.iter_mut().for_each(|x| *x = x.unscale(scale));
    let mut prev = T::zero();
    let conv = tol::<T>(1e-10);
    let mut found = None;
    for it in 1..=MAX_ITER {
        let hv = op.apply(&v);
        let h2v = op.apply(&hv);
        let lambda = dot(&v, &h2v).re;
        let len = norm(&h2v);
        if len == T::zero() {
            found = Some((T::zero(), it));
            break;
        }
        if it > 1 && (lambda - prev).abs() <= conv * lambda.abs() {
            found = Some((lambda, it));
            break;
        }
        prev = lambda;
        v = h2v.into_iter().map(|x| x.unscale(len)).collect();
    }
    let (lambda, iterations) = found.ok_or(Error::NonConvergence {
        iterations: MAX_ITER,
    })?;
    let subspace_norm = reduce_to_subspace(op, inst)?.hamiltonian.spectral_norm();
    let complement_eigenvalue = if n > 2 {
        // e_a − e_b over two unmarked vertices lies in the complement.
        let w = op.marked_index();
        let mut idx = (0..n).filter(|&i| i != w);
        let (a, b) = (idx.next().expect("n > 2"), idx.next().expect("n > 2"));
        let mut u = vec![czero(); n];
        u[a] = C::new(T::one(), T::zero());
        u[b] = C::new(-T::one(), T::zero());
        Some(dot(&u, &op.apply(&u)).re / lit(2.0))
    } else {
        None
    };
    Ok(FullNorm {
        norm: lambda.max(T::zero()).sqrt(),
        iterations,
        subspace_norm,
        complement_eigenvalue,
    })
}

fn axpy<T: Real>(y: &[C<T>], a: C<T>, x: &[C<T>]) -> Vec<C<T>> {
    y.iter().zip(x).map(|(yi, xi)| yi + a * xi).collect()
}

/// RK4 on `i dψ/dt = H(t)ψ` in the full space. Errors if the norm drifts by
/// more than the two-level limit.
pub fn evolve_full<T, F>(
    op_at: F,
    psi0: &FullState<T>,
    t0: T,
    t1: T,
    steps: usize,
) -> Result<FullState<T>>
where
    T: Real,
    F: Fn(T) -> Result<FullOperator<T>>,
{
    if steps == 0 {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    if !(t1 > t0) {
        return Err(domain("t1", t1, "(t0, inf)"));
    }
    let dt = (t1 - t0) / count::<T>(steps as u64);
    let half = lit::<T>(0.5);
    let mi = C::new(T::zero(), -T::one());
    let mut psi = psi0.amps.clone();
    if psi.len() != op_at(t0)?.dim() {
        return Err(Error::Mismatch(
            "state and operator dimensions differ".into(),
        ));
    }
    let mut h_start = op_at(t0)?;
    for k in 0..steps {
        let t = t0 + dt * count::<T>(k as u64);
        let h_mid = op_at(t + dt * half)?;
        let h_end = op_at(if k + 1 == steps { t1 } else { t + dt })?;
        let f = |h: &FullOperator<T>, v: &[C<T>]| -> Vec<C<T>> {
            h.apply(v).into_iter().map(|x| x * mi).collect()
        };
        let k1 = f(&h_start, &psi);
        let k2 = f(&h_mid, &axpy(&psi, C::new(dt * half, T::zero()), &k1));
        let k3 = f(&h_mid, &axpy(&psi, C::new(dt * half, T::zero()), &k2));
        let k4 = f(&h_end, &axpy(&psi, C::new(dt, T::zero()), &k3));
        let sixth = dt / lit(6.0);
        let two = lit::<T>(2.0);
        psi = psi
            .iter()
            .enumerate()
            .map(|(i, p)| p + (k1[i] + k2[i] * two + k3[i] * two + k4[i]) * sixth)
            .collect();
        h_start = h_end;
    }
    let drift = (norm(&psi) - T::one()).abs();
    // Negated so a NaN drift is rejected too.
    if !(drift <= lit(NORM_DRIFT_LIMIT)) {
        return Err(Error::NormDrift {
            drift: drift.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(FullState { amps: psi })
}

/// `k` Grover iterations on `|s⟩`, applied as explicit reflections on the
/// vertex amplitudes.
pub fn full_grover_state<T: Real>(k: u64, inst: &SearchInstance<T>) -> Result<FullState<T>> {
    let n = dimension(inst)?;
    let w = (inst.marked() - 1) as usize;
    let mut v = FullState::<T>::uniform(n).amps;
    let two_over_n = lit::<T>(2.0) / count(n as u64);
    for _ in 0..k {
        v[w] = -v[w];
        let proj = sum(&v) * two_over_n;
        v.iter_mut().for_each(|x| *x = proj - *x);
    }
    Ok(FullState { amps: v })
}
