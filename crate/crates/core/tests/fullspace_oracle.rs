use nalgebra::DMatrix;
use num_complex::Complex;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use search_paths::fullspace::{
    complete_graph_walk, fenner_star, rc_full, spectral_norm_full, FullOperator,
};
use search_paths::search::SearchInstance;

type C = Complex<f64>;

fn inst(n: u64) -> SearchInstance<f64> {
    SearchInstance::new(n).unwrap()
}

/// Matrices written out entry by entry from their definitions.
fn reference(kind: &str, n: usize, w: usize, p: f64) -> DMatrix<C> {
    let s_entry = 1.0 / n as f64;
    DMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        let at_w = if i == w && j == w { 1.0 } else { 0.0 };
        match kind {
            "walk" => C::new(-p * (1.0 - delta) - at_w, 0.0),
            "rc" => C::new((1.0 - p) * (delta - s_entry) + p * (delta - at_w), 0.0),
            "star" => {
                if i == w && j != w {
                    C::new(0.0, 1.0 / n as f64)
                } else if j == w && i != w {
                    C::new(0.0, -1.0 / n as f64)
                } else {
                    C::new(0.0, 0.0)
                }
            }
            _ => unreachable!(),
        }
    })
}

fn random_vec(rng: &mut StdRng, n: usize) -> Vec<C> {
    (0..n)
        .map(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

fn dot(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn operators(rng: &mut StdRng, n: u64, w: u64) -> Vec<(FullOperator<f64>, DMatrix<C>)> {
    let gamma = rng.gen_range(0.01..2.0);
    let s = rng.gen_range(0.0..=1.0);
    let walk = inst(n).with_marked(w).unwrap().with_gamma(gamma).unwrap();
    let base = inst(n).with_marked(w).unwrap();
    let (nu, wu) = (n as usize, w as usize - 1);
    vec![
        (
            complete_graph_walk(&walk).unwrap(),
            reference("walk", nu, wu, gamma),
        ),
        (rc_full(s, &base).unwrap(), reference("rc", nu, wu, s)),
        (fenner_star(&base).unwrap(), reference("star", nu, wu, 0.0)),
    ]
}

#[test]
fn matrix_free_matches_definitions() {
    let mut rng = StdRng::seed_from_u64(11);
    for n in [2u64, 3, 17, 64] {
        let w = rng.gen_range(1..=n);
        for (op, dense) in operators(&mut rng, n, w) {
            let v = random_vec(&mut rng, n as usize);
            let expect = &dense * nalgebra::DVector::from_vec(v.clone());
            let got = op.apply(&v);
            for (a, b) in got.iter().zip(expect.iter()) {
                assert!((a - b).norm() < 1e-13, "N={n} {:?}", op.kind());
            }
        }
    }
}

#[test]
fn operators_are_hermitian_on_random_pairs() {
    let mut rng = StdRng::seed_from_u64(5);
    for n in [4u64, 50, 300] {
        let w = rng.gen_range(1..=n);
        for (op, _) in operators(&mut rng, n, w) {
            for _ in 0..5 {
                let u = random_vec(&mut rng, n as usize);
                let v = random_vec(&mut rng, n as usize);
                let lhs = dot(&u, &op.apply(&v));
                let rhs = dot(&v, &op.apply(&u)).conj();
                assert!((lhs - rhs).norm() < 1e-10);
            }
        }
    }
}

fn dense_norm(m: DMatrix<C>) -> f64 {
    m.symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(0.0f64, |a, x| a.max(x.abs()))
}

#[test]
fn power_iteration_matches_dense_eigensolver() {
    let i = inst(64);
    let r = spectral_norm_full(&complete_graph_walk(&i).unwrap(), &i).unwrap();
    let oracle = dense_norm(reference("walk", 64, 0, 1.0 / 64.0));
    assert!((r.norm - oracle).abs() < 1e-9, "{} vs {oracle}", r.norm);
    assert!((r.complement_eigenvalue.unwrap() - 1.0 / 64.0).abs() < 1e-15);

    for s in [0.1, 0.5, 0.9] {
        let i = inst(48);
        let r = spectral_norm_full(&rc_full(s, &i).unwrap(), &i).unwrap();
        let dense = reference("rc", 48, 0, s);
        let eig = dense.clone().symmetric_eigen().eigenvalues;
        let ones = eig.iter().filter(|x| (*x - 1.0).abs() < 1e-10).count();
        assert!(ones >= 46, "complement multiplicity {ones}");
        assert!((r.norm - dense_norm(dense)).abs() < 1e-9);
    }

    let i = inst(40);
    let r = spectral_norm_full(&fenner_star(&i).unwrap(), &i).unwrap();
    assert!((r.norm - dense_norm(reference("star", 40, 0, 0.0))).abs() < 1e-12);
}
