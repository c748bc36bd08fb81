use search_paths::equivalence::{solve_fenner_time, verify_identity};
use search_paths::fullspace::{
    complete_graph_walk, evolve_full, fenner_star, full_grover_state, rc_full, reduce_to_subspace,
    FullOperator, FullState,
};
use search_paths::search::{
    fenner_grover_interval, fg_success_time, grover_optimal_iterations, grover_state, rc_gap,
    rc_schedule_s, rc_total_time, SearchInstance,
};
use search_paths::subspace::{eigen2, fidelity, SubspaceState};
use search_paths::synthesis::{
    norm_scaling_probe, walk_follower_gap, walk_follower_ground_state, walk_follower_hamiltonian,
    walk_follower_prefactor, walk_follower_schedule, walk_follower_time, HamiltonianFamily,
    ProbePoint,
};
use search_paths::trajectories::{state_at, trajectory, Algorithm, Parameter, MAX_DT};
use search_paths::Instance;

use crate::args::{Align, Command, Common};
use crate::error::{CliError, CliResult};
use crate::report::Table;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

pub fn instance(c: &Common) -> CliResult<Instance> {
    let mut inst = SearchInstance::new(c.n)?
        .with_marked(c.marked)?
        .with_eps(c.eps)?;
    if let Some(g) = c.gamma {
        inst = inst.with_gamma(g)?;
    }
    Ok(inst)
}

pub fn build(cmd: &Command, c: &Common) -> CliResult<Table> {
    if c.samples < 2 {
        return usage(format!("--samples must be at least 2 (got {})", c.samples));
    }
    let inst = instance(c)?;
    match cmd {
        Command::Trajectory { algorithm } => trajectory_table(*algorithm, &inst, c.samples),
        Command::Gap { algorithm } => gap_table(*algorithm, &inst, c.samples),
        Command::Schedule { algorithm } => schedule_table(*algorithm, &inst, c.samples),
        Command::Equivalence => equivalence_table(&inst, c.samples),
        Command::Synth => synth_table(&inst, c.samples),
        Command::Fullspace { algorithm } => fullspace_table(*algorithm, &inst, c.samples),
        Command::Norms {
            algorithm,
            sizes,
            at,
        } => norms_table(*algorithm, sizes, *at, c.eps),
        Command::Compare {
            algorithm,
            against,
            align,
        } => compare_table(*algorithm, *against, *align, &inst, c.samples),
    }
}

fn grid(samples: usize, end: f64) -> impl Iterator<Item = f64> {
    let last = (samples - 1) as f64;
    (0..samples).map(move |k| {
        if k + 1 == samples {
            end
        } else {
            end * k as f64 / last
        }
    })
}

fn trajectory_table(alg: Algorithm, inst: &Instance, samples: usize) -> CliResult<Table> {
    let tr = trajectory(alg, inst, samples)?;
    let mut t = Table::new(&[
        "index",
        "t",
        "s",
        "re_aw",
        "im_aw",
        "re_ar",
        "im_ar",
        "x",
        "y",
        "z",
        "success_prob",
    ]);
    for (k, p) in tr.samples().iter().enumerate() {
        let (aw, ar) = (p.state.a_w(), p.state.a_r());
        t.push(vec![
            k.into(),
            p.t.into(),
            p.s.into(),
            aw.re.into(),
            aw.im.into(),
            ar.re.into(),
            ar.im.into(),
            p.bloch.x.into(),
            p.bloch.y.into(),
            p.bloch.z.into(),
            p.state.success_probability().into(),
        ]);
    }
    Ok(t)
}

fn gap_table(alg: Algorithm, inst: &Instance, samples: usize) -> CliResult<Table> {
    let gap: fn(f64, &Instance) -> f64 = match alg {
        Algorithm::RolandCerf | Algorithm::RcGround => rc_gap,
        Algorithm::WalkFollower => walk_follower_gap,
        other => {
            return usage(format!(
                "{other} has no interpolation gap; use rc or walk-follower"
            ))
        }
    };
    let mut t = Table::new(&["s", "g"]);
    for s in grid(samples, 1.0) {
        t.push(vec![s.into(), gap(s, inst).into()]);
    }
    Ok(t)
}

fn schedule_table(alg: Algorithm, inst: &Instance, samples: usize) -> CliResult<Table> {
    let mut t = Table::new(&["t", "s"]);
    match alg {
        Algorithm::RolandCerf | Algorithm::RcGround => {
            for time in grid(samples, rc_total_time(inst)) {
                t.push(vec![time.into(), rc_schedule_s(time, inst)?.into()]);
            }
        }
        Algorithm::WalkFollower => {
            for time in grid(samples, fg_success_time(inst)) {
                t.push(vec![
                    time.into(),
                    walk_follower_schedule(time, inst)?.s.into(),
                ]);
            }
        }
        other => return usage(format!("{other} has no schedule; use rc or walk-follower")),
    }
    Ok(t)
}

fn equivalence_table(inst: &Instance, samples: usize) -> CliResult<Table> {
    let rep = verify_identity(inst, samples)?;
    let mut t = Table::new(&["s", "t", "lhs", "rhs", "deviation"]);
    for r in &rep.rows {
        t.push(vec![
            r.s.into(),
            r.t.into(),
            r.lhs.value().into(),
            r.rhs.value().into(),
            r.deviation.into(),
        ]);
    }
    t.summarise("max_deviation", rep.max_deviation);
    Ok(t)
}

fn synth_table(inst: &Instance, samples: usize) -> CliResult<Table> {
    let mut t = Table::new(&[
        "s",
        "t",
        "lambda1",
        "h_ww",
        "re_h_wr",
        "im_h_wr",
        "h_rr",
        "ground_energy",
        "excited_energy",
        "walk_fidelity",
    ]);
    for s in grid(samples, 1.0) {
        let time = walk_follower_time(s, inst)?;
        let h = walk_follower_hamiltonian(s, inst)?;
        let e = eigen2(&h);
        let ground = walk_follower_ground_state(s, inst)?;
        let walk = state_at(Algorithm::FarhiGutmann, Parameter::Time(time), inst)?;
        t.push(vec![
            s.into(),
            time.into(),
            walk_follower_prefactor(s, inst).into(),
            h.h11().into(),
            h.h12().re.into(),
            h.h12().im.into(),
            h.h22().into(),
            e.ground_energy.into(),
            e.excited_energy.into(),
            fidelity(&ground, &walk).into(),
        ]);
    }
    Ok(t)
}

/// Steps for one RK4 segment so that no step exceeds [`MAX_DT`].
fn steps(dt: f64) -> usize {
    ((dt / MAX_DT).ceil() as usize).max(1)
}

fn fullspace_table(alg: Algorithm, inst: &Instance, samples: usize) -> CliResult<Table> {
    let mut t = Table::new(&[
        "index",
        "t",
        "s",
        "success_prob_full",
        "success_prob_plane",
        "fidelity",
    ]);
    let row = |t: &mut Table,
               k: usize,
               time: f64,
               s: Option<f64>,
               full: &FullState<f64>,
               plane: &SubspaceState<f64>|
     -> CliResult<f64> {
        let f = full.fidelity(&FullState::embed(plane, inst)?);
        t.push(vec![
            k.into(),
            time.into(),
            s.into(),
            full.probability(inst.marked() as usize - 1).into(),
            plane.success_probability().into(),
            f.into(),
        ]);
        Ok(f)
    };
    let mut min_fid = f64::INFINITY;
    let mut leakage = 0.0f64;

    if alg == Algorithm::Grover {
        let dt = fenner_grover_interval(inst);
        for k in 0..=grover_optimal_iterations(inst) {
            let full = full_grover_state(k, inst)?;
            min_fid = min_fid.min(row(
                &mut t,
                k as usize,
                dt * k as f64,
                None,
                &full,
                &grover_state(k, inst),
            )?);
        }
        t.summarise("min_fidelity", min_fid);
        return Ok(t);
    }

    let op_at: Box<dyn Fn(f64) -> search_paths::Result<FullOperator<f64>>> = match alg {
        Algorithm::FarhiGutmann => {
            let op = complete_graph_walk(inst)?;
            Box::new(move |_| Ok(op.clone()))
        }
        Algorithm::Fenner => {
            let op = fenner_star(inst)?;
            Box::new(move |_| Ok(op.clone()))
        }
        Algorithm::RolandCerf => Box::new(|time| rc_full(rc_schedule_s(time, inst)?, inst)),
        other => {
            return usage(format!(
                "{other} has no full-space generator; use grover, fg, fenner or rc"
            ))
        }
    };
    let tr = trajectory(alg, inst, samples)?;
    let mut full = FullState::uniform(inst.n() as usize);
    let mut prev = 0.0;
    for (k, p) in tr.samples().iter().enumerate() {
        if p.t > prev {
            full = evolve_full(&op_at, &full, prev, p.t, steps(p.t - prev))?;
        }
        prev = p.t;
        leakage = leakage.max(reduce_to_subspace(&op_at(p.t)?, inst)?.leakage);
        min_fid = min_fid.min(row(&mut t, k, p.t, p.s, &full, &p.state)?);
    }
    t.summarise("min_fidelity", min_fid);
    t.summarise("max_leakage", leakage);
    Ok(t)
}

fn norms_table(alg: Algorithm, sizes: &[u64], at: Option<f64>, eps: f64) -> CliResult<Table> {
    let family = match alg {
        Algorithm::FarhiGutmann => HamiltonianFamily::CompleteGraphWalk,
        Algorithm::RolandCerf | Algorithm::RcGround => HamiltonianFamily::LocalAdiabatic,
        Algorithm::Fenner => HamiltonianFamily::Fenner,
        Algorithm::WalkFollower => HamiltonianFamily::WalkFollower,
        Algorithm::Grover => return usage("grover is discrete and has no Hamiltonian"),
    };
    let point = match (at, family) {
        (Some(s), _) => ProbePoint::At(s),
        (None, HamiltonianFamily::LocalAdiabatic) => ProbePoint::Supremum,
        (None, _) => ProbePoint::At(0.5),
    };
    let rep = norm_scaling_probe(family, point, eps, sizes)?;
    let mut t = Table::new(&["N", "norm"]);
    for (n, norm) in &rep.points {
        t.push(vec![(*n).into(), (*norm).into()]);
    }
    t.summarise("slope", rep.slope);
    t.summarise("intercept", rep.intercept);
    Ok(t)
}

fn compare_table(
    a: Algorithm,
    b: Algorithm,
    align: Align,
    inst: &Instance,
    samples: usize,
) -> CliResult<Table> {
    let first = trajectory(a, inst, samples)?;
    let pairs: Vec<(f64, f64, SubspaceState<f64>, SubspaceState<f64>)> = match align {
        Align::Index => {
            let second = trajectory(b, inst, samples)?;
            if second.len() != first.len() {
                return usage(format!(
                    "{a} has {} samples but {b} has {}; align by time instead",
                    first.len(),
                    second.len()
                ));
            }
            first
                .samples()
                .iter()
                .zip(second.samples())
                .map(|(p, q)| (p.t, q.t, p.state, q.state))
                .collect()
        }
        Align::Time => first
            .samples()
            .iter()
            .map(|p| Ok((p.t, p.t, p.state, state_at(b, Parameter::Time(p.t), inst)?)))
            .collect::<CliResult<_>>()?,
        Align::Schedule => first
            .samples()
            .iter()
            .map(|p| {
                let s =
                    p.s.ok_or_else(|| CliError::Usage(format!("{a} has no schedule parameter")))?;
                Ok((
                    p.t,
                    p.t,
                    p.state,
                    state_at(b, Parameter::Schedule(s), inst)?,
                ))
            })
            .collect::<CliResult<_>>()?,
        Align::Reparametrized => {
            if (a, b) != (Algorithm::RcGround, Algorithm::Fenner) {
                return usage(
                    "reparametrized alignment pairs --algorithm rc-ground with --against fenner",
                );
            }
            first
                .samples()
                .iter()
                .map(|p| {
                    let s = p.s.expect("adiabatic samples carry s");
                    let tb = solve_fenner_time(s, inst)?;
                    Ok((p.t, tb, p.state, state_at(b, Parameter::Time(tb), inst)?))
                })
                .collect::<CliResult<_>>()?
        }
    };

    let mut t = Table::new(&["index", "t_a", "t_b", "fidelity", "bloch_distance"]);
    let (mut max_d, mut sum_d, mut min_f, mut sum_f) = (0.0f64, 0.0, f64::INFINITY, 0.0);
    for (k, (ta, tb, x, y)) in pairs.iter().enumerate() {
        let f = fidelity(x, y);
        let d = x.bloch().distance(&y.bloch());
        max_d = max_d.max(d);
        min_f = min_f.min(f);
        sum_d += d;
        sum_f += f;
        t.push(vec![
            k.into(),
            (*ta).into(),
            (*tb).into(),
            f.into(),
            d.into(),
        ]);
    }
    let count = pairs.len() as f64;
    t.summarise("max_bloch_distance", max_d);
    t.summarise("mean_bloch_distance", sum_d / count);
    t.summarise("min_fidelity", min_f);
    t.summarise("mean_fidelity", sum_f / count);
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::Cli;
    use clap::Parser;

    fn table(args: &[&str]) -> CliResult<Table> {
        let cli = Cli::try_parse_from([&["search-paths"], args].concat()).unwrap();
        build(&cli.command, &cli.common)
    }

    #[test]
    fn grid_hits_both_ends_exactly() {
        let g: Vec<f64> = grid(4, 3.3).collect();
        assert_eq!(g.first(), Some(&0.0));
        assert_eq!(g.last(), Some(&3.3));
    }

    #[test]
    fn step_count_respects_max_dt() {
        assert_eq!(steps(0.0), 1);
        assert_eq!(steps(0.025), 3);
    }

    #[test]
    fn rc_norms_default_to_the_supremum() {
        let t = table(&["norms", "--algorithm", "rc"]).unwrap();
        assert_eq!(t.summary[0], ("slope", 0.0));
        let mid = table(&["norms", "--algorithm", "rc", "--at", "0.5"]).unwrap();
        assert!((mid.summary[0].1 + 0.0129).abs() < 1e-3);
    }

    #[test]
    fn trajectory_schedule_column_only_for_adiabatic() {
        let walk = table(&["trajectory", "--algorithm", "fenner", "--samples", "3"]).unwrap();
        assert!(walk
            .column("s")
            .unwrap()
            .iter()
            .all(|v| v.as_f64().is_none()));
        let adiabatic =
            table(&["trajectory", "--algorithm", "rc-ground", "--samples", "3"]).unwrap();
        assert_eq!(adiabatic.column("s").unwrap()[1].as_f64(), Some(0.5));
    }

    #[test]
    fn reparametrized_needs_the_identity_pair() {
        assert!(matches!(
            table(&[
                "compare",
                "--algorithm",
                "fg",
                "--against",
                "fenner",
                "--align",
                "reparametrized"
            ]),
            Err(CliError::Usage(_))
        ));
    }
}
