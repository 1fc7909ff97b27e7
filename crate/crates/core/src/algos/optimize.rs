//! Deterministic parameter search for depth-1 QAOA: a coarse grid followed by
//! a Nelder-Mead refinement from the best grid point.

use std::f64::consts::PI;

use crate::algos::graph::Graph;
use crate::algos::qaoa::{brute_force, check_penalty, make_qaoa_circuit, QaoaParams};
use crate::backend::{compile, execute};
use crate::error::Result;
use crate::noise::DeviceModel;
use crate::rng::derive_seed;
use crate::sim::run;

pub const GRID_POINTS: usize = 16;
pub const MAX_REFINE_EVALS: usize = 100;
pub const SPREAD_TOL: f64 = 1e-4;

/// How `<H_C>` is evaluated for a parameter pair.
#[derive(Clone, Copy, Debug)]
pub enum Objective<'a> {
    /// Exact expectation from the noise-free statevector.
    Exact,
    /// Shot estimate on a device; evaluation `i` samples substream `(seed, i)`.
    Sampled { device: &'a DeviceModel, shots: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub gamma: f64,
    pub beta: f64,
    pub energy: f64,
}

#[derive(Clone, Debug)]
pub struct Optimized {
    pub params: QaoaParams,
    pub energy: f64,
    /// Every evaluation in call order, grid first.
    pub trace: Vec<Evaluation>,
}

struct Evaluator<'a> {
    graph: &'a Graph,
    penalty: f64,
    costs: Vec<f64>,
    objective: Objective<'a>,
    trace: Vec<Evaluation>,
}

impl Evaluator<'_> {
    fn eval(&mut self, x: [f64; 2]) -> Result<f64> {
        let params = QaoaParams { gamma: x[0], beta: x[1], penalty: self.penalty };
        let circuit = make_qaoa_circuit(self.graph, &params);
        let energy = match self.objective {
            Objective::Exact => run(&circuit)?.expectation_diagonal(|z| self.costs[z]),
            Objective::Sampled { device, shots, seed } => {
                let compiled = compile(&circuit, device)?;
                let counts = execute(&compiled, device, shots, derive_seed(seed, self.trace.len() as u64))?;
                counts.index_counts().map(|(z, c)| self.costs[z] * c as f64).sum::<f64>() / shots as f64
            }
        };
        self.trace.push(Evaluation { gamma: x[0], beta: x[1], energy });
        Ok(energy)
    }
}

/// Grid over `gamma in [0, pi)` and `beta in [0, pi/2)`, then at most
/// [`MAX_REFINE_EVALS`] simplex evaluations.
pub fn optimize_qaoa(g: &Graph, penalty: f64, objective: Objective<'_>) -> Result<Optimized> {
    check_penalty(penalty)?;
    let costs = brute_force(g, penalty)?.costs;
    let mut ev = Evaluator { graph: g, penalty, costs, objective, trace: Vec::new() };
    let (dg, db) = (PI / GRID_POINTS as f64, PI / 2.0 / GRID_POINTS as f64);
    let mut best = ([0.0, 0.0], f64::INFINITY);
    for i in 0..GRID_POINTS {
        for j in 0..GRID_POINTS {
            let x = [i as f64 * dg, j as f64 * db];
            let e = ev.eval(x)?;
            if e < best.1 {
                best = (x, e);
            }
        }
    }
    let (x, e) = nelder_mead(|x| ev.eval(x), best, [dg / 2.0, db / 2.0], MAX_REFINE_EVALS, SPREAD_TOL)?;
    if e < best.1 {
        best = (x, e);
    }
    Ok(Optimized {
        params: QaoaParams { gamma: best.0[0], beta: best.0[1], penalty },
        energy: best.1,
        trace: ev.trace,
    })
}

/// Two-dimensional Nelder-Mead minimization from an already evaluated
/// `start`. Stops when the simplex value spread drops below `tol` or after
/// `max_evals` new evaluations. Returns the best vertex.
pub fn nelder_mead(
    mut f: impl FnMut([f64; 2]) -> Result<f64>,
    start: ([f64; 2], f64),
    step: [f64; 2],
    max_evals: usize,
    tol: f64,
) -> Result<([f64; 2], f64)> {
    let mut evals = 0;
    let mut call = |x: [f64; 2], evals: &mut usize| {
        *evals += 1;
        f(x)
    };
    let mut simplex = vec![start];
    for d in 0..2 {
        if evals >= max_evals {
            break;
        }
        let mut x = start.0;
        x[d] += step[d];
        let v = call(x, &mut evals)?;
        simplex.push((x, v));
    }
    if simplex.len() < 3 {
        return Ok(best_of(&simplex));
    }
    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
    while evals < max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if simplex[2].1 - simplex[0].1 < tol {
            break;
        }
        let centroid = lerp(simplex[0].0, simplex[1].0, 0.5);
        let worst = simplex[2];
        let reflected = lerp(centroid, worst.0, -1.0);
        let fr = call(reflected, &mut evals)?;
        if fr < simplex[0].1 {
            if evals >= max_evals {
                simplex[2] = (reflected, fr);
                break;
            }
            let expanded = lerp(centroid, worst.0, -2.0);
            let fe = call(expanded, &mut evals)?;
            simplex[2] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[1].1 {
            simplex[2] = (reflected, fr);
            continue;
        }
        if evals >= max_evals {
            break;
        }
        let (contracted, fc) = if fr < worst.1 {
            let x = lerp(centroid, reflected, 0.5);
            (x, call(x, &mut evals)?)
        } else {
            let x = lerp(centroid, worst.0, 0.5);
            (x, call(x, &mut evals)?)
        };
        if fc < worst.1.min(fr) {
            simplex[2] = (contracted, fc);
            continue;
        }
        for i in 1..3 {
            if evals >= max_evals {
                break;
            }
            let x = lerp(simplex[0].0, simplex[i].0, 0.5);
            simplex[i] = (x, call(x, &mut evals)?);
        }
    }
    Ok(best_of(&simplex))
}

fn best_of(simplex: &[([f64; 2], f64)]) -> ([f64; 2], f64) {
    *simplex.iter().min_by(|a, b| a.1.total_cmp(&b.1)).expect("non-empty simplex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algos::graph::{make_graph, GraphKind};
    use crate::noise::device_preset;

    #[test]
    fn simplex_finds_quadratic_minimum() {
        let f = |x: [f64; 2]| Ok((x[0] - 1.0).powi(2) + 2.0 * (x[1] + 0.5).powi(2));
        let start = ([0.0, 0.0], f([0.0, 0.0]).unwrap());
        let (x, v) = nelder_mead(f, start, [0.3, 0.3], 500, 1e-12).unwrap();
        assert!(v < 1e-8, "{x:?} {v}");
    }

    #[test]
    fn simplex_respects_budget() {
        let mut calls = 0;
        let f = |x: [f64; 2]| {
            calls += 1;
            Ok(x[0].sin() + x[1].cos())
        };
        nelder_mead(f, ([0.0, 0.0], 1.0), [0.1, 0.1], 7, 0.0).unwrap();
        assert!(calls <= 7);
    }

    #[test]
    fn exact_optimization_improves_on_uniform() {
        let g = make_graph(GraphKind::Path { n: 10 }).unwrap();
        let opt = optimize_qaoa(&g, 2.0, Objective::Exact).unwrap();
        let uniform = opt.trace[0].energy;
        assert!(opt.energy < uniform - 0.1, "{} vs {uniform}", opt.energy);
        assert!(opt.trace.len() <= GRID_POINTS * GRID_POINTS + MAX_REFINE_EVALS);
        assert!(opt.trace.iter().all(|e| e.energy >= opt.energy));
    }

    #[test]
    fn sampled_objective_is_deterministic() {
        let g = make_graph(GraphKind::Path { n: 4 }).unwrap();
        let dev = device_preset("IDEAL").unwrap();
        let obj = Objective::Sampled { device: &dev, shots: 50, seed: 9 };
        let a = optimize_qaoa(&g, 2.0, obj).unwrap();
        let b = optimize_qaoa(&g, 2.0, obj).unwrap();
        assert_eq!(a.trace, b.trace);
    }
}
