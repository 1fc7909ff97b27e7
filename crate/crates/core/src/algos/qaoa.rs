//! Depth-1 QAOA for minimum vertex cover with a quadratic penalty encoding.
//!
//! A bitstring `z` selects vertex `i` when `z_i = 1`. The cost is
//! `C(z) = sum_i z_i + penalty * sum_{(u,v) in E} (1 - z_u)(1 - z_v)`.

use serde::{Deserialize, Serialize};

use crate::algos::graph::Graph;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::sim::CountsTable;

pub const DEFAULT_PENALTY: f64 = 2.0;

/// Widest graph accepted by exhaustive enumeration.
pub const MAX_BRUTE_FORCE_VERTICES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QaoaParams {
    pub gamma: f64,
    pub beta: f64,
    pub penalty: f64,
}

impl QaoaParams {
    pub fn new(gamma: f64, beta: f64, penalty: f64) -> Result<QaoaParams> {
        if !(gamma.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidParameter("QAOA angles must be finite".into()));
        }
        check_penalty(penalty)?;
        Ok(QaoaParams { gamma, beta, penalty })
    }
}

pub(crate) fn check_penalty(penalty: f64) -> Result<()> {
    if penalty.is_finite() && penalty > 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("penalty must exceed 1, got {penalty}")))
    }
}

/// Cost of the basis state with index `z`.
pub fn cost_of_index(z: usize, g: &Graph, penalty: f64) -> f64 {
    let chosen = (0..g.n_vertices()).filter(|&i| z >> i & 1 == 1).count() as f64;
    let uncovered = g.edges().iter().filter(|&&(u, v)| z >> u & 1 == 0 && z >> v & 1 == 0).count() as f64;
    chosen + penalty * uncovered
}

pub fn mvc_cost(z: &str, g: &Graph, penalty: f64) -> Result<f64> {
    if z.len() != g.n_vertices() {
        return Err(Error::LengthMismatch { expected: g.n_vertices(), got: z.len() });
    }
    Ok(cost_of_index(crate::circuit::bitstring_to_index(z)?, g, penalty))
}

/// Appends `exp(-i gamma C)` up to global phase. Expanding the penalty gives
/// linear weights `1 - penalty * deg(i)` and pairwise weights `penalty`.
pub fn cost_layer(c: &mut Circuit, g: &Graph, gamma: f64, penalty: f64) {
    for (i, d) in g.degrees().into_iter().enumerate() {
        let h = 1.0 - penalty * d as f64;
        c.rz(i, -gamma * h);
    }
    for &(u, v) in g.edges() {
        c.cphase(u, v, -gamma * penalty);
    }
}

pub fn mixer_layer(c: &mut Circuit, beta: f64) {
    for q in 0..c.n_qubits() {
        c.rx(q, 2.0 * beta);
    }
}

pub fn make_qaoa_circuit(g: &Graph, params: &QaoaParams) -> Circuit {
    let mut c = Circuit::new(g.n_vertices());
    for q in 0..g.n_vertices() {
        c.h(q);
    }
    cost_layer(&mut c, g, params.gamma, params.penalty);
    mixer_layer(&mut c, params.beta);
    c
}

/// Exhaustive solution of a cover instance.
#[derive(Clone, Debug, PartialEq)]
pub struct BruteForce {
    pub costs: Vec<f64>,
    pub optimum: f64,
    pub optimal_states: Vec<usize>,
}

pub fn brute_force(g: &Graph, penalty: f64) -> Result<BruteForce> {
    let n = g.n_vertices();
    if n > MAX_BRUTE_FORCE_VERTICES {
        return Err(Error::WidthExceeded { n, max: MAX_BRUTE_FORCE_VERTICES });
    }
    let costs: Vec<f64> = (0..1usize << n).map(|z| cost_of_index(z, g, penalty)).collect();
    let optimum = costs.iter().copied().fold(f64::INFINITY, f64::min);
    let optimal_states = (0..costs.len()).filter(|&z| costs[z] == optimum).collect();
    Ok(BruteForce { costs, optimum, optimal_states })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QaoaMetrics {
    /// `C_opt / <C>` over the sampled distribution.
    pub approx_ratio: f64,
    pub approx_ratio_err: f64,
    pub mean_cost: f64,
    pub optimum: f64,
    /// Fraction of samples that are valid covers.
    pub feasibility: f64,
    /// Fraction of samples that are optimal covers.
    pub success: f64,
    /// Distance to the nearest optimal bitstring.
    pub mean_hamming: f64,
    pub hamming_var: f64,
    pub shots: u64,
}

pub fn qaoa_metrics(counts: &CountsTable, g: &Graph, penalty: f64) -> Result<QaoaMetrics> {
    if counts.n_bits() != g.n_vertices() {
        return Err(Error::LengthMismatch { expected: g.n_vertices(), got: counts.n_bits() });
    }
    let bf = brute_force(g, penalty)?;
    if bf.optimum == 0.0 {
        return Err(Error::UndefinedRatio);
    }
    let shots = counts.shots() as f64;
    let (mut sum_c, mut sum_c2, mut feasible, mut optimal, mut sum_h, mut sum_h2) = (0.0, 0.0, 0u64, 0u64, 0.0, 0.0);
    for (z, count) in counts.index_counts() {
        let w = count as f64;
        let cost = bf.costs[z];
        sum_c += w * cost;
        sum_c2 += w * cost * cost;
        if g.is_cover(z) {
            feasible += count;
        }
        if bf.optimal_states.binary_search(&z).is_ok() {
            optimal += count;
        }
        let h = bf.optimal_states.iter().map(|o| (o ^ z).count_ones()).min().expect("non-empty optimum") as f64;
        sum_h += w * h;
        sum_h2 += w * h * h;
    }
    let mean_cost = sum_c / shots;
    let var_cost = (sum_c2 / shots - mean_cost * mean_cost).max(0.0);
    let mean_hamming = sum_h / shots;
    Ok(QaoaMetrics {
        approx_ratio: bf.optimum / mean_cost,
        approx_ratio_err: bf.optimum / (mean_cost * mean_cost) * (var_cost / shots).sqrt(),
        mean_cost,
        optimum: bf.optimum,
        feasibility: feasible as f64 / shots,
        success: optimal as f64 / shots,
        mean_hamming,
        hamming_var: (sum_h2 / shots - mean_hamming * mean_hamming).max(0.0),
        shots: counts.shots(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algos::graph::{make_graph, GraphKind};
    use crate::sim::run;

    fn path(n: usize) -> Graph {
        make_graph(GraphKind::Path { n }).unwrap()
    }

    #[test]
    fn cost_examples() {
        let p = path(10);
        assert_eq!(mvc_cost("0101010101", &p, 2.0).unwrap(), 5.0);
        assert_eq!(mvc_cost("0000000000", &p, 2.0).unwrap(), 18.0);
        let k = make_graph(GraphKind::CompleteBipartite { a: 5, b: 5 }).unwrap();
        assert_eq!(mvc_cost("1111100000", &k, 2.0).unwrap(), 5.0);
        assert!(mvc_cost("01", &p, 2.0).is_err());
    }

    #[test]
    fn optimum_matches_minimum_cover() {
        assert_eq!(brute_force(&path(10), 2.0).unwrap().optimum, 5.0);
        let k = make_graph(GraphKind::CompleteBipartite { a: 5, b: 5 }).unwrap();
        let bf = brute_force(&k, 2.0).unwrap();
        assert_eq!(bf.optimum, 5.0);
        assert_eq!(bf.optimal_states, vec![0b00000_11111, 0b11111_00000]);
    }

    #[test]
    fn cost_layer_phases() {
        let g = path(3);
        let gamma = 0.83;
        for z in 0..8usize {
            let mut c = Circuit::new(3);
            for q in 0..3 {
                if z >> q & 1 == 1 {
                    c.x(q);
                }
            }
            cost_layer(&mut c, &g, gamma, 2.0);
            let amp = run(&c).unwrap().amplitudes()[z];
            // Global phase fixed by the all-zeros state.
            let mut zero = Circuit::new(3);
            cost_layer(&mut zero, &g, gamma, 2.0);
            let ref_phase = run(&zero).unwrap().amplitudes()[0].arg() + gamma * cost_of_index(0, &g, 2.0);
            let expected = num_complex::Complex64::from_polar(1.0, ref_phase - gamma * cost_of_index(z, &g, 2.0));
            assert!((amp - expected).norm() < 1e-9, "z={z}");
        }
    }

    #[test]
    fn zero_angles_give_uniform_expectation() {
        let g = path(6);
        let bf = brute_force(&g, 2.0).unwrap();
        let uniform = bf.costs.iter().sum::<f64>() / bf.costs.len() as f64;
        for beta in [0.0, std::f64::consts::FRAC_PI_2] {
            let sv = run(&make_qaoa_circuit(&g, &QaoaParams::new(0.0, beta, 2.0).unwrap())).unwrap();
            let e = sv.expectation_diagonal(|z| bf.costs[z]);
            assert!((e - uniform).abs() < 1e-9);
        }
    }

    #[test]
    fn optimal_counts_metrics() {
        let k = make_graph(GraphKind::CompleteBipartite { a: 5, b: 5 }).unwrap();
        let m = qaoa_metrics(&CountsTable::single("1111100000", 100).unwrap(), &k, 2.0).unwrap();
        assert_eq!((m.approx_ratio, m.feasibility, m.success, m.mean_hamming), (1.0, 1.0, 1.0, 0.0));
        assert_eq!(m.approx_ratio_err, 0.0);
    }

    #[test]
    fn penalty_must_dominate() {
        assert!(QaoaParams::new(0.1, 0.1, 1.0).is_err());
        assert!(QaoaParams::new(f64::NAN, 0.1, 2.0).is_err());
    }
}
