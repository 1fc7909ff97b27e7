use std::path::Path;

use crate::algos::bell::{chsh_circuits, chsh_exact, estimate_chsh, ChshSettings};
use crate::algos::ghz::{ghz_fidelity, ghz_fidelity_exact, make_ghz, parity_angles, parity_circuit};
use crate::algos::graph::make_graph;
use crate::algos::grover::grover_scan;
use crate::algos::optimize::{optimize_qaoa, Objective};
use crate::algos::qaoa::{make_qaoa_circuit, qaoa_metrics};
use crate::algos::qft::{aqft_error, default_input, make_approx_roundtrip, roundtrip_fidelity, MAX_AQFT_QUBITS};
use crate::algos::{Algorithm, BenchmarkResult};
use crate::backend::{compile, exact_distribution, execute};
use crate::error::{Error, Result};
use crate::harness::archive::{Provenance, ResultsArchive};
use crate::harness::config::{BenchmarkSpec, RunConfig};
use crate::noise::DeviceModel;
use crate::rng::{derive_seed, derive_seed_str};
use crate::stats::{median, std_dev};

/// Runs every (benchmark, device) pair of `cfg` in config order. Device file
/// paths resolve against `base_dir`.
///
/// Noise-free devices run once. Noisy devices run `repeats` independently
/// seeded times; each run is archived with a `repeat` extra, followed by a
/// median row whose `err` is the spread across seeds.
pub fn run_experiments(cfg: &RunConfig, base_dir: &Path) -> Result<ResultsArchive> {
    cfg.validate()?;
    let devices = cfg.resolve_devices(base_dir)?;
    let mut rows = Vec::new();
    for (bi, bench) in cfg.benchmarks.iter().enumerate() {
        for dev in &devices {
            let context = format!("{bench} on {}", dev.name);
            let wrap = |e: Error| Error::Task { context: context.clone(), source: Box::new(e) };
            let repeats = cfg.repeats_for(dev);
            let task_key = format!("{bi}/{bench}/{}", dev.name);
            let mut runs = Vec::with_capacity(repeats);
            for rep in 0..repeats {
                let seed = derive_seed_str(cfg.seed, &format!("{task_key}/{rep}"));
                let mut out = run_task(bench, dev, cfg.shots, seed).map_err(wrap)?;
                if repeats > 1 {
                    for r in &mut out {
                        r.extras.insert("repeat".into(), rep.into());
                    }
                }
                runs.push(out);
            }
            if repeats > 1 {
                let aggregate = aggregate(&runs, derive_seed_str(cfg.seed, &task_key));
                rows.extend(runs.into_iter().flatten());
                rows.extend(aggregate);
            } else {
                rows.extend(runs.into_iter().flatten());
            }
        }
    }
    Ok(ResultsArchive { provenance: Provenance::new(cfg.hash()), rows })
}

/// Median over repeats, row by row. Numeric extras are medians too.
fn aggregate(runs: &[Vec<BenchmarkResult>], seed: u64) -> Vec<BenchmarkResult> {
    (0..runs[0].len())
        .map(|i| {
            let column: Vec<&BenchmarkResult> = runs.iter().map(|r| &r[i]).collect();
            let values: Vec<f64> = column.iter().map(|r| r.value).collect();
            let mut row = column[0].clone();
            row.value = median(&values);
            row.err = std_dev(&values);
            row.seed = seed;
            row.extras.remove("repeat");
            for (key, v) in row.extras.iter_mut() {
                if v.is_f64() {
                    let xs: Vec<f64> = column.iter().filter_map(|r| r.extra_f64(key)).collect();
                    *v = median(&xs).into();
                }
            }
            row.extras.insert("aggregate".into(), "median".into());
            row.extras.insert("repeats".into(), runs.len().into());
            row
        })
        .collect()
}

/// One execution of `bench` on `dev`. Circuits inside the task draw from
/// substreams of `seed`.
pub fn run_task(bench: &BenchmarkSpec, dev: &DeviceModel, shots: u64, seed: u64) -> Result<Vec<BenchmarkResult>> {
    match bench {
        BenchmarkSpec::Bell { settings } => {
            let settings = settings.unwrap_or_default();
            run_bell(&settings, dev, shots, seed)
        }
        BenchmarkSpec::Ghz { n } => run_ghz(*n, dev, shots, seed),
        BenchmarkSpec::Qft { n, threshold, input } => {
            let input = input.clone().unwrap_or_else(|| default_input(*n));
            run_qft(*n, *threshold, &input, dev, shots, seed)
        }
        BenchmarkSpec::Grover { marked, .. } => grover_scan(marked, dev, shots, seed),
        BenchmarkSpec::Qaoa { graph, penalty } => {
            let g = make_graph(*graph)?;
            let opt = optimize_qaoa(&g, *penalty, Objective::Exact)?;
            let compiled = compile(&make_qaoa_circuit(&g, &opt.params), dev)?;
            let counts = execute(&compiled, dev, shots, derive_seed(seed, 0))?;
            let m = qaoa_metrics(&counts, &g, *penalty)?;
            Ok(vec![BenchmarkResult::new(Algorithm::Qaoa, &dev.name, g.n_vertices(), "approx_ratio", m.approx_ratio, m.approx_ratio_err)
                .with_run(shots, seed)
                .with_extra("graph", graph.to_string())
                .with_extra("density", g.density())
                .with_extra("penalty", *penalty)
                .with_extra("gamma", opt.params.gamma)
                .with_extra("beta", opt.params.beta)
                .with_extra("optimized_energy", opt.energy)
                .with_extra("evaluations", opt.trace.len())
                .with_extra("c_opt", m.optimum)
                .with_extra("mean_cost", m.mean_cost)
                .with_extra("feasibility", m.feasibility)
                .with_extra("success", m.success)
                .with_extra("mean_hamming", m.mean_hamming)
                .with_extra("hamming_var", m.hamming_var)
                .with_extra("depth", compiled.depth())])
        }
    }
}

fn run_bell(settings: &ChshSettings, dev: &DeviceModel, shots: u64, seed: u64) -> Result<Vec<BenchmarkResult>> {
    let circuits = chsh_circuits(settings);
    let mut tables = Vec::with_capacity(4);
    let mut depth = 0;
    for (i, c) in circuits.iter().enumerate() {
        let compiled = compile(c, dev)?;
        depth = depth.max(compiled.depth());
        tables.push(execute(&compiled, dev, shots, derive_seed(seed, i as u64))?);
    }
    let tables: [_; 4] = tables.try_into().expect("four settings");
    let (s, err) = estimate_chsh(&tables)?;
    Ok(vec![BenchmarkResult::new(Algorithm::Chsh, &dev.name, 2, "S", s, err)
        .with_run(shots, seed)
        .with_extra("S_ideal", chsh_exact(settings)?)
        .with_extra("depth", depth)])
}

/// Noise-free devices use exact outcome distributions, so the ideal
/// fidelity is reported without sampling error.
fn run_ghz(n: usize, dev: &DeviceModel, shots: u64, seed: u64) -> Result<Vec<BenchmarkResult>> {
    let prep = compile(&make_ghz(n)?, dev)?;
    let angles = parity_angles(n);
    let (f, err) = if dev.is_noiseless() {
        let pop = exact_distribution(&prep)?;
        let scans = angles
            .iter()
            .map(|&phi| Ok((phi, exact_distribution(&compile(&parity_circuit(n, phi)?, dev)?)?)))
            .collect::<Result<Vec<_>>>()?;
        (ghz_fidelity_exact(&pop, &scans)?, 0.0)
    } else {
        let pop = execute(&prep, dev, shots, derive_seed(seed, 0))?;
        let scans = angles
            .iter()
            .enumerate()
            .map(|(j, &phi)| {
                let compiled = compile(&parity_circuit(n, phi)?, dev)?;
                Ok((phi, execute(&compiled, dev, shots, derive_seed(seed, j as u64 + 1))?))
            })
            .collect::<Result<Vec<_>>>()?;
        ghz_fidelity(&pop, &scans)?
    };
    Ok(vec![BenchmarkResult::new(Algorithm::Ghz, &dev.name, n, "fidelity", f, err)
        .with_run(shots, seed)
        .with_extra("F_ideal", 1.0)
        .with_extra("exact", dev.is_noiseless())
        .with_extra("depth", prep.depth())])
}

fn run_qft(n: usize, threshold: f64, input: &str, dev: &DeviceModel, shots: u64, seed: u64) -> Result<Vec<BenchmarkResult>> {
    let compiled = compile(&make_approx_roundtrip(n, threshold, input)?, dev)?;
    let counts = execute(&compiled, dev, shots, derive_seed(seed, 0))?;
    let (f, err) = roundtrip_fidelity(&counts, input)?;
    let mut row = BenchmarkResult::new(Algorithm::Qft, &dev.name, n, "roundtrip_fidelity", f, err)
        .with_run(shots, seed)
        .with_extra("F_ideal", 1.0)
        .with_extra("depth", compiled.depth())
        .with_extra("input", input)
        .with_extra("threshold", threshold);
    if n <= MAX_AQFT_QUBITS {
        row = row.with_extra("aqft_error", aqft_error(n, threshold)?);
    }
    Ok(vec![row])
}
