//! The two synthetic-graph experiments and their CSV output.
//!
//! Every row stores the seed its graph was generated from. Target sampling
//! and search randomness are drawn from further streams of the same seed, so
//! any row can be recomputed on its own.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generate::generate_synthetic;
use crate::graph::TargetEdges;
use crate::search::{induced_edges, r_hop_neighborhood, random_search_baseline, subset_search, subset_search_until, HonestOracle};
use crate::verification::Verifier;

pub const EXP1_HEADER: [&str; 8] = ["n", "p", "seed", "m", "frac", "t_size", "nu1_subset", "nu1_full"];
pub const EXP2_HEADER: [&str; 9] = [
    "n",
    "p",
    "seed",
    "r",
    "target_node",
    "algo",
    "interventions",
    "nu1_full",
    "nu1_subset",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algo {
    SubsetSearch,
    Random,
    FullSearch,
}

impl Algo {
    pub const ALL: [Algo; 3] = [Algo::SubsetSearch, Algo::Random, Algo::FullSearch];
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algo::SubsetSearch => "subsetsearch",
            Algo::Random => "random",
            Algo::FullSearch => "fullsearch",
        })
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subsetsearch" => Ok(Algo::SubsetSearch),
            "random" => Ok(Algo::Random),
            "fullsearch" => Ok(Algo::FullSearch),
            _ => Err(Error::InvalidInput(format!("unknown algorithm {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub n_list: Vec<usize>,
    pub p_list: Vec<f64>,
    pub trials: usize,
    pub frac_list: Vec<f64>,
    pub r: usize,
    pub algos: Vec<Algo>,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            n_list: vec![10, 20, 30, 40, 50],
            p_list: vec![0.03, 0.1, 0.3],
            trials: 20,
            frac_list: vec![0.3, 0.5, 0.7, 1.0],
            r: 1,
            algos: Algo::ALL.to_vec(),
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidInput(m.into()));
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.n_list.is_empty() || self.n_list.contains(&0) {
            return bad("vertex counts must be nonempty and positive");
        }
        if self.p_list.is_empty() || self.p_list.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return bad("edge probabilities must lie in [0, 1]");
        }
        if self.frac_list.iter().any(|&f| !(f > 0.0 && f <= 1.0)) {
            return bad("fractions must lie in (0, 1]");
        }
        if self.r == 0 {
            return bad("hop radius must be at least 1");
        }
        Ok(())
    }

    /// `(n, p index, trial)` in output order.
    fn tasks(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for &n in &self.n_list {
            for pi in 0..self.p_list.len() {
                for t in 0..self.trials {
                    out.push((n, pi, t));
                }
            }
        }
        out
    }

    /// Graph seed for one trial.
    pub fn trial_seed(&self, n: usize, p_index: usize, trial: usize) -> u64 {
        let mut x = self.seed;
        for v in [n as u64, p_index as u64, trial as u64] {
            x = splitmix64(x ^ v);
        }
        x
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn stream(seed: u64, s: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(s);
    rng
}

#[derive(Clone, Debug, PartialEq)]
pub struct Exp1Row {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub m: usize,
    pub frac: f64,
    pub t_size: usize,
    pub nu1_subset: usize,
    pub nu1_full: usize,
}

impl Exp1Row {
    pub fn record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.p.to_string(),
            self.seed.to_string(),
            self.m.to_string(),
            self.frac.to_string(),
            self.t_size.to_string(),
            self.nu1_subset.to_string(),
            self.nu1_full.to_string(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Exp2Row {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub r: usize,
    pub target_node: usize,
    pub algo: Algo,
    pub interventions: usize,
    pub nu1_full: usize,
    pub nu1_subset: usize,
}

impl Exp2Row {
    pub fn record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.p.to_string(),
            self.seed.to_string(),
            self.r.to_string(),
            self.target_node.to_string(),
            self.algo.to_string(),
            self.interventions.to_string(),
            self.nu1_full.to_string(),
            self.nu1_subset.to_string(),
        ]
    }
}

/// Rows of one experiment-1 trial. Targets for every fraction are prefixes
/// of one shuffled edge list, so they are nested.
pub fn experiment1_trial(n: usize, p: f64, seed: u64, fracs: &[f64]) -> Result<Vec<Exp1Row>> {
    let g = generate_synthetic(n, p, seed)?;
    let mut edges: Vec<(usize, usize)> = g.arcs().collect();
    edges.shuffle(&mut stream(seed, 1));
    let m = edges.len();
    let verifier = Verifier::new(&g);
    let nu1_full = verifier.atomic(&g.all_edges())?.len();
    fracs
        .iter()
        .map(|&frac| {
            let size = ((frac * m as f64).round() as usize).min(m);
            let t: TargetEdges = edges[..size].iter().copied().collect();
            Ok(Exp1Row {
                n,
                p,
                seed,
                m,
                frac,
                t_size: size,
                nu1_subset: verifier.atomic(&t)?.len(),
                nu1_full,
            })
        })
        .collect()
}

/// Rows of one experiment-2 trial, one per algorithm.
pub fn experiment2_trial(n: usize, p: f64, seed: u64, r: usize, algos: &[Algo]) -> Result<Vec<Exp2Row>> {
    let g = generate_synthetic(n, p, seed)?;
    let v = stream(seed, 1).gen_range(0..n);
    let h = r_hop_neighborhood(&g, v, r);
    let t = induced_edges(&g, &h);
    let all: Vec<usize> = (0..n).collect();
    let verifier = Verifier::new(&g);
    let nu1_full = verifier.atomic(&g.all_edges())?.len();
    let nu1_subset = verifier.atomic(&t)?.len();
    algos
        .iter()
        .map(|&algo| {
            let mut oracle = HonestOracle::new(g.clone());
            let transcript = match algo {
                Algo::SubsetSearch => subset_search(&mut oracle, &h, 1)?,
                Algo::Random => random_search_baseline(&mut oracle, &t, stream(seed, 2).gen())?,
                Algo::FullSearch => subset_search_until(&mut oracle, &all, 1, Some(&t))?,
            };
            if t.iter().any(|(a, b)| transcript.final_graph.is_undirected(a, b)) {
                return Err(Error::Protocol(format!("{algo} left a target edge unoriented")));
            }
            Ok(Exp2Row {
                n,
                p,
                seed,
                r,
                target_node: v,
                algo,
                interventions: transcript.total_interventions(),
                nu1_full,
                nu1_subset,
            })
        })
        .collect()
}

/// Experiment 1 over the whole grid, in `(n, p, trial, fraction)` order.
pub fn run_experiment1(cfg: &ExperimentConfig) -> Result<Vec<Exp1Row>> {
    cfg.validate()?;
    let chunks: Vec<Vec<Exp1Row>> = cfg
        .tasks()
        .into_par_iter()
        .map(|(n, pi, t)| experiment1_trial(n, cfg.p_list[pi], cfg.trial_seed(n, pi, t), &cfg.frac_list))
        .collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

/// Experiment 2 over the whole grid, in `(n, p, trial, algorithm)` order.
pub fn run_experiment2(cfg: &ExperimentConfig) -> Result<Vec<Exp2Row>> {
    cfg.validate()?;
    let chunks: Vec<Vec<Exp2Row>> = cfg
        .tasks()
        .into_par_iter()
        .map(|(n, pi, t)| experiment2_trial(n, cfg.p_list[pi], cfg.trial_seed(n, pi, t), cfg.r, &cfg.algos))
        .collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

fn write_rows<W: Write>(out: W, header: &[&str], records: impl Iterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(header)?;
    for rec in records {
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_exp1_csv<W: Write>(out: W, rows: &[Exp1Row]) -> Result<()> {
    write_rows(out, &EXP1_HEADER, rows.iter().map(Exp1Row::record))
}

pub fn write_exp2_csv<W: Write>(out: W, rows: &[Exp2Row]) -> Result<()> {
    write_rows(out, &EXP2_HEADER, rows.iter().map(Exp2Row::record))
}
