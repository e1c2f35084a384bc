use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use causal_subset::brute::{cost_bruteforce, nu1_bruteforce, nuk_bruteforce, OracleBudget};
use causal_subset::experiment::{run_experiment1, run_experiment2, write_exp1_csv, write_exp2_csv, Algo, ExperimentConfig};
use causal_subset::generate::{generate_synthetic, lower_bound_instance};
use causal_subset::io::{read_dag, read_nodes, read_stab, read_targets, read_weights, targets_to_text};
use causal_subset::orientation::recover_interventions;
use causal_subset::search::{
    induced_edges, r_hop_neighborhood, random_search_baseline, subset_search, subset_search_until, HonestOracle,
    SearchTranscript,
};
use causal_subset::stabbing::{solve, solve_bruteforce, PreparedInstance};
use causal_subset::verification::{atomic_verifying_set, CostParams, InterventionSet, Verifier};
use causal_subset::{Dag, TargetEdges};

#[derive(Parser)]
#[command(name = "causal-subset", version, about = "Subset verification and subset search for causal DAGs")]
struct Cli {
    /// Master random seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic DAG, or the lower-bound instance.
    Gen(GenArgs),
    /// Compute a minimum verifying set for target edges.
    Verify(VerifyArgs),
    /// Exhaustive reference solver with the same flags as `verify`.
    Oracle(VerifyArgs),
    /// Minimum-cost interval stabbing on a rooted tree.
    Stab(StabArgs),
    /// Adaptively orient the subgraph induced by a node set.
    Search(SearchArgs),
    /// Verification numbers for random target subsets.
    Exp1(ExpArgs),
    /// Intervention counts for local discovery around a random node.
    Exp2(ExpArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Number of vertices.
    #[arg(long, required_unless_present = "lower_bound")]
    n: Option<usize>,
    /// Edge probability.
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    /// Emit the clique-with-pendants instance on `2 * N` vertices instead.
    #[arg(long, value_name = "N", conflicts_with = "n")]
    lower_bound: Option<usize>,
    /// Also write the target edges (all edges, or the pendants).
    #[arg(long)]
    targets_out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Target edges; all edges when omitted.
    #[arg(long)]
    targets: Option<PathBuf>,
    /// Largest intervention size.
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Weight of the vertex-cost term; enables the additive objective.
    #[arg(long)]
    alpha: Option<f64>,
    /// Cost per intervention; enables the additive objective.
    #[arg(long)]
    beta: Option<f64>,
    /// Vertex costs; enables the additive objective.
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Also print the resulting interventional essential graph.
    #[arg(long)]
    certificate: bool,
}

#[derive(Args)]
struct StabArgs {
    #[arg(long)]
    input: PathBuf,
    /// Use exhaustive search instead of the dynamic program.
    #[arg(long)]
    brute: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Ground-truth DAG answering the interventions.
    #[arg(long)]
    graph: PathBuf,
    /// Hop radius around `--target-node`.
    #[arg(long, requires = "target_node", conflicts_with = "nodes")]
    hop: Option<usize>,
    #[arg(long, requires = "hop")]
    target_node: Option<usize>,
    /// File listing the node set.
    #[arg(long, required_unless_present = "hop")]
    nodes: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value = "subsetsearch")]
    algo: Algo,
}

#[derive(Args)]
struct ExpArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [10, 20, 30, 40, 50])]
    n_list: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [0.03, 0.1, 0.3])]
    p_list: Vec<f64>,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Target-edge fractions (exp1).
    #[arg(long, value_delimiter = ',', default_values_t = [0.3, 0.5, 0.7, 1.0])]
    fracs: Vec<f64>,
    /// Hop radius (exp2).
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Algorithms (exp2).
    #[arg(long, value_delimiter = ',', default_values_t = Algo::ALL.to_vec())]
    algos: Vec<Algo>,
}

impl ExpArgs {
    fn config(self, seed: u64) -> ExperimentConfig {
        ExperimentConfig {
            n_list: self.n_list,
            p_list: self.p_list,
            trials: self.trials,
            frac_list: self.fracs,
            r: self.r,
            algos: self.algos,
            seed,
        }
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn format_set(set: &InterventionSet) -> String {
    let parts: Vec<String> = set
        .iter()
        .map(|s| {
            let vs: Vec<String> = s.iter().map(usize::to_string).collect();
            format!("{{{}}}", vs.join(","))
        })
        .collect();
    format!("[{}]", parts.join(" "))
}

fn load_instance(a: &VerifyArgs) -> Result<(Dag, TargetEdges)> {
    let g = read_dag(&a.graph).with_context(|| format!("reading {}", a.graph.display()))?;
    let t = match &a.targets {
        Some(p) => read_targets(p, &g).with_context(|| format!("reading {}", p.display()))?,
        None => g.all_edges(),
    };
    Ok((g, t))
}

fn cost_params(a: &VerifyArgs, n: usize) -> Result<Option<CostParams>> {
    if a.alpha.is_none() && a.beta.is_none() && a.weights.is_none() {
        return Ok(None);
    }
    let costs = match &a.weights {
        Some(p) => read_weights(p, n).with_context(|| format!("reading {}", p.display()))?,
        None => vec![1.0; n],
    };
    Ok(Some(CostParams::new(a.alpha.unwrap_or(1.0), a.beta.unwrap_or(0.0), costs)?))
}

fn report_set(out: &mut dyn Write, g: &Dag, set: &InterventionSet, params: Option<&CostParams>, certificate: bool) -> Result<()> {
    writeln!(out, "interventions: {}", format_set(set))?;
    writeln!(out, "size: {}", set.len())?;
    if let Some(c) = params {
        writeln!(out, "objective: {}", c.objective(set))?;
    }
    if certificate {
        write!(out, "{}", recover_interventions(g, set.as_slice()).closure.to_annotated_text())?;
    }
    Ok(())
}

fn run_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<()> {
    let (g, t) = load_instance(a)?;
    let params = cost_params(a, g.n())?;
    let v = Verifier::new(&g);
    let set = match (&params, a.k) {
        (Some(c), k) => v.cost(&t, k, c)?,
        (None, 1) => v.atomic(&t)?,
        (None, k) => v.bounded(&t, k)?,
    };
    report_set(out, &g, &set, params.as_ref(), a.certificate)
}

fn run_oracle(a: &VerifyArgs, out: &mut dyn Write) -> Result<()> {
    let (g, t) = load_instance(a)?;
    let params = cost_params(a, g.n())?;
    let set = match (&params, a.k) {
        (Some(c), k) => cost_bruteforce(&g, &t, k, c, &OracleBudget::bounded())?.1,
        (None, 1) => nu1_bruteforce(&g, &t, &OracleBudget::atomic())?.1,
        (None, k) => nuk_bruteforce(&g, &t, k, &OracleBudget::bounded())?.1,
    };
    report_set(out, &g, &set, params.as_ref(), a.certificate)
}

fn run_gen(a: &GenArgs, seed: u64, out: &mut dyn Write) -> Result<()> {
    let (g, t) = match (a.lower_bound, a.n) {
        (Some(m), _) => lower_bound_instance(m)?,
        (None, Some(n)) => {
            let g = generate_synthetic(n, a.p, seed)?;
            let t = g.all_edges();
            (g, t)
        }
        (None, None) => bail!("either --n or --lower-bound is required"),
    };
    write!(out, "{}", g.to_dag_text())?;
    if let Some(p) = &a.targets_out {
        std::fs::write(p, targets_to_text(&t)).with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(())
}

fn run_stab(a: &StabArgs, out: &mut dyn Write) -> Result<()> {
    let f = read_stab(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let sol = if a.brute {
        solve_bruteforce(&f.tree, &f.intervals, None)?
    } else {
        solve(&PreparedInstance::new(f.tree, &f.intervals, None)?)
    };
    let vs: Vec<String> = sol.stab.iter().map(usize::to_string).collect();
    writeln!(out, "cost: {}", sol.cost)?;
    writeln!(out, "stab: {}", vs.join(" "))?;
    Ok(())
}

fn write_rounds(out: &mut dyn Write, tr: &SearchTranscript) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(["round", "interventions", "newly_oriented", "cumulative_interventions"])?;
    let mut total = 0;
    for round in 1..=tr.rounds {
        let steps: Vec<_> = tr.steps.iter().filter(|s| s.round == round).collect();
        total += steps.len();
        let newly: usize = steps.iter().map(|s| s.newly_oriented.len()).sum();
        w.write_record([round, steps.len(), newly, total].map(|x| x.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

fn run_search(a: &SearchArgs, seed: u64, out: &mut dyn Write) -> Result<()> {
    let g = read_dag(&a.graph).with_context(|| format!("reading {}", a.graph.display()))?;
    let h = match (&a.nodes, a.hop, a.target_node) {
        (Some(p), _, _) => read_nodes(p, g.n()).with_context(|| format!("reading {}", p.display()))?,
        (None, Some(r), Some(v)) => {
            if v >= g.n() {
                bail!("target node {v} out of range for graph on {} vertices", g.n());
            }
            r_hop_neighborhood(&g, v, r)
        }
        _ => bail!("either --nodes or --hop with --target-node is required"),
    };
    let t = induced_edges(&g, &h);
    let mut oracle = HonestOracle::new(g.clone());
    let tr = match a.algo {
        Algo::SubsetSearch => subset_search(&mut oracle, &h, a.k)?,
        Algo::FullSearch => {
            let all: Vec<usize> = (0..g.n()).collect();
            subset_search_until(&mut oracle, &all, a.k, Some(&t))?
        }
        Algo::Random => {
            if a.k != 1 {
                bail!("the random baseline only makes atomic interventions");
            }
            random_search_baseline(&mut oracle, &t, seed)?
        }
    };
    let nu1 = atomic_verifying_set(&g, &t)?.len();
    let oriented = t.iter().all(|(u, v)| tr.final_graph.has_arc(u, v) == g.has_arc(u, v));
    eprintln!(
        "{}: |H| = {}, {} target edges, {} interventions in {} rounds, nu1 = {}, recovered = {}",
        a.algo,
        h.len(),
        t.len(),
        tr.total_interventions(),
        tr.rounds,
        nu1,
        oriented,
    );
    write_rounds(out, &tr)
}

fn run(cli: Cli) -> Result<()> {
    let mut out = output(cli.out.as_deref())?;
    let out = out.as_mut();
    match cli.command {
        Command::Gen(a) => run_gen(&a, cli.seed, out)?,
        Command::Verify(a) => run_verify(&a, out)?,
        Command::Oracle(a) => run_oracle(&a, out)?,
        Command::Stab(a) => run_stab(&a, out)?,
        Command::Search(a) => run_search(&a, cli.seed, out)?,
        Command::Exp1(a) => write_exp1_csv(&mut *out, &run_experiment1(&a.config(cli.seed))?)?,
        Command::Exp2(a) => write_exp2_csv(&mut *out, &run_experiment2(&a.config(cli.seed))?)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = e
                .chain()
                .any(|c| c.downcast_ref::<causal_subset::Error>().is_some_and(|e| e.is_budget()));
            ExitCode::from(if budget { 2 } else { 1 })
        }
    }
}
