use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use momkp_solver::{pipeline_stages, run_stage, seeded_pipeline, SolverParams};
use pareto_lens::io::format_set;

use crate::output::{meta_comment, parse_objective_list, write_atomic};

#[derive(Args)]
pub struct SolveArgs {
    /// Instance file to solve.
    #[arg(long)]
    pub instance: PathBuf,

    /// Master seed; stage seeds derive from it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Function-evaluation budget per pipeline stage.
    #[arg(long, default_value_t = 100_000)]
    pub budget: usize,

    /// Population size per stage.
    #[arg(long, default_value_t = 200)]
    pub population: usize,

    /// Crossover probability.
    #[arg(long, default_value_t = 0.9)]
    pub crossover_rate: f64,

    /// Per-bit mutation probability (default 1/n).
    #[arg(long)]
    pub mutation_rate: Option<f64>,

    /// Restrict the pipeline to these objectives (1-based, e.g. `1,3`).
    #[arg(long)]
    pub mask: Option<String>,

    /// Run a single pipeline stage by index (see --list-stages) instead of
    /// the full pipeline. Archive-seeded stages run unseeded in this mode.
    #[arg(long)]
    pub stage: Option<usize>,

    /// Print the stage table for this configuration and exit.
    #[arg(long, default_value_t = false)]
    pub list_stages: bool,

    /// Output approximation-set file (default `<instance-id>-set.csv`).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: SolveArgs) -> Result<()> {
    let inst = momkp::read_instance_file(&args.instance)
        .with_context(|| format!("reading instance {}", args.instance.display()))?;
    let mask = args.mask.as_deref().map(parse_objective_list).transpose()?;
    let active: Vec<usize> = match &mask {
        Some(mask) => mask.clone(),
        None => (0..inst.num_profits()).collect(),
    };
    let params = SolverParams {
        population: args.population,
        evaluations: args.budget,
        crossover_rate: args.crossover_rate,
        mutation_rate: args.mutation_rate.unwrap_or(1.0 / inst.num_items() as f64),
        seed: args.seed,
        objective_mask: mask,
    };

    let stages = pipeline_stages(&active);
    if args.list_stages {
        for stage in &stages {
            println!("{:3}  {}", stage.index, stage.label);
        }
        return Ok(());
    }

    let (set, mode) = match args.stage {
        Some(index) => {
            let Some(stage) = stages.get(index) else {
                bail!("stage {index} out of range; this configuration has {} stages", stages.len());
            };
            let solutions = run_stage(&inst, &active, stage, &params, &[])?;
            let mut archive = momkp_solver::Archive::new();
            archive.merge(solutions);
            let set = archive
                .into_set(momkp_solver::active_specs(&active), inst.instance_id())?;
            (set, format!("stage {index} ({})", stage.label))
        }
        None => (seeded_pipeline(&inst, &params)?, format!("pipeline of {} stages", stages.len())),
    };

    let out = args
        .out
        .unwrap_or_else(|| PathBuf::from(format!("{}-set.csv", inst.instance_id())));
    let header = format!(
        "# {}\n",
        meta_comment(&format!(
            "mode={mode}; seed={}; budget={}/stage; population={}; solutions={}",
            params.seed,
            params.evaluations,
            params.population,
            set.len()
        ))
    );
    write_atomic(&out, &format!("{header}{}", format_set(&set)))?;
    println!("wrote {} ({} solutions)", out.display(), set.len());
    Ok(())
}
