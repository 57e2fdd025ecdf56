use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Subcommand};
use serde_json::{json, Value};

use pareto_lens::correlation::{pairwise_matrix, PairwiseRelation, TauPolicy};
use pareto_lens::ranges::{classify_meaningful, objective_ranges, RangeStats, Reference};
use pareto_lens::regionmap::{
    build_distribution_map, render_region_map_svg, threshold_sweep, RegionMap,
};
use pareto_lens::scatter::{pivot_scatter, render_scatter, spread_scores};
use pareto_lens::ApproximationSet;

use super::ThresholdPolicy;
use crate::output::{emit_json, load_set, meta, meta_comment, write_atomic};

#[derive(Subcommand)]
pub enum AnalyzeCommand {
    /// Step 1: pairwise Kendall correlations and their classification.
    Corr(CorrArgs),
    /// Step 2: per-objective range statistics and meaningfulness.
    Ranges(RangesArgs),
    /// Step 3: Gray-coded region map at a threshold policy.
    Regionmap(RegionmapArgs),
    /// Step 3: threshold sweep curve for one region over many sets.
    Sweep(SweepArgs),
    /// Step 4: normalised pivot scatter plot.
    Scatter(ScatterArgs),
}

#[derive(Args)]
pub struct CorrArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Tie policy: tau-a (plain pair count denominator) or tau-b.
    #[arg(long, default_value = "tau-a", value_parser = parse_policy)]
    pub policy: TauPolicy,
    /// JSON output path (stdout when omitted).
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Optional CSV matrix output.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args)]
pub struct RangesArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Meaningfulness cutoff as a fraction of the reference scale.
    #[arg(long, default_value_t = pareto_lens::ranges::DEFAULT_MEANINGFUL_FRACTION)]
    pub cutoff: f64,
    /// Reference scale: `set-max` or comma-separated ideal values.
    #[arg(long, default_value = "set-max")]
    pub reference: String,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args)]
pub struct RegionmapArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// `min-empty-r0`, `mean` or `fixed:<v>`.
    #[arg(long, default_value = "min-empty-r0")]
    pub threshold_policy: String,
    /// Grid steps for the min-empty-r0 search.
    #[arg(long, default_value_t = 50)]
    pub resolution: usize,
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// SVG rendering (3 to 5 objectives only).
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args)]
pub struct SweepArgs {
    /// Approximation-set files (one curve over all of them).
    #[arg(long, required = true, num_args = 1..)]
    pub input: Vec<PathBuf>,
    /// Number of equal range parts; sweeps alpha-1 interior levels.
    #[arg(long, default_value_t = pareto_lens::regionmap::DEFAULT_SWEEP_ALPHA)]
    pub alpha: usize,
    /// Tracked region number.
    #[arg(long, default_value_t = 0)]
    pub region: usize,
    /// CSV output path (stdout when omitted).
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args)]
pub struct ScatterArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Pivot objective (1-based); auto-chosen by spread score when omitted.
    #[arg(long)]
    pub pivot: Option<usize>,
    /// Output SVG path; a CSV twin is written next to it.
    #[arg(long, default_value = "scatter.svg")]
    pub out: PathBuf,
}

fn parse_policy(raw: &str) -> Result<TauPolicy> {
    match raw {
        "tau-a" => Ok(TauPolicy::TauA),
        "tau-b" => Ok(TauPolicy::TauB),
        other => bail!("unknown tau policy '{other}' (expected tau-a or tau-b)"),
    }
}

pub fn run(cmd: AnalyzeCommand) -> Result<()> {
    match cmd {
        AnalyzeCommand::Corr(args) => {
            let set = load_set(&args.input)?;
            let doc = corr_document(&set, args.policy)?;
            if let Some(csv) = &args.csv {
                write_atomic(csv, &corr_csv(&set, args.policy)?)?;
            }
            emit_json(args.json.as_deref(), &doc)
        }
        AnalyzeCommand::Ranges(args) => {
            let set = load_set(&args.input)?;
            let reference = parse_reference(&args.reference)?;
            let doc = ranges_document(&set, &reference, args.cutoff)?;
            if let Some(csv) = &args.csv {
                write_atomic(csv, &ranges_csv(&set, &reference, args.cutoff)?)?;
            }
            emit_json(args.json.as_deref(), &doc)
        }
        AnalyzeCommand::Regionmap(args) => {
            let set = load_set(&args.input)?;
            let policy = ThresholdPolicy::parse(&args.threshold_policy, args.resolution)?;
            let (map, doc) = regionmap_document(&set, &policy)?;
            if let Some(svg) = &args.svg {
                if (3..=5).contains(&map.m) {
                    let names: Vec<String> =
                        set.specs().iter().map(|s| s.name.clone()).collect();
                    let comment = meta_comment(&format!("instance={}", set.instance_id()));
                    write_atomic(svg, &render_region_map_svg(&map, &names, &comment)?)?;
                } else {
                    // grid layouts exist for 3..=5 objectives; the JSON region
                    // table is the fallback
                    eprintln!(
                        "note: no printable grid for m={}; skipping {} (the JSON carries the region table)",
                        map.m,
                        svg.display()
                    );
                }
            }
            emit_json(args.json.as_deref(), &doc)
        }
        AnalyzeCommand::Sweep(args) => {
            let sets: Vec<ApproximationSet> =
                args.input.iter().map(|p| load_set(p)).collect::<Result<_>>()?;
            let csv = sweep_csv(&sets, args.alpha, args.region)?;
            match &args.csv {
                Some(path) => write_atomic(path, &csv),
                None => {
                    print!("{csv}");
                    Ok(())
                }
            }
        }
        AnalyzeCommand::Scatter(args) => {
            let set = load_set(&args.input)?;
            let (pivot, note) = choose_pivot(&set, args.pivot)?;
            let series = pivot_scatter(&set, pivot)?;
            let comment =
                meta_comment(&format!("instance={}; pivot=Z{}; {note}", set.instance_id(), pivot + 1));
            render_scatter(&series, &args.out, &comment)?;
            println!("wrote {} (pivot Z{}; {note})", args.out.display(), pivot + 1);
            Ok(())
        }
    }
}

pub fn parse_reference(raw: &str) -> Result<Reference> {
    if raw == "set-max" {
        return Ok(Reference::SetMax);
    }
    let scales: Vec<f64> = raw
        .split(',')
        .map(|f| f.trim().parse::<f64>().map_err(|_| anyhow::anyhow!("bad reference value '{f}'")))
        .collect::<Result<_>>()?;
    Ok(Reference::Supplied(scales))
}

/// Picks the pivot: explicit 1-based flag, or the objective with the highest
/// spread score. Warns when the explicit choice has the lowest spread.
pub fn choose_pivot(set: &ApproximationSet, flag: Option<usize>) -> Result<(usize, String)> {
    let scores = spread_scores(set)?;
    let rendered: Vec<String> = scores
        .iter()
        .enumerate()
        .map(|(k, s)| format!("{}={s:.3}", set.specs()[k].name))
        .collect();
    let all_scores = format!("spread_scores[{}]", rendered.join(","));
    match flag {
        Some(z) => {
            if z == 0 || z > set.num_objectives() {
                bail!("pivot {z} out of range (1..={})", set.num_objectives());
            }
            let pivot = z - 1;
            let lowest = scores
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .map(|(k, _)| k)
                .unwrap_or(pivot);
            let note = if pivot == lowest && set.num_objectives() > 1 {
                let warning = format!(
                    "warning: pivot Z{z} has the lowest spread score ({:.3}); the plot may be hard to read",
                    scores[pivot]
                );
                eprintln!("{warning}");
                format!("pivot=flag; {all_scores}; {warning}")
            } else {
                format!("pivot=flag; {all_scores}")
            };
            Ok((pivot, note))
        }
        None => {
            let best = scores
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .map(|(k, _)| k)
                .expect("non-empty objective list");
            Ok((best, format!("pivot=auto; {all_scores}")))
        }
    }
}

pub fn corr_document(set: &ApproximationSet, policy: TauPolicy) -> Result<Value> {
    let pairs = pairwise_matrix(set, policy)?;
    Ok(json!({
        "meta": meta(&[
            ("instance", json!(set.instance_id())),
            ("tau_policy", json!(policy.token())),
            ("solutions", json!(set.len())),
        ]),
        "pairs": pairs.iter().map(|r| pair_json(set, r)).collect::<Vec<_>>(),
    }))
}

fn pair_json(set: &ApproximationSet, r: &PairwiseRelation) -> Value {
    json!({
        "i": r.i + 1,
        "j": r.j + 1,
        "objective_i": set.specs()[r.i].name,
        "objective_j": set.specs()[r.j].name,
        "tau": r.tau,
        "kind": r.kind,
    })
}

pub fn corr_csv(set: &ApproximationSet, policy: TauPolicy) -> Result<String> {
    let pairs = pairwise_matrix(set, policy)?;
    let m = set.num_objectives();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# {}",
        meta_comment(&format!("instance={}; tau_policy={}", set.instance_id(), policy.token()))
    );
    let names: Vec<&str> = set.specs().iter().map(|s| s.name.as_str()).collect();
    let _ = writeln!(out, ",{}", names.join(","));
    let mut matrix = vec![vec![1.0f64; m]; m];
    for r in &pairs {
        matrix[r.i][r.j] = r.tau;
        matrix[r.j][r.i] = r.tau;
    }
    for (k, row) in matrix.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|t| format!("{t:.4}")).collect();
        let _ = writeln!(out, "{},{}", names[k], cells.join(","));
    }
    Ok(out)
}

pub fn ranges_document(
    set: &ApproximationSet,
    reference: &Reference,
    cutoff: f64,
) -> Result<Value> {
    let stats = objective_ranges(set, reference)?;
    let rows: Vec<Value> = stats
        .iter()
        .map(|s| -> Result<Value> {
            let verdict = classify_meaningful(s, cutoff)?;
            Ok(json!({
                "objective": s.objective + 1,
                "name": set.specs()[s.objective].name,
                "min": s.min,
                "max": s.max,
                "mean": s.mean,
                "range": s.range,
                "range_fraction": s.range_fraction,
                "meaningful": verdict.meaningful,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(json!({
        "meta": meta(&[
            ("instance", json!(set.instance_id())),
            ("meaningful_cutoff", json!(cutoff)),
            ("reference", json!(match reference {
                Reference::SetMax => "set-max".to_string(),
                Reference::Supplied(v) => format!("supplied:{v:?}"),
            })),
            ("rule_note", json!("fraction-of-scale rule standing in for domain knowledge")),
        ]),
        "objectives": rows,
    }))
}

pub fn ranges_csv(set: &ApproximationSet, reference: &Reference, cutoff: f64) -> Result<String> {
    let stats: Vec<RangeStats> = objective_ranges(set, reference)?;
    let mut out = String::new();
    let _ = writeln!(out, "# {}", meta_comment(&format!("instance={}", set.instance_id())));
    let _ = writeln!(out, "objective,min,mean,max,range,range_fraction,meaningful");
    for s in &stats {
        let verdict = classify_meaningful(s, cutoff)?;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            set.specs()[s.objective].name,
            s.min,
            s.mean,
            s.max,
            s.range,
            s.range_fraction,
            verdict.meaningful
        );
    }
    Ok(out)
}

pub fn regionmap_document(
    set: &ApproximationSet,
    policy: &ThresholdPolicy,
) -> Result<(RegionMap, Value)> {
    let (thresholds, policy_note) = policy.resolve(set)?;
    let map = build_distribution_map(set, &thresholds)?;
    let percentages = map.percentages();
    let regions: Vec<Value> = (0..map.counts.len())
        .map(|r| {
            json!({
                "region": r,
                "bad_objectives": r.count_ones(),
                "count": map.counts[r],
                "percentage": percentages[r],
            })
        })
        .collect();
    let doc = json!({
        "meta": meta(&[
            ("instance", json!(set.instance_id())),
            ("threshold_policy", json!(policy_note)),
            ("good_rule", json!("strictly better than the threshold")),
        ]),
        "m": map.m,
        "thresholds": map.thresholds.values(),
        "total": map.total,
        "counts": map.counts,
        "percentages": percentages,
        "regions": regions,
    });
    Ok((map, doc))
}

pub fn sweep_csv(sets: &[ApproximationSet], alpha: usize, region: usize) -> Result<String> {
    let curve = threshold_sweep(sets, alpha, region)?;
    let ids: Vec<&str> = sets.iter().map(|s| s.instance_id()).collect();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# {}",
        meta_comment(&format!(
            "alpha={alpha}; region={region}; per-instance min-max normalisation; instances={ids:?}"
        ))
    );
    let _ = writeln!(out, "level,instances_with_r{region}");
    for point in &curve {
        let _ = writeln!(out, "{},{}", point.level, point.instances);
    }
    Ok(out)
}
