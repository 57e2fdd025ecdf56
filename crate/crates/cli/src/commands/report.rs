use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use rayon::prelude::*;
use serde_json::json;

use pareto_lens::correlation::TauPolicy;
use pareto_lens::ranges::Reference;
use pareto_lens::regionmap::{build_frequency_map, render_region_map_svg, RegionMap};
use pareto_lens::scatter::{pivot_scatter, render_scatter};
use pareto_lens::ApproximationSet;

use super::ThresholdPolicy;
use crate::commands::analyze::{
    choose_pivot, corr_csv, corr_document, ranges_csv, ranges_document, regionmap_document,
    sweep_csv,
};
use crate::output::{emit_json, load_set, meta, meta_comment, write_atomic};

#[derive(Args)]
pub struct ReportArgs {
    /// Approximation-set files to analyse.
    #[arg(long, required = true, num_args = 1..)]
    pub input: Vec<PathBuf>,

    /// Report directory.
    #[arg(long, default_value = "report")]
    pub out_dir: PathBuf,

    /// `min-empty-r0`, `mean` or `fixed:<v>`.
    #[arg(long, default_value = "min-empty-r0")]
    pub threshold_policy: String,

    /// Grid steps for the min-empty-r0 threshold search.
    #[arg(long, default_value_t = 50)]
    pub resolution: usize,

    /// Sweep resolution (alpha equal range parts).
    #[arg(long, default_value_t = pareto_lens::regionmap::DEFAULT_SWEEP_ALPHA)]
    pub alpha: usize,

    /// Meaningfulness cutoff fraction.
    #[arg(long, default_value_t = pareto_lens::ranges::DEFAULT_MEANINGFUL_FRACTION)]
    pub cutoff: f64,

    /// Kendall tie policy.
    #[arg(long, default_value = "tau-a")]
    pub tau_policy: String,

    /// Pivot objective (1-based); auto-chosen per input when omitted.
    #[arg(long)]
    pub pivot: Option<usize>,
}

struct InputReport {
    stem: String,
    instance_id: String,
    map: RegionMap,
    pivot_note: String,
}

pub fn run(args: ReportArgs) -> Result<()> {
    let policy = ThresholdPolicy::parse(&args.threshold_policy, args.resolution)?;
    let tau_policy = match args.tau_policy.as_str() {
        "tau-a" => TauPolicy::TauA,
        "tau-b" => TauPolicy::TauB,
        other => anyhow::bail!("unknown tau policy '{other}'"),
    };
    std::fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;

    let sets: Vec<(String, ApproximationSet)> = args
        .input
        .iter()
        .map(|path| {
            let stem = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("set")
                .to_string();
            Ok((stem, load_set(path)?))
        })
        .collect::<Result<_>>()?;

    let reports: Vec<InputReport> = sets
        .par_iter()
        .map(|(stem, set)| write_input_report(&args, stem, set, &policy, tau_policy))
        .collect::<Result<_>>()?;

    // cross-instance artefacts
    let all: Vec<ApproximationSet> = sets.iter().map(|(_, s)| s.clone()).collect();
    write_atomic(
        &args.out_dir.join("sweep.csv"),
        &sweep_csv(&all, args.alpha, 0)?,
    )?;

    if reports.len() > 1 {
        let maps: Vec<RegionMap> = reports.iter().map(|r| r.map.clone()).collect();
        let freq = build_frequency_map(&maps)?;
        let doc = json!({
            "meta": meta(&[
                ("inputs", json!(reports.iter().map(|r| r.stem.clone()).collect::<Vec<_>>())),
                ("threshold_policy", json!(args.threshold_policy)),
            ]),
            "m": freq.m,
            "instance_total": freq.instance_total,
            "counts": freq.counts,
            "percentages": freq.percentages(),
        });
        emit_json(Some(&args.out_dir.join("frequency.json")), &doc)?;
    }

    write_atomic(&args.out_dir.join("index.html"), &index_html(&args, &reports))?;
    println!(
        "report for {} input(s) written to {}",
        reports.len(),
        args.out_dir.display()
    );
    Ok(())
}

fn write_input_report(
    args: &ReportArgs,
    stem: &str,
    set: &ApproximationSet,
    policy: &ThresholdPolicy,
    tau_policy: TauPolicy,
) -> Result<InputReport> {
    let dir = args.out_dir.join(stem);
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;

    emit_json(Some(&dir.join("corr.json")), &corr_document(set, tau_policy)?)?;
    write_atomic(&dir.join("corr.csv"), &corr_csv(set, tau_policy)?)?;

    let reference = Reference::SetMax;
    emit_json(
        Some(&dir.join("ranges.json")),
        &ranges_document(set, &reference, args.cutoff)?,
    )?;
    write_atomic(&dir.join("ranges.csv"), &ranges_csv(set, &reference, args.cutoff)?)?;

    let (map, doc) = regionmap_document(set, policy)?;
    emit_json(Some(&dir.join("regionmap.json")), &doc)?;
    if (3..=5).contains(&map.m) {
        let names: Vec<String> = set.specs().iter().map(|s| s.name.clone()).collect();
        let comment = meta_comment(&format!("instance={}", set.instance_id()));
        write_atomic(&dir.join("regionmap.svg"), &render_region_map_svg(&map, &names, &comment)?)?;
    }

    let (pivot, pivot_note) = choose_pivot(set, args.pivot)?;
    let series = pivot_scatter(set, pivot)?;
    let comment = meta_comment(&format!(
        "instance={}; pivot=Z{}; {pivot_note}",
        set.instance_id(),
        pivot + 1
    ));
    render_scatter(&series, &dir.join("scatter.svg"), &comment)?;

    Ok(InputReport {
        stem: stem.to_string(),
        instance_id: set.instance_id().to_string(),
        map,
        pivot_note,
    })
}

fn index_html(args: &ReportArgs, reports: &[InputReport]) -> String {
    let mut body = String::new();
    let _ = writeln!(body, "<h1>Objective relationship report</h1>");
    let _ = writeln!(
        body,
        "<p>{}</p>",
        meta_comment(&format!(
            "threshold_policy={}; alpha={}; cutoff={}",
            args.threshold_policy, args.alpha, args.cutoff
        ))
    );
    let _ = writeln!(body, "<ul>");
    let _ = writeln!(body, "<li><a href=\"sweep.csv\">threshold sweep (region 0)</a></li>");
    if reports.len() > 1 {
        let _ = writeln!(body, "<li><a href=\"frequency.json\">frequency-of-instances map</a></li>");
    }
    let _ = writeln!(body, "</ul>");
    for r in reports {
        let _ = writeln!(body, "<h2>{} ({})</h2>", r.stem, r.instance_id);
        let _ = writeln!(body, "<p>{}</p>", r.pivot_note);
        let _ = writeln!(body, "<ul>");
        for file in ["corr.json", "corr.csv", "ranges.json", "ranges.csv", "regionmap.json"] {
            let _ = writeln!(body, "<li><a href=\"{0}/{file}\">{file}</a></li>", r.stem);
        }
        if (3..=5).contains(&r.map.m) {
            let _ = writeln!(
                body,
                "<li><a href=\"{0}/regionmap.svg\">regionmap.svg</a></li>",
                r.stem
            );
        }
        let _ = writeln!(body, "<li><a href=\"{0}/scatter.svg\">scatter.svg</a></li>", r.stem);
        let _ = writeln!(body, "<li><a href=\"{0}/scatter.csv\">scatter.csv</a></li>", r.stem);
        let _ = writeln!(body, "</ul>");
    }
    format!(
        "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>pareto-lens report</title></head>\n<body>\n{body}</body></html>\n"
    )
}
