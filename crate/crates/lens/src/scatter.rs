//! Step 4 — pivot scatter plots: one objective on the x axis, every other
//! objective as a y series, all values min-max normalised.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::regionmap::xml_escape;
use crate::set::{normalize, ApproximationSet};

/// Fixed palette indexed by objective number, so an objective keeps its
/// colour regardless of which pivot is chosen.
pub const SERIES_PALETTE: [&str; 10] = [
    "#1F77B4", "#FF7F0E", "#2CA02C", "#D62728", "#9467BD", "#8C564B", "#E377C2", "#7F7F7F",
    "#BCBD22", "#17BECF",
];

/// Points of one non-pivot objective against the pivot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveSeries {
    pub objective: usize,
    /// (pivot value, objective value), both normalised, in solution order.
    pub points: Vec<(f64, f64)>,
}

/// Normalised scatter data for one pivot choice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterSeries {
    pub pivot: usize,
    pub objective_names: Vec<String>,
    /// One series per non-pivot objective, in objective order.
    pub series: Vec<ObjectiveSeries>,
}

/// Projects the normalised set onto (pivot, other) planes. Point order
/// follows solution order.
pub fn pivot_scatter(set: &ApproximationSet, pivot: usize) -> Result<ScatterSeries> {
    let m = set.num_objectives();
    if pivot >= m {
        return Err(Error::argument(format!("pivot {pivot} out of range for m={m}")));
    }
    if set.is_empty() {
        return Err(Error::insufficient("scatter plot needs a non-empty set"));
    }
    let normed = normalize(set)?;
    let series = (0..m)
        .filter(|&k| k != pivot)
        .map(|k| ObjectiveSeries {
            objective: k,
            points: normed
                .solutions()
                .iter()
                .map(|sol| (sol.objectives[pivot], sol.objectives[k]))
                .collect(),
        })
        .collect();
    Ok(ScatterSeries {
        pivot,
        objective_names: set.specs().iter().map(|s| s.name.clone()).collect(),
        series,
    })
}

/// Spread score per objective: the standard deviation of its normalised
/// values. A well-spread pivot avoids plots squeezed into a narrow band, so
/// the highest-scoring objective is the recommended pivot.
pub fn spread_scores(set: &ApproximationSet) -> Result<Vec<f64>> {
    if set.is_empty() {
        return Err(Error::insufficient("spread scores need a non-empty set"));
    }
    let normed = normalize(set)?;
    let n = normed.len() as f64;
    Ok((0..normed.num_objectives())
        .map(|k| {
            let mean = normed.objective_values(k).sum::<f64>() / n;
            let var = normed.objective_values(k).map(|v| (v - mean).powi(2)).sum::<f64>() / n;
            var.sqrt()
        })
        .collect())
}

/// CSV twin of a scatter plot: `series_objective,x,y` with full-precision
/// coordinates, so parsing it back reproduces the series exactly.
pub fn scatter_csv(series: &ScatterSeries, meta_comment: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("# {meta_comment}\n"));
    out.push_str(&format!(
        "# pivot: {} ({})\n",
        series.pivot + 1,
        series.objective_names[series.pivot]
    ));
    out.push_str("series_objective,x,y\n");
    for s in &series.series {
        for &(x, y) in &s.points {
            out.push_str(&format!("{},{x},{y}\n", s.objective + 1));
        }
    }
    out
}

/// Parses a CSV produced by [`scatter_csv`]. Objective names are not stored
/// in the CSV, so generic `Z1..Zm` names are reconstructed.
pub fn parse_scatter_csv(text: &str) -> Result<ScatterSeries> {
    let mut pivot: Option<usize> = None;
    let mut series: Vec<ObjectiveSeries> = Vec::new();
    let mut max_objective = 0usize;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if let Some(rest) = line.strip_prefix("# pivot:") {
            let token = rest.split_whitespace().next().unwrap_or("");
            let p: usize = token.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("bad pivot index '{token}'"),
            })?;
            pivot = Some(p - 1);
            continue;
        }
        if line.starts_with('#') || line == "series_objective,x,y" || line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let (Some(obj), Some(x), Some(y), None) =
            (fields.next(), fields.next(), fields.next(), fields.next())
        else {
            return Err(Error::Parse { line: lineno, message: "expected 3 fields".into() });
        };
        let objective: usize = obj
            .parse::<usize>()
            .map_err(|_| Error::Parse { line: lineno, message: format!("bad objective '{obj}'") })?
            - 1;
        let x: f64 = x
            .parse()
            .map_err(|_| Error::Parse { line: lineno, message: format!("bad x value '{x}'") })?;
        let y: f64 = y
            .parse()
            .map_err(|_| Error::Parse { line: lineno, message: format!("bad y value '{y}'") })?;
        max_objective = max_objective.max(objective);
        match series.last_mut() {
            Some(last) if last.objective == objective => last.points.push((x, y)),
            _ => series.push(ObjectiveSeries { objective, points: vec![(x, y)] }),
        }
    }
    let pivot = pivot.ok_or(Error::Parse { line: 0, message: "missing pivot header".into() })?;
    let m = (max_objective + 1).max(pivot + 1);
    Ok(ScatterSeries {
        pivot,
        objective_names: (1..=m).map(|i| format!("Z{i}")).collect(),
        series,
    })
}

/// Renders the scatter plot as a deterministic SVG: unit axes, one colour per
/// non-pivot objective and a legend naming the objectives.
pub fn render_scatter_svg(series: &ScatterSeries, meta_comment: &str) -> String {
    let size = 480.0;
    let margin = 48.0;
    let legend_width = 130.0;
    let width = size + 2.0 * margin + legend_width;
    let height = size + 2.0 * margin;
    let plot = |x: f64, y: f64| -> (f64, f64) {
        (margin + x * size, margin + (1.0 - y) * size)
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\" font-family=\"sans-serif\">\n"
    ));
    svg.push_str(&format!("<!-- {meta_comment} -->\n"));
    svg.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"#FFFFFF\"/>\n"
    ));
    svg.push_str(&format!(
        "<rect x=\"{margin}\" y=\"{margin}\" width=\"{size}\" height=\"{size}\" fill=\"none\" \
         stroke=\"#000000\" stroke-width=\"1\"/>\n"
    ));
    // axis ticks at 0, 0.5, 1
    for tick in [0.0, 0.5, 1.0] {
        let (tx, _) = plot(tick, 0.0);
        let (_, ty) = plot(0.0, tick);
        svg.push_str(&format!(
            "<text x=\"{tx:.1}\" y=\"{y:.1}\" text-anchor=\"middle\" font-size=\"11\">{tick}</text>\n",
            y = margin + size + 16.0,
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.1}\" y=\"{ty:.1}\" text-anchor=\"end\" font-size=\"11\">{tick}</text>\n",
            x = margin - 6.0,
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{x:.1}\" y=\"{y:.1}\" text-anchor=\"middle\" font-size=\"13\">{name} (normalised)</text>\n",
        x = margin + size / 2.0,
        y = height - 8.0,
        name = xml_escape(&series.objective_names[series.pivot]),
    ));

    for s in &series.series {
        let colour = SERIES_PALETTE[s.objective % SERIES_PALETTE.len()];
        for &(x, y) in &s.points {
            let (px, py) = plot(x, y);
            svg.push_str(&format!(
                "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"2.4\" fill=\"{colour}\" \
                 fill-opacity=\"0.75\"/>\n"
            ));
        }
    }

    // legend
    let lx = margin + size + 18.0;
    let mut ly = margin + 10.0;
    for s in &series.series {
        let colour = SERIES_PALETTE[s.objective % SERIES_PALETTE.len()];
        svg.push_str(&format!(
            "<circle cx=\"{lx:.1}\" cy=\"{y:.1}\" r=\"4\" fill=\"{colour}\"/>\n",
            y = ly - 4.0
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.1}\" y=\"{ly:.1}\" font-size=\"12\">{name}</text>\n",
            x = lx + 10.0,
            name = xml_escape(&series.objective_names[s.objective]),
        ));
        ly += 20.0;
    }
    svg.push_str("</svg>\n");
    svg
}

/// Writes the SVG to `out` and the CSV twin next to it (same stem, `.csv`
/// extension).
pub fn render_scatter(series: &ScatterSeries, out: &Path, meta_comment: &str) -> Result<()> {
    let svg = render_scatter_svg(series, meta_comment);
    let mut f = std::fs::File::create(out)?;
    f.write_all(svg.as_bytes())?;
    let csv_path = out.with_extension("csv");
    let mut f = std::fs::File::create(&csv_path)?;
    f.write_all(scatter_csv(series, meta_comment).as_bytes())?;
    Ok(())
}
