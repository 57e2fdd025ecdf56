//! Step 3 — Gray-coded trade-off region maps: region indexing, distribution
//! and frequency-of-instances maps, threshold sweeps and derived threshold
//! statistics.
//!
//! A region map partitions objective space into 2^m cells, one per good/bad
//! pattern across the m objectives. Bit k of a region number is 0 when
//! objective k is good and 1 when it is bad, with bit 0 holding the first
//! objective. Region 0 therefore collects solutions that are good everywhere
//! and region 2^m−1 those that are bad everywhere.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::{ObjectiveSpec, ObjectiveVector, Sense};
use crate::set::ApproximationSet;

/// Largest objective count for which dense 2^m region counts are built.
pub const MAX_REGION_OBJECTIVES: usize = 20;

/// One quality threshold per objective.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdVector(Vec<f64>);

impl ThresholdVector {
    pub fn new(thresholds: Vec<f64>) -> Result<Self> {
        if thresholds.is_empty() {
            return Err(Error::argument("threshold vector must not be empty"));
        }
        if let Some(t) = thresholds.iter().find(|t| !t.is_finite()) {
            return Err(Error::argument(format!("non-finite threshold {t}")));
        }
        Ok(ThresholdVector(thresholds))
    }

    /// The same threshold for every one of `m` objectives.
    pub fn uniform(t: f64, m: usize) -> Result<Self> {
        ThresholdVector::new(vec![t; m])
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Region number of a solution: bit k is 0 iff objective k is good, i.e.
/// strictly above its threshold for a maximise objective and strictly below
/// for a minimise objective. A value equal to the threshold counts as bad.
pub fn region_index(
    v: &ObjectiveVector,
    thresholds: &ThresholdVector,
    specs: &[ObjectiveSpec],
) -> Result<usize> {
    if v.len() != specs.len() {
        return Err(Error::DimensionMismatch { expected: specs.len(), got: v.len() });
    }
    if thresholds.len() != specs.len() {
        return Err(Error::DimensionMismatch { expected: specs.len(), got: thresholds.len() });
    }
    if specs.len() > MAX_REGION_OBJECTIVES {
        return Err(Error::UnsupportedArity {
            m: specs.len(),
            reason: format!("region indices are dense; at most {MAX_REGION_OBJECTIVES} objectives"),
        });
    }
    Ok(region_index_unchecked(v.values(), thresholds.values(), specs))
}

#[inline]
fn region_index_unchecked(values: &[f64], thresholds: &[f64], specs: &[ObjectiveSpec]) -> usize {
    let mut region = 0usize;
    for (k, spec) in specs.iter().enumerate() {
        let good = match spec.sense {
            Sense::Maximise => values[k] > thresholds[k],
            Sense::Minimise => values[k] < thresholds[k],
        };
        if !good {
            region |= 1 << k;
        }
    }
    region
}

/// Number of bad objectives encoded in a region number.
#[inline]
pub fn region_popcount(region: usize) -> u32 {
    region.count_ones()
}

/// Solution counts per region for one approximation set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionMap {
    pub m: usize,
    pub thresholds: ThresholdVector,
    /// counts[k] = solutions whose region number is k; length 2^m.
    pub counts: Vec<u64>,
    pub total: u64,
}

impl RegionMap {
    /// Per-region share of solutions; sums to 1.
    pub fn percentages(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64 / self.total as f64).collect()
    }
}

/// Counts the solutions of `set` per region under the given thresholds.
pub fn build_distribution_map(
    set: &ApproximationSet,
    thresholds: &ThresholdVector,
) -> Result<RegionMap> {
    if set.is_empty() {
        return Err(Error::insufficient("region map needs a non-empty set"));
    }
    let m = set.num_objectives();
    if thresholds.len() != m {
        return Err(Error::DimensionMismatch { expected: m, got: thresholds.len() });
    }
    if m > MAX_REGION_OBJECTIVES {
        return Err(Error::UnsupportedArity {
            m,
            reason: format!("region counts are dense; at most {MAX_REGION_OBJECTIVES} objectives"),
        });
    }
    let mut counts = vec![0u64; 1 << m];
    for sol in set.solutions() {
        counts[region_index_unchecked(sol.objectives.values(), thresholds.values(), set.specs())] +=
            1;
    }
    Ok(RegionMap { m, thresholds: thresholds.clone(), counts, total: set.len() as u64 })
}

/// Per-region instance coverage: how many of the input maps have at least one
/// solution in each region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyMap {
    pub m: usize,
    /// counts[k] = input maps with counts[k] > 0.
    pub counts: Vec<u64>,
    pub instance_total: u64,
}

impl FrequencyMap {
    pub fn percentages(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64 / self.instance_total as f64).collect()
    }
}

/// Builds the frequency-of-instances map from per-instance region maps.
pub fn build_frequency_map(maps: &[RegionMap]) -> Result<FrequencyMap> {
    let first = maps
        .first()
        .ok_or_else(|| Error::insufficient("frequency map needs at least one region map"))?;
    let m = first.m;
    if let Some(bad) = maps.iter().find(|map| map.m != m) {
        return Err(Error::argument(format!(
            "mixed objective counts in frequency map: {} vs {m}",
            bad.m
        )));
    }
    let mut counts = vec![0u64; 1 << m];
    for map in maps {
        for (k, &c) in map.counts.iter().enumerate() {
            if c > 0 {
                counts[k] += 1;
            }
        }
    }
    Ok(FrequencyMap { m, counts, instance_total: maps.len() as u64 })
}

// ---------------------------------------------------------------------------
// Printable Gray-code grid layouts
// ---------------------------------------------------------------------------

/// One printable 2-D block of the layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutBlock {
    /// For split layouts, whether this block is the bad half of the split
    /// objective.
    pub block_bad: bool,
    /// grid[row][col] = region number.
    pub grid: Vec<Vec<usize>>,
}

/// Printable arrangement of region numbers for 3, 4 or 5 objectives.
///
/// Columns run through the 2-bit Gray sequence of (objective 2, objective 1)
/// and rows through (objective 4, objective 3); five-objective layouts split
/// on objective 5 into two side-by-side blocks. Edge-adjacent cells (with
/// wrap-around, and across blocks at the same position) differ in exactly one
/// bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrayLayout {
    pub m: usize,
    /// Objective index split across blocks (m = 5 only).
    pub block_objective: Option<usize>,
    pub blocks: Vec<LayoutBlock>,
}

const GRAY2: [usize; 4] = [0b00, 0b01, 0b11, 0b10];

/// Returns the printable grid for `m` objectives. Analysis operations work
/// for any m; only this 2-D arrangement is limited to 3..=5 objectives.
pub fn gray_layout(m: usize) -> Result<GrayLayout> {
    let base: Vec<Vec<usize>> = match m {
        3 => (0..2).map(|r| GRAY2.iter().map(|&c| (r << 2) | c).collect()).collect(),
        4 | 5 => GRAY2.iter().map(|&r| GRAY2.iter().map(|&c| (r << 2) | c).collect()).collect(),
        _ => {
            return Err(Error::UnsupportedArity {
                m,
                reason: "printable region-map layouts exist for 3, 4 or 5 objectives".into(),
            })
        }
    };
    let blocks = if m == 5 {
        let shifted =
            base.iter().map(|row| row.iter().map(|&r| r | 0b10000).collect()).collect();
        vec![
            LayoutBlock { block_bad: false, grid: base },
            LayoutBlock { block_bad: true, grid: shifted },
        ]
    } else {
        vec![LayoutBlock { block_bad: false, grid: base }]
    };
    Ok(GrayLayout { m, block_objective: if m == 5 { Some(4) } else { None }, blocks })
}

impl GrayLayout {
    pub fn rows(&self) -> usize {
        self.blocks[0].grid.len()
    }

    pub fn cols(&self) -> usize {
        self.blocks[0].grid[0].len()
    }

    /// (block, row, col) of a region number.
    pub fn position(&self, region: usize) -> Option<(usize, usize, usize)> {
        for (b, block) in self.blocks.iter().enumerate() {
            for (r, row) in block.grid.iter().enumerate() {
                for (c, &cell) in row.iter().enumerate() {
                    if cell == region {
                        return Some((b, r, c));
                    }
                }
            }
        }
        None
    }

    /// Edge-adjacent regions of `region`, including wrap-around within a
    /// block and the same position in the other block for split layouts.
    pub fn neighbours(&self, region: usize) -> Vec<usize> {
        let Some((b, r, c)) = self.position(region) else {
            return Vec::new();
        };
        let rows = self.rows();
        let cols = self.cols();
        let grid = &self.blocks[b].grid;
        let mut out = vec![
            grid[r][(c + cols - 1) % cols],
            grid[r][(c + 1) % cols],
            grid[(r + rows - 1) % rows][c],
            grid[(r + 1) % rows][c],
        ];
        if self.blocks.len() == 2 {
            out.push(self.blocks[1 - b].grid[r][c]);
        }
        out.sort_unstable();
        out.dedup();
        out.retain(|&n| n != region);
        out
    }
}

// ---------------------------------------------------------------------------
// Threshold machinery
// ---------------------------------------------------------------------------

/// Maps one normalised level in [0,1] through each objective's observed
/// min-max range: level 0 makes everything except the worst value good,
/// level 1 makes everything bad. Minimise objectives sweep from their max
/// towards their min.
pub fn thresholds_at_level(set: &ApproximationSet, level: f64) -> Result<ThresholdVector> {
    if set.is_empty() {
        return Err(Error::insufficient("cannot derive thresholds from an empty set"));
    }
    if !level.is_finite() {
        return Err(Error::argument(format!("non-finite sweep level {level}")));
    }
    let thresholds = (0..set.num_objectives())
        .map(|k| {
            let (lo, hi) = set.min_max(k).unwrap();
            match set.specs()[k].sense {
                Sense::Maximise => lo + level * (hi - lo),
                Sense::Minimise => hi - level * (hi - lo),
            }
        })
        .collect();
    ThresholdVector::new(thresholds)
}

/// One point of a threshold sweep curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    /// Normalised threshold level in (0,1).
    pub level: f64,
    /// Input sets with at least one solution in the tracked region.
    pub instances: u64,
}

/// Default sweep resolution: 49 interior levels in 0.02 steps.
pub const DEFAULT_SWEEP_ALPHA: usize = 50;

/// Sweeps `alpha − 1` equally spaced levels (i/alpha for i = 1..alpha−1),
/// dividing each objective's observed range into `alpha` equal parts, and
/// counts per level how many sets have at least one solution in `region`.
/// Each set is normalised through its own per-objective min-max.
pub fn threshold_sweep(
    sets: &[ApproximationSet],
    alpha: usize,
    region: usize,
) -> Result<Vec<SweepPoint>> {
    if alpha < 2 {
        return Err(Error::argument(format!("alpha must be at least 2, got {alpha}")));
    }
    if sets.is_empty() {
        return Err(Error::insufficient("threshold sweep needs at least one set"));
    }
    let m = sets[0].num_objectives();
    for set in sets {
        if set.num_objectives() != m {
            return Err(Error::DimensionMismatch { expected: m, got: set.num_objectives() });
        }
        if set.is_empty() {
            return Err(Error::insufficient(format!(
                "threshold sweep needs non-empty sets; '{}' is empty",
                set.instance_id()
            )));
        }
    }
    if region >= (1usize << m.min(MAX_REGION_OBJECTIVES)) || m > MAX_REGION_OBJECTIVES {
        return Err(Error::argument(format!("region {region} out of range for m={m}")));
    }

    (1..alpha)
        .map(|i| {
            let level = i as f64 / alpha as f64;
            let mut instances = 0u64;
            for set in sets {
                let thresholds = thresholds_at_level(set, level)?;
                let hit = set.solutions().iter().any(|sol| {
                    region_index_unchecked(
                        sol.objectives.values(),
                        thresholds.values(),
                        set.specs(),
                    ) == region
                });
                if hit {
                    instances += 1;
                }
            }
            Ok(SweepPoint { level, instances })
        })
        .collect()
}

/// Smallest level on a grid of `resolution` steps over [0,1) at which region
/// 0 is empty, i.e. the minimum threshold that guarantees trade-offs. Returns
/// `None` when region 0 stays occupied at every level strictly below 1.
pub fn minimal_empty_r0_threshold(set: &ApproximationSet, resolution: usize) -> Result<Option<f64>> {
    if resolution < 2 {
        return Err(Error::argument(format!("resolution must be at least 2, got {resolution}")));
    }
    if set.is_empty() {
        return Ok(Some(0.0));
    }
    for i in 0..resolution {
        let level = i as f64 / resolution as f64;
        let thresholds = thresholds_at_level(set, level)?;
        let occupied = set.solutions().iter().any(|sol| {
            region_index_unchecked(sol.objectives.values(), thresholds.values(), set.specs()) == 0
        });
        if !occupied {
            return Ok(Some(level));
        }
    }
    Ok(None)
}

/// Supremum thresholds keeping every solution good in every objective: the
/// per-objective minimum for maximise objectives and maximum for minimise
/// objectives. The boundary itself is exclusive — a threshold must be
/// strictly below (above for minimise) the returned value for all solutions
/// to stay good.
pub fn maximal_all_good_threshold(set: &ApproximationSet) -> Result<ThresholdVector> {
    if set.is_empty() {
        return Err(Error::insufficient(
            "all-good threshold boundary needs a non-empty set",
        ));
    }
    let thresholds = (0..set.num_objectives())
        .map(|k| {
            let (lo, hi) = set.min_max(k).unwrap();
            match set.specs()[k].sense {
                Sense::Maximise => lo,
                Sense::Minimise => hi,
            }
        })
        .collect();
    ThresholdVector::new(thresholds)
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

/// Cell shading by number of bad objectives, light to dark.
const SHADES: [&str; 6] = ["#FFFFFF", "#EFEFEF", "#C0C0C0", "#9B9B9B", "#656565", "#343434"];

fn shade(region: usize) -> &'static str {
    SHADES[(region_popcount(region) as usize).min(SHADES.len() - 1)]
}

fn text_colour(region: usize) -> &'static str {
    if region_popcount(region) >= 4 {
        "#FFFFFF"
    } else {
        "#000000"
    }
}

/// Renders a region map as a deterministic SVG grid in the Gray-code layout,
/// shaded by the number of bad objectives per cell. Only available for
/// 3..=5 objectives; callers should fall back to a table otherwise.
pub fn render_region_map_svg(
    map: &RegionMap,
    names: &[String],
    meta_comment: &str,
) -> Result<String> {
    if names.len() != map.m {
        return Err(Error::DimensionMismatch { expected: map.m, got: names.len() });
    }
    let layout = gray_layout(map.m)?;
    let percentages = map.percentages();

    let cell = 86.0;
    let margin = 56.0;
    let block_gap = 40.0;
    let rows = layout.rows();
    let cols = layout.cols();
    let nblocks = layout.blocks.len();
    let width = margin * 2.0
        + nblocks as f64 * cols as f64 * cell
        + if nblocks == 2 { block_gap } else { 0.0 };
    let height = margin * 2.0 + rows as f64 * cell;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\" font-family=\"sans-serif\">\n"
    ));
    svg.push_str(&format!("<!-- {meta_comment} -->\n"));
    svg.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"#FFFFFF\"/>\n"
    ));

    for (b, block) in layout.blocks.iter().enumerate() {
        let x0 = margin + b as f64 * (cols as f64 * cell + block_gap);
        let y0 = margin;
        if let Some(split) = layout.block_objective {
            let tag = if block.block_bad { "bad" } else { "good" };
            svg.push_str(&format!(
                "<text x=\"{x:.1}\" y=\"{y:.1}\" text-anchor=\"middle\" font-size=\"14\">{name} {tag}</text>\n",
                x = x0 + cols as f64 * cell / 2.0,
                y = y0 - 34.0,
                name = xml_escape(&names[split]),
            ));
        }
        // column labels from the bit pattern of the top row
        for (c, &region) in block.grid[0].iter().enumerate() {
            let z1 = if region & 0b01 == 0 { "+" } else { "-" };
            let z2 = if region & 0b10 == 0 { "+" } else { "-" };
            svg.push_str(&format!(
                "<text x=\"{x:.1}\" y=\"{y:.1}\" text-anchor=\"middle\" font-size=\"11\">{n2}{z2} {n1}{z1}</text>\n",
                x = x0 + (c as f64 + 0.5) * cell,
                y = y0 - 8.0,
                n1 = xml_escape(&names[0]),
                n2 = xml_escape(&names[1]),
            ));
        }
        // row labels from the bit pattern of the first column
        for (r, row) in block.grid.iter().enumerate() {
            let region = row[0];
            let mut label = String::new();
            if map.m >= 4 {
                label.push_str(&format!(
                    "{}{} ",
                    xml_escape(&names[3]),
                    if region & 0b1000 == 0 { "+" } else { "-" }
                ));
            }
            label.push_str(&format!(
                "{}{}",
                xml_escape(&names[2]),
                if region & 0b100 == 0 { "+" } else { "-" }
            ));
            if b == 0 {
                svg.push_str(&format!(
                    "<text x=\"{x:.1}\" y=\"{y:.1}\" text-anchor=\"end\" font-size=\"11\">{label}</text>\n",
                    x = x0 - 6.0,
                    y = y0 + (r as f64 + 0.55) * cell,
                ));
            }
        }
        for (r, row) in block.grid.iter().enumerate() {
            for (c, &region) in row.iter().enumerate() {
                let x = x0 + c as f64 * cell;
                let y = y0 + r as f64 * cell;
                svg.push_str(&format!(
                    "<rect x=\"{x:.1}\" y=\"{y:.1}\" width=\"{cell}\" height=\"{cell}\" \
                     fill=\"{fill}\" stroke=\"#000000\" stroke-width=\"1\"/>\n",
                    fill = shade(region),
                ));
                svg.push_str(&format!(
                    "<text x=\"{tx:.1}\" y=\"{ty:.1}\" text-anchor=\"middle\" font-size=\"12\" \
                     fill=\"{fg}\">r{region}</text>\n",
                    tx = x + cell / 2.0,
                    ty = y + cell / 2.0 - 6.0,
                    fg = text_colour(region),
                ));
                svg.push_str(&format!(
                    "<text x=\"{tx:.1}\" y=\"{ty:.1}\" text-anchor=\"middle\" font-size=\"12\" \
                     fill=\"{fg}\">{pct:.1}%</text>\n",
                    tx = x + cell / 2.0,
                    ty = y + cell / 2.0 + 12.0,
                    fg = text_colour(region),
                    pct = percentages[region] * 100.0,
                ));
            }
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub(crate) fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::{maximise_specs, ObjectiveSpec};

    fn max_set(rows: &[Vec<f64>]) -> ApproximationSet {
        ApproximationSet::from_rows(maximise_specs(rows[0].len()), "test", rows).unwrap()
    }

    #[test]
    fn region_index_examples() {
        let specs = maximise_specs(3);
        let t = ThresholdVector::uniform(50.0, 3).unwrap();
        // good, bad, good -> 010
        let v = ObjectiveVector::new(vec![60.0, 40.0, 70.0]).unwrap();
        assert_eq!(region_index(&v, &t, &specs).unwrap(), 2);
        // all good -> 0
        let v = ObjectiveVector::new(vec![60.0, 60.0, 70.0]).unwrap();
        assert_eq!(region_index(&v, &t, &specs).unwrap(), 0);
        // equality counts as bad
        let v = ObjectiveVector::new(vec![50.0, 60.0, 70.0]).unwrap();
        assert_eq!(region_index(&v, &t, &specs).unwrap(), 1);
    }

    #[test]
    fn region_index_all_bad_for_four_objectives() {
        let specs = maximise_specs(4);
        let t = ThresholdVector::uniform(10.0, 4).unwrap();
        let v = ObjectiveVector::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(region_index(&v, &t, &specs).unwrap(), 15);
    }

    #[test]
    fn region_index_respects_sense() {
        let specs = vec![ObjectiveSpec::maximise("Z1"), ObjectiveSpec::minimise("Z2")];
        let t = ThresholdVector::new(vec![50.0, 50.0]).unwrap();
        let v = ObjectiveVector::new(vec![60.0, 40.0]).unwrap();
        assert_eq!(region_index(&v, &t, &specs).unwrap(), 0);
        let v = ObjectiveVector::new(vec![60.0, 50.0]).unwrap();
        assert_eq!(region_index(&v, &t, &specs).unwrap(), 2);
    }

    #[test]
    fn distribution_map_partitions_the_set() {
        let set = max_set(&[
            vec![60.0, 60.0],
            vec![60.0, 40.0],
            vec![40.0, 60.0],
            vec![40.0, 40.0],
            vec![55.0, 45.0],
        ]);
        let map =
            build_distribution_map(&set, &ThresholdVector::uniform(50.0, 2).unwrap()).unwrap();
        assert_eq!(map.counts, vec![1, 1, 2, 1]);
        assert_eq!(map.counts.iter().sum::<u64>(), map.total);
        let pct_sum: f64 = map.percentages().iter().sum();
        assert!((pct_sum - 1.0).abs() < 1e-9);
    }

    #[test]
    fn everything_good_when_thresholds_below_all_values() {
        let set = max_set(&[vec![3.0, 4.0], vec![5.0, 6.0]]);
        let map =
            build_distribution_map(&set, &ThresholdVector::uniform(0.0, 2).unwrap()).unwrap();
        assert_eq!(map.counts[0], map.total);
    }

    #[test]
    fn frequency_map_counts_instances() {
        let set_a = max_set(&[vec![60.0, 60.0]]);
        let set_b = max_set(&[vec![60.0, 40.0]]);
        let t = ThresholdVector::uniform(50.0, 2).unwrap();
        let maps = vec![
            build_distribution_map(&set_a, &t).unwrap(),
            build_distribution_map(&set_b, &t).unwrap(),
        ];
        let freq = build_frequency_map(&maps).unwrap();
        assert_eq!(freq.counts[0], 1);
        assert_eq!(freq.counts[2], 1);
        assert_eq!(freq.instance_total, 2);

        // single-map input reduces to an indicator of non-empty regions
        let single = build_frequency_map(&maps[..1]).unwrap();
        assert_eq!(single.counts[0], 1);
        assert_eq!(single.counts[2], 0);
    }

    #[test]
    fn frequency_map_rejects_mixed_arity() {
        let t2 = ThresholdVector::uniform(0.0, 2).unwrap();
        let t3 = ThresholdVector::uniform(0.0, 3).unwrap();
        let maps = vec![
            build_distribution_map(&max_set(&[vec![1.0, 2.0]]), &t2).unwrap(),
            build_distribution_map(&max_set(&[vec![1.0, 2.0, 3.0]]), &t3).unwrap(),
        ];
        assert!(build_frequency_map(&maps).is_err());
    }

    #[test]
    fn layout_matches_printed_grids() {
        let l3 = gray_layout(3).unwrap();
        assert_eq!(l3.blocks[0].grid, vec![vec![0, 1, 3, 2], vec![4, 5, 7, 6]]);

        let l4 = gray_layout(4).unwrap();
        assert_eq!(
            l4.blocks[0].grid,
            vec![
                vec![0, 1, 3, 2],
                vec![4, 5, 7, 6],
                vec![12, 13, 15, 14],
                vec![8, 9, 11, 10],
            ]
        );

        let l5 = gray_layout(5).unwrap();
        assert_eq!(l5.blocks.len(), 2);
        // the two blocks share grid positions, offset by the split bit
        assert_eq!(l5.position(15).unwrap(), (0, 2, 2));
        assert_eq!(l5.position(31).unwrap(), (1, 2, 2));
        assert!(!l5.blocks[0].block_bad);
        assert!(l5.blocks[1].block_bad);
    }

    #[test]
    fn layout_neighbours_of_region_zero() {
        let l3 = gray_layout(3).unwrap();
        assert_eq!(l3.neighbours(0), vec![1, 2, 4]);

        let l4 = gray_layout(4).unwrap();
        for region in 0..16 {
            let ns = l4.neighbours(region);
            assert_eq!(ns.len(), 4, "region {region} must have 4 neighbours");
            for n in ns {
                assert_eq!((n ^ region).count_ones(), 1);
            }
        }

        let l5 = gray_layout(5).unwrap();
        for region in 0..32 {
            let ns = l5.neighbours(region);
            assert_eq!(ns.len(), 5, "region {region} must have 5 neighbours");
            for n in ns {
                assert_eq!((n ^ region).count_ones(), 1);
            }
        }
    }

    #[test]
    fn layout_rejects_unsupported_arity() {
        assert!(matches!(gray_layout(2), Err(Error::UnsupportedArity { m: 2, .. })));
        assert!(matches!(gray_layout(6), Err(Error::UnsupportedArity { m: 6, .. })));
    }

    #[test]
    fn sweep_is_monotone_and_bounded() {
        let sets = vec![
            max_set(&[vec![1.0, 9.0], vec![5.0, 5.0], vec![9.0, 1.0]]),
            max_set(&[vec![2.0, 8.0], vec![8.0, 2.0]]),
        ];
        let curve = threshold_sweep(&sets, 10, 0).unwrap();
        assert_eq!(curve.len(), 9);
        let mut last = u64::MAX;
        for point in &curve {
            assert!(point.instances <= sets.len() as u64);
            assert!(point.instances <= last, "region-0 sweep must be non-increasing");
            last = point.instances;
        }
    }

    #[test]
    fn sweep_argument_validation() {
        let sets = vec![max_set(&[vec![1.0, 2.0]])];
        assert!(threshold_sweep(&sets, 1, 0).is_err());
        assert!(threshold_sweep(&[], 10, 0).is_err());
        assert!(threshold_sweep(&sets, 10, 4).is_err());
    }

    #[test]
    fn minimal_empty_r0_on_ideal_point_is_none() {
        // one solution best everywhere stays good at every level below 1
        let set = max_set(&[vec![9.0, 9.0], vec![1.0, 5.0], vec![5.0, 1.0]]);
        assert_eq!(minimal_empty_r0_threshold(&set, 100).unwrap(), None);
    }

    #[test]
    fn minimal_empty_r0_finds_first_level() {
        // two solutions trading off; at level 0 both good except at their own
        // minima -> r0 already empty at level 0? No: each solution is bad in
        // the objective where it sits at the minimum, so r0 is empty at 0.
        let set = max_set(&[vec![1.0, 9.0], vec![9.0, 1.0]]);
        assert_eq!(minimal_empty_r0_threshold(&set, 10).unwrap(), Some(0.0));

        // with an interior solution, r0 empties once the interior point
        // falls below the moving thresholds
        let set = max_set(&[vec![1.0, 9.0], vec![9.0, 1.0], vec![5.0, 5.0]]);
        let level = minimal_empty_r0_threshold(&set, 10).unwrap().unwrap();
        assert_eq!(level, 0.5);
    }

    #[test]
    fn all_good_boundary_is_the_column_minimum() {
        let set = max_set(&[vec![10.0, 3.0], vec![20.0, 9.0], vec![30.0, 6.0]]);
        let boundary = maximal_all_good_threshold(&set).unwrap();
        assert_eq!(boundary.values(), &[10.0, 3.0]);
        // strictly below the boundary every solution is good
        let eps = 1e-9;
        let t = ThresholdVector::new(vec![10.0 - eps, 3.0 - eps]).unwrap();
        let map = build_distribution_map(&set, &t).unwrap();
        assert_eq!(map.counts[0], map.total);
    }

    #[test]
    fn all_good_boundary_single_solution() {
        let set = max_set(&[vec![4.0, 7.0]]);
        let boundary = maximal_all_good_threshold(&set).unwrap();
        assert_eq!(boundary.values(), &[4.0, 7.0]);
    }

    #[test]
    fn svg_rendering_is_deterministic() {
        let set = max_set(&[vec![60.0, 60.0, 60.0], vec![40.0, 60.0, 40.0]]);
        let map =
            build_distribution_map(&set, &ThresholdVector::uniform(50.0, 3).unwrap()).unwrap();
        let names: Vec<String> = set.specs().iter().map(|s| s.name.clone()).collect();
        let a = render_region_map_svg(&map, &names, "meta").unwrap();
        let b = render_region_map_svg(&map, &names, "meta").unwrap();
        assert_eq!(a, b);
        assert!(a.contains("r0"));
        assert!(a.contains("r7"));
    }
}
