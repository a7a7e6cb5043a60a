use num_traits::Zero;

use super::charts::{rees_charts, BlowupChart};
use super::classify::AdeLabel;
use super::fibre::{exceptional_fibre, ExceptionalFibre};
use super::singular::{singular_locus, SingularPoint, SingularityReport};
use super::{BlowupIdeal, HypersurfaceSingularity};
use crate::error::Result;

/// Everything computed about one blowup `Bl_I X`.
#[derive(Clone, Debug)]
pub struct BlowupReport {
    pub ideal: BlowupIdeal,
    pub charts: Vec<BlowupChart>,
    pub singularities: Vec<SingularityReport>,
    pub fibre: ExceptionalFibre,
    /// Isolated singular points, each counted once across charts.
    pub residual: Vec<SingularPoint>,
    /// False when some residual point is irrational or unclassified, or when
    /// some chart has a singular curve.
    pub residual_complete: bool,
}

impl BlowupReport {
    pub fn smooth(&self) -> bool {
        self.singularities.iter().all(|s| s.smooth)
    }

    /// ADE labels of the residual points, sorted.
    pub fn residual_labels(&self) -> Vec<AdeLabel> {
        let mut v: Vec<AdeLabel> = self
            .residual
            .iter()
            .filter_map(|p| p.class.as_ref().and_then(|c| c.label))
            .collect();
        v.sort();
        v
    }
}

/// A point of chart `i` lies in an earlier chart `k` iff its ratio
/// coordinate `g_k / g_i` is nonzero.
fn first_chart_of(point: &SingularPoint, chart: &BlowupChart) -> bool {
    chart.ratios.iter().filter(|(k, _)| *k < chart.index).all(|(_, name)| {
        point
            .coords
            .iter()
            .find(|(n, _)| n == name)
            .is_some_and(|(_, v)| v.is_zero())
    })
}

/// Blows up `x` in `ideal` and analyses every chart.
pub fn blow_up(ideal: BlowupIdeal, x: &HypersurfaceSingularity, seed: u64) -> Result<BlowupReport> {
    let charts = rees_charts(&ideal, x)?;
    let singularities = charts.iter().map(singular_locus).collect::<Result<Vec<_>>>()?;
    let fibre = exceptional_fibre(&charts, seed)?;
    let mut residual = Vec::new();
    let mut complete = true;
    for (chart, rep) in charts.iter().zip(&singularities) {
        if rep.singular_locus_dimension > 0 || !rep.points_complete {
            complete = false;
        }
        for p in &rep.points {
            if first_chart_of(p, chart) {
                if p.class.as_ref().and_then(|c| c.label).is_none() {
                    complete = false;
                }
                residual.push(p.clone());
            }
        }
    }
    Ok(BlowupReport {
        ideal,
        charts,
        singularities,
        fibre,
        residual,
        residual_complete: complete,
    })
}
