use std::collections::BTreeMap;

use serde::Serialize;

use super::run::TrialResult;

/// Mean and 95% normal-approximation half-width of the finite samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub half_width: f64,
    pub n: usize,
}

impl Estimate {
    pub fn of(samples: impl IntoIterator<Item = f64>) -> Self {
        let xs: Vec<f64> = samples.into_iter().filter(|x| x.is_finite()).collect();
        let n = xs.len();
        if n == 0 {
            return Self { mean: f64::NAN, half_width: f64::NAN, n };
        }
        let mean = xs.iter().sum::<f64>() / n as f64;
        let half_width = if n > 1 {
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            1.96 * (var / n as f64).sqrt()
        } else {
            f64::INFINITY
        };
        Self { mean, half_width, n }
    }

    pub fn lower(&self) -> f64 {
        self.mean - self.half_width
    }

    pub fn upper(&self) -> f64 {
        self.mean + self.half_width
    }
}

/// Sum-rate estimate of every `(mode, swept value)` cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupSummary {
    pub mode: String,
    pub swept_value: f64,
    pub rsum: Estimate,
    pub converged_fraction: f64,
}

pub fn summarize(rows: &[TrialResult]) -> Vec<GroupSummary> {
    let mut groups: BTreeMap<(String, u64), Vec<&TrialResult>> = BTreeMap::new();
    for r in rows {
        groups.entry((r.mode.clone(), r.swept_value.to_bits())).or_default().push(r);
    }
    let mut out: Vec<GroupSummary> = groups
        .into_iter()
        .map(|((mode, bits), rs)| GroupSummary {
            mode,
            swept_value: f64::from_bits(bits),
            rsum: Estimate::of(rs.iter().map(|r| r.rsum)),
            converged_fraction: rs.iter().filter(|r| r.converged).count() as f64 / rs.len() as f64,
        })
        .collect();
    out.sort_by(|a, b| a.swept_value.total_cmp(&b.swept_value).then_with(|| a.mode.cmp(&b.mode)));
    out
}

/// Rows of one mode at one swept value.
pub fn select<'a>(rows: &'a [TrialResult], mode: &str, value: f64) -> Vec<&'a TrialResult> {
    rows.iter().filter(|r| r.mode == mode && r.swept_value == value).collect()
}

pub fn mean_rsum(rows: &[TrialResult], mode: &str, value: f64) -> Estimate {
    Estimate::of(select(rows, mode, value).into_iter().map(|r| r.rsum))
}

/// Per-trial difference `Rsum(a) − Rsum(b)` at one swept value, paired by
/// trial index.
pub fn paired_gap(rows: &[TrialResult], a: &str, b: &str, value: f64) -> Estimate {
    let rb: BTreeMap<usize, f64> = select(rows, b, value).into_iter().map(|r| (r.trial, r.rsum)).collect();
    Estimate::of(
        select(rows, a, value)
            .into_iter()
            .filter_map(|r| rb.get(&r.trial).map(|x| r.rsum - x)),
    )
}
