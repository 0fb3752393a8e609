//! Per-iteration operation counts of the PDD solver and of the SDR-based
//! baseline it is compared against.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexityParams {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub t_memory: usize,
    pub m_irs: usize,
    /// Accuracy parameter of the baseline's interior-point solver.
    pub mu_c: f64,
}

impl Default for ComplexityParams {
    fn default() -> Self {
        Self {
            n: 2,
            k: 2,
            m: 20,
            t_memory: 3,
            m_irs: 4,
            mu_c: 0.1,
        }
    }
}

impl ComplexityParams {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k == 0 || self.m == 0 || self.m_irs == 0 || self.t_memory == 0 {
            return Err(Error::invalid("complexity parameters must be positive"));
        }
        if !(self.mu_c > 0.0 && self.mu_c < 1.0) {
            return Err(Error::invalid(format!("mu_c = {} is outside (0, 1)", self.mu_c)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseCost {
    Continuous,
    Trellis,
    Quantize,
    Exhaustive,
}

impl PhaseCost {
    pub const ALL: [PhaseCost; 4] = [
        PhaseCost::Continuous,
        PhaseCost::Trellis,
        PhaseCost::Quantize,
        PhaseCost::Exhaustive,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PhaseCost::Continuous => "continuous",
            PhaseCost::Trellis => "trellis",
            PhaseCost::Quantize => "quantize",
            PhaseCost::Exhaustive => "exhaustive",
        }
    }
}

/// Operations in one PDD outer iteration for a two-user system.
///
/// Continuous phases: `6M² + (2N² + 8N)M + 2N³ + 21N² + 157N`. Discrete
/// phases share `2M² + 4NM + 2N³ + 20N² + 150N` and add the phase search:
/// `(M − T)·M_IRS^(T+1)` comparisons for the trellis, `M` for quantization
/// and `M_IRS^M` for exhaustive search.
pub fn pdd_step_cost(p: &ComplexityParams, phase: PhaseCost) -> f64 {
    let n = p.n as f64;
    let m = p.m as f64;
    match phase {
        PhaseCost::Continuous => {
            6.0 * m * m + (2.0 * n * n + 8.0 * n) * m + 2.0 * n.powi(3) + 21.0 * n * n + 157.0 * n
        }
        _ => {
            let base = 2.0 * m * m + 4.0 * n * m + 2.0 * n.powi(3) + 20.0 * n * n + 150.0 * n;
            let search = match phase {
                PhaseCost::Trellis => {
                    let stages = p.m.saturating_sub(p.t_memory) as f64;
                    stages * (p.m_irs as f64).powi(p.t_memory as i32 + 1)
                }
                PhaseCost::Quantize => m,
                _ => (p.m_irs as f64).powf(m),
            };
            base + search
        }
    }
}

/// `max(N, 3K(K−1)⁴)·√N·ln(1/μ_c) + (3K² + M)^3.5`.
pub fn baseline_step_cost(p: &ComplexityParams) -> f64 {
    let n = p.n as f64;
    let k = p.k as f64;
    let m = p.m as f64;
    let lead = n.max(3.0 * k * (k - 1.0).powi(4));
    lead * n.sqrt() * (1.0 / p.mu_c).ln() + (3.0 * k * k + m).powf(3.5)
}

/// One row of the `complexity` report.
#[derive(Debug, Clone, Serialize)]
pub struct ComplexityRow {
    pub scheme: String,
    pub cost: f64,
    /// Cost relative to the continuous PDD iteration.
    pub relative: f64,
}

pub fn complexity_table(p: &ComplexityParams) -> Vec<ComplexityRow> {
    let cont = pdd_step_cost(p, PhaseCost::Continuous);
    let mut rows: Vec<ComplexityRow> = PhaseCost::ALL
        .iter()
        .map(|&ph| {
            let cost = pdd_step_cost(p, ph);
            ComplexityRow {
                scheme: format!("pdd-{}", ph.name()),
                cost,
                relative: cost / cont,
            }
        })
        .collect();
    let base = baseline_step_cost(p);
    rows.push(ComplexityRow {
        scheme: "sdr-baseline".into(),
        cost: base,
        relative: base / cont,
    });
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continuous_substitution() {
        let p = ComplexityParams { m: 50, ..Default::default() };
        assert_eq!(pdd_step_cost(&p, PhaseCost::Continuous), 16614.0);
    }

    #[test]
    fn discrete_substitution() {
        let p = ComplexityParams::default();
        assert_eq!(pdd_step_cost(&p, PhaseCost::Trellis), 5708.0);
        assert_eq!(pdd_step_cost(&p, PhaseCost::Quantize), 1376.0);
        let ex = pdd_step_cost(&p, PhaseCost::Exhaustive);
        assert_eq!(ex, 1356.0 + 4f64.powi(20));
    }

    #[test]
    fn baseline_grows_with_m() {
        let mut p = ComplexityParams { m: 50, ..Default::default() };
        let base = baseline_step_cost(&p);
        assert!((base - 1.8766e6).abs() / 1.8766e6 < 1e-3);
        let mut prev = 0.0;
        for m in 1..100 {
            p.m = m;
            let c = baseline_step_cost(&p);
            assert!(c > prev);
            prev = c;
        }
    }
}
