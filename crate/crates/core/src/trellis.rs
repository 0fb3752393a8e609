//! Discrete IRS phase selection.
//!
//! The benchmark `Σ_j Re{ Σ_{i<j} θ_j*·a_ij·θ_i − c_j·θ_j* }` is a running
//! sum whose `j`-th term depends on `θ_j` and everything before it. The
//! trellis keeps one survivor per state, where a state is the last `T`
//! symbols, and evaluates each branch metric against the survivor's full
//! history (per-survivor processing). With `T = M` this reduces to an
//! exhaustive enumeration.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::quadratic::PhaseQuadratic;
use crate::scalar::{Real, C};
use crate::system::{alphabet, PhaseVector};

/// Exhaustive search refuses more than this many candidate vectors.
pub const EXHAUSTIVE_BUDGET: u64 = 1 << 20;
/// Exhaustive search refuses IRS sizes above this.
pub const EXHAUSTIVE_MAX_ELEMENTS: usize = 16;
/// Upper bound on `M_IRS^T` accepted by the trellis.
pub const DEFAULT_STATE_BUDGET: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrellisConfig {
    /// Alphabet size `M_IRS`.
    pub m_irs: usize,
    /// Memory length `T` (symbols per state).
    pub memory: usize,
    pub max_states: usize,
}

impl Default for TrellisConfig {
    fn default() -> Self {
        Self {
            m_irs: 4,
            memory: 3,
            max_states: DEFAULT_STATE_BUDGET,
        }
    }
}

impl TrellisConfig {
    pub fn new(m_irs: usize, memory: usize) -> Self {
        Self {
            m_irs,
            memory,
            ..Self::default()
        }
    }

    pub fn state_count(&self) -> Option<usize> {
        u32::try_from(self.memory)
            .ok()
            .and_then(|t| self.m_irs.checked_pow(t))
    }

    fn validate(&self, m: usize) -> Result<usize> {
        if self.m_irs == 0 {
            return Err(Error::invalid("alphabet size must be at least 1"));
        }
        if self.memory == 0 {
            return Err(Error::invalid("trellis memory must be at least 1"));
        }
        if self.memory > m {
            return Err(Error::invalid(format!(
                "trellis memory {} exceeds IRS size {m}",
                self.memory
            )));
        }
        match self.state_count() {
            Some(s) if s <= self.max_states => Ok(s),
            _ => Err(Error::BudgetExceeded(format!(
                "{}^{} trellis states exceed the budget of {}",
                self.m_irs, self.memory, self.max_states
            ))),
        }
    }
}

/// One surviving path.
#[derive(Debug, Clone, PartialEq)]
pub struct TrellisPath<T> {
    /// Index of the last `T` symbols, most recent symbol least significant.
    pub state: usize,
    pub cumulative_benchmark: T,
    /// Alphabet indices (0-based) chosen so far.
    pub history: Vec<usize>,
    /// Summed angular distance to the warm-start phases; tie-breaker only.
    warm_distance: T,
}

impl<T: Real> TrellisPath<T> {
    /// Ranking: benchmark, then closeness to the warm start, then
    /// lexicographic phase indices.
    fn ranks_before(&self, other: &Self) -> bool {
        match self.cumulative_benchmark.partial_cmp(&other.cumulative_benchmark) {
            Some(Ordering::Less) => return true,
            Some(Ordering::Greater) => return false,
            _ => {}
        }
        match self.warm_distance.partial_cmp(&other.warm_distance) {
            Some(Ordering::Less) => return true,
            Some(Ordering::Greater) => return false,
            _ => {}
        }
        self.history < other.history
    }
}

/// Per-stage bookkeeping returned by [`trellis_search_traced`].
#[derive(Debug, Clone)]
pub struct TrellisTrace<T> {
    /// Survivors alive after initialization and after every stage.
    pub survivors_per_stage: Vec<usize>,
    /// Final survivors, one per state.
    pub final_paths: Vec<TrellisPath<T>>,
}

pub fn trellis_search<T: Real>(
    quad: &PhaseQuadratic<T>,
    cfg: &TrellisConfig,
    warm_start: Option<&PhaseVector<T>>,
) -> Result<PhaseVector<T>> {
    trellis_search_traced(quad, cfg, warm_start).map(|(v, _)| v)
}

pub fn trellis_search_traced<T: Real>(
    quad: &PhaseQuadratic<T>,
    cfg: &TrellisConfig,
    warm_start: Option<&PhaseVector<T>>,
) -> Result<(PhaseVector<T>, TrellisTrace<T>)> {
    let m = quad.dim();
    if let Some(w) = warm_start {
        if w.len() != m {
            return Err(Error::dimension("warm start length differs from IRS size"));
        }
    }
    if m == 0 {
        let trace = TrellisTrace {
            survivors_per_stage: Vec::new(),
            final_paths: Vec::new(),
        };
        return Ok((PhaseVector::discrete(Vec::new(), cfg.m_irs.max(1))?, trace));
    }
    let states = cfg.validate(m)?;
    let k = cfg.m_irs;
    let t = cfg.memory;
    let symbols: Vec<C<T>> = alphabet(k);
    let warm = |pos: usize, q: usize| -> T {
        warm_start.map_or(T::zero(), |w| (symbols[q] * w.as_slice()[pos].conj()).arg().abs())
    };

    // every assignment of θ_1..θ_T, first symbol most significant
    let mut survivors: Vec<TrellisPath<T>> = (0..states)
        .map(|state| {
            let mut history = vec![0; t];
            let mut rest = state;
            for slot in history.iter_mut().rev() {
                *slot = rest % k;
                rest /= k;
            }
            let theta: Vec<C<T>> = history.iter().map(|&q| symbols[q]).collect();
            let cumulative_benchmark = (0..t).map(|j| quad.benchmark_term(j, &theta)).sum();
            let warm_distance = history.iter().enumerate().map(|(p, &q)| warm(p, q)).sum();
            TrellisPath {
                state,
                cumulative_benchmark,
                history,
                warm_distance,
            }
        })
        .collect();
    let mut survivors_per_stage = vec![survivors.len()];

    for j in t..m {
        let mut next: Vec<Option<TrellisPath<T>>> = vec![None; states];
        for path in &survivors {
            let cross = quad.cross_sum(j, |i| symbols[path.history[i]]);
            let base = cross - quad.c[j];
            for (q, sym) in symbols.iter().enumerate() {
                let branch = (base * sym.conj()).re;
                let state = (path.state * k + q) % states;
                let candidate_metric = path.cumulative_benchmark + branch;
                let candidate_warm = path.warm_distance + warm(j, q);
                let slot = &mut next[state];
                let wins = match slot {
                    None => true,
                    Some(cur) => {
                        let probe = TrellisPathProbe {
                            metric: candidate_metric,
                            warm: candidate_warm,
                            prefix: &path.history,
                            last: q,
                        };
                        probe.ranks_before(cur)
                    }
                };
                if wins {
                    let mut history = Vec::with_capacity(m);
                    history.extend_from_slice(&path.history);
                    history.push(q);
                    *slot = Some(TrellisPath {
                        state,
                        cumulative_benchmark: candidate_metric,
                        history,
                        warm_distance: candidate_warm,
                    });
                }
            }
        }
        survivors = next.into_iter().flatten().collect();
        survivors_per_stage.push(survivors.len());
    }

    let best = survivors
        .iter()
        .fold(None::<&TrellisPath<T>>, |best, p| match best {
            Some(b) if !p.ranks_before(b) => Some(b),
            _ => Some(p),
        })
        .expect("at least one survivor");
    let v = PhaseVector::discrete(best.history.clone(), k)?;
    Ok((
        v,
        TrellisTrace {
            survivors_per_stage,
            final_paths: survivors,
        },
    ))
}

/// A candidate extension compared against a stored survivor without
/// materializing its history.
struct TrellisPathProbe<'a, T> {
    metric: T,
    warm: T,
    prefix: &'a [usize],
    last: usize,
}

impl<T: Real> TrellisPathProbe<'_, T> {
    fn ranks_before(&self, other: &TrellisPath<T>) -> bool {
        match self.metric.partial_cmp(&other.cumulative_benchmark) {
            Some(Ordering::Less) => return true,
            Some(Ordering::Greater) => return false,
            _ => {}
        }
        match self.warm.partial_cmp(&other.warm_distance) {
            Some(Ordering::Less) => return true,
            Some(Ordering::Greater) => return false,
            _ => {}
        }
        let n = self.prefix.len();
        match self.prefix.cmp(&other.history[..n]) {
            Ordering::Equal => self.last < other.history[n],
            ord => ord == Ordering::Less,
        }
    }
}

/// Maps every phase to the nearest alphabet symbol by angle; exact ties go
/// to the smaller index.
pub fn quantize_phases<T: Real>(v: &PhaseVector<T>, m_irs: usize) -> Result<PhaseVector<T>> {
    if m_irs == 0 {
        return Err(Error::invalid("alphabet size must be at least 1"));
    }
    let symbols: Vec<C<T>> = alphabet(m_irs);
    let tie = T::lit(1e-12);
    let indices = v
        .as_slice()
        .iter()
        .map(|theta| {
            let mut best = 0;
            let mut best_dist = (symbols[0] * theta.conj()).arg().abs();
            for (q, s) in symbols.iter().enumerate().skip(1) {
                let d = (*s * theta.conj()).arg().abs();
                if d < best_dist - tie {
                    best = q;
                    best_dist = d;
                }
            }
            best
        })
        .collect();
    PhaseVector::discrete(indices, m_irs)
}

/// Global minimizer of the benchmark over all `M_IRS^M` alphabet vectors.
/// Ties resolve to the lexicographically smallest index sequence.
pub fn exhaustive_search<T: Real>(quad: &PhaseQuadratic<T>, m_irs: usize) -> Result<PhaseVector<T>> {
    let m = quad.dim();
    if m_irs == 0 {
        return Err(Error::invalid("alphabet size must be at least 1"));
    }
    let combos = u32::try_from(m)
        .ok()
        .and_then(|e| (m_irs as u64).checked_pow(e));
    match combos {
        Some(c) if c <= EXHAUSTIVE_BUDGET && m <= EXHAUSTIVE_MAX_ELEMENTS => {}
        _ => {
            return Err(Error::BudgetExceeded(format!(
                "exhaustive search over {m_irs}^{m} phase vectors"
            )))
        }
    }
    let symbols: Vec<C<T>> = alphabet(m_irs);
    let mut idx = vec![0usize; m];
    let mut theta: Vec<C<T>> = vec![symbols[0]; m];
    let mut best_idx = idx.clone();
    let mut best = quad.benchmark(&theta);
    // odometer with the last element fastest enumerates in lexicographic order
    loop {
        let mut pos = m;
        loop {
            if pos == 0 {
                return PhaseVector::discrete(best_idx, m_irs);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < m_irs {
                theta[pos] = symbols[idx[pos]];
                break;
            }
            idx[pos] = 0;
            theta[pos] = symbols[0];
        }
        let value = quad.benchmark(&theta);
        if value < best {
            best = value;
            best_idx.clone_from(&idx);
        }
    }
}
