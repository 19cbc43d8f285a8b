//! Analytic binomial tail bounds used to annotate experiment reports.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailKind {
    /// `P[X > (1+α)np] < exp(−np((1+α)ln(1+α) − α))`
    ChernoffUpper,
    /// `P[X < (1−α)np] < exp(−α²np/2)`
    ChernoffLower,
    /// `P[X ≥ k] ≤ (enp/k)^k`
    Binomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailBound {
    pub kind: TailKind,
    /// The deviation point: `(1±α)np` or `k`.
    pub threshold: f64,
    /// Natural log of the bound; finite even when the bound underflows.
    pub ln_bound: f64,
    pub bound: f64,
    /// The bound is at least 1 and says nothing.
    pub vacuous: bool,
}

impl TailBound {
    fn new(kind: TailKind, threshold: f64, ln_bound: f64) -> Self {
        TailBound { kind, threshold, ln_bound, bound: ln_bound.exp(), vacuous: ln_bound >= 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailQuery {
    Alpha(f64),
    K(u64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailBounds {
    pub trials: u64,
    pub p: f64,
    pub mean: f64,
    pub bounds: Vec<TailBound>,
}

fn check_np(trials: u64, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("p must lie in [0, 1], got {p}")));
    }
    if trials == 0 {
        return Err(Error::param("a binomial needs at least one trial"));
    }
    Ok(trials as f64 * p)
}

pub fn chernoff_upper(trials: u64, p: f64, alpha: f64) -> Result<TailBound> {
    let np = check_np(trials, p)?;
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::param(format!("alpha must be positive, got {alpha}")));
    }
    let rate = (1.0 + alpha) * alpha.ln_1p() - alpha;
    Ok(TailBound::new(TailKind::ChernoffUpper, (1.0 + alpha) * np, -np * rate))
}

pub fn chernoff_lower(trials: u64, p: f64, alpha: f64) -> Result<TailBound> {
    let np = check_np(trials, p)?;
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::param(format!("alpha must be positive, got {alpha}")));
    }
    Ok(TailBound::new(TailKind::ChernoffLower, (1.0 - alpha) * np, -alpha * alpha * np / 2.0))
}

/// `(enp/k)^k`, an upper bound on `P[X ≥ k]` that is only useful for `k ≫ np`.
pub fn binomial_upper(trials: u64, p: f64, k: u64) -> Result<TailBound> {
    let np = check_np(trials, p)?;
    if k == 0 {
        return Err(Error::param("k must be at least 1"));
    }
    let k_f = k as f64;
    let ln_bound = if np == 0.0 { f64::NEG_INFINITY } else { k_f * (1.0 + (np / k_f).ln()) };
    Ok(TailBound::new(TailKind::Binomial, k_f, ln_bound))
}

/// Bounds for `X ~ Bin(trials, p)`: both Chernoff tails for an `α` query, or
/// the `(enp/k)^k` bound for a `k` query.
pub fn binomial_tail_bounds(trials: u64, p: f64, query: TailQuery) -> Result<TailBounds> {
    let mean = check_np(trials, p)?;
    let bounds = match query {
        TailQuery::Alpha(a) => vec![chernoff_upper(trials, p, a)?, chernoff_lower(trials, p, a)?],
        TailQuery::K(k) => vec![binomial_upper(trials, p, k)?],
    };
    Ok(TailBounds { trials, p, mean, bounds })
}
