use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The expansion factor `f` of an (R, f)-expander.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExpansionFn {
    Constant { value: f64 },
    /// `values[t − 1]` is `f(t)`.
    Table { values: Vec<f64> },
    /// The three-piece function on `n1` vertices: `(ln n1)^0.8` for
    /// `t < n1^0.1`, 11 up to `βn1`, and `2(1 + 39β)/(3β)` at `βn1`.
    FBeta { n1: usize, beta: f64 },
}

/// Every `U` with `1 ≤ |U| ≤ r` must have `|N(U)| ≥ f(|U|)·|U|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpanderProfile {
    pub r: usize,
    pub f: ExpansionFn,
}

impl ExpanderProfile {
    pub fn constant(r: usize, value: f64) -> Self {
        ExpanderProfile { r, f: ExpansionFn::Constant { value } }
    }

    pub fn table(values: Vec<f64>) -> Self {
        ExpanderProfile { r: values.len(), f: ExpansionFn::Table { values } }
    }

    /// `R = floor(β·n1)`. Sizes are integers, so `|U| = βn1` is read as
    /// `|U| = R`; when `R < n1^0.1` the first and last pieces both apply and
    /// the larger one is required.
    pub fn f_beta(n1: usize, beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::param(format!("beta must lie in (0, 1), got {beta}")));
        }
        let r = (beta * n1 as f64).floor() as usize;
        Ok(ExpanderProfile { r, f: ExpansionFn::FBeta { n1, beta } })
    }

    /// No set sizes to check.
    pub fn is_vacuous(&self) -> bool {
        self.r == 0
    }

    /// `f(t)` for `1 ≤ t ≤ r`.
    pub fn factor(&self, t: usize) -> f64 {
        match &self.f {
            ExpansionFn::Constant { value } => *value,
            ExpansionFn::Table { values } => values[t - 1],
            &ExpansionFn::FBeta { n1, beta } => {
                let n1f = n1 as f64;
                // t < n1^0.1 decided in integers
                let small = (t as u128).checked_pow(10).is_some_and(|p| p < n1 as u128);
                let mut f: f64 = 0.0;
                if small {
                    f = f.max(n1f.ln().powf(0.8));
                } else if t < self.r {
                    f = 11.0;
                }
                if t == self.r {
                    f = f.max(2.0 * (1.0 + 39.0 * beta) / (3.0 * beta));
                }
                f
            }
        }
    }

    /// `f(t)·t`, the neighborhood size demanded of a `t`-set.
    pub fn required(&self, t: usize) -> f64 {
        self.factor(t) * t as f64
    }

    pub fn validate(&self) -> Result<()> {
        if let ExpansionFn::Table { values } = &self.f {
            if values.len() < self.r {
                return Err(Error::param("expansion table shorter than r"));
            }
        }
        match (1..=self.r).find(|&t| !(self.factor(t) > 0.0)) {
            Some(t) => Err(Error::param(format!("expansion factor at t = {t} is not positive"))),
            None => Ok(()),
        }
    }
}
