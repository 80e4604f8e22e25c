//! Indicator selection by name and evaluation against a shared context.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use moind_core::indicators::{
    delta_p, entropy_indicator, gd, gd_p, hv_exact, hv_monte_carlo, igd, igd_p, EntropyOptions,
    HvConfig, MAX_EXACT_OBJECTIVES,
};
use moind_core::{Population, Problem, ReferenceFront};
use serde_json::json;

use crate::error::{usage, HarnessError, Result};
use crate::io::IndicatorValue;

pub const VALID_METRICS: &str = "igd, gd, igd_p:<p>, gd_p:<p>, delta_p:<p>, hv, entropy";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Metric {
    Igd,
    Gd,
    IgdP(f64),
    GdP(f64),
    DeltaP(f64),
    Hv,
    Entropy,
}

impl FromStr for Metric {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s.as_str(), None),
        };
        let power = || -> Result<f64> {
            let p = param.map_or(Ok(2.0), |p| {
                p.parse::<f64>().map_err(|_| usage(format!("invalid power in metric `{s}`")))
            })?;
            if p.is_finite() && p >= 1.0 {
                Ok(p)
            } else {
                Err(usage(format!("power in metric `{s}` must be >= 1")))
            }
        };
        let metric = match name {
            "igd" if param.is_none() => Metric::Igd,
            "gd" if param.is_none() => Metric::Gd,
            "hv" if param.is_none() => Metric::Hv,
            "entropy" | "h" if param.is_none() => Metric::Entropy,
            "igd_p" => Metric::IgdP(power()?),
            "gd_p" => Metric::GdP(power()?),
            "delta_p" => Metric::DeltaP(power()?),
            _ => return Err(usage(format!("unknown metric `{s}`; valid metrics: {VALID_METRICS}"))),
        };
        Ok(metric)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Igd => f.write_str("igd"),
            Metric::Gd => f.write_str("gd"),
            Metric::IgdP(p) => write!(f, "igd_p:{p}"),
            Metric::GdP(p) => write!(f, "gd_p:{p}"),
            Metric::DeltaP(p) => write!(f, "delta_p:{p}"),
            Metric::Hv => f.write_str("hv"),
            Metric::Entropy => f.write_str("entropy"),
        }
    }
}

impl Metric {
    pub fn needs_reference(self) -> bool {
        !matches!(self, Metric::Hv | Metric::Entropy)
    }

    /// Whether larger values are better.
    pub fn maximize(self) -> bool {
        self == Metric::Hv
    }
}

pub fn parse_metrics(list: &str) -> Result<Vec<Metric>> {
    let metrics: Vec<Metric> = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_>>()?;
    if metrics.is_empty() {
        return Err(usage(format!("no metrics requested; valid metrics: {VALID_METRICS}")));
    }
    Ok(metrics)
}

/// Everything an indicator may need besides the population itself.
#[derive(Debug, Clone)]
pub struct MetricContext<'a> {
    pub reference: Option<&'a ReferenceFront<f64>>,
    pub problem: Option<&'a Problem>,
    pub hv: Option<HvConfig<f64>>,
    pub entropy: EntropyOptions<f64>,
}

/// Normalised configuration when a problem is known, otherwise a raw one
/// around `reference_point`.
pub fn hv_config(
    problem: Option<&Problem>,
    reference_point: Option<Vec<f64>>,
    samples: usize,
    seed: u64,
) -> Option<HvConfig<f64>> {
    let cfg = match (reference_point, problem) {
        (Some(r), _) => HvConfig::new(r),
        (None, Some(p)) => HvConfig::normalized(p.nadir()),
        (None, None) => return None,
    };
    Some(cfg.with_samples(samples).with_seed(seed))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricOutcome {
    pub value: IndicatorValue,
    pub warnings: Vec<String>,
}

pub fn evaluate_metric(metric: Metric, pop: &Population<f64>, ctx: &MetricContext<'_>) -> Result<MetricOutcome> {
    let mut params = BTreeMap::new();
    let mut warnings = Vec::new();
    let reference = || {
        ctx.reference
            .ok_or_else(|| usage(format!("metric `{metric}` needs a reference front (--reference or --problem)")))
    };
    let value = match metric {
        Metric::Igd => igd(pop, reference()?)?,
        Metric::Gd => gd(pop, reference()?)?,
        Metric::IgdP(p) => {
            params.insert("p".into(), json!(p));
            igd_p(pop, reference()?, p)?
        }
        Metric::GdP(p) => {
            params.insert("p".into(), json!(p));
            gd_p(pop, reference()?, p)?
        }
        Metric::DeltaP(p) => {
            params.insert("p".into(), json!(p));
            delta_p(pop, reference()?, p)?
        }
        Metric::Hv => {
            let cfg = ctx
                .hv
                .as_ref()
                .ok_or_else(|| usage("metric `hv` needs --problem or --hv-ref"))?;
            params.insert("reference".into(), json!(cfg.reference));
            params.insert("normalization".into(), json!(cfg.normalization));
            let m = pop.num_objectives().unwrap_or(0);
            let (value, discarded) = if m <= MAX_EXACT_OBJECTIVES {
                params.insert("method".into(), json!("exact"));
                let v = hv_exact(pop, cfg)?;
                (v.value, v.discarded)
            } else {
                let v = hv_monte_carlo(pop, cfg)?;
                params.insert("method".into(), json!("monte_carlo"));
                params.insert("samples".into(), json!(v.samples));
                params.insert("seed".into(), json!(cfg.seed));
                params.insert("std_error".into(), json!(v.std_error));
                (v.value, v.discarded)
            };
            if discarded > 0 {
                warnings.push(format!("hv: {discarded} point(s) beyond the reference point were ignored"));
            }
            value
        }
        Metric::Entropy => {
            params.insert("qp_tol".into(), json!(ctx.entropy.tol));
            let terms = entropy_indicator(pop, ctx.problem, &ctx.entropy)?;
            if terms.unconverged > 0 {
                warnings.push(format!(
                    "entropy: {} QP solve(s) stopped at the iteration cap",
                    terms.unconverged
                ));
            }
            terms.h_value
        }
    };
    Ok(MetricOutcome {
        value: IndicatorValue { indicator: metric.to_string(), parameters: params, value },
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in ["igd", "gd", "igd_p:1", "gd_p:3", "delta_p:2", "hv", "entropy"] {
            assert_eq!(s.parse::<Metric>().unwrap().to_string(), s);
        }
        assert_eq!("delta_p".parse::<Metric>().unwrap(), Metric::DeltaP(2.0));
        assert_eq!("Delta_P:2.5".parse::<Metric>().unwrap(), Metric::DeltaP(2.5));
    }

    #[test]
    fn unknown_metric_lists_valid_names() {
        let err = parse_metrics("igd,spread").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains(VALID_METRICS));
        assert!(parse_metrics("delta_p:0.5").is_err());
        assert!(parse_metrics("igd:2").is_err());
        assert!(parse_metrics(" , ").is_err());
    }
}
