use crate::error::{usage, Result};

/// Mean and population standard deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub std: f64,
}

/// Arithmetic mean and population standard deviation (divides by the count).
pub fn summarize(values: &[f64]) -> Result<Summary> {
    if values.is_empty() {
        return Err(usage("cannot summarise an empty list"));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.iter().all(|&v| v == values[0]) {
        return Ok(Summary { mean: values[0], std: 0.0 });
    }
    // Welford keeps the update stable for long, tightly clustered series.
    let (mut m, mut s) = (0.0, 0.0);
    for (i, &v) in values.iter().enumerate() {
        let d = v - m;
        m += d / (i + 1) as f64;
        s += d * (v - m);
    }
    Ok(Summary { mean, std: (s / n).max(0.0).sqrt() })
}

/// Median; averages the middle pair for even lengths.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[mid] } else { 0.5 * (v[mid - 1] + v[mid]) })
}

/// Ordinary least-squares line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(usage("linear fit needs two equally long series of length >= 2"));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(usage("linear fit needs at least two distinct x values"));
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(LinearFit { slope, intercept: my - slope * mx, r_squared })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_examples() {
        assert_eq!(summarize(&[1.0, 1.0, 1.0]).unwrap(), Summary { mean: 1.0, std: 0.0 });
        assert_eq!(summarize(&[0.0, 2.0]).unwrap(), Summary { mean: 1.0, std: 1.0 });
        assert!(summarize(&[]).is_err());
    }

    #[test]
    fn summary_matches_two_pass() {
        let mut x = 0.3_f64;
        let values: Vec<f64> = (0..200)
            .map(|_| {
                x = (x * 3.7 * (1.0 - x)).abs();
                x * 10.0 + 5.0
            })
            .collect();
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let s = summarize(&values).unwrap();
        assert!((s.mean - mean).abs() < 1e-12);
        assert!((s.std - var.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn median_and_fit() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(&[]), None);
        let f = linear_fit(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-15 && f.intercept.abs() < 1e-15);
        assert_eq!(f.r_squared, 1.0);
        let g = linear_fit(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]).unwrap();
        assert!((g.r_squared - 0.64).abs() < 1e-12);
    }
}
