use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Least-squares line through `(ln t, ln value)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub slope: f64,
    pub intercept: f64,
    /// Largest absolute residual of the fit in log space.
    pub max_residual: f64,
    pub window: [f64; 2],
    pub points: usize,
}

/// Smallest number of samples accepted by [`decay_fit`].
pub const MIN_FIT_POINTS: usize = 6;

/// Fits `value ≈ e^{intercept} t^{slope}` over samples with `t` inside the
/// closed window.
pub fn decay_fit(series: &[(f64, f64)], window: [f64; 2]) -> Result<DecayFit> {
    if !(window[0] > 0.0 && window[1] > window[0]) {
        return Err(Error::InvalidArgument(format!("fit window {window:?} must satisfy 0 < t_min < t_max")));
    }
    let pts: Vec<(f64, f64)> = series
        .iter()
        .filter(|(t, _)| *t >= window[0] && *t <= window[1])
        .copied()
        .collect();
    if pts.len() < MIN_FIT_POINTS {
        return Err(Error::InvalidArgument(format!(
            "decay fit needs at least {MIN_FIT_POINTS} samples in the window, got {}",
            pts.len()
        )));
    }
    if let Some((t, v)) = pts.iter().find(|(_, v)| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::InvalidArgument(format!("nonpositive value {v} at t = {t}")));
    }
    let logs: Vec<(f64, f64)> = pts.iter().map(|(t, v)| (t.ln(), v.ln())).collect();
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = logs
        .iter()
        .map(|(x, y)| (y - intercept - slope * x).abs())
        .fold(0.0, f64::max);
    Ok(DecayFit {
        slope,
        intercept,
        max_residual,
        window,
        points: pts.len(),
    })
}

/// Exponent `p` with `a / b = (εa / εb)^p`, from a quantity measured at two
/// amplitudes.
pub fn scaling_exponent(value_a: f64, value_b: f64, eps_a: f64, eps_b: f64) -> f64 {
    (value_a / value_b).ln() / (eps_a / eps_b).ln()
}
