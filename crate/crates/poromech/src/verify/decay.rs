//! Exponential-decay slope fits for transient vorticity probes.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Samples with |omega| below this floor are unusable for a log fit.
pub const DECAY_FLOOR: f64 = 1e-14;

/// Result of a least-squares fit of `ln |omega(t) / omega(t0)|` against t.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DecayFit {
    pub slope: f64,
    /// Theoretical slope -alpha/rho the fit is compared against.
    pub target: f64,
    pub points_used: usize,
}

/// Fits the decay slope over the trailing window of a (t, omega) series.
///
/// The fit window starts at 0.2 of the series span, skipping the projection
/// transient of non-solenoidal initial data. Sign changes inside the window
/// mean the signal is not a clean exponential and are reported as errors, as
/// is a window with fewer than 5 usable samples.
pub fn decay_slope(series: &[(f64, f64)], target: f64) -> Result<DecayFit> {
    if series.len() < 5 {
        return Err(Error::Verification(format!(
            "decay fit needs at least 5 samples, got {}",
            series.len()
        )));
    }
    let t0 = series.first().unwrap().0;
    let t1 = series.last().unwrap().0;
    let window_start = t0 + 0.2 * (t1 - t0);
    let window: Vec<(f64, f64)> = series
        .iter()
        .copied()
        .filter(|(t, _)| *t >= window_start)
        .collect();
    let usable: Vec<(f64, f64)> = window
        .iter()
        .copied()
        .filter(|(_, w)| w.abs() > DECAY_FLOOR)
        .collect();
    if usable.len() < 5 {
        return Err(Error::Verification(format!(
            "only {} samples above the {DECAY_FLOOR:.0e} floor in the fit window; \
             no decay measurable",
            usable.len()
        )));
    }
    let sign = usable[0].1.signum();
    if usable.iter().any(|(_, w)| w.signum() != sign) {
        return Err(Error::Verification(
            "vorticity changes sign inside the fit window".into(),
        ));
    }
    let w0 = usable[0].1.abs();
    let tref = usable[0].0;
    // Least squares for ln|w/w0| = slope (t - tref) + c.
    let n = usable.len() as f64;
    let (mut st, mut sy, mut stt, mut sty) = (0.0, 0.0, 0.0, 0.0);
    for &(t, w) in &usable {
        let x = t - tref;
        let y = (w.abs() / w0).ln();
        st += x;
        sy += y;
        stt += x * x;
        sty += x * y;
    }
    let denom = n * stt - st * st;
    if denom.abs() < f64::EPSILON * stt.max(1.0) {
        return Err(Error::Verification(
            "degenerate time samples in decay fit".into(),
        ));
    }
    let slope = (n * sty - st * sy) / denom;
    Ok(DecayFit {
        slope,
        target,
        points_used: usable.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_exponential_recovers_slope() {
        let series: Vec<(f64, f64)> = (0..=100)
            .map(|i| {
                let t = i as f64 * 0.01;
                (t, 3.0 * (-t).exp())
            })
            .collect();
        let fit = decay_slope(&series, -1.0).unwrap();
        assert!((fit.slope + 1.0).abs() < 1e-12, "{}", fit.slope);
    }

    #[test]
    fn backward_euler_recurrence_slope() {
        // w_{n+1} = w_n / (1 + alpha dt / rho): the log-slope is
        // -ln(1 + dt)/dt for alpha = rho = 1.
        let dt = 0.01;
        let mut w = 1.0;
        let mut series = vec![(0.0, w)];
        for i in 1..=100 {
            w /= 1.0 + dt;
            series.push((i as f64 * dt, w));
        }
        let fit = decay_slope(&series, -1.0).unwrap();
        let expect = -((1.0 + dt).ln() / dt);
        assert!(
            (fit.slope - expect).abs() < 1e-10,
            "{} vs {expect}",
            fit.slope
        );
        assert!((fit.slope + 0.995_033).abs() < 1e-4);
    }

    #[test]
    fn short_series_rejected() {
        let series = vec![(0.0, 1.0), (0.1, 0.9), (0.2, 0.8), (0.3, 0.7)];
        assert!(decay_slope(&series, -1.0).is_err());
    }

    #[test]
    fn sub_floor_series_rejected() {
        let series: Vec<(f64, f64)> = (0..=10).map(|i| (i as f64 * 0.1, 1e-16)).collect();
        let err = decay_slope(&series, -1.0).unwrap_err();
        assert!(err.to_string().contains("floor"));
    }

    #[test]
    fn sign_change_reported() {
        let series: Vec<(f64, f64)> = (0..=20)
            .map(|i| {
                let t = i as f64 * 0.1;
                (t, (1.0 - t).max(-0.5) + if t > 1.0 { -0.1 } else { 0.0 })
            })
            .collect();
        let err = decay_slope(&series, -1.0).unwrap_err();
        assert!(err.to_string().contains("sign"), "{err}");
    }
}
