//! Rate fits over convergence sweeps.

/// Errors below this are treated as roundoff and left out of fits.
pub const ROUNDOFF_FLOOR: f64 = 1e-12;

/// Least-squares slope of `y` against `x`; `None` with fewer than two
/// distinct abscissae.
pub fn ls_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len().min(y.len());
    if n < 2 {
        return None;
    }
    let mx = x[..n].iter().sum::<f64>() / n as f64;
    let my = y[..n].iter().sum::<f64>() / n as f64;
    let sxx: f64 = x[..n].iter().map(|v| (v - mx) * (v - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = x[..n].iter().zip(&y[..n]).map(|(a, b)| (a - mx) * (b - my)).sum();
    Some(sxy / sxx)
}

fn usable(points: &[(usize, f64)]) -> impl Iterator<Item = (f64, f64)> + '_ {
    points.iter().filter(|(_, e)| e.is_finite() && *e >= ROUNDOFF_FLOOR).map(|&(n, e)| (n as f64, e))
}

/// Algebraic rate `p` in `error ~ N_r^{-p}`: minus the slope of
/// `ln error` against `ln N_r`.
pub fn algebraic_rate(points: &[(usize, f64)]) -> Option<f64> {
    let (x, y): (Vec<f64>, Vec<f64>) = usable(points).map(|(n, e)| (n.ln(), e.ln())).unzip();
    ls_slope(&x, &y).map(|s| -s)
}

/// Slope of `log10 error` against `N_r`; negative for exponential decay.
pub fn exponential_slope(points: &[(usize, f64)]) -> Option<f64> {
    let (x, y): (Vec<f64>, Vec<f64>) = usable(points).map(|(n, e)| (n, e.log10())).unzip();
    ls_slope(&x, &y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_power_law() {
        let pts: Vec<(usize, f64)> = [9, 13, 17, 21].iter().map(|&n| (n, 3.0 * (n as f64).powf(-4.5))).collect();
        assert!((algebraic_rate(&pts).unwrap() - 4.5).abs() < 1e-12);
    }

    #[test]
    fn recovers_exponential() {
        let pts: Vec<(usize, f64)> = [8, 12, 16].iter().map(|&n| (n, 10f64.powf(-0.5 * n as f64))).collect();
        assert!((exponential_slope(&pts).unwrap() + 0.5).abs() < 1e-12);
    }

    #[test]
    fn floor_points_are_dropped() {
        let pts = [(9, 1e-3), (13, 1e-4), (17, 1e-15), (21, 0.0)];
        let want = -(1e-4f64.ln() - 1e-3f64.ln()) / (13f64.ln() - 9f64.ln());
        assert!((algebraic_rate(&pts).unwrap() - want).abs() < 1e-12);
        assert!(algebraic_rate(&[(9, 1e-3), (13, 0.0)]).is_none());
    }
}
