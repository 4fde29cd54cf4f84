use serde::{Deserialize, Serialize};

use crate::error::{KgError, Result};

/// Least-squares line through `(log x, log y)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    /// `log y` at `log x = 0`, so `y ≈ e^{intercept}·x^{slope}`
    pub intercept: f64,
    pub used: usize,
    /// Indices left out because they sat below the floor.
    pub excluded: Vec<usize>,
}

impl SlopeFit {
    /// The fitted constant `C` in `y ≈ C x^{slope}`.
    pub fn constant(&self) -> f64 {
        self.intercept.exp()
    }
}

/// Fits `log y = a + p log x`, ignoring points with `y < floor`. Needs at
/// least three usable points.
pub fn fit_loglog(x: &[f64], y: &[f64], floor: f64) -> Result<SlopeFit> {
    if x.len() != y.len() {
        return Err(KgError::Fit(format!(
            "{} abscissae for {} values",
            x.len(),
            y.len()
        )));
    }
    let mut excluded = Vec::new();
    let mut pts = Vec::new();
    for (i, (&xi, &yi)) in x.iter().zip(y).enumerate() {
        if !(xi > 0.0 && xi.is_finite() && yi.is_finite() && yi > 0.0) {
            return Err(KgError::Fit(format!(
                "point {i} = ({xi}, {yi}) is not positive and finite"
            )));
        }
        if yi < floor {
            excluded.push(i);
        } else {
            pts.push((xi.ln(), yi.ln()));
        }
    }
    if pts.len() < 3 {
        return Err(KgError::Fit(format!(
            "{} usable points, at least 3 needed ({} below the floor {floor:e})",
            pts.len(),
            excluded.len()
        )));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(KgError::Fit("all abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    Ok(SlopeFit {
        slope,
        intercept: my - slope * mx,
        used: pts.len(),
        excluded,
    })
}

/// Error-versus-step slope of one curve.
pub fn fit_slope(taus: &[f64], errors: &[f64], floor: f64) -> Result<SlopeFit> {
    fit_loglog(taus, errors, floor)
}
