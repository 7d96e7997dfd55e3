//! Lorentzian dip fit for transmission spectra.

/// `T(x) = baseline − depth · w² / ((x − center)² + w²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DipFit {
    pub center: f64,
    /// Half width at half depth `w`.
    pub half_width: f64,
    pub depth: f64,
    /// Root-mean-square residual of the fit.
    pub rms: f64,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum FitError {
    #[error("need at least five samples with matching lengths")]
    BadInput,
    #[error("no dip: depth {0:e} below the detection threshold")]
    NoDip(f64),
    #[error("dip edges fall outside the sampled range")]
    Unresolved,
    #[error("least-squares refinement did not converge")]
    NoConvergence,
}

/// Smallest dip depth that is fitted.
pub const MIN_DEPTH: f64 = 1e-9;

/// Fits a Lorentzian dip below `baseline`. The half-depth crossings seed a
/// Gauss-Newton refinement of center, width and depth.
pub fn fit_lorentzian_dip(x: &[f64], y: &[f64], baseline: f64) -> Result<DipFit, FitError> {
    if x.len() != y.len() || x.len() < 5 {
        return Err(FitError::BadInput);
    }
    let (i_min, y_min) = y
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or(FitError::BadInput)?;
    let depth = baseline - y_min;
    if !(depth > MIN_DEPTH) {
        return Err(FitError::NoDip(depth));
    }
    let half = baseline - 0.5 * depth;
    let left = (0..i_min).rev().find(|&i| y[i] >= half).ok_or(FitError::Unresolved)?;
    let right = (i_min + 1..y.len()).find(|&i| y[i] >= half).ok_or(FitError::Unresolved)?;
    let cross = |a: usize, b: usize| x[a] + (half - y[a]) * (x[b] - x[a]) / (y[b] - y[a]);
    let x_left = cross(left, left + 1);
    let x_right = cross(right - 1, right);

    let mut p = [0.5 * (x_left + x_right), 0.5 * (x_right - x_left), depth];
    for _ in 0..50 {
        let step = gauss_newton_step(x, y, baseline, &p).ok_or(FitError::NoConvergence)?;
        for (v, s) in p.iter_mut().zip(step) {
            *v += s;
        }
        p[1] = p[1].abs();
        if step[0].abs() <= 1e-13 * p[1] && step[1].abs() <= 1e-13 * p[1] && step[2].abs() <= 1e-13 * p[2].abs() {
            break;
        }
    }
    if !p.iter().all(|v| v.is_finite()) || p[1] == 0.0 {
        return Err(FitError::NoConvergence);
    }
    let rms = (x
        .iter()
        .zip(y)
        .map(|(xi, yi)| (yi - model(*xi, baseline, &p)).powi(2))
        .sum::<f64>()
        / x.len() as f64)
        .sqrt();
    Ok(DipFit {
        center: p[0],
        half_width: p[1],
        depth: p[2],
        rms,
    })
}

fn model(x: f64, baseline: f64, p: &[f64; 3]) -> f64 {
    let (c, w, d) = (p[0], p[1], p[2]);
    baseline - d * w * w / ((x - c) * (x - c) + w * w)
}

fn gauss_newton_step(x: &[f64], y: &[f64], baseline: f64, p: &[f64; 3]) -> Option<[f64; 3]> {
    let (c, w, d) = (p[0], p[1], p[2]);
    let mut jtj = [[0.0; 3]; 3];
    let mut jtr = [0.0; 3];
    for (&xi, &yi) in x.iter().zip(y) {
        let u = (xi - c) * (xi - c);
        let den = u + w * w;
        let shape = w * w / den;
        let grad = [
            -d * 2.0 * w * w * (xi - c) / (den * den),
            -d * 2.0 * w * u / (den * den),
            -shape,
        ];
        let r = yi - model(xi, baseline, p);
        for a in 0..3 {
            jtr[a] += grad[a] * r;
            for b in 0..3 {
                jtj[a][b] += grad[a] * grad[b];
            }
        }
    }
    solve3(jtj, jtr)
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn solve3(m: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = det3(&m);
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    let mut out = [0.0; 3];
    for (col, slot) in out.iter_mut().enumerate() {
        let mut mc = m;
        for row in 0..3 {
            mc[row][col] = b[row];
        }
        *slot = det3(&mc) / det;
    }
    Some(out)
}
