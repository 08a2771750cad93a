//! Finite differences with Richardson extrapolation, used by the residual
//! oracles to differentiate quantities that are only available by evaluation.

/// Plain second-order central difference with step `h`.
pub fn central_diff<F: FnMut(f64) -> f64>(mut f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Central difference refined by Richardson extrapolation.
///
/// Starts at `h0`, halves the step a few times, and extrapolates; returns the
/// best estimate together with an error indicator (difference between the
/// last two extrapolation levels).
pub fn central_diff_richardson<F: FnMut(f64) -> f64>(
    mut f: F,
    x: f64,
    h0: f64,
    levels: usize,
) -> (f64, f64) {
    let levels = levels.clamp(2, 10);
    let mut tab = vec![vec![0.0f64; levels]; levels];
    let mut h = h0;
    for i in 0..levels {
        tab[i][0] = (f(x + h) - f(x - h)) / (2.0 * h);
        let mut pow4 = 4.0;
        for j in 1..=i {
            tab[i][j] = (pow4 * tab[i][j - 1] - tab[i - 1][j - 1]) / (pow4 - 1.0);
            pow4 *= 4.0;
        }
        h *= 0.5;
    }
    let best = tab[levels - 1][levels - 1];
    let err = (best - tab[levels - 2][levels - 2]).abs();
    (best, err)
}
