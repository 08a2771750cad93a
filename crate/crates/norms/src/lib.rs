//! Grid-based lower-bound estimators for sup, Hölder and gradient norms of
//! sampled scalar fields.
//!
//! All estimates are suprema over finite pair sets, hence lower bounds of
//! the true norms. The pair set is every axis-aligned grid pair (which
//! contains all dyadic separations) plus a seeded batch of random grid
//! pairs; with that choice the marginal recombination inequality
//! c_alpha <= marginal_1 + marginal_2 holds on every report, because any
//! pair quotient splits through the on-grid corner point.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NormError {
    #[error("alpha must lie in (0,1), got {0}")]
    AlphaOutOfRange(f64),
    #[error("grid must be at least 8x8, got {0}x{1}")]
    GridTooSmall(usize, usize),
    #[error("degenerate box: widths must be positive")]
    DegenerateBox,
}

/// Estimator configuration: Hölder exponent, random-pair budget and seed.
#[derive(Debug, Clone, Copy)]
pub struct HolderConfig {
    pub alpha: f64,
    pub random_pairs: usize,
    pub seed: u64,
}

impl Default for HolderConfig {
    fn default() -> Self {
        HolderConfig {
            alpha: 0.5,
            random_pairs: 50_000,
            seed: 0,
        }
    }
}

/// Lower-bound norm estimates of one sampled field.
#[derive(Debug, Clone)]
pub struct NormReport {
    pub field: String,
    pub t: f64,
    pub alpha: f64,
    pub sup: f64,
    pub c_alpha: f64,
    pub c1: f64,
    pub c1_alpha: f64,
    pub marginal_1: f64,
    pub marginal_2: f64,
    pub grid: (usize, usize),
    pub pairs: usize,
}

/// Estimate norms of `f` on the box `bx x by` from an (nx+1)x(ny+1) grid.
pub fn holder_estimate(
    f: impl Fn([f64; 2]) -> f64,
    bx: [f64; 2],
    by: [f64; 2],
    nx: usize,
    ny: usize,
    cfg: &HolderConfig,
) -> Result<NormReport, NormError> {
    if !(cfg.alpha > 0.0 && cfg.alpha < 1.0) {
        return Err(NormError::AlphaOutOfRange(cfg.alpha));
    }
    if nx < 8 || ny < 8 {
        return Err(NormError::GridTooSmall(nx, ny));
    }
    let (wx, wy) = (bx[1] - bx[0], by[1] - by[0]);
    if !(wx > 0.0 && wy > 0.0) {
        return Err(NormError::DegenerateBox);
    }
    let (hx, hy) = (wx / nx as f64, wy / ny as f64);
    let point = |i: usize, j: usize| [bx[0] + i as f64 * hx, by[0] + j as f64 * hy];

    let mut v = vec![0.0f64; (nx + 1) * (ny + 1)];
    for i in 0..=nx {
        for j in 0..=ny {
            v[i * (ny + 1) + j] = f(point(i, j));
        }
    }
    let at = |i: usize, j: usize| v[i * (ny + 1) + j];

    let alpha = cfg.alpha;
    let mut sup = 0.0f64;
    for &x in &v {
        sup = sup.max(x.abs());
    }

    // Marginals: every axis-aligned pair.
    let mut marginal_1 = 0.0f64;
    let mut marginal_2 = 0.0f64;
    let mut pairs = 0usize;
    for j in 0..=ny {
        for i in 0..=nx {
            for i2 in i + 1..=nx {
                let d = (i2 - i) as f64 * hx;
                marginal_1 = marginal_1.max((at(i2, j) - at(i, j)).abs() / d.powf(alpha));
                pairs += 1;
            }
        }
    }
    for i in 0..=nx {
        for j in 0..=ny {
            for j2 in j + 1..=ny {
                let d = (j2 - j) as f64 * hy;
                marginal_2 = marginal_2.max((at(i, j2) - at(i, j)).abs() / d.powf(alpha));
                pairs += 1;
            }
        }
    }

    // Joint estimate: axis pairs plus seeded random grid pairs.
    let mut c_alpha = marginal_1.max(marginal_2);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut random_pairs: Vec<(usize, usize, usize, usize)> = Vec::with_capacity(cfg.random_pairs);
    while random_pairs.len() < cfg.random_pairs {
        let (i, j) = (rng.gen_range(0..=nx), rng.gen_range(0..=ny));
        let (i2, j2) = (rng.gen_range(0..=nx), rng.gen_range(0..=ny));
        if i == i2 && j == j2 {
            continue;
        }
        random_pairs.push((i, j, i2, j2));
    }
    for &(i, j, i2, j2) in &random_pairs {
        let dx = (i2 as f64 - i as f64) * hx;
        let dy = (j2 as f64 - j as f64) * hy;
        let d = dx.hypot(dy);
        c_alpha = c_alpha.max((at(i2, j2) - at(i, j)).abs() / d.powf(alpha));
        pairs += 1;
    }

    // Gradient estimates by interior central differences.
    let grad = |i: usize, j: usize| {
        [
            (at(i + 1, j) - at(i - 1, j)) / (2.0 * hx),
            (at(i, j + 1) - at(i, j - 1)) / (2.0 * hy),
        ]
    };
    let mut c1 = 0.0f64;
    for i in 1..nx {
        for j in 1..ny {
            let g = grad(i, j);
            c1 = c1.max(g[0].hypot(g[1]));
        }
    }

    // Hölder quotient of the FD gradient over interior pairs.
    let interior = |i: usize, j: usize| i >= 1 && i < nx && j >= 1 && j < ny;
    let mut c1_alpha = 0.0f64;
    let grad_pair = |i: usize, j: usize, i2: usize, j2: usize, c1_alpha: &mut f64| {
        if interior(i, j) && interior(i2, j2) {
            let (g, g2) = (grad(i, j), grad(i2, j2));
            let dx = (i2 as f64 - i as f64) * hx;
            let dy = (j2 as f64 - j as f64) * hy;
            let d = dx.hypot(dy);
            *c1_alpha = (*c1_alpha).max((g2[0] - g[0]).hypot(g2[1] - g[1]) / d.powf(alpha));
        }
    };
    for j in 1..ny {
        for i in 1..nx {
            for i2 in i + 1..nx {
                grad_pair(i, j, i2, j, &mut c1_alpha);
            }
        }
    }
    for i in 1..nx {
        for j in 1..ny {
            for j2 in j + 1..ny {
                grad_pair(i, j, i, j2, &mut c1_alpha);
            }
        }
    }
    for &(i, j, i2, j2) in &random_pairs {
        grad_pair(i, j, i2, j2, &mut c1_alpha);
    }

    Ok(NormReport {
        field: String::new(),
        t: 0.0,
        alpha,
        sup,
        c_alpha,
        c1,
        c1_alpha,
        marginal_1,
        marginal_2,
        grid: (nx, ny),
        pairs,
    })
}
