//! Bounded Levenberg–Marquardt least squares with a finite-difference Jacobian.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 10_000;

#[derive(Debug, Clone)]
pub struct Bounds {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Bounds {
    pub fn unbounded(n: usize) -> Self {
        Self {
            lower: vec![f64::NEG_INFINITY; n],
            upper: vec![f64::INFINITY; n],
        }
    }

    fn clamp(&self, x: &mut [f64]) {
        for ((v, lo), hi) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            *v = v.clamp(*lo, *hi);
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LmOptions {
    pub max_iterations: usize,
    pub ftol: f64,
    pub xtol: f64,
    pub gtol: f64,
}

impl Default for LmOptions {
    fn default() -> Self {
        Self {
            max_iterations: MAX_ITERATIONS,
            ftol: 1e-12,
            xtol: 1e-13,
            gtol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LmFit {
    pub params: Vec<f64>,
    pub sse: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl LmFit {
    pub fn residual_norm(&self) -> f64 {
        self.sse.sqrt()
    }
}

fn sse(r: &[f64]) -> f64 {
    r.iter().map(|v| v * v).sum()
}

fn eval<F>(f: &F, x: &[f64], r: &mut [f64]) -> f64
where
    F: Fn(&[f64], &mut [f64]),
{
    f(x, r);
    let s = sse(r);
    if s.is_finite() {
        s
    } else {
        f64::INFINITY
    }
}

fn jacobian<F>(f: &F, x: &[f64], bounds: &Bounds, m: usize) -> DMatrix<f64>
where
    F: Fn(&[f64], &mut [f64]),
{
    let n = x.len();
    let mut jac = DMatrix::zeros(m, n);
    let mut xp = x.to_vec();
    let mut rp = vec![0.0; m];
    let mut rm = vec![0.0; m];
    for k in 0..n {
        let h = 1e-7 * x[k].abs().max(1e-3);
        let up = (x[k] + h).min(bounds.upper[k]);
        let down = (x[k] - h).max(bounds.lower[k]);
        xp[k] = up;
        f(&xp, &mut rp);
        xp[k] = down;
        f(&xp, &mut rm);
        xp[k] = x[k];
        let span = up - down;
        if span > 0.0 {
            for i in 0..m {
                jac[(i, k)] = (rp[i] - rm[i]) / span;
            }
        }
    }
    jac
}

/// Minimizes `sum r_i(x)^2` from `x0` within `bounds`.
///
/// `residuals(x, r)` writes the `m` residuals into `r`.
pub fn levenberg_marquardt<F>(
    residuals: F,
    m: usize,
    x0: &[f64],
    bounds: &Bounds,
    opts: LmOptions,
) -> LmFit
where
    F: Fn(&[f64], &mut [f64]),
{
    let n = x0.len();
    let mut x = x0.to_vec();
    bounds.clamp(&mut x);
    let mut r = vec![0.0; m];
    let mut cost = eval(&residuals, &x, &mut r);
    let mut lambda = 1e-3;
    let mut trial = vec![0.0; n];
    let mut r_trial = vec![0.0; m];

    for iter in 1..=opts.max_iterations {
        if cost == 0.0 {
            return LmFit {
                params: x,
                sse: cost,
                iterations: iter - 1,
                converged: true,
            };
        }
        let jac = jacobian(&residuals, &x, bounds, m);
        let jt = jac.transpose();
        let a = &jt * &jac;
        let g = &jt * DVector::from_column_slice(&r);
        let max_diag = (0..n).map(|k| a[(k, k)]).fold(0.0_f64, f64::max).max(1e-300);
        let pinned = |k: usize| {
            (x[k] <= bounds.lower[k] && g[k] > 0.0) || (x[k] >= bounds.upper[k] && g[k] < 0.0)
        };
        let cosine = (0..n)
            .filter(|&k| !pinned(k) && a[(k, k)] > 0.0)
            .map(|k| g[k].abs() / (a[(k, k)] * cost).sqrt())
            .fold(0.0_f64, f64::max);
        if cosine <= opts.gtol {
            return LmFit {
                params: x,
                sse: cost,
                iterations: iter - 1,
                converged: true,
            };
        }

        loop {
            let mut damped = a.clone();
            for k in 0..n {
                damped[(k, k)] += lambda * a[(k, k)].max(1e-12 * max_diag);
            }
            let step = damped.lu().solve(&(-&g));
            let Some(step) = step else {
                lambda *= 10.0;
                if lambda > 1e20 {
                    break;
                }
                continue;
            };
            for k in 0..n {
                trial[k] = x[k] + step[k];
            }
            bounds.clamp(&mut trial);
            let new_cost = eval(&residuals, &trial, &mut r_trial);
            if new_cost < cost {
                let step_norm: f64 = x
                    .iter()
                    .zip(&trial)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                let x_norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                let small_gain = cost - new_cost <= opts.ftol * cost;
                let small_step = step_norm <= opts.xtol * (x_norm + opts.xtol);
                x.copy_from_slice(&trial);
                r.copy_from_slice(&r_trial);
                cost = new_cost;
                lambda = (lambda / 3.0).max(1e-12);
                if small_gain || small_step {
                    return LmFit {
                        params: x,
                        sse: cost,
                        iterations: iter,
                        converged: true,
                    };
                }
                break;
            }
            lambda *= 4.0;
            if lambda > 1e20 {
                break;
            }
        }
        if lambda > 1e20 {
            // No descent direction left: a (possibly bound-constrained) minimum.
            return LmFit {
                params: x,
                sse: cost,
                iterations: iter,
                converged: true,
            };
        }
    }
    LmFit {
        params: x,
        sse: cost,
        iterations: opts.max_iterations,
        converged: false,
    }
}

/// Runs [`levenberg_marquardt`] from each start and keeps the lowest SSE.
///
/// Fails only when no start converges; the error carries the best
/// non-converged point.
pub fn multi_start<F>(
    residuals: F,
    m: usize,
    starts: &[Vec<f64>],
    bounds: &Bounds,
    opts: LmOptions,
) -> Result<LmFit>
where
    F: Fn(&[f64], &mut [f64]),
{
    let fits: Vec<LmFit> = starts
        .iter()
        .map(|x0| levenberg_marquardt(&residuals, m, x0, bounds, opts))
        .collect();
    let best_converged = fits
        .iter()
        .filter(|f| f.converged && f.sse.is_finite())
        .min_by(|a, b| a.sse.total_cmp(&b.sse));
    match best_converged {
        Some(fit) => Ok(fit.clone()),
        None => {
            let best = fits
                .iter()
                .min_by(|a, b| a.sse.total_cmp(&b.sse))
                .ok_or(Error::EmptyInput("fit starts"))?;
            Err(Error::FitFailure {
                iterations: fits.iter().map(|f| f.iterations).sum(),
                best_sse: best.sse,
                best_params: best.params.clone(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fits_a_line() {
        let xs: Vec<f64> = (0..10).map(f64::from).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x - 2.0).collect();
        let fit = levenberg_marquardt(
            |p, r| {
                for i in 0..xs.len() {
                    r[i] = p[0] * xs[i] + p[1] - ys[i];
                }
            },
            xs.len(),
            &[0.0, 0.0],
            &Bounds::unbounded(2),
            LmOptions::default(),
        );
        assert!(fit.converged);
        assert!((fit.params[0] - 3.0).abs() < 1e-9);
        assert!((fit.params[1] + 2.0).abs() < 1e-9);
    }

    #[test]
    fn respects_bounds() {
        // Unconstrained minimum at 5, bounded above by 2.
        let fit = levenberg_marquardt(
            |p, r| r[0] = p[0] - 5.0,
            1,
            &[0.0],
            &Bounds {
                lower: vec![0.0],
                upper: vec![2.0],
            },
            LmOptions::default(),
        );
        assert_eq!(fit.params[0], 2.0);
        assert!(fit.converged);
    }

    #[test]
    fn iteration_cap_reports_failure() {
        let opts = LmOptions {
            max_iterations: 1,
            ..Default::default()
        };
        let err = multi_start(
            |p, r| {
                r[0] = 10.0 * (p[1] - p[0] * p[0]);
                r[1] = 1.0 - p[0];
            },
            2,
            &[vec![-1.2, 1.0]],
            &Bounds::unbounded(2),
            opts,
        )
        .unwrap_err();
        assert!(matches!(err, Error::FitFailure { .. }));
    }
}
