//! Derivative-free minimization: Nelder–Mead and an augmented Lagrangian
//! wrapper for a single equality constraint.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    pub initial_step: f64,
    pub max_evals: usize,
    /// Stop once the spread of simplex values drops below this.
    pub f_tol: f64,
    /// ... and the simplex diameter below this.
    pub x_tol: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.25,
            max_evals: 20_000,
            f_tol: 1e-14,
            x_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
}

/// Nelder–Mead simplex search with the standard coefficients
/// (reflection 1, expansion 2, contraction ½, shrink ½).
pub fn nelder_mead(f: impl Fn(&[f64]) -> f64, x0: &[f64], opts: &NelderMeadOptions) -> Minimum {
    let n = x0.len();
    let evals = core::cell::Cell::new(0usize);
    let eval = |x: &[f64]| {
        evals.set(evals.get() + 1);
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += if x[i] == 0.0 {
            opts.initial_step
        } else {
            opts.initial_step * x[i].abs().max(1.0)
        };
        simplex.push(x);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| eval(x)).collect();
    let mut centroid = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut trial2 = vec![0.0; n];

    loop {
        // Order best to worst.
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread = values[n] - values[0];
        let diameter = simplex[1..]
            .iter()
            .map(|x| {
                x.iter()
                    .zip(&simplex[0])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if (spread <= opts.f_tol && diameter <= opts.x_tol) || evals.get() >= opts.max_evals {
            break;
        }

        centroid.iter_mut().for_each(|c| *c = 0.0);
        for x in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let worst = &simplex[n];
        for i in 0..n {
            trial[i] = centroid[i] + (centroid[i] - worst[i]);
        }
        let fr = eval(&trial);

        if fr < values[0] {
            for i in 0..n {
                trial2[i] = centroid[i] + 2.0 * (centroid[i] - worst[i]);
            }
            let fe = eval(&trial2);
            if fe < fr {
                simplex[n].copy_from_slice(&trial2);
                values[n] = fe;
            } else {
                simplex[n].copy_from_slice(&trial);
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n].copy_from_slice(&trial);
            values[n] = fr;
            continue;
        }
        // Contraction, outside or inside.
        let outside = fr < values[n];
        for i in 0..n {
            trial2[i] = if outside {
                centroid[i] + 0.5 * (trial[i] - centroid[i])
            } else {
                centroid[i] + 0.5 * (worst[i] - centroid[i])
            };
        }
        let fc = eval(&trial2);
        if fc < fr.min(values[n]) {
            simplex[n].copy_from_slice(&trial2);
            values[n] = fc;
            continue;
        }
        // Shrink towards the best vertex.
        for k in 1..=n {
            for i in 0..n {
                simplex[k][i] = simplex[0][i] + 0.5 * (simplex[k][i] - simplex[0][i]);
            }
            values[k] = eval(&simplex[k]);
        }
    }

    let best = (0..=n)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap_or(0);
    Minimum {
        x: simplex[best].clone(),
        value: values[best],
        evals: evals.get(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AugLagOptions {
    pub penalty: f64,
    pub penalty_growth: f64,
    pub max_penalty: f64,
    pub outer_iters: usize,
    /// Target `|h(x)|`.
    pub constraint_tol: f64,
    pub inner: NelderMeadOptions,
}

impl Default for AugLagOptions {
    fn default() -> Self {
        Self {
            penalty: 10.0,
            penalty_growth: 10.0,
            max_penalty: 1e12,
            outer_iters: 30,
            constraint_tol: 1e-10,
            inner: NelderMeadOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstrainedMinimum {
    pub x: Vec<f64>,
    pub objective: f64,
    pub residual: f64,
}

/// Minimizes `f(x)` subject to `h(x) = 0` with the augmented Lagrangian
/// `f + λh + ½μh²`, updating the multiplier after each inner solve and
/// growing `μ` whenever the residual fails to shrink fourfold.
pub fn augmented_lagrangian(
    f: impl Fn(&[f64]) -> f64,
    h: impl Fn(&[f64]) -> f64,
    x0: &[f64],
    opts: &AugLagOptions,
) -> ConstrainedMinimum {
    let mut x = x0.to_vec();
    let mut lambda = 0.0;
    let mut mu = opts.penalty;
    let mut prev = h(&x).abs();
    let mut inner = opts.inner;
    for _ in 0..opts.outer_iters {
        let m = nelder_mead(
            |y| {
                let c = h(y);
                f(y) + lambda * c + 0.5 * mu * c * c
            },
            &x,
            &inner,
        );
        x = m.x;
        let c = h(&x);
        lambda += mu * c;
        if c.abs() <= opts.constraint_tol {
            break;
        }
        if c.abs() > 0.25 * prev {
            mu = (mu * opts.penalty_growth).min(opts.max_penalty);
        }
        prev = c.abs();
        // Later solves start close to the answer.
        inner.initial_step = (inner.initial_step * 0.5).max(1e-4);
    }
    ConstrainedMinimum {
        objective: f(&x),
        residual: h(&x).abs(),
        x,
    }
}

/// Golden-section search for a minimum of a unimodal `f` on `[a, b]`.
pub fn golden_section(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (a, b);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}
