use bellcert_core::bell::{bell_value, bounds};
use bellcert_core::estimation::{
    bound, distillable_curve, ClosureBranch, CONVEXITY_TOL, SUPER_QUANTUM_TOL,
};
use bellcert_core::interplay::{interplay_scan, InterplayOptions, StateFamily, CONSTRAINT_TOL};
use bellcert_core::locc::locc_to_bell_diagonal;
use bellcert_core::sampling::{random_pure_state, random_quad, random_state, rng_from_seed};
use bellcert_core::scenarios::{alpha_scan, ScenarioState};
use bellcert_core::{AssumptionLevel, BellScenario, Error, MeasureKind};
use rand::Rng;
use serde_json::Value;

use crate::report::{Meta, ReportEnvelope, Row};
use crate::{
    row, state_file, EstimateArgs, Failure, InterplayArgs, LevelArg, LoccArgs, ScanArgs, StateArg,
};

pub type Outcome = Result<(ReportEnvelope, Result<(), String>), Failure>;

const LOCC_TOL: f64 = 1e-9;
const BATTERY: usize = 20;
const MAX_GRID: usize = 1_000_000;

/// Folds `-0.0` into `0.0` so that output bytes do not depend on the sign of zero.
fn clean(x: f64) -> f64 {
    x + 0.0
}

fn opt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, |v| Value::from(clean(v)))
}

fn meta(seed: u64, tolerances: Row) -> Meta {
    Meta {
        seed,
        tolerances,
        version: env!("CARGO_PKG_VERSION"),
    }
}

fn level_name(level: LevelArg) -> &'static str {
    AssumptionLevel::from(level).as_str()
}

pub fn estimate(a: &EstimateArgs) -> Outcome {
    let kind = MeasureKind::from(a.measure);
    let level = AssumptionLevel::from(a.level);
    let (s, alpha) = (a.bell_value, a.alpha);
    bounds(alpha)?;

    let mut summary = Vec::new();
    let result = match bound(kind, s, alpha, level) {
        Err(Error::NoViolation { .. }) => None,
        Err(e) => return Err(e.into()),
        Ok(b) => Some(b),
    };
    let mut value = result.map_or(0.0, |b| b.value);
    if kind == MeasureKind::OneWayDistillable && level == AssumptionLevel::DeviceIndependent {
        let curve = distillable_curve(alpha, 100)?;
        if curve.branch == ClosureBranch::ClosureApplied && result.is_some() {
            value = interpolate(&curve.s, &curve.device_independent, s);
        }
        let branch = match curve.branch {
            ClosureBranch::Convex => "convex",
            ClosureBranch::ClosureApplied => "closure_applied",
        };
        summary.push(row! {
            "closure_branch" => branch,
            "min_second_difference" => curve.min_second_difference,
        });
    }

    let spectrum = result.and_then(|b| b.extremal_spectrum).map(|s| s.lambda());
    let lambda = |i: usize| opt(spectrum.map(|l| l[i]));
    let rows = vec![row! {
        "alpha" => alpha,
        "s" => s,
        "level" => level.as_str(),
        "measure" => kind.as_str(),
        "value" => clean(value),
        "lambda1" => lambda(0),
        "lambda2" => lambda(1),
        "lambda3" => lambda(2),
        "lambda4" => lambda(3),
        "theta" => opt(result.and_then(|b| b.extremal_theta)),
    }];
    let report = ReportEnvelope {
        command: "estimate",
        inputs: row! {
            "alpha" => alpha,
            "bell_value" => s,
            "measure" => kind.as_str(),
            "level" => level.as_str(),
        },
        rows,
        meta: meta(
            0,
            row! { "super_quantum" => SUPER_QUANTUM_TOL, "convexity" => CONVEXITY_TOL },
        ),
        summary,
    };
    Ok((report, Ok(())))
}

fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let k = xs.partition_point(|&v| v < x).clamp(1, xs.len() - 1);
    let t = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
    ys[k - 1] + t * (ys[k] - ys[k - 1])
}

fn alpha_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>, Failure> {
    let valid = min.is_finite() && max.is_finite() && step.is_finite();
    if !valid || min < 1.0 || max < min || step <= 0.0 {
        return Err(Failure::Input(
            "invalid alpha grid: need 1 <= alpha-min <= alpha-max and alpha-step > 0".into(),
        ));
    }
    let n = ((max - min) / step + 1e-9).floor();
    if n >= MAX_GRID as f64 {
        return Err(Failure::Input("invalid alpha grid: too many points".into()));
    }
    Ok((0..=n as usize).map(|k| min + step * k as f64).collect())
}

pub fn scan_alpha(a: &ScanArgs) -> Outcome {
    let spec = match a.state {
        StateArg::Pure => ScenarioState::Pure { delta: a.param },
        StateArg::Werner => ScenarioState::Werner { p: a.param },
    };
    let grid = alpha_grid(a.alpha_min, a.alpha_max, a.alpha_step)?;
    let measures: Vec<MeasureKind> = if a.measure.is_empty() {
        MeasureKind::ALL.to_vec()
    } else {
        a.measure.iter().map(|&m| m.into()).collect()
    };
    let level = AssumptionLevel::from(a.level);
    let scan = alpha_scan(&spec, &a.thetas, &grid, &measures, level)?;

    let rows = (0..grid.len())
        .map(|k| {
            let mut r = row! { "alpha" => scan.alpha_grid[k], "s" => clean(scan.s_values[k]) };
            for (kind, col) in &scan.bounds {
                r.insert(kind.as_str().into(), Value::from(clean(col[k])));
            }
            r
        })
        .collect();
    let summary = scan
        .best_alpha
        .iter()
        .map(|&(kind, best)| {
            let col = scan.bounds_for(kind).unwrap_or_default();
            let top = col.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            row! { "measure" => kind.as_str(), "best_alpha" => best, "bound" => clean(top) }
        })
        .collect();
    let (state, param_name) = match a.state {
        StateArg::Pure => ("pure", "delta"),
        StateArg::Werner => ("werner", "p"),
    };
    let report = ReportEnvelope {
        command: "scan-alpha",
        inputs: row! {
            "state" => state,
            param_name => a.param,
            "thetas" => a.thetas,
            "alpha_min" => a.alpha_min,
            "alpha_max" => a.alpha_max,
            "alpha_step" => a.alpha_step,
            "level" => level_name(a.level),
            "measures" => measures.iter().map(|m| m.as_str()).collect::<Vec<_>>(),
        },
        rows,
        meta: meta(0, row! { "super_quantum" => SUPER_QUANTUM_TOL }),
        summary,
    };
    Ok((report, Ok(())))
}

pub fn interplay(a: &InterplayArgs) -> Outcome {
    if a.restarts == 0 {
        return Err(Failure::Input("restarts must be positive".into()));
    }
    let kind = MeasureKind::from(a.measure);
    let opts = InterplayOptions {
        restarts: a.restarts,
        seed: a.seed,
        family: StateFamily::BellDiagonal,
    };
    let curves = interplay_scan(&a.s_list, a.alpha, a.theta_steps, kind, &opts)?;
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for c in &curves {
        for p in &c.points {
            rows.push(row! { "s" => c.s, "theta" => clean(p.theta), "e_min" => clean(p.e_min) });
        }
        summary.push(row! {
            "s" => c.s,
            "theta_min" => clean(c.theta_min),
            "theta_max" => clean(c.theta_max),
            "theta_at_min" => clean(c.minimizer.theta),
            "e_min" => clean(c.minimizer.e_min),
        });
    }
    let report = ReportEnvelope {
        command: "interplay",
        inputs: row! {
            "alpha" => a.alpha,
            "s_list" => a.s_list,
            "theta_steps" => a.theta_steps,
            "measure" => kind.as_str(),
            "restarts" => a.restarts,
        },
        rows,
        meta: meta(a.seed, row! { "constraint" => CONSTRAINT_TOL }),
        summary,
    };
    Ok((report, Ok(())))
}

pub fn locc_check(a: &LoccArgs) -> Outcome {
    let mut rng = rng_from_seed(a.seed);
    let battery: Vec<_> = (0..BATTERY)
        .map(|_| {
            let quad = random_quad(&mut rng);
            (rng.gen_range(1.0..3.0), quad)
        })
        .collect();
    let states = match &a.state_file {
        Some(path) => vec![state_file::load(path).map_err(Failure::Input)?],
        None => (0..a.trials)
            .map(|t| {
                if t % 2 == 0 {
                    random_state(&mut rng)
                } else {
                    random_pure_state(&mut rng)
                }
            })
            .collect(),
    };

    let mut rows = Vec::with_capacity(states.len());
    let mut worst: f64 = 0.0;
    for (trial, rho) in states.iter().enumerate() {
        let (spectrum, t) = locc_to_bell_diagonal(rho)?;
        let mut max_delta: f64 = 0.0;
        for &(alpha, quad) in &battery {
            let before = bell_value(rho, &BellScenario::new(alpha, quad)?);
            let after = bell_value(&t.state, &BellScenario::new(alpha, t.map_quad(&quad))?);
            max_delta = max_delta.max((before - after).abs());
        }
        worst = worst.max(max_delta);
        let l = spectrum.lambda();
        rows.push(row! {
            "trial" => trial,
            "lambda1" => clean(l[0]),
            "lambda2" => clean(l[1]),
            "lambda3" => clean(l[2]),
            "lambda4" => clean(l[3]),
            "rotation_a" => clean(t.rotation.0),
            "rotation_b" => clean(t.rotation.1),
            "residual" => clean(t.residual),
            "max_delta_s" => max_delta,
        });
    }
    let passed = worst <= LOCC_TOL;
    let report = ReportEnvelope {
        command: "locc-check",
        inputs: row! {
            "trials" => states.len(),
            "state_file" => a.state_file.as_ref().map(|p| p.display().to_string()),
            "battery" => BATTERY,
        },
        rows,
        meta: meta(a.seed, row! { "invariance" => LOCC_TOL }),
        summary: vec![row! {
            "trials" => states.len(),
            "max_delta_s" => worst,
            "passed" => passed,
        }],
    };
    let check = if passed {
        Ok(())
    } else {
        Err(format!("max |ΔS| = {worst:.3e} exceeds {LOCC_TOL:e}"))
    };
    Ok((report, check))
}
