//! Command implementations. Each returns an [`Output`] holding a
//! human-readable summary plus CSV and JSON renderings.

use crate::config::RunConfig;
use pdc_zeno::closed_forms::{n_s_coupled_matched, n_s_mismatched_uncoupled};
use pdc_zeno::dressed::{propagate_dressed, qpm_comparison};
use pdc_zeno::regime::{boundary_exact, classify_regime};
use pdc_zeno::sweep::{
    find_anti_zeno_ridge, ridge_linearity, sweep_2d, AxisSpec, Engine, SweepSpec,
};
use pdc_zeno::{
    check_symplectic, propagate_exact, propagate_ode, vacuum_occupations, CouplerParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::fmt::Write as _;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_CELL_FAILURE: i32 = 4;
pub const EXIT_EQUIVALENCE: i32 = 5;

/// Residual allowed by `dressed-check` before it reports failure.
pub const DRESSED_CHECK_TOLERANCE: f64 = 1e-8;

#[derive(Debug)]
pub struct CommandError {
    pub code: i32,
    pub message: String,
}

impl CommandError {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    fn mismatch(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_MISMATCH,
            message: message.into(),
        }
    }
}

impl From<pdc_zeno::Error> for CommandError {
    fn from(e: pdc_zeno::Error) -> Self {
        let code = match e {
            pdc_zeno::Error::Domain(_) => EXIT_MISMATCH,
            _ => EXIT_INVALID,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<Output, CommandError>;

#[derive(Debug, Clone)]
pub struct Output {
    pub summary: String,
    pub csv: String,
    pub json: Value,
    pub code: i32,
}

/// Shortest representation that parses back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

fn text_num(x: f64) -> String {
    if x.is_nan() {
        "n/a".to_string()
    } else {
        num(x)
    }
}

fn document(command: &str, config: &RunConfig, result: Value) -> Value {
    json!({ "command": command, "config": config, "result": result })
}

fn required(value: Option<f64>, name: &str) -> Result<f64, CommandError> {
    value.ok_or_else(|| CommandError::invalid(format!("missing --{name}")))
}

fn params_from(cfg: &RunConfig) -> Result<CouplerParams, CommandError> {
    Ok(CouplerParams::new(
        required(cfg.gamma, "gamma")?,
        required(cfg.kappa, "kappa")?,
        required(cfg.delta, "delta")?,
        required(cfg.length, "length")?,
    )?)
}

fn echo_params(cfg: &RunConfig, params: &CouplerParams) -> RunConfig {
    RunConfig {
        gamma: Some(params.gamma),
        kappa: Some(params.kappa),
        delta: Some(params.delta),
        length: Some(params.length),
        ..cfg.clone()
    }
}

pub fn simulate(cfg: &RunConfig) -> CmdResult {
    let params = params_from(cfg)?;
    let engine = cfg.engine.clone().unwrap_or_else(|| "exact".to_string());
    let (n, residual) = match engine.as_str() {
        "exact" => {
            let map = propagate_exact(&params)?;
            (vacuum_occupations(&map), check_symplectic(&map))
        }
        "ode" => {
            let map = propagate_ode(&params, cfg.step_tolerance.unwrap_or(1e-10))?;
            (vacuum_occupations(&map), check_symplectic(&map))
        }
        "closed-form" => {
            if params.delta == 0.0 {
                let n_s = n_s_coupled_matched(params.gamma, params.kappa, params.length).n_s;
                let (n_i, n_b) = if params.kappa == 0.0 {
                    (n_s, 0.0)
                } else {
                    (f64::NAN, f64::NAN)
                };
                (pdc_zeno::ModeOccupations { n_s, n_i, n_b }, f64::NAN)
            } else if params.kappa == 0.0 {
                let n_s = n_s_mismatched_uncoupled(params.gamma, params.delta, params.length).n_s;
                (
                    pdc_zeno::ModeOccupations {
                        n_s,
                        n_i: n_s,
                        n_b: 0.0,
                    },
                    f64::NAN,
                )
            } else {
                return Err(CommandError::mismatch(
                    "closed-form engine needs delta = 0 or kappa = 0; use --engine exact",
                ));
            }
        }
        other => {
            return Err(CommandError::invalid(format!(
                "unknown engine `{other}` (exact, ode, closed-form)"
            )))
        }
    };
    let n = pdc_zeno::ModeOccupations {
        n_s: n.n_s.max(0.0),
        n_i: if n.n_i.is_nan() {
            n.n_i
        } else {
            n.n_i.max(0.0)
        },
        n_b: if n.n_b.is_nan() {
            n.n_b
        } else {
            n.n_b.max(0.0)
        },
    };

    let mut summary = String::new();
    writeln!(summary, "engine = {engine}").unwrap();
    writeln!(summary, "n_s = {}", text_num(n.n_s)).unwrap();
    writeln!(summary, "n_i = {}", text_num(n.n_i)).unwrap();
    writeln!(summary, "n_b = {}", text_num(n.n_b)).unwrap();
    writeln!(summary, "symplectic_residual = {}", text_num(residual)).unwrap();
    let csv = format!(
        "engine,n_s,n_i,n_b,symplectic_residual\n{engine},{},{},{},{}\n",
        num(n.n_s),
        num(n.n_i),
        num(n.n_b),
        num(residual)
    );
    let config = RunConfig {
        engine: Some(engine.clone()),
        ..echo_params(cfg, &params)
    };
    let json = document(
        "simulate",
        &config,
        json!({ "engine": engine, "n_s": n.n_s, "n_i": n.n_i, "n_b": n.n_b, "symplectic_residual": residual }),
    );
    Ok(Output {
        summary,
        csv,
        json,
        code: EXIT_OK,
    })
}

pub fn classify(cfg: &RunConfig) -> CmdResult {
    let params = params_from(&RunConfig {
        length: Some(cfg.length.unwrap_or(1.0)),
        ..cfg.clone()
    })?;
    if params.kappa == 0.0 {
        return Err(CommandError::mismatch(
            "kappa = 0 has no cubic classification; use `simulate --engine closed-form` instead",
        ));
    }
    let report = classify_regime(&params)?;
    let exact = if params.gamma > 0.0 && params.delta != 0.0 {
        boundary_exact(params.gamma, params.delta).ok()
    } else {
        None
    };
    let c = report.coefficients;
    let roots: Vec<[f64; 2]> = report.roots.iter().map(|r| [r.re, r.im]).collect();

    let mut summary = String::new();
    writeln!(summary, "regime = {}", report.regime).unwrap();
    writeln!(summary, "discriminant = {}", num(report.discriminant)).unwrap();
    writeln!(
        summary,
        "cubic = x^3 + {} x^2 + {} x + {}",
        num(c.c2),
        num(c.c1),
        num(c.c0)
    )
    .unwrap();
    for r in &report.roots {
        writeln!(summary, "root = {} {:+}i", num(r.re), r.im).unwrap();
    }
    match report.boundary_kappas {
        Some((k1, k2)) => writeln!(summary, "boundary_kappas = {} {}", num(k1), num(k2)).unwrap(),
        None => writeln!(summary, "boundary_kappas = n/a").unwrap(),
    }
    if let Some((k1, k2)) = exact {
        writeln!(summary, "boundary_kappas_exact = {} {}", num(k1), num(k2)).unwrap();
    }
    let csv = format!(
        "regime,discriminant,c2,c1,c0,kappa_1,kappa_2\n{},{},{},{},{},{},{}\n",
        report.regime,
        num(report.discriminant),
        num(c.c2),
        num(c.c1),
        num(c.c0),
        report.boundary_kappas.map_or(String::new(), |b| num(b.0)),
        report.boundary_kappas.map_or(String::new(), |b| num(b.1)),
    );
    let config = RunConfig {
        length: None,
        engine: None,
        ..echo_params(cfg, &params)
    };
    let json = document(
        "classify",
        &config,
        json!({
            "regime": report.regime.as_str(),
            "discriminant": report.discriminant,
            "coefficients": [c.c2, c.c1, c.c0],
            "roots": roots,
            "boundary_kappas": report.boundary_kappas.map(|b| [b.0, b.1]),
            "boundary_kappas_exact": exact.map(|b| [b.0, b.1]),
        }),
    );
    Ok(Output {
        summary,
        csv,
        json,
        code: EXIT_OK,
    })
}

fn axis(
    name: &Option<String>,
    min: Option<f64>,
    max: Option<f64>,
    count: Option<usize>,
    label: &str,
) -> Result<AxisSpec, CommandError> {
    let name = name
        .as_deref()
        .ok_or_else(|| CommandError::invalid(format!("missing `{label}`")))?;
    let param = name
        .parse()
        .map_err(|e: pdc_zeno::Error| CommandError::invalid(e.to_string()))?;
    Ok(AxisSpec::new(
        param,
        min.ok_or_else(|| CommandError::invalid(format!("missing `{label}_min`")))?,
        max.ok_or_else(|| CommandError::invalid(format!("missing `{label}_max`")))?,
        count.ok_or_else(|| CommandError::invalid(format!("missing `{label}_count`")))?,
    ))
}

pub fn sweep(cfg: &RunConfig) -> CmdResult {
    let fixed = CouplerParams::new(
        cfg.gamma.unwrap_or(0.0),
        cfg.kappa.unwrap_or(0.0),
        cfg.delta.unwrap_or(0.0),
        cfg.length.unwrap_or(0.0),
    )?;
    let engine: Engine = cfg
        .engine
        .as_deref()
        .unwrap_or("numeric")
        .parse()
        .map_err(|e: pdc_zeno::Error| CommandError::invalid(e.to_string()))?;
    let spec = SweepSpec {
        fixed,
        axis1: axis(
            &cfg.axis1,
            cfg.axis1_min,
            cfg.axis1_max,
            cfg.axis1_count,
            "axis1",
        )?,
        axis2: axis(
            &cfg.axis2,
            cfg.axis2_min,
            cfg.axis2_max,
            cfg.axis2_count,
            "axis2",
        )?,
        engine,
    };
    let grid = sweep_2d(&spec)?;
    let a1 = grid.axis1_values();
    let a2 = grid.axis2_values();

    let mut csv = String::from("axis1,axis2,n_s,engine\n");
    for (r, v1) in a1.iter().enumerate() {
        for (c, v2) in a2.iter().enumerate() {
            let idx = r * a2.len() + c;
            writeln!(
                csv,
                "{},{},{},{}",
                num(*v1),
                num(*v2),
                num(grid.values[idx]),
                grid.provenance[idx].as_str()
            )
            .unwrap();
        }
    }
    let max = grid
        .values
        .iter()
        .copied()
        .filter(|v| v.is_finite())
        .fold(0.0, f64::max);
    let mut summary = String::new();
    writeln!(
        summary,
        "grid = {} x {} ({} by {})",
        grid.rows(),
        grid.cols(),
        spec.axis1.param,
        spec.axis2.param
    )
    .unwrap();
    writeln!(summary, "engine = {}", engine.as_str()).unwrap();
    writeln!(summary, "max_n_s = {}", num(max)).unwrap();
    writeln!(summary, "failures = {}", grid.failures).unwrap();

    let config = RunConfig {
        gamma: Some(fixed.gamma),
        kappa: Some(fixed.kappa),
        delta: Some(fixed.delta),
        length: Some(fixed.length),
        engine: Some(engine.as_str().to_string()),
        ..cfg.clone()
    };
    let json = document(
        "sweep",
        &config,
        json!({
            "axis1": spec.axis1.param.as_str(),
            "axis2": spec.axis2.param.as_str(),
            "axis1_values": a1,
            "axis2_values": a2,
            "values": grid.values,
            "provenance": grid.provenance.iter().map(|p| p.as_str()).collect::<Vec<_>>(),
            "failures": grid.failures,
        }),
    );
    let code = if grid.failures > 0 {
        EXIT_CELL_FAILURE
    } else {
        EXIT_OK
    };
    Ok(Output {
        summary,
        csv,
        json,
        code,
    })
}

/// Missing parameters are drawn from the seeded generator over
/// `gamma in [0, 1]`, `kappa, delta in [0, 10]`, `length in [0, 3]`.
pub fn dressed_check(cfg: &RunConfig) -> CmdResult {
    let seed = cfg.seed.unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws = (
        rng.gen_range(0.0..1.0),
        rng.gen_range(0.0..10.0),
        rng.gen_range(0.0..10.0),
        rng.gen_range(0.0..3.0),
    );
    let params = CouplerParams::new(
        cfg.gamma.unwrap_or(draws.0),
        cfg.kappa.unwrap_or(draws.1),
        cfg.delta.unwrap_or(draws.2),
        cfg.length.unwrap_or(draws.3),
    )?;
    let direct = vacuum_occupations(&propagate_exact(&params)?);
    let dressed = propagate_dressed(&params)?;
    let residual = (direct.n_s - dressed.n_s)
        .abs()
        .max((direct.n_i - dressed.n_i).abs())
        .max((direct.n_b - dressed.n_b).abs());
    let (resonant, qpm) = if params.gamma > 0.0 {
        qpm_comparison(params.gamma)?
    } else {
        (0.0, 0.0)
    };
    let passed = residual <= DRESSED_CHECK_TOLERANCE;

    let mut summary = String::new();
    writeln!(
        summary,
        "params = gamma {} kappa {} delta {} length {}",
        num(params.gamma),
        num(params.kappa),
        num(params.delta),
        num(params.length)
    )
    .unwrap();
    writeln!(
        summary,
        "direct  n_s {} n_i {} n_b {}",
        num(direct.n_s),
        num(direct.n_i),
        num(direct.n_b)
    )
    .unwrap();
    writeln!(
        summary,
        "dressed n_s {} n_i {} n_b {}",
        num(dressed.n_s),
        num(dressed.n_i),
        num(dressed.n_b)
    )
    .unwrap();
    writeln!(summary, "residual = {}", num(residual)).unwrap();
    writeln!(
        summary,
        "effective coupling: resonant dressed channel {} (0.70711 gamma), rectangular QPM {} (0.63662 gamma)",
        num(resonant),
        num(qpm)
    )
    .unwrap();
    writeln!(
        summary,
        "{}",
        if passed {
            "equivalence holds"
        } else {
            "EQUIVALENCE FAILED"
        }
    )
    .unwrap();

    let csv = format!(
        "gamma,kappa,delta,length,n_s_direct,n_s_dressed,residual,eff_coupling_resonant,eff_coupling_qpm\n{},{},{},{},{},{},{},{},{}\n",
        num(params.gamma),
        num(params.kappa),
        num(params.delta),
        num(params.length),
        num(direct.n_s),
        num(dressed.n_s),
        num(residual),
        num(resonant),
        num(qpm)
    );
    let config = RunConfig {
        seed: Some(seed),
        ..echo_params(cfg, &params)
    };
    let json = document(
        "dressed-check",
        &config,
        json!({
            "direct": { "n_s": direct.n_s, "n_i": direct.n_i, "n_b": direct.n_b },
            "dressed": { "n_s": dressed.n_s, "n_i": dressed.n_i, "n_b": dressed.n_b },
            "residual": residual,
            "tolerance": DRESSED_CHECK_TOLERANCE,
            "eff_coupling_resonant": resonant,
            "eff_coupling_qpm": qpm,
        }),
    );
    Ok(Output {
        summary,
        csv,
        json,
        code: if passed { EXIT_OK } else { EXIT_EQUIVALENCE },
    })
}

pub fn ridge(cfg: &RunConfig) -> CmdResult {
    let gamma = required(cfg.gamma, "gamma")?;
    let length = required(cfg.length, "length")?;
    let (lo, hi, count) = (
        cfg.delta_min.unwrap_or(3.0),
        cfg.delta_max.unwrap_or(10.0),
        cfg.delta_count.unwrap_or(8),
    );
    if !(lo > 0.0) || !(hi > lo) || !hi.is_finite() || count < 3 {
        return Err(CommandError::invalid(
            "delta range needs 0 < delta_min < delta_max and delta_count >= 3",
        ));
    }
    let deltas = AxisSpec::new(pdc_zeno::sweep::Axis::Delta, lo, hi, count).values();
    let points = find_anti_zeno_ridge(gamma, length, &deltas)?;
    let fit = ridge_linearity(&points)?;

    let mut csv = String::from("delta,kappa_opt,n_s_max\n");
    for p in &points {
        writeln!(
            csv,
            "{},{},{}",
            num(p.delta),
            num(p.kappa_opt),
            num(p.n_s_max)
        )
        .unwrap();
    }
    let mut summary = csv.clone();
    for p in points.iter().filter(|p| p.flat) {
        eprintln!("warning: flat n_s landscape at delta = {}", num(p.delta));
    }
    writeln!(summary, "slope = {}", num(fit.slope)).unwrap();
    writeln!(summary, "intercept = {}", num(fit.intercept)).unwrap();
    writeln!(summary, "max_residual = {}", num(fit.max_residual)).unwrap();

    let config = RunConfig {
        gamma: Some(gamma),
        length: Some(length),
        delta_min: Some(lo),
        delta_max: Some(hi),
        delta_count: Some(count),
        ..cfg.clone()
    };
    let json = document(
        "ridge",
        &config,
        json!({
            "points": points.iter().map(|p| json!({
                "delta": p.delta, "kappa_opt": p.kappa_opt, "n_s_max": p.n_s_max, "flat": p.flat,
            })).collect::<Vec<_>>(),
            "fit": { "slope": fit.slope, "intercept": fit.intercept, "max_residual": fit.max_residual },
        }),
    );
    Ok(Output {
        summary,
        csv,
        json,
        code: EXIT_OK,
    })
}
