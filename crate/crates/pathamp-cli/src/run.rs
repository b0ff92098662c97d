//! Scenario execution. A run resolves the configuration, evaluates either an
//! angular profile or a parameter scan, extracts diffraction peaks from the
//! closed-form order angles, and assembles the JSON summary. Everything here
//! is pure: identical scenarios produce byte-identical tables.

use serde_json::{json, Map, Value};

use pathamp::classical_wave::{de_broglie_wavelength, ParticleKind};
use pathamp::decay::cat_alive_probability;
use pathamp::electron_grating::{
    rms_emission_velocity, thermal_momentum_spread, ElectronGratingConfig,
};
use pathamp::kinematics::{phase_difference_exact, phase_difference_first_order, PathPair};
use pathamp::photon_grating::{pitch_from_first_maximum, PhotonGratingConfig};
use pathamp::profile::sample_profile;
use pathamp::verify::{run_suite, VerifyReport};

use crate::error::CliError;
use crate::output::{PeakOut, Summary};
use crate::scenario::{
    typed, CatParams, ElectronParams, Kind, KinematicsParams, Params, PhotonParams, Scenario,
    SweepDoc,
};

/// Diffraction orders enumerated per side before the peak list is cut off.
const MAX_PEAK_ORDERS: u32 = 64;

/// Grid used when a grating scenario carries no sweep of its own: the full
/// detection half-plane at 0.05° resolution.
const DEFAULT_THETA_SWEEP: (f64, f64, usize) = (0.0, 90.0, 1801);

#[derive(Debug, Clone)]
pub struct Table {
    pub header: String,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug)]
pub struct RunOutput {
    pub table: Option<Table>,
    pub summary: Summary,
    /// One JSON line per advisory note, destined for stderr.
    pub notes: Vec<String>,
}

/// Execute a non-verify scenario.
pub fn run(scenario: &Scenario, samples_override: Option<usize>) -> Result<RunOutput, CliError> {
    let sweep = effective_sweep(scenario, samples_override)?;
    match &scenario.params {
        Params::Photon(p) => run_photon(p, sweep.as_ref()),
        Params::Electron(p) => run_electron(p, sweep.as_ref()),
        Params::Kinematics(p) => run_kinematics(p, sweep.as_ref()),
        Params::Cat(p) => run_cat(p, sweep.as_ref()),
        Params::Verify(_) => Err(CliError::validation(
            "verify scenarios run through the verify command",
        )),
    }
}

/// Run the named verification suite and render its text report.
pub fn run_verify(suite: &str) -> Result<(VerifyReport, String), CliError> {
    let report = run_suite(Some(suite))?;
    let mut text = String::new();
    for check in &report.checks {
        text.push_str(&format!("{check}\n"));
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    text.push_str(&format!(
        "{}: {passed}/{} checks passed\n",
        suite,
        report.checks.len()
    ));
    Ok((report, text))
}

/// JSON rendering of a verification report, mirroring the run summary shape.
pub fn verify_summary(suite: &str, report: &VerifyReport) -> Summary {
    let mut checks = Map::new();
    for c in &report.checks {
        checks.insert(
            c.name.to_string(),
            json!({
                "measured": c.measured,
                "tolerance": c.tolerance,
                "passed": c.passed,
            }),
        );
    }
    Summary {
        peaks: Vec::new(),
        config_echo: json!({ "kind": "verify", "suite": suite }),
        checks,
    }
}

/// The sweep a run actually executes: the scenario's own, or the default
/// angular grid for grating kinds. `--samples` overrides the sample count and
/// is an error when there is nothing to sample.
fn effective_sweep(
    scenario: &Scenario,
    samples_override: Option<usize>,
) -> Result<Option<SweepDoc>, CliError> {
    let mut sweep = scenario.sweep.clone();
    if sweep.is_none() && matches!(scenario.kind, Kind::PhotonGrating | Kind::ElectronGrating) {
        let (low, high, n_samples) = DEFAULT_THETA_SWEEP;
        sweep = Some(SweepDoc {
            variable: "theta_deg".into(),
            low,
            high,
            n_samples,
        });
    }
    if let Some(n) = samples_override {
        match sweep.as_mut() {
            Some(s) => {
                if n < 2 {
                    return Err(CliError::validation(format!(
                        "--samples needs at least 2, got {n}"
                    )));
                }
                s.n_samples = n;
            }
            None => {
                return Err(CliError::validation(
                    "--samples given but the scenario has no sweep",
                ))
            }
        }
    }
    Ok(sweep)
}

fn grid(sweep: &SweepDoc) -> Vec<f64> {
    let span = sweep.high - sweep.low;
    let last = (sweep.n_samples - 1) as f64;
    (0..sweep.n_samples)
        .map(|i| sweep.low + span * (i as f64 / last))
        .collect()
}

/// Peak window in degrees: the swept angular range, or the whole detection
/// half-plane when the sweep runs over some other variable.
fn peak_window(sweep: Option<&SweepDoc>) -> (f64, f64) {
    match sweep {
        Some(s) if s.variable == "theta_deg" => (s.low, s.high),
        _ => (-90.0, 90.0),
    }
}

/// Enumerated order angles plus, when the enumeration stopped early, the
/// first angle it left out.
struct OrderList {
    orders: Vec<(u32, f64)>,
    next: Option<f64>,
}

/// Mirror the positive order angles into the window, cap the list, and sort
/// by detection angle. The flag reports whether the window holds peaks the
/// list is missing — either cut by the cap or beyond the enumerated orders.
fn assemble_peaks<F: Fn(f64) -> f64>(
    list: &OrderList,
    intensity: F,
    window_deg: (f64, f64),
) -> (Vec<PeakOut>, bool) {
    let in_window = |theta: f64| {
        let deg = theta.to_degrees();
        deg >= window_deg.0 && deg <= window_deg.1
    };
    let mut peaks = Vec::new();
    for &(order, theta) in &list.orders {
        for signed in [theta, -theta] {
            let duplicate = signed < 0.0 && theta == 0.0;
            if !duplicate && in_window(signed) {
                peaks.push(PeakOut {
                    theta_deg: signed.to_degrees(),
                    intensity: intensity(signed),
                    order,
                });
            }
        }
    }
    // Keep the lowest orders when the window holds more peaks than the cap.
    peaks.sort_by(|a, b| {
        a.theta_deg
            .abs()
            .partial_cmp(&b.theta_deg.abs())
            .expect("order angles are finite")
    });
    let mut truncated = peaks.len() > MAX_PEAK_ORDERS as usize;
    peaks.truncate(MAX_PEAK_ORDERS as usize);
    peaks.sort_by(|a, b| {
        a.theta_deg
            .partial_cmp(&b.theta_deg)
            .expect("order angles are finite")
    });
    if let Some(next) = list.next {
        truncated |= in_window(next) || in_window(-next);
    }
    (peaks, truncated)
}

fn photon_orders(cfg: &PhotonGratingConfig) -> OrderList {
    let mut angles = cfg.constructive_angles(MAX_PEAK_ORDERS + 1);
    let next = angles.get(MAX_PEAK_ORDERS as usize).map(|a| a.theta);
    angles.truncate(MAX_PEAK_ORDERS as usize);
    OrderList {
        orders: angles.iter().map(|a| (a.order, a.theta)).collect(),
        next,
    }
}

fn electron_orders(cfg: &ElectronGratingConfig) -> OrderList {
    let s1 = 2.0 * std::f64::consts::PI / (cfg.phase_rate().abs() * cfg.row_spacing);
    let mut orders = Vec::new();
    for l in 1..=MAX_PEAK_ORDERS {
        let s = l as f64 * s1;
        if s > 1.0 {
            return OrderList { orders, next: None };
        }
        orders.push((l, s.asin()));
    }
    let s_next = (MAX_PEAK_ORDERS + 1) as f64 * s1;
    OrderList {
        orders,
        next: (s_next <= 1.0).then(|| s_next.asin()),
    }
}

fn num(map: &mut Map<String, Value>, key: &str, v: f64) {
    map.insert(key.to_string(), json!(v));
}

fn config_echo(kind: Kind, params: &Params, sweep: Option<&SweepDoc>) -> Value {
    let mut doc = json!({
        "kind": kind.name(),
        "parameters": params.echo(),
    });
    if let Some(s) = sweep {
        doc["sweep"] = serde_json::to_value(s).expect("sweep serializes");
    }
    doc
}

fn run_photon(params: &PhotonParams, sweep: Option<&SweepDoc>) -> Result<RunOutput, CliError> {
    let cfg = params.config()?;
    let notes = cfg
        .warnings()
        .iter()
        .map(|w| json!({ "warning": w.to_string() }).to_string())
        .collect();
    let intensity = |theta: f64| cfg.scale * cfg.scale * cfg.interference_factor(theta);

    let table = match sweep {
        Some(s) if s.variable == "theta_deg" => Some(Table {
            header: "theta_deg,intensity".into(),
            rows: sample_profile(|deg: f64| intensity(deg.to_radians()), s.low, s.high, s.n_samples)
                .map_err(CliError::from)?
                .points
                .iter()
                .map(|p| vec![p.x, p.intensity])
                .collect(),
        }),
        Some(s) => {
            let base = params_value(params);
            let mut rows = Vec::with_capacity(s.n_samples);
            for x in grid(s) {
                let sample: PhotonParams = patched(Kind::PhotonGrating, &base, &s.variable, x)?;
                let cfg = sample.config()?;
                let (deg, peak) = match cfg.constructive_angles(1).first() {
                    Some(a) => (
                        a.theta.to_degrees(),
                        cfg.scale * cfg.scale * cfg.interference_factor(a.theta),
                    ),
                    None => (f64::NAN, f64::NAN),
                };
                rows.push(vec![x, deg, peak]);
            }
            Some(Table {
                header: format!("{},first_peak_deg,first_peak_intensity", s.variable),
                rows,
            })
        }
        None => None,
    };

    let orders = photon_orders(&cfg);
    let (peaks, truncated) = assemble_peaks(&orders, intensity, peak_window(sweep));

    let mut checks = Map::new();
    num(&mut checks, "wavelength_nm", 2.0 * std::f64::consts::PI / cfg.wavenumber());
    let sp = cfg.strip_phase(std::f64::consts::FRAC_PI_2);
    num(&mut checks, "q_over_r", sp.q_part / sp.r_part);
    num(
        &mut checks,
        "damping_exponent_max",
        cfg.cosh_damping_exponent(std::f64::consts::FRAC_PI_2),
    );
    if let Some(&(_, theta1)) = orders.orders.first() {
        num(&mut checks, "first_maximum_deg", theta1.to_degrees());
        num(
            &mut checks,
            "pitch_roundtrip_nm",
            pitch_from_first_maximum(cfg.photon_energy, theta1)?,
        );
    }
    checks.insert("peaks_truncated".into(), Value::Bool(truncated));

    Ok(RunOutput {
        table,
        summary: Summary {
            peaks,
            config_echo: config_echo(Kind::PhotonGrating, &Params::Photon(params.clone()), sweep),
            checks,
        },
        notes,
    })
}

fn run_electron(params: &ElectronParams, sweep: Option<&SweepDoc>) -> Result<RunOutput, CliError> {
    let cfg = params.config()?;
    let intensity = |theta: f64| cfg.dg_pattern(theta);

    let table = match sweep {
        Some(s) if s.variable == "theta_deg" => Some(Table {
            header: "theta_deg,intensity".into(),
            rows: sample_profile(|deg: f64| intensity(deg.to_radians()), s.low, s.high, s.n_samples)
                .map_err(CliError::from)?
                .points
                .iter()
                .map(|p| vec![p.x, p.intensity])
                .collect(),
        }),
        Some(s) => {
            let base = params_value(params);
            let mut rows = Vec::with_capacity(s.n_samples);
            for x in grid(s) {
                let sample: ElectronParams = patched(Kind::ElectronGrating, &base, &s.variable, x)?;
                let cfg = sample.config()?;
                let (deg, peak) = match cfg.first_maximum_angle() {
                    Some(theta) => (theta.to_degrees(), cfg.dg_pattern(theta)),
                    None => (f64::NAN, f64::NAN),
                };
                rows.push(vec![x, deg, peak]);
            }
            Some(Table {
                header: format!("{},first_peak_deg,first_peak_intensity", s.variable),
                rows,
            })
        }
        None => None,
    };

    let orders = electron_orders(&cfg);
    let (peaks, truncated) = assemble_peaks(&orders, intensity, peak_window(sweep));

    let mut checks = Map::new();
    num(&mut checks, "mean_momentum_ev", cfg.mean_momentum);
    num(
        &mut checks,
        "wavelength_nm",
        de_broglie_wavelength(ParticleKind::Electron, cfg.mean_momentum)?,
    );
    if let Some(theta) = cfg.first_maximum_angle() {
        num(&mut checks, "first_maximum_deg", theta.to_degrees());
    }
    num(
        &mut checks,
        "rms_emission_velocity_c",
        rms_emission_velocity(cfg.filament_temperature)?,
    );
    let spread = thermal_momentum_spread(cfg.filament_temperature)?;
    num(&mut checks, "momentum_spread_ev", spread);
    num(&mut checks, "spread_over_mean", spread / cfg.mean_momentum);
    checks.insert("peaks_truncated".into(), Value::Bool(truncated));

    Ok(RunOutput {
        table,
        summary: Summary {
            peaks,
            config_echo: config_echo(
                Kind::ElectronGrating,
                &Params::Electron(params.clone()),
                sweep,
            ),
            checks,
        },
        notes: Vec::new(),
    })
}

fn kinematics_checks(params: &KinematicsParams) -> Result<Map<String, Value>, CliError> {
    let pair = PathPair::new(
        params.s_a_nm,
        params.s_b_nm,
        params.p_a_ev,
        params.p_b_ev,
        params.mass_energy_ev,
    )?;
    let beta = |pc: f64| pc / (pc * pc + pair.mass_energy * pair.mass_energy).sqrt();
    let (beta_a, beta_b) = (beta(pair.p_a), beta(pair.p_b));
    let timing_ratio = (pair.s_a / beta_a) / (pair.s_b / beta_b);
    let exact = phase_difference_exact(&pair);
    let first_order = phase_difference_first_order(
        pair.mean_s(),
        pair.delta_s(),
        pair.mean_p(),
        pair.mass_energy,
        timing_ratio,
        pair.length_ratio(),
    )?;
    let mut checks = Map::new();
    num(&mut checks, "mean_s_nm", pair.mean_s());
    num(&mut checks, "delta_s_nm", pair.delta_s());
    num(&mut checks, "mean_p_ev", pair.mean_p());
    num(&mut checks, "delta_p_ev", pair.delta_p());
    num(&mut checks, "beta_a_c", beta_a);
    num(&mut checks, "beta_b_c", beta_b);
    num(&mut checks, "timing_ratio", timing_ratio);
    num(&mut checks, "length_ratio", pair.length_ratio());
    num(&mut checks, "delta_phi_exact_rad", exact);
    num(&mut checks, "delta_phi_first_order_rad", first_order);
    if exact != 0.0 {
        num(
            &mut checks,
            "first_order_rel_error",
            (first_order / exact - 1.0).abs(),
        );
    }
    Ok(checks)
}

fn run_kinematics(
    params: &KinematicsParams,
    sweep: Option<&SweepDoc>,
) -> Result<RunOutput, CliError> {
    let checks = kinematics_checks(params)?;
    let table = match sweep {
        Some(s) => {
            let base = params_value(params);
            let mut rows = Vec::with_capacity(s.n_samples);
            for x in grid(s) {
                let sample: KinematicsParams = patched(Kind::Kinematics, &base, &s.variable, x)?;
                let sampled = kinematics_checks(&sample)?;
                let phi = sampled["delta_phi_exact_rad"]
                    .as_f64()
                    .expect("check is numeric");
                rows.push(vec![x, phi]);
            }
            Some(Table {
                header: format!("{},delta_phi_exact_rad", s.variable),
                rows,
            })
        }
        None => None,
    };
    Ok(RunOutput {
        table,
        summary: Summary {
            peaks: Vec::new(),
            config_echo: config_echo(Kind::Kinematics, &Params::Kinematics(params.clone()), sweep),
            checks,
        },
        notes: Vec::new(),
    })
}

fn run_cat(params: &CatParams, sweep: Option<&SweepDoc>) -> Result<RunOutput, CliError> {
    let alive = cat_alive_probability(params.mean_lifetime, params.time, params.delay)?;
    let mut checks = Map::new();
    num(&mut checks, "alive_probability", alive);
    num(&mut checks, "dead_probability", 1.0 - alive);
    let table = match sweep {
        Some(s) => {
            let base = params_value(params);
            let mut rows = Vec::with_capacity(s.n_samples);
            for x in grid(s) {
                let sample: CatParams = patched(Kind::Cat, &base, &s.variable, x)?;
                let alive =
                    cat_alive_probability(sample.mean_lifetime, sample.time, sample.delay)?;
                rows.push(vec![x, alive]);
            }
            Some(Table {
                header: format!("{},alive_probability", s.variable),
                rows,
            })
        }
        None => None,
    };
    Ok(RunOutput {
        table,
        summary: Summary {
            peaks: Vec::new(),
            config_echo: config_echo(Kind::Cat, &Params::Cat(params.clone()), sweep),
            checks,
        },
        notes: Vec::new(),
    })
}

fn params_value<T: serde::Serialize>(params: &T) -> Value {
    serde_json::to_value(params).expect("parameter structs serialize")
}

/// Rebuild a parameter struct with one field replaced by the scan value.
fn patched<T: serde::de::DeserializeOwned>(
    kind: Kind,
    base: &Value,
    variable: &str,
    x: f64,
) -> Result<T, CliError> {
    let mut doc = base.clone();
    doc.as_object_mut()
        .expect("parameter echo is an object")
        .insert(variable.to_string(), json!(x));
    typed(kind, doc)
}
