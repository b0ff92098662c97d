//! Built-in verification suite: every closed form is exercised against its
//! independent oracle or frozen reference value, and the results are reported
//! one line per check.
//!
//! Checks come in two layers. *Headline* checks compare against the coarse
//! published values at their quoted tolerances and establish physical
//! plausibility. *Golden* checks pin the same quantities to full double
//! precision, so that any drift — a constants change, an algebra slip, a
//! rounding regression — flips at least one check. The constants bundle is a
//! parameter precisely so a test harness can demonstrate that sensitivity by
//! perturbing ħc.

use num_complex::Complex64;

use crate::classical_wave::{
    de_broglie_wavelength, electron_wave, helmholtz_residual, helmholtz_residual_refined,
    row_superposition, strip_grating_superposition, ParticleKind, SpatialWave,
};
use crate::constants::{HBAR_C_EV_NM, PhysicalConstants};
use crate::decay::{
    cat_alive_probability, detection_probability, emission_normalization,
    emission_propagation_amplitude, width_from_lifetime, UnstableState,
};
use crate::electron_grating::{
    mean_momentum_from_kinetic, rms_emission_velocity, thermal_momentum_spread,
    ElectronGratingConfig, ProductionHypothesis,
};
use crate::error::{Error, Result};
use crate::kinematics::{
    delta_v_exact, phase_difference_exact, phase_difference_first_order, velocities_from_timing,
    PathPair, TimingRatio,
};
use crate::oracles::{
    adaptive_integral, adaptive_integral_oscillatory, convergence_order_fit, direct_complex_sum,
    gaussian_pair_integral, QuadratureSpec,
};
use crate::photon_grating::{
    pitch_from_first_maximum_with, single_strip_amplitude, PhotonGratingConfig,
};
use crate::propagator::{free_kernel, geometric_path_sum, KinematicState};

/// One verification check: the measured error against its tolerance. A
/// tolerance of exactly zero demands bit-exact agreement.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl std::fmt::Display for CheckResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {:<55} error {:>10.3e}  tolerance {:>10.3e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.tolerance
        )
    }
}

/// Outcome of a suite run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Suites selectable by name; `all` runs every one.
pub const SUITE_NAMES: &[&str] = &[
    "core",
    "photon_grating",
    "electron_grating",
    "kinematics",
    "classical_wave",
    "decay",
];

/// Run the named suite (or all of them) with CODATA constants.
pub fn run_suite(filter: Option<&str>) -> Result<VerifyReport> {
    run_suite_with(&PhysicalConstants::codata(), filter)
}

/// Run the named suite (or all of them) under an explicit constants bundle.
/// An unknown suite name is a validation error, not an empty report.
pub fn run_suite_with(
    constants: &PhysicalConstants,
    filter: Option<&str>,
) -> Result<VerifyReport> {
    let wanted = match filter {
        None | Some("all") => None,
        Some(name) => {
            if !SUITE_NAMES.contains(&name) {
                return Err(Error::InvalidParameter {
                    name: "suite",
                    reason: format!(
                        "unknown suite {name:?}; expected all or one of {}",
                        SUITE_NAMES.join(", ")
                    ),
                });
            }
            Some(name)
        }
    };
    let mut checks = Vec::new();
    let run = |suite: &str| wanted.map_or(true, |w| w == suite);
    if run("core") {
        core_checks(constants, &mut checks)?;
    }
    if run("photon_grating") {
        photon_checks(constants, &mut checks)?;
    }
    if run("electron_grating") {
        electron_checks(&mut checks)?;
    }
    if run("kinematics") {
        kinematics_checks(&mut checks)?;
    }
    if run("classical_wave") {
        classical_checks(&mut checks)?;
    }
    if run("decay") {
        decay_checks(&mut checks)?;
    }
    Ok(VerifyReport { checks })
}

/// Relative-error check against a nonzero reference.
fn rel(checks: &mut Vec<CheckResult>, name: &'static str, value: f64, reference: f64, tol: f64) {
    let measured = (value / reference - 1.0).abs();
    checks.push(CheckResult {
        name,
        measured,
        tolerance: tol,
        passed: measured.is_finite() && measured <= tol,
    });
}

/// Absolute-error check; reference 0 with tolerance 0 demands exactness.
fn abs(checks: &mut Vec<CheckResult>, name: &'static str, value: f64, reference: f64, tol: f64) {
    let measured = (value - reference).abs();
    checks.push(CheckResult {
        name,
        measured,
        tolerance: tol,
        passed: measured.is_finite() && measured <= tol,
    });
}

fn core_checks(constants: &PhysicalConstants, checks: &mut Vec<CheckResult>) -> Result<()> {
    // The unit system only works if ħc, ħ, and c describe the same world.
    rel(
        checks,
        "core/unit_consistency",
        constants.hbar_c_ev_nm / (constants.hbar_ev_s * constants.c_m_per_s * 1e9),
        1.0,
        1e-12,
    );
    let alpha = Complex64::new(0.7, -1e-3);
    let n = 1000u32;
    let closed = geometric_path_sum(alpha, n);
    let i = Complex64::new(0.0, 1.0);
    let terms: Vec<Complex64> = (0..n).map(|k| (i * alpha * k as f64).exp()).collect();
    let direct = direct_complex_sum(&terms);
    rel(
        checks,
        "core/path_sum_vs_direct",
        (closed - direct).norm() / direct.norm() + 1.0,
        1.0,
        1e-11,
    );
    abs(
        checks,
        "core/path_sum_constructive",
        geometric_path_sum(Complex64::new(2.0 * std::f64::consts::PI, 0.0), 7).re,
        7.0,
        1e-12,
    );
    let beta = 8.8e-4;
    let b = 7112.0;
    let est = adaptive_integral_oscillatory(
        |x| Complex64::from_polar(1.0, beta * x),
        (0.0, b),
        beta,
        &QuadratureSpec::default(),
    )?;
    let exact = (Complex64::new(0.0, beta * b).exp() - 1.0) / Complex64::new(0.0, beta);
    rel(
        checks,
        "core/quadrature_vs_antiderivative",
        (est.value - exact).norm() / exact.norm() + 1.0,
        1.0,
        1e-10,
    );
    let photon = KinematicState::photon(2.0).expect("positive energy");
    let kernel = free_kernel(&photon, 1.0e9, 5.0).expect("valid kernel point");
    rel(checks, "core/kernel_modulus", kernel.norm() * 1.0e9, 1.0, 1e-12);
    let fit = convergence_order_fit(
        &[1.0, 0.5, 0.2, 0.1]
            .iter()
            .map(|&h| (h, 3.7 * h * h))
            .collect::<Vec<_>>(),
    )?;
    abs(checks, "core/order_fit_exact_quadratic", fit, 2.0, 1e-9);
    Ok(())
}

fn photon_checks(constants: &PhysicalConstants, checks: &mut Vec<CheckResult>) -> Result<()> {
    let theta1 = 5.0_f64.to_radians();
    let pitch = pitch_from_first_maximum_with(constants, 2.0, theta1)?;
    rel(checks, "photon_grating/pitch_headline", pitch, 7.1e3, 2e-2);
    rel(
        checks,
        "photon_grating/pitch_golden",
        pitch,
        7112.7956985337405,
        1e-9,
    );
    let cfg = PhotonGratingConfig::reference();
    let sp = cfg.strip_phase(30.0_f64.to_radians());
    let ratio = sp.q_part / sp.r_part;
    rel(checks, "photon_grating/damping_ratio_headline", ratio, 1.64e-8, 2e-2);
    rel(
        checks,
        "photon_grating/damping_ratio_golden",
        ratio,
        1.6455298922499999e-8,
        1e-9,
    );
    let grazing = cfg.cosh_damping_exponent(std::f64::consts::FRAC_PI_2);
    rel(checks, "photon_grating/damping_exponent_headline", grazing, 2.4e-3, 5e-2);
    rel(
        checks,
        "photon_grating/damping_exponent_golden",
        grazing,
        2.3723078450492577e-3,
        1e-9,
    );
    rel(
        checks,
        "photon_grating/first_order_angle_golden",
        cfg.constructive_angles(1)[0].theta,
        0.087276250933672514,
        1e-9,
    );
    let exact = cfg.integrated_intensity_exact(theta1, &QuadratureSpec::default())?;
    rel(
        checks,
        "photon_grating/closed_vs_time_quadrature",
        exact / cfg.integrated_intensity(theta1),
        1.0,
        5e-3,
    );
    let t = cfg.earliest_arrival(0.0) + 4.2;
    let th = 17.0_f64.to_radians();
    let complex_route = cfg.detection_time_density(th, t, 0.0)?;
    let expanded_route = cfg.detection_time_density_expanded(th, t, 0.0)?;
    rel(
        checks,
        "photon_grating/density_expanded_route",
        complex_route / expanded_route,
        1.0,
        1e-10,
    );
    let even = PhotonGratingConfig::new(2.0, 10.0, 7112.0, 7112.0, 2, 1e9, 1e9, 1.0)?;
    abs(
        checks,
        "photon_grating/antiphase_even_cancellation",
        even.interference_factor(even.destructive_angles(0)[0].theta),
        0.0,
        1e-15,
    );
    let sp5 = cfg.strip_phase(theta1);
    let est = adaptive_integral_oscillatory(
        |s| Complex64::from_polar((sp5.q_part * s).exp(), sp5.r_part * s),
        (0.0, cfg.strip_width),
        sp5.r_part,
        &QuadratureSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_panels: 4096,
        },
    )?;
    let closed = single_strip_amplitude(cfg.strip_width, sp5.beta());
    rel(
        checks,
        "photon_grating/strip_vs_quadrature",
        (closed - est.value).norm() / est.value.norm() + 1.0,
        1.0,
        1e-9,
    );
    Ok(())
}

fn electron_checks(checks: &mut Vec<CheckResult>) -> Result<()> {
    use ProductionHypothesis::{EqualProductionTimes, EqualVelocities};
    let ept = ElectronGratingConfig::reference(EqualProductionTimes);
    let ev = ElectronGratingConfig::reference(EqualVelocities);
    let th_ept = ept
        .first_maximum_angle()
        .expect("reference beam resolves a first order")
        .to_degrees();
    abs(checks, "electron_grating/first_maximum_ept_headline_deg", th_ept, 51.0, 0.5);
    rel(
        checks,
        "electron_grating/first_maximum_ept_golden_deg",
        th_ept,
        50.917348121916241,
        1e-9,
    );
    let th_ev = ev
        .first_maximum_angle()
        .expect("intrinsic phase rate resolves a first order")
        .to_degrees();
    rel(checks, "electron_grating/first_maximum_ev_headline_deg", th_ev, 0.0094, 5e-2);
    rel(
        checks,
        "electron_grating/first_maximum_ev_golden_deg",
        th_ev,
        9.4003462894102375e-3,
        1e-9,
    );
    rel(
        checks,
        "electron_grating/rms_velocity_headline",
        rms_emission_velocity(2500.0)?,
        1.12e-3,
        1e-2,
    );
    rel(
        checks,
        "electron_grating/thermal_kinetic_headline_ev",
        1.5 * crate::constants::BOLTZMANN_EV_PER_K * 2500.0,
        0.32,
        2e-2,
    );
    rel(
        checks,
        "electron_grating/momentum_54ev_headline",
        mean_momentum_from_kinetic(54.0)?,
        7.43e3,
        5e-3,
    );
    rel(
        checks,
        "electron_grating/spread_ratio_headline",
        thermal_momentum_spread(2500.0)? / mean_momentum_from_kinetic(50.0)?,
        6e-2,
        1e-1,
    );
    // Momentum-spectrum quadrature against the damped-cosine closed form at
    // the first-order maximum.
    let th = ept.first_maximum_angle().expect("first order exists");
    let dist = ept.momentum_distribution()?;
    let damping = ept.ept_damping(th)?;
    let pair = gaussian_pair_integral(
        damping.delta_s,
        &dist,
        damping.delta_p,
        &QuadratureSpec::default(),
    )?;
    let closed = Complex64::from_polar(
        damping.factor,
        ept.mean_momentum * damping.delta_s / HBAR_C_EV_NM,
    );
    rel(
        checks,
        "electron_grating/pair_quadrature_vs_closed",
        (pair - closed).norm() / closed.norm() + 1.0,
        1.0,
        1e-6,
    );
    let cold = ElectronGratingConfig::new(
        7429.05,
        0.0,
        0.215,
        50,
        2.7e7,
        2.3e7,
        EqualProductionTimes,
        1.0,
    )?;
    abs(
        checks,
        "electron_grating/zero_spread_kills_interference",
        cold.interference_term(30.0_f64.to_radians())?,
        0.0,
        0.0,
    );
    let th_small = 0.004_f64.to_radians();
    let mut probs = Vec::new();
    for t in [500.0, 5000.0] {
        let cfg = ElectronGratingConfig::new(
            7429.05,
            t,
            0.215,
            50,
            2.7e7,
            2.3e7,
            EqualVelocities,
            1.0,
        )?;
        probs.push(cfg.two_path_interference(th_small)?);
    }
    abs(
        checks,
        "electron_grating/ev_temperature_independence",
        probs[0] - probs[1],
        0.0,
        0.0,
    );
    Ok(())
}

fn kinematics_checks(checks: &mut Vec<CheckResult>) -> Result<()> {
    let beta_54 = 1.4536754476036974e-2;
    let c = crate::constants::C_NM_PER_NS;
    let m = crate::constants::ELECTRON_REST_ENERGY_EV;
    // One symmetric split Δs/s̄ = h with the timing ratio 30% of the way from
    // equal times to equal velocities.
    let pair_at = |h: f64| -> Result<(PathPair, f64, f64)> {
        let s_bar = 5.0e7;
        let (s_a, s_b) = (s_bar * (1.0 + h / 2.0), s_bar * (1.0 - h / 2.0));
        let ratio_ev = s_a / s_b;
        let ratio = 1.0 + 0.3 * (ratio_ev - 1.0);
        let timing = TimingRatio::new(ratio, (ratio - 1.0) * s_b / (beta_54 * c))?;
        let vp = velocities_from_timing((s_a, s_b), &timing)?;
        let pair = PathPair::from_velocities(s_a, s_b, vp.beta_a, vp.beta_b, m)?;
        Ok((pair, ratio, ratio_ev))
    };
    let (pair, ratio, ratio_ev) = pair_at(1e-3)?;
    let timing = TimingRatio::new(ratio, (ratio - 1.0) * pair.s_b / (beta_54 * c))?;
    let vp = velocities_from_timing((pair.s_a, pair.s_b), &timing)?;
    rel(
        checks,
        "kinematics/delta_v_identity",
        delta_v_exact(vp.mean(), ratio, ratio_ev) / vp.difference(),
        1.0,
        1e-11,
    );
    let samples: Result<Vec<(f64, f64)>> = [1e-3, 5e-4, 2.5e-4, 1e-4]
        .iter()
        .map(|&h| {
            let (pair, ratio, ratio_ev) = pair_at(h)?;
            let fo = phase_difference_first_order(
                pair.mean_s(),
                pair.delta_s(),
                pair.mean_p(),
                pair.mass_energy,
                ratio,
                ratio_ev,
            )?;
            Ok((h, (fo - phase_difference_exact(&pair)).abs()))
        })
        .collect();
    let order = convergence_order_fit(&samples?)?;
    abs(checks, "kinematics/first_order_phase_order", order, 2.0, 0.1);
    let ds = 5.0e4;
    let equal_v = PathPair::new(5.0e7 + ds / 2.0, 5.0e7 - ds / 2.0, 7430.0, 7430.0, m)?;
    let fo = phase_difference_first_order(
        equal_v.mean_s(),
        equal_v.delta_s(),
        equal_v.mean_p(),
        m,
        equal_v.length_ratio(),
        equal_v.length_ratio(),
    )?;
    rel(
        checks,
        "kinematics/equal_velocity_limit",
        fo / phase_difference_exact(&equal_v),
        1.0,
        1e-11,
    );
    abs(
        checks,
        "kinematics/phase_antisymmetry",
        phase_difference_exact(&pair) + phase_difference_exact(&pair.swapped()),
        0.0,
        0.0,
    );
    Ok(())
}

fn classical_checks(checks: &mut Vec<CheckResult>) -> Result<()> {
    rel(
        checks,
        "classical_wave/photon_wavelength_golden",
        de_broglie_wavelength(ParticleKind::Photon, 2.0)?,
        619.92099211805623,
        1e-10,
    );
    rel(
        checks,
        "classical_wave/electron_wavelength_golden",
        de_broglie_wavelength(ParticleKind::Electron, 7.43e3)?,
        0.16686971524039199,
        1e-10,
    );
    let wave = SpatialWave::new(0.0101366, 0.0, 1.0)?;
    let r = 5.0e5;
    let samples: Result<Vec<(f64, f64)>> = [2.0, 1.0, 0.5, 0.2]
        .iter()
        .map(|&h| Ok((h, helmholtz_residual(&wave, r, h)?)))
        .collect();
    let order = convergence_order_fit(&samples?)?;
    abs(checks, "classical_wave/helmholtz_residual_order", order, 2.0, 0.1);
    abs(
        checks,
        "classical_wave/refined_residual_on_solution",
        helmholtz_residual_refined(&wave, 1.0e6)?,
        0.0,
        1e-6,
    );
    // Shape proportionality against the path-amplitude patterns, strip width
    // chosen off the pitch so every sampled order has a live envelope.
    let cfg = PhotonGratingConfig::new(2.0, 10.0, 7112.0, 2000.0, 50, 1e9, 1e9, 1.0)?;
    let lambda = de_broglie_wavelength(ParticleKind::Photon, cfg.photon_energy)?;
    let light = SpatialWave::from_wavelength(lambda, 0.0, 1.0)?;
    let mut spread = 0.0_f64;
    let mut first = None;
    for th in [3.0, 10.0, 20.0, 40.0, 70.0].map(|d: f64| d.to_radians()) {
        let classical = strip_grating_superposition(
            &light,
            cfg.r_observer,
            cfg.pitch,
            cfg.strip_width,
            cfg.n_strips,
            th,
        )?
        .norm_sqr();
        let ratio = cfg.integrated_intensity(th) / classical;
        let base = *first.get_or_insert(ratio);
        spread = spread.max((ratio / base - 1.0).abs());
    }
    abs(checks, "classical_wave/photon_shape_proportionality", spread, 0.0, 1e-10);
    let beam = ElectronGratingConfig::reference(ProductionHypothesis::EqualProductionTimes);
    let matter = electron_wave(&beam)?;
    let mut spread = 0.0_f64;
    let mut first = None;
    for th in [5.0, 17.0, 33.0, 62.0].map(|d: f64| d.to_radians()) {
        let classical =
            row_superposition(&matter, beam.r_observer, beam.row_spacing, beam.n_rows, th)?
                .norm_sqr();
        let ratio = beam.dg_pattern(th) / classical;
        let base = *first.get_or_insert(ratio);
        spread = spread.max((ratio / base - 1.0).abs());
    }
    abs(checks, "classical_wave/electron_shape_proportionality", spread, 0.0, 1e-10);
    Ok(())
}

fn decay_checks(checks: &mut Vec<CheckResult>) -> Result<()> {
    let width = width_from_lifetime(10.0)?;
    rel(checks, "decay/width_headline", width, 6.582e-8, 1e-3);
    rel(checks, "decay/width_golden", width, 6.582119569e-8, 1e-12);
    let state = UnstableState::new(2.0, 10.0)?;
    rel(
        checks,
        "decay/wavepacket_extent_headline",
        state.wavepacket_extent(),
        3.0e9,
        1e-3,
    );
    let tau = 1.44;
    let mut worst = 0.0_f64;
    for i in 0..=1000 {
        let t = 0.01 * i as f64;
        let alive = cat_alive_probability(tau, t, 0.25)?;
        worst = worst.max((alive + (1.0 - alive) - 1.0).abs());
    }
    abs(checks, "decay/cat_complement_exact", worst, 0.0, 0.0);
    abs(
        checks,
        "decay/cat_at_one_lifetime",
        cat_alive_probability(tau, tau, 0.0)?,
        (-1.0_f64).exp(),
        1e-12,
    );
    // Shell quadrature of the emitted wave against the closed-form detection
    // probability at t = 40τ.
    let a0 = emission_normalization(&state);
    let t_detect = 40.0 * state.lifetime;
    let c = crate::constants::C_NM_PER_NS;
    let integral = adaptive_integral(
        |r| {
            let t_emit = t_detect - r / c;
            let amp = emission_propagation_amplitude(&state, r, t_detect, t_emit, 0.0)
                .expect("integration stays on the light cone");
            Complex64::new(
                4.0 * std::f64::consts::PI * r * r * (a0 * amp.norm()).powi(2),
                0.0,
            )
        },
        (1.0, c * t_detect),
        &QuadratureSpec::default(),
    )?;
    rel(
        checks,
        "decay/emission_normalization_quadrature",
        integral.value.re / detection_probability(&state, t_detect, 0.0)?,
        1.0,
        1e-6,
    );
    Ok(())
}
