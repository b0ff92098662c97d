//! End-to-end acceptance gate.
//!
//! Each test below is one numbered release criterion: a headline number the
//! library must reproduce, an oracle equivalence it must satisfy, or a scaling
//! law it must exhibit — together with a wall-clock budget. Every test prints
//! exactly one `[aNN] PASS/FAIL` line (visible under `--nocapture`) and then
//! asserts, so a red run names the criterion that broke.
//!
//! Tolerances are pinned here, not imported, so loosening one is a visible
//! diff in this file.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use pathamp::classical_wave::{
    de_broglie_wavelength, electron_wave, helmholtz_residual, row_superposition,
    strip_grating_superposition, ParticleKind, SpatialWave,
};
use pathamp::constants::{BOLTZMANN_EV_PER_K, ELECTRON_REST_ENERGY_EV, HBAR_C_EV_NM};
use pathamp::decay::{cat_alive_probability, width_from_lifetime, UnstableState};
use pathamp::electron_grating::{
    mean_momentum_from_kinetic, rms_emission_velocity, thermal_momentum_spread,
    ElectronGratingConfig, ProductionHypothesis,
};
use pathamp::kinematics::{
    phase_difference_exact, phase_difference_first_order, velocities_from_timing, PathPair,
    TimingRatio,
};
use pathamp::oracles::{
    convergence_order_fit, direct_complex_sum, gaussian_pair_integral, QuadratureSpec,
};
use pathamp::photon_grating::{pitch_from_first_maximum, PhotonGratingConfig};
use pathamp::profile::refine_local_max;
use pathamp::propagator::geometric_path_sum;

const MS: Duration = Duration::from_millis(1);

/// Emits the single verdict line for a criterion and enforces both the
/// numeric condition and the runtime budget.
fn gate(tag: &str, detail: &str, passed: bool, elapsed: Duration, budget: Duration) {
    let on_time = elapsed <= budget;
    let verdict = if passed && on_time { "PASS" } else { "FAIL" };
    println!("[{tag}] {verdict} {detail} — {elapsed:.2?} (budget {budget:?})");
    assert!(passed, "[{tag}] {detail}");
    assert!(on_time, "[{tag}] over budget: {elapsed:?} > {budget:?}");
}

/// Benched β = v/c for a 54 eV electron, used to seed timing constructions.
const BETA_54: f64 = 1.4536754476036974e-2;

#[test]
fn a01_grating_pitch_recovered_from_first_maximum() {
    let t0 = Instant::now();
    let pitch = pitch_from_first_maximum(2.0, 5.0_f64.to_radians()).expect("valid inputs");
    let elapsed = t0.elapsed();
    let err = (pitch / 7.1e3 - 1.0).abs();
    gate(
        "a01",
        &format!("2 eV photon, first maximum at 5° → pitch {pitch:.1} nm (7.1 µm ± 2%)"),
        err < 2e-2,
        elapsed,
        MS,
    );
}

#[test]
fn a02_photon_damping_to_oscillation_ratio() {
    let cfg = PhotonGratingConfig::reference();
    let t0 = Instant::now();
    let sp = cfg.strip_phase(0.3);
    let ratio = sp.q_part / sp.r_part;
    let elapsed = t0.elapsed();
    let err = (ratio / 1.64e-8 - 1.0).abs();
    gate(
        "a02",
        &format!("damping/oscillation ratio q/r = {ratio:.4e} (1.64e-8 ± 2%)"),
        err < 2e-2,
        elapsed,
        MS,
    );
}

#[test]
fn a03_damping_exponent_and_closed_form_fidelity() {
    let cfg = PhotonGratingConfig::reference();
    let t0 = Instant::now();
    let exponent = cfg.cosh_damping_exponent(FRAC_PI_2);
    let theta = 5.0_f64.to_radians();
    let closed = cfg.integrated_intensity(theta);
    let exact = cfg
        .integrated_intensity_exact(theta, &QuadratureSpec::default())
        .expect("time quadrature converges");
    let elapsed = t0.elapsed();
    let exp_err = (exponent / 2.4e-3 - 1.0).abs();
    let discrepancy = (exact / closed - 1.0).abs();
    gate(
        "a03",
        &format!(
            "full-tilt damping exponent {exponent:.3e} (2.4e-3 ± 5%); \
             exact/closed intensity discrepancy at 5° = {discrepancy:.2e} (< 5e-3)"
        ),
        exp_err < 5e-2 && discrepancy < 5e-3,
        elapsed,
        Duration::from_secs(10),
    );
}

#[test]
fn a04_electron_first_maximum_under_both_hypotheses() {
    let ept = ElectronGratingConfig::reference(ProductionHypothesis::EqualProductionTimes);
    let ev = ElectronGratingConfig::reference(ProductionHypothesis::EqualVelocities);
    let t0 = Instant::now();
    let th_ept = ept
        .first_maximum_angle()
        .expect("first order inside range")
        .to_degrees();
    let th_ev = ev
        .first_maximum_angle()
        .expect("first order inside range")
        .to_degrees();
    let elapsed = t0.elapsed();
    gate(
        "a04",
        &format!(
            "first maximum: equal production times {th_ept:.2}° (51° ± 0.5°), \
             equal velocities {th_ev:.3e}° (9.4e-3° ± 5%)"
        ),
        (th_ept - 51.0).abs() < 0.5 && (th_ev / 9.4e-3 - 1.0).abs() < 5e-2,
        elapsed,
        MS,
    );
}

#[test]
fn a05_thermal_beam_scalars() {
    let t0 = Instant::now();
    let beta = rms_emission_velocity(2500.0).expect("valid temperature");
    let kinetic = 1.5 * BOLTZMANN_EV_PER_K * 2500.0;
    let p54 = mean_momentum_from_kinetic(54.0).expect("positive kinetic energy");
    let spread_ratio = thermal_momentum_spread(2500.0).expect("valid temperature")
        / mean_momentum_from_kinetic(50.0).expect("positive kinetic energy");
    let elapsed = t0.elapsed();
    let checks = [
        ((beta / 1.12e-3 - 1.0).abs(), 1e-2),
        ((kinetic / 0.32 - 1.0).abs(), 2e-2),
        ((p54 / 7.43e3 - 1.0).abs(), 5e-3),
        ((spread_ratio / 6e-2 - 1.0).abs(), 1e-1),
    ];
    gate(
        "a05",
        &format!(
            "2500 K filament: rms β {beta:.4e} (1.12e-3 ± 1%), kinetic {kinetic:.3} eV \
             (0.32 ± 2%), ⟨pc⟩(54 eV) {p54:.1} eV (7430 ± 0.5%), σ_p/⟨p⟩ {spread_ratio:.3e} \
             (6e-2 ± 10%)"
        ),
        checks.iter().all(|&(err, tol)| err < tol),
        elapsed,
        MS,
    );
}

#[test]
fn a06a_path_sum_closed_form_vs_direct_summation() {
    // Phase arithmetic is 2π-periodic, so the real part of α is drawn from
    // [−π, π]; values within 1e-8 of a multiple of 2π take the explicit
    // summation branch by construction. The imaginary part is capped so the
    // damping growth e^{|Im α|·N} stays bounded.
    //
    // At near-destructive α the sum is orders of magnitude below its term
    // scale Σ|e^{ikα}|, where *any* f64 route is limited by the rounding of
    // the phases k·α — a pointwise relative comparison there measures
    // conditioning, not correctness. The discrepancy is therefore asserted
    // against the term scale everywhere, and pointwise wherever the sum
    // retains at least 10% of that scale.
    let mut rng = StdRng::seed_from_u64(0x1905_2026);
    let t0 = Instant::now();
    let mut worst_scaled = 0.0_f64;
    let mut worst_pointwise = 0.0_f64;
    for _ in 0..1000 {
        let n = (10.0_f64.powf(rng.gen_range(0.0..4.0)).ceil() as u32).clamp(1, 10_000);
        let re = rng.gen_range(-PI..PI);
        let cap = 10.0 / n as f64;
        let alpha = Complex64::new(re, rng.gen_range(-cap..cap));
        let closed = geometric_path_sum(alpha, n);
        let terms: Vec<Complex64> = (0..n)
            .map(|k| (Complex64::i() * alpha * k as f64).exp())
            .collect();
        let scale: f64 = terms.iter().map(|t| t.norm()).sum();
        let direct = direct_complex_sum(&terms);
        let diff = (closed - direct).norm();
        worst_scaled = worst_scaled.max(diff / scale);
        if direct.norm() >= 0.1 * scale {
            worst_pointwise = worst_pointwise.max(diff / direct.norm());
        }
    }
    let elapsed = t0.elapsed();
    gate(
        "a06a",
        &format!(
            "closed path sum vs compensated direct sum, 1000 cases: worst vs term scale \
             {worst_scaled:.2e}, worst pointwise where conditioned {worst_pointwise:.2e} (< 1e-11)"
        ),
        worst_scaled < 1e-11 && worst_pointwise < 1e-11,
        elapsed,
        Duration::from_secs(5),
    );
}

#[test]
fn a06b_damped_cosine_vs_momentum_spectrum_quadrature() {
    let p54 = mean_momentum_from_kinetic(54.0).expect("positive kinetic energy");
    let spec = QuadratureSpec::default();
    let t0 = Instant::now();
    let mut worst = 0.0_f64;
    for theta_deg in [1.0_f64, 10.0, 51.0, 89.0] {
        let theta = theta_deg.to_radians();
        for temperature in [500.0, 2500.0, 5000.0] {
            let cfg = ElectronGratingConfig::new(
                p54,
                temperature,
                0.215,
                50,
                2.7e7,
                2.3e7,
                ProductionHypothesis::EqualProductionTimes,
                1.0,
            )
            .expect("valid beam");
            let dist = cfg.momentum_distribution().expect("positive spread");
            let damping = cfg.ept_damping(theta).expect("valid temperature");
            let pair = gaussian_pair_integral(damping.delta_s, &dist, damping.delta_p, &spec)
                .expect("quadrature converges");
            let closed = Complex64::from_polar(
                damping.factor,
                cfg.mean_momentum * damping.delta_s / HBAR_C_EV_NM,
            );
            worst = worst.max((pair - closed).norm() / closed.norm());
        }
    }
    let elapsed = t0.elapsed();
    gate(
        "a06b",
        &format!(
            "damped-cosine interference vs momentum quadrature over 4 angles × 3 temperatures: \
             worst rel {worst:.2e} (< 1e-6)"
        ),
        worst < 1e-6,
        elapsed,
        Duration::from_secs(10),
    );
}

#[test]
fn a06c_complex_density_vs_expanded_form() {
    let mut rng = StdRng::seed_from_u64(0x0ac5_e55a);
    let log_uniform = |rng: &mut StdRng, lo: f64, hi: f64| (rng.gen_range(lo.ln()..hi.ln())).exp();
    let t0 = Instant::now();
    let mut worst_scaled = 0.0_f64;
    let mut worst_pointwise = 0.0_f64;
    for _ in 0..200 {
        let energy = rng.gen_range(0.5..5.0);
        let lifetime = log_uniform(&mut rng, 1.0, 100.0);
        let pitch = log_uniform(&mut rng, 500.0, 2.0e4);
        let strip = pitch * rng.gen_range(1e-3..1.0_f64);
        let n: u32 = rng.gen_range(1..=2000);
        let r_source = log_uniform(&mut rng, 1e8, 1e10);
        let r_observer = log_uniform(&mut rng, 1e8, 1e10);
        let theta = rng.gen_range(-FRAC_PI_2..FRAC_PI_2);
        let cfg = PhotonGratingConfig::new(
            energy, lifetime, pitch, strip, n, r_source, r_observer, 1.0,
        )
        .expect("sampled configuration is valid");
        let t_detect = cfg.earliest_arrival(0.0) + rng.gen_range(0.0..5.0 * lifetime);
        let via_modulus = cfg
            .detection_time_density(theta, t_detect, 0.0)
            .expect("valid detection time");
        let via_expansion = cfg
            .detection_time_density_expanded(theta, t_detect, 0.0)
            .expect("valid detection time");
        // Attainable density scale at this configuration: prefactor times the
        // squared damped strip and row bounds. At deep destructive angles the
        // density sits many orders below this, and the two independent f64
        // routes can only agree to the rounding of their ~N·r·d phases — the
        // discrepancy is asserted against the scale everywhere, and pointwise
        // wherever the density keeps at least 1e-3 of it.
        let dt = t_detect - cfg.earliest_arrival(0.0);
        let sp = cfg.strip_phase(theta);
        let rows = cfg.n_strips as f64;
        let scale = (cfg.scale / (cfg.r_observer * cfg.r_source)).powi(2)
            * (-dt / cfg.lifetime).exp()
            * (cfg.strip_width * (sp.q_part * cfg.strip_width).exp()).powi(2)
            * (rows * (rows * sp.q_part * cfg.pitch).exp()).powi(2);
        let diff = (via_modulus - via_expansion).abs();
        worst_scaled = worst_scaled.max(diff / scale);
        let value = via_modulus.abs().max(via_expansion.abs());
        if value >= 1e-3 * scale {
            worst_pointwise = worst_pointwise.max(diff / value);
        }
    }
    let elapsed = t0.elapsed();
    gate(
        "a06c",
        &format!(
            "detection density |A|² route vs expanded interference route, 200 random \
             configurations: worst vs pattern scale {worst_scaled:.2e}, worst pointwise \
             where conditioned {worst_pointwise:.2e} (< 1e-10)"
        ),
        worst_scaled < 1e-10 && worst_pointwise < 1e-10,
        elapsed,
        Duration::from_secs(5),
    );
}

/// Golden-section refinement followed by one three-point parabolic vertex
/// polish. The polish uses the same stencil for every pattern handed to it,
/// so its small quartic bias is common mode and cancels when two argmax
/// estimates are compared.
fn polished_argmax<F: Fn(f64) -> f64>(f: F, seed: f64, half_width: f64) -> f64 {
    let (x, _) = refine_local_max(&f, seed, half_width, 1e-8).expect("seeded bracket is valid");
    let delta = 1e-5;
    let (below, center, above) = (f(x - delta), f(x), f(x + delta));
    x + delta * (below - above) / (2.0 * (below - 2.0 * center + above))
}

#[test]
fn a06d_classical_superposition_matches_path_amplitude_pattern() {
    let t0 = Instant::now();

    // Undamped photon grating, strip width off the pitch so every sampled
    // order keeps a live envelope.
    let cfg = PhotonGratingConfig::new(2.0, 10.0, 7112.0, 2000.0, 50, 1e9, 1e9, 1.0)
        .expect("valid grating");
    let lambda = de_broglie_wavelength(ParticleKind::Photon, cfg.photon_energy)
        .expect("positive energy");
    let light = SpatialWave::from_wavelength(lambda, 0.0, 1.0).expect("positive wavelength");
    let quantum = |th: f64| cfg.integrated_intensity(th);
    let classical = |th: f64| {
        strip_grating_superposition(&light, cfg.r_observer, cfg.pitch, cfg.strip_width, cfg.n_strips, th)
            .expect("valid grating inputs")
            .norm_sqr()
    };
    let mut shape_spread = 0.0_f64;
    let mut first = None;
    for th in [3.0_f64, 10.0, 20.0, 40.0, 70.0].map(|d| d.to_radians()) {
        let ratio = quantum(th) / classical(th);
        let base = *first.get_or_insert(ratio);
        shape_spread = shape_spread.max((ratio / base - 1.0).abs());
    }
    let mut worst_dx = 0.0_f64;
    for order in cfg.constructive_angles(3) {
        let lobe = lambda / (cfg.n_strips as f64 * cfg.pitch * order.theta.cos());
        let xq = polished_argmax(quantum, order.theta, 0.45 * lobe);
        let xc = polished_argmax(classical, order.theta, 0.45 * lobe);
        worst_dx = worst_dx.max((xq - xc).abs());
    }

    // Thermal electron beam under equal production times against the matter
    // wave built from the same mean momentum.
    let beam = ElectronGratingConfig::reference(ProductionHypothesis::EqualProductionTimes);
    let matter = electron_wave(&beam).expect("valid beam");
    let quantum_e = |th: f64| beam.dg_pattern(th);
    let classical_e = |th: f64| {
        row_superposition(&matter, beam.r_observer, beam.row_spacing, beam.n_rows, th)
            .expect("valid grating inputs")
            .norm_sqr()
    };
    let mut first = None;
    for th in [5.0_f64, 17.0, 33.0, 62.0].map(|d| d.to_radians()) {
        let ratio = quantum_e(th) / classical_e(th);
        let base = *first.get_or_insert(ratio);
        shape_spread = shape_spread.max((ratio / base - 1.0).abs());
    }
    let th1 = beam.first_maximum_angle().expect("first order exists");
    let lobe = 2.0 * PI
        / (beam.n_rows as f64 * beam.phase_rate().abs() * beam.row_spacing * th1.cos());
    let xq = polished_argmax(quantum_e, th1, 0.45 * lobe);
    let xc = polished_argmax(classical_e, th1, 0.45 * lobe);
    worst_dx = worst_dx.max((xq - xc).abs());

    let elapsed = t0.elapsed();
    gate(
        "a06d",
        &format!(
            "classical wave vs path amplitudes: shape ratio spread {shape_spread:.2e} (< 1e-10), \
             argmax offset {worst_dx:.2e} rad (< 1e-9)"
        ),
        shape_spread < 1e-10 && worst_dx < 1e-9,
        elapsed,
        Duration::from_secs(10),
    );
}

#[test]
fn a07_scaling_orders_of_the_truncated_expansions() {
    let c = 1.0; // velocities already in units of c
    let m = ELECTRON_REST_ENERGY_EV;
    let t0 = Instant::now();

    // Symmetric split Δs/s̄ = h, timing ratio 30% of the way from equal times
    // to equal velocities; the first-order phase error must shrink as h².
    let pair_at = |h: f64| {
        let s_bar = 5.0e7;
        let (s_a, s_b) = (s_bar * (1.0 + h / 2.0), s_bar * (1.0 - h / 2.0));
        let ratio_ev = s_a / s_b;
        let ratio = 1.0 + 0.3 * (ratio_ev - 1.0);
        let timing = TimingRatio::new(ratio, (ratio - 1.0) * s_b / (BETA_54 * c))
            .expect("ratio above one");
        let vp = velocities_from_timing((s_a, s_b), &timing).expect("physical timing");
        let pair = PathPair::from_velocities(s_a, s_b, vp.beta_a, vp.beta_b, m)
            .expect("subluminal velocities");
        (pair, ratio, ratio_ev)
    };
    let phase_samples: Vec<(f64, f64)> = [1e-3, 5e-4, 2.5e-4, 1e-4]
        .iter()
        .map(|&h| {
            let (pair, ratio, ratio_ev) = pair_at(h);
            let fo = phase_difference_first_order(
                pair.mean_s(),
                pair.delta_s(),
                pair.mean_p(),
                pair.mass_energy,
                ratio,
                ratio_ev,
            )
            .expect("valid pair");
            (h, (fo - phase_difference_exact(&pair)).abs())
        })
        .collect();
    let phase_order = convergence_order_fit(&phase_samples).expect("clean power law");

    // Central-difference Helmholtz residual of the exact spherical wave must
    // shrink as step².
    let wave = SpatialWave::new(0.0101366, 0.0, 1.0).expect("valid wave");
    let residual_samples: Vec<(f64, f64)> = [2.0, 1.0, 0.5, 0.2]
        .iter()
        .map(|&h| (h, helmholtz_residual(&wave, 5.0e5, h).expect("stencil in domain")))
        .collect();
    let residual_order = convergence_order_fit(&residual_samples).expect("clean power law");

    let elapsed = t0.elapsed();
    gate(
        "a07",
        &format!(
            "first-order phase error order {phase_order:.3} (2.0 ± 0.1), Helmholtz residual \
             order {residual_order:.3} (2.0 ± 0.1)"
        ),
        (phase_order - 2.0).abs() < 0.1 && (residual_order - 2.0).abs() < 0.1,
        elapsed,
        Duration::from_secs(5),
    );
}

#[test]
fn a08_decay_width_and_cat_bookkeeping() {
    let t0 = Instant::now();
    let width = width_from_lifetime(10.0).expect("positive lifetime");
    let tau = 1.44;
    let mut complement_exact = true;
    for i in 0..10_000 {
        let t = 5.0 * tau * i as f64 / 9_999.0;
        let alive = cat_alive_probability(tau, t, 0.25).expect("valid times");
        complement_exact &= alive + (1.0 - alive) == 1.0;
    }
    let at_one_lifetime = cat_alive_probability(tau, tau, 0.0).expect("valid times");
    let extent = UnstableState::new(2.0, 10.0)
        .expect("valid level")
        .wavepacket_extent();
    let elapsed = t0.elapsed();
    let width_err = (width / 6.582e-8 - 1.0).abs();
    let e_inv_err = (at_one_lifetime - (-1.0_f64).exp()).abs();
    let extent_err = (extent / 3.0e9 - 1.0).abs();
    gate(
        "a08",
        &format!(
            "Γ(10 ns) = {width:.4e} eV (6.582e-8 ± 0.1%); alive+dead ≡ 1 on 10⁴ grid: \
             {complement_exact}; alive(τ) − e⁻¹ = {e_inv_err:.1e} (< 1e-12); \
             wavepacket extent {extent:.4e} nm (3 m ± 0.1%)"
        ),
        width_err < 1e-3 && complement_exact && e_inv_err < 1e-12 && extent_err < 1e-3,
        elapsed,
        Duration::from_secs(1),
    );
}

#[test]
fn a09_interference_term_limits_under_each_hypothesis() {
    let p54 = mean_momentum_from_kinetic(54.0).expect("positive kinetic energy");
    let theta = 0.6;
    let t0 = Instant::now();
    // Zero thermal spread with a finite momentum offset: no overlap remains
    // between the two paths' momentum amplitudes.
    let cold = ElectronGratingConfig::new(
        p54,
        0.0,
        0.215,
        50,
        2.7e7,
        2.3e7,
        ProductionHypothesis::EqualProductionTimes,
        1.0,
    )
    .expect("zero temperature is a valid limit");
    let cold_term = cold.interference_term(theta).expect("valid angle");
    let cold_total = cold.two_path_interference(theta).expect("valid angle");
    let offset_is_finite = cold.momentum_offset(theta) > 0.0;

    // Equal velocities carry no thermal damping at all: the two-path
    // probability must be bitwise identical across filament temperatures.
    let ev_at = |temperature: f64| {
        ElectronGratingConfig::new(
            p54,
            temperature,
            0.215,
            50,
            2.7e7,
            2.3e7,
            ProductionHypothesis::EqualVelocities,
            1.0,
        )
        .expect("valid beam")
        .two_path_interference(theta)
        .expect("valid angle")
    };
    let base = ev_at(500.0);
    let ev_invariant = [2500.0, 5000.0].iter().all(|&t| ev_at(t) == base);
    let elapsed = t0.elapsed();
    gate(
        "a09",
        &format!(
            "σ_p = 0 with finite Δp: interference term {cold_term:.1e} (exactly 0), total \
             2·scale² = {cold_total}; equal-velocity pattern temperature-invariant: {ev_invariant}"
        ),
        offset_is_finite && cold_term == 0.0 && cold_total == 2.0 && ev_invariant,
        elapsed,
        Duration::from_secs(1),
    );
}
