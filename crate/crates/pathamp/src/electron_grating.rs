//! Electron diffraction from atomic rows, Davisson–Germer style.
//!
//! Electrons boil off a hot filament with a thermal Gaussian momentum
//! amplitude, are accelerated to a mean momentum ⟨p⟩, and scatter once from
//! each of N parallel surface rows. The path via row k is longer by
//! k·d·sinθ. Which phase the extra length contributes depends on a physical
//! assumption about the two interfering histories:
//!
//! - **Equal production times**: both paths start together, so momenta must
//!   differ slightly for the electron to arrive simultaneously; the
//!   momentum-averaged phase advances at ⟨p⟩/ħ per unit length, giving
//!   sinθ₁ = 2πħ/(⟨p⟩d) — the observed 51° for 54 eV on nickel.
//! - **Equal velocities**: both paths carry the same momentum and start at
//!   different times; only the intrinsic phase −(mc)²s/(ħ·pc) distinguishes
//!   them, giving a first maximum three orders of magnitude smaller.
//!
//! Averaging over the thermal momentum spread damps the interference term by
//! a Gaussian factor in the first case and not at all in the second.

use num_complex::Complex64;

use crate::constants::{BOLTZMANN_EV_PER_K, ELECTRON_REST_ENERGY_EV, HBAR_C_EV_NM};
use crate::error::{Error, Result};
use crate::propagator::{geometric_path_sum, propagator_phase, KinematicState};

/// Which history assignment relates the two interfering paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductionHypothesis {
    /// Paths begin together; arrival simultaneity fixes a small momentum
    /// difference between them.
    EqualProductionTimes,
    /// Paths carry identical momenta and begin at different times.
    EqualVelocities,
}

/// Thermal Gaussian momentum amplitude: mean ⟨p⟩ and spread σ_p in eV/c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumDistribution {
    pub mean: f64,
    pub width: f64,
}

impl MomentumDistribution {
    pub fn new(mean: f64, width: f64) -> Result<Self> {
        if !(mean > 0.0) || !mean.is_finite() {
            return Err(Error::InvalidParameter {
                name: "mean",
                reason: format!("mean momentum must be positive and finite, got {mean}"),
            });
        }
        if !(width > 0.0) || !width.is_finite() {
            return Err(Error::InvalidParameter {
                name: "width",
                reason: format!("momentum spread must be positive and finite, got {width}"),
            });
        }
        Ok(Self { mean, width })
    }

    /// Amplitude f(p) = π^{-1/4} σ^{-1/2} exp[−(p−⟨p⟩)²/(2σ²)], normalized so
    /// ∫|f|² dp = 1.
    pub fn amplitude(&self, p: f64) -> f64 {
        let z = (p - self.mean) / self.width;
        std::f64::consts::PI.powf(-0.25) * self.width.powf(-0.5) * (-0.5 * z * z).exp()
    }
}

/// Beam, filament, and row-lattice parameters. Momenta in eV/c, distances in
/// nm, temperature in K. `scale` absorbs the constant per-row scattering
/// amplitude; only relative intensities are physical.
#[derive(Debug, Clone, PartialEq)]
pub struct ElectronGratingConfig {
    pub mean_momentum: f64,
    pub filament_temperature: f64,
    pub row_spacing: f64,
    pub n_rows: u32,
    pub r_source: f64,
    pub r_observer: f64,
    pub hypothesis: ProductionHypothesis,
    pub scale: f64,
}

impl ElectronGratingConfig {
    pub fn new(
        mean_momentum: f64,
        filament_temperature: f64,
        row_spacing: f64,
        n_rows: u32,
        r_source: f64,
        r_observer: f64,
        hypothesis: ProductionHypothesis,
        scale: f64,
    ) -> Result<Self> {
        fn positive(name: &'static str, v: f64) -> Result<()> {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be positive and finite, got {v}"),
                });
            }
            Ok(())
        }
        positive("mean_momentum", mean_momentum)?;
        if !(filament_temperature >= 0.0) || !filament_temperature.is_finite() {
            return Err(Error::InvalidParameter {
                name: "filament_temperature",
                reason: format!("must be non-negative and finite, got {filament_temperature}"),
            });
        }
        positive("row_spacing", row_spacing)?;
        if n_rows == 0 {
            return Err(Error::InvalidParameter {
                name: "n_rows",
                reason: "need at least one row".into(),
            });
        }
        positive("r_source", r_source)?;
        positive("r_observer", r_observer)?;
        positive("scale", scale)?;
        let spread = thermal_momentum_spread(filament_temperature)?;
        // The thermal-averaging treatment assumes a narrow momentum band.
        if spread / mean_momentum >= 0.2 {
            return Err(Error::InvalidParameter {
                name: "filament_temperature",
                reason: format!(
                    "thermal spread {spread:.3e} eV/c is not small against mean momentum \
                     {mean_momentum:.3e} eV/c (ratio ≥ 0.2)"
                ),
            });
        }
        Ok(Self {
            mean_momentum,
            filament_temperature,
            row_spacing,
            n_rows,
            r_source,
            r_observer,
            hypothesis,
            scale,
        })
    }

    /// Nickel-surface defaults: 54 eV beam, 2500 K filament, 0.215 nm row
    /// spacing, 50 rows, source 27 mm and detector 23 mm from the target.
    pub fn reference(hypothesis: ProductionHypothesis) -> Self {
        Self {
            mean_momentum: mean_momentum_from_kinetic(54.0).expect("positive kinetic energy"),
            filament_temperature: 2500.0,
            row_spacing: 0.215,
            n_rows: 50,
            r_source: 2.7e7,
            r_observer: 2.3e7,
            hypothesis,
            scale: 1.0,
        }
    }

    /// Thermal momentum amplitude implied by the filament temperature.
    pub fn momentum_distribution(&self) -> Result<MomentumDistribution> {
        MomentumDistribution::new(
            self.mean_momentum,
            thermal_momentum_spread(self.filament_temperature)?,
        )
    }

    /// Geometric length of the path via row k at detection angle θ:
    /// r_S + r_O + k·d·sinθ.
    pub fn path_length(&self, k: u32, theta: f64) -> f64 {
        self.r_source + self.r_observer + k as f64 * self.row_spacing * theta.sin()
    }

    /// Momentum-averaged phase accumulated per unit path length (1/nm). The
    /// whole hypothesis distinction lives here: ⟨p⟩/ħ for equal production
    /// times, −(mc)²/(ħ⟨p⟩) for equal velocities.
    pub fn phase_rate(&self) -> f64 {
        match self.hypothesis {
            ProductionHypothesis::EqualProductionTimes => self.mean_momentum / HBAR_C_EV_NM,
            ProductionHypothesis::EqualVelocities => {
                -ELECTRON_REST_ENERGY_EV * ELECTRON_REST_ENERGY_EV
                    / (HBAR_C_EV_NM * self.mean_momentum)
            }
        }
    }

    /// Phase advance between adjacent rows at angle θ (radians).
    pub fn alpha_e(&self, theta: f64) -> f64 {
        self.phase_rate() * self.row_spacing * theta.sin()
    }

    /// Momentum-averaged phase of the path via row k: ⟨φ_k⟩ = k·α_e + φ₀,
    /// with φ₀ the common phase over r_S + r_O.
    pub fn averaged_phase(&self, k: u32, theta: f64) -> f64 {
        self.phase_rate() * self.path_length(k, theta)
    }

    /// Arrival-simultaneity momentum offset between adjacent-row paths under
    /// equal production times: Δp = ⟨p⟩·Δs/s̄ with s̄ = r_S + r_O.
    pub fn momentum_offset(&self, theta: f64) -> f64 {
        self.mean_momentum * self.row_spacing * theta.sin() / (self.r_source + self.r_observer)
    }

    /// Gaussian damping of the thermal-averaged interference term between
    /// adjacent-row paths under equal production times.
    pub fn ept_damping(&self, theta: f64) -> Result<InterferenceDamping> {
        let sigma = thermal_momentum_spread(self.filament_temperature)?;
        let delta_s = self.row_spacing * theta.sin();
        let delta_p = self.momentum_offset(theta);
        let exponent_momentum = if delta_p == 0.0 {
            0.0
        } else {
            // σ_p → 0 with a path-length mismatch leaves no momentum overlap:
            // the exponent diverges and the factor is exactly zero.
            (delta_p / (2.0 * sigma)).powi(2)
        };
        let exponent_packet = (sigma * delta_s / (2.0 * HBAR_C_EV_NM)).powi(2);
        Ok(InterferenceDamping {
            delta_p,
            delta_s,
            exponent_momentum,
            exponent_packet,
            factor: (-exponent_momentum - exponent_packet).exp(),
        })
    }

    /// Oscillating part of the two-path probability:
    /// 2·scale²·D(θ)·cos(phase-rate·Δs). Under equal velocities D ≡ 1.
    pub fn interference_term(&self, theta: f64) -> Result<f64> {
        check_detection_angle(theta)?;
        let damping = match self.hypothesis {
            ProductionHypothesis::EqualProductionTimes => self.ept_damping(theta)?.factor,
            ProductionHypothesis::EqualVelocities => 1.0,
        };
        Ok(2.0 * self.scale * self.scale * damping * self.alpha_e(theta).cos())
    }

    /// Detection probability for the two-row grating:
    /// P = 2·scale²·[1 + D(θ)·cos α_e], in [0, 4]·scale².
    pub fn two_path_interference(&self, theta: f64) -> Result<f64> {
        Ok(2.0 * self.scale * self.scale + self.interference_term(theta)?)
    }

    /// N-row angular distribution with the momentum-averaged per-row phase:
    /// scale²·sin²(N·α_e/2)/sin²(α_e/2), maxima N²·scale² at α_e = 2πl.
    pub fn dg_pattern(&self, theta: f64) -> f64 {
        let alpha = Complex64::new(self.alpha_e(theta), 0.0);
        self.scale * self.scale * geometric_path_sum(alpha, self.n_rows).norm_sqr()
    }

    /// First-order maximum angle |α_e| = 2π, if one exists inside the
    /// physical range |sinθ| ≤ 1.
    pub fn first_maximum_angle(&self) -> Option<f64> {
        let s = 2.0 * std::f64::consts::PI / (self.phase_rate().abs() * self.row_spacing);
        if s <= 1.0 {
            Some(s.asin())
        } else {
            None
        }
    }
}

/// Pieces of the equal-production-times damping factor
/// D = exp[−(Δp/2σ_p)²]·exp[−(σ_p·Δs/2ħ)²].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceDamping {
    /// Momentum offset between the two paths (eV/c).
    pub delta_p: f64,
    /// Path-length difference d·sinθ (nm).
    pub delta_s: f64,
    /// (Δp/2σ_p)²: overlap loss of the two momentum amplitudes.
    pub exponent_momentum: f64,
    /// (σ_p·Δs/2ħ)²: wave-packet spread over the path-length difference.
    pub exponent_packet: f64,
    pub factor: f64,
}

fn check_detection_angle(theta: f64) -> Result<()> {
    if !(theta.abs() <= std::f64::consts::FRAC_PI_2) {
        return Err(Error::InvalidParameter {
            name: "theta",
            reason: format!("detection angle must satisfy |θ| ≤ π/2, got {theta} rad"),
        });
    }
    Ok(())
}

/// RMS emission speed of thermal electrons in units of c: √(3k_B·T/(mₑc²)).
pub fn rms_emission_velocity(temperature: f64) -> Result<f64> {
    check_temperature(temperature)?;
    Ok((3.0 * BOLTZMANN_EV_PER_K * temperature / ELECTRON_REST_ENERGY_EV).sqrt())
}

/// Thermal momentum spread σ_p = √(2·mₑc²·k_B·T)/c in eV/c.
pub fn thermal_momentum_spread(temperature: f64) -> Result<f64> {
    check_temperature(temperature)?;
    Ok((2.0 * ELECTRON_REST_ENERGY_EV * BOLTZMANN_EV_PER_K * temperature).sqrt())
}

fn check_temperature(temperature: f64) -> Result<()> {
    if !(temperature >= 0.0) || !temperature.is_finite() {
        return Err(Error::InvalidParameter {
            name: "temperature",
            reason: format!("must be non-negative and finite, got {temperature}"),
        });
    }
    Ok(())
}

/// Relativistic momentum after acceleration through kinetic energy K:
/// pc = √(K² + 2K·mₑc²).
pub fn mean_momentum_from_kinetic(kinetic_energy: f64) -> Result<f64> {
    if !(kinetic_energy >= 0.0) || !kinetic_energy.is_finite() {
        return Err(Error::InvalidParameter {
            name: "kinetic_energy",
            reason: format!("must be non-negative and finite, got {kinetic_energy}"),
        });
    }
    Ok((kinetic_energy * (kinetic_energy + 2.0 * ELECTRON_REST_ENERGY_EV)).sqrt())
}

/// Intrinsic path phase −(mc)²·s/(ħ·pc) for an electron of momentum `pc_ev`
/// over `path_length` nm.
pub fn electron_path_phase(pc_ev: f64, rest_energy: f64, path_length: f64) -> Result<f64> {
    let state = KinematicState::massive(rest_energy, pc_ev)?;
    propagator_phase(&state, path_length)
}
