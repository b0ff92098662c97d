//! Effective spatial (classical) wave theory and its equivalence checks.
//!
//! Dropping the common time-dependent factor from every path amplitude
//! leaves a purely spatial wave U(r) = (Ã₀/r)·e^{iκr−μr} whose wavenumber is
//! set by the de Broglie relation: κ = E_γ/ħc for photons, κ = ⟨p⟩/ħc for
//! electrons under the equal-production-times picture. Superposing U over
//! the grating geometry reproduces the path-amplitude interference pattern
//! shape exactly — with Planck's constant absorbed into a single measured
//! wavelength — which is why a classical wave description works at all.
//!
//! The damped photon wave (finite source lifetime) is *not* a Helmholtz
//! solution; the residual computed here quantifies exactly what the
//! classical picture misses.

use num_complex::Complex64;

use crate::constants::{C_NM_PER_NS, HBAR_C_EV_NM};
use crate::electron_grating::{ElectronGratingConfig, ProductionHypothesis};
use crate::error::{Error, Result};
use crate::oracles::direct_complex_sum;
use crate::photon_grating::PhotonGratingConfig;

/// Which dispersion relation sets the spatial period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParticleKind {
    Photon,
    Electron,
}

/// Outgoing spherical wave U(r) = (Ã₀/r)·exp(iκr − μr): wavenumber κ and
/// damping μ in 1/nm, dimensionless source amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialWave {
    pub wavenumber: f64,
    pub damping: f64,
    pub source_amplitude: f64,
}

impl SpatialWave {
    /// κ = 0 is allowed and degenerates to the Laplace solution Ã₀/r.
    pub fn new(wavenumber: f64, damping: f64, source_amplitude: f64) -> Result<Self> {
        if !(wavenumber >= 0.0) || !wavenumber.is_finite() {
            return Err(Error::InvalidParameter {
                name: "wavenumber",
                reason: format!("must be non-negative and finite, got {wavenumber}"),
            });
        }
        if !(damping >= 0.0) || !damping.is_finite() {
            return Err(Error::InvalidParameter {
                name: "damping",
                reason: format!("must be non-negative and finite, got {damping}"),
            });
        }
        if !(source_amplitude > 0.0) || !source_amplitude.is_finite() {
            return Err(Error::InvalidParameter {
                name: "source_amplitude",
                reason: format!("must be positive and finite, got {source_amplitude}"),
            });
        }
        Ok(Self {
            wavenumber,
            damping,
            source_amplitude,
        })
    }

    /// Build from a measured wavelength alone: κ = 2π/λ. No ħ enters.
    pub fn from_wavelength(lambda: f64, damping: f64, source_amplitude: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda",
                reason: format!("wavelength must be positive and finite, got {lambda}"),
            });
        }
        Self::new(2.0 * std::f64::consts::PI / lambda, damping, source_amplitude)
    }

    /// U(r) at radius r > 0 nm.
    pub fn amplitude(&self, r: f64) -> Result<Complex64> {
        if r == 0.0 {
            return Err(Error::KernelAtOrigin);
        }
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidParameter {
                name: "r",
                reason: format!("radius must be positive and finite, got {r}"),
            });
        }
        Ok(Complex64::from_polar(
            self.source_amplitude * (-self.damping * r).exp() / r,
            self.wavenumber * r,
        ))
    }
}

/// Wavelength from the dispersion relation: λ = 2πħc/E_γ for photons,
/// λ = 2πħc/(pc) for electrons (h/p in conventional units).
pub fn de_broglie_wavelength(kind: ParticleKind, energy_or_momentum: f64) -> Result<f64> {
    let name = match kind {
        ParticleKind::Photon => "photon_energy",
        ParticleKind::Electron => "mean_momentum",
    };
    if !(energy_or_momentum > 0.0) || !energy_or_momentum.is_finite() {
        return Err(Error::InvalidParameter {
            name,
            reason: format!("must be positive and finite, got {energy_or_momentum}"),
        });
    }
    Ok(2.0 * std::f64::consts::PI * HBAR_C_EV_NM / energy_or_momentum)
}

/// Spatial wave carried by photons from a decaying source: κ = E_γ/ħc, and
/// damping Γ/(2ħc) = 1/(2cτ) when the lifetime is finite.
pub fn photon_wave(config: &PhotonGratingConfig) -> SpatialWave {
    let damping = if config.lifetime.is_finite() {
        1.0 / (2.0 * C_NM_PER_NS * config.lifetime)
    } else {
        0.0
    };
    SpatialWave {
        wavenumber: config.photon_energy / HBAR_C_EV_NM,
        damping,
        source_amplitude: config.scale,
    }
}

/// U_γ(r) for the grating source.
pub fn photon_spatial_wave(config: &PhotonGratingConfig, r: f64) -> Result<Complex64> {
    photon_wave(config).amplitude(r)
}

/// Matter wave κ = ⟨p⟩/ħc. Only the equal-production-times picture yields a
/// wave with the experimentally confirmed wavelength; the equal-velocities
/// assignment has no spatial-wave counterpart here.
pub fn electron_wave(config: &ElectronGratingConfig) -> Result<SpatialWave> {
    if config.hypothesis == ProductionHypothesis::EqualVelocities {
        return Err(Error::EqualVelocityWaveUndefined);
    }
    Ok(SpatialWave {
        wavenumber: config.mean_momentum / HBAR_C_EV_NM,
        damping: 0.0,
        source_amplitude: config.scale,
    })
}

/// U_e(r) for the row grating beam.
pub fn electron_spatial_wave(config: &ElectronGratingConfig, r: f64) -> Result<Complex64> {
    electron_wave(config)?.amplitude(r)
}

/// Far-field superposition over N point rows spaced `spacing` apart: the wave
/// evaluated at the observer, advanced per row by the extra path k·d·sinθ.
/// The row sum is performed term by term (compensated), not in closed form.
pub fn row_superposition(
    wave: &SpatialWave,
    r_observer: f64,
    spacing: f64,
    n_rows: u32,
    theta: f64,
) -> Result<Complex64> {
    check_grating_inputs(r_observer, spacing, n_rows, theta)?;
    let base = wave.amplitude(r_observer)?;
    let step = Complex64::new(-wave.damping, wave.wavenumber) * spacing * theta.sin();
    let terms: Vec<Complex64> = (0..n_rows).map(|k| (step * k as f64).exp()).collect();
    Ok(base * direct_complex_sum(&terms))
}

/// Far-field superposition over N reflecting strips of width b on pitch d:
/// the row sum times the continuous within-strip integral
/// ∫₀^b exp[(iκ − μ)·s·sinθ] ds, both evaluated directly.
pub fn strip_grating_superposition(
    wave: &SpatialWave,
    r_observer: f64,
    pitch: f64,
    strip_width: f64,
    n_strips: u32,
    theta: f64,
) -> Result<Complex64> {
    if !(strip_width > 0.0) || strip_width > pitch {
        return Err(Error::InvalidParameter {
            name: "strip_width",
            reason: format!("need 0 < strip width ≤ pitch, got {strip_width} vs {pitch}"),
        });
    }
    let rows = row_superposition(wave, r_observer, pitch, n_strips, theta)?;
    let w = Complex64::new(-wave.damping, wave.wavenumber) * theta.sin();
    let wb = w * strip_width;
    let strip = if wb.norm() < 1e-8 {
        (Complex64::new(1.0, 0.0) + wb * 0.5 + wb * wb * (1.0 / 6.0)) * strip_width
    } else {
        (wb.exp() - 1.0) / w
    };
    Ok(rows * strip)
}

fn check_grating_inputs(r_observer: f64, spacing: f64, n_rows: u32, theta: f64) -> Result<()> {
    if !(r_observer > 0.0) || !r_observer.is_finite() {
        return Err(Error::InvalidParameter {
            name: "r_observer",
            reason: format!("must be positive and finite, got {r_observer}"),
        });
    }
    if !(spacing > 0.0) || !spacing.is_finite() {
        return Err(Error::InvalidParameter {
            name: "spacing",
            reason: format!("must be positive and finite, got {spacing}"),
        });
    }
    if n_rows == 0 {
        return Err(Error::InvalidParameter {
            name: "n_rows",
            reason: "need at least one row".into(),
        });
    }
    if !theta.is_finite() {
        return Err(Error::InvalidParameter {
            name: "theta",
            reason: format!("must be finite, got {theta}"),
        });
    }
    Ok(())
}

/// Normalized Helmholtz residual |(1/r)(rU)″ + κ²U| / (κ²|U|) at radius r,
/// with the radial second derivative taken by a plain three-point central
/// difference of step `step` — second-order accurate, no extrapolation.
/// For κ = 0 the residual is normalized by |U|/r² instead.
pub fn helmholtz_residual(wave: &SpatialWave, r: f64, step: f64) -> Result<f64> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::InvalidParameter {
            name: "step",
            reason: format!("must be positive and finite, got {step}"),
        });
    }
    if r <= 2.0 * step {
        return Err(Error::StencilOutsideDomain { r, step });
    }
    normalize_residual(wave, r, raw_residual(wave, r, step)?)
}

/// Residual with an automatic step — min(r·1e-4, 0.05/κ), keeping the phase
/// change per step small even at κr ~ 10⁷ — and one Richardson level
/// combining steps h and 2h to cancel the leading discretization term.
pub fn helmholtz_residual_refined(wave: &SpatialWave, r: f64) -> Result<f64> {
    let mut step = r * 1e-4;
    if wave.wavenumber > 0.0 {
        step = step.min(0.05 / wave.wavenumber);
    }
    if r <= 4.0 * step {
        return Err(Error::StencilOutsideDomain { r, step });
    }
    let fine = raw_residual(wave, r, step)?;
    let coarse = raw_residual(wave, r, 2.0 * step)?;
    normalize_residual(wave, r, (4.0 * fine - coarse) / 3.0)
}

/// (1/r)·(g(r+h) − 2g(r) + g(r−h))/h² + κ²·U(r) with g = r·U.
fn raw_residual(wave: &SpatialWave, r: f64, step: f64) -> Result<Complex64> {
    let g = |x: f64| -> Result<Complex64> { Ok(wave.amplitude(x)? * x) };
    let second = (g(r + step)? - 2.0 * g(r)? + g(r - step)?) / (step * step);
    let k2 = wave.wavenumber * wave.wavenumber;
    Ok(second / r + k2 * wave.amplitude(r)?)
}

fn normalize_residual(wave: &SpatialWave, r: f64, residual: Complex64) -> Result<f64> {
    let u = wave.amplitude(r)?.norm();
    let scale = if wave.wavenumber > 0.0 {
        wave.wavenumber * wave.wavenumber * u
    } else {
        u / (r * r)
    };
    Ok(residual.norm() / scale)
}
