//! Error and warning types shared across the crate.

/// Failure modes of the physics operations. Domain violations are distinct
/// variants so callers (and the CLI exit-code mapping) can tell a bad input
/// from a numeric breakdown.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A constructor or operation argument is outside its physical domain.
    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Massive particle with zero momentum: the free phase −(mc²)²s/(ħc·pc)
    /// diverges.
    #[error("zero momentum for a massive particle: free-propagation phase diverges")]
    ZeroMomentumMassive,

    /// The 1/r kernel is singular at the origin.
    #[error("free kernel evaluated at r = 0")]
    KernelAtOrigin,

    /// Detection earlier than the shortest source→grating→observer transit.
    #[error("detection at t = {t_detect} ns precedes earliest arrival {t_min} ns")]
    DetectionBeforeTransit { t_detect: f64, t_min: f64 },

    /// Emission/propagation amplitude queried off the light cone.
    #[error("off light cone: r = {r} nm vs c·Δt = {c_dt} nm")]
    OffLightCone { r: f64, c_dt: f64 },

    /// Timing ratio R = 1 with difference D = 0: the velocity reconstruction
    /// (R−1)s/(RD) is 0/0.
    #[error("timing ratio 1 with zero difference: velocities indeterminate")]
    IndeterminateVelocities,

    /// The equal-velocity hypothesis assigns no momentum-independent spatial
    /// wave; only the equal-production-time pattern has one.
    #[error("spatial wave undefined under the equal-velocity hypothesis: the pattern scale depends on (m_e c)²/⟨p⟩, not on a wavelength")]
    EqualVelocityWaveUndefined,

    /// Finite-difference stencil would leave r > 0.
    #[error("stencil outside domain: r = {r} nm with step {step} nm (need r > 2·step)")]
    StencilOutsideDomain { r: f64, step: f64 },

    /// Adaptive quadrature hit its subdivision cap before meeting tolerance.
    #[error("quadrature did not converge: error bound {error_bound:.3e} after {panels} panels (target {target:.3e})")]
    QuadratureDidNotConverge {
        error_bound: f64,
        target: f64,
        panels: usize,
    },

    /// Convergence-order fit fed with an unusable sample set.
    #[error("convergence fit needs ≥3 positive samples spanning a decade ({reason})")]
    ConvergenceFitSamples { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Non-fatal conditions a configuration can carry: the run proceeds, the CLI
/// echoes these to stderr.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// Source or observer distance under 100·(grating width): the fixed-1/r
    /// far-field treatment starts to mis-weight path moduli.
    FarFieldMarginal { distance_nm: f64, grating_nm: f64 },
    /// Level width above 1e-3 of the transition energy: the narrow-line
    /// treatment of the source is marginal.
    BroadLine { width_ev: f64, energy_ev: f64 },
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::FarFieldMarginal {
                distance_nm,
                grating_nm,
            } => write!(
                f,
                "far-field marginal: distance {distance_nm:.3e} nm < 100 × grating extent {grating_nm:.3e} nm"
            ),
            Warning::BroadLine {
                width_ev,
                energy_ev,
            } => write!(
                f,
                "broad line: Γ = {width_ev:.3e} eV exceeds 1e-3 of E = {energy_ev:.3e} eV"
            ),
        }
    }
}
