//! Photon reflection grating fed by a decaying two-level emitter.
//!
//! Detection at angle θ and time t_D superposes one path amplitude per strip.
//! A path via strip k is longer by k·d·sinθ, so the photon must have been
//! emitted earlier by k·d·sinθ/c — when more excited-state amplitude
//! survived. Each strip therefore advances the previous one by the complex
//! per-strip factor e^{iα} with
//!
//!   α = (r − iq)·d,   r = E_γ sinθ/(ħc),   q = sinθ/(2cτ_i),
//!
//! whose damping part *grows* along the grating (|e^{iα}| = e^{qd} > 1).
//! Within one strip the reflection point is continuous and integrates to
//! a·(e^{ibβ}−1)/(iβ) with β = α/d. The N-strip sum is geometric, and the
//! detection-time density integrates in closed form because the only t_D
//! dependence is the source decay envelope.

use num_complex::Complex64;

use crate::constants::{C_NM_PER_NS, HBAR_C_EV_NM, HBAR_EV_NS, PhysicalConstants};
use crate::error::{Error, Result, Warning};
use crate::oracles::{adaptive_integral, QuadratureSpec};
use crate::propagator::geometric_path_sum;

/// Grating geometry and source parameters. Distances in nm, lifetime in ns,
/// photon energy in eV. `scale` lumps every constant amplitude factor
/// (production, detection, per-length reflectivity) into one positive real
/// number; only relative intensities are physical.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonGratingConfig {
    pub photon_energy: f64,
    pub lifetime: f64,
    pub pitch: f64,
    pub strip_width: f64,
    pub n_strips: u32,
    pub r_source: f64,
    pub r_observer: f64,
    pub scale: f64,
}

impl PhotonGratingConfig {
    pub fn new(
        photon_energy: f64,
        lifetime: f64,
        pitch: f64,
        strip_width: f64,
        n_strips: u32,
        r_source: f64,
        r_observer: f64,
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
        positive("photon_energy", photon_energy)?;
        // Infinite lifetime is the undamped limit and is allowed.
        if !(lifetime > 0.0) {
            return Err(Error::InvalidParameter {
                name: "lifetime",
                reason: format!("must be positive, got {lifetime}"),
            });
        }
        positive("pitch", pitch)?;
        positive("strip_width", strip_width)?;
        if strip_width > pitch {
            return Err(Error::InvalidParameter {
                name: "strip_width",
                reason: format!("strip width {strip_width} nm exceeds pitch {pitch} nm"),
            });
        }
        if n_strips == 0 {
            return Err(Error::InvalidParameter {
                name: "n_strips",
                reason: "need at least one strip".into(),
            });
        }
        positive("r_source", r_source)?;
        positive("r_observer", r_observer)?;
        positive("scale", scale)?;
        Ok(Self {
            photon_energy,
            lifetime,
            pitch,
            strip_width,
            n_strips,
            r_source,
            r_observer,
            scale,
        })
    }

    /// Visible-light defaults: 2 eV photon from a 10 ns-lifetime level, 1000
    /// contiguous 7.112 µm strips, source and observer 1 m away.
    pub fn reference() -> Self {
        Self {
            photon_energy: 2.0,
            lifetime: 10.0,
            pitch: 7112.0,
            strip_width: 7112.0,
            n_strips: 1000,
            r_source: 1.0e9,
            r_observer: 1.0e9,
            scale: 1.0,
        }
    }

    /// Non-fatal configuration conditions. The fixed-modulus treatment of the
    /// strip sum assumes source and observer far beyond the grating extent.
    pub fn warnings(&self) -> Vec<Warning> {
        let mut w = Vec::new();
        let extent = self.n_strips as f64 * self.pitch;
        for dist in [self.r_source, self.r_observer] {
            if dist < 100.0 * extent {
                w.push(Warning::FarFieldMarginal {
                    distance_nm: dist,
                    grating_nm: extent,
                });
            }
        }
        w
    }

    /// Free-space wavenumber E_γ/ħc in 1/nm.
    pub fn wavenumber(&self) -> f64 {
        self.photon_energy / HBAR_C_EV_NM
    }

    /// Earliest possible detection time for a given creation time: direct
    /// transit over r_S + r_O.
    pub fn earliest_arrival(&self, t_create: f64) -> f64 {
        t_create + (self.r_source + self.r_observer) / C_NM_PER_NS
    }

    /// Per-strip phase parameter at detection angle θ (radians).
    pub fn strip_phase(&self, theta: f64) -> StripPhaseParameter {
        let s = theta.sin();
        let r_part = self.photon_energy * s / HBAR_C_EV_NM;
        let q_part = s / (2.0 * C_NM_PER_NS * self.lifetime);
        StripPhaseParameter {
            r_part,
            q_part,
            alpha: Complex64::new(r_part, -q_part) * self.pitch,
        }
    }

    /// Full N-strip detection amplitude at angle θ for detection time
    /// `t_detect` and source creation time `t_create` (both ns).
    pub fn grating_amplitude(&self, theta: f64, t_detect: f64, t_create: f64) -> Result<Complex64> {
        let t_min = self.earliest_arrival(t_create);
        if t_detect < t_min {
            return Err(Error::DetectionBeforeTransit {
                t_detect,
                t_min,
            });
        }
        let dt = t_detect - t_min;
        let sp = self.strip_phase(theta);
        // Source factor: oscillation at E_γ and decay of the surviving
        // excited-state amplitude over the elapsed time.
        let source = Complex64::from_polar(
            (-dt / (2.0 * self.lifetime)).exp(),
            -self.photon_energy * dt / HBAR_EV_NS,
        );
        let strip = single_strip_amplitude(self.strip_width, sp.beta());
        let grating = geometric_path_sum(sp.alpha, self.n_strips);
        Ok(source * strip * grating * (self.scale / (self.r_observer * self.r_source)))
    }

    /// Detection-time probability density |amplitude|² (unnormalized; scale²/ns
    /// units).
    pub fn detection_time_density(&self, theta: f64, t_detect: f64, t_create: f64) -> Result<f64> {
        Ok(self.grating_amplitude(theta, t_detect, t_create)?.norm_sqr())
    }

    /// The same density through an independently expanded real-arithmetic
    /// route: products of conjugate factors written out as cosh-type
    /// expressions, no complex operations. Exists purely to cross-check the
    /// complex ground-truth route.
    pub fn detection_time_density_expanded(
        &self,
        theta: f64,
        t_detect: f64,
        t_create: f64,
    ) -> Result<f64> {
        let t_min = self.earliest_arrival(t_create);
        if t_detect < t_min {
            return Err(Error::DetectionBeforeTransit {
                t_detect,
                t_min,
            });
        }
        let dt = t_detect - t_min;
        let sp = self.strip_phase(theta);
        let (r, q) = (sp.r_part, sp.q_part);
        let (b, d) = (self.strip_width, self.pitch);
        let n = self.n_strips as f64;
        let pref = (self.scale / (self.r_observer * self.r_source)).powi(2)
            * (-dt / self.lifetime).exp();
        // |e^{ibβ} − 1|²/(ββ*) and the matching N-strip ratio.
        let strip2 = if r == 0.0 && q == 0.0 {
            b * b
        } else {
            let eq = (q * b).exp();
            (1.0 - 2.0 * eq * (r * b).cos() + eq * eq) / (r * r + q * q)
        };
        let den = {
            let eq = (q * d).exp();
            1.0 - 2.0 * eq * (r * d).cos() + eq * eq
        };
        let grating2 = if den.abs() < 1e-280 {
            // Exactly constructive and undamped: ratio limit N².
            n * n
        } else {
            let eqn = (n * q * d).exp();
            (1.0 - 2.0 * eqn * (n * r * d).cos() + eqn * eqn) / den
        };
        Ok(pref * strip2 * grating2)
    }

    /// Squared modulus of the bare N-strip sum with the decay part of the
    /// per-strip factor dropped: the interference structure whose maxima
    /// define the diffraction orders.
    pub fn interference_factor(&self, theta: f64) -> f64 {
        let sp = self.strip_phase(theta);
        geometric_path_sum(Complex64::new(sp.r_part * self.pitch, 0.0), self.n_strips).norm_sqr()
    }

    /// Detection probability per solid angle integrated over all detection
    /// times, in the narrow-line closed form (per-strip decay factors dropped;
    /// the decay envelope integrates to τ_i).
    pub fn integrated_intensity(&self, theta: f64) -> f64 {
        let sp = self.strip_phase(theta);
        let amp = self.scale / (self.r_observer * self.r_source);
        let strip = single_strip_amplitude(self.strip_width, Complex64::new(sp.r_part, 0.0));
        self.lifetime * amp * amp * strip.norm_sqr() * self.interference_factor(theta)
    }

    /// Time-integrated intensity by direct quadrature of the full damped
    /// density over detection time. Differs from the closed form by the
    /// per-strip decay factors, which matter once N·d·sinθ/(cτ_i) is no
    /// longer small.
    pub fn integrated_intensity_exact(&self, theta: f64, spec: &QuadratureSpec) -> Result<f64> {
        if !self.lifetime.is_finite() {
            // Undamped limit: the closed form is exact and there is no decay
            // envelope to integrate.
            return Ok(self.integrated_intensity(theta));
        }
        let t_min = self.earliest_arrival(0.0);
        let horizon = 80.0 * self.lifetime;
        // Integrate in units of the squared geometric amplitude: the raw
        // density is ~(r_S·r_O)⁻² and would otherwise sit far below any
        // absolute quadrature tolerance.
        let unit = (self.scale / (self.r_observer * self.r_source)).powi(2);
        let est = adaptive_integral(
            |u| {
                Complex64::new(
                    self.detection_time_density(theta, t_min + u, 0.0)
                        .expect("u >= 0 keeps detection after earliest arrival")
                        / unit,
                    0.0,
                )
            },
            (0.0, horizon),
            spec,
        )?;
        Ok(est.value.re * unit)
    }

    /// 2·N·q·d at angle θ: the exponent controlling how strongly the
    /// earliest-emission (farthest-strip) paths outweigh the latest ones.
    /// Small values mean the closed-form intensity is trustworthy.
    pub fn cosh_damping_exponent(&self, theta: f64) -> f64 {
        2.0 * self.n_strips as f64 * self.strip_phase(theta).q_part * self.pitch
    }

    /// Angles (radians) of the in-phase orders sinθ_l = l·λ/d, l = 1, 2, …,
    /// stopping at `max_order` or the end of the physical range.
    pub fn constructive_angles(&self, max_order: u32) -> Vec<OrderAngle> {
        let lambda_over_d = 2.0 * std::f64::consts::PI * HBAR_C_EV_NM
            / (self.photon_energy * self.pitch);
        let mut out = Vec::new();
        for l in 1..=max_order {
            let s = l as f64 * lambda_over_d;
            if s > 1.0 {
                break;
            }
            out.push(OrderAngle {
                order: l,
                theta: s.asin(),
            });
        }
        out
    }

    /// Angles where adjacent strips are exactly in antiphase,
    /// sinθ = (2l+1)·λ/(2d). Cancellation is complete only for an even strip
    /// count; odd N leaves one unpaired path.
    pub fn destructive_angles(&self, max_order: u32) -> Vec<DestructiveAngle> {
        let half_lambda_over_d = std::f64::consts::PI * HBAR_C_EV_NM
            / (self.photon_energy * self.pitch);
        let complete = self.n_strips % 2 == 0;
        let mut out = Vec::new();
        for l in 0..=max_order {
            let s = (2 * l + 1) as f64 * half_lambda_over_d;
            if s > 1.0 {
                break;
            }
            out.push(DestructiveAngle {
                order: l,
                theta: s.asin(),
                complete,
            });
        }
        out
    }
}

/// Per-strip phase parameter: oscillatory part r, decay part q (both 1/nm),
/// and the complex per-strip advance α = (r − iq)·d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripPhaseParameter {
    pub r_part: f64,
    pub q_part: f64,
    pub alpha: Complex64,
}

impl StripPhaseParameter {
    /// β = α/d: the per-unit-length version used inside a single strip.
    pub fn beta(&self) -> Complex64 {
        Complex64::new(self.r_part, -self.q_part)
    }
}

/// In-phase order angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderAngle {
    pub order: u32,
    /// radians
    pub theta: f64,
}

/// Antiphase (destructive) angle; `complete` records whether path pairing
/// cancels the sum entirely (even strip count).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DestructiveAngle {
    pub order: u32,
    /// radians
    pub theta: f64,
    pub complete: bool,
}

/// Continuous reflection across one strip of width b:
/// ∫₀^b e^{iβs} ds = (e^{ibβ} − 1)/(iβ), with the per-length reflection
/// amplitude lumped into the configuration scale. For |bβ| < 1e-8 the
/// second-order series b·(1 + ibβ/2 − (bβ)²/6) takes over.
pub fn single_strip_amplitude(strip_width: f64, beta: Complex64) -> Complex64 {
    let b = strip_width;
    let bb = beta * b;
    if bb.norm() < 1e-8 {
        let i = Complex64::new(0.0, 1.0);
        return (Complex64::new(1.0, 0.0) + i * bb * 0.5 - bb * bb * (1.0 / 6.0)) * b;
    }
    // (e^{ix} − 1)/(iβ) via the half-angle form 2 sin(x/2) e^{ix/2}/β,
    // cancellation-free for small-but-not-tiny |bβ|.
    let half = bb * 0.5;
    let i = Complex64::new(0.0, 1.0);
    2.0 * half.sin() * (i * half).exp() / beta
}

/// Grating pitch from a measured first-order angle: d = 2πħc/(E_γ sinθ₁).
pub fn pitch_from_first_maximum(photon_energy: f64, theta1: f64) -> Result<f64> {
    pitch_from_first_maximum_with(&PhysicalConstants::codata(), photon_energy, theta1)
}

/// Same, with the constants bundle explicit so the verification suite can
/// probe sensitivity to a perturbed ħc.
pub fn pitch_from_first_maximum_with(
    constants: &PhysicalConstants,
    photon_energy: f64,
    theta1: f64,
) -> Result<f64> {
    if !(photon_energy > 0.0) || !photon_energy.is_finite() {
        return Err(Error::InvalidParameter {
            name: "photon_energy",
            reason: format!("must be positive and finite, got {photon_energy}"),
        });
    }
    if !(theta1 > 0.0 && theta1 <= std::f64::consts::FRAC_PI_2) {
        return Err(Error::InvalidParameter {
            name: "theta1",
            reason: format!("first-order angle must lie in (0, π/2], got {theta1} rad"),
        });
    }
    Ok(2.0 * std::f64::consts::PI * constants.hbar_c_ev_nm / (photon_energy * theta1.sin()))
}
