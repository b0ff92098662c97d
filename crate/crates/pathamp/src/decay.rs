//! Excited-state decay as the clock behind every photon path amplitude.
//!
//! An unstable level of excitation energy E_γ and mean lifetime τ carries
//! the amplitude exp[−(i/ħ)(E_γ − iΓ/2)t] with Γ = ħ/τ: phase at the
//! transition frequency, modulus draining as e^{−t/2τ}. Emission followed by
//! free propagation multiplies in a 1/r kernel whose phase cancels exactly
//! on the light cone, so the detected amplitude remembers only when the
//! photon left. The same exponential, delayed by a flight time, gives the
//! survival probability in the Schrödinger-cat arrangement.

use num_complex::Complex64;

use crate::constants::{C_NM_PER_NS, HBAR_EV_NS};
use crate::error::{Error, Result, Warning};

/// Excited level: transition energy E_γ (eV), mean lifetime τ (ns), natural
/// width Γ = ħ/τ (eV, derived).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnstableState {
    pub excitation_energy: f64,
    pub lifetime: f64,
    pub width: f64,
}

impl UnstableState {
    pub fn new(excitation_energy: f64, lifetime: f64) -> Result<Self> {
        if !(excitation_energy > 0.0) || !excitation_energy.is_finite() {
            return Err(Error::InvalidParameter {
                name: "excitation_energy",
                reason: format!("must be positive and finite, got {excitation_energy}"),
            });
        }
        Ok(Self {
            excitation_energy,
            lifetime,
            width: width_from_lifetime(lifetime)?,
        })
    }

    /// The narrow-line treatment assumes Γ ≪ E_γ; a width above one part in
    /// a thousand of the transition energy is worth flagging.
    pub fn warnings(&self) -> Vec<Warning> {
        if self.width / self.excitation_energy > 1e-3 {
            vec![Warning::BroadLine {
                width_ev: self.width,
                energy_ev: self.excitation_energy,
            }]
        } else {
            Vec::new()
        }
    }

    /// Spatial extent of the emitted photon wave packet, Δx = c·τ (nm).
    pub fn wavepacket_extent(&self) -> f64 {
        C_NM_PER_NS * self.lifetime
    }
}

/// Γ = ħ/τ (eV from ns).
pub fn width_from_lifetime(lifetime: f64) -> Result<f64> {
    if !(lifetime > 0.0) {
        return Err(Error::InvalidParameter {
            name: "lifetime",
            reason: format!("must be positive, got {lifetime}"),
        });
    }
    Ok(HBAR_EV_NS / lifetime)
}

/// τ = ħ/Γ (ns from eV).
pub fn lifetime_from_width(width: f64) -> Result<f64> {
    if !(width > 0.0) {
        return Err(Error::InvalidParameter {
            name: "width",
            reason: format!("must be positive, got {width}"),
        });
    }
    Ok(HBAR_EV_NS / width)
}

/// Surviving excited-state amplitude after `elapsed` ns:
/// exp[−(i/ħ)(E_γ − iΓ/2)·elapsed], so |amplitude|² = e^{−elapsed/τ}.
pub fn decay_amplitude(state: &UnstableState, elapsed: f64) -> Result<Complex64> {
    if !(elapsed >= 0.0) || !elapsed.is_finite() {
        return Err(Error::InvalidParameter {
            name: "elapsed",
            reason: format!("must be non-negative and finite, got {elapsed}"),
        });
    }
    Ok(Complex64::from_polar(
        (-elapsed / (2.0 * state.lifetime)).exp(),
        -state.excitation_energy * elapsed / HBAR_EV_NS,
    ))
}

/// Emission at t_emit followed by free flight to radius r, detected at
/// t_detect. The flight leg contributes modulus 1/r and no phase, but only
/// on the light cone r = c·(t_detect − t_emit); off-cone requests are
/// domain errors, not small amplitudes.
pub fn emission_propagation_amplitude(
    state: &UnstableState,
    r: f64,
    t_detect: f64,
    t_emit: f64,
    t_create: f64,
) -> Result<Complex64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter {
            name: "r",
            reason: format!("must be positive and finite, got {r}"),
        });
    }
    if t_emit < t_create {
        return Err(Error::InvalidParameter {
            name: "t_emit",
            reason: format!(
                "emission at {t_emit} ns precedes state creation at {t_create} ns"
            ),
        });
    }
    let c_dt = C_NM_PER_NS * (t_detect - t_emit);
    if (r - c_dt).abs() > 1e-9 * r {
        return Err(Error::OffLightCone { r, c_dt });
    }
    Ok(decay_amplitude(state, t_emit - t_create)? / r)
}

/// Normalization constant for the emitted one-photon wave: with amplitude
/// A₀/r on the cone, A₀ = 1/√(4π·c·τ) makes the total detection probability
/// approach one.
pub fn emission_normalization(state: &UnstableState) -> f64 {
    1.0 / (4.0 * std::f64::consts::PI * C_NM_PER_NS * state.lifetime).sqrt()
}

/// Probability that the photon has been emitted and crossed any sphere by
/// detection time t_detect: 1 − e^{−(t_detect − t_create)/τ}.
pub fn detection_probability(state: &UnstableState, t_detect: f64, t_create: f64) -> Result<f64> {
    if t_detect < t_create {
        return Err(Error::InvalidParameter {
            name: "t_detect",
            reason: format!(
                "detection at {t_detect} ns precedes state creation at {t_create} ns"
            ),
        });
    }
    Ok(1.0 - (-(t_detect - t_create) / state.lifetime).exp())
}

/// Survival probability of the cat: the triggering atom must decay *and*
/// the poison signal must have had time to arrive. Before t_delay nothing
/// can have happened, so the probability is one; afterwards it decays as
/// exp[−(t − t_delay)/τ]. Times in any common unit (hours in the classic
/// telling).
pub fn cat_alive_probability(mean_lifetime: f64, t: f64, t_delay: f64) -> Result<f64> {
    if !(mean_lifetime > 0.0) || !mean_lifetime.is_finite() {
        return Err(Error::InvalidParameter {
            name: "mean_lifetime",
            reason: format!("must be positive and finite, got {mean_lifetime}"),
        });
    }
    for (name, v) in [("t", t), ("t_delay", t_delay)] {
        if !(v >= 0.0) || !v.is_finite() {
            return Err(Error::InvalidParameter {
                name,
                reason: format!("must be non-negative and finite, got {v}"),
            });
        }
    }
    if t < t_delay {
        return Ok(1.0);
    }
    Ok((-(t - t_delay) / mean_lifetime).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{adaptive_integral, QuadratureSpec};

    fn reference_state() -> UnstableState {
        UnstableState::new(2.0, 10.0).unwrap()
    }

    #[test]
    fn width_lifetime_reciprocity() {
        let g = width_from_lifetime(10.0).unwrap();
        assert!((g / 6.582119569e-8 - 1.0).abs() < 1e-12);
        assert!((g / 6.582e-8 - 1.0).abs() < 1e-3);
        assert!((lifetime_from_width(g).unwrap() / 10.0 - 1.0).abs() < 1e-15);
        assert_eq!(width_from_lifetime(f64::INFINITY).unwrap(), 0.0);
        assert!(width_from_lifetime(0.0).is_err());
        let st = reference_state();
        assert!((st.width * st.lifetime / HBAR_EV_NS - 1.0).abs() < 1e-12);
    }

    #[test]
    fn narrow_line_warning_threshold() {
        assert!(reference_state().warnings().is_empty());
        // τ = ħ/(2e-3 · E) puts Γ/E at 2e-3, past the narrow-line comfort zone.
        let broad = UnstableState::new(2.0, HBAR_EV_NS / (2e-3 * 2.0)).unwrap();
        assert_eq!(broad.warnings().len(), 1);
    }

    #[test]
    fn decay_amplitude_modulus_and_phase() {
        let st = reference_state();
        assert_eq!(
            decay_amplitude(&st, 0.0).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let at_tau = decay_amplitude(&st, st.lifetime).unwrap();
        assert!((at_tau.norm_sqr() - (-1.0f64).exp()).abs() < 1e-12);
        // One optical period back to the same phase.
        let period = 2.0 * std::f64::consts::PI * HBAR_EV_NS / st.excitation_energy;
        let one_turn = decay_amplitude(&st, period).unwrap();
        assert!(one_turn.arg().abs() < 1e-9);
        assert!(decay_amplitude(&st, -1.0).is_err());
    }

    #[test]
    fn decay_is_monotone_with_exact_half_life() {
        let st = reference_state();
        let mut last = f64::INFINITY;
        for i in 0..200 {
            let p = decay_amplitude(&st, 0.25 * i as f64).unwrap().norm_sqr();
            assert!(p <= last);
            last = p;
        }
        let half = st.lifetime * std::f64::consts::LN_2;
        let p0 = decay_amplitude(&st, 3.0).unwrap().norm_sqr();
        let p1 = decay_amplitude(&st, 3.0 + half).unwrap().norm_sqr();
        assert!((p0 / p1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn on_cone_amplitude_composes_multiplicatively() {
        let st = reference_state();
        let (t_create, t_emit) = (0.0, 4.0);
        for r in [1.0e6, 1.0e8, 3.0e9] {
            let t_detect = t_emit + r / C_NM_PER_NS;
            let full = emission_propagation_amplitude(&st, r, t_detect, t_emit, t_create).unwrap();
            let decay = decay_amplitude(&st, t_emit - t_create).unwrap();
            // Flight leg: modulus 1/r, no phase.
            assert!((full.norm() - decay.norm() / r).abs() <= 1e-15 * full.norm());
            assert!((full.arg() - decay.arg()).abs() < 1e-12);
            assert!((full.norm_sqr() * r * r / decay.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn off_cone_detection_is_rejected() {
        let st = reference_state();
        let r = 1.0e8;
        let t_flight = r / C_NM_PER_NS;
        assert!(matches!(
            emission_propagation_amplitude(&st, r, 1.001 * t_flight, 0.0, 0.0),
            Err(Error::OffLightCone { .. })
        ));
        assert!(emission_propagation_amplitude(&st, r, t_flight, -1.0, 0.0).is_err());
    }

    #[test]
    fn emission_probability_normalizes() {
        // Shell-by-shell quadrature of |A₀·decay/r|² over the light cone at
        // t_detect = 40τ: 4π ∫ r²·A₀²e^{−(t_D − r/c)/τ}/r² dr.
        let st = reference_state();
        let a0 = emission_normalization(&st);
        let t_detect = 40.0 * st.lifetime;
        let integral = adaptive_integral(
            |r| {
                let t_emit = t_detect - r / C_NM_PER_NS;
                let amp = emission_propagation_amplitude(&st, r, t_detect, t_emit, 0.0).unwrap();
                Complex64::new(4.0 * std::f64::consts::PI * r * r * (a0 * amp.norm()).powi(2), 0.0)
            },
            (1.0, C_NM_PER_NS * t_detect),
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!((integral.value.re - 1.0).abs() < 1e-6);
        let closed = detection_probability(&st, t_detect, 0.0).unwrap();
        assert!((integral.value.re / closed - 1.0).abs() < 1e-6);
    }

    #[test]
    fn wavepacket_extent_is_meters_scale() {
        let st = reference_state();
        let dx = st.wavepacket_extent();
        assert_eq!(dx, 2.99792458e9);
        // Three meters to a tenth of a percent.
        assert!((dx / 3.0e9 - 1.0).abs() < 1e-3);
    }

    #[test]
    fn cat_survival_curve() {
        let tau = 1.44;
        assert_eq!(cat_alive_probability(tau, 0.5, 0.5).unwrap(), 1.0);
        assert_eq!(cat_alive_probability(tau, 0.2, 0.5).unwrap(), 1.0);
        let at_tau = cat_alive_probability(tau, tau, 0.0).unwrap();
        assert!((at_tau - (-1.0f64).exp()).abs() < 1e-15);
        let one_hour = cat_alive_probability(tau, 1.0, 0.0).unwrap();
        assert!((one_hour / 0.49935178859927624 - 1.0).abs() < 1e-12);
        assert!((one_hour - 0.5).abs() < 1e-2);
        assert!(cat_alive_probability(-1.0, 1.0, 0.0).is_err());
        assert!(cat_alive_probability(1.44, -1.0, 0.0).is_err());
    }

    #[test]
    fn alive_and_dead_are_complementary() {
        let tau = 1.44;
        for i in 0..=1000 {
            let t = 0.01 * i as f64;
            let alive = cat_alive_probability(tau, t, 0.25).unwrap();
            let dead = 1.0 - alive;
            assert_eq!(alive + dead, 1.0);
            assert!((0.0..=1.0).contains(&alive));
        }
    }
}
