//! Two-path transit kinematics: timing ratios, velocities, and relativistic
//! phase differences.
//!
//! Two paths of lengths s_A ≥ s_B are traversed between common endpoints.
//! Their transit times enter through R = t_A/t_B and D = t_A − t_B, from
//! which the velocities follow as v_A = (R−1)s_A/(R·D), v_B = (R−1)s_B/D.
//! R = s_A/s_B makes the velocities equal; R = 1 makes the transit times
//! equal and forces a small velocity (hence momentum) difference instead.
//!
//! The intrinsic phase carried over a path is −(mc²)²s/(ħc·pc), so the
//! two-path phase difference is exactly
//! Δφ = (mc²)²/(ħc)·[s_B/(p_B c) − s_A/(p_A c)]; its first-order expansion
//! in Δs/s̄ interpolates between the equal-velocity and equal-time limits
//! through (R_EV − R)/R.

use crate::constants::HBAR_C_EV_NM;
use crate::error::{Error, Result};

/// Transit-time ratio R = t_A/t_B and difference D = t_A − t_B (ns),
/// restricted to the ordering t_A ≥ t_B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingRatio {
    pub ratio: f64,
    pub difference: f64,
}

impl TimingRatio {
    pub fn new(ratio: f64, difference: f64) -> Result<Self> {
        if !(ratio >= 1.0) || !ratio.is_finite() {
            return Err(Error::InvalidParameter {
                name: "ratio",
                reason: format!("transit ordering requires 1 ≤ R < ∞, got {ratio}"),
            });
        }
        if !(difference >= 0.0) || !difference.is_finite() {
            return Err(Error::InvalidParameter {
                name: "difference",
                reason: format!("transit ordering requires 0 ≤ D < ∞, got {difference}"),
            });
        }
        if (ratio == 1.0) != (difference == 0.0) {
            return Err(Error::InvalidParameter {
                name: "ratio",
                reason: format!(
                    "inconsistent timing: R = {ratio} with D = {difference} ns (R = 1 and D = 0 \
                     must hold together)"
                ),
            });
        }
        Ok(Self { ratio, difference })
    }

    /// From explicit transit times (ns), t_a ≥ t_b > 0.
    pub fn from_times(t_a: f64, t_b: f64) -> Result<Self> {
        if !(t_b > 0.0) || !t_b.is_finite() || !(t_a >= t_b) || !t_a.is_finite() {
            return Err(Error::InvalidParameter {
                name: "t_a",
                reason: format!("need finite t_a ≥ t_b > 0, got t_a = {t_a}, t_b = {t_b}"),
            });
        }
        Ok(Self {
            ratio: t_a / t_b,
            difference: t_a - t_b,
        })
    }
}

/// Velocities of the two paths in units of c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelocityPair {
    pub beta_a: f64,
    pub beta_b: f64,
}

impl VelocityPair {
    /// Both subluminal and forward-going.
    pub fn is_physical(&self) -> bool {
        (0.0..=1.0).contains(&self.beta_a) && (0.0..=1.0).contains(&self.beta_b)
    }

    pub fn mean(&self) -> f64 {
        0.5 * (self.beta_a + self.beta_b)
    }

    pub fn difference(&self) -> f64 {
        self.beta_a - self.beta_b
    }
}

/// Path velocities implied by the timing parameterization:
/// v_A = (R−1)s_A/(R·D), v_B = (R−1)s_B/D. R = 1 with D = 0 leaves them
/// indeterminate (they are then fixed by the momenta instead).
pub fn velocities_from_timing(pair_lengths: (f64, f64), timing: &TimingRatio) -> Result<VelocityPair> {
    let (s_a, s_b) = pair_lengths;
    for (name, s) in [("s_a", s_a), ("s_b", s_b)] {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::InvalidParameter {
                name,
                reason: format!("path length must be positive and finite, got {s}"),
            });
        }
    }
    if timing.ratio == 1.0 && timing.difference == 0.0 {
        return Err(Error::IndeterminateVelocities);
    }
    let c = crate::constants::C_NM_PER_NS;
    let v_a = (timing.ratio - 1.0) * s_a / (timing.ratio * timing.difference);
    let v_b = (timing.ratio - 1.0) * s_b / timing.difference;
    Ok(VelocityPair {
        beta_a: v_a / c,
        beta_b: v_b / c,
    })
}

/// Exact velocity difference from the timing ratios:
/// Δv = 2·v̄·(R_EV − R)/(R_EV + R), with R_EV = s_A/s_B.
pub fn delta_v_exact(mean_velocity: f64, ratio: f64, ratio_ev: f64) -> f64 {
    2.0 * mean_velocity * (ratio_ev - ratio) / (ratio_ev + ratio)
}

/// First-order velocity difference v̄·(R_EV − R)/R; differs from the exact
/// form at O((R_EV − R)²).
pub fn delta_v_first_order(mean_velocity: f64, ratio: f64, ratio_ev: f64) -> f64 {
    mean_velocity * (ratio_ev - ratio) / ratio
}

/// Momentum difference produced by a velocity difference at fixed mass:
/// Δ(pc) = E³/(mc²)²·Δβ, the exact derivative of pc = √(E² − (mc²)²) along
/// the velocity.
pub fn delta_p_from_delta_v(mass_energy: f64, energy: f64, delta_v: f64) -> Result<f64> {
    if !(mass_energy > 0.0) || !mass_energy.is_finite() {
        return Err(Error::InvalidParameter {
            name: "mass_energy",
            reason: format!("must be positive and finite, got {mass_energy}"),
        });
    }
    if !(energy >= mass_energy) || !energy.is_finite() {
        return Err(Error::InvalidParameter {
            name: "energy",
            reason: format!("total energy {energy} eV below rest energy {mass_energy} eV"),
        });
    }
    if !delta_v.is_finite() {
        return Err(Error::InvalidParameter {
            name: "delta_v",
            reason: format!("must be finite, got {delta_v}"),
        });
    }
    Ok(energy.powi(3) / (mass_energy * mass_energy) * delta_v)
}

/// Two paths with their lengths (nm), momenta (eV/c), and common rest energy
/// (eV). Path A is the longer one in the conventions used here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathPair {
    pub s_a: f64,
    pub s_b: f64,
    pub p_a: f64,
    pub p_b: f64,
    pub mass_energy: f64,
}

impl PathPair {
    pub fn new(s_a: f64, s_b: f64, p_a: f64, p_b: f64, mass_energy: f64) -> Result<Self> {
        for (name, v) in [
            ("s_a", s_a),
            ("s_b", s_b),
            ("p_a", p_a),
            ("p_b", p_b),
            ("mass_energy", mass_energy),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be positive and finite, got {v}"),
                });
            }
        }
        Ok(Self {
            s_a,
            s_b,
            p_a,
            p_b,
            mass_energy,
        })
    }

    /// Relativistic momenta pc = mc²βγ from path velocities in units of c.
    pub fn from_velocities(
        s_a: f64,
        s_b: f64,
        beta_a: f64,
        beta_b: f64,
        mass_energy: f64,
    ) -> Result<Self> {
        for (name, beta) in [("beta_a", beta_a), ("beta_b", beta_b)] {
            if !(beta > 0.0 && beta < 1.0) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("velocity must satisfy 0 < β < 1, got {beta}"),
                });
            }
        }
        let pc = |beta: f64| mass_energy * beta / (1.0 - beta * beta).sqrt();
        Self::new(s_a, s_b, pc(beta_a), pc(beta_b), mass_energy)
    }

    pub fn delta_s(&self) -> f64 {
        self.s_a - self.s_b
    }

    pub fn mean_s(&self) -> f64 {
        0.5 * (self.s_a + self.s_b)
    }

    pub fn delta_p(&self) -> f64 {
        self.p_a - self.p_b
    }

    pub fn mean_p(&self) -> f64 {
        0.5 * (self.p_a + self.p_b)
    }

    /// R_EV = s_A/s_B: the timing ratio that would make the velocities equal.
    pub fn length_ratio(&self) -> f64 {
        self.s_a / self.s_b
    }

    /// The pair with the path labels exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            s_a: self.s_b,
            s_b: self.s_a,
            p_a: self.p_b,
            p_b: self.p_a,
            mass_energy: self.mass_energy,
        }
    }
}

/// Exact two-path phase difference
/// Δφ = (mc²)²/(ħc)·[s_B/(p_B c) − s_A/(p_A c)], no expansion.
pub fn phase_difference_exact(pair: &PathPair) -> f64 {
    pair.mass_energy * pair.mass_energy / HBAR_C_EV_NM
        * (pair.s_b / pair.p_b - pair.s_a / pair.p_a)
}

/// First-order phase difference in Δs/s̄:
/// Δφ = (mc²)²/(ħc)·[−Δs/p̄ + (s̄/p̄)(1 + (p̄c/mc²)²)(R_EV − R)/R].
/// R = R_EV recovers the equal-velocity limit −(mc²)²Δs/(ħc·p̄c) exactly;
/// R = 1 collapses to the equal-time limit p̄c·Δs/(ħc) up to O((Δs/s̄)²).
pub fn phase_difference_first_order(
    mean_s: f64,
    delta_s: f64,
    mean_p: f64,
    mass_energy: f64,
    ratio: f64,
    ratio_ev: f64,
) -> Result<f64> {
    for (name, v) in [
        ("mean_s", mean_s),
        ("mean_p", mean_p),
        ("mass_energy", mass_energy),
        ("ratio", ratio),
        ("ratio_ev", ratio_ev),
    ] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidParameter {
                name,
                reason: format!("must be positive and finite, got {v}"),
            });
        }
    }
    if !delta_s.is_finite() {
        return Err(Error::InvalidParameter {
            name: "delta_s",
            reason: format!("must be finite, got {delta_s}"),
        });
    }
    let m2 = mass_energy * mass_energy;
    let gamma2 = 1.0 + (mean_p / mass_energy).powi(2);
    Ok(m2 / HBAR_C_EV_NM
        * (-delta_s / mean_p + mean_s / mean_p * gamma2 * (ratio_ev - ratio) / ratio))
}
