//! Sampled intensity profiles and one-dimensional extremum refinement.
//!
//! Sweeps evaluate a pattern on a uniform grid; diffraction orders are then
//! sharpened by a derivative-free golden-section search seeded at the
//! closed-form order angles. Everything here is deterministic: identical
//! inputs produce bit-identical profiles.

use crate::error::{Error, Result};

/// One sample of a swept pattern. The abscissa is whatever the sweep runs
/// over — detection angle in radians for gratings, time for decay curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub x: f64,
    pub intensity: f64,
}

/// A refined local maximum, tagged with its diffraction order where one
/// applies (order 0 marks an untagged extremum).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub x: f64,
    pub intensity: f64,
    pub order: u32,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntensityProfile {
    pub points: Vec<ProfilePoint>,
}

impl IntensityProfile {
    /// Grid point with the largest intensity; ties resolve to the first.
    pub fn max_point(&self) -> Option<ProfilePoint> {
        let mut best: Option<ProfilePoint> = None;
        for p in &self.points {
            if best.map_or(true, |b| p.intensity > b.intensity) {
                best = Some(*p);
            }
        }
        best
    }
}

/// Evaluate `f` on the inclusive uniform grid [low, high] with `n_samples`
/// points.
pub fn sample_profile<F: Fn(f64) -> f64>(
    f: F,
    low: f64,
    high: f64,
    n_samples: usize,
) -> Result<IntensityProfile> {
    if !low.is_finite() || !high.is_finite() || !(low < high) {
        return Err(Error::InvalidParameter {
            name: "sweep_range",
            reason: format!("need finite low < high, got [{low}, {high}]"),
        });
    }
    if n_samples < 2 {
        return Err(Error::InvalidParameter {
            name: "n_samples",
            reason: format!("need at least 2 samples, got {n_samples}"),
        });
    }
    let span = high - low;
    let last = (n_samples - 1) as f64;
    let points = (0..n_samples)
        .map(|i| {
            let x = low + span * (i as f64 / last);
            ProfilePoint {
                x,
                intensity: f(x),
            }
        })
        .collect();
    Ok(IntensityProfile { points })
}

/// Golden-section search for the maximum of a unimodal `f` on [a, b],
/// narrowing until the bracket is shorter than `x_tol`. Returns the bracket
/// midpoint and its value.
pub fn golden_section_max<F: Fn(f64) -> f64>(
    f: F,
    mut a: f64,
    mut b: f64,
    x_tol: f64,
) -> Result<(f64, f64)> {
    if !a.is_finite() || !b.is_finite() || !(a < b) {
        return Err(Error::InvalidParameter {
            name: "bracket",
            reason: format!("need finite a < b, got [{a}, {b}]"),
        });
    }
    if !(x_tol > 0.0) || !x_tol.is_finite() {
        return Err(Error::InvalidParameter {
            name: "x_tol",
            reason: format!("must be positive and finite, got {x_tol}"),
        });
    }
    let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > x_tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)))
}

/// Sharpen a seeded extremum by searching ±`half_width` around the seed.
pub fn refine_local_max<F: Fn(f64) -> f64>(
    f: F,
    seed: f64,
    half_width: f64,
    x_tol: f64,
) -> Result<(f64, f64)> {
    if !(half_width > 0.0) || !half_width.is_finite() {
        return Err(Error::InvalidParameter {
            name: "half_width",
            reason: format!("must be positive and finite, got {half_width}"),
        });
    }
    golden_section_max(f, seed - half_width, seed + half_width, x_tol)
}
