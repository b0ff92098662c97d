//! Quantum diffraction by direct summation of path amplitudes.
//!
//! Each classical history of a photon or electron — emitted by a decaying
//! source, reflected once by one strip or row of a grating, detected at a
//! fixed angle and time — carries a complex amplitude. Detection
//! probabilities come from coherently summing those amplitudes and squaring,
//! nothing else. The crate builds the closed forms this prescription produces
//! (geometric path sums, damped-cosine interference terms, time-integrated
//! intensity patterns) and, alongside every one of them, an independent
//! brute-force oracle — compensated direct summation, adaptive quadrature,
//! finite differences — that the closed form is tested against.
//!
//! Working units throughout: energies and pc in eV, lengths in nm, times in
//! ns, angles in radians. In this system c ≈ 3e8 carries the same numeric
//! value in nm/ns as in m/s.
//!
//! Module map:
//! - [`constants`]: CODATA values in the working units.
//! - [`propagator`]: free-particle kinematic states, kernels, and the N-path
//!   geometric sum.
//! - [`oracles`]: compensated summation, adaptive (oscillatory) quadrature,
//!   the two-path Gaussian momentum integral, convergence-order fits.
//! - [`photon_grating`]: strip grating fed by a finite-lifetime emitter;
//!   complex strip phase, detection-time densities, integrated intensities,
//!   order angles.
//! - [`electron_grating`]: row grating with a thermal momentum spread, under
//!   either of the two production hypotheses that fix the interfering paths.
//! - [`kinematics`]: two-path transit timing, velocity reconstruction, exact
//!   and first-order phase differences.
//! - [`classical_wave`]: the effective spatial wave picture and its
//!   equivalence to (and residual against) the amplitude treatment.
//! - [`decay`]: excited-state decay amplitudes, emission normalization, and
//!   the delayed survival curve.
//! - [`profile`]: swept intensity profiles and extremum refinement.
//! - [`verify`]: the built-in check suite run by `pathamp verify`.

pub mod classical_wave;
pub mod constants;
pub mod decay;
pub mod electron_grating;
pub mod error;
pub mod kinematics;
pub mod oracles;
pub mod photon_grating;
pub mod profile;
pub mod propagator;
pub mod verify;

pub use error::{Error, Result, Warning};

/// Complex path amplitude; all amplitudes in the crate are this type.
pub type ComplexAmplitude = num_complex::Complex64;
