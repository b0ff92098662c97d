//! Scenario documents: a JSON file with a `kind`, a flat `parameters` object
//! mirroring the library configuration types, and an optional `sweep` block.
//! Unknown keys anywhere are rejected with an error naming the key; physical
//! validation is delegated to the library constructors.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use pathamp::constants::ELECTRON_REST_ENERGY_EV;
use pathamp::electron_grating::{
    mean_momentum_from_kinetic, ElectronGratingConfig, ProductionHypothesis,
};
use pathamp::photon_grating::PhotonGratingConfig;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    PhotonGrating,
    ElectronGrating,
    Kinematics,
    Cat,
    Verify,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::PhotonGrating => "photon_grating",
            Kind::ElectronGrating => "electron_grating",
            Kind::Kinematics => "kinematics",
            Kind::Cat => "cat",
            Kind::Verify => "verify",
        }
    }
}

/// Raw document shape; `parameters` stays untyped until the kind is known.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDoc {
    kind: Kind,
    #[serde(default)]
    parameters: Value,
    #[serde(default)]
    sweep: Option<SweepDoc>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SweepDoc {
    pub variable: String,
    pub low: f64,
    pub high: f64,
    pub n_samples: usize,
}

fn default_scale() -> f64 {
    1.0
}

fn default_mass() -> f64 {
    ELECTRON_REST_ENERGY_EV
}

fn default_suite() -> String {
    "all".into()
}

/// Strip-grating source parameters. Lengths nm, energy eV, lifetime ns.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PhotonParams {
    pub photon_energy_ev: f64,
    pub lifetime_ns: f64,
    pub pitch_nm: f64,
    pub strip_width_nm: f64,
    pub n_strips: u32,
    pub r_source_nm: f64,
    pub r_observer_nm: f64,
    #[serde(default = "default_scale")]
    pub scale: f64,
}

impl PhotonParams {
    pub fn config(&self) -> Result<PhotonGratingConfig, CliError> {
        Ok(PhotonGratingConfig::new(
            self.photon_energy_ev,
            self.lifetime_ns,
            self.pitch_nm,
            self.strip_width_nm,
            self.n_strips,
            self.r_source_nm,
            self.r_observer_nm,
            self.scale,
        )?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    EqualProductionTimes,
    EqualVelocities,
}

impl From<Hypothesis> for ProductionHypothesis {
    fn from(h: Hypothesis) -> Self {
        match h {
            Hypothesis::EqualProductionTimes => ProductionHypothesis::EqualProductionTimes,
            Hypothesis::EqualVelocities => ProductionHypothesis::EqualVelocities,
        }
    }
}

/// Row-lattice beam parameters. Exactly one of `kinetic_energy_ev` and
/// `mean_momentum_ev` fixes the beam momentum.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ElectronParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kinetic_energy_ev: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean_momentum_ev: Option<f64>,
    pub filament_temperature_k: f64,
    pub row_spacing_nm: f64,
    pub n_rows: u32,
    pub r_source_nm: f64,
    pub r_observer_nm: f64,
    pub hypothesis: Hypothesis,
    #[serde(default = "default_scale")]
    pub scale: f64,
}

impl ElectronParams {
    pub fn mean_momentum(&self) -> Result<f64, CliError> {
        match (self.kinetic_energy_ev, self.mean_momentum_ev) {
            (Some(k), None) => Ok(mean_momentum_from_kinetic(k)?),
            (None, Some(p)) => Ok(p),
            _ => Err(CliError::validation(
                "exactly one of kinetic_energy_ev, mean_momentum_ev must be set",
            )),
        }
    }

    pub fn config(&self) -> Result<ElectronGratingConfig, CliError> {
        Ok(ElectronGratingConfig::new(
            self.mean_momentum()?,
            self.filament_temperature_k,
            self.row_spacing_nm,
            self.n_rows,
            self.r_source_nm,
            self.r_observer_nm,
            self.hypothesis.into(),
            self.scale,
        )?)
    }
}

/// A two-path pair: lengths in nm, momenta pc in eV, mass energy in eV
/// (defaults to the electron).
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct KinematicsParams {
    pub s_a_nm: f64,
    pub s_b_nm: f64,
    pub p_a_ev: f64,
    pub p_b_ev: f64,
    #[serde(default = "default_mass")]
    pub mass_energy_ev: f64,
}

/// Delayed-decay survival bookkeeping; times in any one common unit.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CatParams {
    pub mean_lifetime: f64,
    pub time: f64,
    #[serde(default)]
    pub delay: f64,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyParams {
    #[serde(default = "default_suite")]
    pub suite: String,
}

#[derive(Debug, Clone)]
pub enum Params {
    Photon(PhotonParams),
    Electron(ElectronParams),
    Kinematics(KinematicsParams),
    Cat(CatParams),
    Verify(VerifyParams),
}

impl Params {
    /// Serialized echo of the resolved parameters (defaults filled in).
    pub fn echo(&self) -> Value {
        match self {
            Params::Photon(p) => serde_json::to_value(p),
            Params::Electron(p) => serde_json::to_value(p),
            Params::Kinematics(p) => serde_json::to_value(p),
            Params::Cat(p) => serde_json::to_value(p),
            Params::Verify(p) => serde_json::to_value(p),
        }
        .expect("parameter structs serialize")
    }
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub kind: Kind,
    pub params: Params,
    pub sweep: Option<SweepDoc>,
}

/// Sweepable variables per kind: the angular coordinate for gratings plus
/// every real-valued parameter. Integer counts and discrete choices are not
/// sweepable.
pub fn sweepable(kind: Kind) -> &'static [&'static str] {
    match kind {
        Kind::PhotonGrating => &[
            "theta_deg",
            "photon_energy_ev",
            "lifetime_ns",
            "pitch_nm",
            "strip_width_nm",
            "r_source_nm",
            "r_observer_nm",
            "scale",
        ],
        Kind::ElectronGrating => &[
            "theta_deg",
            "kinetic_energy_ev",
            "mean_momentum_ev",
            "filament_temperature_k",
            "row_spacing_nm",
            "r_source_nm",
            "r_observer_nm",
            "scale",
        ],
        Kind::Kinematics => &["s_a_nm", "s_b_nm", "p_a_ev", "p_b_ev", "mass_energy_ev"],
        Kind::Cat => &["mean_lifetime", "time", "delay"],
        Kind::Verify => &[],
    }
}

/// Load a scenario document, apply `--set key=value` overrides, and resolve
/// the typed parameters for its kind.
pub fn load(path: &Path, sets: &[String]) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::validation(format!("cannot read scenario {}: {e}", path.display()))
    })?;
    let mut doc: Value = serde_json::from_str(&text).map_err(|e| {
        CliError::validation(format!("scenario {} is not valid JSON: {e}", path.display()))
    })?;
    apply_sets(&mut doc, sets)?;
    from_document(doc)
}

/// Resolve an already-parsed document (overrides applied).
pub fn from_document(doc: Value) -> Result<Scenario, CliError> {
    let doc: ScenarioDoc = serde_json::from_value(doc)
        .map_err(|e| CliError::validation(format!("scenario: {e}")))?;
    let parameters = match &doc.parameters {
        Value::Null => Value::Object(Default::default()),
        other => other.clone(),
    };
    let params = match doc.kind {
        Kind::PhotonGrating => Params::Photon(typed(doc.kind, parameters)?),
        Kind::ElectronGrating => Params::Electron(typed(doc.kind, parameters)?),
        Kind::Kinematics => Params::Kinematics(typed(doc.kind, parameters)?),
        Kind::Cat => Params::Cat(typed(doc.kind, parameters)?),
        Kind::Verify => Params::Verify(typed(doc.kind, parameters)?),
    };
    if let Some(sweep) = &doc.sweep {
        validate_sweep(doc.kind, sweep)?;
    }
    Ok(Scenario {
        kind: doc.kind,
        params,
        sweep: doc.sweep,
    })
}

pub(crate) fn typed<T: serde::de::DeserializeOwned>(
    kind: Kind,
    parameters: Value,
) -> Result<T, CliError> {
    serde_json::from_value(parameters)
        .map_err(|e| CliError::validation(format!("{} parameters: {e}", kind.name())))
}

fn validate_sweep(kind: Kind, sweep: &SweepDoc) -> Result<(), CliError> {
    let allowed = sweepable(kind);
    if !allowed.contains(&sweep.variable.as_str()) {
        return Err(CliError::validation(format!(
            "unknown sweep variable '{}' for kind {}; expected one of {}",
            sweep.variable,
            kind.name(),
            allowed.join(", ")
        )));
    }
    if !(sweep.low.is_finite() && sweep.high.is_finite() && sweep.low < sweep.high) {
        return Err(CliError::validation(format!(
            "sweep range must satisfy low < high with finite bounds, got [{}, {}]",
            sweep.low, sweep.high
        )));
    }
    if sweep.n_samples < 2 {
        return Err(CliError::validation(format!(
            "sweep needs at least 2 samples, got {}",
            sweep.n_samples
        )));
    }
    Ok(())
}

/// Apply `key=value` overrides onto the raw document. Plain keys target
/// `parameters`; `sweep.<field>` keys target the sweep block. Values parse as
/// JSON scalars, falling back to bare strings.
fn apply_sets(doc: &mut Value, sets: &[String]) -> Result<(), CliError> {
    for item in sets {
        let (key, raw) = item.split_once('=').ok_or_else(|| {
            CliError::validation(format!("--set expects key=value, got '{item}'"))
        })?;
        let value: Value = serde_json::from_str(raw).unwrap_or(Value::String(raw.to_string()));
        let root = doc.as_object_mut().ok_or_else(|| {
            CliError::validation("scenario document must be a JSON object".to_string())
        })?;
        if let Some(field) = key.strip_prefix("sweep.") {
            if !matches!(field, "variable" | "low" | "high" | "n_samples") {
                return Err(CliError::validation(format!(
                    "unknown sweep field '{field}' in --set {item}"
                )));
            }
            let sweep = root
                .entry("sweep")
                .or_insert_with(|| Value::Object(Default::default()));
            if !sweep.is_object() {
                *sweep = Value::Object(Default::default());
            }
            sweep
                .as_object_mut()
                .expect("just ensured object")
                .insert(field.to_string(), value);
        } else {
            let parameters = root
                .entry("parameters")
                .or_insert_with(|| Value::Object(Default::default()));
            let map = parameters.as_object_mut().ok_or_else(|| {
                CliError::validation("scenario parameters must be a JSON object".to_string())
            })?;
            map.insert(key.to_string(), value);
        }
    }
    Ok(())
}
