//! The mass-function document format.
//!
//! ```json
//! { "frame": ["x", "y", "z"], "masses": { "x": 0.2, "y": 0.3, "x z": 0.5 } }
//! ```
//!
//! Subset keys are element names joined by spaces; on output they are sorted
//! in frame order and entries follow ascending bitmask order. Unlisted subsets
//! carry zero mass. Output values are rounded to six decimals. The empty key
//! `""` holds mass on the empty set and is only accepted by
//! [`MassDocument::to_unnormalized`].

use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::mass::{MassFunction, MassVector, SignedMassFunction, UnnormalizedMass};

/// Decimal places used for every number written to a document.
pub const OUTPUT_DECIMALS: i32 = 6;

pub fn round_output(v: f64) -> f64 {
    let scale = 10f64.powi(OUTPUT_DECIMALS);
    let r = (v * scale).round() / scale;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// A frame plus a sparse map from subset keys to masses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MassDocument {
    pub frame: Vec<String>,
    #[serde(default)]
    pub masses: IndexMap<String, f64>,
}

impl MassDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn from_vector(vector: &impl MassVector) -> Self {
        Self { frame: vector.frame().names().to_vec(), masses: mass_map(vector) }
    }

    pub fn frame(&self) -> Result<Frame> {
        Frame::new(self.frame.iter().cloned())
    }

    /// Dense masses. A total that misses 1 by no more than the rounding of
    /// the listed entries is rescaled to 1, so rounded outputs read back.
    fn raw(&self, frame: &Frame) -> Result<Vec<f64>> {
        let mut raw = vec![0.0; frame.power_set_size()];
        for (key, &value) in &self.masses {
            raw[frame.parse_key(key)?.index()] += value;
        }
        let total: f64 = raw.iter().sum();
        let rounding = 0.5 * 10f64.powi(-OUTPUT_DECIMALS) * self.masses.len() as f64;
        if total.is_finite() && (total - 1.0).abs() <= rounding + f64::EPSILON {
            raw.iter_mut().for_each(|v| *v /= total);
        }
        Ok(raw)
    }

    fn raw_without_conflict(&self) -> Result<(Frame, Vec<f64>)> {
        let frame = self.frame()?;
        let raw = self.raw(&frame)?;
        if raw[0] != 0.0 {
            return Err(Error::Parse(format!("mass {} on the empty set", raw[0])));
        }
        Ok((frame, raw))
    }

    /// Validated mass function.
    pub fn to_mass(&self) -> Result<MassFunction> {
        let (frame, raw) = self.raw_without_conflict()?;
        MassFunction::from_raw(&frame, raw)
    }

    /// Normalized assignment that may carry negative entries.
    pub fn to_signed(&self) -> Result<SignedMassFunction> {
        let (frame, raw) = self.raw_without_conflict()?;
        SignedMassFunction::from_raw(&frame, raw)
    }

    /// Assignment that may put mass on the empty set under the key `""`.
    pub fn to_unnormalized(&self) -> Result<UnnormalizedMass> {
        let frame = self.frame()?;
        let raw = self.raw(&frame)?;
        UnnormalizedMass::from_raw(&frame, raw)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents always serialize");
        text.push('\n');
        text
    }
}

/// Entries of `vector` that stay nonzero after rounding, keyed by canonical
/// subset key. Mass on the empty set (conjunctive outputs) is keyed `""`.
pub fn mass_map(vector: &impl MassVector) -> IndexMap<String, f64> {
    let frame = vector.frame();
    frame
        .subsets()
        .map(|s| (frame.key(s), round_output(vector.mass(s))))
        .filter(|(_, v)| *v != 0.0)
        .collect()
}
