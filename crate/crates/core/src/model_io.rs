//! JSON model files.
//!
//! Every real is written as a string holding a 17-significant-digit decimal
//! (`"float_encoding": "decimal17"`), which parses back to the identical
//! `f64`. Non-finite values are representable ("NaN", "inf") so that a
//! damaged file is rejected by validation with a precise location rather
//! than silently repaired.

use std::fs;
use std::path::Path;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{FourierShape, Layer, Network, TimeScale, UnitKind};
use crate::signal::{fmt_real, write_file};

pub const FORMAT_VERSION: u64 = 1;
pub const FLOAT_ENCODING: &str = "decimal17";

#[derive(Debug, Clone, Copy, PartialEq)]
struct Real(f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_real(self.0))
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<f64>()
            .map(Real)
            .map_err(|_| de::Error::custom(format!("invalid real {s:?}")))
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShapeRecord {
    k: usize,
    h: usize,
    s: Real,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TimeScaleRecord {
    k: usize,
    start_time: Real,
    step: Real,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LayerRecord {
    in_dim: usize,
    out_dim: usize,
    kinds: Vec<UnitKind>,
    /// Row-major `out_dim x in_dim`.
    weights: Vec<Real>,
    biases: Vec<Real>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    format_version: u64,
    float_encoding: String,
    shape: ShapeRecord,
    time_scale: TimeScaleRecord,
    layers: Vec<LayerRecord>,
}

#[derive(Deserialize)]
struct VersionProbe {
    format_version: Option<u64>,
}

pub fn to_json(net: &Network) -> Result<String> {
    let shape = net.check_fourier_topology()?;
    let ts = net.time_scale();
    let file = ModelFile {
        format_version: FORMAT_VERSION,
        float_encoding: FLOAT_ENCODING.to_owned(),
        shape: ShapeRecord {
            k: shape.k,
            h: shape.h,
            s: Real(shape.s),
        },
        time_scale: TimeScaleRecord {
            k: ts.k,
            start_time: Real(ts.start_time),
            step: Real(ts.step),
        },
        layers: net
            .layers()
            .iter()
            .map(|l| LayerRecord {
                in_dim: l.in_dim(),
                out_dim: l.out_dim(),
                kinds: l.kinds().to_vec(),
                weights: l.weights.iter().copied().map(Real).collect(),
                biases: l.biases.iter().copied().map(Real).collect(),
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&file).expect("model serialization is infallible"))
}

pub fn save(net: &Network, path: impl AsRef<Path>) -> Result<()> {
    let mut json = to_json(net)?;
    json.push('\n');
    write_file(path.as_ref(), &json)
}

pub fn load(path: impl AsRef<Path>) -> Result<Network> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    from_json(&text)
}

fn parse_error(text: &str, err: &serde_json::Error) -> Error {
    let (line, column) = (err.line(), err.column());
    let offset = if line == 0 {
        0
    } else {
        let before: usize = text.split_inclusive('\n').take(line - 1).map(str::len).sum();
        (before + column.saturating_sub(1)).min(text.len())
    };
    Error::ModelParse {
        offset,
        line,
        column,
        message: err.to_string(),
    }
}

pub fn from_json(text: &str) -> Result<Network> {
    let probe: VersionProbe = serde_json::from_str(text).map_err(|e| parse_error(text, &e))?;
    match probe.format_version {
        Some(FORMAT_VERSION) => {}
        Some(found) => {
            return Err(Error::UnsupportedVersion {
                found,
                expected: FORMAT_VERSION,
            })
        }
        None => {
            return Err(Error::ModelParse {
                offset: 0,
                line: 1,
                column: 1,
                message: "missing format_version".into(),
            })
        }
    }
    let file: ModelFile = serde_json::from_str(text).map_err(|e| parse_error(text, &e))?;
    if file.float_encoding != FLOAT_ENCODING {
        return Err(Error::ModelParse {
            offset: 0,
            line: 1,
            column: 1,
            message: format!("unknown float encoding {:?}", file.float_encoding),
        });
    }
    let mut layers = Vec::with_capacity(file.layers.len());
    for (i, rec) in file.layers.into_iter().enumerate() {
        let n = i + 1;
        if rec.kinds.len() != rec.out_dim
            || rec.biases.len() != rec.out_dim
            || rec.weights.len() != rec.out_dim * rec.in_dim
        {
            return Err(Error::ModelDimension(format!(
                "layer {n}: declared {}x{} but has {} kinds, {} weights, {} biases",
                rec.out_dim,
                rec.in_dim,
                rec.kinds.len(),
                rec.weights.len(),
                rec.biases.len()
            )));
        }
        for (what, values) in [("weight", &rec.weights), ("bias", &rec.biases)] {
            if let Some(index) = values.iter().position(|r| !r.0.is_finite()) {
                return Err(Error::ModelNonFinite {
                    what,
                    layer: n,
                    index,
                });
            }
        }
        let layer = Layer::new(
            rec.in_dim,
            rec.weights.into_iter().map(|r| r.0).collect(),
            rec.biases.into_iter().map(|r| r.0).collect(),
            rec.kinds,
        )
        .map_err(|e| Error::ModelDimension(format!("layer {n}: {e}")))?;
        layers.push(layer);
    }
    let (start, step) = (file.time_scale.start_time.0, file.time_scale.step.0);
    if !(start.is_finite() && step.is_finite() && step > 0.0) {
        return Err(Error::ModelDimension(format!("invalid time grid start {start}, step {step}")));
    }
    let shape = FourierShape {
        k: file.shape.k,
        h: file.shape.h,
        s: file.shape.s.0,
    };
    let time_scale = TimeScale {
        k: file.time_scale.k,
        start_time: start,
        step,
    };
    Network::fourier(layers, shape, time_scale).map_err(|e| match e {
        Error::Topology(m) => Error::ModelDimension(m),
        other => other,
    })
}
