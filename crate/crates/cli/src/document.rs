//! Fan documents: a JSON object with `rank`, `rays`, `max_cones` and an
//! optional `name`.

use std::str::FromStr;

use num::BigInt;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Number;
use thiserror::Error;
use toraut_core::{Fan, LatticeVector};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{0}")]
    Invalid(toraut_core::Error),
}

/// Arbitrary-precision integer written as a bare JSON number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Number::from_str(&self.0.to_string())
            .expect("integer literal")
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let n = Number::deserialize(d)?;
        BigInt::from_str(&n.to_string())
            .map(Int)
            .map_err(|_| serde::de::Error::custom(format!("expected an integer, found {n}")))
    }
}

pub fn ints(v: &LatticeVector) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rank: usize,
    pub rays: Vec<Vec<Int>>,
    pub max_cones: Vec<Vec<usize>>,
}

/// A parsed document, its fan, and any normalization notes.
#[derive(Clone, Debug)]
pub struct ParsedFan {
    pub document: FanDocument,
    pub fan: Fan,
    pub warnings: Vec<String>,
}

fn coordinates(ray: &[Int]) -> String {
    let parts: Vec<String> = ray.iter().map(|x| x.0.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Parse and check a document. Rays are replaced by their primitive
/// generators; each replacement is reported as a warning.
pub fn parse_fan(text: &str) -> Result<ParsedFan, DocumentError> {
    let mut document: FanDocument = serde_json::from_str(text)?;
    for (i, ray) in document.rays.iter().enumerate() {
        if ray.len() != document.rank {
            return Err(DocumentError::Schema(format!(
                "ray {i} has {} coordinates, expected {}",
                ray.len(),
                document.rank
            )));
        }
    }
    for (c, cone) in document.max_cones.iter().enumerate() {
        if let Some(&bad) = cone.iter().find(|&&i| i >= document.rays.len()) {
            return Err(DocumentError::Schema(format!(
                "max_cones[{c}]: ray index {bad} out of range ({} rays)",
                document.rays.len()
            )));
        }
    }
    let mut warnings = Vec::new();
    let mut rays = Vec::with_capacity(document.rays.len());
    for (i, ray) in document.rays.iter_mut().enumerate() {
        let v = LatticeVector::new(ray.iter().map(|x| x.0.clone()).collect());
        let v = match v.primitive() {
            Ok(p) if p != v => {
                *ray = ints(&p);
                warnings.push(format!("ray {i} normalized to {}", coordinates(ray)));
                p
            }
            _ => v,
        };
        rays.push(v);
    }
    let fan = Fan::new(document.rank, rays, document.max_cones.clone()).map_err(DocumentError::Invalid)?;
    Ok(ParsedFan {
        document,
        fan,
        warnings,
    })
}

/// Document for a fan in canonical form.
pub fn to_document(fan: &Fan, name: Option<String>) -> FanDocument {
    FanDocument {
        name,
        rank: fan.rank(),
        rays: fan.rays().iter().map(ints).collect(),
        max_cones: fan.max_cones().to_vec(),
    }
}

/// Pretty-printed JSON, one ray or cone per line.
pub fn serialize_document(doc: &FanDocument) -> String {
    let mut out = String::from("{\n");
    if let Some(name) = &doc.name {
        out.push_str(&format!("  \"name\": {},\n", serde_json::to_string(name).unwrap()));
    }
    out.push_str(&format!("  \"rank\": {},\n", doc.rank));
    let rows = |items: Vec<String>| {
        if items.is_empty() {
            "[]".to_string()
        } else {
            format!("[\n    {}\n  ]", items.join(",\n    "))
        }
    };
    let rays: Vec<String> = doc.rays.iter().map(|r| coordinates(r)).collect();
    out.push_str(&format!("  \"rays\": {},\n", rows(rays)));
    let cones: Vec<String> = doc
        .max_cones
        .iter()
        .map(|c| serde_json::to_string(c).unwrap())
        .collect();
    out.push_str(&format!("  \"max_cones\": {}\n}}\n", rows(cones)));
    out
}
