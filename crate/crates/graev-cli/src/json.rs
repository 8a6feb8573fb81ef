//! JSON wire formats and their conversions to core types.
//!
//! Rationals travel as strings `"p/q"` or `"n"` (bare JSON integers are
//! also accepted on input). Parse errors name the file and the path to the
//! offending field.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use graev_core::embedding::{AmbientModel, EMetric};
use graev_core::rat::{format_rat, parse_rat, Rat};
use graev_core::rolewicz::{GeneratorCertificate, OmegaTorusModel, PowerConvention};
use graev_core::torus::{symbol_index, symbol_name, Angle, TorusPoint};
use graev_core::word::{LinComb, Word};
use graev_core::PointedSpace;

/// A rational in the wire format `"p/q"`, `"n"`, or a bare integer.
/// Validation happens during deserialization, so malformed literals are
/// reported with the JSON path of the offending field.
#[derive(Debug, Clone)]
pub struct RatDto(pub Rat);

impl RatDto {
    pub fn to_rat(&self) -> Result<Rat> {
        Ok(self.0.clone())
    }

    pub fn from_rat(r: &Rat) -> Self {
        RatDto(r.clone())
    }
}

impl Serialize for RatDto {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rat(&self.0))
    }
}

impl<'de> Deserialize<'de> for RatDto {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RatVisitor;
        impl serde::de::Visitor<'_> for RatVisitor {
            type Value = RatDto;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                write!(f, "a rational like \"p/q\" or \"n\", or an integer")
            }

            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<RatDto, E> {
                Ok(RatDto(Rat::from_integer(BigInt::from(v))))
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<RatDto, E> {
                Ok(RatDto(Rat::from_integer(BigInt::from(v))))
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<RatDto, E> {
                parse_rat(v).map(RatDto).map_err(|e| E::custom(e))
            }
        }
        deserializer.deserialize_any(RatVisitor)
    }
}

pub fn parse_rat_arg(s: &str) -> Result<Rat> {
    parse_rat(s).map_err(|e| anyhow!("invalid rational `{s}`: {e}"))
}

/// Reads and deserializes a JSON file, reporting the JSON path of any
/// offending field.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read `{}`", path.display()))?;
    parse_json(&text).with_context(|| format!("in `{}`", path.display()))
}

pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(&mut de)
        .map_err(|e| anyhow!("at {}: {}", e.path(), e.inner()))
}

/// FNV-1a digest of raw input bytes, for report provenance.
pub fn digest(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

// ---------------------------------------------------------------------------
// Pointed spaces, words, combinations

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceDto {
    pub points: Vec<String>,
    pub basepoint: String,
    pub dist: Vec<Vec<RatDto>>,
}

impl SpaceDto {
    pub fn to_space(&self) -> Result<PointedSpace> {
        let basepoint = self
            .points
            .iter()
            .position(|p| *p == self.basepoint)
            .ok_or_else(|| anyhow!("basepoint `{}` is not among the points", self.basepoint))?;
        let dist = self
            .dist
            .iter()
            .map(|row| row.iter().map(RatDto::to_rat).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PointedSpace::new(self.points.clone(), basepoint, dist).map_err(|e| anyhow!("{e}"))
    }

    pub fn from_space(space: &PointedSpace) -> Self {
        SpaceDto {
            points: space.names().to_vec(),
            basepoint: space.name(space.basepoint()).to_string(),
            dist: (0..space.len())
                .map(|i| (0..space.len()).map(|j| RatDto::from_rat(space.dist(i, j))).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffsDto {
    pub coeffs: BTreeMap<String, RatDto>,
}

impl CoeffsDto {
    pub fn to_word(&self, space: &PointedSpace) -> Result<Word> {
        let mut entries = Vec::new();
        for (name, coeff) in &self.coeffs {
            let index = space
                .index_of(name)
                .ok_or_else(|| anyhow!("unknown point `{name}`"))?;
            let value = coeff.to_rat()?;
            if !value.is_integer() {
                bail!("word coefficient for `{name}` must be an integer, got {}", format_rat(&value));
            }
            entries.push((index, value.to_integer()));
        }
        let word = Word::new(entries);
        word.check_over(space).map_err(|e| anyhow!("{e}"))?;
        Ok(word)
    }

    pub fn to_lincomb(&self, space: &PointedSpace) -> Result<LinComb> {
        let mut entries = Vec::new();
        for (name, coeff) in &self.coeffs {
            let index = space
                .index_of(name)
                .ok_or_else(|| anyhow!("unknown point `{name}`"))?;
            entries.push((index, coeff.to_rat()?));
        }
        let v = LinComb::new(entries);
        v.check_over(space).map_err(|e| anyhow!("{e}"))?;
        Ok(v)
    }

    pub fn from_word(space: &PointedSpace, w: &Word) -> Self {
        CoeffsDto {
            coeffs: w
                .iter()
                .map(|(i, c)| {
                    (space.name(i).to_string(), RatDto(Rat::from_integer(c.clone())))
                })
                .collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Angles, torus points, generator certificates

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AngleDto {
    Rational { rat: RatDto },
    Symbolic { coords: BTreeMap<String, RatDto> },
}

impl AngleDto {
    pub fn to_angle(&self) -> Result<Angle> {
        match self {
            AngleDto::Rational { rat } => Ok(Angle::from_rat(&rat.to_rat()?)),
            AngleDto::Symbolic { coords } => {
                let mut dense: Vec<(usize, Rat)> = Vec::new();
                for (name, coeff) in coords {
                    let index = symbol_index(name)
                        .ok_or_else(|| anyhow!("unknown basis symbol `{name}`"))?;
                    dense.push((index, coeff.to_rat()?));
                }
                let len = dense.iter().map(|(i, _)| i + 1).max().unwrap_or(0);
                let mut vec = vec![Rat::from_integer(BigInt::from(0)); len];
                for (i, c) in dense {
                    vec[i] = c;
                }
                Ok(Angle::with_coords(vec))
            }
        }
    }

    pub fn from_angle(a: &Angle) -> Self {
        if a.is_rational() {
            AngleDto::Rational { rat: RatDto::from_rat(&a.coord(0)) }
        } else {
            let coords = a
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(i, c)| (symbol_name(i), RatDto::from_rat(c)))
                .collect();
            AngleDto::Symbolic { coords }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TorusPointDto {
    pub angles: Vec<AngleDto>,
}

impl TorusPointDto {
    pub fn to_point(&self) -> Result<TorusPoint> {
        Ok(TorusPoint::new(
            self.angles.iter().map(AngleDto::to_angle).collect::<Result<Vec<_>>>()?,
        ))
    }

    pub fn from_point(p: &TorusPoint) -> Self {
        TorusPointDto { angles: p.angles.iter().map(AngleDto::from_angle).collect() }
    }
}

/// Self-contained generator certificate: carries the model it was built
/// for, so verification needs no other input.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDto {
    pub weights: Vec<RatDto>,
    pub radii: Vec<RatDto>,
    pub coordinates: Vec<AngleDto>,
    pub power_counts: Vec<u64>,
    pub grid: String,
    pub convention: String,
}

impl CertificateDto {
    pub fn to_parts(&self) -> Result<(OmegaTorusModel, GeneratorCertificate)> {
        let weights = self.weights.iter().map(RatDto::to_rat).collect::<Result<Vec<_>>>()?;
        let radii = self.radii.iter().map(RatDto::to_rat).collect::<Result<Vec<_>>>()?;
        let model = OmegaTorusModel::new(weights, radii).map_err(|e| anyhow!("{e}"))?;
        let coordinates =
            self.coordinates.iter().map(AngleDto::to_angle).collect::<Result<Vec<_>>>()?;
        let grid_step = parse_rat_arg(&self.grid)?;
        let grid_resolution = graev_core::torus::unit_fraction_denominator(&grid_step)
            .map_err(|e| anyhow!("{e}"))?;
        let convention = PowerConvention::parse(&self.convention)
            .ok_or_else(|| anyhow!("unknown power convention `{}`", self.convention))?;
        let cert = GeneratorCertificate {
            coordinates,
            power_counts: self.power_counts.clone(),
            grid_resolution,
            convention,
            reports: Default::default(),
        };
        Ok((model, cert))
    }

    pub fn from_parts(model: &OmegaTorusModel, cert: &GeneratorCertificate) -> Self {
        CertificateDto {
            weights: model.weights().iter().map(RatDto::from_rat).collect(),
            radii: model.radii().iter().map(RatDto::from_rat).collect(),
            coordinates: cert.coordinates.iter().map(AngleDto::from_angle).collect(),
            power_counts: cert.power_counts.clone(),
            grid: format!("1/{}", cert.grid_resolution),
            convention: cert.convention.name().to_string(),
        }
    }
}

// ---------------------------------------------------------------------------
// Embedding models

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EMetricDto {
    Named(String),
    WeightedL1 { weighted_l1: Vec<RatDto> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelDto {
    pub e_dim: usize,
    pub x_points: Vec<Vec<RatDto>>,
    pub n_max: u32,
    #[serde(default = "default_metric")]
    pub e_metric: EMetricDto,
}

fn default_metric() -> EMetricDto {
    EMetricDto::Named("l1".to_string())
}

impl ModelDto {
    pub fn to_model(&self) -> Result<AmbientModel> {
        let metric = match &self.e_metric {
            EMetricDto::Named(name) if name == "l1" => EMetric::L1,
            EMetricDto::Named(name) => bail!("unknown metric `{name}` (expected \"l1\")"),
            EMetricDto::WeightedL1 { weighted_l1 } => EMetric::WeightedL1(
                weighted_l1.iter().map(RatDto::to_rat).collect::<Result<Vec<_>>>()?,
            ),
        };
        let x_points = self
            .x_points
            .iter()
            .map(|p| p.iter().map(RatDto::to_rat).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        AmbientModel::new(self.e_dim, x_points, self.n_max, metric).map_err(|e| anyhow!("{e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_round_trip_matches_wire_format() {
        let text = r#"{"points": ["*","a","b"], "basepoint": "*",
            "dist": [["0","1","1"],["1","0","1"],["1","1","0"]]}"#;
        let dto: SpaceDto = parse_json(text).unwrap();
        let space = dto.to_space().unwrap();
        assert_eq!(space.len(), 3);
        assert!(space.validate().is_ok());

        let word: CoeffsDto = parse_json(r#"{"coeffs": {"a": "2", "b": "-1"}}"#).unwrap();
        let w = word.to_word(&space).unwrap();
        assert_eq!(w.letter_count(), 3);
    }

    #[test]
    fn angle_formats() {
        let a: AngleDto = parse_json(r#"{"rat": "1/4"}"#).unwrap();
        let angle = a.to_angle().unwrap();
        assert!(angle.is_rational());

        let b: AngleDto = parse_json(r#"{"coords": {"1": "0", "sqrt2": "1"}}"#).unwrap();
        let angle = b.to_angle().unwrap();
        assert!(!angle.is_rational());

        let bad: AngleDto = parse_json(r#"{"coords": {"sqrt4": "1"}}"#).unwrap();
        assert!(bad.to_angle().is_err());
    }

    #[test]
    fn parse_errors_name_the_path() {
        let err = parse_json::<SpaceDto>(
            r#"{"points": ["*"], "basepoint": "*", "dist": [[{"x": 1}]]}"#,
        )
        .unwrap_err();
        assert!(format!("{err:#}").contains("dist[0][0]"));
    }
}
