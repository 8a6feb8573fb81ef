//! Fixture instances bundled into the binary, so `graev suite` runs
//! without any files on disk. The same JSON lives under `fixtures/` for
//! direct CLI use.

use anyhow::Result;

use graev_core::embedding::AmbientModel;
use graev_core::PointedSpace;

use crate::json::{parse_json, ModelDto, SpaceDto};

pub const DISCRETE3: &str = include_str!("../fixtures/discrete3.json");
pub const RATIONAL4: &str = include_str!("../fixtures/rational4.json");
pub const PSEUDO2: &str = include_str!("../fixtures/pseudo2.json");
pub const WORD_A: &str = include_str!("../fixtures/word_a.json");
pub const WORD_2A_MINUS_B: &str = include_str!("../fixtures/word_2a_minus_b.json");
pub const WORD_ZERO: &str = include_str!("../fixtures/word_zero.json");
pub const LINCOMB_HALF_A: &str = include_str!("../fixtures/lincomb_half_a.json");
pub const ANGLE_QUARTER: &str = include_str!("../fixtures/angle_quarter.json");
pub const ANGLE_SQRT2: &str = include_str!("../fixtures/angle_sqrt2.json");
pub const TARGET_HALF: &str = include_str!("../fixtures/target_half.json");
pub const EMBED_MODEL: &str = include_str!("../fixtures/embed_model.json");

/// Every bundled fixture with its name, for report digests.
pub fn all() -> Vec<(&'static str, &'static str)> {
    vec![
        ("discrete3.json", DISCRETE3),
        ("rational4.json", RATIONAL4),
        ("pseudo2.json", PSEUDO2),
        ("word_a.json", WORD_A),
        ("word_2a_minus_b.json", WORD_2A_MINUS_B),
        ("word_zero.json", WORD_ZERO),
        ("lincomb_half_a.json", LINCOMB_HALF_A),
        ("angle_quarter.json", ANGLE_QUARTER),
        ("angle_sqrt2.json", ANGLE_SQRT2),
        ("target_half.json", TARGET_HALF),
        ("embed_model.json", EMBED_MODEL),
    ]
}

pub fn spaces() -> Result<Vec<(&'static str, PointedSpace)>> {
    let mut out = Vec::new();
    for (name, text) in [
        ("discrete3", DISCRETE3),
        ("rational4", RATIONAL4),
        ("pseudo2", PSEUDO2),
    ] {
        let dto: SpaceDto = parse_json(text)?;
        out.push((name, dto.to_space()?));
    }
    Ok(out)
}

pub fn embed_model() -> Result<AmbientModel> {
    let dto: ModelDto = parse_json(EMBED_MODEL)?;
    dto.to_model()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse_and_validate() {
        let spaces = spaces().unwrap();
        assert_eq!(spaces.len(), 3);
        for (_, s) in &spaces {
            assert!(s.validate().is_ok());
        }
        let model = embed_model().unwrap();
        assert_eq!(model.e_dim, 2);
        assert_eq!(model.m_max(), 3);
        assert!(model.metric_axioms_hold());
    }
}
