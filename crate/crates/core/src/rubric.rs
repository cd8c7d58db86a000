//! Drafting-complexity scoring of torus shading methods.
//!
//! A method earns a score from 1 (straightforward) to 5 (highly intricate):
//! one point for the base drawing set (plan plus elevation, or the single
//! view), one per additional drawing (sections, auxiliary projections), one
//! per angle calculation up to five, plus one for step counts of ten or
//! more. Anything over thirty steps is capped straight to 5.
//!
//! The shipped profile table records one consistent drawing/angle
//! assignment per published method; the published score travels with each
//! row so recomputation can be checked against it.

use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RubricError {
    #[error("row {row}: {message}")]
    Parse { row: usize, message: String },
    #[error("cannot read profiles: {0}")]
    Io(#[from] std::io::Error),
}

/// Inputs the rubric scores a method on.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodProfile {
    pub name: String,
    pub steps: u32,
    /// Drawings beyond the base plan+elevation (or single-view) set.
    pub extra_drawings: u32,
    /// Angle calculations the method requires.
    pub angles: u32,
    pub multiple_projection: bool,
    /// Score published alongside the method, when one exists.
    pub published_score: Option<u8>,
    pub citation: String,
}

/// Auto-cap threshold: more than this many steps scores 5 outright.
pub const AUTO_CAP_STEPS: u32 = 30;

/// Step count from which the step bonus point applies.
pub const STEP_BONUS_AT: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScoreBreakdown {
    /// The base drawing set always counts one point.
    pub base_point: u8,
    pub drawing_points: u32,
    /// Capped at five angles.
    pub angle_points: u32,
    pub step_bonus: u8,
    pub auto_capped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexityScore {
    /// Final score in 1..=5.
    pub value: u8,
    pub breakdown: ScoreBreakdown,
}

/// Scores a profile. Monotone in every count; the step auto-cap dominates.
pub fn score(profile: &MethodProfile) -> ComplexityScore {
    let auto_capped = profile.steps > AUTO_CAP_STEPS;
    let breakdown = ScoreBreakdown {
        base_point: 1,
        drawing_points: profile.extra_drawings,
        angle_points: profile.angles.min(5),
        step_bonus: u8::from(profile.steps >= STEP_BONUS_AT),
        auto_capped,
    };
    let value = if auto_capped {
        5
    } else {
        (1 + breakdown.drawing_points + breakdown.angle_points + breakdown.step_bonus as u32)
            .clamp(1, 5) as u8
    };
    ComplexityScore { value, breakdown }
}

/// Profile of the elevation-only construction this crate implements, from
/// its live step-log length: single view, no extra drawings, no angle
/// calculations.
pub fn proposed_profile(steps: usize) -> MethodProfile {
    MethodProfile {
        name: "Proposed elevation-only construction".to_string(),
        steps: steps as u32,
        extra_drawings: 0,
        angles: 0,
        multiple_projection: false,
        published_score: Some(2),
        citation: "this crate".to_string(),
    }
}

/// The shipped profile table.
pub const BUILTIN_PROFILES_CSV: &str = include_str!("../data/method_profiles.csv");

/// Parses profiles from CSV text with the header
/// `name,steps,extra_drawings,angles,multiple_projection,published_score,citation`.
pub fn parse_method_profiles(text: &str) -> Result<Vec<MethodProfile>, RubricError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let row = idx + 1;
        let record = record.map_err(|e| RubricError::Parse {
            row,
            message: e.to_string(),
        })?;
        if record.len() != 7 {
            return Err(RubricError::Parse {
                row,
                message: format!("expected 7 fields, got {}", record.len()),
            });
        }
        let field = |i: usize| record.get(i).unwrap_or("").trim();
        let int = |i: usize, what: &str| -> Result<u32, RubricError> {
            field(i).parse().map_err(|_| RubricError::Parse {
                row,
                message: format!("bad {what}: {:?}", field(i)),
            })
        };
        let multiple_projection = match field(4) {
            "yes" | "true" => true,
            "no" | "false" => false,
            other => {
                return Err(RubricError::Parse {
                    row,
                    message: format!("bad multiple_projection: {other:?}"),
                })
            }
        };
        let published_score = match field(5) {
            "" => None,
            s => Some(s.parse().map_err(|_| RubricError::Parse {
                row,
                message: format!("bad published_score: {s:?}"),
            })?),
        };
        out.push(MethodProfile {
            name: field(0).to_string(),
            steps: int(1, "steps")?,
            extra_drawings: int(2, "extra_drawings")?,
            angles: int(3, "angles")?,
            multiple_projection,
            published_score,
            citation: field(6).to_string(),
        });
    }
    Ok(out)
}

/// Loads profiles from a CSV file on disk.
pub fn load_method_profiles(path: &Path) -> Result<Vec<MethodProfile>, RubricError> {
    let text = std::fs::read_to_string(path)?;
    parse_method_profiles(&text)
}

/// The shipped table, which always parses.
pub fn builtin_profiles() -> Vec<MethodProfile> {
    parse_method_profiles(BUILTIN_PROFILES_CSV).expect("shipped profile table is well-formed")
}
