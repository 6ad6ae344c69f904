//! Report structures and rendering. JSON is the default format (pretty,
//! with stable field order), CSV serves the streaming outputs. Every report
//! embeds the full resolved configuration, seed included, so identical
//! invocations produce byte-identical output.

use std::collections::BTreeMap;

use serde::Serialize;
use twistlab_core::localred::{Admissibility, PlaceData, Reduction};

/// Resolved invocation parameters; embedded in every report.
#[derive(Serialize, Clone, Debug, Default)]
pub struct Config {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deg_bound: Option<u64>,
    pub classes: bool,
    pub format: String,
    pub seed: u64,
    pub threads: u64,
}

#[derive(Serialize, Clone, Debug)]
pub struct PlaceDataDto {
    pub place: String,
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kodaira: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<bool>,
    pub tamagawa: u64,
    pub v_delta: u32,
}

impl PlaceDataDto {
    pub fn from_core(data: &PlaceData) -> PlaceDataDto {
        let (kind, kodaira, split) = match &data.reduction {
            Reduction::Good => ("good".to_string(), None, None),
            Reduction::Multiplicative { split, n } => (
                "multiplicative".to_string(),
                Some(format!("I{n}")),
                Some(*split),
            ),
            Reduction::Additive { kodaira } => {
                ("additive".to_string(), Some(format!("{kodaira}")), None)
            }
        };
        PlaceDataDto {
            place: format!("{}", data.place),
            kind,
            kodaira,
            split,
            tamagawa: data.tamagawa,
            v_delta: data.v_delta_min,
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct AdmissibilityDto {
    pub admissible: bool,
    pub reasons: Vec<String>,
}

impl AdmissibilityDto {
    pub fn from_core(adm: &Admissibility) -> AdmissibilityDto {
        AdmissibilityDto {
            admissible: adm.admissible,
            reasons: adm.reasons.iter().map(|r| format!("{r}")).collect(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct SelmerDto {
    pub dimension: u64,
    pub rigorous: bool,
}

#[derive(Serialize, Debug)]
pub struct MinimalTwistDto {
    pub twister: String,
    pub model: String,
    pub height: u64,
}

#[derive(Serialize, Debug)]
pub struct CurveAnalyzeReport {
    pub config: Config,
    pub curve: String,
    pub discriminant: String,
    pub j_numerator: String,
    pub j_denominator: String,
    pub nonisotrivial: bool,
    pub height: u64,
    pub minimal_twist: MinimalTwistDto,
    pub places: Vec<PlaceDataDto>,
    pub deg_m: u64,
    pub deg_a: u64,
    pub has_multiplicative_away_from_infinity: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selmer: Option<SelmerDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub admissibility: Option<AdmissibilityDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selmer_size_bound_exponent: Option<u64>,
}

#[derive(Serialize, Debug)]
pub struct PlaceDeltaDto {
    pub place: String,
    pub before: Option<PlaceDataDto>,
    pub after: Option<PlaceDataDto>,
}

#[derive(Serialize, Debug)]
pub struct TwistReport {
    pub config: Config,
    pub base: String,
    pub twister: String,
    pub normalized_model: String,
    pub scaling_witness: String,
    pub naive_model_a: String,
    pub naive_model_b: String,
    pub height: u64,
    pub local_deltas: Vec<PlaceDeltaDto>,
}

#[derive(Serialize, Debug)]
pub struct FamilyMemberDto {
    pub f: String,
    pub degree: u64,
    pub a: u8,
    pub j: String,
    pub g_degree: u64,
    pub height: u64,
    pub model_a: String,
    pub model_b: String,
}

#[derive(Serialize, Debug)]
pub struct FamilyEnumerateReport {
    pub config: Config,
    pub mode: String,
    pub members: Vec<FamilyMemberDto>,
}

#[derive(Serialize, Debug)]
pub struct StatsRowDto {
    pub f: String,
    pub degree: u64,
    pub a: u8,
    pub j: String,
    pub g_degree: u64,
    pub height: u64,
    pub deg_m: u64,
    pub deg_a: u64,
    pub selmer_dim: u64,
}

#[derive(Serialize, Debug)]
pub struct FamilyStatsReport {
    pub config: Config,
    pub mode: String,
    pub admissibility: AdmissibilityDto,
    pub family_size: u64,
    pub histogram: BTreeMap<u64, u64>,
    pub reference_average: u64,
    pub reference_label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_exponent: Option<u64>,
    pub rows: Vec<StatsRowDto>,
}

#[derive(Serialize, Debug)]
pub struct CountFnReport {
    pub config: Config,
    pub exact: u128,
    pub leading_term: u128,
}

#[derive(Serialize, Debug)]
pub struct OrbitBlockDto {
    pub label: String,
    pub size: u64,
    pub representative: Vec<u64>,
}

#[derive(Serialize, Debug)]
pub struct OrbitsReport {
    pub config: Config,
    pub p: u64,
    pub d: u64,
    pub gram: Vec<Vec<u64>>,
    pub group: String,
    pub orbit_count: u64,
    pub block_sizes: Vec<u64>,
    pub blocks: Vec<OrbitBlockDto>,
    pub certainty: String,
}

#[derive(Serialize, Debug)]
pub struct CommutatorMatrixReport {
    pub config: Config,
    pub p: u64,
    pub psi: Vec<Vec<u64>>,
    pub phi: Vec<Vec<u64>>,
    pub commutator: Vec<Vec<u64>>,
    pub involutions_ok: bool,
    pub gram_preserved: bool,
    pub matches_expected: bool,
    pub maps_v_to_w: bool,
    pub all_ok: bool,
}

#[derive(Serialize, Debug)]
pub struct BuiltinFamilyReport {
    pub config: Config,
    pub pi1: String,
    pub pi2: String,
    pub curve: String,
    pub discriminant: String,
    pub disc_identity_certified: bool,
    pub no_finite_multiplicative_certified: bool,
    pub own_minimal_twist_certified: bool,
}

#[derive(Serialize, Debug)]
pub struct VerifySummary {
    pub config: Config,
    pub passed: u64,
    pub failed: u64,
    pub criteria: Vec<VerifyCriterionDto>,
}

#[derive(Serialize, Debug)]
pub struct VerifyCriterionDto {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// CSV with a header row; fields contain no commas by construction.
pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
