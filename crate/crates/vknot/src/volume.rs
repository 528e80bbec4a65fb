//! Tabulated volume constants and the lower bounds they give for
//! compositions.
//!
//! Volumes of knot complements in thickened surfaces come from geometric
//! software and are shipped here as data, never computed. Each table entry
//! records, for one knot with one chosen cork, the constants its doubles
//! contribute to composition bounds.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{tg_certificate, Verdict};
use crate::carter::CorkClassification;
use crate::gauss::Triple;

/// Volume of the regular ideal hyperbolic tetrahedron, to full f64 precision.
/// An n-cusped finite-volume hyperbolic 3-manifold has volume at least n
/// times this.
pub const V3: f64 = 1.014_941_606_409_653_6;

/// Returns the ideal regular tetrahedron volume.
pub fn tet_volume_constant() -> f64 {
    V3
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorkKind {
    Singular,
    Nonsingular,
}

/// One row of the volume table: constants for a knot with a chosen cork.
///
/// `vol_ns` is half the volume of the nonsingular cork double, `vol_s` half
/// the volume of the singular cork double, and `quarter_double_vol` a quarter
/// of the volume of the doubled nonsingular double with its essential torus
/// removed. Absent fields are unknown.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VolumeEntry {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vol_ns: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vol_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quarter_double_vol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cork_kind: Option<CorkKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<i64>,
}

/// Which bound rule produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    /// Both corks nonsingular: sum of the nonsingular composite volumes.
    Thm4_1,
    /// Both corks singular, genera both 1 or both >= 2: sum of the singular
    /// composite volumes.
    Thm4_2,
    /// Both corks singular, both genus 1: the bound is exact and equals the
    /// sum of the knot volumes.
    Cor4_3,
    /// One singular, one nonsingular cork: quarter-double constant plus the
    /// nonsingular composite volume.
    Thm4_4,
    /// Cusp count times the ideal tetrahedron volume.
    CuspBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HypothesisStatus {
    /// Checked against the data or diagrams at hand.
    Verified,
    /// Required by the bound but not decidable here; recorded as assumed.
    Assumed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub status: HypothesisStatus,
    pub detail: String,
}

/// A theorem-tagged lower bound for the volume of a composition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub theorem: Theorem,
    pub lower_bound: f64,
    /// True only for the genus-one singular pairing, where the bound is the
    /// volume itself.
    pub exact: bool,
    pub hypotheses: Vec<Hypothesis>,
    pub inputs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VolumeError {
    #[error("FormatError: {0}")]
    Format(String),
    #[error("NegativeVolume: entry {id} field {field} must be positive")]
    NegativeVolume { id: String, field: &'static str },
    #[error("MissingField: entry {id} lacks {field}")]
    MissingField { id: String, field: &'static str },
    #[error("MixedGenusUnsupported: singular pairing of genus {genus1} with genus {genus2}")]
    MixedGenusUnsupported { genus1: i64, genus2: i64 },
    #[error("ZeroCusps: the cusp bound needs at least one cusp")]
    ZeroCusps,
}

const BUILTIN_TABLE: &str = include_str!("../data/volume_table.json");

/// Parses a volume table from JSON text.
pub fn parse_table(text: &str) -> Result<Vec<VolumeEntry>, VolumeError> {
    let entries: Vec<VolumeEntry> =
        serde_json::from_str(text).map_err(|e| VolumeError::Format(e.to_string()))?;
    for entry in &entries {
        for (field, value) in [
            ("vol", entry.vol),
            ("vol_ns", entry.vol_ns),
            ("vol_s", entry.vol_s),
            ("quarter_double_vol", entry.quarter_double_vol),
        ] {
            if let Some(v) = value {
                if !v.is_finite() || v <= 0.0 {
                    return Err(VolumeError::NegativeVolume {
                        id: entry.id.clone(),
                        field,
                    });
                }
            }
        }
    }
    Ok(entries)
}

/// The table shipped with the library.
pub fn builtin_table() -> Vec<VolumeEntry> {
    parse_table(BUILTIN_TABLE).expect("builtin table is well-formed")
}

/// Looks up an entry by id.
pub fn find_entry<'a>(table: &'a [VolumeEntry], id: &str) -> Option<&'a VolumeEntry> {
    table.iter().find(|e| e.id == id)
}

fn require(entry: &VolumeEntry, field: &'static str, value: Option<f64>) -> Result<f64, VolumeError> {
    value.ok_or_else(|| VolumeError::MissingField {
        id: entry.id.clone(),
        field,
    })
}

fn genus_of(entry: &VolumeEntry) -> Result<i64, VolumeError> {
    entry.genus.ok_or_else(|| VolumeError::MissingField {
        id: entry.id.clone(),
        field: "genus",
    })
}

fn verified(name: &str, detail: String) -> Hypothesis {
    Hypothesis {
        name: name.to_string(),
        status: HypothesisStatus::Verified,
        detail,
    }
}

fn assumed(name: &str, detail: String) -> Hypothesis {
    Hypothesis {
        name: name.to_string(),
        status: HypothesisStatus::Assumed,
        detail,
    }
}

/// Lower bound for a composition through two nonsingular corks: the sum of
/// the nonsingular composite volumes.
pub fn bound_nonsingular(e1: &VolumeEntry, e2: &VolumeEntry) -> Result<BoundReport, VolumeError> {
    let v1 = require(e1, "vol_ns", e1.vol_ns)?;
    let v2 = require(e2, "vol_ns", e2.vol_ns)?;
    Ok(BoundReport {
        theorem: Theorem::Thm4_1,
        lower_bound: v1 + v2,
        exact: false,
        hypotheses: vec![assumed(
            "hyperbolically_composable",
            "both triples admit a tg-hyperbolic nonsingular composition partner".to_string(),
        )],
        inputs: vec![e1.id.clone(), e2.id.clone()],
    })
}

/// Lower bound for a composition through two singular corks. Requires the
/// genera both 1 or both at least 2. When both are 1 the bound is exact: the
/// composition's volume is the sum of the knot volumes.
pub fn bound_singular(e1: &VolumeEntry, e2: &VolumeEntry) -> Result<BoundReport, VolumeError> {
    let g1 = genus_of(e1)?;
    let g2 = genus_of(e2)?;
    if (g1 == 1) != (g2 == 1) {
        return Err(VolumeError::MixedGenusUnsupported {
            genus1: g1,
            genus2: g2,
        });
    }
    let genus_hypothesis = verified(
        "genus_compatible",
        format!("genera {g1} and {g2} are both one or both at least two"),
    );
    if g1 == 1 && g2 == 1 {
        let v1 = require(e1, "vol", e1.vol)?;
        let v2 = require(e2, "vol", e2.vol)?;
        return Ok(BoundReport {
            theorem: Theorem::Cor4_3,
            lower_bound: v1 + v2,
            exact: true,
            hypotheses: vec![genus_hypothesis],
            inputs: vec![e1.id.clone(), e2.id.clone()],
        });
    }
    let v1 = require(e1, "vol_s", e1.vol_s)?;
    let v2 = require(e2, "vol_s", e2.vol_s)?;
    Ok(BoundReport {
        theorem: Theorem::Thm4_2,
        lower_bound: v1 + v2,
        exact: false,
        hypotheses: vec![genus_hypothesis],
        inputs: vec![e1.id.clone(), e2.id.clone()],
    })
}

/// Lower bound for a nonsingular composition where the first cork is
/// singular and the second triple is hyperbolically composable.
pub fn bound_mixed(
    singular_entry: &VolumeEntry,
    nonsingular_entry: &VolumeEntry,
) -> Result<BoundReport, VolumeError> {
    let q = require(
        singular_entry,
        "quarter_double_vol",
        singular_entry.quarter_double_vol,
    )?;
    let v = require(nonsingular_entry, "vol_ns", nonsingular_entry.vol_ns)?;
    Ok(BoundReport {
        theorem: Theorem::Thm4_4,
        lower_bound: q + v,
        exact: false,
        hypotheses: vec![assumed(
            "hyperbolically_composable",
            "the nonsingular-cork factor admits a tg-hyperbolic composition partner".to_string(),
        )],
        inputs: vec![singular_entry.id.clone(), nonsingular_entry.id.clone()],
    })
}

/// Volume lower bound for an n-cusped hyperbolic manifold.
pub fn cusp_lower_bound(n: usize) -> Result<f64, VolumeError> {
    if n == 0 {
        return Err(VolumeError::ZeroCusps);
    }
    Ok(n as f64 * V3)
}

/// The cusp-count bound as a report.
pub fn cusp_bound_report(cusps: usize, detail: &str) -> Result<BoundReport, VolumeError> {
    let lower_bound = cusp_lower_bound(cusps)?;
    Ok(BoundReport {
        theorem: Theorem::CuspBound,
        lower_bound,
        exact: false,
        hypotheses: vec![assumed(
            "cusp_count",
            format!("the complement is hyperbolic with at least {cusps} cusps ({detail})"),
        )],
        inputs: vec![],
    })
}

/// Dispatches on the corks' kinds: both singular, exactly one singular, or
/// none. The entries' recorded kinds drive the dispatch; the hypotheses list
/// records them alongside genus checks.
pub fn bound_report_entries(
    e1: &VolumeEntry,
    e2: &VolumeEntry,
) -> Result<BoundReport, VolumeError> {
    let k1 = e1.cork_kind.ok_or_else(|| VolumeError::MissingField {
        id: e1.id.clone(),
        field: "cork_kind",
    })?;
    let k2 = e2.cork_kind.ok_or_else(|| VolumeError::MissingField {
        id: e2.id.clone(),
        field: "cork_kind",
    })?;
    let mut report = match (k1, k2) {
        (CorkKind::Singular, CorkKind::Singular) => bound_singular(e1, e2),
        (CorkKind::Singular, CorkKind::Nonsingular) => bound_mixed(e1, e2),
        (CorkKind::Nonsingular, CorkKind::Singular) => bound_mixed(e2, e1),
        (CorkKind::Nonsingular, CorkKind::Nonsingular) => bound_nonsingular(e1, e2),
    }?;
    report.hypotheses.insert(
        0,
        verified(
            "cork_kinds",
            format!("table records {:?} and {:?} corks", k1, k2),
        ),
    );
    Ok(report)
}

/// As [`bound_report_entries`], but with the composed triples at hand: the
/// diagram-level cork classifications and genera are cross-checked against
/// the table data, and the composability assumption is discharged when a
/// factor carries the certificate at an alternating cork.
pub fn bound_report(
    t1: &Triple,
    e1: &VolumeEntry,
    t2: &Triple,
    e2: &VolumeEntry,
) -> Result<BoundReport, VolumeError> {
    let mut report = bound_report_entries(e1, e2)?;
    for (triple, entry) in [(t1, e1), (t2, e2)] {
        let diagram_kind = match triple.classify_cork() {
            Ok(CorkClassification::Singular(_)) => Some(CorkKind::Singular),
            Ok(CorkClassification::NonsingularAtDiagram) => Some(CorkKind::Nonsingular),
            Err(_) => None,
        };
        let name = format!("diagram_cork[{}]", entry.id);
        match (diagram_kind, entry.cork_kind) {
            (Some(dk), Some(tk)) if dk == tk => {
                report
                    .hypotheses
                    .push(verified(&name, format!("diagram classification matches {tk:?}")));
            }
            (Some(dk), Some(tk)) => {
                report.hypotheses.push(assumed(
                    &name,
                    format!("diagram classifies {dk:?} but the table records {tk:?}"),
                ));
            }
            _ => {
                report.hypotheses.push(assumed(
                    &name,
                    "diagram-level cork classification unavailable".to_string(),
                ));
            }
        }
        if let (Some(genus), Ok(declared)) = (entry.genus, i64::try_from(triple.declared_genus)) {
            if genus != declared {
                report.hypotheses.push(assumed(
                    &format!("genus[{}]", entry.id),
                    format!("declared genus {declared} differs from table genus {genus}"),
                ));
            }
        }
        let composable = matches!(
            tg_certificate(&triple.diagram).map(|c| c.verdict),
            Ok(Verdict::CertifiedTgHyperbolic)
        );
        if composable {
            report.hypotheses.push(verified(
                &format!("certificate[{}]", entry.id),
                "certified alternating, so every cork of this diagram composes hyperbolically"
                    .to_string(),
            ));
        }
    }
    Ok(report)
}
