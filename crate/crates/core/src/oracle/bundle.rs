//! Oracle transcriptions shipped with the crate.

use serde::Serialize;

use super::{parse_oracle, OracleDocument};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Completeness {
    Complete,
    Partial,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BundleEntry {
    pub name: &'static str,
    #[serde(skip)]
    pub text: &'static str,
    pub completeness: Completeness,
    pub note: &'static str,
}

const BUNDLE: &[BundleEntry] = &[
    BundleEntry {
        name: "white-b4",
        text: include_str!("../../data/white-b4.gdo"),
        completeness: Completeness::Complete,
        note: "White's strategy after 1.b4, every Black reply covered.",
    },
    BundleEntry {
        name: "black-b4",
        text: include_str!("../../data/black-b4.gdo"),
        completeness: Completeness::Complete,
        note: "Black's answer to 1.b4; one distance is marked doubtful in the source and kept unverified.",
    },
    BundleEntry {
        name: "black-c4",
        text: include_str!("../../data/black-c4.gdo"),
        completeness: Completeness::Complete,
        note: "Black's answer to 1.c4.",
    },
    BundleEntry {
        name: "black-nb4",
        text: include_str!("../../data/black-nb4.gdo"),
        completeness: Completeness::Complete,
        note: "Black's answer to 1.Nb4.",
    },
    BundleEntry {
        name: "black-nd4",
        text: include_str!("../../data/black-nd4.gdo"),
        completeness: Completeness::Complete,
        note: "Black's answer to 1.Nd4.",
    },
    BundleEntry {
        name: "black-d4",
        text: include_str!("../../data/black-d4.gdo"),
        completeness: Completeness::Partial,
        note: "Black's answer to 1.d4; lines that do not replay were dropped and open lines are unverified.",
    },
    BundleEntry {
        name: "black-e4",
        text: include_str!("../../data/black-e4.gdo"),
        completeness: Completeness::Partial,
        note: "Black's answer to 1.e4; lines that do not replay were dropped and open lines are unverified.",
    },
    BundleEntry {
        name: "black-f4",
        text: include_str!("../../data/black-f4.gdo"),
        completeness: Completeness::Partial,
        note: "Black's answer to 1.f4; lines that do not replay were dropped and open lines are unverified.",
    },
    BundleEntry {
        name: "black-b4-aside",
        text: include_str!("../../data/black-b4-aside.gdo"),
        completeness: Completeness::Partial,
        note: "Analysis the source keeps disabled, below 1.b4 ... 6.Bxe5+ Qxe5; ends in an unverified distance.",
    },
];

pub fn bundled() -> &'static [BundleEntry] {
    BUNDLE
}

/// Parses a bundled document by name.
pub fn bundled_document(name: &str) -> Option<OracleDocument> {
    let entry = BUNDLE.iter().find(|e| e.name == name)?;
    Some(parse_oracle(entry.text).unwrap_or_else(|e| panic!("bundled {name}: {e}")))
}
