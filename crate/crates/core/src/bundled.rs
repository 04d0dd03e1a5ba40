//! Models shipped with the crate.

use crate::model::ToricVarietyModel;

/// `(name, JSON document)` for every bundled model.
pub const DOCUMENTS: &[(&str, &str)] = &[
    ("P2", include_str!("../models/P2.json")),
    ("P1xP1", include_str!("../models/P1xP1.json")),
    ("P1xP1xP1", include_str!("../models/P1xP1xP1.json")),
    ("F1", include_str!("../models/F1.json")),
    ("dP3", include_str!("../models/dP3.json")),
];

/// Parse a bundled model by name.
pub fn model(name: &str) -> Option<ToricVarietyModel> {
    DOCUMENTS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, doc)| ToricVarietyModel::parse(doc).expect("bundled model is valid"))
}

/// All bundled models, in [`DOCUMENTS`] order.
pub fn all() -> Vec<(&'static str, ToricVarietyModel)> {
    DOCUMENTS
        .iter()
        .map(|(n, doc)| (*n, ToricVarietyModel::parse(doc).expect("bundled model is valid")))
        .collect()
}
