//! Built-in models, addressable on the command line as `corpus:NAME`.

use crate::dsl::{parse_model, DslError};
use crate::model::LieModel;

const MODELS: &[(&str, &str)] = &[
    ("iwasawa", include_str!("../models/iwasawa.lie")),
    ("h6", include_str!("../models/h6.lie")),
    ("h7", include_str!("../models/h7.lie")),
    ("torus1", include_str!("../models/torus1.lie")),
    ("torus2", include_str!("../models/torus2.lie")),
    ("torus3", include_str!("../models/torus3.lie")),
    ("kodaira_primary", include_str!("../models/kodaira_primary.lie")),
    ("heisenberg_mixed", include_str!("../models/heisenberg_mixed.lie")),
    ("heisenberg_balanced", include_str!("../models/heisenberg_balanced.lie")),
    ("heisenberg_gaussian", include_str!("../models/heisenberg_gaussian.lie")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    MODELS.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    MODELS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parses a corpus model. Panics only if a bundled file is malformed.
pub fn load(name: &str) -> Option<LieModel> {
    source(name).map(|s| parse_model(s).unwrap_or_else(|e: DslError| panic!("corpus model {name}: {e}")))
}

pub fn all() -> Vec<LieModel> {
    names().map(|n| load(n).unwrap()).collect()
}
