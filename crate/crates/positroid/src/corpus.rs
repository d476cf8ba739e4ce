//! Graphs shipped with the crate, addressable by name.

use crate::error::{Error, Result};
use crate::plabic::Plabic;

pub const BUNDLED: &[(&str, &str)] = &[
    ("gr37", include_str!("../corpus/gr37.plabic")),
    ("split59", include_str!("../corpus/split59.plabic")),
    ("single_edge", include_str!("../corpus/single_edge.plabic")),
    ("uniform24", include_str!("../corpus/uniform24.plabic")),
    ("uniform25", include_str!("../corpus/uniform25.plabic")),
    ("uniform35", include_str!("../corpus/uniform35.plabic")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn load(name: &str) -> Result<Plabic> {
    let text = source(name).ok_or_else(|| Error::Invalid(format!("no bundled graph named {}", name)))?;
    Plabic::parse(text)
}
