//! The DefectOnt modules, embedded at build time.

use crate::dlo::{parse_module, SourceModule};
use crate::linker::{link, LinkError, Linked, LoadError};

/// Root module of the shipped ontology.
pub const ROOT: &str = "defectont";

/// `(module name, source text)` for every shipped module.
pub const MODULES: &[(&str, &str)] = &[
    ("nist", include_str!("../assets/nist.dlo")),
    ("onto4add", include_str!("../assets/onto4add.dlo")),
    ("geosparql", include_str!("../assets/geosparql.dlo")),
    ("mason", include_str!("../assets/mason.dlo")),
    ("spatial", include_str!("../assets/spatial.dlo")),
    ("measure", include_str!("../assets/measure.dlo")),
    ("sensor", include_str!("../assets/sensor.dlo")),
    ("mam", include_str!("../assets/mam.dlo")),
    ("sample_abox", include_str!("../assets/sample_abox.dlo")),
    ("defectont", include_str!("../assets/defectont.dlo")),
];

pub const INVENTORY: &str = include_str!("../assets/inventory.tsv");

pub fn source(name: &str) -> Option<&'static str> {
    MODULES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Loader for [`link`] backed by the embedded sources.
pub fn load(name: &str) -> Result<SourceModule, LoadError> {
    let text = source(name).ok_or(LoadError::NotFound)?;
    Ok(parse_module(text)?)
}

/// `root` and its imports, linked.
pub fn linked(root: &str) -> Result<Linked, LinkError> {
    link(root, load)
}

/// The full ontology with the sample facts.
pub fn defectont() -> Linked {
    linked(ROOT).expect("shipped modules link")
}

/// One row of the axiom inventory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InventoryRow {
    pub module: String,
    pub anchor: String,
    pub axiom: String,
    pub note: String,
}

pub fn inventory() -> Vec<InventoryRow> {
    INVENTORY
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut cols = l.splitn(4, '\t').map(str::to_string);
            let mut next = || cols.next().unwrap_or_default();
            InventoryRow { module: next(), anchor: next(), axiom: next(), note: next() }
        })
        .collect()
}
