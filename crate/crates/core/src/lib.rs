//! Description-logic toolkit for the DefectOnt metal additive manufacturing
//! defect ontology: a `.dlo` parser, a module linker, a tableau reasoner for
//! ALCHOI with nominals, competency-question queries and elimination-based
//! defect-source diagnosis.

pub mod assets;
pub mod diagnosis;
pub mod dlo;
pub mod linker;
pub mod measures;
pub mod model;
pub mod query;
pub mod reasoner;
