//! Spacefile front end: document model, parser, evaluator, exporters, and
//! the bundled reproduction suite.

pub mod doc;
pub mod export;
pub mod parse;
pub mod run;
pub mod suite;
