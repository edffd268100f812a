pub mod error;
pub mod instances;
pub mod order;
pub mod parse;
pub mod sequences;
pub mod laws;
pub mod registry;
pub mod norms;
pub mod theorems;
pub mod cli;
