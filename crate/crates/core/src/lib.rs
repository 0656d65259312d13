pub mod claspers;
pub mod cli;
pub(crate) mod cursor;
pub mod diagrams;
pub mod error;
pub mod exec;
pub mod lattice;
pub mod laurent;
pub mod ltheta;
pub mod matrix;
pub mod seifert;
