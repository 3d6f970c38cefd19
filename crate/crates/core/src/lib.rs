pub mod abelian;
pub mod brace;
pub mod cli;
pub mod constructions;
pub mod exec;
pub mod groups;
pub mod nilpotency;
pub mod ybe;
