pub mod cli;
pub mod exterior;
pub mod invariants;
pub mod level;
pub mod linalg;
pub mod rings;
