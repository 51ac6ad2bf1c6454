//! Library half of the amorph CLI: input loading, the generator registry,
//! the default catalog, the verify-paper check battery, and the JSON
//! report schema. The binary in main.rs is a thin dispatcher over these.

pub mod battery;
pub mod catalog;
pub mod genreg;
pub mod input;
pub mod report;
