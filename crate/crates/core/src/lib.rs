pub mod scalar;
pub mod linalg;
pub mod exterior;
pub mod model;
pub mod dsl;
pub mod complex;
pub mod cohomology;
pub mod invariants;
pub mod diamond;
pub mod corpus;
pub mod io;
pub mod cli;
