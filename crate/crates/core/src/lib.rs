//! Filtered spaces of Jacobi diagrams on `n` arcs, the free-group actions on
//! them, and their associated graded spaces of colored open diagrams.

pub mod diagrams;
pub mod exactlin;
pub mod spaces;
pub mod freegroup;
pub mod actions;
pub mod decomp;
pub mod bracket;
