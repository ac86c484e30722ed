pub mod algebra;
pub mod brieskorn;
pub mod cli;
pub mod criteria;
pub mod groebner;
pub mod lattice;
pub mod linalg;
