//! Exact computations on finite lattices, their order complexes and their
//! geometric realizations, centred on the book lattices `M_{d,n}`.

pub mod audit;
pub mod cli;
pub mod complex;
pub mod error;
pub mod export;
pub mod json;
pub mod lattice;
pub mod rational;
pub mod realization;

pub use complex::{book_anatomy, order_complex, BookAnatomy, RidgeReport, SimplicialComplex};
pub use error::{Error, Result};
pub use lattice::{ElementRef, FiniteLattice, Law, SublatticeKind, SublatticeWitness, TripleWitness};
pub use rational::Rational;
pub use realization::{
    join_points, level_generator, meet_points, phi, sample_point, sup_distance, to_barycentric, to_function,
    BarycentricForm, LevelProfile, RealizationPoint,
};
