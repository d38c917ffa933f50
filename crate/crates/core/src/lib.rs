//! Independence complexes, monomial ideals and graphs: constructions
//! (grafting, whiskering, coloured whiskering, polarization, generalized
//! Bier complexes) and deciders for the properties between purity and
//! being a simplicial ball or sphere.

pub mod checks;
pub mod cli;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod face;
pub mod graphs;
pub mod ideals;
pub mod io;
pub mod suite;

pub use checks::{CheckConfig, CheckReport, Field, Property, Topology, Verdict};
pub use complex::SimplicialComplex;
pub use constructions::{Colouring, GraftCertificate};
pub use error::{Error, Result};
pub use face::Face;
pub use graphs::Graph;
pub use ideals::MonomialIdeal;
