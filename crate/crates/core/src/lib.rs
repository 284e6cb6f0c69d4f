//! Matroid computation with the lattice of cyclic flats as the native
//! representation.
//!
//! A matroid is stored as its cyclic flats and their ranks; everything
//! else (rank of arbitrary sets, closures, circuits, flats, minors) is
//! derived from that presentation. On top of the kernel sit:
//!
//! * [`axioms`] — the validator for candidate presentations;
//! * [`modcuts`] — modular pairs and cuts, single-element and principal
//!   extensions, and minimal modular cuts (forced closures);
//! * [`linear`] — column matroids of exact matrices over ℚ and GF(p),
//!   including projective geometries;
//! * [`constructions`] — named builders: uniform matroids, the Vámos
//!   matroid, the disjoint-hyperplane and line-hyperplane extensions,
//!   and the rank-5 intersection-property example;
//! * [`properties`] — the bundle condition and the intersection
//!   property;
//! * [`amalgam`] — amalgam search and non-stickiness certificates;
//! * [`io`] — the JSON file formats and machine-readable reports;
//! * [`verify`] — the built-in verification suite behind
//!   `matroid paper-verify`.

pub mod amalgam;
pub mod axioms;
pub mod constructions;
pub mod error;
pub mod io;
pub mod kernel;
pub mod linear;
pub mod modcuts;
pub mod properties;
pub mod verify;

pub use error::{Error, Result};
pub use kernel::{CyclicFlatPresentation, ElementSet, GroundSet, Matroid};
