//! Virtual knots and links as signed Gauss codes.
//!
//! The library represents diagrams of virtual links by their multi-component
//! signed Gauss codes, reconstructs the canonical surface supporting each
//! diagram, classifies corks and diagrams, performs the composition and
//! doubling constructions, and computes hyperbolic-volume lower bounds for
//! compositions from a bundled table of constants.

pub mod analysis;
pub mod carter;
pub mod compose;
pub mod gauss;
pub mod volume;

pub use carter::{carter_genus, classify_cork, trace_faces, CarterSurface, CorkClassification};
pub use gauss::{parse, Arc, Cork, CrossingLabel, Passage, Sign, Triple, VirtualLinkDiagram};
