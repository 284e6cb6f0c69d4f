//! Ground sets, element sets, cyclic-flat presentations, and the
//! matroid rank oracle with its derived queries.

mod flats;
mod ground;
mod matroid;
mod presentation;

pub use ground::{ElementSet, GroundSet, MAX_ELEMENTS};
pub use matroid::{presentation_from_rank_fn, Matroid};
pub use presentation::CyclicFlatPresentation;

