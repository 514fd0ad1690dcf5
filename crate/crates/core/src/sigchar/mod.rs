//! Formal characters and signature characters of Verma and irreducible modules.

mod alcove;
mod character;
mod irreducible;

pub use alcove::{
    alcove_along, alcove_key, alcove_of, chamber_of, crossing_path, generic_in_alcove, in_wallach_region,
    wallach_character, AlcoveDescriptor, AlcoveEngine, Crossing,
};
pub use character::FormalCharacter;
pub use irreducible::{ch_irreducible, ch_s_irreducible, ch_s_irreducible_chains, ch_verma, SignatureSolver};
