//! Finite-group arithmetic for translation-generated frame analysis:
//! groups given as products of cyclics or Cayley tables, abelian subgroups,
//! right-coset partitions with a canonical section, character tables of the
//! subgroup dual, annihilators inside the full dual, and complex signals
//! indexed by group elements.
//!
//! Everything here is immutable after construction and safe to share
//! across threads.

mod character;
mod coset;
mod error;
mod group;
mod signal;
mod subgroup;

pub use character::{Annihilator, CharacterTable};
pub use coset::CosetTable;
pub use error::{GroupError, Result};
pub use group::{symmetric_group_s3, Group, MAX_CAYLEY_ORDER, MAX_GROUP_ORDER};
pub use signal::{GeneratorFamily, Signal};
pub use subgroup::Subgroup;
