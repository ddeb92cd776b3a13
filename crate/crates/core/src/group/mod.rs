//! Concrete group models with exact element arithmetic.
//!
//! Finite catalog groups (cyclic, dihedral, dicyclic, abelian, permutation,
//! multiplication tables) are enumerated in full. Infinite groups are
//! represented by windows: the vertex set is truncated, but order and
//! membership questions are answered for the whole group by arithmetic on
//! the element payloads.

mod element;
mod model;
mod perm;
mod spec;
mod table;

pub use element::{Branch, Element};
pub use model::{CyclicSubgroup, GroupModel};
pub use perm::{alternating_generators, symmetric_generators};
pub use spec::GroupSpec;
