pub mod antipode;
pub mod classify;
pub mod compose;
pub mod family;
pub mod ground;
pub mod sum;

pub use antipode::{takeuchi_antipode, takeuchi_antipode_by_enumeration, takeuchi_antipode_linear, takeuchi_antipode_with};
pub use classify::{classify_family, FamilyClasses};
pub use compose::{
    compositions_of, enumerate_compositions, enumerate_partitions, partitions_of, SetComposition, SetPartition,
};
pub use family::GroundedSetFamily;
pub use ground::{GroundSet, Label, SubsetMask};
pub use sum::FormalSum;
