//! Exact integer and Dirichlet-character arithmetic: unit groups, character
//! tables, conductors, Kronecker symbols, fundamental discriminants, and
//! smoothness statistics.

pub mod character;
pub mod discriminant;
pub mod factor;
pub mod kronecker;
pub mod smooth;
pub mod unit_group;

pub use character::{primitive_character_count, CharacterTable, DirichletCharacter};
pub use discriminant::{
    fundamental_discriminants, is_fundamental_discriminant, quadratic_character,
};
pub use factor::{divisors, euler_phi, factorize};
pub use kronecker::kronecker;
pub use smooth::{chang_f, FactoredInteger, SmoothnessProfile};
pub use unit_group::{unit_group_structure, UnitGenerator};
