//! Brute-force point counts over finite fields: matrix groups, conjugacy
//! classes, and surface-group homomorphism counts via commutator convolution.

mod classes;
mod field;
mod group;

pub use classes::{
    commutator_class_function, commutator_power, groupoid_count, hom_count, ClassAlgebra, ClassData, ClassFunction,
    Oracle, FULL_CONJUGATION_LIMIT,
};
pub use field::{is_irreducible, FqField, MAX_FIELD_SIZE};
pub use group::{group_order, GroupKind, GroupTable, DEFAULT_CAP};
