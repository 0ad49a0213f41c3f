//! Permutation actions, pair orbits and group averaging.

mod action;
mod orbits;
mod perm;
mod spec;

pub use action::{
    make_boolean, make_cyclic, make_dihedral, make_dihedral_on_m, make_dyadic_wreath,
    make_hybrid, make_product, make_trivial, make_wreath, GroupAction, GroupKind, NodeKind,
    MAX_COMPOSITE_DEGREE,
};
pub use orbits::{
    closure_enumerate, is_invariant, pair_orbits, permutation_commutator_norm, reynolds_project,
    Closure, PairOrbitPartition, DEFAULT_CLOSURE_CAP,
};
pub use perm::Permutation;
pub use spec::{parse_group_spec, parse_permutation_list, SPEC_FORMS};
