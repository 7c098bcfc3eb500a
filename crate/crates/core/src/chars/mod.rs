//! Characters with values in `Z[zeta_p]`: the characters `xi` of the
//! subgroups `E + p`, induction, the orbit character formula, inner products
//! and the decomposition of `V(lambda)`.

mod decompose;
mod function;
mod induce;
mod orbitchar;

pub use decompose::{
    character_formula_agreement, check_independence_off_pi, component_entry, counting_dimension_identity, decompose,
    expected_component_count, induced_characters_equal, multiplicity_frobenius, polarization_independence,
    translated_polarization_check, weight_shift, weight_vector_check, ComponentEntry, DecompositionReport,
    InducedModule,
};
pub use function::{
    inner_product, is_homomorphism, rational_to_integer, trivial, xi_exponents, xi_from_form, xi_on_subgroup,
    GroupFunction, Subgroup, ZetaSum,
};
pub use induce::{induce_character, induce_from_exponents, ConjugacyClasses};
pub use orbitchar::{orbit_character, orbit_character_on, orbit_sqrt};
