//! Named examples: group algebras, truncated polynomial rings, quantum complete
//! intersections, pointwise counterexamples and the demo catalog.

mod algebras;
mod demos;
mod examples;
mod groups;
mod qci;

pub use algebras::{
    algebra_from_products, coalgebra_from_rule, group_algebra, group_space, truncated_polynomial, truncated_space,
    GroupAlgebra, TruncatedPolynomial,
};
pub use demos::{
    demo_catalog, frobenius_roundtrip, group_algebra_match, qci_closed_form_pairing, run_demo, DemoCheck, DemoEntry,
    DemoOutcome, DemoParams,
};
pub use examples::{
    c2_c2_symmetric, comultiplication_hexagon_paths, inversion_action_example, jordan_probe, jordan_twist,
    obstruction_example, quantum_borel, quantum_borel_probe, seed_columns, seed_with_units, semidirect_product,
    sixth_root_lambda_twist, skew_group_twist, tensor_product_multiply, validate_action, weyl_probe, weyl_twist, PointwiseExample,
    SkewGroupExample, SymmetricC2C2,
};
pub use groups::{cyclic_group, cyclic_group_named, dihedral_group, direct_product, symmetric_group_3, FiniteGroup};
pub use qci::{
    default_variables, degree_condition, quantum_complete_intersection, same_algebra, uniform_q, validate_q,
    QuantumCompleteIntersection,
};
