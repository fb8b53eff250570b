//! Coulomb branch side: simple-class labels, exchange relations, the registry
//! of fitted classes, and the verification suites built on them.

pub mod checks;
pub mod duality;
pub mod gl1;
pub mod gln;
pub mod labels;
pub mod registry;
pub mod relations;
pub mod suites;

pub use checks::{inventory_against_registry, leclerc_shadow, positivity, InventoryReport, PositivityReport};
pub use duality::{dual_label, verify_twist_duality, DualityReport, TwistCheck};
pub use gl1::{fit_gl1_convention, gl1_registry, initial_seed_gl1, verify_gl1, Gl1Convention};
pub use gln::{gln_neighbourhood_suite, initial_seed_gln};
pub use labels::SimpleLabel;
pub use registry::{
    build_registry, build_registry_from, fit_loop_shift, initial_commutations, initial_seed_gl2, FitRole,
    LabeledWalk, Normalization, SimpleClassRegistry,
};
pub use relations::{RelationInstance, RelationKind, Suite, Term};
pub use suites::{verify_relations, InstanceReport, Status, SuiteReport};
