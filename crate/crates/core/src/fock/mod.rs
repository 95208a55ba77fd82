//! Fock-space classes in the fixed-point basis and the operator calculus.

mod bases;
mod class;
mod operator;
mod space;

pub use bases::{
    basis_matrix, classical_projection, es_class, lehn_diagnostic, nak_class, nak_es_classes, Basis, BasisMatrix,
    LehnReport,
};
pub use class::FockClass;
pub use operator::{base_change_expansion, Expansion, OpExpr, Operator};
pub use space::{
    tableau_coefficient, tableau_coefficient_closed, Block, FockSpace, Truncation, DEFAULT_MAX_WEIGHT, MAX_WEIGHT_CAP,
};
