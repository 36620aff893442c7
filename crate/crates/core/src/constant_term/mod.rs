//! Constant-term evaluation of the generating-function integrands.

mod formula;
mod symmetrizer;

pub use formula::{
    ct_qhtree, ct_vsast_pq, ct_vsast_pq_odd, ct_vsast_pqc, ct_vsastriangle, qhtree_formula, vsast_pq_formula,
    vsast_pq_odd_formula, vsast_pqc_formula, vsastriangle_formula, CtFormula,
};
pub use symmetrizer::{
    qasym_sides, qasym_var_sides, signed_permutations, stanton_stembridge_sides, symmetrize, verify_qasym, verify_qasym_var, IdentityCheck,
    QasymPoint, SymMode,
};
