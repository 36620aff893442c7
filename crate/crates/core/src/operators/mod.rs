//! Finite-difference operator calculus and the operator-form evaluators.

mod dsl;
mod expr;
mod lemmas;
mod summation;
mod theorems;

pub use dsl::parse_operator_expr;
pub use expr::{apply_operator, OperatorExpr};
pub use lemmas::{
    app_sum_even_sides, app_sum_odd_sides, binomial_det_poly, sum_op_alt_sides, sum_op_normal_sides, LemmaSides,
};
pub use summation::{q_sum, q_sum_with, SumSpec, SumVariant};
pub use theorems::{
    hmt_pq_genfun, qhmt_genfun, qhmt_operand, qhmt_operator, qhmt_operator_factors, qhtree_genfun,
    vsast_column_choices, vsast_pq_genfun_op, vsast_pqc_genfun_op, vsast_qc_genfun, BParam, HmtOperatorForm,
    MAX_SYMBOLIC_VARS,
};
