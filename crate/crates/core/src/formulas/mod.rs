//! Closed-form evaluations: binomial determinants, product formulas, path
//! determinants and symplectic characters.

mod det;
mod products;
mod qweight;
mod symplectic;

pub use det::{det_binom, det_binom_matrix_side, det_binom_product_side, det_rational};
pub use products::{
    hmt_det_closed, hmt_det_side, hmt_product, lgv_binomial_det, lgv_count, lgv_endpoints, two_enumeration,
    LgvEndpoints,
};
pub use qweight::{check_q_weight_shift, lai_q_weight, q_weight_exponent_shift, QShiftCheck};
pub use symplectic::{sp_all_ones, Partition, SpMethod};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}
