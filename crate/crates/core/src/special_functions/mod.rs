//! Jacobi polynomials with arbitrary real parameters and their zero counts.

mod jacobi;
mod zeros;

pub use jacobi::{
    generalized_binomial, jacobi_derivative, jacobi_eval, jacobi_second_derivative, JacobiSpec,
};
pub use zeros::{
    brute_force_zero_count, count_zeros, is_admissible, is_nodeless, rule_1_nodeless,
    rule_2_nodeless, scan_points, staircase, zero_count_inputs, Interval, ZeroCountInputs,
    INTEGER_TOLERANCE, MOBIUS_MARGIN,
};
