//! Truncated p-adic arithmetic and finite-level q-Volkenborn integrals.

mod number;
mod volkenborn;

pub use number::{max_relative_precision, padic_exp, padic_log, valuation, Padic};
pub use volkenborn::{
    discrepancy_profile, log_spot_check, shift_rhs, integral_check, integral_limit,
    level_closed_form, verify_eq3, volkenborn_approx, volkenborn_level_exact, witt_check,
    IntegrandSpec, PadicCheck, PadicSetup, VolkenbornJob,
};
