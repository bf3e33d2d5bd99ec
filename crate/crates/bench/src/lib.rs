//! Deterministic fixtures shared by the benchmarks.

use ternary_invariants::poly::{int, monomial_exponents};
use ternary_invariants::TernaryForm;

/// A generic form of degree `n` with small integer coefficients in a fixed,
/// irregular pattern.
pub fn fixture_form(n: u32) -> TernaryForm {
    let exponents = monomial_exponents(n);
    let terms = exponents.iter().enumerate().map(|(idx, e)| {
        let c = ((idx as i64 + 3) * 7919 + n as i64 * 104_729) % 19 - 9;
        (*e, int(c))
    });
    TernaryForm::from_terms(n, terms).expect("exponents have degree n")
}

/// The form degrees exercised by the benchmarks.
pub const DEGREES: [u32; 3] = [4, 6, 8];
