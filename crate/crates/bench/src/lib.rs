//! Fixtures shared by the criterion benchmarks.

use conserva_core::{builtin, Algebra, Rational};

/// The three built-in tables, in canonical order.
pub fn builtin_tables() -> Vec<Algebra> {
    conserva_core::BUILTIN_NAMES
        .iter()
        .map(|name| builtin(name).expect("built-in tables load"))
        .collect()
}

pub fn half() -> Rational {
    Rational::new(1, 2)
}
