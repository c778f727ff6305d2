use conserva_bench::{builtin_tables, half};
use conserva_core::Rational;

#[test]
fn fixtures_cover_the_builtin_tables() {
    let dims: Vec<usize> = builtin_tables().iter().map(|a| a.dim()).collect();
    assert_eq!(dims, [8, 6, 4]);
    assert_eq!(half() + half(), Rational::one());
}
