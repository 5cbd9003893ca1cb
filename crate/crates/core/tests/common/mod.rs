#![allow(dead_code)] // each test binary uses its own slice of the fixtures

pub mod fixtures;

/// Asserts agreement with a reference value frozen at 12 significant digits:
/// the allowed gap is 1e-11 relative, i.e. half an ulp of the truncation
/// plus room for one or two float roundings on our side.
#[macro_export]
macro_rules! assert_close12 {
    ($got:expr, $want:expr) => {{
        let (got, want) = ($got, $want);
        assert!(
            (got - want).abs() <= 1e-11 * want.abs().max(1e-6),
            "{} = {got:.15e}, reference {want:.15e}",
            stringify!($got),
        );
    }};
}
