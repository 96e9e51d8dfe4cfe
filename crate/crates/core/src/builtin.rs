//! Literal multiplication tables of the named systems.
//!
//! These are written out entry by entry rather than synthesized, so that the
//! doubling construction can be regression-tested against them.

use num_rational::Rational64;

use crate::algebra::{Algebra, BasisProduct, MultiplicationTable};

/// Signed basis index: `3` is `e3`, `-3` is `-e3`.
fn signed(k: i32) -> BasisProduct {
    BasisProduct::term(
        Rational64::from_integer(k.signum() as i64),
        k.unsigned_abs() as usize,
    )
}

fn from_signed(name: &str, rows: &[&[i32]]) -> Algebra {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|&k| signed(k)).collect())
        .collect();
    let table = MultiplicationTable::new(rows).expect("built-in table is valid");
    Algebra::new(name, table)
}

/// Complex numbers `C`: `e2 * e2 = -e1`.
pub fn complex() -> Algebra {
    from_signed("C", &[&[1, 2], &[2, -1]])
}

/// Double (binary) numbers `W`: `e2 * e2 = e1`.
pub fn double_numbers() -> Algebra {
    from_signed("W", &[&[1, 2], &[2, 1]])
}

/// Quaternions `H`.
pub fn quaternions() -> Algebra {
    from_signed(
        "H",
        &[
            &[1, 2, 3, 4],
            &[2, -1, 4, -3],
            &[3, -4, -1, 2],
            &[4, 3, -2, -1],
        ],
    )
}

/// Antiquaternions `AH` (split-quaternions).
pub fn antiquaternions() -> Algebra {
    from_signed(
        "AH",
        &[
            &[1, 2, 3, 4],
            &[2, -1, 4, -3],
            &[3, -4, 1, -2],
            &[4, 3, 2, 1],
        ],
    )
}

/// Looks up a built-in algebra by its short name.
pub fn by_name(name: &str) -> Option<Algebra> {
    match name {
        "C" => Some(complex()),
        "W" => Some(double_numbers()),
        "H" => Some(quaternions()),
        "AH" => Some(antiquaternions()),
        _ => None,
    }
}
