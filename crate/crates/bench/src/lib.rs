//! Fixed inputs shared by the benchmarks.

use polygrowth::{parse_poly, Rational, RationalPoly};

/// `(name, P, x0, offset)` for the standard test systems.
pub const SYSTEMS: &[(&str, &str, i64, usize)] = &[
    ("beta", "x^2+1", 0, 0),
    ("gamma", "x^2-x+1", 2, 0),
    ("lucas", "x^2-2", 3, 1),
    ("cubic", "x^3+x+1", 1, 0),
];

pub fn system(p: &str, x0: i64) -> (RationalPoly, Rational) {
    (parse_poly(p).expect("fixture parses"), Rational::from_integer(x0.into()))
}
