//! Integer scalar abstraction and small modular helpers.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer type usable by the matrix, polynomial and
/// continued-fraction code. Implemented for `i64`, `i128` and `BigInt`.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Lift a small integer into any scalar type.
pub fn lift<T: Scalar>(x: i64) -> T {
    T::from_i64(x).expect("every scalar type holds an i64")
}

/// Representative of `a` in `[0, m)`.
pub fn modp(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// Inverse of `a` modulo `m` in `[0, m)`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let e = modp(a, m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(modp(e.x, m))
}

/// `(-1)^e` for any integer `e`.
pub fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
