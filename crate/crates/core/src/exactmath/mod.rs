//! Exact rational scalars, univariate polynomials, symmetric-matrix
//! positivity tests and real-root isolation.
//!
//! The scalar type [`Rat`] is `num::BigRational`: arbitrary-precision,
//! always stored in canonical form (reduced, positive denominator), with
//! structural equality. Every operation in this crate is closed over `Rat`.

pub mod matrix;
pub mod poly;
pub mod roots;

pub use matrix::{det_dense, psd_corner_threshold, CornerThreshold, SymMatrix};
pub use poly::UniPoly;
pub use roots::{isolate_nonneg_roots, nonneg_on_ray, nonneg_prefix_on_ray, RayNonneg, RootLoc};

// Trait re-exports so Rat is fully usable without a direct num dependency.
pub use num::{One, Signed, Zero};

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::error::{Error, Result};

/// Arbitrary-precision exact rational; the ground field for all computation.
pub type Rat = BigRational;

/// `p/q` as a `Rat`. Panics on zero denominator.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as a `Rat`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse a fraction string: optional sign, digits, optional `/digits`.
/// Decimal floats are rejected; exactness is non-negotiable at the I/O
/// boundary.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let body = t.strip_prefix('-').unwrap_or(t);
    let ok = !body.is_empty()
        && body.split('/').count() <= 2
        && body.split('/').all(|part| !part.is_empty() && part.bytes().all(|b| b.is_ascii_digit()));
    if !ok {
        return Err(Error::InvalidFamily(format!(
            "`{s}` is not an exact fraction (expected `p`, `p/q` or `-p/q`)"
        )));
    }
    t.parse::<Rat>()
        .map_err(|e| Error::InvalidFamily(format!("`{s}`: {e}")))
}

/// Render as `p` or `p/q` (the canonical `Display` of `Rat`).
pub fn exact_str(r: &Rat) -> String {
    r.to_string()
}

/// Decimal approximation to `places` digits, round-half-away-from-zero.
/// Presentation only; never fed back into computation.
pub fn approx_str(r: &Rat, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let num = r.numer().abs() * &scale;
    let den = r.denom().clone();
    let scaled = (num * 2u32 + &den) / (den * 2u32);
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let sign = if r.is_negative() && !scaled.is_zero() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>width$}", width = places as usize)
    }
}

/// Sign of a rational as -1, 0, 1.
pub fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// The simplest rational (smallest denominator, then smallest numerator)
/// strictly inside the open interval `(lo, hi)`. Requires `lo < hi`.
///
/// Used to reconstruct exact rational roots from isolating intervals: once
/// bisection has shrunk the interval far enough, a rational root becomes the
/// simplest number inside it.
pub fn simplest_in_interval(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo < hi, "empty interval");
    if lo.is_negative() && hi.is_positive() {
        return Rat::zero();
    }
    if hi.is_positive() {
        simplest_positive(lo, hi)
    } else {
        -simplest_positive(&-hi.clone(), &-lo.clone())
    }
}

// Continued-fraction descent on 0 <= lo < hi.
fn simplest_positive(lo: &Rat, hi: &Rat) -> Rat {
    let n = lo.floor();
    let next_int = &n + Rat::one();
    if next_int < *hi {
        return next_int; // an integer lies strictly inside
    }
    let a = lo - &n; // in [0, 1)
    let b = hi - &n; // in (0, 1]
    if a.is_zero() {
        // Simplest in (0, b) is 1/k for the smallest integer k with 1/k < b.
        let inv = b.recip();
        let k = if inv.is_integer() {
            inv.to_integer() + 1
        } else {
            inv.ceil().to_integer()
        };
        return n + Rat::new(BigInt::one(), k);
    }
    n + simplest_positive(&b.recip(), &a.recip()).recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_canonical() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(1, -2), rat(-1, 2));
        assert!(rat(1, -2).denom() > &BigInt::from(0));
        assert_eq!((rat(1, 6) + rat(1, 3)).to_string(), "1/2");
    }

    #[test]
    fn parse_accepts_fractions_rejects_floats() {
        assert_eq!(parse_rat("9/16").unwrap(), rat(9, 16));
        assert_eq!(parse_rat("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        assert!(parse_rat("0.5").is_err());
        assert!(parse_rat("1e3").is_err());
        assert!(parse_rat("1/").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn approx_rounds_half_away() {
        assert_eq!(approx_str(&rat(2, 3), 6), "0.666667");
        assert_eq!(approx_str(&rat(1, 2), 6), "0.500000");
        assert_eq!(approx_str(&rat(-1, 3), 6), "-0.333333");
        assert_eq!(approx_str(&rat_int(4), 6), "4.000000");
        assert_eq!(approx_str(&rat(1, 2), 0), "1");
    }

    #[test]
    fn simplest_in_interval_finds_low_denominators() {
        let r = simplest_in_interval(&rat(3, 10), &rat(2, 5));
        assert_eq!(r, rat(1, 3));
        let r = simplest_in_interval(&rat(-1, 10), &rat(1, 10));
        assert_eq!(r, rat_int(0));
        let r = simplest_in_interval(&rat(5, 2), &rat(7, 2));
        assert_eq!(r, rat_int(3));
        // tight interval around 9/16
        let r = simplest_in_interval(&rat(899, 1600), &rat(901, 1600));
        assert_eq!(r, rat(9, 16));
    }
}
