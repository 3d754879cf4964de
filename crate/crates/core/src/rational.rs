//! Exact rational scalars and vectors.
//!
//! All coefficients in this crate are arbitrary-precision rationals kept in
//! canonical form (reduced, positive denominator), so equality is structural
//! and no operation ever rounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;
pub type RatVector = Vec<Rational>;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `n` as an exact rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses the text syntax used everywhere in this crate: `p`, `-p`, or `p/q`
/// with `q > 0` (e.g. `-23/7`). Stricter than `BigRational::from_str`: a
/// non-positive denominator is rejected rather than normalized.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| format!("`{s}` is not a rational: bad numerator `{num_str}`"))?;
    let denom: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| format!("`{s}` is not a rational: bad denominator `{d}`"))?,
        None => BigInt::one(),
    };
    if denom <= BigInt::zero() {
        return Err(format!("`{s}` is not a rational: denominator must be positive"));
    }
    Ok(Rational::new(numer, denom))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `v + c * w`, in place.
pub fn add_scaled(v: &mut [Rational], c: &Rational, w: &[Rational]) {
    debug_assert_eq!(v.len(), w.len());
    for (vi, wi) in v.iter_mut().zip(w) {
        *vi += c * wi;
    }
}

/// Rescales a nonzero vector by a positive factor into the canonical
/// primitive integer form: entries become coprime integers, orientation is
/// preserved. Zero vectors are returned unchanged. Used to compare rows and
/// rays up to positive scaling and to keep coefficient growth in check.
pub fn primitive(v: &[Rational]) -> RatVector {
    let mut denom_lcm = BigInt::one();
    for x in v {
        denom_lcm = denom_lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&denom_lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for n in &ints {
        g = g.gcd(n);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|n| Rational::from_integer(n / &g)).collect()
}

pub fn is_nonneg(v: &[Rational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_accepts_the_documented_forms() {
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("-23/7").unwrap(), rat(-23, 7));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
    }

    #[test]
    fn parse_rejects_nonpositive_denominators_and_junk() {
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/2").is_err());
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn canonical_form_is_reduced_with_positive_denominator() {
        let r = rat(-4, -6);
        assert_eq!(r, rat(2, 3));
        let r = rat(4, -6);
        assert_eq!((r.numer().clone(), r.denom().clone()), (BigInt::from(-2), BigInt::from(3)));
    }

    #[test]
    fn primitive_rescales_to_coprime_integers() {
        let v = vec![rat(1, 2), rat(-3, 4), int(0)];
        assert_eq!(primitive(&v), vec![int(2), int(-3), int(0)]);
        let v = vec![int(4), int(-6)];
        assert_eq!(primitive(&v), vec![int(2), int(-3)]);
        let z = vec![int(0), int(0)];
        assert_eq!(primitive(&z), z);
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-200i64..200, 1i64..50).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn addition_is_associative(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!((&a + &b) + &c, a + (b + c));
        }

        #[test]
        fn nonzero_times_reciprocal_is_one(a in arb_rational()) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!(&a * a.recip(), int(1));
        }

        #[test]
        fn text_round_trip_is_exact(a in arb_rational()) {
            prop_assert_eq!(parse_rational(&a.to_string()).unwrap(), a);
        }
    }
}
