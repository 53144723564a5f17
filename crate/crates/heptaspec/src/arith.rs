//! Exact scalar arithmetic: arbitrary-precision rationals and the quadratic
//! field extensions Q(sqrt(2)) and Q(sqrt(3)).
//!
//! Rationals are backed by `num::BigRational`, which keeps every value in
//! canonical reduced form with a positive denominator. The quadratic
//! extension carries its radicand as a const generic so values from
//! different fields cannot be mixed by accident.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = BigRational;

/// Shorthand integer constructor.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Shorthand rational constructor.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(int(v))
}

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(int(p), int(q))
}

/// Best-effort conversion to `f64` (infinite for values outside f64 range).
pub fn rational_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// `2^exp` as an exact rational, for any (possibly negative) exponent.
pub fn pow2(exp: i64) -> Rational {
    if exp >= 0 {
        Rational::from(int(2).pow(exp as u32))
    } else {
        Rational::new(Int::one(), int(2).pow((-exp) as u32))
    }
}

/// Render `x` as a fixed-point decimal with `places` fractional digits,
/// rounding half-to-even (banker's rounding), e.g. `317/4` -> `"79.25"`.
pub fn decimal_string(x: &Rational, places: usize) -> String {
    let scale = int(10).pow(places as u32);
    let num = x.numer() * &scale;
    let den = x.denom().clone(); // positive by BigRational's invariant
    let (mut q, rem) = num.div_mod_floor(&den);
    // rem/den is the fractional part in [0, 1); bump on > 1/2, or on a tie
    // when the floor is odd.
    let twice = &rem * 2;
    if twice > den || (twice == den && q.is_odd()) {
        q += 1;
    }
    let neg = q.is_negative();
    let qa = q.abs();
    let (whole, frac) = qa.div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac:0>places$}", frac = frac.to_string())
    }
}

/// An element `a + b*sqrt(D)` of the real quadratic field Q(sqrt(D)).
///
/// `D` must not be a perfect square (this crate uses 2 and 3); under that
/// assumption the representation is unique and the type is a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt<const D: u32> {
    a: Rational,
    b: Rational,
}

/// Elements of Q(sqrt(2)).
pub type Quad2 = QuadExt<2>;
/// Elements of Q(sqrt(3)).
pub type Quad3 = QuadExt<3>;

impl<const D: u32> QuadExt<D> {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadExt { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero() }
    }

    /// `a + b*sqrt(D)` from machine integers.
    pub fn from_ints(a: i64, b: i64) -> Self {
        QuadExt { a: rat(a), b: rat(b) }
    }

    /// The pure radical `sqrt(D)`.
    pub fn sqrt_d() -> Self {
        QuadExt { a: Rational::zero(), b: Rational::one() }
    }

    /// Rational coordinate  (the `a` in `a + b*sqrt(D)`).
    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    /// Radical coordinate (the `b` in `a + b*sqrt(D)`).
    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact rational value, or an error if a radical residue is present.
    pub fn expect_rational(&self) -> Result<Rational> {
        if self.is_rational() {
            Ok(self.a.clone())
        } else {
            Err(Error::IrrationalResidue(self.to_string()))
        }
    }

    /// Galois conjugate `a - b*sqrt(D)`.
    pub fn conjugate(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a^2 - D*b^2` (zero iff the element is zero).
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(int(D as i64)) * &self.b * &self.b
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        debug_assert!(!n.is_zero(), "nonzero element with zero norm: D is a square?");
        Some(QuadExt { a: &self.a / &n, b: -&self.b / &n })
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * (D as f64).sqrt()
    }
}

/// `x^k` by binary exponentiation (exact).
pub fn quad_pow<const D: u32>(x: &QuadExt<D>, k: u64) -> QuadExt<D> {
    let mut base = x.clone();
    let mut exp = k;
    let mut acc = QuadExt::<D>::one();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base.clone();
        }
        exp >>= 1;
        if exp > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

/// Sum of a Galois-conjugate pair, which is always rational:
/// `(a + b*sqrt(D)) + (a - b*sqrt(D)) = 2a`.
///
/// Returns an error unless `y` really is the conjugate of `x` (equal
/// rational parts, opposite radical parts).
pub fn conjugate_pair_sum<const D: u32>(x: &QuadExt<D>, y: &QuadExt<D>) -> Result<Rational> {
    if x.a != y.a || x.b != -y.b.clone() {
        return Err(Error::NotConjugatePair(x.to_string(), y.to_string()));
    }
    Ok(&x.a * rat(2))
}

impl<const D: u32> fmt::Display for QuadExt<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, D);
        }
        if self.b.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.a, -self.b.clone(), D)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, D)
        }
    }
}

impl<const D: u32> Add for QuadExt<D> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        QuadExt { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl<const D: u32> Sub for QuadExt<D> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        QuadExt { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl<const D: u32> Mul for QuadExt<D> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // (a1 + b1 r)(a2 + b2 r) = a1 a2 + D b1 b2 + (a1 b2 + b1 a2) r
        let d = Rational::from_integer(int(D as i64));
        QuadExt {
            a: &self.a * &rhs.a + d * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl<const D: u32> Neg for QuadExt<D> {
    type Output = Self;
    fn neg(self) -> Self {
        QuadExt { a: -self.a, b: -self.b }
    }
}

impl<const D: u32> Div for QuadExt<D> {
    type Output = Self;
    // field division is multiplication by the inverse
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.inverse().expect("division by zero in quadratic field");
        self * inv
    }
}

impl<const D: u32> Zero for QuadExt<D> {
    fn zero() -> Self {
        QuadExt { a: Rational::zero(), b: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<const D: u32> One for QuadExt<D> {
    fn one() -> Self {
        QuadExt { a: Rational::one(), b: Rational::zero() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn powers_of_two_plus_sqrt3() {
        let x = Quad3::from_ints(2, 1);
        assert_eq!(quad_pow(&x, 2), Quad3::from_ints(7, 4));
        assert_eq!(quad_pow(&x, 4), Quad3::from_ints(97, 56));
        assert_eq!(quad_pow(&x, 0), Quad3::one());
        assert_eq!(quad_pow(&x, 1), x);
    }

    #[test]
    fn conjugate_pair_sums() {
        let p = Quad3::from_ints(720, 416);
        assert_eq!(conjugate_pair_sum(&p, &p.conjugate()).unwrap(), rat(1440));

        let r = Quad3::sqrt_d();
        assert_eq!(conjugate_pair_sum(&r, &r.conjugate()).unwrap(), rat(0));

        let five = Quad3::from_ints(5, 0);
        assert_eq!(conjugate_pair_sum(&five, &five).unwrap(), rat(10));

        let not_conj = conjugate_pair_sum(&p, &p);
        assert!(matches!(not_conj, Err(Error::NotConjugatePair(_, _))));
    }

    #[test]
    fn inverse_and_norm() {
        let x = Quad2::from_ints(1, 1); // 1 + sqrt(2), norm -1
        assert_eq!(x.norm(), rat(-1));
        let inv = x.inverse().unwrap();
        assert_eq!(x * inv, Quad2::one());
        assert!(Quad2::zero().inverse().is_none());
    }

    #[test]
    fn display_strings() {
        assert_eq!(Quad3::from_ints(5, 0).to_string(), "5");
        assert_eq!(Quad3::new(ratio(3, 2), rat(2)).to_string(), "3/2 + 2*sqrt(3)");
        assert_eq!(Quad3::from_ints(1, -1).to_string(), "1 - 1*sqrt(3)");
        assert_eq!(Quad2::from_ints(0, -1).to_string(), "-1*sqrt(2)");
        assert_eq!(Quad2::zero().to_string(), "0");
    }

    #[test]
    fn decimal_rendering_half_even() {
        assert_eq!(decimal_string(&ratio(317, 4), 2), "79.25");
        assert_eq!(decimal_string(&rat(84), 2), "84.00");
        assert_eq!(decimal_string(&ratio(1, 8), 3), "0.125");
        // ties round to the even last digit
        assert_eq!(decimal_string(&ratio(1, 8), 2), "0.12");
        assert_eq!(decimal_string(&ratio(27, 200), 2), "0.14");
        assert_eq!(decimal_string(&ratio(-1, 8), 2), "-0.12");
        assert_eq!(decimal_string(&ratio(-1, 200), 2), "0.00");
        assert_eq!(decimal_string(&ratio(5, 2), 0), "2");
        assert_eq!(decimal_string(&ratio(7, 2), 0), "4");
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..12).prop_map(|(p, q)| ratio(p, q))
    }

    fn arb_quad3() -> impl Strategy<Value = Quad3> {
        (arb_rational(), arb_rational()).prop_map(|(a, b)| Quad3::new(a, b))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_quad3(), y in arb_quad3(), z in arb_quad3()) {
            prop_assert_eq!(
                (x.clone() + y.clone()) * z.clone(),
                x.clone() * z.clone() + y.clone() * z.clone()
            );
            prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
            prop_assert_eq!(
                (x.clone() * y.clone()) * z.clone(),
                x.clone() * (y.clone() * z.clone())
            );
        }

        #[test]
        fn conjugation_is_multiplicative(x in arb_quad3(), y in arb_quad3()) {
            prop_assert_eq!((x.clone() * y.clone()).conjugate(), x.conjugate() * y.conjugate());
        }

        #[test]
        fn inverse_roundtrip(x in arb_quad3()) {
            prop_assume!(!x.is_zero());
            prop_assert_eq!(x.clone() * x.inverse().unwrap(), Quad3::one());
        }

        #[test]
        fn pow_matches_repeated_multiplication(x in arb_quad3(), k in 0u64..10) {
            let mut acc = Quad3::one();
            for _ in 0..k {
                acc = acc * x.clone();
            }
            prop_assert_eq!(quad_pow(&x, k), acc);
        }

        #[test]
        fn norm_is_multiplicative(x in arb_quad3(), y in arb_quad3()) {
            prop_assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
        }
    }
}
