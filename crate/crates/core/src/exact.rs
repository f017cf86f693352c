//! Exact rational arithmetic.
//!
//! [`Rational`] wraps an arbitrary-precision reduced fraction. Every value the
//! verifier reports (discriminants, Riemann–Roch values, roots) is one of these;
//! no floating point is involved anywhere.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of negative integer {0}")]
    NegativeSqrt(BigInt),
    #[error("identically zero quadratic: every rational is a root")]
    IndeterminateEquation,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// Exact reduced fraction with positive denominator. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// `num/den` in canonical form; fails only when `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, ExactError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        // BigRational::new reduces and moves the sign onto the numerator.
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn square(&self) -> Rational {
        Rational(&self.0 * &self.0)
    }
}

/// Canonical reduced form of `num/den`.
pub fn normalize(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational, ExactError> {
    Rational::new(num, den)
}

/// Exact integer square root: `Some(r)` iff `r * r == n`.
pub fn int_sqrt_exact(n: &BigInt) -> Result<Option<BigInt>, ExactError> {
    if n.is_negative() {
        return Err(ExactError::NegativeSqrt(n.clone()));
    }
    let r = n.sqrt();
    Ok(if &r * &r == *n { Some(r) } else { None })
}

fn uint_sqrt_exact(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Nonnegative rational square root if one exists.
///
/// A reduced `a/b` is a rational square iff `a >= 0` and both `a` and `b` are
/// perfect squares.
pub fn rational_sqrt_exact(q: &Rational) -> Option<Rational> {
    let (sign, num) = q.numer().to_owned().into_parts();
    if sign == Sign::Minus {
        return None;
    }
    let num_root = uint_sqrt_exact(&num)?;
    let den_root = uint_sqrt_exact(q.denom().magnitude())?;
    let root = Rational(BigRational::new_raw(
        BigInt::from_biguint(
            if num_root.is_zero() {
                Sign::NoSign
            } else {
                Sign::Plus
            },
            num_root,
        ),
        BigInt::from_biguint(Sign::Plus, den_root),
    ));
    debug_assert_eq!(&root.square(), q);
    Some(root)
}

/// All rational roots of `a·x² + b·x + c`.
///
/// The zero polynomial is rejected since its root set is all of ℚ.
pub fn solve_rational_quadratic(
    a: &Rational,
    b: &Rational,
    c: &Rational,
) -> Result<BTreeSet<Rational>, ExactError> {
    let mut roots = BTreeSet::new();
    if a.is_zero() {
        if b.is_zero() {
            return if c.is_zero() {
                Err(ExactError::IndeterminateEquation)
            } else {
                Ok(roots)
            };
        }
        roots.insert(-(c.checked_div(b)?));
        return Ok(roots);
    }
    let four = Rational::from_integer(4);
    let disc = b.square() - &(&four * &(a * c));
    if let Some(s) = rational_sqrt_exact(&disc) {
        let two_a = a + a;
        let neg_b = -b.clone();
        roots.insert((&neg_b + &s).checked_div(&two_a)?);
        roots.insert((&neg_b - &s).checked_div(&two_a)?);
    }
    Ok(roots)
}

/// Evaluates `a·x² + b·x + c`.
pub fn eval_quadratic(a: &Rational, b: &Rational, c: &Rational, x: &Rational) -> Rational {
    &(&(a * x) + b) * x + c
}

impl fmt::Display for Rational {
    /// Always `p/q`, including integers (`3/1`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ExactError;

    /// Accepts `p/q` (sign only on `p`) or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ExactError::Parse(s.to_string());
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((p, q)) => (p, Some(q)),
            None => (s, None),
        };
        let parse_int = |t: &str, signed: bool| -> Result<BigInt, ExactError> {
            let digits = if signed {
                t.strip_prefix(['-', '+']).unwrap_or(t)
            } else {
                t
            };
            if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
                return Err(err());
            }
            t.parse::<BigInt>().map_err(|_| err())
        };
        let num = parse_int(num, true)?;
        let den = match den {
            Some(q) => parse_int(q, false)?,
            None => BigInt::one(),
        };
        Rational::new(num, den)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;

    /// Panics on a zero divisor; use [`Rational::checked_div`] otherwise.
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("division by zero rational")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn set(items: &[&str]) -> BTreeSet<Rational> {
        items.iter().map(|s| q(s)).collect()
    }

    #[test]
    fn normalize_examples() {
        let r = normalize(6, -4).unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(normalize(0, 5).unwrap().to_string(), "0/1");
        assert_eq!(normalize(746496, 864 * 864).unwrap(), Rational::one());
        assert_eq!(normalize(1, 0), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn int_sqrt_examples() {
        assert_eq!(
            int_sqrt_exact(&BigInt::from(291600)).unwrap(),
            Some(BigInt::from(540))
        );
        assert_eq!(int_sqrt_exact(&BigInt::from(1306368)).unwrap(), None);
        assert_eq!(
            int_sqrt_exact(&BigInt::zero()).unwrap(),
            Some(BigInt::zero())
        );
        assert!(matches!(
            int_sqrt_exact(&BigInt::from(-1)),
            Err(ExactError::NegativeSqrt(_))
        ));
    }

    #[test]
    fn int_sqrt_matches_brute_force_scan() {
        // Brute force: walk r upward, recording every perfect square hit.
        let limit: u64 = 1_000_000;
        let mut squares = vec![None; limit as usize + 1];
        let mut r = 0u64;
        while r * r <= limit {
            squares[(r * r) as usize] = Some(r);
            r += 1;
        }
        for (n, expected) in squares.iter().enumerate() {
            let got = int_sqrt_exact(&BigInt::from(n)).unwrap();
            assert_eq!(got, expected.map(BigInt::from), "n = {n}");
        }
    }

    #[test]
    fn int_sqrt_large_values() {
        let big = BigInt::from(10).pow(60) + BigInt::from(7);
        let sq = &big * &big;
        assert_eq!(int_sqrt_exact(&sq).unwrap(), Some(big.clone()));
        assert_eq!(int_sqrt_exact(&(sq + 1)).unwrap(), None);
    }

    #[test]
    fn rational_sqrt_examples() {
        assert_eq!(rational_sqrt_exact(&q("25/64")), Some(q("5/8")));
        assert_eq!(rational_sqrt_exact(&q("7/4")), None);
        assert_eq!(rational_sqrt_exact(&q("-1")), None);
        assert_eq!(
            rational_sqrt_exact(&Rational::zero()),
            Some(Rational::zero())
        );
        // 4/9 is a square even though 36 is the product of the reduced parts.
        assert_eq!(rational_sqrt_exact(&q("8/18")), Some(q("2/3")));
    }

    #[test]
    fn quadratic_examples() {
        let roots = solve_rational_quadratic(&q("25/32"), &q("25/8"), &q("3")).unwrap();
        assert_eq!(roots, set(&["-8/5", "-12/5"]));
        for r in &roots {
            assert!(eval_quadratic(&q("25/32"), &q("25/8"), &q("3"), r).is_zero());
        }
        let roots = solve_rational_quadratic(&Rational::zero(), &q("27/8"), &q("3")).unwrap();
        assert_eq!(roots, set(&["-8/9"]));
        let roots =
            solve_rational_quadratic(&Rational::zero(), &Rational::zero(), &q("3")).unwrap();
        assert!(roots.is_empty());
        assert_eq!(
            solve_rational_quadratic(&Rational::zero(), &Rational::zero(), &Rational::zero()),
            Err(ExactError::IndeterminateEquation)
        );
    }

    #[test]
    fn quadratic_double_root() {
        // (x - 2/3)^2 = x^2 - 4/3 x + 4/9
        let roots = solve_rational_quadratic(&q("1"), &q("-4/3"), &q("4/9")).unwrap();
        assert_eq!(roots, set(&["2/3"]));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(q("-6/4").to_string(), "-3/2");
        assert_eq!(q("+5").to_string(), "5/1");
        assert_eq!(q(" 12/3 ").to_string(), "4/1");
        for bad in ["", "1/0", "a/2", "1/-2", "1/", "/2", "1.5", "--1", "1/2/3"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn serializes_as_string() {
        let json = serde_json::to_string(&q("-8/5")).unwrap();
        assert_eq!(json, "\"-8/5\"");
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    fn is_canonical(r: &Rational) -> bool {
        use num_integer::Integer;
        r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
    }

    proptest! {
        #[test]
        fn sqrt_is_sound(r in arb_rational()) {
            if let Some(s) = rational_sqrt_exact(&r) {
                prop_assert!(!s.is_negative());
                prop_assert_eq!(s.square(), r);
            }
        }

        #[test]
        fn squares_have_roots(r in arb_rational()) {
            let sq = r.square();
            let s = rational_sqrt_exact(&sq).unwrap();
            prop_assert_eq!(s.square(), sq);
            prop_assert!(!s.is_negative());
        }

        #[test]
        fn arithmetic_stays_canonical(x in arb_rational(), y in arb_rational()) {
            prop_assert!(is_canonical(&(&x + &y)));
            prop_assert!(is_canonical(&(&x - &y)));
            prop_assert!(is_canonical(&(&x * &y)));
            if !y.is_zero() {
                prop_assert!(is_canonical(&x.checked_div(&y).unwrap()));
            }
        }

        #[test]
        fn quadratic_roots_are_exact(
            a in arb_rational().prop_filter("nonzero", |a| !a.is_zero()),
            b in arb_rational(),
            c in arb_rational(),
        ) {
            let roots = solve_rational_quadratic(&a, &b, &c).unwrap();
            for r in &roots {
                prop_assert!(eval_quadratic(&a, &b, &c, r).is_zero());
            }
            let disc = b.square() - &(&Rational::from_integer(4) * &(&a * &c));
            let expected = match rational_sqrt_exact(&disc) {
                Some(s) if s.is_zero() => 1,
                Some(_) => 2,
                None => 0,
            };
            prop_assert_eq!(roots.len(), expected);
        }

        #[test]
        fn planted_roots_are_found(
            a in arb_rational().prop_filter("nonzero", |a| !a.is_zero()),
            r1 in arb_rational(),
            r2 in arb_rational(),
        ) {
            // a(x - r1)(x - r2)
            let b = -(&a * &(&r1 + &r2));
            let c = &a * &(&r1 * &r2);
            let roots = solve_rational_quadratic(&a, &b, &c).unwrap();
            prop_assert!(roots.contains(&r1));
            prop_assert!(roots.contains(&r2));
        }

        #[test]
        fn display_parse_roundtrip(r in arb_rational()) {
            prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        }
    }
}
