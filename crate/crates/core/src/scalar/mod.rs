//! Coefficient domains: ℚ and the cyclotomic fields ℚ(ζ_N).

mod cyclotomic;
mod text;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

pub use cyclotomic::{cyclotomic_polynomial, totient, Cyclotomic};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A coefficient: either rational or an element of a specific cyclotomic field.
///
/// Rationals promote into a cyclotomic field on contact. Two cyclotomics of
/// different conductors never combine: the operator impls panic and the
/// `checked_*` methods return [`Error::ConductorMismatch`].
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(Rational),
    Cyclotomic(Cyclotomic),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::Rational(rat(n, d))
    }

    pub fn zeta(conductor: usize) -> Self {
        Scalar::Cyclotomic(Cyclotomic::zeta(conductor))
    }

    pub fn zeta_pow(conductor: usize, k: i64) -> Self {
        Scalar::Cyclotomic(Cyclotomic::zeta_pow(conductor, k))
    }

    /// The conductor if this is a cyclotomic value.
    pub fn conductor(&self) -> Option<usize> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Cyclotomic(c) => Some(c.conductor()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyclotomic(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Cyclotomic(c) => c.is_one(),
        }
    }

    /// The value as a rational if it lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Cyclotomic(c) => c.as_rational(),
        }
    }

    /// Explicit promotion into `ℚ(ζ_N)`.
    pub fn promote(&self, conductor: usize) -> Result<Cyclotomic> {
        match self {
            Scalar::Rational(r) => Ok(Cyclotomic::from_rational(conductor, r.clone())),
            Scalar::Cyclotomic(c) if c.conductor() == conductor => Ok(c.clone()),
            Scalar::Cyclotomic(c) => Err(Error::ConductorMismatch {
                left: c.conductor(),
                right: conductor,
            }),
        }
    }

    fn combine(
        &self,
        other: &Scalar,
        rr: impl Fn(&Rational, &Rational) -> Rational,
        cc: impl Fn(&Cyclotomic, &Cyclotomic) -> Result<Cyclotomic>,
    ) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(rr(a, b))),
            (Scalar::Cyclotomic(a), b) => Ok(Scalar::Cyclotomic(cc(a, &b.promote(a.conductor())?)?)),
            (a, Scalar::Cyclotomic(b)) => Ok(Scalar::Cyclotomic(cc(&a.promote(b.conductor())?, b)?)),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, |a, b| a + b, Cyclotomic::checked_add)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, |a, b| a - b, Cyclotomic::checked_sub)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, |a, b| a * b, Cyclotomic::checked_mul)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) if r.is_zero() => Err(Error::DivisionByZero),
            Scalar::Rational(r) => Ok(Scalar::Rational(r.recip())),
            Scalar::Cyclotomic(c) => c.inv().map(Scalar::Cyclotomic),
        }
    }

    pub fn pow(&self, k: i64) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if k < 0 && r.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let e = i32::try_from(k)
                    .map_err(|_| Error::InvalidArgument(format!("exponent {k} too large")))?;
                Ok(Scalar::Rational(num_traits::Pow::pow(r, e)))
            }
            Scalar::Cyclotomic(c) => c.pow(k).map(Scalar::Cyclotomic),
        }
    }

    pub fn scale_int(&self, k: i64) -> Scalar {
        self * &Scalar::from_int(k)
    }

    /// Parses the text form; `z` is only accepted when a conductor is supplied.
    pub fn parse(s: &str, conductor: Option<usize>) -> Result<Scalar> {
        text::parse_scalar(s, conductor)
    }

    /// `{"num","den"}` for rationals, `{"N","coeffs"}` for cyclotomics.
    pub fn to_json(&self) -> Value {
        match self {
            Scalar::Rational(r) => rational_to_json(r),
            Scalar::Cyclotomic(c) => json!({
                "N": c.conductor(),
                "coeffs": c.coeffs().iter().map(rational_to_json).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Scalar> {
        let bad = |m: &str| Error::Parse {
            pos: 0,
            msg: format!("scalar JSON: {m}"),
        };
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        if obj.contains_key("N") {
            let n = obj["N"]
                .as_u64()
                .filter(|&n| n >= 1)
                .ok_or_else(|| bad("N must be a positive integer"))? as usize;
            let coeffs = obj
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("missing coeffs array"))?
                .iter()
                .map(rational_from_json)
                .collect::<Result<Vec<_>>>()?;
            if coeffs.len() > totient(n) {
                return Err(bad("too many coefficients for conductor"));
            }
            Ok(Scalar::Cyclotomic(Cyclotomic::from_poly(n, coeffs)))
        } else {
            rational_from_json(v).map(Scalar::Rational)
        }
    }
}

fn bigint_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(small) => json!(small),
        None => json!(n.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Result<BigInt> {
    let parsed = match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse::<BigInt>().ok(),
        _ => None,
    };
    parsed.ok_or_else(|| Error::Parse {
        pos: 0,
        msg: format!("expected an integer, found {v}"),
    })
}

pub fn rational_to_json(r: &Rational) -> Value {
    json!({ "num": bigint_to_json(r.numer()), "den": bigint_to_json(r.denom()) })
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    let field = |k: &str| {
        v.get(k).ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("rational JSON: missing {k}"),
        })
    };
    let num = bigint_from_json(field("num")?)?;
    let den = bigint_from_json(field("den")?)?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => a == b,
            (Scalar::Rational(a), Scalar::Cyclotomic(b))
            | (Scalar::Cyclotomic(b), Scalar::Rational(a)) => b.as_rational().as_ref() == Some(a),
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Cyclotomic(c) => match c.as_rational() {
                Some(r) => write!(f, "{r}"),
                None => f.write_str(&c.to_poly_string()),
            },
        }
    }
}

impl Scalar {
    /// True if the text form needs parentheses when used as a factor.
    pub fn is_compound(&self) -> bool {
        match self {
            Scalar::Rational(_) => false,
            Scalar::Cyclotomic(c) => {
                c.as_rational().is_none() && c.coeffs().iter().filter(|x| !x.is_zero()).count() > 1
            }
        }
    }

    /// True for a value whose text form starts with a minus sign and is a
    /// single term, so it can be rendered as a subtraction.
    pub fn is_negative_monomial(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Cyclotomic(c) => {
                let nz: Vec<_> = c.coeffs().iter().filter(|x| !x.is_zero()).collect();
                nz.len() == 1 && nz[0].is_negative()
            }
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<Cyclotomic> for Scalar {
    fn from(c: Cyclotomic) -> Self {
        Scalar::Cyclotomic(c)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar arithmetic across conductors")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn promotion_and_mismatch() {
        let z = Scalar::zeta(3);
        let s = &z + &Scalar::one();
        assert_eq!(s.conductor(), Some(3));
        assert_eq!(&s + &Scalar::zeta_pow(3, 2), Scalar::zero());
        assert!(matches!(
            Scalar::zeta(3).checked_mul(&Scalar::zeta(5)),
            Err(Error::ConductorMismatch { .. })
        ));
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_valued_cyclotomic_equals_rational() {
        assert_eq!(Scalar::zeta_pow(4, 2), Scalar::from_int(-1));
        assert_eq!(Scalar::zeta_pow(4, 2).to_string(), "-1");
    }

    #[test]
    fn json_forms() {
        let r = Scalar::from_ratio(-3, 4);
        assert_eq!(r.to_json(), json!({"num": -3, "den": 4}));
        assert_eq!(Scalar::from_json(&r.to_json()).unwrap(), r);
        let c = &Scalar::zeta(5) + &Scalar::from_ratio(1, 2);
        assert_eq!(Scalar::from_json(&c.to_json()).unwrap(), c);
        let big = Scalar::Rational(Rational::from_integer(BigInt::from(10).pow(30)));
        assert_eq!(Scalar::from_json(&big.to_json()).unwrap(), big);
    }

    proptest! {
        #[test]
        fn rational_text_round_trip(n in any::<i64>(), d in 1i64..i64::MAX) {
            let r = Scalar::from_ratio(n, d);
            prop_assert_eq!(Scalar::parse(&r.to_string(), None).unwrap(), r);
        }

        #[test]
        fn cyclotomic_text_round_trip(
            conductor in 1usize..=12,
            coeffs in proptest::collection::vec((-20i64..20, 1i64..6), 0..12),
        ) {
            let poly = coeffs.iter().map(|&(n, d)| rat(n, d)).collect();
            let c = Scalar::Cyclotomic(Cyclotomic::from_poly(conductor, poly));
            let back = Scalar::parse(&c.to_string(), Some(conductor)).unwrap();
            prop_assert_eq!(back, c);
        }

        #[test]
        fn field_axioms(
            conductor in 1usize..=9,
            a in proptest::collection::vec(-5i64..5, 0..8),
            b in proptest::collection::vec(-5i64..5, 0..8),
            c in proptest::collection::vec(-5i64..5, 0..8),
        ) {
            let mk = |v: &Vec<i64>| Scalar::Cyclotomic(
                Cyclotomic::from_poly(conductor, v.iter().map(|&x| int(x)).collect()));
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }
}
