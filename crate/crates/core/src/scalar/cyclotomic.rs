//! Exact arithmetic in `ℚ(ζ_N)`, represented as polynomials in `ζ` of degree
//! below `φ(N)` reduced modulo the cyclotomic polynomial `Φ_N`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

type IntPoly = Vec<BigInt>;

fn phi_cache() -> &'static Mutex<HashMap<usize, Arc<IntPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of `Φ_N`, lowest degree first. Memoized per `N`.
fn phi_int(n: usize) -> Arc<IntPoly> {
    assert!(n >= 1, "cyclotomic polynomial needs N >= 1");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^N - 1 divided exactly by every Φ_d with d | N, d < N.
    let mut num: IntPoly = vec![BigInt::zero(); n + 1];
    num[0] = -BigInt::one();
    num[n] = BigInt::one();
    for d in (1..n).filter(|d| n % d == 0) {
        num = exact_div_monic(&num, &phi_int(d));
    }
    let computed = Arc::new(num);
    phi_cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert(computed)
        .clone()
}

fn exact_div_monic(num: &IntPoly, den: &IntPoly) -> IntPoly {
    let dd = den.len() - 1;
    let mut rem = num.clone();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

/// `Φ_N` as a polynomial over ℚ, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<Rational> {
    phi_int(n)
        .iter()
        .map(|c| Rational::from_integer(c.clone()))
        .collect()
}

/// Euler's totient, i.e. `deg Φ_N`.
pub fn totient(n: usize) -> usize {
    phi_int(n).len() - 1
}

/// An element of `ℚ(ζ_N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: usize,
    /// Exactly `φ(N)` coefficients of `1, ζ, ζ², …`.
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Reduces an arbitrary polynomial in `ζ` (lowest degree first).
    pub fn from_poly(conductor: usize, poly: Vec<Rational>) -> Self {
        Cyclotomic {
            conductor,
            coeffs: reduce(poly, conductor),
        }
    }

    pub fn from_rational(conductor: usize, r: Rational) -> Self {
        Cyclotomic::from_poly(conductor, vec![r])
    }

    pub fn zero(conductor: usize) -> Self {
        Cyclotomic::from_poly(conductor, Vec::new())
    }

    pub fn one(conductor: usize) -> Self {
        Cyclotomic::from_rational(conductor, Rational::one())
    }

    /// `ζ_N^k`, exponent taken modulo `N`.
    pub fn zeta_pow(conductor: usize, k: i64) -> Self {
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Cyclotomic::from_poly(conductor, poly)
    }

    pub fn zeta(conductor: usize) -> Self {
        Cyclotomic::zeta_pow(conductor, 1)
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The value as a rational when it lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.split_first() {
            Some((c0, rest)) if rest.iter().all(Zero::is_zero) => Some(c0.clone()),
            None => Some(Rational::zero()),
            _ => None,
        }
    }

    fn check(&self, other: &Cyclotomic) -> Result<()> {
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch {
                left: self.conductor,
                right: other.conductor,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyclotomic {
            conductor: self.conductor,
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.check(other)?;
        Ok(Cyclotomic::from_poly(
            self.conductor,
            poly_mul(&self.coeffs, &other.coeffs),
        ))
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_N`.
    pub fn inv(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus = cyclotomic_polynomial(self.conductor);
        // Invariant: s_k · a ≡ r_k (mod Φ_N).
        let (mut r0, mut r1) = (modulus, trim(self.coeffs.clone()));
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Φ_N is irreducible.
        let c = r1[0].clone();
        debug_assert!(!c.is_zero());
        let inv_c = c.recip();
        Ok(Cyclotomic::from_poly(
            self.conductor,
            s1.into_iter().map(|x| x * &inv_c).collect(),
        ))
    }

    /// Integer power, negative exponents through [`inv`](Self::inv).
    pub fn pow(&self, k: i64) -> Result<Cyclotomic> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Cyclotomic::one(self.conductor);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Renders as a polynomial in `z`, e.g. `1/2 - z + z^2`.
    pub fn to_poly_string(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "z".to_string(),
                (_, true) => format!("z^{k}"),
                (1, false) => format!("{mag}*z"),
                (_, false) => format!("{mag}*z^{k}"),
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn reduce(poly: Vec<Rational>, conductor: usize) -> Vec<Rational> {
    let phi = phi_int(conductor);
    let deg = phi.len() - 1;
    let mut p = trim(poly);
    while p.len() > deg {
        let top = p.len() - 1;
        let lead = p.pop().expect("non-empty");
        if !lead.is_zero() {
            for (i, c) in phi.iter().take(deg).enumerate() {
                if !c.is_zero() {
                    p[top - deg + i] -= &lead * c;
                }
            }
        }
    }
    p.resize(deg, Rational::zero());
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Division with remainder in `ℚ[x]`; `den` must be nonzero after trimming.
fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let den = trim(den.to_vec());
    let mut rem = trim(num.to_vec());
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = den.last().expect("nonzero divisor").recip();
    let mut quot = vec![Rational::zero(); rem.len() - den.len() + 1];
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (i, d) in den.iter().enumerate() {
            rem[shift + i] -= &c * d;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &[i64]) -> Vec<Rational> {
        p.iter().map(|&c| Rational::from_integer(c.into())).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(totient(9), 6);
    }

    #[test]
    fn roots_of_unity() {
        for n in 1..=12 {
            let z = Cyclotomic::zeta(n);
            // Φ_N(ζ) = 0
            let mut value = Cyclotomic::zero(n);
            for (k, c) in cyclotomic_polynomial(n).iter().enumerate() {
                let term = z.pow(k as i64).unwrap().scale(c);
                value = value.checked_add(&term).unwrap();
            }
            assert!(value.is_zero(), "Φ_{n}(ζ) != 0");
            assert!(Cyclotomic::zeta_pow(n, n as i64).is_one());
            for k in 1..n {
                assert!(!Cyclotomic::zeta_pow(n, k as i64).is_one(), "ζ_{n}^{k} = 1");
            }
        }
    }

    #[test]
    fn sum_of_cube_roots_vanishes() {
        let s = Cyclotomic::one(3)
            .checked_add(&Cyclotomic::zeta(3))
            .unwrap()
            .checked_add(&Cyclotomic::zeta_pow(3, 2))
            .unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn inverse_of_one_minus_zeta() {
        for n in 2..=8 {
            let x = Cyclotomic::one(n).checked_sub(&Cyclotomic::zeta(n)).unwrap();
            assert!(x.checked_mul(&x.inv().unwrap()).unwrap().is_one());
        }
        assert_eq!(Cyclotomic::zero(5).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn geometric_factorization() {
        // ζ^k − 1 = (1 − ζ)(−1 − ζ − ⋯ − ζ^{k−1})
        for n in 1..=6 {
            let one = Cyclotomic::one(n);
            let z = Cyclotomic::zeta(n);
            for k in 0..=n {
                let lhs = Cyclotomic::zeta_pow(n, k as i64).checked_sub(&one).unwrap();
                let mut tail = Cyclotomic::zero(n);
                for e in 0..k {
                    tail = tail.checked_sub(&Cyclotomic::zeta_pow(n, e as i64)).unwrap();
                }
                let rhs = one.checked_sub(&z).unwrap().checked_mul(&tail).unwrap();
                assert_eq!(lhs, rhs, "N = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn conductor_mismatch_is_rejected() {
        assert_eq!(
            Cyclotomic::zeta(3).checked_add(&Cyclotomic::zeta(4)),
            Err(Error::ConductorMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn renders_polynomials() {
        let half = Rational::new(1.into(), 2.into());
        let x = Cyclotomic::from_poly(7, vec![half, ints(&[-1])[0].clone(), Rational::one()]);
        assert_eq!(x.to_poly_string(), "1/2 - z + z^2");
        assert_eq!(Cyclotomic::zero(3).to_poly_string(), "0");
        assert_eq!(Cyclotomic::zeta_pow(3, 2).to_poly_string(), "-1 - z");
    }
}
