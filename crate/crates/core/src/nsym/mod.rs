//! The free algebra `Sym` of noncommutative symmetric functions in the
//! complete (`S`) and ribbon (`R`) bases.

mod descent;
pub mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use descent::{
    build_descent_table, descent_class, internal_product, internal_product_with, DescentTable,
    OracleConfig, CACHE_ENV, DEFAULT_ORACLE_LIMIT,
};

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    S,
    R,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::S => "S",
            Basis::R => "R",
        })
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Basis> {
        match s {
            "S" => Ok(Basis::S),
            "R" => Ok(Basis::R),
            _ => Err(Error::InvalidArgument(format!("unknown basis {s:?}"))),
        }
    }
}

/// A finite linear combination of `S^I` or of `R_I`. Zero coefficients are
/// never stored; the empty composition is the unit.
///
/// Equality compares the underlying elements, so `S^{(1,1)} == R_{(1,1)} + R_{(2)}`.
#[derive(Clone, Debug)]
pub struct NsymElement {
    basis: Basis,
    terms: BTreeMap<Composition, Scalar>,
}

impl NsymElement {
    pub fn zero(basis: Basis) -> Self {
        NsymElement {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(basis: Basis) -> Self {
        NsymElement::basis_element(basis, Composition::empty())
    }

    pub fn basis_element(basis: Basis, comp: Composition) -> Self {
        NsymElement::monomial(basis, comp, Scalar::one())
    }

    pub fn monomial(basis: Basis, comp: Composition, coeff: Scalar) -> Self {
        let mut e = NsymElement::zero(basis);
        e.add_term(comp, &coeff);
        e
    }

    /// `S^I`.
    pub fn s(comp: impl Into<Composition>) -> Self {
        NsymElement::basis_element(Basis::S, comp.into())
    }

    /// `R_I`.
    pub fn r(comp: impl Into<Composition>) -> Self {
        NsymElement::basis_element(Basis::R, comp.into())
    }

    /// Sums the given terms, dropping anything that cancels.
    pub fn from_terms<I>(basis: Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = (Composition, Scalar)>,
    {
        let mut e = NsymElement::zero(basis);
        for (c, x) in terms {
            e.add_term(c, &x);
        }
        e
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Composition, Scalar> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Composition, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, comp: &Composition) -> Scalar {
        self.terms.get(comp).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, comp: Composition, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(comp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// The common weight of all terms; `None` for zero or mixed weights.
    pub fn weight(&self) -> Option<usize> {
        let mut ws = self.terms.keys().map(Composition::weight);
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.weight().is_some()
    }

    /// Weights present, ascending.
    pub fn weights(&self) -> Vec<usize> {
        let mut ws: Vec<usize> = self.terms.keys().map(Composition::weight).collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }

    pub fn homogeneous_component(&self, n: usize) -> NsymElement {
        NsymElement {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .filter(|(c, _)| c.weight() == n)
                .map(|(c, x)| (c.clone(), x.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> NsymElement {
        NsymElement::from_terms(self.basis, self.terms.iter().map(|(c, x)| (c.clone(), x * k)))
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> NsymElement {
        NsymElement::from_terms(self.basis, self.terms.iter().map(|(c, x)| (c.clone(), f(x))))
    }

    /// Re-expands in the requested basis.
    pub fn to_basis(&self, basis: Basis) -> NsymElement {
        match (self.basis, basis) {
            (Basis::S, Basis::R) => self.s_to_r(),
            (Basis::R, Basis::S) => self.r_to_s(),
            _ => self.clone(),
        }
    }

    /// `S^I = Σ_{D(J) ⊆ D(I)} R_J`.
    pub fn s_to_r(&self) -> NsymElement {
        assert_eq!(self.basis, Basis::S, "s_to_r expects the S basis");
        self.mobius(Basis::R, false)
    }

    /// `R_I = Σ_{D(J) ⊆ D(I)} (−1)^{ℓ(I)−ℓ(J)} S^J`.
    pub fn r_to_s(&self) -> NsymElement {
        assert_eq!(self.basis, Basis::R, "r_to_s expects the R basis");
        self.mobius(Basis::S, true)
    }

    fn mobius(&self, target: Basis, signed: bool) -> NsymElement {
        let mut out = NsymElement::zero(target);
        for (comp, x) in &self.terms {
            let n = comp.weight();
            let mask = comp.descent_mask();
            let neg = -x;
            for sub in submasks(mask) {
                let odd = signed && (mask ^ sub).count_ones() % 2 == 1;
                out.add_term(Composition::from_mask(sub, n), if odd { &neg } else { x });
            }
        }
        out
    }

    /// Product in the basis of `self`; both operands must share it.
    pub fn multiply(&self, other: &NsymElement) -> Result<NsymElement> {
        if self.basis != other.basis {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply {} by {} directly; convert first",
                self.basis, other.basis
            )));
        }
        let mut out = NsymElement::zero(self.basis);
        for (i, x) in &self.terms {
            for (j, y) in &other.terms {
                let c = x * y;
                out.add_term(i.concat(j), &c);
                if self.basis == Basis::R && !i.is_empty() && !j.is_empty() {
                    out.add_term(i.glue(j), &c);
                }
            }
        }
        Ok(out)
    }

    /// Integer power under the outer product.
    pub fn pow(&self, k: usize) -> NsymElement {
        let mut acc = NsymElement::one(self.basis);
        for _ in 0..k {
            acc = acc.multiply(self).expect("same basis");
        }
        acc
    }

    fn combine(&self, other: &NsymElement, sign: &Scalar) -> NsymElement {
        let other = other.to_basis(self.basis);
        let mut out = self.clone();
        for (c, x) in &other.terms {
            out.add_term(c.clone(), &(x * sign));
        }
        out
    }

    pub fn parse(s: &str, conductor: Option<usize>) -> Result<NsymElement> {
        text::parse_element(s, conductor)
    }

    pub fn to_json(&self) -> serde_json::Value {
        text::terms_to_json(&self.basis.to_string(), None, self.terms.iter())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<NsymElement> {
        let raw = text::Expr::from_json(v)?;
        let basis: Basis = raw.basis.parse()?;
        Ok(NsymElement::from_terms(basis, raw.terms))
    }
}

impl PartialEq for NsymElement {
    fn eq(&self, other: &NsymElement) -> bool {
        if self.basis == other.basis {
            self.terms == other.terms
        } else {
            self.terms == other.to_basis(self.basis).terms
        }
    }
}

impl Eq for NsymElement {}

/// Every submask of `mask`, including `mask` and `0`.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

/// `Δ(S_n) = Σ_{k=0}^{n} S_k ⊗ S_{n−k}` as its list of tensor legs.
pub fn coproduct_s(n: usize) -> Vec<(NsymElement, NsymElement)> {
    (0..=n)
        .map(|k| {
            (
                NsymElement::s(Composition::single(k)),
                NsymElement::s(Composition::single(n - k)),
            )
        })
        .collect()
}

impl fmt::Display for NsymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render_terms(&self.basis.to_string(), self.terms.iter()))
    }
}

impl Add<&NsymElement> for &NsymElement {
    type Output = NsymElement;
    fn add(self, rhs: &NsymElement) -> NsymElement {
        self.combine(rhs, &Scalar::one())
    }
}

impl Sub<&NsymElement> for &NsymElement {
    type Output = NsymElement;
    fn sub(self, rhs: &NsymElement) -> NsymElement {
        self.combine(rhs, &Scalar::from_int(-1))
    }
}

impl Neg for &NsymElement {
    type Output = NsymElement;
    fn neg(self) -> NsymElement {
        self.scale(&Scalar::from_int(-1))
    }
}

/// Outer product; the right operand is converted to the left operand's basis.
impl Mul<&NsymElement> for &NsymElement {
    type Output = NsymElement;
    fn mul(self, rhs: &NsymElement) -> NsymElement {
        self.multiply(&rhs.to_basis(self.basis)).expect("same basis")
    }
}

impl Add for NsymElement {
    type Output = NsymElement;
    fn add(self, rhs: NsymElement) -> NsymElement {
        &self + &rhs
    }
}

impl Sub for NsymElement {
    type Output = NsymElement;
    fn sub(self, rhs: NsymElement) -> NsymElement {
        &self - &rhs
    }
}

impl Mul for NsymElement {
    type Output = NsymElement;
    fn mul(self, rhs: NsymElement) -> NsymElement {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::compositions_of;
    use proptest::prelude::*;

    fn r(p: &[usize]) -> NsymElement {
        NsymElement::r(Composition::from(p))
    }

    fn s(p: &[usize]) -> NsymElement {
        NsymElement::s(Composition::from(p))
    }

    #[test]
    fn conversion_examples() {
        assert_eq!(s(&[1, 1]).s_to_r(), &r(&[1, 1]) + &r(&[2]));
        assert_eq!(s(&[4]).s_to_r(), r(&[4]));
        assert_eq!(s(&[2, 1]).s_to_r(), &r(&[2, 1]) + &r(&[3]));
        assert_eq!(r(&[4]).r_to_s(), s(&[4]));
        assert_eq!(r(&[1, 1]).r_to_s(), &s(&[1, 1]) - &s(&[2]));
        assert_eq!(NsymElement::one(Basis::S).s_to_r(), NsymElement::one(Basis::R));
    }

    #[test]
    fn conversions_invert_on_all_basis_elements() {
        for n in 0..=8 {
            for c in compositions_of(n) {
                let e = NsymElement::s(c.clone());
                assert_eq!(e.s_to_r().r_to_s(), e);
                let e = NsymElement::r(c);
                assert_eq!(e.r_to_s().s_to_r(), e);
            }
        }
    }

    #[test]
    fn ribbon_product() {
        assert_eq!(
            r(&[2]).multiply(&r(&[1])).unwrap(),
            &r(&[2, 1]) + &r(&[3])
        );
        let one = NsymElement::one(Basis::R);
        assert_eq!(one.multiply(&r(&[1, 2])).unwrap(), r(&[1, 2]));
        assert!(r(&[1]).multiply(&s(&[1])).is_err());
    }

    #[test]
    fn ribbon_product_matches_s_product() {
        let all: Vec<Composition> = (0..=7).flat_map(compositions_of).collect();
        for i in &all {
            for j in all.iter().filter(|j| i.weight() + j.weight() <= 7) {
                let si = NsymElement::s(i.clone());
                let sj = NsymElement::s(j.clone());
                let lhs = si.multiply(&sj).unwrap().s_to_r();
                let rhs = si.s_to_r().multiply(&sj.s_to_r()).unwrap();
                assert_eq!(lhs, rhs, "{i} {j}");
            }
        }
    }

    #[test]
    fn coproduct_of_complete_functions() {
        let legs = coproduct_s(0);
        assert_eq!(legs, vec![(NsymElement::one(Basis::S), NsymElement::one(Basis::S))]);
        let legs = coproduct_s(2);
        assert_eq!(legs.len(), 3);
        assert_eq!(legs[1], (s(&[1]), s(&[1])));
        let counit: Vec<_> = legs
            .iter()
            .filter(|(_, b)| *b == NsymElement::one(Basis::S))
            .map(|(a, _)| a.clone())
            .collect();
        assert_eq!(counit, vec![s(&[2])]);
    }

    #[test]
    fn text_form() {
        let e = &r(&[1, 1]) + &r(&[2]);
        assert_eq!(e.to_string(), "R[1,1] + R[2]");
        let e = NsymElement::parse("2*S[2,1] - 1/3*S[1,1,2]", None).unwrap();
        assert_eq!(e.coeff(&Composition::from([1, 1, 2])), Scalar::from_ratio(-1, 3));
        assert_eq!(NsymElement::parse(&e.to_string(), None).unwrap(), e);
        assert_eq!(NsymElement::from_json(&e.to_json()).unwrap(), e);
    }

    fn arb_element(basis: Basis, max_weight: usize) -> impl Strategy<Value = NsymElement> {
        let term = (0..=max_weight)
            .prop_flat_map(|n| {
                let cs = compositions_of(n);
                (proptest::sample::select(cs), -4i64..=4, 1i64..=3)
            })
            .prop_map(|(c, a, b)| (c, Scalar::from_ratio(a, b)));
        proptest::collection::vec(term, 0..5)
            .prop_map(move |ts| NsymElement::from_terms(basis, ts))
    }

    proptest! {
        #[test]
        fn round_trip_conversion(e in arb_element(Basis::S, 8)) {
            prop_assert_eq!(e.s_to_r().r_to_s(), e.clone());
            for w in e.weights() {
                prop_assert!(e.homogeneous_component(w).s_to_r().weights() == vec![w]
                    || e.homogeneous_component(w).is_zero());
            }
        }

        #[test]
        fn product_is_associative(
            basis in prop_oneof![Just(Basis::S), Just(Basis::R)],
            a in arb_element(Basis::S, 3),
            b in arb_element(Basis::S, 2),
            c in arb_element(Basis::S, 2),
        ) {
            let (a, b, c) = (a.to_basis(basis), b.to_basis(basis), c.to_basis(basis));
            let lhs = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let rhs = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let one = NsymElement::one(basis);
            prop_assert_eq!(one.multiply(&a).unwrap(), a.clone());
            prop_assert_eq!(a.multiply(&one).unwrap(), a);
        }

        #[test]
        fn text_and_json_round_trip(e in arb_element(Basis::R, 6)) {
            prop_assert_eq!(NsymElement::parse(&e.to_string(), None).unwrap(), e.clone());
            prop_assert_eq!(NsymElement::from_json(&e.to_json()).unwrap(), e);
        }
    }
}
