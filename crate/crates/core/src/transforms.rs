//! Truncated series over `Sym`, the `(1−q)`-transform `θ_q`, its normalization
//! `Θ_q = θ_q / (1−q)`, power sums `Ψ_n`, and the determinant of `θ_q` on `Sym_n`.
//!
//! The literature writes both `ϑ_q` and `θ_q` for the transform; here it is
//! always `theta_q`.

use serde_json::{json, Value};

use crate::composition::{compositions_of, Composition};
use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::nsym::{Basis, NsymElement};
use crate::scalar::Scalar;

pub const DEFAULT_ORDER: usize = 12;

/// `Σ_{k ≤ order} c_k t^k` with coefficients in `Sym` (kept in the `S` basis).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    order: usize,
    coeffs: Vec<NsymElement>,
}

impl GradedSeries {
    pub fn new(order: usize, coeffs: Vec<NsymElement>) -> Self {
        let mut coeffs: Vec<NsymElement> = coeffs
            .into_iter()
            .take(order + 1)
            .map(|c| c.to_basis(Basis::S))
            .collect();
        coeffs.resize(order + 1, NsymElement::zero(Basis::S));
        GradedSeries { order, coeffs }
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> NsymElement) -> Self {
        GradedSeries::new(order, (0..=order).map(f).collect())
    }

    pub fn one(order: usize) -> Self {
        GradedSeries::new(order, vec![NsymElement::one(Basis::S)])
    }

    /// Last degree with known coefficient.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &NsymElement {
        assert!(k <= self.order, "degree {k} beyond series order {}", self.order);
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[NsymElement] {
        &self.coeffs
    }

    pub fn mul(&self, other: &GradedSeries) -> GradedSeries {
        let order = self.order.min(other.order);
        GradedSeries::from_fn(order, |k| {
            (0..=k).fold(NsymElement::zero(Basis::S), |acc, j| {
                &acc + &(&self.coeffs[j] * &other.coeffs[k - j])
            })
        })
    }

    pub fn add(&self, other: &GradedSeries) -> GradedSeries {
        let order = self.order.min(other.order);
        GradedSeries::from_fn(order, |k| &self.coeffs[k] + &other.coeffs[k])
    }

    pub fn sub(&self, other: &GradedSeries) -> GradedSeries {
        let order = self.order.min(other.order);
        GradedSeries::from_fn(order, |k| &self.coeffs[k] - &other.coeffs[k])
    }

    /// Inverse by degreewise recursion; the constant term must be a nonzero scalar.
    pub fn inverse(&self) -> Result<GradedSeries> {
        let c0 = &self.coeffs[0];
        let unit = match (c0.len(), c0.terms().iter().next()) {
            (1, Some((comp, x))) if comp.is_empty() => x.inv()?,
            _ => return Err(Error::NotInvertible),
        };
        let mut out: Vec<NsymElement> = vec![NsymElement::one(Basis::S).scale(&unit)];
        for k in 1..=self.order {
            let mut acc = NsymElement::zero(Basis::S);
            for j in 1..=k {
                acc = &acc + &(&self.coeffs[j] * &out[k - j]);
            }
            out.push(acc.scale(&-&unit));
        }
        Ok(GradedSeries::new(self.order, out))
    }

    /// `d/dt`; the order drops by one.
    pub fn derivative(&self) -> GradedSeries {
        let order = self.order.saturating_sub(1);
        GradedSeries::from_fn(order, |k| {
            if k < self.order {
                self.coeffs[k + 1].scale(&Scalar::from_int(k as i64 + 1))
            } else {
                NsymElement::zero(Basis::S)
            }
        })
    }

    /// Substitutes `t ↦ c·t`.
    pub fn dilate(&self, c: &Scalar) -> GradedSeries {
        let mut power = Scalar::one();
        let mut out = Vec::with_capacity(self.order + 1);
        for k in 0..=self.order {
            out.push(self.coeffs[k].scale(&power));
            power = &power * c;
        }
        GradedSeries::new(self.order, out)
    }

    /// Substitutes `t ↦ −t`.
    pub fn negate_variable(&self) -> GradedSeries {
        self.dilate(&Scalar::from_int(-1))
    }
}

/// `σ(t) = Σ_k S_k t^k`.
pub fn sigma_series(order: usize) -> GradedSeries {
    GradedSeries::from_fn(order, |k| NsymElement::s(Composition::single(k)))
}

/// `ψ(t) = σ(t)^{-1} σ'(t) = Σ_{n≥1} Ψ_n t^{n−1}`.
pub fn psi_series(order: usize) -> GradedSeries {
    let s = sigma_series(order + 1);
    s.inverse().expect("σ has unit constant term").mul(&s.derivative())
}

/// `Ψ_n` in the `S` basis; `Ψ_0 = 0`.
pub fn psi(n: usize) -> NsymElement {
    if n == 0 {
        return NsymElement::zero(Basis::S);
    }
    psi_series(n - 1).coeff(n - 1).clone()
}

/// `σ_{qt}(A)^{-1} σ_t(A) = Σ_n S_n((1−q)A) t^n`, up to `order`.
pub fn theta_q_series(q: &Scalar, order: usize) -> GradedSeries {
    let s = sigma_series(order);
    s.dilate(q)
        .inverse()
        .expect("σ_{qt} has unit constant term")
        .mul(&s)
}

/// `S_n((1−q)A)`, the degree-`n` coefficient of [`theta_q_series`].
pub fn theta_q_generator(n: usize, q: &Scalar, order: usize) -> Result<NsymElement> {
    if n > order {
        return Err(Error::InvalidArgument(format!(
            "degree {n} exceeds truncation order {order}"
        )));
    }
    Ok(theta_q_series(q, order).coeff(n).clone())
}

/// Extends generator images `gens[k] = φ(S_k)` multiplicatively and linearly.
pub fn apply_multiplicative(f: &NsymElement, gens: &[NsymElement]) -> NsymElement {
    let mut out = NsymElement::zero(Basis::S);
    for (comp, x) in f.to_basis(Basis::S).iter() {
        let mut term = NsymElement::one(Basis::S);
        for &p in comp.parts() {
            term = &term * &gens[p];
        }
        out = &out + &term.scale(x);
    }
    out
}

fn max_weight(f: &NsymElement) -> usize {
    f.weights().last().copied().unwrap_or(0)
}

/// `θ_q(F)`: the algebra endomorphism with `S_n ↦ S_n((1−q)A)`. Result in the `S` basis.
pub fn theta_q(f: &NsymElement, q: &Scalar) -> NsymElement {
    let series = theta_q_series(q, max_weight(f));
    apply_multiplicative(f, series.coeffs())
}

/// `Θ_q(S_n) = S_n((1−q)A)/(1−q)`, and `Θ_1(S_n) = Ψ_n`.
pub fn big_theta_generators(q: &Scalar, order: usize) -> Vec<NsymElement> {
    if q.is_one() {
        let ps = psi_series(order);
        let mut gens = vec![NsymElement::one(Basis::S)];
        gens.extend((1..=order).map(|n| ps.coeff(n - 1).clone()));
        return gens;
    }
    let inv = (&Scalar::one() - q).inv().expect("q ≠ 1");
    let series = theta_q_series(q, order);
    let mut gens = vec![NsymElement::one(Basis::S)];
    gens.extend((1..=order).map(|n| series.coeff(n).scale(&inv)));
    gens
}

/// `Θ_q(F)`, multiplicative over `S` monomials with normalized generators.
pub fn big_theta_q(f: &NsymElement, q: &Scalar) -> NsymElement {
    apply_multiplicative(f, &big_theta_generators(q, max_weight(f)))
}

/// `Θ_ζ(F)` at the primitive `N`-th root of unity; `N = 1` gives `S_n ↦ Ψ_n`.
pub fn big_theta(f: &NsymElement, order: usize) -> NsymElement {
    assert!(order >= 1, "N must be positive");
    let q = if order == 1 {
        Scalar::one()
    } else {
        Scalar::zeta(order)
    };
    big_theta_q(f, &q)
}

/// Matrix of `θ_q` on `Sym_n` in the `S^I` basis (column `J` holds `θ_q(S^J)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformMatrix {
    pub n: usize,
    pub comps: Vec<Composition>,
    /// Row-major entries.
    pub entries: Vec<Vec<Scalar>>,
}

impl TransformMatrix {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "basis": "S",
            "index": self.comps.iter().map(|c| c.parts().to_vec()).collect::<Vec<_>>(),
            "rows": self.entries.iter()
                .map(|r| r.iter().map(Scalar::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

pub fn theta_matrix(n: usize, q: &Scalar) -> TransformMatrix {
    let comps = compositions_of(n);
    let gens = theta_q_series(q, n).coeffs().to_vec();
    let columns: Vec<NsymElement> = comps
        .iter()
        .map(|c| apply_multiplicative(&NsymElement::s(c.clone()), &gens))
        .collect();
    let entries = comps
        .iter()
        .map(|row| columns.iter().map(|col| col.coeff(row)).collect())
        .collect();
    TransformMatrix { n, comps, entries }
}

pub fn det_theta(n: usize, q: &Scalar) -> Scalar {
    determinant(&theta_matrix(n, q).entries)
}

/// `Π_{i=1}^{n−1} (1−q^i)^{(n−i+3) 2^{n−i−2}} · (1−q^n)`.
pub fn det_formula(n: usize, q: &Scalar) -> Scalar {
    assert!(n >= 1, "n must be positive");
    let one = Scalar::one();
    let factor = |i: usize| &one - &q.pow(i as i64).expect("nonnegative power");
    let mut out = factor(n);
    for i in 1..n {
        // (n−i+3)·2^{n−i−2} is an integer: the exponent is 2 at i = n−1
        let e = ((n - i + 3) << (n - i)) / 4;
        out = &out * &factor(i).pow(e as i64).expect("nonnegative power");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nsym::internal_product_with;
    use crate::nsym::OracleConfig;
    use crate::scalar::rat;

    fn s(p: &[usize]) -> NsymElement {
        NsymElement::s(Composition::from(p))
    }

    fn r(p: &[usize]) -> NsymElement {
        NsymElement::r(Composition::from(p))
    }

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(rat(n, d))
    }

    #[test]
    fn series_basics() {
        let sigma = sigma_series(10);
        assert_eq!(sigma.mul(&sigma.inverse().unwrap()), GradedSeries::one(10));
        let d = sigma.derivative();
        assert_eq!(d.order(), 9);
        for k in 0..=9 {
            assert_eq!(*d.coeff(k), s(&[k + 1]).scale(&Scalar::from_int(k as i64 + 1)));
        }
        let bad = GradedSeries::new(3, vec![s(&[1])]);
        assert_eq!(bad.inverse(), Err(Error::NotInvertible));
        let short = GradedSeries::one(2);
        assert_eq!(sigma.mul(&short).order(), 2);
    }

    #[test]
    fn power_sums() {
        assert_eq!(psi(1), s(&[1]));
        assert_eq!(psi(2), &s(&[2]).scale(&Scalar::from_int(2)) - &s(&[1, 1]));
        assert_eq!(psi(2), &r(&[2]) - &r(&[1, 1]));
        // Ψ_n = Σ_i (−1)^i R_{1^i, n−i}
        for n in 1..=8 {
            let hooks = (0..n).fold(NsymElement::zero(Basis::R), |acc, i| {
                let sign = Scalar::from_int(if i % 2 == 0 { 1 } else { -1 });
                &acc + &NsymElement::r(Composition::hook(i, n - i)).scale(&sign)
            });
            assert_eq!(psi(n), hooks, "n = {n}");
        }
    }

    #[test]
    fn generator_examples() {
        for n in 0..=5 {
            assert_eq!(theta_q_generator(n, &Scalar::zero(), 5).unwrap(), NsymElement::s(Composition::single(n)));
        }
        let qq = q(3, 7);
        let one_minus = &Scalar::one() - &qq;
        let want = (&r(&[2]) - &r(&[1, 1]).scale(&qq)).scale(&one_minus);
        assert_eq!(theta_q_generator(2, &qq, 4).unwrap(), want);
        for n in 1..=6 {
            assert!(theta_q_generator(n, &Scalar::one(), 6).unwrap().is_zero());
        }
        assert!(theta_q_generator(7, &qq, 6).is_err());
    }

    /// `S_n((1−q)A) = Σ_K (−1)^{ℓ(K)−1} q^{n−k_last} (1−q^{k_last}) S^K`.
    fn generator_closed_form(n: usize, q: &Scalar) -> NsymElement {
        let one = Scalar::one();
        NsymElement::from_terms(
            Basis::S,
            compositions_of(n).into_iter().map(|k| {
                let last = k.last().unwrap();
                let sign = Scalar::from_int(if k.len() % 2 == 1 { 1 } else { -1 });
                let c = &(&sign * &q.pow((n - last) as i64).unwrap()) * &(&one - &q.pow(last as i64).unwrap());
                (k, c)
            }),
        )
    }

    #[test]
    fn generator_matches_closed_form() {
        for qq in [q(2, 1), q(-1, 1), q(1, 2), q(5, 7), Scalar::zeta(3)] {
            for n in 1..=8 {
                assert_eq!(theta_q_generator(n, &qq, 8).unwrap(), generator_closed_form(n, &qq));
            }
        }
    }

    #[test]
    fn normalized_transform() {
        assert_eq!(big_theta(&s(&[2]), 2), s(&[1, 1]));
        assert_eq!(big_theta(&s(&[2]), 2), &r(&[2]) + &r(&[1, 1]));
        for n in 1..=10 {
            assert_eq!(big_theta(&s(&[n]), 1), psi(n));
        }
        for order in 2..=4 {
            let z = Scalar::zeta(order);
            for n in 1..=8 {
                let want = (0..n).fold(NsymElement::zero(Basis::R), |acc, i| {
                    let c = (-&z).pow(i as i64).unwrap();
                    &acc + &NsymElement::r(Composition::hook(i, n - i)).scale(&c)
                });
                assert_eq!(big_theta(&s(&[n]), order), want, "N = {order}, n = {n}");
            }
        }
    }

    #[test]
    fn theta_is_an_algebra_map() {
        let all: Vec<Composition> = (1..=4).flat_map(compositions_of).collect();
        for qq in [q(2, 1), q(-1, 1), q(1, 2)] {
            for i in &all {
                for j in all.iter().filter(|j| i.weight() + j.weight() <= 7) {
                    let f = NsymElement::s(i.clone());
                    let g = NsymElement::r(j.clone());
                    let lhs = theta_q(&(&f * &g), &qq);
                    let rhs = &theta_q(&f, &qq) * &theta_q(&g, &qq);
                    assert_eq!(lhs, rhs);
                    assert_eq!(lhs.weight(), Some(i.weight() + j.weight()));
                }
            }
        }
        assert_eq!(theta_q(&NsymElement::one(Basis::S), &q(2, 1)), NsymElement::one(Basis::S));
    }

    #[test]
    fn theta_is_internal_product_with_generator() {
        let cfg = OracleConfig {
            limit: 8,
            cache_dir: None,
        };
        for qq in [q(2, 1), q(1, 2)] {
            for n in 1..=6 {
                let kernel = theta_q_generator(n, &qq, n).unwrap();
                for c in compositions_of(n) {
                    let f = NsymElement::s(c);
                    assert_eq!(theta_q(&f, &qq), internal_product_with(&f, &kernel, &cfg).unwrap());
                }
            }
        }
    }

    #[test]
    fn determinant_examples() {
        let qq = q(2, 1);
        assert_eq!(det_theta(1, &qq), q(-1, 1));
        assert_eq!(det_formula(1, &qq), q(-1, 1));
        // (1−2)²(1−4)
        assert_eq!(det_theta(2, &qq), q(-3, 1));
        assert_eq!(det_formula(2, &q(1, 2)), q(3, 16));
        assert_eq!(det_theta(2, &q(1, 2)), q(3, 16));
        assert_eq!(det_theta(4, &q(-3, 1)), det_formula(4, &q(-3, 1)));
        for n in 2..=4 {
            assert!(det_theta(n, &Scalar::zeta(2)).is_zero());
        }
    }

    #[test]
    fn determinant_identity_as_polynomials() {
        // degree in q is at most n·2^{n−1}; agreement at more points is equality
        for n in 1..=4usize {
            let points = n * (1 << (n - 1)) + 1;
            for k in 0..points as i64 {
                let qq = q(k + 2, k + 3);
                assert_eq!(det_theta(n, &qq), det_formula(n, &qq), "n = {n}, q = {qq}");
            }
        }
    }

    #[test]
    fn matrix_json_shape() {
        let m = theta_matrix(3, &q(2, 1));
        let v = m.to_json();
        assert_eq!(v["rows"].as_array().unwrap().len(), 4);
        assert_eq!(v["index"][0], json!([3]));
    }
}
