//! Higher-order peak algebras `Sym(N) = Θ_ζ(Sym)`: the complete peak functions
//! `Σ^(N)_I`, the peak ribbons `ρ^(N)_I` and their deformations, the product
//! basis `T_K`, the projector `π_N`, and membership in `Sym(N)`.

pub mod classical;
pub mod decomp;
pub mod identities;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use serde_json::Value;

use crate::composition::{epsilon, epsilon_inv, g_set, in_f_set, in_g_set, lower_set, Composition};
use crate::error::{Error, Result};
use crate::nsym::text::{render_terms, terms_to_json, Expr};
use crate::nsym::{Basis, NsymElement};
use crate::scalar::Scalar;

/// Bases of `Sym(N)` that coordinates may refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PeakBasis {
    /// Complete peak functions `Σ^(N)_I`, `I ∈ 𝔊`.
    Sigma,
    /// Peak ribbons `ρ^(N)_I`, `I ∈ 𝔊`.
    Rho,
    /// Products `T_K = T_{k_1} ⋯ T_{k_r}`, `K ∈ 𝔉`.
    T,
    /// Classical peak functions `Π_I` over peak compositions (order 2).
    Pi,
}

impl fmt::Display for PeakBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PeakBasis::Sigma => "Sigma",
            PeakBasis::Rho => "rho",
            PeakBasis::T => "T",
            PeakBasis::Pi => "Pi",
        })
    }
}

impl FromStr for PeakBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<PeakBasis> {
        match s {
            "Sigma" => Ok(PeakBasis::Sigma),
            "rho" => Ok(PeakBasis::Rho),
            "T" => Ok(PeakBasis::T),
            "Pi" => Ok(PeakBasis::Pi),
            _ => Err(Error::InvalidArgument(format!("unknown peak basis {s:?}"))),
        }
    }
}

/// Coordinates of an element of `Sym(N)` in one of the [`PeakBasis`] families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeakCoords {
    pub basis: PeakBasis,
    pub order: usize,
    pub terms: BTreeMap<Composition, Scalar>,
}

impl PeakCoords {
    pub fn new(basis: PeakBasis, order: usize) -> Self {
        PeakCoords {
            basis,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        basis: PeakBasis,
        order: usize,
        terms: impl IntoIterator<Item = (Composition, Scalar)>,
    ) -> Self {
        let mut c = PeakCoords::new(basis, order);
        for (k, x) in terms {
            c.add(k, &x);
        }
        c
    }

    pub fn add(&mut self, comp: Composition, x: &Scalar) {
        if x.is_zero() {
            return;
        }
        let sum = match self.terms.get(&comp) {
            Some(prev) => prev + x,
            None => x.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&comp);
        } else {
            self.terms.insert(comp, sum);
        }
    }

    pub fn coeff(&self, comp: &Composition) -> Scalar {
        self.terms.get(comp).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &Scalar) -> PeakCoords {
        PeakCoords::from_terms(
            self.basis,
            self.order,
            self.terms.iter().map(|(c, x)| (c.clone(), x * k)),
        )
    }

    pub fn to_json(&self) -> Value {
        terms_to_json(&self.basis.to_string(), Some(self.order), self.terms.iter())
    }

    /// Interprets a parsed expression whose basis is a peak basis.
    pub fn from_expr(e: &Expr, order: usize) -> Result<PeakCoords> {
        let basis: PeakBasis = e.basis.parse()?;
        Ok(PeakCoords::from_terms(basis, order, e.terms.iter().cloned()))
    }
}

impl fmt::Display for PeakCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(&self.basis.to_string(), self.terms.iter()))
    }
}

/// `ρ^(N)_I(t)` together with whether the family is a basis at this `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoT {
    pub element: NsymElement,
    /// False at `t = 0`, where every `ρ_I(0)` collapses to `Σ_I`.
    pub is_basis: bool,
}

struct WeightData {
    g: Vec<Composition>,
    lower: BTreeMap<Composition, Vec<Composition>>,
    sigma: BTreeMap<Composition, NsymElement>,
    rho: BTreeMap<Composition, NsymElement>,
}

/// Per-order data and caches for `Sym(N)`, `N ≥ 2`.
pub struct PeakContext {
    order: usize,
    zeta: Scalar,
    weights: Mutex<HashMap<usize, Arc<WeightData>>>,
}

impl fmt::Debug for PeakContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PeakContext").field("order", &self.order).finish()
    }
}

fn sign(k: usize) -> Scalar {
    Scalar::from_int(if k % 2 == 0 { 1 } else { -1 })
}

impl PeakContext {
    /// `N = 1` is refused: `Sym(1)` is all of `Sym`, with `Θ_1(S_n) = Ψ_n`.
    pub fn new(order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidArgument(format!(
                "peak algebras need N >= 2 (N = {order}); Sym(1) is Sym itself with Θ_1(S_n) = Ψ_n"
            )));
        }
        Ok(PeakContext {
            order,
            zeta: Scalar::zeta(order),
            weights: Mutex::new(HashMap::new()),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The primitive root `ζ_N`.
    pub fn zeta(&self) -> &Scalar {
        &self.zeta
    }

    fn data(&self, n: usize) -> Arc<WeightData> {
        if let Some(d) = self.weights.lock().unwrap().get(&n) {
            return d.clone();
        }
        let g = g_set(n, self.order);
        let lower: BTreeMap<Composition, Vec<Composition>> = g
            .iter()
            .map(|i| (i.clone(), lower_set(i, self.order)))
            .collect();
        let sigma: BTreeMap<Composition, NsymElement> = lower
            .iter()
            .map(|(i, below)| {
                let e = NsymElement::from_terms(
                    Basis::R,
                    below.iter().map(|j| (j.clone(), Scalar::one())),
                );
                (i.clone(), e)
            })
            .collect();
        let rho = lower
            .iter()
            .map(|(i, below)| {
                let mut e = NsymElement::zero(Basis::R);
                for j in below.iter().filter(|j| in_g_set(j, self.order)) {
                    e = &e + &sigma[j].scale(&sign(i.len() - j.len()));
                }
                (i.clone(), e)
            })
            .collect();
        let data = Arc::new(WeightData {
            g,
            lower,
            sigma,
            rho,
        });
        self.weights
            .lock()
            .unwrap()
            .entry(n)
            .or_insert(data)
            .clone()
    }

    fn check_g(&self, comp: &Composition) -> Result<()> {
        if in_g_set(comp, self.order) {
            Ok(())
        } else {
            Err(Error::NotInIndexSet {
                comp: comp.to_string(),
                set: "G",
                order: self.order,
            })
        }
    }

    /// `𝔊_n^(N)` in canonical order.
    pub fn g_set(&self, n: usize) -> Vec<Composition> {
        self.data(n).g.clone()
    }

    /// `{J ∈ 𝔊 : J ≤ I}` in the split poset, for `I ∈ 𝔊`.
    fn g_lower(&self, comp: &Composition) -> Vec<Composition> {
        self.data(comp.weight()).lower[comp]
            .iter()
            .filter(|j| in_g_set(j, self.order))
            .cloned()
            .collect()
    }

    /// `Σ^(N)_I = Σ_{J ≤ I} R_J` over the split poset.
    pub fn sigma(&self, comp: &Composition) -> Result<NsymElement> {
        self.check_g(comp)?;
        Ok(self.data(comp.weight()).sigma[comp].clone())
    }

    /// `ρ^(N)_I = Σ_{J ≤ I, J ∈ 𝔊} (−1)^{l(I)−l(J)} Σ_J`.
    pub fn rho(&self, comp: &Composition) -> Result<NsymElement> {
        self.check_g(comp)?;
        Ok(self.data(comp.weight()).rho[comp].clone())
    }

    /// `ρ^(N)_I(t) = Σ_{J ≤ I, J ∈ 𝔊} t^{l(I)−l(J)} Σ_J`.
    pub fn rho_t(&self, comp: &Composition, t: &Scalar) -> Result<RhoT> {
        self.check_g(comp)?;
        let mut e = NsymElement::zero(Basis::R);
        for j in self.g_lower(comp) {
            let c = t.pow((comp.len() - j.len()) as i64)?;
            e = &e + &self.sigma(&j)?.scale(&c);
        }
        Ok(RhoT {
            element: e,
            is_basis: !t.is_zero(),
        })
    }

    /// `ρ'^(N)_I(t) = Σ_{J ≤ I, J ∈ 𝔊} t^{l(I)+l(J)} Σ_J`.
    pub fn rho_prime_t(&self, comp: &Composition, t: &Scalar) -> Result<NsymElement> {
        self.check_g(comp)?;
        let mut e = NsymElement::zero(Basis::R);
        for j in self.g_lower(comp) {
            let c = t.pow((comp.len() + j.len()) as i64)?;
            e = &e + &self.sigma(&j)?.scale(&c);
        }
        Ok(e)
    }

    /// `Σ_I = Σ_{J ≤ I, J ∈ 𝔊} ρ_J`, as ρ-coordinates.
    pub fn sigma_from_rho(&self, comp: &Composition) -> Result<PeakCoords> {
        self.check_g(comp)?;
        Ok(PeakCoords::from_terms(
            PeakBasis::Rho,
            self.order,
            self.g_lower(comp).into_iter().map(|j| (j, Scalar::one())),
        ))
    }

    /// `T_k = R_{N^i j}` for `k = N i + j`, `j ∈ [1, N−1]`.
    pub fn t_generator(&self, k: usize) -> Result<NsymElement> {
        let (i, j) = (k / self.order, k % self.order);
        if j == 0 {
            return Err(Error::NotInIndexSet {
                comp: format!("[{k}]"),
                set: "F",
                order: self.order,
            });
        }
        let mut parts = vec![self.order; i];
        parts.push(j);
        Ok(NsymElement::r(Composition::from(parts.as_slice())))
    }

    /// `T_K = T_{k_1} ⋯ T_{k_r}` for `K ∈ 𝔉`.
    pub fn t_basis(&self, comp: &Composition) -> Result<NsymElement> {
        if !in_f_set(comp, self.order) {
            return Err(Error::NotInIndexSet {
                comp: comp.to_string(),
                set: "F",
                order: self.order,
            });
        }
        let mut e = NsymElement::one(Basis::R);
        for &k in comp.parts() {
            e = &e * &self.t_generator(k)?;
        }
        Ok(e)
    }

    /// `π_N`: linear, with `π_N(S^I) = Σ_I` for `I ∈ 𝔊` and `0` otherwise.
    pub fn pi(&self, f: &NsymElement) -> NsymElement {
        let mut out = NsymElement::zero(Basis::R);
        for (comp, x) in f.to_basis(Basis::S).iter() {
            if in_g_set(comp, self.order) {
                out = &out + &self.data(comp.weight()).sigma[comp].scale(x);
            }
        }
        out
    }

    /// Expands coordinates back to an element of `Sym` (in the `R` basis).
    pub fn expand(&self, coords: &PeakCoords) -> Result<NsymElement> {
        if coords.basis != PeakBasis::Pi && coords.order != self.order {
            return Err(Error::InvalidArgument(format!(
                "coordinates of order {} used with N = {}",
                coords.order, self.order
            )));
        }
        let mut out = NsymElement::zero(Basis::R);
        for (c, x) in &coords.terms {
            let e = match coords.basis {
                PeakBasis::Sigma => self.sigma(c)?,
                PeakBasis::Rho => self.rho(c)?,
                PeakBasis::T => self.t_basis(c)?,
                PeakBasis::Pi => classical::classical_peak_function(c)?,
            };
            out = &out + &e.scale(x);
        }
        Ok(out)
    }

    /// Coordinates of `f` in the `Σ` basis, or `None` if `f ∉ Sym(N)`.
    pub fn membership(&self, f: &NsymElement) -> Result<Option<PeakCoords>> {
        self.membership_in(f, PeakBasis::Sigma)
    }

    /// Coordinates of `f` in the requested basis, or `None` if `f ∉ Sym(N)`.
    ///
    /// Both `Σ_J` and `ρ_J` equal `R_J` plus terms with fewer parts, so the
    /// solve peels off a longest remaining ribbon at each step.
    pub fn membership_in(&self, f: &NsymElement, basis: PeakBasis) -> Result<Option<PeakCoords>> {
        if !f.is_homogeneous() {
            return Err(Error::Inhomogeneous);
        }
        let target = match basis {
            PeakBasis::Sigma | PeakBasis::T => PeakBasis::Sigma,
            PeakBasis::Rho => PeakBasis::Rho,
            PeakBasis::Pi => {
                return Err(Error::InvalidArgument(
                    "Pi coordinates are only available through the classical layer".into(),
                ))
            }
        };
        let mut rest = f.to_basis(Basis::R);
        let mut coords = PeakCoords::new(target, self.order);
        let Some(n) = rest.weight() else {
            return Ok(Some(coords));
        };
        let data = self.data(n);
        let table = match target {
            PeakBasis::Sigma => &data.sigma,
            _ => &data.rho,
        };
        while let Some(lead) = rest.terms().keys().max_by_key(|c| (c.len(), *c)).cloned() {
            let Some(b) = table.get(&lead) else {
                return Ok(None);
            };
            let c = rest.coeff(&lead);
            rest = &rest - &b.scale(&c);
            coords.add(lead, &c);
        }
        if basis == PeakBasis::T {
            let terms = coords
                .terms
                .into_iter()
                .map(|(i, x)| Ok((epsilon(&i, self.order)?, x)))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Some(PeakCoords::from_terms(PeakBasis::T, self.order, terms)));
        }
        Ok(Some(coords))
    }

    /// Maps `T` coordinates to `Σ` coordinates through `Σ_I = T_{ε(I)}`.
    pub fn t_to_sigma(&self, coords: &PeakCoords) -> Result<PeakCoords> {
        let terms = coords
            .terms
            .iter()
            .map(|(k, x)| Ok((epsilon_inv(k, self.order)?, x.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(PeakCoords::from_terms(PeakBasis::Sigma, self.order, terms))
    }
}

/// Membership in the left ideal `T^(N)` generated by the `S_j`, `j ≢ 0 mod N`:
/// every `S^K` in the support ends with a part `≢ 0 mod N`.
pub fn in_t_ideal(f: &NsymElement, order: usize) -> bool {
    f.to_basis(Basis::S)
        .iter()
        .all(|(k, _)| k.last().is_some_and(|p| p % order != 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::compositions_of;
    use crate::linalg::{rank, solve_in_span};

    fn c(p: &[usize]) -> Composition {
        Composition::from(p)
    }

    fn r(p: &[usize]) -> NsymElement {
        NsymElement::r(c(p))
    }

    fn r_sum(ps: &[&[usize]]) -> NsymElement {
        ps.iter().fold(NsymElement::zero(Basis::R), |acc, p| &acc + &r(p))
    }

    #[test]
    fn order_one_is_refused() {
        assert!(matches!(PeakContext::new(1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn complete_peak_function_examples() {
        let two = PeakContext::new(2).unwrap();
        let three = PeakContext::new(3).unwrap();
        assert_eq!(two.sigma(&c(&[1, 2, 1])).unwrap(), r_sum(&[&[1, 2, 1], &[3, 1]]));
        assert_eq!(
            three.sigma(&c(&[1, 2, 1])).unwrap(),
            r_sum(&[&[1, 2, 1], &[3, 1], &[1, 3], &[4]])
        );
        for order in 2..=4 {
            let ctx = PeakContext::new(order).unwrap();
            for i in 0..3 {
                for j in 1..order {
                    let mut parts = vec![order; i];
                    parts.push(j);
                    assert_eq!(ctx.sigma(&c(&parts)).unwrap(), r(&parts));
                }
            }
        }
        assert!(matches!(
            three.sigma(&c(&[3])),
            Err(Error::NotInIndexSet { set: "G", .. })
        ));
    }

    #[test]
    fn peak_ribbon_examples() {
        let three = PeakContext::new(3).unwrap();
        assert_eq!(three.rho(&c(&[1, 1, 1])).unwrap(), &r(&[1, 1, 1]) - &r(&[3]));
        assert_eq!(three.rho(&c(&[1, 2])).unwrap(), &r(&[1, 2]) + &r(&[3]));
        assert_eq!(three.rho(&c(&[2, 1])).unwrap(), &r(&[2, 1]) + &r(&[3]));
        let minus_one = Scalar::from_int(-1);
        for order in 2..=4 {
            let ctx = PeakContext::new(order).unwrap();
            for n in 1..=6 {
                for i in ctx.g_set(n) {
                    let rt = ctx.rho_t(&i, &minus_one).unwrap();
                    assert_eq!(rt.element, ctx.rho(&i).unwrap());
                    assert_eq!(ctx.rho_prime_t(&i, &minus_one).unwrap(), ctx.rho(&i).unwrap());
                }
            }
        }
    }

    #[test]
    fn deformed_peak_ribbons() {
        let three = PeakContext::new(3).unwrap();
        let one = three.rho_t(&c(&[1, 1, 1]), &Scalar::one()).unwrap();
        let want = &(&three.sigma(&c(&[1, 1, 1])).unwrap() + &three.sigma(&c(&[1, 2])).unwrap())
            + &three.sigma(&c(&[2, 1])).unwrap();
        assert_eq!(one.element, want);
        assert!(one.is_basis);
        let zero = three.rho_t(&c(&[1, 1, 1]), &Scalar::zero()).unwrap();
        assert!(!zero.is_basis);
        assert_eq!(zero.element, three.sigma(&c(&[1, 1, 1])).unwrap());
        // ρ'_I(t) = t^{2 l(I)} ρ_I(1/t)
        let t = Scalar::from_int(2);
        for order in 2..=4 {
            let ctx = PeakContext::new(order).unwrap();
            for n in 1..=6 {
                for i in ctx.g_set(n) {
                    let lhs = ctx.rho_prime_t(&i, &t).unwrap();
                    let rhs = ctx
                        .rho_t(&i, &t.inv().unwrap())
                        .unwrap()
                        .element
                        .scale(&t.pow(2 * i.len() as i64).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn sigma_rho_mobius_pair() {
        let three = PeakContext::new(3).unwrap();
        let coords = three.sigma_from_rho(&c(&[1, 1, 1])).unwrap();
        assert_eq!(coords.to_string(), "rho[1,1,1] + rho[2,1] + rho[1,2]");
        for order in 2..=4 {
            let ctx = PeakContext::new(order).unwrap();
            for n in 1..=7 {
                for i in ctx.g_set(n) {
                    let back = ctx.expand(&ctx.sigma_from_rho(&i).unwrap()).unwrap();
                    assert_eq!(back, ctx.sigma(&i).unwrap(), "N = {order}, I = {i}");
                }
            }
        }
    }

    #[test]
    fn t_basis_examples() {
        let three = PeakContext::new(3).unwrap();
        assert_eq!(three.t_basis(&c(&[4])).unwrap(), r(&[3, 1]));
        assert_eq!(three.t_basis(&c(&[2, 2])).unwrap(), &r(&[2, 2]) + &r(&[4]));
        assert!(three.t_basis(&c(&[3])).is_err());
        for order in 2..=4 {
            let ctx = PeakContext::new(order).unwrap();
            for n in 1..=7 {
                for i in ctx.g_set(n) {
                    let k = epsilon(&i, order).unwrap();
                    assert_eq!(ctx.sigma(&i).unwrap(), ctx.t_basis(&k).unwrap());
                }
            }
        }
    }

    #[test]
    fn projector_examples() {
        let three = PeakContext::new(3).unwrap();
        assert!(three.pi(&NsymElement::s(c(&[3]))).is_zero());
        for order in 2..=4 {
            let ctx = PeakContext::new(order).unwrap();
            for n in 1..=7 {
                for i in ctx.g_set(n) {
                    assert_eq!(ctx.pi(&r(i.parts())), ctx.rho(&i).unwrap());
                    let s = ctx.sigma(&i).unwrap();
                    assert_eq!(ctx.pi(&s), s);
                }
            }
        }
    }

    #[test]
    fn membership_examples() {
        let three = PeakContext::new(3).unwrap();
        let coords = three.membership(&r(&[2, 1, 1])).unwrap().unwrap();
        assert_eq!(coords.to_string(), "Sigma[2,1,1] - Sigma[3,1] - Sigma[2,2]");
        assert_eq!(three.membership(&r(&[3])).unwrap(), None);
        let mixed = &r(&[1]) + &r(&[2]);
        assert_eq!(three.membership(&mixed), Err(Error::Inhomogeneous));
        let t = three.membership_in(&r(&[2, 1, 1]), PeakBasis::T).unwrap().unwrap();
        assert_eq!(three.expand(&t).unwrap(), r(&[2, 1, 1]));
        assert_eq!(three.t_to_sigma(&t).unwrap(), coords);
    }

    #[test]
    fn greedy_membership_agrees_with_rank() {
        for order in 2..=3 {
            let ctx = PeakContext::new(order).unwrap();
            for n in 1..=5 {
                let comps = compositions_of(n);
                let vec_of = |e: &NsymElement| -> Vec<Scalar> {
                    comps.iter().map(|k| e.to_basis(Basis::R).coeff(k)).collect()
                };
                let basis: Vec<Vec<Scalar>> =
                    ctx.g_set(n).iter().map(|i| vec_of(&ctx.sigma(i).unwrap())).collect();
                assert_eq!(rank(&basis), basis.len());
                for k in &comps {
                    let e = r(k.parts());
                    let greedy = ctx.membership(&e).unwrap();
                    let solved = solve_in_span(&basis, &vec_of(&e));
                    assert_eq!(greedy.is_some(), solved.is_some(), "N = {order}, R{k}");
                }
            }
        }
    }

    #[test]
    fn ideal_membership() {
        for order in 2..=4 {
            let ctx = PeakContext::new(order).unwrap();
            assert!(!in_t_ideal(&NsymElement::s(c(&[order])), order));
            for i in 0..3 {
                for j in 1..order {
                    let mut parts = vec![order; i];
                    parts.push(j);
                    assert!(in_t_ideal(&r(&parts), order));
                }
            }
            for n in 1..=7 {
                for i in ctx.g_set(n) {
                    assert!(in_t_ideal(&ctx.sigma(&i).unwrap(), order));
                }
            }
        }
    }
}
