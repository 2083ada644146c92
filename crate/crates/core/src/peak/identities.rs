//! Generating-series identities in `Sym(N)` and the multiplicativity of `π_N`.

use super::PeakContext;
use crate::composition::{compositions_of, Composition};
use crate::error::Result;
use crate::nsym::{Basis, NsymElement};
use crate::scalar::Scalar;
use crate::transforms::{sigma_series, GradedSeries};

/// Outcome of comparing two truncated series degree by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub order: usize,
    pub first_mismatch: Option<usize>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }

    fn compare(name: impl Into<String>, lhs: &GradedSeries, rhs: &GradedSeries) -> IdentityCheck {
        let order = lhs.order().min(rhs.order());
        IdentityCheck {
            name: name.into(),
            order,
            first_mismatch: (0..=order).find(|&k| lhs.coeff(k) != rhs.coeff(k)),
        }
    }
}

fn sign(k: usize) -> Scalar {
    Scalar::from_int(if k % 2 == 0 { 1 } else { -1 })
}

/// `(N^i, j)` for degree `d = N i + j`, or `None` when `N | d`.
fn hook_index(d: usize, order: usize) -> Option<(usize, Composition)> {
    let (i, j) = (d / order, d % order);
    if d == 0 || j == 0 {
        return None;
    }
    let mut parts = vec![order; i];
    parts.push(j);
    Some((i, Composition::from(parts.as_slice())))
}

impl PeakContext {
    /// `t = Σ_{i≥0} (−1)^{i+1} Σ_{j=1}^{N−1} Σ_{(N^i, j)}`, graded by weight.
    pub fn tangent(&self, order: usize) -> GradedSeries {
        GradedSeries::from_fn(order, |d| match hook_index(d, self.order) {
            Some((i, comp)) => NsymElement::r(comp).scale(&sign(i + 1)),
            None => NsymElement::zero(Basis::S),
        })
    }

    /// `t_ζ = Σ_{i≥0} Σ_{j=1}^{N−1} ζ^{j−i−1} Σ_{(N^i, j)}`.
    pub fn tangent_zeta(&self, order: usize) -> GradedSeries {
        GradedSeries::from_fn(order, |d| match hook_index(d, self.order) {
            Some((i, comp)) => {
                let j = (d % self.order) as i64;
                NsymElement::r(comp).scale(&Scalar::zeta_pow(self.order, j - i as i64 - 1))
            }
            None => NsymElement::zero(Basis::S),
        })
    }

    /// `Σ_n c^n ρ_{1^n}(s) x^n`.
    fn rho_ones_series(&self, order: usize, c: &Scalar, s: &Scalar) -> Result<GradedSeries> {
        let mut coeffs = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let rho = if n == 0 {
                NsymElement::one(Basis::R)
            } else {
                self.rho_t(&Composition::ones(n), s)?.element
            };
            coeffs.push(rho.scale(&c.pow(n as i64)?));
        }
        Ok(GradedSeries::new(order, coeffs))
    }

    /// `σ_N(x) = 1 + Σ_{i=1}^{N−1} Σ_i x^i + Σ_{i≥1} (−1)^i Σ_j Σ_{(N^i, j)} x^{iN+j}`.
    pub fn sigma_n(&self, order: usize) -> GradedSeries {
        GradedSeries::one(order).sub(&self.tangent(order))
    }

    /// `λ_N(x) = Σ_n ρ_{1^n} x^n`, the series with `σ_N(x) λ_N(−x) = 1`.
    pub fn lambda_n(&self, order: usize) -> Result<GradedSeries> {
        self.rho_ones_series(order, &Scalar::one(), &Scalar::from_int(-1))
    }

    /// `(1 − t)^{-1} = Σ_n (−1)^n ρ_{1^n}`.
    pub fn check_tangent(&self, order: usize) -> Result<IdentityCheck> {
        let lhs = self.sigma_n(order).inverse()?;
        let rhs = self.rho_ones_series(order, &Scalar::from_int(-1), &Scalar::from_int(-1))?;
        Ok(IdentityCheck::compare("(1 - t)^-1 = sum (-1)^n rho[1^n]", &lhs, &rhs))
    }

    /// `σ_N(x) λ_N(−x) = 1`.
    pub fn check_sigma_lambda(&self, order: usize) -> Result<IdentityCheck> {
        let lhs = self.sigma_n(order).mul(&self.lambda_n(order)?.negate_variable());
        Ok(IdentityCheck::compare(
            "sigma_N(x) lambda_N(-x) = 1",
            &lhs,
            &GradedSeries::one(order),
        ))
    }

    /// The same product with `λ_N(x) = Σ_n (−x)^n ρ_{1^n}` instead; fails in degree 1.
    pub fn check_sigma_lambda_signed(&self, order: usize) -> Result<IdentityCheck> {
        let signed = self.lambda_n(order)?.negate_variable();
        let lhs = self.sigma_n(order).mul(&signed.negate_variable());
        Ok(IdentityCheck::compare(
            "sigma_N(x) lambda_N(-x) = 1 with lambda_N(x) = sum (-x)^n rho[1^n]",
            &lhs,
            &GradedSeries::one(order),
        ))
    }

    /// `(1 − t_ζ)^{-1} = Σ_n ρ_{1^n}(ζ)`.
    pub fn check_tangent_zeta(&self, order: usize) -> Result<IdentityCheck> {
        let lhs = GradedSeries::one(order).sub(&self.tangent_zeta(order)).inverse()?;
        let rhs = self.rho_ones_series(order, &Scalar::one(), &self.zeta)?;
        Ok(IdentityCheck::compare("(1 - t_zeta)^-1 = sum rho[1^n](zeta)", &lhs, &rhs))
    }

    /// The same identity with an extra `(−1)^n`; fails in degree 1.
    pub fn check_tangent_zeta_signed(&self, order: usize) -> Result<IdentityCheck> {
        let lhs = GradedSeries::one(order).sub(&self.tangent_zeta(order)).inverse()?;
        let rhs = self.rho_ones_series(order, &Scalar::from_int(-1), &self.zeta)?;
        Ok(IdentityCheck::compare(
            "(1 - t_zeta)^-1 = sum (-1)^n rho[1^n](zeta)",
            &lhs,
            &rhs,
        ))
    }

    /// At `N = 2`, `t_ζ(x) = t(−x)`.
    pub fn check_tangent_zeta_order_two(&self, order: usize) -> Option<IdentityCheck> {
        (self.order == 2).then(|| {
            IdentityCheck::compare(
                "N = 2: t_zeta(x) = t(-x)",
                &self.tangent_zeta(order),
                &self.tangent(order).negate_variable(),
            )
        })
    }

    /// `ϱ_j(z) = Σ_{m≥0} (−1)^m R_{(N^m, j)} z^{mN+j}`.
    pub fn varrho(&self, j: usize, order: usize) -> GradedSeries {
        GradedSeries::from_fn(order, |d| match hook_index(d, self.order) {
            Some((m, comp)) if d % self.order == j => NsymElement::r(comp).scale(&sign(m)),
            _ => NsymElement::zero(Basis::S),
        })
    }

    /// `Σ_m S_{mN+r} z^{mN+r}` for a residue `r`.
    fn residue_series(&self, r: usize, order: usize) -> GradedSeries {
        GradedSeries::from_fn(order, |d| {
            if d % self.order == r {
                NsymElement::s(Composition::single(d))
            } else {
                NsymElement::zero(Basis::S)
            }
        })
    }

    /// Checks on the series `ϱ_j`; the last entry asks that every coefficient
    /// of `(1 + Σ_j ϱ_j)^{-1}` lie in `Sym(N)`.
    pub fn check_varrho(&self, order: usize) -> Result<Vec<IdentityCheck>> {
        let a_inv = self.residue_series(0, order).inverse()?;
        let mut checks = Vec::new();
        let mut total = GradedSeries::one(order);
        for j in 1..self.order {
            let rho = self.varrho(j, order);
            checks.push(IdentityCheck::compare(
                format!("varrho_{j} = (sum S_nN)^-1 (sum S_mN+{j})"),
                &rho,
                &a_inv.mul(&self.residue_series(j, order)),
            ));
            total = total.add(&rho);
        }
        checks.push(IdentityCheck::compare(
            "1 + sum varrho_j = (sum S_nN)^-1 sigma",
            &total,
            &a_inv.mul(&sigma_series(order)),
        ));
        let lambda_neg = GradedSeries::from_fn(order, |n| {
            NsymElement::r(Composition::ones(n)).scale(&sign(n))
        });
        let inverse = total.inverse()?;
        checks.push(IdentityCheck::compare(
            "(1 + sum varrho_j)^-1 = lambda(-z) sum S_nN",
            &inverse,
            &lambda_neg.mul(&self.residue_series(0, order)),
        ));
        let mut outside = None;
        for d in 0..=order {
            if self.membership(inverse.coeff(d))?.is_none() {
                outside = Some(d);
                break;
            }
        }
        checks.push(IdentityCheck {
            name: "(1 + sum varrho_j)^-1 has coefficients in Sym(N)".into(),
            order,
            first_mismatch: outside,
        });
        Ok(checks)
    }

    /// Sweeps pairs `(S^I, S^J)` with `I` ending in a part `≢ 0 mod N` and
    /// `|I| + |J| ≤ max_n`, testing `π_N(S^I S^J) = π_N(S^I) π_N(S^J)`.
    pub fn morphism_sweep(&self, max_n: usize) -> MorphismSweep {
        self.morphism_search(max_n, |i| i.last().is_some_and(|p| p % self.order != 0))
    }

    /// Same sweep with no restriction on `I`; fails first at `(N)`, `(1)`.
    pub fn morphism_sweep_unrestricted(&self, max_n: usize) -> MorphismSweep {
        self.morphism_search(max_n, |_| true)
    }

    fn morphism_search(&self, max_n: usize, admit: impl Fn(&Composition) -> bool) -> MorphismSweep {
        let mut pairs = 0;
        for total in 1..=max_n {
            for a in 1..=total {
                let pi_js: Vec<(Composition, NsymElement)> = compositions_of(total - a)
                    .into_iter()
                    .map(|j| {
                        let p = self.pi(&NsymElement::s(j.clone()));
                        (j, p)
                    })
                    .collect();
                for i in compositions_of(a).into_iter().filter(|i| admit(i)) {
                    let pi_i = self.pi(&NsymElement::s(i.clone()));
                    for (j, pi_j) in &pi_js {
                        pairs += 1;
                        let lhs = self.pi(&NsymElement::s(i.concat(j)));
                        if lhs != &pi_i * pi_j {
                            return MorphismSweep {
                                pairs,
                                counterexample: Some((i, j.clone())),
                            };
                        }
                    }
                }
            }
        }
        MorphismSweep {
            pairs,
            counterexample: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismSweep {
    pub pairs: usize,
    pub counterexample: Option<(Composition, Composition)>,
}
