//! Closed forms for `θ_ζ(S^I)` and `θ_ζ(R_I)` in the `Σ^(N)` and `ρ^(N)` bases,
//! where `θ_ζ` sends `S_n` to `S_n((1−ζ)A)`.

use std::fmt;

use super::{PeakBasis, PeakContext, PeakCoords};
use crate::composition::{
    alpha_stat, b_stat, h_stat, hh_set, hook_factorization, Composition, HhReading, Statistic,
};
use crate::error::Result;
use crate::nsym::NsymElement;
use crate::scalar::Scalar;
use crate::transforms::theta_q;

/// Which `J ∈ 𝔊` a sum ranges over, relative to `I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderReading {
    /// `D(I) ⊆ D(J)`.
    Refines,
    /// `D(J) ⊆ D(I)`.
    Coarsens,
    /// `J ≤ I` in the split poset.
    PosetBelow,
    /// Every `J ∈ 𝔊_{|I|}`.
    Unrestricted,
}

impl OrderReading {
    pub const ALL: [OrderReading; 4] = [
        OrderReading::Refines,
        OrderReading::Coarsens,
        OrderReading::PosetBelow,
        OrderReading::Unrestricted,
    ];

    pub fn holds(self, i: &Composition, j: &Composition, order: usize) -> bool {
        match self {
            OrderReading::Refines => i.descent_set().is_subset(&j.descent_set()),
            OrderReading::Coarsens => j.descent_set().is_subset(&i.descent_set()),
            OrderReading::PosetBelow => {
                crate::composition::poset_leq(j, i, order).unwrap_or(false)
            }
            OrderReading::Unrestricted => true,
        }
    }
}

impl fmt::Display for OrderReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderReading::Refines => "D(I) ⊆ D(J)",
            OrderReading::Coarsens => "D(J) ⊆ D(I)",
            OrderReading::PosetBelow => "J ≤ I",
            OrderReading::Unrestricted => "all J in G",
        })
    }
}

/// Overall unit multiplying the `θ_ζ(S^I)` coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnitFactor {
    One,
    /// `ζ^{|I|}`.
    ZetaPowWeight,
}

impl fmt::Display for UnitFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnitFactor::One => "1",
            UnitFactor::ZetaPowWeight => "ζ^|I|",
        })
    }
}

/// A reading of the `θ_ζ(S^I)` expansion
/// `Σ_J (−1)^{l(I)−l(J)} Π_{l∈ℋ(I,J)} (ζ^{−j_l} − 1) Σ_J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThetaSReading {
    pub hh: HhReading,
    pub order: OrderReading,
    pub unit: UnitFactor,
}

impl ThetaSReading {
    pub fn all() -> Vec<ThetaSReading> {
        let mut out = Vec::new();
        for hh in [HhReading::Literal, HhReading::PartialSum] {
            for order in OrderReading::ALL {
                for unit in [UnitFactor::One, UnitFactor::ZetaPowWeight] {
                    out.push(ThetaSReading { hh, order, unit });
                }
            }
        }
        out
    }
}

impl fmt::Display for ThetaSReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ℋ {}, J over {}, unit {}", self.hh, self.order, self.unit)
    }
}

/// The reading of the `θ_ζ(S^I)` expansion that matches direct computation.
pub const ADOPTED_THETA_S: ThetaSReading = ThetaSReading {
    hh: HhReading::PartialSum,
    order: OrderReading::Refines,
    unit: UnitFactor::ZetaPowWeight,
};

/// The range of `J` in the `θ_ζ(R_I)` expansion that matches direct computation.
pub const ADOPTED_THETA_R: OrderReading = OrderReading::Unrestricted;

fn sign(k: isize) -> Scalar {
    Scalar::from_int(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

impl PeakContext {
    fn zeta_pow(&self, k: i64) -> Scalar {
        Scalar::zeta_pow(self.order, k)
    }

    /// `θ_ζ(S^I)` computed directly, in `Σ` or `ρ` coordinates.
    pub fn theta_zeta_s_direct(&self, comp: &Composition, basis: PeakBasis) -> Result<PeakCoords> {
        self.theta_direct(&NsymElement::s(comp.clone()), basis)
    }

    /// `θ_ζ(R_I)` computed directly, in `Σ` or `ρ` coordinates.
    pub fn theta_zeta_r_direct(&self, comp: &Composition, basis: PeakBasis) -> Result<PeakCoords> {
        self.theta_direct(&NsymElement::r(comp.clone()), basis)
    }

    fn theta_direct(&self, f: &NsymElement, basis: PeakBasis) -> Result<PeakCoords> {
        let image = theta_q(f, &self.zeta);
        Ok(self
            .membership_in(&image, basis)?
            .expect("θ_ζ maps Sym into Sym(N)"))
    }

    /// `θ_ζ(S^I)` in the `Σ` basis from the closed form under `reading`.
    pub fn decomp_theta_s(&self, comp: &Composition, reading: ThetaSReading) -> Result<PeakCoords> {
        let n = comp.weight();
        let unit = match reading.unit {
            UnitFactor::One => Scalar::one(),
            UnitFactor::ZetaPowWeight => self.zeta_pow(n as i64),
        };
        let mut out = PeakCoords::new(PeakBasis::Sigma, self.order);
        for j in self.g_set(n) {
            if !reading.order.holds(comp, &j, self.order) {
                continue;
            }
            let mut c = &sign(comp.len() as isize - j.len() as isize) * &unit;
            for l in hh_set(comp, &j, reading.hh)?.iter() {
                let part = j.parts()[l - 1] as i64;
                c = &c * &(&self.zeta_pow(-part) - &Scalar::one());
            }
            out.add(j, &c);
        }
        Ok(out)
    }

    /// `θ_ζ(R_I) = Σ_J (−1)^{l(I)−l(J)} ζ^{α(I,J)} (1 − ζ^{j_last}) Σ_J`.
    pub fn decomp_theta_r(&self, comp: &Composition, range: OrderReading) -> Result<PeakCoords> {
        let mut out = PeakCoords::new(PeakBasis::Sigma, self.order);
        for j in self.g_set(comp.weight()) {
            if !range.holds(comp, &j, self.order) {
                continue;
            }
            let last = j.last().expect("non-empty") as i64;
            let c = &(&sign(comp.len() as isize - j.len() as isize)
                * &self.zeta_pow(alpha_stat(comp, &j)? as i64))
                * &(&Scalar::one() - &self.zeta_pow(last));
            out.add(j, &c);
        }
        Ok(out)
    }

    /// `θ_ζ(S^I) = (1−ζ)^{l(I)} Σ_{J ∈ 𝔊} (−ζ)^{h(I,J)} ρ_J`.
    pub fn decomp_s_on_rho(&self, comp: &Composition) -> Result<PeakCoords> {
        let one_minus = &Scalar::one() - &self.zeta;
        let minus_zeta = -&self.zeta;
        let lead = one_minus.pow(comp.len() as i64)?;
        let mut out = PeakCoords::new(PeakBasis::Rho, self.order);
        for j in self.g_set(comp.weight()) {
            if let Statistic::Finite(h) = h_stat(comp, &j)? {
                out.add(j, &(&lead * &minus_zeta.pow(h as i64)?));
            }
        }
        Ok(out)
    }

    /// `θ_ζ(R_I) = Σ_{J ∈ 𝔊} (1−ζ)^{hl(J)} (−ζ)^{b(I,J)} ρ_J`.
    pub fn decomp_r_on_rho(&self, comp: &Composition) -> Result<PeakCoords> {
        let one_minus = &Scalar::one() - &self.zeta;
        let minus_zeta = -&self.zeta;
        let mut out = PeakCoords::new(PeakBasis::Rho, self.order);
        for j in self.g_set(comp.weight()) {
            if let Statistic::Finite(b) = b_stat(comp, &j)? {
                let hl = hook_factorization(&j)?.hook_length as i64;
                out.add(j, &(&one_minus.pow(hl)? * &minus_zeta.pow(b as i64)?));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::compositions_of;

    #[test]
    fn adopted_readings_match_direct_computation() {
        for order in 2..=4 {
            let ctx = PeakContext::new(order).unwrap();
            for n in 1..=5 {
                for i in compositions_of(n) {
                    let s_sigma = ctx.theta_zeta_s_direct(&i, PeakBasis::Sigma).unwrap();
                    let r_sigma = ctx.theta_zeta_r_direct(&i, PeakBasis::Sigma).unwrap();
                    let s_rho = ctx.theta_zeta_s_direct(&i, PeakBasis::Rho).unwrap();
                    let r_rho = ctx.theta_zeta_r_direct(&i, PeakBasis::Rho).unwrap();
                    assert_eq!(ctx.decomp_theta_s(&i, ADOPTED_THETA_S).unwrap(), s_sigma, "N={order} S{i}");
                    assert_eq!(ctx.decomp_theta_r(&i, ADOPTED_THETA_R).unwrap(), r_sigma, "N={order} R{i}");
                    assert_eq!(ctx.decomp_s_on_rho(&i).unwrap(), s_rho, "N={order} S{i}");
                    assert_eq!(ctx.decomp_r_on_rho(&i).unwrap(), r_rho, "N={order} R{i}");
                }
            }
        }
    }

    #[test]
    fn only_the_adopted_theta_s_reading_survives() {
        let ctx = PeakContext::new(3).unwrap();
        let survivors: Vec<ThetaSReading> = ThetaSReading::all()
            .into_iter()
            .filter(|&reading| {
                (1..=4).all(|n| {
                    compositions_of(n).iter().all(|i| {
                        ctx.decomp_theta_s(i, reading).unwrap()
                            == ctx.theta_zeta_s_direct(i, PeakBasis::Sigma).unwrap()
                    })
                })
            })
            .collect();
        assert_eq!(survivors, vec![ADOPTED_THETA_S]);
    }
}
