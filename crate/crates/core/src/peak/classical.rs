//! The classical peak algebra at order 2: peak functions `Π_I` and `θ_{−1}` on ribbons.

use super::{PeakBasis, PeakCoords};
use crate::composition::{compositions_of, Composition};
use crate::error::{Error, Result};
use crate::nsym::{Basis, NsymElement};
use crate::scalar::Scalar;

/// Peak compositions of `n`: every part except the last is at least 2.
pub fn peak_compositions(n: usize) -> Vec<Composition> {
    compositions_of(n)
        .into_iter()
        .filter(Composition::is_peak_composition)
        .collect()
}

/// `Π_I = Σ_{P(J) = D(I)} R_J` for a peak composition `I`.
pub fn classical_peak_function(comp: &Composition) -> Result<NsymElement> {
    if !comp.is_peak_composition() {
        return Err(Error::InvalidComposition(format!(
            "{comp} is not a peak composition"
        )));
    }
    let peaks = comp.descent_set();
    Ok(NsymElement::from_terms(
        Basis::R,
        compositions_of(comp.weight())
            .into_iter()
            .filter(|j| j.peak_set() == peaks)
            .map(|j| (j, Scalar::one())),
    ))
}

/// `θ_{−1}(R_I) = Σ 2^{|D(J)|+1} Π_J` over peak compositions `J` with
/// `D(J) ⊆ D(I) △ (D(I) + 1)`.
pub fn theta_minus1_ribbon_expansion(comp: &Composition) -> PeakCoords {
    let d = comp.descent_set();
    let allowed = d.symmetric_difference(&d.shifted(1));
    PeakCoords::from_terms(
        PeakBasis::Pi,
        2,
        peak_compositions(comp.weight())
            .into_iter()
            .filter(|j| j.descent_set().is_subset(&allowed))
            .map(|j| {
                let c = Scalar::from_int(1i64 << (j.len()));
                (j, c)
            }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::theta_q;

    fn c(p: &[usize]) -> Composition {
        Composition::from(p)
    }

    #[test]
    fn peak_functions() {
        assert_eq!(classical_peak_function(&c(&[1])).unwrap(), NsymElement::r(c(&[1])));
        let pi_21 = classical_peak_function(&c(&[2, 1])).unwrap();
        assert_eq!(pi_21, NsymElement::r(c(&[2, 1])));
        let pi_3 = classical_peak_function(&c(&[3])).unwrap();
        let want = [c(&[3]), c(&[1, 2]), c(&[1, 1, 1])]
            .into_iter()
            .fold(NsymElement::zero(Basis::R), |acc, j| &acc + &NsymElement::r(j));
        assert_eq!(pi_3, want);
        assert!(classical_peak_function(&c(&[1, 2])).is_err());
        assert_eq!(peak_compositions(6).len(), 8);
        // the Π_I partition the ribbons of weight n
        for n in 1..=7 {
            let total = peak_compositions(n)
                .iter()
                .fold(NsymElement::zero(Basis::R), |acc, i| {
                    &acc + &classical_peak_function(i).unwrap()
                });
            assert_eq!(total.len(), 1 << (n - 1));
        }
    }

    #[test]
    fn theta_minus_one_on_ribbons() {
        let minus_one = Scalar::from_int(-1);
        for n in 1..=6 {
            for i in compositions_of(n) {
                let direct = theta_q(&NsymElement::r(i.clone()), &minus_one);
                let mut via = NsymElement::zero(Basis::R);
                for (j, x) in &theta_minus1_ribbon_expansion(&i).terms {
                    via = &via + &classical_peak_function(j).unwrap().scale(x);
                }
                assert_eq!(direct, via, "R{i}");
            }
        }
    }
}
