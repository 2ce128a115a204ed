//! Weyl characters, orbit sums and dimensions of types B and C.
//!
//! These serve as oracles for the `t = 0` and `t = 1` specializations.

use std::collections::BTreeSet;

use crate::chains::positive_roots;
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::weight::DominantWeight;
use crate::weyl::{act_on_weight, enumerate_group, CartanType, WeightVec};

/// Half the sum of the positive roots, doubled.
pub fn rho(cartan: CartanType, n: usize) -> WeightVec {
    let doubled = (1..=n as i32)
        .rev()
        .map(|k| match cartan {
            CartanType::C => 2 * k,
            CartanType::B => 2 * k - 1,
        })
        .collect();
    WeightVec::from_doubled(doubled)
}

fn alternant(v: &WeightVec) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero(v.n());
    for w in enumerate_group(v.n())? {
        let sign = if w.length() % 2 == 0 { 1 } else { -1 };
        out.add_monomial(act_on_weight(&w, v), sign);
    }
    Ok(out)
}

/// `Σ_w sgn(w) x^{w(λ+ρ)} / Σ_w sgn(w) x^{w(ρ)}`, divided exactly.
pub fn weyl_character(weight: &DominantWeight) -> Result<LaurentPoly> {
    let rho = rho(weight.cartan(), weight.n());
    let shifted = WeightVec::from_doubled(
        weight
            .vector()
            .doubled()
            .iter()
            .zip(rho.doubled())
            .map(|(a, b)| a + b)
            .collect(),
    );
    alternant(&shifted)?.div_exact(&alternant(&rho)?)
}

/// `Σ_{μ ∈ Wλ} x^μ`.
pub fn orbit_sum(weight: &DominantWeight) -> Result<LaurentPoly> {
    let orbit: BTreeSet<WeightVec> = enumerate_group(weight.n())?
        .iter()
        .map(|w| act_on_weight(w, weight.vector()))
        .collect();
    let mut out = LaurentPoly::zero(weight.n());
    for v in orbit {
        out.add_monomial(v, 1);
    }
    Ok(out)
}

/// `∏_{α>0} ⟨λ+ρ, α∨⟩ / ⟨ρ, α∨⟩`.
pub fn dimension(weight: &DominantWeight) -> Result<u128> {
    let (cartan, n) = (weight.cartan(), weight.n());
    let rho = rho(cartan, n);
    let (mut num, mut den) = (1u128, 1u128);
    for root in positive_roots(cartan, n) {
        let coroot = root.coroot(n);
        let r = rho.doubled_pairing(&coroot);
        let l = weight.vector().doubled_pairing(&coroot);
        num = num.checked_mul((l + r) as u128).ok_or(Error::Overflow)?;
        den = den.checked_mul(r as u128).ok_or(Error::Overflow)?;
    }
    if num % den != 0 {
        return Err(Error::InexactDivision);
    }
    Ok(num / den)
}
