//! Exact polynomial arithmetic.
//!
//! [`TPoly`] is a polynomial in `t` with integer coefficients. [`HLPoly`] is a
//! Laurent polynomial in `x_1 … x_n` with [`TPoly`] coefficients, keyed by
//! doubled exponent vectors. [`LaurentPoly`] is the `t`-free analogue used for
//! characters and specializations.
//!
//! Coefficients are `i64` with checked arithmetic; overflow panics rather
//! than wrapping.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::{act_on_weight, SignedPerm, WeightVec};

fn add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("coefficient overflow")
}

fn mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("coefficient overflow")
}

/// Polynomial in `t`, coefficients by ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TPoly(Vec<i64>);

impl TPoly {
    pub fn zero() -> TPoly {
        TPoly(Vec::new())
    }

    pub fn constant(c: i64) -> TPoly {
        TPoly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> TPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        TPoly(coeffs)
    }

    /// `t^a (1-t)^b`, expanded.
    pub fn t_pow_one_minus_t(a: usize, b: usize) -> TPoly {
        let mut coeffs = vec![0i64; a + b + 1];
        let mut binom = 1i64;
        for k in 0..=b {
            coeffs[a + k] = if k % 2 == 0 { binom } else { -binom };
            // C(b, k+1) = C(b, k) (b-k) / (k+1)
            binom = mul(binom, (b - k) as i64) / (k as i64 + 1);
        }
        TPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add_assign(&mut self, other: &TPoly) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, &b) in self.0.iter_mut().zip(&other.0) {
            *a = add(*a, b);
        }
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero();
        }
        let mut out = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = add(out[i + j], mul(a, b));
            }
        }
        TPoly::from_coeffs(out)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| add(mul(acc, t), c))
    }

    /// `Some((a, b))` if the polynomial equals `t^a (1-t)^b`.
    pub fn as_t_one_minus_t(&self) -> Option<(usize, usize)> {
        let a = self.0.iter().position(|&c| c != 0)?;
        let b = self.0.len() - 1 - a;
        (TPoly::t_pow_one_minus_t(a, b) == *self).then_some((a, b))
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "t")?;
                    if deg > 1 {
                        write!(f, "^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders `x^v` as `x1^2*x2^-1`, with `x1^(1/2)` for half-integers and `1`
/// for the empty monomial.
pub fn render_monomial(v: &WeightVec) -> String {
    let parts: Vec<String> = v
        .doubled()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(i, &d)| {
            let var = format!("x{}", i + 1);
            if d % 2 != 0 {
                format!("{var}^({d}/2)")
            } else if d == 2 {
                var
            } else {
                format!("{var}^{}", d / 2)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// JSON form of one term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub x: Vec<i32>,
    pub t: Vec<i64>,
}

/// Laurent polynomial in `x` with coefficients in `Z[t]`.
#[derive(Clone, PartialEq, Eq)]
pub struct HLPoly {
    n: usize,
    terms: BTreeMap<WeightVec, TPoly>,
}

impl HLPoly {
    pub fn zero(n: usize) -> HLPoly {
        HLPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `t^a (1-t)^b x^v`.
    pub fn add_term(&mut self, a: usize, b: usize, v: WeightVec) {
        self.add_coefficient(v, &TPoly::t_pow_one_minus_t(a, b));
    }

    pub fn add_coefficient(&mut self, v: WeightVec, c: &TPoly) {
        debug_assert_eq!(v.n(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(v) {
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    /// Adds every term of `other`.
    pub fn merge(mut self, other: HLPoly) -> HLPoly {
        for (v, c) in other.terms {
            self.add_coefficient(v, &c);
        }
        self
    }

    pub fn coefficient(&self, v: &WeightVec) -> TPoly {
        self.terms.get(v).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeightVec, &TPoly)> {
        self.terms.iter()
    }

    pub fn specialize_t(&self, value: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.n);
        for (v, c) in &self.terms {
            out.add_monomial(v.clone(), c.eval(value));
        }
        out
    }

    pub fn apply_group_element(&self, w: &SignedPerm) -> HLPoly {
        let mut out = HLPoly::zero(self.n);
        for (v, c) in &self.terms {
            out.add_coefficient(act_on_weight(w, v), c);
        }
        out
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(v, c)| TermJson {
                x: v.doubled().to_vec(),
                t: c.coeffs().to_vec(),
            })
            .collect()
    }

    pub fn from_json(n: usize, terms: &[TermJson]) -> Result<HLPoly> {
        let mut out = HLPoly::zero(n);
        for term in terms {
            if term.x.len() != n {
                return Err(Error::Malformed(format!(
                    "exponent vector {:?} has length != {n}",
                    term.x
                )));
            }
            out.add_coefficient(
                WeightVec::from_doubled(term.x.clone()),
                &TPoly::from_coeffs(term.t.clone()),
            );
        }
        Ok(out)
    }
}

impl fmt::Display for HLPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (v, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono = render_monomial(v);
            let single = c.coeffs().iter().filter(|&&x| x != 0).count() == 1;
            if mono == "1" {
                if single {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "({c})")?;
                }
            } else if *c == TPoly::constant(1) {
                write!(f, "{mono}")?;
            } else if single && c.coeffs().iter().all(|&x| x >= 0) {
                write!(f, "{c}*{mono}")?;
            } else {
                write!(f, "({c})*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HLPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Laurent polynomial in `x` with integer coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<WeightVec, i64>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> LaurentPoly {
        LaurentPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(v: WeightVec, c: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero(v.n());
        p.add_monomial(v, c);
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_monomial(&mut self, v: WeightVec, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(v.clone()).or_insert(0);
        *entry = add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&v);
        }
    }

    pub fn coefficient(&self, v: &WeightVec) -> i64 {
        self.terms.get(v).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeightVec, i64)> {
        self.terms.iter().map(|(v, &c)| (v, c))
    }

    /// Value at `x = (1, …, 1)`.
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().fold(0, |acc, &c| add(acc, c))
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (v, &c) in &other.terms {
            out.add_monomial(v.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.n);
        for (u, &a) in &self.terms {
            for (v, &b) in &other.terms {
                out.add_monomial(shift(u, v, 1), mul(a, b));
            }
        }
        out
    }

    pub fn apply_group_element(&self, w: &SignedPerm) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.n);
        for (v, &c) in &self.terms {
            out.add_monomial(act_on_weight(w, v), c);
        }
        out
    }

    fn leading(&self) -> Option<(&WeightVec, i64)> {
        self.terms.iter().next_back().map(|(v, &c)| (v, c))
    }

    /// Exact quotient `self / divisor`, by long division in the lexicographic
    /// monomial order. Errors if a remainder would be left.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        let (lead_v, lead_c) = divisor.leading().ok_or(Error::InexactDivision)?;
        let lowest = |p: &LaurentPoly| p.terms.keys().next().cloned();
        let mut rem = self.clone();
        let mut quotient = LaurentPoly::zero(self.n);
        // The quotient's support is lex-bounded below by low(self) - low(divisor).
        let floor = match (lowest(self), lowest(divisor)) {
            (Some(a), Some(b)) => shift(&a, &b, -1),
            _ => return Ok(quotient),
        };
        while let Some((v, c)) = rem.leading() {
            if c % lead_c != 0 {
                return Err(Error::InexactDivision);
            }
            let q_v = shift(v, lead_v, -1);
            if q_v < floor {
                return Err(Error::InexactDivision);
            }
            let q = LaurentPoly::monomial(q_v, c / lead_c);
            rem = rem.sub(&q.mul(divisor));
            quotient = quotient.add(&q);
        }
        Ok(quotient)
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (v, &c) in &other.terms {
            out.add_monomial(v.clone(), c);
        }
        out
    }

    /// `(doubled exponent, coefficient)` pairs in canonical order.
    pub fn to_json(&self) -> Vec<(Vec<i32>, i64)> {
        self.terms
            .iter()
            .map(|(v, &c)| (v.doubled().to_vec(), c))
            .collect()
    }
}

fn shift(u: &WeightVec, v: &WeightVec, sign: i32) -> WeightVec {
    WeightVec::from_doubled(
        u.doubled()
            .iter()
            .zip(v.doubled())
            .map(|(a, b)| a + sign * b)
            .collect(),
    )
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (v, &c)) in self.terms.iter().enumerate() {
            let mono = render_monomial(v);
            let mag = c.unsigned_abs();
            match (k, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mono == "1" {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn wv(c: &[i32]) -> WeightVec {
        WeightVec::from_integers(c)
    }

    #[test]
    fn t_one_minus_t_expansion() {
        assert_eq!(TPoly::t_pow_one_minus_t(0, 0).coeffs(), &[1]);
        assert_eq!(TPoly::t_pow_one_minus_t(0, 1).coeffs(), &[1, -1]);
        assert_eq!(TPoly::t_pow_one_minus_t(1, 3).coeffs(), &[0, 1, -3, 3, -1]);
        assert_eq!(
            TPoly::t_pow_one_minus_t(2, 3).as_t_one_minus_t(),
            Some((2, 3))
        );
        assert_eq!(TPoly::from_coeffs(vec![1, -1, 1]).as_t_one_minus_t(), None);
    }

    #[test]
    fn add_term_examples() {
        let mut p = HLPoly::zero(2);
        p.add_term(0, 1, WeightVec::zero(2));
        assert_eq!(p.coefficient(&WeightVec::zero(2)).coeffs(), &[1, -1]);

        // (1-t) + t(1-t) + (1-t) = (t+2)(1-t) = 2 - t - t^2
        let x2 = wv(&[0, 1]);
        let mut q = HLPoly::zero(2);
        q.add_term(0, 1, x2.clone());
        q.add_term(1, 1, x2.clone());
        q.add_term(0, 1, x2.clone());
        let expected = TPoly::from_coeffs(vec![2, 1]).mul(&TPoly::from_coeffs(vec![1, -1]));
        assert_eq!(q.coefficient(&x2), expected);

        let mut r = HLPoly::zero(2);
        r.add_term(0, 0, x2.clone());
        r.add_term(0, 0, x2.clone());
        assert_eq!(r.coefficient(&x2), TPoly::constant(2));
    }

    #[test]
    fn cancellation_removes_term() {
        let mut p = HLPoly::zero(1);
        p.add_coefficient(wv(&[1]), &TPoly::constant(3));
        p.add_coefficient(wv(&[1]), &TPoly::constant(-3));
        assert!(p.is_zero());
    }

    #[test]
    fn specialize_examples() {
        let one_minus_t = TPoly::t_pow_one_minus_t(0, 1);
        assert_eq!(one_minus_t.eval(0), 1);
        assert_eq!(one_minus_t.eval(1), 0);
        let c = TPoly::from_coeffs(vec![2, 1]).mul(&one_minus_t);
        assert_eq!(c.eval(0), 2);
        assert_eq!(c.eval(1), 0);
    }

    #[test]
    fn group_action() {
        let mut p = HLPoly::zero(2);
        p.add_term(0, 0, wv(&[1, 1]));
        assert_eq!(p.apply_group_element(&SignedPerm::identity(2)), p);
        let q = p.apply_group_element(&SignedPerm::longest(2));
        assert_eq!(q.coefficient(&wv(&[-1, -1])), TPoly::constant(1));
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn rendering() {
        let mut p = HLPoly::zero(2);
        p.add_coefficient(wv(&[1, -1]), &TPoly::from_coeffs(vec![2, 1, -2]));
        p.add_coefficient(wv(&[2, 1]), &TPoly::constant(1));
        p.add_coefficient(
            WeightVec::from_doubled(vec![3, 1]),
            &TPoly::from_coeffs(vec![0, 1]),
        );
        assert_eq!(
            p.to_string(),
            "(2 + t - 2t^2)*x1*x2^-1 + t*x1^(3/2)*x2^(1/2) + x1^2*x2"
        );
        assert_eq!(HLPoly::zero(2).to_string(), "0");
        assert_eq!(
            TPoly::from_coeffs(vec![0, -1, 0, 3]).to_string(),
            "-t + 3t^3"
        );
    }

    #[test]
    fn laurent_division() {
        let x = |c: &[i32]| LaurentPoly::monomial(wv(c), 1);
        // (x1 - x1^-1)(x2 + 1 + x2^-1)
        let a = x(&[1, 0]).sub(&x(&[-1, 0]));
        let b = x(&[0, 1]).add(&x(&[0, 0])).add(&x(&[0, -1]));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        let bad = prod.add(&x(&[0, 0]));
        assert!(bad.div_exact(&a).is_err());
    }

    fn arb_terms() -> impl Strategy<Value = Vec<(usize, usize, Vec<i32>)>> {
        prop::collection::vec(
            (0usize..4, 0usize..4, prop::collection::vec(-3i32..=3, 2)),
            0..12,
        )
    }

    fn build(terms: &[(usize, usize, Vec<i32>)]) -> HLPoly {
        let mut p = HLPoly::zero(2);
        for (a, b, v) in terms {
            p.add_term(*a, *b, WeightVec::from_doubled(v.clone()));
        }
        p
    }

    proptest! {
        #[test]
        fn add_term_order_independent(mut terms in arb_terms()) {
            let p = build(&terms);
            terms.reverse();
            prop_assert_eq!(build(&terms), p);
        }

        #[test]
        fn json_round_trip(terms in arb_terms()) {
            let p = build(&terms);
            let json = serde_json::to_string(&p.to_json()).unwrap();
            let back: Vec<TermJson> = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(HLPoly::from_json(2, &back).unwrap(), p);
        }

        #[test]
        fn specialization_commutes_with_action(terms in arb_terms(), g in 0usize..8, t in 0i64..=1) {
            let p = build(&terms);
            let w = crate::weyl::enumerate_group(2).unwrap()[g].clone();
            prop_assert_eq!(
                p.apply_group_element(&w).specialize_t(t),
                p.specialize_t(t).apply_group_element(&w)
            );
        }
    }
}
