//! Dominant weights of types B and C, as partitions.
//!
//! Type C weights are partitions `λ₁ ≥ … ≥ λ_n ≥ 0`. Type B weights
//! `Σ α_i ω_i` are identified with the partition `μ = (n^{α_n}, …, 1^{α₁})`
//! and may also be given by the coefficient vector `(α₁, …, α_n)`.
//! Both inputs normalize to `μ`.
//!
//! Each weight carries its list of column heights ("groups"): the conjugate
//! partition `λ'` in type C, the parts of `μ` in type B. Group `i` is the
//! `i`-th entry; the λ-chain and the fillings list groups from the last one
//! to the first.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::weyl::{CartanType, WeightVec};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DominantWeight {
    cartan: CartanType,
    n: usize,
    parts: Vec<usize>,
    vector: WeightVec,
    groups: Vec<usize>,
}

impl DominantWeight {
    /// Type C weight from a partition with at most `n` parts.
    pub fn type_c(n: usize, parts: &[usize]) -> Result<DominantWeight> {
        check_rank(n)?;
        let parts: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
        if parts.len() > n {
            return Err(Error::NotDominant(format!(
                "{parts:?} has more than {n} parts"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        let mut coords: Vec<i32> = parts.iter().map(|&p| p as i32).collect();
        coords.resize(n, 0);
        let largest = parts.first().copied().unwrap_or(0);
        let groups = (1..=largest)
            .map(|i| parts.iter().filter(|&&p| p >= i).count())
            .collect();
        Ok(DominantWeight {
            cartan: CartanType::C,
            n,
            parts,
            vector: WeightVec::from_integers(&coords),
            groups,
        })
    }

    /// Type B weight from `μ = (n^{α_n}, …, 1^{α₁})`.
    pub fn type_b_partition(n: usize, mu: &[usize]) -> Result<DominantWeight> {
        check_rank(n)?;
        let mu: Vec<usize> = mu.iter().copied().filter(|&p| p > 0).collect();
        if let Some(&p) = mu.iter().find(|&&p| p > n) {
            return Err(Error::NotDominant(format!(
                "part {p} of {mu:?} exceeds n = {n}"
            )));
        }
        if mu.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(format!(
                "{mu:?} is not weakly decreasing"
            )));
        }
        let mut doubled = vec![0i32; n];
        for &m in &mu {
            if m == n {
                doubled.iter_mut().for_each(|c| *c += 1);
            } else {
                doubled[..m].iter_mut().for_each(|c| *c += 2);
            }
        }
        Ok(DominantWeight {
            cartan: CartanType::B,
            n,
            groups: mu.clone(),
            parts: mu,
            vector: WeightVec::from_doubled(doubled),
        })
    }

    /// Type B weight `Σ α_i ω_i` from `(α₁, …, α_n)`.
    pub fn type_b_coefficients(n: usize, alpha: &[usize]) -> Result<DominantWeight> {
        check_rank(n)?;
        if alpha.len() != n {
            return Err(Error::NotDominant(format!(
                "expected {n} fundamental-weight coefficients, got {}",
                alpha.len()
            )));
        }
        let mu: Vec<usize> = (1..=n)
            .rev()
            .flat_map(|i| std::iter::repeat_n(i, alpha[i - 1]))
            .collect();
        DominantWeight::type_b_partition(n, &mu)
    }

    /// Dispatches on the type: a partition `λ` for C, `μ` for B.
    pub fn from_parts(cartan: CartanType, n: usize, parts: &[usize]) -> Result<DominantWeight> {
        match cartan {
            CartanType::C => DominantWeight::type_c(n, parts),
            CartanType::B => DominantWeight::type_b_partition(n, parts),
        }
    }

    pub fn cartan(&self) -> CartanType {
        self.cartan
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `λ` (type C) or `μ` (type B).
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `ε`-coordinates, doubled.
    pub fn vector(&self) -> &WeightVec {
        &self.vector
    }

    /// Column heights by group; entry `i-1` belongs to group `i`.
    pub fn groups(&self) -> &[usize] {
        &self.groups
    }

    /// Fundamental-weight coefficients `(α₁, …, α_n)`.
    pub fn coefficients(&self) -> Vec<usize> {
        match self.cartan {
            CartanType::B => (1..=self.n)
                .map(|i| self.parts.iter().filter(|&&p| p == i).count())
                .collect(),
            CartanType::C => {
                let mut lam = self.parts.clone();
                lam.resize(self.n + 1, 0);
                (0..self.n).map(|i| lam[i] - lam[i + 1]).collect()
            }
        }
    }

    pub fn is_regular(&self) -> bool {
        self.coefficients().iter().all(|&a| a > 0)
    }

    pub fn require_regular(&self) -> Result<()> {
        if self.is_regular() {
            Ok(())
        } else {
            Err(Error::NotRegular(format!(
                "{self} (every fundamental-weight coefficient must be positive)"
            )))
        }
    }
}

fn check_rank(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidRank(n))
    } else {
        Ok(())
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{} ({})",
            self.cartan,
            self.n,
            self.parts.iter().join(",")
        )
    }
}

impl fmt::Debug for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
