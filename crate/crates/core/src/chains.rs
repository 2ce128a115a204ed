//! ω_k-chains and λ-chains of types B and C.
//!
//! A λ-chain is the concatenation of ω_k-chains, one per group of the
//! weight (see [`crate::weight`]), listed from the last group to the first.
//! Each ω_k-chain is itself a concatenation of segments `Γ'_j` ("primed")
//! and `Γ_j(k)` ("unprimed"); the segment structure is kept because the
//! filling shape and the transition rules are read off from it.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::weight::DominantWeight;
use crate::weyl::{CartanType, Reflection, Root};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SegmentKind {
    /// `Γ'_k`
    Primed(usize),
    /// `Γ_j(k)`
    Unprimed(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub kind: SegmentKind,
    pub roots: Vec<Root>,
}

fn primed_segment(cartan: CartanType, k: usize) -> Segment {
    let mut roots: Vec<Root> = (1..k)
        .map(|r| Root::new(cartan, Reflection::SignedTransposition(r, k)))
        .collect();
    if cartan == CartanType::B {
        roots.push(Root::new(cartan, Reflection::SignChange(k)));
    }
    Segment {
        kind: SegmentKind::Primed(k),
        roots,
    }
}

fn unprimed_segment(cartan: CartanType, n: usize, k: usize, j: usize) -> Segment {
    let mut roots: Vec<Root> = (1..j)
        .map(|r| Root::new(cartan, Reflection::SignedTransposition(r, j)))
        .collect();
    roots.extend((k + 1..=n).map(|l| Root::new(cartan, Reflection::SignedTransposition(j, l))));
    roots.push(Root::new(cartan, Reflection::SignChange(j)));
    roots.extend(
        (k + 1..=n)
            .rev()
            .map(|l| Root::new(cartan, Reflection::Transposition(j, l))),
    );
    Segment {
        kind: SegmentKind::Unprimed(j),
        roots,
    }
}

/// The ω_k-chain `Γ(k)` split into segments.
///
/// Type C: `Γ'_2 … Γ'_k Γ_1(k) … Γ_k(k)`. Type B, `k < n`:
/// `Γ'_1 … Γ'_k Γ_1(k) … Γ_k(k)`; `k = n`: `Γ_1(n) … Γ_n(n)`.
pub fn omega_chain(cartan: CartanType, n: usize, k: usize) -> Result<Vec<Segment>> {
    if k == 0 || k > n {
        return Err(Error::InvalidOmegaIndex { k, n });
    }
    let first_primed = match cartan {
        CartanType::C => 2,
        CartanType::B if k == n => k + 1,
        CartanType::B => 1,
    };
    let mut segments: Vec<Segment> = (first_primed..=k)
        .map(|j| primed_segment(cartan, j))
        .collect();
    segments.extend((1..=k).map(|j| unprimed_segment(cartan, n, k, j)));
    Ok(segments)
}

/// Location of one segment inside a λ-chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentSpan {
    /// Group `i` (1-based, as in `C_{ij}`).
    pub group: usize,
    /// Column height of the group, i.e. the `k` of `Γ(k)`.
    pub height: usize,
    pub kind: SegmentKind,
    /// 0-based positions in the chain.
    pub range: Range<usize>,
}

#[derive(Clone, Debug)]
pub struct LambdaChain {
    weight: DominantWeight,
    roots: Vec<Root>,
    levels: Vec<usize>,
    segments: Vec<SegmentSpan>,
    segment_of: Vec<usize>,
}

impl LambdaChain {
    /// The canonical λ-chain `Γ^{last} … Γ^1`.
    pub fn new(weight: &DominantWeight) -> Result<LambdaChain> {
        weight.require_regular()?;
        Ok(LambdaChain::build(weight))
    }

    /// Same construction without the regularity requirement; R1/R2 still
    /// hold for any dominant weight.
    pub fn for_dominant(weight: &DominantWeight) -> Result<LambdaChain> {
        Ok(LambdaChain::build(weight))
    }

    fn build(weight: &DominantWeight) -> LambdaChain {
        let (cartan, n) = (weight.cartan(), weight.n());
        let mut roots = Vec::new();
        let mut segments = Vec::new();
        let mut segment_of = Vec::new();
        for (idx, &height) in weight.groups().iter().enumerate().rev() {
            let group = idx + 1;
            for seg in omega_chain(cartan, n, height).expect("group height within 1..=n") {
                let start = roots.len();
                roots.extend(seg.roots);
                segment_of.extend(std::iter::repeat_n(segments.len(), roots.len() - start));
                segments.push(SegmentSpan {
                    group,
                    height,
                    kind: seg.kind,
                    range: start..roots.len(),
                });
            }
        }
        let mut seen: HashMap<Reflection, usize> = HashMap::new();
        let levels = roots
            .iter()
            .map(|r| {
                let c = seen.entry(r.reflection).or_insert(0);
                *c += 1;
                *c
            })
            .collect();
        LambdaChain {
            weight: weight.clone(),
            roots,
            levels,
            segments,
            segment_of,
        }
    }

    pub fn weight(&self) -> &DominantWeight {
        &self.weight
    }

    pub fn cartan(&self) -> CartanType {
        self.weight.cartan()
    }

    pub fn n(&self) -> usize {
        self.weight.n()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// `l_k = |{j ≤ k : β_j = β_k}|`.
    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn segments(&self) -> &[SegmentSpan] {
        &self.segments
    }

    /// Index into [`segments`](Self::segments) of the segment holding a
    /// 0-based chain position.
    pub fn segment_index(&self, position: usize) -> usize {
        self.segment_of[position]
    }

    /// One root per line, `|` between segments, `||` between groups.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (k, seg) in self.segments.iter().enumerate() {
            if k > 0 {
                let sep = if self.segments[k - 1].group != seg.group {
                    "||"
                } else {
                    "|"
                };
                out.push_str(sep);
                out.push('\n');
            }
            for r in &self.roots[seg.range.clone()] {
                out.push_str(&r.to_string());
                out.push('\n');
            }
        }
        out
    }
}

impl fmt::Display for LambdaChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, seg) in self.segments.iter().enumerate() {
            if k > 0 {
                parts.push(if self.segments[k - 1].group != seg.group {
                    "||".into()
                } else {
                    "|".into()
                });
            }
            parts.push(self.roots[seg.range.clone()].iter().join(","));
        }
        write!(f, "({})", parts.join(" "))
    }
}

/// All positive roots of the given type.
pub fn positive_roots(cartan: CartanType, n: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(Root::new(cartan, Reflection::Transposition(i, j)));
            out.push(Root::new(cartan, Reflection::SignedTransposition(i, j)));
        }
        out.push(Root::new(cartan, Reflection::SignChange(i)));
    }
    out
}

/// Triples `(α, β, γ)` of positive roots with `γ∨ = α∨ + β∨`, each unordered
/// pair `{α, β}` listed once.
pub fn r2_triples(cartan: CartanType, n: usize) -> Vec<(Root, Root, Root)> {
    let roots = positive_roots(cartan, n);
    let by_coroot: HashMap<Vec<i32>, Root> = roots.iter().map(|r| (r.coroot(n), *r)).collect();
    let mut out = Vec::new();
    for (x, a) in roots.iter().enumerate() {
        for b in &roots[x + 1..] {
            let sum: Vec<i32> = a
                .coroot(n)
                .iter()
                .zip(b.coroot(n))
                .map(|(p, q)| p + q)
                .collect();
            if let Some(g) = by_coroot.get(&sum) {
                out.push((*a, *b, *g));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainViolation {
    /// A root occurs the wrong number of times.
    R1 {
        root: Root,
        expected: i64,
        found: usize,
    },
    /// The `(α, β, γ)`-subsequence is not a concatenation of `(γ,α)`/`(γ,β)`.
    R2 {
        alpha: Root,
        beta: Root,
        gamma: Root,
        subsequence: Vec<Root>,
    },
}

impl fmt::Display for ChainViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainViolation::R1 {
                root,
                expected,
                found,
            } => {
                write!(f, "R1: {root} occurs {found} times, expected {expected}")
            }
            ChainViolation::R2 {
                alpha,
                beta,
                gamma,
                subsequence,
            } => write!(
                f,
                "R2: triple ({alpha}, {beta}, {gamma}) has subsequence ({})",
                subsequence.iter().join(",")
            ),
        }
    }
}

/// Checks the λ-chain criterion: (R1) each positive root `α` occurs
/// `⟨λ, α∨⟩` times; (R2) for every triple from [`r2_triples`] the
/// subsequence of `α, β, γ` is a concatenation of pairs `(γ,α)`, `(γ,β)`.
pub fn validate_chain(roots: &[Root], weight: &DominantWeight) -> Result<(), ChainViolation> {
    let (cartan, n) = (weight.cartan(), weight.n());
    let lambda = weight.vector();
    for root in positive_roots(cartan, n) {
        let expected = lambda.doubled_pairing(&root.coroot(n)) / 2;
        let found = roots
            .iter()
            .filter(|r| r.reflection == root.reflection)
            .count();
        if found as i64 != expected {
            return Err(ChainViolation::R1 {
                root,
                expected,
                found,
            });
        }
    }
    for (alpha, beta, gamma) in r2_triples(cartan, n) {
        let sub: Vec<Root> = roots
            .iter()
            .filter(|r| {
                [alpha, beta, gamma]
                    .iter()
                    .any(|x| x.reflection == r.reflection)
            })
            .copied()
            .collect();
        let ok = sub.len().is_multiple_of(2)
            && sub.chunks(2).all(|pair| {
                pair[0].reflection == gamma.reflection
                    && (pair[1].reflection == alpha.reflection
                        || pair[1].reflection == beta.reflection)
            });
        if !ok {
            return Err(ChainViolation::R2 {
                alpha,
                beta,
                gamma,
                subsequence: sub,
            });
        }
    }
    Ok(())
}
