//! Admissible pairs over a λ-chain and the alcove-walk formula.
//!
//! A pair `(w, J)` is admissible when right-multiplying `w` by the
//! reflections at the positions of `J`, in order, lowers the length at every
//! step. Its term is `t^a (1-t)^b x^{w(μ(J))}` with
//! `a = ½(ℓ(w) + ℓ(wφ(J)) - |J|)` and `b = |J|`.
//!
//! The search runs one depth-first walk per starting element `w`. Besides
//! the current group element it keeps the translation part of the affine
//! map `w r̂_{j₁} … r̂_{j_i}`, so the weight of a pair is available at the
//! leaf without replaying the folds.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chains::LambdaChain;
use crate::error::{Error, Result};
use crate::fillings::{content_prefix, filling_map, HatShape};
use crate::poly::{HLPoly, TPoly};
use crate::weyl::{
    act_on_weight, enumerate_group, length_diff_unchecked, Reflection, SignedPerm, WeightVec,
};

/// Default cap on the number of admissible pairs.
pub const DEFAULT_MAX_PAIRS: usize = 10_000_000;
/// Cap on `m · |W|`, the number of walks times their length.
pub const MAX_WORK: usize = 100_000_000;

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub max_pairs: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            max_pairs: DEFAULT_MAX_PAIRS,
        }
    }
}

/// One admissible pair as seen by a visitor. `positions` are 1-based.
#[derive(Debug)]
pub struct PairView<'a> {
    pub w: &'a SignedPerm,
    pub positions: &'a [usize],
    pub end: &'a SignedPerm,
    pub a: u64,
    pub weight: WeightVec,
}

impl PairView<'_> {
    pub fn b(&self) -> usize {
        self.positions.len()
    }

    pub fn to_owned(&self) -> AdmissiblePair {
        AdmissiblePair {
            w: self.w.clone(),
            positions: self.positions.to_vec(),
            a: self.a,
            b: self.b(),
            weight: self.weight.clone(),
        }
    }
}

/// Serialized as `{"w": window, "J": positions, "a", "b", "weight": doubled}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissiblePair {
    pub w: SignedPerm,
    #[serde(rename = "J")]
    pub positions: Vec<usize>,
    pub a: u64,
    pub b: usize,
    pub weight: WeightVec,
}

/// `u(x)` for an integer vector `x` in `ε`-coordinates.
fn act_on_vector(u: &SignedPerm, x: &[i32]) -> Vec<i32> {
    let mut out = vec![0; x.len()];
    for (i, l) in u.window().iter().enumerate() {
        out[l.abs() - 1] = l.sign() * x[i];
    }
    out
}

fn dot(x: &[i32], y: &[i32]) -> i64 {
    x.iter().zip(y).map(|(&a, &b)| a as i64 * b as i64).sum()
}

/// `μ(J) = r̂_{j₁} … r̂_{j_s}(λ)`, with `r̂_k(v) = v - (⟨v, β_k∨⟩ - l_k) β_k`.
pub fn mu_of_j(chain: &LambdaChain, positions: &[usize]) -> WeightVec {
    let n = chain.n();
    let mut v = chain.weight().vector().doubled().to_vec();
    for &p in positions.iter().rev() {
        let root = chain.roots()[p - 1];
        let level = chain.levels()[p - 1] as i64;
        let coeff = dot(&v, &root.coroot(n)) - 2 * level;
        for (c, b) in v.iter_mut().zip(root.vector(n)) {
            *c -= (coeff * b as i64) as i32;
        }
    }
    WeightVec::from_doubled(v)
}

struct Step {
    reflection: Reflection,
    /// `2 l_k β_k`.
    shift: Vec<i32>,
}

struct Walker<'a, F> {
    steps: &'a [Step],
    lambda: &'a WeightVec,
    w: &'a SignedPerm,
    start_len: i64,
    u: SignedPerm,
    len: i64,
    translation: Vec<i32>,
    positions: Vec<usize>,
    stop: &'a AtomicBool,
    visit: F,
}

impl<F: FnMut(&PairView)> Walker<'_, F> {
    fn go(&mut self, k: usize) {
        if self.stop.load(Ordering::Relaxed) {
            return;
        }
        if k == self.steps.len() {
            let twice_a = self.start_len + self.len - self.positions.len() as i64;
            assert!(
                twice_a >= 0 && twice_a % 2 == 0,
                "t-exponent must be a nonnegative integer"
            );
            let mut weight = act_on_weight(&self.u, self.lambda);
            for (i, &s) in self.translation.iter().enumerate() {
                weight.add_assign_doubled(i, s);
            }
            let view = PairView {
                w: self.w,
                positions: &self.positions,
                end: &self.u,
                a: (twice_a / 2) as u64,
                weight,
            };
            (self.visit)(&view);
            return;
        }
        self.go(k + 1);
        let r = self.steps[k].reflection;
        if self.u.goes_up(r) {
            return;
        }
        let diff = length_diff_unchecked(&self.u, r);
        let shift = act_on_vector(&self.u, &self.steps[k].shift);
        let saved = self.u.clone();
        self.u = saved.apply_unchecked(r);
        self.len += diff;
        self.translation
            .iter_mut()
            .zip(&shift)
            .for_each(|(t, s)| *t += s);
        self.positions.push(k + 1);
        self.go(k + 1);
        self.positions.pop();
        self.translation
            .iter_mut()
            .zip(&shift)
            .for_each(|(t, s)| *t -= s);
        self.len -= diff;
        self.u = saved;
    }
}

fn steps(chain: &LambdaChain) -> Vec<Step> {
    let n = chain.n();
    chain
        .roots()
        .iter()
        .zip(chain.levels())
        .map(|(root, &level)| Step {
            reflection: root.reflection,
            shift: root
                .vector(n)
                .iter()
                .map(|&b| 2 * level as i32 * b)
                .collect(),
        })
        .collect()
}

fn walk(
    chain: &LambdaChain,
    steps: &[Step],
    w: &SignedPerm,
    stop: &AtomicBool,
    visit: impl FnMut(&PairView),
) {
    let start_len = w.length() as i64;
    let mut walker = Walker {
        steps,
        lambda: chain.weight().vector(),
        w,
        start_len,
        u: w.clone(),
        len: start_len,
        translation: vec![0; chain.n()],
        positions: Vec::new(),
        stop,
        visit,
    };
    walker.go(0);
}

/// Visits every `w`-admissible subset, "no fold" before "fold" at each
/// position, so the order is deterministic.
pub fn for_each_admissible(chain: &LambdaChain, w: &SignedPerm, visit: impl FnMut(&PairView)) {
    let stop = AtomicBool::new(false);
    walk(chain, &steps(chain), w, &stop, visit);
}

/// Group elements to start walks from, after the regularity and size checks.
pub fn starting_elements(chain: &LambdaChain) -> Result<Vec<SignedPerm>> {
    chain.weight().require_regular()?;
    let group = enumerate_group(chain.n())?;
    let work = group.len().saturating_mul(chain.len().max(1));
    if work > MAX_WORK {
        return Err(Error::TooLarge(format!(
            "chain length {} times group order {} exceeds {MAX_WORK}",
            chain.len(),
            group.len()
        )));
    }
    Ok(group)
}

/// Runs one accumulator per starting element in parallel and merges them in
/// the fixed group order.
pub fn fold_admissible<T, I, V, M>(
    chain: &LambdaChain,
    options: EnumOptions,
    init: I,
    visit: V,
    merge: M,
) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync,
    V: Fn(&mut T, &PairView) + Sync,
    M: Fn(T, T) -> T,
{
    let group = starting_elements(chain)?;
    let steps = steps(chain);
    let stop = AtomicBool::new(false);
    let count = AtomicUsize::new(0);
    let parts: Vec<T> = group
        .par_iter()
        .map(|w| {
            let mut acc = init();
            walk(chain, &steps, w, &stop, |pair| {
                if count.fetch_add(1, Ordering::Relaxed) >= options.max_pairs {
                    stop.store(true, Ordering::Relaxed);
                    return;
                }
                visit(&mut acc, pair);
            });
            acc
        })
        .collect();
    if stop.load(Ordering::Relaxed) {
        return Err(Error::TooManyPairs {
            cap: options.max_pairs,
        });
    }
    Ok(parts.into_iter().fold(init(), merge))
}

pub fn count_admissible(chain: &LambdaChain, options: EnumOptions) -> Result<usize> {
    fold_admissible(chain, options, || 0usize, |c, _| *c += 1, |a, b| a + b)
}

/// All admissible pairs, ordered by starting element then by the walk.
pub fn admissible_pairs(chain: &LambdaChain, options: EnumOptions) -> Result<Vec<AdmissiblePair>> {
    fold_admissible(
        chain,
        options,
        Vec::new,
        |v, p| v.push(p.to_owned()),
        |mut a, b| {
            a.extend(b);
            a
        },
    )
}

/// `Σ_{(w,J)} t^{½(ℓ(w)+ℓ(wφ(J))-|J|)} (1-t)^{|J|} x^{w(μ(J))}`.
pub fn schwer_evaluate(chain: &LambdaChain, options: EnumOptions) -> Result<HLPoly> {
    let n = chain.n();
    fold_admissible(
        chain,
        options,
        || HLPoly::zero(n),
        |p, pair| p.add_term(pair.a as usize, pair.b(), pair.weight.clone()),
        HLPoly::merge,
    )
}

/// A level mismatch found by [`check_levels`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelMismatch {
    pub position: usize,
    pub from_walk: i64,
    pub from_content: i64,
}

/// Checks, at every chain position `k`, that the level `m_k` of the wall
/// crossed by the folded walk of `(w, J)` equals `⟨ct(σ[q]), γ_k∨⟩`, where
/// `γ_k` is `β_k` moved by the folds before `k` and `σ[q]` is the part of the
/// compressed filling up to the column that `β_k`'s segment feeds.
pub fn check_levels(
    chain: &LambdaChain,
    shape: &HatShape,
    w: &SignedPerm,
    positions: &[usize],
) -> Result<(), LevelMismatch> {
    let n = chain.n();
    let filling = filling_map(chain, shape, w, positions);
    let mut u = w.clone();
    let mut translation = vec![0i32; n];
    let mut folds = positions.iter().peekable();
    for (k, root) in chain.roots().iter().enumerate() {
        let level = chain.levels()[k] as i64;
        let gamma = act_on_vector(&u, &root.coroot(n));
        let from_walk = 2 * level + dot(&translation, &gamma);
        let prefix = shape.compressed_prefix(chain.segment_index(k));
        let from_content = content_prefix(shape, &filling, prefix).doubled_pairing(&gamma);
        if from_walk != from_content {
            return Err(LevelMismatch {
                position: k + 1,
                from_walk,
                from_content,
            });
        }
        if folds.next_if(|&&p| p == k + 1).is_some() {
            let shift = act_on_vector(&u, &root.vector(n));
            translation
                .iter_mut()
                .zip(shift)
                .for_each(|(t, s)| *t += 2 * level as i32 * s);
            u = u.apply_unchecked(root.reflection);
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `w < w r_{j₁} < …`, weighted by `t^{½(ℓ(wT) - ℓ(w) - |T|)}`.
    Increasing,
    /// `w > w r_{j₁} > …`, weighted by `t^{½(ℓ(w) + ℓ(wT) - |T|)}`.
    Decreasing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubChainTerm {
    /// 1-based positions in the sub-chain.
    pub positions: Vec<usize>,
    pub end: SignedPerm,
    pub a: u64,
}

/// Monotone foldings of `w` along an arbitrary root sequence.
pub fn enumerate_admissible_sub(
    delta: &[Reflection],
    w: &SignedPerm,
    direction: Direction,
) -> Vec<SubChainTerm> {
    fn go(
        delta: &[Reflection],
        direction: Direction,
        k: usize,
        u: &SignedPerm,
        positions: &mut Vec<usize>,
        start: i64,
        out: &mut Vec<SubChainTerm>,
    ) {
        if k == delta.len() {
            let end = u.length() as i64;
            let twice_a = match direction {
                Direction::Increasing => end - start,
                Direction::Decreasing => end + start,
            } - positions.len() as i64;
            debug_assert!(twice_a >= 0 && twice_a % 2 == 0);
            out.push(SubChainTerm {
                positions: positions.clone(),
                end: u.clone(),
                a: (twice_a / 2) as u64,
            });
            return;
        }
        go(delta, direction, k + 1, u, positions, start, out);
        let r = delta[k];
        let up = u.goes_up(r);
        if up == (direction == Direction::Increasing) {
            positions.push(k + 1);
            go(
                delta,
                direction,
                k + 1,
                &u.apply_unchecked(r),
                positions,
                start,
                out,
            );
            positions.pop();
        }
    }
    let mut out = Vec::new();
    go(
        delta,
        direction,
        0,
        w,
        &mut Vec::new(),
        w.length() as i64,
        &mut out,
    );
    out
}

/// `Σ t^a (1-t)^{|T|}` over the foldings whose end element passes `keep`.
pub fn sub_chain_sum(
    delta: &[Reflection],
    w: &SignedPerm,
    direction: Direction,
    keep: impl Fn(&SignedPerm) -> bool,
) -> TPoly {
    let mut sum = TPoly::zero();
    for term in enumerate_admissible_sub(delta, w, direction) {
        if keep(&term.end) {
            sum.add_assign(&TPoly::t_pow_one_minus_t(
                term.a as usize,
                term.positions.len(),
            ));
        }
    }
    sum
}

/// `((1,p+1), …, (1,n), (1,1̄), (1,n̄), …, (1,p+1̄))`.
pub fn first_row_chain(n: usize, p: usize) -> Vec<Reflection> {
    let mut out: Vec<Reflection> = (p + 1..=n)
        .map(|l| Reflection::Transposition(1, l))
        .collect();
    out.push(Reflection::SignChange(1));
    out.extend(
        (p + 1..=n)
            .rev()
            .map(|l| Reflection::SignedTransposition(1, l)),
    );
    out
}

/// `((1,1̄), (1,2̄), (2,2̄), …, (n-1,n̄), (n,n̄))` ordered by `n̄`-column,
/// restricted to the part starting at `(i, j̄)`.
pub fn sign_change_chain(n: usize, i: usize, j: usize) -> Vec<Reflection> {
    let mut out = Vec::new();
    for l in 1..=n {
        for k in 1..=l {
            if (l, k) >= (j, i) {
                out.push(if k == l {
                    Reflection::SignChange(k)
                } else {
                    Reflection::SignedTransposition(k, l)
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::DominantWeight;

    fn chain_c(n: usize, parts: &[usize]) -> LambdaChain {
        LambdaChain::new(&DominantWeight::type_c(n, parts).unwrap()).unwrap()
    }

    #[test]
    fn seventy_pairs() {
        let chain = chain_c(2, &[2, 1]);
        assert_eq!(
            count_admissible(&chain, EnumOptions::default()).unwrap(),
            70
        );
        let err = count_admissible(&chain, EnumOptions { max_pairs: 10 });
        assert!(matches!(err, Err(Error::TooManyPairs { cap: 10 })));
    }

    #[test]
    fn example_pair_and_weight() {
        let chain = chain_c(3, &[3, 2, 1]);
        let w = SignedPerm::longest(3);
        let mut found = None;
        for_each_admissible(&chain, &w, |p| {
            if p.positions == [2, 6, 12, 13] {
                found = Some((p.weight.clone(), p.end.clone()));
            }
        });
        let (weight, end) = found.expect("pair is admissible");
        assert_eq!(end, SignedPerm::from_window(&[2, 1, 3]).unwrap());
        assert_eq!(weight, WeightVec::from_integers(&[0, 1, 1]));
        let mu = mu_of_j(&chain, &[2, 6, 12, 13]);
        assert_eq!(mu, WeightVec::from_integers(&[0, -1, -1]));
        assert_eq!(act_on_weight(&w, &mu), weight);
        assert_eq!(mu_of_j(&chain, &[]), *chain.weight().vector());
    }

    #[test]
    fn single_fold_level() {
        let chain = chain_c(2, &[2, 1]);
        let lambda = chain.weight().vector().clone();
        for k in 1..=chain.len() {
            let root = chain.roots()[k - 1];
            let l = chain.levels()[k - 1] as i64;
            let pairing = lambda.doubled_pairing(&root.coroot(2)) / 2;
            let expected: Vec<i32> = lambda
                .doubled()
                .iter()
                .zip(root.vector(2))
                .map(|(&v, b)| v - 2 * ((pairing - l) as i32) * b)
                .collect();
            assert_eq!(mu_of_j(&chain, &[k]).doubled(), &expected[..]);
        }
    }

    #[test]
    fn forced_single_fold() {
        let w = SignedPerm::identity(1);
        let sum = sub_chain_sum(
            &[Reflection::SignChange(1)],
            &w,
            Direction::Increasing,
            |e| e.at(1).is_barred(),
        );
        assert_eq!(sum, TPoly::t_pow_one_minus_t(0, 1));
    }

    #[test]
    fn chain_helpers() {
        assert_eq!(sign_change_chain(2, 1, 1).len(), 3);
        assert_eq!(sign_change_chain(2, 2, 2), vec![Reflection::SignChange(2)]);
        assert_eq!(first_row_chain(3, 3), vec![Reflection::SignChange(1)]);
        assert_eq!(first_row_chain(3, 1).len(), 5);
    }
}
