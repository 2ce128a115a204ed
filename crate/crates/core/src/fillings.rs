//! Fillings of the widened shape `λ̂`, the filling map, and the statistics
//! `N`, `des` and content.
//!
//! A filling is stored as its list of columns from left to right. Each column
//! records the running permutation (truncated to the column height) at the
//! start of one chain segment; the column's successor is obtained by the
//! reflections of that segment, which is why every column carries the
//! [`Transition`] rule of its segment.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chains::{LambdaChain, SegmentKind};
use crate::error::{Error, Result};
use crate::weight::DominantWeight;
use crate::weyl::{
    alphabet, count_between, count_interval_avoiding, ell_plus_column, CartanType, Letter,
    Reflection, SignedPerm, WeightVec,
};

/// How a column passes to its right neighbor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transition {
    /// `C = D(r₁,k̄)…(r_p,k̄)`, in type B optionally followed by `(k)`.
    Cycle { k: usize, sign_change: bool },
    /// `C` differs from `D(r₁,j̄)…(r_p,j̄)` at most in position `j`, where it
    /// holds a smaller letter.
    Drop { j: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnSpec {
    pub group: usize,
    /// `Primed(k)` is the column `C'_{ik}`, `Unprimed(j)` is `C_{ij}`.
    pub kind: SegmentKind,
    pub height: usize,
    /// Index of the chain segment whose start this column records.
    pub segment: usize,
    /// Rule relating this column to the next one; `None` for the last column.
    pub transition: Option<Transition>,
}

/// Column layout of `λ̂` together with the compressed columns.
#[derive(Clone, Debug)]
pub struct HatShape {
    cartan: CartanType,
    n: usize,
    columns: Vec<ColumnSpec>,
    recorded: Vec<Option<usize>>,
    compressed: Vec<usize>,
    compressed_prefix: Vec<usize>,
}

fn transition_for(cartan: CartanType, n: usize, height: usize, kind: SegmentKind) -> Transition {
    match (cartan, kind) {
        (CartanType::C, SegmentKind::Primed(k)) => Transition::Cycle {
            k,
            sign_change: false,
        },
        (CartanType::B, SegmentKind::Primed(k)) => Transition::Cycle {
            k,
            sign_change: true,
        },
        (CartanType::B, SegmentKind::Unprimed(j)) if height == n => Transition::Cycle {
            k: j,
            sign_change: true,
        },
        (_, SegmentKind::Unprimed(j)) => Transition::Drop { j },
    }
}

impl HatShape {
    pub fn new(chain: &LambdaChain) -> HatShape {
        let (cartan, n) = (chain.cartan(), chain.n());
        let segments = chain.segments();
        let mut columns: Vec<ColumnSpec> = Vec::new();
        let mut recorded = vec![None; segments.len()];
        for (s, seg) in segments.iter().enumerate() {
            let skip = seg.group == 1 && matches!(seg.kind, SegmentKind::Unprimed(j) if j >= 2);
            if skip {
                continue;
            }
            if let Some(prev) = columns.last_mut() {
                let prev_seg = &segments[prev.segment];
                prev.transition = Some(transition_for(cartan, n, prev_seg.height, prev_seg.kind));
            }
            recorded[s] = Some(columns.len());
            columns.push(ColumnSpec {
                group: seg.group,
                kind: seg.kind,
                height: seg.height,
                segment: s,
                transition: None,
            });
        }

        let find = |group: usize, kind: SegmentKind| {
            columns
                .iter()
                .position(|c| c.group == group && c.kind == kind)
        };
        let mut compressed = Vec::new();
        let mut head_of = Vec::new();
        let mut tail_of = Vec::new();
        for (idx, &height) in chain.weight().groups().iter().enumerate().rev() {
            let group = idx + 1;
            let tail = find(group, SegmentKind::Unprimed(1)).expect("C_{i1} is always recorded");
            let head = match cartan {
                CartanType::C => Some(find(group, SegmentKind::Primed(2)).unwrap_or(tail)),
                CartanType::B if height < n => {
                    Some(find(group, SegmentKind::Primed(1)).expect("C'_{i1}"))
                }
                CartanType::B => None,
            };
            if let Some(h) = head {
                compressed.push(h);
            }
            let head_len = compressed.len();
            compressed.push(tail);
            head_of.push((group, head_len));
            tail_of.push((group, compressed.len()));
        }
        let compressed_prefix = segments
            .iter()
            .map(|seg| {
                let table = match seg.kind {
                    SegmentKind::Primed(_) => &head_of,
                    SegmentKind::Unprimed(_) => &tail_of,
                };
                table
                    .iter()
                    .find(|(g, _)| *g == seg.group)
                    .map(|&(_, l)| l)
                    .unwrap()
            })
            .collect();
        HatShape {
            cartan,
            n,
            columns,
            recorded,
            compressed,
            compressed_prefix,
        }
    }

    pub fn from_weight(weight: &DominantWeight) -> Result<HatShape> {
        Ok(HatShape::new(&LambdaChain::new(weight)?))
    }

    pub fn cartan(&self) -> CartanType {
        self.cartan
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[ColumnSpec] {
        &self.columns
    }

    pub fn heights(&self) -> Vec<usize> {
        self.columns.iter().map(|c| c.height).collect()
    }

    /// Column recorded at the start of a chain segment, if any.
    pub fn column_of_segment(&self, segment: usize) -> Option<usize> {
        self.recorded[segment]
    }

    /// Indices of the columns forming the compressed filling, left to right.
    /// A column may appear twice.
    pub fn compressed_columns(&self) -> &[usize] {
        &self.compressed
    }

    /// Number of leading compressed columns up to and including the one a
    /// chain segment belongs to (heads are primed segments, tails unprimed).
    pub fn compressed_prefix(&self, segment: usize) -> usize {
        self.compressed_prefix[segment]
    }
}

/// A filling, as columns from left to right.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Filling {
    columns: Vec<Vec<Letter>>,
}

impl Filling {
    pub fn new(columns: Vec<Vec<Letter>>) -> Filling {
        Filling { columns }
    }

    pub fn from_values(columns: &[&[i32]]) -> Result<Filling> {
        let columns = columns
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&v| Letter::new(v))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Filling { columns })
    }

    pub fn columns(&self) -> &[Vec<Letter>] {
        &self.columns
    }

    pub fn values(&self) -> Vec<Vec<i32>> {
        self.columns
            .iter()
            .map(|c| c.iter().map(|l| l.value()).collect())
            .collect()
    }

    /// Rows top to bottom, columns left to right, barred letters as `-k`.
    pub fn render(&self) -> String {
        let width = self
            .columns
            .iter()
            .flatten()
            .map(|l| l.value().to_string().len())
            .max()
            .unwrap_or(1);
        let rows = self.columns.iter().map(Vec::len).max().unwrap_or(0);
        (0..rows)
            .map(|r| {
                self.columns
                    .iter()
                    .map(|c| match c.get(r) {
                        Some(l) => format!("{:>width$}", l.value()),
                        None => " ".repeat(width),
                    })
                    .join(" ")
                    .trim_end()
                    .to_string()
            })
            .join("\n")
    }
}

impl fmt::Debug for Filling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            self.columns
                .iter()
                .map(|c| format!("({})", c.iter().join(",")))
                .join("")
        )
    }
}

impl fmt::Display for Filling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `f(w, J)` with `J` given as increasing 1-based chain positions.
pub fn filling_map(
    chain: &LambdaChain,
    shape: &HatShape,
    w: &SignedPerm,
    positions: &[usize],
) -> Filling {
    let mut u = w.window().to_vec();
    let mut columns = Vec::with_capacity(shape.columns.len());
    let mut folds = positions.iter().peekable();
    for (s, seg) in chain.segments().iter().enumerate() {
        if let Some(c) = shape.recorded[s] {
            columns.push(u[..shape.columns[c].height].to_vec());
        }
        for k in seg.range.clone() {
            if folds.next_if(|&&p| p == k + 1).is_some() {
                chain.roots()[k].reflection.act_on(&mut u);
            }
        }
    }
    debug_assert!(folds.next().is_none(), "fold position beyond the chain");
    Filling { columns }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// No change.
    Case0,
    /// A single signed transposition.
    Case1,
    /// A signed cycle of two or more steps.
    Case2,
    /// A (possibly empty) cycle followed by a strict drop.
    Case3,
    /// A (possibly empty) cycle followed by the sign change `(k)`.
    SignChange,
}

/// Result of [`transition_decompose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// `r₁ < … < r_p`, 1-based.
    pub cycle: Vec<usize>,
    /// The `j` (or `k`) of the transition.
    pub pivot: usize,
    /// New letter at the pivot after a strict drop.
    pub dropped_to: Option<Letter>,
    pub sign_change: bool,
}

impl Decomposition {
    pub fn case(&self) -> CaseTag {
        if self.sign_change {
            CaseTag::SignChange
        } else if self.dropped_to.is_some() {
            CaseTag::Case3
        } else {
            match self.cycle.len() {
                0 => CaseTag::Case0,
                1 => CaseTag::Case1,
                _ => CaseTag::Case2,
            }
        }
    }

    pub fn des(&self) -> usize {
        self.cycle.len() + usize::from(self.dropped_to.is_some()) + usize::from(self.sign_change)
    }
}

fn apply_cycle(d: &[Letter], cycle: &[usize], pivot: usize) -> Vec<Letter> {
    let mut out = d.to_vec();
    for &r in cycle {
        Reflection::SignedTransposition(r, pivot).act_on(&mut out);
    }
    out
}

fn illegal(d: &[Letter], c: &[Letter], t: Transition) -> Error {
    Error::IllegalTransition(format!(
        "({}) -> ({}) under {t:?}",
        d.iter().join(","),
        c.iter().join(",")
    ))
}

/// Recovers the signed cycle (and drop or sign change) relating adjacent
/// columns `d` (left) and `c` (right). `c` may be taller by one, in which case
/// only its top part is compared. The decomposition is re-applied and checked.
pub fn transition_decompose(d: &[Letter], c: &[Letter], t: Transition) -> Result<Decomposition> {
    let h = d.len();
    if c.len() != h && c.len() != h + 1 {
        return Err(illegal(d, c, t));
    }
    let c = &c[..h];
    let pivot = match t {
        Transition::Cycle { k, .. } => k,
        Transition::Drop { j } => j,
    };
    if pivot == 0 || pivot > h {
        return Err(illegal(d, c, t));
    }
    let cycle: Vec<usize> = (1..pivot).filter(|&r| c[r - 1] != d[r - 1]).collect();
    let dp = apply_cycle(d, &cycle, pivot);
    if (0..h).any(|i| i != pivot - 1 && dp[i] != c[i]) {
        return Err(illegal(d, c, t));
    }
    let (x, y) = (c[pivot - 1], dp[pivot - 1]);
    let mut out = Decomposition {
        cycle,
        pivot,
        dropped_to: None,
        sign_change: false,
    };
    if x == y {
        return Ok(out);
    }
    match t {
        Transition::Cycle {
            sign_change: true, ..
        } if x == y.bar() && !x.is_barred() => {
            out.sign_change = true;
        }
        Transition::Drop { .. }
            if x < y
                && !dp
                    .iter()
                    .enumerate()
                    .any(|(i, l)| i != pivot - 1 && l.abs() == x.abs()) =>
        {
            out.dropped_to = Some(x);
        }
        _ => return Err(illegal(d, c, t)),
    }
    Ok(out)
}

/// `2·N(D, D(r, j̄))` for a single step; errors if the step does not go down.
fn single_step_doubled(n: usize, d: &[Letter], r: usize, j: usize) -> Result<u64> {
    let (a, b) = (d[r - 1], d[j - 1]);
    let lo = b.bar();
    if lo >= a {
        return Err(Error::IllegalTransition(format!(
            "step ({r},-{j}) on ({}) does not go down",
            d.iter().join(",")
        )));
    }
    let sigma = usize::from(a.is_barred() && b.is_barred());
    let count =
        count_between(lo, a, &d[r..j - 1]) + count_interval_avoiding(n, lo, a, &d[..j]) + sigma;
    Ok(2 * count as u64)
}

/// Statistics of one adjacent column pair. `N` is kept doubled because the
/// sign-change case is a half count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairStat {
    pub n_doubled: u64,
    pub des: usize,
    pub case: CaseTag,
}

pub fn stat_n_pair(n: usize, d: &[Letter], c: &[Letter], t: Transition) -> Result<PairStat> {
    let dec = transition_decompose(d, c, t)?;
    let j = dec.pivot;
    let mut running = d.to_vec();
    let mut total = 0u64;
    for &r in &dec.cycle {
        total += single_step_doubled(n, &running, r, j)?;
        Reflection::SignedTransposition(r, j).act_on(&mut running);
    }
    if let Some(x) = dec.dropped_to {
        total += 2 * count_between(x, running[j - 1], &d[j..]) as u64;
    }
    if dec.sign_change {
        let a = running[j - 1];
        total += count_interval_avoiding(n, a.bar(), a, &running[..j]) as u64;
    }
    Ok(PairStat {
        n_doubled: total,
        des: dec.des(),
        case: dec.case(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingStats {
    pub n: u64,
    pub des: usize,
}

fn check_shape(shape: &HatShape, filling: &Filling) -> Result<()> {
    if filling.columns.len() != shape.columns.len()
        || filling
            .columns
            .iter()
            .zip(&shape.columns)
            .any(|(c, s)| c.len() != s.height)
    {
        return Err(Error::InvalidFilling(format!(
            "{filling:?} does not have the column heights {:?}",
            shape.heights()
        )));
    }
    Ok(())
}

/// `N(σ)` and `des(σ)`: pair statistics over adjacent columns plus `ℓ₊` of
/// the rightmost column.
pub fn statistics(shape: &HatShape, filling: &Filling) -> Result<FillingStats> {
    check_shape(shape, filling)?;
    let mut n_doubled = 0u64;
    let mut des = 0usize;
    for (x, spec) in shape.columns.iter().enumerate() {
        let Some(t) = spec.transition else { continue };
        let st = stat_n_pair(shape.n, &filling.columns[x], &filling.columns[x + 1], t)?;
        n_doubled += st.n_doubled;
        des += st.des;
    }
    let last = filling
        .columns
        .last()
        .map(|c| ell_plus_column(c))
        .unwrap_or(0);
    n_doubled += 2 * last as u64;
    if !n_doubled.is_multiple_of(2) {
        return Err(Error::NonIntegral(format!(
            "2N = {n_doubled} for {filling:?}"
        )));
    }
    Ok(FillingStats {
        n: n_doubled / 2,
        des,
    })
}

/// Checks conditions (1)–(3): rows weakly decreasing, no `±` repeats within
/// a column, and every adjacent pair related by its transition rule.
pub fn validate_filling(shape: &HatShape, filling: &Filling) -> Result<()> {
    check_shape(shape, filling)?;
    for col in &filling.columns {
        if let Some((a, _)) = col
            .iter()
            .tuple_combinations()
            .find(|(a, b)| a.abs() == b.abs())
        {
            return Err(Error::InvalidFilling(format!(
                "letter {} repeated in a column of {filling:?}",
                a.abs()
            )));
        }
    }
    for (d, c) in filling.columns.iter().tuple_windows() {
        if d.iter().zip(c).any(|(x, y)| y > x) {
            return Err(Error::InvalidFilling(format!(
                "row increases in {filling:?}"
            )));
        }
    }
    statistics(shape, filling).map(|_| ())
}

/// Compressed filling `σ̄`.
pub fn compress(shape: &HatShape, filling: &Filling) -> Filling {
    Filling {
        columns: shape
            .compressed
            .iter()
            .map(|&i| filling.columns[i].clone())
            .collect(),
    }
}

/// Doubled content of the first `prefix` compressed columns.
pub fn content_prefix(shape: &HatShape, filling: &Filling, prefix: usize) -> WeightVec {
    let mut v = WeightVec::zero(shape.n);
    for &i in &shape.compressed[..prefix] {
        for l in &filling.columns[i] {
            v.add_assign_doubled(l.abs() - 1, l.sign());
        }
    }
    v
}

/// `ct(σ)`: half the signed letter count of `σ̄` (stored doubled).
pub fn content(shape: &HatShape, filling: &Filling) -> WeightVec {
    content_prefix(shape, filling, shape.compressed.len())
}

fn successors(n: usize, d: &[Letter], t: Transition, next_height: usize) -> Vec<Vec<Letter>> {
    let pivot = match t {
        Transition::Cycle { k, .. } => k,
        Transition::Drop { j } => j,
    };
    let mut tops = Vec::new();
    for mask in 0u32..(1 << (pivot - 1)) {
        let cycle: Vec<usize> = (1..pivot).filter(|r| mask & (1 << (r - 1)) != 0).collect();
        let dp = apply_cycle(d, &cycle, pivot);
        let y = dp[pivot - 1];
        match t {
            Transition::Cycle { sign_change, .. } => {
                if sign_change && y.is_barred() {
                    let mut c = dp.clone();
                    c[pivot - 1] = y.bar();
                    tops.push(c);
                }
            }
            Transition::Drop { .. } => {
                for x in alphabet(n).filter(|&x| x < y) {
                    if dp
                        .iter()
                        .enumerate()
                        .all(|(i, l)| i == pivot - 1 || l.abs() != x.abs())
                    {
                        let mut c = dp.clone();
                        c[pivot - 1] = x;
                        tops.push(c);
                    }
                }
            }
        }
        tops.push(dp);
    }
    tops.retain(|c| c.iter().zip(d).all(|(x, y)| x <= y));
    if next_height == d.len() {
        return tops;
    }
    tops.into_iter()
        .flat_map(|c| {
            alphabet(n)
                .filter(|x| c.iter().all(|l| l.abs() != x.abs()))
                .map(|x| {
                    let mut e = c.clone();
                    e.push(x);
                    e
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

fn injective_columns(n: usize, height: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..height {
        out = out
            .into_iter()
            .flat_map(|c: Vec<Letter>| {
                alphabet(n)
                    .filter(|x| c.iter().all(|l| l.abs() != x.abs()))
                    .map(|x| {
                        let mut e = c.clone();
                        e.push(x);
                        e
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn extend(shape: &HatShape, prefix: &mut Vec<Vec<Letter>>, out: &mut Vec<Filling>) {
    let x = prefix.len() - 1;
    let Some(t) = shape.columns[x].transition else {
        out.push(Filling {
            columns: prefix.clone(),
        });
        return;
    };
    let next_height = shape.columns[x + 1].height;
    for c in successors(shape.n, &prefix[x], t, next_height) {
        prefix.push(c);
        extend(shape, prefix, out);
        prefix.pop();
    }
}

/// All of `F(λ)`, by a left-to-right search seeded with every possible
/// leftmost column. The output order is deterministic.
pub fn enumerate_fillings(shape: &HatShape) -> Vec<Filling> {
    let seeds = injective_columns(shape.n, shape.columns[0].height);
    seeds
        .into_par_iter()
        .map(|seed| {
            let mut out = Vec::new();
            extend(shape, &mut vec![seed], &mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Fillings with `N = 0`.
pub fn kn_fillings(shape: &HatShape) -> Result<Vec<Filling>> {
    let mut out = Vec::new();
    for f in enumerate_fillings(shape) {
        if statistics(shape, &f)?.n == 0 {
            out.push(f);
        }
    }
    Ok(out)
}

/// Whether a type C filling has every primed transition trivial and every
/// unprimed transition changing only its pivot row.
pub fn in_hhl_class(shape: &HatShape, filling: &Filling) -> Result<bool> {
    for (x, spec) in shape.columns.iter().enumerate() {
        let Some(t) = spec.transition else { continue };
        let dec = transition_decompose(&filling.columns[x], &filling.columns[x + 1], t)?;
        let ok = match spec.kind {
            SegmentKind::Primed(_) => dec.case() == CaseTag::Case0,
            SegmentKind::Unprimed(_) => dec.cycle.is_empty() && !dec.sign_change,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The filling of `λ` made of the columns `C_{i1}`, from the last group to
/// the first.
pub fn hhl_reduction(shape: &HatShape, filling: &Filling) -> Vec<Vec<Letter>> {
    shape
        .columns
        .iter()
        .zip(&filling.columns)
        .filter(|(s, _)| s.kind == SegmentKind::Unprimed(1))
        .map(|(_, c)| c.clone())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HhlStats {
    pub inv: usize,
    pub cinv: usize,
    pub des: usize,
    pub n_lambda: usize,
}

/// Inversions, complementary inversions (by the triple count) and descents
/// of a filling of `λ` given by columns left to right, shortest first.
///
/// Cells attack when they share a column, or when they lie in adjacent
/// columns with the left cell strictly lower. Requires attacking cells to
/// differ and rows to weakly decrease.
pub fn hhl_stats(columns: &[Vec<Letter>]) -> Result<HhlStats> {
    let bad = |msg: &str| Error::InvalidFilling(format!("{msg}: {columns:?}"));
    if columns.windows(2).any(|w| w[0].len() > w[1].len()) {
        return Err(bad("column heights must weakly increase to the right"));
    }
    for w in columns.windows(2) {
        if w[0].iter().zip(&w[1]).any(|(l, r)| r > l) {
            return Err(bad("rows must weakly decrease"));
        }
    }
    let mut inv = 0;
    for (x, col) in columns.iter().enumerate() {
        for (top, bottom) in col.iter().tuple_combinations() {
            if top == bottom {
                return Err(bad("attacking cells coincide"));
            }
            if top < bottom {
                inv += 1;
            }
        }
        if let Some(right) = columns.get(x + 1) {
            for (s, &lower) in col.iter().enumerate() {
                for &upper in &right[..s] {
                    if lower == upper {
                        return Err(bad("attacking cells coincide"));
                    }
                    if lower < upper {
                        inv += 1;
                    }
                }
            }
        }
    }
    let mut cinv = 0;
    for (x, col) in columns.iter().enumerate() {
        let left = if x > 0 { Some(&columns[x - 1]) } else { None };
        for (r, s) in (0..col.len()).tuple_combinations() {
            let (b, a) = (col[r], col[s]);
            let c = left.and_then(|l| l.get(s));
            let counted = match c {
                Some(&c) => a < b && b < c,
                None => a < b,
            };
            if counted {
                cinv += 1;
            }
        }
    }
    let n_lambda = columns
        .iter()
        .map(|c| c.len() * c.len().saturating_sub(1) / 2)
        .sum();
    let des = columns
        .iter()
        .tuple_windows()
        .map(|(l, r)| l.iter().zip(r).filter(|(x, y)| x > y).count())
        .sum();
    Ok(HhlStats {
        inv,
        cinv,
        des,
        n_lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape_c(n: usize, parts: &[usize]) -> (LambdaChain, HatShape) {
        let chain = LambdaChain::new(&DominantWeight::type_c(n, parts).unwrap()).unwrap();
        let shape = HatShape::new(&chain);
        (chain, shape)
    }

    fn col(v: &[i32]) -> Vec<Letter> {
        v.iter().map(|&x| Letter::new(x).unwrap()).collect()
    }

    #[test]
    fn shape_heights() {
        assert_eq!(shape_c(2, &[2, 1]).1.heights(), vec![1, 2, 2]);
        assert_eq!(
            shape_c(3, &[3, 2, 1]).1.heights(),
            vec![1, 2, 2, 2, 3, 3, 3]
        );
        let chain =
            LambdaChain::new(&DominantWeight::type_b_partition(2, &[2, 1]).unwrap()).unwrap();
        assert_eq!(HatShape::new(&chain).heights(), vec![1, 1, 2]);
    }

    #[test]
    fn example_filling_map() {
        let (chain, shape) = shape_c(3, &[3, 2, 1]);
        let w = SignedPerm::longest(3);
        let f = filling_map(&chain, &shape, &w, &[2, 6, 12, 13]);
        let expected = Filling::from_values(&[
            &[-1],
            &[3, -2],
            &[2, -3],
            &[2, -3],
            &[2, 1, 3],
            &[2, 1, 3],
            &[2, 1, 3],
        ])
        .unwrap();
        assert_eq!(f, expected);
        assert_eq!(content(&shape, &f), WeightVec::from_integers(&[0, 1, 1]));
        validate_filling(&shape, &f).unwrap();
    }

    #[test]
    fn example_statistics() {
        let (_, shape) = shape_c(2, &[2, 1]);
        let cases: [(&[&[i32]], u64, usize, [i32; 2]); 4] = [
            (&[&[-1], &[1, 2], &[1, 2]], 0, 1, [0, 1]),
            (&[&[-1], &[2, 1], &[2, 1]], 1, 1, [0, 1]),
            (&[&[2], &[2, -1], &[1, -2]], 0, 1, [0, 1]),
            (&[&[-1], &[-2, -1], &[-2, -1]], 0, 1, [-2, -1]),
        ];
        for (cols, n, des, ct) in cases {
            let f = Filling::from_values(cols).unwrap();
            validate_filling(&shape, &f).unwrap();
            assert_eq!(
                statistics(&shape, &f).unwrap(),
                FillingStats { n, des },
                "{f:?}"
            );
            assert_eq!(content(&shape, &f), WeightVec::from_integers(&ct));
        }
    }

    #[test]
    fn decompositions() {
        let t = Transition::Cycle {
            k: 2,
            sign_change: false,
        };
        let dec = transition_decompose(&col(&[1, 2]), &col(&[-2, -1]), t).unwrap();
        assert_eq!(dec.cycle, vec![1]);
        assert_eq!(dec.case(), CaseTag::Case1);
        assert_eq!(
            transition_decompose(&col(&[1, 2]), &col(&[1, 2]), t)
                .unwrap()
                .case(),
            CaseTag::Case0
        );
        assert!(transition_decompose(&col(&[2, 1]), &col(&[-1, 2]), t).is_err());
        let drop = Transition::Drop { j: 2 };
        let dec = transition_decompose(&col(&[3, -2]), &col(&[2, -3]), Transition::Drop { j: 1 });
        assert!(dec.is_err(), "{dec:?}");
        let dec = transition_decompose(&col(&[2, -3]), &col(&[2, 1, 3]), drop).unwrap();
        assert_eq!(dec.dropped_to, Some(Letter::plain(1)));
        assert_eq!(dec.case(), CaseTag::Case3);
        let sc = Transition::Cycle {
            k: 1,
            sign_change: true,
        };
        let dec = transition_decompose(&col(&[-1]), &col(&[1]), sc).unwrap();
        assert_eq!(dec.case(), CaseTag::SignChange);
        assert!(transition_decompose(&col(&[1]), &col(&[-1]), sc).is_err());
    }

    #[test]
    fn type_c_21_has_27_fillings_and_16_with_n_zero() {
        let (_, shape) = shape_c(2, &[2, 1]);
        let all = enumerate_fillings(&shape);
        assert_eq!(all.len(), 27);
        for f in &all {
            validate_filling(&shape, f).unwrap();
            let [e, cd, ab] = [&f.columns()[0], &f.columns()[1], &f.columns()[2]];
            let (a, b, c, d) = (ab[0], ab[1], cd[0], cd[1]);
            assert!(a <= c && c <= e[0] && b <= d && a.abs() != b.abs());
            assert!((c == a && d == b) || (c == b.bar() && d == a.bar()));
        }
        assert_eq!(kn_fillings(&shape).unwrap().len(), 16);
    }

    #[test]
    fn hhl_single_column_and_constant_rows() {
        let inc = vec![col(&[1, 2, 3])];
        let s = hhl_stats(&inc).unwrap();
        assert_eq!((s.inv, s.cinv, s.n_lambda), (3, 0, 3));
        let constant = vec![col(&[1]), col(&[1, 2]), col(&[1, 2, 3])];
        let s = hhl_stats(&constant).unwrap();
        assert_eq!((s.cinv, s.des), (0, 0));
        assert_eq!(s.cinv + s.inv, s.n_lambda);
    }

    #[test]
    fn render_format() {
        let f = Filling::from_values(&[&[-1], &[1, 2], &[1, 2]]).unwrap();
        assert_eq!(f.render(), "-1  1  1\n    2  2");
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, "[[-1],[1,2],[1,2]]");
    }
}
