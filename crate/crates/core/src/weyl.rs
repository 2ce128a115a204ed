//! The hyperoctahedral group `B_n` acting on `{±1, …, ±n}`.
//!
//! Letters are signed integers, with `-i` standing for the barred letter `ī`.
//! The alphabet `[n̄]` is totally ordered as `1 < 2 < … < n < n̄ < … < 1̄`;
//! every comparison between letters goes through [`Letter::cmp`], which
//! agrees with the order key `i ↦ i`, `ī ↦ 2n+1-i` (see [`Letter::order_key`]).
//!
//! Signed permutations are stored in window notation `w(1) … w(n)`, and
//! reflections act on windows by right multiplication.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank accepted by [`enumerate_group`] (`|B_8| = 10 321 920`).
pub const MAX_GROUP_RANK: usize = 8;

/// A letter of `[n̄]`: `i` or `ī`, stored as `i` or `-i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i32", into = "i32")]
pub struct Letter(i32);

impl Letter {
    pub fn new(value: i32) -> Result<Letter> {
        if value == 0 {
            return Err(Error::InvalidLetter(value));
        }
        Ok(Letter(value))
    }

    /// The unbarred letter `i`.
    pub fn plain(i: usize) -> Letter {
        debug_assert!(i > 0);
        Letter(i as i32)
    }

    /// The barred letter `ī`.
    pub fn barred(i: usize) -> Letter {
        debug_assert!(i > 0);
        Letter(-(i as i32))
    }

    pub fn value(self) -> i32 {
        self.0
    }

    pub fn abs(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_barred(self) -> bool {
        self.0 < 0
    }

    pub fn bar(self) -> Letter {
        Letter(-self.0)
    }

    /// Position of the letter in `1 < … < n < n̄ < … < 1̄`, counted from 1.
    pub fn order_key(self, n: usize) -> i32 {
        if self.0 > 0 {
            self.0
        } else {
            2 * n as i32 + 1 + self.0
        }
    }

    /// `+1` for `i`, `-1` for `ī`.
    pub fn sign(self) -> i32 {
        self.0.signum()
    }
}

impl TryFrom<i32> for Letter {
    type Error = Error;
    fn try_from(value: i32) -> Result<Letter> {
        Letter::new(value)
    }
}

impl From<Letter> for i32 {
    fn from(l: Letter) -> i32 {
        l.0
    }
}

// Unbarred letters precede barred ones; within each half the native order of
// the signed value already matches (3̄ = -3 < -1 = 1̄), so the key is n-free.
impl Ord for Letter {
    fn cmp(&self, other: &Letter) -> Ordering {
        (self.is_barred(), self.0).cmp(&(other.is_barred(), other.0))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Letter) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// All letters of `[n̄]` in increasing order.
pub fn alphabet(n: usize) -> impl Iterator<Item = Letter> {
    (1..=n)
        .map(Letter::plain)
        .chain((1..=n).rev().map(Letter::barred))
}

/// Number of entries `x` of `seq` with `lo < x < hi`.
pub fn count_between(lo: Letter, hi: Letter, seq: &[Letter]) -> usize {
    seq.iter().filter(|&&x| lo < x && x < hi).count()
}

/// Number of letters of `[n̄]` strictly between `lo` and `hi` whose absolute
/// value is not in `excluded` (the set `±excluded` is removed).
pub fn count_interval_avoiding(n: usize, lo: Letter, hi: Letter, excluded: &[Letter]) -> usize {
    alphabet(n)
        .filter(|&z| lo < z && z < hi)
        .filter(|z| !excluded.iter().any(|e| e.abs() == z.abs()))
        .count()
}

/// Root system type. The group action is the same for both; only roots and
/// coroots of the sign-change reflections differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanType {
    B,
    C,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::B => write!(f, "B"),
            CartanType::C => write!(f, "C"),
        }
    }
}

/// A reflection of `B_n`, positions 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reflection {
    /// `(i,j)`, `i < j`: swap positions `i` and `j`.
    Transposition(usize, usize),
    /// `(i,j̄)`, `i < j`: swap positions `i` and `j` and negate both.
    SignedTransposition(usize, usize),
    /// `(i,ī)` in type C, `(i)` in type B: negate position `i`.
    SignChange(usize),
}

impl Reflection {
    fn validate(self, n: usize) -> Result<()> {
        let ok = match self {
            Reflection::Transposition(i, j) | Reflection::SignedTransposition(i, j) => {
                1 <= i && i < j && j <= n
            }
            Reflection::SignChange(i) => 1 <= i && i <= n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ReflectionOutOfRange {
                reflection: self,
                n,
            })
        }
    }

    /// Largest position touched.
    pub fn max_position(self) -> usize {
        match self {
            Reflection::Transposition(_, j) | Reflection::SignedTransposition(_, j) => j,
            Reflection::SignChange(i) => i,
        }
    }

    /// Apply to a column or window in place (right multiplication). Positions
    /// beyond `seq.len()` are ignored, which is how reflections act on a
    /// column that is the prefix of a longer window.
    pub fn act_on(self, seq: &mut [Letter]) {
        let len = seq.len();
        match self {
            Reflection::Transposition(i, j) => {
                if j <= len {
                    seq.swap(i - 1, j - 1);
                }
            }
            Reflection::SignedTransposition(i, j) => {
                if j <= len {
                    seq.swap(i - 1, j - 1);
                    seq[i - 1] = seq[i - 1].bar();
                    seq[j - 1] = seq[j - 1].bar();
                }
            }
            Reflection::SignChange(i) => {
                if i <= len {
                    seq[i - 1] = seq[i - 1].bar();
                }
            }
        }
    }
}

/// A positive root of type B or C, identified with its reflection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub reflection: Reflection,
    pub cartan: CartanType,
}

impl Root {
    pub fn new(cartan: CartanType, reflection: Reflection) -> Root {
        Root { reflection, cartan }
    }

    /// Root in `ε`-coordinates: `ε_i-ε_j`, `ε_i+ε_j`, `2ε_i` (C) or `ε_i` (B).
    pub fn vector(&self, n: usize) -> Vec<i32> {
        let mut v = vec![0; n];
        match self.reflection {
            Reflection::Transposition(i, j) => {
                v[i - 1] = 1;
                v[j - 1] = -1;
            }
            Reflection::SignedTransposition(i, j) => {
                v[i - 1] = 1;
                v[j - 1] = 1;
            }
            Reflection::SignChange(i) => {
                v[i - 1] = match self.cartan {
                    CartanType::C => 2,
                    CartanType::B => 1,
                };
            }
        }
        v
    }

    /// Coroot `2α/⟨α,α⟩` in `ε`-coordinates.
    pub fn coroot(&self, n: usize) -> Vec<i32> {
        let mut v = self.vector(n);
        if let Reflection::SignChange(i) = self.reflection {
            v[i - 1] = match self.cartan {
                CartanType::C => 1,
                CartanType::B => 2,
            };
        }
        v
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.reflection, self.cartan) {
            (Reflection::Transposition(i, j), _) => write!(f, "({i},{j})"),
            (Reflection::SignedTransposition(i, j), _) => write!(f, "({i},-{j})"),
            (Reflection::SignChange(i), CartanType::C) => write!(f, "({i},-{i})"),
            (Reflection::SignChange(i), CartanType::B) => write!(f, "({i})"),
        }
    }
}

/// A signed permutation in window notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct SignedPerm {
    window: Vec<Letter>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> SignedPerm {
        SignedPerm {
            window: (1..=n).map(Letter::plain).collect(),
        }
    }

    /// `1̄2̄…n̄`, the longest element.
    pub fn longest(n: usize) -> SignedPerm {
        SignedPerm {
            window: (1..=n).map(Letter::barred).collect(),
        }
    }

    pub fn from_letters(window: Vec<Letter>) -> Result<SignedPerm> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for l in &window {
            let a = l.abs();
            if a > n || seen[a] {
                return Err(Error::NotSignedPermutation(
                    window.iter().map(|l| l.value()).collect(),
                ));
            }
            seen[a] = true;
        }
        Ok(SignedPerm { window })
    }

    pub fn from_window(values: &[i32]) -> Result<SignedPerm> {
        let letters = values
            .iter()
            .map(|&v| Letter::new(v))
            .collect::<Result<Vec<_>>>()?;
        SignedPerm::from_letters(letters)
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[Letter] {
        &self.window
    }

    /// `w(i)`, 1-based.
    pub fn at(&self, i: usize) -> Letter {
        self.window[i - 1]
    }

    pub fn values(&self) -> Vec<i32> {
        self.window.iter().map(|l| l.value()).collect()
    }

    pub fn apply(&self, r: Reflection) -> Result<SignedPerm> {
        r.validate(self.n())?;
        Ok(self.apply_unchecked(r))
    }

    pub(crate) fn apply_unchecked(&self, r: Reflection) -> SignedPerm {
        let mut out = self.clone();
        r.act_on(&mut out.window);
        out
    }

    pub fn ell_plus(&self) -> usize {
        ell_plus_column(&self.window)
    }

    pub fn ell_minus(&self) -> usize {
        let w = &self.window;
        let mut count = 0;
        for k in 0..w.len() {
            for l in k..w.len() {
                if w[k] > w[l].bar() {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn length(&self) -> usize {
        self.ell_plus() + self.ell_minus()
    }

    /// Whether `ℓ(w·r) > ℓ(w)`.
    pub fn goes_up(&self, r: Reflection) -> bool {
        match r {
            Reflection::Transposition(i, j) => self.at(i) < self.at(j),
            Reflection::SignedTransposition(i, j) => self.at(i) < self.at(j).bar(),
            Reflection::SignChange(i) => !self.at(i).is_barred(),
        }
    }

    /// `(ℓ(w·r) - ℓ(w) - 1) / 2` for an upward step, by the closed forms.
    fn half_up_gap(&self, r: Reflection) -> usize {
        let w = &self.window;
        let n = w.len();
        match r {
            Reflection::Transposition(i, j) => count_between(self.at(i), self.at(j), &w[i - 1..j]),
            Reflection::SignChange(i) => {
                let a = self.at(i);
                count_between(a, a.bar(), &w[i - 1..n])
            }
            Reflection::SignedTransposition(i, j) => {
                let (a, b) = (self.at(i), self.at(j));
                let hi = b.bar();
                let tail: Vec<Letter> = w[j..n].iter().flat_map(|&x| [x, x.bar()]).collect();
                let tau = usize::from(!a.is_barred() && !b.is_barred());
                count_between(a, hi, &w[i - 1..j - 1]) + count_between(a, hi, &tail) + tau
            }
        }
    }

    /// Inverse element.
    pub fn inverse(&self) -> SignedPerm {
        let mut out = vec![Letter::plain(1); self.n()];
        for (i, l) in self.window.iter().enumerate() {
            let pos = Letter::plain(i + 1);
            out[l.abs() - 1] = if l.is_barred() { pos.bar() } else { pos };
        }
        SignedPerm { window: out }
    }

    /// `w(x)` for a letter `x`, using `w(ī) = -w(i)`.
    pub fn image(&self, x: Letter) -> Letter {
        let y = self.at(x.abs());
        if x.is_barred() {
            y.bar()
        } else {
            y
        }
    }
}

impl TryFrom<Vec<i32>> for SignedPerm {
    type Error = Error;
    fn try_from(v: Vec<i32>) -> Result<SignedPerm> {
        SignedPerm::from_window(&v)
    }
}

impl From<SignedPerm> for Vec<i32> {
    fn from(w: SignedPerm) -> Vec<i32> {
        w.values()
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.window.iter().join(","))
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.window.iter().join(" "))
    }
}

/// `ℓ₊` of a column: pairs `k < l` with `C(k) > C(l)`.
pub fn ell_plus_column(column: &[Letter]) -> usize {
    column
        .iter()
        .tuple_combinations()
        .filter(|(a, b)| a > b)
        .count()
}

/// Checked version of [`ell_plus_column`]; rejects repeated absolute values.
pub fn ell_plus_column_checked(column: &[Letter]) -> Result<usize> {
    if let Some((a, _)) = column
        .iter()
        .tuple_combinations()
        .find(|(a, b)| a.abs() == b.abs())
    {
        return Err(Error::RepeatedLetter(a.abs()));
    }
    Ok(ell_plus_column(column))
}

/// `ℓ(w·r) - ℓ(w)` from the closed forms. A downward step is evaluated at
/// `w·r`, where the same reflection goes up.
pub fn length_diff(w: &SignedPerm, r: Reflection) -> Result<i64> {
    r.validate(w.n())?;
    Ok(length_diff_unchecked(w, r))
}

pub(crate) fn length_diff_unchecked(w: &SignedPerm, r: Reflection) -> i64 {
    if w.goes_up(r) {
        1 + 2 * w.half_up_gap(r) as i64
    } else {
        let wr = w.apply_unchecked(r);
        -(1 + 2 * wr.half_up_gap(r) as i64)
    }
}

/// Position of `(k, l̄)`, `k ≤ l`, in the order
/// `(1,1̄), (1,2̄), (2,2̄), (1,3̄), …`.
fn phi_rank(k: usize, l: usize) -> usize {
    l * (l - 1) / 2 + k
}

/// `ℓ₋^{ij}(w)`: pairs `(k,l)` with `(k,l̄)` strictly before `(i,j̄)` in the
/// sign-change order and `w(k) > w(l)̄`.
pub fn ell_minus_ij(w: &SignedPerm, i: usize, j: usize) -> Result<usize> {
    let n = w.n();
    if !(1 <= i && i <= j && j <= n) {
        return Err(Error::InvalidPair { i, j, n });
    }
    let bound = phi_rank(i, j);
    let mut count = 0;
    for l in 1..=n {
        for k in 1..=l {
            if phi_rank(k, l) < bound && w.at(k) > w.at(l).bar() {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// All of `B_n` in a fixed order: permutations of absolute values in
/// lexicographic order, then sign patterns by binary counting.
pub fn enumerate_group(n: usize) -> Result<Vec<SignedPerm>> {
    if n == 0 {
        return Err(Error::InvalidRank(n));
    }
    if n > MAX_GROUP_RANK {
        return Err(Error::RankTooLarge {
            n,
            cap: MAX_GROUP_RANK,
        });
    }
    let mut out = Vec::new();
    for perm in (1..=n).permutations(n) {
        for mask in 0u32..(1 << n) {
            let window = perm
                .iter()
                .enumerate()
                .map(|(pos, &v)| {
                    if mask & (1 << pos) != 0 {
                        Letter::barred(v)
                    } else {
                        Letter::plain(v)
                    }
                })
                .collect();
            out.push(SignedPerm { window });
        }
    }
    Ok(out)
}

/// Coordinate vector of a weight, stored doubled so that the half-integral
/// weights of type B stay integral.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVec(Vec<i32>);

impl WeightVec {
    pub fn from_doubled(doubled: Vec<i32>) -> WeightVec {
        WeightVec(doubled)
    }

    /// From integral coordinates.
    pub fn from_integers(coords: &[i32]) -> WeightVec {
        WeightVec(coords.iter().map(|c| 2 * c).collect())
    }

    pub fn zero(n: usize) -> WeightVec {
        WeightVec(vec![0; n])
    }

    pub fn doubled(&self) -> &[i32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c % 2 == 0)
    }

    /// `2⟨v, x⟩` for an integer vector `x` (typically a coroot).
    pub fn doubled_pairing(&self, x: &[i32]) -> i64 {
        self.0
            .iter()
            .zip(x)
            .map(|(&a, &b)| a as i64 * b as i64)
            .sum()
    }

    pub fn add_assign_doubled(&mut self, coord: usize, delta: i32) {
        self.0[coord] += delta;
    }

    pub fn negate(&self) -> WeightVec {
        WeightVec(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            if c % 2 == 0 {
                write!(f, "{}", c / 2)?;
            } else {
                write!(f, "{c}/2")?;
            }
        }
        write!(f, ")")
    }
}

/// `w(v)`: `result_{|w(i)|} = sign(w(i)) · v_i`.
pub fn act_on_weight(w: &SignedPerm, v: &WeightVec) -> WeightVec {
    let mut out = vec![0; v.n()];
    for (i, l) in w.window().iter().enumerate() {
        out[l.abs() - 1] = l.sign() * v.0[i];
    }
    WeightVec(out)
}
