//! The tableau formula, the fiber-by-fiber comparison with the alcove-walk
//! formula, and small self-checks built on both.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::alcove::{
    check_levels, first_row_chain, fold_admissible, for_each_admissible, sign_change_chain,
    sub_chain_sum, AdmissiblePair, Direction, EnumOptions,
};
use crate::chains::LambdaChain;
use crate::error::Result;
use crate::fillings::{
    compress, content, enumerate_fillings, filling_map, hhl_reduction, hhl_stats, in_hhl_class,
    statistics, Filling, FillingStats, HatShape,
};
use crate::poly::{HLPoly, TPoly};
use crate::weight::DominantWeight;
use crate::weyl::{
    count_between, ell_minus_ij, enumerate_group, length_diff, CartanType, Letter, Reflection,
    SignedPerm,
};

/// A regular weight with its λ-chain and filling shape.
#[derive(Clone, Debug)]
pub struct Instance {
    chain: LambdaChain,
    shape: HatShape,
}

impl Instance {
    pub fn new(weight: &DominantWeight) -> Result<Instance> {
        let chain = LambdaChain::new(weight)?;
        let shape = HatShape::new(&chain);
        Ok(Instance { chain, shape })
    }

    pub fn weight(&self) -> &DominantWeight {
        self.chain.weight()
    }

    pub fn chain(&self) -> &LambdaChain {
        &self.chain
    }

    pub fn shape(&self) -> &HatShape {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.chain.n()
    }
}

/// The weights checked by default: type C `(2,1)`, `(3,1)`, `(3,2)` in rank
/// 2 and `(3,2,1)` in rank 3; type B `μ = (2,1)` and `(2,2,1)` in rank 2.
pub fn builtin_weights() -> Vec<DominantWeight> {
    let c = |n, p: &[usize]| DominantWeight::type_c(n, p).expect("valid weight");
    let b = |n, p: &[usize]| DominantWeight::type_b_partition(n, p).expect("valid weight");
    vec![
        c(2, &[2, 1]),
        c(2, &[3, 1]),
        c(2, &[3, 2]),
        c(3, &[3, 2, 1]),
        b(2, &[2, 1]),
        b(2, &[2, 2, 1]),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct TableauTerm {
    pub filling: Filling,
    pub stats: FillingStats,
    /// Doubled.
    pub content: Vec<i32>,
}

pub fn tableau_terms(instance: &Instance) -> Result<Vec<TableauTerm>> {
    let shape = instance.shape();
    enumerate_fillings(shape)
        .into_iter()
        .map(|filling| {
            let stats = statistics(shape, &filling)?;
            let content = content(shape, &filling).doubled().to_vec();
            Ok(TableauTerm {
                filling,
                stats,
                content,
            })
        })
        .collect()
}

/// `Σ_{σ ∈ F(λ)} t^{N(σ)} (1-t)^{des(σ)} x^{ct(σ)}`.
pub fn tableau_evaluate(instance: &Instance) -> Result<HLPoly> {
    let mut p = HLPoly::zero(instance.n());
    for term in tableau_terms(instance)? {
        p.add_term(
            term.stats.n as usize,
            term.stats.des,
            crate::weyl::WeightVec::from_doubled(term.content),
        );
    }
    Ok(p)
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub filling: Filling,
    pub size: usize,
    pub sum: TPoly,
    pub predicted: TPoly,
    pub n: u64,
    pub des: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompressionReport {
    pub fillings: usize,
    pub pairs: usize,
    pub factor: f64,
    /// Admissible pairs with `ct(f(w,J)) ≠ w(μ(J))`, up to a few witnesses.
    pub weight_failures: Vec<AdmissiblePair>,
    /// Admissible pairs failing the level identity, if it was checked.
    pub level_failures: Vec<AdmissiblePair>,
    /// Images of the filling map that are not in the enumerated `F(λ)`.
    pub unexpected_fillings: Vec<Filling>,
    /// Enumerated fillings that are not images of the filling map.
    pub unreached_fillings: Vec<Filling>,
    pub fibers: Vec<FiberReport>,
}

impl CompressionReport {
    pub fn passed(&self) -> bool {
        self.weight_failures.is_empty()
            && self.level_failures.is_empty()
            && self.unexpected_fillings.is_empty()
            && self.unreached_fillings.is_empty()
            && self.fibers.iter().all(|f| f.matches)
    }

    pub fn fiber(&self, filling: &Filling) -> Option<&FiberReport> {
        self.fibers.iter().find(|f| &f.filling == filling)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub enumeration: EnumOptions,
    /// Also check the wall levels of every folded walk against the content.
    pub check_levels: bool,
}

const MAX_WITNESSES: usize = 5;

#[derive(Default)]
struct FiberAcc {
    fibers: BTreeMap<Filling, (usize, TPoly)>,
    pairs: usize,
    weight_failures: Vec<AdmissiblePair>,
    level_failures: Vec<AdmissiblePair>,
}

impl FiberAcc {
    fn merge(mut self, other: FiberAcc) -> FiberAcc {
        for (f, (size, sum)) in other.fibers {
            let e = self.fibers.entry(f).or_insert((0, TPoly::zero()));
            e.0 += size;
            e.1.add_assign(&sum);
        }
        self.pairs += other.pairs;
        for (mine, theirs) in [
            (&mut self.weight_failures, other.weight_failures),
            (&mut self.level_failures, other.level_failures),
        ] {
            mine.extend(theirs);
            mine.truncate(MAX_WITNESSES);
        }
        self
    }
}

/// Groups the alcove-walk terms by filling and compares every fiber sum with
/// `t^{N(σ)} (1-t)^{des(σ)}`. Also checks that the images of the filling map
/// are exactly the enumerated fillings and that contents match weights.
pub fn verify_compression(
    instance: &Instance,
    options: VerifyOptions,
) -> Result<CompressionReport> {
    let (chain, shape) = (instance.chain(), instance.shape());
    let acc = fold_admissible(
        chain,
        options.enumeration,
        FiberAcc::default,
        |acc, pair| {
            let f = filling_map(chain, shape, pair.w, pair.positions);
            acc.pairs += 1;
            if content(shape, &f) != pair.weight && acc.weight_failures.len() < MAX_WITNESSES {
                acc.weight_failures.push(pair.to_owned());
            }
            if options.check_levels
                && acc.level_failures.len() < MAX_WITNESSES
                && check_levels(chain, shape, pair.w, pair.positions).is_err()
            {
                acc.level_failures.push(pair.to_owned());
            }
            let e = acc.fibers.entry(f).or_insert((0, TPoly::zero()));
            e.0 += 1;
            e.1.add_assign(&TPoly::t_pow_one_minus_t(pair.a as usize, pair.b()));
        },
        FiberAcc::merge,
    )?;

    let enumerated = enumerate_fillings(shape);
    let unreached_fillings = enumerated
        .iter()
        .filter(|f| !acc.fibers.contains_key(f))
        .cloned()
        .collect();
    let mut unexpected_fillings = Vec::new();
    let mut fibers = Vec::with_capacity(acc.fibers.len());
    for (filling, (size, sum)) in acc.fibers {
        match statistics(shape, &filling) {
            Ok(stats) => {
                let predicted = TPoly::t_pow_one_minus_t(stats.n as usize, stats.des);
                fibers.push(FiberReport {
                    matches: predicted == sum,
                    filling,
                    size,
                    sum,
                    predicted,
                    n: stats.n,
                    des: stats.des,
                });
            }
            Err(_) => unexpected_fillings.push(filling),
        }
    }
    if !unexpected_fillings.is_empty() {
        unexpected_fillings.retain(|f| !enumerated.contains(f));
    }
    Ok(CompressionReport {
        fillings: enumerated.len(),
        pairs: acc.pairs,
        factor: acc.pairs as f64 / enumerated.len() as f64,
        weight_failures: acc.weight_failures,
        level_failures: acc.level_failures,
        unexpected_fillings,
        unreached_fillings,
        fibers,
    })
}

/// Pairs grouped by their compressed filling instead of the full one.
#[derive(Clone, Debug, Serialize)]
pub struct CompressedFiber {
    pub compressed: Filling,
    pub pairs: Vec<AdmissiblePair>,
    /// The folded roots of each pair, rendered.
    pub roots: Vec<Vec<String>>,
    pub sum: TPoly,
    /// Whether `sum` has the form `t^a (1-t)^b`.
    pub factored: bool,
}

/// Collects the admissible pairs whose compressed filling equals `target`.
pub fn compressed_fiber(instance: &Instance, target: &Filling) -> Result<CompressedFiber> {
    let (chain, shape) = (instance.chain(), instance.shape());
    let mut pairs = Vec::new();
    for w in enumerate_group(instance.n())? {
        for_each_admissible(chain, &w, |p| {
            if &compress(shape, &filling_map(chain, shape, p.w, p.positions)) == target {
                pairs.push(p.to_owned());
            }
        });
    }
    let mut sum = TPoly::zero();
    for p in &pairs {
        sum.add_assign(&TPoly::t_pow_one_minus_t(p.a as usize, p.b));
    }
    let roots = pairs
        .iter()
        .map(|p| {
            p.positions
                .iter()
                .map(|&k| chain.roots()[k - 1].to_string())
                .collect()
        })
        .collect();
    Ok(CompressedFiber {
        compressed: target.clone(),
        factored: sum.as_t_one_minus_t().is_some(),
        pairs,
        roots,
        sum,
    })
}

/// The compressed fiber over `n = 2`, `λ = (3,2)` whose sum is
/// `t(1-t) + (1-t)³`, not a single product `t^a (1-t)^b`.
pub fn compressed_fiber_demo() -> Result<CompressedFiber> {
    let instance = Instance::new(&DominantWeight::type_c(2, &[3, 2])?)?;
    let target = Filling::from_values(&[&[-2], &[-2], &[-2, -1], &[-2, -1], &[1, 2], &[1, 2]])?;
    compressed_fiber(&instance, &target)
}

/// Outcome of one family of checks in [`identity_suite`].
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    pub seconds: f64,
}

impl IdentityCheck {
    fn new(name: &str) -> IdentityCheck {
        IdentityCheck {
            name: name.to_string(),
            cases: 0,
            failures: 0,
            first_failure: None,
            seconds: 0.0,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn all_reflections(n: usize) -> Vec<Reflection> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(Reflection::Transposition(i, j));
            out.push(Reflection::SignedTransposition(i, j));
        }
        out.push(Reflection::SignChange(i));
    }
    out
}

fn random_perm(rng: &mut StdRng, n: usize) -> SignedPerm {
    let mut values: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        values.swap(i, rng.random_range(0..=i));
    }
    let letters = values
        .into_iter()
        .map(|v| {
            if rng.random_bool(0.5) {
                Letter::barred(v)
            } else {
                Letter::plain(v)
            }
        })
        .collect();
    SignedPerm::from_letters(letters).expect("a signed permutation")
}

/// Closed-form length differences against direct length computation:
/// exhaustive for `n ≤ exhaustive_n`, then `trials` random cases with
/// `n ≤ random_n`.
pub fn check_length_differences(
    exhaustive_n: usize,
    random_n: usize,
    trials: usize,
    seed: u64,
) -> Result<IdentityCheck> {
    let start = Instant::now();
    let mut check = IdentityCheck::new("length differences");
    let mut one = |w: &SignedPerm, r: Reflection| -> Result<()> {
        let diff = length_diff(w, r)?;
        let direct = w.apply(r)?.length() as i64 - w.length() as i64;
        check.record(diff == direct && diff % 2 != 0, || {
            format!("w = {w}, r = {r:?}: {diff} vs {direct}")
        });
        Ok(())
    };
    for n in 1..=exhaustive_n {
        for w in enumerate_group(n)? {
            for r in all_reflections(n) {
                one(&w, r)?;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(seed);
    if random_n >= 1 {
        for _ in 0..trials {
            let n = rng.random_range(1..=random_n);
            let w = random_perm(&mut rng, n);
            let rs = all_reflections(n);
            let r = rs[rng.random_range(0..rs.len())];
            one(&w, r)?;
        }
    }
    check.seconds = start.elapsed().as_secs_f64();
    Ok(check)
}

/// Increasing foldings along `((1,p+1), …, (1,n), (1,1̄), (1,n̄), …, (1,p+1̄))`
/// ending at `wT(1) = b` sum to `t^{N_{ab}(w[2,p])} (1-t)^{1-δ_{ab}}`, for all
/// `w ∈ B_n`, `n ≤ max_n`.
pub fn check_first_row_sums(max_n: usize) -> Result<IdentityCheck> {
    let start = Instant::now();
    let mut check = IdentityCheck::new("first-row chain sums");
    for n in 1..=max_n {
        for w in enumerate_group(n)? {
            let a = w.at(1);
            for p in 1..=n {
                let delta = first_row_chain(n, p);
                let mut targets = vec![a, a.bar()];
                targets.extend(w.window()[p..].iter().flat_map(|&x| [x, x.bar()]));
                for b in targets.into_iter().filter(|&b| b >= a) {
                    let lhs = sub_chain_sum(&delta, &w, Direction::Increasing, |e| e.at(1) == b);
                    let exp = count_between(a, b, &w.window()[1..p]);
                    let rhs = TPoly::t_pow_one_minus_t(exp, usize::from(a != b));
                    check.record(lhs == rhs, || {
                        format!("w = {w}, p = {p}, b = {b}: {lhs} vs {rhs}")
                    });
                }
            }
        }
    }
    check.seconds = start.elapsed().as_secs_f64();
    Ok(check)
}

/// Decreasing foldings along the part of the sign-change chain from
/// `(i, j̄)` on sum to `t^{ℓ₊(w) + ℓ₋^{ij}(w)}`, for all `w ∈ B_n`,
/// `n ≤ max_n`.
pub fn check_sign_change_sums(max_n: usize) -> Result<IdentityCheck> {
    let start = Instant::now();
    let mut check = IdentityCheck::new("sign-change chain sums");
    for n in 1..=max_n {
        for w in enumerate_group(n)? {
            for j in 1..=n {
                for i in 1..=j {
                    let lhs = sub_chain_sum(
                        &sign_change_chain(n, i, j),
                        &w,
                        Direction::Decreasing,
                        |_| true,
                    );
                    let rhs = TPoly::t_pow_one_minus_t(w.ell_plus() + ell_minus_ij(&w, i, j)?, 0);
                    check.record(lhs == rhs, || {
                        format!("w = {w}, (i,j) = ({i},{j}): {lhs} vs {rhs}")
                    });
                }
            }
        }
    }
    check.seconds = start.elapsed().as_secs_f64();
    Ok(check)
}

/// Wall levels of folded walks against filling contents, for every
/// admissible pair of each instance.
pub fn check_wall_levels(instances: &[Instance]) -> Result<IdentityCheck> {
    let start = Instant::now();
    let mut check = IdentityCheck::new("wall levels");
    for inst in instances {
        let (chain, shape) = (inst.chain(), inst.shape());
        for w in enumerate_group(inst.n())? {
            for_each_admissible(chain, &w, |p| {
                let res = check_levels(chain, shape, p.w, p.positions);
                check.record(res.is_ok(), || {
                    format!(
                        "{}: w = {}, J = {:?}: {res:?}",
                        inst.weight(),
                        p.w,
                        p.positions
                    )
                });
            });
        }
    }
    check.seconds = start.elapsed().as_secs_f64();
    Ok(check)
}

/// `N(σ) = cinv(σ̃)` and `des(σ) = des(σ̃)` on the type C fillings whose
/// primed transitions are trivial and whose unprimed transitions only
/// change their pivot row.
pub fn check_hhl(instance: &Instance) -> Result<IdentityCheck> {
    let start = Instant::now();
    let mut check = IdentityCheck::new("inversion statistics");
    if instance.weight().cartan() != CartanType::C {
        return Ok(check);
    }
    let shape = instance.shape();
    for f in enumerate_fillings(shape) {
        if !in_hhl_class(shape, &f)? {
            continue;
        }
        let stats = statistics(shape, &f)?;
        let reduced = hhl_reduction(shape, &f);
        let hhl = hhl_stats(&reduced)?;
        let ok = stats.n == hhl.cinv as u64
            && stats.des == hhl.des
            && hhl.cinv + hhl.inv == hhl.n_lambda;
        check.record(ok, || {
            format!("{f:?}: N = {}, des = {}, {hhl:?}", stats.n, stats.des)
        });
    }
    check.seconds = start.elapsed().as_secs_f64();
    Ok(check)
}

/// The length-difference, chain-sum and level checks, with `n ≤ max_n` for
/// the exhaustive parts and `trials` random length checks up to rank 6.
pub fn identity_suite(max_n: usize, trials: usize, seed: u64) -> Result<Vec<IdentityCheck>> {
    let small: Vec<Instance> = builtin_weights()
        .iter()
        .filter(|w| w.n() <= max_n.min(2))
        .map(Instance::new)
        .collect::<Result<_>>()?;
    Ok(vec![
        check_length_differences(max_n, 6, trials, seed)?,
        check_first_row_sums(max_n)?,
        check_sign_change_sums(max_n)?,
        check_wall_levels(&small)?,
    ])
}
