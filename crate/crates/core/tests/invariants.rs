use std::collections::{HashMap, VecDeque};

use hlbc::fillings::Filling;
use hlbc::formula::{builtin_weights, tableau_evaluate, Instance};
use hlbc::poly::{LaurentPoly, TPoly};
use hlbc::weyl::{act_on_weight, enumerate_group, length_diff, Reflection, SignedPerm, WeightVec};
use proptest::prelude::*;

/// Lengths by breadth-first search over the Coxeter generators: adjacent
/// transpositions and the sign change in the last position.
fn bfs_lengths(n: usize) -> HashMap<Vec<i32>, usize> {
    let mut gens: Vec<Reflection> = (1..n)
        .map(|i| Reflection::Transposition(i, i + 1))
        .collect();
    gens.push(Reflection::SignChange(n));
    let mut dist = HashMap::new();
    let start = SignedPerm::identity(n);
    dist.insert(start.values(), 0);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w.values()];
        for &g in &gens {
            let next = w.apply(g).unwrap();
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(next.values()) {
                e.insert(d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

#[test]
fn lengths_match_word_metric() {
    for n in 1..=4 {
        let oracle = bfs_lengths(n);
        let group = enumerate_group(n).unwrap();
        assert_eq!(oracle.len(), group.len());
        for w in group {
            assert_eq!(w.length(), oracle[&w.values()], "{w}");
        }
        assert_eq!(SignedPerm::longest(n).length(), n * n);
    }
}

#[test]
fn hall_littlewood_polynomials_are_symmetric() {
    for weight in builtin_weights() {
        let p = tableau_evaluate(&Instance::new(&weight).unwrap()).unwrap();
        for w in enumerate_group(weight.n()).unwrap() {
            assert_eq!(p.apply_group_element(&w), p, "{weight} under {w}");
        }
    }
}

fn signed_perm(max_n: usize) -> impl Strategy<Value = SignedPerm> {
    (1..=max_n).prop_flat_map(|n| {
        (
            Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(vals, signs)| {
                let window: Vec<i32> = vals
                    .iter()
                    .zip(signs)
                    .map(|(&v, s)| if s { -v } else { v })
                    .collect();
                SignedPerm::from_window(&window).unwrap()
            })
    })
}

fn reflection(n: usize) -> impl Strategy<Value = Reflection> {
    (1..=n, 1..=n, 0..3u8).prop_map(move |(i, j, kind)| {
        let (i, j) = (i.min(j), i.max(j));
        match kind {
            _ if i == j => Reflection::SignChange(i),
            0 => Reflection::Transposition(i, j),
            1 => Reflection::SignedTransposition(i, j),
            _ => Reflection::SignChange(j),
        }
    })
}

proptest! {
    #[test]
    fn length_difference_closed_form(
        (w, r) in signed_perm(7).prop_flat_map(|w| { let n = w.n(); (Just(w), reflection(n)) })
    ) {
        let direct = w.apply(r).unwrap().length() as i64 - w.length() as i64;
        prop_assert_eq!(length_diff(&w, r).unwrap(), direct);
        prop_assert_eq!(w.apply(r).unwrap().apply(r).unwrap(), w.clone());
        prop_assert_eq!(w.goes_up(r), direct > 0);
    }

    #[test]
    fn inverse_preserves_length(w in signed_perm(7)) {
        prop_assert_eq!(w.inverse().length(), w.length());
        prop_assert_eq!(w.inverse().inverse(), w.clone());
    }

    #[test]
    fn weight_action_is_a_homomorphism(
        (u, w, v) in signed_perm(6).prop_flat_map(|u| {
            let n = u.n();
            let perm = proptest::sample::select(enumerate_group(n).unwrap());
            (Just(u), perm, proptest::collection::vec(-4i32..=4, n))
        })
    ) {
        let v = WeightVec::from_integers(&v);
        let uw = SignedPerm::from_letters(w.window().iter().map(|&x| u.image(x)).collect()).unwrap();
        prop_assert_eq!(act_on_weight(&uw, &v), act_on_weight(&u, &act_on_weight(&w, &v)));
    }

    #[test]
    fn t_one_minus_t_round_trip(a in 0usize..8, b in 0usize..8) {
        prop_assert_eq!(TPoly::t_pow_one_minus_t(a, b).as_t_one_minus_t(), Some((a, b)));
    }

    #[test]
    fn exact_division_inverts_multiplication(
        xs in proptest::collection::vec((proptest::collection::vec(-3i32..=3, 2), -5i64..=5), 1..5),
        ys in proptest::collection::vec((proptest::collection::vec(-3i32..=3, 2), -5i64..=5), 1..5),
    ) {
        let build = |terms: &[(Vec<i32>, i64)]| {
            let mut p = LaurentPoly::zero(2);
            for (v, c) in terms {
                p.add_monomial(WeightVec::from_integers(v), *c);
            }
            p
        };
        let (x, y) = (build(&xs), build(&ys));
        prop_assume!(!y.is_zero());
        prop_assert_eq!(x.mul(&y).div_exact(&y).unwrap(), x);
    }

    #[test]
    fn filling_json_round_trip(cols in proptest::collection::vec(proptest::collection::vec(
        prop_oneof![1i32..=5, -5i32..=-1], 1..4), 1..5)) {
        let refs: Vec<&[i32]> = cols.iter().map(|c| c.as_slice()).collect();
        let f = Filling::from_values(&refs).unwrap();
        let back: Filling = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }
}
