use coherence::index::{
    compose_index, eval_word, factor_delta, factor_fin, factor_lambda, hom_set, hom_set_size, CyclicMap, DeltaMap,
    Family, FinMap, IndexMor, LambdaObj, LambdaPrimeMor, Perm, Rot,
};
use proptest::prelude::*;

/// All functions `{1..n} → {1..k}` as value vectors.
fn functions(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (1..=k).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn monotone(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] <= w[1])
}

/// Degree-one monotone lifts `Z → Z` with `f(x + n) = f(x) + k`, taken up
/// to adding `k`: weakly increasing `a_1..a_n` with `1 ≤ a_1 ≤ k` and
/// `a_n ≤ a_1 + k`.
fn brute_cyclic_count(n: usize, k: usize) -> usize {
    functions(n, 2 * k).into_iter().filter(|v| monotone(v) && v[0] <= k && v[n - 1] <= v[0] + k).count()
}

#[test]
fn delta_and_fin_hom_sizes_match_brute_force() {
    for n in 0..=4 {
        for k in 0..=4 {
            let all = functions(n, k);
            let mono = all.iter().filter(|v| monotone(v)).count();
            assert_eq!(DeltaMap::all(n, k).len(), mono, "Δ({n},{k})");
            assert_eq!(FinMap::all(n, k).len(), all.len(), "Fin({n},{k})");
            assert_eq!(hom_set_size(Family::Delta, LambdaObj::Finite(n), LambdaObj::Finite(k)), mono as u128);
            assert_eq!(hom_set_size(Family::Fin, LambdaObj::Finite(n), LambdaObj::Finite(k)), all.len() as u128);
        }
    }
}

#[test]
fn lambda_hom_sizes() {
    for n in 1..=5 {
        assert_eq!(LambdaPrimeMor::all(LambdaObj::Finite(n), LambdaObj::Finite(1)).len(), n);
    }
    for n in 1..=4 {
        for k in 1..=4 {
            let all = CyclicMap::all(n, k);
            assert_eq!(all.len(), brute_cyclic_count(n, k));
            assert_eq!(hom_set_size(Family::Lambda, LambdaObj::Finite(n), LambdaObj::Finite(k)), all.len() as u128);
            // Distinct lifts give distinct maps.
            let mut lifts: Vec<_> = all.iter().map(|f| f.lift().to_vec()).collect();
            lifts.dedup();
            assert_eq!(lifts.len(), all.len());
        }
    }
    assert_eq!(LambdaPrimeMor::all(LambdaObj::Finite(0), LambdaObj::Star).len(), 1);
    assert!(LambdaPrimeMor::all(LambdaObj::Star, LambdaObj::Finite(2)).is_empty());
}

#[test]
fn perm_all_is_every_bijection() {
    for n in 0..=5 {
        let perms = Perm::all(n);
        let brute = functions(n, n).into_iter().filter(|v| {
            let mut s = v.clone();
            s.sort_unstable();
            s.dedup();
            s.len() == n
        });
        assert_eq!(perms.len(), brute.count());
    }
}

fn family_objects(family: Family) -> Vec<LambdaObj> {
    let mut objs: Vec<LambdaObj> = (0..=3).map(LambdaObj::Finite).collect();
    if family == Family::Lambda {
        objs.push(LambdaObj::Star);
    }
    objs
}

proptest! {
    #[test]
    fn composition_is_associative_and_unital(
        fam in prop_oneof![Just(Family::Delta), Just(Family::Fin), Just(Family::Lambda)],
        picks in proptest::collection::vec(0usize..5, 4),
        choice in proptest::collection::vec(any::<prop::sample::Index>(), 3),
    ) {
        let objs = family_objects(fam);
        let o: Vec<LambdaObj> = picks.iter().map(|&i| objs[i % objs.len()]).collect();
        let homs: Vec<Vec<IndexMor>> = (0..3).map(|i| hom_set(fam, o[i], o[i + 1]).unwrap()).collect();
        prop_assume!(homs.iter().all(|h| !h.is_empty()));
        let f = choice[0].get(&homs[0]);
        let g = choice[1].get(&homs[1]);
        let h = choice[2].get(&homs[2]);
        let left = compose_index(h, &compose_index(g, f).unwrap()).unwrap();
        let right = compose_index(&compose_index(h, g).unwrap(), f).unwrap();
        prop_assert_eq!(&left, &right);
        let id = IndexMor::identity(fam, o[1]).unwrap();
        prop_assert_eq!(&compose_index(&id, f).unwrap(), f);
        prop_assert_eq!(&compose_index(g, &id).unwrap(), g);
    }

    #[test]
    fn delta_factorization_evaluates_back(n in 0usize..5, k in 0usize..5, pick in any::<prop::sample::Index>()) {
        let all = DeltaMap::all(n, k);
        prop_assume!(!all.is_empty());
        let f = pick.get(&all);
        prop_assert_eq!(&eval_word(n, &factor_delta(f)).unwrap(), f);
    }

    #[test]
    fn fin_factorization_composes_back(n in 0usize..5, k in 0usize..5, pick in any::<prop::sample::Index>()) {
        let all = FinMap::all(n, k);
        prop_assume!(!all.is_empty());
        let f = pick.get(&all);
        let (sigma, delta) = factor_fin(f);
        let back = FinMap::compose(&FinMap::from_delta(&delta), &FinMap::from_perm(&sigma)).unwrap();
        prop_assert_eq!(&back, f);
    }

    #[test]
    fn lambda_factorization_composes_back(n in 1usize..5, k in 1usize..5, pick in any::<prop::sample::Index>()) {
        let all = CyclicMap::all(n, k);
        let f = pick.get(&all);
        let (rot, delta) = factor_lambda(f);
        let back = CyclicMap::compose(&CyclicMap::from_delta(&delta).unwrap(), &CyclicMap::rotation(rot)).unwrap();
        prop_assert_eq!(&back, f);
    }

    #[test]
    fn perm_inverse_and_rotation_group(n in 1usize..6, pick in any::<prop::sample::Index>(), a in -12i64..12, b in -12i64..12) {
        let perms = Perm::all(n);
        let p = pick.get(&perms);
        prop_assert!(p.then(&p.inverse()).is_identity());
        let (ra, rb) = (Rot::new(n, a), Rot::new(n, b));
        prop_assert_eq!(ra.then(rb), Rot::new(n, a + b));
        prop_assert!(ra.then(ra.inverse()).is_identity());
        prop_assert_eq!(ra.then(rb).to_perm(), ra.to_perm().then(&rb.to_perm()));
    }
}
