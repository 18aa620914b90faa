use std::collections::HashSet;
use std::sync::Arc;

use geostar::automaton::{words_of_length, words_up_to};
use geostar::catalog;
use geostar::geodesics::{build_ball, BallSearch, GeodesicTest};
use geostar::group::{
    AbelianGroup, FiniteGroup, FreeGroup, MatrixGroup, Presentation, RightAngledArtin, WordOracle,
};
use geostar::{Alphabet, Word};
use proptest::prelude::*;

#[test]
fn dehn_geodesic_test_agrees_with_exact_ball() {
    let g = catalog::genus2();
    let exact = BallSearch::new(Arc::new(g.clone()), 4, 1_000_000).unwrap();
    for len in 0..=5 {
        for w in words_of_length(8, len) {
            assert_eq!(GeodesicTest::is_geodesic(&g, &w).unwrap(), exact.is_geodesic(&w).unwrap(), "{w:?}");
        }
    }
}

/// Every word obtained from the empty word by inserting cancelling pairs
/// and relator conjugates, up to length 8, is trivial; words up to length
/// 6 are trivial only when they freely reduce to the empty word.
#[test]
fn genus2_word_problem_matches_relator_closure() {
    let g = catalog::genus2();
    let p = g.presentation().clone();
    let al = p.alphabet().clone();
    let mut inserts: Vec<Word> = p.symmetrize().words().to_vec();
    inserts.extend((0..al.len()).map(|a| vec![a, al.inverse_of(a).unwrap()]));
    let mut closure: HashSet<Word> = HashSet::from([vec![]]);
    let mut frontier = vec![Vec::new()];
    while let Some(w) = frontier.pop() {
        for ins in &inserts {
            if w.len() + ins.len() > 8 {
                continue;
            }
            for i in 0..=w.len() {
                let mut x = w[..i].to_vec();
                x.extend(ins);
                x.extend(&w[i..]);
                if closure.insert(x.clone()) {
                    frontier.push(x);
                }
            }
        }
    }
    assert!(closure.len() > 1000);
    assert!(closure.iter().all(|w| g.is_identity(w)));
    for w in words_up_to(8, 6) {
        assert_eq!(g.is_identity(&w), al.free_reduce(&w).is_empty(), "{}", al.format_word(&w));
    }
}

#[test]
fn burau_separates_the_radius_six_ball() {
    // SL(2, Z) image plus exponent sum is an exact key for B3
    let key = |w: &[usize]| {
        let mut m = [1i64, 0, 0, 1];
        let mut e = 0;
        for &a in w {
            let (g, s) = match a {
                0 => ([1, 1, 0, 1], 1),
                1 => ([1, -1, 0, 1], -1),
                2 => ([1, 0, -1, 1], 1),
                _ => ([1, 0, 1, 1], -1),
            };
            m = [
                m[0] * g[0] + m[1] * g[2],
                m[0] * g[1] + m[1] * g[3],
                m[2] * g[0] + m[3] * g[2],
                m[2] * g[1] + m[3] * g[3],
            ];
            e += s;
        }
        (m, e)
    };
    let b3 = catalog::braid3();
    assert_eq!(b3.alphabet().symbols(), ["a", "A", "b", "B"]);
    let ball = build_ball(Arc::new(b3), 6, 1_000_000).unwrap();
    let keys: HashSet<_> = ball.elements().iter().map(|(w, _)| key(w)).collect();
    assert_eq!(keys.len(), ball.len());
    let all: HashSet<_> = words_up_to(4, 6).map(|w| key(&w)).collect();
    assert_eq!(all.len(), ball.len());
}

/// `T(q)` by enumerating every tuple of members.
fn t_brute(p: &Presentation, q: usize) -> bool {
    let r = p.symmetrize();
    let al = p.alphabet();
    let words = r.words();
    let cancels = |x: &Word, y: &Word| al.inverse_of(*x.last().unwrap()) == Some(y[0]) && al.inverse_word(x).as_ref() != Some(y);
    for h in 3..q {
        let mut idx = vec![0; h];
        loop {
            if (0..h).all(|i| cancels(&words[idx[i]], &words[idx[(i + 1) % h]])) {
                return false;
            }
            let mut i = 0;
            while i < h && idx[i] + 1 == words.len() {
                idx[i] = 0;
                i += 1;
            }
            if i == h {
                break;
            }
            idx[i] += 1;
        }
    }
    true
}

#[test]
fn t_condition_matches_tuple_enumeration() {
    let cases = [
        Presentation::parse(&["a", "b"], &["abAB"]).unwrap(),
        Presentation::parse(&["a", "b", "c"], &["ab", "bc", "ca"]).unwrap(),
        Presentation::parse(&["a", "b"], &["aaa", "bbb", "ababab"]).unwrap(),
        Presentation::parse(&["a", "b"], &["aabb"]).unwrap(),
        catalog::genus2_presentation(),
    ];
    let mut failures = 0;
    for p in &cases {
        for q in 4..=5 {
            let lib = p.symmetrize().check_t(q).unwrap();
            assert_eq!(lib.passed, t_brute(p, q), "{:?} q = {q}", p.relators());
            failures += usize::from(!lib.passed);
            if let Some(cycle) = lib.violation {
                assert!(cycle.len() >= 3 && cycle.len() < q);
            }
        }
    }
    assert!(failures > 0);
}

fn oracles() -> Vec<Arc<dyn WordOracle>> {
    let a2 = Alphabet::group(&["a", "b"]).unwrap();
    vec![
        Arc::new(FreeGroup::new(a2.clone()).unwrap()),
        Arc::new(AbelianGroup::standard(&["a", "b"], vec![0, 5]).unwrap()),
        Arc::new(catalog::braid3()),
        Arc::new(catalog::garside()),
        Arc::new(RightAngledArtin::from_names(&["a", "b", "c"], &[("a", "b")]).unwrap()),
        Arc::new(MatrixGroup::infinite_dihedral()),
        Arc::new(FiniteGroup::cyclic(a2, 7, &[1, -1, 3, -3]).unwrap()),
        Arc::new(catalog::free_counterexample()),
        Arc::new(catalog::genus2()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_congruence(which in 0usize..9, u in prop::collection::vec(0usize..64, 0..8), v in prop::collection::vec(0usize..64, 0..8)) {
        let o = &oracles()[which];
        let al = o.alphabet().clone();
        let k = al.len();
        let u: Word = u.into_iter().map(|x| x % k).collect();
        let v: Word = v.into_iter().map(|x| x % k).collect();
        // inserting a cancelling pair changes nothing
        for a in 0..k {
            if let Some(b) = al.inverse_of(a) {
                let mut w = u.clone();
                w.extend([a, b]);
                w.extend(&v);
                let uv: Word = u.iter().chain(&v).copied().collect();
                prop_assert!(o.equal(&w, &uv));
            }
        }
        let mut uu = u.clone();
        uu.extend(al.inverse_word(&u).unwrap());
        prop_assert!(o.is_identity(&uu));
        prop_assert_eq!(o.equal(&u, &v), o.equal(&v, &u));
        if o.is_canonical() {
            prop_assert_eq!(o.normal_form(&u) == o.normal_form(&v), o.equal(&u, &v));
        } else if o.equal(&u, &v) {
            prop_assert_eq!(o.normal_form(&u), o.normal_form(&v));
        }
    }
}
