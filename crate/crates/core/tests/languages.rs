use geostar::automaton::words_up_to;
use geostar::expr::{parse, piecewise_excluding};
use geostar::starfree::{analyze, has_powered_circuit};
use geostar::{Alphabet, BoolOp, Dfa, StarFreeExpr};
use proptest::prelude::*;

fn arb_dfa(letters: usize, max_states: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_states).prop_flat_map(move |n| {
        (
            prop::collection::vec(prop::collection::vec(0..n, letters), n),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(rows, accepting)| {
                let names: Vec<String> = (0..letters).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
                Dfa::new(Alphabet::new(&names).unwrap(), 0, accepting, rows).unwrap()
            })
    })
}

fn same_on_words(x: &Dfa, y: &Dfa, maxlen: usize) -> bool {
    words_up_to(x.alphabet().len(), maxlen).all(|w| x.accepts(&w) == y.accepts(&w))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn minimization_preserves_language(d in arb_dfa(2, 6)) {
        let m = d.minimize();
        prop_assert!(m.num_states() <= d.num_states());
        prop_assert!(m.is_minimal());
        prop_assert!(same_on_words(&d, &m, 7));
        prop_assert_eq!(m.minimize(), m.clone());
        prop_assert!(d.equivalent(&m).unwrap());
    }

    #[test]
    fn boolean_operations_act_pointwise(x in arb_dfa(2, 4), y in arb_dfa(2, 4)) {
        let and = x.product(&y, BoolOp::And).unwrap();
        let or = x.product(&y, BoolOp::Or).unwrap();
        let cat = x.concat(&y).unwrap();
        for w in words_up_to(2, 6) {
            prop_assert_eq!(and.accepts(&w), x.accepts(&w) && y.accepts(&w));
            prop_assert_eq!(or.accepts(&w), x.accepts(&w) || y.accepts(&w));
            prop_assert_eq!(x.complement().accepts(&w), !x.accepts(&w));
            let split = (0..=w.len()).any(|i| x.accepts(&w[..i]) && y.accepts(&w[i..]));
            prop_assert_eq!(cat.accepts(&w), split);
        }
    }

    #[test]
    fn distinguishing_words_separate(x in arb_dfa(2, 4), y in arb_dfa(2, 4)) {
        match x.distinguishing_word(&y).unwrap() {
            Some(w) => prop_assert_ne!(x.accepts(&w), y.accepts(&w)),
            None => prop_assert!(same_on_words(&x, &y, 7)),
        }
    }

    #[test]
    fn json_round_trip(d in arb_dfa(3, 5)) {
        prop_assert_eq!(Dfa::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn star_free_criteria_agree_and_witnesses_replay(d in arb_dfa(2, 5)) {
        let report = analyze(&d).unwrap();
        prop_assert_eq!(report.star_free(), report.circuit.is_none());
        if let Some(w) = has_powered_circuit(&d.minimize()).unwrap() {
            prop_assert!(w.k >= 2);
            let bits: Vec<bool> = (0..=2 * w.k)
                .map(|n| d.accepts(&geostar::geodesics::pumped(&w.u, &w.v, &w.w, n)))
                .collect();
            prop_assert!(bits.windows(2).any(|p| p[0] != p[1]));
        }
    }

    #[test]
    fn piecewise_excluding_means_no_scattered_subword(excluded in prop::collection::vec(prop::collection::vec(0usize..2, 1..4), 1..4)) {
        let al = Alphabet::new(&["a", "b"]).unwrap();
        let d = piecewise_excluding(&excluded).compile(&al).unwrap();
        let embeds = |x: &[usize], w: &[usize]| {
            let mut it = w.iter();
            x.iter().all(|c| it.any(|d| d == c))
        };
        for w in words_up_to(2, 7) {
            prop_assert_eq!(d.accepts(&w), !excluded.iter().any(|x| embeds(x, &w)));
        }
    }
}

#[test]
fn expression_text_round_trips() {
    let al = Alphabet::group(&["a", "b"]).unwrap();
    for text in ["a b | !0 B", "!(a A) & {ab, ba}", "(a | b)(A | B) !0", "e | 0", "!(!0 a b !0)"] {
        let e = parse(text, &al).unwrap();
        let again = parse(&e.to_text(&al), &al).unwrap();
        assert!(e.compile(&al).unwrap().equivalent(&again.compile(&al).unwrap()).unwrap(), "{text}");
    }
    assert!(matches!(parse("a (b", &al), Err(geostar::Error::Parse { .. })));
    assert!(matches!(parse("q", &al), Err(geostar::Error::Parse { .. }) | Err(geostar::Error::UnknownSymbol(_))));
}

#[test]
fn parity_is_not_star_free_but_complement_of_empty_is() {
    let a = Alphabet::new(&["a"]).unwrap();
    let parity = Dfa::new(a.clone(), 0, vec![true, false], vec![vec![1], vec![0]]).unwrap();
    let w = has_powered_circuit(&parity).unwrap().unwrap();
    assert_eq!((w.u.clone(), w.v.clone(), w.k, w.w.clone()), (vec![], vec![0], 2, vec![]));
    assert!(analyze(&StarFreeExpr::all().compile(&a).unwrap()).unwrap().star_free());
}
