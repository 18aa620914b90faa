//! Ready-made groups, generating sets and automata used by the examples,
//! the command line and the test suites.

use std::sync::Arc;

use crate::automaton::{Alphabet, Dfa};
use crate::error::Result;
use crate::expr::reduced_words;
use crate::geodesics::VAbelianGenSet;
use crate::group::{Braid3, DehnGroup, FreeGroup, MatrixGroup, Presentation, Substitution, WordOracle};

/// Geodesics of `ℤ` on `g, G`: `gⁿ` or `Gⁿ`. States: start, a run of
/// `g`, a run of `G`, fail.
pub fn z_geodesics(generator: &str) -> Result<Dfa> {
    let al = Alphabet::group(&[generator])?;
    let rows = vec![vec![1, 2], vec![1, 3], vec![3, 2], vec![3, 3]];
    Dfa::new(al, 0, vec![true, true, true, false], rows)
}

/// Freely reduced words, the geodesics of a free group.
pub fn reduced_word_dfa(generators: &[&str]) -> Result<Dfa> {
    let al = Alphabet::group(generators)?;
    reduced_words(&al)?.compile(&al)
}

/// `⟨a, b, c, d, r, s | ba²d = rcs, bd = s⟩`, free on `a, b, c, d` via
/// `r = ba²b⁻¹c⁻¹`, `s = bd`.
pub fn free_counterexample() -> Substitution {
    let inner: Arc<dyn WordOracle> =
        Arc::new(FreeGroup::new(Alphabet::group(&["a", "b", "c", "d"]).unwrap()).unwrap());
    let al = Alphabet::group(&["a", "b", "c", "d", "r", "s"]).unwrap();
    Substitution::from_text(
        al,
        &[("r", "baaBC"), ("R", "cbAAB"), ("s", "bd"), ("S", "DB")],
        inner,
    )
    .unwrap()
}

/// The presentation whose group [`free_counterexample`] computes in.
pub fn free_counterexample_presentation() -> Presentation {
    let al = Alphabet::group(&["a", "b", "c", "d", "r", "s"]).unwrap();
    let rel = |u: &str, v: &str| {
        let mut w = al.parse_word(u).unwrap();
        w.extend(al.inverse_word(&al.parse_word(v).unwrap()).unwrap());
        w
    };
    Presentation::reducing(al.clone(), vec![rel("baad", "rcs"), rel("bd", "s")]).unwrap()
}

pub fn braid3() -> Braid3 {
    Braid3::new()
}

/// `B₃` on `a, b, x = ab, y = ba, z = aba` and inverses.
pub fn garside() -> Substitution {
    let inner: Arc<dyn WordOracle> = Arc::new(Braid3::new());
    let al = Alphabet::group(&["a", "b", "x", "y", "z"]).unwrap();
    Substitution::from_text(
        al,
        &[
            ("x", "ab"),
            ("X", "BA"),
            ("y", "ba"),
            ("Y", "AB"),
            ("z", "aba"),
            ("Z", "ABA"),
        ],
        inner,
    )
    .unwrap()
}

/// The genus-2 surface group `⟨a, b, c, d | [a, b][c, d]⟩`.
pub fn genus2_presentation() -> Presentation {
    Presentation::parse(&["a", "b", "c", "d"], &["abABcdCD"]).unwrap()
}

/// The genus-2 surface group with Dehn's algorithm, hashing by the map
/// onto the free group `a, d ↦ x`, `b, c ↦ y`.
pub fn genus2() -> DehnGroup {
    let p = genus2_presentation();
    let free: Arc<dyn WordOracle> = Arc::new(FreeGroup::new(Alphabet::group(&["x", "y"]).unwrap()).unwrap());
    let quotient = Substitution::from_text(
        p.alphabet().clone(),
        &[
            ("a", "x"),
            ("A", "X"),
            ("b", "y"),
            ("B", "Y"),
            ("c", "y"),
            ("C", "Y"),
            ("d", "x"),
            ("D", "X"),
        ],
        free,
    )
    .unwrap();
    DehnGroup::new(p).unwrap().with_invariant(Arc::new(quotient)).unwrap()
}

/// `⟨a, b | aba⁻¹b⁻¹⟩`.
pub fn z2_presentation() -> Presentation {
    Presentation::parse(&["a", "b"], &["abAB"]).unwrap()
}

/// The infinite dihedral group on `t, T, s` with `N = ⟨t⟩`,
/// `X = {t, T}` and `Y = {s}`.
pub fn dihedral_gen_set() -> VAbelianGenSet {
    let g = MatrixGroup::infinite_dihedral();
    let membership = g.clone();
    VAbelianGenSet {
        oracle: Arc::new(g),
        x: vec![0, 1],
        y: vec![2],
        index: 2,
        in_n: Arc::new(move |w: &[usize]| membership.evaluate(w)[0] == 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_relations_hold() {
        let g = free_counterexample();
        for r in free_counterexample_presentation().relators() {
            assert!(g.is_identity(r));
        }
    }

    #[test]
    fn genus2_invariant_respects_relator() {
        let g = genus2();
        let al = g.presentation().alphabet().clone();
        assert!(g.is_identity(&al.parse_word("abABcdCD").unwrap()));
        assert!(!g.is_identity(&al.parse_word("abAB").unwrap()));
    }

    #[test]
    fn z_automaton_is_minimal_and_prefix_closed() {
        let d = z_geodesics("a").unwrap();
        assert!(d.is_minimal() && d.is_prefix_closed());
    }
}
