//! Star-free expressions: finite sets closed under concatenation and the
//! boolean operations, with no Kleene star.
//!
//! `A*` is written `!0`, the complement of the empty set.

mod parse;

pub use parse::parse;

use crate::automaton::{Alphabet, BoolOp, Dfa};
use crate::error::{Error, Result};
use crate::Word;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StarFreeExpr {
    Empty,
    Epsilon,
    Letter(usize),
    Finite(Vec<Word>),
    Concat(Vec<StarFreeExpr>),
    Union(Vec<StarFreeExpr>),
    Intersect(Vec<StarFreeExpr>),
    Complement(Box<StarFreeExpr>),
}

use StarFreeExpr::*;

impl StarFreeExpr {
    /// `A*`, as the complement of the empty set.
    pub fn all() -> Self {
        Complement(Box::new(Empty))
    }

    pub fn word(word: &[usize]) -> Self {
        match word {
            [] => Epsilon,
            [a] => Letter(*a),
            _ => Concat(word.iter().map(|&a| Letter(a)).collect()),
        }
    }

    pub fn complement(self) -> Self {
        Complement(Box::new(self))
    }

    /// Compiles to the minimal complete automaton for the language.
    pub fn compile(&self, alphabet: &Alphabet) -> Result<Dfa> {
        let dfa = match self {
            Empty => Dfa::empty(alphabet),
            Epsilon => Dfa::finite(alphabet, &[vec![]])?,
            Letter(a) => {
                check_letter(*a, alphabet)?;
                Dfa::finite(alphabet, &[vec![*a]])?
            }
            Finite(words) => {
                for &a in words.iter().flatten() {
                    check_letter(a, alphabet)?;
                }
                Dfa::finite(alphabet, words)?
            }
            Concat(parts) => {
                let mut acc = Dfa::finite(alphabet, &[vec![]])?;
                for part in parts {
                    acc = acc.concat(&part.compile(alphabet)?)?.minimize();
                }
                acc
            }
            Union(parts) => fold(parts, alphabet, Dfa::empty(alphabet), BoolOp::Or)?,
            Intersect(parts) => fold(parts, alphabet, Dfa::universal(alphabet), BoolOp::And)?,
            Complement(inner) => inner.compile(alphabet)?.complement(),
        };
        Ok(dfa.minimize())
    }

    /// Renders in the text syntax accepted by [`parse`].
    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        let wrap = |e: &StarFreeExpr| {
            let s = e.to_text(alphabet);
            match e {
                Concat(_) | Union(_) | Intersect(_) => format!("({s})"),
                _ => s,
            }
        };
        let join = |parts: &[StarFreeExpr], sep: &str| {
            parts.iter().map(wrap).collect::<Vec<_>>().join(sep)
        };
        let symbol = |a: usize| alphabet.symbols().get(a).cloned().unwrap_or_else(|| format!("#{a}"));
        match self {
            Empty => "0".into(),
            Epsilon => "e".into(),
            Letter(a) => symbol(*a),
            Finite(words) => {
                let ws: Vec<String> = words
                    .iter()
                    .map(|w| {
                        if w.is_empty() {
                            "e".to_string()
                        } else {
                            w.iter().map(|&a| symbol(a)).collect::<Vec<_>>().join(".")
                        }
                    })
                    .collect();
                format!("{{{}}}", ws.join(","))
            }
            Concat(parts) if parts.is_empty() => "e".into(),
            Union(parts) if parts.is_empty() => "0".into(),
            Intersect(parts) if parts.is_empty() => "!0".into(),
            Concat(parts) => join(parts, "."),
            Union(parts) => join(parts, " | "),
            Intersect(parts) => join(parts, " & "),
            Complement(inner) => format!("!{}", wrap(inner)),
        }
    }
}

fn check_letter(a: usize, alphabet: &Alphabet) -> Result<()> {
    if a >= alphabet.len() {
        return Err(Error::UnknownSymbol(format!("#{a}")));
    }
    Ok(())
}

fn fold(parts: &[StarFreeExpr], alphabet: &Alphabet, unit: Dfa, op: BoolOp) -> Result<Dfa> {
    parts.iter().try_fold(unit, |acc, part| {
        Ok(acc.product(&part.compile(alphabet)?, op)?.minimize())
    })
}

/// Words containing `a₁…a_k` as a scattered subword:
/// `A* a₁ A* a₂ ⋯ A* a_k A*`.
pub fn scattered_atom(word: &[usize]) -> StarFreeExpr {
    let mut parts = vec![StarFreeExpr::all()];
    for &a in word {
        parts.push(Letter(a));
        parts.push(StarFreeExpr::all());
    }
    if parts.len() == 1 {
        return StarFreeExpr::all();
    }
    Concat(parts)
}

/// `v A*`
pub fn starts_with(prefix: &[usize]) -> StarFreeExpr {
    Concat(vec![StarFreeExpr::word(prefix), StarFreeExpr::all()])
}

/// `A* u`
pub fn ends_with(suffix: &[usize]) -> StarFreeExpr {
    Concat(vec![StarFreeExpr::all(), StarFreeExpr::word(suffix)])
}

/// `A* w A*`
pub fn contains_factor(factor: &[usize]) -> StarFreeExpr {
    Concat(vec![
        StarFreeExpr::all(),
        StarFreeExpr::word(factor),
        StarFreeExpr::all(),
    ])
}

/// Building blocks of locally testable languages, to be combined by the
/// caller with boolean nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalAtoms {
    pub prefix: StarFreeExpr,
    pub suffix: StarFreeExpr,
    pub factors: Vec<StarFreeExpr>,
}

pub fn local_atoms(prefix: &[usize], suffix: &[usize], factors: &[Word]) -> Result<LocalAtoms> {
    if prefix.is_empty() || suffix.is_empty() || factors.iter().any(Vec::is_empty) {
        return Err(Error::InvalidArgument(
            "local atoms need non-empty prefix, suffix and factors".into(),
        ));
    }
    Ok(LocalAtoms {
        prefix: starts_with(prefix),
        suffix: ends_with(suffix),
        factors: factors.iter().map(|f| contains_factor(f)).collect(),
    })
}

/// Freely reduced words: no factor `x x⁻¹` for any letter `x`.
pub fn reduced_words(alphabet: &Alphabet) -> Result<StarFreeExpr> {
    if !alphabet.is_inverse_closed() {
        return Err(Error::InvalidArgument("alphabet has no inverses".into()));
    }
    let forbidden = (0..alphabet.len())
        .map(|a| contains_factor(&[a, alphabet.inverse_of(a).unwrap()]).complement())
        .collect();
    Ok(Intersect(forbidden))
}

/// `B*` for a subset `B` of the alphabet: `(∪_{a ∉ B} A* a A*)^c`.
pub fn subalphabet_star(alphabet: &Alphabet, subset: &[usize]) -> StarFreeExpr {
    let outside = (0..alphabet.len())
        .filter(|a| !subset.contains(a))
        .map(|a| contains_factor(&[a]))
        .collect();
    Union(outside).complement()
}

/// Words avoiding every member of `excluded` as a scattered subword.
pub fn piecewise_excluding(excluded: &[Word]) -> StarFreeExpr {
    Union(excluded.iter().map(|w| scattered_atom(w)).collect()).complement()
}

/// Words containing at least `count` occurrences of letters from `letters`.
pub fn at_least(letters: &[usize], count: usize) -> StarFreeExpr {
    if count == 0 {
        return StarFreeExpr::all();
    }
    let mut patterns: Vec<Word> = vec![vec![]];
    for _ in 0..count {
        patterns = patterns
            .iter()
            .flat_map(|p| {
                letters.iter().map(move |&y| {
                    let mut q = p.clone();
                    q.push(y);
                    q
                })
            })
            .collect();
    }
    Union(patterns.iter().map(|p| scattered_atom(p)).collect())
}

/// Words with exactly `count` occurrences of letters from `letters`.
pub fn exactly(letters: &[usize], count: usize) -> StarFreeExpr {
    Intersect(vec![
        at_least(letters, count),
        at_least(letters, count + 1).complement(),
    ])
}

fn b3_letters(alphabet: &Alphabet) -> Result<[usize; 4]> {
    Ok([
        alphabet.index_of("a")?,
        alphabet.index_of("b")?,
        alphabet.index_of("A")?,
        alphabet.index_of("B")?,
    ])
}

fn any_factor(words: &[Word]) -> StarFreeExpr {
    Union(words.iter().map(|w| contains_factor(w)).collect())
}

/// Geodesics of the three-strand braid group on `{a, b, A, B}`.
///
/// A freely reduced word is geodesic unless it contains a positive
/// two-letter syllable (`ab` or `ba`) together with a negative one (`AB`
/// or `BA`), or a spelling of the half twist `Δ = aba = bab` together with
/// a negative letter, or a spelling of `Δ⁻¹` together with a positive
/// letter. Both spellings of `Δ` are needed: `aBAB` equals `BA`.
pub fn b3_geodesic_expr(alphabet: &Alphabet) -> Result<StarFreeExpr> {
    let [a, b, ai, bi] = b3_letters(alphabet)?;
    let delta = any_factor(&[vec![a, b, a], vec![b, a, b]]);
    let delta_inv = any_factor(&[vec![ai, bi, ai], vec![bi, ai, bi]]);
    b3_clauses(alphabet, delta, delta_inv)
}

/// The same shape as [`b3_geodesic_expr`] but recognising `Δ` only as
/// `aba` and `Δ⁻¹` only as `ABA`. This accepts non-geodesics such as
/// `aBAB`; it is kept for comparison.
pub fn b3_geodesic_expr_as_displayed(alphabet: &Alphabet) -> Result<StarFreeExpr> {
    let [a, b, ai, bi] = b3_letters(alphabet)?;
    b3_clauses(
        alphabet,
        contains_factor(&[a, b, a]),
        contains_factor(&[ai, bi, ai]),
    )
}

fn b3_clauses(
    alphabet: &Alphabet,
    delta: StarFreeExpr,
    delta_inv: StarFreeExpr,
) -> Result<StarFreeExpr> {
    let [a, b, ai, bi] = b3_letters(alphabet)?;
    let positive_pair = any_factor(&[vec![a, b], vec![b, a]]);
    let negative_pair = any_factor(&[vec![ai, bi], vec![bi, ai]]);
    let negative_letter = any_factor(&[vec![ai], vec![bi]]);
    let positive_letter = any_factor(&[vec![a], vec![b]]);
    Ok(Intersect(vec![
        Intersect(vec![positive_pair, negative_pair]).complement(),
        Intersect(vec![delta, negative_letter]).complement(),
        Intersect(vec![delta_inv, positive_letter]).complement(),
        reduced_words(alphabet)?,
    ]))
}
