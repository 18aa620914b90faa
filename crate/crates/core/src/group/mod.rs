//! Group presentations, symmetrized relator sets, small-cancellation
//! conditions and exact word-problem oracles.

mod braid;
mod dehn;
mod oracle;
mod text;

pub use braid::{Braid3, LaurentPoly};
pub use dehn::{DehnGroup, LatticeQuotient};
pub use oracle::{
    AbelianGroup, FiniteGroup, FreeGroup, MatrixGroup, NormalForm, RightAngledArtin, Substitution,
    WordOracle,
};
pub use text::{OracleSpec, PresentationFile};

use std::collections::BTreeSet;

use num_rational::Ratio;

use crate::automaton::Alphabet;
use crate::error::{Error, Result};
use crate::Word;

/// Freely and cyclically reduces `word`.
pub fn cyclically_reduce(alphabet: &Alphabet, word: &[usize]) -> Word {
    let mut w = alphabet.free_reduce(word);
    while w.len() >= 2 && alphabet.inverse_of(w[0]) == Some(w[w.len() - 1]) {
        w.pop();
        w.remove(0);
    }
    w
}

pub fn is_cyclically_reduced(alphabet: &Alphabet, word: &[usize]) -> bool {
    alphabet.is_freely_reduced(word)
        && match (word.first(), word.last()) {
            (Some(&x), Some(&y)) if word.len() >= 2 => alphabet.inverse_of(x) != Some(y),
            _ => true,
        }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
}

impl Presentation {
    /// Every relator must be non-empty, freely and cyclically reduced.
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self> {
        if !alphabet.is_inverse_closed() {
            return Err(Error::InvalidAlphabet(
                "presentation generators need inverses".into(),
            ));
        }
        for r in &relators {
            if let Some(&a) = r.iter().find(|&&a| a >= alphabet.len()) {
                return Err(Error::UnknownSymbol(format!("#{a}")));
            }
            if r.is_empty() || !is_cyclically_reduced(&alphabet, r) {
                return Err(Error::NotCyclicallyReduced(alphabet.format_word(r)));
            }
        }
        Ok(Presentation { alphabet, relators })
    }

    /// Like [`Presentation::new`], but reduces relators first, dropping
    /// those that become trivial.
    pub fn reducing(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self> {
        let mut reduced = Vec::new();
        for r in relators {
            let c = cyclically_reduce(&alphabet, &r);
            if c != r {
                log::warn!(
                    "relator {} reduced to {}",
                    alphabet.format_word(&r),
                    alphabet.format_word(&c)
                );
            }
            if !c.is_empty() {
                reduced.push(c);
            }
        }
        Self::new(alphabet, reduced)
    }

    /// Parses `abAB`-style relators over `Alphabet::group(generators)`.
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::group(generators)?;
        let relators = relators
            .iter()
            .map(|r| alphabet.parse_word(r))
            .collect::<Result<_>>()?;
        Self::new(alphabet, relators)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn symmetrize(&self) -> SymmetrizedSet {
        symmetrize(self)
    }
}

/// All cyclic conjugates of the relators and their inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrizedSet {
    alphabet: Alphabet,
    /// Sorted shortlex, without duplicates.
    words: Vec<Word>,
}

pub fn symmetrize(p: &Presentation) -> SymmetrizedSet {
    let mut set = BTreeSet::new();
    for r in &p.relators {
        let inv = p.alphabet.inverse_word(r).unwrap();
        for w in [r, &inv] {
            for i in 0..w.len() {
                let rotated: Word = w[i..].iter().chain(&w[..i]).copied().collect();
                set.insert((rotated.len(), rotated));
            }
        }
    }
    SymmetrizedSet {
        alphabet: p.alphabet.clone(),
        words: set.into_iter().map(|(_, w)| w).collect(),
    }
}

/// Outcome of the `C'(λ)` test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPrimeReport {
    pub lambda: Ratio<i64>,
    pub passed: bool,
    /// A piece and a relator having it as a prefix with
    /// `|piece| ≥ λ |relator|`.
    pub violation: Option<(Word, Word)>,
    /// Largest ratio `|piece| / |relator|` over pieces that are prefixes
    /// of the relator; the condition holds exactly for `λ` above it.
    pub threshold: Ratio<i64>,
    pub max_piece_len: usize,
}

/// Outcome of the `T(q)` test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TReport {
    pub q: usize,
    pub passed: bool,
    /// `r₁ … r_h` with every cyclic product `rᵢ r_{i+1}` not freely reduced.
    pub violation: Option<Vec<Word>>,
}

impl SymmetrizedSet {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &[usize]) -> bool {
        self.words
            .binary_search_by(|w| (w.len(), w.as_slice()).cmp(&(word.len(), word)))
            .is_ok()
    }

    /// Length of the longest piece that is a prefix of `words[i]`.
    fn longest_piece_prefix(&self, i: usize) -> usize {
        let r = &self.words[i];
        self.words
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, s)| common_prefix(r, s))
            .max()
            .unwrap_or(0)
    }

    /// Non-empty words that are prefixes of at least two distinct members,
    /// in shortlex order.
    pub fn pieces(&self) -> Vec<Word> {
        let mut set = BTreeSet::new();
        for (i, r) in self.words.iter().enumerate() {
            for s in &self.words[i + 1..] {
                for l in 1..=common_prefix(r, s) {
                    set.insert((l, r[..l].to_vec()));
                }
            }
        }
        set.into_iter().map(|(_, w)| w).collect()
    }

    pub fn max_piece_len(&self) -> usize {
        (0..self.len())
            .map(|i| self.longest_piece_prefix(i))
            .max()
            .unwrap_or(0)
    }

    /// Checks that every piece is shorter than `λ` times the length of
    /// each member having it as a prefix.
    pub fn check_c_prime(&self, lambda: Ratio<i64>) -> Result<CPrimeReport> {
        if lambda <= Ratio::from_integer(0) {
            return Err(Error::InvalidArgument("λ must be positive".into()));
        }
        let mut threshold = Ratio::from_integer(0);
        let mut violation = None;
        let mut max_piece_len = 0;
        for (i, r) in self.words.iter().enumerate() {
            let l = self.longest_piece_prefix(i);
            max_piece_len = max_piece_len.max(l);
            let ratio = Ratio::new(l as i64, r.len() as i64);
            threshold = threshold.max(ratio);
            if l > 0 && ratio >= lambda && violation.is_none() {
                violation = Some((r[..l].to_vec(), r.clone()));
            }
        }
        Ok(CPrimeReport {
            lambda,
            passed: violation.is_none(),
            violation,
            threshold,
            max_piece_len,
        })
    }

    /// `T(q)`: for `3 ≤ h < q`, no cycle `r₁ … r_h` of members (no member
    /// followed by its own inverse) has every cyclic product `rᵢ r_{i+1}`
    /// freely unreduced.
    pub fn check_t(&self, q: usize) -> Result<TReport> {
        if q <= 3 {
            return Err(Error::InvalidArgument("T(q) needs q > 3".into()));
        }
        let inv = |a: usize| self.alphabet.inverse_of(a).unwrap();
        let inverse_index: Vec<usize> = self
            .words
            .iter()
            .map(|w| {
                let wi = self.alphabet.inverse_word(w).unwrap();
                self.words.iter().position(|s| *s == wi).unwrap()
            })
            .collect();
        // edge i -> j when r_i r_j cancels and r_j is not r_i's inverse
        let succ: Vec<Vec<usize>> = (0..self.len())
            .map(|i| {
                let last = *self.words[i].last().unwrap();
                (0..self.len())
                    .filter(|&j| j != inverse_index[i] && self.words[j][0] == inv(last))
                    .collect()
            })
            .collect();
        for h in 3..q {
            for start in 0..self.len() {
                let mut path = vec![start];
                if let Some(cycle) = closed_walk(&succ, &mut path, h) {
                    return Ok(TReport {
                        q,
                        passed: false,
                        violation: Some(cycle.iter().map(|&i| self.words[i].clone()).collect()),
                    });
                }
            }
        }
        Ok(TReport {
            q,
            passed: true,
            violation: None,
        })
    }
}

fn closed_walk(succ: &[Vec<usize>], path: &mut Vec<usize>, h: usize) -> Option<Vec<usize>> {
    let last = *path.last().unwrap();
    if path.len() == h {
        return succ[last].contains(&path[0]).then(|| path.clone());
    }
    for &next in &succ[last] {
        path.push(next);
        if let Some(found) = closed_walk(succ, path, h) {
            return Some(found);
        }
        path.pop();
    }
    None
}

fn common_prefix(x: &[usize], y: &[usize]) -> usize {
    x.iter().zip(y).take_while(|(a, b)| a == b).count()
}
