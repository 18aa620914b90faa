use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use num_rational::Ratio;

use super::oracle::{NormalForm, WordOracle};
use super::{Presentation, SymmetrizedSet};
use crate::automaton::Alphabet;
use crate::error::{Error, Result};
use crate::Word;

/// Word problem of a `C'(1/6)` presentation by Dehn's algorithm.
///
/// Dehn-reduced words are not unique, so keys come from a quotient
/// (`invariant`) and are not canonical; [`WordOracle::equal`] runs the
/// algorithm on `u v⁻¹`.
#[derive(Clone)]
pub struct DehnGroup {
    presentation: Presentation,
    symmetrized: SymmetrizedSet,
    /// Indices of symmetrized words, grouped by first letter.
    by_first: Vec<Vec<usize>>,
    invariant: Arc<dyn WordOracle>,
}

impl std::fmt::Debug for DehnGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DehnGroup")
            .field("presentation", &self.presentation)
            .finish()
    }
}

/// A located factor `w[pos..pos+len]` that is a prefix of symmetrized
/// word `relator`.
#[derive(Clone, Copy, Debug)]
struct Factor {
    pos: usize,
    len: usize,
    relator: usize,
}

impl DehnGroup {
    pub fn new(presentation: Presentation) -> Result<Self> {
        let symmetrized = presentation.symmetrize();
        let report = symmetrized.check_c_prime(Ratio::new(1, 6))?;
        if !report.passed {
            return Err(Error::Precondition(format!(
                "presentation is not C'(1/6): pieces reach {} of a relator",
                report.threshold
            )));
        }
        let mut by_first = vec![Vec::new(); presentation.alphabet().len()];
        for (i, w) in symmetrized.words().iter().enumerate() {
            by_first[w[0]].push(i);
        }
        let invariant = Arc::new(LatticeQuotient::abelianization(&presentation));
        Ok(DehnGroup {
            presentation,
            symmetrized,
            by_first,
            invariant,
        })
    }

    /// Replaces the hashing invariant by another quotient of the group,
    /// for instance a homomorphism to a free group. Every relator must be
    /// trivial in it.
    pub fn with_invariant(mut self, invariant: Arc<dyn WordOracle>) -> Result<Self> {
        if invariant.alphabet() != self.presentation.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        if let Some(r) = self.presentation.relators().iter().find(|r| !invariant.is_identity(r)) {
            return Err(Error::InvalidArgument(format!(
                "relator {} is not trivial in the invariant",
                self.alphabet().format_word(r)
            )));
        }
        self.invariant = invariant;
        Ok(self)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn relator(&self, i: usize) -> &[usize] {
        &self.symmetrized.words()[i]
    }

    /// Factors starting at `pos` that cover at least half of a
    /// symmetrized word.
    fn factors_at(&self, w: &[usize], pos: usize, out: &mut Vec<Factor>) {
        for &i in &self.by_first[w[pos]] {
            let r = self.relator(i);
            let len = r.iter().zip(&w[pos..]).take_while(|(x, y)| x == y).count();
            if 2 * len >= r.len() {
                out.push(Factor {
                    pos,
                    len,
                    relator: i,
                });
            }
        }
    }

    /// Leftmost position holding more than half of a symmetrized word,
    /// with the longest such factor there.
    fn long_factor(&self, w: &[usize]) -> Option<Factor> {
        let mut found = Vec::new();
        for pos in 0..w.len() {
            self.factors_at(w, pos, &mut found);
            found.retain(|f| 2 * f.len > self.relator(f.relator).len());
            if let Some(best) = found.iter().max_by_key(|f| f.len) {
                return Some(*best);
            }
        }
        None
    }

    /// `w` with `factor` replaced by the inverse of the rest of its relator.
    fn swap(&self, w: &[usize], factor: Factor) -> Word {
        let r = self.relator(factor.relator);
        let complement = self.alphabet().inverse_word(&r[factor.len..]).unwrap();
        let mut out = w[..factor.pos].to_vec();
        out.extend(complement);
        out.extend_from_slice(&w[factor.pos + factor.len..]);
        out
    }

    /// Dehn's algorithm: free reduction, then repeated replacement of the
    /// leftmost longest factor exceeding half a relator. The result is
    /// empty exactly when `w` is trivial.
    pub fn reduce(&self, w: &[usize]) -> Word {
        let al = self.alphabet();
        let mut w = al.free_reduce(w);
        while let Some(f) = self.long_factor(&w) {
            w = al.free_reduce(&self.swap(&w, f));
        }
        w
    }

    /// Geodesic test for `C'(1/6)` groups: a word is non-geodesic when it
    /// is not freely reduced, contains more than half a relator, or can
    /// be brought into one of those states by exchanging exact halves of
    /// relators, which preserves length.
    pub fn is_geodesic(&self, w: &[usize]) -> bool {
        let al = self.alphabet();
        let mut seen = HashSet::from([w.to_vec()]);
        let mut queue = VecDeque::from([w.to_vec()]);
        let mut halves = Vec::new();
        while let Some(x) = queue.pop_front() {
            if !al.is_freely_reduced(&x) || self.long_factor(&x).is_some() {
                return false;
            }
            halves.clear();
            for pos in 0..x.len() {
                self.factors_at(&x, pos, &mut halves);
            }
            for f in &halves {
                if 2 * f.len == self.relator(f.relator).len() {
                    let y = self.swap(&x, *f);
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
        }
        true
    }
}

impl WordOracle for DehnGroup {
    fn alphabet(&self) -> &Alphabet {
        self.presentation.alphabet()
    }
    fn normal_form(&self, word: &[usize]) -> NormalForm {
        self.invariant.normal_form(word)
    }
    fn is_canonical(&self) -> bool {
        false
    }
    fn equal(&self, u: &[usize], v: &[usize]) -> bool {
        if self.invariant.normal_form(u) != self.invariant.normal_form(v) {
            return false;
        }
        let mut w = u.to_vec();
        w.extend(self.alphabet().inverse_word(v).unwrap());
        self.reduce(&w).is_empty()
    }
    fn is_identity(&self, word: &[usize]) -> bool {
        self.reduce(word).is_empty()
    }
}

/// `ℤⁿ / L` for a lattice `L`, where letters map to `±` unit vectors of
/// their generator; keys are canonical coset representatives.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    alphabet: Alphabet,
    /// `(generator, sign)` per letter.
    letters: Vec<(usize, i64)>,
    /// Echelon basis of `L` with positive pivots, ordered by pivot column.
    basis: Vec<(usize, Vec<i64>)>,
    rank: usize,
}

impl LatticeQuotient {
    /// The abelianization of a presentation. Involutory letters contribute
    /// the relation `x² = 1`.
    pub fn abelianization(p: &Presentation) -> Self {
        let al = p.alphabet();
        let pairs = al.inverse_pairs();
        let mut letters = vec![(0, 0); al.len()];
        for (g, &(x, y)) in pairs.iter().enumerate() {
            letters[x] = (g, 1);
            if y != x {
                letters[y] = (g, -1);
            }
        }
        let mut q = LatticeQuotient {
            alphabet: al.clone(),
            letters,
            basis: Vec::new(),
            rank: pairs.len(),
        };
        for (g, &(x, y)) in pairs.iter().enumerate() {
            if x == y {
                let mut v = vec![0; q.rank];
                v[g] = 2;
                q.insert(v);
            }
        }
        for r in p.relators() {
            let v = q.vector(r);
            q.insert(v);
        }
        q
    }

    fn vector(&self, word: &[usize]) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        for &a in word {
            let (g, s) = self.letters[a];
            v[g] += s;
        }
        v
    }

    fn insert(&mut self, mut v: Vec<i64>) {
        for col in 0..self.rank {
            if v[col] == 0 {
                continue;
            }
            match self.basis.iter().position(|(p, _)| *p == col) {
                None => {
                    if v[col] < 0 {
                        v.iter_mut().for_each(|x| *x = -*x);
                    }
                    let at = self.basis.iter().position(|(p, _)| *p > col).unwrap_or(self.basis.len());
                    self.basis.insert(at, (col, v));
                    return;
                }
                Some(i) => {
                    let row = &self.basis[i].1;
                    let (g, x, y) = ext_gcd(row[col], v[col]);
                    let (rp, vp) = (row[col] / g, v[col] / g);
                    let mut new_row: Vec<i64> = row.iter().zip(&v).map(|(r, w)| x * r + y * w).collect();
                    let rest: Vec<i64> = row.iter().zip(&v).map(|(r, w)| rp * w - vp * r).collect();
                    if new_row[col] < 0 {
                        new_row.iter_mut().for_each(|z| *z = -*z);
                    }
                    self.basis[i].1 = new_row;
                    v = rest;
                }
            }
        }
    }

    /// Canonical representative of the coset of `v`.
    pub fn reduce(&self, mut v: Vec<i64>) -> Vec<i64> {
        for (p, row) in &self.basis {
            let q = v[*p].div_euclid(row[*p]);
            if q != 0 {
                v.iter_mut().zip(row).for_each(|(x, r)| *x -= q * r);
            }
        }
        v
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl WordOracle for LatticeQuotient {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn normal_form(&self, word: &[usize]) -> NormalForm {
        NormalForm(self.reduce(self.vector(word)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn genus2() -> DehnGroup {
        DehnGroup::new(Presentation::parse(&["a", "b", "c", "d"], &["abABcdCD"]).unwrap()).unwrap()
    }

    #[test]
    fn reduces_relator_to_identity() {
        let g = genus2();
        let al = g.alphabet().clone();
        let w = |s: &str| al.parse_word(s).unwrap();
        assert!(g.reduce(&w("abABcdCD")).is_empty());
        assert!(g.reduce(&w("cdCDabAB")).is_empty());
        assert_eq!(g.reduce(&w("abA")), w("abA"));
        assert!(g.reduce(&[]).is_empty());
        // five letters of the relator become the inverse of the other three
        assert_eq!(g.reduce(&w("abABc")), w("dcD"));
        assert!(g.equal(&w("abABc"), &w("dcD")));
    }

    #[test]
    fn rejects_non_small_cancellation() {
        let p = Presentation::parse(&["a", "b"], &["abAB"]).unwrap();
        assert!(matches!(DehnGroup::new(p), Err(Error::Precondition(_))));
    }

    #[test]
    fn lattice_quotient_is_canonical() {
        let al = Alphabet::group(&["a", "b"]).unwrap();
        let p = Presentation::new(al.clone(), vec![al.parse_word("aaaabb").unwrap(), al.parse_word("aabbbb").unwrap()]).unwrap();
        let q = LatticeQuotient::abelianization(&p);
        // lattice spanned by (4,2) and (2,4): index 12
        let mut keys = HashSet::new();
        for x in -12..12i64 {
            for y in -12..12i64 {
                keys.insert(q.reduce(vec![x, y]));
            }
        }
        assert_eq!(keys.len(), 12);
        assert_eq!(q.reduce(vec![4, 2]), vec![0, 0]);
        assert_eq!(q.reduce(vec![6, 6]), vec![0, 0]);
    }

    #[test]
    fn half_swaps_detect_hidden_shortenings() {
        let g = genus2();
        let al = g.alphabet().clone();
        let w = |s: &str| al.parse_word(s).unwrap();
        assert!(g.is_geodesic(&w("abAB")));
        assert!(!g.is_geodesic(&w("abABc")));
        assert!(!g.is_geodesic(&w("aA")));
        assert!(g.is_geodesic(&w("abc")));
    }
}
