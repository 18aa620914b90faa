//! Complete deterministic finite automata.
//!
//! Every [`Dfa`] is complete: each state has a transition on every letter.
//! Operations return reachable automata, and [`Dfa::minimize`] renumbers
//! states in breadth-first discovery order from the start state, so two
//! minimal automata for the same language are structurally equal.

mod alphabet;
mod io;
mod monoid;

use std::collections::{HashMap, HashSet, VecDeque};

pub use alphabet::Alphabet;
pub use io::DfaJson;
pub use monoid::{StateMap, TransitionMonoid};

use crate::error::{Error, Result};
use crate::Word;

/// Boolean connective used by [`Dfa::product`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
    Xor,
    /// Left and not right.
    Difference,
}

impl BoolOp {
    fn apply(self, x: bool, y: bool) -> bool {
        match self {
            BoolOp::And => x && y,
            BoolOp::Or => x || y,
            BoolOp::Xor => x != y,
            BoolOp::Difference => x && !y,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    start: usize,
    accepting: Vec<bool>,
    /// Row-major transition table, `table[state * k + letter]`.
    table: Vec<usize>,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        start: usize,
        accepting: Vec<bool>,
        transitions: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = accepting.len();
        if n == 0 {
            return Err(Error::InvalidDfa("no states".into()));
        }
        if transitions.len() != n {
            return Err(Error::InvalidDfa(format!(
                "{} transition rows for {n} states",
                transitions.len()
            )));
        }
        if start >= n {
            return Err(Error::InvalidDfa(format!("start state {start} out of range")));
        }
        let k = alphabet.len();
        let mut table = Vec::with_capacity(n * k);
        for (s, row) in transitions.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidDfa(format!(
                    "state {s} has {} transitions, alphabet has {k} letters",
                    row.len()
                )));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::InvalidDfa(format!("transition target {t} out of range")));
            }
            table.extend_from_slice(row);
        }
        Ok(Dfa {
            alphabet,
            start,
            accepting,
            table,
        })
    }

    fn from_parts(alphabet: Alphabet, start: usize, accepting: Vec<bool>, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), accepting.len() * alphabet.len());
        Dfa {
            alphabet,
            start,
            accepting,
            table,
        }
    }

    /// Builds the reachable part of an automaton given by a transition
    /// function on arbitrary hashable states, numbering states in
    /// breadth-first order.
    pub(crate) fn explore<S, F, A>(alphabet: Alphabet, start: S, mut delta: F, accept: A) -> Self
    where
        S: Clone + Eq + std::hash::Hash,
        F: FnMut(&S, usize) -> S,
        A: Fn(&S) -> bool,
    {
        let k = alphabet.len();
        let mut ids: HashMap<S, usize> = HashMap::new();
        let mut order = vec![start.clone()];
        ids.insert(start, 0);
        let mut table = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let state = order[i].clone();
            for a in 0..k {
                let next = delta(&state, a);
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = order.len();
                        ids.insert(next.clone(), id);
                        order.push(next);
                        id
                    }
                };
                table.push(id);
            }
            i += 1;
        }
        let accepting = order.iter().map(accept).collect();
        Dfa::from_parts(alphabet, 0, accepting, table)
    }

    /// The automaton accepting nothing.
    pub fn empty(alphabet: &Alphabet) -> Self {
        let k = alphabet.len();
        Dfa::from_parts(alphabet.clone(), 0, vec![false], vec![0; k])
    }

    /// The automaton accepting every word.
    pub fn universal(alphabet: &Alphabet) -> Self {
        Dfa::empty(alphabet).complement()
    }

    /// The automaton accepting exactly the given finite set of words.
    pub fn finite(alphabet: &Alphabet, words: &[Word]) -> Result<Self> {
        let k = alphabet.len();
        if let Some(&a) = words.iter().flatten().find(|&&a| a >= k) {
            return Err(Error::InvalidArgument(format!("letter index {a} outside alphabet")));
        }
        // trie with a sink at index 0
        let mut table = vec![0usize; 2 * k];
        let mut accepting = vec![false, false];
        for w in words {
            let mut s = 1;
            for &a in w {
                if table[s * k + a] == 0 {
                    table[s * k + a] = accepting.len();
                    accepting.push(false);
                    table.extend(std::iter::repeat_n(0, k));
                }
                s = table[s * k + a];
            }
            accepting[s] = true;
        }
        Ok(Dfa::from_parts(alphabet.clone(), 1, accepting, table).minimize())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn accepting_states(&self) -> Vec<usize> {
        (0..self.num_states()).filter(|&s| self.accepting[s]).collect()
    }

    pub fn next(&self, state: usize, letter: usize) -> usize {
        self.table[state * self.alphabet.len() + letter]
    }

    /// State reached by reading `word` from `state`.
    pub fn run(&self, state: usize, word: &[usize]) -> usize {
        word.iter().fold(state, |s, &a| self.next(s, a))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accepting[self.run(self.start, word)]
    }

    /// Transition rows, one per state.
    pub fn transitions(&self) -> Vec<Vec<usize>> {
        let k = self.alphabet.len();
        (0..self.num_states())
            .map(|s| self.table[s * k..(s + 1) * k].to_vec())
            .collect()
    }

    fn check_alphabet(&self, other: &Dfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    /// Product automaton accepting `combine(L(self), L(other))`.
    pub fn product(&self, other: &Dfa, op: BoolOp) -> Result<Dfa> {
        self.check_alphabet(other)?;
        Ok(Dfa::explore(
            self.alphabet.clone(),
            (self.start, other.start),
            |&(p, q), a| (self.next(p, a), other.next(q, a)),
            |&(p, q)| op.apply(self.accepting[p], other.accepting[q]),
        ))
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        d.accepting.iter_mut().for_each(|x| *x = !*x);
        d
    }

    /// Concatenation `L(self)·L(other)`, determinized by the subset
    /// construction over the states of `other`.
    pub fn concat(&self, other: &Dfa) -> Result<Dfa> {
        self.check_alphabet(other)?;
        let n = other.num_states();
        let enter = |p: usize, set: &mut Vec<bool>| {
            if self.accepting[p] {
                set[other.start] = true;
            }
        };
        let mut start_set = vec![false; n];
        enter(self.start, &mut start_set);
        Ok(Dfa::explore(
            self.alphabet.clone(),
            (self.start, start_set),
            |(p, set), a| {
                let p2 = self.next(*p, a);
                let mut next = vec![false; n];
                for (q, _) in set.iter().enumerate().filter(|(_, &x)| x) {
                    next[other.next(q, a)] = true;
                }
                enter(p2, &mut next);
                (p2, next)
            },
            |(_, set)| set.iter().enumerate().any(|(q, &x)| x && other.accepting[q]),
        ))
    }

    /// Breadth-first shortest access word for every state (`None` if
    /// unreachable). Words are shortlex-least among shortest.
    pub fn access_words(&self) -> Vec<Option<Word>> {
        let mut words: Vec<Option<Word>> = vec![None; self.num_states()];
        words[self.start] = Some(Vec::new());
        let mut queue = VecDeque::from([self.start]);
        while let Some(s) = queue.pop_front() {
            for a in 0..self.alphabet.len() {
                let t = self.next(s, a);
                if words[t].is_none() {
                    let mut w = words[s].clone().unwrap();
                    w.push(a);
                    words[t] = Some(w);
                    queue.push_back(t);
                }
            }
        }
        words
    }

    pub fn reachable(&self) -> Vec<bool> {
        self.access_words().iter().map(Option::is_some).collect()
    }

    /// Minimal complete automaton, canonically numbered.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let reachable = self.reachable();
        let states: Vec<usize> = (0..self.num_states()).filter(|&s| reachable[s]).collect();

        // Moore refinement: classes are refined by (class, successor classes)
        let mut class: Vec<usize> = vec![0; self.num_states()];
        for &s in &states {
            class[s] = usize::from(self.accepting[s]);
        }
        let mut count = states.iter().map(|&s| class[s]).collect::<HashSet<_>>().len();
        if count == 1 {
            // single class: relabel it as 0
            for &s in &states {
                class[s] = 0;
            }
        }
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next_class = class.clone();
            for &s in &states {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[s]);
                sig.extend((0..k).map(|a| class[self.next(s, a)]));
                let fresh = ids.len();
                next_class[s] = *ids.entry(sig).or_insert(fresh);
            }
            class = next_class;
            if ids.len() == count {
                break;
            }
            count = ids.len();
        }

        let mut rep = vec![usize::MAX; count];
        for &s in &states {
            if rep[class[s]] == usize::MAX {
                rep[class[s]] = s;
            }
        }
        Dfa::explore(
            self.alphabet.clone(),
            class[self.start],
            |&c, a| class[self.next(rep[c], a)],
            |&c| self.accepting[rep[c]],
        )
    }

    /// True when the automaton is reachable and has no two states with
    /// the same future.
    pub fn is_minimal(&self) -> bool {
        self.minimize().num_states() == self.num_states()
    }

    /// Shortest (then lexicographically least) accepted word.
    pub fn shortest_accepted(&self) -> Option<Word> {
        let words = self.access_words();
        (0..self.num_states())
            .filter(|&s| self.accepting[s])
            .filter_map(|s| words[s].clone())
            .min_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)))
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_accepted().is_none()
    }

    /// Shortest word in the symmetric difference of the two languages.
    pub fn distinguishing_word(&self, other: &Dfa) -> Result<Option<Word>> {
        Ok(self.product(other, BoolOp::Xor)?.shortest_accepted())
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.distinguishing_word(other)?.is_none())
    }

    /// Shortest word accepted from exactly one of the two states.
    pub fn separating_suffix(&self, p: usize, q: usize) -> Option<Word> {
        let mut from = self.clone();
        from.start = p;
        let mut to = self.clone();
        to.start = q;
        from.distinguishing_word(&to).expect("same alphabet")
    }

    /// Whether every prefix of an accepted word is accepted.
    pub fn is_prefix_closed(&self) -> bool {
        let reachable = self.reachable();
        // no accepting state may be reachable from a reachable rejecting one
        let n = self.num_states();
        let mut seen = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&s| reachable[s] && !self.accepting[s]).collect();
        for &s in &stack {
            seen[s] = true;
        }
        while let Some(s) = stack.pop() {
            if self.accepting[s] {
                return false;
            }
            for a in 0..self.alphabet.len() {
                let t = self.next(s, a);
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        true
    }

    /// Re-expresses the language over a larger alphabet that contains
    /// this one; words using the new letters are rejected.
    pub fn embed(&self, alphabet: &Alphabet) -> Result<Dfa> {
        let map: Vec<usize> = self
            .alphabet
            .symbols()
            .iter()
            .map(|s| alphabet.index_of(s))
            .collect::<Result<_>>()?;
        let k = alphabet.len();
        let sink = self.num_states();
        let mut table = vec![sink; (sink + 1) * k];
        for s in 0..sink {
            for (a, &b) in map.iter().enumerate() {
                table[s * k + b] = self.next(s, a);
            }
        }
        let mut accepting = self.accepting.clone();
        accepting.push(false);
        Ok(Dfa::from_parts(alphabet.clone(), self.start, accepting, table).minimize())
    }

    /// Replaces the alphabet by another with the same number of letters,
    /// identifying letters by position.
    pub fn relabel(&self, alphabet: &Alphabet) -> Result<Dfa> {
        if alphabet.len() != self.alphabet.len() {
            return Err(Error::AlphabetMismatch);
        }
        let mut d = self.clone();
        d.alphabet = alphabet.clone();
        Ok(d)
    }

    pub fn transition_monoid(&self) -> TransitionMonoid {
        TransitionMonoid::new(self)
    }
}

/// All words over `k` letters of length at most `max_len`, in shortlex order.
pub fn words_up_to(k: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |len| words_of_length(k, len))
}

/// All words over `k` letters of exactly length `len`, lexicographically.
pub fn words_of_length(k: usize, len: usize) -> impl Iterator<Item = Word> {
    let total = if k == 0 && len > 0 { 0 } else { k.pow(len as u32) };
    (0..total).map(move |mut i| {
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = i % k;
            i /= k;
        }
        w
    })
}
