use std::collections::HashMap;

use super::Dfa;
use crate::Word;

/// A transformation of the state set, with a shortest word inducing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateMap {
    pub map: Vec<u32>,
    pub word: Word,
}

impl StateMap {
    pub fn apply(&self, state: usize) -> usize {
        self.map[state] as usize
    }
}

/// The monoid of state transformations induced by words.
///
/// Elements are discovered breadth-first from the identity by appending
/// letters in alphabet order, so element `i`'s word is the shortlex-least
/// word inducing it and element 0 is the identity (the empty word).
/// For a minimal automaton this is the syntactic monoid of its language.
#[derive(Clone, Debug)]
pub struct TransitionMonoid {
    elements: Vec<StateMap>,
    index: HashMap<Vec<u32>, usize>,
    generators: Vec<usize>,
}

impl TransitionMonoid {
    pub(super) fn new(dfa: &Dfa) -> Self {
        let n = dfa.num_states();
        let k = dfa.alphabet().len();
        let identity: Vec<u32> = (0..n as u32).collect();
        let mut elements = vec![StateMap {
            map: identity.clone(),
            word: Vec::new(),
        }];
        let mut index = HashMap::from([(identity, 0)]);
        let mut generators = vec![0; k];
        let mut i = 0;
        while i < elements.len() {
            for a in 0..k {
                let map: Vec<u32> = elements[i]
                    .map
                    .iter()
                    .map(|&s| dfa.next(s as usize, a) as u32)
                    .collect();
                let id = match index.get(&map) {
                    Some(&id) => id,
                    None => {
                        let id = elements.len();
                        let mut word = elements[i].word.clone();
                        word.push(a);
                        index.insert(map.clone(), id);
                        elements.push(StateMap { map, word });
                        id
                    }
                };
                if i == 0 {
                    generators[a] = id;
                }
            }
            i += 1;
        }
        TransitionMonoid {
            elements,
            index,
            generators,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[StateMap] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &StateMap {
        &self.elements[i]
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Element induced by a single letter.
    pub fn generator(&self, letter: usize) -> usize {
        self.generators[letter]
    }

    pub fn index_of(&self, map: &[u32]) -> Option<usize> {
        self.index.get(map).copied()
    }

    /// Product `x·y`: the transformation of reading `x`'s word then `y`'s.
    pub fn compose(&self, x: usize, y: usize) -> usize {
        let (f, g) = (&self.elements[x].map, &self.elements[y].map);
        let map: Vec<u32> = f.iter().map(|&s| g[s as usize]).collect();
        self.index[&map]
    }

    /// The element induced by an arbitrary word.
    pub fn evaluate(&self, word: &[usize]) -> usize {
        word.iter()
            .fold(self.identity(), |x, &a| self.compose(x, self.generators[a]))
    }

    pub fn multiplication_table(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|x| (0..self.len()).map(|y| self.compose(x, y)).collect())
            .collect()
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.compose(x, x) == x
    }
}

#[cfg(test)]
mod tests {
    use crate::automaton::{Alphabet, Dfa};

    #[test]
    fn parity_monoid_is_cyclic_of_order_two() {
        let al = Alphabet::new(&["a"]).unwrap();
        let d = Dfa::new(al, 0, vec![true, false], vec![vec![1], vec![0]]).unwrap();
        let m = d.minimize().transition_monoid();
        assert_eq!(m.len(), 2);
        let swap = m.generator(0);
        assert_eq!(m.compose(swap, swap), m.identity());
        assert_eq!(m.element(swap).word, vec![0]);
    }

    #[test]
    fn universal_language_has_trivial_monoid() {
        let al = Alphabet::new(&["a", "b"]).unwrap();
        let m = Dfa::universal(&al).minimize().transition_monoid();
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn witnesses_induce_their_maps() {
        let al = Alphabet::new(&["a", "b"]).unwrap();
        let rows = vec![vec![1, 0], vec![2, 0], vec![2, 2]];
        let d = Dfa::new(al, 0, vec![true, true, false], rows).unwrap();
        let m = d.transition_monoid();
        for (i, e) in m.elements().iter().enumerate() {
            for s in 0..d.num_states() {
                assert_eq!(d.run(s, &e.word), e.apply(s));
            }
            assert_eq!(m.evaluate(&e.word), i);
        }
        let table = m.multiplication_table();
        assert!(table.iter().flatten().all(|&z| z < m.len()));
    }
}
