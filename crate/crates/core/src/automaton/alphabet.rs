use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::Word;

/// A finite ordered set of symbols, optionally paired by a formal inverse.
///
/// Letters are addressed by their position. When every symbol is a single
/// character, words print without separators (`abAB`); otherwise symbols
/// are joined with `.`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
    inverse: Option<Vec<usize>>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(symbols: &[S]) -> Result<Self> {
        let symbols: Vec<String> = symbols.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = HashMap::new();
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || ".,{}()|&!".contains(c)) {
                return Err(Error::InvalidAlphabet(format!("bad symbol `{s}`")));
            }
            if seen.insert(s.clone(), i).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Alphabet {
            symbols,
            inverse: None,
        })
    }

    /// Builds an alphabet whose inverse involution is given by `pairs`.
    /// A pair `(x, x)` declares an involutory symbol. Every symbol must be
    /// covered exactly once.
    pub fn with_inverses<S: AsRef<str>>(symbols: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let mut alphabet = Self::new(symbols)?;
        let mut inverse = vec![usize::MAX; alphabet.len()];
        for (x, y) in pairs {
            let (i, j) = (alphabet.index_of(x.as_ref())?, alphabet.index_of(y.as_ref())?);
            for (p, q) in [(i, j), (j, i)] {
                if inverse[p] != usize::MAX && inverse[p] != q {
                    return Err(Error::InvalidAlphabet(format!(
                        "symbol `{}` paired twice",
                        alphabet.symbols[p]
                    )));
                }
                inverse[p] = q;
            }
        }
        if let Some(p) = inverse.iter().position(|&q| q == usize::MAX) {
            return Err(Error::InvalidAlphabet(format!(
                "symbol `{}` has no inverse",
                alphabet.symbols[p]
            )));
        }
        alphabet.inverse = Some(inverse);
        Ok(alphabet)
    }

    /// Group alphabet on the given generator names: each generator `g` is
    /// followed by its formal inverse, named by uppercasing `g`.
    ///
    /// `Alphabet::group(&["a", "b"])` has symbols `a A b B`.
    pub fn group<S: AsRef<str>>(generators: &[S]) -> Result<Self> {
        let mut symbols = Vec::new();
        let mut pairs = Vec::new();
        for g in generators {
            let g = g.as_ref();
            let inv = g.to_uppercase();
            if inv == g {
                return Err(Error::InvalidAlphabet(format!(
                    "generator `{g}` has no distinct uppercase inverse name"
                )));
            }
            symbols.push(g.to_string());
            symbols.push(inv.clone());
            pairs.push((g.to_string(), inv));
        }
        Self::with_inverses(&symbols, &pairs)
    }

    /// Disjoint union, concatenating symbol lists in order. Inverses are
    /// kept only if every part has them.
    pub fn disjoint_union(parts: &[&Alphabet]) -> Result<Self> {
        let mut symbols = Vec::new();
        let mut inverse = Some(Vec::new());
        for part in parts {
            let offset = symbols.len();
            for s in &part.symbols {
                if symbols.contains(s) {
                    return Err(Error::AlphabetOverlap(s.clone()));
                }
                symbols.push(s.clone());
            }
            match (&mut inverse, &part.inverse) {
                (Some(inv), Some(part_inv)) => inv.extend(part_inv.iter().map(|&j| j + offset)),
                _ => inverse = None,
            }
        }
        let mut alphabet = Self::new(&symbols)?;
        alphabet.inverse = inverse;
        Ok(alphabet)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, letter: usize) -> &str {
        &self.symbols[letter]
    }

    pub fn index_of(&self, symbol: &str) -> Result<usize> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    pub fn is_inverse_closed(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn inverse_of(&self, letter: usize) -> Option<usize> {
        self.inverse.as_ref().map(|inv| inv[letter])
    }

    /// Inverse pairs `(x, x⁻¹)` with `x ≤ x⁻¹`, in letter order.
    pub fn inverse_pairs(&self) -> Vec<(usize, usize)> {
        match &self.inverse {
            Some(inv) => (0..self.len()).filter(|&i| i <= inv[i]).map(|i| (i, inv[i])).collect(),
            None => Vec::new(),
        }
    }

    /// Formal inverse of a word (reverse, then invert each letter).
    pub fn inverse_word(&self, word: &[usize]) -> Option<Word> {
        let inv = self.inverse.as_ref()?;
        Some(word.iter().rev().map(|&a| inv[a]).collect())
    }

    /// Free reduction: cancels adjacent `x x⁻¹` pairs until none remain.
    /// Words over alphabets without inverses are returned unchanged.
    pub fn free_reduce(&self, word: &[usize]) -> Word {
        let Some(inv) = &self.inverse else {
            return word.to_vec();
        };
        let mut out: Word = Vec::with_capacity(word.len());
        for &a in word {
            if out.last() == Some(&inv[a]) {
                out.pop();
            } else {
                out.push(a);
            }
        }
        out
    }

    pub fn is_freely_reduced(&self, word: &[usize]) -> bool {
        match &self.inverse {
            Some(inv) => word.windows(2).all(|p| inv[p[0]] != p[1]),
            None => true,
        }
    }

    fn single_chars(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.single_chars() { "" } else { "." };
        word.iter()
            .map(|&a| self.symbols[a].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Parses a word. `ε`, `e` (when not a symbol) and the empty string
    /// denote the empty word. Symbols may be separated by `.` or spaces;
    /// otherwise the longest matching symbol is taken at each position.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" || (text == "e" && self.index_of("e").is_err()) {
            return Ok(Vec::new());
        }
        let mut word = Vec::new();
        for chunk in text.split(|c: char| c == '.' || c.is_whitespace()) {
            let mut rest = chunk;
            while !rest.is_empty() {
                let best = self
                    .symbols
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| rest.starts_with(s.as_str()))
                    .max_by_key(|(_, s)| s.len());
                match best {
                    Some((i, s)) => {
                        word.push(i);
                        rest = &rest[s.len()..];
                    }
                    None => return Err(Error::UnknownSymbol(rest.to_string())),
                }
            }
        }
        Ok(word)
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet{:?}", self.symbols)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.symbols.join(", "))
    }
}
