//! Text syntax for star-free expressions.
//!
//! ```text
//! expr   := inter ('|' inter)*
//! inter  := concat ('&' concat)*
//! concat := unary ('.'? unary)*
//! unary  := '!' unary | atom
//! atom   := symbol | '0' | 'e' | 'ε' | '(' expr ')' | '{' word (',' word)* '}'
//! ```
//!
//! Alphabet symbols take priority over `0` and `e`, matched greedily.
//! `!0` is the set of all words.

use super::StarFreeExpr;
use crate::automaton::Alphabet;
use crate::error::{Error, Result};

pub fn parse(text: &str, alphabet: &Alphabet) -> Result<StarFreeExpr> {
    let mut p = Parser {
        text,
        pos: 0,
        alphabet,
    };
    let e = p.union()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            line: 1,
            message: format!("{message} at column {}", self.pos + 1),
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn union(&mut self) -> Result<StarFreeExpr> {
        let mut parts = vec![self.inter()?];
        while self.eat('|') {
            parts.push(self.inter()?);
        }
        Ok(collapse(parts, StarFreeExpr::Union))
    }

    fn inter(&mut self) -> Result<StarFreeExpr> {
        let mut parts = vec![self.concat()?];
        while self.eat('&') {
            parts.push(self.concat()?);
        }
        Ok(collapse(parts, StarFreeExpr::Intersect))
    }

    fn concat(&mut self) -> Result<StarFreeExpr> {
        let mut parts = vec![self.unary()?];
        while self.eat('.') || matches!(self.peek(), Some(c) if !"|&),}".contains(c)) {
            parts.push(self.unary()?);
        }
        Ok(collapse(parts, StarFreeExpr::Concat))
    }

    fn unary(&mut self) -> Result<StarFreeExpr> {
        if self.eat('!') {
            return Ok(self.unary()?.complement());
        }
        self.atom()
    }

    fn symbol(&mut self) -> Option<usize> {
        let rest = self.rest();
        let (letter, len) = self
            .alphabet
            .symbols()
            .iter()
            .enumerate()
            .filter(|(_, s)| rest.starts_with(s.as_str()))
            .map(|(i, s)| (i, s.len()))
            .max_by_key(|&(_, len)| len)?;
        self.pos += len;
        Some(letter)
    }

    fn atom(&mut self) -> Result<StarFreeExpr> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        if let Some(letter) = self.symbol() {
            return Ok(StarFreeExpr::Letter(letter));
        }
        match c {
            '0' => {
                self.pos += 1;
                Ok(StarFreeExpr::Empty)
            }
            'e' | 'ε' => {
                self.pos += c.len_utf8();
                Ok(StarFreeExpr::Epsilon)
            }
            '(' => {
                self.pos += 1;
                let e = self.union()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            '{' => {
                self.pos += 1;
                let Some(len) = self.rest().find('}') else {
                    return Err(self.error("expected `}`"));
                };
                let body = &self.rest()[..len];
                let words = body
                    .split(',')
                    .map(|w| self.alphabet.parse_word(w))
                    .collect::<Result<Vec<_>>>()?;
                self.pos += len + 1;
                Ok(StarFreeExpr::Finite(words))
            }
            _ => Err(self.error(&format!("unexpected `{c}`"))),
        }
    }
}

fn collapse(mut parts: Vec<StarFreeExpr>, node: fn(Vec<StarFreeExpr>) -> StarFreeExpr) -> StarFreeExpr {
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        node(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::words_up_to;

    fn ab() -> Alphabet {
        Alphabet::new(&["a", "b"]).unwrap()
    }

    #[test]
    fn precedence() {
        let al = ab();
        let e = parse("a | b & !0 a", &al).unwrap();
        assert_eq!(
            e,
            StarFreeExpr::Union(vec![
                StarFreeExpr::Letter(0),
                StarFreeExpr::Intersect(vec![
                    StarFreeExpr::Letter(1),
                    StarFreeExpr::Concat(vec![StarFreeExpr::all(), StarFreeExpr::Letter(0)]),
                ]),
            ])
        );
    }

    #[test]
    fn finite_sets_and_epsilon() {
        let al = ab();
        let d = parse("{ab, e, ba}", &al).unwrap().compile(&al).unwrap();
        for w in words_up_to(2, 4) {
            assert_eq!(d.accepts(&w), matches!(w.as_slice(), [] | [0, 1] | [1, 0]));
        }
        let d = parse("ε", &al).unwrap().compile(&al).unwrap();
        assert!(d.accepts(&[]) && !d.accepts(&[0]));
    }

    #[test]
    fn juxtaposition_and_dots_agree() {
        let al = ab();
        let x = parse("!0.a.b.!0", &al).unwrap();
        let y = parse("!0 ab !0", &al).unwrap();
        assert_eq!(x.compile(&al).unwrap(), y.compile(&al).unwrap());
    }

    #[test]
    fn errors_are_reported() {
        let al = ab();
        for bad in ["", "(a", "a |", "c", "{a", "a)"] {
            assert!(matches!(parse(bad, &al), Err(Error::Parse { .. } | Error::UnknownSymbol(_))), "{bad}");
        }
    }
}
