//! Line-oriented presentation files.
//!
//! ```text
//! # comment
//! gens: a b c d r s
//! rel: baad = rcs
//! rel: bd = s
//! order: a 3
//! oracle: subst(r=baaBC, s=bd)
//! ```
//!
//! Generators are lowercase; the uppercase letter is the formal inverse.
//! `rel: u = v` stands for the relator `u v⁻¹`. Oracles: `free`,
//! `abelian` (with `order:` lines for torsion), `b3` (generators `a b`),
//! `dehn`, `raag` (relators must be commutators `xyXY`) and
//! `subst(g=word, …[; inner])`, where unlisted generators form the inner
//! group of kind `inner` (default `free`). Without a directive, `free` is
//! used when there are no relators and `dehn` otherwise.

use std::sync::Arc;

use super::braid::Braid3;
use super::dehn::DehnGroup;
use super::oracle::{AbelianGroup, FreeGroup, RightAngledArtin, Substitution, WordOracle};
use super::Presentation;
use crate::automaton::Alphabet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleSpec {
    Free,
    Abelian,
    B3,
    Dehn,
    Raag,
    Subst {
        images: Vec<(String, String)>,
        inner: Box<OracleSpec>,
    },
}

#[derive(Clone, Debug)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    pub presentation: Presentation,
    /// Torsion orders for the abelian oracle, by generator name.
    pub orders: Vec<(String, u64)>,
    pub oracle: OracleSpec,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_oracle(text: &str, line: usize) -> Result<OracleSpec> {
    let text = text.trim();
    Ok(match text {
        "free" => OracleSpec::Free,
        "abelian" => OracleSpec::Abelian,
        "b3" => OracleSpec::B3,
        "dehn" => OracleSpec::Dehn,
        "raag" => OracleSpec::Raag,
        _ => {
            let body = text
                .strip_prefix("subst(")
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| parse_error(line, format!("unknown oracle `{text}`")))?;
            let (maps, inner) = match body.split_once(';') {
                Some((m, i)) => (m, parse_oracle(i, line)?),
                None => (body, OracleSpec::Free),
            };
            if matches!(inner, OracleSpec::Subst { .. } | OracleSpec::Dehn | OracleSpec::Raag) {
                return Err(parse_error(line, "inner oracle must be free, abelian or b3"));
            }
            let images = maps
                .split(',')
                .map(|m| {
                    m.split_once('=')
                        .map(|(g, w)| (g.trim().to_string(), w.trim().to_string()))
                        .ok_or_else(|| parse_error(line, format!("expected `gen=word`, got `{m}`")))
                })
                .collect::<Result<_>>()?;
            OracleSpec::Subst {
                images,
                inner: Box::new(inner),
            }
        }
    })
}

impl PresentationFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut generators: Option<Vec<String>> = None;
        let mut relators: Vec<(usize, String)> = Vec::new();
        let mut orders = Vec::new();
        let mut oracle = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once(':')
                .ok_or_else(|| parse_error(line, "expected `key: value`"))?;
            let value = value.trim();
            match key.trim() {
                "gens" => {
                    let gens: Vec<String> = value.split_whitespace().map(String::from).collect();
                    if let Some(g) = gens.iter().find(|g| g.chars().any(|c| !c.is_lowercase())) {
                        return Err(parse_error(line, format!("generator `{g}` must be lowercase")));
                    }
                    generators = Some(gens);
                }
                "rel" => relators.push((line, value.to_string())),
                "order" => {
                    let mut parts = value.split_whitespace();
                    let (Some(g), Some(n), None) = (parts.next(), parts.next(), parts.next()) else {
                        return Err(parse_error(line, "expected `order: gen n`"));
                    };
                    let n = n
                        .parse()
                        .map_err(|_| parse_error(line, format!("bad order `{n}`")))?;
                    orders.push((g.to_string(), n));
                }
                "oracle" => oracle = Some(parse_oracle(value, line)?),
                other => return Err(parse_error(line, format!("unknown key `{other}`"))),
            }
        }
        let generators = generators.ok_or_else(|| parse_error(0, "missing `gens:` line"))?;
        let alphabet = Alphabet::group(&generators).map_err(|e| parse_error(0, e.to_string()))?;
        let mut words = Vec::new();
        for (line, r) in &relators {
            let word = match r.split_once('=') {
                Some((u, v)) => {
                    let mut w = alphabet.parse_word(u).map_err(|e| parse_error(*line, e.to_string()))?;
                    let v = alphabet.parse_word(v).map_err(|e| parse_error(*line, e.to_string()))?;
                    w.extend(alphabet.inverse_word(&v).unwrap());
                    w
                }
                None => alphabet.parse_word(r).map_err(|e| parse_error(*line, e.to_string()))?,
            };
            words.push(word);
        }
        for (g, _) in &orders {
            if !generators.contains(g) {
                return Err(Error::UnknownSymbol(g.clone()));
            }
        }
        let presentation = Presentation::reducing(alphabet, words)?;
        let oracle = oracle.unwrap_or(if presentation.relators().is_empty() {
            OracleSpec::Free
        } else {
            OracleSpec::Dehn
        });
        Ok(PresentationFile {
            generators,
            presentation,
            orders,
            oracle,
        })
    }

    /// Builds the oracle and checks that every relator holds in it.
    pub fn build_oracle(&self) -> Result<Arc<dyn WordOracle>> {
        let gens: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        let oracle = build(&self.oracle, &gens, &self.orders, &self.presentation)?;
        let al = self.presentation.alphabet();
        if let Some(r) = self.presentation.relators().iter().find(|r| !oracle.is_identity(r)) {
            return Err(Error::InvalidArgument(format!(
                "relator {} does not hold in the {:?} oracle",
                al.format_word(r),
                self.oracle
            )));
        }
        Ok(oracle)
    }
}

fn build(
    spec: &OracleSpec,
    gens: &[&str],
    orders: &[(String, u64)],
    presentation: &Presentation,
) -> Result<Arc<dyn WordOracle>> {
    let alphabet = Alphabet::group(gens)?;
    Ok(match spec {
        OracleSpec::Free => Arc::new(FreeGroup::new(alphabet)?),
        OracleSpec::Abelian => {
            let orders = gens
                .iter()
                .map(|g| orders.iter().find(|(h, _)| h == g).map_or(0, |&(_, n)| n))
                .collect();
            Arc::new(AbelianGroup::standard(gens, orders)?)
        }
        OracleSpec::B3 => {
            if gens != ["a", "b"] {
                return Err(Error::InvalidArgument("b3 oracle needs generators `a b`".into()));
            }
            Arc::new(Braid3::new())
        }
        OracleSpec::Dehn => Arc::new(DehnGroup::new(presentation.clone())?),
        OracleSpec::Raag => {
            let mut edges = Vec::new();
            for r in presentation.relators() {
                match r.as_slice() {
                    &[x, y, xi, yi]
                        if alphabet.inverse_of(x) == Some(xi) && alphabet.inverse_of(y) == Some(yi) =>
                    {
                        edges.push((x, y))
                    }
                    _ => {
                        return Err(Error::InvalidArgument(format!(
                            "raag relator {} is not a commutator of generators",
                            alphabet.format_word(r)
                        )))
                    }
                }
            }
            Arc::new(RightAngledArtin::new(alphabet, &edges)?)
        }
        OracleSpec::Subst { images, inner } => {
            let mapped: Vec<&str> = images.iter().map(|(g, _)| g.as_str()).collect();
            if let Some(g) = mapped.iter().find(|g| !gens.contains(g)) {
                return Err(Error::UnknownSymbol(g.to_string()));
            }
            let inner_gens: Vec<&str> = gens.iter().copied().filter(|g| !mapped.contains(g)).collect();
            let inner_pres = Presentation::new(Alphabet::group(&inner_gens)?, Vec::new())?;
            let inner = build(inner, &inner_gens, orders, &inner_pres)?;
            let inner_al = inner.alphabet().clone();
            let mut pairs: Vec<(String, String)> = Vec::new();
            for (g, w) in images {
                let word = inner_al.parse_word(w)?;
                let inv = inner_al.format_word(&inner_al.inverse_word(&word).unwrap());
                pairs.push((g.clone(), w.clone()));
                pairs.push((g.to_uppercase(), inv));
            }
            let pairs: Vec<(&str, &str)> = pairs.iter().map(|(g, w)| (g.as_str(), w.as_str())).collect();
            Arc::new(Substitution::from_text(alphabet, &pairs, inner)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_counterexample_file() {
        let text = "gens: a b c d r s\nrel: baad = rcs\nrel: bd = s  # s is redundant\noracle: subst(r=baaBC, s=bd)\n";
        let f = PresentationFile::parse(text).unwrap();
        assert_eq!(f.presentation.relators().len(), 2);
        let g = f.build_oracle().unwrap();
        let al = g.alphabet().clone();
        let w = |s: &str| al.parse_word(s).unwrap();
        assert!(g.equal(&w("baad"), &w("rcs")));
        assert!(!g.equal(&w("bad"), &w("rcs")));
    }

    #[test]
    fn garside_over_b3() {
        let text = "gens: a b x y z\noracle: subst(x=ab, y=ba, z=aba; b3)\n";
        let g = PresentationFile::parse(text).unwrap().build_oracle().unwrap();
        let al = g.alphabet().clone();
        assert!(g.equal(&al.parse_word("z").unwrap(), &al.parse_word("bab").unwrap()));
        assert!(g.equal(&al.parse_word("xa").unwrap(), &al.parse_word("z").unwrap()));
        assert!(!g.equal(&al.parse_word("x").unwrap(), &al.parse_word("y").unwrap()));
    }

    #[test]
    fn other_directives() {
        let f = PresentationFile::parse("gens: a b\nrel: abAB\noracle: abelian\norder: a 2\n").unwrap();
        let g = f.build_oracle().unwrap();
        assert!(g.is_identity(&[0, 0]));
        let f = PresentationFile::parse("gens: a b c\nrel: abAB\noracle: raag\n").unwrap();
        assert!(f.build_oracle().is_ok());
        let f = PresentationFile::parse("gens: a b c d\nrel: abABcdCD\n").unwrap();
        assert_eq!(f.oracle, OracleSpec::Dehn);
        assert!(f.build_oracle().is_ok());
        // the relator does not hold in the free group
        let f = PresentationFile::parse("gens: a b\nrel: abAB\noracle: free\n").unwrap();
        assert!(f.build_oracle().is_err());
    }

    #[test]
    fn errors_carry_line_numbers() {
        match PresentationFile::parse("gens: a b\nrel: abq\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            PresentationFile::parse("gens: a\nbogus: 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(PresentationFile::parse("rel: ab\n").is_err());
        assert!(PresentationFile::parse("gens: a\noracle: subst(a)\n").is_err());
    }
}
