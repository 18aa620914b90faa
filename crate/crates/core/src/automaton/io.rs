use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Alphabet, Dfa};
use crate::error::Result;

/// Serialized form of a [`Dfa`].
///
/// ```json
/// { "alphabet": ["a", "A"], "inverses": [["a", "A"]], "states": 2,
///   "start": 0, "accepting": [0], "transitions": [[0, 1], [1, 1]] }
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaJson {
    pub alphabet: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverses: Option<Vec<(String, String)>>,
    pub states: usize,
    pub start: usize,
    pub accepting: Vec<usize>,
    pub transitions: Vec<Vec<usize>>,
}

impl DfaJson {
    pub fn into_dfa(self) -> Result<Dfa> {
        let alphabet = match &self.inverses {
            Some(pairs) => Alphabet::with_inverses(&self.alphabet, pairs)?,
            None => Alphabet::new(&self.alphabet)?,
        };
        let mut accepting = vec![false; self.states];
        for &s in &self.accepting {
            match accepting.get_mut(s) {
                Some(slot) => *slot = true,
                None => {
                    return Err(crate::Error::InvalidDfa(format!(
                        "accepting state {s} out of range"
                    )))
                }
            }
        }
        Dfa::new(alphabet, self.start, accepting, self.transitions)
    }
}

impl From<&Dfa> for DfaJson {
    fn from(d: &Dfa) -> Self {
        let al = d.alphabet();
        let inverses = al.is_inverse_closed().then(|| {
            al.inverse_pairs()
                .into_iter()
                .map(|(x, y)| (al.symbol(x).to_string(), al.symbol(y).to_string()))
                .collect()
        });
        DfaJson {
            alphabet: al.symbols().to_vec(),
            inverses,
            states: d.num_states(),
            start: d.start(),
            accepting: d.accepting_states(),
            transitions: d.transitions(),
        }
    }
}

impl Dfa {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&DfaJson::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Dfa> {
        serde_json::from_str::<DfaJson>(text)?.into_dfa()
    }

    /// Graphviz rendering: accepting states are double circles, parallel
    /// edges are merged into one comma-separated label.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  __start [shape=point];\n");
        for s in 0..self.num_states() {
            let shape = if self.is_accepting(s) { "doublecircle" } else { "circle" };
            writeln!(out, "  {s} [shape={shape}];").unwrap();
        }
        writeln!(out, "  __start -> {};", self.start()).unwrap();
        for s in 0..self.num_states() {
            let mut targets: Vec<(usize, Vec<&str>)> = Vec::new();
            for a in 0..self.alphabet().len() {
                let t = self.next(s, a);
                match targets.iter_mut().find(|(u, _)| *u == t) {
                    Some((_, labels)) => labels.push(self.alphabet().symbol(a)),
                    None => targets.push((t, vec![self.alphabet().symbol(a)])),
                }
            }
            for (t, labels) in targets {
                writeln!(out, "  {s} -> {t} [label=\"{}\"];", labels.join(",")).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}
