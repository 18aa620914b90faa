//! Geodesic lengths by Cayley-graph search, probes and verification of
//! candidate geodesic automata, and constructions of geodesic automata for
//! abelian, virtually abelian and graph-product groups.

mod abelian;
mod product;
mod vabelian;

pub use abelian::{abelian_pe, distinct_permutations, minimal_nongeodesic_tuples, AbelianPe, GradedTuple};
pub use product::{direct_product_wrap, graph_product, hat, namespace, restriction_holds, Graph, GraphProduct};
pub use vabelian::{vabelian_check, vabelian_pt, PropertyResult, VAbelianBuild, VAbelianGenSet, VAbelianReport};

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::automaton::{words_of_length, Alphabet, Dfa};
use crate::error::{Error, Result};
use crate::group::{DehnGroup, NormalForm, WordOracle};
use crate::Word;

/// Decides whether words are geodesic.
pub trait GeodesicTest: Sync {
    fn alphabet(&self) -> &Alphabet;
    fn is_geodesic(&self, word: &[usize]) -> Result<bool>;
}

impl GeodesicTest for DehnGroup {
    fn alphabet(&self) -> &Alphabet {
        WordOracle::alphabet(self)
    }
    fn is_geodesic(&self, word: &[usize]) -> Result<bool> {
        Ok(DehnGroup::is_geodesic(self, word))
    }
}

/// Element table grouped by oracle key. For canonical oracles every
/// bucket holds one element.
#[derive(Default, Clone)]
struct ElementTable {
    buckets: HashMap<NormalForm, Vec<(Word, u32)>>,
    len: usize,
}

impl ElementTable {
    fn find(&self, oracle: &dyn WordOracle, key: &NormalForm, word: &[usize]) -> Option<u32> {
        let bucket = self.buckets.get(key)?;
        if oracle.is_canonical() {
            return bucket.first().map(|e| e.1);
        }
        bucket.iter().find(|(rep, _)| oracle.equal(rep, word)).map(|e| e.1)
    }

    fn insert(&mut self, key: NormalForm, word: Word, dist: u32) {
        self.buckets.entry(key).or_default().push((word, dist));
        self.len += 1;
    }
}

/// All elements within `radius` of the identity with their exact lengths.
#[derive(Clone)]
pub struct Ball {
    oracle: Arc<dyn WordOracle>,
    radius: usize,
    table: ElementTable,
    spheres: Vec<usize>,
}

impl std::fmt::Debug for Ball {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ball")
            .field("radius", &self.radius)
            .field("spheres", &self.spheres)
            .finish()
    }
}

/// Breadth-first search of the Cayley graph, extending words by every
/// letter. Fails once more than `budget` elements have been found.
pub fn build_ball(oracle: Arc<dyn WordOracle>, radius: usize, budget: usize) -> Result<Ball> {
    let k = oracle.alphabet().len();
    let mut table = ElementTable::default();
    table.insert(oracle.normal_form(&[]), Vec::new(), 0);
    let mut frontier: Vec<Word> = vec![Vec::new()];
    let mut spheres = vec![1];
    for layer in 1..=radius {
        let candidates: Vec<(NormalForm, Word)> = frontier
            .par_iter()
            .flat_map_iter(|w| {
                (0..k).map(move |a| {
                    let mut x = w.clone();
                    x.push(a);
                    x
                })
            })
            .map(|x| (oracle.normal_form(&x), x))
            .filter(|(key, x)| table.find(&*oracle, key, x).is_none())
            .collect();
        let mut layer_table = ElementTable::default();
        let mut next = Vec::new();
        for (key, x) in candidates {
            if layer_table.find(&*oracle, &key, &x).is_none() {
                layer_table.insert(key, x.clone(), layer as u32);
                next.push(x);
            }
        }
        for (key, bucket) in layer_table.buckets {
            table.len += bucket.len();
            table.buckets.entry(key).or_default().extend(bucket);
        }
        if table.len > budget {
            return Err(Error::BudgetExceeded {
                layer,
                elements: table.len,
            });
        }
        spheres.push(next.len());
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(Ball {
        oracle,
        radius,
        table,
        spheres,
    })
}

impl Ball {
    pub fn oracle(&self) -> &Arc<dyn WordOracle> {
        &self.oracle
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.table.len
    }

    pub fn is_empty(&self) -> bool {
        self.table.len == 0
    }

    /// Number of elements at each distance `0, 1, …`. Shorter than
    /// `radius + 1` when the group is exhausted early.
    pub fn sphere_sizes(&self) -> &[usize] {
        &self.spheres
    }

    /// Length of the element represented by `word`, if it lies in the ball.
    pub fn distance(&self, word: &[usize]) -> Option<usize> {
        let key = self.oracle.normal_form(word);
        self.table.find(&*self.oracle, &key, word).map(|d| d as usize)
    }

    /// Pairs of a shortlex-first geodesic representative and its length.
    pub fn elements(&self) -> Vec<(Word, usize)> {
        let mut all: Vec<(Word, usize)> = self
            .table
            .buckets
            .values()
            .flatten()
            .map(|(w, d)| (w.clone(), *d as usize))
            .collect();
        all.sort_by(|x, y| (x.1, &x.0).cmp(&(y.1, &y.0)));
        all
    }

    /// Geodesic length of `word`, searching backwards from it when it
    /// lies outside the ball: `|w|_G = min |x| + |wx|_G` over words `x`
    /// with `|x| ≤ |w| - radius`. Fails when `|w| > 2·radius`.
    pub fn length(&self, word: &[usize]) -> Result<usize> {
        if let Some(d) = self.distance(word) {
            return Ok(d);
        }
        if word.len() <= self.radius {
            unreachable!("words no longer than the radius lie in the ball");
        }
        if word.len() > 2 * self.radius {
            return Err(Error::WordTooLong {
                len: word.len(),
                radius: 2 * self.radius,
            });
        }
        let depth = word.len() - self.radius;
        let k = self.oracle.alphabet().len();
        let canonical = self.oracle.is_canonical();
        let mut seen: HashSet<NormalForm> = HashSet::new();
        let mut frontier: Vec<Word> = vec![word.to_vec()];
        let mut best = word.len();
        for j in 1..=depth {
            if j + 1 > best {
                break;
            }
            let mut next = Vec::new();
            for w in &frontier {
                for a in 0..k {
                    let mut x = w.clone();
                    x.push(a);
                    if canonical && !seen.insert(self.oracle.normal_form(&x)) {
                        continue;
                    }
                    if let Some(d) = self.distance(&x) {
                        best = best.min(j + d);
                    }
                    next.push(x);
                }
            }
            frontier = next;
        }
        Ok(best)
    }

    pub fn is_geodesic(&self, word: &[usize]) -> Result<bool> {
        if word.len() > self.radius {
            return Err(Error::WordTooLong {
                len: word.len(),
                radius: self.radius,
            });
        }
        Ok(self.distance(word) == Some(word.len()))
    }
}

impl GeodesicTest for Ball {
    fn alphabet(&self) -> &Alphabet {
        self.oracle.alphabet()
    }
    fn is_geodesic(&self, word: &[usize]) -> Result<bool> {
        Ball::is_geodesic(self, word)
    }
}

/// Geodesic test by meet-in-the-middle: a ball of radius `R` plus a
/// backward search of depth `|w| - R`, so words up to length `2R`.
#[derive(Clone, Debug)]
pub struct BallSearch {
    ball: Ball,
}

impl BallSearch {
    pub fn new(oracle: Arc<dyn WordOracle>, radius: usize, budget: usize) -> Result<Self> {
        Ok(BallSearch {
            ball: build_ball(oracle, radius, budget)?,
        })
    }

    pub fn ball(&self) -> &Ball {
        &self.ball
    }

    pub fn length(&self, word: &[usize]) -> Result<usize> {
        self.ball.length(word)
    }
}

impl GeodesicTest for BallSearch {
    fn alphabet(&self) -> &Alphabet {
        self.ball.oracle.alphabet()
    }
    fn is_geodesic(&self, word: &[usize]) -> Result<bool> {
        Ok(self.ball.length(word)? == word.len())
    }
}

/// Memberships of `u vⁿ w` in the geodesic language for `n = 0..=nmax`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    pub memberships: Vec<bool>,
    /// Whether the memberships are constant over the second half of the
    /// probed range, `n ≥ ⌈nmax/2⌉`.
    pub eventually_constant: bool,
}

impl ProbeResult {
    fn new(memberships: Vec<bool>) -> Self {
        let tail = &memberships[memberships.len() / 2..];
        let eventually_constant = tail.windows(2).all(|p| p[0] == p[1]);
        ProbeResult {
            memberships,
            eventually_constant,
        }
    }
}

pub fn pumped(u: &[usize], v: &[usize], w: &[usize], n: usize) -> Word {
    let mut word = u.to_vec();
    (0..n).for_each(|_| word.extend_from_slice(v));
    word.extend_from_slice(w);
    word
}

pub fn alternation_probe(
    test: &dyn GeodesicTest,
    u: &[usize],
    v: &[usize],
    w: &[usize],
    nmax: usize,
) -> Result<ProbeResult> {
    let memberships = (0..=nmax)
        .map(|n| test.is_geodesic(&pumped(u, v, w, n)))
        .collect::<Result<_>>()?;
    Ok(ProbeResult::new(memberships))
}

/// A probe whose memberships are not eventually constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlternationWitness {
    pub u: Word,
    pub v: Word,
    pub w: Word,
    pub memberships: Vec<bool>,
}

/// Summary of probing every `u, v, w` up to the given lengths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub probes: usize,
    pub witnesses: Vec<AlternationWitness>,
}

/// Runs [`alternation_probe`] over all `u`, `w` with `|u| ≤ max_u`,
/// `|w| ≤ max_w` and non-empty `v` with `|v| ≤ max_v`.
pub fn alternation_scan(
    test: &dyn GeodesicTest,
    max_u: usize,
    max_v: usize,
    max_w: usize,
    nmax: usize,
) -> Result<ScanReport> {
    let k = test.alphabet().len();
    let upto = |m: usize| -> Vec<Word> { (0..=m).flat_map(|l| words_of_length(k, l)).collect() };
    let (us, ws) = (upto(max_u), upto(max_w));
    let vs: Vec<Word> = (1..=max_v).flat_map(|l| words_of_length(k, l)).collect();
    let triples: Vec<(&Word, &Word)> = us.iter().flat_map(|u| vs.iter().map(move |v| (u, v))).collect();
    let found: Vec<Vec<AlternationWitness>> = triples
        .par_iter()
        .map(|&(u, v)| {
            let mut out = Vec::new();
            for w in &ws {
                let probe = alternation_probe(test, u, v, w, nmax)?;
                if !probe.eventually_constant {
                    out.push(AlternationWitness {
                        u: u.clone(),
                        v: v.clone(),
                        w: w.clone(),
                        memberships: probe.memberships,
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(ScanReport {
        probes: triples.len() * ws.len(),
        witnesses: found.into_iter().flatten().collect(),
    })
}

/// Outcome of comparing an automaton with a geodesic test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub maxlen: usize,
    pub words_checked: usize,
    pub mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub word: Word,
    pub automaton: bool,
    pub oracle: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }

    /// Converts a mismatch into [`Error::VerificationMismatch`].
    pub fn into_result(self, alphabet: &Alphabet) -> Result<VerifyReport> {
        match &self.mismatch {
            None => Ok(self),
            Some(m) => Err(Error::VerificationMismatch {
                word: alphabet.format_word(&m.word),
                automaton: m.automaton,
                oracle: m.oracle,
            }),
        }
    }
}

/// Compares membership in `dfa` with `test` on every word of length at
/// most `maxlen`, reporting the shortlex-first disagreement.
pub fn verify_language(dfa: &Dfa, test: &dyn GeodesicTest, maxlen: usize) -> Result<VerifyReport> {
    if dfa.alphabet() != test.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let k = dfa.alphabet().len();
    let mut checked = 0;
    for len in 0..=maxlen {
        let total = k.pow(len as u32);
        let decode = |mut i: usize| {
            let mut w = vec![0; len];
            for slot in w.iter_mut().rev() {
                *slot = i % k;
                i /= k;
            }
            w
        };
        let found = (0..total)
            .into_par_iter()
            .map(|i| {
                let w = decode(i);
                let oracle = test.is_geodesic(&w)?;
                let automaton = dfa.accepts(&w);
                Ok((automaton != oracle).then_some(Mismatch {
                    word: w,
                    automaton,
                    oracle,
                }))
            })
            .find_first(|r: &Result<Option<Mismatch>>| !matches!(r, Ok(None)));
        match found {
            Some(Err(e)) => return Err(e),
            Some(Ok(mismatch)) => {
                let idx = mismatch.as_ref().map_or(total, |m| {
                    m.word.iter().fold(0, |acc, &a| acc * k + a)
                });
                return Ok(VerifyReport {
                    maxlen,
                    words_checked: checked + idx + 1,
                    mismatch,
                });
            }
            None => checked += total,
        }
    }
    Ok(VerifyReport {
        maxlen,
        words_checked: checked,
        mismatch: None,
    })
}
