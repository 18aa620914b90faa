use std::sync::Arc;

use serde::Serialize;

use super::abelian::{distinct_permutations, minimal_nongeodesic_tuples};
use super::{build_ball, verify_language, Ball};
use crate::automaton::{words_up_to, BoolOp, Dfa};
use crate::error::{Error, Result};
use crate::expr::{exactly, piecewise_excluding, StarFreeExpr};
use crate::group::WordOracle;
use crate::Word;

/// Membership test for a normal subgroup, on words.
pub type Membership = Arc<dyn Fn(&[usize]) -> bool + Send + Sync>;

/// A generating set `Z = X ∪ Y` of a group with a finite-index normal
/// abelian subgroup `N`, `X` inside `N` and `Y` outside.
#[derive(Clone)]
pub struct VAbelianGenSet {
    pub oracle: Arc<dyn WordOracle>,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// `|G : N|`.
    pub index: usize,
    pub in_n: Membership,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub number: u8,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VAbelianReport {
    pub properties: Vec<PropertyResult>,
}

impl VAbelianReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }

    fn first_failure(&self) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| !p.passed)
    }
}

impl VAbelianGenSet {
    fn fmt(&self, w: &[usize]) -> String {
        self.oracle.alphabet().format_word(w)
    }

    fn inverse(&self, a: usize) -> Option<usize> {
        self.oracle.alphabet().inverse_of(a)
    }

    /// The letter of `X` equal to `word`, if any.
    fn x_letter(&self, word: &[usize]) -> Option<usize> {
        self.x.iter().copied().find(|&x| self.oracle.equal(&[x], word))
    }

    /// `x^y`, the letter of `X` equal to `y⁻¹ x y`.
    fn conjugate(&self, x: usize, y: usize) -> Option<usize> {
        self.x_letter(&[self.inverse(y)?, x, y])
    }
}

fn result(number: u8, failure: Option<String>) -> PropertyResult {
    PropertyResult {
        number,
        passed: failure.is_none(),
        detail: failure,
    }
}

/// Checks the five conditions on the generating set: `X ⊂ N`,
/// `Y ∩ N = ∅`; `X` and `Y` inverse-closed; `X` closed under conjugation
/// by `Y`; `Y` meets every nontrivial coset of `N`; and whenever
/// `w = x·y` with `w` a word over `Y` of length at most 3,
/// `y ∈ Y ∪ {1}` and `x ∈ N` nontrivial, `x` is a letter of `X`.
pub fn vabelian_check(gs: &VAbelianGenSet) -> VAbelianReport {
    let al = gs.oracle.alphabet();
    let mut properties = Vec::new();

    let mut p1 = None;
    let mut all: Vec<usize> = gs.x.iter().chain(&gs.y).copied().collect();
    all.sort_unstable();
    if all != (0..al.len()).collect::<Vec<_>>() {
        p1 = Some("X and Y must partition the alphabet".to_string());
    } else if let Some(&x) = gs.x.iter().find(|&&x| !(gs.in_n)(&[x])) {
        p1 = Some(format!("{} ∉ N", al.symbol(x)));
    } else if let Some(&y) = gs.y.iter().find(|&&y| (gs.in_n)(&[y])) {
        p1 = Some(format!("{} ∈ N", al.symbol(y)));
    }
    properties.push(result(1, p1));

    let not_closed = |set: &[usize]| {
        set.iter()
            .find(|&&a| gs.inverse(a).is_none_or(|b| !set.contains(&b)))
            .map(|&a| format!("inverse of {} missing", al.symbol(a)))
    };
    properties.push(result(2, not_closed(&gs.x).or_else(|| not_closed(&gs.y))));

    let p3 = gs.y.iter().find_map(|&y| {
        gs.x.iter().find_map(|&x| {
            gs.conjugate(x, y)
                .is_none()
                .then(|| format!("{}⁻¹{}{} is not in X", al.symbol(y), al.symbol(x), al.symbol(y)))
        })
    });
    properties.push(result(3, p3));

    let mut cosets: Vec<usize> = Vec::new();
    for &y in &gs.y {
        let yi = gs.inverse(y);
        let fresh = cosets.iter().all(|&c| match yi {
            Some(yi) => !(gs.in_n)(&[yi, c]),
            None => true,
        });
        if fresh {
            cosets.push(y);
        }
    }
    let p4 = (cosets.len() + 1 < gs.index).then(|| {
        format!(
            "Y meets {} of the {} nontrivial cosets",
            cosets.len(),
            gs.index.saturating_sub(1)
        )
    });
    properties.push(result(4, p4));

    let mut p5 = None;
    'outer: for w in words_up_to(gs.y.len(), 3) {
        let w: Word = w.iter().map(|&i| gs.y[i]).collect();
        for y in std::iter::once(None).chain(gs.y.iter().map(Some)) {
            let mut x = w.clone();
            if let Some(&y) = y {
                match gs.inverse(y) {
                    Some(yi) => x.push(yi),
                    None => continue,
                }
            }
            if (gs.in_n)(&x) && !gs.oracle.is_identity(&x) && gs.x_letter(&x).is_none() {
                p5 = Some(format!(
                    "{} = x·{} with x ∈ N not in X",
                    gs.fmt(&w),
                    y.map_or("1".to_string(), |&y| al.symbol(y).to_string())
                ));
                break 'outer;
            }
        }
    }
    properties.push(result(5, p5));
    VAbelianReport { properties }
}

#[derive(Clone, Debug)]
pub struct VAbelianBuild {
    pub dfa: Dfa,
    /// Geodesics with no letter of `Y`, with one, and with two.
    pub l0: Dfa,
    pub l1: Dfa,
    pub l2: Dfa,
    /// Excluded scattered subwords for each part.
    pub w0: Vec<Word>,
    pub w1: Vec<Word>,
    pub w2: Vec<Word>,
    pub verified_to: usize,
}

/// Excluded patterns for words with `Y`-letters `ys`: the minimal
/// non-geodesic `X`-multiplicities before `ys`, with every arrangement
/// split around the `Y`-letters and later segments conjugated so that the
/// pattern represents the same rearrangement.
fn expanded_patterns(gs: &VAbelianGenSet, ball: &Ball, ys: &[usize], sum_bound: usize) -> Result<Vec<Word>> {
    let minimal = minimal_nongeodesic_tuples(ball, &gs.x, ys, sum_bound)?;
    let mut out = Vec::new();
    for t in &minimal {
        for perm in distinct_permutations(&t.word(&gs.x)) {
            split_into(gs, &perm, ys, 0, &mut Vec::new(), &mut out)?;
        }
    }
    out.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
    out.dedup();
    Ok(out)
}

/// Places the letters of `rest` into segments separated by `ys[i..]`; a
/// letter placed after `y` becomes `x^y`.
fn split_into(
    gs: &VAbelianGenSet,
    rest: &[usize],
    ys: &[usize],
    i: usize,
    prefix: &mut Word,
    out: &mut Vec<Word>,
) -> Result<()> {
    if i == ys.len() {
        let mut w = prefix.clone();
        w.extend_from_slice(rest);
        out.push(w);
        return Ok(());
    }
    let y = ys[i];
    for t in 0..=rest.len() {
        let conjugated = rest[t..]
            .iter()
            .map(|&x| gs.conjugate(x, y))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Precondition("X is not closed under conjugation".into()))?;
        let len = prefix.len();
        prefix.extend_from_slice(&rest[..t]);
        prefix.push(y);
        split_into(gs, &conjugated, ys, i + 1, prefix, out)?;
        prefix.truncate(len);
    }
    Ok(())
}

/// Geodesic automaton for a generating set passing [`vabelian_check`]:
/// the union of the parts with zero, one and two letters from `Y`, each a
/// piecewise excluding language cut down to its count of `Y`-letters. The
/// two-letter part follows the one-letter construction with two
/// conjugation stages. The result is compared with a Cayley ball on every
/// word up to `verify_len`.
pub fn vabelian_pt(gs: &VAbelianGenSet, sum_bound: usize, verify_len: usize) -> Result<VAbelianBuild> {
    if gs.index <= 1 {
        return Err(Error::Precondition("the subgroup must have index above 1".into()));
    }
    let report = vabelian_check(gs);
    if let Some(p) = report.first_failure() {
        return Err(Error::Precondition(format!(
            "property {} fails: {}",
            p.number,
            p.detail.clone().unwrap_or_default()
        )));
    }
    let al = gs.oracle.alphabet().clone();
    let radius = (sum_bound + 2).max(verify_len);
    let ball = build_ball(gs.oracle.clone(), radius, 5_000_000)?;

    let w0 = expanded_patterns(gs, &ball, &[], sum_bound)?;
    let mut w1 = Vec::new();
    for &y in &gs.y {
        w1.extend(expanded_patterns(gs, &ball, &[y], sum_bound)?);
    }
    let mut w2 = Vec::new();
    for &y1 in &gs.y {
        for &y2 in &gs.y {
            w2.extend(expanded_patterns(gs, &ball, &[y1, y2], sum_bound)?);
        }
    }
    let part = |count: usize, excluded: &[Word]| -> Result<Dfa> {
        StarFreeExpr::Intersect(vec![exactly(&gs.y, count), piecewise_excluding(excluded)]).compile(&al)
    };
    let (l0, l1, l2) = (part(0, &w0)?, part(1, &w1)?, part(2, &w2)?);
    let dfa = l0
        .product(&l1, BoolOp::Or)?
        .product(&l2, BoolOp::Or)?
        .minimize();
    verify_language(&dfa, &ball, verify_len)?.into_result(&al)?;
    Ok(VAbelianBuild {
        dfa,
        l0,
        l1,
        l2,
        w0,
        w1,
        w2,
        verified_to: verify_len,
    })
}
