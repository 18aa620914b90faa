use std::sync::Arc;

use serde::Serialize;

use super::{build_ball, verify_language, Ball};
use crate::automaton::Dfa;
use crate::error::{Error, Result};
use crate::expr::piecewise_excluding;
use crate::group::{AbelianGroup, WordOracle};
use crate::Word;

/// Letter multiplicities `(n₁, …, n_r)`, ordered componentwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GradedTuple(pub Vec<u32>);

impl GradedTuple {
    pub fn total(&self) -> usize {
        self.0.iter().map(|&n| n as usize).sum()
    }

    /// `self ⪯ other`: every entry at most the corresponding one.
    pub fn precedes(&self, other: &GradedTuple) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `x₁^{n₁} ⋯ x_r^{n_r}` over the given letters.
    pub fn word(&self, letters: &[usize]) -> Word {
        self.0
            .iter()
            .zip(letters)
            .flat_map(|(&n, &x)| std::iter::repeat_n(x, n as usize))
            .collect()
    }
}

/// All tuples of length `r` with entry sum at most `bound`, by increasing
/// sum.
fn tuples_up_to(r: usize, bound: usize) -> Vec<GradedTuple> {
    fn fill(r: usize, remaining: usize, prefix: &mut Vec<u32>, out: &mut Vec<GradedTuple>) {
        if prefix.len() == r - 1 {
            prefix.push(remaining as u32);
            out.push(GradedTuple(prefix.clone()));
            prefix.pop();
            return;
        }
        for n in (0..=remaining).rev() {
            prefix.push(n as u32);
            fill(r, remaining - n, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        out.push(GradedTuple(Vec::new()));
        return out;
    }
    for total in 0..=bound {
        fill(r, total, &mut Vec::new(), &mut out);
    }
    out
}

/// The `⪯`-minimal tuples `n` with `|n| ≤ sum_bound` such that
/// `x₁^{n₁} ⋯ x_r^{n_r} · suffix` is not geodesic, where the `xᵢ` are
/// `letters`. `ball` must have radius at least `sum_bound + |suffix|`.
pub fn minimal_nongeodesic_tuples(
    ball: &Ball,
    letters: &[usize],
    suffix: &[usize],
    sum_bound: usize,
) -> Result<Vec<GradedTuple>> {
    if ball.radius() < sum_bound + suffix.len() {
        return Err(Error::InvalidArgument(format!(
            "ball radius {} below {}",
            ball.radius(),
            sum_bound + suffix.len()
        )));
    }
    let tuples = tuples_up_to(letters.len(), sum_bound);
    let mut minimal: Vec<GradedTuple> = Vec::new();
    for t in tuples {
        // tuples come by increasing sum, so a smaller non-geodesic tuple
        // would already be recorded
        if minimal.iter().any(|m| m.precedes(&t)) {
            continue;
        }
        let mut w = t.word(letters);
        w.extend_from_slice(suffix);
        if !ball.is_geodesic(&w)? {
            minimal.push(t);
        }
    }
    minimal.sort();
    Ok(minimal)
}

/// Distinct rearrangements of `word`, in lexicographic order.
pub fn distinct_permutations(word: &[usize]) -> Vec<Word> {
    let mut w = word.to_vec();
    w.sort_unstable();
    let mut out = vec![w.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (1..w.len()).rev().find(|&i| w[i - 1] < w[i]) else {
            return out;
        };
        let j = (i..w.len()).rev().find(|&j| w[j] > w[i - 1]).unwrap();
        w.swap(i - 1, j);
        w[i..].reverse();
        out.push(w.clone());
    }
}

#[derive(Clone, Debug)]
pub struct AbelianPe {
    /// Minimal non-geodesic letter multiplicities.
    pub minimal: Vec<GradedTuple>,
    /// All permutations of the words of `minimal`.
    pub excluded: Vec<Word>,
    pub dfa: Dfa,
    pub sum_bound: usize,
    /// Every word up to this length was checked against the group.
    pub verified_to: usize,
}

/// Geodesics of an abelian group for a monoid generating set as a
/// piecewise excluding language.
///
/// Minimal non-geodesic tuples are searched up to entry sum `sum_bound`;
/// the resulting automaton is then checked against a Cayley ball on all
/// words up to `verify_len`. A mismatch means `sum_bound` was too small.
pub fn abelian_pe(group: &AbelianGroup, sum_bound: usize, verify_len: usize) -> Result<AbelianPe> {
    let oracle: Arc<dyn WordOracle> = Arc::new(group.clone());
    let alphabet = group.alphabet().clone();
    let radius = sum_bound.max(verify_len);
    let ball = build_ball(oracle, radius, 5_000_000)?;
    check_monoid_generation(group, &ball)?;
    let letters: Vec<usize> = (0..alphabet.len()).collect();
    let minimal = minimal_nongeodesic_tuples(&ball, &letters, &[], sum_bound)?;
    let mut excluded: Vec<Word> = minimal
        .iter()
        .flat_map(|t| distinct_permutations(&t.word(&letters)))
        .collect();
    excluded.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
    let dfa = piecewise_excluding(&excluded).compile(&alphabet)?;
    let report = verify_language(&dfa, &ball, verify_len)?;
    if !report.passed() {
        log::warn!("piecewise excluding set incomplete; sum bound {sum_bound} is too small");
    }
    report.into_result(&alphabet)?;
    Ok(AbelianPe {
        minimal,
        excluded,
        dfa,
        sum_bound,
        verified_to: verify_len,
    })
}

/// Positive words reach `±eᵢ` for every coordinate (`eᵢ` alone for torsion
/// coordinates) within the ball.
fn check_monoid_generation(group: &AbelianGroup, ball: &Ball) -> Result<()> {
    let r = group.rank();
    let reached: std::collections::HashSet<Vec<i64>> = ball
        .elements()
        .iter()
        .map(|(w, _)| group.coordinates(w))
        .collect();
    for i in 0..r {
        let signs: &[i64] = if group.orders()[i] == 0 { &[1, -1] } else { &[1] };
        for &s in signs {
            let mut e = vec![0; r];
            e[i] = s;
            if !reached.contains(&group.reduce(e)) {
                return Err(Error::Precondition(format!(
                    "letters do not reach {}e{} within radius {}",
                    if s < 0 { "-" } else { "" },
                    i + 1,
                    ball.radius()
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Alphabet;

    #[test]
    fn tuple_enumeration() {
        let t = tuples_up_to(3, 2);
        assert_eq!(t.len(), 10);
        assert_eq!(t[0], GradedTuple(vec![0, 0, 0]));
        assert!(t.windows(2).all(|p| p[0].total() <= p[1].total()));
    }

    #[test]
    fn permutations_are_distinct() {
        assert_eq!(distinct_permutations(&[0, 0, 1]).len(), 3);
        assert_eq!(distinct_permutations(&[0, 1, 2]).len(), 6);
        assert_eq!(distinct_permutations(&[]), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn integers_with_two_monoid_generators() {
        let al = Alphabet::new(&["a", "b"]).unwrap();
        let g = AbelianGroup::new(al, vec![0], vec![vec![1], vec![-1]]).unwrap();
        let pe = abelian_pe(&g, 4, 8).unwrap();
        assert_eq!(pe.minimal, vec![GradedTuple(vec![1, 1])]);
        assert_eq!(pe.excluded, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn cyclic_of_order_six() {
        let al = Alphabet::new(&["a"]).unwrap();
        let g = AbelianGroup::new(al, vec![6], vec![vec![1]]).unwrap();
        let pe = abelian_pe(&g, 8, 10).unwrap();
        assert_eq!(pe.minimal, vec![GradedTuple(vec![6])]);
        for n in 0..10 {
            assert_eq!(pe.dfa.accepts(&vec![0; n]), n <= 5);
        }
    }

    #[test]
    fn small_bound_is_reported() {
        let al = Alphabet::new(&["a"]).unwrap();
        let g = AbelianGroup::new(al, vec![6], vec![vec![1]]).unwrap();
        assert!(matches!(abelian_pe(&g, 4, 8), Err(Error::VerificationMismatch { .. })));
    }

    #[test]
    fn non_generating_letters_rejected() {
        let al = Alphabet::new(&["a"]).unwrap();
        let g = AbelianGroup::new(al, vec![0], vec![vec![1]]).unwrap();
        assert!(matches!(abelian_pe(&g, 3, 3), Err(Error::Precondition(_))));
    }
}
