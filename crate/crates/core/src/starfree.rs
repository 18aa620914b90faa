//! Star-freeness decision procedures.
//!
//! A regular language is star-free exactly when its syntactic monoid is
//! aperiodic, and exactly when its minimal automaton has no powered
//! circuit. Both criteria are computed from the transition monoid of the
//! minimal automaton by different routes (whole-element power sequences
//! versus per-state orbits) and [`is_star_free`] insists they agree.

use serde::Serialize;

use crate::automaton::{Dfa, TransitionMonoid};
use crate::error::{Error, Result};
use crate::Word;

/// Outcome of the aperiodicity test on a finite monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AperiodicityReport {
    /// Every element satisfies `x^N = x^(N+1)`; `bound` is the least such
    /// `N ≥ 1` that works for all elements.
    Aperiodic { bound: usize },
    /// `element`'s powers enter a cycle of length `period > 1`.
    Periodic {
        element: usize,
        witness: Word,
        period: usize,
    },
}

impl AperiodicityReport {
    pub fn is_aperiodic(&self) -> bool {
        matches!(self, AperiodicityReport::Aperiodic { .. })
    }

    pub fn bound(&self) -> Option<usize> {
        match self {
            AperiodicityReport::Aperiodic { bound } => Some(*bound),
            AperiodicityReport::Periodic { .. } => None,
        }
    }
}

/// Index and period of the power sequence `x, x², x³, …`: the least
/// `i ≥ 1` and `p ≥ 1` with `x^i = x^(i+p)`.
fn index_and_period(m: &TransitionMonoid, x: usize) -> (usize, usize) {
    let mut seen = vec![usize::MAX; m.len()];
    let mut power = x;
    let mut exponent = 1;
    loop {
        if seen[power] != usize::MAX {
            return (seen[power], exponent - seen[power]);
        }
        seen[power] = exponent;
        power = m.compose(power, x);
        exponent += 1;
    }
}

pub fn is_aperiodic(m: &TransitionMonoid) -> AperiodicityReport {
    let mut bound = 1;
    for x in 0..m.len() {
        let (index, period) = index_and_period(m, x);
        if period > 1 {
            // elements are in shortlex order of witness, so the first hit is shortest
            return AperiodicityReport::Periodic {
                element: x,
                witness: m.element(x).word.clone(),
                period,
            };
        }
        bound = bound.max(index);
    }
    AperiodicityReport::Aperiodic { bound }
}

/// A powered circuit `σ --v^k--> σ` with `σ^v ≠ σ^(v²)`, reached from the
/// start by `u`, and a suffix `w` accepted after exactly one of `u`, `uv`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoweredCircuitWitness {
    pub u: Word,
    pub v: Word,
    pub k: usize,
    pub w: Word,
}

impl PoweredCircuitWitness {
    /// Replays the witness on `dfa`, checking every defining property.
    pub fn verify(&self, dfa: &Dfa) -> bool {
        if self.v.is_empty() || self.k < 2 {
            return false;
        }
        let sigma = dfa.run(dfa.start(), &self.u);
        let after_v = dfa.run(sigma, &self.v);
        let after_v2 = dfa.run(after_v, &self.v);
        let after_vk = (0..self.k).fold(sigma, |s, _| dfa.run(s, &self.v));
        let uw: Word = [&self.u[..], &self.w[..]].concat();
        let uvw: Word = [&self.u[..], &self.v[..], &self.w[..]].concat();
        after_vk == sigma && after_v != after_v2 && dfa.accepts(&uw) != dfa.accepts(&uvw)
    }

    /// Membership of `u vⁿ w` for `n = 0..=nmax`.
    pub fn pumping_pattern(&self, dfa: &Dfa, nmax: usize) -> Vec<bool> {
        (0..=nmax)
            .map(|n| {
                let mut word = self.u.clone();
                (0..n).for_each(|_| word.extend_from_slice(&self.v));
                word.extend_from_slice(&self.w);
                dfa.accepts(&word)
            })
            .collect()
    }
}

/// Searches the minimal automaton `dfa` for a powered circuit.
///
/// Candidates `v` are monoid elements in shortlex order of their witness
/// words; for the first element with an orbit cycle of length `k > 1`,
/// the cycle state with the shortlex-least access word is chosen, and
/// `w` is the shortest suffix separating `σ` from `σ^v`.
pub fn has_powered_circuit(dfa: &Dfa) -> Result<Option<PoweredCircuitWitness>> {
    let minimal = dfa.minimize().num_states();
    if minimal != dfa.num_states() {
        return Err(Error::NotMinimal {
            states: dfa.num_states(),
            minimal,
        });
    }
    let monoid = dfa.transition_monoid();
    Ok(powered_circuit_in(dfa, &monoid))
}

fn powered_circuit_in(dfa: &Dfa, monoid: &TransitionMonoid) -> Option<PoweredCircuitWitness> {
    let access = dfa.access_words();
    let n = dfa.num_states();
    for element in monoid.elements().iter().skip(1) {
        let mut best: Option<(usize, usize)> = None;
        for sigma in 0..n {
            let k = orbit_cycle_length(element.map.as_slice(), sigma);
            if k > 1 {
                let better = match best {
                    None => true,
                    Some((other, _)) => shortlex_less(
                        access[sigma].as_ref().unwrap(),
                        access[other].as_ref().unwrap(),
                    ),
                };
                if better {
                    best = Some((sigma, k));
                }
            }
        }
        if let Some((sigma, k)) = best {
            let w = dfa
                .separating_suffix(sigma, element.apply(sigma))
                .expect("distinct states of a minimal automaton have distinct futures");
            return Some(PoweredCircuitWitness {
                u: access[sigma].clone().unwrap(),
                v: element.word.clone(),
                k,
                w,
            });
        }
    }
    None
}

/// Length of the cycle through `state` under repeated application of
/// `map`, or 0 when `state` is not on a cycle.
fn orbit_cycle_length(map: &[u32], state: usize) -> usize {
    let mut s = map[state] as usize;
    let mut steps = 1;
    while s != state && steps <= map.len() {
        s = map[s] as usize;
        steps += 1;
    }
    if s == state {
        steps
    } else {
        0
    }
}

fn shortlex_less(x: &[usize], y: &[usize]) -> bool {
    (x.len(), x) < (y.len(), y)
}

/// Combined verdict of both criteria on the minimal automaton.
#[derive(Clone, Debug)]
pub struct StarFreeReport {
    pub minimal_states: usize,
    pub monoid_size: usize,
    pub aperiodicity: AperiodicityReport,
    pub circuit: Option<PoweredCircuitWitness>,
}

impl StarFreeReport {
    pub fn star_free(&self) -> bool {
        self.aperiodicity.is_aperiodic()
    }
}

pub fn analyze(dfa: &Dfa) -> Result<StarFreeReport> {
    let minimal = dfa.minimize();
    let monoid = minimal.transition_monoid();
    let aperiodicity = is_aperiodic(&monoid);
    let circuit = powered_circuit_in(&minimal, &monoid);
    if aperiodicity.is_aperiodic() != circuit.is_none() {
        return Err(Error::CriteriaDisagree(format!(
            "aperiodic = {}, powered circuit = {:?}",
            aperiodicity.is_aperiodic(),
            circuit
        )));
    }
    if let Some(witness) = &circuit {
        if !witness.verify(&minimal) {
            return Err(Error::CriteriaDisagree(format!(
                "powered circuit witness {witness:?} fails replay"
            )));
        }
    }
    Ok(StarFreeReport {
        minimal_states: minimal.num_states(),
        monoid_size: monoid.len(),
        aperiodicity,
        circuit,
    })
}

pub fn is_star_free(dfa: &Dfa) -> Result<bool> {
    Ok(analyze(dfa)?.star_free())
}
