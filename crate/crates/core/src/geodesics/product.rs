use crate::automaton::{Alphabet, BoolOp, Dfa};
use crate::error::{Error, Result};
use crate::expr::subalphabet_star;

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacent: Vec<Vec<bool>>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacent = vec![vec![false; n]; n];
        for &(i, j) in edges {
            if i >= n || j >= n || i == j {
                return Err(Error::InvalidArgument(format!("bad edge {i} -- {j}")));
            }
            adjacent[i][j] = true;
            adjacent[j][i] = true;
        }
        Ok(Graph { n, adjacent })
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::new(n, &edges).unwrap()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacent[i][j]
    }
}

#[derive(Clone, Debug)]
pub struct GraphProduct {
    pub dfa: Dfa,
    /// The vertex automata extended to the union alphabet.
    pub hats: Vec<Dfa>,
}

/// Extends `dfa` to `alphabet`, a superset of its own. `commuting[b]`
/// says how a foreign letter `b` acts: as a loop at every state, or as a
/// jump from each accepting state to the start (non-accepting states
/// stay put). Letters of `dfa`'s own alphabet keep their transitions.
pub fn hat(dfa: &Dfa, alphabet: &Alphabet, commuting: &[bool]) -> Result<Dfa> {
    let own: Vec<Option<usize>> = alphabet
        .symbols()
        .iter()
        .map(|s| dfa.alphabet().index_of(s).ok())
        .collect();
    if own.iter().flatten().count() != dfa.alphabet().len() {
        return Err(Error::AlphabetMismatch);
    }
    let rows = (0..dfa.num_states())
        .map(|q| {
            own.iter()
                .enumerate()
                .map(|(b, letter)| match letter {
                    Some(a) => dfa.next(q, *a),
                    None if commuting[b] || !dfa.is_accepting(q) => q,
                    None => dfa.start(),
                })
                .collect()
        })
        .collect();
    let accepting = (0..dfa.num_states()).map(|q| dfa.is_accepting(q)).collect();
    Dfa::new(alphabet.clone(), dfa.start(), accepting, rows)
}

/// Geodesic automaton of a graph product from minimal, prefix-closed
/// geodesic automata of the vertex groups over disjoint alphabets: the
/// intersection of the vertex automata, each extended so that letters of
/// adjacent vertices loop and letters of other vertices return accepting
/// states to the start.
pub fn graph_product(graph: &Graph, vertices: &[Dfa]) -> Result<GraphProduct> {
    if vertices.len() != graph.len() {
        return Err(Error::InvalidArgument(format!(
            "{} automata for {} vertices",
            vertices.len(),
            graph.len()
        )));
    }
    for (i, d) in vertices.iter().enumerate() {
        if !d.is_minimal() {
            return Err(Error::NotMinimal {
                states: d.num_states(),
                minimal: d.minimize().num_states(),
            });
        }
        if !d.is_prefix_closed() {
            return Err(Error::NotPrefixClosed(i));
        }
    }
    let parts: Vec<&Alphabet> = vertices.iter().map(Dfa::alphabet).collect();
    let alphabet = Alphabet::disjoint_union(&parts)?;
    let owner: Vec<usize> = vertices
        .iter()
        .enumerate()
        .flat_map(|(i, d)| std::iter::repeat_n(i, d.alphabet().len()))
        .collect();
    let hats = vertices
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let commuting: Vec<bool> = owner.iter().map(|&j| graph.adjacent(i, j)).collect();
            hat(d, &alphabet, &commuting)
        })
        .collect::<Result<Vec<_>>>()?;
    let dfa = intersect_all(&alphabet, &hats)?;
    Ok(GraphProduct { dfa, hats })
}

fn intersect_all(alphabet: &Alphabet, dfas: &[Dfa]) -> Result<Dfa> {
    dfas.iter().try_fold(Dfa::universal(alphabet), |acc, d| {
        Ok(acc.product(d, BoolOp::And)?.minimize())
    })
}

/// Direct product of two languages over disjoint alphabets: words whose
/// letters from each alphabet, read alone, lie in the respective language.
pub fn direct_product_wrap(l1: &Dfa, l2: &Dfa) -> Result<Dfa> {
    let alphabet = Alphabet::disjoint_union(&[l1.alphabet(), l2.alphabet()])?;
    let all = vec![true; alphabet.len()];
    let wrapped = [hat(l1, &alphabet, &all)?, hat(l2, &alphabet, &all)?];
    intersect_all(&alphabet, &wrapped)
}

/// Whether intersecting `product` with `A_i*` (for the alphabet of
/// `vertex`) gives back exactly `vertex`.
pub fn restriction_holds(product: &Dfa, vertex: &Dfa) -> Result<bool> {
    let alphabet = product.alphabet();
    let letters = vertex
        .alphabet()
        .symbols()
        .iter()
        .map(|s| alphabet.index_of(s))
        .collect::<Result<Vec<_>>>()?;
    let restricted = product.product(&subalphabet_star(alphabet, &letters).compile(alphabet)?, BoolOp::And)?;
    restricted.equivalent(&vertex.embed(alphabet)?)
}

/// Renames every symbol `s` of `dfa` to `s@tag`, keeping inverse pairs.
pub fn namespace(dfa: &Dfa, tag: &str) -> Result<Dfa> {
    let al = dfa.alphabet();
    let symbols: Vec<String> = al.symbols().iter().map(|s| format!("{s}@{tag}")).collect();
    let renamed = if al.is_inverse_closed() {
        let pairs: Vec<(String, String)> = al
            .inverse_pairs()
            .iter()
            .map(|&(x, y)| (symbols[x].clone(), symbols[y].clone()))
            .collect();
        Alphabet::with_inverses(&symbols, &pairs)?
    } else {
        Alphabet::new(&symbols)?
    };
    dfa.relabel(&renamed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::z_geodesics;
    use crate::expr::reduced_words;
    use crate::starfree::has_powered_circuit;

    #[test]
    fn free_product_of_integers_is_reduced_words() {
        let (x, y) = (z_geodesics("a").unwrap(), z_geodesics("b").unwrap());
        let gp = graph_product(&Graph::new(2, &[]).unwrap(), &[x, y]).unwrap();
        let al = gp.dfa.alphabet().clone();
        let reduced = reduced_words(&al).unwrap().compile(&al).unwrap();
        assert!(gp.dfa.equivalent(&reduced).unwrap());
    }

    #[test]
    fn hats_stay_minimal_without_powered_circuits() {
        let vs = ["a", "b", "c"].map(|g| z_geodesics(g).unwrap());
        let gp = graph_product(&Graph::new(3, &[(0, 1), (1, 2)]).unwrap(), &vs).unwrap();
        for (h, v) in gp.hats.iter().zip(&vs) {
            assert_eq!(h.minimize().num_states(), h.num_states());
            assert_eq!(h.num_states(), v.num_states());
            assert_eq!(has_powered_circuit(h).unwrap(), None);
        }
        for v in &vs {
            assert!(restriction_holds(&gp.dfa, v).unwrap());
        }
    }

    #[test]
    fn wrap_matches_complete_graph() {
        let (x, y) = (z_geodesics("a").unwrap(), z_geodesics("b").unwrap());
        let gp = graph_product(&Graph::complete(2), &[x.clone(), y.clone()]).unwrap();
        assert!(direct_product_wrap(&x, &y).unwrap().equivalent(&gp.dfa).unwrap());
        let (u, v) = (Dfa::universal(x.alphabet()), Dfa::universal(y.alphabet()));
        let w = direct_product_wrap(&u, &v).unwrap();
        assert!(w.equivalent(&Dfa::universal(w.alphabet())).unwrap());
    }

    #[test]
    fn validation_errors() {
        let x = z_geodesics("a").unwrap();
        assert!(matches!(
            graph_product(&Graph::new(2, &[]).unwrap(), &[x.clone(), x.clone()]),
            Err(Error::AlphabetOverlap(_))
        ));
        let renamed = namespace(&x, "2").unwrap();
        assert!(graph_product(&Graph::new(2, &[]).unwrap(), &[x.clone(), renamed]).is_ok());
        let al = Alphabet::new(&["a"]).unwrap();
        let parity = Dfa::new(al, 0, vec![true, false], vec![vec![1], vec![0]]).unwrap();
        assert!(matches!(
            graph_product(&Graph::new(2, &[]).unwrap(), &[x, parity]),
            Err(Error::NotPrefixClosed(1))
        ));
    }
}
