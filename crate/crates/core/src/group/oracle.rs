use std::collections::HashMap;
use std::sync::Arc;

use crate::automaton::Alphabet;
use crate::error::{Error, Result};
use crate::Word;

/// A key identifying a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm(pub Vec<i64>);

/// Solves the word problem of a group generated by the letters of an
/// alphabet.
pub trait WordOracle: Send + Sync {
    fn alphabet(&self) -> &Alphabet;

    /// Equal words always get equal keys.
    fn normal_form(&self, word: &[usize]) -> NormalForm;

    /// Whether distinct elements always get distinct keys. When false the
    /// key is only an invariant and [`WordOracle::equal`] must be used to
    /// separate words sharing a key.
    fn is_canonical(&self) -> bool {
        true
    }

    fn equal(&self, u: &[usize], v: &[usize]) -> bool {
        self.normal_form(u) == self.normal_form(v)
    }

    fn is_identity(&self, word: &[usize]) -> bool {
        self.equal(word, &[])
    }
}

impl<T: WordOracle + ?Sized> WordOracle for Arc<T> {
    fn alphabet(&self) -> &Alphabet {
        (**self).alphabet()
    }
    fn normal_form(&self, word: &[usize]) -> NormalForm {
        (**self).normal_form(word)
    }
    fn is_canonical(&self) -> bool {
        (**self).is_canonical()
    }
    fn equal(&self, u: &[usize], v: &[usize]) -> bool {
        (**self).equal(u, v)
    }
    fn is_identity(&self, word: &[usize]) -> bool {
        (**self).is_identity(word)
    }
}

impl<T: WordOracle + ?Sized> WordOracle for &T {
    fn alphabet(&self) -> &Alphabet {
        (**self).alphabet()
    }
    fn normal_form(&self, word: &[usize]) -> NormalForm {
        (**self).normal_form(word)
    }
    fn is_canonical(&self) -> bool {
        (**self).is_canonical()
    }
    fn equal(&self, u: &[usize], v: &[usize]) -> bool {
        (**self).equal(u, v)
    }
    fn is_identity(&self, word: &[usize]) -> bool {
        (**self).is_identity(word)
    }
}

fn word_key(word: &[usize]) -> NormalForm {
    NormalForm(word.iter().map(|&a| a as i64).collect())
}

fn require_inverses(alphabet: &Alphabet) -> Result<()> {
    if alphabet.is_inverse_closed() {
        Ok(())
    } else {
        Err(Error::InvalidAlphabet("alphabet has no inverses".into()))
    }
}

/// The free group on an inverse-closed alphabet; normal form is free
/// reduction.
#[derive(Clone, Debug)]
pub struct FreeGroup {
    alphabet: Alphabet,
}

impl FreeGroup {
    pub fn new(alphabet: Alphabet) -> Result<Self> {
        require_inverses(&alphabet)?;
        Ok(FreeGroup { alphabet })
    }
}

impl WordOracle for FreeGroup {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn normal_form(&self, word: &[usize]) -> NormalForm {
        word_key(&self.alphabet.free_reduce(word))
    }
}

/// `ℤ/n₁ × ⋯ × ℤ/n_r` (with `nᵢ = 0` for a `ℤ` factor); each letter maps
/// to a vector. The alphabet need not be inverse-closed, so monoid
/// generating sets are allowed.
#[derive(Clone, Debug)]
pub struct AbelianGroup {
    alphabet: Alphabet,
    orders: Vec<u64>,
    images: Vec<Vec<i64>>,
}

impl AbelianGroup {
    pub fn new(alphabet: Alphabet, orders: Vec<u64>, images: Vec<Vec<i64>>) -> Result<Self> {
        if images.len() != alphabet.len() || images.iter().any(|v| v.len() != orders.len()) {
            return Err(Error::InvalidArgument(
                "one image of the group's rank per letter required".into(),
            ));
        }
        let mut g = AbelianGroup {
            alphabet,
            orders,
            images: Vec::new(),
        };
        g.images = images.iter().map(|v| g.reduce(v.clone())).collect();
        if let Some(inv) = (0..g.alphabet.len())
            .map(|a| (a, g.alphabet.inverse_of(a)))
            .find(|&(a, b)| b.is_some_and(|b| !g.is_identity(&[a, b])))
        {
            return Err(Error::InvalidArgument(format!(
                "image of {} is not inverse to its partner",
                g.alphabet.symbol(inv.0)
            )));
        }
        Ok(g)
    }

    /// Standard generators on an alphabet built by `Alphabet::group`:
    /// generator `i` maps to the `i`-th unit vector.
    pub fn standard(generators: &[&str], orders: Vec<u64>) -> Result<Self> {
        let alphabet = Alphabet::group(generators)?;
        let r = orders.len();
        if r != generators.len() {
            return Err(Error::InvalidArgument("one order per generator required".into()));
        }
        let images = (0..2 * r)
            .map(|a| {
                let mut v = vec![0; r];
                v[a / 2] = if a % 2 == 0 { 1 } else { -1 };
                v
            })
            .collect();
        Self::new(alphabet, orders, images)
    }

    pub fn free_abelian(generators: &[&str]) -> Result<Self> {
        Self::standard(generators, vec![0; generators.len()])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn image(&self, letter: usize) -> &[i64] {
        &self.images[letter]
    }

    pub fn reduce(&self, mut v: Vec<i64>) -> Vec<i64> {
        for (x, &n) in v.iter_mut().zip(&self.orders) {
            if n > 0 {
                *x = x.rem_euclid(n as i64);
            }
        }
        v
    }

    pub fn coordinates(&self, word: &[usize]) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        for &a in word {
            for (x, y) in v.iter_mut().zip(&self.images[a]) {
                *x += y;
            }
        }
        self.reduce(v)
    }
}

impl WordOracle for AbelianGroup {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn normal_form(&self, word: &[usize]) -> NormalForm {
        NormalForm(self.coordinates(word))
    }
}

/// A finite group given by its multiplication table; element 0 is the
/// identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    alphabet: Alphabet,
    table: Vec<Vec<usize>>,
    images: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(alphabet: Alphabet, table: Vec<Vec<usize>>, images: Vec<usize>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidArgument("malformed multiplication table".into()));
        }
        if (0..n).any(|x| table[0][x] != x || table[x][0] != x) {
            return Err(Error::InvalidArgument("element 0 is not the identity".into()));
        }
        if images.len() != alphabet.len() || images.iter().any(|&x| x >= n) {
            return Err(Error::InvalidArgument("one element per letter required".into()));
        }
        Ok(FiniteGroup {
            alphabet,
            table,
            images,
        })
    }

    /// The group generated by the given permutations, one per letter.
    pub fn from_permutations(alphabet: Alphabet, perms: &[Vec<usize>]) -> Result<Self> {
        let degree = perms.first().map_or(0, Vec::len);
        if perms.len() != alphabet.len() || perms.iter().any(|p| p.len() != degree) {
            return Err(Error::InvalidArgument("one permutation per letter required".into()));
        }
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { p.iter().map(|&i| q[i]).collect() };
        let mut elements: Vec<Vec<usize>> = vec![(0..degree).collect()];
        let mut index = HashMap::from([(elements[0].clone(), 0)]);
        let mut i = 0;
        while i < elements.len() {
            for p in perms {
                let e = compose(&elements[i], p);
                if !index.contains_key(&e) {
                    index.insert(e.clone(), elements.len());
                    elements.push(e);
                }
            }
            i += 1;
        }
        let table = elements
            .iter()
            .map(|x| elements.iter().map(|y| index[&compose(x, y)]).collect())
            .collect();
        let images = perms.iter().map(|p| index[p]).collect();
        Self::new(alphabet, table, images)
    }

    /// `ℤ/n` with letter `i` acting as `+steps[i]`.
    pub fn cyclic(alphabet: Alphabet, n: usize, steps: &[i64]) -> Result<Self> {
        let table = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        let images = steps.iter().map(|&s| s.rem_euclid(n as i64) as usize).collect();
        Self::new(alphabet, table, images)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn element(&self, word: &[usize]) -> usize {
        word.iter()
            .fold(0, |x, &a| self.table[x][self.images[a]])
    }
}

impl WordOracle for FiniteGroup {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn normal_form(&self, word: &[usize]) -> NormalForm {
        NormalForm(vec![self.element(word) as i64])
    }
}

/// A group of invertible integer matrices; a word maps to the product of
/// its letters' matrices, left to right.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    alphabet: Alphabet,
    dim: usize,
    images: Vec<Vec<i64>>,
}

impl MatrixGroup {
    /// `images` are row-major `dim × dim` matrices, one per letter. Formal
    /// inverse letters must map to inverse matrices.
    pub fn new(alphabet: Alphabet, dim: usize, images: Vec<Vec<i64>>) -> Result<Self> {
        if images.len() != alphabet.len() || images.iter().any(|m| m.len() != dim * dim) {
            return Err(Error::InvalidArgument(format!(
                "one {dim}x{dim} matrix per letter required"
            )));
        }
        let g = MatrixGroup {
            alphabet,
            dim,
            images,
        };
        for a in 0..g.alphabet.len() {
            if let Some(b) = g.alphabet.inverse_of(a) {
                if g.evaluate(&[a, b]) != g.identity() {
                    return Err(Error::InvalidArgument(format!(
                        "matrix of {} is not inverse to its partner",
                        g.alphabet.symbol(a)
                    )));
                }
            }
        }
        Ok(g)
    }

    /// The infinite dihedral group on `t, T, s` with `t ↦ [[1,1],[0,1]]`
    /// and `s ↦ [[-1,0],[0,1]]`. The translations are the matrices with
    /// top-left entry 1.
    pub fn infinite_dihedral() -> Self {
        let alphabet = Alphabet::with_inverses(&["t", "T", "s"], &[("t", "T"), ("s", "s")]).unwrap();
        MatrixGroup::new(
            alphabet,
            2,
            vec![vec![1, 1, 0, 1], vec![1, -1, 0, 1], vec![-1, 0, 0, 1]],
        )
        .unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn identity(&self) -> Vec<i64> {
        let n = self.dim;
        (0..n * n).map(|i| i64::from(i / n == i % n)).collect()
    }

    pub fn evaluate(&self, word: &[usize]) -> Vec<i64> {
        let n = self.dim;
        let mut m = self.identity();
        for &a in word {
            let b = &self.images[a];
            let mut out = vec![0i64; n * n];
            for i in 0..n {
                for k in 0..n {
                    let x = m[i * n + k];
                    if x == 0 {
                        continue;
                    }
                    for j in 0..n {
                        out[i * n + j] = x
                            .checked_mul(b[k * n + j])
                            .and_then(|y| out[i * n + j].checked_add(y))
                            .expect("matrix entry overflow");
                    }
                }
            }
            m = out;
        }
        m
    }
}

impl WordOracle for MatrixGroup {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn normal_form(&self, word: &[usize]) -> NormalForm {
        NormalForm(self.evaluate(word))
    }
}

/// Each letter stands for a word over an inner group's alphabet; keys are
/// the inner keys of the substituted word. Defines the subgroup of the
/// inner group generated by the images.
#[derive(Clone)]
pub struct Substitution {
    alphabet: Alphabet,
    images: Vec<Word>,
    inner: Arc<dyn WordOracle>,
}

impl std::fmt::Debug for Substitution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Substitution")
            .field("alphabet", &self.alphabet)
            .field("images", &self.images)
            .finish()
    }
}

impl Substitution {
    pub fn new(alphabet: Alphabet, images: Vec<Word>, inner: Arc<dyn WordOracle>) -> Result<Self> {
        let k = inner.alphabet().len();
        if images.len() != alphabet.len() || images.iter().flatten().any(|&a| a >= k) {
            return Err(Error::InvalidArgument(
                "one image over the inner alphabet per letter required".into(),
            ));
        }
        let s = Substitution {
            alphabet,
            images,
            inner,
        };
        for a in 0..s.alphabet.len() {
            if let Some(b) = s.alphabet.inverse_of(a) {
                if !s.is_identity(&[a, b]) {
                    return Err(Error::InvalidArgument(format!(
                        "image of {} is not inverse to its partner",
                        s.alphabet.symbol(a)
                    )));
                }
            }
        }
        Ok(s)
    }

    /// Parses images given as `symbol -> inner word` text; symbols not
    /// listed must also be inner symbols and map to themselves.
    pub fn from_text(alphabet: Alphabet, images: &[(&str, &str)], inner: Arc<dyn WordOracle>) -> Result<Self> {
        let inner_alphabet = inner.alphabet().clone();
        let mut words = Vec::with_capacity(alphabet.len());
        for s in alphabet.symbols() {
            let word = match images.iter().find(|(x, _)| x == s) {
                Some((_, w)) => inner_alphabet.parse_word(w)?,
                None => vec![inner_alphabet.index_of(s)?],
            };
            words.push(word);
        }
        Self::new(alphabet, words, inner)
    }

    pub fn substitute(&self, word: &[usize]) -> Word {
        word.iter().flat_map(|&a| self.images[a].iter().copied()).collect()
    }

    pub fn inner(&self) -> &Arc<dyn WordOracle> {
        &self.inner
    }
}

impl WordOracle for Substitution {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn normal_form(&self, word: &[usize]) -> NormalForm {
        self.inner.normal_form(&self.substitute(word))
    }
    fn is_canonical(&self) -> bool {
        self.inner.is_canonical()
    }
    fn equal(&self, u: &[usize], v: &[usize]) -> bool {
        self.inner.equal(&self.substitute(u), &self.substitute(v))
    }
}

/// A right-angled Artin group: generators commute exactly when joined in
/// the commutation graph. The normal form is the lexicographically least
/// word representing the reduced trace.
#[derive(Clone, Debug)]
pub struct RightAngledArtin {
    alphabet: Alphabet,
    /// `generator[letter]` is the smaller of the letter and its inverse.
    generator: Vec<usize>,
    commute: Vec<Vec<bool>>,
}

impl RightAngledArtin {
    /// `edges` are pairs of letters whose generators commute.
    pub fn new(alphabet: Alphabet, edges: &[(usize, usize)]) -> Result<Self> {
        require_inverses(&alphabet)?;
        let k = alphabet.len();
        let generator: Vec<usize> = (0..k)
            .map(|a| a.min(alphabet.inverse_of(a).unwrap()))
            .collect();
        let mut commute = vec![vec![false; k]; k];
        for &(x, y) in edges {
            if x >= k || y >= k {
                return Err(Error::UnknownSymbol(format!("#{}", x.max(y))));
            }
            let (gx, gy) = (generator[x], generator[y]);
            commute[gx][gy] = true;
            commute[gy][gx] = true;
        }
        Ok(RightAngledArtin {
            alphabet,
            generator,
            commute,
        })
    }

    /// From `Alphabet::group` generator names and commuting name pairs.
    pub fn from_names(generators: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let alphabet = Alphabet::group(generators)?;
        let edges = edges
            .iter()
            .map(|(x, y)| Ok((alphabet.index_of(x)?, alphabet.index_of(y)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, &edges)
    }

    pub fn commutes(&self, x: usize, y: usize) -> bool {
        let (gx, gy) = (self.generator[x], self.generator[y]);
        gx == gy || self.commute[gx][gy]
    }

    /// Cancels every `x … x⁻¹` whose interior commutes with `x`.
    pub fn reduce(&self, word: &[usize]) -> Word {
        let mut out: Word = Vec::with_capacity(word.len());
        for &x in word {
            let xi = self.alphabet.inverse_of(x).unwrap();
            let mut i = out.len();
            let mut cancelled = false;
            while i > 0 {
                let y = out[i - 1];
                if y == xi {
                    out.remove(i - 1);
                    cancelled = true;
                    break;
                }
                if !self.commutes(x, y) {
                    break;
                }
                i -= 1;
            }
            if !cancelled {
                out.push(x);
            }
        }
        out
    }

    pub fn normal_word(&self, word: &[usize]) -> Word {
        let mut rest = self.reduce(word);
        let mut nf = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut best: Option<usize> = None;
            for j in 0..rest.len() {
                if rest[..j].iter().all(|&y| self.commutes(y, rest[j]))
                    && best.is_none_or(|b| rest[j] < rest[b])
                {
                    best = Some(j);
                }
            }
            nf.push(rest.remove(best.unwrap()));
        }
        nf
    }
}

impl WordOracle for RightAngledArtin {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn normal_form(&self, word: &[usize]) -> NormalForm {
        word_key(&self.normal_word(word))
    }
}
