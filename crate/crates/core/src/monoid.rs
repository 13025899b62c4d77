//! Finite monoids by multiplication table, plus finite truncations of the free
//! monoid on a unary alphabet.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Common surface of anything indexing a lexicographic lift: a set of
/// "monoid elements" with a distinguished identity, a well-order starting at
/// the identity, and a (possibly partial) multiplication.
pub trait MonoidLike {
    fn len(&self) -> usize;
    fn identity(&self) -> usize;
    /// Elements from least to greatest; the identity comes first.
    fn well_order(&self) -> &[usize];
    fn multiply(&self, a: usize, b: usize) -> Result<usize>;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteMonoid {
    size: usize,
    identity: usize,
    table: Vec<Vec<usize>>,
    well_order: Vec<usize>,
    #[serde(skip)]
    rank: Vec<usize>,
}

/// On-disk form: `{ "size", "identity", "table", "well_order"? }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonoidFile {
    pub size: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub well_order: Option<Vec<usize>>,
}

impl FiniteMonoid {
    /// Checks the identity law, then associativity. Errors name the first witness.
    pub fn validate(size: usize, table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        if table.len() != size {
            return Err(Error::DimensionMismatch {
                what: "monoid table rows".into(),
                expected: size,
                found: table.len(),
            });
        }
        for row in &table {
            if row.len() != size {
                return Err(Error::DimensionMismatch {
                    what: "monoid table row".into(),
                    expected: size,
                    found: row.len(),
                });
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= size) {
                return Err(Error::OutOfRange {
                    what: "monoid table entry".into(),
                    index: bad,
                    size,
                });
            }
        }
        if identity >= size {
            return Err(Error::OutOfRange {
                what: "monoid identity".into(),
                index: identity,
                size,
            });
        }
        for i in 0..size {
            if table[identity][i] != i || table[i][identity] != i {
                return Err(Error::BadIdentity(i));
            }
        }
        for i in 0..size {
            for j in 0..size {
                for k in 0..size {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        let well_order: Vec<usize> = std::iter::once(identity)
            .chain((0..size).filter(|&i| i != identity))
            .collect();
        let rank = invert(&well_order);
        Ok(Self {
            size,
            identity,
            table,
            well_order,
            rank,
        })
    }

    pub fn from_file(file: MonoidFile) -> Result<Self> {
        let m = Self::validate(file.size, file.table, file.identity)?;
        match file.well_order {
            Some(order) => m.with_well_order(order),
            None => Ok(m),
        }
    }

    pub fn to_file(&self) -> MonoidFile {
        MonoidFile {
            size: self.size,
            identity: self.identity,
            table: self.table.clone(),
            well_order: Some(self.well_order.clone()),
        }
    }

    /// Replaces the default order; the new one must be a permutation with the identity first.
    pub fn with_well_order(mut self, order: Vec<usize>) -> Result<Self> {
        if order.len() != self.size || order.first() != Some(&self.identity) {
            return Err(Error::BadWellOrder);
        }
        let mut seen = vec![false; self.size];
        for &x in &order {
            if x >= self.size || std::mem::replace(&mut seen[x], true) {
                return Err(Error::BadWellOrder);
            }
        }
        self.rank = invert(&order);
        self.well_order = order;
        Ok(self)
    }

    pub fn trivial() -> Self {
        Self::validate(1, vec![vec![0]], 0).expect("trivial monoid")
    }

    /// Cyclic group `Z_n` with identity 0.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::validate(n, table, 0).expect("cyclic group")
    }

    pub fn z2() -> Self {
        Self::cyclic(2)
    }

    /// `{1, a, b}` with `x·y = x` for `x, y ∈ {a, b}`: the left-zero band with
    /// an identity adjoined. Non-commutative, both non-identity elements idempotent.
    pub fn left_zero_with_identity() -> Self {
        let table = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]];
        Self::validate(3, table, 0).expect("left-zero monoid")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Position of an element in the well-order.
    pub fn rank(&self, m: usize) -> usize {
        self.rank[m]
    }

    pub fn is_group(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).any(|b| self.table[a][b] == self.identity))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

impl MonoidLike for FiniteMonoid {
    fn len(&self) -> usize {
        self.size
    }
    fn identity(&self) -> usize {
        self.identity
    }
    fn well_order(&self) -> &[usize] {
        &self.well_order
    }
    fn multiply(&self, a: usize, b: usize) -> Result<usize> {
        for x in [a, b] {
            if x >= self.size {
                return Err(Error::OutOfRange {
                    what: "monoid element".into(),
                    index: x,
                    size: self.size,
                });
            }
        }
        Ok(self.table[a][b])
    }
}

pub(crate) fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// All words of length at most `depth` over a unary alphabet, in length-lex
/// order with the empty word first. Words are stored as symbol indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordTruncation {
    alphabet: Vec<String>,
    depth: usize,
    words: Vec<Vec<usize>>,
    index: std::collections::HashMap<Vec<usize>, usize>,
    order: Vec<usize>,
}

impl WordTruncation {
    pub fn new(alphabet: Vec<String>, depth: usize, cap: usize) -> Result<Self> {
        let count = word_count(alphabet.len(), depth);
        crate::error::ensure_cap("word truncation", count, cap as u128)?;
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..depth {
            let next: Vec<Vec<usize>> = layer
                .iter()
                .flat_map(|w| {
                    (0..alphabet.len()).map(move |s| {
                        let mut v = w.clone();
                        v.push(s);
                        v
                    })
                })
                .collect();
            words.extend(next.iter().cloned());
            layer = next;
        }
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let order = (0..words.len()).collect();
        Ok(Self {
            alphabet,
            depth,
            words,
            index,
            order,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn index_of(&self, word: &[usize]) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// Parses a word written as concatenated symbol names, e.g. `"ff"`, when
    /// all symbols are single characters; otherwise symbols are separated by spaces.
    pub fn parse(&self, text: &str) -> Result<Vec<usize>> {
        let single = self.alphabet.iter().all(|s| s.chars().count() == 1);
        let tokens: Vec<String> = if single {
            text.chars().map(|c| c.to_string()).collect()
        } else {
            text.split_whitespace().map(str::to_string).collect()
        };
        tokens
            .iter()
            .map(|t| {
                self.alphabet
                    .iter()
                    .position(|s| s == t)
                    .ok_or_else(|| Error::UnknownSymbol(t.clone()))
            })
            .collect()
    }

    pub fn render(&self, word: &[usize]) -> String {
        word.iter().map(|&s| self.alphabet[s].as_str()).collect::<Vec<_>>().join("")
    }

    /// Concatenation `uv`, or `DepthOverflow` if it leaves the truncation.
    pub fn concat(&self, u: &[usize], v: &[usize]) -> Result<Vec<usize>> {
        let length = u.len() + v.len();
        if length > self.depth {
            return Err(Error::DepthOverflow {
                length,
                depth: self.depth,
            });
        }
        Ok(u.iter().chain(v).copied().collect())
    }
}

impl MonoidLike for WordTruncation {
    fn len(&self) -> usize {
        self.words.len()
    }
    fn identity(&self) -> usize {
        0
    }
    fn well_order(&self) -> &[usize] {
        &self.order
    }
    fn multiply(&self, a: usize, b: usize) -> Result<usize> {
        let (u, v) = match (self.words.get(a), self.words.get(b)) {
            (Some(u), Some(v)) => (u, v),
            _ => {
                return Err(Error::OutOfRange {
                    what: "word index".into(),
                    index: a.max(b),
                    size: self.words.len(),
                })
            }
        };
        let w = self.concat(u, v)?;
        Ok(self.index[&w])
    }
}

/// `Σ_{i ≤ depth} alphabet^i`.
pub fn word_count(alphabet: usize, depth: usize) -> u128 {
    (0..=depth).map(|i| crate::error::checked_pow(alphabet, i)).fold(0u128, |a, b| a.saturating_add(b))
}

/// Product in a monoid or a word truncation.
pub fn multiply_word<M: MonoidLike + ?Sized>(m: &M, u: usize, v: usize) -> Result<usize> {
    m.multiply(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent checker: every triple, every identity instance.
    fn naive_is_monoid(table: &[Vec<usize>], e: usize) -> bool {
        let n = table.len();
        let assoc = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| table[table[i][j]][k] == table[i][table[j][k]])));
        let ident = (0..n).all(|i| table[e][i] == i && table[i][e] == i);
        assoc && ident
    }

    #[test]
    fn trivial_and_z2_validate() {
        assert_eq!(FiniteMonoid::trivial().size(), 1);
        let z2 = FiniteMonoid::z2();
        assert_eq!(z2.mul(1, 1), 0);
        assert!(z2.is_group());
    }

    #[test]
    fn bad_identity_is_reported_first() {
        let err = FiniteMonoid::validate(2, vec![vec![1, 1], vec![1, 0]], 0).unwrap_err();
        assert_eq!(err, Error::BadIdentity(0));
    }

    #[test]
    fn non_associative_table_names_a_triple() {
        // identity 0; 1·1 = 2, 2·1 = 2, 1·2 = 1 breaks (1·1)·2 = 1·(1·2)
        let table = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 2, 2]];
        let err = FiniteMonoid::validate(3, table.clone(), 0).unwrap_err();
        assert!(matches!(err, Error::NotAssociative(..)));
        assert!(!naive_is_monoid(&table, 0));
    }

    #[test]
    fn validate_agrees_with_naive_checker_on_all_2_element_tables() {
        for bits in 0..16u32 {
            let table: Vec<Vec<usize>> = (0..2)
                .map(|i| (0..2).map(|j| ((bits >> (2 * i + j)) & 1) as usize).collect())
                .collect();
            for e in 0..2 {
                assert_eq!(
                    FiniteMonoid::validate(2, table.clone(), e).is_ok(),
                    naive_is_monoid(&table, e),
                    "table {table:?} identity {e}"
                );
            }
        }
    }

    #[test]
    fn well_order_must_start_at_identity() {
        let z3 = FiniteMonoid::cyclic(3);
        assert_eq!(z3.well_order(), &[0, 1, 2]);
        assert!(z3.clone().with_well_order(vec![1, 0, 2]).is_err());
        let reordered = z3.with_well_order(vec![0, 2, 1]).unwrap();
        assert_eq!(reordered.rank(2), 1);
    }

    #[test]
    fn left_zero_monoid_is_not_commutative() {
        let m = FiniteMonoid::left_zero_with_identity();
        assert!(!m.is_commutative());
        assert!(!m.is_group());
    }

    #[test]
    fn word_truncation_counts_and_order() {
        let t = WordTruncation::new(vec!["f".into(), "g".into()], 2, 1000).unwrap();
        assert_eq!(t.len() as u128, word_count(2, 2));
        assert_eq!(t.len(), 7);
        assert!(t.word(0).is_empty());
        assert_eq!(t.render(t.word(3)), "ff");
    }

    #[test]
    fn multiply_word_examples() {
        let z2 = FiniteMonoid::z2();
        assert_eq!(multiply_word(&z2, 1, 1).unwrap(), 0);

        let t3 = WordTruncation::new(vec!["f".into()], 3, 100).unwrap();
        let f = t3.index_of(&t3.parse("f").unwrap()).unwrap();
        let ff = t3.index_of(&t3.parse("ff").unwrap()).unwrap();
        let fff = multiply_word(&t3, f, ff).unwrap();
        assert_eq!(t3.render(t3.word(fff)), "fff");

        let t2 = WordTruncation::new(vec!["f".into()], 2, 100).unwrap();
        let f = t2.index_of(&[0]).unwrap();
        let ff = t2.index_of(&[0, 0]).unwrap();
        assert_eq!(
            multiply_word(&t2, ff, f),
            Err(Error::DepthOverflow { length: 3, depth: 2 })
        );
    }

    #[test]
    fn unknown_symbol_in_word() {
        let t = WordTruncation::new(vec!["f".into()], 2, 100).unwrap();
        assert_eq!(t.parse("fx"), Err(Error::UnknownSymbol("x".into())));
    }

    #[test]
    fn truncation_cap() {
        assert!(WordTruncation::new(vec!["a".into(), "b".into()], 30, 1000).is_err());
    }
}
