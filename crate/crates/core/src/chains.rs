//! Finite chains and their embeddings.
//!
//! A chain of length `n` is the set `0..n` with its natural order; user labels
//! live in a side table. `omega(n)` is the finite prefix `{0 < 1 < ... < n-1}`
//! that stands in for ω wherever the infinite chain would appear.

use std::cmp::Ordering;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    labels: Vec<String>,
}

impl Chain {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateElement(l.clone()));
            }
        }
        Ok(Self { labels })
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn omega(n: usize) -> Self {
        Self {
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        i < j
    }
}

impl Serialize for Chain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Chain {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        let labels = raw.iter().map(label_of).collect();
        Chain::new(labels).map_err(serde::de::Error::custom)
    }
}

/// Renders a JSON scalar as an element label; strings lose their quotes.
pub fn label_of(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChainEmbedding {
    pub source_len: usize,
    pub target_len: usize,
    pub map: Vec<usize>,
}

impl ChainEmbedding {
    pub fn new(source_len: usize, target_len: usize, map: Vec<usize>) -> Result<Self> {
        if map.len() != source_len {
            return Err(Error::DimensionMismatch {
                what: "chain embedding".into(),
                expected: source_len,
                found: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&x| x >= target_len) {
            return Err(Error::OutOfRange {
                what: "chain embedding target".into(),
                index: bad,
                size: target_len,
            });
        }
        if !is_strictly_increasing(&map) {
            return Err(Error::NotAnEmbedding(format!("{map:?} is not strictly increasing")));
        }
        Ok(Self {
            source_len,
            target_len,
            map,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            source_len: n,
            target_len: n,
            map: (0..n).collect(),
        }
    }

    /// `self · other`: apply `other` first.
    pub fn compose(&self, other: &ChainEmbedding) -> Result<ChainEmbedding> {
        if other.target_len != self.source_len {
            return Err(Error::DimensionMismatch {
                what: "chain embedding composition".into(),
                expected: self.source_len,
                found: other.target_len,
            });
        }
        Ok(ChainEmbedding {
            source_len: other.source_len,
            target_len: self.target_len,
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
}

pub fn is_strictly_increasing(map: &[usize]) -> bool {
    map.windows(2).all(|w| w[0] < w[1])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinalSum {
    pub chain: Chain,
    /// `(summand index, element index)` for each element of the sum, in order.
    pub tags: Vec<(usize, usize)>,
}

/// Disjoint union of the family ordered by summand first, then within the summand.
pub fn ordinal_sum(family: &[Chain]) -> OrdinalSum {
    let tags: Vec<(usize, usize)> = family
        .iter()
        .enumerate()
        .flat_map(|(xi, c)| (0..c.len()).map(move |a| (xi, a)))
        .collect();
    let labels = tags
        .iter()
        .map(|&(xi, a)| format!("({},{})", xi, family[xi].label(a)))
        .collect();
    OrdinalSum {
        chain: Chain { labels },
        tags,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexProduct {
    pub chain: Chain,
    /// Coordinates of each element of the product, in lexicographic order.
    pub tuples: Vec<Vec<usize>>,
}

/// Cartesian product ordered by the first coordinate where two tuples disagree.
pub fn lex_product(family: &[Chain]) -> LexProduct {
    let tuples: Vec<Vec<usize>> = family
        .iter()
        .map(|c| 0..c.len())
        .multi_cartesian_product()
        .collect();
    // multi_cartesian_product of zero factors yields nothing; the empty product is a point.
    let tuples = if family.is_empty() { vec![vec![]] } else { tuples };
    let labels = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().enumerate().map(|(i, &a)| family[i].label(a)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    LexProduct {
        chain: Chain { labels },
        tuples,
    }
}

/// Lexicographic comparison of `f, g : S -> A` where `S = {0 < ... < s_len-1}`.
pub fn lex_compare(f: &[usize], g: &[usize], s_len: usize, a_len: usize) -> Result<Ordering> {
    let order: Vec<usize> = (0..s_len).collect();
    lex_compare_by(&order, f, g, a_len)
}

/// Lexicographic comparison of `f, g` decided at the `order`-least point of
/// disagreement. `order` lists the domain points from least to greatest.
pub fn lex_compare_by(order: &[usize], f: &[usize], g: &[usize], a_len: usize) -> Result<Ordering> {
    for h in [f, g] {
        if h.len() != order.len() {
            return Err(Error::NotTotal(format!(
                "function has {} values on a domain of size {}",
                h.len(),
                order.len()
            )));
        }
        if let Some(&bad) = h.iter().find(|&&x| x >= a_len) {
            return Err(Error::OutOfRange {
                what: "function value".into(),
                index: bad,
                size: a_len,
            });
        }
    }
    Ok(lex_cmp_unchecked(order, f, g))
}

pub(crate) fn lex_cmp_unchecked(order: &[usize], f: &[usize], g: &[usize]) -> Ordering {
    for &v in order {
        match f[v].cmp(&g[v]) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// All strictly increasing maps `{0..a} -> {0..c}` in lexicographic order.
pub fn enumerate_chain_embeddings(a_len: usize, c_len: usize) -> Vec<ChainEmbedding> {
    if a_len > c_len {
        return Vec::new();
    }
    (0..c_len)
        .combinations(a_len)
        .map(|map| ChainEmbedding {
            source_len: a_len,
            target_len: c_len,
            map,
        })
        .collect()
}
