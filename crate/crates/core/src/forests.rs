//! Rooted forests as monounary algebras and their root-path encoding as
//! coalgebras for the duplicate-free list functor.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::chains::label_of;
use crate::comonad::{dagger_sequences, Coalgebra, Value};
use crate::embed::{self, Structure};
use crate::error::{Error, Result};
use crate::mset::resolve_order;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedForest {
    labels: Vec<String>,
    parent: Vec<usize>,
    /// Carrier from least to greatest, when ordered.
    order: Option<Vec<usize>>,
}

/// The offending cycle (in iteration order) if some vertex never reaches a root.
pub fn find_cycle(parent: &[usize]) -> Result<Option<Vec<usize>>> {
    let n = parent.len();
    if let Some(&bad) = parent.iter().find(|&&p| p >= n) {
        return Err(Error::OutOfRange {
            what: "parent".into(),
            index: bad,
            size: n,
        });
    }
    // 0 = unvisited, 1 = on the current walk, 2 = known to reach a root
    let mut state = vec![0u8; n];
    for start in 0..n {
        let mut walk = Vec::new();
        let mut x = start;
        while state[x] == 0 {
            state[x] = 1;
            walk.push(x);
            if parent[x] == x {
                break;
            }
            x = parent[x];
        }
        if state[x] == 1 && parent[x] != x {
            let from = walk.iter().position(|&y| y == x).expect("on walk");
            return Ok(Some(walk[from..].to_vec()));
        }
        for y in walk {
            state[y] = 2;
        }
    }
    Ok(None)
}

pub fn is_rooted_forest(parent: &[usize]) -> bool {
    matches!(find_cycle(parent), Ok(None))
}

impl RootedForest {
    pub fn new(labels: Vec<String>, parent: Vec<usize>, order: Option<Vec<usize>>) -> Result<Self> {
        if parent.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                what: "parent map".into(),
                expected: labels.len(),
                found: parent.len(),
            });
        }
        if let Some(cycle) = find_cycle(&parent)? {
            return Err(Error::NotAForest(cycle));
        }
        if let Some(o) = &order {
            embed::check_permutation(o, labels.len())?;
        }
        Ok(Self { labels, parent, order })
    }

    /// Labels `0..n`, ordered by index.
    pub fn indexed(parent: Vec<usize>) -> Result<Self> {
        let n = parent.len();
        Self::new((0..n).map(|i| i.to_string()).collect(), parent, Some((0..n).collect()))
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parent(&self) -> &[usize] {
        &self.parent
    }

    pub fn order(&self) -> Option<&[usize]> {
        self.order.as_deref()
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.parent[a] == a).collect()
    }

    /// `(a, f(a), f²(a), …, r)`.
    pub fn root_path(&self, a: usize) -> Vec<usize> {
        let mut path = vec![a];
        let mut x = a;
        while self.parent[x] != x {
            x = self.parent[x];
            path.push(x);
        }
        path
    }

    pub fn forget_order(&self) -> RootedForest {
        RootedForest {
            order: None,
            ..self.clone()
        }
    }

    pub fn to_structure(&self) -> Structure {
        Structure {
            size: self.len(),
            ops: vec![self.parent.clone()],
            order: self.order.clone(),
        }
    }
}

/// Prefix-first lexicographic comparison of sequences under `rank`.
pub fn dagger_cmp(rank: &[usize], x: &[usize], y: &[usize]) -> Ordering {
    x.iter().map(|&a| rank[a]).cmp(y.iter().map(|&a| rank[a]))
}

/// `α(a)` = the root path of `a`, as a coalgebra for `A†`.
pub fn encode_forest(f: &RootedForest) -> Result<Coalgebra> {
    if f.order.is_none() {
        return Err(Error::Invalid("encoding needs an ordered forest".into()));
    }
    Coalgebra::new(
        "duplicate_free_list".into(),
        f.labels.clone(),
        (0..f.len()).map(|a| Value::atoms(&f.root_path(a))).collect(),
    )
}

/// The structure map is strictly increasing into `(A†, lex)`.
pub fn encoding_is_order_embedding(f: &RootedForest) -> bool {
    let Some(order) = &f.order else { return false };
    let rank = crate::monoid::invert(order);
    order
        .windows(2)
        .all(|w| dagger_cmp(&rank, &f.root_path(w[0]), &f.root_path(w[1])) == Ordering::Less)
}

/// Inverse of [`encode_forest`]; `order` is carried over unchanged.
pub fn decode_coalgebra(c: &Coalgebra, order: Option<Vec<usize>>) -> Result<RootedForest> {
    let paths: Vec<Vec<usize>> = c
        .structure
        .iter()
        .enumerate()
        .map(|(a, v)| {
            v.as_seq()
                .and_then(|s| s.iter().map(Value::as_atom).collect::<Result<Vec<_>>>())
                .map_err(|_| Error::NotPathShaped(a))
        })
        .collect::<Result<_>>()?;
    let n = c.len();
    for (a, p) in paths.iter().enumerate() {
        let shaped = p.first() == Some(&a) && p.iter().all(|&x| x < n) && p.iter().all_unique();
        // suffix coherence: α(p[1]) = p[1..]
        if !shaped || (p.len() > 1 && paths[p[1]] != p[1..]) {
            return Err(Error::NotPathShaped(a));
        }
    }
    let parent = paths.iter().enumerate().map(|(a, p)| p.get(1).copied().unwrap_or(a)).collect();
    RootedForest::new(c.carrier.clone(), parent, order)
}

/// `(ω_n)†` with parent = tail, ordered prefix-first lex. `sequence_forest(n)`
/// embeds in `sequence_forest(n + 1)`.
pub fn sequence_forest(n: usize, cap: usize) -> Result<RootedForest> {
    let seqs = dagger_sequences(n, cap)?;
    let index: HashMap<&[usize], usize> = seqs.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let parent = seqs
        .iter()
        .enumerate()
        .map(|(i, s)| if s.len() == 1 { i } else { index[&s[1..]] })
        .collect();
    let labels = seqs.iter().map(|s| format!("({})", s.iter().join(","))).collect();
    RootedForest::new(labels, parent, Some((0..seqs.len()).collect()))
}

/// Every parent map on `0..n` that is a rooted forest (labeled, no isomorph rejection).
pub fn all_parent_maps(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n)
        .map(move |_| 0..n)
        .multi_cartesian_product()
        .chain((n == 0).then(Vec::new))
        .filter(|p| is_rooted_forest(p))
}

/// `{ "carrier": [...], "parent": { "a": "d", ... }, "order": [...]? }`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ForestFile {
    pub carrier: Vec<serde_json::Value>,
    pub parent: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<serde_json::Value>>,
}

impl ForestFile {
    pub fn into_forest(self) -> Result<RootedForest> {
        let labels: Vec<String> = self.carrier.iter().map(label_of).collect();
        let pos = |l: &str| {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::Invalid(format!("unknown vertex {l:?} in parent map")))
        };
        let mut parent = vec![usize::MAX; labels.len()];
        for (child, p) in &self.parent {
            parent[pos(child)?] = pos(&label_of(p))?;
        }
        if let Some(missing) = parent.iter().position(|&p| p == usize::MAX) {
            return Err(Error::Invalid(format!("vertex {:?} has no parent entry", labels[missing])));
        }
        let order = self.order.as_deref().map(|o| resolve_order(&labels, o)).transpose()?;
        RootedForest::new(labels, parent, order)
    }

    pub fn from_forest(f: &RootedForest) -> Self {
        let s = |i: usize| serde_json::Value::String(f.labels[i].clone());
        ForestFile {
            carrier: (0..f.len()).map(s).collect(),
            parent: (0..f.len()).map(|a| (f.labels[a].clone(), s(f.parent[a]))).collect(),
            order: f.order.as_ref().map(|o| o.iter().map(|&i| s(i)).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comonad::{classify, is_coalgebra_hom, CoalgebraKind, DuplicateFreeList};

    pub(crate) fn ten_point_forest() -> RootedForest {
        let labels: Vec<String> = "abcdefghij".chars().map(String::from).collect();
        let p = |c: char| (c as u8 - b'a') as usize;
        let parent = "dhbdgbgdgg".chars().map(p).collect();
        RootedForest::new(labels, parent, Some((0..10).collect())).unwrap()
    }

    #[test]
    fn identity_parent_is_all_roots() {
        let f = RootedForest::indexed(vec![0, 1, 2]).unwrap();
        assert_eq!(f.roots(), vec![0, 1, 2]);
    }

    #[test]
    fn two_cycle_is_not_a_forest() {
        assert_eq!(find_cycle(&[1, 0]).unwrap(), Some(vec![0, 1]));
        assert_eq!(RootedForest::indexed(vec![1, 0]), Err(Error::NotAForest(vec![0, 1])));
    }

    #[test]
    fn ten_point_forest_paths() {
        let f = ten_point_forest();
        assert_eq!(f.roots(), vec![3, 6]);
        let c = encode_forest(&f).unwrap();
        assert_eq!(c.structure[2], Value::atoms(&[2, 1, 7, 3]));
        assert_eq!(c.structure[3], Value::atoms(&[3]));
        assert!(encoding_is_order_embedding(&f));
        let class = classify(&DuplicateFreeList, &c);
        assert_ne!(class.kind, CoalgebraKind::Plain);
        let back = decode_coalgebra(&c, f.order().map(<[usize]>::to_vec)).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn decode_rejects_incoherent_paths() {
        let c = Coalgebra::new(
            "duplicate_free_list".into(),
            vec!["0".into(), "1".into()],
            vec![Value::atoms(&[0, 1]), Value::atoms(&[1, 0])],
        )
        .unwrap();
        assert_eq!(decode_coalgebra(&c, None), Err(Error::NotPathShaped(0)));
        let c = Coalgebra::new("duplicate_free_list".into(), vec!["0".into()], vec![Value::atoms(&[])]).unwrap();
        assert_eq!(decode_coalgebra(&c, None), Err(Error::NotPathShaped(0)));
    }

    #[test]
    fn discrete_decode() {
        let c = Coalgebra::new(
            "duplicate_free_list".into(),
            vec!["x".into(), "y".into()],
            vec![Value::atoms(&[0]), Value::atoms(&[1])],
        )
        .unwrap();
        assert_eq!(decode_coalgebra(&c, None).unwrap().roots(), vec![0, 1]);
    }

    #[test]
    fn labeled_forest_counts() {
        // rooted forests on n labeled vertices: (n+1)^(n-1)
        for (n, count) in [(1, 1), (2, 3), (3, 16), (4, 125)] {
            assert_eq!(all_parent_maps(n).count(), count);
        }
    }

    #[test]
    fn embeddings_are_coalgebra_homs() {
        for n in 1..=3 {
            for m in n..=3 {
                for pa in all_parent_maps(n) {
                    for pb in all_parent_maps(m) {
                        let (a, b) = (RootedForest::indexed(pa.clone()).unwrap(), RootedForest::indexed(pb).unwrap());
                        let (ca, cb) = (encode_forest(&a).unwrap(), encode_forest(&b).unwrap());
                        let embs = embed::embeddings(&a.to_structure(), &b.to_structure()).unwrap();
                        let homs: Vec<Vec<usize>> = (0..m)
                            .combinations(n)
                            .filter(|f| is_coalgebra_hom(&DuplicateFreeList, &ca, &cb, f))
                            .collect();
                        assert_eq!(embs, homs);
                    }
                }
            }
        }
    }

    #[test]
    fn sequence_forest_shape() {
        let f = sequence_forest(3, 100).unwrap();
        assert_eq!(f.len(), 15);
        assert_eq!(f.roots().len(), 3);
        assert!(encoding_is_order_embedding(&f));
    }

    #[test]
    fn forest_file_roundtrip() {
        let f = ten_point_forest();
        let json = serde_json::to_string(&ForestFile::from_forest(&f)).unwrap();
        let back: ForestFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_forest().unwrap(), f);
    }
}
