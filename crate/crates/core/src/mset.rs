//! Finite M-sets, ordered M-sets, unary algebras, and their embeddings.
//!
//! Actions follow the convention `α(1, a) = a` and
//! `α(m1, α(m2, a)) = α(m2·m1, a)`: a word acts letter by letter from the
//! left, so `m2·m1` means "first `m2`, then `m1`" when read as a word.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chains::label_of;
use crate::embed::{self, Structure};
use crate::error::{Error, Result};
use crate::monoid::{FiniteMonoid, MonoidLike, WordTruncation};
use crate::transport::LexLift;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MSet {
    monoid: Arc<FiniteMonoid>,
    labels: Vec<String>,
    /// `action[m][a] = α(m, a)`.
    action: Vec<Vec<usize>>,
}

impl MSet {
    pub fn validate(monoid: Arc<FiniteMonoid>, labels: Vec<String>, action: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        let size = monoid.size();
        if action.len() != size {
            return Err(Error::DimensionMismatch {
                what: "action rows (one per monoid element)".into(),
                expected: size,
                found: action.len(),
            });
        }
        for row in &action {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    what: "action row".into(),
                    expected: n,
                    found: row.len(),
                });
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::OutOfRange {
                    what: "action value".into(),
                    index: bad,
                    size: n,
                });
            }
        }
        let one = monoid.identity();
        if let Some(a) = (0..n).find(|&a| action[one][a] != a) {
            return Err(Error::IdentityAxiomFails(a));
        }
        for m1 in 0..size {
            for m2 in 0..size {
                let prod = monoid.mul(m2, m1);
                for a in 0..n {
                    if action[m1][action[m2][a]] != action[prod][a] {
                        return Err(Error::CompositionFails(m1, m2, a));
                    }
                }
            }
        }
        Ok(Self { monoid, labels, action })
    }

    /// `n` points, every element acting as the identity.
    pub fn trivial_action(monoid: Arc<FiniteMonoid>, n: usize) -> Self {
        let action = vec![(0..n).collect(); monoid.size()];
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self { monoid, labels, action }
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
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

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn act(&self, m: usize, a: usize) -> usize {
        self.action[m][a]
    }

    pub fn to_structure(&self) -> Structure {
        Structure {
            size: self.len(),
            ops: self.action.clone(),
            order: None,
        }
    }

    pub fn with_order(self, order: Vec<usize>) -> Result<OrderedMSet> {
        OrderedMSet::new(self, order)
    }

    pub fn disjoint_union(&self, other: &MSet) -> Result<MSet> {
        same_monoid(&self.monoid, &other.monoid)?;
        let n = self.len();
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(p, q)| p.iter().copied().chain(q.iter().map(|&x| x + n)).collect())
            .collect();
        let labels = self
            .labels
            .iter()
            .map(|l| format!("0:{l}"))
            .chain(other.labels.iter().map(|l| format!("1:{l}")))
            .collect();
        Ok(MSet {
            monoid: self.monoid.clone(),
            labels,
            action,
        })
    }

    /// Orbit of `a`: everything reachable from `a` under the action.
    pub fn orbit(&self, a: usize) -> Vec<usize> {
        self.to_structure().closure(&[a])
    }
}

pub(crate) fn same_monoid(a: &Arc<FiniteMonoid>, b: &Arc<FiniteMonoid>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a.as_ref() == b.as_ref() {
        Ok(())
    } else {
        Err(Error::MonoidMismatch)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedMSet {
    base: MSet,
    /// Carrier elements from least to greatest.
    order: Vec<usize>,
}

impl OrderedMSet {
    pub fn new(base: MSet, order: Vec<usize>) -> Result<Self> {
        embed::check_permutation(&order, base.len())?;
        Ok(Self { base, order })
    }

    /// Ordered by carrier index.
    pub fn index_ordered(base: MSet) -> Self {
        let order = (0..base.len()).collect();
        Self { base, order }
    }

    pub fn base(&self) -> &MSet {
        &self.base
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn rank(&self) -> Vec<usize> {
        crate::monoid::invert(&self.order)
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        self.base.monoid()
    }

    pub fn to_structure(&self) -> Structure {
        Structure {
            size: self.len(),
            ops: self.base.action.clone(),
            order: Some(self.order.clone()),
        }
    }

    /// The same ordered M-set with carrier indices renumbered so that index order is the order.
    pub fn normalized(&self) -> OrderedMSet {
        let rank = self.rank();
        let action = self
            .base
            .action
            .iter()
            .map(|row| self.order.iter().map(|&a| rank[row[a]]).collect())
            .collect();
        let labels = self.order.iter().map(|&a| self.base.labels[a].clone()).collect();
        OrderedMSet {
            base: MSet {
                monoid: self.base.monoid.clone(),
                labels,
                action,
            },
            order: (0..self.len()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphismKind {
    Morphism,
    Embedding,
    OrderEmbedding,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MSetMorphism {
    pub map: Vec<usize>,
    pub kind: MorphismKind,
}

impl std::hash::Hash for MorphismKind {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (*self as u8).hash(state)
    }
}

pub fn is_equivariant(a: &MSet, b: &MSet, map: &[usize]) -> bool {
    map.len() == a.len()
        && a.monoid().size() == b.monoid().size()
        && (0..a.monoid().size()).all(|m| (0..a.len()).all(|x| map[a.act(m, x)] == b.act(m, map[x])))
}

pub fn enumerate_embeddings(a: &MSet, b: &MSet) -> Result<Vec<MSetMorphism>> {
    same_monoid(a.monoid(), b.monoid())?;
    Ok(embed::embeddings(&a.to_structure(), &b.to_structure())?
        .into_iter()
        .map(|map| MSetMorphism {
            map,
            kind: MorphismKind::Embedding,
        })
        .collect())
}

pub fn enumerate_order_embeddings(a: &OrderedMSet, b: &OrderedMSet) -> Result<Vec<MSetMorphism>> {
    same_monoid(a.monoid(), b.monoid())?;
    Ok(embed::embeddings(&a.to_structure(), &b.to_structure())?
        .into_iter()
        .map(|map| MSetMorphism {
            map,
            kind: MorphismKind::OrderEmbedding,
        })
        .collect())
}

/// The cofree M-set on `x` generators: carrier `x^M`, `γ(m, h)(m') = h(m·m')`.
pub fn cofree_mset(x: usize, monoid: Arc<FiniteMonoid>, cap: usize) -> Result<MSet> {
    Ok(LexLift::new(monoid, x, cap)?.to_mset())
}

/// The cofree M-set on the chain `0 < ... < x-1`, ordered lexicographically
/// along the monoid's well-order.
pub fn cofree_ordered_mset(x: usize, monoid: Arc<FiniteMonoid>, cap: usize) -> Result<OrderedMSet> {
    Ok(LexLift::new(monoid, x, cap)?.to_ordered_mset())
}

/// Smallest sub-M-set containing `seed`, with its inclusion into `b`.
pub fn generated_sub_mset(b: &MSet, seed: &[usize]) -> Result<(MSet, MSetMorphism)> {
    if let Some(&bad) = seed.iter().find(|&&x| x >= b.len()) {
        return Err(Error::OutOfRange {
            what: "seed element".into(),
            index: bad,
            size: b.len(),
        });
    }
    let s = b.to_structure();
    let carrier = s.closure(seed);
    let (sub, inclusion) = s.substructure(&carrier)?;
    let labels = carrier.iter().map(|&x| b.labels[x].clone()).collect();
    let mset = MSet {
        monoid: b.monoid.clone(),
        labels,
        action: sub.ops,
    };
    Ok((
        mset,
        MSetMorphism {
            map: inclusion,
            kind: MorphismKind::Embedding,
        },
    ))
}

/// Ordered variant: the order is restricted from `b`.
pub fn generated_sub_ordered(b: &OrderedMSet, seed: &[usize]) -> Result<(OrderedMSet, MSetMorphism)> {
    let (sub, inc) = generated_sub_mset(&b.base, seed)?;
    let rank = b.rank();
    let mut order: Vec<usize> = (0..sub.len()).collect();
    order.sort_by_key(|&i| rank[inc.map[i]]);
    Ok((
        OrderedMSet::new(sub, order)?,
        MSetMorphism {
            map: inc.map,
            kind: MorphismKind::OrderEmbedding,
        },
    ))
}

/// A unary algebra stored by one self-map per symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnaryAlgebra {
    alphabet: Vec<String>,
    labels: Vec<String>,
    generators: Vec<Vec<usize>>,
    order: Option<Vec<usize>>,
}

impl UnaryAlgebra {
    pub fn new(
        alphabet: Vec<String>,
        labels: Vec<String>,
        generators: Vec<Vec<usize>>,
        order: Option<Vec<usize>>,
    ) -> Result<Self> {
        if generators.len() != alphabet.len() {
            return Err(Error::DimensionMismatch {
                what: "generator actions".into(),
                expected: alphabet.len(),
                found: generators.len(),
            });
        }
        let s = Structure::new(labels.len(), generators.clone(), order.clone())?;
        drop(s);
        Ok(Self {
            alphabet,
            labels,
            generators,
            order,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
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

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    pub fn order(&self) -> Option<&[usize]> {
        self.order.as_deref()
    }

    pub fn symbol(&self, name: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    /// `α(f_{i1}…f_{ik}, a) = (f_{ik} ∘ … ∘ f_{i1})(a)`: leftmost symbol first.
    pub fn evaluate_word(&self, word: &[usize], a: usize) -> Result<usize> {
        let mut x = a;
        for &s in word {
            let g = self
                .generators
                .get(s)
                .ok_or_else(|| Error::UnknownSymbol(format!("#{s}")))?;
            x = g[x];
        }
        Ok(x)
    }

    pub fn evaluate_symbols(&self, word: &[&str], a: usize) -> Result<usize> {
        let idx: Vec<usize> = word.iter().map(|s| self.symbol(s)).collect::<Result<_>>()?;
        self.evaluate_word(&idx, a)
    }

    /// `table[w][a] = α(w, a)` for every word of the truncation.
    pub fn word_action(&self, words: &WordTruncation) -> Result<Vec<Vec<usize>>> {
        if words.alphabet() != self.alphabet.as_slice() {
            return Err(Error::SignatureMismatch("alphabets differ".into()));
        }
        (0..words.len())
            .map(|w| (0..self.len()).map(|a| self.evaluate_word(words.word(w), a)).collect())
            .collect()
    }

    pub fn to_structure(&self) -> Structure {
        Structure {
            size: self.len(),
            ops: self.generators.clone(),
            order: self.order.clone(),
        }
    }
}

/// The finite transformation monoid generated by the symbols acting on the
/// disjoint union of `algebras`, together with one shortest word per element
/// (length-lex first found). Element 0 is the empty word.
#[derive(Debug, Clone)]
pub struct TransformationMonoid {
    pub monoid: Arc<FiniteMonoid>,
    pub words: Vec<Vec<usize>>,
    transforms: Vec<Vec<usize>>,
    offsets: Vec<usize>,
}

impl TransformationMonoid {
    pub fn generate(algebras: &[&UnaryAlgebra], cap: usize) -> Result<Self> {
        let Some(first) = algebras.first() else {
            return Err(Error::Invalid("no algebras given".into()));
        };
        if algebras.iter().any(|a| a.alphabet != first.alphabet) {
            return Err(Error::SignatureMismatch("alphabets differ".into()));
        }
        let mut offsets = Vec::new();
        let mut total = 0;
        for a in algebras {
            offsets.push(total);
            total += a.len();
        }
        let gens: Vec<Vec<usize>> = (0..first.alphabet.len())
            .map(|s| {
                algebras
                    .iter()
                    .zip(&offsets)
                    .flat_map(|(a, &off)| a.generators[s].iter().map(move |&x| x + off))
                    .collect()
            })
            .collect();
        let mut transforms: Vec<Vec<usize>> = vec![(0..total).collect()];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(transforms[0].clone(), 0);
        let mut head = 0;
        while head < transforms.len() {
            for (s, g) in gens.iter().enumerate() {
                let t: Vec<usize> = transforms[head].iter().map(|&x| g[x]).collect();
                if !index.contains_key(&t) {
                    if transforms.len() >= cap {
                        return Err(Error::overflow("transformation monoid", transforms.len() as u128 + 1, cap as u128));
                    }
                    index.insert(t.clone(), transforms.len());
                    let mut w = words[head].clone();
                    w.push(s);
                    words.push(w);
                    transforms.push(t);
                }
            }
            head += 1;
        }
        let n = transforms.len();
        // m1·m2 acts as "m1 then m2"
        let table = (0..n)
            .map(|m1| {
                (0..n)
                    .map(|m2| {
                        let t: Vec<usize> = transforms[m1].iter().map(|&x| transforms[m2][x]).collect();
                        index[&t]
                    })
                    .collect()
            })
            .collect();
        let monoid = Arc::new(FiniteMonoid::validate(n, table, 0)?);
        Ok(Self {
            monoid,
            words,
            transforms,
            offsets,
        })
    }

    /// The `i`-th algebra as an M-set over the generated monoid.
    pub fn mset(&self, i: usize, algebra: &UnaryAlgebra) -> Result<MSet> {
        let off = self.offsets[i];
        let action = self
            .transforms
            .iter()
            .map(|t| (0..algebra.len()).map(|a| t[a + off] - off).collect())
            .collect();
        MSet::validate(self.monoid.clone(), algebra.labels.clone(), action)
    }
}

// ---------------------------------------------------------------------------
// file formats

/// `{ "monoid": <monoid or path>, "carrier": [...], "action": [[...]], "order": [...]? }`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MSetFile {
    pub monoid: MonoidRef,
    pub carrier: Vec<serde_json::Value>,
    pub action: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<serde_json::Value>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidRef {
    Inline(crate::monoid::MonoidFile),
    Path(String),
}

/// `{ "alphabet": [...], "generator_actions": { "f": [...] }, "carrier": [...]?, "order": [...]? }`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UnaryAlgebraFile {
    pub alphabet: Vec<String>,
    pub generator_actions: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier: Option<Vec<serde_json::Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<serde_json::Value>>,
}

/// Resolves an order given as labels (or indices) against a carrier.
pub fn resolve_order(labels: &[String], order: &[serde_json::Value]) -> Result<Vec<usize>> {
    let out: Vec<usize> = order
        .iter()
        .map(|v| {
            let l = label_of(v);
            labels
                .iter()
                .position(|x| *x == l)
                .or_else(|| v.as_u64().map(|i| i as usize).filter(|&i| i < labels.len()))
                .ok_or_else(|| Error::BadOrder(format!("unknown element {l}")))
        })
        .collect::<Result<_>>()?;
    embed::check_permutation(&out, labels.len())?;
    Ok(out)
}

impl MSetFile {
    pub fn into_mset(self, monoid: Arc<FiniteMonoid>) -> Result<(MSet, Option<Vec<usize>>)> {
        let labels: Vec<String> = self.carrier.iter().map(label_of).collect();
        let order = self.order.as_deref().map(|o| resolve_order(&labels, o)).transpose()?;
        Ok((MSet::validate(monoid, labels, self.action)?, order))
    }

    pub fn from_mset(m: &MSet, order: Option<&[usize]>) -> Self {
        MSetFile {
            monoid: MonoidRef::Inline(m.monoid().to_file()),
            carrier: m.labels().iter().map(|l| serde_json::Value::String(l.clone())).collect(),
            action: m.action().to_vec(),
            order: order.map(|o| o.iter().map(|&a| serde_json::Value::String(m.labels()[a].clone())).collect()),
        }
    }
}

impl UnaryAlgebraFile {
    pub fn into_algebra(self) -> Result<UnaryAlgebra> {
        let mut generators = Vec::new();
        for s in &self.alphabet {
            let g = self
                .generator_actions
                .get(s)
                .ok_or_else(|| Error::Invalid(format!("missing generator action for {s:?}")))?;
            generators.push(g.clone());
        }
        if let Some(extra) = self.generator_actions.keys().find(|k| !self.alphabet.contains(k)) {
            return Err(Error::UnknownSymbol(extra.clone()));
        }
        let n = generators.first().map(Vec::len).unwrap_or(0);
        let labels: Vec<String> = match &self.carrier {
            Some(c) => c.iter().map(label_of).collect(),
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let order = self.order.as_deref().map(|o| resolve_order(&labels, o)).transpose()?;
        UnaryAlgebra::new(self.alphabet, labels, generators, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Arc<FiniteMonoid> {
        Arc::new(FiniteMonoid::z2())
    }

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    pub(crate) fn swap_pair() -> MSet {
        MSet::validate(z2(), vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn trivial_monoid_accepts_any_set() {
        let m = Arc::new(FiniteMonoid::trivial());
        assert!(MSet::validate(m, labels(4), vec![vec![0, 1, 2, 3]]).is_ok());
    }

    #[test]
    fn swap_is_a_z2_set() {
        assert_eq!(swap_pair().act(1, 0), 1);
    }

    #[test]
    fn collapsing_action_fails_composition() {
        let err = MSet::validate(z2(), labels(2), vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, Error::CompositionFails(1, 1, 0));
    }

    #[test]
    fn identity_axiom() {
        let err = MSet::validate(z2(), labels(2), vec![vec![1, 0], vec![1, 0]]).unwrap_err();
        assert_eq!(err, Error::IdentityAxiomFails(0));
    }

    #[test]
    fn embedding_counts() {
        let triv = Arc::new(FiniteMonoid::trivial());
        let s2 = MSet::trivial_action(triv.clone(), 2);
        let s3 = MSet::trivial_action(triv.clone(), 3);
        assert_eq!(enumerate_embeddings(&s2, &s3).unwrap().len(), 6);

        let p = swap_pair();
        let pp = p.disjoint_union(&p).unwrap();
        assert_eq!(enumerate_embeddings(&p, &pp).unwrap().len(), 4);

        let c2 = OrderedMSet::index_ordered(s2);
        let c3 = OrderedMSet::index_ordered(s3);
        assert_eq!(enumerate_order_embeddings(&c2, &c3).unwrap().len(), 3);
    }

    #[test]
    fn monoid_mismatch() {
        let triv = Arc::new(FiniteMonoid::trivial());
        let s = MSet::trivial_action(triv, 1);
        assert_eq!(enumerate_embeddings(&s, &swap_pair()), Err(Error::MonoidMismatch));
    }

    #[test]
    fn every_enumerated_embedding_is_equivariant() {
        let m = Arc::new(FiniteMonoid::cyclic(3));
        let c = cofree_mset(2, m, 1000).unwrap();
        let orbit_len3 = generated_sub_mset(&c, &[1]).unwrap().0;
        for e in enumerate_embeddings(&orbit_len3, &c).unwrap() {
            assert!(is_equivariant(&orbit_len3, &c, &e.map));
        }
    }

    #[test]
    fn automorphisms_of_a_gset_form_a_group() {
        let p = swap_pair();
        let pp = p.disjoint_union(&p).unwrap();
        let auts: Vec<Vec<usize>> = enumerate_embeddings(&pp, &pp).unwrap().into_iter().map(|e| e.map).collect();
        assert!(auts.contains(&vec![0, 1, 2, 3]));
        for f in &auts {
            for g in &auts {
                let fg: Vec<usize> = g.iter().map(|&x| f[x]).collect();
                assert!(auts.contains(&fg));
            }
            let mut inv = vec![0; f.len()];
            for (i, &y) in f.iter().enumerate() {
                inv[y] = i;
            }
            assert!(auts.contains(&inv));
        }
    }

    #[test]
    fn gset_morphisms_are_injective_on_orbits() {
        let z3 = Arc::new(FiniteMonoid::cyclic(3));
        let a = cofree_mset(2, z3.clone(), 100).unwrap();
        let b = cofree_mset(2, z3, 100).unwrap();
        let embs = enumerate_embeddings(&a, &b).unwrap();
        assert!(!embs.is_empty());
        for e in &embs {
            for x in 0..a.len() {
                let orbit = a.orbit(x);
                let imgs: std::collections::HashSet<usize> = orbit.iter().map(|&y| e.map[y]).collect();
                assert_eq!(imgs.len(), orbit.len());
            }
        }
        // a bare morphism may still collapse a free orbit onto a fixed point
        let fixed = (0..b.len()).find(|&y| b.orbit(y).len() == 1).unwrap();
        let collapse = vec![fixed; a.len()];
        assert!(embed::is_homomorphism(&a.to_structure(), &b.to_structure(), &collapse));
    }

    #[test]
    fn evaluate_word_examples() {
        let succ = UnaryAlgebra::new(vec!["f".into()], labels(3), vec![vec![1, 2, 0]], None).unwrap();
        assert_eq!(succ.evaluate_word(&[], 2).unwrap(), 2);
        assert_eq!(succ.evaluate_symbols(&["f", "f"], 1).unwrap(), 0);

        // f = swap 0,1 ; g = 0,1 -> 2, 2 -> 2 (not commuting)
        let alg = UnaryAlgebra::new(
            vec!["f".into(), "g".into()],
            labels(3),
            vec![vec![1, 0, 2], vec![2, 2, 0]],
            None,
        )
        .unwrap();
        for a in 0..3 {
            let g_after_f = alg.generators()[1][alg.generators()[0][a]];
            assert_eq!(alg.evaluate_symbols(&["f", "g"], a).unwrap(), g_after_f);
        }
        assert_ne!(alg.evaluate_symbols(&["f", "g"], 2).unwrap(), alg.evaluate_symbols(&["g", "f"], 2).unwrap());
        assert_eq!(alg.evaluate_symbols(&["h"], 0), Err(Error::UnknownSymbol("h".into())));
    }

    #[test]
    fn transformation_monoid_makes_an_mset() {
        let alg = UnaryAlgebra::new(
            vec!["f".into(), "g".into()],
            labels(3),
            vec![vec![1, 0, 2], vec![2, 2, 0]],
            None,
        )
        .unwrap();
        let tm = TransformationMonoid::generate(&[&alg], 1000).unwrap();
        let m = tm.mset(0, &alg).unwrap();
        for (i, w) in tm.words.iter().enumerate() {
            for a in 0..3 {
                assert_eq!(m.act(i, a), alg.evaluate_word(w, a).unwrap());
            }
        }
        assert_eq!(tm.monoid.well_order()[0], 0);
    }

    #[test]
    fn word_action_matches_evaluation() {
        let alg = UnaryAlgebra::new(vec!["f".into()], labels(3), vec![vec![1, 2, 0]], None).unwrap();
        let t = WordTruncation::new(vec!["f".into()], 3, 100).unwrap();
        let table = alg.word_action(&t).unwrap();
        assert_eq!(table[3], vec![0, 1, 2]);
    }

    #[test]
    fn cofree_is_an_mset() {
        for m in [FiniteMonoid::trivial(), FiniteMonoid::z2(), FiniteMonoid::left_zero_with_identity()] {
            let m = Arc::new(m);
            for x in 0..=3 {
                let c = cofree_mset(x, m.clone(), 10_000).unwrap();
                assert_eq!(c.len(), x.pow(m.size() as u32));
                MSet::validate(m.clone(), c.labels().to_vec(), c.action().to_vec()).unwrap();
            }
        }
    }

    #[test]
    fn cofree_over_trivial_is_the_generators() {
        let c = cofree_mset(3, Arc::new(FiniteMonoid::trivial()), 100).unwrap();
        assert_eq!(c.action(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn generated_sub_mset_examples() {
        let p = swap_pair();
        let (sub, inc) = generated_sub_mset(&p, &[0]).unwrap();
        assert_eq!(sub.len(), 2);
        assert_eq!(inc.map, vec![0, 1]);
        let pp = p.disjoint_union(&p).unwrap();
        let (sub, inc) = generated_sub_mset(&pp, &[2, 3]).unwrap();
        assert_eq!(inc.map, vec![2, 3]);
        assert!(is_equivariant(&sub, &pp, &inc.map));
    }

    #[test]
    fn file_format_roundtrip() {
        let p = swap_pair();
        let f = MSetFile::from_mset(&p, Some(&[1, 0]));
        let json = serde_json::to_string(&f).unwrap();
        let back: MSetFile = serde_json::from_str(&json).unwrap();
        let MonoidRef::Inline(mf) = back.monoid.clone() else { panic!() };
        let (m, order) = back.into_mset(Arc::new(FiniteMonoid::from_file(mf).unwrap())).unwrap();
        assert_eq!(m, p);
        assert_eq!(order, Some(vec![1, 0]));
    }

    #[test]
    fn unary_file_parsing() {
        let f: UnaryAlgebraFile =
            serde_json::from_str(r#"{"alphabet":["f"],"generator_actions":{"f":[1,2,0]},"order":["2","0","1"]}"#)
                .unwrap();
        let a = f.into_algebra().unwrap();
        assert_eq!(a.order(), Some(&[2usize, 0, 1][..]));
    }
}
