//! Finite comonads (monoid action, list, duplicate-free list), law checking,
//! coalgebra classification and the cofree lift `f# = E(f) ∘ α`.
//!
//! Elements of `E(A)`, `EE(A)`, ... are [`Value`] trees whose leaves are
//! indices into the carrier of `A`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{checked_pow, ensure_cap, Error, Result};
use crate::monoid::{FiniteMonoid, MonoidLike};
use crate::mset::MSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Atom(usize),
    Seq(Vec<Value>),
}

impl Value {
    pub fn seq(items: impl IntoIterator<Item = Value>) -> Self {
        Value::Seq(items.into_iter().collect())
    }

    pub fn atoms(items: &[usize]) -> Self {
        Value::Seq(items.iter().map(|&a| Value::Atom(a)).collect())
    }

    pub fn as_seq(&self) -> Result<&[Value]> {
        match self {
            Value::Seq(s) => Ok(s),
            Value::Atom(a) => Err(Error::BadShape(format!("expected a sequence, found atom {a}"))),
        }
    }

    pub fn as_atom(&self) -> Result<usize> {
        match self {
            Value::Atom(a) => Ok(*a),
            Value::Seq(_) => Err(Error::BadShape(format!("expected an atom, found {self}"))),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Atom(a) => write!(f, "{a}"),
            Value::Seq(s) => write!(f, "({})", s.iter().join(",")),
        }
    }
}

/// A map on values, used for `E(f)`.
pub type ValueMap<'a> = dyn Fn(&Value) -> Result<Value> + 'a;

pub trait Comonad: Send + Sync {
    fn name(&self) -> String;
    /// Every element of `E(X)`, in canonical order, for `X` given by its elements.
    fn objects(&self, x: &[Value], cap: usize) -> Result<Vec<Value>>;
    fn fmap(&self, f: &ValueMap<'_>, e: &Value) -> Result<Value>;
    fn delta(&self, e: &Value) -> Result<Value>;
    fn epsilon(&self, e: &Value) -> Result<Value>;
    /// Whether `E(f)` is only defined for injective `f`.
    fn needs_injective_maps(&self) -> bool {
        false
    }
}

/// `E(A) = A^M` with `δ(h)(m1)(m2) = h(m1·m2)` and `ε(h) = h(1)`.
/// Functions are sequences indexed by monoid element.
pub struct MonoidAction {
    pub monoid: Arc<FiniteMonoid>,
}

impl MonoidAction {
    fn check(&self, e: &Value) -> Result<Vec<Value>> {
        let s = e.as_seq()?;
        if s.len() != self.monoid.size() {
            return Err(Error::BadShape(format!(
                "{e} has {} entries, the monoid has {}",
                s.len(),
                self.monoid.size()
            )));
        }
        Ok(s.to_vec())
    }
}

impl Comonad for MonoidAction {
    fn name(&self) -> String {
        "monoid_action".into()
    }

    fn objects(&self, x: &[Value], cap: usize) -> Result<Vec<Value>> {
        ensure_cap("E(A)", checked_pow(x.len(), self.monoid.size()), cap as u128)?;
        if self.monoid.size() == 0 {
            return Ok(vec![Value::Seq(vec![])]);
        }
        Ok((0..self.monoid.size())
            .map(|_| x.iter().cloned())
            .multi_cartesian_product()
            .map(Value::Seq)
            .collect())
    }

    fn fmap(&self, f: &ValueMap<'_>, e: &Value) -> Result<Value> {
        Ok(Value::Seq(self.check(e)?.iter().map(f).collect::<Result<_>>()?))
    }

    fn delta(&self, e: &Value) -> Result<Value> {
        let h = self.check(e)?;
        let n = self.monoid.size();
        Ok(Value::seq(
            (0..n).map(|m1| Value::seq((0..n).map(|m2| h[self.monoid.mul(m1, m2)].clone()))),
        ))
    }

    fn epsilon(&self, e: &Value) -> Result<Value> {
        Ok(self.check(e)?[self.monoid.identity()].clone())
    }
}

/// Nonempty sequences with `δ` = list of suffixes and `ε` = head.
/// `objects` lists sequences up to `max_len`.
pub struct ListComonad {
    pub max_len: usize,
}

fn nonempty_seq(e: &Value) -> Result<&[Value]> {
    let s = e.as_seq()?;
    if s.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(s)
}

pub fn delta_list(e: &Value) -> Result<Value> {
    let s = nonempty_seq(e)?;
    Ok(Value::seq((0..s.len()).map(|i| Value::Seq(s[i..].to_vec()))))
}

pub fn epsilon_list(e: &Value) -> Result<Value> {
    Ok(nonempty_seq(e)?[0].clone())
}

impl Comonad for ListComonad {
    fn name(&self) -> String {
        "list".into()
    }

    fn objects(&self, x: &[Value], cap: usize) -> Result<Vec<Value>> {
        let total: u128 = (1..=self.max_len).map(|l| checked_pow(x.len(), l)).sum();
        ensure_cap("A+ up to max_len", total, cap as u128)?;
        Ok((1..=self.max_len)
            .flat_map(|l| (0..l).map(|_| x.iter().cloned()).multi_cartesian_product())
            .map(Value::Seq)
            .collect())
    }

    fn fmap(&self, f: &ValueMap<'_>, e: &Value) -> Result<Value> {
        Ok(Value::Seq(nonempty_seq(e)?.iter().map(f).collect::<Result<_>>()?))
    }

    fn delta(&self, e: &Value) -> Result<Value> {
        delta_list(e)
    }

    fn epsilon(&self, e: &Value) -> Result<Value> {
        epsilon_list(e)
    }
}

/// `A†`: nonempty sequences of pairwise distinct elements, in lex order with
/// a proper prefix before its extensions.
pub struct DuplicateFreeList;

impl DuplicateFreeList {
    fn check(e: &Value) -> Result<&[Value]> {
        let s = nonempty_seq(e)?;
        if !s.iter().all_unique() {
            return Err(Error::BadShape(format!("{e} repeats an element")));
        }
        Ok(s)
    }
}

/// Every nonempty duplicate-free sequence over `0..n`, prefix-first lex order.
pub fn dagger_sequences(n: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    let total: u128 = (1..=n).map(|l| (n - l + 1..=n).map(|x| x as u128).product::<u128>()).sum();
    ensure_cap("A†", total, cap as u128)?;
    let mut out = Vec::with_capacity(total as usize);
    let mut stack: Vec<usize> = Vec::new();
    fn walk(n: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for x in 0..n {
            if stack.contains(&x) {
                continue;
            }
            stack.push(x);
            out.push(stack.clone());
            walk(n, stack, out);
            stack.pop();
        }
    }
    walk(n, &mut stack, &mut out);
    Ok(out)
}

impl Comonad for DuplicateFreeList {
    fn name(&self) -> String {
        "duplicate_free_list".into()
    }

    fn objects(&self, x: &[Value], cap: usize) -> Result<Vec<Value>> {
        Ok(dagger_sequences(x.len(), cap)?
            .into_iter()
            .map(|s| Value::seq(s.into_iter().map(|i| x[i].clone())))
            .collect())
    }

    fn fmap(&self, f: &ValueMap<'_>, e: &Value) -> Result<Value> {
        let out = Value::Seq(Self::check(e)?.iter().map(f).collect::<Result<_>>()?);
        Self::check(&out)?;
        Ok(out)
    }

    fn delta(&self, e: &Value) -> Result<Value> {
        Self::check(e)?;
        delta_list(e)
    }

    fn epsilon(&self, e: &Value) -> Result<Value> {
        Self::check(e)?;
        epsilon_list(e)
    }

    fn needs_injective_maps(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corruption {
    /// `δ(e)` with its first two entries exchanged.
    SwapDelta,
    /// `ε(e)` reads the last entry instead of the designated one.
    LastEpsilon,
}

/// Mutation wrapper used to show that the law checker localizes failures.
pub struct Corrupted {
    pub inner: Box<dyn Comonad>,
    pub corruption: Corruption,
}

impl Comonad for Corrupted {
    fn name(&self) -> String {
        format!("corrupted({})", self.inner.name())
    }
    fn objects(&self, x: &[Value], cap: usize) -> Result<Vec<Value>> {
        self.inner.objects(x, cap)
    }
    fn fmap(&self, f: &ValueMap<'_>, e: &Value) -> Result<Value> {
        self.inner.fmap(f, e)
    }
    fn delta(&self, e: &Value) -> Result<Value> {
        let d = self.inner.delta(e)?;
        match (self.corruption, d) {
            (Corruption::SwapDelta, Value::Seq(mut s)) if s.len() >= 2 => {
                s.swap(0, 1);
                Ok(Value::Seq(s))
            }
            (_, d) => Ok(d),
        }
    }
    fn epsilon(&self, e: &Value) -> Result<Value> {
        match self.corruption {
            Corruption::LastEpsilon => e
                .as_seq()?
                .last()
                .cloned()
                .ok_or(Error::EmptySequence),
            Corruption::SwapDelta => self.inner.epsilon(e),
        }
    }
    fn needs_injective_maps(&self) -> bool {
        self.inner.needs_injective_maps()
    }
}

pub const FUNCTOR_NAMES: [&str; 3] = ["monoid_action", "duplicate_free_list", "list"];

/// Looks up a comonad by name; `monoid` is needed by `monoid_action`,
/// `max_len` bounds the sequences `list` enumerates.
pub fn functor(name: &str, monoid: Option<Arc<FiniteMonoid>>, max_len: usize) -> Result<Box<dyn Comonad>> {
    match name {
        "monoid_action" => {
            let monoid = monoid.ok_or_else(|| Error::Invalid("monoid_action needs a monoid".into()))?;
            Ok(Box::new(MonoidAction { monoid }))
        }
        "duplicate_free_list" => Ok(Box::new(DuplicateFreeList)),
        "list" => Ok(Box::new(ListComonad { max_len })),
        other => Err(Error::UnknownName {
            kind: "functor".into(),
            name: other.into(),
        }),
    }
}

pub const E_CAP: usize = 1_000_000;

// ---------------------------------------------------------------------------
// law checking

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawResult {
    pub law: String,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub functor: String,
    pub carrier_size: usize,
    pub objects: usize,
    pub laws: Vec<LawResult>,
}

impl LawReport {
    pub fn all_pass(&self) -> bool {
        self.laws.iter().all(LawResult::passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.law == name)
    }
}

struct LawTally {
    name: &'static str,
    checked: usize,
    counterexample: Option<String>,
}

impl LawTally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            counterexample: None,
        }
    }

    /// Records one instance; errors count as failures.
    fn record(&mut self, witness: impl FnOnce() -> String, ok: Result<bool>) {
        self.checked += 1;
        if self.counterexample.is_some() {
            return;
        }
        match ok {
            Ok(true) => {}
            Ok(false) => self.counterexample = Some(witness()),
            Err(e) => self.counterexample = Some(format!("{}: {e}", witness())),
        }
    }

    fn finish(self) -> LawResult {
        LawResult {
            law: self.name.into(),
            checked: self.checked,
            counterexample: self.counterexample,
        }
    }
}

fn finite_map(table: &[usize]) -> impl Fn(&Value) -> Result<Value> + '_ {
    move |v| {
        let a = v.as_atom()?;
        table
            .get(a)
            .map(|&b| Value::Atom(b))
            .ok_or_else(|| Error::OutOfRange {
                what: "map argument".into(),
                index: a,
                size: table.len(),
            })
    }
}

/// Checks coassociativity, both counit laws, the functor laws and naturality
/// of `δ` and `ε` on the carrier `0..size`.
pub fn check_comonad_laws(e: &dyn Comonad, size: usize, cap: usize) -> Result<LawReport> {
    let carrier: Vec<Value> = (0..size).map(Value::Atom).collect();
    let objs = e.objects(&carrier, cap)?;
    let delta_a = |h: &Value| e.delta(h);

    let mut coassoc = LawTally::new("coassociativity");
    let mut counit_l = LawTally::new("counit_left");
    let mut counit_r = LawTally::new("counit_right");
    let mut fid = LawTally::new("functor_identity");
    let mut fcomp = LawTally::new("functor_composition");
    let mut dnat = LawTally::new("delta_natural");
    let mut enat = LawTally::new("epsilon_natural");

    let maps: Vec<Vec<usize>> = if e.needs_injective_maps() {
        (0..size).permutations(size).collect()
    } else {
        (0..size).map(|_| 0..size).multi_cartesian_product().collect()
    };
    // composition pairs grow quadratically; a fixed prefix keeps this cheap
    let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = maps.iter().cartesian_product(maps.iter()).take(400).collect();

    for h in &objs {
        let d = e.delta(h);
        coassoc.record(
            || format!("h = {h}"),
            d.as_ref().map_err(Clone::clone).and_then(|d| Ok(e.delta(d)? == e.fmap(&delta_a, d)?)),
        );
        counit_l.record(
            || format!("h = {h}"),
            d.as_ref().map_err(Clone::clone).and_then(|d| Ok(e.epsilon(d)? == *h)),
        );
        counit_r.record(
            || format!("h = {h}"),
            d.as_ref()
                .map_err(Clone::clone)
                .and_then(|d| Ok(e.fmap(&|x| e.epsilon(x), d)? == *h)),
        );
        fid.record(|| format!("h = {h}"), e.fmap(&|x| Ok(x.clone()), h).map(|x| x == *h));
        for f in &maps {
            let fm = finite_map(f);
            dnat.record(
                || format!("h = {h}, f = {f:?}"),
                (|| Ok(e.delta(&e.fmap(&fm, h)?)? == e.fmap(&|x| e.fmap(&fm, x), &e.delta(h)?)?))(),
            );
            enat.record(
                || format!("h = {h}, f = {f:?}"),
                (|| Ok(e.epsilon(&e.fmap(&fm, h)?)? == fm(&e.epsilon(h)?)?))(),
            );
        }
        for (f, g) in &pairs {
            let gf: Vec<usize> = f.iter().map(|&x| g[x]).collect();
            fcomp.record(
                || format!("h = {h}, f = {f:?}, g = {g:?}"),
                (|| Ok(e.fmap(&finite_map(&gf), h)? == e.fmap(&finite_map(g), &e.fmap(&finite_map(f), h)?)?))(),
            );
        }
    }
    Ok(LawReport {
        functor: e.name(),
        carrier_size: size,
        objects: objs.len(),
        laws: [coassoc, counit_l, counit_r, fid, fcomp, dnat, enat]
            .into_iter()
            .map(LawTally::finish)
            .collect(),
    })
}

// ---------------------------------------------------------------------------
// coalgebras

/// `structure[a] = α(a) ∈ E(carrier)`, carrier `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coalgebra {
    pub functor: String,
    pub carrier: Vec<String>,
    pub structure: Vec<Value>,
}

impl Coalgebra {
    pub fn new(functor: String, carrier: Vec<String>, structure: Vec<Value>) -> Result<Self> {
        if structure.len() != carrier.len() {
            return Err(Error::DimensionMismatch {
                what: "coalgebra structure".into(),
                expected: carrier.len(),
                found: structure.len(),
            });
        }
        Ok(Self {
            functor,
            carrier,
            structure,
        })
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// `E(α)` as a value map.
    fn alpha_map(&self) -> impl Fn(&Value) -> Result<Value> + '_ {
        move |v| {
            let a = v.as_atom()?;
            self.structure.get(a).cloned().ok_or_else(|| Error::OutOfRange {
                what: "coalgebra carrier".into(),
                index: a,
                size: self.structure.len(),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoalgebraKind {
    #[serde(rename = "EM")]
    Em,
    #[serde(rename = "weak_EM_only")]
    WeakEmOnly,
    Plain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: CoalgebraKind,
    /// First element where `δ ∘ α = E(α) ∘ α` fails.
    pub square_witness: Option<usize>,
    /// First element where `ε ∘ α = id` fails.
    pub counit_witness: Option<usize>,
}

pub fn classify(e: &dyn Comonad, c: &Coalgebra) -> Classification {
    let alpha = c.alpha_map();
    let square_witness = (0..c.len()).find(|&a| {
        let h = &c.structure[a];
        !matches!((e.delta(h), e.fmap(&alpha, h)), (Ok(l), Ok(r)) if l == r)
    });
    let counit_witness = (0..c.len()).find(|&a| e.epsilon(&c.structure[a]).ok() != Some(Value::Atom(a)));
    let kind = match (square_witness, counit_witness) {
        (None, None) => CoalgebraKind::Em,
        (None, Some(_)) => CoalgebraKind::WeakEmOnly,
        _ => CoalgebraKind::Plain,
    };
    Classification {
        kind,
        square_witness,
        counit_witness,
    }
}

/// `β ∘ f = E(f) ∘ α` for `f` between carriers.
pub fn is_coalgebra_hom(e: &dyn Comonad, src: &Coalgebra, tgt: &Coalgebra, f: &[usize]) -> bool {
    if f.len() != src.len() || f.iter().any(|&y| y >= tgt.len()) {
        return false;
    }
    let fm = finite_map(f);
    (0..src.len()).all(|a| e.fmap(&fm, &src.structure[a]).ok().as_ref() == Some(&tgt.structure[f[a]]))
}

/// The cofree coalgebra `(E(X), δ_X)` on `0..x`, carrier in canonical order.
pub fn cofree(e: &dyn Comonad, x: usize, cap: usize) -> Result<(Vec<Value>, Vec<Value>)> {
    let carrier: Vec<Value> = (0..x).map(Value::Atom).collect();
    let objs = e.objects(&carrier, cap)?;
    let deltas = objs.iter().map(|h| e.delta(h)).collect::<Result<_>>()?;
    Ok((objs, deltas))
}

/// `f# = E(f) ∘ α`, valued in `E(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpLift {
    pub map: Vec<Value>,
}

pub fn sharp_lift(e: &dyn Comonad, c: &Coalgebra, f: &[usize], x: usize) -> Result<SharpLift> {
    let class = classify(e, c);
    if class.kind != CoalgebraKind::Em {
        return Err(Error::NotEMCoalgebra(
            class.square_witness.or(class.counit_witness).unwrap_or_default(),
        ));
    }
    if f.len() != c.len() {
        return Err(Error::DimensionMismatch {
            what: "map A → X".into(),
            expected: c.len(),
            found: f.len(),
        });
    }
    if let Some(&bad) = f.iter().find(|&&y| y >= x) {
        return Err(Error::OutOfRange {
            what: "map value".into(),
            index: bad,
            size: x,
        });
    }
    let fm = finite_map(f);
    let map: Vec<Value> = c.structure.iter().map(|h| e.fmap(&fm, h)).collect::<Result<_>>()?;
    for (a, g) in map.iter().enumerate() {
        if e.epsilon(g)? != Value::Atom(f[a]) {
            return Err(Error::Invalid(format!("ε ∘ f# differs from f at {a}")));
        }
    }
    if !is_hom_into_cofree(e, c, &map)? {
        return Err(Error::Invalid("f# is not a coalgebra homomorphism".into()));
    }
    Ok(SharpLift { map })
}

/// `δ_X ∘ g = E(g) ∘ α` for `g : A → E(X)`.
pub fn is_hom_into_cofree(e: &dyn Comonad, c: &Coalgebra, g: &[Value]) -> Result<bool> {
    let gm = |v: &Value| -> Result<Value> {
        let a = v.as_atom()?;
        g.get(a).cloned().ok_or(Error::OutOfRange {
            what: "carrier".into(),
            index: a,
            size: g.len(),
        })
    };
    for a in 0..c.len() {
        let lhs = match e.delta(&g[a]) {
            Ok(v) => v,
            Err(_) => return Ok(false),
        };
        if lhs != e.fmap(&gm, &c.structure[a])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Brute force: every `g : A → E(X)` that is a coalgebra hom with `ε ∘ g = f`.
pub fn all_lifts(e: &dyn Comonad, c: &Coalgebra, f: &[usize], x: usize, cap: usize) -> Result<Vec<Vec<Value>>> {
    let (objs, _) = cofree(e, x, cap)?;
    ensure_cap("maps A → E(X)", checked_pow(objs.len(), c.len()), cap as u128)?;
    let mut out = Vec::new();
    for g in (0..c.len()).map(|_| objs.iter().cloned()).multi_cartesian_product() {
        let counit_ok = g
            .iter()
            .enumerate()
            .all(|(a, v)| e.epsilon(v).ok() == Some(Value::Atom(f[a])));
        if counit_ok && is_hom_into_cofree(e, c, &g)? {
            out.push(g);
        }
    }
    Ok(out)
}

/// `α(a)(m) = α'(m, a)`.
pub fn mset_to_coalgebra(m: &MSet) -> Coalgebra {
    let size = m.monoid().size();
    Coalgebra {
        functor: "monoid_action".into(),
        carrier: m.labels().to_vec(),
        structure: (0..m.len())
            .map(|a| Value::seq((0..size).map(|g| Value::Atom(m.act(g, a)))))
            .collect(),
    }
}

/// Inverse of [`mset_to_coalgebra`]; the coalgebra must be Eilenberg-Moore.
pub fn coalgebra_to_mset(monoid: Arc<FiniteMonoid>, c: &Coalgebra) -> Result<MSet> {
    let e = MonoidAction { monoid: monoid.clone() };
    let class = classify(&e, c);
    if class.kind != CoalgebraKind::Em {
        return Err(Error::NotEMCoalgebra(
            class.square_witness.or(class.counit_witness).unwrap_or_default(),
        ));
    }
    let rows: Vec<Vec<usize>> = c
        .structure
        .iter()
        .map(|h| h.as_seq()?.iter().map(Value::as_atom).collect())
        .collect::<Result<_>>()?;
    let action = (0..monoid.size()).map(|g| rows.iter().map(|r| r[g]).collect()).collect();
    MSet::validate(monoid, c.carrier.clone(), action)
}

/// Index of each value in a canonical enumeration.
pub fn index_of(values: &[Value]) -> HashMap<&Value, usize> {
    values.iter().enumerate().map(|(i, v)| (v, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Arc<FiniteMonoid> {
        Arc::new(FiniteMonoid::z2())
    }

    fn atoms(xs: &[usize]) -> Value {
        Value::atoms(xs)
    }

    #[test]
    fn delta_action_examples() {
        let e = MonoidAction {
            monoid: Arc::new(FiniteMonoid::trivial()),
        };
        assert_eq!(e.delta(&atoms(&[5])).unwrap(), Value::seq([atoms(&[5])]));
        let e = MonoidAction { monoid: z2() };
        let d = e.delta(&atoms(&[7, 9])).unwrap();
        assert_eq!(d.as_seq().unwrap()[1].as_seq().unwrap()[1], Value::Atom(7));
        assert_eq!(e.epsilon(&atoms(&[7, 9])).unwrap(), Value::Atom(7));
        assert_eq!(e.epsilon(&atoms(&[4, 4])).unwrap(), Value::Atom(4));
    }

    #[test]
    fn list_examples() {
        assert_eq!(delta_list(&atoms(&[0])).unwrap(), Value::seq([atoms(&[0])]));
        assert_eq!(
            delta_list(&atoms(&[0, 1, 2])).unwrap(),
            Value::seq([atoms(&[0, 1, 2]), atoms(&[1, 2]), atoms(&[2])])
        );
        assert_eq!(epsilon_list(&atoms(&[0, 1, 2])).unwrap(), Value::Atom(0));
        assert_eq!(delta_list(&Value::Seq(vec![])), Err(Error::EmptySequence));
        assert_eq!(epsilon_list(&Value::Seq(vec![])), Err(Error::EmptySequence));
    }

    #[test]
    fn dagger_order_is_prefix_first() {
        let s = dagger_sequences(2, 100).unwrap();
        assert_eq!(s, vec![vec![0], vec![0, 1], vec![1], vec![1, 0]]);
        assert_eq!(dagger_sequences(3, 100).unwrap().len(), 15);
    }

    #[test]
    fn laws_hold_for_builtin_functors() {
        for m in [FiniteMonoid::trivial(), FiniteMonoid::z2(), FiniteMonoid::left_zero_with_identity()] {
            let e = MonoidAction { monoid: Arc::new(m) };
            for size in 0..=2 {
                let r = check_comonad_laws(&e, size, E_CAP).unwrap();
                assert!(r.all_pass(), "{r:?}");
            }
        }
        for size in 0..=3 {
            assert!(check_comonad_laws(&ListComonad { max_len: 3 }, size, E_CAP).unwrap().all_pass());
            assert!(check_comonad_laws(&DuplicateFreeList, size, E_CAP).unwrap().all_pass());
        }
    }

    #[test]
    fn corrupted_delta_breaks_coassociativity_of_lists() {
        let e = Corrupted {
            inner: Box::new(ListComonad { max_len: 3 }),
            corruption: Corruption::SwapDelta,
        };
        let r = check_comonad_laws(&e, 2, E_CAP).unwrap();
        assert!(!r.law("coassociativity").unwrap().passed());
        assert!(r.law("functor_identity").unwrap().passed());
    }

    #[test]
    fn corrupted_epsilon_breaks_counit() {
        let e = Corrupted {
            inner: Box::new(MonoidAction { monoid: z2() }),
            corruption: Corruption::LastEpsilon,
        };
        let r = check_comonad_laws(&e, 2, E_CAP).unwrap();
        assert!(!r.law("counit_left").unwrap().passed());
        assert!(r.law("coassociativity").unwrap().passed());
    }

    #[test]
    fn cap_refuses_large_objects() {
        let e = MonoidAction {
            monoid: Arc::new(FiniteMonoid::cyclic(8)),
        };
        assert!(matches!(check_comonad_laws(&e, 10, E_CAP), Err(Error::SizeOverflow { .. })));
    }

    #[test]
    fn cofree_coalgebra_is_em() {
        let e = MonoidAction { monoid: z2() };
        let (objs, deltas) = cofree(&e, 2, E_CAP).unwrap();
        let idx = index_of(&objs);
        let structure = deltas
            .iter()
            .map(|d| Value::seq(d.as_seq().unwrap().iter().map(|v| Value::Atom(idx[v]))))
            .collect();
        let c = Coalgebra::new("monoid_action".into(), objs.iter().map(|v| v.to_string()).collect(), structure).unwrap();
        assert_eq!(classify(&e, &c).kind, CoalgebraKind::Em);
    }

    #[test]
    fn mset_coalgebras_are_em_and_round_trip() {
        let p = MSet::validate(z2(), vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 0]]).unwrap();
        let c = mset_to_coalgebra(&p);
        assert_eq!(classify(&MonoidAction { monoid: z2() }, &c).kind, CoalgebraKind::Em);
        assert_eq!(coalgebra_to_mset(z2(), &c).unwrap(), p);
    }

    #[test]
    fn plain_coalgebra_rejected_by_sharp_lift() {
        let e = MonoidAction { monoid: z2() };
        let c = Coalgebra::new("monoid_action".into(), vec!["a".into(), "b".into()], vec![atoms(&[1, 1]), atoms(&[1, 1])])
            .unwrap();
        assert_eq!(classify(&e, &c).kind, CoalgebraKind::WeakEmOnly);
        assert!(matches!(sharp_lift(&e, &c, &[0, 0], 1), Err(Error::NotEMCoalgebra(_))));
    }

    #[test]
    fn sharp_lift_is_unique() {
        let e = MonoidAction { monoid: z2() };
        let p = MSet::validate(z2(), vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 0]]).unwrap();
        let c = mset_to_coalgebra(&p);
        let id = sharp_lift(&e, &c, &[0, 1], 2).unwrap();
        assert_eq!(id.map, c.structure);
        for f in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            let s = sharp_lift(&e, &c, &f, 2).unwrap();
            assert_eq!(all_lifts(&e, &c, &f, 2, E_CAP).unwrap(), vec![s.map]);
        }
    }

    #[test]
    fn value_json_shape() {
        let v = Value::seq([atoms(&[0, 1]), Value::Atom(2)]);
        assert_eq!(serde_json::to_string(&v).unwrap(), "[[0,1],2]");
        assert_eq!(serde_json::from_str::<Value>("[[0,1],2]").unwrap(), v);
    }
}
