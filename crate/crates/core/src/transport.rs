//! The lexicographic lift `Ê(X) = (X^M, ≤lex)` with comultiplication `δ̂`,
//! ordered M-sets as weak coalgebras for it, the hom-set maps
//! `Φ(u) = Ê(u) ∘ β`, and witness transport from chains to ordered M-sets.
//!
//! Functions `M → X` are encoded as base-`|X|` numbers whose most significant
//! digit is the value at the least element of the monoid's well-order, so
//! numeric order on codes is exactly the lex order.
//!
//! Convention: `δ̂(h)(v)(w) = h(v·w)`, matching the M-set axiom
//! `α(m1, α(m2, a)) = α(m2·m1, a)`.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::chains::{enumerate_chain_embeddings, is_strictly_increasing, Chain};
use crate::embed::Structure;
use crate::error::{checked_pow, ensure_cap, Error, Result};
use crate::monoid::{FiniteMonoid, MonoidLike};
use crate::mset::{
    enumerate_order_embeddings, generated_sub_ordered, MSet, MSetMorphism, MorphismKind, OrderedMSet,
};
use crate::ramsey::{self, ArrowInstance, ArrowOptions, ArrowStatus, ChainsContext};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexLift {
    monoid: Arc<FiniteMonoid>,
    base: usize,
    size: usize,
    /// Place value of each monoid element's digit.
    weight: Vec<usize>,
}

impl LexLift {
    /// `Ê` of the chain `0 < ... < base-1`; refuses more than `cap` functions.
    pub fn new(monoid: Arc<FiniteMonoid>, base: usize, cap: usize) -> Result<Self> {
        let m = monoid.size();
        let size = checked_pow(base, m);
        ensure_cap("lexicographic lift", size, cap as u128)?;
        let size = size as usize;
        let mut weight = vec![0; m];
        let mut place = 1usize;
        for &e in monoid.well_order().iter().rev() {
            weight[e] = place;
            place = place.saturating_mul(base);
        }
        Ok(Self {
            monoid,
            base,
            size,
            weight,
        })
    }

    pub fn hat_e(base: &Chain, monoid: Arc<FiniteMonoid>, cap: usize) -> Result<Self> {
        Self::new(monoid, base.len(), cap)
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// `h` is indexed by monoid element.
    pub fn encode(&self, h: &[usize]) -> usize {
        h.iter().zip(&self.weight).map(|(&x, &w)| x * w).sum()
    }

    pub fn decode(&self, code: usize) -> Vec<usize> {
        self.weight.iter().map(|&w| (code / w) % self.base).collect()
    }

    /// `γ(m, h)(m') = h(m·m')`.
    pub fn act(&self, m: usize, code: usize) -> usize {
        let h = self.decode(code);
        let moved: Vec<usize> = (0..self.monoid.size()).map(|m2| h[self.monoid.mul(m, m2)]).collect();
        self.encode(&moved)
    }

    pub fn label(&self, code: usize) -> String {
        format!("({})", self.decode(code).iter().join(","))
    }

    pub fn to_mset(&self) -> MSet {
        let action: Vec<Vec<usize>> = (0..self.monoid.size())
            .map(|m| (0..self.size).map(|c| self.act(m, c)).collect())
            .collect();
        let labels = (0..self.size).map(|c| self.label(c)).collect();
        MSet::validate(self.monoid.clone(), labels, action).expect("the cofree action satisfies the M-set axioms")
    }

    pub fn to_ordered_mset(&self) -> OrderedMSet {
        OrderedMSet::index_ordered(self.to_mset())
    }

    /// `Ê(u)(f) = u ∘ f` for a map `u` from this base into `target`'s base.
    pub fn map_along(&self, u: &[usize], target: &LexLift) -> Result<Vec<usize>> {
        if u.len() != self.base {
            return Err(Error::DimensionMismatch {
                what: "base map".into(),
                expected: self.base,
                found: u.len(),
            });
        }
        if let Some(&bad) = u.iter().find(|&&y| y >= target.base) {
            return Err(Error::OutOfRange {
                what: "base map value".into(),
                index: bad,
                size: target.base,
            });
        }
        Ok((0..self.size)
            .map(|c| target.encode(&self.decode(c).iter().map(|&x| u[x]).collect::<Vec<_>>()))
            .collect())
    }

    /// The lift of this lift's carrier, i.e. the codomain of `δ̂`.
    pub fn lift_again(&self, cap: usize) -> Result<LexLift> {
        LexLift::new(self.monoid.clone(), self.size, cap)
    }
}

/// `hat_E_map(h)(f) = h ∘ f`.
pub fn hat_e_map(source: &LexLift, target: &LexLift, u: &[usize]) -> Result<Vec<usize>> {
    source.map_along(u, target)
}

/// A comultiplication for `Ê`: `apply(lift, h)[v]` is `δ̂(h)(v)` as a code of `lift`.
pub trait LexComultiplication: Send + Sync {
    fn name(&self) -> &'static str;
    fn apply(&self, lift: &LexLift, h: usize) -> Vec<usize>;
}

/// `δ̂(h)(v) = γ(v, h)`.
pub struct StandardDelta;

impl LexComultiplication for StandardDelta {
    fn name(&self) -> &'static str {
        "standard"
    }
    fn apply(&self, lift: &LexLift, h: usize) -> Vec<usize> {
        (0..lift.monoid.size()).map(|v| lift.act(v, h)).collect()
    }
}

/// Mutant for tests: the value at the identity is moved one step up the lex order.
pub struct ShiftedDelta;

impl LexComultiplication for ShiftedDelta {
    fn name(&self) -> &'static str {
        "shifted"
    }
    fn apply(&self, lift: &LexLift, h: usize) -> Vec<usize> {
        let mut out = StandardDelta.apply(lift, h);
        let one = lift.monoid.identity();
        out[one] = (out[one] + 1) % lift.size.max(1);
        out
    }
}

pub fn comultiplication(name: &str) -> Result<Box<dyn LexComultiplication>> {
    match name {
        "standard" => Ok(Box::new(StandardDelta)),
        "shifted" => Ok(Box::new(ShiftedDelta)),
        other => Err(Error::UnknownName {
            kind: "comultiplication".into(),
            name: other.into(),
        }),
    }
}

/// `δ̂` as a map from `lift` into `lift.lift_again()`.
pub fn hat_delta(lift: &LexLift, delta: &dyn LexComultiplication, cap: usize) -> Result<(LexLift, MSetMorphism)> {
    let outer = lift.lift_again(cap)?;
    let map: Vec<usize> = (0..lift.size).map(|h| outer.encode(&delta.apply(lift, h))).collect();
    let kind = if is_strictly_increasing(&map) {
        MorphismKind::OrderEmbedding
    } else {
        MorphismKind::Morphism
    };
    Ok((outer, MSetMorphism { map, kind }))
}

/// A structure map `β : B → Ê(B)` on the chain `0 < ... < n-1`;
/// `structure[b][m] = β(b)(m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexCoalgebra {
    pub size: usize,
    pub structure: Vec<Vec<usize>>,
}

impl LexCoalgebra {
    pub fn new(monoid: &FiniteMonoid, size: usize, structure: Vec<Vec<usize>>) -> Result<Self> {
        if structure.len() != size {
            return Err(Error::DimensionMismatch {
                what: "coalgebra structure".into(),
                expected: size,
                found: structure.len(),
            });
        }
        for row in &structure {
            if row.len() != monoid.size() {
                return Err(Error::BadShape(format!("{row:?} is not a function on the monoid")));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= size) {
                return Err(Error::OutOfRange {
                    what: "structure value".into(),
                    index: bad,
                    size,
                });
            }
        }
        Ok(Self { size, structure })
    }

    pub fn lift(&self, monoid: &Arc<FiniteMonoid>) -> LexLift {
        LexLift::new(monoid.clone(), self.size, usize::MAX).expect("no cap")
    }

    pub fn codes(&self, lift: &LexLift) -> Vec<usize> {
        self.structure.iter().map(|h| lift.encode(h)).collect()
    }

    /// `β` is strictly increasing into `(B^M, ≤lex)`.
    pub fn is_order_embedding(&self, monoid: &Arc<FiniteMonoid>) -> bool {
        is_strictly_increasing(&self.codes(&self.lift(monoid)))
    }

    /// First `(b, v)` where `δ̂(β(b))(v) ≠ β(β(b)(v))`.
    pub fn weak_em_counterexample(
        &self,
        monoid: &Arc<FiniteMonoid>,
        delta: &dyn LexComultiplication,
    ) -> Option<(usize, usize)> {
        let lift = self.lift(monoid);
        for b in 0..self.size {
            let left = delta.apply(&lift, lift.encode(&self.structure[b]));
            for (v, &l) in left.iter().enumerate() {
                if l != lift.encode(&self.structure[self.structure[b][v]]) {
                    return Some((b, v));
                }
            }
        }
        None
    }

    /// Counit law `β(b)(1) = b`.
    pub fn is_em(&self, monoid: &FiniteMonoid) -> bool {
        (0..self.size).all(|b| self.structure[b][monoid.identity()] == b)
    }

    pub fn to_ordered_mset(&self, monoid: &Arc<FiniteMonoid>) -> Result<OrderedMSet> {
        if let Some(b) = (0..self.size).find(|&b| self.structure[b][monoid.identity()] != b) {
            return Err(Error::NotEMCoalgebra(b));
        }
        let action = (0..monoid.size())
            .map(|m| (0..self.size).map(|b| self.structure[b][m]).collect())
            .collect();
        let labels = (0..self.size).map(|b| b.to_string()).collect();
        Ok(OrderedMSet::index_ordered(MSet::validate(monoid.clone(), labels, action)?))
    }

    /// `f : A → B` (as a map of chains) with `β ∘ f = Ê(f) ∘ α`.
    pub fn is_hom_from(&self, a: &LexCoalgebra, f: &[usize]) -> bool {
        f.len() == a.size
            && (0..a.size).all(|x| {
                self.structure[f[x]]
                    .iter()
                    .zip(&a.structure[x])
                    .all(|(&lhs, &y)| lhs == f[y])
            })
    }
}

/// `α(a)(m) = α'(m, a)` on the normalized carrier of `a`.
pub fn mset_as_weak_coalgebra(a: &OrderedMSet) -> LexCoalgebra {
    let n = a.normalized();
    let m = n.monoid().size();
    LexCoalgebra {
        size: n.len(),
        structure: (0..n.len()).map(|x| (0..m).map(|g| n.base().act(g, x)).collect()).collect(),
    }
}

/// Every weak-EM coalgebra structure on the `n`-chain that is an order-embedding.
pub fn all_weak_em_coalgebras(
    monoid: &Arc<FiniteMonoid>,
    n: usize,
    delta: &dyn LexComultiplication,
    cap: usize,
) -> Result<Vec<LexCoalgebra>> {
    let lift = LexLift::new(monoid.clone(), n, cap)?;
    ensure_cap("coalgebra structures", checked_pow(lift.len(), n), cap as u128)?;
    Ok((0..lift.len())
        .combinations(n)
        .map(|codes| LexCoalgebra {
            size: n,
            structure: codes.iter().map(|&c| lift.decode(c)).collect(),
        })
        .filter(|c| c.weak_em_counterexample(monoid, delta).is_none())
        .collect())
}

/// `Φ(u) = Ê(u) ∘ β` for a chain embedding `u` of `B`'s carrier into the `c`-chain.
pub fn phi(monoid: &Arc<FiniteMonoid>, b: &LexCoalgebra, u: &[usize], c: usize, cap: usize) -> Result<MSetMorphism> {
    let lift_b = b.lift(monoid);
    let lift_c = LexLift::new(monoid.clone(), c, cap)?;
    let image = lift_b.map_along(u, &lift_c)?;
    let map: Vec<usize> = b.codes(&lift_b).iter().map(|&h| image[h]).collect();
    let kind = if is_strictly_increasing(&map) {
        MorphismKind::OrderEmbedding
    } else {
        MorphismKind::Morphism
    };
    Ok(MSetMorphism { map, kind })
}

/// First `(b, v)` where `g : B → Ê(C)` breaks `δ̂_C ∘ g = Ê(g) ∘ β`.
pub fn hom_square_counterexample(
    lift_c: &LexLift,
    b: &LexCoalgebra,
    g: &[usize],
    delta: &dyn LexComultiplication,
) -> Option<(usize, usize)> {
    for x in 0..b.size {
        let left = delta.apply(lift_c, g[x]);
        for (v, &l) in left.iter().enumerate() {
            if l != g[b.structure[x][v]] {
                return Some((x, v));
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaCheck {
    pub holds: bool,
    /// The `v` with `Φ(u) · f = Φ(u · v)`; always `f`.
    pub v: Vec<usize>,
}

/// Evaluates both sides of `Φ_B(u) · f = Φ_A(u · f)` pointwise.
pub fn check_pa(
    monoid: &Arc<FiniteMonoid>,
    u: &[usize],
    f: &[usize],
    a: &LexCoalgebra,
    b: &LexCoalgebra,
    c: usize,
    cap: usize,
) -> Result<PaCheck> {
    let left = phi(monoid, b, u, c, cap)?;
    let uf: Vec<usize> = f.iter().map(|&x| u[x]).collect();
    let right = phi(monoid, a, &uf, c, cap)?;
    let holds = f.iter().map(|&x| left.map[x]).eq(right.map.iter().copied());
    Ok(PaCheck { holds, v: f.to_vec() })
}

/// `Ê(f) ∘ β` into `Ê(ω_N)`, validated as an order-embedding and a coalgebra hom.
pub fn universal_embed(
    monoid: &Arc<FiniteMonoid>,
    b: &LexCoalgebra,
    f: &[usize],
    n: usize,
    delta: &dyn LexComultiplication,
    cap: usize,
) -> Result<MSetMorphism> {
    if !is_strictly_increasing(f) {
        return Err(Error::NotAnEmbedding(format!("{f:?} is not a chain embedding")));
    }
    let g = phi(monoid, b, f, n, cap)?;
    if g.kind != MorphismKind::OrderEmbedding {
        return Err(Error::NotAnEmbedding(format!("{:?} is not strictly increasing", g.map)));
    }
    let lift = LexLift::new(monoid.clone(), n, cap)?;
    if let Some((x, v)) = hom_square_counterexample(&lift, b, &g.map, delta) {
        return Err(Error::NotAnEmbedding(format!("coalgebra square fails at element {x}, monoid element {v}")));
    }
    Ok(g)
}

/// The finite sub-M-set of `Ê(ω_N)` generated by the images of `f` and `g`,
/// with both maps factored through it.
#[derive(Debug, Clone)]
pub struct Amalgam {
    pub sub: OrderedMSet,
    pub inclusion: Vec<usize>,
    pub f: Vec<usize>,
    pub g: Vec<usize>,
}

pub fn weak_local_finiteness(target: &OrderedMSet, f: &[usize], g: &[usize]) -> Result<Amalgam> {
    let seed: Vec<usize> = f.iter().chain(g).copied().collect();
    let (sub, inc) = generated_sub_ordered(target, &seed)?;
    let back: HashMap<usize, usize> = inc.map.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    Ok(Amalgam {
        f: f.iter().map(|x| back[x]).collect(),
        g: g.iter().map(|x| back[x]).collect(),
        sub,
        inclusion: inc.map,
    })
}

// ---------------------------------------------------------------------------
// witness transport

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransportedWitness {
    /// Size of the chain witness `W` for `F(V)`, `F(U)`.
    pub w: usize,
    pub truncation: usize,
    /// Carrier size of `Ê(W)`.
    pub target_size: usize,
    pub hom_u: usize,
    pub hom_v: usize,
    /// Direct arrow search on `Ê(W)`.
    pub engine: ArrowStatus,
    pub engine_exhaustive: bool,
    /// Every coloring pushed through `Φ` found a monochromatic copy.
    pub transported: bool,
    pub colorings_checked: usize,
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

pub const TRANSPORT_EXHAUSTIVE_CAP: usize = 20;

/// Finds a chain witness `W → (|V|)^{|U|}_k`, then certifies `Ê(W) → (V)^U_k`
/// both by direct search and, coloring by coloring, through `Φ`.
pub fn transport_witness(
    u: &OrderedMSet,
    v: &OrderedMSet,
    k: usize,
    chain_budget: usize,
    delta: &dyn LexComultiplication,
    opts: &ArrowOptions,
) -> Result<TransportedWitness> {
    crate::mset::same_monoid(u.monoid(), v.monoid())?;
    let monoid = u.monoid().clone();
    let (un, vn) = (u.normalized(), v.normalized());
    let (cu, cv) = (mset_as_weak_coalgebra(&un), mset_as_weak_coalgebra(&vn));

    let report = ramsey::find_witness(
        &Structure::chain(un.len()),
        &Structure::chain(vn.len()),
        k,
        1,
        &ChainsContext,
        chain_budget,
        opts,
    )?;
    let Some((_, w)) = report.found else {
        return Err(Error::NoChainWitnessInBudget(chain_budget));
    };
    let lift_w = LexLift::new(monoid.clone(), w, opts.enumeration_cap)?;
    let target = lift_w.to_ordered_mset();

    let hom_u: Vec<Vec<usize>> = enumerate_order_embeddings(&un, &target)?.into_iter().map(|e| e.map).collect();
    let hom_v: Vec<Vec<usize>> = enumerate_order_embeddings(&vn, &target)?.into_iter().map(|e| e.map).collect();
    let hom_uv: Vec<Vec<usize>> = enumerate_order_embeddings(&un, &vn)?.into_iter().map(|e| e.map).collect();

    let inst = ArrowInstance::build(&un.to_structure(), &vn.to_structure(), &target.to_structure(), opts.enumeration_cap)?;
    let engine_opts = ArrowOptions {
        exhaustive_cap: TRANSPORT_EXHAUSTIVE_CAP,
        ..*opts
    };
    let engine = ramsey::decide(&inst, k, 1, &engine_opts)?;

    let mut out = TransportedWitness {
        w,
        truncation: w,
        target_size: target.len(),
        hom_u: hom_u.len(),
        hom_v: hom_v.len(),
        engine: engine.status,
        engine_exhaustive: engine.exhaustive,
        transported: false,
        colorings_checked: 0,
        certified: false,
        failure: None,
    };
    if hom_u.len() > TRANSPORT_EXHAUSTIVE_CAP {
        out.failure = Some(format!(
            "|hom(U, Ê(W))| = {} exceeds {TRANSPORT_EXHAUSTIVE_CAP}; only the sampled engine verdict is available",
            hom_u.len()
        ));
        return Ok(out);
    }

    let index_u: HashMap<&[usize], usize> = hom_u.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let index_v: HashMap<&[usize], usize> = hom_v.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let chain_u = enumerate_chain_embeddings(un.len(), w);
    let chain_v = enumerate_chain_embeddings(vn.len(), w);
    let chain_uv = enumerate_chain_embeddings(un.len(), vn.len());

    // Φ_U on every chain embedding, as an index into hom(U, Ê(W))
    let mut phi_u = Vec::with_capacity(chain_u.len());
    for e in &chain_u {
        let g = phi(&monoid, &cu, &e.map, w, opts.enumeration_cap)?;
        if let Some((x, m)) = hom_square_counterexample(&lift_w, &cu, &g.map, delta) {
            out.failure = Some(format!("Φ(u) for u = {:?} breaks the coalgebra square at ({x}, {m})", e.map));
            return Ok(out);
        }
        match index_u.get(g.map.as_slice()) {
            Some(&i) => phi_u.push(i),
            None => {
                out.failure = Some(format!("Φ(u) for u = {:?} is not an embedding U → Ê(W)", e.map));
                return Ok(out);
            }
        }
    }
    let chain_index: HashMap<&[usize], usize> =
        chain_u.iter().enumerate().map(|(i, e)| (e.map.as_slice(), i)).collect();

    for coloring in (0..hom_u.len()).map(|_| 0..k).multi_cartesian_product() {
        out.colorings_checked += 1;
        let pulled: Vec<usize> = phi_u.iter().map(|&i| coloring[i]).collect();
        let mono = chain_v.iter().find(|wv| {
            chain_uv
                .iter()
                .map(|f| pulled[chain_index[f.map.iter().map(|&x| wv.map[x]).collect::<Vec<_>>().as_slice()]])
                .all_equal()
        });
        let Some(wv) = mono else {
            out.failure = Some(format!("coloring {coloring:?} has no monochromatic chain copy in W"));
            return Ok(out);
        };
        let g = phi(&monoid, &cv, &wv.map, w, opts.enumeration_cap)?;
        if let Some((x, m)) = hom_square_counterexample(&lift_w, &cv, &g.map, delta) {
            out.failure = Some(format!("Φ(w) for w = {:?} breaks the coalgebra square at ({x}, {m})", wv.map));
            return Ok(out);
        }
        if !index_v.contains_key(g.map.as_slice()) {
            out.failure = Some(format!("Φ(w) for w = {:?} is not an embedding V → Ê(W)", wv.map));
            return Ok(out);
        }
        let colors = hom_uv
            .iter()
            .map(|f| {
                let composite: Vec<usize> = f.iter().map(|&x| g.map[x]).collect();
                index_u.get(composite.as_slice()).map(|&i| coloring[i])
            })
            .collect::<Option<Vec<usize>>>();
        match colors {
            Some(c) if c.iter().all_equal() => {}
            _ => {
                out.failure = Some(format!("coloring {coloring:?}: the transported copy is not monochromatic"));
                return Ok(out);
            }
        }
    }
    out.transported = true;
    out.certified = engine.status == ArrowStatus::Holds;
    if !out.certified {
        out.failure = Some(format!("direct search on Ê(W) reports {:?}", engine.status));
    }
    Ok(out)
}
