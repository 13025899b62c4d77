//! The arrow relation `C → (B)^A_{k,t}`, witness search up a candidate stream,
//! and interval probes of small Ramsey degrees.
//!
//! A coloring is *bad* when every copy `w ∈ hom(B,C)` sees more than `t`
//! colors on `w · hom(A,B)`. The arrow holds iff no bad coloring exists, so
//! the engine searches for one and prunes a partial coloring as soon as some
//! copy can no longer be pushed above `t` colors.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embed::{self, Structure};
use crate::error::{Error, Result};
use crate::expansion;
use crate::forests;
use crate::monoid::FiniteMonoid;
use crate::transport::LexLift;

#[derive(Debug, Clone, Copy)]
pub struct ArrowOptions {
    /// Largest `|hom(A,C)|` searched exhaustively.
    pub exhaustive_cap: usize,
    /// Largest hom-set enumerated at all.
    pub enumeration_cap: usize,
    /// Random colorings tried when the instance is past `exhaustive_cap`.
    pub samples: usize,
    pub seed: u64,
    pub parallel: bool,
}

impl Default for ArrowOptions {
    fn default() -> Self {
        Self {
            exhaustive_cap: 64,
            enumeration_cap: 100_000,
            samples: 2_000,
            seed: 0,
            parallel: false,
        }
    }
}

/// Hom-sets of one arrow instance plus, per copy `w`, the indices of
/// `w · hom(A,B)` inside `hom(A,C)`.
#[derive(Debug, Clone)]
pub struct ArrowInstance {
    pub hom_ac: Vec<Vec<usize>>,
    pub hom_bc: Vec<Vec<usize>>,
    pub hom_ab: Vec<Vec<usize>>,
    pub copies: Vec<Vec<usize>>,
}

fn bounded_embeddings(a: &Structure, b: &Structure, cap: usize, what: &str) -> Result<Vec<Vec<usize>>> {
    let out = embed::embeddings_limited(a, b, cap.saturating_add(1))?;
    if out.len() > cap {
        return Err(Error::overflow(what, out.len() as u128, cap as u128));
    }
    Ok(out)
}

impl ArrowInstance {
    pub fn build(a: &Structure, b: &Structure, c: &Structure, cap: usize) -> Result<Self> {
        let hom_ac = bounded_embeddings(a, c, cap, "hom(A,C)")?;
        let hom_bc = bounded_embeddings(b, c, cap, "hom(B,C)")?;
        let hom_ab = bounded_embeddings(a, b, cap, "hom(A,B)")?;
        let index: HashMap<&[usize], usize> = hom_ac.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        let copies = hom_bc
            .iter()
            .map(|w| {
                hom_ab
                    .iter()
                    .map(|f| {
                        let wf: Vec<usize> = f.iter().map(|&x| w[x]).collect();
                        index[wf.as_slice()]
                    })
                    .sorted()
                    .dedup()
                    .collect()
            })
            .collect();
        Ok(Self {
            hom_ac,
            hom_bc,
            hom_ab,
            copies,
        })
    }

    /// Builds directly from copy lists, for instances that are not embeddings of structures.
    pub fn from_copies(hom_ac_len: usize, copies: Vec<Vec<usize>>) -> Self {
        Self {
            hom_ac: (0..hom_ac_len).map(|i| vec![i]).collect(),
            hom_bc: (0..copies.len()).map(|i| vec![i]).collect(),
            hom_ab: Vec::new(),
            copies,
        }
    }

    pub fn colors_on_copy(&self, coloring: &[usize], w: usize) -> usize {
        self.copies[w].iter().map(|&i| coloring[i]).sorted().dedup().count()
    }

    /// A copy seeing at most `t` colors, if any.
    pub fn good_copy(&self, coloring: &[usize], t: usize) -> Option<usize> {
        (0..self.copies.len()).find(|&w| self.colors_on_copy(coloring, w) <= t)
    }

    /// Naive check: every copy sees more than `t` colors.
    pub fn is_bad(&self, coloring: &[usize], k: usize, t: usize) -> bool {
        coloring.len() == self.hom_ac.len() && coloring.iter().all(|&c| c < k) && self.good_copy(coloring, t).is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrowStatus {
    Holds,
    Refuted,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowVerdict {
    pub status: ArrowStatus,
    /// Color of each element of `hom(A,C)`, in canonical enumeration order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bad_coloring: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub hom_ac: usize,
    pub hom_bc: usize,
    pub hom_ab: usize,
    /// For `holds`: how many subtrees of partial colorings each copy `w` closed.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub witness_stats: BTreeMap<usize, u64>,
    pub exhaustive: bool,
}

impl ArrowVerdict {
    pub fn holds(&self) -> bool {
        self.status == ArrowStatus::Holds
    }
}

/// Order in which slots are colored: repeatedly finish the copy with the
/// fewest uncolored slots, so copies close (and prune) as early as possible.
fn slot_order(inst: &ArrowInstance) -> Vec<usize> {
    let n = inst.hom_ac.len();
    let mut placed = vec![false; n];
    let mut remaining: Vec<usize> = inst.copies.iter().map(Vec::len).collect();
    let mut slot_copies = vec![Vec::new(); n];
    for (w, c) in inst.copies.iter().enumerate() {
        for &i in c {
            slot_copies[i].push(w);
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut place = |i: usize, order: &mut Vec<usize>, remaining: &mut Vec<usize>| {
        if !placed[i] {
            placed[i] = true;
            order.push(i);
            for &w in &slot_copies[i] {
                remaining[w] -= 1;
            }
        }
    };
    loop {
        let next = (0..inst.copies.len())
            .filter(|&w| remaining[w] > 0)
            .min_by_key(|&w| (remaining[w], w));
        let Some(w) = next else { break };
        for &i in &inst.copies[w] {
            place(i, &mut order, &mut remaining);
        }
    }
    for i in 0..n {
        place(i, &mut order, &mut remaining);
    }
    order
}

struct Solver<'a> {
    inst: &'a ArrowInstance,
    k: usize,
    t: usize,
    /// position → slot of `hom(A,C)`
    order: Vec<usize>,
    /// copies containing the slot at each position
    slot_copies: Vec<Vec<usize>>,
    counts: Vec<Vec<u32>>,
    distinct: Vec<usize>,
    free: Vec<usize>,
    coloring: Vec<usize>,
    closed_by: BTreeMap<usize, u64>,
}

impl<'a> Solver<'a> {
    fn new(inst: &'a ArrowInstance, k: usize, t: usize) -> Self {
        let n = inst.hom_ac.len();
        let order = slot_order(inst);
        let mut position = vec![0; n];
        for (p, &i) in order.iter().enumerate() {
            position[i] = p;
        }
        let mut slot_copies = vec![Vec::new(); n];
        for (w, c) in inst.copies.iter().enumerate() {
            for &i in c {
                slot_copies[position[i]].push(w);
            }
        }
        Self {
            inst,
            k,
            t,
            order,
            slot_copies,
            counts: vec![vec![0; k]; inst.copies.len()],
            distinct: vec![0; inst.copies.len()],
            free: inst.copies.iter().map(Vec::len).collect(),
            coloring: Vec::with_capacity(n),
            closed_by: BTreeMap::new(),
        }
    }

    /// A copy that cannot end above `t` colors whatever the remaining slots get.
    fn hopeless(&self, w: usize) -> bool {
        self.distinct[w] + self.free[w].min(self.k - self.distinct[w]) <= self.t
    }

    fn push(&mut self, c: usize) -> Option<usize> {
        let slot = self.coloring.len();
        self.coloring.push(c);
        let mut blocked = None;
        for &w in &self.slot_copies[slot] {
            self.free[w] -= 1;
            if self.counts[w][c] == 0 {
                self.distinct[w] += 1;
            }
            self.counts[w][c] += 1;
            if blocked.is_none() && self.hopeless(w) {
                blocked = Some(w);
            }
        }
        blocked
    }

    fn pop(&mut self) {
        let slot = self.coloring.len() - 1;
        let c = self.coloring.pop().expect("nonempty");
        for &w in &self.slot_copies[slot] {
            self.free[w] += 1;
            self.counts[w][c] -= 1;
            if self.counts[w][c] == 0 {
                self.distinct[w] -= 1;
            }
        }
    }

    /// Depth-first search for the least bad coloring extending the current prefix.
    fn search(&mut self, max_used: usize) -> bool {
        if self.coloring.len() == self.inst.hom_ac.len() {
            return true;
        }
        let limit = (max_used + 1).min(self.k);
        for c in 0..limit {
            let blocked = self.push(c);
            if let Some(w) = blocked {
                *self.closed_by.entry(w).or_default() += 1;
            } else if self.search(max_used.max(c + 1)) {
                return true;
            }
            self.pop();
        }
        false
    }

    /// The current (complete) coloring indexed by `hom(A,C)`.
    fn coloring_by_slot(&self) -> Vec<usize> {
        let mut out = vec![0; self.order.len()];
        for (p, &c) in self.coloring.iter().enumerate() {
            out[self.order[p]] = c;
        }
        out
    }

    /// Replays a prefix; `None` if it is already blocked.
    fn seed_prefix(&mut self, prefix: &[usize]) -> Option<usize> {
        // copies too small to ever exceed t block everything
        if let Some(w) = (0..self.inst.copies.len()).find(|&w| self.hopeless(w)) {
            *self.closed_by.entry(w).or_default() += 1;
            return None;
        }
        let mut max_used = 0;
        for &c in prefix {
            if let Some(w) = self.push(c) {
                *self.closed_by.entry(w).or_default() += 1;
                return None;
            }
            max_used = max_used.max(c + 1);
        }
        Some(max_used)
    }
}

/// Canonical color prefixes of length `depth` (first occurrences in increasing order).
fn canonical_prefixes(depth: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![(vec![], 0usize)];
    for _ in 0..depth {
        out = out
            .into_iter()
            .flat_map(|(p, m)| {
                (0..(m + 1).min(k)).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    (q, m.max(c + 1))
                })
            })
            .collect();
    }
    out.into_iter().map(|(p, _)| p).collect()
}

/// Decides the arrow on an instance. `k ≥ 1`.
pub fn decide(inst: &ArrowInstance, k: usize, t: usize, opts: &ArrowOptions) -> Result<ArrowVerdict> {
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    let mut verdict = ArrowVerdict {
        status: ArrowStatus::Holds,
        bad_coloring: None,
        reason: None,
        hom_ac: inst.hom_ac.len(),
        hom_bc: inst.hom_bc.len(),
        hom_ab: inst.hom_ab.len(),
        witness_stats: BTreeMap::new(),
        exhaustive: true,
    };
    if inst.copies.is_empty() {
        // no copy of B at all: any coloring is bad, including the empty one
        verdict.status = ArrowStatus::Refuted;
        verdict.bad_coloring = Some(vec![0; inst.hom_ac.len()]);
        verdict.reason = Some("hom(B,C) is empty".into());
        return Ok(verdict);
    }
    let n = inst.hom_ac.len();
    if n > opts.exhaustive_cap {
        verdict.exhaustive = false;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.samples {
            let coloring: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
            if inst.good_copy(&coloring, t).is_none() {
                verdict.status = ArrowStatus::Refuted;
                verdict.bad_coloring = Some(coloring);
                return Ok(verdict);
            }
        }
        verdict.status = ArrowStatus::Inconclusive;
        verdict.reason = Some(format!(
            "|hom(A,C)| = {n} exceeds the exhaustive cap {}; {} sampled colorings were all good",
            opts.exhaustive_cap, opts.samples
        ));
        return Ok(verdict);
    }

    // same split either way, so witness_stats do not depend on `parallel`
    let depth = n.min(4);
    let prefixes = canonical_prefixes(depth, k);
    let run = |prefix: &Vec<usize>| -> (Option<Vec<usize>>, BTreeMap<usize, u64>) {
        let mut s = Solver::new(inst, k, t);
        let found = match s.seed_prefix(prefix) {
            Some(m) => s.search(m),
            None => false,
        };
        (found.then(|| s.coloring_by_slot()), s.closed_by)
    };
    let results: Vec<_> = if opts.parallel {
        prefixes.par_iter().map(run).collect()
    } else {
        prefixes.iter().map(run).collect()
    };
    for (found, stats) in results {
        if let Some(coloring) = found {
            verdict.status = ArrowStatus::Refuted;
            verdict.bad_coloring = Some(coloring);
            verdict.witness_stats.clear();
            return Ok(verdict);
        }
        for (w, c) in stats {
            *verdict.witness_stats.entry(w).or_default() += c;
        }
    }
    Ok(verdict)
}

/// `C → (B)^A_{k,t}` for structures of one signature.
pub fn holds_arrow(
    a: &Structure,
    b: &Structure,
    c: &Structure,
    k: usize,
    t: usize,
    opts: &ArrowOptions,
) -> Result<ArrowVerdict> {
    let inst = ArrowInstance::build(a, b, c, opts.enumeration_cap)?;
    decide(&inst, k, t, opts)
}

/// Tries all `k^n` colorings. Oracle for small instances only.
pub fn naive_holds(inst: &ArrowInstance, k: usize, t: usize) -> Result<(bool, Option<Vec<usize>>)> {
    let n = inst.hom_ac.len();
    crate::error::ensure_cap("naive colorings", crate::error::checked_pow(k, n), 1 << 22)?;
    for coloring in (0..n).map(|_| 0..k).multi_cartesian_product() {
        if inst.good_copy(&coloring, t).is_none() {
            return Ok((false, Some(coloring)));
        }
    }
    if n == 0 && inst.copies.is_empty() {
        return Ok((false, Some(vec![])));
    }
    Ok((true, None))
}

// ---------------------------------------------------------------------------
// contexts

/// A category of finite structures with a stream of ever larger candidate
/// objects, each embedding into the next.
pub trait RamseyContext: Send + Sync {
    fn name(&self) -> &'static str;
    fn ordered(&self) -> bool;
    /// The `n`-th candidate, `n ≥ 1`.
    fn candidate(&self, n: usize) -> Result<Structure>;
    /// What theory says about the small Ramsey degree of `a`, if anything.
    fn degree_upper_bound(&self, a: &Structure) -> Option<(usize, String)>;
}

pub struct ChainsContext;

impl RamseyContext for ChainsContext {
    fn name(&self) -> &'static str {
        "chains"
    }
    fn ordered(&self) -> bool {
        true
    }
    fn candidate(&self, n: usize) -> Result<Structure> {
        Ok(Structure::chain(n))
    }
    fn degree_upper_bound(&self, _a: &Structure) -> Option<(usize, String)> {
        Some((1, "finite chains have the Ramsey property (finite Ramsey theorem)".into()))
    }
}

/// Unordered M-sets; candidates are the cofree M-sets on `n` generators.
pub struct MSetsContext {
    pub monoid: Arc<FiniteMonoid>,
    pub cap: usize,
}

impl RamseyContext for MSetsContext {
    fn name(&self) -> &'static str {
        "msets"
    }
    fn ordered(&self) -> bool {
        false
    }
    fn candidate(&self, n: usize) -> Result<Structure> {
        Ok(LexLift::new(self.monoid.clone(), n, self.cap)?.to_mset().to_structure())
    }
    fn degree_upper_bound(&self, a: &Structure) -> Option<(usize, String)> {
        let fiber = expansion::fiber_orders(a.size);
        let degrees: Vec<(Vec<usize>, usize)> = fiber.into_iter().map(|o| (o, 1)).collect();
        let bound = expansion::degree_sum_bound(a.size, &degrees).ok()?;
        Some((
            bound,
            "sum over all orderings of the ordered degree 1 (ordered M-sets have the Ramsey property)".into(),
        ))
    }
}

/// Ordered M-sets; candidates are the lexicographically ordered cofree M-sets.
pub struct OrderedMSetsContext {
    pub monoid: Arc<FiniteMonoid>,
    pub cap: usize,
}

impl RamseyContext for OrderedMSetsContext {
    fn name(&self) -> &'static str {
        "ordered_msets"
    }
    fn ordered(&self) -> bool {
        true
    }
    fn candidate(&self, n: usize) -> Result<Structure> {
        Ok(LexLift::new(self.monoid.clone(), n, self.cap)?.to_ordered_mset().to_structure())
    }
    fn degree_upper_bound(&self, _a: &Structure) -> Option<(usize, String)> {
        Some((1, "finite ordered M-sets have the Ramsey property".into()))
    }
}

/// Ordered rooted forests; candidates are the sequence forests over `n`-chains.
pub struct ForestsContext {
    pub cap: usize,
}

impl RamseyContext for ForestsContext {
    fn name(&self) -> &'static str {
        "forests"
    }
    fn ordered(&self) -> bool {
        true
    }
    fn candidate(&self, n: usize) -> Result<Structure> {
        Ok(forests::sequence_forest(n, self.cap)?.to_structure())
    }
    fn degree_upper_bound(&self, _a: &Structure) -> Option<(usize, String)> {
        Some((1, "finite ordered rooted forests have the Ramsey property".into()))
    }
}

/// Rooted forests without order.
pub struct RootedForestsContext {
    pub cap: usize,
}

impl RamseyContext for RootedForestsContext {
    fn name(&self) -> &'static str {
        "rooted_forests"
    }
    fn ordered(&self) -> bool {
        false
    }
    fn candidate(&self, n: usize) -> Result<Structure> {
        Ok(forests::sequence_forest(n, self.cap)?.to_structure().forget_order())
    }
    fn degree_upper_bound(&self, a: &Structure) -> Option<(usize, String)> {
        let degrees: Vec<(Vec<usize>, usize)> = expansion::fiber_orders(a.size).into_iter().map(|o| (o, 1)).collect();
        let bound = expansion::degree_sum_bound(a.size, &degrees).ok()?;
        Some((
            bound,
            "sum over all orderings of the ordered degree 1 (ordered rooted forests have the Ramsey property)".into(),
        ))
    }
}

pub const CONTEXT_NAMES: [&str; 5] = ["chains", "msets", "ordered_msets", "forests", "rooted_forests"];

/// Looks up a context by name. `monoid` is used by the M-set contexts.
pub fn context(name: &str, monoid: Arc<FiniteMonoid>, cap: usize) -> Result<Box<dyn RamseyContext>> {
    Ok(match name {
        "chains" => Box::new(ChainsContext),
        "msets" => Box::new(MSetsContext { monoid, cap }),
        "ordered_msets" => Box::new(OrderedMSetsContext { monoid, cap }),
        "forests" => Box::new(ForestsContext { cap }),
        "rooted_forests" => Box::new(RootedForestsContext { cap }),
        other => {
            return Err(Error::UnknownName {
                kind: "context".into(),
                name: other.into(),
            })
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    /// Index in the candidate stream and size of the first witness, if found.
    pub found: Option<(usize, usize)>,
    pub bound: usize,
    pub tried: Vec<(usize, usize, ArrowStatus)>,
}

/// First candidate `C` (in stream order, up to index `bound`) with `C → (B)^A_{k,t}`.
/// Candidates whose hom-sets overflow the caps end the search.
pub fn find_witness(
    a: &Structure,
    b: &Structure,
    k: usize,
    t: usize,
    ctx: &dyn RamseyContext,
    bound: usize,
    opts: &ArrowOptions,
) -> Result<WitnessReport> {
    let mut tried = Vec::new();
    for n in 1..=bound {
        let c = ctx.candidate(n)?;
        let inst = match ArrowInstance::build(a, b, &c, opts.enumeration_cap) {
            Ok(i) => i,
            Err(e) if e.is_cap_overflow() => break,
            Err(e) => return Err(e),
        };
        if inst.hom_ac.len() > opts.exhaustive_cap {
            break;
        }
        let v = decide(&inst, k, t, opts)?;
        tried.push((n, c.size, v.status));
        if v.holds() {
            return Ok(WitnessReport {
                found: Some((n, c.size)),
                bound,
                tried,
            });
        }
    }
    Ok(WitnessReport {
        found: None,
        bound,
        tried,
    })
}

// ---------------------------------------------------------------------------
// small degree probes

#[derive(Debug, Clone, Copy)]
pub struct ProbeBudget {
    /// Largest candidate index used for `B` and `C`.
    pub max_candidate: usize,
    /// Largest carrier size of a `B` whose orderings are enumerated.
    pub max_b_size: usize,
}

impl ProbeBudget {
    pub fn small() -> Self {
        Self {
            max_candidate: 3,
            max_b_size: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProbe {
    pub lower: usize,
    pub upper: Option<usize>,
    pub evidence: Vec<String>,
}

/// Position of the pattern of `f` under a carrier rank: the permutation of
/// `A`'s points sorted by the rank of their images.
fn pattern(f: &[usize], rank: &[usize]) -> Vec<usize> {
    (0..f.len()).sorted_by_key(|&x| rank[f[x]]).collect()
}

/// Coloring of `hom(A,C)` by the order type each embedding induces on `A`
/// relative to the index order of `C`. Colors are pattern indices among all
/// permutations of `A`.
pub fn order_type_coloring(inst: &ArrowInstance, a_size: usize, c_size: usize) -> Vec<usize> {
    let perms: HashMap<Vec<usize>, usize> = (0..a_size).permutations(a_size).enumerate().map(|(i, p)| (p, i)).collect();
    let rank: Vec<usize> = (0..c_size).collect();
    inst.hom_ac.iter().map(|f| perms[&pattern(f, &rank)]).collect()
}

/// Least, over orderings of `b`, of the number of distinct order types of
/// `hom(a,b)`. Whatever `C` and whatever copy `w`, the order-type coloring
/// shows at least this many colors on `w · hom(a,b)`.
pub fn min_distinct_patterns(a: &Structure, b: &Structure, cap: usize) -> Result<usize> {
    let hom_ab = bounded_embeddings(a, b, cap, "hom(A,B)")?;
    if b.is_ordered() {
        return Ok(hom_ab.iter().map(|f| pattern(f, &b.rank().expect("ordered"))).unique().count());
    }
    let mut best = usize::MAX;
    for order in (0..b.size).permutations(b.size) {
        let rank = crate::monoid::invert(&order);
        let count = hom_ab.iter().map(|f| pattern(f, &rank)).unique().count();
        best = best.min(count);
    }
    Ok(best)
}

/// Interval for the small Ramsey degree of `a` in `ctx`.
pub fn probe_small_degree(
    a: &Structure,
    ctx: &dyn RamseyContext,
    budget: ProbeBudget,
    opts: &ArrowOptions,
) -> Result<DegreeProbe> {
    let mut evidence = Vec::new();
    let mut lower = 1;
    let mut best_b: Option<Structure> = None;
    let mut bs = vec![a.clone()];
    for n in 1..=budget.max_candidate {
        match ctx.candidate(n) {
            Ok(c) if c.size <= budget.max_b_size => bs.push(c),
            _ => break,
        }
    }
    for b in bs {
        if b.size > budget.max_b_size {
            continue;
        }
        let m = match min_distinct_patterns(a, &b, opts.enumeration_cap) {
            Ok(m) => m,
            Err(e) if e.is_cap_overflow() => continue,
            Err(e) => return Err(e),
        };
        if m > lower {
            lower = m;
            best_b = Some(b);
        }
    }
    if let Some(b) = &best_b {
        evidence.push(format!(
            "order-type coloring with {} colors shows at least {lower} colors on every copy of a {}-element B",
            (1..=a.size).product::<usize>(),
            b.size
        ));
        // cross-check the certificate on concrete targets
        let k = (1..=a.size).product::<usize>();
        for n in 1..=budget.max_candidate {
            let Ok(c) = ctx.candidate(n) else { break };
            let inst = match ArrowInstance::build(a, b, &c, opts.enumeration_cap) {
                Ok(i) => i,
                Err(e) if e.is_cap_overflow() => break,
                Err(e) => return Err(e),
            };
            if inst.copies.is_empty() {
                continue;
            }
            let coloring = order_type_coloring(&inst, a.size, c.size);
            let bad = inst.is_bad(&coloring, k, lower - 1);
            evidence.push(format!(
                "candidate {n} ({} elements): order-type coloring {} t = {}",
                c.size,
                if bad { "refutes" } else { "does NOT refute" },
                lower - 1
            ));
            if !bad {
                return Err(Error::Invalid("order-type certificate failed its own check".into()));
            }
        }
    } else {
        evidence.push("degree is at least 1 by definition".into());
    }
    let upper = ctx.degree_upper_bound(a).map(|(u, why)| {
        evidence.push(format!("upper bound {u}: {why}"));
        u
    });
    if let Some(u) = upper {
        if u < lower {
            return Err(Error::Invalid(format!("upper bound {u} below certified lower bound {lower}")));
        }
    }
    Ok(DegreeProbe { lower, upper, evidence })
}
