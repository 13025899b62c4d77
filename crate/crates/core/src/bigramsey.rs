//! Truncated big Ramsey experiment for a finite ordered M-set `A` inside
//! `Ê(ω_N)`: the reduction `f ↦ f*`, the tower of homogeneous subchains that
//! replaces the infinite Ramsey theorem, and an independent recount of the
//! colors left on `Ê(u) · R`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chains::{is_strictly_increasing, Chain, ChainEmbedding};
use crate::error::{ensure_cap, Error, Result};
use crate::expansion;
use crate::monoid::{FiniteMonoid, MonoidLike};
use crate::mset::{enumerate_order_embeddings, is_equivariant, OrderedMSet};
use crate::transport::LexLift;

/// Hom-sets larger than this are refused rather than subsampled.
pub const R_CAP: usize = 100_000;

/// Subsets of `0..s` containing `0`, as sorted index lists, ordered by the
/// bitmask of the remaining `s-1` points.
pub fn subchains_containing_min(s: usize) -> Vec<Vec<usize>> {
    if s == 0 {
        return Vec::new();
    }
    (0..1usize << (s - 1))
        .map(|mask| {
            std::iter::once(0)
                .chain((1..s).filter(|&i| mask >> (i - 1) & 1 == 1))
                .collect()
        })
        .collect()
}

/// The same family as chains labelled by `a`'s labels.
pub fn subchains_of(a: &Chain) -> Vec<Chain> {
    subchains_containing_min(a.len())
        .into_iter()
        .map(|idx| Chain::new(idx.iter().map(|&i| a.label(i).to_string()).collect()).expect("distinct"))
        .collect()
}

/// The experiment's fixed data: `A` normalized, `Ê(ω_N)` and `R = hom(A, Ê(ω_N))`.
#[derive(Debug, Clone)]
pub struct Setting {
    pub a: OrderedMSet,
    pub lift: LexLift,
    pub target: OrderedMSet,
    pub r: Vec<Vec<usize>>,
    pub subchains: Vec<Vec<usize>>,
}

impl Setting {
    pub fn new(a: &OrderedMSet, n: usize) -> Result<Self> {
        let a = a.normalized();
        let lift = LexLift::new(a.monoid().clone(), n, R_CAP.saturating_mul(10))?;
        let target = lift.to_ordered_mset();
        let r: Vec<Vec<usize>> = enumerate_order_embeddings(&a, &target)?.into_iter().map(|e| e.map).collect();
        ensure_cap("|R|", r.len() as u128, R_CAP as u128)?;
        Ok(Self {
            subchains: subchains_containing_min(a.len()),
            a,
            lift,
            target,
            r,
        })
    }

    pub fn s(&self) -> usize {
        self.a.len()
    }

    pub fn bound(&self) -> usize {
        1usize << self.s().saturating_sub(1)
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        self.a.monoid()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionRecord {
    pub f: Vec<usize>,
    /// Blocks of `ρ`, each sorted, ordered by their minima.
    pub rho_blocks: Vec<Vec<usize>>,
    /// Index into [`subchains_containing_min`].
    pub ell: usize,
    pub subchain: Vec<usize>,
    pub f_star: Vec<usize>,
}

/// `π(f) = f*` for an order-embedding `f : A → Ê(ω_N)` (`A` normalized).
pub fn pi_star(a: &OrderedMSet, lift: &LexLift, f: &[usize]) -> Result<ReductionRecord> {
    let s = a.len();
    let target = lift.to_mset();
    if f.len() != s || !is_strictly_increasing(f) || f.iter().any(|&x| x >= lift.len()) {
        return Err(Error::NotAnEmbedding(format!("{f:?} is not strictly increasing into Ê(ω_N)")));
    }
    if !is_equivariant(a.base(), &target, f) {
        return Err(Error::NotAnEmbedding(format!("{f:?} is not equivariant")));
    }
    let one = lift.monoid().identity();
    let at_one: Vec<usize> = f.iter().map(|&h| lift.decode(h)[one]).collect();
    // lex order with the identity least makes these non-decreasing
    if at_one.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Invalid(format!("values at the identity {at_one:?} are not monotone")));
    }
    let rho_blocks: Vec<Vec<usize>> = (0..s)
        .chunk_by(|&i| at_one[i])
        .into_iter()
        .map(|(_, g)| g.collect())
        .collect();
    let subchain: Vec<usize> = rho_blocks.iter().map(|b| b[0]).collect();
    let mask: usize = subchain.iter().skip(1).map(|&i| 1usize << (i - 1)).sum();
    let f_star = subchain.iter().map(|&i| at_one[i]).collect();
    Ok(ReductionRecord {
        f: f.to_vec(),
        rho_blocks,
        ell: mask,
        subchain,
        f_star,
    })
}

/// `(ell, f*)` for every element of `R`, in `R`'s order.
pub fn reduce_all(setting: &Setting) -> Result<Vec<(usize, Vec<usize>)>> {
    setting
        .r
        .iter()
        .map(|f| pi_star(&setting.a, &setting.lift, f).map(|rec| (rec.ell, rec.f_star)))
        .collect()
}

/// On an enumerated `R`, distinct embeddings have distinct reductions.
pub fn pi_is_injective(setting: &Setting) -> Result<bool> {
    Ok(reduce_all(setting)?.iter().all_unique())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivarianceCheck {
    pub holds: bool,
    /// Checked elements of `R'`.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

/// For `u : ω_{N'} → ω_N`, checks `π(Ê(u) · R') = u · π(R')`, elementwise
/// (`g* = u · f*`) and as sets, where `R' = hom(A, Ê(ω_{N'}))`.
pub fn equivariance_of_pi(a: &OrderedMSet, u: &ChainEmbedding) -> Result<EquivarianceCheck> {
    let small = Setting::new(a, u.source_len)?;
    let big_lift = LexLift::new(small.monoid().clone(), u.target_len, R_CAP.saturating_mul(10))?;
    let image = small.lift.map_along(&u.map, &big_lift)?;
    let big_target = big_lift.to_ordered_mset();
    let mut left = BTreeSet::new();
    let mut right = BTreeSet::new();
    for f in &small.r {
        let g: Vec<usize> = f.iter().map(|&h| image[h]).collect();
        if !crate::embed::is_embedding(&small.a.to_structure(), &big_target.to_structure(), &g) {
            return Ok(EquivarianceCheck {
                holds: false,
                checked: left.len(),
                failure: Some(format!("Ê(u)·{f:?} is not in R")),
            });
        }
        let fr = pi_star(&small.a, &small.lift, f)?;
        let gr = pi_star(&small.a, &big_lift, &g)?;
        let uf: Vec<usize> = fr.f_star.iter().map(|&x| u.map[x]).collect();
        if gr.ell != fr.ell || gr.f_star != uf {
            return Ok(EquivarianceCheck {
                holds: false,
                checked: left.len(),
                failure: Some(format!("g* = {:?} but u·f* = {uf:?} for f = {f:?}", gr.f_star)),
            });
        }
        left.insert((gr.ell, gr.f_star));
        right.insert((fr.ell, uf));
    }
    Ok(EquivarianceCheck {
        holds: left == right,
        checked: small.r.len(),
        failure: (left != right).then(|| "set images differ".to_string()),
    })
}

/// Largest `H ⊆ 0..t` on whose `r`-subsets `color` is constant; ties go to
/// the lexicographically least set found first.
pub fn largest_homogeneous(t: usize, r: usize, color: &dyn Fn(&[usize]) -> usize, k: usize) -> Vec<usize> {
    if t < r || r == 0 {
        return (0..t).collect();
    }
    let table: HashMap<Vec<usize>, usize> = (0..t).combinations(r).map(|c| (c.clone(), color(&c))).collect();
    let mut best: Vec<usize> = (0..r.saturating_sub(1).min(t)).collect();
    for c in 0..k {
        let mut cur = Vec::new();
        grow(&table, r, c, &mut cur, (0..t).collect(), &mut best);
    }
    best
}

fn grow(
    table: &HashMap<Vec<usize>, usize>,
    r: usize,
    c: usize,
    cur: &mut Vec<usize>,
    cand: Vec<usize>,
    best: &mut Vec<usize>,
) {
    if cur.len() > best.len() {
        *best = cur.clone();
    }
    for (i, &x) in cand.iter().enumerate() {
        if cur.len() + cand.len() - i <= best.len() {
            return;
        }
        // y stays a candidate if every new r-subset through x and y has color c
        let next: Vec<usize> = cand[i + 1..]
            .iter()
            .copied()
            .filter(|&y| {
                cur.iter().copied().combinations(r - 2.min(r)).all(|mut s| {
                    if r == 1 {
                        return true;
                    }
                    s.push(x);
                    s.push(y);
                    s.sort_unstable();
                    table[&s] == c
                })
            })
            .collect();
        if r == 1 && table[&vec![x]] != c {
            continue;
        }
        cur.push(x);
        grow(table, r, c, cur, next, best);
        cur.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceOutcome {
    /// `u : ω_{T_0} → ω_N`.
    pub u: Vec<usize>,
    /// `T` before the first step, then after each step (steps run `i = n, …, 1`).
    pub truncation_tower: Vec<usize>,
    pub colors_used: usize,
    pub bound: usize,
}

/// Runs the reduction for a coloring `chi` of `setting.r`.
pub fn big_ramsey_reduce(setting: &Setting, chi: &[usize], k: usize, n_inner: usize) -> Result<ReduceOutcome> {
    if chi.len() != setting.r.len() {
        return Err(Error::DimensionMismatch {
            what: "coloring of R".into(),
            expected: setting.r.len(),
            found: chi.len(),
        });
    }
    if let Some(&bad) = chi.iter().find(|&&c| c >= k) {
        return Err(Error::OutOfRange {
            what: "color".into(),
            index: bad,
            size: k,
        });
    }
    let n = setting.lift.base();
    if n_inner > n {
        return Err(Error::Invalid(format!("inner truncation {n_inner} exceeds N = {n}")));
    }
    // γ on π(R), keyed by (ℓ, f*)
    let gamma: HashMap<(usize, Vec<usize>), usize> = reduce_all(setting)?.into_iter().zip(chi.iter().copied()).collect();

    let mut comp: Vec<usize> = (0..n).collect();
    let mut tower = vec![n];
    for (ell, sub) in setting.subchains.iter().enumerate().rev() {
        let t = comp.len();
        let color = |x: &[usize]| -> usize {
            let key = (ell, x.iter().map(|&i| comp[i]).collect::<Vec<_>>());
            gamma.get(&key).copied().unwrap_or(0)
        };
        let h = largest_homogeneous(t, sub.len(), &color, k);
        comp = h.iter().map(|&i| comp[i]).collect();
        tower.push(comp.len());
        if comp.len() < n_inner {
            return Err(Error::TruncationTooSmall {
                step: ell + 1,
                size: comp.len(),
                needed: n_inner,
            });
        }
    }
    let colors_used = recount(setting, chi, &comp)?;
    Ok(ReduceOutcome {
        u: comp,
        truncation_tower: tower,
        colors_used,
        bound: setting.bound(),
    })
}

/// `|χ(Ê(u) · R')|` with `R' = hom(A, Ê(ω_{T_0}))`, computed without any of
/// the reduction's bookkeeping.
pub fn recount(setting: &Setting, chi: &[usize], u: &[usize]) -> Result<usize> {
    let small = LexLift::new(setting.monoid().clone(), u.len(), R_CAP.saturating_mul(10))?;
    let image = small.map_along(u, &setting.lift)?;
    let index: HashMap<&[usize], usize> = setting.r.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let r_small = enumerate_order_embeddings(&setting.a, &small.to_ordered_mset())?;
    let mut colors = BTreeSet::new();
    for f in r_small {
        let g: Vec<usize> = f.map.iter().map(|&h| image[h]).collect();
        let i = index
            .get(g.as_slice())
            .ok_or_else(|| Error::Invalid(format!("Ê(u)·{:?} is not in R", f.map)))?;
        colors.insert(chi[*i]);
    }
    Ok(colors.len())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colors_used: Option<usize>,
    pub bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation_tower: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl TrialReport {
    pub fn within_bound(&self) -> bool {
        matches!(self.colors_used, Some(c) if c <= self.bound)
    }
}

pub fn random_coloring(len: usize, k: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.gen_range(0..k)).collect()
}

/// Trial `i` colors `R` with seed `seed + i`. Output order is trial order
/// regardless of scheduling.
pub fn run_trials(setting: &Setting, k: usize, trials: usize, seed: u64, n_inner: usize) -> Vec<TrialReport> {
    (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i);
            let chi = random_coloring(setting.r.len(), k, s);
            match big_ramsey_reduce(setting, &chi, k, n_inner) {
                Ok(o) => TrialReport {
                    seed: s,
                    colors_used: Some(o.colors_used),
                    bound: o.bound,
                    u: Some(o.u),
                    truncation_tower: Some(o.truncation_tower),
                    error: None,
                },
                Err(e) => TrialReport {
                    seed: s,
                    colors_used: None,
                    bound: setting.bound(),
                    u: None,
                    truncation_tower: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeAggregate {
    pub n: usize,
    pub aggregate: usize,
    /// `n! · 2^{n-1}`.
    pub formula: usize,
    pub within: bool,
}

/// Sums certified per-ordering bounds over every ordering of an `n`-element M-set.
pub fn unordered_degree_bound(n: usize, per_ordering: &[(Vec<usize>, usize)]) -> Result<DegreeAggregate> {
    let aggregate = expansion::degree_sum_bound(n, per_ordering).map_err(|e| match e {
        Error::IncompleteFiber(o) => Error::MissingOrdering(o),
        other => other,
    })?;
    let formula = (1..=n).product::<usize>() * (1usize << n.saturating_sub(1));
    Ok(DegreeAggregate {
        n,
        aggregate,
        formula,
        within: aggregate <= formula,
    })
}
