//! The ten acceptance criteria. Runs as its own binary and prints one
//! PASS/FAIL line per criterion; exits nonzero if any fails.

use std::sync::Arc;
use std::time::Instant;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mset_ramsey::bigramsey::{self, Setting};
use mset_ramsey::comonad::{
    self, all_lifts, classify, coalgebra_to_mset, is_coalgebra_hom, mset_to_coalgebra, sharp_lift, Coalgebra,
    CoalgebraKind, Corrupted, Corruption, ListComonad, MonoidAction, Value, E_CAP,
};
use mset_ramsey::expansion;
use mset_ramsey::forests::{self, RootedForest};
use mset_ramsey::ramsey::{self, ArrowInstance, ArrowOptions, ProbeBudget};
use mset_ramsey::transport::{self, LexCoalgebra, StandardDelta};
use mset_ramsey::{ChainEmbedding, FiniteMonoid, MSet, OrderedMSet, Structure};

type Outcome = Result<String, String>;

fn check(cond: bool, ok: impl Into<String>, bad: impl Into<String>) -> Outcome {
    if cond {
        Ok(ok.into())
    } else {
        Err(bad.into())
    }
}

fn monoids() -> Vec<(&'static str, Arc<FiniteMonoid>)> {
    vec![
        ("trivial", Arc::new(FiniteMonoid::trivial())),
        ("Z2", Arc::new(FiniteMonoid::z2())),
        ("left_zero", Arc::new(FiniteMonoid::left_zero_with_identity())),
    ]
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Every valid action of `m` on `0..n`.
fn all_msets(m: &Arc<FiniteMonoid>, n: usize) -> Vec<MSet> {
    let rows = (0..m.size()).map(|_| (0..n).map(|_| 0..n).multi_cartesian_product().collect::<Vec<_>>());
    rows.multi_cartesian_product()
        .filter_map(|action| MSet::validate(m.clone(), labels(n), action).ok())
        .collect()
}

/// Every structure map `A → E(A)` for the monoid-action comonad that is EM.
fn all_em_coalgebras(m: &Arc<FiniteMonoid>, n: usize) -> Vec<Coalgebra> {
    let e = MonoidAction { monoid: m.clone() };
    let values: Vec<Value> = (0..m.size())
        .map(|_| 0..n)
        .multi_cartesian_product()
        .map(|h| Value::atoms(&h))
        .collect();
    (0..n)
        .map(|_| values.iter().cloned())
        .multi_cartesian_product()
        .map(|s| Coalgebra::new("monoid_action".into(), labels(n), s).unwrap())
        .filter(|c| classify(&e, c).kind == CoalgebraKind::Em)
        .collect()
}

fn row(c: &Coalgebra, a: usize) -> Vec<usize> {
    c.structure[a].as_seq().unwrap().iter().map(|v| v.as_atom().unwrap()).collect()
}

fn criterion_1() -> Outcome {
    let started = Instant::now();
    let mut checked = 0;
    for (name, m) in monoids() {
        for size in 1..=2 {
            let e = comonad::functor("monoid_action", Some(m.clone()), 0).unwrap();
            let r = comonad::check_comonad_laws(e.as_ref(), size, E_CAP).map_err(|e| e.to_string())?;
            if !r.all_pass() {
                return Err(format!("monoid_action over {name}, size {size}: {:?}", r.laws));
            }
            checked += r.laws.iter().map(|l| l.checked).sum::<usize>();
        }
    }
    for f in ["list", "duplicate_free_list"] {
        for size in 1..=3 {
            let e = comonad::functor(f, None, 3).unwrap();
            let r = comonad::check_comonad_laws(e.as_ref(), size, E_CAP).map_err(|e| e.to_string())?;
            if !r.all_pass() {
                return Err(format!("{f}, size {size}: {:?}", r.laws));
            }
            checked += r.laws.iter().map(|l| l.checked).sum::<usize>();
        }
    }
    let secs = started.elapsed().as_secs_f64();
    if secs >= 10.0 {
        return Err(format!("law checks took {secs:.1}s"));
    }
    let swapped = Corrupted {
        inner: Box::new(ListComonad { max_len: 3 }),
        corruption: Corruption::SwapDelta,
    };
    let r = comonad::check_comonad_laws(&swapped, 2, E_CAP).map_err(|e| e.to_string())?;
    let coassoc = r.law("coassociativity").unwrap();
    if coassoc.passed() {
        return Err("corrupted δ passed coassociativity".into());
    }
    let last = Corrupted {
        inner: Box::new(MonoidAction { monoid: Arc::new(FiniteMonoid::z2()) }),
        corruption: Corruption::LastEpsilon,
    };
    let r2 = comonad::check_comonad_laws(&last, 2, E_CAP).map_err(|e| e.to_string())?;
    let counit = r2.law("counit_left").unwrap();
    if counit.passed() || !r2.law("coassociativity").unwrap().passed() {
        return Err(format!("corrupted ε not localized: {:?}", r2.laws));
    }
    Ok(format!(
        "{checked} law instances pass in {secs:.2}s; corrupted δ: {}; corrupted ε: {}",
        coassoc.counterexample.as_deref().unwrap_or(""),
        counit.counterexample.as_deref().unwrap_or("")
    ))
}

fn criterion_2() -> Outcome {
    let z2 = Arc::new(FiniteMonoid::z2());
    let e = MonoidAction { monoid: z2.clone() };
    let mut cases = 0;
    for n in 1..=2 {
        for c in all_em_coalgebras(&z2, n) {
            for x in 1..=2 {
                for f in (0..n).map(|_| 0..x).multi_cartesian_product() {
                    let lifts = all_lifts(&e, &c, &f, x, E_CAP).map_err(|e| e.to_string())?;
                    // oracle: E(f) ∘ α computed pointwise
                    let expected: Vec<Value> = (0..n)
                        .map(|a| Value::atoms(&row(&c, a).iter().map(|&y| f[y]).collect::<Vec<_>>()))
                        .collect();
                    if lifts != vec![expected.clone()] {
                        return Err(format!("A = {:?}, f = {f:?}: {} lifts", c.structure, lifts.len()));
                    }
                    let s = sharp_lift(&e, &c, &f, x).map_err(|e| e.to_string())?;
                    if s.map != expected {
                        return Err(format!("f# differs from E(f)∘α for f = {f:?}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    check(cases > 0, format!("{cases} (A, X, f) cases, exactly one lift each"), "no cases")
}

fn criterion_3() -> Outcome {
    let opts = ArrowOptions::default();
    let (a, b) = (Structure::chain(2), Structure::chain(3));
    let t0 = Instant::now();
    let six = ramsey::holds_arrow(&a, &b, &Structure::chain(6), 2, 1, &opts).map_err(|e| e.to_string())?;
    let t_six = t0.elapsed().as_secs_f64();
    let t1 = Instant::now();
    let inst = ArrowInstance::build(&a, &b, &Structure::chain(5), opts.enumeration_cap).unwrap();
    let five = ramsey::decide(&inst, 2, 1, &opts).map_err(|e| e.to_string())?;
    let t_five = t1.elapsed().as_secs_f64();
    let bad = five.bad_coloring.clone().unwrap_or_default();
    let (naive_holds, _) = ramsey::naive_holds(&inst, 2, 1).map_err(|e| e.to_string())?;
    check(
        six.holds()
            && five.status == ramsey::ArrowStatus::Refuted
            && inst.is_bad(&bad, 2, 1)
            && !naive_holds
            && t_six < 60.0
            && t_five < 60.0,
        format!("6-chain holds ({t_six:.3}s); 5-chain refuted by {bad:?} ({t_five:.3}s), naive oracle agrees"),
        format!("6-chain {:?}, 5-chain {:?}, naive holds {naive_holds}", six.status, five.status),
    )
}

fn criterion_4() -> Outcome {
    let mut instances = 0;
    let mut pairs = 0;
    for m in [Arc::new(FiniteMonoid::trivial()), Arc::new(FiniteMonoid::z2())] {
        let e = MonoidAction { monoid: m.clone() };
        let all: Vec<MSet> = (1..=3).flat_map(|n| all_msets(&m, n)).collect();
        for x in &all {
            let c = mset_to_coalgebra(x);
            if coalgebra_to_mset(m.clone(), &c).map_err(|e| e.to_string())? != *x {
                return Err(format!("M-set round trip fails for {:?}", x.action()));
            }
            instances += 1;
        }
        for n in 1..=3 {
            for c in all_em_coalgebras(&m, n) {
                let back = mset_to_coalgebra(&coalgebra_to_mset(m.clone(), &c).map_err(|e| e.to_string())?);
                if back != c {
                    return Err(format!("coalgebra round trip fails for {:?}", c.structure));
                }
                instances += 1;
            }
        }
        for x in &all {
            for y in &all {
                let (cx, cy) = (mset_to_coalgebra(x), mset_to_coalgebra(y));
                for f in (0..x.len()).map(|_| 0..y.len()).multi_cartesian_product() {
                    // oracle: f(α(m, a)) = β(m, f(a)) for all m, a
                    let equivariant = (0..m.size()).all(|g| (0..x.len()).all(|a| f[x.act(g, a)] == y.act(g, f[a])));
                    if equivariant != is_coalgebra_hom(&e, &cx, &cy, &f) {
                        return Err(format!("hom-sets differ at f = {f:?}"));
                    }
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{instances} round trips, {pairs} maps classified identically"))
}

fn ten_point_forest() -> RootedForest {
    let labels: Vec<String> = "abcdefghij".chars().map(String::from).collect();
    let parent = "dhbdgbgdgg".chars().map(|c| (c as u8 - b'a') as usize).collect();
    RootedForest::new(labels, parent, Some((0..10).collect())).unwrap()
}

fn criterion_5() -> Outcome {
    let f = ten_point_forest();
    let c = forests::encode_forest(&f).map_err(|e| e.to_string())?;
    let expected = ["ad", "bhd", "cbhd", "d", "eg", "fbhd", "g", "hd", "ig", "jg"];
    for (a, want) in expected.iter().enumerate() {
        let got: String = c.structure[a]
            .as_seq()
            .unwrap()
            .iter()
            .map(|v| f.labels()[v.as_atom().unwrap()].clone())
            .collect();
        if got != *want {
            return Err(format!("α({}) = {got}, expected {want}", f.labels()[a]));
        }
    }
    let mut forests_checked = 0;
    for n in 1..=5 {
        for parent in forests::all_parent_maps(n) {
            for order in (0..n).permutations(n) {
                let g = RootedForest::new(labels(n), parent.clone(), Some(order.clone())).unwrap();
                let c = forests::encode_forest(&g).map_err(|e| e.to_string())?;
                let back = forests::decode_coalgebra(&c, Some(order)).map_err(|e| e.to_string())?;
                if back != g {
                    return Err(format!("decode∘encode ≠ id for parent {parent:?}"));
                }
                forests_checked += 1;
            }
        }
    }
    Ok(format!("ten-point forest table reproduced; decode∘encode = id on {forests_checked} ordered forests"))
}

fn criterion_6() -> Outcome {
    let z2 = Arc::new(FiniteMonoid::z2());
    let cs: Vec<LexCoalgebra> = (1..=2)
        .flat_map(|n| transport::all_weak_em_coalgebras(&z2, n, &StandardDelta, 1000).unwrap())
        .collect();
    let mut checks = 0;
    for a in &cs {
        for b in &cs {
            for f in (0..a.size).map(|_| 0..b.size).multi_cartesian_product() {
                if !b.is_hom_from(a, &f) {
                    continue;
                }
                for c in b.size..=3 {
                    let lift_c = transport::LexLift::new(z2.clone(), c, 1000).unwrap();
                    for u in mset_ramsey::chains::enumerate_chain_embeddings(b.size, c) {
                        let pa = transport::check_pa(&z2, &u.map, &f, a, b, c, 1000).map_err(|e| e.to_string())?;
                        // oracle: Φ_B(u)(f(x)) and Φ_A(u∘f)(x) as functions on M
                        let oracle = (0..a.size).all(|x| {
                            let left: Vec<usize> = b.structure[f[x]].iter().map(|&y| u.map[y]).collect();
                            let right: Vec<usize> = a.structure[x].iter().map(|&y| u.map[f[y]]).collect();
                            left == right
                        });
                        if !pa.holds || !oracle || pa.v != f {
                            return Err(format!("pre-adjunction square fails: A = {a:?}, B = {b:?}, f = {f:?}, u = {:?}", u.map));
                        }
                        for (src, map) in [(b, u.map.clone()), (a, f.iter().map(|&x| u.map[x]).collect())] {
                            let g = transport::phi(&z2, src, &map, c, 1000).map_err(|e| e.to_string())?;
                            if let Some(w) = transport::hom_square_counterexample(&lift_c, src, &g.map, &StandardDelta) {
                                return Err(format!("Φ output is not a coalgebra hom at {w:?}"));
                            }
                        }
                        checks += 1;
                    }
                }
            }
        }
    }
    check(
        checks > 0,
        format!("{} weak-EM coalgebras, {checks} (A, B, f, u) instances, all Φ outputs are coalgebra homs", cs.len()),
        "no instances",
    )
}

fn fixed_points(n: usize) -> OrderedMSet {
    OrderedMSet::index_ordered(MSet::trivial_action(Arc::new(FiniteMonoid::z2()), n))
}

fn criterion_7() -> Outcome {
    let t = transport::transport_witness(&fixed_points(1), &fixed_points(2), 2, 8, &StandardDelta, &ArrowOptions::default())
        .map_err(|e| e.to_string())?;
    check(
        t.w == 3 && t.colorings_checked == 8 && t.certified && t.engine == ramsey::ArrowStatus::Holds,
        format!("W = 3-chain, |Ê(W)| = {}, all 8 colorings certified", t.target_size),
        format!("{t:?}"),
    )
}

fn swap_pair() -> OrderedMSet {
    OrderedMSet::index_ordered(
        MSet::validate(Arc::new(FiniteMonoid::z2()), labels(2), vec![vec![0, 1], vec![1, 0]]).unwrap(),
    )
}

fn trivial_pair() -> OrderedMSet {
    OrderedMSet::index_ordered(MSet::trivial_action(Arc::new(FiniteMonoid::trivial()), 2))
}

fn criterion_8() -> Outcome {
    let started = Instant::now();
    let mut lines = Vec::new();
    for (name, a, n, k, trials) in [("trivial pair", trivial_pair(), 20, 4, 200), ("Z2 swap pair", swap_pair(), 5, 3, 100)] {
        let setting = Setting::new(&a, n).map_err(|e| e.to_string())?;
        let reports = bigramsey::run_trials(&setting, k, trials, 2024, setting.s());
        if let Some(bad) = reports.iter().find(|r| !r.within_bound()) {
            return Err(format!("{name}: trial seed {} gave {:?} / {:?}", bad.seed, bad.colors_used, bad.error));
        }
        let max = reports.iter().filter_map(|r| r.colors_used).max().unwrap_or(0);
        lines.push(format!("{name}: {trials}/{trials} within 2, max {max}"));
    }
    let secs = started.elapsed().as_secs_f64();
    check(secs < 600.0, format!("{} ({secs:.1}s)", lines.join("; ")), format!("took {secs:.1}s"))
}

fn criterion_9() -> Outcome {
    for (a, n) in [(trivial_pair(), 20), (swap_pair(), 5)] {
        let s = Setting::new(&a, n).map_err(|e| e.to_string())?;
        if !bigramsey::pi_is_injective(&s).map_err(|e| e.to_string())? {
            return Err(format!("π not injective for N = {n}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..50 {
        let a = if i % 2 == 0 { trivial_pair() } else { swap_pair() };
        let small = rng.gen_range(2..=5);
        let big = rng.gen_range(small..=small + 3);
        let mut map: Vec<usize> = rand::seq::index::sample(&mut rng, big, small).into_vec();
        map.sort_unstable();
        let u = ChainEmbedding::new(small, big, map).unwrap();
        let r = bigramsey::equivariance_of_pi(&a, &u).map_err(|e| e.to_string())?;
        if !r.holds {
            return Err(format!("sample {i}: {:?}", r.failure));
        }
    }
    Ok("π injective on both R; 50 sampled (u, R) pairs equivariant".into())
}

fn criterion_10() -> Outcome {
    let opts = ArrowOptions::default();
    let trivial = Arc::new(FiniteMonoid::trivial());
    let ctx = ramsey::context("msets", trivial.clone(), 10_000).unwrap();
    let two = MSet::trivial_action(trivial, 2).to_structure();
    let p = ramsey::probe_small_degree(&two, ctx.as_ref(), ProbeBudget::small(), &opts).map_err(|e| e.to_string())?;
    let sum = expansion::degree_sum_bound(2, &[(vec![0, 1], 1), (vec![1, 0], 1)]).map_err(|e| e.to_string())?;
    if (p.lower, p.upper, sum) != (2, Some(2), 2) {
        return Err(format!("two-element set: lower {}, upper {:?}, fiber sum {sum}", p.lower, p.upper));
    }
    for (name, m) in monoids() {
        let ctx = ramsey::context("msets", m.clone(), 10_000).unwrap();
        let one = MSet::trivial_action(m, 1).to_structure();
        let p = ramsey::probe_small_degree(&one, ctx.as_ref(), ProbeBudget::small(), &opts).map_err(|e| e.to_string())?;
        if (p.lower, p.upper) != (1, Some(1)) {
            return Err(format!("one-element set over {name}: [{}, {:?}]", p.lower, p.upper));
        }
    }
    let agg = bigramsey::unordered_degree_bound(2, &[(vec![0, 1], 2), (vec![1, 0], 2)]).map_err(|e| e.to_string())?;
    check(
        agg.within && agg.aggregate <= 4 && agg.formula == 4,
        format!("t = 2 for the 2-element set; 1 for 1-element sets; aggregate {} ≤ 2!·2 = 4", agg.aggregate),
        format!("{agg:?}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("comonad laws", criterion_1),
        ("cofree universality", criterion_2),
        ("arrow engine calibration", criterion_3),
        ("M-set / coalgebra correspondence", criterion_4),
        ("forest encoding", criterion_5),
        ("pre-adjunction", criterion_6),
        ("witness transport", criterion_7),
        ("big Ramsey bound", criterion_8),
        ("reduction π", criterion_9),
        ("degree machinery", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name} [{secs:.2}s]: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{secs:.2}s]: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria pass");
}
