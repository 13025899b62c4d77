use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use clap::Args;
use serde_json::{json, Value as Json};

use mset_ramsey::bigramsey::{self, Setting};
use mset_ramsey::comonad::{self, Corrupted, Corruption, E_CAP};
use mset_ramsey::expansion;
use mset_ramsey::forests::{self, RootedForest};
use mset_ramsey::mset::resolve_order;
use mset_ramsey::ramsey::{self, ArrowInstance, ArrowOptions, ProbeBudget};
use mset_ramsey::transport;
use mset_ramsey::{FiniteMonoid, MonoidLike, Structure};

use crate::load::{self, CliError, CliResult, Inputs};
use crate::{Command, Global};

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Monoid file or builtin name.
    #[arg(long)]
    pub monoid: Option<String>,
    /// M-set file.
    #[arg(long)]
    pub mset: Option<PathBuf>,
    /// Unary algebra file.
    #[arg(long)]
    pub algebra: Option<PathBuf>,
    /// Chain file (array of labels).
    #[arg(long)]
    pub chain: Option<PathBuf>,
    /// Forest file.
    #[arg(long)]
    pub forest: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LawsArgs {
    #[arg(long)]
    pub functor: String,
    /// Needed for monoid_action.
    #[arg(long)]
    pub monoid: Option<String>,
    #[arg(long)]
    pub size: usize,
    /// Longest sequence materialized by the list comonad.
    #[arg(long, default_value_t = 3)]
    pub max_len: usize,
    /// Deliberately break δ (swap_delta) or ε (last_epsilon).
    #[arg(long)]
    pub corrupt: Option<String>,
}

#[derive(Args, Debug)]
pub struct ArrowArgs {
    #[arg(long = "A")]
    pub a: PathBuf,
    #[arg(long = "B")]
    pub b: PathBuf,
    /// Target file; alternatively `--candidate n` takes the n-th object of the context.
    #[arg(long = "C")]
    pub c: Option<PathBuf>,
    #[arg(long)]
    pub candidate: Option<usize>,
    #[arg(short)]
    pub k: usize,
    #[arg(short, default_value_t = 1)]
    pub t: usize,
    #[arg(long, default_value = "chains")]
    pub ctx: String,
}

#[derive(Args, Debug)]
pub struct ProbeArgs {
    #[arg(long = "A")]
    pub a: PathBuf,
    #[arg(long, default_value = "chains")]
    pub ctx: String,
    /// `small`, or the largest candidate index to use.
    #[arg(long, default_value = "small")]
    pub budget: String,
    /// Monoid for context candidates when A does not carry one.
    #[arg(long)]
    pub monoid: Option<String>,
}

#[derive(Args, Debug)]
pub struct TransportArgs {
    #[arg(long = "U")]
    pub u: PathBuf,
    #[arg(long = "V")]
    pub v: PathBuf,
    #[arg(short)]
    pub k: usize,
    /// Largest chain witness tried, as `8` or `n<=8`.
    #[arg(long, default_value = "n<=8")]
    pub budget: String,
    /// Largest truncation ω_N the witness may use.
    #[arg(long = "truncate-N", default_value_t = 16)]
    pub truncate_n: usize,
    /// `standard`, or `shifted` to watch certification fail.
    #[arg(long, default_value = "standard")]
    pub delta: String,
}

#[derive(Args, Debug)]
pub struct BigRamseyArgs {
    #[arg(long = "A")]
    pub a: PathBuf,
    #[arg(long = "N")]
    pub n: usize,
    #[arg(short, long)]
    pub k: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Smallest acceptable final truncation; defaults to |A|.
    #[arg(long)]
    pub n_inner: Option<usize>,
}

#[derive(Args, Debug)]
pub struct DegreeBoundArgs {
    #[arg(long = "A")]
    pub a: PathBuf,
    /// `[{"order": [...], "degree": d}, ...]`, one entry per ordering of A.
    #[arg(long)]
    pub ordered_degrees: PathBuf,
}

#[derive(Args, Debug)]
pub struct ForestArgs {
    #[arg(long)]
    pub forest: PathBuf,
    /// Decode this A† coalgebra file instead of encoding.
    #[arg(long)]
    pub coalgebra: Option<PathBuf>,
}

fn arrow_options(g: &Global) -> ArrowOptions {
    ArrowOptions {
        exhaustive_cap: g.exhaustive_cap,
        enumeration_cap: g.cap,
        samples: g.samples,
        seed: g.seed,
        parallel: g.threads > 1,
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Json {
    serde_json::to_value(v).expect("serializable")
}

pub fn dispatch(cmd: &Command, g: &Global, inputs: &mut Inputs) -> CliResult<(&'static str, Json, Json)> {
    match cmd {
        Command::Validate(a) => validate(a, g, inputs).map(|(p, v)| ("validate", p, v)),
        Command::Laws(a) => laws(a, g, inputs).map(|(p, v)| ("laws", p, v)),
        Command::ArrowCheck(a) => arrow_check(a, g, inputs).map(|(p, v)| ("arrow-check", p, v)),
        Command::DegreeProbe(a) => degree_probe(a, g, inputs).map(|(p, v)| ("degree-probe", p, v)),
        Command::Transport(a) => transport_cmd(a, g, inputs).map(|(p, v)| ("transport", p, v)),
        Command::Bigramsey(a) => big_ramsey(a, g, inputs).map(|(p, v)| ("bigramsey", p, v)),
        Command::DegreeBound(a) => degree_bound(a, inputs).map(|(p, v)| ("degree-bound", p, v)),
        Command::Forest(a) => forest(a, inputs).map(|(p, v)| ("forest", p, v)),
    }
}

fn validate(a: &ValidateArgs, g: &Global, inputs: &mut Inputs) -> CliResult<(Json, Json)> {
    if a.monoid.is_none() && a.mset.is_none() && a.algebra.is_none() && a.chain.is_none() && a.forest.is_none() {
        return Err(CliError::Usage(
            "validate needs at least one of --monoid, --mset, --algebra, --chain, --forest".into(),
        ));
    }
    let mut out = BTreeMap::new();
    if let Some(spec) = &a.monoid {
        let m = inputs.monoid(spec)?;
        out.insert(
            "monoid",
            json!({
                "valid": true,
                "size": m.size(),
                "identity": m.identity(),
                "is_group": m.is_group(),
                "is_commutative": m.is_commutative(),
            }),
        );
    }
    if let Some(p) = &a.mset {
        let mut ms = load::unify(vec![inputs.mset_source("mset", p)?], g.cap)?;
        let (m, order) = ms.pop().expect("one source");
        let orbits: std::collections::BTreeSet<Vec<usize>> = (0..m.len())
            .map(|x| {
                let mut o = m.orbit(x);
                o.sort_unstable();
                o
            })
            .collect();
        let ordered = order.is_some();
        load::ordered(m.clone(), order)?;
        out.insert(
            "mset",
            json!({
                "valid": true,
                "size": m.len(),
                "monoid_size": m.monoid().size(),
                "orbits": orbits.len(),
                "ordered": ordered,
            }),
        );
    }
    if let Some(p) = &a.algebra {
        let src = inputs.mset_source("algebra", p)?;
        let load::MSetSource::Algebra(alg) = &src else {
            return Err(CliError::Input("--algebra: file has no \"alphabet\" field".into()));
        };
        let size = alg.len();
        let letters = alg.alphabet().len();
        let ms = load::unify(vec![src], g.cap)?;
        out.insert(
            "algebra",
            json!({
                "valid": true,
                "size": size,
                "alphabet": letters,
                "transformation_monoid_size": ms[0].0.monoid().size(),
            }),
        );
    }
    if let Some(p) = &a.chain {
        let c = inputs.chain("chain", p)?;
        out.insert("chain", json!({ "valid": true, "size": c.len() }));
    }
    if let Some(p) = &a.forest {
        let f = inputs.forest("forest", p)?;
        out.insert(
            "forest",
            json!({
                "valid": true,
                "size": f.len(),
                "roots": f.roots().iter().map(|&r| f.labels()[r].clone()).collect::<Vec<_>>(),
                "ordered": f.order().is_some(),
            }),
        );
    }
    Ok((json!({}), to_json(&out)))
}

fn laws(a: &LawsArgs, g: &Global, inputs: &mut Inputs) -> CliResult<(Json, Json)> {
    let monoid = a.monoid.as_deref().map(|m| inputs.monoid(m)).transpose()?;
    let mut e = comonad::functor(&a.functor, monoid, a.max_len)?;
    if let Some(c) = &a.corrupt {
        let corruption = match c.as_str() {
            "swap_delta" => Corruption::SwapDelta,
            "last_epsilon" => Corruption::LastEpsilon,
            other => {
                return Err(CliError::Usage(format!(
                    "--corrupt: unknown corruption {other:?}; expected swap_delta or last_epsilon"
                )))
            }
        };
        e = Box::new(Corrupted { inner: e, corruption });
    }
    let report = comonad::check_comonad_laws(e.as_ref(), a.size, g.cap.max(E_CAP))?;
    let params = json!({
        "functor": a.functor,
        "size": a.size,
        "max_len": a.max_len,
        "corrupt": a.corrupt,
    });
    Ok((params, json!({ "all_pass": report.all_pass(), "report": report })))
}

fn arrow_check(a: &ArrowArgs, g: &Global, inputs: &mut Inputs) -> CliResult<(Json, Json)> {
    let mut files = vec![("A", a.a.as_path()), ("B", a.b.as_path())];
    match (&a.c, a.candidate) {
        (Some(c), None) => files.push(("C", c.as_path())),
        (None, Some(_)) => {}
        _ => return Err(CliError::Usage("give exactly one of --C and --candidate".into())),
    }
    let (mut st, monoid) = load::context_structures(inputs, &a.ctx, &files, g.cap)?;
    if let Some(n) = a.candidate {
        let ctx = ramsey::context(&a.ctx, monoid.unwrap_or_else(|| Arc::new(FiniteMonoid::trivial())), g.cap)?;
        st.push(ctx.candidate(n)?);
    }
    let (sa, sb, sc) = (&st[0], &st[1], &st[2]);
    let opts = arrow_options(g);
    let inst = ArrowInstance::build(sa, sb, sc, opts.enumeration_cap)?;
    let verdict = ramsey::decide(&inst, a.k, a.t, &opts)?;
    let verified = verdict
        .bad_coloring
        .as_ref()
        .map(|col| inst.copies.is_empty() || inst.is_bad(col, a.k, a.t));
    let params = json!({
        "ctx": a.ctx,
        "k": a.k,
        "t": a.t,
        "candidate": a.candidate,
        "sizes": [sa.size, sb.size, sc.size],
        "exhaustive_cap": opts.exhaustive_cap,
        "enumeration_cap": opts.enumeration_cap,
        "samples": opts.samples,
        "seed": opts.seed,
    });
    Ok((params, json!({ "verdict": verdict, "bad_coloring_verified": verified })))
}

fn parse_budget(text: &str) -> CliResult<usize> {
    text.trim()
        .trim_start_matches("n<=")
        .parse()
        .map_err(|_| CliError::Usage(format!("--budget: expected a number or n<=<number>, got {text:?}")))
}

fn degree_probe(a: &ProbeArgs, g: &Global, inputs: &mut Inputs) -> CliResult<(Json, Json)> {
    let (st, monoid) = load::context_structures(inputs, &a.ctx, &[("A", a.a.as_path())], g.cap)?;
    let monoid = match (monoid, &a.monoid) {
        (Some(m), _) => m,
        (None, Some(spec)) => inputs.monoid(spec)?,
        (None, None) => Arc::new(FiniteMonoid::trivial()),
    };
    let ctx = ramsey::context(&a.ctx, monoid, g.cap)?;
    let budget = match a.budget.as_str() {
        "small" => ProbeBudget::small(),
        other => ProbeBudget {
            max_candidate: parse_budget(other)?,
            ..ProbeBudget::small()
        },
    };
    let probe = ramsey::probe_small_degree(&st[0], ctx.as_ref(), budget, &arrow_options(g))?;
    let params = json!({
        "ctx": a.ctx,
        "max_candidate": budget.max_candidate,
        "max_b_size": budget.max_b_size,
        "seed": g.seed,
    });
    Ok((params, to_json(&probe)))
}

fn transport_cmd(a: &TransportArgs, g: &Global, inputs: &mut Inputs) -> CliResult<(Json, Json)> {
    let su = inputs.mset_source("U", &a.u)?;
    let sv = inputs.mset_source("V", &a.v)?;
    let mut ms = load::unify(vec![su, sv], g.cap)?.into_iter();
    let (mu, ou) = ms.next().expect("U");
    let (mv, ov) = ms.next().expect("V");
    let (u, v) = (load::ordered(mu, ou)?, load::ordered(mv, ov)?);
    let budget = parse_budget(&a.budget)?;
    let delta = transport::comultiplication(&a.delta)?;
    let w = transport::transport_witness(&u, &v, a.k, budget.min(a.truncate_n), delta.as_ref(), &arrow_options(g))?;
    let params = json!({
        "k": a.k,
        "budget": budget,
        "truncate_N": a.truncate_n,
        "delta": delta.name(),
        "seed": g.seed,
    });
    Ok((params, to_json(&w)))
}

fn big_ramsey(a: &BigRamseyArgs, g: &Global, inputs: &mut Inputs) -> CliResult<(Json, Json)> {
    let src = inputs.mset_source("A", &a.a)?;
    let (m, o) = load::unify(vec![src], g.cap)?.pop().expect("A");
    let am = load::ordered(m, o)?;
    let setting = Setting::new(&am, a.n)?;
    let n_inner = a.n_inner.unwrap_or(setting.s());
    let injective = bigramsey::pi_is_injective(&setting)?;
    let trials = bigramsey::run_trials(&setting, a.k, a.trials, g.seed, n_inner);
    let succeeded = trials.iter().filter(|t| t.error.is_none()).count();
    let within = trials.iter().filter(|t| t.within_bound()).count();
    let max_colors = trials.iter().filter_map(|t| t.colors_used).max();
    let params = json!({
        "N": a.n,
        "k": a.k,
        "trials": a.trials,
        "seed": g.seed,
        "n_inner": n_inner,
    });
    let verdicts = json!({
        "s": setting.s(),
        "hom_size": setting.r.len(),
        "bound": setting.bound(),
        "pi_injective": injective,
        "succeeded": succeeded,
        "within_bound": within,
        "max_colors_used": max_colors,
        "trials": trials,
    });
    Ok((params, verdicts))
}

fn degree_bound(a: &DegreeBoundArgs, inputs: &mut Inputs) -> CliResult<(Json, Json)> {
    #[derive(serde::Deserialize)]
    struct Entry {
        order: Vec<Json>,
        degree: usize,
    }
    let src = inputs.mset_source("A", &a.a)?;
    let (m, _) = load::unify(vec![src], usize::MAX)?.pop().expect("A");
    let entries: Vec<Entry> = inputs.json("ordered-degrees", &a.ordered_degrees)?;
    let per: Vec<(Vec<usize>, usize)> = entries
        .iter()
        .map(|e| Ok((resolve_order(m.labels(), &e.order)?, e.degree)))
        .collect::<CliResult<_>>()?;
    let agg = bigramsey::unordered_degree_bound(m.len(), &per)?;
    let orderings = expansion::fiber_orders(m.len()).len();
    Ok((json!({ "n": m.len(), "orderings": orderings }), to_json(&agg)))
}

fn forest(a: &ForestArgs, inputs: &mut Inputs) -> CliResult<(Json, Json)> {
    let f = inputs.forest("forest", &a.forest)?;
    let f = if f.order().is_none() {
        let n = f.len();
        RootedForest::new(f.labels().to_vec(), f.parent().to_vec(), Some((0..n).collect()))?
    } else {
        f
    };
    if let Some(p) = &a.coalgebra {
        let c: comonad::Coalgebra = inputs.json("coalgebra", p)?;
        let decoded = forests::decode_coalgebra(&c, f.order().map(<[usize]>::to_vec))?;
        return Ok((json!({ "mode": "decode" }), to_json(&forests::ForestFile::from_forest(&decoded))));
    }
    let c = forests::encode_forest(&f)?;
    let table: BTreeMap<String, Vec<String>> = (0..f.len())
        .map(|x| (f.labels()[x].clone(), f.root_path(x).iter().map(|&y| f.labels()[y].clone()).collect()))
        .collect();
    let round_trip = forests::decode_coalgebra(&c, f.order().map(<[usize]>::to_vec))? == f;
    let s: Structure = f.to_structure();
    Ok((
        json!({ "mode": "encode", "size": s.size }),
        json!({
            "encoding": table,
            "order_embedding": forests::encoding_is_order_embedding(&f),
            "round_trip": round_trip,
            "coalgebra": c,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use mset_ramsey::mset::OrderedMSet;

    #[test]
    fn budgets() {
        assert_eq!(parse_budget("n<=8").unwrap(), 8);
        assert_eq!(parse_budget("5").unwrap(), 5);
        assert!(parse_budget("lots").is_err());
    }

    #[test]
    fn builtin_monoids() {
        assert_eq!(load::builtin_monoid("cyclic3").unwrap().size(), 3);
        assert!(load::builtin_monoid("cyclic0").is_none());
        assert!(load::builtin_monoid("z3").is_none());
    }

    #[test]
    fn unknown_context_is_a_usage_error() {
        let mut inputs = Inputs::default();
        let err = load::context_structures(&mut inputs, "graphs", &[], 10).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("--ctx"));
    }

    #[test]
    fn ordered_default_is_carrier_order() {
        let m = mset_ramsey::MSet::trivial_action(Arc::new(FiniteMonoid::trivial()), 3);
        let o: OrderedMSet = load::ordered(m, None).unwrap();
        assert_eq!(o.order(), &[0, 1, 2]);
    }
}
