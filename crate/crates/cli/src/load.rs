//! Reading input files, recording their hashes, and turning them into
//! core values.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use mset_ramsey::forests::{ForestFile, RootedForest};
use mset_ramsey::monoid::MonoidFile;
use mset_ramsey::mset::{MSetFile, MonoidRef, TransformationMonoid, UnaryAlgebra, UnaryAlgebraFile};
use mset_ramsey::{Chain, Error, FiniteMonoid, MSet, OrderedMSet, Structure};
use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_cap_overflow() => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Input(m) => write!(f, "input: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Serialize)]
pub struct InputRef {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

/// Every file read during a run, in reading order.
#[derive(Debug, Default)]
pub struct Inputs {
    pub refs: Vec<InputRef>,
}

pub const BUILTIN_MONOIDS: [&str; 4] = ["trivial", "z2", "left_zero", "cyclic<n>"];

impl Inputs {
    pub fn read(&mut self, role: &str, path: &Path) -> CliResult<String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("--{role}: cannot read {}: {e}", path.display())))?;
        self.refs.push(InputRef {
            role: role.to_string(),
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(text.as_bytes())),
        });
        Ok(text)
    }

    pub fn json<T: DeserializeOwned>(&mut self, role: &str, path: &Path) -> CliResult<T> {
        let text = self.read(role, path)?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("--{role} {}: {e}", path.display())))
    }

    /// A builtin name (`trivial`, `z2`, `left_zero`, `cyclic3`, ...) or a monoid file.
    pub fn monoid(&mut self, spec: &str) -> CliResult<Arc<FiniteMonoid>> {
        if let Some(m) = builtin_monoid(spec) {
            self.refs.push(InputRef {
                role: "monoid".into(),
                path: format!("builtin:{spec}"),
                sha256: String::new(),
            });
            return Ok(Arc::new(m));
        }
        let path = Path::new(spec);
        if !path.exists() {
            return Err(CliError::Usage(format!(
                "--monoid: {spec:?} is neither a file nor one of {BUILTIN_MONOIDS:?}"
            )));
        }
        let file: MonoidFile = self.json("monoid", path)?;
        Ok(Arc::new(FiniteMonoid::from_file(file)?))
    }

    fn monoid_ref(&mut self, r: MonoidRef, base: &Path) -> CliResult<Arc<FiniteMonoid>> {
        match r {
            MonoidRef::Inline(file) => Ok(Arc::new(FiniteMonoid::from_file(file)?)),
            MonoidRef::Path(p) => {
                if let Some(m) = builtin_monoid(&p) {
                    return Ok(Arc::new(m));
                }
                let path: PathBuf = base.parent().unwrap_or(Path::new(".")).join(&p);
                let file: MonoidFile = self.json("monoid", &path)?;
                Ok(Arc::new(FiniteMonoid::from_file(file)?))
            }
        }
    }

    /// An M-set file or a unary algebra file, not yet tied to a monoid.
    pub fn mset_source(&mut self, role: &str, path: &Path) -> CliResult<MSetSource> {
        let value: serde_json::Value = self.json(role, path)?;
        if value.get("alphabet").is_some() {
            let file: UnaryAlgebraFile = serde_json::from_value(value)
                .map_err(|e| CliError::Input(format!("--{role} {}: {e}", path.display())))?;
            return Ok(MSetSource::Algebra(file.into_algebra()?));
        }
        let file: MSetFile = serde_json::from_value(value)
            .map_err(|e| CliError::Input(format!("--{role} {}: {e}", path.display())))?;
        let monoid = self.monoid_ref(file.monoid.clone(), path)?;
        let (m, order) = file.into_mset(monoid)?;
        Ok(MSetSource::MSet(m, order))
    }

    pub fn chain(&mut self, role: &str, path: &Path) -> CliResult<Chain> {
        let labels: Vec<serde_json::Value> = self.json(role, path)?;
        Ok(Chain::new(labels.iter().map(mset_ramsey::chains::label_of).collect())?)
    }

    pub fn forest(&mut self, role: &str, path: &Path) -> CliResult<RootedForest> {
        let file: ForestFile = self.json(role, path)?;
        Ok(file.into_forest()?)
    }
}

pub fn builtin_monoid(name: &str) -> Option<FiniteMonoid> {
    match name {
        "trivial" => Some(FiniteMonoid::trivial()),
        "z2" => Some(FiniteMonoid::z2()),
        "left_zero" => Some(FiniteMonoid::left_zero_with_identity()),
        _ => name
            .strip_prefix("cyclic")
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| n >= 1)
            .map(FiniteMonoid::cyclic),
    }
}

pub enum MSetSource {
    MSet(MSet, Option<Vec<usize>>),
    Algebra(UnaryAlgebra),
}

/// Puts all sources over one monoid. Unary algebras share the transformation
/// monoid of their disjoint union; mixing them with M-set files is refused.
pub fn unify(sources: Vec<MSetSource>, cap: usize) -> CliResult<Vec<(MSet, Option<Vec<usize>>)>> {
    let algebras: Vec<&UnaryAlgebra> = sources
        .iter()
        .filter_map(|s| match s {
            MSetSource::Algebra(a) => Some(a),
            _ => None,
        })
        .collect();
    if algebras.is_empty() {
        let out: Vec<_> = sources
            .into_iter()
            .map(|s| match s {
                MSetSource::MSet(m, o) => (m, o),
                MSetSource::Algebra(_) => unreachable!(),
            })
            .collect();
        if let Some((first, _)) = out.first() {
            if out.iter().any(|(m, _)| m.monoid() != first.monoid()) {
                return Err(CliError::Core(Error::MonoidMismatch));
            }
        }
        return Ok(out);
    }
    if algebras.len() != sources.len() {
        return Err(CliError::Input(
            "cannot mix unary algebra files with M-set files in one run".into(),
        ));
    }
    let tm = TransformationMonoid::generate(&algebras, cap)?;
    algebras
        .iter()
        .enumerate()
        .map(|(i, a)| Ok((tm.mset(i, a)?, a.order().map(<[usize]>::to_vec))))
        .collect()
}

pub fn ordered(m: MSet, order: Option<Vec<usize>>) -> CliResult<OrderedMSet> {
    Ok(match order {
        Some(o) => OrderedMSet::new(m, o)?,
        None => OrderedMSet::index_ordered(m),
    })
}

/// Structures for a Ramsey context, plus the monoid they live over.
pub fn context_structures(
    inputs: &mut Inputs,
    ctx: &str,
    files: &[(&str, &Path)],
    cap: usize,
) -> CliResult<(Vec<Structure>, Option<Arc<FiniteMonoid>>)> {
    match ctx {
        "chains" => {
            let mut out = Vec::new();
            for (role, p) in files {
                out.push(Structure::chain(inputs.chain(role, p)?.len()));
            }
            Ok((out, None))
        }
        "msets" | "ordered_msets" => {
            let mut sources = Vec::new();
            for (role, p) in files {
                sources.push(inputs.mset_source(role, p)?);
            }
            let unified = unify(sources, cap)?;
            let monoid = unified.first().map(|(m, _)| m.monoid().clone());
            let mut out = Vec::new();
            for (m, o) in unified {
                out.push(if ctx == "msets" {
                    m.to_structure()
                } else {
                    ordered(m, o)?.to_structure()
                });
            }
            Ok((out, monoid))
        }
        "forests" | "rooted_forests" => {
            let mut out = Vec::new();
            for (role, p) in files {
                let f = inputs.forest(role, p)?;
                let f = if ctx == "forests" {
                    if f.order().is_none() {
                        let n = f.len();
                        RootedForest::new(f.labels().to_vec(), f.parent().to_vec(), Some((0..n).collect()))?
                    } else {
                        f
                    }
                } else {
                    f.forget_order()
                };
                out.push(f.to_structure());
            }
            Ok((out, None))
        }
        other => Err(CliError::Usage(format!(
            "--ctx: unknown context {other:?}; expected one of {:?}",
            mset_ramsey::ramsey::CONTEXT_NAMES
        ))),
    }
}
