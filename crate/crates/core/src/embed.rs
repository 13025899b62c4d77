//! One embedding engine for every category in the workbench.
//!
//! Chains, M-sets, unary algebras and rooted forests are all finite sets with
//! a list of self-maps ("operations") and an optional linear order. An
//! embedding is an injective map commuting with every operation and, when
//! both sides are ordered, strictly increasing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::invert;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Structure {
    pub size: usize,
    pub ops: Vec<Vec<usize>>,
    /// Carrier elements from least to greatest.
    pub order: Option<Vec<usize>>,
}

impl Structure {
    pub fn new(size: usize, ops: Vec<Vec<usize>>, order: Option<Vec<usize>>) -> Result<Self> {
        for op in &ops {
            if op.len() != size {
                return Err(Error::DimensionMismatch {
                    what: "operation table".into(),
                    expected: size,
                    found: op.len(),
                });
            }
            if let Some(&bad) = op.iter().find(|&&x| x >= size) {
                return Err(Error::OutOfRange {
                    what: "operation value".into(),
                    index: bad,
                    size,
                });
            }
        }
        if let Some(order) = &order {
            check_permutation(order, size)?;
        }
        Ok(Self { size, ops, order })
    }

    /// The chain `0 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self {
            size: n,
            ops: Vec::new(),
            order: Some((0..n).collect()),
        }
    }

    pub fn is_ordered(&self) -> bool {
        self.order.is_some()
    }

    pub fn rank(&self) -> Option<Vec<usize>> {
        self.order.as_ref().map(|o| invert(o))
    }

    pub fn forget_order(&self) -> Self {
        Self {
            size: self.size,
            ops: self.ops.clone(),
            order: None,
        }
    }

    /// Disjoint union; when both are ordered, all of `self` precedes `other`.
    pub fn disjoint_union(&self, other: &Structure) -> Result<Self> {
        if self.ops.len() != other.ops.len() || self.is_ordered() != other.is_ordered() {
            return Err(Error::SignatureMismatch("disjoint union".into()));
        }
        let n = self.size;
        let ops = self
            .ops
            .iter()
            .zip(&other.ops)
            .map(|(p, q)| p.iter().copied().chain(q.iter().map(|&x| x + n)).collect())
            .collect();
        let order = match (&self.order, &other.order) {
            (Some(p), Some(q)) => Some(p.iter().copied().chain(q.iter().map(|&x| x + n)).collect()),
            _ => None,
        };
        Ok(Self {
            size: n + other.size,
            ops,
            order,
        })
    }

    /// Smallest subset containing `seed` closed under every operation, in increasing index order.
    pub fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.size];
        let mut stack: Vec<usize> = Vec::new();
        for &s in seed {
            if !inside[s] {
                inside[s] = true;
                stack.push(s);
            }
        }
        while let Some(x) = stack.pop() {
            for op in &self.ops {
                let y = op[x];
                if !inside[y] {
                    inside[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.size).filter(|&x| inside[x]).collect()
    }

    /// Restriction to a closed subset; returns the substructure and its inclusion map.
    pub fn substructure(&self, subset: &[usize]) -> Result<(Structure, Vec<usize>)> {
        let mut pos = vec![usize::MAX; self.size];
        for (i, &x) in subset.iter().enumerate() {
            pos[x] = i;
        }
        let mut ops = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let mut row = Vec::with_capacity(subset.len());
            for &x in subset {
                let y = pos[op[x]];
                if y == usize::MAX {
                    return Err(Error::Invalid(format!("subset is not closed at element {x}")));
                }
                row.push(y);
            }
            ops.push(row);
        }
        let order = self
            .order
            .as_ref()
            .map(|o| o.iter().filter(|&&x| pos[x] != usize::MAX).map(|&x| pos[x]).collect());
        Ok((
            Structure {
                size: subset.len(),
                ops,
                order,
            },
            subset.to_vec(),
        ))
    }
}

pub(crate) fn check_permutation(order: &[usize], size: usize) -> Result<()> {
    if order.len() != size {
        return Err(Error::BadOrder(format!("{} entries for {} elements", order.len(), size)));
    }
    let mut seen = vec![false; size];
    for &x in order {
        if x >= size || std::mem::replace(&mut seen[x], true) {
            return Err(Error::BadOrder(format!("entry {x} repeated or out of range")));
        }
    }
    Ok(())
}

fn check_signature(a: &Structure, b: &Structure) -> Result<()> {
    if a.ops.len() != b.ops.len() {
        return Err(Error::SignatureMismatch(format!(
            "{} operations vs {}",
            a.ops.len(),
            b.ops.len()
        )));
    }
    if a.is_ordered() != b.is_ordered() {
        return Err(Error::SignatureMismatch("ordered vs unordered".into()));
    }
    Ok(())
}

/// Commutes with every operation.
pub fn is_homomorphism(a: &Structure, b: &Structure, map: &[usize]) -> bool {
    map.len() == a.size
        && map.iter().all(|&y| y < b.size)
        && a.ops.len() == b.ops.len()
        && a.ops
            .iter()
            .zip(&b.ops)
            .all(|(p, q)| (0..a.size).all(|x| map[p[x]] == q[map[x]]))
}

/// Injective homomorphism, strictly increasing when both sides are ordered.
pub fn is_embedding(a: &Structure, b: &Structure, map: &[usize]) -> bool {
    if !is_homomorphism(a, b, map) {
        return false;
    }
    let mut seen = vec![false; b.size];
    if map.iter().any(|&y| std::mem::replace(&mut seen[y], true)) {
        return false;
    }
    match (a.rank(), b.rank()) {
        (Some(ra), Some(rb)) => {
            (0..a.size).all(|x| (0..a.size).all(|y| (ra[x] < ra[y]) == (rb[map[x]] < rb[map[y]])))
        }
        _ => true,
    }
}

struct Search<'a> {
    a: &'a Structure,
    b: &'a Structure,
    rank_a: Option<Vec<usize>>,
    rank_b: Option<Vec<usize>>,
    assigned: Vec<Option<usize>>,
    used: Vec<bool>,
    trail: Vec<usize>,
    visit: Vec<usize>,
    b_order: Vec<usize>,
    out: Vec<Vec<usize>>,
    limit: usize,
}

impl Search<'_> {
    /// Assigns `x -> y` and everything it forces; on conflict leaves the trail
    /// to be unwound by the caller and returns false.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            match self.assigned[x] {
                Some(z) if z == y => continue,
                Some(_) => return false,
                None => {}
            }
            if self.used[y] {
                return false;
            }
            if let (Some(ra), Some(rb)) = (&self.rank_a, &self.rank_b) {
                for &x2 in &self.trail {
                    let y2 = self.assigned[x2].expect("trail entries are assigned");
                    if (ra[x] < ra[x2]) != (rb[y] < rb[y2]) {
                        return false;
                    }
                }
            }
            self.assigned[x] = Some(y);
            self.used[y] = true;
            self.trail.push(x);
            for (p, q) in self.a.ops.iter().zip(&self.b.ops) {
                queue.push((p[x], q[y]));
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("trail");
            let y = self.assigned[x].take().expect("assigned");
            self.used[y] = false;
        }
    }

    fn run(&mut self, depth: usize) {
        if self.out.len() >= self.limit {
            return;
        }
        let next = self.visit[depth..].iter().position(|&x| self.assigned[x].is_none());
        let Some(offset) = next else {
            self.out.push(self.assigned.iter().map(|y| y.expect("complete")).collect());
            return;
        };
        let x = self.visit[depth + offset];
        for i in 0..self.b_order.len() {
            let y = self.b_order[i];
            if self.used[y] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(x, y) {
                self.run(depth + offset + 1);
            }
            self.undo_to(mark);
        }
    }
}

/// All embeddings `a -> b`, sorted lexicographically by the targets' positions
/// listed along the source order.
pub fn embeddings(a: &Structure, b: &Structure) -> Result<Vec<Vec<usize>>> {
    embeddings_limited(a, b, usize::MAX)
}

/// Like [`embeddings`] but stops after `limit` results (before sorting).
pub fn embeddings_limited(a: &Structure, b: &Structure, limit: usize) -> Result<Vec<Vec<usize>>> {
    check_signature(a, b)?;
    let visit = a.order.clone().unwrap_or_else(|| (0..a.size).collect());
    let b_order = b.order.clone().unwrap_or_else(|| (0..b.size).collect());
    let mut search = Search {
        a,
        b,
        rank_a: a.rank(),
        rank_b: b.rank(),
        assigned: vec![None; a.size],
        used: vec![false; b.size],
        trail: Vec::new(),
        visit: visit.clone(),
        b_order,
        out: Vec::new(),
        limit,
    };
    if a.size <= b.size {
        search.run(0);
    }
    let rank_b = b.rank().unwrap_or_else(|| (0..b.size).collect());
    let mut out = search.out;
    out.sort_by_cached_key(|m| visit.iter().map(|&x| rank_b[m[x]]).collect::<Vec<_>>());
    Ok(out)
}
