//! Order expansions: forgetting orders, fibers of all orderings, restriction
//! along embeddings, reasonableness, and the fiber-sum bound on degrees.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::embed::{self, Structure};
use crate::error::{Error, Result};
use crate::monoid::invert;
use crate::mset::{MSet, OrderedMSet};

pub fn forget_order(a: &OrderedMSet) -> MSet {
    a.base().clone()
}

/// Every linear order on `0..n`, least element first, in lexicographic order.
pub fn fiber_orders(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

/// All `|A|!` orderings of `a`.
pub fn fibers(a: &MSet) -> Vec<OrderedMSet> {
    fiber_orders(a.len())
        .into_iter()
        .map(|o| OrderedMSet::new(a.clone(), o).expect("permutation"))
        .collect()
}

/// The order on `a`'s carrier pulled back from `b_order` through `e`.
pub fn pullback_order(b_order: &[usize], e: &[usize]) -> Vec<usize> {
    let rank = invert(b_order);
    (0..e.len()).sorted_by_key(|&x| rank[e[x]]).collect()
}

/// Restriction of the ordered structure `b_star` along an embedding
/// `e : a → U(b_star)`: the unique order on `a` making `e` monotone.
pub fn restrict_structure(b_star: &Structure, a: &Structure, e: &[usize]) -> Result<Structure> {
    let b_order = b_star
        .order
        .as_ref()
        .ok_or_else(|| Error::Invalid("restriction needs an ordered target".into()))?;
    if !embed::is_embedding(a, &b_star.forget_order(), e) {
        return Err(Error::NotAnEmbedding(format!("{e:?}")));
    }
    let order = pullback_order(b_order, e);
    let a_star = Structure {
        order: Some(order),
        ..a.clone()
    };
    debug_assert!(embed::is_embedding(&a_star, b_star, e));
    Ok(a_star)
}

/// Number of orderings of `a` along which `e` is an order-embedding into `b_star`.
pub fn admitting_orders(b_star: &Structure, a: &Structure, e: &[usize]) -> usize {
    fiber_orders(a.size)
        .into_iter()
        .filter(|o| {
            let a_star = Structure {
                order: Some(o.clone()),
                ..a.clone()
            };
            embed::is_embedding(&a_star, b_star, e)
        })
        .count()
}

pub fn restrict_along(b_star: &OrderedMSet, a: &MSet, e: &[usize]) -> Result<OrderedMSet> {
    crate::mset::same_monoid(b_star.monoid(), a.monoid())?;
    let s = restrict_structure(&b_star.to_structure(), &a.to_structure(), e)?;
    OrderedMSet::new(a.clone(), s.order.expect("ordered"))
}

/// An ordering of `b` extending `a_order` along `e`: the image of `a` in
/// `a_order`'s order, then the rest of `b` by index.
pub fn extend_order(a_order: &[usize], e: &[usize], b_size: usize) -> Vec<usize> {
    let mut order: Vec<usize> = a_order.iter().map(|&x| e[x]).collect();
    order.extend((0..b_size).filter(|y| !e.contains(y)));
    order
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReasonableReport {
    pub reasonable: bool,
    pub checked: usize,
    /// `(instance index, ordering of A)` with no extension.
    pub witness: Option<(usize, Vec<usize>)>,
}

/// For each `(a, b, e)` and each ordering of `a`, exhibits an ordering of `b`
/// making `e` monotone.
pub fn check_reasonable(instances: &[(Structure, Structure, Vec<usize>)]) -> ReasonableReport {
    let mut checked = 0;
    for (i, (a, b, e)) in instances.iter().enumerate() {
        for o in fiber_orders(a.size) {
            checked += 1;
            let a_star = Structure {
                order: Some(o.clone()),
                ..a.clone()
            };
            let b_star = Structure {
                order: Some(extend_order(&o, e, b.size)),
                ..b.clone()
            };
            if !embed::is_embedding(&a_star, &b_star, e) {
                return ReasonableReport {
                    reasonable: false,
                    checked,
                    witness: Some((i, o)),
                };
            }
        }
    }
    ReasonableReport {
        reasonable: true,
        checked,
        witness: None,
    }
}

/// `Σ` of the degrees over the whole fiber of an `n`-element object; every
/// ordering of `0..n` must appear.
pub fn degree_sum_bound(n: usize, degrees: &[(Vec<usize>, usize)]) -> Result<usize> {
    let map: BTreeMap<&[usize], usize> = degrees.iter().map(|(o, d)| (o.as_slice(), *d)).collect();
    let mut total = 0usize;
    for o in fiber_orders(n) {
        match map.get(o.as_slice()) {
            Some(d) => total = total.saturating_add(*d),
            None => return Err(Error::IncompleteFiber(o)),
        }
    }
    Ok(total)
}
