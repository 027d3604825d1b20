use std::collections::HashMap;

use serde::Serialize;

use super::structure::Structure;
use crate::budget::Budget;
use crate::category::{CategorySpec, FinCategory};
use crate::error::{Error, Result};

/// A cocone over a span: `c` with embeddings `e1: b1 -> c`, `e2: b2 -> c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Amalgam {
    pub c: Structure,
    pub e1: Vec<usize>,
    pub e2: Vec<usize>,
}

/// A class of finite structures closed under isomorphism, with a chosen
/// notion of embedding.
pub trait AmalgamationClass {
    fn name(&self) -> &str;

    fn contains(&self, s: &Structure) -> bool;

    /// Bound used by [`verify_class_properties`] when none is given.
    fn default_bound(&self) -> usize;

    /// One representative per isomorphism type of size `n`.
    fn structures(&self, n: usize) -> Vec<Structure>;

    fn is_embedding(&self, a: &Structure, b: &Structure, map: &[usize]) -> bool {
        a.is_embedding_into(b, map)
    }

    fn embeddings(&self, a: &Structure, b: &Structure) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut map = Vec::with_capacity(a.size());
        let mut used = vec![false; b.size()];
        embed_search(a, b, &mut map, &mut used, &mut out);
        out.retain(|m| self.is_embedding(a, b, m));
        out
    }

    /// Smallest amalgam found by searching the class in size order.
    fn amalgamate(
        &self,
        a: &Structure,
        b1: &Structure,
        j1: &[usize],
        b2: &Structure,
        j2: &[usize],
    ) -> Option<Amalgam> {
        search_amalgam(self, a, b1, j1, b2, j2)
    }

    /// Extends `m` by one element realising `b` over `m|s`, where `b` has
    /// `m|s` on `0..s.len()` and the new point last. `None` when the class
    /// does not support chain construction.
    fn chain_amalgam(&self, _m: &Structure, _s: &[usize], _b: &Structure) -> Option<Structure> {
        None
    }
}

fn embed_search(
    a: &Structure,
    b: &Structure,
    map: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let i = map.len();
    if i == a.size() {
        out.push(map.clone());
        return;
    }
    for y in 0..b.size() {
        if used[y] || a.rel(i, i) != b.rel(y, y) {
            continue;
        }
        if (0..i).all(|k| a.rel(i, k) == b.rel(y, map[k]) && a.rel(k, i) == b.rel(map[k], y)) {
            used[y] = true;
            map.push(y);
            embed_search(a, b, map, used, out);
            map.pop();
            used[y] = false;
        }
    }
}

/// Tries every carrier size from the larger leg up to the disjoint sum.
pub fn search_amalgam<C: AmalgamationClass + ?Sized>(
    class: &C,
    a: &Structure,
    b1: &Structure,
    j1: &[usize],
    b2: &Structure,
    j2: &[usize],
) -> Option<Amalgam> {
    let lo = b1.size().max(b2.size());
    let hi = b1.size() + b2.size() - a.size();
    for n in lo..=hi {
        for c in class.structures(n) {
            let e1s = class.embeddings(b1, &c);
            let e2s = class.embeddings(b2, &c);
            for e1 in &e1s {
                for e2 in &e2s {
                    if (0..a.size()).all(|x| e1[j1[x]] == e2[j2[x]]) {
                        return Some(Amalgam {
                            c,
                            e1: e1.clone(),
                            e2: e2.clone(),
                        });
                    }
                }
            }
        }
    }
    None
}

pub fn is_linear_order(s: &Structure) -> bool {
    let n = s.size();
    (0..n).all(|i| !s.rel(i, i))
        && (0..n).all(|i| (0..n).all(|j| i == j || s.rel(i, j) != s.rel(j, i)))
        && (0..n).all(|i| {
            (0..n).all(|j| !s.rel(i, j) || (0..n).all(|k| !s.rel(j, k) || s.rel(i, k)))
        })
}

pub fn is_graph(s: &Structure) -> bool {
    let n = s.size();
    (0..n).all(|i| !s.rel(i, i) && (0..n).all(|j| s.rel(i, j) == s.rel(j, i)))
}

/// Finite linear orders with order embeddings.
#[derive(Debug, Clone, Copy, Default)]
pub struct LinearOrders;

impl AmalgamationClass for LinearOrders {
    fn name(&self) -> &str {
        "linord"
    }

    fn contains(&self, s: &Structure) -> bool {
        is_linear_order(s)
    }

    fn default_bound(&self) -> usize {
        6
    }

    fn structures(&self, n: usize) -> Vec<Structure> {
        vec![Structure::chain(n)]
    }

    /// Disjoint merge over `a`; inside each gap of `a` the points of `b1`
    /// come before the points of `b2`.
    fn amalgamate(
        &self,
        _a: &Structure,
        b1: &Structure,
        j1: &[usize],
        b2: &Structure,
        j2: &[usize],
    ) -> Option<Amalgam> {
        let below = |b: &Structure, j: &[usize], x: usize| j.iter().filter(|&&y| b.rel(y, x)).count();
        let rank = |b: &Structure, x: usize| (0..b.size()).filter(|&y| b.rel(y, x)).count();
        let mut in_a1 = vec![None; b1.size()];
        for (k, &y) in j1.iter().enumerate() {
            in_a1[y] = Some(k);
        }
        let in_a2: Vec<bool> = (0..b2.size()).map(|y| j2.contains(&y)).collect();
        // (sort key, leg, element)
        let mut points: Vec<((usize, usize, usize), usize, usize)> = Vec::new();
        for x in 0..b1.size() {
            let g = below(b1, j1, x);
            let key = if in_a1[x].is_some() {
                (2 * g + 1, 0, 0)
            } else {
                (2 * g, 0, rank(b1, x))
            };
            points.push((key, 1, x));
        }
        for y in (0..b2.size()).filter(|&y| !in_a2[y]) {
            points.push(((2 * below(b2, j2, y), 1, rank(b2, y)), 2, y));
        }
        points.sort();
        let c = Structure::chain(points.len());
        let mut e1 = vec![0; b1.size()];
        let mut e2 = vec![0; b2.size()];
        for (pos, &(_, leg, x)) in points.iter().enumerate() {
            if leg == 1 {
                e1[x] = pos;
            } else {
                e2[x] = pos;
            }
        }
        for (k, &y) in j2.iter().enumerate() {
            e2[y] = e1[j1[k]];
        }
        Some(Amalgam { c, e1, e2 })
    }

    /// The new point goes immediately after its greatest lower bound in `s`,
    /// or first when it has none.
    fn chain_amalgam(&self, m: &Structure, s: &[usize], b: &Structure) -> Option<Structure> {
        let p = s.len();
        let lower = (0..p)
            .filter(|&i| b.rel(i, p))
            .map(|i| s[i])
            .max_by_key(|&x| (0..m.size()).filter(|&y| m.rel(y, x)).count());
        let n = m.size();
        let below: Vec<bool> = (0..n)
            .map(|x| match lower {
                Some(l) => x == l || m.rel(x, l),
                None => false,
            })
            .collect();
        let above: Vec<bool> = below.iter().map(|b| !b).collect();
        let mut out = m.clone();
        out.push(&above, &below, false);
        Some(out)
    }
}

/// Finite simple graphs with induced embeddings.
///
/// The chain amalgam adds no edges beyond the required ones, except that
/// every element whose index is `hub_period - 1` modulo `hub_period` is
/// joined to all older elements it is not required to avoid.
#[derive(Debug, Clone, Copy)]
pub struct Graphs {
    pub hub_period: usize,
}

impl Default for Graphs {
    fn default() -> Self {
        Graphs { hub_period: 50 }
    }
}

/// Least relabelling of a structure, as a representative of its type.
fn canonical(s: &Structure) -> Structure {
    let n = s.size();
    let mut best: Option<Structure> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let t = s.permute(&perm);
        if best.as_ref().is_none_or(|b| t < *b) {
            best = Some(t);
        }
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return best.unwrap_or_default();
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

impl AmalgamationClass for Graphs {
    fn name(&self) -> &str {
        "graph"
    }

    fn contains(&self, s: &Structure) -> bool {
        is_graph(s)
    }

    fn default_bound(&self) -> usize {
        4
    }

    fn structures(&self, n: usize) -> Vec<Structure> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let mut out: Vec<Structure> = (0u64..1 << pairs.len())
            .map(|mask| {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .flat_map(|(_, &(i, j))| [(i, j), (j, i)])
                    .collect();
                canonical(&Structure::from_pairs(n, &edges))
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Disjoint union over `a` with no extra edges.
    fn amalgamate(
        &self,
        _a: &Structure,
        b1: &Structure,
        j1: &[usize],
        b2: &Structure,
        j2: &[usize],
    ) -> Option<Amalgam> {
        let mut e2 = vec![usize::MAX; b2.size()];
        for (k, &y) in j2.iter().enumerate() {
            e2[y] = j1[k];
        }
        let mut next = b1.size();
        for slot in e2.iter_mut().filter(|v| **v == usize::MAX) {
            *slot = next;
            next += 1;
        }
        let mut edges = b1.pairs();
        edges.extend(b2.pairs().into_iter().map(|(x, y)| (e2[x], e2[y])));
        Some(Amalgam {
            c: Structure::from_pairs(next, &edges),
            e1: (0..b1.size()).collect(),
            e2,
        })
    }

    fn chain_amalgam(&self, m: &Structure, s: &[usize], b: &Structure) -> Option<Structure> {
        let n = m.size();
        let p = s.len();
        let hub = self.hub_period > 0 && n % self.hub_period == self.hub_period - 1;
        let mut adj = vec![hub; n];
        for &x in s {
            adj[x] = false;
        }
        for (i, &x) in s.iter().enumerate() {
            adj[x] = b.rel(p, i);
        }
        let mut out = m.clone();
        out.push(&adj, &adj, false);
        Some(out)
    }
}

/// Linear orders where embeddings must land on an initial segment.
#[derive(Debug, Clone, Copy, Default)]
pub struct InitialSegmentOrders;

impl AmalgamationClass for InitialSegmentOrders {
    fn name(&self) -> &str {
        "initial-segment-linord"
    }

    fn contains(&self, s: &Structure) -> bool {
        is_linear_order(s)
    }

    fn default_bound(&self) -> usize {
        4
    }

    fn structures(&self, n: usize) -> Vec<Structure> {
        vec![Structure::chain(n)]
    }

    fn is_embedding(&self, a: &Structure, b: &Structure, map: &[usize]) -> bool {
        a.is_embedding_into(b, map)
            && (0..b.size()).all(|y| {
                map.contains(&y) || map.iter().all(|&x| b.rel(x, y))
            })
    }
}

/// Linear orders of at most `max_size` elements.
#[derive(Debug, Clone, Copy)]
pub struct BoundedLinearOrders {
    pub max_size: usize,
}

impl AmalgamationClass for BoundedLinearOrders {
    fn name(&self) -> &str {
        "bounded-linord"
    }

    fn contains(&self, s: &Structure) -> bool {
        s.size() <= self.max_size && is_linear_order(s)
    }

    fn default_bound(&self) -> usize {
        self.max_size
    }

    fn structures(&self, n: usize) -> Vec<Structure> {
        if n <= self.max_size {
            vec![Structure::chain(n)]
        } else {
            Vec::new()
        }
    }
}

/// A span `b1 <- a -> b2` of structures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Span {
    pub a: Structure,
    pub b1: Structure,
    pub j1: Vec<usize>,
    pub b2: Structure,
    pub j2: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub class: String,
    pub bound: usize,
    pub amalgamation: bool,
    pub amalgamation_failure: Option<Span>,
    pub spans_checked: usize,
    pub joint_embedding: bool,
    pub joint_embedding_failure: Option<(Structure, Structure)>,
    pub pairs_checked: usize,
}

impl ClassReport {
    pub fn holds(&self) -> bool {
        self.amalgamation && self.joint_embedding
    }
}

fn valid_amalgam<C: AmalgamationClass + ?Sized>(class: &C, span: &Span, am: &Amalgam) -> bool {
    class.contains(&am.c)
        && class.is_embedding(&span.b1, &am.c, &am.e1)
        && class.is_embedding(&span.b2, &am.c, &am.e2)
        && (0..span.a.size()).all(|x| am.e1[span.j1[x]] == am.e2[span.j2[x]])
}

/// Checks every span and every pair of structures of size at most `n`.
/// Every amalgam the class proposes is re-checked before it is accepted.
pub fn verify_class_properties<C: AmalgamationClass + ?Sized>(
    class: &C,
    n: usize,
    budget: &Budget,
) -> Result<ClassReport> {
    Budget::guard("class verification bound", n, 8)?;
    let all: Vec<Structure> = (0..=n).flat_map(|k| class.structures(k)).collect();
    Budget::guard("structures for class verification", all.len(), budget.max_elements * 64)?;
    let mut embeddings: HashMap<(usize, usize), Vec<Vec<usize>>> = HashMap::new();
    for (i, a) in all.iter().enumerate() {
        for (k, b) in all.iter().enumerate() {
            if a.size() <= b.size() {
                embeddings.insert((i, k), class.embeddings(a, b));
            }
        }
    }

    let mut spans_checked = 0;
    let mut amalgamation_failure = None;
    'ap: for (ia, a) in all.iter().enumerate() {
        for (i1, b1) in all.iter().enumerate() {
            let Some(j1s) = embeddings.get(&(ia, i1)) else { continue };
            for (i2, b2) in all.iter().enumerate() {
                let Some(j2s) = embeddings.get(&(ia, i2)) else { continue };
                for j1 in j1s {
                    for j2 in j2s {
                        spans_checked += 1;
                        Budget::guard("spans checked", spans_checked, budget.max_search)?;
                        let span = Span {
                            a: a.clone(),
                            b1: b1.clone(),
                            j1: j1.clone(),
                            b2: b2.clone(),
                            j2: j2.clone(),
                        };
                        let ok = class
                            .amalgamate(a, b1, j1, b2, j2)
                            .is_some_and(|am| valid_amalgam(class, &span, &am));
                        if !ok {
                            amalgamation_failure = Some(span);
                            break 'ap;
                        }
                    }
                }
            }
        }
    }

    let empty = Structure::empty();
    let mut pairs_checked = 0;
    let mut joint_embedding_failure = None;
    'jep: for b1 in &all {
        for b2 in &all {
            pairs_checked += 1;
            let span = Span {
                a: empty.clone(),
                b1: b1.clone(),
                j1: vec![],
                b2: b2.clone(),
                j2: vec![],
            };
            let ok = class.contains(&empty)
                && class
                    .amalgamate(&empty, b1, &[], b2, &[])
                    .is_some_and(|am| valid_amalgam(class, &span, &am));
            if !ok {
                joint_embedding_failure = Some((b1.clone(), b2.clone()));
                break 'jep;
            }
        }
    }

    Ok(ClassReport {
        class: class.name().to_string(),
        bound: n,
        amalgamation: amalgamation_failure.is_none(),
        amalgamation_failure,
        spans_checked,
        joint_embedding: joint_embedding_failure.is_none(),
        joint_embedding_failure,
        pairs_checked,
    })
}

/// The category whose objects are the structures of size at most `n` (one
/// per type) and whose arrows are the class embeddings between them.
pub fn truncation_category<C: AmalgamationClass + ?Sized>(
    class: &C,
    n: usize,
    budget: &Budget,
) -> Result<(FinCategory, Vec<Structure>)> {
    let objs: Vec<Structure> = (0..=n).flat_map(|k| class.structures(k)).collect();
    Budget::guard("truncation objects", objs.len(), budget.max_objects)?;
    let name = |i: usize| format!("s{}_{}", objs[i].size(), i);
    // (source, target, map, arrow name)
    let mut arrows: Vec<(usize, usize, Vec<usize>, String)> = Vec::new();
    let mut spec = CategorySpec::new();
    for i in 0..objs.len() {
        spec = spec.object(&name(i));
    }
    for (i, a) in objs.iter().enumerate() {
        for (k, b) in objs.iter().enumerate() {
            for m in class.embeddings(a, b) {
                let is_id = i == k && m.iter().enumerate().all(|(x, &y)| x == y);
                let label = if is_id {
                    crate::category::identity_name(&name(i))
                } else {
                    format!("e{}", arrows.len())
                };
                if !is_id {
                    spec = spec.arrow(&label, &name(i), &name(k));
                }
                arrows.push((i, k, m, label));
                Budget::guard("truncation arrows", arrows.len(), budget.max_arrows)?;
            }
        }
    }
    for (s1, t1, m1, n1) in &arrows {
        for (s2, t2, m2, n2) in &arrows {
            // n2 . n1 when target(n1) = source(n2)
            if t1 != s2 || n1.starts_with("id_") || n2.starts_with("id_") {
                continue;
            }
            let composite: Vec<usize> = m1.iter().map(|&y| m2[y]).collect();
            let (_, _, _, h) = arrows
                .iter()
                .find(|(s, t, m, _)| s == s1 && t == t2 && *m == composite)
                .ok_or_else(|| Error::Malformed("embeddings do not compose".into()))?;
            spec = spec.compose(n2, n1, h);
        }
    }
    Ok((crate::category::build_category(&spec, budget)?, objs))
}
