use serde::Serialize;

use super::chain::LimitChain;
use super::structure::Structure;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialIso {
    /// `(x, y)` pairs sorted by `x`.
    pub pairs: Vec<(usize, usize)>,
    pub nodes: usize,
}

/// Search nodes allowed before giving up.
pub const DEFAULT_NODE_LIMIT: usize = 2_000_000;

#[derive(Clone, Copy)]
enum Side {
    Forth,
    Back,
}

struct Search<'a> {
    m1: &'a Structure,
    m2: &'a Structure,
    fwd: Vec<Option<usize>>,
    bwd: Vec<Option<usize>>,
    order: Vec<(usize, usize)>,
    nodes: usize,
    limit: usize,
    deepest: Vec<(usize, usize)>,
}

impl Search<'_> {
    fn consistent(&self, x: usize, y: usize) -> bool {
        self.m1.rel(x, x) == self.m2.rel(y, y)
            && self.order.iter().all(|&(a, b)| {
                self.m1.rel(x, a) == self.m2.rel(y, b) && self.m1.rel(a, x) == self.m2.rel(b, y)
            })
    }

    /// Images available for `x` (forth) or preimages for `y` (back).
    fn candidates(&self, side: Side, e: usize) -> Vec<usize> {
        match side {
            Side::Forth => (0..self.m2.size())
                .filter(|&y| self.bwd[y].is_none() && self.consistent(e, y))
                .collect(),
            Side::Back => (0..self.m1.size())
                .filter(|&x| self.fwd[x].is_none() && self.consistent(x, e))
                .collect(),
        }
    }

    fn next_goal(&self, k: usize) -> Option<(Side, usize)> {
        (0..k).find_map(|i| {
            if self.fwd[i].is_none() {
                Some((Side::Forth, i))
            } else if self.bwd[i].is_none() {
                Some((Side::Back, i))
            } else {
                None
            }
        })
    }

    fn set(&mut self, x: usize, y: usize) {
        self.fwd[x] = Some(y);
        self.bwd[y] = Some(x);
        self.order.push((x, y));
        if self.order.len() > self.deepest.len() {
            self.deepest = self.order.clone();
        }
    }

    fn unset(&mut self, x: usize, y: usize) {
        self.fwd[x] = None;
        self.bwd[y] = None;
        self.order.pop();
    }

    /// Every outstanding goal still has a candidate.
    fn viable(&self, k: usize) -> bool {
        (0..k).all(|i| {
            (self.fwd[i].is_some() || !self.candidates(Side::Forth, i).is_empty())
                && (self.bwd[i].is_some() || !self.candidates(Side::Back, i).is_empty())
        })
    }

    fn run(&mut self, k: usize) -> Option<bool> {
        let Some((side, e)) = self.next_goal(k) else {
            return Some(true);
        };
        for c in self.candidates(side, e) {
            self.nodes += 1;
            if self.nodes > self.limit {
                return None;
            }
            let (x, y) = match side {
                Side::Forth => (e, c),
                Side::Back => (c, e),
            };
            self.set(x, y);
            if self.viable(k) {
                match self.run(k) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            self.unset(x, y);
        }
        Some(false)
    }
}

/// Partial isomorphism between the final structures of two chains, defined
/// on the first `k` elements of `l1` and hitting the first `k` of `l2`.
/// Goals alternate forth and back in construction order; candidates are
/// tried oldest first with backtracking.
pub fn back_and_forth(
    l1: &LimitChain,
    l2: &LimitChain,
    k: usize,
    node_limit: usize,
) -> Result<PartialIso> {
    if l1.class != l2.class {
        return Err(Error::ClassMismatch(l1.class.clone(), l2.class.clone()));
    }
    if k > l1.len() || k > l2.len() {
        return Err(Error::HorizonTooShort(format!(
            "k = {k} but the chains have {} and {} elements",
            l1.len(),
            l2.len()
        )));
    }
    let (m1, m2) = (&l1.structure, &l2.structure);
    let mut search = Search {
        m1,
        m2,
        fwd: vec![None; m1.size()],
        bwd: vec![None; m2.size()],
        order: Vec::new(),
        nodes: 0,
        limit: node_limit,
        deepest: Vec::new(),
    };
    match search.run(k) {
        Some(true) => {
            let mut pairs = search.order.clone();
            pairs.sort();
            Ok(PartialIso {
                pairs,
                nodes: search.nodes,
            })
        }
        outcome => Err(Error::HorizonTooShort(format!(
            "{} after {} nodes; deepest partial map {:?}",
            if outcome.is_none() {
                "search limit reached"
            } else {
                "no extension exists in these chains"
            },
            search.nodes,
            search.deepest
        ))),
    }
}

/// `pairs` preserve and reflect the relation and are injective.
pub fn is_partial_iso(m1: &Structure, m2: &Structure, pairs: &[(usize, usize)]) -> bool {
    let xs: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let ys: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    let distinct = |v: &[usize]| {
        let mut s = v.to_vec();
        s.sort_unstable();
        s.windows(2).all(|w| w[0] != w[1])
    };
    distinct(&xs)
        && distinct(&ys)
        && pairs.iter().all(|&(a, b)| {
            pairs
                .iter()
                .all(|&(c, d)| m1.rel(a, c) == m2.rel(b, d))
        })
}

#[cfg(test)]
mod tests {
    use super::super::chain::build_limit;
    use super::super::classes::LinearOrders;
    use super::*;
    use crate::budget::Budget;

    #[test]
    fn identity_on_equal_chains() {
        let c = build_limit(&LinearOrders, 20, 1, &Budget::default()).unwrap();
        let iso = back_and_forth(&c, &c, 8, DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(iso.pairs, (0..8).map(|i| (i, i)).collect::<Vec<_>>());
    }

    #[test]
    fn k_beyond_chain() {
        let c = build_limit(&LinearOrders, 5, 1, &Budget::default()).unwrap();
        assert!(matches!(
            back_and_forth(&c, &c, c.len() + 1, DEFAULT_NODE_LIMIT),
            Err(Error::HorizonTooShort(_))
        ));
    }

    #[test]
    fn partial_iso_check() {
        let a = Structure::chain(3);
        assert!(is_partial_iso(&a, &a, &[(0, 0), (2, 1)]));
        assert!(!is_partial_iso(&a, &a, &[(0, 1), (2, 0)]));
        assert!(!is_partial_iso(&a, &a, &[(0, 1), (2, 1)]));
    }
}
