use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::classes::{verify_class_properties, AmalgamationClass};
use super::structure::Structure;
use crate::budget::Budget;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheduler {
    /// Oldest task first; every task is eventually discharged.
    #[default]
    Fifo,
    /// Newest task first. Unfair: old tasks can starve.
    Lifo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainConfig {
    pub steps: usize,
    pub seed: u64,
    /// Largest structure `b` a task may ask to embed.
    pub bound: usize,
    pub scheduler: Scheduler,
}

impl ChainConfig {
    pub fn new(steps: usize, seed: u64) -> Self {
        ChainConfig {
            steps,
            seed,
            bound: 3,
            scheduler: Scheduler::Fifo,
        }
    }
}

/// One extension requirement: embed `b` over the chain elements `s`, which
/// `b` carries on its first positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskRecord {
    pub s: Vec<usize>,
    pub b: Structure,
    pub discovered: usize,
    pub discharged: Option<usize>,
    /// Images of the new points of `b`.
    pub witness: Option<Vec<usize>>,
    /// The task added elements rather than finding existing ones.
    pub extended: bool,
}

/// A chain `M_0 ⊆ M_1 ⊆ ...`; `M_k` is the substructure on the first
/// `sizes[k]` elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitChain {
    pub class: String,
    pub config: ChainConfig,
    pub structure: Structure,
    pub sizes: Vec<usize>,
    /// Step at which each element joined.
    pub born: Vec<usize>,
    pub tasks: Vec<TaskRecord>,
    /// Tasks still queued when the chain stopped.
    pub pending: usize,
}

impl LimitChain {
    pub fn len(&self) -> usize {
        self.structure.size()
    }

    pub fn is_empty(&self) -> bool {
        self.structure.size() == 0
    }

    pub fn steps(&self) -> usize {
        self.sizes.len() - 1
    }

    /// Elements of `M_k`.
    pub fn stage_size(&self, k: usize) -> usize {
        self.sizes[k.min(self.steps())]
    }

    /// `M_k`
    pub fn stage(&self, k: usize) -> Structure {
        let elems: Vec<usize> = (0..self.stage_size(k)).collect();
        self.structure.restrict(&elems)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("chain serializes")
    }
}

/// All structures in the class extending `a` by `extra` points, with `a`
/// on the first positions, one per relabelling of the new points.
pub fn extensions<C: AmalgamationClass + ?Sized>(
    class: &C,
    a: &Structure,
    extra: usize,
) -> Result<Vec<Structure>> {
    let k = a.size();
    let n = k + extra;
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i >= k || j >= k)
        .collect();
    Budget::guard("relation bits in extension search", free.len(), 24)?;
    let perms = permutations_of_tail(k, n);
    let mut out = Vec::new();
    for code in 0u64..1 << free.len() {
        let mut pairs = a.pairs();
        pairs.extend(
            free.iter()
                .enumerate()
                .filter(|(bit, _)| code >> bit & 1 == 1)
                .map(|(_, &p)| p),
        );
        let b = Structure::from_pairs(n, &pairs);
        if class.contains(&b) && perms.iter().all(|p| b.permute(p) >= b) {
            out.push(b);
        }
    }
    Ok(out)
}

/// Permutations of `0..n` fixing `0..k`.
fn permutations_of_tail(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(k: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in k..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(k, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut cur: Vec<usize> = (0..k).collect();
    let mut used = vec![false; n];
    go(k, &mut cur, &mut used, &mut out);
    out
}

/// Finds an embedding of `b` into `m` that is `s` on the first `s.len()`
/// points.
fn extend_into(m: &Structure, s: &[usize], b: &Structure) -> Option<Vec<usize>> {
    fn go(m: &Structure, b: &Structure, map: &mut Vec<usize>) -> bool {
        let i = map.len();
        if i == b.size() {
            return true;
        }
        for x in 0..m.size() {
            if map.contains(&x) || m.rel(x, x) != b.rel(i, i) {
                continue;
            }
            if (0..i).all(|k| m.rel(x, map[k]) == b.rel(i, k) && m.rel(map[k], x) == b.rel(k, i)) {
                map.push(x);
                if go(m, b, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    let mut map = s.to_vec();
    go(m, b, &mut map).then(|| map.split_off(s.len()))
}

/// Subsets of `0..n` of size at most `k` with some element `>= fresh`, as
/// sorted tuples. With `fresh = 0` the empty set is included.
fn subsets_touching(n: usize, k: usize, fresh: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if cur.len() == k {
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    if fresh > 0 {
        out.retain(|s| s.last().is_some_and(|&x| x >= fresh));
    }
    out
}

pub fn build_limit<C: AmalgamationClass + ?Sized>(
    class: &C,
    steps: usize,
    seed: u64,
    budget: &Budget,
) -> Result<LimitChain> {
    build_limit_with(class, ChainConfig::new(steps, seed), budget)
}

struct Builder<'c, C: ?Sized> {
    class: &'c C,
    config: ChainConfig,
    max_tasks: usize,
    rng: ChaCha8Rng,
    m: Structure,
    sizes: Vec<usize>,
    born: Vec<usize>,
    tasks: Vec<TaskRecord>,
    queue: VecDeque<usize>,
    cache: HashMap<(Structure, usize), Vec<Structure>>,
}

impl<C: AmalgamationClass + ?Sized> Builder<'_, C> {
    /// Queues every task that mentions an element `>= fresh`, shuffled.
    fn discover(&mut self, fresh: usize, step: usize) -> Result<()> {
        let mut batch = Vec::new();
        let bound = self.config.bound;
        for s in subsets_touching(self.m.size(), bound - 1, fresh) {
            let a = self.m.restrict(&s);
            for extra in 1..=bound - s.len() {
                let key = (a.clone(), extra);
                if !self.cache.contains_key(&key) {
                    let exts = extensions(self.class, &a, extra)?;
                    self.cache.insert(key.clone(), exts);
                }
                for b in &self.cache[&key] {
                    batch.push(self.tasks.len());
                    self.tasks.push(TaskRecord {
                        s: s.clone(),
                        b: b.clone(),
                        discovered: step,
                        discharged: None,
                        witness: None,
                        extended: false,
                    });
                }
            }
        }
        Budget::guard("chain tasks", self.tasks.len(), self.max_tasks)?;
        batch.shuffle(&mut self.rng);
        self.queue.extend(batch);
        Ok(())
    }

    /// Adds the new points of task `t` one at a time through the class amalgam.
    fn extend(&mut self, t: usize) -> Result<Vec<usize>> {
        let (s, b) = (self.tasks[t].s.clone(), self.tasks[t].b.clone());
        let mut anchor = s.clone();
        let mut added = Vec::new();
        for p in s.len()..b.size() {
            let prefix: Vec<usize> = (0..=p).collect();
            let grown = self
                .class
                .chain_amalgam(&self.m, &anchor, &b.restrict(&prefix))
                .ok_or_else(|| {
                    Error::Malformed(format!("class `{}` does not build chains", self.class.name()))
                })?;
            debug_assert!(self.class.contains(&grown));
            self.m = grown;
            let new = self.m.size() - 1;
            anchor.push(new);
            added.push(new);
        }
        Ok(added)
    }

    fn run(mut self) -> Result<LimitChain> {
        self.discover(0, 0)?;
        while self.sizes.len() <= self.config.steps {
            let next = match self.config.scheduler {
                Scheduler::Fifo => self.queue.pop_front(),
                Scheduler::Lifo => self.queue.pop_back(),
            };
            let Some(t) = next else { break };
            let step = self.sizes.len() - 1;
            if let Some(w) = extend_into(&self.m, &self.tasks[t].s, &self.tasks[t].b) {
                self.tasks[t].discharged = Some(step);
                self.tasks[t].witness = Some(w);
                continue;
            }
            let fresh = self.m.size();
            let added = self.extend(t)?;
            self.born.extend(added.iter().map(|_| step + 1));
            self.sizes.push(self.m.size());
            let task = &mut self.tasks[t];
            task.discharged = Some(step + 1);
            task.witness = Some(added);
            task.extended = true;
            self.discover(fresh, step + 1)?;
        }
        Ok(LimitChain {
            class: self.class.name().to_string(),
            config: self.config,
            structure: self.m,
            sizes: self.sizes,
            born: self.born,
            pending: self.queue.len(),
            tasks: self.tasks,
        })
    }
}

/// Fair chain construction. A queue holds one task per subset `s` of the
/// chain with `|s| < bound` and per extension `b` of `M|s` with
/// `|b| <= bound`; each newly discovered batch is shuffled by the seed. A
/// popped task already realised in the chain is discharged without a step;
/// otherwise one step amalgamates `b` into the chain over `s`.
pub fn build_limit_with<C: AmalgamationClass + ?Sized>(
    class: &C,
    config: ChainConfig,
    budget: &Budget,
) -> Result<LimitChain> {
    if config.bound == 0 {
        return Err(Error::Malformed("chain bound must be at least 1".into()));
    }
    let report = verify_class_properties(class, config.bound, budget)?;
    if !report.holds() {
        return Err(Error::ClassPropertyUnverified {
            class: class.name().to_string(),
            bound: config.bound,
        });
    }
    Builder {
        class,
        config,
        max_tasks: budget.max_tasks,
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        m: Structure::empty(),
        sizes: vec![0],
        born: Vec::new(),
        tasks: Vec::new(),
        queue: VecDeque::new(),
        cache: HashMap::new(),
    }
    .run()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionFailure {
    /// Elements of `M_depth` the extension is anchored at.
    pub s: Vec<usize>,
    /// `M|s` on the first positions, new points after.
    pub b: Structure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub depth: usize,
    pub size: usize,
    pub checked: usize,
    pub passed: bool,
    pub failures: Vec<ExtensionFailure>,
}

/// For every `s` in `M_depth` with `|s| < size` and every extension `b` of
/// `M|s` with `|b| <= size`, looks for `b` inside the final structure over
/// `s`. A miss while tasks are still pending is a horizon problem rather
/// than a failure of the class.
pub fn check_limit_extension<C: AmalgamationClass + ?Sized>(
    class: &C,
    chain: &LimitChain,
    depth: usize,
    size: usize,
) -> Result<ExtensionReport> {
    if class.name() != chain.class {
        return Err(Error::ClassMismatch(
            class.name().to_string(),
            chain.class.clone(),
        ));
    }
    if depth > chain.steps() {
        return Err(Error::HorizonTooShort(format!(
            "depth {depth} exceeds the {} steps of the chain",
            chain.steps()
        )));
    }
    let m = &chain.structure;
    let mut cache: HashMap<(Structure, usize), Vec<Structure>> = HashMap::new();
    let mut checked = 0;
    let mut failures = Vec::new();
    if size > 0 {
        for s in subsets_touching(chain.stage_size(depth), size - 1, 0) {
            let a = m.restrict(&s);
            for extra in 1..=size - s.len() {
                let key = (a.clone(), extra);
                if !cache.contains_key(&key) {
                    cache.insert(key.clone(), extensions(class, &a, extra)?);
                }
                for b in &cache[&key] {
                    checked += 1;
                    if extend_into(m, &s, b).is_none() && failures.len() < 20 {
                        failures.push(ExtensionFailure {
                            s: s.clone(),
                            b: b.clone(),
                        });
                    }
                }
            }
        }
    }
    if let Some(f) = failures.first() {
        if chain.pending > 0 {
            return Err(Error::HorizonTooShort(format!(
                "no extension of {:?} over elements {:?} after {} steps; {} tasks still pending",
                f.b,
                f.s,
                chain.steps(),
                chain.pending
            )));
        }
    }
    Ok(ExtensionReport {
        depth,
        size,
        checked,
        passed: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::super::classes::{BoundedLinearOrders, Graphs, LinearOrders};
    use super::*;

    #[test]
    fn empty_chain() {
        let c = build_limit(&LinearOrders, 0, 1, &Budget::default()).unwrap();
        assert!(c.is_empty());
        assert_eq!(c.steps(), 0);
        assert_eq!(c.stage(0), Structure::empty());
    }

    #[test]
    fn chains_grow_by_embeddings() {
        let b = Budget::default();
        let c = build_limit(&LinearOrders, 30, 7, &b).unwrap();
        assert_eq!(c.steps(), 30);
        for k in 0..30 {
            let incl: Vec<usize> = (0..c.stage_size(k)).collect();
            assert!(c.stage_size(k) < c.stage_size(k + 1));
            assert!(LinearOrders.is_embedding(&c.stage(k), &c.stage(k + 1), &incl));
        }
        assert!(LinearOrders.contains(&c.structure));
        let g = build_limit(&Graphs::default(), 20, 7, &b).unwrap();
        assert!(Graphs::default().contains(&g.structure));
    }

    #[test]
    fn determinism() {
        let b = Budget::default();
        let c1 = build_limit(&Graphs::default(), 25, 3, &b).unwrap();
        let c2 = build_limit(&Graphs::default(), 25, 3, &b).unwrap();
        assert_eq!(c1.to_json(), c2.to_json());
        let c3 = build_limit(&Graphs::default(), 25, 4, &b).unwrap();
        assert_ne!(c1.tasks, c3.tasks);
    }

    #[test]
    fn logged_tasks_are_realised_at_their_step() {
        let c = build_limit(&LinearOrders, 40, 2, &Budget::default()).unwrap();
        for t in c.tasks.iter().filter(|t| t.discharged.is_some()) {
            let step = t.discharged.unwrap();
            let stage = c.stage(step);
            let w = t.witness.clone().unwrap();
            assert!(w.iter().all(|&x| x < stage.size()));
            let map: Vec<usize> = t.s.iter().chain(&w).copied().collect();
            assert!(t.b.is_embedding_into(&stage, &map));
        }
    }

    #[test]
    fn size_zero_is_vacuous() {
        let c = build_limit(&LinearOrders, 10, 1, &Budget::default()).unwrap();
        let r = check_limit_extension(&LinearOrders, &c, 5, 0).unwrap();
        assert!(r.passed);
        assert_eq!(r.checked, 0);
    }

    #[test]
    fn unverified_class_is_rejected() {
        let err = build_limit(&BoundedLinearOrders { max_size: 2 }, 5, 1, &Budget::default());
        assert!(matches!(err, Err(Error::ClassPropertyUnverified { .. })));
    }

    #[test]
    fn json_round_trip() {
        let c = build_limit(&LinearOrders, 8, 1, &Budget::default()).unwrap();
        let back: LimitChain = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn extension_types() {
        let one = Structure::chain(1);
        // a new point below or above
        assert_eq!(extensions(&LinearOrders, &one, 1).unwrap().len(), 2);
        // two new points: both below, both above, one on each side
        assert_eq!(extensions(&LinearOrders, &one, 2).unwrap().len(), 3);
        assert_eq!(extensions(&Graphs::default(), &Structure::empty(), 2).unwrap().len(), 2);
    }

    #[test]
    fn subsets() {
        assert_eq!(subsets_touching(3, 2, 0).len(), 7);
        assert_eq!(subsets_touching(3, 2, 2).len(), 3);
        assert_eq!(subsets_touching(0, 2, 0), vec![Vec::<usize>::new()]);
    }
}
