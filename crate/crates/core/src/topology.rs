//! Grothendieck topologies on a finite category.
//!
//! Every sieve of the category gets a dense id in a [`SieveUniverse`]; a
//! topology is then a bitset of covering sieve ids. The least topology
//! containing a family of sieves is computed as the fixpoint of the stability
//! and transitivity rules, starting from the family plus all maximal sieves.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::budget::Budget;
use crate::category::{check_right_ore, ArrowId, ArrowSet, Configuration, FinCategory, ObjectId};
use crate::error::{Error, Result};
use crate::sieve::{pull_members, sieves_on, Sieve};

/// All sieves of a category with their pullback table.
pub struct SieveUniverse {
    cat: Arc<FinCategory>,
    sieves: Vec<Sieve>,
    ranges: Vec<Range<usize>>,
    lookup: HashMap<Sieve, usize>,
    /// `pull[f][i]`: id of `f*(S)` where `S` is the `i`-th sieve on `target(f)`.
    pull: Vec<Vec<usize>>,
}

impl fmt::Debug for SieveUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SieveUniverse")
            .field("objects", &self.cat.object_count())
            .field("sieves", &self.sieves.len())
            .finish()
    }
}

impl SieveUniverse {
    pub fn new(cat: Arc<FinCategory>, budget: &Budget) -> Result<Arc<SieveUniverse>> {
        budget.check_category(cat.object_count(), cat.arrow_count())?;
        for o in cat.object_ids() {
            Budget::guard(
                "arrows into one object",
                cat.arrows_into(o).len(),
                budget.max_arrows_per_object,
            )?;
        }
        let mut sieves = Vec::new();
        let mut ranges = Vec::new();
        for o in cat.object_ids() {
            let start = sieves.len();
            sieves.extend(sieves_on(&cat, o));
            ranges.push(start..sieves.len());
            Budget::guard("sieve count", sieves.len(), budget.max_sieves)?;
        }
        let lookup: HashMap<Sieve, usize> =
            sieves.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let pull = cat
            .arrow_ids()
            .map(|f| {
                let d = cat.source(f);
                sieves[ranges[cat.target(f).0].clone()]
                    .iter()
                    .map(|s| lookup[&Sieve::from_raw(d, pull_members(&cat, f, s.members()))])
                    .collect()
            })
            .collect();
        Ok(Arc::new(SieveUniverse {
            cat,
            sieves,
            ranges,
            lookup,
            pull,
        }))
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.cat
    }

    pub fn len(&self) -> usize {
        self.sieves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sieves.is_empty()
    }

    pub fn sieve(&self, id: usize) -> Sieve {
        self.sieves[id]
    }

    pub fn id_of(&self, s: &Sieve) -> Option<usize> {
        self.lookup.get(s).copied()
    }

    /// Sieve ids based at `o`.
    pub fn ids_on(&self, o: ObjectId) -> Range<usize> {
        self.ranges[o.0].clone()
    }

    pub fn maximal_id(&self, o: ObjectId) -> usize {
        self.ranges[o.0].end - 1
    }

    pub fn empty_id(&self, o: ObjectId) -> usize {
        self.ranges[o.0].start
    }

    /// Id of `f*(S)` for the sieve with id `s` on `target(f)`.
    pub fn pull(&self, f: ArrowId, s: usize) -> usize {
        let r = &self.ranges[self.cat.target(f).0];
        debug_assert!(r.contains(&s));
        self.pull[f.0][s - r.start]
    }

    fn empty_set(&self) -> BitSet {
        BitSet::new(self.sieves.len())
    }

    /// Least topology containing `start`: stability and transitivity are
    /// applied until nothing new is derived.
    fn close(&self, mut derived: BitSet) -> BitSet {
        for o in self.cat.object_ids() {
            derived.insert(self.maximal_id(o));
        }
        let mut work: Vec<usize> = derived.iter().collect();
        loop {
            while let Some(s) = work.pop() {
                let base = self.sieves[s].base();
                for f in self.cat.arrows_into(base).iter() {
                    let t = self.pull(f, s);
                    if derived.insert(t) {
                        work.push(t);
                    }
                }
            }
            for o in self.cat.object_ids() {
                let range = self.ids_on(o);
                for r in range.clone() {
                    if derived.contains(r) {
                        continue;
                    }
                    let locally_covering: ArrowSet = self
                        .cat
                        .arrows_into(o)
                        .iter()
                        .filter(|&f| derived.contains(self.pull(f, r)))
                        .collect();
                    let fires = range.clone().any(|z| {
                        derived.contains(z) && self.sieves[z].members().is_subset(locally_covering)
                    });
                    if fires {
                        derived.insert(r);
                        work.push(r);
                    }
                }
            }
            if work.is_empty() {
                return derived;
            }
        }
    }
}

/// A family of covering sieves. Constructed through the generating
/// functions it always satisfies the three axioms; [`GrothendieckTopology::from_sieves`]
/// allows arbitrary families so that [`validate_topology`] can inspect them.
#[derive(Clone)]
pub struct GrothendieckTopology {
    universe: Arc<SieveUniverse>,
    covers: BitSet,
}

impl PartialEq for GrothendieckTopology {
    fn eq(&self, other: &Self) -> bool {
        self.covers == other.covers
            && (Arc::ptr_eq(&self.universe, &other.universe)
                || self.universe.cat == other.universe.cat)
    }
}

impl Eq for GrothendieckTopology {}

impl fmt::Debug for GrothendieckTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.covers.iter().map(|i| self.universe.sieves[i]))
            .finish()
    }
}

impl GrothendieckTopology {
    pub fn from_sieves(
        universe: &Arc<SieveUniverse>,
        sieves: impl IntoIterator<Item = Sieve>,
    ) -> Result<Self> {
        let mut covers = universe.empty_set();
        for s in sieves {
            covers.insert(universe_id(universe, &s)?);
        }
        Ok(GrothendieckTopology {
            universe: universe.clone(),
            covers,
        })
    }

    pub(crate) fn from_bits(universe: &Arc<SieveUniverse>, covers: BitSet) -> Self {
        GrothendieckTopology {
            universe: universe.clone(),
            covers,
        }
    }

    pub fn universe(&self) -> &Arc<SieveUniverse> {
        &self.universe
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.universe.cat
    }

    pub fn bits(&self) -> &BitSet {
        &self.covers
    }

    pub fn covers_id(&self, id: usize) -> bool {
        self.covers.contains(id)
    }

    pub fn is_covering(&self, s: &Sieve) -> bool {
        self.universe
            .id_of(s)
            .is_some_and(|id| self.covers.contains(id))
    }

    pub fn covers(&self, o: ObjectId) -> Vec<Sieve> {
        self.universe
            .ids_on(o)
            .filter(|&i| self.covers.contains(i))
            .map(|i| self.universe.sieves[i])
            .collect()
    }

    pub fn all_covers(&self) -> Vec<Sieve> {
        self.covers.iter().map(|i| self.universe.sieves[i]).collect()
    }

    pub fn cover_count(&self) -> usize {
        self.covers.count()
    }

    /// `self` has every cover of `other`.
    pub fn contains(&self, other: &GrothendieckTopology) -> bool {
        other.covers.is_subset(&self.covers)
    }

    /// Objects at which the empty sieve covers.
    pub fn empty_covers_at(&self) -> Vec<ObjectId> {
        self.category()
            .object_ids()
            .filter(|&o| self.covers.contains(self.universe.empty_id(o)))
            .collect()
    }

    /// The empty sieve covers every object, so the sheaf topos is trivial.
    pub fn is_degenerate(&self) -> bool {
        self.empty_covers_at().len() == self.category().object_count()
    }

    fn same_universe(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.universe, &other.universe) || self.universe.cat == other.universe.cat {
            Ok(())
        } else {
            Err(Error::CategoryMismatch)
        }
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.same_universe(other)?;
        let mut covers = self.covers.clone();
        covers.intersect_with(&other.covers);
        Ok(Self::from_bits(&self.universe, covers))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.same_universe(other)?;
        let mut covers = self.covers.clone();
        covers.union_with(&other.covers);
        Ok(Self::from_bits(&self.universe, self.universe.close(covers)))
    }
}

fn universe_id(universe: &SieveUniverse, s: &Sieve) -> Result<usize> {
    universe.id_of(s).ok_or(Error::NotASieve {
        base: s.base(),
        missing: s.members().iter().next().unwrap_or(ArrowId(0)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Maximality,
    Stability,
    Transitivity,
}

/// One witness per failing axiom: the object, the offending sieve, and for
/// stability the arrow pulled back along, for transitivity the covering
/// sieve along which every pullback covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub object: ObjectId,
    pub sieve: Sieve,
    pub arrow: Option<ArrowId>,
    pub via: Option<Sieve>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologyReport {
    pub failures: Vec<AxiomFailure>,
    pub degenerate: bool,
}

impl TopologyReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn validate_topology(j: &GrothendieckTopology) -> TopologyReport {
    let u = &j.universe;
    let cat = &u.cat;
    let mut failures = Vec::new();

    if let Some(o) = cat.object_ids().find(|&o| !j.covers.contains(u.maximal_id(o))) {
        failures.push(AxiomFailure {
            axiom: Axiom::Maximality,
            object: o,
            sieve: u.sieves[u.maximal_id(o)],
            arrow: None,
            via: None,
        });
    }

    'stability: for s in j.covers.iter() {
        let base = u.sieves[s].base();
        for f in cat.arrows_into(base).iter() {
            let t = u.pull(f, s);
            if !j.covers.contains(t) {
                failures.push(AxiomFailure {
                    axiom: Axiom::Stability,
                    object: base,
                    sieve: u.sieves[s],
                    arrow: Some(f),
                    via: None,
                });
                break 'stability;
            }
        }
    }

    'transitivity: for o in cat.object_ids() {
        for r in u.ids_on(o).filter(|&r| !j.covers.contains(r)) {
            let locally_covering: ArrowSet = cat
                .arrows_into(o)
                .iter()
                .filter(|&f| j.covers.contains(u.pull(f, r)))
                .collect();
            if let Some(z) = u
                .ids_on(o)
                .find(|&z| j.covers.contains(z) && u.sieves[z].members().is_subset(locally_covering))
            {
                failures.push(AxiomFailure {
                    axiom: Axiom::Transitivity,
                    object: o,
                    sieve: u.sieves[r],
                    arrow: None,
                    via: Some(u.sieves[z]),
                });
                break 'transitivity;
            }
        }
    }

    TopologyReport {
        failures,
        degenerate: j.is_degenerate(),
    }
}

/// Least topology in which every seed covers.
pub fn generate_topology(
    universe: &Arc<SieveUniverse>,
    seeds: &[Sieve],
) -> Result<GrothendieckTopology> {
    let mut start = universe.empty_set();
    for s in seeds {
        start.insert(universe_id(universe, s)?);
    }
    Ok(GrothendieckTopology::from_bits(universe, universe.close(start)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TopologyKind {
    Trivial,
    Atomic,
    Dense,
}

pub fn canonical_topology(
    universe: &Arc<SieveUniverse>,
    kind: TopologyKind,
) -> Result<GrothendieckTopology> {
    let cat = &universe.cat;
    let mut covers = universe.empty_set();
    match kind {
        TopologyKind::Trivial => {
            for o in cat.object_ids() {
                covers.insert(universe.maximal_id(o));
            }
        }
        TopologyKind::Atomic => {
            let ore = check_right_ore(cat);
            if let Some(Configuration::Cospan { f, g }) = ore.failure {
                return Err(Error::NotRightOre { f, g });
            }
            for (i, s) in universe.sieves.iter().enumerate() {
                if !s.is_empty() {
                    covers.insert(i);
                }
            }
        }
        TopologyKind::Dense => {
            for (i, s) in universe.sieves.iter().enumerate() {
                let dense = cat
                    .arrows_into(s.base())
                    .iter()
                    .all(|f| !universe.sieves[universe.pull(f, i)].is_empty());
                if dense {
                    covers.insert(i);
                }
            }
        }
    }
    Ok(GrothendieckTopology::from_bits(universe, covers))
}

/// Every topology on a category, sorted by cover bitset. The order is a
/// linear extension of containment, so the first element is the trivial
/// topology and the last is the degenerate one.
pub struct TopologyLattice {
    universe: Arc<SieveUniverse>,
    elements: Vec<BitSet>,
    index: HashMap<BitSet, usize>,
}

impl fmt::Debug for TopologyLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TopologyLattice")
            .field("elements", &self.elements.len())
            .finish()
    }
}

impl TopologyLattice {
    fn from_elements(universe: &Arc<SieveUniverse>, mut elements: Vec<BitSet>) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        TopologyLattice {
            universe: universe.clone(),
            elements,
            index,
        }
    }

    pub fn universe(&self) -> &Arc<SieveUniverse> {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> GrothendieckTopology {
        GrothendieckTopology::from_bits(&self.universe, self.elements[i].clone())
    }

    pub fn iter(&self) -> impl Iterator<Item = GrothendieckTopology> + '_ {
        (0..self.elements.len()).map(|i| self.get(i))
    }

    pub fn index_of(&self, j: &GrothendieckTopology) -> Option<usize> {
        self.index.get(&j.covers).copied()
    }

    pub fn leq(&self, i: usize, k: usize) -> bool {
        self.elements[i].is_subset(&self.elements[k])
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn meet(&self, i: usize, k: usize) -> usize {
        let mut m = self.elements[i].clone();
        m.intersect_with(&self.elements[k]);
        self.index[&m]
    }

    pub fn join(&self, i: usize, k: usize) -> usize {
        let mut m = self.elements[i].clone();
        m.union_with(&self.elements[k]);
        self.index[&self.universe.close(m)]
    }

    /// Largest `L` with `meet(L, i) <= k`, found as the join of all such `L`.
    pub fn implication(&self, i: usize, k: usize) -> usize {
        let mut acc = self.universe.empty_set();
        for l in 0..self.elements.len() {
            if self.leq(self.meet(l, i), k) {
                acc.union_with(&self.elements[l]);
            }
        }
        self.index[&self.universe.close(acc)]
    }

    /// Greatest lower bound found by scanning the lower bounds.
    pub fn glb_by_search(&self, i: usize, k: usize) -> usize {
        (0..self.elements.len())
            .filter(|&l| self.leq(l, i) && self.leq(l, k))
            .max_by_key(|&l| self.elements[l].count())
            .expect("bottom is a lower bound")
    }

    /// Covering pairs `(lower, upper)` of the order.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.elements.len();
        let mut edges = Vec::new();
        for lo in 0..n {
            for hi in lo + 1..n {
                if lo != hi
                    && self.leq(lo, hi)
                    && !(0..n).any(|m| m != lo && m != hi && self.leq(lo, m) && self.leq(m, hi))
                {
                    edges.push((lo, hi));
                }
            }
        }
        edges
    }
}

/// Closes every subset of the sieve set: starting from the trivial topology,
/// each found topology is extended by one sieve at a time and closed again.
pub fn enumerate_topologies(
    universe: &Arc<SieveUniverse>,
    budget: &Budget,
) -> Result<TopologyLattice> {
    let bottom = universe.close(universe.empty_set());
    let mut seen: BTreeSet<BitSet> = BTreeSet::new();
    seen.insert(bottom.clone());
    let mut work = vec![bottom];
    while let Some(t) = work.pop() {
        for s in 0..universe.len() {
            if t.contains(s) {
                continue;
            }
            let mut next = t.clone();
            next.insert(s);
            let next = universe.close(next);
            if !seen.contains(&next) {
                seen.insert(next.clone());
                Budget::guard("topology count", seen.len(), budget.max_topologies)?;
                work.push(next);
            }
        }
    }
    Ok(TopologyLattice::from_elements(
        universe,
        seen.into_iter().collect(),
    ))
}

/// Independent route: filter every family of sieves by the three axioms.
/// Exponential in the number of non-maximal sieves.
pub fn enumerate_topologies_by_axioms(
    universe: &Arc<SieveUniverse>,
    budget: &Budget,
) -> Result<TopologyLattice> {
    let cat = &universe.cat;
    let optional: Vec<usize> = (0..universe.len())
        .filter(|&i| !universe.sieves[i].is_maximal(cat))
        .collect();
    Budget::guard("non-maximal sieves for axiom filtering", optional.len(), 24)?;
    let mut found = Vec::new();
    for mask in 0u64..1 << optional.len() {
        let mut covers = universe.empty_set();
        for o in cat.object_ids() {
            covers.insert(universe.maximal_id(o));
        }
        for (bit, &id) in optional.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                covers.insert(id);
            }
        }
        let j = GrothendieckTopology::from_bits(universe, covers);
        if validate_topology(&j).is_valid() {
            found.push(j.covers);
            Budget::guard("topology count", found.len(), budget.max_topologies)?;
        }
    }
    Ok(TopologyLattice::from_elements(universe, found))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeOp {
    Meet,
    Join,
    Implication,
}

pub fn lattice_ops(
    j: &GrothendieckTopology,
    k: &GrothendieckTopology,
    op: LatticeOp,
    budget: &Budget,
) -> Result<GrothendieckTopology> {
    match op {
        LatticeOp::Meet => j.meet(k),
        LatticeOp::Join => j.join(k),
        LatticeOp::Implication => {
            j.same_universe(k)?;
            let lattice = enumerate_topologies(&j.universe, budget)?;
            let (ji, ki) = (
                lattice.index_of(j).ok_or(Error::Malformed(
                    "left operand is not a topology".into(),
                ))?,
                lattice.index_of(k).ok_or(Error::Malformed(
                    "right operand is not a topology".into(),
                ))?,
            );
            Ok(lattice.get(lattice.implication(ji, ki)))
        }
    }
}

/// Topologies containing `j`, one per subtopos of its sheaf topos.
pub fn enumerate_subtoposes(
    j: &GrothendieckTopology,
    budget: &Budget,
) -> Result<Vec<GrothendieckTopology>> {
    let lattice = enumerate_topologies(&j.universe, budget)?;
    Ok(lattice.iter().filter(|k| k.contains(j)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::CategorySpec;

    fn universe(spec: CategorySpec) -> Arc<SieveUniverse> {
        SieveUniverse::new(Arc::new(spec.build().unwrap()), &Budget::default()).unwrap()
    }

    fn arrow_cat() -> Arc<SieveUniverse> {
        universe(
            CategorySpec::new()
                .objects(&["a", "b"])
                .arrow("f", "a", "b"),
        )
    }

    const A: ObjectId = ObjectId(0);
    const B: ObjectId = ObjectId(1);

    #[test]
    fn trivial_is_valid_and_generated_by_nothing() {
        let u = arrow_cat();
        let t = canonical_topology(&u, TopologyKind::Trivial).unwrap();
        assert!(validate_topology(&t).is_valid());
        assert_eq!(generate_topology(&u, &[]).unwrap(), t);
        assert_eq!(t.cover_count(), 2);
    }

    #[test]
    fn missing_stability_is_witnessed() {
        let u = arrow_cat();
        let cat = u.category().clone();
        let f = cat.arrow_by_name("f").unwrap();
        let j = GrothendieckTopology::from_sieves(
            &u,
            [
                Sieve::maximal(&cat, A),
                Sieve::maximal(&cat, B),
                Sieve::empty(B),
            ],
        )
        .unwrap();
        let report = validate_topology(&j);
        let stab = report
            .failures
            .iter()
            .find(|w| w.axiom == Axiom::Stability)
            .unwrap();
        assert_eq!(stab.sieve, Sieve::empty(B));
        assert_eq!(stab.arrow, Some(f));
        assert_eq!(
            Sieve::empty(B).pullback(&cat, f).unwrap(),
            Sieve::empty(A)
        );
    }

    #[test]
    fn atomic_on_arrow_category() {
        let u = arrow_cat();
        let cat = u.category().clone();
        let f = cat.arrow_by_name("f").unwrap();
        let j = canonical_topology(&u, TopologyKind::Atomic).unwrap();
        assert!(validate_topology(&j).is_valid());
        assert_eq!(j.covers(A), vec![Sieve::maximal(&cat, A)]);
        assert_eq!(
            j.covers(B),
            vec![
                Sieve::new(&cat, B, ArrowSet::singleton(f)).unwrap(),
                Sieve::maximal(&cat, B)
            ]
        );
    }

    #[test]
    fn atomic_requires_ore() {
        let u = universe(
            CategorySpec::new()
                .objects(&["a", "b", "c"])
                .arrow("f", "a", "c")
                .arrow("g", "b", "c"),
        );
        assert!(matches!(
            canonical_topology(&u, TopologyKind::Atomic),
            Err(Error::NotRightOre { .. })
        ));
    }

    #[test]
    fn terminal_has_two_topologies() {
        let u = universe(CategorySpec::new().object("*"));
        let l = enumerate_topologies(&u, &Budget::default()).unwrap();
        assert_eq!(l.len(), 2);
        let dense = canonical_topology(&u, TopologyKind::Dense).unwrap();
        assert_eq!(dense, canonical_topology(&u, TopologyKind::Trivial).unwrap());
        let degenerate = generate_topology(&u, &[Sieve::empty(ObjectId(0))]).unwrap();
        assert!(degenerate.is_degenerate());
        assert_eq!(l.get(l.top()), degenerate);
    }

    #[test]
    fn arrow_category_generated_matches_least_enumerated() {
        let u = arrow_cat();
        let cat = u.category().clone();
        let f = cat.arrow_by_name("f").unwrap();
        let seed = Sieve::new(&cat, B, ArrowSet::singleton(f)).unwrap();
        let g = generate_topology(&u, &[seed]).unwrap();
        let l = enumerate_topologies(&u, &Budget::default()).unwrap();
        let least = l
            .iter()
            .filter(|t| t.is_covering(&seed))
            .min_by_key(|t| t.cover_count())
            .unwrap();
        assert!(l.iter().filter(|t| t.is_covering(&seed)).all(|t| t.contains(&least)));
        assert_eq!(g, least);
    }

    #[test]
    fn meet_atomic_dense_agrees_with_glb() {
        let u = arrow_cat();
        let l = enumerate_topologies(&u, &Budget::default()).unwrap();
        let at = canonical_topology(&u, TopologyKind::Atomic).unwrap();
        let de = canonical_topology(&u, TopologyKind::Dense).unwrap();
        let m = at.meet(&de).unwrap();
        let (ia, id) = (l.index_of(&at).unwrap(), l.index_of(&de).unwrap());
        assert_eq!(l.index_of(&m), Some(l.glb_by_search(ia, id)));
    }

    #[test]
    fn implication_of_self_is_top() {
        let u = arrow_cat();
        let l = enumerate_topologies(&u, &Budget::default()).unwrap();
        for i in 0..l.len() {
            assert_eq!(l.implication(i, i), l.top());
            let j = l.get(i);
            assert_eq!(lattice_ops(&j, &j, LatticeOp::Meet, &Budget::default()).unwrap(), j);
            let triv = l.get(l.bottom());
            assert_eq!(j.join(&triv).unwrap(), j);
        }
    }

    #[test]
    fn subtoposes_of_top_and_trivial() {
        let u = arrow_cat();
        let b = Budget::default();
        let l = enumerate_topologies(&u, &b).unwrap();
        let top = l.get(l.top());
        assert_eq!(enumerate_subtoposes(&top, &b).unwrap(), vec![top.clone()]);
        let triv = l.get(l.bottom());
        assert_eq!(enumerate_subtoposes(&triv, &b).unwrap().len(), l.len());
    }

    #[test]
    fn sieve_budget() {
        let cat = Arc::new(
            CategorySpec::new()
                .objects(&["a", "b"])
                .arrow("f", "a", "b")
                .build()
                .unwrap(),
        );
        let b = Budget {
            max_sieves: 4,
            ..Budget::default()
        };
        assert!(matches!(
            SieveUniverse::new(cat, &b),
            Err(Error::SizeGuard { .. })
        ));
    }
}
