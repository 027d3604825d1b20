//! Sheaves on finite sites: the sheaf condition, subterminals, closed
//! sieves and the invariants read off from them.
//!
//! A site is represented by its topology, which carries the category.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::budget::Budget;
use crate::category::{check_right_ore, ArrowId, ArrowSet, ObjectId};
use crate::error::{Error, Result};
use crate::functor::{SetFunctor, Variance};
use crate::sieve::Sieve;
use crate::topology::{canonical_topology, GrothendieckTopology, TopologyKind};

fn require_presheaf(site: &GrothendieckTopology, p: &SetFunctor) -> Result<()> {
    if p.variance() != Variance::Contravariant {
        return Err(Error::Malformed("expected a presheaf (contravariant)".into()));
    }
    if **p.category() != **site.category() {
        return Err(Error::CategoryMismatch);
    }
    Ok(())
}

/// Compatible choice of elements indexed by the members of a sieve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingFamily {
    pub sieve: Sieve,
    /// `(f, x)` with `x` an element of `P(source f)`, in arrow order.
    pub choice: Vec<(ArrowId, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SheafFailure {
    NoAmalgamation,
    MultipleAmalgamations,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SheafViolation {
    pub kind: SheafFailure,
    pub object: ObjectId,
    pub family: MatchingFamily,
    pub amalgamations: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SheafReport {
    pub is_sheaf: bool,
    pub violation: Option<SheafViolation>,
    pub covers_checked: usize,
    pub families_checked: usize,
}

/// Every matching family for `p` on `sieve`.
pub fn matching_families(
    p: &SetFunctor,
    sieve: &Sieve,
    budget: &Budget,
) -> Result<Vec<MatchingFamily>> {
    let cat = p.category();
    let members: Vec<ArrowId> = sieve.members().iter().collect();
    // For each member position i, constraints (j, g) with j < i and either
    // members[i] = members[j] . g or members[j] = members[i] . g.
    let mut back: Vec<Vec<(usize, ArrowId, bool)>> = vec![Vec::new(); members.len()];
    for (i, &fi) in members.iter().enumerate() {
        for (j, &fj) in members.iter().enumerate().take(i) {
            for g in cat.hom(cat.source(fi), cat.source(fj)).iter() {
                if cat.compose(fj, g) == fi {
                    back[i].push((j, g, true));
                }
            }
            for g in cat.hom(cat.source(fj), cat.source(fi)).iter() {
                if cat.compose(fi, g) == fj {
                    back[i].push((j, g, false));
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut current = vec![0usize; members.len()];
    let mut nodes = 0usize;
    fn go(
        i: usize,
        p: &SetFunctor,
        members: &[ArrowId],
        back: &[Vec<(usize, ArrowId, bool)>],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        nodes: &mut usize,
        limit: usize,
    ) -> Result<()> {
        if i == members.len() {
            out.push(current.clone());
            return Ok(());
        }
        let dom = p.category().source(members[i]);
        for x in 0..p.card(dom) {
            *nodes += 1;
            Budget::guard("matching-family search nodes", *nodes, limit)?;
            let ok = back[i].iter().all(|&(j, g, i_is_restriction)| {
                if i_is_restriction {
                    x == p.act(g, current[j])
                } else {
                    current[j] == p.act(g, x)
                }
            });
            if ok {
                current[i] = x;
                go(i + 1, p, members, back, current, out, nodes, limit)?;
            }
        }
        Ok(())
    }
    let mut raw = Vec::new();
    go(
        0,
        p,
        &members,
        &back,
        &mut current,
        &mut raw,
        &mut nodes,
        budget.max_search,
    )?;
    for choice in raw {
        out.push(MatchingFamily {
            sieve: *sieve,
            choice: members.iter().copied().zip(choice).collect(),
        });
    }
    Ok(out)
}

/// Elements of `P(base)` restricting to the family.
pub fn amalgamations(p: &SetFunctor, family: &MatchingFamily) -> Vec<usize> {
    (0..p.card(family.sieve.base()))
        .filter(|&x| family.choice.iter().all(|&(f, y)| p.act(f, x) == y))
        .collect()
}

pub fn check_sheaf(
    site: &GrothendieckTopology,
    p: &SetFunctor,
    budget: &Budget,
) -> Result<SheafReport> {
    require_presheaf(site, p)?;
    let mut covers_checked = 0;
    let mut families_checked = 0;
    for sieve in site.all_covers() {
        covers_checked += 1;
        for family in matching_families(p, &sieve, budget)? {
            families_checked += 1;
            let amalgamations = amalgamations(p, &family);
            if amalgamations.len() != 1 {
                let kind = if amalgamations.is_empty() {
                    SheafFailure::NoAmalgamation
                } else {
                    SheafFailure::MultipleAmalgamations
                };
                return Ok(SheafReport {
                    is_sheaf: false,
                    violation: Some(SheafViolation {
                        kind,
                        object: sieve.base(),
                        family,
                        amalgamations,
                    }),
                    covers_checked,
                    families_checked,
                });
            }
        }
    }
    Ok(SheafReport {
        is_sheaf: true,
        violation: None,
        covers_checked,
        families_checked,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubterminalReport {
    /// Each subterminal as the objects where it is inhabited.
    pub subterminals: Vec<Vec<ObjectId>>,
    pub count: usize,
    pub two_valued: bool,
}

/// Subterminal sheaves as `{0,1}`-valued assignments: inhabited at `c`
/// forces inhabited at every `d -> c`, and a cover whose domains are all
/// inhabited forces its base.
pub fn enumerate_subterminal_sheaves(site: &GrothendieckTopology) -> Result<SubterminalReport> {
    let cat = site.category();
    let n = cat.object_count();
    Budget::guard("objects for subterminal enumeration", n, 24)?;
    let covers = site.all_covers();
    let mut subterminals = Vec::new();
    for mask in 0u32..1 << n {
        let on = |o: ObjectId| mask >> o.0 & 1 == 1;
        let downward = cat.arrow_ids().all(|f| !on(cat.target(f)) || on(cat.source(f)));
        let local = covers
            .iter()
            .all(|r| on(r.base()) || !r.members().iter().all(|f| on(cat.source(f))));
        if downward && local {
            subterminals.push(cat.object_ids().filter(|&o| on(o)).collect());
        }
    }
    let count = subterminals.len();
    Ok(SubterminalReport {
        subterminals,
        count,
        two_valued: count == 2,
    })
}

/// `cl_J(R) = { f into base | f*(R) covers }`
pub fn closure(site: &GrothendieckTopology, r: &Sieve) -> Result<Sieve> {
    let u = site.universe();
    let id = u.id_of(r).ok_or(Error::Malformed("not a sieve of this site".into()))?;
    let members: ArrowSet = site
        .category()
        .arrows_into(r.base())
        .iter()
        .filter(|&f| site.covers_id(u.pull(f, id)))
        .collect();
    Sieve::new(site.category(), r.base(), members)
}

pub fn is_closed(site: &GrothendieckTopology, r: &Sieve) -> Result<bool> {
    Ok(closure(site, r)? == *r)
}

/// Closed sieves on one object with their Heyting operations.
#[derive(Debug, Clone)]
pub struct ClosedSieveLattice<'a> {
    site: &'a GrothendieckTopology,
    pub object: ObjectId,
    pub closed: Vec<Sieve>,
}

impl<'a> ClosedSieveLattice<'a> {
    pub fn bottom(&self) -> Sieve {
        closure(self.site, &Sieve::empty(self.object)).expect("empty sieve")
    }

    pub fn top(&self) -> Sieve {
        Sieve::maximal(self.site.category(), self.object)
    }

    pub fn meet(&self, r: &Sieve, s: &Sieve) -> Result<Sieve> {
        r.meet(s)
    }

    pub fn join(&self, r: &Sieve, s: &Sieve) -> Result<Sieve> {
        closure(self.site, &r.join(s)?)
    }

    pub fn implies(&self, r: &Sieve, s: &Sieve) -> Result<Sieve> {
        r.implies(self.site.category(), s)
    }

    /// `R => 0_J`
    pub fn negation(&self, r: &Sieve) -> Result<Sieve> {
        self.implies(r, &self.bottom())
    }

    pub fn contains(&self, r: &Sieve) -> bool {
        self.closed.binary_search(r).is_ok()
    }
}

pub fn closed_sieve_lattice(
    site: &GrothendieckTopology,
    c: ObjectId,
) -> Result<ClosedSieveLattice<'_>> {
    let u = site.universe();
    let mut closed = Vec::new();
    for id in u.ids_on(c) {
        let s = u.sieve(id);
        if closure(site, &s)? == s {
            closed.push(s);
        }
    }
    Ok(ClosedSieveLattice {
        site,
        object: c,
        closed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SieveWitness {
    pub object: ObjectId,
    pub sieve: Sieve,
    /// The closure that should have been maximal.
    pub result: Sieve,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SiteInvariantReport {
    pub atomic: bool,
    pub atomic_reason: String,
    pub subterminal_count: usize,
    pub two_valued: bool,
    pub boolean_site: bool,
    pub boolean_witness: Option<SieveWitness>,
    pub de_morgan_site: bool,
    pub de_morgan_witness: Option<SieveWitness>,
    /// The empty sieve covers every object.
    pub degenerate: bool,
    pub empty_covers_at: Vec<ObjectId>,
}

/// First closed sieve `R` at which `cl(law(R))` is not maximal.
fn law_witness(
    site: &GrothendieckTopology,
    law: impl Fn(&ClosedSieveLattice<'_>, &Sieve) -> Result<Sieve>,
) -> Result<Option<SieveWitness>> {
    let cat = site.category();
    for c in cat.object_ids() {
        let lattice = closed_sieve_lattice(site, c)?;
        for r in &lattice.closed {
            let result = closure(site, &law(&lattice, r)?)?;
            if !result.is_maximal(cat) {
                return Ok(Some(SieveWitness {
                    object: c,
                    sieve: *r,
                    result,
                }));
            }
        }
    }
    Ok(None)
}

pub fn site_invariants(site: &GrothendieckTopology) -> Result<SiteInvariantReport> {
    let cat = site.category();
    let (atomic, atomic_reason) = if !check_right_ore(cat).holds {
        (false, "category is not right Ore".to_string())
    } else if canonical_topology(site.universe(), TopologyKind::Atomic)? == *site {
        (true, "topology is the atomic topology".to_string())
    } else {
        (false, "topology differs from the atomic topology".to_string())
    };
    let sub = enumerate_subterminal_sheaves(site)?;
    let boolean_witness = law_witness(site, |l, r| r.join(&l.negation(r)?))?;
    let de_morgan_witness = law_witness(site, |l, r| {
        let n = l.negation(r)?;
        n.join(&l.negation(&n)?)
    })?;
    Ok(SiteInvariantReport {
        atomic,
        atomic_reason,
        subterminal_count: sub.count,
        two_valued: sub.two_valued,
        boolean_site: boolean_witness.is_none(),
        boolean_witness,
        de_morgan_site: de_morgan_witness.is_none(),
        de_morgan_witness,
        degenerate: site.is_degenerate(),
        empty_covers_at: site.empty_covers_at(),
    })
}

/// Subpresheaves of `p` as bitsets over a global element numbering.
struct Elements<'p> {
    p: &'p SetFunctor,
    offset: Vec<usize>,
    total: usize,
}

impl<'p> Elements<'p> {
    fn new(p: &'p SetFunctor) -> Self {
        let mut offset = Vec::new();
        let mut total = 0;
        for o in p.category().object_ids() {
            offset.push(total);
            total += p.card(o);
        }
        Elements { p, offset, total }
    }

    fn id(&self, o: ObjectId, x: usize) -> usize {
        self.offset[o.0] + x
    }

    fn has(&self, s: &BitSet, o: ObjectId, x: usize) -> bool {
        s.contains(self.id(o, x))
    }

    fn empty(&self) -> BitSet {
        BitSet::new(self.total)
    }

    fn full(&self) -> BitSet {
        let mut s = self.empty();
        for i in 0..self.total {
            s.insert(i);
        }
        s
    }

    /// Smallest subpresheaf containing `s`.
    fn close_down(&self, mut s: BitSet) -> BitSet {
        let cat = self.p.category();
        let mut work: Vec<(ObjectId, usize)> = cat
            .object_ids()
            .flat_map(|o| (0..self.p.card(o)).map(move |x| (o, x)))
            .filter(|&(o, x)| self.has(&s, o, x))
            .collect();
        while let Some((c, x)) = work.pop() {
            for f in cat.arrows_into(c).iter() {
                let d = cat.source(f);
                let y = self.p.act(f, x);
                if s.insert(self.id(d, y)) {
                    work.push((d, y));
                }
            }
        }
        s
    }

    /// Adds every element whose sieve of restrictions into `s` covers.
    fn close_j(&self, site: &GrothendieckTopology, s: BitSet) -> BitSet {
        let cat = self.p.category();
        let mut s = self.close_down(s);
        loop {
            let mut grew = false;
            for c in cat.object_ids() {
                for x in 0..self.p.card(c) {
                    if self.has(&s, c, x) {
                        continue;
                    }
                    let members: ArrowSet = cat
                        .arrows_into(c)
                        .iter()
                        .filter(|&f| self.has(&s, cat.source(f), self.p.act(f, x)))
                        .collect();
                    if site.is_covering(&Sieve::from_raw(c, members)) {
                        s.insert(self.id(c, x));
                        grew = true;
                    }
                }
            }
            if !grew {
                return s;
            }
            s = self.close_down(s);
        }
    }

    fn all_subpresheaves(&self) -> Vec<BitSet> {
        let mut seen: BTreeSet<BitSet> = BTreeSet::new();
        seen.insert(self.empty());
        let mut work = vec![self.empty()];
        while let Some(s) = work.pop() {
            for i in 0..self.total {
                if s.contains(i) {
                    continue;
                }
                let mut t = s.clone();
                t.insert(i);
                let t = self.close_down(t);
                if seen.insert(t.clone()) {
                    work.push(t);
                }
            }
        }
        seen.into_iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObjectInvariantReport {
    pub closed_subobjects: usize,
    pub is_atom: bool,
    pub is_indecomposable: bool,
    /// Complementary nonzero pair `(A, B)` when decomposable, each as the
    /// element names per object.
    pub decomposition: Option<(Vec<Vec<String>>, Vec<Vec<String>>)>,
    pub is_compact: bool,
    /// Largest subfamily needed to realise the join of a covering family.
    pub largest_needed_subfamily: usize,
    pub note: String,
}

pub fn object_invariants(
    site: &GrothendieckTopology,
    p: &SetFunctor,
    budget: &Budget,
) -> Result<ObjectInvariantReport> {
    require_presheaf(site, p)?;
    let sheaf = check_sheaf(site, p, budget)?;
    if let Some(v) = sheaf.violation {
        return Err(Error::NotASheaf(format!(
            "{:?} at object `{}`",
            v.kind,
            p.category().object_name(v.object)
        )));
    }
    Budget::guard("presheaf elements", p.total_elements(), budget.max_elements)?;
    let el = Elements::new(p);
    let closed: Vec<BitSet> = el
        .all_subpresheaves()
        .into_iter()
        .filter(|s| el.close_j(site, s.clone()) == *s)
        .collect();
    let zero = el.close_j(site, el.empty());
    let full = el.full();
    let nonzero = full != zero;

    let is_atom = nonzero && closed.len() == 2;

    let mut decomposition = None;
    'outer: for (i, a) in closed.iter().enumerate() {
        if *a == zero {
            continue;
        }
        for b in closed.iter().skip(i + 1) {
            if *b == zero {
                continue;
            }
            let mut meet = a.clone();
            meet.intersect_with(b);
            let mut join = a.clone();
            join.union_with(b);
            if meet == zero && el.close_j(site, join) == full {
                decomposition = Some((names(&el, a), names(&el, b)));
                break 'outer;
            }
        }
    }
    let is_indecomposable = nonzero && decomposition.is_none();

    // Every family of closed subobjects joining to the whole presheaf has a
    // finite subfamily with the same join. Families are searched exhaustively;
    // the minimal subfamily size is recorded.
    Budget::guard("closed subobjects for compactness search", closed.len(), 16)?;
    let join_of = |mask: u32| {
        let mut acc = el.empty();
        for (i, s) in closed.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc.union_with(s);
            }
        }
        el.close_j(site, acc)
    };
    let mut largest_needed_subfamily = 0;
    let mut is_compact = true;
    for family in 0u32..1 << closed.len() {
        if join_of(family) != full {
            continue;
        }
        let needed = (0..=family.count_ones()).find(|&k| {
            subsets_of_size(family, k).any(|sub| join_of(sub) == full)
        });
        match needed {
            Some(k) => largest_needed_subfamily = largest_needed_subfamily.max(k as usize),
            None => is_compact = false,
        }
    }

    Ok(ObjectInvariantReport {
        closed_subobjects: closed.len(),
        is_atom,
        is_indecomposable,
        decomposition,
        is_compact,
        largest_needed_subfamily,
        note: "finite site: automatic".into(),
    })
}

fn subsets_of_size(mask: u32, k: u32) -> impl Iterator<Item = u32> {
    let mut sub = mask;
    let mut done = false;
    std::iter::from_fn(move || {
        while !done {
            let cur = sub;
            if sub == 0 {
                done = true;
            } else {
                sub = (sub - 1) & mask;
            }
            if cur.count_ones() == k {
                return Some(cur);
            }
        }
        None
    })
}

fn names(el: &Elements<'_>, s: &BitSet) -> Vec<Vec<String>> {
    el.p.category()
        .object_ids()
        .map(|o| {
            (0..el.p.card(o))
                .filter(|&x| el.has(s, o, x))
                .map(|x| el.p.element_name(o, x).to_string())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{CategorySpec, FinCategory};
    use crate::topology::{generate_topology, SieveUniverse};
    use std::sync::Arc;

    fn site(spec: CategorySpec, kind: TopologyKind) -> GrothendieckTopology {
        let cat = Arc::new(spec.build().unwrap());
        let u = SieveUniverse::new(cat, &Budget::default()).unwrap();
        canonical_topology(&u, kind).unwrap()
    }

    fn degenerate(spec: CategorySpec) -> GrothendieckTopology {
        let cat = Arc::new(spec.build().unwrap());
        let u = SieveUniverse::new(cat.clone(), &Budget::default()).unwrap();
        let empties: Vec<Sieve> = cat.object_ids().map(Sieve::empty).collect();
        generate_topology(&u, &empties).unwrap()
    }

    fn arrow_spec() -> CategorySpec {
        CategorySpec::new()
            .objects(&["a", "b"])
            .arrow("f", "a", "b")
    }

    fn cat(s: &GrothendieckTopology) -> Arc<FinCategory> {
        s.category().clone()
    }

    #[test]
    fn trivial_topology_everything_is_a_sheaf() {
        let s = site(arrow_spec(), TopologyKind::Trivial);
        let b = Budget::default();
        for o in cat(&s).object_ids() {
            let h = SetFunctor::representable(cat(&s), o);
            assert!(check_sheaf(&s, &h, &b).unwrap().is_sheaf);
        }
        let k = SetFunctor::constant(cat(&s), Variance::Contravariant, 2);
        assert!(check_sheaf(&s, &k, &b).unwrap().is_sheaf);
    }

    #[test]
    fn constant_two_fails_for_degenerate() {
        let s = degenerate(arrow_spec());
        let k = SetFunctor::constant(cat(&s), Variance::Contravariant, 2);
        let r = check_sheaf(&s, &k, &Budget::default()).unwrap();
        let v = r.violation.unwrap();
        assert_eq!(v.kind, SheafFailure::MultipleAmalgamations);
        assert!(v.family.choice.is_empty());
        assert_eq!(v.amalgamations, vec![0, 1]);
    }

    #[test]
    fn representable_b_is_atomic_sheaf() {
        let s = site(arrow_spec(), TopologyKind::Atomic);
        let h = SetFunctor::representable(cat(&s), ObjectId(1));
        let r = check_sheaf(&s, &h, &Budget::default()).unwrap();
        assert!(r.is_sheaf);
        assert_eq!(r.covers_checked, 3);
    }

    #[test]
    fn subterminal_counts() {
        assert_eq!(
            enumerate_subterminal_sheaves(&degenerate(arrow_spec()))
                .unwrap()
                .count,
            1
        );
        let t = site(CategorySpec::new().object("*"), TopologyKind::Trivial);
        assert_eq!(enumerate_subterminal_sheaves(&t).unwrap().count, 2);
        let op = Arc::new(arrow_spec().build().unwrap().opposite());
        let u = SieveUniverse::new(op, &Budget::default()).unwrap();
        let at = canonical_topology(&u, TopologyKind::Atomic).unwrap();
        let r = enumerate_subterminal_sheaves(&at).unwrap();
        assert_eq!(r.count, 2);
        assert!(r.two_valued);
    }

    #[test]
    fn closed_sieves() {
        let s = site(arrow_spec(), TopologyKind::Trivial);
        let l = closed_sieve_lattice(&s, ObjectId(1)).unwrap();
        assert_eq!(l.closed.len(), 3);
        let d = degenerate(arrow_spec());
        let l = closed_sieve_lattice(&d, ObjectId(1)).unwrap();
        assert_eq!(l.closed, vec![Sieve::maximal(&cat(&d), ObjectId(1))]);

        let at = site(arrow_spec(), TopologyKind::Atomic);
        let l = closed_sieve_lattice(&at, ObjectId(1)).unwrap();
        let scan: Vec<Sieve> = crate::sieve::sieves_on(&cat(&at), ObjectId(1))
            .into_iter()
            .filter(|r| closure(&at, r).unwrap() == *r)
            .collect();
        assert_eq!(l.closed, scan);
        assert_eq!(l.closed.len(), 2);
    }

    #[test]
    fn invariants() {
        let at = site(arrow_spec(), TopologyKind::Atomic);
        let r = site_invariants(&at).unwrap();
        assert!(r.atomic && r.boolean_site && r.de_morgan_site);

        let tr = site(arrow_spec(), TopologyKind::Trivial);
        let r = site_invariants(&tr).unwrap();
        assert!(!r.boolean_site);
        let w = r.boolean_witness.unwrap();
        assert_eq!(w.object, ObjectId(1));
        assert_eq!(w.sieve.members().len(), 1);

        let d = site_invariants(&degenerate(arrow_spec())).unwrap();
        assert!(d.boolean_site && d.degenerate && !d.two_valued);
        assert_eq!(d.subterminal_count, 1);
    }

    #[test]
    fn object_level() {
        let b = Budget::default();
        let t = site(CategorySpec::new().object("*"), TopologyKind::Trivial);
        let one = SetFunctor::constant(cat(&t), Variance::Contravariant, 1);
        let r = object_invariants(&t, &one, &b).unwrap();
        assert!(r.is_atom && r.is_indecomposable && r.is_compact);
        let zero = SetFunctor::constant(cat(&t), Variance::Contravariant, 0);
        let r = object_invariants(&t, &zero, &b).unwrap();
        assert!(!r.is_atom && !r.is_indecomposable);

        let tr = site(arrow_spec(), TopologyKind::Trivial);
        let h = SetFunctor::representable(cat(&tr), ObjectId(1));
        let r = object_invariants(&tr, &h, &b).unwrap();
        assert_eq!(r.closed_subobjects, 3);
        assert!(r.is_indecomposable && !r.is_atom);

        let two = SetFunctor::constant(cat(&t), Variance::Contravariant, 2);
        let r = object_invariants(&t, &two, &b).unwrap();
        assert!(!r.is_indecomposable);
        assert!(r.decomposition.is_some());
    }

    #[test]
    fn object_invariants_need_a_sheaf() {
        let d = degenerate(arrow_spec());
        let k = SetFunctor::constant(cat(&d), Variance::Contravariant, 2);
        assert!(matches!(
            object_invariants(&d, &k, &Budget::default()),
            Err(Error::NotASheaf(_))
        ));
    }
}
