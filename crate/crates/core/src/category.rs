//! Finite categories given by an explicit composition table.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ObjectId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ArrowId(pub usize);

impl ObjectId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl ArrowId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A set of arrows as a bitset over the category's arrow ids.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowSet(pub u64);

impl ArrowSet {
    pub const EMPTY: ArrowSet = ArrowSet(0);

    pub fn singleton(a: ArrowId) -> Self {
        ArrowSet(1 << a.0)
    }

    pub fn contains(self, a: ArrowId) -> bool {
        self.0 >> a.0 & 1 == 1
    }

    pub fn insert(&mut self, a: ArrowId) {
        self.0 |= 1 << a.0;
    }

    pub fn union(self, other: Self) -> Self {
        ArrowSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ArrowSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = ArrowId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(ArrowId(i))
        })
    }

    /// All subsets of `self`, starting from the empty set.
    pub fn subsets(self) -> impl Iterator<Item = ArrowSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some(cur.wrapping_sub(mask) & mask)
            };
            Some(ArrowSet(cur))
        })
    }
}

impl FromIterator<ArrowId> for ArrowSet {
    fn from_iter<I: IntoIterator<Item = ArrowId>>(iter: I) -> Self {
        let mut s = ArrowSet::EMPTY;
        for a in iter {
            s.insert(a);
        }
        s
    }
}

impl Serialize for ArrowSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl fmt::Debug for ArrowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|a| a.0)).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// `outer . inner = result`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub outer: String,
    pub inner: String,
    pub result: String,
}

/// Unvalidated description of a category. Identities are implicit and named
/// `id_<object>`; they may appear as the result of an equation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub equations: Vec<Equation>,
}

impl CategorySpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, name: &str) -> Self {
        self.objects.push(name.to_string());
        self
    }

    pub fn objects(mut self, names: &[&str]) -> Self {
        self.objects.extend(names.iter().map(|s| s.to_string()));
        self
    }

    pub fn arrow(mut self, name: &str, source: &str, target: &str) -> Self {
        self.arrows.push(ArrowDecl {
            name: name.to_string(),
            source: source.to_string(),
            target: target.to_string(),
        });
        self
    }

    pub fn compose(mut self, outer: &str, inner: &str, result: &str) -> Self {
        self.equations.push(Equation {
            outer: outer.to_string(),
            inner: inner.to_string(),
            result: result.to_string(),
        });
        self
    }

    pub fn build(&self) -> Result<FinCategory> {
        build_category(self, &Budget::default())
    }
}

pub fn identity_name(object: &str) -> String {
    format!("id_{object}")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: ObjectId,
    pub target: ObjectId,
}

/// A validated finite category. Identities occupy arrow ids `0..objects`,
/// declared arrows follow in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<ArrowId>,
    /// `table[g * n + f] = g . f`
    table: Vec<Option<ArrowId>>,
    into: Vec<ArrowSet>,
    out: Vec<ArrowSet>,
    /// `precomposites[f] = { f . g }`
    precomposites: Vec<ArrowSet>,
}

pub fn build_category(spec: &CategorySpec, budget: &Budget) -> Result<FinCategory> {
    if spec.objects.is_empty() {
        return Err(Error::EmptyCategory);
    }
    let n_arrows = spec.objects.len() + spec.arrows.len();
    budget.check_category(spec.objects.len(), n_arrows)?;

    let mut object_ids = HashMap::new();
    for (i, o) in spec.objects.iter().enumerate() {
        if object_ids.insert(o.as_str(), ObjectId(i)).is_some() {
            return Err(Error::DuplicateName(o.clone()));
        }
    }
    let object = |name: &str| {
        object_ids
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownName {
                kind: "object",
                name: name.to_string(),
            })
    };

    let mut arrows = Vec::with_capacity(n_arrows);
    for (i, o) in spec.objects.iter().enumerate() {
        arrows.push(Arrow {
            name: identity_name(o),
            source: ObjectId(i),
            target: ObjectId(i),
        });
    }
    for d in &spec.arrows {
        arrows.push(Arrow {
            name: d.name.clone(),
            source: object(&d.source)?,
            target: object(&d.target)?,
        });
    }
    let mut arrow_ids = HashMap::new();
    for (i, a) in arrows.iter().enumerate() {
        if arrow_ids.insert(a.name.clone(), ArrowId(i)).is_some() {
            return Err(Error::DuplicateName(a.name.clone()));
        }
    }
    let arrow = |name: &str| {
        arrow_ids
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownName {
                kind: "arrow",
                name: name.to_string(),
            })
    };

    let n = arrows.len();
    let identities: Vec<ArrowId> = (0..spec.objects.len()).map(ArrowId).collect();
    let is_identity = |a: ArrowId| a.0 < identities.len();
    let mut table = vec![None; n * n];
    for f in 0..n {
        let (s, t) = (arrows[f].source.0, arrows[f].target.0);
        table[t * n + f] = Some(ArrowId(f));
        table[f * n + s] = Some(ArrowId(f));
    }

    for eq in &spec.equations {
        let g = arrow(&eq.outer)?;
        let f = arrow(&eq.inner)?;
        let h = arrow(&eq.result)?;
        if arrows[f.0].target != arrows[g.0].source {
            return Err(Error::NotComposable {
                g: eq.outer.clone(),
                f: eq.inner.clone(),
            });
        }
        if arrows[h.0].source != arrows[f.0].source || arrows[h.0].target != arrows[g.0].target {
            return Err(Error::CompositeTyping {
                g: eq.outer.clone(),
                f: eq.inner.clone(),
                h: eq.result.clone(),
            });
        }
        if is_identity(g) || is_identity(f) {
            let expected = if is_identity(g) { f } else { g };
            if h != expected {
                return Err(Error::IdentityViolation {
                    arrow: arrows[expected.0].name.clone(),
                });
            }
            continue;
        }
        match table[g.0 * n + f.0] {
            Some(prev) if prev != h => {
                return Err(Error::ConflictingComposite {
                    g: eq.outer.clone(),
                    f: eq.inner.clone(),
                })
            }
            _ => table[g.0 * n + f.0] = Some(h),
        }
    }

    for g in 0..n {
        for f in 0..n {
            if arrows[f].target == arrows[g].source && table[g * n + f].is_none() {
                return Err(Error::MissingComposite {
                    g: arrows[g].name.clone(),
                    f: arrows[f].name.clone(),
                });
            }
        }
    }

    let cat = FinCategory::from_parts(spec.objects.clone(), arrows, identities, table);
    cat.check_laws()?;
    Ok(cat)
}

impl FinCategory {
    fn from_parts(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<ArrowId>,
        table: Vec<Option<ArrowId>>,
    ) -> Self {
        let n = arrows.len();
        let mut into = vec![ArrowSet::EMPTY; objects.len()];
        let mut out = vec![ArrowSet::EMPTY; objects.len()];
        for (i, a) in arrows.iter().enumerate() {
            into[a.target.0].insert(ArrowId(i));
            out[a.source.0].insert(ArrowId(i));
        }
        let mut cat = FinCategory {
            objects,
            arrows,
            identities,
            table,
            into,
            out,
            precomposites: Vec::new(),
        };
        cat.precomposites = (0..n)
            .map(|f| {
                let f = ArrowId(f);
                cat.into[cat.source(f).0]
                    .iter()
                    .map(|g| cat.compose(f, g))
                    .collect()
            })
            .collect();
        cat
    }

    fn check_laws(&self) -> Result<()> {
        for f in self.arrow_ids() {
            if self.compose(self.identity(self.target(f)), f) != f
                || self.compose(f, self.identity(self.source(f))) != f
            {
                return Err(Error::IdentityViolation {
                    arrow: self.arrow_name(f).to_string(),
                });
            }
        }
        for f in self.arrow_ids() {
            for g in self.out[self.target(f).0].iter() {
                let gf = self.compose(g, f);
                for h in self.out[self.target(g).0].iter() {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        return Err(Error::AssociativityViolation {
                            h: self.arrow_name(h).to_string(),
                            g: self.arrow_name(g).to_string(),
                            f: self.arrow_name(f).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_ids(&self) -> impl Iterator<Item = ObjectId> + Clone {
        (0..self.objects.len()).map(ObjectId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + Clone {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn object_name(&self, o: ObjectId) -> &str {
        &self.objects[o.0]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjectId> {
        self.objects.iter().position(|o| o == name).map(ObjectId)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn source(&self, a: ArrowId) -> ObjectId {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowId) -> ObjectId {
        self.arrows[a.0].target
    }

    pub fn identity(&self, o: ObjectId) -> ArrowId {
        self.identities[o.0]
    }

    pub fn is_identity(&self, a: ArrowId) -> bool {
        self.identities[self.source(a).0] == a
    }

    /// `g . f`; panics unless `target(f) == source(g)`.
    pub fn compose(&self, g: ArrowId, f: ArrowId) -> ArrowId {
        self.try_compose(g, f)
            .unwrap_or_else(|| panic!("arrows {g:?} . {f:?} are not composable"))
    }

    pub fn try_compose(&self, g: ArrowId, f: ArrowId) -> Option<ArrowId> {
        self.table[g.0 * self.arrows.len() + f.0]
    }

    /// Arrows with codomain `o`.
    pub fn arrows_into(&self, o: ObjectId) -> ArrowSet {
        self.into[o.0]
    }

    /// Arrows with domain `o`.
    pub fn arrows_from(&self, o: ObjectId) -> ArrowSet {
        self.out[o.0]
    }

    pub fn hom(&self, from: ObjectId, to: ObjectId) -> ArrowSet {
        self.out[from.0].intersection(self.into[to.0])
    }

    /// `{ f . g | g composable with f }`
    pub fn precomposites(&self, f: ArrowId) -> ArrowSet {
        self.precomposites[f.0]
    }

    pub fn all_arrows(&self) -> ArrowSet {
        self.arrow_ids().collect()
    }

    pub fn opposite(&self) -> FinCategory {
        let n = self.arrows.len();
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                name: a.name.clone(),
                source: a.target,
                target: a.source,
            })
            .collect();
        let mut table = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                table[g * n + f] = self.table[f * n + g];
            }
        }
        FinCategory::from_parts(self.objects.clone(), arrows, self.identities.clone(), table)
    }

    /// A description that `build_category` turns back into `self`.
    pub fn to_spec(&self) -> CategorySpec {
        let k = self.objects.len();
        let mut spec = CategorySpec {
            objects: self.objects.clone(),
            arrows: self.arrows[k..]
                .iter()
                .map(|a| ArrowDecl {
                    name: a.name.clone(),
                    source: self.objects[a.source.0].clone(),
                    target: self.objects[a.target.0].clone(),
                })
                .collect(),
            equations: Vec::new(),
        };
        for g in self.arrow_ids().filter(|a| !self.is_identity(*a)) {
            for f in self.arrows_into(self.source(g)).iter() {
                if self.is_identity(f) {
                    continue;
                }
                spec.equations.push(Equation {
                    outer: self.arrow_name(g).to_string(),
                    inner: self.arrow_name(f).to_string(),
                    result: self.arrow_name(self.compose(g, f)).to_string(),
                });
            }
        }
        spec
    }
}

pub fn opposite(c: &FinCategory) -> FinCategory {
    c.opposite()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    RightOre,
    Amalgamation,
    JointEmbedding,
}

/// The input configuration a property quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Configuration {
    /// `f: b -> a`, `g: c -> a`
    Cospan { f: ArrowId, g: ArrowId },
    /// `f: a -> b`, `g: a -> c`
    Span { f: ArrowId, g: ArrowId },
    Pair { a: ObjectId, b: ObjectId },
}

/// Legs completing a configuration: `(u, v)` with `f.u = g.v` for a cospan,
/// `u.f = v.g` for a span, `u: a -> c, v: b -> c` for a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Completion {
    pub input: Configuration,
    pub legs: (ArrowId, ArrowId),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: Property,
    pub holds: bool,
    pub failure: Option<Configuration>,
    pub completions: Vec<Completion>,
}

impl PropertyReport {
    /// Recomputes every recorded completion in `cat`.
    pub fn replay(&self, cat: &FinCategory) -> bool {
        self.completions.iter().all(|c| {
            let (u, v) = c.legs;
            match c.input {
                Configuration::Cospan { f, g } => {
                    cat.source(u) == cat.source(v)
                        && cat.try_compose(f, u).is_some()
                        && cat.try_compose(g, v).is_some()
                        && cat.compose(f, u) == cat.compose(g, v)
                }
                Configuration::Span { f, g } => {
                    cat.target(u) == cat.target(v)
                        && cat.try_compose(u, f).is_some()
                        && cat.try_compose(v, g).is_some()
                        && cat.compose(u, f) == cat.compose(v, g)
                }
                Configuration::Pair { a, b } => {
                    cat.source(u) == a && cat.source(v) == b && cat.target(u) == cat.target(v)
                }
            }
        })
    }

    fn collect(
        property: Property,
        inputs: impl Iterator<Item = Configuration>,
        mut complete: impl FnMut(Configuration) -> Option<(ArrowId, ArrowId)>,
    ) -> Self {
        let mut completions = Vec::new();
        for input in inputs {
            match complete(input) {
                Some(legs) => completions.push(Completion { input, legs }),
                None => {
                    return PropertyReport {
                        property,
                        holds: false,
                        failure: Some(input),
                        completions,
                    }
                }
            }
        }
        PropertyReport {
            property,
            holds: true,
            failure: None,
            completions,
        }
    }
}

pub fn check_right_ore(cat: &FinCategory) -> PropertyReport {
    let inputs = cat.object_ids().flat_map(|a| {
        let into = cat.arrows_into(a);
        into.iter()
            .flat_map(move |f| into.iter().map(move |g| Configuration::Cospan { f, g }))
    });
    PropertyReport::collect(Property::RightOre, inputs, |input| {
        let Configuration::Cospan { f, g } = input else {
            unreachable!()
        };
        for u in cat.arrows_into(cat.source(f)).iter() {
            let fu = cat.compose(f, u);
            let d = cat.source(u);
            if let Some(v) = cat
                .hom(d, cat.source(g))
                .iter()
                .find(|&v| cat.compose(g, v) == fu)
            {
                return Some((u, v));
            }
        }
        None
    })
}

pub fn check_amalgamation(cat: &FinCategory) -> PropertyReport {
    let inputs = cat.object_ids().flat_map(|a| {
        let out = cat.arrows_from(a);
        out.iter()
            .flat_map(move |f| out.iter().map(move |g| Configuration::Span { f, g }))
    });
    let report = PropertyReport::collect(Property::Amalgamation, inputs, |input| {
        let Configuration::Span { f, g } = input else {
            unreachable!()
        };
        for u in cat.arrows_from(cat.target(f)).iter() {
            let uf = cat.compose(u, f);
            let d = cat.target(u);
            if let Some(v) = cat
                .hom(cat.target(g), d)
                .iter()
                .find(|&v| cat.compose(v, g) == uf)
            {
                return Some((u, v));
            }
        }
        None
    });
    debug_assert_eq!(report.holds, check_right_ore(&cat.opposite()).holds);
    report
}

pub fn check_joint_embedding(cat: &FinCategory) -> PropertyReport {
    let inputs = cat.object_ids().flat_map(|a| {
        cat.object_ids()
            .filter(move |b| *b >= a)
            .map(move |b| Configuration::Pair { a, b })
    });
    PropertyReport::collect(Property::JointEmbedding, inputs, |input| {
        let Configuration::Pair { a, b } = input else {
            unreachable!()
        };
        cat.object_ids().find_map(|c| {
            let u = cat.hom(a, c).iter().next()?;
            let v = cat.hom(b, c).iter().next()?;
            Some((u, v))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow_cat() -> FinCategory {
        CategorySpec::new()
            .objects(&["a", "b"])
            .arrow("f", "a", "b")
            .build()
            .unwrap()
    }

    fn z2() -> FinCategory {
        CategorySpec::new()
            .object("*")
            .arrow("s", "*", "*")
            .compose("s", "s", "id_*")
            .build()
            .unwrap()
    }

    #[test]
    fn terminal_category_has_one_arrow() {
        let c = CategorySpec::new().object("*").build().unwrap();
        assert_eq!(c.arrow_count(), 1);
        assert!(c.is_identity(ArrowId(0)));
        assert_eq!(c.arrow_name(ArrowId(0)), "id_*");
    }

    #[test]
    fn arrow_category_has_three_arrows() {
        let c = arrow_cat();
        assert_eq!(c.arrow_count(), 3);
        let f = c.arrow_by_name("f").unwrap();
        assert_eq!(c.hom(ObjectId(0), ObjectId(1)), ArrowSet::singleton(f));
    }

    #[test]
    fn z2_is_associative_over_all_triples() {
        let c = z2();
        let s = c.arrow_by_name("s").unwrap();
        let e = c.identity(ObjectId(0));
        assert_eq!(c.compose(s, s), e);
        let all = [e, s];
        let mut triples = 0;
        for h in all {
            for g in all {
                for f in all {
                    triples += 1;
                    assert_eq!(c.compose(h, c.compose(g, f)), c.compose(c.compose(h, g), f));
                }
            }
        }
        assert_eq!(triples, 8);
    }

    #[test]
    fn missing_composite_is_reported() {
        let err = CategorySpec::new()
            .object("*")
            .arrow("s", "*", "*")
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::MissingComposite { .. }));
    }

    #[test]
    fn associativity_violation_is_reported() {
        // s.s = t, s.t = s, t.s = t, t.t = t breaks (s.s).s = s.(s.s)
        let err = CategorySpec::new()
            .object("*")
            .arrow("s", "*", "*")
            .arrow("t", "*", "*")
            .compose("s", "s", "t")
            .compose("s", "t", "s")
            .compose("t", "s", "t")
            .compose("t", "t", "t")
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::AssociativityViolation { .. }), "{err:?}");
    }

    #[test]
    fn identity_equation_must_be_consistent() {
        let err = CategorySpec::new()
            .objects(&["a", "b"])
            .arrow("f", "a", "b")
            .arrow("g", "a", "b")
            .compose("id_b", "f", "g")
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::IdentityViolation { .. }));
    }

    #[test]
    fn typing_errors() {
        let spec = CategorySpec::new()
            .objects(&["a", "b"])
            .arrow("f", "a", "b");
        assert!(matches!(
            spec.clone().compose("f", "f", "f").build(),
            Err(Error::NotComposable { .. })
        ));
        assert!(matches!(
            spec.clone().arrow("g", "b", "a").compose("g", "f", "f").build(),
            Err(Error::CompositeTyping { .. })
        ));
        assert!(matches!(
            spec.clone().arrow("f", "b", "a").build(),
            Err(Error::DuplicateName(_))
        ));
        assert!(matches!(
            spec.arrow("g", "a", "c").build(),
            Err(Error::UnknownName { .. })
        ));
    }

    #[test]
    fn size_guard() {
        let spec = CategorySpec::new().objects(&["a", "b", "c"]);
        let budget = Budget {
            max_objects: 2,
            ..Budget::default()
        };
        assert!(matches!(
            build_category(&spec, &budget),
            Err(Error::SizeGuard { count: 3, .. })
        ));
    }

    #[test]
    fn opposite_reverses_and_is_involutive() {
        let c = arrow_cat();
        let op = c.opposite();
        let f = op.arrow_by_name("f").unwrap();
        assert_eq!(op.source(f), ObjectId(1));
        assert_eq!(op.target(f), ObjectId(0));
        assert_eq!(op.opposite(), c);
        op.check_laws().unwrap();
    }

    #[test]
    fn spec_round_trip() {
        let c = z2();
        assert_eq!(c.to_spec().build().unwrap(), c);
    }

    #[test]
    fn properties_of_small_categories() {
        let c = arrow_cat();
        for r in [
            check_right_ore(&c),
            check_amalgamation(&c),
            check_joint_embedding(&c),
        ] {
            assert!(r.holds);
            assert!(r.replay(&c));
        }
        // cospans into a: (id,id); into b: 2x2 pairs of {id_b, f}
        assert_eq!(check_right_ore(&c).completions.len(), 5);
        assert_eq!(check_joint_embedding(&c).completions.len(), 3);

        let d = CategorySpec::new().objects(&["a", "b"]).build().unwrap();
        assert!(check_right_ore(&d).holds);
        assert!(check_amalgamation(&d).holds);
        let jep = check_joint_embedding(&d);
        assert!(!jep.holds);
        assert_eq!(
            jep.failure,
            Some(Configuration::Pair {
                a: ObjectId(0),
                b: ObjectId(1)
            })
        );
        assert!(check_right_ore(&z2()).holds);
    }

    #[test]
    fn span_category_fails_amalgamation() {
        let c = CategorySpec::new()
            .objects(&["a", "b", "c"])
            .arrow("f", "c", "a")
            .arrow("g", "c", "b")
            .build()
            .unwrap();
        let r = check_amalgamation(&c);
        assert!(!r.holds);
        assert!(matches!(r.failure, Some(Configuration::Span { .. })));
        assert!(!check_right_ore(&c.opposite()).holds);
    }

    #[test]
    fn arrow_set_subsets() {
        let s = ArrowSet(0b1010);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs, vec![ArrowSet(0), ArrowSet(2), ArrowSet(8), ArrowSet(10)]);
        assert_eq!(ArrowSet::EMPTY.subsets().count(), 1);
    }
}
