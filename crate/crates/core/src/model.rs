//! Finite-set models of the theory of flat continuous functors on a site.
//!
//! A model is a covariant [`SetFunctor`] that is functorial, flat (axioms 3
//! to 5 below) and sends covering sieves to jointly surjective families.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::budget::Budget;
use crate::category::{ArrowId, FinCategory, ObjectId};
use crate::error::{Error, Result};
use crate::functor::{FunctorialityReport, SetFunctor, Variance};
use crate::sieve::Sieve;
use crate::topology::GrothendieckTopology;

fn require_covariant(f: &SetFunctor) -> Result<()> {
    if f.variance() == Variance::Covariant {
        Ok(())
    } else {
        Err(Error::Malformed("expected a covariant functor".into()))
    }
}

fn same_category(a: &SetFunctor, b: &SetFunctor) -> Result<()> {
    if Arc::ptr_eq(a.category(), b.category()) || **a.category() == **b.category() {
        Ok(())
    } else {
        Err(Error::CategoryMismatch)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpanFailure {
    pub a: ObjectId,
    pub x: usize,
    pub b: ObjectId,
    pub y: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EqualizerFailure {
    pub f: ArrowId,
    pub g: ArrowId,
    pub x: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatnessReport {
    /// Axiom 3: some set is inhabited.
    pub nonempty: bool,
    /// Axiom 4: any two elements come from a common element along a span.
    pub span_completion: bool,
    pub span_failure: Option<SpanFailure>,
    /// Axiom 5: an element equalized by a parallel pair comes from an
    /// element along an arrow equalizing the pair.
    pub equalizing: bool,
    pub equalizing_failure: Option<EqualizerFailure>,
}

impl FlatnessReport {
    pub fn flat(&self) -> bool {
        self.nonempty && self.span_completion && self.equalizing
    }
}

/// Elements of the category of elements, `(object, element)`.
fn elements(f: &SetFunctor) -> Vec<(ObjectId, usize)> {
    f.category()
        .object_ids()
        .flat_map(|o| (0..f.card(o)).map(move |x| (o, x)))
        .collect()
}

pub fn check_flatness(f: &SetFunctor) -> Result<FlatnessReport> {
    require_covariant(f)?;
    let cat = f.category();
    let els = elements(f);
    let index: BTreeMap<(ObjectId, usize), usize> =
        els.iter().enumerate().map(|(i, &e)| (e, i)).collect();

    let nonempty = !els.is_empty();

    // reach[i] = elements reachable from element i along some arrow.
    let reach: Vec<Vec<usize>> = els
        .iter()
        .map(|&(c, z)| {
            let mut r: Vec<usize> = cat
                .arrows_from(c)
                .iter()
                .map(|h| index[&(cat.target(h), f.act(h, z))])
                .collect();
            r.sort_unstable();
            r.dedup();
            r
        })
        .collect();
    let n = els.len();
    let mut joined = vec![false; n * n];
    for r in &reach {
        for &i in r {
            for &k in r {
                joined[i * n + k] = true;
            }
        }
    }
    let span_failure = (0..n)
        .flat_map(|i| (0..n).map(move |k| (i, k)))
        .find(|&(i, k)| !joined[i * n + k])
        .map(|(i, k)| SpanFailure {
            a: els[i].0,
            x: els[i].1,
            b: els[k].0,
            y: els[k].1,
        });

    let mut equalizing_failure = None;
    'eq: for a in cat.object_ids() {
        for b in cat.object_ids() {
            let hom: Vec<ArrowId> = cat.hom(a, b).iter().collect();
            for (i, &p) in hom.iter().enumerate() {
                for &q in &hom[i + 1..] {
                    let equalizers: Vec<ArrowId> = cat
                        .arrows_into(a)
                        .iter()
                        .filter(|&h| cat.compose(p, h) == cat.compose(q, h))
                        .collect();
                    for x in 0..f.card(a) {
                        if f.act(p, x) != f.act(q, x) {
                            continue;
                        }
                        let lifted = equalizers.iter().any(|&h| {
                            (0..f.card(cat.source(h))).any(|z| f.act(h, z) == x)
                        });
                        if !lifted {
                            equalizing_failure = Some(EqualizerFailure { f: p, g: q, x });
                            break 'eq;
                        }
                    }
                }
            }
        }
    }

    Ok(FlatnessReport {
        nonempty,
        span_completion: span_failure.is_none(),
        span_failure,
        equalizing: equalizing_failure.is_none(),
        equalizing_failure,
    })
}

/// Builds the category of elements explicitly and tests that it is
/// cofiltered. An independent route to [`check_flatness`].
pub fn check_flatness_via_elements(f: &SetFunctor) -> Result<bool> {
    require_covariant(f)?;
    let cat = f.category();
    let els = elements(f);
    if els.is_empty() {
        return Ok(false);
    }
    // Arrows of el(F): (h, source element) from (C, z) to (D, F(h) z).
    let mut arrows: Vec<(usize, usize, ArrowId)> = Vec::new();
    for (i, &(c, z)) in els.iter().enumerate() {
        for h in cat.arrows_from(c).iter() {
            let t = els
                .iter()
                .position(|&e| e == (cat.target(h), f.act(h, z)))
                .unwrap();
            arrows.push((i, t, h));
        }
    }
    let n = els.len();
    let cone = (0..n).all(|i| {
        (0..n).all(|k| {
            (0..n).any(|w| {
                arrows.iter().any(|&(s, t, _)| s == w && t == i)
                    && arrows.iter().any(|&(s, t, _)| s == w && t == k)
            })
        })
    });
    let equalized = arrows.iter().all(|&(s1, t1, u)| {
        arrows
            .iter()
            .filter(|&&(s2, t2, _)| s2 == s1 && t2 == t1)
            .all(|&(_, _, v)| {
                arrows.iter().any(|&(_, t, w)| {
                    t == s1 && cat.compose(u, w) == cat.compose(v, w)
                })
            })
    });
    Ok(cone && equalized)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContinuityFailure {
    pub object: ObjectId,
    pub sieve: Sieve,
    pub element: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContinuityReport {
    pub continuous: bool,
    pub failure: Option<ContinuityFailure>,
    /// Set when the functor is not flat; continuity is still evaluated.
    pub flatness_note: Option<String>,
}

pub fn check_continuity(site: &GrothendieckTopology, f: &SetFunctor) -> Result<ContinuityReport> {
    require_covariant(f)?;
    if **f.category() != **site.category() {
        return Err(Error::CategoryMismatch);
    }
    let cat = f.category();
    let flatness_note = if check_flatness(f)?.flat() {
        None
    } else {
        Some("functor is not flat".to_string())
    };
    for sieve in site.all_covers() {
        let a = sieve.base();
        let mut hit = vec![false; f.card(a)];
        for h in sieve.members().iter() {
            for y in 0..f.card(cat.source(h)) {
                hit[f.act(h, y)] = true;
            }
        }
        if let Some(element) = hit.iter().position(|&h| !h) {
            return Ok(ContinuityReport {
                continuous: false,
                failure: Some(ContinuityFailure {
                    object: a,
                    sieve,
                    element,
                }),
                flatness_note,
            });
        }
    }
    Ok(ContinuityReport {
        continuous: true,
        failure: None,
        flatness_note,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelReport {
    pub functoriality: FunctorialityReport,
    pub flatness: Option<FlatnessReport>,
    pub continuity: Option<ContinuityReport>,
    pub is_model: bool,
}

pub fn check_model(site: &GrothendieckTopology, f: &SetFunctor) -> Result<ModelReport> {
    require_covariant(f)?;
    let functoriality = f.validate();
    if !functoriality.valid {
        return Ok(ModelReport {
            functoriality,
            flatness: None,
            continuity: None,
            is_model: false,
        });
    }
    let flatness = check_flatness(f)?;
    let continuity = check_continuity(site, f)?;
    let is_model = flatness.flat() && continuity.continuous;
    Ok(ModelReport {
        functoriality,
        flatness: Some(flatness),
        continuity: Some(continuity),
        is_model,
    })
}

/// Name-ordered description used to compare models across categories that
/// differ only in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm {
    pub cards: Vec<(String, usize)>,
    pub actions: Vec<(String, Vec<usize>)>,
}

/// Per-object maps `eta[o][x]` from `f` to `g` that commute with every action.
/// With `bijective` set only isomorphisms are produced. Stops after `limit`
/// search nodes.
fn search_transformations(
    f: &SetFunctor,
    g: &SetFunctor,
    bijective: bool,
    first_only: bool,
    limit: usize,
) -> Result<Vec<Vec<Vec<usize>>>> {
    let cat = f.category();
    let els = elements(f);
    let pos: BTreeMap<(ObjectId, usize), usize> =
        els.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    // Naturality constraints G(h)(eta e) = eta(F(h) e), filed under the
    // later of the two elements.
    let mut constraints: Vec<Vec<(usize, ArrowId, usize)>> = vec![Vec::new(); els.len()];
    for (i, &(o, x)) in els.iter().enumerate() {
        for h in cat.arrows_from(o).iter() {
            let t = pos[&(cat.target(h), f.act(h, x))];
            constraints[i.max(t)].push((i, h, t));
        }
    }
    let mut assign = vec![0usize; els.len()];
    let mut used: Vec<Vec<bool>> = cat.object_ids().map(|o| vec![false; g.card(o)]).collect();
    let mut out = Vec::new();
    let mut nodes = 0usize;

    struct Ctx<'a> {
        f: &'a SetFunctor,
        g: &'a SetFunctor,
        els: &'a [(ObjectId, usize)],
        constraints: &'a [Vec<(usize, ArrowId, usize)>],
        bijective: bool,
        first_only: bool,
        limit: usize,
    }

    fn go(
        ctx: &Ctx<'_>,
        i: usize,
        assign: &mut Vec<usize>,
        used: &mut Vec<Vec<bool>>,
        out: &mut Vec<Vec<Vec<usize>>>,
        nodes: &mut usize,
    ) -> Result<()> {
        if ctx.first_only && !out.is_empty() {
            return Ok(());
        }
        if i == ctx.els.len() {
            let cat = ctx.f.category();
            let mut eta: Vec<Vec<usize>> =
                cat.object_ids().map(|o| vec![0; ctx.f.card(o)]).collect();
            for (k, &(o, x)) in ctx.els.iter().enumerate() {
                eta[o.0][x] = assign[k];
            }
            out.push(eta);
            return Ok(());
        }
        let (o, _) = ctx.els[i];
        for v in 0..ctx.g.card(o) {
            if ctx.bijective && used[o.0][v] {
                continue;
            }
            *nodes += 1;
            Budget::guard("natural transformation search nodes", *nodes, ctx.limit)?;
            assign[i] = v;
            let ok = ctx.constraints[i]
                .iter()
                .all(|&(s, h, t)| ctx.g.act(h, assign[s]) == assign[t]);
            if ok {
                used[o.0][v] = true;
                go(ctx, i + 1, assign, used, out, nodes)?;
                used[o.0][v] = false;
            }
        }
        Ok(())
    }

    if bijective && f.cards() != g.cards() {
        return Ok(out);
    }
    let ctx = Ctx {
        f,
        g,
        els: &els,
        constraints: &constraints,
        bijective,
        first_only,
        limit,
    };
    go(&ctx, 0, &mut assign, &mut used, &mut out, &mut nodes)?;
    Ok(out)
}

/// A natural isomorphism `f -> g` as per-object bijections, if one exists.
pub fn iso_check(
    f: &SetFunctor,
    g: &SetFunctor,
    budget: &Budget,
) -> Result<Option<Vec<Vec<usize>>>> {
    same_category(f, g)?;
    if f.variance() != g.variance() {
        return Ok(None);
    }
    Ok(search_transformations(f, g, true, true, budget.max_search)?
        .into_iter()
        .next())
}

pub fn natural_transformations(
    f: &SetFunctor,
    g: &SetFunctor,
    budget: &Budget,
) -> Result<Vec<Vec<Vec<usize>>>> {
    same_category(f, g)?;
    if f.variance() != g.variance() {
        return Err(Error::Malformed("functors of different variance".into()));
    }
    search_transformations(f, g, false, false, budget.max_search)
}

fn object_order(cat: &FinCategory) -> Vec<ObjectId> {
    let mut o: Vec<ObjectId> = cat.object_ids().collect();
    o.sort_by(|a, b| cat.object_name(*a).cmp(cat.object_name(*b)));
    o
}

fn arrow_order(cat: &FinCategory) -> Vec<ArrowId> {
    let mut a: Vec<ArrowId> = cat.arrow_ids().filter(|&a| !cat.is_identity(a)).collect();
    a.sort_by(|x, y| cat.arrow_name(*x).cmp(cat.arrow_name(*y)));
    a
}

/// Lexicographically least action table over all per-object relabellings.
pub fn canonical_form(f: &SetFunctor, budget: &Budget) -> Result<CanonicalForm> {
    let cat = f.category();
    let objects = object_order(cat);
    let arrows = arrow_order(cat);
    let count: usize = objects
        .iter()
        .map(|&o| (1..=f.card(o)).product::<usize>())
        .try_fold(1usize, |acc, k| acc.checked_mul(k))
        .unwrap_or(usize::MAX);
    Budget::guard("relabellings for canonical form", count, budget.max_search)?;

    let perms: Vec<Vec<Vec<usize>>> = cat
        .object_ids()
        .map(|o| permutations(f.card(o)))
        .collect();
    let mut choice = vec![0usize; cat.object_count()];
    let mut best: Option<Vec<Vec<usize>>> = None;
    loop {
        let tables: Vec<Vec<usize>> = arrows
            .iter()
            .map(|&h| {
                let (s, t) = (f.reads(h), f.writes(h));
                let (ps, pt) = (&perms[s.0][choice[s.0]], &perms[t.0][choice[t.0]]);
                let mut row = vec![0; f.card(s)];
                for x in 0..f.card(s) {
                    row[ps[x]] = pt[f.act(h, x)];
                }
                row
            })
            .collect();
        if best.as_ref().is_none_or(|b| tables < *b) {
            best = Some(tables);
        }
        // Odometer over relabellings.
        let mut k = 0;
        loop {
            if k == choice.len() {
                let best = best.unwrap();
                return Ok(CanonicalForm {
                    cards: objects
                        .iter()
                        .map(|&o| (cat.object_name(o).to_string(), f.card(o)))
                        .collect(),
                    actions: arrows
                        .iter()
                        .map(|&h| cat.arrow_name(h).to_string())
                        .zip(best)
                        .collect(),
                });
            }
            choice[k] += 1;
            if choice[k] < perms[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Rebuilds a functor on `cat` from a canonical form, naming elements by index.
pub fn from_canonical(cat: Arc<FinCategory>, form: &CanonicalForm) -> Result<SetFunctor> {
    let mut sets = vec![Vec::new(); cat.object_count()];
    for (name, n) in &form.cards {
        let o = cat.object_by_name(name).ok_or_else(|| Error::UnknownName {
            kind: "object",
            name: name.clone(),
        })?;
        sets[o.0] = (0..*n).map(|i| i.to_string()).collect();
    }
    let mut action: Vec<Vec<usize>> = cat
        .arrow_ids()
        .map(|a| (0..sets[cat.source(a).0].len()).collect())
        .collect();
    for (name, row) in &form.actions {
        let a = cat.arrow_by_name(name).ok_or_else(|| Error::UnknownName {
            kind: "arrow",
            name: name.clone(),
        })?;
        action[a.0] = row.clone();
    }
    SetFunctor::from_tables(cat, Variance::Covariant, sets, action)
}

/// Every functorial table assignment with the given cardinalities.
fn functorial_tables(
    cat: &Arc<FinCategory>,
    cards: &[usize],
    nodes: &mut usize,
    limit: usize,
    out: &mut Vec<Vec<Vec<usize>>>,
) -> Result<()> {
    // Composition constraints (g, f, g.f) filed under the largest arrow id.
    let mut constraints: Vec<Vec<(ArrowId, ArrowId, ArrowId)>> =
        vec![Vec::new(); cat.arrow_count()];
    for f in cat.arrow_ids() {
        for g in cat.arrows_from(cat.target(f)).iter() {
            let gf = cat.compose(g, f);
            constraints[f.0.max(g.0).max(gf.0)].push((g, f, gf));
        }
    }
    let mut tables: Vec<Vec<usize>> = cat
        .arrow_ids()
        .map(|a| (0..cards[cat.source(a).0]).collect())
        .collect();

    fn rows(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
        let total = if n == 0 { 1 } else { m.checked_pow(n as u32).unwrap_or(0) };
        (0..total).map(move |mut code| {
            (0..n)
                .map(|_| {
                    let d = code % m;
                    code /= m;
                    d
                })
                .collect()
        })
    }

    fn go(
        cat: &FinCategory,
        cards: &[usize],
        a: usize,
        tables: &mut Vec<Vec<usize>>,
        constraints: &[Vec<(ArrowId, ArrowId, ArrowId)>],
        nodes: &mut usize,
        limit: usize,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) -> Result<()> {
        if a == cat.arrow_count() {
            out.push(tables.clone());
            return Ok(());
        }
        let arrow = ArrowId(a);
        let options: Vec<Vec<usize>> = if cat.is_identity(arrow) {
            vec![(0..cards[cat.source(arrow).0]).collect()]
        } else {
            rows(cards[cat.source(arrow).0], cards[cat.target(arrow).0]).collect()
        };
        for row in options {
            *nodes += 1;
            Budget::guard("action table search nodes", *nodes, limit)?;
            tables[a] = row;
            let ok = constraints[a].iter().all(|&(g, f, gf)| {
                (0..cards[cat.source(f).0]).all(|x| tables[gf.0][x] == tables[g.0][tables[f.0][x]])
            });
            if ok {
                go(cat, cards, a + 1, tables, constraints, nodes, limit, out)?;
            }
        }
        Ok(())
    }

    go(cat, cards, 0, &mut tables, &constraints, nodes, limit, out)
}

/// Flat functors with every set of size at most `max_card`, one per
/// isomorphism class, in canonical order.
pub fn enumerate_flat_functors(
    cat: &Arc<FinCategory>,
    max_card: usize,
    budget: &Budget,
) -> Result<Vec<SetFunctor>> {
    enumerate_filtered(cat, max_card, budget, |_| Ok(true))
}

/// Models of the site with every set of size at most `max_card`, one per
/// isomorphism class, in canonical order.
pub fn enumerate_models(
    site: &GrothendieckTopology,
    max_card: usize,
    budget: &Budget,
) -> Result<Vec<SetFunctor>> {
    enumerate_filtered(site.category(), max_card, budget, |f| {
        Ok(check_continuity(site, f)?.continuous)
    })
}

fn enumerate_filtered(
    cat: &Arc<FinCategory>,
    max_card: usize,
    budget: &Budget,
    keep: impl Fn(&SetFunctor) -> Result<bool>,
) -> Result<Vec<SetFunctor>> {
    let n = cat.object_count();
    Budget::guard(
        "cardinality bound times objects",
        max_card * n,
        budget.max_elements,
    )?;
    let mut found: BTreeMap<CanonicalForm, ()> = BTreeMap::new();
    let mut nodes = 0usize;
    let mut cards = vec![0usize; n];
    loop {
        let mut raw = Vec::new();
        functorial_tables(cat, &cards, &mut nodes, budget.max_search, &mut raw)?;
        for tables in raw {
            let sets = cards
                .iter()
                .map(|&k| (0..k).map(|i| i.to_string()).collect())
                .collect();
            let f = SetFunctor::from_tables(cat.clone(), Variance::Covariant, sets, tables)?;
            if check_flatness(&f)?.flat() && keep(&f)? {
                found.insert(canonical_form(&f, budget)?, ());
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                return found
                    .into_keys()
                    .map(|form| from_canonical(cat.clone(), &form))
                    .collect();
            }
            cards[k] += 1;
            if cards[k] <= max_card {
                break;
            }
            cards[k] = 0;
            k += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomogeneityFailure {
    /// Indices into the finitely presentable list.
    pub a: usize,
    pub b: usize,
    pub j: Vec<Vec<usize>>,
    pub chi: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomogeneityReport {
    pub homogeneous: bool,
    pub failure: Option<HomogeneityFailure>,
    pub triangles_checked: usize,
}

/// For all `a, b` in `fp`, every `j: a -> b` and `chi: a -> m` factor as
/// `chi = chi' . j` for some `chi': b -> m`.
pub fn check_homogeneous(
    m: &SetFunctor,
    fp: &[SetFunctor],
    budget: &Budget,
) -> Result<HomogeneityReport> {
    require_covariant(m)?;
    let mut triangles_checked = 0;
    for (ai, a) in fp.iter().enumerate() {
        let into_m = natural_transformations(a, m, budget)?;
        for (bi, b) in fp.iter().enumerate() {
            let js = natural_transformations(a, b, budget)?;
            let lifts = natural_transformations(b, m, budget)?;
            for j in &js {
                for chi in &into_m {
                    triangles_checked += 1;
                    let fills = lifts.iter().any(|l| {
                        j.iter()
                            .enumerate()
                            .all(|(o, row)| row.iter().enumerate().all(|(x, &y)| l[o][y] == chi[o][x]))
                    });
                    if !fills {
                        return Ok(HomogeneityReport {
                            homogeneous: false,
                            failure: Some(HomogeneityFailure {
                                a: ai,
                                b: bi,
                                j: j.clone(),
                                chi: chi.clone(),
                            }),
                            triangles_checked,
                        });
                    }
                }
            }
        }
    }
    Ok(HomogeneityReport {
        homogeneous: true,
        failure: None,
        triangles_checked,
    })
}
