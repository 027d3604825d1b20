//! Builds engine values from workspace blocks, by name.

use std::collections::HashMap;
use std::sync::Arc;

use sitekit_core::*;

use crate::ast::*;
use crate::error::{CliError, CliResult};

pub struct Session<'w> {
    pub ws: &'w Workspace,
    pub budget: Budget,
    universes: HashMap<String, Arc<SieveUniverse>>,
}

pub fn category_spec(b: &CategoryBlock) -> CategorySpec {
    let mut spec = CategorySpec::new();
    for o in &b.objects {
        spec = spec.object(&o.name);
    }
    for a in &b.arrows {
        spec = spec.arrow(&a.name.name, &a.source.name, &a.target.name);
    }
    for e in &b.equations {
        spec = spec.compose(&e.outer.name, &e.inner.name, &e.result.name);
    }
    spec
}

fn functor_spec(b: &FunctorBlock) -> SetFunctorSpec {
    SetFunctorSpec {
        sets: b
            .sets
            .iter()
            .map(|s| {
                (
                    s.object.name.clone(),
                    s.elements.iter().map(|e| e.name.clone()).collect(),
                )
            })
            .collect(),
        actions: b
            .actions
            .iter()
            .map(|a| {
                (
                    a.arrow.name.clone(),
                    a.pairs
                        .iter()
                        .map(|(x, y)| (x.name.clone(), y.name.clone()))
                        .collect(),
                )
            })
            .collect(),
    }
}

fn not_found(what: &str, name: &str) -> CliError {
    CliError::input("unknown_name", format!("no {what} named '{name}' in the workspace"))
}

impl<'w> Session<'w> {
    pub fn new(ws: &'w Workspace, budget: Budget) -> Session<'w> {
        Session {
            ws,
            budget,
            universes: HashMap::new(),
        }
    }

    pub fn category(&mut self, name: &str) -> CliResult<Arc<FinCategory>> {
        Ok(self.universe(name)?.category().clone())
    }

    pub fn universe(&mut self, name: &str) -> CliResult<Arc<SieveUniverse>> {
        if let Some(u) = self.universes.get(name) {
            return Ok(u.clone());
        }
        let b = self.ws.category(name).ok_or_else(|| not_found("category", name))?;
        let wrap = |e: Error| CliError::from(e).within("category", name, b.name.pos);
        let cat = build_category(&category_spec(b), &self.budget).map_err(wrap)?;
        let u = SieveUniverse::new(Arc::new(cat), &self.budget).map_err(wrap)?;
        self.universes.insert(name.to_string(), u.clone());
        Ok(u)
    }

    /// The least topology containing the block's kind (trivial when absent)
    /// and its listed covers.
    pub fn topology(&mut self, name: &str) -> CliResult<GrothendieckTopology> {
        let b = self.ws.topology(name).ok_or_else(|| not_found("topology", name))?;
        let u = self.universe(&b.category.name)?;
        let wrap = |e: Error| CliError::from(e).within("topology", name, b.name.pos);
        let start = canonical_topology(&u, b.kind.unwrap_or(TopologyKind::Trivial)).map_err(wrap)?;
        if b.covers.is_empty() {
            return Ok(start);
        }
        let mut seeds = start.all_covers();
        seeds.extend(self.seeds(b)?);
        generate_topology(&u, &seeds).map_err(wrap)
    }

    /// The block's `cover` lines, each closed to a sieve.
    pub fn seeds(&mut self, b: &TopologyBlock) -> CliResult<Vec<Sieve>> {
        let cat = self.category(&b.category.name)?;
        b.covers
            .iter()
            .map(|c| {
                let o = cat.object_by_name(&c.object.name).expect("resolved object");
                let mut gens = ArrowSet::EMPTY;
                for a in &c.arrows {
                    gens.insert(cat.arrow_by_name(&a.name).expect("resolved arrow"));
                }
                close_to_sieve(&cat, o, gens)
                    .map_err(|e| CliError::from(e).within("topology", &b.name.name, c.object.pos))
            })
            .collect()
    }

    pub fn site(&mut self, name: &str) -> CliResult<GrothendieckTopology> {
        let b = self.ws.site(name).ok_or_else(|| not_found("site", name))?;
        self.topology(&b.topology.name)
    }

    pub fn functor(&mut self, name: &str) -> CliResult<SetFunctor> {
        let b = self.ws.functor(name).ok_or_else(|| {
            if self.ws.presheaf(name).is_some() {
                CliError::input("wrong_variance", format!("'{name}' is a presheaf, a functor is expected"))
            } else {
                not_found("functor", name)
            }
        })?;
        self.set_functor(b, Variance::Covariant, "functor")
    }

    pub fn presheaf(&mut self, name: &str) -> CliResult<SetFunctor> {
        let b = self.ws.presheaf(name).ok_or_else(|| {
            if self.ws.functor(name).is_some() {
                CliError::input("wrong_variance", format!("'{name}' is a functor, a presheaf is expected"))
            } else {
                not_found("presheaf", name)
            }
        })?;
        self.set_functor(b, Variance::Contravariant, "presheaf")
    }

    fn set_functor(&mut self, b: &FunctorBlock, v: Variance, what: &str) -> CliResult<SetFunctor> {
        let cat = self.category(&b.category.name)?;
        SetFunctor::from_spec(cat, v, &functor_spec(b))
            .map_err(|e| CliError::from(e).within(what, &b.name.name, b.name.pos))
    }

    /// The functor or presheaf must live on the site's category.
    pub fn same_category(&self, site: &GrothendieckTopology, f: &SetFunctor, name: &str) -> CliResult<()> {
        if f.category() == site.category() {
            Ok(())
        } else {
            Err(CliError::input(
                "category_mismatch",
                format!("'{name}' is not on the site's category"),
            ))
        }
    }
}
