//! Finite-set-valued functors, in either variance.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::category::{ArrowId, FinCategory, ObjectId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variance {
    /// `F(f): F(source f) -> F(target f)`
    Covariant,
    /// `P(f): P(target f) -> P(source f)`
    Contravariant,
}

/// Element sets per object and one action table per arrow. `action[f][x]`
/// is the image of element `x` of the set the action reads from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunctor {
    cat: Arc<FinCategory>,
    variance: Variance,
    sets: Vec<Vec<String>>,
    action: Vec<Vec<usize>>,
}

/// Name-based description of a set-valued functor, as written in a workspace.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SetFunctorSpec {
    pub sets: Vec<(String, Vec<String>)>,
    pub actions: Vec<(String, Vec<(String, String)>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctorialityReport {
    pub valid: bool,
    /// `(g, f)` with `g . f` defined and the composite law failing, or
    /// `(id, id)` for a non-identity identity action.
    pub failure: Option<(ArrowId, ArrowId)>,
}

impl SetFunctor {
    /// Builds from raw tables. Only shapes are checked; use
    /// [`SetFunctor::validate`] for functoriality.
    pub fn from_tables(
        cat: Arc<FinCategory>,
        variance: Variance,
        sets: Vec<Vec<String>>,
        action: Vec<Vec<usize>>,
    ) -> Result<SetFunctor> {
        if sets.len() != cat.object_count() {
            return Err(Error::Malformed(format!(
                "{} element sets for {} objects",
                sets.len(),
                cat.object_count()
            )));
        }
        if action.len() != cat.arrow_count() {
            return Err(Error::Malformed(format!(
                "{} action tables for {} arrows",
                action.len(),
                cat.arrow_count()
            )));
        }
        let f = SetFunctor {
            cat,
            variance,
            sets,
            action,
        };
        for a in f.cat.arrow_ids() {
            let (from, to) = (f.reads(a), f.writes(a));
            let table = &f.action[a.0];
            if table.len() != f.sets[from.0].len() || table.iter().any(|&y| y >= f.sets[to.0].len())
            {
                return Err(Error::Malformed(format!(
                    "action of `{}` is not a function {} -> {}",
                    f.cat.arrow_name(a),
                    f.cat.object_name(from),
                    f.cat.object_name(to)
                )));
            }
        }
        Ok(f)
    }

    /// Resolves names. Identity actions are implicit; any other action may
    /// be omitted only when it is forced (empty domain or one-element
    /// codomain).
    pub fn from_spec(
        cat: Arc<FinCategory>,
        variance: Variance,
        spec: &SetFunctorSpec,
    ) -> Result<SetFunctor> {
        let mut sets: Vec<Option<Vec<String>>> = vec![None; cat.object_count()];
        for (obj, elems) in &spec.sets {
            let o = cat.object_by_name(obj).ok_or_else(|| Error::UnknownName {
                kind: "object",
                name: obj.clone(),
            })?;
            if sets[o.0].is_some() {
                return Err(Error::DuplicateName(obj.clone()));
            }
            let mut seen = std::collections::HashSet::new();
            for e in elems {
                if !seen.insert(e) {
                    return Err(Error::DuplicateName(e.clone()));
                }
            }
            sets[o.0] = Some(elems.clone());
        }
        let sets: Vec<Vec<String>> = sets.into_iter().map(Option::unwrap_or_default).collect();
        let index: Vec<HashMap<&str, usize>> = sets
            .iter()
            .map(|s| s.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect())
            .collect();

        let mut action: Vec<Option<Vec<usize>>> = vec![None; cat.arrow_count()];
        let reads = |a: ArrowId| match variance {
            Variance::Covariant => cat.source(a),
            Variance::Contravariant => cat.target(a),
        };
        let writes = |a: ArrowId| match variance {
            Variance::Covariant => cat.target(a),
            Variance::Contravariant => cat.source(a),
        };
        for (name, pairs) in &spec.actions {
            let a = cat.arrow_by_name(name).ok_or_else(|| Error::UnknownName {
                kind: "arrow",
                name: name.clone(),
            })?;
            if action[a.0].is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
            let (from, to) = (reads(a), writes(a));
            let mut table = vec![None; sets[from.0].len()];
            for (x, y) in pairs {
                let xi = *index[from.0].get(x.as_str()).ok_or_else(|| Error::UnknownName {
                    kind: "element",
                    name: format!("{x} in {}", cat.object_name(from)),
                })?;
                let yi = *index[to.0].get(y.as_str()).ok_or_else(|| Error::UnknownName {
                    kind: "element",
                    name: format!("{y} in {}", cat.object_name(to)),
                })?;
                if table[xi].replace(yi).is_some_and(|old| old != yi) {
                    return Err(Error::Malformed(format!(
                        "action of `{name}` sends `{x}` to two elements"
                    )));
                }
            }
            let table = table
                .into_iter()
                .enumerate()
                .map(|(xi, y)| {
                    y.ok_or_else(|| {
                        Error::Malformed(format!(
                            "action of `{name}` is undefined on `{}`",
                            sets[from.0][xi]
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            action[a.0] = Some(table);
        }
        let action = cat
            .arrow_ids()
            .map(|a| {
                if let Some(t) = action[a.0].take() {
                    return Ok(t);
                }
                let (from, to) = (reads(a), writes(a));
                let n = sets[from.0].len();
                if cat.is_identity(a) {
                    Ok((0..n).collect())
                } else if n == 0 || sets[to.0].len() == 1 {
                    Ok(vec![0; n])
                } else {
                    Err(Error::Malformed(format!(
                        "no action given for `{}`",
                        cat.arrow_name(a)
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        SetFunctor::from_tables(cat, variance, sets, action)
    }

    /// Name-based description; `from_spec(to_spec())` is the identity.
    /// Identity actions are omitted.
    pub fn to_spec(&self) -> SetFunctorSpec {
        SetFunctorSpec {
            sets: self
                .cat
                .object_ids()
                .map(|o| (self.cat.object_name(o).to_string(), self.sets[o.0].clone()))
                .collect(),
            actions: self
                .cat
                .arrow_ids()
                .filter(|&a| !self.cat.is_identity(a))
                .map(|a| {
                    let (from, to) = (self.reads(a), self.writes(a));
                    let pairs = self.action[a.0]
                        .iter()
                        .enumerate()
                        .map(|(x, &y)| (self.sets[from.0][x].clone(), self.sets[to.0][y].clone()))
                        .collect();
                    (self.cat.arrow_name(a).to_string(), pairs)
                })
                .collect(),
        }
    }

    /// `Hom(-, c)`: elements are arrows into `c`, acting by precomposition.
    pub fn representable(cat: Arc<FinCategory>, c: ObjectId) -> SetFunctor {
        let homs: Vec<Vec<ArrowId>> = cat
            .object_ids()
            .map(|d| cat.hom(d, c).iter().collect())
            .collect();
        let action = cat
            .arrow_ids()
            .map(|f| {
                homs[cat.target(f).0]
                    .iter()
                    .map(|&g| {
                        let gf = cat.compose(g, f);
                        homs[cat.source(f).0].iter().position(|&h| h == gf).unwrap()
                    })
                    .collect()
            })
            .collect();
        let sets = names(&cat, &homs);
        SetFunctor {
            cat,
            variance: Variance::Contravariant,
            sets,
            action,
        }
    }

    /// `Hom(c, -)`: elements are arrows out of `c`, acting by postcomposition.
    pub fn corepresentable(cat: Arc<FinCategory>, c: ObjectId) -> SetFunctor {
        let homs: Vec<Vec<ArrowId>> = cat
            .object_ids()
            .map(|d| cat.hom(c, d).iter().collect())
            .collect();
        let action = cat
            .arrow_ids()
            .map(|f| {
                homs[cat.source(f).0]
                    .iter()
                    .map(|&g| {
                        let fg = cat.compose(f, g);
                        homs[cat.target(f).0].iter().position(|&h| h == fg).unwrap()
                    })
                    .collect()
            })
            .collect();
        let sets = names(&cat, &homs);
        SetFunctor {
            cat,
            variance: Variance::Covariant,
            sets,
            action,
        }
    }

    /// `n` elements at every object, every arrow acting as the identity.
    pub fn constant(cat: Arc<FinCategory>, variance: Variance, n: usize) -> SetFunctor {
        let sets = cat
            .object_ids()
            .map(|_| (0..n).map(|i| format!("x{i}")).collect())
            .collect();
        let action = cat.arrow_ids().map(|_| (0..n).collect()).collect();
        SetFunctor {
            cat,
            variance,
            sets,
            action,
        }
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.cat
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn set(&self, o: ObjectId) -> &[String] {
        &self.sets[o.0]
    }

    pub fn card(&self, o: ObjectId) -> usize {
        self.sets[o.0].len()
    }

    pub fn cards(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    pub fn total_elements(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    pub fn element_name(&self, o: ObjectId, x: usize) -> &str {
        &self.sets[o.0][x]
    }

    pub fn table(&self, f: ArrowId) -> &[usize] {
        &self.action[f.0]
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.action
    }

    /// Object the action of `f` reads from.
    pub fn reads(&self, f: ArrowId) -> ObjectId {
        match self.variance {
            Variance::Covariant => self.cat.source(f),
            Variance::Contravariant => self.cat.target(f),
        }
    }

    /// Object the action of `f` writes to.
    pub fn writes(&self, f: ArrowId) -> ObjectId {
        match self.variance {
            Variance::Covariant => self.cat.target(f),
            Variance::Contravariant => self.cat.source(f),
        }
    }

    pub fn act(&self, f: ArrowId, x: usize) -> usize {
        self.action[f.0][x]
    }

    pub fn validate(&self) -> FunctorialityReport {
        let cat = &self.cat;
        for o in cat.object_ids() {
            let id = cat.identity(o);
            if self.action[id.0].iter().enumerate().any(|(x, &y)| x != y) {
                return FunctorialityReport {
                    valid: false,
                    failure: Some((id, id)),
                };
            }
        }
        for f in cat.arrow_ids() {
            for g in cat.arrows_from(cat.target(f)).iter() {
                let gf = cat.compose(g, f);
                let ok = match self.variance {
                    Variance::Covariant => (0..self.card(cat.source(f)))
                        .all(|x| self.act(gf, x) == self.act(g, self.act(f, x))),
                    Variance::Contravariant => (0..self.card(cat.target(g)))
                        .all(|x| self.act(gf, x) == self.act(f, self.act(g, x))),
                };
                if !ok {
                    return FunctorialityReport {
                        valid: false,
                        failure: Some((g, f)),
                    };
                }
            }
        }
        FunctorialityReport {
            valid: true,
            failure: None,
        }
    }
}

fn names(cat: &FinCategory, homs: &[Vec<ArrowId>]) -> Vec<Vec<String>> {
    homs.iter()
        .map(|h| h.iter().map(|&a| cat.arrow_name(a).to_string()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::CategorySpec;

    fn arrow_cat() -> Arc<FinCategory> {
        Arc::new(
            CategorySpec::new()
                .objects(&["a", "b"])
                .arrow("f", "a", "b")
                .build()
                .unwrap(),
        )
    }

    fn z2() -> Arc<FinCategory> {
        Arc::new(
            CategorySpec::new()
                .object("*")
                .arrow("s", "*", "*")
                .compose("s", "s", "id_*")
                .build()
                .unwrap(),
        )
    }

    #[test]
    fn representables_are_valid() {
        let c = arrow_cat();
        for o in c.object_ids() {
            assert!(SetFunctor::representable(c.clone(), o).validate().valid);
            assert!(SetFunctor::corepresentable(c.clone(), o).validate().valid);
        }
        let hb = SetFunctor::representable(c.clone(), ObjectId(1));
        assert_eq!(hb.set(ObjectId(0)), &["f".to_string()]);
        assert_eq!(hb.cards(), vec![1, 1]);
    }

    #[test]
    fn constant_is_valid() {
        let c = z2();
        assert!(SetFunctor::constant(c.clone(), Variance::Covariant, 1).validate().valid);
        assert!(SetFunctor::constant(c, Variance::Contravariant, 3).validate().valid);
    }

    #[test]
    fn broken_composition_is_witnessed() {
        let c = z2();
        let s = c.arrow_by_name("s").unwrap();
        // s acts as a 3-cycle, so s.s is not the identity.
        let f = SetFunctor::from_tables(
            c.clone(),
            Variance::Covariant,
            vec![vec!["0".into(), "1".into(), "2".into()]],
            vec![vec![0, 1, 2], vec![1, 2, 0]],
        )
        .unwrap();
        let r = f.validate();
        assert!(!r.valid);
        assert_eq!(r.failure, Some((s, s)));
    }

    #[test]
    fn spec_round_trip_and_forced_actions() {
        let c = arrow_cat();
        let spec = SetFunctorSpec {
            sets: vec![
                ("a".into(), vec!["p".into(), "q".into()]),
                ("b".into(), vec!["r".into()]),
            ],
            actions: vec![],
        };
        let f = SetFunctor::from_spec(c.clone(), Variance::Covariant, &spec).unwrap();
        assert_eq!(f.table(c.arrow_by_name("f").unwrap()), &[0, 0]);
        let again = SetFunctor::from_spec(c.clone(), Variance::Covariant, &f.to_spec()).unwrap();
        assert_eq!(again, f);
        assert!(SetFunctor::from_spec(c, Variance::Contravariant, &spec).is_err());
    }

    #[test]
    fn shape_errors() {
        let c = arrow_cat();
        assert!(SetFunctor::from_tables(c.clone(), Variance::Covariant, vec![], vec![]).is_err());
        let bad = SetFunctorSpec {
            sets: vec![("z".into(), vec![])],
            actions: vec![],
        };
        assert!(matches!(
            SetFunctor::from_spec(c, Variance::Covariant, &bad),
            Err(Error::UnknownName { .. })
        ));
    }
}
