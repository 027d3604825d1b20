//! Sieves on a finite category and their Heyting operations.

use std::fmt;

use serde::Serialize;

use crate::category::{ArrowId, ArrowSet, FinCategory, ObjectId};
use crate::error::{Error, Result};

/// A set of arrows into `base` closed under precomposition.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Sieve {
    base: ObjectId,
    members: ArrowSet,
}

impl fmt::Debug for Sieve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sieve({:?} <- {:?})", self.base.0, self.members)
    }
}

impl Sieve {
    /// Checks codomains and closure.
    pub fn new(cat: &FinCategory, base: ObjectId, members: ArrowSet) -> Result<Sieve> {
        let into = cat.arrows_into(base);
        if let Some(arrow) = members.iter().find(|a| !into.contains(*a)) {
            return Err(Error::WrongCodomain { arrow, base });
        }
        for f in members.iter() {
            if let Some(missing) = cat
                .precomposites(f)
                .iter()
                .find(|g| !members.contains(*g))
            {
                return Err(Error::NotASieve { base, missing });
            }
        }
        Ok(Sieve { base, members })
    }

    pub(crate) fn from_raw(base: ObjectId, members: ArrowSet) -> Sieve {
        Sieve { base, members }
    }

    pub fn maximal(cat: &FinCategory, base: ObjectId) -> Sieve {
        Sieve {
            base,
            members: cat.arrows_into(base),
        }
    }

    pub fn empty(base: ObjectId) -> Sieve {
        Sieve {
            base,
            members: ArrowSet::EMPTY,
        }
    }

    pub fn base(&self) -> ObjectId {
        self.base
    }

    pub fn members(&self) -> ArrowSet {
        self.members
    }

    pub fn contains(&self, f: ArrowId) -> bool {
        self.members.contains(f)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// A sieve contains the identity exactly when it is maximal.
    pub fn is_maximal(&self, cat: &FinCategory) -> bool {
        self.members.contains(cat.identity(self.base))
    }

    pub fn is_subsieve(&self, other: &Sieve) -> bool {
        self.base == other.base && self.members.is_subset(other.members)
    }

    fn same_base(&self, other: &Sieve) -> Result<()> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(Error::BaseMismatch {
                expected: self.base,
                found: other.base,
            })
        }
    }

    pub fn meet(&self, other: &Sieve) -> Result<Sieve> {
        self.same_base(other)?;
        Ok(Sieve::from_raw(self.base, self.members.intersection(other.members)))
    }

    pub fn join(&self, other: &Sieve) -> Result<Sieve> {
        self.same_base(other)?;
        Ok(Sieve::from_raw(self.base, self.members.union(other.members)))
    }

    /// `{ f into base | f*(self) is contained in f*(other) }`
    pub fn implies(&self, cat: &FinCategory, other: &Sieve) -> Result<Sieve> {
        self.same_base(other)?;
        let members = cat
            .arrows_into(self.base)
            .iter()
            .filter(|&f| {
                pull_members(cat, f, self.members).is_subset(pull_members(cat, f, other.members))
            })
            .collect();
        Ok(Sieve::from_raw(self.base, members))
    }

    /// `f*(self)` for `f: d -> base`.
    pub fn pullback(&self, cat: &FinCategory, f: ArrowId) -> Result<Sieve> {
        if cat.target(f) != self.base {
            return Err(Error::BaseMismatch {
                expected: self.base,
                found: cat.target(f),
            });
        }
        Ok(Sieve::from_raw(cat.source(f), pull_members(cat, f, self.members)))
    }
}

/// `{ g into source(f) | f . g in members }`
pub(crate) fn pull_members(cat: &FinCategory, f: ArrowId, members: ArrowSet) -> ArrowSet {
    cat.arrows_into(cat.source(f))
        .iter()
        .filter(|&g| members.contains(cat.compose(f, g)))
        .collect()
}

/// Smallest sieve on `base` containing `generators`.
pub fn close_to_sieve(cat: &FinCategory, base: ObjectId, generators: ArrowSet) -> Result<Sieve> {
    let into = cat.arrows_into(base);
    if let Some(arrow) = generators.iter().find(|a| !into.contains(*a)) {
        return Err(Error::WrongCodomain { arrow, base });
    }
    let members = generators
        .iter()
        .fold(ArrowSet::EMPTY, |acc, f| acc.union(cat.precomposites(f)));
    Ok(Sieve::from_raw(base, members))
}

pub fn pullback_sieve(cat: &FinCategory, f: ArrowId, sieve: &Sieve) -> Result<Sieve> {
    sieve.pullback(cat, f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SieveOp {
    Meet,
    Join,
    Implies,
    /// `R => Z` for the given `Z`.
    NegationRelativeTo(Sieve),
}

pub fn sieve_heyting(cat: &FinCategory, r: &Sieve, s: &Sieve, op: SieveOp) -> Result<Sieve> {
    match op {
        SieveOp::Meet => r.meet(s),
        SieveOp::Join => r.join(s),
        SieveOp::Implies => r.implies(cat, s),
        SieveOp::NegationRelativeTo(z) => r.implies(cat, &z),
    }
}

/// Every sieve on `base`, ordered by member bitset.
pub fn sieves_on(cat: &FinCategory, base: ObjectId) -> Vec<Sieve> {
    let into = cat.arrows_into(base);
    let mut out: Vec<Sieve> = into
        .subsets()
        .filter(|s| s.iter().all(|f| cat.precomposites(f).is_subset(*s)))
        .map(|members| Sieve { base, members })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::CategorySpec;

    fn arrow_cat() -> FinCategory {
        CategorySpec::new()
            .objects(&["a", "b"])
            .arrow("f", "a", "b")
            .build()
            .unwrap()
    }

    const A: ObjectId = ObjectId(0);
    const B: ObjectId = ObjectId(1);

    #[test]
    fn closure_of_identity_is_maximal() {
        let c = arrow_cat();
        let s = close_to_sieve(&c, B, ArrowSet::singleton(c.identity(B))).unwrap();
        assert_eq!(s, Sieve::maximal(&c, B));
        assert!(s.is_maximal(&c));
        assert!(close_to_sieve(&c, B, ArrowSet::EMPTY).unwrap().is_empty());
    }

    #[test]
    fn closure_of_f_is_f() {
        let c = arrow_cat();
        let f = c.arrow_by_name("f").unwrap();
        let s = close_to_sieve(&c, B, ArrowSet::singleton(f)).unwrap();
        assert_eq!(s.members(), ArrowSet::singleton(f));
        assert!(!s.is_maximal(&c));
    }

    #[test]
    fn wrong_codomain() {
        let c = arrow_cat();
        let f = c.arrow_by_name("f").unwrap();
        assert!(matches!(
            close_to_sieve(&c, A, ArrowSet::singleton(f)),
            Err(Error::WrongCodomain { .. })
        ));
        assert!(Sieve::new(&c, A, ArrowSet::singleton(f)).is_err());
    }

    #[test]
    fn pullbacks() {
        let c = arrow_cat();
        let f = c.arrow_by_name("f").unwrap();
        let r = Sieve::new(&c, B, ArrowSet::singleton(f)).unwrap();
        assert_eq!(r.pullback(&c, c.identity(B)).unwrap(), r);
        assert_eq!(r.pullback(&c, f).unwrap(), Sieve::maximal(&c, A));
        assert_eq!(
            Sieve::maximal(&c, B).pullback(&c, f).unwrap(),
            Sieve::maximal(&c, A)
        );
        assert!(matches!(
            Sieve::empty(A).pullback(&c, f),
            Err(Error::BaseMismatch { .. })
        ));
    }

    #[test]
    fn heyting_examples() {
        let c = arrow_cat();
        let f = c.arrow_by_name("f").unwrap();
        let r = Sieve::new(&c, B, ArrowSet::singleton(f)).unwrap();
        let max = Sieve::maximal(&c, B);
        let empty = Sieve::empty(B);
        assert_eq!(sieve_heyting(&c, &r, &r, SieveOp::Implies).unwrap(), max);
        assert_eq!(sieve_heyting(&c, &r, &max, SieveOp::Meet).unwrap(), r);
        assert_eq!(sieve_heyting(&c, &r, &empty, SieveOp::Implies).unwrap(), empty);
        assert_eq!(
            sieve_heyting(&c, &r, &r, SieveOp::NegationRelativeTo(empty)).unwrap(),
            empty
        );
        assert!(matches!(
            sieve_heyting(&c, &r, &Sieve::empty(A), SieveOp::Join),
            Err(Error::BaseMismatch { .. })
        ));
    }

    #[test]
    fn sieve_counts() {
        let c = arrow_cat();
        assert_eq!(sieves_on(&c, A).len(), 2);
        assert_eq!(sieves_on(&c, B).len(), 3);
    }
}
