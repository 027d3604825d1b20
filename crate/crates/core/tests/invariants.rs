use std::sync::Arc;

use proptest::prelude::*;
use sitekit_core::corpus::corpus;
use sitekit_core::*;

fn universe(i: usize) -> Arc<SieveUniverse> {
    let (_, spec) = &corpus()[i];
    SieveUniverse::new(Arc::new(spec.build().unwrap()), &Budget::default()).unwrap()
}

fn corpus_index() -> impl Strategy<Value = usize> {
    0..corpus().len()
}

/// Arrows into `base` picked by the bits of `mask`.
fn pick(cat: &FinCategory, base: ObjectId, mask: u64) -> ArrowSet {
    let mut out = ArrowSet::EMPTY;
    for (i, f) in cat.arrows_into(base).iter().enumerate() {
        if mask >> i & 1 == 1 {
            out.insert(f);
        }
    }
    out
}

fn pick_sieves(u: &SieveUniverse, picks: &[usize]) -> Vec<Sieve> {
    picks.iter().map(|&p| u.sieve(p % u.len())).collect()
}

proptest! {
    #[test]
    fn sieve_closure_is_a_closure_operator(i in corpus_index(), o in 0usize..5, m1: u64, m2: u64) {
        let u = universe(i);
        let cat = u.category();
        let base = ObjectId(o % cat.object_count());
        let g1 = pick(cat, base, m1);
        let g2 = g1.union(pick(cat, base, m2));
        let s1 = close_to_sieve(cat, base, g1).unwrap();
        let s2 = close_to_sieve(cat, base, g2).unwrap();
        prop_assert!(g1.is_subset(s1.members()));
        prop_assert!(s1.is_subsieve(&s2));
        prop_assert_eq!(close_to_sieve(cat, base, s1.members()).unwrap(), s1);
    }

    #[test]
    fn pullback_preserves_heyting_operations(i in corpus_index(), a: usize, b: usize, fi: usize) {
        let u = universe(i);
        let cat = u.category();
        let r = u.sieve(a % u.len());
        let on_base: Vec<usize> = u.ids_on(r.base()).collect();
        let s = u.sieve(on_base[b % on_base.len()]);
        let into: Vec<ArrowId> = cat.arrows_into(r.base()).iter().collect();
        let f = into[fi % into.len()];
        let pull = |x: &Sieve| pullback_sieve(cat, f, x).unwrap();
        let meet = sieve_heyting(cat, &r, &s, SieveOp::Meet).unwrap();
        let imp = sieve_heyting(cat, &r, &s, SieveOp::Implies).unwrap();
        prop_assert_eq!(pull(&meet), sieve_heyting(cat, &pull(&r), &pull(&s), SieveOp::Meet).unwrap());
        prop_assert_eq!(pull(&imp), sieve_heyting(cat, &pull(&r), &pull(&s), SieveOp::Implies).unwrap());
    }

    #[test]
    fn sieve_implication_is_right_adjoint(i in corpus_index(), a: usize, b: usize, c: usize) {
        let u = universe(i);
        let cat = u.category();
        let r = u.sieve(a % u.len());
        let ids: Vec<usize> = u.ids_on(r.base()).collect();
        let s = u.sieve(ids[b % ids.len()]);
        let t = u.sieve(ids[c % ids.len()]);
        let lhs = t.meet(&r).unwrap().is_subsieve(&s);
        let rhs = t.is_subsieve(&r.implies(cat, &s).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn generation_is_a_closure_operator(
        i in corpus_index(),
        p1 in prop::collection::vec(any::<usize>(), 0..4),
        p2 in prop::collection::vec(any::<usize>(), 0..3),
    ) {
        let u = universe(i);
        let small = pick_sieves(&u, &p1);
        let mut large = small.clone();
        large.extend(pick_sieves(&u, &p2));
        let j1 = generate_topology(&u, &small).unwrap();
        let j2 = generate_topology(&u, &large).unwrap();
        prop_assert!(small.iter().all(|s| j1.is_covering(s)));
        prop_assert!(j2.contains(&j1));
        prop_assert_eq!(generate_topology(&u, &j1.all_covers()).unwrap(), j1.clone());
        prop_assert!(validate_topology(&j1).is_valid());
    }

    #[test]
    fn meet_and_join_are_lattice_bounds(i in corpus_index(), p1 in prop::collection::vec(any::<usize>(), 0..3), p2 in prop::collection::vec(any::<usize>(), 0..3)) {
        let u = universe(i);
        let j = generate_topology(&u, &pick_sieves(&u, &p1)).unwrap();
        let k = generate_topology(&u, &pick_sieves(&u, &p2)).unwrap();
        let m = lattice_ops(&j, &k, LatticeOp::Meet, &Budget::default()).unwrap();
        let n = lattice_ops(&j, &k, LatticeOp::Join, &Budget::default()).unwrap();
        prop_assert!(validate_topology(&m).is_valid() && validate_topology(&n).is_valid());
        prop_assert!(j.contains(&m) && k.contains(&m));
        prop_assert!(n.contains(&j) && n.contains(&k));
        let imp = lattice_ops(&j, &k, LatticeOp::Implication, &Budget::default()).unwrap();
        prop_assert!(k.contains(&imp.meet(&j).unwrap()));
        prop_assert!(imp.contains(&k));
    }

    #[test]
    fn amalgamation_is_ore_of_opposite(i in corpus_index()) {
        let u = universe(i);
        let cat = u.category();
        let ap = check_amalgamation(cat);
        let ore = check_right_ore(&opposite(cat));
        prop_assert_eq!(ap.holds, ore.holds);
        prop_assert!(ap.replay(cat));
        prop_assert!(check_joint_embedding(cat).replay(cat));
    }
}
