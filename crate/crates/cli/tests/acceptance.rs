//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use sitekit_cli::parse_workspace;
use sitekit_cli::session::Session;
use sitekit_core::corpus::corpus;
use sitekit_core::fraisse::*;
use sitekit_core::*;

type Outcome = std::result::Result<String, String>;
type Check = fn() -> Outcome;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn universes() -> Vec<(&'static str, Arc<SieveUniverse>)> {
    corpus()
        .into_iter()
        .map(|(name, spec)| {
            let cat = Arc::new(spec.build().unwrap());
            (name, SieveUniverse::new(cat, &Budget::default()).unwrap())
        })
        .collect()
}

fn c1_generation_is_least() -> Outcome {
    let start = Instant::now();
    let us = universes();
    ensure!(us.len() >= 12, "corpus has {} categories", us.len());
    for (name, u) in &us {
        let cat = u.category();
        ensure!(
            cat.object_count() <= 5 && cat.arrow_count() <= 12,
            "{name} is too large"
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let lattices: Vec<_> = us
        .iter()
        .map(|(_, u)| enumerate_topologies(u, &Budget::default()).unwrap())
        .collect();
    let mut trials = 0;
    while trials < 256 {
        let i = rng.gen_range(0..us.len());
        let (name, u) = &us[i];
        let k = rng.gen_range(0..=4);
        let seeds: Vec<Sieve> = (0..k).map(|_| u.sieve(rng.gen_range(0..u.len()))).collect();
        let generated = generate_topology(u, &seeds).map_err(|e| e.to_string())?;
        let above: Vec<_> = lattices[i]
            .iter()
            .filter(|t| seeds.iter().all(|s| t.is_covering(s)))
            .collect();
        let least = above.iter().find(|t| above.iter().all(|o| o.contains(t)));
        ensure!(least == Some(&generated), "{name}: disagreement on seeds {seeds:?}");
        trials += 1;
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(120), "took {took:?}");
    Ok(format!("{trials} seed sets over {} categories in {took:.2?}", us.len()))
}

fn c2_heyting_adjunction() -> Outcome {
    let mut triples = 0usize;
    for (name, u) in universes() {
        let l = enumerate_topologies(&u, &Budget::default()).map_err(|e| e.to_string())?;
        let n = l.len();
        for j in 0..n {
            for k in 0..n {
                let imp = l.implication(j, k);
                for x in 0..n {
                    ensure!(
                        l.leq(l.meet(x, j), k) == l.leq(x, imp),
                        "{name}: L={x} J={j} K={k}"
                    );
                    triples += 1;
                }
            }
        }
    }
    Ok(format!("{triples} triples"))
}

fn c3_atomic_iff_ore() -> Outcome {
    let mut ore_count = 0;
    let us = universes();
    for (name, u) in &us {
        let ore = check_right_ore(u.category()).holds;
        match canonical_topology(u, TopologyKind::Atomic) {
            Ok(j) => {
                ensure!(ore, "{name}: atomic built without Ore");
                ensure!(validate_topology(&j).is_valid(), "{name}: atomic topology invalid");
                ore_count += 1;
            }
            Err(Error::NotRightOre { .. }) => ensure!(!ore, "{name}: Ore but refused"),
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    Ok(format!("{ore_count} of {} categories are right Ore", us.len()))
}

fn c4_joint_embedding_two_valued() -> Outcome {
    let mut qualifying = 0;
    for (name, u) in universes() {
        let cat = u.category();
        if !check_amalgamation(cat).holds {
            continue;
        }
        qualifying += 1;
        let op = SieveUniverse::new(Arc::new(opposite(cat)), &Budget::default())
            .map_err(|e| e.to_string())?;
        let site = canonical_topology(&op, TopologyKind::Atomic).map_err(|e| format!("{name}: {e}"))?;
        let count = enumerate_subterminal_sheaves(&site).map_err(|e| e.to_string())?.count;
        ensure!(
            check_joint_embedding(cat).holds == (count == 2),
            "{name}: JEP disagrees with {count} subterminals"
        );
    }
    ensure!(qualifying >= 8, "only {qualifying} categories with amalgamation");
    Ok(format!("{qualifying} categories with amalgamation"))
}

fn c5_boolean_chain() -> Outcome {
    let mut atomic = 0;
    for (name, u) in universes() {
        if let Ok(j) = canonical_topology(&u, TopologyKind::Atomic) {
            ensure!(site_invariants(&j).map_err(|e| e.to_string())?.boolean_site, "{name}");
            atomic += 1;
        }
    }
    let text = include_str!("../examples/arrow.site");
    let ws = parse_workspace(text).map_err(|d| format!("{d:?}"))?;
    let mut s = Session::new(&ws, Budget::default());
    let j = s.site("S").map_err(|e| e.message)?;
    let r = site_invariants(&j).map_err(|e| e.to_string())?;
    ensure!(!r.boolean_site, "the arrow presheaf site reports boolean");
    let w = r.boolean_witness.ok_or("no witness")?;
    // Replay: R is closed and R or not-R does not close up to the maximal sieve.
    let cat = j.category();
    let zero = closure(&j, &Sieve::empty(w.object)).map_err(|e| e.to_string())?;
    ensure!(closure(&j, &w.sieve).unwrap() == w.sieve, "witness is not closed");
    let neg = w.sieve.implies(cat, &zero).map_err(|e| e.to_string())?;
    let joined = closure(&j, &w.sieve.join(&neg).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure!(joined != Sieve::maximal(cat, w.object), "witness is complemented");
    Ok(format!(
        "{atomic} atomic corpus sites Boolean; arrow witness {} at {}",
        w.sieve.members().len(),
        cat.object_name(w.object)
    ))
}

/// Involutions on {0, .., n-1}, i.e. every action table of Z/2 on n points.
fn involutions(n: usize) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    let mut table = vec![0; n];
    fn go(i: usize, n: usize, t: &mut Vec<usize>, all: &mut Vec<Vec<usize>>) {
        if i == n {
            if (0..n).all(|x| t[t[x]] == x) {
                all.push(t.clone());
            }
            return;
        }
        for y in 0..n {
            t[i] = y;
            go(i + 1, n, t, all);
        }
    }
    go(0, n, &mut table, &mut all);
    all
}

fn c6_flat_functor_axioms() -> Outcome {
    for (name, u) in universes() {
        let cat = u.category();
        for c in cat.object_ids() {
            let f = SetFunctor::corepresentable(cat.clone(), c);
            ensure!(check_flatness(&f).map_err(|e| e.to_string())?.flat(), "{name}: corepresentable not flat");
        }
        let empty = SetFunctor::constant(cat.clone(), Variance::Covariant, 0);
        ensure!(!check_flatness(&empty).unwrap().nonempty, "{name}: empty functor passes nonemptiness");
    }

    // Independent count: a Z/2-set is flat exactly when it is a torsor,
    // i.e. nonempty, transitive and free. Classes up to iso are determined
    // by size and number of fixed points.
    let mut classes = std::collections::BTreeSet::new();
    for n in 0..=2 {
        for t in involutions(n) {
            let nonempty = n > 0;
            let transitive = (0..n).all(|x| x == 0 || t[0] == x);
            let free = (0..n).all(|x| t[x] != x);
            if nonempty && transitive && free {
                classes.insert((n, 0));
            }
        }
    }
    let spec = corpus().into_iter().find(|(n, _)| *n == "z2").ok_or("no z2 in corpus")?.1;
    let cat = Arc::new(spec.build().unwrap());
    let u = SieveUniverse::new(cat, &Budget::default()).unwrap();
    let trivial = canonical_topology(&u, TopologyKind::Trivial).unwrap();
    let models = enumerate_models(&trivial, 2, &Budget::default()).map_err(|e| e.to_string())?;
    ensure!(models.len() == 1, "{} models", models.len());
    ensure!(classes.len() == 1, "oracle found {} classes", classes.len());
    let m = &models[0];
    let o = m.category().object_ids().next().unwrap();
    let r = m.category().arrow_ids().find(|&a| !m.category().is_identity(a)).unwrap();
    ensure!(m.card(o) == 2, "model has {} elements", m.card(o));
    ensure!((0..2).all(|x| m.act(r, x) != x), "model action is not free");
    Ok("corepresentables flat, empty functor fails, Z/2 has exactly the regular model".into())
}

fn c7_fraisse_limits() -> Outcome {
    let start = Instant::now();
    let b = Budget::default();
    let mut linord = Vec::new();
    for seed in [1, 2] {
        let l = build_limit(&LinearOrders, 100, seed, &b).map_err(|e| e.to_string())?;
        let (early, late) = (l.stage_size(40), l.len());
        let m = &l.structure;
        for x in 0..early {
            for y in 0..early {
                if m.rel(x, y) {
                    ensure!((0..late).any(|z| m.rel(x, z) && m.rel(z, y)), "linord seed {seed}: gap {x} < {y}");
                }
            }
        }
        ensure!((0..late).any(|z| (0..early).all(|x| m.rel(z, x))), "linord seed {seed}: least element");
        ensure!((0..late).any(|z| (0..early).all(|x| m.rel(x, z))), "linord seed {seed}: greatest element");
        let r = check_limit_extension(&LinearOrders, &l, 40, 3).map_err(|e| e.to_string())?;
        ensure!(r.passed, "linord seed {seed}: extension failures {:?}", r.failures);
        linord.push(l);
    }
    let iso = back_and_forth(&linord[0], &linord[1], 16, DEFAULT_NODE_LIMIT).map_err(|e| e.to_string())?;
    ensure!(is_partial_iso(&linord[0].structure, &linord[1].structure, &iso.pairs), "linord map is not a partial iso");

    let class = Graphs::default();
    let mut graphs = Vec::new();
    for seed in [1, 2] {
        let l = build_limit(&class, 120, seed, &b).map_err(|e| e.to_string())?;
        let r = check_limit_extension(&class, &l, 40, 3).map_err(|e| e.to_string())?;
        ensure!(r.passed, "graph seed {seed}: extension failures {:?}", r.failures);
        graphs.push(l);
    }
    let iso2 = back_and_forth(&graphs[0], &graphs[1], 12, DEFAULT_NODE_LIMIT).map_err(|e| e.to_string())?;
    ensure!(is_partial_iso(&graphs[0].structure, &graphs[1].structure, &iso2.pairs), "graph map is not a partial iso");
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(60), "took {took:?}");
    Ok(format!(
        "linord iso {} pairs, graph iso {} pairs, {took:.2?}",
        iso.pairs.len(),
        iso2.pairs.len()
    ))
}

fn c8_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_sitekit");
    let dir = env!("CARGO_MANIFEST_DIR");
    let example = format!("{dir}/examples/arrow.site");
    let fixture = format!("{dir}/tests/fixtures/workbench.site");
    let runs: &[(&str, &str)] = &[
        (&example, "validate"),
        (&example, "props Arrow"),
        (&example, "topo enumerate Arrow --oracle"),
        (&example, "topo lattice Arrow"),
        (&example, "invariants S"),
        (&fixture, "subtoposes D"),
        (&fixture, "sheaf check D Collapse"),
        (&fixture, "model enumerate Z"),
        (&fixture, "homogeneous Z Reg --fp Reg"),
        (&fixture, "fraisse limit --class graph --steps 60 --seed 3 --log"),
        (&fixture, "fraisse iso --class linord --steps 100 --seed 1 --seed2 2 --k 16"),
        (&fixture, "props Missing"),
    ];
    let mut iso_exit = None;
    for (file, args) in runs {
        let go = || {
            Command::new(bin)
                .args(["--json", "-w", file])
                .args(args.split_whitespace())
                .env_remove("SITEKIT_BUDGET")
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (go()?, go()?);
        ensure!(a.stdout == b.stdout && a.status == b.status, "{args}: outputs differ");
        let v: Value = serde_json::from_slice(&a.stdout).map_err(|e| format!("{args}: {e}"))?;
        ensure!(v["schema_version"] == 1, "{args}: schema_version");
        if args.starts_with("fraisse iso") {
            iso_exit = a.status.code();
        }
    }
    ensure!(iso_exit == Some(0), "fraisse iso exited with {iso_exit:?}");
    Ok(format!("{} commands repeated byte-identically", runs.len()))
}

fn main() {
    let criteria: [(&str, Check); 8] = [
        ("generated topology is the least enumerated one", c1_generation_is_least),
        ("Heyting adjunction on every topology lattice", c2_heyting_adjunction),
        ("atomic topology exists exactly for right Ore categories", c3_atomic_iff_ore),
        ("joint embedding iff two-valued under amalgamation", c4_joint_embedding_two_valued),
        ("atomic sites Boolean, arrow presheaf site not", c5_boolean_chain),
        ("flat functor axioms and Z/2 models", c6_flat_functor_axioms),
        ("Fraisse limits: extension and back-and-forth", c7_fraisse_limits),
        ("byte-identical JSON on repeat runs", c8_determinism),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {title} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {title}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
