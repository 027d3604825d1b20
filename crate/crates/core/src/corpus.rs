//! A bundled collection of small categories used by the test suites and the
//! `corpus` CLI command.

use crate::category::CategorySpec;

fn lin(n: usize) -> CategorySpec {
    let names: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
    let arrow = |i: usize, j: usize| format!("l{i}{j}");
    let mut spec = CategorySpec::new();
    for o in &names {
        spec = spec.object(o);
    }
    for i in 0..n {
        for j in i + 1..n {
            spec = spec.arrow(&arrow(i, j), &names[i], &names[j]);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                spec = spec.compose(&arrow(j, k), &arrow(i, j), &arrow(i, k));
            }
        }
    }
    spec
}

/// Named categories with at most 5 objects and 12 arrows each.
pub fn corpus() -> Vec<(&'static str, CategorySpec)> {
    vec![
        ("terminal", CategorySpec::new().object("*")),
        ("discrete2", CategorySpec::new().objects(&["a", "b"])),
        ("discrete3", CategorySpec::new().objects(&["a", "b", "c"])),
        ("arrow", CategorySpec::new().objects(&["a", "b"]).arrow("f", "a", "b")),
        (
            "z2",
            CategorySpec::new()
                .object("*")
                .arrow("s", "*", "*")
                .compose("s", "s", "id_*"),
        ),
        (
            "z3",
            CategorySpec::new()
                .object("*")
                .arrow("r", "*", "*")
                .arrow("r2", "*", "*")
                .compose("r", "r", "r2")
                .compose("r", "r2", "id_*")
                .compose("r2", "r", "id_*")
                .compose("r2", "r2", "r"),
        ),
        (
            "span",
            CategorySpec::new()
                .objects(&["a", "b", "c"])
                .arrow("p", "c", "a")
                .arrow("q", "c", "b"),
        ),
        (
            "cospan",
            CategorySpec::new()
                .objects(&["a", "b", "c"])
                .arrow("i", "a", "c")
                .arrow("j", "b", "c"),
        ),
        (
            "parallel",
            CategorySpec::new()
                .objects(&["a", "b"])
                .arrow("f", "a", "b")
                .arrow("g", "a", "b"),
        ),
        ("lin3", lin(3)),
        ("lin4", lin(4)),
        (
            "square",
            CategorySpec::new()
                .objects(&["a", "b", "c", "d"])
                .arrow("f", "a", "b")
                .arrow("g", "a", "c")
                .arrow("h", "b", "d")
                .arrow("k", "c", "d")
                .arrow("m", "a", "d")
                .compose("h", "f", "m")
                .compose("k", "g", "m"),
        ),
        (
            "idempotent",
            CategorySpec::new()
                .object("*")
                .arrow("e", "*", "*")
                .compose("e", "e", "e"),
        ),
        (
            "iso",
            CategorySpec::new()
                .objects(&["a", "b"])
                .arrow("u", "a", "b")
                .arrow("v", "b", "a")
                .compose("v", "u", "id_a")
                .compose("u", "v", "id_b"),
        ),
        (
            "retract",
            CategorySpec::new()
                .objects(&["a", "b"])
                .arrow("s", "a", "b")
                .arrow("r", "b", "a")
                .arrow("e", "b", "b")
                .compose("r", "s", "id_a")
                .compose("s", "r", "e")
                .compose("e", "e", "e")
                .compose("e", "s", "s")
                .compose("r", "e", "r"),
        ),
        (
            "left-zero",
            CategorySpec::new()
                .object("*")
                .arrow("x", "*", "*")
                .arrow("y", "*", "*")
                .compose("x", "x", "x")
                .compose("x", "y", "x")
                .compose("y", "x", "y")
                .compose("y", "y", "y"),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_builds_within_bounds() {
        let c = corpus();
        assert!(c.len() >= 12);
        for (name, spec) in c {
            let cat = spec.build().unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(cat.object_count() <= 5 && cat.arrow_count() <= 12, "{name}");
        }
    }
}
