//! Named JSON and text renderings of engine values.

use serde_json::{json, Value};
use sitekit_core::*;

pub fn arrows(cat: &FinCategory, set: ArrowSet) -> Vec<String> {
    set.iter().map(|a| cat.arrow_name(a).to_string()).collect()
}

pub fn sieve(cat: &FinCategory, s: &Sieve) -> Value {
    json!({ "object": cat.object_name(s.base()), "arrows": arrows(cat, s.members()) })
}

pub fn sieve_text(cat: &FinCategory, s: &Sieve) -> String {
    format!("{}:{{{}}}", cat.object_name(s.base()), arrows(cat, s.members()).join(", "))
}

pub fn objects(cat: &FinCategory, os: &[ObjectId]) -> Vec<String> {
    os.iter().map(|&o| cat.object_name(o).to_string()).collect()
}

/// Covering sieves grouped by object, in object order.
pub fn topology(j: &GrothendieckTopology) -> Value {
    let cat = j.category();
    let covers: Vec<Value> = cat
        .object_ids()
        .map(|o| {
            let sieves: Vec<Vec<String>> =
                j.covers(o).iter().map(|s| arrows(cat, s.members())).collect();
            json!({ "object": cat.object_name(o), "sieves": sieves })
        })
        .collect();
    json!({
        "covers": covers,
        "cover_count": j.cover_count(),
        "degenerate": j.is_degenerate(),
    })
}

pub fn topology_text(j: &GrothendieckTopology) -> String {
    let cat = j.category();
    let mut out = String::new();
    for o in cat.object_ids() {
        let sieves: Vec<String> = j
            .covers(o)
            .iter()
            .map(|s| format!("{{{}}}", arrows(cat, s.members()).join(", ")))
            .collect();
        out.push_str(&format!("  {}: {}\n", cat.object_name(o), sieves.join(" ")));
    }
    out
}

pub fn configuration(cat: &FinCategory, c: &Configuration) -> Value {
    match *c {
        Configuration::Cospan { f, g } => {
            json!({ "kind": "cospan", "f": cat.arrow_name(f), "g": cat.arrow_name(g) })
        }
        Configuration::Span { f, g } => {
            json!({ "kind": "span", "f": cat.arrow_name(f), "g": cat.arrow_name(g) })
        }
        Configuration::Pair { a, b } => {
            json!({ "kind": "pair", "a": cat.object_name(a), "b": cat.object_name(b) })
        }
    }
}

pub fn configuration_text(cat: &FinCategory, c: &Configuration) -> String {
    match *c {
        Configuration::Cospan { f, g } => format!("cospan ({}, {})", cat.arrow_name(f), cat.arrow_name(g)),
        Configuration::Span { f, g } => format!("span ({}, {})", cat.arrow_name(f), cat.arrow_name(g)),
        Configuration::Pair { a, b } => format!("objects ({}, {})", cat.object_name(a), cat.object_name(b)),
    }
}

pub fn completion(cat: &FinCategory, c: &Completion) -> Value {
    json!({
        "input": configuration(cat, &c.input),
        "legs": [cat.arrow_name(c.legs.0), cat.arrow_name(c.legs.1)],
    })
}

/// Sets and action tables by name.
pub fn functor(f: &SetFunctor) -> Value {
    let cat = f.category();
    let sets: Vec<Value> = cat
        .object_ids()
        .map(|o| json!({ "object": cat.object_name(o), "elements": f.set(o) }))
        .collect();
    let actions: Vec<Value> = cat
        .arrow_ids()
        .filter(|&a| !cat.is_identity(a))
        .map(|a| {
            let (r, w) = (f.reads(a), f.writes(a));
            let pairs: Vec<[&str; 2]> = (0..f.card(r))
                .map(|x| [f.element_name(r, x), f.element_name(w, f.act(a, x))])
                .collect();
            json!({ "arrow": cat.arrow_name(a), "pairs": pairs })
        })
        .collect();
    json!({ "sets": sets, "actions": actions })
}

pub fn functor_text(f: &SetFunctor) -> String {
    let cat = f.category();
    let mut out = String::new();
    for o in cat.object_ids() {
        let elems = f.set(o);
        if elems.is_empty() {
            out.push_str(&format!("  on {} = {{ }}\n", cat.object_name(o)));
        } else {
            out.push_str(&format!("  on {} = {{ {} }}\n", cat.object_name(o), elems.join(" ")));
        }
    }
    for a in cat.arrow_ids().filter(|&a| !cat.is_identity(a)) {
        let (r, w) = (f.reads(a), f.writes(a));
        let pairs: Vec<String> = (0..f.card(r))
            .map(|x| format!("{} -> {}", f.element_name(r, x), f.element_name(w, f.act(a, x))))
            .collect();
        if pairs.is_empty() {
            continue;
        }
        out.push_str(&format!("  on {} : {}\n", cat.arrow_name(a), pairs.join(", ")));
    }
    out
}

pub fn functoriality(f: &SetFunctor, r: &FunctorialityReport) -> Value {
    let cat = f.category();
    json!({
        "valid": r.valid,
        "failure": r.failure.map(|(g, h)| [cat.arrow_name(g), cat.arrow_name(h)]),
    })
}

/// Natural transformation components as element names.
pub fn transformation(from: &SetFunctor, to: &SetFunctor, eta: &[Vec<usize>]) -> Value {
    let cat = from.category();
    let comps: Vec<Value> = cat
        .object_ids()
        .map(|o| {
            let pairs: Vec<[&str; 2]> = eta[o.0]
                .iter()
                .enumerate()
                .map(|(x, &y)| [from.element_name(o, x), to.element_name(o, y)])
                .collect();
            json!({ "object": cat.object_name(o), "pairs": pairs })
        })
        .collect();
    Value::Array(comps)
}
