use proptest::prelude::*;
use sitekit_cli::ast::*;
use sitekit_cli::{parse_workspace, DiagnosticKind};
use sitekit_core::TopologyKind;

const ARROW_EXAMPLE: &str = include_str!("../examples/arrow.site");
const FIXTURE: &str = include_str!("fixtures/workbench.site");

#[test]
fn empty_file_is_an_empty_workspace() {
    assert!(parse_workspace("").unwrap().is_empty());
    assert!(parse_workspace("# only a comment\n\n   \n").unwrap().is_empty());
}

#[test]
fn arrow_example_has_one_category_two_topologies_one_site() {
    let ws = parse_workspace(ARROW_EXAMPLE).unwrap();
    assert_eq!(ws.categories.len(), 1);
    assert_eq!(ws.topologies.len(), 2);
    assert_eq!(ws.sites.len(), 1);
    assert!(ws.functors.is_empty() && ws.presheaves.is_empty());
    let cat = &ws.categories[0];
    assert_eq!(cat.objects.len(), 2);
    assert_eq!(cat.arrows[0].name.name, "f");
    assert_eq!(cat.arrows[0].name.pos.line, 4);
}

#[test]
fn fixtures_round_trip() {
    for text in [ARROW_EXAMPLE, FIXTURE] {
        let ws = parse_workspace(text).unwrap();
        let again = parse_workspace(&ws.serialize()).unwrap();
        assert_eq!(ws, again);
        assert_eq!(ws.serialize(), again.serialize());
    }
}

#[test]
fn undeclared_composite_is_a_positioned_unresolved_reference() {
    let text = "category C\n  objects: a\n  arrow f : a -> a\n  arrow g : a -> a\n  compose g f = q\nend\n";
    let d = parse_workspace(text).unwrap_err();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].kind, DiagnosticKind::UnresolvedReference);
    assert_eq!((d[0].pos.line, d[0].pos.column), (5, 17));
    assert!(d[0].message.contains('q'));
}

#[test]
fn duplicate_names_across_block_kinds() {
    let text = "category C\n  objects: a\nend\ntopology C on C\n  kind: trivial\nend\n";
    let d = parse_workspace(text).unwrap_err();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].kind, DiagnosticKind::DuplicateName);
    assert_eq!(d[0].pos.line, 4);
}

#[test]
fn identities_are_reserved() {
    let text = "category C\n  objects: a\n  arrow id_a : a -> a\nend\n";
    let d = parse_workspace(text).unwrap_err();
    assert_eq!(d[0].kind, DiagnosticKind::DuplicateName);
}

#[test]
fn cover_arrows_must_land_on_the_covered_object() {
    let text = "category C\n  objects: a b\n  arrow f : a -> b\nend\ntopology T on C\n  cover a : { f }\nend\n";
    let d = parse_workspace(text).unwrap_err();
    assert_eq!(d[0].kind, DiagnosticKind::Mismatch);
    assert_eq!((d[0].pos.line, d[0].pos.column), (6, 15));
}

#[test]
fn site_topology_must_live_on_the_site_category() {
    let text = "category C\n  objects: a\nend\ncategory D\n  objects: b\nend\n\
                topology T on C\n  kind: trivial\nend\nsite S = ( D , T )\n";
    let d = parse_workspace(text).unwrap_err();
    assert_eq!(d[0].kind, DiagnosticKind::Mismatch);
    assert_eq!(d[0].pos.line, 10);
}

#[test]
fn presheaf_actions_run_backwards() {
    let ok = "category C\n  objects: a b\n  arrow f : a -> b\nend\n\
              presheaf P on C\n  on a = { x }\n  on b = { y }\n  on f : y -> x\nend\n";
    parse_workspace(ok).unwrap();
    let wrong = ok.replace("y -> x", "x -> y");
    let d = parse_workspace(&wrong).unwrap_err();
    assert_eq!(d.len(), 2);
    assert!(d.iter().all(|d| d.kind == DiagnosticKind::UnresolvedReference));
}

#[test]
fn every_error_is_reported_in_order() {
    let text = "category C\n  objects: a\n  arrow f : a -> z\n  bogus line\nend\nsite S = ( C , T )\n";
    let d = parse_workspace(text).unwrap_err();
    let lines: Vec<usize> = d.iter().map(|d| d.pos.line).collect();
    assert_eq!(lines, vec![3, 4, 6]);
    assert_eq!(d[1].kind, DiagnosticKind::Syntax);
}

#[test]
fn missing_end_before_next_block() {
    let text = "category C\n  objects: a\ncategory D\n  objects: b\nend\n";
    let d = parse_workspace(text).unwrap_err();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].kind, DiagnosticKind::Syntax);
    assert_eq!(d[0].pos.line, 1);
    assert!(d[0].to_string().starts_with("line 1, column 10: block 'C'"));
}

/// Numbers chosen by proptest, turned into a workspace that resolves.
#[derive(Debug, Clone)]
struct Shape {
    objects: usize,
    arrows: Vec<(usize, usize)>,
    composes: Vec<(usize, usize, usize)>,
    kind: Option<u8>,
    covers: Vec<(usize, Vec<usize>)>,
    sizes: Vec<usize>,
    choices: Vec<usize>,
}

fn shape() -> impl Strategy<Value = Shape> {
    (1usize..4).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec((0..n, 0..n), 0..5),
            prop::collection::vec((0usize..16, 0usize..16, 0usize..16), 0..4),
            prop::option::of(0u8..3),
            prop::collection::vec((0..n, prop::collection::vec(0usize..16, 0..4)), 0..3),
            prop::collection::vec(0usize..3, n),
            prop::collection::vec(0usize..8, 16),
        )
            .prop_map(|(objects, arrows, composes, kind, covers, sizes, choices)| Shape {
                objects,
                arrows,
                composes,
                kind,
                covers,
                sizes,
                choices,
            })
    })
}

fn build(s: &Shape) -> Workspace {
    let obj = |i: usize| format!("o{i}");
    let mut arrows: Vec<(String, usize, usize)> =
        (0..s.objects).map(|i| (format!("id_{}", obj(i)), i, i)).collect();
    arrows.extend(s.arrows.iter().enumerate().map(|(k, &(a, b))| (format!("f{k}"), a, b)));
    let named = |i: usize| Ident::new(&arrows[i % arrows.len()].0);

    let category = CategoryBlock {
        name: Ident::new("C"),
        objects: (0..s.objects).map(|i| Ident::new(&obj(i))).collect(),
        arrows: arrows[s.objects..]
            .iter()
            .map(|(n, a, b)| ArrowLine {
                name: Ident::new(n),
                source: Ident::new(&obj(*a)),
                target: Ident::new(&obj(*b)),
            })
            .collect(),
        equations: s
            .composes
            .iter()
            .map(|&(x, y, z)| ComposeLine { outer: named(x), inner: named(y), result: named(z) })
            .collect(),
    };
    let topology = TopologyBlock {
        name: Ident::new("T"),
        category: Ident::new("C"),
        kind: s.kind.map(|k| [TopologyKind::Trivial, TopologyKind::Atomic, TopologyKind::Dense][k as usize]),
        covers: s
            .covers
            .iter()
            .map(|(o, picks)| {
                let into: Vec<&(String, usize, usize)> = arrows.iter().filter(|a| a.2 == *o).collect();
                let mut chosen: Vec<Ident> = Vec::new();
                for p in picks {
                    let a = Ident::new(&into[p % into.len()].0);
                    if !chosen.contains(&a) {
                        chosen.push(a);
                    }
                }
                CoverLine { object: Ident::new(&obj(*o)), arrows: chosen }
            })
            .collect(),
    };
    let elems = |o: usize| -> Vec<Ident> { (0..s.sizes[o]).map(|e| Ident::new(&format!("x{e}"))).collect() };
    let family = |name: &str, contravariant: bool| FunctorBlock {
        name: Ident::new(name),
        category: Ident::new("C"),
        sets: (0..s.objects).map(|o| SetLine { object: Ident::new(&obj(o)), elements: elems(o) }).collect(),
        actions: arrows[s.objects..]
            .iter()
            .enumerate()
            .filter_map(|(k, (n, a, b))| {
                let (from, to) = if contravariant { (*b, *a) } else { (*a, *b) };
                if s.sizes[from] > 0 && s.sizes[to] == 0 {
                    return None;
                }
                let pairs = (0..s.sizes[from])
                    .map(|x| {
                        let y = s.choices[(k * 3 + x) % s.choices.len()] % s.sizes[to];
                        (Ident::new(&format!("x{x}")), Ident::new(&format!("x{y}")))
                    })
                    .collect();
                Some(ActionLine { arrow: Ident::new(n), pairs })
            })
            .collect(),
    };
    Workspace {
        categories: vec![category],
        topologies: vec![topology],
        sites: vec![SiteBlock { name: Ident::new("S"), category: Ident::new("C"), topology: Ident::new("T") }],
        functors: vec![family("F", false)],
        presheaves: vec![family("P", true)],
    }
}

proptest! {
    #[test]
    fn parse_serialize_parse_is_identity(s in shape()) {
        let ws = build(&s);
        let text = ws.serialize();
        let parsed = parse_workspace(&text).map_err(|d| TestCaseError::fail(format!("{d:?}\n{text}")))?;
        prop_assert_eq!(&parsed, &ws);
        let again = parse_workspace(&parsed.serialize()).unwrap();
        prop_assert_eq!(again, parsed);
    }

    #[test]
    fn garbage_never_panics(text in "[a-z{}():=,# \n>-]{0,120}") {
        let _ = parse_workspace(&text);
    }
}
