//! Abstract syntax of workspace files.

use std::fmt::{self, Write};

use sitekit_core::TopologyKind;

/// Source position, 1-based. Positions are diagnostics only and compare
/// equal to each other, so two workspaces are equal when their contents are.
#[derive(Debug, Clone, Copy, Default, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A name occurrence with its position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub pos: Pos,
}

impl Ident {
    pub fn new(name: &str) -> Ident {
        Ident {
            name: name.to_string(),
            pos: Pos::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowLine {
    pub name: Ident,
    pub source: Ident,
    pub target: Ident,
}

/// `compose outer inner = result`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposeLine {
    pub outer: Ident,
    pub inner: Ident,
    pub result: Ident,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryBlock {
    pub name: Ident,
    pub objects: Vec<Ident>,
    pub arrows: Vec<ArrowLine>,
    pub equations: Vec<ComposeLine>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverLine {
    pub object: Ident,
    pub arrows: Vec<Ident>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologyBlock {
    pub name: Ident,
    pub category: Ident,
    pub kind: Option<TopologyKind>,
    pub covers: Vec<CoverLine>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiteBlock {
    pub name: Ident,
    pub category: Ident,
    pub topology: Ident,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetLine {
    pub object: Ident,
    pub elements: Vec<Ident>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionLine {
    pub arrow: Ident,
    pub pairs: Vec<(Ident, Ident)>,
}

/// A functor or presheaf block. For presheaves the pairs of an arrow
/// `f: a -> b` map elements of `b` to elements of `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorBlock {
    pub name: Ident,
    pub category: Ident,
    pub sets: Vec<SetLine>,
    pub actions: Vec<ActionLine>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Workspace {
    pub categories: Vec<CategoryBlock>,
    pub topologies: Vec<TopologyBlock>,
    pub sites: Vec<SiteBlock>,
    pub functors: Vec<FunctorBlock>,
    pub presheaves: Vec<FunctorBlock>,
}

pub(crate) fn kind_name(k: TopologyKind) -> &'static str {
    match k {
        TopologyKind::Trivial => "trivial",
        TopologyKind::Atomic => "atomic",
        TopologyKind::Dense => "dense",
    }
}

fn join(ids: &[Ident], sep: &str) -> String {
    ids.iter().map(|i| i.name.as_str()).collect::<Vec<_>>().join(sep)
}

fn write_elements(out: &mut String, sets: &[SetLine], actions: &[ActionLine]) {
    for s in sets {
        let _ = writeln!(out, "  on {} = {{ {} }}", s.object.name, join(&s.elements, " "));
    }
    for a in actions {
        let pairs: Vec<String> = a
            .pairs
            .iter()
            .map(|(x, y)| format!("{} -> {}", x.name, y.name))
            .collect();
        let _ = writeln!(out, "  on {} : {}", a.arrow.name, pairs.join(", "));
    }
}

impl Workspace {
    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
            && self.topologies.is_empty()
            && self.sites.is_empty()
            && self.functors.is_empty()
            && self.presheaves.is_empty()
    }

    pub fn category(&self, name: &str) -> Option<&CategoryBlock> {
        self.categories.iter().find(|c| c.name.name == name)
    }

    pub fn topology(&self, name: &str) -> Option<&TopologyBlock> {
        self.topologies.iter().find(|c| c.name.name == name)
    }

    pub fn site(&self, name: &str) -> Option<&SiteBlock> {
        self.sites.iter().find(|c| c.name.name == name)
    }

    pub fn functor(&self, name: &str) -> Option<&FunctorBlock> {
        self.functors.iter().find(|c| c.name.name == name)
    }

    pub fn presheaf(&self, name: &str) -> Option<&FunctorBlock> {
        self.presheaves.iter().find(|c| c.name.name == name)
    }

    /// Canonical text form; parsing it gives back an equal workspace.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let blank = |out: &mut String| {
            if !out.is_empty() {
                out.push('\n');
            }
        };
        for c in &self.categories {
            blank(&mut out);
            let _ = writeln!(out, "category {}", c.name.name);
            if !c.objects.is_empty() {
                let _ = writeln!(out, "  objects: {}", join(&c.objects, " "));
            }
            for a in &c.arrows {
                let _ = writeln!(out, "  arrow {} : {} -> {}", a.name.name, a.source.name, a.target.name);
            }
            for e in &c.equations {
                let _ = writeln!(out, "  compose {} {} = {}", e.outer.name, e.inner.name, e.result.name);
            }
            out.push_str("end\n");
        }
        for t in &self.topologies {
            blank(&mut out);
            let _ = writeln!(out, "topology {} on {}", t.name.name, t.category.name);
            if let Some(k) = t.kind {
                let _ = writeln!(out, "  kind: {}", kind_name(k));
            }
            for c in &t.covers {
                let _ = writeln!(out, "  cover {} : {{ {} }}", c.object.name, join(&c.arrows, " "));
            }
            out.push_str("end\n");
        }
        for s in &self.sites {
            blank(&mut out);
            let _ = writeln!(out, "site {} = ( {} , {} )", s.name.name, s.category.name, s.topology.name);
        }
        for f in &self.functors {
            blank(&mut out);
            let _ = writeln!(out, "functor {} : {} -> finset", f.name.name, f.category.name);
            write_elements(&mut out, &f.sets, &f.actions);
            out.push_str("end\n");
        }
        for p in &self.presheaves {
            blank(&mut out);
            let _ = writeln!(out, "presheaf {} on {}", p.name.name, p.category.name);
            write_elements(&mut out, &p.sets, &p.actions);
            out.push_str("end\n");
        }
        out
    }
}
