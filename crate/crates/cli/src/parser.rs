//! Line-oriented parser for workspace files.
//!
//! ```text
//! # comment
//! category C
//!   objects: a b
//!   arrow f : a -> b
//!   compose g f = h
//! end
//! topology J on C
//!   kind: atomic
//!   cover b : { f }
//! end
//! site S = ( C , J )
//! functor F : C -> finset
//!   on a = { x y }
//!   on f : x -> u, y -> u
//! end
//! presheaf P on C
//!   on b = { u }
//!   on f : u -> x
//! end
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use sitekit_core::TopologyKind;

use crate::ast::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    Syntax,
    UnresolvedReference,
    DuplicateName,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.pos.line, self.pos.column, self.message
        )
    }
}

impl Diagnostic {
    fn new(kind: DiagnosticKind, pos: Pos, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            kind,
            pos,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Colon,
    Equals,
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "'{w}'"),
            Tok::LBrace => f.write_str("'{'"),
            Tok::RBrace => f.write_str("'}'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::Colon => f.write_str("':'"),
            Tok::Equals => f.write_str("'='"),
            Tok::Arrow => f.write_str("'->'"),
        }
    }
}

fn name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '*' | '\'' | '.' | '-')
}

fn lex(line: &str, line_no: usize) -> Result<Vec<(Tok, Pos)>, Diagnostic> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos {
            line: line_no,
            column: i + 1,
        };
        let arrow_at = |j: usize| chars[j] == '-' && chars.get(j + 1) == Some(&'>');
        if c == '#' {
            break;
        } else if c.is_whitespace() {
            i += 1;
            continue;
        } else if arrow_at(i) {
            out.push((Tok::Arrow, pos));
            i += 2;
            continue;
        }
        let sym = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            ':' => Some(Tok::Colon),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(t) = sym {
            out.push((t, pos));
            i += 1;
        } else if name_char(c) {
            let start = i;
            while i < chars.len() && name_char(chars[i]) && !arrow_at(i) {
                i += 1;
            }
            out.push((Tok::Word(chars[start..i].iter().collect()), pos));
        } else {
            return Err(Diagnostic::new(
                DiagnosticKind::Syntax,
                pos,
                format!("unexpected character '{c}'"),
            ));
        }
    }
    Ok(out)
}

struct Cursor {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    /// Position just past the last token, for "expected ..." at line end.
    end: Pos,
}

type LineResult<T> = Result<T, Diagnostic>;

impl Cursor {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn error<T>(&self, expected: &str) -> LineResult<T> {
        let found = match self.peek() {
            Some(t) => t.to_string(),
            None => "end of line".to_string(),
        };
        Err(Diagnostic::new(
            DiagnosticKind::Syntax,
            self.pos(),
            format!("expected {expected}, found {found}"),
        ))
    }

    fn name(&mut self, what: &str) -> LineResult<Ident> {
        match self.toks.get(self.at) {
            Some((Tok::Word(w), pos)) => {
                let id = Ident {
                    name: w.clone(),
                    pos: *pos,
                };
                self.at += 1;
                Ok(id)
            }
            _ => self.error(what),
        }
    }

    fn keyword(&mut self, kw: &str) -> LineResult<()> {
        match self.peek() {
            Some(Tok::Word(w)) if w == kw => {
                self.at += 1;
                Ok(())
            }
            _ => self.error(&format!("'{kw}'")),
        }
    }

    fn sym(&mut self, t: Tok) -> LineResult<()> {
        if self.peek() == Some(&t) {
            self.at += 1;
            Ok(())
        } else {
            self.error(&t.to_string())
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn finish(&self) -> LineResult<()> {
        if self.at < self.toks.len() {
            self.error("end of line")
        } else {
            Ok(())
        }
    }

    /// `{ n1 n2, n3 }` with optional commas.
    fn name_set(&mut self, what: &str) -> LineResult<Vec<Ident>> {
        self.sym(Tok::LBrace)?;
        let mut out = Vec::new();
        loop {
            if self.eat(&Tok::RBrace) {
                return Ok(out);
            }
            out.push(self.name(what)?);
            self.eat(&Tok::Comma);
        }
    }
}

enum Open {
    Category(CategoryBlock),
    Topology(TopologyBlock),
    Functor(FunctorBlock),
    Presheaf(FunctorBlock),
}

impl Open {
    fn name(&self) -> &Ident {
        match self {
            Open::Category(b) => &b.name,
            Open::Topology(b) => &b.name,
            Open::Functor(b) | Open::Presheaf(b) => &b.name,
        }
    }
}

const HEADERS: [&str; 5] = ["category", "topology", "site", "functor", "presheaf"];

struct Parser {
    ws: Workspace,
    open: Option<Open>,
    diagnostics: Vec<Diagnostic>,
}

impl Parser {
    fn close(&mut self) {
        match self.open.take() {
            Some(Open::Category(b)) => self.ws.categories.push(b),
            Some(Open::Topology(b)) => self.ws.topologies.push(b),
            Some(Open::Functor(b)) => self.ws.functors.push(b),
            Some(Open::Presheaf(b)) => self.ws.presheaves.push(b),
            None => {}
        }
    }

    fn line(&mut self, c: &mut Cursor) -> LineResult<()> {
        let first = match c.peek() {
            None => return Ok(()),
            Some(Tok::Word(w)) => w.clone(),
            Some(_) => return c.error("a keyword"),
        };
        if self.open.is_some() && HEADERS.contains(&first.as_str()) {
            let name = self.open.as_ref().map(|o| o.name().clone()).expect("open block");
            self.close();
            self.diagnostics.push(Diagnostic::new(
                DiagnosticKind::Syntax,
                name.pos,
                format!("block '{}' is missing 'end'", name.name),
            ));
        }
        if first == "end" && self.open.is_some() {
            c.at += 1;
            c.finish()?;
            self.close();
            return Ok(());
        }
        match self.open.as_mut() {
            None => self.header(c, &first),
            Some(Open::Category(b)) => category_line(c, b, &first),
            Some(Open::Topology(b)) => topology_line(c, b, &first),
            Some(Open::Functor(b)) | Some(Open::Presheaf(b)) => element_line(c, b, &first),
        }
    }

    fn header(&mut self, c: &mut Cursor, first: &str) -> LineResult<()> {
        c.at += 1;
        match first {
            "category" => {
                let name = c.name("a category name")?;
                c.finish()?;
                self.open = Some(Open::Category(CategoryBlock {
                    name,
                    objects: Vec::new(),
                    arrows: Vec::new(),
                    equations: Vec::new(),
                }));
            }
            "topology" => {
                let name = c.name("a topology name")?;
                c.keyword("on")?;
                let category = c.name("a category name")?;
                c.finish()?;
                self.open = Some(Open::Topology(TopologyBlock {
                    name,
                    category,
                    kind: None,
                    covers: Vec::new(),
                }));
            }
            "site" => {
                let name = c.name("a site name")?;
                c.sym(Tok::Equals)?;
                c.sym(Tok::LParen)?;
                let category = c.name("a category name")?;
                c.sym(Tok::Comma)?;
                let topology = c.name("a topology name")?;
                c.sym(Tok::RParen)?;
                c.finish()?;
                self.ws.sites.push(SiteBlock {
                    name,
                    category,
                    topology,
                });
            }
            "functor" => {
                let name = c.name("a functor name")?;
                c.sym(Tok::Colon)?;
                let category = c.name("a category name")?;
                c.sym(Tok::Arrow)?;
                c.keyword("finset")?;
                c.finish()?;
                self.open = Some(Open::Functor(FunctorBlock {
                    name,
                    category,
                    sets: Vec::new(),
                    actions: Vec::new(),
                }));
            }
            "presheaf" => {
                let name = c.name("a presheaf name")?;
                c.keyword("on")?;
                let category = c.name("a category name")?;
                c.finish()?;
                self.open = Some(Open::Presheaf(FunctorBlock {
                    name,
                    category,
                    sets: Vec::new(),
                    actions: Vec::new(),
                }));
            }
            _ => {
                c.at -= 1;
                return c.error("'category', 'topology', 'site', 'functor' or 'presheaf'");
            }
        }
        Ok(())
    }
}

fn category_line(c: &mut Cursor, b: &mut CategoryBlock, first: &str) -> LineResult<()> {
    c.at += 1;
    match first {
        "objects" => {
            c.sym(Tok::Colon)?;
            while c.peek().is_some() {
                b.objects.push(c.name("an object name")?);
            }
        }
        "arrow" => {
            let name = c.name("an arrow name")?;
            c.sym(Tok::Colon)?;
            let source = c.name("a source object")?;
            c.sym(Tok::Arrow)?;
            let target = c.name("a target object")?;
            c.finish()?;
            b.arrows.push(ArrowLine {
                name,
                source,
                target,
            });
        }
        "compose" => {
            let outer = c.name("an arrow name")?;
            let inner = c.name("an arrow name")?;
            c.sym(Tok::Equals)?;
            let result = c.name("an arrow name")?;
            c.finish()?;
            b.equations.push(ComposeLine {
                outer,
                inner,
                result,
            });
        }
        _ => {
            c.at -= 1;
            return c.error("'objects', 'arrow', 'compose' or 'end'");
        }
    }
    Ok(())
}

fn topology_line(c: &mut Cursor, b: &mut TopologyBlock, first: &str) -> LineResult<()> {
    c.at += 1;
    match first {
        "kind" => {
            let pos = c.pos();
            c.sym(Tok::Colon)?;
            let k = c.name("'trivial', 'atomic' or 'dense'")?;
            c.finish()?;
            let kind = match k.name.as_str() {
                "trivial" => TopologyKind::Trivial,
                "atomic" => TopologyKind::Atomic,
                "dense" => TopologyKind::Dense,
                other => {
                    return Err(Diagnostic::new(
                        DiagnosticKind::Syntax,
                        k.pos,
                        format!("unknown topology kind '{other}'"),
                    ))
                }
            };
            if b.kind.is_some() {
                return Err(Diagnostic::new(
                    DiagnosticKind::Syntax,
                    pos,
                    "kind given twice",
                ));
            }
            b.kind = Some(kind);
        }
        "cover" => {
            let object = c.name("an object name")?;
            c.sym(Tok::Colon)?;
            let arrows = c.name_set("an arrow name")?;
            c.finish()?;
            b.covers.push(CoverLine { object, arrows });
        }
        _ => {
            c.at -= 1;
            return c.error("'kind', 'cover' or 'end'");
        }
    }
    Ok(())
}

fn element_line(c: &mut Cursor, b: &mut FunctorBlock, first: &str) -> LineResult<()> {
    if first != "on" {
        return c.error("'on' or 'end'");
    }
    c.at += 1;
    let subject = c.name("an object or arrow name")?;
    if c.eat(&Tok::Equals) {
        let elements = c.name_set("an element name")?;
        c.finish()?;
        b.sets.push(SetLine {
            object: subject,
            elements,
        });
    } else if c.eat(&Tok::Colon) {
        let mut pairs = Vec::new();
        while c.peek().is_some() {
            let x = c.name("an element name")?;
            c.sym(Tok::Arrow)?;
            let y = c.name("an element name")?;
            pairs.push((x, y));
            if c.peek().is_some() {
                c.sym(Tok::Comma)?;
            }
        }
        b.actions.push(ActionLine {
            arrow: subject,
            pairs,
        });
    } else {
        return c.error("'=' or ':'");
    }
    Ok(())
}

/// Parses and resolves a workspace file. Every diagnostic found is
/// returned, in source order.
pub fn parse_workspace(text: &str) -> Result<Workspace, Vec<Diagnostic>> {
    let mut p = Parser {
        ws: Workspace::default(),
        open: None,
        diagnostics: Vec::new(),
    };
    let mut last_line = 0;
    for (i, line) in text.lines().enumerate() {
        last_line = i + 1;
        let toks = match lex(line, i + 1) {
            Ok(t) => t,
            Err(d) => {
                p.diagnostics.push(d);
                continue;
            }
        };
        let mut cursor = Cursor {
            toks,
            at: 0,
            end: Pos {
                line: i + 1,
                column: line.chars().count() + 1,
            },
        };
        if let Err(d) = p.line(&mut cursor) {
            p.diagnostics.push(d);
        }
    }
    if let Some(open) = &p.open {
        let name = open.name().clone();
        p.diagnostics.push(Diagnostic::new(
            DiagnosticKind::Syntax,
            Pos {
                line: last_line + 1,
                column: 1,
            },
            format!(
                "end of file inside block '{}' opened at line {}",
                name.name, name.pos.line
            ),
        ));
        p.close();
    }
    p.diagnostics.extend(resolve(&p.ws));
    if p.diagnostics.is_empty() {
        Ok(p.ws)
    } else {
        p.diagnostics
            .sort_by_key(|d| (d.pos.line, d.pos.column));
        Err(p.diagnostics)
    }
}

struct CatScope<'a> {
    objects: HashSet<&'a str>,
    /// name -> (source, target), identities included.
    arrows: HashMap<String, (&'a str, &'a str)>,
}

fn scope(c: &CategoryBlock) -> CatScope<'_> {
    let mut arrows = HashMap::new();
    for o in &c.objects {
        arrows.insert(format!("id_{}", o.name), (o.name.as_str(), o.name.as_str()));
    }
    for a in &c.arrows {
        arrows
            .entry(a.name.name.clone())
            .or_insert((a.source.name.as_str(), a.target.name.as_str()));
    }
    CatScope {
        objects: c.objects.iter().map(|o| o.name.as_str()).collect(),
        arrows,
    }
}

fn unresolved(id: &Ident, what: &str) -> Diagnostic {
    Diagnostic::new(
        DiagnosticKind::UnresolvedReference,
        id.pos,
        format!("unresolved reference: no {what} named '{}'", id.name),
    )
}

fn duplicate(id: &Ident, what: &str) -> Diagnostic {
    Diagnostic::new(
        DiagnosticKind::DuplicateName,
        id.pos,
        format!("duplicate {what} '{}'", id.name),
    )
}

fn resolve(ws: &Workspace) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    let mut global = HashSet::new();
    let names = ws
        .categories
        .iter()
        .map(|b| &b.name)
        .chain(ws.topologies.iter().map(|b| &b.name))
        .chain(ws.sites.iter().map(|b| &b.name))
        .chain(ws.functors.iter().map(|b| &b.name))
        .chain(ws.presheaves.iter().map(|b| &b.name));
    for n in names {
        if !global.insert(n.name.as_str()) {
            out.push(duplicate(n, "name"));
        }
    }

    let mut scopes = HashMap::new();
    for c in &ws.categories {
        let mut seen = HashSet::new();
        for o in &c.objects {
            if !seen.insert(o.name.as_str()) {
                out.push(duplicate(o, "object"));
            }
        }
        let mut arrows: HashSet<String> = c.objects.iter().map(|o| format!("id_{}", o.name)).collect();
        for a in &c.arrows {
            if !arrows.insert(a.name.name.clone()) {
                out.push(duplicate(&a.name, "arrow"));
            }
            for end in [&a.source, &a.target] {
                if !seen.contains(end.name.as_str()) {
                    out.push(unresolved(end, "object"));
                }
            }
        }
        for e in &c.equations {
            for id in [&e.outer, &e.inner, &e.result] {
                if !arrows.contains(&id.name) {
                    out.push(unresolved(id, "arrow"));
                }
            }
        }
        scopes.entry(c.name.name.as_str()).or_insert_with(|| scope(c));
    }

    for t in &ws.topologies {
        let Some(s) = scopes.get(t.category.name.as_str()) else {
            out.push(unresolved(&t.category, "category"));
            continue;
        };
        for cover in &t.covers {
            if !s.objects.contains(cover.object.name.as_str()) {
                out.push(unresolved(&cover.object, "object"));
                continue;
            }
            for a in &cover.arrows {
                match s.arrows.get(&a.name) {
                    None => out.push(unresolved(a, "arrow")),
                    Some(&(_, tgt)) if tgt != cover.object.name => out.push(Diagnostic::new(
                        DiagnosticKind::Mismatch,
                        a.pos,
                        format!(
                            "arrow '{}' has codomain '{tgt}', not '{}'",
                            a.name, cover.object.name
                        ),
                    )),
                    _ => {}
                }
            }
        }
    }

    for s in &ws.sites {
        if !scopes.contains_key(s.category.name.as_str()) {
            out.push(unresolved(&s.category, "category"));
        }
        match ws.topology(&s.topology.name) {
            None => out.push(unresolved(&s.topology, "topology")),
            Some(t) if t.category.name != s.category.name => out.push(Diagnostic::new(
                DiagnosticKind::Mismatch,
                s.topology.pos,
                format!(
                    "topology '{}' is on category '{}', not '{}'",
                    t.name.name, t.category.name, s.category.name
                ),
            )),
            _ => {}
        }
    }

    for (blocks, contravariant) in [(&ws.functors, false), (&ws.presheaves, true)] {
        for b in blocks {
            let Some(s) = scopes.get(b.category.name.as_str()) else {
                out.push(unresolved(&b.category, "category"));
                continue;
            };
            let mut sets: HashMap<&str, HashSet<&str>> = HashMap::new();
            for line in &b.sets {
                if !s.objects.contains(line.object.name.as_str()) {
                    out.push(unresolved(&line.object, "object"));
                    continue;
                }
                if sets.contains_key(line.object.name.as_str()) {
                    out.push(duplicate(&line.object, "set for object"));
                    continue;
                }
                let mut elems = HashSet::new();
                for e in &line.elements {
                    if !elems.insert(e.name.as_str()) {
                        out.push(duplicate(e, "element"));
                    }
                }
                sets.insert(line.object.name.as_str(), elems);
            }
            let empty = HashSet::new();
            let mut acted = HashSet::new();
            for line in &b.actions {
                let Some(&(src, tgt)) = s.arrows.get(&line.arrow.name) else {
                    out.push(unresolved(&line.arrow, "arrow"));
                    continue;
                };
                if !acted.insert(line.arrow.name.as_str()) {
                    out.push(duplicate(&line.arrow, "action for arrow"));
                    continue;
                }
                let (from, to) = if contravariant { (tgt, src) } else { (src, tgt) };
                let (dom, cod) = (
                    sets.get(from).unwrap_or(&empty),
                    sets.get(to).unwrap_or(&empty),
                );
                let mut mapped = HashSet::new();
                for (x, y) in &line.pairs {
                    if !dom.contains(x.name.as_str()) {
                        out.push(unresolved(x, &format!("element of '{from}'")));
                    } else if !mapped.insert(x.name.as_str()) {
                        out.push(duplicate(x, "mapping for element"));
                    }
                    if !cod.contains(y.name.as_str()) {
                        out.push(unresolved(y, &format!("element of '{to}'")));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_arrows_inside_names() {
        let t = lex("arrow f:a->b", 1).unwrap();
        let kinds: Vec<Tok> = t.into_iter().map(|t| t.0).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Word("arrow".into()),
                Tok::Word("f".into()),
                Tok::Colon,
                Tok::Word("a".into()),
                Tok::Arrow,
                Tok::Word("b".into()),
            ]
        );
    }

    #[test]
    fn comments_and_blank_lines() {
        let ws = parse_workspace("# nothing\n\n   # still nothing\n").unwrap();
        assert!(ws.is_empty());
    }

    #[test]
    fn syntax_error_position() {
        let e = parse_workspace("category C\n  arrow f a -> b\nend\n").unwrap_err();
        assert_eq!(e[0].kind, DiagnosticKind::Syntax);
        assert_eq!((e[0].pos.line, e[0].pos.column), (2, 11));
    }

    #[test]
    fn missing_end_is_reported() {
        let e = parse_workspace("category C\n  objects: a\n").unwrap_err();
        assert!(e[0].message.contains("end of file"));
        let e = parse_workspace("category C\n  objects: a\ncategory D\n  objects: b\nend\n")
            .unwrap_err();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].pos.line, 1);
    }
}
