use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use sitekit_core::fraisse::{self, AmalgamationClass};
use sitekit_core::*;

use crate::ast::Workspace;
use crate::error::{CliError, CliResult};
use crate::parser::parse_workspace;
use crate::render;
use crate::session::Session;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Parser)]
#[command(name = "sitekit", version, about = "Finite sites, sheaves, models and Fraisse limits")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Workspace file.
    #[arg(short = 'w', long, global = true, default_value = "workspace.site")]
    pub workspace: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse the workspace and check every block.
    Validate,
    /// Right Ore, amalgamation and joint embedding of a category.
    Props { category: String },
    #[command(subcommand)]
    Topo(TopoCommand),
    /// Topologies containing the site's topology.
    Subtoposes { site: String },
    #[command(subcommand)]
    Sheaf(SheafCommand),
    /// Subterminal sheaves of a site.
    Subterminals { site: String },
    /// Atomic, two-valued, Boolean and De Morgan checks for a site.
    Invariants { site: String },
    /// Atom, indecomposable and compact checks for a sheaf.
    ObjectInvariants { site: String, presheaf: String },
    #[command(subcommand)]
    Model(ModelCommand),
    /// Homogeneity of a model against finitely presentable models.
    Homogeneous {
        site: String,
        model: String,
        #[arg(long, value_delimiter = ',', required = true)]
        fp: Vec<String>,
    },
    #[command(subcommand)]
    Fraisse(FraisseCommand),
    #[command(subcommand)]
    Experimental(ExperimentalCommand),
}

#[derive(Debug, Subcommand)]
pub enum TopoCommand {
    /// Least topology containing a topology block's kind and covers.
    Generate { topology: String },
    /// Every topology on a category.
    Enumerate {
        category: String,
        /// Cross-check against filtering all sieve families by the axioms.
        #[arg(long)]
        oracle: bool,
    },
    /// The lattice of topologies with its covering relation.
    Lattice { category: String },
    Meet { left: String, right: String },
    Join { left: String, right: String },
    Implies { left: String, right: String },
}

#[derive(Debug, Subcommand)]
pub enum SheafCommand {
    /// Sheaf condition for a presheaf on a site.
    Check { site: String, presheaf: String },
}

#[derive(Debug, Subcommand)]
pub enum ModelCommand {
    /// Functoriality, flatness and continuity of a functor.
    Check { site: String, functor: String },
    /// Models up to isomorphism with bounded set sizes.
    Enumerate {
        site: String,
        #[arg(long, default_value_t = 2)]
        max_card: usize,
    },
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    /// linord, graph, initial-segment-linord or bounded-linord.
    #[arg(long)]
    pub class: String,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum FraisseCommand {
    /// Amalgamation and joint embedding up to a size bound.
    Verify {
        #[arg(long)]
        class: String,
        #[arg(long)]
        size: Option<usize>,
    },
    /// Build a limit chain.
    Limit {
        #[command(flatten)]
        chain: ChainArgs,
        /// Include the full task log.
        #[arg(long)]
        log: bool,
    },
    /// Bounded extension property of a chain.
    Extension {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long, default_value_t = 40)]
        depth: usize,
        #[arg(long, default_value_t = 3)]
        size: usize,
    },
    /// Back-and-forth between two chains built with different seeds.
    Iso {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long, default_value_t = 2)]
        seed2: u64,
        #[arg(long, default_value_t = 16)]
        k: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExperimentalCommand {
    /// Search for the least De Morgan topology between a site's topology
    /// and its double-negation topology.
    Demorgan { site: String },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Props { .. } => "props",
            Command::Topo(t) => match t {
                TopoCommand::Generate { .. } => "topo generate",
                TopoCommand::Enumerate { .. } => "topo enumerate",
                TopoCommand::Lattice { .. } => "topo lattice",
                TopoCommand::Meet { .. } => "topo meet",
                TopoCommand::Join { .. } => "topo join",
                TopoCommand::Implies { .. } => "topo implies",
            },
            Command::Subtoposes { .. } => "subtoposes",
            Command::Sheaf(_) => "sheaf check",
            Command::Subterminals { .. } => "subterminals",
            Command::Invariants { .. } => "invariants",
            Command::ObjectInvariants { .. } => "object-invariants",
            Command::Model(ModelCommand::Check { .. }) => "model check",
            Command::Model(ModelCommand::Enumerate { .. }) => "model enumerate",
            Command::Homogeneous { .. } => "homogeneous",
            Command::Fraisse(f) => match f {
                FraisseCommand::Verify { .. } => "fraisse verify",
                FraisseCommand::Limit { .. } => "fraisse limit",
                FraisseCommand::Extension { .. } => "fraisse extension",
                FraisseCommand::Iso { .. } => "fraisse iso",
            },
            Command::Experimental(_) => "experimental demorgan",
        }
    }
}

/// A finished check. `passed` is false when the checked property fails.
pub struct Report {
    pub passed: bool,
    pub text: String,
    pub data: Map<String, Value>,
}

impl Report {
    fn new(passed: bool, text: String, data: Value) -> Report {
        let Value::Object(data) = data else {
            panic!("report data must be an object")
        };
        Report { passed, text, data }
    }
}

pub fn load_workspace(path: &Path) -> CliResult<Workspace> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::input("io_error", format!("cannot read {}: {e}", path.display()))
    })?;
    parse_workspace(&text).map_err(CliError::parse)
}

pub fn execute(cli: &Cli, budget: Budget) -> CliResult<Report> {
    match &cli.command {
        Command::Fraisse(f) => return fraisse_command(f, &budget),
        Command::Validate => {
            let ws = load_workspace(&cli.workspace)?;
            return validate(&mut Session::new(&ws, budget));
        }
        _ => {}
    }
    let ws = load_workspace(&cli.workspace)?;
    let mut s = Session::new(&ws, budget);
    match &cli.command {
        Command::Props { category } => props(&mut s, category),
        Command::Topo(t) => topo(&mut s, t),
        Command::Subtoposes { site } => subtoposes(&mut s, site),
        Command::Sheaf(SheafCommand::Check { site, presheaf }) => sheaf_check(&mut s, site, presheaf),
        Command::Subterminals { site } => subterminals(&mut s, site),
        Command::Invariants { site } => invariants(&mut s, site),
        Command::ObjectInvariants { site, presheaf } => object_invariants_cmd(&mut s, site, presheaf),
        Command::Model(ModelCommand::Check { site, functor }) => model_check(&mut s, site, functor),
        Command::Model(ModelCommand::Enumerate { site, max_card }) => model_enumerate(&mut s, site, *max_card),
        Command::Homogeneous { site, model, fp } => homogeneous(&mut s, site, model, fp),
        Command::Experimental(ExperimentalCommand::Demorgan { site }) => demorgan(&mut s, site),
        Command::Validate | Command::Fraisse(_) => unreachable!("handled above"),
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "yes"
    } else {
        "no"
    }
}

fn validate(s: &mut Session) -> CliResult<Report> {
    let ws = s.ws;
    let mut all_ok = true;
    let mut text = String::new();
    let mut entry = |kind: &str, name: &str, result: std::result::Result<Value, CliError>, text: &mut String| {
        let v = match result {
            Ok(mut v) => {
                let valid = v["valid"].as_bool().unwrap_or(true);
                all_ok &= valid;
                v["name"] = json!(name);
                v["valid"] = json!(valid);
                let _ = writeln!(text, "{kind} {name}: {}", if valid { "ok" } else { "invalid" });
                v
            }
            Err(e) => {
                all_ok = false;
                let _ = writeln!(text, "{kind} {name}: invalid: {}", e.message);
                json!({ "name": name, "valid": false, "error": { "kind": e.kind, "message": e.message } })
            }
        };
        v
    };

    let mut categories = Vec::new();
    for b in &ws.categories {
        let r = s.category(&b.name.name).map(|c| {
            json!({ "objects": c.object_count(), "arrows": c.arrow_count() })
        });
        categories.push(entry("category", &b.name.name, r, &mut text));
    }
    let mut topologies = Vec::new();
    for b in &ws.topologies {
        let r = s.topology(&b.name.name).map(|j| {
            let report = validate_topology(&j);
            json!({ "valid": report.is_valid(), "cover_count": j.cover_count(), "degenerate": j.is_degenerate() })
        });
        topologies.push(entry("topology", &b.name.name, r, &mut text));
    }
    let mut sites = Vec::new();
    for b in &ws.sites {
        let r = s.site(&b.name.name).map(|_| json!({}));
        sites.push(entry("site", &b.name.name, r, &mut text));
    }
    let mut functors = Vec::new();
    for b in &ws.functors {
        let r = s.functor(&b.name.name).map(|f| render::functoriality(&f, &f.validate()));
        functors.push(entry("functor", &b.name.name, r, &mut text));
    }
    let mut presheaves = Vec::new();
    for b in &ws.presheaves {
        let r = s.presheaf(&b.name.name).map(|f| render::functoriality(&f, &f.validate()));
        presheaves.push(entry("presheaf", &b.name.name, r, &mut text));
    }
    if ws.is_empty() {
        text.push_str("empty workspace\n");
    }
    Ok(Report::new(
        all_ok,
        text,
        json!({
            "valid": all_ok,
            "categories": categories,
            "topologies": topologies,
            "sites": sites,
            "functors": functors,
            "presheaves": presheaves,
        }),
    ))
}

fn props(s: &mut Session, name: &str) -> CliResult<Report> {
    let cat = s.category(name)?;
    let reports = [
        ("right_ore", check_right_ore(&cat)),
        ("amalgamation", check_amalgamation(&cat)),
        ("joint_embedding", check_joint_embedding(&cat)),
    ];
    let mut data = json!({ "category": name });
    let mut text = format!("category {name}\n");
    let mut all = true;
    for (key, r) in &reports {
        all &= r.holds;
        data[*key] = json!(r.holds);
        data["witnesses"][*key] = match &r.failure {
            Some(c) => json!({ "failure": render::configuration(&cat, c) }),
            None => json!({
                "completions": r.completions.iter().map(|c| render::completion(&cat, c)).collect::<Vec<_>>(),
            }),
        };
        let _ = write!(text, "  {key}: {}", mark(r.holds));
        match &r.failure {
            Some(c) => {
                let _ = writeln!(text, " (no completion for {})", render::configuration_text(&cat, c));
            }
            None => {
                let _ = writeln!(text, " ({} configurations completed)", r.completions.len());
            }
        }
    }
    Ok(Report::new(all, text, data))
}

fn same_category(a: &GrothendieckTopology, b: &GrothendieckTopology) -> CliResult<()> {
    if a.category() == b.category() {
        Ok(())
    } else {
        Err(CliError::input(
            "category_mismatch",
            "the topologies are on different categories",
        ))
    }
}

fn topo(s: &mut Session, t: &TopoCommand) -> CliResult<Report> {
    match t {
        TopoCommand::Generate { topology } => {
            let b = s
                .ws
                .topology(topology)
                .ok_or_else(|| CliError::input("unknown_name", format!("no topology named '{topology}' in the workspace")))?;
            let seeds = s.seeds(b)?;
            let j = s.topology(topology)?;
            let cat = j.category().clone();
            let valid = validate_topology(&j).is_valid();
            let kind = b.kind.map(crate::ast::kind_name).unwrap_or("trivial");
            let mut text = format!(
                "topology {topology} on {}: kind {kind}, {} seed(s), {} covering sieves\n",
                b.category.name,
                seeds.len(),
                j.cover_count()
            );
            text.push_str(&render::topology_text(&j));
            Ok(Report::new(
                valid,
                text,
                json!({
                    "topology": topology,
                    "category": b.category.name,
                    "kind": kind,
                    "seeds": seeds.iter().map(|x| render::sieve(&cat, x)).collect::<Vec<_>>(),
                    "result": render::topology(&j),
                    "valid": valid,
                }),
            ))
        }
        TopoCommand::Enumerate { category, oracle } => {
            let u = s.universe(category)?;
            let lattice = enumerate_topologies(&u, &s.budget)?;
            let mut agrees = Value::Null;
            let mut passed = true;
            let mut text = format!("{} topologies on {category}\n", lattice.len());
            if *oracle {
                let other = enumerate_topologies_by_axioms(&u, &s.budget)?;
                let same = lattice.iter().eq(other.iter());
                agrees = json!(same);
                passed = same;
                let _ = writeln!(text, "axiom-filter oracle agrees: {}", mark(same));
            }
            for (i, j) in lattice.iter().enumerate() {
                let _ = writeln!(text, "[{i}]{}", if j.is_degenerate() { " degenerate" } else { "" });
                text.push_str(&render::topology_text(&j));
            }
            Ok(Report::new(
                passed,
                text,
                json!({
                    "category": category,
                    "count": lattice.len(),
                    "topologies": lattice.iter().map(|j| render::topology(&j)).collect::<Vec<_>>(),
                    "oracle_agrees": agrees,
                }),
            ))
        }
        TopoCommand::Lattice { category } => {
            let u = s.universe(category)?;
            let lattice = enumerate_topologies(&u, &s.budget)?;
            let mut named = Vec::new();
            for b in s.ws.topologies.iter().filter(|b| b.category.name == *category) {
                let j = s.topology(&b.name.name)?;
                named.push(json!({ "topology": b.name.name, "index": lattice.index_of(&j) }));
            }
            let hasse = lattice.hasse();
            let mut text = format!(
                "{} topologies on {category}; bottom [{}], top [{}]\ncovering pairs:",
                lattice.len(),
                lattice.bottom(),
                lattice.top()
            );
            for (a, b) in &hasse {
                let _ = write!(text, " {a}<{b}");
            }
            text.push('\n');
            for n in &named {
                let _ = writeln!(text, "{} = [{}]", n["topology"].as_str().unwrap_or(""), n["index"]);
            }
            Ok(Report::new(
                true,
                text,
                json!({
                    "category": category,
                    "count": lattice.len(),
                    "bottom": lattice.bottom(),
                    "top": lattice.top(),
                    "elements": lattice.iter().map(|j| render::topology(&j)).collect::<Vec<_>>(),
                    "hasse": hasse,
                    "named": named,
                }),
            ))
        }
        TopoCommand::Meet { left, right } => lattice_op(s, left, right, LatticeOp::Meet),
        TopoCommand::Join { left, right } => lattice_op(s, left, right, LatticeOp::Join),
        TopoCommand::Implies { left, right } => lattice_op(s, left, right, LatticeOp::Implication),
    }
}

fn lattice_op(s: &mut Session, left: &str, right: &str, op: LatticeOp) -> CliResult<Report> {
    let j = s.topology(left)?;
    let k = s.topology(right)?;
    same_category(&j, &k)?;
    let r = lattice_ops(&j, &k, op, &s.budget)?;
    let (sym, word) = match op {
        LatticeOp::Meet => ("/\\", "meet"),
        LatticeOp::Join => ("\\/", "join"),
        LatticeOp::Implication => ("=>", "implies"),
    };
    let mut text = format!("{left} {sym} {right}: {} covering sieves\n", r.cover_count());
    text.push_str(&render::topology_text(&r));
    Ok(Report::new(
        true,
        text,
        json!({
            "op": word,
            "left": left,
            "right": right,
            "result": render::topology(&r),
            "equals_left": r == j,
            "equals_right": r == k,
        }),
    ))
}

fn subtoposes(s: &mut Session, site: &str) -> CliResult<Report> {
    let j = s.site(site)?;
    let subs = enumerate_subtoposes(&j, &s.budget)?;
    let mut text = format!("{} subtoposes of {site}\n", subs.len());
    let mut list = Vec::new();
    for (i, k) in subs.iter().enumerate() {
        let identity = *k == j;
        let _ = writeln!(
            text,
            "[{i}]{}{}",
            if identity { " identity" } else { "" },
            if k.is_degenerate() { " degenerate" } else { "" }
        );
        text.push_str(&render::topology_text(k));
        let mut v = render::topology(k);
        v["identity"] = json!(identity);
        list.push(v);
    }
    Ok(Report::new(
        true,
        text,
        json!({ "site": site, "count": subs.len(), "subtoposes": list }),
    ))
}

fn sheaf_json(p: &SetFunctor, r: &SheafReport) -> Value {
    let cat = p.category();
    let violation = r.violation.as_ref().map(|v| {
        let o = v.object;
        let choice: Vec<Value> = v
            .family
            .choice
            .iter()
            .map(|&(f, x)| json!([cat.arrow_name(f), p.element_name(cat.source(f), x)]))
            .collect();
        json!({
            "kind": v.kind,
            "object": cat.object_name(o),
            "sieve": render::sieve(cat, &v.family.sieve),
            "family": choice,
            "amalgamations": v.amalgamations.iter().map(|&x| p.element_name(o, x)).collect::<Vec<_>>(),
        })
    });
    json!({
        "is_sheaf": r.is_sheaf,
        "violation": violation,
        "covers_checked": r.covers_checked,
        "families_checked": r.families_checked,
    })
}

fn sheaf_text(p: &SetFunctor, r: &SheafReport) -> String {
    let cat = p.category();
    match &r.violation {
        None => format!(
            "sheaf: yes ({} covers, {} matching families)\n",
            r.covers_checked, r.families_checked
        ),
        Some(v) => format!(
            "sheaf: no; cover {} has a matching family with {} amalgamation(s)\n",
            render::sieve_text(cat, &v.family.sieve),
            v.amalgamations.len()
        ),
    }
}

fn sheaf_check(s: &mut Session, site: &str, presheaf: &str) -> CliResult<Report> {
    let j = s.site(site)?;
    let p = s.presheaf(presheaf)?;
    s.same_category(&j, &p, presheaf)?;
    let r = check_sheaf(&j, &p, &s.budget)?;
    let mut data = sheaf_json(&p, &r);
    data["site"] = json!(site);
    data["presheaf"] = json!(presheaf);
    Ok(Report::new(r.is_sheaf, sheaf_text(&p, &r), data))
}

fn subterminals(s: &mut Session, site: &str) -> CliResult<Report> {
    let j = s.site(site)?;
    let cat = j.category().clone();
    let r = enumerate_subterminal_sheaves(&j)?;
    let lists: Vec<Vec<String>> = r.subterminals.iter().map(|u| render::objects(&cat, u)).collect();
    let mut text = format!("{} subterminal sheaves (two-valued: {})\n", r.count, mark(r.two_valued));
    for l in &lists {
        let _ = writeln!(text, "  inhabited at {{{}}}", l.join(", "));
    }
    Ok(Report::new(
        true,
        text,
        json!({ "site": site, "count": r.count, "two_valued": r.two_valued, "subterminals": lists }),
    ))
}

fn witness(cat: &FinCategory, w: &Option<SieveWitness>) -> Value {
    match w {
        None => Value::Null,
        Some(w) => json!({
            "object": cat.object_name(w.object),
            "sieve": render::sieve(cat, &w.sieve),
            "closure": render::sieve(cat, &w.result),
        }),
    }
}

fn invariants(s: &mut Session, site: &str) -> CliResult<Report> {
    let j = s.site(site)?;
    let cat = j.category().clone();
    let r = site_invariants(&j)?;
    let mut text = format!(
        "atomic: {} ({})\ntwo-valued: {} ({} subterminals)\nboolean: {}\nde morgan: {}\ndegenerate: {}\n",
        mark(r.atomic),
        r.atomic_reason,
        mark(r.two_valued),
        r.subterminal_count,
        mark(r.boolean_site),
        mark(r.de_morgan_site),
        mark(r.degenerate)
    );
    if let Some(w) = &r.boolean_witness {
        let _ = writeln!(
            text,
            "  not complemented: {} (closure of R or not R is {})",
            render::sieve_text(&cat, &w.sieve),
            render::sieve_text(&cat, &w.result)
        );
    }
    if let Some(w) = &r.de_morgan_witness {
        let _ = writeln!(text, "  de morgan fails at {}", render::sieve_text(&cat, &w.sieve));
    }
    Ok(Report::new(
        true,
        text,
        json!({
            "site": site,
            "atomic": r.atomic,
            "atomic_reason": r.atomic_reason,
            "subterminal_count": r.subterminal_count,
            "two_valued": r.two_valued,
            "boolean_site": r.boolean_site,
            "boolean_witness": witness(&cat, &r.boolean_witness),
            "de_morgan_site": r.de_morgan_site,
            "de_morgan_witness": witness(&cat, &r.de_morgan_witness),
            "degenerate": r.degenerate,
            "empty_covers_at": render::objects(&cat, &r.empty_covers_at),
        }),
    ))
}

fn object_invariants_cmd(s: &mut Session, site: &str, presheaf: &str) -> CliResult<Report> {
    let j = s.site(site)?;
    let p = s.presheaf(presheaf)?;
    s.same_category(&j, &p, presheaf)?;
    let sheaf = check_sheaf(&j, &p, &s.budget)?;
    if !sheaf.is_sheaf {
        let text = format!("{presheaf} is not a sheaf on {site}\n{}", sheaf_text(&p, &sheaf));
        return Ok(Report::new(
            false,
            text,
            json!({ "site": site, "presheaf": presheaf, "is_sheaf": false, "sheaf": sheaf_json(&p, &sheaf) }),
        ));
    }
    let r = object_invariants(&j, &p, &s.budget)?;
    let text = format!(
        "closed subobjects: {}\natom: {}\nindecomposable: {}\ncompact: {} ({})\n",
        r.closed_subobjects,
        mark(r.is_atom),
        mark(r.is_indecomposable),
        mark(r.is_compact),
        r.note
    );
    Ok(Report::new(
        true,
        text,
        json!({
            "site": site,
            "presheaf": presheaf,
            "is_sheaf": true,
            "closed_subobjects": r.closed_subobjects,
            "is_atom": r.is_atom,
            "is_indecomposable": r.is_indecomposable,
            "decomposition": r.decomposition,
            "is_compact": r.is_compact,
            "largest_needed_subfamily": r.largest_needed_subfamily,
            "note": r.note,
        }),
    ))
}

fn model_json(f: &SetFunctor, r: &ModelReport) -> Value {
    let cat = f.category();
    let flatness = r.flatness.as_ref().map(|fl| {
        json!({
            "nonempty": fl.nonempty,
            "span_completion": fl.span_completion,
            "span_failure": fl.span_failure.map(|w| json!({
                "a": cat.object_name(w.a), "x": f.element_name(w.a, w.x),
                "b": cat.object_name(w.b), "y": f.element_name(w.b, w.y),
            })),
            "equalizing": fl.equalizing,
            "equalizing_failure": fl.equalizing_failure.map(|w| json!({
                "f": cat.arrow_name(w.f), "g": cat.arrow_name(w.g),
                "x": f.element_name(cat.source(w.f), w.x),
            })),
            "flat": fl.flat(),
        })
    });
    let continuity = r.continuity.as_ref().map(|c| {
        json!({
            "continuous": c.continuous,
            "failure": c.failure.as_ref().map(|w| json!({
                "object": cat.object_name(w.object),
                "sieve": render::sieve(cat, &w.sieve),
                "element": f.element_name(w.object, w.element),
            })),
            "flatness_note": c.flatness_note,
        })
    });
    json!({
        "functoriality": render::functoriality(f, &r.functoriality),
        "flatness": flatness,
        "continuity": continuity,
        "is_model": r.is_model,
    })
}

fn model_check(s: &mut Session, site: &str, functor: &str) -> CliResult<Report> {
    let j = s.site(site)?;
    let f = s.functor(functor)?;
    s.same_category(&j, &f, functor)?;
    let r = check_model(&j, &f)?;
    let mut text = format!("functorial: {}\n", mark(r.functoriality.valid));
    if let Some(fl) = &r.flatness {
        let _ = writeln!(
            text,
            "nonempty: {}\nspan completion: {}\nequalizing: {}",
            mark(fl.nonempty),
            mark(fl.span_completion),
            mark(fl.equalizing)
        );
    }
    if let Some(c) = &r.continuity {
        let _ = writeln!(text, "continuous: {}", mark(c.continuous));
    }
    let _ = writeln!(text, "model: {}", mark(r.is_model));
    let mut data = model_json(&f, &r);
    data["site"] = json!(site);
    data["functor"] = json!(functor);
    Ok(Report::new(r.is_model, text, data))
}

fn model_enumerate(s: &mut Session, site: &str, max_card: usize) -> CliResult<Report> {
    let j = s.site(site)?;
    let models = enumerate_models(&j, max_card, &s.budget)?;
    let mut text = format!("{} model(s) with sets of size at most {max_card}\n", models.len());
    for (i, m) in models.iter().enumerate() {
        let _ = writeln!(text, "[{i}]");
        text.push_str(&render::functor_text(m));
    }
    Ok(Report::new(
        true,
        text,
        json!({
            "site": site,
            "max_card": max_card,
            "count": models.len(),
            "models": models.iter().map(render::functor).collect::<Vec<_>>(),
        }),
    ))
}

fn homogeneous(s: &mut Session, site: &str, model: &str, fp: &[String]) -> CliResult<Report> {
    let j = s.site(site)?;
    let mut load = |name: &str| -> CliResult<SetFunctor> {
        let f = s.functor(name)?;
        s.same_category(&j, &f, name)?;
        if !check_model(&j, &f)?.is_model {
            return Err(CliError::input(
                "not_a_model",
                format!("'{name}' is not a model of site '{site}'"),
            ));
        }
        Ok(f)
    };
    let m = load(model)?;
    let fps = fp.iter().map(|n| load(n)).collect::<CliResult<Vec<_>>>()?;
    let r = check_homogeneous(&m, &fps, &s.budget)?;
    let failure = r.failure.as_ref().map(|w| {
        let (a, b) = (&fps[w.a], &fps[w.b]);
        json!({
            "a": fp[w.a],
            "b": fp[w.b],
            "j": render::transformation(a, b, &w.j),
            "chi": render::transformation(a, &m, &w.chi),
        })
    });
    let mut text = format!(
        "homogeneous: {} ({} triangles checked)\n",
        mark(r.homogeneous),
        r.triangles_checked
    );
    if let Some(w) = &r.failure {
        let _ = writeln!(text, "  no lift for a map {} -> {} along {} -> {model}", fp[w.a], fp[w.b], fp[w.a]);
    }
    Ok(Report::new(
        r.homogeneous,
        text,
        json!({
            "site": site,
            "model": model,
            "fp": fp,
            "homogeneous": r.homogeneous,
            "failure": failure,
            "triangles_checked": r.triangles_checked,
        }),
    ))
}

/// Sieves `R` on `c` with `R => 0 = 0`, where `0` is the closure of the
/// empty sieve: the double-negation topology relative to `j`.
fn double_negation(j: &GrothendieckTopology) -> Result<GrothendieckTopology> {
    let u = j.universe();
    let cat = j.category();
    let mut dense = Vec::new();
    for id in 0..u.len() {
        let r = u.sieve(id);
        let zero = sheaf::closure(j, &Sieve::empty(r.base()))?;
        if r.implies(cat, &zero)? == zero {
            dense.push(r);
        }
    }
    GrothendieckTopology::from_sieves(u, dense)
}

fn demorgan(s: &mut Session, site: &str) -> CliResult<Report> {
    let j = s.site(site)?;
    let nn = double_negation(&j)?;
    if !validate_topology(&nn).is_valid() {
        return Err(CliError::input(
            "internal",
            "double-negation sieves do not form a topology",
        ));
    }
    let lattice = enumerate_topologies(j.universe(), &s.budget)?;
    let mut candidates = Vec::new();
    for k in lattice.iter() {
        if k.contains(&j) && nn.contains(&k) && site_invariants(&k)?.de_morgan_site {
            candidates.push(k);
        }
    }
    let least = candidates
        .iter()
        .find(|k| candidates.iter().all(|o| o.contains(k)))
        .cloned();
    let mut text = format!(
        "experimental: {} De Morgan topologies between {site} and its double-negation topology\n",
        candidates.len()
    );
    match &least {
        Some(k) => {
            let _ = writeln!(text, "least:");
            text.push_str(&render::topology_text(k));
        }
        None => text.push_str("no least candidate\n"),
    }
    Ok(Report::new(
        true,
        text,
        json!({
            "site": site,
            "experimental": true,
            "double_negation": render::topology(&nn),
            "candidates": candidates.len(),
            "de_morganization": least.as_ref().map(render::topology),
        }),
    ))
}

fn class(name: &str) -> CliResult<Box<dyn AmalgamationClass>> {
    fraisse::class_by_name(name).ok_or_else(|| {
        CliError::input(
            "unknown_class",
            format!("unknown class '{name}' (expected linord, graph, initial-segment-linord or bounded-linord)"),
        )
    })
}

fn fraisse_command(f: &FraisseCommand, budget: &Budget) -> CliResult<Report> {
    match f {
        FraisseCommand::Verify { class: name, size } => {
            let c = class(name)?;
            let n = size.unwrap_or_else(|| c.default_bound());
            let r = fraisse::verify_class_properties(c.as_ref(), n, budget)?;
            let text = format!(
                "class {name} up to size {n}\namalgamation: {} ({} spans)\njoint embedding: {} ({} pairs)\n",
                mark(r.amalgamation),
                r.spans_checked,
                mark(r.joint_embedding),
                r.pairs_checked
            );
            let data = serde_json::to_value(&r).expect("report serializes");
            Ok(Report::new(r.holds(), text, data))
        }
        FraisseCommand::Limit { chain, log } => {
            let c = class(&chain.class)?;
            let l = fraisse::build_limit(c.as_ref(), chain.steps, chain.seed, budget)?;
            let discharged = l.tasks.iter().filter(|t| t.discharged.is_some()).count();
            let extended = l.tasks.iter().filter(|t| t.extended).count();
            let text = format!(
                "class {} seed {}: {} steps, {} elements\ntasks: {} discharged ({} by extension), {} pending\n",
                chain.class,
                chain.seed,
                l.steps(),
                l.len(),
                discharged,
                extended,
                l.pending
            );
            let mut data = json!({
                "class": chain.class,
                "steps": l.steps(),
                "seed": chain.seed,
                "elements": l.len(),
                "sizes": l.sizes,
                "born": l.born,
                "structure": l.structure,
                "tasks_discharged": discharged,
                "tasks_extended": extended,
                "pending": l.pending,
            });
            if *log {
                data["chain"] = serde_json::to_value(&l).expect("chain serializes");
            }
            Ok(Report::new(true, text, data))
        }
        FraisseCommand::Extension { chain, depth, size } => {
            let c = class(&chain.class)?;
            let l = fraisse::build_limit(c.as_ref(), chain.steps, chain.seed, budget)?;
            let r = fraisse::check_limit_extension(c.as_ref(), &l, *depth, *size)?;
            let mut text = format!(
                "class {} seed {}: extension property at depth {depth}, size {size}: {} ({} tasks checked)\n",
                chain.class,
                chain.seed,
                if r.passed { "pass" } else { "fail" },
                r.checked
            );
            for fl in &r.failures {
                let _ = writeln!(text, "  no extension of {:?} over {:?}", fl.b, fl.s);
            }
            let mut data = serde_json::to_value(&r).expect("report serializes");
            data["class"] = json!(chain.class);
            data["steps"] = json!(chain.steps);
            data["seed"] = json!(chain.seed);
            Ok(Report::new(r.passed, text, data))
        }
        FraisseCommand::Iso { chain, seed2, k } => {
            let c = class(&chain.class)?;
            let l1 = fraisse::build_limit(c.as_ref(), chain.steps, chain.seed, budget)?;
            let l2 = fraisse::build_limit(c.as_ref(), chain.steps, *seed2, budget)?;
            let iso = fraisse::back_and_forth(&l1, &l2, *k, fraisse::DEFAULT_NODE_LIMIT)?;
            let valid = fraisse::is_partial_iso(&l1.structure, &l2.structure, &iso.pairs);
            let mut text = format!(
                "class {}: seeds {} and {seed2}, first {k} elements, {} pairs, {} search nodes\n",
                chain.class,
                chain.seed,
                iso.pairs.len(),
                iso.nodes
            );
            for (x, y) in &iso.pairs {
                let _ = writeln!(text, "  {x:>4} -> {y}");
            }
            Ok(Report::new(
                valid,
                text,
                json!({
                    "class": chain.class,
                    "steps": chain.steps,
                    "seed": chain.seed,
                    "seed2": seed2,
                    "k": k,
                    "pairs": iso.pairs,
                    "nodes": iso.nodes,
                    "verified": valid,
                }),
            ))
        }
    }
}
