//! The plain-text spec format: INI-like `[kind name]` sections of
//! `key = value` lines, cross-referenced by name.
//!
//! ```text
//! # comments start with '#'
//! [group A]
//! elements = e a
//! table = e a
//! table = a e
//!
//! [group_shift full]
//! group = A
//! edges = e->e, e->a
//! edges = a->e, a->a
//! ```
//!
//! Repeated keys (`table`, `edges`, `map`, `class`, `rule`, `rank`, `rows`)
//! accumulate. List items are separated by commas outside parentheses.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::group::{FiniteGroup, GroupAutomorphism, Subgroup};
use crate::group_shift::{code_finite_system, validate_group_shift, CodedSystem, GroupShiftModel};
use crate::shift::VertexShift;
use crate::wandering::affine as affine_text;
use crate::wandering::{Direction, GeneratedGraph, MatrixSystem, RankCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecErrorKind {
    Syntax,
    UnresolvedReference,
    SectionInvalid,
}

impl fmt::Display for SpecErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpecErrorKind::Syntax => "syntax error",
            SpecErrorKind::UnresolvedReference => "unresolved reference",
            SpecErrorKind::SectionInvalid => "invalid section",
        })
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}: {message}")]
pub struct SpecError {
    pub kind: SpecErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub type Result<T, E = SpecError> = std::result::Result<T, E>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SectionKind {
    Group,
    Automorphism,
    Subgroup,
    Shift,
    GroupShift,
    CodedSystem,
    GeneratedGraph,
    Matrix,
}

impl SectionKind {
    const ALL: [SectionKind; 8] = [
        SectionKind::Group,
        SectionKind::Automorphism,
        SectionKind::Subgroup,
        SectionKind::Shift,
        SectionKind::GroupShift,
        SectionKind::CodedSystem,
        SectionKind::GeneratedGraph,
        SectionKind::Matrix,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            SectionKind::Group => "group",
            SectionKind::Automorphism => "automorphism",
            SectionKind::Subgroup => "subgroup",
            SectionKind::Shift => "shift",
            SectionKind::GroupShift => "group_shift",
            SectionKind::CodedSystem => "coded_system",
            SectionKind::GeneratedGraph => "generated_graph",
            SectionKind::Matrix => "matrix",
        }
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            SectionKind::Group => &["elements", "table"],
            SectionKind::Automorphism => &["group", "map"],
            SectionKind::Subgroup => &["group", "members"],
            SectionKind::Shift => &["alphabet", "edges"],
            SectionKind::GroupShift => &["group", "edges"],
            SectionKind::CodedSystem => &["group", "automorphism", "subgroup"],
            SectionKind::GeneratedGraph => &["class", "rule", "base", "fixed", "rank", "direction"],
            SectionKind::Matrix => &["rows"],
        }
    }

    fn repeatable(key: &str) -> bool {
        matches!(key, "table" | "edges" | "map" | "class" | "rule" | "rank" | "rows" | "fixed")
    }
}

/// A validated section payload.
#[derive(Clone, Debug)]
pub enum Item {
    Group(FiniteGroup),
    Automorphism {
        group: String,
        map: GroupAutomorphism,
    },
    Subgroup {
        group: String,
        subgroup: Subgroup,
    },
    Shift(VertexShift),
    GroupShift {
        group: String,
        model: GroupShiftModel,
    },
    CodedSystem {
        group: String,
        automorphism: String,
        subgroup: String,
        system: CodedSystem,
    },
    GeneratedGraph {
        graph: GeneratedGraph,
        certificate: Option<RankCertificate>,
    },
    Matrix(MatrixSystem),
}

impl Item {
    pub fn kind(&self) -> SectionKind {
        match self {
            Item::Group(_) => SectionKind::Group,
            Item::Automorphism { .. } => SectionKind::Automorphism,
            Item::Subgroup { .. } => SectionKind::Subgroup,
            Item::Shift(_) => SectionKind::Shift,
            Item::GroupShift { .. } => SectionKind::GroupShift,
            Item::CodedSystem { .. } => SectionKind::CodedSystem,
            Item::GeneratedGraph { .. } => SectionKind::GeneratedGraph,
            Item::Matrix(_) => SectionKind::Matrix,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Section {
    pub name: String,
    pub item: Item,
}

#[derive(Clone, Debug, Default)]
pub struct SpecFile {
    pub sections: Vec<Section>,
}

impl SpecFile {
    pub fn get(&self, name: &str) -> Option<&Item> {
        self.sections.iter().find(|s| s.name == name).map(|s| &s.item)
    }

    /// Appends a section, replacing none; names must be unique.
    pub fn push(&mut self, name: impl Into<String>, item: Item) {
        let name = name.into();
        assert!(self.get(&name).is_none(), "duplicate section {name}");
        self.sections.push(Section { name, item });
    }

    /// The last section of a kind, which drives the CLI subcommands.
    pub fn last_of(&self, kind: SectionKind) -> Option<&Section> {
        self.sections.iter().rev().find(|s| s.item.kind() == kind)
    }

    pub fn group(&self, name: &str) -> Option<&FiniteGroup> {
        match self.get(name) {
            Some(Item::Group(g)) => Some(g),
            _ => None,
        }
    }

    /// Canonical text; `parse_spec(render())` reproduces it exactly.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("[{} {}]\n", s.item.kind().keyword(), s.name));
            let mut kv = |k: &str, v: String| out.push_str(&format!("{k} = {v}\n"));
            match &s.item {
                Item::Group(g) => {
                    kv("elements", g.names().join(" "));
                    for row in g.table_rows() {
                        kv("table", names_of(g.names(), &row).join(" "));
                    }
                }
                Item::Automorphism { group, map } => {
                    let g = self.group(group).expect("validated reference");
                    kv("group", group.clone());
                    let pairs: Vec<String> = (0..g.order())
                        .map(|a| format!("{}->{}", g.name(a), g.name(map.apply(a))))
                        .collect();
                    kv("map", pairs.join(", "));
                }
                Item::Subgroup { group, subgroup } => {
                    let g = self.group(group).expect("validated reference");
                    kv("group", group.clone());
                    kv("members", names_of(g.names(), subgroup.members()).join(", "));
                }
                Item::Shift(x) => {
                    kv("alphabet", x.names().join(" "));
                    for a in 0..x.len() {
                        kv("edges", edge_list(x.names(), a, x.successors(a)));
                    }
                }
                Item::GroupShift { group, model } => {
                    kv("group", group.clone());
                    let x = model.shift();
                    for a in 0..x.len() {
                        kv("edges", edge_list(x.names(), a, x.successors(a)));
                    }
                }
                Item::CodedSystem {
                    group,
                    automorphism,
                    subgroup,
                    ..
                } => {
                    kv("group", group.clone());
                    kv("automorphism", automorphism.clone());
                    kv("subgroup", subgroup.clone());
                }
                Item::GeneratedGraph { graph, certificate } => {
                    for c in graph.classes() {
                        kv("class", graph.render_class(c));
                    }
                    for r in graph.rules() {
                        kv("rule", graph.render_rule(r));
                    }
                    kv("base", graph.display(graph.base()));
                    if !graph.fixed().is_empty() {
                        let f: Vec<String> = graph.fixed().iter().map(|s| graph.display(s)).collect();
                        kv("fixed", f.join(", "));
                    }
                    if let Some(cert) = certificate {
                        for (c, form) in graph.classes().iter().zip(&cert.ranks) {
                            kv("rank", format!("{}: {}", c.name, form.render(&c.vars)));
                        }
                        kv("direction", cert.direction.name().to_string());
                    }
                }
                Item::Matrix(m) => kv("rows", m.render()),
            }
        }
        out
    }
}

fn names_of(names: &[String], idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| names[i].clone()).collect()
}

fn edge_list(names: &[String], a: usize, succ: &[usize]) -> String {
    succ.iter()
        .map(|&b| format!("{}->{}", names[a], names[b]))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Splits at `sep` outside parentheses, trimming and dropping empty items.
pub(crate) fn split_top(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(text[start..i].trim());
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out.retain(|s| !s.is_empty());
    out
}

struct Entry {
    key: String,
    value: String,
    line: usize,
    column: usize,
}

struct RawSection {
    kind: SectionKind,
    name: String,
    line: usize,
    entries: Vec<Entry>,
}

impl RawSection {
    fn all(&self, key: &str) -> impl Iterator<Item = &Entry> {
        let key = key.to_string();
        self.entries.iter().filter(move |e| e.key == key)
    }

    fn one(&self, key: &str) -> Result<&Entry> {
        self.all(key).next().ok_or_else(|| SpecError {
            kind: SpecErrorKind::SectionInvalid,
            line: self.line,
            column: 1,
            message: format!("[{} {}] is missing `{key}`", self.kind.keyword(), self.name),
        })
    }
}

fn err(kind: SpecErrorKind, e: &Entry, message: impl Into<String>) -> SpecError {
    SpecError {
        kind,
        line: e.line,
        column: e.column,
        message: message.into(),
    }
}

fn invalid(e: &Entry, message: impl fmt::Display) -> SpecError {
    err(SpecErrorKind::SectionInvalid, e, message.to_string())
}

fn lex(text: &str) -> Result<Vec<RawSection>> {
    let mut out: Vec<RawSection> = Vec::new();
    let syntax = |line: usize, column: usize, message: String| SpecError {
        kind: SpecErrorKind::Syntax,
        line,
        column,
        message,
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        let indent = raw.len() - raw.trim_start().len() + 1;
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(head) = trimmed.strip_prefix('[') {
            let head = head
                .strip_suffix(']')
                .ok_or_else(|| syntax(line, indent, "missing `]`".into()))?;
            let mut parts = head.split_whitespace();
            let (Some(kw), Some(name), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(syntax(line, indent, "expected `[kind name]`".into()));
            };
            let kind = SectionKind::ALL
                .into_iter()
                .find(|k| k.keyword() == kw)
                .ok_or_else(|| syntax(line, indent + 1, format!("unknown section kind `{kw}`")))?;
            if out.iter().any(|s| s.name == name) {
                return Err(syntax(line, indent, format!("duplicate section name `{name}`")));
            }
            out.push(RawSection {
                kind,
                name: name.to_string(),
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let Some(section) = out.last_mut() else {
            return Err(syntax(line, indent, "entry outside of any section".into()));
        };
        let (key, value) = trimmed
            .split_once('=')
            .ok_or_else(|| syntax(line, indent, "expected `key = value`".into()))?;
        let key = key.trim();
        if !section.kind.keys().contains(&key) {
            return Err(syntax(
                line,
                indent,
                format!("unknown key `{key}` in a {} section", section.kind.keyword()),
            ));
        }
        if !SectionKind::repeatable(key) && section.entries.iter().any(|e| e.key == key) {
            return Err(syntax(line, indent, format!("repeated key `{key}`")));
        }
        let column = indent + trimmed.find('=').unwrap_or(0) + 1 + (value.len() - value.trim_start().len());
        section.entries.push(Entry {
            key: key.to_string(),
            value: value.trim().to_string(),
            line,
            column,
        });
    }
    if out.is_empty() {
        return Err(syntax(1, 1, "no sections".into()));
    }
    Ok(out)
}

fn parse_pair<'a>(e: &Entry, item: &'a str) -> Result<(&'a str, &'a str)> {
    item.split_once("->")
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| err(SpecErrorKind::Syntax, e, format!("expected `a->b`, got `{item}`")))
}

fn lookup(names: &HashMap<&str, usize>, e: &Entry, name: &str) -> Result<usize> {
    names
        .get(name)
        .copied()
        .ok_or_else(|| invalid(e, format!("unknown element `{name}`")))
}

/// Parses and cross-validates a spec. Sections may reference sections
/// that appear later in the file.
pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let raw = lex(text)?;
    let mut built: BTreeMap<usize, Item> = BTreeMap::new();
    let order: Vec<usize> = {
        let mut idx: Vec<usize> = (0..raw.len()).collect();
        idx.sort_by_key(|&i| raw[i].kind);
        idx
    };
    for i in order {
        let item = build(&raw[i], &raw, &built)?;
        built.insert(i, item);
    }
    Ok(SpecFile {
        sections: raw
            .into_iter()
            .zip(built.into_values())
            .map(|(r, item)| Section { name: r.name, item })
            .collect(),
    })
}

fn reference<'a>(
    e: &Entry,
    kind: SectionKind,
    raw: &[RawSection],
    built: &'a BTreeMap<usize, Item>,
) -> Result<&'a Item> {
    let pos = raw.iter().position(|s| s.name == e.value && s.kind == kind).ok_or_else(|| {
        err(
            SpecErrorKind::UnresolvedReference,
            e,
            format!("no {} section named `{}`", kind.keyword(), e.value),
        )
    })?;
    Ok(built.get(&pos).expect("sections are built in dependency order"))
}

fn referenced_group<'a>(e: &Entry, raw: &[RawSection], built: &'a BTreeMap<usize, Item>) -> Result<&'a FiniteGroup> {
    match reference(e, SectionKind::Group, raw, built)? {
        Item::Group(g) => Ok(g),
        _ => unreachable!("kind checked"),
    }
}

fn build(s: &RawSection, raw: &[RawSection], built: &BTreeMap<usize, Item>) -> Result<Item> {
    match s.kind {
        SectionKind::Group => {
            let el = s.one("elements")?;
            let names: Vec<String> = el.value.split_whitespace().map(str::to_string).collect();
            let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
            let mut table = Vec::new();
            for e in s.all("table") {
                for row in e.value.split(';').map(str::trim).filter(|r| !r.is_empty()) {
                    table.push(
                        row.split_whitespace()
                            .map(|n| lookup(&index, e, n))
                            .collect::<Result<Vec<usize>>>()?,
                    );
                }
            }
            FiniteGroup::new(names, table).map(Item::Group).map_err(|x| invalid(el, x))
        }
        SectionKind::Automorphism => {
            let ge = s.one("group")?;
            let g = referenced_group(ge, raw, built)?;
            let index: HashMap<&str, usize> = g.names().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
            let mut image: Vec<Option<usize>> = vec![None; g.order()];
            let me = s.one("map")?;
            for e in s.all("map") {
                for item in split_top(&e.value, ',') {
                    let (a, b) = parse_pair(e, item)?;
                    let (a, b) = (lookup(&index, e, a)?, lookup(&index, e, b)?);
                    if image[a].replace(b).is_some_and(|old| old != b) {
                        return Err(invalid(e, format!("`{}` is mapped twice", g.name(a))));
                    }
                }
            }
            let image: Vec<usize> = image.iter().enumerate().map(|(a, b)| b.unwrap_or(a)).collect();
            let map = GroupAutomorphism::new(g, image).map_err(|x| invalid(me, x))?;
            Ok(Item::Automorphism {
                group: ge.value.clone(),
                map,
            })
        }
        SectionKind::Subgroup => {
            let ge = s.one("group")?;
            let g = referenced_group(ge, raw, built)?;
            let me = s.one("members")?;
            let index: HashMap<&str, usize> = g.names().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
            let members = split_top(&me.value, ',')
                .into_iter()
                .map(|n| lookup(&index, me, n))
                .collect::<Result<Vec<usize>>>()?;
            let subgroup = Subgroup::from_members(g, members).map_err(|x| invalid(me, x))?;
            Ok(Item::Subgroup {
                group: ge.value.clone(),
                subgroup,
            })
        }
        SectionKind::Shift => {
            let al = s.one("alphabet")?;
            let names: Vec<String> = al.value.split_whitespace().map(str::to_string).collect();
            let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
            let mut edges = Vec::new();
            for e in s.all("edges") {
                for item in split_top(&e.value, ',') {
                    let (a, b) = parse_pair(e, item)?;
                    edges.push((lookup(&index, e, a)?, lookup(&index, e, b)?));
                }
            }
            VertexShift::new(names, edges).map(Item::Shift).map_err(|x| invalid(al, x))
        }
        SectionKind::GroupShift => {
            let ge = s.one("group")?;
            let g = referenced_group(ge, raw, built)?;
            let index: HashMap<&str, usize> = g.names().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
            let mut edges = Vec::new();
            for e in s.all("edges") {
                for item in split_top(&e.value, ',') {
                    let (a, b) = parse_pair(e, item)?;
                    edges.push((lookup(&index, e, a)?, lookup(&index, e, b)?));
                }
            }
            let first = s.one("edges")?;
            let model = validate_group_shift(g.clone(), edges).map_err(|x| invalid(first, x))?;
            Ok(Item::GroupShift {
                group: ge.value.clone(),
                model,
            })
        }
        SectionKind::CodedSystem => {
            let ge = s.one("group")?;
            let g = referenced_group(ge, raw, built)?;
            let ae = s.one("automorphism")?;
            let he = s.one("subgroup")?;
            let Item::Automorphism { group: ag, map } = reference(ae, SectionKind::Automorphism, raw, built)? else {
                unreachable!("kind checked")
            };
            let Item::Subgroup { group: hg, subgroup } = reference(he, SectionKind::Subgroup, raw, built)? else {
                unreachable!("kind checked")
            };
            for (e, other) in [(ae, ag), (he, hg)] {
                if *other != ge.value {
                    return Err(invalid(e, format!("`{}` belongs to group `{other}`, not `{}`", e.value, ge.value)));
                }
            }
            let system = code_finite_system(g, map, subgroup).map_err(|x| invalid(ge, x))?;
            Ok(Item::CodedSystem {
                group: ge.value.clone(),
                automorphism: ae.value.clone(),
                subgroup: he.value.clone(),
                system,
            })
        }
        SectionKind::GeneratedGraph => build_graph(s),
        SectionKind::Matrix => {
            let re = s.one("rows")?;
            let text: Vec<&str> = s.all("rows").map(|e| e.value.as_str()).collect();
            MatrixSystem::parse(&s.name, &text.join(";"))
                .map(Item::Matrix)
                .map_err(|x| invalid(re, x))
        }
    }
}

fn build_graph(s: &RawSection) -> Result<Item> {
    let mut classes = Vec::new();
    for e in s.all("class") {
        classes.push(affine_text::parse_class(&e.value).map_err(|x| invalid(e, x))?);
    }
    let mut rules = Vec::new();
    for e in s.all("rule") {
        rules.push(affine_text::parse_rule(&e.value, &classes).map_err(|x| invalid(e, x))?);
    }
    let be = s.one("base")?;
    let base = affine_text::parse_state(&be.value, &classes).map_err(|x| invalid(be, x))?;
    let mut fixed = Vec::new();
    for e in s.all("fixed") {
        for item in split_top(&e.value, ',') {
            fixed.push(affine_text::parse_state(item, &classes).map_err(|x| invalid(e, x))?);
        }
    }
    let graph = GeneratedGraph::new(s.name.clone(), classes, rules, base, fixed).map_err(|x| invalid(be, x))?;
    let ranks: Vec<&Entry> = s.all("rank").collect();
    let certificate = if ranks.is_empty() {
        None
    } else {
        let mut forms: Vec<Option<_>> = vec![None; graph.classes().len()];
        for e in &ranks {
            let (c, f) = affine_text::parse_rank_entry(&e.value, graph.classes()).map_err(|x| invalid(e, x))?;
            if forms[c].replace(f).is_some() {
                return Err(invalid(e, "class ranked twice"));
            }
        }
        let de = s.one("direction")?;
        let direction = Direction::parse(&de.value)
            .ok_or_else(|| invalid(de, "direction must be `increasing` or `decreasing`"))?;
        let ranks = forms
            .into_iter()
            .zip(graph.classes())
            .map(|(f, c)| f.ok_or_else(|| invalid(ranks[0], format!("class `{}` has no rank", c.name))))
            .collect::<Result<Vec<_>>>()?;
        Some(RankCertificate {
            ranks,
            direction,
            exceptions: graph.fixed().to_vec(),
        })
    };
    Ok(Item::GeneratedGraph { graph, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TINY: &str = "\
# the group of order two
[group A]
elements = e a
table = e a
table = a e

[group_shift full]
group = A
edges = e->e, e->a
edges = a->e, a->a
";

    #[test]
    fn parses_and_renders_canonically() {
        let s = parse_spec(TINY).unwrap();
        assert_eq!(s.sections.len(), 2);
        let Some(Item::GroupShift { model, .. }) = s.get("full") else {
            panic!()
        };
        assert_eq!(model.follower_e().order(), 2);
        let text = s.render();
        assert_eq!(text, TINY.trim_start_matches("# the group of order two\n"));
        assert_eq!(parse_spec(&text).unwrap().render(), text);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_spec("").unwrap_err();
        assert_eq!(e.kind, SpecErrorKind::Syntax);
        let e = parse_spec("# nothing\n\n").unwrap_err();
        assert_eq!(e.kind, SpecErrorKind::Syntax);
        let e = parse_spec("[group_shift s]\ngroup = B\nedges = e->e\n").unwrap_err();
        assert_eq!((e.kind, e.line, e.column), (SpecErrorKind::UnresolvedReference, 2, 9));
        let e = parse_spec("[group A]\nelements = e a\ntable = e a\ntable = a a\n").unwrap_err();
        assert_eq!((e.kind, e.line), (SpecErrorKind::SectionInvalid, 2));
        let e = parse_spec("[group A]\ncolour = red\n").unwrap_err();
        assert_eq!((e.kind, e.line, e.column), (SpecErrorKind::Syntax, 2, 1));
        let e = parse_spec("key = 1\n").unwrap_err();
        assert_eq!(e.kind, SpecErrorKind::Syntax);
        let e = parse_spec("[group A]\nelements = e\ntable = e\n[group A]\nelements = e\ntable = e\n").unwrap_err();
        assert_eq!((e.kind, e.line), (SpecErrorKind::Syntax, 4));
    }

    #[test]
    fn forward_references_resolve() {
        let text = "[group_shift s]\ngroup = A\nedges = e->e, a->a\n\n[group A]\nelements = e a\ntable = e a; a e\n";
        let s = parse_spec(text).unwrap();
        assert_eq!(s.sections[0].name, "s");
        let Some(Item::GroupShift { model, .. }) = s.get("s") else {
            panic!()
        };
        assert_eq!(model.shift().edge_count(), 2);
    }

    #[test]
    fn top_level_split_respects_parentheses() {
        assert_eq!(split_top("(0,1)->(1,1), (2,0)->(0,0)", ','), vec!["(0,1)->(1,1)", "(2,0)->(0,0)"]);
        assert_eq!(split_top(" a ,, b ", ','), vec!["a", "b"]);
    }

    #[test]
    fn generated_graph_section() {
        let text = "\
[generated_graph g]
class = Q(N) when N >= 0
rule = Q(3*N) -> Q(N) when N >= 0
rule = Q(3*N + 1) -> Q(N) when N >= 0
rule = Q(3*N + 2) -> Q(N) when N >= 0
base = Q(0)
fixed = Q(0)
rank = Q: N
direction = decreasing
";
        let s = parse_spec(text).unwrap();
        assert_eq!(s.render(), text);
        let Some(Item::GeneratedGraph { graph, certificate }) = s.get("g") else {
            panic!()
        };
        assert_eq!(graph.rules(), crate::wandering::q3_graph().rules());
        assert_eq!(certificate.as_ref().unwrap().direction, Direction::Decreasing);
        let bad = text.replace("rank = Q: N\n", "rank = Q: M\n");
        assert_eq!(parse_spec(&bad).unwrap_err().line, 8);
    }
}
