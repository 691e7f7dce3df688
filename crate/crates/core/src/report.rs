//! Subcommand dispatch over a spec, with human and line-oriented machine
//! reports.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use sha2::{Digest, Sha256};

use crate::decompose::{decompose, verify_certificate, Limits, Step};
use crate::dot::{dot_counts, shift_dot, truncation_dot};
use crate::gallery::{describe, gallery_spec, GALLERY};
use crate::group::automorphism_order;
use crate::group_shift::{check_follower_factorization, check_product_structure, GroupShiftModel};
use crate::shift::{block_entropy, determinism, VertexShift};
use crate::spec_file::{parse_spec, Item, SectionKind, SpecFile};
use crate::wandering::{
    classify_blocks, dual_entropy, matrix_no_periodics, quotient_is_wandering, radius_stable, totally_wandering, Block,
    GeneratedGraph, MatrixSystem, RankCertificate, Verdict,
};
use crate::{Error, Result};

pub const DEFAULT_RADIUS: u64 = 8;
pub const DEFAULT_VERIFY_DEPTH: usize = 8;
/// Path lengths for graph growth counts.
pub const DEFAULT_GRAPH_NMAX: usize = 12;
/// Word lengths for block entropy of finite shifts.
pub const DEFAULT_SHIFT_NMAX: usize = 8;
/// Periods checked for matrix systems.
pub const DEFAULT_MATRIX_NMAX: usize = 50;
/// At most this many state names are listed per block.
const LIST_LIMIT: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Decompose,
    Classify,
    Entropy,
    ExportDot,
    Examples,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Validate,
        Command::Decompose,
        Command::Classify,
        Command::Entropy,
        Command::ExportDot,
        Command::Examples,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Decompose => "decompose",
            Command::Classify => "classify",
            Command::Entropy => "entropy",
            Command::ExportDot => "export-dot",
            Command::Examples => "examples",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Human,
    Machine,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub radius: Option<u64>,
    pub n_max: Option<usize>,
    pub verify_depth: Option<usize>,
    /// Section to operate on; defaults to the last applicable one.
    pub target: Option<String>,
    /// Adds wall-clock time, which makes reports differ between runs.
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    pub operation: Command,
    pub input_sha256: String,
    pub target: String,
    /// Ordered payload.
    pub entries: Vec<(String, String)>,
    /// Prose for the human format only.
    pub notes: Vec<String>,
    pub status: Status,
    pub elapsed: Option<Duration>,
    /// DOT text, for `export-dot`.
    pub dot: Option<String>,
}

impl RunReport {
    fn new(operation: Command, input: &str, target: impl Into<String>) -> Self {
        Self {
            operation,
            input_sha256: sha256_hex(input.as_bytes()),
            target: target.into(),
            entries: Vec::new(),
            notes: Vec::new(),
            status: Status::Pass,
            elapsed: None,
            dot: None,
        }
    }

    fn put(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    fn check(&mut self, key: &str, ok: bool) {
        self.put(key, if ok { "ok" } else { "failed" });
        if !ok {
            self.status = Status::Fail;
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Machine => {
                writeln!(out, "operation={}", self.operation.name()).unwrap();
                writeln!(out, "target={}", self.target).unwrap();
                writeln!(out, "input_sha256={}", self.input_sha256).unwrap();
                for (k, v) in &self.entries {
                    writeln!(out, "{k}={v}").unwrap();
                }
                if let Some(t) = self.elapsed {
                    writeln!(out, "elapsed_ms={}", t.as_millis()).unwrap();
                }
                writeln!(out, "status={}", self.status.as_str()).unwrap();
            }
            Format::Human => {
                writeln!(out, "{} {}", self.operation.name(), self.target).unwrap();
                let width = self
                    .entries
                    .iter()
                    .map(|(k, _)| k.len())
                    .chain(["input sha256".len()])
                    .max()
                    .unwrap_or(0);
                writeln!(out, "  {:width$}  {}", "input sha256", self.input_sha256).unwrap();
                for (k, v) in &self.entries {
                    writeln!(out, "  {k:width$}  {v}").unwrap();
                }
                if let Some(t) = self.elapsed {
                    writeln!(out, "  {:width$}  {:.3} s", "elapsed", t.as_secs_f64()).unwrap();
                }
                for n in &self.notes {
                    writeln!(out, "\n{n}").unwrap();
                }
                writeln!(out, "\nverdict: {}", self.status.as_str()).unwrap();
            }
        }
        out
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn fmt_f(x: f64) -> String {
    format!("{x:.12}")
}

/// Parses `text` and runs `command` on it.
pub fn run(command: Command, text: &str, opts: &RunOptions) -> Result<RunReport> {
    let started = Instant::now();
    let mut report = if command == Command::Examples {
        run_examples(opts)?
    } else {
        let spec = parse_spec(text)?;
        match command {
            Command::Validate => run_validate(&spec, text, opts)?,
            Command::Decompose => run_decompose(&spec, text, opts)?,
            Command::Classify => run_classify(&spec, text, opts)?,
            Command::Entropy => run_entropy(&spec, text, opts)?,
            Command::ExportDot => run_export_dot(&spec, text, opts)?,
            Command::Examples => unreachable!("handled above"),
        }
    };
    if opts.timing {
        report.elapsed = Some(started.elapsed());
    }
    Ok(report)
}

/// Section to operate on: the named one, else the last of an accepted kind.
fn pick<'a>(spec: &'a SpecFile, command: Command, kinds: &[SectionKind], opts: &RunOptions) -> Result<(&'a str, &'a Item)> {
    let no_target = || Error::NoTarget {
        command: command.name().into(),
        target: opts.target.clone(),
    };
    let section = match &opts.target {
        Some(t) => spec.sections.iter().find(|s| &s.name == t).ok_or_else(no_target)?,
        None => spec
            .sections
            .iter()
            .rev()
            .find(|s| kinds.contains(&s.item.kind()))
            .ok_or_else(no_target)?,
    };
    if !kinds.contains(&section.item.kind()) {
        return Err(Error::WrongKind {
            command: command.name().into(),
            name: section.name.clone(),
            kind: section.item.kind().keyword(),
        });
    }
    Ok((&section.name, &section.item))
}

fn graph_of(item: &Item) -> (&GeneratedGraph, Option<&RankCertificate>) {
    match item {
        Item::GeneratedGraph { graph, certificate } => (graph, certificate.as_ref()),
        _ => unreachable!("kind checked by pick"),
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::TotallyWandering {
            truncation_states,
            excepted_edges,
        } => format!("yes (window {truncation_states} states, {excepted_edges} excepted edges)"),
        Verdict::Counterexample { cycle } => format!("no (cycle {})", cycle.join(" -> ")),
    }
}

fn run_validate(spec: &SpecFile, text: &str, opts: &RunOptions) -> Result<RunReport> {
    let mut r = RunReport::new(Command::Validate, text, opts.target.clone().unwrap_or_else(|| "all".into()));
    r.put("sections", spec.sections.len());
    for s in &spec.sections {
        if opts.target.as_ref().is_some_and(|t| *t != s.name) {
            continue;
        }
        let key = format!("{}.{}", s.item.kind().keyword(), s.name);
        match &s.item {
            Item::Group(g) => {
                let abelian = (0..g.order()).all(|a| (0..g.order()).all(|b| g.mul(a, b) == g.mul(b, a)));
                r.put(key, format!("order {}, {}", g.order(), if abelian { "abelian" } else { "non-abelian" }));
            }
            Item::Automorphism { map, .. } => r.put(key, format!("order {}", automorphism_order(map))),
            Item::Subgroup { subgroup, .. } => r.put(
                key,
                format!("order {}, index {}", subgroup.order(), subgroup.parent_order() / subgroup.order()),
            ),
            Item::Shift(x) => {
                let d = determinism(x);
                r.put(
                    key,
                    format!(
                        "{} symbols, {} edges, {}",
                        x.len(),
                        x.edge_count(),
                        if d.is_permutation() { "permutation" } else { "not a permutation" }
                    ),
                );
            }
            Item::GroupShift { model, .. } => {
                r.put(
                    &key,
                    format!(
                        "|A|={}, {} edges, |f(e)|={}, |p(e)|={}, |k|={}",
                        model.group().order(),
                        model.shift().edge_count(),
                        model.follower_e().order(),
                        model.predecessor_e().order(),
                        model.k().order()
                    ),
                );
                r.check(&format!("{key}.product_structure"), check_product_structure(model, 2).passed());
                r.check(&format!("{key}.factorization"), check_follower_factorization(model, 1).passed());
            }
            Item::CodedSystem { system, .. } => {
                r.put(
                    &key,
                    format!(
                        "{} cosets, memory {}, refinement {}",
                        system.partition().len(),
                        system.memory(),
                        join(system.refinement_orders())
                    ),
                );
                let m = system.point_model();
                r.check(&format!("{key}.product_structure"), check_product_structure(&m, 2).passed());
            }
            Item::GeneratedGraph { graph, certificate } => {
                let radius = opts.radius.unwrap_or(DEFAULT_RADIUS);
                let t = graph.truncate(radius)?;
                r.put(
                    &key,
                    format!(
                        "{} classes, {} rules, window {} states / {} edges, certificate {}",
                        graph.classes().len(),
                        graph.rules().len(),
                        t.len(),
                        t.edge_count(),
                        if certificate.is_some() { "present" } else { "absent" }
                    ),
                );
            }
            Item::Matrix(m) => {
                let n = opts.n_max.unwrap_or(DEFAULT_MATRIX_NMAX);
                let v = matrix_no_periodics(m, n);
                r.put(&key, format!("{}x{} unimodular", m.dim(), m.dim()));
                r.check(&format!("{key}.no_periodic_points_up_to_{n}"), v.holds());
            }
        }
    }
    Ok(r)
}

fn step_text(s: &crate::decompose::StepRecord) -> String {
    let what = match s.step {
        Step::Split { factor } => format!("split {factor}"),
        Step::Amalgamate { side } => format!("amalgamate {}", side.as_str()),
    };
    format!(
        "{what}; |h| {}->{}; cosets {}->{}; |f|={} |p|={}",
        s.h_order.0, s.h_order.1, s.cosets.0, s.cosets.1, s.follower_card, s.predecessor_card
    )
}

fn run_decompose(spec: &SpecFile, text: &str, opts: &RunOptions) -> Result<RunReport> {
    let (name, item) = pick(
        spec,
        Command::Decompose,
        &[SectionKind::GroupShift, SectionKind::CodedSystem],
        opts,
    )?;
    let model: GroupShiftModel = match item {
        Item::GroupShift { model, .. } => model.clone(),
        Item::CodedSystem { system, .. } => system.point_model(),
        _ => unreachable!("kind checked by pick"),
    };
    let mut r = RunReport::new(Command::Decompose, text, name);
    let x = model.shift();
    r.put("alphabet", x.len());
    r.put("edges", x.edge_count());
    r.put("follower_e", model.follower_e().order());
    r.put("predecessor_e", model.predecessor_e().order());
    r.put("k", model.k().order());
    let c = decompose(&model, Limits::default())?;
    r.put("emitted", format!("[{}]", join(&c.emitted)));
    r.put("emitted_product", c.emitted_product());
    r.put("residual_states", c.residual.len());
    r.put("residual_cycle_type", format!("[{}]", join(c.residual_cycle_lengths())));
    r.put("steps", c.steps.len());
    for (i, s) in c.steps.iter().enumerate() {
        r.put(format!("step.{}", i + 1), step_text(s));
    }
    r.put(
        "forward_window",
        format!("{} (memory {}, anticipation {})", c.forward.window(), c.forward.memory(), c.forward.anticipation()),
    );
    r.put(
        "inverse_window",
        format!("{} (memory {}, anticipation {})", c.inverse.window(), c.inverse.memory(), c.inverse.anticipation()),
    );
    let depth = opts.verify_depth.unwrap_or(DEFAULT_VERIFY_DEPTH);
    let v = verify_certificate(x, &c, depth);
    r.put("verify_depth", depth);
    r.check("verify.counts", v.counts_ok);
    r.check("verify.identity", v.identity_ok);
    r.put("verify.identity_lengths", format!("{},{}", v.checked_lengths.0, v.checked_lengths.1));
    r.check("verify.structure", v.structure_ok);
    for (i, f) in v.failures.iter().enumerate() {
        r.put(format!("failure.{}", i + 1), f);
    }
    let factors: Vec<String> = c.emitted.iter().map(|k| format!("the full {k}-shift")).collect();
    r.notes.push(format!(
        "The shift on {} symbols is conjugate to {} times a permutation of {} states with cycle type [{}].",
        x.len(),
        if factors.is_empty() { "a point".to_string() } else { factors.join(" times ") },
        c.residual.len(),
        join(c.residual_cycle_lengths())
    ));
    Ok(r)
}

fn list_states(c: &crate::wandering::Classification, b: Block) -> String {
    let names: Vec<&str> = c
        .truncation
        .names
        .iter()
        .zip(&c.labels)
        .filter(|(_, &l)| l == b)
        .map(|(n, _)| n.as_str())
        .collect();
    let mut s = names.iter().take(LIST_LIMIT).copied().collect::<Vec<_>>().join(" ");
    if names.len() > LIST_LIMIT {
        s.push_str(&format!(" ... (+{})", names.len() - LIST_LIMIT));
    }
    s
}

/// Gallery graphs come from arithmetic models, not from drawings.
fn note_graph_source(r: &mut RunReport, name: &str) {
    if GALLERY.contains(&name) {
        r.notes.push(format!(
            "The `{name}` graph is generated from its arithmetic model; no drawn graph is reproduced."
        ));
    }
}

fn run_classify(spec: &SpecFile, text: &str, opts: &RunOptions) -> Result<RunReport> {
    let (name, item) = pick(spec, Command::Classify, &[SectionKind::GeneratedGraph], opts)?;
    let (g, cert) = graph_of(item);
    let radius = opts.radius.unwrap_or(DEFAULT_RADIUS);
    let c = classify_blocks(g, radius)?;
    let mut r = RunReport::new(Command::Classify, text, name);
    r.put("radius", radius);
    r.put("states", c.truncation.len());
    r.put("edges", c.truncation.edge_count());
    r.put("transitive", c.count(Block::Transitive));
    r.put("non_wandering", c.non_wandering());
    r.put("wandering", c.count(Block::Wandering));
    r.put("transitive_states", list_states(&c, Block::Transitive));
    r.put("cyclic_only_states", list_states(&c, Block::Cyclic));
    r.put("quotient_states", c.quotient_names.len());
    r.check("radius_stable", radius_stable(g, radius)?);
    match cert {
        Some(cert) => {
            let v = quotient_is_wandering(g, &c, cert)?;
            r.put("quotient_wandering", verdict_text(&v));
            if !v.holds() {
                r.status = Status::Fail;
            }
        }
        None => r.put("quotient_wandering", "unchecked (no rank certificate)"),
    }
    r.notes.push(
        "Transitive states lie on paths that start and end in the base state's component; \
         non-wandering states lie between cycles; the quotient collapses the non-wandering part to [C]."
            .into(),
    );
    note_graph_source(&mut r, name);
    Ok(r)
}

fn counts_text(counts: &[num_bigint::BigUint]) -> String {
    join(counts)
}

fn run_entropy(spec: &SpecFile, text: &str, opts: &RunOptions) -> Result<RunReport> {
    let (name, item) = pick(
        spec,
        Command::Entropy,
        &[
            SectionKind::GeneratedGraph,
            SectionKind::GroupShift,
            SectionKind::Shift,
            SectionKind::CodedSystem,
            SectionKind::Matrix,
        ],
        opts,
    )?;
    let mut r = RunReport::new(Command::Entropy, text, name);
    let shift_entropy = |r: &mut RunReport, x: &VertexShift| -> Result<()> {
        let n = opts.n_max.unwrap_or(DEFAULT_SHIFT_NMAX).max(2);
        let e = block_entropy(x, n)?;
        r.put("n_max", n);
        r.put("word_counts", counts_text(&e.counts));
        r.put(
            "geometric_base",
            e.geometric_base.as_ref().map_or("none".to_string(), |b| b.to_string()),
        );
        r.put("entropy", fmt_f(e.entropy));
        Ok(())
    };
    match item {
        Item::GeneratedGraph { graph, certificate } => {
            let n = opts.n_max.unwrap_or(DEFAULT_GRAPH_NMAX);
            let d = dual_entropy(graph, graph.base(), n)?;
            r.put("state", graph.display(graph.base()));
            r.put("n_max", n);
            r.put("forward_counts", counts_text(&d.forward.counts));
            r.put("backward_counts", counts_text(&d.backward.counts));
            let base = |b: &Option<num_bigint::BigUint>| b.as_ref().map_or("none".to_string(), |b| b.to_string());
            r.put("forward_base", base(&d.forward.geometric_base));
            r.put("backward_base", base(&d.backward.geometric_base));
            r.put("growth_entropy", fmt_f(d.growth_entropy));
            r.put("measure_entropy_bound", d.measure_bound.map_or("unknown".to_string(), fmt_f));
            if let Some(cert) = certificate {
                let radius = opts.radius.unwrap_or(DEFAULT_RADIUS);
                r.put("totally_wandering", verdict_text(&totally_wandering(graph, cert, radius)?));
            }
            r.notes.push(
                "Growth entropy counts paths leaving or entering the state; when every cycle class is a \
                 single cycle, invariant measures live on periodic orbits and have measure entropy 0."
                    .into(),
            );
            note_graph_source(&mut r, name);
        }
        Item::GroupShift { model, .. } => shift_entropy(&mut r, model.shift())?,
        Item::Shift(x) => shift_entropy(&mut r, x)?,
        Item::CodedSystem { system, .. } => shift_entropy(&mut r, system.shift())?,
        Item::Matrix(m) => matrix_entropy(&mut r, m, opts),
        _ => unreachable!("kind checked by pick"),
    }
    Ok(r)
}

fn matrix_entropy(r: &mut RunReport, m: &MatrixSystem, opts: &RunOptions) {
    let n = opts.n_max.unwrap_or(DEFAULT_MATRIX_NMAX);
    let v = matrix_no_periodics(m, n);
    r.put("rows", m.render());
    r.put("n_max", n);
    r.put("det_first", join(v.dets.iter().take(6)));
    if let Some([a, b]) = v.eigen_moduli {
        r.put("eigen_moduli", format!("{},{}", fmt_f(a), fmt_f(b)));
        r.put("log_expansion", fmt_f(a.max(b).ln()));
    }
    r.check("no_periodic_points", v.holds());
    if let Some(p) = v.first_periodic {
        r.put("first_period", p);
    }
}

fn run_export_dot(spec: &SpecFile, text: &str, opts: &RunOptions) -> Result<RunReport> {
    let (name, item) = pick(
        spec,
        Command::ExportDot,
        &[
            SectionKind::GeneratedGraph,
            SectionKind::GroupShift,
            SectionKind::Shift,
            SectionKind::CodedSystem,
        ],
        opts,
    )?;
    let mut r = RunReport::new(Command::ExportDot, text, name);
    let dot = match item {
        Item::GroupShift { model, .. } => shift_dot(name, model.shift()),
        Item::Shift(x) => shift_dot(name, x),
        Item::CodedSystem { system, .. } => shift_dot(name, system.shift()),
        Item::GeneratedGraph { graph, .. } => {
            let radius = opts.radius.unwrap_or(DEFAULT_RADIUS);
            let t = graph.truncate(radius)?;
            // colour from a wider classification so the window itself is interior
            let labels: Option<Vec<Block>> = classify_blocks(graph, radius + 2)
                .ok()
                .map(|c| t.states.iter().map(|s| c.label_of(s).expect("nested windows")).collect());
            r.put("radius", radius);
            r.put("coloured", labels.is_some());
            r.put("boundary_states", t.boundary.iter().filter(|&&b| b).count());
            note_graph_source(&mut r, name);
            truncation_dot(name, &t, labels.as_deref())
        }
        _ => unreachable!("kind checked by pick"),
    };
    let (nodes, edges) = dot_counts(&dot);
    r.put("nodes", nodes);
    r.put("edges", edges);
    r.put("dot_sha256", sha256_hex(dot.as_bytes()));
    r.dot = Some(dot);
    Ok(r)
}

fn run_examples(opts: &RunOptions) -> Result<RunReport> {
    let names: Vec<&str> = match &opts.target {
        Some(t) if GALLERY.contains(&t.as_str()) => vec![t.as_str()],
        Some(t) => return Err(Error::UnknownExample(t.clone())),
        None => GALLERY.to_vec(),
    };
    let mut r = RunReport::new(Command::Examples, "", opts.target.clone().unwrap_or_else(|| "gallery".into()));
    for name in names {
        let text = gallery_spec(name).expect("gallery names resolve").render();
        // every example must survive its own round trip
        let ok = parse_spec(&text).map(|s| s.render() == text).unwrap_or(false);
        r.put(
            format!("example.{name}"),
            format!("{} (spec sha256 {})", describe(name).unwrap_or(""), &sha256_hex(text.as_bytes())[..16]),
        );
        r.check(&format!("example.{name}.round_trip"), ok);
    }
    Ok(r)
}
