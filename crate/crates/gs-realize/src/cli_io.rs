//! Text formats, DOT export and a seeded random graph generator.
//!
//! Graph documents are line based:
//!
//! ```text
//! gsgraph v1
//! # comment
//! vertex 0 R r
//! vertex 1 R a
//! edge 0 1 1
//! ```
//!
//! `edge FROM TO WEIGHT` takes vertex ids or `OPEN` for a dangling end.
//! Type and nature names are case-insensitive. Report documents start with
//! `gsreport v1` and hold one `key value...` record per line.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::branched::{Branched1Manifold, CanonicalForm};
use crate::gs_model::{
    euler_conley, euler_gs, fold_balance, Edge, Endpoint, LyapunovGraph, Nature, SemiGraph,
    SingularityType, VertexLabel,
};
use crate::realize_global::{classify_graph, RealizationVerdict, TheoremId};
use crate::realize_local::{local_realizable, minimal_weights, shape_catalog, LocalVerdict};

pub const GRAPH_HEADER: &str = "gsgraph v1";
pub const REPORT_HEADER: &str = "gsreport v1";

/// A diagnostic with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(s, t)| (line[..s].chars().count() + 1, t))
        .collect()
}

/// Meaningful lines: comments stripped, blank lines dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        (!l.trim().is_empty()).then_some((i + 1, l))
    })
}

fn expect_header(text: &str, header: &str) -> Result<(), ParseError> {
    match content_lines(text).next() {
        Some((ln, l)) if l.split_whitespace().collect::<Vec<_>>().join(" ") == header => {
            let _ = ln;
            Ok(())
        }
        Some((ln, l)) => {
            let col = tokens(l).first().map_or(1, |t| t.0);
            Err(err(ln, col, format!("expected header `{header}`")))
        }
        None => Err(err(1, 1, format!("empty document, expected header `{header}`"))),
    }
}

fn parse_u32(line: usize, (col, tok): (usize, &str), what: &str) -> Result<u32, ParseError> {
    tok.parse()
        .map_err(|_| err(line, col, format!("expected {what}, found `{tok}`")))
}

fn parse_endpoint(
    line: usize,
    (col, tok): (usize, &str),
    known: &BTreeSet<u32>,
) -> Result<Endpoint, ParseError> {
    if tok.eq_ignore_ascii_case("open") {
        return Ok(Endpoint::Open);
    }
    let id = parse_u32(line, (col, tok), "vertex id or OPEN")?;
    if !known.contains(&id) {
        return Err(err(line, col, format!("unknown vertex {id}")));
    }
    Ok(Endpoint::Vertex(id))
}

fn arity(line: usize, toks: &[(usize, &str)], n: usize, usage: &str) -> Result<(), ParseError> {
    if toks.len() < n {
        let col = toks.last().map_or(1, |(c, t)| c + t.chars().count());
        return Err(err(line, col, format!("missing field, expected `{usage}`")));
    }
    if toks.len() > n {
        let (col, t) = toks[n];
        return Err(err(line, col, format!("unexpected field `{t}`, expected `{usage}`")));
    }
    Ok(())
}

/// Parse a graph document. Edges may reference vertices declared later.
pub fn parse_graph(text: &str) -> Result<LyapunovGraph, ParseError> {
    expect_header(text, GRAPH_HEADER)?;
    let mut g = LyapunovGraph::new();
    let lines: Vec<(usize, &str)> = content_lines(text).skip(1).collect();
    let mut edge_lines = Vec::new();
    for &(ln, l) in &lines {
        let toks = tokens(l);
        match toks[0].1 {
            "vertex" => {
                arity(ln, &toks, 4, "vertex ID TYPE NATURE")?;
                let id = parse_u32(ln, toks[1], "vertex id")?;
                let ty: SingularityType = toks[2].1.parse().map_err(|m: String| err(ln, toks[2].0, m))?;
                let nature: Nature = toks[3].1.parse().map_err(|m: String| err(ln, toks[3].0, m))?;
                let label = VertexLabel::new(ty, nature).map_err(|e| err(ln, toks[3].0, e.to_string()))?;
                if g.vertices.contains_key(&id) {
                    return Err(err(ln, toks[1].0, format!("duplicate vertex id {id}")));
                }
                g.add_vertex(id, label);
            }
            "edge" => {
                arity(ln, &toks, 4, "edge FROM TO WEIGHT")?;
                edge_lines.push((ln, toks));
            }
            other => return Err(err(ln, toks[0].0, format!("unknown record `{other}`"))),
        }
    }
    let known: BTreeSet<u32> = g.vertices.keys().copied().collect();
    for (ln, toks) in edge_lines {
        let from = parse_endpoint(ln, toks[1], &known)?;
        let to = parse_endpoint(ln, toks[2], &known)?;
        let weight = parse_u32(ln, toks[3], "weight")?;
        if weight == 0 {
            return Err(err(ln, toks[3].0, "weight must be at least 1"));
        }
        g.add_edge(from, to, weight);
    }
    Ok(g)
}

/// Serialize a graph: vertices sorted by id, edges in index order.
pub fn serialize_graph(g: &LyapunovGraph) -> String {
    let mut out = format!("{GRAPH_HEADER}\n");
    for (id, l) in &g.vertices {
        let _ = writeln!(out, "vertex {id} {} {}", l.ty, l.nature);
    }
    for e in &g.edges {
        let _ = writeln!(out, "edge {} {} {}", e.from, e.to, e.weight);
    }
    out
}

/// DOT rendering: one node per vertex, one arc per edge labelled with its
/// weight. Open ends are drawn as point nodes named `open<edge>`.
pub fn export_dot(g: &LyapunovGraph) -> String {
    let mut out = String::from("digraph lyapunov {\n  rankdir=TB;\n");
    for (id, l) in &g.vertices {
        let _ = writeln!(out, "  v{id} [label=\"{id}: {l}\"];");
    }
    let name = |ep: Endpoint, i: usize| match ep {
        Endpoint::Vertex(v) => format!("v{v}"),
        Endpoint::Open => format!("open{i}"),
    };
    for (i, e) in g.edges.iter().enumerate() {
        for ep in [e.from, e.to] {
            if ep == Endpoint::Open {
                let _ = writeln!(out, "  open{i} [shape=point];");
            }
        }
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"{}\"];",
            name(e.from, i),
            name(e.to, i),
            e.weight
        );
    }
    out.push_str("}\n");
    out
}

/// Machine-readable summary of a realization run.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReportDocument {
    pub status: String,
    pub theorem: Option<TheoremId>,
    pub verified: Option<bool>,
    pub certificate: BTreeMap<usize, CanonicalForm>,
    pub witness_vertices: Vec<u32>,
    pub witness_edges: Vec<usize>,
    pub reason: Option<String>,
    pub searched_weight_bound: Option<u32>,
    pub euler_conley: Option<i64>,
    pub euler_gs: Option<Rational64>,
    pub fold_balance: Option<bool>,
    pub local: BTreeMap<u32, (VertexLabel, String)>,
}

impl ReportDocument {
    /// Collect the verdict together with Euler and fold data of `g`.
    pub fn build(g: &LyapunovGraph, verdict: &RealizationVerdict) -> Self {
        let status = classify_graph(g);
        let mut doc = ReportDocument {
            status: verdict.status().to_string(),
            euler_conley: euler_conley(g).ok(),
            euler_gs: euler_gs(g).ok(),
            fold_balance: fold_balance(g).ok(),
            local: status
                .verdicts
                .iter()
                .map(|(&v, verdict)| (v, (g.vertices[&v], verdict.to_string())))
                .collect(),
            ..Default::default()
        };
        match verdict {
            RealizationVerdict::RealizableBy {
                theorem,
                certificate,
                verified,
            } => {
                doc.theorem = Some(*theorem);
                doc.verified = Some(*verified);
                doc.certificate = certificate.clone();
            }
            RealizationVerdict::NotRealizable { witness, reason } => {
                doc.witness_vertices = witness.vertices.clone();
                doc.witness_edges = witness.edges.clone();
                doc.reason = Some(reason.clone());
            }
            RealizationVerdict::Unknown {
                searched_weight_bound,
            } => doc.searched_weight_bound = *searched_weight_bound,
        }
        doc
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{REPORT_HEADER}\nstatus {}\n", self.status);
        if let Some(t) = self.theorem {
            let _ = writeln!(out, "theorem {t}");
            if t == TheoremId::Search {
                out.push_str("model passageway-closure\n");
            }
        }
        if let Some(v) = self.verified {
            let _ = writeln!(out, "verified {v}");
        }
        if let Some(b) = self.searched_weight_bound {
            let _ = writeln!(out, "searched-bound {b}");
        }
        if let Some(x) = self.euler_conley {
            let _ = writeln!(out, "euler-conley {x}");
        }
        if let Some(x) = self.euler_gs {
            let _ = writeln!(out, "euler-gs {x}");
        }
        if let Some(x) = self.fold_balance {
            let _ = writeln!(out, "fold-balance {x}");
        }
        for (v, (label, verdict)) in &self.local {
            let _ = writeln!(out, "local {v} {label} {verdict}");
        }
        for (e, form) in &self.certificate {
            let _ = writeln!(out, "certificate {e} {form}");
        }
        if !self.witness_vertices.is_empty() {
            let ids: Vec<String> = self.witness_vertices.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "witness-vertices {}", ids.join(" "));
        }
        if !self.witness_edges.is_empty() {
            let ids: Vec<String> = self.witness_edges.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "witness-edges {}", ids.join(" "));
        }
        if let Some(r) = &self.reason {
            let _ = writeln!(out, "reason {r}");
        }
        out
    }

    /// Parse a report produced by [`ReportDocument::to_text`]. Certificate
    /// strings must decode as branched 1-manifolds.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        expect_header(text, REPORT_HEADER)?;
        let mut doc = ReportDocument::default();
        for (ln, l) in content_lines(text).skip(1) {
            let toks = tokens(l);
            let (kcol, key) = toks[0];
            let rest = &toks[1..];
            let one = || -> Result<(usize, &str), ParseError> {
                rest.first()
                    .copied()
                    .ok_or_else(|| err(ln, kcol, format!("`{key}` needs a value")))
            };
            let boolean = |t: (usize, &str)| -> Result<bool, ParseError> {
                t.1.parse().map_err(|_| err(ln, t.0, "expected true or false"))
            };
            match key {
                "status" => doc.status = one()?.1.to_string(),
                "theorem" => {
                    let t = one()?;
                    doc.theorem = Some(t.1.parse().map_err(|m: String| err(ln, t.0, m))?);
                }
                "model" => {}
                "verified" => doc.verified = Some(boolean(one()?)?),
                "searched-bound" => doc.searched_weight_bound = Some(parse_u32(ln, one()?, "bound")?),
                "euler-conley" => {
                    let t = one()?;
                    doc.euler_conley = Some(t.1.parse().map_err(|_| err(ln, t.0, "expected integer"))?);
                }
                "euler-gs" => {
                    let t = one()?;
                    doc.euler_gs = Some(t.1.parse().map_err(|_| err(ln, t.0, "expected rational"))?);
                }
                "fold-balance" => doc.fold_balance = Some(boolean(one()?)?),
                "local" => {
                    arity(ln, &toks, 4, "local ID LABEL VERDICT")?;
                    let id = parse_u32(ln, toks[1], "vertex id")?;
                    let (ty, nature) = toks[2]
                        .1
                        .split_once('_')
                        .ok_or_else(|| err(ln, toks[2].0, "expected TYPE_NATURE"))?;
                    let label = VertexLabel::new(
                        ty.parse().map_err(|m: String| err(ln, toks[2].0, m))?,
                        nature.parse().map_err(|m: String| err(ln, toks[2].0, m))?,
                    )
                    .map_err(|e| err(ln, toks[2].0, e.to_string()))?;
                    doc.local.insert(id, (label, toks[3].1.to_string()));
                }
                "certificate" => {
                    arity(ln, &toks, 3, "certificate EDGE FORM")?;
                    let e = parse_u32(ln, toks[1], "edge index")? as usize;
                    let m = Branched1Manifold::parse(toks[2].1)
                        .map_err(|x| err(ln, toks[2].0, x.to_string()))?;
                    doc.certificate.insert(e, m.canonical());
                }
                "witness-vertices" => {
                    doc.witness_vertices = rest
                        .iter()
                        .map(|&t| parse_u32(ln, t, "vertex id"))
                        .collect::<Result<_, _>>()?;
                }
                "witness-edges" => {
                    doc.witness_edges = rest
                        .iter()
                        .map(|&t| parse_u32(ln, t, "edge index").map(|x| x as usize))
                        .collect::<Result<_, _>>()?;
                }
                "reason" => {
                    let start = one()?.0;
                    let byte = l.char_indices().nth(start - 1).map_or(0, |(b, _)| b);
                    doc.reason = Some(l[byte..].trim_end().to_string());
                }
                other => return Err(err(ln, kcol, format!("unknown record `{other}`"))),
            }
        }
        Ok(doc)
    }
}

/// Options of [`gen_random_gs_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GenFlags {
    /// Every vertex gets its minimal weights.
    pub minimal: bool,
    /// The graph is built as a graph glued to its own reversal, which
    /// balances the fold counts.
    pub fold_balanced: bool,
}

/// Reasons the generator cannot produce a graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("size must be at least 2, got {0}")]
    SizeTooSmall(usize),
    #[error("no vertex fits a stub of weight {0} after many attempts")]
    Stuck(u32),
    #[error("graph kept growing past the target size {0}")]
    Runaway(usize),
}

/// Largest weight the generator puts on an edge in non-minimal mode.
const GEN_MAX_WEIGHT: u32 = 6;
const ATTEMPTS: usize = 200;

/// A half-built graph: open edges are stubs still to be attached.
struct Builder {
    g: LyapunovGraph,
    next_id: u32,
    flags: GenFlags,
}

/// Split `total` into `parts` positive integers uniformly at random.
fn random_split(rng: &mut ChaCha8Rng, total: u32, parts: usize) -> Option<Vec<u32>> {
    if parts == 0 {
        return (total == 0).then(Vec::new);
    }
    if (total as usize) < parts {
        return None;
    }
    let mut cuts: Vec<u32> = (1..total).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<u32> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(total)) {
        out.push(c - prev);
        prev = c;
    }
    Some(out)
}

impl Builder {
    /// A semi-graph with `w` on one in-edge (`incoming`) or one out-edge.
    /// `shrink` asks for a single-edge attractor/repeller or a vertex whose
    /// far side carries less total weight, so that capping terminates.
    fn propose(&self, rng: &mut ChaCha8Rng, w: u32, incoming: bool, shrink: bool) -> Option<SemiGraph> {
        let entries = shape_catalog();
        for _ in 0..ATTEMPTS {
            let entry = entries.choose(rng)?;
            let (near, far) = if incoming {
                (entry.e_plus, entry.e_minus)
            } else {
                (entry.e_minus, entry.e_plus)
            };
            if near == 0 || (shrink && far > 1) {
                continue;
            }
            let Ok((min_in, min_out)) = minimal_weights(entry.label, entry.e_plus, entry.e_minus) else {
                continue;
            };
            let (ins, outs) = if self.flags.minimal {
                let (mut nw, fw) = if incoming { (min_in, min_out) } else { (min_out, min_in) };
                let Some(pos) = nw.iter().position(|&x| x == w) else {
                    continue;
                };
                nw.swap(0, pos);
                if incoming {
                    (nw, fw)
                } else {
                    (fw, nw)
                }
            } else {
                let mut nw = vec![w];
                for _ in 1..near {
                    nw.push(rng.gen_range(1..=GEN_MAX_WEIGHT.min(3)));
                }
                let near_total: i64 = nw.iter().map(|&x| x as i64).sum();
                // Offset is B+ - B-.
                let far_total = if incoming {
                    near_total - entry.offset
                } else {
                    near_total + entry.offset
                };
                if far_total < far as i64 || far_total > (GEN_MAX_WEIGHT as i64) * far.max(1) as i64 {
                    continue;
                }
                let Some(fw) = random_split(rng, far_total as u32, far) else {
                    continue;
                };
                if fw.iter().any(|&x| x > GEN_MAX_WEIGHT) {
                    continue;
                }
                if incoming {
                    (nw, fw)
                } else {
                    (fw, nw)
                }
            };
            let far_w: u32 = if incoming { outs.iter().sum() } else { ins.iter().sum() };
            if shrink && far > 0 && far_w >= w {
                continue;
            }
            let sg = SemiGraph::new(entry.label, ins, outs);
            let ok = match local_realizable(&sg) {
                LocalVerdict::YesMinimal => true,
                LocalVerdict::YesWithPassageways(_) => !self.flags.minimal,
                LocalVerdict::No(_) => false,
            };
            if ok {
                return Some(sg);
            }
        }
        None
    }

    /// Put a new vertex for `sg` on the open end of `edge`. The first
    /// weight of the near side is the stub itself.
    fn attach(&mut self, edge: usize, incoming: bool, sg: &SemiGraph) {
        let id = self.next_id;
        self.next_id += 1;
        self.g.add_vertex(id, sg.label);
        if incoming {
            self.g.edges[edge].to = Endpoint::Vertex(id);
            for &w in &sg.in_weights[1..] {
                self.g.add_edge(Endpoint::Open, Endpoint::Vertex(id), w);
            }
            for &w in &sg.out_weights {
                self.g.add_edge(Endpoint::Vertex(id), Endpoint::Open, w);
            }
        } else {
            self.g.edges[edge].from = Endpoint::Vertex(id);
            for &w in &sg.in_weights {
                self.g.add_edge(Endpoint::Open, Endpoint::Vertex(id), w);
            }
            for &w in &sg.out_weights[1..] {
                self.g.add_edge(Endpoint::Vertex(id), Endpoint::Open, w);
            }
        }
    }

    fn stubs(&self) -> Vec<usize> {
        (0..self.g.edges.len())
            .filter(|&i| {
                let e = &self.g.edges[i];
                e.from == Endpoint::Open || e.to == Endpoint::Open
            })
            .collect()
    }

    fn reaches(&self, from: u32, to: u32) -> bool {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                return true;
            }
            if seen.insert(v) {
                for e in &self.g.edges {
                    if e.from == Endpoint::Vertex(v) {
                        if let Endpoint::Vertex(w) = e.to {
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        false
    }

    /// Join a dangling out-edge with a dangling in-edge of equal weight when
    /// that keeps the graph acyclic. Returns true if a pair was merged.
    fn try_merge(&mut self, rng: &mut ChaCha8Rng) -> bool {
        let stubs = self.stubs();
        let downs: Vec<usize> = stubs
            .iter()
            .copied()
            .filter(|&i| self.g.edges[i].to == Endpoint::Open)
            .collect();
        let ups: Vec<usize> = stubs
            .iter()
            .copied()
            .filter(|&i| self.g.edges[i].from == Endpoint::Open)
            .collect();
        let mut pairs = Vec::new();
        for &d in &downs {
            for &u in &ups {
                let (de, ue) = (self.g.edges[d], self.g.edges[u]);
                let (Endpoint::Vertex(a), Endpoint::Vertex(b)) = (de.from, ue.to) else {
                    continue;
                };
                if de.weight == ue.weight && a != b && !self.reaches(b, a) {
                    pairs.push((d, u, b));
                }
            }
        }
        let Some(&(d, u, b)) = pairs.choose(rng) else {
            return false;
        };
        self.g.edges[d].to = Endpoint::Vertex(b);
        self.g.edges.remove(u);
        true
    }
}

/// Seeded generator of closed, acyclic graphs whose vertices are all
/// locally realizable. `size` is the target vertex count; the result has
/// between 2 and roughly `size + 4` vertices.
pub fn gen_random_gs_graph(seed: u64, size: usize, flags: GenFlags) -> Result<LyapunovGraph, GenError> {
    if size < 2 {
        return Err(GenError::SizeTooSmall(size));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = if flags.fold_balanced { size / 2 + 1 } else { size };
    let mut b = Builder {
        g: LyapunovGraph::new(),
        next_id: 0,
        flags,
    };
    // Seed vertex: a repeller with one out-stub keeps the start uniform.
    let seed_sg = loop {
        let entry = shape_catalog().choose(&mut rng).expect("catalog is nonempty");
        if let Ok((ins, outs)) = minimal_weights(entry.label, entry.e_plus, entry.e_minus) {
            let sg = SemiGraph::new(entry.label, ins, outs);
            if local_realizable(&sg) == LocalVerdict::YesMinimal {
                break sg;
            }
        }
    };
    let id = b.next_id;
    b.next_id += 1;
    b.g.add_vertex(id, seed_sg.label);
    for &w in &seed_sg.in_weights {
        b.g.add_edge(Endpoint::Open, Endpoint::Vertex(id), w);
    }
    for &w in &seed_sg.out_weights {
        b.g.add_edge(Endpoint::Vertex(id), Endpoint::Open, w);
    }
    loop {
        let stubs = b.stubs();
        if stubs.is_empty() {
            break;
        }
        if b.g.vertices.len() > 8 * target + 64 {
            return Err(GenError::Runaway(target));
        }
        let growing = b.g.vertices.len() + stubs.len() < target;
        if rng.gen_bool(0.2) && b.try_merge(&mut rng) {
            continue;
        }
        let edge = *stubs.choose(&mut rng).expect("nonempty");
        let e = b.g.edges[edge];
        let incoming = e.to == Endpoint::Open;
        let proposal = if growing {
            b.propose(&mut rng, e.weight, incoming, false)
        } else {
            b.propose(&mut rng, e.weight, incoming, true)
        };
        match proposal {
            Some(sg) => b.attach(edge, incoming, &sg),
            None if !growing => {
                let sg = b
                    .propose(&mut rng, e.weight, incoming, false)
                    .ok_or(GenError::Stuck(e.weight))?;
                b.attach(edge, incoming, &sg);
            }
            None => return Err(GenError::Stuck(e.weight)),
        }
    }
    let g = b.g;
    Ok(if flags.fold_balanced { glue_to_reversal(&g) } else { g })
}

/// Glue `g` to its reversed copy through one attractor: the attractor and
/// its reversed twin (a repeller) are removed and each of their edges is
/// joined to its mirror image. The result has equal fold counts on both
/// sides.
fn glue_to_reversal(g: &LyapunovGraph) -> LyapunovGraph {
    let shift = g.vertices.keys().max().map_or(0, |m| m + 1);
    let sink = g
        .vertices
        .keys()
        .copied()
        .find(|&v| g.out_edges(v).is_empty())
        .expect("a finite acyclic graph has a sink");
    let sink_edges = g.in_edges(sink);
    let rev = g.reversed();
    let mut out = LyapunovGraph::new();
    for (&v, &l) in &g.vertices {
        if v != sink {
            out.add_vertex(v, l);
        }
    }
    for (&v, &l) in &rev.vertices {
        if v != sink {
            out.add_vertex(v + shift, l);
        }
    }
    let shifted = |ep: Endpoint| match ep {
        Endpoint::Vertex(v) => Endpoint::Vertex(v + shift),
        Endpoint::Open => Endpoint::Open,
    };
    for (i, e) in g.edges.iter().enumerate() {
        if !sink_edges.contains(&i) {
            out.edges.push(*e);
        }
    }
    for (i, e) in rev.edges.iter().enumerate() {
        if !sink_edges.contains(&i) {
            out.edges.push(Edge::new(shifted(e.from), shifted(e.to), e.weight));
        }
    }
    for &i in &sink_edges {
        let e = g.edges[i];
        out.edges.push(Edge::new(e.from, shifted(e.from), e.weight));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPHERE: &str = "gsgraph v1\n# sphere\nvertex 0 R r\nvertex 1 R a\nedge 0 1 1\n";

    #[test]
    fn parses_sphere() {
        let g = parse_graph(SPHERE).unwrap();
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(serialize_graph(&g), SPHERE.replace("# sphere\n", ""));
    }

    #[test]
    fn case_insensitive_names() {
        let g = parse_graph("gsgraph v1\nvertex 3 d SS_S\nvertex 1 t SSa\nedge 1 3 2\n").unwrap();
        assert_eq!(g.vertices[&3].nature, Nature::SSS);
        assert_eq!(g.vertices[&1].nature, Nature::SSA);
    }

    #[test]
    fn diagnostics_carry_positions() {
        let e = parse_graph("gsgraph v1\nvertex 0 R sa\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 12));
        assert!(e.message.contains("inadmissible nature"), "{e}");
        let e = parse_graph("gsgraph v1\nvertex 0 R a\nvertex 0 R r\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 8));
        assert!(e.message.contains("duplicate"));
        let e = parse_graph("gsgraph v1\nvertex 0 R a extra\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 14));
        let e = parse_graph("gsgraph v1\nvertex 0 R a\nedge 0 9 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 8));
        let e = parse_graph("graph\n").unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn open_edges_are_accepted() {
        let g = parse_graph("gsgraph v1\nvertex 0 R s\nedge OPEN 0 2\nedge 0 open 2\n").unwrap();
        assert!(!g.is_closed());
    }

    #[test]
    fn dot_has_one_node_per_vertex() {
        let g = parse_graph(SPHERE).unwrap();
        let dot = export_dot(&g);
        assert_eq!(dot.matches("[label=\"").count(), 3);
        assert!(dot.contains("v0 -> v1 [label=\"1\"]"));
    }

    #[test]
    fn generator_is_deterministic() {
        let flags = GenFlags {
            minimal: true,
            fold_balanced: true,
        };
        let a = gen_random_gs_graph(7, 8, flags).unwrap();
        let b = gen_random_gs_graph(7, 8, flags).unwrap();
        assert_eq!(a, b);
        assert_eq!(gen_random_gs_graph(7, 1, flags), Err(GenError::SizeTooSmall(1)));
    }
}
