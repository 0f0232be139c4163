//! Global realizability of Lyapunov graphs.
//!
//! [`realize`] runs the necessary checks, then tries the sufficient
//! conditions in a fixed order, each producing a boundary assignment
//! (certificate) that maps every edge to a branched 1-manifold. Certificates
//! are checked against the block model before they are returned. When no
//! sufficient condition applies, an optional bounded search over all
//! assignments can certify realizability or non-realizability relative to
//! the block model.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::branched::{
    connected_forms, family_a, family_b, family_minimal, Branched1Manifold, CanonicalForm,
};
use crate::error::{GsError, Result};
use crate::gs_model::{
    euler_gs, fold_balance, fold_degrees, semigraph, validate_graph, Endpoint, LyapunovGraph, Nature,
    SemiGraph, SingularityType,
};
use crate::realize_local::{
    boundary_pairs_at, label_admits_pair, local_realizable, shape_lookup, LocalVerdict,
};

/// Per-edge boundary assignment, keyed by edge index.
pub type Certificate = BTreeMap<usize, CanonicalForm>;

/// Which sufficient condition produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    Thm6,
    Thm7,
    Thm8,
    Thm9,
    Thm10I,
    Thm10Ii,
    Search,
}

impl TheoremId {
    pub fn code(self) -> &'static str {
        match self {
            TheoremId::Thm6 => "Thm6",
            TheoremId::Thm7 => "Thm7",
            TheoremId::Thm8 => "Thm8",
            TheoremId::Thm9 => "Thm9",
            TheoremId::Thm10I => "Thm10-i",
            TheoremId::Thm10Ii => "Thm10-ii",
            TheoremId::Search => "Search",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl std::str::FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        [
            TheoremId::Thm6,
            TheoremId::Thm7,
            TheoremId::Thm8,
            TheoremId::Thm9,
            TheoremId::Thm10I,
            TheoremId::Thm10Ii,
            TheoremId::Search,
        ]
        .into_iter()
        .find(|t| t.code().eq_ignore_ascii_case(s))
        .ok_or_else(|| format!("unknown theorem id `{s}`"))
    }
}

/// Vertices and edges responsible for a negative verdict.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Witness {
    pub vertices: Vec<u32>,
    pub edges: Vec<usize>,
}

/// Outcome of [`realize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealizationVerdict {
    RealizableBy {
        theorem: TheoremId,
        certificate: Certificate,
        /// False when the certificate needed more passageways than the
        /// verification budget allows and was accepted on the theorem alone.
        verified: bool,
    },
    NotRealizable {
        witness: Witness,
        reason: String,
    },
    Unknown {
        searched_weight_bound: Option<u32>,
    },
}

impl RealizationVerdict {
    pub fn status(&self) -> &'static str {
        match self {
            RealizationVerdict::RealizableBy { .. } => "realizable",
            RealizationVerdict::NotRealizable { .. } => "not-realizable",
            RealizationVerdict::Unknown { .. } => "unknown",
        }
    }
}

/// Aggregated local verdicts of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsGraphStatus {
    pub is_gs: bool,
    pub is_minimal_gs: bool,
    pub verdicts: BTreeMap<u32, LocalVerdict>,
}

/// Local verdict of every vertex.
pub fn classify_graph(g: &LyapunovGraph) -> GsGraphStatus {
    let verdicts: BTreeMap<u32, LocalVerdict> = g
        .vertices
        .keys()
        .map(|&v| {
            let sg = semigraph(g, v).expect("vertex exists");
            (v, local_realizable(&sg))
        })
        .collect();
    GsGraphStatus {
        is_gs: verdicts.values().all(|v| v.is_yes()),
        is_minimal_gs: verdicts.values().all(|v| *v == LocalVerdict::YesMinimal),
        verdicts,
    }
}

fn semigraphs(g: &LyapunovGraph) -> Vec<(u32, SemiGraph)> {
    g.vertices
        .keys()
        .map(|&v| (v, semigraph(g, v).expect("vertex exists")))
        .collect()
}

/// Shared hypotheses of the sufficient conditions: valid, closed, GS and
/// fold-balanced.
fn dispatch_ready(g: &LyapunovGraph) -> bool {
    validate_graph(g).is_valid()
        && g.is_closed()
        && classify_graph(g).is_gs
        && fold_balance(g).unwrap_or(false)
}

fn assign(g: &LyapunovGraph, f: impl Fn(usize, u32) -> Result<Branched1Manifold>) -> Option<Certificate> {
    g.edges
        .iter()
        .enumerate()
        .map(|(i, e)| f(i, e.weight).ok().map(|m| (i, m.canonical())))
        .collect()
}

/// Minimal graphs: every edge receives the minimal form of its weight.
pub fn check_minimal_case(g: &LyapunovGraph) -> Option<Certificate> {
    if !dispatch_ready(g) || !classify_graph(g).is_minimal_gs {
        return None;
    }
    assign(g, |_, w| family_minimal(w))
}

fn only_types(g: &LyapunovGraph, allowed: &[SingularityType]) -> bool {
    g.vertices.values().all(|l| allowed.contains(&l.ty))
}

const RCWD: [SingularityType; 4] = [
    SingularityType::R,
    SingularityType::C,
    SingularityType::W,
    SingularityType::D,
];

/// Graphs whose vertices all have degree at most 2, without triple crossings.
pub fn check_linear(g: &LyapunovGraph) -> Option<Certificate> {
    if !only_types(g, &RCWD) || g.vertices.keys().any(|&v| g.degree(v) > 2) || !dispatch_ready(g) {
        return None;
    }
    assign(g, |_, w| family_b(w))
}

/// Graphs whose bifurcation vertices (degree at least 3) have minimal
/// incident weights: stars around bifurcations take minimal forms, the
/// remaining linear part takes the chain family.
pub fn check_blend(g: &LyapunovGraph) -> Option<Certificate> {
    if !only_types(g, &RCWD) || !dispatch_ready(g) {
        return None;
    }
    let status = classify_graph(g);
    let mut star_edges = BTreeSet::new();
    for (&v, verdict) in &status.verdicts {
        if g.degree(v) >= 3 {
            if *verdict != LocalVerdict::YesMinimal {
                return None;
            }
            star_edges.extend(g.in_edges(v));
            star_edges.extend(g.out_edges(v));
        }
    }
    assign(g, |i, w| {
        if star_edges.contains(&i) {
            family_minimal(w)
        } else {
            family_b(w)
        }
    })
}

/// Graphs labelled only with regular, cone and Whitney singularities.
pub fn check_rcw(g: &LyapunovGraph) -> Option<Certificate> {
    let rcw = [SingularityType::R, SingularityType::C, SingularityType::W];
    if !only_types(g, &rcw) || !dispatch_ready(g) {
        return None;
    }
    assign(g, |_, w| family_a(w))
}

fn multiset_eq(a: &[u32], b: &[u32]) -> bool {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// Conditions under which a semi-graph is realized with boundaries from
/// the loop-chain family.
pub fn lemma_firstfamily_ok(sg: &SemiGraph) -> bool {
    if !RCWD.contains(&sg.label.ty) || !local_realizable(sg).is_yes() {
        return false;
    }
    let degree = sg.degree();
    if degree == 1 {
        let w = sg.in_weights.first().or(sg.out_weights.first()).copied().unwrap_or(0);
        if !(w == 1 || w == 2) {
            return false;
        }
    }
    if sg.label.ty == SingularityType::D
        && matches!(sg.label.nature, Nature::SA | Nature::SR)
        && degree != 2
    {
        return false;
    }
    if degree > 4 {
        return false;
    }
    if sg.label.ty == SingularityType::D {
        let (bp, bm) = (sg.b_plus(), sg.b_minus());
        if sg.label.nature == Nature::SSS
            && (sg.e_plus(), sg.e_minus()) == (1, 2)
            && !multiset_eq(&sg.out_weights, &[1, (bp - 2).max(0) as u32])
        {
            return false;
        }
        if sg.label.nature == Nature::SSU
            && (sg.e_plus(), sg.e_minus()) == (2, 1)
            && !multiset_eq(&sg.in_weights, &[1, (bm - 2).max(0) as u32])
        {
            return false;
        }
    }
    if sg.e_minus() == 3 && !multiset_eq(&sg.out_weights, &[1, 1, (sg.b_minus() - 2).max(0) as u32]) {
        return false;
    }
    if sg.e_plus() == 3 && !multiset_eq(&sg.in_weights, &[1, 1, (sg.b_plus() - 2).max(0) as u32]) {
        return false;
    }
    true
}

fn all_odd(ws: &[u32]) -> bool {
    ws.iter().all(|w| w % 2 == 1)
}

/// Conditions under which a semi-graph is realized with boundaries from
/// the chain family.
pub fn lemma_familyb_ok(sg: &SemiGraph) -> bool {
    let ty = sg.label.ty;
    if !RCWD.contains(&ty)
        || shape_lookup(sg.label, sg.e_plus(), sg.e_minus()).is_none()
        || !local_realizable(sg).is_yes()
    {
        return false;
    }
    // Check the attracting-side statement on `sg` and the mirrored statement
    // on its reversal.
    [sg.clone(), sg.reversed()]
        .iter()
        .all(|s| familyb_one_side(s, ty))
}

/// The conditions read with `+` as the single side; `s` may be reversed.
fn familyb_one_side(s: &SemiGraph, ty: SingularityType) -> bool {
    let (ep, em) = (s.e_plus(), s.e_minus());
    let (bp, bm) = (s.b_plus(), s.b_minus());
    let is_d = ty == SingularityType::D;
    if matches!(ty, SingularityType::R | SingularityType::D)
        && (ep, em) == (1, 2)
        && (bp - bm).abs() == 1
        && bp % 2 == 1
        && !all_odd(&s.out_weights)
    {
        return false;
    }
    if ty == SingularityType::W
        && (ep, em) == (1, 2)
        && (bp % 2 != 0 || !multiset_eq(&s.out_weights, &[1, (bp - 1).max(0) as u32]))
    {
        return false;
    }
    if is_d && (ep, em) == (2, 2) && bp > bm {
        let even = s.in_weights.iter().all(|w| w % 2 == 0);
        let split = multiset_eq(&s.out_weights, &[1, (bp - 3).max(0) as u32]);
        let shifted: Vec<u32> = s.in_weights.iter().map(|w| w.saturating_sub(1)).collect();
        if !even || !(split || multiset_eq(&s.out_weights, &shifted)) {
            return false;
        }
    }
    if is_d && em == 3 {
        if !s.out_weights.contains(&1) || (bp % 2 == 1 && !all_odd(&s.out_weights)) {
            return false;
        }
    }
    if is_d && em == 4 {
        let ones = s.out_weights.iter().filter(|&&w| w == 1).count();
        if ones < 2 || (bp % 2 == 1 && !all_odd(&s.out_weights)) {
            return false;
        }
    }
    true
}

/// Family-based certificates: the loop-chain family when every vertex
/// qualifies for it, otherwise the chain family when every vertex
/// qualifies for that one.
pub fn check_families(g: &LyapunovGraph) -> Option<(TheoremId, Certificate)> {
    if !only_types(g, &RCWD) || !dispatch_ready(g) {
        return None;
    }
    let sgs = semigraphs(g);
    if sgs
        .iter()
        .any(|(_, s)| shape_lookup(s.label, s.e_plus(), s.e_minus()).is_none())
    {
        return None;
    }
    if sgs.iter().all(|(_, s)| lemma_firstfamily_ok(s)) {
        return assign(g, |_, w| family_a(w)).map(|c| (TheoremId::Thm10I, c));
    }
    if sgs.iter().all(|(_, s)| lemma_familyb_ok(s)) {
        return assign(g, |_, w| family_b(w)).map(|c| (TheoremId::Thm10Ii, c));
    }
    None
}

fn union_form(forms: &[&CanonicalForm]) -> Result<CanonicalForm> {
    let mut m = Branched1Manifold::default();
    for f in forms {
        m = m.union(Branched1Manifold::parse(f.as_str())?);
    }
    Ok(m.canonical())
}

/// Check a certificate against the block model: every edge gets a
/// connected form of its weight, and at every vertex the union of incoming
/// forms and the union of outgoing forms are the two boundaries of some
/// block (with passageways) for its label.
pub fn verify_certificate(g: &LyapunovGraph, certificate: &Certificate) -> Result<bool> {
    for (i, e) in g.edges.iter().enumerate() {
        let form = certificate.get(&i).ok_or(GsError::MissingAssignment(i))?;
        let m = Branched1Manifold::parse(form.as_str())?;
        if m.components.len() != 1 || m.weight().1 != e.weight {
            return Ok(false);
        }
    }
    for (&v, &label) in &g.vertices {
        let ins: Vec<&CanonicalForm> = g.in_edges(v).iter().map(|i| &certificate[i]).collect();
        let outs: Vec<&CanonicalForm> = g.out_edges(v).iter().map(|i| &certificate[i]).collect();
        if !label_admits_pair(label, &union_form(&ins)?, &union_form(&outs)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Verify an assignment that gives each edge a form at its tail and a form
/// at its head; the two must be isomorphic for the edge to glue.
pub fn verify_end_forms(
    g: &LyapunovGraph,
    ends: &BTreeMap<usize, (CanonicalForm, CanonicalForm)>,
) -> Result<bool> {
    let mut cert = Certificate::new();
    for i in 0..g.edges.len() {
        let (tail, head) = ends.get(&i).ok_or(GsError::MissingAssignment(i))?;
        let t = Branched1Manifold::parse(tail.as_str())?;
        let h = Branched1Manifold::parse(head.as_str())?;
        if !crate::branched::is_isomorphic(&t, &h) {
            return Ok(false);
        }
        cert.insert(i, t.canonical());
    }
    verify_certificate(g, &cert)
}

/// Passageways a vertex needs for its weights, or `None` if the weights
/// carry fewer branch points than the folds of the singularity.
fn passageways_needed(sg: &SemiGraph) -> Option<u32> {
    let (fin, _) = fold_degrees(sg.label.ty, sg.label.nature);
    let bp: i64 = sg.in_weights.iter().map(|&w| w as i64 - 1).sum();
    u32::try_from(bp - fin as i64).ok()
}

/// Largest passageway count for which certificates of a label are checked
/// against the block model inside [`realize`].
pub fn verification_budget(ty: SingularityType, nature: Nature) -> u32 {
    match (ty, nature) {
        (SingularityType::T, _) | (SingularityType::D, Nature::SSS | Nature::SSU) => 3,
        _ => 5,
    }
}

fn verification_feasible(g: &LyapunovGraph) -> bool {
    semigraphs(g).iter().all(|(_, s)| {
        passageways_needed(s).map_or(true, |k| k <= verification_budget(s.label.ty, s.label.nature))
    })
}

/// Outcome of the bounded assignment search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Certificate),
    Exhausted(Witness),
    BoundExceeded,
}

/// Allowed form tuples for one vertex, indexed like `edges`.
struct VertexTable {
    vertex: u32,
    edges: Vec<usize>,
    tuples: Vec<Vec<CanonicalForm>>,
}

fn components_of(form: &CanonicalForm) -> Vec<CanonicalForm> {
    if form.as_str().is_empty() {
        Vec::new()
    } else {
        form.as_str()
            .split('|')
            .map(|c| CanonicalForm(c.to_string()))
            .collect()
    }
}

fn form_weight(form: &CanonicalForm) -> u32 {
    Branched1Manifold::parse(form.as_str())
        .map(|m| m.weight().1)
        .unwrap_or(0)
}

/// All ways to hand the components to edges of equal weight.
fn distribute(components: &[CanonicalForm], weights: &[u32]) -> Vec<Vec<CanonicalForm>> {
    let mut out = BTreeSet::new();
    let mut used = vec![false; components.len()];
    let mut acc = Vec::new();
    fn rec(
        i: usize,
        components: &[CanonicalForm],
        weights: &[u32],
        used: &mut Vec<bool>,
        acc: &mut Vec<CanonicalForm>,
        out: &mut BTreeSet<Vec<CanonicalForm>>,
    ) {
        if i == weights.len() {
            out.insert(acc.clone());
            return;
        }
        for j in 0..components.len() {
            if !used[j] && form_weight(&components[j]) == weights[i] {
                used[j] = true;
                acc.push(components[j].clone());
                rec(i + 1, components, weights, used, acc, out);
                acc.pop();
                used[j] = false;
            }
        }
    }
    if components.len() == weights.len() {
        rec(0, components, weights, &mut used, &mut acc, &mut out);
    }
    out.into_iter().collect()
}

fn vertex_table(g: &LyapunovGraph, v: u32) -> VertexTable {
    let label = g.vertices[&v];
    let ins = g.in_edges(v);
    let outs = g.out_edges(v);
    let in_w: Vec<u32> = ins.iter().map(|&i| g.edges[i].weight).collect();
    let out_w: Vec<u32> = outs.iter().map(|&i| g.edges[i].weight).collect();
    let sg = SemiGraph::new(label, in_w.clone(), out_w.clone());
    let mut edges = ins.clone();
    edges.extend(outs.iter().copied());
    let mut tuples = Vec::new();
    if let Some(k) = passageways_needed(&sg) {
        for (plus, minus) in boundary_pairs_at(label, k) {
            let pc = components_of(&plus);
            let mc = components_of(&minus);
            let ps = distribute(&pc, &in_w);
            if ps.is_empty() {
                continue;
            }
            let ms = distribute(&mc, &out_w);
            for p in &ps {
                for m in &ms {
                    let mut t = p.clone();
                    t.extend(m.iter().cloned());
                    tuples.push(t);
                }
            }
        }
    }
    tuples.sort();
    tuples.dedup();
    VertexTable {
        vertex: v,
        edges,
        tuples,
    }
}

/// Exhaustive search for a certificate among all assignments of connected
/// forms with weight at most `bound`, relative to the block model.
pub fn search_assignment(g: &LyapunovGraph, bound: u32) -> SearchOutcome {
    search_assignment_filtered(g, bound, |_, _| true)
}

/// [`search_assignment`] with the forms allowed on each edge narrowed by
/// `allow(edge, form)`.
pub fn search_assignment_filtered(
    g: &LyapunovGraph,
    bound: u32,
    allow: impl Fn(usize, &CanonicalForm) -> bool,
) -> SearchOutcome {
    if g.edges.iter().any(|e| e.weight > bound) {
        return SearchOutcome::BoundExceeded;
    }
    let domains: BTreeMap<u32, BTreeSet<CanonicalForm>> = g
        .edges
        .iter()
        .map(|e| e.weight)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(|w| (w, connected_forms(w).into_iter().collect()))
        .collect();
    let mut tables: Vec<VertexTable> = g.vertices.keys().map(|&v| vertex_table(g, v)).collect();
    for t in &mut tables {
        t.tuples.retain(|tup| {
            tup.iter()
                .zip(&t.edges)
                .all(|(f, &e)| domains[&g.edges[e].weight].contains(f) && allow(e, f))
        });
    }
    if let Some(t) = tables.iter().find(|t| t.tuples.is_empty()) {
        return SearchOutcome::Exhausted(Witness {
            vertices: vec![t.vertex],
            edges: t.edges.clone(),
        });
    }
    tables.sort_by_key(|t| (t.tuples.len(), t.vertex));
    let mut assignment: BTreeMap<usize, CanonicalForm> = BTreeMap::new();
    let mut failed: BTreeSet<u32> = BTreeSet::new();
    if backtrack(&tables, 0, &mut assignment, &mut failed) {
        let mut cert = assignment;
        for (i, e) in g.edges.iter().enumerate() {
            if !cert.contains_key(&i) {
                // Unconstrained edge (no endpoint vertex cannot occur in a
                // valid graph); take the first form of its weight.
                let first = domains[&e.weight].iter().next().cloned().expect("nonempty domain");
                cert.insert(i, first);
            }
        }
        SearchOutcome::Found(cert)
    } else {
        let vertices: Vec<u32> = failed.into_iter().collect();
        let edges: BTreeSet<usize> = tables
            .iter()
            .filter(|t| vertices.contains(&t.vertex))
            .flat_map(|t| t.edges.iter().copied())
            .collect();
        SearchOutcome::Exhausted(Witness {
            vertices,
            edges: edges.into_iter().collect(),
        })
    }
}

fn backtrack(
    tables: &[VertexTable],
    i: usize,
    assignment: &mut BTreeMap<usize, CanonicalForm>,
    failed: &mut BTreeSet<u32>,
) -> bool {
    let Some(t) = tables.get(i) else {
        return true;
    };
    let mut any = false;
    for tup in &t.tuples {
        let consistent = t
            .edges
            .iter()
            .zip(tup)
            .all(|(e, f)| assignment.get(e).map_or(true, |a| a == f));
        if !consistent {
            continue;
        }
        any = true;
        let mut added = Vec::new();
        for (&e, f) in t.edges.iter().zip(tup) {
            if !assignment.contains_key(&e) {
                assignment.insert(e, f.clone());
                added.push(e);
            }
        }
        if backtrack(tables, i + 1, assignment, failed) {
            return true;
        }
        for e in added {
            assignment.remove(&e);
        }
    }
    if !any {
        failed.insert(t.vertex);
    }
    false
}

fn local_failure(g: &LyapunovGraph) -> Option<RealizationVerdict> {
    let status = classify_graph(g);
    let bad: Vec<(u32, LocalVerdict)> = status
        .verdicts
        .iter()
        .filter(|(_, v)| !v.is_yes())
        .map(|(&k, &v)| (k, v))
        .collect();
    if bad.is_empty() {
        return None;
    }
    let reason = bad
        .iter()
        .map(|(v, verdict)| format!("vertex {v}: {verdict}"))
        .collect::<Vec<_>>()
        .join("; ");
    let vertices: Vec<u32> = bad.iter().map(|(v, _)| *v).collect();
    let edges: BTreeSet<usize> = vertices
        .iter()
        .flat_map(|&v| g.in_edges(v).into_iter().chain(g.out_edges(v)))
        .collect();
    Some(RealizationVerdict::NotRealizable {
        witness: Witness {
            vertices,
            edges: edges.into_iter().collect(),
        },
        reason: format!("local: {reason}"),
    })
}

/// Decide realizability: necessary checks, sufficient conditions in a
/// fixed order, then the optional bounded search.
pub fn realize(g: &LyapunovGraph, search_bound: Option<u32>) -> RealizationVerdict {
    let report = validate_graph(g);
    if !report.is_valid() {
        let reason = report
            .violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ");
        return RealizationVerdict::NotRealizable {
            witness: Witness::default(),
            reason: format!("invalid graph: {reason}"),
        };
    }
    if let Some(v) = local_failure(g) {
        return v;
    }
    if g.is_closed() {
        if !fold_balance(g).unwrap_or(false) {
            return RealizationVerdict::NotRealizable {
                witness: Witness {
                    vertices: g.vertices.keys().copied().collect(),
                    edges: Vec::new(),
                },
                reason: "fold balance fails".into(),
            };
        }
        let chi = euler_gs(g).expect("closed graph");
        if !chi.is_integer() {
            return RealizationVerdict::NotRealizable {
                witness: Witness::default(),
                reason: format!("Euler characteristic {chi} is not an integer"),
            };
        }
        let feasible = verification_feasible(g);
        let candidates: [(TheoremId, fn(&LyapunovGraph) -> Option<Certificate>); 4] = [
            (TheoremId::Thm6, check_minimal_case),
            (TheoremId::Thm7, check_linear),
            (TheoremId::Thm8, check_blend),
            (TheoremId::Thm9, check_rcw),
        ];
        let mut produced: Vec<(TheoremId, Certificate)> = candidates
            .iter()
            .filter_map(|(id, f)| f(g).map(|c| (*id, c)))
            .collect();
        if let Some(fam) = check_families(g) {
            produced.push(fam);
        }
        for (theorem, certificate) in produced {
            if !feasible {
                return RealizationVerdict::RealizableBy {
                    theorem,
                    certificate,
                    verified: false,
                };
            }
            if verify_certificate(g, &certificate).unwrap_or(false) {
                return RealizationVerdict::RealizableBy {
                    theorem,
                    certificate,
                    verified: true,
                };
            }
        }
    }
    match search_bound {
        None => RealizationVerdict::Unknown {
            searched_weight_bound: None,
        },
        Some(bound) => match search_assignment(g, bound) {
            SearchOutcome::Found(certificate) => RealizationVerdict::RealizableBy {
                theorem: TheoremId::Search,
                certificate,
                verified: true,
            },
            SearchOutcome::Exhausted(witness) => RealizationVerdict::NotRealizable {
                witness,
                reason: format!("no boundary assignment with weights up to {bound} fits the block model"),
            },
            SearchOutcome::BoundExceeded => RealizationVerdict::Unknown {
                searched_weight_bound: Some(bound),
            },
        },
    }
}

/// Edges with an open end, for reporting.
pub fn open_edges(g: &LyapunovGraph) -> Vec<usize> {
    g.edges
        .iter()
        .enumerate()
        .filter(|(_, e)| e.from == Endpoint::Open || e.to == Endpoint::Open)
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gs_model::VertexLabel;
    use Nature::*;
    use SingularityType as T;

    fn lbl(ty: SingularityType, n: Nature) -> VertexLabel {
        VertexLabel::new(ty, n).unwrap()
    }

    fn sphere() -> LyapunovGraph {
        let mut g = LyapunovGraph::new();
        g.add_vertex(0, lbl(T::R, R));
        g.add_vertex(1, lbl(T::R, A));
        g.connect(0, 1, 1);
        g
    }

    #[test]
    fn sphere_is_minimal_and_realized_by_thm6() {
        let g = sphere();
        let st = classify_graph(&g);
        assert!(st.is_gs && st.is_minimal_gs);
        match realize(&g, None) {
            RealizationVerdict::RealizableBy { theorem, certificate, verified } => {
                assert_eq!(theorem, TheoremId::Thm6);
                assert!(verified);
                assert_eq!(certificate[&0].as_str(), "O");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn triple_pair_is_minimal() {
        let mut g = LyapunovGraph::new();
        g.add_vertex(0, lbl(T::T, R));
        g.add_vertex(1, lbl(T::T, A));
        g.connect(0, 1, 7);
        let cert = check_minimal_case(&g).unwrap();
        assert!(verify_certificate(&g, &cert).unwrap());
    }

    #[test]
    fn missing_assignment_is_an_error() {
        let g = sphere();
        assert_eq!(
            verify_certificate(&g, &Certificate::new()),
            Err(GsError::MissingAssignment(0))
        );
    }

    #[test]
    fn lemma_examples() {
        let s = |ty, n, i: &[u32], o: &[u32]| SemiGraph::new(lbl(ty, n), i.to_vec(), o.to_vec());
        assert!(!lemma_firstfamily_ok(&s(T::D, SA, &[4], &[1, 1])));
        assert!(lemma_firstfamily_ok(&s(T::D, SSS, &[5], &[1, 1, 3])));
        assert!(!lemma_firstfamily_ok(&s(T::R, A, &[3], &[])));
        assert!(!lemma_familyb_ok(&s(T::W, SS, &[3], &[1, 2])));
        assert!(lemma_familyb_ok(&s(T::R, S, &[5], &[3, 3])));
        assert!(!lemma_familyb_ok(&s(T::R, S, &[5], &[2, 4])));
        assert!(lemma_familyb_ok(&s(T::D, SSS, &[4, 2], &[3, 1])));
    }
}
