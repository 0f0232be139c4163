//! Lyapunov graphs labelled with Gutierrez-Sotomayor singularities.
//!
//! This module holds the data model (singularity types, natures, labelled
//! directed acyclic multigraphs and their single-vertex semi-graphs) together
//! with the arithmetic that only depends on the labels: Conley indices, the
//! Poincare-Hopf residual, the degree bounds, fold accounting and the two
//! Euler characteristic formulas.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::error::{GsError, Result};

/// Local chart class of a singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SingularityType {
    /// Regular plane.
    R,
    /// Cone.
    C,
    /// Whitney umbrella.
    W,
    /// Double crossing of two planes.
    D,
    /// Triple crossing of three planes.
    T,
}

impl SingularityType {
    pub const ALL: [SingularityType; 5] = [Self::R, Self::C, Self::W, Self::D, Self::T];

    /// Natures admissible for this type.
    pub fn natures(self) -> &'static [Nature] {
        use Nature::*;
        match self {
            Self::R | Self::C => &[A, S, R],
            Self::W => &[A, SS, SU, R],
            Self::D => &[A, SA, SSS, SSU, SR, R],
            Self::T => &[A, SSA, SSR, R],
        }
    }

    pub fn admits(self, nature: Nature) -> bool {
        self.natures().contains(&nature)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::R => "R",
            Self::C => "C",
            Self::W => "W",
            Self::D => "D",
            Self::T => "T",
        }
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SingularityType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "R" => Ok(Self::R),
            "C" => Ok(Self::C),
            "W" => Ok(Self::W),
            "D" => Ok(Self::D),
            "T" => Ok(Self::T),
            _ => Err(format!("unknown singularity type `{s}`")),
        }
    }
}

/// Dynamical character of a singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Nature {
    /// Attracting.
    A,
    /// Saddle.
    S,
    /// Repelling.
    R,
    /// Whitney saddle whose singular ray is stable (`s_s`).
    SS,
    /// Whitney saddle whose singular ray is unstable (`s_u`).
    SU,
    /// Double crossing: saddle plane and attracting plane.
    SA,
    /// Double crossing: saddle plane and repelling plane.
    SR,
    /// Double crossing: two saddle planes sharing their stable line (`ss_s`).
    SSS,
    /// Double crossing: two saddle planes sharing their unstable line (`ss_u`).
    SSU,
    /// Triple crossing: two saddle planes and an attracting plane.
    SSA,
    /// Triple crossing: two saddle planes and a repelling plane.
    SSR,
}

impl Nature {
    pub const ALL: [Nature; 11] = [
        Self::A,
        Self::S,
        Self::R,
        Self::SS,
        Self::SU,
        Self::SA,
        Self::SR,
        Self::SSS,
        Self::SSU,
        Self::SSA,
        Self::SSR,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::A => "a",
            Self::S => "s",
            Self::R => "r",
            Self::SS => "s_s",
            Self::SU => "s_u",
            Self::SA => "sa",
            Self::SR => "sr",
            Self::SSS => "ss_s",
            Self::SSU => "ss_u",
            Self::SSA => "ssa",
            Self::SSR => "ssr",
        }
    }

    /// True for the natures obtained by reversing the flow of an
    /// "attracting-side" nature (`r`, `s_u`, `sr`, `ss_u`, `ssr`).
    pub fn is_reversed_side(self) -> bool {
        matches!(self, Self::R | Self::SU | Self::SR | Self::SSU | Self::SSR)
    }
}

impl fmt::Display for Nature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Nature {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        Nature::ALL
            .into_iter()
            .find(|n| n.name() == lower)
            .ok_or_else(|| format!("unknown nature `{s}`"))
    }
}

/// Reverse the flow: `a<->r`, `s<->s`, `s_s<->s_u`, `sa<->sr`, `ss_s<->ss_u`, `ssa<->ssr`.
pub fn reverse_nature(n: Nature) -> Nature {
    use Nature::*;
    match n {
        A => R,
        R => A,
        S => S,
        SS => SU,
        SU => SS,
        SA => SR,
        SR => SA,
        SSS => SSU,
        SSU => SSS,
        SSA => SSR,
        SSR => SSA,
    }
}

/// Ranks of the homology Conley index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConleyIndex {
    pub h0: u32,
    pub h1: u32,
    pub h2: u32,
}

impl ConleyIndex {
    pub const fn new(h0: u32, h1: u32, h2: u32) -> Self {
        Self { h0, h1, h2 }
    }

    /// Alternating sum `h0 - h1 + h2`.
    pub fn alternating_sum(self) -> i64 {
        self.h0 as i64 - self.h1 as i64 + self.h2 as i64
    }
}

/// A vertex label: singularity type together with its nature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexLabel {
    pub ty: SingularityType,
    pub nature: Nature,
}

impl VertexLabel {
    /// Build a label, rejecting inadmissible `(type, nature)` pairs.
    pub fn new(ty: SingularityType, nature: Nature) -> Result<Self> {
        if ty.admits(nature) {
            Ok(Self { ty, nature })
        } else {
            Err(GsError::InadmissibleNature {
                ty: ty.to_string(),
                nature: nature.to_string(),
            })
        }
    }

    pub fn is_admissible(self) -> bool {
        self.ty.admits(self.nature)
    }

    pub fn reversed(self) -> Self {
        Self {
            ty: self.ty,
            nature: reverse_nature(self.nature),
        }
    }

    /// All 21 admissible labels, ordered by type then nature.
    pub fn all() -> Vec<VertexLabel> {
        SingularityType::ALL
            .iter()
            .flat_map(|&ty| ty.natures().iter().map(move |&nature| VertexLabel { ty, nature }))
            .collect()
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.ty, self.nature)
    }
}

/// Endpoint of an edge: a vertex or a dangling (open) end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    Vertex(u32),
    Open,
}

impl Endpoint {
    pub fn vertex(self) -> Option<u32> {
        match self {
            Endpoint::Vertex(v) => Some(v),
            Endpoint::Open => None,
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Vertex(v) => write!(f, "{v}"),
            Endpoint::Open => f.write_str("OPEN"),
        }
    }
}

/// A directed weighted edge. The flow runs from `from` (higher Lyapunov
/// level) to `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: Endpoint,
    pub to: Endpoint,
    pub weight: u32,
}

impl Edge {
    pub fn new(from: Endpoint, to: Endpoint, weight: u32) -> Self {
        Self { from, to, weight }
    }
}

/// A finite directed acyclic multigraph whose vertices carry GS labels and
/// whose edges carry first Betti numbers. Edges may dangle.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LyapunovGraph {
    pub vertices: BTreeMap<u32, VertexLabel>,
    pub edges: Vec<Edge>,
}

impl LyapunovGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Insert a vertex, returning its id for chaining.
    pub fn add_vertex(&mut self, id: u32, label: VertexLabel) -> u32 {
        self.vertices.insert(id, label);
        id
    }

    /// Append an edge and return its index.
    pub fn add_edge(&mut self, from: Endpoint, to: Endpoint, weight: u32) -> usize {
        self.edges.push(Edge::new(from, to, weight));
        self.edges.len() - 1
    }

    /// Convenience for an edge between two vertices.
    pub fn connect(&mut self, from: u32, to: u32, weight: u32) -> usize {
        self.add_edge(Endpoint::Vertex(from), Endpoint::Vertex(to), weight)
    }

    /// Closed iff no edge has an open endpoint.
    pub fn is_closed(&self) -> bool {
        self.first_open_edge().is_none()
    }

    fn first_open_edge(&self) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| e.from == Endpoint::Open || e.to == Endpoint::Open)
    }

    pub(crate) fn require_closed(&self) -> Result<()> {
        match self.first_open_edge() {
            Some(i) => Err(GsError::NotClosed(i)),
            None => Ok(()),
        }
    }

    /// Indices of edges entering `v`, in input order.
    pub fn in_edges(&self, v: u32) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].to == Endpoint::Vertex(v))
            .collect()
    }

    /// Indices of edges leaving `v`, in input order.
    pub fn out_edges(&self, v: u32) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].from == Endpoint::Vertex(v))
            .collect()
    }

    pub fn degree(&self, v: u32) -> usize {
        self.in_edges(v).len() + self.out_edges(v).len()
    }

    /// The graph with every edge reversed and every nature reversed.
    pub fn reversed(&self) -> LyapunovGraph {
        LyapunovGraph {
            vertices: self.vertices.iter().map(|(&id, l)| (id, l.reversed())).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge::new(e.to, e.from, e.weight))
                .collect(),
        }
    }
}

/// A single vertex together with the weights of its incident edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemiGraph {
    pub label: VertexLabel,
    pub in_weights: Vec<u32>,
    pub out_weights: Vec<u32>,
}

impl SemiGraph {
    pub fn new(label: VertexLabel, in_weights: Vec<u32>, out_weights: Vec<u32>) -> Self {
        Self {
            label,
            in_weights,
            out_weights,
        }
    }

    pub fn e_plus(&self) -> usize {
        self.in_weights.len()
    }

    pub fn e_minus(&self) -> usize {
        self.out_weights.len()
    }

    pub fn degree(&self) -> usize {
        self.e_plus() + self.e_minus()
    }

    /// Total entering weight.
    pub fn b_plus(&self) -> i64 {
        self.in_weights.iter().map(|&w| w as i64).sum()
    }

    /// Total exiting weight.
    pub fn b_minus(&self) -> i64 {
        self.out_weights.iter().map(|&w| w as i64).sum()
    }

    /// Swap the weight lists and reverse the nature.
    pub fn reversed(&self) -> SemiGraph {
        SemiGraph {
            label: self.label.reversed(),
            in_weights: self.out_weights.clone(),
            out_weights: self.in_weights.clone(),
        }
    }
}

/// One structural defect found by [`validate_graph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    OrientedCycle { vertices: Vec<u32> },
    WeightBelowOne { edge: usize },
    InadmissibleLabel { vertex: u32, label: VertexLabel },
    UnknownEndpoint { edge: usize, vertex: u32 },
    SelfLoop { edge: usize },
    OpenToOpen { edge: usize },
    IsolatedVertex { vertex: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OrientedCycle { vertices } => {
                let ids: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
                write!(f, "oriented cycle through vertices {}", ids.join(", "))
            }
            Violation::WeightBelowOne { edge } => write!(f, "edge {edge}: weight >= 1 required"),
            Violation::InadmissibleLabel { vertex, label } => {
                write!(f, "vertex {vertex}: inadmissible nature {label}")
            }
            Violation::UnknownEndpoint { edge, vertex } => {
                write!(f, "edge {edge}: unknown vertex {vertex}")
            }
            Violation::SelfLoop { edge } => write!(f, "edge {edge}: oriented cycle (self-loop)"),
            Violation::OpenToOpen { edge } => write!(f, "edge {edge}: both endpoints are open"),
            Violation::IsolatedVertex { vertex } => write!(f, "vertex {vertex}: no incident edges"),
        }
    }
}

/// Result of [`validate_graph`]; empty iff the graph is structurally valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check acyclicity, weights, labels and endpoint references.
pub fn validate_graph(g: &LyapunovGraph) -> ValidationReport {
    let mut violations = Vec::new();
    for (&id, &label) in &g.vertices {
        if !label.is_admissible() {
            violations.push(Violation::InadmissibleLabel { vertex: id, label });
        }
    }
    let mut touched = BTreeSet::new();
    for (i, e) in g.edges.iter().enumerate() {
        if e.weight < 1 {
            violations.push(Violation::WeightBelowOne { edge: i });
        }
        if e.from == Endpoint::Open && e.to == Endpoint::Open {
            violations.push(Violation::OpenToOpen { edge: i });
        }
        for v in [e.from, e.to].into_iter().filter_map(Endpoint::vertex) {
            if g.vertices.contains_key(&v) {
                touched.insert(v);
            } else {
                violations.push(Violation::UnknownEndpoint { edge: i, vertex: v });
            }
        }
        if e.from != Endpoint::Open && e.from == e.to {
            violations.push(Violation::SelfLoop { edge: i });
        }
    }
    for &id in g.vertices.keys() {
        if !touched.contains(&id) {
            violations.push(Violation::IsolatedVertex { vertex: id });
        }
    }
    if let Some(cycle) = find_cycle(g) {
        violations.push(Violation::OrientedCycle { vertices: cycle });
    }
    ValidationReport { violations }
}

/// Kahn's algorithm; returns the vertices left over when a cycle blocks the sort.
fn find_cycle(g: &LyapunovGraph) -> Option<Vec<u32>> {
    let mut indeg: BTreeMap<u32, usize> = g.vertices.keys().map(|&v| (v, 0)).collect();
    let mut succ: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for e in &g.edges {
        if let (Endpoint::Vertex(a), Endpoint::Vertex(b)) = (e.from, e.to) {
            if a == b || !indeg.contains_key(&a) || !indeg.contains_key(&b) {
                continue;
            }
            *indeg.get_mut(&b).unwrap() += 1;
            succ.entry(a).or_default().push(b);
        }
    }
    let mut ready: Vec<u32> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
    let mut removed = BTreeSet::new();
    while let Some(v) = ready.pop() {
        removed.insert(v);
        for &w in succ.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            let d = indeg.get_mut(&w).unwrap();
            *d -= 1;
            if *d == 0 {
                ready.push(w);
            }
        }
    }
    let rest: Vec<u32> = indeg.keys().filter(|v| !removed.contains(v)).copied().collect();
    (!rest.is_empty()).then_some(rest)
}

/// Project the graph onto vertex `v` and its incident edges.
pub fn semigraph(g: &LyapunovGraph, v: u32) -> Result<SemiGraph> {
    let label = *g.vertices.get(&v).ok_or(GsError::UnknownVertex(v))?;
    let in_weights: Vec<u32> = g.in_edges(v).into_iter().map(|i| g.edges[i].weight).collect();
    let out_weights: Vec<u32> = g.out_edges(v).into_iter().map(|i| g.edges[i].weight).collect();
    if in_weights.is_empty() && out_weights.is_empty() {
        return Err(GsError::DegreeZero(v));
    }
    Ok(SemiGraph::new(label, in_weights, out_weights))
}

/// Numerical Conley index of an admissible `(type, nature)` pair.
pub fn conley_index(ty: SingularityType, nature: Nature) -> Result<ConleyIndex> {
    use Nature::*;
    use SingularityType as T;
    let idx = match (ty, nature) {
        (_, A) => ConleyIndex::new(1, 0, 0),
        (T::R | T::C, S) => ConleyIndex::new(0, 1, 0),
        (T::R, R) => ConleyIndex::new(0, 0, 1),
        (T::C, R) => ConleyIndex::new(0, 1, 2),
        (T::W, SS) => ConleyIndex::new(0, 1, 0),
        (T::W, SU) => ConleyIndex::new(0, 0, 0),
        (T::W, R) => ConleyIndex::new(0, 0, 2),
        (T::D, SA) => ConleyIndex::new(0, 1, 0),
        (T::D, SSS) => ConleyIndex::new(0, 3, 0),
        (T::D, SSU) => ConleyIndex::new(0, 1, 0),
        (T::D, SR) => ConleyIndex::new(0, 0, 1),
        (T::D, R) => ConleyIndex::new(0, 0, 3),
        (T::T, SSA) => ConleyIndex::new(0, 1, 0),
        (T::T, SSR) => ConleyIndex::new(0, 1, 2),
        (T::T, R) => ConleyIndex::new(0, 0, 7),
        _ => {
            return Err(GsError::InadmissibleNature {
                ty: ty.to_string(),
                nature: nature.to_string(),
            })
        }
    };
    Ok(idx)
}

fn label_index(label: VertexLabel) -> ConleyIndex {
    conley_index(label.ty, label.nature).expect("labels are admissible")
}

/// Poincare-Hopf residual of a semi-graph; zero iff the condition holds.
pub fn ph_residual(sg: &SemiGraph) -> i64 {
    let own = label_index(sg.label).alternating_sum();
    let rev = label_index(sg.label.reversed()).alternating_sum();
    let boundary = sg.e_plus() as i64 - sg.b_plus() - sg.e_minus() as i64 + sg.b_minus();
    (own - rev) - boundary
}

/// Degree inequalities `e- - 1 <= h1` and `e+ - 1 <= h1*`, plus the rule that
/// attractors have no outgoing and repellers no incoming edges.
pub fn degree_bounds_ok(sg: &SemiGraph) -> bool {
    let own = label_index(sg.label);
    let rev = label_index(sg.label.reversed());
    // An attractor has no exit set and a repeller no entrance set.
    let sink_ok = own.h0 == 0 || sg.e_minus() == 0;
    let source_ok = rev.h0 == 0 || sg.e_plus() == 0;
    sink_ok
        && source_ok
        && sg.e_minus() as i64 - 1 <= own.h1 as i64
        && sg.e_plus() as i64 - 1 <= rev.h1 as i64
}

/// Folds having the singularity as omega-limit (`fin`) and as alpha-limit (`fout`).
pub fn fold_degrees(ty: SingularityType, nature: Nature) -> (u32, u32) {
    use Nature::*;
    use SingularityType as T;
    let fin = |ty: SingularityType, n: Nature| -> u32 {
        match (ty, n) {
            (T::W, A) | (T::W, SS) => 1,
            (T::D, A) | (T::D, SA) | (T::D, SSS) => 2,
            (T::T, A) => 6,
            (T::T, SSA) => 4,
            (T::T, SSR) => 2,
            _ => 0,
        }
    };
    (fin(ty, nature), fin(ty, reverse_nature(nature)))
}

/// Total number of folds meeting a singularity of the given type.
pub fn total_folds(ty: SingularityType) -> u32 {
    match ty {
        SingularityType::R | SingularityType::C => 0,
        SingularityType::W => 1,
        SingularityType::D => 2,
        SingularityType::T => 6,
    }
}

fn fold_sums(g: &LyapunovGraph) -> (u64, u64) {
    g.vertices.values().fold((0, 0), |(i, o), l| {
        let (fi, fo) = fold_degrees(l.ty, l.nature);
        (i + fi as u64, o + fo as u64)
    })
}

/// True iff the folds counted by omega-limits equal those counted by alpha-limits.
pub fn fold_balance(g: &LyapunovGraph) -> Result<bool> {
    g.require_closed()?;
    let (i, o) = fold_sums(g);
    Ok(i == o)
}

/// Euler characteristic as the alternating sum of Conley indices.
pub fn euler_conley(g: &LyapunovGraph) -> Result<i64> {
    g.require_closed()?;
    Ok(g.vertices.values().map(|&l| label_index(l).alternating_sum()).sum())
}

/// Counts of attracting, saddle and repelling natures carried by one label.
///
/// A double crossing carries two natures and a triple crossing three, e.g.
/// `D_ss_s` counts two saddles and `T_ssa` two saddles and one attractor.
pub fn nature_totals(label: VertexLabel) -> (u32, u32, u32) {
    use Nature::*;
    use SingularityType as T;
    match (label.ty, label.nature) {
        (T::R | T::C | T::W, A) => (1, 0, 0),
        (T::R | T::C, S) | (T::W, SS) | (T::W, SU) => (0, 1, 0),
        (T::R | T::C | T::W, R) => (0, 0, 1),
        (T::D, A) => (2, 0, 0),
        (T::D, SA) => (1, 1, 0),
        (T::D, SSS) | (T::D, SSU) => (0, 2, 0),
        (T::D, SR) => (0, 1, 1),
        (T::D, R) => (0, 0, 2),
        (T::T, A) => (3, 0, 0),
        (T::T, SSA) => (1, 2, 0),
        (T::T, SSR) => (0, 2, 1),
        (T::T, R) => (0, 0, 3),
        _ => (0, 0, 0),
    }
}

/// `a - s + r + W/2 + T` from explicit totals.
pub fn euler_gs_from_totals(a: u64, s: u64, r: u64, w: u64, t: u64) -> Rational64 {
    Rational64::from_integer(a as i64 - s as i64 + r as i64 + t as i64)
        + Rational64::new(w as i64, 2)
}

/// Euler characteristic from nature totals and the W and T vertex counts.
pub fn euler_gs(g: &LyapunovGraph) -> Result<Rational64> {
    g.require_closed()?;
    let (mut a, mut s, mut r, mut w, mut t) = (0u64, 0u64, 0u64, 0u64, 0u64);
    for &label in g.vertices.values() {
        let (na, ns, nr) = nature_totals(label);
        a += na as u64;
        s += ns as u64;
        r += nr as u64;
        match label.ty {
            SingularityType::W => w += 1,
            SingularityType::T => t += 1,
            _ => {}
        }
    }
    Ok(euler_gs_from_totals(a, s, r, w, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lbl(ty: SingularityType, n: Nature) -> VertexLabel {
        VertexLabel::new(ty, n).unwrap()
    }

    #[test]
    fn conley_table_spot_values() {
        use Nature::*;
        use SingularityType as T;
        assert_eq!(conley_index(T::R, S).unwrap(), ConleyIndex::new(0, 1, 0));
        assert_eq!(conley_index(T::T, R).unwrap(), ConleyIndex::new(0, 0, 7));
        assert_eq!(conley_index(T::W, R).unwrap(), ConleyIndex::new(0, 0, 2));
        assert!(conley_index(T::R, SA).is_err());
    }

    #[test]
    fn residual_examples() {
        use Nature::*;
        use SingularityType as T;
        assert_eq!(ph_residual(&SemiGraph::new(lbl(T::R, A), vec![1], vec![])), 0);
        assert_eq!(ph_residual(&SemiGraph::new(lbl(T::T, A), vec![7], vec![])), 0);
        assert_eq!(ph_residual(&SemiGraph::new(lbl(T::D, SSS), vec![4], vec![2])), 0);
        assert_eq!(ph_residual(&SemiGraph::new(lbl(T::D, SSS), vec![4], vec![3])), -1);
    }

    #[test]
    fn degree_bound_examples() {
        use Nature::*;
        use SingularityType as T;
        assert!(degree_bounds_ok(&SemiGraph::new(lbl(T::D, SSS), vec![1], vec![1; 4])));
        assert!(!degree_bounds_ok(&SemiGraph::new(lbl(T::D, SSS), vec![1], vec![1; 5])));
        assert!(!degree_bounds_ok(&SemiGraph::new(lbl(T::R, A), vec![1], vec![1])));
        assert!(!degree_bounds_ok(&SemiGraph::new(lbl(T::T, SSA), vec![1; 3], vec![1])));
    }

    #[test]
    fn fold_degree_examples() {
        use Nature::*;
        use SingularityType as T;
        assert_eq!(fold_degrees(T::T, SSA), (4, 2));
        assert_eq!(fold_degrees(T::R, S), (0, 0));
        assert_eq!(fold_degrees(T::D, R), (0, 2));
        for label in VertexLabel::all() {
            let (i, o) = fold_degrees(label.ty, label.nature);
            let bound = total_folds(label.ty);
            assert!(i <= bound && o <= bound, "{label}");
        }
    }

    #[test]
    fn validation_flags_cycles_and_weights() {
        use Nature::*;
        use SingularityType as T;
        let mut g = LyapunovGraph::new();
        g.add_vertex(1, lbl(T::R, S));
        g.add_vertex(2, lbl(T::R, S));
        g.connect(1, 2, 1);
        g.connect(2, 1, 0);
        let report = validate_graph(&g);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::OrientedCycle { .. })));
        assert!(report.violations.contains(&Violation::WeightBelowOne { edge: 1 }));
    }

    #[test]
    fn semigraph_projection() {
        use Nature::*;
        use SingularityType as T;
        let mut g = LyapunovGraph::new();
        g.add_vertex(0, lbl(T::R, R));
        g.add_vertex(1, lbl(T::D, SSS));
        g.add_vertex(9, lbl(T::R, A));
        g.connect(0, 1, 1);
        g.add_edge(Endpoint::Open, Endpoint::Vertex(1), 2);
        g.add_edge(Endpoint::Vertex(1), Endpoint::Open, 3);
        let sg = semigraph(&g, 1).unwrap();
        assert_eq!((sg.in_weights.clone(), sg.out_weights.clone()), (vec![1, 2], vec![3]));
        assert_eq!(semigraph(&g, 9), Err(GsError::DegreeZero(9)));
        assert_eq!(semigraph(&g, 4), Err(GsError::UnknownVertex(4)));
    }

    #[test]
    fn euler_reference_tuples() {
        assert_eq!(euler_gs_from_totals(3, 5, 2, 2, 0), Rational64::from_integer(1));
        assert_eq!(euler_gs_from_totals(2, 6, 2, 4, 0), Rational64::from_integer(0));
        assert_eq!(euler_gs(&LyapunovGraph::new()).unwrap(), Rational64::from_integer(0));
    }
}
