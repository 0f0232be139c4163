//! Distinguished branched 1-manifolds.
//!
//! A connected component is either a circle or a connected 4-regular
//! multigraph whose vertices are the branch points. Every vertex has four
//! ports; ports `0,1` form one transverse strand and ports `2,3` the other.
//! Plain isomorphism ignores the strands, the strand-sensitive mode keeps
//! them.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::canon::{canonical, ColoredGraph};
use crate::error::{GsError, Result};

/// Environment variable overriding the enumeration weight cap.
pub const ENUM_BOUND_ENV: &str = "GS_ENUM_BOUND";
/// Default enumeration weight cap.
pub const DEFAULT_ENUM_BOUND: u32 = 6;

/// One arc-end at a branch point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Port {
    pub vertex: u32,
    pub port: u8,
}

impl Port {
    pub const fn new(vertex: u32, port: u8) -> Self {
        Self { vertex, port }
    }
}

/// A connected 4-regular multigraph with strand data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossGraph {
    branch_points: u32,
    arcs: Vec<(Port, Port)>,
}

impl CrossGraph {
    /// Build from arcs given as port pairs; every port of every vertex must
    /// be used exactly once and the result must be connected.
    pub fn from_port_arcs(branch_points: u32, arcs: Vec<(Port, Port)>) -> Result<Self> {
        let bad = |msg: &str| GsError::BadEncoding(msg.to_string());
        if branch_points == 0 {
            return Err(bad("a branched component needs at least one branch point"));
        }
        let mut used = vec![[false; 4]; branch_points as usize];
        for &(a, b) in &arcs {
            for p in [a, b] {
                if p.vertex >= branch_points || p.port > 3 {
                    return Err(bad("port out of range"));
                }
                let slot = &mut used[p.vertex as usize][p.port as usize];
                if *slot {
                    return Err(bad("port used twice"));
                }
                *slot = true;
            }
        }
        if used.iter().any(|u| u.iter().any(|x| !x)) {
            return Err(bad("every branch point must have degree 4"));
        }
        let g = Self { branch_points, arcs };
        if !g.is_connected() {
            return Err(bad("a branched component must be connected"));
        }
        Ok(g)
    }

    /// Build from plain edges, assigning ports in order of appearance.
    pub fn from_edges(branch_points: u32, edges: &[(u32, u32)]) -> Result<Self> {
        let mut next = vec![0u8; branch_points as usize];
        let mut arcs = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= branch_points || b >= branch_points {
                return Err(GsError::BadEncoding(format!("vertex out of range in {a}:{b}")));
            }
            let pa = next[a as usize];
            next[a as usize] += 1;
            let pb = next[b as usize];
            next[b as usize] += 1;
            if pa > 3 || pb > 3 {
                return Err(GsError::BadEncoding("every branch point must have degree 4".into()));
            }
            arcs.push((Port::new(a, pa), Port::new(b, pb)));
        }
        Self::from_port_arcs(branch_points, arcs)
    }

    /// Build from closed walks; each visit of a walk to a vertex crosses it
    /// along one strand, so every vertex must be visited exactly twice.
    pub fn from_strand_cycles(branch_points: u32, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut visits = vec![0u8; branch_points as usize];
        let mut arcs = Vec::new();
        for cycle in cycles {
            let strands: Vec<u8> = cycle
                .iter()
                .map(|&v| {
                    let s = visits.get(v as usize).copied().unwrap_or(2);
                    if let Some(c) = visits.get_mut(v as usize) {
                        *c += 1;
                    }
                    s
                })
                .collect();
            if strands.iter().any(|&s| s > 1) {
                return Err(GsError::BadEncoding("vertex visited more than twice".into()));
            }
            for i in 0..cycle.len() {
                let j = (i + 1) % cycle.len();
                arcs.push((
                    Port::new(cycle[i], 2 * strands[i] + 1),
                    Port::new(cycle[j], 2 * strands[j]),
                ));
            }
        }
        Self::from_port_arcs(branch_points, arcs)
    }

    pub fn branch_points(&self) -> u32 {
        self.branch_points
    }

    pub fn port_arcs(&self) -> &[(Port, Port)] {
        &self.arcs
    }

    /// Arcs as plain vertex pairs.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        self.arcs.iter().map(|(a, b)| (a.vertex, b.vertex)).collect()
    }

    fn is_connected(&self) -> bool {
        let n = self.branch_points as usize;
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.arcs {
            adj[a.vertex as usize].push(b.vertex as usize);
            adj[b.vertex as usize].push(a.vertex as usize);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// A connected component of a distinguished branched 1-manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchedComponent {
    Circle,
    Graph(CrossGraph),
}

impl BranchedComponent {
    /// First Betti number: 1 for a circle, branch points + 1 otherwise.
    pub fn weight(&self) -> u32 {
        match self {
            BranchedComponent::Circle => 1,
            BranchedComponent::Graph(g) => g.branch_points + 1,
        }
    }

    pub fn branch_points(&self) -> u32 {
        self.weight() - 1
    }

    /// Number of arcs; a circle counts as one arc.
    pub fn arc_count(&self) -> usize {
        match self {
            BranchedComponent::Circle => 1,
            BranchedComponent::Graph(g) => g.arcs.len(),
        }
    }

    pub fn from_edges(branch_points: u32, edges: &[(u32, u32)]) -> Result<Self> {
        if branch_points == 0 && edges.is_empty() {
            return Ok(BranchedComponent::Circle);
        }
        CrossGraph::from_edges(branch_points, edges).map(BranchedComponent::Graph)
    }

    /// Canonical text of this component in the given mode.
    pub fn canonical_text(&self, mode: IsoMode) -> String {
        match (self, mode) {
            (BranchedComponent::Circle, _) => "O".to_string(),
            (BranchedComponent::Graph(g), IsoMode::Plain) => plain_text(g),
            (BranchedComponent::Graph(g), IsoMode::StrandSensitive) => strand_text(g),
        }
    }
}

/// Isomorphism notion used for comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IsoMode {
    /// Multigraph isomorphism of the underlying pseudo-graphs.
    #[default]
    Plain,
    /// Isomorphisms must also map transverse strands to strands.
    StrandSensitive,
}

fn plain_text(g: &CrossGraph) -> String {
    let mut cg = ColoredGraph::new(g.branch_points as usize);
    for &(a, b) in &g.edges() {
        cg.add_edge(a as usize, b as usize, 0);
    }
    let lab = canonical(&cg).labeling;
    let mut es: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (lab[a as usize], lab[b as usize]);
            (x.min(y), x.max(y))
        })
        .collect();
    es.sort_unstable();
    es.iter()
        .map(|(a, b)| format!("{a}:{b}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn strand_text(g: &CrossGraph) -> String {
    // Each branch point becomes two strand nodes joined by a marked edge;
    // arcs attach to the strand node of their port.
    let n = g.branch_points as usize;
    let mut cg = ColoredGraph::new(2 * n);
    for v in 0..n {
        cg.add_edge(2 * v, 2 * v + 1, 1);
    }
    let node = |p: Port| 2 * p.vertex as usize + (p.port as usize / 2);
    for &(a, b) in &g.arcs {
        cg.add_edge(node(a), node(b), 0);
    }
    let code = canonical(&cg).code;
    let parts: Vec<String> = code.iter().map(|c| c.to_string()).collect();
    format!("S{}", parts.join("."))
}

/// Disjoint union of branched components. The empty union stands for the
/// absent side of an attracting or repelling block.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Branched1Manifold {
    pub components: Vec<BranchedComponent>,
}

/// Canonical text encoding of a manifold up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(pub String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Branched1Manifold {
    pub fn new(components: Vec<BranchedComponent>) -> Self {
        Self { components }
    }

    pub fn circle() -> Self {
        Self::new(vec![BranchedComponent::Circle])
    }

    pub fn single(c: BranchedComponent) -> Self {
        Self::new(vec![c])
    }

    /// Disjoint union.
    pub fn union(mut self, other: Branched1Manifold) -> Self {
        self.components.extend(other.components);
        self
    }

    /// Per-component first Betti numbers and their total.
    pub fn weight(&self) -> (Vec<u32>, u32) {
        let ws: Vec<u32> = self.components.iter().map(BranchedComponent::weight).collect();
        let total = ws.iter().sum();
        (ws, total)
    }

    /// Canonical encoding in plain mode.
    pub fn canonical(&self) -> CanonicalForm {
        self.canonical_with(IsoMode::Plain)
    }

    pub fn canonical_with(&self, mode: IsoMode) -> CanonicalForm {
        let mut parts: Vec<String> = self
            .components
            .iter()
            .map(|c| c.canonical_text(mode))
            .collect();
        parts.sort();
        CanonicalForm(parts.join("|"))
    }

    /// Parse the plain canonical text encoding (any vertex numbering is accepted).
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::default());
        }
        let mut components = Vec::new();
        for part in text.split('|') {
            let part = part.trim();
            if part == "O" {
                components.push(BranchedComponent::Circle);
                continue;
            }
            let mut edges = Vec::new();
            for e in part.split(',') {
                let (a, b) = e
                    .split_once(':')
                    .ok_or_else(|| GsError::BadEncoding(text.to_string()))?;
                let a: u32 = a.trim().parse().map_err(|_| GsError::BadEncoding(text.to_string()))?;
                let b: u32 = b.trim().parse().map_err(|_| GsError::BadEncoding(text.to_string()))?;
                edges.push((a, b));
            }
            let n = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
            components.push(BranchedComponent::from_edges(n, &edges)?);
        }
        Ok(Self::new(components))
    }
}

/// Result of smoothing a multigraph whose vertices have degree 2 or 4.
#[derive(Debug, Clone)]
pub(crate) struct Smoothed {
    pub manifold: Branched1Manifold,
    /// Component index (into `manifold.components`) of every input node that
    /// has at least one incident edge.
    pub component_of: Vec<Option<usize>>,
}

/// Erase degree-2 vertices of a multigraph whose nodes have degree 2 or 4,
/// turning it into a branched 1-manifold. Cycles without degree-4 nodes
/// become circles.
pub(crate) fn smooth(n: usize, edges: &[(usize, usize)]) -> Smoothed {
    let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(a, b)) in edges.iter().enumerate() {
        inc[a].push((id, 0));
        inc[b].push((id, 1));
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let root: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let branch: Vec<bool> = inc.iter().map(|l| l.len() == 4).collect();
    debug_assert!(inc.iter().all(|l| matches!(l.len(), 0 | 2 | 4)));

    // Trace arcs between branch nodes through degree-2 nodes.
    let end_of = |id: usize, side: usize| if side == 0 { edges[id].0 } else { edges[id].1 };
    let mut used = vec![false; edges.len()];
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for v in (0..n).filter(|&v| branch[v]) {
        for &(id, side) in &inc[v] {
            if used[id] {
                continue;
            }
            used[id] = true;
            let (mut cur_id, mut cur_side) = (id, 1 - side);
            loop {
                let w = end_of(cur_id, cur_side);
                if branch[w] {
                    arcs.push((v, w));
                    break;
                }
                let &(next_id, next_side) = inc[w]
                    .iter()
                    .find(|&&(i, s)| (i, s) != (cur_id, cur_side))
                    .expect("degree-2 node has a second half-edge");
                used[next_id] = true;
                cur_id = next_id;
                cur_side = 1 - next_side;
            }
        }
    }

    let mut roots: Vec<usize> = (0..n)
        .filter(|&v| !inc[v].is_empty())
        .map(|v| root[v])
        .collect();
    roots.sort_unstable();
    roots.dedup();
    let mut built: Vec<(String, BranchedComponent, usize)> = Vec::new();
    for &r in &roots {
        let members: Vec<usize> = (0..n)
            .filter(|&v| !inc[v].is_empty() && root[v] == r)
            .collect();
        let bps: Vec<usize> = members.iter().copied().filter(|&v| branch[v]).collect();
        let comp = if bps.is_empty() {
            BranchedComponent::Circle
        } else {
            let local = |x: usize| bps.iter().position(|&b| b == x).unwrap() as u32;
            let es: Vec<(u32, u32)> = arcs
                .iter()
                .filter(|&&(a, _)| root[a] == r)
                .map(|&(a, b)| (local(a), local(b)))
                .collect();
            BranchedComponent::from_edges(bps.len() as u32, &es)
                .expect("smoothing preserves 4-regularity")
        };
        built.push((comp.canonical_text(IsoMode::Plain), comp, r));
    }
    built.sort_by(|a, b| a.0.cmp(&b.0));
    let mut component_of = vec![None; n];
    for v in (0..n).filter(|&v| !inc[v].is_empty()) {
        component_of[v] = built.iter().position(|b| b.2 == root[v]);
    }
    Smoothed {
        manifold: Branched1Manifold::new(built.into_iter().map(|b| b.1).collect()),
        component_of,
    }
}

/// Plain multigraph isomorphism, component by component.
pub fn is_isomorphic(x: &Branched1Manifold, y: &Branched1Manifold) -> bool {
    is_isomorphic_with(x, y, IsoMode::Plain)
}

pub fn is_isomorphic_with(x: &Branched1Manifold, y: &Branched1Manifold, mode: IsoMode) -> bool {
    x.components.len() == y.components.len() && x.canonical_with(mode) == y.canonical_with(mode)
}

/// Enumeration cap, honouring the environment override.
pub fn enumeration_bound() -> u32 {
    std::env::var(ENUM_BOUND_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUM_BOUND)
}

/// All pairwise non-isomorphic connected components of weight `w`, sorted.
pub fn enumerate_connected(w: u32) -> Result<Vec<CanonicalForm>> {
    if w == 0 {
        return Err(GsError::ZeroWeight);
    }
    let bound = enumeration_bound();
    if w > bound {
        return Err(GsError::BoundExceeded { weight: w, bound });
    }
    Ok(connected_forms(w))
}

/// Enumeration without the configured cap.
pub(crate) fn connected_forms(w: u32) -> Vec<CanonicalForm> {
    if w == 1 {
        return vec![CanonicalForm("O".into())];
    }
    let n = (w - 1) as usize;
    let mut found = BTreeSet::new();
    let mut rem = vec![4u32; n];
    let mut edges = Vec::new();
    fill_row(0, 0, n, &mut rem, &mut edges, &mut found);
    found.into_iter().collect()
}

/// Backtracking over the symmetric multiplicity matrix: row `i` is finished
/// by choosing its loop count (column `j == i`) then multiplicities to `j > i`.
fn fill_row(
    i: usize,
    j: usize,
    n: usize,
    rem: &mut Vec<u32>,
    edges: &mut Vec<(u32, u32)>,
    found: &mut BTreeSet<CanonicalForm>,
) {
    if i == n {
        if let Ok(c) = BranchedComponent::from_edges(n as u32, edges) {
            found.insert(Branched1Manifold::single(c).canonical());
        }
        return;
    }
    if j == n {
        if rem[i] == 0 {
            fill_row(i + 1, i + 1, n, rem, edges, found);
        }
        return;
    }
    if j == i {
        for loops in 0..=rem[i] / 2 {
            rem[i] -= 2 * loops;
            let before = edges.len();
            edges.extend(std::iter::repeat((i as u32, i as u32)).take(loops as usize));
            fill_row(i, j + 1, n, rem, edges, found);
            edges.truncate(before);
            rem[i] += 2 * loops;
        }
        return;
    }
    let max = rem[i].min(rem[j]);
    for m in 0..=max {
        rem[i] -= m;
        rem[j] -= m;
        let before = edges.len();
        edges.extend(std::iter::repeat((i as u32, j as u32)).take(m as usize));
        fill_row(i, j + 1, n, rem, edges, found);
        edges.truncate(before);
        rem[i] += m;
        rem[j] += m;
    }
}

/// A symbolic point in the interior of an arc: component index, arc index
/// within the component (0 for a circle) and an ordinal used to order two
/// points placed on the same arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcPosition {
    pub component: usize,
    pub arc: usize,
    pub slot: u32,
}

impl ArcPosition {
    pub const fn new(component: usize, arc: usize, slot: u32) -> Self {
        Self { component, arc, slot }
    }
}

/// Working representation of one component as port arcs, with circles
/// represented as a single arc with no endpoints.
enum Opened {
    Circle,
    Arcs(u32, Vec<(Port, Port)>),
}

fn open(c: &BranchedComponent) -> Opened {
    match c {
        BranchedComponent::Circle => Opened::Circle,
        BranchedComponent::Graph(g) => Opened::Arcs(g.branch_points, g.arcs.clone()),
    }
}

fn shift(arcs: &[(Port, Port)], by: u32) -> Vec<(Port, Port)> {
    arcs.iter()
        .map(|&(a, b)| {
            (
                Port::new(a.vertex + by, a.port),
                Port::new(b.vertex + by, b.port),
            )
        })
        .collect()
}

/// Subdivide the arcs at `p1` and `p2` and merge the two new points into one
/// branch point. The strand through ports `0,1` of the new point follows the
/// arc of `p1`; ports `2,3` follow the arc of `p2`.
pub fn identify_points(
    m: &Branched1Manifold,
    p1: ArcPosition,
    p2: ArcPosition,
) -> Result<Branched1Manifold> {
    for p in [p1, p2] {
        let c = m
            .components
            .get(p.component)
            .ok_or_else(|| GsError::InvalidPosition(format!("no component {}", p.component)))?;
        if p.arc >= c.arc_count() {
            return Err(GsError::InvalidPosition(format!(
                "component {} has no arc {}",
                p.component, p.arc
            )));
        }
    }
    if p1 == p2 {
        return Err(GsError::PositionsCoincide);
    }
    let (p1, p2) = if p1.component == p2.component && p1.arc == p2.arc && p1.slot > p2.slot {
        (p2, p1)
    } else {
        (p1, p2)
    };

    let merged = if p1.component == p2.component {
        match open(&m.components[p1.component]) {
            Opened::Circle => {
                let v = 0;
                vec![
                    (Port::new(v, 1), Port::new(v, 2)),
                    (Port::new(v, 3), Port::new(v, 0)),
                ]
                .pipe(|arcs| (1, arcs))
            }
            Opened::Arcs(n, mut arcs) => {
                let v = n;
                if p1.arc == p2.arc {
                    let (a, b) = arcs.remove(p1.arc);
                    arcs.push((a, Port::new(v, 0)));
                    arcs.push((Port::new(v, 1), Port::new(v, 2)));
                    arcs.push((Port::new(v, 3), b));
                } else {
                    let (a, b) = arcs[p1.arc];
                    let (c, d) = arcs[p2.arc];
                    let (hi, lo) = (p1.arc.max(p2.arc), p1.arc.min(p2.arc));
                    arcs.remove(hi);
                    arcs.remove(lo);
                    arcs.push((a, Port::new(v, 0)));
                    arcs.push((Port::new(v, 1), b));
                    arcs.push((c, Port::new(v, 2)));
                    arcs.push((Port::new(v, 3), d));
                }
                (n + 1, arcs)
            }
        }
    } else {
        let (n1, arcs1, cut1) = opened_side(&m.components[p1.component], p1.arc);
        let (n2, arcs2, cut2) = opened_side(&m.components[p2.component], p2.arc);
        let v = n1 + n2;
        let mut arcs = arcs1;
        arcs.extend(shift(&arcs2, n1));
        match cut1 {
            Some((a, b)) => {
                arcs.push((a, Port::new(v, 0)));
                arcs.push((Port::new(v, 1), b));
            }
            None => arcs.push((Port::new(v, 1), Port::new(v, 0))),
        }
        match cut2 {
            Some((c, d)) => {
                let c = Port::new(c.vertex + n1, c.port);
                let d = Port::new(d.vertex + n1, d.port);
                arcs.push((c, Port::new(v, 2)));
                arcs.push((Port::new(v, 3), d));
            }
            None => arcs.push((Port::new(v, 3), Port::new(v, 2))),
        }
        (v + 1, arcs)
    };

    let (n, arcs) = merged;
    let new_comp = BranchedComponent::Graph(CrossGraph::from_port_arcs(n, arcs)?);
    let first = p1.component.min(p2.component);
    let mut components = Vec::with_capacity(m.components.len());
    for (i, c) in m.components.iter().enumerate() {
        if i == first {
            components.push(new_comp.clone());
        } else if i != p1.component && i != p2.component {
            components.push(c.clone());
        }
    }
    Ok(Branched1Manifold::new(components))
}

/// Remove arc `arc` from a component, returning the remaining arcs and the
/// removed arc's endpoints (`None` for a circle).
fn opened_side(c: &BranchedComponent, arc: usize) -> (u32, Vec<(Port, Port)>, Option<(Port, Port)>) {
    match open(c) {
        Opened::Circle => (0, Vec::new(), None),
        Opened::Arcs(n, mut arcs) => {
            let cut = arcs.remove(arc);
            (n, arcs, Some(cut))
        }
    }
}

trait Pipe: Sized {
    fn pipe<R>(self, f: impl FnOnce(Self) -> R) -> R {
        f(self)
    }
}
impl<T> Pipe for T {}

/// One connected piece left after removing a branch point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuncturePiece {
    /// Branch points (original ids) lying in the piece.
    pub branch_points: Vec<u32>,
    /// Arc-ends freed by the puncture that belong to the piece.
    pub free_ends: usize,
}

/// Remove branch point `v`; the four arc-ends at `v` become free ends.
pub fn puncture(c: &BranchedComponent, v: u32) -> Result<Vec<PuncturePiece>> {
    let g = match c {
        BranchedComponent::Graph(g) if v < g.branch_points => g,
        _ => return Err(GsError::NotABranchPoint(v)),
    };
    let n = g.branch_points as usize;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut open_arcs = 0usize;
    let mut dangling: Vec<u32> = Vec::new();
    for &(a, b) in &g.edges() {
        match (a == v, b == v) {
            (true, true) => open_arcs += 1,
            (true, false) => dangling.push(b),
            (false, true) => dangling.push(a),
            (false, false) => {
                let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
                parent[ra] = rb;
            }
        }
    }
    let mut pieces: Vec<(usize, PuncturePiece)> = Vec::new();
    for w in (0..n).filter(|&w| w != v as usize) {
        let r = find(&mut parent, w);
        match pieces.iter_mut().find(|(root, _)| *root == r) {
            Some((_, p)) => p.branch_points.push(w as u32),
            None => pieces.push((
                r,
                PuncturePiece {
                    branch_points: vec![w as u32],
                    free_ends: 0,
                },
            )),
        }
    }
    for d in dangling {
        let r = find(&mut parent, d as usize);
        if let Some((_, p)) = pieces.iter_mut().find(|(root, _)| *root == r) {
            p.free_ends += 1;
        }
    }
    let mut out: Vec<PuncturePiece> = pieces.into_iter().map(|(_, p)| p).collect();
    out.extend((0..open_arcs).map(|_| PuncturePiece {
        branch_points: Vec::new(),
        free_ends: 2,
    }));
    Ok(out)
}

/// Boundary forms of minimal isolating blocks, indexed by weight.
pub fn family_minimal(w: u32) -> Result<Branched1Manifold> {
    let graph = |n: u32, cycles: &[Vec<u32>]| -> Branched1Manifold {
        let g = CrossGraph::from_strand_cycles(n, cycles).expect("fixed family data is valid");
        Branched1Manifold::single(BranchedComponent::Graph(g))
    };
    match w {
        1 => Ok(Branched1Manifold::circle()),
        2 => Ok(figure_eight()),
        3 => Ok(graph(2, &[vec![0, 1], vec![0, 1]])),
        5 => Ok(graph(4, &[vec![0, 1], vec![0, 1, 2, 3], vec![2, 3]])),
        // Three great circles of a sphere; vertices are +x,-x,+y,-y,+z,-z.
        7 => Ok(graph(
            6,
            &[vec![0, 2, 1, 3], vec![0, 4, 1, 5], vec![2, 4, 3, 5]],
        )),
        _ => Err(GsError::NotMinimalWeight(w)),
    }
}

fn figure_eight() -> Branched1Manifold {
    let g = CrossGraph::from_strand_cycles(1, &[vec![0, 0]]).expect("figure eight");
    Branched1Manifold::single(BranchedComponent::Graph(g))
}

/// Arc-position pair growing the loop chain by one: both points lie on the
/// loop at the newest branch point.
pub fn family_a_growth_move(m: &Branched1Manifold) -> Option<(ArcPosition, ArcPosition)> {
    match m.components.first()? {
        BranchedComponent::Circle => Some((ArcPosition::new(0, 0, 0), ArcPosition::new(0, 0, 1))),
        BranchedComponent::Graph(g) => {
            let newest = g.branch_points - 1;
            let arc = g
                .arcs
                .iter()
                .rposition(|(a, b)| a.vertex == newest && b.vertex == newest)?;
            Some((ArcPosition::new(0, arc, 0), ArcPosition::new(0, arc, 1)))
        }
    }
}

/// The loop-chain family: a figure eight whose petal carries a chain of
/// loops; each member is one identification away from the previous one.
pub fn family_a(w: u32) -> Result<Branched1Manifold> {
    if w == 0 {
        return Err(GsError::ZeroWeight);
    }
    let mut m = Branched1Manifold::circle();
    for _ in 1..w {
        let (p1, p2) = family_a_growth_move(&m).expect("every member has a terminal loop");
        m = identify_points(&m, p1, p2)?;
    }
    Ok(m)
}

/// The chain family: odd weights are chains of circles with consecutive
/// circles crossing twice; even weights add a petal loop on a terminal arc.
pub fn family_b(w: u32) -> Result<Branched1Manifold> {
    match w {
        0 => Err(GsError::ZeroWeight),
        1 => Ok(Branched1Manifold::circle()),
        2 => Ok(figure_eight()),
        w if w % 2 == 1 => {
            let k = (w + 1) / 2;
            let n = w - 1;
            let mut cycles = vec![vec![0, 1]];
            for i in 1..k - 1 {
                let b = 2 * (i - 1);
                cycles.push(vec![b, b + 1, b + 2, b + 3]);
            }
            cycles.push(vec![n - 2, n - 1]);
            let g = CrossGraph::from_strand_cycles(n, &cycles)?;
            Ok(Branched1Manifold::single(BranchedComponent::Graph(g)))
        }
        w => {
            let base = family_b(w - 1)?;
            identify_points(&base, ArcPosition::new(0, 0, 0), ArcPosition::new(0, 0, 1))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(m: &Branched1Manifold) -> String {
        m.canonical().0
    }

    #[test]
    fn weights_of_small_forms() {
        assert_eq!(Branched1Manifold::circle().weight(), (vec![1], 1));
        assert_eq!(figure_eight().weight(), (vec![2], 2));
        assert_eq!(family_minimal(3).unwrap().weight(), (vec![3], 3));
        assert_eq!(family_minimal(7).unwrap().weight(), (vec![7], 7));
    }

    #[test]
    fn circle_identification_gives_figure_eight() {
        let m = identify_points(
            &Branched1Manifold::circle(),
            ArcPosition::new(0, 0, 0),
            ArcPosition::new(0, 0, 1),
        )
        .unwrap();
        assert_eq!(form(&m), "0:0,0:0");
    }

    #[test]
    fn petal_to_petal_identification_gives_two_crossing_circles() {
        let m = identify_points(&figure_eight(), ArcPosition::new(0, 0, 0), ArcPosition::new(0, 1, 0))
            .unwrap();
        assert_eq!(form(&m), "0:1,0:1,0:1,0:1");
    }

    #[test]
    fn two_circles_merge_into_figure_eight() {
        let two = Branched1Manifold::circle().union(Branched1Manifold::circle());
        let m = identify_points(&two, ArcPosition::new(0, 0, 0), ArcPosition::new(1, 0, 0)).unwrap();
        assert_eq!(m.weight(), (vec![2], 2));
        assert_eq!(form(&m), "0:0,0:0");
    }

    #[test]
    fn coinciding_positions_are_rejected() {
        let p = ArcPosition::new(0, 0, 0);
        assert_eq!(
            identify_points(&Branched1Manifold::circle(), p, p),
            Err(GsError::PositionsCoincide)
        );
    }

    #[test]
    fn weight_three_types_are_distinct() {
        let a = family_minimal(3).unwrap();
        let b = family_a(3).unwrap();
        assert!(!is_isomorphic(&a, &b));
        assert_eq!(form(&b), "0:0,0:1,0:1,1:1");
    }

    #[test]
    fn parse_round_trip() {
        for w in 1..=5 {
            let m = family_b(w).unwrap();
            let back = Branched1Manifold::parse(&form(&m)).unwrap();
            assert!(is_isomorphic(&m, &back));
        }
        assert!(Branched1Manifold::parse("0:1").is_err());
    }

    #[test]
    fn puncture_examples() {
        let pieces = puncture(&figure_eight().components[0], 0).unwrap();
        assert_eq!(pieces.len(), 2);
        assert!(pieces.iter().all(|p| p.branch_points.is_empty()));
        let pieces = puncture(&family_minimal(3).unwrap().components[0], 1).unwrap();
        assert_eq!(pieces.len(), 1);
        assert!(puncture(&BranchedComponent::Circle, 0).is_err());
    }

    #[test]
    fn small_enumeration_counts() {
        let counts: Vec<usize> = (1..=4).map(|w| connected_forms(w).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4]);
    }

    #[test]
    fn strand_mode_refines_plain_mode() {
        // Same multigraph, strands threaded differently.
        let crossing = family_minimal(3).unwrap();
        let alt = Branched1Manifold::single(BranchedComponent::Graph(
            CrossGraph::from_port_arcs(
                2,
                vec![
                    (Port::new(0, 0), Port::new(1, 0)),
                    (Port::new(0, 1), Port::new(1, 2)),
                    (Port::new(0, 2), Port::new(1, 1)),
                    (Port::new(0, 3), Port::new(1, 3)),
                ],
            )
            .unwrap(),
        ));
        assert!(is_isomorphic(&crossing, &alt));
        assert!(!is_isomorphic_with(&crossing, &alt, IsoMode::StrandSensitive));
    }
}
