//! Local realizability of single-vertex semi-graphs.
//!
//! Two layers live here. The first is arithmetic: the shape catalog of
//! admissible `(label, e+, e-)` combinations with their Poincare-Hopf
//! relations, minimal weights, and the rule-based [`local_realizable`]
//! verdict. The second is combinatorial: every saddle-type block is modelled
//! by the quadrants of its handle and the way they are joined along the
//! regular part, which yields the entering and exiting boundaries as
//! branched 1-manifolds. Passageways are modelled as identifications of two
//! regular orbit segments, each adding one branch point to both boundaries.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::branched::{family_minimal, smooth, Branched1Manifold, CanonicalForm};
use crate::canon::{canonical, ColoredGraph};
use crate::error::{GsError, Result};
use crate::gs_model::{
    degree_bounds_ok, fold_degrees, ph_residual, Nature, SemiGraph, SingularityType, VertexLabel,
};

/// Side of a block boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Entering boundary, incoming edges.
    Plus,
    /// Exiting boundary, outgoing edges.
    Minus,
}

/// One admissible semi-graph shape with its Poincare-Hopf relation
/// `B+ - B- = offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeEntry {
    pub label: VertexLabel,
    pub e_plus: usize,
    pub e_minus: usize,
    pub offset: i64,
    /// Human-readable form of the relation.
    pub condition: String,
    /// Side whose weights must agree when the weights are minimal.
    pub equal_at_minimal: Option<Side>,
}

impl ShapeEntry {
    /// True iff the totals satisfy the relation of this entry.
    pub fn holds(&self, b_plus: i64, b_minus: i64) -> bool {
        b_plus - b_minus == self.offset
    }

    fn reversed(&self) -> ShapeEntry {
        ShapeEntry {
            label: self.label.reversed(),
            e_plus: self.e_minus,
            e_minus: self.e_plus,
            offset: -self.offset,
            condition: reverse_condition(&self.condition),
            equal_at_minimal: self.equal_at_minimal.map(|s| match s {
                Side::Plus => Side::Minus,
                Side::Minus => Side::Plus,
            }),
        }
    }
}

fn reverse_condition(c: &str) -> String {
    c.chars()
        .map(|ch| match ch {
            '+' => '-',
            '-' => '+',
            other => other,
        })
        .collect()
}

fn label(ty: SingularityType, nature: Nature) -> VertexLabel {
    VertexLabel::new(ty, nature).expect("fixed labels are admissible")
}

/// The rows of the Poincare-Hopf table, including the two double-crossing
/// rows that satisfy the relation but admit no minimal block.
pub fn table1_rows() -> Vec<ShapeEntry> {
    use Nature::*;
    use SingularityType as T;
    let rows: [(SingularityType, Nature, usize, usize, i64, &str); 23] = [
        (T::R, A, 1, 0, 1, "B+ = 1"),
        (T::R, S, 1, 1, 0, "B+ = B-"),
        (T::R, S, 1, 2, -1, "B+ = B- - 1"),
        (T::C, A, 2, 0, 2, "b1+ = b2+ = 1"),
        (T::C, S, 1, 1, 0, "B+ = B-"),
        (T::C, S, 2, 2, 0, "B+ = B-"),
        (T::W, A, 1, 0, 2, "B+ = 2"),
        (T::W, SS, 1, 1, 1, "B+ = B- + 1"),
        (T::W, SS, 1, 2, 0, "B+ = B-"),
        (T::D, A, 1, 0, 3, "B+ = 3"),
        (T::D, SA, 1, 1, 2, "B+ = B- + 2"),
        (T::D, SA, 1, 2, 1, "B+ = B- + 1"),
        (T::D, SSS, 1, 1, 2, "B+ = B- + 2"),
        (T::D, SSS, 2, 1, 3, "B+ - 3 = B-"),
        (T::D, SSS, 1, 2, 1, "B+ = B- + 1"),
        (T::D, SSS, 2, 2, 2, "B+ = B- + 2"),
        (T::D, SSS, 1, 3, 0, "B+ = B-"),
        (T::D, SSS, 2, 3, 1, "B+ = B- + 1"),
        (T::D, SSS, 1, 4, -1, "B+ = B- - 1"),
        (T::D, SSS, 2, 4, 0, "B+ = B-"),
        (T::T, A, 1, 0, 7, "b1+ = 7"),
        (T::T, SSA, 1, 1, 2, "B+ = B- + 2"),
        (T::T, SSA, 1, 2, 1, "B+ = B- + 1"),
    ];
    rows.iter()
        .map(|&(ty, n, ep, em, offset, cond)| ShapeEntry {
            label: label(ty, n),
            e_plus: ep,
            e_minus: em,
            offset,
            condition: cond.to_string(),
            equal_at_minimal: match (ty, n, ep, em) {
                (T::D, SSS, 2, _) => Some(Side::Plus),
                (T::T, SSA, _, 2) => Some(Side::Minus),
                _ => None,
            },
        })
        .collect()
}

fn is_excluded_double_row(e: &ShapeEntry) -> bool {
    e.label.ty == SingularityType::D
        && e.label.nature == Nature::SSS
        && e.e_plus == 2
        && e.e_minus >= 3
}

/// All shapes realized by some block, together with their flow reversals.
pub fn shape_catalog() -> &'static [ShapeEntry] {
    static CATALOG: OnceLock<Vec<ShapeEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut out: Vec<ShapeEntry> = Vec::new();
        for row in table1_rows().into_iter().filter(|e| !is_excluded_double_row(e)) {
            let rev = row.reversed();
            for e in [row, rev] {
                if !out
                    .iter()
                    .any(|o| o.label == e.label && o.e_plus == e.e_plus && o.e_minus == e.e_minus)
                {
                    out.push(e);
                }
            }
        }
        out
    })
}

/// Catalog lookup by label and edge counts.
pub fn shape_lookup(label: VertexLabel, e_plus: usize, e_minus: usize) -> Option<&'static ShapeEntry> {
    shape_catalog()
        .iter()
        .find(|e| e.label == label && e.e_plus == e_plus && e.e_minus == e_minus)
}

fn split_evenly(branch_points: u32, parts: usize) -> Vec<u32> {
    if parts == 0 {
        return Vec::new();
    }
    let base = branch_points / parts as u32;
    let extra = (branch_points % parts as u32) as usize;
    (0..parts)
        .map(|i| 1 + base + u32::from(i < extra))
        .collect()
}

/// Minimal weights for a catalog shape: each side receives the branch
/// points of the folds ending (or starting) at the singularity, split as
/// evenly as possible over its components.
pub fn minimal_weights(label: VertexLabel, e_plus: usize, e_minus: usize) -> Result<(Vec<u32>, Vec<u32>)> {
    if shape_lookup(label, e_plus, e_minus).is_none() {
        return Err(GsError::ShapeAbsent {
            label: label.to_string(),
            e_plus,
            e_minus,
        });
    }
    let (fin, fout) = fold_degrees(label.ty, label.nature);
    Ok((split_evenly(fin, e_plus), split_evenly(fout, e_minus)))
}

/// Why a semi-graph is locally not realizable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoReason {
    PhViolated,
    DegreeBound,
    ShapeAbsent,
    Thm4Exclusion,
    Thm5Ii,
    Thm5Iii,
    Thm5Iv,
    Thm2B,
    Thm2C,
}

impl NoReason {
    /// Stable reason code.
    pub fn code(self) -> &'static str {
        match self {
            NoReason::PhViolated => "PH-violated",
            NoReason::DegreeBound => "degree-bound",
            NoReason::ShapeAbsent => "shape-absent",
            NoReason::Thm4Exclusion => "Thm4-exclusion",
            NoReason::Thm5Ii => "Thm5-ii",
            NoReason::Thm5Iii => "Thm5-iii",
            NoReason::Thm5Iv => "Thm5-iv",
            NoReason::Thm2B => "Thm2-b",
            NoReason::Thm2C => "Thm2-c",
        }
    }
}

impl fmt::Display for NoReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Outcome of the local realizability check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocalVerdict {
    YesMinimal,
    /// Realizable with the given number of passageways.
    YesWithPassageways(u32),
    No(NoReason),
}

impl LocalVerdict {
    pub fn is_yes(self) -> bool {
        !matches!(self, LocalVerdict::No(_))
    }
}

impl fmt::Display for LocalVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalVerdict::YesMinimal => f.write_str("yes-minimal"),
            LocalVerdict::YesWithPassageways(k) => write!(f, "yes-passageways({k})"),
            LocalVerdict::No(r) => write!(f, "no({r})"),
        }
    }
}

fn sorted(v: &[u32]) -> Vec<u32> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

fn all_equal(v: &[u32]) -> bool {
    v.windows(2).all(|w| w[0] == w[1])
}

/// Orient a semi-graph so that its nature is on the attracting side.
fn primary_orientation(sg: &SemiGraph) -> SemiGraph {
    if sg.label.nature.is_reversed_side() {
        sg.reversed()
    } else {
        sg.clone()
    }
}

/// The excluded configuration of a minimal block that `sg` matches, if any.
/// Cases a and b exclude the edge counts outright; cases c to e concern
/// weights whose totals are minimal.
pub fn theorem4_case(sg: &SemiGraph) -> Option<char> {
    let p = primary_orientation(sg);
    let (ep, em) = (p.e_plus(), p.e_minus());
    match (p.label.ty, p.label.nature) {
        (SingularityType::D, Nature::SSS) => match (ep, em) {
            (2, 4) => Some('a'),
            (2, 3) => Some('b'),
            (2, 1) if p.out_weights == [1] && !all_equal(&p.in_weights) => Some('c'),
            (2, 2) if p.out_weights == [1, 1] && !all_equal(&p.in_weights) => Some('d'),
            _ => None,
        },
        (SingularityType::T, Nature::SSA) => {
            let minimal_total = fold_degrees(p.label.ty, p.label.nature).1 as i64 + 2;
            (ep == 1 && em == 2 && p.b_minus() == minimal_total && !all_equal(&p.out_weights))
                .then_some('e')
        }
        _ => None,
    }
}

/// Rule-based local verdict for a single-vertex semi-graph.
pub fn local_realizable(sg: &SemiGraph) -> LocalVerdict {
    use LocalVerdict::*;
    if ph_residual(sg) != 0 {
        return No(NoReason::PhViolated);
    }
    if !degree_bounds_ok(sg) {
        return No(NoReason::DegreeBound);
    }
    if theorem4_case(sg).is_some() {
        return No(NoReason::Thm4Exclusion);
    }
    let Some(entry) = shape_lookup(sg.label, sg.e_plus(), sg.e_minus()) else {
        return No(NoReason::ShapeAbsent);
    };
    let p = primary_orientation(sg);
    let (ty, nature) = (p.label.ty, p.label.nature);
    if ty == SingularityType::C && nature == Nature::S && p.e_plus() == 2 && p.e_minus() == 2 {
        if !p.out_weights.contains(&p.in_weights[0]) {
            return No(NoReason::Thm5Ii);
        }
    }
    if ty == SingularityType::D && nature == Nature::SSS && p.e_plus() == 2 && p.e_minus() > 2 {
        return No(NoReason::Thm5Iii);
    }
    let (min_in, min_out) =
        minimal_weights(sg.label, sg.e_plus(), sg.e_minus()).expect("entry exists");
    let min_total: i64 = min_in.iter().map(|&w| w as i64).sum();
    let excess = sg.b_plus() - min_total;
    if excess < 0 {
        // The relation holds, so a total below the minimum cannot occur for
        // valid weights; report it as a relation failure.
        return No(NoReason::PhViolated);
    }
    if excess == 0 {
        if let Some(side) = entry.equal_at_minimal {
            let ws = match side {
                Side::Plus => &sg.in_weights,
                Side::Minus => &sg.out_weights,
            };
            if !all_equal(ws) {
                return No(if ty == SingularityType::D {
                    NoReason::Thm2B
                } else {
                    NoReason::Thm2C
                });
            }
        }
        if sorted(&sg.in_weights) == sorted(&min_in) && sorted(&sg.out_weights) == sorted(&min_out) {
            return YesMinimal;
        }
        if ty == SingularityType::T && p.e_minus() == 2 {
            return No(NoReason::Thm5Iv);
        }
    }
    YesWithPassageways(excess as u32)
}

// ---------------------------------------------------------------------------
// Block boundary model
// ---------------------------------------------------------------------------

/// Quadrant data of a saddle-type handle. Each end is a quadrant of a
/// saddle chart, attached to one point of the stable set (on the entering
/// boundary) and one point of the unstable set (on the exiting boundary).
/// Arcs of the stable or unstable set that do not pass through the regular
/// part are listed separately.
#[derive(Debug, Clone)]
struct Handle {
    ends: Vec<(usize, usize)>,
    n_stable: usize,
    n_unstable: usize,
    stable_arcs: Vec<(usize, usize)>,
    unstable_arcs: Vec<(usize, usize)>,
}

fn saddle(sa: usize, sb: usize, ua: usize, ub: usize) -> [(usize, usize); 4] {
    [(sa, ua), (sb, ua), (sb, ub), (sa, ub)]
}

/// Model of a block with its natural orientation.
#[derive(Debug, Clone)]
enum BlockModel {
    /// Attractor: entering boundary fixed, exiting boundary empty.
    Fixed(Branched1Manifold),
    Handle(Handle),
}

/// The attracting-side label of `label` and whether it was reversed.
fn primary_label(label: VertexLabel) -> (VertexLabel, bool) {
    if label.nature.is_reversed_side() {
        (label.reversed(), true)
    } else {
        (label, false)
    }
}

fn block_model(primary: VertexLabel) -> BlockModel {
    use Nature::*;
    use SingularityType as T;
    let circles = |k: usize| Branched1Manifold::new(vec![crate::branched::BranchedComponent::Circle; k]);
    match (primary.ty, primary.nature) {
        (T::R, A) => BlockModel::Fixed(circles(1)),
        (T::C, A) => BlockModel::Fixed(circles(2)),
        (T::W, A) => BlockModel::Fixed(family_minimal(2).expect("weight 2")),
        (T::D, A) => BlockModel::Fixed(family_minimal(3).expect("weight 3")),
        (T::T, A) => BlockModel::Fixed(family_minimal(7).expect("weight 7")),
        (T::R, S) => BlockModel::Handle(Handle {
            ends: saddle(0, 1, 0, 1).to_vec(),
            n_stable: 2,
            n_unstable: 2,
            stable_arcs: vec![],
            unstable_arcs: vec![],
        }),
        (T::C, S) => BlockModel::Handle(Handle {
            // Two cylinders glued at the vertex: each carries two quadrants.
            ends: vec![(0, 0), (0, 0), (1, 1), (1, 1)],
            n_stable: 2,
            n_unstable: 2,
            stable_arcs: vec![],
            unstable_arcs: vec![],
        }),
        (T::W, SS) => BlockModel::Handle(Handle {
            ends: saddle(0, 0, 0, 1).to_vec(),
            n_stable: 1,
            n_unstable: 2,
            stable_arcs: vec![],
            unstable_arcs: vec![],
        }),
        (T::D, SA) => BlockModel::Handle(Handle {
            ends: saddle(0, 1, 0, 1).to_vec(),
            n_stable: 2,
            n_unstable: 2,
            stable_arcs: vec![(0, 1), (0, 1)],
            unstable_arcs: vec![],
        }),
        (T::D, SSS) => BlockModel::Handle(Handle {
            ends: [saddle(0, 1, 0, 1), saddle(0, 1, 2, 3)].concat(),
            n_stable: 2,
            n_unstable: 4,
            stable_arcs: vec![],
            unstable_arcs: vec![],
        }),
        (T::T, SSA) => BlockModel::Handle(Handle {
            ends: [saddle(0, 2, 0, 1), saddle(1, 3, 0, 1)].concat(),
            n_stable: 4,
            n_unstable: 2,
            stable_arcs: vec![(0, 1), (1, 2), (2, 3), (3, 0)],
            unstable_arcs: vec![],
        }),
        other => unreachable!("no attracting-side model for {other:?}"),
    }
}

/// Endpoint of a regular-part segment: a handle quadrant or a fold point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Node {
    End(u16),
    Fold(u16),
}

/// Regular-part segments of a block. Without passageways every segment
/// joins two quadrants; each passageway adds one fold point of degree 4.
type State = Vec<(Node, Node)>;

/// An (entering, exiting) pair of canonical boundary forms.
pub type BoundaryPairForms = (CanonicalForm, CanonicalForm);

fn fold_count(h: &Handle, st: &State) -> usize {
    (st.len() - h.ends.len() / 2) / 2
}

impl Handle {
    fn side_graph(&self, st: &State, side: Side) -> (usize, Vec<(usize, usize)>) {
        let points = match side {
            Side::Plus => self.n_stable,
            Side::Minus => self.n_unstable,
        };
        let map = |n: Node| match n {
            Node::End(i) => {
                let (s, u) = self.ends[i as usize];
                match side {
                    Side::Plus => s,
                    Side::Minus => u,
                }
            }
            Node::Fold(j) => points + j as usize,
        };
        let mut edges: Vec<(usize, usize)> = st.iter().map(|&(a, b)| (map(a), map(b))).collect();
        edges.extend(match side {
            Side::Plus => self.stable_arcs.iter().copied(),
            Side::Minus => self.unstable_arcs.iter().copied(),
        });
        (points + fold_count(self, st), edges)
    }

    fn boundary(&self, st: &State, side: Side) -> crate::branched::Smoothed {
        let (n, edges) = self.side_graph(st, side);
        smooth(n, &edges)
    }

    fn projection(&self, st: &State) -> BoundaryPairForms {
        (
            self.boundary(st, Side::Plus).manifold.canonical(),
            self.boundary(st, Side::Minus).manifold.canonical(),
        )
    }

    /// Pairs (entering component, exiting component) joined by a quadrant.
    fn routing(&self, st: &State) -> Vec<(usize, usize)> {
        let plus = self.boundary(st, Side::Plus);
        let minus = self.boundary(st, Side::Minus);
        let mut r: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &(s, u) in &self.ends {
            if let (Some(a), Some(b)) = (plus.component_of[s], minus.component_of[u]) {
                r.insert((a, b));
            }
        }
        r.into_iter().collect()
    }

    fn base_states(&self) -> Vec<State> {
        let items: Vec<u16> = (0..self.ends.len() as u16).collect();
        let mut out = Vec::new();
        perfect_matchings(&items, &mut Vec::new(), &mut out);
        out
    }

    /// Canonical code of a state up to relabelling that preserves the
    /// handle structure, so states related by a symmetry of the handle
    /// share a key.
    fn state_key(&self, st: &State) -> Vec<u64> {
        let ends = self.ends.len();
        let (ns, nu) = (self.n_stable, self.n_unstable);
        let stable = |i: usize| ends + i;
        let unstable = |i: usize| ends + ns + i;
        let folds = ends + ns + nu;
        let mut g = ColoredGraph::new(folds + fold_count(self, st));
        for v in 0..g.n {
            g.vcolor[v] = match v {
                v if v < ends => 1,
                v if v < ends + ns => 2,
                v if v < folds => 3,
                _ => 4,
            };
        }
        for (i, &(s, u)) in self.ends.iter().enumerate() {
            g.add_edge(i, stable(s), 1);
            g.add_edge(i, unstable(u), 2);
        }
        for &(a, b) in &self.stable_arcs {
            g.add_edge(stable(a), stable(b), 3);
        }
        for &(a, b) in &self.unstable_arcs {
            g.add_edge(unstable(a), unstable(b), 4);
        }
        let idx = |n: Node| match n {
            Node::End(i) => i as usize,
            Node::Fold(j) => folds + j as usize,
        };
        for &(a, b) in st {
            g.add_edge(idx(a), idx(b), 0);
        }
        canonical(&g).code
    }
}

fn perfect_matchings(items: &[u16], acc: &mut State, out: &mut Vec<State>) {
    let Some((&first, rest)) = items.split_first() else {
        out.push(acc.clone());
        return;
    };
    for i in 0..rest.len() {
        let mut remaining = rest.to_vec();
        let partner = remaining.remove(i);
        acc.push((Node::End(first), Node::End(partner)));
        perfect_matchings(&remaining, acc, out);
        acc.pop();
    }
}

/// All states reachable by one passageway: a new fold point is inserted on
/// one segment (both orbit segments on it) or on two distinct segments.
fn successors(h: &Handle, st: &State) -> Vec<State> {
    let v = Node::Fold(fold_count(h, st) as u16);
    let n = st.len();
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            let mut next: State = st
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i && k != j)
                .map(|(_, &e)| e)
                .collect();
            let (x, y) = st[i];
            if i == j {
                next.extend([(x, v), (v, v), (v, y)]);
            } else {
                let (z, w) = st[j];
                next.extend([(x, v), (v, y), (z, v), (v, w)]);
            }
            out.push(next);
        }
    }
    out
}

fn orient(pair: &BoundaryPairForms, reversed: bool) -> BoundaryPairForms {
    if reversed {
        (pair.1.clone(), pair.0.clone())
    } else {
        pair.clone()
    }
}

/// Closure levels of one attracting-side label, grown on demand.
struct LabelClosure {
    model: BlockModel,
    frontier: Vec<State>,
    seen: HashSet<Vec<u64>>,
    levels: Vec<Arc<BTreeSet<BoundaryPairForms>>>,
}

impl LabelClosure {
    fn new(primary: VertexLabel) -> Self {
        let model = block_model(primary);
        let mut lc = LabelClosure {
            model,
            frontier: Vec::new(),
            seen: HashSet::new(),
            levels: Vec::new(),
        };
        match &lc.model {
            BlockModel::Fixed(m) => {
                let pair = (m.canonical(), CanonicalForm(String::new()));
                lc.levels.push(Arc::new(BTreeSet::from([pair])));
            }
            BlockModel::Handle(h) => {
                let h = h.clone();
                let mut level = BTreeSet::new();
                for st in h.base_states() {
                    if lc.seen.insert(h.state_key(&st)) {
                        level.insert(h.projection(&st));
                        lc.frontier.push(st);
                    }
                }
                lc.levels.push(Arc::new(level));
            }
        }
        lc
    }

    fn level(&mut self, k: usize) -> Arc<BTreeSet<BoundaryPairForms>> {
        let BlockModel::Handle(h) = &self.model else {
            return if k == 0 {
                self.levels[0].clone()
            } else {
                Arc::new(BTreeSet::new())
            };
        };
        let h = h.clone();
        while self.levels.len() <= k {
            let mut next_frontier = Vec::new();
            let mut level = BTreeSet::new();
            for st in &self.frontier {
                for nx in successors(&h, st) {
                    if self.seen.insert(h.state_key(&nx)) {
                        level.insert(h.projection(&nx));
                        next_frontier.push(nx);
                    }
                }
            }
            self.frontier = next_frontier;
            self.levels.push(Arc::new(level));
        }
        self.levels[k].clone()
    }
}

fn closure_cache() -> &'static Mutex<HashMap<VertexLabel, LabelClosure>> {
    static CACHE: OnceLock<Mutex<HashMap<VertexLabel, LabelClosure>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All boundary pairs of blocks for `label` with exactly `passageways`
/// passageways, oriented for `label`, in canonical order.
pub fn boundary_pairs_at(label: VertexLabel, passageways: u32) -> Vec<BoundaryPairForms> {
    let (primary, reversed) = primary_label(label);
    let level = {
        let mut cache = closure_cache().lock().unwrap_or_else(|e| e.into_inner());
        cache
            .entry(primary)
            .or_insert_with(|| LabelClosure::new(primary))
            .level(passageways as usize)
    };
    let mut out: Vec<BoundaryPairForms> = level.iter().map(|p| orient(p, reversed)).collect();
    out.sort();
    out
}

fn total_branch_points(form: &CanonicalForm) -> Result<u32> {
    let m = Branched1Manifold::parse(form.as_str())?;
    Ok(m.components.iter().map(|c| c.branch_points()).sum())
}

/// Number of passageways a block must have for the given entering boundary.
fn passageways_for(label: VertexLabel, plus: &CanonicalForm, minus: &CanonicalForm) -> Result<Option<u32>> {
    let (fin, fout) = fold_degrees(label.ty, label.nature);
    let bp_plus = total_branch_points(plus)?;
    let bp_minus = total_branch_points(minus)?;
    if bp_plus < fin || bp_minus < fout || bp_plus - fin != bp_minus - fout {
        return Ok(None);
    }
    Ok(Some(bp_plus - fin))
}

/// True iff some block for `label` (with passageways) has exactly this
/// entering and exiting boundary. Forms are re-canonicalised first.
pub fn label_admits_pair(label: VertexLabel, plus: &CanonicalForm, minus: &CanonicalForm) -> Result<bool> {
    let plus = Branched1Manifold::parse(plus.as_str())?.canonical();
    let minus = Branched1Manifold::parse(minus.as_str())?.canonical();
    let Some(k) = passageways_for(label, &plus, &minus)? else {
        return Ok(false);
    };
    let pair = (plus, minus);
    Ok(boundary_pairs_at(label, k).binary_search(&pair).is_ok())
}

/// One boundary pair of a catalog entry with its routing relation:
/// `(i, j)` means entering component `i` and exiting component `j` are
/// joined through a quadrant of the handle. Component indices refer to the
/// order in the canonical text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPair {
    pub plus: CanonicalForm,
    pub minus: CanonicalForm,
    pub routing: Vec<(usize, usize)>,
}

/// A minimal block up to homeomorphism and flow reversal: a label, its edge
/// counts, one entering boundary and every exiting boundary it admits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: VertexLabel,
    pub e_plus: usize,
    pub e_minus: usize,
    pub beta_in: u32,
    pub beta_out: u32,
    pub boundary_pairs: Vec<BoundaryPair>,
}

impl CatalogEntry {
    /// The shared entering boundary.
    pub fn plus(&self) -> &CanonicalForm {
        &self.boundary_pairs[0].plus
    }
}

fn form_components(form: &CanonicalForm) -> usize {
    if form.as_str().is_empty() {
        0
    } else {
        form.as_str().split('|').count()
    }
}

fn attracting_labels() -> Vec<VertexLabel> {
    VertexLabel::all()
        .into_iter()
        .filter(|l| !l.nature.is_reversed_side())
        .collect()
}

/// The catalog of minimal blocks, derived from the handle models.
pub fn minimal_block_catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

fn build_catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for primary in attracting_labels() {
        let (beta_in, beta_out) = fold_degrees(primary.ty, primary.nature);
        let self_reverse = primary.reversed() == primary;
        let mut pairs: BTreeMap<BoundaryPairForms, BTreeSet<(usize, usize)>> = BTreeMap::new();
        match block_model(primary) {
            BlockModel::Fixed(m) => {
                pairs.insert((m.canonical(), CanonicalForm(String::new())), BTreeSet::new());
            }
            BlockModel::Handle(h) => {
                for st in h.base_states() {
                    pairs
                        .entry(h.projection(&st))
                        .or_default()
                        .extend(h.routing(&st));
                }
            }
        }
        let mut groups: BTreeMap<(usize, usize, CanonicalForm), Vec<BoundaryPair>> = BTreeMap::new();
        for ((plus, minus), routing) in pairs {
            let (ep, em) = (form_components(&plus), form_components(&minus));
            if self_reverse && ep > em {
                continue;
            }
            groups.entry((ep, em, plus.clone())).or_default().push(BoundaryPair {
                plus,
                minus,
                routing: routing.into_iter().collect(),
            });
        }
        for ((e_plus, e_minus, _), boundary_pairs) in groups {
            out.push(CatalogEntry {
                label: primary,
                e_plus,
                e_minus,
                beta_in,
                beta_out,
                boundary_pairs,
            });
        }
    }
    out
}

/// Catalog sizes per singularity type in the order R, C, W, D, T.
pub fn catalog_counts() -> [usize; 5] {
    let mut counts = [0usize; 5];
    for e in minimal_block_catalog() {
        let i = SingularityType::ALL
            .iter()
            .position(|&t| t == e.label.ty)
            .expect("known type");
        counts[i] += 1;
    }
    counts
}

/// Result of a bounded passageway closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureSet {
    pub pairs: BTreeSet<BoundaryPairForms>,
    /// True when some reachable pair was dropped by the weight bound.
    pub truncated: bool,
}

fn total_weight(form: &CanonicalForm) -> u32 {
    Branched1Manifold::parse(form.as_str())
        .map(|m| m.weight().1)
        .unwrap_or(u32::MAX)
}

/// Default bound on the combined entering and exiting weight.
pub const DEFAULT_CLOSURE_WEIGHT: u32 = 12;

/// Every boundary pair reachable from the entry's minimal pairs by adding
/// passageways, keeping pairs whose combined weight is at most
/// `max_total_weight`.
pub fn passageway_closure(entry: &CatalogEntry, max_total_weight: u32) -> ClosureSet {
    let within = |p: &BoundaryPairForms| total_weight(&p.0) + total_weight(&p.1) <= max_total_weight;
    let wanted: BTreeSet<BoundaryPairForms> = entry
        .boundary_pairs
        .iter()
        .map(|p| (p.plus.clone(), p.minus.clone()))
        .collect();
    let mut pairs = BTreeSet::new();
    let mut truncated = false;
    let h = match block_model(entry.label) {
        BlockModel::Fixed(_) => {
            for p in wanted {
                if within(&p) {
                    pairs.insert(p);
                } else {
                    truncated = true;
                }
            }
            return ClosureSet { pairs, truncated };
        }
        BlockModel::Handle(h) => h,
    };
    let mut seen = HashSet::new();
    let mut queue: VecDeque<State> = VecDeque::new();
    for st in h.base_states() {
        let p = h.projection(&st);
        if wanted.contains(&p) && seen.insert(h.state_key(&st)) {
            queue.push_back(st);
        }
    }
    while let Some(st) = queue.pop_front() {
        let p = h.projection(&st);
        if !within(&p) {
            truncated = true;
            continue;
        }
        pairs.insert(p);
        for nx in successors(&h, &st) {
            if seen.insert(h.state_key(&nx)) {
                queue.push_back(nx);
            }
        }
    }
    ClosureSet { pairs, truncated }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branched::{family_a, family_b};
    use Nature::*;
    use SingularityType as T;

    fn sg(ty: SingularityType, n: Nature, i: &[u32], o: &[u32]) -> SemiGraph {
        SemiGraph::new(label(ty, n), i.to_vec(), o.to_vec())
    }

    #[test]
    fn table_has_23_rows_and_excluded_rows_are_not_shapes() {
        assert_eq!(table1_rows().len(), 23);
        assert!(shape_lookup(label(T::D, SSS), 2, 3).is_none());
        assert_eq!(shape_lookup(label(T::D, SSS), 2, 1).unwrap().offset, 3);
        assert_eq!(shape_lookup(label(T::D, SSU), 1, 2).unwrap().offset, -3);
    }

    #[test]
    fn minimal_weight_examples() {
        assert_eq!(minimal_weights(label(T::T, SSA), 1, 1).unwrap(), (vec![5], vec![3]));
        assert_eq!(minimal_weights(label(T::C, A), 2, 0).unwrap(), (vec![1, 1], vec![]));
        assert_eq!(minimal_weights(label(T::T, SSA), 1, 2).unwrap(), (vec![5], vec![2, 2]));
        assert!(minimal_weights(label(T::R, S), 2, 2).is_err());
    }

    #[test]
    fn local_examples() {
        assert_eq!(
            local_realizable(&sg(T::D, SSS, &[2, 2], &[1, 1, 1, 1])),
            LocalVerdict::No(NoReason::Thm4Exclusion)
        );
        assert_eq!(
            local_realizable(&sg(T::C, S, &[3, 1], &[2, 2])),
            LocalVerdict::No(NoReason::Thm5Ii)
        );
        assert_eq!(local_realizable(&sg(T::R, S, &[1], &[1, 1])), LocalVerdict::YesMinimal);
        assert_eq!(
            local_realizable(&sg(T::W, SS, &[3], &[1, 2])),
            LocalVerdict::YesWithPassageways(1)
        );
        assert_eq!(
            local_realizable(&sg(T::R, S, &[2], &[3])),
            LocalVerdict::No(NoReason::PhViolated)
        );
        assert_eq!(
            local_realizable(&sg(T::R, S, &[1, 1], &[1, 1])),
            LocalVerdict::No(NoReason::ShapeAbsent)
        );
    }

    #[test]
    fn catalog_counts_match() {
        assert_eq!(catalog_counts(), [3, 3, 3, 13, 11]);
    }

    #[test]
    fn cone_saddle_options() {
        let entries: Vec<&CatalogEntry> = minimal_block_catalog()
            .iter()
            .filter(|e| e.label == label(T::C, S))
            .collect();
        let minus: BTreeSet<&str> = entries
            .iter()
            .flat_map(|e| e.boundary_pairs.iter().map(|p| p.minus.as_str()))
            .collect();
        assert_eq!(minus, BTreeSet::from(["O", "O|O"]));
    }

    #[test]
    fn triple_saddle_has_three_exit_choices() {
        let minus: BTreeSet<String> = minimal_block_catalog()
            .iter()
            .filter(|e| e.label == label(T::T, SSA))
            .flat_map(|e| e.boundary_pairs.iter().map(|p| p.minus.0.clone()))
            .collect();
        assert_eq!(minus.len(), 3);
        assert!(minus.contains("0:0,0:0|0:0,0:0"));
    }

    #[test]
    fn attractor_closure_is_trivial() {
        let e = minimal_block_catalog()
            .iter()
            .find(|e| e.label == label(T::R, A))
            .unwrap();
        let c = passageway_closure(e, DEFAULT_CLOSURE_WEIGHT);
        assert_eq!(c.pairs.len(), 1);
        assert!(!c.truncated);
    }

    #[test]
    fn regular_saddle_closure_reaches_loop_chains() {
        let e = minimal_block_catalog()
            .iter()
            .find(|e| e.label == label(T::R, S) && e.e_minus == 1)
            .unwrap();
        let c = passageway_closure(e, 6);
        let a3 = family_a(3).unwrap().canonical();
        assert!(c.pairs.contains(&(a3.clone(), a3)));
        assert!(c.truncated);
    }

    #[test]
    fn cone_closure_keeps_cylinders_separate() {
        let e = minimal_block_catalog()
            .iter()
            .find(|e| e.label == label(T::C, S) && e.e_plus == 2)
            .unwrap();
        let c = passageway_closure(e, 6);
        let mixed = CanonicalForm("0:0,0:0|O".into());
        assert!(c.pairs.contains(&(mixed.clone(), mixed.clone())));
        for (p, m) in &c.pairs {
            let (_, wp) = Branched1Manifold::parse(p.as_str()).unwrap().weight();
            let (_, wm) = Branched1Manifold::parse(m.as_str()).unwrap().weight();
            assert_eq!(wp, wm);
            assert_eq!(p, m);
        }
    }

    #[test]
    fn admits_pair_for_minimal_forms() {
        let w3 = family_minimal(3).unwrap().canonical();
        let empty = CanonicalForm(String::new());
        assert!(label_admits_pair(label(T::D, A), &w3, &empty).unwrap());
        assert!(label_admits_pair(label(T::D, R), &empty, &w3).unwrap());
        let b3 = family_b(3).unwrap().canonical();
        assert!(label_admits_pair(label(T::D, A), &b3, &empty).unwrap());
        let a3 = family_a(3).unwrap().canonical();
        assert!(!label_admits_pair(label(T::D, A), &a3, &empty).unwrap());
    }
}
