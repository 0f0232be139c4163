//! Canonical labelling of small vertex- and edge-coloured multigraphs.
//!
//! The search is a plain individualisation-refinement tree: colour
//! refinement to an equitable ordered partition, then branching on every
//! vertex of the first non-singleton cell. The smallest leaf code is the
//! canonical code. There is no automorphism pruning, so the cost grows with
//! the symmetry of the input; the graphs handled here have at most a few
//! dozen vertices.

/// Undirected multigraph with vertex colours and edge colours. Loops are
/// edges `(v, v, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ColoredGraph {
    pub n: usize,
    pub vcolor: Vec<u32>,
    pub edges: Vec<(usize, usize, u32)>,
}

impl ColoredGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            vcolor: vec![0; n],
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize, color: u32) {
        self.edges.push((a, b, color));
    }
}

/// Canonical code and the labelling (old vertex -> canonical position) that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Canonical {
    pub code: Vec<u64>,
    pub labeling: Vec<usize>,
}

/// Compute the canonical form of `g`.
pub(crate) fn canonical(g: &ColoredGraph) -> Canonical {
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); g.n];
    for &(a, b, c) in &g.edges {
        adj[a].push((b, c));
        adj[b].push((a, c));
    }
    let mut colors: Vec<u32> = g.vcolor.clone();
    colors.sort_unstable();
    colors.dedup();
    let cells: Vec<usize> = g
        .vcolor
        .iter()
        .map(|c| colors.binary_search(c).unwrap())
        .collect();
    let mut best: Option<Canonical> = None;
    search(g, &adj, cells, &mut best);
    best.unwrap_or(Canonical {
        code: vec![0],
        labeling: Vec::new(),
    })
}

fn refine(adj: &[Vec<(usize, u32)>], mut cells: Vec<usize>) -> Vec<usize> {
    let n = cells.len();
    let mut count = distinct(&cells);
    loop {
        let mut sigs: Vec<(usize, Vec<(usize, u32)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, u32)> = adj[v].iter().map(|&(w, c)| (cells[w], c)).collect();
                nb.sort_unstable();
                (cells[v], nb)
            })
            .collect();
        let mut order: Vec<&(usize, Vec<(usize, u32)>)> = sigs.iter().collect();
        order.sort();
        order.dedup();
        let order: Vec<(usize, Vec<(usize, u32)>)> = order.into_iter().cloned().collect();
        let next: Vec<usize> = sigs
            .iter_mut()
            .map(|s| order.binary_search(s).unwrap())
            .collect();
        let next_count = order.len();
        cells = next;
        if next_count == count {
            return cells;
        }
        count = next_count;
    }
}

fn distinct(cells: &[usize]) -> usize {
    let mut c = cells.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search(
    g: &ColoredGraph,
    adj: &[Vec<(usize, u32)>],
    cells: Vec<usize>,
    best: &mut Option<Canonical>,
) {
    let cells = refine(adj, cells);
    let n = cells.len();
    let mut sizes = vec![0usize; n.max(1)];
    for &c in &cells {
        sizes[c] += 1;
    }
    match (0..n).find(|&c| sizes[c] > 1) {
        None => {
            let code = leaf_code(g, &cells);
            if best.as_ref().map_or(true, |b| code < b.code) {
                *best = Some(Canonical {
                    code,
                    labeling: cells,
                });
            }
        }
        Some(target) => {
            for v in (0..n).filter(|&v| cells[v] == target) {
                let split: Vec<usize> = (0..n)
                    .map(|w| if w == v { 2 * cells[w] } else { 2 * cells[w] + 1 })
                    .collect();
                search(g, adj, compress(&split), best);
            }
        }
    }
}

fn compress(keys: &[usize]) -> Vec<usize> {
    let mut sorted = keys.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap()).collect()
}

fn leaf_code(g: &ColoredGraph, labeling: &[usize]) -> Vec<u64> {
    let mut vc = vec![0u64; g.n];
    for v in 0..g.n {
        vc[labeling[v]] = g.vcolor[v] as u64;
    }
    let mut es: Vec<(u64, u64, u64)> = g
        .edges
        .iter()
        .map(|&(a, b, c)| {
            let (x, y) = (labeling[a] as u64, labeling[b] as u64);
            (x.min(y), x.max(y), c as u64)
        })
        .collect();
    es.sort_unstable();
    let mut code = Vec::with_capacity(2 + g.n + 3 * es.len());
    code.push(g.n as u64);
    code.extend(vc);
    code.push(es.len() as u64);
    for (a, b, c) in es {
        code.extend([a, b, c]);
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabel(g: &ColoredGraph, perm: &[usize]) -> ColoredGraph {
        let mut h = ColoredGraph::new(g.n);
        for v in 0..g.n {
            h.vcolor[perm[v]] = g.vcolor[v];
        }
        for &(a, b, c) in g.edges.iter().rev() {
            h.add_edge(perm[b], perm[a], c);
        }
        h
    }

    #[test]
    fn invariant_under_relabelling() {
        let mut g = ColoredGraph::new(5);
        for &(a, b) in &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (1, 1)] {
            g.add_edge(a, b, 0);
        }
        let h = relabel(&g, &[3, 0, 4, 1, 2]);
        assert_eq!(canonical(&g).code, canonical(&h).code);
    }

    #[test]
    fn separates_loop_placement() {
        let mut g = ColoredGraph::new(3);
        let mut h = ColoredGraph::new(3);
        for &(a, b) in &[(0, 1), (1, 2)] {
            g.add_edge(a, b, 0);
            h.add_edge(a, b, 0);
        }
        g.add_edge(0, 0, 0);
        h.add_edge(1, 1, 0);
        assert_ne!(canonical(&g).code, canonical(&h).code);
    }
}
