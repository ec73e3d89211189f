//! Packing-coloring validation, lower bounds, a brute-force oracle and an
//! exact solver.
//!
//! A coloring is a packing coloring when any two distinct vertices sharing
//! color `i` are at distance greater than `i`. The exact solver runs
//! iterative deepening on the color budget `k`; each round is a depth-first
//! feasibility search over vertices in breadth-first order from vertex 0,
//! trying colors in ascending order, so results are deterministic.

use crate::graph::{DistanceMatrix, Graph};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PackingError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("oracle limited to 16 vertices, got {0}")]
    OracleTooLarge(usize),
    #[error("no packing coloring with at most {0} colors")]
    Exceeded(u32),
}

/// Total vertex-to-color map; colors are positive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingColoring {
    colors: Vec<u32>,
}

impl PackingColoring {
    pub fn new(colors: Vec<u32>) -> Result<Self, String> {
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(format!("vertex {} has color 0; colors start at 1", v + 1));
        }
        Ok(PackingColoring { colors })
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    /// Largest color present (0 for the empty coloring).
    pub fn k_used(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }
}

/// One offending pair: both vertices share `color` but sit at distance `dist <= color`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub u: usize,
    pub v: usize,
    pub color: u32,
    pub dist: u32,
}

/// Returns every violating pair; the empty list means the coloring is valid.
pub fn validate(
    dm: &DistanceMatrix,
    c: &PackingColoring,
) -> Result<Vec<Violation>, PackingError> {
    let n = dm.vertex_count();
    if c.vertex_count() != n {
        return Err(PackingError::InvalidInput(format!(
            "coloring has {} entries for a {}-vertex graph",
            c.vertex_count(),
            n
        )));
    }
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if c.color(u) == c.color(v) && dm.dist(u, v) <= c.color(u) {
                out.push(Violation {
                    u,
                    v,
                    color: c.color(u),
                    dist: dm.dist(u, v),
                });
            }
        }
    }
    Ok(out)
}

pub fn is_valid(dm: &DistanceMatrix, c: &PackingColoring) -> bool {
    matches!(validate(dm, c), Ok(v) if v.is_empty())
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn test(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn intersects(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .any(|(a, b)| a & b != 0)
    }
}

/// Size of the largest clique, by branch and bound over candidate bitsets.
pub fn max_clique_size(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    let mut adj = vec![BitSet::new(n); n];
    for &(u, v) in g.edges() {
        adj[u].set(v);
        adj[v].set(u);
    }
    let mut all = BitSet::new(n);
    for v in 0..n {
        all.set(v);
    }
    let mut best = 0;
    clique_rec(&adj, &all, 0, &mut best, n);
    best
}

fn clique_rec(adj: &[BitSet], cand: &BitSet, size: usize, best: &mut usize, n: usize) {
    let count: usize = cand.words.iter().map(|w| w.count_ones() as usize).sum();
    if size + count <= *best {
        return;
    }
    if count == 0 {
        *best = (*best).max(size);
        return;
    }
    let mut cand = cand.clone();
    for v in 0..n {
        if !cand.test(v) {
            continue;
        }
        let remaining: usize = cand.words.iter().map(|w| w.count_ones() as usize).sum();
        if size + remaining <= *best {
            return;
        }
        cand.clear(v);
        let mut next = cand.clone();
        for (w, a) in next.words.iter_mut().zip(&adj[v].words) {
            *w &= a;
        }
        clique_rec(adj, &next, size + 1, best, n);
    }
    *best = (*best).max(size);
}

/// Largest set of vertices with pairwise distance greater than `c`.
fn max_distance_packing(dm: &DistanceMatrix, c: u32) -> usize {
    let n = dm.vertex_count();
    let mut conflict = vec![BitSet::new(n); n];
    for u in 0..n {
        for v in 0..n {
            if u != v && dm.dist(u, v) <= c {
                conflict[u].set(v);
            }
        }
    }
    let mut all = BitSet::new(n);
    for v in 0..n {
        all.set(v);
    }
    let mut best = 0;
    mis_rec(&conflict, all, 0, &mut best, n);
    best
}

fn mis_rec(conflict: &[BitSet], cand: BitSet, size: usize, best: &mut usize, n: usize) {
    let count: usize = cand.words.iter().map(|w| w.count_ones() as usize).sum();
    if size + count <= *best {
        return;
    }
    if count == 0 {
        *best = (*best).max(size);
        return;
    }
    // branch on the first remaining vertex: either exclude it or take it
    let v = (0..n).find(|&v| cand.test(v)).unwrap();
    let mut without = cand.clone();
    without.clear(v);
    let mut with = without.clone();
    for (w, a) in with.words.iter_mut().zip(&conflict[v].words) {
        *w &= !a;
    }
    mis_rec(conflict, with, size + 1, best, n);
    mis_rec(conflict, without, size, best, n);
}

/// Lower bound on the packing chromatic number.
///
/// Combines: 2 when an edge exists, the clique number, the exact
/// diameter-2 formula (vertex cover + 1), and a counting bound where color
/// `c` is capped by the maximum `c`-packing size for `c` below the diameter
/// and by one occurrence from the diameter onwards. The exhaustive pieces
/// run only for graphs with at most 30 vertices.
pub fn lower_bound(g: &Graph, dm: &DistanceMatrix) -> u32 {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    let mut lb = 1u32;
    if g.edge_count() > 0 {
        lb = 2;
    }
    lb = lb.max(max_clique_size(g) as u32);
    if n <= 30 {
        let d = dm.diameter();
        if d == 2 {
            let alpha = max_distance_packing(dm, 1);
            lb = lb.max((n - alpha + 1) as u32);
        }
        let mut covered = 0usize;
        let mut k = 0u32;
        while covered < n {
            k += 1;
            covered += if k < d {
                max_distance_packing(dm, k)
            } else {
                1
            };
        }
        lb = lb.max(k);
    }
    lb
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub chi_p: u32,
    pub witness: PackingColoring,
    pub nodes_expanded: u64,
    pub proven_optimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(SolveResult),
    /// Node budget ran out; carries the best known upper bound and witness.
    LimitHit {
        upper: u32,
        witness: PackingColoring,
        nodes_expanded: u64,
    },
    /// Every budget up to `k_max` is infeasible; the true value is larger.
    ExceededKMax {
        k_max: u32,
        upper: u32,
        witness: PackingColoring,
        nodes_expanded: u64,
    },
}

impl SolveOutcome {
    pub fn solved(&self) -> Option<&SolveResult> {
        match self {
            SolveOutcome::Solved(r) => Some(r),
            _ => None,
        }
    }

    pub fn chi_p(&self) -> Option<u32> {
        self.solved().map(|r| r.chi_p)
    }

    /// Best validated upper bound, whatever the outcome.
    pub fn upper(&self) -> u32 {
        match self {
            SolveOutcome::Solved(r) => r.chi_p,
            SolveOutcome::LimitHit { upper, .. } => *upper,
            SolveOutcome::ExceededKMax { upper, .. } => *upper,
        }
    }

    pub fn witness(&self) -> &PackingColoring {
        match self {
            SolveOutcome::Solved(r) => &r.witness,
            SolveOutcome::LimitHit { witness, .. } => witness,
            SolveOutcome::ExceededKMax { witness, .. } => witness,
        }
    }

    pub fn nodes_expanded(&self) -> u64 {
        match self {
            SolveOutcome::Solved(r) => r.nodes_expanded,
            SolveOutcome::LimitHit { nodes_expanded, .. } => *nodes_expanded,
            SolveOutcome::ExceededKMax { nodes_expanded, .. } => *nodes_expanded,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub k_max: Option<u32>,
    pub node_limit: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            k_max: None,
            node_limit: 50_000_000,
        }
    }
}

struct Searcher<'a> {
    n: usize,
    k: u32,
    diam: u32,
    order: &'a [usize],
    degrees: &'a [usize],
    /// balls[c-1][v] = vertices within distance c of v, for c < diam only;
    /// colors from the diameter up conflict with everything, so a usage
    /// counter replaces the mask there.
    balls: Vec<Vec<BitSet>>,
    occupied: Vec<BitSet>,
    used: Vec<u32>,
    colors: Vec<u32>,
    nodes: u64,
    node_limit: u64,
}

struct NodeLimitHit;

impl<'a> Searcher<'a> {
    fn new(
        g: &'a Graph,
        dm: &'a DistanceMatrix,
        k: u32,
        order: &'a [usize],
        degrees: &'a [usize],
        node_limit: u64,
    ) -> Self {
        let n = g.vertex_count();
        let diam = dm.diameter();
        let masked = (k.min(diam.saturating_sub(1))) as usize;
        let mut balls = Vec::with_capacity(masked);
        for c in 1..=masked as u32 {
            let mut per_vertex = Vec::with_capacity(n);
            for v in 0..n {
                let mut b = BitSet::new(n);
                for u in 0..n {
                    if dm.dist(u, v) <= c {
                        b.set(u);
                    }
                }
                per_vertex.push(b);
            }
            balls.push(per_vertex);
        }
        Searcher {
            n,
            k,
            diam,
            order,
            degrees,
            balls,
            occupied: vec![BitSet::new(n); masked],
            used: vec![0; k as usize + 1],
            colors: vec![0; n],
            nodes: 0,
            node_limit,
        }
    }

    fn feasible_color(&self, v: usize, c: u32) -> bool {
        if c == 1 && self.degrees[v] >= self.k as usize {
            return false;
        }
        if c >= self.diam {
            return self.used[c as usize] == 0;
        }
        let idx = (c - 1) as usize;
        !self.occupied[idx].intersects(&self.balls[idx][v])
    }

    fn assign(&mut self, v: usize, c: u32) {
        self.colors[v] = c;
        self.used[c as usize] += 1;
        if c < self.diam {
            self.occupied[(c - 1) as usize].set(v);
        }
    }

    fn unassign(&mut self, v: usize, c: u32) {
        self.colors[v] = 0;
        self.used[c as usize] -= 1;
        if c < self.diam {
            self.occupied[(c - 1) as usize].clear(v);
        }
    }

    fn dfs(&mut self, depth: usize) -> Result<bool, NodeLimitHit> {
        if depth == self.n {
            return Ok(true);
        }
        let v = self.order[depth];
        if self.colors[v] != 0 {
            return self.dfs(depth + 1);
        }
        for c in 1..=self.k {
            if !self.feasible_color(v, c) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.node_limit {
                return Err(NodeLimitHit);
            }
            self.assign(v, c);
            let found = self.dfs(depth + 1)?;
            if found {
                return Ok(true);
            }
            self.unassign(v, c);
        }
        Ok(false)
    }
}

pub enum Feasibility {
    Feasible(PackingColoring),
    Infeasible,
    LimitHit,
}

/// Searches for a packing coloring using at most `k` colors, honoring any
/// pre-assigned `fixed` (vertex, color) pairs. `nodes` accumulates
/// expansions across calls.
pub fn find_coloring_with_k(
    g: &Graph,
    dm: &DistanceMatrix,
    k: u32,
    fixed: &[(usize, u32)],
    node_limit: u64,
    nodes: &mut u64,
) -> Feasibility {
    let order = g.bfs_order(0);
    let degrees: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    let remaining = node_limit.saturating_sub(*nodes);
    let mut s = Searcher::new(g, dm, k, &order, &degrees, remaining);
    for &(v, c) in fixed {
        if c > k || !s.feasible_color(v, c) {
            return Feasibility::Infeasible;
        }
        s.assign(v, c);
    }
    let result = s.dfs(0);
    *nodes += s.nodes;
    match result {
        Ok(true) => Feasibility::Feasible(PackingColoring::new(s.colors).unwrap()),
        Ok(false) => Feasibility::Infeasible,
        Err(NodeLimitHit) => Feasibility::LimitHit,
    }
}

/// Greedy packing coloring: vertices in breadth-first order from vertex 0,
/// each taking the smallest color with no conflict. Always succeeds, giving
/// the solver a starting upper bound.
pub fn greedy_coloring(g: &Graph, dm: &DistanceMatrix) -> PackingColoring {
    let n = g.vertex_count();
    let mut colors = vec![0u32; n];
    for &v in &g.bfs_order(0) {
        let mut c = 1u32;
        'next_color: loop {
            for u in 0..n {
                if colors[u] == c && dm.dist(u, v) <= c {
                    c += 1;
                    continue 'next_color;
                }
            }
            break;
        }
        colors[v] = c;
    }
    PackingColoring::new(colors).unwrap()
}

/// Exact packing chromatic number by iterative deepening on the color
/// budget, with the degree rule and the once-per-color rule from the
/// diameter upwards as pruning.
pub fn exact_chi_p(g: &Graph, dm: &DistanceMatrix, options: SolveOptions) -> SolveOutcome {
    let n = g.vertex_count();
    if n == 0 {
        return SolveOutcome::Solved(SolveResult {
            chi_p: 0,
            witness: PackingColoring::new(vec![]).unwrap(),
            nodes_expanded: 0,
            proven_optimal: true,
        });
    }
    let lb = lower_bound(g, dm);
    let incumbent = greedy_coloring(g, dm);
    let incumbent_k = incumbent.k_used();
    debug_assert!(is_valid(dm, &incumbent));
    let cap = options.k_max.unwrap_or(incumbent_k);
    let mut nodes = 0u64;
    let mut k = lb;
    while k < incumbent_k && k <= cap {
        match find_coloring_with_k(g, dm, k, &[], options.node_limit, &mut nodes) {
            Feasibility::Feasible(witness) => {
                debug_assert_eq!(witness.k_used(), k);
                return SolveOutcome::Solved(SolveResult {
                    chi_p: witness.k_used(),
                    witness,
                    nodes_expanded: nodes,
                    proven_optimal: true,
                });
            }
            Feasibility::Infeasible => k += 1,
            Feasibility::LimitHit => {
                return SolveOutcome::LimitHit {
                    upper: incumbent_k,
                    witness: incumbent,
                    nodes_expanded: nodes,
                };
            }
        }
    }
    if k > cap {
        return SolveOutcome::ExceededKMax {
            k_max: cap,
            upper: incumbent_k,
            witness: incumbent,
            nodes_expanded: nodes,
        };
    }
    // every k below the greedy bound is infeasible, so greedy was optimal
    SolveOutcome::Solved(SolveResult {
        chi_p: incumbent_k,
        witness: incumbent,
        nodes_expanded: nodes,
        proven_optimal: true,
    })
}

/// Independent oracle: exhaustive backtracking in plain index order with
/// direct pairwise distance checks and no solver pruning. Capped at 16
/// vertices; for cross-checks only.
pub fn brute_force_chi_p(
    g: &Graph,
    dm: &DistanceMatrix,
    k_max: u32,
) -> Result<SolveResult, PackingError> {
    let n = g.vertex_count();
    if n > 16 {
        return Err(PackingError::OracleTooLarge(n));
    }
    if n == 0 {
        return Ok(SolveResult {
            chi_p: 0,
            witness: PackingColoring::new(vec![]).unwrap(),
            nodes_expanded: 0,
            proven_optimal: true,
        });
    }
    let mut nodes = 0u64;
    for k in 1..=k_max {
        let mut colors = vec![0u32; n];
        if brute_rec(dm, k, &mut colors, 0, &mut nodes) {
            return Ok(SolveResult {
                chi_p: k,
                witness: PackingColoring::new(colors).unwrap(),
                nodes_expanded: nodes,
                proven_optimal: true,
            });
        }
    }
    Err(PackingError::Exceeded(k_max))
}

fn brute_rec(dm: &DistanceMatrix, k: u32, colors: &mut [u32], v: usize, nodes: &mut u64) -> bool {
    if v == colors.len() {
        return true;
    }
    'colors: for c in 1..=k {
        for u in 0..v {
            if colors[u] == c && dm.dist(u, v) <= c {
                continue 'colors;
            }
        }
        *nodes += 1;
        colors[v] = c;
        if brute_rec(dm, k, colors, v + 1, nodes) {
            return true;
        }
        colors[v] = 0;
    }
    false
}
