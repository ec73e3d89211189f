//! Parametric builders: path-aligned products of cycles and complete
//! graphs, coronas, caterpillars, and the overlap-changing isomorphism
//! transforms with checked vertex bijections.
//!
//! Product vertex layout is fixed so colorings can address vertices
//! deterministically: path vertices come first in path order, then the
//! off-path vertices of each copy. Within a cycle copy the off-path
//! vertices are indexed along the cycle starting at the neighbor of the
//! copy's first path vertex and ending at the neighbor of its last.

use crate::graph::{Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid overlap {overlap} for base size {base_size}")]
    InvalidOverlap { overlap: usize, base_size: usize },
    #[error("input is not a tree (needs connected with |E| = |V| - 1)")]
    NotATree,
    #[error("not a caterpillar: vertex {0} keeps degree >= 3 after removing pendant edges")]
    NotACaterpillar(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseKind {
    Cycle,
    Complete,
}

impl BaseKind {
    pub fn name(&self) -> &'static str {
        match self {
            BaseKind::Cycle => "cycle",
            BaseKind::Complete => "complete",
        }
    }
}

/// A path-aligned product: `copies` copies of the base graph on `base_size`
/// vertices, the i-th sharing `overlap` consecutive vertices of a path of
/// length `overlap * copies`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProductSpec {
    pub base_kind: BaseKind,
    pub base_size: usize,
    pub overlap: usize,
    pub copies: usize,
}

impl ProductSpec {
    pub fn new(
        base_kind: BaseKind,
        base_size: usize,
        overlap: usize,
        copies: usize,
    ) -> Result<Self, ConstructionError> {
        if base_size < 3 {
            return Err(ConstructionError::InvalidParameter(
                "base graph needs at least 3 vertices".into(),
            ));
        }
        if copies == 0 {
            return Err(ConstructionError::InvalidParameter(
                "need at least one copy".into(),
            ));
        }
        if overlap == 0 || overlap > base_size {
            return Err(ConstructionError::InvalidOverlap {
                overlap,
                base_size,
            });
        }
        Ok(ProductSpec {
            base_kind,
            base_size,
            overlap,
            copies,
        })
    }

    pub fn path_len(&self) -> usize {
        self.overlap * self.copies
    }

    pub fn extras_per_copy(&self) -> usize {
        self.base_size - self.overlap
    }

    pub fn vertex_count(&self) -> usize {
        self.copies * self.base_size
    }

    /// Global index of path position `pos` (0-based) inside copy `i`.
    pub fn path_vertex(&self, copy: usize, pos: usize) -> usize {
        copy * self.overlap + pos
    }

    /// Global index of the j-th off-path vertex of copy `i`.
    pub fn extra_vertex(&self, copy: usize, j: usize) -> usize {
        self.path_len() + copy * self.extras_per_copy() + j
    }

    pub fn describe(&self) -> String {
        format!(
            "product {} n={} l={} t={}",
            self.base_kind.name(),
            self.base_size,
            self.overlap,
            self.copies
        )
    }
}

/// Builds the product graph for a spec.
pub fn path_aligned_product(spec: &ProductSpec) -> Graph {
    let l = spec.overlap;
    let t = spec.copies;
    let path_len = spec.path_len();
    let extras = spec.extras_per_copy();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for j in 0..path_len - 1 {
        edges.push((j, j + 1));
    }
    for i in 0..t {
        let first = spec.path_vertex(i, 0);
        let last = spec.path_vertex(i, l - 1);
        match spec.base_kind {
            BaseKind::Cycle => {
                if extras == 0 {
                    // whole cycle lies on the path; close it directly
                    edges.push((first, last));
                } else {
                    edges.push((first, spec.extra_vertex(i, 0)));
                    for j in 0..extras - 1 {
                        edges.push((spec.extra_vertex(i, j), spec.extra_vertex(i, j + 1)));
                    }
                    edges.push((spec.extra_vertex(i, extras - 1), last));
                }
            }
            BaseKind::Complete => {
                let members: Vec<usize> = (0..l)
                    .map(|q| spec.path_vertex(i, q))
                    .chain((0..extras).map(|j| spec.extra_vertex(i, j)))
                    .collect();
                for a in 0..members.len() {
                    for b in a + 1..members.len() {
                        let (u, v) = (members[a], members[b]);
                        // consecutive path vertices are already joined
                        if v == u + 1 && v < path_len {
                            continue;
                        }
                        edges.push((u, v));
                    }
                }
            }
        }
    }
    let mut g = Graph::new(spec.vertex_count(), &edges).expect("spec invariants ensure validity");
    for j in 0..path_len {
        g.set_label(j, format!("path:{}", j + 1));
    }
    for i in 0..t {
        for j in 0..extras {
            g.set_label(
                spec.extra_vertex(i, j),
                format!("{}:{}:{}", spec.base_kind.name(), i + 1, j + 1),
            );
        }
    }
    g
}

/// A vertex bijection between two graphs; `attested` is set once the
/// edge-preservation check has passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub forward: Vec<usize>,
    pub attested: bool,
}

impl IsoWitness {
    pub fn new(forward: Vec<usize>) -> Self {
        IsoWitness {
            forward,
            attested: false,
        }
    }

    /// Checks bijectivity and that edges map exactly onto edges; records
    /// success in `attested`.
    pub fn verify(&mut self, source: &Graph, target: &Graph) -> bool {
        self.attested = false;
        let n = source.vertex_count();
        if target.vertex_count() != n || self.forward.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &img in &self.forward {
            if img >= n || seen[img] {
                return false;
            }
            seen[img] = true;
        }
        for u in 0..n {
            for v in u + 1..n {
                if source.has_edge(u, v) != target.has_edge(self.forward[u], self.forward[v]) {
                    return false;
                }
            }
        }
        self.attested = true;
        true
    }

    pub fn apply(&self, v: usize) -> usize {
        self.forward[v]
    }
}

/// Re-routes each cycle copy through its off-path arc, producing the
/// isomorphic spec with overlap `n - l + 2`. The bijection is built
/// constructively from that re-routing, not searched for.
pub fn cycle_overlap_transform(
    spec: &ProductSpec,
) -> Result<(ProductSpec, IsoWitness), ConstructionError> {
    if spec.base_kind != BaseKind::Cycle {
        return Err(ConstructionError::InvalidParameter(
            "cycle transform needs a cycle base".into(),
        ));
    }
    if spec.overlap < 2 {
        return Err(ConstructionError::InvalidOverlap {
            overlap: spec.overlap,
            base_size: spec.base_size,
        });
    }
    let n = spec.base_size;
    let l = spec.overlap;
    let l2 = n - l + 2;
    let target = ProductSpec::new(BaseKind::Cycle, n, l2, spec.copies)?;
    let mut forward = vec![0usize; spec.vertex_count()];
    for i in 0..spec.copies {
        // the old off-path arc (plus its two anchors) becomes the new path
        // segment; the old interior path vertices become the new arc
        forward[spec.path_vertex(i, 0)] = target.path_vertex(i, 0);
        forward[spec.path_vertex(i, l - 1)] = target.path_vertex(i, l2 - 1);
        for j in 0..spec.extras_per_copy() {
            forward[spec.extra_vertex(i, j)] = target.path_vertex(i, j + 1);
        }
        for r in 1..l - 1 {
            forward[spec.path_vertex(i, r)] = target.extra_vertex(i, r - 1);
        }
    }
    let source_graph = path_aligned_product(spec);
    let target_graph = path_aligned_product(&target);
    let mut witness = IsoWitness::new(forward);
    if !witness.verify(&source_graph, &target_graph) {
        return Err(ConstructionError::InvalidParameter(
            "internal: cycle transform bijection failed verification".into(),
        ));
    }
    Ok((target, witness))
}

/// Swaps which vertices of each complete-graph copy lie on the path,
/// producing the isomorphic spec with overlap `target_overlap`.
pub fn complete_overlap_transform(
    spec: &ProductSpec,
    target_overlap: usize,
) -> Result<(ProductSpec, IsoWitness), ConstructionError> {
    if spec.base_kind != BaseKind::Complete {
        return Err(ConstructionError::InvalidParameter(
            "complete transform needs a complete base".into(),
        ));
    }
    let n = spec.base_size;
    if spec.overlap < 2 {
        return Err(ConstructionError::InvalidOverlap {
            overlap: spec.overlap,
            base_size: n,
        });
    }
    if target_overlap < 2 || target_overlap > n {
        return Err(ConstructionError::InvalidOverlap {
            overlap: target_overlap,
            base_size: n,
        });
    }
    let l = spec.overlap;
    let l2 = target_overlap;
    let target = ProductSpec::new(BaseKind::Complete, n, l2, spec.copies)?;
    let mut forward = vec![0usize; spec.vertex_count()];
    for i in 0..spec.copies {
        // only the two inter-copy anchors matter; the other n-2 vertices of
        // a complete copy are interchangeable
        let src_middle: Vec<usize> = (1..l - 1)
            .map(|r| spec.path_vertex(i, r))
            .chain((0..spec.extras_per_copy()).map(|j| spec.extra_vertex(i, j)))
            .collect();
        let dst_middle: Vec<usize> = (1..l2 - 1)
            .map(|r| target.path_vertex(i, r))
            .chain((0..target.extras_per_copy()).map(|j| target.extra_vertex(i, j)))
            .collect();
        forward[spec.path_vertex(i, 0)] = target.path_vertex(i, 0);
        forward[spec.path_vertex(i, l - 1)] = target.path_vertex(i, l2 - 1);
        for (s, d) in src_middle.iter().zip(&dst_middle) {
            forward[*s] = *d;
        }
    }
    let source_graph = path_aligned_product(spec);
    let target_graph = path_aligned_product(&target);
    let mut witness = IsoWitness::new(forward);
    if !witness.verify(&source_graph, &target_graph) {
        return Err(ConstructionError::InvalidParameter(
            "internal: complete transform bijection failed verification".into(),
        ));
    }
    Ok((target, witness))
}

/// Attaches `p` pendant leaves to every vertex of `g`.
pub fn corona(g: &Graph, p: usize) -> Result<Graph, ConstructionError> {
    if p == 0 {
        return Err(ConstructionError::InvalidParameter(
            "corona needs p >= 1".into(),
        ));
    }
    let n = g.vertex_count();
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    for v in 0..n {
        for j in 0..p {
            edges.push((v, n + v * p + j));
        }
    }
    let mut out = Graph::new(n * (1 + p), &edges)?;
    for v in 0..n {
        if let Some(tag) = g.label(v) {
            let tag = tag.to_string();
            out.set_label(v, tag);
        }
        for j in 0..p {
            out.set_label(n + v * p + j, format!("leaf:{}:{}", v + 1, j + 1));
        }
    }
    Ok(out)
}

/// Caterpillar description: backbone of `len()` vertices, the i-th carrying
/// `leaf_counts[i]` leaves. Canonical form asks the two backbone ends to
/// carry a leaf (when the backbone has at least two vertices) and the count
/// sequence to be lexicographically no larger than its reversal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CaterpillarSpec {
    leaf_counts: Vec<usize>,
}

impl CaterpillarSpec {
    pub fn new(leaf_counts: Vec<usize>) -> Result<Self, ConstructionError> {
        if leaf_counts.is_empty() {
            return Err(ConstructionError::InvalidParameter(
                "backbone needs at least one vertex".into(),
            ));
        }
        Ok(CaterpillarSpec { leaf_counts })
    }

    pub fn len(&self) -> usize {
        self.leaf_counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaf_counts.is_empty()
    }

    pub fn leaf_counts(&self) -> &[usize] {
        &self.leaf_counts
    }

    pub fn vertex_count(&self) -> usize {
        self.len() + self.leaf_counts.iter().sum::<usize>()
    }

    /// Endpoint condition of the canonical form: m_1, m_l >= 1 when l >= 2.
    pub fn has_canonical_endpoints(&self) -> bool {
        self.len() == 1 || (self.leaf_counts[0] >= 1 && *self.leaf_counts.last().unwrap() >= 1)
    }

    pub fn reversed(&self) -> CaterpillarSpec {
        let mut m = self.leaf_counts.clone();
        m.reverse();
        CaterpillarSpec { leaf_counts: m }
    }

    /// Lexicographically smaller of the spec and its reversal.
    pub fn canonicalized(&self) -> CaterpillarSpec {
        let rev = self.reversed();
        if rev.leaf_counts < self.leaf_counts {
            rev
        } else {
            self.clone()
        }
    }

    pub fn backbone_vertex(&self, i: usize) -> usize {
        i
    }

    pub fn leaf_vertex(&self, parent: usize, j: usize) -> usize {
        self.len() + self.leaf_counts[..parent].iter().sum::<usize>() + j
    }

    pub fn describe(&self) -> String {
        format!(
            "caterpillar {}:{}",
            self.len(),
            self.leaf_counts
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Builds the caterpillar graph. Non-canonical specs still build; the
/// recognizer is the component that insists on canonical form.
pub fn caterpillar(spec: &CaterpillarSpec) -> Graph {
    let l = spec.len();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..l - 1 {
        edges.push((i, i + 1));
    }
    for (i, &m) in spec.leaf_counts().iter().enumerate() {
        for j in 0..m {
            edges.push((i, spec.leaf_vertex(i, j)));
        }
    }
    let mut g = Graph::new(spec.vertex_count(), &edges).expect("spec invariants ensure validity");
    for i in 0..l {
        g.set_label(i, format!("spine:{}", i + 1));
    }
    for (i, &m) in spec.leaf_counts().iter().enumerate() {
        for j in 0..m {
            g.set_label(spec.leaf_vertex(i, j), format!("leaf:{}:{}", i + 1, j + 1));
        }
    }
    g
}

/// Recovers the canonical caterpillar spec of a tree, or refuses naming a
/// vertex that keeps degree >= 3 after all pendant edges are removed.
pub fn tree_to_caterpillar_spec(g: &Graph) -> Result<CaterpillarSpec, ConstructionError> {
    let n = g.vertex_count();
    if n == 0 || g.edge_count() != n - 1 || !g.is_connected() {
        return Err(ConstructionError::NotATree);
    }
    if n == 1 {
        return CaterpillarSpec::new(vec![0]);
    }
    if n == 2 {
        return CaterpillarSpec::new(vec![1]);
    }
    let residual: Vec<usize> = (0..n).filter(|&v| g.degree(v) > 1).collect();
    let in_residual = {
        let mut f = vec![false; n];
        for &v in &residual {
            f[v] = true;
        }
        f
    };
    // n >= 3 and connected, so some vertex has degree > 1
    if residual.len() == 1 {
        let c = residual[0];
        return CaterpillarSpec::new(vec![g.degree(c)]);
    }
    let rdeg = |v: usize| g.neighbors(v).iter().filter(|&&u| in_residual[u]).count();
    if let Some(&v) = residual.iter().find(|&&v| rdeg(v) >= 3) {
        return Err(ConstructionError::NotACaterpillar(v));
    }
    let ends: Vec<usize> = residual.iter().copied().filter(|&v| rdeg(v) <= 1).collect();
    debug_assert_eq!(ends.len(), 2);
    let mut order = Vec::with_capacity(residual.len());
    let mut prev = usize::MAX;
    let mut cur = ends[0];
    loop {
        order.push(cur);
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&u| in_residual[u] && u != prev);
        match next {
            Some(u) => {
                prev = cur;
                cur = u;
            }
            None => break,
        }
    }
    let m: Vec<usize> = order
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&u| !in_residual[u]).count())
        .collect();
    Ok(CaterpillarSpec::new(m)?.canonicalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_pairs_distances, build_complete, build_path};

    #[test]
    fn product_counts() {
        // P_10 over five C_4 copies: 20 vertices, 9 path edges + 5 arcs of 3
        let spec = ProductSpec::new(BaseKind::Cycle, 4, 2, 5).unwrap();
        let g = path_aligned_product(&spec);
        assert_eq!(g.vertex_count(), 20);
        assert_eq!(g.edge_count(), 24);
        assert_eq!(g.label(0), Some("path:1"));
        assert_eq!(g.label(10), Some("cycle:1:1"));

        let spec = ProductSpec::new(BaseKind::Complete, 4, 2, 3).unwrap();
        let g = path_aligned_product(&spec);
        assert_eq!(g.vertex_count(), 12);
        // 5 path edges + per copy the 5 remaining K_4 edges
        assert_eq!(g.edge_count(), 5 + 3 * 5);
    }

    #[test]
    fn single_copy_products_collapse_to_base() {
        let spec = ProductSpec::new(BaseKind::Cycle, 8, 3, 1).unwrap();
        let g = path_aligned_product(&spec);
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 8);
        assert!(g.degree_sequence().iter().all(|&d| d == 2));

        let spec = ProductSpec::new(BaseKind::Complete, 4, 2, 1).unwrap();
        let g = path_aligned_product(&spec);
        let k4 = build_complete(4).unwrap();
        assert_eq!(g.edges(), k4.edges());
    }

    #[test]
    fn single_anchor_products_hang_whole_copies_off_the_path() {
        // overlap 1 is outside the pattern registry but the builder
        // supports it for experiments
        let spec = ProductSpec::new(BaseKind::Cycle, 4, 1, 3).unwrap();
        let g = path_aligned_product(&spec);
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edge_count(), 2 + 3 * 4);
        assert!(g.is_connected());
        assert_eq!(g.degree(0), 1 + 2);

        let spec = ProductSpec::new(BaseKind::Complete, 4, 1, 2).unwrap();
        let g = path_aligned_product(&spec);
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 1 + 2 * 6);
    }

    #[test]
    fn full_overlap_cycle_closes_on_path() {
        let spec = ProductSpec::new(BaseKind::Cycle, 4, 4, 2).unwrap();
        let g = path_aligned_product(&spec);
        assert_eq!(g.vertex_count(), 8);
        assert!(g.has_edge(0, 3));
        assert!(g.has_edge(4, 7));
        assert!(g.has_edge(3, 4));
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            ProductSpec::new(BaseKind::Cycle, 4, 5, 1),
            Err(ConstructionError::InvalidOverlap { .. })
        ));
        assert!(ProductSpec::new(BaseKind::Cycle, 4, 2, 0).is_err());
        assert!(ProductSpec::new(BaseKind::Cycle, 2, 2, 1).is_err());
    }

    #[test]
    fn cycle_transform_examples() {
        let spec = ProductSpec::new(BaseKind::Cycle, 8, 3, 5).unwrap();
        let (t, w) = cycle_overlap_transform(&spec).unwrap();
        assert_eq!(t.overlap, 7);
        assert!(w.attested);

        let spec = ProductSpec::new(BaseKind::Cycle, 4, 2, 2).unwrap();
        let (t, w) = cycle_overlap_transform(&spec).unwrap();
        assert_eq!(t.overlap, 4);
        assert!(w.attested);

        // fixed point: l = (n + 2) / 2
        let spec = ProductSpec::new(BaseKind::Cycle, 6, 4, 3).unwrap();
        let (t, w) = cycle_overlap_transform(&spec).unwrap();
        assert_eq!(t.overlap, 4);
        assert!(w.attested);
    }

    #[test]
    fn complete_transform_examples() {
        let spec = ProductSpec::new(BaseKind::Complete, 4, 2, 3).unwrap();
        let (t, w) = complete_overlap_transform(&spec, 4).unwrap();
        assert_eq!(t.overlap, 4);
        assert!(w.attested);

        let spec = ProductSpec::new(BaseKind::Complete, 5, 3, 2).unwrap();
        let (t, w) = complete_overlap_transform(&spec, 3).unwrap();
        assert_eq!(t, spec);
        assert!(w.attested);
        assert!((0..spec.vertex_count()).all(|v| w.apply(v) == v));

        let spec = ProductSpec::new(BaseKind::Complete, 5, 2, 2).unwrap();
        let (_, w) = complete_overlap_transform(&spec, 5).unwrap();
        assert!(w.attested);

        assert!(complete_overlap_transform(&spec, 6).is_err());
        assert!(complete_overlap_transform(&spec, 1).is_err());
    }

    #[test]
    fn corona_shapes() {
        let star = corona(&build_path(1).unwrap(), 3).unwrap();
        assert_eq!(star.vertex_count(), 4);
        assert_eq!(star.degree(0), 3);

        let g = corona(&build_path(4).unwrap(), 1).unwrap();
        assert_eq!(g.vertex_count(), 8);

        let g = corona(&build_path(5).unwrap(), 2).unwrap();
        assert_eq!(g.vertex_count(), 15);
        assert!(corona(&g, 0).is_err());
    }

    #[test]
    fn caterpillar_shapes() {
        let spec = CaterpillarSpec::new(vec![4, 1, 0, 1]).unwrap();
        let g = caterpillar(&spec);
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.label(0), Some("spine:1"));
        assert_eq!(g.label(4), Some("leaf:1:1"));

        // C(1; k) is the star K_{1,k}
        let star = caterpillar(&CaterpillarSpec::new(vec![3]).unwrap());
        assert_eq!(star.degree(0), 3);

        // C(2; 1,1) is P_4
        let p4ish = caterpillar(&CaterpillarSpec::new(vec![1, 1]).unwrap());
        let dm = all_pairs_distances(&p4ish).unwrap();
        assert_eq!(p4ish.vertex_count(), 4);
        assert_eq!(dm.diameter(), 3);
    }

    #[test]
    fn tree_recognition() {
        // spider with three legs of length 3 keeps a degree-3 residual vertex
        let mut edges = Vec::new();
        for leg in 0..3 {
            let base = 1 + leg * 3;
            edges.push((0, base));
            edges.push((base, base + 1));
            edges.push((base + 1, base + 2));
        }
        let spider = Graph::new(10, &edges).unwrap();
        assert!(matches!(
            tree_to_caterpillar_spec(&spider),
            Err(ConstructionError::NotACaterpillar(0))
        ));

        let p6 = build_path(6).unwrap();
        let spec = tree_to_caterpillar_spec(&p6).unwrap();
        assert_eq!(spec.leaf_counts(), &[1, 0, 0, 1]);

        // round-trip through the builder
        let spec = CaterpillarSpec::new(vec![4, 1, 0, 1]).unwrap();
        let recovered = tree_to_caterpillar_spec(&caterpillar(&spec)).unwrap();
        assert_eq!(recovered, spec.canonicalized());

        let not_tree = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(matches!(
            tree_to_caterpillar_spec(&not_tree),
            Err(ConstructionError::NotATree)
        ));
    }

    #[test]
    fn tiny_trees() {
        assert_eq!(
            tree_to_caterpillar_spec(&build_path(1).unwrap())
                .unwrap()
                .leaf_counts(),
            &[0]
        );
        assert_eq!(
            tree_to_caterpillar_spec(&build_path(2).unwrap())
                .unwrap()
                .leaf_counts(),
            &[1]
        );
        assert_eq!(
            tree_to_caterpillar_spec(&build_path(3).unwrap())
                .unwrap()
                .leaf_counts(),
            &[2]
        );
    }

    #[test]
    fn canonical_orientation_tie_break() {
        let spec = CaterpillarSpec::new(vec![2, 0, 1]).unwrap();
        assert_eq!(spec.canonicalized().leaf_counts(), &[1, 0, 2]);
        assert!(spec.has_canonical_endpoints());
        assert!(!CaterpillarSpec::new(vec![0, 1]).unwrap().has_canonical_endpoints());
    }
}
