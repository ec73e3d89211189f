//! Structural recognition of caterpillars whose packing chromatic number
//! is 3, certificate colorings for the recognized families, and a
//! classification that falls back to the exact solver.
//!
//! A family template fixes the backbone length residue, which positions
//! must carry zero leaves, and which must carry exactly one; matching is
//! direct arithmetic on the leaf-count sequence, tried in both
//! orientations.

use crate::constructions::{caterpillar, CaterpillarSpec};
use crate::graph::all_pairs_distances;
use crate::packing::{
    exact_chi_p, find_coloring_with_k, is_valid, Feasibility, PackingColoring, SolveOptions,
    SolveOutcome,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CaterpillarError {
    #[error("non-canonical spec: both backbone ends need a leaf when the backbone has >= 2 vertices")]
    NonCanonical,
    #[error("no bounded coloring found within limits")]
    NoColoringFound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FamilyId {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7,
}

impl FamilyId {
    pub const ALL: [FamilyId; 7] = [
        FamilyId::G1,
        FamilyId::G2,
        FamilyId::G3,
        FamilyId::G4,
        FamilyId::G5,
        FamilyId::G6,
        FamilyId::G7,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FamilyId::G1 => "G1",
            FamilyId::G2 => "G2",
            FamilyId::G3 => "G3",
            FamilyId::G4 => "G4",
            FamilyId::G5 => "G5",
            FamilyId::G6 => "G6",
            FamilyId::G7 => "G7",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Forward,
    Reversed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMatch {
    pub family: FamilyId,
    pub k: usize,
    pub orientation: Orientation,
    /// the spec as read in the matching orientation
    pub matched: CaterpillarSpec,
}

/// Checks one family template against a leaf-count sequence read
/// left-to-right. Returns the family parameter k on a match.
fn template_match(family: FamilyId, m: &[usize]) -> Option<usize> {
    let l = m.len();
    fn zeros_at(m: &[usize], positions: impl Iterator<Item = usize>) -> bool {
        let mut positions = positions;
        positions.all(|i| m[i] == 0)
    }
    match family {
        // length 4k, zero leaves on odd backbone positions from the third
        FamilyId::G1 => {
            (l >= 4 && l % 4 == 0 && zeros_at(m, (2..l - 1).step_by(2))).then(|| l / 4)
        }
        // length 4k+1, exactly one leaf at the first vertex
        FamilyId::G2 => (l >= 5
            && l % 4 == 1
            && m[0] == 1
            && zeros_at(m, (2..l - 2).step_by(2)))
        .then(|| (l - 1) / 4),
        // length 4k+1, zero leaves on even backbone positions
        FamilyId::G3 => {
            (l >= 5 && l % 4 == 1 && zeros_at(m, (1..l - 1).step_by(2))).then(|| (l - 1) / 4)
        }
        // length 4k+2, zero leaves on odd positions from the third
        FamilyId::G4 => {
            (l % 4 == 2 && zeros_at(m, (2..l.saturating_sub(1)).step_by(2))).then(|| (l - 2) / 4)
        }
        // length 4k+3 with k >= 1, zeros as in G4 but both ends free
        FamilyId::G5 => {
            (l >= 7 && l % 4 == 3 && zeros_at(m, (2..l - 2).step_by(2))).then(|| (l - 3) / 4)
        }
        // length 3 with exactly one leaf at the last vertex
        FamilyId::G6 => (l == 3 && m[2] == 1).then_some(0),
        // length 4k+3, zero leaves on even backbone positions
        FamilyId::G7 => {
            (l >= 3 && l % 4 == 3 && zeros_at(m, (1..l - 1).step_by(2))).then(|| (l - 3) / 4)
        }
    }
}

/// All family matches of a canonical spec, in both orientations (the
/// reversed orientation is skipped for palindromic specs).
pub fn match_families(spec: &CaterpillarSpec) -> Result<Vec<FamilyMatch>, CaterpillarError> {
    if !spec.has_canonical_endpoints() {
        return Err(CaterpillarError::NonCanonical);
    }
    let mut out = Vec::new();
    let reversed = spec.reversed();
    let palindrome = reversed == *spec;
    for family in FamilyId::ALL {
        if let Some(k) = template_match(family, spec.leaf_counts()) {
            out.push(FamilyMatch {
                family,
                k,
                orientation: Orientation::Forward,
                matched: spec.clone(),
            });
        }
        if !palindrome {
            if let Some(k) = template_match(family, reversed.leaf_counts()) {
                out.push(FamilyMatch {
                    family,
                    k,
                    orientation: Orientation::Reversed,
                    matched: reversed.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Backbone coloring pattern of a family, read in match orientation.
fn backbone_pattern(family: FamilyId, k: usize) -> Vec<u32> {
    let repeat = |times: usize| [1u32, 2, 1, 3].iter().copied().cycle().take(4 * times);
    match family {
        FamilyId::G1 => [2, 3]
            .into_iter()
            .chain(repeat(k - 1))
            .chain([1, 2])
            .collect(),
        FamilyId::G2 => repeat(k).chain([2]).collect(),
        FamilyId::G3 => {
            let mut v: Vec<u32> = [3u32, 1, 2, 1].iter().copied().cycle().take(4 * k).collect();
            v.push(3);
            v
        }
        FamilyId::G4 => [2, 3].into_iter().chain(repeat(k)).collect(),
        FamilyId::G5 => [2, 3].into_iter().chain(repeat(k)).chain([2]).collect(),
        FamilyId::G6 => vec![2, 3, 1],
        FamilyId::G7 => [2, 1, 3].into_iter().chain(repeat(k)).collect(),
    }
}

/// Certificate 3-coloring from the family pattern: leaves under a 2- or
/// 3-colored backbone vertex take color 1; the single leaf under a
/// 1-colored end takes the family's stated color (3 for G2's first vertex,
/// 2 for G6's last).
pub fn certificate_3_coloring(spec: &CaterpillarSpec, m: &FamilyMatch) -> PackingColoring {
    let l = spec.len();
    let pattern = backbone_pattern(m.family, m.k);
    debug_assert_eq!(pattern.len(), l);
    let backbone_color = |i: usize| -> u32 {
        match m.orientation {
            Orientation::Forward => pattern[i],
            Orientation::Reversed => pattern[l - 1 - i],
        }
    };
    let special_leaf_color = |i: usize| -> u32 {
        // position in match orientation
        let pos = match m.orientation {
            Orientation::Forward => i,
            Orientation::Reversed => l - 1 - i,
        };
        match (m.family, pos) {
            (FamilyId::G2, 0) => 3,
            (FamilyId::G6, 2) => 2,
            _ => unreachable!("family templates keep 1-colored interior vertices leafless"),
        }
    };
    let mut colors = vec![0u32; spec.vertex_count()];
    for i in 0..l {
        colors[spec.backbone_vertex(i)] = backbone_color(i);
    }
    for (i, &count) in spec.leaf_counts().iter().enumerate() {
        for j in 0..count {
            colors[spec.leaf_vertex(i, j)] = if backbone_color(i) == 1 {
                special_leaf_color(i)
            } else {
                1
            };
        }
    }
    PackingColoring::new(colors).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiClassValue {
    One,
    Two,
    Three,
    More,
}

impl ChiClassValue {
    pub fn as_str(&self) -> &'static str {
        match self {
            ChiClassValue::One => "1",
            ChiClassValue::Two => "2",
            ChiClassValue::Three => "3",
            ChiClassValue::More => "more",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ChiClass {
    pub value: ChiClassValue,
    /// validates with exactly 1, 2 or 3 colors when value <= 3
    pub certificate: Option<PackingColoring>,
    pub matches: Vec<FamilyMatch>,
    /// for `More`: 6 when the backbone has at most 34 vertices, else 7
    pub upper_bound_note: Option<u32>,
    /// for `More`: the exact value when the graph fit the solver budget
    pub exact: Option<u32>,
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub solver_vertex_budget: usize,
    pub node_limit: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            solver_vertex_budget: 30,
            node_limit: 20_000_000,
        }
    }
}

/// Classifies the packing chromatic number of a canonical caterpillar:
/// 1 for the single vertex, 2 for stars, 3 exactly when a family matches,
/// otherwise `More` with the applicable upper bound.
pub fn classify_chi_p(
    spec: &CaterpillarSpec,
    options: ClassifyOptions,
) -> Result<ChiClass, CaterpillarError> {
    if !spec.has_canonical_endpoints() {
        return Err(CaterpillarError::NonCanonical);
    }
    let l = spec.len();
    if l == 1 {
        let leaves = spec.leaf_counts()[0];
        if leaves == 0 {
            return Ok(ChiClass {
                value: ChiClassValue::One,
                certificate: Some(PackingColoring::new(vec![1]).unwrap()),
                matches: Vec::new(),
                upper_bound_note: None,
                exact: Some(1),
            });
        }
        // stars have diameter 2 and vertex cover 1
        let mut colors = vec![1u32; spec.vertex_count()];
        colors[0] = 2;
        return Ok(ChiClass {
            value: ChiClassValue::Two,
            certificate: Some(PackingColoring::new(colors).unwrap()),
            matches: Vec::new(),
            upper_bound_note: None,
            exact: Some(2),
        });
    }
    let matches = match_families(spec)?;
    if !matches.is_empty() {
        let certificate = certificate_3_coloring(spec, &matches[0]);
        return Ok(ChiClass {
            value: ChiClassValue::Three,
            certificate: Some(certificate),
            matches,
            upper_bound_note: None,
            exact: Some(3),
        });
    }
    let upper = if l <= 34 { 6 } else { 7 };
    let mut exact = None;
    if spec.vertex_count() <= options.solver_vertex_budget {
        let g = caterpillar(spec);
        let dm = all_pairs_distances(&g).expect("caterpillars are connected");
        if let SolveOutcome::Solved(r) = exact_chi_p(
            &g,
            &dm,
            SolveOptions {
                k_max: None,
                node_limit: options.node_limit,
            },
        ) {
            exact = Some(r.chi_p);
        }
    }
    Ok(ChiClass {
        value: ChiClassValue::More,
        certificate: None,
        matches: Vec::new(),
        upper_bound_note: Some(upper),
        exact,
    })
}

/// Packing coloring of a path using only colors from `min_color` up to
/// `max_color`, by backtracking. Used for backbones whose leaves all take
/// color 1.
fn restricted_path_coloring(len: usize, min_color: u32, max_color: u32) -> Option<Vec<u32>> {
    fn rec(colors: &mut Vec<u32>, len: usize, min_color: u32, max_color: u32) -> bool {
        if colors.len() == len {
            return true;
        }
        let i = colors.len();
        'next: for c in min_color..=max_color {
            for (j, &cj) in colors.iter().enumerate() {
                if cj == c && (i - j) as u32 <= c {
                    continue 'next;
                }
            }
            colors.push(c);
            if rec(colors, len, min_color, max_color) {
                return true;
            }
            colors.pop();
        }
        false
    }
    let mut colors = Vec::with_capacity(len);
    rec(&mut colors, len, min_color, max_color).then_some(colors)
}

/// A validated coloring within the known caterpillar bound: the family
/// certificate when one applies, otherwise a backbone coloring avoiding
/// color 1 (all leaves then take 1), with the exact solver as a last
/// resort. Returns the coloring and the bound it was held to (6 for
/// backbones up to 34 vertices, 7 beyond).
pub fn bounded_coloring(
    spec: &CaterpillarSpec,
) -> Result<(PackingColoring, u32), CaterpillarError> {
    let class = classify_chi_p(
        spec,
        ClassifyOptions {
            solver_vertex_budget: 0,
            node_limit: 0,
        },
    )?;
    let bound = if spec.len() <= 34 { 6 } else { 7 };
    if let Some(cert) = class.certificate {
        return Ok((cert, bound));
    }
    let l = spec.len();
    if let Some(backbone) = restricted_path_coloring(l, 2, bound) {
        let mut colors = vec![1u32; spec.vertex_count()];
        for (i, &c) in backbone.iter().enumerate() {
            colors[spec.backbone_vertex(i)] = c;
        }
        return Ok((PackingColoring::new(colors).unwrap(), bound));
    }
    let g = caterpillar(spec);
    let dm = all_pairs_distances(&g).expect("caterpillars are connected");
    let mut nodes = 0u64;
    match find_coloring_with_k(&g, &dm, bound, &[], 200_000_000, &mut nodes) {
        Feasibility::Feasible(c) => Ok((c, bound)),
        _ => Err(CaterpillarError::NoColoringFound),
    }
}

#[derive(Debug, Clone)]
pub struct CrosscheckReport {
    pub specs_checked: usize,
    pub disagreements: Vec<String>,
    pub partial: bool,
}

/// Enumerates every canonical spec with backbone length up to `l_max` and
/// per-vertex leaf counts up to `m_max`, and checks that the recognizer
/// says 3 exactly when the exact solver computes 3 (and that classes 1 and
/// 2 are exact as well, with validating certificates).
pub fn enumerate_and_crosscheck(
    l_max: usize,
    m_max: usize,
    options: ClassifyOptions,
) -> CrosscheckReport {
    let mut report = CrosscheckReport {
        specs_checked: 0,
        disagreements: Vec::new(),
        partial: false,
    };
    for l in 1..=l_max {
        let mut m = vec![0usize; l];
        enumerate_rec(&mut m, 0, m_max, &mut |m| {
            let spec = CaterpillarSpec::new(m.to_vec()).unwrap();
            if !spec.has_canonical_endpoints() || spec.canonicalized() != spec {
                return;
            }
            report.specs_checked += 1;
            let class = classify_chi_p(&spec, options).unwrap();
            let g = caterpillar(&spec);
            let dm = all_pairs_distances(&g).unwrap();
            let solved = exact_chi_p(
                &g,
                &dm,
                SolveOptions {
                    k_max: None,
                    node_limit: options.node_limit,
                },
            );
            let chi = match solved.chi_p() {
                Some(chi) => chi,
                None => {
                    report.partial = true;
                    return;
                }
            };
            let class_ok = match class.value {
                ChiClassValue::One => chi == 1,
                ChiClassValue::Two => chi == 2,
                ChiClassValue::Three => chi == 3,
                ChiClassValue::More => chi > 3,
            };
            if !class_ok {
                report.disagreements.push(format!(
                    "{}: recognizer says {}, solver says {}",
                    spec.describe(),
                    class.value.as_str(),
                    chi
                ));
            }
            if let Some(cert) = &class.certificate {
                let expected = match class.value {
                    ChiClassValue::One => 1,
                    ChiClassValue::Two => 2,
                    _ => 3,
                };
                if !is_valid(&dm, cert) || cert.k_used() != expected {
                    report.disagreements.push(format!(
                        "{}: certificate invalid or wrong color count",
                        spec.describe()
                    ));
                }
            }
        });
    }
    report
}

fn enumerate_rec(m: &mut Vec<usize>, i: usize, m_max: usize, f: &mut impl FnMut(&[usize])) {
    if i == m.len() {
        f(m);
        return;
    }
    for v in 0..=m_max {
        m[i] = v;
        enumerate_rec(m, i + 1, m_max, f);
    }
}
