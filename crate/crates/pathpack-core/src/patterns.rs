//! Executable coloring patterns for path-aligned products.
//!
//! A pattern block lists the colors of one copy in traversal order: bold
//! entries (`bN`) color the copy's path vertices, plain entries color its
//! off-path vertices, `[..]*` marks a sub-sequence repeated as often as the
//! base size requires, and `<(..)` lists the colors of the remaining path
//! vertices in reverse path order, so all colors of one copy read
//! consecutively. The registry below transcribes one entry per constructive
//! bound, with the repetition schedule and the claimed bound per range of t.

use crate::constructions::{
    complete_overlap_transform, cycle_overlap_transform, path_aligned_product, BaseKind,
    ConstructionError, ProductSpec,
};
use crate::graph::all_pairs_distances;
use crate::packing::{exact_chi_p, validate, PackingColoring, SolveOptions, SolveOutcome};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PatternError {
    #[error("malformed pattern: {0}")]
    Malformed(String),
    #[error("pattern incompatible with spec: {0}")]
    Incompatible(String),
    #[error("no registered coloring for {spec}{}", hint.as_ref().map(|h| format!(" ({h})")).unwrap_or_default())]
    Unsupported { spec: String, hint: Option<String> },
    #[error("internal: pattern coloring failed validation for {0}")]
    InternalInvalid(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Bold(u32),
    Plain(u32),
    Star(Vec<u32>),
    ReversedBoldSuffix(Vec<u32>),
}

/// One parenthesized group of the notation, normalized for expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub name: &'static str,
    /// path colors in forward order, from the copy's first path vertex
    leading: Vec<u32>,
    /// off-path colors before the starred group
    pre: Vec<u32>,
    star: Option<Vec<u32>>,
    /// off-path colors after the starred group
    post: Vec<u32>,
    /// path colors in reverse order, from the copy's last path vertex
    rev: Vec<u32>,
}

impl Block {
    pub fn bold_count(&self) -> usize {
        self.leading.len() + self.rev.len()
    }

    /// Number of star repetitions needed to cover `extras` off-path
    /// vertices, or None if the counts cannot match.
    fn star_repeats(&self, extras: usize) -> Option<usize> {
        let fixed = self.pre.len() + self.post.len();
        match &self.star {
            None => (fixed == extras).then_some(0),
            Some(unit) => {
                if extras < fixed {
                    return None;
                }
                let rest = extras - fixed;
                (rest % unit.len() == 0).then_some(rest / unit.len())
            }
        }
    }
}

/// Parses the compact literal form, e.g. `"b2 1 [3 1 2 1]* <(3 1)"`.
pub fn parse_block(name: &'static str, text: &str) -> Result<Block, PatternError> {
    let mut items = Vec::new();
    let mut chars = text.chars().peekable();
    let bad = |msg: &str| PatternError::Malformed(format!("{name}: {msg} in '{text}'"));
    while let Some(&ch) = chars.peek() {
        match ch {
            ' ' => {
                chars.next();
            }
            'b' => {
                chars.next();
                let mut num = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    num.push(*d);
                    chars.next();
                }
                let c: u32 = num.parse().map_err(|_| bad("bold needs a number"))?;
                items.push(Item::Bold(c));
            }
            '[' => {
                chars.next();
                let mut inner = String::new();
                for d in chars.by_ref() {
                    if d == ']' {
                        break;
                    }
                    inner.push(d);
                }
                if chars.next() != Some('*') {
                    return Err(bad("expected '*' after ']'"));
                }
                let unit: Vec<u32> = inner
                    .split_ascii_whitespace()
                    .map(|s| s.parse().map_err(|_| bad("bad star entry")))
                    .collect::<Result<_, _>>()?;
                if unit.is_empty() {
                    return Err(bad("empty star"));
                }
                items.push(Item::Star(unit));
            }
            '<' => {
                chars.next();
                if chars.next() != Some('(') {
                    return Err(bad("expected '(' after '<'"));
                }
                let mut inner = String::new();
                for d in chars.by_ref() {
                    if d == ')' {
                        break;
                    }
                    inner.push(d);
                }
                let seq: Vec<u32> = inner
                    .split_ascii_whitespace()
                    .map(|s| s.parse().map_err(|_| bad("bad reversed entry")))
                    .collect::<Result<_, _>>()?;
                if seq.is_empty() {
                    return Err(bad("empty reversed suffix"));
                }
                items.push(Item::ReversedBoldSuffix(seq));
            }
            d if d.is_ascii_digit() => {
                let mut num = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    num.push(*d);
                    chars.next();
                }
                items.push(Item::Plain(num.parse().unwrap()));
            }
            other => return Err(bad(&format!("unexpected character '{other}'"))),
        }
    }
    block_from_items(name, items)
}

fn block_from_items(name: &'static str, items: Vec<Item>) -> Result<Block, PatternError> {
    let mut block = Block {
        name,
        leading: Vec::new(),
        pre: Vec::new(),
        star: None,
        post: Vec::new(),
        rev: Vec::new(),
    };
    let bad = |msg: &str| PatternError::Malformed(format!("{name}: {msg}"));
    let mut seen_plain = false;
    for item in items {
        match item {
            Item::Bold(c) => {
                if !block.rev.is_empty() {
                    return Err(bad("bold after reversed suffix"));
                }
                if seen_plain {
                    // a trailing bold continues the traversal backwards
                    // through the path, same as the arrow notation
                    block.rev.push(c);
                } else {
                    block.leading.push(c);
                }
            }
            Item::Plain(c) => {
                if !block.rev.is_empty() {
                    return Err(bad("plain color after reversed suffix"));
                }
                seen_plain = true;
                if block.star.is_some() {
                    block.post.push(c);
                } else {
                    block.pre.push(c);
                }
            }
            Item::Star(unit) => {
                if block.star.is_some() {
                    return Err(bad("more than one star"));
                }
                if !block.rev.is_empty() {
                    return Err(bad("star after reversed suffix"));
                }
                seen_plain = true;
                block.star = Some(unit);
            }
            Item::ReversedBoldSuffix(seq) => {
                if !block.rev.is_empty() {
                    return Err(bad("more than one reversed suffix"));
                }
                block.rev.extend(seq);
            }
        }
    }
    if block.leading.is_empty() {
        return Err(bad("block needs a leading bold color"));
    }
    Ok(block)
}

/// An ordered list of blocks covering one copy each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub blocks: Vec<Block>,
}

/// Lays a pattern onto the product: block i colors copy i. Off-path colors
/// follow the copy's traversal order; reversed suffix entries run from the
/// copy's last path vertex backwards.
pub fn expand_pattern(
    pattern: &Pattern,
    spec: &ProductSpec,
) -> Result<PackingColoring, PatternError> {
    if pattern.blocks.len() != spec.copies {
        return Err(PatternError::Incompatible(format!(
            "{} blocks for {} copies",
            pattern.blocks.len(),
            spec.copies
        )));
    }
    let l = spec.overlap;
    let extras = spec.extras_per_copy();
    let mut colors = vec![0u32; spec.vertex_count()];
    for (i, block) in pattern.blocks.iter().enumerate() {
        if block.bold_count() != l {
            return Err(PatternError::Incompatible(format!(
                "block ({}) has {} bold colors for overlap {}",
                block.name,
                block.bold_count(),
                l
            )));
        }
        let repeats = block.star_repeats(extras).ok_or_else(|| {
            PatternError::Incompatible(format!(
                "block ({}) cannot cover {} off-path vertices",
                block.name, extras
            ))
        })?;
        for (q, &c) in block.leading.iter().enumerate() {
            colors[spec.path_vertex(i, q)] = c;
        }
        for (q, &c) in block.rev.iter().enumerate() {
            colors[spec.path_vertex(i, l - 1 - q)] = c;
        }
        let seq = block
            .pre
            .iter()
            .chain(
                block
                    .star
                    .iter()
                    .flat_map(|unit| unit.iter().cycle().take(unit.len() * repeats)),
            )
            .chain(block.post.iter());
        for (j, &c) in seq.enumerate() {
            colors[spec.extra_vertex(i, j)] = c;
        }
    }
    PackingColoring::new(colors).map_err(PatternError::Incompatible)
}

/// Optimal packing coloring of the cycle C_n: 3 colors when n is 3 or a
/// multiple of 4, 4 colors otherwise.
pub fn cycle_packing_coloring(n: usize) -> Vec<u32> {
    assert!(n >= 3);
    if n == 3 {
        return vec![1, 2, 3];
    }
    let mut colors: Vec<u32> = [1, 2, 1, 3].iter().copied().cycle().take(n).collect();
    if n % 4 != 0 {
        // closing the leftover 1-, 2- or 3-residue tail needs one 4
        colors[n - 1] = 4;
    }
    colors
}

/// Optimal packing coloring of the path P_n.
pub fn path_packing_coloring(n: usize) -> Vec<u32> {
    assert!(n >= 1);
    [1, 2, 1, 3].iter().copied().cycle().take(n).collect()
}

const OPEN: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
pub struct BoundRow {
    pub t_lo: u32,
    pub t_hi: u32,
    pub bound: u32,
    /// true when the value is known exact on this range, not just an upper
    /// bound
    pub exact: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct Regime {
    t_lo: u32,
    t_hi: u32,
    /// Block names repeated cyclically: a prefix of the unit covers any
    /// remainder. Empty means: color the single copy as the plain cycle.
    unit: &'static [&'static str],
}

/// Which base sizes an entry covers: either one size or a residue class
/// mod 4 from a minimum size upward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeRule {
    Fixed(usize),
    Mod4 { residue: usize, min: usize },
}

impl SizeRule {
    pub fn admits(&self, n: usize) -> bool {
        match *self {
            SizeRule::Fixed(x) => n == x,
            SizeRule::Mod4 { residue, min } => n >= min && n % 4 == residue,
        }
    }

    /// Concrete sizes with the family parameter s up to `s_max`.
    pub fn sizes(&self, s_max: usize) -> Vec<usize> {
        match *self {
            SizeRule::Fixed(x) => vec![x],
            SizeRule::Mod4 { residue, min } => (1..=s_max)
                .map(|s| 4 * s + residue)
                .filter(|&n| n >= min)
                .collect(),
        }
    }
}

pub struct TheoremEntry {
    pub name: &'static str,
    pub base_kind: BaseKind,
    pub size_rule: SizeRule,
    pub overlap: usize,
    pub blocks: &'static [(&'static str, &'static str)],
    regimes: &'static [Regime],
    pub bounds: &'static [BoundRow],
}

impl TheoremEntry {
    pub fn bound_for(&self, t: u32) -> Option<BoundRow> {
        self.bounds
            .iter()
            .copied()
            .find(|r| r.t_lo <= t && t <= r.t_hi)
    }

    fn block(&self, name: &str) -> Result<Block, PatternError> {
        let (n, text) = self
            .blocks
            .iter()
            .find(|(b, _)| *b == name)
            .ok_or_else(|| PatternError::Malformed(format!("{}: unknown block {name}", self.name)))?;
        parse_block(n, text)
    }

    /// Block names for t copies: the regime's unit repeated, then its
    /// prefix for any remainder.
    pub fn schedule(&self, t: u32) -> Option<Vec<&'static str>> {
        let regime = self
            .regimes
            .iter()
            .find(|r| r.t_lo <= t && t <= r.t_hi)?;
        if regime.unit.is_empty() {
            return Some(Vec::new());
        }
        let len = regime.unit.len() as u32;
        let mut names = Vec::with_capacity(t as usize);
        for _ in 0..t / len {
            names.extend_from_slice(regime.unit);
        }
        names.extend_from_slice(&regime.unit[..(t % len) as usize]);
        Some(names)
    }
}

/// Every constructive entry. Block strings are transcribed from the source
/// coloring notation; schedules carry the repetition unit per range of t,
/// with remainders as unit prefixes.
pub static REGISTRY: &[TheoremEntry] = &[
    TheoremEntry {
        name: "cycle-4s-l2",
        base_kind: BaseKind::Cycle,
        size_rule: SizeRule::Mod4 { residue: 0, min: 4 },
        overlap: 2,
        blocks: &[
            ("a", "b3 1 [2 1 3 1]* 2 b1"),
            ("b", "b4 1 [2 1 3 1]* 2 b1"),
            ("c", "b5 1 [2 1 3 1]* 2 b1"),
        ],
        regimes: &[Regime {
            t_lo: 1,
            t_hi: OPEN,
            unit: &["a", "b", "a", "c"],
        }],
        bounds: &[
            BoundRow { t_lo: 1, t_hi: 1, bound: 3, exact: true },
            BoundRow { t_lo: 2, t_hi: 3, bound: 4, exact: true },
            BoundRow { t_lo: 4, t_hi: OPEN, bound: 5, exact: false },
        ],
    },
    TheoremEntry {
        name: "cycle-4s-l3",
        base_kind: BaseKind::Cycle,
        size_rule: SizeRule::Mod4 { residue: 0, min: 4 },
        overlap: 3,
        blocks: &[
            ("a", "b2 1 [3 1 2 1]* <(3 1)"),
            ("b", "b1 2 [1 3 1 2]* <(1 4)"),
            ("c", "b3 1 [2 1 3 1]* <(2 1)"),
            ("d", "b1 3 [1 2 1 3]* <(1 4)"),
        ],
        regimes: &[Regime {
            t_lo: 1,
            t_hi: OPEN,
            unit: &["a", "b", "c", "d"],
        }],
        bounds: &[
            BoundRow { t_lo: 1, t_hi: 1, bound: 3, exact: true },
            BoundRow { t_lo: 2, t_hi: OPEN, bound: 4, exact: true },
        ],
    },
    TheoremEntry {
        name: "cycle-5-l2",
        base_kind: BaseKind::Cycle,
        size_rule: SizeRule::Fixed(5),
        overlap: 2,
        blocks: &[
            ("a", "b1 3 5 1 b2"),
            ("b", "b1 3 1 2 b4"),
            ("c", "b1 2 3 1 b5"),
            ("d", "b1 3 1 4 b2"),
            ("a'", "b1 3 4 1 b2"),
            ("b'", "b1 3 4 2 b5"),
            ("c'", "b1 3 4 2 b6"),
        ],
        regimes: &[
            Regime { t_lo: 1, t_hi: 1, unit: &[] },
            Regime {
                t_lo: 2,
                t_hi: 4,
                unit: &["a", "b", "c", "d"],
            },
            Regime {
                t_lo: 5,
                t_hi: OPEN,
                unit: &["a'", "b'", "a'", "c'"],
            },
        ],
        bounds: &[
            BoundRow { t_lo: 1, t_hi: 1, bound: 4, exact: true },
            BoundRow { t_lo: 2, t_hi: 4, bound: 5, exact: true },
            BoundRow { t_lo: 5, t_hi: OPEN, bound: 6, exact: false },
        ],
    },
    TheoremEntry {
        name: "cycle-4s1-l2",
        base_kind: BaseKind::Cycle,
        size_rule: SizeRule::Mod4 { residue: 1, min: 9 },
        overlap: 2,
        blocks: &[
            ("a", "b1 3 2 1 4 [1 3 1 2]* 1 3 1 b2"),
            ("b", "b1 3 1 2 1 [3 1 2 1]* 3 2 1 b4"),
            ("c", "b1 3 1 2 1 [3 1 2 1]* 3 2 1 b5"),
        ],
        regimes: &[Regime {
            t_lo: 1,
            t_hi: OPEN,
            unit: &["a", "b", "a", "c"],
        }],
        bounds: &[
            BoundRow { t_lo: 1, t_hi: 3, bound: 4, exact: true },
            BoundRow { t_lo: 4, t_hi: OPEN, bound: 5, exact: false },
        ],
    },
    TheoremEntry {
        name: "cycle-5-l3",
        base_kind: BaseKind::Cycle,
        size_rule: SizeRule::Fixed(5),
        overlap: 3,
        blocks: &[("a", "b1 3 2 <(1 5)"), ("b", "b4 3 1 <(2 1)")],
        regimes: &[
            Regime { t_lo: 1, t_hi: 1, unit: &[] },
            Regime {
                t_lo: 2,
                t_hi: OPEN,
                unit: &["a", "b"],
            },
        ],
        bounds: &[
            BoundRow { t_lo: 1, t_hi: 1, bound: 4, exact: true },
            BoundRow { t_lo: 2, t_hi: OPEN, bound: 5, exact: true },
        ],
    },
    TheoremEntry {
        name: "cycle-4s1-l3",
        base_kind: BaseKind::Cycle,
        size_rule: SizeRule::Mod4 { residue: 1, min: 9 },
        overlap: 3,
        blocks: &[
            ("u1", "b3 1 4 2 1 3 1 [2 1 3 1]* <(2 1)"),
            ("u2", "b1 3 1 2 1 3 [1 2 1 3]* 1 <(2 4)"),
            ("a", "b1 4 2 1 3 1 [2 1 3 1]* 2 <(1 5)"),
            ("b", "b3 1 2 1 3 1 [2 1 3 1]* 4 <(2 1)"),
            ("c", "b1 3 1 2 1 3 [1 2 1 3]* 4 <(1 5)"),
            ("d", "b2 1 3 4 1 2 [1 3 1 2]* 1 <(3 1)"),
        ],
        regimes: &[
            Regime { t_lo: 1, t_hi: 1, unit: &[] },
            Regime {
                t_lo: 2,
                t_hi: 2,
                unit: &["u1", "u2"],
            },
            Regime {
                t_lo: 3,
                t_hi: OPEN,
                unit: &["a", "b", "c", "d"],
            },
        ],
        bounds: &[
            BoundRow { t_lo: 1, t_hi: 2, bound: 4, exact: true },
            BoundRow { t_lo: 3, t_hi: OPEN, bound: 5, exact: false },
        ],
    },
    TheoremEntry {
        name: "cycle-4s2-l2",
        base_kind: BaseKind::Cycle,
        size_rule: SizeRule::Mod4 { residue: 2, min: 6 },
        overlap: 2,
        // the starred group is anchored after the full "2 4 1 2" prefix;
        // anchoring it two items earlier puts a 3 three steps from the
        // closing bold 3 once the base cycle exceeds six vertices
        blocks: &[
            ("u1", "b1 2 4 1 2 [3 1 2 1]* b3"),
            ("u2", "b1 4 1 [3 1 2 1]* 3 1 b2"),
            ("a", "b1 5 4 1 2 [3 1 2 1]* b3"),
            ("b", "b1 4 1 [3 1 2 1]* 3 1 b2"),
        ],
        regimes: &[
            Regime { t_lo: 1, t_hi: 1, unit: &[] },
            Regime {
                t_lo: 2,
                t_hi: 2,
                unit: &["u1", "u2"],
            },
            Regime {
                t_lo: 3,
                t_hi: OPEN,
                unit: &["a", "b"],
            },
        ],
        bounds: &[
            BoundRow { t_lo: 1, t_hi: 2, bound: 4, exact: true },
            BoundRow { t_lo: 3, t_hi: OPEN, bound: 5, exact: false },
        ],
    },
    TheoremEntry {
        name: "cycle-6-l3",
        base_kind: BaseKind::Cycle,
        size_rule: SizeRule::Fixed(6),
        overlap: 3,
        blocks: &[
            ("u1", "b1 3 1 4 <(1 2)"),
            ("u2", "b3 2 1 4 <(2 1)"),
            ("a", "b1 5 1 4 <(1 3)"),
            ("b", "b2 1 5 1 <(3 1)"),
            ("c", "b1 4 1 5 <(1 2)"),
            ("d", "b3 1 4 1 <(2 1)"),
        ],
        regimes: &[
            Regime { t_lo: 1, t_hi: 1, unit: &[] },
            Regime {
                t_lo: 2,
                t_hi: 2,
                unit: &["u1", "u2"],
            },
            Regime {
                t_lo: 3,
                t_hi: OPEN,
                unit: &["a", "b", "c", "d"],
            },
        ],
        bounds: &[
            BoundRow { t_lo: 1, t_hi: 2, bound: 4, exact: true },
            BoundRow { t_lo: 3, t_hi: OPEN, bound: 5, exact: false },
        ],
    },
    TheoremEntry {
        name: "cycle-4s2-l3",
        base_kind: BaseKind::Cycle,
        size_rule: SizeRule::Mod4 { residue: 2, min: 10 },
        overlap: 3,
        blocks: &[
            ("u1", "b1 3 1 2 1 3 [1 2 1 3]* 1 4 <(1 2)"),
            ("u2", "b3 2 1 4 1 2 3 1 [2 1 3 1]* <(2 1)"),
            ("u3", "b1 4 1 2 1 3 [1 2 1 3]* 1 2 <(1 3)"),
            ("a", "b1 5 1 3 1 2 [1 3 1 2]* 1 4 <(1 3)"),
            ("b", "b2 1 3 1 2 1 [3 1 2 1]* 5 1 <(3 1)"),
            ("c", "b1 4 1 2 1 3 [1 2 1 3]* 1 5 <(1 2)"),
            ("d", "b3 1 2 1 3 [1 2 1 3]* 1 4 1 <(2 1)"),
        ],
        regimes: &[
            Regime { t_lo: 1, t_hi: 1, unit: &[] },
            Regime {
                t_lo: 2,
                t_hi: 3,
                unit: &["u1", "u2", "u3"],
            },
            Regime {
                t_lo: 4,
                t_hi: OPEN,
                unit: &["a", "b", "c", "d"],
            },
        ],
        bounds: &[
            BoundRow { t_lo: 1, t_hi: 3, bound: 4, exact: true },
            BoundRow { t_lo: 4, t_hi: OPEN, bound: 5, exact: false },
        ],
    },
    TheoremEntry {
        name: "triangle-l2",
        base_kind: BaseKind::Cycle,
        size_rule: SizeRule::Fixed(3),
        overlap: 2,
        blocks: &[("a", "b3 2 b1"), ("b", "b4 2 b1"), ("c", "b5 2 b1")],
        regimes: &[Regime {
            t_lo: 1,
            t_hi: OPEN,
            unit: &["a", "b", "a", "c"],
        }],
        bounds: &[
            BoundRow { t_lo: 1, t_hi: 1, bound: 3, exact: true },
            BoundRow { t_lo: 2, t_hi: 3, bound: 4, exact: true },
            BoundRow { t_lo: 4, t_hi: OPEN, bound: 5, exact: false },
        ],
    },
    TheoremEntry {
        name: "cycle-4s3-l2",
        base_kind: BaseKind::Cycle,
        size_rule: SizeRule::Mod4 { residue: 3, min: 7 },
        overlap: 2,
        blocks: &[
            ("u1", "b1 2 4 [1 2 1 3]* 1 2 1 b3"),
            ("u2", "b1 4 2 [1 3 1 2]* 1 3 1 b2"),
            ("a", "b1 5 4 [1 2 1 3]* 1 2 1 b3"),
            ("b", "b1 4 2 [1 3 1 2]* 1 3 1 b2"),
        ],
        regimes: &[
            Regime { t_lo: 1, t_hi: 1, unit: &[] },
            Regime {
                t_lo: 2,
                t_hi: 2,
                unit: &["u1", "u2"],
            },
            Regime {
                t_lo: 3,
                t_hi: OPEN,
                unit: &["a", "b"],
            },
        ],
        bounds: &[
            BoundRow { t_lo: 1, t_hi: 2, bound: 4, exact: true },
            BoundRow { t_lo: 3, t_hi: OPEN, bound: 5, exact: false },
        ],
    },
    TheoremEntry {
        name: "triangle-l3",
        base_kind: BaseKind::Cycle,
        size_rule: SizeRule::Fixed(3),
        overlap: 3,
        blocks: &[
            ("a", "b3 <(1 2)"),
            ("b", "b4 <(1 2)"),
            ("c", "b5 <(1 2)"),
        ],
        regimes: &[Regime {
            t_lo: 1,
            t_hi: OPEN,
            unit: &["a", "b", "a", "c"],
        }],
        bounds: &[
            BoundRow { t_lo: 1, t_hi: 1, bound: 3, exact: true },
            BoundRow { t_lo: 2, t_hi: 3, bound: 4, exact: true },
            BoundRow { t_lo: 4, t_hi: OPEN, bound: 5, exact: false },
        ],
    },
    TheoremEntry {
        name: "cycle-4s3-l3",
        base_kind: BaseKind::Cycle,
        size_rule: SizeRule::Mod4 { residue: 3, min: 7 },
        overlap: 3,
        blocks: &[
            ("u1", "b2 4 [1 2 1 3]* 1 2 1 <(3 1)"),
            ("u2", "b1 4 [2 1 3 1]* 2 1 3 <(1 2)"),
            ("a", "b2 4 [1 2 1 3]* 1 2 1 <(3 1)"),
            ("b", "b1 4 [2 1 3 1]* 2 1 3 <(1 5)"),
        ],
        regimes: &[
            Regime {
                t_lo: 1,
                t_hi: 2,
                unit: &["u1", "u2"],
            },
            Regime {
                t_lo: 3,
                t_hi: OPEN,
                unit: &["a", "b"],
            },
        ],
        bounds: &[
            BoundRow { t_lo: 1, t_hi: 2, bound: 4, exact: true },
            BoundRow { t_lo: 3, t_hi: OPEN, bound: 5, exact: false },
        ],
    },
    TheoremEntry {
        name: "cycle-4s1-l4",
        base_kind: BaseKind::Cycle,
        size_rule: SizeRule::Mod4 { residue: 1, min: 9 },
        overlap: 4,
        // (a) keeps its first off-path 3 six steps from the copy anchor so
        // a block ending in bold 3 can precede it; (b) alternates 1s
        // strictly, which the adjoined starred group must preserve
        blocks: &[
            ("a", "b1 2 4 1 2 1 [3 1 2 1]* <(3 1 5)"),
            ("b", "b1 4 [2 1 3 1]* <(5 1 2)"),
            ("c", "b1 4 3 1 2 1 [3 1 2 1]* <(3 1 2)"),
        ],
        regimes: &[
            Regime { t_lo: 1, t_hi: 1, unit: &["c"] },
            Regime {
                t_lo: 2,
                t_hi: OPEN,
                unit: &["a", "b", "c"],
            },
        ],
        bounds: &[BoundRow { t_lo: 1, t_hi: OPEN, bound: 5, exact: false }],
    },
    TheoremEntry {
        name: "complete-4",
        base_kind: BaseKind::Complete,
        size_rule: SizeRule::Fixed(4),
        overlap: 2,
        blocks: &[
            ("a", "b3 2 4 b1"),
            ("b", "b5 2 6 b1"),
            ("c", "b7 2 8 b1"),
        ],
        regimes: &[Regime {
            t_lo: 1,
            t_hi: OPEN,
            unit: &["a", "b", "a", "c"],
        }],
        bounds: &[
            BoundRow { t_lo: 1, t_hi: 1, bound: 4, exact: true },
            BoundRow { t_lo: 2, t_hi: 3, bound: 6, exact: true },
            BoundRow { t_lo: 4, t_hi: OPEN, bound: 8, exact: false },
        ],
    },
    TheoremEntry {
        name: "complete-5",
        base_kind: BaseKind::Complete,
        size_rule: SizeRule::Fixed(5),
        overlap: 2,
        blocks: &[
            ("a", "b5 2 3 10 b1"),
            ("b", "b9 2 4 11 b1"),
            ("c", "b3 2 6 8 b1"),
            ("d", "b7 1 2 4 b5"),
            ("e", "b1 2 12 13 b3"),
            ("f", "b1 2 4 6 b10"),
            ("g", "b1 2 5 8 b3"),
            ("h", "b11 2 4 7 b1"),
            ("i", "b9 2 3 6 b1"),
            ("j", "b5 2 4 14 b1"),
            ("k", "b3 2 8 12 b1"),
            ("l", "b7 2 4 6 b1"),
        ],
        regimes: &[Regime {
            t_lo: 1,
            t_hi: OPEN,
            unit: &["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"],
        }],
        bounds: &[BoundRow { t_lo: 1, t_hi: OPEN, bound: 14, exact: false }],
    },
];

/// How a spec reaches a registry entry.
pub enum Lookup {
    Direct(&'static TheoremEntry),
    /// Re-route each cycle copy through its off-path arc first.
    ViaCycleTransform {
        entry: &'static TheoremEntry,
        target_overlap: usize,
    },
    /// Swap the copy's path vertices first; complete copies are symmetric.
    ViaCompleteTransform(&'static TheoremEntry),
    Unsupported { hint: Option<String> },
}

fn find_entry(kind: BaseKind, n: usize, overlap: usize) -> Option<&'static TheoremEntry> {
    // K_3 and C_3 are the same graph, so the triangle entries serve both
    let effective_kind = if n == 3 { BaseKind::Cycle } else { kind };
    REGISTRY.iter().find(|e| {
        e.base_kind == effective_kind && e.size_rule.admits(n) && e.overlap == overlap
    })
}

/// Finds the registry entry for a spec, directly or through an overlap
/// transform; reports the nearest transform as a hint otherwise.
pub fn lookup(spec: &ProductSpec) -> Lookup {
    let n = spec.base_size;
    let l = spec.overlap;
    if let Some(entry) = find_entry(spec.base_kind, n, l) {
        return Lookup::Direct(entry);
    }
    match spec.base_kind {
        BaseKind::Cycle => {
            if l >= 2 {
                let l2 = n - l + 2;
                if let Some(entry) = find_entry(BaseKind::Cycle, n, l2) {
                    return Lookup::ViaCycleTransform {
                        entry,
                        target_overlap: l2,
                    };
                }
                return Lookup::Unsupported {
                    hint: Some(format!(
                        "re-routing the cycle copies gives overlap {l2}, which is also outside the registry"
                    )),
                };
            }
            Lookup::Unsupported {
                hint: Some("overlap 1 has no registered coloring".into()),
            }
        }
        BaseKind::Complete => {
            if l >= 2 {
                if let Some(entry) = find_entry(BaseKind::Complete, n, 2) {
                    return Lookup::ViaCompleteTransform(entry);
                }
            }
            Lookup::Unsupported {
                hint: (n >= 6).then(|| {
                    "complete bases beyond 5 vertices have no registered coloring".to_string()
                }),
            }
        }
    }
}

/// A coloring produced from the registry, with its provenance.
#[derive(Debug, Clone)]
pub struct TheoremColoring {
    pub spec: ProductSpec,
    pub coloring: PackingColoring,
    pub claimed_bound: u32,
    pub exact: bool,
    pub entry_name: &'static str,
    /// block names per copy; empty when the single copy was colored as the
    /// plain cycle
    pub trace: Vec<&'static str>,
    /// set when the coloring was produced on a transformed spec and mapped
    /// back through the isomorphism witness
    pub via: Option<ProductSpec>,
}

fn expand_entry(
    entry: &'static TheoremEntry,
    spec: &ProductSpec,
) -> Result<(PackingColoring, Vec<&'static str>), PatternError> {
    let t = spec.copies as u32;
    let names = entry.schedule(t).ok_or_else(|| {
        PatternError::Incompatible(format!("{} has no schedule for t={t}", entry.name))
    })?;
    if names.is_empty() {
        // single copy isomorphic to the base cycle: color around the cycle
        let n = spec.base_size;
        let l = spec.overlap;
        let cyc = cycle_packing_coloring(n);
        let mut colors = vec![0u32; n];
        for (pos, &c) in cyc.iter().enumerate() {
            let v = if pos < l {
                spec.path_vertex(0, pos)
            } else {
                spec.extra_vertex(0, n - 1 - pos)
            };
            colors[v] = c;
        }
        return Ok((
            PackingColoring::new(colors).map_err(PatternError::Incompatible)?,
            Vec::new(),
        ));
    }
    let blocks = names
        .iter()
        .map(|name| entry.block(name))
        .collect::<Result<Vec<_>, _>>()?;
    let coloring = expand_pattern(&Pattern { blocks }, spec)?;
    Ok((coloring, names))
}

/// Emits the registered coloring for a spec along with the claimed bound,
/// validating the result before returning it.
pub fn color_by_theorem(spec: &ProductSpec) -> Result<TheoremColoring, PatternError> {
    let t = spec.copies as u32;
    let (entry, coloring, trace, via) = match lookup(spec) {
        Lookup::Direct(entry) => {
            let (coloring, trace) = expand_entry(entry, spec)?;
            (entry, coloring, trace, None)
        }
        Lookup::ViaCycleTransform { entry, .. } => {
            let (target, witness) = cycle_overlap_transform(spec)?;
            let (target_coloring, trace) = expand_entry(entry, &target)?;
            let colors = (0..spec.vertex_count())
                .map(|v| target_coloring.color(witness.apply(v)))
                .collect();
            (
                entry,
                PackingColoring::new(colors).map_err(PatternError::Incompatible)?,
                trace,
                Some(target),
            )
        }
        Lookup::ViaCompleteTransform(entry) => {
            let (target, witness) = complete_overlap_transform(spec, entry.overlap)?;
            let (target_coloring, trace) = expand_entry(entry, &target)?;
            let colors = (0..spec.vertex_count())
                .map(|v| target_coloring.color(witness.apply(v)))
                .collect();
            (
                entry,
                PackingColoring::new(colors).map_err(PatternError::Incompatible)?,
                trace,
                Some(target),
            )
        }
        Lookup::Unsupported { hint } => {
            return Err(PatternError::Unsupported {
                spec: spec.describe(),
                hint,
            })
        }
    };
    let row = entry.bound_for(t).ok_or_else(|| {
        PatternError::Incompatible(format!("{} has no bound row for t={t}", entry.name))
    })?;
    let g = path_aligned_product(spec);
    let dm = all_pairs_distances(&g).expect("products are connected");
    let violations = validate(&dm, &coloring)
        .map_err(|e| PatternError::InternalInvalid(format!("{}: {e}", spec.describe())))?;
    if !violations.is_empty() {
        return Err(PatternError::InternalInvalid(format!(
            "{} via {}: {} violating pairs, first {:?}",
            spec.describe(),
            entry.name,
            violations.len(),
            violations[0]
        )));
    }
    if coloring.k_used() > row.bound {
        return Err(PatternError::InternalInvalid(format!(
            "{} via {}: uses {} colors, claimed bound {}",
            spec.describe(),
            entry.name,
            coloring.k_used(),
            row.bound
        )));
    }
    Ok(TheoremColoring {
        spec: *spec,
        coloring,
        claimed_bound: row.bound,
        exact: row.exact,
        entry_name: entry.name,
        trace,
        via,
    })
}

/// How an upper bound was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperMethod {
    Pattern,
    SolverExact,
    SolverIncumbent,
}

/// Best available upper bound with a validated witness: the registered
/// pattern when the spec matches a family, otherwise the exact solver (its
/// greedy incumbent if limits bite).
pub fn chi_p_upper_for_spec(
    spec: &ProductSpec,
    options: SolveOptions,
) -> Result<(u32, PackingColoring, UpperMethod), PatternError> {
    match color_by_theorem(spec) {
        Ok(tc) => Ok((tc.coloring.k_used(), tc.coloring, UpperMethod::Pattern)),
        Err(PatternError::Unsupported { .. }) => {
            let g = path_aligned_product(spec);
            let dm = all_pairs_distances(&g).expect("products are connected");
            match exact_chi_p(&g, &dm, options) {
                SolveOutcome::Solved(r) => Ok((r.chi_p, r.witness, UpperMethod::SolverExact)),
                out => Ok((
                    out.upper(),
                    out.witness().clone(),
                    UpperMethod::SolverIncumbent,
                )),
            }
        }
        Err(other) => Err(other),
    }
}

/// Best available upper bound for an arbitrary graph: the exact value when
/// the solver finishes, otherwise its incumbent witness.
pub fn chi_p_upper_for_graph(
    g: &crate::graph::Graph,
    dm: &crate::graph::DistanceMatrix,
    options: SolveOptions,
) -> (u32, PackingColoring, UpperMethod) {
    match exact_chi_p(g, dm, options) {
        SolveOutcome::Solved(r) => (r.chi_p, r.witness, UpperMethod::SolverExact),
        out => (
            out.upper(),
            out.witness().clone(),
            UpperMethod::SolverIncumbent,
        ),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeMethod {
    Pattern,
    Solver,
    SolverLimit,
    IlpExportOnly,
    SkippedBudget,
}

impl ProbeMethod {
    pub fn name(&self) -> &'static str {
        match self {
            ProbeMethod::Pattern => "pattern",
            ProbeMethod::Solver => "solver",
            ProbeMethod::SolverLimit => "solver-limit",
            ProbeMethod::IlpExportOnly => "ilp-export",
            ProbeMethod::SkippedBudget => "skipped",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProbeRow {
    pub spec: ProductSpec,
    pub upper: Option<u32>,
    pub method: ProbeMethod,
    pub proven_optimal: bool,
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub rows: Vec<ProbeRow>,
    pub partial: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct ProbeBudget {
    pub node_limit_per_instance: u64,
    pub total_nodes: u64,
    pub max_solver_vertices: usize,
}

impl Default for ProbeBudget {
    fn default() -> Self {
        ProbeBudget {
            node_limit_per_instance: 5_000_000,
            total_nodes: 50_000_000,
            max_solver_vertices: 40,
        }
    }
}

/// Sweeps (n, l, t) ranges collecting best upper bounds: pattern where
/// registered, the exact solver where small enough, anything else marked
/// for ILP export. Never asserts a conjecture; rows carry their method.
pub fn conjecture_probe(
    kind: BaseKind,
    n_range: (usize, usize),
    l_range: (usize, usize),
    t_range: (usize, usize),
    budget: ProbeBudget,
) -> ProbeReport {
    let mut rows = Vec::new();
    let mut spent = 0u64;
    let mut partial = false;
    for n in n_range.0..=n_range.1 {
        for l in l_range.0..=l_range.1.min(n) {
            for t in t_range.0..=t_range.1 {
                let spec = match ProductSpec::new(kind, n, l, t) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                if let Ok(tc) = color_by_theorem(&spec) {
                    rows.push(ProbeRow {
                        spec,
                        upper: Some(tc.coloring.k_used()),
                        method: ProbeMethod::Pattern,
                        proven_optimal: tc.exact,
                    });
                    continue;
                }
                if spec.vertex_count() > budget.max_solver_vertices {
                    rows.push(ProbeRow {
                        spec,
                        upper: None,
                        method: ProbeMethod::IlpExportOnly,
                        proven_optimal: false,
                    });
                    continue;
                }
                if spent >= budget.total_nodes {
                    partial = true;
                    rows.push(ProbeRow {
                        spec,
                        upper: None,
                        method: ProbeMethod::SkippedBudget,
                        proven_optimal: false,
                    });
                    continue;
                }
                let g = path_aligned_product(&spec);
                let dm = all_pairs_distances(&g).expect("products are connected");
                let limit = budget
                    .node_limit_per_instance
                    .min(budget.total_nodes - spent);
                let out = exact_chi_p(
                    &g,
                    &dm,
                    SolveOptions {
                        k_max: None,
                        node_limit: limit,
                    },
                );
                spent += out.nodes_expanded();
                match out {
                    SolveOutcome::Solved(r) => rows.push(ProbeRow {
                        spec,
                        upper: Some(r.chi_p),
                        method: ProbeMethod::Solver,
                        proven_optimal: true,
                    }),
                    other => {
                        partial = true;
                        rows.push(ProbeRow {
                            spec,
                            upper: Some(other.upper()),
                            method: ProbeMethod::SolverLimit,
                            proven_optimal: false,
                        });
                    }
                }
            }
        }
    }
    ProbeReport { rows, partial }
}
