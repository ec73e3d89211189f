//! The spec-string grammar shared by the build/color/recognize commands.
//!
//! Forms:
//!   product cycle n=8 l=3 t=5
//!   product complete n=4 l=2 t=3
//!   caterpillar 4:4,1,0,1
//!   corona path:5 p=2
//!   path:7 | cycle:8 | complete:5

use pathpack_core::constructions::{
    caterpillar, corona, path_aligned_product, BaseKind, CaterpillarSpec, ProductSpec,
};
use pathpack_core::graph::{build_complete, build_cycle, build_path, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimpleKind {
    Path,
    Cycle,
    Complete,
}

#[derive(Debug, Clone)]
pub enum BuildSpec {
    Simple(SimpleKind, usize),
    Product(ProductSpec),
    Caterpillar(CaterpillarSpec),
    Corona(SimpleKind, usize, usize),
}

impl BuildSpec {
    pub fn describe(&self) -> String {
        match self {
            BuildSpec::Simple(kind, n) => format!("{}:{}", kind_name(*kind), n),
            BuildSpec::Product(spec) => spec.describe(),
            BuildSpec::Caterpillar(spec) => spec.describe(),
            BuildSpec::Corona(kind, n, p) => {
                format!("corona {}:{} p={}", kind_name(*kind), n, p)
            }
        }
    }

    pub fn build(&self) -> Result<Graph, String> {
        match self {
            BuildSpec::Simple(kind, n) => build_simple(*kind, *n),
            BuildSpec::Product(spec) => Ok(path_aligned_product(spec)),
            BuildSpec::Caterpillar(spec) => Ok(caterpillar(spec)),
            BuildSpec::Corona(kind, n, p) => {
                let base = build_simple(*kind, *n)?;
                corona(&base, *p).map_err(|e| e.to_string())
            }
        }
    }
}

fn kind_name(kind: SimpleKind) -> &'static str {
    match kind {
        SimpleKind::Path => "path",
        SimpleKind::Cycle => "cycle",
        SimpleKind::Complete => "complete",
    }
}

fn build_simple(kind: SimpleKind, n: usize) -> Result<Graph, String> {
    match kind {
        SimpleKind::Path => build_path(n),
        SimpleKind::Cycle => build_cycle(n),
        SimpleKind::Complete => build_complete(n),
    }
    .map_err(|e| e.to_string())
}

fn parse_kv(token: &str, key: &str) -> Result<usize, String> {
    let value = token
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| format!("expected {key}=<number>, got '{token}'"))?;
    value
        .parse()
        .map_err(|_| format!("bad number in '{token}'"))
}

fn parse_simple(token: &str) -> Result<(SimpleKind, usize), String> {
    let (kind, n) = token
        .split_once(':')
        .ok_or_else(|| format!("expected <kind>:<n>, got '{token}'"))?;
    let kind = match kind {
        "path" => SimpleKind::Path,
        "cycle" => SimpleKind::Cycle,
        "complete" => SimpleKind::Complete,
        other => return Err(format!("unknown graph kind '{other}'")),
    };
    let n: usize = n.parse().map_err(|_| format!("bad number in '{token}'"))?;
    Ok((kind, n))
}

pub fn parse_caterpillar(token: &str) -> Result<CaterpillarSpec, String> {
    let (l, ms) = token
        .split_once(':')
        .ok_or_else(|| format!("expected l:m1,...,ml, got '{token}'"))?;
    let l: usize = l.parse().map_err(|_| format!("bad length in '{token}'"))?;
    let m: Vec<usize> = ms
        .split(',')
        .map(|s| s.parse().map_err(|_| format!("bad leaf count '{s}'")))
        .collect::<Result<_, _>>()?;
    if m.len() != l {
        return Err(format!("length {l} but {} leaf counts", m.len()));
    }
    CaterpillarSpec::new(m).map_err(|e| e.to_string())
}

pub fn parse_build_spec(tokens: &[String]) -> Result<BuildSpec, String> {
    match tokens {
        [] => Err("empty spec".into()),
        [single] if single.contains(':') && !single.contains(',') => {
            let (kind, n) = parse_simple(single)?;
            Ok(BuildSpec::Simple(kind, n))
        }
        [head, rest @ ..] => match head.as_str() {
            "product" => {
                let [kind, n, l, t] = rest else {
                    return Err("usage: product <cycle|complete> n=<n> l=<l> t=<t>".into());
                };
                let base_kind = match kind.as_str() {
                    "cycle" => BaseKind::Cycle,
                    "complete" => BaseKind::Complete,
                    other => return Err(format!("unknown product base '{other}'")),
                };
                let spec = ProductSpec::new(
                    base_kind,
                    parse_kv(n, "n")?,
                    parse_kv(l, "l")?,
                    parse_kv(t, "t")?,
                )
                .map_err(|e| e.to_string())?;
                Ok(BuildSpec::Product(spec))
            }
            "caterpillar" => {
                let [desc] = rest else {
                    return Err("usage: caterpillar l:m1,...,ml".into());
                };
                Ok(BuildSpec::Caterpillar(parse_caterpillar(desc)?))
            }
            "corona" => {
                let [base, p] = rest else {
                    return Err("usage: corona <kind>:<n> p=<p>".into());
                };
                let (kind, n) = parse_simple(base)?;
                Ok(BuildSpec::Corona(kind, n, parse_kv(p, "p")?))
            }
            other => Err(format!("unknown spec kind '{other}'")),
        },
    }
}
