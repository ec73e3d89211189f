//! Edge-list and coloring file formats.
//!
//! Graph file: `p <n> <m>` header, `e <u> <v>` edge lines (1-based),
//! optional `c` comment lines and `l <v> <tag>` label lines. The writer is
//! canonical (edges sorted, labels in vertex order), so write-read-write
//! round-trips are byte identical.
//!
//! Coloring file: `k <k_used>` header followed by `v <vertex> <color>`
//! lines, 1-based vertices.

use crate::graph::{Graph, GraphError};
use crate::packing::PackingColoring;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("io error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: GraphError,
    },
}

fn parse_err(line: usize, msg: impl Into<String>) -> FileError {
    FileError::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn graph_to_string(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p {} {}", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    for v in 0..g.vertex_count() {
        if let Some(tag) = g.label(v) {
            let _ = writeln!(out, "l {} {}", v + 1, tag);
        }
    }
    out
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>) -> Result<(), FileError> {
    fs::write(path, graph_to_string(g))?;
    Ok(())
}

pub fn graph_from_str(text: &str) -> Result<Graph, FileError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut labels: Vec<(usize, String)> = Vec::new();
    let mut header_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut parts = line.split_ascii_whitespace();
        match parts.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(lineno, "duplicate header"));
                }
                let n: usize = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing vertex count"))?
                    .parse()
                    .map_err(|_| parse_err(lineno, "bad vertex count"))?;
                let m: usize = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing edge count"))?
                    .parse()
                    .map_err(|_| parse_err(lineno, "bad edge count"))?;
                header = Some((n, m));
                header_line = lineno;
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| parse_err(lineno, "edge before header"))?;
                let u: usize = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing endpoint"))?
                    .parse()
                    .map_err(|_| parse_err(lineno, "bad endpoint"))?;
                let v: usize = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing endpoint"))?
                    .parse()
                    .map_err(|_| parse_err(lineno, "bad endpoint"))?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(parse_err(lineno, format!("endpoint out of range 1..={n}")));
                }
                if u == v {
                    return Err(FileError::Invalid {
                        line: lineno,
                        source: GraphError::SelfLoop(u - 1),
                    });
                }
                edges.push((u - 1, v - 1));
            }
            Some("l") => {
                let (n, _) = header.ok_or_else(|| parse_err(lineno, "label before header"))?;
                let v: usize = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing label vertex"))?
                    .parse()
                    .map_err(|_| parse_err(lineno, "bad label vertex"))?;
                if v == 0 || v > n {
                    return Err(parse_err(lineno, format!("vertex out of range 1..={n}")));
                }
                let tag = parts.collect::<Vec<_>>().join(" ");
                if tag.is_empty() {
                    return Err(parse_err(lineno, "missing label tag"));
                }
                labels.push((v - 1, tag));
            }
            Some(other) => {
                return Err(parse_err(lineno, format!("unknown line kind '{other}'")));
            }
            None => unreachable!(),
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(1, "missing 'p' header"))?;
    if edges.len() != m {
        return Err(parse_err(
            header_line,
            format!("header declares {m} edges, file has {}", edges.len()),
        ));
    }
    let mut g = Graph::new(n, &edges).map_err(|source| FileError::Invalid {
        line: header_line,
        source,
    })?;
    for (v, tag) in labels {
        g.set_label(v, tag);
    }
    Ok(g)
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph, FileError> {
    graph_from_str(&fs::read_to_string(path)?)
}

pub fn coloring_to_string(c: &PackingColoring) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "k {}", c.k_used());
    for (v, color) in c.colors().iter().enumerate() {
        let _ = writeln!(out, "v {} {}", v + 1, color);
    }
    out
}

pub fn write_coloring(c: &PackingColoring, path: impl AsRef<Path>) -> Result<(), FileError> {
    fs::write(path, coloring_to_string(c))?;
    Ok(())
}

pub fn coloring_from_str(text: &str, n: usize) -> Result<PackingColoring, FileError> {
    let mut colors = vec![0u32; n];
    let mut seen = vec![false; n];
    let mut declared_k: Option<u32> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut parts = line.split_ascii_whitespace();
        match parts.next() {
            Some("k") => {
                let k: u32 = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing k value"))?
                    .parse()
                    .map_err(|_| parse_err(lineno, "bad k value"))?;
                declared_k = Some(k);
            }
            Some("v") => {
                let v: usize = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing vertex"))?
                    .parse()
                    .map_err(|_| parse_err(lineno, "bad vertex"))?;
                let color: u32 = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing color"))?
                    .parse()
                    .map_err(|_| parse_err(lineno, "bad color"))?;
                if v == 0 || v > n {
                    return Err(parse_err(lineno, format!("vertex out of range 1..={n}")));
                }
                if color == 0 {
                    return Err(parse_err(lineno, "colors are positive"));
                }
                if seen[v - 1] {
                    return Err(parse_err(lineno, format!("vertex {v} colored twice")));
                }
                seen[v - 1] = true;
                colors[v - 1] = color;
            }
            Some(other) => {
                return Err(parse_err(lineno, format!("unknown line kind '{other}'")));
            }
            None => unreachable!(),
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(parse_err(0, format!("vertex {} is uncolored", v + 1)));
    }
    let coloring = PackingColoring::new(colors).map_err(|msg| parse_err(0, msg))?;
    if let Some(k) = declared_k {
        if k != coloring.k_used() {
            return Err(parse_err(
                0,
                format!("header says k {} but max color is {}", k, coloring.k_used()),
            ));
        }
    }
    Ok(coloring)
}

pub fn read_coloring(path: impl AsRef<Path>, n: usize) -> Result<PackingColoring, FileError> {
    coloring_from_str(&fs::read_to_string(path)?, n)
}
