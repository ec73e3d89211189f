//! Integer-program export for packing coloring, and parsing of solver
//! solutions.
//!
//! The model minimizes a continuous `z` subject to: each vertex takes
//! exactly one of the colors 1..k (binary `x_<v>_<i>`), two vertices
//! within distance i never share color i, and `i * x_<v>_<i> <= z`.
//! Constraints are written in a fixed order so identical inputs give
//! byte-identical files.

use crate::graph::DistanceMatrix;
use crate::packing::PackingColoring;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IlpError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("variable {var} = {value} is not within 1e-6 of 0 or 1")]
    NotIntegral { var: String, value: f64 },
    #[error("vertex {0} has no color assigned in the solution")]
    IncompleteSolution(usize),
    #[error("vertex {0} is assigned more than one color")]
    OverAssigned(usize),
}

/// The model for a fixed color budget k. Distances are copied in so the
/// model owns everything it needs to stream constraints.
#[derive(Debug, Clone)]
pub struct IlpModel {
    n: usize,
    k: u32,
    dist: Vec<u32>,
}

impl IlpModel {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    /// One binary variable per vertex and color, plus z.
    pub fn variable_count(&self) -> usize {
        self.n * self.k as usize + 1
    }

    pub fn assignment_constraint_count(&self) -> usize {
        self.n
    }

    /// One constraint per unordered pair and per color i with
    /// dist(u, v) <= i <= k.
    pub fn separation_constraint_count(&self) -> usize {
        let mut count = 0usize;
        for u in 0..self.n {
            for v in u + 1..self.n {
                let d = self.dist(u, v);
                if d <= self.k {
                    count += (self.k - d + 1) as usize;
                }
            }
        }
        count
    }

    pub fn bound_constraint_count(&self) -> usize {
        self.n * self.k as usize
    }

    /// Separation triples (u, v, i) in (u, v, i)-lexicographic order.
    pub fn separation_constraints(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let k = self.k;
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).flat_map(move |v| {
                let d = self.dist(u, v);
                (d..=k).map(move |i| (u, v, i))
            })
        })
    }

    /// Whether a coloring with colors <= k satisfies every model
    /// constraint (assignment holds for any total coloring).
    pub fn satisfied_by(&self, c: &PackingColoring) -> bool {
        if c.vertex_count() != self.n || c.k_used() > self.k {
            return false;
        }
        self.separation_constraints()
            .all(|(u, v, i)| !(c.color(u) == i && c.color(v) == i))
    }
}

pub fn build_model(dm: &DistanceMatrix, k: u32) -> Result<IlpModel, IlpError> {
    if k == 0 {
        return Err(IlpError::InvalidParameter("color budget must be >= 1".into()));
    }
    let n = dm.vertex_count();
    let mut dist = vec![0u32; n * n];
    for u in 0..n {
        for v in 0..n {
            dist[u * n + v] = dm.dist(u, v);
        }
    }
    Ok(IlpModel { n, k, dist })
}

/// Streams the model in LP format: objective, assignment constraints by
/// vertex, separation constraints by (u, v, i), bound constraints by
/// (v, i), bounds (z >= 1), and the binary section.
pub fn write_lp_to(model: &IlpModel, mut out: impl Write) -> Result<(), IlpError> {
    writeln!(out, "Minimize")?;
    writeln!(out, " obj: z")?;
    writeln!(out, "Subject To")?;
    for v in 0..model.n {
        write!(out, " assign_{}:", v + 1)?;
        for i in 1..=model.k {
            if i > 1 {
                write!(out, " +")?;
            }
            write!(out, " x_{}_{}", v + 1, i)?;
        }
        writeln!(out, " = 1")?;
    }
    for (u, v, i) in model.separation_constraints() {
        writeln!(
            out,
            " sep_{}_{}_{}: x_{}_{} + x_{}_{} <= 1",
            u + 1,
            v + 1,
            i,
            u + 1,
            i,
            v + 1,
            i
        )?;
    }
    for v in 0..model.n {
        for i in 1..=model.k {
            writeln!(out, " bnd_{}_{}: {} x_{}_{} - z <= 0", v + 1, i, i, v + 1, i)?;
        }
    }
    writeln!(out, "Bounds")?;
    writeln!(out, " z >= 1")?;
    writeln!(out, "Binary")?;
    for v in 0..model.n {
        for i in 1..=model.k {
            writeln!(out, " x_{}_{}", v + 1, i)?;
        }
    }
    writeln!(out, "End")?;
    Ok(())
}

pub fn write_lp(model: &IlpModel, path: impl AsRef<Path>) -> Result<(), IlpError> {
    let file = File::create(path)?;
    let mut writer = BufWriter::new(file);
    write_lp_to(model, &mut writer)?;
    writer.flush()?;
    Ok(())
}

pub fn lp_to_string(model: &IlpModel) -> String {
    let mut buf = Vec::new();
    write_lp_to(model, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("LP output is ASCII")
}

/// Parses a solution file of `name value` lines (# comments ignored),
/// rounding binaries within 1e-6 and insisting on exactly one color per
/// vertex. Returns the coloring and the reported objective.
pub fn parse_solution(text: &str, model: &IlpModel) -> Result<(PackingColoring, f64), IlpError> {
    const TOL: f64 = 1e-6;
    let mut colors: Vec<Option<u32>> = vec![None; model.n];
    let mut z = f64::NAN;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_ascii_whitespace();
        let name = parts.next().unwrap();
        let value: f64 = parts
            .next()
            .ok_or_else(|| IlpError::Parse {
                line: lineno,
                msg: format!("missing value for {name}"),
            })?
            .parse()
            .map_err(|_| IlpError::Parse {
                line: lineno,
                msg: format!("bad value for {name}"),
            })?;
        if name == "z" {
            z = value;
            continue;
        }
        let rest = name.strip_prefix("x_").ok_or_else(|| IlpError::Parse {
            line: lineno,
            msg: format!("unknown variable {name}"),
        })?;
        let (v_str, i_str) = rest.split_once('_').ok_or_else(|| IlpError::Parse {
            line: lineno,
            msg: format!("malformed variable {name}"),
        })?;
        let v: usize = v_str.parse().map_err(|_| IlpError::Parse {
            line: lineno,
            msg: format!("malformed variable {name}"),
        })?;
        let i: u32 = i_str.parse().map_err(|_| IlpError::Parse {
            line: lineno,
            msg: format!("malformed variable {name}"),
        })?;
        if v == 0 || v > model.n || i == 0 || i > model.k {
            return Err(IlpError::Parse {
                line: lineno,
                msg: format!("{name} is outside the model"),
            });
        }
        let bit = if (value - 1.0).abs() <= TOL {
            true
        } else if value.abs() <= TOL {
            false
        } else {
            return Err(IlpError::NotIntegral {
                var: name.to_string(),
                value,
            });
        };
        if bit {
            if colors[v - 1].is_some() {
                return Err(IlpError::OverAssigned(v));
            }
            colors[v - 1] = Some(i);
        }
    }
    let mut resolved = Vec::with_capacity(model.n);
    for (v, c) in colors.into_iter().enumerate() {
        resolved.push(c.ok_or(IlpError::IncompleteSolution(v + 1))?);
    }
    Ok((PackingColoring::new(resolved).unwrap(), z))
}

pub fn read_solution(
    path: impl AsRef<Path>,
    model: &IlpModel,
) -> Result<(PackingColoring, f64), IlpError> {
    parse_solution(&std::fs::read_to_string(path)?, model)
}
