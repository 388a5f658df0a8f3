//! Text instance format.
//!
//! ```text
//! NAME: tiny
//! DIMENSION: 4
//! CLUSTERS: 2
//! SOURCE: 1
//! EDGE_WEIGHT_TYPE: EXPLICIT
//! EDGE_SECTION
//! 1 2 1
//! 2 3 1
//! 3 4 1
//! CLUSTER_SECTION
//! 1 1 2 -1
//! 2 3 4 -1
//! EOF
//! ```
//!
//! `EUC_2D` instances use a `NODE_COORD_SECTION` of `id x y` lines instead of
//! `EDGE_SECTION` and describe a complete graph. Vertex ids are 1-based.

use std::path::Path;

use super::graph::{euclidean_edges, ClusteredGraph, GraphIssue};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum WeightType {
    Euc2d,
    Explicit,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    Coords,
    Edges,
    Clusters,
    Done,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} '{tok}'")))
}

fn vertex(tok: &str, line: usize, n: usize) -> Result<usize> {
    let id: usize = number(tok, line, "vertex id")?;
    if id == 0 || id > n {
        return Err(parse_err(line, format!("vertex id {id} outside 1..={n}")));
    }
    Ok(id - 1)
}

fn require_dimension(n: Option<usize>, line: usize) -> Result<usize> {
    n.ok_or_else(|| parse_err(line, "DIMENSION must precede data sections"))
}

pub fn parse_instance(text: &str) -> Result<ClusteredGraph> {
    let mut name = String::from("unnamed");
    let mut n: Option<usize> = None;
    let mut k: Option<usize> = None;
    let mut source: Option<(usize, usize)> = None;
    let mut weight_type: Option<WeightType> = None;
    let mut coords: Vec<Option<(f64, f64)>> = Vec::new();
    let mut coord_line = 0;
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    let mut edge_header = 0;
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut cluster_lines: Vec<usize> = Vec::new();
    let mut cluster_header = 0;
    let mut section = Section::Header;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        match trimmed {
            "EOF" => {
                section = Section::Done;
                break;
            }
            "NODE_COORD_SECTION" => {
                coords = vec![None; require_dimension(n, line)?];
                coord_line = line;
                section = Section::Coords;
                continue;
            }
            "EDGE_SECTION" => {
                require_dimension(n, line)?;
                edge_header = line;
                section = Section::Edges;
                continue;
            }
            "CLUSTER_SECTION" => {
                require_dimension(n, line)?;
                cluster_header = line;
                section = Section::Clusters;
                continue;
            }
            _ => {}
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match section {
            Section::Header => {
                let (key, value) = trimmed.split_once(':').ok_or_else(|| {
                    parse_err(line, format!("expected 'KEY: value', got '{trimmed}'"))
                })?;
                let value = value.trim();
                match key.trim() {
                    "NAME" => name = value.to_string(),
                    "DIMENSION" => n = Some(number(value, line, "dimension")?),
                    "CLUSTERS" => k = Some(number(value, line, "cluster count")?),
                    "SOURCE" => source = Some((number(value, line, "source")?, line)),
                    "EDGE_WEIGHT_TYPE" => {
                        weight_type = Some(match value {
                            "EUC_2D" => WeightType::Euc2d,
                            "EXPLICIT" => WeightType::Explicit,
                            other => {
                                return Err(parse_err(
                                    line,
                                    format!("unsupported EDGE_WEIGHT_TYPE '{other}'"),
                                ))
                            }
                        })
                    }
                    "TYPE" | "COMMENT" => {}
                    other => return Err(parse_err(line, format!("unknown header key '{other}'"))),
                }
            }
            Section::Coords => {
                if toks.len() != 3 {
                    return Err(parse_err(line, "coordinate line needs 'id x y'"));
                }
                let v = vertex(toks[0], line, coords.len())?;
                if coords[v].is_some() {
                    return Err(parse_err(
                        line,
                        format!("duplicate coordinates for vertex {}", v + 1),
                    ));
                }
                coords[v] = Some((number(toks[1], line, "x")?, number(toks[2], line, "y")?));
            }
            Section::Edges => {
                let n = require_dimension(n, line)?;
                if toks.len() != 3 {
                    return Err(parse_err(line, "edge line needs 'u v w'"));
                }
                edges.push((
                    vertex(toks[0], line, n)?,
                    vertex(toks[1], line, n)?,
                    number(toks[2], line, "weight")?,
                ));
                edge_lines.push(line);
            }
            Section::Clusters => {
                let n = require_dimension(n, line)?;
                if toks.len() < 3 || toks.last() != Some(&"-1") {
                    return Err(parse_err(
                        line,
                        "cluster line needs 'id v1 ... -1' with at least one vertex",
                    ));
                }
                let _: usize = number(toks[0], line, "cluster id")?;
                let members = toks[1..toks.len() - 1]
                    .iter()
                    .map(|t| vertex(t, line, n))
                    .collect::<Result<Vec<_>>>()?;
                clusters.push(members);
                cluster_lines.push(line);
            }
            Section::Done => unreachable!("loop exits at EOF"),
        }
    }
    if section != Section::Done {
        return Err(parse_err(last_line, "missing EOF"));
    }

    let n = n.ok_or_else(|| parse_err(last_line, "missing DIMENSION"))?;
    let (source, source_line) = source.ok_or_else(|| parse_err(last_line, "missing SOURCE"))?;
    if source == 0 || source > n {
        return Err(parse_err(
            source_line,
            format!("source {source} outside 1..={n}"),
        ));
    }
    let k = k.ok_or_else(|| parse_err(last_line, "missing CLUSTERS"))?;
    if clusters.len() != k {
        return Err(parse_err(
            cluster_header.max(1),
            format!(
                "CLUSTERS is {k} but {} cluster lines were given",
                clusters.len()
            ),
        ));
    }
    let weight_type =
        weight_type.ok_or_else(|| parse_err(last_line, "missing EDGE_WEIGHT_TYPE"))?;
    let edges = match weight_type {
        WeightType::Euc2d => {
            if coords.is_empty() {
                return Err(parse_err(
                    last_line,
                    "EUC_2D instance without NODE_COORD_SECTION",
                ));
            }
            if let Some(v) = coords.iter().position(Option::is_none) {
                return Err(parse_err(
                    coord_line,
                    format!("missing coordinates for vertex {}", v + 1),
                ));
            }
            let pts: Vec<(f64, f64)> = coords.into_iter().flatten().collect();
            euclidean_edges(&pts)
        }
        WeightType::Explicit => edges,
    };

    ClusteredGraph::build(name, n, &edges, clusters, source - 1).map_err(|issue| {
        let line = match issue {
            GraphIssue::VertexOutOfRange { cluster, .. }
            | GraphIssue::EmptyCluster { cluster }
            | GraphIssue::ClusterDisconnected { cluster } => cluster_lines[cluster],
            GraphIssue::Overlap { second, .. } => cluster_lines[second],
            GraphIssue::Unassigned { .. } => cluster_header,
            GraphIssue::SourceOutOfRange { .. } => source_line,
            GraphIssue::EdgeOutOfRange { edge }
            | GraphIssue::SelfLoop { edge }
            | GraphIssue::DuplicateEdge { edge }
            | GraphIssue::BadWeight { edge } => edge_lines.get(edge).copied().unwrap_or(coord_line),
            GraphIssue::Disconnected | GraphIssue::Empty => edge_header.max(coord_line),
        };
        parse_err(line, issue.to_string())
    })
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<ClusteredGraph> {
    parse_instance(&std::fs::read_to_string(path)?)
}
