//! Readers for the two supported input formats.
//!
//! Edge list: one edge per line, two labels split on whitespace or commas,
//! `#`/`%` comment lines and blank lines skipped. Pajek: the `*Vertices`,
//! `*Edges` and `*Arcs` sections only; arcs are read as undirected edges and
//! weights are ignored.

use crate::error::{Error, Result};
use crate::graph::EdgeList;

/// Input format selector. `Auto` sniffs the first meaningful character:
/// `*` means Pajek, anything else an edge list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Auto,
    EdgeList,
    Pajek,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(Format::Auto),
            "edgelist" | "edge-list" | "edges" => Ok(Format::EdgeList),
            "pajek" | "net" => Ok(Format::Pajek),
            other => Err(Error::InvalidParameter(format!(
                "unknown format: {other} (expected auto, edgelist or pajek)"
            ))),
        }
    }
}

fn is_comment(line: &str) -> bool {
    matches!(line.chars().next(), Some('#') | Some('%'))
}

fn strip_bom(text: &str) -> &str {
    text.strip_prefix('\u{feff}').unwrap_or(text)
}

/// Parse text in the given format, sniffing when `Auto`.
pub fn parse(text: &str, format: Format) -> Result<EdgeList> {
    let text = strip_bom(text);
    let format = match format {
        Format::Auto => {
            let first = text
                .lines()
                .map(str::trim_start)
                .find(|l| !l.is_empty() && !is_comment(l));
            match first {
                Some(l) if l.starts_with('*') => Format::Pajek,
                _ => Format::EdgeList,
            }
        }
        f => f,
    };
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Pajek => parse_pajek(text),
        Format::Auto => unreachable!(),
    }
}

/// Parse a plain edge list. Every data line must contain at least two
/// tokens; extra tokens (weights, timestamps) are ignored.
pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let text = strip_bom(text);
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut push_label = |labels: &mut Vec<String>, tok: &str| {
        if seen.insert(tok.to_string()) {
            labels.push(tok.to_string());
        }
    };
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        let mut toks = line.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty());
        let a = toks.next();
        let b = toks.next();
        match (a, b) {
            (Some(a), Some(b)) => {
                push_label(&mut labels, a);
                push_label(&mut labels, b);
                edges.push((a.to_string(), b.to_string()));
            }
            _ => {
                return Err(Error::Parse {
                    line: no + 1,
                    msg: format!("expected two node labels, got {line:?}"),
                })
            }
        }
    }
    Ok(EdgeList { edges, labels })
}

/// Parse the Pajek subset: a `*Vertices n` header, then `*Edges` / `*Arcs`
/// sections of `src dst [weight]` lines with 1-based endpoints. Vertex
/// definition lines are accepted and ignored; node labels become "1".."n".
pub fn parse_pajek(text: &str) -> Result<EdgeList> {
    #[derive(PartialEq)]
    enum Section {
        Preamble,
        Vertices,
        Edges,
    }
    let text = strip_bom(text);
    let mut section = Section::Preamble;
    let mut n: usize = 0;
    let mut edges = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || is_comment(line) {
            continue;
        }
        if let Some(rest) = line.strip_prefix('*') {
            let mut toks = rest.split_whitespace();
            let key = toks.next().unwrap_or("").to_ascii_lowercase();
            match key.as_str() {
                "vertices" => {
                    n = toks
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or(Error::Parse {
                            line: no + 1,
                            msg: "*Vertices requires a count".into(),
                        })?;
                    section = Section::Vertices;
                }
                "edges" | "arcs" => {
                    if section == Section::Preamble {
                        return Err(Error::Parse {
                            line: no + 1,
                            msg: "*Edges before *Vertices".into(),
                        });
                    }
                    section = Section::Edges;
                }
                other => {
                    return Err(Error::Parse {
                        line: no + 1,
                        msg: format!("unsupported Pajek section *{other}"),
                    })
                }
            }
            continue;
        }
        match section {
            Section::Preamble => {
                return Err(Error::Parse {
                    line: no + 1,
                    msg: "expected *Vertices header".into(),
                })
            }
            Section::Vertices => {} // vertex id / name / coordinates: ignored
            Section::Edges => {
                let mut toks = line.split_whitespace();
                let parse_endpoint = |tok: Option<&str>| -> Result<usize> {
                    let tok = tok.ok_or(Error::Parse {
                        line: no + 1,
                        msg: "edge line needs two endpoints".into(),
                    })?;
                    let id: usize = tok.parse().map_err(|_| Error::Parse {
                        line: no + 1,
                        msg: format!("bad endpoint {tok:?}"),
                    })?;
                    if id == 0 || id > n {
                        return Err(Error::Parse {
                            line: no + 1,
                            msg: format!("endpoint {id} outside 1..{n}"),
                        });
                    }
                    Ok(id)
                };
                let a = parse_endpoint(toks.next())?;
                let b = parse_endpoint(toks.next())?;
                edges.push((a.to_string(), b.to_string()));
            }
        }
    }
    let labels = (1..=n).map(|i| i.to_string()).collect();
    Ok(EdgeList { edges, labels })
}
