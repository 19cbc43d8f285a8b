//! Edge-list text format.
//!
//! ```text
//! n m
//! u v        (m lines, 0 <= u < v < n)
//! ```
//!
//! ASCII decimal, one record per newline-terminated line. The reader rejects
//! duplicate pairs, self-loops, out-of-range ids and a pair count that does
//! not match the header.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", g.n(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn to_edge_list_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let err = |msg: String| Error::Parse { line: lineno, msg };
    let mut it = line.split_ascii_whitespace();
    let a = it.next().ok_or_else(|| err("expected two integers".into()))?;
    let b = it.next().ok_or_else(|| err("expected two integers".into()))?;
    if it.next().is_some() {
        return Err(err("trailing tokens".into()));
    }
    let a = a.parse::<usize>().map_err(|e| err(format!("{a:?}: {e}")))?;
    let b = b.parse::<usize>().map_err(|e| err(format!("{b:?}: {e}")))?;
    Ok((a, b))
}

pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph> {
    let mut lines = input.lines().enumerate();
    let (n, m) = match lines.next() {
        Some((_, line)) => parse_pair(&line?, 1)?,
        None => return Err(Error::Parse { line: 1, msg: "missing header".into() }),
    };
    let mut g = Graph::empty(n);
    let mut seen = 0;
    for (i, line) in lines {
        let lineno = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (u, v) = parse_pair(&line, lineno)?;
        let err = |msg: String| Error::Parse { line: lineno, msg };
        if u == v {
            return Err(err(format!("self-loop at {u}")));
        }
        if v >= n || u >= n {
            return Err(err(format!("vertex out of range for n = {n}")));
        }
        if u > v {
            return Err(err(format!("pair must be written as u < v, got {u} {v}")));
        }
        if !g.add_edge(u, v) {
            return Err(err(format!("duplicate edge {u} {v}")));
        }
        seen += 1;
    }
    if seen != m {
        return Err(Error::Parse { line: 1, msg: format!("header declares {m} edges, found {seen}") });
    }
    Ok(g)
}

pub fn read_edge_list_file(path: impl AsRef<Path>) -> Result<Graph> {
    read_edge_list(BufReader::new(File::open(path)?))
}

pub fn write_edge_list_file(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    write_edge_list(g, BufWriter::new(File::create(path)?))
}
