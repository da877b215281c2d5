//! Text formats: coarse mesh header `dim K` and forest dumps.
//!
//! A forest dump has one line per element, `tree x y [z] level type`, trees
//! in increasing order and elements in curve order. Writers prepend a comment
//! line `# forest dim=D max_level=L trees=K rank=p ranks=P` so the file can be
//! read back without side information; readers accept dumps without it and
//! then infer the dimension from the column count.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::forest::{CoarseMesh, Forest, Tree};
use crate::tables::{Dim, SimplexType};
use crate::tet::{MeshConfig, TetId};

pub fn parse_coarse_mesh(text: &str) -> Result<CoarseMesh> {
    let (line, content) = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .find(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .ok_or(Error::Parse {
            line: 1,
            msg: "empty coarse mesh file".into(),
        })?;
    let fields: Vec<&str> = content.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(parse_err(line, "expected `dim K`"));
    }
    let dim = Dim::from_u32(parse_num(line, fields[0])?)?;
    CoarseMesh::new(dim, parse_num(line, fields[1])?)
}

pub fn write_coarse_mesh<W: Write>(mesh: &CoarseMesh, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", mesh.dim().value(), mesh.num_trees())?;
    Ok(())
}

pub fn write_forest<W: Write>(forest: &Forest, out: W) -> Result<()> {
    let mut out = std::io::BufWriter::new(out);
    let cfg = forest.config();
    writeln!(
        out,
        "# forest dim={} max_level={} trees={} rank={} ranks={}",
        cfg.dim().value(),
        cfg.max_level(),
        forest.coarse().num_trees(),
        forest.rank(),
        forest.rank_count()
    )?;
    for (tree, e) in forest.iter() {
        let [x, y, z] = e.anchor;
        match cfg.dim() {
            Dim::Two => writeln!(out, "{tree} {x} {y} {} {}", e.level, e.ty.0)?,
            Dim::Three => writeln!(out, "{tree} {x} {y} {z} {} {}", e.level, e.ty.0)?,
        }
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug, Default)]
struct Header {
    dim: Option<Dim>,
    max_level: Option<u8>,
    trees: Option<u32>,
    rank: Option<u32>,
    ranks: Option<u32>,
}

fn parse_header(line: usize, text: &str) -> Result<Option<Header>> {
    let mut words = text.split_whitespace();
    if words.next() != Some("forest") {
        return Ok(None);
    }
    let mut h = Header::default();
    for w in words {
        let (key, value) = w
            .split_once('=')
            .ok_or_else(|| parse_err(line, "header field must be key=value"))?;
        match key {
            "dim" => h.dim = Some(Dim::from_u32(parse_num(line, value)?)?),
            "max_level" => h.max_level = Some(parse_num(line, value)?),
            "trees" => h.trees = Some(parse_num(line, value)?),
            "rank" => h.rank = Some(parse_num(line, value)?),
            "ranks" => h.ranks = Some(parse_num(line, value)?),
            _ => return Err(parse_err(line, &format!("unknown header field `{key}`"))),
        }
    }
    Ok(Some(h))
}

pub fn read_forest<R: BufRead>(input: R) -> Result<Forest> {
    let mut header = Header::default();
    let mut trees: Vec<Tree> = Vec::new();
    let mut dim = None;
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(comment) = text.strip_prefix('#') {
            if let Some(h) = parse_header(line_no, comment)? {
                header = h;
                dim = header.dim;
            }
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        let d = match (dim, fields.len()) {
            (Some(d), n) if n == d.value() as usize + 3 => d,
            (None, 5) => Dim::Two,
            (None, 6) => Dim::Three,
            _ => return Err(parse_err(line_no, "wrong number of columns")),
        };
        dim = Some(d);
        let tree: u32 = parse_num(line_no, fields[0])?;
        let x = parse_num(line_no, fields[1])?;
        let y = parse_num(line_no, fields[2])?;
        let z = if d == Dim::Three {
            parse_num(line_no, fields[3])?
        } else {
            0
        };
        let n = fields.len();
        let level = parse_num(line_no, fields[n - 2])?;
        let ty = SimplexType(parse_num(line_no, fields[n - 1])?);
        let e = TetId {
            anchor: [x, y, z],
            level,
            ty,
        };
        match trees.last_mut() {
            Some(t) if t.id == tree => t.elements.push(e),
            _ => trees.push(Tree {
                id: tree,
                elements: vec![e],
            }),
        }
    }
    let dim = dim.ok_or(Error::Parse {
        line: 0,
        msg: "cannot determine dimension of an empty dump without header".into(),
    })?;
    let config = match header.max_level {
        Some(l) => MeshConfig::new(dim, l)?,
        None => MeshConfig::with_default_level(dim),
    };
    let num_trees = header
        .trees
        .unwrap_or_else(|| trees.iter().map(|t| t.id + 1).max().unwrap_or(1));
    let coarse = CoarseMesh::new(dim, num_trees)?;
    Forest::from_trees(
        coarse,
        config,
        header.ranks.unwrap_or(1),
        header.rank.unwrap_or(0),
        trees,
    )
}

fn parse_num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| parse_err(line, &format!("invalid number `{s}`")))
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::Parse {
        line,
        msg: msg.to_string(),
    }
}
