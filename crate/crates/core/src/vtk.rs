//! Legacy ASCII VTK unstructured-grid export.
//!
//! Every cell writes its own vertices (no point merging), coordinates are
//! scaled from `[0, 2^L]` to `[0, 1]`, and all trees are drawn in the same
//! unit domain since a coarse mesh here carries no geometry.

use std::io::Write;

use crate::error::Result;
use crate::forest::Forest;
use crate::tables::Dim;

const CELL_TRIANGLE: u8 = 5;
const CELL_TETRA: u8 = 10;

pub fn write_vtk<W: Write>(forest: &Forest, out: W) -> Result<()> {
    let mut out = std::io::BufWriter::new(out);
    let cfg = forest.config();
    let nv = cfg.dim().num_faces() as usize;
    let cells = forest.element_count() as usize;
    let scale = 1.0 / cfg.root_len() as f64;

    writeln!(out, "# vtk DataFile Version 3.0")?;
    writeln!(out, "simplicial forest")?;
    writeln!(out, "ASCII")?;
    writeln!(out, "DATASET UNSTRUCTURED_GRID")?;
    writeln!(out, "POINTS {} double", cells * nv)?;
    for (_, e) in forest.iter() {
        for v in e.coordinates(cfg).vertices() {
            writeln!(
                out,
                "{:.8e} {:.8e} {:.8e}",
                v[0] as f64 * scale,
                v[1] as f64 * scale,
                v[2] as f64 * scale
            )?;
        }
    }
    writeln!(out, "CELLS {} {}", cells, cells * (nv + 1))?;
    for c in 0..cells {
        write!(out, "{nv}")?;
        for k in 0..nv {
            write!(out, " {}", c * nv + k)?;
        }
        writeln!(out)?;
    }
    writeln!(out, "CELL_TYPES {cells}")?;
    let ty = match cfg.dim() {
        Dim::Two => CELL_TRIANGLE,
        Dim::Three => CELL_TETRA,
    };
    for _ in 0..cells {
        writeln!(out, "{ty}")?;
    }
    writeln!(out, "CELL_DATA {cells}")?;
    for (name, get) in [
        (
            "treeid",
            (|t: u32, _: u8, _: u8| t) as fn(u32, u8, u8) -> u32,
        ),
        ("level", |_, l, _| l as u32),
        ("type", |_, _, b| b as u32),
    ] {
        writeln!(out, "SCALARS {name} int 1")?;
        writeln!(out, "LOOKUP_TABLE default")?;
        for (tree, e) in forest.iter() {
            writeln!(out, "{}", get(tree, e.level, e.ty.0))?;
        }
    }
    out.flush()?;
    Ok(())
}
