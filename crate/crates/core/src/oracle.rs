//! Brute-force geometric ground truth.
//!
//! Simplices are explicit vertex tuples with exact integer coordinates,
//! refined by cutting at edge midpoints. Nothing here reads the lookup tables
//! or the [`crate::TetId`] arithmetic; the test suite compares the two
//! implementations. Everything is exponential in the level and meant for
//! small meshes only.

use crate::tables::{Axis, AxisStep, Dim, FaceNeighborData, SimplexType, TableSet};
use crate::tet::MeshConfig;

/// Cube corner `c` has coordinates `(c & 1, c >> 1 & 1, c >> 2 & 1)`.
fn corner(c: u8) -> [i64; 3] {
    [(c & 1) as i64, (c >> 1 & 1) as i64, (c >> 2 & 1) as i64]
}

/// Corners of the unit cube spanning the reference simplex `S_b`.
fn reference_corners(dim: Dim, b: u8) -> &'static [u8] {
    const S2: [[u8; 3]; 2] = [[0, 1, 3], [0, 2, 3]];
    const S3: [[u8; 4]; 6] = [
        [0, 1, 5, 7],
        [0, 1, 3, 7],
        [0, 2, 3, 7],
        [0, 2, 6, 7],
        [0, 4, 6, 7],
        [0, 4, 5, 7],
    ];
    match dim {
        Dim::Two => &S2[b as usize],
        Dim::Three => &S3[b as usize],
    }
}

/// An explicit simplex: `d + 1` ordered integer vertices and a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeomSimplex {
    dim: Dim,
    vertices: [[i64; 3]; 4],
    pub level: u8,
}

impl GeomSimplex {
    pub fn new(dim: Dim, vertices: &[[i64; 3]], level: u8) -> GeomSimplex {
        assert_eq!(vertices.len(), dim.num_faces() as usize);
        let mut v = [[0; 3]; 4];
        v[..vertices.len()].copy_from_slice(vertices);
        GeomSimplex {
            dim,
            vertices: v,
            level,
        }
    }

    /// `h * S_b + anchor` with `h = 2^(L - level)`.
    pub fn scaled_reference(cfg: MeshConfig, anchor: [i64; 3], level: u8, b: u8) -> GeomSimplex {
        let h = 1i64 << (cfg.max_level() - level);
        let verts: Vec<[i64; 3]> = reference_corners(cfg.dim(), b)
            .iter()
            .map(|&c| {
                let k = corner(c);
                [
                    anchor[0] + h * k[0],
                    anchor[1] + h * k[1],
                    anchor[2] + h * k[2],
                ]
            })
            .collect();
        GeomSimplex::new(cfg.dim(), &verts, level)
    }

    pub fn root(cfg: MeshConfig) -> GeomSimplex {
        GeomSimplex::scaled_reference(cfg, [0; 3], 0, 0)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn vertices(&self) -> &[[i64; 3]] {
        &self.vertices[..self.dim.num_faces() as usize]
    }

    /// `d!` times the signed volume.
    pub fn orientation(&self) -> i128 {
        orient(self.dim, self.vertices())
    }
}

fn midpoint(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    let m = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
    debug_assert!(m.iter().all(|c| c % 2 == 0), "odd midpoint");
    m.map(|c| c / 2)
}

fn det3(a: [i128; 3], b: [i128; 3], c: [i128; 3]) -> i128 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn orient(dim: Dim, v: &[[i64; 3]]) -> i128 {
    let e = |k: usize| -> [i128; 3] {
        [
            (v[k][0] - v[0][0]) as i128,
            (v[k][1] - v[0][1]) as i128,
            (v[k][2] - v[0][2]) as i128,
        ]
    };
    match dim {
        Dim::Two => {
            let (a, b) = (e(1), e(2));
            a[0] * b[1] - a[1] * b[0]
        }
        Dim::Three => det3(e(1), e(2), e(3)),
    }
}

/// The `2^d` children in Bey order.
pub fn bey_children(g: &GeomSimplex) -> Vec<GeomSimplex> {
    let v = g.vertices();
    let m = |a: usize, b: usize| midpoint(v[a], v[b]);
    let level = g.level + 1;
    let kids: Vec<Vec<[i64; 3]>> = match g.dim {
        Dim::Two => vec![
            vec![v[0], m(0, 1), m(0, 2)],
            vec![m(0, 1), v[1], m(1, 2)],
            vec![m(0, 2), m(1, 2), v[2]],
            vec![m(0, 1), m(0, 2), m(1, 2)],
        ],
        Dim::Three => vec![
            vec![v[0], m(0, 1), m(0, 2), m(0, 3)],
            vec![m(0, 1), v[1], m(1, 2), m(1, 3)],
            vec![m(0, 2), m(1, 2), v[2], m(2, 3)],
            vec![m(0, 3), m(1, 3), m(2, 3), v[3]],
            vec![m(0, 1), m(0, 2), m(0, 3), m(1, 3)],
            vec![m(0, 1), m(0, 2), m(1, 2), m(1, 3)],
            vec![m(0, 2), m(0, 3), m(1, 3), m(2, 3)],
            vec![m(0, 2), m(1, 2), m(1, 3), m(2, 3)],
        ],
    };
    kids.iter()
        .map(|k| GeomSimplex::new(g.dim, k, level))
        .collect()
}

/// Anchor and type of a grid-aligned simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Classification {
    pub anchor: [i64; 3],
    pub ty: SimplexType,
}

/// Matches `g` against `h * S_b + anchor` for every type `b`, where `h` is the
/// edge length of level `g.level`. `None` if no candidate matches or the
/// anchor is not on the level grid.
pub fn classify(cfg: MeshConfig, g: &GeomSimplex) -> Option<Classification> {
    if g.level > cfg.max_level() {
        return None;
    }
    let h = 1i64 << (cfg.max_level() - g.level);
    let anchor = g.vertices()[0];
    if anchor.iter().any(|c| c.rem_euclid(h) != 0) {
        return None;
    }
    let mut found = None;
    for b in 0..cfg.dim().num_types() {
        if GeomSimplex::scaled_reference(cfg, anchor, g.level, b).vertices() == g.vertices() {
            assert!(found.is_none(), "ambiguous classification");
            found = Some(Classification {
                anchor,
                ty: SimplexType(b),
            });
        }
    }
    found
}

/// Closed point-in-simplex test with exact orientation determinants.
pub fn contains_point(g: &GeomSimplex, p: [i64; 3]) -> bool {
    let o = g.orientation();
    assert!(o != 0, "degenerate simplex");
    let n = g.dim.num_faces() as usize;
    (0..n).all(|i| {
        let mut v = g.vertices;
        v[i] = p;
        let oi = orient(g.dim, &v[..n]);
        oi == 0 || (oi > 0) == (o > 0)
    })
}

/// Whether `inner` lies inside the closed simplex `outer`.
pub fn containment(inner: &GeomSimplex, outer: &GeomSimplex) -> bool {
    inner.vertices().iter().all(|&p| contains_point(outer, p))
}

pub fn shared_vertices(a: &GeomSimplex, b: &GeomSimplex) -> usize {
    a.vertices()
        .iter()
        .filter(|v| b.vertices().contains(v))
        .count()
}

/// The same-level grid simplex sharing face `f` (opposite vertex `f`) with
/// the grid-aligned simplex `g`, and the face of the neighbor opposite its
/// unshared vertex. Found by searching all simplices of the neighboring cubes.
pub fn face_neighbor(cfg: MeshConfig, g: &GeomSimplex, f: usize) -> (GeomSimplex, usize) {
    let d = cfg.dim().value() as usize;
    let h = 1i64 << (cfg.max_level() - g.level);
    let face: Vec<[i64; 3]> = g
        .vertices()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != f)
        .map(|(_, &v)| v)
        .collect();
    let anchor = g.vertices()[0];
    let mut found = None;
    let span = if d == 3 { 3 } else { 1 };
    for dz in 0..span {
        for dy in 0..3 {
            for dx in 0..3 {
                let a = [
                    anchor[0] + (dx as i64 - 1) * h,
                    anchor[1] + (dy as i64 - 1) * h,
                    anchor[2] + if d == 3 { (dz as i64 - 1) * h } else { 0 },
                ];
                for b in 0..cfg.dim().num_types() {
                    let cand = GeomSimplex::scaled_reference(cfg, a, g.level, b);
                    if cand == *g || !face.iter().all(|v| cand.vertices().contains(v)) {
                        continue;
                    }
                    let dual = cand
                        .vertices()
                        .iter()
                        .position(|v| !face.contains(v))
                        .expect("distinct simplex sharing a face has one other vertex");
                    assert!(found.is_none(), "two simplices across one face");
                    found = Some((cand, dual));
                }
            }
        }
    }
    found.expect("every face of a grid simplex has a neighbor")
}

/// Cube-id of a level-`level >= 1` grid anchor.
pub fn cube_id_of_anchor(cfg: MeshConfig, anchor: [i64; 3], level: u8) -> u8 {
    let h = 1i64 << (cfg.max_level() - level);
    (0..cfg.dim().value() as usize)
        .map(|k| (((anchor[k] / h) & 1) as u8) << k)
        .sum()
}

/// Every table of [`crate::tables`] regenerated from refinement geometry and
/// the ordering of children by `(cube-id, type)`.
pub fn derive_tables(dim: Dim) -> TableSet {
    let cfg = MeshConfig::new(dim, 3).expect("level 3 is valid");
    let nt = dim.num_types() as usize;
    let nc = dim.num_children() as usize;
    let unset = u8::MAX;

    let mut child_type = vec![vec![unset; nc]; nt];
    let mut local_index = vec![vec![unset; nc]; nt];
    let mut bey_from_local = vec![vec![unset; nc]; nt];
    let mut parent_type = vec![vec![unset; nt]; nc];
    let mut local_from_cid_type = vec![vec![unset; nc]; nt];
    let mut cid_from_local = vec![vec![unset; nc]; nt];
    let mut type_from_local = vec![vec![unset; nc]; nt];

    for b in 0..nt {
        let parent = GeomSimplex::scaled_reference(cfg, [0; 3], 0, b as u8);
        let kids: Vec<(u8, u8)> = bey_children(&parent)
            .iter()
            .map(|k| {
                let c = classify(cfg, k).expect("Bey children are grid aligned");
                (cube_id_of_anchor(cfg, c.anchor, 1), c.ty.0)
            })
            .collect();
        let mut order: Vec<usize> = (0..nc).collect();
        order.sort_by_key(|&i| kids[i]);
        for (local, &i) in order.iter().enumerate() {
            let (c, t) = kids[i];
            child_type[b][i] = t;
            local_index[b][i] = local as u8;
            bey_from_local[b][local] = i as u8;
            cid_from_local[b][local] = c;
            type_from_local[b][local] = t;
            assert_eq!(
                parent_type[c as usize][t as usize], unset,
                "parent type not unique"
            );
            parent_type[c as usize][t as usize] = b as u8;
            local_from_cid_type[t as usize][c as usize] = local as u8;
        }
    }

    let mut face_neighbor = Vec::with_capacity(nt);
    for b in 0..nt {
        let anchor = [8, 8, if dim == Dim::Three { 8 } else { 0 }];
        let g = GeomSimplex::scaled_reference(cfg, anchor, 0, b as u8);
        let row = (0..dim.num_faces() as usize)
            .map(|f| {
                let (n, dual) = self::face_neighbor(cfg, &g, f);
                let c = classify(cfg, &n).expect("neighbor is grid aligned");
                let diff: Vec<(usize, i64)> = (0..3)
                    .map(|k| (k, (c.anchor[k] - anchor[k]) / 8))
                    .filter(|&(_, s)| s != 0)
                    .collect();
                let offset = match diff.as_slice() {
                    [] => None,
                    [(k, s)] => Some(AxisStep {
                        axis: Axis::from_index(*k),
                        sign: *s as i8,
                    }),
                    _ => panic!("neighbor anchor moved along several axes"),
                };
                FaceNeighborData {
                    neighbor_type: c.ty,
                    offset,
                    dual_face: dual as u8,
                }
            })
            .collect();
        face_neighbor.push(row);
    }

    TableSet {
        child_type,
        local_index,
        bey_from_local,
        parent_type,
        local_from_cid_type,
        cid_from_local,
        type_from_local,
        face_neighbor,
    }
}

/// A simplex of a uniform mesh together with its Bey child path from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleElement {
    pub path: Vec<u8>,
    pub simplex: GeomSimplex,
}

/// All simplices of the uniform level-`level` refinement of the root, in
/// depth-first Bey order.
pub fn uniform_mesh(cfg: MeshConfig, level: u8) -> Vec<OracleElement> {
    assert!(level <= cfg.max_level());
    let mut out = Vec::with_capacity(1 << (cfg.dim().value() * level as u32));
    let mut stack = vec![OracleElement {
        path: Vec::new(),
        simplex: GeomSimplex::root(cfg),
    }];
    while let Some(e) = stack.pop() {
        if e.simplex.level == level {
            out.push(e);
            continue;
        }
        for (i, k) in bey_children(&e.simplex).into_iter().enumerate().rev() {
            let mut path = e.path.clone();
            path.push(i as u8);
            stack.push(OracleElement { path, simplex: k });
        }
    }
    out
}

/// Number of level-`level` simplices of each type in the uniform refinement.
pub fn uniform_census(cfg: MeshConfig, level: u8) -> Vec<u64> {
    let mut counts = vec![0u64; cfg.dim().num_types() as usize];
    for e in uniform_mesh(cfg, level) {
        let c = classify(cfg, &e.simplex).expect("uniform mesh is grid aligned");
        counts[c.ty.0 as usize] += 1;
    }
    counts
}

/// Leaf count after refining uniformly to `init`, then recursively refining
/// simplices of type 0 or 3 while their level is below `init + extra`.
pub fn fractal_census(cfg: MeshConfig, init: u8, extra: u8) -> u64 {
    let fine = init + extra;
    assert!(fine <= cfg.max_level());
    let mut count = 0u64;
    let mut stack = vec![GeomSimplex::root(cfg)];
    while let Some(g) = stack.pop() {
        let refine = if g.level < init {
            true
        } else {
            let ty = classify(cfg, &g).expect("grid aligned").ty.0;
            (ty == 0 || ty == 3) && g.level < fine
        };
        if refine {
            stack.extend(bey_children(&g));
        } else {
            count += 1;
        }
    }
    count
}
