//! The [`TetId`] element identifier and its constant-time operations:
//! vertex coordinates, cube-ids, parent, children, face-neighbors and
//! containment.
//!
//! Anchor coordinates are stored as `u32`. Face-neighbors across the root
//! boundary may have an anchor coordinate of `-h`; such values are produced
//! with wrapping arithmetic and read back through a signed view, so every
//! comparison in [`TetId::is_descendant_of`] is made on `i64` differences.

use std::fmt;

use crate::error::{Error, Result};
use crate::tables::{self, CubeId, Dim, LocalIndex, SimplexType};

/// Dimension and maximum refinement level `L` of a mesh.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MeshConfig {
    dim: Dim,
    max_level: u8,
}

impl MeshConfig {
    /// `max_level` must lie in `1..=30` (2D) or `1..=21` (3D).
    pub fn new(dim: Dim, max_level: u8) -> Result<MeshConfig> {
        if max_level == 0 || max_level > dim.level_cap() {
            return Err(Error::MaxLevelOutOfRange {
                level: max_level as u32,
                max: dim.level_cap() as u32,
            });
        }
        Ok(MeshConfig { dim, max_level })
    }

    /// Configuration with the largest supported maximum level.
    pub fn with_default_level(dim: Dim) -> MeshConfig {
        MeshConfig {
            dim,
            max_level: dim.level_cap(),
        }
    }

    #[inline]
    pub fn dim(&self) -> Dim {
        self.dim
    }

    #[inline]
    pub fn max_level(&self) -> u8 {
        self.max_level
    }

    /// Edge length `2^(L - level)` of a level-`level` element.
    #[inline]
    pub fn h(&self, level: u8) -> u32 {
        1u32 << (self.max_level - level)
    }

    /// Edge length of the root simplex, `2^L`.
    #[inline]
    pub fn root_len(&self) -> u32 {
        1u32 << self.max_level
    }

    #[inline]
    pub fn root(&self) -> TetId {
        TetId::default()
    }

    /// Number of elements in a uniform level-`level` refinement, `2^(d*level)`.
    #[inline]
    pub fn elements_at_level(&self, level: u8) -> u64 {
        1u64 << (self.dim.value() * level as u32)
    }

    pub(crate) fn check_level(&self, level: u8) -> Result<()> {
        if level > self.max_level {
            Err(Error::LevelOutOfRange {
                level: level as u32,
                max: self.max_level as u32,
            })
        } else {
            Ok(())
        }
    }
}

/// Anchor node, level and type of a simplex.
///
/// In 2D the third anchor coordinate is always zero. Equality is Tet-id
/// equality; the curve order is [`crate::sfc::compare`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct TetId {
    pub anchor: [u32; 3],
    pub level: u8,
    pub ty: SimplexType,
}

/// The `d + 1` ordered vertices of a simplex. Vertex 0 is the anchor.
///
/// Coordinates are signed so that elements outside the root simplex, whose
/// anchor may sit at `-h`, are represented exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexSet {
    dim: Dim,
    vertices: [[i64; 3]; 4],
}

impl VertexSet {
    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn vertices(&self) -> &[[i64; 3]] {
        &self.vertices[..self.dim.num_faces() as usize]
    }

    pub fn vertex(&self, i: usize) -> [i64; 3] {
        self.vertices()[i]
    }
}

#[inline(always)]
pub(crate) fn signed(c: u32) -> i64 {
    c as i32 as i64
}

impl TetId {
    /// Builds a validated element: level at most `L`, type in range, anchor
    /// aligned to the level grid and inside `[0, 2^L)^d`.
    pub fn new(cfg: MeshConfig, anchor: [u32; 3], level: u8, ty: SimplexType) -> Result<TetId> {
        cfg.check_level(level)?;
        if ty.0 >= cfg.dim.num_types() {
            return Err(Error::TypeOutOfRange(ty.0));
        }
        let h = cfg.h(level);
        let d = cfg.dim.value() as usize;
        for (axis, &c) in anchor.iter().enumerate() {
            let bad = if axis < d {
                c >= cfg.root_len() || c % h != 0
            } else {
                c != 0
            };
            if bad {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("anchor {anchor:?} not aligned to level {level}"),
                });
            }
        }
        Ok(TetId { anchor, level, ty })
    }

    #[inline]
    pub fn root() -> TetId {
        TetId::default()
    }

    /// Vertex coordinates `2^(L-level) * S_b + anchor`.
    pub fn coordinates(&self, cfg: MeshConfig) -> VertexSet {
        let h = cfg.h(self.level) as i64;
        let x0 = self.anchor.map(signed);
        let mut v = [x0; 4];
        let b = self.ty.0 as usize;
        match cfg.dim {
            Dim::Two => {
                v[1][b] += h;
                v[2][0] += h;
                v[2][1] += h;
            }
            Dim::Three => {
                let i = b / 2;
                let j = if b.is_multiple_of(2) {
                    (i + 2) % 3
                } else {
                    (i + 1) % 3
                };
                v[1][i] += h;
                v[2] = v[1];
                v[2][j] += h;
                for c in &mut v[3] {
                    *c += h;
                }
            }
        }
        VertexSet {
            dim: cfg.dim,
            vertices: v,
        }
    }

    /// Cube-id of the level-`q` ancestor's associated cube.
    pub fn cube_id(&self, cfg: MeshConfig, q: u8) -> Result<CubeId> {
        if q == 0 || q > self.level {
            return Err(Error::CubeIdLevel {
                query: q as u32,
                level: self.level as u32,
            });
        }
        Ok(CubeId(self.cid(cfg, q)))
    }

    #[inline(always)]
    pub(crate) fn cid(&self, cfg: MeshConfig, q: u8) -> u8 {
        let h = cfg.h(q);
        let mut c = 0u8;
        if self.anchor[0] & h != 0 {
            c |= 1;
        }
        if self.anchor[1] & h != 0 {
            c |= 2;
        }
        if self.anchor[2] & h != 0 {
            c |= 4;
        }
        c
    }

    pub fn parent(&self, cfg: MeshConfig) -> Result<TetId> {
        if self.level == 0 {
            return Err(Error::RootHasNoParent);
        }
        Ok(self.parent_unchecked(cfg))
    }

    #[inline]
    pub(crate) fn parent_unchecked(&self, cfg: MeshConfig) -> TetId {
        let h = cfg.h(self.level);
        let c = self.cid(cfg, self.level);
        TetId {
            anchor: self.anchor.map(|x| x & !h),
            level: self.level - 1,
            ty: SimplexType(tables::pt(cfg.dim, c, self.ty.0)),
        }
    }

    /// Child number `bey_index` in Bey's numbering.
    pub fn child(&self, cfg: MeshConfig, bey_index: u8) -> Result<TetId> {
        if bey_index >= cfg.dim.num_children() {
            return Err(Error::ChildOutOfRange(bey_index));
        }
        if self.level >= cfg.max_level {
            return Err(Error::LevelOverflow(cfg.max_level as u32));
        }
        Ok(self.child_unchecked(cfg, bey_index))
    }

    #[inline]
    pub(crate) fn child_unchecked(&self, cfg: MeshConfig, i: u8) -> TetId {
        // The child anchor is the midpoint of vertex 0 and vertex j; only
        // vertex j's offset from the anchor is computed.
        let j = match (cfg.dim, i) {
            (_, 0) => 0,
            (Dim::Two, 3) => 1,
            (_, 1 | 4 | 5) => 1,
            (_, 2 | 6 | 7) => 2,
            _ => 3,
        };
        let half = cfg.h(self.level) >> 1;
        let b = self.ty.0 as usize;
        let mut anchor = self.anchor;
        match (cfg.dim, j) {
            (_, 0) => {}
            (Dim::Two, 1) => anchor[b] = anchor[b].wrapping_add(half),
            (Dim::Two, _) => {
                anchor[0] = anchor[0].wrapping_add(half);
                anchor[1] = anchor[1].wrapping_add(half);
            }
            (Dim::Three, 3) => {
                for a in &mut anchor {
                    *a = a.wrapping_add(half);
                }
            }
            (Dim::Three, _) => {
                let ax = b / 2;
                anchor[ax] = anchor[ax].wrapping_add(half);
                if j == 2 {
                    let ay = if b.is_multiple_of(2) {
                        (ax + 2) % 3
                    } else {
                        (ax + 1) % 3
                    };
                    anchor[ay] = anchor[ay].wrapping_add(half);
                }
            }
        }
        TetId {
            anchor,
            level: self.level + 1,
            ty: SimplexType(tables::ct(cfg.dim, self.ty.0, i)),
        }
    }

    /// The child at TM position `local`.
    pub fn tm_child(&self, cfg: MeshConfig, local: LocalIndex) -> Result<TetId> {
        if local.0 >= cfg.dim.num_children() {
            return Err(Error::ChildOutOfRange(local.0));
        }
        if self.level >= cfg.max_level {
            return Err(Error::LevelOverflow(cfg.max_level as u32));
        }
        Ok(self.tm_child_unchecked(cfg, local.0))
    }

    #[inline]
    pub(crate) fn tm_child_unchecked(&self, cfg: MeshConfig, local: u8) -> TetId {
        self.child_unchecked(cfg, tables::sigma_inv(cfg.dim, self.ty.0, local))
    }

    /// All `2^d` children in TM order.
    pub fn tm_children(&self, cfg: MeshConfig) -> Result<Vec<TetId>> {
        if self.level >= cfg.max_level {
            return Err(Error::LevelOverflow(cfg.max_level as u32));
        }
        Ok((0..cfg.dim.num_children())
            .map(|l| self.tm_child_unchecked(cfg, l))
            .collect())
    }

    /// The `local`-th TM child of this element's parent.
    pub fn sibling(&self, cfg: MeshConfig, local: LocalIndex) -> Result<TetId> {
        if local.0 >= cfg.dim.num_children() {
            return Err(Error::ChildOutOfRange(local.0));
        }
        Ok(self.parent(cfg)?.tm_child_unchecked(cfg, local.0))
    }

    /// TM position of this element among its siblings; zero for the root.
    #[inline]
    pub fn local_index(&self, cfg: MeshConfig) -> LocalIndex {
        if self.level == 0 {
            return LocalIndex(0);
        }
        LocalIndex(tables::iloc(cfg.dim, self.cid(cfg, self.level), self.ty.0))
    }

    /// Same-level neighbor across face `face` (the face opposite vertex
    /// `face`) and the neighbor's face number pointing back. The neighbor may
    /// lie outside the root simplex; check with [`TetId::is_inside_root`].
    pub fn face_neighbor(&self, cfg: MeshConfig, face: u8) -> Result<(TetId, u8)> {
        if face >= cfg.dim.num_faces() {
            return Err(Error::FaceOutOfRange(face));
        }
        Ok(self.face_neighbor_unchecked(cfg, face))
    }

    #[inline]
    pub(crate) fn face_neighbor_unchecked(&self, cfg: MeshConfig, face: u8) -> (TetId, u8) {
        let data = tables::face_data(cfg.dim, self.ty.0, face);
        let mut anchor = self.anchor;
        if let Some(step) = data.offset {
            let h = cfg.h(self.level);
            let a = &mut anchor[step.axis.index()];
            *a = if step.sign > 0 {
                a.wrapping_add(h)
            } else {
                a.wrapping_sub(h)
            };
        }
        let n = TetId {
            anchor,
            level: self.level,
            ty: data.neighbor_type,
        };
        (n, data.dual_face)
    }

    /// Whether this element is a descendant of the root simplex.
    #[inline]
    pub fn is_inside_root(&self, cfg: MeshConfig) -> bool {
        self.is_descendant_of(cfg, &TetId::root())
    }

    /// Whether `self` is a descendant of `ancestor` (every element is a
    /// descendant of itself). Constant time, independent of both levels.
    pub fn is_descendant_of(&self, cfg: MeshConfig, ancestor: &TetId) -> bool {
        if self.level < ancestor.level {
            return false;
        }
        if self.level == ancestor.level {
            return self == ancestor;
        }
        let h = cfg.h(ancestor.level) as i64;
        let mut d = [0i64; 3];
        for (k, dk) in d.iter_mut().enumerate() {
            *dk = signed(self.anchor[k]) - signed(ancestor.anchor[k]);
        }
        let [i, j, k] = tables::axes(cfg.dim, ancestor.ty.0);
        let (nb, tb) = (self.ty.0, ancestor.ty.0);
        let outside = match cfg.dim {
            Dim::Two => d[i] >= h || d[j] < 0 || d[j] - d[i] > 0 || (d[i] == d[j] && nb == 1 - tb),
            Dim::Three => {
                // {b+1, b+2, b+3} and {b-1, b-2, b-3} modulo 6
                let up = |n: u8| (n + 6 - tb) % 6 >= 1 && (n + 6 - tb) % 6 <= 3;
                let down = |n: u8| (tb + 6 - n) % 6 >= 1 && (tb + 6 - n) % 6 <= 3;
                let even = tb % 2 == 0;
                d[i] >= h
                    || d[j] < 0
                    || d[k] - d[i] > 0
                    || d[j] - d[k] > 0
                    || (d[j] == d[k] && if even { up(nb) } else { down(nb) })
                    || (d[k] == d[i] && if even { down(nb) } else { up(nb) })
                    || (d[j] == d[k] && d[i] == d[k] && nb != tb)
            }
        };
        !outside
    }

    /// Fixed-width little-endian encoding: `d` coordinates of 4 bytes, then
    /// level and type of one byte each.
    pub fn to_bytes(&self, dim: Dim) -> Vec<u8> {
        let d = dim.value() as usize;
        let mut out = Vec::with_capacity(dim.serialized_len());
        for c in &self.anchor[..d] {
            out.extend_from_slice(&c.to_le_bytes());
        }
        out.push(self.level);
        out.push(self.ty.0);
        out
    }

    pub fn from_bytes(dim: Dim, bytes: &[u8]) -> Result<TetId> {
        let expected = dim.serialized_len();
        if bytes.len() != expected {
            return Err(Error::ByteLength {
                expected,
                got: bytes.len(),
            });
        }
        let d = dim.value() as usize;
        let mut anchor = [0u32; 3];
        for (k, a) in anchor.iter_mut().take(d).enumerate() {
            *a = u32::from_le_bytes(bytes[4 * k..4 * k + 4].try_into().unwrap());
        }
        Ok(TetId {
            anchor,
            level: bytes[4 * d],
            ty: SimplexType(bytes[4 * d + 1]),
        })
    }
}

impl fmt::Display for TetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.anchor.map(signed);
        write!(f, "({x}, {y}, {z}) level {} type {}", self.level, self.ty.0)
    }
}
