//! The tetrahedral Morton curve: TM-index, consecutive index,
//! successor/predecessor enumeration, code validity, curve order and the
//! embedding into 6D cubes.
//!
//! A TM code is stored in one `u128`. Each level contributes a pair of
//! base-`2^d` digits `(cube-id, type)`; level 1 occupies the most significant
//! pair and the pair of level `q` starts at bit `2d(L - q)`. Digits below the
//! element's level are zero.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::tables::{self, Dim, SimplexType};
use crate::tet::{MeshConfig, TetId};

/// Interleaved TM-index of an element together with its level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TmCode {
    code: u128,
    level: u8,
    config: MeshConfig,
}

impl TmCode {
    /// Wraps a raw code; no validation (see [`is_valid_code`]).
    pub fn from_raw(config: MeshConfig, code: u128, level: u8) -> TmCode {
        TmCode {
            code,
            level,
            config,
        }
    }

    #[inline]
    pub fn code(&self) -> u128 {
        self.code
    }

    #[inline]
    pub fn level(&self) -> u8 {
        self.level
    }

    #[inline]
    pub fn config(&self) -> MeshConfig {
        self.config
    }

    /// The `(cube-id, type)` digit pair of level `q`, `1 <= q <= L`.
    pub fn digits(&self, q: u8) -> (u8, u8) {
        let d = self.config.dim().value();
        let shift = pair_shift(self.config, q);
        let pair = ((self.code >> shift) & ((1u128 << (2 * d)) - 1)) as u8;
        (pair >> d, pair & ((1 << d) - 1))
    }
}

impl PartialOrd for TmCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TmCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code
            .cmp(&other.code)
            .then(self.level.cmp(&other.level))
    }
}

/// Base-8 (3D) or base-4 (2D) digits of levels `1..=level`, high first.
impl fmt::Display for TmCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 1..=self.level {
            let (c, b) = self.digits(q);
            write!(f, "{c}{b}")?;
        }
        Ok(())
    }
}

/// Gap-free position of an element among all elements of its level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearIndex {
    pub value: u64,
    pub level: u8,
}

/// Image of a tetrahedron under the 6D cube embedding. Coordinates are
/// ordered `(B0, B1, B2, x, y, z)`, where `Bj` collects bit `j` of every
/// ancestor type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cube6D {
    pub coords: [u32; 6],
    pub level: u8,
}

#[inline(always)]
fn pair_shift(cfg: MeshConfig, q: u8) -> u32 {
    2 * cfg.dim().value() * (cfg.max_level() - q) as u32
}

fn check_inside(cfg: MeshConfig, t: &TetId) -> Result<()> {
    cfg.check_level(t.level)?;
    if t.is_inside_root(cfg) {
        Ok(())
    } else {
        Err(Error::OutsideRoot)
    }
}

/// TM-index of `t`. Runs in `O(level)`: ancestor types are recovered by
/// walking the parent-type table upward from `t`'s own type.
pub fn tm_index(cfg: MeshConfig, t: &TetId) -> Result<TmCode> {
    check_inside(cfg, t)?;
    Ok(tm_index_unchecked(cfg, t))
}

pub(crate) fn tm_index_unchecked(cfg: MeshConfig, t: &TetId) -> TmCode {
    let dim = cfg.dim();
    let d = dim.value();
    let mut code = 0u128;
    let mut b = t.ty.0;
    for q in (1..=t.level).rev() {
        let c = t.cid(cfg, q);
        let pair = ((c as u128) << d) | b as u128;
        code |= pair << pair_shift(cfg, q);
        b = tables::pt(dim, c, b);
    }
    TmCode {
        code,
        level: t.level,
        config: cfg,
    }
}

/// Consecutive index of `t`: the base-`2^d` number whose digits are the
/// local indices of `t`'s ancestors, level 1 most significant.
pub fn linear_id(cfg: MeshConfig, t: &TetId) -> Result<LinearIndex> {
    check_inside(cfg, t)?;
    Ok(LinearIndex {
        value: linear_id_unchecked(cfg, t),
        level: t.level,
    })
}

pub(crate) fn linear_id_unchecked(cfg: MeshConfig, t: &TetId) -> u64 {
    let dim = cfg.dim();
    let d = dim.value();
    let mut value = 0u64;
    let mut b = t.ty.0;
    for q in (1..=t.level).rev() {
        let c = t.cid(cfg, q);
        value |= (tables::iloc(dim, c, b) as u64) << (d * (t.level - q) as u32);
        b = tables::pt(dim, c, b);
    }
    value
}

/// The level-`level` element with consecutive index `index`.
pub fn tet_from_linear_id(cfg: MeshConfig, index: u64, level: u8) -> Result<TetId> {
    cfg.check_level(level)?;
    if index >= cfg.elements_at_level(level) {
        return Err(Error::LinearIndexOutOfRange {
            index,
            level: level as u32,
        });
    }
    Ok(tet_from_linear_id_unchecked(cfg, index, level))
}

pub(crate) fn tet_from_linear_id_unchecked(cfg: MeshConfig, index: u64, level: u8) -> TetId {
    let dim = cfg.dim();
    let d = dim.value();
    let digit_mask = (1u64 << d) - 1;
    let mut t = TetId {
        anchor: [0; 3],
        level,
        ty: SimplexType(0),
    };
    let mut b = 0u8;
    for q in 1..=level {
        let local = ((index >> (d * (level - q) as u32)) & digit_mask) as u8;
        let c = tables::cid_of_local(dim, b, local);
        b = tables::type_of_local(dim, b, local);
        let h = cfg.h(q);
        for (axis, a) in t.anchor.iter_mut().enumerate() {
            if c & (1 << axis) != 0 {
                *a |= h;
            }
        }
    }
    t.ty = SimplexType(b);
    t
}

/// Overwrites the anchor bits of levels `q..=level` of `t`: level `q` gets
/// cube-id `c`, every finer level gets `fill` (0 or all ones).
#[inline]
fn rewrite_tail(cfg: MeshConfig, t: &mut TetId, q: u8, c: u8, fill: bool) {
    let d = cfg.dim().value() as usize;
    let hq = cfg.h(q);
    let lo = cfg.h(t.level);
    // bits of levels q+1..=level
    let finer = hq - lo;
    for (axis, a) in t.anchor.iter_mut().enumerate().take(d) {
        *a &= !(hq | finer);
        if c & (1 << axis) != 0 {
            *a |= hq;
        }
        if fill {
            *a |= finer;
        }
    }
}

/// Next element of the same level along the curve, or `None` at the end.
/// Amortized constant time.
pub fn successor(cfg: MeshConfig, t: &TetId) -> Option<TetId> {
    step(cfg, t, true)
}

/// Previous element of the same level along the curve, or `None` at the
/// start.
pub fn predecessor(cfg: MeshConfig, t: &TetId) -> Option<TetId> {
    step(cfg, t, false)
}

#[inline]
fn step(cfg: MeshConfig, t: &TetId, forward: bool) -> Option<TetId> {
    let dim = cfg.dim();
    let last = dim.num_children() - 1;
    let mut b = t.ty.0;
    let mut q = t.level;
    // climb past the levels whose local index would carry
    while q > 0 {
        let c = t.cid(cfg, q);
        let i = tables::iloc(dim, c, b);
        let pb = tables::pt(dim, c, b);
        let next = if forward {
            (i < last).then(|| i + 1)
        } else {
            i.checked_sub(1)
        };
        if let Some(i) = next {
            let c2 = tables::cid_of_local(dim, pb, i);
            let b2 = tables::type_of_local(dim, pb, i);
            let mut out = *t;
            // below level q the new element continues with local index 0
            // (forward) or 2^d - 1 (backward); both keep the type unchanged
            rewrite_tail(cfg, &mut out, q, c2, !forward);
            out.ty = SimplexType(b2);
            return Some(out);
        }
        b = pb;
        q -= 1;
    }
    None
}

/// Iterator over all elements of a uniform level-`level` refinement in curve
/// order.
pub fn uniform(cfg: MeshConfig, level: u8) -> Result<impl Iterator<Item = TetId>> {
    cfg.check_level(level)?;
    let first = tet_from_linear_id_unchecked(cfg, 0, level);
    Ok(std::iter::successors(Some(first), move |t| {
        successor(cfg, t)
    }))
}

/// Total curve order: by TM-index, ties (an ancestor and its descendants
/// along child 0) broken by ascending level.
pub fn compare(cfg: MeshConfig, a: &TetId, b: &TetId) -> Ordering {
    debug_assert!(a.is_inside_root(cfg) && b.is_inside_root(cfg));
    tm_index_unchecked(cfg, a).cmp(&tm_index_unchecked(cfg, b))
}

/// Whether `m` is the TM-index of some element of level `m.level()`: every
/// type digit is a valid type, consecutive type digits form a parent chain
/// starting at the root type 0, and all digits below the level are zero.
pub fn is_valid_code(m: &TmCode) -> bool {
    let cfg = m.config;
    let dim = cfg.dim();
    let d = dim.value();
    let big_l = cfg.max_level();
    if m.level > big_l {
        return false;
    }
    let total_bits = 2 * d * big_l as u32;
    if total_bits < 128 && m.code >> total_bits != 0 {
        return false;
    }
    let tail_bits = 2 * d * (big_l - m.level) as u32;
    if tail_bits > 0 && m.code & ((1u128 << tail_bits) - 1) != 0 {
        return false;
    }
    let mut prev = 0u8;
    for q in 1..=m.level {
        let (c, b) = m.digits(q);
        if b >= dim.num_types() || tables::pt(dim, c, b) != prev {
            return false;
        }
        prev = b;
    }
    true
}

/// Embedding of a tetrahedron into the 6D cubes of `[0, 2^L]^6`.
pub fn phi(cfg: MeshConfig, t: &TetId) -> Result<Cube6D> {
    if cfg.dim() != Dim::Three {
        return Err(Error::NotThreeDimensional);
    }
    check_inside(cfg, t)?;
    let mut coords = [0u32, 0, 0, t.anchor[0], t.anchor[1], t.anchor[2]];
    let mut b = t.ty.0;
    for q in (1..=t.level).rev() {
        let h = cfg.h(q);
        for (j, bj) in coords.iter_mut().take(3).enumerate() {
            if b & (1 << j) != 0 {
                *bj |= h;
            }
        }
        b = tables::pt(Dim::Three, t.cid(cfg, q), b);
    }
    Ok(Cube6D {
        coords,
        level: t.level,
    })
}
