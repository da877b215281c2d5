//! Lookup tables for simplex type arithmetic.
//!
//! All tables are transcribed verbatim as constant data, one block per
//! dimension. Row/column conventions follow the published layout: child and
//! local-index tables are indexed `[parent type][child]`, the parent-type
//! table `[cube-id][type]`, and the face tables `[type][face]`.
//!
//! The checked accessors validate their arguments against the active
//! dimension once and then index the constant arrays directly. The
//! `oracle` module regenerates every table from explicit geometry and the
//! test suite compares both bit for bit.

use crate::error::{Error, Result};

/// Spatial dimension of the mesh.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn from_u32(d: u32) -> Result<Dim> {
        match d {
            2 => Ok(Dim::Two),
            3 => Ok(Dim::Three),
            _ => Err(Error::InvalidDimension(d)),
        }
    }

    #[inline]
    pub const fn value(self) -> u32 {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }

    /// Number of children of a refined simplex, `2^d`.
    #[inline]
    pub const fn num_children(self) -> u8 {
        match self {
            Dim::Two => 4,
            Dim::Three => 8,
        }
    }

    /// Number of simplex types, `d!`.
    #[inline]
    pub const fn num_types(self) -> u8 {
        match self {
            Dim::Two => 2,
            Dim::Three => 6,
        }
    }

    /// Number of faces (and vertices) of a simplex, `d + 1`.
    #[inline]
    pub const fn num_faces(self) -> u8 {
        match self {
            Dim::Two => 3,
            Dim::Three => 4,
        }
    }

    /// Size in bytes of a serialized [`crate::TetId`].
    #[inline]
    pub const fn serialized_len(self) -> usize {
        4 * self.value() as usize + 2
    }

    /// Largest maximum level for which a TM code fits in 128 bits.
    #[inline]
    pub const fn level_cap(self) -> u8 {
        match self {
            Dim::Two => 30,
            Dim::Three => 21,
        }
    }
}

/// Which of the `d!` cube-tiling simplices an element is a scaled copy of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SimplexType(pub u8);

/// Position of a cube among the `2^d` children of its parent cube, with bits
/// `(z y x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CubeId(pub u8);

/// Position of a simplex among its siblings in TM order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LocalIndex(pub u8);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    #[inline]
    pub const fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub const fn from_index(i: usize) -> Axis {
        match i {
            0 => Axis::X,
            1 => Axis::Y,
            _ => Axis::Z,
        }
    }
}

/// Anchor displacement of a face-neighbor, in units of the element size `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AxisStep {
    pub axis: Axis,
    /// `+1` or `-1`.
    pub sign: i8,
}

/// One entry of the same-level face-neighbor tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FaceNeighborData {
    pub neighbor_type: SimplexType,
    pub offset: Option<AxisStep>,
    /// Face of the neighbor across which the original element lies.
    pub dual_face: u8,
}

// ---------------------------------------------------------------------------
// Constant data
// ---------------------------------------------------------------------------

/// Types of the Bey children, `[parent type][bey child]`.
pub const CHILD_TYPE_2D: [[u8; 4]; 2] = [[0, 0, 0, 1], [1, 1, 1, 0]];
pub const CHILD_TYPE_3D: [[u8; 8]; 6] = [
    [0, 0, 0, 0, 4, 5, 2, 1],
    [1, 1, 1, 1, 3, 2, 5, 0],
    [2, 2, 2, 2, 0, 1, 4, 3],
    [3, 3, 3, 3, 5, 4, 1, 2],
    [4, 4, 4, 4, 2, 3, 0, 5],
    [5, 5, 5, 5, 1, 0, 3, 4],
];

/// TM position of each Bey child, `[parent type][bey child]`.
pub const LOCAL_INDEX_2D: [[u8; 4]; 2] = [[0, 1, 3, 2], [0, 2, 3, 1]];
pub const LOCAL_INDEX_3D: [[u8; 8]; 6] = [
    [0, 1, 4, 7, 2, 3, 6, 5],
    [0, 1, 5, 7, 3, 2, 6, 4],
    [0, 3, 4, 7, 1, 2, 6, 5],
    [0, 1, 6, 7, 3, 2, 4, 5],
    [0, 3, 5, 7, 1, 2, 4, 6],
    [0, 3, 6, 7, 2, 1, 4, 5],
];

/// Inverse permutations of the local-index rows, `[parent type][local]`.
pub const BEY_FROM_LOCAL_2D: [[u8; 4]; 2] = invert_rows(LOCAL_INDEX_2D);
pub const BEY_FROM_LOCAL_3D: [[u8; 8]; 6] = invert_rows(LOCAL_INDEX_3D);

/// Parent type, `[cube-id][type]`.
pub const PARENT_TYPE_2D: [[u8; 2]; 4] = [[0, 1], [0, 0], [1, 1], [0, 1]];
pub const PARENT_TYPE_3D: [[u8; 6]; 8] = [
    [0, 1, 2, 3, 4, 5],
    [0, 1, 1, 1, 0, 0],
    [2, 2, 2, 3, 3, 3],
    [1, 1, 2, 2, 2, 1],
    [5, 5, 4, 4, 4, 5],
    [0, 0, 0, 5, 5, 5],
    [4, 3, 3, 3, 4, 4],
    [0, 1, 2, 3, 4, 5],
];

/// Local index from an element's own cube-id and type, `[type][cube-id]`.
pub const LOCAL_FROM_CID_TYPE_2D: [[u8; 4]; 2] = [[0, 1, 1, 3], [0, 2, 2, 3]];
pub const LOCAL_FROM_CID_TYPE_3D: [[u8; 8]; 6] = [
    [0, 1, 1, 4, 1, 4, 4, 7],
    [0, 1, 2, 5, 2, 5, 4, 7],
    [0, 2, 3, 4, 1, 6, 5, 7],
    [0, 3, 1, 5, 2, 4, 6, 7],
    [0, 2, 2, 6, 3, 5, 5, 7],
    [0, 3, 3, 6, 3, 6, 6, 7],
];

/// Cube-id of the TM child, `[parent type][local]`.
pub const CID_FROM_LOCAL_2D: [[u8; 4]; 2] = [[0, 1, 1, 3], [0, 2, 2, 3]];
pub const CID_FROM_LOCAL_3D: [[u8; 8]; 6] = [
    [0, 1, 1, 1, 5, 5, 5, 7],
    [0, 1, 1, 1, 3, 3, 3, 7],
    [0, 2, 2, 2, 3, 3, 3, 7],
    [0, 2, 2, 2, 6, 6, 6, 7],
    [0, 4, 4, 4, 6, 6, 6, 7],
    [0, 4, 4, 4, 5, 5, 5, 7],
];

/// Type of the TM child, `[parent type][local]`.
pub const TYPE_FROM_LOCAL_2D: [[u8; 4]; 2] = [[0, 0, 1, 0], [1, 0, 1, 1]];
pub const TYPE_FROM_LOCAL_3D: [[u8; 8]; 6] = [
    [0, 0, 4, 5, 0, 1, 2, 0],
    [1, 1, 2, 3, 0, 1, 5, 1],
    [2, 0, 1, 2, 2, 3, 4, 2],
    [3, 3, 4, 5, 1, 2, 3, 3],
    [4, 2, 3, 4, 0, 4, 5, 4],
    [5, 0, 1, 5, 3, 4, 5, 5],
];

const fn fnd(ty: u8, step: i8, dual: u8) -> FaceNeighborData {
    // step encodes +-(axis + 1); 0 means the anchor is unchanged
    let offset = if step == 0 {
        None
    } else {
        let axis = Axis::from_index(step.unsigned_abs() as usize - 1);
        Some(AxisStep {
            axis,
            sign: if step > 0 { 1 } else { -1 },
        })
    };
    FaceNeighborData {
        neighbor_type: SimplexType(ty),
        offset,
        dual_face: dual,
    }
}

const X: i8 = 1;
const Y: i8 = 2;
const Z: i8 = 3;

/// Same-level face neighbors in 2D, `[type][face]`.
pub const FACE_NEIGHBOR_2D: [[FaceNeighborData; 3]; 2] = [
    [fnd(1, X, 2), fnd(1, 0, 1), fnd(1, -Y, 0)],
    [fnd(0, Y, 2), fnd(0, 0, 1), fnd(0, -X, 0)],
];

/// Same-level face neighbors in 3D, `[type][face]`.
pub const FACE_NEIGHBOR_3D: [[FaceNeighborData; 4]; 6] = [
    [fnd(4, X, 3), fnd(5, 0, 1), fnd(1, 0, 2), fnd(2, -Y, 0)],
    [fnd(3, X, 3), fnd(2, 0, 1), fnd(0, 0, 2), fnd(5, -Z, 0)],
    [fnd(0, Y, 3), fnd(1, 0, 1), fnd(3, 0, 2), fnd(4, -Z, 0)],
    [fnd(5, Y, 3), fnd(4, 0, 1), fnd(2, 0, 2), fnd(1, -X, 0)],
    [fnd(2, Z, 3), fnd(3, 0, 1), fnd(5, 0, 2), fnd(0, -X, 0)],
    [fnd(1, Z, 3), fnd(0, 0, 1), fnd(4, 0, 2), fnd(3, -Y, 0)],
];

/// Axis roles `(x_i, x_j, x_k)` of the containment test, by ancestor type.
/// In 2D only `x_i` and `x_j` are used.
pub const DESCENDANT_AXES_2D: [[usize; 3]; 2] = [[0, 1, 2], [1, 0, 2]];
pub const DESCENDANT_AXES_3D: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 2, 0],
    [1, 0, 2],
    [2, 0, 1],
    [2, 1, 0],
];

const fn invert_rows<const N: usize, const R: usize>(rows: [[u8; N]; R]) -> [[u8; N]; R] {
    let mut out = [[0u8; N]; R];
    let mut r = 0;
    while r < R {
        let mut i = 0;
        while i < N {
            out[r][rows[r][i] as usize] = i as u8;
            i += 1;
        }
        r += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// Unchecked lookups for hot paths. Callers guarantee in-range arguments.
// ---------------------------------------------------------------------------

#[inline(always)]
pub(crate) fn ct(dim: Dim, b: u8, i: u8) -> u8 {
    match dim {
        Dim::Two => CHILD_TYPE_2D[b as usize][i as usize],
        Dim::Three => CHILD_TYPE_3D[b as usize][i as usize],
    }
}

#[inline(always)]
pub(crate) fn sigma(dim: Dim, b: u8, i: u8) -> u8 {
    match dim {
        Dim::Two => LOCAL_INDEX_2D[b as usize][i as usize],
        Dim::Three => LOCAL_INDEX_3D[b as usize][i as usize],
    }
}

#[inline(always)]
pub(crate) fn sigma_inv(dim: Dim, b: u8, local: u8) -> u8 {
    match dim {
        Dim::Two => BEY_FROM_LOCAL_2D[b as usize][local as usize],
        Dim::Three => BEY_FROM_LOCAL_3D[b as usize][local as usize],
    }
}

#[inline(always)]
pub(crate) fn pt(dim: Dim, c: u8, b: u8) -> u8 {
    match dim {
        Dim::Two => PARENT_TYPE_2D[c as usize][b as usize],
        Dim::Three => PARENT_TYPE_3D[c as usize][b as usize],
    }
}

#[inline(always)]
pub(crate) fn iloc(dim: Dim, c: u8, b: u8) -> u8 {
    match dim {
        Dim::Two => LOCAL_FROM_CID_TYPE_2D[b as usize][c as usize],
        Dim::Three => LOCAL_FROM_CID_TYPE_3D[b as usize][c as usize],
    }
}

#[inline(always)]
pub(crate) fn cid_of_local(dim: Dim, pb: u8, local: u8) -> u8 {
    match dim {
        Dim::Two => CID_FROM_LOCAL_2D[pb as usize][local as usize],
        Dim::Three => CID_FROM_LOCAL_3D[pb as usize][local as usize],
    }
}

#[inline(always)]
pub(crate) fn type_of_local(dim: Dim, pb: u8, local: u8) -> u8 {
    match dim {
        Dim::Two => TYPE_FROM_LOCAL_2D[pb as usize][local as usize],
        Dim::Three => TYPE_FROM_LOCAL_3D[pb as usize][local as usize],
    }
}

#[inline(always)]
pub(crate) fn face_data(dim: Dim, b: u8, f: u8) -> FaceNeighborData {
    match dim {
        Dim::Two => FACE_NEIGHBOR_2D[b as usize][f as usize],
        Dim::Three => FACE_NEIGHBOR_3D[b as usize][f as usize],
    }
}

#[inline(always)]
pub(crate) fn axes(dim: Dim, b: u8) -> [usize; 3] {
    match dim {
        Dim::Two => DESCENDANT_AXES_2D[b as usize],
        Dim::Three => DESCENDANT_AXES_3D[b as usize],
    }
}

// ---------------------------------------------------------------------------
// Checked accessors
// ---------------------------------------------------------------------------

fn check_type(dim: Dim, b: SimplexType) -> Result<u8> {
    if b.0 < dim.num_types() {
        Ok(b.0)
    } else {
        Err(Error::TypeOutOfRange(b.0))
    }
}

fn check_child(dim: Dim, i: u8) -> Result<u8> {
    if i < dim.num_children() {
        Ok(i)
    } else {
        Err(Error::ChildOutOfRange(i))
    }
}

fn check_cid(dim: Dim, c: CubeId) -> Result<u8> {
    if c.0 < dim.num_children() {
        Ok(c.0)
    } else {
        Err(Error::CubeIdOutOfRange(c.0))
    }
}

/// Type of Bey child `bey_child` of a simplex of type `parent_type`.
pub fn child_type(dim: Dim, parent_type: SimplexType, bey_child: u8) -> Result<SimplexType> {
    let b = check_type(dim, parent_type)?;
    let i = check_child(dim, bey_child)?;
    Ok(SimplexType(ct(dim, b, i)))
}

/// TM position `sigma_b(i)` of Bey child `i`.
pub fn local_index(dim: Dim, parent_type: SimplexType, bey_child: u8) -> Result<LocalIndex> {
    let b = check_type(dim, parent_type)?;
    let i = check_child(dim, bey_child)?;
    Ok(LocalIndex(sigma(dim, b, i)))
}

/// Bey child number of the TM child at `local`; inverse of [`local_index`].
pub fn bey_child_from_local(dim: Dim, parent_type: SimplexType, local: LocalIndex) -> Result<u8> {
    let b = check_type(dim, parent_type)?;
    let l = check_child(dim, local.0)?;
    Ok(sigma_inv(dim, b, l))
}

pub fn parent_type(dim: Dim, cube_id: CubeId, ty: SimplexType) -> Result<SimplexType> {
    let c = check_cid(dim, cube_id)?;
    let b = check_type(dim, ty)?;
    Ok(SimplexType(pt(dim, c, b)))
}

pub fn local_index_from_cid_type(dim: Dim, cube_id: CubeId, ty: SimplexType) -> Result<LocalIndex> {
    let c = check_cid(dim, cube_id)?;
    let b = check_type(dim, ty)?;
    Ok(LocalIndex(iloc(dim, c, b)))
}

pub fn cid_from_parenttype_local(
    dim: Dim,
    parent_type: SimplexType,
    local: LocalIndex,
) -> Result<CubeId> {
    let b = check_type(dim, parent_type)?;
    let l = check_child(dim, local.0)?;
    Ok(CubeId(cid_of_local(dim, b, l)))
}

pub fn type_from_parenttype_local(
    dim: Dim,
    parent_type: SimplexType,
    local: LocalIndex,
) -> Result<SimplexType> {
    let b = check_type(dim, parent_type)?;
    let l = check_child(dim, local.0)?;
    Ok(SimplexType(type_of_local(dim, b, l)))
}

pub fn face_neighbor_data(dim: Dim, ty: SimplexType, face: u8) -> Result<FaceNeighborData> {
    let b = check_type(dim, ty)?;
    if face >= dim.num_faces() {
        return Err(Error::FaceOutOfRange(face));
    }
    Ok(face_data(dim, b, face))
}

/// Axis roles `(x_i, x_j, x_k)` used when testing containment in an
/// ancestor of type `ty`.
pub fn descendant_axes(dim: Dim, ty: SimplexType) -> Result<[Axis; 3]> {
    let b = check_type(dim, ty)?;
    Ok(axes(dim, b).map(Axis::from_index))
}

/// Every table for one dimension as plain nested vectors, so transcribed and
/// regenerated tables can be compared with `==`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSet {
    /// `[parent type][bey child]`
    pub child_type: Vec<Vec<u8>>,
    /// `[parent type][bey child]`
    pub local_index: Vec<Vec<u8>>,
    /// `[parent type][local]`
    pub bey_from_local: Vec<Vec<u8>>,
    /// `[cube-id][type]`
    pub parent_type: Vec<Vec<u8>>,
    /// `[type][cube-id]`
    pub local_from_cid_type: Vec<Vec<u8>>,
    /// `[parent type][local]`
    pub cid_from_local: Vec<Vec<u8>>,
    /// `[parent type][local]`
    pub type_from_local: Vec<Vec<u8>>,
    /// `[type][face]`
    pub face_neighbor: Vec<Vec<FaceNeighborData>>,
}

fn rows<T: Copy, const N: usize>(t: &[[T; N]]) -> Vec<Vec<T>> {
    t.iter().map(|r| r.to_vec()).collect()
}

/// The transcribed constant tables for `dim`.
pub fn transcribed(dim: Dim) -> TableSet {
    match dim {
        Dim::Two => TableSet {
            child_type: rows(&CHILD_TYPE_2D),
            local_index: rows(&LOCAL_INDEX_2D),
            bey_from_local: rows(&BEY_FROM_LOCAL_2D),
            parent_type: rows(&PARENT_TYPE_2D),
            local_from_cid_type: rows(&LOCAL_FROM_CID_TYPE_2D),
            cid_from_local: rows(&CID_FROM_LOCAL_2D),
            type_from_local: rows(&TYPE_FROM_LOCAL_2D),
            face_neighbor: rows(&FACE_NEIGHBOR_2D),
        },
        Dim::Three => TableSet {
            child_type: rows(&CHILD_TYPE_3D),
            local_index: rows(&LOCAL_INDEX_3D),
            bey_from_local: rows(&BEY_FROM_LOCAL_3D),
            parent_type: rows(&PARENT_TYPE_3D),
            local_from_cid_type: rows(&LOCAL_FROM_CID_TYPE_3D),
            cid_from_local: rows(&CID_FROM_LOCAL_3D),
            type_from_local: rows(&TYPE_FROM_LOCAL_3D),
            face_neighbor: rows(&FACE_NEIGHBOR_3D),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIMS: [Dim; 2] = [Dim::Two, Dim::Three];

    #[test]
    fn child_type_examples() {
        let d3 = Dim::Three;
        assert_eq!(child_type(d3, SimplexType(0), 4), Ok(SimplexType(4)));
        assert_eq!(child_type(d3, SimplexType(0), 7), Ok(SimplexType(1)));
        assert_eq!(child_type(d3, SimplexType(2), 2), Ok(SimplexType(2)));
        assert_eq!(child_type(Dim::Two, SimplexType(1), 3), Ok(SimplexType(0)));
        assert_eq!(
            child_type(d3, SimplexType(6), 0),
            Err(Error::TypeOutOfRange(6))
        );
        assert_eq!(
            child_type(Dim::Two, SimplexType(0), 4),
            Err(Error::ChildOutOfRange(4))
        );
    }

    #[test]
    fn corner_children_keep_type() {
        for dim in DIMS {
            for b in 0..dim.num_types() {
                for i in 0..dim.value() as u8 + 1 {
                    assert_eq!(ct(dim, b, i), b);
                }
            }
        }
    }

    #[test]
    fn local_index_examples() {
        let d3 = Dim::Three;
        assert_eq!(local_index(d3, SimplexType(0), 2), Ok(LocalIndex(4)));
        assert_eq!(local_index(d3, SimplexType(0), 7), Ok(LocalIndex(5)));
        let row: Vec<u8> = (0..4)
            .map(|i| local_index(Dim::Two, SimplexType(1), i).unwrap().0)
            .collect();
        assert_eq!(row, [0, 2, 3, 1]);
        for b in 0..6 {
            assert_eq!(local_index(d3, SimplexType(b), 0), Ok(LocalIndex(0)));
        }
        assert!(local_index(d3, SimplexType(0), 8).is_err());
    }

    #[test]
    fn bey_child_from_local_examples() {
        assert_eq!(
            bey_child_from_local(Dim::Three, SimplexType(0), LocalIndex(4)),
            Ok(2)
        );
        assert_eq!(
            bey_child_from_local(Dim::Two, SimplexType(0), LocalIndex(3)),
            Ok(2)
        );
        for dim in DIMS {
            for b in 0..dim.num_types() {
                assert_eq!(
                    bey_child_from_local(dim, SimplexType(b), LocalIndex(0)),
                    Ok(0)
                );
            }
        }
        assert!(bey_child_from_local(Dim::Two, SimplexType(2), LocalIndex(0)).is_err());
    }

    #[test]
    fn parent_type_examples() {
        let d3 = Dim::Three;
        assert_eq!(
            parent_type(d3, CubeId(3), SimplexType(3)),
            Ok(SimplexType(2))
        );
        assert_eq!(
            parent_type(d3, CubeId(5), SimplexType(4)),
            Ok(SimplexType(5))
        );
        for b in 0..6 {
            assert_eq!(
                parent_type(d3, CubeId(0), SimplexType(b)),
                Ok(SimplexType(b))
            );
            assert_eq!(
                parent_type(d3, CubeId(7), SimplexType(b)),
                Ok(SimplexType(b))
            );
        }
        assert_eq!(
            parent_type(d3, CubeId(8), SimplexType(0)),
            Err(Error::CubeIdOutOfRange(8))
        );
    }

    #[test]
    fn local_index_from_cid_type_examples() {
        let d3 = Dim::Three;
        assert_eq!(
            local_index_from_cid_type(d3, CubeId(4), SimplexType(2)),
            Ok(LocalIndex(1))
        );
        for b in 0..6 {
            assert_eq!(
                local_index_from_cid_type(d3, CubeId(7), SimplexType(b)),
                Ok(LocalIndex(7))
            );
        }
        assert_eq!(
            local_index_from_cid_type(Dim::Two, CubeId(1), SimplexType(1)),
            Ok(LocalIndex(2))
        );
    }

    #[test]
    fn cid_and_type_from_local_examples() {
        let d3 = Dim::Three;
        assert_eq!(
            cid_from_parenttype_local(d3, SimplexType(0), LocalIndex(4)),
            Ok(CubeId(5))
        );
        for b in 0..6 {
            assert_eq!(
                cid_from_parenttype_local(d3, SimplexType(b), LocalIndex(0)),
                Ok(CubeId(0))
            );
            assert_eq!(
                cid_from_parenttype_local(d3, SimplexType(b), LocalIndex(7)),
                Ok(CubeId(7))
            );
        }
        assert_eq!(
            cid_from_parenttype_local(Dim::Two, SimplexType(1), LocalIndex(1)),
            Ok(CubeId(2))
        );
        assert_eq!(
            type_from_parenttype_local(d3, SimplexType(0), LocalIndex(2)),
            Ok(SimplexType(4))
        );
        assert_eq!(
            type_from_parenttype_local(d3, SimplexType(5), LocalIndex(4)),
            Ok(SimplexType(3))
        );
        assert_eq!(
            type_from_parenttype_local(Dim::Two, SimplexType(0), LocalIndex(2)),
            Ok(SimplexType(1))
        );
    }

    #[test]
    fn face_neighbor_data_examples() {
        let d3 = Dim::Three;
        let e = face_neighbor_data(d3, SimplexType(0), 0).unwrap();
        assert_eq!(e.neighbor_type, SimplexType(4));
        assert_eq!(
            e.offset,
            Some(AxisStep {
                axis: Axis::X,
                sign: 1
            })
        );
        assert_eq!(e.dual_face, 3);
        let e = face_neighbor_data(d3, SimplexType(5), 3).unwrap();
        assert_eq!(e.neighbor_type, SimplexType(3));
        assert_eq!(
            e.offset,
            Some(AxisStep {
                axis: Axis::Y,
                sign: -1
            })
        );
        assert_eq!(e.dual_face, 0);
        let e = face_neighbor_data(Dim::Two, SimplexType(0), 2).unwrap();
        assert_eq!(e.neighbor_type, SimplexType(1));
        assert_eq!(
            e.offset,
            Some(AxisStep {
                axis: Axis::Y,
                sign: -1
            })
        );
        assert_eq!(e.dual_face, 0);
        assert_eq!(
            face_neighbor_data(d3, SimplexType(0), 4),
            Err(Error::FaceOutOfRange(4))
        );
    }

    #[test]
    fn face_2d_closed_forms() {
        for b in 0..2u8 {
            for f in 0..3u8 {
                let e = face_data(Dim::Two, b, f);
                assert_eq!(e.neighbor_type.0, 1 - b);
                assert_eq!(e.dual_face, 2 - f);
            }
        }
    }

    #[test]
    fn local_index_rows_are_permutations() {
        for dim in DIMS {
            for b in 0..dim.num_types() {
                let mut seen = vec![false; dim.num_children() as usize];
                for i in 0..dim.num_children() {
                    let l = sigma(dim, b, i);
                    assert!(!seen[l as usize]);
                    seen[l as usize] = true;
                    assert_eq!(sigma_inv(dim, b, l), i);
                }
            }
        }
    }

    #[test]
    fn parent_type_of_tm_children_round_trips() {
        for dim in DIMS {
            for pb in 0..dim.num_types() {
                for j in 0..dim.num_children() {
                    let c = cid_of_local(dim, pb, j);
                    let t = type_of_local(dim, pb, j);
                    assert_eq!(pt(dim, c, t), pb);
                    assert_eq!(iloc(dim, c, t), j);
                }
            }
        }
    }

    #[test]
    fn face_tables_are_reciprocal() {
        for dim in DIMS {
            for b in 0..dim.num_types() {
                for f in 0..dim.num_faces() {
                    let e = face_data(dim, b, f);
                    let back = face_data(dim, e.neighbor_type.0, e.dual_face);
                    assert_eq!(back.neighbor_type.0, b);
                    assert_eq!(back.dual_face, f);
                    match (e.offset, back.offset) {
                        (None, None) => {}
                        (Some(a), Some(r)) => {
                            assert_eq!(a.axis, r.axis);
                            assert_eq!(a.sign, -r.sign);
                        }
                        _ => panic!("offset mismatch for type {b} face {f}"),
                    }
                }
            }
        }
    }
}
