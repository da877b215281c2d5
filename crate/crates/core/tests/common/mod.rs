//! Exhaustive checks shared by the integration tests and the acceptance
//! harness. Each check returns how many cases it examined and a sample of
//! the failures.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use tetmorton::oracle::{self, GeomSimplex};
use tetmorton::sfc::{self, TmCode};
use tetmorton::tables::{self, Dim, LocalIndex};
use tetmorton::{MeshConfig, TetId};

const SAMPLE: usize = 8;

#[derive(Debug, Default)]
pub struct Check {
    pub cases: u64,
    pub failures: u64,
    pub sample: Vec<String>,
}

impl Check {
    pub fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.sample.len() < SAMPLE {
                self.sample.push(what());
            }
        }
    }

    pub fn merge(&mut self, other: Check) {
        self.cases += other.cases;
        self.failures += other.failures;
        let room = SAMPLE.saturating_sub(self.sample.len());
        self.sample.extend(other.sample.into_iter().take(room));
    }

    pub fn ok(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }

    pub fn assert_ok(&self) {
        assert!(
            self.ok(),
            "{} of {} cases failed: {:#?}",
            self.failures,
            self.cases,
            self.sample
        );
    }
}

pub fn cfg(dim: Dim, max_level: u8) -> MeshConfig {
    MeshConfig::new(dim, max_level).unwrap()
}

/// Oracle geometry of a Tet-id, including elements outside the root.
pub fn geometry(cfg: MeshConfig, t: &TetId) -> GeomSimplex {
    let a = t.anchor.map(|c| c as i32 as i64);
    GeomSimplex::scaled_reference(cfg, a, t.level, t.ty.0)
}

fn coords(cfg: MeshConfig, t: &TetId) -> Vec<[i64; 3]> {
    t.coordinates(cfg).vertices().to_vec()
}

/// Library elements of every level up to `max_level`, in curve order.
pub fn all_levels(cfg: MeshConfig, max_level: u8) -> Vec<TetId> {
    (0..=max_level)
        .flat_map(|l| sfc::uniform(cfg, l).unwrap())
        .collect()
}

pub fn table_regeneration() -> Check {
    let mut c = Check::default();
    for dim in [Dim::Two, Dim::Three] {
        let derived = oracle::derive_tables(dim);
        let transcribed = tables::transcribed(dim);
        c.expect(derived == transcribed, || {
            format!("{dim:?}: derived {derived:?} != transcribed {transcribed:?}")
        });
    }
    c
}

/// Coordinates, classification, cube-ids, parent, children and face
/// neighbors of every element reached by a Bey path of length `<= max_level`.
pub fn element_equivalence(dim: Dim, max_level: u8) -> Check {
    let c = cfg(dim, max_level + 1);
    let root_geom = GeomSimplex::root(c);
    let mut check = Check::default();
    let mut previous: HashMap<Vec<u8>, GeomSimplex> = HashMap::new();
    for level in 0..=max_level {
        let mut current = HashMap::new();
        for e in oracle::uniform_mesh(c, level) {
            let g = e.simplex;
            let t = e
                .path
                .iter()
                .fold(TetId::root(), |t, &i| t.child(c, i).unwrap());
            check.expect(coords(c, &t) == g.vertices(), || {
                format!("coordinates of {t} along {:?}", e.path)
            });
            let class = oracle::classify(c, &g);
            check.expect(
                class.map(|k| (k.anchor, k.ty)) == Some((t.anchor.map(i64::from), t.ty)),
                || format!("anchor/type of {t}: oracle {class:?}"),
            );
            for q in 1..=level {
                let want = oracle::cube_id_of_anchor(c, g.vertices()[0], q);
                let got = t.cube_id(c, q).unwrap().0;
                check.expect(got == want, || {
                    format!("cube_id({t}, {q}) = {got}, oracle {want}")
                });
            }
            if level > 0 {
                let parent_path = &e.path[..e.path.len() - 1];
                let pg = previous[parent_path];
                let p = t.parent(c).unwrap();
                check.expect(coords(c, &p) == pg.vertices(), || format!("parent of {t}"));
            }
            for (i, kid) in oracle::bey_children(&g).iter().enumerate() {
                let k = t.child(c, i as u8).unwrap();
                check.expect(coords(c, &k) == kid.vertices(), || {
                    format!("child {i} of {t}")
                });
                check.expect(k.parent(c).unwrap() == t, || {
                    format!("parent(child {i} of {t})")
                });
            }
            for f in 0..dim.num_faces() {
                let (n, dual) = t.face_neighbor(c, f).unwrap();
                let (og, odual) = oracle::face_neighbor(c, &g, f as usize);
                check.expect(coords(c, &n) == og.vertices(), || {
                    format!("face {f} neighbor of {t} is {n}")
                });
                check.expect(dual as usize == odual, || {
                    format!("dual face of {t} across {f}: {dual}, oracle {odual}")
                });
                let inside = oracle::containment(&og, &root_geom);
                check.expect(n.is_inside_root(c) == inside, || {
                    format!("inside-root of {n} (face {f} of {t}), oracle {inside}")
                });
                check.expect(
                    oracle::shared_vertices(&g, &og) == dim.value() as usize,
                    || format!("{t} and {n} do not share a face"),
                );
                let (back, back_dual) = n.face_neighbor(c, dual).unwrap();
                check.expect(back == t && back_dual == f, || {
                    format!("reciprocity of {t} across face {f}")
                });
            }
            current.insert(e.path, g);
        }
        previous = current;
    }
    check
}

/// `is_descendant_of` against geometric containment. Candidate descendants
/// are all elements of level `<= max_level` plus their face neighbors, which
/// include elements outside the root; candidate ancestors are all elements of
/// level `< max_level`.
pub fn descendant_equivalence(dim: Dim, max_level: u8) -> Check {
    let c = cfg(dim, max_level);
    let elements = all_levels(c, max_level);
    let mut candidates: HashSet<TetId> = elements.iter().copied().collect();
    for t in &elements {
        for f in 0..dim.num_faces() {
            candidates.insert(t.face_neighbor(c, f).unwrap().0);
        }
    }
    let candidates: Vec<(TetId, GeomSimplex)> = candidates
        .into_iter()
        .map(|n| (n, geometry(c, &n)))
        .collect();
    let ancestors: Vec<(TetId, GeomSimplex)> = elements
        .iter()
        .filter(|t| t.level < max_level)
        .map(|t| (*t, geometry(c, t)))
        .collect();
    let mut check = Check::default();
    for (n, ng) in &candidates {
        for (t, tg) in &ancestors {
            if n.level < t.level {
                continue;
            }
            let want = oracle::containment(ng, tg);
            let got = n.is_descendant_of(c, t);
            check.expect(got == want, || {
                format!("is_descendant({n}, {t}) = {got}, containment {want}")
            });
        }
    }
    check
}

/// Both round trips between linear ids and Tet-ids at one level.
pub fn bijection(dim: Dim, level: u8) -> Check {
    let c = cfg(dim, level);
    let n = c.elements_at_level(level);
    let mut check = Check::default();
    let mut seen = HashSet::new();
    for i in 0..n {
        let t = sfc::tet_from_linear_id(c, i, level).unwrap();
        let back = sfc::linear_id(c, &t).unwrap().value;
        check.expect(back == i, || {
            format!("linear_id(tet_from_linear_id({i})) = {back}")
        });
        check.expect(seen.insert(t), || format!("index {i} repeats {t}"));
    }
    for e in oracle::uniform_mesh(c, level) {
        let k = oracle::classify(c, &e.simplex).unwrap();
        let t = TetId::new(c, k.anchor.map(|x| x as u32), level, k.ty).unwrap();
        let i = sfc::linear_id(c, &t).unwrap().value;
        let again = sfc::tet_from_linear_id(c, i, level).unwrap();
        check.expect(again == t, || {
            format!("tet_from_linear_id(linear_id({t})) = {again}")
        });
        check.expect(seen.contains(&t), || {
            format!("{t} never produced from an index")
        });
    }
    check
}

pub fn successor_contract(dim: Dim, level: u8) -> Check {
    let c = cfg(dim, level);
    let mut check = Check::default();
    let mut t = sfc::tet_from_linear_id(c, 0, level).unwrap();
    check.expect(sfc::predecessor(c, &t).is_none(), || {
        "first element has a predecessor".into()
    });
    let mut seen = HashSet::from([t]);
    let mut count = 1u64;
    while let Some(s) = sfc::successor(c, &t) {
        let (a, b) = (
            sfc::linear_id(c, &t).unwrap().value,
            sfc::linear_id(c, &s).unwrap().value,
        );
        check.expect(b == a + 1, || {
            format!("successor of index {a} has index {b}")
        });
        check.expect(seen.insert(s), || format!("{s} visited twice"));
        let p = sfc::predecessor(c, &s);
        check.expect(p == Some(t), || {
            format!("predecessor(successor({t})) = {p:?}")
        });
        count += 1;
        t = s;
    }
    check.expect(count == c.elements_at_level(level), || {
        format!(
            "enumerated {count} elements, expected {}",
            c.elements_at_level(level)
        )
    });
    check
}

fn is_prefix(c: MeshConfig, short: &TmCode, long: &TmCode) -> bool {
    let shift = 2 * c.dim().value() * (c.max_level() - short.level()) as u32;
    let keep = |m: u128| if shift >= 128 { 0 } else { m >> shift };
    keep(short.code()) == keep(long.code())
}

/// Properties (i)-(iii) of the TM-index over all elements of level
/// `<= max_level`, with the descendant relation taken from the oracle.
pub fn index_properties(dim: Dim, max_level: u8) -> Check {
    let c = cfg(dim, max_level);
    let elems: Vec<(TetId, TmCode, GeomSimplex)> = all_levels(c, max_level)
        .into_iter()
        .map(|t| (t, sfc::tm_index(c, &t).unwrap(), geometry(c, &t)))
        .collect();
    let n = elems.len();
    let desc: Vec<Vec<bool>> = (0..n)
        .map(|s| {
            (0..n)
                .map(|t| {
                    elems[s].0.level >= elems[t].0.level
                        && oracle::containment(&elems[s].2, &elems[t].2)
                })
                .collect()
        })
        .collect();
    let mut check = Check::default();
    for ti in 0..n {
        for si in 0..n {
            if ti == si {
                continue;
            }
            let (t, mt, _) = &elems[ti];
            let (s, ms, _) = &elems[si];
            if desc[si][ti] {
                check.expect(mt.code() <= ms.code(), || format!("(i) m({t}) > m({s})"));
            }
            if t.level < s.level {
                let p = is_prefix(c, mt, ms);
                check.expect(p == desc[si][ti], || {
                    format!(
                        "(ii) prefix {p} but descendant {} for {s} / {t}",
                        desc[si][ti]
                    )
                });
            }
            if mt.code() < ms.code() && !desc[si][ti] {
                for (tpi, (tp, mtp, _)) in elems.iter().enumerate() {
                    if desc[tpi][ti] {
                        check.expect(mt.code() <= mtp.code() && mtp.code() < ms.code(), || {
                            format!("(iii) T={t} S={s} T'={tp}")
                        });
                    }
                }
            }
        }
    }
    check
}

/// Bitwise `Z ⋈ Y ⋈ X ⋈ B2 ⋈ B1 ⋈ B0` interleaving of a 6D cube.
pub fn interleave6(coords: [u32; 6], max_level: u8) -> u128 {
    let [b0, b1, b2, x, y, z] = coords;
    let mut code = 0u128;
    for j in (0..max_level as u32).rev() {
        for v in [z, y, x, b2, b1, b0] {
            code = code << 1 | ((v >> j) & 1) as u128;
        }
    }
    code
}

pub fn embedding(max_level: u8) -> Check {
    let c = cfg(Dim::Three, max_level);
    let mut check = Check::default();
    let mut images = HashSet::new();
    for t in all_levels(c, max_level) {
        let q = sfc::phi(c, &t).unwrap();
        let m = sfc::tm_index(c, &t).unwrap().code();
        let z = interleave6(q.coords, max_level);
        check.expect(z == m, || {
            format!("interleave(phi({t})) = {z:o}, m = {m:o}")
        });
        check.expect(images.insert((q.coords, q.level)), || {
            format!("phi not injective at {t}")
        });
        if t.level > 0 {
            let p = sfc::phi(c, &t.parent(c).unwrap()).unwrap();
            let h = 1u32 << (max_level - t.level);
            let is_child = p.level + 1 == q.level
                && (0..6).all(|k| q.coords[k] == p.coords[k] || q.coords[k] == p.coords[k] + h);
            check.expect(is_child, || {
                format!("phi({t}) is not a 6D child of phi(parent)")
            });
        }
    }
    check
}

/// Enumerates every candidate code with `level` digit pairs at `L = level`
/// and counts the ones accepted by `is_valid_code`.
pub fn validity_census(dim: Dim, level: u8) -> (u64, u64) {
    let c = cfg(dim, level);
    let bits = 2 * dim.value() * level as u32;
    let mut valid = 0u64;
    for code in 0..(1u128 << bits) {
        if sfc::is_valid_code(&TmCode::from_raw(c, code, level)) {
            valid += 1;
        }
    }
    (valid, c.elements_at_level(level))
}

/// Children orderings of all parents of each type at one level agree.
pub fn child_order_depends_only_on_type(dim: Dim, level: u8) -> Check {
    let c = cfg(dim, level + 1);
    let mut check = Check::default();
    let mut by_type: HashMap<u8, Vec<u8>> = HashMap::new();
    for t in sfc::uniform(c, level).unwrap() {
        let mut bey: Vec<(u128, u8)> = (0..dim.num_children())
            .map(|i| (sfc::tm_index(c, &t.child(c, i).unwrap()).unwrap().code(), i))
            .collect();
        bey.sort();
        let order: Vec<u8> = bey.into_iter().map(|(_, i)| i).collect();
        let tm: Vec<TetId> = (0..dim.num_children())
            .map(|l| t.tm_child(c, LocalIndex(l)).unwrap())
            .collect();
        let by_bey: Vec<TetId> = order.iter().map(|&i| t.child(c, i).unwrap()).collect();
        check.expect(tm == by_bey, || {
            format!("TM children of {t} are not in TM order")
        });
        let first = by_type.entry(t.ty.0).or_insert_with(|| order.clone());
        check.expect(*first == order, || {
            format!("child order of {t} differs from its type")
        });
    }
    check
}
