//! Forest of simplicial trees: partitioned uniform construction and
//! callback-driven recursive adaptation.
//!
//! Each tree of the coarse mesh is an independent copy of the root simplex.
//! Elements are stored per tree in curve order; the global order is
//! `(tree id, curve order)`. Ranks are logical: a [`Forest`] holds the slice
//! of the global element sequence owned by rank `p` of `P`, and building it
//! needs no communication.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::sfc;
use crate::tables::Dim;
use crate::tet::{MeshConfig, TetId};

/// Elements generated per task in parallel uniform construction. Each task
/// starts from one `O(level)` index lookup and continues with successors.
const NEW_CHUNK: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoarseMesh {
    dim: Dim,
    num_trees: u32,
}

impl CoarseMesh {
    pub fn new(dim: Dim, num_trees: u32) -> Result<CoarseMesh> {
        if num_trees == 0 {
            return Err(Error::EmptyCoarseMesh);
        }
        Ok(CoarseMesh { dim, num_trees })
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn num_trees(&self) -> u32 {
        self.num_trees
    }
}

/// The process-local leaves of one tree, in curve order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    pub id: u32,
    pub elements: Vec<TetId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest {
    coarse: CoarseMesh,
    config: MeshConfig,
    rank: u32,
    rank_count: u32,
    trees: Vec<Tree>,
}

/// Counters collected during one adapt call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AdaptStats {
    pub callbacks: u64,
    pub refined: u64,
    pub coarsened: u64,
    /// Refine verdicts dropped because the element is at the maximum level.
    pub clamped_refine: u64,
    /// Coarsen verdicts dropped because the element is a tree root.
    pub clamped_coarsen: u64,
}

impl AdaptStats {
    fn merge(mut self, o: AdaptStats) -> AdaptStats {
        self.callbacks += o.callbacks;
        self.refined += o.refined;
        self.coarsened += o.coarsened;
        self.clamped_refine += o.clamped_refine;
        self.clamped_coarsen += o.clamped_coarsen;
        self
    }

    pub fn clamped(&self) -> u64 {
        self.clamped_refine + self.clamped_coarsen
    }
}

/// Violations found by [`Forest::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub elements: u64,
    pub malformed: u64,
    pub outside_root: u64,
    pub invalid_code: u64,
    pub unsorted: u64,
    pub not_leaf: u64,
}

impl ValidationReport {
    pub fn violations(&self) -> u64 {
        self.malformed + self.outside_root + self.invalid_code + self.unsorted + self.not_leaf
    }

    pub fn is_ok(&self) -> bool {
        self.violations() == 0
    }

    fn merge(mut self, o: ValidationReport) -> ValidationReport {
        self.elements += o.elements;
        self.malformed += o.malformed;
        self.outside_root += o.outside_root;
        self.invalid_code += o.invalid_code;
        self.unsorted += o.unsorted;
        self.not_leaf += o.not_leaf;
        self
    }
}

/// Whether `elements` are the `2^d` TM-children of one parent, in order.
pub fn family_check(cfg: MeshConfig, elements: &[TetId]) -> bool {
    let n = cfg.dim().num_children() as usize;
    if elements.len() != n {
        return false;
    }
    let first = &elements[0];
    if first.level == 0 {
        return false;
    }
    let parent = first.parent_unchecked(cfg);
    elements.iter().enumerate().all(|(j, e)| {
        e.level == first.level
            && e.local_index(cfg).0 as usize == j
            && e.parent_unchecked(cfg) == parent
    })
}

impl Forest {
    /// Partitioned uniform level-`level` forest for rank `rank` of `ranks`.
    pub fn new_uniform(
        coarse: CoarseMesh,
        config: MeshConfig,
        level: u8,
        ranks: u32,
        rank: u32,
    ) -> Result<Forest> {
        Self::new_uniform_with(Execution::default(), coarse, config, level, ranks, rank)
    }

    pub fn new_uniform_with(
        exec: Execution,
        coarse: CoarseMesh,
        config: MeshConfig,
        level: u8,
        ranks: u32,
        rank: u32,
    ) -> Result<Forest> {
        if coarse.dim != config.dim() {
            return Err(Error::InvalidDimension(config.dim().value()));
        }
        config.check_level(level)?;
        if rank >= ranks {
            return Err(Error::RankOutOfRange { rank, ranks });
        }
        let per_tree = config.elements_at_level(level) as u128;
        let total = per_tree * coarse.num_trees as u128;
        let g_first = total * rank as u128 / ranks as u128;
        let g_end = total * (rank as u128 + 1) / ranks as u128;

        let mut trees = Vec::new();
        if g_end > g_first {
            let g_last = g_end - 1;
            let k_first = (g_first / per_tree) as u32;
            let k_last = (g_last / per_tree) as u32;
            for k in k_first..=k_last {
                let base = per_tree * k as u128;
                let e_first = if k == k_first { g_first - base } else { 0 };
                let e_last = if k == k_last {
                    g_last - base
                } else {
                    per_tree - 1
                };
                let elements = build_range(exec, config, level, e_first as u64, e_last as u64);
                trees.push(Tree { id: k, elements });
            }
        }
        Ok(Forest {
            coarse,
            config,
            rank,
            rank_count: ranks,
            trees,
        })
    }

    /// Assembles a forest from explicit tree arrays (e.g. a parsed dump).
    /// The arrays are taken as given; use [`Forest::validate`] to check them.
    pub fn from_trees(
        coarse: CoarseMesh,
        config: MeshConfig,
        ranks: u32,
        rank: u32,
        trees: Vec<Tree>,
    ) -> Result<Forest> {
        if coarse.dim != config.dim() {
            return Err(Error::InvalidDimension(config.dim().value()));
        }
        if rank >= ranks {
            return Err(Error::RankOutOfRange { rank, ranks });
        }
        Ok(Forest {
            coarse,
            config,
            rank,
            rank_count: ranks,
            trees,
        })
    }

    pub fn coarse(&self) -> CoarseMesh {
        self.coarse
    }

    pub fn config(&self) -> MeshConfig {
        self.config
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn rank_count(&self) -> u32 {
        self.rank_count
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn element_count(&self) -> u64 {
        self.trees.iter().map(|t| t.elements.len() as u64).sum()
    }

    /// All local elements in global `(tree, curve)` order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &TetId)> + '_ {
        self.trees
            .iter()
            .flat_map(|t| t.elements.iter().map(move |e| (t.id, e)))
    }

    pub fn for_each<F: FnMut(u32, &TetId)>(&self, mut visitor: F) {
        for (id, e) in self.iter() {
            visitor(id, e);
        }
    }

    /// Refines and coarsens according to `callback`, returning the new forest.
    ///
    /// The callback receives the tree id and either a single element or a
    /// complete family of `2^d` siblings. A positive verdict refines the first
    /// element, a negative verdict on a family replaces it by its parent, zero
    /// keeps the first element. With `recursive`, children created by a
    /// refinement are offered to the callback again, and every coarsening is
    /// followed by a check whether the output now ends in a family that
    /// contains coarsened elements. Elements created by refinement are never
    /// coarsened in the same call and vice versa.
    pub fn adapt<F>(&self, recursive: bool, callback: F) -> (Forest, AdaptStats)
    where
        F: Fn(u32, &[TetId]) -> i32 + Sync + Send,
    {
        self.adapt_with(Execution::default(), recursive, callback)
    }

    pub fn adapt_with<F>(
        &self,
        exec: Execution,
        recursive: bool,
        callback: F,
    ) -> (Forest, AdaptStats)
    where
        F: Fn(u32, &[TetId]) -> i32 + Sync + Send,
    {
        let cfg = self.config;
        let results = par::map_collect(exec, &self.trees, |tree| {
            let mut stats = AdaptStats::default();
            let elements = adapt_tree(
                cfg,
                tree.id,
                &tree.elements,
                recursive,
                &callback,
                &mut stats,
            );
            (
                Tree {
                    id: tree.id,
                    elements,
                },
                stats,
            )
        });
        let mut stats = AdaptStats::default();
        let mut trees = Vec::with_capacity(results.len());
        for (tree, s) in results {
            stats = stats.merge(s);
            trees.push(tree);
        }
        let forest = Forest {
            trees,
            ..self.clone_header()
        };
        (forest, stats)
    }

    fn clone_header(&self) -> Forest {
        Forest {
            coarse: self.coarse,
            config: self.config,
            rank: self.rank,
            rank_count: self.rank_count,
            trees: Vec::new(),
        }
    }

    /// Checks every element (well-formed, inside the root, valid TM-index) and
    /// every consecutive pair (strictly increasing, not ancestor of the next).
    pub fn validate(&self) -> ValidationReport {
        self.validate_with(Execution::default())
    }

    pub fn validate_with(&self, exec: Execution) -> ValidationReport {
        let cfg = self.config;
        let per_tree = par::map_collect(exec, &self.trees, |tree| validate_tree(cfg, tree));
        let mut report = per_tree
            .into_iter()
            .fold(ValidationReport::default(), ValidationReport::merge);
        let mut ids = self.trees.iter().map(|t| t.id);
        if let Some(mut prev) = ids.next() {
            for id in ids {
                if id <= prev {
                    report.unsorted += 1;
                }
                prev = id;
            }
        }
        for t in &self.trees {
            if t.id >= self.coarse.num_trees {
                report.malformed += 1;
            }
        }
        report
    }
}

fn build_range(exec: Execution, cfg: MeshConfig, level: u8, first: u64, last: u64) -> Vec<TetId> {
    let count = (last - first + 1) as usize;
    if !exec.is_parallel() {
        let mut out = Vec::with_capacity(count);
        let mut t = sfc::tet_from_linear_id_unchecked(cfg, first, level);
        out.push(t);
        for _ in 1..count {
            t = sfc::successor(cfg, &t).expect("range ends before the last element");
            out.push(t);
        }
        return out;
    }
    let mut out = vec![TetId::default(); count];
    par::for_each_chunk_mut(exec, &mut out, NEW_CHUNK, |ci, slice| {
        let start = first + (ci * NEW_CHUNK) as u64;
        let mut t = sfc::tet_from_linear_id_unchecked(cfg, start, level);
        slice[0] = t;
        for slot in &mut slice[1..] {
            t = sfc::successor(cfg, &t).expect("range ends before the last element");
            *slot = t;
        }
    });
    out
}

fn adapt_tree<F>(
    cfg: MeshConfig,
    tree_id: u32,
    input: &[TetId],
    recursive: bool,
    callback: &F,
    stats: &mut AdaptStats,
) -> Vec<TetId>
where
    F: Fn(u32, &[TetId]) -> i32,
{
    let fam = cfg.dim().num_children() as usize;
    let max_level = cfg.max_level();
    let mut out: Vec<TetId> = Vec::with_capacity(input.len());
    // parallel to `out`: whether the element was created by coarsening
    let mut coarsened: Vec<bool> = Vec::with_capacity(input.len());
    let mut stack: Vec<TetId> = Vec::new();

    let mut i = 0;
    while i < input.len() {
        let elem = input[i];
        let is_family = i + fam <= input.len() && family_check(cfg, &input[i..i + fam]);
        let window = if is_family {
            &input[i..i + fam]
        } else {
            &input[i..=i]
        };
        let verdict = callback(tree_id, window);
        stats.callbacks += 1;

        if verdict > 0 && elem.level < max_level {
            stats.refined += 1;
            if recursive {
                push_children_reversed(cfg, &elem, &mut stack);
                while let Some(t) = stack.pop() {
                    let v = callback(tree_id, std::slice::from_ref(&t));
                    stats.callbacks += 1;
                    if v > 0 && t.level < max_level {
                        stats.refined += 1;
                        push_children_reversed(cfg, &t, &mut stack);
                    } else {
                        if v > 0 {
                            stats.clamped_refine += 1;
                        }
                        out.push(t);
                        coarsened.push(false);
                    }
                }
            } else {
                for l in 0..fam as u8 {
                    out.push(elem.tm_child_unchecked(cfg, l));
                    coarsened.push(false);
                }
            }
            i += 1;
            continue;
        }

        if verdict < 0 && is_family {
            stats.coarsened += 1;
            out.push(elem.parent_unchecked(cfg));
            coarsened.push(true);
            i += fam;
        } else {
            if verdict > 0 {
                stats.clamped_refine += 1;
            } else if verdict < 0 && elem.level == 0 {
                stats.clamped_coarsen += 1;
            }
            out.push(elem);
            coarsened.push(false);
            i += 1;
        }

        if recursive {
            coarsen_tail(cfg, tree_id, callback, stats, &mut out, &mut coarsened);
        }
    }
    out
}

fn push_children_reversed(cfg: MeshConfig, t: &TetId, stack: &mut Vec<TetId>) {
    for l in (0..cfg.dim().num_children()).rev() {
        stack.push(t.tm_child_unchecked(cfg, l));
    }
}

fn coarsen_tail<F>(
    cfg: MeshConfig,
    tree_id: u32,
    callback: &F,
    stats: &mut AdaptStats,
    out: &mut Vec<TetId>,
    coarsened: &mut Vec<bool>,
) where
    F: Fn(u32, &[TetId]) -> i32,
{
    let fam = cfg.dim().num_children() as usize;
    while out.len() >= fam {
        let start = out.len() - fam;
        // families without a coarsened member were already offered as input
        if !coarsened[start..].iter().any(|&c| c) || !family_check(cfg, &out[start..]) {
            return;
        }
        let verdict = callback(tree_id, &out[start..]);
        stats.callbacks += 1;
        if verdict >= 0 {
            return;
        }
        let parent = out[start].parent_unchecked(cfg);
        out.truncate(start);
        coarsened.truncate(start);
        out.push(parent);
        coarsened.push(true);
        stats.coarsened += 1;
    }
}

fn validate_tree(cfg: MeshConfig, tree: &Tree) -> ValidationReport {
    let mut r = ValidationReport {
        elements: tree.elements.len() as u64,
        ..Default::default()
    };
    let mut prev: Option<(&TetId, sfc::TmCode)> = None;
    for e in &tree.elements {
        if TetId::new(cfg, e.anchor, e.level, e.ty).is_err() {
            r.malformed += 1;
            prev = None;
            continue;
        }
        if !e.is_inside_root(cfg) {
            r.outside_root += 1;
            prev = None;
            continue;
        }
        let code = sfc::tm_index_unchecked(cfg, e);
        if !sfc::is_valid_code(&code) {
            r.invalid_code += 1;
        }
        if let Some((p, pcode)) = prev {
            if pcode.cmp(&code) != Ordering::Less {
                r.unsorted += 1;
            }
            if e.is_descendant_of(cfg, p) {
                r.not_leaf += 1;
            }
        }
        prev = Some((e, code));
    }
    r
}
