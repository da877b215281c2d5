//! Timing helpers for uniform forest construction, shared by the CLI `bench`
//! command and the level-independence acceptance check.

use std::time::{Duration, Instant};

use crate::error::Result;
use crate::forest::{CoarseMesh, Forest};
use crate::par::Execution;
use crate::tet::MeshConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelTiming {
    pub level: u8,
    pub elements: u64,
    /// Fastest of the repeats.
    pub time: Duration,
}

impl LevelTiming {
    pub fn per_element(&self) -> Duration {
        self.time.div_f64(self.elements.max(1) as f64)
    }
}

/// Times single-rank uniform construction at one level, keeping the minimum
/// over `repeat` runs.
pub fn time_new(
    exec: Execution,
    coarse: CoarseMesh,
    config: MeshConfig,
    level: u8,
    repeat: u32,
) -> Result<LevelTiming> {
    let mut best = Duration::MAX;
    let mut elements = 0;
    for _ in 0..repeat.max(1) {
        let start = Instant::now();
        let forest = Forest::new_uniform_with(exec, coarse, config, level, 1, 0)?;
        let elapsed = start.elapsed();
        elements = forest.element_count();
        drop(forest);
        best = best.min(elapsed);
    }
    Ok(LevelTiming {
        level,
        elements,
        time: best,
    })
}

pub fn time_levels(
    exec: Execution,
    coarse: CoarseMesh,
    config: MeshConfig,
    levels: impl IntoIterator<Item = u8>,
    repeat: u32,
) -> Result<Vec<LevelTiming>> {
    levels
        .into_iter()
        .map(|l| time_new(exec, coarse, config, l, repeat))
        .collect()
}

/// Successive time ratios `t[i+1] / t[i]`.
pub fn time_factors(timings: &[LevelTiming]) -> Vec<f64> {
    timings
        .windows(2)
        .map(|w| w[1].time.as_secs_f64() / w[0].time.as_secs_f64())
        .collect()
}
