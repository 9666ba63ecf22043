//! Progressively elementary towers with dovetailed bookkeeping.
//!
//! Stage `s` handles the element `(i, j) = unpair(s)`, the `j`-th element
//! that arrived at stage `i`, if there is one: the extension built at stage
//! `s` has elementarity level `m + s` and makes that element definable.

pub mod mock;

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::logic::coding::{pair_u64, unpair_u64};

pub use mock::{FaultySystem, MockSystem, MockWorld};

/// The `index`-th element arriving at `arrival_stage`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ElementId {
    pub arrival_stage: u64,
    pub index: u64,
}

impl ElementId {
    pub fn code(&self) -> u64 {
        pair_u64(self.arrival_stage, self.index)
    }
}

pub trait PotentialistSystem {
    type World: Clone;

    fn elements(&self, w: &Self::World) -> Vec<ElementId>;

    /// The level at which `e` is flagged definable in `w`, if it is.
    fn definable_level(&self, w: &Self::World, e: ElementId) -> Option<usize>;

    /// An extension of `w` with the given elementarity level in which
    /// `target` is flagged definable.
    fn extend(&mut self, w: &Self::World, target: Option<ElementId>, level: usize) -> Result<Self::World, String>;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("stage {stage}: extension failed: {reason}")]
    Extend { stage: u64, reason: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BookkeepingPlan {
    pub schedule: BTreeMap<u64, ElementId>,
}

/// The element handled at `stage`, given arrival counts per stage.
pub fn scheduled(stage: u64, arrivals: impl Fn(u64) -> u64) -> Option<ElementId> {
    let (i, j) = unpair_u64(stage);
    (j < arrivals(i)).then_some(ElementId { arrival_stage: i, index: j })
}

/// Schedule for stages `0..horizon`.
pub fn plan_bookkeeping(arrivals: impl Fn(u64) -> u64, horizon: u64) -> BookkeepingPlan {
    let schedule = (0..horizon).filter_map(|s| scheduled(s, &arrivals).map(|e| (s, e))).collect();
    BookkeepingPlan { schedule }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementReport {
    pub id: u64,
    pub arrival_stage: u64,
    pub index: u64,
    pub definable_at_stage: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerTrace {
    pub stages: u64,
    /// Elementarity level of each extension, in order.
    pub levels: Vec<usize>,
    pub elements: Vec<ElementReport>,
    /// Definability levels in each world of the tower.
    #[serde(skip)]
    pub history: Vec<BTreeMap<ElementId, Option<usize>>>,
}

fn snapshot<S: PotentialistSystem>(sys: &S, w: &S::World) -> BTreeMap<ElementId, Option<usize>> {
    sys.elements(w).into_iter().map(|e| (e, sys.definable_level(w, e))).collect()
}

pub fn run_tower<S: PotentialistSystem>(sys: &mut S, start: S::World, stages: u64, m: usize) -> Result<TowerTrace, TowerError> {
    let mut world = start;
    let mut history = vec![snapshot(sys, &world)];
    let mut levels = Vec::new();
    for s in 0..stages {
        let (i, j) = unpair_u64(s);
        let target = ElementId { arrival_stage: i, index: j };
        let target = history[i as usize].contains_key(&target).then_some(target);
        let level = m + s as usize;
        world = sys.extend(&world, target, level).map_err(|reason| TowerError::Extend { stage: s, reason })?;
        levels.push(level);
        history.push(snapshot(sys, &world));
    }
    let mut first: BTreeMap<ElementId, (u64, Option<u64>)> = BTreeMap::new();
    for (stage, snap) in history.iter().enumerate() {
        for (e, flag) in snap {
            let entry = first.entry(*e).or_insert((stage as u64, None));
            if flag.is_some() && entry.1.is_none() {
                entry.1 = Some(stage as u64);
            }
        }
    }
    let elements = first
        .into_iter()
        .map(|(e, (arrival, def))| ElementReport { id: e.code(), arrival_stage: arrival, index: e.index, definable_at_stage: def })
        .collect();
    Ok(TowerTrace { stages, levels, elements, history })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustionVerdict {
    pub exhausted: bool,
    /// The first scheduled `(stage, index)` left undefinable.
    pub missing: Option<(u64, u64)>,
}

/// Every element handled by a stage of the trace is definable at the end.
pub fn check_exhaustion(trace: &TowerTrace) -> ExhaustionVerdict {
    let missing = trace
        .elements
        .iter()
        .filter(|e| e.id < trace.stages && e.definable_at_stage.is_none())
        .min_by_key(|e| e.id)
        .map(|e| (e.arrival_stage, e.index));
    ExhaustionVerdict { exhausted: missing.is_none(), missing }
}

/// Flags never disappear or drop in level along the tower.
pub fn persistence_holds(trace: &TowerTrace) -> bool {
    trace.history.windows(2).all(|w| {
        w[0].iter().all(|(e, old)| match (old, w[1].get(e)) {
            (None, Some(_)) => true,
            (Some(l), Some(Some(n))) => n >= l,
            _ => false,
        })
    })
}

pub fn levels_increase(trace: &TowerTrace) -> bool {
    trace.levels.windows(2).all(|w| w[0] < w[1])
}
