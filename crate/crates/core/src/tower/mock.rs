//! Finite labelled-element worlds standing in for models.

use std::collections::BTreeMap;

use super::{ElementId, PotentialistSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MockWorld {
    pub stage: u64,
    pub level: Option<usize>,
    pub flags: BTreeMap<ElementId, Option<usize>>,
}

/// `arrivals[i]` new elements appear in the world of stage `i`.
#[derive(Clone, Debug, Default)]
pub struct MockSystem {
    pub arrivals: Vec<u64>,
}

impl MockSystem {
    pub fn new(arrivals: Vec<u64>) -> Self {
        MockSystem { arrivals }
    }

    pub fn arrivals_at(&self, stage: u64) -> u64 {
        self.arrivals.get(stage as usize).copied().unwrap_or(0)
    }

    fn arrive(&self, w: &mut MockWorld) {
        for index in 0..self.arrivals_at(w.stage) {
            w.flags.insert(ElementId { arrival_stage: w.stage, index }, None);
        }
    }

    pub fn start(&self) -> MockWorld {
        let mut w = MockWorld { stage: 0, level: None, flags: BTreeMap::new() };
        self.arrive(&mut w);
        w
    }
}

impl PotentialistSystem for MockSystem {
    type World = MockWorld;

    fn elements(&self, w: &MockWorld) -> Vec<ElementId> {
        w.flags.keys().copied().collect()
    }

    fn definable_level(&self, w: &MockWorld, e: ElementId) -> Option<usize> {
        w.flags.get(&e).copied().flatten()
    }

    fn extend(&mut self, w: &MockWorld, target: Option<ElementId>, level: usize) -> Result<MockWorld, String> {
        if w.level.is_some_and(|l| level <= l) {
            return Err(format!("level {level} does not exceed {}", w.level.unwrap_or(0)));
        }
        let mut next = MockWorld { stage: w.stage + 1, level: Some(level), flags: w.flags.clone() };
        if let Some(t) = target {
            let flag = next.flags.get_mut(&t).ok_or_else(|| format!("target {t:?} not in the world"))?;
            flag.get_or_insert(level);
        }
        self.arrive(&mut next);
        Ok(next)
    }
}

/// A mock that misbehaves at chosen stages.
#[derive(Clone, Debug, Default)]
pub struct FaultySystem {
    pub inner: MockSystem,
    /// Ignores the target at this stage.
    pub skip_target_at: Option<u64>,
    /// Clears every flag at this stage.
    pub drop_flags_at: Option<u64>,
    pub fail_at: Option<u64>,
}

impl PotentialistSystem for FaultySystem {
    type World = MockWorld;

    fn elements(&self, w: &MockWorld) -> Vec<ElementId> {
        self.inner.elements(w)
    }

    fn definable_level(&self, w: &MockWorld, e: ElementId) -> Option<usize> {
        self.inner.definable_level(w, e)
    }

    fn extend(&mut self, w: &MockWorld, target: Option<ElementId>, level: usize) -> Result<MockWorld, String> {
        let s = w.stage;
        if self.fail_at == Some(s) {
            return Err("refused".into());
        }
        let target = if self.skip_target_at == Some(s) { None } else { target };
        let mut next = self.inner.extend(w, target, level)?;
        if self.drop_flags_at == Some(s) {
            next.flags.values_mut().for_each(|f| *f = None);
        }
        Ok(next)
    }
}
