use pointwise::tower::{check_exhaustion, levels_increase, persistence_holds, plan_bookkeeping, run_tower, ElementId, MockSystem};
use proptest::prelude::*;

fn cantor(a: u64, b: u64) -> u64 {
    (a + b) * (a + b + 1) / 2 + b
}

#[test]
fn coverage_small_arrivals() {
    for count in 0..=3u64 {
        let plan = plan_bookkeeping(|_| count, cantor(50, 3) + 1);
        for i in 0..50 {
            for j in 0..count {
                assert_eq!(plan.schedule.get(&cantor(i, j)), Some(&ElementId { arrival_stage: i, index: j }));
            }
        }
        assert_eq!(plan.schedule.values().collect::<std::collections::BTreeSet<_>>().len(), plan.schedule.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exhaustion_by_horizon(arrivals in prop::collection::vec(0u64..=5, 0..200), horizon in 0u64..=200, m in 0usize..4) {
        let mut sys = MockSystem::new(arrivals.clone());
        let w = sys.start();
        let t = run_tower(&mut sys, w, horizon, m).unwrap();
        prop_assert!(levels_increase(&t));
        prop_assert!(persistence_holds(&t));
        prop_assert!(check_exhaustion(&t).exhausted);
        for e in &t.elements {
            if cantor(e.arrival_stage, e.index) < horizon {
                prop_assert_eq!(e.definable_at_stage, Some(cantor(e.arrival_stage, e.index) + 1));
            }
        }
        prop_assert_eq!(t.levels.first().copied(), (horizon > 0).then_some(m));
    }
}
