use std::time::Instant;

use pointwise::universal::oracle::SoundProofOracle;
use pointwise::universal::{build_universal_program, run_universal, TemplateConfig};

#[test]
fn sound_search_at_full_budget_is_empty() {
    let u = build_universal_program(&TemplateConfig::default()).unwrap();
    let budget = 1_000_000;
    let t = Instant::now();
    let mut o = SoundProofOracle::new(&u.compiled, &u.code(), 0, budget);
    let run = run_universal(&u, &mut o, budget);
    eprintln!("{:?} examined {} level {} work {} steps {}", t.elapsed(), o.examined, o.size_level(), o.work(), run.state.steps_consumed);
    assert!(run.state.sequence.is_empty());
}

mod scripted {
    use pointwise::universal::run::ignored_injections;
    use pointwise::universal::{
        build_oracle_universal_program, replay_run, replay_script, run_universal, self_defeat_check, Injection, ProofOracleScript,
        ScriptedOracle, TemplateConfig,
    };
    use proptest::prelude::*;

    /// Injections with arbitrary stages and fragments, spaced along the search.
    fn any_script() -> impl Strategy<Value = ProofOracleScript> {
        prop::collection::vec((1u64..6, 0u64..4, 0u64..8, 0u64..50), 0..8).prop_map(|raw| {
            let mut at = 0;
            let injections = raw
                .into_iter()
                .map(|(gap, stage, fragment_k, value)| {
                    at += gap;
                    Injection { at_step: at, stage, fragment_k, value }
                })
                .collect();
            ProofOracleScript { injections }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn run_agrees_with_replay(script in any_script(), m in 0u64..3) {
            let u = build_oracle_universal_program(&TemplateConfig::default(), m).unwrap();
            let run = run_universal(&u, &mut ScriptedOracle::new(script.clone(), m), 20_000);
            let expected = replay_script(&script);
            prop_assert_eq!(&run.state.sequence, &expected.sequence);
            prop_assert_eq!(&run.state.fragment_indices, &expected.fragment_indices);
            prop_assert_eq!(ignored_injections(&script, &run), expected.ignored);
            prop_assert!(run.state.invariants_hold());
            if let Some(&k0) = run.state.fragment_indices.first() {
                prop_assert!(run.state.sequence.len() as u64 <= k0);
            }
            prop_assert!(self_defeat_check(&u, &run).iter().all(|d| d.falsified));
            let again = replay_run(&u, run.oracle_log.clone(), 20_000);
            prop_assert_eq!(serde_json::to_vec(&again).unwrap(), serde_json::to_vec(&run).unwrap());
        }
    }
}

#[test]
fn oracle_levels_are_empty_and_replay() {
    use pointwise::universal::{build_oracle_universal_program, replay_run};
    for m in 0..4 {
        let u = build_oracle_universal_program(&TemplateConfig::default(), m).unwrap();
        let mut o = SoundProofOracle::new(&u.compiled, &u.code(), m, 100_000);
        let run = run_universal(&u, &mut o, 100_000);
        assert!(run.state.sequence.is_empty());
        let again = replay_run(&u, run.oracle_log.clone(), 100_000);
        assert_eq!(serde_json::to_vec(&again).unwrap(), serde_json::to_vec(&run).unwrap());
    }
}

#[test]
fn process_formulas_are_sigma_m_plus_one() {
    use pointwise::logic::classify::ComplexityClass;
    use pointwise::universal::synth::synthesis_base;
    use pointwise::universal::{synthesize_process_formula, Process, ProcessFormulaSpec};
    let base = synthesis_base();
    for m in 1..=4 {
        for which in [Process::A, Process::B, Process::C] {
            let t = Instant::now();
            let s = synthesize_process_formula(&ProcessFormulaSpec::new(m), which).unwrap();
            assert_eq!(s.class, ComplexityClass::sigma(m + 1), "{which:?} m={m}");
            assert_eq!(s.certificate.verify(&base), Ok(()));
            assert!(s.parts.iter().all(|p| s.has_part(&p.name)));
            assert_eq!(s.has_part("only_a_after_a"), which == Process::C);
            assert!(t.elapsed().as_secs() < 10);
        }
    }
}
