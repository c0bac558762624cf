use vml_core::harness::{run_suite, suite_ok, SuiteConfig};

#[test]
fn rule_suite_is_sound_and_non_vacuous() {
    let reports = run_suite(&SuiteConfig::default());
    for r in &reports {
        println!(
            "{:<16} holds={:<3} bounded={:<3} fails={} unknown={:<3} premise_fails={:<3} premise_unknown={:<3} {}ms",
            r.rule, r.holds, r.bounded, r.fails, r.unknown, r.premise_fails, r.premise_unknown, r.elapsed_ms
        );
        for f in &r.failures {
            println!("    seed {}: {} -- {}", f.seed, f.conclusion, f.reason);
        }
    }
    assert!(suite_ok(&reports));
}
