//! Rule-soundness harness: for every rule, generate seeded instances, check
//! the premises, and whenever they all pass require the conclusion not to
//! fail.

mod gen;
mod rules;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

pub use gen::{
    bool_ty, br_bool, closed_pool, equal_term_pairs, equal_type_pairs, ff, not_body, pi_bool, sig_dep, three, tt, unit,
    Gen,
};
pub use rules::{broken_rule, catalog, Instance, Rule};

use crate::interp::{CheckConfig, Checker};
use crate::zf::Verdict;

/// Instances per rule in a default suite run.
pub const DEFAULT_CASES: usize = 20;

/// How a single instance came out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// Premises passed and the conclusion holds.
    Holds,
    /// Premises passed and the conclusion holds up to the numeral bound.
    Bounded,
    /// Premises passed and the conclusion fails: a soundness failure.
    Fails,
    /// Premises passed but the conclusion is undecided.
    Unknown,
    /// Some premise fails; the instance says nothing.
    PremiseFails,
    /// Some premise is undecided.
    PremiseUnknown,
}

impl Outcome {
    pub fn non_vacuous(self) -> bool {
        matches!(
            self,
            Outcome::Holds | Outcome::Bounded | Outcome::Fails | Outcome::Unknown
        )
    }
}

/// Instance seed for case `i` of a rule. Mixing in the name keeps rules
/// from sharing instances.
pub fn case_seed(base: u64, rule: &str, i: usize) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in rule.bytes() {
        h = (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3);
    }
    h ^ base.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (i as u64)
}

pub fn gen_instance(rule: &Rule, seed: u64) -> Instance {
    (rule.gen)(&mut Gen::new(seed, rule.nat))
}

pub fn check_instance(checker: &Checker, inst: &Instance) -> (Outcome, Verdict) {
    let mut premises = Verdict::holds();
    for p in &inst.premises {
        premises = premises.and(checker.check(p));
        if premises.is_fails() {
            return (Outcome::PremiseFails, premises);
        }
    }
    if !premises.passes() {
        return (Outcome::PremiseUnknown, premises);
    }
    let v = checker.check(&inst.conclusion);
    let o = match &v {
        Verdict::Holds(_) => Outcome::Holds,
        Verdict::Fails(_) => Outcome::Fails,
        Verdict::Unknown(i) if i.bounded => Outcome::Bounded,
        Verdict::Unknown(_) => Outcome::Unknown,
    };
    (o, v)
}

/// A soundness failure, with enough to replay it.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub seed: u64,
    pub conclusion: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub rule: String,
    pub group: String,
    pub holds: usize,
    pub bounded: usize,
    pub fails: usize,
    pub unknown: usize,
    pub premise_fails: usize,
    pub premise_unknown: usize,
    /// Instance seeds, in case order.
    pub seeds: Vec<u64>,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn cases(&self) -> usize {
        self.holds + self.bounded + self.fails + self.unknown + self.premise_fails + self.premise_unknown
    }

    pub fn non_vacuous(&self) -> usize {
        self.holds + self.bounded + self.fails + self.unknown
    }

    pub fn vacuous(&self) -> bool {
        self.non_vacuous() == 0
    }

    pub fn sound(&self) -> bool {
        self.fails == 0
    }

    /// Counts without timings, for comparing runs.
    pub fn tally(&self) -> (usize, usize, usize, usize, usize, usize) {
        (
            self.holds,
            self.bounded,
            self.fails,
            self.unknown,
            self.premise_fails,
            self.premise_unknown,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub check: CheckConfig,
    pub cases: usize,
    pub seed: u64,
    /// Add the deliberately unsound control rule.
    pub inject_broken: bool,
    pub threads: usize,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            check: CheckConfig::default(),
            cases: DEFAULT_CASES,
            seed: 0,
            inject_broken: false,
            threads: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        }
    }
}

pub fn check_rule(rule: &Rule, n_cases: usize, seed: u64, cfg: &CheckConfig) -> Report {
    let start = Instant::now();
    let checker = Checker::new(&CheckConfig { trace: false, ..*cfg });
    let mut r = Report {
        rule: rule.name.to_string(),
        group: rule.group.to_string(),
        holds: 0,
        bounded: 0,
        fails: 0,
        unknown: 0,
        premise_fails: 0,
        premise_unknown: 0,
        seeds: Vec::with_capacity(n_cases),
        failures: Vec::new(),
        elapsed_ms: 0,
    };
    for i in 0..n_cases {
        let s = case_seed(seed, rule.name, i);
        r.seeds.push(s);
        let inst = gen_instance(rule, s);
        let (o, v) = check_instance(&checker, &inst);
        match o {
            Outcome::Holds => r.holds += 1,
            Outcome::Bounded => r.bounded += 1,
            Outcome::Fails => {
                r.fails += 1;
                r.failures.push(Failure {
                    seed: s,
                    conclusion: inst.conclusion.to_string(),
                    reason: v.to_string(),
                });
            }
            Outcome::Unknown => r.unknown += 1,
            Outcome::PremiseFails => r.premise_fails += 1,
            Outcome::PremiseUnknown => r.premise_unknown += 1,
        }
    }
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    r
}

/// Runs every rule of the catalog; reports come back in catalog order
/// whatever the thread count.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<Report> {
    let mut rules = catalog();
    if cfg.inject_broken {
        rules.push(broken_rule());
    }
    run_rules(&rules, cfg)
}

pub fn run_rules(rules: &[Rule], cfg: &SuiteConfig) -> Vec<Report> {
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<Report>>> = Mutex::new(vec![None; rules.len()]);
    std::thread::scope(|s| {
        for _ in 0..cfg.threads.max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(rule) = rules.get(i) else { break };
                let r = check_rule(rule, cfg.cases, cfg.seed, &cfg.check);
                out.lock().unwrap()[i] = Some(r);
            });
        }
    });
    out.into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every rule ran"))
        .collect()
}

/// Overall verdict of a suite run: no soundness failure and no vacuous rule.
pub fn suite_ok(reports: &[Report]) -> bool {
    reports.iter().all(|r| r.sound() && !r.vacuous())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(name: &str) -> Rule {
        catalog().into_iter().find(|r| r.name == name).unwrap()
    }

    #[test]
    fn instances_replay() {
        let r = find("Pi-beta-gen");
        let a = gen_instance(&r, 42);
        let b = gen_instance(&r, 42);
        assert_eq!(a.conclusion, b.conclusion);
        assert_eq!(a.premises, b.premises);
    }

    #[test]
    fn broken_control_is_caught() {
        let r = check_rule(&broken_rule(), 5, 0, &CheckConfig::default());
        assert_eq!(r.fails, 5);
    }

    #[test]
    fn id_elimination_holds() {
        let r = check_rule(&find("ID-e"), 20, 0, &CheckConfig::default());
        assert!(r.sound() && !r.vacuous(), "{r:?}");
    }
}
