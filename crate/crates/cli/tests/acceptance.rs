//! Acceptance run. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::HashMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use vml_core::harness::{
    bool_ty, br_bool, case_seed, catalog, check_instance, closed_pool, ff, gen_instance, not_body, run_suite, sig_dep,
    three, tt, unit, Gen, Outcome, SuiteConfig, DEFAULT_CASES,
};
use vml_core::interp::{unit_point, CheckConfig, Checker, Interp};
use vml_core::setoid::{check_kappa_pi_iso, check_kappa_sigma_iso, kappa};
use vml_core::syntax::{Ctx, Judg, Sub, Tm, Ty};
use vml_core::universe::check_mem_u;
use vml_core::zf::{
    atoms, eq_v, mem_v, natv, numeral, pair_v, subset_v, Budget, Key, VFamily, VSet, Verdict, DEFAULT_FUEL,
    DEFAULT_NAT_BOUND,
};

type Outcome1 = Result<String, String>;

// ---------------------------------------------------------------------------
// HF enumeration and the oracles

/// Plain tree, independent of `VSet`.
#[derive(Clone, Debug)]
struct T(Vec<T>);

/// Brute-force bisimilarity, straight from the definition.
fn bisim(a: &T, b: &T) -> bool {
    a.0.iter().all(|x| b.0.iter().any(|y| bisim(x, y))) && b.0.iter().all(|y| a.0.iter().any(|x| bisim(x, y)))
}

/// Hash-consing: a set is the sorted, deduplicated list of its members' ids.
#[derive(Default)]
struct Interner(HashMap<Vec<u32>, u32>);

impl Interner {
    fn id(&mut self, mut kids: Vec<u32>) -> u32 {
        kids.sort_unstable();
        kids.dedup();
        let n = self.0.len() as u32;
        *self.0.entry(kids).or_insert(n)
    }
}

const WIDTH: usize = 3;

/// Every sequence of length <= WIDTH over `0..n`, shortest first.
fn sequences(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..WIDTH {
        let mut next = Vec::new();
        for s in &layer {
            for i in 0..n {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

struct Hf {
    /// Trees of height <= 2, as plain trees, sets and oracle ids.
    low: Vec<T>,
    low_sets: Vec<VSet>,
    low_ids: Vec<u32>,
    /// Trees of height <= 3 as sequences over `low`.
    high: Vec<Vec<usize>>,
    high_ids: Vec<u32>,
}

impl Hf {
    fn new() -> Hf {
        let mut interner = Interner::default();
        let mut trees = vec![T(vec![])];
        for _ in 0..2 {
            trees = sequences(trees.len())
                .into_iter()
                .map(|s| T(s.into_iter().map(|i| trees[i].clone()).collect()))
                .collect();
        }
        fn to_set(t: &T) -> VSet {
            VSet::from_children(t.0.iter().map(to_set).collect())
        }
        fn canon(t: &T, int: &mut Interner) -> u32 {
            let kids = t.0.iter().map(|c| canon(c, int)).collect();
            int.id(kids)
        }
        let low_sets = trees.iter().map(to_set).collect();
        let low_ids: Vec<u32> = trees.iter().map(|t| canon(t, &mut interner)).collect();
        let high = sequences(trees.len());
        let high_ids = high
            .iter()
            .map(|s| interner.id(s.iter().map(|&i| low_ids[i]).collect()))
            .collect();
        Hf {
            low: trees,
            low_sets,
            low_ids,
            high,
            high_ids,
        }
    }

    fn high_set(&self, i: usize) -> VSet {
        VSet::from_children(self.high[i].iter().map(|&k| self.low_sets[k].clone()).collect())
    }

    /// The same set with its members listed in reverse.
    fn high_set_reversed(&self, i: usize) -> VSet {
        VSet::from_children(self.high[i].iter().rev().map(|&k| self.low_sets[k].clone()).collect())
    }

    /// One tree index per oracle class of height-3 trees.
    fn class_reps(&self) -> Vec<usize> {
        let mut seen = HashMap::new();
        for (i, id) in self.high_ids.iter().enumerate() {
            seen.entry(*id).or_insert(i);
        }
        let mut reps: Vec<usize> = seen.into_values().collect();
        reps.sort_unstable();
        reps
    }

    fn sample(&self, n: usize, seed: u64) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut idx: Vec<usize> = (0..self.high.len()).collect();
        idx.shuffle(&mut rng);
        idx.truncate(n);
        idx
    }
}

fn code(v: &Verdict) -> u8 {
    match v {
        Verdict::Holds(_) => 0,
        Verdict::Fails(_) => 1,
        Verdict::Unknown(_) => 2,
    }
}

fn agrees(v: u8, same: bool) -> bool {
    v == if same { 0 } else { 1 }
}

const SAMPLE: usize = 1200;

/// Equality verdicts of the oracle suite, in a fixed order:
/// all pairs of low trees, every high tree against every class
/// representative, and all pairs within a sample of high trees.
fn eq_suite(hf: &Hf, budget: &Budget) -> Vec<u8> {
    let mut out = Vec::new();
    for a in &hf.low_sets {
        for b in &hf.low_sets {
            out.push(code(&eq_v(a, b, budget)));
        }
    }
    let reps: Vec<VSet> = hf.class_reps().into_iter().map(|r| hf.high_set(r)).collect();
    for i in 0..hf.high.len() {
        let t = hf.high_set(i);
        for r in &reps {
            out.push(code(&eq_v(&t, r, budget)));
        }
    }
    let sample: Vec<VSet> = hf.sample(SAMPLE, 7).into_iter().map(|i| hf.high_set(i)).collect();
    for a in &sample {
        for b in &sample {
            out.push(code(&eq_v(a, b, budget)));
        }
    }
    out
}

fn expected_eq(hf: &Hf) -> Vec<bool> {
    let mut out = Vec::new();
    for a in &hf.low_ids {
        for b in &hf.low_ids {
            out.push(a == b);
        }
    }
    let reps: Vec<u32> = hf.class_reps().into_iter().map(|r| hf.high_ids[r]).collect();
    for id in &hf.high_ids {
        for r in &reps {
            out.push(id == r);
        }
    }
    let sample: Vec<u32> = hf.sample(SAMPLE, 7).into_iter().map(|i| hf.high_ids[i]).collect();
    for a in &sample {
        for b in &sample {
            out.push(a == b);
        }
    }
    out
}

fn ample() -> Budget {
    Budget::new(DEFAULT_FUEL, DEFAULT_NAT_BOUND)
}

fn criterion1(hf: &Hf, verdicts: &[u8]) -> Outcome1 {
    // the two oracles must agree with each other first
    let mut oracle_split = 0;
    for (i, a) in hf.low.iter().enumerate() {
        for (j, b) in hf.low.iter().enumerate() {
            if bisim(a, b) != (hf.low_ids[i] == hf.low_ids[j]) {
                oracle_split += 1;
            }
        }
    }
    if oracle_split > 0 {
        return Err(format!(
            "bisimulation and hash-consing oracles disagree on {oracle_split} pairs"
        ));
    }
    let want = expected_eq(hf);
    let bad = verdicts.iter().zip(&want).filter(|(v, w)| !agrees(**v, **w)).count();
    let msg = format!(
        "{} trees (height <= 3, width <= {WIDTH}), {} classes, {} comparisons, {bad} disagreements",
        hf.high.len(),
        hf.class_reps().len(),
        verdicts.len()
    );
    if bad == 0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

/// Rows of an equality matrix must coincide for related elements.
fn transitivity_violations(m: &[u8], n: usize) -> usize {
    let mut bad = 0;
    for a in 0..n {
        for b in 0..n {
            if m[a * n + b] == 0 && m[a * n..a * n + n] != m[b * n..b * n + n] {
                bad += 1;
            }
        }
    }
    bad
}

fn criterion2(hf: &Hf, verdicts: &[u8]) -> Outcome1 {
    let budget = ample();
    let mut bad = Vec::new();
    // reflexivity against a reordered presentation
    let refl = (0..hf.high.len())
        .filter(|&i| !eq_v(&hf.high_set(i), &hf.high_set_reversed(i), &budget).is_holds())
        .count();
    if refl > 0 {
        bad.push(format!("{refl} reflexivity"));
    }
    let nl = hf.low.len();
    let low = &verdicts[..nl * nl];
    let ns = SAMPLE;
    let sample_m = &verdicts[verdicts.len() - ns * ns..];
    let mut sym = 0;
    for (m, n) in [(low, nl), (sample_m, ns)] {
        for a in 0..n {
            for b in 0..n {
                sym += usize::from(m[a * n + b] != m[b * n + a]);
            }
        }
    }
    if sym > 0 {
        bad.push(format!("{sym} symmetry"));
    }
    let trans = transitivity_violations(low, nl) + transitivity_violations(sample_m, ns);
    if trans > 0 {
        bad.push(format!("{trans} transitivity"));
    }
    // membership: every low tree against every sampled high tree
    let sample = hf.sample(ns, 7);
    let mut mem = vec![0u8; nl * ns];
    let mut mem_wrong = 0;
    for (j, &s) in sample.iter().enumerate() {
        let alpha = hf.high_set(s);
        let members: Vec<u32> = hf.high[s].iter().map(|&k| hf.low_ids[k]).collect();
        for i in 0..nl {
            let v = code(&mem_v(&hf.low_sets[i], &alpha, &budget));
            mem_wrong += usize::from(!agrees(v, members.contains(&hf.low_ids[i])));
            mem[i * ns + j] = v;
        }
    }
    if mem_wrong > 0 {
        bad.push(format!("{mem_wrong} membership verdicts wrong"));
    }
    // x = y implies same memberships
    let mut ext = 0;
    for x in 0..nl {
        for y in 0..nl {
            if low[x * nl + y] == 0 {
                ext += usize::from(mem[x * ns..x * ns + ns] != mem[y * ns..y * ns + ns]);
            }
        }
    }
    // alpha = beta iff they have the same members (low trees cover every
    // possible member class)
    for a in 0..ns {
        for b in 0..ns {
            let same_members = (0..nl).all(|x| mem[x * ns + a] == mem[x * ns + b]);
            ext += usize::from(same_members != (sample_m[a * ns + b] == 0));
        }
    }
    if ext > 0 {
        bad.push(format!("{ext} extensionality"));
    }
    let msg = format!(
        "reflexivity on {} trees, symmetry/transitivity on {}+{} pairs, {} membership checks",
        hf.high.len(),
        nl * nl,
        ns * ns,
        nl * ns
    );
    if bad.is_empty() {
        Ok(msg)
    } else {
        Err(format!("{msg}: {}", bad.join(", ")))
    }
}

fn criterion3(hf: &Hf) -> Outcome1 {
    let budget = ample();
    // all presentations of rank <= 2 sets with at most two members listed
    let small: Vec<usize> = (0..hf.low.len()).filter(|&i| hf.low[i].0.len() <= 2).collect();
    let mut pairs = Vec::new();
    for &a in &small {
        for &b in &small {
            pairs.push((a, b, pair_v(&hf.low_sets[a], &hf.low_sets[b])));
        }
    }
    let mut bad = 0;
    let mut n = 0;
    for (a, b, p) in &pairs {
        for (c, d, q) in &pairs {
            let want = hf.low_ids[*a] == hf.low_ids[*c] && hf.low_ids[*b] == hf.low_ids[*d];
            bad += usize::from(!agrees(code(&eq_v(p, q, &budget)), want));
            n += 1;
        }
    }
    // every presentation of a component against a fixed pair
    for a in 0..hf.low.len() {
        for b in 0..hf.low.len() {
            let p = pair_v(&hf.low_sets[a], &hf.low_sets[b]);
            for (c, d, q) in pairs.iter().step_by(7) {
                let want = hf.low_ids[a] == hf.low_ids[*c] && hf.low_ids[b] == hf.low_ids[*d];
                bad += usize::from(!agrees(code(&eq_v(&p, q, &budget)), want));
                n += 1;
            }
        }
    }
    let msg = format!("{n} pair comparisons over rank <= 2 sets, {bad} violations");
    if bad == 0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion4() -> Outcome1 {
    let budget = ample();
    let nat = natv();
    let k = kappa(&nat);
    let mut bad = 0;
    for m in 0..=32u64 {
        for n in 0..=32u64 {
            let direct = eq_v(&numeral(m), &numeral(n), &budget);
            let via_kappa = k.eq(&Key::Numeral(m), &Key::Numeral(n), &budget);
            let member = eq_v(&nat.child(&Key::Numeral(m)).unwrap(), &numeral(n), &budget);
            for v in [direct, via_kappa, member] {
                bad += usize::from(!agrees(code(&v), m == n));
            }
        }
    }
    let msg = format!("33 x 33 numerals, three views each, {bad} mismatches");
    if bad == 0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

/// Small finite sets with repetition, so κ has non-trivial classes.
fn random_set(rng: &mut ChaCha8Rng, pool: &[VSet], max: usize) -> VSet {
    let n = rng.gen_range(0..=max);
    VSet::from_children((0..n).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect())
}

fn criterion5(hf: &Hf) -> Outcome1 {
    let budget = ample();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pool: Vec<VSet> = hf.low_sets.iter().step_by(3).cloned().collect();
    let fibers: Vec<VSet> = (0..40).map(|_| random_set(&mut rng, &pool, 3)).collect();
    let mut failures = Vec::new();
    let instances = 80;
    for i in 0..instances {
        let a = VSet::from_table(
            atoms(rng.gen_range(0..=4))
                .into_iter()
                .map(|k| (k, pool[rng.gen_range(0..pool.len())].clone()))
                .collect(),
        );
        // equal base members get equal fibers, so the family is extensional
        let mut by_class: Vec<(VSet, VSet)> = Vec::new();
        let mut entries = Vec::new();
        for (k, child) in a.table().unwrap() {
            let fiber = match by_class.iter().find(|(c, _)| eq_v(c, child, &budget).is_holds()) {
                Some((_, f)) => f.clone(),
                None => {
                    let f = fibers[rng.gen_range(0..fibers.len())].clone();
                    by_class.push((child.clone(), f.clone()));
                    f
                }
            };
            entries.push((k.clone(), fiber));
        }
        let g = VFamily::table(&a, entries).unwrap();
        let s = check_kappa_sigma_iso(&a, &g, &budget);
        if !s.is_holds() {
            failures.push(format!("sigma #{i}: {s}"));
        }
        let p = check_kappa_pi_iso(&a, &g, &budget);
        if !p.is_holds() {
            failures.push(format!("pi #{i}: {p}"));
        }
    }
    if failures.is_empty() {
        Ok(format!("{instances} sigma and {instances} pi instances hold"))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion6() -> Outcome1 {
    let reports = run_suite(&SuiteConfig::default());
    let unsound: Vec<&str> = reports.iter().filter(|r| !r.sound()).map(|r| r.rule.as_str()).collect();
    let vacuous: Vec<&str> = reports
        .iter()
        .filter(|r| r.vacuous())
        .map(|r| r.rule.as_str())
        .collect();
    let short = reports.iter().filter(|r| r.cases() < 20).count();
    let msg = format!(
        "{} rules x {DEFAULT_CASES} cases, {} unsound, {} vacuous",
        reports.len(),
        unsound.len(),
        vacuous.len()
    );
    if unsound.is_empty() && vacuous.is_empty() && short == 0 {
        Ok(msg)
    } else {
        Err(format!("{msg}: unsound {unsound:?}, vacuous {vacuous:?}"))
    }
}

/// Per-case outcomes of the rule suite.
fn suite_outcomes(cfg: &CheckConfig) -> Vec<Outcome> {
    let mut out = Vec::new();
    for rule in catalog() {
        let checker = Checker::new(cfg);
        for i in 0..DEFAULT_CASES {
            let inst = gen_instance(&rule, case_seed(0, rule.name, i));
            out.push(check_instance(&checker, &inst).0);
        }
    }
    out
}

fn els(a: &Ty, t: &Tm) -> Sub {
    Sub::els(a.clone(), t.clone())
}

fn closed_computations() -> Vec<(&'static str, Judg)> {
    let mut js = Vec::new();
    let eq = |s: Tm, t: Tm, a: Ty| Judg::EltEq(Ctx::Empty, s, t, a);
    // Pi-beta
    for (a, elems) in closed_pool(false) {
        let down = Sub::down(a.clone());
        let bodies = [
            (bool_ty(), tt()),
            (bool_ty(), ff()),
            (a.clone().sub(down.clone()), Tm::Var),
        ];
        for (b, body) in bodies {
            let l = Tm::lam(a.clone(), b.clone(), body.clone());
            for t in &elems {
                js.push((
                    "Pi-beta",
                    eq(
                        Tm::app(a.clone(), b.clone(), l.clone(), t.clone()),
                        body.clone().sub(els(&a, t)),
                        b.clone().sub(els(&a, t)),
                    ),
                ));
            }
        }
    }
    js.push((
        "Pi-beta",
        eq(
            Tm::app(bool_ty(), bool_ty(), Tm::lam(bool_ty(), bool_ty(), not_body()), tt()),
            ff(),
            bool_ty(),
        ),
    ));
    // Sigma-c-1/2
    let sigmas = [
        (bool_ty(), Ty::id(bool_ty(), Tm::Var, tt()), vec![(tt(), Tm::rr(tt()))]),
        (bool_ty(), unit(), vec![(tt(), Tm::rr(Tm::Zero)), (ff(), Tm::Zero)]),
        (
            three(),
            br_bool(),
            vec![(Tm::rg(unit(), bool_ty(), ff()), Tm::brin(tt()))],
        ),
    ];
    for (a, b, pairs) in sigmas {
        for (s, t) in pairs {
            let p = Tm::pr(s.clone(), t.clone());
            js.push(("Sigma-c-1", eq(Tm::pr1(p.clone()), s.clone(), a.clone())));
            js.push(("Sigma-c-2", eq(Tm::pr2(p), t, b.clone().sub(els(&a, &s)))));
        }
    }
    // Nat-c-0 and Nat-c-s on numerals up to 8
    let motives = [
        (Ty::Nat, Tm::Zero, Tm::succ(Tm::succ(Tm::Var))),
        (Ty::Nat, Tm::num(3), Tm::succ(Tm::Var)),
        (bool_ty(), tt(), not_body()),
    ];
    for (c, d, step) in &motives {
        let rec = |n: Tm| Tm::rec(c.clone(), d.clone(), step.clone(), n);
        js.push((
            "Nat-c-0",
            eq(rec(Tm::Zero), d.clone(), c.clone().sub(els(&Ty::Nat, &Tm::Zero))),
        ));
        for n in 0..=8 {
            let sn = Tm::num(n + 1);
            let pair = Sub::pair(els(&Ty::Nat, &Tm::num(n)), c.clone(), rec(Tm::num(n)));
            js.push((
                "Nat-c-s",
                eq(
                    rec(sn.clone()),
                    step.clone().sub(pair),
                    c.clone().sub(els(&Ty::Nat, &sn)),
                ),
            ));
        }
    }
    for n in 0..=8 {
        js.push((
            "Nat-c-s",
            eq(
                Tm::rec(Ty::Nat, Tm::Zero, Tm::succ(Tm::succ(Tm::Var)), Tm::num(n)),
                Tm::num(2 * n),
                Ty::Nat,
            ),
        ));
        let parity = if n % 2 == 0 { tt() } else { ff() };
        js.push((
            "Nat-c-s",
            eq(Tm::rec(bool_ty(), tt(), not_body(), Tm::num(n)), parity, bool_ty()),
        ));
    }
    // Sum-c1/c2, with a constant and a dependent motive
    let (a, b) = (unit(), bool_ty());
    let ab = Ty::sum(a.clone(), b.clone());
    let motives = [
        (bool_ty(), ff(), not_body()),
        (
            ab.clone().sub(Sub::down(ab.clone())),
            Tm::lf(a.clone(), b.clone(), Tm::Var),
            Tm::rg(a.clone(), b.clone(), Tm::Var),
        ),
    ];
    for (c, d, f) in &motives {
        for s in [Tm::Zero, Tm::rr(Tm::Zero)] {
            let l = Tm::lf(a.clone(), b.clone(), s.clone());
            js.push((
                "Sum-c1",
                eq(
                    Tm::sumrec(a.clone(), b.clone(), c.clone(), d.clone(), f.clone(), l.clone()),
                    d.clone().sub(els(&a, &s)),
                    c.clone().sub(els(&ab, &l)),
                ),
            ));
        }
        for t in [tt(), ff()] {
            let r = Tm::rg(a.clone(), b.clone(), t.clone());
            js.push((
                "Sum-c2",
                eq(
                    Tm::sumrec(a.clone(), b.clone(), c.clone(), d.clone(), f.clone(), r.clone()),
                    f.clone().sub(els(&b, &t)),
                    c.clone().sub(els(&ab, &r)),
                ),
            ));
        }
    }
    // Br-beta
    let brs = [
        (bool_ty(), unit(), Tm::Zero, vec![tt(), ff()]),
        (
            three(),
            br_bool(),
            Tm::brin(tt()),
            vec![Tm::lf(unit(), bool_ty(), Tm::Zero), Tm::rg(unit(), bool_ty(), tt())],
        ),
        (sig_dep(), unit(), Tm::rr(Tm::Zero), vec![Tm::pr(tt(), Tm::rr(tt()))]),
    ];
    for (a, b, body, elems) in brs {
        for t in elems {
            js.push((
                "Br-beta",
                eq(
                    Tm::wh(a.clone(), b.clone(), Tm::brin(t.clone()), body.clone()),
                    body.clone().sub(els(&a, &t)),
                    b.clone(),
                ),
            ));
        }
    }
    js
}

fn criterion7() -> Outcome1 {
    let checker = Checker::new(&CheckConfig::default());
    let mut bad = Vec::new();
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for (name, j) in closed_computations() {
        let v = checker.check(&j);
        if !v.is_holds() {
            bad.push(format!("{name}: {j} gave {}", v.label()));
        }
        *counts.entry(name).or_default() += 1;
    }
    // closed instances drawn from the rule generators
    let names = [
        "Pi-beta-gen",
        "Sigma-c-1",
        "Sigma-c-2",
        "Nat-c-0",
        "Nat-c-s",
        "Sum-c1",
        "Sum-c2",
        "Br-beta",
    ];
    let mut drawn = 0;
    for rule in catalog().into_iter().filter(|r| names.contains(&r.name)) {
        for i in 0..200 {
            let inst = gen_instance(&rule, case_seed(11, rule.name, i));
            if inst.conclusion.ctx() != &Ctx::Empty {
                continue;
            }
            let (o, v) = check_instance(&checker, &inst);
            if o.non_vacuous() {
                drawn += 1;
                if !v.is_holds() {
                    bad.push(format!("{}: {} gave {}", rule.name, inst.conclusion, v.label()));
                }
            }
        }
    }
    let mut names: Vec<_> = counts.iter().map(|(k, v)| format!("{k} {v}")).collect();
    names.sort();
    let msg = format!("{}, plus {drawn} generated closed instances", names.join(", "));
    if bad.is_empty() {
        Ok(msg)
    } else {
        Err(format!("{msg}: {}", bad.join("; ")))
    }
}

fn criterion8() -> Outcome1 {
    let budget = ample();
    let interp = Interp::new(budget.clone());
    let mut inhabited = 0;
    let mut members = 0;
    let mut bad = Vec::new();
    for seed in 0..400u64 {
        let mut g = Gen::new(seed, seed % 4 == 0);
        let ctx = g.ctx();
        let a = g.ty(&ctx);
        let x = g.elt(&ctx, &a);
        let y = if g.chance(0.5) { x.clone() } else { g.elt(&ctx, &a) };
        let id = Ty::id(a, x, y);
        let Ok((points, _)) = interp.points(&ctx) else { continue };
        for p in points.iter().take(6) {
            let Ok(set) = interp.ty(&ctx, &id, p) else { continue };
            let (ms, _) = set.members_up_to(budget.nat_bound);
            if ms.is_empty() {
                continue;
            }
            inhabited += 1;
            for (_, u) in &ms {
                for (_, v) in &ms {
                    members += 1;
                    if !eq_v(u, v, &budget).is_holds() {
                        bad.push(format!("{id} at {p}"));
                    }
                }
            }
        }
    }
    let msg = format!(
        "{inhabited} inhabited identity sets, {members} member pairs, {} violations",
        bad.len()
    );
    if bad.is_empty() && inhabited >= 50 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion9() -> Outcome1 {
    let budget = ample();
    let interp = Interp::new(budget.clone());
    let x = unit_point();
    let corpus = [
        Ty::Nat,
        Ty::N0,
        unit(),
        bool_ty(),
        three(),
        Ty::pi(bool_ty(), bool_ty()),
        Ty::pi(Ty::N0, Ty::Nat),
        Ty::pi(three(), br_bool()),
        Ty::sigma(bool_ty(), unit()),
        sig_dep(),
        Ty::sum(Ty::N0, unit()),
        Ty::id(Ty::Nat, Tm::Zero, Tm::Zero),
        Ty::id(bool_ty(), tt(), ff()),
        Ty::id(
            Ty::Nat,
            Tm::num(2),
            Tm::rec(Ty::Nat, Tm::Zero, Tm::succ(Tm::Var), Tm::num(2)),
        ),
        br_bool(),
        Ty::br(Ty::N0),
        Ty::br(Ty::Nat),
    ];
    let mut bad = Vec::new();
    let mut sets = Vec::new();
    for a in &corpus {
        let set = match interp.ty(&Ctx::Empty, a, &x) {
            Ok(s) => s,
            Err(e) => {
                bad.push(format!("{a}: {e}"));
                continue;
            }
        };
        let cert = match interp.code_of_ty(&Ctx::Empty, a, &x, 0) {
            Ok(Some(c)) => c,
            other => {
                bad.push(format!("{a}: no code ({other:?})"));
                continue;
            }
        };
        let v = check_mem_u(&set, 0, &cert, &budget);
        let ok = v.is_holds() || (*a == Ty::Nat && v.passes());
        if !ok {
            bad.push(format!("{a}: {}", v.label()));
        }
        sets.push(set);
    }
    let cumul = mem_v(&vml_core::universe::v_k(0), &vml_core::universe::v_k(1), &budget);
    if !cumul.is_holds() {
        bad.push(format!("v_0 in v_1: {}", cumul.label()));
    }
    let sub = subset_v(&VSet::from_children(sets), &vml_core::universe::v_k(1), &budget);
    if !sub.is_holds() {
        bad.push(format!("corpus subset of v_1: {}", sub.label()));
    }
    let msg = format!("{} level-0 codes, cumulativity and subset", corpus.len());
    if bad.is_empty() {
        Ok(msg)
    } else {
        Err(format!("{msg}: {}", bad.join("; ")))
    }
}

fn criterion10(hf: &Hf, eq_base: &[u8]) -> Outcome1 {
    let doubled = Budget::new(2 * DEFAULT_FUEL, DEFAULT_NAT_BOUND);
    let eq_more = eq_suite(hf, &doubled);
    let changed_eq = eq_base.iter().zip(&eq_more).filter(|(a, b)| **a != 2 && a != b).count();
    let base = suite_outcomes(&CheckConfig::default());
    let more = suite_outcomes(&CheckConfig {
        fuel: 2 * DEFAULT_FUEL,
        ..CheckConfig::default()
    });
    let definitive = |o: &Outcome| matches!(o, Outcome::Holds | Outcome::Fails | Outcome::PremiseFails);
    let changed_rules = base.iter().zip(&more).filter(|(a, b)| definitive(a) && a != b).count();
    let msg = format!(
        "{} equality verdicts and {} rule cases re-run at fuel {}: {changed_eq} + {changed_rules} changed",
        eq_base.len(),
        base.len(),
        2 * DEFAULT_FUEL
    );
    if changed_eq == 0 && changed_rules == 0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion11() -> Outcome1 {
    let exp = common::expected();
    let mut bad = Vec::new();
    for (file, code) in &exp {
        let out = common::vml(&["--json", "check", file]);
        if out.status.code() != Some(*code) {
            bad.push(format!("{file}: exit {:?}, want {code}", out.status.code()));
            continue;
        }
        match serde_json::from_slice::<Value>(&out.stdout) {
            Ok(v) => {
                if let Err(e) = common::check_schema(file, *code, &v) {
                    bad.push(e);
                }
            }
            Err(e) => bad.push(format!("{file}: {e}")),
        }
    }
    let msg = format!("{} fixtures", exp.len());
    if bad.is_empty() && exp.len() >= 20 {
        Ok(msg)
    } else {
        Err(format!("{msg}: {}", bad.join("; ")))
    }
}

fn main() {
    let mut results: Vec<(usize, &str, Outcome1, f64)> = Vec::new();
    let mut run = |n: usize, name: &'static str, f: &mut dyn FnMut() -> Outcome1| {
        let start = Instant::now();
        let r = f();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match &r {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        println!("[{tag}] {n:>2} {name}: {detail} ({secs:.1}s)");
        results.push((n, name, r, secs));
    };
    let hf = Hf::new();
    let mut eq_base = Vec::new();
    run(1, "bisimulation oracle", &mut || {
        eq_base = eq_suite(&hf, &ample());
        criterion1(&hf, &eq_base)
    });
    run(2, "equivalence and extensionality", &mut || criterion2(&hf, &eq_base));
    run(3, "pairing", &mut || criterion3(&hf));
    run(4, "numerals", &mut criterion4);
    run(5, "kappa commutes with sigma and pi", &mut || criterion5(&hf));
    run(6, "rule soundness suite", &mut criterion6);
    run(7, "computation rules", &mut criterion7);
    run(8, "uniqueness of identity proofs", &mut criterion8);
    run(9, "universes", &mut criterion9);
    run(10, "budget monotonicity", &mut || criterion10(&hf, &eq_base));
    run(11, "cli golden corpus", &mut criterion11);
    let failed = results.iter().filter(|r| r.2.is_err()).count();
    println!(
        "acceptance: {} of {} criteria pass",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
