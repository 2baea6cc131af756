//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//!
//! Arithmetic is exact, so every comparison is equality. Wall-clock limits are
//! the only tolerances and are pinned below.

use std::cell::RefCell;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vardec_cli::format::{parse_document, Document, Problem, Verdict};
use vardec_cli::gen::{self, Family, Params, Prop};
use vardec_core::cert::{prove, prove_compressed, verify, LambdaProof};
use vardec_core::cover::{cover, enforce_deps, excess_dependency, CoverConfig};
use vardec_core::sat::{entails_formula, entails_pred};
use vardec_core::vardec::{check_decomposition, decide, mondec, Config, NonDecWitness, Outcome};
use vardec_core::{Cmp, CompiledFormula, Formula, LinExpr, LinearPredicate, Partition, PredicateSet, Rel};
use vardec_linalg::{frac, int, Q};
use vardec_testkit::mutate::mutants;
use vardec_testkit::strategies::{case, Case};
use vardec_testkit::suites;

const REDUCTION_LIMIT: Duration = Duration::from_secs(1);
const SIX_VAR_LIMIT: Duration = Duration::from_secs(5);
const CERTIFICATE_LIMIT: Duration = Duration::from_secs(1);
const ADD_LIMIT: Duration = Duration::from_secs(60);
/// Shared by every heuristics-off grid3d run; exceeding it counts as a permitted timeout.
const HEURISTICS_OFF_BUDGET: Duration = Duration::from_secs(300);
const COMPUTE_D_LIMIT: Duration = Duration::from_secs(30);
const COMPUTE_D_INSTANCES: u32 = 200;
const BINARY_REDUCTION_LIMIT: Duration = Duration::from_secs(1);
const HARDNESS_LIMIT: Duration = Duration::from_secs(60);
const HARDNESS_FORMULAS: usize = 50;
const SUITE_CASES: u32 = 100;
const MUTANTS_PER_PROOF: usize = 100;
const CORPUS_RANDOM_CASES: u32 = 60;

const PROPERTY_SUITES: [&str; 13] = [
    "rank-nullity",
    "zassenhaus",
    "double-complement",
    "predicate-convexity",
    "nelson-oppen",
    "fixed-vars-monotone",
    "fixed-vars-equalities",
    "pi-complex-stability",
    "cover-entailed",
    "recursion-depth",
    "disjunct-exclusivity",
    "negation-closure",
    "heuristics-agree",
];

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant, what: &str) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("{what} took {took:.2?}, limit {limit:?}"))?;
    Ok(took)
}

// ---- builders ----

fn v(i: usize) -> LinExpr {
    LinExpr::var(i)
}

fn k(c: i64) -> LinExpr {
    LinExpr::constant(int(c))
}

fn atom(terms: &[(usize, i64)], c: i64, rel: Rel) -> LinearPredicate {
    LinearPredicate::new(terms.iter().map(|&(x, a)| (x, int(a))), int(c), rel).unwrap()
}

fn set(ps: &[LinearPredicate]) -> PredicateSet {
    ps.iter().cloned().collect()
}

/// `a = λ b` for some `λ > 0`, comparing dense coefficients and constants.
fn positive_multiple(n: usize, a: &LinearPredicate, b: &LinearPredicate) -> bool {
    if a.rel() != b.rel() {
        return false;
    }
    let mut xa = a.dense(n);
    xa.push(a.constant().clone());
    let mut xb = b.dense(n);
    xb.push(b.constant().clone());
    let Some(i) = xb.iter().position(|c| *c != int(0)) else { return false };
    let lambda = &xa[i] / &xb[i];
    lambda > int(0) && xa.iter().zip(&xb).all(|(p, q)| *p == &lambda * q)
}

/// Two vectors spanning one line.
fn parallel(a: &[Q], b: &[Q]) -> bool {
    let Some(i) = b.iter().position(|c| *c != int(0)) else { return false };
    let lambda = &a[i] / &b[i];
    lambda != int(0) && a.iter().zip(b).all(|(p, q)| *p == &lambda * q)
}

// ---- 1 ----

fn reduction_example() -> Check {
    let start = Instant::now();
    let ne = |p: LinExpr| Formula::compare(p, Cmp::Ne, k(0));
    let phi = Formula::Or(vec![ne(v(0) + v(1) - k(2)), ne(v(0) - v(1))]);
    let pi = Partition::singletons(2);
    let Outcome::Decomposable(d) = decide(2, &phi, &pi, &Config::default()).map_err(|e| e.to_string())? else {
        return Err("not decomposable".into());
    };
    let target = Formula::Or(vec![ne(v(0) - k(1)), ne(v(1) - k(1))]);
    let psi = d.formula();
    // two-sided: every term of each side entails the other side
    let target_terms =
        [Rel::Lt, Rel::Gt].into_iter().flat_map(|r| [set(&[atom(&[(0, 1)], 1, r)]), set(&[atom(&[(1, 1)], 1, r)])]);
    let psi_c = CompiledFormula::new(&psi);
    let target_c = CompiledFormula::new(&target);
    ensure(target_terms.clone().all(|t| entails_formula(2, &t, &psi_c)), || "x≠1 ∨ y≠1 does not entail the output".into())?;
    ensure(d.terms.iter().all(|t| entails_formula(2, &t.preds, &target_c)), || "output does not entail x≠1 ∨ y≠1".into())?;

    let gamma = set(&[atom(&[(0, 1), (1, 1)], 2, Rel::Lt), atom(&[(0, 1), (1, -1)], 0, Rel::Lt)]);
    let c = cover(2, &pi, &gamma, &CompiledFormula::new(&phi), &CoverConfig::default()).map_err(|e| e.to_string())?;
    let half = atom(&[(0, 1)], 1, Rel::Lt);
    ensure(entails_formula(2, &set(&[half.clone()]), &CompiledFormula::new(&c.formula())), || "x<1 does not entail the covering".into())?;
    ensure(c.terms.iter().all(|t| entails_pred(2, &t.preds, &half)), || "covering does not entail x<1".into())?;
    let took = within(REDUCTION_LIMIT, start, "reduction example")?;
    Ok(format!("decomposition ≡ x≠1 ∨ y≠1, covering ≡ x<1 ({took:.2?})"))
}

// ---- 2 ----

fn six_var_example() -> Check {
    use Rel::*;
    let start = Instant::now();
    let p1 = atom(&[(0, 12), (1, -2), (2, 16), (3, 28), (4, 35), (5, -7)], 0, Eq);
    let p2 = atom(&[(0, 6), (1, -1), (2, 8), (3, 16), (4, 20), (5, -4)], 0, Eq);
    let p3 = atom(&[(0, 4), (1, -1), (2, 4), (3, 1), (4, 1)], 1, Eq);
    let p4 = atom(&[(0, 6), (1, -3), (3, 2), (4, 1), (5, 1)], 0, Eq);
    let p5 = atom(&[(0, 3), (1, -1), (2, 2), (3, 2), (4, 1), (5, 1)], 0, Eq);
    let a = |p: &LinearPredicate, r| Formula::Atom(p.with_rel(r));
    let phi = Formula::And(vec![
        a(&p1, Eq),
        a(&p2, Eq),
        Formula::Or(vec![a(&p3, Lt), a(&p4, Gt)]),
        Formula::implies(a(&p3, Eq), Formula::Or(vec![a(&p5, Lt), a(&p5, Gt)])),
    ]);
    let pi = Partition::new(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
    let Outcome::Decomposable(d) = decide(6, &phi, &pi, &Config::default()).map_err(|e| e.to_string())? else {
        return Err("not decomposable".into());
    };
    ensure(check_decomposition(6, &phi, &pi, &d.formula()), || "decomposition fails the check".into())?;

    let orient = |rels: [Rel; 5]| -> PredicateSet {
        [&p1, &p2, &p3, &p4, &p5].into_iter().zip(rels).map(|(p, r)| p.with_rel(r)).collect()
    };
    let gamma1 = orient([Eq, Eq, Gt, Gt, Lt]);
    let theta = enforce_deps(6, &pi, &gamma1).map_err(|e| e.to_string())?;
    let expected = [atom(&[(0, 6), (1, -1), (2, 8)], 0, Eq), atom(&[(3, -4), (4, -5), (5, 1)], 0, Eq)];
    ensure(theta.len() == 2, || format!("Θ has {} predicates", theta.len()))?;
    for e in &expected {
        ensure(theta.iter().any(|t| positive_multiple(6, t, e)), || format!("{e:?} missing from Θ"))?;
    }
    let omega = orient([Eq, Eq, Eq, Gt, Eq]).union(&theta);
    let ex = excess_dependency(6, &gamma1, &omega, &[0, 1, 2]).map_err(|e| e.to_string())?.ok_or("no X excess")?;
    ensure(ex.basis.len() == 1, || format!("excess of dimension {}", ex.basis.len()))?;
    let w = [frac(-31, 22), int(1), frac(13, 11)];
    ensure(parallel(&ex.basis[0], &w), || format!("witness {:?} not parallel to (−31/22, 1, 13/11)", ex.basis[0]))?;

    let compiled = CompiledFormula::new(&phi);
    let c = cover(6, &pi, &gamma1, &compiled, &CoverConfig::default()).map_err(|e| e.to_string())?;
    ensure(entails_formula(6, &PredicateSet::new(), &CompiledFormula::new(&Formula::implies(c.formula(), phi.clone()))), || {
        "first covering does not entail φ".into()
    })?;
    let took = within(SIX_VAR_LIMIT, start, "six-variable example")?;
    Ok(format!("Θ matches up to scaling, witness ∥ (−31/22, 1, 13/11), ψ_Γ1 ⊨ φ ({took:.2?})"))
}

// ---- 3 ----

fn diagonal() -> LinearPredicate {
    atom(&[(0, 1), (1, -1)], 0, Rel::Eq)
}

fn handcrafted(doubled: bool) -> LambdaProof {
    let gt = diag_rel(Rel::Gt);
    let eq = diag_rel(Rel::Eq);
    // 2x = 2y has the same canonical atom, so the doubled proof is the same four sets
    let prime = |p: &LinearPredicate| if doubled { set(&[p.clone(), p.clone()]) } else { set(&[p.clone()]) };
    LambdaProof { lambda0: set(&[gt.clone()]), lambda1: set(&[eq.clone()]), lambda0p: prime(&gt), lambda1p: prime(&eq) }
}

fn diag_rel(r: Rel) -> LinearPredicate {
    diagonal().with_rel(r)
}

fn certificates() -> Check {
    let x_eq_y = Formula::compare(v(0), Cmp::Eq, v(1));
    let doubled = Formula::And(vec![x_eq_y.clone(), Formula::compare(v(0).scale(&int(2)), Cmp::Eq, v(1).scale(&int(2)))]);
    let pi = Partition::singletons(2);
    let mut notes = Vec::new();
    for (name, phi, hand) in [("x=y", &x_eq_y, handcrafted(false)), ("x=y ∧ 2x=2y", &doubled, handcrafted(true))] {
        let start = Instant::now();
        let Outcome::NonDecomposable(w) = mondec(2, phi, &Config::default()).map_err(|e| e.to_string())? else {
            return Err(format!("{name} decomposed"));
        };
        for proof in [prove(2, phi, &w), prove_compressed(2, phi, &w)] {
            let proof = proof.map_err(|e| e.to_string())?;
            verify(2, phi, &w.partition, &proof).map_err(|r| format!("{name}: generated proof rejected: {r}"))?;
        }
        verify(2, phi, &pi, &hand).map_err(|r| format!("{name}: handcrafted proof rejected: {r}"))?;
        let took = within(CERTIFICATE_LIMIT, start, name)?;
        notes.push(format!("{name} {took:.2?}"));
    }
    Ok(format!("both NonDecomposable, generated and handcrafted proofs accepted ({})", notes.join(", ")))
}

// ---- 4 ----

fn generated(family: Family, given: &[(&str, i64)], seed: u64) -> Problem {
    let given: Vec<(String, i64)> = given.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    gen::generate(family, &Params::resolve(family, &given).unwrap(), seed).unwrap()
}

fn decides_decomposable(p: &Problem, cfg: &Config) -> Result<Duration, String> {
    let n = p.vars.len();
    let pi = p.partition.clone().unwrap();
    let start = Instant::now();
    let outcome = decide(n, &p.formula, &pi, cfg).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let Outcome::Decomposable(d) = outcome else { return Err("not decomposable".into()) };
    ensure(check_decomposition(n, &p.formula, &pi, &d.formula()), || "check_decomposition failed".into())?;
    Ok(took)
}

fn add_family() -> Check {
    let mut times = Vec::new();
    for n in 1..=5 {
        let took = decides_decomposable(&generated(Family::Add, &[("n", n)], 0), &Config::default())
            .map_err(|e| format!("add n={n}: {e}"))?;
        ensure(took < ADD_LIMIT, || format!("add n={n} took {took:.2?}"))?;
        times.push(format!("{took:.1?}"));
    }
    Ok(format!("n=1..5 decomposable, checked ({})", times.join(", ")))
}

// ---- 5 ----

struct Run {
    code: Option<i32>,
    stdout: String,
}

/// Runs the binary on `stdin`, killing it once `limit` passes.
fn run_binary(args: &[&str], stdin: &str, limit: Duration) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_vardec"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .expect("spawn vardec");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let start = Instant::now();
    loop {
        if let Some(status) = child.try_wait().unwrap() {
            let out = child.wait_with_output().unwrap();
            return Run { code: status.code(), stdout: String::from_utf8(out.stdout).unwrap() };
        }
        if start.elapsed() >= limit {
            child.kill().ok();
            child.wait().ok();
            return Run { code: None, stdout: String::new() };
        }
        std::thread::sleep(Duration::from_millis(20));
    }
}

fn grid_families() -> Check {
    let mut notes = Vec::new();
    let mut total = Duration::ZERO;
    for n in 1..=8 {
        let p = generated(Family::Grid2d, &[("n", n), ("k", 32)], n as u64);
        total += decides_decomposable(&p, &Config::default()).map_err(|e| format!("grid2d n={n}: {e}"))?;
    }
    notes.push(format!("grid2d n=1..8 k=32 in {total:.1?}"));
    let mut on_times = Vec::new();
    for kk in 1..=6 {
        let p = generated(Family::Grid3d, &[("k", kk)], kk as u64);
        let took = decides_decomposable(&p, &Config::default()).map_err(|e| format!("grid3d k={kk}: {e}"))?;
        on_times.push(took);
    }
    notes.push(format!("grid3d k=1..6 in {:.1?}", on_times.iter().sum::<Duration>()));

    // heuristics off, in a child process so a timeout can be enforced
    let mut budget = HEURISTICS_OFF_BUDGET;
    let mut off = Vec::new();
    for kk in 1..=6 {
        let p = generated(Family::Grid3d, &[("k", kk)], kk as u64);
        let start = Instant::now();
        let run = run_binary(&["decide", "--heuristics", "off", "--jobs", "1"], &Document::from_problem(&p).to_string(), budget);
        let took = start.elapsed();
        let Some(code) = run.code else {
            off.push(format!("k={kk} timed out (permitted)"));
            break;
        };
        ensure(code == 0, || format!("grid3d k={kk} heuristics off: exit {code}"))?;
        let doc = parse_document(&run.stdout).map_err(|e| e.to_string())?;
        ensure(doc.result == Some(Verdict::Decomposable), || format!("grid3d k={kk} heuristics off: not decomposable"))?;
        let psi = doc.decomposition.ok_or("no decomposition printed")?;
        ensure(check_decomposition(3, &p.formula, p.partition.as_ref().unwrap(), &psi), || {
            format!("grid3d k={kk} heuristics off: check_decomposition failed")
        })?;
        off.push(format!("k={kk} {took:.1?} vs {:.1?} on", on_times[kk as usize - 1]));
        budget = budget.saturating_sub(took);
    }
    notes.push(format!("heuristics off: {}", off.join(", ")));
    Ok(notes.join("; "))
}

// ---- 6, 9 ----

fn suite(name: &str, cases: u32) -> Result<(), String> {
    let s = suites::find(name).ok_or_else(|| format!("no suite `{name}`"))?;
    (s.run)(cases).map_err(|e| format!("{name}: {e}"))
}

fn compute_d() -> Check {
    let start = Instant::now();
    suite("compute-d", COMPUTE_D_INSTANCES)?;
    let took = within(COMPUTE_D_LIMIT, start, "compute_D")?;
    Ok(format!("{COMPUTE_D_INSTANCES} instances match enumeration within n^(d+1)+d+1 ({took:.2?})"))
}

fn property_suites() -> Check {
    let start = Instant::now();
    for name in PROPERTY_SUITES {
        suite(name, SUITE_CASES)?;
    }
    Ok(format!("{} suites × {SUITE_CASES} cases ({:.1?})", PROPERTY_SUITES.len(), start.elapsed()))
}

// ---- 7 ----

fn binary_reduction() -> Check {
    let start = Instant::now();
    for k in 2..=16usize {
        let pi = Partition::singletons(k);
        let s = pi.binary_reduction().map_err(|e| e.to_string())?;
        let log = (k as f64).log2().ceil() as usize;
        ensure(s.len() == log, || format!("|Π|={k}: {} partitions", s.len()))?;
        ensure(s.iter().all(Partition::is_binary), || format!("|Π|={k}: non-binary output"))?;
        let meet = s.iter().skip(1).try_fold(s[0].clone(), |m, p| m.meet(p)).map_err(|e| e.to_string())?;
        ensure(meet == pi, || format!("|Π|={k}: meet differs"))?;
    }
    // x1..x10 as 0..9
    let pi = Partition::new(10, vec![vec![0, 1], vec![2], vec![3], vec![4, 5], vec![6, 7, 8], vec![9]]).unwrap();
    let expected = [
        vec![vec![0, 1, 2, 3, 4, 5], vec![6, 7, 8, 9]],
        vec![vec![0, 1, 2, 6, 7, 8, 9], vec![3, 4, 5]],
        vec![vec![0, 1, 3, 6, 7, 8], vec![2, 4, 5, 9]],
    ];
    let expected: Vec<Partition> = expected.into_iter().map(|b| Partition::new(10, b).unwrap()).collect();
    ensure(pi.binary_reduction().map_err(|e| e.to_string())? == expected, || "six-block example differs".into())?;
    let took = within(BINARY_REDUCTION_LIMIT, start, "binary reduction")?;
    Ok(format!("|Π|=2..16 and the six-block example ({took:.2?})"))
}

// ---- 8 ----

fn satisfiable(p: &Prop, vars: usize) -> bool {
    (0..1u32 << vars).any(|bits| p.eval(&(0..vars).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>()))
}

fn hardness_formulas() -> Vec<(Prop, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(suites::SEED);
    let a = || Prop::Var(0);
    let mut out = vec![(Prop::And(vec![a(), Prop::Not(Box::new(a()))]), 1), (a(), 1)];
    while out.len() < HARDNESS_FORMULAS {
        let vars = rng.gen_range(1..=3);
        let clauses = rng.gen_range(1..=6);
        out.push((Prop::random_cnf(vars, clauses, &mut rng), vars));
    }
    out
}

fn hardness() -> Check {
    let start = Instant::now();
    let mut unsat = 0;
    for (i, (prop, vars)) in hardness_formulas().iter().enumerate() {
        let p = gen::prop_unsat(prop, *vars);
        let dec = mondec(p.vars.len(), &p.formula, &Config::default()).map_err(|e| e.to_string())?.is_decomposable();
        let sat = satisfiable(prop, *vars);
        ensure(dec != sat, || format!("formula {i} ({prop:?}): satisfiable={sat} but decomposable={dec}"))?;
        unsat += usize::from(!sat);
    }
    let took = within(HARDNESS_LIMIT, start, "hardness generator")?;
    Ok(format!("{HARDNESS_FORMULAS} formulas ({unsat} unsat) agree with truth tables ({took:.2?})"))
}

// ---- 10 ----

struct Entry {
    name: String,
    n: usize,
    phi: Formula,
    partition: Partition,
    proof: LambdaProof,
}

fn entries_from(name: String, n: usize, phi: &Formula, w: &NonDecWitness) -> Result<Vec<Entry>, String> {
    let mut out = Vec::new();
    for proof in [prove(n, phi, w), prove_compressed(n, phi, w)] {
        let proof = proof.map_err(|e| format!("{name}: {e}"))?;
        out.push(Entry { name: name.clone(), n, phi: phi.clone(), partition: w.partition.clone(), proof });
    }
    Ok(out)
}

fn corpus() -> Result<Vec<Entry>, String> {
    let mut out = Vec::new();
    let two = Partition::singletons(2);
    let x_eq_y = Formula::compare(v(0), Cmp::Eq, v(1));
    let doubled = Formula::And(vec![x_eq_y.clone(), Formula::compare(v(0).scale(&int(2)), Cmp::Eq, v(1).scale(&int(2)))]);
    for (name, phi, doubled_proof) in [("x=y", &x_eq_y, false), ("x=y ∧ 2x=2y", &doubled, true)] {
        out.push(Entry { name: format!("{name} handcrafted"), n: 2, phi: phi.clone(), partition: two.clone(), proof: handcrafted(doubled_proof) });
        if let Outcome::NonDecomposable(w) = mondec(2, phi, &Config::default()).map_err(|e| e.to_string())? {
            out.extend(entries_from(name.to_string(), 2, phi, &w)?);
        }
    }
    for (i, (prop, vars)) in hardness_formulas().iter().enumerate().take(12) {
        let p = gen::prop_unsat(prop, *vars);
        let n = p.vars.len();
        if let Outcome::NonDecomposable(w) = mondec(n, &p.formula, &Config::default()).map_err(|e| e.to_string())? {
            out.extend(entries_from(format!("prop_unsat #{i}"), n, &p.formula, &w)?);
        }
    }
    for seed in 0..6 {
        let p = generated(Family::PropDnf, &[("vars", 2), ("terms", 2)], seed);
        let n = p.vars.len();
        if let Outcome::NonDecomposable(w) = mondec(n, &p.formula, &Config::default()).map_err(|e| e.to_string())? {
            out.extend(entries_from(format!("prop_dnf seed {seed}"), n, &p.formula, &w)?);
        }
    }
    let random = RefCell::new(Vec::new());
    suites::run(CORPUS_RANDOM_CASES, case(2..=3, 3, 2), |c: Case| {
        if let Ok(Outcome::NonDecomposable(w)) = decide(c.n, &c.phi, &c.partition, &Config::default()) {
            random.borrow_mut().push((c, w));
        }
        Ok(())
    })?;
    for (i, (c, w)) in random.into_inner().iter().enumerate() {
        out.extend(entries_from(format!("random #{i}"), c.n, &c.phi, w)?);
    }
    Ok(out)
}

fn certificate_fuzzing() -> Check {
    let start = Instant::now();
    let corpus = corpus()?;
    let mut rejected = 0;
    for (i, e) in corpus.iter().enumerate() {
        verify(e.n, &e.phi, &e.partition, &e.proof).map_err(|r| format!("{}: proof rejected: {r}", e.name))?;
        // Accept ⇒ decide says NonDecomposable on the same inputs
        let outcome = decide(e.n, &e.phi, &e.partition, &Config::default()).map_err(|err| err.to_string())?;
        ensure(!outcome.is_decomposable(), || format!("{}: accepted proof but decide says Decomposable", e.name))?;
        let bases = CompiledFormula::new(&e.phi).bases().to_vec();
        let ms = mutants(&e.proof, &bases, MUTANTS_PER_PROOF, suites::SEED + i as u64);
        ensure(ms.len() == MUTANTS_PER_PROOF, || format!("{}: only {} mutants", e.name, ms.len()))?;
        for (kind, m) in ms {
            ensure(verify(e.n, &e.phi, &e.partition, &m).is_err(), || format!("{}: {kind:?} mutant accepted", e.name))?;
            rejected += 1;
        }
    }
    Ok(format!("{} proofs accepted and confirmed by decide, {rejected} mutants rejected ({:.1?})", corpus.len(), start.elapsed()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("reduction example", reduction_example),
        ("six-variable worked example", six_var_example),
        ("non-decomposability certificates", certificates),
        ("add family", add_family),
        ("grid families", grid_families),
        ("compute_D", compute_d),
        ("binary reduction", binary_reduction),
        ("hardness generator", hardness),
        ("property suites", property_suites),
        ("certificate fuzzing", certificate_fuzzing),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
        std::io::stdout().flush().ok();
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
