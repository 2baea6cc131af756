//! Property suites, each runnable with a case budget and a fixed seed.

use std::fmt::Debug;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};
use vardec_core::cert::{open_cube, prove, prove_compressed, verify};
use vardec_core::cover::{compute_d, cover, dependency_space, enforce_deps, CoverConfig};
use vardec_core::disjunct::{self, disjuncts};
use vardec_core::sat::{
    entails_formula, entails_pred, find_model, fixed_vars, is_pi_simple, is_sat, model_bits, sat_model, small_model,
    small_model_bit_bound, PiStatus,
};
use vardec_core::vardec::{check_decomposition, decide, Config as DecideConfig, Outcome};
use vardec_core::{CompiledFormula, Formula, LinearPredicate, Partition, PredicateSet, Rel};
use vardec_linalg::{intersect, kernel_basis, orth_complement, Q};

use crate::mutate;
use crate::oracle;
use crate::strategies::*;

/// Seed shared by every suite.
pub const SEED: u64 = 0x5eed_2024;

pub type SuiteResult = Result<(), String>;

#[derive(Clone, Copy)]
pub struct Suite {
    pub name: &'static str,
    pub run: fn(u32) -> SuiteResult,
}

/// Runs `test` on `cases` values of `strategy` from the fixed seed, shrinking failures.
pub fn run<S>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> SuiteResult
where
    S: Strategy,
    S::Value: Debug,
{
    let config = Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        max_shrink_iters: 256,
        ..Config::default()
    };
    TestRunner::new(config).run(&strategy, test).map_err(|e| e.to_string())
}

macro_rules! suites {
    ($($name:literal => $f:ident),* $(,)?) => {
        /// Every suite, in a stable order.
        pub const ALL: &[Suite] = &[$(Suite { name: $name, run: $f }),*];
    };
}

suites! {
    "rank-nullity" => rank_nullity,
    "zassenhaus" => zassenhaus,
    "double-complement" => double_complement,
    "sat-vs-oracle" => sat_vs_oracle,
    "small-model-bits" => small_model_bits,
    "predicate-convexity" => predicate_convexity,
    "three-way-convexity" => three_way_convexity,
    "nelson-oppen" => nelson_oppen,
    "fixed-vars-monotone" => fixed_vars_monotone,
    "fixed-vars-equalities" => fixed_vars_equalities,
    "pi-complex-stability" => pi_complex_stability,
    "union-lemma" => union_lemma,
    "binary-reduction" => binary_reduction,
    "meet-laws" => meet_laws,
    "disjunct-exclusivity" => disjunct_exclusivity,
    "compute-d" => compute_d_regions,
    "cover-entailed" => cover_entailed,
    "recursion-depth" => recursion_depth,
    "dependency-equality" => dependency_equality,
    "two-sided" => two_sided,
    "reduction-coherence" => reduction_coherence,
    "negation-closure" => negation_closure,
    "heuristics-agree" => heuristics_agree,
    "skip-agree" => skip_agree,
    "certificates" => certificates,
    "cube-containment" => cube_containment,
}

pub fn find(name: &str) -> Option<Suite> {
    ALL.iter().copied().find(|s| s.name == name)
}

fn fail(msg: impl Into<String>) -> TestCaseError {
    TestCaseError::fail(msg.into())
}

// ---- exact linear algebra ----

pub fn rank_nullity(cases: u32) -> SuiteResult {
    run(cases, matrix(), |m| {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.dim() + m.rank(), m.cols());
        for v in k.basis() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(num_traits::Zero::is_zero));
        }
        Ok(())
    })
}

pub fn zassenhaus(cases: u32) -> SuiteResult {
    run(cases, subspace_pair(), |(u, v)| {
        let sum = u.sum(&v).unwrap();
        let cap = intersect(&u, &v).unwrap();
        prop_assert_eq!(u.dim() + v.dim(), sum.dim() + cap.dim());
        for w in cap.basis() {
            prop_assert!(u.contains(w).unwrap() && v.contains(w).unwrap());
        }
        Ok(())
    })
}

pub fn double_complement(cases: u32) -> SuiteResult {
    run(cases, subspace_pair(), |(u, _)| {
        let c = orth_complement(&u);
        prop_assert!(orth_complement(&c).spans_equal(&u).unwrap());
        prop_assert_eq!(u.dim() + c.dim(), u.ambient_dim());
        Ok(())
    })
}

// ---- feasibility ----

fn system() -> impl Strategy<Value = (usize, Vec<LinearPredicate>)> {
    (1usize..=4).prop_flat_map(|n| (Just(n), prop::collection::vec(predicate(n, 3), 1..=6)))
}

pub fn sat_vs_oracle(cases: u32) -> SuiteResult {
    run(cases, system(), |(n, preds)| {
        let model = sat_model(n, &preds);
        prop_assert_eq!(model.is_some(), oracle::feasible(n, &preds));
        if let Some(m) = model {
            prop_assert!(preds.iter().all(|p| p.holds(&m)), "model {:?} violates the system", m);
        }
        Ok(())
    })
}

pub fn small_model_bits(cases: u32) -> SuiteResult {
    run(cases, system(), |(n, preds)| {
        let gamma: PredicateSet = preds.into_iter().collect();
        if let Ok(m) = small_model(n, &gamma) {
            prop_assert!(gamma.holds(&m));
            prop_assert!(model_bits(&m) <= small_model_bit_bound(n, &gamma));
        }
        Ok(())
    })
}

fn set_and_atom(k: i64) -> impl Strategy<Value = (usize, PredicateSet, LinearPredicate)> {
    (1usize..=3).prop_flat_map(move |n| (Just(n), predicate_set(n, k, 0..=4), equality(n, k)))
}

pub fn predicate_convexity(cases: u32) -> SuiteResult {
    run(cases, set_and_atom(2), |(n, lambda, p)| {
        let sat = |r: Rel| is_sat(n, lambda.with(p.with_rel(r)).iter());
        if sat(Rel::Lt) && sat(Rel::Gt) {
            prop_assert!(sat(Rel::Eq));
        }
        Ok(())
    })
}

pub fn three_way_convexity(cases: u32) -> SuiteResult {
    run(cases, set_and_atom(2), |(n, gamma, p)| {
        if !is_sat(n, gamma.iter()) {
            return Ok(());
        }
        for third in Rel::ALL {
            // Γ ⊨ p^Q ∨ p^R exactly when Γ ∧ p^S is unsatisfiable.
            if !is_sat(n, gamma.with(p.with_rel(third)).iter()) {
                let mut others = Rel::ALL.into_iter().filter(|&r| r != third);
                let (q, r) = (others.next().unwrap(), others.next().unwrap());
                prop_assert!(entails_pred(n, &gamma, &p.with_rel(q)) || entails_pred(n, &gamma, &p.with_rel(r)));
            }
        }
        Ok(())
    })
}

pub fn nelson_oppen(cases: u32) -> SuiteResult {
    let strategy = (1usize..=3).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(equality(n, 2), 0..=2),
            prop::collection::vec(strict_predicate(n, 2), 0..=2),
            prop::collection::vec(equality(n, 2), 1..=3),
        )
    });
    run(cases, strategy, |(n, eqs, stricts, candidates)| {
        let gamma: PredicateSet = eqs.into_iter().chain(stricts).collect();
        if !is_sat(n, gamma.iter()) {
            return Ok(());
        }
        let any = CompiledFormula::new(&Formula::Or(candidates.iter().cloned().map(Formula::Atom).collect()));
        if entails_formula(n, &gamma, &any) {
            prop_assert!(candidates.iter().any(|e| entails_pred(n, &gamma, e)));
        }
        Ok(())
    })
}

pub fn fixed_vars_monotone(cases: u32) -> SuiteResult {
    let strategy = (1usize..=3).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(equality(n, 2), 0..=2),
            prop::collection::vec(equality(n, 2), 0..=2),
            prop::collection::vec(strict_predicate(n, 2), 0..=2),
            prop::collection::vec(strict_predicate(n, 2), 0..=2),
        )
    });
    run(cases, strategy, |(n, eq1, more, s1, s2)| {
        let g1: PredicateSet = eq1.iter().cloned().chain(s1).collect();
        let g2: PredicateSet = eq1.into_iter().chain(more).chain(s2).collect();
        if !is_sat(n, g1.iter()) || !is_sat(n, g2.iter()) {
            return Ok(());
        }
        let (f1, f2) = (fixed_vars(n, &g1), fixed_vars(n, &g2));
        prop_assert!(f1.keys().all(|v| f2.contains_key(v)), "{:?} not within {:?}", f1, f2);
        Ok(())
    })
}

pub fn fixed_vars_equalities(cases: u32) -> SuiteResult {
    let strategy = (1usize..=3).prop_flat_map(|n| (Just(n), predicate_set(n, 2, 0..=5)));
    run(cases, strategy, |(n, gamma)| {
        if !is_sat(n, gamma.iter()) {
            return Ok(());
        }
        let full = fixed_vars(n, &gamma);
        prop_assert_eq!(&full, &fixed_vars(n, &gamma.equalities()));
        prop_assert_eq!(full.keys().copied().collect::<std::collections::BTreeSet<_>>(), oracle::fixed_by_rank(n, &gamma));
        Ok(())
    })
}

fn set_with_partition() -> impl Strategy<Value = (usize, Partition, PredicateSet, LinearPredicate)> {
    (2usize..=4).prop_flat_map(|n| (Just(n), partition(n), predicate_set(n, 2, 0..=4), predicate(n, 2)))
}

pub fn pi_complex_stability(cases: u32) -> SuiteResult {
    run(cases, set_with_partition(), |(n, pi, gamma, p)| {
        let strict = if p.is_eq() { p.with_rel(Rel::Lt) } else { p };
        if is_pi_simple(n, &gamma, &pi) == PiStatus::Complex {
            let grown = gamma.with(strict);
            if is_sat(n, grown.iter()) {
                prop_assert_eq!(is_pi_simple(n, &grown, &pi), PiStatus::Complex);
            }
        }
        Ok(())
    })
}

/// Splitting `Λ` three ways on an atom: `Λ` is simple exactly when every
/// satisfiable part is.
pub fn union_lemma(cases: u32) -> SuiteResult {
    run(cases, set_with_partition(), |(n, pi, lambda, p)| {
        let simple = |s: &PredicateSet| is_pi_simple(n, s, &pi) != PiStatus::Complex;
        let parts: Vec<PredicateSet> =
            Rel::ALL.iter().map(|&r| lambda.with(p.with_rel(r))).filter(|s| is_sat(n, s.iter())).collect();
        let cover = CompiledFormula::new(&Formula::dnf(parts.iter()));
        prop_assert!(entails_formula(n, &lambda, &cover));
        prop_assert_eq!(simple(&lambda), parts.iter().all(simple));
        Ok(())
    })
}

// ---- partitions ----

pub fn binary_reduction(cases: u32) -> SuiteResult {
    run(cases, partition_with_blocks(2..=16, 4), |pi| {
        let k = pi.len();
        let s = pi.binary_reduction().map_err(|e| fail(e.to_string()))?;
        prop_assert_eq!(s.len(), (k as f64).log2().ceil() as usize);
        prop_assert!(s.iter().all(Partition::is_binary));
        let meet = s.iter().skip(1).try_fold(s[0].clone(), |acc, p| acc.meet(p)).map_err(|e| fail(e.to_string()))?;
        prop_assert_eq!(meet, pi);
        Ok(())
    })
}

pub fn meet_laws(cases: u32) -> SuiteResult {
    let strategy = (1usize..=6).prop_flat_map(|n| (partition(n), partition(n), partition(n)));
    run(cases, strategy, |(a, b, c)| {
        let ab = a.meet(&b).unwrap();
        prop_assert_eq!(&ab, &b.meet(&a).unwrap());
        prop_assert_eq!(ab.meet(&c).unwrap(), a.meet(&b.meet(&c).unwrap()).unwrap());
        prop_assert!(ab.refines(&a).unwrap() && ab.refines(&b).unwrap());
        Ok(())
    })
}

// ---- disjuncts ----

pub fn disjunct_exclusivity(cases: u32) -> SuiteResult {
    let strategy = (1usize..=3).prop_flat_map(|n| (Just(n), formula(n, 3, 2), prop::collection::vec(point(n), 10)));
    run(cases, strategy, |(n, phi, points)| {
        let compiled = CompiledFormula::new(&phi);
        let ds = disjuncts(n, &compiled, None);
        for (i, a) in ds.iter().enumerate() {
            for b in &ds[i + 1..] {
                prop_assert!(!oracle::feasible(n, a.preds.union(&b.preds).iter()));
            }
            prop_assert!(a.preds.holds(&a.model));
            let pos = find_model(n, &a.preds, &compiled).is_some();
            let neg = find_model(n, &a.preds, &compiled.negated()).is_some();
            prop_assert!(pos != neg, "disjunct entails neither side");
            prop_assert_eq!(pos, a.entails_phi);
        }
        for v in &points {
            let owners: Vec<_> = ds.iter().filter(|d| d.preds.holds(v)).collect();
            prop_assert_eq!(owners.len(), 1, "point {:?} lies in {} disjuncts", v, owners.len());
            prop_assert_eq!(owners[0].entails_phi, compiled.eval(v));
        }
        let positives: Vec<_> = ds.iter().filter(|d| d.entails_phi).cloned().collect();
        prop_assert_eq!(disjunct::positive_disjuncts(n, &compiled, None), positives);
        Ok(())
    })
}

// ---- covering ----

/// `(d, disequalities, strict base)` with `d ≤ 3` variables, up to 12
/// disequalities and coefficients in `[-3, 3]`.
pub fn compute_d_instance() -> impl Strategy<Value = (usize, Vec<LinearPredicate>, PredicateSet)> {
    (1usize..=3).prop_flat_map(|d| {
        (
            Just(d),
            prop::collection::vec(equality(d, 3), 1..=12),
            prop::collection::vec(strict_predicate(d, 3), 0..=2).prop_map(|v| v.into_iter().collect()),
        )
    })
}

/// `n^{d+1} + d + 1`.
pub fn region_bound(n: usize, d: usize) -> usize {
    n.pow(d as u32 + 1) + d + 1
}

pub fn compute_d_regions(cases: u32) -> SuiteResult {
    run(cases, compute_d_instance(), |(d, ne, base)| {
        let out = compute_d(d, &ne, &base);
        let got: std::collections::BTreeSet<PredicateSet> = out.iter().cloned().collect();
        prop_assert_eq!(got.len(), out.len(), "duplicate regions");
        prop_assert_eq!(&got, &oracle::strict_regions(d, &ne, &base));
        prop_assert!(out.len() <= region_bound(ne.len(), d));
        Ok(())
    })
}

fn positive_disjuncts(case: &Case, limit: usize) -> Vec<PredicateSet> {
    let compiled = CompiledFormula::new(&case.phi);
    disjuncts(case.n, &compiled, None).into_iter().filter(|d| d.entails_phi).take(limit).map(|d| d.preds).collect()
}

fn small_cases() -> impl Strategy<Value = Case> {
    case(2..=3, 3, 2)
}

pub fn cover_entailed(cases: u32) -> SuiteResult {
    run(cases, small_cases(), |c| {
        let compiled = CompiledFormula::new(&c.phi);
        for gamma in positive_disjuncts(&c, 4) {
            let cov = cover(c.n, &c.partition, &gamma, &compiled, &CoverConfig::default()).map_err(|e| fail(e.to_string()))?;
            prop_assert!(entails_formula(c.n, &gamma, &CompiledFormula::new(&cov.formula())));
            prop_assert!(cov.terms.iter().all(|t| t.preds.respects(&c.partition)));
        }
        Ok(())
    })
}

pub fn recursion_depth(cases: u32) -> SuiteResult {
    run(cases, small_cases(), |c| {
        let compiled = CompiledFormula::new(&c.phi);
        for gamma in positive_disjuncts(&c, 4) {
            let cov = cover(c.n, &c.partition, &gamma, &compiled, &CoverConfig::default()).map_err(|e| fail(e.to_string()))?;
            prop_assert!(cov.stats.max_depth <= c.n, "depth {} over {} variables", cov.stats.max_depth, c.n);
        }
        Ok(())
    })
}

pub fn dependency_equality(cases: u32) -> SuiteResult {
    let strategy = (2usize..=4).prop_flat_map(|n| (Just(n), binary_partition(n), predicate_set(n, 2, 1..=4)));
    run(cases, strategy, |(n, pi, gamma)| {
        if is_pi_simple(n, &gamma, &pi) != PiStatus::Complex {
            return Ok(());
        }
        let theta = enforce_deps(n, &pi, &gamma).map_err(|e| fail(e.to_string()))?;
        prop_assert!(theta.respects(&pi));
        for block in pi.blocks() {
            let a = dependency_space(n, &gamma, block).unwrap();
            let b = dependency_space(n, &theta, block).unwrap();
            prop_assert!(a.space.spans_equal(&b.space).unwrap(), "block {:?}", block);
        }
        Ok(())
    })
}

// ---- decide ----

fn decided(c: &Case, phi: &Formula, pi: &Partition, cfg: &DecideConfig) -> Result<Outcome, TestCaseError> {
    decide(c.n, phi, pi, cfg).map_err(|e| fail(e.to_string()))
}

pub fn two_sided(cases: u32) -> SuiteResult {
    run(cases, small_cases(), |c| {
        match decided(&c, &c.phi, &c.partition, &DecideConfig::default())? {
            Outcome::Decomposable(d) => prop_assert!(check_decomposition(c.n, &c.phi, &c.partition, &d.formula())),
            Outcome::NonDecomposable(w) => {
                let compiled = CompiledFormula::new(&c.phi);
                prop_assert!(w.failing().holds(&w.counter_model) && !compiled.eval(&w.counter_model));
                prop_assert!(entails_formula(c.n, &w.gamma, &compiled));
                prop_assert!(entails_formula(c.n, &w.gamma, &CompiledFormula::new(&w.covering.formula())));
            }
        }
        Ok(())
    })
}

pub fn reduction_coherence(cases: u32) -> SuiteResult {
    let strategy = partition_with_blocks(3..=3, 1).prop_flat_map(|pi| {
        let n = pi.universe();
        (Just(n), formula(n, 3, 2), Just(pi))
    });
    run(cases, strategy, |(n, phi, pi)| {
        let c = Case { n, phi: phi.clone(), partition: pi.clone() };
        let cfg = DecideConfig::default();
        let whole = decided(&c, &phi, &pi, &cfg)?.is_decomposable();
        let mut each = true;
        for s in pi.binary_reduction().unwrap() {
            each &= decided(&c, &phi, &s, &cfg)?.is_decomposable();
        }
        prop_assert_eq!(whole, each);
        Ok(())
    })
}

pub fn negation_closure(cases: u32) -> SuiteResult {
    run(cases, small_cases(), |c| {
        let cfg = DecideConfig::default();
        let pos = decided(&c, &c.phi, &c.partition, &cfg)?.is_decomposable();
        let neg = decided(&c, &Formula::not(c.phi.clone()), &c.partition, &cfg)?.is_decomposable();
        prop_assert_eq!(pos, neg);
        Ok(())
    })
}

pub fn heuristics_agree(cases: u32) -> SuiteResult {
    run(cases, small_cases(), |c| {
        let on = decided(&c, &c.phi, &c.partition, &DecideConfig::default().with_heuristics(true))?;
        let off = decided(&c, &c.phi, &c.partition, &DecideConfig::default().with_heuristics(false))?;
        prop_assert_eq!(on.is_decomposable(), off.is_decomposable());
        Ok(())
    })
}

pub fn skip_agree(cases: u32) -> SuiteResult {
    run(cases, small_cases(), |c| {
        let on = DecideConfig::default();
        let off = DecideConfig { skip_covered: false, ..on };
        let a = decided(&c, &c.phi, &c.partition, &on)?;
        let b = decided(&c, &c.phi, &c.partition, &off)?;
        prop_assert_eq!(a.is_decomposable(), b.is_decomposable());
        Ok(())
    })
}

// ---- certificates ----

/// Mutants checked per accepted proof.
pub const MUTANTS: usize = 100;

pub fn certificates(cases: u32) -> SuiteResult {
    run(cases, small_cases(), |c| {
        let Outcome::NonDecomposable(w) = decided(&c, &c.phi, &c.partition, &DecideConfig::default())? else {
            return Ok(());
        };
        let bases = CompiledFormula::new(&c.phi).bases().to_vec();
        for proof in [prove(c.n, &c.phi, &w), prove_compressed(c.n, &c.phi, &w)] {
            let proof = proof.map_err(|e| fail(e.to_string()))?;
            if let Err(r) = verify(c.n, &c.phi, &w.partition, &proof) {
                return Err(fail(format!("generated proof rejected: {r}")));
            }
            for (kind, m) in mutate::mutants(&proof, &bases, MUTANTS / 10, SEED) {
                prop_assert!(verify(c.n, &c.phi, &w.partition, &m).is_err(), "{:?} mutant accepted", kind);
            }
        }
        Ok(())
    })
}

pub fn cube_containment(cases: u32) -> SuiteResult {
    let strategy = (1usize..=3).prop_flat_map(|n| {
        (Just(n), prop::collection::vec(strict_predicate(n, 3), 0..=4), prop::collection::vec(-4i64..=4, n))
    });
    run(cases, strategy, |(n, preds, steps)| {
        let strict: PredicateSet = preds.into_iter().collect();
        let Some(v) = sat_model(n, &strict) else { return Ok(()) };
        let cube = open_cube(&v, &strict).map_err(|e| fail(e.to_string()))?;
        prop_assert!(cube.predicates.holds(&v));
        // points strictly inside: offsets k/5 · ε/2 with |k| ≤ 4
        let half = &cube.epsilon / Q::from_integer(2.into());
        let p: Vec<Q> = v.iter().zip(&steps).map(|(x, &k)| x + &half * Q::new(k.into(), 5.into())).collect();
        prop_assert!(cube.predicates.holds(&p));
        prop_assert!(strict.holds(&p), "{:?} outside the strict set", p);
        Ok(())
    })
}
