//! Deciding decomposability and building decompositions.

use crate::cover::{cover, CoverConfig, Covering, Heuristics};
use crate::disjunct::{disjuncts, positive_disjuncts, Disjunct};
use crate::exec::Exec;
use crate::formula::{CompiledFormula, Formula};
use crate::partition::Partition;
use crate::pred::PredicateSet;
use crate::sat::{entails_formula, entails_pred, find_model, is_sat};
use crate::{Error, Model, Result};

/// Positive disjuncts are covered in batches of this size. Skipping only looks at
/// earlier batches, so the result does not depend on the job count.
const BATCH: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub cover: CoverConfig,
    /// Skip a disjunct already entailed by the terms found so far.
    pub skip_covered: bool,
    /// Worker threads: `1` is sequential, `0` uses the global pool.
    pub jobs: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { cover: CoverConfig::default(), skip_covered: true, jobs: 1 }
    }
}

impl Config {
    pub fn with_heuristics(mut self, on: bool) -> Self {
        self.cover.heuristics = if on { Heuristics::ALL } else { Heuristics::NONE };
        self.skip_covered = on;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }
}

/// A DNF term of a decomposition and the disjunct whose covering produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompTerm {
    pub preds: PredicateSet,
    pub source: PredicateSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Terms in canonical order. No terms means `false`; one empty term means `true`.
    pub terms: Vec<DecompTerm>,
}

impl Decomposition {
    fn constant(b: bool) -> Self {
        let terms = if b { vec![DecompTerm { preds: PredicateSet::new(), source: PredicateSet::new() }] } else { vec![] };
        Decomposition { terms }
    }

    fn from_terms(mut terms: Vec<DecompTerm>) -> Self {
        terms.sort_by(|a, b| a.preds.cmp(&b.preds));
        terms.dedup_by(|a, b| a.preds == b.preds);
        Decomposition { terms }
    }

    pub fn formula(&self) -> Formula {
        Formula::dnf(self.terms.iter().map(|t| &t.preds))
    }
}

/// Evidence that a binary partition admits no decomposition: `Γ ⊨ φ` but a term of
/// its covering has a model violating `φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonDecWitness {
    pub partition: Partition,
    pub gamma: PredicateSet,
    pub covering: Covering,
    pub failing_term: usize,
    pub counter_model: Model,
}

impl NonDecWitness {
    pub fn failing(&self) -> &PredicateSet {
        &self.covering.terms[self.failing_term].preds
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Decomposable(Decomposition),
    NonDecomposable(Box<NonDecWitness>),
}

impl Outcome {
    pub fn is_decomposable(&self) -> bool {
        matches!(self, Outcome::Decomposable(_))
    }
}

fn check_universe(n: usize, phi: &Formula, partition: &Partition) -> Result<()> {
    if partition.universe() != n {
        return Err(Error::Partition(format!("partition covers {} variables, expected {n}", partition.universe())));
    }
    if let Some(v) = phi.vars().into_iter().find(|&v| v >= n) {
        return Err(Error::Partition(format!("variable {v} outside universe of {n}")));
    }
    Ok(())
}

/// `γ ⊨ ⋁ terms`, looking only at terms consistent with `γ`.
fn already_covered(n: usize, gamma: &Disjunct, terms: &[DecompTerm]) -> bool {
    let relevant: Vec<&PredicateSet> =
        terms.iter().map(|t| &t.preds).filter(|t| is_sat(n, gamma.preds.iter().chain(t.iter()))).collect();
    if relevant.is_empty() {
        return false;
    }
    let single = relevant
        .iter()
        .filter(|t| t.holds(&gamma.model))
        .any(|t| t.iter().all(|p| entails_pred(n, &gamma.preds, p)));
    single || entails_formula(n, &gamma.preds, &CompiledFormula::new(&Formula::dnf(relevant)))
}

/// `Some(b)` when `φ` is valid (`true`) or unsatisfiable (`false`).
fn constant_by_search(n: usize, compiled: &CompiledFormula) -> Option<bool> {
    let none = PredicateSet::new();
    if find_model(n, &none, compiled).is_none() {
        return Some(false);
    }
    find_model(n, &none, &compiled.negated()).is_none().then_some(true)
}

type Checked = Result<(Covering, Option<(usize, Model)>)>;

fn cover_and_check(n: usize, partition: &Partition, gamma: &PredicateSet, phi: &CompiledFormula, cfg: &Config) -> Checked {
    let covering = cover(n, partition, gamma, phi, &cfg.cover)?;
    let neg = phi.negated();
    let failure =
        covering.terms.iter().enumerate().find_map(|(i, t)| find_model(n, &t.preds, &neg).map(|m| (i, m)));
    Ok((covering, failure))
}

fn decide_binary(n: usize, phi: &Formula, partition: &Partition, cfg: &Config, exec: &Exec) -> Result<Outcome> {
    let compiled = CompiledFormula::new(phi);
    if let Some(b) = compiled.constant_value() {
        return Ok(Outcome::Decomposable(Decomposition::constant(b)));
    }
    if let Some(b) = constant_by_search(n, &compiled) {
        return Ok(Outcome::Decomposable(Decomposition::constant(b)));
    }
    let positives = positive_disjuncts(n, &compiled, None);
    let mut terms: Vec<DecompTerm> = Vec::new();
    for batch in positives.chunks(BATCH) {
        let todo: Vec<&Disjunct> =
            batch.iter().filter(|d| !(cfg.skip_covered && already_covered(n, d, &terms))).collect();
        let results = exec.map(&todo, |d| cover_and_check(n, partition, &d.preds, &compiled, cfg));
        for (d, res) in todo.iter().zip(results) {
            let (covering, failure) = res?;
            if let Some((failing_term, counter_model)) = failure {
                return Ok(Outcome::NonDecomposable(Box::new(NonDecWitness {
                    partition: partition.clone(),
                    gamma: d.preds.clone(),
                    covering,
                    failing_term,
                    counter_model,
                })));
            }
            terms.extend(covering.terms.into_iter().map(|t| DecompTerm { preds: t.preds, source: d.preds.clone() }));
        }
    }
    Ok(Outcome::Decomposable(Decomposition::from_terms(terms)))
}

/// DNF of `φ` from its positive disjuncts, for the single-block partition.
fn unary(n: usize, phi: &Formula) -> Decomposition {
    let compiled = CompiledFormula::new(phi);
    if let Some(b) = compiled.constant_value() {
        return Decomposition::constant(b);
    }
    let terms = positive_disjuncts(n, &compiled, None)
        .into_iter()
        .map(|d| DecompTerm { source: d.preds.clone(), preds: d.preds })
        .collect();
    Decomposition::from_terms(terms)
}

/// Decides `Π`-decomposability of `φ` over variables `0..n`.
///
/// Partitions with more than two blocks are reduced to `⌈log₂ k⌉` binary ones;
/// the first failing one (in reduction order) supplies the witness.
pub fn decide(n: usize, phi: &Formula, partition: &Partition, cfg: &Config) -> Result<Outcome> {
    check_universe(n, phi, partition)?;
    let exec = Exec::new(cfg.jobs);
    match partition.len() {
        0 | 1 => Ok(Outcome::Decomposable(unary(n, phi))),
        2 => decide_binary(n, phi, partition, cfg, &exec),
        _ => {
            let splits = partition.binary_reduction()?;
            let results = exec.map(&splits, |s| decide_binary(n, phi, s, cfg, &exec));
            for r in results {
                if let Outcome::NonDecomposable(w) = r? {
                    return Ok(Outcome::NonDecomposable(w));
                }
            }
            Ok(Outcome::Decomposable(assemble(n, phi, partition, cfg, &exec)?))
        }
    }
}

/// Builds a decomposition for a partition known to admit one, peeling off the
/// first block: split `{B1, rest}`, enumerate the cells of the `B1` atoms, and
/// decompose `φ` with a point of each cell substituted for `B1`.
fn assemble(n: usize, phi: &Formula, partition: &Partition, cfg: &Config, exec: &Exec) -> Result<Decomposition> {
    match partition.len() {
        0 | 1 => return Ok(unary(n, phi)),
        2 => {
            return match decide_binary(n, phi, partition, cfg, exec)? {
                Outcome::Decomposable(d) => Ok(d),
                Outcome::NonDecomposable(_) => Err(Error::Internal("coarsening lost decomposability".into())),
            }
        }
        _ => {}
    }
    let first = partition.block(0).to_vec();
    let rest: Vec<usize> = (0..n).filter(|v| !first.contains(v)).collect();
    let split = Partition::new(n, vec![first.clone(), rest])?;
    let psi = match decide_binary(n, phi, &split, cfg, exec)? {
        Outcome::Decomposable(d) => d,
        Outcome::NonDecomposable(_) => return Err(Error::Internal("coarsening lost decomposability".into())),
    };
    let first_atoms: Vec<Formula> = {
        let mut bases: Vec<_> = psi
            .terms
            .iter()
            .flat_map(|t| t.preds.iter())
            .filter(|p| p.vars().all(|v| first.contains(&v)))
            .map(|p| p.base())
            .collect();
        bases.sort();
        bases.dedup();
        bases.into_iter().map(Formula::Atom).collect()
    };
    let cells_of = CompiledFormula::new(&Formula::And(first_atoms));
    let cells = disjuncts(n, &cells_of, None);
    let merged = partition.merge(0, 1);
    let subs = exec.map(&cells, |cell| {
        let values: Vec<_> = first.iter().map(|&v| (v, cell.model[v].clone())).collect();
        let sub_phi = phi.substitute(&values).simplify();
        assemble(n, &sub_phi, &merged, cfg, exec).map(|d| (cell.preds.clone(), d))
    });
    let mut terms = Vec::new();
    for res in subs {
        let (cell, sub) = res?;
        for t in sub.terms {
            terms.push(DecompTerm { preds: cell.union(&t.preds), source: t.source });
        }
    }
    Ok(Decomposition::from_terms(terms))
}

/// Monadic decomposability: the all-singletons partition.
pub fn mondec(n: usize, phi: &Formula, cfg: &Config) -> Result<Outcome> {
    decide(n, phi, &Partition::singletons(n), cfg)
}

/// The disjunction of the coverings of all positive disjuncts. Entailed by `φ`, and
/// equivalent to it when `φ` is decomposable.
///
/// Non-binary partitions are supported only when `φ` is decomposable.
pub fn approx(n: usize, phi: &Formula, partition: &Partition, cfg: &Config) -> Result<Formula> {
    check_universe(n, phi, partition)?;
    if partition.len() != 2 {
        return match decide(n, phi, partition, cfg)? {
            Outcome::Decomposable(d) => Ok(d.formula()),
            Outcome::NonDecomposable(_) => Err(Error::NotBinary),
        };
    }
    let compiled = CompiledFormula::new(phi);
    if let Some(b) = compiled.constant_value() {
        return Ok(if b { Formula::True } else { Formula::False });
    }
    let positives = positive_disjuncts(n, &compiled, None);
    let exec = Exec::new(cfg.jobs);
    let coverings = exec.map(&positives, |d| cover(n, partition, &d.preds, &compiled, &cfg.cover));
    let mut terms = Vec::new();
    for c in coverings {
        terms.extend(c?.terms.into_iter().map(|t| DecompTerm { preds: t.preds, source: PredicateSet::new() }));
    }
    Ok(Decomposition::from_terms(terms).formula())
}

/// `ψ` respects `Π` and is equivalent to `φ`.
pub fn check_decomposition(n: usize, phi: &Formula, partition: &Partition, psi: &Formula) -> bool {
    if !psi.respects(partition) {
        return false;
    }
    let unsat = |f: Formula| find_model(n, &PredicateSet::new(), &CompiledFormula::new(&f)).is_none();
    unsat(Formula::And(vec![phi.clone(), Formula::not(psi.clone())]))
        && unsat(Formula::And(vec![psi.clone(), Formula::not(phi.clone())]))
}

/// Whether `x_i` and `x_j` are independent, judged by decomposability for the given
/// partition, which must separate them.
pub fn independent(n: usize, phi: &Formula, i: usize, j: usize, hint: &Partition) -> Result<bool> {
    if i >= hint.universe() || j >= hint.universe() || hint.block_of(i) == hint.block_of(j) {
        return Err(Error::HintDoesNotSeparate(i, j));
    }
    Ok(decide(n, phi, hint, &Config::default())?.is_decomposable())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{Cmp, LinExpr};
    use vardec_linalg::int;

    fn x() -> LinExpr {
        LinExpr::var(0)
    }
    fn y() -> LinExpr {
        LinExpr::var(1)
    }
    fn k(n: i64) -> LinExpr {
        LinExpr::constant(int(n))
    }

    #[test]
    fn diagonal_is_not_monadic() {
        let phi = Formula::compare(x(), Cmp::Eq, y());
        let out = mondec(2, &phi, &Config::default()).unwrap();
        let Outcome::NonDecomposable(w) = out else { panic!("expected failure") };
        assert!(!phi.eval(&w.counter_model));
        assert!(w.failing().holds(&w.counter_model));
    }

    #[test]
    fn respecting_input_is_decomposable() {
        let phi = Formula::And(vec![Formula::compare(x(), Cmp::Lt, k(0)), Formula::compare(y(), Cmp::Gt, k(0))]);
        let Outcome::Decomposable(d) = mondec(2, &phi, &Config::default()).unwrap() else { panic!() };
        assert!(check_decomposition(2, &phi, &Partition::singletons(2), &d.formula()));
    }

    #[test]
    fn hint_must_separate() {
        let phi = Formula::True;
        assert_eq!(independent(2, &phi, 0, 1, &Partition::unary(2)), Err(Error::HintDoesNotSeparate(0, 1)));
        assert_eq!(independent(2, &phi, 0, 1, &Partition::singletons(2)), Ok(true));
    }
}
