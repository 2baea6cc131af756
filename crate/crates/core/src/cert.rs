//! Λ-proofs of non-decomposability.
//!
//! A proof is four predicate sets `(Λ0, Λ1, Λ0', Λ1')`. [`verify`] runs the
//! polynomial-time checks, [`find_witness`] builds a proof from a failing covering
//! term, and [`compress`] shrinks a proof by replacing the covering's strict
//! predicates with an open cube.

use std::fmt;

use num_traits::Signed;
use vardec_linalg::{project_subspace, solve_equalities, Subspace, Q};

use crate::cover::CoverTerm;
use crate::disjunct::Disjuncts;
use crate::formula::{CompiledFormula, Formula};
use crate::partition::Partition;
use crate::pred::{LinearPredicate, PredicateSet, Rel};
use crate::sat::{entails_pred, find_model, is_pi_simple, is_sat, sat_model, small_model, PiStatus};
use crate::vardec::NonDecWitness;
use crate::{Error, Model, Result};

/// Disjunct pairs examined by the fallback search before giving up.
const FALLBACK_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LambdaProof {
    pub lambda0: PredicateSet,
    pub lambda1: PredicateSet,
    pub lambda0p: PredicateSet,
    pub lambda1p: PredicateSet,
}

impl LambdaProof {
    /// Total number of predicates across the four sets.
    pub fn size(&self) -> usize {
        self.lambda0.len() + self.lambda1.len() + self.lambda0p.len() + self.lambda1p.len()
    }
}

/// The verifier's checks, in the order they run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    DisjunctCoverage,
    Subset,
    Equivalence,
    PNext,
    PiComplex,
    Dependencies,
    Classification,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::DisjunctCoverage,
        Check::Subset,
        Check::Equivalence,
        Check::PNext,
        Check::PiComplex,
        Check::Dependencies,
        Check::Classification,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::DisjunctCoverage => "disjunct-coverage",
            Check::Subset => "subset",
            Check::Equivalence => "equivalence",
            Check::PNext => "p-next",
            Check::PiComplex => "pi-complex",
            Check::Dependencies => "dependencies",
            Check::Classification => "classification",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{check}: {detail}")]
pub struct Rejection {
    pub check: Check,
    pub detail: String,
}

fn reject(check: Check, detail: impl Into<String>) -> std::result::Result<(), Rejection> {
    Err(Rejection { check, detail: detail.into() })
}

/// The equality `p` on which `Λ1` is `p`-next to `Λ0`, with its orientation in `Λ0`.
pub fn p_next(lambda0: &PredicateSet, lambda1: &PredicateSet) -> Option<(LinearPredicate, Rel)> {
    let only1 = lambda1.difference(lambda0);
    let only0 = lambda0.difference(lambda1);
    let (Some(eq), Some(strict), 1, 1) = (only1.iter().next(), only0.iter().next(), only1.len(), only0.len()) else {
        return None;
    };
    (eq.is_eq() && strict.is_strict() && eq.same_base(strict)).then(|| (eq.clone(), strict.rel()))
}

fn block_dependencies(n: usize, set: &PredicateSet, block: &[usize]) -> Option<Subspace> {
    let eqs: Vec<(Vec<Q>, Q)> = set.equalities().iter().map(|p| (p.dense(n), p.constant().clone())).collect();
    let space = solve_equalities(n, &eqs).ok()??;
    project_subspace(block, &space.direction).ok()
}

/// Runs every check on a claimed proof that `φ` has no `Π`-decomposition.
pub fn verify(n: usize, phi: &Formula, partition: &Partition, proof: &LambdaProof) -> std::result::Result<(), Rejection> {
    let LambdaProof { lambda0, lambda1, lambda0p, lambda1p } = proof;
    let sides = [(lambda0, lambda0p), (lambda1, lambda1p)];

    for base in phi.bases() {
        for (i, (_, full)) in sides.iter().enumerate() {
            if full.orientation_of(&base).is_none() {
                return reject(Check::DisjunctCoverage, format!("Λ{i}' has no orientation of {base}"));
            }
        }
    }
    for (i, (part, full)) in sides.iter().enumerate() {
        if !part.is_subset(full) {
            return reject(Check::Subset, format!("Λ{i} is not contained in Λ{i}'"));
        }
    }
    for (i, (part, full)) in sides.iter().enumerate() {
        if let Some(q) = full.difference(part).iter().find(|q| !entails_pred(n, part, q)) {
            return reject(Check::Equivalence, format!("Λ{i} does not entail {q}"));
        }
    }
    if p_next(lambda0, lambda1).is_none() {
        return reject(Check::PNext, "Λ1 is not p-next to Λ0 on an equality of Λ1");
    }
    for (i, (part, _)) in sides.iter().enumerate() {
        match is_pi_simple(n, part, partition) {
            PiStatus::Complex => {}
            PiStatus::Unsat => return reject(Check::PiComplex, format!("Λ{i} is unsatisfiable")),
            PiStatus::Fixes(b) => return reject(Check::PiComplex, format!("Λ{i} fixes block {b}")),
        }
    }
    for (b, block) in partition.blocks().iter().enumerate() {
        let same = match (block_dependencies(n, lambda0, block), block_dependencies(n, lambda1, block)) {
            (Some(d0), Some(d1)) => d0.spans_equal(&d1).unwrap_or(false),
            _ => false,
        };
        if !same {
            return reject(Check::Dependencies, format!("dependencies differ on block {b}"));
        }
    }
    let (Some(v0), Some(v1)) = (sat_model(n, lambda0), sat_model(n, lambda1)) else {
        return reject(Check::Classification, "no model");
    };
    if phi.eval(&v0) == phi.eval(&v1) {
        return reject(Check::Classification, "both models agree on φ");
    }
    Ok(())
}

/// The open cube `{x_i < v_i + ε/2} ∪ {x_i > v_i − ε/2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubePredicateSet {
    pub center: Model,
    pub epsilon: Q,
    pub predicates: PredicateSet,
}

/// A cube around `v` inside every predicate of `strict`.
///
/// `ε = min |a·v − b| / (3‖a‖₁)`, or `1` when `strict` is empty. Moving each
/// coordinate by less than `ε/2` changes `a·x` by less than the margin.
pub fn open_cube(v: &[Q], strict: &PredicateSet) -> Result<CubePredicateSet> {
    let mut epsilon: Option<Q> = None;
    for p in strict.iter() {
        if !p.is_strict() {
            return Err(Error::Inconsistent(format!("{p} is not a strict inequality")));
        }
        if !p.holds(v) {
            return Err(Error::ModelViolates(p.to_string()));
        }
        let margin = (p.term_value(v) - p.constant()).abs();
        let norm: Q = p.coeffs().iter().map(|(_, c)| c.abs()).sum();
        let e = margin / (norm * Q::from_integer(3.into()));
        if epsilon.as_ref().is_none_or(|cur| e < *cur) {
            epsilon = Some(e);
        }
    }
    let epsilon = epsilon.unwrap_or_else(|| Q::from_integer(1.into()));
    debug_assert!(epsilon.is_positive());
    let half = &epsilon / Q::from_integer(2.into());
    let mut predicates = PredicateSet::new();
    for (i, vi) in v.iter().enumerate() {
        for (bound, rel) in [(vi + &half, Rel::Lt), (vi - &half, Rel::Gt)] {
            predicates.insert(LinearPredicate::new([(i, Q::from_integer(1.into()))], bound, rel).expect("unit coefficient"));
        }
    }
    Ok(CubePredicateSet { center: v.to_vec(), epsilon, predicates })
}

/// Builds a proof from the failing term `Λ` of the covering of `Γ`.
///
/// Tries the inductive construction over the disrespecting atoms first. If its
/// result does not verify, falls back to searching pairs of disjuncts of `Λ`.
pub fn find_witness(
    n: usize,
    phi: &Formula,
    partition: &Partition,
    gamma: &PredicateSet,
    term: &CoverTerm,
) -> Result<LambdaProof> {
    let lambda = &term.preds;
    let compiled = CompiledFormula::new(phi);
    let one = gamma.union(lambda);
    let m1 = sat_model(n, &one).ok_or_else(|| Error::Inconsistent("Γ ∪ Λ is unsatisfiable".into()))?;
    if !compiled.eval(&m1) {
        return Err(Error::Inconsistent("Γ does not entail φ".into()));
    }
    let m0 = find_model(n, lambda, &compiled.negated())
        .ok_or_else(|| Error::Inconsistent("the covering term entails φ".into()))?;

    // The atoms Λ leaves open, in the order of Γ.
    let order: Vec<LinearPredicate> =
        compiled.bases().iter().filter(|b| lambda.orientation_of(b).is_none()).cloned().collect();
    if let Some(proof) = construct(n, &compiled, lambda, &order, m0, m1) {
        if verify(n, phi, partition, &proof).is_ok() {
            return Ok(proof);
        }
    }
    search_pairs(n, phi, &compiled, partition, lambda)
}

/// Λ-proof for the covering term that made `decide` fail.
pub fn prove(n: usize, phi: &Formula, witness: &NonDecWitness) -> Result<LambdaProof> {
    let term = &witness.covering.terms[witness.failing_term];
    find_witness(n, phi, &witness.partition, &witness.gamma, term)
}

/// [`prove`] followed by [`compress`] with the term's own `Θ`.
pub fn prove_compressed(n: usize, phi: &Formula, witness: &NonDecWitness) -> Result<LambdaProof> {
    let proof = prove(n, phi, witness)?;
    let theta = &witness.covering.terms[witness.failing_term].theta;
    compress(n, phi, &witness.partition, &proof, theta)
}

fn construct(
    n: usize,
    phi: &CompiledFormula,
    lambda: &PredicateSet,
    order: &[LinearPredicate],
    mut m0: Model,
    mut m1: Model,
) -> Option<LambdaProof> {
    let not_phi = phi.negated();
    let mut fixed = lambda.clone();
    let mut m = order.len();
    'outer: while m > 0 {
        m -= 1;
        let p = &order[m];
        for s in Rel::ALL {
            let ctx = fixed.with(p.with_rel(s));
            if !is_sat(n, &ctx) {
                continue;
            }
            if let (Some(yes), Some(no)) = (find_model(n, &ctx, phi), find_model(n, &ctx, &not_phi)) {
                fixed = ctx;
                m1 = yes;
                m0 = no;
                continue 'outer;
            }
        }
        let (s0, s1) = (p.orientation(&m0), p.orientation(&m1));
        if s0 == s1 {
            fixed.insert(p.with_rel(s0));
            continue;
        }
        if s0 != Rel::Eq && s1 != Rel::Eq {
            let me = sat_model(n, &fixed.with(p.with_rel(Rel::Eq)))?;
            if phi.eval(&me) == phi.eval(&m0) {
                m0 = me;
            } else {
                m1 = me;
            }
        }
        let strict_model = if p.orientation(&m0) == Rel::Eq { &m1 } else { &m0 };
        let pp = p.with_rel(p.orientation(strict_model));
        let peq = p.with_rel(Rel::Eq);
        return upsilon(n, &fixed, &order[..=m], &pp, &peq);
    }
    None
}

/// Greedy extension of `Υ` over the remaining atoms, keeping both `Υ ∧ p^P` and
/// `Υ ∧ p^=` satisfiable and recording the atoms each side forces.
fn upsilon(
    n: usize,
    start: &PredicateSet,
    atoms: &[LinearPredicate],
    pp: &LinearPredicate,
    peq: &LinearPredicate,
) -> Option<LambdaProof> {
    let mut ups = start.clone();
    let mut ups_p = PredicateSet::new();
    let mut ups_eq = PredicateSet::new();
    for q in atoms {
        let sat_with = |side: &LinearPredicate, r: Rel| {
            is_sat(n, ups.iter().chain([side, &q.with_rel(r)]))
        };
        let table: Vec<(Rel, bool, bool)> = Rel::ALL.iter().map(|&r| (r, sat_with(pp, r), sat_with(peq, r))).collect();
        if let Some(&(r, _, _)) = table.iter().find(|(_, a, b)| *a && *b) {
            ups.insert(q.with_rel(r));
            continue;
        }
        let only = |col: fn(&(Rel, bool, bool)) -> bool| {
            let sat: Vec<Rel> = table.iter().filter(|t| col(t)).map(|t| t.0).collect();
            (sat.len() == 1).then(|| sat[0])
        };
        let (rp, req) = (only(|t| t.1)?, only(|t| t.2)?);
        if rp == req {
            ups.insert(q.with_rel(rp));
        } else {
            ups_p.insert(q.with_rel(rp));
            ups_eq.insert(q.with_rel(req));
        }
    }
    Some(LambdaProof {
        lambda0: ups.with(pp.clone()),
        lambda1: ups.with(peq.clone()),
        lambda0p: ups.union(&ups_p),
        lambda1p: ups.union(&ups_eq),
    })
}

/// Pairs of disjuncts of `Λ` with opposite classification that differ from `p^=`
/// to `p^P` on some atom, reduced to their common part.
fn search_pairs(
    n: usize,
    phi: &Formula,
    compiled: &CompiledFormula,
    partition: &Partition,
    lambda: &PredicateSet,
) -> Result<LambdaProof> {
    let all: Vec<_> = Disjuncts::new(n, compiled, Some(lambda)).take(FALLBACK_LIMIT + 1).collect();
    if all.len() > FALLBACK_LIMIT {
        return Err(Error::Internal(format!("more than {FALLBACK_LIMIT} disjuncts in the fallback search")));
    }
    for de in &all {
        for ds in all.iter().filter(|d| d.entails_phi != de.entails_phi) {
            let common = lambda.union(&de.preds.intersection(&ds.preds));
            for (i, base) in compiled.bases().iter().enumerate() {
                if de.signs[i] != Rel::Eq || ds.signs[i] == Rel::Eq {
                    continue;
                }
                let proof = LambdaProof {
                    lambda0: common.with(base.with_rel(ds.signs[i])),
                    lambda1: common.with(base.with_rel(Rel::Eq)),
                    lambda0p: lambda.union(&ds.preds),
                    lambda1p: lambda.union(&de.preds),
                };
                if verify(n, phi, partition, &proof).is_ok() {
                    return Ok(proof);
                }
            }
        }
    }
    Err(Error::Internal("no Λ-proof among the disjunct pairs of the failing term".into()))
}

/// Replaces the strict predicates outside `Θ` and the atoms of `φ` with an open cube
/// around a model of `Λ1`.
pub fn compress(
    n: usize,
    phi: &Formula,
    partition: &Partition,
    proof: &LambdaProof,
    theta: &PredicateSet,
) -> Result<LambdaProof> {
    let bases = phi.bases();
    let keep = |set: &PredicateSet| -> PredicateSet {
        set.iter().filter(|p| theta.contains(p) || bases.contains(&p.base())).cloned().collect()
    };
    let (g0, g1) = (keep(&proof.lambda0p), keep(&proof.lambda1p));
    let rest = proof.lambda0p.difference(&g0);
    if rest != proof.lambda1p.difference(&g1) {
        return Err(Error::Inconsistent("Λ0' and Λ1' differ outside Θ and the atoms of φ".into()));
    }
    if rest.is_empty() {
        return Ok(proof.clone());
    }
    let (Some((peq, rel)), true) = (p_next(&proof.lambda0, &proof.lambda1), rest.iter().all(|p| p.is_strict())) else {
        return Err(Error::Inconsistent("proof is not of the constructed shape".into()));
    };
    let center = small_model(n, &proof.lambda1)?;
    let cube = open_cube(&center, &rest)?;
    let base = g0.intersection(&g1).union(&cube.predicates);
    let compressed = LambdaProof {
        lambda0: base.with(peq.with_rel(rel)),
        lambda1: base.with(peq.clone()),
        lambda0p: base.union(&proof.lambda0p.difference(&proof.lambda1p)),
        lambda1p: base.union(&proof.lambda1p.difference(&proof.lambda0p)),
    };
    verify(n, phi, partition, &compressed)
        .map_err(|r| Error::Internal(format!("compressed proof rejected: {r}")))?;
    Ok(compressed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use vardec_linalg::{frac, int};

    fn p(terms: &[(usize, i64)], c: i64, rel: Rel) -> LinearPredicate {
        LinearPredicate::new(terms.iter().map(|&(v, k)| (v, int(k))), int(c), rel).unwrap()
    }

    fn set(ps: &[LinearPredicate]) -> PredicateSet {
        ps.iter().cloned().collect()
    }

    #[test]
    fn cube_inside_half_planes() {
        let strict = set(&[p(&[(0, 1)], 1, Rel::Lt), p(&[(1, 1)], 1, Rel::Lt)]);
        let cube = open_cube(&[int(0), int(0)], &strict).unwrap();
        assert_eq!(cube.epsilon, frac(1, 3));
        assert_eq!(cube.predicates.len(), 4);
        assert!(entails_pred(2, &cube.predicates, &p(&[(0, 1)], 1, Rel::Lt)));
    }

    #[test]
    fn cube_defaults_and_boundary() {
        assert_eq!(open_cube(&[int(5)], &PredicateSet::new()).unwrap().epsilon, int(1));
        assert!(open_cube(&[int(1)], &set(&[p(&[(0, 1)], 1, Rel::Lt)])).is_err());
    }

    #[test]
    fn p_next_requires_single_swap() {
        let lt = p(&[(0, 1), (1, -1)], 0, Rel::Gt);
        let eq = lt.with_rel(Rel::Eq);
        assert!(p_next(&set(&[lt.clone()]), &set(&[eq.clone()])).is_some());
        assert!(p_next(&set(&[eq.clone()]), &set(&[lt.clone()])).is_none());
        assert!(p_next(&set(&[lt.with_rel(Rel::Lt)]), &set(&[lt])).is_none());
    }
}
