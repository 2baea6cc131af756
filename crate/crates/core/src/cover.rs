//! Coverings of a single disjunct.
//!
//! Given a satisfiable `Γ ⊨ φ` and a binary partition, [`cover`] produces a DNF of
//! partition-respecting terms entailed by `Γ`. If `φ` is decomposable, every term
//! entails `φ`; a term that does not is the evidence used for certificates.

use std::collections::HashSet;

use vardec_linalg::{
    dot, intersect, orth_complement, project_block, project_subspace, solve_equalities, AffineSpace, Subspace, Q,
};

use crate::formula::{CompiledFormula, Formula};
use crate::partition::Partition;
use crate::pred::{Canonical, LinearPredicate, PredicateSet, Rel};
use crate::sat::{entails_formula, entails_pred, is_pi_simple, is_sat, sat_model, PiStatus};
use crate::{disjunct, Error, Result};

/// Switches for the optional pruning steps of the covering loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Heuristics {
    /// Return `Θ` directly when it already entails `φ`.
    pub theta_shortcut: bool,
    /// Skip disjuncts of `Θ` that share no model with the current restriction.
    pub restriction_filter: bool,
    /// Visit each equality pattern of the disjuncts of `Θ` once.
    pub group_by_equalities: bool,
    /// Prefer separating vectors whose strict orientation `Γ` already entails.
    pub entailed_separator: bool,
    /// Visit disjuncts entailing `¬φ` first and try to stop early after them.
    pub negatives_first: bool,
}

impl Heuristics {
    pub const ALL: Heuristics = Heuristics {
        theta_shortcut: true,
        restriction_filter: true,
        group_by_equalities: true,
        entailed_separator: true,
        negatives_first: true,
    };
    pub const NONE: Heuristics = Heuristics {
        theta_shortcut: false,
        restriction_filter: false,
        group_by_equalities: false,
        entailed_separator: false,
        negatives_first: false,
    };
}

impl Default for Heuristics {
    fn default() -> Self {
        Heuristics::ALL
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverConfig {
    pub heuristics: Heuristics,
    /// Maximum recursion depth. `None` uses the number of variables, which the
    /// recursion never exceeds.
    pub recursion_guard: Option<usize>,
    /// Check `Γ ⊨ result` at every level.
    pub check_entailment: bool,
}

impl Default for CoverConfig {
    fn default() -> Self {
        CoverConfig { heuristics: Heuristics::ALL, recursion_guard: None, check_entailment: cfg!(debug_assertions) }
    }
}

/// One DNF term together with the `Θ` of the call that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverTerm {
    pub preds: PredicateSet,
    pub theta: PredicateSet,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CoverStats {
    pub calls: usize,
    pub max_depth: usize,
    pub omegas: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covering {
    pub source: PredicateSet,
    pub terms: Vec<CoverTerm>,
    pub stats: CoverStats,
}

impl Covering {
    pub fn formula(&self) -> Formula {
        Formula::dnf(self.terms.iter().map(|t| &t.preds))
    }
}

/// Equalities of `Γ` as dense rows.
fn equality_rows(n: usize, gamma: &PredicateSet) -> Vec<(Vec<Q>, Q)> {
    gamma.iter().filter(|p| p.is_eq()).map(|p| (p.dense(n), p.constant().clone())).collect()
}

fn affine(n: usize, gamma: &PredicateSet) -> Result<AffineSpace> {
    solve_equalities(n, &equality_rows(n, gamma))?.ok_or(Error::Unsat)
}

/// `Σ w_i z_i rel π_Z(offset)·w` over the variables `z` of a block.
fn block_pred(block: &[usize], w: &[Q], offset: &[Q], rel: Rel) -> Result<LinearPredicate> {
    let rhs = dot(w, &project_block(block, offset)?);
    match LinearPredicate::canonical(block.iter().copied().zip(w.iter().cloned()), rhs, rel) {
        Canonical::Pred(p) => Ok(p),
        Canonical::Const(_) => Err(Error::Internal("zero separating vector".into())),
    }
}

/// Linear constraints on a block's projection shared by all models of `Γ^=`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencySpace {
    pub block: Vec<usize>,
    /// Orthogonal complement of the projected direction space.
    pub space: Subspace,
    /// Projection of the affine offset.
    pub offset: Vec<Q>,
}

fn dependency_of(space: &AffineSpace, block: &[usize]) -> Result<DependencySpace> {
    Ok(DependencySpace {
        block: block.to_vec(),
        space: orth_complement(&project_subspace(block, &space.direction)?),
        offset: project_block(block, &space.offset)?,
    })
}

pub fn dependency_space(n: usize, gamma: &PredicateSet, block: &[usize]) -> Result<DependencySpace> {
    dependency_of(&affine(n, gamma)?, block)
}

fn theta_of(partition: &Partition, gamma: &PredicateSet, space: &AffineSpace) -> Result<PredicateSet> {
    let mut theta = gamma.respecting(partition);
    for block in partition.blocks() {
        let dep = dependency_of(space, block)?;
        for w in dep.space.basis() {
            theta.insert(block_pred(block, w, &space.offset, Rel::Eq)?);
        }
    }
    Ok(theta)
}

/// The respecting part of `Γ` plus one equality per basis vector of each block's
/// dependency space.
pub fn enforce_deps(n: usize, partition: &Partition, gamma: &PredicateSet) -> Result<PredicateSet> {
    match is_pi_simple(n, gamma, partition) {
        PiStatus::Complex => theta_of(partition, gamma, &affine(n, gamma)?),
        PiStatus::Unsat => Err(Error::Unsat),
        PiStatus::Fixes(_) => Err(Error::Simple),
    }
}

/// Dependencies of `Ω` on a block that `Γ` lacks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Excess {
    pub block: Vec<usize>,
    /// Basis of the intersection of `Ω`'s dependency space with `Γ`'s projected directions.
    pub basis: Vec<Vec<Q>>,
    /// Offset of `Ω^=`.
    pub offset: Vec<Q>,
}

impl Excess {
    pub fn pred(&self, i: usize, rel: Rel) -> Result<LinearPredicate> {
        block_pred(&self.block, &self.basis[i], &self.offset, rel)
    }
}

fn excess_of(gamma_space: &AffineSpace, omega_space: &AffineSpace, block: &[usize]) -> Result<Option<Excess>> {
    let omega_dep = orth_complement(&project_subspace(block, &omega_space.direction)?);
    let w = intersect(&omega_dep, &project_subspace(block, &gamma_space.direction)?)?;
    Ok((!w.is_zero()).then(|| Excess {
        block: block.to_vec(),
        basis: w.basis().to_vec(),
        offset: omega_space.offset.clone(),
    }))
}

pub fn excess_dependency(
    n: usize,
    gamma: &PredicateSet,
    omega: &PredicateSet,
    block: &[usize],
) -> Result<Option<Excess>> {
    excess_of(&affine(n, gamma)?, &affine(n, omega)?, block)
}

/// Equivalent respecting form of a simple `Γ`: the fixed block's values are
/// substituted and pinned by equalities. `None` for unsatisfiable `Γ`.
pub fn decsimple(n: usize, partition: &Partition, gamma: &PredicateSet) -> Result<Option<PredicateSet>> {
    let block = match is_pi_simple(n, gamma, partition) {
        PiStatus::Unsat => return Ok(None),
        PiStatus::Complex => return Err(Error::Complex),
        PiStatus::Fixes(i) => partition.block(i),
    };
    let model = sat_model(n, gamma).ok_or(Error::Unsat)?;
    let values: Vec<(usize, Q)> = block.iter().map(|&v| (v, model[v].clone())).collect();
    let mut out = PredicateSet::new();
    for (v, val) in &values {
        out.insert(LinearPredicate::new([(*v, Q::from_integer(1.into()))], val.clone(), Rel::Eq).expect("unit"));
    }
    for p in gamma {
        match p.substitute(&values) {
            Canonical::Pred(q) => {
                out.insert(q);
            }
            Canonical::Const(true) => {}
            Canonical::Const(false) => return Err(Error::Internal("fixed values falsify a predicate".into())),
        }
    }
    Ok(Some(out))
}

/// Orientations of the disequalities `ne` (given by their `=` forms), each
/// conjoined with `base`. Only satisfiable branches are explored.
pub fn compute_d(n: usize, ne: &[LinearPredicate], base: &PredicateSet) -> Vec<PredicateSet> {
    let mut out = Vec::new();
    if is_sat(n, base) {
        compute_d_rec(n, ne, base.clone(), &mut out);
    }
    out
}

fn compute_d_rec(n: usize, ne: &[LinearPredicate], node: PredicateSet, out: &mut Vec<PredicateSet>) {
    let Some((q, rest)) = ne.split_first() else {
        out.push(node);
        return;
    };
    let mut green = false;
    for r in Rel::STRICT {
        let child = node.with(q.with_rel(r));
        if is_sat(n, &child) {
            green = true;
            compute_d_rec(n, rest, child, out);
        }
    }
    assert!(green, "satisfiable strict node without a satisfiable child");
}

struct Ctx<'a> {
    n: usize,
    partition: &'a Partition,
    phi: &'a CompiledFormula,
    cfg: &'a CoverConfig,
    guard: usize,
}

/// Covers a satisfiable `Γ` for a binary partition.
pub fn cover(
    n: usize,
    partition: &Partition,
    gamma: &PredicateSet,
    phi: &CompiledFormula,
    cfg: &CoverConfig,
) -> Result<Covering> {
    if !partition.is_binary() {
        return Err(Error::NotBinary);
    }
    let ctx = Ctx { n, partition, phi, cfg, guard: cfg.recursion_guard.unwrap_or(n) };
    let mut stats = CoverStats::default();
    let mut terms = cover_rec(&ctx, gamma, 0, &mut stats)?;
    terms.sort_by(|a, b| a.preds.cmp(&b.preds));
    terms.dedup_by(|a, b| a.preds == b.preds);
    Ok(Covering { source: gamma.clone(), terms, stats })
}

fn dnf(terms: &[CoverTerm]) -> CompiledFormula {
    CompiledFormula::new(&Formula::dnf(terms.iter().map(|t| &t.preds)))
}

fn cover_rec(ctx: &Ctx<'_>, gamma: &PredicateSet, depth: usize, stats: &mut CoverStats) -> Result<Vec<CoverTerm>> {
    stats.calls += 1;
    stats.max_depth = stats.max_depth.max(depth);
    if depth > ctx.guard {
        return Err(Error::Internal(format!("recursion depth {depth} exceeds guard {}", ctx.guard)));
    }
    let n = ctx.n;
    let h = ctx.cfg.heuristics;
    match is_pi_simple(n, gamma, ctx.partition) {
        PiStatus::Unsat => return Ok(Vec::new()),
        PiStatus::Fixes(_) => {
            let preds = decsimple(n, ctx.partition, gamma)?.expect("satisfiable");
            return Ok(vec![CoverTerm { theta: preds.clone(), preds }]);
        }
        PiStatus::Complex => {}
    }
    let gamma_space = affine(n, gamma)?;
    let theta = theta_of(ctx.partition, gamma, &gamma_space)?;
    if h.theta_shortcut && entails_formula(n, &theta, ctx.phi) {
        return Ok(vec![CoverTerm { preds: theta.clone(), theta }]);
    }

    let mut omegas = disjunct::disjuncts(n, ctx.phi, Some(&theta));
    if h.negatives_first {
        omegas.sort_by_key(|d| d.entails_phi);
    }
    let negatives = omegas.iter().filter(|d| !d.entails_phi).count();

    let mut ne: Vec<LinearPredicate> = Vec::new();
    let mut strict = PredicateSet::new();
    let mut delta: Vec<CoverTerm> = Vec::new();
    let mut seen: HashSet<PredicateSet> = HashSet::new();

    for (idx, om) in omegas.iter().enumerate() {
        if h.negatives_first && idx == negatives && negatives > 0 {
            let candidate = assemble(n, gamma, &theta, &ne, &strict, &delta);
            if candidate.iter().all(|t| entails_formula(n, &t.preds, ctx.phi)) {
                return finish(ctx, gamma, candidate);
            }
        }
        stats.omegas += 1;
        let omega = om.preds.union(&theta);
        let eqs = omega.equalities();
        if h.group_by_equalities && seen.contains(&eqs) {
            continue;
        }
        if h.restriction_filter && !agrees(n, &omega, &ne, &strict) {
            continue;
        }
        if h.group_by_equalities {
            seen.insert(eqs);
        }
        let omega_space = affine(n, &omega)?;
        for block in ctx.partition.blocks() {
            let Some(excess) = excess_of(&gamma_space, &omega_space, block)? else {
                continue;
            };
            if h.entailed_separator {
                let mut entailed = None;
                'basis: for i in 0..excess.basis.len() {
                    for r in Rel::STRICT {
                        let q = excess.pred(i, r)?;
                        if entails_pred(n, gamma, &q) {
                            entailed = Some(q);
                            break 'basis;
                        }
                    }
                }
                if let Some(q) = entailed {
                    strict.insert(q);
                    break;
                }
            }
            let q = excess.pred(0, Rel::Eq)?;
            let sub = gamma.with(q.clone());
            debug_assert!(grows(n, &gamma_space, &sub, block), "recursive call without new dependencies");
            ne.push(q);
            delta.extend(cover_rec(ctx, &sub, depth + 1, stats)?);
            break;
        }
    }
    let terms = assemble(n, gamma, &theta, &ne, &strict, &delta);
    finish(ctx, gamma, terms)
}

/// Whether the block's dependency space of `sub` is larger than that of `Γ`.
fn grows(n: usize, gamma_space: &AffineSpace, sub: &PredicateSet, block: &[usize]) -> bool {
    let Ok(sub_space) = affine(n, sub) else { return true };
    let before = dependency_of(gamma_space, block).map(|d| d.space.dim());
    let after = dependency_of(&sub_space, block).map(|d| d.space.dim());
    matches!((before, after), (Ok(b), Ok(a)) if a > b)
}

/// `Ω` shares a model with the restriction: the strict part is consistent with `Ω`
/// and no disequality is forced to equality.
fn agrees(n: usize, omega: &PredicateSet, ne: &[LinearPredicate], strict: &PredicateSet) -> bool {
    let base = omega.union(strict);
    is_sat(n, &base) && ne.iter().all(|q| !entails_pred(n, &base, q))
}

fn assemble(
    n: usize,
    gamma: &PredicateSet,
    theta: &PredicateSet,
    ne: &[LinearPredicate],
    strict: &PredicateSet,
    delta: &[CoverTerm],
) -> Vec<CoverTerm> {
    let mut terms: Vec<CoverTerm> = delta.to_vec();
    for d in compute_d(n, ne, strict) {
        if is_sat(n, gamma.iter().chain(&d)) {
            terms.push(CoverTerm { preds: theta.union(&d), theta: theta.clone() });
        }
    }
    terms
}

fn finish(ctx: &Ctx<'_>, gamma: &PredicateSet, terms: Vec<CoverTerm>) -> Result<Vec<CoverTerm>> {
    if ctx.cfg.check_entailment && !entails_formula(ctx.n, gamma, &dnf(&terms)) {
        return Err(Error::Internal("covering not entailed by its disjunct".into()));
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use vardec_linalg::int;

    fn p(terms: &[(usize, i64)], c: i64, rel: Rel) -> LinearPredicate {
        LinearPredicate::new(terms.iter().map(|&(v, k)| (v, int(k))), int(c), rel).unwrap()
    }

    fn set(ps: &[LinearPredicate]) -> PredicateSet {
        ps.iter().cloned().collect()
    }

    #[test]
    fn decsimple_substitutes() {
        let pi = Partition::singletons(2);
        let g = set(&[p(&[(0, 1)], 1, Rel::Eq), p(&[(0, 1), (1, 1)], 3, Rel::Lt)]);
        assert_eq!(decsimple(2, &pi, &g).unwrap(), Some(set(&[p(&[(0, 1)], 1, Rel::Eq), p(&[(1, 1)], 2, Rel::Lt)])));
        let bad = set(&[p(&[(0, 1)], 0, Rel::Lt), p(&[(0, 1)], 0, Rel::Gt)]);
        assert_eq!(decsimple(2, &pi, &bad).unwrap(), None);
        let complex = set(&[p(&[(0, 1), (1, 1)], 2, Rel::Lt)]);
        assert_eq!(decsimple(2, &pi, &complex), Err(Error::Complex));
    }

    #[test]
    fn compute_d_small() {
        let d = compute_d(1, &[p(&[(0, 1)], 1, Rel::Eq)], &PredicateSet::new());
        assert_eq!(d, vec![set(&[p(&[(0, 1)], 1, Rel::Lt)]), set(&[p(&[(0, 1)], 1, Rel::Gt)])]);
        let d = compute_d(1, &[p(&[(0, 1)], 0, Rel::Eq), p(&[(0, 1)], 1, Rel::Eq)], &PredicateSet::new());
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn cross_line_has_no_dependencies() {
        let g = set(&[p(&[(0, 1), (1, 1)], 0, Rel::Eq)]);
        let pi = Partition::singletons(2);
        for b in pi.blocks() {
            assert!(dependency_space(2, &g, b).unwrap().space.is_zero());
        }
        assert!(enforce_deps(2, &pi, &g).unwrap().is_empty());
    }
}
