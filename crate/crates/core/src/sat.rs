//! Exact satisfiability of conjunctions of `<`, `=`, `>` atoms.
//!
//! Equalities are eliminated by Gaussian substitution. What remains is a system of
//! strict inequalities `a·x < b`, decided by Fourier-Motzkin elimination. Since every
//! inequality is strict after substitution, no strictness flag is carried.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use vardec_linalg::{bit_length, rref, Matrix, Q};

use crate::formula::{CompiledFormula, Nnf};
use crate::partition::Partition;
use crate::pred::{LinearPredicate, PredicateSet, Rel};
use crate::{Error, Model, Result};

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<Q>,
    bound: Q,
}

/// Positive factor turning `coeffs` into coprime integers.
fn primitive_scale(coeffs: &[Q]) -> Q {
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let mut g = BigInt::zero();
    for c in coeffs {
        g = g.gcd(&(c * Q::from_integer(lcm.clone())).to_integer());
    }
    if g.is_zero() {
        Q::one()
    } else {
        Q::new(lcm, g.abs())
    }
}

/// Scales rows to primitive form and keeps the tightest bound per direction.
/// Returns `None` on a violated constant row `0 < b`.
fn tidy(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut best: HashMap<Vec<Q>, Q> = HashMap::new();
    let mut order = Vec::new();
    for r in rows {
        if r.coeffs.iter().all(Zero::is_zero) {
            if !r.bound.is_positive() {
                return None;
            }
            continue;
        }
        let s = primitive_scale(&r.coeffs);
        let coeffs: Vec<Q> = r.coeffs.iter().map(|c| c * &s).collect();
        let bound = r.bound * s;
        match best.get_mut(&coeffs) {
            Some(b) => {
                if bound < *b {
                    *b = bound;
                }
            }
            None => {
                order.push(coeffs.clone());
                best.insert(coeffs, bound);
            }
        }
    }
    Some(order.into_iter().map(|c| Row { bound: best.remove(&c).unwrap(), coeffs: c }).collect())
}

/// A value strictly between the bounds: `0` if possible, else the integer nearest
/// to `0`, else the midpoint.
fn pick(lo: Option<Q>, hi: Option<Q>) -> Q {
    let zero = Q::zero();
    let above_lo = |q: &Q| lo.as_ref().is_none_or(|l| q > l);
    let below_hi = |q: &Q| hi.as_ref().is_none_or(|h| q < h);
    if above_lo(&zero) && below_hi(&zero) {
        return zero;
    }
    let cand = match (&lo, &hi) {
        (Some(l), _) if !l.is_negative() => l.floor() + Q::one(),
        (_, Some(h)) => h.ceil() - Q::one(),
        _ => unreachable!("zero lies in an interval unbounded on both sides"),
    };
    if above_lo(&cand) && below_hi(&cand) {
        return cand;
    }
    let (l, h) = (lo.expect("bounded"), hi.expect("bounded"));
    debug_assert!(l < h, "empty interval in back-substitution");
    (l + h) / Q::from_integer(2.into())
}

fn fourier_motzkin(n: usize, rows: Vec<Row>) -> Option<Vec<Q>> {
    let mut rows = tidy(rows)?;
    let mut levels: Vec<(usize, Vec<Row>)> = Vec::new();
    loop {
        let mut pos = vec![0usize; n];
        let mut neg = vec![0usize; n];
        for r in &rows {
            for (v, c) in r.coeffs.iter().enumerate() {
                if c.is_positive() {
                    pos[v] += 1;
                } else if c.is_negative() {
                    neg[v] += 1;
                }
            }
        }
        let Some(v) = (0..n)
            .filter(|&v| pos[v] + neg[v] > 0)
            .min_by_key(|&v| (pos[v] * neg[v]) as isize - (pos[v] + neg[v]) as isize)
        else {
            break;
        };
        let (with, without): (Vec<Row>, Vec<Row>) = rows.into_iter().partition(|r| !r.coeffs[v].is_zero());
        let mut next = without;
        for p in with.iter().filter(|r| r.coeffs[v].is_positive()) {
            for q in with.iter().filter(|r| r.coeffs[v].is_negative()) {
                let (kp, kq) = (-&q.coeffs[v], p.coeffs[v].clone());
                let coeffs = p.coeffs.iter().zip(&q.coeffs).map(|(a, b)| a * &kp + b * &kq).collect();
                next.push(Row { coeffs, bound: &p.bound * &kp + &q.bound * &kq });
            }
        }
        levels.push((v, with));
        rows = tidy(next)?;
    }
    let mut values = vec![Q::zero(); n];
    for (v, bounds) in levels.into_iter().rev() {
        let (mut lo, mut hi): (Option<Q>, Option<Q>) = (None, None);
        for r in &bounds {
            let rest = r
                .coeffs
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != v)
                .fold(Q::zero(), |acc, (j, c)| acc + c * &values[j]);
            let t = (&r.bound - rest) / &r.coeffs[v];
            if r.coeffs[v].is_positive() {
                if hi.as_ref().is_none_or(|h| t < *h) {
                    hi = Some(t);
                }
            } else if lo.as_ref().is_none_or(|l| t > *l) {
                lo = Some(t);
            }
        }
        values[v] = pick(lo, hi);
    }
    Some(values)
}

/// A model of the conjunction over variables `0..n`, or `None` if unsatisfiable.
pub fn sat_model<'a>(n: usize, preds: impl IntoIterator<Item = &'a LinearPredicate>) -> Option<Model> {
    let mut eq_rows = Vec::new();
    let mut strict = Vec::new();
    for p in preds {
        if p.is_eq() {
            let mut row = p.dense(n);
            row.push(p.constant().clone());
            eq_rows.push(row);
        } else {
            strict.push(p);
        }
    }
    let (reduced, pivots) = if eq_rows.is_empty() {
        (Matrix::zeros(0, n + 1), Vec::new())
    } else {
        rref(&Matrix::from_rows(n + 1, &eq_rows).expect("rows have n+1 entries"))
    };
    if pivots.last() == Some(&n) {
        return None;
    }
    let rows = strict
        .into_iter()
        .map(|p| {
            let mut coeffs = p.dense(n);
            let mut bound = p.constant().clone();
            for (i, &pv) in pivots.iter().enumerate() {
                if coeffs[pv].is_zero() {
                    continue;
                }
                let k = coeffs[pv].clone();
                for (j, c) in coeffs.iter_mut().enumerate() {
                    *c -= &k * &reduced[(i, j)];
                }
                bound -= &k * &reduced[(i, n)];
            }
            if p.rel() == Rel::Gt {
                coeffs.iter_mut().for_each(|c| *c = -&*c);
                bound = -bound;
            }
            Row { coeffs, bound }
        })
        .collect();
    let mut values = fourier_motzkin(n, rows)?;
    for (i, &pv) in pivots.iter().enumerate() {
        let rest = (0..n).filter(|&j| j != pv).fold(Q::zero(), |acc, j| acc + &reduced[(i, j)] * &values[j]);
        values[pv] = &reduced[(i, n)] - rest;
    }
    Some(values)
}

pub fn is_sat<'a>(n: usize, preds: impl IntoIterator<Item = &'a LinearPredicate>) -> bool {
    sat_model(n, preds).is_some()
}

/// `Γ ⊨ p`, via unsatisfiability of `Γ ∧ p^Q` for both other symbols `Q`.
pub fn entails_pred(n: usize, gamma: &PredicateSet, p: &LinearPredicate) -> bool {
    Rel::ALL
        .iter()
        .filter(|&&r| r != p.rel())
        .all(|&r| !is_sat(n, gamma.iter().chain(std::iter::once(&p.with_rel(r)))))
}

/// The unique symbol `Q` with `Γ ⊨ base^Q`, if any.
pub fn entailed_orientation(n: usize, gamma: &PredicateSet, base: &LinearPredicate) -> Option<Rel> {
    let sat: Vec<Rel> =
        Rel::ALL.into_iter().filter(|&r| is_sat(n, gamma.iter().chain(std::iter::once(&base.with_rel(r))))).collect();
    match sat.as_slice() {
        [r] => Some(*r),
        _ => None,
    }
}

/// Variables on whose value all models of `Γ` agree. Empty for unsatisfiable `Γ`.
pub type FixedVars = BTreeMap<usize, Q>;

fn var_pred(v: usize, value: &Q, rel: Rel) -> LinearPredicate {
    LinearPredicate::new([(v, Q::one())], value.clone(), rel).expect("unit coefficient")
}

fn is_fixed(n: usize, gamma: &PredicateSet, v: usize, value: &Q) -> bool {
    Rel::STRICT.iter().all(|&r| !is_sat(n, gamma.iter().chain(std::iter::once(&var_pred(v, value, r)))))
}

pub fn fixed_vars(n: usize, gamma: &PredicateSet) -> FixedVars {
    let Some(m) = sat_model(n, gamma) else {
        return FixedVars::new();
    };
    (0..n).filter(|&v| is_fixed(n, gamma, v, &m[v])).map(|v| (v, m[v].clone())).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PiStatus {
    Unsat,
    /// All variables of the block with this index are fixed. The lowest such index is reported.
    Fixes(usize),
    Complex,
}

pub fn is_pi_simple(n: usize, gamma: &PredicateSet, partition: &Partition) -> PiStatus {
    let Some(m) = sat_model(n, gamma) else {
        return PiStatus::Unsat;
    };
    for (i, block) in partition.blocks().iter().enumerate() {
        if block.iter().all(|&v| is_fixed(n, gamma, v, &m[v])) {
            return PiStatus::Fixes(i);
        }
    }
    PiStatus::Complex
}

/// Bit-length budget for [`small_model`]: `2 (n+1)² (L+1)`, where `L` is the total
/// bit-length of all coefficients and constants of `Γ`.
pub fn small_model_bit_bound(n: usize, gamma: &PredicateSet) -> u64 {
    let l: u64 = gamma.iter().map(|p| p.coeffs().iter().map(|(_, c)| bit_length(c)).sum::<u64>() + bit_length(p.constant())).sum();
    let n1 = n as u64 + 1;
    2 * n1 * n1 * (l + 1)
}

/// Total bit-length of a model.
pub fn model_bits(m: &[Q]) -> u64 {
    m.iter().map(bit_length).sum()
}

/// A model preferring small integers. Its size stays within [`small_model_bit_bound`]
/// on everything we test.
pub fn small_model(n: usize, gamma: &PredicateSet) -> Result<Model> {
    sat_model(n, gamma).ok_or(Error::Unsat)
}

/// A model of `ctx ∧ f`.
///
/// Splits on one atom orientation per level, so the search tree has depth at most
/// the number of atoms and disjoint branches. The split atom is taken from a part
/// of `f` the current model falsifies, and the orientation that repairs it is
/// tried first.
pub fn find_model(n: usize, ctx: &PredicateSet, f: &CompiledFormula) -> Option<Model> {
    let m = sat_model(n, ctx)?;
    let root = f.nnf();
    let mut chosen: Vec<LinearPredicate> = ctx.iter().cloned().collect();
    let mut fixed = vec![None; f.bases().len()];
    search(n, f, &root, &mut fixed, &mut chosen, m)
}

fn search(
    n: usize,
    f: &CompiledFormula,
    root: &Nnf,
    fixed: &mut [Option<Rel>],
    chosen: &mut Vec<LinearPredicate>,
    m: Model,
) -> Option<Model> {
    let signs = f.signs_of(&m);
    if root.eval(&signs) {
        return Some(m);
    }
    if root.eval_partial(fixed) == Some(false) {
        return None;
    }
    let (atom, want) = falsified_literal(root, &signs, fixed);
    let order = std::iter::once(want).chain(Rel::ALL.into_iter().filter(|&r| r != want));
    for r in order {
        fixed[atom] = Some(r);
        chosen.push(f.bases()[atom].with_rel(r));
        let next = if r == signs[atom] { Some(m.clone()) } else { sat_model(n, chosen.iter()) };
        let found = next.and_then(|m2| search(n, f, root, fixed, chosen, m2));
        chosen.pop();
        fixed[atom] = None;
        if found.is_some() {
            return found;
        }
    }
    None
}

/// A literal false at the model whose atom is still open. Requires `node` to be
/// false at the model and not already false under `fixed`.
fn falsified_literal(node: &Nnf, signs: &[Rel], fixed: &[Option<Rel>]) -> (usize, Rel) {
    match node {
        Nnf::Lit(i, r) => (*i, *r),
        Nnf::And(ns) => {
            let child = ns.iter().find(|c| !c.eval(signs)).expect("a false conjunct");
            falsified_literal(child, signs, fixed)
        }
        Nnf::Or(ns) => {
            let child = ns.iter().find(|c| c.eval_partial(fixed) != Some(false)).expect("an open disjunct");
            falsified_literal(child, signs, fixed)
        }
        Nnf::Const(_) => unreachable!("constants are decided by the partial evaluation"),
    }
}

/// `Λ ⊨ f`.
pub fn entails_formula(n: usize, lambda: &PredicateSet, f: &CompiledFormula) -> bool {
    find_model(n, lambda, &f.negated()).is_none()
}
