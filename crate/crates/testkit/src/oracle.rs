//! Reference procedures for cross-checking the engine.
//!
//! These are deliberately naive and share no code with the engine's feasibility
//! path: plain Fourier–Motzkin over `≤`/`<` rows, exhaustive orientation
//! enumeration, and a rank test for fixed variables.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use vardec_core::{LinearPredicate, PredicateSet, Rel};
use vardec_linalg::{Matrix, Q};

/// `a·x < b` when `strict`, else `a·x ≤ b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Row {
    a: Vec<Q>,
    b: Q,
    strict: bool,
}

impl Row {
    fn negated(a: &[Q], b: &Q, strict: bool) -> Row {
        Row { a: a.iter().map(|x| -x).collect(), b: -b, strict }
    }

    /// Scales so the largest coefficient magnitude is one.
    fn normalized(mut self) -> Row {
        let scale = self.a.iter().map(|x| x.abs()).max();
        if let Some(s) = scale.filter(|s| !s.is_zero()) {
            for x in &mut self.a {
                *x = &*x / &s;
            }
            self.b = &self.b / &s;
        }
        self
    }

    fn is_constant(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    /// Truth value of a constant row `0 ≤ b` or `0 < b`.
    fn constant_holds(&self) -> bool {
        if self.strict {
            self.b.is_positive()
        } else {
            !self.b.is_negative()
        }
    }
}

fn rows_of(n: usize, p: &LinearPredicate) -> Vec<Row> {
    let a = p.dense(n);
    let b = p.constant().clone();
    match p.rel() {
        Rel::Lt => vec![Row { a, b, strict: true }],
        Rel::Gt => vec![Row::negated(&a, &b, true)],
        Rel::Eq => vec![Row::negated(&a, &b, false), Row { a, b, strict: false }],
    }
}

/// Feasibility of a conjunction over `n` variables by Fourier–Motzkin elimination.
pub fn feasible<'a>(n: usize, preds: impl IntoIterator<Item = &'a LinearPredicate>) -> bool {
    let mut rows: BTreeSet<Row> = preds.into_iter().flat_map(|p| rows_of(n, p)).map(Row::normalized).collect();
    for j in 0..n {
        if rows.iter().any(|r| r.is_constant() && !r.constant_holds()) {
            return false;
        }
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), BTreeSet::new());
        for r in tightest(rows) {
            if r.a[j].is_positive() {
                pos.push(r);
            } else if r.a[j].is_negative() {
                neg.push(r);
            } else if !r.is_constant() {
                next.insert(r);
            }
        }
        for p in &pos {
            for q in &neg {
                let (cp, cq) = (p.a[j].clone(), -&q.a[j]);
                let a: Vec<Q> = p.a.iter().zip(&q.a).map(|(x, y)| &cq * x + &cp * y).collect();
                let row = Row { a, b: &cq * &p.b + &cp * &q.b, strict: p.strict || q.strict };
                if row.is_constant() {
                    if !row.constant_holds() {
                        return false;
                    }
                } else {
                    next.insert(row.normalized());
                }
            }
        }
        rows = next;
    }
    rows.iter().all(Row::constant_holds)
}

/// Keeps one row per normalized coefficient vector: the smallest bound, strict on ties.
fn tightest(rows: BTreeSet<Row>) -> Vec<Row> {
    let mut out: Vec<Row> = Vec::new();
    for r in rows {
        match out.last_mut() {
            Some(last) if last.a == r.a => {
                if last.b == r.b && r.strict {
                    last.strict = true;
                }
            }
            _ => out.push(r),
        }
    }
    out
}

/// Every satisfiable choice of `<` or `>` for each of `ne`, conjoined with
/// `base`. Prefixes the oracle rejects are not extended, which loses nothing:
/// an infeasible prefix has no feasible completion.
pub fn strict_regions(n: usize, ne: &[LinearPredicate], base: &PredicateSet) -> BTreeSet<PredicateSet> {
    fn go(n: usize, ne: &[LinearPredicate], node: PredicateSet, out: &mut BTreeSet<PredicateSet>) {
        if !feasible(n, node.iter()) {
            return;
        }
        match ne.split_first() {
            None => {
                out.insert(node);
            }
            Some((q, rest)) => {
                for r in [Rel::Lt, Rel::Gt] {
                    go(n, rest, node.with(q.with_rel(r)), out);
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    go(n, ne, base.clone(), &mut out);
    out
}

/// Variables whose unit vector lies in the row space of the equalities of `gamma`.
/// For a satisfiable set these are exactly the variables with a single value.
pub fn fixed_by_rank(n: usize, gamma: &PredicateSet) -> BTreeSet<usize> {
    let rows: Vec<Vec<Q>> = gamma.equalities().iter().map(|p| p.dense(n)).collect();
    let rank = |rows: &[Vec<Q>]| if rows.is_empty() { 0 } else { Matrix::from_rows(n, rows).expect("width").rank() };
    let base = rank(&rows);
    (0..n)
        .filter(|&v| {
            let mut with = rows.clone();
            let mut unit = vec![Q::zero(); n];
            unit[v] = Q::from_integer(1.into());
            with.push(unit);
            rank(&with) == base
        })
        .collect()
}

/// Truth table of a propositional formula given as a closure over assignments.
pub fn prop_satisfiable(vars: usize, eval: impl Fn(&[bool]) -> bool) -> bool {
    (0u32..1 << vars).any(|mask| {
        let assignment: Vec<bool> = (0..vars).map(|i| mask >> i & 1 == 1).collect();
        eval(&assignment)
    })
}
