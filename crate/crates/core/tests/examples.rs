//! End-to-end checks on small hand-analyzed formulas.

use vardec_core::cover::{cover, enforce_deps, excess_dependency, CoverConfig};
use vardec_core::sat::{entails_formula, entails_pred};
use vardec_core::vardec::{check_decomposition, decide, mondec, Config, Outcome};
use vardec_core::{Cmp, CompiledFormula, Formula, LinExpr, LinearPredicate, Partition, PredicateSet, Rel};
use vardec_linalg::{frac, int, normalize_vector, Q};

fn lin(terms: &[(usize, i64)], c: i64) -> (Vec<(usize, Q)>, Q) {
    (terms.iter().map(|&(v, k)| (v, int(k))).collect(), int(c))
}

fn atom(terms: &[(usize, i64)], c: i64, rel: Rel) -> LinearPredicate {
    let (t, c) = lin(terms, c);
    LinearPredicate::new(t, c, rel).unwrap()
}

fn set(ps: &[LinearPredicate]) -> PredicateSet {
    ps.iter().cloned().collect()
}

fn ne(p: &LinearPredicate) -> Formula {
    Formula::Or(vec![Formula::Atom(p.with_rel(Rel::Lt)), Formula::Atom(p.with_rel(Rel::Gt))])
}

/// `x+y≠2 ∨ x−y≠0` over `x=0, y=1`.
fn cross() -> Formula {
    Formula::Or(vec![ne(&atom(&[(0, 1), (1, 1)], 2, Rel::Eq)), ne(&atom(&[(0, 1), (1, -1)], 0, Rel::Eq))])
}

#[test]
fn cross_covering_is_half_plane() {
    let phi = CompiledFormula::new(&cross());
    let gamma = set(&[atom(&[(0, 1), (1, 1)], 2, Rel::Lt), atom(&[(0, 1), (1, -1)], 0, Rel::Lt)]);
    let pi = Partition::singletons(2);
    assert!(enforce_deps(2, &pi, &gamma).unwrap().is_empty());
    let omega = set(&[atom(&[(0, 1), (1, 1)], 2, Rel::Eq), atom(&[(0, 1), (1, -1)], 0, Rel::Eq)]);
    let ex = excess_dependency(2, &gamma, &omega, &[0]).unwrap().unwrap();
    assert_eq!(ex.basis, vec![vec![int(1)]]);
    assert_eq!(ex.offset, vec![int(1), int(1)]);
    let c = cover(2, &pi, &gamma, &phi, &CoverConfig::default()).unwrap();
    let psi = CompiledFormula::new(&c.formula());
    let half = atom(&[(0, 1)], 1, Rel::Lt);
    assert!(entails_formula(2, &set(&[half.clone()]), &psi));
    for t in &c.terms {
        assert!(entails_pred(2, &t.preds, &half));
    }
}

#[test]
fn cross_is_monadically_decomposable() {
    let phi = cross();
    let Outcome::Decomposable(d) = mondec(2, &phi, &Config::default()).unwrap() else { panic!("not decomposable") };
    let pi = Partition::singletons(2);
    assert!(check_decomposition(2, &phi, &pi, &d.formula()));
    let expected = Formula::Or(vec![ne(&atom(&[(0, 1)], 1, Rel::Eq)), ne(&atom(&[(1, 1)], 1, Rel::Eq))]);
    assert!(check_decomposition(2, &phi, &pi, &expected));
}

/// The five-atom formula over `x1..x3 = 0..2`, `y1..y3 = 3..5`.
fn six() -> (Formula, [LinearPredicate; 5]) {
    let p1 = atom(&[(0, 12), (1, -2), (2, 16), (3, 28), (4, 35), (5, -7)], 0, Rel::Eq);
    let p2 = atom(&[(0, 6), (1, -1), (2, 8), (3, 16), (4, 20), (5, -4)], 0, Rel::Eq);
    let p3 = atom(&[(0, 4), (1, -1), (2, 4), (3, 1), (4, 1)], 1, Rel::Eq);
    let p4 = atom(&[(0, 6), (1, -3), (3, 2), (4, 1), (5, 1)], 0, Rel::Eq);
    let p5 = atom(&[(0, 3), (1, -1), (2, 2), (3, 2), (4, 1), (5, 1)], 0, Rel::Eq);
    let a = |p: &LinearPredicate, r| Formula::Atom(p.with_rel(r));
    let phi = Formula::And(vec![
        a(&p1, Rel::Eq),
        a(&p2, Rel::Eq),
        Formula::Or(vec![a(&p3, Rel::Lt), a(&p4, Rel::Gt)]),
        Formula::implies(a(&p3, Rel::Eq), Formula::Or(vec![a(&p5, Rel::Lt), a(&p5, Rel::Gt)])),
    ]);
    (phi, [p1, p2, p3, p4, p5])
}

fn six_pi() -> Partition {
    Partition::new(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap()
}

fn oriented(ps: &[LinearPredicate; 5], rels: [Rel; 5]) -> PredicateSet {
    ps.iter().zip(rels).map(|(p, r)| p.with_rel(r)).collect()
}

#[test]
fn six_theta_and_separator() {
    use Rel::*;
    let (_, ps) = six();
    let pi = six_pi();
    let gamma1 = oriented(&ps, [Eq, Eq, Gt, Gt, Lt]);
    let theta = enforce_deps(6, &pi, &gamma1).unwrap();
    let expected = set(&[atom(&[(0, 6), (1, -1), (2, 8)], 0, Eq), atom(&[(3, -4), (4, -5), (5, 1)], 0, Eq)]);
    assert_eq!(theta, expected);
    let omega = oriented(&ps, [Eq, Eq, Eq, Gt, Eq]).union(&theta);
    let ex = excess_dependency(6, &gamma1, &omega, &[0, 1, 2]).unwrap().unwrap();
    assert_eq!(ex.basis.len(), 1);
    assert_eq!(normalize_vector(&ex.basis[0]), normalize_vector(&[frac(-31, 22), int(1), frac(13, 11)]));
    // The separator, scaled to integers: 31x1 − 22x2 − 26x3 = 202/3.
    let sep = ex.pred(0, Gt).unwrap();
    assert_eq!(sep.constant(), &frac(202, 3));
    assert!(entails_pred(6, &gamma1, &sep));
}

#[test]
fn six_first_covering_entails_phi() {
    use Rel::*;
    let (phi, ps) = six();
    let compiled = CompiledFormula::new(&phi);
    let gamma1 = oriented(&ps, [Eq, Eq, Gt, Gt, Lt]);
    let c = cover(6, &six_pi(), &gamma1, &compiled, &CoverConfig::default()).unwrap();
    assert!(entails_formula(6, &gamma1, &CompiledFormula::new(&c.formula())));
    for t in &c.terms {
        assert!(entails_formula(6, &t.preds, &compiled));
    }
    // the hand-derived covering also entails φ
    let theta = enforce_deps(6, &six_pi(), &gamma1).unwrap();
    let paper = theta.with(
        LinearPredicate::new([(0, frac(-31, 22)), (1, int(1)), (2, frac(13, 11))], frac(-101, 33), Lt).unwrap(),
    );
    assert!(entails_formula(6, &paper, &compiled));
}

#[test]
fn six_is_decomposable() {
    let (phi, _) = six();
    let Outcome::Decomposable(d) = decide(6, &phi, &six_pi(), &Config::default()).unwrap() else {
        panic!("not decomposable")
    };
    assert!(check_decomposition(6, &phi, &six_pi(), &d.formula()));
}

#[test]
fn diagonal_is_not_decomposable() {
    let x = LinExpr::var(0);
    let y = LinExpr::var(1);
    let phi = Formula::compare(x, Cmp::Eq, y);
    assert!(!mondec(2, &phi, &Config::default()).unwrap().is_decomposable());
}
