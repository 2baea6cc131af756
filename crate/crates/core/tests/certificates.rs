//! Λ-proof verification, construction and compression.

use vardec_core::cert::{compress, open_cube, prove, prove_compressed, verify, Check, LambdaProof};
use vardec_core::vardec::{mondec, Config, Outcome};
use vardec_core::{Formula, LinearPredicate, Partition, PredicateSet, Rel};
use vardec_linalg::{int, Q};

fn atom(terms: &[(usize, i64)], c: i64, rel: Rel) -> LinearPredicate {
    LinearPredicate::new(terms.iter().map(|&(v, k)| (v, int(k))), int(c), rel).unwrap()
}

fn set(ps: &[LinearPredicate]) -> PredicateSet {
    ps.iter().cloned().collect()
}

fn diag() -> LinearPredicate {
    atom(&[(0, 1), (1, -1)], 0, Rel::Eq)
}

fn x_eq_y() -> Formula {
    Formula::Atom(diag())
}

#[test]
fn handcrafted_proof_for_diagonal() {
    let pi = Partition::singletons(2);
    let proof = LambdaProof {
        lambda0: set(&[diag().with_rel(Rel::Gt)]),
        lambda1: set(&[diag()]),
        lambda0p: set(&[diag().with_rel(Rel::Gt)]),
        lambda1p: set(&[diag()]),
    };
    assert_eq!(verify(2, &x_eq_y(), &pi, &proof), Ok(()));
    let bad = LambdaProof { lambda1: set(&[diag().with_rel(Rel::Lt)]), lambda1p: set(&[diag().with_rel(Rel::Lt)]), ..proof };
    assert_eq!(verify(2, &x_eq_y(), &pi, &bad).unwrap_err().check, Check::PNext);
}

#[test]
fn doubled_diagonal_collapses_to_one_atom() {
    use vardec_core::{Cmp, LinExpr};
    let (x, y) = (LinExpr::var(0), LinExpr::var(1));
    let doubled = Formula::compare(x.clone().scale(&int(2)), Cmp::Eq, y.clone().scale(&int(2)));
    let phi = Formula::And(vec![Formula::compare(x, Cmp::Eq, y), doubled]);
    assert_eq!(phi.bases(), vec![diag()]);
    let proof = LambdaProof {
        lambda0: set(&[diag().with_rel(Rel::Gt)]),
        lambda1: set(&[diag()]),
        lambda0p: set(&[diag().with_rel(Rel::Gt), diag().with_rel(Rel::Gt)]),
        lambda1p: set(&[diag(), diag()]),
    };
    assert_eq!(verify(2, &phi, &Partition::singletons(2), &proof), Ok(()));
    let Outcome::NonDecomposable(w) = mondec(2, &phi, &Config::default()).unwrap() else { panic!() };
    assert_eq!(verify(2, &phi, &w.partition, &prove(2, &phi, &w).unwrap()), Ok(()));
}

#[test]
fn generated_proof_for_diagonal() {
    let Outcome::NonDecomposable(w) = mondec(2, &x_eq_y(), &Config::default()).unwrap() else { panic!() };
    let proof = prove(2, &x_eq_y(), &w).unwrap();
    assert_eq!(verify(2, &x_eq_y(), &w.partition, &proof), Ok(()));
    let small = prove_compressed(2, &x_eq_y(), &w).unwrap();
    assert_eq!(verify(2, &x_eq_y(), &w.partition, &small), Ok(()));
}

#[test]
fn cube_contains_sampled_points() {
    let strict = set(&[atom(&[(0, 2), (1, -3)], 4, Rel::Lt), atom(&[(0, 1), (1, 1)], -5, Rel::Gt)]);
    let v = [int(0), int(0)];
    let cube = open_cube(&v, &strict).unwrap();
    let half = &cube.epsilon / int(2);
    let steps = 8;
    for i in 0..=steps {
        for j in 0..=steps {
            // points strictly inside the closed cube shrunk by one step
            let t = |k: i64| (int(2 * k - steps) / int(steps + 1)) * &half;
            let point: Vec<Q> = vec![&v[0] + t(i), &v[1] + t(j)];
            assert!(strict.holds(&point));
        }
    }
}

#[test]
fn compress_leaves_proof_without_extras() {
    let pi = Partition::singletons(2);
    let proof = LambdaProof {
        lambda0: set(&[diag().with_rel(Rel::Gt)]),
        lambda1: set(&[diag()]),
        lambda0p: set(&[diag().with_rel(Rel::Gt)]),
        lambda1p: set(&[diag()]),
    };
    assert_eq!(compress(2, &x_eq_y(), &pi, &proof, &PredicateSet::new()).unwrap(), proof);
}
