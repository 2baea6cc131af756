//! Proptest strategies for predicates, formulas, partitions and subspaces.

use proptest::prelude::*;
use vardec_core::{Formula, LinearPredicate, Partition, PredicateSet, Rel};
use vardec_linalg::{int, Matrix, Subspace, Q};

pub fn rel() -> impl Strategy<Value = Rel> {
    prop_oneof![Just(Rel::Lt), Just(Rel::Eq), Just(Rel::Gt)]
}

pub fn strict_rel() -> impl Strategy<Value = Rel> {
    prop_oneof![Just(Rel::Lt), Just(Rel::Gt)]
}

fn build(coeffs: Vec<i64>, constant: i64, rel: Rel) -> Option<LinearPredicate> {
    LinearPredicate::new(coeffs.into_iter().enumerate().filter(|(_, k)| *k != 0).map(|(v, k)| (v, int(k))), int(constant), rel)
}

/// An atom over variables `0..n` with integer coefficients in `[-k, k]`.
pub fn predicate_with(n: usize, k: i64, rel: impl Strategy<Value = Rel>) -> impl Strategy<Value = LinearPredicate> {
    (prop::collection::vec(-k..=k, n), -k..=k, rel)
        .prop_filter_map("all coefficients zero", |(c, b, r)| build(c, b, r))
}

pub fn predicate(n: usize, k: i64) -> impl Strategy<Value = LinearPredicate> {
    predicate_with(n, k, rel())
}

pub fn strict_predicate(n: usize, k: i64) -> impl Strategy<Value = LinearPredicate> {
    predicate_with(n, k, strict_rel())
}

pub fn equality(n: usize, k: i64) -> impl Strategy<Value = LinearPredicate> {
    predicate_with(n, k, Just(Rel::Eq))
}

pub fn predicate_set(n: usize, k: i64, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = PredicateSet> {
    prop::collection::vec(predicate(n, k), len).prop_map(|ps| ps.into_iter().collect())
}

/// Boolean structure over indices into an atom pool.
#[derive(Debug, Clone)]
enum Shape {
    Leaf(usize, Rel),
    And(Vec<Shape>),
    Or(Vec<Shape>),
    Not(Box<Shape>),
}

impl Shape {
    fn formula(&self, pool: &[LinearPredicate]) -> Formula {
        match self {
            Shape::Leaf(i, r) => Formula::Atom(pool[i % pool.len()].with_rel(*r)),
            Shape::And(xs) => Formula::And(xs.iter().map(|s| s.formula(pool)).collect()),
            Shape::Or(xs) => Formula::Or(xs.iter().map(|s| s.formula(pool)).collect()),
            Shape::Not(x) => Formula::not(x.formula(pool)),
        }
    }
}

fn shape() -> impl Strategy<Value = Shape> {
    (0usize..6, rel()).prop_map(|(i, r)| Shape::Leaf(i, r)).prop_recursive(2, 6, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Shape::And),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Shape::Or),
            inner.prop_map(|s| Shape::Not(Box::new(s))),
        ]
    })
}

/// A formula over `n` variables whose atoms come from a pool of at most `atoms`
/// distinct bases with coefficients in `[-k, k]`. Sharing bases between leaves
/// keeps the disjunct count small and makes decomposable instances common.
pub fn formula(n: usize, atoms: usize, k: i64) -> impl Strategy<Value = Formula> {
    (prop::collection::vec(predicate(n, k), 1..=atoms), shape()).prop_map(|(pool, s)| s.formula(&pool))
}

/// A two-block partition of `0..n`, `n ≥ 2`.
pub fn binary_partition(n: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(any::<bool>(), n).prop_map(move |mut side| {
        side[0] = false;
        side[n - 1] = true;
        let block = |s: bool| (0..n).filter(|&v| side[v] == s).collect::<Vec<_>>();
        Partition::new(n, vec![block(false), block(true)]).expect("two nonempty blocks")
    })
}

/// Any partition of `0..n`.
pub fn partition(n: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..n, n).prop_map(move |owner| from_owners(n, &owner))
}

/// A partition of `blocks + extra` variables with exactly `blocks` blocks.
pub fn partition_with_blocks(blocks: std::ops::RangeInclusive<usize>, extra: usize) -> impl Strategy<Value = Partition> {
    blocks.prop_flat_map(move |k| prop::collection::vec(0..k, 0..=extra).prop_map(move |more| {
        let owner: Vec<usize> = (0..k).chain(more).collect();
        from_owners(owner.len(), &owner)
    }))
}

fn from_owners(n: usize, owner: &[usize]) -> Partition {
    let mut blocks = vec![Vec::new(); n];
    for (v, &b) in owner.iter().enumerate() {
        blocks[b].push(v);
    }
    blocks.retain(|b| !b.is_empty());
    Partition::new(n, blocks).expect("owners cover 0..n")
}

/// Formula, variable count and a two-block partition.
#[derive(Debug, Clone)]
pub struct Case {
    pub n: usize,
    pub phi: Formula,
    pub partition: Partition,
}

pub fn case(vars: std::ops::RangeInclusive<usize>, atoms: usize, k: i64) -> impl Strategy<Value = Case> {
    vars.prop_flat_map(move |n| {
        (formula(n, atoms, k), binary_partition(n)).prop_map(move |(phi, partition)| Case { n, phi, partition })
    })
}

/// A nonempty matrix with entries in `[-4, 4]`.
pub fn matrix() -> impl Strategy<Value = Matrix> {
    (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-4i64..=4, c), r).prop_map(move |rows| {
            let rows: Vec<Vec<Q>> = rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect();
            Matrix::from_rows(c, &rows).expect("rectangular")
        })
    })
}

/// Two spans of at most `dim` random vectors in `ℚ^dim`, `1 ≤ dim ≤ 5`.
pub fn subspace_pair() -> impl Strategy<Value = (Subspace, Subspace)> {
    (1usize..6).prop_flat_map(|dim| {
        let vecs = move || prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 0..=dim);
        (vecs(), vecs()).prop_map(move |(a, b)| {
            let conv = |vs: Vec<Vec<i64>>| -> Vec<Vec<Q>> { vs.into_iter().map(|v| v.into_iter().map(int).collect()).collect() };
            (Subspace::span(dim, &conv(a)).expect("dim"), Subspace::span(dim, &conv(b)).expect("dim"))
        })
    })
}

/// A point of `ℚ^n` with coordinates in `{-3, -5/2, …, 3}`.
pub fn point(n: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(-6i64..=6, n).prop_map(|v| v.into_iter().map(|x| Q::new(x.into(), 2.into())).collect())
}
