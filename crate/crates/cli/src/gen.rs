//! Instance families: the benchmark formulas and the propositional reductions.
//!
//! Every generator is a pure function of its parameters and seed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vardec_core::{Cmp, Formula, LinExpr, Partition};
use vardec_linalg::int;

use crate::format::{Problem, Vars};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("unknown family `{0}` (expected add, grid2d, grid3d, prop_unsat or prop_dnf)")]
    UnknownFamily(String),
    #[error("parameter `{0}`: {1}")]
    Param(String, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Add,
    Grid2d,
    Grid3d,
    PropUnsat,
    PropDnf,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Add, Family::Grid2d, Family::Grid3d, Family::PropUnsat, Family::PropDnf];

    pub fn name(self) -> &'static str {
        match self {
            Family::Add => "add",
            Family::Grid2d => "grid2d",
            Family::Grid3d => "grid3d",
            Family::PropUnsat => "prop_unsat",
            Family::PropDnf => "prop_dnf",
        }
    }

    /// Parameters and their defaults.
    pub fn params(self) -> &'static [(&'static str, i64)] {
        match self {
            Family::Add => &[("n", 2)],
            Family::Grid2d => &[("n", 2), ("k", 32)],
            Family::Grid3d => &[("k", 2)],
            Family::PropUnsat => &[("vars", 3), ("clauses", 4)],
            Family::PropDnf => &[("vars", 3), ("terms", 3)],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GenError;
    fn from_str(s: &str) -> Result<Family, GenError> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| GenError::UnknownFamily(s.into()))
    }
}

/// Resolved `name=value` parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params(BTreeMap<String, i64>);

impl Params {
    /// Defaults of `family` overridden by `given`; unknown names are rejected.
    pub fn resolve(family: Family, given: &[(String, i64)]) -> Result<Params, GenError> {
        let mut map: BTreeMap<String, i64> = family.params().iter().map(|(k, v)| (k.to_string(), *v)).collect();
        for (k, v) in given {
            match map.get_mut(k) {
                Some(slot) => *slot = *v,
                None => return Err(GenError::Param(k.clone(), format!("not a parameter of {family}"))),
            }
        }
        Ok(Params(map))
    }

    pub fn get(&self, name: &str) -> i64 {
        self.0[name]
    }

    fn positive(&self, name: &str, max: i64) -> Result<usize, GenError> {
        let v = self.get(name);
        if (1..=max).contains(&v) {
            Ok(v as usize)
        } else {
            Err(GenError::Param(name.into(), format!("must be in 1..={max}, got {v}")))
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

/// Parses `name=value`.
pub fn parse_param(s: &str) -> Result<(String, i64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let v = v.parse().map_err(|_| format!("`{v}` is not an integer"))?;
    Ok((k.to_string(), v))
}

pub fn generate(family: Family, params: &Params, seed: u64) -> Result<Problem, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match family {
        Family::Add => add(params.positive("n", 24)?),
        Family::Grid2d => grid2d(params.positive("n", 64)?, params.positive("k", 256)?, &mut rng),
        Family::Grid3d => grid3d(params.positive("k", 64)?, &mut rng),
        Family::PropUnsat => {
            let vars = params.positive("vars", 8)?;
            Ok(prop_unsat(&Prop::random_cnf(vars, params.positive("clauses", 32)?, &mut rng), vars))
        }
        Family::PropDnf => {
            let vars = params.positive("vars", 8)?;
            Ok(prop_dnf(&random_dnf(vars, params.positive("terms", 32)?, &mut rng), vars))
        }
    }
}

fn v(i: usize) -> LinExpr {
    LinExpr::var(i)
}

fn k(c: i64) -> LinExpr {
    LinExpr::constant(int(c))
}

fn sum(items: impl IntoIterator<Item = LinExpr>) -> LinExpr {
    items.into_iter().fold(LinExpr::default(), |a, b| a + b)
}

fn problem(names: Vec<String>, partition: Partition, formula: Formula) -> Result<Problem, GenError> {
    let vars = Vars::new(names).expect("generated names are valid");
    Ok(Problem { vars, partition: Some(partition), formula })
}

/// `Σ y < x < Σ y + 1 ∧ ⋀ (y_i = 0 ∨ y_i = 2^i)` over `x, y1..yn`.
pub fn add(n: usize) -> Result<Problem, GenError> {
    let ys = || (1..=n).map(v);
    let total = sum(ys());
    let mut conj = vec![
        Formula::compare(total.clone(), Cmp::Lt, v(0)),
        Formula::compare(v(0), Cmp::Lt, total + k(1)),
    ];
    for i in 1..=n {
        conj.push(Formula::Or(vec![
            Formula::compare(v(i), Cmp::Eq, k(0)),
            Formula::compare(v(i), Cmp::Eq, k(1i64 << i)),
        ]));
    }
    let names = std::iter::once("x".to_string()).chain((1..=n).map(|i| format!("y{i}"))).collect();
    problem(names, Partition::singletons(n + 1), Formula::And(conj))
}

fn nonzero(rng: &mut ChaCha8Rng) -> i64 {
    let c = rng.gen_range(1..=9);
    if rng.gen_bool(0.5) { -c } else { c }
}

/// `k` vertical lines `x = 0, …, k−1` with the points removed where `n` random
/// sloped lines cross them. Over `x, y`, monadic.
pub fn grid2d(n: usize, kk: usize, rng: &mut ChaCha8Rng) -> Result<Problem, GenError> {
    let aligned = Formula::Or((0..kk as i64).map(|c| Formula::compare(v(0), Cmp::Eq, k(c))).collect());
    let mut conj = vec![aligned];
    for _ in 0..n {
        // both coefficients nonzero: neither vertical nor horizontal
        let (a, b, c) = (nonzero(rng), nonzero(rng), rng.gen_range(-9..=9));
        let line = v(0).scale(&int(a)) + v(1).scale(&int(b));
        conj.push(Formula::compare(line, Cmp::Ne, k(c)));
    }
    problem(vec!["x".into(), "y".into()], Partition::singletons(2), Formula::And(conj))
}

/// A random plane `a x + b y + c z = d` with all three coefficients nonzero.
fn plane(rng: &mut ChaCha8Rng) -> ([i64; 3], i64) {
    ([nonzero(rng), nonzero(rng), nonzero(rng)], rng.gen_range(-9..=9))
}

fn plane_expr(c: [i64; 3]) -> LinExpr {
    (0..3).map(|i| v(i).scale(&int(c[i]))).fold(LinExpr::default(), |a, b| a + b)
}

/// `k` planes `x = 0, …, k−1`, each missing the one point where two random
/// planes cross it. Over `x, y, z` with partition `{{x, y}, {z}}`, for which the
/// aligned planes fix no block.
pub fn grid3d(kk: usize, rng: &mut ChaCha8Rng) -> Result<Problem, GenError> {
    let mut disj = Vec::new();
    for c in 0..kk as i64 {
        // the two planes must meet the aligned one in a single point
        let (p1, p2) = loop {
            let (p1, p2) = (plane(rng), plane(rng));
            if p1.0[1] * p2.0[2] != p1.0[2] * p2.0[1] {
                break (p1, p2);
            }
        };
        let off = |p: ([i64; 3], i64)| Formula::compare(plane_expr(p.0), Cmp::Ne, k(p.1));
        disj.push(Formula::And(vec![
            Formula::compare(v(0), Cmp::Eq, k(c)),
            Formula::Or(vec![off(p1), off(p2)]),
        ]));
    }
    let partition = Partition::new(3, vec![vec![0, 1], vec![2]]).expect("two blocks");
    problem(vec!["x".into(), "y".into(), "z".into()], partition, Formula::Or(disj))
}

/// Propositional formula over variables `0..vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prop {
    Var(usize),
    Not(Box<Prop>),
    And(Vec<Prop>),
    Or(Vec<Prop>),
}

impl Prop {
    pub fn eval(&self, a: &[bool]) -> bool {
        match self {
            Prop::Var(i) => a[*i],
            Prop::Not(p) => !p.eval(a),
            Prop::And(ps) => ps.iter().all(|p| p.eval(a)),
            Prop::Or(ps) => ps.iter().any(|p| p.eval(a)),
        }
    }

    /// A conjunction of `clauses` clauses of one or two literals.
    pub fn random_cnf(vars: usize, clauses: usize, rng: &mut ChaCha8Rng) -> Prop {
        let literal = |rng: &mut ChaCha8Rng| {
            let x = Prop::Var(rng.gen_range(0..vars));
            if rng.gen_bool(0.5) { Prop::Not(Box::new(x)) } else { x }
        };
        Prop::And(
            (0..clauses)
                .map(|_| {
                    let width = rng.gen_range(1..=2);
                    Prop::Or((0..width).map(|_| literal(rng)).collect())
                })
                .collect(),
        )
    }

    fn lra(&self, atom: &dyn Fn(usize) -> Formula) -> Formula {
        match self {
            Prop::Var(i) => atom(*i),
            Prop::Not(p) => Formula::not(p.lra(atom)),
            Prop::And(ps) => Formula::And(ps.iter().map(|p| p.lra(atom)).collect()),
            Prop::Or(ps) => Formula::Or(ps.iter().map(|p| p.lra(atom)).collect()),
        }
    }
}

/// `φ ∧ z1 = z2` where `φ` replaces each propositional variable `i` by `y_i ≠ 0`.
/// Monadically decomposable exactly when `prop` is unsatisfiable.
pub fn prop_unsat(prop: &Prop, vars: usize) -> Problem {
    let phi = prop.lra(&|i| Formula::compare(v(i), Cmp::Ne, k(0)));
    let formula = Formula::And(vec![phi, Formula::compare(v(vars), Cmp::Eq, v(vars + 1))]);
    let names = (1..=vars).map(|i| format!("y{i}")).chain(["z1".into(), "z2".into()]).collect();
    problem(names, Partition::singletons(vars + 2), formula).expect("valid")
}

/// DNF terms as `(variable, polarity)` literals.
pub type Dnf = Vec<Vec<(usize, bool)>>;

/// `terms` random terms of one to `vars` literals each.
pub fn random_dnf(vars: usize, terms: usize, rng: &mut ChaCha8Rng) -> Dnf {
    (0..terms)
        .map(|_| {
            let width = rng.gen_range(1..=vars);
            let mut t: Vec<(usize, bool)> = (0..width).map(|_| (rng.gen_range(0..vars), rng.gen_bool(0.5))).collect();
            t.sort();
            t.dedup_by_key(|l| l.0);
            t
        })
        .collect()
}

pub fn dnf_eval(dnf: &Dnf, a: &[bool]) -> bool {
    dnf.iter().any(|t| t.iter().all(|&(i, pol)| a[i] == pol))
}

/// The DNF with each variable `i` replaced by `y_i ≥ x`, over `x, y1..yn`. For a
/// satisfiable DNF, monadically decomposable exactly when it is valid.
pub fn prop_dnf(dnf: &Dnf, vars: usize) -> Problem {
    let lit = |i: usize, pol: bool| {
        let cmp = if pol { Cmp::Ge } else { Cmp::Lt };
        Formula::compare(v(i + 1), cmp, v(0))
    };
    let formula = Formula::Or(dnf.iter().map(|t| Formula::And(t.iter().map(|&(i, p)| lit(i, p)).collect())).collect());
    let names = std::iter::once("x".to_string()).chain((1..=vars).map(|i| format!("y{i}"))).collect();
    problem(names, Partition::singletons(vars + 1), formula).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use vardec_linalg::{frac, Q};

    fn at(p: &Problem, xs: &[Q]) -> bool {
        p.formula.eval(xs)
    }

    #[test]
    fn add_two() {
        let p = add(2).unwrap();
        assert_eq!(p.vars.names(), ["x", "y1", "y2"]);
        // y1 = 2, y2 = 4, x = 6.5
        assert!(at(&p, &[frac(13, 2), int(2), int(4)]));
        assert!(!at(&p, &[int(6), int(2), int(4)]));
        assert!(!at(&p, &[frac(13, 2), int(1), int(4)]));
    }

    #[test]
    fn grid_points_are_removed() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = grid2d(1, 4, &mut rng).unwrap();
        let Formula::And(parts) = &p.formula else { panic!() };
        assert_eq!(parts.len(), 2);
        assert!(at(&p, &[int(2), int(1000)]));
        assert!(!at(&p, &[frac(1, 2), int(0)]));
    }

    #[test]
    fn params_resolve() {
        let p = Params::resolve(Family::Grid2d, &[("n".into(), 5)]).unwrap();
        assert_eq!((p.get("n"), p.get("k")), (5, 32));
        assert!(Params::resolve(Family::Add, &[("k".into(), 1)]).is_err());
        assert_eq!(parse_param("n=3"), Ok(("n".into(), 3)));
        assert!(parse_param("n").is_err());
        assert!("grid4d".parse::<Family>().is_err());
    }

    #[test]
    fn generation_is_deterministic() {
        for f in Family::ALL {
            let params = Params::resolve(f, &[]).unwrap();
            assert_eq!(generate(f, &params, 11).unwrap(), generate(f, &params, 11).unwrap());
        }
    }
}
