use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use vardec_linalg::Q;

use crate::partition::Partition;
use crate::pred::{Canonical, LinearPredicate, PredicateSet, Rel};

/// Quantifier-free linear real arithmetic formula over canonical atoms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(LinearPredicate),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

/// Comparison operators accepted at the surface. `<=`, `>=` and `!=` desugar into
/// the three-symbol alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
    Ne,
}

/// `Σ terms + constant`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinExpr {
    pub terms: BTreeMap<usize, Q>,
    pub constant: Q,
}

impl LinExpr {
    pub fn var(v: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(v, Q::from_integer(1.into()));
        LinExpr { terms, constant: Q::zero() }
    }

    pub fn constant(c: Q) -> Self {
        LinExpr { terms: BTreeMap::new(), constant: c }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.values().all(Zero::is_zero)
    }

    pub fn scale(mut self, k: &Q) -> Self {
        for c in self.terms.values_mut() {
            *c = &*c * k;
        }
        self.constant = &self.constant * k;
        self
    }
}

impl Add for LinExpr {
    type Output = LinExpr;
    fn add(mut self, rhs: LinExpr) -> LinExpr {
        for (v, c) in rhs.terms {
            *self.terms.entry(v).or_insert_with(Q::zero) += c;
        }
        self.constant += rhs.constant;
        self
    }
}

impl Neg for LinExpr {
    type Output = LinExpr;
    fn neg(self) -> LinExpr {
        self.scale(&Q::from_integer((-1).into()))
    }
}

impl Sub for LinExpr {
    type Output = LinExpr;
    fn sub(self, rhs: LinExpr) -> LinExpr {
        self + (-rhs)
    }
}

fn lift(c: Canonical) -> Formula {
    match c {
        Canonical::Pred(p) => Formula::Atom(p),
        Canonical::Const(true) => Formula::True,
        Canonical::Const(false) => Formula::False,
    }
}

impl Formula {
    pub fn atom(terms: impl IntoIterator<Item = (usize, Q)>, constant: Q, rel: Rel) -> Formula {
        lift(LinearPredicate::canonical(terms, constant, rel))
    }

    pub fn compare(lhs: LinExpr, op: Cmp, rhs: LinExpr) -> Formula {
        let diff = lhs - rhs;
        let constant = -diff.constant.clone();
        let at = |rel| Formula::atom(diff.terms.clone(), constant.clone(), rel);
        match op {
            Cmp::Lt => at(Rel::Lt),
            Cmp::Eq => at(Rel::Eq),
            Cmp::Gt => at(Rel::Gt),
            Cmp::Le => Formula::not(at(Rel::Gt)),
            Cmp::Ge => Formula::not(at(Rel::Lt)),
            Cmp::Ne => Formula::Or(vec![at(Rel::Lt), at(Rel::Gt)]),
        }
    }

    pub fn not(f: Formula) -> Formula {
        match f {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Not(inner) => *inner,
            other => Formula::Not(Box::new(other)),
        }
    }

    pub fn and(fs: Vec<Formula>) -> Formula {
        Formula::And(fs)
    }

    pub fn or(fs: Vec<Formula>) -> Formula {
        Formula::Or(fs)
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Or(vec![Formula::not(a), b])
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::And(vec![Formula::implies(a.clone(), b.clone()), Formula::implies(b, a)])
    }

    /// Conjunction of a predicate set, `True` when empty.
    pub fn conj(set: &PredicateSet) -> Formula {
        Formula::And(set.iter().cloned().map(Formula::Atom).collect())
    }

    /// Disjunction of conjunctions, `False` when empty.
    pub fn dnf<'a>(terms: impl IntoIterator<Item = &'a PredicateSet>) -> Formula {
        Formula::Or(terms.into_iter().map(Formula::conj).collect())
    }

    pub fn eval(&self, model: &[Q]) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(p) => p.holds(model),
            Formula::Not(f) => !f.eval(model),
            Formula::And(fs) => fs.iter().all(|f| f.eval(model)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval(model)),
        }
    }

    fn visit_atoms<'a>(&'a self, out: &mut impl FnMut(&'a LinearPredicate)) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(p) => out(p),
            Formula::Not(f) => f.visit_atoms(out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.visit_atoms(out)),
        }
    }

    /// The distinct atom terms of the formula, each in its `=` form, canonically sorted.
    pub fn bases(&self) -> Vec<LinearPredicate> {
        let mut set = std::collections::BTreeSet::new();
        self.visit_atoms(&mut |p| {
            set.insert(p.base());
        });
        set.into_iter().collect()
    }

    pub fn vars(&self) -> std::collections::BTreeSet<usize> {
        let mut set = std::collections::BTreeSet::new();
        self.visit_atoms(&mut |p| set.extend(p.vars()));
        set
    }

    pub fn respects(&self, partition: &Partition) -> bool {
        let mut ok = true;
        self.visit_atoms(&mut |p| ok &= p.respects(partition));
        ok
    }

    /// Number of non-leaf nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 0,
            Formula::Not(f) => 1 + f.size(),
            Formula::And(fs) | Formula::Or(fs) => 1 + fs.iter().map(Formula::size).sum::<usize>(),
        }
    }

    pub fn substitute(&self, values: &[(usize, Q)]) -> Formula {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(p) => lift(p.substitute(values)),
            Formula::Not(f) => Formula::not(f.substitute(values)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.substitute(values)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.substitute(values)).collect()),
        }
    }

    /// Constant folding of `True`/`False` leaves.
    pub fn simplify(&self) -> Formula {
        match self {
            Formula::Not(f) => Formula::not(f.simplify()),
            Formula::And(fs) => {
                let mut out = Vec::new();
                for f in fs.iter().map(Formula::simplify) {
                    match f {
                        Formula::True => {}
                        Formula::False => return Formula::False,
                        Formula::And(inner) => out.extend(inner),
                        other => out.push(other),
                    }
                }
                match out.len() {
                    0 => Formula::True,
                    1 => out.pop().unwrap(),
                    _ => Formula::And(out),
                }
            }
            Formula::Or(fs) => {
                let mut out = Vec::new();
                for f in fs.iter().map(Formula::simplify) {
                    match f {
                        Formula::False => {}
                        Formula::True => return Formula::True,
                        Formula::Or(inner) => out.extend(inner),
                        other => out.push(other),
                    }
                }
                match out.len() {
                    0 => Formula::False,
                    1 => out.pop().unwrap(),
                    _ => Formula::Or(out),
                }
            }
            other => other.clone(),
        }
    }

    pub(crate) fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: Option<&[String]>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, head: &str, fs: &[Formula]| -> fmt::Result {
            write!(f, "({head}")?;
            for g in fs {
                write!(f, " ")?;
                g.fmt_with(f, names)?;
            }
            write!(f, ")")
        };
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Atom(p) => {
                write!(f, "[")?;
                p.fmt_with(f, names)?;
                write!(f, "]")
            }
            Formula::Not(g) => {
                write!(f, "(not ")?;
                g.fmt_with(f, names)?;
                write!(f, ")")
            }
            Formula::And(fs) => list(f, "and", fs),
            Formula::Or(fs) => list(f, "or", fs),
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Const(bool),
    Lit(usize, Rel),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
}

impl Node {
    fn eval(&self, signs: &[Option<Rel>]) -> Option<bool> {
        match self {
            Node::Const(b) => Some(*b),
            Node::Lit(i, r) => signs[*i].map(|s| s == *r),
            Node::Not(n) => n.eval(signs).map(|b| !b),
            Node::And(ns) => {
                let mut unknown = false;
                for n in ns {
                    match n.eval(signs) {
                        Some(false) => return Some(false),
                        None => unknown = true,
                        Some(true) => {}
                    }
                }
                if unknown { None } else { Some(true) }
            }
            Node::Or(ns) => {
                let mut unknown = false;
                for n in ns {
                    match n.eval(signs) {
                        Some(true) => return Some(true),
                        None => unknown = true,
                        Some(false) => {}
                    }
                }
                if unknown { None } else { Some(false) }
            }
        }
    }
}

/// Negation normal form: a negated atom becomes the disjunction of its two other
/// orientations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Nnf {
    Const(bool),
    Lit(usize, Rel),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

impl Nnf {
    pub fn eval(&self, signs: &[Rel]) -> bool {
        match self {
            Nnf::Const(b) => *b,
            Nnf::Lit(i, r) => signs[*i] == *r,
            Nnf::And(ns) => ns.iter().all(|n| n.eval(signs)),
            Nnf::Or(ns) => ns.iter().any(|n| n.eval(signs)),
        }
    }

    /// Kleene evaluation under a partial orientation.
    pub fn eval_partial(&self, signs: &[Option<Rel>]) -> Option<bool> {
        match self {
            Nnf::Const(b) => Some(*b),
            Nnf::Lit(i, r) => signs[*i].map(|s| s == *r),
            Nnf::And(ns) => {
                let mut all = Some(true);
                for n in ns {
                    match n.eval_partial(signs) {
                        Some(false) => return Some(false),
                        None => all = None,
                        Some(true) => {}
                    }
                }
                all
            }
            Nnf::Or(ns) => {
                let mut any = Some(false);
                for n in ns {
                    match n.eval_partial(signs) {
                        Some(true) => return Some(true),
                        None => any = None,
                        Some(false) => {}
                    }
                }
                any
            }
        }
    }
}

impl Node {
    fn nnf(&self, negate: bool) -> Nnf {
        match (self, negate) {
            (Node::Const(b), _) => Nnf::Const(*b != negate),
            (Node::Lit(i, r), false) => Nnf::Lit(*i, *r),
            (Node::Lit(i, r), true) => {
                Nnf::Or(Rel::ALL.into_iter().filter(|s| s != r).map(|s| Nnf::Lit(*i, s)).collect())
            }
            (Node::Not(n), _) => n.nnf(!negate),
            (Node::And(ns), false) | (Node::Or(ns), true) => Nnf::And(ns.iter().map(|n| n.nnf(negate)).collect()),
            (Node::Or(ns), false) | (Node::And(ns), true) => Nnf::Or(ns.iter().map(|n| n.nnf(negate)).collect()),
        }
    }
}

/// A formula whose atoms are indexed into a sorted list of base terms, so that it
/// can be evaluated from a sign vector, including partially.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledFormula {
    bases: Vec<LinearPredicate>,
    root: Node,
}

impl CompiledFormula {
    pub fn new(f: &Formula) -> Self {
        let bases = f.bases();
        let root = Self::lower(f, &bases);
        CompiledFormula { bases, root }
    }

    fn lower(f: &Formula, bases: &[LinearPredicate]) -> Node {
        match f {
            Formula::True => Node::Const(true),
            Formula::False => Node::Const(false),
            Formula::Atom(p) => {
                let i = bases.binary_search(&p.base()).expect("atom base collected");
                Node::Lit(i, p.rel())
            }
            Formula::Not(g) => Node::Not(Box::new(Self::lower(g, bases))),
            Formula::And(fs) => Node::And(fs.iter().map(|g| Self::lower(g, bases)).collect()),
            Formula::Or(fs) => Node::Or(fs.iter().map(|g| Self::lower(g, bases)).collect()),
        }
    }

    /// Base terms in `=` form, canonically ordered.
    pub fn bases(&self) -> &[LinearPredicate] {
        &self.bases
    }

    /// Negation normal form over oriented atoms.
    pub fn nnf(&self) -> Nnf {
        self.root.nnf(false)
    }

    pub fn negated(&self) -> CompiledFormula {
        let root = match &self.root {
            Node::Not(inner) => (**inner).clone(),
            other => Node::Not(Box::new(other.clone())),
        };
        CompiledFormula { bases: self.bases.clone(), root }
    }

    /// Kleene evaluation: `None` when the known signs do not settle the value.
    pub fn eval_partial(&self, signs: &[Option<Rel>]) -> Option<bool> {
        debug_assert_eq!(signs.len(), self.bases.len());
        self.root.eval(signs)
    }

    pub fn eval_signs(&self, signs: &[Rel]) -> bool {
        let s: Vec<Option<Rel>> = signs.iter().copied().map(Some).collect();
        self.root.eval(&s).expect("total sign vector")
    }

    pub fn signs_of(&self, model: &[Q]) -> Vec<Rel> {
        self.bases.iter().map(|b| b.orientation(model)).collect()
    }

    pub fn eval(&self, model: &[Q]) -> bool {
        self.eval_signs(&self.signs_of(model))
    }

    /// The predicates `base_i^{signs_i}`.
    pub fn oriented(&self, signs: &[Rel]) -> PredicateSet {
        self.bases.iter().zip(signs).map(|(b, r)| b.with_rel(*r)).collect()
    }

    pub fn constant_value(&self) -> Option<bool> {
        if self.bases.is_empty() {
            self.root.eval(&[])
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
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
    fn sugar_desugars_to_three_symbols() {
        let le = Formula::compare(x(), Cmp::Le, k(1));
        assert!(matches!(&le, Formula::Not(inner) if matches!(**inner, Formula::Atom(ref p) if p.rel() == Rel::Gt)));
        let ne = Formula::compare(x(), Cmp::Ne, y());
        assert_eq!(ne.bases().len(), 1);
        assert!(ne.eval(&[int(0), int(1)]));
        assert!(!ne.eval(&[int(1), int(1)]));
    }

    #[test]
    fn constant_atoms_fold() {
        assert_eq!(Formula::compare(k(1), Cmp::Lt, k(2)), Formula::True);
        assert_eq!(Formula::compare(x() - x(), Cmp::Gt, k(0)), Formula::False);
    }

    #[test]
    fn partial_evaluation_is_kleene() {
        let f = Formula::Or(vec![Formula::compare(x(), Cmp::Lt, k(0)), Formula::compare(y(), Cmp::Eq, k(0))]);
        let c = CompiledFormula::new(&f);
        assert_eq!(c.eval_partial(&[None, None]), None);
        assert_eq!(c.eval_partial(&[Some(Rel::Lt), None]), Some(true));
        assert_eq!(c.eval_partial(&[Some(Rel::Gt), Some(Rel::Lt)]), Some(false));
        assert_eq!(c.negated().eval_partial(&[Some(Rel::Lt), None]), Some(false));
    }

    #[test]
    fn size_counts_inner_nodes() {
        let f = Formula::Or(vec![Formula::compare(x(), Cmp::Ne, k(1)), Formula::compare(y(), Cmp::Ne, k(1))]);
        assert_eq!(f.size(), 3);
    }
}
