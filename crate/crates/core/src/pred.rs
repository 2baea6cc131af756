use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use vardec_linalg::Q;

use crate::partition::Partition;
use crate::Model;

/// Relation symbol of an atom. The order `Lt < Eq < Gt` is the enumeration order
/// used everywhere disjuncts are listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rel {
    Lt,
    Eq,
    Gt,
}

impl Rel {
    pub const ALL: [Rel; 3] = [Rel::Lt, Rel::Eq, Rel::Gt];
    pub const STRICT: [Rel; 2] = [Rel::Lt, Rel::Gt];

    pub fn flip(self) -> Rel {
        match self {
            Rel::Lt => Rel::Gt,
            Rel::Eq => Rel::Eq,
            Rel::Gt => Rel::Lt,
        }
    }

    /// The relation that `lhs ? rhs` satisfies.
    pub fn of(ord: Ordering) -> Rel {
        match ord {
            Ordering::Less => Rel::Lt,
            Ordering::Equal => Rel::Eq,
            Ordering::Greater => Rel::Gt,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Eq => "=",
            Rel::Gt => ">",
        }
    }
}

/// `Σ coeffs · x  rel  constant`, kept in canonical form.
///
/// Coefficients are coprime integers sorted by variable, the first one positive.
/// Two atoms describing the same relation compare equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearPredicate {
    coeffs: Vec<(usize, Q)>,
    constant: Q,
    rel: Rel,
}

/// Result of canonicalizing a raw atom: either a real predicate or a truth value
/// when every coefficient cancels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Canonical {
    Pred(LinearPredicate),
    Const(bool),
}

impl LinearPredicate {
    pub fn canonical(terms: impl IntoIterator<Item = (usize, Q)>, constant: Q, rel: Rel) -> Canonical {
        let mut merged: std::collections::BTreeMap<usize, Q> = Default::default();
        for (v, c) in terms {
            *merged.entry(v).or_insert_with(Q::zero) += c;
        }
        let mut coeffs: Vec<(usize, Q)> = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if coeffs.is_empty() {
            return Canonical::Const(rel == Rel::of(Q::zero().cmp(&constant)));
        }
        let mut lcm = BigInt::one();
        for (_, c) in &coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for (_, c) in &coeffs {
            g = g.gcd(&(c * Q::from_integer(lcm.clone())).to_integer());
        }
        let mut scale = Q::new(lcm, g);
        let mut rel = rel;
        if coeffs[0].1.is_negative() {
            scale = -scale;
            rel = rel.flip();
        }
        for (_, c) in coeffs.iter_mut() {
            *c = &*c * &scale;
        }
        Canonical::Pred(LinearPredicate { coeffs, constant: constant * scale, rel })
    }

    /// Canonical predicate from terms known to have a nonzero coefficient.
    pub fn new(terms: impl IntoIterator<Item = (usize, Q)>, constant: Q, rel: Rel) -> Option<Self> {
        match Self::canonical(terms, constant, rel) {
            Canonical::Pred(p) => Some(p),
            Canonical::Const(_) => None,
        }
    }

    /// `Σ dense[i] x_i rel constant` for a dense coefficient vector.
    pub fn from_dense(dense: &[Q], constant: Q, rel: Rel) -> Option<Self> {
        Self::new(dense.iter().cloned().enumerate(), constant, rel)
    }

    pub fn coeffs(&self) -> &[(usize, Q)] {
        &self.coeffs
    }

    pub fn constant(&self) -> &Q {
        &self.constant
    }

    pub fn rel(&self) -> Rel {
        self.rel
    }

    pub fn is_eq(&self) -> bool {
        self.rel == Rel::Eq
    }

    pub fn is_strict(&self) -> bool {
        self.rel != Rel::Eq
    }

    /// The same term with a different relation symbol.
    pub fn with_rel(&self, rel: Rel) -> LinearPredicate {
        LinearPredicate { coeffs: self.coeffs.clone(), constant: self.constant.clone(), rel }
    }

    /// The relation-free identity of the atom, represented by its `=` form.
    pub fn base(&self) -> LinearPredicate {
        self.with_rel(Rel::Eq)
    }

    pub fn same_base(&self, other: &LinearPredicate) -> bool {
        self.coeffs == other.coeffs && self.constant == other.constant
    }

    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().map(|(v, _)| *v)
    }

    pub fn max_var(&self) -> usize {
        self.coeffs.last().map(|(v, _)| *v).unwrap_or(0)
    }

    pub fn dense(&self, n: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); n];
        for (v, c) in &self.coeffs {
            out[*v] = c.clone();
        }
        out
    }

    /// Value of the left-hand side under `model`.
    pub fn term_value(&self, model: &[Q]) -> Q {
        self.coeffs.iter().fold(Q::zero(), |acc, (v, c)| acc + c * &model[*v])
    }

    /// Which relation the model realizes for this term.
    pub fn orientation(&self, model: &[Q]) -> Rel {
        Rel::of(self.term_value(model).cmp(&self.constant))
    }

    pub fn holds(&self, model: &[Q]) -> bool {
        self.orientation(model) == self.rel
    }

    pub fn respects(&self, partition: &Partition) -> bool {
        let mut vars = self.vars();
        let first = partition.block_of(vars.next().expect("canonical predicates have a variable"));
        vars.all(|v| partition.block_of(v) == first)
    }

    /// Replaces the listed variables by values. Returns a constant when nothing is left.
    pub fn substitute(&self, values: &[(usize, Q)]) -> Canonical {
        let mut constant = self.constant.clone();
        let mut rest = Vec::new();
        for (v, c) in &self.coeffs {
            match values.iter().find(|(w, _)| w == v) {
                Some((_, val)) => constant -= c * val,
                None => rest.push((*v, c.clone())),
            }
        }
        Self::canonical(rest, constant, self.rel)
    }

    pub(crate) fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: Option<&[String]>) -> fmt::Result {
        for (i, (v, c)) in self.coeffs.iter().enumerate() {
            let name = names.and_then(|n| n.get(*v).cloned()).unwrap_or_else(|| format!("x{v}"));
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            let mag = c.abs();
            if i > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}{name}")?;
            }
        }
        write!(f, " {} {}", self.rel.symbol(), self.constant)
    }
}

impl fmt::Debug for LinearPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, None)
    }
}

impl fmt::Display for LinearPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, None)
    }
}

/// A conjunction of canonical predicates in canonical order.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PredicateSet(BTreeSet<LinearPredicate>);

impl PredicateSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: LinearPredicate) -> bool {
        self.0.insert(p)
    }

    pub fn remove(&mut self, p: &LinearPredicate) -> bool {
        self.0.remove(p)
    }

    pub fn contains(&self, p: &LinearPredicate) -> bool {
        self.0.contains(p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LinearPredicate> + Clone {
        self.0.iter()
    }

    pub fn with(&self, p: LinearPredicate) -> PredicateSet {
        let mut out = self.clone();
        out.insert(p);
        out
    }

    pub fn union(&self, other: &PredicateSet) -> PredicateSet {
        PredicateSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &PredicateSet) -> PredicateSet {
        PredicateSet(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &PredicateSet) -> PredicateSet {
        PredicateSet(self.0.difference(&other.0).cloned().collect())
    }

    pub fn is_subset(&self, other: &PredicateSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn equalities(&self) -> PredicateSet {
        self.iter().filter(|p| p.is_eq()).cloned().collect()
    }

    pub fn stricts(&self) -> PredicateSet {
        self.iter().filter(|p| p.is_strict()).cloned().collect()
    }

    /// The predicate of this set whose term equals `base`, if any.
    pub fn orientation_of(&self, base: &LinearPredicate) -> Option<&LinearPredicate> {
        Rel::ALL.iter().map(|r| base.with_rel(*r)).find_map(|p| self.0.get(&p))
    }

    /// Predicates whose variables all lie in one block.
    pub fn respecting(&self, partition: &Partition) -> PredicateSet {
        self.iter().filter(|p| p.respects(partition)).cloned().collect()
    }

    pub fn respects(&self, partition: &Partition) -> bool {
        self.iter().all(|p| p.respects(partition))
    }

    pub fn holds(&self, model: &Model) -> bool {
        self.iter().all(|p| p.holds(model))
    }
}

impl FromIterator<LinearPredicate> for PredicateSet {
    fn from_iter<T: IntoIterator<Item = LinearPredicate>>(iter: T) -> Self {
        PredicateSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a PredicateSet {
    type Item = &'a LinearPredicate;
    type IntoIter = std::collections::btree_set::Iter<'a, LinearPredicate>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl Extend<LinearPredicate> for PredicateSet {
    fn extend<T: IntoIterator<Item = LinearPredicate>>(&mut self, iter: T) {
        self.0.extend(iter)
    }
}

impl fmt::Debug for PredicateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use vardec_linalg::{frac, int};

    fn pred(terms: &[(usize, i64)], c: Q, rel: Rel) -> LinearPredicate {
        LinearPredicate::new(terms.iter().map(|&(v, k)| (v, int(k))), c, rel).unwrap()
    }

    #[test]
    fn common_factor_is_removed() {
        assert_eq!(pred(&[(0, 2), (1, -3)], int(1), Rel::Eq), pred(&[(0, 4), (1, -6)], int(2), Rel::Eq));
    }

    #[test]
    fn negative_lead_flips_relation() {
        // y < x, i.e. -x + y < 0
        let p = pred(&[(0, -1), (1, 1)], int(0), Rel::Lt);
        assert_eq!(p.coeffs(), &[(0, int(1)), (1, int(-1))]);
        assert_eq!(p.rel(), Rel::Gt);
    }

    #[test]
    fn keeps_positive_form() {
        let p = pred(&[(0, 1), (1, 1)], int(2), Rel::Lt);
        assert_eq!(p.coeffs(), &[(0, int(1)), (1, int(1))]);
        assert_eq!(p.constant(), &int(2));
        assert_eq!(p.rel(), Rel::Lt);
    }

    #[test]
    fn rational_coefficients_are_cleared() {
        let p = LinearPredicate::new([(0, frac(-31, 22)), (1, int(1)), (2, frac(13, 11))], frac(-101, 33), Rel::Lt)
            .unwrap();
        assert_eq!(p.coeffs(), &[(0, int(31)), (1, int(-22)), (2, int(-26))]);
        assert_eq!(p.constant(), &frac(202, 3));
        assert_eq!(p.rel(), Rel::Gt);
    }

    #[test]
    fn cancelling_terms_give_constants() {
        assert_eq!(LinearPredicate::canonical([(0, int(1)), (0, int(-1))], int(0), Rel::Eq), Canonical::Const(true));
        assert_eq!(LinearPredicate::canonical([], int(1), Rel::Lt), Canonical::Const(true));
        assert_eq!(LinearPredicate::canonical([], int(-1), Rel::Lt), Canonical::Const(false));
    }

    #[test]
    fn substitute_symbol() {
        let p = pred(&[(0, 1), (1, 1)], int(2), Rel::Lt);
        let q = p.with_rel(Rel::Eq);
        assert_eq!(q.rel(), Rel::Eq);
        assert!(q.same_base(&p));
        assert_eq!(p.with_rel(Rel::Gt).with_rel(Rel::Eq), q);
    }

    #[test]
    fn respects_blocks() {
        let pi = Partition::singletons(2);
        assert!(!pred(&[(0, 1), (1, 1)], int(2), Rel::Lt).respects(&pi));
        assert!(pred(&[(0, 1)], int(1), Rel::Lt).respects(&pi));
    }

    #[test]
    fn evaluation() {
        let m = vec![int(1), int(1)];
        assert!(pred(&[(0, 1), (1, -1)], int(0), Rel::Eq).holds(&m));
        assert!(!pred(&[(0, 1), (1, 1)], int(2), Rel::Lt).holds(&m));
    }
}
