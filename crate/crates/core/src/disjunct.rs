//! Satisfiable sign vectors over the atoms of a formula.

use crate::formula::CompiledFormula;
use crate::pred::{PredicateSet, Rel};
use crate::sat::sat_model;
use crate::Model;

/// One orientation of every atom of `φ`, together with a model of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disjunct {
    pub signs: Vec<Rel>,
    pub preds: PredicateSet,
    pub model: Model,
    /// Whether the disjunct entails `φ`. Otherwise it entails `¬φ`.
    pub entails_phi: bool,
}

/// Evaluates `φ` at one model of the disjunct. Every disjunct entails either `φ` or `¬φ`.
pub fn classify(f: &CompiledFormula, model: &[vardec_linalg::Q]) -> bool {
    f.eval(model)
}

struct Node {
    signs: Vec<Rel>,
    model: Model,
}

/// Lazy depth-first enumeration in lexicographic `<`, `=`, `>` order, pruning
/// unsatisfiable prefixes. An optional context is conjoined to every disjunct.
pub struct Disjuncts<'a> {
    n: usize,
    f: &'a CompiledFormula,
    ctx: PredicateSet,
    stack: Vec<Node>,
    /// Also prune prefixes under which `φ` is already false.
    positive_only: bool,
}

impl<'a> Disjuncts<'a> {
    pub fn new(n: usize, f: &'a CompiledFormula, ctx: Option<&PredicateSet>) -> Self {
        let ctx = ctx.cloned().unwrap_or_default();
        let stack = sat_model(n, &ctx).map(|model| Node { signs: Vec::new(), model }).into_iter().collect();
        Disjuncts { n, f, ctx, stack, positive_only: false }
    }

    /// Enumerates only the disjuncts that entail `φ`.
    pub fn positive_only(mut self) -> Self {
        self.positive_only = true;
        self
    }

    fn falsifies(&self, signs: &[Rel], r: Rel) -> bool {
        if !self.positive_only {
            return false;
        }
        let mut partial: Vec<Option<Rel>> = signs.iter().copied().map(Some).collect();
        partial.push(Some(r));
        partial.resize(self.f.bases().len(), None);
        self.f.eval_partial(&partial) == Some(false)
    }
}

impl Iterator for Disjuncts<'_> {
    type Item = Disjunct;

    fn next(&mut self) -> Option<Disjunct> {
        let bases = self.f.bases();
        while let Some(node) = self.stack.pop() {
            let depth = node.signs.len();
            if depth == bases.len() {
                let preds = self.f.oriented(&node.signs);
                let entails_phi = classify(self.f, &node.model);
                return Some(Disjunct { signs: node.signs, preds, model: node.model, entails_phi });
            }
            let prefix: Vec<_> = self.f.oriented(&node.signs).iter().cloned().collect();
            let base = &bases[depth];
            let here = base.orientation(&node.model);
            let mut model = Some(node.model);
            let mut children = Vec::new();
            for r in Rel::ALL {
                if self.falsifies(&node.signs, r) {
                    continue;
                }
                let m = if r == here {
                    model.take()
                } else {
                    let q = base.with_rel(r);
                    sat_model(self.n, self.ctx.iter().chain(&prefix).chain(std::iter::once(&q)))
                };
                if let Some(m) = m {
                    let mut signs = node.signs.clone();
                    signs.push(r);
                    children.push(Node { signs, model: m });
                }
            }
            self.stack.extend(children.into_iter().rev());
        }
        None
    }
}

/// All satisfiable disjuncts of `φ`, optionally under a context.
pub fn disjuncts(n: usize, f: &CompiledFormula, ctx: Option<&PredicateSet>) -> Vec<Disjunct> {
    Disjuncts::new(n, f, ctx).collect()
}

/// The satisfiable disjuncts that entail `φ`, in the order of [`disjuncts`].
pub fn positive_disjuncts(n: usize, f: &CompiledFormula, ctx: Option<&PredicateSet>) -> Vec<Disjunct> {
    Disjuncts::new(n, f, ctx).positive_only().collect()
}
