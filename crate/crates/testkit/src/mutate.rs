//! Single edits to an accepted Λ-proof that break a property the verifier checks.
//!
//! Every kind is chosen so the edited proof is invalid whatever the instance:
//!
//! * dropping the orientation of a formula atom from `Λi'` leaves it without one;
//! * dropping or re-orienting a predicate of `Λ0` alone breaks `Λ0 ⊆ Λ0'`, since
//!   the satisfiable `Λ0'` holds one orientation per base;
//! * swapping the sides puts the strict atom on the equality side, or breaks
//!   the subset relation when the primed sets stay put;
//! * making the equality of `Λ1` strict, or adding it to `Λ0`, removes the
//!   single equality/strict difference.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vardec_core::cert::{p_next, LambdaProof};
use vardec_core::{LinearPredicate, Rel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mutation {
    DropFormulaAtom,
    DropFromLambda0,
    ReorientInLambda0,
    SwapSides,
    SwapUnprimed,
    StrictEquality,
    EqualityIntoLambda0,
}

impl Mutation {
    pub const ALL: [Mutation; 7] = [
        Mutation::DropFormulaAtom,
        Mutation::DropFromLambda0,
        Mutation::ReorientInLambda0,
        Mutation::SwapSides,
        Mutation::SwapUnprimed,
        Mutation::StrictEquality,
        Mutation::EqualityIntoLambda0,
    ];
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> Option<&'a T> {
    (!items.is_empty()).then(|| &items[rng.gen_range(0..items.len())])
}

fn other_rel(rng: &mut ChaCha8Rng, r: Rel) -> Rel {
    let others: Vec<Rel> = Rel::ALL.into_iter().filter(|&x| x != r).collect();
    others[rng.gen_range(0..2)]
}

/// Applies `kind` to `proof`, or `None` when the proof offers nothing to edit
/// (for instance no formula atom is oriented on the chosen side).
pub fn apply(kind: Mutation, proof: &LambdaProof, bases: &[LinearPredicate], rng: &mut ChaCha8Rng) -> Option<LambdaProof> {
    let mut out = proof.clone();
    let eq = p_next(&proof.lambda0, &proof.lambda1).map(|(p, _)| p);
    match kind {
        Mutation::DropFormulaAtom => {
            let side = rng.gen_bool(0.5);
            let target = if side { &mut out.lambda1p } else { &mut out.lambda0p };
            let present: Vec<LinearPredicate> = bases.iter().filter_map(|b| target.orientation_of(b).cloned()).collect();
            target.remove(pick(rng, &present)?);
        }
        Mutation::DropFromLambda0 => {
            let all: Vec<LinearPredicate> = proof.lambda0.iter().cloned().collect();
            out.lambda0.remove(pick(rng, &all)?);
        }
        Mutation::ReorientInLambda0 => {
            let all: Vec<LinearPredicate> = proof.lambda0.iter().cloned().collect();
            let q = pick(rng, &all)?;
            out.lambda0.remove(q);
            out.lambda0.insert(q.with_rel(other_rel(rng, q.rel())));
        }
        Mutation::SwapSides => {
            std::mem::swap(&mut out.lambda0, &mut out.lambda1);
            std::mem::swap(&mut out.lambda0p, &mut out.lambda1p);
        }
        Mutation::SwapUnprimed => std::mem::swap(&mut out.lambda0, &mut out.lambda1),
        Mutation::StrictEquality => {
            let eq = eq?;
            let strict = eq.with_rel(if rng.gen_bool(0.5) { Rel::Lt } else { Rel::Gt });
            for set in [&mut out.lambda1, &mut out.lambda1p] {
                set.remove(&eq);
                set.insert(strict.clone());
            }
        }
        Mutation::EqualityIntoLambda0 => {
            out.lambda0.insert(eq?);
        }
    }
    (out != *proof).then_some(out)
}

/// `count` mutants of `proof` with kinds drawn from a seeded generator.
pub fn mutants(proof: &LambdaProof, bases: &[LinearPredicate], count: usize, seed: u64) -> Vec<(Mutation, LambdaProof)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut misses = 0;
    while out.len() < count && misses < 64 * count {
        let kind = *pick(&mut rng, &Mutation::ALL).expect("nonempty");
        match apply(kind, proof, bases, &mut rng) {
            Some(m) => out.push((kind, m)),
            None => misses += 1,
        }
    }
    out
}
