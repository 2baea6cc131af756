//! Problem files and result documents.
//!
//! A document is a sequence of tagged top-level forms. `(vars …)` comes first;
//! the other forms may appear in any order, each at most once:
//!
//! ```text
//! (vars x y)
//! (partition ((x) (y)))
//! (formula (or (distinct (+ x y) 2) (distinct (- x y) 0)))
//! ```
//!
//! Results add `(result …)`, `(decomposition …)`, `(approximation …)`,
//! `(witness …)`, `(proof …)` and `(verdict …)` forms in the same grammar.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use vardec_core::cert::{Check, LambdaProof, Rejection};
use vardec_core::cover::{CoverStats, CoverTerm, Covering};
use vardec_core::vardec::NonDecWitness;
use vardec_core::{Cmp, Formula, LinExpr, LinearPredicate, Model, Partition, PredicateSet, Rel};
use vardec_linalg::Q;

use crate::sexpr::{parse_all, Kind, Sexp, SyntaxError};

type Result<T> = std::result::Result<T, SyntaxError>;

const RESERVED: &[&str] = &[
    "true", "false", "and", "or", "not", "=>", "<=>", "<", "<=", ">", ">=", "=", "distinct", "!=", "+", "-", "*", "/",
];

/// Variable names in declaration order; variable `i` is `names[i]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vars {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vars {
    pub fn new(names: Vec<String>) -> std::result::Result<Vars, String> {
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if parse_number(n).is_some() || RESERVED.contains(&n.as_str()) || n.is_empty() {
                return Err(format!("`{n}` is not a valid variable name"));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(format!("variable `{n}` declared twice"));
            }
        }
        Ok(Vars { names, index })
    }

    /// `x0 … x{n-1}`.
    pub fn numbered(n: usize) -> Vars {
        Vars::new((0..n).map(|i| format!("x{i}")).collect()).expect("fresh names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    fn lookup(&self, x: &Sexp, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| x.error(format!("unknown variable `{name}`")))
    }
}

/// The input to every command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub vars: Vars,
    /// `None` when the file has no `(partition …)` form.
    pub partition: Option<Partition>,
    pub formula: Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Decomposable,
    NotDecomposable,
}

/// A Λ-proof together with the two-block partition it refutes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofBlock {
    pub partition: Partition,
    pub proof: LambdaProof,
}

/// Everything a document may contain.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub vars: Vars,
    pub partition: Option<Partition>,
    pub formula: Option<Formula>,
    pub result: Option<Verdict>,
    pub decomposition: Option<Formula>,
    pub approximation: Option<Formula>,
    pub witness: Option<NonDecWitness>,
    pub proof: Option<ProofBlock>,
    /// `Ok` for accept, the rejection otherwise.
    pub verdict: Option<std::result::Result<(), Rejection>>,
}

// ---- numbers ----

/// `-?digits(/digits)?`
pub fn parse_number(s: &str) -> Option<Q> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    match den {
        None => Some(Q::from_integer(n)),
        Some(d) if !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) => {
            let d: BigInt = d.parse().ok()?;
            (!d.is_zero()).then(|| Q::new(n, d))
        }
        Some(_) => None,
    }
}

pub fn number(q: &Q) -> Sexp {
    Sexp::sym(q.to_string())
}

// ---- reading ----

fn args<'a>(x: &'a Sexp, rest: &'a [Sexp], min: usize, max: Option<usize>) -> Result<&'a [Sexp]> {
    let ok = rest.len() >= min && max.is_none_or(|m| rest.len() <= m);
    if ok {
        Ok(rest)
    } else {
        let (op, _) = x.head().unwrap_or(("form", rest));
        let want = match max {
            Some(m) if m == min => format!("{min}"),
            Some(m) => format!("{min} to {m}"),
            None => format!("at least {min}"),
        };
        Err(x.error(format!("`{op}` takes {want} argument(s), got {}", rest.len())))
    }
}

fn term(x: &Sexp, vars: &Vars) -> Result<LinExpr> {
    match &x.kind {
        Kind::Symbol(s) => match parse_number(s) {
            Some(q) => Ok(LinExpr::constant(q)),
            None => vars.lookup(x, s).map(LinExpr::var),
        },
        Kind::Str(_) => Err(x.error("expected a term, found a string")),
        Kind::List(_) => {
            let (op, rest) = x.head().ok_or_else(|| x.error("expected an operator"))?;
            let ts = |xs: &[Sexp]| xs.iter().map(|t| term(t, vars)).collect::<Result<Vec<_>>>();
            match op {
                "+" => Ok(ts(args(x, rest, 1, None)?)?.into_iter().fold(LinExpr::default(), |a, b| a + b)),
                "-" => {
                    let mut parts = ts(args(x, rest, 1, None)?)?.into_iter();
                    let first = parts.next().unwrap();
                    Ok(if rest.len() == 1 { -first } else { parts.fold(first, |a, b| a - b) })
                }
                "*" => {
                    let parts = ts(args(x, rest, 1, None)?)?;
                    let mut scale = Q::one();
                    let mut linear: Option<LinExpr> = None;
                    for p in parts {
                        if p.is_constant() {
                            scale *= p.constant;
                        } else if linear.replace(p).is_some() {
                            return Err(x.error("nonlinear term: product of two variable terms"));
                        }
                    }
                    Ok(linear.unwrap_or_else(|| LinExpr::constant(Q::one())).scale(&scale))
                }
                "/" => {
                    let parts = ts(args(x, rest, 2, Some(2))?)?;
                    if !parts[1].is_constant() {
                        return Err(rest[1].error("nonlinear term: division by a variable term"));
                    }
                    if parts[1].constant.is_zero() {
                        return Err(rest[1].error("division by zero"));
                    }
                    let inv = parts[1].constant.recip();
                    Ok(parts[0].clone().scale(&inv))
                }
                _ => Err(x.error(format!("unknown term operator `{op}`"))),
            }
        }
    }
}

fn comparison(op: &str) -> Option<Cmp> {
    Some(match op {
        "<" => Cmp::Lt,
        "<=" => Cmp::Le,
        "=" => Cmp::Eq,
        ">=" => Cmp::Ge,
        ">" => Cmp::Gt,
        _ => return None,
    })
}

pub fn formula(x: &Sexp, vars: &Vars) -> Result<Formula> {
    match &x.kind {
        Kind::Symbol(s) if s == "true" => Ok(Formula::True),
        Kind::Symbol(s) if s == "false" => Ok(Formula::False),
        Kind::Symbol(s) => Err(x.error(format!("expected a formula, found `{s}`"))),
        Kind::Str(_) => Err(x.error("expected a formula, found a string")),
        Kind::List(_) => {
            let (op, rest) = x.head().ok_or_else(|| x.error("expected an operator"))?;
            let fs = |xs: &[Sexp]| xs.iter().map(|f| formula(f, vars)).collect::<Result<Vec<_>>>();
            let ts = |xs: &[Sexp]| xs.iter().map(|t| term(t, vars)).collect::<Result<Vec<_>>>();
            if let Some(cmp) = comparison(op) {
                // chained like SMT-LIB: (< a b c) is a < b ∧ b < c
                let parts = ts(args(x, rest, 2, None)?)?;
                let links: Vec<Formula> =
                    parts.windows(2).map(|w| Formula::compare(w[0].clone(), cmp, w[1].clone())).collect();
                return Ok(if links.len() == 1 { links.into_iter().next().unwrap() } else { Formula::And(links) });
            }
            match op {
                "and" => Ok(Formula::And(fs(rest)?)),
                "or" => Ok(Formula::Or(fs(rest)?)),
                "not" => Ok(Formula::not(fs(args(x, rest, 1, Some(1))?)?.pop().unwrap())),
                "=>" => {
                    let mut parts = fs(args(x, rest, 2, None)?)?;
                    let last = parts.pop().unwrap();
                    Ok(parts.into_iter().rev().fold(last, |acc, a| Formula::implies(a, acc)))
                }
                "<=>" => {
                    let mut parts = fs(args(x, rest, 2, Some(2))?)?;
                    let b = parts.pop().unwrap();
                    Ok(Formula::iff(parts.pop().unwrap(), b))
                }
                "distinct" | "!=" => {
                    let parts = ts(args(x, rest, 2, None)?)?;
                    let mut pairs = Vec::new();
                    for i in 0..parts.len() {
                        for j in i + 1..parts.len() {
                            pairs.push(Formula::compare(parts[i].clone(), Cmp::Ne, parts[j].clone()));
                        }
                    }
                    Ok(if pairs.len() == 1 { pairs.pop().unwrap() } else { Formula::And(pairs) })
                }
                _ => Err(x.error(format!("unknown formula operator `{op}`"))),
            }
        }
    }
}

/// An atom in canonical `(rel lhs constant)` form, as emitted by [`pred`].
pub fn predicate(x: &Sexp, vars: &Vars) -> Result<LinearPredicate> {
    let (op, rest) = x.head().ok_or_else(|| x.error("expected a predicate"))?;
    let rel = match op {
        "<" => Rel::Lt,
        "=" => Rel::Eq,
        ">" => Rel::Gt,
        _ => return Err(x.error(format!("expected `<`, `=` or `>`, found `{op}`"))),
    };
    let parts = args(x, rest, 2, Some(2))?;
    let diff = term(&parts[0], vars)? - term(&parts[1], vars)?;
    LinearPredicate::new(diff.terms, -diff.constant, rel).ok_or_else(|| x.error("predicate has no variables"))
}

fn predicate_set(items: &[Sexp], vars: &Vars) -> Result<PredicateSet> {
    items.iter().map(|p| predicate(p, vars)).collect()
}

pub fn partition(x: &Sexp, vars: &Vars) -> Result<Partition> {
    let blocks = x.as_list().ok_or_else(|| x.error("expected a list of blocks"))?;
    let mut out = Vec::new();
    for b in blocks {
        let names = b.as_list().ok_or_else(|| b.error("expected a block such as `(x y)`"))?;
        let mut block = Vec::new();
        for n in names {
            let s = n.as_symbol().ok_or_else(|| n.error("expected a variable name"))?;
            block.push(vars.lookup(n, s)?);
        }
        out.push(block);
    }
    Partition::new(vars.len(), out).map_err(|e| x.error(e.to_string()))
}

fn one<'a>(x: &'a Sexp, rest: &'a [Sexp]) -> Result<&'a Sexp> {
    Ok(&args(x, rest, 1, Some(1))?[0])
}

fn natural(x: &Sexp) -> Result<usize> {
    x.as_symbol().and_then(|s| s.parse().ok()).ok_or_else(|| x.error("expected a natural number"))
}

/// `(tag items…)` children of a form, by tag.
fn fields(rest: &[Sexp]) -> Result<HashMap<&str, (&Sexp, &[Sexp])>> {
    let mut out = HashMap::new();
    for f in rest {
        let (tag, items) = f.head().ok_or_else(|| f.error("expected a tagged field"))?;
        if tag != "term" && out.insert(tag, (f, items)).is_some() {
            return Err(f.error(format!("duplicate field `{tag}`")));
        }
    }
    Ok(out)
}

fn field<'a>(x: &Sexp, map: &HashMap<&'a str, (&'a Sexp, &'a [Sexp])>, tag: &str) -> Result<(&'a Sexp, &'a [Sexp])> {
    map.get(tag).copied().ok_or_else(|| x.error(format!("missing field `{tag}`")))
}

fn model(x: &Sexp, items: &[Sexp], vars: &Vars) -> Result<Model> {
    let mut out: Vec<Option<Q>> = vec![None; vars.len()];
    for it in items {
        let pair = it.as_list().filter(|l| l.len() == 2).ok_or_else(|| it.error("expected `(name value)`"))?;
        let name = pair[0].as_symbol().ok_or_else(|| pair[0].error("expected a variable name"))?;
        let v = vars.lookup(&pair[0], name)?;
        let q = pair[1].as_symbol().and_then(parse_number).ok_or_else(|| pair[1].error("expected a number"))?;
        if out[v].replace(q).is_some() {
            return Err(it.error(format!("`{name}` assigned twice")));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(v, q)| q.ok_or_else(|| x.error(format!("no value for `{}`", vars.name(v)))))
        .collect()
}

fn covering(x: &Sexp, rest: &[Sexp], vars: &Vars) -> Result<Covering> {
    let map = fields(rest)?;
    let (_, source) = field(x, &map, "source")?;
    let (sx, stats) = field(x, &map, "stats")?;
    let stat = |tag: &str| -> Result<usize> {
        let m = fields(stats)?;
        let (f, v) = field(sx, &m, tag)?;
        natural(one(f, v)?)
    };
    let mut terms = Vec::new();
    for t in rest.iter().filter(|t| t.head().is_some_and(|(h, _)| h == "term")) {
        let (_, items) = t.head().unwrap();
        let m = fields(items)?;
        terms.push(CoverTerm {
            preds: predicate_set(field(t, &m, "preds")?.1, vars)?,
            theta: predicate_set(field(t, &m, "theta")?.1, vars)?,
        });
    }
    Ok(Covering {
        source: predicate_set(source, vars)?,
        terms,
        stats: CoverStats { calls: stat("calls")?, max_depth: stat("max-depth")?, omegas: stat("omegas")? },
    })
}

fn witness(x: &Sexp, rest: &[Sexp], vars: &Vars) -> Result<NonDecWitness> {
    let map = fields(rest)?;
    let (px, p) = field(x, &map, "partition")?;
    let (cx, c) = field(x, &map, "covering")?;
    let (fx, f) = field(x, &map, "failing-term")?;
    let (mx, m) = field(x, &map, "counter-model")?;
    let covering = covering(cx, c, vars)?;
    let failing_term = natural(one(fx, f)?)?;
    if failing_term >= covering.terms.len() {
        return Err(fx.error("failing term index out of range"));
    }
    Ok(NonDecWitness {
        partition: partition(one(px, p)?, vars)?,
        gamma: predicate_set(field(x, &map, "gamma")?.1, vars)?,
        covering,
        failing_term,
        counter_model: model(mx, m, vars)?,
    })
}

fn proof(x: &Sexp, rest: &[Sexp], vars: &Vars) -> Result<ProofBlock> {
    let map = fields(rest)?;
    let (px, p) = field(x, &map, "partition")?;
    let set = |tag| -> Result<PredicateSet> { predicate_set(field(x, &map, tag)?.1, vars) };
    Ok(ProofBlock {
        partition: partition(one(px, p)?, vars)?,
        proof: LambdaProof { lambda0: set("lambda0")?, lambda1: set("lambda1")?, lambda0p: set("lambda0p")?, lambda1p: set("lambda1p")? },
    })
}

fn verdict(x: &Sexp, rest: &[Sexp]) -> Result<std::result::Result<(), Rejection>> {
    let (first, more) = rest.split_first().ok_or_else(|| x.error("expected `accept` or `reject`"))?;
    match first.as_symbol() {
        Some("accept") if more.is_empty() => Ok(Ok(())),
        Some("reject") => {
            let map = fields(more)?;
            let (cx, c) = field(x, &map, "check")?;
            let name = one(cx, c)?.as_symbol().unwrap_or_default();
            let check = Check::ALL.into_iter().find(|k| k.name() == name).ok_or_else(|| cx.error("unknown check"))?;
            let (dx, d) = field(x, &map, "detail")?;
            let detail = match &one(dx, d)?.kind {
                Kind::Str(s) => s.clone(),
                _ => return Err(dx.error("expected a string")),
            };
            Ok(Err(Rejection { check, detail }))
        }
        _ => Err(first.error("expected `accept` or `reject`")),
    }
}

fn set_once<T>(slot: &mut Option<T>, x: &Sexp, value: T) -> Result<()> {
    if slot.replace(value).is_some() {
        let (tag, _) = x.head().unwrap_or(("form", &[]));
        return Err(x.error(format!("duplicate `{tag}` form")));
    }
    Ok(())
}

pub fn parse_document(text: &str) -> Result<Document> {
    let forms = parse_all(text)?;
    let mut doc = Document::default();
    let mut declared = false;
    for x in &forms {
        let (tag, rest) = x.head().ok_or_else(|| x.error("expected a tagged form such as `(vars …)`"))?;
        if tag == "vars" {
            if declared {
                return Err(x.error("duplicate `vars` form"));
            }
            let names = rest
                .iter()
                .map(|n| n.as_symbol().map(str::to_owned).ok_or_else(|| n.error("expected a variable name")))
                .collect::<Result<Vec<_>>>()?;
            doc.vars = Vars::new(names).map_err(|e| x.error(e))?;
            declared = true;
            continue;
        }
        if !declared {
            return Err(x.error("`vars` must come first"));
        }
        let vars = &doc.vars;
        match tag {
            "partition" => set_once(&mut doc.partition, x, partition(one(x, rest)?, vars)?)?,
            "formula" => set_once(&mut doc.formula, x, formula(one(x, rest)?, vars)?)?,
            "decomposition" => set_once(&mut doc.decomposition, x, formula(one(x, rest)?, vars)?)?,
            "approximation" => set_once(&mut doc.approximation, x, formula(one(x, rest)?, vars)?)?,
            "result" => {
                let v = match one(x, rest)?.as_symbol() {
                    Some("decomposable") => Verdict::Decomposable,
                    Some("not-decomposable") => Verdict::NotDecomposable,
                    _ => return Err(rest[0].error("expected `decomposable` or `not-decomposable`")),
                };
                set_once(&mut doc.result, x, v)?
            }
            "witness" => set_once(&mut doc.witness, x, witness(x, rest, vars)?)?,
            "proof" => set_once(&mut doc.proof, x, proof(x, rest, vars)?)?,
            "verdict" => set_once(&mut doc.verdict, x, verdict(x, rest)?)?,
            _ => return Err(x.error(format!("unknown form `{tag}`"))),
        }
    }
    if !declared {
        return Err(SyntaxError::new(crate::sexpr::Pos { line: 1, col: 1 }, "missing `(vars …)`"));
    }
    Ok(doc)
}

pub fn parse_problem(text: &str) -> Result<Problem> {
    let doc = parse_document(text)?;
    let formula = doc.formula.ok_or_else(|| SyntaxError::new(crate::sexpr::Pos { line: 1, col: 1 }, "missing `(formula …)`"))?;
    Ok(Problem { vars: doc.vars, partition: doc.partition, formula })
}

/// A partition given on its own, such as a `--partition` argument.
pub fn parse_partition(text: &str, vars: &Vars) -> Result<Partition> {
    partition(&crate::sexpr::parse_one(text)?, vars)
}

// ---- writing ----

fn lhs(p: &LinearPredicate, vars: &Vars) -> Sexp {
    let term = |(v, c): &(usize, Q)| {
        let name = Sexp::sym(vars.name(*v));
        if c.is_one() {
            name
        } else {
            Sexp::tagged("*", [number(c), name])
        }
    };
    match p.coeffs() {
        [single] => term(single),
        many => Sexp::tagged("+", many.iter().map(term)),
    }
}

pub fn pred(p: &LinearPredicate, vars: &Vars) -> Sexp {
    Sexp::tagged(p.rel().symbol(), [lhs(p, vars), number(p.constant())])
}

pub fn formula_sexp(f: &Formula, vars: &Vars) -> Sexp {
    match f {
        Formula::True => Sexp::sym("true"),
        Formula::False => Sexp::sym("false"),
        Formula::Atom(p) => pred(p, vars),
        Formula::Not(g) => Sexp::tagged("not", [formula_sexp(g, vars)]),
        Formula::And(fs) if fs.is_empty() => Sexp::sym("true"),
        Formula::Or(fs) if fs.is_empty() => Sexp::sym("false"),
        Formula::And(fs) => Sexp::tagged("and", fs.iter().map(|g| formula_sexp(g, vars))),
        Formula::Or(fs) => Sexp::tagged("or", fs.iter().map(|g| formula_sexp(g, vars))),
    }
}

fn set(tag: &str, s: &PredicateSet, vars: &Vars) -> Sexp {
    Sexp::tagged(tag, s.iter().map(|p| pred(p, vars)))
}

pub fn partition_sexp(p: &Partition, vars: &Vars) -> Sexp {
    Sexp::list(p.blocks().iter().map(|b| Sexp::list(b.iter().map(|&v| Sexp::sym(vars.name(v))).collect())).collect())
}

fn nat(tag: &str, n: usize) -> Sexp {
    Sexp::tagged(tag, [Sexp::sym(n.to_string())])
}

pub fn witness_sexp(w: &NonDecWitness, vars: &Vars) -> Sexp {
    let c = &w.covering;
    let stats = Sexp::tagged(
        "stats",
        [nat("calls", c.stats.calls), nat("max-depth", c.stats.max_depth), nat("omegas", c.stats.omegas)],
    );
    let terms = c.terms.iter().map(|t| Sexp::tagged("term", [set("preds", &t.preds, vars), set("theta", &t.theta, vars)]));
    let covering = Sexp::tagged("covering", [set("source", &c.source, vars), stats].into_iter().chain(terms));
    let model = Sexp::tagged(
        "counter-model",
        w.counter_model.iter().enumerate().map(|(v, q)| Sexp::list(vec![Sexp::sym(vars.name(v)), number(q)])),
    );
    Sexp::tagged(
        "witness",
        [
            Sexp::tagged("partition", [partition_sexp(&w.partition, vars)]),
            set("gamma", &w.gamma, vars),
            covering,
            nat("failing-term", w.failing_term),
            model,
        ],
    )
}

pub fn proof_sexp(b: &ProofBlock, vars: &Vars) -> Sexp {
    let p = &b.proof;
    Sexp::tagged(
        "proof",
        [
            Sexp::tagged("partition", [partition_sexp(&b.partition, vars)]),
            set("lambda0", &p.lambda0, vars),
            set("lambda1", &p.lambda1, vars),
            set("lambda0p", &p.lambda0p, vars),
            set("lambda1p", &p.lambda1p, vars),
        ],
    )
}

pub fn verdict_sexp(v: &std::result::Result<(), Rejection>) -> Sexp {
    match v {
        Ok(()) => Sexp::tagged("verdict", [Sexp::sym("accept")]),
        Err(r) => Sexp::tagged(
            "verdict",
            [
                Sexp::sym("reject"),
                Sexp::tagged("check", [Sexp::sym(r.check.name())]),
                Sexp::tagged("detail", [Sexp::string(r.detail.clone())]),
            ],
        ),
    }
}

impl Document {
    pub fn from_problem(p: &Problem) -> Document {
        Document { vars: p.vars.clone(), partition: p.partition.clone(), formula: Some(p.formula.clone()), ..Document::default() }
    }

    pub fn forms(&self) -> Vec<Sexp> {
        let v = &self.vars;
        let mut out = vec![Sexp::tagged("vars", v.names().iter().map(Sexp::sym))];
        if let Some(p) = &self.partition {
            out.push(Sexp::tagged("partition", [partition_sexp(p, v)]));
        }
        if let Some(f) = &self.formula {
            out.push(Sexp::tagged("formula", [formula_sexp(f, v)]));
        }
        if let Some(r) = self.result {
            let word = match r {
                Verdict::Decomposable => "decomposable",
                Verdict::NotDecomposable => "not-decomposable",
            };
            out.push(Sexp::tagged("result", [Sexp::sym(word)]));
        }
        if let Some(f) = &self.decomposition {
            out.push(Sexp::tagged("decomposition", [formula_sexp(f, v)]));
        }
        if let Some(f) = &self.approximation {
            out.push(Sexp::tagged("approximation", [formula_sexp(f, v)]));
        }
        if let Some(w) = &self.witness {
            out.push(witness_sexp(w, v));
        }
        if let Some(b) = &self.proof {
            out.push(proof_sexp(b, v));
        }
        if let Some(r) = &self.verdict {
            out.push(verdict_sexp(r));
        }
        out
    }
}

impl std::fmt::Display for Document {
    /// One top-level form per line.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for x in self.forms() {
            writeln!(f, "{x}")?;
        }
        Ok(())
    }
}
