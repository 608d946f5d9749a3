//! Abstract syntax of the restricted calculus: variables, application,
//! lambda abstraction, dependent products and the two sort families, plus
//! capture-avoiding substitution, beta-normalization and the expansion of
//! the derived logical symbols.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Variable and binder names. Plain strings; freshness is managed by the
/// substitution and context machinery.
pub type Ident = String;

/// Default step budget for beta-reduction.
pub const DEFAULT_FUEL: u64 = 1_000_000;

/// A term of the calculus.
///
/// The derived `PartialEq` is structural (binder names included); use
/// [`alpha_eq`] for equality up to renaming of bound variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Ident),
    App(Box<Term>, Box<Term>),
    Lam(Ident, Box<Term>, Box<Term>),
    Pi(Ident, Box<Term>, Box<Term>),
    Prop,
    Type(u32),
}

pub fn var(name: impl Into<Ident>) -> Term {
    Term::Var(name.into())
}

pub fn app(fun: Term, arg: Term) -> Term {
    Term::App(Box::new(fun), Box::new(arg))
}

pub fn lam(binder: impl Into<Ident>, domain: Term, body: Term) -> Term {
    Term::Lam(binder.into(), Box::new(domain), Box::new(body))
}

pub fn pi(binder: impl Into<Ident>, domain: Term, codomain: Term) -> Term {
    Term::Pi(binder.into(), Box::new(domain), Box::new(codomain))
}

impl Term {
    pub fn is_sort(&self) -> bool {
        matches!(self, Term::Prop | Term::Type(_))
    }

    /// Left-nested application `f a b c`.
    pub fn apply_all(self, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(self, app)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("reduction fuel exhausted after {fuel} steps")]
    FuelExhausted { fuel: u64 },
}

/// Free variables of a term under the usual binding of `Lam`/`Pi`.
pub fn free_vars(t: &Term) -> BTreeSet<Ident> {
    fn go(t: &Term, bound: &mut Vec<Ident>, acc: &mut BTreeSet<Ident>) {
        match t {
            Term::Var(x) => {
                if !bound.iter().any(|b| b == x) {
                    acc.insert(x.clone());
                }
            }
            Term::App(f, a) => {
                go(f, bound, acc);
                go(a, bound, acc);
            }
            Term::Lam(x, dom, body) | Term::Pi(x, dom, body) => {
                go(dom, bound, acc);
                bound.push(x.clone());
                go(body, bound, acc);
                bound.pop();
            }
            Term::Prop | Term::Type(_) => {}
        }
    }
    let mut acc = BTreeSet::new();
    go(t, &mut Vec::new(), &mut acc);
    acc
}

/// Picks a name based on `base` that does not occur in `avoid`, by
/// appending primes.
pub fn fresh_name(base: &str, avoid: &BTreeSet<Ident>) -> Ident {
    if !avoid.contains(base) {
        return base.to_string();
    }
    let mut candidate = String::from(base);
    loop {
        candidate.push('\'');
        if !avoid.contains(&candidate) {
            return candidate;
        }
    }
}

/// Capture-avoiding substitution of `v` for the free occurrences of `x`
/// in `t`. Binders that would capture a free variable of `v` are renamed
/// first.
pub fn substitute(t: &Term, x: &str, v: &Term) -> Term {
    match t {
        Term::Var(y) => {
            if y == x {
                v.clone()
            } else {
                t.clone()
            }
        }
        Term::App(f, a) => app(substitute(f, x, v), substitute(a, x, v)),
        Term::Lam(y, dom, body) => {
            let (y2, body2) = subst_under_binder(y, body, x, v);
            lam(y2, substitute(dom, x, v), body2)
        }
        Term::Pi(y, dom, cod) => {
            let (y2, cod2) = subst_under_binder(y, cod, x, v);
            pi(y2, substitute(dom, x, v), cod2)
        }
        Term::Prop | Term::Type(_) => t.clone(),
    }
}

fn subst_under_binder(y: &str, body: &Term, x: &str, v: &Term) -> (Ident, Term) {
    if y == x {
        // x is shadowed; the body is untouched.
        return (y.to_string(), body.clone());
    }
    let body_fv = free_vars(body);
    if !body_fv.contains(x) {
        return (y.to_string(), body.clone());
    }
    if free_vars(v).contains(y) {
        let mut avoid = free_vars(v);
        avoid.extend(body_fv);
        avoid.insert(x.to_string());
        let y2 = fresh_name(y, &avoid);
        let renamed = substitute(body, y, &var(y2.clone()));
        (y2, substitute(&renamed, x, v))
    } else {
        (y.to_string(), substitute(body, x, v))
    }
}

/// Equality up to consistent renaming of bound variables.
pub fn alpha_eq(t1: &Term, t2: &Term) -> bool {
    fn go(t1: &Term, t2: &Term, env1: &mut Vec<Ident>, env2: &mut Vec<Ident>) -> bool {
        match (t1, t2) {
            (Term::Var(x), Term::Var(y)) => {
                let p1 = env1.iter().rposition(|b| b == x);
                let p2 = env2.iter().rposition(|b| b == y);
                match (p1, p2) {
                    (Some(i), Some(j)) => i == j,
                    (None, None) => x == y,
                    _ => false,
                }
            }
            (Term::App(f1, a1), Term::App(f2, a2)) => {
                go(f1, f2, env1, env2) && go(a1, a2, env1, env2)
            }
            (Term::Lam(x1, d1, b1), Term::Lam(x2, d2, b2))
            | (Term::Pi(x1, d1, b1), Term::Pi(x2, d2, b2)) => {
                if !go(d1, d2, env1, env2) {
                    return false;
                }
                env1.push(x1.clone());
                env2.push(x2.clone());
                let r = go(b1, b2, env1, env2);
                env1.pop();
                env2.pop();
                r
            }
            (Term::Prop, Term::Prop) => true,
            (Term::Type(i), Term::Type(j)) => i == j,
            _ => false,
        }
    }
    go(t1, t2, &mut Vec::new(), &mut Vec::new())
}

/// One leftmost-outermost reduction step, or `None` if `t` is normal.
fn reduce_once(t: &Term) -> Option<Term> {
    match t {
        Term::App(f, a) => {
            if let Term::Lam(x, _dom, body) = f.as_ref() {
                return Some(substitute(body, x, a));
            }
            if let Some(f2) = reduce_once(f) {
                return Some(app(f2, (**a).clone()));
            }
            reduce_once(a).map(|a2| app((**f).clone(), a2))
        }
        Term::Lam(x, dom, body) => reduce_once(dom)
            .map(|d| lam(x.clone(), d, (**body).clone()))
            .or_else(|| reduce_once(body).map(|b| lam(x.clone(), (**dom).clone(), b))),
        Term::Pi(x, dom, cod) => reduce_once(dom)
            .map(|d| pi(x.clone(), d, (**cod).clone()))
            .or_else(|| reduce_once(cod).map(|c| pi(x.clone(), (**dom).clone(), c))),
        Term::Var(_) | Term::Prop | Term::Type(_) => None,
    }
}

/// Beta-normal form by normal-order reduction, bounded by `fuel` steps.
pub fn normalize(t: &Term, fuel: u64) -> Result<Term, TermError> {
    let mut current = t.clone();
    let mut remaining = fuel;
    while let Some(next) = reduce_once(&current) {
        if remaining == 0 {
            return Err(TermError::FuelExhausted { fuel });
        }
        remaining -= 1;
        current = next;
    }
    Ok(current)
}

/// Beta-equality, decided by comparing normal forms. Complete for
/// normalizing (in particular well-typed) inputs.
pub fn beta_eq(t1: &Term, t2: &Term, fuel: u64) -> Result<bool, TermError> {
    if alpha_eq(t1, t2) {
        return Ok(true);
    }
    Ok(alpha_eq(&normalize(t1, fuel)?, &normalize(t2, fuel)?))
}

// ---------------------------------------------------------------------------
// Logical symbols
// ---------------------------------------------------------------------------

/// Non-dependent function space `A -> B`: a product whose binder is fresh
/// for the codomain.
pub fn arrow(a: Term, b: Term) -> Term {
    let binder = fresh_name("_", &free_vars(&b));
    pi(binder, a, b)
}

/// `forall P : Prop, P`
pub fn bottom() -> Term {
    pi("P", Term::Prop, var("P"))
}

/// `A -> bottom`
pub fn neg(a: Term) -> Term {
    arrow(a, bottom())
}

fn fresh_prop_binder(parts: &[&Term]) -> Ident {
    let mut avoid = BTreeSet::new();
    for p in parts {
        avoid.extend(free_vars(p));
    }
    fresh_name("P", &avoid)
}

/// `forall P : Prop, (A -> B -> P) -> P`
pub fn and(a: Term, b: Term) -> Term {
    let p = fresh_prop_binder(&[&a, &b]);
    pi(
        p.clone(),
        Term::Prop,
        arrow(arrow(a, arrow(b, var(p.clone()))), var(p)),
    )
}

/// `forall P : Prop, (A -> P) -> (B -> P) -> P`
pub fn or(a: Term, b: Term) -> Term {
    let p = fresh_prop_binder(&[&a, &b]);
    pi(
        p.clone(),
        Term::Prop,
        arrow(
            arrow(a, var(p.clone())),
            arrow(arrow(b, var(p.clone())), var(p)),
        ),
    )
}

/// `forall P : Prop, (forall x : A, Q -> P) -> P`
pub fn exists(x: impl Into<Ident>, a: Term, q: Term) -> Term {
    let x = x.into();
    let mut avoid = free_vars(&a);
    avoid.extend(free_vars(&q));
    avoid.insert(x.clone());
    let p = fresh_name("P", &avoid);
    pi(
        p.clone(),
        Term::Prop,
        arrow(pi(x, a, arrow(q, var(p.clone()))), var(p)),
    )
}

/// `(A -> B) /\ (B -> A)`
pub fn iff(a: Term, b: Term) -> Term {
    and(arrow(a.clone(), b.clone()), arrow(b, a))
}

/// `forall Q : A -> Prop, Q x <-> Q y`
pub fn equality(a: Term, x: Term, y: Term) -> Term {
    let mut avoid = free_vars(&a);
    avoid.extend(free_vars(&x));
    avoid.extend(free_vars(&y));
    let q = fresh_name("Q", &avoid);
    pi(
        q.clone(),
        arrow(a, Term::Prop),
        iff(app(var(q.clone()), x), app(var(q), y)),
    )
}

/// The derived logical symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sugar {
    Arrow,
    Bottom,
    Neg,
    And,
    Or,
    Exists,
    Iff,
    Eq,
}

impl fmt::Display for Sugar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Sugar::Arrow => "arrow",
            Sugar::Bottom => "bottom",
            Sugar::Neg => "neg",
            Sugar::And => "and",
            Sugar::Or => "or",
            Sugar::Exists => "exists",
            Sugar::Iff => "iff",
            Sugar::Eq => "eq",
        };
        f.write_str(name)
    }
}

/// Argument to [`expand_sugar`]: either a term or a binder name
/// (`exists` takes one binder).
#[derive(Debug, Clone)]
pub enum SugarArg {
    Term(Term),
    Binder(Ident),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SugarError {
    #[error("{symbol} expects {expected}, got {got} argument(s)")]
    ArityMismatch {
        symbol: Sugar,
        expected: &'static str,
        got: usize,
    },
}

/// Expands one logical symbol applied to `args` into the kernel syntax.
pub fn expand_sugar(symbol: Sugar, args: &[SugarArg]) -> Result<Term, SugarError> {
    use SugarArg::{Binder, Term as T};
    let fail = |expected: &'static str| SugarError::ArityMismatch {
        symbol,
        expected,
        got: args.len(),
    };
    match (symbol, args) {
        (Sugar::Arrow, [T(a), T(b)]) => Ok(arrow(a.clone(), b.clone())),
        (Sugar::Arrow, _) => Err(fail("two terms")),
        (Sugar::Bottom, []) => Ok(bottom()),
        (Sugar::Bottom, _) => Err(fail("no arguments")),
        (Sugar::Neg, [T(a)]) => Ok(neg(a.clone())),
        (Sugar::Neg, _) => Err(fail("one term")),
        (Sugar::And, [T(a), T(b)]) => Ok(and(a.clone(), b.clone())),
        (Sugar::And, _) => Err(fail("two terms")),
        (Sugar::Or, [T(a), T(b)]) => Ok(or(a.clone(), b.clone())),
        (Sugar::Or, _) => Err(fail("two terms")),
        (Sugar::Exists, [Binder(x), T(a), T(q)]) => Ok(exists(x.clone(), a.clone(), q.clone())),
        (Sugar::Exists, _) => Err(fail("a binder and two terms")),
        (Sugar::Iff, [T(a), T(b)]) => Ok(iff(a.clone(), b.clone())),
        (Sugar::Iff, _) => Err(fail("two terms")),
        (Sugar::Eq, [T(a), T(x), T(y)]) => Ok(equality(a.clone(), x.clone(), y.clone())),
        (Sugar::Eq, _) => Err(fail("three terms")),
    }
}

// ---------------------------------------------------------------------------
// Contexts
// ---------------------------------------------------------------------------

/// An ordered telescope of named assumptions. Names are kept pairwise
/// distinct; later entries may mention earlier names.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Context {
    entries: Vec<(Ident, Term)>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Ident, &Term)> {
        self.entries.iter().map(|(n, t)| (n, t))
    }

    pub fn get(&self, i: usize) -> Option<(&Ident, &Term)> {
        self.entries.get(i).map(|(n, t)| (n, t))
    }

    pub fn lookup(&self, name: &str) -> Option<&Term> {
        self.position(name).map(|i| &self.entries[i].1)
    }

    /// Position of the entry named `name`. Names are unique, so at most
    /// one position matches.
    pub fn position(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|(n, _)| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.position(name).is_some()
    }

    /// The prefix of the first `len` entries.
    pub fn prefix(&self, len: usize) -> Context {
        Context {
            entries: self.entries[..len].to_vec(),
        }
    }

    /// Appends an entry, renaming it if the name is already taken, and
    /// returns the name actually used.
    pub fn push_fresh(&mut self, name: impl Into<Ident>, ty: Term) -> Ident {
        let name = name.into();
        let taken: BTreeSet<Ident> = self.entries.iter().map(|(n, _)| n.clone()).collect();
        let fresh = fresh_name(&name, &taken);
        self.entries.push((fresh.clone(), ty));
        fresh
    }

    /// Appends an entry, failing if the name is already present.
    pub fn try_push(&mut self, name: impl Into<Ident>, ty: Term) -> Result<(), Ident> {
        let name = name.into();
        if self.contains(&name) {
            return Err(name);
        }
        self.entries.push((name, ty));
        Ok(())
    }

    /// New context extending this one by `(name : ty)`, freshening the
    /// name if needed. Returns the extended context and the name used.
    pub fn extended(&self, name: impl Into<Ident>, ty: Term) -> (Context, Ident) {
        let mut ctx = self.clone();
        let used = ctx.push_fresh(name, ty);
        (ctx, used)
    }
}

impl FromIterator<(Ident, Term)> for Context {
    /// Builds a context, silently freshening duplicate names.
    fn from_iter<I: IntoIterator<Item = (Ident, Term)>>(iter: I) -> Self {
        let mut ctx = Context::new();
        for (n, t) in iter {
            ctx.push_fresh(n, t);
        }
        ctx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitute_unaffected_variable() {
        assert_eq!(substitute(&var("y"), "x", &Term::Prop), var("y"));
    }

    #[test]
    fn substitute_identity_clause() {
        assert_eq!(substitute(&var("x"), "x", &Term::Prop), Term::Prop);
    }

    #[test]
    fn substitute_renames_to_avoid_capture() {
        // (fun y : Prop => x)[x \ y]  must not capture the substituted y.
        let t = lam("y", Term::Prop, var("x"));
        let r = substitute(&t, "x", &var("y"));
        match &r {
            Term::Lam(binder, _, body) => {
                assert_ne!(binder, "y");
                assert_eq!(**body, var("y"));
            }
            other => panic!("expected a lambda, got {other:?}"),
        }
        assert!(alpha_eq(&r, &lam("z", Term::Prop, var("y"))));
    }

    #[test]
    fn free_vars_examples() {
        assert_eq!(free_vars(&var("x")), BTreeSet::from(["x".to_string()]));
        assert_eq!(
            free_vars(&lam("x", var("a"), var("x"))),
            BTreeSet::from(["a".to_string()])
        );
        assert_eq!(
            free_vars(&pi("x", var("a"), var("b"))),
            BTreeSet::from(["a".to_string(), "b".to_string()])
        );
    }

    #[test]
    fn alpha_eq_examples() {
        assert!(alpha_eq(
            &lam("x", Term::Prop, var("x")),
            &lam("y", Term::Prop, var("y"))
        ));
        assert!(!alpha_eq(&var("x"), &var("y")));
        assert!(!alpha_eq(
            &pi("x", Term::Prop, var("x")),
            &pi("y", Term::Prop, Term::Prop)
        ));
    }

    #[test]
    fn normalize_beta_step() {
        let t = app(lam("x", Term::Prop, var("x")), Term::Prop);
        assert_eq!(normalize(&t, 100).unwrap(), Term::Prop);
        assert_eq!(normalize(&Term::Prop, 1).unwrap(), Term::Prop);
    }

    #[test]
    fn normalize_id_applied_to_bottom() {
        let t = app(lam("P", Term::Prop, var("P")), bottom());
        let nf = normalize(&t, 100).unwrap();
        assert!(alpha_eq(&nf, &pi("Q", Term::Prop, var("Q"))));
    }

    #[test]
    fn normalize_fuel_exhaustion_on_omega() {
        // (fun x : Prop => x x) (fun x : Prop => x x) loops forever.
        let w = lam("x", Term::Prop, app(var("x"), var("x")));
        let omega = app(w.clone(), w);
        assert_eq!(
            normalize(&omega, 50),
            Err(TermError::FuelExhausted { fuel: 50 })
        );
    }

    #[test]
    fn beta_eq_examples() {
        let t = app(lam("x", Term::Prop, var("x")), var("z"));
        assert!(beta_eq(&t, &var("z"), 100).unwrap());
        assert!(!beta_eq(&Term::Prop, &Term::Type(0), 100).unwrap());
        let r = pi("P", Term::Prop, arrow(var("P"), var("P")));
        assert!(beta_eq(&r, &r, 100).unwrap());
    }

    #[test]
    fn sugar_bottom_and_neg() {
        assert!(alpha_eq(&bottom(), &pi("P", Term::Prop, var("P"))));
        let a = var("A");
        assert!(alpha_eq(&neg(a.clone()), &pi("h", a, bottom())));
    }

    #[test]
    fn sugar_eq_expansion() {
        let e = equality(var("A"), var("x"), var("y"));
        let expected = pi(
            "Q",
            arrow(var("A"), Term::Prop),
            iff(app(var("Q"), var("x")), app(var("Q"), var("y"))),
        );
        assert!(alpha_eq(&e, &expected));
    }

    #[test]
    fn sugar_binder_avoids_free_vars() {
        // or(P, Q) with P free must not capture it with its own binder.
        let t = or(var("P"), var("Q"));
        if let Term::Pi(binder, _, _) = &t {
            assert_ne!(binder, "P");
        } else {
            panic!("or() must expand to a product");
        }
    }

    #[test]
    fn expand_sugar_arity_mismatch() {
        let err = expand_sugar(Sugar::Neg, &[]).unwrap_err();
        assert!(matches!(err, SugarError::ArityMismatch { got: 0, .. }));
    }

    #[test]
    fn context_freshens_duplicates() {
        let mut ctx = Context::new();
        assert_eq!(ctx.push_fresh("P", Term::Prop), "P");
        let renamed = ctx.push_fresh("P", Term::Prop);
        assert_ne!(renamed, "P");
        assert_eq!(ctx.len(), 2);
    }

    #[test]
    fn substitution_is_identity_when_var_absent() {
        let t = pi("x", Term::Prop, app(var("f"), var("x")));
        let r = substitute(&t, "g", &Term::Prop);
        assert!(alpha_eq(&r, &t));
    }
}
