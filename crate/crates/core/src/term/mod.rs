//! Terms over the signature, defining pairs and quasiidentities.
//!
//! Concrete syntax, loosest binding first: `->` and `-<` (right-associative,
//! same level), `|`, `&`, then the prefix operators `!` (¬), `~` (∼), `+` (⌐),
//! `[]` (□) and `<>` (◇). Atoms are `0`, `1`, identifiers and parenthesised terms.

mod eval;
mod parse;
mod quasi;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use eval::{eval_term, CompiledTerm, EvalError};
pub use parse::{parse_term, ParseError};
pub use quasi::{check_quasiidentity, rho, satisfy_atoms, Assignments, QuasiResult};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Const0,
    Const1,
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Impl(Box<Term>, Box<Term>),
    Dimpl(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Invol(Box<Term>),
    Dualneg(Box<Term>),
    Box(Box<Term>),
    Diamond(Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Term, b: Term) -> Term {
        Term::Impl(Box::new(a), Box::new(b))
    }

    pub fn dimpl(a: Term, b: Term) -> Term {
        Term::Dimpl(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Term) -> Term {
        Term::Neg(Box::new(a))
    }

    pub fn invol(a: Term) -> Term {
        Term::Invol(Box::new(a))
    }

    pub fn dualneg(a: Term) -> Term {
        Term::Dualneg(Box::new(a))
    }

    pub fn nec(a: Term) -> Term {
        Term::Box(Box::new(a))
    }

    pub fn poss(a: Term) -> Term {
        Term::Diamond(Box::new(a))
    }

    /// `(a → b) ∧ (b → a)`
    pub fn iff(a: Term, b: Term) -> Term {
        Term::meet(Term::imp(a.clone(), b.clone()), Term::imp(b, a))
    }

    /// Variables in order of first appearance, left to right.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Const0 | Term::Const1 => {}
            Term::Meet(a, b) | Term::Join(a, b) | Term::Impl(a, b) | Term::Dimpl(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Neg(a) | Term::Invol(a) | Term::Dualneg(a) | Term::Box(a) | Term::Diamond(a) => {
                a.collect_vars(out)
            }
        }
    }

    /// Replaces variables by terms; unmapped variables are kept.
    pub fn substitute(&self, f: &dyn Fn(&str) -> Option<Term>) -> Term {
        let s = |t: &Term| Box::new(t.substitute(f));
        match self {
            Term::Var(v) => f(v).unwrap_or_else(|| self.clone()),
            Term::Const0 | Term::Const1 => self.clone(),
            Term::Meet(a, b) => Term::Meet(s(a), s(b)),
            Term::Join(a, b) => Term::Join(s(a), s(b)),
            Term::Impl(a, b) => Term::Impl(s(a), s(b)),
            Term::Dimpl(a, b) => Term::Dimpl(s(a), s(b)),
            Term::Neg(a) => Term::Neg(s(a)),
            Term::Invol(a) => Term::Invol(s(a)),
            Term::Dualneg(a) => Term::Dualneg(s(a)),
            Term::Box(a) => Term::Box(s(a)),
            Term::Diamond(a) => Term::Diamond(s(a)),
        }
    }

    fn level(&self) -> u8 {
        match self {
            Term::Impl(..) | Term::Dimpl(..) => 0,
            Term::Join(..) => 1,
            Term::Meet(..) => 2,
            Term::Neg(_) | Term::Invol(_) | Term::Dualneg(_) | Term::Box(_) | Term::Diamond(_) => 3,
            Term::Var(_) | Term::Const0 | Term::Const1 => 4,
        }
    }
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, t: &Term, min: u8| {
            if t.level() < min {
                write!(f, "({t})")
            } else {
                write!(f, "{t}")
            }
        };
        let infix = |f: &mut fmt::Formatter<'_>, a: &Term, op: &str, b: &Term, lhs: u8, rhs: u8| {
            wrap(f, a, lhs)?;
            write!(f, " {op} ")?;
            wrap(f, b, rhs)
        };
        let prefix = |f: &mut fmt::Formatter<'_>, op: &str, a: &Term| {
            write!(f, "{op}")?;
            wrap(f, a, 3)
        };
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Const0 => write!(f, "0"),
            Term::Const1 => write!(f, "1"),
            Term::Impl(a, b) => infix(f, a, "->", b, 1, 0),
            Term::Dimpl(a, b) => infix(f, a, "-<", b, 1, 0),
            Term::Join(a, b) => infix(f, a, "|", b, 1, 2),
            Term::Meet(a, b) => infix(f, a, "&", b, 2, 3),
            Term::Neg(a) => prefix(f, "!", a),
            Term::Invol(a) => prefix(f, "~", a),
            Term::Dualneg(a) => prefix(f, "+", a),
            Term::Box(a) => prefix(f, "[]", a),
            Term::Diamond(a) => prefix(f, "<>", a),
        }
    }
}

impl Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let src = String::deserialize(d)?;
        parse_term(&src).map_err(serde::de::Error::custom)
    }
}

/// An equation `lhs ≈ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    pub fn variables(&self) -> Vec<String> {
        let mut vars = self.lhs.variables();
        for v in self.rhs.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        vars
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("variable `{0}` is not declared")]
pub struct UndeclaredVariable(pub String);

/// A finite presentation: generators `X` and relations `Δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPair")]
pub struct DefiningPair {
    vars: Vec<String>,
    atoms: Vec<Equation>,
}

#[derive(Deserialize)]
struct RawPair {
    vars: Vec<String>,
    atoms: Vec<Equation>,
}

impl TryFrom<RawPair> for DefiningPair {
    type Error = UndeclaredVariable;

    fn try_from(raw: RawPair) -> Result<Self, Self::Error> {
        DefiningPair::new(raw.vars, raw.atoms)
    }
}

impl DefiningPair {
    /// Checks that every variable of `atoms` is declared in `vars`.
    pub fn new(vars: Vec<String>, atoms: Vec<Equation>) -> Result<Self, UndeclaredVariable> {
        for atom in &atoms {
            if let Some(v) = atom.variables().into_iter().find(|v| !vars.contains(v)) {
                return Err(UndeclaredVariable(v));
            }
        }
        Ok(DefiningPair { vars, atoms })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn atoms(&self) -> &[Equation] {
        &self.atoms
    }
}

/// `premises ⇒ conclusion`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quasiidentity {
    pub premises: Vec<Equation>,
    pub conclusion: Equation,
}

impl Quasiidentity {
    /// Variables in order of first appearance, premises first.
    pub fn variables(&self) -> Vec<String> {
        let mut vars = Vec::new();
        for eq in self.premises.iter().chain(std::iter::once(&self.conclusion)) {
            for v in eq.variables() {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
        vars
    }
}

impl fmt::Display for Quasiidentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let premises: Vec<String> = self.premises.iter().map(|e| e.to_string()).collect();
        write!(f, "{} => {}", premises.join(", "), self.conclusion)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printer_uses_minimal_parentheses() {
        let cases = [
            "[]x & []!x",
            "x -> y -> z",
            "(x -> y) -> z",
            "x -< y | 1",
            "!(x & y) | ~+z",
            "(x | y) & z",
            "<>[]x",
            "x | y | z",
            "x | (y | z)",
        ];
        for src in cases {
            assert_eq!(parse_term(src).unwrap().to_string(), src);
        }
    }

    #[test]
    fn variables_in_order() {
        let t = parse_term("y & (x -> y) | z").unwrap();
        assert_eq!(t.variables(), ["y", "x", "z"]);
    }

    #[test]
    fn defining_pair_checks_containment() {
        let atom = Equation::new(Term::var("y"), Term::Const1);
        assert_eq!(
            DefiningPair::new(vec!["x".into()], vec![atom.clone()]),
            Err(UndeclaredVariable("y".into()))
        );
        assert!(DefiningPair::new(vec!["x".into(), "y".into()], vec![atom]).is_ok());
    }

    #[test]
    fn presentation_json() {
        let d: DefiningPair =
            serde_json::from_str(r#"{"vars": ["x"], "atoms": [{"lhs": "[]x", "rhs": "x"}]}"#).unwrap();
        assert_eq!(d.atoms()[0].lhs, Term::nec(Term::var("x")));
        let bad = serde_json::from_str::<DefiningPair>(r#"{"vars": [], "atoms": [{"lhs": "x", "rhs": "1"}]}"#);
        assert!(bad.is_err());
    }
}
