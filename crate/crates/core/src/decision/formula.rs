use std::fmt;

use serde::Serialize;

use crate::algebra::{FiniteAlgebra, Operation};
use crate::term::{CompiledTerm, EvalError, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantifier {
    Exists,
    Forall,
}

/// Quantifier-free part of a prenex formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Matrix {
    Eq(Term, Term),
    Not(Box<Matrix>),
    And(Vec<Matrix>),
    Or(Vec<Matrix>),
}

impl Matrix {
    fn variables(&self, out: &mut Vec<String>) {
        match self {
            Matrix::Eq(l, r) => {
                for v in l.variables().into_iter().chain(r.variables()) {
                    if !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
            Matrix::Not(m) => m.variables(out),
            Matrix::And(ms) | Matrix::Or(ms) => ms.iter().for_each(|m| m.variables(out)),
        }
    }

    /// Applies `f` to both sides of every equation, negated ones included.
    pub fn map_equations(&self, f: &dyn Fn(&Term) -> Term) -> Matrix {
        match self {
            Matrix::Eq(l, r) => Matrix::Eq(f(l), f(r)),
            Matrix::Not(m) => Matrix::Not(Box::new(m.map_equations(f))),
            Matrix::And(ms) => Matrix::And(ms.iter().map(|m| m.map_equations(f)).collect()),
            Matrix::Or(ms) => Matrix::Or(ms.iter().map(|m| m.map_equations(f)).collect()),
        }
    }

    /// Every equation, in order.
    pub fn equations(&self) -> Vec<(&Term, &Term)> {
        let mut out = Vec::new();
        self.collect_equations(&mut out);
        out
    }

    fn collect_equations<'a>(&'a self, out: &mut Vec<(&'a Term, &'a Term)>) {
        match self {
            Matrix::Eq(l, r) => out.push((l, r)),
            Matrix::Not(m) => m.collect_equations(out),
            Matrix::And(ms) | Matrix::Or(ms) => ms.iter().for_each(|m| m.collect_equations(out)),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, ms: &[Matrix], sep: &str, empty: &str| {
            if ms.is_empty() {
                return write!(f, "{empty}");
            }
            write!(f, "(")?;
            for (i, m) in ms.iter().enumerate() {
                if i > 0 {
                    write!(f, " {sep} ")?;
                }
                write!(f, "{m}")?;
            }
            write!(f, ")")
        };
        match self {
            Matrix::Eq(l, r) => write!(f, "{l} = {r}"),
            Matrix::Not(m) => write!(f, "not ({m})"),
            Matrix::And(ms) => list(f, ms, "and", "true"),
            Matrix::Or(ms) => list(f, ms, "or", "false"),
        }
    }
}

/// A closed prenex formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstOrderFormula {
    pub prefix: Vec<(Quantifier, String)>,
    pub matrix: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("variable `{0}` is not quantified")]
    Free(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl fmt::Display for FirstOrderFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, v) in &self.prefix {
            match q {
                Quantifier::Exists => write!(f, "exists {v}. ")?,
                Quantifier::Forall => write!(f, "forall {v}. ")?,
            }
        }
        write!(f, "{}", self.matrix)
    }
}

impl Serialize for FirstOrderFormula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn z(i: usize) -> Term {
    Term::var(format!("z{i}"))
}

/// `∃z₀…∃zₙ₋₁ ∀z δ` where `δ` records every operation-table fact of `m`, the
/// constants `0 = z₀` and `1 = zₙ₋₁`, the inequalities `zᵢ ≠ zⱼ` and the
/// covering clause `z = z₀ ∨ … ∨ z = zₙ₋₁`. It holds in `C` iff `C ≅ m`.
pub fn diagram_formula(m: &FiniteAlgebra) -> FirstOrderFormula {
    let n = m.size();
    let mut facts = vec![
        Matrix::Eq(Term::Const0, z(m.bottom())),
        Matrix::Eq(Term::Const1, z(m.top())),
    ];
    for op in m.operations() {
        for a in m.elements() {
            if op.arity() == 1 {
                let lhs = match op {
                    Operation::Box => Term::nec(z(a)),
                    Operation::Invol => Term::invol(z(a)),
                    Operation::Dualneg => Term::dualneg(z(a)),
                    _ => unreachable!("unary operations"),
                };
                facts.push(Matrix::Eq(lhs, z(m.apply(op, a, 0))));
                continue;
            }
            for b in m.elements() {
                let lhs = match op {
                    Operation::Meet => Term::meet(z(a), z(b)),
                    Operation::Join => Term::join(z(a), z(b)),
                    Operation::Imp => Term::imp(z(a), z(b)),
                    Operation::Dimpl => Term::dimpl(z(a), z(b)),
                    _ => unreachable!("binary operations"),
                };
                facts.push(Matrix::Eq(lhs, z(m.apply(op, a, b))));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            facts.push(Matrix::Not(Box::new(Matrix::Eq(z(i), z(j)))));
        }
    }
    let point = Term::var("z");
    facts.push(Matrix::Or((0..n).map(|i| Matrix::Eq(point.clone(), z(i))).collect()));
    let mut prefix: Vec<(Quantifier, String)> = (0..n).map(|i| (Quantifier::Exists, format!("z{i}"))).collect();
    prefix.push((Quantifier::Forall, "z".into()));
    FirstOrderFormula {
        prefix,
        matrix: Matrix::And(facts),
    }
}

/// The discriminator term `t(x, y, r) = (□(x↔y) ∧ r) ∨ (¬□(x↔y) ∧ x)`.
pub fn discriminator_term(x: Term, y: Term, r: Term) -> Term {
    let test = Term::nec(Term::iff(x.clone(), y));
    Term::join(Term::meet(test.clone(), r), Term::meet(Term::neg(test), x))
}

/// `∃x ∃y βᵗ`, where `βᵗ` is the diagram formula of `m` with every equation
/// `r = s` replaced by `t(x, y, r) = t(x, y, s)`.
pub fn diagram_alpha(m: &FiniteAlgebra) -> FirstOrderFormula {
    let beta = diagram_formula(m);
    let (x, y) = (Term::var("x"), Term::var("y"));
    let matrix = beta
        .matrix
        .map_equations(&|r| discriminator_term(x.clone(), y.clone(), r.clone()));
    let mut prefix = vec![(Quantifier::Exists, "x".to_string()), (Quantifier::Exists, "y".to_string())];
    prefix.extend(beta.prefix);
    FirstOrderFormula { prefix, matrix }
}

enum Compiled {
    Eq(CompiledTerm, CompiledTerm),
    Not(Box<Compiled>),
    And(Vec<Compiled>),
    Or(Vec<Compiled>),
}

impl Compiled {
    fn new(m: &Matrix, vars: &[String], a: &FiniteAlgebra) -> Result<Self, EvalError> {
        Ok(match m {
            Matrix::Eq(l, r) => Compiled::Eq(
                CompiledTerm::compile(l, vars, a.class())?,
                CompiledTerm::compile(r, vars, a.class())?,
            ),
            Matrix::Not(m) => Compiled::Not(Box::new(Compiled::new(m, vars, a)?)),
            Matrix::And(ms) => Compiled::And(ms.iter().map(|m| Compiled::new(m, vars, a)).collect::<Result<_, _>>()?),
            Matrix::Or(ms) => Compiled::Or(ms.iter().map(|m| Compiled::new(m, vars, a)).collect::<Result<_, _>>()?),
        })
    }

    fn eval(&self, a: &FiniteAlgebra, env: &[usize], stack: &mut Vec<usize>) -> bool {
        match self {
            Compiled::Eq(l, r) => l.eval_with(a, env, stack) == r.eval_with(a, env, stack),
            Compiled::Not(m) => !m.eval(a, env, stack),
            Compiled::And(ms) => ms.iter().all(|m| m.eval(a, env, stack)),
            Compiled::Or(ms) => ms.iter().any(|m| m.eval(a, env, stack)),
        }
    }
}

struct Evaluator<'a> {
    alg: &'a FiniteAlgebra,
    quantifiers: Vec<Quantifier>,
    /// Top-level conjuncts grouped by the deepest prefix position they use;
    /// a false conjunct falsifies every extension of the current assignment.
    checks: Vec<Vec<Compiled>>,
}

impl Evaluator<'_> {
    fn run(&self, depth: usize, env: &mut Vec<usize>, stack: &mut Vec<usize>) -> bool {
        if !self.checks[depth].iter().all(|c| c.eval(self.alg, env, stack)) {
            return false;
        }
        if depth == self.quantifiers.len() {
            return true;
        }
        let mut branch = |v: usize, env: &mut Vec<usize>| {
            env.push(v);
            let r = self.run(depth + 1, env, stack);
            env.pop();
            r
        };
        match self.quantifiers[depth] {
            Quantifier::Exists => self.alg.elements().any(|v| branch(v, env)),
            Quantifier::Forall => self.alg.elements().all(|v| branch(v, env)),
        }
    }
}

/// Brute-force truth value of a closed formula in `a`.
pub fn eval_formula(a: &FiniteAlgebra, phi: &FirstOrderFormula) -> Result<bool, FormulaError> {
    let vars: Vec<String> = phi.prefix.iter().map(|(_, v)| v.clone()).collect();
    let mut used = Vec::new();
    phi.matrix.variables(&mut used);
    if let Some(v) = used.into_iter().find(|v| !vars.contains(v)) {
        return Err(FormulaError::Free(v));
    }
    let conjuncts: Vec<&Matrix> = match &phi.matrix {
        Matrix::And(ms) => ms.iter().collect(),
        m => vec![m],
    };
    let mut checks: Vec<Vec<Compiled>> = (0..=vars.len()).map(|_| Vec::new()).collect();
    for c in conjuncts {
        let mut cv = Vec::new();
        c.variables(&mut cv);
        // Later bindings shadow earlier ones of the same name.
        let depth = cv
            .iter()
            .map(|v| vars.iter().rposition(|w| w == v).expect("checked above") + 1)
            .max()
            .unwrap_or(0);
        checks[depth].push(Compiled::new(c, &vars, a)?);
    }
    let evaluator = Evaluator {
        alg: a,
        quantifiers: phi.prefix.iter().map(|(q, _)| *q).collect(),
        checks,
    };
    Ok(evaluator.run(0, &mut Vec::with_capacity(vars.len()), &mut Vec::new()))
}

/// `eval_formula` for α.
pub fn eval_alpha(a: &FiniteAlgebra, alpha: &FirstOrderFormula) -> Result<bool, FormulaError> {
    eval_formula(a, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures;
    use crate::decision::two_algebra;
    use crate::algebra::VarietyClass;

    #[test]
    fn alpha_shape_for_two() {
        let alpha = diagram_alpha(&fixtures::two_ws5());
        let names: Vec<&str> = alpha.prefix.iter().map(|(_, v)| v.as_str()).collect();
        assert_eq!(names, ["x", "y", "z0", "z1", "z"]);
        assert_eq!(alpha.prefix[4].0, Quantifier::Forall);
        assert!(alpha.prefix[..4].iter().all(|(q, _)| *q == Quantifier::Exists));
        let t = |r: Term| discriminator_term(Term::var("x"), Term::var("y"), r);
        let Matrix::And(parts) = &alpha.matrix else { panic!("conjunction") };
        assert!(parts.contains(&Matrix::Eq(t(Term::meet(z(0), z(1))), t(z(0)))));
        assert!(parts.contains(&Matrix::Not(Box::new(Matrix::Eq(t(z(0)), t(z(1)))))));
        assert!(parts.contains(&Matrix::Or(vec![
            Matrix::Eq(t(Term::var("z")), t(z(0))),
            Matrix::Eq(t(Term::var("z")), t(z(1))),
        ])));
    }

    #[test]
    fn alpha_examples() {
        let alpha = diagram_alpha(&fixtures::two_ws5());
        assert!(eval_alpha(&fixtures::b4_prod(), &alpha).unwrap());
        assert!(!eval_alpha(&fixtures::b4_disc(), &alpha).unwrap());
        assert!(eval_alpha(&fixtures::two_ws5(), &alpha).unwrap());
        assert!(!eval_alpha(&fixtures::c3_simple(), &alpha).unwrap());
    }

    #[test]
    fn diagram_recognises_two() {
        let beta = diagram_formula(&fixtures::two_ws5());
        assert!(eval_formula(&fixtures::two_ws5(), &beta).unwrap());
        assert!(!eval_formula(&fixtures::b4_prod(), &beta).unwrap());
        let heyting = two_algebra(VarietyClass::Heyting);
        let beta = diagram_formula(&heyting);
        assert!(eval_formula(&heyting, &beta).unwrap());
        assert!(!eval_formula(&fixtures::chain(3, VarietyClass::Heyting), &beta).unwrap());
    }

    #[test]
    fn quantifier_semantics() {
        let two = fixtures::two_ws5();
        let x = Term::var("x");
        let phi = |q| FirstOrderFormula {
            prefix: vec![(q, "x".into())],
            matrix: Matrix::Eq(Term::nec(x.clone()), x.clone()),
        };
        assert!(eval_formula(&two, &phi(Quantifier::Forall)).unwrap());
        let c3 = fixtures::c3_simple();
        assert!(!eval_formula(&c3, &phi(Quantifier::Forall)).unwrap());
        assert!(eval_formula(&c3, &phi(Quantifier::Exists)).unwrap());
        let free = FirstOrderFormula {
            prefix: vec![],
            matrix: Matrix::Eq(x.clone(), x),
        };
        assert!(matches!(eval_formula(&two, &free), Err(FormulaError::Free(_))));
    }
}
