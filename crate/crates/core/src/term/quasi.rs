use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::FiniteAlgebra;

use super::{CompiledTerm, DefiningPair, Equation, EvalError, Quasiidentity, Term};

/// Every assignment of `k` variables into `{0..n-1}`, in mixed-radix order
/// with the first variable most significant (so lexicographic order).
#[derive(Debug, Clone)]
pub struct Assignments {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Assignments {
    pub fn new(n: usize, k: usize) -> Self {
        Assignments {
            n,
            current: (n > 0 || k == 0).then(|| vec![0; k]),
        }
    }
}

impl Iterator for Assignments {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked above");
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.n {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum QuasiResult {
    Holds,
    Fails { witness: BTreeMap<String, usize> },
}

impl QuasiResult {
    pub fn holds(&self) -> bool {
        matches!(self, QuasiResult::Holds)
    }
}

/// `¬□x ∧ ¬□¬x ≈ 1 ⇒ 0 ≈ 1`
pub fn rho() -> Quasiidentity {
    let x = Term::var("x");
    let premise = Term::meet(
        Term::neg(Term::nec(x.clone())),
        Term::neg(Term::nec(Term::neg(x))),
    );
    Quasiidentity {
        premises: vec![Equation::new(premise, Term::Const1)],
        conclusion: Equation::new(Term::Const0, Term::Const1),
    }
}

struct CompiledEq(CompiledTerm, CompiledTerm);

impl CompiledEq {
    fn new(eq: &Equation, vars: &[String], a: &FiniteAlgebra) -> Result<Self, EvalError> {
        Ok(CompiledEq(
            CompiledTerm::compile(&eq.lhs, vars, a.class())?,
            CompiledTerm::compile(&eq.rhs, vars, a.class())?,
        ))
    }

    fn holds(&self, a: &FiniteAlgebra, env: &[usize], stack: &mut Vec<usize>) -> bool {
        self.0.eval_with(a, env, stack) == self.1.eval_with(a, env, stack)
    }
}

fn named(vars: &[String], env: &[usize]) -> BTreeMap<String, usize> {
    vars.iter().cloned().zip(env.iter().copied()).collect()
}

/// Fails iff some assignment makes every premise true while the conclusion's
/// sides differ; the witness is the first such assignment, with variables
/// ordered by first appearance.
pub fn check_quasiidentity(a: &FiniteAlgebra, q: &Quasiidentity) -> Result<QuasiResult, EvalError> {
    let vars = q.variables();
    let premises = q
        .premises
        .iter()
        .map(|e| CompiledEq::new(e, &vars, a))
        .collect::<Result<Vec<_>, _>>()?;
    let conclusion = CompiledEq::new(&q.conclusion, &vars, a)?;
    let mut stack = Vec::new();
    for env in Assignments::new(a.size(), vars.len()) {
        if premises.iter().all(|p| p.holds(a, &env, &mut stack)) && !conclusion.holds(a, &env, &mut stack) {
            return Ok(QuasiResult::Fails {
                witness: named(&vars, &env),
            });
        }
    }
    Ok(QuasiResult::Holds)
}

/// Lexicographically first assignment of the declared variables satisfying
/// every atom.
pub fn satisfy_atoms(a: &FiniteAlgebra, d: &DefiningPair) -> Result<Option<BTreeMap<String, usize>>, EvalError> {
    let vars = d.vars();
    let atoms = d
        .atoms()
        .iter()
        .map(|e| CompiledEq::new(e, vars, a))
        .collect::<Result<Vec<_>, _>>()?;
    let mut stack = Vec::new();
    Ok(Assignments::new(a.size(), vars.len())
        .find(|env| atoms.iter().all(|t| t.holds(a, env, &mut stack)))
        .map(|env| named(vars, &env)))
}
