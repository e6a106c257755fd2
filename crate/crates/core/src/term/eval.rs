use std::collections::BTreeMap;

use crate::algebra::{FiniteAlgebra, Operation, VarietyClass};

use super::Term;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("variable `{0}` is not bound")]
    Unbound(String),
    #[error("operation `{op}` is not available in class {class}")]
    Unavailable { op: &'static str, class: VarietyClass },
    #[error("value {value} of `{var}` is outside the algebra")]
    OutOfRange { var: String, value: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Instr {
    Slot(usize),
    Zero,
    One,
    Op(Operation),
    Neg,
    Diamond,
}

/// A term compiled against a class and a fixed variable order, evaluated on a
/// stack without further checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledTerm {
    code: Vec<Instr>,
    slots: usize,
}

impl CompiledTerm {
    /// Fails if a variable is missing from `vars` or an operation is not in
    /// the class.
    pub fn compile(t: &Term, vars: &[String], class: VarietyClass) -> Result<Self, EvalError> {
        let mut code = Vec::new();
        emit(t, vars, class, &mut code)?;
        Ok(CompiledTerm {
            code,
            slots: vars.len(),
        })
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    /// Evaluates with `env[i]` bound to the `i`-th variable. `stack` is
    /// scratch space reused across calls.
    pub fn eval_with(&self, a: &FiniteAlgebra, env: &[usize], stack: &mut Vec<usize>) -> usize {
        stack.clear();
        for &ins in &self.code {
            let v = match ins {
                Instr::Slot(i) => env[i],
                Instr::Zero => a.bottom(),
                Instr::One => a.top(),
                Instr::Neg => {
                    let x = stack.pop().expect("operand");
                    a.neg(x)
                }
                Instr::Diamond => {
                    let x = stack.pop().expect("operand");
                    a.poss(x)
                }
                Instr::Op(op) if op.arity() == 1 => {
                    let x = stack.pop().expect("operand");
                    a.apply(op, x, 0)
                }
                Instr::Op(op) => {
                    let y = stack.pop().expect("operand");
                    let x = stack.pop().expect("operand");
                    a.apply(op, x, y)
                }
            };
            stack.push(v);
        }
        stack.pop().expect("term has a value")
    }

    pub fn eval(&self, a: &FiniteAlgebra, env: &[usize]) -> usize {
        self.eval_with(a, env, &mut Vec::with_capacity(self.code.len()))
    }
}

fn require(available: bool, op: &'static str, class: VarietyClass) -> Result<(), EvalError> {
    if available {
        Ok(())
    } else {
        Err(EvalError::Unavailable { op, class })
    }
}

fn emit(t: &Term, vars: &[String], class: VarietyClass, code: &mut Vec<Instr>) -> Result<(), EvalError> {
    let bin = |a: &Term, b: &Term, ins: Instr, code: &mut Vec<Instr>| -> Result<(), EvalError> {
        emit(a, vars, class, code)?;
        emit(b, vars, class, code)?;
        code.push(ins);
        Ok(())
    };
    let un = |a: &Term, ins: Instr, code: &mut Vec<Instr>| -> Result<(), EvalError> {
        emit(a, vars, class, code)?;
        code.push(ins);
        Ok(())
    };
    match t {
        Term::Var(v) => {
            let slot = vars
                .iter()
                .position(|w| w == v)
                .ok_or_else(|| EvalError::Unbound(v.clone()))?;
            code.push(Instr::Slot(slot));
            Ok(())
        }
        Term::Const0 => {
            code.push(Instr::Zero);
            Ok(())
        }
        Term::Const1 => {
            code.push(Instr::One);
            Ok(())
        }
        Term::Meet(a, b) => bin(a, b, Instr::Op(Operation::Meet), code),
        Term::Join(a, b) => bin(a, b, Instr::Op(Operation::Join), code),
        Term::Impl(a, b) => bin(a, b, Instr::Op(Operation::Imp), code),
        Term::Dimpl(a, b) => {
            require(class.has_dimpl(), "-<", class)?;
            bin(a, b, Instr::Op(Operation::Dimpl), code)
        }
        Term::Neg(a) => un(a, Instr::Neg, code),
        Term::Invol(a) => {
            require(class.has_invol(), "~", class)?;
            un(a, Instr::Op(Operation::Invol), code)
        }
        Term::Dualneg(a) => {
            require(class.has_dualneg(), "+", class)?;
            un(a, Instr::Op(Operation::Dualneg), code)
        }
        Term::Box(a) => {
            require(class.has_box(), "[]", class)?;
            un(a, Instr::Op(Operation::Box), code)
        }
        Term::Diamond(a) => {
            require(class.has_box(), "<>", class)?;
            un(a, Instr::Diamond, code)
        }
    }
}

/// Value of `t` in `a` under `env`.
pub fn eval_term(a: &FiniteAlgebra, t: &Term, env: &BTreeMap<String, usize>) -> Result<usize, EvalError> {
    let vars = t.variables();
    let mut values = Vec::with_capacity(vars.len());
    for v in &vars {
        let value = *env.get(v).ok_or_else(|| EvalError::Unbound(v.clone()))?;
        if value >= a.size() {
            return Err(EvalError::OutOfRange { var: v.clone(), value });
        }
        values.push(value);
    }
    Ok(CompiledTerm::compile(t, &vars, a.class())?.eval(a, &values))
}

#[cfg(test)]
mod tests {
    use super::super::parse_term;
    use super::*;
    use crate::algebra::fixtures;

    fn env(pairs: &[(&str, usize)]) -> BTreeMap<String, usize> {
        pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
    }

    fn eval(a: &FiniteAlgebra, src: &str, pairs: &[(&str, usize)]) -> Result<usize, EvalError> {
        eval_term(a, &parse_term(src).unwrap(), &env(pairs))
    }

    #[test]
    fn examples() {
        assert_eq!(eval(&fixtures::c3_simple(), "[]x", &[("x", 1)]), Ok(0));
        assert_eq!(eval(&fixtures::two_ws5(), "<>x", &[("x", 1)]), Ok(1));
        assert_eq!(eval(&fixtures::b4_prod(), "!x", &[("x", 1)]), Ok(2));
    }

    #[test]
    fn errors() {
        let c3 = fixtures::c3_simple();
        assert_eq!(eval(&c3, "x & y", &[("x", 1)]), Err(EvalError::Unbound("y".into())));
        assert!(matches!(eval(&c3, "~x", &[("x", 1)]), Err(EvalError::Unavailable { op: "~", .. })));
        assert!(matches!(eval(&c3, "x -< x", &[("x", 1)]), Err(EvalError::Unavailable { .. })));
        let heyting = fixtures::chain(3, VarietyClass::Heyting);
        assert!(matches!(eval(&heyting, "[]x", &[("x", 1)]), Err(EvalError::Unavailable { .. })));
        assert!(matches!(eval(&c3, "x", &[("x", 7)]), Err(EvalError::OutOfRange { .. })));
    }

    #[test]
    fn derived_operations_available() {
        let hri = fixtures::c3_hri();
        // □ = ¬∼ on the HRI 3-chain: □m = ¬m = 0.
        assert_eq!(eval(&hri, "[]x", &[("x", 1)]), Ok(0));
        assert_eq!(eval(&hri, "~x", &[("x", 1)]), Ok(1));
        let hdp = fixtures::c3_hdp();
        assert_eq!(eval(&hdp, "+x", &[("x", 1)]), Ok(2));
        let dht = fixtures::chain(4, VarietyClass::Dht(1));
        assert_eq!(eval(&dht, "+x", &[("x", 1)]), eval(&dht, "1 -< x", &[("x", 1)]));
    }
}
