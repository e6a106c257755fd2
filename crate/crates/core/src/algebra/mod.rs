//! Finite algebras over the universe `{0..n-1}` with bottom `0` and top `n-1`.

mod canon;
mod class;
mod derive;
mod elemset;
pub mod fixtures;
mod lattice;
mod profile;
mod validate;

use std::fmt;
use std::hash::{Hash, Hasher};

pub use canon::{canonical_form, canonical_relabeling, linear_extensions};
pub use class::{ClassParseError, VarietyClass};
pub(crate) use class::ClassRecord;
pub use derive::{derive_operations, inferred_level};
pub use elemset::ElemSet;
pub use lattice::{heyting_from_order, is_distributive_lattice_order};
pub(crate) use lattice::with_class;
pub use profile::{discriminator_eval, element_profile, ElementProfile};
pub use validate::{validate, ValidationReport, Violation};

/// Malformed input tables, as opposed to well-formed tables that break an axiom.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("algebra size must be between 1 and {max}, got {0}", max = ElemSet::MAX_ELEMENTS)]
    BadSize(usize),
    #[error("table `{table}` has wrong shape: expected {expected}")]
    Shape { table: &'static str, expected: String },
    #[error("table `{table}` entry {entry} at {position:?} is out of range for size {size}")]
    OutOfRange {
        table: &'static str,
        position: Vec<usize>,
        entry: usize,
        size: usize,
    },
    #[error("class {class} requires table `{table}`")]
    MissingTable { class: VarietyClass, table: &'static str },
    #[error("table `{table}` is not part of the signature of class {class}")]
    UnexpectedTable { class: VarietyClass, table: &'static str },
    #[error("class {0} must have level >= 1")]
    BadLevel(VarietyClass),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("algebra fails its axioms: {0}")]
    Invalid(ValidationReport),
    #[error("derived box violates `{axiom}` at {witness:?}; the algebra is outside the discriminator subvariety")]
    DerivedBox { axiom: String, witness: Vec<usize> },
    #[error("class mismatch: {0} vs {1}")]
    ClassMismatch(VarietyClass, VarietyClass),
    #[error("class {0} has no box operation")]
    NoBox(VarietyClass),
}

/// Operation symbols that can be stored as tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operation {
    Meet,
    Join,
    Imp,
    Box,
    Invol,
    Dualneg,
    Dimpl,
}

impl Operation {
    pub fn arity(self) -> usize {
        match self {
            Operation::Box | Operation::Invol | Operation::Dualneg => 1,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Operation::Meet => "meet",
            Operation::Join => "join",
            Operation::Imp => "impl",
            Operation::Box => "box",
            Operation::Invol => "invol",
            Operation::Dualneg => "dualneg",
            Operation::Dimpl => "dimpl",
        }
    }

    /// Stored operations of a class, in canonical table order. □ is listed for
    /// every class that has it even where it is a term, since homomorphisms and
    /// congruences respect it either way.
    pub fn signature(class: VarietyClass) -> Vec<Operation> {
        let mut ops = vec![Operation::Meet, Operation::Join, Operation::Imp];
        if class.has_box() {
            ops.push(Operation::Box);
        }
        match class {
            VarietyClass::Hri => ops.push(Operation::Invol),
            VarietyClass::Hdp(_) => ops.push(Operation::Dualneg),
            VarietyClass::Dht(_) => ops.push(Operation::Dimpl),
            _ => {}
        }
        ops
    }
}

/// Raw operation tables, exactly as they appear in an algebra file.
///
/// Binary tables are row-major with the row being the left argument.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraTables {
    pub name: String,
    pub class: VarietyClass,
    pub size: usize,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub imp: Vec<Vec<usize>>,
    pub boxes: Option<Vec<usize>>,
    pub invol: Option<Vec<usize>>,
    pub dualneg: Option<Vec<usize>>,
    pub dimpl: Option<Vec<Vec<usize>>>,
}

impl AlgebraTables {
    /// Tables for the stored signature of `class`, filled from `f(op, a, b)`;
    /// unary operations receive `b = 0`.
    pub fn build<F>(name: impl Into<String>, class: VarietyClass, n: usize, f: F) -> Self
    where
        F: Fn(Operation, usize, usize) -> usize,
    {
        let binary = |op| (0..n).map(|a| (0..n).map(|b| f(op, a, b)).collect()).collect();
        let unary = |op| (0..n).map(|a| f(op, a, 0)).collect();
        let ops = Operation::signature(class);
        AlgebraTables {
            name: name.into(),
            class,
            size: n,
            meet: binary(Operation::Meet),
            join: binary(Operation::Join),
            imp: binary(Operation::Imp),
            boxes: ops.contains(&Operation::Box).then(|| unary(Operation::Box)),
            invol: ops.contains(&Operation::Invol).then(|| unary(Operation::Invol)),
            dualneg: ops.contains(&Operation::Dualneg).then(|| unary(Operation::Dualneg)),
            dimpl: ops.contains(&Operation::Dimpl).then(|| binary(Operation::Dimpl)),
        }
    }

    /// Checks shapes, ranges and which tables the class requires.
    pub fn check_structure(&self) -> Result<(), StructureError> {
        let n = self.size;
        if n == 0 || n > ElemSet::MAX_ELEMENTS {
            return Err(StructureError::BadSize(n));
        }
        if self.class.level() == Some(0) {
            return Err(StructureError::BadLevel(self.class));
        }
        check_binary("meet", &self.meet, n)?;
        check_binary("join", &self.join, n)?;
        check_binary("impl", &self.imp, n)?;

        let class = self.class;
        let presence = [
            ("box", self.boxes.is_some(), class.box_is_basic(), class.has_box()),
            ("invol", self.invol.is_some(), class.has_invol(), class.has_invol()),
            (
                "dualneg",
                self.dualneg.is_some(),
                matches!(class, VarietyClass::Hdp(_)),
                class.has_dualneg(),
            ),
            ("dimpl", self.dimpl.is_some(), class.has_dimpl(), class.has_dimpl()),
        ];
        for (table, present, required, allowed) in presence {
            if required && !present {
                return Err(StructureError::MissingTable { class, table });
            }
            if present && !allowed {
                return Err(StructureError::UnexpectedTable { class, table });
            }
        }
        for (table, t) in [("box", &self.boxes), ("invol", &self.invol), ("dualneg", &self.dualneg)] {
            if let Some(t) = t {
                check_unary(table, t, n)?;
            }
        }
        if let Some(t) = &self.dimpl {
            check_binary("dimpl", t, n)?;
        }
        Ok(())
    }
}

fn check_binary(table: &'static str, t: &[Vec<usize>], n: usize) -> Result<(), StructureError> {
    if t.len() != n || t.iter().any(|row| row.len() != n) {
        return Err(StructureError::Shape {
            table,
            expected: format!("{n}x{n}"),
        });
    }
    for (a, row) in t.iter().enumerate() {
        for (b, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(StructureError::OutOfRange {
                    table,
                    position: vec![a, b],
                    entry: v,
                    size: n,
                });
            }
        }
    }
    Ok(())
}

fn check_unary(table: &'static str, t: &[usize], n: usize) -> Result<(), StructureError> {
    if t.len() != n {
        return Err(StructureError::Shape {
            table,
            expected: format!("{n} entries"),
        });
    }
    match t.iter().enumerate().find(|(_, &v)| v >= n) {
        Some((a, &v)) => Err(StructureError::OutOfRange {
            table,
            position: vec![a],
            entry: v,
            size: n,
        }),
        None => Ok(()),
    }
}

fn flatten(t: &[Vec<usize>]) -> Vec<usize> {
    t.iter().flatten().copied().collect()
}

fn unflatten(t: &[usize], n: usize) -> Vec<Vec<usize>> {
    t.chunks(n).map(|row| row.to_vec()).collect()
}

/// A validated finite algebra. Immutable; every derived operation (¬, □ for
/// the derived classes, ⌐ for DHt) is precomputed.
///
/// For the Heyting class □ is stored as the identity so that congruence
/// filters coincide with h-filters; it is not part of that signature.
#[derive(Clone)]
pub struct FiniteAlgebra {
    name: String,
    class: VarietyClass,
    n: usize,
    meet: Vec<usize>,
    join: Vec<usize>,
    imp: Vec<usize>,
    neg: Vec<usize>,
    boxes: Vec<usize>,
    invol: Option<Vec<usize>>,
    dualneg: Option<Vec<usize>>,
    dimpl: Option<Vec<usize>>,
}

impl FiniteAlgebra {
    /// Validates `tables`, fills in derived operations, and returns the algebra.
    pub fn new(tables: AlgebraTables) -> Result<Self, AlgebraError> {
        let report = validate(&tables)?;
        if !report.valid {
            return Err(AlgebraError::Invalid(report));
        }
        let full = derive_operations(&tables)?;
        Ok(Self::assemble(&full))
    }

    /// Builds from already-derived tables without re-validation.
    pub(crate) fn assemble(t: &AlgebraTables) -> Self {
        let n = t.size;
        let meet = flatten(&t.meet);
        let imp = flatten(&t.imp);
        let neg = (0..n).map(|a| imp[a * n]).collect();
        FiniteAlgebra {
            name: t.name.clone(),
            class: t.class,
            n,
            meet,
            join: flatten(&t.join),
            imp,
            neg,
            boxes: t.boxes.clone().unwrap_or_else(|| (0..n).collect()),
            invol: t.invol.clone(),
            dualneg: t.dualneg.clone(),
            dimpl: t.dimpl.as_deref().map(flatten),
        }
    }

    /// Builds the stored signature of `class` from `f` and validates it.
    pub fn from_fn<F>(name: &str, class: VarietyClass, n: usize, f: F) -> Result<Self, AlgebraError>
    where
        F: Fn(Operation, usize, usize) -> usize,
    {
        Self::new(AlgebraTables::build(name, class, n, f))
    }

    /// Tables as written to file: the basic signature plus □ for every box class.
    pub fn tables(&self) -> AlgebraTables {
        let n = self.n;
        AlgebraTables {
            name: self.name.clone(),
            class: self.class,
            size: n,
            meet: unflatten(&self.meet, n),
            join: unflatten(&self.join, n),
            imp: unflatten(&self.imp, n),
            boxes: self.class.has_box().then(|| self.boxes.clone()),
            invol: self.invol.clone(),
            dualneg: if matches!(self.class, VarietyClass::Hdp(_)) {
                self.dualneg.clone()
            } else {
                None
            },
            dimpl: self.dimpl.as_ref().map(|t| unflatten(t, n)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn class(&self) -> VarietyClass {
        self.class
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.n - 1
    }

    pub fn universe(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    #[inline]
    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a * self.n + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// `(a → b) ∧ (b → a)`
    #[inline]
    pub fn iff(&self, a: usize, b: usize) -> usize {
        self.meet(self.imp(a, b), self.imp(b, a))
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    /// □a. The identity for the Heyting class.
    #[inline]
    pub fn nec(&self, a: usize) -> usize {
        self.boxes[a]
    }

    /// ◇a = ¬□¬a
    #[inline]
    pub fn poss(&self, a: usize) -> usize {
        self.neg(self.nec(self.neg(a)))
    }

    pub fn invol(&self, a: usize) -> Option<usize> {
        self.invol.as_ref().map(|t| t[a])
    }

    pub fn dualneg(&self, a: usize) -> Option<usize> {
        self.dualneg.as_ref().map(|t| t[a])
    }

    pub fn dimpl(&self, a: usize, b: usize) -> Option<usize> {
        self.dimpl.as_ref().map(|t| t[a * self.n + b])
    }

    /// Stored operations of this algebra's class.
    pub fn operations(&self) -> Vec<Operation> {
        Operation::signature(self.class)
    }

    /// Applies a stored operation; `b` is ignored for unary operations.
    ///
    /// Panics if `op` is not in this algebra's signature.
    #[inline]
    pub fn apply(&self, op: Operation, a: usize, b: usize) -> usize {
        match op {
            Operation::Meet => self.meet(a, b),
            Operation::Join => self.join(a, b),
            Operation::Imp => self.imp(a, b),
            Operation::Box => self.nec(a),
            Operation::Invol => self.invol.as_ref().expect("invol not in signature")[a],
            Operation::Dualneg => self.dualneg.as_ref().expect("dualneg not in signature")[a],
            Operation::Dimpl => self.dimpl.as_ref().expect("dimpl not in signature")[a * self.n + b],
        }
    }

    /// Whether `a ∨ ¬a = 1` for every element.
    pub fn has_boolean_reduct(&self) -> bool {
        self.elements().all(|a| self.join(a, self.neg(a)) == self.top())
    }

    /// Elements with `□a = a`.
    pub fn open_elements(&self) -> ElemSet {
        self.elements().filter(|&a| self.nec(a) == a).collect()
    }

    /// Meet of a set; the top for the empty set.
    pub fn meet_all(&self, s: ElemSet) -> usize {
        s.iter().fold(self.top(), |acc, a| self.meet(acc, a))
    }

    /// `{a : b ≤ a}`
    pub fn up_set(&self, b: usize) -> ElemSet {
        self.elements().filter(|&a| self.leq(b, a)).collect()
    }

    /// Relabels elements: new index `i` is old element `order[i]`. The order
    /// must place 0 first, the top last, and be a linear extension.
    pub(crate) fn relabel(&self, order: &[usize]) -> FiniteAlgebra {
        let n = self.n;
        let mut inv = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            inv[old] = new;
        }
        let tables = AlgebraTables::build(self.name.clone(), self.class, n, |op, a, b| {
            inv[self.apply(op, order[a], order[b])]
        });
        let full = derive_operations(&tables).expect("relabeling preserves the axioms");
        FiniteAlgebra::assemble(&full)
    }
}

impl PartialEq for FiniteAlgebra {
    /// Equality of tables and class; the name is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.class == other.class
            && self.n == other.n
            && self.meet == other.meet
            && self.join == other.join
            && self.imp == other.imp
            && self.boxes == other.boxes
            && self.invol == other.invol
            && self.dualneg == other.dualneg
            && self.dimpl == other.dimpl
    }
}

impl Eq for FiniteAlgebra {}

impl Hash for FiniteAlgebra {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.class.hash(state);
        self.n.hash(state);
        self.meet.hash(state);
        self.join.hash(state);
        self.imp.hash(state);
        self.boxes.hash(state);
        self.invol.hash(state);
        self.dualneg.hash(state);
        self.dimpl.hash(state);
    }
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAlgebra")
            .field("name", &self.name)
            .field("class", &self.class)
            .field("size", &self.n)
            .field("box", &self.boxes)
            .finish_non_exhaustive()
    }
}
