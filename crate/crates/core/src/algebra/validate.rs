use std::fmt;

use serde::Serialize;

use super::derive::{boxdot_table, derived_box, derived_dualneg};
use super::{AlgebraTables, StructureError, VarietyClass};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    /// Distinct axiom names, in first-occurrence order.
    pub fn axioms(&self) -> Vec<&str> {
        let mut seen: Vec<&str> = Vec::new();
        for v in &self.violations {
            if !seen.contains(&v.axiom.as_str()) {
                seen.push(&v.axiom);
            }
        }
        seen
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return f.write_str("valid");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        for axiom in self.axioms() {
            let first = self.violations.iter().find(|v| v.axiom == axiom).unwrap();
            write!(f, "; {axiom} at {:?}", first.witness)?;
        }
        Ok(())
    }
}

pub(crate) mod axiom {
    pub const MEET_IDEMPOTENT: &str = "meet idempotent";
    pub const MEET_COMMUTATIVE: &str = "meet commutative";
    pub const MEET_ASSOCIATIVE: &str = "meet associative";
    pub const JOIN_IDEMPOTENT: &str = "join idempotent";
    pub const JOIN_COMMUTATIVE: &str = "join commutative";
    pub const JOIN_ASSOCIATIVE: &str = "join associative";
    pub const ABSORPTION: &str = "absorption";
    pub const DISTRIBUTIVE: &str = "distributive";
    pub const BOTTOM: &str = "bottom is index 0";
    pub const TOP: &str = "top is index n-1";
    pub const INDEX_ORDER: &str = "index order is a linear extension";
    pub const RESIDUATION: &str = "residuation";
    pub const BOX_TOP: &str = "box 1 = 1";
    pub const BOX_DEFLATIONARY: &str = "box a <= a";
    pub const BOX_MEET: &str = "box preserves meet";
    pub const BOX_IDEMPOTENT: &str = "box box a = box a";
    pub const BOX_JOIN_OPEN: &str = "box(a or box b) = box a or box b";
    pub const OPEN_BOOLEAN: &str = "open elements Boolean";
    pub const INVOL_DE_MORGAN: &str = "invol(a or b) = invol a and invol b";
    pub const INVOL_INVOLUTIVE: &str = "invol invol a = a";
    pub const INVOL_REGULAR: &str = "invol not a = not not a";
    pub const DUAL_PSEUDOCOMPLEMENT: &str = "dual pseudocomplement";
    pub const LEVEL: &str = "level identity";
    pub const DUAL_RESIDUATION: &str = "dual residuation";
    pub const DUALNEG_DERIVED: &str = "dualneg = 1 dimpl a";
    pub const BOX_DERIVED: &str = "box matches derived box";
}

/// Flat view over raw tables; only used while validating.
pub(crate) struct Raw<'a> {
    pub n: usize,
    pub t: &'a AlgebraTables,
}

impl Raw<'_> {
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.t.meet[a][b]
    }
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.t.join[a][b]
    }
    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.t.imp[a][b]
    }
    pub fn neg(&self, a: usize) -> usize {
        self.t.imp[a][0]
    }
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }
    pub fn top(&self) -> usize {
        self.n - 1
    }
}

/// Checks every axiom of the algebra's class and reports all violations.
///
/// Order: lattice axioms, index convention, residuation, then the class
/// axioms. For classes where □ is a term, the derived □ is also checked
/// against the WS5 axioms (reported with a `derived ` prefix).
pub fn validate(tables: &AlgebraTables) -> Result<ValidationReport, StructureError> {
    tables.check_structure()?;
    let raw = Raw { n: tables.size, t: tables };
    let mut out = Vec::new();
    lattice_violations(&raw, &mut out);
    residuation_violations(&raw, &mut out);

    match tables.class {
        VarietyClass::Heyting => {}
        VarietyClass::Ws5 => {
            let boxes = tables.boxes.as_ref().expect("checked by structure");
            box_violations(&raw, boxes, "", &mut out);
        }
        VarietyClass::Hri => {
            let invol = tables.invol.as_ref().expect("checked by structure");
            invol_violations(&raw, invol, &mut out);
        }
        VarietyClass::Hdp(level) => {
            let dn = tables.dualneg.as_ref().expect("checked by structure");
            dualneg_violations(&raw, dn, level, &mut out);
        }
        VarietyClass::Dht(level) => {
            let dimpl = tables.dimpl.as_ref().expect("checked by structure");
            dual_residuation_violations(&raw, dimpl, &mut out);
            let dn = derived_dualneg(tables);
            if let Some(given) = &tables.dualneg {
                for a in 0..raw.n {
                    if given[a] != dn[a] {
                        out.push(violation(axiom::DUALNEG_DERIVED, &[a]));
                    }
                }
            }
            dualneg_violations(&raw, &dn, level, &mut out);
        }
    }

    // The derived □ only means something once the class axioms hold.
    if !tables.class.box_is_basic() && tables.class.has_box() && out.is_empty() {
        let derived = derived_box(tables);
        if let Some(given) = &tables.boxes {
            for a in 0..raw.n {
                if given[a] != derived[a] {
                    out.push(violation(axiom::BOX_DERIVED, &[a]));
                }
            }
        }
        box_violations(&raw, &derived, "derived ", &mut out);
    }
    Ok(ValidationReport::from_violations(out))
}

fn violation(axiom: &str, witness: &[usize]) -> Violation {
    Violation {
        axiom: axiom.to_string(),
        witness: witness.to_vec(),
    }
}

fn lattice_violations(r: &Raw, out: &mut Vec<Violation>) {
    let n = r.n;
    for a in 0..n {
        if r.meet(a, a) != a {
            out.push(violation(axiom::MEET_IDEMPOTENT, &[a]));
        }
        if r.join(a, a) != a {
            out.push(violation(axiom::JOIN_IDEMPOTENT, &[a]));
        }
        if r.meet(0, a) != 0 {
            out.push(violation(axiom::BOTTOM, &[a]));
        }
        if r.join(n - 1, a) != n - 1 {
            out.push(violation(axiom::TOP, &[a]));
        }
        for b in 0..n {
            if r.meet(a, b) != r.meet(b, a) {
                out.push(violation(axiom::MEET_COMMUTATIVE, &[a, b]));
            }
            if r.join(a, b) != r.join(b, a) {
                out.push(violation(axiom::JOIN_COMMUTATIVE, &[a, b]));
            }
            if r.meet(a, r.join(a, b)) != a || r.join(a, r.meet(a, b)) != a {
                out.push(violation(axiom::ABSORPTION, &[a, b]));
            }
            if r.leq(a, b) && a > b {
                out.push(violation(axiom::INDEX_ORDER, &[a, b]));
            }
            for c in 0..n {
                if r.meet(r.meet(a, b), c) != r.meet(a, r.meet(b, c)) {
                    out.push(violation(axiom::MEET_ASSOCIATIVE, &[a, b, c]));
                }
                if r.join(r.join(a, b), c) != r.join(a, r.join(b, c)) {
                    out.push(violation(axiom::JOIN_ASSOCIATIVE, &[a, b, c]));
                }
                if r.meet(a, r.join(b, c)) != r.join(r.meet(a, b), r.meet(a, c)) {
                    out.push(violation(axiom::DISTRIBUTIVE, &[a, b, c]));
                }
            }
        }
    }
}

fn residuation_violations(r: &Raw, out: &mut Vec<Violation>) {
    for a in 0..r.n {
        for b in 0..r.n {
            for c in 0..r.n {
                if r.leq(r.meet(a, b), c) != r.leq(a, r.imp(b, c)) {
                    out.push(violation(axiom::RESIDUATION, &[a, b, c]));
                }
            }
        }
    }
}

pub(crate) fn box_violations(r: &Raw, bx: &[usize], prefix: &str, out: &mut Vec<Violation>) {
    let n = r.n;
    let top = r.top();
    let mut push = |name: &str, w: &[usize]| out.push(violation(&format!("{prefix}{name}"), w));
    if bx[top] != top {
        push(axiom::BOX_TOP, &[top]);
    }
    for a in 0..n {
        if !r.leq(bx[a], a) {
            push(axiom::BOX_DEFLATIONARY, &[a]);
        }
        if bx[bx[a]] != bx[a] {
            push(axiom::BOX_IDEMPOTENT, &[a]);
        }
        for b in 0..n {
            if bx[r.meet(a, b)] != r.meet(bx[a], bx[b]) {
                push(axiom::BOX_MEET, &[a, b]);
            }
            if bx[r.join(a, bx[b])] != r.join(bx[a], bx[b]) {
                push(axiom::BOX_JOIN_OPEN, &[a, b]);
            }
        }
    }
    let open: Vec<usize> = (0..n).filter(|&a| bx[a] == a).collect();
    for &a in &open {
        let complemented = open
            .iter()
            .any(|&c| r.meet(a, c) == 0 && r.join(a, c) == top);
        if !complemented {
            push(axiom::OPEN_BOOLEAN, &[a]);
        }
    }
}

fn invol_violations(r: &Raw, inv: &[usize], out: &mut Vec<Violation>) {
    for a in 0..r.n {
        if inv[inv[a]] != a {
            out.push(violation(axiom::INVOL_INVOLUTIVE, &[a]));
        }
        if inv[r.neg(a)] != r.neg(r.neg(a)) {
            out.push(violation(axiom::INVOL_REGULAR, &[a]));
        }
        for b in 0..r.n {
            if inv[r.join(a, b)] != r.meet(inv[a], inv[b]) {
                out.push(violation(axiom::INVOL_DE_MORGAN, &[a, b]));
            }
        }
    }
}

fn dualneg_violations(r: &Raw, dn: &[usize], level: u32, out: &mut Vec<Violation>) {
    let top = r.top();
    for a in 0..r.n {
        for b in 0..r.n {
            if (r.join(a, b) == top) != r.leq(dn[a], b) {
                out.push(violation(axiom::DUAL_PSEUDOCOMPLEMENT, &[a, b]));
            }
        }
    }
    let bd = boxdot_table(r, dn);
    // ⊡ is deflationary, so its powers are stable after n steps.
    let level = level.min(r.n as u32);
    let iterate = |k: u32, a: usize| (0..k).fold(a, |x, _| bd[x]);
    for a in 0..r.n {
        if iterate(level + 1, a) != iterate(level, a) {
            out.push(violation(axiom::LEVEL, &[a]));
        }
    }
}

fn dual_residuation_violations(r: &Raw, dimpl: &[Vec<usize>], out: &mut Vec<Violation>) {
    for a in 0..r.n {
        for b in 0..r.n {
            for c in 0..r.n {
                if r.leq(c, r.join(a, b)) != r.leq(dimpl[c][a], b) {
                    out.push(violation(axiom::DUAL_RESIDUATION, &[c, a, b]));
                }
            }
        }
    }
}
