use super::validate::{box_violations, Raw};
use super::{AlgebraError, AlgebraTables, FiniteAlgebra, VarietyClass};

/// ⌐ as stored (HDP) or as `1 ⨪ a` (DHt).
pub(crate) fn derived_dualneg(t: &AlgebraTables) -> Vec<usize> {
    match t.class {
        VarietyClass::Dht(_) => {
            let d = t.dimpl.as_ref().expect("dht has dimpl");
            (0..t.size).map(|a| d[t.size - 1][a]).collect()
        }
        _ => t.dualneg.clone().expect("class has dualneg"),
    }
}

/// ⊡a = ¬⌐a
pub(crate) fn boxdot_table(r: &Raw, dn: &[usize]) -> Vec<usize> {
    (0..r.n).map(|a| r.neg(dn[a])).collect()
}

/// □ of the class: given for WS5, ¬∼ for HRI, ⋀_{i≤n} ⊡^i for HDP(n)/DHt(n),
/// the identity for Heyting.
pub(crate) fn derived_box(t: &AlgebraTables) -> Vec<usize> {
    let r = Raw { n: t.size, t };
    match t.class {
        VarietyClass::Heyting => (0..t.size).collect(),
        VarietyClass::Ws5 => t.boxes.clone().expect("ws5 has box"),
        VarietyClass::Hri => {
            let inv = t.invol.as_ref().expect("hri has invol");
            (0..t.size).map(|a| r.neg(inv[a])).collect()
        }
        VarietyClass::Hdp(level) | VarietyClass::Dht(level) => {
            let bd = boxdot_table(&r, &derived_dualneg(t));
            (0..t.size)
                .map(|a| {
                    let mut acc = a;
                    let mut x = a;
                    for _ in 0..level.min(t.size as u32) {
                        x = bd[x];
                        acc = r.meet(acc, x);
                    }
                    acc
                })
                .collect()
        }
    }
}

/// Fills in the derived operations: □ for HRI/HDP/DHt and ⌐ for DHt.
///
/// Fails when the derived □ breaks a WS5 axiom. Idempotent.
pub fn derive_operations(tables: &AlgebraTables) -> Result<AlgebraTables, AlgebraError> {
    tables.check_structure()?;
    let mut out = tables.clone();
    if matches!(tables.class, VarietyClass::Dht(_)) {
        out.dualneg = Some(derived_dualneg(tables));
    }
    if tables.class.has_box() && !tables.class.box_is_basic() {
        let bx = derived_box(tables);
        let mut violations = Vec::new();
        box_violations(&Raw { n: tables.size, t: tables }, &bx, "", &mut violations);
        if let Some(v) = violations.into_iter().next() {
            return Err(AlgebraError::DerivedBox {
                axiom: v.axiom,
                witness: v.witness,
            });
        }
        out.boxes = Some(bx);
    }
    Ok(out)
}

/// Least `n >= 1` with `⊡^{n+1} = ⊡^n`, for HDP/DHt algebras.
pub fn inferred_level(a: &FiniteAlgebra) -> Option<u32> {
    let dn: Vec<usize> = (0..a.size()).map(|x| a.dualneg(x)).collect::<Option<_>>()?;
    let bd: Vec<usize> = dn.iter().map(|&d| a.neg(d)).collect();
    let mut current: Vec<usize> = a.elements().collect();
    for k in 0..=a.size() as u32 {
        let next: Vec<usize> = current.iter().map(|&x| bd[x]).collect();
        if next == current {
            return Some(k.max(1));
        }
        current = next;
    }
    None
}
