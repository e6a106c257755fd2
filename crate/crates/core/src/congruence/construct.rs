use crate::algebra::{canonical_relabeling, AlgebraError, AlgebraTables, FiniteAlgebra, VarietyClass};
use crate::morphism::Homomorphism;

use super::{Congruence, CongruenceError};

/// Quotient algebra `A/θ` in canonical form, with the projection `A → A/θ`.
pub fn quotient(
    a: &FiniteAlgebra,
    theta: &Congruence,
) -> Result<(FiniteAlgebra, Homomorphism), CongruenceError> {
    if theta.host_size() != a.size() {
        return Err(CongruenceError::SizeMismatch {
            expected: a.size(),
            got: theta.host_size(),
        });
    }
    if let Some((op, witness)) = theta.incompatibility(a) {
        return Err(CongruenceError::NotCompatible { op, witness });
    }
    // Blocks are numbered by least element; on a finite lattice each block is
    // an interval, so this numbering is a linear extension of the quotient order.
    let reps: Vec<usize> = theta.blocks().iter().map(|b| b[0]).collect();
    let tables = AlgebraTables::build(format!("{}/θ", a.name()), a.class(), reps.len(), |op, x, y| {
        theta.block_of(a.apply(op, reps[x], reps[y]))
    });
    let q = FiniteAlgebra::new(tables)?;
    let order = canonical_relabeling(&q);
    let mut inv = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        inv[old] = new;
    }
    let q = q.relabel(&order);
    let proj: Vec<usize> = a.elements().map(|x| inv[theta.block_of(x)]).collect();
    let proj = Homomorphism::new(a, &q, proj)?;
    Ok((q, proj))
}

/// The one-element algebra of a class.
pub fn trivial_algebra(class: VarietyClass) -> FiniteAlgebra {
    FiniteAlgebra::from_fn("1", class, 1, |_, _, _| 0).expect("one-element algebra is valid")
}

/// A direct product together with the coordinates of each canonical index.
#[derive(Debug, Clone)]
pub struct Product {
    pub algebra: FiniteAlgebra,
    pub coords: Vec<(usize, usize)>,
}

impl Product {
    pub fn index_of(&self, x: usize, y: usize) -> usize {
        self.coords
            .iter()
            .position(|&c| c == (x, y))
            .expect("coordinates in range")
    }

    pub fn first_projection(&self) -> Vec<usize> {
        self.coords.iter().map(|c| c.0).collect()
    }

    pub fn second_projection(&self) -> Vec<usize> {
        self.coords.iter().map(|c| c.1).collect()
    }
}

/// `A × B` with componentwise operations, in canonical form.
pub fn product_with_coords(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Product, AlgebraError> {
    let class = a
        .class()
        .join(&b.class())
        .ok_or(AlgebraError::ClassMismatch(a.class(), b.class()))?;
    let mut pairs: Vec<(usize, usize)> = a
        .elements()
        .flat_map(|x| b.elements().map(move |y| (x, y)))
        .collect();
    // Componentwise order refines the sum of indices.
    pairs.sort_by_key(|&(x, y)| (x + y, x));
    let index = |p: (usize, usize)| pairs.iter().position(|&q| q == p).unwrap();
    let n = pairs.len();
    let mut table = vec![vec![0usize; n * n]; crate::algebra::Operation::Dimpl as usize + 1];
    let ops = crate::algebra::Operation::signature(class);
    for &op in &ops {
        for i in 0..n {
            for j in 0..if op.arity() == 1 { 1 } else { n } {
                let (x1, y1) = pairs[i];
                let (x2, y2) = pairs[j];
                let v = (a.apply(op, x1, x2), b.apply(op, y1, y2));
                table[op as usize][i * n + j] = index(v);
            }
        }
    }
    let name = format!("{} x {}", a.name(), b.name());
    let tables = AlgebraTables::build(name, class, n, |op, i, j| {
        let j = if op.arity() == 1 { 0 } else { j };
        table[op as usize][i * n + j]
    });
    let p = FiniteAlgebra::new(tables)?;
    let order = canonical_relabeling(&p);
    let coords = order.iter().map(|&old| pairs[old]).collect();
    Ok(Product {
        algebra: p.relabel(&order),
        coords,
    })
}

/// `A × B` in canonical form.
pub fn product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<FiniteAlgebra, AlgebraError> {
    product_with_coords(a, b).map(|p| p.algebra)
}
