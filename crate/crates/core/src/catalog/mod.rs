//! Exhaustive catalogs of small algebras and the file formats.

mod decorate;
mod io;
mod lattices;

use std::path::Path;

use crate::algebra::{FiniteAlgebra, VarietyClass};

pub use decorate::decorate;
pub use io::{
    algebra_to_string, parse_algebra, read_algebra, read_presentation, read_quasiidentity, write_algebra, IoError,
};
pub use lattices::{enum_distributive_lattices, MAX_LATTICE_SIZE};

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("size {size} is outside the supported range 1..={max}")]
    SizeBound { size: usize, max: usize },
    #[error(transparent)]
    Io(#[from] IoError),
}

/// Sort key: size, then every stored table in signature order.
pub(crate) fn sort_key(a: &FiniteAlgebra) -> (usize, Vec<usize>) {
    let mut k = Vec::new();
    for op in a.operations() {
        for x in a.elements() {
            if op.arity() == 1 {
                k.push(a.apply(op, x, 0));
            } else {
                k.extend(a.elements().map(|y| a.apply(op, x, y)));
            }
        }
    }
    (a.size(), k)
}

/// Every algebra of a class up to a size, pairwise non-isomorphic and in
/// canonical form, ordered by size, then Heyting reduct, then tables.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub class: VarietyClass,
    pub max_size: usize,
    pub algebras: Vec<FiniteAlgebra>,
}

impl Catalog {
    pub fn generate(class: VarietyClass, max_size: usize) -> Result<Self, CatalogError> {
        if max_size == 0 || max_size > MAX_LATTICE_SIZE {
            return Err(CatalogError::SizeBound {
                size: max_size,
                max: MAX_LATTICE_SIZE,
            });
        }
        let mut algebras = Vec::new();
        for n in 1..=max_size {
            let mut index = 0;
            for l in enum_distributive_lattices(n)? {
                for a in decorate(class, &l) {
                    algebras.push(a.with_name(format!("{}-{n}-{index}", class.to_string().replace(':', "")))); 
                    index += 1;
                }
            }
        }
        Ok(Catalog {
            class,
            max_size,
            algebras,
        })
    }

    /// Writes one file per algebra, named after it.
    pub fn write_to(&self, dir: &Path) -> Result<Vec<std::path::PathBuf>, CatalogError> {
        std::fs::create_dir_all(dir).map_err(|source| IoError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let mut paths = Vec::new();
        for a in &self.algebras {
            let path = dir.join(format!("{}.json", a.name()));
            write_algebra(&path, a)?;
            paths.push(path);
        }
        Ok(paths)
    }
}

/// `Catalog::generate`, returning just the algebras.
pub fn catalog(class: VarietyClass, max_size: usize) -> Result<Vec<FiniteAlgebra>, CatalogError> {
    Catalog::generate(class, max_size).map(|c| c.algebras)
}
