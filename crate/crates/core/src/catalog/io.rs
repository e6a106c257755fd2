use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::algebra::{AlgebraError, AlgebraTables, ClassRecord, FiniteAlgebra, VarietyClass};
use crate::term::{DefiningPair, Quasiidentity};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}:{line}:{column}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}: {source}", path.display())]
    Algebra {
        path: PathBuf,
        #[source]
        source: AlgebraError,
    },
}

/// On-disk algebra record.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    name: String,
    class: ClassRecord,
    size: usize,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    #[serde(rename = "impl")]
    imp: Vec<Vec<usize>>,
    #[serde(rename = "box", default)]
    boxes: Option<Vec<usize>>,
    #[serde(default)]
    invol: Option<Vec<usize>>,
    #[serde(default)]
    dualneg: Option<Vec<usize>>,
    #[serde(default)]
    dimpl: Option<Vec<Vec<usize>>>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let src = std::fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    from_json(path, &src)
}

fn from_json<T: for<'de> Deserialize<'de>>(path: &Path, src: &str) -> Result<T, IoError> {
    serde_json::from_str(src).map_err(|e| IoError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Parses algebra text; `origin` only labels errors.
pub fn parse_algebra(origin: &Path, src: &str) -> Result<FiniteAlgebra, IoError> {
    let file: AlgebraFile = from_json(origin, src)?;
    let class = VarietyClass::try_from(file.class).map_err(|e| IoError::Parse {
        path: origin.to_path_buf(),
        line: 0,
        column: 0,
        message: e.to_string(),
    })?;
    let tables = AlgebraTables {
        name: file.name,
        class,
        size: file.size,
        meet: file.meet,
        join: file.join,
        imp: file.imp,
        boxes: file.boxes,
        invol: file.invol,
        dualneg: file.dualneg,
        dimpl: file.dimpl,
    };
    FiniteAlgebra::new(tables).map_err(|source| IoError::Algebra {
        path: origin.to_path_buf(),
        source,
    })
}

/// Reads and validates an algebra file.
pub fn read_algebra(path: &Path) -> Result<FiniteAlgebra, IoError> {
    let src = std::fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_algebra(path, &src)
}

fn row(r: &[usize]) -> String {
    let cells: Vec<String> = r.iter().map(usize::to_string).collect();
    format!("[{}]", cells.join(", "))
}

fn matrix(m: &[Vec<usize>]) -> String {
    let rows: Vec<String> = m.iter().map(|r| format!("    {}", row(r))).collect();
    format!("[\n{}\n  ]", rows.join(",\n"))
}

/// Serializes an algebra: canonical key order, one table row per line.
pub fn algebra_to_string(a: &FiniteAlgebra) -> String {
    let t = a.tables();
    let mut fields = vec![
        ("name", serde_json::to_string(&t.name).expect("string serializes")),
        (
            "class",
            serde_json::to_string(&ClassRecord::from(t.class)).expect("class serializes"),
        ),
        ("size", t.size.to_string()),
        ("meet", matrix(&t.meet)),
        ("join", matrix(&t.join)),
        ("impl", matrix(&t.imp)),
    ];
    if let Some(b) = &t.boxes {
        fields.push(("box", row(b)));
    }
    if let Some(i) = &t.invol {
        fields.push(("invol", row(i)));
    }
    if let Some(d) = &t.dualneg {
        fields.push(("dualneg", row(d)));
    }
    if let Some(d) = &t.dimpl {
        fields.push(("dimpl", matrix(d)));
    }
    let mut out = String::from("{\n");
    for (i, (k, v)) in fields.iter().enumerate() {
        let sep = if i + 1 == fields.len() { "" } else { "," };
        writeln!(out, "  \"{k}\": {v}{sep}").expect("writing to a string");
    }
    out.push_str("}\n");
    out
}

pub fn write_algebra(path: &Path, a: &FiniteAlgebra) -> Result<(), IoError> {
    std::fs::write(path, algebra_to_string(a)).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// `{"vars": [...], "atoms": [{"lhs": ..., "rhs": ...}]}`
pub fn read_presentation(path: &Path) -> Result<DefiningPair, IoError> {
    read_json(path)
}

/// `{"premises": [{"lhs", "rhs"}], "conclusion": {"lhs", "rhs"}}`
pub fn read_quasiidentity(path: &Path) -> Result<Quasiidentity, IoError> {
    read_json(path)
}
