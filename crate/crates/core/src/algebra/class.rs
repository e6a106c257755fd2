use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The variety an algebra is declared to live in.
///
/// `Hdp` and `Dht` carry the stabilisation level `n` of the identity
/// `⊡^{n+1} x ≈ ⊡^n x`; the level is always at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarietyClass {
    Heyting,
    Ws5,
    Hri,
    Hdp(u32),
    Dht(u32),
}

impl VarietyClass {
    pub fn kind(&self) -> &'static str {
        match self {
            VarietyClass::Heyting => "heyting",
            VarietyClass::Ws5 => "ws5",
            VarietyClass::Hri => "hri",
            VarietyClass::Hdp(_) => "hdp",
            VarietyClass::Dht(_) => "dht",
        }
    }

    pub fn level(&self) -> Option<u32> {
        match self {
            VarietyClass::Hdp(n) | VarietyClass::Dht(n) => Some(*n),
            _ => None,
        }
    }

    /// Same kind, ignoring the HDP/DHt level.
    pub fn same_kind(&self, other: &VarietyClass) -> bool {
        self.kind() == other.kind()
    }

    /// Whether □ is part of (or derivable in) the signature.
    pub fn has_box(&self) -> bool {
        !matches!(self, VarietyClass::Heyting)
    }

    /// □ is a basic operation only for WS5; elsewhere it is a term.
    pub fn box_is_basic(&self) -> bool {
        matches!(self, VarietyClass::Ws5)
    }

    pub fn has_invol(&self) -> bool {
        matches!(self, VarietyClass::Hri)
    }

    pub fn has_dualneg(&self) -> bool {
        matches!(self, VarietyClass::Hdp(_) | VarietyClass::Dht(_))
    }

    pub fn has_dimpl(&self) -> bool {
        matches!(self, VarietyClass::Dht(_))
    }

    /// Join of two classes of the same kind: the larger level wins.
    pub fn join(&self, other: &VarietyClass) -> Option<VarietyClass> {
        match (self, other) {
            (VarietyClass::Hdp(a), VarietyClass::Hdp(b)) => Some(VarietyClass::Hdp(*a.max(b))),
            (VarietyClass::Dht(a), VarietyClass::Dht(b)) => Some(VarietyClass::Dht(*a.max(b))),
            (a, b) if a == b => Some(*a),
            _ => None,
        }
    }

    /// Same kind with a different level; identity for level-free classes.
    pub fn with_level(&self, level: u32) -> VarietyClass {
        match self {
            VarietyClass::Hdp(_) => VarietyClass::Hdp(level),
            VarietyClass::Dht(_) => VarietyClass::Dht(level),
            other => *other,
        }
    }
}

impl fmt::Display for VarietyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.level() {
            Some(n) => write!(f, "{}:{}", self.kind(), n),
            None => f.write_str(self.kind()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown variety class `{0}` (expected ws5, heyting, hri, hdp:N or dht:N with N >= 1)")]
pub struct ClassParseError(pub String);

impl FromStr for VarietyClass {
    type Err = ClassParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ClassParseError(s.to_string());
        let (kind, level) = match s.split_once(':') {
            Some((k, l)) => (k, Some(l.parse::<u32>().map_err(|_| err())?)),
            None => (s, None),
        };
        let class = match (kind.to_ascii_lowercase().as_str(), level) {
            ("heyting", None) => VarietyClass::Heyting,
            ("ws5", None) => VarietyClass::Ws5,
            ("hri", None) => VarietyClass::Hri,
            ("hdp", Some(n)) if n >= 1 => VarietyClass::Hdp(n),
            ("dht", Some(n)) if n >= 1 => VarietyClass::Dht(n),
            _ => return Err(err()),
        };
        Ok(class)
    }
}

/// On-disk shape: `{"kind": "hdp", "level": 2}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub(crate) struct ClassRecord {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
}

impl From<VarietyClass> for ClassRecord {
    fn from(c: VarietyClass) -> Self {
        ClassRecord {
            kind: c.kind().to_string(),
            level: c.level(),
        }
    }
}

impl TryFrom<ClassRecord> for VarietyClass {
    type Error = ClassParseError;

    fn try_from(r: ClassRecord) -> Result<Self, Self::Error> {
        match r.level {
            Some(n) => format!("{}:{}", r.kind, n).parse(),
            None => r.kind.parse(),
        }
    }
}
