//! Exported statement forms of verified propositions and their instantiation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::deduction::Judgment;
use crate::error::{KernelError, Result};
use crate::naming::{canonicalize, NameKind};
use crate::production::Environment;

/// Dotted proposition label such as `1.5`, ordered numerically per component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PropNumber(Vec<u32>);

impl PropNumber {
    pub fn parts(&self) -> &[u32] {
        &self.0
    }
}

impl Ord for PropNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl PartialOrd for PropNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for PropNumber {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: std::result::Result<Vec<u32>, _> = s.split('.').map(str::parse).collect();
        match parts {
            Ok(p) if !p.is_empty() => Ok(PropNumber(p)),
            _ => Err(format!("bad proposition number {s:?}")),
        }
    }
}

impl fmt::Display for PropNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join("."))
    }
}

impl Serialize for PropNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One schematic object a statement is about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum SchemaGiven {
    /// A generic object named by the given raw letters.
    Object { kind: NameKind, letters: String },
    /// A point obtained by producing `base` beyond its endpoint `beyond`.
    Extension {
        base: String,
        beyond: char,
        point: char,
    },
}

impl SchemaGiven {
    pub fn letters(&self) -> Vec<char> {
        match self {
            SchemaGiven::Object { letters, .. } => letters.chars().collect(),
            SchemaGiven::Extension { point, .. } => vec![*point],
        }
    }
}

impl fmt::Display for SchemaGiven {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaGiven::Object {
                kind: NameKind::Polygon,
                letters,
            } if letters.len() == 3 => {
                write!(f, "triangle {letters}")
            }
            SchemaGiven::Object { kind, letters } => write!(f, "{kind} {letters}"),
            SchemaGiven::Extension {
                base,
                beyond,
                point,
            } => {
                write!(f, "{point} = extend({base}, {beyond})")
            }
        }
    }
}

/// The object a Problem hands back, optionally placed on a given segment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Produced {
    pub kind: NameKind,
    pub letters: String,
    pub on: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProblemSchema {
    pub number: PropNumber,
    pub givens: Vec<SchemaGiven>,
    pub hypotheses: Vec<Judgment>,
    pub produced: Produced,
    pub goals: Vec<Judgment>,
}

impl ProblemSchema {
    /// Letters of the produced object that no given binds, in order.
    pub fn fresh_letters(&self) -> Vec<char> {
        let bound: Vec<char> = self.givens.iter().flat_map(SchemaGiven::letters).collect();
        self.produced
            .letters
            .chars()
            .filter(|c| !bound.contains(c))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremSchema {
    pub number: PropNumber,
    pub givens: Vec<SchemaGiven>,
    pub hypotheses: Vec<Judgment>,
    pub conclusions: Vec<Judgment>,
    pub primitive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExportedSchema {
    Problem(ProblemSchema),
    Theorem(TheoremSchema),
}

impl ExportedSchema {
    pub fn number(&self) -> &PropNumber {
        match self {
            ExportedSchema::Problem(p) => &p.number,
            ExportedSchema::Theorem(t) => &t.number,
        }
    }
}

/// Letter substitution from schema letters to environment letters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution(BTreeMap<char, char>);

impl Substitution {
    pub fn get(&self, c: char) -> Option<char> {
        self.0.get(&c).copied()
    }

    pub fn bind(&mut self, from: char, to: char) -> Result<()> {
        match self.0.insert(from, to) {
            Some(prev) if prev != to => Err(KernelError::SchemaMismatch(format!(
                "{from} bound to both {prev} and {to}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn apply_char(&self, c: char) -> char {
        self.get(c).unwrap_or(c)
    }

    pub fn apply_str(&self, s: &str) -> String {
        s.chars().map(|c| self.apply_char(c)).collect()
    }

    pub fn apply(&self, j: &Judgment) -> Result<Judgment> {
        j.rename(&|c| self.apply_char(c))
    }

    pub fn iter(&self) -> impl Iterator<Item = (char, char)> + '_ {
        self.0.iter().map(|(a, b)| (*a, *b))
    }
}

/// Bind schema givens positionally to raw argument names, checking each
/// argument names a constructed object of the right form.
pub fn bind_givens(
    env: &Environment,
    givens: &[SchemaGiven],
    args: &[String],
) -> Result<Substitution> {
    if givens.len() != args.len() {
        return Err(KernelError::SchemaMismatch(format!(
            "expected {} arguments, got {}",
            givens.len(),
            args.len()
        )));
    }
    let mut sigma = Substitution::default();
    for (given, arg) in givens.iter().zip(args) {
        match given {
            SchemaGiven::Object { kind, letters } => {
                let name = canonicalize(*kind, arg)?;
                if letters.chars().count() != arg.chars().count() {
                    return Err(KernelError::SchemaMismatch(format!(
                        "{arg} does not fit {given}"
                    )));
                }
                for (s, a) in letters.chars().zip(arg.chars()) {
                    sigma.bind(s, a)?;
                }
                if !env.name_constructed(&name) {
                    return Err(KernelError::UnconstructedObject(arg.clone()));
                }
            }
            SchemaGiven::Extension {
                base,
                beyond,
                point,
            } => {
                let mut arg_chars = arg.chars();
                let (Some(p), None) = (arg_chars.next(), arg_chars.next()) else {
                    return Err(KernelError::SchemaMismatch(format!("{arg} is not a point")));
                };
                let start = base.chars().find(|c| c != beyond).unwrap_or(*beyond);
                let (Some(a), Some(b)) = (sigma.get(start), sigma.get(*beyond)) else {
                    return Err(KernelError::SchemaMismatch(format!(
                        "{given} refers to unbound letters"
                    )));
                };
                sigma.bind(*point, p)?;
                if !env.between(a, b, p) {
                    return Err(KernelError::SchemaMismatch(format!(
                        "{p} does not lie beyond {b} on the line through {a}{b}"
                    )));
                }
            }
        }
    }
    Ok(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_order_numerically() {
        let a: PropNumber = "1.5".parse().unwrap();
        let b: PropNumber = "1.10".parse().unwrap();
        assert!(a < b);
        assert_eq!(b.to_string(), "1.10");
        assert!("1.".parse::<PropNumber>().is_err());
    }

    #[test]
    fn conflicting_binding() {
        let mut s = Substitution::default();
        s.bind('A', 'P').unwrap();
        s.bind('A', 'P').unwrap();
        assert!(s.bind('A', 'Q').is_err());
    }
}
