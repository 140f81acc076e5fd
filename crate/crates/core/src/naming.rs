//! Euclid's letter-naming conventions.
//!
//! Points are single uppercase letters. A segment is named by its two
//! endpoints in either order, a polygon by its vertices read around the
//! boundary from any starting vertex in either direction, and an angle by
//! three letters with the vertex in the middle. Every name has one
//! canonical spelling so that two spellings of the same object compare
//! equal.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// The sort of object a letter name refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NameKind {
    Point,
    Segment,
    Polygon,
    Angle,
}

impl NameKind {
    fn arity_ok(self, n: usize) -> bool {
        match self {
            NameKind::Point => n == 1,
            NameKind::Segment => n == 2,
            NameKind::Polygon => n >= 3,
            NameKind::Angle => n == 3,
        }
    }
}

impl fmt::Display for NameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NameKind::Point => "point",
            NameKind::Segment => "segment",
            NameKind::Polygon => "polygon",
            NameKind::Angle => "angle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NameError {
    #[error("letter {letter} repeats in {raw:?}")]
    RepeatedLetter { raw: String, letter: char },
    #[error("{kind} name {raw:?} has the wrong number of letters")]
    WrongArity { kind: NameKind, raw: String },
    #[error("{ch:?} in {raw:?} is not a point letter A-Z")]
    InvalidLetter { raw: String, ch: char },
}

/// A canonical object name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectName {
    kind: NameKind,
    letters: String,
}

impl ObjectName {
    pub fn kind(&self) -> NameKind {
        self.kind
    }

    pub fn letters(&self) -> &str {
        &self.letters
    }

    pub fn chars(&self) -> impl Iterator<Item = char> + '_ {
        self.letters.chars()
    }

    pub fn point(letter: char) -> Result<Self, NameError> {
        canonicalize(NameKind::Point, &letter.to_string())
    }

    pub fn segment(p: char, q: char) -> Result<Self, NameError> {
        canonicalize(NameKind::Segment, &[p, q].iter().collect::<String>())
    }

    /// Endpoints of a segment name in canonical order.
    pub fn endpoints(&self) -> Option<(char, char)> {
        match self.kind {
            NameKind::Segment => {
                let mut it = self.letters.chars();
                Some((it.next()?, it.next()?))
            }
            _ => None,
        }
    }

    /// Vertex letter of an angle name.
    pub fn vertex(&self) -> Option<char> {
        match self.kind {
            NameKind::Angle => self.letters.chars().nth(1),
            _ => None,
        }
    }

    /// The two arm letters of an angle name, ascending.
    pub fn arms(&self) -> Option<(char, char)> {
        match self.kind {
            NameKind::Angle => {
                let v: Vec<char> = self.letters.chars().collect();
                Some((v[0], v[2]))
            }
            _ => None,
        }
    }
}

impl fmt::Display for ObjectName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.letters)
    }
}

impl Serialize for ObjectName {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.letters)
    }
}

fn validate(kind: NameKind, raw: &str) -> Result<Vec<char>, NameError> {
    let letters: Vec<char> = raw.chars().collect();
    if let Some(&ch) = letters.iter().find(|c| !c.is_ascii_uppercase()) {
        return Err(NameError::InvalidLetter {
            raw: raw.to_owned(),
            ch,
        });
    }
    if !kind.arity_ok(letters.len()) {
        return Err(NameError::WrongArity {
            kind,
            raw: raw.to_owned(),
        });
    }
    let mut seen = BTreeSet::new();
    for &c in &letters {
        if !seen.insert(c) {
            return Err(NameError::RepeatedLetter {
                raw: raw.to_owned(),
                letter: c,
            });
        }
    }
    Ok(letters)
}

/// Lexicographic minimum over all rotations of `w` and of its reversal.
fn dihedral_min(w: &[char]) -> Vec<char> {
    let n = w.len();
    let rev: Vec<char> = w.iter().rev().copied().collect();
    let mut best: Option<Vec<char>> = None;
    for base in [w, rev.as_slice()] {
        for r in 0..n {
            let cand: Vec<char> = base[r..].iter().chain(&base[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Canonical representative of a raw letter name of the given kind.
pub fn canonicalize(kind: NameKind, raw: &str) -> Result<ObjectName, NameError> {
    let mut letters = validate(kind, raw)?;
    match kind {
        NameKind::Point => {}
        NameKind::Segment => letters.sort_unstable(),
        NameKind::Polygon => letters = dihedral_min(&letters),
        NameKind::Angle => {
            if letters[0] > letters[2] {
                letters.swap(0, 2);
            }
        }
    }
    Ok(ObjectName {
        kind,
        letters: letters.into_iter().collect(),
    })
}

/// The sides of a polygon: each adjacent letter pair plus first-and-last.
pub fn sides_of(raw: &str) -> Result<BTreeSet<ObjectName>, NameError> {
    let letters = validate(NameKind::Polygon, raw)?;
    let n = letters.len();
    (0..n)
        .map(|i| ObjectName::segment(letters[i], letters[(i + 1) % n]))
        .collect()
}

/// Syntactic contraction of `UV` and `XY` into `UY` when `V = X`.
///
/// Orientation of both inputs is significant. Returns `None` when the
/// middle letters differ, when either input is not a valid segment name,
/// or when the result would be degenerate.
pub fn contract(left: &str, right: &str) -> Option<ObjectName> {
    let l = validate(NameKind::Segment, left).ok()?;
    let r = validate(NameKind::Segment, right).ok()?;
    if l[1] != r[0] || l[0] == r[1] {
        return None;
    }
    ObjectName::segment(l[0], r[1]).ok()
}

/// Vertex letter of a raw three-letter angle name.
pub fn vertex_of(raw: &str) -> Result<char, NameError> {
    let letters = validate(NameKind::Angle, raw)?;
    Ok(letters[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn canon(kind: NameKind, raw: &str) -> String {
        canonicalize(kind, raw).unwrap().letters().to_owned()
    }

    fn segs(names: &[&str]) -> BTreeSet<ObjectName> {
        names
            .iter()
            .map(|s| canonicalize(NameKind::Segment, s).unwrap())
            .collect()
    }

    #[test]
    fn segment_orientation_is_irrelevant() {
        assert_eq!(canon(NameKind::Segment, "BA"), "AB");
        assert_eq!(canon(NameKind::Segment, "AB"), "AB");
    }

    #[test]
    fn triangle_rotation_and_reversal() {
        assert_eq!(canon(NameKind::Polygon, "CBA"), "ABC");
        assert_eq!(canon(NameKind::Polygon, "BCA"), "ABC");
        assert_eq!(canon(NameKind::Polygon, "ACB"), "ABC");
    }

    #[test]
    fn quadrilateral_orbit_keeps_adjacency() {
        // ACBD has sides AC, CB, BD, DA; its canonical spelling must too.
        assert_eq!(canon(NameKind::Polygon, "ACBD"), "ACBD");
        assert_eq!(canon(NameKind::Polygon, "DBCA"), "ACBD");
        assert_ne!(
            canon(NameKind::Polygon, "ACBD"),
            canon(NameKind::Polygon, "ABCD")
        );
    }

    #[test]
    fn angle_keeps_vertex() {
        assert_eq!(canon(NameKind::Angle, "CBA"), "ABC");
        assert_eq!(canon(NameKind::Angle, "FAG"), "FAG");
        assert_eq!(canon(NameKind::Angle, "GAF"), "FAG");
        assert_ne!(canon(NameKind::Angle, "ABC"), canon(NameKind::Angle, "BAC"));
    }

    #[test]
    fn bad_names() {
        assert!(matches!(
            canonicalize(NameKind::Segment, "AA"),
            Err(NameError::RepeatedLetter { letter: 'A', .. })
        ));
        assert!(matches!(
            canonicalize(NameKind::Segment, "ABC"),
            Err(NameError::WrongArity { .. })
        ));
        assert!(matches!(
            canonicalize(NameKind::Polygon, "AB"),
            Err(NameError::WrongArity { .. })
        ));
        assert!(matches!(
            canonicalize(NameKind::Angle, "ABA"),
            Err(NameError::RepeatedLetter { .. })
        ));
        assert!(matches!(
            canonicalize(NameKind::Point, "a"),
            Err(NameError::InvalidLetter { ch: 'a', .. })
        ));
    }

    #[test]
    fn sides() {
        assert_eq!(sides_of("ABC").unwrap(), segs(&["AB", "BC", "AC"]));
        assert_eq!(sides_of("ABCD").unwrap(), segs(&["AB", "BC", "CD", "AD"]));
        assert!(matches!(sides_of("AB"), Err(NameError::WrongArity { .. })));
    }

    #[test]
    fn contraction() {
        assert_eq!(contract("AB", "BC").unwrap().letters(), "AC");
        assert_eq!(contract("CB", "BA").unwrap().letters(), "AC");
        assert_eq!(contract("AB", "CD"), None);
        assert_eq!(contract("UV", "VU"), None);
        assert_eq!(contract("BA", "BC"), None);
    }

    #[test]
    fn contraction_exhaustive_over_three_letters() {
        // Hand oracle: over {A,B,C}, defined exactly when the middle letters
        // agree and the outer letters differ.
        let alpha = ['A', 'B', 'C'];
        for u in alpha {
            for v in alpha {
                for x in alpha {
                    for y in alpha {
                        let l: String = [u, v].iter().collect();
                        let r: String = [x, y].iter().collect();
                        let valid = u != v && x != y;
                        let expect = valid && v == x && u != y;
                        assert_eq!(contract(&l, &r).is_some(), expect, "{l} {r}");
                    }
                }
            }
        }
    }

    #[test]
    fn vertices() {
        assert_eq!(vertex_of("ABC").unwrap(), 'B');
        assert_eq!(vertex_of("FAG").unwrap(), 'A');
        assert!(matches!(vertex_of("AB"), Err(NameError::WrongArity { .. })));
    }

    fn distinct_letters(min: usize, max: usize) -> impl Strategy<Value = String> {
        proptest::sample::subsequence(('A'..='Z').collect::<Vec<_>>(), min..=max)
            .prop_shuffle()
            .prop_map(|v| v.into_iter().collect())
    }

    proptest! {
        #[test]
        fn polygon_sides_survive_canonicalization(w in distinct_letters(3, 8)) {
            let c = canonicalize(NameKind::Polygon, &w).unwrap();
            prop_assert_eq!(sides_of(&w).unwrap(), sides_of(c.letters()).unwrap());
        }

        #[test]
        fn angle_idempotent(w in distinct_letters(3, 3)) {
            let c = canonicalize(NameKind::Angle, &w).unwrap();
            prop_assert_eq!(&canonicalize(NameKind::Angle, c.letters()).unwrap(), &c);
            prop_assert_eq!(c.vertex().unwrap(), vertex_of(&w).unwrap());
        }
    }
}
