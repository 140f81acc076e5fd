use std::fmt;

use serde::Serialize;

use crate::error::{KernelError, Result};
use crate::naming::{canonicalize, NameKind, ObjectName};

/// Sort of a magnitude; equality and decomposition never cross sorts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sort {
    Segment,
    Angle,
    Figure,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Segment => "segment",
            Sort::Angle => "angle",
            Sort::Figure => "figure",
        })
    }
}

/// Something that can be equal to, added to, or cut from another thing of
/// the same sort.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Magnitude {
    Segment(ObjectName),
    Angle(ObjectName),
    Figure(ObjectName),
}

impl Magnitude {
    pub fn segment(raw: &str) -> Result<Self> {
        Ok(Magnitude::Segment(canonicalize(NameKind::Segment, raw)?))
    }

    pub fn angle(raw: &str) -> Result<Self> {
        Ok(Magnitude::Angle(canonicalize(NameKind::Angle, raw)?))
    }

    pub fn figure(raw: &str) -> Result<Self> {
        Ok(Magnitude::Figure(canonicalize(NameKind::Polygon, raw)?))
    }

    pub fn of_sort(sort: Sort, raw: &str) -> Result<Self> {
        match sort {
            Sort::Segment => Self::segment(raw),
            Sort::Angle => Self::angle(raw),
            Sort::Figure => Self::figure(raw),
        }
    }

    pub fn sort(&self) -> Sort {
        match self {
            Magnitude::Segment(_) => Sort::Segment,
            Magnitude::Angle(_) => Sort::Angle,
            Magnitude::Figure(_) => Sort::Figure,
        }
    }

    pub fn name(&self) -> &ObjectName {
        match self {
            Magnitude::Segment(n) | Magnitude::Angle(n) | Magnitude::Figure(n) => n,
        }
    }

    /// Apply a letter substitution and re-canonicalize.
    pub fn rename(&self, f: &impl Fn(char) -> char) -> Result<Self> {
        let raw: String = self.name().chars().map(f).collect();
        Self::of_sort(self.sort(), &raw)
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::Segment(n) => write!(f, "{n}"),
            Magnitude::Angle(n) => write!(f, "angle {n}"),
            Magnitude::Figure(n) if n.letters().len() == 3 => write!(f, "triangle {n}"),
            Magnitude::Figure(n) => write!(f, "polygon {n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CircleLabel(pub String);

impl fmt::Display for CircleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An assertable statement about constructed objects.
///
/// Constructors normalize operand order: `Equal` and `Identical` store the
/// smaller operand first and a decomposition stores its parts sorted, so
/// structurally equal judgments compare equal. A difference `x ≡ y − z` is
/// stored as the sum `y ≡ x + z`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Judgment {
    Equal(Magnitude, Magnitude),
    Identical(Magnitude, Magnitude),
    Decomp {
        whole: Magnitude,
        parts: [Magnitude; 2],
    },
    Greater(Magnitude, Magnitude),
    On {
        point: char,
        circle: CircleLabel,
    },
}

fn same_sort(ms: &[&Magnitude]) -> Result<()> {
    let first = ms[0].sort();
    if ms.iter().all(|m| m.sort() == first) {
        Ok(())
    } else {
        let listed: Vec<String> = ms.iter().map(|m| format!("{m} ({})", m.sort())).collect();
        Err(KernelError::SortMismatch(listed.join(", ")))
    }
}

fn ordered(a: Magnitude, b: Magnitude) -> (Magnitude, Magnitude) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Judgment {
    pub fn equal(a: Magnitude, b: Magnitude) -> Result<Self> {
        same_sort(&[&a, &b])?;
        let (a, b) = ordered(a, b);
        Ok(Judgment::Equal(a, b))
    }

    pub fn identical(a: Magnitude, b: Magnitude) -> Result<Self> {
        same_sort(&[&a, &b])?;
        let (a, b) = ordered(a, b);
        Ok(Judgment::Identical(a, b))
    }

    /// `whole ≡ x + y`
    pub fn sum(whole: Magnitude, x: Magnitude, y: Magnitude) -> Result<Self> {
        same_sort(&[&whole, &x, &y])?;
        let (x, y) = ordered(x, y);
        Ok(Judgment::Decomp {
            whole,
            parts: [x, y],
        })
    }

    /// `rest ≡ whole − cut`
    pub fn difference(rest: Magnitude, whole: Magnitude, cut: Magnitude) -> Result<Self> {
        Self::sum(whole, cut, rest)
    }

    pub fn greater(a: Magnitude, b: Magnitude) -> Result<Self> {
        same_sort(&[&a, &b])?;
        Ok(Judgment::Greater(a, b))
    }

    pub fn on(point: char, circle: CircleLabel) -> Self {
        Judgment::On { point, circle }
    }

    pub fn magnitudes(&self) -> Vec<&Magnitude> {
        match self {
            Judgment::Equal(a, b) | Judgment::Identical(a, b) | Judgment::Greater(a, b) => {
                vec![a, b]
            }
            Judgment::Decomp { whole, parts } => vec![whole, &parts[0], &parts[1]],
            Judgment::On { .. } => Vec::new(),
        }
    }

    pub fn sort(&self) -> Option<Sort> {
        self.magnitudes().first().map(|m| m.sort())
    }

    /// Every point letter mentioned.
    pub fn points(&self) -> Vec<char> {
        let mut out: Vec<char> = match self {
            Judgment::On { point, .. } => vec![*point],
            _ => self
                .magnitudes()
                .iter()
                .flat_map(|m| m.name().chars())
                .collect(),
        };
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_decomposition(&self) -> bool {
        matches!(self, Judgment::Decomp { .. })
    }

    pub fn rename(&self, f: &impl Fn(char) -> char) -> Result<Self> {
        Ok(match self {
            Judgment::Equal(a, b) => Self::equal(a.rename(f)?, b.rename(f)?)?,
            Judgment::Identical(a, b) => Self::identical(a.rename(f)?, b.rename(f)?)?,
            Judgment::Decomp { whole, parts } => {
                Self::sum(whole.rename(f)?, parts[0].rename(f)?, parts[1].rename(f)?)?
            }
            Judgment::Greater(a, b) => Self::greater(a.rename(f)?, b.rename(f)?)?,
            Judgment::On { point, circle } => Self::on(f(*point), circle.clone()),
        })
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Judgment::Equal(a, b) => write!(f, "{a} = {b}"),
            Judgment::Identical(a, b) => write!(f, "{a} == {b}"),
            Judgment::Decomp { whole, parts } => {
                write!(f, "{whole} == {} + {}", parts[0], parts[1])
            }
            Judgment::Greater(a, b) => write!(f, "{a} > {b}"),
            Judgment::On { point, circle } => write!(f, "{point} on {circle}"),
        }
    }
}

impl Serialize for Judgment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(s: &str) -> Magnitude {
        Magnitude::segment(s).unwrap()
    }

    #[test]
    fn equality_is_stored_symmetrically() {
        let a = Judgment::equal(seg("CA"), seg("AB")).unwrap();
        let b = Judgment::equal(seg("BA"), seg("AC")).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "AB = AC");
    }

    #[test]
    fn difference_is_a_sum() {
        let con1 = Judgment::difference(seg("BF"), seg("AF"), seg("AB")).unwrap();
        let sum = Judgment::sum(seg("AF"), seg("BF"), seg("AB")).unwrap();
        assert_eq!(con1, sum);
        assert_eq!(con1.to_string(), "AF == AB + BF");
    }

    #[test]
    fn sorts_do_not_mix() {
        let err = Judgment::equal(seg("AB"), Magnitude::angle("ABC").unwrap()).unwrap_err();
        assert!(matches!(err, KernelError::SortMismatch(_)));
    }

    #[test]
    fn renaming_recanonicalizes() {
        let j = Judgment::equal(
            Magnitude::angle("ABC").unwrap(),
            Magnitude::angle("ACB").unwrap(),
        )
        .unwrap();
        let swap = |c: char| match c {
            'B' => 'C',
            'C' => 'B',
            c => c,
        };
        assert_eq!(j.rename(&swap).unwrap(), j);
    }
}
