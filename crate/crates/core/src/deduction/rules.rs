use std::fmt;

use serde::Serialize;

use super::{same_magnitude, Judgment, Magnitude};
use crate::error::{KernelError, Result};
use crate::production::{Environment, FactId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CommonNotion {
    /// `x = z`, `y = z` give `x = y`.
    Cn1,
    /// `w1 ≡ x1 + y1`, `w2 ≡ x2 + y2`, `x1 = x2`, `y1 = y2` give `w1 = w2`.
    Cn2,
    /// `w1 ≡ x1 + y1`, `w2 ≡ x2 + y2`, `w1 = w2`, `x1 = x2` give `y1 = y2`.
    Cn3,
    /// `x ≡ y` gives `x = y`.
    Cn4,
    /// `w ≡ x + y` gives `w > x`.
    Cn5,
}

impl CommonNotion {
    pub const ALL: [CommonNotion; 5] = [Self::Cn1, Self::Cn2, Self::Cn3, Self::Cn4, Self::Cn5];

    pub fn arity(self) -> usize {
        match self {
            Self::Cn1 => 2,
            Self::Cn2 | Self::Cn3 => 4,
            Self::Cn4 | Self::Cn5 => 1,
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.to_string() == s)
    }
}

impl fmt::Display for CommonNotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = *self as usize + 1;
        write!(f, "cn{n}")
    }
}

fn mismatch(rule: CommonNotion, why: impl fmt::Display) -> KernelError {
    KernelError::PatternMismatch(format!("{rule}: {why}"))
}

/// `j` is an equality between `a` and `b` in either order.
fn equates(env: &Environment, j: &Judgment, a: &Magnitude, b: &Magnitude) -> bool {
    let m = |x, y| same_magnitude(env, x, y);
    matches!(j, Judgment::Equal(p, q) if (m(p, a) && m(q, b)) || (m(p, b) && m(q, a)))
}

/// Both orientations `(whole, first, second)` of a decomposition.
fn orientations(j: &Judgment) -> Option<[(&Magnitude, &Magnitude, &Magnitude); 2]> {
    match j {
        Judgment::Decomp { whole, parts } => {
            Some([(whole, &parts[0], &parts[1]), (whole, &parts[1], &parts[0])])
        }
        _ => None,
    }
}

/// Check that `conclusion` follows from the cited facts by `rule`.
pub fn check_cn(
    env: &Environment,
    rule: CommonNotion,
    premises: &[FactId],
    conclusion: &Judgment,
) -> Result<()> {
    if premises.len() != rule.arity() {
        return Err(mismatch(
            rule,
            format!("takes {} premises, {} cited", rule.arity(), premises.len()),
        ));
    }
    let facts = premises
        .iter()
        .map(|&p| env.fact(p).map(|f| &f.judgment))
        .collect::<Result<Vec<_>>>()?;
    if let Some(sort) = conclusion.sort() {
        for f in &facts {
            if let Some(s) = f.sort() {
                if s != sort {
                    return Err(KernelError::SortMismatch(format!(
                        "{f} ({s}) against {conclusion} ({sort})"
                    )));
                }
            }
        }
    }
    let ok = match rule {
        CommonNotion::Cn1 => {
            let (Judgment::Equal(a1, a2), Judgment::Equal(b1, b2)) = (facts[0], facts[1]) else {
                return Err(mismatch(rule, "premises must be equalities"));
            };
            let m = |x, y| same_magnitude(env, x, y);
            [(a1, a2), (a2, a1)].into_iter().any(|(x, z)| {
                [(b1, b2), (b2, b1)]
                    .into_iter()
                    .any(|(y, z2)| m(z, z2) && equates(env, conclusion, x, y))
            })
        }
        CommonNotion::Cn2 | CommonNotion::Cn3 => {
            let (Some(d1), Some(d2)) = (orientations(facts[0]), orientations(facts[1])) else {
                return Err(mismatch(rule, "first two premises must be decompositions"));
            };
            d1.iter().any(|&(w1, x1, y1)| {
                d2.iter().any(|&(w2, x2, y2)| {
                    if rule == CommonNotion::Cn2 {
                        equates(env, facts[2], x1, x2)
                            && equates(env, facts[3], y1, y2)
                            && equates(env, conclusion, w1, w2)
                    } else {
                        equates(env, facts[2], w1, w2)
                            && equates(env, facts[3], x1, x2)
                            && equates(env, conclusion, y1, y2)
                    }
                })
            })
        }
        CommonNotion::Cn4 => {
            let Judgment::Identical(x, y) = facts[0] else {
                return Err(mismatch(rule, "premise must be an identity"));
            };
            equates(env, conclusion, x, y)
        }
        CommonNotion::Cn5 => {
            let Some(d) = orientations(facts[0]) else {
                return Err(mismatch(rule, "premise must be a decomposition"));
            };
            d.iter().any(|&(w, x, _)| {
                matches!(conclusion, Judgment::Greater(a, b)
                    if same_magnitude(env, a, w) && same_magnitude(env, b, x))
            })
        }
    };
    if ok {
        Ok(())
    } else {
        let cited: Vec<String> = facts.iter().map(|f| f.to_string()).collect();
        Err(mismatch(
            rule,
            format!("{conclusion} does not follow from {}", cited.join("; ")),
        ))
    }
}
