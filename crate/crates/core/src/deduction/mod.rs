//! Deduction over equality judgments.
//!
//! The Common Notions are inference rules, not premises: each is a schema
//! over magnitude metavariables whose premises must literally match cited
//! facts. Radius equality comes from the definition of a circle, and
//! verified or primitive Theorems are instantiated as derived rules. No
//! operation here registers an object.

mod judgment;
mod rules;

use std::fmt;

use serde::Serialize;

pub use judgment::{CircleLabel, Judgment, Magnitude, Sort};
pub use rules::{check_cn, CommonNotion};

use crate::error::{KernelError, Result};
use crate::naming::ObjectName;
use crate::production::{Environment, FactId, Phase, Provenance, StepId, StepKind};
use crate::schema::{bind_givens, PropNumber, TheoremSchema};

/// Sources of facts that hold by definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Definition {
    /// Radii of one circle are equal.
    Radius,
    /// Two names denote the same object.
    Identity,
}

impl fmt::Display for Definition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Definition::Radius => "def15",
            Definition::Identity => "identity",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    CommonNotion(CommonNotion),
    Theorem(PropNumber),
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::CommonNotion(cn) => write!(f, "{cn}"),
            Rule::Theorem(n) => write!(f, "prop {n}"),
        }
    }
}

/// Record an exposition hypothesis.
pub fn assert_hypothesis(env: &mut Environment, judgment: Judgment) -> Result<FactId> {
    if env.phase() != Phase::Exposition {
        return Err(KernelError::OutsideExposition);
    }
    env.judgment_constructed(&judgment).map_err(|e| match e {
        KernelError::UnconstructedObject(o) => KernelError::UnknownObject(o),
        other => other,
    })?;
    let step = env.begin_step(StepKind::Hypothesis, None, vec![judgment.to_string()]);
    Ok(env.push_fact(judgment, Provenance::ByHypothesis { step }))
}

/// Radii of `circle` are equal: `s1 = s2`.
pub fn radii_equal(
    env: &mut Environment,
    circle: &CircleLabel,
    s1: &str,
    s2: &str,
) -> Result<FactId> {
    let c = env.circle(circle)?.clone();
    let mut mags = Vec::new();
    for raw in [s1, s2] {
        let m = Magnitude::segment(raw)?;
        let (p, q) = m.name().endpoints().unwrap_or(('?', '?'));
        let not_radius = || KernelError::NotARadius {
            segment: m.to_string(),
            circle: circle.0.clone(),
        };
        let tip = if p == c.center {
            q
        } else if q == c.center {
            p
        } else {
            return Err(not_radius());
        };
        let on_circle = c.radius.chars().any(|x| x == tip)
            || env.exact(&Judgment::on(tip, circle.clone())).is_some();
        if !on_circle {
            return Err(not_radius());
        }
        if !env.is_constructed(&m) {
            return Err(KernelError::UnconstructedObject(m.to_string()));
        }
        mags.push(m);
    }
    let [a, b]: [Magnitude; 2] = mags
        .try_into()
        .map_err(|_| KernelError::PatternMismatch("radii".into()))?;
    let judgment = Judgment::equal(a, b)?;
    let step = env.begin_step(
        StepKind::Definition(Definition::Radius),
        None,
        vec![circle.0.clone()],
    );
    Ok(env.push_fact(
        judgment,
        Provenance::ByDefinition {
            definition: Definition::Radius,
            step,
        },
    ))
}

/// Record `a ≡ b` when the two names denote one object: identical
/// canonical names, or angles identified by [`same_angle`].
pub fn apply_identity(env: &mut Environment, a: Magnitude, b: Magnitude) -> Result<FactId> {
    let j = Judgment::identical(a.clone(), b.clone())?;
    env.judgment_constructed(&j)?;
    if !same_magnitude(env, &a, &b) {
        return Err(KernelError::PatternMismatch(format!(
            "{a} and {b} are different objects"
        )));
    }
    let step = env.begin_step(
        StepKind::Definition(Definition::Identity),
        None,
        vec![j.to_string()],
    );
    Ok(env.push_fact(
        j,
        Provenance::ByDefinition {
            definition: Definition::Identity,
            step,
        },
    ))
}

/// Apply a Common Notion to cited premises, yielding `conclusion`.
pub fn apply_cn(
    env: &mut Environment,
    rule: CommonNotion,
    premises: &[FactId],
    conclusion: Judgment,
) -> Result<FactId> {
    env.judgment_constructed(&conclusion)?;
    check_cn(env, rule, premises, &conclusion)?;
    let step = env.begin_step(
        StepKind::Deduction(Rule::CommonNotion(rule)),
        None,
        premises.iter().map(|p| format!("#{}", p.0)).collect(),
    );
    Ok(env.push_fact(
        conclusion,
        Provenance::ByDeduction {
            rule: Rule::CommonNotion(rule),
            premises: premises.to_vec(),
            step,
        },
    ))
}

/// Judgments equal up to operand order and angle identification.
pub fn judgments_match(env: &Environment, a: &Judgment, b: &Judgment) -> bool {
    let m = |x: &Magnitude, y: &Magnitude| same_magnitude(env, x, y);
    match (a, b) {
        (Judgment::Equal(a1, a2), Judgment::Equal(b1, b2))
        | (Judgment::Identical(a1, a2), Judgment::Identical(b1, b2)) => {
            (m(a1, b1) && m(a2, b2)) || (m(a1, b2) && m(a2, b1))
        }
        (Judgment::Greater(a1, a2), Judgment::Greater(b1, b2)) => m(a1, b1) && m(a2, b2),
        (
            Judgment::Decomp {
                whole: w1,
                parts: p1,
            },
            Judgment::Decomp {
                whole: w2,
                parts: p2,
            },
        ) => {
            m(w1, w2)
                && ((m(&p1[0], &p2[0]) && m(&p1[1], &p2[1]))
                    || (m(&p1[0], &p2[1]) && m(&p1[1], &p2[0])))
        }
        (Judgment::On { .. }, Judgment::On { .. }) => a == b,
        _ => false,
    }
}

/// Instantiate a Theorem: bind its givens to `bindings`, match each
/// hypothesis against the cited premise in order, and record every
/// conclusion.
pub fn apply_theorem(
    env: &mut Environment,
    theorem: &TheoremSchema,
    bindings: &[String],
    premises: &[FactId],
) -> Result<Vec<FactId>> {
    let (_, conclusions) = instantiate_theorem(env, theorem, bindings, premises)?;
    let rule = Rule::Theorem(theorem.number.clone());
    let step = env.begin_step(StepKind::Deduction(rule.clone()), None, bindings.to_vec());
    Ok(conclusions
        .into_iter()
        .map(|j| {
            env.push_fact(
                j,
                Provenance::ByDeduction {
                    rule: rule.clone(),
                    premises: premises.to_vec(),
                    step,
                },
            )
        })
        .collect())
}

/// Checks of [`apply_theorem`] without recording anything.
pub fn instantiate_theorem(
    env: &Environment,
    theorem: &TheoremSchema,
    bindings: &[String],
    premises: &[FactId],
) -> Result<(crate::schema::Substitution, Vec<Judgment>)> {
    let sigma = bind_givens(env, &theorem.givens, bindings).map_err(|e| match e {
        KernelError::SchemaMismatch(m) => KernelError::PatternMismatch(m),
        other => other,
    })?;
    if premises.len() != theorem.hypotheses.len() {
        return Err(KernelError::PatternMismatch(format!(
            "prop {} takes {} premises, {} cited",
            theorem.number,
            theorem.hypotheses.len(),
            premises.len()
        )));
    }
    for (h, &p) in theorem.hypotheses.iter().zip(premises) {
        let want = sigma
            .apply(h)
            .map_err(|e| KernelError::PatternMismatch(e.to_string()))?;
        env.judgment_constructed(&want)?;
        let have = &env.fact(p)?.judgment;
        if !judgments_match(env, &want, have) {
            return Err(KernelError::PatternMismatch(format!(
                "needed {want}, cited {have}"
            )));
        }
    }
    let conclusions = theorem
        .conclusions
        .iter()
        .map(|c| {
            sigma
                .apply(c)
                .map_err(|e| KernelError::PatternMismatch(e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    for c in &conclusions {
        env.judgment_constructed(c)?;
    }
    Ok((sigma, conclusions))
}

/// Why two angle names denote the same angle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SameAngle {
    pub vertex: char,
    /// Arm letters paired across the two names.
    pub arms: [(char, char); 2],
}

/// Two angle names denote one angle when they share a vertex and each arm
/// of one lies on the same ray from the vertex as an arm of the other.
pub fn same_angle(env: &Environment, a1: &ObjectName, a2: &ObjectName) -> Option<SameAngle> {
    let (v1, v2) = (a1.vertex()?, a2.vertex()?);
    if v1 != v2 {
        return None;
    }
    let (p1, q1) = a1.arms()?;
    let (p2, q2) = a2.arms()?;
    for (x, y) in [(p2, q2), (q2, p2)] {
        if env.same_ray(v1, p1, x) && env.same_ray(v1, q1, y) {
            return Some(SameAngle {
                vertex: v1,
                arms: [(p1, x), (q1, y)],
            });
        }
    }
    None
}

pub fn same_magnitude(env: &Environment, a: &Magnitude, b: &Magnitude) -> bool {
    match (a, b) {
        _ if a == b => true,
        (Magnitude::Angle(x), Magnitude::Angle(y)) => same_angle(env, x, y).is_some(),
        _ => false,
    }
}

/// Id of a recorded fact stating `judgment`, up to operand order and angle
/// identification. Nothing is derived.
pub fn holds(env: &Environment, judgment: &Judgment) -> Option<FactId> {
    env.exact(judgment).or_else(|| {
        env.facts()
            .iter()
            .find(|f| judgments_match(env, judgment, &f.judgment))
            .map(|f| f.id)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationTree {
    pub fact: FactId,
    pub judgment: Judgment,
    /// `hypothesis`, `construction`, `definition:<id>`, `diagram` or the rule.
    pub source: String,
    pub step: StepId,
    pub children: Vec<DerivationTree>,
}

impl DerivationTree {
    pub fn leaves(&self) -> Vec<&DerivationTree> {
        if self.children.is_empty() {
            vec![self]
        } else {
            self.children.iter().flat_map(|c| c.leaves()).collect()
        }
    }

    pub fn nodes(&self) -> Vec<&DerivationTree> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.nodes());
        }
        out
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        out.push_str(&format!(
            "{}#{} {}  [{}]\n",
            "  ".repeat(depth),
            self.fact.0,
            self.judgment,
            self.source
        ));
        for c in &self.children {
            c.render_into(depth + 1, out);
        }
    }
}

pub fn provenance_source(p: &Provenance) -> String {
    match p {
        Provenance::ByHypothesis { .. } => "hypothesis".into(),
        Provenance::ByConstruction { .. } => "construction".into(),
        Provenance::ByDefinition { definition, .. } => format!("definition:{definition}"),
        Provenance::ByDeduction { rule, .. } => rule.to_string(),
        Provenance::Diagrammatic { .. } => "diagram".into(),
    }
}

/// Derivation tree of a fact down to its hypothesis, construction,
/// definition and diagram leaves.
pub fn provenance(env: &Environment, fact: FactId) -> Result<DerivationTree> {
    let f = env.fact(fact)?;
    let mut children = Vec::new();
    for &p in f.provenance.premises() {
        if p >= fact {
            return Err(KernelError::UnknownFact(p.0));
        }
        children.push(provenance(env, p)?);
    }
    Ok(DerivationTree {
        fact,
        judgment: f.judgment.clone(),
        source: provenance_source(&f.provenance),
        step: f.provenance.step(),
        children,
    })
}
