//! Syntax trees of `.euclid` theories. Names are kept raw, as written;
//! canonical forms come from [`crate::naming`] when the checker needs them.

use serde::Serialize;

use super::diag::Span;
use crate::deduction::{Judgment, Magnitude};
use crate::error::Result;
use crate::naming::NameKind;
use crate::schema::{Produced, PropNumber, SchemaGiven};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PropKind {
    Problem,
    Theorem,
}

impl PropKind {
    pub fn keyword(self) -> &'static str {
        match self {
            PropKind::Problem => "problem",
            PropKind::Theorem => "theorem",
        }
    }

    /// The closing marker this kind requires.
    pub fn closing(self) -> Closing {
        match self {
            PropKind::Problem => Closing::QedDo,
            PropKind::Theorem => Closing::QedShow,
        }
    }
}

/// Kind word of a declared object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjKind {
    Point,
    Segment,
    Triangle,
    Polygon,
    Angle,
}

impl ObjKind {
    pub fn from_keyword(s: &str) -> Option<Self> {
        Some(match s {
            "point" => ObjKind::Point,
            "segment" => ObjKind::Segment,
            "triangle" => ObjKind::Triangle,
            "polygon" => ObjKind::Polygon,
            "angle" => ObjKind::Angle,
            _ => return None,
        })
    }

    pub fn keyword(self) -> &'static str {
        match self {
            ObjKind::Point => "point",
            ObjKind::Segment => "segment",
            ObjKind::Triangle => "triangle",
            ObjKind::Polygon => "polygon",
            ObjKind::Angle => "angle",
        }
    }

    pub fn name_kind(self) -> NameKind {
        match self {
            ObjKind::Point => NameKind::Point,
            ObjKind::Segment => NameKind::Segment,
            ObjKind::Triangle | ObjKind::Polygon => NameKind::Polygon,
            ObjKind::Angle => NameKind::Angle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    Segment,
    Angle,
    Triangle,
    Polygon,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub kind: TermKind,
    pub letters: String,
}

impl Term {
    pub fn magnitude(&self) -> Result<Magnitude> {
        match self.kind {
            TermKind::Segment => Magnitude::segment(&self.letters),
            TermKind::Angle => Magnitude::angle(&self.letters),
            TermKind::Triangle | TermKind::Polygon => Magnitude::figure(&self.letters),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JudgmentForm {
    Equal(Term, Term),
    Identical(Term, Term),
    /// `x == y + z`
    Sum(Term, Term, Term),
    /// `x == y - z`
    Difference(Term, Term, Term),
    Greater(Term, Term),
    On {
        point: char,
        circle: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JudgmentAst {
    pub form: JudgmentForm,
    pub span: Span,
}

impl Serialize for JudgmentAst {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&super::printer::judgment(self))
    }
}

impl JudgmentAst {
    pub fn to_judgment(&self) -> Result<Judgment> {
        use JudgmentForm as F;
        Ok(match &self.form {
            F::Equal(a, b) => Judgment::equal(a.magnitude()?, b.magnitude()?)?,
            F::Identical(a, b) => Judgment::identical(a.magnitude()?, b.magnitude()?)?,
            F::Sum(w, x, y) => Judgment::sum(w.magnitude()?, x.magnitude()?, y.magnitude()?)?,
            F::Difference(r, w, c) => {
                Judgment::difference(r.magnitude()?, w.magnitude()?, c.magnitude()?)?
            }
            F::Greater(a, b) => Judgment::greater(a.magnitude()?, b.magnitude()?)?,
            F::On { point, circle } => {
                Judgment::on(*point, crate::deduction::CircleLabel(circle.clone()))
            }
        })
    }
}

/// A declaration shared by enunciations and expositions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeclForm {
    Given {
        kind: ObjKind,
        letters: String,
    },
    Hypothesis(JudgmentAst),
    /// Triangle with two equal sides meeting at `apex`; stands for the
    /// hypothesis that those sides are equal.
    Isosceles {
        triangle: String,
        apex: char,
    },
    /// `let point = extend(base, beyond)`
    Extension {
        point: char,
        base: String,
        beyond: char,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decl {
    pub form: DeclForm,
    pub span: Span,
}

impl Decl {
    /// Hypothesis judgments this declaration asserts.
    pub fn hypotheses(&self) -> Result<Vec<Judgment>> {
        match &self.form {
            DeclForm::Hypothesis(j) => Ok(vec![j.to_judgment()?]),
            DeclForm::Isosceles { triangle, apex } => {
                let others: Vec<char> = triangle.chars().filter(|c| c != apex).collect();
                let side = |o: char| Magnitude::segment(&format!("{apex}{o}"));
                Ok(vec![Judgment::equal(side(others[0])?, side(others[1])?)?])
            }
            _ => Ok(Vec::new()),
        }
    }

    pub fn schema_given(&self) -> Option<SchemaGiven> {
        match &self.form {
            DeclForm::Given { kind, letters } => Some(SchemaGiven::Object {
                kind: kind.name_kind(),
                letters: letters.clone(),
            }),
            DeclForm::Isosceles { triangle, .. } => Some(SchemaGiven::Object {
                kind: NameKind::Polygon,
                letters: triangle.clone(),
            }),
            DeclForm::Extension {
                point,
                base,
                beyond,
            } => Some(SchemaGiven::Extension {
                base: base.clone(),
                beyond: *beyond,
                point: *point,
            }),
            DeclForm::Hypothesis(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GoalKind {
    Show,
    Produce,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Goal {
    Show(Vec<JudgmentAst>),
    Produce {
        kind: ObjKind,
        letters: String,
        on: Option<String>,
        required: Vec<JudgmentAst>,
    },
}

impl Goal {
    pub fn kind(&self) -> GoalKind {
        match self {
            Goal::Show(_) => GoalKind::Show,
            Goal::Produce { .. } => GoalKind::Produce,
        }
    }

    pub fn judgments(&self) -> &[JudgmentAst] {
        match self {
            Goal::Show(js) => js,
            Goal::Produce { required, .. } => required,
        }
    }

    pub fn produced(&self) -> Option<Produced> {
        match self {
            Goal::Produce {
                kind, letters, on, ..
            } => Some(Produced {
                kind: kind.name_kind(),
                letters: letters.clone(),
                on: on.clone(),
            }),
            Goal::Show(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enunciation {
    pub prose: String,
    pub decls: Vec<Decl>,
    pub goal: Goal,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum Specification {
    Stated { goal: Goal, span: Span },
    Elided { kind: GoalKind, span: Span },
}

impl Specification {
    pub fn span(&self) -> Span {
        match self {
            Specification::Stated { span, .. } | Specification::Elided { span, .. } => *span,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionOp {
    Line {
        name: String,
        p: char,
        q: char,
    },
    Circle {
        label: String,
        center: char,
        radius: String,
    },
    Meet {
        name: char,
        c1: String,
        c2: String,
    },
    Extend {
        name: char,
        segment: String,
        beyond: char,
        circle: Option<String>,
    },
    Pick {
        name: char,
        segment: String,
    },
    Cut {
        name: char,
        segment: String,
        circle: String,
    },
    Derived {
        names: Vec<char>,
        prop: PropNumber,
        args: Vec<String>,
    },
    Diagram(JudgmentAst),
}

impl ConstructionOp {
    /// Point letters this step introduces.
    pub fn fresh_points(&self) -> Vec<char> {
        match self {
            ConstructionOp::Meet { name, .. }
            | ConstructionOp::Extend { name, .. }
            | ConstructionOp::Pick { name, .. }
            | ConstructionOp::Cut { name, .. } => vec![*name],
            ConstructionOp::Derived { names, .. } => names.clone(),
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionStep {
    pub op: ConstructionOp,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "cite", content = "value", rename_all = "snake_case")]
pub enum Citation {
    Label(String),
    Inline(JudgmentAst),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum RuleAst {
    /// Common Notion `n` (1 to 5).
    CommonNotion {
        n: u8,
        cites: Vec<Citation>,
    },
    Radius {
        circle: String,
    },
    Identity,
    Theorem {
        prop: PropNumber,
        bindings: Vec<String>,
        cites: Vec<Citation>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofStep {
    pub label: String,
    pub judgments: Vec<JudgmentAst>,
    pub rule: RuleAst,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Closing {
    QedDo,
    QedShow,
}

impl Closing {
    pub fn keyword(self) -> &'static str {
        match self {
            Closing::QedDo => "qed-do",
            Closing::QedShow => "qed-show",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    pub marker: Closing,
    /// `None` when elided.
    pub prose: Option<String>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropositionAst {
    pub number: PropNumber,
    pub kind: PropKind,
    pub enunciation: Enunciation,
    pub exposition: Vec<Decl>,
    pub specification: Specification,
    pub construction: Vec<ConstructionStep>,
    pub proof: Vec<ProofStep>,
    pub conclusion: Conclusion,
    pub span: Span,
}

/// A theorem admitted without proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitiveAst {
    pub number: PropNumber,
    pub enunciation: Enunciation,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "item", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Item {
    Primitive(PrimitiveAst),
    Proposition(PropositionAst),
}

impl Item {
    pub fn number(&self) -> &PropNumber {
        match self {
            Item::Primitive(p) => &p.number,
            Item::Proposition(p) => &p.number,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoryAst {
    pub name: String,
    pub items: Vec<Item>,
}

impl TheoryAst {
    pub fn primitives(&self) -> impl Iterator<Item = &PrimitiveAst> {
        self.items.iter().filter_map(|i| match i {
            Item::Primitive(p) => Some(p),
            Item::Proposition(_) => None,
        })
    }

    pub fn propositions(&self) -> impl Iterator<Item = &PropositionAst> {
        self.items.iter().filter_map(|i| match i {
            Item::Proposition(p) => Some(p),
            Item::Primitive(_) => None,
        })
    }

    pub fn proposition_mut(&mut self, number: &str) -> Option<&mut PropositionAst> {
        let n: PropNumber = number.parse().ok()?;
        self.items.iter_mut().find_map(|i| match i {
            Item::Proposition(p) if p.number == n => Some(p),
            _ => None,
        })
    }
}
