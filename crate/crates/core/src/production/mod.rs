//! Geometrical production.
//!
//! An [`Environment`] holds everything constructed while checking one
//! proposition: the registry of named objects, collinear chains, circles,
//! the append-only fact store and the ordered list of steps. Objects only
//! come into being through the operations here: the three postulates, the
//! common-radius intersection postulate, point selection, and previously
//! verified Problems used as derived operations.

mod trace;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

pub use trace::{ProductionGraph, TraceNode};

use crate::deduction::{same_magnitude, CircleLabel, Definition, Judgment, Magnitude, Rule};
use crate::error::{KernelError, Result};
use crate::naming::{canonicalize, NameKind, ObjectName};
use crate::schema::{bind_givens, ProblemSchema, PropNumber};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ObjectId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct StepId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct FactId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// Introduced generically by the exposition.
    Given(StepId),
    Produced(StepId),
}

impl Origin {
    pub fn step(self) -> StepId {
        match self {
            Origin::Given(s) | Origin::Produced(s) => s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObjectEntry {
    pub id: ObjectId,
    pub name: ObjectName,
    pub origin: Origin,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Circle {
    pub label: CircleLabel,
    pub center: char,
    pub radius: ObjectName,
    pub step: StepId,
}

/// Ordered collinear points. No point appears twice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub points: Vec<char>,
    pub step: StepId,
}

impl Chain {
    fn position(&self, c: char) -> Option<usize> {
        self.points.iter().position(|&p| p == c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum Provenance {
    ByHypothesis {
        step: StepId,
    },
    ByConstruction {
        step: StepId,
    },
    ByDefinition {
        definition: Definition,
        step: StepId,
    },
    ByDeduction {
        rule: Rule,
        premises: Vec<FactId>,
        step: StepId,
    },
    Diagrammatic {
        step: StepId,
    },
}

impl Provenance {
    pub fn step(&self) -> StepId {
        match self {
            Provenance::ByHypothesis { step }
            | Provenance::ByConstruction { step }
            | Provenance::ByDefinition { step, .. }
            | Provenance::ByDeduction { step, .. }
            | Provenance::Diagrammatic { step } => *step,
        }
    }

    pub fn premises(&self) -> &[FactId] {
        match self {
            Provenance::ByDeduction { premises, .. } => premises,
            _ => &[],
        }
    }

    pub fn is_leaf(&self) -> bool {
        !matches!(self, Provenance::ByDeduction { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub id: FactId,
    pub judgment: Judgment,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "op", content = "ref", rename_all = "snake_case")]
pub enum StepKind {
    Given,
    Hypothesis,
    Line,
    Circle,
    Meet,
    Extend,
    ExtendToCircle,
    Pick,
    Cut,
    Derived(PropNumber),
    Diagram,
    Definition(Definition),
    Deduction(Rule),
}

impl StepKind {
    pub fn is_production(&self) -> bool {
        matches!(
            self,
            StepKind::Line
                | StepKind::Circle
                | StepKind::Meet
                | StepKind::Extend
                | StepKind::ExtendToCircle
                | StepKind::Pick
                | StepKind::Cut
                | StepKind::Derived(_)
        )
    }

    pub fn describe(&self) -> String {
        match self {
            StepKind::Given => "given".into(),
            StepKind::Hypothesis => "hypothesis".into(),
            StepKind::Line => "line".into(),
            StepKind::Circle => "circle".into(),
            StepKind::Meet => "meet".into(),
            StepKind::Extend => "extend".into(),
            StepKind::ExtendToCircle => "extend-to-circle".into(),
            StepKind::Pick => "pick".into(),
            StepKind::Cut => "cut".into(),
            StepKind::Derived(n) => format!("apply {n}"),
            StepKind::Diagram => "diagram".into(),
            StepKind::Definition(d) => d.to_string(),
            StepKind::Deduction(r) => r.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub id: StepId,
    pub kind: StepKind,
    pub label: Option<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    #[default]
    Exposition,
    Construction,
    Proof,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Environment {
    points: BTreeMap<char, Origin>,
    registry: BTreeMap<ObjectName, ObjectEntry>,
    chains: Vec<Chain>,
    circles: BTreeMap<CircleLabel, Circle>,
    facts: Vec<Fact>,
    index: BTreeMap<Judgment, FactId>,
    steps: Vec<Step>,
    /// Endpoints produced by a bare extension and not yet pinned by any
    /// fact; such a line may be taken as long as needed.
    free_ends: BTreeSet<char>,
    phase: Phase,
    next_object: usize,
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn set_phase(&mut self, phase: Phase) {
        self.phase = phase;
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn fact(&self, id: FactId) -> Result<&Fact> {
        self.facts.get(id.0).ok_or(KernelError::UnknownFact(id.0))
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn step(&self, id: StepId) -> &Step {
        &self.steps[id.0]
    }

    pub fn registry(&self) -> impl Iterator<Item = &ObjectEntry> {
        self.registry.values()
    }

    pub fn registry_len(&self) -> usize {
        self.registry.len()
    }

    pub fn lookup(&self, name: &ObjectName) -> Option<&ObjectEntry> {
        self.registry.get(name)
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn circle(&self, label: &CircleLabel) -> Result<&Circle> {
        self.circles
            .get(label)
            .ok_or_else(|| KernelError::UnknownCircle(label.0.clone()))
    }

    pub fn circles(&self) -> impl Iterator<Item = &Circle> {
        self.circles.values()
    }

    pub fn has_point(&self, c: char) -> bool {
        self.points.contains_key(&c)
    }

    pub fn point_origin(&self, c: char) -> Option<Origin> {
        self.points.get(&c).copied()
    }

    pub fn points(&self) -> impl Iterator<Item = char> + '_ {
        self.points.keys().copied()
    }

    /// First recorded fact with exactly this (normalized) judgment.
    pub fn exact(&self, j: &Judgment) -> Option<FactId> {
        self.index.get(j).copied()
    }

    pub fn is_free_end(&self, c: char) -> bool {
        self.free_ends.contains(&c)
    }

    // ----- steps and facts -------------------------------------------------

    pub fn begin_step(
        &mut self,
        kind: StepKind,
        label: Option<String>,
        inputs: Vec<String>,
    ) -> StepId {
        let id = StepId(self.steps.len());
        self.steps.push(Step {
            id,
            kind,
            label,
            inputs,
            outputs: Vec::new(),
        });
        id
    }

    fn output(&mut self, step: StepId, what: impl Into<String>) {
        self.steps[step.0].outputs.push(what.into());
    }

    pub(crate) fn push_fact(&mut self, judgment: Judgment, provenance: Provenance) -> FactId {
        self.push_fact_inner(judgment, provenance, false)
    }

    fn push_fact_inner(
        &mut self,
        judgment: Judgment,
        provenance: Provenance,
        chain_fact: bool,
    ) -> FactId {
        let id = FactId(self.facts.len());
        if !chain_fact {
            for p in judgment.points() {
                self.free_ends.remove(&p);
            }
        }
        self.index.entry(judgment.clone()).or_insert(id);
        self.facts.push(Fact {
            id,
            judgment,
            provenance,
        });
        id
    }

    // ----- registry ----------------------------------------------------------

    fn insert_entry(&mut self, name: ObjectName, origin: Origin) -> ObjectId {
        if let Some(e) = self.registry.get(&name) {
            return e.id;
        }
        let id = ObjectId(self.next_object);
        self.next_object += 1;
        self.output(origin.step(), name.to_string());
        self.registry
            .insert(name.clone(), ObjectEntry { id, name, origin });
        id
    }

    fn fresh_point(&mut self, c: char, origin: Origin) -> Result<ObjectId> {
        if self.points.contains_key(&c) {
            return Err(KernelError::NameCollision(c));
        }
        let name = ObjectName::point(c)?;
        self.points.insert(c, origin);
        Ok(self.insert_entry(name, origin))
    }

    fn ensure_point(&mut self, c: char, origin: Origin) -> Result<()> {
        if !self.points.contains_key(&c) {
            self.fresh_point(c, origin)?;
        }
        Ok(())
    }

    /// Register segment `pq`, opening a new chain unless `p` and `q` already
    /// share one. A new chain starts at the older point, so its direction
    /// does not depend on the letters chosen.
    fn ensure_segment(&mut self, p: char, q: char, origin: Origin) -> Result<ObjectId> {
        let name = ObjectName::segment(p, q)?;
        if let Some(e) = self.registry.get(&name) {
            return Ok(e.id);
        }
        if self.chain_with(&[p, q]).is_none() {
            let age = |c: char| self.points.get(&c).map(|o| o.step());
            let points = if age(q) < age(p) {
                vec![q, p]
            } else {
                vec![p, q]
            };
            self.chains.push(Chain {
                points,
                step: origin.step(),
            });
        }
        Ok(self.insert_entry(name, origin))
    }

    // ----- chains ------------------------------------------------------------

    pub fn chain_with(&self, pts: &[char]) -> Option<usize> {
        self.chains
            .iter()
            .position(|ch| pts.iter().all(|&p| ch.position(p).is_some()))
    }

    /// True when `b` lies strictly between `a` and `c` on one chain.
    pub fn between(&self, a: char, b: char, c: char) -> bool {
        self.chains.iter().any(
            |ch| match (ch.position(a), ch.position(b), ch.position(c)) {
                (Some(pa), Some(pb), Some(pc)) => (pa < pb && pb < pc) || (pc < pb && pb < pa),
                _ => false,
            },
        )
    }

    /// True when `x` and `y` lie on the same ray from `v`.
    pub fn same_ray(&self, v: char, x: char, y: char) -> bool {
        if x == y {
            return x != v;
        }
        self.chains.iter().any(
            |ch| match (ch.position(v), ch.position(x), ch.position(y)) {
                (Some(pv), Some(px), Some(py)) => (px > pv) == (py > pv),
                _ => false,
            },
        )
    }

    /// Record `XZ ≡ XY + YZ` for every ordered triple of the chain that
    /// involves `new`.
    fn emit_chain_facts(&mut self, chain: usize, new: char, step: StepId) -> Result<Vec<FactId>> {
        let pts = self.chains[chain].points.clone();
        let mut out = Vec::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    if ![pts[i], pts[j], pts[k]].contains(&new) {
                        continue;
                    }
                    let j = Judgment::sum(
                        Magnitude::Segment(ObjectName::segment(pts[i], pts[k])?),
                        Magnitude::Segment(ObjectName::segment(pts[i], pts[j])?),
                        Magnitude::Segment(ObjectName::segment(pts[j], pts[k])?),
                    )?;
                    out.push(self.push_fact_inner(j, Provenance::ByConstruction { step }, true));
                }
            }
        }
        Ok(out)
    }

    /// Insert `new` strictly between `anchor` and `far` on `chain`, using the
    /// length `measure` of anchor-to-new to settle where it falls relative to
    /// points already lying between them.
    fn place_between(
        &mut self,
        chain: usize,
        anchor: char,
        far: char,
        new: char,
        measure: &Magnitude,
    ) -> Result<()> {
        let pts = self.chains[chain].points.clone();
        let (pa, pf) = match (
            self.chains[chain].position(anchor),
            self.chains[chain].position(far),
        ) {
            (Some(a), Some(f)) => (a, f),
            _ => {
                return Err(KernelError::UnknownSegment(
                    ObjectName::segment(anchor, far)?.to_string(),
                ))
            }
        };
        let forward = pf > pa;
        let interior: Vec<usize> = if forward {
            (pa + 1..pf).collect()
        } else {
            (pf + 1..pa).rev().collect()
        };
        let ambiguous = || KernelError::AmbiguousPlacement {
            point: new,
            segment: format!("{anchor}{far}"),
        };
        // index into `interior` of the first point lying beyond `new`
        let mut cut = interior.len();
        for (k, &pos) in interior.iter().enumerate() {
            let to_interior = Magnitude::Segment(ObjectName::segment(anchor, pts[pos])?);
            let past = self.exceeds(measure, &to_interior);
            let before = self.exceeds(&to_interior, measure);
            match (past, before) {
                (true, false) if cut == interior.len() => {}
                (false, true) if cut == interior.len() => cut = k,
                (false, true) => {}
                _ => return Err(ambiguous()),
            }
        }
        let insert_at = if forward {
            interior.get(cut).copied().unwrap_or(pf)
        } else {
            interior.get(cut).map(|p| p + 1).unwrap_or(pf + 1)
        };
        self.chains[chain].points.insert(insert_at, new);
        Ok(())
    }

    /// Bounded comparison: `big > small` follows from a stored greater-than
    /// or decomposition fact, allowing one stored equality on either side,
    /// or `big` runs to a freely produced endpoint.
    pub fn exceeds(&self, big: &Magnitude, small: &Magnitude) -> bool {
        let mut lefts = vec![big.clone()];
        for f in &self.facts {
            if let Judgment::Equal(a, b) | Judgment::Identical(a, b) = &f.judgment {
                if same_magnitude(self, a, big) {
                    lefts.push(b.clone());
                } else if same_magnitude(self, b, big) {
                    lefts.push(a.clone());
                }
            }
        }
        let matches_small = |s: &Magnitude| {
            same_magnitude(self, s, small)
                || self.facts.iter().any(|f| match &f.judgment {
                    Judgment::Equal(a, b) | Judgment::Identical(a, b) => {
                        (same_magnitude(self, a, s) && same_magnitude(self, b, small))
                            || (same_magnitude(self, b, s) && same_magnitude(self, a, small))
                    }
                    _ => false,
                })
        };
        for x in &lefts {
            if let Magnitude::Segment(n) = x {
                if let Some((p, q)) = n.endpoints() {
                    let free = |e: char, o: char| {
                        self.free_ends.contains(&e)
                            && self.chain_with(&[e, o]).is_some_and(|i| {
                                let pts = &self.chains[i].points;
                                pts.first() == Some(&e) || pts.last() == Some(&e)
                            })
                    };
                    if small.sort() == x.sort() && (free(p, q) || free(q, p)) {
                        return true;
                    }
                }
            }
            for f in &self.facts {
                let found = match &f.judgment {
                    Judgment::Greater(a, s) if same_magnitude(self, a, x) => matches_small(s),
                    Judgment::Decomp { whole, parts } if same_magnitude(self, whole, x) => {
                        parts.iter().any(&matches_small)
                    }
                    _ => false,
                };
                if found {
                    return true;
                }
            }
        }
        false
    }

    // ----- constructedness ---------------------------------------------------

    pub fn segment_constructed(&self, p: char, q: char) -> bool {
        match ObjectName::segment(p, q) {
            Ok(n) => self.registry.contains_key(&n) || self.chain_with(&[p, q]).is_some(),
            Err(_) => false,
        }
    }

    pub fn name_constructed(&self, name: &ObjectName) -> bool {
        let l: Vec<char> = name.chars().collect();
        match name.kind() {
            NameKind::Point => self.has_point(l[0]),
            NameKind::Segment => self.segment_constructed(l[0], l[1]),
            NameKind::Angle => {
                self.segment_constructed(l[1], l[0]) && self.segment_constructed(l[1], l[2])
            }
            NameKind::Polygon => {
                self.registry.contains_key(name)
                    || (0..l.len()).all(|i| self.segment_constructed(l[i], l[(i + 1) % l.len()]))
            }
        }
    }

    pub fn is_constructed(&self, m: &Magnitude) -> bool {
        self.name_constructed(m.name())
    }

    /// Every object a judgment mentions has been produced.
    pub fn judgment_constructed(&self, j: &Judgment) -> Result<()> {
        if let Judgment::On { point, circle } = j {
            self.circle(circle)?;
            if !self.has_point(*point) {
                return Err(KernelError::UnconstructedObject(point.to_string()));
            }
            return Ok(());
        }
        for m in j.magnitudes() {
            if !self.is_constructed(m) {
                return Err(KernelError::UnconstructedObject(m.to_string()));
            }
        }
        Ok(())
    }

    fn require_point(&self, c: char) -> Result<()> {
        if self.has_point(c) {
            Ok(())
        } else {
            Err(KernelError::UnknownPoint(c))
        }
    }

    fn require_segment(&self, raw: &str) -> Result<(char, char)> {
        let name = canonicalize(NameKind::Segment, raw)?;
        let mut it = raw.chars();
        let (p, q) = (it.next().unwrap_or('?'), it.next().unwrap_or('?'));
        if !self.segment_constructed(p, q) {
            return Err(KernelError::UnknownSegment(name.to_string()));
        }
        Ok((p, q))
    }

    // ----- exposition --------------------------------------------------------

    /// Introduce a generic object named by the exposition.
    pub fn register_given(&mut self, kind: NameKind, raw: &str) -> Result<ObjectId> {
        let name = canonicalize(kind, raw)?;
        if self.registry.contains_key(&name)
            || (kind == NameKind::Point && self.has_point(name.chars().next().unwrap_or('?')))
        {
            return Err(KernelError::DuplicateObjectName(name.to_string()));
        }
        let step = self.begin_step(StepKind::Given, None, vec![format!("{kind} {raw}")]);
        let origin = Origin::Given(step);
        let letters: Vec<char> = raw.chars().collect();
        for &c in &letters {
            self.ensure_point(c, origin)?;
        }
        match kind {
            NameKind::Point => {}
            NameKind::Segment => {
                self.ensure_segment(letters[0], letters[1], origin)?;
            }
            NameKind::Angle => {
                self.ensure_segment(letters[1], letters[0], origin)?;
                self.ensure_segment(letters[1], letters[2], origin)?;
            }
            NameKind::Polygon => {
                let n = letters.len();
                for i in 0..n {
                    self.ensure_segment(letters[i], letters[(i + 1) % n], origin)?;
                }
                for i in 0..n {
                    let raw_angle: String =
                        [letters[(i + n - 1) % n], letters[i], letters[(i + 1) % n]]
                            .iter()
                            .collect();
                    let angle = canonicalize(NameKind::Angle, &raw_angle)?;
                    self.insert_entry(angle, origin);
                }
            }
        }
        Ok(self.insert_entry(name, origin))
    }

    // ----- postulates --------------------------------------------------------

    /// Post. 1: draw the segment between two different points.
    pub fn apply_line(&mut self, p: char, q: char) -> Result<ObjectId> {
        self.apply_line_labeled(p, q, None)
    }

    pub fn apply_line_labeled(
        &mut self,
        p: char,
        q: char,
        label: Option<String>,
    ) -> Result<ObjectId> {
        self.require_point(p)?;
        self.require_point(q)?;
        if p == q {
            return Err(KernelError::DegenerateSegment(p));
        }
        let step = self.begin_step(StepKind::Line, label, vec![p.to_string(), q.to_string()]);
        self.ensure_segment(p, q, Origin::Produced(step))
    }

    /// Post. 3: draw a circle about an endpoint of the given radius.
    pub fn apply_circle(&mut self, label: CircleLabel, center: char, radius: &str) -> Result<()> {
        let (p, q) = self.require_segment(radius)?;
        let radius = ObjectName::segment(p, q)?;
        if center != p && center != q {
            return Err(KernelError::CenterNotOnRadius {
                center,
                radius: radius.to_string(),
            });
        }
        if self.circles.contains_key(&label) {
            return Err(KernelError::DuplicateCircle(label.0));
        }
        let step = self.begin_step(
            StepKind::Circle,
            Some(label.0.clone()),
            vec![center.to_string(), radius.to_string()],
        );
        self.output(step, label.0.clone());
        self.circles.insert(
            label.clone(),
            Circle {
                label,
                center,
                radius,
                step,
            },
        );
        Ok(())
    }

    /// Intersection of two circles sharing a radius.
    pub fn apply_meet(
        &mut self,
        c1: &CircleLabel,
        c2: &CircleLabel,
        name: char,
    ) -> Result<ObjectId> {
        let first = self.circle(c1)?.clone();
        let second = self.circle(c2)?.clone();
        if c1 == c2 || (first.center == second.center && first.radius == second.radius) {
            return Err(KernelError::SameCircle(c1.0.clone()));
        }
        if first.radius != second.radius {
            return Err(KernelError::NoCommonRadius(c1.0.clone(), c2.0.clone()));
        }
        if self.has_point(name) {
            return Err(KernelError::NameCollision(name));
        }
        let step = self.begin_step(StepKind::Meet, None, vec![c1.0.clone(), c2.0.clone()]);
        let id = self.fresh_point(name, Origin::Produced(step))?;
        self.push_fact(
            Judgment::on(name, c1.clone()),
            Provenance::ByConstruction { step },
        );
        self.push_fact(
            Judgment::on(name, c2.clone()),
            Provenance::ByConstruction { step },
        );
        Ok(id)
    }

    /// Post. 2: produce `seg` beyond its endpoint `beyond` to a fresh point.
    pub fn apply_extend(&mut self, seg: &str, beyond: char, name: char) -> Result<ObjectId> {
        self.extend_impl(seg, beyond, name, None)
    }

    /// Post. 2 continued until the line meets `circle`.
    ///
    /// The circle must be centered on one endpoint of `seg`. When it is
    /// centered on the endpoint not being produced, that endpoint's distance
    /// to `beyond` must be shown shorter than the radius.
    pub fn apply_extend_to_circle(
        &mut self,
        seg: &str,
        beyond: char,
        circle: &CircleLabel,
        name: char,
    ) -> Result<ObjectId> {
        self.extend_impl(seg, beyond, name, Some(circle))
    }

    fn extend_impl(
        &mut self,
        seg: &str,
        beyond: char,
        name: char,
        circle: Option<&CircleLabel>,
    ) -> Result<ObjectId> {
        let (p, q) = self.require_segment(seg)?;
        let start = if beyond == q {
            p
        } else if beyond == p {
            q
        } else {
            return Err(KernelError::NotChainEnd {
                segment: seg.to_string(),
                point: beyond,
            });
        };
        let chain = self
            .chain_with(&[p, q])
            .ok_or_else(|| KernelError::UnknownSegment(seg.to_string()))?;
        let pts = &self.chains[chain].points;
        let at_front = if pts.last() == Some(&beyond) {
            false
        } else if pts.first() == Some(&beyond) {
            true
        } else {
            return Err(KernelError::NotChainEnd {
                segment: seg.to_string(),
                point: beyond,
            });
        };
        if self.has_point(name) {
            return Err(KernelError::NameCollision(name));
        }
        if let Some(label) = circle {
            let c = self.circle(label)?.clone();
            if c.center == start {
                let produced = Magnitude::Segment(ObjectName::segment(start, beyond)?);
                let radius = Magnitude::Segment(c.radius.clone());
                if !self.exceeds(&radius, &produced) {
                    return Err(KernelError::UnsatisfiedHypothesis(format!(
                        "{radius} > {produced} (to reach circle {label} beyond {beyond})"
                    )));
                }
            } else if c.center != beyond {
                return Err(KernelError::CenterNotOnRadius {
                    center: c.center,
                    radius: seg.to_string(),
                });
            }
        }
        let kind = if circle.is_some() {
            StepKind::ExtendToCircle
        } else {
            StepKind::Extend
        };
        let mut inputs = vec![seg.to_string(), beyond.to_string()];
        if let Some(l) = circle {
            inputs.push(l.0.clone());
        }
        let step = self.begin_step(kind, None, inputs);
        let origin = Origin::Produced(step);
        let id = self.fresh_point(name, origin)?;
        if at_front {
            self.chains[chain].points.insert(0, name);
        } else {
            self.chains[chain].points.push(name);
        }
        self.ensure_segment(beyond, name, origin)?;
        self.ensure_segment(start, name, origin)?;
        self.emit_chain_facts(chain, name, step)?;
        self.free_ends.remove(&beyond);
        match circle {
            Some(label) => {
                self.push_fact(
                    Judgment::on(name, label.clone()),
                    Provenance::ByConstruction { step },
                );
            }
            None => {
                self.free_ends.insert(name);
            }
        }
        Ok(id)
    }

    /// Take a fresh point somewhere strictly inside `seg`.
    pub fn pick_on(&mut self, seg: &str, name: char) -> Result<ObjectId> {
        let (p, q) = self.require_segment(seg)?;
        let chain = self
            .chain_with(&[p, q])
            .ok_or_else(|| KernelError::UnknownSegment(seg.to_string()))?;
        let (pp, pq) = (
            self.chains[chain].position(p).unwrap_or(0),
            self.chains[chain].position(q).unwrap_or(0),
        );
        if pp.abs_diff(pq) != 1 {
            return Err(KernelError::AmbiguousPlacement {
                point: name,
                segment: seg.to_string(),
            });
        }
        if self.has_point(name) {
            return Err(KernelError::NameCollision(name));
        }
        let step = self.begin_step(StepKind::Pick, None, vec![seg.to_string()]);
        let id = self.fresh_point(name, Origin::Produced(step))?;
        self.chains[chain].points.insert(pp.max(pq), name);
        self.emit_chain_facts(chain, name, step)?;
        Ok(id)
    }

    /// Mark where `circle`, centered on an endpoint of `seg`, crosses it.
    /// The segment must be shown longer than the radius.
    pub fn apply_cut(&mut self, seg: &str, circle: &CircleLabel, name: char) -> Result<ObjectId> {
        let (p, q) = self.require_segment(seg)?;
        let c = self.circle(circle)?.clone();
        let far = if c.center == p {
            q
        } else if c.center == q {
            p
        } else {
            return Err(KernelError::CenterNotOnRadius {
                center: c.center,
                radius: seg.to_string(),
            });
        };
        let whole = Magnitude::Segment(ObjectName::segment(p, q)?);
        let radius = Magnitude::Segment(c.radius.clone());
        if !self.exceeds(&whole, &radius) {
            return Err(KernelError::UnsatisfiedHypothesis(format!(
                "{whole} > {radius}"
            )));
        }
        if self.has_point(name) {
            return Err(KernelError::NameCollision(name));
        }
        let chain = self
            .chain_with(&[p, q])
            .ok_or_else(|| KernelError::UnknownSegment(seg.to_string()))?;
        let step = self.begin_step(StepKind::Cut, None, vec![seg.to_string(), circle.0.clone()]);
        self.place_between(chain, c.center, far, name, &radius)?;
        let id = self.fresh_point(name, Origin::Produced(step))?;
        self.emit_chain_facts(chain, name, step)?;
        self.push_fact(
            Judgment::on(name, circle.clone()),
            Provenance::ByConstruction { step },
        );
        Ok(id)
    }

    /// Run a verified Problem as a derived operation: bind its givens to
    /// `args`, check its hypotheses, name its produced points `names`, and
    /// import its goal judgments as construction facts.
    pub fn apply_derived(
        &mut self,
        schema: &ProblemSchema,
        args: &[String],
        names: &[char],
    ) -> Result<StepId> {
        let mut sigma = bind_givens(self, &schema.givens, args)?;
        for h in &schema.hypotheses {
            let inst = sigma.apply(h)?;
            let ok = match &inst {
                Judgment::Greater(a, b) => self.exceeds(a, b),
                other => crate::deduction::holds(self, other).is_some(),
            };
            if !ok {
                return Err(KernelError::UnsatisfiedHypothesis(inst.to_string()));
            }
        }
        let fresh = schema.fresh_letters();
        if fresh.len() != names.len() {
            return Err(KernelError::SchemaMismatch(format!(
                "{} produces {} new point(s), {} named",
                schema.number,
                fresh.len(),
                names.len()
            )));
        }
        for (&f, &n) in fresh.iter().zip(names) {
            if self.has_point(n) {
                return Err(KernelError::NameCollision(n));
            }
            sigma.bind(f, n)?;
        }
        let goals = schema
            .goals
            .iter()
            .map(|g| sigma.apply(g))
            .collect::<Result<Vec<_>>>()?;
        let produced_raw = sigma.apply_str(&schema.produced.letters);
        let produced = canonicalize(schema.produced.kind, &produced_raw)?;
        let placement = match &schema.produced.on {
            Some(seg) => {
                let raw = sigma.apply_str(seg);
                let (a, b) = self.require_segment(&raw)?;
                Some((a, b))
            }
            None => None,
        };

        let step = self.begin_step(
            StepKind::Derived(schema.number.clone()),
            None,
            args.to_vec(),
        );
        let origin = Origin::Produced(step);
        for &n in names {
            self.fresh_point(n, origin)?;
        }
        for g in &goals {
            self.push_fact(g.clone(), Provenance::ByConstruction { step });
        }
        if let (Some((anchor, far)), [new]) = (placement, names) {
            let chain = self
                .chain_with(&[anchor, far])
                .ok_or_else(|| KernelError::UnknownSegment(format!("{anchor}{far}")))?;
            let measure = Magnitude::Segment(ObjectName::segment(anchor, *new)?);
            self.place_between(chain, anchor, far, *new, &measure)?;
            self.emit_chain_facts(chain, *new, step)?;
        }
        let mut needed = Vec::new();
        for g in &goals {
            for m in g.magnitudes() {
                needed.push(m.name().clone());
            }
        }
        needed.push(produced.clone());
        for name in needed {
            let l: Vec<char> = name.chars().collect();
            match name.kind() {
                NameKind::Point => {}
                NameKind::Segment => {
                    self.ensure_segment(l[0], l[1], origin)?;
                }
                NameKind::Angle => {
                    self.ensure_segment(l[1], l[0], origin)?;
                    self.ensure_segment(l[1], l[2], origin)?;
                }
                NameKind::Polygon => {
                    for i in 0..l.len() {
                        self.ensure_segment(l[i], l[(i + 1) % l.len()], origin)?;
                    }
                }
            }
        }
        if produced.kind() != NameKind::Point {
            self.insert_entry(produced, origin);
        }
        Ok(step)
    }

    /// Declare a decomposition read off the figure rather than derived.
    pub fn record_diagram(&mut self, judgment: Judgment) -> Result<FactId> {
        if !judgment.is_decomposition() {
            return Err(KernelError::NotADecomposition(judgment.to_string()));
        }
        for m in judgment.magnitudes() {
            if !self.is_constructed(m) {
                return Err(KernelError::UnknownObject(m.to_string()));
            }
        }
        let step = self.begin_step(StepKind::Diagram, None, vec![judgment.to_string()]);
        Ok(self.push_fact(judgment, Provenance::Diagrammatic { step }))
    }

    pub fn production_trace(&self) -> ProductionGraph {
        ProductionGraph::build(self)
    }
}

#[cfg(test)]
mod tests;
