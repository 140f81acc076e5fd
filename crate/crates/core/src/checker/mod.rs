//! End-to-end checking of six-part propositions and whole theories.
//!
//! A proposition is checked in a fresh [`Environment`]: the exposition
//! instantiates the enunciation with generic objects, the construction is
//! replayed through the production kernel, the proof through the deduction
//! engine, and the conclusion generalizes back only if no fact outside the
//! instantiated hypotheses fed the goals.

mod report;

use std::collections::{BTreeMap, BTreeSet};

pub use report::{
    DeductionNode, GoalStatus, PrimitiveEntry, TheoryReport, Verdict, VerificationReport,
};

use crate::deduction::{
    apply_cn, apply_identity, apply_theorem, assert_hypothesis, check_cn, holds,
    instantiate_theorem, judgments_match, provenance, radii_equal, CircleLabel, CommonNotion,
    Judgment, Magnitude,
};
use crate::error::KernelError;
use crate::lang::ast::*;
use crate::lang::diag::{Diagnostic, DiagnosticKind as D, Span};
use crate::naming::{canonicalize, NameKind};
use crate::production::{Environment, FactId, Phase, Provenance};
use crate::schema::{
    ExportedSchema, ProblemSchema, PropNumber, SchemaGiven, Substitution, TheoremSchema,
};

/// Schemas of everything verified or admitted so far.
#[derive(Debug, Clone, Default)]
pub struct Context {
    schemas: BTreeMap<PropNumber, ExportedSchema>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, schema: ExportedSchema) {
        self.schemas.insert(schema.number().clone(), schema);
    }

    pub fn get(&self, n: &PropNumber) -> Option<&ExportedSchema> {
        self.schemas.get(n)
    }
}

fn kernel_diag(e: &KernelError, span: Span) -> Diagnostic {
    Diagnostic::new(e.diagnostic_kind(), span, e.to_string())
}

fn judgment_of(j: &JudgmentAst) -> Result<Judgment, Diagnostic> {
    j.to_judgment().map_err(|e| kernel_diag(&e, j.span))
}

struct Statement {
    givens: Vec<SchemaGiven>,
    hypotheses: Vec<Judgment>,
    goals: Vec<Judgment>,
}

fn statement(e: &Enunciation) -> Result<Statement, Diagnostic> {
    let givens = e.decls.iter().filter_map(Decl::schema_given).collect();
    let mut hypotheses = Vec::new();
    for d in &e.decls {
        hypotheses.extend(d.hypotheses().map_err(|err| kernel_diag(&err, d.span))?);
    }
    let goals = e
        .goal
        .judgments()
        .iter()
        .map(judgment_of)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Statement {
        givens,
        hypotheses,
        goals,
    })
}

/// Schema of a primitive theorem.
pub fn primitive_schema(p: &PrimitiveAst) -> Result<TheoremSchema, Diagnostic> {
    let s = statement(&p.enunciation)?;
    Ok(TheoremSchema {
        number: p.number.clone(),
        givens: s.givens,
        hypotheses: s.hypotheses,
        conclusions: s.goals,
        primitive: true,
    })
}

/// Match enunciation givens to exposition givens position by position.
fn exposition_substitution(
    general: &[SchemaGiven],
    instance: &[SchemaGiven],
) -> Result<Substitution, String> {
    if general.len() != instance.len() {
        return Err(format!(
            "the enunciation has {} given object(s), the exposition {}",
            general.len(),
            instance.len()
        ));
    }
    let mut sigma = Substitution::default();
    for (g, i) in general.iter().zip(instance) {
        let pairs: Vec<(char, char)> = match (g, i) {
            (
                SchemaGiven::Object {
                    kind: k1,
                    letters: l1,
                },
                SchemaGiven::Object {
                    kind: k2,
                    letters: l2,
                },
            ) if k1 == k2 && l1.chars().count() == l2.chars().count() => {
                l1.chars().zip(l2.chars()).collect()
            }
            (
                SchemaGiven::Extension {
                    base: b1,
                    beyond: y1,
                    point: p1,
                },
                SchemaGiven::Extension {
                    base: b2,
                    beyond: y2,
                    point: p2,
                },
            ) => {
                let mut v: Vec<(char, char)> = b1.chars().zip(b2.chars()).collect();
                v.push((*y1, *y2));
                v.push((*p1, *p2));
                v
            }
            _ => return Err(format!("{i} does not instantiate {g}")),
        };
        for (a, b) in pairs {
            sigma.bind(a, b).map_err(|e| e.to_string())?;
        }
    }
    let mut images = BTreeSet::new();
    for (_, b) in sigma.iter() {
        if !images.insert(b) {
            return Err(format!(
                "two schematic letters are both instantiated by {b}"
            ));
        }
    }
    Ok(sigma)
}

fn goal_text(goal: &Goal, sigma: &Substitution) -> String {
    let js: Vec<String> = goal
        .judgments()
        .iter()
        .filter_map(|j| j.to_judgment().ok())
        .filter_map(|j| sigma.apply(&j).ok())
        .map(|j| j.to_string())
        .collect();
    match goal {
        Goal::Show(_) => format!("show {}", js.join(", ")),
        Goal::Produce {
            kind, letters, on, ..
        } => {
            let mut s = format!("produce {} {}", kind.keyword(), sigma.apply_str(letters));
            if let Some(seg) = on {
                s.push_str(&format!(" on {}", sigma.apply_str(seg)));
            }
            if !js.is_empty() {
                s.push_str(&format!(" where {}", js.join(", ")));
            }
            s
        }
    }
}

fn same_judgments(a: &[Judgment], b: &[Judgment]) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort();
    y.sort();
    x == y
}

fn canon_eq(kind: NameKind, a: &str, b: &str) -> bool {
    matches!((canonicalize(kind, a), canonicalize(kind, b)), (Ok(x), Ok(y)) if x == y)
}

struct Checker<'a> {
    ast: &'a PropositionAst,
    ctx: &'a Context,
    env: Environment,
    diags: Vec<Diagnostic>,
    report: VerificationReport,
}

/// Check one proposition against the schemas available in `ctx`.
pub fn check_proposition(ast: &PropositionAst, ctx: &Context) -> VerificationReport {
    check_proposition_env(ast, ctx).0
}

/// [`check_proposition`], also handing back the final environment.
pub fn check_proposition_env(
    ast: &PropositionAst,
    ctx: &Context,
) -> (VerificationReport, Environment) {
    let mut c = Checker {
        ast,
        ctx,
        env: Environment::new(),
        diags: Vec::new(),
        report: VerificationReport::new(ast.number.clone(), ast.kind),
    };
    c.run();
    let Checker {
        env,
        diags,
        mut report,
        ..
    } = c;
    report.verdict = if diags.is_empty() {
        Verdict::Verified
    } else {
        Verdict::Rejected
    };
    report.diagnostics = diags;
    report.fact_count = env.facts().len();
    report.diagrammatic_posits = env
        .facts()
        .iter()
        .filter(|f| matches!(f.provenance, Provenance::Diagrammatic { .. }))
        .map(|f| f.judgment.to_string())
        .collect();
    report.chain_segments = chain_segments(&env);
    report.production_trace = env.production_trace();
    if report.verdict == Verdict::Rejected {
        report.exported_schema = None;
    }
    (report, env)
}

/// Segments mentioned in facts that exist only as parts of a drawn line.
fn chain_segments(env: &Environment) -> Vec<String> {
    let mut out = BTreeSet::new();
    for f in env.facts() {
        for m in f.judgment.magnitudes() {
            if let Magnitude::Segment(n) = m {
                if env.lookup(n).is_none() {
                    out.insert(n.to_string());
                }
            }
        }
    }
    out.into_iter().collect()
}

impl Checker<'_> {
    fn push(&mut self, d: Diagnostic) {
        self.diags.push(d);
    }

    fn run(&mut self) {
        let ast = self.ast;
        let general = match statement(&ast.enunciation) {
            Ok(s) => s,
            Err(d) => return self.push(d),
        };
        self.report.exported_schema = Some(match (&ast.enunciation.goal, ast.kind) {
            (Goal::Produce { .. }, _) => ExportedSchema::Problem(ProblemSchema {
                number: ast.number.clone(),
                givens: general.givens.clone(),
                hypotheses: general.hypotheses.clone(),
                produced: ast.enunciation.goal.produced().expect("produce goal"),
                goals: general.goals.clone(),
            }),
            (Goal::Show(_), _) => ExportedSchema::Theorem(TheoremSchema {
                number: ast.number.clone(),
                givens: general.givens.clone(),
                hypotheses: general.hypotheses.clone(),
                conclusions: general.goals.clone(),
                primitive: false,
            }),
        });

        let unlicensed = self.exposition(&general);
        let Some((sigma, unlicensed)) = unlicensed else {
            return;
        };
        let goals = self.specification(&general, &sigma);
        self.env.set_phase(Phase::Construction);
        for step in &ast.construction {
            if let Err(e) = self.construction_step(step) {
                self.push(kernel_diag(&e, step.span));
            }
        }
        self.env.set_phase(Phase::Proof);
        let mut labels: BTreeMap<String, Vec<FactId>> = BTreeMap::new();
        for step in &ast.proof {
            match self.proof_step(step, &labels) {
                Ok(ids) => {
                    labels.insert(step.label.clone(), ids);
                }
                Err(d) => self.push(d),
            }
        }
        self.goal_check(&goals, &sigma);
        self.conclusion(&unlicensed);
    }

    /// Register the generic objects and hypotheses; return the
    /// instantiating substitution and the hypotheses it does not license.
    fn exposition(&mut self, general: &Statement) -> Option<(Substitution, BTreeSet<FactId>)> {
        self.env.set_phase(Phase::Exposition);
        let mut hyp_facts = Vec::new();
        for d in &self.ast.exposition {
            let r = match &d.form {
                DeclForm::Given { kind, letters } => self
                    .env
                    .register_given(kind.name_kind(), letters)
                    .map(|_| ()),
                DeclForm::Isosceles { triangle, .. } => self
                    .env
                    .register_given(NameKind::Polygon, triangle)
                    .map(|_| ()),
                DeclForm::Extension {
                    point,
                    base,
                    beyond,
                } => self.env.apply_extend(base, *beyond, *point).map(|_| ()),
                DeclForm::Hypothesis(_) => Ok(()),
            };
            let r = r.and_then(|()| {
                for h in d.hypotheses()? {
                    hyp_facts.push(assert_hypothesis(&mut self.env, h)?);
                }
                Ok(())
            });
            if let Err(e) = r {
                self.push(kernel_diag(&e, d.span));
            }
        }
        let instance: Vec<SchemaGiven> = self
            .ast
            .exposition
            .iter()
            .filter_map(Decl::schema_given)
            .collect();
        let span = self
            .ast
            .exposition
            .first()
            .map(|d| d.span)
            .unwrap_or_default();
        let sigma = match exposition_substitution(&general.givens, &instance) {
            Ok(s) => s,
            Err(m) => {
                self.push(Diagnostic::new(D::SpecificationMismatch, span, m));
                return None;
            }
        };
        let licensed: Vec<Judgment> = general
            .hypotheses
            .iter()
            .filter_map(|h| sigma.apply(h).ok())
            .collect();
        let unlicensed = hyp_facts
            .into_iter()
            .filter(|&id| {
                let j = &self.env.facts()[id.0].judgment;
                !licensed.iter().any(|l| judgments_match(&self.env, l, j))
            })
            .collect();
        Some((sigma, unlicensed))
    }

    fn specification(&mut self, general: &Statement, sigma: &Substitution) -> Vec<Judgment> {
        let goals: Vec<Judgment> = general
            .goals
            .iter()
            .filter_map(|g| sigma.apply(g).ok())
            .collect();
        let egoal = &self.ast.enunciation.goal;
        match &self.ast.specification {
            Specification::Elided { kind, span } => {
                if *kind != egoal.kind() {
                    self.push(Diagnostic::new(
                        D::SpecificationMismatch,
                        *span,
                        "the elided specification is of the wrong kind",
                    ));
                }
                self.report.reconstructed_specification = Some(goal_text(egoal, sigma));
            }
            Specification::Stated { goal, span } => {
                let stated: Result<Vec<Judgment>, _> =
                    goal.judgments().iter().map(judgment_of).collect();
                let ok = match stated {
                    Err(d) => {
                        self.push(d);
                        return goals;
                    }
                    Ok(stated) => {
                        same_judgments(&stated, &goals)
                            && match (goal, egoal) {
                                (Goal::Show(_), Goal::Show(_)) => true,
                                (
                                    Goal::Produce {
                                        kind: k1,
                                        letters: l1,
                                        on: o1,
                                        ..
                                    },
                                    Goal::Produce {
                                        kind: k2,
                                        letters: l2,
                                        on: o2,
                                        ..
                                    },
                                ) => {
                                    k1 == k2
                                        && canon_eq(k1.name_kind(), l1, &sigma.apply_str(l2))
                                        && match (o1, o2) {
                                            (None, None) => true,
                                            (Some(a), Some(b)) => {
                                                canon_eq(NameKind::Segment, a, &sigma.apply_str(b))
                                            }
                                            _ => false,
                                        }
                                }
                                _ => false,
                            }
                    }
                };
                if !ok {
                    self.push(
                        Diagnostic::new(
                            D::SpecificationMismatch,
                            *span,
                            "the specification does not instantiate the enunciation",
                        )
                        .expecting(goal_text(egoal, sigma)),
                    );
                }
            }
        }
        goals
    }

    fn construction_step(&mut self, step: &ConstructionStep) -> Result<(), KernelError> {
        let env = &mut self.env;
        match &step.op {
            ConstructionOp::Line { p, q, .. } => env.apply_line(*p, *q).map(|_| ()),
            ConstructionOp::Circle {
                label,
                center,
                radius,
            } => env.apply_circle(CircleLabel(label.clone()), *center, radius),
            ConstructionOp::Meet { name, c1, c2 } => env
                .apply_meet(&CircleLabel(c1.clone()), &CircleLabel(c2.clone()), *name)
                .map(|_| ()),
            ConstructionOp::Extend {
                name,
                segment,
                beyond,
                circle: None,
            } => env.apply_extend(segment, *beyond, *name).map(|_| ()),
            ConstructionOp::Extend {
                name,
                segment,
                beyond,
                circle: Some(c),
            } => env
                .apply_extend_to_circle(segment, *beyond, &CircleLabel(c.clone()), *name)
                .map(|_| ()),
            ConstructionOp::Pick { name, segment } => env.pick_on(segment, *name).map(|_| ()),
            ConstructionOp::Cut {
                name,
                segment,
                circle,
            } => env
                .apply_cut(segment, &CircleLabel(circle.clone()), *name)
                .map(|_| ()),
            ConstructionOp::Derived { names, prop, args } => match self.ctx.get(prop) {
                Some(ExportedSchema::Problem(schema)) => {
                    env.apply_derived(schema, args, names).map(|_| ())
                }
                Some(ExportedSchema::Theorem(_)) => Err(KernelError::SchemaMismatch(format!(
                    "{prop} is a theorem and produces nothing"
                ))),
                None => Err(KernelError::UnverifiedReference(prop.to_string())),
            },
            ConstructionOp::Diagram(j) => {
                let j = j.to_judgment()?;
                env.record_diagram(j).map(|_| ())
            }
        }
    }

    fn resolve(
        &self,
        cite: &Citation,
        labels: &BTreeMap<String, Vec<FactId>>,
        span: Span,
    ) -> Result<Vec<FactId>, Diagnostic> {
        match cite {
            Citation::Label(l) => labels.get(l).cloned().ok_or_else(|| {
                Diagnostic::new(
                    D::UnjustifiedPremise,
                    span,
                    format!("no established step labelled {l}"),
                )
            }),
            Citation::Inline(j) => {
                let judgment = judgment_of(j)?;
                holds(&self.env, &judgment)
                    .map(|id| vec![id])
                    .ok_or_else(|| {
                        let why = match self.env.judgment_constructed(&judgment) {
                            Err(e) => format!("no fact states {judgment}: {e}"),
                            Ok(()) => format!("no fact states {judgment}"),
                        };
                        Diagnostic::new(D::UnjustifiedPremise, j.span, why)
                    })
            }
        }
    }

    fn proof_step(
        &mut self,
        step: &ProofStep,
        labels: &BTreeMap<String, Vec<FactId>>,
    ) -> Result<Vec<FactId>, Diagnostic> {
        let stated = step
            .judgments
            .iter()
            .map(judgment_of)
            .collect::<Result<Vec<_>, _>>()?;
        let ids = self.apply_rule(step, labels, &stated)?;
        self.report.deduction_trace.push(DeductionNode {
            label: step.label.clone(),
            rule: rule_name(&step.rule),
            judgments: stated.iter().map(|j| j.to_string()).collect(),
            premises: ids
                .first()
                .map(|&id| self.env.facts()[id.0].provenance.premises().to_vec())
                .unwrap_or_default(),
            facts: ids.clone(),
        });
        Ok(ids)
    }

    fn apply_rule(
        &mut self,
        step: &ProofStep,
        labels: &BTreeMap<String, Vec<FactId>>,
        stated: &[Judgment],
    ) -> Result<Vec<FactId>, Diagnostic> {
        let span = step.span;
        let kd = |e: KernelError| kernel_diag(&e, span);
        let single = |what: &str| -> Result<Judgment, Diagnostic> {
            match stated {
                [j] => Ok(j.clone()),
                _ => Err(Diagnostic::new(
                    D::PatternMismatch,
                    span,
                    format!("{what} concludes exactly one judgment"),
                )),
            }
        };
        match &step.rule {
            RuleAst::CommonNotion { n, cites } => {
                let rule = CommonNotion::ALL[(*n as usize).saturating_sub(1).min(4)];
                let conclusion = single(&rule.to_string())?;
                let candidates = cites
                    .iter()
                    .map(|c| self.resolve(c, labels, span))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut first_err = None;
                for combo in combinations(&candidates) {
                    match check_cn(&self.env, rule, &combo, &conclusion) {
                        Ok(()) => {
                            self.env.judgment_constructed(&conclusion).map_err(kd)?;
                            return apply_cn(&mut self.env, rule, &combo, conclusion)
                                .map(|id| vec![id])
                                .map_err(kd);
                        }
                        Err(e) => {
                            first_err.get_or_insert(e);
                        }
                    }
                }
                Err(kd(
                    first_err.unwrap_or(KernelError::PatternMismatch(rule.to_string()))
                ))
            }
            RuleAst::Radius { circle } => {
                let j = single("def15")?;
                match &j {
                    Judgment::Equal(Magnitude::Segment(a), Magnitude::Segment(b)) => radii_equal(
                        &mut self.env,
                        &CircleLabel(circle.clone()),
                        a.letters(),
                        b.letters(),
                    )
                    .map(|id| vec![id])
                    .map_err(kd),
                    other => Err(Diagnostic::new(
                        D::PatternMismatch,
                        span,
                        format!("def15 gives an equality of radii, not {other}"),
                    )),
                }
            }
            RuleAst::Identity => match single("identity")? {
                Judgment::Identical(a, b) => apply_identity(&mut self.env, a, b)
                    .map(|id| vec![id])
                    .map_err(kd),
                other => Err(Diagnostic::new(
                    D::PatternMismatch,
                    span,
                    format!("identity gives `x == y`, not {other}"),
                )),
            },
            RuleAst::Theorem {
                prop,
                bindings,
                cites,
            } => {
                let theorem = match self.ctx.get(prop) {
                    Some(ExportedSchema::Theorem(t)) => t.clone(),
                    Some(ExportedSchema::Problem(_)) => {
                        return Err(kd(KernelError::SchemaMismatch(format!(
                            "{prop} is a problem, not a rule"
                        ))))
                    }
                    None => return Err(kd(KernelError::UnverifiedReference(prop.to_string()))),
                };
                let candidates = cites
                    .iter()
                    .map(|c| self.resolve(c, labels, span))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut first_err = None;
                for combo in combinations(&candidates) {
                    match instantiate_theorem(&self.env, &theorem, bindings, &combo) {
                        Ok((_, conclusions)) => {
                            let covered = stated.len() == conclusions.len()
                                && stated.iter().all(|s| {
                                    conclusions.iter().any(|c| judgments_match(&self.env, s, c))
                                });
                            if !covered {
                                let listed: Vec<String> =
                                    conclusions.iter().map(|c| c.to_string()).collect();
                                return Err(Diagnostic::new(
                                    D::PatternMismatch,
                                    span,
                                    format!("{prop} here concludes {}", listed.join(", ")),
                                ));
                            }
                            if theorem.primitive
                                && !self.report.primitive_dependencies.contains(prop)
                            {
                                self.report.primitive_dependencies.push(prop.clone());
                            }
                            return apply_theorem(&mut self.env, &theorem, bindings, &combo)
                                .map_err(kd);
                        }
                        Err(e) => {
                            first_err.get_or_insert(e);
                        }
                    }
                }
                Err(kd(
                    first_err.unwrap_or(KernelError::PatternMismatch(prop.to_string()))
                ))
            }
        }
    }

    fn goal_check(&mut self, goals: &[Judgment], sigma: &Substitution) {
        let span = self.ast.conclusion.span;
        for g in goals {
            let fact = holds(&self.env, g);
            if fact.is_none() {
                self.push(Diagnostic::new(
                    D::GoalUnreached,
                    span,
                    format!("{g} has not been established"),
                ));
            }
            self.report.goals.push(GoalStatus {
                judgment: g.to_string(),
                fact,
            });
        }
        if let Goal::Produce {
            kind, letters, on, ..
        } = &self.ast.enunciation.goal
        {
            let raw = sigma.apply_str(letters);
            let constructed = canonicalize(kind.name_kind(), &raw)
                .map(|n| self.env.name_constructed(&n))
                .unwrap_or(false);
            if !constructed {
                self.push(Diagnostic::new(
                    D::GoalUnreached,
                    span,
                    format!("{} {raw} has not been produced", kind.keyword()),
                ));
            }
            if let Some(seg) = on {
                let s: Vec<char> = sigma.apply_str(seg).chars().collect();
                let p = raw.chars().next().unwrap_or('?');
                if s.len() != 2 || !self.env.between(s[0], p, s[1]) {
                    self.push(Diagnostic::new(
                        D::GoalUnreached,
                        span,
                        format!("{p} does not lie on {}", sigma.apply_str(seg)),
                    ));
                }
            }
        }
    }

    fn conclusion(&mut self, unlicensed: &BTreeSet<FactId>) {
        let c = &self.ast.conclusion;
        let wanted = self.ast.kind.closing();
        if c.marker != wanted {
            self.push(
                Diagnostic::new(
                    D::ClosingMismatch,
                    c.span,
                    format!(
                        "a {} closes with {}",
                        self.ast.kind.keyword(),
                        wanted.keyword()
                    ),
                )
                .expecting(wanted.keyword()),
            );
        }
        if c.prose.is_none() {
            self.report.reconstructed_conclusion = Some(format!(
                "{}: {}",
                wanted.keyword(),
                goal_text(&self.ast.enunciation.goal, &Substitution::default())
            ));
        }
        let mut tainted = BTreeSet::new();
        for g in &self.report.goals {
            let Some(id) = g.fact else { continue };
            match provenance(&self.env, id) {
                Ok(tree) => {
                    for leaf in tree.leaves() {
                        if unlicensed.contains(&leaf.fact) {
                            tainted.insert(leaf.fact);
                        }
                    }
                    self.report.goal_provenance.push(tree);
                }
                Err(e) => self.diags.push(kernel_diag(&e, c.span)),
            }
        }
        for id in tainted {
            let j = &self.env.facts()[id.0].judgment;
            self.diags.push(Diagnostic::new(
                D::IllegitimateGeneralization,
                c.span,
                format!("the goals rest on {j}, which the enunciation does not assume"),
            ));
        }
    }
}

fn rule_name(r: &RuleAst) -> String {
    match r {
        RuleAst::CommonNotion { n, .. } => format!("cn{n}"),
        RuleAst::Radius { .. } => "def15".into(),
        RuleAst::Identity => "identity".into(),
        RuleAst::Theorem { prop, .. } => format!("prop {prop}"),
    }
}

/// Every choice of one fact per citation. Labels of multi-conclusion steps
/// offer several candidates.
fn combinations(candidates: &[Vec<FactId>]) -> Vec<Vec<FactId>> {
    let mut out = vec![Vec::new()];
    for c in candidates {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                c.iter().map(move |&id| {
                    let mut v = prefix.clone();
                    v.push(id);
                    v
                })
            })
            .collect();
    }
    out
}

/// Check every item of a theory in order, threading verified schemas.
pub fn check_theory(theory: &TheoryAst) -> TheoryReport {
    check_theory_with(theory, false)
}

/// [`check_theory`], stopping after the first rejection when `fail_fast`.
pub fn check_theory_with(theory: &TheoryAst, fail_fast: bool) -> TheoryReport {
    let mut ctx = Context::new();
    let mut report = TheoryReport {
        name: theory.name.clone(),
        reports: Vec::new(),
        primitives: Vec::new(),
        verdict: Verdict::Verified,
    };
    for item in &theory.items {
        match item {
            Item::Primitive(p) => match primitive_schema(p) {
                Ok(schema) => {
                    report.primitives.push(PrimitiveEntry {
                        number: p.number.clone(),
                        statement: p.enunciation.prose.clone(),
                    });
                    ctx.insert(ExportedSchema::Theorem(schema));
                }
                Err(d) => {
                    let mut r = VerificationReport::new(p.number.clone(), PropKind::Theorem);
                    r.verdict = Verdict::Rejected;
                    r.diagnostics.push(d);
                    report.reports.push(r);
                }
            },
            Item::Proposition(p) => {
                let r = check_proposition(p, &ctx);
                if let (Verdict::Verified, Some(schema)) = (r.verdict, &r.exported_schema) {
                    ctx.insert(schema.clone());
                }
                report.reports.push(r);
            }
        }
        let rejected = report
            .reports
            .iter()
            .any(|r| r.verdict == Verdict::Rejected);
        if rejected {
            report.verdict = Verdict::Rejected;
            if fail_fast {
                break;
            }
        }
    }
    report
}
