//! Shared fixtures: the corpus mutation catalogue and helpers to run it.

#![allow(dead_code)]

use euclid_kernel::checker::{check_theory, TheoryReport, Verdict};
use euclid_kernel::lang::{parse, Diagnostic, DiagnosticKind as D};
use euclid_kernel::BOOK1;

/// One diagnostic a mutation must provoke.
pub struct Expect {
    /// Proposition the diagnostic belongs to; `None` for parse errors.
    pub prop: Option<&'static str>,
    pub kind: D,
    /// Text of the source line the diagnostic must point at.
    pub at: Option<&'static str>,
}

pub struct Mutation {
    pub name: &'static str,
    /// Literal replacements applied to the corpus, each must match once.
    pub edits: Vec<(&'static str, &'static str)>,
    pub expect: Vec<Expect>,
}

fn e(prop: Option<&'static str>, kind: D, at: Option<&'static str>) -> Expect {
    Expect { prop, kind, at }
}

/// Hand-built corruptions of the corpus. Expected diagnostics were
/// written down from the rules alone, before running the checker.
pub fn mutations() -> Vec<Mutation> {
    vec![
        Mutation {
            name: "1.1 without the meet step",
            edits: vec![("    let C = meet(c1, c2)\n", "")],
            expect: vec![
                e(Some("1.1"), D::UnconstructedObject, Some("let CA = line(C, A)")),
                e(Some("1.2"), D::UnverifiedReference, Some("let D = by 1.1(AB)")),
            ],
        },
        Mutation {
            name: "1.1 without the line CA",
            edits: vec![("    let CA = line(C, A)\n", "")],
            expect: vec![e(Some("1.1"), D::UnconstructedObject, Some("step s1: AC = AB by def15(c1)"))],
        },
        Mutation {
            name: "1.1 second circle on a different radius",
            edits: vec![(
                "    let c2 = circle(B, BA)\n",
                "    let D = extend(AB, B)\n    let c2 = circle(B, BD)\n",
            )],
            expect: vec![e(Some("1.1"), D::NoCommonRadius, Some("let C = meet(c1, c2)"))],
        },
        Mutation {
            name: "1.5 without the isosceles hypothesis",
            edits: vec![
                ("    isosceles ABC apex A\n    let D", "    given triangle ABC\n    let D"),
                ("  isosceles ABC apex A\n  let D", "  given triangle ABC\n  let D"),
            ],
            expect: vec![e(Some("1.5"), D::UnjustifiedPremise, Some("step s4: BF = CG by cn3"))],
        },
        Mutation {
            name: "1.1 construction after its proof",
            edits: vec![
                (
                    "  construction {\n    let c1 = circle(A, AB)\n    let c2 = circle(B, BA)\n    let C = meet(c1, c2)\n    let CA = line(C, A)\n    let CB = line(C, B)\n  }\n",
                    "",
                ),
                (
                    "    step s3: CA = CB by cn1(s1, s2)\n  }\n",
                    "    step s3: CA = CB by cn1(s1, s2)\n  }\n  construction {\n    let c1 = circle(A, AB)\n    let c2 = circle(B, BA)\n    let C = meet(c1, c2)\n    let CA = line(C, A)\n    let CB = line(C, B)\n  }\n",
                ),
            ],
            expect: vec![e(None, D::PartsOutOfOrder, None)],
        },
        Mutation {
            name: "1.2 cites the later 1.3",
            edits: vec![("let D = by 1.1(AB)", "let D = by 1.3(AB)")],
            expect: vec![e(None, D::ForwardReference, Some("let D = by 1.3(AB)"))],
        },
        Mutation {
            name: "1.1 without a proof",
            edits: vec![(
                "  proof {\n    step s1: AC = AB by def15(c1)\n    step s2: BC = BA by def15(c2)\n    step s3: CA = CB by cn1(s1, s2)\n  }\n",
                "",
            )],
            expect: vec![e(None, D::MissingPart, None)],
        },
        Mutation {
            name: "1.3 loses its last step",
            edits: vec![("    step s2: AF = CD by cn1(s1, [AE = CD])\n", "")],
            expect: vec![
                e(Some("1.3"), D::GoalUnreached, None),
                e(Some("1.5"), D::UnverifiedReference, Some("let G = by 1.3(AE, AF)")),
            ],
        },
        Mutation {
            name: "1.3 without its hypothesis",
            edits: vec![("  given segment CD\n  hypothesis AB > CD\n  produce", "  given segment CD\n  produce")],
            expect: vec![e(Some("1.3"), D::UnsatisfiedHypothesis, Some("let F = cut(AB, c1)"))],
        },
        Mutation {
            name: "1.5 closed as a problem",
            edits: vec![("  qed-show \"The base", "  qed-do \"The base")],
            expect: vec![e(Some("1.5"), D::ClosingMismatch, None)],
        },
        Mutation {
            name: "1.2 cites an equality nobody proved",
            edits: vec![("s2, [DA = DB])", "s2, [DA = BC])")],
            expect: vec![e(Some("1.2"), D::UnjustifiedPremise, Some("step s3: AL = BG"))],
        },
        Mutation {
            name: "1.1 cites one premise twice",
            edits: vec![("CA = CB by cn1(s1, s2)", "CA = CB by cn1(s1, s1)")],
            expect: vec![e(Some("1.1"), D::PatternMismatch, Some("step s3: CA = CB"))],
        },
        Mutation {
            name: "1.5 posits an equality from the figure",
            edits: vec![(
                "diagram angle ABG == angle ABC + angle CBG",
                "diagram angle ABG = angle ACF",
            )],
            expect: vec![e(Some("1.5"), D::NotADecomposition, Some("diagram angle ABG = angle ACF"))],
        },
        Mutation {
            name: "primitive 1.4 removed",
            edits: vec![(
                "primitive theorem 1.4 {\n  enunciation \"Two triangles with two sides and the included angle equal are equal in every respect.\" {\n    given triangle ABC\n    given triangle DEF\n    hypothesis AB = DE\n    hypothesis AC = DF\n    hypothesis angle BAC = angle EDF\n    show BC = EF, triangle ABC = triangle DEF, angle ABC = angle DEF, angle ACB = angle DFE\n  }\n}\n",
                "",
            )],
            expect: vec![e(Some("1.5"), D::UnverifiedReference, Some("step s3: FC = GB")), e(Some("1.5"), D::UnverifiedReference, Some("step s5: BC = CB"))],
        },
        Mutation {
            name: "1.5 exposition assumes more than its enunciation",
            edits: vec![("    isosceles ABC apex A\n    let D", "    given triangle ABC\n    let D")],
            expect: vec![e(Some("1.5"), D::IllegitimateGeneralization, None)],
        },
        Mutation {
            name: "1.1 step labels collide",
            edits: vec![("step s2: BC = BA by def15(c2)", "step s1: BC = BA by def15(c2)")],
            expect: vec![e(None, D::DuplicateLabel, Some("step s1: BC = BA"))],
        },
        Mutation {
            name: "1.2 reuses a letter for a new point",
            edits: vec![("let L = extend(DA, A, c2)", "let B = extend(DA, A, c2)")],
            expect: vec![e(None, D::DuplicateObjectName, Some("let B = extend(DA, A, c2)"))],
        },
    ]
}

pub fn apply(m: &Mutation) -> String {
    let mut src = BOOK1.to_string();
    for (from, to) in &m.edits {
        assert_eq!(
            src.matches(from).count(),
            1,
            "{}: edit {from:?} must match once",
            m.name
        );
        src = src.replacen(from, to, 1);
    }
    src
}

/// Parse and check; diagnostics tagged with their proposition.
pub enum Outcome {
    ParseError(Vec<Diagnostic>),
    Checked(TheoryReport),
}

impl Outcome {
    pub fn rejected(&self) -> bool {
        match self {
            Outcome::ParseError(_) => true,
            Outcome::Checked(r) => r.verdict == Verdict::Rejected,
        }
    }

    pub fn diagnostics(&self) -> Vec<(Option<String>, &Diagnostic)> {
        match self {
            Outcome::ParseError(ds) => ds.iter().map(|d| (None, d)).collect(),
            Outcome::Checked(r) => r
                .reports
                .iter()
                .flat_map(|rep| {
                    rep.diagnostics
                        .iter()
                        .map(|d| (Some(rep.number.to_string()), d))
                })
                .collect(),
        }
    }
}

pub fn check_source(src: &str) -> Outcome {
    match parse(src) {
        Ok(t) => Outcome::Checked(check_theory(&t)),
        Err(ds) => Outcome::ParseError(ds),
    }
}

/// Why a mutation did not behave as expected, if it did not.
pub fn verify(m: &Mutation) -> Result<(), String> {
    let src = apply(m);
    let out = check_source(&src);
    if !out.rejected() {
        return Err(format!("{}: accepted", m.name));
    }
    let diags = out.diagnostics();
    for x in &m.expect {
        let line = x.at.map(|needle| {
            src.lines()
                .position(|l| l.contains(needle))
                .map(|i| i as u32 + 1)
                .unwrap_or_else(|| panic!("{}: anchor {needle:?} not in source", m.name))
        });
        let hit = diags.iter().any(|(p, d)| {
            d.kind == x.kind && p.as_deref() == x.prop && line.is_none_or(|l| d.span.line == l)
        });
        if !hit {
            let seen: Vec<String> = diags
                .iter()
                .map(|(p, d)| {
                    format!(
                        "[{}] {:?} at {}: {}",
                        p.as_deref().unwrap_or("parse"),
                        d.kind,
                        d.span,
                        d.message
                    )
                })
                .collect();
            return Err(format!(
                "{}: expected {:?} in {:?} at {:?}; got\n  {}",
                m.name,
                x.kind,
                x.prop,
                line,
                seen.join("\n  ")
            ));
        }
    }
    Ok(())
}

use euclid_kernel::checker::{
    check_proposition_env, primitive_schema, Context, VerificationReport,
};
use euclid_kernel::lang::ast::Item;
use euclid_kernel::production::Environment;
use euclid_kernel::schema::ExportedSchema;

/// Check each proposition of `src` in order, keeping every final
/// environment.
pub fn check_each(src: &str) -> Vec<(VerificationReport, Environment)> {
    let theory = parse(src).expect("parses");
    let mut ctx = Context::new();
    let mut out = Vec::new();
    for item in &theory.items {
        match item {
            Item::Primitive(p) => ctx.insert(ExportedSchema::Theorem(
                primitive_schema(p).expect("primitive"),
            )),
            Item::Proposition(p) => {
                let (r, env) = check_proposition_env(p, &ctx);
                if let (true, Some(s)) = (r.is_verified(), &r.exported_schema) {
                    ctx.insert(s.clone());
                }
                out.push((r, env));
            }
        }
    }
    out
}

/// Rename every point letter of `src` by `perm`, indexed from `A`.
pub fn permute_letters(src: &str, perm: &[char; 26]) -> String {
    src.chars()
        .map(|c| {
            if c.is_ascii_uppercase() {
                perm[(c as u8 - b'A') as usize]
            } else {
                c
            }
        })
        .collect()
}

// ----- numeric oracle ---------------------------------------------------------

use std::collections::BTreeMap;

use euclid_kernel::deduction::{assert_hypothesis, check_cn, CommonNotion, Judgment, Magnitude};
use euclid_kernel::naming::NameKind;
use euclid_kernel::production::{FactId, Phase};
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;

pub type Q = Ratio<i64>;

/// An environment of collinear chains whose segments carry rational
/// lengths. Every true equality between distinct segments is a hypothesis.
pub struct NumericEnv {
    pub env: Environment,
    pub size: BTreeMap<Magnitude, Q>,
}

fn pairs(n: usize) -> usize {
    n * (n - 1) / 2
}

fn build_chain(
    env: &mut Environment,
    size: &mut BTreeMap<Magnitude, Q>,
    pts: &[char],
    rng: &mut impl Rng,
) {
    let gaps = [
        Q::new(1, 2),
        Q::from_integer(1),
        Q::new(3, 2),
        Q::from_integer(2),
    ];
    let mut pos = vec![Q::from_integer(0)];
    for _ in 1..pts.len() {
        let last = *pos.last().unwrap();
        pos.push(last + *gaps.choose(rng).unwrap());
    }
    env.register_given(NameKind::Segment, &format!("{}{}", pts[0], pts[1]))
        .unwrap();
    for i in 2..pts.len() {
        env.apply_extend(&format!("{}{}", pts[i - 2], pts[i - 1]), pts[i - 1], pts[i])
            .unwrap();
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let m = Magnitude::segment(&format!("{}{}", pts[i], pts[j])).unwrap();
            size.insert(m, pos[j] - pos[i]);
        }
    }
}

/// At most eight segments spread over one or two chains.
pub fn numeric_env(rng: &mut impl Rng) -> NumericEnv {
    let (n1, n2) = loop {
        let n1 = rng.gen_range(2..=4);
        let n2 = [0, 2, 3][rng.gen_range(0..3)];
        if pairs(n1) + if n2 > 0 { pairs(n2) } else { 0 } <= 8 {
            break (n1, n2);
        }
    };
    let mut env = Environment::new();
    let mut size = BTreeMap::new();
    build_chain(&mut env, &mut size, &['A', 'B', 'C', 'D'][..n1], rng);
    if n2 > 0 {
        build_chain(&mut env, &mut size, &['P', 'Q', 'R'][..n2], rng);
    }
    let mags: Vec<Magnitude> = size.keys().cloned().collect();
    for i in 0..mags.len() {
        for j in i + 1..mags.len() {
            if size[&mags[i]] == size[&mags[j]] {
                assert_hypothesis(
                    &mut env,
                    Judgment::equal(mags[i].clone(), mags[j].clone()).unwrap(),
                )
                .unwrap();
            }
        }
    }
    env.set_phase(Phase::Proof);
    NumericEnv { env, size }
}

impl NumericEnv {
    pub fn true_here(&self, j: &Judgment) -> bool {
        let s = |m: &Magnitude| self.size[m];
        match j {
            Judgment::Equal(a, b) => s(a) == s(b),
            Judgment::Identical(a, b) => a == b,
            Judgment::Decomp { whole, parts } => s(whole) == s(&parts[0]) + s(&parts[1]),
            Judgment::Greater(a, b) => s(a) > s(b),
            Judgment::On { .. } => true,
        }
    }

    fn facts_where(&self, f: impl Fn(&Judgment) -> bool) -> Vec<FactId> {
        self.env
            .facts()
            .iter()
            .filter(|x| f(&x.judgment))
            .map(|x| x.id)
            .collect()
    }

    /// Every rule instance accepted over this environment: premises are
    /// drawn from the fact store (sampled for the four-premise rules) and
    /// conclusions range over all equalities, or all comparisons for CN5.
    /// Returns (accepted, counterexamples).
    pub fn audit(&self, rng: &mut impl Rng, samples: usize) -> (usize, Vec<String>) {
        let mags: Vec<&Magnitude> = self.size.keys().collect();
        let mut eqs = Vec::new();
        let mut gts = Vec::new();
        for a in &mags {
            for b in &mags {
                if a < b {
                    eqs.push(Judgment::equal((*a).clone(), (*b).clone()).unwrap());
                }
                if a != b {
                    gts.push(Judgment::greater((*a).clone(), (*b).clone()).unwrap());
                }
            }
        }
        let equalities = self.facts_where(|j| matches!(j, Judgment::Equal(..)));
        let decomps = self.facts_where(Judgment::is_decomposition);
        let mut tuples: Vec<(CommonNotion, Vec<FactId>)> = Vec::new();
        for &a in &equalities {
            for &b in &equalities {
                tuples.push((CommonNotion::Cn1, vec![a, b]));
            }
        }
        for &d in &decomps {
            tuples.push((CommonNotion::Cn5, vec![d]));
        }
        if !decomps.is_empty() && !equalities.is_empty() {
            for rule in [CommonNotion::Cn2, CommonNotion::Cn3] {
                for _ in 0..samples {
                    let pick =
                        |v: &[FactId], rng: &mut dyn rand::RngCore| v[rng.gen_range(0..v.len())];
                    tuples.push((
                        rule,
                        vec![
                            pick(&decomps, rng),
                            pick(&decomps, rng),
                            pick(&equalities, rng),
                            pick(&equalities, rng),
                        ],
                    ));
                }
            }
        }
        let mut accepted = 0;
        let mut bad = Vec::new();
        for (rule, premises) in tuples {
            let premises_true = premises
                .iter()
                .all(|p| self.true_here(&self.env.fact(*p).unwrap().judgment));
            let candidates = if rule == CommonNotion::Cn5 {
                &gts
            } else {
                &eqs
            };
            for c in candidates {
                if check_cn(&self.env, rule, &premises, c).is_ok() {
                    accepted += 1;
                    if premises_true && !self.true_here(c) {
                        let ps: Vec<String> = premises
                            .iter()
                            .map(|p| self.env.fact(*p).unwrap().judgment.to_string())
                            .collect();
                        bad.push(format!("{rule}({}) accepted {c}", ps.join("; ")));
                    }
                }
            }
        }
        (accepted, bad)
    }
}
