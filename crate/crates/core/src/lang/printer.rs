//! Pretty-printer producing source the parser reads back to an equal AST.

use std::fmt::Write;

use super::ast::*;

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn term(t: &Term) -> String {
    match t.kind {
        TermKind::Segment => t.letters.clone(),
        TermKind::Angle => format!("angle {}", t.letters),
        TermKind::Triangle => format!("triangle {}", t.letters),
        TermKind::Polygon => format!("polygon {}", t.letters),
    }
}

pub fn judgment(j: &JudgmentAst) -> String {
    match &j.form {
        JudgmentForm::Equal(a, b) => format!("{} = {}", term(a), term(b)),
        JudgmentForm::Identical(a, b) => format!("{} == {}", term(a), term(b)),
        JudgmentForm::Sum(w, x, y) => format!("{} == {} + {}", term(w), term(x), term(y)),
        JudgmentForm::Difference(r, w, c) => format!("{} == {} - {}", term(r), term(w), term(c)),
        JudgmentForm::Greater(a, b) => format!("{} > {}", term(a), term(b)),
        JudgmentForm::On { point, circle } => format!("{point} on {circle}"),
    }
}

fn judgments(js: &[JudgmentAst]) -> String {
    js.iter().map(judgment).collect::<Vec<_>>().join(", ")
}

fn decl(d: &Decl) -> String {
    match &d.form {
        DeclForm::Given { kind, letters } => format!("given {} {letters}", kind.keyword()),
        DeclForm::Hypothesis(j) => format!("hypothesis {}", judgment(j)),
        DeclForm::Isosceles { triangle, apex } => format!("isosceles {triangle} apex {apex}"),
        DeclForm::Extension {
            point,
            base,
            beyond,
        } => format!("let {point} = extend({base}, {beyond})"),
    }
}

fn goal(g: &Goal) -> String {
    match g {
        Goal::Show(js) => format!("show {}", judgments(js)),
        Goal::Produce {
            kind,
            letters,
            on,
            required,
        } => {
            let mut s = format!("produce {} {letters}", kind.keyword());
            if let Some(seg) = on {
                write!(s, " on {seg}").ok();
            }
            if !required.is_empty() {
                write!(s, " where {}", judgments(required)).ok();
            }
            s
        }
    }
}

fn enunciation(out: &mut String, e: &Enunciation, indent: &str) {
    writeln!(out, "{indent}enunciation {} {{", quote(&e.prose)).ok();
    for d in &e.decls {
        writeln!(out, "{indent}  {}", decl(d)).ok();
    }
    writeln!(out, "{indent}  {}", goal(&e.goal)).ok();
    writeln!(out, "{indent}}}").ok();
}

fn citation(c: &Citation) -> String {
    match c {
        Citation::Label(l) => l.clone(),
        Citation::Inline(j) => format!("[{}]", judgment(j)),
    }
}

fn rule(r: &RuleAst) -> String {
    match r {
        RuleAst::CommonNotion { n, cites } => {
            format!(
                "cn{n}({})",
                cites.iter().map(citation).collect::<Vec<_>>().join(", ")
            )
        }
        RuleAst::Radius { circle } => format!("def15({circle})"),
        RuleAst::Identity => "identity".into(),
        RuleAst::Theorem {
            prop,
            bindings,
            cites,
        } => {
            let mut s = format!("{prop}({}", bindings.join(", "));
            if !cites.is_empty() {
                write!(
                    s,
                    "; {}",
                    cites.iter().map(citation).collect::<Vec<_>>().join(", ")
                )
                .ok();
            }
            s.push(')');
            s
        }
    }
}

pub fn construction_op(op: &ConstructionOp) -> String {
    match op {
        ConstructionOp::Line { name, p, q } => format!("let {name} = line({p}, {q})"),
        ConstructionOp::Circle {
            label,
            center,
            radius,
        } => format!("let {label} = circle({center}, {radius})"),
        ConstructionOp::Meet { name, c1, c2 } => format!("let {name} = meet({c1}, {c2})"),
        ConstructionOp::Extend {
            name,
            segment,
            beyond,
            circle,
        } => match circle {
            Some(c) => format!("let {name} = extend({segment}, {beyond}, {c})"),
            None => format!("let {name} = extend({segment}, {beyond})"),
        },
        ConstructionOp::Pick { name, segment } => format!("let {name} = pick({segment})"),
        ConstructionOp::Cut {
            name,
            segment,
            circle,
        } => format!("let {name} = cut({segment}, {circle})"),
        ConstructionOp::Derived { names, prop, args } => {
            let names: Vec<String> = names.iter().map(char::to_string).collect();
            format!("let {} = by {prop}({})", names.join(", "), args.join(", "))
        }
        ConstructionOp::Diagram(j) => format!("diagram {}", judgment(j)),
    }
}

fn proposition(out: &mut String, p: &PropositionAst) {
    writeln!(out, "{} {} {{", p.kind.keyword(), p.number).ok();
    enunciation(out, &p.enunciation, "  ");
    for d in &p.exposition {
        writeln!(out, "  {}", decl(d)).ok();
    }
    match &p.specification {
        Specification::Stated { goal: g, .. } => writeln!(out, "  {}", goal(g)),
        Specification::Elided {
            kind: GoalKind::Show,
            ..
        } => writeln!(out, "  show elided"),
        Specification::Elided {
            kind: GoalKind::Produce,
            ..
        } => writeln!(out, "  produce elided"),
    }
    .ok();
    writeln!(out, "  construction {{").ok();
    for s in &p.construction {
        writeln!(out, "    {}", construction_op(&s.op)).ok();
    }
    writeln!(out, "  }}").ok();
    writeln!(out, "  proof {{").ok();
    for s in &p.proof {
        writeln!(
            out,
            "    step {}: {} by {}",
            s.label,
            judgments(&s.judgments),
            rule(&s.rule)
        )
        .ok();
    }
    writeln!(out, "  }}").ok();
    let prose = match &p.conclusion.prose {
        Some(s) => quote(s),
        None => "elided".into(),
    };
    writeln!(out, "  {} {prose}", p.conclusion.marker.keyword()).ok();
    writeln!(out, "}}").ok();
}

/// Render a theory as `.euclid` source.
pub fn print_theory(t: &TheoryAst) -> String {
    let mut out = format!("theory {}\n", quote(&t.name));
    for item in &t.items {
        out.push('\n');
        match item {
            Item::Primitive(p) => {
                writeln!(out, "primitive theorem {} {{", p.number).ok();
                enunciation(&mut out, &p.enunciation, "  ");
                writeln!(out, "}}").ok();
            }
            Item::Proposition(p) => proposition(&mut out, p),
        }
    }
    out
}
