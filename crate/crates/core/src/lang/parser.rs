//! Recursive-descent parser for `.euclid` theories.
//!
//! Statements are line-oriented: each ends where its line ends. A
//! proposition must carry its six parts in order; on the first structural
//! error inside a proposition the parser skips to the next top-level item
//! and keeps going, so one run reports every broken proposition.

use std::collections::{BTreeMap, BTreeSet};

use super::ast::*;
use super::diag::{Diagnostic, DiagnosticKind as D, Span};
use super::lexer::{tokenize, Token, TokenKind as K};
use crate::deduction::CommonNotion;
use crate::naming::{canonicalize, NameError, NameKind};
use crate::schema::PropNumber;

type PResult<T> = Result<T, Diagnostic>;

/// Tokenize and parse in one go.
pub fn parse(source: &str) -> Result<TheoryAst, Vec<Diagnostic>> {
    parse_theory(&tokenize(source))
}

/// Parse a token stream. Any diagnostic at all makes the result an error.
pub fn parse_theory(tokens: &[Token]) -> Result<TheoryAst, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    for t in tokens.iter().filter(|t| t.kind == K::Error) {
        let message = if t.lexeme.starts_with('"') {
            "unterminated string".to_string()
        } else {
            format!("unexpected character {:?}", t.lexeme)
        };
        diags.push(Diagnostic::new(D::UnexpectedCharacter, t.span, message));
    }
    let toks: Vec<Token> = tokens
        .iter()
        .filter(|t| t.kind != K::Error)
        .cloned()
        .collect();
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        diags,
        known: BTreeMap::new(),
        current: None,
    };
    let theory = p.theory();
    if p.diags.is_empty() {
        Ok(theory)
    } else {
        Err(p.diags)
    }
}

/// Shape of an earlier item, for arity checks on references to it.
#[derive(Debug, Clone, Copy)]
struct Shape {
    givens: usize,
    hypotheses: usize,
    fresh: Option<usize>,
}

struct Parser<'t> {
    toks: &'t [Token],
    pos: usize,
    diags: Vec<Diagnostic>,
    known: BTreeMap<PropNumber, Shape>,
    current: Option<PropNumber>,
}

const EXPOSITION_STARTS: &[&str] = &["given", "hypothesis", "isosceles", "let"];

fn name_error_kind(e: &NameError) -> D {
    match e {
        NameError::RepeatedLetter { .. } => D::RepeatedLetter,
        _ => D::BadArity,
    }
}

impl<'t> Parser<'t> {
    // ----- token access ------------------------------------------------------

    fn peek(&self) -> Option<&'t Token> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, k: usize) -> Option<&'t Token> {
        self.toks.get(self.pos + k)
    }

    fn here(&self) -> Span {
        match self.peek() {
            Some(t) => t.span,
            None => self
                .toks
                .last()
                .map(|t| Span::new(t.span.line, t.span.col + t.span.len, 0))
                .unwrap_or(Span::new(1, 1, 0)),
        }
    }

    fn bump(&mut self) -> &'t Token {
        let t = &self.toks[self.pos];
        self.pos += 1;
        t
    }

    fn at(&self, kind: K, lexeme: &str) -> bool {
        self.peek().is_some_and(|t| t.is(kind, lexeme))
    }

    fn at_kw(&self, kw: &str) -> bool {
        self.at(K::Keyword, kw)
    }

    fn at_punct(&self, p: &str) -> bool {
        self.at(K::Punct, p)
    }

    fn unexpected(&self, expected: &str) -> Diagnostic {
        let found = match self.peek() {
            Some(t) => format!("found {:?}", t.lexeme),
            None => "found end of input".to_string(),
        };
        Diagnostic::new(D::UnexpectedToken, self.here(), found).expecting(expected)
    }

    fn expect(&mut self, kind: K, lexeme: &str) -> PResult<Span> {
        if self.at(kind, lexeme) {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&format!("`{lexeme}`")))
        }
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<Span> {
        self.expect(K::Keyword, kw)
    }

    fn expect_punct(&mut self, p: &str) -> PResult<Span> {
        self.expect(K::Punct, p)
    }

    fn expect_kind(&mut self, kind: K, what: &str) -> PResult<&'t Token> {
        match self.peek() {
            Some(t) if t.kind == kind => Ok(self.bump()),
            _ => Err(self.unexpected(what)),
        }
    }

    fn expect_string(&mut self) -> PResult<String> {
        Ok(self.expect_kind(K::Str, "a quoted string")?.string_value())
    }

    fn expect_ident(&mut self, what: &str) -> PResult<String> {
        Ok(self.expect_kind(K::Identifier, what)?.lexeme.clone())
    }

    fn expect_number(&mut self) -> PResult<PropNumber> {
        let t = self.expect_kind(K::Number, "a proposition number")?;
        t.lexeme
            .parse()
            .map_err(|e: String| Diagnostic::new(D::UnexpectedToken, t.span, e))
    }

    /// Uppercase letters naming an object of `kind`, checked for arity and
    /// repeated letters.
    fn expect_name(&mut self, kind: NameKind, what: &str) -> PResult<String> {
        let t = self.expect_kind(K::ObjectName, what)?;
        if let Err(e) = canonicalize(kind, &t.lexeme) {
            self.diags
                .push(Diagnostic::new(name_error_kind(&e), t.span, e.to_string()));
        }
        Ok(t.lexeme.clone())
    }

    fn expect_letter(&mut self, what: &str) -> PResult<char> {
        let t = self.expect_kind(K::ObjectName, what)?;
        let mut cs = t.lexeme.chars();
        match (cs.next(), cs.next()) {
            (Some(c), None) => Ok(c),
            _ => Err(Diagnostic::new(
                D::BadArity,
                t.span,
                format!("{} is not a single point letter", t.lexeme),
            )),
        }
    }

    /// A statement or block header ends its line.
    fn end_line(&mut self) -> PResult<()> {
        let last = self.toks[self.pos - 1].span.line;
        match self.peek() {
            None => Ok(()),
            Some(t) if t.span.line > last || t.is(K::Punct, "}") => Ok(()),
            Some(_) => Err(self.unexpected("end of line")),
        }
    }

    /// Comma-separated items up to the end of the line or a closer.
    fn comma_list<T>(&mut self, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        let mut out = vec![item(self)?];
        while self.at_punct(",") {
            self.bump();
            out.push(item(self)?);
        }
        Ok(out)
    }

    // ----- theory ------------------------------------------------------------

    fn theory(&mut self) -> TheoryAst {
        let mut theory = TheoryAst {
            name: String::new(),
            items: Vec::new(),
        };
        let header = (|| -> PResult<String> {
            self.expect_kw("theory")?;
            let name = self.expect_string()?;
            self.end_line()?;
            Ok(name)
        })();
        match header {
            Ok(name) => theory.name = name,
            Err(d) => {
                self.diags.push(d);
                self.recover(self.pos);
            }
        }
        let mut last: Option<PropNumber> = None;
        while self.peek().is_some() {
            let start = self.pos;
            match self.item() {
                Ok(item) => {
                    let n = item.number().clone();
                    if let Some(prev) = &last {
                        if &n <= prev {
                            self.diags.push(Diagnostic::new(
                                D::NonIncreasingNumber,
                                self.item_span(&item),
                                format!("{n} does not come after {prev}"),
                            ));
                        }
                    }
                    last = Some(n);
                    theory.items.push(item);
                }
                Err(d) => {
                    self.diags.push(d);
                    self.recover(start);
                }
            }
            self.current = None;
        }
        theory
    }

    fn item_span(&self, item: &Item) -> Span {
        match item {
            Item::Primitive(p) => p.span,
            Item::Proposition(p) => p.span,
        }
    }

    /// Skip to the next item keyword, always making progress.
    fn recover(&mut self, start: usize) {
        if self.pos == start && self.peek().is_some() {
            self.bump();
        }
        while let Some(t) = self.peek() {
            if t.kind == K::Keyword
                && matches!(t.lexeme.as_str(), "problem" | "theorem" | "primitive")
            {
                break;
            }
            self.bump();
        }
    }

    fn item(&mut self) -> PResult<Item> {
        if self.at_kw("primitive") {
            let span = self.bump().span;
            self.expect_kw("theorem")?;
            let number = self.expect_number()?;
            self.current = Some(number.clone());
            self.expect_punct("{")?;
            self.end_line()?;
            if !self.at_kw("enunciation") {
                return Err(self.unexpected("`enunciation`"));
            }
            let enunciation = self.enunciation(PropKind::Theorem)?;
            self.expect_punct("}")?;
            self.end_line()?;
            self.remember(&number, &enunciation);
            return Ok(Item::Primitive(PrimitiveAst {
                number,
                enunciation,
                span,
            }));
        }
        let kind = if self.at_kw("problem") {
            PropKind::Problem
        } else if self.at_kw("theorem") {
            PropKind::Theorem
        } else {
            return Err(self.unexpected("`problem`, `theorem` or `primitive`"));
        };
        Ok(Item::Proposition(self.proposition(kind)?))
    }

    fn remember(&mut self, number: &PropNumber, e: &Enunciation) {
        let givens = e
            .decls
            .iter()
            .filter(|d| d.schema_given().is_some())
            .count();
        let hypotheses = e
            .decls
            .iter()
            .map(|d| d.hypotheses().map(|h| h.len()).unwrap_or(0))
            .sum();
        let fresh = match &e.goal {
            Goal::Produce { letters, .. } => {
                let bound: BTreeSet<char> = e
                    .decls
                    .iter()
                    .filter_map(Decl::schema_given)
                    .flat_map(|g| g.letters())
                    .collect();
                Some(letters.chars().filter(|c| !bound.contains(c)).count())
            }
            Goal::Show(_) => None,
        };
        self.known.insert(
            number.clone(),
            Shape {
                givens,
                hypotheses,
                fresh,
            },
        );
    }

    // ----- propositions ------------------------------------------------------

    /// Diagnose a missing part: out of order when one of `starts` appears
    /// later at this nesting level inside the proposition, missing otherwise.
    fn part_error(&self, part: &str, starts: &[&str]) -> Diagnostic {
        let mut depth = 0i32;
        for t in &self.toks[self.pos..] {
            if t.is(K::Punct, "{") {
                depth += 1;
            } else if t.is(K::Punct, "}") {
                if depth == 0 {
                    break;
                }
                depth -= 1;
            } else if depth == 0 && t.kind == K::Keyword && starts.contains(&t.lexeme.as_str()) {
                return Diagnostic::new(
                    D::PartsOutOfOrder,
                    self.here(),
                    format!(
                        "the {part} of {} appears after a later part",
                        self.number_text()
                    ),
                )
                .expecting(part.to_string());
            }
        }
        Diagnostic::new(
            D::MissingPart,
            self.here(),
            format!("{} has no {part}", self.number_text()),
        )
        .expecting(part.to_string())
    }

    fn number_text(&self) -> String {
        match &self.current {
            Some(n) => format!("proposition {n}"),
            None => "proposition".to_string(),
        }
    }

    fn proposition(&mut self, kind: PropKind) -> PResult<PropositionAst> {
        let span = self.bump().span;
        let number = self.expect_number()?;
        self.current = Some(number.clone());
        self.expect_punct("{")?;
        self.end_line()?;

        if !self.at_kw("enunciation") {
            return Err(self.part_error("enunciation", &["enunciation"]));
        }
        let enunciation = self.enunciation(kind)?;

        let mut exposition = Vec::new();
        while EXPOSITION_STARTS.iter().any(|k| self.at_kw(k)) {
            exposition.push(self.decl()?);
        }
        if exposition.is_empty() {
            return Err(self.part_error("exposition", EXPOSITION_STARTS));
        }
        let mut introduced: BTreeSet<char> = BTreeSet::new();
        let mut declared = BTreeSet::new();
        for d in &exposition {
            if let Some(g) = d.schema_given() {
                let key = format!("{g}");
                if !declared.insert(key.clone()) {
                    self.diags.push(Diagnostic::new(
                        D::DuplicateObjectName,
                        d.span,
                        format!("{key} is declared twice"),
                    ));
                }
                introduced.extend(g.letters());
            }
        }

        if !(self.at_kw("show") || self.at_kw("produce")) {
            return Err(self.part_error("specification", &["show", "produce"]));
        }
        let specification = self.specification()?;

        if !self.at_kw("construction") {
            return Err(self.part_error("construction", &["construction"]));
        }
        let construction = self.construction(&mut introduced)?;

        if !self.at_kw("proof") {
            return Err(self.part_error("proof", &["proof"]));
        }
        let proof = self.proof()?;

        if !(self.at_kw("qed-do") || self.at_kw("qed-show")) {
            return Err(self.part_error("conclusion", &["qed-do", "qed-show"]));
        }
        let conclusion = self.conclusion()?;
        self.expect_punct("}")?;
        self.end_line()?;
        self.remember(&number, &enunciation);
        Ok(PropositionAst {
            number,
            kind,
            enunciation,
            exposition,
            specification,
            construction,
            proof,
            conclusion,
            span,
        })
    }

    fn enunciation(&mut self, kind: PropKind) -> PResult<Enunciation> {
        let span = self.expect_kw("enunciation")?;
        let prose = self.expect_string()?;
        self.expect_punct("{")?;
        self.end_line()?;
        let mut decls = Vec::new();
        let mut goal = None;
        while !self.at_punct("}") {
            if self.peek().is_none() {
                return Err(self.unexpected("`}`"));
            }
            if self.at_kw("show") || self.at_kw("produce") {
                let at = self.here();
                if goal.is_some() {
                    return Err(Diagnostic::new(
                        D::UnexpectedToken,
                        at,
                        "an enunciation has one goal",
                    ));
                }
                let g = self.goal()?;
                let wanted = match kind {
                    PropKind::Problem => GoalKind::Produce,
                    PropKind::Theorem => GoalKind::Show,
                };
                if g.kind() != wanted {
                    return Err(Diagnostic::new(
                        D::UnexpectedToken,
                        at,
                        format!("a {} must {:?} its goal", kind.keyword(), wanted).to_lowercase(),
                    ));
                }
                goal = Some(g);
                self.end_line()?;
            } else {
                decls.push(self.decl()?);
            }
        }
        self.bump();
        self.end_line()?;
        let goal = goal.ok_or_else(|| {
            Diagnostic::new(
                D::MissingPart,
                span,
                format!("the enunciation of {} states no goal", self.number_text()),
            )
            .expecting("`show` or `produce`")
        })?;
        Ok(Enunciation {
            prose,
            decls,
            goal,
            span,
        })
    }

    fn decl(&mut self) -> PResult<Decl> {
        let span = self.here();
        let form = match self.peek().map(|t| t.lexeme.as_str()) {
            Some("given") => {
                self.bump();
                let t = self.expect_kind(K::Keyword, "an object kind")?;
                let kind = ObjKind::from_keyword(&t.lexeme).ok_or_else(|| {
                    Diagnostic::new(D::UnexpectedToken, t.span, "not an object kind")
                        .expecting("point, segment, triangle, polygon or angle")
                })?;
                let letters = self.kind_name(kind)?;
                DeclForm::Given { kind, letters }
            }
            Some("hypothesis") => {
                self.bump();
                DeclForm::Hypothesis(self.judgment()?)
            }
            Some("isosceles") => {
                self.bump();
                let triangle = self.kind_name(ObjKind::Triangle)?;
                self.expect_kw("apex")?;
                let at = self.here();
                let apex = self.expect_letter("the apex letter")?;
                if !triangle.contains(apex) {
                    return Err(Diagnostic::new(
                        D::BadArity,
                        at,
                        format!("{apex} is not a vertex of {triangle}"),
                    ));
                }
                DeclForm::Isosceles { triangle, apex }
            }
            Some("let") => {
                self.bump();
                let point = self.expect_letter("a point letter")?;
                self.expect(K::Symbol, "=")?;
                self.expect_kw("extend")?;
                self.expect_punct("(")?;
                let base = self.expect_name(NameKind::Segment, "a segment")?;
                self.expect_punct(",")?;
                let beyond = self.endpoint_of(&base)?;
                self.expect_punct(")")?;
                DeclForm::Extension {
                    point,
                    base,
                    beyond,
                }
            }
            _ => return Err(self.unexpected("`given`, `hypothesis`, `isosceles` or `let`")),
        };
        self.end_line()?;
        Ok(Decl { form, span })
    }

    fn endpoint_of(&mut self, segment: &str) -> PResult<char> {
        let at = self.here();
        let c = self.expect_letter("an endpoint letter")?;
        if !segment.contains(c) {
            self.diags.push(Diagnostic::new(
                D::BadArity,
                at,
                format!("{c} is not an endpoint of {segment}"),
            ));
        }
        Ok(c)
    }

    fn kind_name(&mut self, kind: ObjKind) -> PResult<String> {
        let at = self.here();
        let letters = self.expect_name(kind.name_kind(), &format!("a {} name", kind.keyword()))?;
        if kind == ObjKind::Triangle && letters.chars().count() != 3 {
            self.diags.push(Diagnostic::new(
                D::BadArity,
                at,
                format!("triangle {letters} needs three letters"),
            ));
        }
        Ok(letters)
    }

    fn goal(&mut self) -> PResult<Goal> {
        if self.at_kw("show") {
            self.bump();
            Ok(Goal::Show(self.comma_list(|p| p.judgment())?))
        } else {
            self.expect_kw("produce")?;
            let t = self.expect_kind(K::Keyword, "an object kind")?;
            let kind = ObjKind::from_keyword(&t.lexeme)
                .ok_or_else(|| Diagnostic::new(D::UnexpectedToken, t.span, "not an object kind"))?;
            let letters = self.kind_name(kind)?;
            let on = if self.at_kw("on") {
                self.bump();
                Some(self.expect_name(NameKind::Segment, "a segment")?)
            } else {
                None
            };
            let required = if self.at_kw("where") {
                self.bump();
                self.comma_list(|p| p.judgment())?
            } else {
                Vec::new()
            };
            Ok(Goal::Produce {
                kind,
                letters,
                on,
                required,
            })
        }
    }

    fn specification(&mut self) -> PResult<Specification> {
        let span = self.here();
        let elided = self.peek_at(1).is_some_and(|t| t.is(K::Keyword, "elided"));
        let spec = if elided {
            let kind = if self.at_kw("show") {
                GoalKind::Show
            } else {
                GoalKind::Produce
            };
            self.bump();
            self.bump();
            Specification::Elided { kind, span }
        } else {
            Specification::Stated {
                goal: self.goal()?,
                span,
            }
        };
        self.end_line()?;
        Ok(spec)
    }

    // ----- judgments ---------------------------------------------------------

    fn term(&mut self) -> PResult<Term> {
        let (kind, name_kind) = if self.at_kw("angle") {
            self.bump();
            (TermKind::Angle, NameKind::Angle)
        } else if self.at_kw("triangle") {
            self.bump();
            (TermKind::Triangle, NameKind::Polygon)
        } else if self.at_kw("polygon") {
            self.bump();
            (TermKind::Polygon, NameKind::Polygon)
        } else {
            (TermKind::Segment, NameKind::Segment)
        };
        let at = self.here();
        let letters = self.expect_name(name_kind, "an object name")?;
        if kind == TermKind::Triangle && letters.chars().count() != 3 {
            self.diags.push(Diagnostic::new(
                D::BadArity,
                at,
                format!("triangle {letters} needs three letters"),
            ));
        }
        Ok(Term { kind, letters })
    }

    fn judgment(&mut self) -> PResult<JudgmentAst> {
        let span = self.here();
        let on_form = self
            .peek()
            .is_some_and(|t| t.kind == K::ObjectName && t.lexeme.chars().count() == 1)
            && self.peek_at(1).is_some_and(|t| t.is(K::Keyword, "on"));
        let form = if on_form {
            let point = self.expect_letter("a point")?;
            self.bump();
            let circle = self.expect_ident("a circle label")?;
            JudgmentForm::On { point, circle }
        } else {
            let a = self.term()?;
            let sym = self.expect_kind(K::Symbol, "`=`, `==` or `>`")?;
            match sym.lexeme.as_str() {
                "=" => JudgmentForm::Equal(a, self.term()?),
                "==" | "≡" => {
                    let b = self.term()?;
                    let op = self
                        .peek()
                        .filter(|t| t.kind == K::Symbol)
                        .map(|t| t.lexeme.clone());
                    match op.as_deref() {
                        Some("+") => {
                            self.bump();
                            JudgmentForm::Sum(a, b, self.term()?)
                        }
                        Some("-") | Some("−") => {
                            self.bump();
                            JudgmentForm::Difference(a, b, self.term()?)
                        }
                        _ => JudgmentForm::Identical(a, b),
                    }
                }
                ">" => JudgmentForm::Greater(a, self.term()?),
                _ => {
                    return Err(Diagnostic::new(
                        D::UnexpectedToken,
                        sym.span,
                        format!("found {:?}", sym.lexeme),
                    )
                    .expecting("`=`, `==` or `>`"))
                }
            }
        };
        let j = JudgmentAst { form, span };
        if let Err(e) = j.to_judgment() {
            self.diags
                .push(Diagnostic::new(e.diagnostic_kind(), span, e.to_string()));
        }
        Ok(j)
    }

    // ----- construction ------------------------------------------------------

    fn block_open(&mut self, kw: &str) -> PResult<()> {
        self.expect_kw(kw)?;
        self.expect_punct("{")?;
        self.end_line()
    }

    fn block_close(&mut self) -> PResult<()> {
        self.expect_punct("}")?;
        self.end_line()
    }

    fn construction(&mut self, introduced: &mut BTreeSet<char>) -> PResult<Vec<ConstructionStep>> {
        self.block_open("construction")?;
        let mut steps = Vec::new();
        let mut circles = BTreeSet::new();
        while !self.at_punct("}") {
            let span = self.here();
            let op = self.construction_op()?;
            self.end_line()?;
            for c in op.fresh_points() {
                if !introduced.insert(c) {
                    self.diags.push(Diagnostic::new(
                        D::DuplicateObjectName,
                        span,
                        format!("point {c} already exists"),
                    ));
                }
            }
            if let ConstructionOp::Circle { label, .. } = &op {
                if !circles.insert(label.clone()) {
                    self.diags.push(Diagnostic::new(
                        D::DuplicateObjectName,
                        span,
                        format!("circle {label} already exists"),
                    ));
                }
            }
            steps.push(ConstructionStep { op, span });
        }
        self.block_close()?;
        Ok(steps)
    }

    fn construction_op(&mut self) -> PResult<ConstructionOp> {
        if self.at_kw("diagram") {
            self.bump();
            return Ok(ConstructionOp::Diagram(self.judgment()?));
        }
        if !self.at_kw("let") {
            return Err(self.unexpected("`let` or `diagram`"));
        }
        self.bump();
        let first = match self.peek() {
            Some(t) if matches!(t.kind, K::ObjectName | K::Identifier) => self.bump(),
            _ => return Err(self.unexpected("a name")),
        };
        let mut extra = Vec::new();
        while self.at_punct(",") {
            self.bump();
            extra.push(self.expect_letter("a point letter")?);
        }
        self.expect(K::Symbol, "=")?;
        if self.at_kw("by") {
            self.bump();
            let at = self.here();
            let prop = self.expect_number()?;
            self.check_backward(&prop, at);
            self.expect_punct("(")?;
            let args = self.comma_list(|p| {
                Ok(p.expect_kind(K::ObjectName, "an argument name")?
                    .lexeme
                    .clone())
            })?;
            self.expect_punct(")")?;
            let mut names = vec![Self::single_letter(first)?];
            names.extend(extra);
            if let Some(shape) = self.known.get(&prop).copied() {
                if shape.givens != args.len() {
                    self.diags.push(Diagnostic::new(
                        D::BadArity,
                        at,
                        format!(
                            "{prop} takes {} argument(s), {} given",
                            shape.givens,
                            args.len()
                        ),
                    ));
                }
                if let Some(f) = shape.fresh {
                    if f != names.len() {
                        self.diags.push(Diagnostic::new(
                            D::BadArity,
                            at,
                            format!("{prop} produces {f} point(s), {} named", names.len()),
                        ));
                    }
                }
            }
            return Ok(ConstructionOp::Derived { names, prop, args });
        }
        if !extra.is_empty() {
            return Err(Diagnostic::new(
                D::BadArity,
                first.span,
                "only a derived operation names several points",
            ));
        }
        let op = self.expect_kind(K::Keyword, "an operation")?;
        self.expect_punct("(")?;
        let result = match op.lexeme.as_str() {
            "line" => {
                let p = self.expect_letter("a point")?;
                self.expect_punct(",")?;
                let q = self.expect_letter("a point")?;
                let mut want = [p, q];
                want.sort_unstable();
                let mut got: Vec<char> = first.lexeme.chars().collect();
                got.sort_unstable();
                if first.kind != K::ObjectName || got != want {
                    return Err(Diagnostic::new(
                        D::BadArity,
                        first.span,
                        format!("a line through {p} and {q} is named {p}{q} or {q}{p}"),
                    ));
                }
                if let Err(e) = canonicalize(NameKind::Segment, &first.lexeme) {
                    return Err(Diagnostic::new(
                        name_error_kind(&e),
                        first.span,
                        e.to_string(),
                    ));
                }
                ConstructionOp::Line {
                    name: first.lexeme.clone(),
                    p,
                    q,
                }
            }
            "circle" => {
                if first.kind != K::Identifier {
                    return Err(Diagnostic::new(
                        D::UnexpectedToken,
                        first.span,
                        "circles take lowercase labels",
                    ));
                }
                let center = self.expect_letter("a center point")?;
                self.expect_punct(",")?;
                let radius = self.expect_name(NameKind::Segment, "a radius segment")?;
                ConstructionOp::Circle {
                    label: first.lexeme.clone(),
                    center,
                    radius,
                }
            }
            "meet" => {
                let c1 = self.expect_ident("a circle label")?;
                self.expect_punct(",")?;
                let c2 = self.expect_ident("a circle label")?;
                ConstructionOp::Meet {
                    name: Self::single_letter(first)?,
                    c1,
                    c2,
                }
            }
            "extend" => {
                let segment = self.expect_name(NameKind::Segment, "a segment")?;
                self.expect_punct(",")?;
                let beyond = self.endpoint_of(&segment)?;
                let circle = if self.at_punct(",") {
                    self.bump();
                    Some(self.expect_ident("a circle label")?)
                } else {
                    None
                };
                ConstructionOp::Extend {
                    name: Self::single_letter(first)?,
                    segment,
                    beyond,
                    circle,
                }
            }
            "pick" => ConstructionOp::Pick {
                name: Self::single_letter(first)?,
                segment: self.expect_name(NameKind::Segment, "a segment")?,
            },
            "cut" => {
                let segment = self.expect_name(NameKind::Segment, "a segment")?;
                self.expect_punct(",")?;
                let circle = self.expect_ident("a circle label")?;
                ConstructionOp::Cut {
                    name: Self::single_letter(first)?,
                    segment,
                    circle,
                }
            }
            other => {
                return Err(Diagnostic::new(
                    D::UnexpectedToken,
                    op.span,
                    format!("found {other:?}"),
                )
                .expecting("line, circle, meet, extend, pick, cut or by"))
            }
        };
        self.expect_punct(")")?;
        Ok(result)
    }

    fn single_letter(t: &Token) -> PResult<char> {
        let mut cs = t.lexeme.chars();
        match (t.kind, cs.next(), cs.next()) {
            (K::ObjectName, Some(c), None) => Ok(c),
            _ => Err(Diagnostic::new(
                D::BadArity,
                t.span,
                format!("{} is not a single point letter", t.lexeme),
            )),
        }
    }

    fn check_backward(&mut self, prop: &PropNumber, at: Span) {
        if let Some(cur) = &self.current {
            if prop >= cur {
                self.diags.push(Diagnostic::new(
                    D::ForwardReference,
                    at,
                    format!("{cur} refers to {prop}, which does not come before it"),
                ));
            }
        }
    }

    // ----- proof -------------------------------------------------------------

    fn proof(&mut self) -> PResult<Vec<ProofStep>> {
        self.block_open("proof")?;
        let mut steps: Vec<ProofStep> = Vec::new();
        while !self.at_punct("}") {
            let span = self.expect_kw("step")?;
            let label = self.expect_ident("a step label")?;
            if steps.iter().any(|s| s.label == label) {
                self.diags.push(Diagnostic::new(
                    D::DuplicateLabel,
                    span,
                    format!("step {label} is already defined"),
                ));
            }
            self.expect_punct(":")?;
            let judgments = self.comma_list(|p| p.judgment())?;
            self.expect_kw("by")?;
            let rule = self.rule()?;
            self.end_line()?;
            steps.push(ProofStep {
                label,
                judgments,
                rule,
                span,
            });
        }
        self.block_close()?;
        Ok(steps)
    }

    fn citations(&mut self) -> PResult<Vec<Citation>> {
        if self.at_punct(")") {
            return Ok(Vec::new());
        }
        self.comma_list(|p| {
            if p.at_punct("[") {
                p.bump();
                let j = p.judgment()?;
                p.expect_punct("]")?;
                Ok(Citation::Inline(j))
            } else {
                Ok(Citation::Label(
                    p.expect_ident("a step label or `[judgment]`")?,
                ))
            }
        })
    }

    fn rule(&mut self) -> PResult<RuleAst> {
        let at = self.here();
        match self.peek() {
            Some(t) if t.kind == K::Number => {
                let prop = self.expect_number()?;
                self.check_backward(&prop, at);
                self.expect_punct("(")?;
                let bindings = self.comma_list(|p| {
                    Ok(p.expect_kind(K::ObjectName, "a binding name")?
                        .lexeme
                        .clone())
                })?;
                let cites = if self.at_punct(";") {
                    self.bump();
                    self.citations()?
                } else {
                    Vec::new()
                };
                self.expect_punct(")")?;
                if let Some(shape) = self.known.get(&prop).copied() {
                    if shape.givens != bindings.len() || shape.hypotheses != cites.len() {
                        self.diags.push(Diagnostic::new(
                            D::BadArity,
                            at,
                            format!(
                                "{prop} takes {} binding(s) and {} premise(s), got {} and {}",
                                shape.givens,
                                shape.hypotheses,
                                bindings.len(),
                                cites.len()
                            ),
                        ));
                    }
                }
                Ok(RuleAst::Theorem {
                    prop,
                    bindings,
                    cites,
                })
            }
            Some(t) if t.kind == K::Identifier => {
                let name = self.bump().lexeme.clone();
                if name == "identity" {
                    return Ok(RuleAst::Identity);
                }
                if name == "def15" {
                    self.expect_punct("(")?;
                    let circle = self.expect_ident("a circle label")?;
                    self.expect_punct(")")?;
                    return Ok(RuleAst::Radius { circle });
                }
                let Some(cn) = CommonNotion::from_name(&name) else {
                    return Err(Diagnostic::new(
                        D::UnexpectedToken,
                        at,
                        format!("unknown rule {name}"),
                    )
                    .expecting("cn1 to cn5, def15, identity or a proposition number"));
                };
                self.expect_punct("(")?;
                let cites = self.citations()?;
                self.expect_punct(")")?;
                if cites.len() != cn.arity() {
                    self.diags.push(Diagnostic::new(
                        D::BadArity,
                        at,
                        format!(
                            "{cn} takes {} premise(s), {} cited",
                            cn.arity(),
                            cites.len()
                        ),
                    ));
                }
                Ok(RuleAst::CommonNotion {
                    n: cn as u8 + 1,
                    cites,
                })
            }
            _ => Err(self.unexpected("a rule")),
        }
    }

    fn conclusion(&mut self) -> PResult<Conclusion> {
        let t = self.bump();
        let marker = if t.lexeme == "qed-do" {
            Closing::QedDo
        } else {
            Closing::QedShow
        };
        let prose = if self.at_kw("elided") {
            self.bump();
            None
        } else {
            Some(self.expect_string()?)
        };
        self.end_line()?;
        Ok(Conclusion {
            marker,
            prose,
            span: t.span,
        })
    }
}
