use euclid_kernel::checker::check_theory;
use euclid_kernel::lang::ast::{Item, PropKind, Specification};
use euclid_kernel::lang::{parse, print_theory, tokenize, DiagnosticKind as D, TokenKind};
use euclid_kernel::BOOK1;

fn kinds(src: &str) -> Vec<D> {
    parse(src)
        .unwrap_err()
        .into_iter()
        .map(|d| d.kind)
        .collect()
}

#[test]
fn corpus_has_five_entries_in_order() {
    let t = parse(BOOK1).unwrap();
    let numbers: Vec<String> = t.items.iter().map(|i| i.number().to_string()).collect();
    assert_eq!(numbers, ["1.1", "1.2", "1.3", "1.4", "1.5"]);
    assert!(matches!(t.items[3], Item::Primitive(_)));
    let kinds: Vec<PropKind> = t.propositions().map(|p| p.kind).collect();
    assert_eq!(
        kinds,
        [
            PropKind::Problem,
            PropKind::Problem,
            PropKind::Problem,
            PropKind::Theorem
        ]
    );
}

#[test]
fn lexing_examples() {
    let toks = tokenize("let CA = line(C, A)");
    let got: Vec<(TokenKind, &str)> = toks.iter().map(|t| (t.kind, t.lexeme.as_str())).collect();
    assert_eq!(
        got,
        [
            (TokenKind::Keyword, "let"),
            (TokenKind::ObjectName, "CA"),
            (TokenKind::Symbol, "="),
            (TokenKind::Keyword, "line"),
            (TokenKind::Punct, "("),
            (TokenKind::ObjectName, "C"),
            (TokenKind::Punct, ","),
            (TokenKind::ObjectName, "A"),
            (TokenKind::Punct, ")"),
        ]
    );
    let toks = tokenize("# comment\nqed-do");
    assert_eq!(toks.len(), 1);
    assert!(toks[0].is(TokenKind::Keyword, "qed-do"));
    let toks = tokenize("@");
    assert_eq!(toks[0].kind, TokenKind::Error);
    assert_eq!((toks[0].span.line, toks[0].span.col), (1, 1));
}

#[test]
fn unknown_character_is_a_diagnostic() {
    assert!(kinds("theory \"t\"\n@").contains(&D::UnexpectedCharacter));
}

#[test]
fn construction_after_proof_is_out_of_order() {
    let block = "  construction {\n    let c1 = circle(A, AB)\n    let c2 = circle(B, BA)\n    let C = meet(c1, c2)\n    let CA = line(C, A)\n    let CB = line(C, B)\n  }\n";
    let src = BOOK1.replacen(block, "", 1).replacen(
        "    step s3: CA = CB by cn1(s1, s2)\n  }\n",
        &format!("    step s3: CA = CB by cn1(s1, s2)\n  }}\n{block}"),
        1,
    );
    assert!(kinds(&src).contains(&D::PartsOutOfOrder));
}

#[test]
fn later_proposition_cannot_be_cited() {
    let src = BOOK1.replacen("let D = by 1.1(AB)", "let D = by 1.3(AB)", 1);
    assert!(kinds(&src).contains(&D::ForwardReference));
    let src = BOOK1.replacen("by 1.4(AFC, AGB;", "by 1.6(AFC, AGB;", 1);
    assert!(kinds(&src).contains(&D::ForwardReference));
}

#[test]
fn missing_enunciation() {
    let src = BOOK1.replacen(
        "  enunciation \"On a given finite straight line, construct an equilateral triangle.\" {\n    given segment AB\n    produce triangle ABC where CA = AB, CB = AB, CA = CB\n  }\n",
        "",
        1,
    );
    assert!(kinds(&src).contains(&D::MissingPart));
}

#[test]
fn numbers_must_increase() {
    let src = BOOK1.replacen("problem 1.3 {", "problem 1.1 {", 1);
    assert!(kinds(&src).contains(&D::NonIncreasingNumber));
}

#[test]
fn repeated_letter_in_a_name() {
    let src = BOOK1.replacen("let CA = line(C, A)", "let CC = line(C, C)", 1);
    assert!(kinds(&src).contains(&D::RepeatedLetter));
}

#[test]
fn round_trip_is_structural_identity() {
    let t = parse(BOOK1).unwrap();
    let printed = print_theory(&t);
    let again = parse(&printed).unwrap_or_else(|d| panic!("{printed}\n{d:?}"));
    assert_eq!(t, again);
    assert_eq!(printed, print_theory(&again));
}

#[test]
fn every_single_token_deletion_is_diagnosed() {
    let lines: Vec<&str> = BOOK1.lines().collect();
    for t in tokenize(BOOK1) {
        let (l, c) = ((t.span.line - 1) as usize, (t.span.col - 1) as usize);
        let mut m: Vec<String> = lines.iter().map(|s| s.to_string()).collect();
        m[l] = lines[l]
            .chars()
            .take(c)
            .chain(lines[l].chars().skip(c + t.span.len as usize))
            .collect();
        let ds = parse(&m.join("\n")).err();
        assert!(
            ds.is_some_and(|d| !d.is_empty()),
            "deleting {:?} at {} went unnoticed",
            t.lexeme,
            t.span
        );
    }
}

const ELIDED: &str = r#"theory "elided parts"

problem 1.1 {
  enunciation "Equilateral triangle." {
    given segment AB
    produce triangle ABC where CA = AB, CB = AB, CA = CB
  }
  given segment AB
  produce elided
  construction {
    let c1 = circle(A, AB)
    let c2 = circle(B, BA)
    let C = meet(c1, c2)
    let CA = line(C, A)
    let CB = line(C, B)
  }
  proof {
    step s1: AC = AB by def15(c1)
    step s2: BC = BA by def15(c2)
    step s3: CA = CB by cn1(s1, s2)
  }
  qed-do elided
}
"#;

#[test]
fn elided_parts_are_reconstructed() {
    let t = parse(ELIDED).unwrap();
    let p = t.propositions().next().unwrap();
    assert!(matches!(p.specification, Specification::Elided { .. }));
    assert!(p.conclusion.prose.is_none());
    let report = check_theory(&t);
    let r = &report.reports[0];
    assert!(r.is_verified(), "{:?}", r.diagnostics);
    let spec = r.reconstructed_specification.as_deref().unwrap();
    assert!(spec.starts_with("produce triangle ABC"), "{spec}");
    assert!(r.reconstructed_conclusion.is_some());
    assert_eq!(parse(&print_theory(&t)).unwrap(), t);
}

#[test]
fn empty_theory_verifies() {
    let t = parse("theory \"nothing\"\n").unwrap();
    let r = check_theory(&t);
    assert!(r.reports.is_empty());
    assert_eq!(r.verdict, euclid_kernel::checker::Verdict::Verified);
}
