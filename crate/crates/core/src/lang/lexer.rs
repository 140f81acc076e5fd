use serde::Serialize;

use super::diag::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TokenKind {
    Keyword,
    Identifier,
    /// A run of uppercase point letters.
    ObjectName,
    /// Dotted proposition number.
    Number,
    /// `=`, `==`, `≡`, `+`, `-`, `−`, `>`
    Symbol,
    Punct,
    Str,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub kind: TokenKind,
    /// Exactly the source text covered by `span`.
    pub lexeme: String,
    pub span: Span,
}

impl Token {
    pub fn is(&self, kind: TokenKind, lexeme: &str) -> bool {
        self.kind == kind && self.lexeme == lexeme
    }

    /// Contents of a string literal with escapes resolved.
    pub fn string_value(&self) -> String {
        let inner = self
            .lexeme
            .strip_prefix('"')
            .and_then(|s| s.strip_suffix('"'))
            .unwrap_or(&self.lexeme);
        let mut out = String::new();
        let mut chars = inner.chars();
        while let Some(c) = chars.next() {
            if c == '\\' {
                if let Some(n) = chars.next() {
                    out.push(n);
                }
            } else {
                out.push(c);
            }
        }
        out
    }
}

pub const KEYWORDS: &[&str] = &[
    "theory",
    "problem",
    "theorem",
    "primitive",
    "enunciation",
    "given",
    "hypothesis",
    "isosceles",
    "apex",
    "let",
    "show",
    "produce",
    "on",
    "where",
    "elided",
    "construction",
    "proof",
    "step",
    "by",
    "diagram",
    "line",
    "circle",
    "meet",
    "extend",
    "pick",
    "cut",
    "qed-do",
    "qed-show",
    "point",
    "segment",
    "triangle",
    "polygon",
    "angle",
];

/// Split `source` into tokens. Never fails: characters that start no token
/// become [`TokenKind::Error`] tokens. Comments run from `#` to end of line.
pub fn tokenize(source: &str) -> Vec<Token> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let kind = match c {
            'A'..='Z' => {
                while i < chars.len() && chars[i].is_ascii_uppercase() {
                    i += 1;
                }
                TokenKind::ObjectName
            }
            'a'..='z' => {
                i += 1;
                while i < chars.len() {
                    let d = chars[i];
                    if d.is_ascii_lowercase() || d.is_ascii_digit() || d == '_' {
                        i += 1;
                    } else if d == '-' && chars.get(i + 1).is_some_and(char::is_ascii_lowercase) {
                        i += 2;
                    } else {
                        break;
                    }
                }
                let word: String = chars[start..i].iter().collect();
                if KEYWORDS.contains(&word.as_str()) {
                    TokenKind::Keyword
                } else {
                    TokenKind::Identifier
                }
            }
            '0'..='9' => {
                while i < chars.len()
                    && (chars[i].is_ascii_digit()
                        || (chars[i] == '.' && chars.get(i + 1).is_some_and(char::is_ascii_digit)))
                {
                    i += 1;
                }
                TokenKind::Number
            }
            '"' => {
                i += 1;
                let mut closed = false;
                while i < chars.len() && chars[i] != '\n' {
                    match chars[i] {
                        '\\' if i + 1 < chars.len() && chars[i + 1] != '\n' => i += 2,
                        '"' => {
                            i += 1;
                            closed = true;
                            break;
                        }
                        _ => i += 1,
                    }
                }
                if closed {
                    TokenKind::Str
                } else {
                    TokenKind::Error
                }
            }
            '=' => {
                i += if chars.get(i + 1) == Some(&'=') { 2 } else { 1 };
                TokenKind::Symbol
            }
            '≡' | '+' | '-' | '−' | '>' => {
                i += 1;
                TokenKind::Symbol
            }
            '(' | ')' | '{' | '}' | '[' | ']' | ',' | ';' | ':' => {
                i += 1;
                TokenKind::Punct
            }
            _ => {
                i += 1;
                TokenKind::Error
            }
        };
        let lexeme: String = chars[start..i].iter().collect();
        let len = (i - start) as u32;
        tokens.push(Token {
            kind,
            lexeme,
            span: Span::new(line, col, len),
        });
        col += len;
    }
    tokens
}
