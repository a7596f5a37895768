//! Hand-rolled lexer for the catalog grammar.
//!
//! Statements are newline-terminated, so newlines are tokens rather
//! than whitespace. `#` starts a comment running to end of line.

use super::ast::{Diagnostic, DiagnosticKind, SourceSpan};

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    /// Identifier or keyword; keywords are contextual.
    Ident(String),
    /// Numeric literal with its raw spelling, kept so integer-only
    /// positions (rational exponents) can be validated.
    Number(f64, String),
    Str(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Colon,
    Equals,
    Tilde,
    Newline,
    Eof,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

pub struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl<'a> Lexer<'a> {
    pub fn new(text: &'a str) -> Lexer<'a> {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    /// Tokenizes the whole input. Unrecognized characters become
    /// diagnostics and are skipped, so the parser always gets a token
    /// stream to recover over.
    pub fn tokenize(mut self) -> (Vec<Token>, Vec<Diagnostic>) {
        let mut tokens = Vec::new();
        let mut diagnostics = Vec::new();
        loop {
            match self.next_token(&mut diagnostics) {
                Some(token) => {
                    let eof = token.kind == TokenKind::Eof;
                    tokens.push(token);
                    if eof {
                        break;
                    }
                }
                None => continue,
            }
        }
        (tokens, diagnostics)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn span_from(&self, line: u32, column: u32) -> SourceSpan {
        let length = if line == self.line && self.column > column {
            self.column - column
        } else {
            1
        };
        SourceSpan::new(line, column, length)
    }

    fn next_token(&mut self, diagnostics: &mut Vec<Diagnostic>) -> Option<Token> {
        // Skip horizontal whitespace and comments.
        loop {
            match self.chars.peek() {
                Some(' ') | Some('\t') | Some('\r') => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(&c) = self.chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }

        let line = self.line;
        let column = self.column;
        let c = match self.chars.peek() {
            Some(&c) => c,
            None => {
                return Some(Token {
                    kind: TokenKind::Eof,
                    span: SourceSpan::new(line, column, 1),
                })
            }
        };

        let simple = |kind: TokenKind| Token {
            kind,
            span: SourceSpan::new(line, column, 1),
        };

        match c {
            '\n' => {
                self.bump();
                Some(simple(TokenKind::Newline))
            }
            '+' => {
                self.bump();
                Some(simple(TokenKind::Plus))
            }
            '-' => {
                self.bump();
                Some(simple(TokenKind::Minus))
            }
            '*' => {
                self.bump();
                Some(simple(TokenKind::Star))
            }
            '/' => {
                self.bump();
                Some(simple(TokenKind::Slash))
            }
            '^' => {
                self.bump();
                Some(simple(TokenKind::Caret))
            }
            '(' => {
                self.bump();
                Some(simple(TokenKind::LParen))
            }
            ')' => {
                self.bump();
                Some(simple(TokenKind::RParen))
            }
            ':' => {
                self.bump();
                Some(simple(TokenKind::Colon))
            }
            '=' => {
                self.bump();
                Some(simple(TokenKind::Equals))
            }
            '~' => {
                self.bump();
                Some(simple(TokenKind::Tilde))
            }
            '"' => self.lex_string(line, column, diagnostics),
            c if c.is_ascii_digit() => self.lex_number(line, column, diagnostics),
            c if c.is_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        ident.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Some(Token {
                    kind: TokenKind::Ident(ident),
                    span: self.span_from(line, column),
                })
            }
            other => {
                self.bump();
                diagnostics.push(Diagnostic::new(
                    DiagnosticKind::Syntax,
                    SourceSpan::new(line, column, 1),
                    format!("unexpected character {other:?}"),
                ));
                None
            }
        }
    }

    fn lex_string(
        &mut self,
        line: u32,
        column: u32,
        diagnostics: &mut Vec<Diagnostic>,
    ) -> Option<Token> {
        self.bump(); // opening quote
        let mut value = String::new();
        loop {
            match self.chars.peek() {
                None | Some('\n') => {
                    diagnostics.push(Diagnostic::new(
                        DiagnosticKind::Syntax,
                        self.span_from(line, column),
                        "unterminated string literal",
                    ));
                    return None;
                }
                Some('"') => {
                    self.bump();
                    break;
                }
                Some('\\') => {
                    self.bump();
                    match self.chars.peek() {
                        Some('"') => {
                            value.push('"');
                            self.bump();
                        }
                        Some('\\') => {
                            value.push('\\');
                            self.bump();
                        }
                        _ => {
                            value.push('\\');
                        }
                    }
                }
                Some(&c) => {
                    value.push(c);
                    self.bump();
                }
            }
        }
        Some(Token {
            kind: TokenKind::Str(value),
            span: self.span_from(line, column),
        })
    }

    fn lex_number(
        &mut self,
        line: u32,
        column: u32,
        diagnostics: &mut Vec<Diagnostic>,
    ) -> Option<Token> {
        let mut raw = String::new();
        while let Some(&c) = self.chars.peek() {
            if c.is_ascii_digit() {
                raw.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if self.chars.peek() == Some(&'.') {
            raw.push('.');
            self.bump();
            let mut any = false;
            while let Some(&c) = self.chars.peek() {
                if c.is_ascii_digit() {
                    raw.push(c);
                    self.bump();
                    any = true;
                } else {
                    break;
                }
            }
            if !any {
                diagnostics.push(Diagnostic::new(
                    DiagnosticKind::Syntax,
                    self.span_from(line, column),
                    "expected digits after decimal point",
                ));
                return None;
            }
        }
        if matches!(self.chars.peek(), Some('e') | Some('E')) {
            // Only treat as an exponent when digits (or a signed digit
            // run) follow; otherwise leave the `e` for the ident lexer.
            let mut clone = self.chars.clone();
            clone.next();
            let mut sign = 0u32;
            if matches!(clone.peek(), Some('+') | Some('-')) {
                clone.next();
                sign = 1;
            }
            if matches!(clone.peek(), Some(c) if c.is_ascii_digit()) {
                raw.push(self.bump().unwrap());
                if sign == 1 {
                    raw.push(self.bump().unwrap());
                }
                while let Some(&c) = self.chars.peek() {
                    if c.is_ascii_digit() {
                        raw.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
            }
        }
        let span = self.span_from(line, column);
        match raw.parse::<f64>() {
            Ok(value) if value.is_finite() => Some(Token {
                kind: TokenKind::Number(value, raw),
                span,
            }),
            _ => {
                diagnostics.push(Diagnostic::new(
                    DiagnosticKind::Syntax,
                    span,
                    format!("numeric literal \"{raw}\" is out of range"),
                ));
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        let (tokens, diags) = Lexer::new(text).tokenize();
        assert!(diags.is_empty(), "unexpected diagnostics: {diags:?}");
        tokens.into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn lexes_relation_line() {
        let toks = kinds("relation eq3: e^2 / (G * m_e^2) ~ 1e40 tol 3.0 dex");
        assert_eq!(toks[0], TokenKind::Ident("relation".into()));
        assert_eq!(toks[1], TokenKind::Ident("eq3".into()));
        assert_eq!(toks[2], TokenKind::Colon);
        assert!(toks.contains(&TokenKind::Tilde));
        assert!(toks.contains(&TokenKind::Number(1e40, "1e40".into())));
    }

    #[test]
    fn comments_and_newlines() {
        let toks = kinds("# header\nconst x = 1 g # trailing\n");
        assert_eq!(toks[0], TokenKind::Newline);
        assert_eq!(toks[1], TokenKind::Ident("const".into()));
        assert!(toks.contains(&TokenKind::Newline));
    }

    #[test]
    fn number_followed_by_ident() {
        // `2.725 K`: the K must not be swallowed by the number.
        let toks = kinds("2.725 K");
        assert_eq!(toks[0], TokenKind::Number(2.725, "2.725".into()));
        assert_eq!(toks[1], TokenKind::Ident("K".into()));
    }

    #[test]
    fn exponent_needs_digits() {
        // `1e` lexes as number 1 followed by ident `e`.
        let toks = kinds("1e");
        assert_eq!(toks[0], TokenKind::Number(1.0, "1".into()));
        assert_eq!(toks[1], TokenKind::Ident("e".into()));
    }

    #[test]
    fn out_of_range_literal_is_diagnosed() {
        let (_, diags) = Lexer::new("1e999").tokenize();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].kind, DiagnosticKind::Syntax);
    }

    #[test]
    fn string_escapes() {
        let toks = kinds(r#""a \"b\" \\ c""#);
        assert_eq!(toks[0], TokenKind::Str(r#"a "b" \ c"#.into()));
    }

    #[test]
    fn spans_are_one_based(){
        let (tokens, _) = Lexer::new("const x").tokenize();
        assert_eq!(tokens[0].span.line, 1);
        assert_eq!(tokens[0].span.column, 1);
        assert_eq!(tokens[0].span.length, 5);
        assert_eq!(tokens[1].span.column, 7);
    }
}
