//! Recursive-descent parser for the catalog grammar.
//!
//! Parsing is total: every failure becomes a positioned diagnostic and
//! the parser recovers at the next line. See the module docs in
//! [`crate::dsl`] for the grammar.

use std::collections::HashSet;

use super::ast::{
    BinOp, CatalogFile, ConstDef, Diagnostic, DiagnosticKind, Expr, ExprKind, FuncName,
    SourceSpan,
};
use super::lexer::{Lexer, Token, TokenKind};
use crate::dimension::Dimension;
use crate::engine::{Relation, RelationKind};
use crate::quantity::Quantity;
use crate::rational::Rational;
use crate::registry::{Provenance, ProvenanceTag};

/// Deepest allowed expression nesting; keeps hostile inputs from
/// exhausting the stack.
const MAX_DEPTH: u32 = 256;
/// Largest accepted magnitude for exponent numerators/denominators.
const MAX_EXPONENT: i64 = 1_000_000;

pub fn parse_catalog(text: &str) -> Result<CatalogFile, Vec<Diagnostic>> {
    let (tokens, mut diagnostics) = Lexer::new(text).tokenize();
    let mut parser = Parser::new(tokens);
    let catalog = parser.parse_file();
    diagnostics.extend(parser.diagnostics);
    if diagnostics.is_empty() {
        Ok(catalog)
    } else {
        Err(diagnostics)
    }
}

/// Parses a single expression (the `eval` entry point). Trailing input
/// after the expression is an error.
pub fn parse_expression(text: &str) -> Result<Expr, Vec<Diagnostic>> {
    let (tokens, mut diagnostics) = Lexer::new(text).tokenize();
    let mut parser = Parser::new(tokens);
    let expr = parser.expr(0);
    parser.skip_newlines();
    if let Some(expr) = expr {
        if !matches!(parser.peek().kind, TokenKind::Eof) {
            let t = parser.peek().clone();
            parser.diagnostics.push(Diagnostic::new(
                DiagnosticKind::Syntax,
                t.span,
                "unexpected input after expression",
            ));
        }
        diagnostics.extend(parser.diagnostics);
        if diagnostics.is_empty() {
            return Ok(expr);
        }
    } else {
        diagnostics.extend(parser.diagnostics);
    }
    Err(diagnostics)
}

/// Parses `NUMBER unit?`, e.g. `2.725 K` (used for overrides).
pub fn parse_quantity(text: &str) -> Result<Quantity, Vec<Diagnostic>> {
    let (tokens, mut diagnostics) = Lexer::new(text).tokenize();
    let mut parser = Parser::new(tokens);
    let quantity = parser.quantity();
    parser.skip_newlines();
    if let Some(q) = quantity {
        if !matches!(parser.peek().kind, TokenKind::Eof) {
            let t = parser.peek().clone();
            parser.diagnostics.push(Diagnostic::new(
                DiagnosticKind::Syntax,
                t.span,
                "unexpected input after quantity",
            ));
        }
        diagnostics.extend(parser.diagnostics);
        if diagnostics.is_empty() {
            return Ok(q);
        }
    } else {
        diagnostics.extend(parser.diagnostics);
    }
    Err(diagnostics)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    diagnostics: Vec<Diagnostic>,
}

impl Parser {
    fn new(tokens: Vec<Token>) -> Parser {
        Parser {
            tokens,
            pos: 0,
            diagnostics: Vec::new(),
        }
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn advance(&mut self) -> Token {
        let token = self.peek().clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        token
    }

    fn error(&mut self, span: SourceSpan, message: impl Into<String>) {
        self.diagnostics
            .push(Diagnostic::new(DiagnosticKind::Syntax, span, message));
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek().kind, TokenKind::Newline) {
            self.advance();
        }
    }

    fn skip_to_newline(&mut self) {
        while !matches!(self.peek().kind, TokenKind::Newline | TokenKind::Eof) {
            self.advance();
        }
    }

    fn expect_ident(&mut self, what: &str) -> Option<(String, SourceSpan)> {
        match &self.peek().kind {
            TokenKind::Ident(name) => {
                let name = name.clone();
                let span = self.peek().span;
                self.advance();
                Some((name, span))
            }
            _ => {
                let t = self.peek().clone();
                self.error(t.span, format!("expected {what}"));
                None
            }
        }
    }

    fn expect_keyword(&mut self, keyword: &str) -> Option<SourceSpan> {
        match &self.peek().kind {
            TokenKind::Ident(name) if name == keyword => {
                let span = self.peek().span;
                self.advance();
                Some(span)
            }
            _ => {
                let t = self.peek().clone();
                self.error(t.span, format!("expected \"{keyword}\""));
                None
            }
        }
    }

    fn expect_token(&mut self, kind: &TokenKind, what: &str) -> Option<SourceSpan> {
        if &self.peek().kind == kind {
            let span = self.peek().span;
            self.advance();
            Some(span)
        } else {
            let t = self.peek().clone();
            self.error(t.span, format!("expected {what}"));
            None
        }
    }

    fn expect_string(&mut self, what: &str) -> Option<String> {
        match &self.peek().kind {
            TokenKind::Str(value) => {
                let value = value.clone();
                self.advance();
                Some(value)
            }
            _ => {
                let t = self.peek().clone();
                self.error(t.span, format!("expected {what}"));
                None
            }
        }
    }

    fn parse_file(&mut self) -> CatalogFile {
        let mut catalog = CatalogFile::default();
        let mut seen_relations: HashSet<String> = HashSet::new();
        let mut seen_constants: HashSet<String> = HashSet::new();
        loop {
            self.skip_newlines();
            let token = self.peek().clone();
            match &token.kind {
                TokenKind::Eof => break,
                TokenKind::Ident(word) => match word.as_str() {
                    "const" => {
                        if let Some(def) = self.const_def() {
                            if !seen_constants.insert(def.name.clone()) {
                                self.diagnostics.push(Diagnostic::new(
                                    DiagnosticKind::DuplicateId,
                                    def.span,
                                    format!("duplicate constant \"{}\"", def.name),
                                ));
                            } else {
                                catalog.constants.push(def);
                            }
                        } else {
                            self.skip_to_newline();
                        }
                    }
                    "relation" => {
                        if let Some((relation, span)) = self.relation_def() {
                            if !seen_relations.insert(relation.id.clone()) {
                                self.diagnostics.push(Diagnostic::new(
                                    DiagnosticKind::DuplicateId,
                                    span,
                                    format!("duplicate relation \"{}\"", relation.id),
                                ));
                            } else {
                                catalog.relations.push(relation);
                            }
                        } else {
                            self.skip_to_newline();
                        }
                    }
                    "assert" => {
                        if let Some((relation, span)) = self.assert_def() {
                            if !seen_relations.insert(relation.id.clone()) {
                                self.diagnostics.push(Diagnostic::new(
                                    DiagnosticKind::DuplicateId,
                                    span,
                                    format!("duplicate relation \"{}\"", relation.id),
                                ));
                            } else {
                                catalog.relations.push(relation);
                            }
                        } else {
                            self.skip_to_newline();
                        }
                    }
                    other => {
                        self.error(
                            token.span,
                            format!("expected \"const\", \"relation\" or \"assert\", found \"{other}\""),
                        );
                        self.skip_to_newline();
                    }
                },
                _ => {
                    self.error(token.span, "expected a statement");
                    self.skip_to_newline();
                }
            }
        }
        catalog
    }

    fn end_of_statement(&mut self) -> bool {
        match self.peek().kind {
            TokenKind::Newline | TokenKind::Eof => true,
            _ => {
                let t = self.peek().clone();
                self.error(t.span, "expected end of statement");
                false
            }
        }
    }

    /// const_def := "const" IDENT "=" NUMBER unit? ("prov" STRING)?
    fn const_def(&mut self) -> Option<ConstDef> {
        let keyword_span = self.expect_keyword("const")?;
        let (name, _) = self.expect_ident("constant name")?;
        self.expect_token(&TokenKind::Equals, "\"=\"")?;
        let quantity = self.quantity()?;
        let provenance = if matches!(&self.peek().kind, TokenKind::Ident(w) if w == "prov") {
            self.advance();
            let text = self.expect_string("provenance string")?;
            parse_provenance(&text)
        } else {
            Provenance::asserted("catalog file")
        };
        if !self.end_of_statement() {
            return None;
        }
        Some(ConstDef {
            name,
            value: quantity,
            provenance,
            span: keyword_span,
        })
    }

    /// NUMBER unit? where unit := (UNIT_TOKEN ("^" RATIONAL)?)+
    fn quantity(&mut self) -> Option<Quantity> {
        let (value, span) = match self.peek().kind.clone() {
            TokenKind::Number(value, _) => {
                let span = self.peek().span;
                self.advance();
                (value, span)
            }
            _ => {
                let t = self.peek().clone();
                self.error(t.span, "expected a numeric literal");
                return None;
            }
        };
        let mut dimension = Dimension::DIMENSIONLESS;
        while let TokenKind::Ident(word) = &self.peek().kind {
            if word == "prov" {
                break;
            }
            let unit = match unit_dimension(word) {
                Some(dim) => dim,
                None => {
                    let t = self.peek().clone();
                    self.error(
                        t.span,
                        format!("unknown unit \"{word}\" (expected g, cm, s, K, erg, esu or dimensionless)"),
                    );
                    return None;
                }
            };
            self.advance();
            let exponent = if matches!(self.peek().kind, TokenKind::Caret) {
                self.advance();
                self.rational()?
            } else {
                Rational::ONE
            };
            dimension = dimension * unit.pow(exponent);
        }
        match Quantity::try_new(value, dimension) {
            Ok(q) => Some(q),
            Err(_) => {
                self.error(span, "quantity magnitude is out of range");
                None
            }
        }
    }

    /// relation_def := "relation" IDENT ":" expr ("~"|"=") expr
    ///                 "tol" NUMBER "dex" ("ref" STRING)?
    fn relation_def(&mut self) -> Option<(Relation, SourceSpan)> {
        self.expect_keyword("relation")?;
        let (id, id_span) = self.expect_ident("relation identifier")?;
        self.expect_token(&TokenKind::Colon, "\":\"")?;
        let lhs = self.expr(0)?;
        match self.peek().kind {
            TokenKind::Tilde | TokenKind::Equals => {
                self.advance();
            }
            _ => {
                let t = self.peek().clone();
                self.error(t.span, "expected \"~\" or \"=\" between relation sides");
                return None;
            }
        }
        let rhs = self.expr(0)?;
        self.expect_keyword("tol")?;
        let (tol, tol_span) = match self.peek().kind.clone() {
            TokenKind::Number(value, _) => {
                let span = self.peek().span;
                self.advance();
                (value, span)
            }
            _ => {
                let t = self.peek().clone();
                self.error(t.span, "expected tolerance value");
                return None;
            }
        };
        if tol <= 0.0 {
            self.error(tol_span, "tolerance must be positive");
            return None;
        }
        self.expect_keyword("dex")?;
        let paper_ref = if matches!(&self.peek().kind, TokenKind::Ident(w) if w == "ref") {
            self.advance();
            self.expect_string("reference string")?
        } else {
            String::new()
        };
        if !self.end_of_statement() {
            return None;
        }
        Some((
            Relation {
                id,
                kind: RelationKind::Equality {
                    lhs,
                    rhs,
                    tol_dex: tol,
                },
                paper_ref,
            },
            id_span,
        ))
    }

    /// assert_def := "assert" IDENT ":" STRING "ref" STRING
    fn assert_def(&mut self) -> Option<(Relation, SourceSpan)> {
        self.expect_keyword("assert")?;
        let (id, id_span) = self.expect_ident("assertion identifier")?;
        self.expect_token(&TokenKind::Colon, "\":\"")?;
        let note = self.expect_string("assertion text")?;
        self.expect_keyword("ref")?;
        let paper_ref = self.expect_string("reference string")?;
        if !self.end_of_statement() {
            return None;
        }
        Some((
            Relation {
                id,
                kind: RelationKind::Asserted { note },
                paper_ref,
            },
            id_span,
        ))
    }

    /// expr := term (("+"|"-") term)*
    fn expr(&mut self, depth: u32) -> Option<Expr> {
        if depth > MAX_DEPTH {
            let t = self.peek().clone();
            self.error(t.span, "expression is nested too deeply");
            return None;
        }
        let mut lhs = self.term(depth + 1)?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Plus => BinOp::Add,
                TokenKind::Minus => BinOp::Sub,
                _ => break,
            };
            let op_span = self.peek().span;
            self.advance();
            let rhs = self.term(depth + 1)?;
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), op_span);
        }
        Some(lhs)
    }

    /// term := factor (("*"|"/") factor)*
    fn term(&mut self, depth: u32) -> Option<Expr> {
        if depth > MAX_DEPTH {
            let t = self.peek().clone();
            self.error(t.span, "expression is nested too deeply");
            return None;
        }
        let mut lhs = self.factor(depth + 1)?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Star => BinOp::Mul,
                TokenKind::Slash => {
                    // `x^1/2` never reaches here (the exponent parser is
                    // greedy), so a slash at term level is division.
                    BinOp::Div
                }
                _ => break,
            };
            let op_span = self.peek().span;
            self.advance();
            let rhs = self.factor(depth + 1)?;
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), op_span);
        }
        Some(lhs)
    }

    /// factor := primary ("^" RATIONAL)?
    fn factor(&mut self, depth: u32) -> Option<Expr> {
        let base = self.primary(depth + 1)?;
        if matches!(self.peek().kind, TokenKind::Caret) {
            let caret_span = self.peek().span;
            self.advance();
            let exponent = self.rational()?;
            return Some(Expr::new(
                ExprKind::Pow(Box::new(base), exponent),
                caret_span,
            ));
        }
        Some(base)
    }

    /// primary := NUMBER | IDENT | "(" expr ")" | fn "(" expr ")"
    fn primary(&mut self, depth: u32) -> Option<Expr> {
        if depth > MAX_DEPTH {
            let t = self.peek().clone();
            self.error(t.span, "expression is nested too deeply");
            return None;
        }
        let token = self.peek().clone();
        match token.kind {
            TokenKind::Number(value, _) => {
                self.advance();
                Some(Expr::new(ExprKind::Number(value), token.span))
            }
            TokenKind::Ident(name) => {
                self.advance();
                if matches!(self.peek().kind, TokenKind::LParen) {
                    let func = match FuncName::from_symbol(&name) {
                        Some(f) => f,
                        None => {
                            self.diagnostics.push(Diagnostic::new(
                                DiagnosticKind::UnknownFunction,
                                token.span,
                                format!("unknown function \"{name}\" (expected sqrt, exp or log10)"),
                            ));
                            return None;
                        }
                    };
                    self.advance(); // (
                    let arg = self.expr(depth + 1)?;
                    self.expect_token(&TokenKind::RParen, "\")\"")?;
                    Some(Expr::new(
                        ExprKind::Call(func, Box::new(arg)),
                        token.span,
                    ))
                } else {
                    Some(Expr::new(ExprKind::Ident(name), token.span))
                }
            }
            TokenKind::LParen => {
                self.advance();
                let inner = self.expr(depth + 1)?;
                self.expect_token(&TokenKind::RParen, "\")\"")?;
                Some(inner)
            }
            _ => {
                self.error(token.span, "expected a number, identifier or \"(\"");
                None
            }
        }
    }

    /// RATIONAL := ("-")? INT ("/" INT)?, optionally parenthesized.
    /// Binds greedily: in `x^1/2` the whole `1/2` is the exponent.
    fn rational(&mut self) -> Option<Rational> {
        let parenthesized = if matches!(self.peek().kind, TokenKind::LParen) {
            self.advance();
            true
        } else {
            false
        };
        let negative = if matches!(self.peek().kind, TokenKind::Minus) {
            self.advance();
            true
        } else {
            false
        };
        let numerator = self.integer("exponent numerator")?;
        let denominator = if matches!(self.peek().kind, TokenKind::Slash)
            && matches!(
                self.tokens.get(self.pos + 1).map(|t| &t.kind),
                Some(TokenKind::Number(_, raw)) if !raw.contains('.') && !raw.contains(['e', 'E'])
            ) {
            let slash_span = self.peek().span;
            self.advance();
            let den = self.integer("exponent denominator")?;
            if den == 0 {
                self.error(slash_span, "exponent denominator must be non-zero");
                return None;
            }
            den
        } else {
            1
        };
        if parenthesized {
            self.expect_token(&TokenKind::RParen, "\")\"")?;
        }
        let numerator = if negative { -numerator } else { numerator };
        Some(Rational::new(numerator, denominator))
    }

    fn integer(&mut self, what: &str) -> Option<i64> {
        match &self.peek().kind {
            TokenKind::Number(_, raw) if !raw.contains('.') && !raw.contains(['e', 'E']) => {
                let span = self.peek().span;
                let parsed = raw.parse::<i64>();
                let raw = raw.clone();
                self.advance();
                match parsed {
                    Ok(v) if v.abs() <= MAX_EXPONENT => Some(v),
                    _ => {
                        self.error(span, format!("{what} \"{raw}\" is out of range"));
                        None
                    }
                }
            }
            _ => {
                let t = self.peek().clone();
                self.error(t.span, format!("expected integer {what}"));
                None
            }
        }
    }
}

fn unit_dimension(word: &str) -> Option<Dimension> {
    match word {
        "g" => Some(Dimension::MASS),
        "cm" => Some(Dimension::LENGTH),
        "s" => Some(Dimension::TIME),
        "K" => Some(Dimension::TEMPERATURE),
        "erg" => Some(Dimension::energy()),
        "esu" => Some(Dimension::charge()),
        "dimensionless" => Some(Dimension::DIMENSIONLESS),
        _ => None,
    }
}

/// Provenance strings are written `"tag: citation"`; unknown or missing
/// tags fall back to the asserted tag with the whole string as citation.
fn parse_provenance(text: &str) -> Provenance {
    if let Some((head, rest)) = text.split_once(':') {
        if let Some(tag) = ProvenanceTag::from_label(head.trim()) {
            return Provenance {
                tag,
                citation: rest.trim().to_string(),
            };
        }
    }
    Provenance::asserted(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::Dimension;

    #[test]
    fn parses_relation_into_expected_tree() {
        let cat = parse_catalog(
            "relation eq3: e^2 / (G * m_e^2) ~ 1e40 tol 3.0 dex ref \"Eq. (3)\"\n",
        )
        .unwrap();
        assert_eq!(cat.relations.len(), 1);
        let rel = &cat.relations[0];
        assert_eq!(rel.id, "eq3");
        assert_eq!(rel.paper_ref, "Eq. (3)");
        let RelationKind::Equality { lhs, rhs, tol_dex } = &rel.kind else {
            panic!("expected equality");
        };
        assert_eq!(*tol_dex, 3.0);
        assert_eq!(rhs.kind, ExprKind::Number(1e40));
        // lhs = Binary(/, Pow(e, 2), Binary(*, G, Pow(m_e, 2)))
        let ExprKind::Binary(BinOp::Div, num, den) = &lhs.kind else {
            panic!("expected division at root, got {:?}", lhs.kind);
        };
        assert!(matches!(&num.kind, ExprKind::Pow(base, r)
            if base.kind == ExprKind::Ident("e".into()) && *r == Rational::from(2)));
        assert!(matches!(&den.kind, ExprKind::Binary(BinOp::Mul, _, _)));
    }

    #[test]
    fn parses_const_with_unit() {
        let cat = parse_catalog("const m_pi = 2.48807e-25 g\n").unwrap();
        assert_eq!(cat.constants.len(), 1);
        let c = &cat.constants[0];
        assert_eq!(c.name, "m_pi");
        assert_eq!(c.value.magnitude(), 2.48807e-25);
        assert_eq!(c.value.dimension(), Dimension::MASS);
    }

    #[test]
    fn parses_compound_units() {
        let cat = parse_catalog("const G0 = 6.674e-8 cm^3 g^-1 s^-2\n").unwrap();
        assert_eq!(
            cat.constants[0].value.dimension(),
            Dimension::from_ints(-1, 3, -2, 0)
        );
        let cat = parse_catalog("const q = 4.8e-10 esu\n").unwrap();
        assert_eq!(cat.constants[0].value.dimension(), Dimension::charge());
        // erg expands to g cm^2 s^-2; explicit dimensionless is the
        // zero vector; a bare number has no unit at all.
        let cat = parse_catalog("const en = 1.5 erg\n").unwrap();
        assert_eq!(cat.constants[0].value.dimension(), Dimension::energy());
        let cat = parse_catalog("const n0 = 1e80 dimensionless\n").unwrap();
        assert!(cat.constants[0].value.is_dimensionless());
        let cat = parse_catalog("const bare = 42\n").unwrap();
        assert!(cat.constants[0].value.is_dimensionless());
        // erg^1/2 scales the whole expansion.
        let cat = parse_catalog("const h = 3 erg^1/2\n").unwrap();
        assert_eq!(
            cat.constants[0].value.dimension(),
            Dimension::energy().pow(Rational::new(1, 2))
        );
        let err = parse_catalog("const x = 1 parsec\n").unwrap_err();
        assert!(err[0].message.contains("unknown unit"));
    }

    #[test]
    fn equals_is_a_synonym_for_tilde() {
        let tilde = parse_catalog("relation r: c ~ c tol 0.01 dex\n").unwrap();
        let equals = parse_catalog("relation r: c = c tol 0.01 dex\n").unwrap();
        assert_eq!(tilde, equals);
    }

    #[test]
    fn mismatched_sum_still_parses() {
        // Dimension errors are inference-time, not parse-time.
        let cat = parse_catalog("relation bad: c + m_e ~ 1 tol 1 dex\n").unwrap();
        assert_eq!(cat.relations.len(), 1);
    }

    #[test]
    fn parenthesized_negative_exponent() {
        let cat = parse_catalog("relation r: N^(-1/2) ~ 1e-40 tol 1 dex\n").unwrap();
        let RelationKind::Equality { lhs, .. } = &cat.relations[0].kind else {
            panic!();
        };
        assert!(matches!(&lhs.kind, ExprKind::Pow(_, r) if *r == Rational::new(-1, 2)));
    }

    #[test]
    fn greedy_exponent_rational() {
        // `e^2 / (...)`: the slash is division because `(` is not an
        // integer; `x^1/2` folds the slash into the exponent.
        let one_half = parse_catalog("relation r: x^1/2 ~ 1 tol 1 dex\n").unwrap();
        let RelationKind::Equality { lhs, .. } = &one_half.relations[0].kind else {
            panic!();
        };
        assert!(matches!(&lhs.kind, ExprKind::Pow(_, r) if *r == Rational::new(1, 2)));
    }

    #[test]
    fn assert_statement() {
        let cat =
            parse_catalog("assert g_weak: \"g^2/m^2 ~ 1e43 g^-2\" ref \"§5 item 6\"\n").unwrap();
        let rel = &cat.relations[0];
        assert!(matches!(&rel.kind, RelationKind::Asserted { note }
            if note == "g^2/m^2 ~ 1e43 g^-2"));
        assert_eq!(rel.paper_ref, "§5 item 6");
    }

    #[test]
    fn duplicate_relation_id_is_flagged() {
        let err = parse_catalog(
            "relation a: c ~ c tol 1 dex\nrelation a: c ~ c tol 1 dex\n",
        )
        .unwrap_err();
        assert!(err.iter().any(|d| d.kind == DiagnosticKind::DuplicateId));
    }

    #[test]
    fn unknown_function_is_flagged() {
        let err = parse_catalog("relation a: sinh(c) ~ c tol 1 dex\n").unwrap_err();
        assert!(err.iter().any(|d| d.kind == DiagnosticKind::UnknownFunction));
    }

    #[test]
    fn errors_carry_positions_and_recovery_continues() {
        let err = parse_catalog("const = 3 g\nrelation ok: c ~ c tol 1 dex\njunk here\n")
            .unwrap_err();
        assert!(err.len() >= 2);
        for d in &err {
            assert!(d.span.line >= 1 && d.span.column >= 1);
        }
    }

    #[test]
    fn zero_tolerance_rejected() {
        let err = parse_catalog("relation a: c ~ c tol 0 dex\n").unwrap_err();
        assert!(!err.is_empty());
    }

    #[test]
    fn deep_nesting_is_rejected_not_crashing() {
        let mut text = String::from("relation deep: ");
        for _ in 0..4000 {
            text.push('(');
        }
        text.push('c');
        for _ in 0..4000 {
            text.push(')');
        }
        text.push_str(" ~ c tol 1 dex\n");
        let err = parse_catalog(&text).unwrap_err();
        assert!(!err.is_empty());
    }

    #[test]
    fn parse_expression_entry() {
        let expr = parse_expression("G * m_pi^3 * c / hbar^2").unwrap();
        assert!(matches!(expr.kind, ExprKind::Binary(BinOp::Div, _, _)));
        assert!(parse_expression("c +").is_err());
        assert!(parse_expression("c c").is_err());
    }

    #[test]
    fn parse_quantity_entry() {
        let q = parse_quantity("2.725 K").unwrap();
        assert_eq!(q.magnitude(), 2.725);
        assert_eq!(q.dimension(), Dimension::TEMPERATURE);
        assert!(parse_quantity("2.725 K extra").is_err());
        assert!(parse_quantity("foo").is_err());
    }

    mod round_trip {
        use super::super::parse_quantity;
        use crate::dimension::Dimension;
        use crate::quantity::Quantity;
        use crate::rational::Rational;
        use proptest::prelude::*;

        fn arb_quantity() -> impl Strategy<Value = Quantity> {
            let exponent = (-6i64..=6, 1i64..=2).prop_map(|(n, d)| Rational::new(n, d));
            (
                -280.0f64..280.0,
                proptest::array::uniform4(exponent),
            )
                .prop_map(|(log_mag, exps)| {
                    Quantity::new(10f64.powf(log_mag / 2.0), Dimension::new(exps))
                })
        }

        proptest! {
            // Display emits `MAGNITUDE UNIT...`, which is exactly the
            // quantity grammar; the round trip must preserve the
            // dimension exactly and the magnitude to the bit.
            #[test]
            fn quantity_display_reparses(q in arb_quantity()) {
                let parsed = parse_quantity(&q.to_string()).unwrap();
                prop_assert_eq!(parsed.dimension(), q.dimension());
                prop_assert!((parsed.magnitude() - q.magnitude()).abs()
                    <= q.magnitude().abs() * 1e-12);
                prop_assert_eq!(parsed.magnitude().to_bits(), q.magnitude().to_bits());
            }
        }
    }
}
