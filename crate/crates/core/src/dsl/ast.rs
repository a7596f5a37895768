//! Syntax tree for the catalog grammar.
//!
//! Node equality is structural and ignores source spans, so a formatted
//! and re-parsed tree compares equal to the original.

use std::fmt;

use crate::engine::Relation;
use crate::quantity::Quantity;
use crate::registry::Provenance;
use crate::rational::Rational;

/// 1-based position of a token in the source text. Lengths count
/// characters, not bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

impl SourceSpan {
    pub fn new(line: u32, column: u32, length: u32) -> SourceSpan {
        SourceSpan {
            line,
            column,
            length: length.max(1),
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    pub fn symbol(&self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuncName {
    Sqrt,
    Exp,
    Log10,
}

impl FuncName {
    pub fn symbol(&self) -> &'static str {
        match self {
            FuncName::Sqrt => "sqrt",
            FuncName::Exp => "exp",
            FuncName::Log10 => "log10",
        }
    }

    pub fn from_symbol(name: &str) -> Option<FuncName> {
        match name {
            "sqrt" => Some(FuncName::Sqrt),
            "exp" => Some(FuncName::Exp),
            "log10" => Some(FuncName::Log10),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    /// For binary nodes this is the operator's span, so dimension
    /// diagnostics point at the offending `+` rather than the whole
    /// expression.
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Number(f64),
    Ident(String),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Rational),
    Call(FuncName, Box<Expr>),
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    pub fn new(kind: ExprKind, span: SourceSpan) -> Expr {
        Expr { kind, span }
    }
}

/// A `const` statement: a named quantity with provenance.
#[derive(Debug, Clone)]
pub struct ConstDef {
    pub name: String,
    pub value: Quantity,
    pub provenance: Provenance,
    pub span: SourceSpan,
}

impl PartialEq for ConstDef {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.value == other.value
            && self.provenance == other.provenance
    }
}

/// A parsed catalog: constant definitions plus relations, in file order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CatalogFile {
    pub constants: Vec<ConstDef>,
    pub relations: Vec<Relation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticKind {
    Syntax,
    DuplicateId,
    UnknownFunction,
    UnknownIdent,
    DimensionMismatch,
    NonDimensionlessArg,
    ExponentRange,
}

/// A positioned error. Rendered as `line:col: message`; front ends
/// prefix the file path.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub span: SourceSpan,
    pub message: String,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, span: SourceSpan, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            kind,
            span,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.span, self.message)
    }
}

impl std::error::Error for Diagnostic {}
