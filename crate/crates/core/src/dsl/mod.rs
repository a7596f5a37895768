//! Text front-end for relation catalogs.
//!
//! A catalog file is a sequence of newline-terminated statements;
//! `#` starts a comment. The grammar:
//!
//! ```text
//! file         := stmt*
//! stmt         := const_def | relation_def | assert_def
//! const_def    := "const" IDENT "=" NUMBER unit? ("prov" STRING)?
//! unit         := (UNIT_TOKEN ("^" RATIONAL)?)+
//!                 UNIT_TOKEN ∈ { g, cm, s, K, erg, esu, dimensionless }
//! relation_def := "relation" IDENT ":" expr ("~" | "=") expr
//!                 "tol" NUMBER "dex" ("ref" STRING)?
//! assert_def   := "assert" IDENT ":" STRING "ref" STRING
//! expr         := term (("+" | "-") term)*
//! term         := factor (("*" | "/") factor)*
//! factor       := primary ("^" RATIONAL)?
//! primary      := NUMBER | IDENT | "(" expr ")"
//!               | ("sqrt" | "exp" | "log10") "(" expr ")"
//! RATIONAL     := ("-")? INT ("/" INT)?   (parentheses allowed)
//! ```
//!
//! `~` and `=` are synonyms; both compare in dex space against the
//! stated tolerance (`=` is conventionally used with tol ≤ 0.01).
//! `erg` expands to g cm^2 s^-2 and `esu` to g^1/2 cm^3/2 s^-1. The
//! exponent after `^` binds greedily, so `x^1/2` is the square root of
//! x; write `x^1 / 2` as `(x)/2` if division is meant. There is no
//! unary minus: the catalogs this engine exists for compare positive
//! magnitudes.
//!
//! Parsing never panics; all failures are positioned [`Diagnostic`]s
//! rendered as `line:col: message`.

mod ast;
mod format;
mod infer;
mod lexer;
mod parser;

pub use ast::{
    BinOp, CatalogFile, ConstDef, Diagnostic, DiagnosticKind, Expr, ExprKind, FuncName,
    SourceSpan,
};
pub use format::{format_catalog, format_expr, format_relation};
pub use infer::infer_dimension;
pub use parser::{parse_catalog, parse_expression, parse_quantity};
