//! Canonical catalog rendering.
//!
//! `format_catalog` emits text that re-parses to a structurally equal
//! [`CatalogFile`]: numbers use shortest round-trip spelling, operators
//! are single-spaced, exponents are attached with `^`, and parentheses
//! appear exactly where the tree shape requires them. The builtin
//! catalog text is stored in this form, making formatting idempotent on
//! it.

use super::ast::{BinOp, CatalogFile, Expr, ExprKind};
use crate::engine::{Relation, RelationKind};
use crate::quantity::format_f64;
use crate::rational::Rational;

pub fn format_catalog(catalog: &CatalogFile) -> String {
    let mut out = String::new();
    for c in &catalog.constants {
        out.push_str(&format!(
            "const {} = {} {} prov \"{}: {}\"\n",
            c.name,
            format_f64(c.value.magnitude()),
            c.value.dimension(),
            c.provenance.tag.label(),
            escape(&c.provenance.citation),
        ));
    }
    if !catalog.constants.is_empty() && !catalog.relations.is_empty() {
        out.push('\n');
    }
    for r in &catalog.relations {
        out.push_str(&format_relation(r));
        out.push('\n');
    }
    out
}

pub fn format_relation(relation: &Relation) -> String {
    match &relation.kind {
        RelationKind::Equality { lhs, rhs, tol_dex } => {
            let mut line = format!(
                "relation {}: {} ~ {} tol {} dex",
                relation.id,
                format_expr(lhs),
                format_expr(rhs),
                format_f64(*tol_dex),
            );
            if !relation.paper_ref.is_empty() {
                line.push_str(&format!(" ref \"{}\"", escape(&relation.paper_ref)));
            }
            line
        }
        RelationKind::Asserted { note } => format!(
            "assert {}: \"{}\" ref \"{}\"",
            relation.id,
            escape(note),
            escape(&relation.paper_ref),
        ),
    }
}

pub fn format_expr(expr: &Expr) -> String {
    render(expr, 0)
}

/// Precedence levels: additive 1, multiplicative 2, power 3, atoms 4.
fn precedence(expr: &Expr) -> u8 {
    match &expr.kind {
        ExprKind::Binary(BinOp::Add | BinOp::Sub, _, _) => 1,
        ExprKind::Binary(BinOp::Mul | BinOp::Div, _, _) => 2,
        ExprKind::Pow(_, _) => 3,
        ExprKind::Number(_) | ExprKind::Ident(_) | ExprKind::Call(_, _) => 4,
    }
}

fn render(expr: &Expr, _depth: u32) -> String {
    match &expr.kind {
        ExprKind::Number(value) => format_f64(*value),
        ExprKind::Ident(name) => name.clone(),
        ExprKind::Binary(op, lhs, rhs) => {
            let prec = precedence(expr);
            let left = if precedence(lhs) < prec {
                format!("({})", render(lhs, 0))
            } else {
                render(lhs, 0)
            };
            // All four operators associate to the left, so a right child
            // at the same precedence needs parentheses to keep its shape.
            let right = if precedence(rhs) <= prec {
                format!("({})", render(rhs, 0))
            } else {
                render(rhs, 0)
            };
            format!("{left} {} {right}", op.symbol())
        }
        ExprKind::Pow(base, exponent) => {
            let inner = if precedence(base) < 4 {
                format!("({})", render(base, 0))
            } else {
                render(base, 0)
            };
            format!("{inner}^{}", format_exponent(*exponent))
        }
        ExprKind::Call(func, arg) => format!("{}({})", func.symbol(), render(arg, 0)),
    }
}

/// Positive integers print bare (`^2`); fractions and negatives are
/// parenthesized (`^(1/2)`, `^(-1)`, `^(-1/2)`).
fn format_exponent(exponent: Rational) -> String {
    if exponent.is_integer() && exponent.numer() >= 0 {
        exponent.to_string()
    } else {
        format!("({exponent})")
    }
}

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}
