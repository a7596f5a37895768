//! Dimension inference over expression trees.
//!
//! Mirrors what evaluation does to dimensions, without touching
//! magnitudes: sums need exactly matching arms, `exp` and `log10` need
//! dimensionless arguments, `sqrt` halves every exponent.

use super::ast::{BinOp, Diagnostic, DiagnosticKind, Expr, ExprKind, FuncName};
use crate::dimension::Dimension;
use crate::rational::Rational;
use crate::registry::Registry;

pub fn infer_dimension(expr: &Expr, registry: &Registry) -> Result<Dimension, Diagnostic> {
    match &expr.kind {
        ExprKind::Number(_) => Ok(Dimension::DIMENSIONLESS),
        ExprKind::Ident(name) => registry
            .lookup(name)
            .map(|c| c.value.dimension())
            .map_err(|_| {
                Diagnostic::new(
                    DiagnosticKind::UnknownIdent,
                    expr.span,
                    format!("unknown identifier \"{name}\""),
                )
            }),
        ExprKind::Binary(op, lhs, rhs) => {
            let left = infer_dimension(lhs, registry)?;
            let right = infer_dimension(rhs, registry)?;
            match op {
                BinOp::Add | BinOp::Sub => {
                    if left != right {
                        return Err(Diagnostic::new(
                            DiagnosticKind::DimensionMismatch,
                            expr.span,
                            format!("cannot {} {} and {}",
                                if *op == BinOp::Add { "add" } else { "subtract" },
                                left, right),
                        ));
                    }
                    Ok(left)
                }
                BinOp::Mul => Ok(left * right),
                BinOp::Div => Ok(left / right),
            }
        }
        ExprKind::Pow(base, exponent) => {
            let dim = infer_dimension(base, registry)?;
            dim.checked_pow(*exponent).ok_or_else(|| {
                Diagnostic::new(
                    DiagnosticKind::ExponentRange,
                    expr.span,
                    "dimension exponents exceed the supported range",
                )
            })
        }
        ExprKind::Call(func, arg) => {
            let dim = infer_dimension(arg, registry)?;
            match func {
                FuncName::Sqrt => dim.checked_pow(Rational::new(1, 2)).ok_or_else(|| {
                    Diagnostic::new(
                        DiagnosticKind::ExponentRange,
                        expr.span,
                        "dimension exponents exceed the supported range",
                    )
                }),
                FuncName::Exp | FuncName::Log10 => {
                    if !dim.is_dimensionless() {
                        return Err(Diagnostic::new(
                            DiagnosticKind::NonDimensionlessArg,
                            expr.span,
                            format!(
                                "{} requires a dimensionless argument, got {}",
                                func.symbol(),
                                dim
                            ),
                        ));
                    }
                    Ok(Dimension::DIMENSIONLESS)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parser::{parse_catalog, parse_expression};
    use crate::engine::RelationKind;

    fn infer_str(text: &str) -> Result<Dimension, Diagnostic> {
        let expr = parse_expression(text).unwrap();
        infer_dimension(&expr, &Registry::load_defaults())
    }

    #[test]
    fn hubble_expression_has_inverse_time_dimension() {
        let dim = infer_str("G * m_pi^3 * c / hbar^2").unwrap();
        assert_eq!(dim, Dimension::from_ints(0, 0, -1, 0));
    }

    #[test]
    fn sqrt_of_count_is_dimensionless() {
        assert_eq!(infer_str("sqrt(N)").unwrap(), Dimension::DIMENSIONLESS);
    }

    #[test]
    fn exp_of_velocity_is_rejected() {
        let err = infer_str("exp(c)").unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::NonDimensionlessArg);
    }

    #[test]
    fn unknown_identifier() {
        let err = infer_str("zeta * c").unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::UnknownIdent);
    }

    #[test]
    fn mismatch_points_at_operator() {
        let cat = parse_catalog("relation bad: c + m_e ~ 1 tol 1 dex\n").unwrap();
        let RelationKind::Equality { lhs, .. } = &cat.relations[0].kind else {
            panic!();
        };
        let err = infer_dimension(lhs, &Registry::load_defaults()).unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::DimensionMismatch);
        // The `+` sits at column 17 of the statement.
        assert_eq!(err.span.line, 1);
        assert_eq!(err.span.column, 17);
    }

    #[test]
    fn repeated_exponentiation_errors_cleanly() {
        let expr = parse_expression("((((c^999999)^999999)^999999)^999999)^999999").unwrap();
        let err = infer_dimension(&expr, &Registry::load_defaults()).unwrap_err();
        assert_eq!(err.kind, DiagnosticKind::ExponentRange);
    }
}
