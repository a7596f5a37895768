//! Expression evaluation and relation checking.
//!
//! A relation either states that two expressions agree within a dex
//! tolerance, or records an assertion that has no computable check.
//! Checking never throws past this module: dimensional failures become
//! `DIM_ERROR` results, numeric failures become `DISCREPANT` results
//! with the cause in the detail string. A `DISCREPANT` outcome is a
//! finding, not an engine failure.

use serde_json::json;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::dsl::{
    format_catalog, BinOp, CatalogFile, Expr, ExprKind, FuncName, SourceSpan,
};
use crate::quantity::{format_f64, Quantity, QuantityError};
use crate::rational::Rational;
use crate::registry::{Constant, Provenance, Registry};

#[derive(Debug, Clone, PartialEq)]
pub enum RelationKind {
    Equality { lhs: Expr, rhs: Expr, tol_dex: f64 },
    Asserted { note: String },
}

/// A named claim with a source reference string such as `Eq. (3)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub id: String,
    pub kind: RelationKind,
    pub paper_ref: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalErrorKind {
    UnknownIdent,
    DimensionMismatch,
    NonDimensionlessArg,
    ExponentRange,
    Overflow,
    DivisionByZero,
    NegativeRoot,
    NonPositiveLog,
}

impl EvalErrorKind {
    /// Dimensional failures map to `DIM_ERROR`; everything else is a
    /// numeric failure reported as `DISCREPANT`.
    pub fn is_dimensional(&self) -> bool {
        matches!(
            self,
            EvalErrorKind::UnknownIdent
                | EvalErrorKind::DimensionMismatch
                | EvalErrorKind::NonDimensionlessArg
                | EvalErrorKind::ExponentRange
        )
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{span}: {message}")]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub span: SourceSpan,
    pub message: String,
}

impl EvalError {
    fn new(kind: EvalErrorKind, span: SourceSpan, message: impl Into<String>) -> EvalError {
        EvalError {
            kind,
            span,
            message: message.into(),
        }
    }
}

fn quantity_error(err: QuantityError, span: SourceSpan) -> EvalError {
    let kind = match err {
        QuantityError::DimensionMismatch(_, _) => EvalErrorKind::DimensionMismatch,
        QuantityError::DivisionByZero => EvalErrorKind::DivisionByZero,
        QuantityError::Overflow => EvalErrorKind::Overflow,
        QuantityError::NegativeRoot => EvalErrorKind::NegativeRoot,
        QuantityError::NonPositive => EvalErrorKind::NonPositiveLog,
    };
    EvalError::new(kind, span, err.to_string())
}

/// Bottom-up evaluation of an expression against a registry.
pub fn evaluate(expr: &Expr, registry: &Registry) -> Result<Quantity, EvalError> {
    match &expr.kind {
        ExprKind::Number(value) => Ok(Quantity::dimensionless(*value)),
        ExprKind::Ident(name) => registry.lookup(name).map(|c| c.value).map_err(|_| {
            EvalError::new(
                EvalErrorKind::UnknownIdent,
                expr.span,
                format!("unknown identifier \"{name}\""),
            )
        }),
        ExprKind::Binary(op, lhs, rhs) => {
            let left = evaluate(lhs, registry)?;
            let right = evaluate(rhs, registry)?;
            let result = match op {
                BinOp::Add => left.try_add(&right),
                BinOp::Sub => left.try_sub(&right),
                BinOp::Mul => left.try_mul(&right),
                BinOp::Div => left.try_div(&right),
            };
            result.map_err(|e| quantity_error(e, expr.span))
        }
        ExprKind::Pow(base, exponent) => {
            let value = evaluate(base, registry)?;
            if value.dimension().checked_pow(*exponent).is_none() {
                return Err(EvalError::new(
                    EvalErrorKind::ExponentRange,
                    expr.span,
                    "dimension exponents exceed the supported range",
                ));
            }
            value
                .try_pow(*exponent)
                .map_err(|e| quantity_error(e, expr.span))
        }
        ExprKind::Call(func, arg) => {
            let value = evaluate(arg, registry)?;
            match func {
                FuncName::Sqrt => {
                    if value.dimension().checked_pow(Rational::new(1, 2)).is_none() {
                        return Err(EvalError::new(
                            EvalErrorKind::ExponentRange,
                            expr.span,
                            "dimension exponents exceed the supported range",
                        ));
                    }
                    value
                        .try_pow(Rational::new(1, 2))
                        .map_err(|e| quantity_error(e, expr.span))
                }
                FuncName::Exp => {
                    if !value.is_dimensionless() {
                        return Err(EvalError::new(
                            EvalErrorKind::NonDimensionlessArg,
                            expr.span,
                            format!("exp requires a dimensionless argument, got {}", value.dimension()),
                        ));
                    }
                    Quantity::try_new(value.magnitude().exp(), value.dimension())
                        .map_err(|e| quantity_error(e, expr.span))
                }
                FuncName::Log10 => {
                    if !value.is_dimensionless() {
                        return Err(EvalError::new(
                            EvalErrorKind::NonDimensionlessArg,
                            expr.span,
                            format!(
                                "log10 requires a dimensionless argument, got {}",
                                value.dimension()
                            ),
                        ));
                    }
                    if value.magnitude() <= 0.0 {
                        return Err(EvalError::new(
                            EvalErrorKind::NonPositiveLog,
                            expr.span,
                            "log10 requires a positive argument",
                        ));
                    }
                    Ok(Quantity::dimensionless(value.magnitude().log10()))
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Discrepant,
    Asserted,
    DimError,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Discrepant => "DISCREPANT",
            Status::Asserted => "ASSERTED",
            Status::DimError => "DIM_ERROR",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub relation_id: String,
    pub paper_ref: String,
    pub lhs_value: Option<Quantity>,
    pub rhs_value: Option<Quantity>,
    pub gap_dex: Option<f64>,
    pub tol_dex: Option<f64>,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Summary {
    pub pass: usize,
    pub discrepant: usize,
    pub asserted: usize,
    pub dim_error: usize,
}

impl Summary {
    pub fn total(&self) -> usize {
        self.pass + self.discrepant + self.asserted + self.dim_error
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub results: Vec<CheckResult>,
    pub registry_snapshot: Vec<Constant>,
    pub catalog_hash: String,
    pub summary: Summary,
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    /// Multiplies every equality tolerance; used for sensitivity runs.
    pub tol_scale: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { tol_scale: 1.0 }
    }
}

pub fn check_relation(relation: &Relation, registry: &Registry) -> CheckResult {
    check_relation_with(relation, registry, &RunOptions::default())
}

pub fn check_relation_with(
    relation: &Relation,
    registry: &Registry,
    options: &RunOptions,
) -> CheckResult {
    let base = |status: Status, detail: String| CheckResult {
        relation_id: relation.id.clone(),
        paper_ref: relation.paper_ref.clone(),
        lhs_value: None,
        rhs_value: None,
        gap_dex: None,
        tol_dex: None,
        status,
        detail,
    };

    match &relation.kind {
        RelationKind::Asserted { note } => base(Status::Asserted, note.clone()),
        RelationKind::Equality { lhs, rhs, tol_dex } => {
            let tol = tol_dex * options.tol_scale;
            let lhs_value = evaluate(lhs, registry);
            let rhs_value = evaluate(rhs, registry);
            let mut result = base(Status::Pass, String::new());
            result.tol_dex = Some(tol);
            result.lhs_value = lhs_value.as_ref().ok().copied();
            result.rhs_value = rhs_value.as_ref().ok().copied();

            let (lhs_value, rhs_value) = match (lhs_value, rhs_value) {
                (Ok(l), Ok(r)) => (l, r),
                (lhs_result, rhs_result) => {
                    let err = lhs_result.err().or(rhs_result.err()).unwrap();
                    result.status = if err.kind.is_dimensional() {
                        Status::DimError
                    } else {
                        Status::Discrepant
                    };
                    result.detail = err.to_string();
                    return result;
                }
            };

            if lhs_value.dimension() != rhs_value.dimension() {
                result.status = Status::DimError;
                result.detail = format!(
                    "sides have different dimensions: {} vs {}",
                    lhs_value.dimension(),
                    rhs_value.dimension()
                );
                return result;
            }

            match lhs_value.dex_gap(&rhs_value) {
                Ok(gap) => {
                    result.gap_dex = Some(gap);
                    if gap <= tol {
                        result.status = Status::Pass;
                    } else {
                        result.status = Status::Discrepant;
                        result.detail = format!(
                            "gap {} dex exceeds tolerance {} dex",
                            format_f64(gap),
                            format_f64(tol)
                        );
                    }
                }
                Err(err) => {
                    result.status = Status::Discrepant;
                    result.detail = format!("cannot compare in dex space: {err}");
                }
            }
            result
        }
    }
}

pub fn run_catalog(catalog: &CatalogFile, registry: &Registry) -> Report {
    run_catalog_with(catalog, registry, &RunOptions::default())
}

/// Checks every relation in catalog order against the registry extended
/// with the catalog's own constants. All failures land in per-relation
/// statuses; this function itself cannot fail.
pub fn run_catalog_with(
    catalog: &CatalogFile,
    registry: &Registry,
    options: &RunOptions,
) -> Report {
    let mut working = registry.clone();
    for def in &catalog.constants {
        working.define(Constant {
            name: def.name.clone(),
            symbol: def.name.clone(),
            value: def.value,
            provenance: Provenance {
                tag: def.provenance.tag,
                citation: def.provenance.citation.clone(),
            },
        });
    }

    let results: Vec<CheckResult> = catalog
        .relations
        .iter()
        .map(|relation| check_relation_with(relation, &working, options))
        .collect();

    let mut summary = Summary::default();
    for r in &results {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Discrepant => summary.discrepant += 1,
            Status::Asserted => summary.asserted += 1,
            Status::DimError => summary.dim_error += 1,
        }
    }

    let canonical = format_catalog(catalog);
    let catalog_hash = hex_digest(&canonical);

    Report {
        results,
        registry_snapshot: working.iter().cloned().collect(),
        catalog_hash,
        summary,
    }
}

fn hex_digest(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

fn quantity_json(quantity: &Option<Quantity>) -> serde_json::Value {
    match quantity {
        Some(q) => json!({
            "magnitude": q.magnitude(),
            "dimension": q.dimension().to_string(),
        }),
        None => serde_json::Value::Null,
    }
}

impl Report {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "catalog_hash": self.catalog_hash,
            "summary": {
                "pass": self.summary.pass,
                "discrepant": self.summary.discrepant,
                "asserted": self.summary.asserted,
                "dim_error": self.summary.dim_error,
            },
            "results": self.results.iter().map(|r| json!({
                "id": r.relation_id,
                "paper_ref": r.paper_ref,
                "lhs": quantity_json(&r.lhs_value),
                "rhs": quantity_json(&r.rhs_value),
                "gap_dex": r.gap_dex,
                "tol_dex": r.tol_dex,
                "status": r.status.label(),
                "detail": r.detail,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serialization cannot fail")
    }

    /// Plain-text table with fixed column order: id, status, gap, tol,
    /// ref. One row per relation in catalog order.
    pub fn to_table(&self) -> String {
        let id_width = self
            .results
            .iter()
            .map(|r| r.relation_id.len())
            .chain(["id".len()])
            .max()
            .unwrap_or(2);
        let mut out = String::new();
        out.push_str(&format!(
            "{:<id_width$}  {:<10}  {:>8}  {:>6}  ref\n",
            "id", "status", "gap", "tol"
        ));
        for r in &self.results {
            let gap = r
                .gap_dex
                .map(|g| format!("{g:.4}"))
                .unwrap_or_else(|| "-".to_string());
            let tol = r
                .tol_dex
                .map(format_f64)
                .unwrap_or_else(|| "-".to_string());
            out.push_str(&format!(
                "{:<id_width$}  {:<10}  {:>8}  {:>6}  {}\n",
                r.relation_id,
                r.status.label(),
                gap,
                tol,
                r.paper_ref
            ));
        }
        out.push_str(&format!(
            "\npass {}  discrepant {}  asserted {}  dim_error {}\n",
            self.summary.pass, self.summary.discrepant, self.summary.asserted,
            self.summary.dim_error
        ));
        out.push_str(&format!("catalog sha256 {}\n", self.catalog_hash));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_catalog, parse_expression};
    use crate::registry::Registry;

    fn eval_str(text: &str) -> Result<Quantity, EvalError> {
        let expr = parse_expression(text).unwrap();
        evaluate(&expr, &Registry::load_defaults())
    }

    #[test]
    fn evaluates_hubble_expression() {
        // Frozen from a desk evaluation with the default constants.
        let q = eval_str("G * m_pi^3 * c / hbar^2").unwrap();
        assert!((q.magnitude() - 2.7710363136923303e-17).abs() / 2.77e-17 < 1e-12);
        assert_eq!(q.dimension().to_string(), "s^-1");
    }

    #[test]
    fn evaluates_fluctuation_count() {
        let q = eval_str("2 * m_pi * c^2 * T / hbar").unwrap();
        assert!((q.magnitude() - 4.24089734519732e40).abs() / 4.24e40 < 1e-12);
        assert!(q.is_dimensionless());
    }

    #[test]
    fn evaluates_square_root_of_count() {
        let q = eval_str("N^(1/2)").unwrap();
        assert_eq!(q.magnitude(), 1e40);
    }

    #[test]
    fn evaluation_errors() {
        assert_eq!(eval_str("nope").unwrap_err().kind, EvalErrorKind::UnknownIdent);
        assert_eq!(
            eval_str("c + m_e").unwrap_err().kind,
            EvalErrorKind::DimensionMismatch
        );
        assert_eq!(
            eval_str("exp(c)").unwrap_err().kind,
            EvalErrorKind::NonDimensionlessArg
        );
        assert_eq!(
            eval_str("log10(N - N)").unwrap_err().kind,
            EvalErrorKind::NonPositiveLog
        );
        assert_eq!(
            eval_str("N^999999 * N^999999").unwrap_err().kind,
            EvalErrorKind::Overflow
        );
        assert_eq!(
            eval_str("c / (N - N)").unwrap_err().kind,
            EvalErrorKind::DivisionByZero
        );
    }

    fn single_relation(text: &str) -> Relation {
        parse_catalog(text).unwrap().relations.remove(0)
    }

    #[test]
    fn check_pass_and_discrepant() {
        let reg = Registry::load_defaults();
        let rel = single_relation(
            "relation eq3: e^2 / (G * m_e^2) ~ 1e40 tol 3.0 dex ref \"Eq. (3)\"\n",
        );
        let res = check_relation(&rel, &reg);
        assert_eq!(res.status, Status::Pass);
        assert!((res.gap_dex.unwrap() - 2.6196975005019354).abs() < 1e-9);

        let rel = single_relation("relation tight: e^2 / (G * m_e^2) ~ 1e40 tol 0.5 dex\n");
        let res = check_relation(&rel, &reg);
        assert_eq!(res.status, Status::Discrepant);
        assert!(!res.detail.is_empty());
    }

    #[test]
    fn check_dim_error() {
        let reg = Registry::load_defaults();
        let rel = single_relation("relation bad: c + m_e ~ 1 tol 1 dex\n");
        let res = check_relation(&rel, &reg);
        assert_eq!(res.status, Status::DimError);
        assert!(res.detail.contains("dimension"));

        let rel = single_relation("relation sides: c ~ m_e tol 1 dex\n");
        let res = check_relation(&rel, &reg);
        assert_eq!(res.status, Status::DimError);
        assert!(res.detail.contains("cm s^-1"));
        assert!(res.detail.contains("g"));
    }

    #[test]
    fn check_asserted() {
        let reg = Registry::load_defaults();
        let rel = single_relation("assert note: \"no computable check\" ref \"§5\"\n");
        let res = check_relation(&rel, &reg);
        assert_eq!(res.status, Status::Asserted);
        assert!(res.lhs_value.is_none());
        assert!(res.rhs_value.is_none());
        assert!(res.gap_dex.is_none());
        assert_eq!(res.detail, "no computable check");
    }

    #[test]
    fn tol_scale_flips_status() {
        let reg = Registry::load_defaults();
        let rel = single_relation("relation eq3: e^2 / (G * m_e^2) ~ 1e40 tol 3.0 dex\n");
        let strict = RunOptions { tol_scale: 0.5 };
        let res = check_relation_with(&rel, &reg, &strict);
        assert_eq!(res.status, Status::Discrepant);
        assert_eq!(res.tol_dex, Some(1.5));
    }

    #[test]
    fn swapping_sides_preserves_gap_and_status() {
        let reg = Registry::load_defaults();
        let fwd = single_relation("relation r: G * M / c^2 ~ R tol 1 dex\n");
        let rev = single_relation("relation r: R ~ G * M / c^2 tol 1 dex\n");
        let a = check_relation(&fwd, &reg);
        let b = check_relation(&rev, &reg);
        assert_eq!(a.status, b.status);
        assert_eq!(a.gap_dex, b.gap_dex);
    }

    #[test]
    fn scaling_both_sides_preserves_gap() {
        let reg = Registry::load_defaults();
        let plain = single_relation("relation r: G * M / c^2 ~ R tol 1 dex\n");
        let scaled = single_relation("relation r: 7.3e5 * (G * M / c^2) ~ 7.3e5 * R tol 1 dex\n");
        let a = check_relation(&plain, &reg);
        let b = check_relation(&scaled, &reg);
        assert_eq!(a.status, b.status);
        assert!((a.gap_dex.unwrap() - b.gap_dex.unwrap()).abs() < 1e-12);
    }

    #[test]
    fn empty_catalog_and_ordering() {
        let reg = Registry::load_defaults();
        let report = run_catalog(&CatalogFile::default(), &reg);
        assert!(report.results.is_empty());
        assert_eq!(report.summary.total(), 0);

        let cat = parse_catalog(
            "relation b: c ~ c tol 1 dex\nrelation a: c ~ c tol 1 dex\n",
        )
        .unwrap();
        let report = run_catalog(&cat, &reg);
        let ids: Vec<&str> = report.results.iter().map(|r| r.relation_id.as_str()).collect();
        assert_eq!(ids, ["b", "a"]);
        assert_eq!(report.summary.pass, 2);
    }

    #[test]
    fn catalog_constants_resolve_in_relations() {
        let reg = Registry::load_defaults();
        let cat = parse_catalog(
            "const twice_c = 5.99584916e10 cm s^-1\nrelation r: twice_c ~ 2 * c tol 0.01 dex\n",
        )
        .unwrap();
        let report = run_catalog(&cat, &reg);
        assert_eq!(report.results[0].status, Status::Pass);
    }

    #[test]
    fn forward_references_resolve_after_full_parse() {
        let reg = Registry::load_defaults();
        let cat = parse_catalog(
            "relation r: later ~ 2 * c tol 0.01 dex\nconst later = 5.99584916e10 cm s^-1\n",
        )
        .unwrap();
        let report = run_catalog(&cat, &reg);
        assert_eq!(report.results[0].status, Status::Pass);
    }

    #[test]
    fn reports_are_deterministic() {
        let reg = Registry::load_defaults();
        let cat = crate::catalog::builtin_catalog();
        let a = run_catalog(&cat, &reg);
        let b = run_catalog(&cat, &reg);
        assert_eq!(a.to_json_string(), b.to_json_string());
        assert_eq!(a.to_table(), b.to_table());
        assert_eq!(a.catalog_hash.len(), 64);
    }
}
