//! Magnitude-plus-dimension values and checked arithmetic on them.
//!
//! Magnitudes are finite f64; every operation re-checks finiteness so
//! overflow surfaces as an error instead of an Inf/NaN propagating into
//! a report. Comparisons across the catalog happen in dex (log10 ratio)
//! space, which keeps values spanning a hundred orders of magnitude
//! well away from overflow.

use std::fmt;

use thiserror::Error;

use crate::dimension::Dimension;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantityError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(Dimension, Dimension),
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-finite result")]
    Overflow,
    #[error("even root of a negative magnitude")]
    NegativeRoot,
    #[error("dex gap requires strictly positive magnitudes")]
    NonPositive,
}

/// A finite f64 magnitude with an exact dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    magnitude: f64,
    dimension: Dimension,
}

impl Quantity {
    /// Panics on a non-finite magnitude; use [`Quantity::try_new`] for
    /// unvalidated input.
    pub fn new(magnitude: f64, dimension: Dimension) -> Quantity {
        Self::try_new(magnitude, dimension).expect("quantity magnitude must be finite")
    }

    pub fn try_new(magnitude: f64, dimension: Dimension) -> Result<Quantity, QuantityError> {
        if !magnitude.is_finite() {
            return Err(QuantityError::Overflow);
        }
        Ok(Quantity {
            magnitude,
            dimension,
        })
    }

    pub fn dimensionless(magnitude: f64) -> Quantity {
        Quantity::new(magnitude, Dimension::DIMENSIONLESS)
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn dimension(&self) -> Dimension {
        self.dimension
    }

    pub fn is_dimensionless(&self) -> bool {
        self.dimension.is_dimensionless()
    }

    pub fn try_add(&self, other: &Quantity) -> Result<Quantity, QuantityError> {
        self.require_same_dimension(other)?;
        Quantity::try_new(self.magnitude + other.magnitude, self.dimension)
    }

    pub fn try_sub(&self, other: &Quantity) -> Result<Quantity, QuantityError> {
        self.require_same_dimension(other)?;
        Quantity::try_new(self.magnitude - other.magnitude, self.dimension)
    }

    pub fn try_mul(&self, other: &Quantity) -> Result<Quantity, QuantityError> {
        Quantity::try_new(
            self.magnitude * other.magnitude,
            self.dimension * other.dimension,
        )
    }

    pub fn try_div(&self, other: &Quantity) -> Result<Quantity, QuantityError> {
        if other.magnitude == 0.0 {
            return Err(QuantityError::DivisionByZero);
        }
        Quantity::try_new(
            self.magnitude / other.magnitude,
            self.dimension / other.dimension,
        )
    }

    /// Raises to an exact rational power. Even roots of negative
    /// magnitudes are rejected; odd roots keep the sign.
    pub fn try_pow(&self, exponent: Rational) -> Result<Quantity, QuantityError> {
        if self.magnitude < 0.0 && exponent.has_even_denominator() {
            return Err(QuantityError::NegativeRoot);
        }
        let magnitude = pow_f64(self.magnitude, exponent);
        Quantity::try_new(magnitude, self.dimension.pow(exponent))
    }

    /// Absolute log10 ratio of two quantities of equal dimension.
    ///
    /// Computed as a difference of logs so that ratios far outside
    /// double range still evaluate.
    pub fn dex_gap(&self, other: &Quantity) -> Result<f64, QuantityError> {
        self.require_same_dimension(other)?;
        if self.magnitude <= 0.0 || other.magnitude <= 0.0 {
            return Err(QuantityError::NonPositive);
        }
        Ok((self.magnitude.log10() - other.magnitude.log10()).abs())
    }

    fn require_same_dimension(&self, other: &Quantity) -> Result<(), QuantityError> {
        if self.dimension != other.dimension {
            return Err(QuantityError::DimensionMismatch(
                self.dimension,
                other.dimension,
            ));
        }
        Ok(())
    }
}

fn pow_f64(base: f64, exponent: Rational) -> f64 {
    let num = exponent.numer();
    let den = exponent.denom();
    if num == 0 {
        return 1.0;
    }
    if den == 1 {
        if let Ok(n) = i32::try_from(num) {
            return base.powi(n);
        }
        return base.powf(num as f64);
    }
    if den == 2 {
        // sqrt is correctly rounded, powf is not; route halves through it.
        let root = base.sqrt();
        if let Ok(n) = i32::try_from(num) {
            return root.powi(n);
        }
        return root.powf(num as f64);
    }
    if base < 0.0 {
        // Odd root of a negative base (even denominators are rejected
        // before this point): apply the sign after the magnitude power.
        let mag = (-base).powf(exponent.to_f64());
        return if num % 2 == 0 { mag } else { -mag };
    }
    base.powf(exponent.to_f64())
}

/// Shortest-round-trip float rendering used everywhere a number is
/// printed: plain decimal inside [1e-3, 1e7), exponent form elsewhere.
/// Both branches re-parse to the same bits.
pub fn format_f64(value: f64) -> String {
    let abs = value.abs();
    if value == 0.0 || (1e-3..1e7).contains(&abs) {
        format!("{value}")
    } else {
        let s = format!("{value:e}");
        match s.strip_suffix("e0") {
            Some(stripped) => stripped.to_string(),
            None => s,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", format_f64(self.magnitude), self.dimension)
    }
}
