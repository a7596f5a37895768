//! Dimension vectors over the four Gaussian-CGS base axes.
//!
//! The axes are mass (g), length (cm), time (s) and temperature (K).
//! Charge is a derived dimension: one esu is g^1/2 cm^3/2 s^-1, which is
//! why exponents are exact rationals. Dimensions form an abelian group:
//! multiplication adds exponents, division subtracts them, and raising
//! to a rational power scales them.

use std::fmt;

use crate::rational::Rational;

pub const AXIS_COUNT: usize = 4;
const AXIS_SYMBOLS: [&str; AXIS_COUNT] = ["g", "cm", "s", "K"];

/// Exponents of the four base axes, in the order mass, length, time,
/// temperature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dimension {
    exponents: [Rational; AXIS_COUNT],
}

impl Dimension {
    pub const DIMENSIONLESS: Dimension = Dimension {
        exponents: [Rational::ZERO; AXIS_COUNT],
    };

    pub const MASS: Dimension = Dimension::base(0);
    pub const LENGTH: Dimension = Dimension::base(1);
    pub const TIME: Dimension = Dimension::base(2);
    pub const TEMPERATURE: Dimension = Dimension::base(3);

    const fn base(axis: usize) -> Dimension {
        let mut exponents = [Rational::ZERO; AXIS_COUNT];
        exponents[axis] = Rational::ONE;
        Dimension { exponents }
    }

    pub fn new(exponents: [Rational; AXIS_COUNT]) -> Dimension {
        Dimension { exponents }
    }

    /// Integer-exponent shorthand, enough for every dimension that does
    /// not involve charge.
    pub fn from_ints(mass: i64, length: i64, time: i64, temperature: i64) -> Dimension {
        Dimension {
            exponents: [
                mass.into(),
                length.into(),
                time.into(),
                temperature.into(),
            ],
        }
    }

    /// Velocity, cm s^-1.
    pub fn velocity() -> Dimension {
        Self::from_ints(0, 1, -1, 0)
    }

    /// Energy (erg), g cm^2 s^-2.
    pub fn energy() -> Dimension {
        Self::from_ints(1, 2, -2, 0)
    }

    /// Charge (esu), g^1/2 cm^3/2 s^-1.
    pub fn charge() -> Dimension {
        Dimension {
            exponents: [
                Rational::new(1, 2),
                Rational::new(3, 2),
                Rational::new(-1, 1),
                Rational::ZERO,
            ],
        }
    }

    pub fn exponents(&self) -> &[Rational; AXIS_COUNT] {
        &self.exponents
    }

    pub fn is_dimensionless(&self) -> bool {
        self.exponents.iter().all(Rational::is_zero)
    }

    /// Raises the dimension to a rational power, exactly.
    pub fn pow(&self, exponent: Rational) -> Dimension {
        let mut exponents = self.exponents;
        for e in &mut exponents {
            *e = *e * exponent;
        }
        Dimension { exponents }
    }

    pub fn inverse(&self) -> Dimension {
        self.pow(Rational::new(-1, 1))
    }

    /// Like [`Dimension::pow`], but rejects results whose exponents leave
    /// a sane range. Expression evaluation routes powers through this so
    /// that repeated exponentiation in a hostile catalog errors instead
    /// of overflowing the exact arithmetic.
    pub fn checked_pow(&self, exponent: Rational) -> Option<Dimension> {
        const MAX_NUMER: i64 = 1 << 40;
        const MAX_DENOM: i64 = 1 << 20;
        let result = self.pow(exponent);
        result
            .exponents
            .iter()
            .all(|r| r.numer().abs() <= MAX_NUMER && r.denom() <= MAX_DENOM)
            .then_some(result)
    }
}

impl std::ops::Mul for Dimension {
    type Output = Dimension;

    /// Multiplying quantities adds their exponents.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Dimension) -> Dimension {
        let mut exponents = self.exponents;
        for (e, r) in exponents.iter_mut().zip(rhs.exponents) {
            *e = *e + r;
        }
        Dimension { exponents }
    }
}

impl std::ops::Div for Dimension {
    type Output = Dimension;

    /// Dividing quantities subtracts their exponents.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Dimension) -> Dimension {
        let mut exponents = self.exponents;
        for (e, r) in exponents.iter_mut().zip(rhs.exponents) {
            *e = *e - r;
        }
        Dimension { exponents }
    }
}

impl fmt::Display for Dimension {
    /// Formats as space-separated unit factors, e.g. `g cm^2 s^-2` or
    /// `g^1/2 cm^3/2 s^-1`; the all-zero dimension prints as
    /// `dimensionless`. The output re-parses under the catalog grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_dimensionless() {
            return write!(f, "dimensionless");
        }
        let mut first = true;
        for (exp, sym) in self.exponents.iter().zip(AXIS_SYMBOLS) {
            if exp.is_zero() {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if *exp == Rational::ONE {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{exp}")?;
            }
        }
        Ok(())
    }
}
