//! Kerr-Newman horizon radius arithmetic.
//!
//! The outer horizon is GM/c² plus the square root of a radicand built
//! from the charge, spin and mass terms. When the radicand is positive
//! the root is imaginary: the geometry has no real horizon and the
//! object is classified quantum mechanical, with the imaginary length
//! compared against the half Compton wavelength ℏ/(2Mc). When it is
//! non-positive the object is a classical black hole and the real outer
//! horizon is reported.
//!
//! The charge term is G·Q²/c⁴, the standard Gaussian-units form with
//! dimension length²; spin enters as a², mass as (GM/c²)².

use super::{expect_dimension, ModelError};
use crate::dimension::Dimension;
use crate::quantity::Quantity;
use crate::rational::Rational;
use crate::registry::Registry;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HorizonKind {
    ClassicalBlackHole,
    QuantumMechanicalBlackHole,
}

/// Real and imaginary parts of the horizon radius; both lengths, the
/// imaginary part non-negative by convention (positive branch).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexLength {
    pub real: Quantity,
    pub imag: Quantity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HorizonClassification {
    pub horizon: ComplexLength,
    pub kind: HorizonKind,
    /// imag / (ℏ/2Mc); present only for the quantum mechanical case.
    pub compton_ratio: Option<f64>,
    /// Real outer horizon GM/c² + √(−radicand); present only for the
    /// classical case.
    pub outer_horizon: Option<Quantity>,
}

pub fn kerr_newman_horizon(
    mass: Quantity,
    charge: Quantity,
    spin_length: Quantity,
    registry: &Registry,
) -> Result<HorizonClassification, ModelError> {
    expect_dimension("mass", &mass, Dimension::MASS)?;
    expect_dimension("charge", &charge, Dimension::charge())?;
    expect_dimension("spin length", &spin_length, Dimension::LENGTH)?;
    if mass.magnitude() <= 0.0 {
        return Err(ModelError::NonPositiveMass);
    }
    if charge.magnitude() < 0.0 {
        return Err(ModelError::NegativeInput("charge"));
    }
    if spin_length.magnitude() < 0.0 {
        return Err(ModelError::NegativeInput("spin length"));
    }

    let g = registry.lookup("G")?.value;
    let c = registry.lookup("c")?.value;
    let hbar = registry.lookup("hbar")?.value;
    let c2 = c.try_mul(&c)?;
    let c4 = c2.try_mul(&c2)?;
    let half = Rational::new(1, 2);

    let real = g.try_mul(&mass)?.try_div(&c2)?;
    let charge_term = g.try_mul(&charge.try_pow(Rational::from(2))?)?.try_div(&c4)?;
    let spin_term = spin_length.try_mul(&spin_length)?;
    let mass_term = real.try_mul(&real)?;
    let radicand = charge_term.try_add(&spin_term)?.try_sub(&mass_term)?;

    if radicand.magnitude() > 0.0 {
        let imag = radicand.try_pow(half)?;
        let half_compton = hbar.try_div(
            &Quantity::dimensionless(2.0)
                .try_mul(&mass)?
                .try_mul(&c)?,
        )?;
        let ratio = imag.magnitude() / half_compton.magnitude();
        Ok(HorizonClassification {
            horizon: ComplexLength { real, imag },
            kind: HorizonKind::QuantumMechanicalBlackHole,
            compton_ratio: Some(ratio),
            outer_horizon: None,
        })
    } else {
        let root = Quantity::new(-radicand.magnitude(), radicand.dimension()).try_pow(half)?;
        let outer = real.try_add(&root)?;
        Ok(HorizonClassification {
            horizon: ComplexLength {
                real,
                imag: Quantity::new(0.0, Dimension::LENGTH),
            },
            kind: HorizonKind::ClassicalBlackHole,
            compton_ratio: None,
            outer_horizon: Some(outer),
        })
    }
}
