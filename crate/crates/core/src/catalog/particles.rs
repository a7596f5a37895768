//! Vacuum-fluctuation energy, composite-particle mass estimates and
//! charge bookkeeping.

use super::{expect_dimension, ModelError};
use crate::dimension::Dimension;
use crate::quantity::Quantity;
use crate::registry::Registry;

/// Energy of the magnetic-field fluctuations contained in a region of
/// size `lambda`: B² ~ ℏc/λ⁴ over a volume λ³, i.e. ℏc/λ. For a
/// Compton-sized region λ = ℏ/(mc) this is exactly mc².
pub fn zpf_energy(lambda: Quantity, registry: &Registry) -> Result<Quantity, ModelError> {
    expect_dimension("lambda", &lambda, Dimension::LENGTH)?;
    if lambda.magnitude() <= 0.0 {
        return Err(ModelError::NonPositiveLength);
    }
    let hbar = registry.lookup("hbar")?.value;
    let c = registry.lookup("c")?.value;
    // (ℏ/λ)·c: this association keeps the λ = ℏ/(mc) round trip within
    // one ulp of mc².
    Ok(hbar.try_div(&lambda)?.try_mul(&c)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompositeSpectrum {
    /// Orbit radius from balancing the electrostatic and centrifugal
    /// forces: e²/(m_e c²), the classical electron radius.
    pub pion_radius: Quantity,
    /// Mass whose Compton wavelength is that radius: ℏ/(r c).
    pub pion_mass_pred: Quantity,
    /// Two thirds of the measured pion mass (a Compton wavelength 3/2
    /// times the pion's).
    pub muon_mass_pred: Quantity,
    pub pion_gap_dex: f64,
    pub muon_gap_dex: f64,
}

pub fn composite_spectrum(registry: &Registry) -> Result<CompositeSpectrum, ModelError> {
    let e = registry.lookup("e")?.value;
    let m_e = registry.lookup("m_e")?.value;
    let m_pi = registry.lookup("m_pi")?.value;
    let m_mu = registry.lookup("m_mu")?.value;
    let hbar = registry.lookup("hbar")?.value;
    let c = registry.lookup("c")?.value;

    let c2 = c.try_mul(&c)?;
    let pion_radius = e.try_mul(&e)?.try_div(&m_e.try_mul(&c2)?)?;
    let pion_mass_pred = hbar.try_div(&pion_radius.try_mul(&c)?)?;
    let muon_mass_pred = Quantity::dimensionless(2.0 / 3.0).try_mul(&m_pi)?;

    Ok(CompositeSpectrum {
        pion_radius,
        pion_mass_pred,
        muon_mass_pred,
        pion_gap_dex: pion_mass_pred.dex_gap(&m_pi)?,
        muon_gap_dex: muon_mass_pred.dex_gap(&m_mu)?,
    })
}

/// Charge fraction carried when only `d` of the three stress components
/// contribute: (d/3)·e. Valid for d in {1, 2, 3}; d = 3 recovers the
/// full electron charge.
pub fn quark_charge(d: i64, registry: &Registry) -> Result<Quantity, ModelError> {
    if !(1..=3).contains(&d) {
        return Err(ModelError::InvalidDimensionCount(d));
    }
    let e = registry.lookup("e")?.value;
    Ok(Quantity::dimensionless(d as f64 / 3.0).try_mul(&e)?)
}

/// Constituents available for the composite bookkeeping: charges are
/// -e, +e and 0 in units of the electron charge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constituent {
    Electron,
    Positron,
    Neutrino,
}

impl Constituent {
    /// Charge in units of e.
    pub fn charge_units(&self) -> i64 {
        match self {
            Constituent::Electron => -1,
            Constituent::Positron => 1,
            Constituent::Neutrino => 0,
        }
    }
}

/// A named constituent combination with its expected net charge in
/// units of e.
#[derive(Debug, Clone, PartialEq)]
pub struct Composite {
    pub name: &'static str,
    pub constituents: Vec<Constituent>,
    pub expected_charge_units: i64,
}

impl Composite {
    pub fn net_charge_units(&self) -> i64 {
        self.constituents.iter().map(Constituent::charge_units).sum()
    }

    pub fn net_charge(&self, registry: &Registry) -> Result<Quantity, ModelError> {
        let e = registry.lookup("e")?.value;
        Ok(Quantity::dimensionless(self.net_charge_units() as f64).try_mul(&e)?)
    }
}

/// The constituent bookkeeping: pions as lepton-neutrino bound states,
/// the neutral pion as a positronium-like pair, the proton as two
/// positrons around an electron, the muon as a neutrino orbiting the
/// negative pion.
pub fn composite_models() -> Vec<Composite> {
    use Constituent::*;
    vec![
        Composite {
            name: "pi+",
            constituents: vec![Positron, Neutrino],
            expected_charge_units: 1,
        },
        Composite {
            name: "pi-",
            constituents: vec![Electron, Neutrino],
            expected_charge_units: -1,
        },
        Composite {
            name: "pi0",
            constituents: vec![Positron, Electron],
            expected_charge_units: 0,
        },
        Composite {
            name: "proton",
            constituents: vec![Positron, Positron, Electron],
            expected_charge_units: 1,
        },
        Composite {
            name: "mu-",
            constituents: vec![Electron, Neutrino, Neutrino],
            expected_charge_units: -1,
        },
    ]
}
