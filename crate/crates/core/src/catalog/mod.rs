//! The builtin relation catalog plus the computations that are
//! procedures rather than single catalog expressions: Kerr-Newman
//! horizon classification, vacuum-fluctuation energy, composite
//! particle mass estimates, the neutrino/weak-coupling chain, the
//! Gaussian cutoff balance and quark charge fractions.
//!
//! The catalog itself ships as `builtin.rel` (embedded and also present
//! in the source tree for diffing/extending); [`builtin_catalog`]
//! parses that text. The relations encode large-number coincidences
//! between microphysical and cosmological constants, a set of
//! Planck-scale identities, and a weak-interaction estimate whose
//! stated magnitude does not reproduce from its own inputs; the
//! catalog keeps it so the engine reports the discrepancy.

mod gaussian;
mod horizon;
mod particles;
mod weak;

pub use gaussian::gaussian_balance;
pub use horizon::{kerr_newman_horizon, ComplexLength, HorizonClassification, HorizonKind};
pub use particles::{
    composite_models, composite_spectrum, quark_charge, zpf_energy, Composite,
    CompositeSpectrum, Constituent,
};
pub use weak::{
    neutrino_count, neutrino_mass, neutrino_mass_band, neutrino_sector_defaults,
    weak_couplings, BandCheck, WeakSector, NU_MASS_BAND_LOG10,
};

use thiserror::Error;

use crate::dimension::Dimension;
use crate::dsl::{parse_catalog, CatalogFile};
use crate::quantity::QuantityError;
use crate::registry::RegistryError;

/// The builtin catalog source, in canonical formatting.
pub const BUILTIN_REL: &str = include_str!("builtin.rel");

/// Parses the embedded catalog. Infallible in practice; the text is
/// covered by tests that parse and canonically re-format it.
pub fn builtin_catalog() -> CatalogFile {
    parse_catalog(BUILTIN_REL).expect("builtin catalog must parse")
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("mass must be positive")]
    NonPositiveMass,
    #[error("length must be positive")]
    NonPositiveLength,
    #[error("temperature must be positive")]
    NonPositiveTemperature,
    #[error("count must be positive")]
    NonPositiveCount,
    #[error("dimension count must be 1, 2 or 3, got {0}")]
    InvalidDimensionCount(i64),
    #[error("{what} must have dimension {expected}, got {got}")]
    WrongDimension {
        what: &'static str,
        expected: Dimension,
        got: Dimension,
    },
    #[error("{0} must not be negative")]
    NegativeInput(&'static str),
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error(transparent)]
    Quantity(#[from] QuantityError),
}

pub(crate) fn expect_dimension(
    what: &'static str,
    value: &crate::quantity::Quantity,
    expected: Dimension,
) -> Result<(), ModelError> {
    if value.dimension() != expected {
        return Err(ModelError::WrongDimension {
            what,
            expected,
            got: value.dimension(),
        });
    }
    Ok(())
}
