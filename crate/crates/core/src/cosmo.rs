//! Cosmological state derived from the single parameter N, plus sweep
//! and power-law verification machinery.
//!
//! With l, m_π, ℏ and c fixed, a particle count N determines everything
//! else: R = √N·l, M = N·m_π, T = √N·ℏ/(2 m_π c²), G = l·c²/(m_π·√N),
//! H = c/R, Λ = H² and ρ = M/R³. These definitions close exactly:
//! G·M/(c²R) = 1, M = c³/(GH) and G·m_π/(lc²) = N^(-1/2) hold to
//! rounding error at every N, and the scalings G ∝ T⁻¹, ρ ∝ T⁻¹,
//! Λ ∝ T⁻² are exact power laws that the sweep verifies by slope
//! fitting in log-log space.
//!
//! H is defined as c/R, the form that closes M = c³/(GH) identically
//! (it equals the G·m_π³·c/ℏ² expression evaluated with the in-model
//! G). The alternative reading H = 1/T differs from it by an exact
//! factor 2 and is not used here.

use thiserror::Error;

use crate::quantity::{format_f64, Quantity, QuantityError};
use crate::registry::{Registry, RegistryError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CosmoError {
    #[error("N must be at least 1, got {0}")]
    InvalidN(f64),
    #[error("invalid sweep grid: {0}")]
    InvalidGrid(String),
    #[error("power-law fit is degenerate: all x values equal")]
    DegenerateFit,
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error(transparent)]
    Quantity(#[from] QuantityError),
}

/// Full cosmological state at particle count `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CosmoState {
    pub n: f64,
    pub radius: Quantity,
    pub mass: Quantity,
    pub age: Quantity,
    pub g_eff: Quantity,
    pub hubble: Quantity,
    pub lambda: Quantity,
    /// Mean density M/R³, with no geometric 4π/3 factor: the sweep
    /// verifies scalings, which a constant factor cannot affect.
    pub rho: Quantity,
}

/// Field selector for slope fitting and export.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosmoField {
    N,
    Radius,
    Mass,
    Age,
    GEff,
    Hubble,
    Lambda,
    Rho,
}

impl CosmoField {
    pub fn value(&self, state: &CosmoState) -> f64 {
        match self {
            CosmoField::N => state.n,
            CosmoField::Radius => state.radius.magnitude(),
            CosmoField::Mass => state.mass.magnitude(),
            CosmoField::Age => state.age.magnitude(),
            CosmoField::GEff => state.g_eff.magnitude(),
            CosmoField::Hubble => state.hubble.magnitude(),
            CosmoField::Lambda => state.lambda.magnitude(),
            CosmoField::Rho => state.rho.magnitude(),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CosmoField::N => "N",
            CosmoField::Radius => "R",
            CosmoField::Mass => "M",
            CosmoField::Age => "T",
            CosmoField::GEff => "G",
            CosmoField::Hubble => "H",
            CosmoField::Lambda => "Lambda",
            CosmoField::Rho => "rho",
        }
    }
}

pub fn cosmo_state(n: f64, registry: &Registry) -> Result<CosmoState, CosmoError> {
    if !(n.is_finite() && n >= 1.0) {
        return Err(CosmoError::InvalidN(n));
    }
    let l = registry.lookup("l")?.value;
    let m_pi = registry.lookup("m_pi")?.value;
    let hbar = registry.lookup("hbar")?.value;
    let c = registry.lookup("c")?.value;

    let sqrt_n = Quantity::dimensionless(n.sqrt());
    let n_q = Quantity::dimensionless(n);
    let two = Quantity::dimensionless(2.0);

    let radius = sqrt_n.try_mul(&l)?;
    let mass = n_q.try_mul(&m_pi)?;
    let age = sqrt_n
        .try_mul(&hbar)?
        .try_div(&two.try_mul(&m_pi)?.try_mul(&c)?.try_mul(&c)?)?;
    let g_eff = l
        .try_mul(&c)?
        .try_mul(&c)?
        .try_div(&m_pi.try_mul(&sqrt_n)?)?;
    let hubble = c.try_div(&radius)?;
    let lambda = hubble.try_mul(&hubble)?;
    let rho = mass.try_div(&radius.try_mul(&radius)?.try_mul(&radius)?)?;

    Ok(CosmoState {
        n,
        radius,
        mass,
        age,
        g_eff,
        hubble,
        lambda,
        rho,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSeries {
    pub states: Vec<CosmoState>,
    pub n_start: f64,
    pub n_end: f64,
    pub points: usize,
}

/// Geometric grid in N, endpoints included exactly.
pub fn sweep(
    n_start: f64,
    n_end: f64,
    points: usize,
    registry: &Registry,
) -> Result<SweepSeries, CosmoError> {
    if !(n_start.is_finite() && n_end.is_finite()) || n_start < 1.0 || n_start >= n_end {
        return Err(CosmoError::InvalidGrid(format!(
            "need 1 <= n_start < n_end, got {n_start} and {n_end}"
        )));
    }
    if points < 3 {
        return Err(CosmoError::InvalidGrid(format!(
            "need at least 3 points, got {points}"
        )));
    }
    let lg0 = n_start.log10();
    let lg1 = n_end.log10();
    let mut states = Vec::with_capacity(points);
    for i in 0..points {
        let n = if i == 0 {
            n_start
        } else if i == points - 1 {
            n_end
        } else {
            10f64.powf(lg0 + (lg1 - lg0) * i as f64 / (points - 1) as f64)
        };
        states.push(cosmo_state(n, registry)?);
    }
    for pair in states.windows(2) {
        if pair[1].n <= pair[0].n {
            return Err(CosmoError::InvalidGrid(
                "grid is not strictly increasing".to_string(),
            ));
        }
    }
    Ok(SweepSeries {
        states,
        n_start,
        n_end,
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub slope: f64,
    pub intercept: f64,
    /// Largest |log10 y - fit| over the series.
    pub max_residual: f64,
}

/// Least-squares slope of log10(y) against log10(x) over the series.
pub fn fit_powerlaw(
    series: &SweepSeries,
    x: CosmoField,
    y: CosmoField,
) -> Result<PowerLawFit, CosmoError> {
    let points: Vec<(f64, f64)> = series
        .states
        .iter()
        .map(|s| (x.value(s).log10(), y.value(s).log10()))
        .collect();
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(CosmoError::DegenerateFit);
    }
    let sxy: f64 = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let max_residual = points
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).abs())
        .fold(0.0, f64::max);
    Ok(PowerLawFit {
        slope,
        intercept,
        max_residual,
    })
}

pub const CSV_HEADER: &str = "N,R_cm,M_g,T_s,G_cgs,H_per_s,Lambda_per_s2,rho_g_per_cm3";

/// CSV export, one row per state, shortest round-trip float formatting.
pub fn to_csv(series: &SweepSeries) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for s in &series.states {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            format_f64(s.n),
            format_f64(s.radius.magnitude()),
            format_f64(s.mass.magnitude()),
            format_f64(s.age.magnitude()),
            format_f64(s.g_eff.magnitude()),
            format_f64(s.hubble.magnitude()),
            format_f64(s.lambda.magnitude()),
            format_f64(s.rho.magnitude()),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::Dimension;

    fn reg() -> Registry {
        Registry::load_defaults()
    }

    #[test]
    fn state_at_default_n() {
        // Frozen from a desk evaluation with the default constants.
        let s = cosmo_state(1e80, &reg()).unwrap();
        assert!((s.radius.magnitude() / 1.4138161506762493e27 - 1.0).abs() < 1e-12);
        assert!((s.mass.magnitude() / 2.48807e55 - 1.0).abs() < 1e-12);
        assert!((s.age.magnitude() / 2.3579915253842868e16 - 1.0).abs() < 1e-12);
        assert!((s.g_eff.magnitude() / 5.10706928342865e-8 - 1.0).abs() < 1e-12);
        assert!((s.hubble.magnitude() / 2.12044867259866e-17 - 1.0).abs() < 1e-12);
        // The in-model G sits 0.12 dex off the measured value.
        let g = reg().lookup("G").unwrap().value;
        let gap = s.g_eff.dex_gap(&g).unwrap();
        assert!((gap - 0.11621445270551867).abs() < 1e-9);
        // Dimensions.
        assert_eq!(s.g_eff.dimension(), Dimension::from_ints(-1, 3, -2, 0));
        assert_eq!(s.rho.dimension(), Dimension::from_ints(1, -3, 0, 0));
        assert_eq!(s.lambda.dimension(), Dimension::from_ints(0, 0, -2, 0));
    }

    #[test]
    fn state_agrees_with_registry_radius_bit_for_bit() {
        let reg = reg();
        let s = cosmo_state(1e80, &reg).unwrap();
        let r = reg.lookup("R").unwrap().value;
        assert_eq!(s.radius.magnitude().to_bits(), r.magnitude().to_bits());
    }

    #[test]
    fn single_particle_limit() {
        let reg = reg();
        let s = cosmo_state(1.0, &reg).unwrap();
        let l = reg.lookup("l").unwrap().value;
        let m_pi = reg.lookup("m_pi").unwrap().value;
        assert_eq!(s.radius.magnitude(), l.magnitude());
        assert_eq!(s.mass.magnitude(), m_pi.magnitude());
        // The fundamental time unit hbar/(2 m_pi c^2).
        assert!((s.age.magnitude() / 2.3579915253842868e-24 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quadrupling_n_doubles_radius_and_age() {
        let reg = reg();
        let a = cosmo_state(1e80, &reg).unwrap();
        let b = cosmo_state(4e80, &reg).unwrap();
        assert_eq!(b.radius.magnitude(), 2.0 * a.radius.magnitude());
        assert_eq!(b.age.magnitude(), 2.0 * a.age.magnitude());
        assert_eq!(b.g_eff.magnitude(), 0.5 * a.g_eff.magnitude());
    }

    #[test]
    fn invalid_n() {
        assert!(matches!(
            cosmo_state(0.5, &reg()),
            Err(CosmoError::InvalidN(_))
        ));
        assert!(matches!(
            cosmo_state(f64::NAN, &reg()),
            Err(CosmoError::InvalidN(_))
        ));
    }

    #[test]
    fn sweep_grid_shape() {
        let series = sweep(1e20, 1e120, 11, &reg()).unwrap();
        assert_eq!(series.states.len(), 11);
        assert_eq!(series.states[0].n, 1e20);
        assert_eq!(series.states[10].n, 1e120);
        for pair in series.states.windows(2) {
            let ratio = pair[1].n / pair[0].n;
            assert!((ratio / 1e10 - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn sweep_rejects_bad_grids() {
        let reg = reg();
        assert!(matches!(
            sweep(1e20, 1e10, 5, &reg),
            Err(CosmoError::InvalidGrid(_))
        ));
        assert!(matches!(
            sweep(1e20, 1e30, 2, &reg),
            Err(CosmoError::InvalidGrid(_))
        ));
        assert!(matches!(
            sweep(0.1, 1e30, 5, &reg),
            Err(CosmoError::InvalidGrid(_))
        ));
    }

    #[test]
    fn in_model_closures_hold_everywhere() {
        let reg = reg();
        let c = reg.lookup("c").unwrap().value.magnitude();
        let l = reg.lookup("l").unwrap().value.magnitude();
        let m_pi = reg.lookup("m_pi").unwrap().value.magnitude();
        let series = sweep(1e20, 1e120, 50, &reg).unwrap();
        for s in &series.states {
            let g = s.g_eff.magnitude();
            let closure1 = g * s.mass.magnitude() / (c * c * s.radius.magnitude());
            assert!((closure1 - 1.0).abs() < 1e-12, "GM/(c^2 R) at N={}", s.n);
            let closure2 = (c * c * c) / (g * s.hubble.magnitude()) / s.mass.magnitude();
            assert!((closure2 - 1.0).abs() < 1e-12, "c^3/(GH)/M at N={}", s.n);
            let closure3 = g * m_pi / (l * c * c) * s.n.sqrt();
            assert!(
                (closure3 - 1.0).abs() < 1e-12,
                "G m_pi/(l c^2) sqrt(N) at N={}",
                s.n
            );
            let closure4 = s.lambda.magnitude() * s.radius.magnitude()
                / (s.hubble.magnitude() * s.hubble.magnitude() * s.radius.magnitude());
            assert!((closure4 - 1.0).abs() < 1e-12, "Lambda R = H^2 R at N={}", s.n);
        }
    }

    #[test]
    fn age_is_strictly_increasing() {
        let series = sweep(1e20, 1e120, 50, &reg()).unwrap();
        for pair in series.states.windows(2) {
            assert!(pair[1].age.magnitude() > pair[0].age.magnitude());
        }
    }

    #[test]
    fn slopes_reproduce_the_scaling_laws() {
        let series = sweep(1e20, 1e120, 50, &reg()).unwrap();
        let rho = fit_powerlaw(&series, CosmoField::Age, CosmoField::Rho).unwrap();
        assert!((rho.slope + 1.0).abs() < 1e-9, "rho slope {}", rho.slope);
        assert!(rho.max_residual < 1e-9);
        let lambda = fit_powerlaw(&series, CosmoField::Age, CosmoField::Lambda).unwrap();
        assert!((lambda.slope + 2.0).abs() < 1e-9);
        assert!(lambda.max_residual < 1e-9);
        let g = fit_powerlaw(&series, CosmoField::Age, CosmoField::GEff).unwrap();
        assert!((g.slope + 1.0).abs() < 1e-9);
        assert!(g.max_residual < 1e-9);
    }

    #[test]
    fn degenerate_fit_is_detected() {
        let reg = reg();
        let state = cosmo_state(1e40, &reg).unwrap();
        let series = SweepSeries {
            states: vec![state.clone(), state.clone(), state],
            n_start: 1e40,
            n_end: 1e40,
            points: 3,
        };
        assert!(matches!(
            fit_powerlaw(&series, CosmoField::Age, CosmoField::Rho),
            Err(CosmoError::DegenerateFit)
        ));
    }

    #[test]
    fn csv_shape() {
        let series = sweep(1e20, 1e40, 3, &reg()).unwrap();
        let csv = to_csv(&series);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        let first = lines.next().unwrap();
        let fields: Vec<&str> = first.split(',').collect();
        assert_eq!(fields.len(), 8);
        assert_eq!(fields[0], "1e20");
        // Every field re-parses as a finite f64.
        for f in fields {
            let v: f64 = f.parse().unwrap();
            assert!(v.is_finite());
        }
        assert_eq!(csv.lines().count(), 4);
    }
}
