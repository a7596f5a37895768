//! Parse a custom catalog, run it against the default registry and
//! print the report table.
//!
//!     cargo run -p dexcheck --example extend_catalog

use dexcheck::engine::run_catalog;
use dexcheck::registry::Registry;

const CATALOG: &str = r#"
# Gravitational vs electrostatic force ratio for the proton.
relation proton_ratio: e^2 / (G * m_p^2) ~ 1e36 tol 1 dex ref "example"

# The proton/electron mass ratio, checked tightly.
relation mass_ratio: m_p / m_e = 1836.15 tol 0.001 dex ref "example"

# A deliberate near-miss to show a DISCREPANT finding.
relation sloppy: m_p / m_e ~ 1e5 tol 1 dex ref "example"
"#;

fn main() {
    let catalog = dexcheck::parse_catalog(CATALOG).expect("catalog parses");
    let registry = Registry::load_defaults();
    let report = run_catalog(&catalog, &registry);
    print!("{}", report.to_table());
}
