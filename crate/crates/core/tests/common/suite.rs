//! The bundled problems run in both Boolean modes.

use std::time::Duration;

use fool::prover::{prove, Limits, ProveOptions, SzsStatus};
use fool::translate::BoolSemantics;

use super::listings::fixture;

/// Fixtures whose problems use Boolean terms as arguments or equation sides.
pub const BOOLEAN_HEAVY: [&str; 7] = [
    "impl.p",
    "partial_function.p",
    "knights.p",
    "max_property.p",
    "let_swap.p",
    "nested_let_legacy.p",
    "xor.p",
];

pub const OTHERS: [&str; 7] = [
    "max_definition.p",
    "let_array_function.p",
    "let_array_store.p",
    "nested_let_unified.p",
    "max_vc.p",
    "max_vc_ordered.p",
    "partition_vc.p",
];

pub fn opts(mode: BoolSemantics) -> ProveOptions {
    ProveOptions {
        mode,
        theory_axioms: true,
        limits: Limits {
            time: Duration::from_secs(10),
            max_clauses: 5_000,
        },
    }
}

/// Whether the paramodulation mode solves everything the axiomatized mode
/// solves and generates fewer clauses on at least half of the Boolean-heavy
/// problems.
pub fn mode_comparison() -> Result<String, String> {
    let mut lower = 0;
    for name in BOOLEAN_HEAVY.iter().chain(&OTHERS) {
        let p = fixture(name);
        let ax = prove(&p, &opts(BoolSemantics::Axiomatized)).unwrap();
        let pm = prove(&p, &opts(BoolSemantics::ParamodulationReady)).unwrap();
        if ax.status != SzsStatus::GaveUp && pm.status != ax.status {
            return Err(format!("{name}: {} versus {}", pm.status, ax.status));
        }
        if BOOLEAN_HEAVY.contains(name)
            && pm.saturation.stats.generated < ax.saturation.stats.generated
        {
            lower += 1;
        }
    }
    let summary = format!("fewer clauses on {lower} of {}", BOOLEAN_HEAVY.len());
    if 2 * lower >= BOOLEAN_HEAVY.len() {
        Ok(summary)
    } else {
        Err(summary)
    }
}
