//! Input generators shared by the benchmark targets.

use fiscalis_core::{Elasticities, FiscalObservation};

/// Deterministic pseudo-random observations without pulling in an RNG:
/// a simple linear-congruential walk is plenty for benchmark inputs.
pub fn synthetic_observations(n: usize) -> Vec<(FiscalObservation, Elasticities)> {
    let mut state: u64 = 0x9e3779b97f4a7c15;
    let mut next = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    (0..n)
        .map(|i| {
            let yp = 1.0 + 1e5 * next();
            let obs = FiscalObservation {
                period: 2000 + i as i32,
                y_current: yp * (0.9 + 0.2 * next()),
                y_potential: yp,
                revenue: 5e4 * next(),
                expenditure: 5e4 * next(),
            };
            let el = Elasticities {
                revenue: 4.0 * next() - 2.0,
                expenditure: 4.0 * next() - 2.0,
            };
            (obs, el)
        })
        .collect()
}
