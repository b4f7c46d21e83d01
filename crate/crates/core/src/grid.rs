//! Logarithmic evaluation grids.

/// `count` points spaced evenly in log scale over `[lo, hi]`, endpoints included.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo, "log_grid needs 0 < lo <= hi");
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.log10(), hi.log10());
            let step = (b - a) / (count - 1) as f64;
            (0..count)
                .map(|i| {
                    if i == count - 1 {
                        hi
                    } else {
                        10f64.powf(a + step * i as f64)
                    }
                })
                .collect()
        }
    }
}

/// Log grid with `per_decade` points per decade over `[lo, hi]`.
pub fn log_grid_per_decade(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
    let decades = (hi / lo).log10();
    let count = (decades * per_decade as f64).round() as usize + 1;
    log_grid(lo, hi, count)
}

/// The ε/M sweep grid used by the falsifiers: 20 points per decade over
/// `[1e-3, 1e2]`.
pub fn sweep_grid() -> Vec<f64> {
    log_grid_per_decade(1e-3, 1e2, 20)
}

/// The 50-point grid over `[1e-3, 1e2]` used for pointwise modulus identities.
pub fn modulus_grid() -> Vec<f64> {
    log_grid(1e-3, 1e2, 50)
}

/// Smallest value `10^(k/per_decade)` that is `>= value`.
pub fn round_up_to_log_grid(value: f64, per_decade: usize) -> f64 {
    let k = (value.log10() * per_decade as f64).ceil();
    let mut up = 10f64.powf(k / per_decade as f64);
    if up < value {
        up = 10f64.powf((k + 1.0) / per_decade as f64);
    }
    up
}
