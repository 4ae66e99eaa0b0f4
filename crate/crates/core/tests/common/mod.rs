use bellcert_core::measures::distillable_bell_diagonal;

/// Minimum of `1 − H(λ)` over Bell-diagonal spectra with maximal violation
/// `s`, parameterized by the two smallest weights and refined on zooming grids.
pub fn distillable_grid_oracle(s: f64, alpha: f64) -> f64 {
    let value = |l3: f64, l4: f64| -> Option<f64> {
        if l4 < 0.0 || l3 < l4 {
            return None;
        }
        let m = 1.0 - l3 - l4;
        let t33 = m - l3 - l4;
        let rest = s * s / 4.0 - alpha * alpha * t33 * t33;
        if t33 <= 0.0 || rest < 0.0 {
            return None;
        }
        let t11 = rest.sqrt();
        let l1 = 0.5 * (m + t11 - l3 + l4);
        let l2 = m - l1;
        if l2 < l3 || l1 < l2 || t11 > t33 {
            return None;
        }
        Some(distillable_bell_diagonal(&[l1, l2, l3, l4]))
    };
    let n = 400;
    let (mut c3, mut c4, mut w3, mut w4) = (1.0 / 6.0, 0.125, 1.0 / 6.0, 0.125);
    let mut best = f64::INFINITY;
    for _ in 0..6 {
        let mut arg = (c3, c4);
        for i in 0..=n {
            for j in 0..=n {
                let l3 = c3 - w3 + 2.0 * w3 * i as f64 / n as f64;
                let l4 = c4 - w4 + 2.0 * w4 * j as f64 / n as f64;
                if let Some(v) = value(l3, l4) {
                    if v < best {
                        best = v;
                        arg = (l3, l4);
                    }
                }
            }
        }
        (c3, c4) = arg;
        w3 *= 0.05;
        w4 *= 0.05;
    }
    best
}
