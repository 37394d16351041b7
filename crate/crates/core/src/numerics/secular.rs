//! Roots of `y ↦ Σ w_i / (y − x_i)` with positive weights.
//!
//! Between two consecutive distinct poles the function decreases from `+∞`
//! to `−∞`, so every gap holds exactly one root and the gap itself is a
//! bracket. Equal poles are merged (weights summed); a pole of multiplicity
//! `m` contributes `m − 1` roots pinned at the pole, which is where the
//! numerator polynomial `Σ w_i ∏_{j≠i}(y − x_j)` vanishes to order `m − 1`.
//! A merged pole whose weight is exactly zero drops out of the rational
//! function and becomes one more pinned root.

const MAX_BISECTIONS: usize = 400;
const BISECTION_RTOL: f64 = 1e-13;

/// Returns the `len(poles) − 1` roots in increasing order.
///
/// `poles` must be weakly increasing and `weights` nonnegative with at least
/// one positive entry; violations panic, since callers construct both.
pub fn secular_roots(poles: &[f64], weights: &[f64]) -> Vec<f64> {
    assert_eq!(poles.len(), weights.len(), "one weight per pole");
    assert!(!poles.is_empty(), "at least one pole");
    assert!(poles.windows(2).all(|w| w[0] <= w[1]), "poles must be sorted: {poles:?}");
    assert!(weights.iter().all(|&w| w >= 0.0), "weights must be nonnegative");

    let mut pinned = Vec::new();
    let mut merged_x: Vec<f64> = Vec::with_capacity(poles.len());
    let mut merged_w: Vec<f64> = Vec::with_capacity(poles.len());
    for (&x, &w) in poles.iter().zip(weights) {
        if merged_x.last() == Some(&x) {
            *merged_w.last_mut().unwrap() += w;
            pinned.push(x);
        } else {
            merged_x.push(x);
            merged_w.push(w);
        }
    }
    let (xs, ws): (Vec<f64>, Vec<f64>) = merged_x
        .iter()
        .zip(&merged_w)
        .filter_map(|(&x, &w)| {
            if w > 0.0 {
                Some((x, w))
            } else {
                pinned.push(x);
                None
            }
        })
        .unzip();
    assert!(!xs.is_empty(), "all weights vanish");

    let mut roots = pinned;
    for k in 0..xs.len() - 1 {
        roots.push(root_in_gap(&xs, &ws, k));
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}

fn secular_value(xs: &[f64], ws: &[f64], y: f64) -> (f64, f64) {
    let mut f = 0.0;
    let mut df = 0.0;
    for (&x, &w) in xs.iter().zip(ws) {
        let r = 1.0 / (y - x);
        f += w * r;
        df -= w * r * r;
    }
    (f, df)
}

/// Bisection on `(x_k, x_{k+1})` until the bracket is 1e−13 of the distance
/// to the nearer pole, then two Newton steps that are kept only if they stay
/// inside the final bracket. The residual relative to its scale is about the
/// root error over that distance, so the width is measured against it.
fn root_in_gap(xs: &[f64], ws: &[f64], k: usize) -> f64 {
    let (mut lo, mut hi) = (xs[k], xs[k + 1]);
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..MAX_BISECTIONS {
        mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (f, _) = secular_value(xs, ws, mid);
        if f > 0.0 {
            lo = mid;
        } else if f < 0.0 {
            hi = mid;
        } else {
            return mid;
        }
        if hi - lo <= BISECTION_RTOL * (mid - xs[k]).min(xs[k + 1] - mid) {
            break;
        }
    }
    let mut y = 0.5 * (lo + hi);
    if y <= xs[k] || y >= xs[k + 1] {
        y = mid;
    }
    for _ in 0..2 {
        let (f, df) = secular_value(xs, ws, y);
        if f == 0.0 || df == 0.0 || !f.is_finite() {
            break;
        }
        let next = y - f / df;
        if next > lo && next < hi {
            y = next;
        } else {
            break;
        }
    }
    y
}

/// `|Σ w_i/(y−x_i)|` relative to `Σ |w_i/(y−x_i)|`; the natural scale for
/// judging a computed root.
pub fn relative_residual(poles: &[f64], weights: &[f64], y: f64) -> f64 {
    let mut f = 0.0;
    let mut scale = 0.0;
    for (&x, &w) in poles.iter().zip(weights) {
        let t = w / (y - x);
        f += t;
        scale += t.abs();
    }
    if scale == 0.0 {
        0.0
    } else {
        f.abs() / scale
    }
}
